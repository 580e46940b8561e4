//! Diagonal Padé approximants `[n/n]`.
//!
//! The denominator `Q` solves the `n` homogeneous equations stating that the
//! coefficients `n+1 ..= 2n` of `Q·f` vanish; the numerator is the truncation
//! of `Q·f` to degree `n`. Exactly `2n + 1` Taylor coefficients are consumed.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::solve_homogeneous;
use crate::numerics::{Polynomial, PowerSeries, Precision, Scalar};

/// Result of a diagonal Padé solve.
#[derive(Clone, Debug, PartialEq)]
pub struct PadePair<S> {
    pub n: usize,
    /// Denominator, normalized so its leading coefficient is one.
    pub q: Polynomial<S>,
    /// Numerator.
    pub p: Polynomial<S>,
    /// First index at which `Q·f − P` has a nonzero coefficient among the
    /// available Taylor data; `None` when it vanishes throughout.
    pub residual_order: Option<usize>,
    /// The solution space was one-dimensional.
    pub normal: bool,
}

impl<S: Scalar> PadePair<S> {
    /// `P(z) / Q(z)`.
    pub fn evaluate(&self, z: &S) -> Result<S> {
        let q = self.q.eval(z)?;
        let p = self.p.eval(z)?;
        p.div(&q).ok_or(Error::PoleAtEvaluationPoint)
    }
}

/// `[n/n]_f` from the first `2n + 1` coefficients of `f`. Coefficients beyond
/// that are used only to report the achieved residual order.
pub fn pade_diagonal<S: Scalar>(f: &PowerSeries<S>, n: usize) -> Result<PadePair<S>> {
    let needed = 2 * n + 1;
    if f.order() < needed {
        return Err(Error::InsufficientData { needed, available: f.order() });
    }
    let prec = f.precision();
    let c = f.coeffs();
    let rows: Vec<Vec<S>> = (n + 1..=2 * n).map(|k| (0..=n).map(|j| c[k - j].clone()).collect()).collect();
    let ns = solve_homogeneous(&rows, n + 1, prec);
    let q = ns.vector.ok_or(Error::AllZeroSolution)?;
    let q = normalize_leading(Polynomial::from_trusted(q, prec))?;
    let p = Polynomial::from_trusted(
        PowerSeries::from_polynomial(&q, n + 1).mul_unchecked(&f.truncated(n + 1)).into_coeffs(),
        prec,
    );
    let residual_order = vanishing_order(&[(&q, f), (&p.neg(), &PowerSeries::one(prec, f.order()))], f.order());
    Ok(PadePair { n, q, p, residual_order, normal: ns.dim == 1 })
}

/// Strip rounding noise above the true degree, then make the polynomial
/// monic.
pub(crate) fn normalize_leading<S: Scalar>(q: Polynomial<S>) -> Result<Polynomial<S>> {
    let q = q.trim_relative(q.precision().tolerance_log2(10));
    q.monic().ok_or(Error::AllZeroSolution)
}

/// First `k < n` at which `Σ_i A_i(z) g_i(z)` has a coefficient that is not
/// zero to working precision, relative to the size of the terms summed into
/// it. `None` when all `n` coefficients vanish.
pub(crate) fn vanishing_order<S: Scalar>(terms: &[(&Polynomial<S>, &PowerSeries<S>)], n: usize) -> Option<usize> {
    let prec = terms.first().map_or(Precision::Exact, |t| t.0.precision());
    let tol = prec.tolerance_log2(10);
    for k in 0..n {
        let mut acc = S::zero(prec);
        let mut biggest = f64::NEG_INFINITY;
        let mut count = 0usize;
        for (a, g) in terms {
            for (j, aj) in a.coeffs().iter().enumerate().take(k + 1) {
                if k - j >= g.order() || aj.is_zero() {
                    continue;
                }
                let t = aj.mul(g.coeff(k - j));
                biggest = biggest.max(t.log2_abs());
                count += 1;
                acc = acc.add(&t);
            }
        }
        if acc.is_zero() {
            continue;
        }
        if prec == Precision::Exact || acc.log2_abs() > biggest + libm::log2(count as f64) + tol {
            return Some(k);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{GaussRational, MpComplex};

    const D: u32 = 50;

    fn geometric(a: i64, n: usize) -> PowerSeries<GaussRational> {
        let mut c = Vec::new();
        let mut v = GaussRational::int(1);
        for _ in 0..n {
            c.push(v.clone());
            v = v.mul_i64(a);
        }
        PowerSeries::new(c, Precision::Exact).unwrap()
    }

    fn exp_mp(n: usize) -> PowerSeries<MpComplex> {
        let prec = Precision::Digits(D);
        let mut c = Vec::new();
        let mut v = MpComplex::real(1, D);
        for k in 0..n {
            c.push(v.clone());
            v = v.mul(&MpComplex::from_ratio(1, k as i64 + 1, prec));
        }
        PowerSeries::new(c, prec).unwrap()
    }

    #[test]
    fn rational_input_is_reproduced() {
        let f = geometric(2, 12);
        let pa = pade_diagonal(&f, 1).unwrap();
        assert_eq!(
            pa.q,
            Polynomial::new(alloc::vec![GaussRational::ratio(-1, 2), GaussRational::int(1)], Precision::Exact).unwrap()
        );
        assert_eq!(pa.p.degree(), Some(0));
        assert_eq!(pa.residual_order, None);
        assert!(pa.normal);
        assert_eq!(pa.evaluate(&GaussRational::ratio(1, 4)).unwrap(), GaussRational::int(2));
    }

    #[test]
    fn exponential_one_one() {
        let f = exp_mp(3);
        let pa = pade_diagonal(&f, 1).unwrap();
        // (1 + z/2) / (1 - z/2): Q is monic, so Q = z - 2 and P = -z - 2.
        let q = pa.q.coeffs();
        assert!(q[0].add(&MpComplex::real(2, D)).log2_abs() < -150.0);
        let p = pa.p.coeffs();
        assert!(p[0].add(&MpComplex::real(2, D)).log2_abs() < -150.0);
        assert!(p[1].add(&MpComplex::real(1, D)).log2_abs() < -150.0);
        assert!(pa.evaluate(&MpComplex::real(0, D)).unwrap().sub(&MpComplex::real(1, D)).log2_abs() < -150.0);
    }

    #[test]
    fn exponential_five_five_at_one() {
        let f = exp_mp(11);
        let pa = pade_diagonal(&f, 5).unwrap();
        let v = pa.evaluate(&MpComplex::real(1, D)).unwrap();
        let e = exp_mp(60).eval(&MpComplex::real(1, D)).unwrap();
        assert!(v.sub(&e).abs_f64() < 1e-7);
        assert!(pa.residual_order.is_none_or(|k| k >= 11));
    }

    #[test]
    fn constant_series() {
        let f = PowerSeries::<GaussRational>::one(Precision::Exact, 9);
        let pa = pade_diagonal(&f, 4).unwrap();
        assert_eq!(pa.q.degree(), Some(0));
        assert_eq!(pa.p, pa.q);
        assert!(!pa.normal);
        let fm = PowerSeries::<MpComplex>::one(Precision::Digits(D), 9);
        let pm = pade_diagonal(&fm, 4).unwrap();
        assert_eq!(pm.q.degree(), Some(0));
        assert_eq!(pm.p.degree(), Some(0));
    }

    #[test]
    fn too_few_coefficients() {
        let f = geometric(3, 4);
        assert_eq!(pade_diagonal(&f, 2), Err(Error::InsufficientData { needed: 5, available: 4 }));
    }

    #[test]
    fn pole_at_evaluation_point() {
        let pa = pade_diagonal(&geometric(2, 5), 1).unwrap();
        assert_eq!(pa.evaluate(&GaussRational::ratio(1, 2)), Err(Error::PoleAtEvaluationPoint));
    }
}
