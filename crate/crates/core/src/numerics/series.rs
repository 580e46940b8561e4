use alloc::vec::Vec;

use super::{same_precision, Polynomial, Precision, Scalar};
use crate::error::{Error, Result};

/// Truncated Taylor series `c_0 + c_1 z + … + c_{N-1} z^{N-1} + O(z^N)` at
/// the origin. The truncation order `N` is the number of stored
/// coefficients; binary operations keep the smaller of the two orders.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<S> {
    coeffs: Vec<S>,
    prec: Precision,
}

impl<S: Scalar> PowerSeries<S> {
    pub fn new(coeffs: Vec<S>, prec: Precision) -> Result<Self> {
        for c in &coeffs {
            same_precision(prec, c.precision())?;
        }
        Ok(Self { coeffs, prec })
    }

    pub(crate) fn from_trusted(coeffs: Vec<S>, prec: Precision) -> Self {
        Self { coeffs, prec }
    }

    /// `c + O(z^n)`.
    pub fn constant(c: S, n: usize) -> Self {
        let prec = c.precision();
        let mut coeffs = alloc::vec![S::zero(prec); n];
        if let Some(first) = coeffs.first_mut() {
            *first = c;
        }
        Self { coeffs, prec }
    }

    pub fn one(prec: Precision, n: usize) -> Self {
        Self::constant(S::one(prec), n)
    }

    /// Taylor series of a polynomial, truncated at order `n`.
    pub fn from_polynomial(p: &Polynomial<S>, n: usize) -> Self {
        Self { coeffs: (0..n).map(|k| p.coeff(k)).collect(), prec: p.precision() }
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &S {
        &self.coeffs[k]
    }

    /// Keep the first `n` coefficients (or all, if fewer are stored).
    pub fn truncated(&self, n: usize) -> Self {
        Self { coeffs: self.coeffs.iter().take(n).cloned().collect(), prec: self.prec }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_precision(self.prec, other.prec)?;
        Ok(Self::from_trusted(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect(), self.prec))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_precision(self.prec, other.prec)?;
        Ok(Self::from_trusted(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect(), self.prec))
    }

    pub fn scale(&self, s: &S) -> Result<Self> {
        same_precision(self.prec, s.precision())?;
        Ok(Self::from_trusted(self.coeffs.iter().map(|c| c.mul(s)).collect(), self.prec))
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        same_precision(self.prec, other.prec)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let out = (0..n)
            .map(|k| {
                let mut acc = S::zero(self.prec);
                for j in 0..=k {
                    let (a, b) = (&self.coeffs[j], &other.coeffs[k - j]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect();
        Self::from_trusted(out, self.prec)
    }

    /// Principal branch of `a^(num/den)`, normalized by `(a^p)_0 = a_0^p`.
    ///
    /// Uses the recurrence that follows from `a·(a^p)' = p·a'·(a^p)`:
    /// `k a_0 b_k = Σ_{j=1..k} (p j - (k - j)) a_j b_{k-j}`.
    pub fn pow_ratio(&self, num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParams("zero denominator in exponent".into()));
        }
        let Some(a0) = self.coeffs.first() else {
            return Ok(self.clone());
        };
        if a0.is_zero() {
            return Err(Error::NonUnitLeadingTerm);
        }
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let n = self.order();
        let mut b = Vec::with_capacity(n);
        b.push(a0.pow_ratio(num, den)?);
        let a0_inv = a0.inv().ok_or(Error::NonUnitLeadingTerm)?;
        for k in 1..n {
            let mut acc = S::zero(self.prec);
            for j in 1..=k {
                let a = &self.coeffs[j];
                let w = num * j as i64 - den * (k - j) as i64;
                if a.is_zero() || w == 0 {
                    continue;
                }
                acc = acc.add(&a.mul(&b[k - j]).mul_i64(w));
            }
            let scale = S::from_ratio(1, den * k as i64, self.prec).mul(&a0_inv);
            b.push(acc.mul(&scale));
        }
        Ok(Self::from_trusted(b, self.prec))
    }

    /// Multiplicative inverse `1/a`.
    pub fn inv(&self) -> Result<Self> {
        self.pow_ratio(-1, 1)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        same_precision(self.prec, other.prec)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    /// Term-by-term derivative; the order drops by one.
    pub fn derivative(&self) -> Self {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.mul_i64(k as i64)).collect();
        Self::from_trusted(c, self.prec)
    }

    /// Antiderivative with zero constant term; the order grows by one.
    pub fn integral(&self) -> Self {
        let mut c = Vec::with_capacity(self.order() + 1);
        c.push(S::zero(self.prec));
        for (k, v) in self.coeffs.iter().enumerate() {
            c.push(v.mul(&S::from_ratio(1, k as i64 + 1, self.prec)));
        }
        Self::from_trusted(c, self.prec)
    }

    /// `log(a/b)` on the branch with `log 1 = 0`. Both constant terms must be
    /// exactly one. Computed by integrating `(a/b)'/(a/b) = a'/a - b'/b`.
    pub fn log_ratio(a: &Self, b: &Self) -> Result<Self> {
        same_precision(a.prec, b.prec)?;
        let n = a.order().min(b.order());
        let one = S::one(a.prec);
        for s in [a, b] {
            if s.order() > 0 && s.coeffs[0] != one {
                return Err(Error::LeadingCoefficientNotOne);
            }
        }
        if n == 0 {
            return Ok(Self::from_trusted(Vec::new(), a.prec));
        }
        let (a, b) = (a.truncated(n), b.truncated(n));
        let da = a.derivative().mul_unchecked(&a.truncated(n - 1).inv()?);
        let db = b.derivative().mul_unchecked(&b.truncated(n - 1).inv()?);
        Ok(da.sub(&db)?.integral())
    }

    /// Sum of the stored terms at `z`.
    pub fn eval(&self, z: &S) -> Result<S> {
        same_precision(self.prec, z.precision())?;
        let mut acc = S::zero(self.prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(c);
        }
        Ok(acc)
    }

    /// The stored coefficients as a polynomial of degree `< N`.
    pub fn to_polynomial(&self) -> Polynomial<S> {
        Polynomial::from_trusted(self.coeffs.clone(), self.prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{GaussRational, MpComplex};
    use proptest::prelude::*;

    const D: u32 = 60;

    fn exact(c: &[(i64, i64)]) -> PowerSeries<GaussRational> {
        PowerSeries::new(c.iter().map(|&(p, q)| GaussRational::ratio(p, q)).collect(), Precision::Exact).unwrap()
    }

    fn mp(c: &[f64]) -> PowerSeries<MpComplex> {
        PowerSeries::new(c.iter().map(|&v| MpComplex::from_f64(v, 0.0, D)).collect(), Precision::Digits(D)).unwrap()
    }

    fn exp_series(n: usize) -> PowerSeries<GaussRational> {
        let mut c = Vec::new();
        let mut f = 1i64;
        for k in 0..n as i64 {
            if k > 0 {
                f *= k;
            }
            c.push((1, f));
        }
        exact(&c)
    }

    fn max_dev(a: &PowerSeries<MpComplex>, b: &PowerSeries<MpComplex>) -> f64 {
        a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| x.sub(y).log2_abs()).fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn products() {
        let p = exact(&[(1, 1), (1, 1), (0, 1)]).mul(&exact(&[(1, 1), (-1, 1), (0, 1)])).unwrap();
        assert_eq!(p, exact(&[(1, 1), (0, 1), (-1, 1)]));
        let a = exact(&[(3, 2), (-1, 7), (5, 1)]);
        assert_eq!(a.mul(&PowerSeries::one(Precision::Exact, 3)).unwrap(), a);
        // Cauchy square of the exponential series, summed by hand.
        let e = exp_series(4);
        let mut brute = Vec::new();
        for k in 0..4 {
            let mut acc = GaussRational::int(0);
            for j in 0..=k {
                acc = acc.add(&e.coeff(j).mul(e.coeff(k - j)));
            }
            brute.push(acc);
        }
        let sq = e.mul(&e).unwrap();
        assert_eq!(sq.coeffs(), &brute[..]);
        assert_eq!(sq, exact(&[(1, 1), (2, 1), (2, 1), (4, 3)]));
    }

    #[test]
    fn order_is_the_minimum() {
        let a = exact(&[(1, 1); 5]);
        let b = exact(&[(1, 1); 3]);
        assert_eq!(a.mul(&b).unwrap().order(), 3);
        assert_eq!(a.add(&b).unwrap().order(), 3);
    }

    #[test]
    fn binomial_square_root() {
        let s = exact(&[(1, 1), (-1, 1), (0, 1), (0, 1)]).pow_ratio(1, 2).unwrap();
        assert_eq!(s, exact(&[(1, 1), (-1, 2), (-1, 8), (-1, 16)]));
        let a = exact(&[(2, 1), (3, 1), (-1, 1)]);
        assert_eq!(a.pow_ratio(1, 1).unwrap(), a);
    }

    #[test]
    fn cube_root_of_product_matches_binomial_product() {
        // ((1 - z)(1 + 2z))^(1/3) against the product of the two binomial
        // series (1 - z)^(1/3) and (1 + 2z)^(1/3), each summed from
        // binomial coefficients.
        fn binom(alpha: (i64, i64), x: i64, n: usize) -> PowerSeries<GaussRational> {
            let mut c = alloc::vec![GaussRational::int(1)];
            for k in 1..n as i64 {
                let prev = c.last().unwrap().clone();
                let f = GaussRational::ratio(alpha.0 - alpha.1 * (k - 1), alpha.1 * k).mul(&GaussRational::int(x));
                c.push(prev.mul(&f));
            }
            PowerSeries::new(c, Precision::Exact).unwrap()
        }
        let oracle = binom((1, 3), -1, 3).mul(&binom((1, 3), 2, 3)).unwrap();
        let prod = exact(&[(1, 1), (-1, 1), (0, 1)]).mul(&exact(&[(1, 1), (2, 1), (0, 1)])).unwrap();
        let got = prod.pow_ratio(1, 3).unwrap();
        assert_eq!(got, oracle);
        assert_eq!(got, exact(&[(1, 1), (1, 3), (-7, 9)]));
    }

    #[test]
    fn zero_constant_term_rejected() {
        assert_eq!(exact(&[(0, 1), (1, 1)]).pow_ratio(1, 2), Err(Error::NonUnitLeadingTerm));
        assert_eq!(exact(&[(0, 1), (1, 1)]).inv(), Err(Error::NonUnitLeadingTerm));
    }

    #[test]
    fn logarithms() {
        let one_minus = |a: i64| exact(&[(1, 1), (-a, 1), (0, 1), (0, 1)]);
        let l = PowerSeries::log_ratio(&one_minus(2), &one_minus(1)).unwrap();
        assert_eq!(l, exact(&[(0, 1), (-1, 1), (-3, 2), (-7, 3)]));
        let a = exact(&[(1, 1), (3, 5), (-2, 1)]);
        assert!(PowerSeries::log_ratio(&a, &a).unwrap().coeffs().iter().all(|c| c.is_zero()));
        let merc =
            PowerSeries::log_ratio(&exact(&[(1, 1), (-1, 1), (0, 1), (0, 1), (0, 1)]), &exact(&[(1, 1); 1])).unwrap();
        assert_eq!(merc.order(), 1);
        let merc = PowerSeries::log_ratio(
            &exact(&[(1, 1), (-1, 1), (0, 1), (0, 1), (0, 1), (0, 1)]),
            &PowerSeries::one(Precision::Exact, 6),
        )
        .unwrap();
        for k in 1..6 {
            assert_eq!(merc.coeff(k), &GaussRational::ratio(-1, k as i64));
        }
        assert_eq!(
            PowerSeries::log_ratio(&exact(&[(2, 1), (1, 1)]), &exact(&[(1, 1), (0, 1)])),
            Err(Error::LeadingCoefficientNotOne)
        );
    }

    #[test]
    fn log_agrees_with_log1p_route() {
        // log(a/b) against the series log(1 + u) = Σ (-1)^(k+1) u^k / k with
        // u = a/b - 1, summed directly.
        let n = 12;
        let a = mp(&[1.0, 0.3, -0.7, 0.2, 0.0, 0.1, 0.0, 0.0, 0.0, 0.0, 0.0, 0.05]);
        let b = mp(&[1.0, -1.1, 0.25, 0.0, 0.4, 0.0, 0.0, 0.0, 0.3, 0.0, 0.0, 0.0]);
        let u = a.div(&b).unwrap().sub(&PowerSeries::one(Precision::Digits(D), n)).unwrap();
        let mut oracle = PowerSeries::constant(MpComplex::real(0, D), n);
        let mut upow = u.clone();
        for k in 1..n as i64 {
            let t =
                upow.scale(&MpComplex::from_ratio(if k % 2 == 1 { 1 } else { -1 }, k, Precision::Digits(D))).unwrap();
            oracle = oracle.add(&t).unwrap();
            upow = upow.mul(&u).unwrap();
        }
        let got = PowerSeries::log_ratio(&a, &b).unwrap();
        assert!(max_dev(&got, &oracle) < -(D as f64 - 10.0) * 3.32);
    }

    #[test]
    fn exact_and_floating_agree() {
        let e = exact(&[(1, 1), (2, 3), (-5, 7), (1, 9), (4, 1), (0, 1), (-1, 2)]);
        let f = PowerSeries::new(
            e.coeffs().iter().map(|c| MpComplex::from_rationals(&c.re, &c.im, Precision::Digits(D))).collect(),
            Precision::Digits(D),
        )
        .unwrap();
        let check = |x: &PowerSeries<GaussRational>, y: &PowerSeries<MpComplex>| {
            for (a, b) in x.coeffs().iter().zip(y.coeffs()) {
                let a = MpComplex::from_rationals(&a.re, &a.im, Precision::Digits(D));
                assert!(a.sub(b).log2_abs() < -(D as f64 - 8.0) * 3.32 + a.log2_abs().max(0.0));
            }
        };
        check(&e.mul(&e).unwrap(), &f.mul(&f).unwrap());
        check(&e.inv().unwrap(), &f.inv().unwrap());
        check(&e.pow_ratio(3, 1).unwrap(), &f.pow_ratio(3, 1).unwrap());
    }

    #[test]
    fn precision_mismatch() {
        let a = mp(&[1.0, 2.0]);
        let b = PowerSeries::one(Precision::Digits(D + 1), 2);
        assert!(matches!(a.mul(&b), Err(Error::PrecisionMismatch { .. })));
    }

    fn arb_series() -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 2..14)
    }

    fn to_mp(v: &[(f64, f64)]) -> PowerSeries<MpComplex> {
        let mut c: Vec<_> = v.iter().map(|&(r, i)| MpComplex::from_f64(r, i, D)).collect();
        c[0] = MpComplex::from_f64(1.0 + v[0].0.abs(), v[0].1, D);
        PowerSeries::new(c, Precision::Digits(D)).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn power_times_inverse_power_is_one(v in arb_series(), num in -5i64..6, den in 1i64..7) {
            let a = to_mp(&v);
            let p = a.pow_ratio(num, den).unwrap().mul(&a.pow_ratio(-num, den).unwrap()).unwrap();
            let one = PowerSeries::one(Precision::Digits(D), a.order());
            // Coefficients grow like (1/radius)^k; allow for that growth.
            let scale = a.coeffs().iter().map(|c| c.log2_abs()).fold(0.0, f64::max) * a.order() as f64 + 20.0;
            prop_assert!(max_dev(&p, &one) < -(D as f64 - 8.0) * 3.32 + scale);
        }

        #[test]
        fn square_power_is_self_product(v in arb_series()) {
            let a = to_mp(&v);
            let d = max_dev(&a.pow_ratio(2, 1).unwrap(), &a.mul(&a).unwrap());
            let scale = a.coeffs().iter().map(|c| c.log2_abs()).fold(0.0, f64::max) * 2.0 + 8.0;
            prop_assert!(d < -(D as f64 - 8.0) * 3.32 + scale);
        }
    }
}
