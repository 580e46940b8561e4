//! All complex zeros of a polynomial by Aberth–Ehrlich simultaneous
//! iteration.
//!
//! Exact zero roots are split off first. The remaining roots are located in
//! double precision, then refined at working precision, where every sweep
//! updates all roots from the previous sweep's values, and finally polished
//! by one Newton step each. The result depends only on the input
//! coefficients and precision.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numerics::{GaussRational, MpComplex, Polynomial, Precision, Scalar};

type C64 = Complex<f64>;

/// Angular offset of the initial guesses.
const SEED_OFFSET: f64 = 0.26;

/// Roots of a polynomial, one entry per root counted with multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<MpComplex>,
    /// `|p(root)|` per root.
    pub residuals: Vec<f64>,
    /// Working-precision sweeps performed.
    pub iterations: usize,
    /// Every correction fell below the convergence threshold.
    pub converged: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootOptions {
    /// Maximum number of working-precision sweeps.
    pub max_sweeps: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self { max_sweeps: 200 }
    }
}

/// Zeros of `p` with the default options.
pub fn find_roots(p: &Polynomial<MpComplex>) -> Result<RootSet> {
    find_roots_with(p, RootOptions::default())
}

pub fn find_roots_with(p: &Polynomial<MpComplex>, opts: RootOptions) -> Result<RootSet> {
    let digits = match p.precision() {
        Precision::Digits(d) => d,
        Precision::Exact => unreachable!("floating polynomial"),
    };
    let deg = p.degree().ok_or(Error::ConstantPolynomial)?;
    if deg == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let zeros = p.zero_root_multiplicity();
    let q = Polynomial::from_trusted(p.coeffs()[zeros..].to_vec(), p.precision());
    let d = deg - zeros;
    let mut roots = alloc::vec![MpComplex::real(0, digits); zeros];
    let (mut found, iterations, converged) = match d {
        0 => (Vec::new(), 0, true),
        1 => (alloc::vec![q.coeff(0).neg().div(&q.coeff(1)).expect("nonzero leading coefficient")], 0, true),
        _ => refine(&q, &seed_double(&q), digits, opts.max_sweeps),
    };
    roots.append(&mut found);
    let residuals = roots.iter().map(|r| p.eval_unchecked(r).abs_f64()).collect();
    Ok(RootSet { roots, residuals, iterations, converged })
}

/// Round an exact polynomial to `digits` and find its zeros.
pub fn find_roots_exact(p: &Polynomial<GaussRational>, digits: u32) -> Result<RootSet> {
    find_roots(&round_polynomial(p, digits))
}

pub fn round_polynomial(p: &Polynomial<GaussRational>, digits: u32) -> Polynomial<MpComplex> {
    let prec = Precision::Digits(digits);
    let c = p.coeffs().iter().map(|c| MpComplex::from_rationals(&c.re, &c.im, prec)).collect();
    Polynomial::from_trusted(c, prec)
}

/// `leading · Π (z − r_i)`.
pub fn reconstruct<S: Scalar>(roots: &[S], leading: &S) -> Polynomial<S> {
    let prec = leading.precision();
    let mut c = alloc::vec![leading.clone()];
    for r in roots {
        c.push(S::zero(prec));
        for k in (1..c.len()).rev() {
            c[k] = c[k - 1].sub(&c[k].mul(r));
        }
        c[0] = c[0].mul(r).neg();
    }
    Polynomial::from_trusted(c, prec)
}

/// Initial guesses on a circle of radius `|c_0/c_d|^(1/d)·(1 + 1/d)`.
fn initial_guesses(c: &[C64]) -> Vec<C64> {
    let d = c.len() - 1;
    let ratio = (c[0] / c[d]).norm();
    let radius = libm::pow(ratio, 1.0 / d as f64) * (1.0 + 1.0 / d as f64);
    (0..d).map(|k| C64::from_polar(radius, 2.0 * PI * k as f64 / d as f64 + SEED_OFFSET)).collect()
}

/// `p(z)/p'(z)` in double precision, through the reversed polynomial when
/// `|z| > 1` so that large powers of `z` never appear.
fn newton_ratio_f64(c: &[C64], z: C64) -> C64 {
    let d = c.len() - 1;
    if z.norm() <= 1.0 {
        let (mut p, mut dp) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
        for a in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        p / dp
    } else {
        let w = z.inv();
        let (mut r, mut dr) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
        for a in c.iter() {
            dr = dr * w + r;
            r = r * w + a;
        }
        z / (C64::new(d as f64, 0.0) - w * dr / r)
    }
}

fn aberth_step(z: &[C64], i: usize, n: C64) -> C64 {
    let mut s = C64::new(0.0, 0.0);
    for (j, zj) in z.iter().enumerate() {
        if j != i {
            s += (z[i] - zj).inv();
        }
    }
    n / (C64::new(1.0, 0.0) - n * s)
}

/// Double-precision Aberth iteration from the circle seeds.
fn seed_double(q: &Polynomial<MpComplex>) -> Vec<C64> {
    // Scale the coefficients by a power of two so none overflows.
    let shift = -(libm::round(q.max_log2_coeff()) as i32);
    let c: Vec<C64> = q.coeffs().iter().map(|v| v.ldexp(shift).to_c64()).collect();
    let mut z = initial_guesses(&c);
    for _ in 0..500 {
        let step: Vec<C64> = (0..z.len()).map(|i| aberth_step(&z, i, newton_ratio_f64(&c, z[i]))).collect();
        let mut done = true;
        for (zi, s) in z.iter_mut().zip(&step) {
            if s.is_finite() {
                done &= s.norm() <= 1e-14 * zi.norm().max(1.0);
                *zi -= s;
            }
        }
        if done {
            break;
        }
    }
    separate(&mut z);
    z
}

/// Nudge coincident or non-finite guesses apart so that the working-precision
/// sweep never divides by zero.
fn separate(z: &mut [C64]) {
    for i in 0..z.len() {
        if !z[i].is_finite() {
            z[i] = C64::from_polar(1.0, i as f64 + SEED_OFFSET);
        }
        for j in 0..i {
            if z[i] == z[j] {
                z[i] += C64::from_polar(1e-9 * z[i].norm().max(1.0), i as f64);
            }
        }
    }
}

/// Value and derivative by Horner's rule.
fn value_and_derivative(q: &Polynomial<MpComplex>, z: &MpComplex) -> (MpComplex, MpComplex) {
    let digits = z.digits();
    let (mut p, mut dp) = (MpComplex::real(0, digits), MpComplex::real(0, digits));
    for a in q.coeffs().iter().rev() {
        dp = dp.mul(z).add(&p);
        p = p.mul(z).add(a);
    }
    (p, dp)
}

/// `log2 Σ |a_k| |z|^k` from `log2 |a_k|` and `log2 |z|`.
fn log2_magnitude_sum(log2_coeffs: &[f64], log2_z: f64) -> f64 {
    let terms = log2_coeffs.iter().enumerate().map(|(k, &a)| a + k as f64 * log2_z);
    let top = terms.clone().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return top;
    }
    top + libm::log2(terms.map(|t| libm::exp2(t - top)).sum::<f64>())
}

fn refine(q: &Polynomial<MpComplex>, seeds: &[C64], digits: u32, max_sweeps: usize) -> (Vec<MpComplex>, usize, bool) {
    let mut z: Vec<MpComplex> = seeds.iter().map(|&s| MpComplex::from_c64(s, digits)).collect();
    let tol = Precision::Digits(digits).tolerance_log2(10);
    let log2_coeffs: Vec<f64> = q.coeffs().iter().map(|a| a.log2_abs()).collect();
    let mut active = alloc::vec![true; z.len()];
    let mut sweeps = 0;
    while sweeps < max_sweeps && active.iter().any(|&a| a) {
        sweeps += 1;
        let steps: Vec<Option<MpComplex>> = (0..z.len())
            .map(|i| {
                if !active[i] {
                    return None;
                }
                let (p, dp) = value_and_derivative(q, &z[i]);
                if p.is_zero() || p.log2_abs() < tol + log2_magnitude_sum(&log2_coeffs, z[i].log2_abs()) {
                    // At the rounding floor: a further correction is noise.
                    return Some(MpComplex::real(0, digits));
                }
                let n = p.div(&dp)?;
                let mut s = MpComplex::real(0, digits);
                for (j, zj) in z.iter().enumerate() {
                    if j != i {
                        s = s.add(&z[i].sub(zj).inv()?);
                    }
                }
                n.div(&MpComplex::real(1, digits).sub(&n.mul(&s)))
            })
            .collect();
        for (i, step) in steps.into_iter().enumerate() {
            let Some(step) = step else { continue };
            let bound = tol + z[i].log2_abs().max(0.0);
            let done = step.is_zero() || step.log2_abs() < bound;
            z[i] = z[i].sub(&step);
            if done {
                active[i] = false;
            }
        }
    }
    for zi in z.iter_mut() {
        let (p, dp) = value_and_derivative(q, zi);
        if let Some(n) = p.div(&dp) {
            *zi = zi.sub(&n);
        }
    }
    (z, sweeps, active.iter().all(|&a| !a))
}
