//! Taylor coefficients at the origin of the explicit test functions.
//!
//! | kind        | function                                                   | params |
//! |-------------|------------------------------------------------------------|--------|
//! | `SixRoot`   | `((1 − a_1 z)…(1 − a_6 z))^(1/6)`                            | 6      |
//! | `SqrtPair`  | `((1 − a_1 z)/(1 − a_2 z))^(1/2) + ((1 − a_3 z)/(1 − a_4 z))^(1/2)` | 4 |
//! | `LogPair`   | `log((1 − a_1 z)/(1 − a_2 z)) + log((1 − a_3 z)/(1 − a_4 z))` | 4      |
//! | `Cube2021`  | `(1 − z²)^(1/3) (1 − a z)^(−2/3)`                            | 1      |
//! | `Cardano1`  | root of `w³ + 3(z² + 3z + 5)w + 2(z³ + 2z² + z + 1) = 0`     | 0      |
//! | `Cardano2`  | root of `w³ − 3(z − 1)²w + 2(z − 3)³ = 0`                    | 0      |
//! | `Zhukovsky` | `((A − w)(B − w))^(−1/2)`, `w = z/(1 + (1 − z²)^(1/2))`       | A, B   |
//!
//! Every power is the principal branch at `z = 0`. The two cubic roots are
//! selected by their value at the origin and then expanded by Newton's
//! method on power series.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numerics::{MpComplex, Polynomial, PowerSeries, Precision, Scalar};

/// The explicit test functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    SixRoot,
    SqrtPair,
    LogPair,
    Cube2021,
    Cardano1,
    Cardano2,
    Zhukovsky,
}

impl ModelKind {
    pub const ALL: [ModelKind; 7] = [
        ModelKind::SixRoot,
        ModelKind::SqrtPair,
        ModelKind::LogPair,
        ModelKind::Cube2021,
        ModelKind::Cardano1,
        ModelKind::Cardano2,
        ModelKind::Zhukovsky,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::SixRoot => "six_root",
            ModelKind::SqrtPair => "sqrt_pair",
            ModelKind::LogPair => "log_pair",
            ModelKind::Cube2021 => "cube2021",
            ModelKind::Cardano1 => "cardano_2016_1",
            ModelKind::Cardano2 => "cardano_2016_2",
            ModelKind::Zhukovsky => "zhukovsky_markov",
        }
    }

    /// Number of parameters the kind takes.
    pub fn param_count(self) -> usize {
        match self {
            ModelKind::SixRoot => 6,
            ModelKind::SqrtPair | ModelKind::LogPair => 4,
            ModelKind::Cube2021 => 1,
            ModelKind::Cardano1 | ModelKind::Cardano2 => 0,
            ModelKind::Zhukovsky => 2,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let alias = match s {
            "cardano1" | "cube_2016" => Some(ModelKind::Cardano1),
            "cardano2" | "cube2_2016" => Some(ModelKind::Cardano2),
            "zhukovsky" => Some(ModelKind::Zhukovsky),
            "sq" => Some(ModelKind::SqrtPair),
            "log" => Some(ModelKind::LogPair),
            _ => None,
        };
        alias
            .or_else(|| ModelKind::ALL.into_iter().find(|k| k.name() == s))
            .ok_or_else(|| Error::InvalidParams(format!("unknown model kind {s:?}")))
    }
}

/// A model and its parameters.
///
/// An empty parameter list selects the built-in defaults. For `Cube2021` the
/// default `a = (0.3 + i)√3` is formed at working precision; all other
/// parameters are double-precision values taken as exact.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub params: Vec<Complex<f64>>,
}

/// Default parameters of `SixRoot`: three conjugate pairs.
pub const SIX_ROOT_DEFAULT: [Complex<f64>; 6] = [
    Complex::new(1.2, 0.6),
    Complex::new(1.2, -0.6),
    Complex::new(-1.0, 1.0),
    Complex::new(-1.0, -1.0),
    Complex::new(0.3, 1.5),
    Complex::new(0.3, -1.5),
];

/// Default parameters of `SqrtPair` and `LogPair`.
pub const PAIR_DEFAULT: [Complex<f64>; 4] =
    [Complex::new(1.1, 0.6), Complex::new(-0.9, 0.8), Complex::new(0.2, -1.3), Complex::new(-1.2, -0.7)];

/// Default `(A, B)` of `Zhukovsky`.
pub const ZHUKOVSKY_DEFAULT: (f64, f64) = (2.0, 3.0);

impl ModelSpec {
    pub fn new(kind: ModelKind, params: Vec<Complex<f64>>) -> Result<Self> {
        let spec = Self { kind, params };
        spec.validate()?;
        Ok(spec)
    }

    pub fn default_for(kind: ModelKind) -> Self {
        Self { kind, params: Vec::new() }
    }

    pub fn zhukovsky(a: f64, b: f64) -> Result<Self> {
        Self::new(ModelKind::Zhukovsky, alloc::vec![Complex::new(a, 0.0), Complex::new(b, 0.0)])
    }

    /// Short identifier used as provenance in point clouds.
    pub fn id(&self) -> String {
        if self.params.is_empty() {
            return String::from(self.kind.name());
        }
        let p: Vec<String> = self.params.iter().map(|c| format!("{}{:+}i", c.re, c.im)).collect();
        format!("{}({})", self.kind.name(), p.join(","))
    }

    pub fn validate(&self) -> Result<()> {
        if !self.params.is_empty() && self.params.len() != self.kind.param_count() {
            return Err(Error::InvalidParams(format!(
                "{} takes {} parameters, got {}",
                self.kind,
                self.kind.param_count(),
                self.params.len()
            )));
        }
        if self.params.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidParams("non-finite parameter".into()));
        }
        if self.kind == ModelKind::Zhukovsky {
            let (a, b) = self.zhukovsky_params();
            let real = self.params.iter().all(|c| c.im == 0.0);
            if !(real && 1.0 < a && a < b) {
                return Err(Error::InvalidParams(format!("need real 1 < A < B, got A = {a}, B = {b}")));
            }
        }
        Ok(())
    }

    /// Parameters with defaults filled in, at working precision.
    fn resolved(&self, digits: u32) -> Vec<MpComplex> {
        if !self.params.is_empty() {
            return self.params.iter().map(|&c| MpComplex::from_c64(c, digits)).collect();
        }
        match self.kind {
            ModelKind::SixRoot => SIX_ROOT_DEFAULT.iter().map(|&c| MpComplex::from_c64(c, digits)).collect(),
            ModelKind::SqrtPair | ModelKind::LogPair => {
                PAIR_DEFAULT.iter().map(|&c| MpComplex::from_c64(c, digits)).collect()
            }
            ModelKind::Cube2021 => alloc::vec![cube2021_default_param(digits)],
            ModelKind::Cardano1 | ModelKind::Cardano2 => Vec::new(),
            ModelKind::Zhukovsky => {
                let (a, b) = ZHUKOVSKY_DEFAULT;
                alloc::vec![MpComplex::from_f64(a, 0.0, digits), MpComplex::from_f64(b, 0.0, digits)]
            }
        }
    }

    fn zhukovsky_params(&self) -> (f64, f64) {
        match self.params.as_slice() {
            [a, b] => (a.re, b.re),
            _ => ZHUKOVSKY_DEFAULT,
        }
    }

    /// Branch points in the `z` plane, where they are known in closed form
    /// or as roots of an explicit polynomial. Logarithmic points are included
    /// for `LogPair`. The point at infinity is never listed.
    pub fn branch_points(&self, digits: u32) -> Result<Vec<MpComplex>> {
        let p = self.resolved(digits);
        let recip = |v: &[MpComplex]| v.iter().filter(|a| !a.is_zero()).map(|a| a.inv().expect("nonzero")).collect();
        Ok(match self.kind {
            ModelKind::SixRoot | ModelKind::SqrtPair | ModelKind::LogPair => recip(&p),
            ModelKind::Cube2021 => {
                let mut v = alloc::vec![MpComplex::real(1, digits), MpComplex::real(-1, digits)];
                v.extend(recip(&p));
                v
            }
            ModelKind::Cardano1 | ModelKind::Cardano2 => {
                let which = if self.kind == ModelKind::Cardano1 { 1 } else { 2 };
                crate::roots::find_roots(&cardano_discriminant(which, digits)?)?.roots
            }
            ModelKind::Zhukovsky => {
                // ζ = ±1, a, b with a = (A + 1/A)/2; z = 1/ζ.
                let mut v = alloc::vec![MpComplex::real(1, digits), MpComplex::real(-1, digits)];
                for x in &p {
                    let zeta = x.add(&x.inv().expect("A > 1")).mul(&MpComplex::from_f64(0.5, 0.0, digits));
                    v.push(zeta.inv().expect("nonzero"));
                }
                v
            }
        })
    }
}

/// `(0.3 + i)·√3` at working precision.
pub fn cube2021_default_param(digits: u32) -> MpComplex {
    let prec = Precision::Digits(digits);
    let base = MpComplex::from_ratio(3, 10, prec).add(&MpComplex::i(digits));
    base.mul(&MpComplex::real(3, digits).sqrt())
}

fn linear(a: &MpComplex, n: usize) -> PowerSeries<MpComplex> {
    // 1 − a z
    let d = a.digits();
    let mut c = alloc::vec![MpComplex::real(0, d); n];
    if n > 0 {
        c[0] = MpComplex::real(1, d);
    }
    if n > 1 {
        c[1] = a.neg();
    }
    PowerSeries::new(c, Precision::Digits(d)).expect("uniform precision")
}

fn check_digits(digits: u32) -> Result<()> {
    if digits < crate::numerics::MIN_DIGITS {
        return Err(Error::InvalidPrecision(digits));
    }
    Ok(())
}

/// First `n` Taylor coefficients of the model at `digits` precision.
pub fn model_series(spec: &ModelSpec, n: usize, digits: u32) -> Result<PowerSeries<MpComplex>> {
    spec.validate()?;
    check_digits(digits)?;
    let p = spec.resolved(digits);
    match spec.kind {
        ModelKind::SixRoot => {
            let mut prod = PowerSeries::one(Precision::Digits(digits), n);
            for a in &p {
                prod = prod.mul(&linear(a, n))?;
            }
            prod.pow_ratio(1, 6)
        }
        ModelKind::SqrtPair => {
            let half = |a: &MpComplex, s: i64| linear(a, n).pow_ratio(s, 2);
            half(&p[0], 1)?.mul(&half(&p[1], -1)?)?.add(&half(&p[2], 1)?.mul(&half(&p[3], -1)?)?)
        }
        ModelKind::LogPair => {
            let l1 = PowerSeries::log_ratio(&linear(&p[0], n), &linear(&p[1], n))?;
            let l2 = PowerSeries::log_ratio(&linear(&p[2], n), &linear(&p[3], n))?;
            l1.add(&l2)
        }
        ModelKind::Cube2021 => {
            let prec = Precision::Digits(digits);
            let mut c = alloc::vec![MpComplex::real(0, digits); n];
            if n > 0 {
                c[0] = MpComplex::real(1, digits);
            }
            if n > 2 {
                c[2] = MpComplex::real(-1, digits);
            }
            let one_minus_z2 = PowerSeries::new(c, prec)?;
            one_minus_z2.pow_ratio(1, 3)?.mul(&linear(&p[0], n).pow_ratio(-2, 3)?)
        }
        ModelKind::Cardano1 => cardano_series(1, n, digits),
        ModelKind::Cardano2 => cardano_series(2, n, digits),
        ModelKind::Zhukovsky => zhukovsky_series_mp(&p[0], &p[1], n),
    }
}

/// Coefficients `p(z), q(z)` of the cubic `w³ + p w + q = 0`.
fn cardano_coefficients(which: u8, digits: u32) -> Result<(Polynomial<MpComplex>, Polynomial<MpComplex>)> {
    let prec = Precision::Digits(digits);
    let poly = |c: &[i64]| Polynomial::new(c.iter().map(|&v| MpComplex::real(v, digits)).collect(), prec);
    match which {
        1 => Ok((poly(&[15, 9, 3])?, poly(&[2, 2, 4, 2])?)),
        // −3(z − 1)² and 2(z − 3)³.
        2 => Ok((poly(&[-3, 6, -3])?, poly(&[-54, 54, -18, 2])?)),
        _ => Err(Error::InvalidParams(format!("Cardano model {which} does not exist"))),
    }
}

/// Discriminant-type polynomial whose roots are the finite branch points:
/// `(z² + 3z + 5)³ + (z³ + 2z² + z + 1)²` or `(z − 3)⁶ − (z − 1)⁶`.
pub fn cardano_discriminant(which: u8, digits: u32) -> Result<Polynomial<MpComplex>> {
    let prec = Precision::Digits(digits);
    let poly = |c: &[i64]| Polynomial::new(c.iter().map(|&v| MpComplex::real(v, digits)).collect(), prec);
    match which {
        1 => {
            let a = poly(&[5, 3, 1])?;
            let b = poly(&[1, 1, 2, 1])?;
            a.mul(&a)?.mul(&a)?.add(&b.mul(&b)?)
        }
        2 => {
            let a = poly(&[-3, 1])?;
            let b = poly(&[-1, 1])?;
            let a3 = a.mul(&a)?.mul(&a)?;
            let b3 = b.mul(&b)?.mul(&b)?;
            a3.mul(&a3)?.sub(&b3.mul(&b3)?)
        }
        _ => Err(Error::InvalidParams(format!("Cardano model {which} does not exist"))),
    }
}

/// `w(0)` from the Cardano formula, in double precision.
fn cardano_seed(which: u8) -> f64 {
    match which {
        1 => {
            let u = libm::cbrt(-1.0 + libm::sqrt(126.0));
            u - 5.0 / u
        }
        _ => {
            let u = libm::cbrt(27.0 + libm::sqrt(728.0));
            u + 1.0 / u
        }
    }
}

/// `w³ + p w + q` as a series, with `p`, `q` given as polynomials.
pub fn cubic_residual(
    w: &PowerSeries<MpComplex>,
    p: &Polynomial<MpComplex>,
    q: &Polynomial<MpComplex>,
) -> Result<PowerSeries<MpComplex>> {
    let n = w.order();
    let ps = PowerSeries::from_polynomial(p, n);
    let qs = PowerSeries::from_polynomial(q, n);
    w.mul(w)?.mul(w)?.add(&ps.mul(w)?)?.add(&qs)
}

/// Residual of a series under the defining cubic of Cardano model `which`.
pub fn cardano_residual(which: u8, w: &PowerSeries<MpComplex>) -> Result<PowerSeries<MpComplex>> {
    let (p, q) =
        cardano_coefficients(which, w.coeffs().first().map_or(crate::numerics::DEFAULT_DIGITS, |c| c.digits()))?;
    cubic_residual(w, &p, &q)
}

/// The Cardano-selected root of cubic `which` (1 or 2), expanded to `n`
/// coefficients by series Newton iteration.
pub fn cardano_series(which: u8, n: usize, digits: u32) -> Result<PowerSeries<MpComplex>> {
    check_digits(digits)?;
    let (p, q) = cardano_coefficients(which, digits)?;
    let prec = Precision::Digits(digits);
    // Seed: Cardano value in double precision, checked against the cubic at
    // z = 0 and refined by scalar Newton at working precision.
    let seed = cardano_seed(which);
    let (p0, q0) = (p.coeff(0).re_f64(), q.coeff(0).re_f64());
    let res = seed * seed * seed + p0 * seed + q0;
    let scale = (seed * seed * seed).abs() + (p0 * seed).abs() + q0.abs();
    if res.is_nan() || res.abs() > 1e-10 * scale {
        return Err(Error::SeedMismatch { residual: res });
    }
    let mut w0 = MpComplex::from_f64(seed, 0.0, digits);
    let three = MpComplex::real(3, digits);
    for _ in 0..12 {
        let f = w0.mul(&w0).mul(&w0).add(&p.coeff(0).mul(&w0)).add(&q.coeff(0));
        let df = three.mul(&w0).mul(&w0).add(&p.coeff(0));
        w0 = w0.sub(&f.div(&df).ok_or(Error::SeedMismatch { residual: f64::INFINITY })?);
    }
    if n == 0 {
        return PowerSeries::new(Vec::new(), prec);
    }
    let mut w = PowerSeries::constant(w0, 1);
    let mut have = 1;
    while have < n {
        let m = (2 * have).min(n);
        let mut c = w.into_coeffs();
        c.resize(m, MpComplex::real(0, digits));
        let wm = PowerSeries::new(c, prec)?;
        let f = cubic_residual(&wm, &p, &q)?;
        let ps = PowerSeries::from_polynomial(&p, m);
        let df = wm.mul(&wm)?.scale(&three)?.add(&ps)?;
        w = wm.sub(&f.div(&df)?)?;
        have = m;
    }
    Ok(w)
}

fn zhukovsky_series_mp(a: &MpComplex, b: &MpComplex, n: usize) -> Result<PowerSeries<MpComplex>> {
    let digits = a.digits();
    let prec = Precision::Digits(digits);
    if n == 0 {
        return PowerSeries::new(Vec::new(), prec);
    }
    // w = z / (1 + (1 − z²)^(1/2)), analytic at 0 with w(0) = 0.
    let mut c = alloc::vec![MpComplex::real(0, digits); n];
    c[0] = MpComplex::real(1, digits);
    if n > 2 {
        c[2] = MpComplex::real(-1, digits);
    }
    let s = PowerSeries::new(c, prec)?.pow_ratio(1, 2)?;
    let one_plus = s.add(&PowerSeries::one(prec, n))?;
    let mut zc = alloc::vec![MpComplex::real(0, digits); n];
    if n > 1 {
        zc[1] = MpComplex::real(1, digits);
    }
    let w = PowerSeries::new(zc, prec)?.mul(&one_plus.inv()?)?;
    let am = PowerSeries::constant(a.clone(), n).sub(&w)?;
    let bm = PowerSeries::constant(b.clone(), n).sub(&w)?;
    am.mul(&bm)?.pow_ratio(-1, 2)
}

/// Taylor coefficients of `f(z) = f_*(1/z)` for the Zhukovsky model.
pub fn zhukovsky_series(a: f64, b: f64, n: usize, digits: u32) -> Result<PowerSeries<MpComplex>> {
    model_series(&ModelSpec::zhukovsky(a, b)?, n, digits)
}

/// `φ(ζ) = ζ + (ζ² − 1)^(1/2)` on the branch with `|φ| ≥ 1`.
pub fn joukowski_inverse(zeta: &MpComplex) -> Result<MpComplex> {
    if zeta.is_real() && zeta.re_f64().abs() <= 1.0 && zeta.abs().cmp_abs(&MpComplex::real(1, zeta.digits())).is_le() {
        return Err(Error::OnBranchCut);
    }
    let s = zeta.mul(zeta).sub(&MpComplex::real(1, zeta.digits())).sqrt();
    let p1 = zeta.add(&s);
    let p2 = zeta.sub(&s);
    Ok(if p1.cmp_abs(&p2).is_ge() { p1 } else { p2 })
}

/// `f_*(ζ) = [(A − 1/φ(ζ))(B − 1/φ(ζ))]^(−1/2)`, with `f_* → 1/√(AB)` at
/// infinity.
pub fn zhukovsky_values(a: f64, b: f64, zeta: &MpComplex) -> Result<MpComplex> {
    ModelSpec::zhukovsky(a, b)?;
    let digits = zeta.digits();
    let w = joukowski_inverse(zeta)?.inv().ok_or(Error::OnBranchCut)?;
    let fa = MpComplex::from_f64(a, 0.0, digits).sub(&w).pow_ratio(-1, 2)?;
    let fb = MpComplex::from_f64(b, 0.0, digits).sub(&w).pow_ratio(-1, 2)?;
    Ok(fa.mul(&fb))
}
