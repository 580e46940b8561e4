//! Lindstedt–Poincaré expansion of the van der Pol limit cycle.
//!
//! With the strained time `x = ν t` the oscillator becomes
//! `ν² ü + ε ν (u² − 1) u̇ + u = 0`, where dots are `d/dx`. Both
//! `u(x; ε) = Σ u_k(x) ε^k` and `ν(ε) = Σ ν̃_k ε^k` are expanded in powers
//! of `ε`; every `u_k` is a trigonometric polynomial in `x` and `u_0 = 2 cos x`.
//!
//! At order `k` the first-harmonic components of the residual are removed by
//! choosing `ν̃_k` together with the `cos x` amplitude of `u_{k−1}`, which the
//! previous order left free. The `sin x` amplitude of each `u_k` is fixed by
//! the phase condition `u̇(0) = 0`. Higher harmonics are solved by dividing
//! by `1 − h²`. The damping term is formed as `d/dx(u³/3 − u)` from cached
//! series powers of `u`, so each order costs one new square and one new cube.
//!
//! The phase condition only forces the sine part to have zero derivative at
//! the origin: the limit cycle is not symmetric under `x → −x`, so the `u_k`
//! with `k ≥ 1` carry sine terms.
//!
//! The generator is generic over the coefficient field. Exact rationals give
//! bit-exact `ν_j`; the floating variant carries a fixed binary precision and
//! is what makes orders beyond a few dozen affordable.

use alloc::vec::Vec;
use core::fmt;

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::{big_from_rational, big_to_f64, bits_for_digits, MpComplex, PowerSeries, Precision, Scalar, RM};

/// Field operations needed by the generator.
pub trait Coefficient: Clone + fmt::Debug + PartialEq {
    /// Construction context (the binary precision for floats).
    type Ctx: Copy + fmt::Debug + PartialEq;

    fn ctx(&self) -> Self::Ctx;
    fn ratio(num: i64, den: i64, ctx: Self::Ctx) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul_i64(&self, k: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn to_f64(&self) -> f64;
}

impl Coefficient for BigRational {
    type Ctx = ();

    fn ctx(&self) {}

    fn ratio(num: i64, den: i64, _: ()) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul_i64(&self, k: i64) -> Self {
        self * BigInt::from(k)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Real binary floating-point number with a fixed mantissa width.
#[derive(Clone, Debug, PartialEq)]
pub struct MpReal {
    value: BigFloat,
    bits: usize,
}

impl MpReal {
    pub fn bits(&self) -> usize {
        self.bits
    }

    /// Convert to a real `MpComplex` at `digits`.
    pub fn to_complex(&self, digits: u32) -> MpComplex {
        MpComplex::from_real_big(self.value.clone(), digits)
    }
}

impl Coefficient for MpReal {
    type Ctx = usize;

    fn ctx(&self) -> usize {
        self.bits
    }

    fn ratio(num: i64, den: i64, bits: usize) -> Self {
        let n = BigFloat::from_i64(num, bits);
        let value = if den == 1 { n } else { n.div(&BigFloat::from_i64(den, bits), bits, RM) };
        Self { value, bits }
    }
    fn add(&self, o: &Self) -> Self {
        Self { value: self.value.add(&o.value, self.bits, RM), bits: self.bits }
    }
    fn sub(&self, o: &Self) -> Self {
        Self { value: self.value.sub(&o.value, self.bits, RM), bits: self.bits }
    }
    fn mul(&self, o: &Self) -> Self {
        Self { value: self.value.mul(&o.value, self.bits, RM), bits: self.bits }
    }
    fn div(&self, o: &Self) -> Self {
        Self { value: self.value.div(&o.value, self.bits, RM), bits: self.bits }
    }
    fn neg(&self) -> Self {
        Self { value: self.value.neg(), bits: self.bits }
    }
    fn mul_i64(&self, k: i64) -> Self {
        self.mul(&Self::ratio(k, 1, self.bits))
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
    fn to_f64(&self) -> f64 {
        big_to_f64(&self.value)
    }
}

/// `Σ_h c_h cos(h x) + s_h sin(h x)` over harmonics `h ≥ 0`, stored densely.
/// The sine coefficient of harmonic 0 is always zero.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigPolynomial<T: Coefficient> {
    cos: Vec<T>,
    sin: Vec<T>,
    ctx: T::Ctx,
}

impl<T: Coefficient> TrigPolynomial<T> {
    pub fn zero(ctx: T::Ctx) -> Self {
        Self { cos: Vec::new(), sin: Vec::new(), ctx }
    }

    /// `cos(h x)` or `sin(h x)` times `c`.
    pub fn monomial(h: usize, c: T, sine: bool) -> Self {
        let ctx = c.ctx();
        let mut p = Self::zero(ctx);
        p.grow(h + 1);
        if sine {
            if h > 0 {
                p.sin[h] = c;
            }
        } else {
            p.cos[h] = c;
        }
        p.trim();
        p
    }

    /// Build from cosine and sine coefficient lists indexed by harmonic.
    pub fn new(cos: Vec<T>, sin: Vec<T>, ctx: T::Ctx) -> Self {
        let mut p = Self { cos, sin, ctx };
        let n = p.cos.len().max(p.sin.len());
        p.grow(n);
        if let Some(s0) = p.sin.first_mut() {
            *s0 = T::ratio(0, 1, ctx);
        }
        p.trim();
        p
    }

    fn grow(&mut self, n: usize) {
        let z = T::ratio(0, 1, self.ctx);
        if self.cos.len() < n {
            self.cos.resize(n, z.clone());
        }
        if self.sin.len() < n {
            self.sin.resize(n, z);
        }
    }

    fn trim(&mut self) {
        while self.cos.last().is_some_and(|c| c.is_zero()) && self.sin.last().is_some_and(|s| s.is_zero()) {
            self.cos.pop();
            self.sin.pop();
        }
    }

    /// Highest harmonic present, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.cos.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.cos.is_empty()
    }

    pub fn cos_coeff(&self, h: usize) -> T {
        self.cos.get(h).cloned().unwrap_or_else(|| T::ratio(0, 1, self.ctx))
    }

    pub fn sin_coeff(&self, h: usize) -> T {
        self.sin.get(h).cloned().unwrap_or_else(|| T::ratio(0, 1, self.ctx))
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.cos.len().max(o.cos.len());
        let cos = (0..n).map(|h| self.cos_coeff(h).add(&o.cos_coeff(h))).collect();
        let sin = (0..n).map(|h| self.sin_coeff(h).add(&o.sin_coeff(h))).collect();
        Self::new(cos, sin, self.ctx)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&T::ratio(-1, 1, self.ctx))
    }

    pub fn scale(&self, c: &T) -> Self {
        let cos = self.cos.iter().map(|v| v.mul(c)).collect();
        let sin = self.sin.iter().map(|v| v.mul(c)).collect();
        Self::new(cos, sin, self.ctx)
    }

    /// Product by the product-to-sum identities.
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.ctx);
        }
        let n = self.cos.len() + o.cos.len() - 1;
        let z = T::ratio(0, 1, self.ctx);
        let mut c = alloc::vec![z.clone(); n];
        let mut s = alloc::vec![z; n];
        for a in 0..self.cos.len() {
            let (ca, sa) = (&self.cos[a], &self.sin[a]);
            let (ca0, sa0) = (ca.is_zero(), sa.is_zero());
            if ca0 && sa0 {
                continue;
            }
            for b in 0..o.cos.len() {
                let (cb, sb) = (&o.cos[b], &o.sin[b]);
                let (cb0, sb0) = (cb.is_zero(), sb.is_zero());
                if cb0 && sb0 {
                    continue;
                }
                let hi = a + b;
                let lo = a.abs_diff(b);
                // Every identity carries a factor 1/2, applied at the end.
                if !ca0 && !cb0 {
                    let t = ca.mul(cb);
                    c[hi] = c[hi].add(&t);
                    c[lo] = c[lo].add(&t);
                }
                if !sa0 && !sb0 {
                    let t = sa.mul(sb);
                    c[lo] = c[lo].add(&t);
                    c[hi] = c[hi].sub(&t);
                }
                if lo == 0 {
                    // sin(0) = 0 kills the difference terms.
                    if !sa0 && !cb0 {
                        s[hi] = s[hi].add(&sa.mul(cb));
                    }
                    if !ca0 && !sb0 {
                        s[hi] = s[hi].add(&ca.mul(sb));
                    }
                    continue;
                }
                let a_ge = a > b;
                if !sa0 && !cb0 {
                    // sin a cos b = [sin(a+b) + sin(a−b)] / 2
                    let t = sa.mul(cb);
                    s[hi] = s[hi].add(&t);
                    s[lo] = if a_ge { s[lo].add(&t) } else { s[lo].sub(&t) };
                }
                if !ca0 && !sb0 {
                    // cos a sin b = [sin(a+b) − sin(a−b)] / 2
                    let t = ca.mul(sb);
                    s[hi] = s[hi].add(&t);
                    s[lo] = if a_ge { s[lo].sub(&t) } else { s[lo].add(&t) };
                }
            }
        }
        let half = T::ratio(1, 2, self.ctx);
        Self::new(c, s, self.ctx).scale(&half)
    }

    /// `d/dx`.
    pub fn derivative(&self) -> Self {
        let n = self.cos.len();
        let cos = (0..n).map(|h| self.sin[h].mul_i64(h as i64)).collect();
        let sin = (0..n).map(|h| self.cos[h].mul_i64(-(h as i64))).collect();
        Self::new(cos, sin, self.ctx)
    }

    /// `d²/dx²`.
    pub fn second_derivative(&self) -> Self {
        let n = self.cos.len();
        let f = |v: &T, h: usize| v.mul_i64(-((h * h) as i64));
        let cos = (0..n).map(|h| f(&self.cos[h], h)).collect();
        let sin = (0..n).map(|h| f(&self.sin[h], h)).collect();
        Self::new(cos, sin, self.ctx)
    }

    /// Value at `x = 0`, the sum of the cosine coefficients.
    pub fn value_at_zero(&self) -> T {
        self.cos.iter().fold(T::ratio(0, 1, self.ctx), |acc, c| acc.add(c))
    }

    /// Derivative at `x = 0`, `Σ h s_h`.
    pub fn slope_at_zero(&self) -> T {
        self.sin.iter().enumerate().fold(T::ratio(0, 1, self.ctx), |acc, (h, s)| acc.add(&s.mul_i64(h as i64)))
    }

    /// Double-precision evaluation, for plots and spot checks.
    pub fn eval_f64(&self, x: f64) -> f64 {
        (0..self.cos.len())
            .map(|h| {
                let hx = h as f64 * x;
                self.cos[h].to_f64() * libm::cos(hx) + self.sin[h].to_f64() * libm::sin(hx)
            })
            .sum()
    }
}

/// Result of [`vdp_expand`].
#[derive(Clone, Debug, PartialEq)]
pub struct VdpExpansion<T: Coefficient> {
    pub order: usize,
    /// `u_0 … u_K`. The free `cos x` amplitude of `u_K` is not determined at
    /// order `K` and is left at zero.
    pub u: Vec<TrigPolynomial<T>>,
    /// `ν̃_0 … ν̃_K`.
    pub nu_tilde: Vec<T>,
    /// `ν_j = ν̃_{2j}` for `2j ≤ K`, with `ν_0 = 1`.
    pub nu: Vec<T>,
    /// `A_k = u_k(0)`, the expansion of the amplitude `u(0; ε)`. The last
    /// entry inherits the undetermined amplitude of `u_K`.
    pub amplitude: Vec<T>,
}

/// Expansion through `ε^K` in exact rational arithmetic.
pub fn vdp_expand(order: usize) -> VdpExpansion<BigRational> {
    vdp_expand_in::<BigRational>(order, ())
}

/// Expansion through `ε^K` in binary floating point with `bits` of mantissa.
pub fn vdp_expand_float(order: usize, bits: usize) -> VdpExpansion<MpReal> {
    vdp_expand_in::<MpReal>(order, bits)
}

/// Generic driver over the coefficient field.
pub fn vdp_expand_in<T: Coefficient>(order: usize, ctx: T::Ctx) -> VdpExpansion<T> {
    let r = |n: i64, d: i64| T::ratio(n, d, ctx);
    let cosx = TrigPolynomial::monomial(1, r(1, 1), false);
    let u0 = cosx.scale(&r(2, 1));

    let mut u: Vec<TrigPolynomial<T>> = alloc::vec![u0.clone()];
    let mut u2: Vec<TrigPolynomial<T>> = alloc::vec![u0.mul(&u0)];
    let mut u3: Vec<TrigPolynomial<T>> = alloc::vec![u2[0].mul(&u0)];
    let mut nu_t: Vec<T> = alloc::vec![r(1, 1)];
    // s = ν² as a series in ε.
    let mut s: Vec<T> = alloc::vec![r(1, 1)];

    // Response of the order-k residual to a unit `cos x` added to `u_{k−1}`
    // (k ≥ 2), apart from the `s_1` term: d/dx(u_0² cos x − cos x).
    let u0_cos = u0.mul(&cosx);
    let u0sq_cos = u2[0].mul(&cosx);
    let g_alpha = u0sq_cos.sub(&cosx).derivative();
    let dd_u0 = u0.second_derivative();

    // D_j = d/dx(u³_j / 3 − u_j).
    let damping = |u3j: &TrigPolynomial<T>, uj: &TrigPolynomial<T>| u3j.scale(&r(1, 3)).sub(uj).derivative();

    for k in 1..=order {
        // Residual with ν̃_k = 0, u_k = 0 and the pending amplitude of
        // u_{k−1} at zero.
        let s_known = (1..k).fold(r(0, 1), |acc, a| acc.add(&nu_t[a].mul(&nu_t[k - a])));
        let mut res = dd_u0.scale(&s_known);
        for i in 1..k {
            res = res.add(&u[k - i].second_derivative().scale(&s[i]));
        }
        for i in 0..k {
            let j = k - 1 - i;
            res = res.add(&damping(&u3[j], &u[j]).scale(&nu_t[i]));
        }

        // First-harmonic elimination: unknowns (ν̃_k, α) with columns
        // 2ü_0 and (−s_1 cos x + g_alpha).
        let (bc, bs) = (res.cos_coeff(1), res.sin_coeff(1));
        let col_nu = dd_u0.scale(&r(2, 1));
        let (nc, ns) = (col_nu.cos_coeff(1), col_nu.sin_coeff(1));
        let (nu_k, alpha) = if k == 1 {
            (bc.neg().div(&nc), r(0, 1))
        } else {
            let col_a = g_alpha.sub(&cosx.scale(&s[1]));
            let (ac, as_) = (col_a.cos_coeff(1), col_a.sin_coeff(1));
            // [nc ac; ns as] (ν, α) = −(bc, bs)
            let det = nc.mul(&as_).sub(&ac.mul(&ns));
            let nu_k = ac.mul(&bs).sub(&as_.mul(&bc)).div(&det);
            let alpha = ns.mul(&bc).sub(&nc.mul(&bs)).div(&det);
            res = res.add(&col_a.scale(&alpha));
            (nu_k, alpha)
        };
        res = res.add(&col_nu.scale(&nu_k));

        if k >= 2 {
            let kk = k - 1;
            u[kk] = u[kk].add(&cosx.scale(&alpha));
            u2[kk] = u2[kk].add(&u0_cos.scale(&alpha.mul_i64(2)));
            u3[kk] = u3[kk].add(&u0sq_cos.scale(&alpha.mul_i64(3)));
        }
        nu_t.push(nu_k);
        let sk = (0..=k).fold(r(0, 1), |acc, a| acc.add(&nu_t[a].mul(&nu_t[k - a])));
        s.push(sk);

        // ü_k + u_k = −res on harmonics h ≠ 1; the first harmonic of res is
        // zero by construction (up to rounding in floating mode).
        let n = res.cos.len();
        let mut cos = alloc::vec![r(0, 1); n];
        let mut sin = alloc::vec![r(0, 1); n];
        for h in (0..n).filter(|&h| h != 1) {
            let d = r((h * h) as i64 - 1, 1);
            cos[h] = res.cos[h].div(&d);
            sin[h] = res.sin[h].div(&d);
        }
        let mut uk = TrigPolynomial::new(cos, sin, ctx);
        // Phase: u̇_k(0) = 0 through the sin x amplitude.
        let slope = uk.slope_at_zero();
        uk = uk.sub(&TrigPolynomial::monomial(1, slope, true));
        u.push(uk);

        let sq = (0..=k).fold(TrigPolynomial::zero(ctx), |acc, i| {
            if i > k - i {
                acc
            } else if i == k - i {
                acc.add(&u[i].mul(&u[i]))
            } else {
                acc.add(&u[i].mul(&u[k - i]).scale(&r(2, 1)))
            }
        });
        u2.push(sq);
        let cube = (0..=k).fold(TrigPolynomial::zero(ctx), |acc, i| acc.add(&u2[i].mul(&u[k - i])));
        u3.push(cube);
    }

    let nu = nu_t.iter().step_by(2).cloned().collect();
    let amplitude = u.iter().map(|p| p.value_at_zero()).collect();
    VdpExpansion { order, u, nu_tilde: nu_t, nu, amplitude }
}

/// `ν` as a series in `ε²`: `1 + ν_1 ε² + … + ν_K ε^{2K}`, from exact
/// rationals rounded to `digits`.
pub fn vdp_nu_series(k: usize, digits: u32) -> Result<PowerSeries<MpComplex>> {
    check_digits(digits)?;
    let e = vdp_expand(2 * k);
    let prec = Precision::Digits(digits);
    let zero = BigRational::zero();
    let coeffs = e.nu.iter().take(k + 1).map(|v| MpComplex::from_rationals(v, &zero, prec)).collect();
    PowerSeries::new(coeffs, prec)
}

/// As [`vdp_nu_series`] but computed in floating point with 64 guard bits.
/// Affordable well beyond the exact generator's range.
pub fn vdp_nu_series_float(k: usize, digits: u32) -> Result<PowerSeries<MpComplex>> {
    check_digits(digits)?;
    let bits = bits_for_digits(digits) + 64;
    let e = vdp_expand_float(2 * k, bits);
    let coeffs = e.nu.iter().take(k + 1).map(|v| v.to_complex(digits)).collect();
    PowerSeries::new(coeffs, Precision::Digits(digits))
}

/// The exact `ν_j` rounded into the floating field, for comparisons.
pub fn round_rational(v: &BigRational, bits: usize) -> MpReal {
    MpReal { value: big_from_rational(v, bits), bits }
}

fn check_digits(digits: u32) -> Result<()> {
    if digits < crate::numerics::MIN_DIGITS {
        return Err(Error::InvalidPrecision(digits));
    }
    Ok(())
}

/// `p/q` rendering of an exact coefficient.
pub fn rational_string(v: &BigRational) -> alloc::string::String {
    if v.denom().is_one() {
        alloc::format!("{}", v.numer())
    } else {
        alloc::format!("{}/{}", v.numer(), v.denom())
    }
}
