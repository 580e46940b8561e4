use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Precision, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{self, Nullspace};

/// Exact complex rational `re + i·im`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn int(v: i64) -> Self {
        Self::real(BigRational::from_integer(v.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(num.into(), den.into()))
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re.is_one()
    }

    fn powi(&self, k: u64) -> Self {
        let mut base = self.clone();
        let mut e = k;
        let mut acc = Self::int(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// `log2 |r|` accurate to double precision.
pub(crate) fn rational_log2_abs(r: &BigRational) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (n, nshift) = top_bits(r.numer());
    let (d, dshift) = top_bits(r.denom());
    libm::log2(n / d) + (nshift - dshift) as f64
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let (n, nshift) = top_bits(r.numer());
    let (d, dshift) = top_bits(r.denom());
    let v = libm::ldexp(n / d, (nshift - dshift).clamp(i32::MIN as i64, i32::MAX as i64) as i32);
    if r.is_negative() {
        -v
    } else {
        v
    }
}

/// `|v| ≈ m · 2^shift` with `m` holding the leading 60 bits.
fn top_bits(v: &BigInt) -> (f64, i64) {
    let bits = v.bits() as i64;
    let shift = (bits - 60).max(0);
    let m = (v.abs() >> shift as usize).to_f64().unwrap_or(0.0);
    (m, shift)
}

fn exact_root(v: &BigInt, k: u32) -> Option<BigInt> {
    if v.sign() == Sign::Minus {
        return None;
    }
    let r = v.nth_root(k);
    (num_traits::pow::pow(r.clone(), k as usize) == *v).then_some(r)
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "({} + {}i)", self.re, self.im)
        }
    }
}

impl Scalar for GaussRational {
    fn precision(&self) -> Precision {
        Precision::Exact
    }

    fn zero(_: Precision) -> Self {
        Self::int(0)
    }

    fn one(_: Precision) -> Self {
        Self::int(1)
    }

    fn from_i64(v: i64, _: Precision) -> Self {
        Self::int(v)
    }

    fn from_rationals(re: &BigRational, im: &BigRational, _: Precision) -> Self {
        Self::new(re.clone(), im.clone())
    }

    fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn sub(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }

    fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Self::real(&self.re * &o.re);
        }
        Self::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }

    fn neg(&self) -> Self {
        Self::new(-&self.re, -&self.im)
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Self::real(self.re.recip()));
        }
        let d = &self.re * &self.re + &self.im * &self.im;
        Some(Self::new(&self.re / &d, -&self.im / &d))
    }

    fn mul_i64(&self, k: i64) -> Self {
        let k = BigRational::from_integer(k.into());
        Self::new(&self.re * &k, &self.im * &k)
    }

    fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn log2_abs(&self) -> f64 {
        let a = rational_log2_abs(&self.re);
        let b = rational_log2_abs(&self.im);
        let m = a.max(b);
        if m == f64::NEG_INFINITY {
            return m;
        }
        m + 0.5 * libm::log2(libm::exp2(2.0 * (a - m)) + libm::exp2(2.0 * (b - m)))
    }

    fn to_c64(&self) -> Complex<f64> {
        Complex::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    /// Exact only when the result is again a Gaussian rational that can be
    /// found without branch tracking: integer exponents, a constant term of
    /// one, or a positive real with perfect-power numerator and denominator.
    fn pow_ratio(&self, num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParams("zero denominator in exponent".into()));
        }
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = num_integer::gcd(num, den);
        let (num, den) = (num / g, den / g);
        if self.is_zero() {
            return if num > 0 { Ok(self.clone()) } else { Err(Error::NonUnitLeadingTerm) };
        }
        let base = if den == 1 {
            self.clone()
        } else if self.is_one() {
            return Ok(self.clone());
        } else if self.im.is_zero() && self.re.is_positive() {
            let n = exact_root(self.re.numer(), den as u32).ok_or(Error::IrrationalPower)?;
            let d = exact_root(self.re.denom(), den as u32).ok_or(Error::IrrationalPower)?;
            Self::real(BigRational::new(n, d))
        } else {
            return Err(Error::IrrationalPower);
        };
        let p = base.powi(num.unsigned_abs());
        if num < 0 {
            p.inv().ok_or(Error::NonUnitLeadingTerm)
        } else {
            Ok(p)
        }
    }

    fn nullspace(rows: &[Vec<Self>], ncols: usize) -> Nullspace<Self> {
        linalg::bareiss_nullspace(rows, ncols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let a = GaussRational::new(BigRational::new(1.into(), 2.into()), BigRational::from_integer(1.into()));
        let b = a.inv().unwrap();
        assert!(a.mul(&b).is_one());
        assert_eq!(a.conj().mul(&a).im, BigRational::zero());
    }

    #[test]
    fn exact_powers() {
        let v = GaussRational::ratio(8, 27);
        assert_eq!(v.pow_ratio(2, 3).unwrap(), GaussRational::ratio(4, 9));
        assert_eq!(v.pow_ratio(-1, 3).unwrap(), GaussRational::ratio(3, 2));
        assert_eq!(GaussRational::int(1).pow_ratio(1, 6).unwrap(), GaussRational::int(1));
        assert_eq!(GaussRational::int(2).pow_ratio(1, 2), Err(Error::IrrationalPower));
        assert_eq!(GaussRational::int(-4).pow_ratio(1, 2), Err(Error::IrrationalPower));
    }

    #[test]
    fn magnitudes() {
        let v = GaussRational::new(BigRational::from_integer(3.into()), BigRational::from_integer(4.into()));
        assert!((v.log2_abs() - libm::log2(5.0)).abs() < 1e-14);
        assert_eq!(GaussRational::ratio(-1, 3).to_c64().re, -1.0 / 3.0);
    }
}
