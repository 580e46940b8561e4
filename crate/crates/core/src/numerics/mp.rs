use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign, WORD_BIT_SIZE};
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Precision, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{self, Nullspace};

/// Default working precision in decimal digits.
pub const DEFAULT_DIGITS: u32 = 120;
/// Smallest accepted working precision.
pub const MIN_DIGITS: u32 = 16;

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

/// Mantissa width in bits for `digits` decimal digits, rounded up to whole
/// 64-bit words.
pub fn bits_for_digits(digits: u32) -> usize {
    // log2(10) ≈ 3.3219281
    let bits = (digits as usize * 33_219_281).div_ceil(10_000_000);
    bits.div_ceil(64) * 64
}

fn consts() -> Consts {
    Consts::new().expect("constant cache allocation")
}

/// Nearest `f64` of a finite `BigFloat`; overflow saturates to ±inf and
/// underflow flushes to zero.
pub(crate) fn big_to_f64(x: &BigFloat) -> f64 {
    let (m, e) = match split(x) {
        Some(v) => v,
        None => return 0.0,
    };
    libm::ldexp(m, e)
}

/// `x = m · 2^e` with `0.5 ≤ |m| < 1`; `None` for zero.
fn split(x: &BigFloat) -> Option<(f64, i32)> {
    if x.is_zero() {
        return None;
    }
    let (words, _, sign, e, _) = x.as_raw_parts()?;
    let top = *words.last()?;
    let next = if words.len() > 1 { words[words.len() - 2] } else { 0 };
    // Mantissa words hold WORD_BIT_SIZE bits each, most significant last.
    let word = libm::ldexp(1.0, WORD_BIT_SIZE as i32);
    let m = (top as f64 + next as f64 / word) / word;
    let m = if matches!(sign, Sign::Neg) { -m } else { m };
    Some((m, e))
}

fn big_log2_abs(x: &BigFloat) -> f64 {
    match split(x) {
        None => f64::NEG_INFINITY,
        Some((m, e)) => libm::log2(libm::fabs(m)) + e as f64,
    }
}

fn big_from_bigint(v: &BigInt, bits: usize) -> BigFloat {
    if let Ok(small) = i64::try_from(v) {
        return BigFloat::from_i64(small, bits);
    }
    let mut cc = consts();
    BigFloat::parse(&v.to_string(), Radix::Dec, bits, RM, &mut cc)
}

pub(crate) fn big_from_rational(r: &BigRational, bits: usize) -> BigFloat {
    if r.is_integer() {
        return big_from_bigint(r.numer(), bits);
    }
    let n = big_from_bigint(r.numer(), bits + 64);
    let d = big_from_bigint(r.denom(), bits + 64);
    n.div(&d, bits, RM)
}

fn big_is_neg(x: &BigFloat) -> bool {
    !x.is_zero() && x.is_negative()
}

fn big_atan2(y: &BigFloat, x: &BigFloat, bits: usize, cc: &mut Consts) -> BigFloat {
    let pi = cc.pi(bits, RM);
    if x.is_zero() {
        if y.is_zero() {
            return BigFloat::from_i32(0, bits);
        }
        let half = pi.div(&BigFloat::from_i32(2, bits), bits, RM);
        return if big_is_neg(y) { half.neg() } else { half };
    }
    let base = y.div(x, bits + 64, RM).atan(bits, RM, cc);
    if !big_is_neg(x) {
        base
    } else if big_is_neg(y) {
        base.sub(&pi, bits, RM)
    } else {
        base.add(&pi, bits, RM)
    }
}

/// Complex number with real and imaginary parts carried to a fixed number of
/// decimal digits.
#[derive(Clone)]
pub struct MpComplex {
    re: BigFloat,
    im: BigFloat,
    digits: u32,
}

impl MpComplex {
    fn bits(&self) -> usize {
        bits_for_digits(self.digits)
    }

    fn from_parts(re: BigFloat, im: BigFloat, digits: u32) -> Self {
        Self { re, im, digits }
    }

    /// Real value from a mantissa already rounded for `digits`.
    pub(crate) fn from_real_big(re: BigFloat, digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        Self::from_parts(re.add(&BigFloat::from_i32(0, bits), bits, RM), BigFloat::from_i32(0, bits), digits)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn from_f64(re: f64, im: f64, digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        Self::from_parts(BigFloat::from_f64(re, bits), BigFloat::from_f64(im, bits), digits)
    }

    pub fn from_c64(z: Complex<f64>, digits: u32) -> Self {
        Self::from_f64(z.re, z.im, digits)
    }

    pub fn real(v: i64, digits: u32) -> Self {
        Self::from_i64(v, Precision::Digits(digits))
    }

    pub fn i(digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        Self::from_parts(BigFloat::from_i32(0, bits), BigFloat::from_i32(1, bits), digits)
    }

    /// Parse decimal strings such as `"-1.25e-3"` for both parts.
    pub fn parse(re: &str, im: &str, digits: u32) -> Result<Self> {
        let bits = bits_for_digits(digits);
        let mut cc = consts();
        let mut parse_one = |s: &str| {
            let t = s.trim();
            let v = BigFloat::parse(t, Radix::Dec, bits, RM, &mut cc);
            if v.is_nan() || v.is_inf() || t.is_empty() {
                Err(Error::InvalidParams(alloc::format!("not a decimal number: {s:?}")))
            } else {
                Ok(v)
            }
        };
        let r = parse_one(re)?;
        let i = parse_one(im)?;
        Ok(Self::from_parts(r, i, digits))
    }

    /// Decimal strings of the real and imaginary parts. Parsing them back at
    /// the same precision reproduces the value bit for bit.
    pub fn to_decimal_strings(&self) -> (String, String) {
        (format_big(&self.re, self.bits()), format_big(&self.im, self.bits()))
    }

    pub fn re_f64(&self) -> f64 {
        big_to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        big_to_f64(&self.im)
    }

    /// Re-round to a different precision. This is the only way to change the
    /// precision of a value.
    pub fn with_digits(&self, digits: u32) -> Self {
        let bits = bits_for_digits(digits);
        let mut re = self.re.clone();
        let mut im = self.im.clone();
        re.set_precision(bits, RM).expect("precision change");
        im.set_precision(bits, RM).expect("precision change");
        Self::from_parts(re, im, digits)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `|self|²`, returned as a real `MpComplex`.
    pub fn norm_sqr(&self) -> Self {
        let bits = self.bits();
        let n = self.re.mul(&self.re, bits, RM).add(&self.im.mul(&self.im, bits, RM), bits, RM);
        Self::from_parts(n, BigFloat::from_i32(0, bits), self.digits)
    }

    /// `|self|` as a real `MpComplex`.
    pub fn abs(&self) -> Self {
        let bits = self.bits();
        let n = self.norm_sqr();
        Self::from_parts(n.re.sqrt(bits, RM), BigFloat::from_i32(0, bits), self.digits)
    }

    /// Compare absolute values exactly.
    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        let a = self.norm_sqr();
        let b = other.norm_sqr();
        match a.re.cmp(&b.re) {
            Some(c) if c < 0 => Ordering::Less,
            Some(c) if c > 0 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }

    /// Compare real parts exactly (imaginary parts ignored).
    pub fn cmp_re(&self, other: &Self) -> Ordering {
        match self.re.cmp(&other.re) {
            Some(c) if c < 0 => Ordering::Less,
            Some(c) if c > 0 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }

    pub fn re(&self) -> Self {
        Self::from_parts(self.re.clone(), BigFloat::from_i32(0, self.bits()), self.digits)
    }

    pub fn im(&self) -> Self {
        Self::from_parts(self.im.clone(), BigFloat::from_i32(0, self.bits()), self.digits)
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let bits = self.bits();
        let zero = BigFloat::from_i32(0, bits);
        if self.is_zero() {
            return Self::from_parts(zero.clone(), zero, self.digits);
        }
        let two = BigFloat::from_i32(2, bits);
        let r = self.abs().re;
        // sqrt((|z| + x)/2) + i sign(y) sqrt((|z| - x)/2), evaluated without
        // cancellation on the side where x has the wrong sign.
        if !big_is_neg(&self.re) {
            let a = r.add(&self.re, bits, RM).div(&two, bits, RM).sqrt(bits, RM);
            let b = self.im.div(&a.mul(&two, bits, RM), bits, RM);
            Self::from_parts(a, b, self.digits)
        } else {
            let b = r.sub(&self.re, bits, RM).div(&two, bits, RM).sqrt(bits, RM);
            let b = if big_is_neg(&self.im) { b.neg() } else { b };
            let a = self.im.div(&b.mul(&two, bits, RM), bits, RM);
            Self::from_parts(a, b, self.digits)
        }
    }

    /// Principal logarithm, `None` at zero.
    pub fn ln(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let bits = self.bits();
        let mut cc = consts();
        let r = self.norm_sqr().re.ln(bits + 64, RM, &mut cc).div(&BigFloat::from_i32(2, bits), bits, RM);
        let t = big_atan2(&self.im, &self.re, bits, &mut cc);
        Some(Self::from_parts(r, t, self.digits))
    }

    pub fn exp(&self) -> Self {
        let bits = self.bits();
        let mut cc = consts();
        let m = self.re.exp(bits, RM, &mut cc);
        if self.im.is_zero() {
            return Self::from_parts(m, BigFloat::from_i32(0, bits), self.digits);
        }
        let c = self.im.cos(bits, RM, &mut cc);
        let s = self.im.sin(bits, RM, &mut cc);
        Self::from_parts(m.mul(&c, bits, RM), m.mul(&s, bits, RM), self.digits)
    }

    /// Natural logarithm of a positive real number, as `f64`.
    pub fn ln_abs_f64(&self) -> f64 {
        self.log2_abs() * core::f64::consts::LN_2
    }

    /// `self · 2^k`.
    pub fn ldexp(&self, k: i32) -> Self {
        let bits = self.bits();
        let scale = if k >= 0 {
            BigFloat::from_i32(2, bits).powi(k as usize, bits, RM)
        } else {
            BigFloat::from_i32(1, bits).div(&BigFloat::from_i32(2, bits).powi((-k) as usize, bits, RM), bits, RM)
        };
        Self::from_parts(self.re.mul(&scale, bits, RM), self.im.mul(&scale, bits, RM), self.digits)
    }

    /// Exact rational value of the real part (finite binary fraction).
    pub fn re_rational(&self) -> BigRational {
        big_to_rational(&self.re)
    }

    pub fn im_rational(&self) -> BigRational {
        big_to_rational(&self.im)
    }
}

fn big_to_rational(x: &BigFloat) -> BigRational {
    let Some((words, _, sign, e, _)) = x.as_raw_parts() else {
        return BigRational::zero();
    };
    if x.is_zero() {
        return BigRational::zero();
    }
    // `Word` is `u32` on 32-bit targets, where the widening cast is needed.
    #[allow(clippy::unnecessary_cast)]
    let digits: Vec<u32> =
        words.iter().flat_map(|&w| (0..WORD_BIT_SIZE / 32).map(move |i| (w as u64 >> (32 * i)) as u32)).collect();
    let mant = num_bigint::BigUint::from_slice(&digits);
    let mut v = BigRational::from_integer(BigInt::from(mant));
    // value = mantissa / 2^(WORD_BIT_SIZE·len) · 2^e
    let shift = e as i64 - (WORD_BIT_SIZE * words.len()) as i64;
    let two = BigRational::from_integer(BigInt::from(2));
    if shift >= 0 {
        v *= num_traits::pow::pow(two, shift as usize);
    } else {
        v /= num_traits::pow::pow(two, (-shift) as usize);
    }
    if matches!(sign, Sign::Neg) {
        -v
    } else {
        v
    }
}

/// Shortest-safe decimal form of a `bits`-bit value: `⌈bits·log10 2⌉ + 1`
/// correctly rounded significant digits, enough for the nearest `bits`-bit
/// value to be the original one. Trailing zeros are dropped.
fn format_big(x: &BigFloat, bits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let r = big_to_rational(x);
    let neg = r.is_negative();
    let a = r.abs();
    let n = libm::ceil(bits as f64 * core::f64::consts::LOG10_2) as i64 + 1;
    let ten = BigInt::from(10);
    let pow10 = |k: i64| BigRational::from_integer(num_traits::pow::pow(ten.clone(), k as usize));
    let (lo, hi) = (pow10(n - 1).to_integer(), pow10(n).to_integer());
    let mut e = libm::floor(big_log2_abs(x) * core::f64::consts::LOG10_2) as i64;
    let m = loop {
        let k = n - 1 - e;
        let scaled = if k >= 0 { &a * pow10(k) } else { &a / pow10(-k) };
        let m = scaled.round().to_integer();
        if m >= hi {
            e += 1;
        } else if m < lo {
            e -= 1;
        } else {
            break m;
        }
    };
    let digits = m.to_string();
    let digits = digits.trim_end_matches('0');
    let (head, tail) = digits.split_at(1);
    let sign = if neg { "-" } else { "" };
    if tail.is_empty() {
        alloc::format!("{sign}{head}e{e}")
    } else {
        alloc::format!("{sign}{head}.{tail}e{e}")
    }
}

impl fmt::Debug for MpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:e} {:+e}i @{})", self.re_f64(), self.im_f64(), self.digits)
    }
}

impl fmt::Display for MpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, i) = self.to_decimal_strings();
        write!(f, "{r} + {i}i")
    }
}

impl PartialEq for MpComplex {
    fn eq(&self, other: &Self) -> bool {
        self.digits == other.digits && self.re == other.re && self.im == other.im
    }
}

impl Scalar for MpComplex {
    fn precision(&self) -> Precision {
        Precision::Digits(self.digits)
    }

    fn zero(prec: Precision) -> Self {
        Self::from_i64(0, prec)
    }

    fn one(prec: Precision) -> Self {
        Self::from_i64(1, prec)
    }

    fn from_i64(v: i64, prec: Precision) -> Self {
        let digits = prec.digits_or(DEFAULT_DIGITS);
        let bits = bits_for_digits(digits);
        Self::from_parts(BigFloat::from_i64(v, bits), BigFloat::from_i32(0, bits), digits)
    }

    fn from_rationals(re: &BigRational, im: &BigRational, prec: Precision) -> Self {
        let digits = prec.digits_or(DEFAULT_DIGITS);
        let bits = bits_for_digits(digits);
        Self::from_parts(big_from_rational(re, bits), big_from_rational(im, bits), digits)
    }

    fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.digits, o.digits);
        let bits = self.bits();
        Self::from_parts(self.re.add(&o.re, bits, RM), self.im.add(&o.im, bits, RM), self.digits)
    }

    fn sub(&self, o: &Self) -> Self {
        debug_assert_eq!(self.digits, o.digits);
        let bits = self.bits();
        Self::from_parts(self.re.sub(&o.re, bits, RM), self.im.sub(&o.im, bits, RM), self.digits)
    }

    fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.digits, o.digits);
        let bits = self.bits();
        if self.im.is_zero() && o.im.is_zero() {
            return Self::from_parts(self.re.mul(&o.re, bits, RM), BigFloat::from_i32(0, bits), self.digits);
        }
        let wide = bits + 64;
        let rr = self.re.mul(&o.re, wide, RM);
        let ii = self.im.mul(&o.im, wide, RM);
        let ri = self.re.mul(&o.im, wide, RM);
        let ir = self.im.mul(&o.re, wide, RM);
        Self::from_parts(rr.sub(&ii, bits, RM), ri.add(&ir, bits, RM), self.digits)
    }

    fn neg(&self) -> Self {
        Self::from_parts(self.re.neg(), self.im.neg(), self.digits)
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let bits = self.bits();
        if self.im.is_zero() {
            let r = BigFloat::from_i32(1, bits).div(&self.re, bits, RM);
            return Some(Self::from_parts(r, BigFloat::from_i32(0, bits), self.digits));
        }
        let wide = bits + 64;
        let d = self.re.mul(&self.re, wide, RM).add(&self.im.mul(&self.im, wide, RM), wide, RM);
        Some(Self::from_parts(self.re.div(&d, bits, RM), self.im.neg().div(&d, bits, RM), self.digits))
    }

    fn div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        let bits = self.bits();
        if o.im.is_zero() {
            return Some(Self::from_parts(self.re.div(&o.re, bits, RM), self.im.div(&o.re, bits, RM), self.digits));
        }
        let wide = bits + 64;
        let d = o.re.mul(&o.re, wide, RM).add(&o.im.mul(&o.im, wide, RM), wide, RM);
        let re = self.re.mul(&o.re, wide, RM).add(&self.im.mul(&o.im, wide, RM), wide, RM);
        let im = self.im.mul(&o.re, wide, RM).sub(&self.re.mul(&o.im, wide, RM), wide, RM);
        Some(Self::from_parts(re.div(&d, bits, RM), im.div(&d, bits, RM), self.digits))
    }

    fn mul_i64(&self, k: i64) -> Self {
        let bits = self.bits();
        let f = BigFloat::from_i64(k, bits);
        Self::from_parts(self.re.mul(&f, bits, RM), self.im.mul(&f, bits, RM), self.digits)
    }

    fn conj(&self) -> Self {
        Self::from_parts(self.re.clone(), self.im.neg(), self.digits)
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn log2_abs(&self) -> f64 {
        let a = split(&self.re);
        let b = split(&self.im);
        match (a, b) {
            (None, None) => f64::NEG_INFINITY,
            (Some(_), None) => big_log2_abs(&self.re),
            (None, Some(_)) => big_log2_abs(&self.im),
            (Some((ma, ea)), Some((mb, eb))) => {
                let e = ea.max(eb);
                let x = libm::ldexp(ma, ea - e);
                let y = libm::ldexp(mb, eb - e);
                libm::log2(libm::hypot(x, y)) + e as f64
            }
        }
    }

    fn to_c64(&self) -> Complex<f64> {
        Complex::new(self.re_f64(), self.im_f64())
    }

    fn pow_ratio(&self, num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParams("zero denominator in exponent".into()));
        }
        if self.is_zero() {
            return if num * den > 0 { Ok(Self::zero(self.precision())) } else { Err(Error::NonUnitLeadingTerm) };
        }
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        if den == 1 {
            return Ok(powi(self, num));
        }
        // exp(p · Log z) carried out with extra guard digits
        let guard = self.with_digits(self.digits + 20);
        let l = guard.ln().expect("nonzero");
        let p = Self::from_ratio(num, den, Precision::Digits(self.digits + 20));
        Ok(l.mul(&p).exp().with_digits(self.digits))
    }

    fn nullspace(rows: &[Vec<Self>], ncols: usize) -> Nullspace<Self> {
        linalg::pivoted_nullspace(rows, ncols)
    }
}

fn powi(z: &MpComplex, k: i64) -> MpComplex {
    let mut base = if k < 0 { z.inv().expect("nonzero") } else { z.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = MpComplex::one(z.precision());
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        base = base.mul(&base);
        e >>= 1;
    }
    acc
}

impl<'a> core::ops::Add<&'a MpComplex> for &'a MpComplex {
    type Output = MpComplex;
    fn add(self, rhs: &'a MpComplex) -> MpComplex {
        Scalar::add(self, rhs)
    }
}

impl<'a> core::ops::Sub<&'a MpComplex> for &'a MpComplex {
    type Output = MpComplex;
    fn sub(self, rhs: &'a MpComplex) -> MpComplex {
        Scalar::sub(self, rhs)
    }
}

impl<'a> core::ops::Mul<&'a MpComplex> for &'a MpComplex {
    type Output = MpComplex;
    fn mul(self, rhs: &'a MpComplex) -> MpComplex {
        Scalar::mul(self, rhs)
    }
}

impl core::ops::Neg for &MpComplex {
    type Output = MpComplex;
    fn neg(self) -> MpComplex {
        Scalar::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const D: u32 = 60;

    fn c(re: f64, im: f64) -> MpComplex {
        MpComplex::from_f64(re, im, D)
    }

    #[test]
    fn bit_widths() {
        assert_eq!(bits_for_digits(16), 64);
        assert_eq!(bits_for_digits(120), 448);
        assert_eq!(bits_for_digits(19), 64);
        assert_eq!(bits_for_digits(20), 128);
    }

    #[test]
    fn decimal_round_trip_is_exact() {
        let z = MpComplex::from_ratio(2, 3, Precision::Digits(120)).add(&MpComplex::i(120).mul_i64(-7));
        let (r, i) = z.to_decimal_strings();
        let back = MpComplex::parse(&r, &i, 120).unwrap();
        assert_eq!(z, back);
        assert_eq!(MpComplex::parse("5", "0", 30).unwrap(), MpComplex::real(5, 30));
        assert!(MpComplex::parse("abc", "0", 30).is_err());
    }

    #[test]
    fn division_and_inverse() {
        let a = c(3.0, 4.0);
        let b = c(1.0, -2.0);
        let q = a.div(&b).unwrap();
        // (3+4i)/(1-2i) = (-5 + 10i)/5 = -1 + 2i
        assert!((q.to_c64() - Complex::new(-1.0, 2.0)).norm() < 1e-15);
        assert!(q.mul(&b).sub(&a).log2_abs() < -180.0);
        assert!(c(0.0, 0.0).inv().is_none());
    }

    #[test]
    fn sqrt_is_principal() {
        for &(x, y) in &[(4.0, 0.0), (-4.0, 0.0), (0.0, 2.0), (-3.0, -4.0), (-1.0, 1e-30)] {
            let z = c(x, y);
            let s = z.sqrt();
            assert!(s.re_f64() >= 0.0, "{x} {y}");
            assert!(s.mul(&s).sub(&z).log2_abs() < -170.0);
        }
        assert!((c(-4.0, 0.0).sqrt().to_c64() - Complex::new(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn log_exp_inverse() {
        let z = c(-0.3, 1.7);
        let back = z.ln().unwrap().exp();
        assert!(back.sub(&z).log2_abs() < -180.0);
        let l = c(-1.0, 0.0).ln().unwrap();
        assert!((l.im_f64() - core::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn principal_powers() {
        let z = c(8.0, 0.0);
        let r = z.pow_ratio(1, 3).unwrap();
        assert!(r.sub(&c(2.0, 0.0)).log2_abs() < -180.0);
        let w = c(-1.0, 0.0).pow_ratio(1, 2).unwrap();
        assert!(w.sub(&MpComplex::i(D)).log2_abs() < -180.0);
        let q = c(2.0, 1.0).pow_ratio(-3, 1).unwrap();
        assert!((q.to_c64() - Complex::new(2.0, 1.0).powi(-3)).norm() < 1e-15);
    }

    #[test]
    fn log2_abs_and_to_f64() {
        assert!((c(3.0, 4.0).log2_abs() - libm::log2(5.0)).abs() < 1e-14);
        assert_eq!(c(0.0, 0.0).log2_abs(), f64::NEG_INFINITY);
        assert_eq!(c(-2.5, 0.125).to_c64(), Complex::new(-2.5, 0.125));
    }

    #[test]
    fn rational_round_trip() {
        let z = c(-0.375, 1.25);
        assert_eq!(z.re_rational(), BigRational::new((-3).into(), 8.into()));
        assert_eq!(z.im_rational(), BigRational::new(5.into(), 4.into()));
    }
}
