//! Scalars, polynomials and truncated power series.
//!
//! Two scalar kinds implement [`Scalar`]:
//!
//! * [`MpComplex`]: a complex number whose real and imaginary parts are
//!   binary floating-point values carrying at least `digits` decimal digits,
//!   rounded to nearest.
//! * [`GaussRational`]: an exact complex rational. No rounding ever happens.
//!
//! Every container records the precision of its entries. Mixing containers of
//! different precision is reported as [`Error::PrecisionMismatch`] instead of
//! silently rounding one side down.

mod exact;
mod mp;
mod poly;
mod series;

use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;

pub use exact::GaussRational;
pub(crate) use mp::{big_from_rational, big_to_f64, RM};
pub use mp::{bits_for_digits, MpComplex, DEFAULT_DIGITS, MIN_DIGITS};
pub use poly::{relative_deviation_log2, Polynomial};
pub use series::PowerSeries;

use crate::error::{Error, Result};
use crate::linalg::Nullspace;

/// Working precision of a scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Precision {
    /// Exact rational arithmetic.
    Exact,
    /// Floating arithmetic carrying this many decimal digits.
    Digits(u32),
}

impl Precision {
    /// Digits used when an exact value has to be rounded for reporting.
    pub fn digits_or(self, fallback: u32) -> u32 {
        match self {
            Precision::Exact => fallback,
            Precision::Digits(d) => d,
        }
    }

    /// Relative tolerance `10^-(digits - margin)`, as a base-2 logarithm.
    /// Exact precision has no rounding, so the bound is `-inf`.
    pub fn tolerance_log2(self, margin: u32) -> f64 {
        match self {
            Precision::Exact => f64::NEG_INFINITY,
            Precision::Digits(d) => -(d.saturating_sub(margin) as f64) * core::f64::consts::LOG2_10,
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precision::Exact => f.write_str("exact"),
            Precision::Digits(d) => write!(f, "{d} digits"),
        }
    }
}

pub(crate) fn same_precision(left: Precision, right: Precision) -> Result<Precision> {
    if left == right {
        Ok(left)
    } else {
        Err(Error::PrecisionMismatch { left, right })
    }
}

/// Field operations needed by the polynomial, series and elimination code.
///
/// Arithmetic between two values of different precision is a logic error at
/// this level; the containers check precision before they combine entries.
pub trait Scalar: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    fn precision(&self) -> Precision;

    fn zero(prec: Precision) -> Self;
    fn one(prec: Precision) -> Self;
    fn from_i64(v: i64, prec: Precision) -> Self;
    /// Complex value `re + i·im` from exact rationals, rounded if floating.
    fn from_rationals(re: &BigRational, im: &BigRational, prec: Precision) -> Self;

    fn from_ratio(num: i64, den: i64, prec: Precision) -> Self {
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        Self::from_rationals(&r, &BigRational::from_integer(BigInt::from(0)), prec)
    }

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn mul_i64(&self, k: i64) -> Self;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|r| self.mul(&r))
    }

    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;

    /// `log2 |self|`, `-inf` for zero. Accurate to about double precision.
    fn log2_abs(&self) -> f64;
    /// Nearest double-precision complex value.
    fn to_c64(&self) -> Complex<f64>;

    /// Principal value of `self^(num/den)`.
    fn pow_ratio(&self, num: i64, den: i64) -> Result<Self>;

    /// Basis vector of the right nullspace of a dense matrix (row-major),
    /// chosen by the elimination strategy suited to this scalar kind.
    fn nullspace(rows: &[alloc::vec::Vec<Self>], ncols: usize) -> Nullspace<Self>;

    fn abs_f64(&self) -> f64 {
        libm::exp2(self.log2_abs())
    }
}
