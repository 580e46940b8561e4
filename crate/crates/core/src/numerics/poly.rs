use alloc::vec::Vec;

use super::{same_precision, Precision, Scalar};
use crate::error::{Error, Result};

/// Dense polynomial `c_0 + c_1 z + … + c_d z^d`.
///
/// Trailing exact zeros are trimmed on construction, so the last stored
/// coefficient is the (nonzero) leading one. The zero polynomial stores no
/// coefficients at all.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
    prec: Precision,
}

impl<S: Scalar> Polynomial<S> {
    pub fn zero(prec: Precision) -> Self {
        Self { coeffs: Vec::new(), prec }
    }

    pub fn constant(c: S) -> Self {
        let prec = c.precision();
        Self::from_trusted(alloc::vec![c], prec)
    }

    /// Build from coefficients in increasing degree; all entries must share
    /// `prec`.
    pub fn new(coeffs: Vec<S>, prec: Precision) -> Result<Self> {
        for c in &coeffs {
            same_precision(prec, c.precision())?;
        }
        Ok(Self::from_trusted(coeffs, prec))
    }

    pub(crate) fn from_trusted(mut coeffs: Vec<S>, prec: Precision) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs, prec }
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(|| S::zero(self.prec))
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &S) -> Result<S> {
        same_precision(self.prec, z.precision())?;
        Ok(self.eval_unchecked(z))
    }

    pub(crate) fn eval_unchecked(&self, z: &S) -> S {
        let mut acc = S::zero(self.prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(c);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_precision(self.prec, other.prec)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect();
        Ok(Self::from_trusted(c, self.prec))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_precision(self.prec, other.prec)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|k| self.coeff(k).sub(&other.coeff(k))).collect();
        Ok(Self::from_trusted(c, self.prec))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        same_precision(self.prec, other.prec)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.prec);
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut out = alloc::vec![S::zero(self.prec); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_trusted(out, self.prec)
    }

    pub fn scale(&self, s: &S) -> Result<Self> {
        same_precision(self.prec, s.precision())?;
        Ok(Self::from_trusted(self.coeffs.iter().map(|c| c.mul(s)).collect(), self.prec))
    }

    pub fn neg(&self) -> Self {
        Self::from_trusted(self.coeffs.iter().map(|c| c.neg()).collect(), self.prec)
    }

    pub fn derivative(&self) -> Self {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.mul_i64(k as i64)).collect();
        Self::from_trusted(c, self.prec)
    }

    /// Divide by the leading coefficient. `None` for the zero polynomial.
    pub fn monic(&self) -> Option<Self> {
        let lead = self.leading()?.inv()?;
        Some(Self::from_trusted(self.coeffs.iter().map(|c| c.mul(&lead)).collect(), self.prec))
    }

    /// `z^n p(1/z)`, the reflected polynomial used for the `ζ = 1/z` plane.
    /// Requires `n ≥ deg p`.
    pub fn reversed(&self, n: usize) -> Result<Self> {
        if self.degree().is_some_and(|d| d > n) {
            return Err(Error::DimensionMismatch(alloc::format!(
                "reflection degree {n} below polynomial degree {:?}",
                self.degree()
            )));
        }
        let mut c = alloc::vec![S::zero(self.prec); n + 1];
        for (k, v) in self.coeffs.iter().enumerate() {
            c[n - k] = v.clone();
        }
        Ok(Self::from_trusted(c, self.prec))
    }

    /// Number of exact zero roots (trailing zero coefficients at the low end).
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Largest `log2 |c_k|` over the coefficients.
    pub fn max_log2_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.log2_abs()).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Drop leading coefficients whose size is below `2^rel_log2` times the
    /// largest coefficient. Used to strip rounding noise above the true degree
    /// of a floating-point solution.
    pub fn trim_relative(&self, rel_log2: f64) -> Self {
        let cut = self.max_log2_coeff() + rel_log2;
        let mut c = self.coeffs.clone();
        while c.last().is_some_and(|v| v.log2_abs() < cut) {
            c.pop();
        }
        Self::from_trusted(c, self.prec)
    }
}

/// Maximum over `k` of `|a_k - b_k| / max_j |b_j|`, as `log2`.
pub fn relative_deviation_log2<S: Scalar>(a: &Polynomial<S>, b: &Polynomial<S>) -> f64 {
    let n = a.coeffs().len().max(b.coeffs().len());
    let scale = b.max_log2_coeff();
    (0..n).map(|k| a.coeff(k).sub(&b.coeff(k)).log2_abs()).fold(f64::NEG_INFINITY, f64::max) - scale
}
