//! Right nullspace of the dense homogeneous systems behind every approximant.
//!
//! Floating matrices go through Gaussian elimination with complete pivoting
//! after row and column equilibration. Exact matrices go through
//! fraction-free (Bareiss) elimination over the Gaussian integers, so no
//! intermediate rational is ever reduced.
//!
//! When the nullspace has dimension greater than one the returned vector is
//! the one of minimal support: its last nonzero entry sits at the smallest
//! column index that admits a nonzero solution. For the approximant systems,
//! whose unknowns are ordered by polynomial and then by degree, this is the
//! lowest-degree solution, which is unique up to scaling.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::numerics::{GaussRational, MpComplex, Precision, Scalar};

/// A nullspace basis vector together with the nullspace dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct Nullspace<S> {
    /// `None` when the matrix has full column rank.
    pub vector: Option<Vec<S>>,
    pub dim: usize,
}

/// Relative rank tolerance for a floating solve, as `log2`.
pub fn rank_tolerance_log2(digits: u32) -> f64 {
    Precision::Digits(digits.div_ceil(2)).tolerance_log2(0)
}

struct Echelon {
    a: Vec<Vec<MpComplex>>,
    /// `perm[k]` is the original column sitting at position `k`.
    perm: Vec<usize>,
    rank: usize,
}

fn eliminate(rows: &[Vec<MpComplex>], ncols: usize, tol_log2: f64) -> Echelon {
    let mut a: Vec<Vec<MpComplex>> = rows.iter().map(|r| r[..ncols].to_vec()).collect();
    let m = a.len();
    let mut perm: Vec<usize> = (0..ncols).collect();
    let mut logs: Vec<Vec<f64>> = a.iter().map(|r| r.iter().map(|v| v.log2_abs()).collect()).collect();
    let scale = logs.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max);
    if scale == f64::NEG_INFINITY {
        return Echelon { a, perm, rank: 0 };
    }
    let cut = scale + tol_log2;
    let mut rank = 0;
    for k in 0..m.min(ncols) {
        let mut best = (f64::NEG_INFINITY, k, k);
        for (i, row) in logs.iter().enumerate().skip(k) {
            for (j, &v) in row.iter().enumerate().skip(k) {
                if v > best.0 {
                    best = (v, i, j);
                }
            }
        }
        if best.0 < cut {
            break;
        }
        let (_, pi, pj) = best;
        a.swap(k, pi);
        logs.swap(k, pi);
        if pj != k {
            perm.swap(k, pj);
            for (row, lrow) in a.iter_mut().zip(logs.iter_mut()) {
                row.swap(k, pj);
                lrow.swap(k, pj);
            }
        }
        let inv = a[k][k].inv().expect("pivot above tolerance");
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for (row, lrow) in rest.iter_mut().zip(logs[k + 1..].iter_mut()) {
            if row[k].is_zero() {
                continue;
            }
            let factor = row[k].mul(&inv);
            row[k] = MpComplex::zero(row[k].precision());
            lrow[k] = f64::NEG_INFINITY;
            for j in k + 1..ncols {
                if !pivot_row[j].is_zero() {
                    row[j] = row[j].sub(&factor.mul(&pivot_row[j]));
                    lrow[j] = row[j].log2_abs();
                }
            }
        }
        rank += 1;
    }
    Echelon { a, perm, rank }
}

/// Solution with the first free position set to one and the other free
/// positions set to zero.
fn back_substitute(e: &Echelon, ncols: usize) -> Vec<MpComplex> {
    let prec = e.a.first().map_or(Precision::Digits(crate::numerics::DEFAULT_DIGITS), |r| r[0].precision());
    let r = e.rank;
    let mut y = alloc::vec![MpComplex::zero(prec); ncols];
    y[r] = MpComplex::one(prec);
    for i in (0..r).rev() {
        let mut acc = e.a[i][r].clone();
        for j in i + 1..r {
            if !e.a[i][j].is_zero() {
                acc = acc.add(&e.a[i][j].mul(&y[j]));
            }
        }
        y[i] = acc.neg().div(&e.a[i][i]).expect("nonzero pivot");
    }
    let mut x = alloc::vec![MpComplex::zero(prec); ncols];
    for (k, v) in y.into_iter().enumerate() {
        x[e.perm[k]] = v;
    }
    x
}

/// Equilibrate rows, then columns, by exact powers of two. Returns the
/// scaled matrix and the column exponents needed to undo the column scaling.
fn equilibrate(rows: &[Vec<MpComplex>], ncols: usize) -> (Vec<Vec<MpComplex>>, Vec<i32>) {
    let exponent = |l: f64| if l.is_finite() { -(libm::round(l) as i32) } else { 0 };
    let mut a: Vec<Vec<MpComplex>> = rows
        .iter()
        .map(|r| {
            let e = exponent(r.iter().map(|v| v.log2_abs()).fold(f64::NEG_INFINITY, f64::max));
            r.iter().map(|v| v.ldexp(e)).collect()
        })
        .collect();
    let mut cols = alloc::vec![0; ncols];
    for (j, c) in cols.iter_mut().enumerate() {
        let e = exponent(a.iter().map(|r| r[j].log2_abs()).fold(f64::NEG_INFINITY, f64::max));
        *c = e;
        if e != 0 {
            for r in a.iter_mut() {
                r[j] = r[j].ldexp(e);
            }
        }
    }
    (a, cols)
}

/// Nullspace of a homogeneous system at precision `prec`. A system without
/// equations returns the first unit vector.
pub fn solve_homogeneous<S: Scalar>(rows: &[Vec<S>], ncols: usize, prec: Precision) -> Nullspace<S> {
    if rows.is_empty() && ncols > 0 {
        let mut v = alloc::vec![S::zero(prec); ncols];
        v[0] = S::one(prec);
        return Nullspace { vector: Some(v), dim: ncols };
    }
    S::nullspace(rows, ncols)
}

/// Floating nullspace by complete pivoting with a rank tolerance of
/// `10^(-digits/2)` relative to the largest equilibrated entry.
pub fn pivoted_nullspace(rows: &[Vec<MpComplex>], ncols: usize) -> Nullspace<MpComplex> {
    let digits = rows.iter().flatten().next().map_or(crate::numerics::DEFAULT_DIGITS, |v| v.digits());
    pivoted_nullspace_with_tol(rows, ncols, rank_tolerance_log2(digits))
}

pub fn pivoted_nullspace_with_tol(rows: &[Vec<MpComplex>], ncols: usize, tol_log2: f64) -> Nullspace<MpComplex> {
    if ncols == 0 {
        return Nullspace { vector: None, dim: 0 };
    }
    let (a, cols) = equilibrate(rows, ncols);
    let full = eliminate(&a, ncols, tol_log2);
    let dim = ncols - full.rank;
    if dim == 0 {
        return Nullspace { vector: None, dim };
    }
    let (e, used) = if dim == 1 {
        (full, ncols)
    } else {
        // Smallest leading block of columns with a nontrivial nullspace.
        // Nullity only grows with the number of columns, and dropping one
        // column lowers it by at most one, so bisect between these bounds.
        let (mut lo, mut hi) = (0usize, ncols - dim + 1);
        let mut best = eliminate(&a, hi, tol_log2);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            let e = eliminate(&a, mid, tol_log2);
            if mid - e.rank >= 1 {
                hi = mid;
                best = e;
            } else {
                lo = mid;
            }
        }
        (best, hi)
    };
    let mut x = back_substitute(&e, used);
    x.resize(ncols, MpComplex::zero(x[0].precision()));
    for (v, &c) in x.iter_mut().zip(&cols) {
        if c != 0 {
            *v = v.ldexp(c);
        }
    }
    Nullspace { vector: Some(x), dim }
}

/// Gaussian integer `re + i·im`.
#[derive(Clone, Debug, PartialEq)]
struct GInt {
    re: BigInt,
    im: BigInt,
}

impl GInt {
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &Self) -> Self {
        GInt { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    fn sub(&self, o: &Self) -> Self {
        GInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    /// Division known to be exact.
    fn div_exact(&self, o: &Self) -> Self {
        if o.im.is_zero() {
            return GInt { re: &self.re / &o.re, im: &self.im / &o.re };
        }
        let n = &o.re * &o.re + &o.im * &o.im;
        let re = &self.re * &o.re + &self.im * &o.im;
        let im = &self.im * &o.re - &self.re * &o.im;
        GInt { re: re / &n, im: im / n }
    }

    fn to_gauss(&self) -> GaussRational {
        GaussRational::new(BigRational::from_integer(self.re.clone()), BigRational::from_integer(self.im.clone()))
    }
}

fn clear_denominators(row: &[GaussRational]) -> Vec<GInt> {
    let mut l = BigInt::one();
    for v in row {
        l = l.lcm(v.re.denom()).lcm(v.im.denom());
    }
    row.iter()
        .map(|v| GInt { re: v.re.numer() * (&l / v.re.denom()), im: v.im.numer() * (&l / v.im.denom()) })
        .collect()
}

/// Exact nullspace by fraction-free elimination. Columns are processed in
/// order, so the first non-pivot column directly gives the minimal-support
/// solution.
pub fn bareiss_nullspace(rows: &[Vec<GaussRational>], ncols: usize) -> Nullspace<GaussRational> {
    if ncols == 0 {
        return Nullspace { vector: None, dim: 0 };
    }
    let mut a: Vec<Vec<GInt>> = rows.iter().map(|r| clear_denominators(&r[..ncols])).collect();
    let m = a.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut prev = GInt { re: BigInt::one(), im: BigInt::zero() };
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let piv = &top[r];
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..ncols {
                row[j] = piv[c].mul(&row[j]).sub(&f.mul(&piv[j])).div_exact(&prev);
            }
            row[c] = GInt { re: BigInt::zero(), im: BigInt::zero() };
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    let dim = ncols - rank;
    if dim == 0 {
        return Nullspace { vector: None, dim };
    }
    let free = (0..ncols).find(|c| !pivots.contains(c)).expect("a free column exists");
    let mut x = alloc::vec![GaussRational::int(0); ncols];
    x[free] = GaussRational::int(1);
    for (i, &c) in pivots.iter().enumerate().rev() {
        if c > free {
            continue;
        }
        let mut acc = GaussRational::int(0);
        for j in c + 1..=free {
            if !x[j].is_zero() && !a[i][j].is_zero() {
                acc = acc.add(&a[i][j].to_gauss().mul(&x[j]));
            }
        }
        x[c] = acc.neg().div(&a[i][c].to_gauss()).expect("nonzero pivot");
    }
    Nullspace { vector: Some(x), dim }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(rows: &[&[i64]]) -> Vec<Vec<GaussRational>> {
        rows.iter().map(|r| r.iter().map(|&v| GaussRational::int(v)).collect()).collect()
    }

    fn mpr(rows: &[&[f64]], d: u32) -> Vec<Vec<MpComplex>> {
        rows.iter().map(|r| r.iter().map(|&v| MpComplex::from_f64(v, 0.0, d)).collect()).collect()
    }

    fn residual_log2(rows: &[Vec<MpComplex>], x: &[MpComplex]) -> f64 {
        rows.iter()
            .map(|r| {
                r.iter().zip(x).fold(MpComplex::real(0, x[0].digits()), |acc, (a, b)| acc.add(&a.mul(b))).log2_abs()
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn exact_rank_one_deficiency() {
        let rows = gr(&[&[1, 2, 3], &[2, 4, 7]]);
        let ns = bareiss_nullspace(&rows, 3);
        assert_eq!(ns.dim, 1);
        let x = ns.vector.unwrap();
        assert_eq!(x, alloc::vec![GaussRational::int(-2), GaussRational::int(1), GaussRational::int(0)]);
    }

    #[test]
    fn exact_minimal_support() {
        // Zero matrix: the minimal solution is the first unit vector.
        let ns = bareiss_nullspace(&gr(&[&[0, 0, 0]]), 3);
        assert_eq!(ns.dim, 3);
        assert_eq!(ns.vector.unwrap()[0], GaussRational::int(1));
        let ns = bareiss_nullspace(&gr(&[&[1, 0, 0, 0]]), 4);
        assert_eq!(ns.dim, 3);
        assert_eq!(ns.vector.unwrap(), gr(&[&[0, 1, 0, 0]])[0]);
    }

    #[test]
    fn exact_full_rank() {
        assert_eq!(bareiss_nullspace(&gr(&[&[1, 0], &[0, 1]]), 2).vector, None);
    }

    #[test]
    fn exact_gaussian_entries() {
        let i = GaussRational::new(BigRational::zero(), BigRational::one());
        let one = GaussRational::int(1);
        let half = GaussRational::ratio(1, 2);
        let rows = alloc::vec![
            alloc::vec![i.clone(), one.clone(), half.clone()],
            alloc::vec![one.clone(), i.clone(), i.mul(&half)]
        ];
        let x = bareiss_nullspace(&rows, 3).vector.unwrap();
        for r in &rows {
            let s = r.iter().zip(&x).fold(GaussRational::int(0), |acc, (a, b)| acc.add(&a.mul(b)));
            assert!(s.is_zero());
        }
    }

    #[test]
    fn floating_matches_exact() {
        let d = 50;
        let rows = mpr(&[&[1.0, 2.0, 3.0], &[2.0, 4.0, 7.0]], d);
        let ns = pivoted_nullspace(&rows, 3);
        assert_eq!(ns.dim, 1);
        let x = ns.vector.unwrap();
        let s = x[1].inv().unwrap();
        let x: Vec<_> = x.iter().map(|v| v.mul(&s)).collect();
        assert!(x[0].add(&MpComplex::real(2, d)).log2_abs() < -150.0);
        assert!(x[2].log2_abs() < -150.0);
    }

    #[test]
    fn floating_minimal_support() {
        let d = 40;
        let ns = pivoted_nullspace(&mpr(&[&[0.0, 0.0, 0.0]], d), 3);
        assert_eq!(ns.dim, 3);
        let x = ns.vector.unwrap();
        assert!(!x[0].is_zero() && x[1].is_zero() && x[2].is_zero());
        let ns = pivoted_nullspace(&mpr(&[&[1.0, 0.0, 0.0, 0.0], &[3.0, 0.0, 0.0, 0.0]], d), 4);
        assert_eq!(ns.dim, 3);
        let x = ns.vector.unwrap();
        assert!(x[0].is_zero() && !x[1].is_zero() && x[2].is_zero() && x[3].is_zero());
    }

    #[test]
    fn badly_scaled_hankel() {
        // Hankel matrix of the moments of a two-point measure with very
        // different weights; the kernel is the monic node polynomial.
        let d = 60;
        let (a, b) = (0.5f64, 1e-3f64);
        let m = |k: i32| 1e12 * a.powi(k) + 1e-12 * b.powi(k);
        let rows = alloc::vec![
            (0..3).map(|j| MpComplex::from_f64(m(j), 0.0, d)).collect::<Vec<_>>(),
            (1..4).map(|j| MpComplex::from_f64(m(j), 0.0, d)).collect::<Vec<_>>(),
        ];
        let x = pivoted_nullspace(&rows, 3).vector.unwrap();
        let scale = x.iter().map(|v| v.log2_abs()).fold(f64::NEG_INFINITY, f64::max);
        assert!(residual_log2(&rows, &x) - scale < 40.0 - 60.0 * 3.32 + 10.0);
    }
}
