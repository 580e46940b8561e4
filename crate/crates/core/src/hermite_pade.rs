//! Hermite–Padé polynomials for the tuples `[1, f, f²]` and `[1, f, f², f³]`.
//!
//! * Type I: polynomials `Q_j` with `deg Q_j ≤ m_j` such that
//!   `Σ_j Q_j f^j = O(z^(|m| + len(m) − 1))`. Needs exactly that many Taylor
//!   coefficients, e.g. `3n + 2` for `(n, n, n)` and `3n + 1` for `(n, n, n−1)`.
//! * Type II: one polynomial `P_0` of degree `≤ kn` (tuple size `k`) with
//!   `P_0 f^j − P_j = O(z^((k+1)n + 1))` for `j = 1..k`. Needs `(k+1)n + 1`
//!   coefficients.
//!
//! Also provided: the discriminant `Q_1² − 4 Q_0 Q_2`, the determinantal
//! pair `H_0, H_1` built from two reduced-index 4-tuple systems, and a check
//! of the determinant formula expressing `P_0` through reduced-index type I
//! polynomials.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::solve_homogeneous;
use crate::numerics::{relative_deviation_log2, Polynomial, PowerSeries, Scalar};
use crate::pade::vanishing_order;

/// Degree bounds, one per tuple member.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(degrees: Vec<usize>) -> Result<Self> {
        if !(3..=4).contains(&degrees.len()) {
            return Err(Error::DimensionMismatch(format!("multi-index of length {}", degrees.len())));
        }
        Ok(Self(degrees))
    }

    /// `(n, …, n)` with `len` entries.
    pub fn balanced(n: usize, len: usize) -> Result<Self> {
        Self::new(alloc::vec![n; len])
    }

    pub fn degrees(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the degree bounds.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Vanishing order imposed on `Σ_j Q_j f^j`, which is also the number of
    /// Taylor coefficients consumed.
    pub fn required_order(&self) -> usize {
        self.total() + self.len() - 1
    }
}

/// Type I polynomials `Q_0, …, Q_{k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeOneSystem<S> {
    pub index: MultiIndex,
    pub q: Vec<Polynomial<S>>,
    /// First nonvanishing coefficient of `Σ Q_j f^j` over the available data,
    /// `None` when none was found.
    pub residual_order: Option<usize>,
    pub normal: bool,
}

impl<S: Scalar> TypeOneSystem<S> {
    /// `-Q_1/Q_2` style ratio `-Q_a(z)/Q_b(z)`.
    pub fn ratio(&self, a: usize, b: usize, z: &S) -> Result<S> {
        let num = self.q[a].eval(z)?;
        let den = self.q[b].eval(z)?;
        num.neg().div(&den).ok_or(Error::PoleAtEvaluationPoint)
    }
}

/// Type II polynomials `P_0, …, P_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct TypeTwoSystem<S> {
    pub n: usize,
    pub p: Vec<Polynomial<S>>,
    /// Achieved vanishing order of `P_0 f^j − P_j`, one entry per `j ≥ 1`.
    pub residual_orders: Vec<Option<usize>>,
    pub normal: bool,
}

impl<S: Scalar> TypeTwoSystem<S> {
    /// The rational approximant `P_1(z) / P_0(z)`.
    pub fn evaluate(&self, z: &S) -> Result<S> {
        let num = self.p[1].eval(z)?;
        let den = self.p[0].eval(z)?;
        num.div(&den).ok_or(Error::PoleAtEvaluationPoint)
    }
}

/// Determinantal pair `H_0, H_1`.
#[derive(Clone, Debug, PartialEq)]
pub struct KomlovPair<S> {
    pub h0: Polynomial<S>,
    pub h1: Polynomial<S>,
    pub normal: bool,
}

impl<S: Scalar> KomlovPair<S> {
    /// `H_1(z) / H_0(z)`.
    pub fn evaluate(&self, z: &S) -> Result<S> {
        let num = self.h1.eval(z)?;
        let den = self.h0.eval(z)?;
        num.div(&den).ok_or(Error::PoleAtEvaluationPoint)
    }
}

/// `[1, f, f², …, f^k]` at the truncation order of `f`.
pub fn powers<S: Scalar>(f: &PowerSeries<S>, k: usize) -> Vec<PowerSeries<S>> {
    let mut out = alloc::vec![PowerSeries::one(f.precision(), f.order())];
    for _ in 0..k {
        let next = out.last().expect("nonempty").mul_unchecked(f);
        out.push(next);
    }
    out
}

fn check_data(available: usize, needed: usize) -> Result<()> {
    if available < needed {
        return Err(Error::InsufficientData { needed, available });
    }
    Ok(())
}

/// Type I system for multi-index `m`.
pub fn hp_type1<S: Scalar>(f: &PowerSeries<S>, m: &MultiIndex) -> Result<TypeOneSystem<S>> {
    hp_type1_with_powers(&powers(f, m.len() - 1), m)
}

/// Type I system from precomputed powers `[1, f, f², …]`.
pub fn hp_type1_with_powers<S: Scalar>(pw: &[PowerSeries<S>], m: &MultiIndex) -> Result<TypeOneSystem<S>> {
    if pw.len() < m.len() {
        return Err(Error::DimensionMismatch(format!("{} powers for a {}-tuple", pw.len(), m.len())));
    }
    let order = m.required_order();
    let available = pw[1].order();
    check_data(available, order)?;
    let prec = pw[1].precision();
    let deg = m.degrees();
    let ncols: usize = deg[1..].iter().map(|d| d + 1).sum();
    let rows: Vec<Vec<S>> = (deg[0] + 1..order)
        .map(|k| {
            let mut row = Vec::with_capacity(ncols);
            for (j, &dj) in deg.iter().enumerate().skip(1) {
                for i in 0..=dj {
                    row.push(if i <= k { pw[j].coeff(k - i).clone() } else { S::zero(prec) });
                }
            }
            row
        })
        .collect();
    let ns = solve_homogeneous(&rows, ncols, prec);
    let x = ns.vector.ok_or(Error::AllZeroSolution)?;
    let mut q = Vec::with_capacity(m.len());
    q.push(Polynomial::zero(prec));
    let mut at = 0;
    for &dj in &deg[1..] {
        q.push(Polynomial::from_trusted(x[at..at + dj + 1].to_vec(), prec));
        at += dj + 1;
    }
    let q = normalize_tuple(q, 1)?;
    // Q_0 cancels the low-order part of Σ_{j≥1} Q_j f^j.
    let mut low = PowerSeries::constant(S::zero(prec), deg[0] + 1);
    for (j, qj) in q.iter().enumerate().skip(1) {
        low = low.add(&PowerSeries::from_polynomial(qj, deg[0] + 1).mul_unchecked(&pw[j].truncated(deg[0] + 1)))?;
    }
    let mut q = q;
    q[0] = low.to_polynomial().neg();
    let terms: Vec<_> = q.iter().zip(pw).collect();
    let residual_order = vanishing_order(&terms, available);
    Ok(TypeOneSystem { index: m.clone(), q, residual_order, normal: ns.dim == 1 })
}

/// Clear rounding noise relative to the largest coefficient in the tuple,
/// then scale so that the last nonzero polynomial (from position `from` on)
/// is monic.
fn normalize_tuple<S: Scalar>(q: Vec<Polynomial<S>>, from: usize) -> Result<Vec<Polynomial<S>>> {
    let prec = q[from].precision();
    let top = q.iter().map(|p| p.max_log2_coeff()).fold(f64::NEG_INFINITY, f64::max);
    let cut = top + prec.tolerance_log2(10);
    let q: Vec<Polynomial<S>> = q
        .into_iter()
        .map(|p| {
            let mut c = p.into_coeffs();
            while c.last().is_some_and(|v| v.log2_abs() < cut) {
                c.pop();
            }
            Polynomial::from_trusted(c, prec)
        })
        .collect();
    let lead = q[from..].iter().rev().find(|p| !p.is_zero()).ok_or(Error::AllZeroSolution)?;
    let s = lead.leading().expect("nonzero").inv().ok_or(Error::AllZeroSolution)?;
    Ok(q.iter().map(|p| p.scale(&s).expect("same precision")).collect())
}

/// Type II system for the pair (`tuple = 2`) or the triple (`tuple = 3`).
pub fn hp_type2<S: Scalar>(f: &PowerSeries<S>, n: usize, tuple: usize) -> Result<TypeTwoSystem<S>> {
    if !(2..=3).contains(&tuple) {
        return Err(Error::DimensionMismatch(format!("type II tuple size {tuple}")));
    }
    hp_type2_with_powers(&powers(f, tuple), n, tuple)
}

pub fn hp_type2_with_powers<S: Scalar>(pw: &[PowerSeries<S>], n: usize, tuple: usize) -> Result<TypeTwoSystem<S>> {
    let deg = tuple * n;
    let order = (tuple + 1) * n + 1;
    let available = pw[1].order();
    check_data(available, order)?;
    let prec = pw[1].precision();
    let mut rows = Vec::with_capacity(tuple * n);
    for g in &pw[1..=tuple] {
        for k in deg + 1..order {
            rows.push((0..=deg).map(|i| g.coeff(k - i).clone()).collect::<Vec<S>>());
        }
    }
    let ns = solve_homogeneous(&rows, deg + 1, prec);
    let x = ns.vector.ok_or(Error::AllZeroSolution)?;
    let p0 = crate::pade::normalize_leading(Polynomial::from_trusted(x, prec))?;
    let mut p = alloc::vec![p0.clone()];
    let mut residual_orders = Vec::with_capacity(tuple);
    let p0s = PowerSeries::from_polynomial(&p0, deg + 1);
    let one = PowerSeries::one(prec, available);
    for g in &pw[1..=tuple] {
        let pj = p0s.mul_unchecked(&g.truncated(deg + 1)).to_polynomial();
        residual_orders.push(vanishing_order(&[(&p0, g), (&pj.neg(), &one)], available));
        p.push(pj);
    }
    Ok(TypeTwoSystem { n, p, residual_orders, normal: ns.dim == 1 })
}

/// `Q_1² − 4 Q_0 Q_2` of a 3-tuple type I system.
pub fn discriminant<S: Scalar>(t: &TypeOneSystem<S>) -> Result<Polynomial<S>> {
    if t.q.len() != 3 {
        return Err(Error::DimensionMismatch(format!("discriminant of a {}-tuple", t.q.len())));
    }
    let four = S::from_i64(4, t.q[0].precision());
    let d = t.q[1].mul(&t.q[1])?.sub(&t.q[0].mul(&t.q[2])?.scale(&four)?)?;
    Ok(d)
}

/// `a_i b_j − a_j b_i`.
fn minor<S: Scalar>(a: &TypeOneSystem<S>, b: &TypeOneSystem<S>, i: usize, j: usize) -> Result<Polynomial<S>> {
    a.q[i].mul(&b.q[j])?.sub(&a.q[j].mul(&b.q[i])?)
}

/// `H_0 = |Q_{1,2} Q_{1,3}; Q_{2,2} Q_{2,3}|` and
/// `H_1 = |Q_{1,1} Q_{1,3}; Q_{2,1} Q_{2,3}|` for the 4-tuple systems of
/// multi-indices `(n, n, n−1, n−1)` and `(n, n−1, n, n−1)`.
pub fn komlov_pair<S: Scalar>(t1: &TypeOneSystem<S>, t2: &TypeOneSystem<S>) -> Result<KomlovPair<S>> {
    if t1.q.len() != 4 || t2.q.len() != 4 {
        return Err(Error::DimensionMismatch(format!("{}-tuple and {}-tuple systems", t1.q.len(), t2.q.len())));
    }
    let h0 = minor(t1, t2, 2, 3)?;
    let h1 = minor(t1, t2, 1, 3)?;
    let normal = t1.normal && t2.normal && !h0.is_zero();
    Ok(KomlovPair { h0, h1, normal })
}

/// The two reduced-index systems for `komlov_pair` and the pair itself,
/// from `4n + 1` coefficients.
pub fn komlov_from_series<S: Scalar>(f: &PowerSeries<S>, n: usize) -> Result<KomlovPair<S>> {
    if n == 0 {
        return Err(Error::InvalidParams("order must be at least 1".into()));
    }
    let pw = powers(f, 3);
    let t1 = hp_type1_with_powers(&pw, &MultiIndex::new(alloc::vec![n, n, n - 1, n - 1])?)?;
    let t2 = hp_type1_with_powers(&pw, &MultiIndex::new(alloc::vec![n, n - 1, n, n - 1])?)?;
    komlov_pair(&t1, &t2)
}

/// Outcome of comparing the direct and the determinantal `P_0`.
#[derive(Clone, Debug, PartialEq)]
pub struct DetIdentityReport<S> {
    pub direct: Polynomial<S>,
    pub determinantal: Polynomial<S>,
    /// Maximum coefficient deviation after both are made monic, relative to
    /// the largest coefficient, as `log10`. `-inf` for an exact match.
    pub deviation_log10: f64,
}

/// Compare `P_0` of the type II system (`tuple` = 2 or 3) with the
/// determinant of the reduced-index type I polynomials. Both use the same
/// `(tuple + 1) n + 1` coefficients.
pub fn det_identity_check<S: Scalar>(f: &PowerSeries<S>, n: usize, tuple: usize) -> Result<DetIdentityReport<S>> {
    if n == 0 {
        return Err(Error::InvalidParams("order must be at least 1".into()));
    }
    if !(2..=3).contains(&tuple) {
        return Err(Error::DimensionMismatch(format!("type II tuple size {tuple}")));
    }
    let pw = powers(f, tuple);
    let direct = hp_type2_with_powers(&pw, n, tuple)?;
    let systems = (1..=tuple)
        .map(|k| {
            let mut d = alloc::vec![n - 1; tuple + 1];
            d[0] = n;
            d[k] = n;
            hp_type1_with_powers(&pw, &MultiIndex::new(d)?)
        })
        .collect::<Result<Vec<_>>>()?;
    if !direct.normal || systems.iter().any(|s| !s.normal) {
        return Err(Error::NonGenericCase("a homogeneous solve had a nullspace of dimension above one".into()));
    }
    let matrix: Vec<Vec<Polynomial<S>>> = systems.iter().map(|s| s.q[1..].to_vec()).collect();
    let det = determinant(&matrix)?;
    if det.is_zero() {
        return Err(Error::NonGenericCase("determinant vanishes identically".into()));
    }
    let prec = f.precision();
    let det = det.trim_relative(prec.tolerance_log2(10)).monic().expect("nonzero");
    let direct = direct.p[0].monic().expect("nonzero");
    let dev = relative_deviation_log2(&det, &direct);
    Ok(DetIdentityReport { direct, determinantal: det, deviation_log10: dev / core::f64::consts::LOG2_10 })
}

/// Determinant of a small square matrix of polynomials by cofactor
/// expansion.
pub fn determinant<S: Scalar>(m: &[Vec<Polynomial<S>>]) -> Result<Polynomial<S>> {
    match m.len() {
        0 => Err(Error::DimensionMismatch("empty matrix".into())),
        1 => Ok(m[0][0].clone()),
        n => {
            let prec = m[0][0].precision();
            let mut acc = Polynomial::zero(prec);
            for c in 0..n {
                let sub: Vec<Vec<Polynomial<S>>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = m[0][c].mul(&determinant(&sub)?)?;
                acc = if c % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
            }
            Ok(acc)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{GaussRational, MpComplex, Precision};

    const D: u32 = 60;

    fn exact(c: &[(i64, i64)]) -> PowerSeries<GaussRational> {
        PowerSeries::new(c.iter().map(|&(p, q)| GaussRational::ratio(p, q)).collect(), Precision::Exact).unwrap()
    }

    fn sqrt_one_minus(n: usize) -> PowerSeries<GaussRational> {
        let mut c = alloc::vec![(0, 1); n];
        c[0] = (1, 1);
        c[1] = (-1, 1);
        exact(&c).pow_ratio(1, 2).unwrap()
    }

    fn poly(c: &[i64]) -> Polynomial<GaussRational> {
        Polynomial::new(c.iter().map(|&v| GaussRational::int(v)).collect(), Precision::Exact).unwrap()
    }

    fn to_mp(f: &PowerSeries<GaussRational>) -> PowerSeries<MpComplex> {
        let prec = Precision::Digits(D);
        PowerSeries::new(f.coeffs().iter().map(|c| MpComplex::from_rationals(&c.re, &c.im, prec)).collect(), prec)
            .unwrap()
    }

    #[test]
    fn annihilator_of_square_root() {
        let f = sqrt_one_minus(5);
        let t = hp_type1(&f, &MultiIndex::balanced(1, 3).unwrap()).unwrap();
        assert_eq!(t.q, alloc::vec![poly(&[-1, 1]), poly(&[]), poly(&[1])]);
        assert_eq!(t.residual_order, None);
        assert_eq!(discriminant(&t).unwrap(), poly(&[4, -4]));
        // Same system in floating arithmetic.
        let tm = hp_type1(&to_mp(&f), &MultiIndex::balanced(1, 3).unwrap()).unwrap();
        assert!(tm.q[1].is_zero());
        assert_eq!(tm.q[2].degree(), Some(0));
    }

    #[test]
    fn constant_function_contract() {
        let f = PowerSeries::<GaussRational>::one(Precision::Exact, 5);
        let t = hp_type1(&f, &MultiIndex::balanced(1, 3).unwrap()).unwrap();
        assert!(t.residual_order.is_none_or(|k| k >= 5));
        assert!(!t.normal);
        let t2 = hp_type2(&f, 1, 2).unwrap();
        assert_eq!(t2.p[0], t2.p[1]);
        assert_eq!(t2.p[1], t2.p[2]);
    }

    #[test]
    fn insufficient_data() {
        let f = sqrt_one_minus(7);
        assert_eq!(
            hp_type1(&f, &MultiIndex::balanced(2, 3).unwrap()),
            Err(Error::InsufficientData { needed: 8, available: 7 })
        );
        assert_eq!(hp_type2(&f, 2, 2).map(|_| ()), Ok(()));
        assert!(matches!(hp_type2(&f, 2, 3), Err(Error::InsufficientData { .. })));
    }

    #[test]
    fn discriminant_of_hand_built_system() {
        let t = TypeOneSystem {
            index: MultiIndex::balanced(0, 3).unwrap(),
            q: alloc::vec![poly(&[1]), poly(&[]), poly(&[1])],
            residual_order: None,
            normal: true,
        };
        assert_eq!(discriminant(&t).unwrap(), poly(&[-4]));
    }

    #[test]
    fn type_two_reproduces_rational_input() {
        let f = exact(&[(1, 1); 10]);
        let t = hp_type2(&f, 1, 2).unwrap();
        assert!(t.residual_orders.iter().all(|r| r.is_none_or(|k| k >= 4)));
        assert_eq!(t.p[0], poly(&[1, -2, 1]));
        assert_eq!(t.evaluate(&GaussRational::ratio(1, 3)).unwrap(), GaussRational::ratio(3, 2));
    }

    #[test]
    fn type_two_square_root_orders() {
        let f = sqrt_one_minus(12);
        let t = hp_type2(&f, 2, 2).unwrap();
        // Residual by direct series substitution.
        for j in 1..=2 {
            let fj = powers(&f, 2)[j].clone();
            let r = PowerSeries::from_polynomial(&t.p[0], 12)
                .mul(&fj)
                .unwrap()
                .sub(&PowerSeries::from_polynomial(&t.p[j], 12))
                .unwrap();
            assert!(r.coeffs()[..7].iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn komlov_degenerate_and_unit_cases() {
        let mk = |rows: [[i64; 4]; 1]| TypeOneSystem {
            index: MultiIndex::balanced(0, 4).unwrap(),
            q: rows[0].iter().map(|&v| poly(&[v])).collect(),
            residual_order: None,
            normal: true,
        };
        let a = mk([[1, 2, 3, 4]]);
        let k = komlov_pair(&a, &a).unwrap();
        assert!(k.h0.is_zero() && k.h1.is_zero());
        let t1 = mk([[0, 0, 1, 0]]);
        let t2 = mk([[0, 0, 0, 1]]);
        assert_eq!(komlov_pair(&t1, &t2).unwrap().h0, poly(&[1]));
        let three = TypeOneSystem {
            index: MultiIndex::balanced(0, 3).unwrap(),
            q: alloc::vec![poly(&[1]); 3],
            residual_order: None,
            normal: true,
        };
        assert!(matches!(komlov_pair(&three, &a), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn determinant_identity_on_a_generic_function() {
        // f = (1 - z)^(1/2) (1 + 2z)^(-1/3) has neither f nor f² rational.
        let n = 3;
        let len = 3 * n + 1;
        let mut a = alloc::vec![(0, 1); len];
        a[0] = (1, 1);
        a[1] = (-1, 1);
        let mut b = a.clone();
        b[1] = (2, 1);
        let f = exact(&a)
            .pow_ratio(1, 2)
            .unwrap()
            .mul(&exact(&b).pow_ratio(-1, 3).unwrap_or_else(|_| unreachable!()))
            .unwrap();
        let r = det_identity_check(&f, n, 2).unwrap();
        assert_eq!(r.deviation_log10, f64::NEG_INFINITY);
        let rm = det_identity_check(&to_mp(&f), n, 2).unwrap();
        assert!(rm.deviation_log10 < -(D as f64 - 12.0));
    }

    #[test]
    fn determinant_identity_non_generic() {
        let f = PowerSeries::<GaussRational>::one(Precision::Exact, 20);
        assert!(matches!(det_identity_check(&f, 2, 2), Err(Error::NonGenericCase(_))));
        // A rational f makes the reduced-index systems degenerate as well.
        let g = exact(&[(1, 1); 20]);
        assert!(matches!(det_identity_check(&g, 2, 2), Err(Error::NonGenericCase(_))));
    }

    #[test]
    fn polynomial_determinants() {
        let m = alloc::vec![
            alloc::vec![poly(&[1]), poly(&[0, 1]), poly(&[2])],
            alloc::vec![poly(&[0]), poly(&[1]), poly(&[0, 0, 1])],
            alloc::vec![poly(&[3]), poly(&[]), poly(&[1])],
        ];
        // 1·(1 - 0) - z·(0 - 3z²) + 2·(0 - 3) = 3z³ - 5
        assert_eq!(determinant(&m).unwrap(), poly(&[-5, 0, 0, 3]));
    }
}
