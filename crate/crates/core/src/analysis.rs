//! Diagnostics built on zero sets: point clouds, reciprocal-plane
//! transforms, stabilization of discriminant zeros between consecutive
//! orders, coefficient budgets and the two-step resonance-point workflow.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::hermite_pade::{discriminant, hp_type1_with_powers, hp_type2_with_powers, powers, MultiIndex};
use crate::numerics::{MpComplex, Polynomial, PowerSeries, Precision, Scalar};
use crate::pade::pade_diagonal;
use crate::roots::{find_roots, RootSet};

/// Kind of point in a cloud.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Zero,
    Pole,
    Hp2Zero,
    Hp1Zero,
    DiscZero,
    KomlovZero,
}

impl Tag {
    pub const ALL: [Tag; 6] = [Tag::Zero, Tag::Pole, Tag::Hp2Zero, Tag::Hp1Zero, Tag::DiscZero, Tag::KomlovZero];

    pub fn name(self) -> &'static str {
        match self {
            Tag::Zero => "zero",
            Tag::Pole => "pole",
            Tag::Hp2Zero => "hp2_zero",
            Tag::Hp1Zero => "hp1_zero",
            Tag::DiscZero => "disc_zero",
            Tag::KomlovZero => "komlov_zero",
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Tag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Tag::ALL
            .into_iter()
            .find(|t| t.name() == s.trim())
            .ok_or_else(|| Error::InvalidParams(alloc::format!("unknown point tag {s:?}")))
    }
}

/// Plane in which cloud coordinates are expressed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Plane {
    /// The expansion variable `z`.
    Z,
    /// The reciprocal variable `ζ = 1/z`.
    Zeta,
}

impl Plane {
    pub fn name(self) -> &'static str {
        match self {
            Plane::Z => "z",
            Plane::Zeta => "zeta",
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Plane::Z => Plane::Zeta,
            Plane::Zeta => Plane::Z,
        }
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Plane {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "z" => Ok(Plane::Z),
            "zeta" => Ok(Plane::Zeta),
            other => Err(Error::InvalidParams(alloc::format!("unknown plane {other:?}"))),
        }
    }
}

/// Tagged points with provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    pub points: Vec<(Complex<f64>, Tag)>,
    /// Model or input identifier.
    pub source: String,
    pub order: usize,
    pub plane: Plane,
}

impl PointCloud {
    pub fn new(source: impl Into<String>, order: usize, plane: Plane) -> Self {
        Self { points: Vec::new(), source: source.into(), order, plane }
    }

    /// Append every root of a root set with the given tag.
    pub fn push_roots(&mut self, roots: &RootSet, tag: Tag) {
        self.points.extend(roots.roots.iter().map(|r| (r.to_c64(), tag)));
    }

    pub fn with_tag(&self, tag: Tag) -> impl Iterator<Item = Complex<f64>> + '_ {
        self.points.iter().filter(move |(_, t)| *t == tag).map(|(z, _)| *z)
    }

    /// Keep the points inside `[−r, r] × [−r, r]`.
    pub fn restrict_to_square(&self, r: f64) -> Self {
        let points = self.points.iter().filter(|(z, _)| z.re.abs() <= r && z.im.abs() <= r).cloned().collect();
        Self { points, ..self.clone() }
    }

    /// Concatenate another cloud expressed in the same plane.
    pub fn merge(&mut self, other: &PointCloud) -> Result<()> {
        if other.plane != self.plane {
            return Err(Error::DimensionMismatch("clouds in different planes".into()));
        }
        self.points.extend(other.points.iter().cloned());
        Ok(())
    }
}

/// Replace each point by its reciprocal and flip the plane flag.
pub fn invert_plane(cloud: &PointCloud) -> Result<PointCloud> {
    if cloud.points.iter().any(|(z, _)| *z == Complex::new(0.0, 0.0)) {
        return Err(Error::PointAtOrigin);
    }
    let points = cloud.points.iter().map(|(z, t)| (z.inv(), *t)).collect();
    Ok(PointCloud { points, source: cloud.source.clone(), order: cloud.order, plane: cloud.plane.flipped() })
}

/// One stabilized zero.
#[derive(Clone, Debug, PartialEq)]
pub struct StableCandidate {
    /// The zero of the later polynomial.
    pub location: MpComplex,
    /// Its partner in the earlier set.
    pub previous: MpComplex,
    /// `⌊−log10` of the relative distance⌋, capped at the working digits.
    pub digits: u32,
}

/// Result of [`stable_zeros`].
#[derive(Clone, Debug, PartialEq, Default)]
pub struct StableZeroReport {
    pub candidates: Vec<StableCandidate>,
    /// Matched pairs agreeing to at least one digit but fewer than required.
    pub unstable: Vec<StableCandidate>,
    /// Number of digits demanded of a candidate.
    pub digits_required: u32,
}

fn relative_digits(a: &MpComplex, b: &MpComplex, cap: u32) -> u32 {
    let d = a.sub(b).log2_abs();
    let scale = b.log2_abs().max(0.0);
    let rel = (d - scale) / core::f64::consts::LOG2_10;
    if rel == f64::NEG_INFINITY {
        return cap;
    }
    let digits = libm::floor(-rel);
    if digits <= 0.0 {
        0
    } else {
        (digits as u32).min(cap)
    }
}

/// Greedy nearest-neighbour matching of two zero sets. Pairs are formed in
/// increasing order of distance; a pair is a candidate when the zeros agree
/// to `digits_required` relative digits (relative to `max(1, |z|)`).
pub fn stable_zeros(prev: &RootSet, curr: &RootSet, digits_required: u32) -> StableZeroReport {
    let cap = prev.roots.iter().chain(&curr.roots).map(|r| r.digits()).min().unwrap_or(0);
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(prev.roots.len() * curr.roots.len());
    for (i, a) in prev.roots.iter().enumerate() {
        for (j, b) in curr.roots.iter().enumerate() {
            pairs.push((a.sub(b).log2_abs(), i, j));
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut used_prev = alloc::vec![false; prev.roots.len()];
    let mut used_curr = alloc::vec![false; curr.roots.len()];
    let mut report = StableZeroReport { digits_required, ..Default::default() };
    for (_, i, j) in pairs {
        if used_prev[i] || used_curr[j] {
            continue;
        }
        used_prev[i] = true;
        used_curr[j] = true;
        let (a, b) = (&prev.roots[i], &curr.roots[j]);
        let digits = relative_digits(a, b, cap);
        let cand = StableCandidate { location: b.clone(), previous: a.clone(), digits };
        if digits >= digits_required && digits > 0 {
            report.candidates.push(cand);
        } else if digits >= 1 {
            report.unstable.push(cand);
        }
    }
    let key = |c: &StableCandidate| (c.location.re_f64(), c.location.im_f64());
    report.candidates.sort_by(|x, y| key(x).partial_cmp(&key(y)).unwrap_or(core::cmp::Ordering::Equal));
    report.unstable.sort_by(|x, y| key(x).partial_cmp(&key(y)).unwrap_or(core::cmp::Ordering::Equal));
    report
}

/// Orders admissible for a budget of `N` Taylor coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BudgetPlan {
    pub budget: usize,
    /// `N = 2n + 1`: diagonal Padé.
    pub n: Option<usize>,
    /// `N = 3m + 2`: type I / type II for `[1, f, f²]`.
    pub m: Option<usize>,
    /// `N = 4ℓ + 3`: type I for `[1, f, f², f³]`.
    pub ell: Option<usize>,
}

impl BudgetPlan {
    /// Both the Padé and the pair constructions fit exactly.
    pub fn katz_admissible(&self) -> bool {
        self.n.is_some() && self.m.is_some()
    }
}

pub fn budget_plan(budget: usize) -> BudgetPlan {
    let fit = |offset: usize, step: usize| {
        (budget >= offset + step && (budget - offset).is_multiple_of(step)).then(|| (budget - offset) / step)
    };
    BudgetPlan { budget, n: fit(1, 2), m: fit(2, 3), ell: fit(3, 4) }
}

/// A group of nearby points.
#[derive(Clone, Debug, PartialEq)]
pub struct Cluster {
    pub centroid: Complex<f64>,
    pub size: usize,
    /// Largest distance from the centroid to a member.
    pub radius: f64,
    pub members: Vec<usize>,
}

/// Single-linkage grouping: points closer than `radius` (directly or through
/// a chain) share a cluster. Clusters are sorted by decreasing size.
pub fn cluster_points(points: &[Complex<f64>], radius: f64) -> Vec<Cluster> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (points[i] - points[j]).norm() < radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_slot = alloc::vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if root_slot[r] == usize::MAX {
            root_slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[root_slot[r]].push(i);
    }
    let mut clusters: Vec<Cluster> = groups
        .into_iter()
        .map(|members| {
            let c = members.iter().map(|&i| points[i]).sum::<Complex<f64>>() / members.len() as f64;
            let radius = members.iter().map(|&i| (points[i] - c).norm()).fold(0.0, f64::max);
            Cluster { centroid: c, size: members.len(), radius, members }
        })
        .collect();
    clusters.sort_by(|a, b| b.size.cmp(&a.size).then(a.members[0].cmp(&b.members[0])));
    clusters
}

/// Distance from `target` to the nearest point of `roots`.
pub fn nearest_distance(roots: &[MpComplex], target: &MpComplex) -> f64 {
    roots.iter().map(|r| r.sub(target).abs_f64()).fold(f64::INFINITY, f64::min)
}

/// Zeros of the discriminant of the balanced type I system of order `m`.
pub fn discriminant_roots(f: &PowerSeries<MpComplex>, m: usize) -> Result<RootSet> {
    discriminant_roots_with_powers(&powers(f, 2), m)
}

fn discriminant_roots_with_powers(pw: &[PowerSeries<MpComplex>], m: usize) -> Result<RootSet> {
    let t = hp_type1_with_powers(
        &pw.iter().map(|p| p.truncated(3 * m + 2)).collect::<Vec<_>>(),
        &MultiIndex::balanced(m, 3)?,
    )?;
    let d = discriminant(&t)?;
    let d = d.trim_relative(d.precision().tolerance_log2(10));
    find_roots(&d)
}

fn roots_or_empty(p: &Polynomial<MpComplex>) -> Result<RootSet> {
    match p.degree() {
        Some(d) if d > 0 => find_roots(p),
        _ => Ok(RootSet { roots: Vec::new(), residuals: Vec::new(), iterations: 0, converged: true }),
    }
}

/// Tunables of [`katz_workflow`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KatzOptions {
    /// Relative distance below which candidates of the two functions are
    /// identified.
    pub tol: f64,
    /// Digits a discriminant zero must keep between orders `m − 1` and `m`.
    pub digits_required: u32,
    /// Linking radius of the Padé point clustering.
    pub cluster_radius: f64,
    /// Candidates of the two functions closer than this but not within
    /// `tol` are reported as disagreements.
    pub near: f64,
}

impl Default for KatzOptions {
    fn default() -> Self {
        Self { tol: 1e-8, digits_required: 8, cluster_radius: 0.02, near: 0.05 }
    }
}

/// Per-function half of a [`KatzReport`].
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionAnalysis {
    /// Padé zeros and poles plus type II zeros, in the `z` plane.
    pub cloud: PointCloud,
    /// Clusters of Padé zeros and poles inside the unit square.
    pub clusters: Vec<Cluster>,
    pub stable: StableZeroReport,
    /// Stable discriminant zeros in the closed unit disk.
    pub katz: Vec<StableCandidate>,
    /// Stable discriminant zeros outside the unit disk.
    pub outside: Vec<StableCandidate>,
}

/// A candidate of each function, paired.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidatePair {
    pub a: StableCandidate,
    pub b: StableCandidate,
    /// `|a − b| / max(1, |b|)`.
    pub relative_distance: f64,
}

/// Result of [`katz_workflow`].
#[derive(Clone, Debug, PartialEq)]
pub struct KatzReport {
    pub plan: BudgetPlan,
    pub a: FunctionAnalysis,
    pub b: FunctionAnalysis,
    /// Resonance candidates: Katz points of both functions within `tol`.
    pub shared: Vec<CandidatePair>,
    /// Katz points of the two functions that are close but not within `tol`.
    pub disagreements: Vec<CandidatePair>,
    /// Katz points with no partner within `near`.
    pub unmatched_a: Vec<StableCandidate>,
    pub unmatched_b: Vec<StableCandidate>,
}

fn analyse_one(
    f: &PowerSeries<MpComplex>,
    plan: &BudgetPlan,
    id: &str,
    opts: &KatzOptions,
) -> Result<FunctionAnalysis> {
    let (n, m) = (plan.n.expect("admissible"), plan.m.expect("admissible"));
    let mut cloud = PointCloud::new(id, plan.budget, Plane::Z);
    let pade = pade_diagonal(&f.truncated(2 * n + 1), n)?;
    cloud.push_roots(&roots_or_empty(&pade.p)?, Tag::Zero);
    cloud.push_roots(&roots_or_empty(&pade.q)?, Tag::Pole);
    let square = cloud.restrict_to_square(1.0);
    let pts: Vec<_> = square.points.iter().map(|(z, _)| *z).collect();
    let clusters = cluster_points(&pts, opts.cluster_radius);

    let pw = powers(&f.truncated(3 * m + 2), 2);
    let t2 = hp_type2_with_powers(&pw, m, 2)?;
    cloud.push_roots(&roots_or_empty(&t2.p[0])?, Tag::Hp2Zero);
    let d_prev = discriminant_roots_with_powers(&pw, m - 1)?;
    let d_curr = discriminant_roots_with_powers(&pw, m)?;
    cloud.push_roots(&d_curr, Tag::DiscZero);
    let stable = stable_zeros(&d_prev, &d_curr, opts.digits_required);
    let (katz, outside) = stable.candidates.iter().cloned().partition(|c| c.location.abs_f64() <= 1.0);
    Ok(FunctionAnalysis { cloud, clusters, stable, katz, outside })
}

fn rel_distance(a: &MpComplex, b: &MpComplex) -> f64 {
    a.sub(b).abs_f64() / b.abs_f64().max(1.0)
}

/// Two-step resonance analysis of two series with a common budget `N`.
///
/// Step 1 computes `[n/n]` (`N = 2n + 1`) for both and clusters its zeros
/// and poles. Step 2 computes the type II pair polynomial and the
/// discriminants `D_{m−1}`, `D_m` (`N = 3m + 2`), keeps the discriminant
/// zeros that stabilize, and pairs the Katz candidates (stable zeros in the
/// closed unit disk) of the two functions.
pub fn katz_workflow(
    fa: &PowerSeries<MpComplex>,
    fb: &PowerSeries<MpComplex>,
    budget: usize,
    opts: &KatzOptions,
) -> Result<KatzReport> {
    let plan = budget_plan(budget);
    if !plan.katz_admissible() || plan.m.is_some_and(|m| m < 2) {
        return Err(Error::InadmissibleBudget(budget));
    }
    for f in [fa, fb] {
        if f.order() < budget {
            return Err(Error::InsufficientData { needed: budget, available: f.order() });
        }
    }
    let a = analyse_one(fa, &plan, "a", opts)?;
    let b = analyse_one(fb, &plan, "b", opts)?;

    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (i, x) in a.katz.iter().enumerate() {
        for (j, y) in b.katz.iter().enumerate() {
            pairs.push((rel_distance(&x.location, &y.location), i, j));
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut used_a = alloc::vec![false; a.katz.len()];
    let mut used_b = alloc::vec![false; b.katz.len()];
    let (mut shared, mut disagreements) = (Vec::new(), Vec::new());
    for (d, i, j) in pairs {
        if used_a[i] || used_b[j] || d >= opts.near {
            continue;
        }
        used_a[i] = true;
        used_b[j] = true;
        let pair = CandidatePair { a: a.katz[i].clone(), b: b.katz[j].clone(), relative_distance: d };
        if d <= opts.tol {
            shared.push(pair);
        } else {
            disagreements.push(pair);
        }
    }
    let unmatched_a = a.katz.iter().zip(&used_a).filter(|(_, u)| !**u).map(|(c, _)| c.clone()).collect();
    let unmatched_b = b.katz.iter().zip(&used_b).filter(|(_, u)| !**u).map(|(c, _)| c.clone()).collect();
    Ok(KatzReport { plan, a, b, shared, disagreements, unmatched_a, unmatched_b })
}

/// Synthetic function with prescribed square-root branch points:
/// `e^{s z} · Π_p ((1 − z/p)(1 − z/p̄))^{1/2}`, with principal branch at the
/// origin. Every `p` contributes the conjugate pair `p, p̄`.
pub fn sqrt_fixture(points: &[Complex<f64>], s: f64, n: usize, digits: u32) -> Result<PowerSeries<MpComplex>> {
    let prec = Precision::Digits(digits);
    let mut prod = PowerSeries::one(prec, n);
    for p in points {
        for q in [*p, p.conj()] {
            let a = MpComplex::from_c64(q, digits).inv().ok_or(Error::PointAtOrigin)?;
            let mut c = alloc::vec![MpComplex::real(0, digits); n];
            if n > 0 {
                c[0] = MpComplex::real(1, digits);
            }
            if n > 1 {
                c[1] = a.neg();
            }
            prod = prod.mul(&PowerSeries::new(c, prec)?)?;
        }
    }
    let root = prod.pow_ratio(1, 2)?;
    // e^{s z} from its Taylor coefficients s^k / k!.
    let sv = MpComplex::from_f64(s, 0.0, digits);
    let mut e = Vec::with_capacity(n);
    let mut term = MpComplex::real(1, digits);
    for k in 0..n {
        e.push(term.clone());
        term = term.mul(&sv).div(&MpComplex::real(k as i64 + 1, digits)).expect("nonzero");
    }
    root.mul(&PowerSeries::new(e, prec)?)
}

/// Shared branch point of the resonance fixtures.
pub const FIXTURE_SHARED: Complex<f64> = Complex::new(0.67, 0.075);
/// Branch point of fixture A that fixture B misses by `3·10⁻³`.
pub const FIXTURE_NEAR_A: Complex<f64> = Complex::new(-0.2, 0.8);
pub const FIXTURE_NEAR_B: Complex<f64> = Complex::new(-0.2 + 3e-3, 0.8);
/// Branch points outside the unit disk, one per fixture.
pub const FIXTURE_OUTSIDE_A: Complex<f64> = Complex::new(1.3, 0.9);
pub const FIXTURE_OUTSIDE_B: Complex<f64> = Complex::new(-1.4, -0.6);

/// The two fixtures `(f_A, f_B)` with `n` coefficients each.
pub fn resonance_fixtures(n: usize, digits: u32) -> Result<(PowerSeries<MpComplex>, PowerSeries<MpComplex>)> {
    let a = sqrt_fixture(&[FIXTURE_SHARED, FIXTURE_NEAR_A, FIXTURE_OUTSIDE_A], 0.5, n, digits)?;
    let b = sqrt_fixture(&[FIXTURE_SHARED, FIXTURE_NEAR_B, FIXTURE_OUTSIDE_B], -1.0 / 3.0, n, digits)?;
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    const D: u32 = 60;

    fn roots(v: &[(f64, f64)]) -> RootSet {
        RootSet {
            roots: v.iter().map(|&(r, i)| MpComplex::from_f64(r, i, D)).collect(),
            residuals: alloc::vec![0.0; v.len()],
            iterations: 0,
            converged: true,
        }
    }

    #[test]
    fn inversion_is_an_involution() {
        let mut c = PointCloud::new("t", 3, Plane::Z);
        c.points = alloc::vec![(Complex::new(2.0, 0.0), Tag::Pole), (Complex::new(0.3, -1.2), Tag::Zero)];
        let inv = invert_plane(&c).unwrap();
        assert_eq!(inv.points[0].0, Complex::new(0.5, 0.0));
        assert_eq!(inv.plane, Plane::Zeta);
        let back = invert_plane(&inv).unwrap();
        assert_eq!(back.plane, Plane::Z);
        for ((a, ta), (b, tb)) in back.points.iter().zip(&c.points) {
            assert!((a - b).norm() < 1e-15 && ta == tb);
        }
        c.points.push((Complex::new(0.0, 0.0), Tag::Zero));
        assert_eq!(invert_plane(&c), Err(Error::PointAtOrigin));
    }

    #[test]
    fn tags_and_planes_round_trip() {
        for t in Tag::ALL {
            assert_eq!(t.name().parse::<Tag>().unwrap(), t);
        }
        assert_eq!("zeta".parse::<Plane>().unwrap(), Plane::Zeta);
        assert!("w".parse::<Plane>().is_err());
    }

    #[test]
    fn stable_zero_contracts() {
        let a = roots(&[(0.5, 0.25), (-1.0, 2.0), (3.0, 0.0)]);
        let same = stable_zeros(&a, &a, 10);
        assert_eq!(same.candidates.len(), 3);
        assert!(same.candidates.iter().all(|c| c.digits == D));

        let shifted = roots(&[(0.5 + 1e-3, 0.25), (-1.0 + 1e-3, 2.0), (3.0 + 1e-3, 0.0)]);
        let r = stable_zeros(&a, &shifted, 10);
        assert!(r.candidates.is_empty());
        assert_eq!(r.unstable.len(), 3);

        // Symmetry under swapping.
        let b = roots(&[(0.5 + 1e-12, 0.25), (-1.0, 2.0 + 1e-4), (7.0, 1.0)]);
        let ab = stable_zeros(&a, &b, 8);
        let ba = stable_zeros(&b, &a, 8);
        assert_eq!(ab.candidates.len(), 1);
        assert_eq!(ba.candidates.len(), 1);
        assert!(ab.candidates[0].location.sub(&ba.candidates[0].location).abs_f64() < 1e-11);
        assert_eq!(ab.candidates[0].digits, ba.candidates[0].digits);
    }

    #[test]
    fn budget_examples() {
        let p = budget_plan(287);
        assert_eq!((p.n, p.m, p.ell), (Some(143), Some(95), Some(71)));
        let p = budget_plan(35);
        assert_eq!((p.n, p.m, p.ell), (Some(17), Some(11), Some(8)));
        let p = budget_plan(6);
        assert_eq!(p.n, None);
        assert!(!p.katz_admissible());
        assert!(budget_plan(59).katz_admissible());
    }

    #[test]
    fn clustering_groups_chains() {
        let pts = [Complex::new(0.0, 0.0), Complex::new(0.015, 0.0), Complex::new(0.03, 0.0), Complex::new(0.5, 0.5)];
        let c = cluster_points(&pts, 0.02);
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].size, 3);
        assert!((c[0].centroid - Complex::new(0.015, 0.0)).norm() < 1e-15);
        assert_eq!(c[1].members, alloc::vec![3]);
    }

    #[test]
    fn fixture_matches_closed_form() {
        let f = sqrt_fixture(&[Complex::new(2.0, 0.0)], 0.0, 3, D).unwrap();
        // (1 − z/2)² under the square root: 1 − z/2 exactly.
        assert!(f.coeff(0).sub(&MpComplex::real(1, D)).is_zero());
        assert!((f.coeff(1).re_f64() + 0.5).abs() < 1e-30);
        assert!(f.coeff(2).abs_f64() < 1e-30);
    }

    #[test]
    fn identical_inputs_share_every_candidate() {
        let (a, _) = resonance_fixtures(35, D).unwrap();
        let r = katz_workflow(&a, &a, 35, &KatzOptions::default()).unwrap();
        assert!(!r.a.katz.is_empty());
        assert_eq!(r.shared.len(), r.a.katz.len());
        assert!(r.disagreements.is_empty() && r.unmatched_a.is_empty());
        assert!(matches!(katz_workflow(&a, &a, 36, &KatzOptions::default()), Err(Error::InadmissibleBudget(36))));
    }
}
