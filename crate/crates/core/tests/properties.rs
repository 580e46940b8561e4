//! Property tests of the invariants that hold across modules.

use branchpoint_core::analysis::{budget_plan, invert_plane, stable_zeros, Plane, PointCloud, Tag};
use branchpoint_core::hermite_pade::{det_identity_check, hp_type1, hp_type2, MultiIndex};
use branchpoint_core::numerics::relative_deviation_log2;
use branchpoint_core::pade::pade_diagonal;
use branchpoint_core::potential::green_segment_f64;
use branchpoint_core::roots::{find_roots, reconstruct, RootSet};
use branchpoint_core::{Error, GaussRational, MpComplex, Polynomial, PowerSeries, Precision, Scalar};
use num_complex::Complex;
use proptest::prelude::*;

const D: u32 = 60;

fn prec() -> Precision {
    Precision::Digits(D)
}

/// Random series with `f(0) = 1` and coefficients of modulus at most one.
fn arb_series(max_len: usize) -> impl Strategy<Value = PowerSeries<MpComplex>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 4..max_len).prop_map(|v| {
        let mut c: Vec<MpComplex> = v.iter().map(|&(r, i)| MpComplex::from_f64(r, i, D)).collect();
        c[0] = MpComplex::real(1, D);
        PowerSeries::new(c, prec()).unwrap()
    })
}

fn arb_poly(real: bool) -> impl Strategy<Value = Polynomial<MpComplex>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2..24).prop_map(move |v| {
        let mut c: Vec<MpComplex> =
            v.iter().map(|&(r, i)| MpComplex::from_f64(r, if real { 0.0 } else { i }, D)).collect();
        let last = c.len() - 1;
        c[last] = MpComplex::from_f64(1.0 + v[last].0.abs(), 0.0, D);
        Polynomial::new(c, prec()).unwrap()
    })
}

/// Largest `log2 |c_k|` of `Σ a_j g_j` over `k ∈ range`, relative to the
/// largest input coefficient.
fn residual_log2(terms: &[(&Polynomial<MpComplex>, &PowerSeries<MpComplex>)], range: std::ops::Range<usize>) -> f64 {
    let len = range.end;
    let mut sum = PowerSeries::new(vec![MpComplex::real(0, D); len], prec()).unwrap();
    let mut scale = f64::NEG_INFINITY;
    for (a, g) in terms {
        let g = g.truncated(len);
        sum = sum.add(&PowerSeries::from_polynomial(a, len).mul(&g).unwrap()).unwrap();
        scale =
            scale.max(a.max_log2_coeff() + g.coeffs().iter().map(|c| c.log2_abs()).fold(f64::NEG_INFINITY, f64::max));
    }
    range.map(|k| sum.coeff(k).log2_abs()).fold(f64::NEG_INFINITY, f64::max) - scale
}

fn degree_at_most(p: &Polynomial<MpComplex>, d: usize) -> bool {
    p.degree().is_none_or(|k| k <= d)
}

fn root_cloud(r: &RootSet) -> PointCloud {
    let mut c = PointCloud::new("p", 0, Plane::Z);
    c.push_roots(r, Tag::Zero);
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn pade_residual_vanishes_on_the_defining_window(f in arb_series(22), n in 1usize..8) {
        prop_assume!(f.order() > 2 * n);
        let f = f.truncated(2 * n + 1);
        let pa = pade_diagonal(&f, n).unwrap();
        prop_assert!(degree_at_most(&pa.q, n) && degree_at_most(&pa.p, n));
        let one = PowerSeries::one(prec(), 2 * n + 1);
        let r = residual_log2(&[(&pa.q, &f), (&pa.p.neg(), &one)], 0..2 * n + 1);
        prop_assert!(r < -(D as f64 - 10.0) * std::f64::consts::LOG2_10, "residual 2^{r}");
    }

    #[test]
    fn pade_reproduces_rational_functions(num in prop::collection::vec(-9i64..10, 1..4), den in prop::collection::vec(-9i64..10, 1..4)) {
        let n = 3;
        let mut den = den;
        den[0] = 1;
        let p = Polynomial::new(num.iter().map(|&v| GaussRational::int(v)).collect(), Precision::Exact).unwrap();
        let q = Polynomial::new(den.iter().map(|&v| GaussRational::int(v)).collect(), Precision::Exact).unwrap();
        let len = 2 * n + 1;
        let f = PowerSeries::from_polynomial(&p, len).div(&PowerSeries::from_polynomial(&q, len)).unwrap();
        let pa = pade_diagonal(&f, n).unwrap();
        // P_n Q = p Q_n exactly as polynomials.
        prop_assert_eq!(pa.p.mul(&q).unwrap(), p.mul(&pa.q).unwrap());
    }

    #[test]
    fn hermite_pade_degree_bounds_and_orders(f in arb_series(30), n in 1usize..6) {
        prop_assume!(f.order() > 4 * n);
        let f2 = f.mul(&f).unwrap();
        let f3 = f2.mul(&f).unwrap();
        let tol = -(D as f64 / 2.0) * std::f64::consts::LOG2_10;
        let t1 = hp_type1(&f.truncated(3 * n + 2), &MultiIndex::balanced(n, 3).unwrap()).unwrap();
        prop_assert!(t1.q.iter().all(|q| degree_at_most(q, n)));
        let one = PowerSeries::one(prec(), 4 * n + 1);
        prop_assert!(residual_log2(&[(&t1.q[0], &one), (&t1.q[1], &f), (&t1.q[2], &f2)], 0..3 * n + 2) < tol);
        for (tuple, gs) in [(2usize, vec![&f, &f2]), (3, vec![&f, &f2, &f3])] {
            let len = (tuple + 1) * n + 1;
            let t2 = hp_type2(&f.truncated(len), n, tuple).unwrap();
            prop_assert!(t2.p.iter().all(|p| degree_at_most(p, tuple * n)));
            for (j, g) in gs.into_iter().enumerate() {
                prop_assert!(residual_log2(&[(&t2.p[0], g), (&t2.p[j + 1].neg(), &one)], 0..len) < tol);
            }
        }
    }

    #[test]
    fn roots_round_trip(p in arb_poly(false)) {
        let r = find_roots(&p).unwrap();
        prop_assert_eq!(r.roots.len(), p.degree().unwrap());
        let back = reconstruct(&r.roots, p.leading().unwrap());
        prop_assert!(relative_deviation_log2(&back, &p) < -(D as f64 / 2.0) * std::f64::consts::LOG2_10);
    }

    #[test]
    fn real_polynomials_have_conjugate_closed_roots(p in arb_poly(true)) {
        let r = find_roots(&p).unwrap();
        for z in &r.roots {
            let d = r.roots.iter().map(|w| w.sub(&z.conj()).abs_f64()).fold(f64::INFINITY, f64::min);
            prop_assert!(d < 1e-20 * z.abs_f64().max(1.0), "{z} has no conjugate partner");
        }
    }

    #[test]
    fn pole_inversion_matches_reversed_denominator(p in arb_poly(false)) {
        // Zeros of z^n q(1/z) are the reciprocals of the zeros of q.
        prop_assume!(!p.coeff(0).is_zero() && p.coeff(0).abs_f64() > 1e-3);
        let n = p.degree().unwrap();
        let direct = invert_plane(&root_cloud(&find_roots(&p).unwrap())).unwrap();
        let reversed = root_cloud(&find_roots(&p.reversed(n).unwrap()).unwrap());
        for (z, _) in &reversed.points {
            let d = direct.points.iter().map(|(w, _)| (w - z).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(d < 1e-8 * z.norm().max(1.0));
        }
    }

    #[test]
    fn inversion_is_an_involution(v in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 1..20)) {
        let mut c = PointCloud::new("s", 4, Plane::Zeta);
        c.points = v.iter().map(|&(r, i)| (Complex::new(r, i), Tag::Pole)).filter(|(z, _)| z.norm() > 1e-3).collect();
        let back = invert_plane(&invert_plane(&c).unwrap()).unwrap();
        prop_assert_eq!(back.plane, c.plane);
        for ((a, _), (b, _)) in back.points.iter().zip(&c.points) {
            prop_assert!((a - b).norm() <= 1e-12 * b.norm());
        }
    }

    #[test]
    fn stabilization_is_symmetric(v in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..10), eps in prop::collection::vec(-12i32..-2, 10)) {
        let a: Vec<MpComplex> = v.iter().map(|&(r, i)| MpComplex::from_f64(r, i, D)).collect();
        let b: Vec<MpComplex> = a
            .iter()
            .zip(&eps)
            .map(|(z, &e)| z.add(&MpComplex::from_f64(10f64.powi(e), 0.0, D)))
            .collect();
        let set = |roots: Vec<MpComplex>| RootSet { residuals: vec![0.0; roots.len()], roots, iterations: 0, converged: true };
        let (ra, rb) = (set(a), set(b));
        let fwd = stable_zeros(&ra, &rb, 4);
        let bwd = stable_zeros(&rb, &ra, 4);
        prop_assert_eq!(fwd.candidates.len(), bwd.candidates.len());
        let mut fl: Vec<u32> = fwd.candidates.iter().map(|c| c.digits).collect();
        let mut bl: Vec<u32> = bwd.candidates.iter().map(|c| c.digits).collect();
        fl.sort_unstable();
        bl.sort_unstable();
        prop_assert_eq!(fl, bl);
        for c in &fwd.candidates {
            let hit = bwd.candidates.iter().any(|d| c.location.sub(&d.previous).abs_f64() < 1e-30);
            prop_assert!(hit);
        }
    }

    #[test]
    fn decimal_strings_round_trip_exactly(num in -1_000_000i64..1_000_000, den in 1i64..1_000_000, im in -1e6f64..1e6, digits in 16u32..260) {
        let z = MpComplex::from_ratio(num, den, Precision::Digits(digits)).add(&MpComplex::from_f64(0.0, im, digits));
        let (r, i) = z.to_decimal_strings();
        prop_assert_eq!(MpComplex::parse(&r, &i, digits).unwrap(), z);
    }

    #[test]
    fn budget_plan_fits_each_construction(budget in 0usize..400) {
        let p = budget_plan(budget);
        prop_assert_eq!(p.n.map(|n| 2 * n + 1), p.n.is_some().then_some(budget));
        prop_assert_eq!(p.m.map(|m| 3 * m + 2), p.m.is_some().then_some(budget));
        prop_assert_eq!(p.ell.map(|l| 4 * l + 3), p.ell.is_some().then_some(budget));
        prop_assert_eq!(p.n.is_some(), budget >= 3 && budget % 2 == 1);
    }

    #[test]
    fn green_function_is_positive_and_symmetric(re in -3.0f64..3.0, im in 0.01f64..3.0) {
        let z = Complex::new(re, im);
        let g = green_segment_f64(z).unwrap();
        prop_assert!(g > 0.0);
        for w in [z.conj(), -z, -z.conj()] {
            prop_assert!((green_segment_f64(w).unwrap() - g).abs() < 1e-12 * g.max(1.0));
        }
    }
}

#[test]
fn triple_identity_degenerates_for_cubic_algebraic_functions() {
    // At n = 3 the defining cubic of each cardano model fits every reduced
    // type I index, so all three systems coincide and the determinant
    // vanishes identically although each nullspace is one-dimensional.
    use branchpoint_core::models::{model_series, ModelKind, ModelSpec};
    for kind in [ModelKind::Cardano1, ModelKind::Cardano2] {
        let f = model_series(&ModelSpec::default_for(kind), 13, D).unwrap();
        assert!(matches!(det_identity_check(&f, 3, 3), Err(Error::NonGenericCase(_))));
        let t = hp_type1(&f, &MultiIndex::new(vec![3, 2, 2, 3]).unwrap()).unwrap();
        assert!(t.normal);
        assert_eq!(t.residual_order, None);
        // The pair identity is unaffected.
        let r = det_identity_check(&f.truncated(10), 3, 2).unwrap();
        assert!(r.deviation_log10 < -(D as f64) / 2.0);
    }
}
