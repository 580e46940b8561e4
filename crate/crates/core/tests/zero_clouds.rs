//! Zero distribution of Padé approximants for the Zhukovsky model.

use branchpoint_core::models::{model_series, ModelSpec};
use branchpoint_core::pade::pade_diagonal;
use branchpoint_core::potential::{arcsine_distance, EmpiricalMeasure};
use branchpoint_core::roots::find_roots;
use branchpoint_core::{MpComplex, Polynomial, Scalar};
use num_complex::Complex;

const DIGITS: u32 = 120;

fn zeta_cloud(p: &Polynomial<MpComplex>) -> Vec<Complex<f64>> {
    find_roots(p).unwrap().roots.iter().map(|z| z.inv().unwrap().to_c64()).collect()
}

#[test]
fn numerator_and_denominator_clouds_approach_the_arcsine_law() {
    let spec = ModelSpec::zhukovsky(2.0, 3.0).unwrap();
    let f = model_series(&spec, 121, DIGITS).unwrap();
    let mut averages = Vec::new();
    for n in [20usize, 40, 60] {
        let pa = pade_diagonal(&f.truncated(2 * n + 1), n).unwrap();
        let dq = arcsine_distance(&EmpiricalMeasure::new(zeta_cloud(&pa.q)).unwrap()).distance;
        let dp = arcsine_distance(&EmpiricalMeasure::new(zeta_cloud(&pa.p)).unwrap()).distance;
        if n == 60 {
            assert!(dq <= 0.12 && dp <= 0.12, "n = 60: poles {dq}, zeros {dp}");
        }
        averages.push((dq + dp) / 2.0);
    }
    assert!(averages.windows(2).all(|w| w[1] <= w[0]), "averages {averages:?}");
}
