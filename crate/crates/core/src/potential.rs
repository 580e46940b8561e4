//! Potential theory of the segment `E = [−1, 1]` and empirical diagnostics
//! for the convergence of Padé and type II approximants of the Zhukovsky
//! model.
//!
//! The equilibrium measure of `E` is the arcsine law and its Green function
//! with pole at infinity is `g(ζ) = log|ζ + (ζ² − 1)^(1/2)|`. Zero and pole
//! clouds are compared with the arcsine law through the Kolmogorov distance
//! of their real parts, and approximation errors are compared with
//! `e^{−g(ζ)}`, the geometric rate predicted for diagonal Padé approximants.

use alloc::vec::Vec;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::hermite_pade::hp_type2;
use crate::models::{joukowski_inverse, zhukovsky_series, zhukovsky_values};
use crate::numerics::{MpComplex, PowerSeries, Scalar};
use crate::pade::pade_diagonal;

/// Points farther than this from `[−1, 1]` are treated as spurious and left
/// out of the arcsine comparison.
pub const CLIP_DISTANCE: f64 = 0.1;

/// `g(ζ) = log|ζ + (ζ² − 1)^(1/2)|` on the branch with `g > 0`.
pub fn green_segment(zeta: &MpComplex) -> Result<f64> {
    let phi = joukowski_inverse(zeta).map_err(|_| Error::OnSet)?;
    Ok(phi.ln_abs_f64())
}

/// Double-precision variant of [`green_segment`].
pub fn green_segment_f64(zeta: Complex<f64>) -> Result<f64> {
    if zeta.im == 0.0 && zeta.re.abs() <= 1.0 {
        return Err(Error::OnSet);
    }
    let s = (zeta * zeta - 1.0).sqrt();
    Ok(libm::log((zeta + s).norm().max((zeta - s).norm())))
}

/// Distance from `z` to the segment `[−1, 1]`.
pub fn distance_to_segment(z: Complex<f64>) -> f64 {
    let x = z.re.clamp(-1.0, 1.0);
    Complex::new(z.re - x, z.im).norm()
}

/// Normalized counting measure of a finite point set.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalMeasure {
    points: Vec<Complex<f64>>,
}

impl EmpiricalMeasure {
    pub fn new(points: Vec<Complex<f64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParams("empirical measure needs at least one point".into()));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[Complex<f64>] {
        &self.points
    }

    /// Mass of each point.
    pub fn weight(&self) -> f64 {
        1.0 / self.points.len() as f64
    }
}

/// Outcome of [`arcsine_distance`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArcsineReport {
    /// Kolmogorov distance to the arcsine law; 1 when no point was kept.
    pub distance: f64,
    /// Points entering the comparison.
    pub used: usize,
    /// Points dropped for lying farther than [`CLIP_DISTANCE`] from `[−1, 1]`.
    pub excluded: usize,
}

/// Arcsine distribution function `1/2 + arcsin(x)/π` on `[−1, 1]`.
pub fn arcsine_cdf(x: f64) -> f64 {
    0.5 + libm::asin(x.clamp(-1.0, 1.0)) / core::f64::consts::PI
}

/// Kolmogorov distance between the empirical law of the real parts (points
/// projected onto `[−1, 1]`) and the arcsine law. Points farther than
/// [`CLIP_DISTANCE`] from the segment are excluded and counted.
pub fn arcsine_distance(mu: &EmpiricalMeasure) -> ArcsineReport {
    let mut xs: Vec<f64> =
        mu.points.iter().filter(|z| distance_to_segment(**z) <= CLIP_DISTANCE).map(|z| z.re.clamp(-1.0, 1.0)).collect();
    let excluded = mu.points.len() - xs.len();
    if xs.is_empty() {
        return ArcsineReport { distance: 1.0, used: 0, excluded };
    }
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let distance = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = arcsine_cdf(x);
            (f - i as f64 / n).abs().max((f - (i + 1) as f64 / n).abs())
        })
        .fold(0.0, f64::max);
    ArcsineReport { distance, used: xs.len(), excluded }
}

/// One row of a rate table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateRow {
    /// `n` for Padé rows, `m` for type II rows.
    pub order: usize,
    /// Number of Taylor coefficients consumed.
    pub budget: usize,
    /// `|f_*(ζ) − R(1/ζ)|^{1/N}`.
    pub measured: f64,
    /// `e^{−g(ζ)}`.
    pub target: f64,
    /// `log10 |f_*(ζ) − R(1/ζ)|`.
    pub error_log10: f64,
    /// For type II rows: the Padé error `log10` at the largest diagonal order
    /// affordable with the same budget.
    pub pade_error_log10: Option<f64>,
    /// Order zero: nothing was approximated.
    pub trivial: bool,
}

impl RateRow {
    pub fn ratio(&self) -> f64 {
        self.measured / self.target
    }
}

fn error_log2(exact: &MpComplex, approx: &MpComplex) -> f64 {
    exact.sub(approx).log2_abs()
}

fn rate(err_log2: f64, budget: usize) -> f64 {
    libm::exp2(err_log2 / budget as f64)
}

struct Probe {
    series: PowerSeries<MpComplex>,
    exact: MpComplex,
    z: MpComplex,
    target: f64,
}

fn probe(a: f64, b: f64, zeta: &MpComplex, budget: usize) -> Result<Probe> {
    let digits = zeta.digits();
    let g = green_segment(zeta)?;
    let exact = zhukovsky_values(a, b, zeta)?;
    let series = zhukovsky_series(a, b, budget, digits)?;
    let z = zeta.inv().ok_or(Error::PointAtOrigin)?;
    Ok(Probe { series, exact, z, target: libm::exp(-g) })
}

fn pade_error_log2(p: &Probe, n: usize) -> Result<f64> {
    let approx = pade_diagonal(&p.series.truncated(2 * n + 1), n)?.evaluate(&p.z)?;
    Ok(error_log2(&p.exact, &approx))
}

/// Measured Padé rates `|f_*(ζ) − [n/n](1/ζ)|^{1/N}`, `N = 2n + 1`, for
/// the Zhukovsky model, next to the target `e^{−g(ζ)}`.
pub fn rate_probe_pade(a: f64, b: f64, zeta: &MpComplex, orders: &[usize]) -> Result<Vec<RateRow>> {
    let max_budget = orders.iter().map(|n| 2 * n + 1).max().unwrap_or(1);
    let p = probe(a, b, zeta, max_budget)?;
    orders
        .iter()
        .map(|&n| {
            let budget = 2 * n + 1;
            let e = pade_error_log2(&p, n)?;
            Ok(RateRow {
                order: n,
                budget,
                measured: rate(e, budget),
                target: p.target,
                error_log10: e / core::f64::consts::LOG2_10,
                pade_error_log10: None,
                trivial: n == 0,
            })
        })
        .collect()
}

/// Measured type II rates `|f_*(ζ) − (P_1/P_0)(1/ζ)|^{1/N}` with the pair
/// system of degree `2m`, `N = 3m + 2`, together with the Padé error at the
/// same budget (`n = ⌊(N − 1)/2⌋`).
pub fn rate_probe_hp(a: f64, b: f64, zeta: &MpComplex, orders: &[usize]) -> Result<Vec<RateRow>> {
    let max_budget = orders.iter().map(|m| 3 * m + 2).max().unwrap_or(2);
    let p = probe(a, b, zeta, max_budget)?;
    orders
        .iter()
        .map(|&m| {
            let budget = 3 * m + 2;
            if m == 0 {
                return Ok(RateRow {
                    order: 0,
                    budget,
                    measured: 1.0,
                    target: p.target,
                    error_log10: 0.0,
                    pade_error_log10: None,
                    trivial: true,
                });
            }
            let sys = hp_type2(&p.series.truncated(budget), m, 2)?;
            let e = error_log2(&p.exact, &sys.evaluate(&p.z)?);
            let pe = pade_error_log2(&p, (budget - 1) / 2)?;
            Ok(RateRow {
                order: m,
                budget,
                measured: rate(e, budget),
                target: p.target,
                error_log10: e / core::f64::consts::LOG2_10,
                pade_error_log10: Some(pe / core::f64::consts::LOG2_10),
                trivial: false,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    const D: u32 = 40;

    fn mp(re: f64, im: f64) -> MpComplex {
        MpComplex::from_f64(re, im, D)
    }

    #[test]
    fn green_function_closed_forms() {
        let g2 = green_segment(&mp(2.0, 0.0)).unwrap();
        assert!((g2 - libm::log(2.0 + libm::sqrt(3.0))).abs() < 1e-14);
        // Robin constant: g(ζ) − log|ζ| → log 2.
        let big = green_segment(&mp(1e6, 0.0)).unwrap();
        assert!((big - libm::log(1e6) - libm::log(2.0)).abs() < 1e-11);
        let big_c = green_segment(&mp(0.0, -1e6)).unwrap();
        assert!((big_c - libm::log(1e6) - libm::log(2.0)).abs() < 1e-11);
        assert_eq!(green_segment(&mp(0.3, 0.0)), Err(Error::OnSet));
        assert_eq!(green_segment(&mp(1.0, 0.0)), Err(Error::OnSet));
        assert_eq!(green_segment_f64(Complex::new(-1.0, 0.0)), Err(Error::OnSet));
    }

    #[test]
    fn green_function_boundary_limits() {
        for x in [-0.9, -0.3, 0.0, 0.5, 0.99] {
            for s in [1.0, -1.0] {
                let g = green_segment(&mp(x, s * 1e-6)).unwrap();
                assert!(g > 0.0 && g < 1e-5, "x = {x}: {g}");
            }
        }
        let g = green_segment(&mp(1.0 + 1e-12, 0.0)).unwrap();
        assert!(g > 0.0 && g < 1e-5);
        for z in [Complex::new(0.3, 2.0), Complex::new(-3.0, 0.1), Complex::new(1.5, 0.0)] {
            let a = green_segment(&mp(z.re, z.im)).unwrap();
            assert!((a - green_segment_f64(z).unwrap()).abs() < 1e-13);
        }
    }

    #[test]
    fn arcsine_examples() {
        let n = 64;
        let cheb: Vec<_> =
            (1..=n).map(|k| Complex::new(libm::cos((2 * k - 1) as f64 * PI / (2 * n) as f64), 0.0)).collect();
        let r = arcsine_distance(&EmpiricalMeasure::new(cheb).unwrap());
        assert!(r.distance <= 1.0 / 64.0 + 1e-12);
        assert_eq!(r.excluded, 0);

        let one = arcsine_distance(&EmpiricalMeasure::new(alloc::vec![Complex::new(0.0, 0.0)]).unwrap());
        assert!((one.distance - 0.5).abs() < 1e-15);

        // Uniform grid: sup of x/2 − arcsin(x)/π, attained where
        // √(1 − x²) = 2/π.
        let grid: Vec<_> = (0..200).map(|i| Complex::new(-1.0 + 2.0 * i as f64 / 199.0, 0.0)).collect();
        let u = arcsine_distance(&EmpiricalMeasure::new(grid).unwrap());
        let x = libm::sqrt(1.0 - 4.0 / (PI * PI));
        let sup = x / 2.0 - libm::asin(x) / PI;
        assert!((u.distance - sup).abs() < 0.01, "{} vs {sup}", u.distance);

        let far = arcsine_distance(&EmpiricalMeasure::new(alloc::vec![Complex::new(0.0, 1.0)]).unwrap());
        assert_eq!((far.used, far.excluded, far.distance), (0, 1, 1.0));
        assert!(EmpiricalMeasure::new(Vec::new()).is_err());
    }

    #[test]
    fn pade_rates_are_below_one_and_near_target() {
        let zeta = mp(0.0, 2.0);
        let rows = rate_probe_pade(2.0, 3.0, &zeta, &[8, 12]).unwrap();
        for r in &rows {
            assert!(r.measured < 1.0);
            assert!((0.7..1.3).contains(&r.ratio()), "{r:?}");
        }
        let at2 = rate_probe_pade(2.0, 3.0, &mp(2.0, 0.0), &[4]).unwrap();
        assert!((at2[0].target - 1.0 / (2.0 + libm::sqrt(3.0))).abs() < 1e-14);
    }

    #[test]
    fn hp_rates_beat_pade_and_flag_trivial_rows() {
        let zeta = mp(0.0, 2.0);
        let rows = rate_probe_hp(2.0, 3.0, &zeta, &[0, 7]).unwrap();
        assert!(rows[0].trivial);
        let r = rows[1];
        assert_eq!(r.budget, 23);
        assert!(r.error_log10 < r.pade_error_log10.unwrap());
        assert!(r.measured < r.target);
        assert!(rate_probe_pade(2.0, 3.0, &mp(0.5, 0.0), &[3]).is_err());
    }
}
