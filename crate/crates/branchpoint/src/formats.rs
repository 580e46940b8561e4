//! On-disk formats.
//!
//! * Series and polynomial files (JSON): `{"digits": d, "coeffs": [{"re": "…",
//!   "im": "…"}, …]}` with decimal strings that parse back bit for bit at
//!   `d` digits.
//! * Polynomial bundles (JSON): the polynomials of one construction plus its
//!   residual orders and normality flag.
//! * Root tables (CSV): `re, im, residual` with full-precision decimals.
//! * Point clouds (CSV): `re, im, tag, plane, source`.
//! * Rate tables (CSV) and resonance reports (JSON).

use std::path::Path;

use branchpoint_core::analysis::{
    BudgetPlan, CandidatePair, Cluster, FunctionAnalysis, KatzReport, Plane, PointCloud, StableCandidate, Tag,
};
use branchpoint_core::potential::RateRow;
use branchpoint_core::roots::RootSet;
use branchpoint_core::{MpComplex, Polynomial, PowerSeries, Precision, Scalar};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// One complex coefficient as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coeff {
    pub re: String,
    pub im: String,
}

impl Coeff {
    pub fn from_mp(z: &MpComplex) -> Self {
        let (re, im) = z.to_decimal_strings();
        Self { re, im }
    }

    pub fn to_mp(&self, digits: u32) -> Result<MpComplex, CliError> {
        Ok(MpComplex::parse(&self.re, &self.im, digits)?)
    }
}

fn digits_of(prec: Precision) -> Result<u32, CliError> {
    match prec {
        Precision::Digits(d) => Ok(d),
        Precision::Exact => Err(CliError::contract("exact values cannot be written as decimal series")),
    }
}

/// Series or polynomial coefficients in increasing degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesFile {
    pub digits: u32,
    pub coeffs: Vec<Coeff>,
}

impl SeriesFile {
    pub fn from_series(s: &PowerSeries<MpComplex>) -> Result<Self, CliError> {
        Ok(Self { digits: digits_of(s.precision())?, coeffs: s.coeffs().iter().map(Coeff::from_mp).collect() })
    }

    pub fn from_poly(p: &Polynomial<MpComplex>) -> Result<Self, CliError> {
        Ok(Self { digits: digits_of(p.precision())?, coeffs: p.coeffs().iter().map(Coeff::from_mp).collect() })
    }

    fn values(&self) -> Result<Vec<MpComplex>, CliError> {
        self.coeffs.iter().map(|c| c.to_mp(self.digits)).collect()
    }

    pub fn to_series(&self) -> Result<PowerSeries<MpComplex>, CliError> {
        Ok(PowerSeries::new(self.values()?, Precision::Digits(self.digits))?)
    }

    pub fn to_poly(&self) -> Result<Polynomial<MpComplex>, CliError> {
        Ok(Polynomial::new(self.values()?, Precision::Digits(self.digits))?)
    }
}

/// A named polynomial inside a bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedPoly {
    pub name: String,
    pub coeffs: Vec<Coeff>,
}

/// Output of `pade`, `hp1`, `hp2`, `disc` and `komlov`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bundle {
    /// `pade`, `hp1`, `hp2`, `disc` or `komlov`.
    pub kind: String,
    pub digits: u32,
    /// Multi-index (`hp1`) or `[n]` / `[n, tuple]` for the other kinds.
    #[serde(default)]
    pub index: Vec<usize>,
    pub polys: Vec<NamedPoly>,
    /// Residual order of the single defining combination (`pade`, `hp1`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_order: Option<usize>,
    /// Residual orders of `P_0 f^j − P_j`, one per `j` (`hp2`).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub residual_orders: Vec<Option<usize>>,
    pub normal: bool,
}

impl Bundle {
    pub fn new(kind: &str, digits: u32, index: Vec<usize>, normal: bool) -> Self {
        Self {
            kind: kind.into(),
            digits,
            index,
            polys: Vec::new(),
            residual_order: None,
            residual_orders: Vec::new(),
            normal,
        }
    }

    pub fn push(&mut self, name: &str, p: &Polynomial<MpComplex>) {
        self.polys.push(NamedPoly { name: name.into(), coeffs: p.coeffs().iter().map(Coeff::from_mp).collect() });
    }

    pub fn poly(&self, name: &str) -> Result<Polynomial<MpComplex>, CliError> {
        let p =
            self.polys.iter().find(|p| p.name == name).ok_or_else(|| {
                CliError::contract(format!("bundle of kind {} has no polynomial {name:?}", self.kind))
            })?;
        SeriesFile { digits: self.digits, coeffs: p.coeffs.clone() }.to_poly()
    }

    pub fn names(&self) -> Vec<&str> {
        self.polys.iter().map(|p| p.name.as_str()).collect()
    }
}

/// A polynomial file is either a plain coefficient file or a bundle.
pub enum PolySource {
    Plain(SeriesFile),
    Bundle(Bundle),
}

impl PolySource {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let v: serde_json::Value = serde_json::from_str(text)?;
        if v.get("polys").is_some() {
            Ok(Self::Bundle(serde_json::from_value(v)?))
        } else {
            Ok(Self::Plain(serde_json::from_value(v)?))
        }
    }

    /// Pick a polynomial: plain files ignore `name`, bundles require it
    /// unless they hold a single polynomial.
    pub fn select(&self, name: Option<&str>) -> Result<Polynomial<MpComplex>, CliError> {
        match (self, name) {
            (Self::Plain(f), _) => f.to_poly(),
            (Self::Bundle(b), Some(n)) => b.poly(n),
            (Self::Bundle(b), None) if b.polys.len() == 1 => b.poly(&b.polys[0].name),
            (Self::Bundle(b), None) => Err(CliError::contract(format!(
                "bundle holds several polynomials ({}); choose one with --select",
                b.names().join(", ")
            ))),
        }
    }
}

/// Output of `vdp`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VdpFile {
    /// Number of frequency coefficients `ν_1 … ν_K`.
    pub order: usize,
    /// Whether `nu` holds exact rationals (`"p/q"`) or rounded decimals.
    pub exact: bool,
    /// `ν_0 = 1, ν_1, …, ν_K`.
    pub nu: Vec<String>,
    /// The same values as a series in `ε²`.
    pub series: SeriesFile,
}

/// Row of a root table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootRow {
    pub re: String,
    pub im: String,
    pub residual: f64,
}

pub fn roots_csv(r: &RootSet) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for (z, res) in r.roots.iter().zip(&r.residuals) {
        let (re, im) = z.to_decimal_strings();
        w.serialize(RootRow { re, im, residual: *res })?;
    }
    if r.roots.is_empty() {
        w.write_record(["re", "im", "residual"])?;
    }
    finish(w)
}

pub fn read_roots_csv(text: &str, digits: u32) -> Result<Vec<MpComplex>, CliError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.deserialize::<RootRow>()
        .map(|row| {
            let row = row?;
            Ok(MpComplex::parse(&row.re, &row.im, digits)?)
        })
        .collect()
}

/// Row of a point-cloud table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CloudRow {
    pub re: f64,
    pub im: f64,
    pub tag: String,
    pub plane: String,
    pub source: String,
}

/// Order is not part of the CSV columns; it travels inside `source` as
/// `id@order` when nonzero.
pub fn cloud_csv(c: &PointCloud) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let source = if c.order > 0 { format!("{}@{}", c.source, c.order) } else { c.source.clone() };
    for (z, t) in &c.points {
        w.serialize(CloudRow {
            re: z.re,
            im: z.im,
            tag: t.name().into(),
            plane: c.plane.name().into(),
            source: source.clone(),
        })?;
    }
    if c.points.is_empty() {
        w.write_record(["re", "im", "tag", "plane", "source"])?;
    }
    finish(w)
}

pub fn read_cloud_csv(text: &str) -> Result<PointCloud, CliError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let mut cloud: Option<PointCloud> = None;
    for row in r.deserialize::<CloudRow>() {
        let row = row?;
        let plane: Plane = row.plane.parse()?;
        let tag: Tag = row.tag.parse()?;
        let c = cloud.get_or_insert_with(|| {
            let (source, order) = match row.source.rsplit_once('@') {
                Some((s, o)) if o.parse::<usize>().is_ok() => (s.to_string(), o.parse().unwrap_or(0)),
                _ => (row.source.clone(), 0),
            };
            PointCloud::new(source, order, plane)
        });
        if c.plane != plane {
            return Err(CliError::contract("point cloud mixes planes"));
        }
        c.points.push((Complex::new(row.re, row.im), tag));
    }
    Ok(cloud.unwrap_or_else(|| PointCloud::new("", 0, Plane::Z)))
}

/// Row of a rate table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateCsvRow {
    pub order: usize,
    pub budget: usize,
    pub measured: f64,
    pub target: f64,
    pub ratio: f64,
    pub error_log10: f64,
    pub pade_error_log10: Option<f64>,
    pub trivial: bool,
}

pub fn rates_csv(rows: &[RateRow]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(RateCsvRow {
            order: r.order,
            budget: r.budget,
            measured: r.measured,
            target: r.target,
            ratio: r.ratio(),
            error_log10: r.error_log10,
            pade_error_log10: r.pade_error_log10,
            trivial: r.trivial,
        })?;
    }
    finish(w)
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::io(e.to_string()))
}

/// A candidate location in a resonance report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateJson {
    pub re: String,
    pub im: String,
    pub digits: u32,
    pub abs: f64,
}

impl From<&StableCandidate> for CandidateJson {
    fn from(c: &StableCandidate) -> Self {
        let (re, im) = c.location.to_decimal_strings();
        Self { re, im, digits: c.digits, abs: c.location.abs_f64() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairJson {
    pub a: CandidateJson,
    pub b: CandidateJson,
    pub relative_distance: f64,
}

impl From<&CandidatePair> for PairJson {
    fn from(p: &CandidatePair) -> Self {
        Self { a: (&p.a).into(), b: (&p.b).into(), relative_distance: p.relative_distance }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusterJson {
    pub re: f64,
    pub im: f64,
    pub size: usize,
    pub radius: f64,
}

impl From<&Cluster> for ClusterJson {
    fn from(c: &Cluster) -> Self {
        Self { re: c.centroid.re, im: c.centroid.im, size: c.size, radius: c.radius }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctionJson {
    /// Stable discriminant zeros in the closed unit disk.
    pub katz: Vec<CandidateJson>,
    /// Stable discriminant zeros outside the unit disk.
    pub excluded: Vec<CandidateJson>,
    /// Matched discriminant zeros short of the required digits.
    pub unstable: Vec<CandidateJson>,
    pub clusters: Vec<ClusterJson>,
}

impl From<&FunctionAnalysis> for FunctionJson {
    fn from(f: &FunctionAnalysis) -> Self {
        Self {
            katz: f.katz.iter().map(Into::into).collect(),
            excluded: f.outside.iter().map(Into::into).collect(),
            unstable: f.stable.unstable.iter().map(Into::into).collect(),
            clusters: f.clusters.iter().map(Into::into).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanJson {
    pub budget: usize,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub ell: Option<usize>,
}

impl From<&BudgetPlan> for PlanJson {
    fn from(p: &BudgetPlan) -> Self {
        Self { budget: p.budget, n: p.n, m: p.m, ell: p.ell }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KatzJson {
    pub plan: PlanJson,
    pub tol: f64,
    pub digits_required: u32,
    pub shared: Vec<PairJson>,
    pub disagreements: Vec<PairJson>,
    pub unmatched_a: Vec<CandidateJson>,
    pub unmatched_b: Vec<CandidateJson>,
    pub a: FunctionJson,
    pub b: FunctionJson,
}

impl KatzJson {
    pub fn new(r: &KatzReport, tol: f64, digits_required: u32) -> Self {
        Self {
            plan: (&r.plan).into(),
            tol,
            digits_required,
            shared: r.shared.iter().map(Into::into).collect(),
            disagreements: r.disagreements.iter().map(Into::into).collect(),
            unmatched_a: r.unmatched_a.iter().map(Into::into).collect(),
            unmatched_b: r.unmatched_b.iter().map(Into::into).collect(),
            a: (&r.a).into(),
            b: (&r.b).into(),
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

pub fn read_series(path: &Path) -> Result<PowerSeries<MpComplex>, CliError> {
    let f: SeriesFile = serde_json::from_str(&read_text(path)?)?;
    f.to_series()
}

/// Parse `"a+bi"`, `"a-bi"`, `"a"`, `"bi"`, `"i"`, `"-i"` into decimal
/// strings for the real and imaginary parts.
pub fn split_complex(s: &str) -> Result<(String, String), CliError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::contract(format!("not a complex number: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return Ok((t, "0".into()));
    };
    // Split at the last sign that is not the leading one and does not
    // belong to an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1".to_string(),
        "-" => "-1".to_string(),
        other => other.trim_start_matches('+').to_string(),
    };
    Ok((re.trim_start_matches('+').to_string(), im))
}

pub fn parse_complex_f64(s: &str) -> Result<Complex<f64>, CliError> {
    let (re, im) = split_complex(s)?;
    let p = |v: &str| v.parse::<f64>().map_err(|_| CliError::contract(format!("not a complex number: {s:?}")));
    Ok(Complex::new(p(&re)?, p(&im)?))
}

pub fn parse_complex_mp(s: &str, digits: u32) -> Result<MpComplex, CliError> {
    let (re, im) = split_complex(s)?;
    Ok(MpComplex::parse(&re, &im, digits)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        let c = |s: &str| parse_complex_f64(s).unwrap();
        assert_eq!(c("0+2i"), Complex::new(0.0, 2.0));
        assert_eq!(c("0.5196+1.7320i"), Complex::new(0.5196, 1.732));
        assert_eq!(c("-1.5+0.5i"), Complex::new(-1.5, 0.5));
        assert_eq!(c("2"), Complex::new(2.0, 0.0));
        assert_eq!(c("-i"), Complex::new(0.0, -1.0));
        assert_eq!(c("3i"), Complex::new(0.0, 3.0));
        assert_eq!(c("1e-3-2.5E+1i"), Complex::new(1e-3, -25.0));
        assert_eq!(c(" 1 - 2 i "), Complex::new(1.0, -2.0));
        assert!(parse_complex_f64("x+i").is_err());
        assert!(parse_complex_f64("").is_err());
    }

    #[test]
    fn series_file_round_trip() {
        let s = PowerSeries::new(
            vec![MpComplex::from_ratio(1, 3, Precision::Digits(50)), MpComplex::from_f64(-2.5, 1e-20, 50)],
            Precision::Digits(50),
        )
        .unwrap();
        let f = SeriesFile::from_series(&s).unwrap();
        let text = to_json(&f).unwrap();
        let back: SeriesFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_series().unwrap(), s);
    }

    #[test]
    fn cloud_round_trip() {
        let mut c = PointCloud::new("model", 40, Plane::Zeta);
        c.points = vec![(Complex::new(0.1, -0.2), Tag::Pole), (Complex::new(1.0 / 3.0, 2.0), Tag::DiscZero)];
        let text = cloud_csv(&c).unwrap();
        assert!(text.starts_with("re,im,tag,plane,source\n"));
        assert_eq!(read_cloud_csv(&text).unwrap(), c);
    }
}
