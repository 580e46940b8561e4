//! Command-line interface.
//!
//! Every subcommand reads its inputs from files, writes one output (to
//! `--out` or standard output) and reports progress on standard error unless
//! `--quiet` is given. Relative paths are resolved against a base directory:
//! the working directory for direct invocations, the manifest's directory
//! inside `run`.

use std::io::Write;
use std::path::{Path, PathBuf};

use branchpoint_core::analysis::{invert_plane, katz_workflow, KatzOptions, Plane, PointCloud, Tag};
use branchpoint_core::hermite_pade::{discriminant, hp_type1, hp_type2, komlov_from_series, MultiIndex, TypeOneSystem};
use branchpoint_core::models::{model_series, ModelKind, ModelSpec};
use branchpoint_core::numerics::DEFAULT_DIGITS;
use branchpoint_core::pade::pade_diagonal;
use branchpoint_core::potential::{rate_probe_hp, rate_probe_pade, RateRow};
use branchpoint_core::roots::{find_roots_with, RootOptions, RootSet};
use branchpoint_core::vdp::{rational_string, vdp_expand, vdp_nu_series, vdp_nu_series_float};
use clap::{Parser, Subcommand, ValueEnum};

use crate::error::CliError;
use crate::formats::{
    cloud_csv, parse_complex_f64, parse_complex_mp, rates_csv, read_cloud_csv, read_series, read_text, roots_csv,
    to_json, Bundle, KatzJson, PolySource, SeriesFile, VdpFile,
};

#[derive(Clone, Debug, Parser)]
#[command(
    name = "branchpoint",
    version,
    about = "Padé and Hermite–Padé branch-point analysis",
    args_override_self = true
)]
pub struct Cli {
    /// Working precision in decimal digits for commands that generate data.
    #[arg(long, global = true, default_value_t = DEFAULT_DIGITS)]
    pub digits: u32,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Suppress progress messages.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RateMode {
    Pade,
    Hp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlaneArg {
    Z,
    Zeta,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Taylor coefficients of a model function.
    Model {
        #[arg(long, value_parser = parse_kind)]
        kind: ModelKind,
        /// Complex parameter such as `0.5+1.2i`; repeat in order. Omit all
        /// to use the defaults.
        #[arg(long = "param", allow_hyphen_values = true)]
        params: Vec<String>,
        /// Number of coefficients.
        #[arg(long)]
        n: usize,
    },
    /// Van der Pol frequency coefficients `ν_0 … ν_K` as a series in `ε²`.
    Vdp {
        /// `K`, the number of coefficients after `ν_0`.
        #[arg(long)]
        order: usize,
        /// Use the fixed-precision generator instead of exact rationals.
        #[arg(long)]
        float: bool,
    },
    /// Diagonal Padé approximant `[n/n]`.
    Pade {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Type I Hermite–Padé polynomials for `[1, f, …]`.
    Hp1 {
        #[arg(long)]
        series: PathBuf,
        /// Degrees, e.g. `10,10,10`.
        #[arg(long, value_delimiter = ',')]
        index: Vec<usize>,
    },
    /// Type II Hermite–Padé polynomials (pair or triple).
    Hp2 {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        tuple: usize,
    },
    /// Discriminant `Q_1² − 4 Q_0 Q_2` of a three-polynomial type I system,
    /// read from an `hp1` bundle or computed from a series at order `m`.
    Disc {
        #[arg(long, conflicts_with_all = ["series", "m"])]
        system: Option<PathBuf>,
        #[arg(long, requires = "m")]
        series: Option<PathBuf>,
        #[arg(long, requires = "series")]
        m: Option<usize>,
    },
    /// Determinantal pair `H_0, H_1` from the four-polynomial systems.
    Komlov {
        #[arg(long)]
        series: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Zeros of a polynomial: a root table, or a tagged point cloud when any
    /// selection carries a tag (`--select q:pole --select p:zero`).
    Roots {
        #[arg(long)]
        poly: PathBuf,
        /// `name` or `name:tag` of a bundle polynomial.
        #[arg(long)]
        select: Vec<String>,
        /// Source label for point clouds; defaults to the file stem.
        #[arg(long)]
        source: Option<String>,
        /// Plane of the emitted cloud.
        #[arg(long, value_enum, default_value_t = PlaneArg::Z)]
        plane: PlaneArg,
        #[arg(long, default_value_t = RootOptions::default().max_sweeps)]
        max_sweeps: usize,
    },
    /// Map a point cloud through `z ↦ 1/z`.
    Invert {
        #[arg(long)]
        cloud: PathBuf,
    },
    /// Convergence-rate table for the Zhukovsky model.
    Rates {
        #[arg(long, value_parser = parse_kind, default_value = "zhukovsky_markov")]
        model: ModelKind,
        #[arg(long = "A", default_value_t = 2.0)]
        a: f64,
        #[arg(long = "B", default_value_t = 3.0)]
        b: f64,
        /// Probe point `ζ`, e.g. `0+2i`.
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
        #[arg(long, value_enum, default_value_t = RateMode::Pade)]
        mode: RateMode,
        #[arg(long, value_delimiter = ',')]
        orders: Vec<usize>,
    },
    /// Two-step resonance-point analysis of two series.
    Katz {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        budget: usize,
        #[arg(long, default_value_t = KatzOptions::default().tol)]
        tol: f64,
        #[arg(long, default_value_t = KatzOptions::default().digits_required)]
        digits_required: u32,
        #[arg(long, default_value_t = KatzOptions::default().cluster_radius)]
        radius: f64,
        #[arg(long, default_value_t = KatzOptions::default().near)]
        near: f64,
        /// Also write both point clouds to this CSV file.
        #[arg(long)]
        cloud: Option<PathBuf>,
    },
    /// Execute a JSON manifest of steps.
    Run { manifest: PathBuf },
}

fn parse_kind(s: &str) -> Result<ModelKind, String> {
    s.parse().map_err(|e: branchpoint_core::Error| e.to_string())
}

/// Execution context shared by all commands.
#[derive(Clone, Debug)]
pub struct Ctx {
    pub base: PathBuf,
    pub digits: u32,
    pub quiet: bool,
}

impl Ctx {
    pub fn path(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base.join(p)
        }
    }

    pub fn progress(&self, msg: impl AsRef<str>) {
        if !self.quiet {
            eprintln!("{}", msg.as_ref());
        }
    }
}

/// Write `text` to `out` (resolved against the base) or standard output.
pub fn emit(ctx: &Ctx, out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => {
            let path = ctx.path(p);
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|e| CliError::io(format!("{}: {e}", dir.display())))?;
            }
            std::fs::write(&path, text).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

/// Parse command-line words (including the program name) and run.
pub fn run_args<I, T>(args: I, base: &Path) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::contract(e.to_string()))?;
    execute(&cli, base)
}

/// Run a parsed command.
pub fn execute(cli: &Cli, base: &Path) -> Result<(), CliError> {
    let ctx = Ctx { base: base.to_path_buf(), digits: cli.digits, quiet: cli.quiet };
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Model { kind, params, n } => cmd_model(&ctx, out, *kind, params, *n),
        Command::Vdp { order, float } => cmd_vdp(&ctx, out, *order, *float),
        Command::Pade { series, n } => cmd_pade(&ctx, out, series, *n),
        Command::Hp1 { series, index } => cmd_hp1(&ctx, out, series, index),
        Command::Hp2 { series, n, tuple } => cmd_hp2(&ctx, out, series, *n, *tuple),
        Command::Disc { system, series, m } => cmd_disc(&ctx, out, system.as_deref(), series.as_deref(), *m),
        Command::Komlov { series, n } => cmd_komlov(&ctx, out, series, *n),
        Command::Roots { poly, select, source, plane, max_sweeps } => {
            cmd_roots(&ctx, out, poly, select, source.as_deref(), *plane, *max_sweeps)
        }
        Command::Invert { cloud } => {
            let c = read_cloud_csv(&read_text(&ctx.path(cloud))?)?;
            emit(&ctx, out, &cloud_csv(&invert_plane(&c)?)?)
        }
        Command::Rates { model, a, b, zeta, mode, orders } => cmd_rates(&ctx, out, *model, *a, *b, zeta, *mode, orders),
        Command::Katz { a, b, budget, tol, digits_required, radius, near, cloud } => {
            let opts =
                KatzOptions { tol: *tol, digits_required: *digits_required, cluster_radius: *radius, near: *near };
            cmd_katz(&ctx, out, a, b, *budget, &opts, cloud.as_deref())
        }
        Command::Run { manifest } => {
            crate::manifest::run_manifest(&ctx.path(manifest), cli.digits_explicit(), ctx.quiet)
        }
    }
}

impl Cli {
    /// `--digits` as given; `None` when left at the default so a manifest's
    /// own setting applies.
    fn digits_explicit(&self) -> Option<u32> {
        (self.digits != DEFAULT_DIGITS).then_some(self.digits)
    }
}

fn cmd_model(ctx: &Ctx, out: Option<&Path>, kind: ModelKind, params: &[String], n: usize) -> Result<(), CliError> {
    let params = params.iter().map(|p| parse_complex_f64(p)).collect::<Result<Vec<_>, _>>()?;
    let spec = ModelSpec::new(kind, params)?;
    ctx.progress(format!("model: {} with {n} coefficients at {} digits", spec.id(), ctx.digits));
    let s = model_series(&spec, n, ctx.digits)?;
    emit(ctx, out, &to_json(&SeriesFile::from_series(&s)?)?)
}

fn cmd_vdp(ctx: &Ctx, out: Option<&Path>, order: usize, float: bool) -> Result<(), CliError> {
    ctx.progress(format!("vdp: ν_0 … ν_{order} ({})", if float { "fixed precision" } else { "exact" }));
    let file = if float {
        let s = vdp_nu_series_float(order, ctx.digits)?;
        let nu = s.coeffs().iter().map(|c| c.to_decimal_strings().0).collect();
        VdpFile { order, exact: false, nu, series: SeriesFile::from_series(&s)? }
    } else {
        let e = vdp_expand(2 * order);
        let nu = e.nu.iter().take(order + 1).map(rational_string).collect();
        let s = vdp_nu_series(order, ctx.digits)?;
        VdpFile { order, exact: true, nu, series: SeriesFile::from_series(&s)? }
    };
    emit(ctx, out, &to_json(&file)?)
}

fn series_digits(s: &branchpoint_core::PowerSeries<branchpoint_core::MpComplex>) -> u32 {
    match s.precision() {
        branchpoint_core::Precision::Digits(d) => d,
        branchpoint_core::Precision::Exact => DEFAULT_DIGITS,
    }
}

fn cmd_pade(ctx: &Ctx, out: Option<&Path>, series: &Path, n: usize) -> Result<(), CliError> {
    let f = read_series(&ctx.path(series))?;
    let p = pade_diagonal(&f, n)?;
    ctx.progress(format!("pade: [{n}/{n}] normal = {}, residual order = {:?}", p.normal, p.residual_order));
    let mut b = Bundle::new("pade", series_digits(&f), vec![n], p.normal);
    b.push("q", &p.q);
    b.push("p", &p.p);
    b.residual_order = p.residual_order;
    emit(ctx, out, &to_json(&b)?)
}

fn cmd_hp1(ctx: &Ctx, out: Option<&Path>, series: &Path, index: &[usize]) -> Result<(), CliError> {
    let f = read_series(&ctx.path(series))?;
    let t = hp_type1(&f, &MultiIndex::new(index.to_vec())?)?;
    ctx.progress(format!("hp1: index {index:?} normal = {}, residual order = {:?}", t.normal, t.residual_order));
    let mut b = Bundle::new("hp1", series_digits(&f), index.to_vec(), t.normal);
    for (j, q) in t.q.iter().enumerate() {
        b.push(&format!("q{j}"), q);
    }
    b.residual_order = t.residual_order;
    emit(ctx, out, &to_json(&b)?)
}

fn cmd_hp2(ctx: &Ctx, out: Option<&Path>, series: &Path, n: usize, tuple: usize) -> Result<(), CliError> {
    let f = read_series(&ctx.path(series))?;
    let t = hp_type2(&f, n, tuple)?;
    ctx.progress(format!(
        "hp2: n = {n}, tuple = {tuple}, normal = {}, residual orders = {:?}",
        t.normal, t.residual_orders
    ));
    let mut b = Bundle::new("hp2", series_digits(&f), vec![n, tuple], t.normal);
    for (j, p) in t.p.iter().enumerate() {
        b.push(&format!("p{j}"), p);
    }
    b.residual_orders = t.residual_orders.clone();
    emit(ctx, out, &to_json(&b)?)
}

fn cmd_disc(
    ctx: &Ctx,
    out: Option<&Path>,
    system: Option<&Path>,
    series: Option<&Path>,
    m: Option<usize>,
) -> Result<(), CliError> {
    let (t, digits) = match (system, series, m) {
        (Some(path), _, _) => {
            let b: Bundle = serde_json::from_str(&read_text(&ctx.path(path))?)?;
            if b.kind != "hp1" || b.polys.len() != 3 {
                return Err(CliError::contract("disc needs an hp1 bundle with three polynomials"));
            }
            let q = (0..3).map(|j| b.poly(&format!("q{j}"))).collect::<Result<Vec<_>, _>>()?;
            let t = TypeOneSystem {
                index: MultiIndex::new(b.index.clone())?,
                q,
                residual_order: b.residual_order,
                normal: b.normal,
            };
            (t, b.digits)
        }
        (None, Some(path), Some(m)) => {
            let f = read_series(&ctx.path(path))?;
            (hp_type1(&f, &MultiIndex::balanced(m, 3)?)?, series_digits(&f))
        }
        _ => return Err(CliError::contract("disc needs --system or --series with --m")),
    };
    let d = discriminant(&t)?;
    ctx.progress(format!("disc: degree {:?}", d.degree()));
    let mut b = Bundle::new("disc", digits, t.index.degrees().to_vec(), t.normal);
    b.push("d", &d);
    b.residual_order = t.residual_order;
    emit(ctx, out, &to_json(&b)?)
}

fn cmd_komlov(ctx: &Ctx, out: Option<&Path>, series: &Path, n: usize) -> Result<(), CliError> {
    let f = read_series(&ctx.path(series))?;
    let k = komlov_from_series(&f, n)?;
    ctx.progress(format!("komlov: n = {n}, normal = {}", k.normal));
    let mut b = Bundle::new("komlov", series_digits(&f), vec![n], k.normal);
    b.push("h0", &k.h0);
    b.push("h1", &k.h1);
    emit(ctx, out, &to_json(&b)?)
}

fn solve(p: &branchpoint_core::Polynomial<branchpoint_core::MpComplex>, sweeps: usize) -> Result<RootSet, CliError> {
    match p.degree() {
        Some(d) if d > 0 => Ok(find_roots_with(p, RootOptions { max_sweeps: sweeps })?),
        _ => Ok(RootSet { roots: Vec::new(), residuals: Vec::new(), iterations: 0, converged: true }),
    }
}

fn cmd_roots(
    ctx: &Ctx,
    out: Option<&Path>,
    poly: &Path,
    select: &[String],
    source: Option<&str>,
    plane: PlaneArg,
    sweeps: usize,
) -> Result<(), CliError> {
    let path = ctx.path(poly);
    let src = PolySource::parse(&read_text(&path)?)?;
    let tagged = select.iter().any(|s| s.contains(':'));
    if !tagged {
        if select.len() > 1 {
            return Err(CliError::contract("several selections need tags to form a point cloud"));
        }
        let p = src.select(select.first().map(String::as_str))?;
        let r = solve(&p, sweeps)?;
        ctx.progress(format!("roots: {} zeros, {} sweeps", r.roots.len(), r.iterations));
        emit(ctx, out, &roots_csv(&r)?)?;
        return converged(&r);
    }
    let label = source
        .map(String::from)
        .unwrap_or_else(|| path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default());
    let order = match &src {
        PolySource::Bundle(b) => b.index.first().copied().unwrap_or(0),
        PolySource::Plain(_) => 0,
    };
    let mut cloud = PointCloud::new(label, order, Plane::Z);
    let mut all_converged = true;
    for s in select {
        let (name, tag) = s.split_once(':').ok_or_else(|| CliError::contract(format!("selection {s:?} has no tag")))?;
        let tag: Tag = tag.parse()?;
        let r = solve(&src.select(Some(name))?, sweeps)?;
        all_converged &= r.converged;
        ctx.progress(format!("roots: {name} -> {} {tag} points", r.roots.len()));
        cloud.push_roots(&r, tag);
    }
    if plane == PlaneArg::Zeta {
        cloud = invert_plane(&cloud)?;
    }
    emit(ctx, out, &cloud_csv(&cloud)?)?;
    if all_converged {
        Ok(())
    } else {
        Err(CliError::non_convergence("root iteration did not converge"))
    }
}

fn converged(r: &RootSet) -> Result<(), CliError> {
    if r.converged {
        Ok(())
    } else {
        Err(CliError::non_convergence(format!("root iteration did not converge after {} sweeps", r.iterations)))
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_rates(
    ctx: &Ctx,
    out: Option<&Path>,
    model: ModelKind,
    a: f64,
    b: f64,
    zeta: &str,
    mode: RateMode,
    orders: &[usize],
) -> Result<(), CliError> {
    if model != ModelKind::Zhukovsky {
        return Err(CliError::contract("rate probes are defined for the zhukovsky_markov model only"));
    }
    ModelSpec::zhukovsky(a, b)?;
    let z = parse_complex_mp(zeta, ctx.digits)?;
    ctx.progress(format!("rates: {mode:?} at ζ = {zeta}, orders {orders:?}"));
    // Each order is independent; probe them concurrently.
    let rows: Vec<Result<Vec<RateRow>, CliError>> = std::thread::scope(|s| {
        let handles: Vec<_> = orders
            .iter()
            .map(|&k| {
                let z = z.clone();
                s.spawn(move || {
                    let r = match mode {
                        RateMode::Pade => rate_probe_pade(a, b, &z, &[k]),
                        RateMode::Hp => rate_probe_hp(a, b, &z, &[k]),
                    };
                    r.map_err(CliError::from)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Err(CliError::io("worker panicked")))).collect()
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?.concat();
    emit(ctx, out, &rates_csv(&rows)?)
}

fn cmd_katz(
    ctx: &Ctx,
    out: Option<&Path>,
    a: &Path,
    b: &Path,
    budget: usize,
    opts: &KatzOptions,
    cloud: Option<&Path>,
) -> Result<(), CliError> {
    let fa = read_series(&ctx.path(a))?;
    let fb = read_series(&ctx.path(b))?;
    ctx.progress(format!("katz: budget {budget}, tolerance {:e}", opts.tol));
    let r = katz_workflow(&fa, &fb, budget, opts)?;
    ctx.progress(format!(
        "katz: {} shared, {} disagreements, {} + {} unmatched",
        r.shared.len(),
        r.disagreements.len(),
        r.unmatched_a.len(),
        r.unmatched_b.len()
    ));
    if let Some(path) = cloud {
        let mut all = r.a.cloud.clone();
        all.source = a.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "a".into());
        let mut text = cloud_csv(&all)?;
        let mut other = r.b.cloud.clone();
        other.source = b.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "b".into());
        let second = cloud_csv(&other)?;
        // Append without repeating the header.
        text.push_str(second.split_once('\n').map_or("", |(_, rest)| rest));
        emit(ctx, Some(path), &text)?;
    }
    emit(ctx, out, &to_json(&KatzJson::new(&r, opts.tol, opts.digits_required))?)
}
