//! Command-line front end.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::bands::{build_pointwise_interval, build_uniform_band};
use crate::bootstrap::{pointwise_draws_grid, quantile_of_draws, uniform_sup_draws, validate_alpha, BootstrapConfig, DEFAULT_REPLICATES};
use crate::dist_est::{EmpiricalCdf, Sample, SmoothedCdf};
use crate::error::{Error, Result};
use crate::grid::{Interval, DEFAULT_GRID_POINTS};
use crate::io::documents::{
    bands_from_json, bands_to_json, report_table, to_json, write_band_csv, write_pointwise_csv, BandDocument, PointwiseDocument,
    PointwiseMeta, ReportDocument,
};
use crate::io::ingest::{ingest_csv, ColumnSelector, IngestOptions};
use crate::io::svg;
use crate::kernels::{check_order_compatibility, BandwidthRule, KernelSpec};
use crate::otmap::{scale_plugin, EmpiricalOtMapEstimate, OtMapEstimate};
use crate::simulation::{run_pointwise_study, run_uniform_study, GammaParameter, ReferenceDistribution, SimulationDesign};

/// Iteration count used unless a config or flag says otherwise.
pub const DESK_ITERATIONS: usize = 300;
pub const PAPER_ITERATIONS: usize = 1000;

#[derive(Debug, Parser)]
#[command(name = "otband", version, about = "Confidence bands for one-dimensional optimal transport maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kernel estimate of the transport map with a uniform bootstrap band.
    FitBand(FitBandArgs),
    /// Empirical plug-in estimate with pointwise bootstrap intervals.
    Pointwise(PointwiseArgs),
    /// Monte Carlo coverage study.
    Simulate(SimulateArgs),
    /// Render an SVG from a band, pointwise or report JSON document.
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// CSV file holding the source sample.
    #[arg(long)]
    pub x_file: PathBuf,
    /// CSV file holding the target sample.
    #[arg(long)]
    pub y_file: PathBuf,
    /// Column to read from both files: zero-based index or header name.
    #[arg(long, default_value = "0")]
    pub column: ColumnSelector,
    /// Non-numeric cells to skip per file before failing.
    #[arg(long, default_value_t = 0)]
    pub max_bad_cells: usize,
}

#[derive(Debug, Args)]
pub struct BootstrapArgs {
    #[arg(long, default_value_t = DEFAULT_REPLICATES)]
    pub replicates: usize,
    /// Miscoverage level; repeat for several levels.
    #[arg(long = "alpha", default_values_t = [0.05])]
    pub alpha: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// JSON output path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// CSV output path. With several alpha levels the level is appended to the file stem.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// SVG figure path.
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FitBandArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = KernelArg::Gaussian)]
    pub kernel: KernelArg,
    /// Assumed smoothness; the bandwidth is c·n^(-1/(2β+1)).
    #[arg(long, default_value_t = 1.25)]
    pub beta: f64,
    #[arg(long, default_value_t = 2.0)]
    pub bandwidth_constant: f64,
    /// Band interval [a, b]; defaults to the central 95% of the source sample.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    pub interval: Option<Vec<f64>>,
    #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
    pub grid_points: usize,
    #[command(flatten)]
    pub bootstrap: BootstrapArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PointwiseArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Evaluation point; repeat for several. Without any, a grid on --interval is used.
    #[arg(long = "at", allow_negative_numbers = true)]
    pub at: Vec<f64>,
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    pub interval: Option<Vec<f64>>,
    #[arg(long, default_value_t = 64)]
    pub grid_points: usize,
    #[command(flatten)]
    pub bootstrap: BootstrapArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StudyKind {
    Uniform,
    Pointwise,
    Both,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// TOML design file; unspecified fields take the built-in normal-to-gamma design.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = StudyKind::Both)]
    pub study: StudyKind,
    #[arg(long)]
    pub iterations: Option<usize>,
    /// Use the full iteration count of the reference study.
    #[arg(long)]
    pub paper_fidelity: bool,
    #[arg(long)]
    pub replicates: Option<usize>,
    #[arg(long = "n", value_name = "N")]
    pub n_values: Vec<usize>,
    #[arg(long = "alpha")]
    pub alpha: Vec<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub grid_points: Option<usize>,
    #[arg(long)]
    pub kernel: Option<KernelArg>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub bandwidth_constant: Option<f64>,
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    pub interval: Option<Vec<f64>>,
    /// JSON report path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Text table path; printed to standard output when --out is given and this is not.
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Coverage and width against n, as SVG.
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// JSON document written by fit-band, pointwise or simulate.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Gaussian,
    Epanechnikov,
}

impl From<KernelArg> for KernelSpec {
    fn from(k: KernelArg) -> Self {
        match k {
            KernelArg::Gaussian => KernelSpec::Gaussian,
            KernelArg::Epanechnikov => KernelSpec::Epanechnikov,
        }
    }
}

/// Design file: every field optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignFile {
    pub source: Option<DistributionSpec>,
    pub target: Option<DistributionSpec>,
    pub n_values: Option<Vec<usize>>,
    pub kappa: Option<f64>,
    pub kernel: Option<KernelSpec>,
    pub beta: Option<f64>,
    pub bandwidth_constant: Option<f64>,
    pub interval: Option<[f64; 2]>,
    pub grid_points: Option<usize>,
    pub alpha_levels: Option<Vec<f64>>,
    pub mc_iterations: Option<usize>,
    pub replicates: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum DistributionSpec {
    Normal { mean: f64, sd: f64 },
    Gamma { shape: f64, rate: Option<f64>, scale: Option<f64> },
}

impl DistributionSpec {
    pub fn resolve(self) -> Result<ReferenceDistribution> {
        match self {
            DistributionSpec::Normal { mean, sd } => ReferenceDistribution::normal(mean, sd),
            DistributionSpec::Gamma { shape, rate, scale } => match (rate, scale) {
                (Some(r), None) => ReferenceDistribution::gamma(shape, r, GammaParameter::Rate),
                (None, Some(s)) => ReferenceDistribution::gamma(shape, s, GammaParameter::Scale),
                _ => Err(Error::config("gamma needs exactly one of `rate` or `scale`")),
            },
        }
    }
}

impl DesignFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::config(format!("invalid design file: {}", e.message())))
    }

    pub fn into_design(self) -> Result<SimulationDesign> {
        let mut d = SimulationDesign { mc_iterations: DESK_ITERATIONS, ..SimulationDesign::default_study() };
        if let Some(s) = self.source {
            d.source = s.resolve()?;
        }
        if let Some(t) = self.target {
            d.target = t.resolve()?;
        }
        if let Some(v) = self.n_values {
            d.n_values = v;
        }
        if let Some(v) = self.kappa {
            d.kappa = v;
        }
        if let Some(v) = self.kernel {
            d.kernel = v;
        }
        if let Some(v) = self.beta {
            d.beta = v;
        }
        if let Some(v) = self.bandwidth_constant {
            d.bandwidth_constant = v;
        }
        if let Some([a, b]) = self.interval {
            d.interval = Interval::new(a, b)?;
        }
        if let Some(v) = self.grid_points {
            d.grid_points = v;
        }
        if let Some(v) = self.alpha_levels {
            d.alpha_levels = v;
        }
        if let Some(v) = self.mc_iterations {
            d.mc_iterations = v;
        }
        if let Some(v) = self.replicates {
            d.replicates = v;
        }
        if let Some(v) = self.seed {
            d.seed = v;
        }
        Ok(d)
    }
}

/// Parses arguments, runs, and returns the process exit code.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error[{}]: {e}", e.category());
        return e.exit_code();
    }
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("error[{}]: {msg}", e.category());
            e.exit_code()
        }
    }
}

/// Caps the worker pool at `OTBAND_THREADS` when set.
fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("OTBAND_THREADS") else {
        return Ok(());
    };
    let threads: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Error::config(format!("OTBAND_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::config(format!("cannot configure worker pool: {e}")))
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::FitBand(a) => cmd_fit_band(&a),
        Command::Pointwise(a) => cmd_pointwise(&a),
        Command::Simulate(a) => cmd_simulate(&a),
        Command::Plot(a) => cmd_plot(&a),
    }
}

fn check_writable(path: &Option<PathBuf>) -> Result<()> {
    if let Some(p) = path {
        let parent = p.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
        if !parent.is_dir() {
            return Err(Error::config(format!("output directory {} does not exist", parent.display())));
        }
    }
    Ok(())
}

fn validate_alphas(alphas: &[f64]) -> Result<()> {
    if alphas.is_empty() {
        return Err(Error::config("at least one alpha level is required"));
    }
    alphas.iter().try_for_each(|&a| validate_alpha(a))
}

fn load_samples(input: &InputArgs) -> Result<(Sample, Sample)> {
    let opts = IngestOptions { nonnumeric_tolerance: input.max_bad_cells };
    let mut out = Vec::with_capacity(2);
    for path in [&input.x_file, &input.y_file] {
        let got = ingest_csv(path, &input.column, opts)?;
        if got.dropped_nonfinite + got.dropped_nonnumeric > 0 {
            eprintln!(
                "note: {}: dropped {} non-finite and {} non-numeric rows",
                path.display(),
                got.dropped_nonfinite,
                got.dropped_nonnumeric
            );
        }
        out.push(got.sample);
    }
    let y = out.pop().expect("two samples");
    let x = out.pop().expect("two samples");
    Ok((x, y))
}

fn flag_interval(flag: &Option<Vec<f64>>) -> Result<Option<Interval>> {
    match flag.as_deref() {
        Some([a, b]) => Interval::new(*a, *b).map(Some),
        Some(_) => Err(Error::config("--interval takes exactly two values")),
        None => Ok(None),
    }
}

/// The 2.5% and 97.5% order statistics of `x`.
fn central_interval(x: &Sample) -> Result<Interval> {
    let e = EmpiricalCdf::new(x.clone());
    Interval::new(e.quantile(0.025)?, e.quantile(0.975)?)
        .map_err(|_| Error::data("source sample is too concentrated for a default interval; pass --interval"))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::data(format!("cannot write {}: {e}", path.display())))
}

fn emit_json(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_text(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn csv_path(base: &Path, alpha: f64, several: bool) -> PathBuf {
    if !several {
        return base.to_path_buf();
    }
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("band");
    let ext = base.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    base.with_file_name(format!("{stem}-alpha{alpha}.{ext}"))
}

pub fn cmd_fit_band(a: &FitBandArgs) -> Result<()> {
    let kernel = KernelSpec::from(a.kernel);
    let rule = BandwidthRule::new(a.beta, a.bandwidth_constant)?;
    if !check_order_compatibility(kernel, a.beta) {
        return Err(Error::config(format!(
            "the {kernel} kernel has order {}; beta must be below {}",
            kernel.order(),
            f64::from(kernel.order()) - 0.5
        )));
    }
    validate_alphas(&a.bootstrap.alpha)?;
    let explicit = flag_interval(&a.interval)?;
    for p in [&a.output.out, &a.output.csv, &a.output.plot] {
        check_writable(p)?;
    }

    let (x, y) = load_samples(&a.input)?;
    let interval = match explicit {
        Some(iv) => iv,
        None => central_interval(&x)?,
    };
    let grid = interval.grid(a.grid_points)?;
    let cfg = BootstrapConfig::new(a.bootstrap.replicates, a.bootstrap.seed, grid, a.bootstrap.alpha.clone())?;
    let (n, m) = (x.len(), y.len());
    let map = OtMapEstimate::new(SmoothedCdf::fit(x, kernel, rule.bandwidth(n)?)?, SmoothedCdf::fit(y, kernel, rule.bandwidth(m)?)?)?;
    let scale = scale_plugin(&map, &cfg.grid)?;
    let floored = scale.floor_applied.iter().filter(|&&f| f).count();
    if floored > 0 {
        eprintln!("note: plug-in scale was floored at {floored} grid points");
    }
    let draws = uniform_sup_draws(&map, &scale, &cfg)?;

    let mut docs = Vec::new();
    for &alpha in &cfg.alpha_levels {
        let band = build_uniform_band(&map, &scale, quantile_of_draws(&draws, alpha)?, alpha)?
            .with_provenance(Some(a.beta), Some(a.bootstrap.seed));
        let doc = BandDocument::from_band(&band, cfg.replicates);
        doc.validate()?;
        docs.push(doc);
    }
    emit_json(&a.output.out, &bands_to_json(&docs)?)?;
    if let Some(base) = &a.output.csv {
        for d in &docs {
            let path = csv_path(base, d.meta.alpha, docs.len() > 1);
            let file = fs::File::create(&path).map_err(|e| Error::data(format!("cannot write {}: {e}", path.display())))?;
            write_band_csv(d, file)?;
        }
    }
    if let Some(p) = &a.output.plot {
        write_text(p, &svg::band_svg(&docs))?;
    }
    Ok(())
}

pub fn cmd_pointwise(a: &PointwiseArgs) -> Result<()> {
    validate_alphas(&a.bootstrap.alpha)?;
    let explicit = flag_interval(&a.interval)?;
    if a.at.iter().any(|v| !v.is_finite()) {
        return Err(Error::config("evaluation points must be finite"));
    }
    for p in [&a.output.out, &a.output.csv, &a.output.plot] {
        check_writable(p)?;
    }
    let (x, y) = load_samples(&a.input)?;
    let points = if a.at.is_empty() {
        match explicit {
            Some(iv) => iv,
            None => central_interval(&x)?,
        }
        .grid(a.grid_points)?
    } else {
        let mut p = a.at.clone();
        p.sort_by(f64::total_cmp);
        p.dedup();
        p
    };
    let cfg = BootstrapConfig::new(a.bootstrap.replicates, a.bootstrap.seed, points, a.bootstrap.alpha.clone())?;
    let (n, m) = (x.len(), y.len());
    let est = EmpiricalOtMapEstimate::new(EmpiricalCdf::new(x), EmpiricalCdf::new(y));
    let draws = pointwise_draws_grid(&est, &cfg.grid, &cfg)?;

    let mut docs = Vec::new();
    for &alpha in &cfg.alpha_levels {
        let intervals = draws.iter().map(|d| build_pointwise_interval(&est, d, alpha)).collect::<Result<Vec<_>>>()?;
        let meta = PointwiseMeta { n, m, alpha, replicates: cfg.replicates, seed: Some(cfg.seed) };
        docs.push(PointwiseDocument::new(meta, &intervals));
    }
    let json = match docs.as_slice() {
        [one] => to_json(one)?,
        many => to_json(&many)?,
    };
    emit_json(&a.output.out, &json)?;
    if let Some(base) = &a.output.csv {
        for d in &docs {
            let path = csv_path(base, d.meta.alpha, docs.len() > 1);
            let file = fs::File::create(&path).map_err(|e| Error::data(format!("cannot write {}: {e}", path.display())))?;
            write_pointwise_csv(d, file)?;
        }
    }
    if let Some(p) = &a.output.plot {
        write_text(p, &svg::pointwise_svg(&docs))?;
    }
    Ok(())
}

pub fn resolve_design(a: &SimulateArgs) -> Result<SimulationDesign> {
    let file = match &a.config {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Error::config(format!("cannot read {}: {e}", p.display())))?;
            DesignFile::parse(&text)?
        }
        None => DesignFile::default(),
    };
    let from_file = file.mc_iterations.is_some();
    let mut d = file.into_design()?;
    if a.paper_fidelity && !from_file {
        d.mc_iterations = PAPER_ITERATIONS;
    }
    if let Some(v) = a.iterations {
        d.mc_iterations = v;
    }
    if let Some(v) = a.replicates {
        d.replicates = v;
    }
    if !a.n_values.is_empty() {
        d.n_values = a.n_values.clone();
    }
    if !a.alpha.is_empty() {
        d.alpha_levels = a.alpha.clone();
    }
    if let Some(v) = a.seed {
        d.seed = v;
    }
    if let Some(v) = a.grid_points {
        d.grid_points = v;
    }
    if let Some(k) = a.kernel {
        d.kernel = k.into();
    }
    if let Some(v) = a.beta {
        d.beta = v;
    }
    if let Some(v) = a.bandwidth_constant {
        d.bandwidth_constant = v;
    }
    if let Some(iv) = flag_interval(&a.interval)? {
        d.interval = iv;
    }
    d.validate()?;
    Ok(d)
}

pub fn cmd_simulate(a: &SimulateArgs) -> Result<()> {
    let design = resolve_design(a)?;
    for p in [&a.out, &a.table, &a.plot] {
        check_writable(p)?;
    }
    let report = match a.study {
        StudyKind::Uniform => run_uniform_study(&design)?,
        StudyKind::Pointwise => run_pointwise_study(&design)?,
        StudyKind::Both => {
            let mut r = run_uniform_study(&design)?;
            let p = run_pointwise_study(&design)?;
            r.pointwise = p.pointwise;
            r.failure_log.extend(p.failure_log);
            r
        }
    };
    let table = report_table(&report);
    let plot = a.plot.as_ref().map(|_| svg::coverage_svg(&report));
    emit_json(&a.out, &to_json(&ReportDocument::new(design, report))?)?;
    match (&a.table, &a.out) {
        (Some(p), _) => write_text(p, &table)?,
        (None, Some(_)) => print!("{table}"),
        (None, None) => eprint!("{table}"),
    }
    if let (Some(p), Some(svg)) = (&a.plot, plot) {
        write_text(p, &svg)?;
    }
    Ok(())
}

pub fn cmd_plot(a: &PlotArgs) -> Result<()> {
    check_writable(&Some(a.out.clone()))?;
    let text = fs::read_to_string(&a.input).map_err(|e| Error::data(format!("cannot read {}: {e}", a.input.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let probe = if value.is_array() { value.get(0).cloned().unwrap_or_default() } else { value.clone() };
    let svg = if probe.get("band").is_some() {
        svg::band_svg(&bands_from_json(&text)?)
    } else if probe.get("intervals").is_some() {
        let docs: Vec<PointwiseDocument> =
            if value.is_array() { serde_json::from_value(value)? } else { vec![serde_json::from_value(value)?] };
        svg::pointwise_svg(&docs)
    } else if probe.get("design").is_some() {
        let doc: ReportDocument = serde_json::from_value(value)?;
        svg::coverage_svg(&doc.report)
    } else {
        return Err(Error::data(format!("{} is not a band, pointwise or report document", a.input.display())));
    };
    write_text(&a.out, &svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn design_file_overrides_defaults() {
        let text = r#"
            n_values = [100, 400]
            mc_iterations = 5
            interval = [-1.0, 1.5]
            [target]
            kind = "gamma"
            shape = 5.0
            scale = 2.0
        "#;
        let d = DesignFile::parse(text).unwrap().into_design().unwrap();
        assert_eq!(d.n_values, vec![100, 400]);
        assert_eq!(d.mc_iterations, 5);
        assert_eq!(d.interval, Interval { a: -1.0, b: 1.5 });
        assert_eq!(d.target, ReferenceDistribution::gamma(5.0, 0.5, GammaParameter::Rate).unwrap());
        assert_eq!(d.replicates, DEFAULT_REPLICATES);
    }

    #[test]
    fn design_file_rejects_mistakes() {
        assert!(matches!(DesignFile::parse("n_value = [1]"), Err(Error::Config(_))));
        let both = "[target]\nkind = \"gamma\"\nshape = 5.0\nrate = 0.5\nscale = 2.0\n";
        assert!(DesignFile::parse(both).unwrap().into_design().is_err());
        assert!(DesignFile::parse("interval = [1.0, 0.0]").unwrap().into_design().is_err());
    }

    #[test]
    fn csv_paths_for_several_levels() {
        let p = Path::new("out/band.csv");
        assert_eq!(csv_path(p, 0.05, false), PathBuf::from("out/band.csv"));
        assert_eq!(csv_path(p, 0.05, true), PathBuf::from("out/band-alpha0.05.csv"));
    }

    #[test]
    fn alpha_validation() {
        assert!(matches!(validate_alphas(&[]), Err(Error::Config(_))));
        assert!(validate_alphas(&[0.0]).is_err());
        assert!(validate_alphas(&[0.1, 0.01]).is_ok());
    }

    #[test]
    fn default_interval_is_central_95() {
        let x = Sample::new((1..=1000).map(f64::from).collect()).unwrap();
        let iv = central_interval(&x).unwrap();
        assert_eq!((iv.a, iv.b), (25.0, 975.0));
        assert!(flag_interval(&Some(vec![1.0])).is_err());
        assert!(flag_interval(&Some(vec![1.0, 0.5])).is_err());
        assert!(central_interval(&Sample::new(vec![2.0; 10]).unwrap()).is_err());
    }
}
