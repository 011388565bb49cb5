//! Command-line interface: argument definitions and the four commands.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use delone_core::almostperiod::{
    bohr_diagnostic, delone_distance, eps_almost_periods, find_bijection, return_vectors, uap_diagnostic,
    BumpSpec, LadderStep,
};
use delone_core::dynamics::{
    find_separating_anchor, hull_transversal_sample, patch_forcing_probe, proximality_probe, separation_radius,
};
use delone_core::sources::{delone_check, detect_periods, flc_census, materialize, FiniteSource};
use delone_core::{Ball, DeloneSource, Error as CoreError, Point, Translate};
use serde_json::{json, Value};

use crate::error::{AppError, AppResult};
use crate::pointfile::{format_points, read_points};
use crate::report::{self, csv_num, num, op_record, to_csv};
use crate::specfile::read_spec;

#[derive(Debug, Parser)]
#[command(name = "delone", version, about = "Delone sets on the line and finite-scale almost-periodicity diagnostics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Materialize a generator spec on a window.
    Generate(GenerateArgs),
    /// Run diagnostics on one point set.
    Analyze(AnalyzeArgs),
    /// Distance, proximality and separation of two point sets.
    Compare(CompareArgs),
    /// Equicontinuity verdict and patch-forcing probe.
    Diagnose(DiagnoseArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Points,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    #[value(name = "delone_check")]
    DeloneCheck,
    #[value(name = "flc_census")]
    FlcCensus,
    #[value(name = "detect_periods")]
    DetectPeriods,
    #[value(name = "eps_almost_periods")]
    EpsAlmostPeriods,
    #[value(name = "return_vectors")]
    ReturnVectors,
    #[value(name = "bohr_diagnostic")]
    BohrDiagnostic,
    #[value(name = "uap_diagnostic")]
    UapDiagnostic,
}

impl Op {
    fn name(self) -> &'static str {
        match self {
            Op::DeloneCheck => "delone_check",
            Op::FlcCensus => "flc_census",
            Op::DetectPeriods => "detect_periods",
            Op::EpsAlmostPeriods => "eps_almost_periods",
            Op::ReturnVectors => "return_vectors",
            Op::BohrDiagnostic => "bohr_diagnostic",
            Op::UapDiagnostic => "uap_diagnostic",
        }
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Generator spec file (JSON).
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Point-set file.
    #[arg(long)]
    pub points: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub spec: PathBuf,
    /// Radius of the window around the origin.
    #[arg(long, default_value_t = 50.0)]
    pub window: f64,
    #[arg(long, value_enum, default_value_t = Format::Points)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Radius of the analysis window around the origin.
    #[arg(long, default_value_t = 50.0)]
    pub window: f64,
    /// Diagnostics to run, comma separated or repeated.
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Op::DeloneCheck, Op::FlcCensus, Op::DetectPeriods])]
    pub op: Vec<Op>,
    /// Patch radius for the census, return vectors and the ladder.
    #[arg(long, default_value_t = 3.0)]
    pub radius: f64,
    /// Tolerance ε for almost periods and the Bohr diagnostic.
    #[arg(long, conflicts_with = "epsilon_rel")]
    pub epsilon: Option<f64>,
    /// ε as a multiple of the packing radius r_min.
    #[arg(long)]
    pub epsilon_rel: Option<f64>,
    /// Matching tolerance for census and period detection.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Seed choosing the witness spot checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Half-width of the triangular bump.
    #[arg(long, default_value_t = 0.4)]
    pub bump_half_width: f64,
    /// Height of the triangular bump.
    #[arg(long, default_value_t = 1.0)]
    pub bump_height: f64,
    /// Sampling pitch of the Bohr diagnostic.
    #[arg(long, default_value_t = 0.01)]
    pub grid_pitch: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Generator spec files; specs come before point files.
    #[arg(long)]
    pub spec: Vec<PathBuf>,
    /// Point-set files.
    #[arg(long)]
    pub points: Vec<PathBuf>,
    /// Largest radius considered by the metric.
    #[arg(long, default_value_t = 100.0)]
    pub r_cap: f64,
    /// Patch radius of the proximality probe.
    #[arg(long, default_value_t = 5.0)]
    pub radius: f64,
    /// Radius of the shift window and of the anchor search.
    #[arg(long, default_value_t = 100.0)]
    pub window: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DiagnoseArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Window radii of the ladder.
    #[arg(long, value_delimiter = ',', default_values_t = [250.0, 500.0])]
    pub window: Vec<f64>,
    /// Patch radii of the ladder; the first is also the forcing patch radius.
    #[arg(long, value_delimiter = ',', default_values_t = [5.0])]
    pub radius: Vec<f64>,
    /// Tolerances of the ladder.
    #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.05, 0.02])]
    pub epsilon: Vec<f64>,
    /// Extension radius of the forcing probe; ten patch radii when absent.
    #[arg(long)]
    pub extension: Option<f64>,
    /// Number of translates sampled by the forcing probe.
    #[arg(long, default_value_t = 200)]
    pub sample: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// A loaded input and its description for the report.
pub struct Loaded {
    pub source: Box<dyn DeloneSource>,
    pub config: Value,
}

pub fn load_spec(path: &Path) -> AppResult<Loaded> {
    let spec = read_spec(path)?;
    let source = spec.build()?;
    Ok(Loaded {
        source,
        config: json!({"spec_path": path.display().to_string(), "spec": spec.resolved()?}),
    })
}

pub fn load_points(path: &Path) -> AppResult<Loaded> {
    let set = read_points(path)?;
    let config = json!({
        "points_path": path.display().to_string(),
        "dim": set.dim(),
        "count": set.len(),
    });
    Ok(Loaded {
        source: Box::new(FiniteSource::new(set, path.display().to_string())),
        config,
    })
}

fn load(input: &InputArgs) -> AppResult<Loaded> {
    match (&input.spec, &input.points) {
        (Some(s), None) => load_spec(s),
        (None, Some(p)) => load_points(p),
        _ => Err(AppError::input("give exactly one of --spec and --points")),
    }
}

fn positive(name: &str, v: f64) -> AppResult<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(AppError::input(format!("--{name} must be positive, got {v}")))
    }
}

fn nonnegative(name: &str, v: f64) -> AppResult<f64> {
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(AppError::input(format!("--{name} must be nonnegative, got {v}")))
    }
}

/// The point of `src` nearest the origin.
fn nearest_to_origin(src: &dyn DeloneSource) -> AppResult<Point> {
    let origin = Point::origin(src.dim());
    let mut r = 1.0;
    while r <= 1e7 {
        let ball = Ball {
            center: origin,
            radius: r,
        };
        if let Some((p, _)) = src.points_in(&ball)?.nearest(&origin) {
            return Ok(p);
        }
        r *= 4.0;
    }
    Err(AppError::input("point set has no points near the origin"))
}

/// `Λ − x₀` with `x₀` the point nearest the origin, so that 0 ∈ Λ.
fn normalized(src: &dyn DeloneSource) -> AppResult<(Translate<&dyn DeloneSource>, Point)> {
    let x0 = nearest_to_origin(src)?;
    Ok((Translate::new(src, x0)?, x0))
}

fn emit(output: &OutputArgs, text: &str) -> AppResult<()> {
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|source| AppError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| AppError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

fn emit_json(output: &OutputArgs, value: &Value) -> AppResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    emit(output, &text)
}

fn check_format(format: Format, command: &str, allowed: &[Format]) -> AppResult<()> {
    if !allowed.contains(&format) {
        let name = format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
        return Err(AppError::input(format!("--format {name} is not available for {command}")));
    }
    Ok(())
}

pub fn run(cli: Cli) -> AppResult<()> {
    match cli.command {
        Command::Generate(a) => cmd_generate(&a),
        Command::Analyze(a) => cmd_analyze(&a),
        Command::Compare(a) => cmd_compare(&a),
        Command::Diagnose(a) => cmd_diagnose(&a),
    }
}

pub fn cmd_generate(args: &GenerateArgs) -> AppResult<()> {
    let window = positive("window", args.window)?;
    let loaded = load_spec(&args.spec)?;
    let ball = Ball {
        center: Point::origin(loaded.source.dim()),
        radius: window,
    };
    let set = materialize(&loaded.source, &ball)?;
    let config = json!({"command": "generate", "input": loaded.config, "window": num(window)});
    match args.format {
        Format::Points => {
            let comments = vec![
                format!("generated from {}", args.spec.display()),
                format!("window radius {window}, {} points", set.len()),
            ];
            emit(&args.output, &format_points(&set, &comments))
        }
        Format::Json => emit_json(
            &args.output,
            &json!({
                "config": config,
                "dim": set.dim(),
                "count": set.len(),
                "points": set.iter().map(|p| Value::Array(p.coords().iter().map(|c| json!(c)).collect())).collect::<Vec<_>>(),
            }),
        ),
        Format::Csv => {
            let header: Vec<String> = ["x", "y"][..set.dim()].iter().map(|s| s.to_string()).collect();
            let mut rows = vec![header];
            rows.extend(set.iter().map(|p| p.coords().iter().map(|c| format!("{c}")).collect()));
            emit(&args.output, &to_csv(&rows))
        }
    }
}

/// Resolve ε from `--epsilon` or `--epsilon-rel`, defaulting to 0.05.
fn resolve_epsilon(args: &AnalyzeArgs, src: &dyn DeloneSource, window: &Ball) -> AppResult<(f64, Value)> {
    if let Some(e) = args.epsilon {
        let e = positive("epsilon", e)?;
        return Ok((e, json!({"epsilon": num(e)})));
    }
    if let Some(rel) = args.epsilon_rel {
        let rel = positive("epsilon-rel", rel)?;
        let (r_min, origin) = match src.declared_bounds().r_min_lower {
            Some(r) => (r, "declared"),
            None => (delone_check(src, window)?.r_min, "measured"),
        };
        let e = rel * r_min;
        return Ok((
            e,
            json!({"epsilon": num(e), "epsilon_rel": num(rel), "r_min": num(r_min), "r_min_source": origin}),
        ));
    }
    Ok((0.05, json!({"epsilon": num(0.05)})))
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> AppResult<()> {
    check_format(args.format, "analyze", &[Format::Json, Format::Csv])?;
    let window_r = positive("window", args.window)?;
    let radius = positive("radius", args.radius)?;
    let tol = nonnegative("tol", args.tol)?;
    let loaded = load(&args.input)?;
    let src: &dyn DeloneSource = &loaded.source;
    let window = Ball {
        center: Point::origin(src.dim()),
        radius: window_r,
    };
    let needs_eps = args
        .op
        .iter()
        .any(|o| matches!(o, Op::EpsAlmostPeriods | Op::BohrDiagnostic | Op::UapDiagnostic));
    let (epsilon, eps_config) = if needs_eps {
        resolve_epsilon(args, src, &window)?
    } else {
        (f64::NAN, Value::Null)
    };
    let config = json!({
        "command": "analyze",
        "input": loaded.config,
        "window": num(window_r),
        "ops": args.op.iter().map(|o| o.name()).collect::<Vec<_>>(),
        "radius": num(radius),
        "epsilon": eps_config,
        "tol": num(tol),
        "seed": args.seed,
        "bump": {"shape": "triangle", "half_width": num(args.bump_half_width), "height": num(args.bump_height)},
        "grid_pitch": num(args.grid_pitch),
    });

    if args.format == Format::Csv {
        let rows = plot_rows(args, src, &window, radius, epsilon, tol)?;
        return emit(&args.output, &to_csv(&rows));
    }

    let mut results = Vec::new();
    for op in &args.op {
        let rec = match op {
            Op::DeloneCheck => op_record(
                "delone_check",
                json!({"window": num(window_r)}),
                report::delone_check(&delone_check(src, &window)?),
            ),
            Op::FlcCensus => op_record(
                "flc_census",
                json!({"r": num(radius), "window": num(window_r), "tol": num(tol)}),
                report::census(&flc_census(src, radius, &window, tol)?),
            ),
            Op::DetectPeriods => op_record(
                "detect_periods",
                json!({"window": num(window_r), "tol": num(tol)}),
                report::periods(&detect_periods(src, &window, tol)?),
            ),
            Op::EpsAlmostPeriods => {
                let rep = eps_almost_periods(src, epsilon, &window)?;
                let first = rep.periods.iter().copied().find(|p| p.x() > 0.0);
                let mut fields = report::eps_periods(&rep);
                if let Some(a) = first {
                    let w = find_bijection(src, a, epsilon, &window)?;
                    fields["witness"] = report::witness(&w);
                } else {
                    fields["witness"] = Value::Null;
                }
                op_record("eps_almost_periods", json!({"epsilon": num(epsilon), "window": num(window_r)}), fields)
            }
            Op::ReturnVectors => {
                let (norm, x0) = normalized(src)?;
                op_record(
                    "return_vectors",
                    json!({"r": num(radius), "window": num(window_r), "normalized_by": report::point(&x0)}),
                    report::return_vectors(&return_vectors(&norm, radius, &window)?),
                )
            }
            Op::BohrDiagnostic => {
                let phi = BumpSpec::triangle(args.bump_half_width, args.bump_height)?;
                op_record(
                    "bohr_diagnostic",
                    json!({
                        "epsilon": num(epsilon),
                        "grid_pitch": num(args.grid_pitch),
                        "window": num(window_r),
                        "bump": {"half_width": num(phi.half_width), "height": num(phi.height), "lipschitz": num(phi.lipschitz())},
                    }),
                    report::eps_periods(&bohr_diagnostic(src, &phi, epsilon, args.grid_pitch, &window)?),
                )
            }
            Op::UapDiagnostic => {
                let (norm, x0) = normalized(src)?;
                let ladder = [LadderStep::Radius(radius), LadderStep::Epsilon(epsilon)];
                let windows = [Ball::interval(0.0, window_r / 2.0), Ball::interval(0.0, window_r)];
                op_record(
                    "uap_diagnostic",
                    json!({
                        "ladder": [{"radius": num(radius)}, {"epsilon": num(epsilon)}],
                        "windows": [num(window_r / 2.0), num(window_r)],
                        "seed": args.seed,
                        "normalized_by": report::point(&x0),
                    }),
                    report::uap(&uap_diagnostic(&norm, &ladder, &windows, args.seed)?),
                )
            }
        };
        results.push(rec);
    }
    emit_json(&args.output, &json!({"config": config, "results": results}))
}

/// Plot series `(series, x, y)`: census class count against patch radius,
/// and ε-period or return-vector gaps against window radius.
fn plot_rows(
    args: &AnalyzeArgs,
    src: &dyn DeloneSource,
    window: &Ball,
    radius: f64,
    epsilon: f64,
    tol: f64,
) -> AppResult<Vec<Vec<String>>> {
    let mut rows = vec![vec!["series".to_string(), "x".to_string(), "y".to_string()]];
    let fractions = [0.25, 0.5, 1.0];
    for op in &args.op {
        match op {
            Op::FlcCensus => {
                let steps = radius.ceil() as usize;
                for k in 1..=steps {
                    let r = (k as f64).min(radius);
                    let n = flc_census(src, r, window, tol)?.len();
                    rows.push(vec!["census_count_vs_radius".into(), csv_num(r), n.to_string()]);
                }
            }
            Op::EpsAlmostPeriods => {
                for f in fractions {
                    let w = Ball::interval(0.0, window.radius * f);
                    let rep = eps_almost_periods(src, epsilon, &w)?;
                    rows.push(vec!["eps_max_gap_vs_window".into(), csv_num(w.radius), csv_num(rep.max_gap)]);
                }
            }
            Op::ReturnVectors => {
                let (norm, _) = normalized(src)?;
                for f in fractions {
                    let w = Ball::interval(0.0, window.radius * f);
                    let rep = return_vectors(&norm, radius, &w)?;
                    rows.push(vec!["return_max_gap_vs_window".into(), csv_num(w.radius), csv_num(rep.max_gap)]);
                }
            }
            _ => {}
        }
    }
    Ok(rows)
}

pub fn cmd_compare(args: &CompareArgs) -> AppResult<()> {
    check_format(args.format, "compare", &[Format::Json])?;
    let r_cap = positive("r-cap", args.r_cap)?;
    let radius = positive("radius", args.radius)?;
    let window_r = positive("window", args.window)?;
    let tol = nonnegative("tol", args.tol)?;
    let mut inputs = Vec::new();
    for s in &args.spec {
        inputs.push(load_spec(s)?);
    }
    for p in &args.points {
        inputs.push(load_points(p)?);
    }
    if inputs.len() != 2 {
        return Err(AppError::input(format!(
            "compare needs exactly two inputs (--spec/--points), got {}",
            inputs.len()
        )));
    }
    let (a, b): (&dyn DeloneSource, &dyn DeloneSource) = (&inputs[0].source, &inputs[1].source);
    if a.dim() != b.dim() {
        return Err(CoreError::DimMismatch(a.dim(), b.dim()).into());
    }
    let distance = delone_distance(a, b, r_cap)?;
    let (na, xa) = normalized(a)?;
    let (nb, xb) = normalized(b)?;
    let window = Ball::interval(0.0, window_r);
    let prox = proximality_probe(&na, &nb, &window, radius)?;
    let r_max = [a, b]
        .iter()
        .map(|s| match s.declared_bounds().r_max_upper {
            Some(r) => Ok(r),
            None => Ok(delone_check(*s, &window)?.r_max),
        })
        .collect::<AppResult<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let c = separation_radius(r_max, 0);
    let anchor = match find_separating_anchor(&na, &nb, c, &window, tol) {
        Ok(o) => report::separation(&o),
        Err(CoreError::NotDistinct) => json!({"status": "not-distinct", "message": CoreError::NotDistinct.to_string()}),
        Err(e) => return Err(e.into()),
    };
    let config = json!({
        "command": "compare",
        "inputs": [inputs[0].config, inputs[1].config],
        "r_cap": num(r_cap),
        "radius": num(radius),
        "window": num(window_r),
        "tol": num(tol),
    });
    let results = vec![
        op_record("delone_distance", json!({"r_cap": num(r_cap)}), json!({"distance": num(distance)})),
        op_record(
            "proximality_probe",
            json!({"r": num(radius), "t_window": num(window_r), "normalized_by": [report::point(&xa), report::point(&xb)]}),
            report::proximality(&prox),
        ),
        op_record(
            "find_separating_anchor",
            json!({"c_radius": num(c), "covering_radius": num(r_max), "window": num(window_r), "tol": num(tol)}),
            anchor,
        ),
    ];
    emit_json(&args.output, &json!({"config": config, "results": results}))
}

pub fn cmd_diagnose(args: &DiagnoseArgs) -> AppResult<()> {
    check_format(args.format, "diagnose", &[Format::Json])?;
    let tol = nonnegative("tol", args.tol)?;
    for w in &args.window {
        positive("window", *w)?;
    }
    let mut ladder = Vec::new();
    for r in &args.radius {
        ladder.push(LadderStep::Radius(positive("radius", *r)?));
    }
    for e in &args.epsilon {
        ladder.push(LadderStep::Epsilon(positive("epsilon", *e)?));
    }
    let loaded = load(&args.input)?;
    let src: &dyn DeloneSource = &loaded.source;
    let (norm, x0) = normalized(src)?;
    let windows: Vec<Ball> = args.window.iter().map(|w| Ball::interval(0.0, *w)).collect();
    let uap = uap_diagnostic(&norm, &ladder, &windows, args.seed)?;

    let r = args.radius.first().copied().unwrap_or(5.0);
    let extension = positive("extension", args.extension.unwrap_or(10.0 * r))?;
    let largest = args.window.iter().copied().fold(0.0, f64::max);
    let sample = hull_transversal_sample(src, &Ball::interval(0.0, largest), args.sample)?;
    let forcing = patch_forcing_probe(src, x0, r, extension, &sample, tol)?;

    let config = json!({
        "command": "diagnose",
        "input": loaded.config,
        "windows": args.window.iter().map(|w| num(*w)).collect::<Vec<_>>(),
        "radii": args.radius.iter().map(|r| num(*r)).collect::<Vec<_>>(),
        "epsilons": args.epsilon.iter().map(|e| num(*e)).collect::<Vec<_>>(),
        "extension": num(extension),
        "sample": args.sample,
        "tol": num(tol),
        "seed": args.seed,
        "normalized_by": report::point(&x0),
    });
    let results = vec![
        op_record("uap_diagnostic", json!({"seed": args.seed}), report::uap(&uap)),
        op_record(
            "patch_forcing_probe",
            json!({"anchor": report::point(&x0), "r": num(r), "extension": num(extension), "sample": args.sample, "tol": num(tol)}),
            report::forcing(&forcing),
        ),
    ];
    emit_json(&args.output, &json!({"config": config, "results": results}))
}
