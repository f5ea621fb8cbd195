//! Command-line surface over the library: JSON field documents in,
//! machine-readable JSON reports out (diagnostics go to stderr).
//!
//! Exit codes: 0 on success, 1 on domain errors (each carrying a stable
//! error code), 2 on usage errors. The environment variable `ESSFIELD_TOL`
//! overrides the global geometric tolerance; a `tolerance` member in a
//! field document overrides it per invocation.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use crate::dictionary::{self, PathSpec};
use crate::document::{complex_to_pair, FieldDocument, SymmetryDocument};
use crate::error::{Error, Result};
use crate::field::{AffineMap, VectorField};
use crate::normal_form::{self, EquivalenceMode, GaugeKind};
use crate::portrait::{self, Chart, OutputFormat, PortraitConfig};
use crate::quotient;
use crate::realize;
use crate::symmetry::{self, AdmissibleOrders, IsotropyKind};
use crate::Tolerances;

#[derive(Parser)]
#[command(
    name = "essfield",
    version,
    about = "Symmetries, normal forms, quotients and phase portraits of vector fields (Q/P)·e^E ∂/∂z"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GaugeArg {
    /// Pick the first available of exp, zero, pole.
    Auto,
    Exp,
    Zero,
    Pole,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChartArg {
    Affine,
    Projective,
}

#[derive(Args)]
struct PathArgs {
    /// Piecewise-linear path: whitespace-separated "re,im" vertices.
    #[arg(long)]
    path: String,
    /// Maximum quadrature segment length.
    #[arg(long, default_value_t = 0.25)]
    refinement: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Detect the isotropy group of a field and report its family data.
    Analyze { field: PathBuf },
    /// Canonical form under affine coordinate changes.
    Normalize {
        field: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        gauge: GaugeArg,
        /// Also quotient by the circle action (flat-metric classification).
        #[arg(long)]
        metric: bool,
    },
    /// Decide whether two fields are equivalent; prints a witness map.
    Equivalent {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        metric: bool,
    },
    /// Construct a symmetric field from an orbit spec document.
    Realize {
        spec: PathBuf,
        /// Require all finite zeros and poles to be simple.
        #[arg(long)]
        simple: bool,
    },
    /// Quotient a field by its detected cyclic symmetry.
    Quotient { field: PathBuf },
    /// Residues of the 1-form 1/X and single-valuedness of Ψ.
    Residues { field: PathBuf },
    /// Integrate the distinguished parameter Ψ = ∫ 1/X along a path.
    Psi {
        field: PathBuf,
        #[command(flatten)]
        path: PathArgs,
    },
    /// Flat length ∫ |1/X| |dz| of a path.
    Length {
        field: PathBuf,
        #[command(flatten)]
        path: PathArgs,
    },
    /// Render a streamline phase portrait to SVG or PNG.
    Portrait {
        field: PathBuf,
        /// Output file; .svg and .png extensions select the format.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "affine")]
        chart: ChartArg,
        /// Window center "re,im" (affine chart).
        #[arg(long, default_value = "0,0")]
        center: String,
        /// Window half-width (affine chart).
        #[arg(long, default_value_t = 2.0)]
        half_width: f64,
        /// Seed grid "NXxNY".
        #[arg(long, default_value = "14x14")]
        grid: String,
        /// Arclength budget per integration direction.
        #[arg(long)]
        max_arclength: Option<f64>,
        /// Local error tolerance of the streamline integrator.
        #[arg(long, default_value_t = 1e-6)]
        step_tol: f64,
        /// Stop distance around zeros and poles.
        #[arg(long)]
        stop_radius: Option<f64>,
        /// Image size "WxH" in pixels.
        #[arg(long, default_value = "800x800")]
        size: String,
        /// Seed of the deterministic jitter.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn parse_complex_pair(text: &str) -> Result<Complex64> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!("expected \"re,im\", got {text:?}")));
    }
    let re: f64 = parts[0]
        .parse()
        .map_err(|_| Error::Parse(format!("bad real part in {text:?}")))?;
    let im: f64 = parts[1]
        .parse()
        .map_err(|_| Error::Parse(format!("bad imaginary part in {text:?}")))?;
    Ok(Complex64::new(re, im))
}

fn parse_path(args: &PathArgs) -> Result<PathSpec> {
    let vertices = args
        .path
        .split_whitespace()
        .map(parse_complex_pair)
        .collect::<Result<Vec<_>>>()?;
    PathSpec::new(vertices, args.refinement)
}

fn parse_dims(text: &str, what: &str) -> Result<(u32, u32)> {
    let parts: Vec<&str> = text.split('x').collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!("{what}: expected \"AxB\", got {text:?}")));
    }
    let a = parts[0]
        .parse()
        .map_err(|_| Error::Parse(format!("{what}: bad value in {text:?}")))?;
    let b = parts[1]
        .parse()
        .map_err(|_| Error::Parse(format!("{what}: bad value in {text:?}")))?;
    Ok((a, b))
}

fn load_field(path: &Path, tol: &mut Tolerances) -> Result<VectorField> {
    let text = std::fs::read_to_string(path)?;
    let doc: FieldDocument = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    doc.parse(tol)
}

fn map_json(map: &AffineMap) -> serde_json::Value {
    json!({"a": complex_to_pair(map.a), "b": complex_to_pair(map.b)})
}

fn field_json(x: &VectorField) -> serde_json::Value {
    serde_json::to_value(FieldDocument::from_field(x)).expect("field documents serialize")
}

fn analyze(field: &Path) -> Result<serde_json::Value> {
    let mut tol = Tolerances::from_env();
    let x = load_field(field, &mut tol)?;
    let (s, r, d) = x.signature();
    let isotropy = symmetry::isotropy_group(&x, &tol)?;
    let report = symmetry::family_report(s, r, d);
    let isotropy_json = match isotropy.kind {
        IsotropyKind::Trivial => json!({"kind": "trivial"}),
        IsotropyKind::Cyclic(k) => json!({
            "kind": "cyclic",
            "order": k,
            "center": complex_to_pair(isotropy.center.expect("cyclic result has a center")),
            "generator": map_json(&isotropy.generator.expect("cyclic result has a generator")),
        }),
        IsotropyKind::Continuous => json!({
            "kind": "continuous",
            "center": complex_to_pair(isotropy.center.expect("continuous result has a center")),
        }),
    };
    let orders = match report.admissible_orders {
        AdmissibleOrders::Finite(orders) => json!(orders),
        AdmissibleOrders::Unbounded => json!("unbounded"),
    };
    Ok(json!({
        "signature": [s, r, d],
        "isotropy": isotropy_json,
        "family": {
            "all_trivial": report.all_trivial,
            "moduli_dimension": report.moduli_dimension,
            "admissible_orders": orders,
        },
    }))
}

fn pick_gauge(x: &VectorField, arg: GaugeArg) -> Result<GaugeKind> {
    match arg {
        GaugeArg::Auto => normal_form::default_gauge(x),
        GaugeArg::Exp => Ok(GaugeKind::ExpCentered),
        GaugeArg::Zero => Ok(GaugeKind::ZeroCentered),
        GaugeArg::Pole => Ok(GaugeKind::PoleCentered),
    }
}

fn normalize(field: &Path, gauge: GaugeArg, metric: bool) -> Result<serde_json::Value> {
    let mut tol = Tolerances::from_env();
    let x = load_field(field, &mut tol)?;
    let kind = pick_gauge(&x, gauge)?;
    if metric {
        let (form, theta) = normal_form::canonical_metric_form(&x, kind, &tol)?;
        Ok(json!({
            "field": field_json(&form.field),
            "gauge": map_json(&form.gauge),
            "gauge_kind": form.gauge_kind.name(),
            "theta": theta,
        }))
    } else {
        let form = normal_form::canonical_form(&x, kind, &tol)?;
        Ok(json!({
            "field": field_json(&form.field),
            "gauge": map_json(&form.gauge),
            "gauge_kind": form.gauge_kind.name(),
        }))
    }
}

fn equivalent(a: &Path, b: &Path, metric: bool) -> Result<serde_json::Value> {
    let mut tol = Tolerances::from_env();
    let xa = load_field(a, &mut tol)?;
    let mut tol_b = Tolerances::from_env();
    let xb = load_field(b, &mut tol_b)?;
    let mode = if metric {
        EquivalenceMode::Metric
    } else {
        EquivalenceMode::Analytic
    };
    match normal_form::are_equivalent(&xa, &xb, mode, &tol)? {
        Some(witness) => {
            let mut out = json!({
                "equivalent": true,
                "witness": map_json(&witness.map),
            });
            if let Some(theta) = witness.theta {
                out["theta"] = json!(theta);
            }
            Ok(out)
        }
        None => Ok(json!({"equivalent": false, "note": "inequivalent"})),
    }
}

fn realize_cmd(spec_path: &Path, simple: bool) -> Result<serde_json::Value> {
    let text = std::fs::read_to_string(spec_path)?;
    let doc: SymmetryDocument = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", spec_path.display())))?;
    let spec = doc.to_spec();
    let x = if simple {
        realize::realize_simple(&spec)?
    } else {
        realize::realize_symmetric(&spec)?
    };
    let (s, r, d) = x.signature();
    Ok(json!({
        "field": field_json(&x),
        "signature": [s, r, d],
    }))
}

fn quotient_cmd(field: &Path) -> Result<serde_json::Value> {
    let mut tol = Tolerances::from_env();
    let x = load_field(field, &mut tol)?;
    let result = quotient::quotient_field(&x, &tol)?;
    let (s, r, d) = result.field.signature();
    Ok(json!({
        "field": field_json(&result.field),
        "signature": [s, r, d],
        "k": result.order,
        "center": complex_to_pair(result.center),
    }))
}

fn residues_cmd(field: &Path) -> Result<serde_json::Value> {
    let mut tol = Tolerances::from_env();
    let x = load_field(field, &mut tol)?;
    let entries = dictionary::residues(&x, &tol)?;
    let single = entries.iter().all(|e| e.residue.norm() < tol.residue);
    Ok(json!({
        "residues": entries.iter().map(|e| json!({
            "location": complex_to_pair(e.location),
            "residue": complex_to_pair(e.residue),
            "order": e.order,
        })).collect::<Vec<_>>(),
        "single_valued": single,
    }))
}

fn psi_cmd(field: &Path, args: &PathArgs) -> Result<serde_json::Value> {
    let mut tol = Tolerances::from_env();
    let x = load_field(field, &mut tol)?;
    let path = parse_path(args)?;
    let value = dictionary::distinguished_parameter(&x, &path, &tol)?;
    Ok(json!({"value": complex_to_pair(value)}))
}

fn length_cmd(field: &Path, args: &PathArgs) -> Result<serde_json::Value> {
    let mut tol = Tolerances::from_env();
    let x = load_field(field, &mut tol)?;
    let path = parse_path(args)?;
    let value = dictionary::flat_length(&x, &path, &tol)?;
    Ok(json!({"length": value}))
}

#[allow(clippy::too_many_arguments)]
fn portrait_cmd(
    field: &Path,
    out: &Path,
    chart: ChartArg,
    center: &str,
    half_width: f64,
    grid: &str,
    max_arclength: Option<f64>,
    step_tol: f64,
    stop_radius: Option<f64>,
    size: &str,
    seed: u64,
) -> Result<serde_json::Value> {
    let mut tol = Tolerances::from_env();
    let x = load_field(field, &mut tol)?;
    let mut cfg = match chart {
        ChartArg::Affine => PortraitConfig::affine(parse_complex_pair(center)?, half_width),
        ChartArg::Projective => PortraitConfig::projective(),
    };
    cfg.seed_grid = parse_dims(grid, "grid")?;
    cfg.image_size = parse_dims(size, "size")?;
    cfg.step_tolerance = step_tol;
    cfg.jitter_seed = seed;
    if let Some(len) = max_arclength {
        cfg.max_arclength = len;
    }
    if let Some(radius) = stop_radius {
        cfg.stop_radius_singular = radius;
    }
    cfg.format = match out.extension().and_then(|e| e.to_str()) {
        Some("png") => OutputFormat::Png,
        Some("svg") => OutputFormat::Svg,
        other => {
            return Err(Error::InvalidInput(format!(
                "output extension must be .svg or .png, got {other:?}"
            )));
        }
    };
    let doc = portrait::render(&x, &cfg, &tol)?;
    doc.write_to(out)?;
    let chart_name = match cfg.chart {
        Chart::Affine { .. } => "affine",
        Chart::Projective => "projective",
    };
    Ok(json!({
        "output": out.display().to_string(),
        "chart": chart_name,
        "format": match cfg.format { OutputFormat::Svg => "svg", OutputFormat::Png => "png" },
    }))
}

fn execute(command: &Command) -> Result<serde_json::Value> {
    match command {
        Command::Analyze { field } => analyze(field),
        Command::Normalize {
            field,
            gauge,
            metric,
        } => normalize(field, *gauge, *metric),
        Command::Equivalent { a, b, metric } => equivalent(a, b, *metric),
        Command::Realize { spec, simple } => realize_cmd(spec, *simple),
        Command::Quotient { field } => quotient_cmd(field),
        Command::Residues { field } => residues_cmd(field),
        Command::Psi { field, path } => psi_cmd(field, path),
        Command::Length { field, path } => length_cmd(field, path),
        Command::Portrait {
            field,
            out,
            chart,
            center,
            half_width,
            grid,
            max_arclength,
            step_tol,
            stop_radius,
            size,
            seed,
        } => portrait_cmd(
            field,
            out,
            *chart,
            center,
            *half_width,
            grid,
            *max_arclength,
            *step_tol,
            *stop_radius,
            size,
            seed.to_owned(),
        ),
    }
}

/// Run the CLI. Reports go to `out`; diagnostics go to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{err}");
                    0
                }
                _ => {
                    eprintln!("{err}");
                    2
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            let text = serde_json::to_string_pretty(&report).expect("reports serialize");
            let _ = writeln!(out, "{text}");
            0
        }
        Err(err) => {
            eprintln!("error[{}]: {err}", err.code());
            1
        }
    }
}
