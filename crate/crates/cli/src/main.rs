//! Command-line driver. Every subcommand reads exact-rational JSON inputs,
//! computes with the core library, and emits a JSON (or, for sweeps, CSV)
//! record on stdout. Exit code 0 means every assertion in the run held,
//! 1 means some assertion failed, 2 means the invocation itself was bad.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use affine_lab_core::codec;
use affine_lab_core::energy;
use affine_lab_core::expander::{expander_set, growth_stats, ExpanderKind};
use affine_lab_core::experiment::{
    check_conjecture2, check_elekes, check_thm1, check_thm2, check_thm3, diag_thm3_report,
    run_sweep, sweep_csv, SweepKind,
};
use affine_lab_core::family::build_family;
use affine_lab_core::generate::{generate, GenKind, GenSpec};
use affine_lab_core::geometry::PlanarLine;
use affine_lab_core::incidence::{
    count_incidences, count_incidences_naive, directions, line_profile, rich_lines, trace_on_line,
};
use affine_lab_core::rational::Rational;
use affine_lab_core::Error;

#[derive(Parser)]
#[command(
    name = "affine-lab",
    version,
    about = "Exact experiments on lines, grids and their energies"
)]
struct Cli {
    /// Output format, json (default) or csv (sweep only). For `sets gen`
    /// this is instead the destination file path.
    #[arg(long, global = true)]
    out: Option<String>,

    /// Seed for randomized set generation.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Largest line set the exhaustive quadruple count will accept.
    #[arg(long, global = true, default_value_t = 64)]
    cap_naive: usize,

    /// Significant digits for decimal bound values.
    #[arg(long, global = true, default_value_t = 30)]
    precision: usize,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate scalar sets.
    Sets {
        #[command(subcommand)]
        cmd: SetsCmd,
    },
    /// Build a parameterized line family and report skips and collisions.
    Family {
        /// Family spec JSON file.
        #[arg(long)]
        spec: PathBuf,
    },
    /// Energy of a line set.
    Energy {
        /// Affine line set JSON file.
        #[arg(long)]
        lines: PathBuf,
        /// Also run the exhaustive quadruple count and compare.
        #[arg(long)]
        naive: bool,
    },
    /// Additive energy of a scalar set.
    EnergyAdditive {
        #[arg(long)]
        a: PathBuf,
    },
    /// k-th multiplicative energy of a scalar set without zero.
    EnergyMult {
        #[arg(long)]
        a: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// Difference-ratio quadruple energy of a scalar set.
    EnergyRatio {
        #[arg(long)]
        a: PathBuf,
    },
    /// Incidences between a point set and a line set, with oracle agreement.
    Incidence {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        lines: PathBuf,
    },
    /// Lines spanned by at least two points, with multiplicities.
    Profile {
        #[arg(long)]
        points: PathBuf,
    },
    /// Lines containing at least k points.
    Rich {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        k: u64,
    },
    /// Directions spanned by a point set.
    Directions {
        #[arg(long)]
        points: PathBuf,
    },
    /// Intersections of the spanned lines with a target line.
    Trace {
        #[arg(long)]
        points: PathBuf,
        /// Target line: a JSON file, an inline JSON object, or one of
        /// `infinity`, `x-axis`, `y-axis`.
        #[arg(long)]
        line: String,
    },
    /// Expander-set sizes and growth statistics.
    Expander {
        #[arg(long, value_enum)]
        kind: ExpanderKindArg,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: Option<PathBuf>,
    },
    /// Apply a projective transform to a point set.
    Project {
        /// 3x3 matrix of rational strings, JSON file.
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        points: PathBuf,
    },
    /// Skew-family energy bound report with exact proof-chain assertions.
    CheckThm2 {
        #[arg(long)]
        c: PathBuf,
        #[arg(long)]
        d: PathBuf,
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long, default_value = "1")]
        mu: String,
    },
    /// Offset-family energy bound report with the diagonal decomposition.
    CheckThm3 {
        #[arg(long)]
        c: PathBuf,
        #[arg(long)]
        d: PathBuf,
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long, default_value = "1")]
        mu: String,
    },
    /// Grid incidence bound report; with --elekes, the pencil construction.
    CheckThm1 {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Affine line set JSON file (required unless --elekes).
        #[arg(long)]
        lines: Option<PathBuf>,
        /// Build the pencil y = c(x - d) over (B, A) against (A+A) x (AB).
        #[arg(long)]
        elekes: bool,
    },
    /// Two-line trace report for a point set.
    CheckConj2 {
        #[arg(long)]
        points: PathBuf,
        /// First target line (same forms as `trace --line`).
        #[arg(long)]
        l1: String,
        /// Second target line.
        #[arg(long)]
        l2: String,
    },
    /// Rich-ratio profile n(alpha) with ceiling and vanishing checks.
    DiagThm3 {
        #[arg(long)]
        c: PathBuf,
        #[arg(long)]
        d: PathBuf,
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long, default_value = "1")]
        mu: String,
    },
    /// Measure a quantity over n in a progression and fit its exponent.
    Sweep {
        #[arg(long, value_enum)]
        kind: SweepKindArg,
        /// Comma-separated strictly increasing sizes, at least three.
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<u64>,
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long, default_value = "1")]
        mu: String,
        /// Fill the runtime column (off by default so reruns are identical).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Subcommand)]
enum SetsCmd {
    /// Generate one scalar set and write it as a JSON array.
    Gen {
        /// Generator spec JSON file; alternative to the flags below.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, value_enum)]
        kind: Option<GenKindArg>,
        #[arg(long)]
        start: Option<String>,
        #[arg(long)]
        step: Option<String>,
        #[arg(long)]
        ratio: Option<String>,
        #[arg(long)]
        n: Option<u64>,
        /// Draw distinct integers from [1, range] (random-int).
        #[arg(long)]
        range: Option<u64>,
        /// Comma-separated rational values (explicit).
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<String>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKindArg {
    Ap,
    Gp,
    RandomInt,
    Explicit,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpanderKindArg {
    Q,
    S14,
    AaPlusA,
    ASum4,
    Aaa,
}

impl From<ExpanderKindArg> for ExpanderKind {
    fn from(kind: ExpanderKindArg) -> Self {
        match kind {
            ExpanderKindArg::Q => ExpanderKind::Q,
            ExpanderKindArg::S14 => ExpanderKind::S14,
            ExpanderKindArg::AaPlusA => ExpanderKind::AaPlusA,
            ExpanderKindArg::ASum4 => ExpanderKind::ASum4,
            ExpanderKindArg::Aaa => ExpanderKind::Aaa,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepKindArg {
    Thm2,
    Thm3,
    #[value(name = "qset")]
    QSet,
}

impl From<SweepKindArg> for SweepKind {
    fn from(kind: SweepKindArg) -> Self {
        match kind {
            SweepKindArg::Thm2 => SweepKind::Thm2,
            SweepKindArg::Thm3 => SweepKind::Thm3,
            SweepKindArg::QSet => SweepKind::QSet,
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum OutFormat {
    Json,
    Csv,
}

type RunResult = Result<bool, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> RunResult {
    let format = out_format(&cli)?;
    match cli.cmd {
        Cmd::Sets { ref cmd } => {
            let SetsCmd::Gen {
                spec,
                kind,
                start,
                step,
                ratio,
                n,
                range,
                values,
            } = cmd;
            let gen_spec = build_gen_spec(
                spec.as_deref(),
                *kind,
                start.as_deref(),
                step.as_deref(),
                ratio.as_deref(),
                *n,
                *range,
                values.as_deref(),
                cli.seed,
            )?;
            let set = generate(&gen_spec).map_err(stringify)?;
            let text = codec::to_json(&set);
            match cli.out.as_deref() {
                Some(path) => fs::write(path, text)
                    .map_err(|e| format!("cannot write {path}: {e}"))?,
                None => print!("{text}"),
            }
            Ok(true)
        }
        Cmd::Family { spec } => {
            let spec = codec::parse_family_spec(&read(&spec)?).map_err(stringify)?;
            let build = build_family(&spec).map_err(stringify)?;
            emit(
                format,
                &serde_json::json!({
                    "kind": spec.kind.to_string(),
                    "lines": build.lines,
                    "report": build.report,
                }),
            )?;
            Ok(true)
        }
        Cmd::Energy { lines, naive } => {
            let lines = codec::parse_affine_lines(&read(&lines)?).map_err(stringify)?;
            let fast = energy::energy(&lines);
            let mut record = serde_json::json!({
                "line_count": lines.len(),
                "energy": fast.to_string(),
            });
            let mut hold = true;
            if naive {
                let slow = energy::energy_naive(&lines, cli.cap_naive).map_err(stringify)?;
                hold = slow == fast;
                record["naive"] = slow.to_string().into();
                record["agree"] = hold.into();
            }
            emit(format, &record)?;
            Ok(hold)
        }
        Cmd::EnergyAdditive { a } => {
            let a = scalar_set(&a)?;
            let e = energy::additive_energy(&a).map_err(stringify)?;
            emit(
                format,
                &serde_json::json!({ "size": a.len(), "additive_energy": e.to_string() }),
            )?;
            Ok(true)
        }
        Cmd::EnergyMult { a, k } => {
            let a = scalar_set(&a)?;
            let e = energy::multiplicative_energy(&a, k).map_err(stringify)?;
            emit(
                format,
                &serde_json::json!({
                    "size": a.len(),
                    "k": k,
                    "multiplicative_energy": e.to_string(),
                }),
            )?;
            Ok(true)
        }
        Cmd::EnergyRatio { a } => {
            let a = scalar_set(&a)?;
            let e = energy::difference_ratio_energy(&a).map_err(stringify)?;
            emit(
                format,
                &serde_json::json!({ "size": a.len(), "difference_ratio_energy": e.to_string() }),
            )?;
            Ok(true)
        }
        Cmd::Incidence { points, lines } => {
            let set = codec::parse_point_set(&read(&points)?).map_err(stringify)?;
            let lines = codec::parse_planar_lines(&read(&lines)?).map_err(stringify)?;
            let grouped = count_incidences(&set, &lines);
            let naive = count_incidences_naive(&set, &lines);
            let agree = grouped == naive;
            emit(
                format,
                &serde_json::json!({
                    "point_count": set.len(),
                    "line_count": lines.len(),
                    "incidences": grouped.to_string(),
                    "naive": naive.to_string(),
                    "agree": agree,
                }),
            )?;
            Ok(agree)
        }
        Cmd::Profile { points } => {
            let set = codec::parse_point_set(&read(&points)?).map_err(stringify)?;
            let profile = line_profile(&set).map_err(stringify)?;
            let entries: Vec<serde_json::Value> = profile
                .to_sorted()
                .into_iter()
                .map(|(line, m)| serde_json::json!({ "line": line, "multiplicity": m }))
                .collect();
            emit(
                format,
                &serde_json::json!({
                    "point_count": set.len(),
                    "line_count": entries.len(),
                    "lines": entries,
                }),
            )?;
            Ok(true)
        }
        Cmd::Rich { points, k } => {
            let set = codec::parse_point_set(&read(&points)?).map_err(stringify)?;
            let lines = rich_lines(&set, k).map_err(stringify)?;
            emit(
                format,
                &serde_json::json!({ "k": k, "count": lines.len(), "lines": lines }),
            )?;
            Ok(true)
        }
        Cmd::Directions { points } => {
            let set = codec::parse_point_set(&read(&points)?).map_err(stringify)?;
            let dirs = directions(&set).map_err(stringify)?;
            let slopes: Vec<String> = dirs
                .iter()
                .map(|d| match d.slope() {
                    Some(s) => s.to_string(),
                    None => "inf".into(),
                })
                .collect();
            emit(
                format,
                &serde_json::json!({ "count": slopes.len(), "directions": slopes }),
            )?;
            Ok(true)
        }
        Cmd::Trace { points, line } => {
            let set = codec::parse_point_set(&read(&points)?).map_err(stringify)?;
            let target = parse_line_arg(&line)?;
            match trace_on_line(&set, &target) {
                Ok(points) => {
                    emit(
                        format,
                        &serde_json::json!({ "size": points.len(), "trace": points }),
                    )?;
                    Ok(true)
                }
                Err(Error::InfiniteTrace(k)) => {
                    emit(
                        format,
                        &serde_json::json!({ "infinite": true, "points_on_target": k }),
                    )?;
                    Ok(true)
                }
                Err(e) => Err(stringify(e)),
            }
        }
        Cmd::Expander { kind, a, b } => {
            let a = scalar_set(&a)?;
            let b = match b {
                Some(path) => Some(scalar_set(&path)?),
                None => None,
            };
            let out = expander_set(kind.into(), &a).map_err(stringify)?;
            let stats = growth_stats(&a, b.as_ref()).map_err(stringify)?;
            emit(
                format,
                &serde_json::json!({
                    "kind": ExpanderKind::from(kind),
                    "input_size": a.len(),
                    "output_size": out.len(),
                    "stats": stats,
                    "output": out,
                }),
            )?;
            Ok(true)
        }
        Cmd::Project { matrix, points } => {
            let t = codec::parse_matrix(&read(&matrix)?).map_err(stringify)?;
            let set = codec::parse_point_set(&read(&points)?).map_err(stringify)?;
            let images: Vec<serde_json::Value> = set
                .iter()
                .map(|p| {
                    let image = t.apply_affine(p);
                    serde_json::json!({
                        "source": p,
                        "image": image,
                        "affine": image.to_affine(),
                    })
                })
                .collect();
            emit(
                format,
                &serde_json::json!({ "det": t.det(), "images": images }),
            )?;
            Ok(true)
        }
        Cmd::CheckThm2 { c, d, lambda, mu } => {
            let report = check_thm2(
                &scalar_set(&c)?,
                &scalar_set(&d)?,
                &rational(&lambda)?,
                &rational(&mu)?,
                cli.precision,
            )
            .map_err(stringify)?;
            emit(format, &report)?;
            Ok(report.all_hold())
        }
        Cmd::CheckThm3 { c, d, lambda, mu } => {
            let report = check_thm3(
                &scalar_set(&c)?,
                &scalar_set(&d)?,
                &rational(&lambda)?,
                &rational(&mu)?,
                cli.precision,
            )
            .map_err(stringify)?;
            emit(format, &report)?;
            Ok(report.all_hold())
        }
        Cmd::CheckThm1 {
            a,
            b,
            lines,
            elekes,
        } => {
            let a = scalar_set(&a)?;
            let b = scalar_set(&b)?;
            let report = if elekes {
                check_elekes(&a, &b, cli.precision).map_err(stringify)?
            } else {
                let path = lines.ok_or("either --lines or --elekes is required")?;
                let lines = codec::parse_affine_lines(&read(&path)?).map_err(stringify)?;
                check_thm1(&a, &b, &lines, cli.precision).map_err(stringify)?
            };
            emit(format, &report)?;
            Ok(report.all_hold())
        }
        Cmd::CheckConj2 { points, l1, l2 } => {
            let set = codec::parse_point_set(&read(&points)?).map_err(stringify)?;
            let report = check_conjecture2(
                &set,
                &parse_line_arg(&l1)?,
                &parse_line_arg(&l2)?,
                cli.precision,
            )
            .map_err(stringify)?;
            emit(format, &report)?;
            Ok(report.all_hold())
        }
        Cmd::DiagThm3 { c, d, lambda, mu } => {
            let report = diag_thm3_report(
                &scalar_set(&c)?,
                &scalar_set(&d)?,
                &rational(&lambda)?,
                &rational(&mu)?,
            )
            .map_err(stringify)?;
            emit(format, &report)?;
            Ok(report.all_hold())
        }
        Cmd::Sweep {
            kind,
            ns,
            lambda,
            mu,
            timings,
        } => {
            let report = run_sweep(
                kind.into(),
                &ns,
                &rational(&lambda)?,
                &rational(&mu)?,
                timings,
                cli.precision,
            )
            .map_err(stringify)?;
            match format {
                OutFormat::Json => print!("{}", codec::to_json(&report)),
                OutFormat::Csv => print!("{}", sweep_csv(&report)),
            }
            Ok(true)
        }
    }
}

fn out_format(cli: &Cli) -> Result<OutFormat, String> {
    if matches!(cli.cmd, Cmd::Sets { .. }) {
        return Ok(OutFormat::Json);
    }
    let format = match cli.out.as_deref() {
        None | Some("json") => OutFormat::Json,
        Some("csv") => OutFormat::Csv,
        Some(other) => return Err(format!("unknown output format {other:?} (json or csv)")),
    };
    if format == OutFormat::Csv && !matches!(cli.cmd, Cmd::Sweep { .. }) {
        return Err("csv output is only available for sweep".into());
    }
    Ok(format)
}

fn emit<T: serde::Serialize>(format: OutFormat, value: &T) -> Result<(), String> {
    debug_assert!(format == OutFormat::Json);
    print!("{}", codec::to_json(value));
    Ok(())
}

fn stringify(e: Error) -> String {
    e.to_string()
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn scalar_set(path: &Path) -> Result<BTreeSet<Rational>, String> {
    codec::parse_scalar_set(&read(path)?).map_err(stringify)
}

fn rational(text: &str) -> Result<Rational, String> {
    Rational::parse(text).map_err(stringify)
}

/// A target line given as a keyword, an inline JSON object, or a file
/// holding one line (bare or as a one-element array).
fn parse_line_arg(arg: &str) -> Result<PlanarLine, String> {
    let zero = Rational::zero();
    let one = Rational::one();
    match arg {
        "infinity" => return Ok(PlanarLine::at_infinity()),
        "x-axis" => return PlanarLine::from_rationals(&zero, &one, &zero).map_err(stringify),
        "y-axis" => return PlanarLine::from_rationals(&one, &zero, &zero).map_err(stringify),
        _ => {}
    }
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        read(Path::new(arg))?
    };
    let wrapped = if text.trim_start().starts_with('[') {
        text
    } else {
        format!("[{text}]")
    };
    let lines = codec::parse_planar_lines(&wrapped).map_err(stringify)?;
    match <[PlanarLine; 1]>::try_from(lines) {
        Ok([line]) => Ok(line),
        Err(_) => Err("expected exactly one target line".into()),
    }
}

#[allow(clippy::too_many_arguments)]
fn build_gen_spec(
    spec: Option<&Path>,
    kind: Option<GenKindArg>,
    start: Option<&str>,
    step: Option<&str>,
    ratio: Option<&str>,
    n: Option<u64>,
    range: Option<u64>,
    values: Option<&[String]>,
    seed: Option<u64>,
) -> Result<GenSpec, String> {
    if let Some(path) = spec {
        let mut parsed = codec::parse_gen_spec(&read(path)?).map_err(stringify)?;
        if parsed.seed.is_none() {
            parsed.seed = seed;
        }
        return Ok(parsed);
    }
    let kind = kind.ok_or("either --spec or --kind is required")?;
    let opt_rational = |text: Option<&str>| -> Result<Option<Rational>, String> {
        text.map(rational).transpose()
    };
    let spec = GenSpec {
        kind: match kind {
            GenKindArg::Ap => GenKind::Ap,
            GenKindArg::Gp => GenKind::Gp,
            GenKindArg::RandomInt => GenKind::RandomInt,
            GenKindArg::Explicit => GenKind::Explicit,
        },
        start: opt_rational(start)?,
        step: opt_rational(step)?,
        ratio: opt_rational(ratio)?,
        n,
        seed,
        range,
        values: values
            .map(|vals| vals.iter().map(|v| rational(v)).collect::<Result<Vec<_>, _>>())
            .transpose()?,
    };
    Ok(spec)
}
