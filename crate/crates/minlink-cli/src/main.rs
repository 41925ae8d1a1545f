//! `minlink`: command-line front-end for min-link polygonal curve
//! simplification under global distance measures.
//!
//! Subcommands:
//!
//! * `simplify` — run one of the four solver variants on a curve file and
//!   print a machine-readable run report (JSON) with independently
//!   recomputed distances.
//! * `frechet`  — continuous Fréchet distance between two curves.
//! * `gadget`   — generate and solve Subset-Sum reduction curves in exact
//!   rational arithmetic.
//! * `plot`     — render a 2D curve, an optional simplification, and an
//!   optional tolerance tube to SVG.
//! * `selftest` — seeded end-to-end self-checks of every solver against
//!   the bundled brute-force oracles.
//!
//! Exit codes: `0` success, `1` infeasible (the approximate variant's
//! grid admits no path at this `delta`), `2` anything else (bad flags,
//! unreadable files, failed audits). The only environment variable read
//! is `MINLINK_LOG`: set it non-empty to get progress lines on stderr.

mod gadget_json;
mod report;
mod selftest;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use minlink::frechet::frechet_distance;
use minlink::gadget::{generate_gadget, solve_gadget, GadgetParams, SubsetSumInstance};
use minlink::io::{load_curve, save_curve, ParsedCurve};
use minlink::oracle::{brute_vr_frechet, brute_vr_hausdorff, OracleBudget};
use minlink::{Error, Result};

#[derive(Parser)]
#[command(
    name = "minlink",
    version,
    about = "Min-link polygonal curve simplification under global Frechet and Hausdorff measures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simplify a curve with one of the solver variants.
    Simplify(SimplifyArgs),
    /// Compute the continuous Frechet distance between two curves.
    Frechet(FrechetArgs),
    /// Generate and solve Subset-Sum reduction curves.
    Gadget {
        #[command(subcommand)]
        cmd: GadgetCmd,
    },
    /// Render a 2D curve (plus optional simplification and tube) to SVG.
    Plot(PlotArgs),
    /// Run the built-in seeded self-checks.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    /// Optimal vertex-restricted simplification, global Frechet measure.
    VertexFrechet,
    /// (1+eps)-approximate non-restricted simplification, Frechet measure.
    NonrestrictedFrechet,
    /// Optimal vertex-restricted simplification, directed Hausdorff measure.
    VertexHausdorff,
    /// Optimal curve-restricted simplification of a 1D curve, Frechet measure.
    Curve1d,
}

impl Variant {
    fn name(self) -> &'static str {
        match self {
            Variant::VertexFrechet => "vertex-frechet",
            Variant::NonrestrictedFrechet => "nonrestricted-frechet",
            Variant::VertexHausdorff => "vertex-hausdorff",
            Variant::Curve1d => "curve1d",
        }
    }
}

#[derive(Args)]
struct SimplifyArgs {
    /// Solver variant.
    #[arg(long, value_enum)]
    variant: Variant,
    /// Distance tolerance.
    #[arg(long)]
    delta: f64,
    /// Approximation parameter; required by (and only valid for)
    /// nonrestricted-frechet.
    #[arg(long)]
    eps: Option<f64>,
    /// Input curve file (.json or .csv).
    #[arg(long)]
    input: PathBuf,
    /// Write the simplified curve here (.json or .csv).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Cross-check the link count against the brute-force oracle
    /// (small inputs only).
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct FrechetArgs {
    /// First curve file.
    #[arg(long)]
    a: PathBuf,
    /// Second curve file.
    #[arg(long)]
    b: PathBuf,
    /// Bisection tolerance for the returned distance.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Subcommand)]
enum GadgetCmd {
    /// Generate the reduction curve for a Subset-Sum instance.
    Gen(GadgetGenArgs),
    /// Solve a generated reduction curve and verify the witness.
    Solve(GadgetSolveArgs),
}

#[derive(Args)]
struct GadgetGenArgs {
    /// Comma-separated positive integers a_1,...,a_n.
    #[arg(long, value_delimiter = ',', required = true)]
    set: Vec<u64>,
    /// Target sum B.
    #[arg(long)]
    target: u64,
    /// Spike scale as a rational "N/D" (default: delta / 2^20).
    #[arg(long)]
    gamma: Option<String>,
    /// Hole-opening offset as a rational "N/D" (default: 0, i.e. the
    /// degenerate point-tangency holes).
    #[arg(long)]
    zeta: Option<String>,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GadgetSolveArgs {
    /// Gadget JSON produced by `gadget gen`.
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Args)]
struct PlotArgs {
    /// Input curve file (2D only).
    #[arg(long)]
    input: PathBuf,
    /// Simplified curve file to overlay.
    #[arg(long)]
    simplified: Option<PathBuf>,
    /// Draw the closed delta-tube around the input curve.
    #[arg(long)]
    delta: Option<f64>,
    /// Output SVG file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SelftestArgs {
    /// Seed for the self-check corpus.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Is `MINLINK_LOG` set (non-empty, not "0")?
pub fn verbose() -> bool {
    std::env::var("MINLINK_LOG").is_ok_and(|v| !v.is_empty() && v != "0")
}

/// Progress line on stderr, gated by `MINLINK_LOG`.
macro_rules! vlog {
    ($($arg:tt)*) => {
        if crate::verbose() {
            eprintln!("minlink: {}", format!($($arg)*));
        }
    };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Infeasible(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simplify(args) => cmd_simplify(args),
        Command::Frechet(args) => cmd_frechet(args),
        Command::Gadget { cmd: GadgetCmd::Gen(args) } => cmd_gadget_gen(args),
        Command::Gadget { cmd: GadgetCmd::Solve(args) } => cmd_gadget_solve(args),
        Command::Plot(args) => cmd_plot(args),
        Command::Selftest(args) => selftest::run(args.seed),
    }
}

/// Prefix file-system errors with the path they concern.
fn with_path(e: Error, path: &PathBuf) -> Error {
    match e {
        Error::Io(io) => Error::InvalidInput(format!("{}: {io}", path.display())),
        other => other,
    }
}

fn load_with_warnings(path: &PathBuf) -> Result<ParsedCurve> {
    let parsed = load_curve(path).map_err(|e| with_path(e, path))?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(parsed)
}

fn cmd_simplify(args: SimplifyArgs) -> Result<()> {
    if !args.delta.is_finite() || args.delta < 0.0 {
        return Err(Error::InvalidInput(format!(
            "--delta must be a finite non-negative number, got {}",
            args.delta
        )));
    }
    match (args.variant, args.eps) {
        (Variant::NonrestrictedFrechet, None) => {
            return Err(Error::InvalidInput(
                "--eps is required for --variant nonrestricted-frechet".into(),
            ));
        }
        (Variant::NonrestrictedFrechet, Some(_)) => {}
        (_, Some(_)) => {
            return Err(Error::InvalidInput(format!(
                "--eps only applies to nonrestricted-frechet, not {}",
                args.variant.name()
            )));
        }
        (_, None) => {}
    }

    let digest = report::file_sha256(&args.input).map_err(|e| with_path(e, &args.input))?;
    let parsed = load_with_warnings(&args.input)?;
    let p = &parsed.curve;
    vlog!(
        "loaded {} ({} vertices, dim {})",
        args.input.display(),
        p.n(),
        p.dim()
    );

    let budget = OracleBudget::default();
    let started = Instant::now();
    let (mut rep, output_curve) = match args.variant {
        Variant::VertexFrechet => {
            let r = minlink::vr_frechet::min_link_simplify_vr(p, args.delta)?;
            let wall = started.elapsed();
            let rep = report::report_vertex_frechet(p, args.delta, &r, wall)?;
            let out = minlink::vr_frechet::restricted_curve(p, &r.indices)?;
            (rep, out)
        }
        Variant::VertexHausdorff => {
            let r = minlink::hausdorff::simplify_vr_hausdorff(p, args.delta)?;
            let wall = started.elapsed();
            let rep = report::report_vertex_hausdorff(p, args.delta, &r, wall)?;
            let out = minlink::vr_frechet::restricted_curve(p, &r.indices)?;
            (rep, out)
        }
        Variant::NonrestrictedFrechet => {
            let eps = args.eps.expect("validated above");
            let r = minlink::nonrestricted::simplify_nonrestricted(p, args.delta, eps)?;
            let wall = started.elapsed();
            let rep = report::report_nonrestricted(p, args.delta, eps, &r, wall)?;
            (rep, r.polyline()?)
        }
        Variant::Curve1d => {
            let r = minlink::curve1d::simplify_curve_restricted_1d(p, args.delta)?;
            let wall = started.elapsed();
            let rep = report::report_curve1d(p, args.delta, &r, wall)?;
            (rep, r.value_polyline()?)
        }
    };
    rep.input = args.input.display().to_string();
    rep.input_sha256 = digest;

    if !rep.audit_ok {
        return Err(Error::InvalidInput(format!(
            "recomputation audit failed: the reported solution does not satisfy \
             the feasibility bound {:.6e} (worst achieved {:.6e}); this indicates \
             a solver bug, please report it",
            rep.feasibility_bound,
            rep.worst_achieved()
        )));
    }

    if args.oracle {
        let oracle_links = match args.variant {
            Variant::VertexFrechet | Variant::Curve1d => {
                brute_vr_frechet(p, args.delta, &budget)?.link_count
            }
            Variant::VertexHausdorff => brute_vr_hausdorff(p, args.delta, &budget)?.link_count,
            Variant::NonrestrictedFrechet => {
                // No exact oracle exists for the continuum variant; the
                // vertex-restricted optimum bounds it from above and
                // `2 m + 1` bounds it from below via the guarantee.
                brute_vr_frechet(p, args.delta, &budget)?.link_count
            }
        };
        rep.oracle_link_count = Some(oracle_links);
        let consistent = match args.variant {
            // Exact solvers must match the oracle outright.
            Variant::VertexFrechet | Variant::VertexHausdorff => rep.link_count == oracle_links,
            // The curve-restricted optimum never exceeds the
            // vertex-restricted one.
            Variant::Curve1d => rep.link_count <= oracle_links,
            // The approximate solver obeys its 2m+1 guarantee with
            // m <= m_vr.
            Variant::NonrestrictedFrechet => rep.link_count <= 2 * oracle_links + 1,
        };
        if !consistent {
            return Err(Error::InvalidInput(format!(
                "oracle cross-check failed: solver produced {} links, oracle optimum is {}",
                rep.link_count, oracle_links
            )));
        }
        vlog!("oracle cross-check passed ({oracle_links} links)");
    }

    if let Some(out) = &args.output {
        save_curve(out, &output_curve)?;
        vlog!("wrote simplified curve to {}", out.display());
    }

    println!("{}", serde_json::to_string_pretty(&rep).expect("report serialization cannot fail"));
    Ok(())
}

fn cmd_frechet(args: FrechetArgs) -> Result<()> {
    if !args.tol.is_finite() || args.tol <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "--tol must be a positive number, got {}",
            args.tol
        )));
    }
    let pa = load_with_warnings(&args.a)?;
    let pb = load_with_warnings(&args.b)?;
    if pa.curve.dim() != pb.curve.dim() {
        return Err(Error::DimensionMismatch {
            expected: pa.curve.dim(),
            got: pb.curve.dim(),
        });
    }
    let started = Instant::now();
    let d = frechet_distance(&pa.curve, &pb.curve, args.tol);
    let wall = started.elapsed();
    let out = serde_json::json!({
        "a": args.a.display().to_string(),
        "a_sha256": report::file_sha256(&args.a)?,
        "b": args.b.display().to_string(),
        "b_sha256": report::file_sha256(&args.b)?,
        "tol": args.tol,
        "distance": d,
        "wall_time_ms": wall.as_secs_f64() * 1e3,
    });
    println!("{}", serde_json::to_string_pretty(&out).expect("serialization cannot fail"));
    Ok(())
}

fn cmd_gadget_gen(args: GadgetGenArgs) -> Result<()> {
    let inst = SubsetSumInstance::new(args.set, args.target)?;
    let mut params = GadgetParams::default_for(&inst);
    if let Some(g) = &args.gamma {
        params.gamma = gadget_json::parse_rat(g)?;
    }
    if let Some(z) = &args.zeta {
        params.zeta = gadget_json::parse_rat(z)?;
    }
    let curve = generate_gadget(&inst, &params)?;
    vlog!(
        "generated gadget: n={}, {} vertices, k={}",
        inst.n(),
        curve.vertices.len(),
        curve.k
    );
    let file = gadget_json::to_file(&curve);
    let text = serde_json::to_string_pretty(&file).expect("gadget serialization cannot fail");
    match &args.out {
        Some(path) => {
            std::fs::write(path, text)?;
            vlog!("wrote gadget curve to {}", path.display());
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn cmd_gadget_solve(args: GadgetSolveArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", args.input.display())))?;
    let file: gadget_json::GadgetFile = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("bad gadget JSON: {e}")))?;
    let curve = gadget_json::from_file(&file)?;
    vlog!("regenerated and matched the stored gadget ({} vertices)", curve.vertices.len());
    let started = Instant::now();
    let solution = solve_gadget(&curve)?;
    let wall = started.elapsed();
    let report = gadget_json::solve_report(&curve, solution.as_ref(), wall);
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serialization cannot fail")
    );
    Ok(())
}

fn cmd_plot(args: PlotArgs) -> Result<()> {
    if let Some(d) = args.delta {
        if !d.is_finite() || d < 0.0 {
            return Err(Error::InvalidInput(format!(
                "--delta must be a finite non-negative number, got {d}"
            )));
        }
    }
    let input = load_with_warnings(&args.input)?;
    let simplified = match &args.simplified {
        Some(path) => Some(load_with_warnings(path)?.curve),
        None => None,
    };
    let svg = svg::render(&input.curve, simplified.as_ref(), args.delta)?;
    std::fs::write(&args.out, svg)?;
    vlog!("wrote SVG to {}", args.out.display());
    Ok(())
}
