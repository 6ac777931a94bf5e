use crate::io::load_shape;
use crate::{EXIT_DISAGREE, EXIT_INPUT, EXIT_OK};
use clap::{Args, Parser, Subcommand, ValueEnum};
use polyvar::families::{
    fake_regular, losange, random_simple_polygon, regular_polygon, star_stationary, trapeze,
    Shape,
};
use polyvar::oracle::{charpoly_roots, rayleigh_montecarlo_upper};
use polyvar::reilly::{
    reilly_report_polygon, reilly_report_polygon_with, reilly_report_star,
    reilly_report_star_with, DEFAULT_EQUALITY_TOL,
};
use polyvar::spectral::{
    cycle_laplacian, eigensolve, star_laplacian, Spectrum, SymMatrix, DEFAULT_CLUSTER_TOL,
};
use polyvar::transfer::{find_eigenvalues_transfer, DEFAULT_GRID_POINTS, DEFAULT_ROOT_TOL};
use rayon::prelude::*;
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;

/// Cross-method disagreement threshold (relative).
const METHOD_AGREEMENT_TOL: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(
    name = "polyvar",
    version,
    about = "Spectra, curvature, and Reilly residuals of polygons and star graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the spectrum of a polygon or star graph.
    Spectrum(SpectrumArgs),
    /// Print the Reilly report: lambda1, length, curvature energy,
    /// residual, and the equality class.
    Reilly(ReillyArgs),
    /// Sweep a family parameter and write one CSV row per grid point.
    Sweep(SweepArgs),
    /// Compare the dense eigensolver against both brute-force oracles.
    OracleCompare(OracleArgs),
}

/// Where the shape comes from: a JSON document or a named generator.
#[derive(Debug, Args)]
pub struct InputArgs {
    /// Path to a JSON input document.
    pub input: Option<PathBuf>,

    /// Generate the input instead of reading a file:
    /// regular, losange, trapeze, fake-regular, star, random.
    #[arg(long)]
    pub family: Option<String>,

    /// Family parameters, comma separated:
    /// regular `n[,side]`; losange `side,theta`; trapeze `theta`;
    /// fake-regular `n`; star `n[,length]`; random `n,seed,rmin,rmax`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub params: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Laplacian,
    Transfer,
    Both,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long, value_enum, default_value = "laplacian")]
    pub method: Method,

    /// Override the cluster tolerance (and, where relevant, the equality
    /// tolerance) together.
    #[arg(long)]
    pub tol: Option<f64>,

    /// Eigenvalue clustering tolerance (default 1e-7 relative).
    #[arg(long)]
    pub cluster_tol: Option<f64>,

    /// Emit one JSON object instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ReillyArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Override cluster and equality tolerances together.
    #[arg(long)]
    pub tol: Option<f64>,

    /// Eigenvalue clustering tolerance (default 1e-7 relative).
    #[arg(long)]
    pub cluster_tol: Option<f64>,

    /// Equality tolerance relative to the curvature energy
    /// (default 1e-8).
    #[arg(long)]
    pub eq_tol: Option<f64>,

    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Family to sweep: trapeze, regular, fake-regular, star.
    #[arg(long)]
    pub family: String,

    #[arg(long)]
    pub from: f64,

    #[arg(long)]
    pub to: f64,

    /// Number of grid points (rows).
    #[arg(long)]
    pub steps: usize,

    /// Output CSV path.
    #[arg(long)]
    pub csv: PathBuf,

    /// Edge length for the regular family (default 1).
    #[arg(long, default_value_t = 1.0)]
    pub side: f64,

    /// Leg length for the star family (default 1).
    #[arg(long, default_value_t = 1.0)]
    pub length: f64,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Monte-Carlo sample count.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,

    /// Monte-Carlo seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Executes a parsed command line; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Reilly(args) => cmd_reilly(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::OracleCompare(args) => cmd_oracle_compare(args),
    }
}

fn fail_input(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    EXIT_INPUT
}

fn resolve_shape(input: &InputArgs) -> Result<Shape, String> {
    match (&input.input, &input.family) {
        (Some(_), Some(_)) => Err("give either an input file or --family, not both".into()),
        (Some(path), None) => load_shape(path),
        (None, Some(family)) => build_family(family, &input.params),
        (None, None) => Err("no input: pass a JSON document path or --family".into()),
    }
}

fn build_family(family: &str, params: &[f64]) -> Result<Shape, String> {
    let int = |x: f64, what: &str| -> Result<usize, String> {
        if x.fract() != 0.0 || x < 0.0 {
            return Err(format!("{what} must be a nonnegative integer, got {x}"));
        }
        Ok(x as usize)
    };
    let arity = |lo: usize, hi: usize| -> Result<(), String> {
        if params.len() < lo || params.len() > hi {
            return Err(format!(
                "family {family} takes {lo}..={hi} parameters, got {}",
                params.len()
            ));
        }
        Ok(())
    };
    let shape = match family {
        "regular" => {
            arity(1, 2)?;
            let n = int(params[0], "n")?;
            let side = params.get(1).copied().unwrap_or(1.0);
            Shape::Polygon(regular_polygon(n, side).map_err(|e| e.to_string())?)
        }
        "losange" => {
            arity(2, 2)?;
            Shape::Polygon(losange(params[0], params[1]).map_err(|e| e.to_string())?)
        }
        "trapeze" => {
            arity(1, 1)?;
            Shape::Polygon(trapeze(params[0]).map_err(|e| e.to_string())?)
        }
        "fake-regular" => {
            arity(1, 1)?;
            let n = int(params[0], "n")?;
            Shape::Polygon(fake_regular(n).map_err(|e| e.to_string())?)
        }
        "star" => {
            arity(1, 2)?;
            let n = int(params[0], "n")?;
            let length = params.get(1).copied().unwrap_or(1.0);
            Shape::Star(star_stationary(n, length).map_err(|e| e.to_string())?)
        }
        "random" => {
            arity(4, 4)?;
            let n = int(params[0], "n")?;
            let seed = int(params[1], "seed")? as u64;
            Shape::Polygon(
                random_simple_polygon(n, seed, params[2], params[3])
                    .map_err(|e| e.to_string())?,
            )
        }
        other => return Err(format!("unknown family {other}")),
    };
    Ok(shape)
}

fn print_spectrum(label: &str, s: &Spectrum) {
    println!("spectrum ({label}):");
    for (l, m) in s.eigenvalues.iter().zip(&s.multiplicities) {
        if *m == 1 {
            println!("  {l}");
        } else {
            println!("  {l} (x{m})");
        }
    }
}

/// Prepends the zero eigenvalue the transfer scan deliberately skips.
fn with_kernel(s: &Spectrum) -> Spectrum {
    let mut eigenvalues = vec![0.0];
    eigenvalues.extend_from_slice(&s.eigenvalues);
    let mut multiplicities = vec![1];
    multiplicities.extend_from_slice(&s.multiplicities);
    Spectrum {
        eigenvalues,
        multiplicities,
        cluster_tol: s.cluster_tol,
    }
}

/// Largest relative gap between the two expanded nonzero spectra, or
/// `None` on a structural mismatch.
fn spectra_discrepancy(a: &Spectrum, b: &Spectrum) -> Option<f64> {
    let av = a.expanded();
    let bv = b.expanded();
    if av.len() != bv.len() {
        return None;
    }
    Some(
        av.iter()
            .zip(&bv)
            .map(|(x, y)| (x - y).abs() / x.abs().max(y.abs()).max(1e-300))
            .fold(0.0, f64::max),
    )
}

fn cmd_spectrum(args: SpectrumArgs) -> i32 {
    let shape = match resolve_shape(&args.input) {
        Ok(s) => s,
        Err(msg) => return fail_input(&msg),
    };
    let cluster_tol = args.cluster_tol.or(args.tol).unwrap_or(DEFAULT_CLUSTER_TOL);

    let lengths: Vec<f64>;
    let matrix = match &shape {
        Shape::Polygon(p) => {
            lengths = p.edge_lengths().to_vec();
            cycle_laplacian(&lengths)
        }
        Shape::Star(g) => {
            if args.method != Method::Laplacian {
                return fail_input("the transfer method applies to polygons only");
            }
            lengths = g.edge_lengths().to_vec();
            star_laplacian(&lengths)
        }
    };
    let matrix = match matrix {
        Ok(m) => m,
        Err(e) => return fail_input(&e.to_string()),
    };

    let dense = if args.method != Method::Transfer {
        match eigensolve(&matrix, cluster_tol) {
            Ok(sol) => Some(sol.spectrum),
            Err(e) => return fail_input(&e.to_string()),
        }
    } else {
        None
    };
    let transfer = if args.method != Method::Laplacian {
        match find_eigenvalues_transfer(&lengths, DEFAULT_GRID_POINTS, DEFAULT_ROOT_TOL) {
            Ok(s) => Some(s),
            Err(e) => return fail_input(&e.to_string()),
        }
    } else {
        None
    };

    let mut discrepancy = None;
    let mut agree = true;
    if let (Some(d), Some(t)) = (&dense, &transfer) {
        let nonzero = Spectrum {
            eigenvalues: d.eigenvalues.iter().copied().filter(|&l| l > cluster_tol).collect(),
            multiplicities: d
                .eigenvalues
                .iter()
                .zip(&d.multiplicities)
                .filter(|(l, _)| **l > cluster_tol)
                .map(|(_, m)| *m)
                .collect(),
            cluster_tol,
        };
        match spectra_discrepancy(&nonzero, t) {
            Some(rel) => {
                discrepancy = Some(rel);
                agree = rel <= METHOD_AGREEMENT_TOL;
            }
            None => agree = false,
        }
    }

    if args.json {
        let mut obj = json!({});
        if let Some(d) = &dense {
            obj["eigenvalues"] = json!(d.eigenvalues);
            obj["multiplicities"] = json!(d.multiplicities);
        }
        if let Some(t) = &transfer {
            let t = with_kernel(t);
            obj["transfer_eigenvalues"] = json!(t.eigenvalues);
            obj["transfer_multiplicities"] = json!(t.multiplicities);
        }
        if let Some(rel) = discrepancy {
            obj["discrepancy"] = json!(rel);
        }
        obj["method"] = json!(match args.method {
            Method::Laplacian => "laplacian",
            Method::Transfer => "transfer",
            Method::Both => "both",
        });
        println!("{obj}");
    } else {
        if let Some(d) = &dense {
            print_spectrum("laplacian", d);
        }
        if let Some(t) = &transfer {
            print_spectrum("transfer", &with_kernel(t));
        }
        if let Some(rel) = discrepancy {
            println!("cross-method max relative discrepancy: {rel:e}");
        }
    }

    if agree {
        EXIT_OK
    } else {
        eprintln!("error: methods disagree beyond {METHOD_AGREEMENT_TOL:e}");
        EXIT_DISAGREE
    }
}

fn cmd_reilly(args: ReillyArgs) -> i32 {
    let shape = match resolve_shape(&args.input) {
        Ok(s) => s,
        Err(msg) => return fail_input(&msg),
    };
    let eq_tol = args.eq_tol.or(args.tol).unwrap_or(DEFAULT_EQUALITY_TOL);
    let cluster_tol = args.cluster_tol.or(args.tol).unwrap_or(DEFAULT_CLUSTER_TOL);
    let report = match &shape {
        Shape::Polygon(p) => reilly_report_polygon_with(p, eq_tol, cluster_tol),
        Shape::Star(g) => reilly_report_star_with(g, eq_tol, cluster_tol),
    };
    let report = match report {
        Ok(r) => r,
        Err(e) => return fail_input(&e.to_string()),
    };
    if args.json {
        println!(
            "{}",
            json!({
                "lambda1": report.lambda1,
                "total_length": report.total_length,
                "curvature_energy": report.curvature_energy,
                "residual": report.residual,
                "equality": report.equality,
                "classification": report.classification.to_string(),
            })
        );
    } else {
        println!("lambda1          = {}", report.lambda1);
        println!("total_length     = {}", report.total_length);
        println!("curvature_energy = {}", report.curvature_energy);
        println!("residual         = {}", report.residual);
        println!("equality         = {}", report.equality);
        println!("classification   = {}", report.classification);
    }
    EXIT_OK
}

struct SweepRow {
    param: f64,
    param_is_integer: bool,
    lambda1: f64,
    lambda2: Option<f64>,
    total_length: f64,
    energy: f64,
    residual: f64,
    class: String,
}

fn sweep_point(family: &str, param: f64, side: f64, length: f64) -> Result<SweepRow, String> {
    let (shape, param_is_integer) = match family {
        "trapeze" => (Shape::Polygon(trapeze(param).map_err(|e| e.to_string())?), false),
        "regular" => (
            Shape::Polygon(regular_polygon(param.round() as usize, side).map_err(|e| e.to_string())?),
            true,
        ),
        "fake-regular" => (
            Shape::Polygon(fake_regular(param.round() as usize).map_err(|e| e.to_string())?),
            true,
        ),
        "star" => (
            Shape::Star(star_stationary(param.round() as usize, length).map_err(|e| e.to_string())?),
            true,
        ),
        other => return Err(format!("unknown sweep family {other}")),
    };

    let (report, spectrum) = match &shape {
        Shape::Polygon(p) => {
            let r = reilly_report_polygon(p, DEFAULT_EQUALITY_TOL).map_err(|e| e.to_string())?;
            let s = eigensolve(&cycle_laplacian(p.edge_lengths()).unwrap(), DEFAULT_CLUSTER_TOL)
                .map_err(|e| e.to_string())?
                .spectrum;
            (r, s)
        }
        Shape::Star(g) => {
            let r = reilly_report_star(g, DEFAULT_EQUALITY_TOL).map_err(|e| e.to_string())?;
            let s = eigensolve(&star_laplacian(g.edge_lengths()).unwrap(), DEFAULT_CLUSTER_TOL)
                .map_err(|e| e.to_string())?
                .spectrum;
            (r, s)
        }
    };
    let lambda2 = spectrum
        .eigenvalues
        .iter()
        .filter(|&&l| l > DEFAULT_CLUSTER_TOL)
        .nth(1)
        .copied();
    Ok(SweepRow {
        param,
        param_is_integer,
        lambda1: report.lambda1,
        lambda2,
        total_length: report.total_length,
        energy: report.curvature_energy,
        residual: report.residual,
        class: report.classification.to_string(),
    })
}

/// 17 significant digits, locale independent.
fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn cmd_sweep(args: SweepArgs) -> i32 {
    if args.steps == 0 {
        return fail_input("--steps must be positive");
    }
    let grid: Vec<f64> = if args.steps == 1 {
        vec![args.from]
    } else {
        (0..args.steps)
            .map(|i| args.from + (args.to - args.from) * i as f64 / (args.steps - 1) as f64)
            .collect()
    };

    let results: Vec<Result<SweepRow, String>> = grid
        .par_iter()
        .map(|&param| sweep_point(&args.family, param, args.side, args.length))
        .collect();

    let mut rows = Vec::with_capacity(results.len());
    for r in results {
        match r {
            Ok(row) => rows.push(row),
            Err(msg) => return fail_input(&msg),
        }
    }

    let file = match std::fs::File::create(&args.csv) {
        Ok(f) => f,
        Err(e) => return fail_input(&format!("{}: {e}", args.csv.display())),
    };
    let mut w = std::io::BufWriter::new(file);
    let write = |w: &mut dyn Write| -> std::io::Result<()> {
        writeln!(w, "param,lambda1,lambda2,total_length,energy,residual,class")?;
        for row in &rows {
            let param = if row.param_is_integer {
                format!("{}", row.param.round() as i64)
            } else {
                fmt17(row.param)
            };
            let lambda2 = row.lambda2.map(fmt17).unwrap_or_default();
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                param,
                fmt17(row.lambda1),
                lambda2,
                fmt17(row.total_length),
                fmt17(row.energy),
                fmt17(row.residual),
                row.class
            )?;
        }
        Ok(())
    };
    match write(&mut w).and_then(|_| w.flush()) {
        Ok(()) => {
            println!("wrote {} rows to {}", rows.len(), args.csv.display());
            EXIT_OK
        }
        Err(e) => fail_input(&format!("{}: {e}", args.csv.display())),
    }
}

fn cmd_oracle_compare(args: OracleArgs) -> i32 {
    let shape = match resolve_shape(&args.input) {
        Ok(s) => s,
        Err(msg) => return fail_input(&msg),
    };
    let matrix: SymMatrix = match &shape {
        Shape::Polygon(p) => cycle_laplacian(p.edge_lengths()),
        Shape::Star(g) => star_laplacian(g.edge_lengths()),
    }
    .expect("validated shape has positive lengths");

    let dense = match eigensolve(&matrix, DEFAULT_CLUSTER_TOL) {
        Ok(sol) => match sol.spectrum.lambda1() {
            Ok(l) => l,
            Err(e) => return fail_input(&e.to_string()),
        },
        Err(e) => return fail_input(&e.to_string()),
    };
    let charpoly = match charpoly_roots(&matrix, 1e-12) {
        Ok(r) => match r.eigenvalues.iter().copied().find(|&l| l > DEFAULT_CLUSTER_TOL) {
            Some(l) => l,
            None => return fail_input("oracle found no nonzero eigenvalue"),
        },
        Err(e) => return fail_input(&e.to_string()),
    };
    let montecarlo = rayleigh_montecarlo_upper(&matrix, args.samples, args.seed)
        .certified_upper_bound
        .expect("monte-carlo always returns a bound");

    let vals = [("eigensolve", dense), ("charpoly", charpoly), ("montecarlo", montecarlo)];
    let mut worst = 0.0f64;
    for (name, v) in vals {
        println!("lambda1 ({name:10}) = {v}");
        for (_, w) in vals {
            worst = worst.max((v - w).abs() / v.abs().max(w.abs()).max(1e-300));
        }
    }
    println!("max pairwise relative discrepancy: {worst:e}");
    if worst <= METHOD_AGREEMENT_TOL {
        EXIT_OK
    } else {
        eprintln!("error: oracle disagreement beyond {METHOD_AGREEMENT_TOL:e}");
        EXIT_DISAGREE
    }
}
