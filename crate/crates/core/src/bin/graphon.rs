//! Command-line front end: construction, norms, homomorphism densities,
//! inequality verification, and W-random graph sampling.
//!
//! Reports are JSON envelopes (`schema_version`, time-dependent `header`,
//! deterministic `payload`) written to `--out` when given, otherwise to
//! stdout. Exit codes: 0 ok, 2 input/validation, 3 numerical
//! non-convergence, 4 inequality falsified, 5 enumeration budget exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use graphon::error::Error;
use graphon::homomorphism::{self, Motif};
use graphon::io::{self, ReportEnvelope, ReportHeader};
use graphon::kernel::{GraphonFamily, StepGraphon, StepKernel};
use graphon::norms::{full_norm_report, NormConfig};
use graphon::tolerances::SPECTRAL_TOL;
use graphon::verify::{self, FamilyKind, FamilySpec, WeightMode};

const EXIT_INPUT: u8 = 2;
const EXIT_NON_CONVERGENCE: u8 = 3;
const EXIT_FALSIFIED: u8 = 4;
const EXIT_BUDGET: u8 = 5;

#[derive(Parser)]
#[command(
    name = "graphon",
    version,
    about = "Step graphon/kernel norms, homomorphism densities, and inequality verification"
)]
struct Cli {
    /// Worker threads for family verification (default: available cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Print progress and summaries to stderr
    #[arg(short, long, global = true, action = ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the four norms of a kernel file, with certificates
    Norms(NormsArgs),
    /// Check the norm inequalities on a kernel file or a random family
    Verify(VerifyArgs),
    /// Homomorphism density of a motif in a step graphon
    Hom(HomArgs),
    /// Compare t(C2, W) with the squared Hilbert-Schmidt norm
    Errata(ErrataArgs),
    /// Generate a step graphon from a named family or an adjacency file
    Gen(GenArgs),
    /// Sample a W-random graph from a step graphon
    Sample(SampleArgs),
}

#[derive(Args)]
struct CommonNormFlags {
    /// Exact-enumeration block limit for the cut norm (the ∞,1 norm allows
    /// one more block thanks to its sign symmetry)
    #[arg(long, default_value_t = graphon::norms::CUT_EXACT_LIMIT)]
    exact_limit: usize,

    /// Random restarts for the heuristic lower bounds
    #[arg(long, default_value_t = graphon::norms::DEFAULT_RESTARTS)]
    restarts: u32,

    /// Seed for heuristic restarts and random families
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Convergence tolerance for the spectral (2,2) norm
    #[arg(long, default_value_t = SPECTRAL_TOL)]
    tol: f64,
}

impl CommonNormFlags {
    fn config(&self) -> NormConfig {
        NormConfig {
            cut_exact_limit: self.exact_limit,
            inf1_exact_limit: self.exact_limit + 1,
            spectral_tol: self.tol,
            restarts: self.restarts,
            seed: self.seed,
            ..NormConfig::default()
        }
    }
}

#[derive(Args)]
struct NormsArgs {
    /// Kernel file to analyze
    kernel: PathBuf,

    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,

    #[command(flatten)]
    flags: CommonNormFlags,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RandomKind {
    /// Random step graphons (values in [0,1])
    Graphon,
    /// Random step kernels with values in [-1,1]
    Kernel,
    /// Differences of two independent random graphons
    Difference,
}

#[derive(Args)]
struct VerifyArgs {
    /// Kernel file to verify (omit when using --random)
    kernel: Option<PathBuf>,

    /// Verify a random family instead: max block count and instance count
    #[arg(long, num_args = 2, value_names = ["MAX_N", "COUNT"], conflicts_with = "kernel")]
    random: Option<Vec<usize>>,

    /// Family to draw when using --random
    #[arg(long, value_enum, default_value_t = RandomKind::Graphon)]
    kind: RandomKind,

    /// Weight distribution for random kernels
    #[arg(long, value_enum, default_value_t = WeightArg::Uniform)]
    weights: WeightArg,

    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,

    #[command(flatten)]
    flags: CommonNormFlags,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum WeightArg {
    Uniform,
    Dirichlet,
}

impl From<WeightArg> for WeightMode {
    fn from(w: WeightArg) -> Self {
        match w {
            WeightArg::Uniform => WeightMode::Uniform,
            WeightArg::Dirichlet => WeightMode::DirichletLike,
        }
    }
}

#[derive(Args)]
struct HomArgs {
    /// Motif file
    motif: PathBuf,

    /// Graphon file (a kernel file with values in [0,1])
    kernel: PathBuf,

    /// For cycle motifs, also compute the density through the spectrum of
    /// the weighted operator matrix and print both values and their difference
    #[arg(long)]
    spectral_check: bool,

    /// Write a report here in addition to printing the value
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ErrataArgs {
    /// Graphon file
    kernel: PathBuf,

    /// Write a report here in addition to printing the values
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// Family name: constant, product, min, sbm, exp-decay
    #[arg(long, conflicts_with = "from_adjacency")]
    family: Option<String>,

    /// Family parameters, comma separated (e.g. --params 0,1,1,0 for sbm)
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    params: Vec<f64>,

    /// Number of uniform blocks in the discretization
    #[arg(long, default_value_t = 1)]
    resolution: usize,

    /// Build the induced step graphon of a graph instead of a named family
    #[arg(long)]
    from_adjacency: Option<PathBuf>,

    /// Write the kernel file here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    /// Graphon file to sample from
    kernel: PathBuf,

    /// Number of vertices
    #[arg(long)]
    nodes: usize,

    /// Sampling seed
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Write the adjacency file here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // Ignore failure: the global pool can already be set in tests.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NonConvergence { .. } => EXIT_NON_CONVERGENCE,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

/// 17 significant digits: enough to round-trip any f64.
fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn run(cli: &Cli) -> graphon::Result<u8> {
    let started = Instant::now();
    match &cli.command {
        Command::Norms(args) => cmd_norms(cli, args, started),
        Command::Verify(args) => cmd_verify(cli, args, started),
        Command::Hom(args) => cmd_hom(cli, args, started),
        Command::Errata(args) => cmd_errata(cli, args, started),
        Command::Gen(args) => cmd_gen(args),
        Command::Sample(args) => cmd_sample(args),
    }
}

fn header(started: Instant) -> ReportHeader {
    ReportHeader {
        tool: format!("graphon {}", env!("CARGO_PKG_VERSION")),
        created_unix_ms: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_millis() as u64)
            .unwrap_or(0),
        elapsed_ms: started.elapsed().as_millis() as u64,
        command: std::env::args().skip(1).collect::<Vec<_>>().join(" "),
    }
}

/// Write the report to `--out`, or print it to stdout when no path is given.
fn emit_report<T: Serialize>(
    out: Option<&Path>,
    started: Instant,
    payload: T,
) -> graphon::Result<()> {
    let envelope = ReportEnvelope::new(header(started), payload);
    match out {
        Some(path) => io::save_report(path, &envelope),
        None => {
            let text = serde_json::to_string_pretty(&envelope).map_err(|source| Error::Json {
                context: "serializing report".into(),
                source,
            })?;
            println!("{text}");
            Ok(())
        }
    }
}

fn load_graphon(path: &Path) -> graphon::Result<StepGraphon> {
    let kernel = io::load_kernel(path)?;
    StepGraphon::from_kernel(kernel)
        .map_err(|e| Error::GraphonRequired(format!("{} — {e}", path.display())))
}

fn cmd_norms(cli: &Cli, args: &NormsArgs, started: Instant) -> graphon::Result<u8> {
    let kernel = io::load_kernel(&args.kernel)?;
    let report = full_norm_report(&kernel, &args.flags.config())?;
    if cli.verbose > 0 || args.out.is_some() {
        let summary = format!(
            "cut_norm_1 = {} ({})\nop_inf1 = {} ({})\nop_22 = {} ({} iterations, residual {:.3e})\nhs = {}",
            fmt(report.cut_norm_1.value),
            report.cut_norm_1.method,
            fmt(report.op_inf1.value),
            report.op_inf1.method,
            fmt(report.op_22.value),
            report.op_22.iterations,
            report.op_22.residual,
            fmt(report.hs),
        );
        if args.out.is_some() {
            println!("{summary}");
        } else {
            eprintln!("{summary}");
        }
    }
    emit_report(args.out.as_deref(), started, report)?;
    Ok(0)
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum VerifyPayload {
    VerifyKernel {
        verification: Box<verify::KernelVerification>,
    },
    VerifyFamily {
        report: Box<verify::FamilyReport>,
    },
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs, started: Instant) -> graphon::Result<u8> {
    let config = args.flags.config();
    match (&args.kernel, &args.random) {
        (Some(path), None) => {
            let kernel = io::load_kernel(path)?;
            let verification = verify::verify_kernel(&kernel, &config)?;
            let conclusive = verification.status.is_conclusive();
            let falsified = conclusive && !verification.all_pass();
            let line = if falsified {
                "FALSIFIED".to_string()
            } else if conclusive {
                format!(
                    "pass: 6/6 inequalities, slacks [{}]",
                    verification
                        .slacks()
                        .iter()
                        .map(|s| fmt(*s))
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            } else {
                "non-conclusive: heuristic lower bounds only".to_string()
            };
            if args.out.is_some() {
                println!("{line}");
            } else {
                eprintln!("{line}");
            }
            emit_report(
                args.out.as_deref(),
                started,
                VerifyPayload::VerifyKernel {
                    verification: Box::new(verification),
                },
            )?;
            Ok(if falsified { EXIT_FALSIFIED } else { 0 })
        }
        (None, Some(random)) => {
            let (max_n, count) = (random[0], random[1]);
            let spec = FamilySpec {
                kind: match args.kind {
                    RandomKind::Graphon => FamilyKind::Graphon,
                    RandomKind::Kernel => FamilyKind::Kernel { lo: -1.0, hi: 1.0 },
                    RandomKind::Difference => FamilyKind::GraphonDifference,
                },
                min_blocks: 1,
                max_blocks: max_n,
                count,
                seed: args.flags.seed,
                weight_mode: args.weights.into(),
            };
            let report = verify::verify_family(&spec, &config)?;
            let pass = report.all_pass();
            let line = format!(
                "{}/{} instances pass{}",
                report.aggregate.passed,
                report.aggregate.total,
                if report.aggregate.non_conclusive > 0 {
                    format!(" ({} non-conclusive)", report.aggregate.non_conclusive)
                } else {
                    String::new()
                }
            );
            if args.out.is_some() {
                println!("{line}");
            } else {
                eprintln!("{line}");
            }
            if cli.verbose > 0 {
                for w in &report.aggregate.worst_slacks {
                    eprintln!("worst slack {}: {} (instance {})", w.inequality, fmt(w.slack), w.instance);
                }
            }
            emit_report(
                args.out.as_deref(),
                started,
                VerifyPayload::VerifyFamily {
                    report: Box::new(report),
                },
            )?;
            Ok(if pass { 0 } else { EXIT_FALSIFIED })
        }
        _ => Err(Error::Usage(
            "verify needs exactly one of a kernel file or --random MAX_N COUNT".into(),
        )),
    }
}

#[derive(Serialize)]
struct HomPayload {
    motif: io::MotifFile,
    kernel_digest: String,
    density: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    spectral: Option<SpectralCross>,
}

#[derive(Serialize)]
struct SpectralCross {
    cycle_length: usize,
    value: f64,
    difference: f64,
}

/// Recognize a cycle C_k (k >= 3): k vertices, k edges, every degree 2,
/// connected.
fn cycle_length(motif: &Motif) -> Option<usize> {
    let n = motif.vertex_count();
    if n < 3 || motif.edges().len() != n {
        return None;
    }
    let mut degree = vec![0usize; n];
    let mut adjacency = vec![Vec::new(); n];
    for &(a, b) in motif.edges() {
        degree[a] += 1;
        degree[b] += 1;
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    if degree.iter().any(|d| *d != 2) {
        return None;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut visited = 0;
    while let Some(v) = stack.pop() {
        visited += 1;
        for &u in &adjacency[v] {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    (visited == n).then_some(n)
}

fn cmd_hom(_cli: &Cli, args: &HomArgs, started: Instant) -> graphon::Result<u8> {
    let motif = io::load_motif(&args.motif)?;
    let graphon = load_graphon(&args.kernel)?;
    let density = homomorphism::hom_density(&motif, &graphon)?;
    println!("{}", fmt(density));
    let spectral = if args.spectral_check {
        let k = cycle_length(&motif).ok_or_else(|| {
            Error::InvalidMotif("--spectral-check requires a cycle motif C_k, k >= 3".into())
        })?;
        let value = homomorphism::cycle_density_spectral(k, &graphon)?;
        let difference = density - value;
        println!("{}", fmt(value));
        println!("{}", fmt(difference));
        Some(SpectralCross {
            cycle_length: k,
            value,
            difference,
        })
    } else {
        None
    };
    if args.out.is_some() {
        let payload = HomPayload {
            motif: io::MotifFile::from_motif(&motif),
            kernel_digest: graphon.digest(),
            density,
            spectral,
        };
        emit_report(args.out.as_deref(), started, payload)?;
    }
    Ok(0)
}

#[derive(Serialize)]
struct ErrataPayload {
    kernel_digest: String,
    witness: graphon::ErrataWitness,
}

fn cmd_errata(_cli: &Cli, args: &ErrataArgs, started: Instant) -> graphon::Result<u8> {
    let graphon = load_graphon(&args.kernel)?;
    let witness = homomorphism::errata_gap(&graphon);
    println!("{}", fmt(witness.t_c2));
    println!("{}", fmt(witness.hs_squared));
    println!("{}", fmt(witness.gap));
    if args.out.is_some() {
        let payload = ErrataPayload {
            kernel_digest: graphon.digest(),
            witness,
        };
        emit_report(args.out.as_deref(), started, payload)?;
    }
    Ok(0)
}

fn emit_kernel(out: Option<&Path>, kernel: &StepKernel) -> graphon::Result<()> {
    match out {
        Some(path) => io::save_kernel(path, kernel),
        None => {
            let file = io::KernelFile::from_kernel(kernel);
            let text = serde_json::to_string_pretty(&file).map_err(|source| Error::Json {
                context: "serializing kernel".into(),
                source,
            })?;
            println!("{text}");
            Ok(())
        }
    }
}

fn cmd_gen(args: &GenArgs) -> graphon::Result<u8> {
    let graphon = match (&args.family, &args.from_adjacency) {
        (Some(name), None) => GraphonFamily::parse(name, &args.params)?.build(args.resolution)?,
        (None, Some(path)) => StepGraphon::from_adjacency(&io::load_adjacency(path)?)?,
        _ => {
            return Err(Error::InvalidParams {
                family: "gen".into(),
                reason: "need exactly one of --family or --from-adjacency".into(),
            })
        }
    };
    emit_kernel(args.out.as_deref(), graphon.as_kernel())?;
    Ok(0)
}

fn cmd_sample(args: &SampleArgs) -> graphon::Result<u8> {
    let graphon = load_graphon(&args.kernel)?;
    let graph = graphon.sample_graph(args.nodes, args.seed)?;
    match args.out.as_deref() {
        Some(path) => io::save_adjacency(path, &graph)?,
        None => {
            let file = io::AdjacencyFile::from_graph(&graph);
            let text = serde_json::to_string_pretty(&file).map_err(|source| Error::Json {
                context: "serializing adjacency".into(),
                source,
            })?;
            println!("{text}");
        }
    }
    Ok(0)
}
