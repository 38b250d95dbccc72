//! Command-line driver: construct code files, verify them against the
//! amplitude-damping channels, run the combinatorial searches, and print
//! the reference tables.
//!
//! Exit codes: 0 success/pass, 1 verification failure, 2 usage error,
//! 3 resource cap reached.

mod codefile;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use codefile::{ClassicalCodeFile, QuantumCodeFile};
use qadc::channels::{CascadeCoefficient, ChannelSpec};
use qadc::constructions::{
    five_one_three_five, gc_classical, gc_construct, gc_plan, multi_error_construct,
    outer_registry, table_ii, table_iii, v_lambda_construct, GcFlavor, VLambdaPattern,
};
use qadc::search::{
    max_code_search, partition_search, SearchCertificate, SearchLimits, SearchMode,
    SearchOutcome, DEFAULT_NODE_CAP,
};
use qadc::verifier::{order_slope, verify_single_ad_combinatorial, VerifierOptions};
use qadc::{Error as QadcError, QuantumCode};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "qadc", version, about = "Qudit amplitude-damping code toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and write it to a JSON file.
    Construct {
        #[command(subcommand)]
        which: ConstructCmd,
    },
    /// Check a code file against a channel.
    Verify(VerifyArgs),
    /// Run a combinatorial search.
    Search {
        #[command(subcommand)]
        which: SearchCmd,
    },
    /// Print the reference dimension tables.
    Tables(TablesArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Linear,
    Nonlinear,
    NonlinearLen3,
}

impl From<FlavorArg> for GcFlavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Linear => GcFlavor::Linear,
            FlavorArg::Nonlinear => GcFlavor::Nonlinear,
            FlavorArg::NonlinearLen3 => GcFlavor::NonlinearLen3,
        }
    }
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Generalized concatenation of inner partitions with an outer code.
    Gc {
        #[arg(long)]
        q: u8,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "linear")]
        flavor: FlavorArg,
        /// Outer code file; defaults to the built-in registry.
        #[arg(long)]
        outer_file: Option<PathBuf>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Even-parity block construction with a quantum outer code.
    Multi {
        #[arg(long)]
        q: u8,
        #[arg(long)]
        m: usize,
        /// Outer quantum code selector; `5_1_3_5` is the built-in one.
        #[arg(long, default_value = "5_1_3_5")]
        outer: String,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// V/Lambda substitution construction with a quantum outer code.
    Vlambda {
        #[arg(long, value_parser = parse_pattern)]
        pattern: VLambdaPattern,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "5_1_3_5")]
        outer: String,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

fn parse_pattern(s: &str) -> Result<VLambdaPattern, String> {
    match s.to_ascii_lowercase().as_str() {
        "l1" => Ok(VLambdaPattern::L1),
        "l2" => Ok(VLambdaPattern::L2),
        other => Err(format!("unknown pattern {other:?}, expected l1 or l2")),
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ChannelArg {
    Bosonic,
    Cascade,
    V,
    Lambda,
}

#[derive(Args)]
struct VerifyArgs {
    /// Code file produced by `construct`.
    #[arg(long)]
    code: PathBuf,
    #[arg(long, value_enum)]
    channel: ChannelArg,
    /// Target error order t.
    #[arg(long)]
    t: u32,
    /// Comma-separated decreasing parameter grid.
    #[arg(long, value_delimiter = ',')]
    grid: Option<Vec<f64>>,
    /// Damping-weight cutoff for operator enumeration (default 2t+2).
    #[arg(long)]
    max_damping: Option<u32>,
    /// Rates for the two-rate channels.
    #[arg(long, default_value_t = 1.0)]
    k1: f64,
    #[arg(long, default_value_t = 2.0)]
    k2: f64,
    /// Worker threads for the pair scan (results are thread-count
    /// independent).
    #[arg(long)]
    threads: Option<usize>,
    /// Write the full JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Partition into disjoint equal-size self-complementary 1-codes.
    Partition {
        #[arg(long)]
        q: u8,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        parts: usize,
        /// Words per part.
        #[arg(long)]
        size: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Maximize the common size of disjoint self-complementary 1-codes.
    Max {
        #[arg(long)]
        q: u8,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        parts: usize,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: ModeArg,
        #[arg(long, default_value_t = 20260801)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Greedy,
}

#[derive(Args)]
struct TablesArgs {
    /// Which table: `ii` (single-error dimensions) or `iii` (multi-error).
    #[arg(long)]
    which: String,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Serialize)]
struct RunConfig {
    version: &'static str,
    argv: Vec<String>,
}

fn run_config() -> RunConfig {
    RunConfig {
        version: VERSION,
        argv: std::env::args().collect(),
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text.as_bytes()).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn print_summary(code: &QuantumCode) {
    let scope: Vec<String> = code.channel_scope.iter().map(|k| k.to_string()).collect();
    println!(
        "q={} n={} K={} t={} channels=[{}] provenance={}",
        code.q(),
        code.n(),
        code.dimension(),
        code.claimed_t,
        scope.join(","),
        code.provenance
    );
}

fn cmd_construct(which: ConstructCmd) -> Result<()> {
    match which {
        ConstructCmd::Gc {
            q,
            n,
            flavor,
            outer_file,
            out,
        } => {
            let flavor: GcFlavor = flavor.into();
            let plan = gc_plan(q, n, flavor)?;
            let outer = match outer_file {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    let file: ClassicalCodeFile = serde_json::from_str(&text)?;
                    file.load_outer()?
                }
                None => outer_registry(q, plan.outer_len, plan.outer_property)?,
            };
            let classical = gc_classical(q, n, &outer, flavor)?;
            if !verify_single_ad_combinatorial(&classical)? {
                bail!("internal verification failed: assembled code is not a self-complementary 1-code");
            }
            let quantum = gc_construct(q, n, &outer, flavor)?;
            let file = QuantumCodeFile::from_transversal(&classical, &quantum)?;
            let path = out.unwrap_or_else(|| PathBuf::from(format!("gc_q{q}_n{n}_{flavor}.json")));
            write_json(&path, &file)?;
            print_summary(&quantum);
            println!("wrote {}", path.display());
            Ok(())
        }
        ConstructCmd::Multi { q, m, outer, out } => {
            let outer_code = outer_by_name(&outer)?;
            let code = multi_error_construct(&outer_code, q, m, None)?;
            let file = QuantumCodeFile::from_general(&code);
            let path = out.unwrap_or_else(|| PathBuf::from(format!("multi_q{q}_m{m}.json")));
            write_json(&path, &file)?;
            print_summary(&code);
            println!("wrote {}", path.display());
            Ok(())
        }
        ConstructCmd::Vlambda {
            pattern,
            m,
            outer,
            out,
        } => {
            let outer_code = outer_by_name(&outer)?;
            let code = v_lambda_construct(&outer_code, pattern, m, None)?;
            let file = QuantumCodeFile::from_general(&code);
            let path =
                out.unwrap_or_else(|| PathBuf::from(format!("vlambda_{pattern}_m{m}.json")));
            write_json(&path, &file)?;
            print_summary(&code);
            println!("wrote {}", path.display());
            Ok(())
        }
    }
}

fn outer_by_name(name: &str) -> Result<QuantumCode> {
    match name {
        "5_1_3_5" => Ok(five_one_three_five()?),
        other => bail!("unknown outer code {other:?}; available: 5_1_3_5"),
    }
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    config: &'a RunConfig,
    combinatorial_single_error: Option<bool>,
    report: &'a qadc::verifier::DeviationReport,
}

fn cmd_verify(args: VerifyArgs) -> Result<bool> {
    if let Some(threads) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .ok();
    }
    let text = std::fs::read_to_string(&args.code)
        .with_context(|| format!("reading {}", args.code.display()))?;
    let file: QuantumCodeFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", args.code.display()))?;
    let (quantum, classical) = file.load()?;
    let combinatorial = match &classical {
        Some(c) => Some(verify_single_ad_combinatorial(c)?),
        None => None,
    };
    let spec = match args.channel {
        ChannelArg::Bosonic => ChannelSpec::Bosonic { q: quantum.q() },
        ChannelArg::Cascade => ChannelSpec::Cascade {
            q: quantum.q(),
            coefficients: Vec::<CascadeCoefficient>::new(),
        },
        ChannelArg::V => ChannelSpec::V {
            k1: args.k1,
            k2: args.k2,
        },
        ChannelArg::Lambda => ChannelSpec::Lambda {
            k1: args.k1,
            k2: args.k2,
        },
    };
    let mut opts = VerifierOptions::default();
    if let Some(grid) = args.grid {
        opts.grid = grid;
    }
    opts.max_damping = args.max_damping;
    let report = order_slope(&quantum, &spec, args.t, &opts)?;
    let config = run_config();
    let full = VerifyReport {
        config: &config,
        combinatorial_single_error: combinatorial,
        report: &report,
    };
    if let Some(path) = &args.json {
        write_json(path, &full)?;
    }
    let slope = report
        .fitted_slope
        .map_or("exact".to_string(), |s| format!("{s:.3}"));
    println!(
        "code={} channel={} t={} slope={} deviations={:?}",
        report.code_id,
        report.channel.kind(),
        report.t,
        slope,
        report.deviations
    );
    let pass = report.pass && combinatorial != Some(false);
    if let Some(comb) = combinatorial {
        println!("combinatorial single-error check: {}", if comb { "pass" } else { "fail" });
    }
    println!("verdict: {}", if pass { "PASS" } else { "FAIL" });
    Ok(pass)
}

#[derive(Serialize)]
struct CertificateFile {
    config: RunConfig,
    problem: String,
    outcome: SearchOutcome,
    words_per_part: usize,
    optimum_words_per_part: Option<usize>,
    nodes: u64,
    elapsed_ms: u128,
    reductions: Vec<String>,
    found_codes: Option<Vec<Vec<String>>>,
}

fn certificate_file(cert: &SearchCertificate) -> CertificateFile {
    CertificateFile {
        config: run_config(),
        problem: cert.problem.clone(),
        outcome: cert.outcome,
        words_per_part: cert.words_per_part,
        optimum_words_per_part: cert.optimum_words_per_part,
        nodes: cert.nodes,
        elapsed_ms: cert.elapsed_ms,
        reductions: cert.reductions.clone(),
        found_codes: cert.found.as_ref().map(|codes| {
            codes
                .iter()
                .map(|c| c.iter().map(|w| w.to_string()).collect())
                .collect()
        }),
    }
}

fn search_limits() -> SearchLimits {
    let node_cap = std::env::var("QADC_NODE_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_NODE_CAP);
    SearchLimits { node_cap }
}

fn cmd_search(which: SearchCmd) -> Result<SearchOutcome> {
    let (cert, json) = match which {
        SearchCmd::Partition {
            q,
            n,
            parts,
            size,
            json,
        } => (partition_search(q, n, parts, size, search_limits())?, json),
        SearchCmd::Max {
            q,
            n,
            parts,
            mode,
            seed,
            json,
        } => {
            let mode = match mode {
                ModeArg::Exhaustive => SearchMode::Exhaustive,
                ModeArg::Greedy => SearchMode::Greedy,
            };
            (max_code_search(q, n, parts, mode, search_limits(), seed)?, json)
        }
    };
    println!("{}", cert.problem);
    println!(
        "outcome={:?} words_per_part={} nodes={} elapsed_ms={}",
        cert.outcome, cert.words_per_part, cert.nodes, cert.elapsed_ms
    );
    for r in &cert.reductions {
        println!("  note: {r}");
    }
    if let Some(opt) = cert.optimum_words_per_part {
        println!("optimum words per part: {opt}");
    }
    if let Some(path) = json {
        write_json(&path, &certificate_file(&cert))?;
    }
    Ok(cert.outcome)
}

fn cmd_tables(args: TablesArgs) -> Result<()> {
    match args.which.to_ascii_lowercase().as_str() {
        "ii" | "2" => {
            let rows = table_ii()?;
            println!(
                "{:>3} {:>8} {:>8} {:>8} {:>12} {:>14}",
                "n", "GF(9)*", "CSS*", "AQECC*", "GC linear", "GC nonlinear"
            );
            for r in &rows {
                println!(
                    "{:>3} {:>8} {:>8} {:>8} {:>12} {:>14}",
                    r.n, r.gf9, r.css, r.aqecc, r.gc_linear_display, r.gc_nonlinear_display
                );
            }
            println!("columns marked * are literature values, not recomputed");
            if let Some(path) = args.json {
                write_json(&path, &rows)?;
            }
        }
        "iii" | "3" => {
            let rows = table_iii();
            println!(
                "{:>2} {:>3} {:>8} {:>8} {:>6} {:>22} {:>8}",
                "t", "n", "K", "log3(K)", "stab*", "CSS*", "bound*"
            );
            for r in &rows {
                let stab = r
                    .stabilizer_k
                    .map_or("unavailable".to_string(), |k| k.to_string());
                let css = r.css.unwrap_or("unavailable");
                let bound = r
                    .css_bound_k
                    .map_or("unavailable".to_string(), |k| k.to_string());
                println!(
                    "{:>2} {:>3} {:>8} {:>8.3} {:>6} {:>22} {:>8}",
                    r.t, r.n, r.dimension, r.log3_dimension, stab, css, bound
                );
            }
            println!("columns marked * are literature values, not recomputed");
            if let Some(path) = args.json {
                write_json(&path, &rows)?;
            }
        }
        other => bail!("unknown table {other:?}, expected ii or iii"),
    }
    Ok(())
}

fn exit_code_for_error(err: &anyhow::Error) -> u8 {
    if let Some(qerr) = err.downcast_ref::<QadcError>() {
        match qerr {
            QadcError::ResourceCap(_) => 3,
            QadcError::InvalidParameter(_) | QadcError::Unsupported(_) => 2,
            _ => 1,
        }
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: Result<u8> = match cli.command {
        Command::Construct { which } => cmd_construct(which).map(|_| 0),
        Command::Verify(args) => cmd_verify(args).map(|pass| if pass { 0 } else { 1 }),
        Command::Search { which } => cmd_search(which).map(|outcome| match outcome {
            SearchOutcome::BoundReached => 3,
            _ => 0,
        }),
        Command::Tables(args) => cmd_tables(args).map(|_| 0),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for_error(&err))
        }
    }
}
