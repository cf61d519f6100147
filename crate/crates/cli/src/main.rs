//! `lowpm`: generators, solver, oracle and theorem sweeps for ±1-labeled
//! complete graphs.
//!
//! Exit codes: 0 on success, 1 when a report records a failure (theorem
//! violation or solver/oracle mismatch), 2 on usage, parse or file errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lowpm::solver::oracle::DEFAULT_ORACLE_LIMIT;
use lowpm::verify::{self, Mode, Sampling, SweepSpec};
use lowpm::{
    clique_instance, local_search_min_weight, oracle_min_weight, parse_instance, parse_matching,
    proposition2_instance, random_with_imbalance, serialize_instance, Improvement, SearchPolicy,
    Start, TheoremId, VerifyReport,
};

#[derive(Parser, Debug)]
#[command(name = "lowpm", version, about = "Low-weight perfect matchings in ±1-labeled complete graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an instance in the signed-k format.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Run the exchange local search on an instance.
    Solve(SolveArgs),
    /// Exact minimum |sigma(M)| by exhaustive enumeration.
    Oracle(OracleArgs),
    /// Run one theorem verifier.
    Verify {
        #[command(subcommand)]
        theorem: VerifyTheorem,
    },
    /// Run a verifier over a parameter grid.
    Sweep(SweepArgs),
}

#[derive(Subcommand, Debug)]
enum GenFamily {
    /// Imbalance-2 instance of order k^2 + 4 without zero-weight matchings.
    Prop2 {
        #[arg(long)]
        k: u64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// K_4n whose plus-edges form a clique of order 3n + k.
    Clique {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Uniformly random instance with a prescribed imbalance.
    Random {
        #[arg(long)]
        order: usize,
        #[arg(long, allow_hyphen_values = true)]
        imbalance: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArg,
    },
}

#[derive(Args, Debug)]
struct OutputArg {
    /// Write to this file instead of stdout.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Rule {
    First,
    Best,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Oracle,
    Solver,
    Both,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Oracle => Mode::Oracle,
            ModeArg::Solver => Mode::Solver,
            ModeArg::Both => Mode::Both,
        }
    }
}

#[derive(Args, Debug)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    restarts: usize,
    #[arg(long, default_value_t = 256)]
    sideways: usize,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(2..=4))]
    max_exchange: u8,
    #[arg(long, value_enum, default_value_t = Rule::First)]
    rule: Rule,
    /// File holding a start matching (`matching a-b ..`).
    #[arg(long)]
    start: Option<PathBuf>,
    /// Also run the exact oracle and report agreement.
    #[arg(long)]
    check_oracle: bool,
    #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
    oracle_limit: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct OracleArgs {
    instance: PathBuf,
    #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
    oracle_limit: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest order handed to the oracle (at most 20; above 16 is slow).
    #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
    oracle_limit: usize,
    #[command(flatten)]
    out: OutputArg,
}

#[derive(Subcommand, Debug)]
enum VerifyTheorem {
    /// Balanced K_4n has a zero-weight perfect matching.
    Thm1 {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
        /// All 20 balanced labelings of K_4 (n = 1 only).
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Small imbalance forces a perfect matching of weight at most 2k - 2.
    Thm2 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        /// Instances per imbalance value.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Imbalance-2 family without zero-weight perfect matchings.
    Prop2 {
        #[arg(long)]
        k: u64,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// The clique family attains the imbalance bound.
    Tight {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[command(flatten)]
        report: ReportArgs,
    },
    /// Erdős–Gallai edge bound for a given matching number.
    Eg {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        report: ReportArgs,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TheoremArg {
    Thm1,
    Thm2,
    Prop2,
    Tight,
    Eg,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_enum)]
    theorem: TheoremArg,
    /// Comma-separated values or an inclusive range `a..b`.
    #[arg(long, default_value = "1")]
    n: String,
    #[arg(long, default_value = "2")]
    k: String,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    mode: ModeArg,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
    oracle_limit: usize,
    #[command(flatten)]
    out: OutputArg,
}

/// Failure of a command, carrying its exit code.
struct Failure {
    code: u8,
    message: Option<String>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: Some(message.into()),
        }
    }

    fn report() -> Self {
        Failure {
            code: 1,
            message: None,
        }
    }
}

impl From<lowpm::Error> for Failure {
    fn from(e: lowpm::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if let Some(m) = f.message {
                eprintln!("error: {m}");
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Gen { family } => gen(family),
        Command::Solve(args) => solve(args),
        Command::Oracle(args) => oracle(args),
        Command::Verify { theorem } => verify_cmd(theorem),
        Command::Sweep(args) => sweep(args),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read `{}`: {e}", path.display())))
}

fn emit(out: &OutputArg, text: &str) -> CmdResult {
    match &out.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write `{}`: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::usage(format!("cannot write to stdout: {e}")))
        }
    }
}

fn load_instance(path: &Path) -> Result<lowpm::SignedCompleteGraph, Failure> {
    let text = read_file(path)?;
    parse_instance(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn gen(family: GenFamily) -> CmdResult {
    let (g, out) = match family {
        GenFamily::Prop2 { k, out } => (proposition2_instance(k)?, out),
        GenFamily::Clique { n, k, out } => (clique_instance(n, k)?, out),
        GenFamily::Random {
            order,
            imbalance,
            seed,
            out,
        } => (random_with_imbalance(order, imbalance, seed)?, out),
    };
    emit(&out, &serialize_instance(&g))
}

fn solve(args: SolveArgs) -> CmdResult {
    let g = load_instance(&args.instance)?;
    let start = match &args.start {
        Some(path) => {
            let m = parse_matching(&read_file(path)?)
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            Start::Given(m)
        }
        None => Start::Random,
    };
    let policy = SearchPolicy {
        start,
        improvement: match args.rule {
            Rule::First => Improvement::First,
            Rule::Best => Improvement::Best,
        },
        max_exchange: args.max_exchange as usize,
        sideways_budget: args.sideways,
        restarts: args.restarts,
        seed: args.seed,
    };
    let (m, mut report) = local_search_min_weight(&g, &policy)?;
    if args.check_oracle {
        let o = oracle_min_weight(&g, args.oracle_limit)?;
        report.attach_oracle(o.min_abs_weight);
    }
    let text = match args.format {
        Format::Json => {
            let v = serde_json::json!({ "matching": m.to_string(), "report": report });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
        Format::Text | Format::Csv => {
            let mut s = format!(
                "final_weight {}\ninitial_weight {}\nmoves {} {} {}\nsideways {}\nrestarts {}\nconverged {}\n",
                report.final_weight,
                report.initial_weight,
                report.moves_applied[0],
                report.moves_applied[1],
                report.moves_applied[2],
                report.sideways_moves,
                report.restarts,
                report.converged,
            );
            if let (Some(w), Some(agree)) = (report.oracle_weight, report.agrees_with_oracle()) {
                s.push_str(&format!("oracle_min_weight {w}\noracle_agreement {agree}\n"));
            }
            s.push_str(&format!("{m}\n"));
            s
        }
    };
    emit(&OutputArg { output: None }, &text)?;
    if report.agrees_with_oracle() == Some(false) {
        return Err(Failure::report());
    }
    Ok(())
}

fn oracle(args: OracleArgs) -> CmdResult {
    let g = load_instance(&args.instance)?;
    let r = oracle_min_weight(&g, args.oracle_limit)?;
    let text = match args.format {
        Format::Json => {
            let v = serde_json::json!({
                "min_weight": r.min_abs_weight,
                "weight": r.weight,
                "witness": r.witness.to_string(),
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
        }
        Format::Text | Format::Csv => {
            format!("min_weight {}\nweight {}\n{}\n", r.min_abs_weight, r.weight, r.witness)
        }
    };
    emit(&OutputArg { output: None }, &text)
}

fn render(reports: &[VerifyReport], format: Format) -> String {
    match format {
        Format::Json if reports.len() == 1 => format!("{}\n", reports[0].to_json()),
        Format::Json => {
            format!("{}\n", serde_json::to_string_pretty(reports).expect("serializable"))
        }
        Format::Csv => {
            let mut s = format!("{}\n", VerifyReport::CSV_HEADER);
            for r in reports {
                s.push_str(&r.csv_rows());
            }
            s
        }
        Format::Text => reports
            .iter()
            .map(|r| r.to_text())
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

fn finish(reports: &[VerifyReport], format: Format, out: &OutputArg) -> CmdResult {
    emit(out, &render(reports, format))?;
    if reports.iter().all(|r| r.is_pass() && r.solver_mismatches() == 0) {
        Ok(())
    } else {
        Err(Failure::report())
    }
}

fn verify_cmd(theorem: VerifyTheorem) -> CmdResult {
    let (report, args) = match theorem {
        VerifyTheorem::Thm1 {
            n,
            samples,
            seed,
            mode,
            exhaustive,
            report,
        } => {
            let sampling = if exhaustive {
                Sampling::Exhaustive
            } else {
                Sampling::Sampled(samples)
            };
            (
                verify::verify_theorem1(n, sampling, seed, mode.into(), report.oracle_limit)?,
                report,
            )
        }
        VerifyTheorem::Thm2 {
            n,
            k,
            samples,
            seed,
            report,
        } => (
            verify::verify_theorem2(n, k, samples, seed, report.oracle_limit)?,
            report,
        ),
        VerifyTheorem::Prop2 { k, report } => (verify::verify_prop2(k, report.oracle_limit)?, report),
        VerifyTheorem::Tight { n, k, report } => {
            (verify::verify_tightness(n, k, report.oracle_limit)?, report)
        }
        VerifyTheorem::Eg {
            n,
            k,
            samples,
            seed,
            report,
        } => (verify::verify_erdos_gallai(n, k, samples, seed)?, report),
    };
    finish(std::slice::from_ref(&report), args.format, &args.out)
}

fn parse_list(flag: &str, text: &str) -> Result<Vec<u64>, Failure> {
    let bad = || Failure::usage(format!("--{flag}: expected `a,b,..` or `a..b`, got `{text}`"));
    if let Some((a, b)) = text.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    text.split(',')
        .map(|v| v.trim().parse().map_err(|_| bad()))
        .collect()
}

fn sweep(args: SweepArgs) -> CmdResult {
    let spec = SweepSpec {
        theorem: match args.theorem {
            TheoremArg::Thm1 => TheoremId::Theorem1,
            TheoremArg::Thm2 => TheoremId::Theorem2,
            TheoremArg::Prop2 => TheoremId::Proposition2,
            TheoremArg::Tight => TheoremId::Tightness,
            TheoremArg::Eg => TheoremId::ErdosGallai,
        },
        ns: parse_list("n", &args.n)?,
        ks: parse_list("k", &args.k)?,
        samples: args.samples,
        seed: args.seed,
        mode: args.mode.into(),
        oracle_limit: args.oracle_limit,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| Failure::usage(format!("cannot start {} workers: {e}", args.jobs)))?;
    let reports = pool.install(|| verify::run_sweep(&spec))?;
    finish(&reports, args.format, &args.out)
}
