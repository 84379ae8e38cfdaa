use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use insdel_bounds::experiments::{evaluate_bound, run_verify_suite};
use insdel_bounds::oracles::max_list_size;
use insdel_bounds::{
    check_list_decodable, combined_outer_bound, containment_probability, emit_surface,
    enumerate_ball, lcs, reachable, run_inner_bound_mc, supersequence_count_exact_length,
    AlphabetSize, BallSpec, BoundSource, EnumerationCap, Error, LengthMode, McConfig, OutputFormat,
    SmallCode, Verdict, Word,
};

const EXIT_VERIFY: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "insdel-bounds",
    version,
    about = "Rate bounds for list-decodable insertion-deletion codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one bound at a point.
    Bound(BoundArgs),
    /// Evaluate bounds on a (gamma, delta) grid and write CSV or JSON.
    Surface(SurfaceArgs),
    /// Exact brute-force oracles on explicit words.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Monte Carlo list sizes of random codes.
    Mc(McArgs),
    /// Run the invariant self-checks.
    Verify {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    q: u32,
    #[arg(long, default_value_t = 0.0)]
    gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    /// insertion-only, deletion-only, spoke, inner, linear-outer,
    /// interpolated-outer or combined-outer.
    #[arg(long, default_value = "combined-outer")]
    source: BoundSource,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SurfaceArgs {
    #[arg(long)]
    q: u32,
    /// Repeat for several surfaces.
    #[arg(long = "bound", default_values = ["combined-outer", "inner"])]
    bounds: Vec<BoundSource>,
    #[arg(long, default_value_t = 200)]
    resolution: usize,
    #[arg(long, default_value = "csv")]
    format: OutputFormat,
    /// Output file. With several bounds, the bound name is appended to the
    /// file stem. Defaults to `surface-q<Q>-<bound>.<ext>`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// List the edit ball around a word.
    Ball {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        center: String,
        #[arg(long = "ins", default_value_t = 0)]
        insertions: usize,
        #[arg(long = "del", default_value_t = 0)]
        deletions: usize,
        /// Only words of length n - del + ins.
        #[arg(long)]
        exact: bool,
    },
    /// Number of length-(n+t) supersequences of a length-n word.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        q: u32,
    },
    /// Longest common subsequence length.
    Lcs {
        #[arg(long)]
        q: u32,
        a: String,
        b: String,
    },
    /// Whether `w` is within the edit budgets of `x`.
    Reach {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        x: String,
        #[arg(long)]
        w: String,
        #[arg(long)]
        max_del: usize,
        #[arg(long)]
        max_ins: usize,
    },
    /// Probability that a random length-m word contains `y`.
    Prob {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        y: String,
        #[arg(long)]
        m: usize,
    },
    /// Brute-force list-decodability check of an explicit code.
    CheckCode {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
        #[arg(long = "list-cap", short = 'L')]
        list_cap: usize,
        /// Also report the largest list over all received words.
        #[arg(long)]
        max_list: bool,
        #[arg(required = true)]
        codewords: Vec<String>,
    },
}

#[derive(Args)]
struct McArgs {
    /// JSON configuration; flags below are ignored when given.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, required_unless_present = "config")]
    q: Option<u32>,
    #[arg(long, required_unless_present = "config")]
    n: Option<usize>,
    #[arg(long, default_value_t = 0.0)]
    gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    #[arg(long, default_value_t = 0.0)]
    rate: f64,
    #[arg(long = "list-cap", short = 'L', default_value_t = 1)]
    list_cap: usize,
    #[arg(long, default_value_t = 20)]
    trials: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample this many received words per trial instead of enumerating.
    #[arg(long)]
    samples: Option<u64>,
    /// Print only the summary, not per-trial reports.
    #[arg(long)]
    summary: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<Error>().map_or(1, |e| e.exit_code());
            ExitCode::from(code as u8)
        }
    }
}

fn alphabet(q: u32) -> anyhow::Result<AlphabetSize> {
    Ok(AlphabetSize::new(q)?)
}

fn word(s: &str, q: AlphabetSize) -> anyhow::Result<Word> {
    Ok(Word::parse(s, q)?)
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Bound(args) => bound(args, &mut out)?,
        Command::Surface(args) => surface(args, &mut out)?,
        Command::Oracle(cmd) => oracle(cmd, &mut out)?,
        Command::Mc(args) => mc(args, &mut out)?,
        Command::Verify { json } => {
            let outcomes = run_verify_suite();
            if json {
                serde_json::to_writer_pretty(&mut out, &outcomes)?;
                writeln!(out)?;
            } else {
                for o in &outcomes {
                    let tag = if o.passed { "PASS" } else { "FAIL" };
                    writeln!(out, "{tag} {}: {}", o.name, o.detail)?;
                }
            }
            if outcomes.iter().any(|o| !o.passed) {
                return Ok(EXIT_VERIFY);
            }
        }
    }
    Ok(0)
}

fn bound(args: BoundArgs, out: &mut impl Write) -> anyhow::Result<()> {
    let q = alphabet(args.q)?;
    if args.source == BoundSource::CombinedOuter {
        let combined = combined_outer_bound(q, args.gamma, args.delta)?;
        if args.json {
            serde_json::to_writer_pretty(&mut *out, &combined)?;
            writeln!(out)?;
            return Ok(());
        }
        let v = combined.value;
        print_value(out, v.rate, v.raw, v.feasible, BoundSource::CombinedOuter)?;
        writeln!(out, "minimizer: {}", v.source)?;
        return Ok(());
    }
    let v = evaluate_bound(args.source, q, args.gamma, args.delta)?;
    if args.json {
        serde_json::to_writer_pretty(&mut *out, &v)?;
        writeln!(out)?;
    } else {
        print_value(out, v.rate, v.raw, v.feasible, v.source)?;
    }
    Ok(())
}

fn print_value(
    out: &mut impl Write,
    rate: f64,
    raw: Option<f64>,
    feasible: bool,
    source: BoundSource,
) -> io::Result<()> {
    writeln!(out, "rate: {rate:.12}")?;
    match raw {
        Some(r) => writeln!(out, "raw: {r:.12}")?,
        None => writeln!(out, "raw: undefined")?,
    }
    writeln!(out, "feasible: {feasible}")?;
    writeln!(out, "source: {source}")
}

fn surface_path(args: &SurfaceArgs, source: BoundSource) -> PathBuf {
    let ext = args.format.extension();
    match &args.out {
        None => PathBuf::from(format!("surface-q{}-{}.{ext}", args.q, source.name())),
        Some(path) if args.bounds.len() == 1 => path.clone(),
        Some(path) => {
            let stem = path
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("surface");
            let ext = path.extension().and_then(|s| s.to_str()).unwrap_or(ext);
            path.with_file_name(format!("{stem}-{}.{ext}", source.name()))
        }
    }
}

fn surface(args: SurfaceArgs, out: &mut impl Write) -> anyhow::Result<()> {
    let q = alphabet(args.q)?;
    let mut bounds = args.bounds.clone();
    bounds.dedup();
    for &source in &bounds {
        let path = surface_path(&args, source);
        emit_surface(q, source, args.resolution, args.format, &path)
            .with_context(|| format!("writing {}", path.display()))?;
        writeln!(out, "{}", path.display())?;
    }
    Ok(())
}

fn oracle(cmd: OracleCommand, out: &mut impl Write) -> anyhow::Result<()> {
    let cap = EnumerationCap::from_env();
    match cmd {
        OracleCommand::Ball {
            q,
            center,
            insertions,
            deletions,
            exact,
        } => {
            let q = alphabet(q)?;
            let mode = if exact {
                LengthMode::ExactFinalLength
            } else {
                LengthMode::AllLengths
            };
            let spec = BallSpec::new(word(&center, q)?, insertions, deletions, mode);
            let ball = enumerate_ball(&spec, cap)?;
            writeln!(out, "size: {}", ball.len())?;
            for w in ball {
                if w.is_empty() {
                    writeln!(out, "(empty)")?;
                } else {
                    writeln!(out, "{w}")?;
                }
            }
        }
        OracleCommand::Count { n, t, q } => {
            writeln!(
                out,
                "{}",
                supersequence_count_exact_length(n, t, alphabet(q)?)
            )?;
        }
        OracleCommand::Lcs { q, a, b } => {
            let q = alphabet(q)?;
            writeln!(out, "{}", lcs(&word(&a, q)?, &word(&b, q)?)?)?;
        }
        OracleCommand::Reach {
            q,
            x,
            w,
            max_del,
            max_ins,
        } => {
            let q = alphabet(q)?;
            writeln!(
                out,
                "{}",
                reachable(&word(&x, q)?, &word(&w, q)?, max_del, max_ins)?
            )?;
        }
        OracleCommand::Prob { q, y, m } => {
            let q = alphabet(q)?;
            let p = containment_probability(&word(&y, q)?, m)?;
            let approx =
                p.numer().to_string().parse::<f64>()? / p.denom().to_string().parse::<f64>()?;
            writeln!(out, "{p} ({approx:.12})")?;
        }
        OracleCommand::CheckCode {
            q,
            gamma,
            delta,
            list_cap,
            max_list,
            codewords,
        } => {
            let q = alphabet(q)?;
            let words = codewords
                .iter()
                .map(|s| word(s, q))
                .collect::<anyhow::Result<Vec<_>>>()?;
            let code = SmallCode::new(words)?;
            match check_list_decodable(&code, gamma, delta, list_cap, cap)? {
                Verdict::Ok => writeln!(out, "ok")?,
                Verdict::Violated { witness, codewords } => {
                    let list: Vec<String> = codewords.iter().map(|w| w.to_string()).collect();
                    writeln!(
                        out,
                        "violated: witness \"{witness}\" reached from {}",
                        list.join(" ")
                    )?;
                }
            }
            if max_list {
                let n = code.block_length();
                let max_del = insdel_bounds::oracles::error_budget(delta, n)?.min(n);
                let max_ins = insdel_bounds::oracles::error_budget(gamma, n)?;
                let report = max_list_size(&code, max_del, max_ins, cap)?;
                writeln!(out, "max list size: {}", report.max_list_size)?;
            }
        }
    }
    Ok(())
}

fn mc(args: McArgs, out: &mut impl Write) -> anyhow::Result<()> {
    let cfg = match &args.config {
        Some(path) => read_config(path)?,
        None => McConfig {
            q: alphabet(args.q.expect("required by clap"))?,
            n: args.n.expect("required by clap"),
            gamma: args.gamma,
            delta: args.delta,
            rate_target: args.rate,
            list_cap: args.list_cap,
            trials: args.trials,
            seed: args.seed,
            received_samples: args.samples,
        },
    };
    let mut report = run_inner_bound_mc(&cfg)?;
    if args.summary {
        report.trials.clear();
    }
    serde_json::to_writer_pretty(&mut *out, &report)?;
    writeln!(out)?;
    Ok(())
}

fn read_config(path: &Path) -> anyhow::Result<McConfig> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    serde_json::from_reader(BufReader::new(file))
        .map_err(Error::from)
        .with_context(|| format!("parsing {}", path.display()))
}
