//! Argument parsing and command dispatch.
//!
//! Exit codes: 0 success (verified / no counterexample found), 1
//! verification failure (counterexample, or randomized search out of
//! retries), 2 input error (bad flags, malformed files, unrealizable spec).

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hangnail_core::compile::{all_nails, from_formula, from_minimal_sets, kofn_dnc, Compiled};
use hangnail_core::gates::PadPolicy;
use hangnail_core::monotone::{parse_formula, MonotoneFn};
use hangnail_core::random::{
    find_word, FindError, FindOptions, SampleConfig, DEFAULT_SEED,
};
use hangnail_core::verify::{verify_exhaustive, verify_sampled, VerifyOptions};

use crate::bench::{run_bench, BenchParams, Suite};
use crate::funcspec::load_spec_file;
use crate::render::render_svg;
use crate::report::{ProvenanceDto, VerifyReportDto};
use crate::wordfile::{format_word, parse_word};

#[derive(Parser)]
#[command(
    name = "hangnail",
    version,
    about = "Compile picture-hanging puzzles into free-group words; verify, bench, render"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compile a monotone nail specification into a word file
    Compile(CompileArgs),
    /// Check a word file against a specification (JSON report, exit 0/1/2)
    Verify(VerifyArgs),
    /// Measurement sweeps over the constructions (CSV)
    Bench(BenchArgs),
    /// Render a word file as a static SVG
    Render(RenderArgs),
}

#[derive(Args)]
struct SpecArgs {
    /// Threshold: hang iff at least K of N nails remain
    #[arg(long, num_args = 2, value_names = ["K", "N"])]
    threshold: Option<Vec<u32>>,
    /// AND/OR formula over x1..xN (requires --n)
    #[arg(long)]
    formula: Option<String>,
    /// Nail count for --formula
    #[arg(long)]
    n: Option<u32>,
    /// Function descriptor JSON file
    #[arg(long, value_name = "FILE")]
    spec: Option<PathBuf>,
}

impl SpecArgs {
    fn is_empty(&self) -> bool {
        self.threshold.is_none() && self.formula.is_none() && self.spec.is_none()
    }

    fn resolve(&self) -> Result<MonotoneFn> {
        let given =
            [self.threshold.is_some(), self.formula.is_some(), self.spec.is_some()]
                .iter()
                .filter(|&&b| b)
                .count();
        if given != 1 {
            bail!("give exactly one of --threshold, --formula, --spec");
        }
        if let Some(kn) = &self.threshold {
            let (k, n) = (kn[0], kn[1]);
            return MonotoneFn::threshold(n, k).map_err(|e| anyhow!("{e}"));
        }
        if let Some(text) = &self.formula {
            let n = self.n.ok_or_else(|| anyhow!("--formula requires --n"))?;
            return parse_formula(text, n).map_err(|e| anyhow!("{e}"));
        }
        load_spec_file(self.spec.as_ref().unwrap())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    AllNails,
    Lambda,
    Formula,
    Dnc,
    Random,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PadPolicyArg {
    Adaptive,
    ForceM1,
}

impl From<PadPolicyArg> for PadPolicy {
    fn from(p: PadPolicyArg) -> Self {
        match p {
            PadPolicyArg::Adaptive => PadPolicy::Adaptive,
            PadPolicyArg::ForceM1 => PadPolicy::ForceM1,
        }
    }
}

#[derive(Args)]
struct CompileArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Shorthand: hang on all N nails, fall when any one is removed
    #[arg(long, value_name = "N", conflicts_with_all = ["threshold", "formula", "spec"])]
    all_nails: Option<u32>,
    /// Construction to use (default: inferred from the spec shape)
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    /// Word file path ('-' = stdout)
    #[arg(long, short, default_value = "-")]
    out: String,
    /// Provenance JSON path (default: <out>.provenance.json for file output)
    #[arg(long, value_name = "FILE")]
    provenance: Option<PathBuf>,
    /// Master seed for --method random
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Majority recursion depth (default: smallest d with p_d < 2^-2n)
    #[arg(long)]
    depth: Option<u32>,
    #[arg(long, default_value_t = 50)]
    max_retries: u32,
    /// Pad repetition policy for gate constructions
    #[arg(long, value_enum, default_value_t = PadPolicyArg::Adaptive)]
    pad_policy: PadPolicyArg,
    /// Largest n verified exhaustively during randomized search
    #[arg(long, default_value_t = 24)]
    exhaustive_cap: u32,
    /// Sampled-verification trials above the cap
    #[arg(long, default_value_t = 4096)]
    trials: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Word file to check
    word: PathBuf,
    #[command(flatten)]
    spec: SpecArgs,
    /// Force sampled mode with this many random states
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 24)]
    exhaustive_cap: u32,
    #[arg(long, default_value_t = 16)]
    max_counterexamples: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    AllNails,
    Dnc,
    Random,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    suite: SuiteArg,
    #[arg(long)]
    n_min: Option<u32>,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Depth override for the random suite
    #[arg(long)]
    depth: Option<u32>,
    #[arg(long, default_value_t = 50)]
    max_retries: u32,
    #[arg(long, default_value_t = 24)]
    exhaustive_cap: u32,
    /// Measure wall-clock seconds (breaks byte-for-byte reproducibility)
    #[arg(long)]
    timing: bool,
    /// CSV path ('-' = stdout)
    #[arg(long, short, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct RenderArgs {
    /// Word file to draw
    word: PathBuf,
    /// SVG path ('-' = stdout)
    #[arg(long, short, default_value = "-")]
    out: String,
}

fn write_output(target: &str, content: &str) -> Result<()> {
    if target == "-" {
        print!("{content}");
        Ok(())
    } else {
        std::fs::write(target, content).with_context(|| format!("writing {target}"))
    }
}

#[derive(Serialize)]
struct FailedAttemptDto {
    attempt: u32,
    seed: u64,
    counterexamples_total: u64,
    report: VerifyReportDto,
}

#[derive(Serialize)]
struct SearchFailureDto {
    error: &'static str,
    attempts: u32,
    failures: Vec<FailedAttemptDto>,
}

fn cmd_compile(args: CompileArgs) -> Result<ExitCode> {
    // what was asked for
    enum Input {
        AllNails(u32),
        Func(MonotoneFn),
    }
    let input = match args.all_nails {
        Some(0) => bail!("need at least one nail"),
        Some(n) => Input::AllNails(n),
        None => {
            if args.spec.is_empty() {
                bail!("give a specification: --all-nails, --threshold, --formula or --spec");
            }
            Input::Func(args.spec.resolve()?)
        }
    };

    let method = args.method.unwrap_or(match &input {
        Input::AllNails(_) => MethodArg::AllNails,
        Input::Func(f) if f.threshold_k().is_some() => MethodArg::Dnc,
        Input::Func(f) if f.formula().is_some() => MethodArg::Formula,
        Input::Func(_) => MethodArg::Lambda,
    });

    let threshold_of = |input: &Input| -> Result<(u32, u32)> {
        match input {
            Input::AllNails(n) => Ok((*n, *n)),
            Input::Func(f) => f
                .threshold_k()
                .map(|k| (k, f.rank()))
                .ok_or_else(|| anyhow!("this method needs a threshold specification")),
        }
    };

    let compiled: Compiled = match method {
        MethodArg::AllNails => {
            let n = match &input {
                Input::AllNails(n) => *n,
                Input::Func(f) if f.threshold_k() == Some(f.rank()) => f.rank(),
                _ => bail!("--method all-nails needs --all-nails N (or threshold K = N)"),
            };
            all_nails(n).map_err(|e| anyhow!("{e}"))?
        }
        MethodArg::Lambda => {
            let f = match input {
                Input::AllNails(n) => MonotoneFn::threshold(n, n).map_err(|e| anyhow!("{e}"))?,
                Input::Func(f) => f,
            };
            from_minimal_sets(&f).map_err(|e| anyhow!("{e}"))?
        }
        MethodArg::Formula => {
            let Input::Func(f) = &input else {
                bail!("--method formula needs a formula specification");
            };
            from_formula(f).map_err(|e| anyhow!("{e}"))?
        }
        MethodArg::Dnc => {
            let (k, n) = threshold_of(&input)?;
            kofn_dnc(n, k).map_err(|e| anyhow!("{e}"))?
        }
        MethodArg::Random => {
            let (k, n) = threshold_of(&input)?;
            let mut cfg = SampleConfig::new(n, k).map_err(|e| anyhow!("{e}"))?;
            cfg.seed = args.seed;
            cfg.max_retries = args.max_retries;
            cfg.policy = args.pad_policy.into();
            if let Some(d) = args.depth {
                cfg.depth = d;
            }
            let opts = FindOptions {
                verify: VerifyOptions {
                    exhaustive_cap: args.exhaustive_cap,
                    ..Default::default()
                },
                sampled_trials: args.trials,
            };
            match find_word(&cfg, &opts) {
                Ok(r) => Compiled { expr: r.expr, provenance: r.provenance },
                Err(FindError::RetriesExhausted { attempts }) => {
                    let dto = SearchFailureDto {
                        error: "retries exhausted",
                        attempts: attempts.len() as u32,
                        failures: attempts
                            .iter()
                            .map(|a| FailedAttemptDto {
                                attempt: a.attempt,
                                seed: a.seed,
                                counterexamples_total: a.report.counterexamples_total,
                                report: VerifyReportDto::from(&a.report),
                            })
                            .collect(),
                    };
                    println!("{}", serde_json::to_string_pretty(&dto)?);
                    return Ok(ExitCode::from(1));
                }
                Err(e) => bail!("{e}"),
            }
        }
    };

    let word = compiled.expr.flatten();
    write_output(&args.out, &format_word(&word))?;

    let prov = ProvenanceDto::new(
        &compiled.provenance,
        compiled.expr.written_length(),
        word.len() as u64,
    );
    let prov_json = serde_json::to_string_pretty(&prov)?;
    match (&args.provenance, args.out.as_str()) {
        (Some(path), _) => {
            std::fs::write(path, prov_json).with_context(|| format!("writing {}", path.display()))?
        }
        (None, "-") => {} // word went to stdout; write provenance only on request
        (None, out) => std::fs::write(format!("{out}.provenance.json"), prov_json)
            .with_context(|| format!("writing {out}.provenance.json"))?,
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&args.word)
        .with_context(|| format!("reading {}", args.word.display()))?;
    let word = parse_word(&text)?;
    let f = args.spec.resolve()?;
    let opts = VerifyOptions {
        exhaustive_cap: args.exhaustive_cap,
        max_counterexamples: args.max_counterexamples,
    };
    let report = match args.trials {
        Some(trials) => verify_sampled(&word, &f, trials, args.seed, &opts)
            .map_err(|e| anyhow!("{e}"))?,
        None if word.rank() <= args.exhaustive_cap => {
            verify_exhaustive(&word, &f, &opts).map_err(|e| anyhow!("{e}"))?
        }
        None => {
            eprintln!(
                "note: 2^{} states exceed the exhaustive cap; sampling 4096 random states",
                word.rank()
            );
            verify_sampled(&word, &f, 4096, args.seed, &opts).map_err(|e| anyhow!("{e}"))?
        }
    };
    println!("{}", serde_json::to_string_pretty(&VerifyReportDto::from(&report))?);
    Ok(if report.clean() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode> {
    let suite = match args.suite {
        SuiteArg::AllNails => Suite::AllNails,
        SuiteArg::Dnc => Suite::Dnc,
        SuiteArg::Random => Suite::Random,
    };
    let (def_min, def_max) = match suite {
        Suite::AllNails | Suite::Dnc => (2, 8),
        Suite::Random => (3, 5),
    };
    let params = BenchParams {
        suite,
        n_min: args.n_min.unwrap_or(def_min),
        n_max: args.n_max.unwrap_or(def_max),
        seed: args.seed,
        depth: args.depth,
        max_retries: args.max_retries,
        exhaustive_cap: args.exhaustive_cap,
        timing: args.timing,
    };
    let csv = run_bench(&params)?;
    write_output(&args.out, &csv)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_render(args: RenderArgs) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&args.word)
        .with_context(|| format!("reading {}", args.word.display()))?;
    let word = parse_word(&text)?;
    write_output(&args.out, &render_svg(&word))?;
    Ok(ExitCode::SUCCESS)
}

pub fn run() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Compile(args) => cmd_compile(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Bench(args) => cmd_bench(args),
        Cmd::Render(args) => cmd_render(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
