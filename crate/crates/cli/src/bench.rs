//! Measurement sweeps over the constructions, emitted as CSV.
//!
//! Output is byte-identical across runs for the same flags and seed; the
//! seconds column prints 0.000 unless `--timing` is given, since wall-clock
//! noise would break that guarantee.

use anyhow::Result;
use hangnail_core::compile::{all_nails, kofn_dnc};
use hangnail_core::monotone::MonotoneFn;
use hangnail_core::random::{find_word, FindError, FindOptions, SampleConfig};
use hangnail_core::verify::{verify_expr_exhaustive, VerifyOptions};
use hangnail_core::word::WordExpr;
use std::fmt::Write as _;
use std::time::Instant;

pub const CSV_HEADER: &str =
    "construction,n,k,depth,written_length,reduced_length,verified,attempts,seconds";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    AllNails,
    Dnc,
    Random,
}

#[derive(Clone, Copy, Debug)]
pub struct BenchParams {
    pub suite: Suite,
    pub n_min: u32,
    pub n_max: u32,
    pub seed: u64,
    pub depth: Option<u32>,
    pub max_retries: u32,
    pub exhaustive_cap: u32,
    pub timing: bool,
}

fn seconds(timing: bool, start: Instant) -> String {
    if timing {
        format!("{:.3}", start.elapsed().as_secs_f64())
    } else {
        "0.000".to_string()
    }
}

/// Verify below the cap; above it report an empty field rather than a claim.
fn verified_field(expr: &WordExpr, f: &MonotoneFn, cap: u32) -> Result<String> {
    if f.rank() > cap {
        return Ok(String::new());
    }
    let opts = VerifyOptions { exhaustive_cap: cap, ..Default::default() };
    let report = verify_expr_exhaustive(expr, f, &opts).map_err(anyhow::Error::msg)?;
    Ok(report.verified().to_string())
}

pub fn run_bench(p: &BenchParams) -> Result<String> {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    match p.suite {
        Suite::AllNails => {
            for n in p.n_min.max(1)..=p.n_max {
                let start = Instant::now();
                let c = all_nails(n).map_err(anyhow::Error::msg)?;
                let word = c.expr.flatten();
                let f = MonotoneFn::threshold(n, n).map_err(anyhow::Error::msg)?;
                let verified = verified_field(&c.expr, &f, p.exhaustive_cap)?;
                let _ = writeln!(
                    out,
                    "all-nails,{n},{n},,{},{},{verified},1,{}",
                    c.expr.written_length(),
                    word.len(),
                    seconds(p.timing, start)
                );
            }
        }
        Suite::Dnc => {
            for n in p.n_min.max(1)..=p.n_max {
                for k in 1..=n {
                    let start = Instant::now();
                    let c = kofn_dnc(n, k).map_err(anyhow::Error::msg)?;
                    let word = c.expr.flatten();
                    let f = MonotoneFn::threshold(n, k).map_err(anyhow::Error::msg)?;
                    let verified = verified_field(&c.expr, &f, p.exhaustive_cap)?;
                    let _ = writeln!(
                        out,
                        "dnc,{n},{k},,{},{},{verified},1,{}",
                        c.expr.written_length(),
                        word.len(),
                        seconds(p.timing, start)
                    );
                }
            }
        }
        Suite::Random => {
            for n in p.n_min.max(1)..=p.n_max {
                if n % 2 == 0 {
                    continue; // majority suite: odd n, k = (n+1)/2
                }
                let k = n / 2 + 1;
                let start = Instant::now();
                let mut cfg = SampleConfig::new(n, k).map_err(anyhow::Error::msg)?;
                cfg.seed = p.seed;
                cfg.max_retries = p.max_retries;
                if let Some(d) = p.depth {
                    cfg.depth = d;
                }
                let opts = FindOptions {
                    verify: VerifyOptions { exhaustive_cap: p.exhaustive_cap, ..Default::default() },
                    ..Default::default()
                };
                match find_word(&cfg, &opts) {
                    Ok(r) => {
                        let _ = writeln!(
                            out,
                            "random,{n},{k},{},{},{},{},{},{}",
                            cfg.depth,
                            r.written_length,
                            r.reduced_length,
                            r.verification.verified(),
                            r.attempts,
                            seconds(p.timing, start)
                        );
                    }
                    Err(FindError::RetriesExhausted { attempts }) => {
                        let _ = writeln!(
                            out,
                            "random,{n},{k},{},,,false,{},{}",
                            cfg.depth,
                            attempts.len(),
                            seconds(p.timing, start)
                        );
                    }
                    Err(e) => return Err(anyhow::Error::msg(e.to_string())),
                }
            }
        }
    }
    Ok(out)
}
