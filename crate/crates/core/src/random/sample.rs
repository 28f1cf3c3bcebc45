//! Seeded word sampling and the verify-and-retry driver.
//!
//! Every subtree of the recursive construction gets its own seed, derived by
//! mixing (parent seed, child index), so the sampled expression is a pure
//! function of the master seed — independent of evaluation order and safe to
//! parallelize. Padding is chosen after the random letters are drawn.

use alloc::vec::Vec;
use core::fmt;

use num_traits::One;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::compile::{Method, Provenance};
use crate::gates::{safe_majority, GateError, PadPolicy};
use crate::monotone::MonotoneFn;
use crate::random::prob::{initializer, InitializerSpec, ProbError, Rational};
use crate::verify::{
    verify_expr_exhaustive, verify_sampled, VerifyError, VerifyOptions, VerifyReport,
};
use crate::word::{Generator, WordError, WordExpr};

/// Fixed default seed, so every documented run is reproducible as-is.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Debug, PartialEq)]
pub enum SampleError {
    /// The majority gate needs three distinct pad generators, so n = 2 is
    /// out; the divide-and-conquer compiler covers it exactly.
    TwoNails,
    ZeroRetries,
    Gate(GateError),
    Prob(ProbError),
    Word(WordError),
}

impl fmt::Display for SampleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleError::TwoNails => write!(
                f,
                "n = 2 leaves no room for three distinct pads; use the divide-and-conquer compiler"
            ),
            SampleError::ZeroRetries => write!(f, "max_retries must be at least 1"),
            SampleError::Gate(e) => write!(f, "{e}"),
            SampleError::Prob(e) => write!(f, "{e}"),
            SampleError::Word(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SampleError {}

impl From<GateError> for SampleError {
    fn from(e: GateError) -> Self {
        SampleError::Gate(e)
    }
}

impl From<ProbError> for SampleError {
    fn from(e: ProbError) -> Self {
        SampleError::Prob(e)
    }
}

impl From<WordError> for SampleError {
    fn from(e: WordError) -> Self {
        SampleError::Word(e)
    }
}

/// Reproducibility knobs for one randomized construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub n: u32,
    pub k: u32,
    pub seed: u64,
    pub depth: u32,
    pub max_retries: u32,
    pub policy: PadPolicy,
}

impl SampleConfig {
    /// Defaults: the documented seed, depth aimed at failure probability
    /// `2^{-2n}` (the hay-in-a-haystack margin), 50 retries, adaptive pads.
    pub fn new(n: u32, k: u32) -> Result<Self, ProbError> {
        let target = Rational::new(num_bigint::BigInt::one(), num_bigint::BigInt::one() << (2 * n));
        let depth = crate::random::prob::depth_schedule(n, &target)?;
        Ok(SampleConfig {
            n,
            k,
            seed: DEFAULT_SEED,
            depth,
            max_retries: 50,
            policy: PadPolicy::Adaptive,
        })
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for a child stream: a SplitMix64-style mix of (parent, child index).
/// Order-independent: each subtree's randomness is fixed by its path.
pub fn derive_seed(parent: u64, child: u64) -> u64 {
    splitmix(parent ^ splitmix(child))
}

/// Uniform draw below `bound` by rejection on `bits(bound)`-bit strings.
fn uniform_below(rng: &mut impl RngCore, bound: &num_bigint::BigUint) -> num_bigint::BigUint {
    debug_assert!(!num_traits::Zero::is_zero(bound));
    let bits = bound.bits();
    let bytes = bits.div_ceil(8) as usize;
    let top_mask: u8 = if bits.is_multiple_of(8) { 0xFF } else { (1u8 << (bits % 8)) - 1 };
    loop {
        let mut buf = alloc::vec![0u8; bytes];
        rng.fill_bytes(&mut buf);
        buf[bytes - 1] &= top_mask;
        let v = num_bigint::BigUint::from_bytes_le(&buf);
        if &v < bound {
            return v;
        }
    }
}

/// Exact Bernoulli(q) for rational q in [0, 1].
fn bernoulli_exact(rng: &mut impl RngCore, q: &Rational) -> bool {
    let num = q.numer().to_biguint().expect("q >= 0");
    let den = q.denom().to_biguint().expect("positive denominator");
    uniform_below(rng, &den) < num
}

/// Draw a depth-0 word: `m` per the spec's mix, then a uniform `m`-subset of
/// the nails, emitted as ascending positive letters.
pub fn sample_w0<R: Rng>(spec: &InitializerSpec, rng: &mut R) -> WordExpr {
    let m = if spec.mix_q.is_one() || bernoulli_exact(rng, &spec.mix_q) {
        spec.m_low
    } else {
        spec.m_low + 1
    };
    if m == 0 {
        return WordExpr::identity(spec.n);
    }
    let mut picks = rand::seq::index::sample(rng, spec.n as usize, m as usize).into_vec();
    picks.sort_unstable();
    WordExpr::concat(picks.into_iter().map(|i| {
        WordExpr::generator(spec.n, Generator::new(i as u32 + 1).unwrap())
            .expect("index within rank")
    }))
    .expect("equal ranks")
}

fn sample_node(
    spec: &InitializerSpec,
    depth: u32,
    seed: u64,
    policy: PadPolicy,
) -> Result<WordExpr, SampleError> {
    if depth == 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        return Ok(sample_w0(spec, &mut rng));
    }
    let a = sample_node(spec, depth - 1, derive_seed(seed, 0), policy)?;
    let b = sample_node(spec, depth - 1, derive_seed(seed, 1), policy)?;
    let c = sample_node(spec, depth - 1, derive_seed(seed, 2), policy)?;
    Ok(safe_majority(a, b, c, policy)?)
}

fn sample_word_from(cfg: &SampleConfig, root_seed: u64) -> Result<WordExpr, SampleError> {
    if cfg.n == 2 {
        return Err(SampleError::TwoNails);
    }
    let spec = initializer(cfg.n, cfg.k)?;
    // a single nail needs no amplification; the depth schedule is 0 anyway
    let depth = if cfg.n == 1 { 0 } else { cfg.depth };
    sample_node(&spec, depth, root_seed, cfg.policy)
}

/// Sample the depth-`cfg.depth` random word `W_d`: three independent
/// recursive samples per level, combined by a safe majority gate with pads
/// chosen after the draws. Bit-identical output for identical configs.
pub fn sample_word(cfg: &SampleConfig) -> Result<WordExpr, SampleError> {
    sample_word_from(cfg, cfg.seed)
}

/// One failed attempt inside [`find_word`].
#[derive(Clone, Debug, PartialEq)]
pub struct AttemptRecord {
    pub attempt: u32,
    pub seed: u64,
    pub report: VerifyReport,
}

/// A certified randomized word and how it was found.
#[derive(Clone, Debug, PartialEq)]
pub struct FindReport {
    pub expr: WordExpr,
    pub provenance: Provenance,
    pub attempts: u32,
    pub depth: u32,
    pub written_length: u64,
    pub reduced_length: u64,
    /// The verification of the accepted word.
    pub verification: VerifyReport,
    /// Evidence from the attempts that failed before it.
    pub failures: Vec<AttemptRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FindOptions {
    pub verify: VerifyOptions,
    /// Trials for the sampled fallback above the exhaustive cap.
    pub sampled_trials: u64,
}

impl Default for FindOptions {
    fn default() -> Self {
        FindOptions { verify: VerifyOptions::default(), sampled_trials: 4096 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FindError {
    Sample(SampleError),
    Verify(VerifyError),
    /// Every attempt produced counterexamples; here they are.
    RetriesExhausted { attempts: Vec<AttemptRecord> },
}

impl fmt::Display for FindError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FindError::Sample(e) => write!(f, "{e}"),
            FindError::Verify(e) => write!(f, "{e}"),
            FindError::RetriesExhausted { attempts } => {
                write!(f, "no verified word after {} attempts", attempts.len())
            }
        }
    }
}

impl core::error::Error for FindError {}

impl From<SampleError> for FindError {
    fn from(e: SampleError) -> Self {
        FindError::Sample(e)
    }
}

impl From<VerifyError> for FindError {
    fn from(e: VerifyError) -> Self {
        FindError::Verify(e)
    }
}

/// Sample words with fresh derived seeds until one is certified against
/// `Threshold(k, n)`, up to `cfg.max_retries` attempts.
///
/// Verification is exhaustive within the cap; beyond it, the sampled mode is
/// used and a clean run is accepted (and reported as sampled, not verified).
pub fn find_word(cfg: &SampleConfig, opts: &FindOptions) -> Result<FindReport, FindError> {
    if cfg.max_retries == 0 {
        return Err(SampleError::ZeroRetries.into());
    }
    let f = MonotoneFn::threshold(cfg.n, cfg.k)
        .map_err(|_| SampleError::Prob(ProbError::BadThreshold { k: cfg.k, n: cfg.n }))?;
    let mut failures: Vec<AttemptRecord> = Vec::new();
    for attempt in 1..=cfg.max_retries {
        let root_seed = derive_seed(cfg.seed, attempt as u64);
        let expr = sample_word_from(cfg, root_seed)?;
        let report = if cfg.n <= opts.verify.exhaustive_cap {
            verify_expr_exhaustive(&expr, &f, &opts.verify)?
        } else {
            let word = expr.flatten();
            let mut r = verify_sampled(
                &word,
                &f,
                opts.sampled_trials,
                derive_seed(root_seed, 3),
                &opts.verify,
            )?;
            r.written_length = expr.written_length();
            r
        };
        if report.clean() {
            let written = expr.written_length();
            let reduced = report.reduced_length;
            return Ok(FindReport {
                provenance: Provenance {
                    method: Method::RandomMajority,
                    n: cfg.n,
                    k: Some(cfg.k),
                    depth: Some(cfg.depth),
                    seed: Some(cfg.seed),
                    attempts: Some(attempt),
                },
                expr,
                attempts: attempt,
                depth: cfg.depth,
                written_length: written,
                reduced_length: reduced,
                verification: report,
                failures,
            });
        }
        failures.push(AttemptRecord { attempt, seed: root_seed, report });
    }
    Err(FindError::RetriesExhausted { attempts: failures })
}
