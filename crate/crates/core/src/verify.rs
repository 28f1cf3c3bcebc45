//! Certify words against specifications.
//!
//! The exhaustive sweep checks every one of the `2^n` nail states with a
//! single stack pass per state — letters of absent generators are skipped and
//! cancellation happens on the fly, so no quotient word is ever materialized.
//! Above the configured cap, Monte Carlo sampling stands in; a sampled run
//! never claims "verified", only "no counterexample found".

use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::monotone::{MonotoneError, MonotoneFn};
use crate::word::{push_reduced, NailState, Word, WordError, WordExpr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyError {
    RankMismatch { word: u32, spec: u32 },
    /// Exhaustive sweep refused; use sampled verification instead.
    CapExceeded { rank: u32, cap: u32 },
    ZeroTrials,
    Word(WordError),
    Monotone(MonotoneError),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::RankMismatch { word, spec } => {
                write!(f, "word rank {word} does not match specification rank {spec}")
            }
            VerifyError::CapExceeded { rank, cap } => write!(
                f,
                "2^{rank} states exceed the exhaustive cap (n <= {cap}); use sampled verification"
            ),
            VerifyError::ZeroTrials => write!(f, "sampled verification needs at least one trial"),
            VerifyError::Word(e) => write!(f, "{e}"),
            VerifyError::Monotone(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for VerifyError {}

impl From<WordError> for VerifyError {
    fn from(e: WordError) -> Self {
        VerifyError::Word(e)
    }
}

impl From<MonotoneError> for VerifyError {
    fn from(e: MonotoneError) -> Self {
        VerifyError::Monotone(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest rank for which the exhaustive sweep is attempted.
    pub exhaustive_cap: u32,
    /// How many counterexamples are kept in the report (the total is always
    /// counted).
    pub max_counterexamples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { exhaustive_cap: 24, max_counterexamples: 16 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    Sampled { trials: u64, seed: u64 },
}

/// One state where the word disagrees with the specification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub state: NailState,
    /// What the specification wants on this state.
    pub expected_hang: bool,
    /// Whether the quotiented word is nontrivial (i.e. actually hangs).
    pub got_nontrivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub mode: VerifyMode,
    pub states_checked: u64,
    pub counterexamples: Vec<Counterexample>,
    pub counterexamples_total: u64,
    pub written_length: u64,
    pub reduced_length: u64,
}

impl VerifyReport {
    /// A positive certificate: every state checked and none disagreed.
    /// Sampled runs never count as verified.
    pub fn verified(&self) -> bool {
        matches!(self.mode, VerifyMode::Exhaustive) && self.counterexamples_total == 0
    }

    /// No counterexample found (weaker than [`verified`](Self::verified) in
    /// sampled mode).
    pub fn clean(&self) -> bool {
        self.counterexamples_total == 0
    }
}

/// Is the quotient of `letters` by the present-mask nontrivial? One pass,
/// reusing the caller's stack buffer.
#[inline]
fn quotient_nontrivial(letters: &[i32], mask: u64, stack: &mut Vec<i32>) -> bool {
    stack.clear();
    for &l in letters {
        if mask >> (l.unsigned_abs() - 1) & 1 == 1 {
            push_reduced(stack, l);
        }
    }
    !stack.is_empty()
}

fn check_ranks(word: &Word, f: &MonotoneFn) -> Result<(), VerifyError> {
    if word.rank() != f.rank() {
        return Err(VerifyError::RankMismatch { word: word.rank(), spec: f.rank() });
    }
    Ok(())
}

/// Exhaustive verification restricted to state masks in `start..end`.
/// Partitioning the full range across workers and merging the pieces gives a
/// report identical to the single-shot sweep.
pub fn verify_exhaustive_range(
    word: &Word,
    f: &MonotoneFn,
    start: u64,
    end: u64,
    opts: &VerifyOptions,
) -> Result<VerifyReport, VerifyError> {
    check_ranks(word, f)?;
    if word.rank() > NailState::MAX_RANK {
        return Err(VerifyError::Word(WordError::RankTooLarge { rank: word.rank() }));
    }
    let letters = word.as_signed();
    let mut stack: Vec<i32> = Vec::with_capacity(word.len());
    let mut counterexamples = Vec::new();
    let mut total = 0u64;
    for mask in start..end {
        let got = quotient_nontrivial(letters, mask, &mut stack);
        let expected = f.eval_mask(mask);
        if got != expected {
            total += 1;
            if counterexamples.len() < opts.max_counterexamples {
                counterexamples.push(Counterexample {
                    state: NailState::from_mask(word.rank(), mask)?,
                    expected_hang: expected,
                    got_nontrivial: got,
                });
            }
        }
    }
    Ok(VerifyReport {
        mode: VerifyMode::Exhaustive,
        states_checked: end - start,
        counterexamples,
        counterexamples_total: total,
        written_length: word.len() as u64,
        reduced_length: word.len() as u64,
    })
}

/// Merge two partial reports of the same mode. Associative; merging ordered
/// partitions reproduces the full sweep exactly.
pub fn merge_reports(
    mut a: VerifyReport,
    b: VerifyReport,
    opts: &VerifyOptions,
) -> VerifyReport {
    debug_assert!(matches!(
        (&a.mode, &b.mode),
        (VerifyMode::Exhaustive, VerifyMode::Exhaustive) | (VerifyMode::Sampled { .. }, _)
    ));
    a.states_checked += b.states_checked;
    a.counterexamples_total += b.counterexamples_total;
    for c in b.counterexamples {
        if a.counterexamples.len() >= opts.max_counterexamples {
            break;
        }
        a.counterexamples.push(c);
    }
    a
}

/// Check a word against a specification on every one of the `2^n` states.
pub fn verify_exhaustive(
    word: &Word,
    f: &MonotoneFn,
    opts: &VerifyOptions,
) -> Result<VerifyReport, VerifyError> {
    check_ranks(word, f)?;
    let n = word.rank();
    if n > opts.exhaustive_cap {
        return Err(VerifyError::CapExceeded { rank: n, cap: opts.exhaustive_cap });
    }
    if n > NailState::MAX_RANK {
        return Err(VerifyError::Word(WordError::RankTooLarge { rank: n }));
    }
    verify_exhaustive_range(word, f, 0, 1u64 << n, opts)
}

/// Exhaustive verification of an expression; the report carries the
/// expression's written length alongside the reduced length.
pub fn verify_expr_exhaustive(
    expr: &WordExpr,
    f: &MonotoneFn,
    opts: &VerifyOptions,
) -> Result<VerifyReport, VerifyError> {
    let word = expr.flatten();
    let mut report = verify_exhaustive(&word, f, opts)?;
    report.written_length = expr.written_length();
    Ok(report)
}

/// Monte Carlo verification over uniformly random states. Deterministic for
/// a given seed. The result can refute but never certify.
pub fn verify_sampled(
    word: &Word,
    f: &MonotoneFn,
    trials: u64,
    seed: u64,
    opts: &VerifyOptions,
) -> Result<VerifyReport, VerifyError> {
    check_ranks(word, f)?;
    if trials == 0 {
        return Err(VerifyError::ZeroTrials);
    }
    let n = word.rank();
    if n > NailState::MAX_RANK {
        return Err(VerifyError::Word(WordError::RankTooLarge { rank: n }));
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters = word.as_signed();
    let mut stack: Vec<i32> = Vec::with_capacity(word.len());
    let mut counterexamples = Vec::new();
    let mut total = 0u64;
    for _ in 0..trials {
        let mask = rng.gen::<u64>() & full;
        let got = quotient_nontrivial(letters, mask, &mut stack);
        let expected = f.eval_mask(mask);
        if got != expected {
            total += 1;
            if counterexamples.len() < opts.max_counterexamples {
                counterexamples.push(Counterexample {
                    state: NailState::from_mask(n, mask)?,
                    expected_hang: expected,
                    got_nontrivial: got,
                });
            }
        }
    }
    Ok(VerifyReport {
        mode: VerifyMode::Sampled { trials, seed },
        states_checked: trials,
        counterexamples,
        counterexamples_total: total,
        written_length: word.len() as u64,
        reduced_length: word.len() as u64,
    })
}

/// Sample nested state pairs `s ⊆ t` and check that a word hanging on `s`
/// also hangs on `t`. This follows from quotient factoring for *any* word,
/// so a `false` here means the word machinery itself is broken.
pub fn monotonicity_probe(word: &Word, samples: u64, seed: u64) -> bool {
    let n = word.rank();
    if n == 0 || n > NailState::MAX_RANK {
        return true; // nothing to probe; states are capped at 64 nails
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters = word.as_signed();
    let mut stack: Vec<i32> = Vec::with_capacity(word.len());
    for _ in 0..samples {
        let t = rng.gen::<u64>() & full;
        let s = t & rng.gen::<u64>();
        if quotient_nontrivial(letters, s, &mut stack)
            && !quotient_nontrivial(letters, t, &mut stack)
        {
            return false;
        }
    }
    true
}
