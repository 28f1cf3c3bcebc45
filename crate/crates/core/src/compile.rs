//! The deterministic compilers from specifications to words.
//!
//! * [`all_nails`] — the recursive commutator: falls on the removal of any
//!   single nail.
//! * [`from_minimal_sets`] — the Λ-product over the minimal hanging sets.
//! * [`from_formula`] — bottom-up replacement of AND/OR gates by their safe
//!   padded versions.
//! * [`kofn_dnc`] — divide-and-conquer threshold words, padding-free because
//!   the two halves use disjoint generators.
//!
//! Each compiler returns the expression together with a provenance record for
//! reports.

use alloc::vec::Vec;
use core::fmt;

use crate::gates::{self, GateError, PadPolicy};
use crate::monotone::{Formula, MonotoneError, MonotoneFn};
use crate::word::{Generator, WordError, WordExpr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompileError {
    /// No nails, no puzzle.
    NoNails,
    /// Threshold k outside `1..=n`.
    BadThreshold { k: u32, n: u32 },
    /// `from_formula` needs a formula-bodied function.
    NotAFormula,
    /// Padded gates need at least two generators.
    RankTooSmall { rank: u32 },
    Gate(GateError),
    Monotone(MonotoneError),
    Word(WordError),
}

impl fmt::Display for CompileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompileError::NoNails => write!(f, "need at least one nail"),
            CompileError::BadThreshold { k, n } => write!(f, "threshold {k} outside 1..={n}"),
            CompileError::NotAFormula => write!(f, "specification has no formula body"),
            CompileError::RankTooSmall { rank } => {
                write!(f, "gate compilation needs n >= 2, got {rank}")
            }
            CompileError::Gate(e) => write!(f, "{e}"),
            CompileError::Monotone(e) => write!(f, "{e}"),
            CompileError::Word(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CompileError {}

impl From<GateError> for CompileError {
    fn from(e: GateError) -> Self {
        CompileError::Gate(e)
    }
}

impl From<MonotoneError> for CompileError {
    fn from(e: MonotoneError) -> Self {
        CompileError::Monotone(e)
    }
}

impl From<WordError> for CompileError {
    fn from(e: WordError) -> Self {
        CompileError::Word(e)
    }
}

/// Which construction produced a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    AllNails,
    LambdaProduct,
    GateFormula,
    DivideAndConquer,
    RandomMajority,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::AllNails => "all-nails",
            Method::LambdaProduct => "lambda",
            Method::GateFormula => "formula",
            Method::DivideAndConquer => "dnc",
            Method::RandomMajority => "random",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Construction name plus the parameters that drove it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub method: Method,
    pub n: u32,
    pub k: Option<u32>,
    pub depth: Option<u32>,
    pub seed: Option<u64>,
    pub attempts: Option<u32>,
}

impl Provenance {
    pub(crate) fn deterministic(method: Method, n: u32, k: Option<u32>) -> Self {
        Provenance { method, n, k, depth: None, seed: None, attempts: None }
    }
}

/// A compiled word expression with its provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Compiled {
    pub expr: WordExpr,
    pub provenance: Provenance,
}

/// Hang on all `n` nails, fall when any one is removed: the recursive
/// commutator `A·B·A⁻¹·B⁻¹` over the two halves, split at ⌊n/2⌋.
///
/// Written length is exactly `n²` at powers of two, linearly interpolated
/// between them.
pub fn all_nails(n: u32) -> Result<Compiled, CompileError> {
    if n == 0 {
        return Err(CompileError::NoNails);
    }
    let gens: Vec<u32> = (1..=n).collect();
    Ok(Compiled {
        expr: gates::commutator_chain(n, &gens),
        provenance: Provenance::deterministic(Method::AllNails, n, Some(n)),
    })
}

/// The Λ-product `Λ(S₁)·Λ(S₂)⋯Λ(S_N)` over the minimal true sets of `f`, in
/// canonical antichain order.
pub fn from_minimal_sets(f: &MonotoneFn) -> Result<Compiled, CompileError> {
    let sets = f.minimal_true_sets()?;
    let parts: Result<Vec<WordExpr>, GateError> = sets.iter().map(gates::lambda).collect();
    Ok(Compiled {
        expr: WordExpr::concat(parts?)?,
        provenance: Provenance::deterministic(Method::LambdaProduct, f.rank(), None),
    })
}

fn compile_formula(rank: u32, formula: &Formula) -> Result<WordExpr, CompileError> {
    match formula {
        Formula::Var(g) => Ok(WordExpr::generator(rank, *g)?),
        Formula::And(children) => fold_gate(rank, children, gates::safe_and),
        Formula::Or(children) => fold_gate(rank, children, gates::safe_or),
    }
}

fn fold_gate(
    rank: u32,
    children: &[Formula],
    gate: fn(WordExpr, WordExpr, PadPolicy) -> Result<WordExpr, GateError>,
) -> Result<WordExpr, CompileError> {
    let mut iter = children.iter();
    let first = iter.next().expect("arity >= 2");
    let mut acc = compile_formula(rank, first)?;
    for child in iter {
        let rhs = compile_formula(rank, child)?;
        acc = gate(acc, rhs, PadPolicy::Adaptive)?;
    }
    Ok(acc)
}

/// Gate compilation of a formula-bodied function: leaves become one-letter
/// words, AND/OR nodes become safe gates (n-ary nodes folded left to right).
pub fn from_formula(f: &MonotoneFn) -> Result<Compiled, CompileError> {
    if f.rank() < 2 {
        return Err(CompileError::RankTooSmall { rank: f.rank() });
    }
    let formula = f.formula().ok_or(CompileError::NotAFormula)?;
    Ok(Compiled {
        expr: compile_formula(f.rank(), formula)?,
        provenance: Provenance::deterministic(Method::GateFormula, f.rank(), None),
    })
}

/// At-least-`k` of the generators `lo..=hi`, or `None` when `k` exceeds the
/// available count (the identity — its factors are dropped entirely, so
/// written length counts only real symbols).
fn dnc(rank: u32, lo: u32, hi: u32, k: u32) -> Option<WordExpr> {
    let count = hi - lo + 1;
    if k > count {
        return None;
    }
    if count == 1 {
        let g = Generator::new(lo).unwrap();
        return Some(WordExpr::generator(rank, g).expect("index within rank"));
    }
    // left half gets ⌈count/2⌉ generators
    let mid = lo + count.div_ceil(2) - 1;
    let a = |j: u32| dnc(rank, lo, mid, j);
    let b = |j: u32| dnc(rank, mid + 1, hi, j);

    let mut factors: Vec<WordExpr> = Vec::new();
    if let Some(bk) = b(k) {
        factors.push(bk);
    }
    for j in 1..k {
        if let (Some(aj), Some(bkj)) = (a(j), b(k - j)) {
            factors.push(
                WordExpr::concat([aj.clone(), bkj.clone(), aj.inverse(), bkj.inverse()])
                    .expect("equal ranks"),
            );
        }
    }
    if let Some(ak) = a(k) {
        factors.push(ak);
    }
    debug_assert!(!factors.is_empty());
    Some(WordExpr::concat(factors).expect("equal ranks"))
}

/// Divide-and-conquer threshold word: `B_k · (A_1B_{k-1}A_1⁻¹B_{k-1}⁻¹) ⋯
/// (A_{k-1}B_1A_{k-1}⁻¹B_1⁻¹) · A_k` on halves of sizes ⌈n/2⌉ and ⌊n/2⌋.
/// No padding needed: paired factors use disjoint generators.
pub fn kofn_dnc(n: u32, k: u32) -> Result<Compiled, CompileError> {
    if n == 0 {
        return Err(CompileError::NoNails);
    }
    if k < 1 || k > n {
        return Err(CompileError::BadThreshold { k, n });
    }
    let expr = dnc(n, 1, n, k).expect("k <= n");
    Ok(Compiled {
        expr,
        provenance: Provenance::deterministic(Method::DivideAndConquer, n, Some(k)),
    })
}
