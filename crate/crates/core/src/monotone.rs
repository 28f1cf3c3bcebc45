//! Monotone boolean specifications: which nail subsets must keep the picture
//! hanging.
//!
//! Four interchangeable bodies — threshold, minimal true sets, AND/OR
//! formula, truth table — all evaluated against a [`NailState`]. Constant
//! functions are rejected at construction: a picture cannot hang on zero
//! nails, and one that never hangs is not a puzzle.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::word::{Generator, NailState, WordError};

/// Largest rank for which truth tables and subset enumerations are built.
pub const ENUMERATION_CAP: u32 = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonotoneError {
    /// Threshold k outside `1..=n`.
    BadThreshold { k: u32, n: u32 },
    /// Minimal-set family empty, containing the empty set, or not an antichain.
    BadAntichain(String),
    Word(WordError),
    Unrealizable(Unrealizable),
    /// Formula leaf out of `1..=n`.
    VarOutOfRange { index: u32, rank: u32 },
    /// AND/OR node with fewer than two children.
    BadArity,
    /// Enumeration over 2^n states refused.
    RankTooLargeForEnumeration { rank: u32 },
    RankMismatch { left: u32, right: u32 },
}

impl fmt::Display for MonotoneError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonotoneError::BadThreshold { k, n } => write!(f, "threshold {k} outside 1..={n}"),
            MonotoneError::BadAntichain(why) => write!(f, "bad minimal-set family: {why}"),
            MonotoneError::Word(e) => write!(f, "{e}"),
            MonotoneError::Unrealizable(u) => write!(f, "{u}"),
            MonotoneError::VarOutOfRange { index, rank } => {
                write!(f, "variable x{index} out of range for n={rank}")
            }
            MonotoneError::BadArity => write!(f, "AND/OR nodes need at least two children"),
            MonotoneError::RankTooLargeForEnumeration { rank } => {
                write!(f, "refusing to enumerate 2^{rank} states (cap {ENUMERATION_CAP})")
            }
            MonotoneError::RankMismatch { left, right } => {
                write!(f, "rank mismatch: {left} vs {right}")
            }
        }
    }
}

impl core::error::Error for MonotoneError {}

impl From<WordError> for MonotoneError {
    fn from(e: WordError) -> Self {
        MonotoneError::Word(e)
    }
}

/// Why a truth table cannot be realized as a picture-hanging.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unrealizable {
    /// f(∅) must be false: the picture cannot hang with every nail removed.
    TrueOnEmpty,
    /// f(full) must be true, otherwise the function is constant false.
    FalseOnFull,
    /// Adding a nail flipped the output from hanging to fallen.
    NotMonotone { smaller: u64, larger: u64 },
}

impl fmt::Display for Unrealizable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unrealizable::TrueOnEmpty => write!(f, "f(∅) must be false"),
            Unrealizable::FalseOnFull => write!(f, "f(full set) must be true"),
            Unrealizable::NotMonotone { smaller, larger } => {
                write!(f, "not monotone: true on {smaller:#b} but false on {larger:#b}")
            }
        }
    }
}

/// AND/OR formula over variables `x1..xn`; no negation, so any formula is
/// monotone and (having at least one variable) nontrivial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Var(Generator),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn var(index: u32) -> Option<Formula> {
        Generator::new(index).map(Formula::Var)
    }

    pub fn and(children: Vec<Formula>) -> Result<Formula, MonotoneError> {
        if children.len() < 2 {
            return Err(MonotoneError::BadArity);
        }
        Ok(Formula::And(children))
    }

    pub fn or(children: Vec<Formula>) -> Result<Formula, MonotoneError> {
        if children.len() < 2 {
            return Err(MonotoneError::BadArity);
        }
        Ok(Formula::Or(children))
    }

    pub fn max_var(&self) -> u32 {
        match self {
            Formula::Var(g) => g.index(),
            Formula::And(cs) | Formula::Or(cs) => {
                cs.iter().map(Formula::max_var).max().unwrap_or(0)
            }
        }
    }

    fn eval(&self, mask: u64) -> bool {
        match self {
            Formula::Var(g) => mask >> (g.index() - 1) & 1 == 1,
            Formula::And(cs) => cs.iter().all(|c| c.eval(mask)),
            Formula::Or(cs) => cs.iter().any(|c| c.eval(mask)),
        }
    }
}

/// A truth table over all `2^rank` nail states, bit-packed by state mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruthTable {
    rank: u32,
    bits: Vec<u64>,
}

impl TruthTable {
    /// Build from a predicate on state masks. No realizability check here;
    /// see [`check_realizable`] and [`MonotoneFn::from_table`].
    pub fn from_fn<F>(rank: u32, mut f: F) -> Result<TruthTable, MonotoneError>
    where
        F: FnMut(u64) -> bool,
    {
        if rank > ENUMERATION_CAP {
            return Err(MonotoneError::RankTooLargeForEnumeration { rank });
        }
        let states = 1u64 << rank;
        let mut bits = alloc::vec![0u64; states.div_ceil(64) as usize];
        for mask in 0..states {
            if f(mask) {
                bits[(mask / 64) as usize] |= 1 << (mask % 64);
            }
        }
        Ok(TruthTable { rank, bits })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn get(&self, mask: u64) -> bool {
        self.bits[(mask / 64) as usize] >> (mask % 64) & 1 == 1
    }
}

/// Check that a table is a nontrivial monotone function: monotone,
/// `f(∅) = false`, `f(full) = true`.
pub fn check_realizable(table: &TruthTable) -> Result<(), Unrealizable> {
    let n = table.rank;
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    if table.get(0) {
        return Err(Unrealizable::TrueOnEmpty);
    }
    for mask in 0..(1u64 << n) {
        if !table.get(mask) {
            continue;
        }
        for j in 0..n {
            let larger = mask | 1 << j;
            if larger != mask && !table.get(larger) {
                return Err(Unrealizable::NotMonotone { smaller: mask, larger });
            }
        }
    }
    // monotone with f(∅) = false; constant false is all that's left to rule out
    if !table.get(full) {
        return Err(Unrealizable::FalseOnFull);
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Body {
    Threshold { k: u32 },
    MinimalSets(Vec<NailState>),
    Formula(Formula),
    Table(TruthTable),
}

/// A nontrivial monotone boolean specification over `rank` nails.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonotoneFn {
    rank: u32,
    body: Body,
}

/// Order subsets by size, then lexicographically on their ascending element
/// lists. This is the canonical antichain order used by the Λ-product
/// compiler, so compiled words are deterministic.
pub(crate) fn canonical_set_order(a: &NailState, b: &NailState) -> core::cmp::Ordering {
    a.present_count()
        .cmp(&b.present_count())
        .then_with(|| a.present().cmp(b.present()))
}

impl MonotoneFn {
    /// `Threshold(k, n)`: hang iff at least `k` of `n` nails remain.
    pub fn threshold(n: u32, k: u32) -> Result<MonotoneFn, MonotoneError> {
        if k < 1 || k > n {
            return Err(MonotoneError::BadThreshold { k, n });
        }
        NailState::empty(n)?;
        Ok(MonotoneFn { rank: n, body: Body::Threshold { k } })
    }

    /// From the family of minimal hanging sets. Must be a nonempty antichain
    /// of nonempty subsets.
    pub fn from_minimal_sets(n: u32, sets: Vec<NailState>) -> Result<MonotoneFn, MonotoneError> {
        if sets.is_empty() {
            return Err(MonotoneError::BadAntichain("empty family".into()));
        }
        let mut sets = sets;
        for s in &sets {
            if s.rank() != n {
                return Err(MonotoneError::RankMismatch { left: n, right: s.rank() });
            }
            if s.is_empty() {
                return Err(MonotoneError::BadAntichain("contains the empty set".into()));
            }
        }
        for i in 0..sets.len() {
            for j in 0..sets.len() {
                if i != j && sets[i].is_subset_of(&sets[j]) {
                    return Err(MonotoneError::BadAntichain(alloc::format!(
                        "{} is contained in {}",
                        sets[i],
                        sets[j]
                    )));
                }
            }
        }
        sets.sort_by(canonical_set_order);
        Ok(MonotoneFn { rank: n, body: Body::MinimalSets(sets) })
    }

    /// From an AND/OR formula; every variable must be within `1..=n`.
    pub fn from_formula(n: u32, formula: Formula) -> Result<MonotoneFn, MonotoneError> {
        NailState::empty(n)?;
        let max = formula.max_var();
        if max > n {
            return Err(MonotoneError::VarOutOfRange { index: max, rank: n });
        }
        Ok(MonotoneFn { rank: n, body: Body::Formula(formula) })
    }

    /// From a truth table, validated eagerly for nontrivial monotonicity.
    pub fn from_table(table: TruthTable) -> Result<MonotoneFn, MonotoneError> {
        check_realizable(&table).map_err(MonotoneError::Unrealizable)?;
        Ok(MonotoneFn { rank: table.rank, body: Body::Table(table) })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Threshold k if this is a threshold function.
    pub fn threshold_k(&self) -> Option<u32> {
        match &self.body {
            Body::Threshold { k } => Some(*k),
            _ => None,
        }
    }

    pub fn formula(&self) -> Option<&Formula> {
        match &self.body {
            Body::Formula(f) => Some(f),
            _ => None,
        }
    }

    /// Evaluate on a nail state: true = picture hangs.
    pub fn evaluate(&self, state: &NailState) -> Result<bool, MonotoneError> {
        if state.rank() != self.rank {
            return Err(MonotoneError::RankMismatch { left: self.rank, right: state.rank() });
        }
        Ok(self.eval_mask(state.mask()))
    }

    pub(crate) fn eval_mask(&self, mask: u64) -> bool {
        match &self.body {
            Body::Threshold { k } => mask.count_ones() >= *k,
            Body::MinimalSets(sets) => sets.iter().any(|s| s.mask() & mask == s.mask()),
            Body::Formula(f) => f.eval(mask),
            Body::Table(t) => t.get(mask),
        }
    }

    /// The unique antichain of minimal true sets, in canonical order.
    ///
    /// Threshold functions enumerate their k-subsets directly; the other
    /// bodies sweep all `2^n` states, so they are capped at
    /// [`ENUMERATION_CAP`].
    pub fn minimal_true_sets(&self) -> Result<Vec<NailState>, MonotoneError> {
        let n = self.rank;
        match &self.body {
            Body::MinimalSets(sets) => Ok(sets.clone()),
            Body::Threshold { k } => {
                let mut out = Vec::new();
                let mut combo: Vec<u32> = (1..=*k).collect();
                loop {
                    out.push(NailState::from_indices(n, combo.iter().copied())?);
                    // next k-combination of 1..=n in lexicographic order
                    let mut i = *k as usize;
                    loop {
                        if i == 0 {
                            out.sort_by(canonical_set_order);
                            return Ok(out);
                        }
                        i -= 1;
                        if combo[i] < n - (*k - 1 - i as u32) {
                            combo[i] += 1;
                            for j in i + 1..*k as usize {
                                combo[j] = combo[j - 1] + 1;
                            }
                            break;
                        }
                    }
                }
            }
            Body::Formula(_) | Body::Table(_) => {
                if n > ENUMERATION_CAP {
                    return Err(MonotoneError::RankTooLargeForEnumeration { rank: n });
                }
                let mut out = Vec::new();
                for mask in 1..(1u64 << n) {
                    if !self.eval_mask(mask) {
                        continue;
                    }
                    // minimal iff removing any single present nail flips to false
                    let minimal =
                        (0..n).all(|j| mask >> j & 1 == 0 || !self.eval_mask(mask & !(1 << j)));
                    if minimal {
                        out.push(NailState::from_mask(n, mask)?);
                    }
                }
                out.sort_by(canonical_set_order);
                Ok(out)
            }
        }
    }
}

/// Formula parse failure, with a byte offset into the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: {}", self.offset, self.message)
    }
}

impl core::error::Error for ParseError {}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    rank: u32,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, message: &str) -> ParseError {
        ParseError { offset: self.pos, message: message.into() }
    }

    // expr := term { "|" term }
    fn expr(&mut self) -> Result<Formula, ParseError> {
        let mut terms = alloc::vec![self.term()?];
        while self.peek() == Some(b'|') {
            self.pos += 1;
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Formula::Or(terms) })
    }

    // term := atom { "&" atom }
    fn term(&mut self) -> Result<Formula, ParseError> {
        let mut atoms = alloc::vec![self.atom()?];
        while self.peek() == Some(b'&') {
            self.pos += 1;
            atoms.push(self.atom()?);
        }
        Ok(if atoms.len() == 1 { atoms.pop().unwrap() } else { Formula::And(atoms) })
    }

    // atom := var | "(" expr ")"
    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if self.pos == start {
                    return Err(self.err("expected digits after 'x'"));
                }
                let digits = core::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                let index: u32 =
                    digits.parse().map_err(|_| ParseError {
                        offset: start,
                        message: "variable index too large".into(),
                    })?;
                if index == 0 {
                    return Err(ParseError {
                        offset: start,
                        message: "variable index must be at least 1".into(),
                    });
                }
                if index > self.rank {
                    return Err(ParseError {
                        offset: start,
                        message: alloc::format!("variable x{index} exceeds declared n={}", self.rank),
                    });
                }
                Ok(Formula::Var(Generator::new(index).unwrap()))
            }
            Some(c) => Err(self.err(&alloc::format!("unexpected character '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parse an AND/OR formula over `x1..x<rank>`. AND binds tighter than OR;
/// parentheses group.
pub fn parse_formula(text: &str, rank: u32) -> Result<MonotoneFn, ParseError> {
    let mut p = Parser { bytes: text.as_bytes(), pos: 0, rank };
    let formula = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    MonotoneFn::from_formula(rank, formula).map_err(|e| ParseError {
        offset: 0,
        message: alloc::format!("{e}"),
    })
}
