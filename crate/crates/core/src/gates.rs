//! Gate-level building blocks: Λ-words, padding, and the safe OR / AND /
//! MAJORITY gates.
//!
//! A bare product `AB` can collapse when `A` and `B` are inverses, and a bare
//! commutator `ABA⁻¹B⁻¹` collapses whenever `A` and `B` commute — which can
//! happen in sneaky ways (`A = xyx⁻¹`, `B = xy³x⁻¹`). Wrapping each operand
//! in `g^M … g^{-M}` blocks, with `M` exceeding the operand's own use of
//! `g`, pins a `g`-symbol at both ends of the block so adjacent blocks cannot
//! eat each other.
//!
//! Gate outputs keep their block structure as [`WordExpr`]s; nothing is
//! flattened until a caller asks, so written-length accounting stays honest.
//! Correctness of a whole compiled word under arbitrary quotients (including
//! ones that delete a pad generator) is never assumed here — the `verify`
//! module certifies it.

use alloc::vec::Vec;
use core::fmt;

use crate::word::{Generator, Letter, NailState, Word, WordError, WordExpr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GateError {
    /// Λ of the empty set is not defined.
    EmptySet,
    /// Padded gates need room for their pad generators.
    RankTooSmall { rank: u32, need: u32 },
    /// Every generator is forbidden.
    NoPadAvailable { rank: u32 },
    /// Forced M=1 policy, but the best pad occurs in its operand.
    ForcedPadOccupied { pad: Generator, count: usize },
    Word(WordError),
}

impl fmt::Display for GateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateError::EmptySet => write!(f, "lambda of the empty set"),
            GateError::RankTooSmall { rank, need } => {
                write!(f, "gate needs rank >= {need}, got {rank}")
            }
            GateError::NoPadAvailable { rank } => {
                write!(f, "no pad generator available at rank {rank}")
            }
            GateError::ForcedPadOccupied { pad, count } => {
                write!(f, "forced M=1 but {pad} occurs {count} times in its operand")
            }
            GateError::Word(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for GateError {}

impl From<WordError> for GateError {
    fn from(e: WordError) -> Self {
        GateError::Word(e)
    }
}

/// One padding block: wrap an operand as `pad^reps … pad^{-reps}`.
///
/// Safe when `pad` and its inverse each occur fewer than `reps` times in the
/// (reduced) operand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PaddingSpec {
    pub pad: Generator,
    pub reps: u32,
}

/// How gates choose the repetition count M.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PadPolicy {
    /// M = (max occurrences of the pad symbol in the operand, either sign) + 1
    /// — the smallest value the padding lemma allows.
    #[default]
    Adaptive,
    /// Insist on M = 1, erroring if the chosen pad occurs in its operand at
    /// all. Used to observe the unpadded-phase length law.
    ForceM1,
}

/// Recursive commutator word over the given generators (ascending order):
/// nontrivial as it stands, collapses if any one of them is killed.
pub(crate) fn commutator_chain(rank: u32, gens: &[u32]) -> WordExpr {
    if gens.len() == 1 {
        return WordExpr::letter(rank, Letter::positive(Generator::new(gens[0]).unwrap()))
            .expect("index within rank");
    }
    let split = gens.len() / 2;
    let a = commutator_chain(rank, &gens[..split]);
    let b = commutator_chain(rank, &gens[split..]);
    WordExpr::concat([a.clone(), b.clone(), a.inverse(), b.inverse()]).expect("equal ranks")
}

/// Λ(S): a word over exactly the generators of `s`, nontrivial while all of
/// them are present and collapsing as soon as any one is removed.
pub fn lambda(s: &NailState) -> Result<WordExpr, GateError> {
    let gens: Vec<u32> = s.present().collect();
    if gens.is_empty() {
        return Err(GateError::EmptySet);
    }
    Ok(commutator_chain(s.rank(), &gens))
}

/// Max-of-either-sign occurrence counts for every generator, indexed by
/// `index - 1`.
fn occurrence_table(w: &Word) -> Vec<usize> {
    let mut pos = alloc::vec![0usize; w.rank() as usize];
    let mut neg = alloc::vec![0usize; w.rank() as usize];
    for l in w.letters() {
        let i = (l.generator().index() - 1) as usize;
        match l.sign() {
            crate::word::Sign::Pos => pos[i] += 1,
            crate::word::Sign::Neg => neg[i] += 1,
        }
    }
    pos.iter().zip(&neg).map(|(&p, &n)| p.max(n)).collect()
}

fn pick_from_counts(
    counts: &[usize],
    forbidden: &[bool],
    rank: u32,
) -> Option<(Generator, usize)> {
    let mut best: Option<(u32, usize)> = None;
    for g in 1..=rank {
        if forbidden[(g - 1) as usize] {
            continue;
        }
        let c = counts[(g - 1) as usize];
        match best {
            Some((_, bc)) if bc <= c => {}
            _ => best = Some((g, c)),
        }
    }
    best.map(|(g, c)| (Generator::new(g).unwrap(), c))
}

/// Pick the pad for one operand: a generator outside `forbidden` whose
/// occurrence count in the flattened operand is smallest (ties to the
/// smallest index), with M one more than that count.
pub fn choose_padding(
    operand: &WordExpr,
    forbidden: &[Generator],
) -> Result<PaddingSpec, GateError> {
    let rank = operand.rank();
    let mut banned = alloc::vec![false; rank as usize];
    for g in forbidden {
        if g.index() <= rank {
            banned[(g.index() - 1) as usize] = true;
        }
    }
    let counts = occurrence_table(&operand.flatten());
    let (pad, count) =
        pick_from_counts(&counts, &banned, rank).ok_or(GateError::NoPadAvailable { rank })?;
    Ok(PaddingSpec { pad, reps: count as u32 + 1 })
}

/// Choose mutually distinct pads for a gate's operands.
///
/// Pads preferentially avoid every generator appearing in any operand (so
/// M stays 1); when the rank is too small for that, the choice falls back to
/// plain occurrence-count minimisation over the non-chosen generators.
fn gate_pads(
    operands: &[&WordExpr],
    policy: PadPolicy,
) -> Result<Vec<PaddingSpec>, GateError> {
    let rank = operands[0].rank();
    let flats: Vec<Word> = operands.iter().map(|e| e.flatten()).collect();
    let tables: Vec<Vec<usize>> = flats.iter().map(occurrence_table).collect();

    // generators appearing in any operand; preferred pads avoid all of them
    let mut support = alloc::vec![false; rank as usize];
    for t in &tables {
        for (i, &c) in t.iter().enumerate() {
            if c > 0 {
                support[i] = true;
            }
        }
    }

    let mut chosen = alloc::vec![false; rank as usize];
    let mut pads = Vec::with_capacity(operands.len());
    for table in &tables {
        let preferred: Vec<bool> =
            support.iter().zip(&chosen).map(|(&s, &c)| s || c).collect();
        let picked = pick_from_counts(table, &preferred, rank)
            .or_else(|| pick_from_counts(table, &chosen, rank))
            .ok_or(GateError::NoPadAvailable { rank })?;
        let (pad, count) = picked;
        let reps = match policy {
            PadPolicy::Adaptive => count as u32 + 1,
            PadPolicy::ForceM1 => {
                if count > 0 {
                    return Err(GateError::ForcedPadOccupied { pad, count });
                }
                1
            }
        };
        chosen[(pad.index() - 1) as usize] = true;
        pads.push(PaddingSpec { pad, reps });
    }
    Ok(pads)
}

/// `pad^M · w · pad^{-M}` as an expression.
fn padded(spec: &PaddingSpec, inner: WordExpr) -> WordExpr {
    let rank = inner.rank();
    let p = WordExpr::letter(rank, Letter::positive(spec.pad)).expect("pad within rank");
    WordExpr::concat([
        p.clone().pow(spec.reps as i64),
        inner,
        p.pow(-(spec.reps as i64)),
    ])
    .expect("equal ranks")
}

fn check_gate_ranks(operands: &[&WordExpr], need: u32) -> Result<(), GateError> {
    let rank = operands[0].rank();
    for o in operands {
        if o.rank() != rank {
            return Err(GateError::Word(WordError::RankMismatch {
                left: rank,
                right: o.rank(),
            }));
        }
    }
    if rank < need {
        return Err(GateError::RankTooSmall { rank, need });
    }
    Ok(())
}

/// Safe OR: `(x^M A x^{-M}) · (y^M B y^{-M})` with distinct pads `x ≠ y`.
pub fn safe_or(a: WordExpr, b: WordExpr, policy: PadPolicy) -> Result<WordExpr, GateError> {
    check_gate_ranks(&[&a, &b], 2)?;
    let pads = gate_pads(&[&a, &b], policy)?;
    Ok(WordExpr::concat([padded(&pads[0], a), padded(&pads[1], b)])?)
}

/// Safe AND: `(x^M A x^{-M}) (y^M B y^{-M}) (x^M A^{-1} x^{-M}) (y^M B^{-1} y^{-M})`.
pub fn safe_and(a: WordExpr, b: WordExpr, policy: PadPolicy) -> Result<WordExpr, GateError> {
    check_gate_ranks(&[&a, &b], 2)?;
    let pads = gate_pads(&[&a, &b], policy)?;
    Ok(WordExpr::concat([
        padded(&pads[0], a.clone()),
        padded(&pads[1], b.clone()),
        padded(&pads[0], a.inverse()),
        padded(&pads[1], b.inverse()),
    ])?)
}

/// Safe 2-of-3 majority: `ABCA⁻¹B⁻¹C⁻¹` with each operand padded by its own
/// generator. Collapses when at most one operand is nontrivial; stays
/// nontrivial when at least two are (that is the gate's contract — compiled
/// words are still certified end-to-end by the verifier).
pub fn safe_majority(
    a: WordExpr,
    b: WordExpr,
    c: WordExpr,
    policy: PadPolicy,
) -> Result<WordExpr, GateError> {
    check_gate_ranks(&[&a, &b, &c], 3)?;
    let pads = gate_pads(&[&a, &b, &c], policy)?;
    Ok(WordExpr::concat([
        padded(&pads[0], a.clone()),
        padded(&pads[1], b.clone()),
        padded(&pads[2], c.clone()),
        padded(&pads[0], a.inverse()),
        padded(&pads[1], b.inverse()),
        padded(&pads[2], c.inverse()),
    ])?)
}

/// Does `pad^M · w · pad^{-M}` reduce to a word that begins *and* ends with
/// the pad symbol (either sign)? The padding lemma guarantees this whenever
/// `w ≠ 1` and both signs of the pad occur fewer than M times in `w`.
pub fn begins_ends_with_pad(w: &Word, pad: &PaddingSpec) -> bool {
    let p = Word::letter(w.rank(), Letter::positive(pad.pad)).expect("pad within rank");
    let block = p
        .power(pad.reps as i64)
        .concat(w)
        .and_then(|u| u.concat(&p.power(-(pad.reps as i64))))
        .expect("equal ranks");
    match (block.first(), block.last()) {
        (Some(first), Some(last)) => {
            first.generator() == pad.pad && last.generator() == pad.pad
        }
        _ => false,
    }
}
