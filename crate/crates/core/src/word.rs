//! Freely reduced words over generators `x1..xn`, nail states, and
//! as-written word expressions.
//!
//! A [`Word`] is always stored in its unique freely reduced form, so equality
//! of words is equality in the free group. The as-written shape of a
//! construction (before any cancellation) lives in [`WordExpr`], whose
//! [`written_length`](WordExpr::written_length) counts symbols exactly as
//! they were laid down.

use alloc::vec::Vec;
use core::fmt;
use core::num::NonZeroU32;

/// Errors from word construction and combination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordError {
    /// A letter's generator index exceeds the ambient rank.
    IndexOutOfRange { index: u32, rank: u32 },
    /// Two operands live over different numbers of generators.
    RankMismatch { left: u32, right: u32 },
    /// Nail states are limited to 64 nails.
    RankTooLarge { rank: u32 },
    /// A bitmask mentions nails outside `1..=rank`.
    MaskOutOfRange { mask: u64, rank: u32 },
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::IndexOutOfRange { index, rank } => {
                write!(f, "generator index {index} out of range for rank {rank}")
            }
            WordError::RankMismatch { left, right } => {
                write!(f, "rank mismatch: {left} vs {right}")
            }
            WordError::RankTooLarge { rank } => {
                write!(f, "rank {rank} exceeds the {} nail state limit", NailState::MAX_RANK)
            }
            WordError::MaskOutOfRange { mask, rank } => {
                write!(f, "state mask {mask:#x} mentions nails beyond rank {rank}")
            }
        }
    }
}

impl core::error::Error for WordError {}

/// A 1-based generator index: `x1, x2, ...` — one per nail.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Generator(NonZeroU32);

impl Generator {
    /// `None` when `index == 0`; indices are 1-based.
    pub fn new(index: u32) -> Option<Self> {
        NonZeroU32::new(index).map(Generator)
    }

    pub fn index(self) -> u32 {
        self.0.get()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// Orientation of a letter: the generator itself or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Pos,
    Neg,
}

/// A single symbol `x_i` or `x_i^{-1}`, stored as a signed index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Letter(i32);

impl Letter {
    pub fn new(gen: Generator, sign: Sign) -> Self {
        let v = gen.index() as i32;
        Letter(match sign {
            Sign::Pos => v,
            Sign::Neg => -v,
        })
    }

    pub fn positive(gen: Generator) -> Self {
        Letter::new(gen, Sign::Pos)
    }

    pub fn negative(gen: Generator) -> Self {
        Letter::new(gen, Sign::Neg)
    }

    pub fn generator(self) -> Generator {
        Generator::new(self.0.unsigned_abs()).expect("letter index is nonzero")
    }

    pub fn sign(self) -> Sign {
        if self.0 > 0 {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// The internal encoding: index with sign, never zero.
    pub fn signed(self) -> i32 {
        self.0
    }

    /// `None` when `v == 0`.
    pub fn from_signed(v: i32) -> Option<Self> {
        if v == 0 {
            None
        } else {
            Some(Letter(v))
        }
    }

    pub(crate) fn from_signed_unchecked(v: i32) -> Self {
        debug_assert!(v != 0);
        Letter(v)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 > 0 {
            write!(f, "x{}", self.0)
        } else {
            write!(f, "x{}'", -self.0)
        }
    }
}

/// Push a signed letter onto a reduction stack, cancelling against the top.
///
/// A single left-to-right pass with this step yields the unique freely
/// reduced form: cancellation is local, and the stack top is always the last
/// surviving letter.
#[inline]
pub(crate) fn push_reduced(stack: &mut Vec<i32>, letter: i32) {
    if stack.last() == Some(&-letter) {
        stack.pop();
    } else {
        stack.push(letter);
    }
}

/// A freely reduced word over generators `x1..x_rank`.
///
/// The empty word is the group identity. No adjacent pair `x x'` or `x' x`
/// ever appears in `letters`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    rank: u32,
    letters: Vec<i32>,
}

impl Word {
    /// The identity element.
    pub fn identity(rank: u32) -> Self {
        Word { rank, letters: Vec::new() }
    }

    /// A one-letter word.
    pub fn letter(rank: u32, letter: Letter) -> Result<Self, WordError> {
        Word::reduce(rank, [letter])
    }

    /// Freely reduce a letter sequence. Idempotent; the result is the unique
    /// reduced form of the input.
    pub fn reduce<I>(rank: u32, letters: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = Letter>,
    {
        Word::reduce_signed(rank, letters.into_iter().map(Letter::signed))
    }

    pub(crate) fn reduce_signed<I>(rank: u32, letters: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = i32>,
    {
        let iter = letters.into_iter();
        let mut stack: Vec<i32> = Vec::with_capacity(iter.size_hint().0);
        for l in iter {
            let index = l.unsigned_abs();
            if index == 0 || index > rank {
                return Err(WordError::IndexOutOfRange { index, rank });
            }
            push_reduced(&mut stack, l);
        }
        Ok(Word { rank, letters: stack })
    }

    /// Wrap letters already known to be reduced and in range.
    pub(crate) fn from_reduced_unchecked(rank: u32, letters: Vec<i32>) -> Self {
        debug_assert!(letters.windows(2).all(|w| w[0] != -w[1]));
        debug_assert!(letters.iter().all(|l| (1..=rank).contains(&l.unsigned_abs())));
        Word { rank, letters }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Reduced length (number of surviving letters).
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// True exactly when this is the group identity.
    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.letters.iter().map(|&l| Letter::from_signed_unchecked(l))
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().map(|&l| Letter::from_signed_unchecked(l))
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().map(|&l| Letter::from_signed_unchecked(l))
    }

    pub(crate) fn as_signed(&self) -> &[i32] {
        &self.letters
    }

    /// Group multiplication `self · other`, reduced.
    pub fn concat(&self, other: &Word) -> Result<Self, WordError> {
        if self.rank != other.rank {
            return Err(WordError::RankMismatch { left: self.rank, right: other.rank });
        }
        let mut stack = Vec::with_capacity(self.letters.len() + other.letters.len());
        stack.extend_from_slice(&self.letters);
        for &l in &other.letters {
            push_reduced(&mut stack, l);
        }
        Ok(Word { rank: self.rank, letters: stack })
    }

    /// Group inverse: reversed letters with flipped signs. Length preserved.
    pub fn inverse(&self) -> Self {
        let letters = self.letters.iter().rev().map(|&l| -l).collect();
        Word { rank: self.rank, letters }
    }

    /// `self^e`; `e = 0` gives the identity, negative exponents invert.
    pub fn power(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity(self.rank);
        for _ in 0..e.unsigned_abs() {
            acc = acc.concat(&base).expect("equal ranks");
        }
        acc
    }

    /// Apply the quotient homomorphism that kills every generator absent from
    /// `state`: deletes those letters and reduces.
    pub fn quotient(&self, state: &NailState) -> Result<Self, WordError> {
        if self.rank != state.rank() {
            return Err(WordError::RankMismatch { left: self.rank, right: state.rank() });
        }
        let mask = state.mask();
        let mut stack = Vec::new();
        for &l in &self.letters {
            if mask >> (l.unsigned_abs() - 1) & 1 == 1 {
                push_reduced(&mut stack, l);
            }
        }
        Ok(Word { rank: self.rank, letters: stack })
    }

    /// Exact counts of `g` and `g^{-1}` in the reduced form.
    pub fn occurrences(&self, g: Generator) -> (usize, usize) {
        let v = g.index() as i32;
        let pos = self.letters.iter().filter(|&&l| l == v).count();
        let neg = self.letters.iter().filter(|&&l| l == -v).count();
        (pos, neg)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// A subset of the nails `{1..rank}` — which nails are still present.
///
/// Bit `i-1` of the mask is nail `i`. Limited to 64 nails, which covers
/// everything the exhaustive and sampled verifiers can touch.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct NailState {
    rank: u32,
    bits: u64,
}

impl NailState {
    pub const MAX_RANK: u32 = 64;

    fn check_rank(rank: u32) -> Result<(), WordError> {
        if rank > Self::MAX_RANK {
            Err(WordError::RankTooLarge { rank })
        } else {
            Ok(())
        }
    }

    fn full_mask(rank: u32) -> u64 {
        if rank == 64 {
            u64::MAX
        } else {
            (1u64 << rank) - 1
        }
    }

    /// No nails present.
    pub fn empty(rank: u32) -> Result<Self, WordError> {
        Self::check_rank(rank)?;
        Ok(NailState { rank, bits: 0 })
    }

    /// All nails present.
    pub fn full(rank: u32) -> Result<Self, WordError> {
        Self::check_rank(rank)?;
        Ok(NailState { rank, bits: Self::full_mask(rank) })
    }

    /// From a raw bitmask (bit `i-1` = nail `i` present).
    pub fn from_mask(rank: u32, mask: u64) -> Result<Self, WordError> {
        Self::check_rank(rank)?;
        if mask & !Self::full_mask(rank) != 0 {
            return Err(WordError::MaskOutOfRange { mask, rank });
        }
        Ok(NailState { rank, bits: mask })
    }

    /// From explicit 1-based nail indices.
    pub fn from_indices<I>(rank: u32, indices: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = u32>,
    {
        Self::check_rank(rank)?;
        let mut bits = 0u64;
        for i in indices {
            if i == 0 || i > rank {
                return Err(WordError::IndexOutOfRange { index: i, rank });
            }
            bits |= 1 << (i - 1);
        }
        Ok(NailState { rank, bits })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn mask(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, g: Generator) -> bool {
        let i = g.index();
        i <= self.rank && self.bits >> (i - 1) & 1 == 1
    }

    /// Number of nails present.
    pub fn present_count(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == Self::full_mask(self.rank)
    }

    pub fn is_subset_of(&self, other: &NailState) -> bool {
        self.rank == other.rank && self.bits & !other.bits == 0
    }

    /// Present nail indices in ascending order.
    pub fn present(&self) -> impl Iterator<Item = u32> + '_ {
        let bits = self.bits;
        (1..=self.rank).filter(move |i| bits >> (i - 1) & 1 == 1)
    }
}

impl fmt::Display for NailState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.present().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Node {
    Leaf(i32),
    Concat(Vec<WordExpr>),
    Inverse(alloc::boxed::Box<WordExpr>),
    Power(alloc::boxed::Box<WordExpr>, i64),
}

/// An as-written word expression: the syntax tree of a construction before
/// any free reduction.
///
/// `written_length` counts the symbols laid down by the construction;
/// [`flatten`](WordExpr::flatten) expands and reduces to the [`Word`] it
/// denotes. The written length is never smaller than the reduced length.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WordExpr {
    rank: u32,
    node: Node,
}

impl WordExpr {
    /// The empty expression (identity).
    pub fn identity(rank: u32) -> Self {
        WordExpr { rank, node: Node::Concat(Vec::new()) }
    }

    /// A single-letter expression.
    pub fn letter(rank: u32, letter: Letter) -> Result<Self, WordError> {
        let index = letter.generator().index();
        if index > rank {
            return Err(WordError::IndexOutOfRange { index, rank });
        }
        Ok(WordExpr { rank, node: Node::Leaf(letter.signed()) })
    }

    /// A single positive generator.
    pub fn generator(rank: u32, gen: Generator) -> Result<Self, WordError> {
        WordExpr::letter(rank, Letter::positive(gen))
    }

    /// Concatenation, in order. All parts must share a rank.
    ///
    /// Panics on an empty iterator (there is no rank to give the result);
    /// use [`WordExpr::identity`] for that.
    pub fn concat<I>(parts: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = WordExpr>,
    {
        let parts: Vec<WordExpr> = parts.into_iter().collect();
        let rank = match parts.first() {
            Some(p) => p.rank,
            None => panic!("WordExpr::concat needs at least one part; use identity(rank)"),
        };
        for p in &parts {
            if p.rank != rank {
                return Err(WordError::RankMismatch { left: rank, right: p.rank });
            }
        }
        Ok(WordExpr { rank, node: Node::Concat(parts) })
    }

    /// Formal inverse (kept as a node; written length unchanged).
    pub fn inverse(self) -> Self {
        let rank = self.rank;
        WordExpr { rank, node: Node::Inverse(alloc::boxed::Box::new(self)) }
    }

    /// Formal power `self^e`.
    pub fn pow(self, e: i64) -> Self {
        let rank = self.rank;
        WordExpr { rank, node: Node::Power(alloc::boxed::Box::new(self), e) }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Number of letters when expanded with no cancellation.
    pub fn written_length(&self) -> u64 {
        match &self.node {
            Node::Leaf(_) => 1,
            Node::Concat(parts) => parts.iter().map(WordExpr::written_length).sum(),
            Node::Inverse(c) => c.written_length(),
            Node::Power(c, e) => c.written_length().saturating_mul(e.unsigned_abs()),
        }
    }

    fn emit(&self, inverted: bool, stack: &mut Vec<i32>) {
        match &self.node {
            Node::Leaf(l) => push_reduced(stack, if inverted { -l } else { *l }),
            Node::Concat(parts) => {
                if inverted {
                    for p in parts.iter().rev() {
                        p.emit(true, stack);
                    }
                } else {
                    for p in parts {
                        p.emit(false, stack);
                    }
                }
            }
            Node::Inverse(c) => c.emit(!inverted, stack),
            Node::Power(c, e) => {
                let inv = inverted ^ (*e < 0);
                for _ in 0..e.unsigned_abs() {
                    c.emit(inv, stack);
                }
            }
        }
    }

    /// Expand and freely reduce.
    pub fn flatten(&self) -> Word {
        let mut stack = Vec::new();
        self.emit(false, &mut stack);
        Word::from_reduced_unchecked(self.rank, stack)
    }

    /// Quotient of the flattened word.
    pub fn quotient(&self, state: &NailState) -> Result<Word, WordError> {
        self.flatten().quotient(state)
    }
}
