//! Free-group machinery for picture-hanging puzzles.
//!
//! A picture hung on `n` nails traces a word in the free group on `n`
//! generators; removing a nail kills that generator, and the picture falls
//! exactly when the quotiented word collapses to the identity. This crate
//! compiles monotone boolean specifications ("hang on these nail subsets")
//! into such words and verifies any word against any specification.
//!
//! The pieces:
//!
//! * [`word`] — reduced words, quotient homomorphisms, as-written expressions.
//! * [`monotone`] — threshold / minimal-set / formula / truth-table specs.
//! * [`gates`] — Λ-words and padded safe OR / AND / MAJORITY gates.
//! * [`compile`] — the deterministic compilers (commutator recursion,
//!   Λ-products, gate nesting, divide-and-conquer k-of-n).
//! * [`random`] — the probabilistic k-of-n pipeline: failure-probability
//!   tracking, balanced initializers, seeded majority sampling, retry search.
//! * [`verify`] — exhaustive and sampled certification with counterexamples.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live in
//! the companion `hangnail` crate.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod compile;
pub mod gates;
pub mod monotone;
pub mod random;
pub mod verify;
pub mod word;

pub use compile::{all_nails, from_formula, from_minimal_sets, kofn_dnc, Compiled, Provenance};
pub use gates::{
    begins_ends_with_pad, choose_padding, lambda, safe_and, safe_majority, safe_or, GateError,
    PadPolicy, PaddingSpec,
};
pub use monotone::{check_realizable, parse_formula, Formula, MonotoneFn, TruthTable};
pub use random::{
    depth_schedule, derive_seed, exponent_c, find_word, initializer, p0_majority, p_step,
    sample_w0, sample_word, unpadded_phase_length, FailureTracker, FindReport, InitializerSpec,
    Prob, Rational, SampleConfig, DEFAULT_SEED,
};
pub use verify::{
    monotonicity_probe, verify_exhaustive, verify_expr_exhaustive, verify_sampled,
    Counterexample, VerifyMode, VerifyOptions, VerifyReport,
};
pub use word::{Generator, Letter, NailState, Sign, Word, WordError, WordExpr};
