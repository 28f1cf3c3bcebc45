//! The probabilistic k-of-n pipeline.
//!
//! A depth-0 word is a small product of distinct generators chosen so that
//! the two failure probabilities — hanging on `k-1` nails, falling on `k` —
//! are exactly balanced. Each level combines three independent copies with a
//! safe majority gate, driving the failure probability down by
//! `p ↦ 3p² − 2p³`. Run deep enough, a random word is almost surely correct
//! on *every* state, so sampling plus exhaustive verification finds a
//! certified word in a handful of attempts.
//!
//! One half of this module is the exact-rational probability machinery and
//! the depth schedule; the other is seeded word generation and the
//! verify-and-retry driver.

mod prob;
mod sample;

pub use prob::{
    depth_schedule, exponent_c, initializer, p0_majority, p_step, p_step_exact,
    unpadded_phase_length, FailureTracker, InitializerSpec, Prob, ProbError, Rational,
};
pub use sample::{
    derive_seed, find_word, sample_w0, sample_word, AttemptRecord, FindError, FindOptions,
    FindReport, SampleConfig, SampleError, DEFAULT_SEED,
};
