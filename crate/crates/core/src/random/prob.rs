//! Failure probabilities, exactly.
//!
//! Everything that has to be exact — the balance equation of the
//! initializer, the amplification recursion while denominators stay small —
//! runs on arbitrary-precision rationals. Once denominators outgrow a cap
//! the trajectory degrades to `f64`, which is plenty for magnitudes like
//! `2^{-2n}`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact probability: a ratio of arbitrary-precision integers.
pub type Rational = num_rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbError {
    /// Probabilities live in [0, 1].
    OutOfRange,
    /// The majority formula needs an odd nail count.
    EvenRank { n: u32 },
    /// Depth targets must lie strictly between 0 and 1/2.
    BadTarget,
    /// Thresholds need `1 <= k <= n`.
    BadThreshold { k: u32, n: u32 },
}

impl fmt::Display for ProbError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbError::OutOfRange => write!(f, "probability outside [0, 1]"),
            ProbError::EvenRank { n } => write!(f, "majority needs odd n, got {n}"),
            ProbError::BadTarget => write!(f, "target must lie in (0, 1/2)"),
            ProbError::BadThreshold { k, n } => write!(f, "threshold {k} outside 1..={n}"),
        }
    }
}

impl core::error::Error for ProbError {}

fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// A failure probability, exact while it can be and `f64` afterwards.
#[derive(Clone, Debug, PartialEq)]
pub enum Prob {
    Exact(Rational),
    Approx(f64),
}

impl Prob {
    pub fn to_f64(&self) -> f64 {
        match self {
            Prob::Exact(r) => r.to_f64().unwrap_or(0.0),
            Prob::Approx(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Prob::Exact(_))
    }

    /// Strictly below a positive rational target?
    pub fn below(&self, target: &Rational) -> bool {
        match self {
            Prob::Exact(r) => r < target,
            // an underflowed approx trajectory is below any positive target
            Prob::Approx(x) => *x == 0.0 || *x < target.to_f64().unwrap_or(f64::MIN_POSITIVE),
        }
    }

    fn denominator_bits(&self) -> u64 {
        match self {
            Prob::Exact(r) => r.denom().bits(),
            Prob::Approx(_) => 0,
        }
    }

    fn demote_if_past(self, bit_cap: u64) -> Prob {
        if self.denominator_bits() > bit_cap {
            Prob::Approx(self.to_f64())
        } else {
            self
        }
    }
}

/// One majority-amplification step: `3p² − 2p³`. Fixed points at 0, 1/2, 1.
pub fn p_step_exact(p: &Rational) -> Result<Rational, ProbError> {
    if p.is_negative() || p > &Rational::one() {
        return Err(ProbError::OutOfRange);
    }
    let three = Rational::from(BigInt::from(3));
    let two = Rational::from(BigInt::from(2));
    Ok(p * p * (three - two * p))
}

/// [`p_step_exact`] lifted to [`Prob`].
pub fn p_step(p: &Prob) -> Result<Prob, ProbError> {
    match p {
        Prob::Exact(r) => Ok(Prob::Exact(p_step_exact(r)?)),
        Prob::Approx(x) => {
            if !(0.0..=1.0).contains(x) {
                return Err(ProbError::OutOfRange);
            }
            Ok(Prob::Approx(x * x * (3.0 - 2.0 * x)))
        }
    }
}

/// Starting failure probability of the majority construction on odd
/// `n = 2k - 1` nails: `1/2 − 1/(2n)`, i.e. `(n−1)/(2n)`.
pub fn p0_majority(n: u32) -> Result<Rational, ProbError> {
    if n.is_multiple_of(2) || n == 0 {
        return Err(ProbError::EvenRank { n });
    }
    Ok(ratio(n as i64 - 1, 2 * n as i64))
}

/// Starting point used by the n-only depth schedule: the majority form
/// `1/2 − 1/(2n)` (extended to even n). Balanced initializers for extreme k
/// can start somewhat higher; [`FailureTracker::depth_below`] gives the
/// k-aware answer when that matters.
fn p0_schedule(n: u32) -> Rational {
    if n == 0 {
        Rational::zero()
    } else {
        ratio(n as i64 - 1, 2 * n as i64)
    }
}

/// Smallest depth d with `p_d < target`, iterating the recursion from the
/// construction's p₀. Grows like `log_{3/2}(n) + log_2(n) + O(1)`.
pub fn depth_schedule(n: u32, target: &Rational) -> Result<u32, ProbError> {
    if !target.is_positive() || target >= &ratio(1, 2) {
        return Err(ProbError::BadTarget);
    }
    let mut p = Prob::Exact(p0_schedule(n));
    let mut d = 0u32;
    while !p.below(target) {
        p = p_step(&p)?.demote_if_past(FailureTracker::DEFAULT_BIT_CAP);
        d += 1;
        assert!(d < 10_000, "amplification failed to converge");
    }
    Ok(d)
}

/// `log_{3/2}(6) + log_2(6)` — the exponent in the `O(n^c)` length bound
/// that depth `log_{3/2}(n) + log_2(n)` forces on `6^d`.
pub fn exponent_c() -> f64 {
    let ln6 = libm::log(6.0);
    ln6 / libm::log(1.5) + ln6 / libm::log(2.0)
}

/// Written length of the depth-d word while every pad is a single symbol:
/// `(17·6^d − 12)/5` — the sequence 1, 18, 120, 732, …
pub fn unpadded_phase_length(d: u32) -> u64 {
    let six = 6u128.checked_pow(d).expect("6^d overflows");
    let v = (17 * six - 12) / 5;
    debug_assert_eq!((17 * six - 12) % 5, 0);
    u64::try_from(v).expect("unpadded length exceeds u64")
}

/// The trajectory `p_0, p_1, …` of failure probabilities for one (n, k),
/// exact rationals until denominators outgrow the bit cap.
#[derive(Clone, Debug)]
pub struct FailureTracker {
    n: u32,
    k: u32,
    probs: Vec<Prob>,
    bit_cap: u64,
}

impl FailureTracker {
    /// Denominators cube each step; 4096 bits keeps the exact phase through
    /// roughly depth 6 before the trajectory degrades to f64.
    pub const DEFAULT_BIT_CAP: u64 = 1 << 12;

    /// Track from the balanced initializer's exact p₀.
    pub fn new(n: u32, k: u32) -> Result<Self, ProbError> {
        let spec = initializer(n, k)?;
        Ok(FailureTracker { n, k, probs: alloc::vec![Prob::Exact(spec.p0)], bit_cap: Self::DEFAULT_BIT_CAP })
    }

    pub fn with_bit_cap(mut self, bit_cap: u64) -> Self {
        self.bit_cap = bit_cap;
        self
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// p_d, extending the trajectory as needed.
    pub fn p(&mut self, d: u32) -> &Prob {
        while self.probs.len() <= d as usize {
            let next = p_step(self.probs.last().expect("nonempty"))
                .expect("trajectory stays in [0,1]")
                .demote_if_past(self.bit_cap);
            self.probs.push(next);
        }
        &self.probs[d as usize]
    }

    pub fn p_f64(&mut self, d: u32) -> f64 {
        self.p(d).to_f64()
    }

    /// Smallest d with `p_d < target`.
    pub fn depth_below(&mut self, target: &Rational) -> Result<u32, ProbError> {
        if !target.is_positive() || target >= &ratio(1, 2) {
            return Err(ProbError::BadTarget);
        }
        let mut d = 0u32;
        while !self.p(d).below(target) {
            d += 1;
            assert!(d < 10_000, "amplification failed to converge");
        }
        Ok(d)
    }
}

/// The balanced depth-0 recipe for general k: draw `m` nails (without
/// replacement, uniform over the `C(n, m)` subsets), where `m` is `m_low`
/// with probability `mix_q` and `m_low + 1` otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct InitializerSpec {
    pub n: u32,
    pub k: u32,
    pub m_low: u32,
    /// Probability of drawing `m_low` (exactly 1 in the fixed-m cases).
    pub mix_q: Rational,
    /// The common failure probability in both directions.
    pub p0: Rational,
}

impl InitializerSpec {
    pub fn expected_m(&self) -> Rational {
        let low = Rational::from(BigInt::from(self.m_low));
        let high = Rational::from(BigInt::from(self.m_low + 1));
        &self.mix_q * low + (Rational::one() - &self.mix_q) * high
    }

    /// The upper bound `1/2 − E(m)/(4n)` that p₀ always satisfies.
    pub fn p0_bound(&self) -> Rational {
        ratio(1, 2) - self.expected_m() / Rational::from(BigInt::from(4 * self.n as i64))
    }
}

fn binom(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(k))
}

fn big_ratio(num: BigUint, den: BigUint) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// P(some drawn index ≤ k−1) for an m-subset of {1..n}: failure toward
/// hanging on the first k−1 nails.
pub(crate) fn hang_failure(n: u32, k: u32, m: u32) -> Rational {
    Rational::one() - big_ratio(binom(n - k + 1, m), binom(n, m))
}

/// P(all drawn indices > k): failure toward falling on the first k nails.
pub(crate) fn fall_failure(n: u32, k: u32, m: u32) -> Rational {
    big_ratio(binom(n - k, m), binom(n, m))
}

/// Balance the two failure directions exactly.
///
/// `F(m) = 1 − C(n−k+1,m)/C(n,m)` rises in m and `G(m) = C(n−k,m)/C(n,m)`
/// falls, so `F − G` changes sign once; either some m balances exactly
/// (fixed m, `mix_q = 1`) or mixing the two consecutive values around the
/// sign change does.
pub fn initializer(n: u32, k: u32) -> Result<InitializerSpec, ProbError> {
    if n == 0 || k < 1 || k > n {
        return Err(ProbError::BadThreshold { k, n });
    }
    let mut prev_diff: Option<Rational> = None;
    for m in 0..=n {
        let f = hang_failure(n, k, m);
        let g = fall_failure(n, k, m);
        let diff = &f - &g;
        if diff.is_zero() {
            return Ok(InitializerSpec { n, k, m_low: m, mix_q: Rational::one(), p0: f });
        }
        if diff.is_positive() {
            let d_low = prev_diff.expect("F(0) - G(0) = -1 < 0");
            let q = &diff / (&diff - &d_low); // q·d_low + (1−q)·diff = 0
            let m_low = m - 1;
            let p0 = &q * hang_failure(n, k, m_low)
                + (Rational::one() - &q) * hang_failure(n, k, m);
            return Ok(InitializerSpec { n, k, m_low, mix_q: q, p0 });
        }
        prev_diff = Some(diff);
    }
    unreachable!("F(n) - G(n) >= 0 for every valid (n, k)")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn p_step_quarter_is_five_thirty_seconds() {
        assert_eq!(p_step_exact(&ratio(1, 4)).unwrap(), ratio(5, 32));
    }

    #[test]
    fn p_step_fixed_points() {
        for fp in [ratio(0, 1), ratio(1, 2), ratio(1, 1)] {
            assert_eq!(p_step_exact(&fp).unwrap(), fp);
        }
    }

    #[test]
    fn p_step_rejects_out_of_range() {
        assert!(p_step_exact(&ratio(-1, 4)).is_err());
        assert!(p_step_exact(&ratio(3, 2)).is_err());
    }

    #[test]
    fn majority_p0_values() {
        assert_eq!(p0_majority(3).unwrap(), ratio(1, 3));
        assert_eq!(p0_majority(5).unwrap(), ratio(2, 5));
        assert_eq!(p0_majority(1).unwrap(), ratio(0, 1));
        assert!(p0_majority(4).is_err());
    }

    #[test]
    fn depth_schedule_desk_values() {
        assert_eq!(depth_schedule(3, &ratio(1, 8)).unwrap(), 3);
        assert_eq!(depth_schedule(5, &ratio(1, 32)).unwrap(), 5);
        assert_eq!(depth_schedule(1, &ratio(1, 1024)).unwrap(), 0);
        assert!(depth_schedule(3, &ratio(1, 2)).is_err());
        assert!(depth_schedule(3, &ratio(0, 1)).is_err());
    }

    #[test]
    fn depth_schedule_stays_within_the_log_bound() {
        // d <= log_{3/2}(n) + log_2(n) + C with a small C; report the worst
        let mut worst = f64::NEG_INFINITY;
        for n in 2..=30u32 {
            let target = Rational::new(BigInt::one(), BigInt::from(1u64) << n);
            let d = depth_schedule(n, &target).unwrap() as f64;
            let bound = (n as f64).ln() / 1.5f64.ln() + (n as f64).log2();
            worst = worst.max(d - bound);
        }
        std::println!("depth schedule overhead C = {worst:.3}");
        assert!(worst <= 4.0, "C = {worst}");
    }

    #[test]
    fn trajectory_is_non_increasing_from_any_initializer() {
        for (n, k) in [(3u32, 2u32), (5, 3), (9, 3), (4, 4), (7, 1)] {
            let mut t = FailureTracker::new(n, k).unwrap();
            let mut prev = t.p_f64(0);
            assert!(prev <= 0.5);
            for d in 1..=8 {
                let cur = t.p_f64(d);
                assert!(cur <= prev + 1e-15, "n={n} k={k} d={d}");
                prev = cur;
            }
        }
    }

    #[test]
    fn tracker_switches_to_float_past_the_cap() {
        let mut t = FailureTracker::new(5, 3).unwrap().with_bit_cap(64);
        assert!(t.p(0).is_exact());
        // denominators cube each step: 5, 5³, 5⁹, 5²⁷ (63 bits), 5⁸¹ (> 64)
        assert!(t.p(3).is_exact());
        assert!(!t.p(4).is_exact());
        // trajectory still decreasing and sane
        assert!(t.p_f64(6) < t.p_f64(5));
    }

    #[test]
    fn exponent_is_seven_point_oh_oh_four() {
        let c = exponent_c();
        assert!((c - 7.004).abs() < 0.001, "c = {c}");
        assert!((libm::log(6.0) / libm::log(1.5) - 4.419).abs() < 0.001);
        assert!((libm::log(6.0) / libm::log(2.0) - 2.585).abs() < 0.001);
    }

    #[test]
    fn unpadded_lengths_start_one_eighteen_onetwenty() {
        let got: Vec<u64> = (0..4).map(unpadded_phase_length).collect();
        assert_eq!(got, [1, 18, 120, 732]);
        // always divisible by 5 after the subtraction, i.e. an integer
        for d in 0..20 {
            let _ = unpadded_phase_length(d);
        }
    }

    #[test]
    fn initializer_nine_choose_three_is_fixed_m_two() {
        let spec = initializer(9, 3).unwrap();
        assert_eq!(spec.m_low, 2);
        assert_eq!(spec.mix_q, Rational::one());
        assert_eq!(spec.p0, ratio(5, 12));
        assert_eq!(hang_failure(9, 3, 2), fall_failure(9, 3, 2));
    }

    #[test]
    fn initializer_majority_is_fixed_m_one() {
        for k in 1..=8u32 {
            let n = 2 * k - 1;
            let spec = initializer(n, k).unwrap();
            assert_eq!((spec.m_low, spec.mix_q.clone()), (1, Rational::one()), "k={k}");
            assert_eq!(spec.p0, ratio(k as i64 - 1, n as i64));
            assert_eq!(spec.p0, p0_majority(n).unwrap());
        }
    }

    #[test]
    fn initializer_four_of_four_mixes_zero_and_one() {
        let spec = initializer(4, 4).unwrap();
        assert_eq!(spec.m_low, 0);
        assert_eq!(spec.mix_q, ratio(3, 7));
        assert_eq!(spec.p0, ratio(3, 7));
        assert_eq!(spec.expected_m(), ratio(4, 7));
        assert!(spec.expected_m() >= ratio(1, 2));
    }

    #[test]
    fn initializer_formulas_match_subset_enumeration() {
        // brute-force F and G by walking every m-subset
        for n in 1..=9u32 {
            for k in 1..=n {
                for m in 0..=n {
                    let total = binom(n, m);
                    let mut hang = BigUint::zero();
                    let mut fall = BigUint::zero();
                    for mask in 0u32..1 << n {
                        if mask.count_ones() != m {
                            continue;
                        }
                        let min = mask.trailing_zeros() + 1; // 1-based min index
                        if m > 0 && min < k {
                            hang += BigUint::one();
                        }
                        if m == 0 || min > k {
                            fall += BigUint::one();
                        }
                    }
                    // m = 0: the empty word never hangs, always "falls" on k
                    assert_eq!(
                        hang_failure(n, k, m),
                        big_ratio(hang, total.clone()),
                        "F n={n} k={k} m={m}"
                    );
                    assert_eq!(
                        fall_failure(n, k, m),
                        big_ratio(fall, total),
                        "G n={n} k={k} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn initializer_balances_exactly_everywhere() {
        for n in 1..=30u32 {
            for k in 1..=n {
                let spec = initializer(n, k).unwrap();
                let q = &spec.mix_q;
                let one_q = Rational::one() - q;
                // fixed-m specs never draw m_low + 1 (which may not even exist)
                let (f, g) = if one_q.is_zero() {
                    (hang_failure(n, k, spec.m_low), fall_failure(n, k, spec.m_low))
                } else {
                    (
                        q * hang_failure(n, k, spec.m_low)
                            + &one_q * hang_failure(n, k, spec.m_low + 1),
                        q * fall_failure(n, k, spec.m_low)
                            + &one_q * fall_failure(n, k, spec.m_low + 1),
                    )
                };
                assert_eq!(f, g, "n={n} k={k}");
                assert_eq!(f, spec.p0, "n={n} k={k}");
                assert!(spec.p0 <= spec.p0_bound(), "n={n} k={k}");
                assert!(spec.expected_m() >= ratio(1, 2), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn ratio_lemma_identity_factorizes() {
        // 2p(1/2 − 3p² + 2p³) − 3(1/2 − p)(3p² − 2p³) = 2p(2 − p)(p − 1/2)²
        let half = ratio(1, 2);
        let two = ratio(2, 1);
        let three = ratio(3, 1);
        for i in 1..=1000i64 {
            let p = ratio(i, 2000);
            let step = p_step_exact(&p).unwrap();
            let lhs = &two * &p * (&half - &step) - &three * (&half - &p) * &step;
            let rhs = &two * &p * (&two - &p) * (&p - &half) * (&p - &half);
            assert_eq!(lhs, rhs, "p = {i}/2000");
        }
    }

    #[test]
    fn ratio_lemma_inequality_on_the_grid() {
        // (1/2 − p')/p' >= (3/2)·(1/2 − p)/p on (0, 1/2]
        let half = ratio(1, 2);
        let three_halves = ratio(3, 2);
        for i in 1..=1000i64 {
            let p = ratio(i, 2000);
            let step = p_step_exact(&p).unwrap();
            let lhs = (&half - &step) / &step;
            let rhs = &three_halves * (&half - &p) / &p;
            assert!(lhs >= rhs, "p = {i}/2000");
        }
    }

    #[test]
    fn squaring_lemma_on_the_grid() {
        // 3·p_step(p) <= (3p)² on [0, 1]
        let three = ratio(3, 1);
        for i in 0..=1000i64 {
            let p = ratio(i, 1000);
            let step = p_step_exact(&p).unwrap();
            let three_p = &three * &p;
            assert!(&three * &step <= &three_p * &three_p, "p = {i}/1000");
        }
    }

    #[test]
    fn distance_ratio_grows_by_three_halves_each_level() {
        // (1/2 − p_d)/p_d >= r₀·(3/2)^d: so p_d >= 1/4 forces (3/2)^d <= n
        let half = ratio(1, 2);
        for n in [3u32, 5, 9, 15] {
            let p0 = p0_majority(n).unwrap();
            let r0 = (&half - &p0) / &p0;
            let mut p = p0;
            let mut growth = Rational::one();
            for d in 0..10 {
                let r = (&half - &p) / &p;
                assert!(r >= &r0 * &growth, "n={n} d={d}");
                if p >= ratio(1, 4) {
                    // r <= 1 here, so (3/2)^d <= 1/r0 = n − 1 <= n
                    assert!(growth <= Rational::one() / &r0, "n={n} d={d}");
                }
                p = p_step_exact(&p).unwrap();
                growth *= ratio(3, 2);
            }
        }
    }
}
