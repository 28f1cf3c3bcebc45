//! Property tests for the word algebra and its interplay with quotients.

use hangnail_core::word::{Generator, Letter, NailState, Word, WordExpr};
use proptest::prelude::*;

const RANK: u32 = 6;

fn letter_strategy(rank: u32) -> impl Strategy<Value = Letter> {
    (1..=rank, any::<bool>()).prop_map(|(i, pos)| {
        let g = Generator::new(i).unwrap();
        if pos {
            Letter::positive(g)
        } else {
            Letter::negative(g)
        }
    })
}

fn letters_strategy(rank: u32) -> impl Strategy<Value = Vec<Letter>> {
    proptest::collection::vec(letter_strategy(rank), 0..60)
}

fn word_strategy(rank: u32) -> impl Strategy<Value = Word> {
    letters_strategy(rank).prop_map(move |ls| Word::reduce(rank, ls).unwrap())
}

fn state_strategy(rank: u32) -> impl Strategy<Value = NailState> {
    (0..1u64 << rank).prop_map(move |m| NailState::from_mask(rank, m).unwrap())
}

fn expr_strategy(rank: u32) -> impl Strategy<Value = WordExpr> {
    let leaf = prop_oneof![
        letter_strategy(rank).prop_map(move |l| WordExpr::letter(rank, l).unwrap()),
        Just(WordExpr::identity(rank)),
    ];
    leaf.prop_recursive(4, 64, 4, move |inner| {
        prop_oneof![
            proptest::collection::vec(inner.clone(), 1..4)
                .prop_map(|parts| WordExpr::concat(parts).unwrap()),
            inner.clone().prop_map(WordExpr::inverse),
            (inner, -3i64..=3).prop_map(|(e, k)| e.pow(k)),
        ]
    })
}

proptest! {
    #[test]
    fn reduce_is_idempotent(ls in letters_strategy(RANK)) {
        let once = Word::reduce(RANK, ls).unwrap();
        let twice = Word::reduce(RANK, once.letters()).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn reduction_shrinks_by_even_steps(ls in letters_strategy(RANK)) {
        let n = ls.len();
        let w = Word::reduce(RANK, ls).unwrap();
        prop_assert!(w.len() <= n);
        prop_assert_eq!((n - w.len()) % 2, 0);
    }

    #[test]
    fn inverse_cancels(w in word_strategy(RANK)) {
        prop_assert!(w.concat(&w.inverse()).unwrap().is_identity());
        prop_assert!(w.inverse().concat(&w).unwrap().is_identity());
        prop_assert_eq!(w.inverse().inverse(), w.clone());
        prop_assert_eq!(w.inverse().len(), w.len());
    }

    #[test]
    fn concat_is_associative(
        a in word_strategy(RANK),
        b in word_strategy(RANK),
        c in word_strategy(RANK),
    ) {
        let left = a.concat(&b).unwrap().concat(&c).unwrap();
        let right = a.concat(&b.concat(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn identity_is_neutral(w in word_strategy(RANK)) {
        let e = Word::identity(RANK);
        prop_assert_eq!(w.concat(&e).unwrap(), w.clone());
        prop_assert_eq!(e.concat(&w).unwrap(), w);
    }

    #[test]
    fn power_agrees_with_repeated_concat(w in word_strategy(RANK), e in 0i64..5) {
        let mut acc = Word::identity(RANK);
        for _ in 0..e {
            acc = acc.concat(&w).unwrap();
        }
        prop_assert_eq!(w.power(e), acc);
        prop_assert_eq!(w.power(-e), w.power(e).inverse());
    }

    #[test]
    fn quotient_is_a_homomorphism(
        u in word_strategy(RANK),
        v in word_strategy(RANK),
        s in state_strategy(RANK),
    ) {
        let lhs = u.concat(&v).unwrap().quotient(&s).unwrap();
        let rhs = u.quotient(&s).unwrap().concat(&v.quotient(&s).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quotient_factors_through_supersets(
        w in word_strategy(RANK),
        s in state_strategy(RANK),
        t in state_strategy(RANK),
    ) {
        // force s ⊆ t
        let s = NailState::from_mask(RANK, s.mask() & t.mask()).unwrap();
        let direct = w.quotient(&s).unwrap();
        let via_t = w.quotient(&t).unwrap().quotient(&s).unwrap();
        prop_assert_eq!(&direct, &via_t);
        // hanging monotonicity: nontrivial on s implies nontrivial on t
        if !direct.is_identity() {
            prop_assert!(!w.quotient(&t).unwrap().is_identity());
        }
    }

    #[test]
    fn quotient_extremes(w in word_strategy(RANK)) {
        prop_assert_eq!(w.quotient(&NailState::full(RANK).unwrap()).unwrap(), w.clone());
        prop_assert!(w.quotient(&NailState::empty(RANK).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn occurrences_sum_to_length(w in word_strategy(RANK)) {
        let total: usize = (1..=RANK)
            .map(|i| {
                let (p, n) = w.occurrences(Generator::new(i).unwrap());
                p + n
            })
            .sum();
        prop_assert_eq!(total, w.len());
    }

    #[test]
    fn written_length_dominates_reduced(e in expr_strategy(RANK)) {
        let flat = e.flatten();
        prop_assert!(e.written_length() >= flat.len() as u64);
        // parity is preserved by cancellation
        prop_assert_eq!(e.written_length() % 2, flat.len() as u64 % 2);
    }

    #[test]
    fn flatten_respects_group_structure(e in expr_strategy(RANK)) {
        // the inverse node flattens to the group inverse
        let flat = e.flatten();
        prop_assert_eq!(e.clone().inverse().flatten(), flat.inverse());
        // squaring: expr power agrees with word concat
        prop_assert_eq!(e.clone().pow(2).flatten(), flat.concat(&flat).unwrap());
    }

    #[test]
    fn expr_quotient_matches_word_quotient(e in expr_strategy(RANK), s in state_strategy(RANK)) {
        prop_assert_eq!(
            e.quotient(&s).unwrap(),
            e.flatten().quotient(&s).unwrap()
        );
    }
}

#[test]
fn values_are_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<Word>();
    assert_send_sync::<WordExpr>();
    assert_send_sync::<NailState>();
    assert_send_sync::<hangnail_core::monotone::MonotoneFn>();
    assert_send_sync::<hangnail_core::verify::VerifyReport>();
}

mod minimal_sets_round_trip {
    use super::*;
    use hangnail_core::monotone::{Formula, MonotoneFn};

    fn formula_strategy(rank: u32) -> impl Strategy<Value = Formula> {
        let leaf = (1..=rank).prop_map(|i| Formula::var(i).unwrap());
        leaf.prop_recursive(3, 24, 3, |inner| {
            prop_oneof![
                proptest::collection::vec(inner.clone(), 2..4).prop_map(Formula::And),
                proptest::collection::vec(inner, 2..4).prop_map(Formula::Or),
            ]
        })
    }

    proptest! {
        #[test]
        fn rebuilding_from_minimal_sets_is_extensionally_equal(f in formula_strategy(5)) {
            let f = MonotoneFn::from_formula(5, f).unwrap();
            let sets = f.minimal_true_sets().unwrap();
            let rebuilt = MonotoneFn::from_minimal_sets(5, sets).unwrap();
            for mask in 0u64..32 {
                let s = NailState::from_mask(5, mask).unwrap();
                prop_assert_eq!(f.evaluate(&s).unwrap(), rebuilt.evaluate(&s).unwrap());
            }
        }
    }
}
