use proptest::prelude::*;

use scoreplay::game::{make_game, negate, reverse, shift};
use scoreplay::lab::{identity_game, is_impartial, random_impartial, ImpartialParams};
use scoreplay::octal::find_period;
use scoreplay::ops::{eval_sum, sum};
use scoreplay::{final_scores, format_game, parse_game, FinalScores, GameId, OperatorKind, Score};

fn score() -> impl Strategy<Value = Score> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Score::new(n, d).unwrap())
}

fn game(depth: u32) -> impl Strategy<Value = GameId> {
    let leaf = score().prop_map(scoreplay::number);
    leaf.prop_recursive(depth, 24, 2, |inner| {
        (
            prop::collection::vec(inner.clone(), 0..=2),
            score(),
            prop::collection::vec(inner, 0..=2),
        )
            .prop_map(|(l, s, r)| make_game(&l, s, &r).unwrap())
    })
}

fn impartial() -> impl Strategy<Value = GameId> {
    (any::<u64>(), 1u32..=3).prop_map(|(seed, max_depth)| {
        random_impartial(&ImpartialParams {
            seed,
            max_depth,
            ..ImpartialParams::default()
        })
    })
}

fn op() -> impl Strategy<Value = OperatorKind> {
    prop::sample::select(OperatorKind::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn interning_ignores_option_order_and_repeats(
        l in prop::collection::vec(game(2), 0..=3),
        s in score(),
        r in prop::collection::vec(game(2), 0..=3),
    ) {
        let a = make_game(&l, s, &r).unwrap();
        let mut l2: Vec<GameId> = l.iter().rev().copied().collect();
        l2.extend(l.first());
        let b = make_game(&l2, s, &r).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn involutions(g in game(3), c in score()) {
        prop_assert_eq!(negate(negate(g)), g);
        prop_assert_eq!(reverse(reverse(g)), g);
        prop_assert_eq!(shift(shift(g, c), -c), g);
    }

    #[test]
    fn negation_swaps_and_negates_final_scores(g in game(3)) {
        let f = final_scores(g);
        prop_assert_eq!(final_scores(negate(g)), FinalScores::new(-f.right_first, -f.left_first));
    }

    #[test]
    fn shift_moves_final_scores(g in game(3), c in score()) {
        prop_assert_eq!(final_scores(shift(g, c)), final_scores(g).shifted(c));
    }

    #[test]
    fn notation_round_trip(g in game(4)) {
        prop_assert_eq!(parse_game(&format_game(g)).unwrap(), g);
    }

    #[test]
    fn search_matches_materialized_sum(a in game(2), b in game(2), op in op()) {
        let tree = sum(op, &[a, b]).unwrap();
        prop_assert_eq!(eval_sum(op, &[a, b]).unwrap(), final_scores(tree));
    }

    #[test]
    fn commutative_operators_commute(a in game(2), b in game(2), op in op()) {
        prop_assume!(op.is_commutative());
        prop_assert_eq!(eval_sum(op, &[a, b]).unwrap(), eval_sum(op, &[b, a]).unwrap());
    }

    #[test]
    fn operators_associate(a in game(2), b in game(1), c in game(1), op in op()) {
        let left = sum(op, &[sum(op, &[a, b]).unwrap(), c]).unwrap();
        let right = sum(op, &[a, sum(op, &[b, c]).unwrap()]).unwrap();
        let flat = eval_sum(op, &[a, b, c]).unwrap();
        prop_assert_eq!(final_scores(left), flat);
        prop_assert_eq!(final_scores(right), flat);
    }

    #[test]
    fn sequential_identity(g in game(4)) {
        let i = identity_game();
        let f = final_scores(g);
        prop_assert_eq!(eval_sum(OperatorKind::Sequential, &[i, g]).unwrap(), f);
        prop_assert_eq!(eval_sum(OperatorKind::Sequential, &[g, i]).unwrap(), f);
    }

    #[test]
    fn impartial_final_scores_are_symmetric(g in impartial()) {
        prop_assert!(is_impartial(g));
        let f = final_scores(g);
        prop_assert_eq!(f.left_first + f.right_first, g.score().scale(2));
    }

    #[test]
    fn impartial_conjunctive_sums_add(g in impartial(), h in impartial()) {
        let f = eval_sum(OperatorKind::Conjunctive, &[g, h]).unwrap();
        prop_assert_eq!(f, final_scores(g) + final_scores(h));
    }

    #[test]
    fn score_text_round_trip(s in score()) {
        prop_assert_eq!(s.to_string().parse::<Score>().unwrap(), s);
        let json = serde_json::to_string(&s).unwrap();
        prop_assert_eq!(serde_json::from_str::<Score>(&json).unwrap(), s);
    }

    #[test]
    fn detected_periods_hold_and_are_minimal(
        v in prop::collection::vec(0i64..3, 1..40),
        min_confirm in 1usize..6,
    ) {
        let table: Vec<Score> = v.iter().map(|x| Score::integer(*x)).collect();
        let len = table.len();
        let holds = |n0: usize, p: usize| (n0..len - p).all(|n| table[n + p] == table[n]);
        match find_period(&table, min_confirm) {
            Some(r) => {
                prop_assert!(holds(r.preperiod, r.period));
                prop_assert_eq!(r.confirmations, len - r.period - r.preperiod);
                prop_assert!(r.confirmations >= min_confirm);
                for p in 1..=r.period {
                    for n0 in 0..len - p {
                        if (p, n0) >= (r.period, r.preperiod) {
                            break;
                        }
                        prop_assert!(!(holds(n0, p) && len - p - n0 >= min_confirm));
                    }
                }
            }
            None => {
                for p in 1..len {
                    prop_assert!(!(holds(0, p) && len - p >= min_confirm));
                }
            }
        }
    }
}
