//! Property tests for the algebraic laws the engine relies on.

use proptest::prelude::*;
use scoring_games::game::{Game, OutcomeClass, Player};
use scoring_games::harness::{enumerate_games, EnumerationBudget};
use scoring_games::normalplay::{normal_outcome, NormalContext, NormalGame};
use scoring_games::score::Score;
use scoring_games::universe::{embed, in_universe, strip, UniverseMode};
use scoring_games::{parse_game, tame};

fn score_strategy() -> impl Strategy<Value = Score> {
    prop_oneof![
        (-2i64..=2).prop_map(Score::integer),
        Just(Score::new(1, 2)),
        Just(Score::new(-1, 2)),
    ]
}

fn game_strategy() -> impl Strategy<Value = Game> {
    let leaf = score_strategy().prop_map(Game::leaf);
    leaf.prop_recursive(3, 24, 2, |inner| {
        (
            prop::collection::vec(inner.clone(), 0..=2),
            score_strategy(),
            prop::collection::vec(inner, 0..=2),
        )
            .prop_map(|(l, s, r)| Game::new(l, s, r))
    })
}

fn shape_strategy() -> impl Strategy<Value = NormalGame> {
    let leaf = Just(NormalGame::empty()).boxed();
    leaf.prop_recursive(3, 16, 2, |inner| {
        (
            prop::collection::vec(inner.clone(), 0..=2),
            prop::collection::vec(inner, 0..=2),
        )
            .prop_map(|(l, r)| NormalGame::new(l, r))
            .boxed()
    })
}

/// Scores of positions at which play can legally end (some player stuck).
fn stoppable_scores(g: &Game, out: &mut Vec<Score>) {
    if g.left_options().is_empty() || g.right_options().is_empty() {
        out.push(g.score().clone());
    }
    for o in g.left_options().iter().chain(g.right_options()) {
        stoppable_scores(o, out);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(192))]

    #[test]
    fn negation_is_an_involution(g in game_strategy()) {
        prop_assert_eq!(g.negate().negate(), g);
    }

    #[test]
    fn negation_mirrors_final_scores(g in game_strategy()) {
        let fs = g.final_scores();
        let neg = g.negate().final_scores();
        prop_assert_eq!(&neg.left_first, &-&fs.right_first);
        prop_assert_eq!(&neg.right_first, &-&fs.left_first);
        let mirrored = match g.outcome().class {
            OutcomeClass::L => OutcomeClass::R,
            OutcomeClass::R => OutcomeClass::L,
            other => other,
        };
        prop_assert_eq!(g.negate().outcome().class, mirrored);
    }

    #[test]
    fn sum_commutes_and_associates(a in game_strategy(), b in game_strategy(), c in game_strategy()) {
        prop_assert_eq!(a.sum(&b), b.sum(&a));
        prop_assert_eq!(a.sum(&b).sum(&c), a.sum(&b.sum(&c)));
    }

    #[test]
    fn sum_root_score_adds(a in game_strategy(), b in game_strategy()) {
        let total = a.sum(&b);
        prop_assert_eq!(total.score(), &(a.score() + b.score()));
    }

    #[test]
    fn notation_round_trips(g in game_strategy()) {
        prop_assert_eq!(parse_game(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn final_scores_are_realized_at_stoppable_positions(g in game_strategy()) {
        let fs = g.final_scores();
        let mut scores = Vec::new();
        stoppable_scores(&g, &mut scores);
        prop_assert!(scores.contains(&fs.left_first));
        prop_assert!(scores.contains(&fs.right_first));
    }

    #[test]
    fn pairwise_sum_outcome_matches_materialized(a in game_strategy(), b in game_strategy()) {
        let direct = a.sum(&b).outcome();
        let pairwise = a.outcome_of_sum(&b);
        prop_assert_eq!(direct, pairwise);
    }

    #[test]
    fn tameness_is_negation_symmetric(g in game_strategy()) {
        prop_assert_eq!(tame::is_tame(&g).is_tame, tame::is_tame(&g.negate()).is_tame);
    }

    #[test]
    fn normal_order_recursion_matches_sum_route(a in shape_strategy(), b in shape_strategy()) {
        let mut ctx = NormalContext::new();
        let direct = ctx.geq(&a, &b);
        let via_sum = !normal_outcome(&a.sum(&b.negate()), Player::Right);
        prop_assert_eq!(direct, via_sum);
    }

    #[test]
    fn normal_canonical_preserves_value(a in shape_strategy()) {
        let mut ctx = NormalContext::new();
        let c = ctx.canonical(&a);
        prop_assert!(ctx.geq(&a, &c) && ctx.geq(&c, &a));
        prop_assert_eq!(ctx.canonical(&c.clone()), c);
    }

    #[test]
    fn normal_sum_with_negative_is_second_player_win(a in shape_strategy()) {
        let z = a.sum(&a.negate());
        prop_assert!(!normal_outcome(&z, Player::Left));
        prop_assert!(!normal_outcome(&z, Player::Right));
    }

    #[test]
    fn embed_then_strip_is_identity(shape in shape_strategy()) {
        for mode in [UniverseMode::Normal, UniverseMode::Misere] {
            let x = Score::integer(1);
            let member = embed(&shape, &x, mode);
            prop_assert!(in_universe(&member, &x, mode));
            prop_assert_eq!(&strip(&member, &x, mode).unwrap(), &shape);
            // Members of the Left-gains universe are tame.
            if mode == UniverseMode::Normal {
                prop_assert!(tame::is_tame(&member).is_tame);
            }
        }
    }

    #[test]
    fn strip_is_a_sum_homomorphism(a in shape_strategy(), b in shape_strategy()) {
        let x = Score::new(1, 2);
        let (ga, gb) = (embed(&a, &x, UniverseMode::Normal), embed(&b, &x, UniverseMode::Normal));
        let stripped = strip(&ga.sum(&gb), &x, UniverseMode::Normal).unwrap();
        prop_assert_eq!(stripped, a.sum(&b));
    }

    #[test]
    fn universe_order_swaps_sides(a in shape_strategy(), b in shape_strategy()) {
        let x = Score::integer(1);
        let (ga, gb) = (embed(&a, &x, UniverseMode::Normal), embed(&b, &x, UniverseMode::Normal));
        let geq = scoring_games::universe::geq_x(&ga, &gb, &x).unwrap();
        let leq = scoring_games::universe::leq_x(&gb, &ga, &x).unwrap();
        prop_assert_eq!(geq, leq);
    }
}

#[test]
fn enumeration_streams_are_deterministic() {
    let budget = EnumerationBudget::default().with_cap(Some(120)).with_seed(42);
    let a: Vec<String> = enumerate_games(&budget).iter().map(|g| g.to_string()).collect();
    let b: Vec<String> = enumerate_games(&budget).iter().map(|g| g.to_string()).collect();
    assert_eq!(a, b);
}
