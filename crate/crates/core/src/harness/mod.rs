//! Bounded, reproducible enumeration of game spaces, and the fixture
//! registry used by the verification sweeps.
//!
//! Spaces of bounded depth and branching get astronomically large, so
//! enumeration is budgeted: when the space fits under the budget's cap it is
//! walked exhaustively, otherwise a seeded uniform sample of distinct games
//! is drawn. Identical budget and seed always reproduce the identical
//! stream.

mod count;
pub mod fixtures;

pub use fixtures::{
    builtin_fixtures, run_fixture_suite, Fixture, FixtureClaim, FixtureReport, FixtureResult,
    FixtureSource,
};

use crate::game::Game;
use crate::normalplay::NormalGame;
use crate::score::Score;
use crate::universe::{embed, UniverseMode};
use count::LevelCounts;
use num_bigint::{BigUint, RandBigInt};
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::fmt;

/// One failed assertion in a verification sweep, with replayable notation.
#[derive(Debug, Clone)]
pub struct SweepViolation {
    pub description: String,
}

impl fmt::Display for SweepViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.description)
    }
}

/// Aggregated result of a verification sweep.
#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub checks: usize,
    pub violations: Vec<SweepViolation>,
    pub notes: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&mut self, description: String) {
        self.violations.push(SweepViolation { description });
    }

    pub fn merge(&mut self, other: SweepReport) {
        self.checks += other.checks;
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
    }

    /// Sorts violations so reports are order-independent.
    pub fn finish(mut self) -> SweepReport {
        self.violations
            .sort_by(|a, b| a.description.cmp(&b.description));
        self
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "checks={} violations={}",
            self.checks,
            self.violations.len()
        )?;
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        for v in &self.violations {
            writeln!(f, "violation: {v}")?;
        }
        Ok(())
    }
}

/// Bounds for a game-space sweep.
///
/// `max_depth` and `max_branching` (options per side, per node) bound the
/// tree shapes; node scores are drawn from `score_alphabet`. When the space
/// exceeds `max_games` the enumeration switches from exhaustive to a seeded
/// uniform sample of exactly `max_games` distinct games; `None` means
/// exhaustive regardless (only sensible for small spaces).
#[derive(Debug, Clone)]
pub struct EnumerationBudget {
    pub max_depth: usize,
    pub max_branching: usize,
    pub score_alphabet: Vec<Score>,
    pub max_games: Option<usize>,
    pub sample_seed: u64,
}

impl Default for EnumerationBudget {
    /// The default sweep budget: depth 3, branching 2, scores −2..2,
    /// sampled down to 300 games (pair sweeps stay under 10^5 pairs).
    fn default() -> EnumerationBudget {
        EnumerationBudget {
            max_depth: 3,
            max_branching: 2,
            score_alphabet: (-2..=2).map(Score::integer).collect(),
            max_games: Some(300),
            sample_seed: 0,
        }
    }
}

impl EnumerationBudget {
    pub fn with_depth(mut self, depth: usize) -> Self {
        self.max_depth = depth;
        self
    }

    pub fn with_branching(mut self, branching: usize) -> Self {
        self.max_branching = branching;
        self
    }

    pub fn with_scores(mut self, scores: Vec<Score>) -> Self {
        self.score_alphabet = scores;
        self
    }

    pub fn with_cap(mut self, cap: Option<usize>) -> Self {
        self.max_games = cap;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.sample_seed = seed;
        self
    }

    fn alphabet(&self) -> Vec<Score> {
        let mut a = self.score_alphabet.clone();
        a.sort();
        a.dedup();
        a
    }
}

/// Exact number of distinct games within the budget's shape bounds.
pub fn count_games(budget: &EnumerationBudget) -> BigUint {
    let alphabet = budget.alphabet();
    LevelCounts::new(alphabet.len(), budget.max_branching, budget.max_depth)
        .total()
        .clone()
}

/// Exact number of distinct universe members (equivalently, score-free
/// shapes) within the budget's shape bounds.
pub fn count_universe(budget: &EnumerationBudget) -> BigUint {
    LevelCounts::new(1, budget.max_branching, budget.max_depth)
        .total()
        .clone()
}

fn unrank_game(space: &LevelCounts, alphabet: &[Score], level: usize, index: &BigUint) -> Game {
    let (root, left, right) = space.decompose(level, index);
    let left_games = left
        .iter()
        .map(|i| unrank_game(space, alphabet, level - 1, i))
        .collect();
    let right_games = right
        .iter()
        .map(|i| unrank_game(space, alphabet, level - 1, i))
        .collect();
    Game::new(left_games, alphabet[root].clone(), right_games)
}

fn unrank_shape(space: &LevelCounts, level: usize, index: &BigUint) -> NormalGame {
    let (_, left, right) = space.decompose(level, index);
    let left_games = left
        .iter()
        .map(|i| unrank_shape(space, level - 1, i))
        .collect();
    let right_games = right
        .iter()
        .map(|i| unrank_shape(space, level - 1, i))
        .collect();
    NormalGame::new(left_games, right_games)
}

const EXHAUSTIVE_LIMIT: usize = 20_000_000;

fn index_plan(total: &BigUint, budget: &EnumerationBudget) -> Vec<BigUint> {
    let exhaustive = match (budget.max_games, total.to_usize()) {
        (None, Some(t)) if t <= EXHAUSTIVE_LIMIT => Some(t),
        (None, _) => panic!(
            "exhaustive enumeration of {total} games requested; set max_games to sample instead"
        ),
        (Some(cap), Some(t)) if t <= cap => Some(t),
        (Some(_), _) => None,
    };
    match exhaustive {
        Some(t) => (0..t).map(BigUint::from).collect(),
        None => {
            let cap = budget.max_games.expect("sampling requires a cap");
            let mut rng = ChaCha8Rng::seed_from_u64(budget.sample_seed);
            let mut seen: HashSet<BigUint> = HashSet::with_capacity(cap);
            while seen.len() < cap {
                seen.insert(rng.gen_biguint_below(total));
            }
            let mut indices: Vec<BigUint> = seen.into_iter().collect();
            indices.sort();
            indices
        }
    }
}

/// All (or a seeded sample of) distinct games within the budget, in
/// a deterministic order.
pub fn enumerate_games(budget: &EnumerationBudget) -> Vec<Game> {
    let alphabet = budget.alphabet();
    if alphabet.is_empty() {
        return Vec::new();
    }
    let space = LevelCounts::new(alphabet.len(), budget.max_branching, budget.max_depth);
    index_plan(space.total(), budget)
        .iter()
        .map(|i| unrank_game(&space, &alphabet, budget.max_depth, i))
        .collect()
}

/// Enumerates games satisfying `keep`, up to the budget's cap. In sampling
/// mode, draws are rejected until enough distinct passing games are found or
/// the attempt allowance runs out; the result is index-sorted either way.
pub fn enumerate_games_where(
    budget: &EnumerationBudget,
    mut keep: impl FnMut(&Game) -> bool,
) -> Vec<Game> {
    let alphabet = budget.alphabet();
    if alphabet.is_empty() {
        return Vec::new();
    }
    let space = LevelCounts::new(alphabet.len(), budget.max_branching, budget.max_depth);
    let total = space.total().clone();
    let exhaustive = match budget.max_games {
        None => true,
        Some(cap) => total <= BigUint::from(cap),
    };
    if exhaustive {
        let t = total
            .to_usize()
            .filter(|&t| t <= EXHAUSTIVE_LIMIT)
            .unwrap_or_else(|| {
                panic!("exhaustive filtered enumeration of {total} games; set max_games to sample")
            });
        return (0..t)
            .map(|i| unrank_game(&space, &alphabet, budget.max_depth, &BigUint::from(i)))
            .filter(|g| keep(g))
            .collect();
    }
    let cap = budget.max_games.expect("sampling requires a cap");
    let mut rng = ChaCha8Rng::seed_from_u64(budget.sample_seed);
    let mut seen: HashSet<BigUint> = HashSet::new();
    let mut kept: Vec<(BigUint, Game)> = Vec::with_capacity(cap);
    let attempts = cap.saturating_mul(20_000).clamp(500_000, 4_000_000);
    for _ in 0..attempts {
        if kept.len() >= cap {
            break;
        }
        let idx = rng.gen_biguint_below(&total);
        if !seen.insert(idx.clone()) {
            continue;
        }
        let g = unrank_game(&space, &alphabet, budget.max_depth, &idx);
        if keep(&g) {
            kept.push((idx, g));
        }
    }
    kept.sort_by(|a, b| a.0.cmp(&b.0));
    kept.into_iter().map(|(_, g)| g).collect()
}

/// All (or a seeded sample of) score-free shapes within the budget.
pub fn enumerate_shapes(budget: &EnumerationBudget) -> Vec<NormalGame> {
    let space = LevelCounts::new(1, budget.max_branching, budget.max_depth);
    index_plan(space.total(), budget)
        .iter()
        .map(|i| unrank_shape(&space, budget.max_depth, i))
        .collect()
}

/// Members of the chosen universe within the budget, generated by shape:
/// pick a tree, then impose the forced `±x` score deltas. Every yielded game
/// is a member by construction.
pub fn enumerate_universe(budget: &EnumerationBudget, x: &Score, mode: UniverseMode) -> Vec<Game> {
    enumerate_shapes(budget)
        .iter()
        .map(|shape| embed(shape, x, mode))
        .collect()
}

/// Every shape with at most `max_nodes` nodes (and the budget's depth and
/// branching bounds), smallest first. Distinguishing-context searches walk
/// this list before any sampled pool: separating contexts are usually tiny,
/// and a uniform sample of an astronomically large space misses them.
pub fn enumerate_shapes_by_size(budget: &EnumerationBudget, max_nodes: usize) -> Vec<NormalGame> {
    fn node_count(g: &NormalGame) -> usize {
        1 + g
            .left_options()
            .iter()
            .chain(g.right_options())
            .map(node_count)
            .sum::<usize>()
    }
    // option multisets (nondecreasing by structure) of up to `slots` shapes
    // totaling exactly `total` nodes
    fn option_lists(
        total: usize,
        slots: usize,
        floor: Option<&NormalGame>,
        by_size: &[Vec<NormalGame>],
        out: &mut Vec<Vec<NormalGame>>,
        current: &mut Vec<NormalGame>,
    ) {
        if total == 0 {
            out.push(current.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        for size in 1..=total {
            if size >= by_size.len() {
                break;
            }
            for shape in &by_size[size] {
                if floor.is_some_and(|f| shape < f) {
                    continue;
                }
                current.push(shape.clone());
                option_lists(
                    total - size,
                    slots - 1,
                    Some(shape),
                    by_size,
                    out,
                    current,
                );
                current.pop();
            }
        }
    }
    let mut by_size: Vec<Vec<NormalGame>> = vec![Vec::new(), vec![NormalGame::empty()]];
    for n in 2..=max_nodes {
        let mut batch = std::collections::BTreeSet::new();
        let budget_nodes = n - 1;
        for left_total in 0..=budget_nodes {
            let right_total = budget_nodes - left_total;
            let mut lefts = Vec::new();
            option_lists(
                left_total,
                budget.max_branching,
                None,
                &by_size,
                &mut lefts,
                &mut Vec::new(),
            );
            let mut rights = Vec::new();
            option_lists(
                right_total,
                budget.max_branching,
                None,
                &by_size,
                &mut rights,
                &mut Vec::new(),
            );
            for l in &lefts {
                for r in &rights {
                    let shape = NormalGame::new(l.clone(), r.clone());
                    if shape.depth() <= budget.max_depth {
                        batch.insert(shape);
                    }
                }
            }
        }
        by_size.push(batch.into_iter().collect());
    }
    let mut out = Vec::new();
    for batch in by_size {
        out.extend(batch);
    }
    debug_assert!(out.iter().all(|s| node_count(s) <= max_nodes));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_game;
    use crate::universe::in_universe;

    fn small_budget() -> EnumerationBudget {
        EnumerationBudget::default()
            .with_depth(1)
            .with_branching(1)
            .with_scores(vec![Score::integer(-1), Score::zero(), Score::integer(1)])
            .with_cap(None)
    }

    #[test]
    fn depth_one_count_matches_hand_construction() {
        // 3 leaves, 9 Left-only, 9 Right-only, 27 two-sided: 48 in all.
        let games = enumerate_games(&small_budget());
        assert_eq!(games.len(), 48);
        assert_eq!(count_games(&small_budget()), BigUint::from(48u32));
        let distinct: std::collections::HashSet<_> = games.iter().cloned().collect();
        assert_eq!(distinct.len(), 48);
        assert!(games.contains(&parse_game("0").unwrap()));
        assert!(games.contains(&parse_game("{1|-1|0}").unwrap()));
    }

    #[test]
    fn enumeration_is_reproducible() {
        let budget = EnumerationBudget::default().with_cap(Some(64)).with_seed(7);
        let a: Vec<String> = enumerate_games(&budget).iter().map(|g| g.to_string()).collect();
        let b: Vec<String> = enumerate_games(&budget).iter().map(|g| g.to_string()).collect();
        assert_eq!(a, b);
        let c: Vec<String> = enumerate_games(&budget.clone().with_seed(8))
            .iter()
            .map(|g| g.to_string())
            .collect();
        assert_ne!(a, c, "different seeds should sample differently");
    }

    #[test]
    fn sampling_respects_budget_bounds() {
        let budget = EnumerationBudget::default().with_cap(Some(50)).with_seed(3);
        let games = enumerate_games(&budget);
        assert_eq!(games.len(), 50);
        for g in &games {
            assert!(g.depth() <= 3);
        }
        let distinct: std::collections::HashSet<_> = games.iter().cloned().collect();
        assert_eq!(distinct.len(), 50);
    }

    #[test]
    fn filtered_enumeration_postcondition() {
        let budget = EnumerationBudget::default()
            .with_depth(2)
            .with_scores(vec![Score::integer(-1), Score::zero(), Score::integer(1)])
            .with_cap(Some(40))
            .with_seed(1);
        let tame_games = enumerate_games_where(&budget, |g| crate::tame::is_tame(g).is_tame);
        assert!(!tame_games.is_empty());
        for g in &tame_games {
            assert!(crate::tame::is_tame(g).is_tame, "generator leaked {g}");
        }
    }

    #[test]
    fn depth_one_universe_is_the_four_known_games() {
        let budget = EnumerationBudget::default()
            .with_depth(1)
            .with_branching(1)
            .with_cap(None);
        let members = enumerate_universe(&budget, &Score::integer(1), UniverseMode::Normal);
        let expected: Vec<Game> = ["0", "{1|0|.}", "{.|0|-1}", "{1|0|-1}"]
            .iter()
            .map(|s| parse_game(s).unwrap())
            .collect();
        assert_eq!(members.len(), 4);
        for e in &expected {
            assert!(members.contains(e), "missing {e}");
        }
        for m in &members {
            assert!(in_universe(m, &Score::integer(1), UniverseMode::Normal));
        }
    }

    #[test]
    fn universe_count_is_shape_count() {
        let budget = EnumerationBudget::default().with_depth(2).with_cap(None);
        assert_eq!(count_universe(&budget), BigUint::from(3025u32));
        let members = enumerate_universe(&budget, &Score::integer(1), UniverseMode::Normal);
        let shapes = enumerate_shapes(&budget);
        assert_eq!(members.len(), shapes.len());
        assert_eq!(members.len(), 3025);
    }
}
