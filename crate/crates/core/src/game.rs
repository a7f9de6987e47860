//! Scoring-play game trees and the operations on them.
//!
//! A [`Game`] is a finite tree: a set of Left options, a rational score, and
//! a set of Right options. Option lists are multisets kept in a canonical
//! sorted order, so structural identity (`==`, written `≅` in the docs) is
//! decidable by direct comparison. Values are immutable and `Arc`-backed;
//! subtrees are shared freely, and sums are built as DAGs so repeated
//! subpositions are represented once.

use crate::score::Score;
use crate::util::FastMap;
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// One of the two players. Left maximizes the score, Right minimizes it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Player {
    Left,
    Right,
}

impl Player {
    #[inline]
    pub const fn opponent(self) -> Player {
        match self {
            Player::Left => Player::Right,
            Player::Right => Player::Left,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Left => write!(f, "Left"),
            Player::Right => write!(f, "Right"),
        }
    }
}

struct Node {
    hash: u64,
    depth: u32,
    score: Score,
    left: Vec<Game>,
    right: Vec<Game>,
}

/// A scoring-play game tree.
#[derive(Clone)]
pub struct Game(Arc<Node>);

impl Game {
    /// Leaf game `{.|s|.}`.
    pub fn leaf(score: Score) -> Game {
        Game::new(Vec::new(), score, Vec::new())
    }

    /// The zero game `{.|0|.}`.
    pub fn zero() -> Game {
        Game::leaf(Score::zero())
    }

    /// Builds a game from its options and score. Option lists are sorted
    /// into canonical order; duplicates are kept (options are multisets).
    pub fn new(mut left: Vec<Game>, score: Score, mut right: Vec<Game>) -> Game {
        left.sort_unstable();
        right.sort_unstable();
        let depth = left
            .iter()
            .chain(right.iter())
            .map(|g| g.0.depth + 1)
            .max()
            .unwrap_or(0);
        let hash = {
            let mut h = rustc_hash::FxHasher::default();
            score.hash(&mut h);
            h.write_u8(0x4c);
            for g in &left {
                h.write_u64(g.0.hash);
            }
            h.write_u8(0x52);
            for g in &right {
                h.write_u64(g.0.hash);
            }
            h.finish()
        };
        Game(Arc::new(Node {
            hash,
            depth,
            score,
            left,
            right,
        }))
    }

    pub fn score(&self) -> &Score {
        &self.0.score
    }

    pub fn left_options(&self) -> &[Game] {
        &self.0.left
    }

    pub fn right_options(&self) -> &[Game] {
        &self.0.right
    }

    pub fn options(&self, player: Player) -> &[Game] {
        match player {
            Player::Left => &self.0.left,
            Player::Right => &self.0.right,
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.0.left.is_empty() && self.0.right.is_empty()
    }

    /// Height of the tree: a leaf has depth 0.
    pub fn depth(&self) -> usize {
        self.0.depth as usize
    }

    /// Address-based identity for per-call memo tables. Two equal keys are
    /// the same object; distinct keys may still be structurally equal, which
    /// only costs a cache miss.
    pub(crate) fn key(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    /// Number of distinct subpositions (shared subtrees counted once).
    pub fn distinct_positions(&self) -> usize {
        fn walk(g: &Game, seen: &mut crate::util::FastSet<usize>) {
            if seen.insert(g.key()) {
                for o in g.left_options().iter().chain(g.right_options()) {
                    walk(o, seen);
                }
            }
        }
        let mut seen = crate::util::FastSet::default();
        walk(self, &mut seen);
        seen.len()
    }

    /// The negative `-G`: swaps the players' options and negates every
    /// score, recursively.
    pub fn negate(&self) -> Game {
        fn rec(g: &Game, memo: &mut FastMap<usize, Game>) -> Game {
            if let Some(hit) = memo.get(&g.key()) {
                return hit.clone();
            }
            let left = g.right_options().iter().map(|o| rec(o, memo)).collect();
            let right = g.left_options().iter().map(|o| rec(o, memo)).collect();
            let out = Game::new(left, -g.score(), right);
            memo.insert(g.key(), out.clone());
            out
        }
        rec(self, &mut FastMap::default())
    }

    /// Adds `delta` to every node score, preserving shape.
    pub fn translate(&self, delta: &Score) -> Game {
        fn rec(g: &Game, delta: &Score, memo: &mut FastMap<usize, Game>) -> Game {
            if let Some(hit) = memo.get(&g.key()) {
                return hit.clone();
            }
            let left = g.left_options().iter().map(|o| rec(o, delta, memo)).collect();
            let right = g
                .right_options()
                .iter()
                .map(|o| rec(o, delta, memo))
                .collect();
            let out = Game::new(left, g.score() + delta, right);
            memo.insert(g.key(), out.clone());
            out
        }
        if delta.is_zero() {
            return self.clone();
        }
        rec(self, delta, &mut FastMap::default())
    }

    /// Disjunctive sum: the mover picks one component and moves in it;
    /// scores add. The result shares repeated subpositions, so its
    /// representation stays near `|G|·|H|` nodes.
    pub fn sum(&self, other: &Game) -> Game {
        fn rec(g: &Game, h: &Game, memo: &mut FastMap<(usize, usize), Game>) -> Game {
            let key = (g.key(), h.key());
            if let Some(hit) = memo.get(&key) {
                return hit.clone();
            }
            let mut left = Vec::with_capacity(g.left_options().len() + h.left_options().len());
            for gl in g.left_options() {
                left.push(rec(gl, h, memo));
            }
            for hl in h.left_options() {
                left.push(rec(g, hl, memo));
            }
            let mut right = Vec::with_capacity(g.right_options().len() + h.right_options().len());
            for gr in g.right_options() {
                right.push(rec(gr, h, memo));
            }
            for hr in h.right_options() {
                right.push(rec(g, hr, memo));
            }
            let out = Game::new(left, g.score() + h.score(), right);
            memo.insert(key, out.clone());
            out
        }
        rec(self, other, &mut FastMap::default())
    }

    /// Optimal final scores for both starting players.
    pub fn final_scores(&self) -> FinalScores {
        let mut memo = FastMap::default();
        let (ls, ll) = play_value(self, Player::Left, &mut memo);
        let (rs, rl) = play_value(self, Player::Right, &mut memo);
        FinalScores {
            left_first: ls,
            left_first_last_mover: ll,
            right_first: rs,
            right_first_last_mover: rl,
        }
    }

    /// Final scores, signs and outcome class.
    pub fn outcome(&self) -> OutcomeReport {
        OutcomeReport::from_finals(self.final_scores())
    }

    /// Outcome of `G + H` computed over pairs of component positions,
    /// without materializing the sum tree. Agrees exactly with
    /// `g.sum(h).outcome()`.
    pub fn outcome_of_sum(&self, other: &Game) -> OutcomeReport {
        let mut memo = FastMap::default();
        let (ls, ll) = pair_value(self, other, Player::Left, &mut memo);
        let (rs, rl) = pair_value(self, other, Player::Right, &mut memo);
        OutcomeReport::from_finals(FinalScores {
            left_first: ls,
            left_first_last_mover: ll,
            right_first: rs,
            right_first_last_mover: rl,
        })
    }
}

impl PartialEq for Game {
    fn eq(&self, other: &Game) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.hash != other.0.hash || self.0.depth != other.0.depth {
            return false;
        }
        self.0.score == other.0.score && self.0.left == other.0.left && self.0.right == other.0.right
    }
}

impl Eq for Game {}

impl Hash for Game {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl PartialOrd for Game {
    fn partial_cmp(&self, other: &Game) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Game {
    /// Canonical structural order: by score, then Left options, then Right
    /// options, lists compared lexicographically. Used to normalize option
    /// multisets so `≅` is order-insensitive.
    fn cmp(&self, other: &Game) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0
            .score
            .cmp(&other.0.score)
            .then_with(|| self.0.left.cmp(&other.0.left))
            .then_with(|| self.0.right.cmp(&other.0.right))
    }
}

impl fmt::Debug for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Plays out `game` with `to_move` to move, both players optimal.
/// Returns the terminal score and the last mover within this subline
/// (`None` when `to_move` is stuck immediately).
///
/// Tie-breaking among equally scoring options: prefer a line on which the
/// mover makes the last move, then the structurally smallest option. This
/// pins the last-mover flags and mirrors the way winning-by-moving-last
/// strategies are played out.
fn play_value(
    game: &Game,
    to_move: Player,
    memo: &mut FastMap<(usize, Player), (Score, Option<Player>)>,
) -> (Score, Option<Player>) {
    let key = (game.key(), to_move);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let opts = game.options(to_move);
    let result = if opts.is_empty() {
        (game.score().clone(), None)
    } else {
        let mut best: Option<(Score, Player)> = None;
        for option in opts {
            let (score, sub_last) = play_value(option, to_move.opponent(), memo);
            let line_last = sub_last.unwrap_or(to_move);
            let replace = match &best {
                None => true,
                Some((best_score, best_last)) => {
                    let better = match to_move {
                        Player::Left => score > *best_score,
                        Player::Right => score < *best_score,
                    };
                    better || (score == *best_score && *best_last != to_move && line_last == to_move)
                }
            };
            if replace {
                best = Some((score, line_last));
            }
        }
        let (score, last) = best.expect("non-empty options");
        (score, Some(last))
    };
    memo.insert(key, result.clone());
    result
}

/// `play_value` over a pair of components, i.e. on the disjunctive sum
/// without building it.
fn pair_value(
    g: &Game,
    h: &Game,
    to_move: Player,
    memo: &mut FastMap<(usize, usize, Player), (Score, Option<Player>)>,
) -> (Score, Option<Player>) {
    let key = (g.key(), h.key(), to_move);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let g_opts = g.options(to_move);
    let h_opts = h.options(to_move);
    let result = if g_opts.is_empty() && h_opts.is_empty() {
        (g.score() + h.score(), None)
    } else {
        let mut best: Option<(Score, Player)> = None;
        let opponent = to_move.opponent();
        let consider = |score: Score, sub_last: Option<Player>, best: &mut Option<(Score, Player)>| {
            let line_last = sub_last.unwrap_or(to_move);
            let replace = match best {
                None => true,
                Some((best_score, best_last)) => {
                    let better = match to_move {
                        Player::Left => score > *best_score,
                        Player::Right => score < *best_score,
                    };
                    better || (score == *best_score && *best_last != to_move && line_last == to_move)
                }
            };
            if replace {
                *best = Some((score, line_last));
            }
        };
        for option in g_opts {
            let (score, sub_last) = pair_value(option, h, opponent, memo);
            consider(score, sub_last, &mut best);
        }
        for option in h_opts {
            let (score, sub_last) = pair_value(g, option, opponent, memo);
            consider(score, sub_last, &mut best);
        }
        let (score, last) = best.expect("non-empty options");
        (score, Some(last))
    };
    memo.insert(key, result.clone());
    result
}

/// Optimal terminal scores for both starting players, with the last mover
/// on each optimal line. A `None` last mover means the starting player was
/// stuck at the root and no move was made; the reported score is then the
/// root score.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinalScores {
    pub left_first: Score,
    pub left_first_last_mover: Option<Player>,
    pub right_first: Score,
    pub right_first_last_mover: Option<Player>,
}

/// Outcome classes of scoring games.
///
/// `L` — Left wins regardless of who starts; `R` — Right wins; `N` — the
/// first player wins; `P` — the second player wins; `Ti` — both optimal
/// final scores are zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OutcomeClass {
    L,
    R,
    N,
    P,
    Ti,
}

impl OutcomeClass {
    pub const ALL: [OutcomeClass; 5] = [
        OutcomeClass::L,
        OutcomeClass::R,
        OutcomeClass::N,
        OutcomeClass::P,
        OutcomeClass::Ti,
    ];
}

impl fmt::Display for OutcomeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutcomeClass::L => write!(f, "L"),
            OutcomeClass::R => write!(f, "R"),
            OutcomeClass::N => write!(f, "N"),
            OutcomeClass::P => write!(f, "P"),
            OutcomeClass::Ti => write!(f, "ti"),
        }
    }
}

impl std::str::FromStr for OutcomeClass {
    type Err = String;
    fn from_str(s: &str) -> Result<OutcomeClass, String> {
        match s {
            "L" => Ok(OutcomeClass::L),
            "R" => Ok(OutcomeClass::R),
            "N" => Ok(OutcomeClass::N),
            "P" => Ok(OutcomeClass::P),
            "ti" | "Ti" | "TI" => Ok(OutcomeClass::Ti),
            other => Err(format!("unknown outcome class {other:?}")),
        }
    }
}

/// Final scores plus their signs and the unique outcome class they select.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeReport {
    pub finals: FinalScores,
    pub left_sign: Ordering,
    pub right_sign: Ordering,
    pub class: OutcomeClass,
}

impl OutcomeReport {
    pub fn from_finals(finals: FinalScores) -> OutcomeReport {
        let left_sign = finals.left_first.sign();
        let right_sign = finals.right_first.sign();
        let class = match (left_sign, right_sign) {
            (Ordering::Greater, Ordering::Less) => OutcomeClass::N,
            (Ordering::Less, Ordering::Greater) => OutcomeClass::P,
            (Ordering::Equal, Ordering::Equal) => OutcomeClass::Ti,
            (Ordering::Greater, _) | (Ordering::Equal, Ordering::Greater) => OutcomeClass::L,
            (Ordering::Less, _) | (Ordering::Equal, Ordering::Less) => OutcomeClass::R,
        };
        OutcomeReport {
            left_sign,
            right_sign,
            class,
            finals,
        }
    }
}

/// Verdict of a bounded distinguishing-context search.
#[derive(Debug, Clone)]
pub enum BoundedVerdict {
    /// A context `X` on which the two games have different outcomes.
    Distinguished {
        context: Game,
        lhs_class: OutcomeClass,
        rhs_class: OutcomeClass,
        contexts_tried: usize,
    },
    /// No separating context exists within the budget. This says nothing
    /// about contexts outside the budget.
    IndistinguishableWithinBudget { contexts_tried: usize },
}

impl BoundedVerdict {
    pub fn distinguished(&self) -> bool {
        matches!(self, BoundedVerdict::Distinguished { .. })
    }
}

/// Searches `contexts` for an `X` with `outcome(g + X) != outcome(h + X)`.
pub fn distinguish_with<I>(g: &Game, h: &Game, contexts: I) -> BoundedVerdict
where
    I: IntoIterator<Item = Game>,
{
    let mut tried = 0;
    for context in contexts {
        tried += 1;
        let cg = g.outcome_of_sum(&context).class;
        let ch = h.outcome_of_sum(&context).class;
        if cg != ch {
            return BoundedVerdict::Distinguished {
                context,
                lhs_class: cg,
                rhs_class: ch,
                contexts_tried: tried,
            };
        }
    }
    BoundedVerdict::IndistinguishableWithinBudget { contexts_tried: tried }
}

/// Bounded falsifier for game equality: equality quantifies over *all*
/// contexts, which no finite search can decide, so this either produces a
/// distinguishing context from the budgeted enumeration or reports that the
/// games are indistinguishable within the budget.
pub fn equal_bounded(
    g: &Game,
    h: &Game,
    budget: &crate::harness::EnumerationBudget,
) -> BoundedVerdict {
    distinguish_with(g, h, crate::harness::enumerate_games(budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_game;

    fn g(s: &str) -> Game {
        parse_game(s).unwrap()
    }

    #[test]
    fn leaf_final_scores_report_stuck_root() {
        let fs = g("5").final_scores();
        assert_eq!(fs.left_first, Score::integer(5));
        assert_eq!(fs.left_first_last_mover, None);
        assert_eq!(fs.right_first, Score::integer(5));
        assert_eq!(fs.right_first_last_mover, None);
    }

    #[test]
    fn one_ply_minimax() {
        let fs = g("{1|0|-1}").final_scores();
        assert_eq!(fs.left_first, Score::integer(1));
        assert_eq!(fs.left_first_last_mover, Some(Player::Left));
        assert_eq!(fs.right_first, Score::integer(-1));
        assert_eq!(fs.right_first_last_mover, Some(Player::Right));
    }

    #[test]
    fn outcome_classification() {
        assert_eq!(g("0").outcome().class, OutcomeClass::Ti);
        assert_eq!(g("{1|0|-1}").outcome().class, OutcomeClass::N);
        assert_eq!(g("3").outcome().class, OutcomeClass::L);
        assert_eq!(g("-1/2").outcome().class, OutcomeClass::R);
        assert_eq!(g("{3|4|2}").outcome().class, OutcomeClass::L);
    }

    #[test]
    fn negate_examples() {
        assert_eq!(g("0").negate(), g("0"));
        assert_eq!(g("{1|0|-1}").negate(), g("{1|0|-1}"));
        assert_eq!(g("{2|0|-1}").negate(), g("{1|0|-2}"));
        assert_eq!(g("{1|0|-2}").negate(), g("{2|0|-1}"));
    }

    #[test]
    fn sum_with_leaf_translates() {
        assert_eq!(g("1").sum(&g("0")), g("1"));
        assert_eq!(g("{1|0|.}").sum(&g("2")), g("{3|2|.}"));
    }

    #[test]
    fn sum_expansion_by_hand() {
        // {1|0|.} + {.|0|-1} expands move by move.
        let s = g("{1|0|.}").sum(&g("{.|0|-1}"));
        assert_eq!(s, g("{{.|1|0}|0|{0|-1|.}}"));
    }

    #[test]
    fn sum_root_score_adds() {
        let a = g("{3|4|2}");
        let b = g("{1|0|-1}");
        assert_eq!(a.sum(&b).score(), &(a.score() + b.score()));
    }

    #[test]
    fn mixed_n_games_sum_to_first_player_win() {
        let s = g("{2|0|-2}").sum(&g("{1|0|-1}"));
        let fs = s.final_scores();
        assert!(fs.left_first.is_positive());
        assert!(fs.right_first.is_negative());
        assert_eq!(s.outcome().class, OutcomeClass::N);
    }

    #[test]
    fn equal_n_games_sum_to_tie() {
        let s = g("{1|0|-1}").sum(&g("{1|0|-1}"));
        assert_eq!(s.outcome().class, OutcomeClass::Ti);
    }

    #[test]
    fn positive_n_games_sum_to_left_win() {
        let s = g("{2|0|-1}").sum(&g("{2|0|-1}"));
        assert_eq!(s.outcome().class, OutcomeClass::L);
    }

    #[test]
    fn pairwise_outcome_matches_materialized_sum() {
        let games = [
            g("0"),
            g("{1|0|-1}"),
            g("{2|0|.}"),
            g("{.|0|-1}"),
            g("{{.|0|-1}|0|{1|0|.}}"),
            g("{1/2|0|-1/2}"),
            g("{1,{2|1|.}|0|.}"),
        ];
        for a in &games {
            for b in &games {
                let direct = a.sum(b).outcome();
                let pairwise = a.outcome_of_sum(b);
                assert_eq!(direct, pairwise, "mismatch for {a} + {b}");
            }
        }
    }

    #[test]
    fn options_are_sorted_multisets() {
        let g1 = Game::new(
            vec![g("1"), g("0")],
            Score::zero(),
            vec![g("{.|0|-1}"), g("-2")],
        );
        let g2 = Game::new(
            vec![g("0"), g("1")],
            Score::zero(),
            vec![g("-2"), g("{.|0|-1}")],
        );
        assert_eq!(g1, g2);
        // Duplicates are preserved.
        let dup = Game::new(vec![g("1"), g("1")], Score::zero(), vec![]);
        assert_eq!(dup.left_options().len(), 2);
    }

    #[test]
    fn distinguishing_trivial_games() {
        let budget = crate::harness::EnumerationBudget {
            max_depth: 1,
            max_branching: 1,
            score_alphabet: vec![Score::zero(), Score::integer(1)],
            max_games: Some(50),
            sample_seed: 0,
        };
        assert!(equal_bounded(&g("0"), &g("0"), &budget)
            .distinguished()
            .eq(&false));
        match equal_bounded(&g("1"), &g("0"), &budget) {
            BoundedVerdict::Distinguished { context, .. } => {
                assert_eq!(context, g("0"), "first context already separates");
            }
            other => panic!("expected a distinguishing context, got {other:?}"),
        }
    }
}
