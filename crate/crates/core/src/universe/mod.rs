//! The score-shifted universes `Tame_x` and `Tame_-x`.
//!
//! Fix a rational `x > 0`. A game lies in `Tame_x` when its root score is 0
//! and, recursively, every Left move adds exactly `x` to the score while
//! every Right move subtracts exactly `x`. In `Tame_-x` the signs flip:
//! each player's own move costs `x`. Scores are then pure bookkeeping for
//! parity — who moved last — which makes `Tame_x` isomorphic to normal play
//! and `Tame_-x` to misère play. The isomorphisms are the score-erasing maps
//! [`strip`] and their inverse [`embed`].
//!
//! On `Tame_x` the module carries the full order theory: `>=_x` transported
//! through the normal-play oracle, domination/reversibility canonical forms
//! computed natively on scoring trees, numbers, and surreal-number
//! generation by day. On `Tame_-x` only membership, embedding, outcome
//! search and the nonzero-game search are supported; misère canonical
//! theory is out of scope.

mod verify;

pub use verify::{
    misere_coverage, misere_nonzero_search, verify_final_score_law, verify_group,
    verify_misere_nonzero, verify_order_consistency, verify_table2, MisereCoverage,
};

use crate::game::{Game, OutcomeClass, Player};
use crate::normalplay::{NormalContext, NormalGame};
use crate::score::Score;
use crate::util::FastMap;

/// Which sign convention the universe uses for the per-move score delta.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UniverseMode {
    /// `Tame_x`: Left edges add `x`, Right edges subtract `x`.
    Normal,
    /// `Tame_-x`: Left edges subtract `x`, Right edges add `x`.
    Misere,
}

impl UniverseMode {
    /// Score deltas `(Left edge, Right edge)`.
    fn deltas(self, x: &Score) -> (Score, Score) {
        match self {
            UniverseMode::Normal => (x.clone(), -x),
            UniverseMode::Misere => (-x, x.clone()),
        }
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum UniverseError {
    #[error("universe parameter x must be strictly positive, got {0}")]
    NonPositiveX(Score),
    #[error("not a universe member: {0}")]
    NotMember(String),
    #[error("expected a nonzero universe member, got the zero game")]
    ZeroGame,
    #[error("day {requested} exceeds the surreal generation cap {cap}")]
    DayCapExceeded { requested: usize, cap: usize },
    #[error("no universe member has outcome class P; the outcome table has no P row")]
    PClassRow,
}

fn require_positive(x: &Score) -> Result<(), UniverseError> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(UniverseError::NonPositiveX(x.clone()))
    }
}

fn require_member(g: &Game, x: &Score, mode: UniverseMode) -> Result<(), UniverseError> {
    require_positive(x)?;
    if in_universe(g, x, mode) {
        Ok(())
    } else {
        Err(UniverseError::NotMember(g.to_string()))
    }
}

/// Membership test: root score 0 and the mode's `±x` delta on every edge.
/// Subtrees validate relative to their parent, so only the root carries the
/// absolute constraint.
pub fn in_universe(g: &Game, x: &Score, mode: UniverseMode) -> bool {
    x.is_positive() && g.score().is_zero() && deltas_hold(g, x, mode)
}

/// The edge-delta part of membership, independent of the root's absolute
/// score. A disjunctive sum's edges are exactly its components' edges, so
/// `sum(g, h)` is a member iff both components satisfy this and the root
/// scores cancel.
pub(crate) fn deltas_hold(g: &Game, x: &Score, mode: UniverseMode) -> bool {
    fn rec(
        g: &Game,
        left_delta: &Score,
        right_delta: &Score,
        memo: &mut FastMap<usize, bool>,
    ) -> bool {
        if let Some(&hit) = memo.get(&g.key()) {
            return hit;
        }
        let want_left = g.score() + left_delta;
        let want_right = g.score() + right_delta;
        let ok = g
            .left_options()
            .iter()
            .all(|o| o.score() == &want_left && rec(o, left_delta, right_delta, memo))
            && g.right_options()
                .iter()
                .all(|o| o.score() == &want_right && rec(o, left_delta, right_delta, memo));
        memo.insert(g.key(), ok);
        ok
    }
    let (left_delta, right_delta) = mode.deltas(x);
    rec(g, &left_delta, &right_delta, &mut FastMap::default())
}

/// Structure-preserving embedding of a score-free game: root score 0, `±x`
/// deltas pushed down the edges per the mode. Inverse of [`strip`].
pub fn embed(shape: &NormalGame, x: &Score, mode: UniverseMode) -> Game {
    fn rec(
        shape: &NormalGame,
        base: &Score,
        left_delta: &Score,
        right_delta: &Score,
        memo: &mut FastMap<(usize, Score), Game>,
    ) -> Game {
        let key = (shape.key(), base.clone());
        if let Some(hit) = memo.get(&key) {
            return hit.clone();
        }
        let left_base = base + left_delta;
        let right_base = base + right_delta;
        let left = shape
            .left_options()
            .iter()
            .map(|o| rec(o, &left_base, left_delta, right_delta, memo))
            .collect();
        let right = shape
            .right_options()
            .iter()
            .map(|o| rec(o, &right_base, left_delta, right_delta, memo))
            .collect();
        let out = Game::new(left, base.clone(), right);
        memo.insert(key, out.clone());
        out
    }
    assert!(x.is_positive(), "universe parameter x must be positive");
    let (left_delta, right_delta) = mode.deltas(x);
    rec(
        shape,
        &Score::zero(),
        &left_delta,
        &right_delta,
        &mut FastMap::default(),
    )
}

/// Forgets all scores, keeping the shape. Only defined on universe members —
/// that is where the resulting normal or misère game means anything.
pub fn strip(g: &Game, x: &Score, mode: UniverseMode) -> Result<NormalGame, UniverseError> {
    require_member(g, x, mode)?;
    Ok(strip_unchecked(g))
}

pub(crate) fn strip_unchecked(g: &Game) -> NormalGame {
    fn rec(g: &Game, memo: &mut FastMap<usize, NormalGame>) -> NormalGame {
        if let Some(hit) = memo.get(&g.key()) {
            return hit.clone();
        }
        let left = g.left_options().iter().map(|o| rec(o, memo)).collect();
        let right = g.right_options().iter().map(|o| rec(o, memo)).collect();
        let out = NormalGame::new(left, right);
        memo.insert(g.key(), out.clone());
        out
    }
    rec(g, &mut FastMap::default())
}

/// Memo-sharing context for the order/canonical operations on `Tame_x`.
pub struct TameXContext {
    x: Score,
    pub oracle: NormalContext,
    strips: FastMap<Game, NormalGame>,
    canon: FastMap<Game, Game>,
    numbers: FastMap<Game, bool>,
}

impl TameXContext {
    pub fn new(x: &Score) -> TameXContext {
        assert!(x.is_positive(), "universe parameter x must be positive");
        TameXContext {
            x: x.clone(),
            oracle: NormalContext::new(),
            strips: FastMap::default(),
            canon: FastMap::default(),
            numbers: FastMap::default(),
        }
    }

    pub fn x(&self) -> &Score {
        &self.x
    }

    fn strip_cached(&mut self, g: &Game) -> NormalGame {
        if let Some(hit) = self.strips.get(g) {
            return hit.clone();
        }
        let s = strip_unchecked(g);
        self.strips.insert(g.clone(), s.clone());
        s
    }

    /// `g >=_x h` for root-0 members: the context-quantified order,
    /// realized through the normal-play oracle on the stripped shapes.
    pub fn geq(&mut self, g: &Game, h: &Game) -> bool {
        let sg = self.strip_cached(g);
        let sh = self.strip_cached(h);
        self.oracle.geq(&sg, &sh)
    }

    /// Translates a Left option (root `+x`) back to a root-0 member.
    fn left_rebased(&self, option: &Game) -> Game {
        option.translate(&-&self.x)
    }

    /// Translates a Right option (root `-x`) back to a root-0 member.
    fn right_rebased(&self, option: &Game) -> Game {
        option.translate(&self.x)
    }

    /// Canonical form computed natively on the scoring tree: recursively
    /// canonicalize options, then repeatedly bypass reversible options and
    /// delete dominated ones, rescoring options so the result stays in the
    /// universe. Idempotent; `=_x`-equivalent to the input.
    pub fn canonical(&mut self, g: &Game) -> Game {
        if let Some(hit) = self.canon.get(g) {
            return hit.clone();
        }
        let x = self.x.clone();
        let mut left: Vec<Game> = g
            .left_options()
            .iter()
            .map(|a| {
                let canon = self.canonical(&self.left_rebased(a));
                canon.translate(&x)
            })
            .collect();
        let mut right: Vec<Game> = g
            .right_options()
            .iter()
            .map(|d| {
                let canon = self.canonical(&self.right_rebased(d));
                canon.translate(&-&x)
            })
            .collect();
        loop {
            let current = Game::new(left.clone(), Score::zero(), right.clone());
            // A Left option A (root +x) reverses out through a Right reply
            // A^R (root 0) with A^R <=_x G; A is replaced by A^R's Left
            // options, which already carry root +x.
            if let Some((i, via)) = self.find_reversible(&left, &current, Player::Left) {
                left.remove(i);
                left.extend(via.left_options().iter().cloned());
                continue;
            }
            if let Some((i, via)) = self.find_reversible(&right, &current, Player::Right) {
                right.remove(i);
                right.extend(via.right_options().iter().cloned());
                continue;
            }
            if self.remove_dominated(&mut left, Player::Left)
                || self.remove_dominated(&mut right, Player::Right)
            {
                continue;
            }
            break;
        }
        let out = Game::new(left, Score::zero(), right);
        self.canon.insert(g.clone(), out.clone());
        out
    }

    fn find_reversible(
        &mut self,
        options: &[Game],
        current: &Game,
        side: Player,
    ) -> Option<(usize, Game)> {
        for (i, option) in options.iter().enumerate() {
            for reply in option.options(side.opponent()) {
                // The reply's root is back at 0: directly comparable.
                let reverses = match side {
                    Player::Left => self.geq(current, reply),
                    Player::Right => self.geq(reply, current),
                };
                if reverses {
                    return Some((i, reply.clone()));
                }
            }
        }
        None
    }

    fn remove_dominated(&mut self, options: &mut Vec<Game>, side: Player) -> bool {
        let rebased: Vec<Game> = options
            .iter()
            .map(|o| match side {
                Player::Left => self.left_rebased(o),
                Player::Right => self.right_rebased(o),
            })
            .collect();
        let n = options.len();
        let mut keep = vec![true; n];
        for i in 0..n {
            if !keep[i] {
                continue;
            }
            for j in (i + 1)..n {
                if !keep[j] {
                    continue;
                }
                let i_covers_j = match side {
                    Player::Left => self.geq(&rebased[i], &rebased[j]),
                    Player::Right => self.geq(&rebased[j], &rebased[i]),
                };
                if i_covers_j {
                    keep[j] = false;
                    continue;
                }
                let j_covers_i = match side {
                    Player::Left => self.geq(&rebased[j], &rebased[i]),
                    Player::Right => self.geq(&rebased[i], &rebased[j]),
                };
                if j_covers_i {
                    keep[i] = false;
                    break;
                }
            }
        }
        if keep.iter().all(|&k| k) {
            return false;
        }
        let mut idx = 0;
        options.retain(|_| {
            idx += 1;
            keep[idx - 1]
        });
        true
    }

    /// A member is a number when no Left option is `>=_x` any Right option,
    /// options compared after rebasing to root 0, and all options are
    /// recursively numbers.
    pub fn is_number(&mut self, g: &Game) -> bool {
        if let Some(&hit) = self.numbers.get(g) {
            return hit;
        }
        let lefts: Vec<Game> = g.left_options().iter().map(|a| self.left_rebased(a)).collect();
        let rights: Vec<Game> = g
            .right_options()
            .iter()
            .map(|d| self.right_rebased(d))
            .collect();
        let mut ok = true;
        'outer: for l in &lefts {
            for r in &rights {
                if self.geq(l, r) {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if ok {
            ok = lefts.iter().chain(rights.iter()).all(|o| self.is_number(o));
        }
        self.numbers.insert(g.clone(), ok);
        ok
    }
}

/// `g >=_x h`: does `h + X` in a favorable-to-Left outcome set imply
/// `g + X` in it, over all contexts `X` in the universe? Decided without
/// context search by transport through the normal-play order.
pub fn geq_x(g: &Game, h: &Game, x: &Score) -> Result<bool, UniverseError> {
    require_member(g, x, UniverseMode::Normal)?;
    require_member(h, x, UniverseMode::Normal)?;
    Ok(TameXContext::new(x).geq(g, h))
}

/// `g <=_x h`, equivalent to `geq_x(h, g, x)`.
pub fn leq_x(g: &Game, h: &Game, x: &Score) -> Result<bool, UniverseError> {
    geq_x(h, g, x)
}

/// Canonical form of a `Tame_x` member: no dominated options, no reversible
/// options, options recursively canonical.
pub fn canonical_form_x(g: &Game, x: &Score) -> Result<Game, UniverseError> {
    require_member(g, x, UniverseMode::Normal)?;
    Ok(TameXContext::new(x).canonical(g))
}

/// Number test for a `Tame_x` member.
pub fn is_number(g: &Game, x: &Score) -> Result<bool, UniverseError> {
    require_member(g, x, UniverseMode::Normal)?;
    Ok(TameXContext::new(x).is_number(g))
}

/// Default cap on [`surreal_day`]: the candidate space doubles per value per
/// day, so day 4 already means billions of candidates.
pub const SURREAL_DAY_CAP: usize = 3;

/// All numbers born by day `n` in `Tame_x`, as canonical representatives in
/// a deterministic order. Day 0 yields `{0}`; each later day draws option
/// sets from the previously born values.
pub fn surreal_day(n: usize, x: &Score) -> Result<Vec<Game>, UniverseError> {
    surreal_day_capped(n, x, SURREAL_DAY_CAP)
}

pub fn surreal_day_capped(n: usize, x: &Score, cap: usize) -> Result<Vec<Game>, UniverseError> {
    require_positive(x)?;
    if n > cap {
        return Err(UniverseError::DayCapExceeded { requested: n, cap });
    }
    let mut ctx = TameXContext::new(x);
    let mut values: Vec<Game> = vec![Game::zero()];
    for _ in 0..n {
        let prev = values.clone();
        let mut born: std::collections::BTreeSet<Game> = values.into_iter().collect();
        let shifted_left: Vec<Game> = prev.iter().map(|v| v.translate(x)).collect();
        let shifted_right: Vec<Game> = prev.iter().map(|v| v.translate(&-x)).collect();
        for left_mask in 0u32..(1 << prev.len()) {
            for right_mask in 0u32..(1 << prev.len()) {
                let left: Vec<Game> = (0..prev.len())
                    .filter(|i| left_mask & (1 << i) != 0)
                    .map(|i| shifted_left[i].clone())
                    .collect();
                let right: Vec<Game> = (0..prev.len())
                    .filter(|i| right_mask & (1 << i) != 0)
                    .map(|i| shifted_right[i].clone())
                    .collect();
                let candidate = Game::new(left, Score::zero(), right);
                if ctx.is_number(&candidate) {
                    born.insert(ctx.canonical(&candidate));
                }
            }
        }
        values = born.into_iter().collect();
    }
    Ok(values)
}

use OutcomeClass::{Ti, L, N, R};

/// Allowed outcome classes for a sum of two `Tame_x` members, by component
/// class. Symmetric; tie members are exact identities. There is no `P` row:
/// no member has class `P`, since Left's final score is never negative.
pub fn table2_cell(
    a: OutcomeClass,
    b: OutcomeClass,
) -> Result<&'static [OutcomeClass], UniverseError> {
    if a == OutcomeClass::P || b == OutcomeClass::P {
        return Err(UniverseError::PClassRow);
    }
    Ok(match (a.min(b), a.max(b)) {
        (Ti, Ti) => &[Ti],
        (L, Ti) => &[L],
        (R, Ti) => &[R],
        (N, Ti) => &[N],
        (L, L) => &[L],
        (R, R) => &[R],
        (L, N) => &[L, N],
        (R, N) => &[R, N],
        (L, R) | (N, N) => &[L, R, N, Ti],
        _ => unreachable!("P filtered above and pairs normalized"),
    })
}
