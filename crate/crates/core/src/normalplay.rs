//! Score-free games under the normal and misère play conventions.
//!
//! This is the oracle side of the score-shifted universes: outcomes under
//! both conventions, the normal-play partial order, and normal-play
//! canonical forms (domination and reversibility). Only what the embeddings
//! consume is implemented — no temperature theory, no misère canonical
//! forms.

use crate::game::Player;
use crate::util::FastMap;
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

struct NNode {
    hash: u64,
    depth: u32,
    left: Vec<NormalGame>,
    right: Vec<NormalGame>,
}

/// A finite score-free game tree with canonically ordered option multisets.
#[derive(Clone)]
pub struct NormalGame(Arc<NNode>);

impl NormalGame {
    /// The empty game `{|}` (no moves for either player).
    pub fn empty() -> NormalGame {
        NormalGame::new(Vec::new(), Vec::new())
    }

    /// `* = {0|0}`.
    pub fn star() -> NormalGame {
        NormalGame::new(vec![NormalGame::empty()], vec![NormalGame::empty()])
    }

    pub fn new(mut left: Vec<NormalGame>, mut right: Vec<NormalGame>) -> NormalGame {
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
        NormalGame(Arc::new(NNode {
            hash,
            depth,
            left,
            right,
        }))
    }

    pub fn left_options(&self) -> &[NormalGame] {
        &self.0.left
    }

    pub fn right_options(&self) -> &[NormalGame] {
        &self.0.right
    }

    pub fn options(&self, player: Player) -> &[NormalGame] {
        match player {
            Player::Left => &self.0.left,
            Player::Right => &self.0.right,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.left.is_empty() && self.0.right.is_empty()
    }

    /// Address-based identity for per-call memo tables.
    pub(crate) fn key(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn depth(&self) -> usize {
        self.0.depth as usize
    }

    pub fn negate(&self) -> NormalGame {
        fn rec(g: &NormalGame, memo: &mut FastMap<usize, NormalGame>) -> NormalGame {
            let key = Arc::as_ptr(&g.0) as usize;
            if let Some(hit) = memo.get(&key) {
                return hit.clone();
            }
            let left = g.right_options().iter().map(|o| rec(o, memo)).collect();
            let right = g.left_options().iter().map(|o| rec(o, memo)).collect();
            let out = NormalGame::new(left, right);
            memo.insert(key, out.clone());
            out
        }
        rec(self, &mut FastMap::default())
    }

    /// Disjunctive sum, with shared subpositions.
    pub fn sum(&self, other: &NormalGame) -> NormalGame {
        fn rec(
            g: &NormalGame,
            h: &NormalGame,
            memo: &mut FastMap<(usize, usize), NormalGame>,
        ) -> NormalGame {
            let key = (Arc::as_ptr(&g.0) as usize, Arc::as_ptr(&h.0) as usize);
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
            let out = NormalGame::new(left, right);
            memo.insert(key, out.clone());
            out
        }
        rec(self, other, &mut FastMap::default())
    }
}

impl PartialEq for NormalGame {
    fn eq(&self, other: &NormalGame) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.hash != other.0.hash || self.0.depth != other.0.depth {
            return false;
        }
        self.0.left == other.0.left && self.0.right == other.0.right
    }
}

impl Eq for NormalGame {}

impl Hash for NormalGame {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl PartialOrd for NormalGame {
    fn partial_cmp(&self, other: &NormalGame) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NormalGame {
    fn cmp(&self, other: &NormalGame) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0
            .left
            .cmp(&other.0.left)
            .then_with(|| self.0.right.cmp(&other.0.right))
    }
}

impl fmt::Display for NormalGame {
    /// `{L|R}` notation with `.` for an empty side, e.g. `{.|.}` for the
    /// empty game and `{{.|.}|{.|.}}` for `*`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn side(f: &mut fmt::Formatter<'_>, opts: &[NormalGame]) -> fmt::Result {
            if opts.is_empty() {
                return write!(f, ".");
            }
            for (i, g) in opts.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{g}")?;
            }
            Ok(())
        }
        write!(f, "{{")?;
        side(f, &self.0.left)?;
        write!(f, "|")?;
        side(f, &self.0.right)?;
        write!(f, "}}")
    }
}

impl fmt::Debug for NormalGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Shared memo tables for the oracle. One context per sweep keeps repeated
/// queries cheap; results are independent of the context used.
#[derive(Default)]
pub struct NormalContext {
    normal: FastMap<(NormalGame, Player), bool>,
    misere: FastMap<(NormalGame, Player), bool>,
    geq: FastMap<(NormalGame, NormalGame), bool>,
    canonical: FastMap<NormalGame, NormalGame>,
}

impl NormalContext {
    pub fn new() -> NormalContext {
        NormalContext::default()
    }

    /// Normal play: the mover wins iff some option hands the opponent a
    /// losing position; a stuck mover loses.
    pub fn normal_wins(&mut self, game: &NormalGame, mover: Player) -> bool {
        let key = (game.clone(), mover);
        if let Some(&hit) = self.normal.get(&key) {
            return hit;
        }
        let result = game
            .options(mover)
            .iter()
            .any(|o| !self.normal_wins(o, mover.opponent()));
        self.normal.insert(key, result);
        result
    }

    /// Misère play: a stuck mover wins; otherwise the mover wins iff some
    /// option hands the opponent a losing position.
    pub fn misere_wins(&mut self, game: &NormalGame, mover: Player) -> bool {
        let key = (game.clone(), mover);
        if let Some(&hit) = self.misere.get(&key) {
            return hit;
        }
        let opts = game.options(mover);
        let result =
            opts.is_empty() || opts.iter().any(|o| !self.misere_wins(o, mover.opponent()));
        self.misere.insert(key, result);
        result
    }

    /// Normal-play partial order: `g >= h` iff Right moving first on
    /// `g + (-h)` loses. Decided by the equivalent recursion
    /// `g >= h  iff  no g^R <= h and no h^L >= g`;
    /// the sum form is exercised against it in the tests.
    pub fn geq(&mut self, g: &NormalGame, h: &NormalGame) -> bool {
        let key = (g.clone(), h.clone());
        if let Some(&hit) = self.geq.get(&key) {
            return hit;
        }
        let result = g.right_options().iter().all(|gr| !self.geq(h, gr))
            && h.left_options().iter().all(|hl| !self.geq(hl, g));
        self.geq.insert(key, result);
        result
    }

    pub fn equivalent(&mut self, g: &NormalGame, h: &NormalGame) -> bool {
        self.geq(g, h) && self.geq(h, g)
    }

    /// The unique simplest form: no dominated options, no reversible
    /// options, options recursively canonical.
    pub fn canonical(&mut self, game: &NormalGame) -> NormalGame {
        if let Some(hit) = self.canonical.get(game) {
            return hit.clone();
        }
        let mut left: Vec<NormalGame> = game
            .left_options()
            .iter()
            .map(|o| self.canonical(o))
            .collect();
        let mut right: Vec<NormalGame> = game
            .right_options()
            .iter()
            .map(|o| self.canonical(o))
            .collect();
        loop {
            let current = NormalGame::new(left.clone(), right.clone());
            // Bypass a reversible Left option: A with some A^R <= current.
            if let Some((i, via)) = find_reversible(self, &left, &current, Player::Left) {
                left.remove(i);
                left.extend(via.left_options().iter().cloned());
                continue;
            }
            // Mirror for Right: D with some D^L >= current.
            if let Some((i, via)) = find_reversible(self, &right, &current, Player::Right) {
                right.remove(i);
                right.extend(via.right_options().iter().cloned());
                continue;
            }
            if remove_dominated(self, &mut left, Player::Left)
                || remove_dominated(self, &mut right, Player::Right)
            {
                continue;
            }
            break;
        }
        let out = NormalGame::new(left, right);
        self.canonical.insert(game.clone(), out.clone());
        out
    }
}

fn find_reversible(
    ctx: &mut NormalContext,
    options: &[NormalGame],
    current: &NormalGame,
    side: Player,
) -> Option<(usize, NormalGame)> {
    for (i, option) in options.iter().enumerate() {
        for reply in option.options(side.opponent()) {
            let reverses = match side {
                Player::Left => ctx.geq(current, reply),
                Player::Right => ctx.geq(reply, current),
            };
            if reverses {
                return Some((i, reply.clone()));
            }
        }
    }
    None
}

fn remove_dominated(ctx: &mut NormalContext, options: &mut Vec<NormalGame>, side: Player) -> bool {
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
            let (a, b) = (&options[i], &options[j]);
            let i_covers_j = match side {
                Player::Left => ctx.geq(a, b),
                Player::Right => ctx.geq(b, a),
            };
            if i_covers_j {
                keep[j] = false;
                continue;
            }
            let j_covers_i = match side {
                Player::Left => ctx.geq(b, a),
                Player::Right => ctx.geq(a, b),
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

/// Whether `mover` wins `game` under normal play (last player to move wins).
pub fn normal_outcome(game: &NormalGame, mover: Player) -> bool {
    NormalContext::new().normal_wins(game, mover)
}

/// Whether `mover` wins `game` under misère play (last player to move loses).
pub fn misere_outcome(game: &NormalGame, mover: Player) -> bool {
    NormalContext::new().misere_wins(game, mover)
}

/// Normal-play `g >= h`.
pub fn normal_geq(g: &NormalGame, h: &NormalGame) -> bool {
    NormalContext::new().geq(g, h)
}

/// Normal-play canonical form.
pub fn normal_canonical(game: &NormalGame) -> NormalGame {
    NormalContext::new().canonical(game)
}

/// The misère adjoint `G°`. `G + G°` is always a second-player win under
/// misère play, which makes adjoints good distinguishing contexts.
pub fn adjoint(game: &NormalGame) -> NormalGame {
    if game.is_empty() {
        return NormalGame::star();
    }
    let left_from_right: Vec<NormalGame> = game.right_options().iter().map(adjoint).collect();
    let right_from_left: Vec<NormalGame> = game.left_options().iter().map(adjoint).collect();
    if game.left_options().is_empty() {
        NormalGame::new(left_from_right, vec![NormalGame::empty()])
    } else if game.right_options().is_empty() {
        NormalGame::new(vec![NormalGame::empty()], right_from_left)
    } else {
        NormalGame::new(left_from_right, right_from_left)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> NormalGame {
        NormalGame::new(vec![NormalGame::empty()], vec![])
    }

    fn minus_one() -> NormalGame {
        NormalGame::new(vec![], vec![NormalGame::empty()])
    }

    /// Brute-force order decision straight from the definition used in the
    /// implementation's contract: `g >= h` iff Right moving first on
    /// `g + (-h)` loses.
    fn geq_by_sum(g: &NormalGame, h: &NormalGame) -> bool {
        !normal_outcome(&g.sum(&h.negate()), Player::Right)
    }

    #[test]
    fn stuck_mover_loses_normal_play() {
        assert!(!normal_outcome(&NormalGame::empty(), Player::Left));
        assert!(!normal_outcome(&NormalGame::empty(), Player::Right));
        assert!(normal_outcome(&one(), Player::Left));
        assert!(!normal_outcome(&one(), Player::Right));
        assert!(normal_outcome(&NormalGame::star(), Player::Left));
        assert!(normal_outcome(&NormalGame::star(), Player::Right));
    }

    #[test]
    fn stuck_mover_wins_misere_play() {
        assert!(misere_outcome(&NormalGame::empty(), Player::Left));
        assert!(misere_outcome(&NormalGame::empty(), Player::Right));
        // Forced move hands the opponent a stuck (winning) position.
        assert!(!misere_outcome(&NormalGame::star(), Player::Left));
        assert!(!misere_outcome(&NormalGame::star(), Player::Right));
        assert!(misere_outcome(&one(), Player::Right));
    }

    #[test]
    fn order_basics() {
        let zero = NormalGame::empty();
        let star = NormalGame::star();
        assert!(normal_geq(&one(), &zero));
        assert!(!normal_geq(&zero, &one()));
        assert!(!normal_geq(&star, &zero));
        assert!(!normal_geq(&zero, &star));
        for g in [&zero, &one(), &minus_one(), &star] {
            assert!(normal_geq(g, g), "reflexivity failed for {g}");
        }
    }

    #[test]
    fn recursion_matches_sum_definition() {
        let pool = [
            NormalGame::empty(),
            one(),
            minus_one(),
            NormalGame::star(),
            NormalGame::new(vec![NormalGame::empty(), one()], vec![]),
            NormalGame::new(vec![NormalGame::star()], vec![one()]),
            NormalGame::new(vec![minus_one()], vec![NormalGame::star()]),
        ];
        for g in &pool {
            for h in &pool {
                assert_eq!(normal_geq(g, h), geq_by_sum(g, h), "g={g} h={h}");
            }
        }
    }

    #[test]
    fn dominated_option_is_deleted() {
        let g = NormalGame::new(vec![NormalGame::empty(), one()], vec![]);
        assert_eq!(normal_canonical(&g), NormalGame::new(vec![one()], vec![]));
    }

    #[test]
    fn canonical_is_idempotent_and_value_preserving() {
        let mut ctx = NormalContext::new();
        let pool = [
            NormalGame::empty(),
            NormalGame::star(),
            NormalGame::new(vec![NormalGame::empty(), one()], vec![]),
            NormalGame::new(vec![NormalGame::star(), one()], vec![minus_one()]),
            NormalGame::new(
                vec![NormalGame::star()],
                vec![NormalGame::star(), NormalGame::empty()],
            ),
        ];
        for g in &pool {
            let c = ctx.canonical(g);
            let c2 = ctx.canonical(&c);
            assert_eq!(c, c2, "not idempotent for {g}");
            assert!(ctx.geq(g, &c) && ctx.geq(&c, g), "value changed for {g}");
        }
        // {*|*} reverses out to the empty game.
        let star_star = NormalGame::new(vec![NormalGame::star()], vec![NormalGame::star()]);
        assert_eq!(ctx.canonical(&star_star), NormalGame::empty());
    }

    #[test]
    fn sum_with_negative_is_second_player_win() {
        let pool = [
            one(),
            NormalGame::star(),
            NormalGame::new(vec![NormalGame::star(), one()], vec![minus_one()]),
        ];
        for g in &pool {
            let z = g.sum(&g.negate());
            assert!(!normal_outcome(&z, Player::Left));
            assert!(!normal_outcome(&z, Player::Right));
        }
    }

    #[test]
    fn adjoint_sum_is_misere_second_player_win() {
        let pool = [
            NormalGame::empty(),
            one(),
            minus_one(),
            NormalGame::star(),
            NormalGame::new(vec![one()], vec![NormalGame::star()]),
            NormalGame::new(vec![NormalGame::empty(), NormalGame::star()], vec![one()]),
        ];
        for g in &pool {
            let s = g.sum(&adjoint(g));
            assert!(!misere_outcome(&s, Player::Left), "Left first wins {g} + adjoint");
            assert!(!misere_outcome(&s, Player::Right), "Right first wins {g} + adjoint");
        }
    }
}
