//! Verification sweeps over the score-shifted universes.

use super::{
    deltas_hold, embed, in_universe, strip_unchecked, table2_cell, TameXContext, UniverseError,
    UniverseMode,
};
use crate::game::{distinguish_with, BoundedVerdict, Game, OutcomeClass, Player};
use crate::harness::{enumerate_universe, EnumerationBudget, SweepReport};
use crate::normalplay::adjoint;
use crate::score::Score;
use crate::util::FastMap;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Outcome-table containment for sums of members, plus emptiness of the `P`
/// class over the enumerated members.
pub fn verify_table2(budget: &EnumerationBudget, x: &Score) -> SweepReport {
    let mut report = SweepReport::default();
    let pool = enumerate_universe(budget, x, UniverseMode::Normal);
    report.notes.push(format!("member pool: {}", pool.len()));
    let classes: Vec<OutcomeClass> = pool.iter().map(|g| g.outcome().class).collect();
    for (g, cg) in pool.iter().zip(&classes) {
        report.checks += 1;
        if *cg == OutcomeClass::P {
            report.violation(format!("member {g} has outcome class P"));
        }
    }
    for (g, cg) in pool.iter().zip(&classes) {
        for (h, ch) in pool.iter().zip(&classes) {
            report.checks += 1;
            let sum_class = g.outcome_of_sum(h).class;
            match table2_cell(*cg, *ch) {
                Ok(cell) => {
                    if !cell.contains(&sum_class) {
                        report.violation(format!(
                            "outcome table: {g} [{cg}] + {h} [{ch}] = {sum_class}, not allowed"
                        ));
                    }
                }
                Err(_) => report.violation(format!(
                    "outcome table has no row for {cg}/{ch} ({g}, {h})"
                )),
            }
        }
    }
    report.finish()
}

/// The final-score law: a member's Left final score is `x` exactly when Left
/// moves last and `0` otherwise, and dually for Right.
pub fn verify_final_score_law(budget: &EnumerationBudget, x: &Score) -> SweepReport {
    let mut report = SweepReport::default();
    let pool = enumerate_universe(budget, x, UniverseMode::Normal);
    report.notes.push(format!("member pool: {}", pool.len()));
    let minus_x = -x;
    for g in &pool {
        report.checks += 1;
        let fs = g.final_scores();
        let left_is_x = &fs.left_first == x;
        let left_ok = (left_is_x || fs.left_first.is_zero())
            && (left_is_x == (fs.left_first_last_mover == Some(Player::Left)));
        let right_is_minus_x = fs.right_first == minus_x;
        let right_ok = (right_is_minus_x || fs.right_first.is_zero())
            && (right_is_minus_x == (fs.right_first_last_mover == Some(Player::Right)));
        if !left_ok || !right_ok {
            report.violation(format!(
                "final-score law: {g} has finals {} ({:?} last) / {} ({:?} last)",
                fs.left_first, fs.left_first_last_mover, fs.right_first, fs.right_first_last_mover
            ));
        }
    }
    report.finish()
}

/// Group structure of `Tame_x` under the disjunctive sum: closure, tie
/// members as identities, `-G` as inverse, outcome-table containment, and
/// the final-score law.
pub fn verify_group(budget: &EnumerationBudget, x: &Score) -> SweepReport {
    let mut report = SweepReport::default();
    let pool = enumerate_universe(budget, x, UniverseMode::Normal);
    let classes: Vec<OutcomeClass> = pool.iter().map(|g| g.outcome().class).collect();
    report.notes.push(format!("member pool: {}", pool.len()));

    // Closure. A sum's edges are its components' edges and the root scores
    // add, so membership of the sum reduces to the components' delta
    // structure plus root cancellation; the equivalence is cross-checked on
    // materialized sums below.
    for g in &pool {
        for h in &pool {
            report.checks += 1;
            let closed = (g.score() + h.score()).is_zero()
                && deltas_hold(g, x, UniverseMode::Normal)
                && deltas_hold(h, x, UniverseMode::Normal);
            if !closed {
                report.violation(format!("closure: {g} + {h} leaves the universe"));
            }
        }
    }
    for g in pool.iter().take(30) {
        for h in pool.iter().take(30) {
            report.checks += 1;
            if !in_universe(&g.sum(h), x, UniverseMode::Normal) {
                report.violation(format!(
                    "closure (materialized): {g} + {h} leaves the universe"
                ));
            }
        }
    }

    // Identity: every tie member leaves every member's outcome unchanged.
    let ties: Vec<&Game> = pool
        .iter()
        .zip(&classes)
        .filter(|(_, c)| **c == OutcomeClass::Ti)
        .map(|(g, _)| g)
        .collect();
    report.notes.push(format!("tie members: {}", ties.len()));
    for t in &ties {
        for (g, cg) in pool.iter().zip(&classes) {
            report.checks += 1;
            let with = g.outcome_of_sum(t).class;
            if with != *cg {
                report.violation(format!("identity: {g} + {t} = {with}, expected {cg}"));
            }
        }
    }

    // Inverse: G + (-G) always ties (the mirroring strategy).
    for g in &pool {
        report.checks += 1;
        let class = g.outcome_of_sum(&g.negate()).class;
        if class != OutcomeClass::Ti {
            report.violation(format!("inverse: {g} + (-{g}) = {class}, expected ti"));
        }
    }

    report.merge(verify_table2(budget, x));
    report.merge(verify_final_score_law(budget, x));
    report.finish()
}

/// Candidate distinguishing contexts for a `Tame_-x` member, tried before
/// the enumerated pool: the zero game, the embedded misère adjoint of the
/// member (the adjoint sum is always a misère second-player win, which
/// pins the sum's class), and the member's negative.
fn targeted_contexts(g: &Game, x: &Score) -> Vec<Game> {
    let shape = strip_unchecked(g);
    vec![
        Game::zero(),
        embed(&adjoint(&shape), x, UniverseMode::Misere),
        g.negate(),
    ]
}

/// Separating contexts are usually tiny, so the search walks every context
/// of up to this many nodes before falling back to the sampled pool.
const SMALL_CONTEXT_NODES: usize = 8;

fn small_contexts(budget: &EnumerationBudget, x: &Score) -> Vec<Game> {
    crate::harness::enumerate_shapes_by_size(budget, SMALL_CONTEXT_NODES)
        .iter()
        .map(|s| embed(s, x, UniverseMode::Misere))
        .collect()
}

/// Searches for a `Tame_-x` context distinguishing `g` from the zero game.
/// `g` must be a nonzero member; contexts come from the targeted candidates,
/// then every small context, then the budgeted universe enumeration.
pub fn misere_nonzero_search(
    g: &Game,
    budget: &EnumerationBudget,
    x: &Score,
) -> Result<BoundedVerdict, UniverseError> {
    super::require_member(g, x, UniverseMode::Misere)?;
    if g == &Game::zero() {
        return Err(UniverseError::ZeroGame);
    }
    let contexts = targeted_contexts(g, x)
        .into_iter()
        .chain(small_contexts(budget, x))
        .chain(enumerate_universe(budget, x, UniverseMode::Misere));
    Ok(distinguish_with(g, &Game::zero(), contexts))
}

/// Sweep form of the nonzero search: every enumerated nonzero `Tame_-x`
/// member must be distinguishable from zero within the context budget.
/// Successful contexts are retried first on later members.
pub fn verify_misere_nonzero(
    members: &EnumerationBudget,
    contexts: &EnumerationBudget,
    x: &Score,
) -> SweepReport {
    let mut report = SweepReport::default();
    let zero = Game::zero();
    let member_pool = enumerate_universe(members, x, UniverseMode::Misere);
    let mut context_pool = small_contexts(contexts, x);
    context_pool.extend(enumerate_universe(contexts, x, UniverseMode::Misere));
    report.notes.push(format!(
        "members: {}, context pool: {}",
        member_pool.len(),
        context_pool.len()
    ));
    let mut killers: Vec<Game> = Vec::new();
    let mut alone_cache: FastMap<Game, OutcomeClass> = FastMap::default();
    let class_alone = |x_game: &Game, cache: &mut FastMap<Game, OutcomeClass>| {
        if let Some(&c) = cache.get(x_game) {
            return c;
        }
        let c = x_game.outcome().class;
        cache.insert(x_game.clone(), c);
        c
    };
    let mut max_tried = 0usize;
    for g in &member_pool {
        if g == &zero {
            continue;
        }
        report.checks += 1;
        let mut found = None;
        let mut tried = 0;
        let candidates = targeted_contexts(g, x)
            .into_iter()
            .chain(killers.iter().cloned())
            .chain(context_pool.iter().cloned());
        for context in candidates {
            tried += 1;
            let with = g.outcome_of_sum(&context).class;
            let alone = class_alone(&context, &mut alone_cache);
            if with != alone {
                found = Some(context);
                break;
            }
        }
        max_tried = max_tried.max(tried);
        match found {
            Some(context) => {
                if let Some(pos) = killers.iter().position(|k| k == &context) {
                    killers.remove(pos);
                }
                killers.insert(0, context);
                killers.truncate(32);
            }
            None => report.violation(format!(
                "nonzero: no context distinguishes {g} from 0 within the budget"
            )),
        }
    }
    report
        .notes
        .push(format!("max contexts tried for one member: {max_tried}"));
    report.finish()
}

/// Which (class of G, class of H, class of G+H) triples are realized by
/// enumerated `Tame_-x` pairs. Coverage is search-generated and depends on
/// the budget; triples involving class `N` cannot occur, since no member's
/// Left final score is positive.
#[derive(Debug, Clone, Default)]
pub struct MisereCoverage {
    pub pairs_checked: usize,
    pub found: BTreeMap<(OutcomeClass, OutcomeClass, OutcomeClass), (String, String)>,
}

impl MisereCoverage {
    pub fn missing(&self) -> Vec<(OutcomeClass, OutcomeClass, OutcomeClass)> {
        let mut out = Vec::new();
        for a in OutcomeClass::ALL {
            for b in OutcomeClass::ALL {
                for c in OutcomeClass::ALL {
                    if !self.found.contains_key(&(a, b, c)) {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for MisereCoverage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "pairs={} triples_found={}/125",
            self.pairs_checked,
            self.found.len()
        )?;
        for ((a, b, c), (g, h)) in &self.found {
            writeln!(f, "{a}+{b}={c}: {g} + {h}")?;
        }
        Ok(())
    }
}

/// Sweeps enumerated `Tame_-x` pairs recording every realized outcome-class
/// triple.
pub fn misere_coverage(budget: &EnumerationBudget, x: &Score) -> MisereCoverage {
    let pool = enumerate_universe(budget, x, UniverseMode::Misere);
    let classes: Vec<OutcomeClass> = pool.iter().map(|g| g.outcome().class).collect();
    let mut coverage = MisereCoverage::default();
    for (g, cg) in pool.iter().zip(&classes) {
        for (h, ch) in pool.iter().zip(&classes) {
            coverage.pairs_checked += 1;
            let cs = g.outcome_of_sum(h).class;
            coverage
                .found
                .entry((*cg, *ch, cs))
                .or_insert_with(|| (g.to_string(), h.to_string()));
        }
    }
    coverage
}

fn in_order_set(signs: (Ordering, Ordering), set: usize) -> bool {
    // 0: left final > 0; 1: right final > 0; 2: left >= 0; 3: right >= 0.
    match set {
        0 => signs.0 == Ordering::Greater,
        1 => signs.1 == Ordering::Greater,
        2 => signs.0 != Ordering::Less,
        _ => signs.1 != Ordering::Less,
    }
}

/// Consistency of the transported order with its defining quantifier: on
/// seeded member pairs where `g >=_x h` holds, no enumerated context may
/// witness `h + X` in a favorable outcome set without `g + X` in it.
pub fn verify_order_consistency(
    members: &EnumerationBudget,
    contexts: &EnumerationBudget,
    pairs: usize,
    x: &Score,
) -> SweepReport {
    let mut report = SweepReport::default();
    let member_pool = enumerate_universe(members, x, UniverseMode::Normal);
    let context_pool = enumerate_universe(contexts, x, UniverseMode::Normal);
    report.notes.push(format!(
        "members: {}, contexts: {}, pairs: {pairs}",
        member_pool.len(),
        context_pool.len()
    ));
    if member_pool.is_empty() {
        return report.finish();
    }
    let mut ctx = TameXContext::new(x);
    let mut rng = ChaCha8Rng::seed_from_u64(members.sample_seed ^ 0x9e3779b97f4a7c15);
    let mut sign_cache: FastMap<(usize, usize), (Ordering, Ordering)> = FastMap::default();
    let signs_of = |gi: usize, xi: usize,
                        pool: &[Game],
                        ctx_pool: &[Game],
                        cache: &mut FastMap<(usize, usize), (Ordering, Ordering)>| {
        if let Some(&hit) = cache.get(&(gi, xi)) {
            return hit;
        }
        let report = pool[gi].outcome_of_sum(&ctx_pool[xi]);
        let signs = (report.left_sign, report.right_sign);
        cache.insert((gi, xi), signs);
        signs
    };
    let mut geq_pairs = 0usize;
    for _ in 0..pairs {
        let gi = rng.gen_range(0..member_pool.len());
        let hi = rng.gen_range(0..member_pool.len());
        let (g, h) = (&member_pool[gi], &member_pool[hi]);
        if !ctx.geq(g, h) {
            continue;
        }
        geq_pairs += 1;
        for xi in 0..context_pool.len() {
            report.checks += 1;
            let h_signs = signs_of(hi, xi, &member_pool, &context_pool, &mut sign_cache);
            let g_signs = signs_of(gi, xi, &member_pool, &context_pool, &mut sign_cache);
            for set in 0..4 {
                if in_order_set(h_signs, set) && !in_order_set(g_signs, set) {
                    report.violation(format!(
                        "order: {g} >= {h} but context {} separates them (set {set})",
                        context_pool[xi]
                    ));
                }
            }
        }
    }
    report
        .notes
        .push(format!("pairs with g >= h: {geq_pairs}"));
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_game;

    fn g(s: &str) -> Game {
        parse_game(s).unwrap()
    }

    fn one() -> Score {
        Score::integer(1)
    }

    fn small_universe_budget() -> EnumerationBudget {
        EnumerationBudget::default().with_depth(2).with_cap(None)
    }

    #[test]
    fn group_axioms_hold_at_small_scale() {
        let budget = EnumerationBudget::default()
            .with_depth(2)
            .with_cap(Some(60))
            .with_seed(5);
        let report = verify_group(&budget, &one());
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn misere_classes_exclude_n() {
        let pool = enumerate_universe(&small_universe_budget(), &one(), UniverseMode::Misere);
        for m in pool.iter().take(500) {
            assert_ne!(m.outcome().class, OutcomeClass::N, "member {m}");
        }
    }

    #[test]
    fn nonzero_search_examples() {
        let budget = EnumerationBudget::default()
            .with_depth(2)
            .with_cap(Some(100))
            .with_seed(9);
        for s in ["{-1|0|.}", "{-1|0|1}", "{.|0|1}"] {
            let verdict = misere_nonzero_search(&g(s), &budget, &one()).unwrap();
            assert!(verdict.distinguished(), "no witness for {s}");
        }
        assert!(matches!(
            misere_nonzero_search(&g("0"), &budget, &one()),
            Err(UniverseError::ZeroGame)
        ));
        assert!(misere_nonzero_search(&g("{1|0|-1}"), &budget, &one()).is_err());
    }

    #[test]
    fn order_consistency_smoke() {
        let members = EnumerationBudget::default()
            .with_depth(1)
            .with_cap(None)
            .with_seed(2);
        let contexts = EnumerationBudget::default().with_depth(1).with_cap(None);
        let report = verify_order_consistency(&members, &contexts, 200, &one());
        assert!(report.passed(), "{report}");
    }
}
