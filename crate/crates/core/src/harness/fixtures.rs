//! Fixture registry: pinned positions with expected outcomes.
//!
//! The registry is a plain-text file bundled with the crate (see
//! `fixtures/fixtures.txt`). Rows record either drawn example trees
//! transcribed into bracket notation (`figure` source) or witnesses
//! regenerated by search where no usable drawing exists (`search` source).
//! Cell references in citations name this engine's outcome tables (the
//! tame-sum table of [`crate::tame::table1_cell`] and the universe table of
//! [`crate::universe::table2_cell`]).

use crate::game::OutcomeClass;
use crate::notation::parse_game;
use std::fmt;

/// Where a fixture comes from: a transcribed drawing or a generated search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixtureSource {
    Figure { citation: String },
    Search { method: String },
}

impl FixtureSource {
    pub fn is_figure(&self) -> bool {
        matches!(self, FixtureSource::Figure { .. })
    }
}

impl fmt::Display for FixtureSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureSource::Figure { citation } => write!(f, "figure: {citation}"),
            FixtureSource::Search { method } => write!(f, "search: {method}"),
        }
    }
}

/// What a fixture asserts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixtureClaim {
    /// A single game evaluates to this class.
    Class(OutcomeClass),
    /// Two games with these classes sum to the given class.
    SumClass {
        components: (OutcomeClass, OutcomeClass),
        sum: OutcomeClass,
    },
    /// The sum of the games is not tame.
    NotTame,
}

impl fmt::Display for FixtureClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureClaim::Class(c) => write!(f, "{c}"),
            FixtureClaim::SumClass { components, sum } => {
                write!(f, "{}+{}={}", components.0, components.1, sum)
            }
            FixtureClaim::NotTame => write!(f, "not-tame"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub id: String,
    pub games: Vec<String>,
    pub claim: FixtureClaim,
    pub source: FixtureSource,
}

impl Fixture {
    /// Evaluates the claim against the engine. `Err` carries a
    /// human-readable mismatch description.
    pub fn check(&self) -> Result<(), String> {
        let games: Result<Vec<_>, _> = self.games.iter().map(|s| parse_game(s)).collect();
        let games = games.map_err(|e| format!("unparseable fixture game: {e}"))?;
        match &self.claim {
            FixtureClaim::Class(expected) => {
                if games.len() != 1 {
                    return Err(format!("class claim needs 1 game, got {}", games.len()));
                }
                let got = games[0].outcome().class;
                if got != *expected {
                    return Err(format!("expected class {expected}, engine says {got}"));
                }
                Ok(())
            }
            FixtureClaim::SumClass { components, sum } => {
                if games.len() != 2 {
                    return Err(format!("sum claim needs 2 games, got {}", games.len()));
                }
                let (cg, ch) = (games[0].outcome().class, games[1].outcome().class);
                if cg != components.0 {
                    return Err(format!(
                        "first component: expected {}, engine says {cg}",
                        components.0
                    ));
                }
                if ch != components.1 {
                    return Err(format!(
                        "second component: expected {}, engine says {ch}",
                        components.1
                    ));
                }
                let got = games[0].outcome_of_sum(&games[1]).class;
                if got != *sum {
                    return Err(format!("expected sum class {sum}, engine says {got}"));
                }
                Ok(())
            }
            FixtureClaim::NotTame => {
                if games.len() != 2 {
                    return Err(format!("not-tame claim needs 2 games, got {}", games.len()));
                }
                let sum = games[0].sum(&games[1]);
                if crate::tame::is_tame(&sum).is_tame {
                    return Err("sum is tame, expected not tame".to_string());
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, thiserror::Error)]
#[error("registry line {line}: {message}")]
pub struct RegistryError {
    pub line: usize,
    pub message: String,
}

/// Parses registry rows: `id | games | claim | source`, `#` comments.
pub fn parse_registry(text: &str) -> Result<Vec<Fixture>, RegistryError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| RegistryError {
            line: lineno + 1,
            message,
        };
        let fields: Vec<&str> = line.split(" | ").collect();
        if fields.len() != 4 {
            return Err(err(format!("expected 4 fields, got {}", fields.len())));
        }
        let id = fields[0].trim().to_string();
        let games: Vec<String> = fields[1].split(" + ").map(|s| s.trim().to_string()).collect();
        let claim_text = fields[2].trim();
        let claim = if claim_text == "not-tame" {
            FixtureClaim::NotTame
        } else if let Some((lhs, sum)) = claim_text.split_once('=') {
            let (a, b) = lhs
                .split_once('+')
                .ok_or_else(|| err(format!("bad claim {claim_text:?}")))?;
            FixtureClaim::SumClass {
                components: (
                    a.parse().map_err(|e: String| err(e))?,
                    b.parse().map_err(|e: String| err(e))?,
                ),
                sum: sum.parse().map_err(|e: String| err(e))?,
            }
        } else {
            FixtureClaim::Class(claim_text.parse().map_err(|e: String| err(e))?)
        };
        let source_text = fields[3].trim();
        let source = if let Some(citation) = source_text.strip_prefix("figure:") {
            FixtureSource::Figure {
                citation: citation.trim().to_string(),
            }
        } else if let Some(method) = source_text.strip_prefix("search:") {
            FixtureSource::Search {
                method: method.trim().to_string(),
            }
        } else {
            return Err(err(format!("bad source {source_text:?}")));
        };
        out.push(Fixture {
            id,
            games,
            claim,
            source,
        });
    }
    Ok(out)
}

const REGISTRY: &str = include_str!("../../fixtures/fixtures.txt");

/// The fixtures bundled with the crate.
pub fn builtin_fixtures() -> Vec<Fixture> {
    parse_registry(REGISTRY).expect("bundled registry parses")
}

/// Per-fixture evaluation result.
#[derive(Debug, Clone)]
pub struct FixtureResult {
    pub id: String,
    pub passed: bool,
    pub detail: Option<String>,
    pub figure_sourced: bool,
}

#[derive(Debug, Clone, Default)]
pub struct FixtureReport {
    pub results: Vec<FixtureResult>,
}

impl FixtureReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &FixtureResult> {
        self.results.iter().filter(|r| !r.passed)
    }
}

impl fmt::Display for FixtureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            match &r.detail {
                Some(detail) => writeln!(f, "{}: FAIL ({detail})", r.id)?,
                None => writeln!(f, "{}: ok", r.id)?,
            }
        }
        write!(
            f,
            "{} fixtures, {} failed",
            self.results.len(),
            self.failures().count()
        )
    }
}

/// Evaluates every bundled fixture.
pub fn run_fixture_suite() -> FixtureReport {
    let mut report = FixtureReport::default();
    for fixture in builtin_fixtures() {
        let outcome = fixture.check();
        report.results.push(FixtureResult {
            id: fixture.id.clone(),
            passed: outcome.is_ok(),
            detail: outcome.err(),
            figure_sourced: fixture.source.is_figure(),
        });
    }
    report
}
