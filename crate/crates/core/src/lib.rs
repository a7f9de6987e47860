//! An exact-arithmetic engine for scoring-play combinatorial games.
//!
//! A scoring-play game is a finite game tree in which every node carries a
//! rational score (Left's total minus Right's total). Players alternate
//! moves; when the player to move has no option the game ends and the score
//! at that node is final. The engine computes optimal final scores for both
//! starting players, classifies outcomes into `L`, `R`, `N`, `P` and `ti`,
//! forms disjunctive sums and negatives, and decides the structural
//! properties that make scoring games behave like normal-play or misère-play
//! games:
//!
//! * [`tame`] — games in which whoever moves last never regrets it: the
//!   score is `>= 0` whenever Left made the last move and `<= 0` whenever
//!   Right did, along every line of play.
//! * [`universe`] — the score-shifted universes `Tame_x` / `Tame_-x` in
//!   which every move changes the score by exactly `±x`. These are
//!   isomorphic to normal play and misère play; the module carries the
//!   embeddings in both directions, order comparison, canonical forms and
//!   surreal-number generation.
//! * [`normalplay`] — a small score-free oracle: normal and misère
//!   outcomes, the normal-play partial order, and canonical forms.
//! * [`harness`] — bounded, reproducible enumeration of game spaces and a
//!   registry of fixture positions used by the verification sweeps.
//! * [`pirates`] — the Pirates & Treasure board game, compiled to scoring
//!   game trees.
//!
//! All arithmetic is exact (arbitrary-precision rationals); there is no
//! floating point anywhere. Game values are immutable and cheaply cloneable
//! (`Arc`-backed), safe to share across threads. Every operation is pure and
//! deterministic; enumeration order depends only on the budget and seed.

pub mod game;
pub mod harness;
pub mod normalplay;
pub mod notation;
pub mod pirates;
pub mod score;
pub mod tame;
pub mod universe;

mod util;

pub use game::{
    equal_bounded, BoundedVerdict, FinalScores, Game, OutcomeClass, OutcomeReport, Player,
};
pub use notation::{parse_game, ParseError};
pub use score::Score;
