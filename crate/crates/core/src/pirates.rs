//! Pirates & Treasure: a graph game compiled to scoring game trees.
//!
//! Played on a finite simple graph. Each numbered vertex holds that much
//! treasure; each player's ships sit on unnumbered starting vertices. On a
//! turn the player moves one of their ships to an adjacent unvisited vertex
//! and banks its treasure (Left adds, Right subtracts from the running
//! Left-minus-Right score). Nobody may enter a visited vertex, starting
//! vertices included. The game ends when the player to move has no legal
//! ship move; the final score decides the winner.
//!
//! Board files are line oriented, `#` for comments:
//!
//! ```text
//! vertex <id> <rational|start>
//! edge <id> <id>
//! left <id>
//! right <id>
//! ```

use crate::game::{Game, OutcomeReport, Player};
use crate::score::Score;
use crate::util::FastMap;
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, thiserror::Error)]
pub enum BoardError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate edge {0:?} - {1:?}")]
    DuplicateEdge(String, String),
    #[error("self loop at {0:?}")]
    SelfLoop(String),
    #[error("ship placed on numbered vertex {0:?} (starting vertices carry no treasure)")]
    ShipOnTreasure(String),
    #[error("two ships share starting vertex {0:?}")]
    SharedStart(String),
}

#[derive(Debug, Clone, thiserror::Error)]
#[error("state cap {0} exceeded while expanding the position")]
pub struct StateCapExceeded(pub usize);

/// An immutable board: vertices with treasure (or start markers), the edge
/// set, and each player's ship starting vertices.
#[derive(Debug, Clone)]
pub struct PiratesBoard {
    names: Vec<String>,
    /// `None` marks a starting vertex.
    treasure: Vec<Option<Score>>,
    adjacency: Vec<Vec<usize>>,
    left_ships: Vec<usize>,
    right_ships: Vec<usize>,
}

impl PiratesBoard {
    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn ships(&self, player: Player) -> &[usize] {
        match player {
            Player::Left => &self.left_ships,
            Player::Right => &self.right_ships,
        }
    }

    /// The opening position: ships on their starting vertices, every start
    /// vertex already visited, score zero.
    pub fn initial_position(&self) -> PiratesPosition {
        let mut visited = vec![false; self.vertex_count()];
        for (v, t) in self.treasure.iter().enumerate() {
            if t.is_none() {
                visited[v] = true;
            }
        }
        PiratesPosition {
            visited,
            left_ships: self.left_ships.clone(),
            right_ships: self.right_ships.clone(),
            score: Score::zero(),
        }
    }
}

/// A game state: visited set, ship locations, running score. Ship lists are
/// kept sorted; positions differing only by a same-player ship permutation
/// are identical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiratesPosition {
    visited: Vec<bool>,
    left_ships: Vec<usize>,
    right_ships: Vec<usize>,
    score: Score,
}

impl PiratesPosition {
    pub fn score(&self) -> &Score {
        &self.score
    }

    fn ships(&self, player: Player) -> &[usize] {
        match player {
            Player::Left => &self.left_ships,
            Player::Right => &self.right_ships,
        }
    }

    /// Legal successor positions for `player`, one per (ship, target) move.
    fn moves(&self, board: &PiratesBoard, player: Player) -> Vec<PiratesPosition> {
        let mut out = Vec::new();
        for (i, &from) in self.ships(player).iter().enumerate() {
            for &to in &board.adjacency[from] {
                if self.visited[to] {
                    continue;
                }
                let value = board.treasure[to]
                    .as_ref()
                    .expect("unvisited vertices carry treasure");
                let mut next = self.clone();
                next.visited[to] = true;
                match player {
                    Player::Left => {
                        next.left_ships[i] = to;
                        next.left_ships.sort_unstable();
                        next.score = &next.score + value;
                    }
                    Player::Right => {
                        next.right_ships[i] = to;
                        next.right_ships.sort_unstable();
                        next.score = &next.score - value;
                    }
                }
                out.push(next);
            }
        }
        out
    }
}

impl fmt::Display for PiratesPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "score={} left={:?} right={:?}",
            self.score, self.left_ships, self.right_ships
        )
    }
}

/// Parses a board file.
pub fn parse_board(text: &str) -> Result<PiratesBoard, BoardError> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut treasure: Vec<Option<Score>> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut left_ships: Vec<usize> = Vec::new();
    let mut right_ships: Vec<usize> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |message: String| BoardError::Parse {
            line: lineno + 1,
            message,
        };
        let mut words = line.split_whitespace();
        let keyword = words.next().unwrap();
        let args: Vec<&str> = words.collect();
        match keyword {
            "vertex" => {
                if args.len() != 2 {
                    return Err(parse_err("vertex takes a name and a value".into()));
                }
                let name = args[0].to_string();
                if index.contains_key(&name) {
                    return Err(BoardError::DuplicateVertex(name));
                }
                let value = if args[1] == "start" {
                    None
                } else {
                    Some(
                        args[1]
                            .parse::<Score>()
                            .map_err(|e| parse_err(e.to_string()))?,
                    )
                };
                index.insert(name.clone(), names.len());
                names.push(name);
                treasure.push(value);
            }
            "edge" => {
                if args.len() != 2 {
                    return Err(parse_err("edge takes two vertex names".into()));
                }
                let a = *index
                    .get(args[0])
                    .ok_or_else(|| BoardError::UnknownVertex(args[0].to_string()))?;
                let b = *index
                    .get(args[1])
                    .ok_or_else(|| BoardError::UnknownVertex(args[1].to_string()))?;
                if a == b {
                    return Err(BoardError::SelfLoop(args[0].to_string()));
                }
                let key = (a.min(b), a.max(b));
                if edges.contains(&key) {
                    return Err(BoardError::DuplicateEdge(
                        args[0].to_string(),
                        args[1].to_string(),
                    ));
                }
                edges.push(key);
            }
            "left" | "right" => {
                if args.len() != 1 {
                    return Err(parse_err(format!("{keyword} takes one vertex name")));
                }
                let v = *index
                    .get(args[0])
                    .ok_or_else(|| BoardError::UnknownVertex(args[0].to_string()))?;
                if treasure[v].is_some() {
                    return Err(BoardError::ShipOnTreasure(args[0].to_string()));
                }
                if left_ships.contains(&v) || right_ships.contains(&v) {
                    return Err(BoardError::SharedStart(args[0].to_string()));
                }
                if keyword == "left" {
                    left_ships.push(v);
                } else {
                    right_ships.push(v);
                }
            }
            other => return Err(parse_err(format!("unknown keyword {other:?}"))),
        }
    }

    let mut adjacency = vec![Vec::new(); names.len()];
    for &(a, b) in &edges {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    for adj in &mut adjacency {
        adj.sort_unstable();
    }
    left_ships.sort_unstable();
    right_ships.sort_unstable();
    Ok(PiratesBoard {
        names,
        treasure,
        adjacency,
        left_ships,
        right_ships,
    })
}

/// Default cap on distinct expanded states.
pub const DEFAULT_MAX_STATES: usize = 1_000_000;

/// Expands a position into its scoring game tree. Node scores are the
/// absolute running scores; a player with no ship move simply has no
/// options. States are deduplicated through a transposition table, so the
/// result shares repeated positions.
pub fn to_game(
    board: &PiratesBoard,
    position: &PiratesPosition,
    max_states: usize,
) -> Result<Game, StateCapExceeded> {
    fn rec(
        board: &PiratesBoard,
        position: &PiratesPosition,
        max_states: usize,
        table: &mut FastMap<PiratesPosition, Game>,
    ) -> Result<Game, StateCapExceeded> {
        if let Some(hit) = table.get(position) {
            return Ok(hit.clone());
        }
        if table.len() >= max_states {
            return Err(StateCapExceeded(max_states));
        }
        let mut left = Vec::new();
        for next in position.moves(board, Player::Left) {
            left.push(rec(board, &next, max_states, table)?);
        }
        let mut right = Vec::new();
        for next in position.moves(board, Player::Right) {
            right.push(rec(board, &next, max_states, table)?);
        }
        let game = Game::new(left, position.score().clone(), right);
        table.insert(position.clone(), game.clone());
        Ok(game)
    }
    rec(board, position, max_states, &mut FastMap::default())
}

/// Solves a position: the outcome report of its game tree.
pub fn solve(
    board: &PiratesBoard,
    position: &PiratesPosition,
    max_states: usize,
) -> Result<OutcomeReport, StateCapExceeded> {
    Ok(to_game(board, position, max_states)?.outcome())
}
