//! `sgt` — command-line front end for the scoring-games engine.
//!
//! Exit codes: 0 success (and verification clean), 1 verification sweep
//! found violations, 2 usage or input errors.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use scoring_games::game::{BoundedVerdict, Game, OutcomeReport, Player};
use scoring_games::harness::{self, EnumerationBudget};
use scoring_games::score::Score;
use scoring_games::tame;
use scoring_games::universe::{self, UniverseMode};
use scoring_games::{parse_game, pirates};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "sgt",
    version,
    about = "Exact engine for scoring-play combinatorial games"
)]
struct Cli {
    /// Emit single-line machine-readable records.
    #[arg(long, global = true)]
    machine: bool,

    /// Universe step parameter x (a positive rational, e.g. 1 or 1/2).
    #[arg(long, global = true, default_value = "1")]
    x: String,

    /// Universe flavor: in tame-x Left's moves gain x, in tame-neg-x each
    /// player's own move costs x.
    #[arg(long, global = true, value_enum, default_value_t = UniverseFlag::TameX)]
    universe: UniverseFlag,

    /// Enumeration budget: maximum tree depth.
    #[arg(long, global = true, default_value_t = 3)]
    depth: usize,

    /// Enumeration budget: maximum options per side per node.
    #[arg(long, global = true, default_value_t = 2)]
    branching: usize,

    /// Enumeration budget: comma-separated score alphabet.
    #[arg(long, global = true, default_value = "-2,-1,0,1,2")]
    scores: String,

    /// Enumeration budget: sampling seed.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Enumeration budget: cap before seeded sampling kicks in.
    #[arg(long, global = true, default_value_t = 200)]
    max_games: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum UniverseFlag {
    #[value(name = "tame-x")]
    TameX,
    #[value(name = "tame-neg-x")]
    TameNegX,
}

impl UniverseFlag {
    fn mode(self) -> UniverseMode {
        match self {
            UniverseFlag::TameX => UniverseMode::Normal,
            UniverseFlag::TameNegX => UniverseMode::Misere,
        }
    }

    fn name(self) -> &'static str {
        match self {
            UniverseFlag::TameX => "tame-x",
            UniverseFlag::TameNegX => "tame-neg-x",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a game: final scores, last movers, outcome class.
    Eval { game: String },
    /// Disjunctive sum of two games.
    Sum { g: String, h: String },
    /// Negative of a game.
    Neg { game: String },
    /// Tameness check, with a violating line if not tame.
    Tame { game: String },
    /// Compare two universe members under the transported order (needs --x).
    Cmp { g: String, h: String },
    /// Canonical form of a universe member (needs --x).
    Canon { game: String },
    /// Number test for a universe member (needs --x).
    Number { game: String },
    /// Canonical numbers born by the given day.
    Surreal { day: usize },
    /// Run a verification sweep. Exit code 1 if violations are found.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
    },
    /// Search the budgeted context pool for a context on which the two
    /// games have different outcomes.
    Distinguish { g: String, h: String },
    /// Compile a board file to a scoring game (--tree) and/or solve it
    /// (--solve; the default when neither flag is given).
    Pirates {
        file: PathBuf,
        #[arg(long)]
        tree: bool,
        #[arg(long)]
        solve: bool,
        #[arg(long, default_value_t = pirates::DEFAULT_MAX_STATES)]
        max_states: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyTarget {
    Table1,
    Table2,
    Monoid,
    Group,
    Misere,
    Fixtures,
}

fn parse_scores(text: &str) -> Result<Vec<Score>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<Score>()
                .map_err(|e| anyhow!("bad --scores entry: {e}"))
        })
        .collect()
}

struct Ctx {
    machine: bool,
    x: Score,
    mode: UniverseMode,
    budget: EnumerationBudget,
}

impl Ctx {
    fn game(&self, text: &str) -> Result<Game> {
        parse_game(text).map_err(|e| anyhow!("{e}"))
    }

    fn require_member(&self, g: &Game) -> Result<()> {
        if !universe::in_universe(g, &self.x, self.mode) {
            bail!(
                "{g} is not a member of the {} universe with x = {}",
                match self.mode {
                    UniverseMode::Normal => "tame-x",
                    UniverseMode::Misere => "tame-neg-x",
                },
                self.x
            );
        }
        Ok(())
    }

    fn print_outcome(&self, notation: &str, report: &OutcomeReport) {
        let last = |m: Option<Player>| match m {
            Some(Player::Left) => "Left",
            Some(Player::Right) => "Right",
            None => "none",
        };
        if self.machine {
            println!(
                "notation={} left_final={} right_final={} class={}",
                notation, report.finals.left_first, report.finals.right_first, report.class
            );
        } else {
            println!("notation:    {notation}");
            println!(
                "left final:  {} (last mover: {})",
                report.finals.left_first,
                last(report.finals.left_first_last_mover)
            );
            println!(
                "right final: {} (last mover: {})",
                report.finals.right_first,
                last(report.finals.right_first_last_mover)
            );
            println!("class:       {}", report.class);
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let x: Score = cli
        .x
        .parse()
        .map_err(|e| anyhow!("bad --x value: {e}"))?;
    if !x.is_positive() {
        bail!("--x must be strictly positive, got {x}");
    }
    let scores = parse_scores(&cli.scores)?;
    let budget = EnumerationBudget {
        max_depth: cli.depth,
        max_branching: cli.branching,
        score_alphabet: scores,
        max_games: Some(cli.max_games),
        sample_seed: cli.seed,
    };
    println!(
        "# sgt x={} universe={} depth={} branching={} scores={} seed={} max-games={}",
        x,
        cli.universe.name(),
        cli.depth,
        cli.branching,
        cli.scores,
        cli.seed,
        cli.max_games
    );
    let ctx = Ctx {
        machine: cli.machine,
        x,
        mode: cli.universe.mode(),
        budget,
    };

    match cli.command {
        Command::Eval { game } => {
            let g = ctx.game(&game)?;
            ctx.print_outcome(&g.to_string(), &g.outcome());
        }
        Command::Sum { g, h } => {
            let s = ctx.game(&g)?.sum(&ctx.game(&h)?);
            if ctx.machine {
                println!("notation={s}");
            } else {
                println!("{s}");
            }
        }
        Command::Neg { game } => {
            let n = ctx.game(&game)?.negate();
            if ctx.machine {
                println!("notation={n}");
            } else {
                println!("{n}");
            }
        }
        Command::Tame { game } => {
            let g = ctx.game(&game)?;
            let cert = tame::is_tame(&g);
            match (&cert.violation, ctx.machine) {
                (None, true) => println!("tame=true"),
                (None, false) => println!("tame"),
                (Some(v), true) => {
                    let path: Vec<String> = v
                        .moves
                        .iter()
                        .map(|(p, g)| {
                            format!("{}:{g}", if *p == Player::Left { "L" } else { "R" })
                        })
                        .collect();
                    println!(
                        "tame=false path={} score={} last={}",
                        path.join(";"),
                        v.terminal_score,
                        v.last_mover
                    );
                }
                (Some(v), false) => println!("not tame: {v}"),
            }
        }
        Command::Cmp { g, h } => {
            if ctx.mode == UniverseMode::Misere {
                bail!("cmp is only defined on the tame-x universe");
            }
            let (a, b) = (ctx.game(&g)?, ctx.game(&h)?);
            ctx.require_member(&a)?;
            ctx.require_member(&b)?;
            let geq = universe::geq_x(&a, &b, &ctx.x)?;
            let leq = universe::leq_x(&a, &b, &ctx.x)?;
            let rel = match (geq, leq) {
                (true, true) => "eq",
                (true, false) => "gt",
                (false, true) => "lt",
                (false, false) => "incomparable",
            };
            if ctx.machine {
                println!("geq={geq} leq={leq} rel={rel}");
            } else {
                println!("g >= h: {geq}");
                println!("g <= h: {leq}");
                println!("relation: {rel}");
            }
        }
        Command::Canon { game } => {
            if ctx.mode == UniverseMode::Misere {
                bail!("canonical forms are only computed on the tame-x universe");
            }
            let g = ctx.game(&game)?;
            ctx.require_member(&g)?;
            let c = universe::canonical_form_x(&g, &ctx.x)?;
            if ctx.machine {
                println!("notation={c}");
            } else {
                println!("{c}");
            }
        }
        Command::Number { game } => {
            if ctx.mode == UniverseMode::Misere {
                bail!("the number test is only defined on the tame-x universe");
            }
            let g = ctx.game(&game)?;
            ctx.require_member(&g)?;
            let is_number = universe::is_number(&g, &ctx.x)?;
            if ctx.machine {
                println!("number={is_number}");
            } else {
                println!("{}", if is_number { "number" } else { "not a number" });
            }
        }
        Command::Surreal { day } => {
            let values = universe::surreal_day(day, &ctx.x)?;
            if ctx.machine {
                println!("day={day} count={}", values.len());
                for v in &values {
                    println!("value={v}");
                }
            } else {
                println!("day {day}: {} values", values.len());
                for v in &values {
                    println!("  {v}");
                }
            }
        }
        Command::Verify { target } => return verify(&ctx, target),
        Command::Distinguish { g, h } => {
            let (a, b) = (ctx.game(&g)?, ctx.game(&h)?);
            let contexts: Vec<Game> = match ctx.mode {
                UniverseMode::Normal => harness::enumerate_games(&ctx.budget),
                UniverseMode::Misere => {
                    harness::enumerate_universe(&ctx.budget, &ctx.x, UniverseMode::Misere)
                }
            };
            match scoring_games::game::distinguish_with(&a, &b, contexts) {
                BoundedVerdict::Distinguished {
                    context,
                    lhs_class,
                    rhs_class,
                    contexts_tried,
                } => {
                    if ctx.machine {
                        println!(
                            "distinguished=true context={context} lhs={lhs_class} rhs={rhs_class} tried={contexts_tried}"
                        );
                    } else {
                        println!(
                            "distinguished by {context}: {g} has class {lhs_class}, {h} has class {rhs_class} ({contexts_tried} contexts tried)"
                        );
                    }
                }
                BoundedVerdict::IndistinguishableWithinBudget { contexts_tried } => {
                    if ctx.machine {
                        println!("distinguished=false tried={contexts_tried}");
                    } else {
                        println!(
                            "indistinguishable within budget ({contexts_tried} contexts tried)"
                        );
                    }
                }
            }
        }
        Command::Pirates {
            file,
            tree,
            solve,
            max_states,
        } => {
            let text = std::fs::read_to_string(&file)
                .with_context(|| format!("reading {}", file.display()))?;
            let board = pirates::parse_board(&text)?;
            let position = board.initial_position();
            let game = pirates::to_game(&board, &position, max_states)?;
            if tree {
                if ctx.machine {
                    println!("notation={game}");
                } else {
                    println!("{game}");
                }
            }
            if solve || !tree {
                ctx.print_outcome(&game.to_string(), &game.outcome());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(ctx: &Ctx, target: VerifyTarget) -> Result<ExitCode> {
    let violations = match target {
        VerifyTarget::Fixtures => {
            let report = harness::run_fixture_suite();
            if ctx.machine {
                for r in &report.results {
                    println!(
                        "fixture={} passed={}{}",
                        r.id,
                        r.passed,
                        r.detail
                            .as_ref()
                            .map(|d| format!(" detail={}", d.replace(' ', "_")))
                            .unwrap_or_default()
                    );
                }
            } else {
                println!("{report}");
            }
            report.failures().count()
        }
        VerifyTarget::Table1 => print_sweep(ctx, tame::verify_table1(&ctx.budget)),
        VerifyTarget::Monoid => print_sweep(ctx, tame::verify_monoid(&ctx.budget)),
        VerifyTarget::Table2 => print_sweep(ctx, universe::verify_table2(&ctx.budget, &ctx.x)),
        VerifyTarget::Group => print_sweep(ctx, universe::verify_group(&ctx.budget, &ctx.x)),
        VerifyTarget::Misere => {
            let members = EnumerationBudget {
                max_depth: ctx.budget.max_depth.min(2),
                max_branching: ctx.budget.max_branching,
                score_alphabet: ctx.budget.score_alphabet.clone(),
                max_games: None,
                sample_seed: ctx.budget.sample_seed,
            };
            let nonzero = universe::verify_misere_nonzero(&members, &ctx.budget, &ctx.x);
            let coverage = universe::misere_coverage(&ctx.budget, &ctx.x);
            if !ctx.machine {
                println!(
                    "outcome coverage: {} of 125 class triples realized over {} pairs",
                    coverage.found.len(),
                    coverage.pairs_checked
                );
            } else {
                println!(
                    "coverage_triples={} coverage_pairs={}",
                    coverage.found.len(),
                    coverage.pairs_checked
                );
            }
            print_sweep(ctx, nonzero)
        }
    };
    if violations == 0 {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn print_sweep(ctx: &Ctx, report: scoring_games::harness::SweepReport) -> usize {
    if ctx.machine {
        println!(
            "checks={} violations={}",
            report.checks,
            report.violations.len()
        );
        for v in report.violations.iter().take(50) {
            println!("violation={}", v.description.replace(' ', "_"));
        }
    } else {
        print!("{report}");
    }
    report.violations.len()
}
