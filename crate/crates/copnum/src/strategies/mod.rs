//! Named cop and robber strategies and a deterministic simulation engine.
//!
//! A strategy owns its side's placement and per-turn move choice; the
//! simulator adjudicates legality, records a transcript, and maintains the
//! visited-state set the greedy tie-breaking consults.

pub mod greedy;
pub mod knight;
pub mod region;

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::board::{BoardGraph, Coord, Mode, Piece, VertexId};
use crate::solver::{extract_strategies, CopOracle, GameState, RobberOracle, Side, SolveOptions};

pub use greedy::{phi, GreedyCops, GreedyRobber};
pub use knight::{degree4_subgraph, four_cycle, Degree4Robber, DiagonalFormation, FourCycleRobber, SquareFormation};
pub use region::{
    evasion_region, evasion_simulation_board, guarding_threshold, octagon_minimal_n,
    octagon_region, GuardingCops, RegionRobber,
};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("strategy {strategy} returned an illegal move: {detail}")]
    IllegalMove { strategy: String, detail: String },
    #[error("cop strategy {strategy} plays {have} cops, requested {want}")]
    ArityMismatch {
        strategy: String,
        have: usize,
        want: usize,
    },
    #[error("unknown strategy name {0:?}")]
    UnknownStrategy(String),
    #[error("strategy {name} does not apply here: {detail}")]
    Inapplicable { name: String, detail: String },
    #[error(transparent)]
    Solver(#[from] crate::solver::SolverError),
    #[error(transparent)]
    Region(#[from] region::RegionError),
}

/// Read-only per-turn context handed to strategies.
#[derive(Default)]
pub struct SimContext {
    /// Packed robber-to-move states seen so far this game.
    pub visited: HashSet<u64>,
    /// The robber's last move vector, if it moved.
    pub last_robber_step: Option<(i32, i32)>,
    /// 1-based turn number.
    pub turn: u32,
}

pub trait CopStrategy {
    fn name(&self) -> &'static str;
    fn arity(&self) -> usize;
    fn place(&mut self, g: &BoardGraph) -> Vec<VertexId>;
    fn cop_move(&mut self, g: &BoardGraph, state: &GameState, ctx: &SimContext) -> Vec<VertexId>;
}

/// A robber decision: a move, or a move made knowing capture is forced.
pub enum RobberReply {
    Move(VertexId),
    Surrender(VertexId),
}

pub trait RobberStrategy {
    fn name(&self) -> &'static str;
    fn place(&mut self, g: &BoardGraph, cops: &[VertexId]) -> VertexId;
    fn robber_move(&mut self, g: &BoardGraph, state: &GameState, ctx: &SimContext) -> RobberReply;
    /// True for confinement strategies whose survival argument does not
    /// depend on the turn cap.
    fn immortal(&self) -> bool {
        false
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GameResult {
    Captured { turn: u32 },
    TurnCapReached { turn: u32 },
    RobberImmortal { turn: u32 },
}

impl GameResult {
    pub fn is_captured(&self) -> bool {
        matches!(self, GameResult::Captured { .. })
    }

    pub fn turn(&self) -> u32 {
        match *self {
            GameResult::Captured { turn }
            | GameResult::TurnCapReached { turn }
            | GameResult::RobberImmortal { turn } => turn,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TurnRecord {
    pub cops_before: Vec<VertexId>,
    pub robber_before: VertexId,
    pub cop_move: Vec<VertexId>,
    /// None when the cops captured this turn.
    pub robber_move: Option<VertexId>,
    /// Shortest-diagonal length at the robber-to-move state.
    pub phi: u16,
    /// |R_t|: robber's closed neighborhood minus cop-occupied squares.
    pub r_size: u32,
}

#[derive(Clone, Debug)]
pub struct Transcript {
    pub graph: String,
    pub n: u16,
    pub cop_strategy: String,
    pub robber_strategy: String,
    pub initial_cops: Vec<VertexId>,
    pub initial_robber: VertexId,
    pub turns: Vec<TurnRecord>,
    pub result: GameResult,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct TurnJson {
    cops: Vec<[u16; 2]>,
    robber: [u16; 2],
    cop_move: Vec<[u16; 2]>,
    robber_move: Option<[u16; 2]>,
    phi: u16,
    r_size: u32,
}

#[derive(Serialize)]
struct ResultJson {
    #[serde(rename = "type")]
    kind: &'static str,
    turn: u32,
}

#[derive(Serialize)]
struct TranscriptJson {
    graph: String,
    cops: String,
    robber: String,
    turns: Vec<TurnJson>,
    result: ResultJson,
}

impl Transcript {
    pub fn to_json(&self, g: &BoardGraph) -> serde_json::Value {
        let xy = |v: VertexId| {
            let c = g.coord(v);
            [c.x, c.y]
        };
        let turns = self
            .turns
            .iter()
            .map(|t| TurnJson {
                cops: t.cops_before.iter().copied().map(xy).collect(),
                robber: xy(t.robber_before),
                cop_move: t.cop_move.iter().copied().map(xy).collect(),
                robber_move: t.robber_move.map(xy),
                phi: t.phi,
                r_size: t.r_size,
            })
            .collect();
        let kind = match self.result {
            GameResult::Captured { .. } => "captured",
            GameResult::TurnCapReached { .. } => "cap",
            GameResult::RobberImmortal { .. } => "immortal",
        };
        serde_json::to_value(TranscriptJson {
            graph: self.graph.clone(),
            cops: self.cop_strategy.clone(),
            robber: self.robber_strategy.clone(),
            turns,
            result: ResultJson {
                kind,
                turn: self.result.turn(),
            },
        })
        .expect("transcript serialization")
    }

    pub const CSV_HEADER: &'static str = "n,k,cops,robber,result,turns,maxPhi,minPhi";

    /// One CSV summary row per game.
    pub fn csv_row(&self) -> String {
        let phis: Vec<u16> = self.turns.iter().map(|t| t.phi).collect();
        let result = match self.result {
            GameResult::Captured { .. } => "captured",
            GameResult::TurnCapReached { .. } => "cap",
            GameResult::RobberImmortal { .. } => "immortal",
        };
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.initial_cops.len(),
            self.cop_strategy,
            self.robber_strategy,
            result,
            self.result.turn(),
            phis.iter().max().copied().unwrap_or(0),
            phis.iter().min().copied().unwrap_or(0),
        )
    }
}

/// True when the joint multiset move is realizable: some assignment of
/// destinations to cops moves every cop within its closed neighborhood.
pub fn joint_move_legal(g: &BoardGraph, from: &[VertexId], to: &[VertexId]) -> bool {
    if from.len() != to.len() {
        return false;
    }
    fn matching(g: &BoardGraph, from: &[VertexId], to: &[VertexId], used: &mut [bool]) -> bool {
        let i = used.iter().filter(|&&u| u).count();
        if i == from.len() {
            return true;
        }
        for j in 0..to.len() {
            if used[j] || (to[j] != from[i] && !g.adjacent(from[i], to[j])) {
                continue;
            }
            used[j] = true;
            if matching(g, from, to, used) {
                return true;
            }
            used[j] = false;
        }
        false
    }
    matching(g, from, to, &mut vec![false; from.len()])
}

/// Optional fixed placements overriding the strategies' own.
#[derive(Clone, Debug, Default)]
pub struct Placements {
    pub cops: Option<Vec<Coord>>,
    pub robber: Option<Coord>,
}

/// Plays a full game: placement, then alternating turns with the cops
/// moving first. Capture is checked after either side's move.
pub fn simulate(
    g: &BoardGraph,
    cops: &mut dyn CopStrategy,
    robber: &mut dyn RobberStrategy,
    placements: &Placements,
    turn_cap: u32,
) -> Result<Transcript, SimError> {
    assert!(turn_cap >= 1);
    let mut cop_pos: Vec<VertexId> = match &placements.cops {
        Some(cs) => cs.iter().map(|&c| g.vertex_id(c)).collect(),
        None => cops.place(g),
    };
    cop_pos.sort_unstable();
    if cop_pos.len() != cops.arity() {
        return Err(SimError::ArityMismatch {
            strategy: cops.name().into(),
            have: cop_pos.len(),
            want: cops.arity(),
        });
    }
    let mut robber_pos = match placements.robber {
        Some(c) => g.vertex_id(c),
        None => robber.place(g, &cop_pos),
    };

    let mut ctx = SimContext::default();
    let mut turns = Vec::new();
    let mut surrendered = false;
    let mut result = None;

    if cop_pos.contains(&robber_pos) {
        result = Some(GameResult::Captured { turn: 0 });
    }

    let mut turn = 0;
    while result.is_none() && turn < turn_cap {
        turn += 1;
        ctx.turn = turn;
        let before = GameState::new(cop_pos.clone(), robber_pos, Side::CopsToMove);
        let mut mv = cops.cop_move(g, &before, &ctx);
        mv.sort_unstable();
        if !joint_move_legal(g, &cop_pos, &mv) {
            return Err(SimError::IllegalMove {
                strategy: cops.name().into(),
                detail: format!("cops {:?} cannot reach {:?}", cop_pos, mv),
            });
        }
        let cops_before = std::mem::replace(&mut cop_pos, mv);
        let after_cops = GameState::new(cop_pos.clone(), robber_pos, Side::RobberToMove);
        ctx.visited.insert(after_cops.pack());

        let phi_now = phi(g.n(), g.coord(robber_pos));
        let r_size = g
            .neighbors(robber_pos)
            .iter()
            .chain([&robber_pos])
            .filter(|v| !cop_pos.contains(v))
            .count() as u32;

        if cop_pos.contains(&robber_pos) {
            turns.push(TurnRecord {
                cops_before,
                robber_before: robber_pos,
                cop_move: cop_pos.clone(),
                robber_move: None,
                phi: phi_now,
                r_size,
            });
            result = Some(GameResult::Captured { turn });
            break;
        }

        let reply = robber.robber_move(g, &after_cops, &ctx);
        let dest = match reply {
            RobberReply::Move(v) => v,
            RobberReply::Surrender(v) => {
                surrendered = true;
                v
            }
        };
        if dest != robber_pos && !g.adjacent(robber_pos, dest) {
            return Err(SimError::IllegalMove {
                strategy: robber.name().into(),
                detail: format!("robber {:?} cannot reach {:?}", robber_pos, dest),
            });
        }
        let from = g.coord(robber_pos);
        let to = g.coord(dest);
        ctx.last_robber_step = (dest != robber_pos)
            .then(|| (to.x as i32 - from.x as i32, to.y as i32 - from.y as i32));
        let robber_before = std::mem::replace(&mut robber_pos, dest);

        turns.push(TurnRecord {
            cops_before,
            robber_before,
            cop_move: cop_pos.clone(),
            robber_move: Some(dest),
            phi: phi_now,
            r_size,
        });
        if cop_pos.contains(&robber_pos) {
            result = Some(GameResult::Captured { turn });
        }
    }

    let result = result.unwrap_or(if robber.immortal() && !surrendered {
        GameResult::RobberImmortal { turn: turn_cap }
    } else {
        GameResult::TurnCapReached { turn: turn_cap }
    });

    Ok(Transcript {
        graph: g.descriptor(),
        n: g.n(),
        cop_strategy: cops.name().into(),
        robber_strategy: robber.name().into(),
        initial_cops: match turns.first() {
            Some(t) => t.cops_before.clone(),
            None => cop_pos.clone(),
        },
        initial_robber: turns.first().map_or(robber_pos, |t| t.robber_before),
        turns,
        result,
    })
}

/// Exact-play cops backed by the solver; falls back to a distance chase
/// outside the cop-win region.
pub struct OracleCops {
    k: usize,
    oracle: CopOracle,
}

impl OracleCops {
    pub fn new(g: &BoardGraph, k: usize, opts: &SolveOptions) -> Result<Self, SimError> {
        let (oracle, _) = extract_strategies(g, k, opts)?;
        Ok(OracleCops { k, oracle })
    }
}

impl CopStrategy for OracleCops {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn arity(&self) -> usize {
        self.k
    }

    fn place(&mut self, g: &BoardGraph) -> Vec<VertexId> {
        match &self.oracle.result().optimal_start {
            Some(s) => s.clone(),
            None => greedy::central_diagonal(g.n(), self.k)
                .into_iter()
                .map(|c| g.vertex_id(c))
                .collect(),
        }
    }

    fn cop_move(&mut self, g: &BoardGraph, state: &GameState, _ctx: &SimContext) -> Vec<VertexId> {
        if let Ok(mv) = self.oracle.joint_move(&state.cops, state.robber) {
            return mv;
        }
        // outside the winning region: each cop greedily closes Chebyshev
        // distance
        let rc = g.coord(state.robber);
        let mut mv: Vec<VertexId> = state
            .cops
            .iter()
            .map(|&c| {
                g.neighbors(c)
                    .iter()
                    .copied()
                    .chain([c])
                    .min_by_key(|&v| {
                        let p = g.coord(v);
                        let d = (p.x as i32 - rc.x as i32)
                            .abs()
                            .max((p.y as i32 - rc.y as i32).abs());
                        (d, v)
                    })
                    .unwrap()
            })
            .collect();
        mv.sort_unstable();
        mv
    }
}

/// Exact-play robber backed by the solver.
pub struct OracleRobber {
    oracle: RobberOracle,
}

impl OracleRobber {
    pub fn new(g: &BoardGraph, k: usize, opts: &SolveOptions) -> Result<Self, SimError> {
        let (_, oracle) = extract_strategies(g, k, opts)?;
        Ok(OracleRobber { oracle })
    }
}

impl RobberStrategy for OracleRobber {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn place(&mut self, _g: &BoardGraph, cops: &[VertexId]) -> VertexId {
        self.oracle.best_placement(cops)
    }

    fn robber_move(&mut self, _g: &BoardGraph, state: &GameState, _ctx: &SimContext) -> RobberReply {
        match self.oracle.best_move(&state.cops, state.robber) {
            Some(v) => RobberReply::Move(v),
            None => RobberReply::Surrender(state.robber),
        }
    }
}

/// Builds a cop strategy from its catalog name. `k` is the cop count for
/// arity-parametric strategies; fixed-arity strategies reject a mismatch.
pub fn make_cop_strategy(
    name: &str,
    k: Option<usize>,
    g: &BoardGraph,
    opts: &SolveOptions,
) -> Result<Box<dyn CopStrategy>, SimError> {
    let want = |fixed: usize| -> Result<(), SimError> {
        match k {
            Some(kk) if kk != fixed => Err(SimError::ArityMismatch {
                strategy: name.into(),
                have: fixed,
                want: kk,
            }),
            _ => Ok(()),
        }
    };
    match name {
        "greedy" => Ok(Box::new(GreedyCops::new(k.unwrap_or(3)))),
        "oracle" => Ok(Box::new(OracleCops::new(g, k.unwrap_or(1), opts)?)),
        "square_formation" | "knight_square_formation" => {
            require_piece(g, Piece::Knight, name)?;
            want(4)?;
            Ok(Box::new(SquareFormation))
        }
        "diagonal_formation" | "knight_diagonal_formation" => {
            require_piece(g, Piece::Knight, name)?;
            want(3)?;
            Ok(Box::new(DiagonalFormation::new(opts.state_budget)))
        }
        "guarding" | "royal_guarding_cops" => {
            let s = GuardingCops::new(g)?;
            want(s.arity())?;
            Ok(Box::new(s))
        }
        other => Err(SimError::UnknownStrategy(other.into())),
    }
}

/// Builds a robber strategy from its catalog name. `cop_k` is the opposing
/// cop count, needed by the oracle robber.
pub fn make_robber_strategy(
    name: &str,
    cop_k: usize,
    g: &BoardGraph,
    opts: &SolveOptions,
) -> Result<Box<dyn RobberStrategy>, SimError> {
    match name {
        "greedy" => Ok(Box::new(GreedyRobber)),
        "oracle" => Ok(Box::new(OracleRobber::new(g, cop_k, opts)?)),
        "four_cycle" | "robber_four_cycle" => {
            require_piece(g, Piece::Knight, name)?;
            Ok(Box::new(FourCycleRobber::new(g)))
        }
        "degree4" | "degree4_subgraph" | "robber_degree4_subgraph" => {
            require_piece(g, Piece::Knight, name)?;
            Ok(Box::new(Degree4Robber::new(g)))
        }
        "octagon" | "robber_octagon" => Ok(Box::new(RegionRobber::octagon(g, 8)?)),
        "evasion" | "evasion_region" => Ok(Box::new(RegionRobber::evasion(g)?)),
        other => Err(SimError::UnknownStrategy(other.into())),
    }
}

fn require_piece(g: &BoardGraph, piece: Piece, name: &str) -> Result<(), SimError> {
    let ok = match piece {
        Piece::Knight => {
            g.mode() == Mode::Animal
                && g.steps().len() == crate::board::KNIGHT_STEPS.len()
                && crate::board::KNIGHT_STEPS.iter().all(|&(dx, dy)| {
                    g.steps().contains(&crate::board::Step::new(dx, dy).unwrap())
                })
        }
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(SimError::Inapplicable {
            name: name.into(),
            detail: format!("needs a {piece:?} graph, got {}", g.descriptor()),
        })
    }
}
