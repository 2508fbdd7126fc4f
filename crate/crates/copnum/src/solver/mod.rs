//! Exact k-cop game solving by retrograde analysis, plus dismantlability.
//!
//! Game rules: the cops pick a start multiset, the robber then picks any
//! vertex, and the cops move first. On its turn every piece moves within its
//! closed neighborhood (staying is allowed). The cops win as soon as a cop
//! and the robber share a vertex, after either side's move.

mod engine;
mod oracle;
mod rank;

use serde::Serialize;
use thiserror::Error;

use crate::board::{BoardGraph, VertexId};
pub use engine::GraphView;
pub use oracle::{CopOracle, RobberOracle};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("cop count must be between 1 and 4, got {0}")]
    BadCopCount(usize),
    #[error("graph with {0} vertices exceeds the solver's 4095-vertex packing limit")]
    GraphTooLarge(usize),
    #[error("state space of {states} states exceeds the budget of {budget}")]
    BudgetExceeded { states: u64, budget: u64 },
    #[error("cop oracle queried outside the cop-win region")]
    OutsideCopWin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    CopsToMove,
    RobberToMove,
}

/// A full game position: sorted cop multiset, robber square, side to move.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameState {
    pub cops: Vec<VertexId>,
    pub robber: VertexId,
    pub side: Side,
}

impl GameState {
    pub fn new(mut cops: Vec<VertexId>, robber: VertexId, side: Side) -> Self {
        cops.sort_unstable();
        GameState { cops, robber, side }
    }

    pub fn is_capture(&self) -> bool {
        self.cops.contains(&self.robber)
    }

    /// Packed identity for visited-state sets (requires V <= 4095, k <= 4).
    pub fn pack(&self) -> u64 {
        let mut p = (self.robber as u64) << 48
            | if self.side == Side::RobberToMove { 1u64 << 63 } else { 0 };
        for (i, &c) in self.cops.iter().enumerate() {
            p |= (c as u64) << (12 * i);
        }
        p
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub use_symmetry: bool,
    pub track_strategy: bool,
    pub state_budget: u64,
    /// Largest k that `cop_number` will attempt.
    pub max_k: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            use_symmetry: true,
            track_strategy: false,
            state_budget: 1 << 31,
            max_k: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub k: usize,
    pub cops_win: bool,
    /// Winning start multiset with the best worst-case capture time.
    pub optimal_start: Option<Vec<VertexId>>,
    /// Cop moves until capture under mutually optimal play.
    pub capture_time: Option<u32>,
    pub state_count: u64,
    pub peak_memory_estimate: u64,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct SolveResultJson {
    pub k: usize,
    pub cops_win: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimal_start: Option<Vec<[u16; 2]>>,
    pub capture_time: Option<u32>,
    pub state_count: u64,
}

impl SolveResult {
    pub fn to_json(&self, g: &BoardGraph) -> SolveResultJson {
        SolveResultJson {
            k: self.k,
            cops_win: self.cops_win,
            optimal_start: self.optimal_start.as_ref().map(|s| {
                s.iter()
                    .map(|&v| {
                        let c = g.coord(v);
                        [c.x, c.y]
                    })
                    .collect()
            }),
            capture_time: self.capture_time,
            state_count: self.state_count,
        }
    }
}

fn board_view(g: &BoardGraph) -> GraphView {
    let closed = closed_neighborhoods(g);
    let autos = g.automorphisms().into_iter().map(|s| s.perm).collect();
    GraphView { closed, autos }
}

fn closed_neighborhoods(g: &BoardGraph) -> Vec<Vec<VertexId>> {
    (0..g.num_vertices() as VertexId)
        .map(|v| {
            let mut c = g.neighbors(v).to_vec();
            c.push(v);
            c.sort_unstable();
            c
        })
        .collect()
}

/// View of the subgraph induced by `vertices` (sorted board ids), with the
/// board automorphisms that fix the component setwise, reindexed.
pub fn component_view(g: &BoardGraph, vertices: &[VertexId]) -> GraphView {
    debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
    let mut local = vec![VertexId::MAX; g.num_vertices()];
    for (i, &v) in vertices.iter().enumerate() {
        local[v as usize] = i as VertexId;
    }
    let closed = vertices
        .iter()
        .map(|&v| {
            let mut c: Vec<VertexId> = g
                .neighbors(v)
                .iter()
                .map(|&w| local[w as usize])
                .filter(|&w| w != VertexId::MAX)
                .collect();
            c.push(local[v as usize]);
            c.sort_unstable();
            c
        })
        .collect();
    let autos = g
        .automorphisms()
        .into_iter()
        .filter_map(|s| {
            let mut perm = Vec::with_capacity(vertices.len());
            for &v in vertices {
                let img = local[s.apply(v) as usize];
                if img == VertexId::MAX {
                    return None;
                }
                perm.push(img);
            }
            Some(perm)
        })
        .collect();
    GraphView { closed, autos }
}

/// View of an arbitrary adjacency list (no symmetries).
pub fn adjacency_view(n: usize, edges: &[(VertexId, VertexId)]) -> GraphView {
    let mut closed: Vec<Vec<VertexId>> = (0..n as VertexId).map(|v| vec![v]).collect();
    for &(a, b) in edges {
        closed[a as usize].push(b);
        closed[b as usize].push(a);
    }
    for c in &mut closed {
        c.sort_unstable();
        c.dedup();
    }
    GraphView {
        closed,
        autos: vec![(0..n as VertexId).collect()],
    }
}

/// Decide whether `k` cops win on `g` (which should be connected; see
/// `cop_number` for per-component work).
pub fn solve_k(g: &BoardGraph, k: usize, opts: &SolveOptions) -> Result<SolveResult, SolverError> {
    Ok(engine::solve(board_view(g), k, opts)?.result)
}

/// Like `solve_k` for any prepared graph view.
pub fn solve_view(view: GraphView, k: usize, opts: &SolveOptions) -> Result<SolveResult, SolverError> {
    Ok(engine::solve(view, k, opts)?.result)
}

/// Optimal-play oracles for both sides, backed by a tracked solve.
pub fn extract_strategies(
    g: &BoardGraph,
    k: usize,
    opts: &SolveOptions,
) -> Result<(CopOracle, RobberOracle), SolverError> {
    let opts = SolveOptions {
        track_strategy: true,
        ..*opts
    };
    oracle::from_solved(engine::solve(board_view(g), k, &opts)?)
}

pub fn extract_strategies_view(
    view: GraphView,
    k: usize,
    opts: &SolveOptions,
) -> Result<(CopOracle, RobberOracle), SolverError> {
    oracle::from_solved(engine::solve(view, k, opts)?)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComponentCopNumber {
    pub size: usize,
    /// Smallest board vertex of the component, as a coordinate.
    pub anchor: [u16; 2],
    /// None when no k within budget and `max_k` decided the component.
    pub cop_number: Option<usize>,
    /// Why the component is unresolved, when it is.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unresolved: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CopNumberReport {
    pub per_component: Vec<ComponentCopNumber>,
    /// Sum over components; None when any component is unresolved.
    pub additive_total: Option<usize>,
}

/// Per-component cop numbers and their additive total.
pub fn cop_number(g: &BoardGraph, opts: &SolveOptions) -> CopNumberReport {
    let mut per_component = Vec::new();
    for comp in g.components() {
        let anchor = g.coord(comp[0]);
        let mut found = None;
        let mut unresolved = None;
        for k in 1..=opts.max_k {
            match solve_view(component_view(g, &comp), k, opts) {
                Ok(res) if res.cops_win => {
                    found = Some(k);
                    break;
                }
                Ok(_) => {}
                Err(e) => {
                    unresolved = Some(e.to_string());
                    break;
                }
            }
        }
        if found.is_none() && unresolved.is_none() {
            unresolved = Some(format!("no win with k <= {}", opts.max_k));
        }
        per_component.push(ComponentCopNumber {
            size: comp.len(),
            anchor: [anchor.x, anchor.y],
            cop_number: found,
            unresolved,
        });
    }
    let additive_total = per_component
        .iter()
        .map(|c| c.cop_number)
        .sum::<Option<usize>>();
    CopNumberReport {
        per_component,
        additive_total,
    }
}

/// Dismantlability test: repeatedly delete a vertex `v` dominated by a
/// neighbor `u` (`N[v] ⊆ N[u]`); the graph is dismantlable iff one vertex
/// remains. Returns the removal sequence as a certificate.
pub fn is_dismantlable(g: &BoardGraph) -> (bool, Vec<VertexId>) {
    let v = g.num_vertices();
    let words = v.div_ceil(64);
    // closed-neighborhood bitsets, updated as vertices are removed
    let mut closed: Vec<u64> = vec![0; v * words];
    for a in 0..v {
        closed[a * words + a / 64] |= 1 << (a % 64);
        for &b in g.neighbors(a as VertexId) {
            closed[a * words + b as usize / 64] |= 1 << (b % 64);
        }
    }
    let mut alive: Vec<u64> = vec![!0u64; words];
    if !v.is_multiple_of(64) {
        alive[words - 1] = (1u64 << (v % 64)) - 1;
    }
    let mut remaining = v;
    let mut order = Vec::new();
    let mut progress = true;
    while remaining > 1 && progress {
        progress = false;
        for a in 0..v {
            if alive[a / 64] >> (a % 64) & 1 == 0 {
                continue;
            }
            // a dominating vertex must itself be a neighbor of a
            let dominated = g.neighbors(a as VertexId).iter().any(|&u| {
                let u = u as usize;
                alive[u / 64] >> (u % 64) & 1 == 1
                    && (0..words).all(|w| {
                        closed[a * words + w] & alive[w] & !closed[u * words + w] == 0
                    })
            });
            if dominated {
                alive[a / 64] &= !(1 << (a % 64));
                order.push(a as VertexId);
                remaining -= 1;
                progress = true;
                if remaining == 1 {
                    break;
                }
            }
        }
    }
    (remaining == 1, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{BoardGraph, Coord, DirectionSet, Piece};

    fn cycle(n: usize) -> GraphView {
        let edges: Vec<(VertexId, VertexId)> = (0..n)
            .map(|i| (i as VertexId, ((i + 1) % n) as VertexId))
            .collect();
        adjacency_view(n, &edges)
    }

    fn path(n: usize) -> GraphView {
        let edges: Vec<(VertexId, VertexId)> = (0..n - 1)
            .map(|i| (i as VertexId, (i + 1) as VertexId))
            .collect();
        adjacency_view(n, &edges)
    }

    fn complete(n: usize) -> GraphView {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a as VertexId, b as VertexId));
            }
        }
        adjacency_view(n, &edges)
    }

    #[test]
    fn paths_and_complete_graphs_are_cop_win() {
        let opts = SolveOptions::default();
        for n in 1..=20 {
            assert!(solve_view(path(n.max(1)), 1, &opts).unwrap().cops_win, "P_{n}");
            assert!(solve_view(complete(n), 1, &opts).unwrap().cops_win, "K_{n}");
        }
    }

    #[test]
    fn cycles_need_two_cops() {
        let opts = SolveOptions::default();
        for n in 4..=20 {
            assert!(!solve_view(cycle(n), 1, &opts).unwrap().cops_win, "C_{n} k=1");
            assert!(solve_view(cycle(n), 2, &opts).unwrap().cops_win, "C_{n} k=2");
        }
        assert!(solve_view(cycle(3), 1, &opts).unwrap().cops_win);
    }

    #[test]
    fn single_vertex_capture_time_zero() {
        let g = BoardGraph::preset(Piece::King, 1).unwrap();
        let res = solve_k(&g, 1, &SolveOptions::default()).unwrap();
        assert!(res.cops_win);
        assert_eq!(res.capture_time, Some(0));
        assert_eq!(res.optimal_start, Some(vec![0]));
    }

    #[test]
    fn path_capture_time_matches_pursuit_distance() {
        // one cop starting mid-path catches in ceil((n-1)/2)... computed by
        // hand for P_5: start center (2), worst robber start distance 2,
        // robber retreats once, captured in 2 cop moves.
        let res = solve_view(path(5), 1, &SolveOptions::default()).unwrap();
        assert!(res.cops_win);
        assert_eq!(res.optimal_start, Some(vec![2]));
        assert_eq!(res.capture_time, Some(2));
    }

    #[test]
    fn zero_cops_rejected() {
        let g = BoardGraph::preset(Piece::King, 3).unwrap();
        assert!(matches!(
            solve_k(&g, 0, &SolveOptions::default()),
            Err(SolverError::BadCopCount(0))
        ));
    }

    #[test]
    fn budget_error_names_the_bound() {
        let g = BoardGraph::preset(Piece::Queen, 8).unwrap();
        let opts = SolveOptions {
            state_budget: 1000,
            ..Default::default()
        };
        match solve_k(&g, 2, &opts) {
            Err(SolverError::BudgetExceeded { states, budget }) => {
                assert_eq!(budget, 1000);
                assert!(states > budget);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn knight5_two_cop_win_from_central_start() {
        let g = BoardGraph::preset(Piece::Knight, 5).unwrap();
        let res = solve_k(&g, 2, &SolveOptions::default()).unwrap();
        assert!(res.cops_win);
        let (cop_oracle, _) = extract_strategies(&g, 2, &SolveOptions::default()).unwrap();
        let start = vec![g.vertex_id(Coord::new(3, 3)), g.vertex_id(Coord::new(4, 4))];
        assert!(cop_oracle.is_winning_start(&start));
    }

    #[test]
    fn knight3_cycle_component_needs_two_cops() {
        let g = BoardGraph::preset(Piece::Knight, 3).unwrap();
        let comps = g.components();
        let view = component_view(&g, &comps[0]);
        assert!(!solve_view(view, 1, &SolveOptions::default()).unwrap().cops_win);
        let view = component_view(&g, &comps[0]);
        assert!(solve_view(view, 2, &SolveOptions::default()).unwrap().cops_win);
    }

    #[test]
    fn knight3_cop_number_report() {
        let g = BoardGraph::preset(Piece::Knight, 3).unwrap();
        let report = cop_number(&g, &SolveOptions::default());
        let values: Vec<Option<usize>> =
            report.per_component.iter().map(|c| c.cop_number).collect();
        assert_eq!(values, vec![Some(2), Some(1)]);
        assert_eq!(report.additive_total, Some(3));
    }

    #[test]
    fn king_graphs_are_cop_win_and_dismantlable() {
        for n in [1u16, 2, 4, 6] {
            let g = BoardGraph::preset(Piece::King, n).unwrap();
            assert!(solve_k(&g, 1, &SolveOptions::default()).unwrap().cops_win);
            let (ok, order) = is_dismantlable(&g);
            assert!(ok);
            assert_eq!(order.len(), g.num_vertices() - 1);
        }
    }

    #[test]
    fn four_cycle_not_dismantlable() {
        let g = BoardGraph::build_royal(2, DirectionSet::from_pairs(&[(1, 0), (0, 1)]).unwrap())
            .unwrap();
        // rook graph on 2x2 is C_4
        assert_eq!(g.edges().len(), 4);
        let (ok, _) = is_dismantlable(&g);
        assert!(!ok);
    }

    #[test]
    fn symmetry_toggle_is_sound() {
        for piece in [Piece::Knight, Piece::King, Piece::Queen, Piece::Rook] {
            for n in 2..=5u16 {
                let g = BoardGraph::preset(piece, n).unwrap();
                for k in 1..=2usize {
                    let on = solve_k(&g, k, &SolveOptions { use_symmetry: true, ..Default::default() }).unwrap();
                    let off = solve_k(&g, k, &SolveOptions { use_symmetry: false, ..Default::default() }).unwrap();
                    assert_eq!(on.cops_win, off.cops_win, "{piece:?} n={n} k={k}");
                    assert_eq!(on.capture_time, off.capture_time, "{piece:?} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn monotone_in_k() {
        for piece in [Piece::Knight, Piece::King] {
            for n in 2..=4u16 {
                let g = BoardGraph::preset(piece, n).unwrap();
                let mut prev = false;
                for k in 1..=3usize {
                    let win = solve_k(&g, k, &SolveOptions::default()).unwrap().cops_win;
                    assert!(!prev || win, "{piece:?} n={n} k={k}");
                    prev = win;
                }
            }
        }
    }
}
