//! Knight-graph strategies: cop formations and confined robbers.

use crate::board::{BoardGraph, Coord, VertexId};
use crate::solver::{extract_strategies, CopOracle, GameState, SolveOptions};
use crate::strategies::{CopStrategy, RobberReply, RobberStrategy, SimContext};

const KNIGHT_VECS: [(i32, i32); 8] = [
    (1, 2),
    (2, 1),
    (2, -1),
    (1, -2),
    (-1, -2),
    (-2, -1),
    (-2, 1),
    (-1, 2),
];
const UNIT_VECS: [(i32, i32); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

fn on_board(n: u16, x: i32, y: i32) -> bool {
    x >= 1 && x <= n as i32 && y >= 1 && y <= n as i32
}

/// Translate every cop by `t`, or None if someone leaves the board.
fn translate(g: &BoardGraph, cops: &[VertexId], t: (i32, i32)) -> Option<Vec<VertexId>> {
    let n = g.n();
    let mut out = Vec::with_capacity(cops.len());
    for &c in cops {
        let p = g.coord(c);
        let (x, y) = (p.x as i32 + t.0, p.y as i32 + t.1);
        if !on_board(n, x, y) {
            return None;
        }
        out.push(g.vertex_id(Coord::new(x as u16, y as u16)));
    }
    out.sort_unstable();
    Some(out)
}

/// If some cop can land on the robber, do it and hold everyone else.
fn immediate_capture(g: &BoardGraph, cops: &[VertexId], r: VertexId) -> Option<Vec<VertexId>> {
    for (i, &c) in cops.iter().enumerate() {
        if g.adjacent(c, r) || c == r {
            let mut mv = cops.to_vec();
            mv[i] = r;
            mv.sort_unstable();
            return Some(mv);
        }
    }
    None
}

fn formation_center(g: &BoardGraph, cops: &[VertexId]) -> (f64, f64) {
    let k = cops.len() as f64;
    let (mut sx, mut sy) = (0.0, 0.0);
    for &c in cops {
        let p = g.coord(c);
        sx += p.x as f64;
        sy += p.y as f64;
    }
    (sx / k, sy / k)
}

/// Distance key used by the formation chase: squared Euclidean distance
/// from the formation center to the robber, times 4 to stay integral.
fn chase_key(g: &BoardGraph, cops: &[VertexId], r: VertexId) -> i64 {
    let (cx, cy) = formation_center(g, cops);
    let p = g.coord(r);
    let (dx, dy) = (2.0 * (p.x as f64 - cx), 2.0 * (p.y as f64 - cy));
    (dx * dx + dy * dy) as i64
}

/// Four cops in a 2x2 block that mimics the robber and closes distance.
pub struct SquareFormation;

impl CopStrategy for SquareFormation {
    fn name(&self) -> &'static str {
        "square_formation"
    }

    fn arity(&self) -> usize {
        4
    }

    fn place(&mut self, g: &BoardGraph) -> Vec<VertexId> {
        // the four most central squares; on odd boards the block's lower
        // left corner sits on the central vertex
        let n = g.n();
        let m = if n.is_multiple_of(2) { n / 2 } else { n.div_ceil(2) };
        let m = m.min(n - 1);
        [(0, 0), (0, 1), (1, 0), (1, 1)]
            .iter()
            .map(|&(dx, dy)| g.vertex_id(Coord::new(m + dx, m + dy)))
            .collect()
    }

    fn cop_move(&mut self, g: &BoardGraph, state: &GameState, ctx: &SimContext) -> Vec<VertexId> {
        if let Some(mv) = immediate_capture(g, &state.cops, state.robber) {
            return mv;
        }
        // knight translations keep the block intact; mimicking the robber's
        // last move breaks distance ties
        let mut best: Option<(i64, i32, u64)> = None;
        let mut best_move = state.cops.clone();
        for (vi, &t) in [(0, 0)].iter().chain(KNIGHT_VECS.iter()).enumerate() {
            let Some(mv) = translate(g, &state.cops, t) else {
                continue;
            };
            let mimic = i32::from(ctx.last_robber_step != Some(t));
            let key = (
                chase_key(g, &mv, state.robber),
                mimic,
                vi as u64,
            );
            if best.is_none_or(|b| key < b) {
                best = Some(key);
                best_move = mv;
            }
        }
        best_move
    }
}

/// Three cops on a short diagonal; the formation also shifts by unit
/// vectors, realized by the cops trading targets with knight moves. Ends
/// with the exact oracle once the robber is close and the board is small
/// enough to solve.
pub struct DiagonalFormation {
    oracle: Option<Option<CopOracle>>,
    state_budget: u64,
}

impl DiagonalFormation {
    pub fn new(state_budget: u64) -> Self {
        DiagonalFormation {
            oracle: None,
            state_budget,
        }
    }

    fn oracle(&mut self, g: &BoardGraph) -> Option<&CopOracle> {
        self.oracle
            .get_or_insert_with(|| {
                let opts = SolveOptions {
                    state_budget: self.state_budget,
                    ..Default::default()
                };
                extract_strategies(g, 3, &opts).ok().map(|(c, _)| c)
            })
            .as_ref()
    }
}

impl CopStrategy for DiagonalFormation {
    fn name(&self) -> &'static str {
        "diagonal_formation"
    }

    fn arity(&self) -> usize {
        3
    }

    fn place(&mut self, g: &BoardGraph) -> Vec<VertexId> {
        let m = g.n().div_ceil(2);
        [(m - 1, m - 1), (m, m), (m + 1, m + 1)]
            .iter()
            .map(|&(x, y)| g.vertex_id(Coord::new(x, y)))
            .collect()
    }

    fn cop_move(&mut self, g: &BoardGraph, state: &GameState, _ctx: &SimContext) -> Vec<VertexId> {
        if let Some(mv) = immediate_capture(g, &state.cops, state.robber) {
            return mv;
        }
        // endgame: robber inside the formation's guarded hull
        let (cx, cy) = formation_center(g, &state.cops);
        let rp = g.coord(state.robber);
        let close = (rp.x as f64 - cx).abs() <= 3.0 && (rp.y as f64 - cy).abs() <= 3.0;
        if close {
            if let Some(oracle) = self.oracle(g) {
                if let Ok(mv) = oracle.joint_move(&state.cops, state.robber) {
                    return mv;
                }
            }
        }
        let mut best: Option<(i64, i64, u64)> = None;
        let mut best_move = state.cops.clone();
        for (vi, &t) in [(0, 0)]
            .iter()
            .chain(KNIGHT_VECS.iter())
            .chain(UNIT_VECS.iter())
            .enumerate()
        {
            let Some(mv) = translate(g, &state.cops, t) else {
                continue;
            };
            let step = (t.0.abs() + t.1.abs()) as i64;
            let key = (chase_key(g, &mv, state.robber), step, vi as u64);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
                best_move = mv;
            }
        }
        best_move
    }
}

/// The fixed 4-cycle the robber rides against one cop.
pub fn four_cycle(n: u16) -> Vec<Coord> {
    assert!(n >= 4, "the 4-cycle needs a 4x4 board");
    let t = (n - 4) / 2;
    [(2, 1), (1, 3), (3, 4), (4, 2)]
        .iter()
        .map(|&(x, y)| Coord::new(x + t, y + t))
        .collect()
}

/// Robber that stays on a fixed knight 4-cycle, stepping away from the cop.
pub struct FourCycleRobber {
    cycle: Vec<VertexId>,
}

impl FourCycleRobber {
    pub fn new(g: &BoardGraph) -> Self {
        FourCycleRobber {
            cycle: four_cycle(g.n()).into_iter().map(|c| g.vertex_id(c)).collect(),
        }
    }
}

fn covered(g: &BoardGraph, cops: &[VertexId], v: VertexId) -> bool {
    cops.iter().any(|&c| c == v || g.adjacent(c, v))
}

impl RobberStrategy for FourCycleRobber {
    fn name(&self) -> &'static str {
        "four_cycle"
    }

    fn place(&mut self, g: &BoardGraph, cops: &[VertexId]) -> VertexId {
        *self
            .cycle
            .iter()
            .find(|&&v| !covered(g, cops, v))
            .unwrap_or(&self.cycle[0])
    }

    fn robber_move(&mut self, g: &BoardGraph, state: &GameState, _ctx: &SimContext) -> RobberReply {
        let r = state.robber;
        if !covered(g, &state.cops, r) {
            return RobberReply::Move(r);
        }
        let mut options: Vec<VertexId> = self
            .cycle
            .iter()
            .copied()
            .filter(|&v| (v == r || g.adjacent(v, r)) && !state.cops.contains(&v))
            .collect();
        options.sort_unstable();
        match options.iter().find(|&&v| !covered(g, &state.cops, v)) {
            Some(&v) => RobberReply::Move(v),
            None => RobberReply::Surrender(*options.first().unwrap_or(&r)),
        }
    }

    fn immortal(&self) -> bool {
        true
    }
}

/// The 16-vertex degree-4 induced knight subgraph, centered on the board.
pub fn degree4_subgraph(n: u16) -> Vec<Coord> {
    assert!(n >= 7, "the degree-4 subgraph needs a 7x7 board");
    let t = (n - 7) / 2;
    [
        (2, 2),
        (4, 1),
        (6, 2),
        (7, 4),
        (6, 6),
        (4, 7),
        (2, 6),
        (1, 4),
        (3, 3),
        (4, 5),
        (5, 3),
        (3, 4),
        (5, 5),
        (4, 3),
        (3, 5),
        (5, 4),
    ]
    .iter()
    .map(|&(x, y)| Coord::new(x + t, y + t))
    .collect()
}

/// Robber confined to the degree-4 subgraph against two cops.
pub struct Degree4Robber {
    region: Vec<VertexId>,
}

impl Degree4Robber {
    pub fn new(g: &BoardGraph) -> Self {
        let mut region: Vec<VertexId> = degree4_subgraph(g.n())
            .into_iter()
            .map(|c| g.vertex_id(c))
            .collect();
        region.sort_unstable();
        Degree4Robber { region }
    }

    fn in_region(&self, v: VertexId) -> bool {
        self.region.binary_search(&v).is_ok()
    }

    fn escape_count(&self, g: &BoardGraph, cops: &[VertexId], v: VertexId) -> usize {
        g.neighbors(v)
            .iter()
            .filter(|&&w| self.in_region(w) && !covered(g, cops, w))
            .count()
    }
}

impl RobberStrategy for Degree4Robber {
    fn name(&self) -> &'static str {
        "degree4_subgraph"
    }

    fn place(&mut self, g: &BoardGraph, cops: &[VertexId]) -> VertexId {
        *self
            .region
            .iter()
            .filter(|&&v| !covered(g, cops, v))
            .max_by_key(|&&v| (self.escape_count(g, cops, v), std::cmp::Reverse(v)))
            .unwrap_or(&self.region[0])
    }

    fn robber_move(&mut self, g: &BoardGraph, state: &GameState, _ctx: &SimContext) -> RobberReply {
        let r = state.robber;
        if !covered(g, &state.cops, r) {
            return RobberReply::Move(r);
        }
        let options: Vec<VertexId> = g
            .neighbors(r)
            .iter()
            .copied()
            .filter(|&v| self.in_region(v) && !state.cops.contains(&v))
            .collect();
        let safe = options
            .iter()
            .copied()
            .filter(|&v| !covered(g, &state.cops, v))
            .max_by_key(|&v| (self.escape_count(g, &state.cops, v), std::cmp::Reverse(v)));
        match safe {
            Some(v) => RobberReply::Move(v),
            None => RobberReply::Surrender(*options.first().unwrap_or(&r)),
        }
    }

    fn immortal(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::Piece;

    #[test]
    fn four_cycle_is_a_knight_cycle() {
        for n in [4u16, 5, 8, 11] {
            let g = BoardGraph::preset(Piece::Knight, n).unwrap();
            let cyc: Vec<VertexId> = four_cycle(n).into_iter().map(|c| g.vertex_id(c)).collect();
            for i in 0..4 {
                assert!(g.adjacent(cyc[i], cyc[(i + 1) % 4]), "n={n} edge {i}");
                assert!(!g.adjacent(cyc[i], cyc[(i + 2) % 4]), "n={n} chord {i}");
            }
        }
    }

    #[test]
    fn degree4_subgraph_is_4_regular() {
        for n in [7u16, 8, 9, 12] {
            let g = BoardGraph::preset(Piece::Knight, n).unwrap();
            let set: Vec<VertexId> = degree4_subgraph(n)
                .into_iter()
                .map(|c| g.vertex_id(c))
                .collect();
            assert_eq!(set.len(), 16);
            for &v in &set {
                let inside = g
                    .neighbors(v)
                    .iter()
                    .filter(|w| set.contains(w))
                    .count();
                assert_eq!(inside, 4, "n={n} v={:?}", g.coord(v));
            }
        }
    }

    #[test]
    fn square_formation_places_a_2x2_block() {
        for n in [7u16, 8] {
            let g = BoardGraph::preset(Piece::Knight, n).unwrap();
            let cops = SquareFormation.place(&g);
            let coords: Vec<Coord> = cops.iter().map(|&v| g.coord(v)).collect();
            let minx = coords.iter().map(|c| c.x).min().unwrap();
            let miny = coords.iter().map(|c| c.y).min().unwrap();
            let mut expect: Vec<Coord> = [(0, 0), (0, 1), (1, 0), (1, 1)]
                .iter()
                .map(|&(a, b)| Coord::new(minx + a, miny + b))
                .collect();
            let mut got = coords.clone();
            expect.sort();
            got.sort();
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn formation_translations_are_legal_joint_moves() {
        let g = BoardGraph::preset(Piece::Knight, 9).unwrap();
        let diag = DiagonalFormation::new(1).place(&g);
        for t in KNIGHT_VECS.iter().chain(UNIT_VECS.iter()) {
            if let Some(mv) = translate(&g, &diag, *t) {
                assert!(
                    crate::strategies::joint_move_legal(&g, &diag, &mv),
                    "shift {t:?} not realizable"
                );
            }
        }
        let block = SquareFormation.place(&g);
        for t in KNIGHT_VECS {
            if let Some(mv) = translate(&g, &block, t) {
                assert!(crate::strategies::joint_move_legal(&g, &block, &mv));
            }
        }
    }
}
