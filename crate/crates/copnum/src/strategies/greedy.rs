//! One-ply minimax ("greedy") cop and robber strategies.
//!
//! Both sides look one move ahead. The cops minimize the worst robber
//! reply's shortest-diagonal length, counting cop-coverable replies as
//! already lost for the robber; the robber maximizes the same quantity,
//! scoring coverable squares as minus infinity.

use crate::board::{BoardGraph, VertexId};
use crate::solver::GameState;
use crate::strategies::{CopStrategy, RobberReply, RobberStrategy, SimContext};

/// Length of the shorter of the two diagonals through `v` on an n x n board.
pub fn phi(n: u16, v: crate::board::Coord) -> u16 {
    let (n, x, y) = (n as i32, v.x as i32, v.y as i32);
    (n - (x - y).abs()).min(n - (x + y - (n + 1)).abs()) as u16
}

fn phi_of(g: &BoardGraph, v: VertexId) -> u16 {
    phi(g.n(), g.coord(v))
}

/// Bitset row over the vertices that some cop can occupy next move
/// (closed neighborhoods, so currently occupied squares are included).
fn coverage(g: &BoardGraph, cops: &[VertexId]) -> Vec<u64> {
    let w = g.neighbor_bits(0).len();
    let mut row = vec![0u64; w];
    for &c in cops {
        for (acc, &b) in row.iter_mut().zip(g.neighbor_bits(c)) {
            *acc |= b;
        }
        row[c as usize / 64] |= 1 << (c % 64);
    }
    row
}

#[inline]
fn bit(row: &[u64], v: VertexId) -> bool {
    row[v as usize / 64] >> (v % 64) & 1 != 0
}

/// The robber's reply value at a cops-to-move-next state: primary score
/// (negative infinity when the square is cop-coverable, otherwise its phi)
/// and the uncovered-escape-count tiebreak.
pub fn robber_reply_value(g: &BoardGraph, cops: &[VertexId], reply: VertexId) -> (i64, u32) {
    let cover = coverage(g, cops);
    reply_value_with(g, &cover, reply)
}

fn reply_value_with(g: &BoardGraph, cover: &[u64], reply: VertexId) -> (i64, u32) {
    let score = if bit(cover, reply) {
        i64::MIN
    } else {
        phi_of(g, reply) as i64
    };
    let mut escapes = 0;
    for &w in g.neighbors(reply) {
        if !bit(cover, w) {
            escapes += 1;
        }
    }
    if !bit(cover, reply) {
        escapes += 1;
    }
    (score, escapes)
}

/// Minimax cops for any arity 1..=4.
pub struct GreedyCops {
    k: usize,
}

impl GreedyCops {
    pub fn new(k: usize) -> Self {
        assert!((1..=4).contains(&k), "greedy cops support 1..=4 cops");
        GreedyCops { k }
    }
}

/// `k` consecutive squares of the main diagonal, centered on the board.
pub fn central_diagonal(n: u16, k: usize) -> Vec<crate::board::Coord> {
    let m = n.div_ceil(2);
    let lo = (m as i32 - k as i32 / 2).clamp(1, (n as i32 - k as i32 + 1).max(1));
    (0..k as i32)
        .map(|i| {
            let c = (lo + i).min(n as i32) as u16;
            crate::board::Coord::new(c, c)
        })
        .collect()
}

impl CopStrategy for GreedyCops {
    fn name(&self) -> &'static str {
        "greedy"
    }

    fn arity(&self) -> usize {
        self.k
    }

    fn place(&mut self, g: &BoardGraph) -> Vec<VertexId> {
        central_diagonal(g.n(), self.k)
            .into_iter()
            .map(|c| g.vertex_id(c))
            .collect()
    }

    fn cop_move(&mut self, g: &BoardGraph, state: &GameState, ctx: &SimContext) -> Vec<VertexId> {
        let r = state.robber;
        // robber replies, highest phi first; the worst reply under a joint
        // move is the first uncovered one in this order
        let mut replies: Vec<VertexId> = g.neighbors(r).to_vec();
        replies.push(r);
        replies.sort_unstable_by_key(|&v| (std::cmp::Reverse(phi_of(g, v)), v));
        debug_assert!(replies.len() <= 128);

        // per-destination masks: which replies a cop standing there covers
        let mut dest_mask: Vec<u128> = Vec::new();
        let mut dest_of: std::collections::HashMap<VertexId, u32> =
            std::collections::HashMap::new();
        let mut mask_of = |g: &BoardGraph, d: VertexId, masks: &mut Vec<u128>| -> u32 {
            *dest_of.entry(d).or_insert_with(|| {
                let mut m = 0u128;
                for (i, &rp) in replies.iter().enumerate() {
                    if rp == d || g.adjacent(d, rp) {
                        m |= 1 << i;
                    }
                }
                masks.push(m);
                masks.len() as u32 - 1
            })
        };

        let k = state.cops.len();
        let choices: Vec<Vec<VertexId>> = state
            .cops
            .iter()
            .map(|&c| {
                let mut v = g.neighbors(c).to_vec();
                v.push(c);
                v.sort_unstable();
                v
            })
            .collect();

        // (worst reply phi or -1 on capture, |R_t|, visited, packed multiset)
        let mut best: Option<(i32, u32, u8, u64)> = None;
        let mut best_move: Vec<VertexId> = Vec::new();
        let mut dests = vec![0 as VertexId; k];
        let mut stack_mask = vec![0u128; k + 1];
        enumerate(
            &choices,
            0,
            &mut dests,
            &mut stack_mask,
            &mut |dests, mask| {
                let captured = dests.contains(&r);
                let worst = if captured {
                    -1
                } else {
                    replies
                        .iter()
                        .enumerate()
                        .find(|&(i, _)| mask >> i & 1 == 0)
                        .map_or(0, |(_, &rp)| phi_of(g, rp) as i32)
                };
                let r_size = replies
                    .iter()
                    .filter(|rp| !dests.contains(rp))
                    .count() as u32;
                let mut sorted = dests.to_vec();
                sorted.sort_unstable();
                let after = GameState::new(sorted.clone(), r, crate::solver::Side::RobberToMove);
                let pack = after.pack();
                let visited = u8::from(ctx.visited.contains(&pack));
                let key = (worst, r_size, visited, pack);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                    best_move = sorted;
                }
            },
            &mut |d, masks| mask_of(g, d, masks),
            &mut dest_mask,
        );
        best_move
    }
}

/// Recursive product over per-cop destination choices, OR-ing coverage
/// masks as it descends.
fn enumerate(
    choices: &[Vec<VertexId>],
    i: usize,
    dests: &mut [VertexId],
    stack_mask: &mut [u128],
    f: &mut impl FnMut(&[VertexId], u128),
    mask_of: &mut impl FnMut(VertexId, &mut Vec<u128>) -> u32,
    masks: &mut Vec<u128>,
) {
    if i == choices.len() {
        f(dests, stack_mask[i]);
        return;
    }
    for &d in &choices[i] {
        let mi = mask_of(d, masks);
        dests[i] = d;
        stack_mask[i + 1] = stack_mask[i] | masks[mi as usize];
        enumerate(choices, i + 1, dests, stack_mask, f, mask_of, masks);
    }
}

/// Minimax robber: flees to the uncovered square of longest shortest
/// diagonal.
pub struct GreedyRobber;

fn best_reply(g: &BoardGraph, cops: &[VertexId], candidates: &[VertexId]) -> (VertexId, i64) {
    let cover = coverage(g, cops);
    let mut best: Option<(i64, u32, std::cmp::Reverse<VertexId>)> = None;
    let mut best_v = candidates[0];
    for &v in candidates {
        let (score, escapes) = reply_value_with(g, &cover, v);
        let key = (score, escapes, std::cmp::Reverse(v));
        if best.is_none_or(|b| key > b) {
            best = Some(key);
            best_v = v;
        }
    }
    (best_v, best.unwrap().0)
}

impl RobberStrategy for GreedyRobber {
    fn name(&self) -> &'static str {
        "greedy"
    }

    fn place(&mut self, g: &BoardGraph, cops: &[VertexId]) -> VertexId {
        let all: Vec<VertexId> = (0..g.num_vertices() as VertexId)
            .filter(|v| !cops.contains(v))
            .collect();
        best_reply(g, cops, &all).0
    }

    fn robber_move(&mut self, g: &BoardGraph, state: &GameState, _ctx: &SimContext) -> RobberReply {
        let r = state.robber;
        let moves: Vec<VertexId> = g
            .neighbors(r)
            .iter()
            .copied()
            .chain([r])
            .filter(|v| !state.cops.contains(v))
            .collect();
        if moves.is_empty() {
            // every square of N[r] is occupied; walk into the smallest cop
            let v = *g.neighbors(r).iter().chain([&r]).min().unwrap();
            return RobberReply::Surrender(v);
        }
        let (v, score) = best_reply(g, &state.cops, &moves);
        if score == i64::MIN {
            RobberReply::Surrender(v)
        } else {
            RobberReply::Move(v)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{Coord, Piece};

    #[test]
    fn phi_matches_pinned_values() {
        assert_eq!(phi(9, Coord::new(5, 1)), 5);
        assert_eq!(phi(8, Coord::new(1, 1)), 1);
        assert_eq!(phi(7, Coord::new(4, 4)), 7);
    }

    #[test]
    fn phi_edge_midpoint_formula() {
        // at an edge midpoint the longer diagonal has n - floor((n-1)/2)
        // squares and it is the shorter one's upper bound over the edge
        for n in [7u16, 9, 11, 13] {
            let mid = Coord::new(n.div_ceil(2), 1);
            assert_eq!(phi(n, mid), n - (n - 1) / 2);
        }
    }

    #[test]
    fn central_diagonal_matches_pinned_start() {
        assert_eq!(
            central_diagonal(7, 3),
            vec![Coord::new(3, 3), Coord::new(4, 4), Coord::new(5, 5)]
        );
        assert_eq!(central_diagonal(8, 3), vec![
            Coord::new(3, 3),
            Coord::new(4, 4),
            Coord::new(5, 5)
        ]);
        assert_eq!(central_diagonal(1, 1), vec![Coord::new(1, 1)]);
    }

    #[test]
    fn greedy_cops_capture_adjacent_robber() {
        let g = BoardGraph::preset(Piece::Queen, 5).unwrap();
        let r = g.vertex_id(Coord::new(5, 5));
        let cops = vec![g.vertex_id(Coord::new(5, 1)), g.vertex_id(Coord::new(1, 1))];
        let state = GameState::new(cops, r, crate::solver::Side::CopsToMove);
        let mut s = GreedyCops::new(2);
        let mv = s.cop_move(&g, &state, &SimContext::default());
        assert!(mv.contains(&r), "capture dominates: {mv:?}");
    }

    #[test]
    fn greedy_robber_avoids_covered_squares() {
        let g = BoardGraph::preset(Piece::Queen, 7).unwrap();
        let cops = vec![g.vertex_id(Coord::new(1, 1))];
        let r = g.vertex_id(Coord::new(3, 2));
        let state = GameState::new(cops.clone(), r, crate::solver::Side::RobberToMove);
        let mut s = GreedyRobber;
        match s.robber_move(&g, &state, &SimContext::default()) {
            RobberReply::Move(v) => {
                let cover = coverage(&g, &cops);
                assert!(!bit(&cover, v), "moved onto a covered square");
            }
            RobberReply::Surrender(_) => panic!("robber had safe squares"),
        }
    }

    #[test]
    fn surrender_iff_all_replies_covered() {
        // a 2-board queen graph is K_4: one cop covers everything
        let g = BoardGraph::preset(Piece::Queen, 2).unwrap();
        let state = GameState::new(vec![0], 3, crate::solver::Side::RobberToMove);
        let mut s = GreedyRobber;
        assert!(matches!(
            s.robber_move(&g, &state, &SimContext::default()),
            RobberReply::Surrender(_)
        ));
    }
}
