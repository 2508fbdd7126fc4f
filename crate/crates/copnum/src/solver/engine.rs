//! Retrograde sweep over the staged cops-and-robbers state space.
//!
//! Terminal (co-location) states are seeded as cop wins; the sweep then
//! relaxes each edge once, backwards. Cop-turn states are existential (one
//! winning successor suffices), robber-turn states carry an out-degree
//! counter and flip only when every successor is won. Layered processing
//! makes the recorded depths the exact game-theoretic distances-to-capture
//! measured in single-cop stage steps.

use crate::board::VertexId;
use crate::solver::rank::{pack_state, unpack_state, Pack, StateSpace};
use crate::solver::{SolveOptions, SolveResult, SolverError};

/// Adjacency view the engine runs on: sorted closed neighborhoods plus the
/// vertex permutations used for canonicalization (identity included).
pub struct GraphView {
    pub closed: Vec<Vec<VertexId>>,
    pub autos: Vec<Vec<VertexId>>,
}

impl GraphView {
    pub fn num_vertices(&self) -> usize {
        self.closed.len()
    }
}

pub(crate) struct Solved {
    pub view: GraphView,
    pub k: usize,
    pub space: StateSpace,
    use_symmetry: bool,
    win: Vec<u64>,
    depth: Vec<u16>,
    pub result: SolveResult,
}

#[inline]
fn sort_small(a: &mut [VertexId]) {
    for i in 1..a.len() {
        let x = a[i];
        let mut j = i;
        while j > 0 && a[j - 1] > x {
            a[j] = a[j - 1];
            j -= 1;
        }
        a[j] = x;
    }
}

impl Solved {
    #[inline]
    fn test_and_set(win: &mut [u64], idx: u64) -> bool {
        let word = &mut win[(idx / 64) as usize];
        let bit = 1u64 << (idx % 64);
        let was = *word & bit != 0;
        *word |= bit;
        was
    }

    #[inline]
    pub fn is_win(&self, idx: u64) -> bool {
        self.win[(idx / 64) as usize] >> (idx % 64) & 1 != 0
    }

    #[inline]
    pub fn depth_of(&self, idx: u64) -> u16 {
        self.depth[idx as usize]
    }

    /// Canonical (index, positional pack) of a state under the board
    /// automorphisms: the minimum packed index over the group.
    #[inline]
    pub fn canon(&self, m: &[VertexId], u: &[VertexId], r: VertexId, stage: usize) -> (u64, Pack) {
        canon_with(
            &self.space,
            &self.view.autos,
            self.use_symmetry,
            m,
            u,
            r,
            stage,
        )
    }

    /// Canonical index of a full cop-turn start state `(cops, robber)`.
    pub fn start_index(&self, cops: &[VertexId], robber: VertexId) -> u64 {
        debug_assert!(cops.windows(2).all(|w| w[0] <= w[1]));
        self.canon(&[], cops, robber, 0).0
    }

    /// Capture time in cop moves for a start-state stage-step depth.
    pub fn turns_from_depth(&self, d: u16) -> u32 {
        if d == 0 {
            0
        } else {
            (d as u32 - 1) / (self.k as u32 + 1) + 1
        }
    }
}

#[inline]
#[allow(clippy::too_many_arguments)]
fn canon_with(
    space: &StateSpace,
    autos: &[Vec<VertexId>],
    use_symmetry: bool,
    m: &[VertexId],
    u: &[VertexId],
    r: VertexId,
    stage: usize,
) -> (u64, Pack) {
    if !use_symmetry {
        return (space.index(m, u, r, stage), pack_state(m, u, r, stage));
    }
    let mut best_idx = u64::MAX;
    let mut best_pack = 0;
    for perm in autos {
        let mut mm = [0 as VertexId; 4];
        let mut uu = [0 as VertexId; 4];
        for (i, &x) in m.iter().enumerate() {
            mm[i] = perm[x as usize];
        }
        for (i, &x) in u.iter().enumerate() {
            uu[i] = perm[x as usize];
        }
        sort_small(&mut mm[..m.len()]);
        sort_small(&mut uu[..u.len()]);
        let rr = perm[r as usize];
        let idx = space.index(&mm[..m.len()], &uu[..u.len()], rr, stage);
        if idx < best_idx {
            best_idx = idx;
            best_pack = pack_state(&mm[..m.len()], &uu[..u.len()], rr, stage);
        }
    }
    (best_idx, best_pack)
}

pub(crate) fn solve(view: GraphView, k: usize, opts: &SolveOptions) -> Result<Solved, SolverError> {
    if k == 0 || k > 4 {
        return Err(SolverError::BadCopCount(k));
    }
    let v = view.num_vertices();
    if v == 0 || v > 4095 {
        return Err(SolverError::GraphTooLarge(v));
    }
    let space = StateSpace::new(v, k);
    let spec_states = space.spec_state_count();
    if spec_states > opts.state_budget {
        return Err(SolverError::BudgetExceeded {
            states: spec_states,
            budget: opts.state_budget,
        });
    }
    let use_symmetry = opts.use_symmetry && view.autos.len() > 1;
    let total = space.total as usize;
    let mut win = vec![0u64; total.div_ceil(64)];
    let mut depth = vec![0u16; total];
    let robber_states = (space.multiset_count[k] * v as u64) as usize;
    let mut counter = vec![u16::MAX; robber_states];
    let peak_memory_estimate =
        (win.len() * 8 + depth.len() * 2 + counter.len() * 2) as u64;

    let autos = &view.autos;
    let closed = &view.closed;
    let robber_base = space.stage_offset[k];

    // Seed every co-location state, at every stage, as a depth-0 cop win.
    let mut frontier: Vec<Pack> = Vec::new();
    let mut mbuf = Vec::new();
    let mut ubuf = Vec::new();
    for stage in 0..=k {
        for m_rank in 0..space.multiset_count[stage] {
            space.unrank_multiset(m_rank, stage, &mut mbuf);
            for u_rank in 0..space.multiset_count[k - stage] {
                space.unrank_multiset(u_rank, k - stage, &mut ubuf);
                let mut prev = VertexId::MAX;
                for &r in mbuf.iter().chain(ubuf.iter()) {
                    if r == prev {
                        continue; // m and u are each sorted; cheap partial dedup
                    }
                    prev = r;
                    let (idx, pack) =
                        canon_with(&space, autos, use_symmetry, &mbuf, &ubuf, r, stage);
                    if !Solved::test_and_set(&mut win, idx) {
                        frontier.push(pack);
                    }
                }
            }
        }
    }

    // Layered backward sweep.
    let mut next: Vec<Pack> = Vec::new();
    let mut robber_preds: Vec<(u64, Pack)> = Vec::new();
    let mut succ_buf: Vec<u64> = Vec::new();
    let mut d: u16 = 0;
    while !frontier.is_empty() {
        assert!(d < u16::MAX - 1, "state depth overflow");
        for &pk in &frontier {
            let mut m = [0 as VertexId; 4];
            let mut u = [0 as VertexId; 4];
            let (stage, ulen, r) = unpack_state(pk, k, &mut m, &mut u);
            if stage == 0 {
                // Predecessors are robber-turn states (S, r_prev); dedupe
                // canonical indices so each successor class decrements a
                // counter exactly once.
                robber_preds.clear();
                for &rp in &closed[r as usize] {
                    robber_preds.push(canon_with(
                        &space,
                        autos,
                        use_symmetry,
                        &u[..k],
                        &[],
                        rp,
                        k,
                    ));
                }
                robber_preds.sort_unstable_by_key(|e| e.0);
                robber_preds.dedup_by_key(|e| e.0);
                for &(idx, pack) in &robber_preds {
                    if win[(idx / 64) as usize] >> (idx % 64) & 1 != 0 {
                        continue;
                    }
                    let c = &mut counter[(idx - robber_base) as usize];
                    if *c == u16::MAX {
                        // lazy init: distinct canonical successor classes
                        let mut pm = [0 as VertexId; 4];
                        let mut pu = [0 as VertexId; 4];
                        let (_, _, pr) = unpack_state(pack, k, &mut pm, &mut pu);
                        succ_buf.clear();
                        for &r2 in &closed[pr as usize] {
                            succ_buf.push(
                                canon_with(&space, autos, use_symmetry, &[], &pm[..k], r2, 0).0,
                            );
                        }
                        succ_buf.sort_unstable();
                        succ_buf.dedup();
                        *c = succ_buf.len() as u16;
                    }
                    *c -= 1;
                    if *c == 0 {
                        Solved::test_and_set(&mut win, idx);
                        depth[idx as usize] = d + 1;
                        next.push(pack);
                    }
                }
            } else {
                // Predecessors are stage-1 cop states: some cop at u_prev
                // moved to m[j]. Any unmoved cop may move at a stage; a
                // vertex-order mover rule would not commute with the board
                // automorphisms and would corrupt canonical depths.
                for j in 0..stage {
                    if j > 0 && m[j] == m[j - 1] {
                        continue;
                    }
                    let moved_to = m[j];
                    // m with slot j removed, still sorted
                    let mut pm = [0 as VertexId; 4];
                    let mut w = 0;
                    for (i, &x) in m[..stage].iter().enumerate() {
                        if i != j {
                            pm[w] = x;
                            w += 1;
                        }
                    }
                    for &up in &closed[moved_to as usize] {
                        let mut pu = [0 as VertexId; 4];
                        pu[..ulen].copy_from_slice(&u[..ulen]);
                        pu[ulen] = up;
                        sort_small(&mut pu[..ulen + 1]);
                        let (idx, pack) = canon_with(
                            &space,
                            autos,
                            use_symmetry,
                            &pm[..stage - 1],
                            &pu[..ulen + 1],
                            r,
                            stage - 1,
                        );
                        if !Solved::test_and_set(&mut win, idx) {
                            depth[idx as usize] = d + 1;
                            next.push(pack);
                        }
                    }
                }
            }
        }
        std::mem::swap(&mut frontier, &mut next);
        next.clear();
        d += 1;
    }
    drop(counter);

    // Best start: cops pick the multiset minimizing the worst robber reply.
    let mut best: Option<(u16, Vec<VertexId>)> = None;
    let mut start = Vec::new();
    for s_rank in 0..space.multiset_count[k] {
        space.unrank_multiset(s_rank, k, &mut start);
        let mut maxd = 0u16;
        let mut all_win = true;
        for r in 0..v as VertexId {
            let (idx, _) = canon_with(&space, autos, use_symmetry, &[], &start, r, 0);
            if win[(idx / 64) as usize] >> (idx % 64) & 1 == 0 {
                all_win = false;
                break;
            }
            maxd = maxd.max(depth[idx as usize]);
        }
        if all_win && best.as_ref().is_none_or(|(bd, _)| maxd < *bd) {
            best = Some((maxd, start.clone()));
        }
    }

    let k_u = k;
    let result = match &best {
        Some((maxd, s)) => SolveResult {
            k: k_u,
            cops_win: true,
            optimal_start: Some(s.clone()),
            capture_time: Some(if *maxd == 0 {
                0
            } else {
                (*maxd as u32 - 1) / (k_u as u32 + 1) + 1
            }),
            state_count: spec_states,
            peak_memory_estimate,
        },
        None => SolveResult {
            k: k_u,
            cops_win: false,
            optimal_start: None,
            capture_time: None,
            state_count: spec_states,
            peak_memory_estimate,
        },
    };

    Ok(Solved {
        view,
        k,
        space,
        use_symmetry,
        win,
        depth,
        result,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{BoardGraph, Piece};

    #[test]
    fn canonical_depths_match_raw_depths() {
        let g = BoardGraph::preset(Piece::Knight, 5).unwrap();
        let on = solve(crate::solver::board_view(&g), 2, &SolveOptions::default()).unwrap();
        let off = solve(
            crate::solver::board_view(&g),
            2,
            &SolveOptions { use_symmetry: false, ..Default::default() },
        )
        .unwrap();
        let v = g.num_vertices();
        let mut bad = 0;
        let mut s = Vec::new();
        for s_rank in 0..on.space.multiset_count[2] {
            on.space.unrank_multiset(s_rank, 2, &mut s);
            for r in 0..v as crate::board::VertexId {
                let (i_on, _) = on.canon(&[], &s, r, 0);
                let (i_off, _) = off.canon(&[], &s, r, 0);
                let w1 = on.is_win(i_on);
                let w2 = off.is_win(i_off);
                let d1 = on.depth_of(i_on);
                let d2 = off.depth_of(i_off);
                if w1 != w2 || d1 != d2 {
                    if bad < 10 {
                        println!("S={s:?} r={r} on=({w1},{d1}) off=({w2},{d2})");
                    }
                    bad += 1;
                }
            }
        }
        assert_eq!(bad, 0, "{bad} mismatched start states");
    }
}
