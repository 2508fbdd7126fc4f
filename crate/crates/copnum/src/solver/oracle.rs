//! Optimal-play oracles extracted from a tracked solve.

use std::sync::Arc;

use crate::board::VertexId;
use crate::solver::engine::Solved;
use crate::solver::{SolveResult, SolverError};

/// Moves to a successor of strictly smaller optimal capture depth; defined
/// on all cop-win states.
#[derive(Clone)]
pub struct CopOracle {
    inner: Arc<Solved>,
}

/// Moves to a surviving successor whenever one exists, otherwise maximizes
/// the remaining capture depth.
#[derive(Clone)]
pub struct RobberOracle {
    inner: Arc<Solved>,
}

pub(crate) fn from_solved(solved: Solved) -> Result<(CopOracle, RobberOracle), SolverError> {
    let inner = Arc::new(solved);
    Ok((
        CopOracle {
            inner: inner.clone(),
        },
        RobberOracle { inner },
    ))
}

impl CopOracle {
    pub fn result(&self) -> &SolveResult {
        &self.inner.result
    }

    pub fn is_winning_start(&self, cops: &[VertexId]) -> bool {
        let mut cops = cops.to_vec();
        cops.sort_unstable();
        (0..self.inner.view.num_vertices() as VertexId)
            .all(|r| self.inner.is_win(self.inner.start_index(&cops, r)))
    }

    /// Remaining capture time (in cop moves) from a cop-to-move state.
    pub fn capture_time_from(&self, cops: &[VertexId], robber: VertexId) -> Option<u32> {
        let mut cops = cops.to_vec();
        cops.sort_unstable();
        let idx = self.inner.start_index(&cops, robber);
        if !self.inner.is_win(idx) {
            return None;
        }
        Some(self.inner.turns_from_depth(self.inner.depth_of(idx)))
    }

    /// The depth-optimal joint cop move from a cop-win state.
    pub fn joint_move(
        &self,
        cops: &[VertexId],
        robber: VertexId,
    ) -> Result<Vec<VertexId>, SolverError> {
        let s = &self.inner;
        let mut unmoved = cops.to_vec();
        unmoved.sort_unstable();
        if !s.is_win(s.start_index(&unmoved, robber)) {
            return Err(SolverError::OutsideCopWin);
        }
        let mut moved: Vec<VertexId> = Vec::with_capacity(s.k);
        for stage in 0..s.k {
            if moved.contains(&robber) {
                // capture already happened this turn; the rest stand still
                moved.append(&mut unmoved);
                moved.sort_unstable();
                break;
            }
            // any unmoved cop may take the stage; pick the depth-optimal
            // (mover, destination), ties to the smallest pair
            let mut best: Option<(u16, usize, VertexId)> = None;
            for mi in 0..unmoved.len() {
                if mi > 0 && unmoved[mi] == unmoved[mi - 1] {
                    continue;
                }
                let mover = unmoved[mi];
                let mut rest = unmoved.clone();
                rest.remove(mi);
                for &dest in &s.view.closed[mover as usize] {
                    let mut m2 = moved.clone();
                    m2.push(dest);
                    m2.sort_unstable();
                    let (idx, _) = s.canon(&m2, &rest, robber, stage + 1);
                    if !s.is_win(idx) {
                        continue;
                    }
                    let d = s.depth_of(idx);
                    if best.is_none_or(|(bd, bmi, bdest)| {
                        (d, dest, mi) < (bd, bdest, bmi)
                    }) {
                        best = Some((d, mi, dest));
                    }
                }
            }
            let (_, mi, dest) = best.expect("cop-win state must have a winning successor");
            unmoved.remove(mi);
            moved.push(dest);
            moved.sort_unstable();
        }
        Ok(moved)
    }
}

impl RobberOracle {
    /// True when the cops-to-move state is not in the cop-win region.
    pub fn escapes(&self, cops: &[VertexId], robber: VertexId) -> bool {
        let mut cops = cops.to_vec();
        cops.sort_unstable();
        !self.inner.is_win(self.inner.start_index(&cops, robber))
    }

    /// Best placement after seeing the cop placement: a surviving square if
    /// one exists, otherwise the square of maximal capture depth.
    pub fn best_placement(&self, cops: &[VertexId]) -> VertexId {
        let s = &self.inner;
        let mut cops = cops.to_vec();
        cops.sort_unstable();
        (0..s.view.num_vertices() as VertexId)
            .max_by_key(|&r| {
                let idx = s.start_index(&cops, r);
                let key = if s.is_win(idx) {
                    s.depth_of(idx) as u32
                } else {
                    u32::MAX
                };
                (key, std::cmp::Reverse(r))
            })
            .expect("nonempty graph")
    }

    /// Best robber move (staying allowed); None when already captured.
    pub fn best_move(&self, cops: &[VertexId], robber: VertexId) -> Option<VertexId> {
        let s = &self.inner;
        let mut cops = cops.to_vec();
        cops.sort_unstable();
        if cops.binary_search(&robber).is_ok() {
            return None;
        }
        s.view.closed[robber as usize]
            .iter()
            .copied()
            .max_by_key(|&r2| {
                let idx = s.start_index(&cops, r2);
                let key = if s.is_win(idx) {
                    s.depth_of(idx) as u32
                } else {
                    u32::MAX
                };
                (key, std::cmp::Reverse(r2))
            })
    }
}
