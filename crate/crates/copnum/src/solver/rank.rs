//! Combinatorial ranking of game states.
//!
//! A cop placement is a sorted multiset of `k` vertex ids (cops are
//! interchangeable and may share a square). The solver additionally splits a
//! cop turn into `k` single-cop stages: at stage `i` the multiset `M` holds
//! the `i` cops that already moved this turn and `U` the `k - i` that have
//! not; any unmoved cop moves next. Stage `k` (all moved) is the robber's
//! turn. A state is `(M, U, robber)` and packs into one `u64` rank:
//!
//!   stage_offset[|M|] + (rank(M) * count(k - |M|) + rank(U)) * V + robber

use crate::board::VertexId;

/// Positional packing of a state used for frontier queues: four 12-bit
/// vertex slots (the `M` entries then the `U` entries), a 12-bit robber
/// field, and a 3-bit stage. Requires `V <= 4095`.
pub type Pack = u64;

pub fn pack_state(m: &[VertexId], u: &[VertexId], robber: VertexId, stage: usize) -> Pack {
    let mut p = (stage as u64) << 60 | (robber as u64) << 48;
    for (slot, &v) in m.iter().chain(u.iter()).enumerate() {
        p |= (v as u64) << (12 * slot);
    }
    p
}

pub fn unpack_state(p: Pack, k: usize, m: &mut [VertexId; 4], u: &mut [VertexId; 4]) -> (usize, usize, VertexId) {
    let stage = (p >> 60) as usize;
    let robber = (p >> 48 & 0xfff) as VertexId;
    for (slot, out) in m.iter_mut().enumerate().take(stage) {
        *out = (p >> (12 * slot) & 0xfff) as VertexId;
    }
    for slot in stage..k {
        u[slot - stage] = (p >> (12 * slot) & 0xfff) as VertexId;
    }
    (stage, k - stage, robber)
}

/// Rank/unrank tables for one `(V, k)` state space.
pub struct StateSpace {
    pub v: usize,
    pub k: usize,
    /// binom[i][j] = C(i, j)
    binom: Vec<Vec<u64>>,
    /// multiset_count[j] = C(V + j - 1, j), the number of j-multisets
    pub multiset_count: Vec<u64>,
    pub stage_offset: Vec<u64>,
    pub total: u64,
}

impl StateSpace {
    pub fn new(v: usize, k: usize) -> Self {
        assert!((1..=4).contains(&k) && v >= 1);
        let rows = v + k + 1;
        let mut binom = vec![vec![0u64; k + 2]; rows];
        for i in 0..rows {
            binom[i][0] = 1;
            for j in 1..=k + 1 {
                binom[i][j] = if i == 0 {
                    0
                } else {
                    binom[i - 1][j - 1] + binom[i - 1][j]
                };
            }
        }
        // C(V + j - 1, j) j-multisets; j = 0 gives the empty multiset
        let multiset_count: Vec<u64> = (0..=k)
            .map(|j| if j == 0 { 1 } else { binom[v + j - 1][j] })
            .collect();
        let mut stage_offset = Vec::with_capacity(k + 2);
        let mut acc = 0u64;
        for i in 0..=k {
            stage_offset.push(acc);
            acc += multiset_count[i] * multiset_count[k - i] * v as u64;
        }
        stage_offset.push(acc);
        StateSpace {
            v,
            k,
            binom,
            multiset_count,
            stage_offset,
            total: acc,
        }
    }

    /// Colex rank of a sorted multiset over `[0, V)`.
    #[inline]
    pub fn rank_multiset(&self, a: &[VertexId]) -> u64 {
        let mut r = 0u64;
        for (i, &x) in a.iter().enumerate() {
            r += self.binom[x as usize + i][i + 1];
        }
        r
    }

    /// Inverse of `rank_multiset` for multisets of size `j`.
    pub fn unrank_multiset(&self, mut rank: u64, j: usize, out: &mut Vec<VertexId>) {
        out.clear();
        out.resize(j, 0);
        for i in (0..j).rev() {
            // largest b with C(b, i+1) <= rank
            let mut lo = i;
            let mut hi = self.v + i; // exclusive
            while lo + 1 < hi {
                let mid = (lo + hi) / 2;
                if self.binom[mid][i + 1] <= rank {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            rank -= self.binom[lo][i + 1];
            out[i] = (lo - i) as VertexId;
        }
    }

    #[inline]
    pub fn index(&self, m: &[VertexId], u: &[VertexId], robber: VertexId, stage: usize) -> u64 {
        debug_assert_eq!(m.len(), stage);
        debug_assert_eq!(u.len(), self.k - stage);
        self.stage_offset[stage]
            + (self.rank_multiset(m) * self.multiset_count[self.k - stage] + self.rank_multiset(u))
                * self.v as u64
            + robber as u64
    }

    /// Number of states the specification counts: sorted cop multisets times
    /// robber squares times two sides (the staged expansion is internal).
    pub fn spec_state_count(&self) -> u64 {
        self.multiset_count[self.k] * self.v as u64 * 2
    }
}

/// Calls `f` on every sorted multiset of size `j` over `[0, v)`.
#[cfg(test)]
pub fn for_each_multiset(v: usize, j: usize, f: &mut impl FnMut(&[VertexId])) {
    let mut buf = [0 as VertexId; 4];
    rec(v, j, 0, 0, &mut buf, f);
    fn rec(
        v: usize,
        j: usize,
        pos: usize,
        min: VertexId,
        buf: &mut [VertexId; 4],
        f: &mut impl FnMut(&[VertexId]),
    ) {
        if pos == j {
            f(&buf[..j]);
            return;
        }
        for x in min..v as VertexId {
            buf[pos] = x;
            rec(v, j, pos + 1, x, buf, f);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_rank_round_trip() {
        let s = StateSpace::new(7, 3);
        assert_eq!(s.multiset_count[3], 84); // C(9, 3)
        let mut out = Vec::new();
        let mut seen = 0u64;
        for rank in 0..s.multiset_count[3] {
            s.unrank_multiset(rank, 3, &mut out);
            assert!(out.windows(2).all(|w| w[0] <= w[1]), "{out:?}");
            assert!(out.iter().all(|&x| (x as usize) < 7));
            assert_eq!(s.rank_multiset(&out), rank);
            seen += 1;
        }
        assert_eq!(seen, 84);
        // ranks of lex-enumerated multisets form a permutation of 0..84
        let mut ranks = Vec::new();
        for_each_multiset(7, 3, &mut |ms| ranks.push(s.rank_multiset(ms)));
        ranks.sort_unstable();
        assert_eq!(ranks, (0..84).collect::<Vec<u64>>());
    }

    #[test]
    fn state_indices_are_a_bijection() {
        let s = StateSpace::new(5, 2);
        let mut seen = vec![false; s.total as usize];
        for stage in 0..=2usize {
            for_each_multiset(5, stage, &mut |m| {
                let m = m.to_vec();
                for_each_multiset(5, 2 - stage, &mut |u| {
                    for r in 0..5 as VertexId {
                        let idx = s.index(&m, u, r, stage) as usize;
                        assert!(!seen[idx]);
                        seen[idx] = true;
                    }
                });
            });
        }
        assert!(seen.iter().all(|&b| b));
    }

    #[test]
    fn pack_unpack_round_trip() {
        let m = [3 as VertexId, 9];
        let u = [1 as VertexId];
        let p = pack_state(&m, &u, 77, 2);
        let mut mm = [0; 4];
        let mut uu = [0; 4];
        let (stage, ulen, r) = unpack_state(p, 3, &mut mm, &mut uu);
        assert_eq!(stage, 2);
        assert_eq!(ulen, 1);
        assert_eq!(r, 77);
        assert_eq!(&mm[..2], &m);
        assert_eq!(&uu[..1], &u);
    }
}
