//! Geometric evasion regions and the line-guarding cop strategy for royal
//! graphs.

use crate::board::{BoardGraph, Coord, Direction, DirectionSet, Mode, VertexId};
use crate::solver::GameState;
use crate::strategies::{CopStrategy, RobberReply, RobberStrategy, SimContext};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RegionError {
    #[error("an octagon with {side_len}-vertex sides needs n >= {minimal_n}, got {n}")]
    OctagonTooSmall {
        n: u16,
        side_len: u16,
        minimal_n: u16,
    },
    #[error("evasion regions are defined on royal graphs only")]
    NotRoyal,
}

/// Centered axis-aligned octagon whose eight sides each contain `side_len`
/// vertices (corner vertices belong to both adjacent sides).
pub fn octagon_region(n: u16, side_len: u16) -> Result<Vec<Coord>, RegionError> {
    let s = side_len as i32;
    let w = 3 * s - 2;
    if (n as i32) < w {
        return Err(RegionError::OctagonTooSmall {
            n,
            side_len,
            minimal_n: w as u16,
        });
    }
    let off = (n as i32 - w) / 2;
    let mut out = Vec::new();
    for x in 1..=w {
        for y in 1..=w {
            if x + y > s && x + y <= 2 * w - s + 1 && x - y <= w - s && y - x <= w - s {
                out.push(Coord::new((x + off) as u16, (y + off) as u16));
            }
        }
    }
    Ok(out)
}

/// The smallest board an octagon with `side_len`-vertex sides fits on.
pub fn octagon_minimal_n(side_len: u16) -> u16 {
    3 * side_len - 2
}

/// Signed offset identifying the line of direction `d` through a square.
pub fn line_offset(d: Direction, c: Coord) -> i64 {
    d.dy() as i64 * c.x as i64 - d.dx() as i64 * c.y as i64
}

/// Per-cop guarding capacity on a robber line: `(k-1)(k-2) + 1`.
pub fn guarding_threshold(k: usize) -> usize {
    (k - 1) * (k - 2) + 1
}

/// The evasion region of a k-royal board: for each direction, keep the
/// lines longer than the guarding threshold and intersect the strips
/// between each direction's two extreme such lines.
///
/// Returns the region (possibly empty) and `minimal_N`, the least board
/// size with a nonempty region and at least two qualifying lines per
/// direction.
pub fn evasion_region(dirs: &DirectionSet, n: u16) -> (Vec<Coord>, u16) {
    let region = region_for(dirs, n);
    let minimal_n = (2..)
        .find(|&m| !region_for(dirs, m).is_empty())
        .unwrap();
    (region, minimal_n)
}

/// Offset bounds of the qualifying (longer-than-threshold) lines per
/// direction; None when some direction has fewer than two such lines.
fn strip_bounds(dirs: &DirectionSet, n: u16) -> Option<Vec<(i64, i64)>> {
    let g = BoardGraph::build_royal(n, dirs.clone()).ok()?;
    let lines = g.line_system().ok()?;
    let t = guarding_threshold(dirs.k());
    let mut bounds = Vec::with_capacity(dirs.k());
    for (j, &d) in dirs.dirs().iter().enumerate() {
        let mut offsets: Vec<i64> = lines
            .lines_of_direction(j)
            .iter()
            .filter(|l| l.len() > t)
            .map(|l| line_offset(d, g.coord(l[0])))
            .collect();
        if offsets.len() < 2 {
            return None;
        }
        offsets.sort_unstable();
        bounds.push((offsets[0], *offsets.last().unwrap()));
    }
    Some(bounds)
}

fn region_for(dirs: &DirectionSet, n: u16) -> Vec<Coord> {
    let Some(bounds) = strip_bounds(dirs, n) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for x in 1..=n {
        for y in 1..=n {
            let c = Coord::new(x, y);
            if dirs
                .dirs()
                .iter()
                .zip(&bounds)
                .all(|(&d, &(lo, hi))| (lo..=hi).contains(&line_offset(d, c)))
            {
                out.push(c);
            }
        }
    }
    out
}

/// The least board size on which every region square still has, in every
/// direction, more than threshold-many region squares on its line; the
/// confined robber's escape argument needs that much room.
pub fn evasion_simulation_board(dirs: &DirectionSet) -> u16 {
    let t = guarding_threshold(dirs.k());
    (2..)
        .find(|&n| {
            let region = region_for(dirs, n);
            if region.is_empty() {
                return false;
            }
            let g = BoardGraph::build_royal(n, dirs.clone()).unwrap();
            let lines = g.line_system().unwrap();
            let set: std::collections::HashSet<VertexId> =
                region.iter().map(|&c| g.vertex_id(c)).collect();
            region.iter().all(|&c| {
                (0..dirs.k()).all(|j| {
                    lines
                        .line(j, g.vertex_id(c))
                        .iter()
                        .filter(|v| set.contains(v))
                        .count()
                        > t
                })
            })
        })
        .unwrap()
}

fn chebyshev(a: Coord, b: Coord) -> i32 {
    (a.x as i32 - b.x as i32)
        .abs()
        .max((a.y as i32 - b.y as i32).abs())
}

fn guarded(g: &BoardGraph, cops: &[VertexId], v: VertexId) -> bool {
    cops.iter().any(|&c| c == v || g.adjacent(c, v))
}

/// Robber confined to a fixed vertex region, moving to an unguarded region
/// square (staying when already unguarded).
pub struct RegionRobber {
    name: &'static str,
    region: Vec<VertexId>,
}

impl RegionRobber {
    pub fn new(name: &'static str, g: &BoardGraph, region: &[Coord]) -> Self {
        let mut region: Vec<VertexId> = region.iter().map(|&c| g.vertex_id(c)).collect();
        region.sort_unstable();
        assert!(!region.is_empty(), "empty evasion region");
        RegionRobber { name, region }
    }

    pub fn octagon(g: &BoardGraph, side_len: u16) -> Result<Self, RegionError> {
        Ok(Self::new("octagon", g, &octagon_region(g.n(), side_len)?))
    }

    pub fn evasion(g: &BoardGraph) -> Result<Self, RegionError> {
        if g.mode() != Mode::Royal {
            return Err(RegionError::NotRoyal);
        }
        let (region, _) = evasion_region(g.dirs(), g.n());
        Ok(Self::new("evasion_region", g, &region))
    }

    fn in_region(&self, v: VertexId) -> bool {
        self.region.binary_search(&v).is_ok()
    }

    fn pick(&self, g: &BoardGraph, cops: &[VertexId], options: &[VertexId]) -> Option<VertexId> {
        options
            .iter()
            .copied()
            .filter(|&v| !guarded(g, cops, v))
            .max_by_key(|&v| {
                let d = cops
                    .iter()
                    .map(|&c| chebyshev(g.coord(c), g.coord(v)))
                    .min()
                    .unwrap_or(0);
                (d, std::cmp::Reverse(v))
            })
    }
}

impl RobberStrategy for RegionRobber {
    fn name(&self) -> &'static str {
        self.name
    }

    fn place(&mut self, g: &BoardGraph, cops: &[VertexId]) -> VertexId {
        self.pick(g, cops, &self.region).unwrap_or(self.region[0])
    }

    fn robber_move(&mut self, g: &BoardGraph, state: &GameState, _ctx: &SimContext) -> RobberReply {
        let r = state.robber;
        if !guarded(g, &state.cops, r) {
            return RobberReply::Move(r);
        }
        let options: Vec<VertexId> = g
            .neighbors(r)
            .iter()
            .copied()
            .filter(|&v| self.in_region(v) && !state.cops.contains(&v))
            .collect();
        match self.pick(g, &state.cops, &options) {
            Some(v) => RobberReply::Move(v),
            None => RobberReply::Surrender(*options.first().unwrap_or(&r)),
        }
    }

    fn immortal(&self) -> bool {
        true
    }
}

/// One cop per direction of a k-royal board; each cop works toward the
/// robber's line of its assigned direction. Once every cop sits on its
/// line, every robber move stays on some line and is captured.
pub struct GuardingCops {
    k: usize,
}

impl GuardingCops {
    pub fn new(g: &BoardGraph) -> Result<Self, RegionError> {
        if g.mode() != Mode::Royal {
            return Err(RegionError::NotRoyal);
        }
        Ok(GuardingCops { k: g.dirs().k() })
    }
}

impl CopStrategy for GuardingCops {
    fn name(&self) -> &'static str {
        "guarding"
    }

    fn arity(&self) -> usize {
        self.k
    }

    fn place(&mut self, g: &BoardGraph) -> Vec<VertexId> {
        crate::strategies::greedy::central_diagonal(g.n(), self.k)
            .into_iter()
            .map(|c| g.vertex_id(c))
            .collect()
    }

    fn cop_move(&mut self, g: &BoardGraph, state: &GameState, _ctx: &SimContext) -> Vec<VertexId> {
        let r = state.robber;
        for (i, &c) in state.cops.iter().enumerate() {
            if c == r || g.adjacent(c, r) {
                let mut mv = state.cops.clone();
                mv[i] = r;
                mv.sort_unstable();
                return mv;
            }
        }
        let rc = g.coord(r);
        let mut mv = Vec::with_capacity(self.k);
        for (i, &c) in state.cops.iter().enumerate() {
            let d = g.dirs().dirs()[i];
            let target = line_offset(d, rc);
            let dest = g
                .neighbors(c)
                .iter()
                .copied()
                .chain([c])
                .filter(|&v| v != r)
                .min_by_key(|&v| ((line_offset(d, g.coord(v)) - target).abs(), v))
                .unwrap_or(c);
            mv.push(dest);
        }
        mv.sort_unstable();
        mv
    }
}
