//! Lattice graphs for chess pieces and their royal/animal generalizations.
//!
//! Vertices are the squares of an `n x n` board, 1-indexed as `(x, y)` with
//! `x` the file and `y` the rank. A *royal* graph connects two squares when
//! the line between them has a slope from the direction set (whole-line
//! adjacency, like a queen). An *animal* graph connects two squares when one
//! is exactly one step vector away from the other (like a king or knight).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = u16;

/// Hard cap so that packed 64-bit state codecs in the solver stay valid.
pub const MAX_VERTICES: usize = 4095;

#[derive(Debug, Error)]
pub enum BoardError {
    #[error("direction must be a nonzero vector")]
    ZeroDirection,
    #[error("direction set must be nonempty")]
    EmptyDirectionSet,
    #[error("board side must be at least 1")]
    ZeroSide,
    #[error("board with {0} vertices exceeds the {MAX_VERTICES}-vertex limit")]
    TooLarge(usize),
    #[error("lines are only defined for royal graphs")]
    NotRoyal,
    #[error("unknown piece `{0}`")]
    UnknownPiece(String),
    #[error("graph JSON does not round-trip: {0}")]
    BadGraphJson(String),
}

/// A board square, 1-indexed: `x` is the file, `y` the rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Coord {
    pub x: u16,
    pub y: u16,
}

impl Coord {
    pub fn new(x: u16, y: u16) -> Self {
        Coord { x, y }
    }
}

/// An unoriented primitive lattice direction.
///
/// `(dx, dy)` and `(-dx, -dy)` are the same direction; the stored form has
/// `dx > 0`, or `dx == 0 && dy > 0`, and `gcd(|dx|, |dy|) == 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Direction {
    dx: i32,
    dy: i32,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Sign-canonicalize without reducing: identifies `s` with `-s`.
fn canonical_sign(dx: i32, dy: i32) -> (i32, i32) {
    if dx > 0 || (dx == 0 && dy > 0) {
        (dx, dy)
    } else {
        (-dx, -dy)
    }
}

impl Direction {
    /// Canonical (primitive, sign-normalized) direction of a step vector.
    pub fn new(dx: i32, dy: i32) -> Result<Self, BoardError> {
        if dx == 0 && dy == 0 {
            return Err(BoardError::ZeroDirection);
        }
        let g = gcd(dx.unsigned_abs() as i64, dy.unsigned_abs() as i64).max(1) as i32;
        let (dx, dy) = canonical_sign(dx / g, dy / g);
        Ok(Direction { dx, dy })
    }

    pub fn dx(&self) -> i32 {
        self.dx
    }

    pub fn dy(&self) -> i32 {
        self.dy
    }
}

/// A raw step vector for animal graphs, sign-normalized but not reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Step {
    pub dx: i32,
    pub dy: i32,
}

impl Step {
    pub fn new(dx: i32, dy: i32) -> Result<Self, BoardError> {
        if dx == 0 && dy == 0 {
            return Err(BoardError::ZeroDirection);
        }
        let (dx, dy) = canonical_sign(dx, dy);
        Ok(Step { dx, dy })
    }
}

/// An ordered set of pairwise distinct directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionSet {
    dirs: Vec<Direction>,
}

impl DirectionSet {
    pub fn new(dirs: impl IntoIterator<Item = Direction>) -> Result<Self, BoardError> {
        let mut dirs: Vec<Direction> = dirs.into_iter().collect();
        dirs.sort();
        dirs.dedup();
        if dirs.is_empty() {
            return Err(BoardError::EmptyDirectionSet);
        }
        Ok(DirectionSet { dirs })
    }

    pub fn from_pairs(pairs: &[(i32, i32)]) -> Result<Self, BoardError> {
        Self::new(
            pairs
                .iter()
                .map(|&(dx, dy)| Direction::new(dx, dy))
                .collect::<Result<Vec<_>, _>>()?,
        )
    }

    pub fn dirs(&self) -> &[Direction] {
        &self.dirs
    }

    pub fn k(&self) -> usize {
        self.dirs.len()
    }

    pub fn contains(&self, d: Direction) -> bool {
        self.dirs.binary_search(&d).is_ok()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Royal,
    Animal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Piece {
    King,
    Knight,
    Rook,
    Bishop,
    Queen,
}

impl std::str::FromStr for Piece {
    type Err = BoardError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "king" => Ok(Piece::King),
            "knight" => Ok(Piece::Knight),
            "rook" => Ok(Piece::Rook),
            "bishop" => Ok(Piece::Bishop),
            "queen" => Ok(Piece::Queen),
            other => Err(BoardError::UnknownPiece(other.to_string())),
        }
    }
}

pub const QUEEN_DIRS: [(i32, i32); 4] = [(1, 0), (0, 1), (1, 1), (1, -1)];
pub const ROOK_DIRS: [(i32, i32); 2] = [(1, 0), (0, 1)];
pub const BISHOP_DIRS: [(i32, i32); 2] = [(1, 1), (1, -1)];
pub const KING_STEPS: [(i32, i32); 4] = [(1, 0), (0, 1), (1, 1), (1, -1)];
pub const KNIGHT_STEPS: [(i32, i32); 4] = [(1, 2), (2, 1), (2, -1), (1, -2)];

/// For each direction, the maximal lattice lines of the board, and for each
/// vertex the index of the line it lies on.
#[derive(Clone, Debug)]
pub struct LineSystem {
    /// `lines[d]` = all maximal lines of direction `d`, each an ordered
    /// vertex sequence.
    lines: Vec<Vec<Vec<VertexId>>>,
    /// `line_of[d][v]` = index into `lines[d]`.
    line_of: Vec<Vec<u32>>,
}

impl LineSystem {
    pub fn line(&self, dir_index: usize, v: VertexId) -> &[VertexId] {
        &self.lines[dir_index][self.line_of[dir_index][v as usize] as usize]
    }

    pub fn lines_of_direction(&self, dir_index: usize) -> &[Vec<VertexId>] {
        &self.lines[dir_index]
    }
}

/// One of the eight dihedral symmetries of the board, restricted to those
/// that preserve the direction (or step) set.
#[derive(Clone, Debug)]
pub struct Symmetry {
    /// Index into the dihedral group: bit 0 = flip x, bit 1 = flip y,
    /// bit 2 = transpose (applied first).
    pub element: u8,
    pub perm: Vec<VertexId>,
}

impl Symmetry {
    pub fn apply(&self, v: VertexId) -> VertexId {
        self.perm[v as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.element == 0
    }
}

fn dihedral_coord(element: u8, n: u16, c: Coord) -> Coord {
    let (mut x, mut y) = (c.x, c.y);
    if element & 4 != 0 {
        std::mem::swap(&mut x, &mut y);
    }
    if element & 1 != 0 {
        x = n + 1 - x;
    }
    if element & 2 != 0 {
        y = n + 1 - y;
    }
    Coord { x, y }
}

fn dihedral_dir(element: u8, (mut dx, mut dy): (i32, i32)) -> (i32, i32) {
    if element & 4 != 0 {
        std::mem::swap(&mut dx, &mut dy);
    }
    if element & 1 != 0 {
        dx = -dx;
    }
    if element & 2 != 0 {
        dy = -dy;
    }
    (dx, dy)
}

/// Immutable `n x n` lattice graph with royal (whole-line) or animal
/// (single-step) adjacency.
#[derive(Clone, Debug)]
pub struct BoardGraph {
    n: u16,
    mode: Mode,
    dirs: DirectionSet,
    steps: Vec<Step>,
    adj: Vec<Vec<VertexId>>,
    adj_bits: Vec<u64>,
    words_per_row: usize,
    lines: Option<LineSystem>,
}

impl BoardGraph {
    pub fn build_royal(n: u16, dirs: DirectionSet) -> Result<Self, BoardError> {
        Self::check_side(n)?;
        let v = n as usize * n as usize;
        let mut lines: Vec<Vec<Vec<VertexId>>> = Vec::with_capacity(dirs.k());
        let mut line_of: Vec<Vec<u32>> = Vec::with_capacity(dirs.k());
        let mut adj = vec![Vec::new(); v];
        for d in dirs.dirs() {
            let (dlines, dline_of) = enumerate_lines(n, d.dx(), d.dy());
            for line in &dlines {
                for (i, &a) in line.iter().enumerate() {
                    for &b in &line[i + 1..] {
                        adj[a as usize].push(b);
                        adj[b as usize].push(a);
                    }
                }
            }
            lines.push(dlines);
            line_of.push(dline_of);
        }
        let steps = dirs
            .dirs()
            .iter()
            .map(|d| Step {
                dx: d.dx(),
                dy: d.dy(),
            })
            .collect();
        Ok(Self::finish(
            n,
            Mode::Royal,
            dirs,
            steps,
            adj,
            Some(LineSystem { lines, line_of }),
        ))
    }

    pub fn build_animal(n: u16, raw_steps: &[(i32, i32)]) -> Result<Self, BoardError> {
        Self::check_side(n)?;
        let mut steps: Vec<Step> = raw_steps
            .iter()
            .map(|&(dx, dy)| Step::new(dx, dy))
            .collect::<Result<Vec<_>, _>>()?;
        steps.sort();
        steps.dedup();
        let dirs = DirectionSet::new(
            steps
                .iter()
                .map(|s| Direction::new(s.dx, s.dy))
                .collect::<Result<Vec<_>, _>>()?,
        )?;
        let v = n as usize * n as usize;
        let mut adj = vec![Vec::new(); v];
        for x in 1..=n {
            for y in 1..=n {
                let a = vertex_id(n, Coord { x, y });
                for s in &steps {
                    let nx = x as i64 + s.dx as i64;
                    let ny = y as i64 + s.dy as i64;
                    if nx >= 1 && nx <= n as i64 && ny >= 1 && ny <= n as i64 {
                        let b = vertex_id(
                            n,
                            Coord {
                                x: nx as u16,
                                y: ny as u16,
                            },
                        );
                        adj[a as usize].push(b);
                        adj[b as usize].push(a);
                    }
                }
            }
        }
        Ok(Self::finish(n, Mode::Animal, dirs, steps, adj, None))
    }

    pub fn preset(piece: Piece, n: u16) -> Result<Self, BoardError> {
        match piece {
            Piece::Queen => Self::build_royal(n, DirectionSet::from_pairs(&QUEEN_DIRS)?),
            Piece::Rook => Self::build_royal(n, DirectionSet::from_pairs(&ROOK_DIRS)?),
            Piece::Bishop => Self::build_royal(n, DirectionSet::from_pairs(&BISHOP_DIRS)?),
            Piece::King => Self::build_animal(n, &KING_STEPS),
            Piece::Knight => Self::build_animal(n, &KNIGHT_STEPS),
        }
    }

    fn check_side(n: u16) -> Result<(), BoardError> {
        if n == 0 {
            return Err(BoardError::ZeroSide);
        }
        let v = n as usize * n as usize;
        if v > MAX_VERTICES {
            return Err(BoardError::TooLarge(v));
        }
        Ok(())
    }

    fn finish(
        n: u16,
        mode: Mode,
        dirs: DirectionSet,
        steps: Vec<Step>,
        mut adj: Vec<Vec<VertexId>>,
        lines: Option<LineSystem>,
    ) -> Self {
        let v = adj.len();
        let words_per_row = v.div_ceil(64);
        let mut adj_bits = vec![0u64; v * words_per_row];
        for (a, nbrs) in adj.iter_mut().enumerate() {
            nbrs.sort_unstable();
            nbrs.dedup();
            debug_assert!(!nbrs.contains(&(a as VertexId)));
            for &b in nbrs.iter() {
                adj_bits[a * words_per_row + b as usize / 64] |= 1u64 << (b % 64);
            }
        }
        BoardGraph {
            n,
            mode,
            dirs,
            steps,
            adj,
            adj_bits,
            words_per_row,
            lines,
        }
    }

    pub fn n(&self) -> u16 {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn dirs(&self) -> &DirectionSet {
        &self.dirs
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn vertex_id(&self, c: Coord) -> VertexId {
        vertex_id(self.n, c)
    }

    pub fn coord(&self, v: VertexId) -> Coord {
        Coord {
            x: v / self.n + 1,
            y: v % self.n + 1,
        }
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v as usize].len()
    }

    pub fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.adj_bits[a as usize * self.words_per_row + b as usize / 64] >> (b % 64) & 1 != 0
    }

    /// Neighbor-row bitset of `v` (`words_per_row` words).
    pub fn neighbor_bits(&self, v: VertexId) -> &[u64] {
        let w = self.words_per_row;
        &self.adj_bits[v as usize * w..(v as usize + 1) * w]
    }

    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for (a, nbrs) in self.adj.iter().enumerate() {
            for &b in nbrs {
                if (a as VertexId) < b {
                    out.push((a as VertexId, b));
                }
            }
        }
        out
    }

    /// Connected components, ordered by size descending then by smallest
    /// vertex id.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let v = self.num_vertices();
        let mut seen = vec![false; v];
        let mut comps = Vec::new();
        for start in 0..v {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start as VertexId];
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &w in self.neighbors(u) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        comps
    }

    /// All maximal lattice lines through `v`, one per direction.
    ///
    /// Only royal graphs are line-structured; animal adjacency is a single
    /// step, not a line.
    pub fn lines_through(&self, v: VertexId) -> Result<BTreeMap<Direction, Vec<VertexId>>, BoardError> {
        let lines = self.lines.as_ref().ok_or(BoardError::NotRoyal)?;
        Ok(self
            .dirs
            .dirs()
            .iter()
            .enumerate()
            .map(|(i, &d)| (d, lines.line(i, v).to_vec()))
            .collect())
    }

    pub fn line_system(&self) -> Result<&LineSystem, BoardError> {
        self.lines.as_ref().ok_or(BoardError::NotRoyal)
    }

    /// The subgroup of the eight dihedral board symmetries whose linear part
    /// maps the direction set (royal) or step set (animal) onto itself.
    /// Always contains the identity.
    pub fn automorphisms(&self) -> Vec<Symmetry> {
        let mut out = Vec::new();
        for element in 0u8..8 {
            let preserves = match self.mode {
                Mode::Royal => self.dirs.dirs().iter().all(|d| {
                    let (dx, dy) = dihedral_dir(element, (d.dx(), d.dy()));
                    Direction::new(dx, dy).map(|m| self.dirs.contains(m)).unwrap_or(false)
                }),
                Mode::Animal => self.steps.iter().all(|s| {
                    let (dx, dy) = dihedral_dir(element, (s.dx, s.dy));
                    Step::new(dx, dy).map(|m| self.steps.binary_search(&m).is_ok()).unwrap_or(false)
                }),
            };
            if !preserves {
                continue;
            }
            let perm = (0..self.num_vertices() as VertexId)
                .map(|v| self.vertex_id(dihedral_coord(element, self.n, self.coord(v))))
                .collect();
            out.push(Symmetry { element, perm });
        }
        out
    }

    pub fn to_json(&self) -> GraphJson {
        let dirs = match self.mode {
            Mode::Royal => self.dirs.dirs().iter().map(|d| [d.dx(), d.dy()]).collect(),
            Mode::Animal => self.steps.iter().map(|s| [s.dx, s.dy]).collect(),
        };
        let mut edges: Vec<[VertexId; 2]> = self.edges().iter().map(|&(a, b)| [a, b]).collect();
        edges.sort_unstable();
        GraphJson {
            n: self.n,
            mode: self.mode,
            dirs,
            edges,
        }
    }

    /// Rebuilds the graph from its JSON descriptor and checks that the edge
    /// list matches the reconstruction exactly.
    pub fn from_json(json: &GraphJson) -> Result<Self, BoardError> {
        let pairs: Vec<(i32, i32)> = json.dirs.iter().map(|d| (d[0], d[1])).collect();
        let g = match json.mode {
            Mode::Royal => Self::build_royal(json.n, DirectionSet::from_pairs(&pairs)?)?,
            Mode::Animal => Self::build_animal(json.n, &pairs)?,
        };
        let mut edges: Vec<[VertexId; 2]> = g.edges().iter().map(|&(a, b)| [a, b]).collect();
        edges.sort_unstable();
        if edges != json.edges {
            return Err(BoardError::BadGraphJson(format!(
                "edge list mismatch: descriptor has {} edges, reconstruction has {}",
                json.edges.len(),
                edges.len()
            )));
        }
        Ok(g)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph board {\n");
        for v in 0..self.num_vertices() as VertexId {
            let c = self.coord(v);
            let _ = writeln!(s, "  v{} [label=\"({},{})\"];", v, c.x, c.y);
        }
        for (a, b) in self.edges() {
            let _ = writeln!(s, "  v{} -- v{};", a, b);
        }
        s.push_str("}\n");
        s
    }

    /// A compact human-readable descriptor, used in transcripts and reports.
    pub fn descriptor(&self) -> String {
        let mode = match self.mode {
            Mode::Royal => "royal",
            Mode::Animal => "animal",
        };
        let dirs: Vec<String> = match self.mode {
            Mode::Royal => self.dirs.dirs().iter().map(|d| format!("{},{}", d.dx(), d.dy())).collect(),
            Mode::Animal => self.steps.iter().map(|s| format!("{},{}", s.dx, s.dy)).collect(),
        };
        format!("{}[{}] n={}", mode, dirs.join(";"), self.n)
    }
}

fn vertex_id(n: u16, c: Coord) -> VertexId {
    debug_assert!(c.x >= 1 && c.x <= n && c.y >= 1 && c.y <= n);
    (c.x - 1) * n + (c.y - 1)
}

/// All maximal lines of direction `(dx, dy)` on the `n x n` board, plus the
/// vertex-to-line index.
fn enumerate_lines(n: u16, dx: i32, dy: i32) -> (Vec<Vec<VertexId>>, Vec<u32>) {
    let v = n as usize * n as usize;
    let mut line_of = vec![u32::MAX; v];
    let mut lines = Vec::new();
    for x in 1..=n as i64 {
        for y in 1..=n as i64 {
            // line starts where the previous point is off-board
            let px = x - dx as i64;
            let py = y - dy as i64;
            if px >= 1 && px <= n as i64 && py >= 1 && py <= n as i64 {
                continue;
            }
            let mut line = Vec::new();
            let (mut cx, mut cy) = (x, y);
            while cx >= 1 && cx <= n as i64 && cy >= 1 && cy <= n as i64 {
                let id = vertex_id(
                    n,
                    Coord {
                        x: cx as u16,
                        y: cy as u16,
                    },
                );
                line_of[id as usize] = lines.len() as u32;
                line.push(id);
                cx += dx as i64;
                cy += dy as i64;
            }
            lines.push(line);
        }
    }
    debug_assert!(line_of.iter().all(|&l| l != u32::MAX));
    (lines, line_of)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub n: u16,
    pub mode: Mode,
    pub dirs: Vec<[i32; 2]>,
    pub edges: Vec<[VertexId; 2]>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn queen(n: u16) -> BoardGraph {
        BoardGraph::preset(Piece::Queen, n).unwrap()
    }

    #[test]
    fn queen_center_neighbor_count_matches_figure() {
        let g = queen(8);
        let v = g.vertex_id(Coord::new(4, 4));
        assert_eq!(g.degree(v), 27);
    }

    #[test]
    fn queen_7_center_degree() {
        let g = queen(7);
        assert_eq!(g.num_vertices(), 49);
        // 6 on the row, 6 on the column, 6 on each full diagonal
        assert_eq!(g.degree(g.vertex_id(Coord::new(4, 4))), 24);
    }

    #[test]
    fn single_diagonal_on_two_board() {
        let g = BoardGraph::build_royal(2, DirectionSet::from_pairs(&[(1, 1)]).unwrap()).unwrap();
        let a = g.vertex_id(Coord::new(1, 1));
        let b = g.vertex_id(Coord::new(2, 2));
        assert!(g.adjacent(a, b));
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.degree(g.vertex_id(Coord::new(1, 2))), 0);
        assert_eq!(g.degree(g.vertex_id(Coord::new(2, 1))), 0);
    }

    #[test]
    fn one_board_is_k1() {
        let g = BoardGraph::build_royal(1, DirectionSet::from_pairs(&QUEEN_DIRS).unwrap()).unwrap();
        assert_eq!(g.num_vertices(), 1);
        assert!(g.edges().is_empty());
        let k = BoardGraph::preset(Piece::King, 1).unwrap();
        assert!(k.edges().is_empty());
    }

    #[test]
    fn knight_3_is_c8_plus_k1() {
        let g = BoardGraph::preset(Piece::Knight, 3).unwrap();
        let comps = g.components();
        let sizes: Vec<usize> = comps.iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![8, 1]);
        for &v in &comps[0] {
            assert_eq!(g.degree(v), 2);
        }
        assert_eq!(comps[1][0], g.vertex_id(Coord::new(2, 2)));
    }

    #[test]
    fn knight_2_has_no_moves() {
        let g = BoardGraph::preset(Piece::Knight, 2).unwrap();
        assert!(g.edges().is_empty());
        assert_eq!(g.components().len(), 4);
    }

    #[test]
    fn bishop_has_two_color_classes() {
        let g = BoardGraph::preset(Piece::Bishop, 4).unwrap();
        assert_eq!(g.components().len(), 2);
        let q = queen(8);
        assert_eq!(q.components().len(), 1);
        assert_eq!(q.components()[0].len(), 64);
    }

    #[test]
    fn king_equals_royal_of_unit_steps_on_animal_build() {
        // animal and royal coincide when every step is a single king move
        let animal = BoardGraph::preset(Piece::King, 5).unwrap();
        let mut king_edges = animal.edges();
        king_edges.sort_unstable();
        // direct single-step enumeration as an independent oracle
        let mut expect = Vec::new();
        for x in 1..=5i32 {
            for y in 1..=5i32 {
                for (dx, dy) in [(1, 0), (0, 1), (1, 1), (1, -1)] {
                    let (nx, ny) = (x + dx, y + dy);
                    if (1..=5).contains(&nx) && (1..=5).contains(&ny) {
                        let a = animal.vertex_id(Coord::new(x as u16, y as u16));
                        let b = animal.vertex_id(Coord::new(nx as u16, ny as u16));
                        expect.push((a.min(b), a.max(b)));
                    }
                }
            }
        }
        expect.sort_unstable();
        expect.dedup();
        assert_eq!(king_edges, expect);
    }

    #[test]
    fn lines_through_q9_edge_midpoint() {
        let g = queen(9);
        let v = g.vertex_id(Coord::new(5, 1));
        let lines = g.lines_through(v).unwrap();
        let d1 = Direction::new(1, 1).unwrap();
        let d2 = Direction::new(1, -1).unwrap();
        assert_eq!(lines[&d1].len(), 5);
        assert_eq!(lines[&d2].len(), 5);
    }

    #[test]
    fn lines_through_corners_and_center() {
        let g = queen(8);
        let corner = g.vertex_id(Coord::new(1, 1));
        let lines = g.lines_through(corner).unwrap();
        assert_eq!(lines[&Direction::new(1, -1).unwrap()], vec![corner]);
        let center = g.vertex_id(Coord::new(4, 4));
        let lines = g.lines_through(center).unwrap();
        assert_eq!(lines[&Direction::new(1, 0).unwrap()].len(), 8);
        assert_eq!(lines[&Direction::new(0, 1).unwrap()].len(), 8);
    }

    #[test]
    fn lines_unsupported_on_animal() {
        let g = BoardGraph::preset(Piece::Knight, 4).unwrap();
        assert!(matches!(g.lines_through(0), Err(BoardError::NotRoyal)));
    }

    #[test]
    fn automorphism_groups() {
        for piece in [Piece::Queen, Piece::Knight, Piece::King, Piece::Rook] {
            let g = BoardGraph::preset(piece, 5).unwrap();
            assert_eq!(g.automorphisms().len(), 8, "{piece:?}");
        }
        let g = BoardGraph::build_royal(5, DirectionSet::from_pairs(&[(1, 0), (2, 1)]).unwrap()).unwrap();
        let autos = g.automorphisms();
        // identity plus the 180-degree rotation (which fixes every
        // unoriented direction)
        assert_eq!(autos.len(), 2);
        assert!(autos.iter().any(|s| s.element == 0));
        assert!(autos.iter().any(|s| s.element == 3));
    }

    #[test]
    fn automorphisms_preserve_adjacency() {
        for piece in [Piece::Queen, Piece::Knight, Piece::Bishop] {
            let g = BoardGraph::preset(piece, 6).unwrap();
            for sym in g.automorphisms() {
                for (a, b) in g.edges() {
                    assert!(g.adjacent(sym.apply(a), sym.apply(b)));
                }
            }
        }
    }

    #[test]
    fn adjacency_is_symmetric_and_loopless() {
        for g in [
            queen(6),
            BoardGraph::preset(Piece::Knight, 6).unwrap(),
            BoardGraph::build_royal(6, DirectionSet::from_pairs(&[(1, 2), (3, 1)]).unwrap()).unwrap(),
        ] {
            for v in 0..g.num_vertices() as VertexId {
                assert!(!g.adjacent(v, v));
                for &w in g.neighbors(v) {
                    assert!(g.adjacent(w, v));
                }
            }
        }
    }

    #[test]
    fn royal_adjacency_matches_lines() {
        let g = BoardGraph::build_royal(7, DirectionSet::from_pairs(&[(1, 0), (1, 2)]).unwrap()).unwrap();
        for u in 0..g.num_vertices() as VertexId {
            let on_lines: Vec<VertexId> = {
                let mut s: Vec<VertexId> = g
                    .lines_through(u)
                    .unwrap()
                    .values()
                    .flatten()
                    .copied()
                    .filter(|&w| w != u)
                    .collect();
                s.sort_unstable();
                s.dedup();
                s
            };
            assert_eq!(g.neighbors(u), &on_lines[..]);
        }
    }

    #[test]
    fn zero_direction_rejected() {
        assert!(Direction::new(0, 0).is_err());
        assert!(BoardGraph::build_animal(4, &[(0, 0)]).is_err());
        assert!(BoardGraph::build_royal(0, DirectionSet::from_pairs(&[(1, 0)]).unwrap()).is_err());
    }

    #[test]
    fn json_round_trip() {
        for g in [
            queen(5),
            BoardGraph::preset(Piece::Knight, 5).unwrap(),
            BoardGraph::build_animal(5, &[(2, 2)]).unwrap(),
        ] {
            let json = g.to_json();
            let text = serde_json::to_string(&json).unwrap();
            let back: GraphJson = serde_json::from_str(&text).unwrap();
            let g2 = BoardGraph::from_json(&back).unwrap();
            assert_eq!(g.edges(), g2.edges());
        }
    }

    #[test]
    fn non_primitive_animal_step_kept_raw() {
        // (2,2) steps connect squares two diagonal steps apart, not one
        let g = BoardGraph::build_animal(4, &[(2, 2)]).unwrap();
        let a = g.vertex_id(Coord::new(1, 1));
        let b = g.vertex_id(Coord::new(3, 3));
        let c = g.vertex_id(Coord::new(2, 2));
        assert!(g.adjacent(a, b));
        assert!(!g.adjacent(a, c));
        // but the canonical direction set is reduced
        assert!(g.dirs().contains(Direction::new(1, 1).unwrap()));
    }
}
