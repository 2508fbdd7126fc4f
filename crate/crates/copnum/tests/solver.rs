//! The production solver against an independent reference implementation:
//! a plain hash-map retrograde solver over full game states with
//! simultaneous joint cop moves and no symmetry reduction or staging.

use std::collections::{HashMap, HashSet, VecDeque};

use copnum::board::{BoardGraph, Piece, VertexId};
use copnum::solver::{solve_k, SolveOptions, SolveResult};

type Key = (Vec<VertexId>, VertexId, bool); // (sorted cops, robber, cops to move)

struct Reference {
    /// Resolved cop-win depths in plies; unresolved states are robber wins.
    depth: HashMap<Key, u32>,
}

fn closed(g: &BoardGraph, v: VertexId) -> Vec<VertexId> {
    let mut c = vec![v];
    c.extend_from_slice(g.neighbors(v));
    c
}

fn multisets(v: usize, k: usize) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    let mut buf = Vec::new();
    fn rec(v: usize, k: usize, min: VertexId, buf: &mut Vec<VertexId>, out: &mut Vec<Vec<VertexId>>) {
        if buf.len() == k {
            out.push(buf.clone());
            return;
        }
        for x in min..v as VertexId {
            buf.push(x);
            rec(v, k, x, buf, out);
            buf.pop();
        }
    }
    rec(v, k, 0, &mut buf, &mut out);
    out
}

fn joint_moves(g: &BoardGraph, cops: &[VertexId]) -> Vec<Vec<VertexId>> {
    let per_cop: Vec<Vec<VertexId>> = cops.iter().map(|&c| closed(g, c)).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut pick = vec![0usize; cops.len()];
    loop {
        let mut dest: Vec<VertexId> = pick.iter().zip(&per_cop).map(|(&i, opts)| opts[i]).collect();
        dest.sort_unstable();
        if seen.insert(dest.clone()) {
            out.push(dest);
        }
        let mut slot = 0;
        loop {
            if slot == cops.len() {
                return out;
            }
            pick[slot] += 1;
            if pick[slot] < per_cop[slot].len() {
                break;
            }
            pick[slot] = 0;
            slot += 1;
        }
    }
}

fn solve_reference(g: &BoardGraph, k: usize) -> Reference {
    let v = g.num_vertices();
    let cop_sets = multisets(v, k);
    let mut ids: HashMap<Key, usize> = HashMap::new();
    let mut keys: Vec<Key> = Vec::new();
    for cops in &cop_sets {
        for r in 0..v as VertexId {
            for side in [true, false] {
                let key = (cops.clone(), r, side);
                ids.insert(key.clone(), keys.len());
                keys.push(key);
            }
        }
    }
    let mut succ: Vec<Vec<u32>> = vec![Vec::new(); keys.len()];
    let mut preds: Vec<Vec<u32>> = vec![Vec::new(); keys.len()];
    for (i, (cops, r, cops_to_move)) in keys.iter().enumerate() {
        if cops.contains(r) {
            continue; // terminal capture
        }
        let nexts: Vec<Key> = if *cops_to_move {
            joint_moves(g, cops).into_iter().map(|c| (c, *r, false)).collect()
        } else {
            closed(g, *r).into_iter().map(|nr| (cops.clone(), nr, true)).collect()
        };
        for key in nexts {
            let j = ids[&key];
            succ[i].push(j as u32);
            preds[j].push(i as u32);
        }
    }
    let mut depth: Vec<Option<u32>> = vec![None; keys.len()];
    let mut remaining: Vec<usize> = succ.iter().map(|s| s.len()).collect();
    let mut queue = VecDeque::new();
    for (i, (cops, r, _)) in keys.iter().enumerate() {
        if cops.contains(r) {
            depth[i] = Some(0);
            queue.push_back(i);
        }
    }
    while let Some(i) = queue.pop_front() {
        let d = depth[i].unwrap();
        for &p in &preds[i] {
            let p = p as usize;
            if depth[p].is_some() {
                continue;
            }
            let cops_to_move = keys[p].2;
            if cops_to_move {
                depth[p] = Some(d + 1);
                queue.push_back(p);
            } else {
                remaining[p] -= 1;
                if remaining[p] == 0 {
                    // BFS order: the last successor to resolve has max depth
                    depth[p] = Some(d + 1);
                    queue.push_back(p);
                }
            }
        }
    }
    let map = keys
        .into_iter()
        .enumerate()
        .filter_map(|(i, key)| depth[i].map(|d| (key, d)))
        .collect();
    Reference { depth: map }
}

impl Reference {
    /// Best worst-case capture time over winning cop starts, in cop moves.
    fn summary(&self, g: &BoardGraph, k: usize) -> (bool, Option<u32>) {
        let v = g.num_vertices();
        let mut best: Option<u32> = None;
        for cops in multisets(v, k) {
            let mut worst = 0u32;
            let mut all_win = true;
            for r in 0..v as VertexId {
                match self.depth.get(&(cops.clone(), r, true)) {
                    Some(&plies) => worst = worst.max(plies.div_ceil(2)),
                    None => {
                        all_win = false;
                        break;
                    }
                }
            }
            if all_win {
                best = Some(best.map_or(worst, |b| b.min(worst)));
            }
        }
        (best.is_some(), best)
    }
}

fn check(g: &BoardGraph, k: usize, opts: &SolveOptions) -> SolveResult {
    let res = solve_k(g, k, opts).expect("solve");
    let (win, time) = solve_reference(g, k).summary(g, k);
    assert_eq!(res.cops_win, win, "{} k={k} win", g.descriptor());
    assert_eq!(res.capture_time, time, "{} k={k} capture time", g.descriptor());
    res
}

#[test]
fn matches_reference_on_small_boards() {
    let opts = SolveOptions::default();
    let cases: [(Piece, u16, usize); 9] = [
        (Piece::King, 3, 1),
        (Piece::Rook, 3, 1),
        (Piece::Rook, 4, 2),
        (Piece::Queen, 3, 3),
        (Piece::Queen, 4, 1),
        (Piece::Queen, 4, 2),
        (Piece::Knight, 4, 1),
        (Piece::Knight, 4, 2),
        (Piece::Knight, 5, 2),
    ];
    for (piece, n, k) in cases {
        let g = BoardGraph::preset(piece, n).unwrap();
        check(&g, k, &opts);
    }
}

#[test]
fn matches_reference_on_disconnected_boards() {
    let opts = SolveOptions::default();
    // knight n=3 isolates the center; bishop boards split by square color
    for (piece, n, k) in [(Piece::Knight, 3, 1), (Piece::Knight, 3, 2), (Piece::Bishop, 3, 2)] {
        let g = BoardGraph::preset(piece, n).unwrap();
        check(&g, k, &opts);
    }
}

#[test]
fn symmetry_toggle_is_invisible() {
    let on = SolveOptions::default();
    let off = SolveOptions {
        use_symmetry: false,
        ..SolveOptions::default()
    };
    for piece in [Piece::King, Piece::Rook, Piece::Bishop, Piece::Queen, Piece::Knight] {
        for n in 2u16..=6 {
            for k in 1..=3usize {
                let g = BoardGraph::preset(piece, n).unwrap();
                let a = solve_k(&g, k, &on).unwrap();
                let b = solve_k(&g, k, &off).unwrap();
                assert_eq!(
                    (a.cops_win, a.capture_time),
                    (b.cops_win, b.capture_time),
                    "{} k={k}",
                    g.descriptor()
                );
            }
        }
    }
}

#[test]
fn budget_is_enforced() {
    let g = BoardGraph::preset(Piece::Queen, 5).unwrap();
    let opts = SolveOptions {
        state_budget: 100,
        ..SolveOptions::default()
    };
    assert!(solve_k(&g, 2, &opts).is_err());
}
