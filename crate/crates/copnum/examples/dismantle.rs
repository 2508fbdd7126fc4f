//! Dismantlability as a cop-win certificate: the king board's removal
//! order, checked against the exact 1-cop solve.
//!
//! Usage: cargo run --release --example dismantle -- [n]

use copnum::board::{BoardGraph, Piece};
use copnum::solver::{is_dismantlable, solve_k, SolveOptions};

fn main() {
    let n: u16 = std::env::args().nth(1).map_or(4, |a| a.parse().expect("board size"));
    let g = BoardGraph::preset(Piece::King, n).expect("board");
    let (ok, order) = is_dismantlable(&g);
    println!("king board n={n}: dismantlable = {ok}");
    let coords: Vec<String> = order
        .iter()
        .map(|&v| {
            let c = g.coord(v);
            format!("({},{})", c.x, c.y)
        })
        .collect();
    println!("removal order: {}", coords.join(" "));

    let res = solve_k(&g, 1, &SolveOptions::default()).expect("solve");
    println!(
        "exact 1-cop solve agrees: cops win = {}, capture time = {:?}",
        res.cops_win, res.capture_time
    );
}
