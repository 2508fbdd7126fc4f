//! Exact k-cop solve of the queen graph Q_n.
//!
//! Usage: cargo run --release --example solve_queen -- [n] [k]

use copnum::board::{BoardGraph, Piece};
use copnum::solver::{solve_k, SolveOptions};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: u16 = args.next().map_or(8, |a| a.parse().expect("board size"));
    let k: usize = args.next().map_or(2, |a| a.parse().expect("cop count"));

    let g = BoardGraph::preset(Piece::Queen, n).expect("board");
    let t0 = std::time::Instant::now();
    let res = solve_k(&g, k, &SolveOptions::default()).expect("solve");
    let dt = t0.elapsed();

    println!(
        "Q_{n} with {k} cop(s): {}",
        if res.cops_win { "cops win" } else { "robber escapes" }
    );
    if let Some(start) = &res.optimal_start {
        let coords: Vec<String> = start
            .iter()
            .map(|&v| {
                let c = g.coord(v);
                format!("({},{})", c.x, c.y)
            })
            .collect();
        println!(
            "  optimal start {} capturing in {} move(s)",
            coords.join(" "),
            res.capture_time.unwrap()
        );
    }
    println!(
        "  {} states, ~{} MiB, {:.2?}",
        res.state_count,
        res.peak_memory_estimate >> 20,
        dt
    );
}
