//! Per-component cop numbers of the knight boards n = 1..8.
//!
//! Usage: cargo run --release --example cop_numbers -- [n_from] [n_to]

use copnum::board::{BoardGraph, Piece};
use copnum::solver::{cop_number, SolveOptions};

fn main() {
    let mut args = std::env::args().skip(1);
    let from: u16 = args.next().map_or(1, |a| a.parse().expect("n_from"));
    let to: u16 = args.next().map_or(8, |a| a.parse().expect("n_to"));

    let opts = SolveOptions::default();
    println!("{:>3} {:>10} {:>8}  per component", "n", "vertices", "additive");
    for n in from..=to {
        let g = BoardGraph::preset(Piece::Knight, n).expect("board");
        let report = cop_number(&g, &opts);
        let comps: Vec<String> = report
            .per_component
            .iter()
            .map(|c| match c.cop_number {
                Some(k) => format!("{} vertices: {k}", c.size),
                None => format!("{} vertices: {}", c.size, c.unresolved.as_deref().unwrap_or("?")),
            })
            .collect();
        println!(
            "{n:>3} {:>10} {:>8}  {}",
            g.num_vertices(),
            report
                .additive_total
                .map_or("-".into(), |t| t.to_string()),
            comps.join("; ")
        );
    }
}
