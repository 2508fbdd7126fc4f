//! Greedy 3-cop chase of the greedy robber across a range of queen boards.
//!
//! Usage: cargo run --release --example greedy_queen -- [n_from] [n_to] [k]

use copnum::board::{BoardGraph, Piece};
use copnum::strategies::{simulate, GreedyCops, GreedyRobber, Placements, Transcript};

fn main() {
    let mut args = std::env::args().skip(1);
    let from: u16 = args.next().map_or(7, |a| a.parse().expect("n_from"));
    let to: u16 = args.next().map_or(18, |a| a.parse().expect("n_to"));
    let k: usize = args.next().map_or(3, |a| a.parse().expect("cop count"));

    println!("{}", Transcript::CSV_HEADER);
    for n in from..=to {
        let g = BoardGraph::preset(Piece::Queen, n).expect("board");
        let mut cops = GreedyCops::new(k);
        let mut robber = GreedyRobber;
        let t = simulate(&g, &mut cops, &mut robber, &Placements::default(), 500)
            .expect("simulation");
        println!("{}", t.csv_row());
    }
}
