//! Knight-board strategy catalog: the four-cop square formation, the
//! three-cop diagonal formation, and the surviving robber formations.
//!
//! Usage: cargo run --release --example knight_formations -- [n] [cap]

use copnum::board::{BoardGraph, Piece};
use copnum::solver::SolveOptions;
use copnum::strategies::{
    make_cop_strategy, make_robber_strategy, simulate, GreedyRobber, Placements, Transcript,
};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: u16 = args.next().map_or(8, |a| a.parse().expect("board size"));
    let cap: u32 = args.next().map_or(500, |a| a.parse().expect("turn cap"));
    let opts = SolveOptions::default();

    println!("{}", Transcript::CSV_HEADER);
    let g = BoardGraph::preset(Piece::Knight, n).expect("board");
    for cops in ["square_formation:4", "diagonal_formation:3"] {
        let (name, k) = cops.split_once(':').unwrap();
        let mut c = make_cop_strategy(name, Some(k.parse().unwrap()), &g, &opts).expect("cops");
        let mut r = GreedyRobber;
        let t = simulate(&g, c.as_mut(), &mut r, &Placements::default(), cap).expect("game");
        println!("{}", t.csv_row());
    }

    // surviving robbers against the exact cop oracle
    for (nn, k, robber) in [(5u16, 1usize, "four_cycle"), (7, 2, "degree4")] {
        let g = BoardGraph::preset(Piece::Knight, nn).expect("board");
        let mut c = make_cop_strategy("oracle", Some(k), &g, &opts).expect("cops");
        let mut r = make_robber_strategy(robber, k, &g, &opts).expect("robber");
        let t = simulate(&g, c.as_mut(), r.as_mut(), &Placements::default(), cap).expect("game");
        println!("{}", t.csv_row());
    }
}
