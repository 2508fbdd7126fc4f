//! Board-graph construction and export: presets, custom direction sets,
//! DOT output, and the JSON round trip.
//!
//! Usage: cargo run --release --example export_graph -- [piece] [n]

use copnum::board::{BoardGraph, Piece};

fn main() {
    let mut args = std::env::args().skip(1);
    let piece: Piece = args
        .next()
        .map_or(Piece::Knight, |a| a.parse().expect("piece name"));
    let n: u16 = args.next().map_or(4, |a| a.parse().expect("board size"));

    let g = BoardGraph::preset(piece, n).expect("board");
    println!("{} has {} vertices and {} edges", g.descriptor(), g.num_vertices(), g.edges().len());

    let restored = BoardGraph::from_json(&g.to_json()).expect("round trip");
    assert_eq!(g.edges(), restored.edges());
    println!("JSON round trip preserves adjacency");

    print!("{}", g.to_dot());
}
