//! The octagonal evasion region on the queen board, drawn as a board map,
//! plus a short confinement game against three greedy cops.
//!
//! Usage: cargo run --release --example octagon_evasion -- [side_len] [cap]

use copnum::board::{BoardGraph, Coord, Piece};
use copnum::strategies::{
    octagon_minimal_n, octagon_region, simulate, GreedyCops, Placements, RegionRobber,
};

fn main() {
    let mut args = std::env::args().skip(1);
    let side: u16 = args.next().map_or(8, |a| a.parse().expect("side length"));
    let cap: u32 = args.next().map_or(60, |a| a.parse().expect("turn cap"));

    let n = octagon_minimal_n(side);
    println!("octagon with {side}-vertex sides first fits on the {n}x{n} board");
    let region = octagon_region(n, side).expect("fits at the minimal size");
    println!("region has {} vertices:", region.len());
    for y in (1..=n).rev() {
        let row: String = (1..=n)
            .map(|x| if region.contains(&Coord::new(x, y)) { '#' } else { '.' })
            .collect();
        println!("  {row}");
    }

    let g = BoardGraph::preset(Piece::Queen, n).expect("board");
    let mut cops = GreedyCops::new(3);
    let mut robber = RegionRobber::octagon(&g, side).expect("fits");
    let t = simulate(&g, &mut cops, &mut robber, &Placements::default(), cap).expect("game");
    println!(
        "region-confined robber vs 3 greedy cops: {} after {} turns",
        if t.result.is_captured() { "captured" } else { "survived" },
        t.result.turn()
    );
}
