//! Royal-family experiments for sample direction sets of size 2, 3, and 4:
//! guarding cops capturing the greedy robber, and the evasion region that
//! lets the robber survive one cop fewer.
//!
//! Usage: cargo run --release --example royal_family

use copnum::board::{BoardGraph, DirectionSet, QUEEN_DIRS};
use copnum::strategies::{
    evasion_region, evasion_simulation_board, guarding_threshold, simulate, GreedyCops,
    GreedyRobber, GuardingCops, Placements, RegionRobber,
};

fn main() {
    let samples: [&[(i32, i32)]; 3] = [&[(1, 0), (0, 1)], &[(1, 0), (0, 1), (1, 1)], &QUEEN_DIRS];
    for pairs in samples {
        let dirs = DirectionSet::from_pairs(pairs).expect("directions");
        let k = dirs.k();
        println!(
            "k = {k}: directions {pairs:?}, guarding threshold {}",
            guarding_threshold(k)
        );

        let g = BoardGraph::build_royal(12, dirs.clone()).expect("board");
        let mut cops = GuardingCops::new(&g).expect("royal board");
        let mut robber = GreedyRobber;
        let t = simulate(&g, &mut cops, &mut robber, &Placements::default(), 500).expect("game");
        println!(
            "  {k} guarding cops vs greedy robber on n=12: {} at turn {}",
            if t.result.is_captured() { "captured" } else { "no capture" },
            t.result.turn()
        );

        let n = evasion_simulation_board(&dirs);
        let (region, minimal_n) = evasion_region(&dirs, n);
        println!(
            "  evasion region nonempty from n={minimal_n}; {} vertices on n={n}",
            region.len()
        );
        let g = BoardGraph::build_royal(n, dirs).expect("board");
        let mut cops = GreedyCops::new(k - 1);
        let mut robber = RegionRobber::evasion(&g).expect("royal board");
        let t = simulate(&g, &mut cops, &mut robber, &Placements::default(), 500).expect("game");
        println!(
            "  region robber vs {} greedy cops on n={n}: {} after {} turns",
            k - 1,
            if t.result.is_captured() { "captured" } else { "survived" },
            t.result.turn()
        );
    }
}
