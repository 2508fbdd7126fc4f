//! Simulation-level behavior of the named strategies.

use copnum::board::{BoardGraph, Coord, DirectionSet, Piece};
use copnum::solver::SolveOptions;
use copnum::strategies::{
    make_cop_strategy, make_robber_strategy, simulate, GreedyCops, GreedyRobber, Placements,
};

fn opts() -> SolveOptions {
    SolveOptions::default()
}

#[test]
fn four_cycle_survives_one_oracle_cop() {
    for n in [4u16, 5] {
        let g = BoardGraph::preset(Piece::Knight, n).unwrap();
        let mut cops = make_cop_strategy("oracle", Some(1), &g, &opts()).unwrap();
        let mut robber = make_robber_strategy("four_cycle", 1, &g, &opts()).unwrap();
        let t = simulate(&g, cops.as_mut(), robber.as_mut(), &Placements::default(), 500).unwrap();
        assert!(!t.result.is_captured(), "N_{n}: {:?}", t.result);
        assert_eq!(t.result.turn(), 500);
    }
}

#[test]
fn degree4_subgraph_survives_two_oracle_cops() {
    let g = BoardGraph::preset(Piece::Knight, 7).unwrap();
    let mut cops = make_cop_strategy("oracle", Some(2), &g, &opts()).unwrap();
    let mut robber = make_robber_strategy("degree4", 2, &g, &opts()).unwrap();
    let t = simulate(&g, cops.as_mut(), robber.as_mut(), &Placements::default(), 500).unwrap();
    assert!(!t.result.is_captured(), "{:?}", t.result);
}

#[test]
fn square_formation_captures_greedy_robber() {
    for n in [7u16, 8, 10] {
        let g = BoardGraph::preset(Piece::Knight, n).unwrap();
        let mut cops = make_cop_strategy("square_formation", Some(4), &g, &opts()).unwrap();
        let mut robber = GreedyRobber;
        let t = simulate(&g, cops.as_mut(), &mut robber, &Placements::default(), 500).unwrap();
        assert!(t.result.is_captured(), "N_{n}: {:?}", t.result);
    }
}

#[test]
fn diagonal_formation_captures_greedy_robber_on_n7() {
    let g = BoardGraph::preset(Piece::Knight, 7).unwrap();
    let mut cops = make_cop_strategy("diagonal_formation", Some(3), &g, &opts()).unwrap();
    let mut robber = GreedyRobber;
    let t = simulate(&g, cops.as_mut(), &mut robber, &Placements::default(), 500).unwrap();
    assert!(t.result.is_captured(), "{:?}", t.result);
}

#[test]
fn guarding_cops_capture_greedy_robber_on_rook_boards() {
    let dirs = DirectionSet::from_pairs(&[(1, 0), (0, 1)]).unwrap();
    for n in [4u16, 8, 12] {
        let g = BoardGraph::build_royal(n, dirs.clone()).unwrap();
        let mut cops = make_cop_strategy("guarding", Some(2), &g, &opts()).unwrap();
        let mut robber = GreedyRobber;
        let t = simulate(&g, cops.as_mut(), &mut robber, &Placements::default(), 500).unwrap();
        assert!(t.result.is_captured(), "R_{n}: {:?}", t.result);
    }
}

#[test]
fn guarding_cops_capture_on_3_and_4_royal_boards() {
    let samples: [(&[(i32, i32)], u16); 2] = [
        (&[(1, 0), (0, 1), (1, 1)], 12),
        (&[(1, 0), (0, 1), (1, 1), (1, -1)], 12),
    ];
    for (pairs, n) in samples {
        let dirs = DirectionSet::from_pairs(pairs).unwrap();
        let g = BoardGraph::build_royal(n, dirs.clone()).unwrap();
        let k = dirs.k();
        let mut cops = make_cop_strategy("guarding", Some(k), &g, &opts()).unwrap();
        let mut robber = GreedyRobber;
        let t = simulate(&g, cops.as_mut(), &mut robber, &Placements::default(), 500).unwrap();
        assert!(t.result.is_captured(), "k={k} n={n}: {:?}", t.result);
    }
}

#[test]
fn octagon_robber_survives_three_greedy_cops_on_q22() {
    let g = BoardGraph::preset(Piece::Queen, 22).unwrap();
    let mut cops = GreedyCops::new(3);
    let mut robber = make_robber_strategy("octagon", 3, &g, &opts()).unwrap();
    let t = simulate(&g, &mut cops, robber.as_mut(), &Placements::default(), 500).unwrap();
    assert!(!t.result.is_captured(), "{:?}", t.result);
}

#[test]
fn transcripts_are_deterministic() {
    let g = BoardGraph::preset(Piece::Queen, 9).unwrap();
    let run = || {
        let mut cops = GreedyCops::new(3);
        let mut robber = GreedyRobber;
        let t = simulate(&g, &mut cops, &mut robber, &Placements::default(), 500).unwrap();
        serde_json::to_string(&t.to_json(&g)).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn fixed_placements_override_strategies() {
    let g = BoardGraph::preset(Piece::Queen, 7).unwrap();
    let placements = Placements {
        cops: Some(vec![Coord::new(1, 1), Coord::new(1, 2), Coord::new(2, 1)]),
        robber: Some(Coord::new(7, 7)),
    };
    let mut cops = GreedyCops::new(3);
    let mut robber = GreedyRobber;
    let t = simulate(&g, &mut cops, &mut robber, &placements, 500).unwrap();
    assert_eq!(t.initial_robber, g.vertex_id(Coord::new(7, 7)));
    assert!(t.result.is_captured());
}

#[test]
fn transcript_json_schema_fields() {
    let g = BoardGraph::preset(Piece::Queen, 7).unwrap();
    let mut cops = GreedyCops::new(3);
    let mut robber = GreedyRobber;
    let t = simulate(&g, &mut cops, &mut robber, &Placements::default(), 500).unwrap();
    let v = t.to_json(&g);
    assert!(v["graph"].is_string());
    assert_eq!(v["cops"], "greedy");
    assert_eq!(v["robber"], "greedy");
    let turn = &v["turns"][0];
    for key in ["cops", "robber", "copMove", "robberMove", "phi", "rSize"] {
        assert!(!turn[key].is_null() || key == "robberMove", "missing {key}");
    }
    assert_eq!(v["result"]["type"], "captured");
    assert!(v["result"]["turn"].as_u64().unwrap() >= 1);
}
