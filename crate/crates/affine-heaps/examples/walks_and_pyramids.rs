//! Closed walks on the half-line, monomer-dimer pyramids, and the chain of
//! bijections that links them to alternating diagrams.
//!
//! phi turns a diagram's cyclic column sizes into a closed walk on
//! {0, 1, 2, ...} whose steps go up, down, or loop (loops carry an L/R label
//! from the chain types); upsilon turns the same diagram into a marked
//! pyramid of monomers and dimers. Both preserve the size statistic, and
//! both are invertible.
//!
//! Run with: `cargo run -p affine-heaps --example walks_and_pyramids`

use affine_heaps::diagrams::{AlternatingDiagram, ChainType};
use affine_heaps::monodimer::{phi, phi_inverse, upsilon, upsilon_inverse};
use affine_heaps::oracle::{closed_walk_tally, LoopRule};
use affine_heaps::qformulas::{
    walk_series_o, walk_series_o_bar, walk_series_o_bar_star, walk_series_o_star,
};
use affine_heaps::series::Trunc;
use std::collections::BTreeMap;

fn main() {
    // A rank-12 diagram whose columns read 1,2,2,1,1,2,2,2,1,1,1,1.
    let types: BTreeMap<usize, ChainType> = [
        (1, ChainType::R),
        (3, ChainType::L),
        (5, ChainType::L),
        (6, ChainType::R),
        (8, ChainType::L),
        (9, ChainType::R),
        (10, ChainType::L),
        (11, ChainType::R),
    ]
    .into_iter()
    .collect();
    let d =
        AlternatingDiagram::validate(12, vec![1, 2, 2, 1, 1, 2, 2, 2, 1, 1, 1, 1], types).unwrap();
    println!("diagram of rank {} and size {}", d.rank(), d.size());

    // Its closed walk: length = rank, area = size.
    let w = phi(&d);
    println!("walk {w}");
    println!("  length {} area {}", w.len(), w.area());
    assert_eq!(phi_inverse(&w).unwrap(), d);
    println!("  phi_inverse returns the diagram");

    // Its marked pyramid: x-degree = rank, q-degree = size.
    let mp = upsilon(&d);
    let weight = mp.weight();
    println!("pyramid of {} pieces, weight x^{} q^{}", mp.pyramid().piece_count(), weight.x, weight.q);
    println!("  mark {} on the maximal piece", mp.mark());
    assert_eq!(upsilon_inverse(&mp).unwrap(), d);
    println!("  upsilon_inverse returns the diagram");
    println!();

    // Walks that loop at one positive vertex with a single label are the
    // exceptional family: they correspond to no diagram.
    use affine_heaps::monodimer::{MdWalk, Step};
    let exceptional = MdWalk::new(2, vec![Step::looped('L'), Step::looped('L')]);
    println!("walk {exceptional} is exceptional: {}", exceptional.is_exceptional());
    assert!(phi_inverse(&exceptional).is_err());
    println!();

    // Four loop disciplines, four generating functions. Tally closed walks
    // by (length, area) and compare against the closed forms.
    let t = Trunc::xq(8, 10);
    let rules: [(&str, LoopRule, fn(Trunc) -> affine_heaps::series::TruncatedSeries); 4] = [
        ("loops everywhere (two labels)", LoopRule::Everywhere, walk_series_o),
        ("one label at vertex 0", LoopRule::StarredAtZero, walk_series_o_star),
        ("no loops at all", LoopRule::NoLoops, walk_series_o_bar),
        ("loops only at vertex 0", LoopRule::OnlyAtZero, walk_series_o_bar_star),
    ];
    for (label, rule, formula) in rules {
        assert_eq!(closed_walk_tally(rule, t), formula(t));
        println!("walk tally matches the closed form: {label}");
    }
}
