//! Affine alternating diagrams and their bijection with 321-avoiding
//! elements.
//!
//! A diagram of rank n is a cyclic arrangement of n columns of cells whose
//! sizes change by at most one from column to column, with an L/R chain type
//! wherever two adjacent columns are equal and nonempty. The map delta sends
//! a 321-avoiding element to a diagram whose total cell count is the
//! element's Coxeter length; delta_inverse recovers the element.
//!
//! Run with: `cargo run -p affine-heaps --example diagram_bijection`

use affine_heaps::diagrams::AlternatingDiagram;
use affine_heaps::oracle::{enumerate_diagrams, fc_elements};
use affine_heaps::permutations::AffinePermutation;

fn main() {
    // A window with 31 inversions and its diagram.
    let sigma = AffinePermutation::from_window(8, vec![-6, 13, -4, -1, 0, 14, 19, 1]).unwrap();
    let d = AlternatingDiagram::delta(&sigma).unwrap();
    println!("window {sigma}:");
    println!("  length {}", sigma.inversion_number());
    println!("  diagram columns {:?}", d.col_sizes());
    println!("  chain types     {:?}", d.chain_types());
    println!("  size {} (equals the length)", d.size());
    assert_eq!(d.delta_inverse(), sigma);
    println!("  delta_inverse recovers the window");
    println!();

    // Duality: reading the diagram upside-down inverts the element.
    let dual = d.dual();
    assert_eq!(dual.delta_inverse(), sigma.inverse());
    println!("the dual diagram corresponds to the inverse element");
    println!("  self-dual: {} (the element is an involution: {})", d.is_self_dual(), sigma.is_involution());
    println!();

    // Exhaustive agreement at small rank: every 321-avoiding element of
    // length at most 6 maps to a distinct valid diagram, and every valid
    // diagram arises.
    for n in 2..=4usize {
        let elements = fc_elements(n, 6);
        let diagrams = enumerate_diagrams(n, 6);
        let images: std::collections::BTreeSet<_> = elements
            .iter()
            .map(|s| format!("{:?}", AlternatingDiagram::delta(s).unwrap()))
            .collect();
        let all: std::collections::BTreeSet<_> =
            diagrams.iter().map(|d| format!("{d:?}")).collect();
        assert_eq!(images, all);
        println!(
            "rank {n}: {} elements of length <= 6 <-> {} diagrams of size <= 6",
            elements.len(),
            diagrams.len()
        );
    }
    println!();

    // Diagrams serialize to a stable JSON form.
    println!("diagram JSON: {}", serde_json::to_string(&d).unwrap());
}
