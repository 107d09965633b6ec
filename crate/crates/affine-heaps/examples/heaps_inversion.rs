//! Heaps of pieces: normal form, composition, and the two quotient
//! identities that turn signed sums of trivial heaps into generating
//! functions for all heaps and for pyramids.
//!
//! A heap is a commutation class of words of pieces (horizontal segments),
//! stored in its canonical layer form: each piece rests as low as gravity
//! allows. Two pieces commute exactly when they do not overlap.
//!
//! Run with: `cargo run -p affine-heaps --example heaps_inversion`

use affine_heaps::heaps::{
    enumerate_heaps, inversion_lemma_lhs, inversion_lemma_rhs, pyramid_series_lhs,
    pyramid_series_rhs, Heap, Piece,
};
use affine_heaps::series::{Monomial, Trunc};

fn seg(a: u32, b: u32) -> Piece {
    Piece::segment(a, b)
}

fn row(layer: &[Piece]) -> String {
    layer.iter().map(Piece::to_string).collect::<Vec<_>>().join(" ")
}

/// Weight: x marks the length, y marks the piece, q marks the right end.
fn weight(p: &Piece) -> Monomial {
    Monomial::xyq((p.b - p.a) as i64, 1, p.b as i64)
}

fn main() {
    // Order matters only for overlapping pieces: [1,2] then [4,5] commute,
    // but [1,2] then [2,3] do not.
    let mut h = Heap::empty();
    h.push(seg(4, 5));
    h.push(seg(1, 2));
    h.push(seg(2, 3));
    let mut g = Heap::empty();
    g.push(seg(1, 2));
    g.push(seg(4, 5));
    g.push(seg(2, 3));
    assert_eq!(h, g, "commuting pushes give the same canonical form");
    println!("heap layers after pushing [4,5], [1,2], [2,3] in two orders:");
    for (i, layer) in h.layers().iter().enumerate() {
        println!("  level {i}: {}", row(layer));
    }
    println!("  minima: {}   maxima: {}", row(h.minima()), row(&h.maxima()));
    println!("  pyramid (single maximal piece): {}", h.is_pyramid());
    println!();

    // Composition stacks one heap on top of another.
    let stacked = h.compose(&Heap::single(seg(2, 4)));
    println!("after stacking [2,4] on top: {} layers", stacked.layers().len());
    println!();

    // The universe: all segments inside [1, 5] of length <= 2.
    let mut universe = Vec::new();
    for a in 1..=5u32 {
        for b in a..=(a + 2).min(5) {
            universe.push(seg(a, b));
        }
    }
    let t = Trunc::new(6, 4, 8);
    let heaps = enumerate_heaps(&universe, &weight, t).unwrap();
    println!("{} heaps over {} pieces fit under x^6 y^4 q^8", heaps.len(), universe.len());

    // Identity 1: the generating function of all heaps is the quotient
    //   (signed trivial heaps avoiding M) / (signed trivial heaps),
    // checked coefficientwise by the two independent sides.
    let everything = |_: &Piece| true;
    let lhs = inversion_lemma_lhs(&universe, &everything, &weight, t).unwrap();
    let rhs = inversion_lemma_rhs(&universe, &everything, &weight, t).unwrap();
    assert_eq!(lhs, rhs);
    println!("quotient identity for all heaps: exact match");

    // The same identity restricted to heaps whose maxima are short pieces.
    let short_tops = |p: &Piece| p.b - p.a <= 1;
    let lhs = inversion_lemma_lhs(&universe, &short_tops, &weight, t).unwrap();
    let rhs = inversion_lemma_rhs(&universe, &short_tops, &weight, t).unwrap();
    assert_eq!(lhs, rhs);
    println!("quotient identity with restricted maxima: exact match");

    // Identity 2: pyramids (heaps with one maximal piece) are counted by a
    // logarithmic derivative of the signed trivial sum.
    let lhs = pyramid_series_lhs(&universe, &weight, t).unwrap();
    let rhs = pyramid_series_rhs(&universe, &weight, t).unwrap();
    assert_eq!(lhs, rhs);
    println!("pyramid identity: exact match");
    println!();
    println!("sample coefficient: [x^2 y^2 q^6] all-heaps = {}", rhs_coeff(&universe, t));
}

fn rhs_coeff(universe: &[Piece], t: Trunc) -> num::BigRational {
    inversion_lemma_rhs(universe, &|_| true, &weight, t).unwrap().coeff((2, 2, 6))
}
