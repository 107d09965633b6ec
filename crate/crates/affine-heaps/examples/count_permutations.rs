//! Counting 321-avoiding elements of affine and finite symmetric groups.
//!
//! Enumerates elements in window notation by breadth-first search over the
//! Coxeter generators, tabulates them by length, and checks the closed-form
//! generating series that predict the same counts.
//!
//! Run with: `cargo run -p affine-heaps --example count_permutations`

use affine_heaps::oracle::{enumerate_fc_elements, fc_elements, ClassTag};
use affine_heaps::permutations::AffinePermutation;
use affine_heaps::qformulas::{theorem_s, theorem_s_tilde};
use affine_heaps::series::Trunc;

fn main() {
    // Window notation: an affine permutation of size n is determined by its
    // values on 1..=n, extended by sigma(i + n) = sigma(i) + n.
    let sigma = AffinePermutation::from_window(4, vec![6, -3, -1, 8]).unwrap();
    println!("window {sigma} of size {}", sigma.size());
    println!("  Coxeter length (inversions): {}", sigma.inversion_number());
    println!("  reduced word: {:?}", sigma.reduced_word().letters);
    println!("  321-avoiding: {}", sigma.is_321_avoiding());
    println!();

    // Count 321-avoiding elements by length; compare with the exact series.
    let max_len = 8u64;
    println!("affine counts by length, window sizes 2..=5 (lengths 0..={max_len}):");
    for n in 2..=5usize {
        let table = enumerate_fc_elements(n, max_len, ClassTag::Affine);
        let series = theorem_s_tilde(Trunc::xq(n as u32, max_len as u32));
        let row: Vec<u64> = (0..=max_len).map(|l| table.count_at(l)).collect();
        let predicted: Vec<i64> = (0..=max_len)
            .map(|l| series.coeff_i64((n as u32, 0, l as u32)).unwrap())
            .collect();
        assert_eq!(row.iter().map(|&c| c as i64).collect::<Vec<_>>(), predicted);
        println!("  n={n}: {row:?}  (matches the closed form)");
    }
    println!();

    println!("finite counts by length, window sizes 2..=5:");
    for n in 2..=5usize {
        let table = enumerate_fc_elements(n, max_len, ClassTag::Finite);
        let series = theorem_s(Trunc::xq(n as u32, max_len as u32));
        let row: Vec<u64> = (0..=max_len).map(|l| table.count_at(l)).collect();
        for (l, &c) in row.iter().enumerate() {
            assert_eq!(series.coeff_i64((n as u32 - 1, 0, l as u32)), Some(c as i64));
        }
        println!("  n={n}: {row:?}  total {}  (a Catalan number)", table.total());
    }
    println!();

    // The finite 321-avoiding elements of window size 3, listed.
    println!("all 321-avoiding permutations of {{1,2,3}}:");
    for p in fc_elements(3, 3).into_iter().filter(|p| p.is_finite()) {
        println!("  {p}  length {}", p.inversion_number());
    }
}
