//! Involutions among 321-avoiding elements, and the web of exact identities
//! between the closed-form series.
//!
//! Run with: `cargo run -p affine-heaps --example involutions_and_identities`

use affine_heaps::oracle::{enumerate_fc_elements, ClassTag};
use affine_heaps::qformulas::{series_cal_j, series_frak_h, series_h, series_j, theorem_involutions};
use affine_heaps::series::{Monomial, Trunc, Var};

fn main() {
    // Involutions by length, checked against the pair of closed forms.
    let max_len = 8u64;
    let (finite_form, affine_form) = theorem_involutions(Trunc::xq(6, max_len as u32));
    println!("affine involutions by length, window sizes 2..=5:");
    for n in 2..=5usize {
        let table = enumerate_fc_elements(n, max_len, ClassTag::AffineInvolution);
        let row: Vec<u64> = (0..=max_len).map(|l| table.count_at(l)).collect();
        for (l, &c) in row.iter().enumerate() {
            assert_eq!(affine_form.coeff_i64((n as u32, 0, l as u32)), Some(c as i64));
        }
        println!("  n={n}: {row:?}");
    }
    println!("finite involutions by length, window sizes 2..=5:");
    for n in 2..=5usize {
        let table = enumerate_fc_elements(n, max_len, ClassTag::FiniteInvolution);
        let row: Vec<u64> = (0..=max_len).map(|l| table.count_at(l)).collect();
        for (l, &c) in row.iter().enumerate() {
            assert_eq!(finite_form.coeff_i64((n as u32 - 1, 0, l as u32)), Some(c as i64));
        }
        println!("  n={n}: {row:?}");
    }
    println!();

    // Identities among the four trivial-heap series, all exact to the
    // truncation. h and j count signed monomer-dimer configurations with
    // different loop disciplines; frakh and calJ are their dimer-only and
    // single-label analogues.
    let t = Trunc::xq(6, 10);
    let h = series_h(t);
    let j = series_j(t);
    let shift = |s: &affine_heaps::series::TruncatedSeries| {
        s.substitute(Var::X, &Monomial::xyq(1, 0, 1))
            .unwrap()
            .mul_monomial(&Monomial::x_pow(1))
            .unwrap()
    };
    assert_eq!(j, h.add(&shift(&h)));
    println!("j(x) = h(x) + x h(xq)          checked to x^6 q^10");

    let frak = series_frak_h(t);
    let cal = series_cal_j(t);
    assert_eq!(cal, frak.sub(&shift(&frak)));
    println!("calJ(x) = frakh(x) - x frakh(xq)  checked to x^6 q^10");

    let twisted = cal
        .substitute(Var::X, &Monomial::new(-1, 1, 0, 1))
        .unwrap()
        .mul_monomial(&Monomial::x_pow(1))
        .unwrap()
        .neg();
    let lhs = cal.sub(&frak.substitute(Var::X, &Monomial::xyq(1, 0, 1)).unwrap());
    assert_eq!(lhs, twisted);
    println!("calJ(x) - frakh(xq) = -x calJ(-xq)  checked to x^6 q^10");
}
