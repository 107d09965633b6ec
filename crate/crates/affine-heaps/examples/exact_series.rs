//! Exact truncated power series in x, y, q over the rationals.
//!
//! Shows the arithmetic the whole library rests on: building series
//! term-by-term, ring operations, reciprocals, logarithmic derivatives,
//! substitutions like x -> xq, q-Pochhammer products, and the registry of
//! named closed-form series.
//!
//! Run with: `cargo run -p affine-heaps --example exact_series`

use affine_heaps::qformulas::{by_name, SERIES_NAMES};
use affine_heaps::series::{Monomial, Trunc, TruncatedSeries, Var};
use num::BigRational;

fn main() {
    let t = Trunc::xq(4, 6);

    // 1/(1 - xq) as a reciprocal, exactly.
    let mut one_minus_xq = TruncatedSeries::one(t);
    one_minus_xq.add_term((1, 0, 1), BigRational::from_integer((-1).into()));
    let geometric = one_minus_xq.recip().unwrap();
    println!("1/(1-xq) truncated to x^4 q^6:");
    println!("  [x^3 q^3] = {}", geometric.coeff((3, 0, 3)));
    println!("  [x^3 q^2] = {} (exponents move together)", geometric.coeff((3, 0, 2)));

    // A logarithmic derivative: -x d/dx log f = -x f'/f counts each object
    // of f's exponential family weighted by its x-degree.
    let dlog = geometric.derivative(Var::X).mul(&geometric.recip().unwrap());
    println!("  (d/dx 1/(1-xq)) * (1-xq) at x^2 q^3: {}", dlog.coeff((2, 0, 3)));

    // Substitution x -> xq and multiplication by monomials.
    let shifted = geometric.substitute(Var::X, &Monomial::xyq(1, 0, 1)).unwrap();
    println!("  after x -> xq, [x^2 q^4] = {}", shifted.coeff((2, 0, 4)));
    let scaled = geometric.mul_monomial(&Monomial::x_pow(1)).unwrap();
    println!("  after * x, [x^3 q^2] = {}", scaled.coeff((3, 0, 2)));
    println!();

    // The q-Pochhammer product (xq; q)_inf enters the closed form that
    // relates two of the named series: J(x) (xq;q)_inf = j(x).
    let poch = TruncatedSeries::pochhammer(t, &Monomial::xyq(1, 0, 1), 1, None).unwrap();
    let big_j = by_name("J", t).unwrap();
    let little_j = by_name("j", t).unwrap();
    assert_eq!(big_j.mul(&poch), little_j);
    println!("checked: J(x) * (xq;q)_inf = j(x) exactly up to x^4 q^6");
    println!();

    // Every named series in the registry, with a few low-order coefficients.
    println!("named series at truncation x^2, q^4 (coefficients of 1, x q, x q^2):");
    let small = Trunc::new(2, 2, 4);
    for name in SERIES_NAMES {
        let s = by_name(name, small).unwrap();
        println!(
            "  {name:>9}: {} | {} | {}",
            s.coeff((0, 0, 0)),
            s.coeff((1, 0, 1)),
            s.coeff((1, 0, 2)),
        );
    }
}
