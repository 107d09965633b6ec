//! Periodic parallelogram polyominoes: column sequences, their duality with
//! heaps of segments, the marked variant's bijection with alternating
//! diagrams, and the exact generating functions.
//!
//! A column sequence lists each column's bottom and top rows (a_i, b_i) with
//! 1 <= a_i <= b_i and a_i <= b_{i-1}; it is periodic when the last column
//! also supports the first (a_1 <= b_n). Width = number of columns, height
//! = sum of the rises b_i - a_i, area = sum of the b_i.
//!
//! Run with: `cargo run -p affine-heaps --example polyomino_tour`

use affine_heaps::ppp::{
    cell_marked_sum, segment_weight, wrappable_sum, AltSequence, MarkedPpp, Ppp,
};
use affine_heaps::qformulas::{marked_ppp_series, ppp_series};
use affine_heaps::series::Trunc;

fn main() {
    // The five-column polyomino with columns (5,7),(7,7),(2,4),(1,2),(2,6).
    let seq = AltSequence::new(vec![(5, 7), (7, 7), (2, 4), (1, 2), (2, 6)]).unwrap();
    let p = Ppp::new(seq).unwrap();
    println!(
        "polyomino with width {}, height {}, area {} (half-perimeter {})",
        p.width(),
        p.height(),
        p.area(),
        p.half_perimeter()
    );

    // Column sequences are heaps of segments in disguise: column i becomes
    // the segment [a_i, b_i], stacked from the last column to the first.
    let heap = p.to_heap();
    println!("as a heap of segments:");
    for (level, layer) in heap.layers().iter().enumerate() {
        let row: Vec<String> = layer.iter().map(|p| p.to_string()).collect();
        println!("  level {level}: {}", row.join(" "));
    }
    let w = heap.weight(&segment_weight);
    println!("  heap weight x^{} y^{} q^{} = (height, width, area)", w.x, w.y, w.q);
    assert_eq!(Ppp::from_heap(&heap).unwrap(), p);
    println!("  from_heap inverts to_heap");
    println!();

    // Marking a cell of the first column turns the polyomino into an
    // alternating diagram: rank = half-perimeter, size = area - width.
    let mp = MarkedPpp::new(p, 5).unwrap();
    let d = mp.to_diagram().unwrap();
    println!("mark 5 on the first column gives a diagram:");
    println!("  rank {} size {}", d.rank(), d.size());
    println!("  columns {:?}", d.col_sizes());
    assert_eq!(MarkedPpp::from_diagram(&d).unwrap(), mp);
    println!("  from_diagram recovers the marked polyomino");
    println!();

    // Two exact generating functions over all periodic parallelogram
    // polyominoes (x: height, y: width, q: area), computed once as a sum
    // over enumerated heaps and once from the closed-form quotient.
    let t = Trunc::new(4, 4, 10);
    assert_eq!(wrappable_sum(t), ppp_series(t));
    println!("sum over polyominoes   = closed form (up to x^4 y^4 q^10)");
    assert_eq!(cell_marked_sum(t), marked_ppp_series(t));
    println!("sum with a marked cell = closed form (same truncation)");
    println!();

    // The smallest polyominoes, by area.
    println!("all periodic parallelogram polyominoes of area <= 3:");
    for area in 1..=3u32 {
        let list = affine_heaps::oracle::enumerate_ppp(area, area);
        let row: Vec<String> = list
            .iter()
            .filter(|p| p.area() == area)
            .map(|p| format!("{:?}", p.seq().pairs()))
            .collect();
        println!("  area {area}: {}", row.join("  "));
    }
}
