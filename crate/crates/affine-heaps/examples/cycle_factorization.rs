//! Factoring an arbitrary walk on a digraph into a self-avoiding path plus
//! a heap of cycles, and putting it back together.
//!
//! Every walk has a unique factorization: repeatedly cut out the loop that
//! closes first; what remains is a self-avoiding path, and the cut-out
//! elementary cycles stack into a heap (two cycles commute when they share
//! no vertex). The walk's weight is the product of the path's and the
//! heap's.
//!
//! Run with: `cargo run -p affine-heaps --example cycle_factorization`

use affine_heaps::cycles::{psi_cycles, psi_cycles_inverse, Digraph, Walk};
use affine_heaps::series::Monomial;

fn main() {
    // A seven-vertex digraph with ten arcs, each arc weighted by q.
    let names = ["A", "B", "C", "D", "E", "F", "G"].map(String::from).to_vec();
    let mut g = Digraph::new(names);
    for (from, to) in
        [(0, 1), (1, 5), (1, 2), (2, 6), (2, 4), (3, 2), (4, 3), (5, 2), (5, 0), (6, 1)]
    {
        g.add_arc(from, to, None, Monomial::xyq(0, 0, 1));
    }

    // A fourteen-step walk that tangles through the graph.
    let walk = walk_by_names(&g, "ABFCGBFABCEDCE");
    println!("walk  {}", walk.describe(&g));
    println!("  self-avoiding: {}", walk.is_self_avoiding(&g));

    let (path, heap) = psi_cycles(&g, &walk).unwrap();
    println!("path  {}", path.describe(&g));
    println!("cycle heap ({} cycles):", heap.piece_count());
    for (level, layer) in heap.layers().iter().enumerate() {
        let row: Vec<String> = layer.iter().map(|c| c.describe(&g)).collect();
        println!("  level {level}: {}", row.join("  "));
    }

    // Weights multiply: q-degree of the walk = path + cycles.
    let (ww, pw, hw) = (walk.weight(&g), path.weight(&g), heap.weight(&g));
    println!("weights: walk q^{} = path q^{} * cycles q^{}", ww.q, pw.q, hw.q);
    assert_eq!(ww.q, pw.q + hw.q);

    // The factorization inverts.
    let rebuilt = psi_cycles_inverse(&g, &path, &heap).unwrap();
    assert_eq!(rebuilt, walk);
    println!("psi_cycles_inverse rebuilds the original walk");
    println!();

    // Exhaustive check on every walk of length <= 6 from every vertex.
    let mut frontier: Vec<Walk> = (0..g.vertex_count()).map(Walk::trivial).collect();
    let mut total = 0usize;
    for _ in 0..6 {
        let mut next = Vec::new();
        for w in &frontier {
            let at = w.end(&g).unwrap();
            for id in g.arcs_from(at) {
                let mut e = w.clone();
                e.arcs.push(id);
                next.push(e);
            }
        }
        for w in &next {
            let (p, h) = psi_cycles(&g, w).unwrap();
            assert_eq!(psi_cycles_inverse(&g, &p, &h).unwrap(), *w);
            total += 1;
        }
        frontier = next;
    }
    println!("{total} walks of length 1..=6 all factor and rebuild exactly");
}

fn walk_by_names(g: &Digraph, names: &str) -> Walk {
    let ids: Vec<usize> = names
        .chars()
        .map(|c| (0..g.vertex_count()).find(|&v| g.vertex_name(v) == c.to_string()).unwrap())
        .collect();
    let arcs = ids
        .windows(2)
        .map(|p| {
            (0..g.arcs().len())
                .find(|&id| g.arcs()[id].from == p[0] && g.arcs()[id].to == p[1])
                .unwrap()
        })
        .collect();
    Walk { start: ids[0], arcs }
}
