//! Heaps of integer segments: Cartier–Foata normal form, composition,
//! extrema, trivial heaps, pyramids, exhaustive enumeration, and the two
//! alternating-sum enumeration formulas (heaps with constrained maxima, and
//! pyramids).
//!
//! Pieces are segments `[a, b]` of naturals with an optional one-character
//! label; two pieces are *concurrent* when the segments intersect (labels
//! play no role in concurrency). A heap is stored canonically as layers: each
//! layer is a set of pairwise non-concurrent pieces, and every piece is
//! concurrent with at least one piece one layer below. This is the normal
//! form of the partially commutative monoid, so structural equality of
//! layers is heap equality.

use std::collections::BTreeSet;
use std::fmt;

use num::rational::BigRational;
use num::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{Monomial, Trunc, TruncatedSeries};

/// A segment `[a, b]` with `a ≤ b`, optionally labeled. Monomers are the
/// length-0 segments `[i]`, dimers the length-1 segments `[i, i+1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Piece {
    pub a: u32,
    pub b: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<char>,
}

impl Piece {
    /// An unlabeled segment `[a, b]`. Panics if `a > b`.
    pub fn segment(a: u32, b: u32) -> Self {
        assert!(a <= b, "segment needs a ≤ b, got [{a}, {b}]");
        Piece { a, b, label: None }
    }

    /// A labeled monomer `[i]`.
    pub fn monomer(i: u32, label: char) -> Self {
        Piece { a: i, b: i, label: Some(label) }
    }

    /// An unlabeled dimer `[i, i+1]`.
    pub fn dimer(i: u32) -> Self {
        Piece { a: i, b: i + 1, label: None }
    }

    /// Segment length `b − a`.
    pub fn len(&self) -> u32 {
        self.b - self.a
    }

    /// Concurrency: the segments intersect.
    pub fn overlaps(&self, other: &Piece) -> bool {
        self.a <= other.b && other.a <= self.b
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == self.b {
            write!(f, "[{}]", self.a)?;
        } else {
            write!(f, "[{},{}]", self.a, self.b)?;
        }
        if let Some(l) = self.label {
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}

/// Errors for heap enumeration and deserialization.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HeapError {
    /// A universe piece has a weight of total degree 0, so arbitrarily many
    /// copies fit under any truncation bound.
    #[error("InfiniteEnumeration: piece {piece} has degree-0 weight")]
    InfiniteEnumeration { piece: String },
    /// A serialized heap whose layers are not in normal form.
    #[error("NotNormalForm: layer {layer} is not supported by the layer below")]
    NotNormalForm { layer: usize },
}

/// A heap of segments in Cartier–Foata normal form. Within a layer, pieces
/// are kept sorted by `(a, b, label)`; equality of heaps is equality of the
/// layer structure.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Heap {
    layers: Vec<Vec<Piece>>,
}

impl Heap {
    pub fn empty() -> Self {
        Heap { layers: Vec::new() }
    }

    pub fn single(p: Piece) -> Self {
        Heap { layers: vec![vec![p]] }
    }

    /// Drop each piece in turn onto the heap (left to right).
    pub fn from_pieces(pieces: &[Piece]) -> Self {
        let mut h = Heap::empty();
        for &p in pieces {
            h.push(p);
        }
        h
    }

    /// Drop a piece: it lands one layer above the highest piece it is
    /// concurrent with (or on the ground).
    pub fn push(&mut self, p: Piece) {
        let mut level = 0;
        for (k, layer) in self.layers.iter().enumerate() {
            if layer.iter().any(|q| q.overlaps(&p)) {
                level = k + 1;
            }
        }
        if level == self.layers.len() {
            self.layers.push(Vec::new());
        }
        let layer = &mut self.layers[level];
        let pos = layer.partition_point(|q| *q < p);
        layer.insert(pos, p);
    }

    /// Monoid product: `other` dropped on top of `self`, renormalized.
    pub fn compose(&self, other: &Heap) -> Heap {
        let mut h = self.clone();
        for p in other.pieces() {
            h.push(*p);
        }
        h
    }

    pub fn layers(&self) -> &[Vec<Piece>] {
        &self.layers
    }

    /// All pieces, bottom layer first, sorted within layers — a canonical
    /// linear extension of the heap order.
    pub fn pieces(&self) -> impl Iterator<Item = &Piece> {
        self.layers.iter().flatten()
    }

    /// |H|: number of pieces.
    pub fn piece_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    /// ℓ(H): sum of segment lengths.
    pub fn total_length(&self) -> u64 {
        self.pieces().map(|p| p.len() as u64).sum()
    }

    /// e(H): sum of right endpoints.
    pub fn sum_right_ends(&self) -> u64 {
        self.pieces().map(|p| p.b as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Minimal pieces = the ground layer (normal form guarantees every
    /// higher piece has something below it).
    pub fn minima(&self) -> &[Piece] {
        self.layers.first().map(Vec::as_slice).unwrap_or(&[])
    }

    /// Maximal pieces: nothing concurrent in any higher layer. (Concurrent
    /// pieces are comparable, ordered by layer, so this is exactly
    /// poset-maximality.)
    pub fn maxima(&self) -> Vec<Piece> {
        let mut out = Vec::new();
        for (k, layer) in self.layers.iter().enumerate() {
            for p in layer {
                let covered = self.layers[k + 1..]
                    .iter()
                    .any(|upper| upper.iter().any(|q| q.overlaps(p)));
                if !covered {
                    out.push(*p);
                }
            }
        }
        out.sort();
        out
    }

    /// At most one layer.
    pub fn is_trivial(&self) -> bool {
        self.layers.len() <= 1
    }

    /// Nonempty with a unique maximal piece.
    pub fn is_pyramid(&self) -> bool {
        !self.is_empty() && self.maxima().len() == 1
    }

    /// Remove a subset of the minima and renormalize the rest. Panics if
    /// `subset` is not a set of ground-layer pieces.
    pub fn without_minima(&self, subset: &[Piece]) -> Heap {
        let ground: BTreeSet<Piece> = self.minima().iter().copied().collect();
        let removing: BTreeSet<Piece> = subset.iter().copied().collect();
        assert!(removing.is_subset(&ground), "can only remove minimal pieces");
        let mut h = Heap::empty();
        for (k, layer) in self.layers.iter().enumerate() {
            for p in layer {
                if k == 0 && removing.contains(p) {
                    continue;
                }
                h.push(*p);
            }
        }
        h
    }

    /// Multiplicative weight: the product over pieces of `v(piece)`.
    pub fn weight(&self, v: &dyn Fn(&Piece) -> Monomial) -> Monomial {
        let mut w = Monomial::new(1, 0, 0, 0);
        for p in self.pieces() {
            let m = v(p);
            w.coeff_num *= m.coeff_num;
            w.x += m.x;
            w.y += m.y;
            w.q += m.q;
        }
        w
    }
}

impl fmt::Display for Heap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.layers.is_empty() {
            return write!(f, "(empty heap)");
        }
        for (k, layer) in self.layers.iter().enumerate() {
            if k > 0 {
                write!(f, " | ")?;
            }
            for (i, p) in layer.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p)?;
            }
        }
        Ok(())
    }
}

impl Serialize for Heap {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            layers: &'a [Vec<Piece>],
        }
        Repr { layers: &self.layers }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Heap {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            layers: Vec<Vec<Piece>>,
        }
        let repr = Repr::deserialize(de)?;
        for layer in &repr.layers {
            for p in layer {
                if p.a > p.b {
                    return Err(serde::de::Error::custom(format!(
                        "segment needs a ≤ b, got [{}, {}]",
                        p.a, p.b
                    )));
                }
            }
        }
        let rebuilt = Heap::from_pieces(&repr.layers.iter().flatten().copied().collect::<Vec<_>>());
        if rebuilt.layers != repr.layers {
            let layer = rebuilt
                .layers
                .iter()
                .zip(&repr.layers)
                .position(|(a, b)| a != b)
                .unwrap_or_else(|| repr.layers.len().min(rebuilt.layers.len()));
            return Err(serde::de::Error::custom(
                HeapError::NotNormalForm { layer }.to_string(),
            ));
        }
        Ok(rebuilt)
    }
}

fn monomial_exponents(m: &Monomial) -> (u32, u32, u32) {
    debug_assert!(
        m.x >= 0 && m.y >= 0 && m.q >= 0,
        "piece weights must have nonnegative exponents"
    );
    (m.x as u32, m.y as u32, m.q as u32)
}

fn check_universe(
    universe: &[Piece],
    weight: &dyn Fn(&Piece) -> Monomial,
) -> Result<(), HeapError> {
    for p in universe {
        if weight(p).total_degree() == 0 {
            return Err(HeapError::InfiniteEnumeration { piece: p.to_string() });
        }
    }
    Ok(())
}

/// All heaps over `universe` whose weight exponents fit under `trunc`, each
/// exactly once (canonical normal form), in a deterministic order. Breadth
/// first: every heap with k+1 pieces arises by dropping one more universe
/// piece on a heap with k pieces.
pub fn enumerate_heaps(
    universe: &[Piece],
    weight: &dyn Fn(&Piece) -> Monomial,
    trunc: Trunc,
) -> Result<Vec<Heap>, HeapError> {
    check_universe(universe, weight)?;
    let mut seen: BTreeSet<Heap> = BTreeSet::new();
    let mut frontier: Vec<Heap> = vec![Heap::empty()];
    seen.insert(Heap::empty());
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for &p in universe {
                let mut bigger = h.clone();
                bigger.push(p);
                let w = bigger.weight(weight);
                if trunc.admits(monomial_exponents(&w)) && seen.insert(bigger.clone()) {
                    next.push(bigger);
                }
            }
        }
        frontier = next;
    }
    Ok(seen.into_iter().collect())
}

/// Σ over trivial heaps `T` of pieces drawn from `universe` (passing
/// `keep`) of `sign(T)·|T|^power·v(T)`, truncated. `power` 0 gives the plain
/// alternating sum, `power` 1 the piece-count-weighted sum used for
/// pyramids.
pub fn trivial_alternating_sum(
    universe: &[Piece],
    keep: &dyn Fn(&Piece) -> bool,
    weight: &dyn Fn(&Piece) -> Monomial,
    trunc: Trunc,
    power: u32,
) -> TruncatedSeries {
    let kept: Vec<Piece> = universe.iter().copied().filter(|p| keep(p)).collect();
    let mut sum = TruncatedSeries::zero(trunc);
    // DFS over index-increasing subsets of pairwise non-concurrent pieces.
    // `stack` entries: (next index to consider, chosen pieces, weight so far).
    let mut stack = vec![(0usize, Vec::<Piece>::new(), Monomial::new(1, 0, 0, 0))];
    while let Some((start, chosen, w)) = stack.pop() {
        let size = chosen.len() as i64;
        let factor = if power == 0 { 1 } else { size.pow(power) };
        let sign = if chosen.len() % 2 == 0 { 1 } else { -1 };
        // A zero coefficient (empty heap under `power ≥ 1`) is dropped by
        // `add_term`.
        sum.add_term(
            monomial_exponents(&w),
            BigRational::from(BigInt::from(sign * factor * w.coeff_num)),
        );
        for i in start..kept.len() {
            let p = kept[i];
            if chosen.iter().any(|q| q.overlaps(&p)) {
                continue;
            }
            let pm = weight(&p);
            let nw = Monomial::new(
                w.coeff_num * pm.coeff_num,
                w.x + pm.x,
                w.y + pm.y,
                w.q + pm.q,
            );
            if trunc.admits(monomial_exponents(&nw)) {
                let mut nc = chosen.clone();
                nc.push(p);
                stack.push((i + 1, nc, nw));
            }
        }
    }
    sum
}

/// Left side of the constrained-maxima enumeration identity: the sum of
/// `v(H)` over all heaps whose maximal pieces all satisfy `in_m`, by direct
/// enumeration.
pub fn inversion_lemma_lhs(
    universe: &[Piece],
    in_m: &dyn Fn(&Piece) -> bool,
    weight: &dyn Fn(&Piece) -> Monomial,
    trunc: Trunc,
) -> Result<TruncatedSeries, HeapError> {
    let mut sum = TruncatedSeries::zero(trunc);
    for h in enumerate_heaps(universe, weight, trunc)? {
        if h.maxima().iter().all(|p| in_m(p)) {
            let w = h.weight(weight);
            sum.add_term(monomial_exponents(&w), BigRational::from(BigInt::from(w.coeff_num)));
        }
    }
    Ok(sum)
}

/// Right side of the same identity: the quotient of signed trivial-heap
/// sums, the numerator restricted to pieces outside `M`.
pub fn inversion_lemma_rhs(
    universe: &[Piece],
    in_m: &dyn Fn(&Piece) -> bool,
    weight: &dyn Fn(&Piece) -> Monomial,
    trunc: Trunc,
) -> Result<TruncatedSeries, HeapError> {
    check_universe(universe, weight)?;
    let numerator = trivial_alternating_sum(universe, &|p| !in_m(p), weight, trunc, 0);
    let denominator = trivial_alternating_sum(universe, &|_| true, weight, trunc, 0);
    Ok(numerator
        .mul(&denominator.recip().expect("denominator has constant term 1")))
}

/// Pyramid generating function by direct enumeration (heaps with a unique
/// maximal piece).
pub fn pyramid_series_lhs(
    universe: &[Piece],
    weight: &dyn Fn(&Piece) -> Monomial,
    trunc: Trunc,
) -> Result<TruncatedSeries, HeapError> {
    let mut sum = TruncatedSeries::zero(trunc);
    for h in enumerate_heaps(universe, weight, trunc)? {
        if h.is_pyramid() {
            let w = h.weight(weight);
            sum.add_term(monomial_exponents(&w), BigRational::from(BigInt::from(w.coeff_num)));
        }
    }
    Ok(sum)
}

/// Pyramid generating function as the alternating-sum quotient
/// `−(Σ (−1)^|T| |T| v(T)) / (Σ (−1)^|T| v(T))`.
pub fn pyramid_series_rhs(
    universe: &[Piece],
    weight: &dyn Fn(&Piece) -> Monomial,
    trunc: Trunc,
) -> Result<TruncatedSeries, HeapError> {
    check_universe(universe, weight)?;
    let numerator = trivial_alternating_sum(universe, &|_| true, weight, trunc, 1);
    let denominator = trivial_alternating_sum(universe, &|_| true, weight, trunc, 0);
    Ok(numerator
        .mul(&denominator.recip().expect("denominator has constant term 1"))
        .neg())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    /// Weight giving every segment `x^{ℓ(p)} y q^{b}` — the polyomino model.
    fn seg_weight(p: &Piece) -> Monomial {
        Monomial::xyq(p.len() as i64, 1, p.b as i64)
    }

    /// Monomer/dimer weights: `v([i]) = x q^i`, `v([i,i+1]) = x² q^{2i+1}`.
    fn md_weight(p: &Piece) -> Monomial {
        if p.len() == 0 {
            Monomial::xyq(1, 0, p.a as i64)
        } else {
            Monomial::xyq(2, 0, (2 * p.a + 1) as i64)
        }
    }

    fn md_universe(max_abscissa: u32) -> Vec<Piece> {
        let mut u = vec![Piece::monomer(0, 'L')];
        for i in 1..=max_abscissa {
            u.push(Piece::monomer(i, 'L'));
            u.push(Piece::monomer(i, 'R'));
        }
        for i in 0..max_abscissa {
            u.push(Piece::dimer(i));
        }
        u
    }

    #[test]
    fn composition_basics() {
        let h = Heap::from_pieces(&[Piece::segment(1, 2), Piece::segment(4, 5)]);
        assert_eq!(h.layers().len(), 1, "disjoint pieces commute");
        let h = Heap::from_pieces(&[Piece::segment(1, 2), Piece::segment(2, 3)]);
        assert_eq!(h.layers().len(), 2, "overlap at a point stacks");
        let id = Heap::empty();
        assert_eq!(h.compose(&id), h);
        assert_eq!(id.compose(&h), h);
    }

    #[test]
    fn extrema_and_shape_predicates() {
        let empty = Heap::empty();
        assert!(empty.minima().is_empty() && empty.maxima().is_empty());
        assert!(empty.is_trivial() && !empty.is_pyramid());

        let single = Heap::single(Piece::segment(2, 4));
        assert!(single.is_trivial() && single.is_pyramid());

        // A pyramid: two disjoint pieces under one piece spanning both.
        let pyr = Heap::from_pieces(&[
            Piece::segment(0, 1),
            Piece::segment(3, 4),
            Piece::segment(1, 3),
        ]);
        assert!(pyr.is_pyramid());
        assert_eq!(pyr.minima(), &[Piece::segment(0, 1), Piece::segment(3, 4)]);
        assert_eq!(pyr.maxima(), vec![Piece::segment(1, 3)]);

        // Not a pyramid: the tower plus a far-away piece.
        let two_max = pyr.compose(&Heap::single(Piece::segment(9, 9)));
        assert_eq!(two_max.maxima().len(), 2);
        assert!(!two_max.is_pyramid());
    }

    #[test]
    fn statistics() {
        let h = Heap::from_pieces(&[Piece::segment(1, 3), Piece::segment(2, 5)]);
        assert_eq!(h.piece_count(), 2);
        assert_eq!(h.total_length(), 2 + 3);
        assert_eq!(h.sum_right_ends(), 3 + 5);
        let w = h.weight(&seg_weight);
        assert_eq!((w.coeff_num, w.x, w.y, w.q), (1, 5, 2, 8));
    }

    #[test]
    fn normal_form_is_order_independent() {
        // Build random heaps, then rebuild from random linear extensions.
        let mut rng = StdRng::seed_from_u64(0x5eed);
        let universe = md_universe(4);
        for _ in 0..200 {
            let mut h = Heap::empty();
            for _ in 0..rng.gen_range(0..8) {
                h.push(universe[rng.gen_range(0..universe.len())]);
            }
            // Random linear extension: repeatedly emit a random current
            // minimum of the remaining heap.
            let mut remaining = h.clone();
            let mut order = Vec::new();
            while !remaining.is_empty() {
                let mins = remaining.minima().to_vec();
                let pick = mins[rng.gen_range(0..mins.len())];
                order.push(pick);
                remaining = remaining.without_minima(&[pick]);
            }
            assert_eq!(Heap::from_pieces(&order), h, "linearization changed the heap");
        }
    }

    #[test]
    fn compose_is_associative() {
        let mut rng = StdRng::seed_from_u64(7);
        let universe = md_universe(3);
        let random_heap = |rng: &mut StdRng| {
            let mut h = Heap::empty();
            for _ in 0..rng.gen_range(0..5) {
                h.push(universe[rng.gen_range(0..universe.len())]);
            }
            h
        };
        for _ in 0..100 {
            let (a, b, c) = (random_heap(&mut rng), random_heap(&mut rng), random_heap(&mut rng));
            assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        }
    }

    #[test]
    fn without_minima_restacks() {
        let h = Heap::from_pieces(&[
            Piece::segment(0, 1),
            Piece::segment(3, 4),
            Piece::segment(1, 3),
        ]);
        let rest = h.without_minima(&[Piece::segment(0, 1), Piece::segment(3, 4)]);
        assert_eq!(rest, Heap::single(Piece::segment(1, 3)), "the top piece falls to the ground");
    }

    #[test]
    fn enumeration_small_universes() {
        // Bound excluding every piece: only the empty heap.
        let tight = Trunc::new(0, 0, 0);
        let heaps = enumerate_heaps(&md_universe(1), &md_weight, tight).unwrap();
        assert_eq!(heaps, vec![Heap::empty()]);

        // Monomers/dimers at abscissas {0,1}, q-degree ≤ 2, x-degree ≤ 2:
        // hand count. Pieces available: [0]L (xq⁰), [1]L (xq¹), [1]R (xq¹),
        // [0,1] (x²q¹).
        let trunc = Trunc::new(2, 0, 2);
        let heaps = enumerate_heaps(&md_universe(1), &md_weight, trunc).unwrap();
        // Hand list: ∅; [0]L; [1]L; [1]R; [0,1]; [0]L[1]L; [0]L[1]R;
        // stacks of two monomers at the same abscissa (3 at abscissa 1 with
        // label pairs LL, LR, RL, RR — q² = 2 exceeds nothing: q exponent
        // 1+1 = 2 ≤ 2, so all 4), [0]L over [0]L (q⁰); [0]L under/over
        // nothing else fits (dimer + monomer is x³ or q³).
        let expected = 1 // empty
            + 4 // single pieces
            + 2 // {[0]L,[1]L}, {[0]L,[1]R} trivial pairs
            + 1 // [0]L stacked on [0]L
            + 4; // four ordered label pairs stacked at abscissa 1
        assert_eq!(heaps.len(), expected);

        // Degree-0 weight must be rejected.
        let err = enumerate_heaps(&[Piece::segment(0, 0)], &|_| Monomial::new(1, 0, 0, 0), trunc);
        assert_eq!(
            err.unwrap_err(),
            HeapError::InfiniteEnumeration { piece: "[0]".into() }
        );
    }

    #[test]
    fn enumeration_matches_layer_invariants() {
        let trunc = Trunc::new(4, 0, 6);
        for h in enumerate_heaps(&md_universe(2), &md_weight, trunc).unwrap() {
            for layer in h.layers() {
                for (i, p) in layer.iter().enumerate() {
                    for q in &layer[i + 1..] {
                        assert!(!p.overlaps(q), "layer contains concurrent pieces");
                    }
                }
            }
            for k in 1..h.layers().len() {
                for p in &h.layers()[k] {
                    assert!(
                        h.layers()[k - 1].iter().any(|q| q.overlaps(p)),
                        "piece floats above its support"
                    );
                }
            }
        }
    }

    #[test]
    fn inversion_identity_monomer_dimer() {
        let trunc = Trunc::new(5, 0, 8);
        let universe = md_universe(3);
        // M = {[0]L, [0,1]}: heaps whose maxima are the two pieces touching 0.
        let in_m = |p: &Piece| p.a == 0;
        let lhs = inversion_lemma_lhs(&universe, &in_m, &md_weight, trunc).unwrap();
        let rhs = inversion_lemma_rhs(&universe, &in_m, &md_weight, trunc).unwrap();
        assert_eq!(lhs, rhs);

        // M = everything: numerator is 1, and the identity still holds.
        let all = |_: &Piece| true;
        let lhs = inversion_lemma_lhs(&universe, &all, &md_weight, trunc).unwrap();
        let rhs = inversion_lemma_rhs(&universe, &all, &md_weight, trunc).unwrap();
        assert_eq!(lhs, rhs);

        // Empty universe: both sides are exactly 1.
        let lhs = inversion_lemma_lhs(&[], &all, &md_weight, trunc).unwrap();
        assert_eq!(lhs, TruncatedSeries::one(trunc));
        let rhs = inversion_lemma_rhs(&[], &all, &md_weight, trunc).unwrap();
        assert_eq!(rhs, TruncatedSeries::one(trunc));
    }

    #[test]
    fn inversion_identity_random_segment_universes() {
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..3 {
            let mut universe: BTreeSet<Piece> = BTreeSet::new();
            while universe.len() < 5 {
                let a = rng.gen_range(0..4u32);
                let b = a + rng.gen_range(0..3u32);
                universe.insert(Piece::segment(a, b));
            }
            let universe: Vec<Piece> = universe.into_iter().collect();
            let trunc = Trunc::new(0, 4, 14);
            let weight = |p: &Piece| Monomial::xyq(0, 1, p.b as i64);
            let marked = universe[0];
            let in_m = move |p: &Piece| *p == marked;
            let lhs = inversion_lemma_lhs(&universe, &in_m, &weight, trunc).unwrap();
            let rhs = inversion_lemma_rhs(&universe, &in_m, &weight, trunc).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn pyramid_identity() {
        let trunc = Trunc::new(4, 0, 7);
        let universe = md_universe(3);
        let lhs = pyramid_series_lhs(&universe, &md_weight, trunc).unwrap();
        let rhs = pyramid_series_rhs(&universe, &md_weight, trunc).unwrap();
        assert_eq!(lhs, rhs);

        let empty_lhs = pyramid_series_lhs(&[], &md_weight, trunc).unwrap();
        assert!(empty_lhs.is_zero(), "no pieces, no pyramids");
        let empty_rhs = pyramid_series_rhs(&[], &md_weight, trunc).unwrap();
        assert!(empty_rhs.is_zero());
    }

    #[test]
    fn json_round_trip_and_normal_form_rejection() {
        let h = Heap::from_pieces(&[
            Piece::monomer(1, 'L'),
            Piece::dimer(1),
            Piece::monomer(2, 'R'),
        ]);
        let js = serde_json::to_string(&h).unwrap();
        let back: Heap = serde_json::from_str(&js).unwrap();
        assert_eq!(back, h);
        assert!(js.contains("\"label\":\"L\""));

        // A floating layer is rejected.
        let bad = r#"{"layers":[[{"a":0,"b":0,"label":"L"}],[{"a":5,"b":6}]]}"#;
        assert!(serde_json::from_str::<Heap>(bad).is_err());
        // A backwards segment is rejected.
        let bad = r#"{"layers":[[{"a":3,"b":1}]]}"#;
        assert!(serde_json::from_str::<Heap>(bad).is_err());
    }
}
