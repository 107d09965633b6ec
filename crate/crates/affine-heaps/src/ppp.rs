//! Periodic parallelogram polyominoes.
//!
//! A column sequence `(a_i, b_i)` with `1 ≤ a_i ≤ b_i` and `a_i ≤ b_{i-1}`
//! encodes a column-convex polyomino: column `i` has `b_i` cells and shares
//! `a_i` rows with its predecessor. Stacking the segments `[a_i, b_i]` from
//! the last pair to the first turns such sequences into heaps of segments,
//! bijectively. The *periodic* polyominoes are the sequences whose ends can
//! be glued (`a_1 ≤ b_m`); their heaps are exactly the ones in which no
//! minimal segment lies completely to the left of a maximal segment.
//!
//! This module provides:
//! - [`AltSequence`], [`Ppp`], [`MarkedPpp`]: validated encodings with the
//!   width/height/area statistics and JSON forms;
//! - the sequence ↔ heap bijection ([`AltSequence::to_heap`] /
//!   [`AltSequence::from_heap`]) and the wrap test [`is_wrappable`];
//! - brute-force generating-function sums over these heap families, used to
//!   cross-check the closed-form series;
//! - the marked-polyomino ↔ alternating-diagram bijection
//!   ([`MarkedPpp::to_diagram`] / [`MarkedPpp::from_diagram`]) through the
//!   45-degree lattice rotation;
//! - the right-endpoint swap ([`endpoint_swap`]), a weight-preserving
//!   sign-reversing involution that powers the cancellation argument behind
//!   the closed forms.

use crate::diagrams::{AlternatingDiagram, ChainType, DiagramError};
use crate::heaps::{enumerate_heaps, Heap, Piece};
use crate::series::{Monomial, Trunc, TruncatedSeries};
use num::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Errors for sequence validation, polyomino construction, and conversions.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PppError {
    #[error("pair #{index} is ({a},{b}); a column needs 1 <= a <= b")]
    InvalidPair { index: usize, a: i64, b: i64 },
    #[error("pair #{index} has a = {a} > {prev_b} = previous b")]
    BrokenAlternation { index: usize, a: u32, prev_b: u32 },
    #[error("a polyomino needs at least one column")]
    EmptyPolyomino,
    #[error("cannot glue the ends: first a = {first_a} > {last_b} = last b")]
    BrokenWrap { first_a: u32, last_b: u32 },
    #[error("mark {mark} outside the first column's range {lo}..={hi}")]
    MarkOutOfRange { mark: u32, lo: u32, hi: u32 },
    #[error("a rectangular polyomino (width {width}, constant column {column}) has no diagram")]
    RectangularPpp { width: usize, column: u32 },
    #[error("not a heap of plain segments at abscissa >= 1: contains {piece}")]
    NotSegmentHeap { piece: String },
    #[error("the heap is trivial (at most one layer)")]
    TrivialHeap,
    #[error("the heap is not eligible for the endpoint swap")]
    NotSwapEligible,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A validated alternating sequence of column pairs `(a_i, b_i)`:
/// `1 ≤ a_i ≤ b_i` for every `i` and `a_i ≤ b_{i-1}` for `i ≥ 2`.
/// The empty sequence is allowed (the empty heap).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AltSequence {
    pairs: Vec<(u32, u32)>,
}

impl AltSequence {
    pub fn new(pairs: Vec<(u32, u32)>) -> Result<Self, PppError> {
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if !(1 <= a && a <= b) {
                return Err(PppError::InvalidPair { index: i, a: a as i64, b: b as i64 });
            }
            if i > 0 && a > pairs[i - 1].1 {
                return Err(PppError::BrokenAlternation { index: i, a, prev_b: pairs[i - 1].1 });
            }
        }
        Ok(AltSequence { pairs })
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// Number of columns.
    pub fn width(&self) -> u32 {
        self.pairs.len() as u32
    }

    /// `Σ (b_i − a_i)`.
    pub fn height(&self) -> u32 {
        self.pairs.iter().map(|&(a, b)| b - a).sum()
    }

    /// `Σ b_i` — the number of cells.
    pub fn area(&self) -> u32 {
        self.pairs.iter().map(|&(_, b)| b).sum()
    }

    /// `x^height · y^width · q^area`.
    pub fn weight(&self) -> Monomial {
        Monomial::xyq(self.height() as i64, self.width() as i64, self.area() as i64)
    }

    /// Whether the ends can be glued: empty, or `a_1 ≤ b_m`.
    pub fn wraps(&self) -> bool {
        match (self.pairs.first(), self.pairs.last()) {
            (Some(&(a1, _)), Some(&(_, bm))) => a1 <= bm,
            _ => true,
        }
    }

    /// `Some(M)` when the sequence is nonempty with every `a_i = b_i = M`.
    pub fn rectangular_column(&self) -> Option<u32> {
        let &(a0, b0) = self.pairs.first()?;
        (a0 == b0 && self.pairs.iter().all(|&(a, b)| (a, b) == (a0, b0))).then_some(a0)
    }

    /// Stack the segments `[a_m, b_m], …, [a_1, b_1]` (last pair at the
    /// bottom).
    pub fn to_heap(&self) -> Heap {
        let mut h = Heap::empty();
        for &(a, b) in self.pairs.iter().rev() {
            h.push(Piece::segment(a, b));
        }
        h
    }

    /// Invert [`Self::to_heap`]: repeatedly remove the leftmost minimal
    /// segment; the removal order lists the pairs from last to first.
    pub fn from_heap(h: &Heap) -> Result<Self, PppError> {
        for p in h.pieces() {
            if p.label.is_some() || p.a == 0 {
                return Err(PppError::NotSegmentHeap { piece: p.to_string() });
            }
        }
        let mut rest = h.clone();
        let mut rev: Vec<(u32, u32)> = Vec::with_capacity(h.piece_count());
        while !rest.is_empty() {
            let m = rest.minima()[0];
            rev.push((m.a, m.b));
            rest = rest.without_minima(&[m]);
        }
        rev.reverse();
        let seq = AltSequence::new(rev).expect("leftmost-minimal removal yields a valid sequence");
        debug_assert_eq!(&seq.to_heap(), h);
        Ok(seq)
    }
}

#[derive(Serialize, Deserialize)]
struct SeqRepr {
    pairs: Vec<(u32, u32)>,
}

impl Serialize for AltSequence {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeqRepr { pairs: self.pairs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AltSequence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = SeqRepr::deserialize(d)?;
        AltSequence::new(repr.pairs).map_err(D::Error::custom)
    }
}

/// A periodic parallelogram polyomino: a nonempty alternating sequence whose
/// ends glue (`a_1 ≤ b_m`). The first entry's `a_1` is the gluing offset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Ppp {
    seq: AltSequence,
}

impl Ppp {
    pub fn new(seq: AltSequence) -> Result<Self, PppError> {
        let (&(a1, _), &(_, bm)) = match (seq.pairs.first(), seq.pairs.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(PppError::EmptyPolyomino),
        };
        if a1 > bm {
            return Err(PppError::BrokenWrap { first_a: a1, last_b: bm });
        }
        Ok(Ppp { seq })
    }

    pub fn seq(&self) -> &AltSequence {
        &self.seq
    }

    pub fn width(&self) -> u32 {
        self.seq.width()
    }

    pub fn height(&self) -> u32 {
        self.seq.height()
    }

    pub fn area(&self) -> u32 {
        self.seq.area()
    }

    /// Width plus height: the number of lattice diagonals the boundary
    /// crosses in one period.
    pub fn half_perimeter(&self) -> u32 {
        self.seq.width() + self.seq.height()
    }

    pub fn weight(&self) -> Monomial {
        self.seq.weight()
    }

    pub fn to_heap(&self) -> Heap {
        self.seq.to_heap()
    }

    /// Read a polyomino back from a heap; the heap must be nonempty and
    /// wrappable.
    pub fn from_heap(h: &Heap) -> Result<Self, PppError> {
        Ppp::new(AltSequence::from_heap(h)?)
    }
}

impl Serialize for Ppp {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.seq.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Ppp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ppp::new(AltSequence::deserialize(d)?).map_err(D::Error::custom)
    }
}

/// A periodic parallelogram polyomino with a mark `j` on the first column,
/// `a_1 ≤ j ≤ b_1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MarkedPpp {
    ppp: Ppp,
    mark: u32,
}

impl MarkedPpp {
    pub fn new(ppp: Ppp, mark: u32) -> Result<Self, PppError> {
        let (a1, b1) = ppp.seq.pairs[0];
        if !(a1 <= mark && mark <= b1) {
            return Err(PppError::MarkOutOfRange { mark, lo: a1, hi: b1 });
        }
        Ok(MarkedPpp { ppp, mark })
    }

    pub fn ppp(&self) -> &Ppp {
        &self.ppp
    }

    pub fn mark(&self) -> u32 {
        self.mark
    }

    pub fn weight(&self) -> Monomial {
        self.ppp.weight()
    }

    /// Rotate the marked polyomino into an alternating diagram.
    ///
    /// Drop the bottom cell of every column, rotate the cell picture 45°
    /// clockwise (cell `(i, r)` lands on vertical line `i + r` at height
    /// `r − i`, repeated with period `width + height` in the line index),
    /// and read the points on the lines as diagram columns; label `0` sits
    /// on the line through the marked cell `(1, j)`. Rectangular polyominoes
    /// with column `M ≥ 2` are the one family this picture cannot encode;
    /// the `M = 1` rectangles become empty diagrams.
    pub fn to_diagram(&self) -> Result<AlternatingDiagram, PppError> {
        let pairs = self.ppp.seq.pairs();
        if let Some(col) = self.ppp.seq.rectangular_column() {
            if col >= 2 {
                return Err(PppError::RectangularPpp { width: pairs.len(), column: col });
            }
            return Ok(AlternatingDiagram::empty(pairs.len()));
        }
        let m = pairs.len() as i64;
        let n = self.ppp.half_perimeter() as i64;
        debug_assert!(n >= 2, "non-rectangular implies at least two diagonals");

        // Bottom row indices, anchored at B_1 = 1.
        let mut bottom = vec![1i64; pairs.len()];
        for i in 1..pairs.len() {
            bottom[i] = bottom[i - 1] + pairs[i - 1].1 as i64 - pairs[i].0 as i64;
        }
        // One period of cells, bottom cells removed: (line, height).
        let mut base: Vec<(i64, i64)> = Vec::new();
        for (i0, &(_, b)) in pairs.iter().enumerate() {
            let i = i0 as i64 + 1;
            for r in (bottom[i0] + 1)..=(bottom[i0] + b as i64 - 1) {
                base.push((i + r, r - i));
            }
        }
        debug_assert!(!base.is_empty(), "a non-rectangular polyomino keeps at least one cell");
        let v_min = base.iter().map(|c| c.0).min().unwrap();
        let v_max = base.iter().map(|c| c.0).max().unwrap();
        // Periodic copies shift lines by n and heights by n − 2m.
        let dh = n - 2 * m;
        let span = (v_max - v_min) / n + 3;
        let v0 = 1 + self.mark as i64;
        let mut lines: BTreeMap<i64, Vec<i64>> = (v0..=v0 + n).map(|v| (v, Vec::new())).collect();
        for k in -span..=span {
            for &(v, h) in &base {
                if let Some(entry) = lines.get_mut(&(v + k * n)) {
                    entry.push(h + k * dh);
                }
            }
        }
        let cols: Vec<u32> = (0..n).map(|l| lines[&(v0 + l)].len() as u32).collect();
        debug_assert_eq!(cols[0] as usize, lines[&(v0 + n)].len(), "line counts are periodic");
        let mut types = BTreeMap::new();
        for l in 0..n {
            let c_here = cols[l as usize];
            if c_here > 0 && c_here == cols[((l + 1) % n) as usize] {
                let lo_here = lines[&(v0 + l)].iter().min().unwrap();
                let lo_next = lines[&(v0 + l + 1)].iter().min().unwrap();
                debug_assert_ne!(lo_here, lo_next, "adjacent lines interleave strictly");
                let t = if lo_here < lo_next { ChainType::R } else { ChainType::L };
                types.insert(l as usize, t);
            }
        }
        Ok(AlternatingDiagram::validate(n as usize, cols, types)?)
    }

    /// Invert [`Self::to_diagram`]. Total on valid diagrams: the empty
    /// diagram of rank `n` becomes the `M = 1` rectangle of width `n`.
    pub fn from_diagram(d: &AlternatingDiagram) -> Result<Self, PppError> {
        let n = d.rank() as i64;
        if d.size() == 0 {
            let seq = AltSequence::new(vec![(1, 1); d.rank()])?;
            return MarkedPpp::new(Ppp::new(seq)?, 1);
        }
        let cols = d.col_sizes();
        let types = d.chain_types();
        let size = d.size() as i64;
        let gamma = |t: i64| cols[t.rem_euclid(n) as usize] as i64;
        let kind = |t: i64| types.get(&(t.rem_euclid(n) as usize)).copied();

        // Anchor line for label 0, far enough from both window edges that
        // every column meeting lines [anchor, anchor + n) lies uncut; one
        // further period keeps a nonzero diagonal beyond the rooted one, so
        // trailing zero-height columns get synthesized.
        let anchor = n * ((size + 2 * n) / n + 1);
        let t_hi = anchor + 2 * n + size + 2;
        let t0 = (0..n).find(|&t| gamma(t) > 0).expect("nonzero size has a nonzero column");

        // Bottom heights along the lift; heights keep h ≡ t (mod 2).
        let mut beta: BTreeMap<i64, i64> = BTreeMap::new();
        let mut prev = (t0, t0 & 1);
        beta.insert(prev.0, prev.1);
        for t in (t0 + 1)..=t_hi {
            if gamma(t) == 0 {
                continue;
            }
            let gap = t - prev.0 - 1;
            let b = if gap > 0 {
                // A run of g empty lines lowers the next bottom by g − 1.
                prev.1 - (gap - 1)
            } else {
                let (c_prev, c_here) = (gamma(prev.0), gamma(t));
                if c_here > c_prev {
                    prev.1 - 1
                } else if c_here < c_prev {
                    prev.1 + 1
                } else {
                    match kind(prev.0).expect("equal positive neighbours carry a chain type") {
                        ChainType::R => prev.1 + 1,
                        ChainType::L => prev.1 - 1,
                    }
                }
            };
            beta.insert(t, b);
            prev = (t, b);
        }

        // Points grouped into polyomino columns: the cell (t, h) belongs to
        // the diagonal i = (t − h)/2 at row r = (t + h)/2.
        let mut diag: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
        for (&t, &b) in &beta {
            for k in 0..gamma(t) {
                let h = b + 2 * k;
                diag.entry((t - h) / 2).or_default().push((t + h) / 2);
            }
        }
        // (diagonal, bottom row index B, column height b); B = r_min − 1
        // restores the removed bottom cell.
        let mut columns: Vec<(i64, i64, i64)> = Vec::new();
        for (&i, rows) in &diag {
            let lo = *rows.iter().min().unwrap();
            let hi = *rows.iter().max().unwrap();
            assert_eq!(hi - lo + 1, rows.len() as i64, "a column is a contiguous cell run");
            columns.push((i, lo - 1, rows.len() as i64 + 1));
        }
        // Zero-height columns fill the diagonal gaps: b = 1, a forced to 1.
        let mut full: Vec<(i64, i64, i64)> = Vec::new();
        for w in 0..columns.len() {
            if w > 0 {
                let (mut pi, mut pb, mut pn) =
                    (full.last().unwrap().0, full.last().unwrap().1, full.last().unwrap().2);
                while pi + 1 < columns[w].0 {
                    full.push((pi + 1, pb + pn - 1, 1));
                    (pi, pb, pn) = (pi + 1, pb + pn - 1, 1);
                }
            }
            full.push(columns[w]);
        }
        // a_i = B_{i−1} + b_{i−1} − B_i; the windows
        // [i + B_i + a_i − 1, i + B_i + b_i − 1] tile the lift, and the one
        // containing the anchor roots the sequence and fixes the mark.
        let a_of = |w: usize| -> i64 {
            let (i, b_here, _) = full[w];
            let (pi, pb, pn) = full[w - 1];
            assert_eq!(pi + 1, i);
            pb + pn - b_here
        };
        let root = (1..full.len())
            .find(|&w| {
                let (i, b_here, n_here) = full[w];
                let a = a_of(w);
                (i + b_here + a - 1..=i + b_here + n_here - 1).contains(&anchor)
            })
            .expect("the rooting windows tile the lift");
        let mark = anchor - full[root].0 - full[root].1 + 1;
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        let mut covered = 0i64;
        let mut w = root;
        while covered < n {
            let a = a_of(w);
            let b = full[w].2;
            assert!(a >= 1 && a <= b, "internal: lifted column {a}..{b} out of range");
            covered += b - a + 1;
            pairs.push((a as u32, b as u32));
            w += 1;
        }
        assert_eq!(covered, n, "one period of rooting windows covers exactly n lines");
        let got = MarkedPpp::new(Ppp::new(AltSequence::new(pairs)?)?, mark as u32)?;
        debug_assert_eq!(got.ppp.half_perimeter() as i64, n);
        debug_assert_eq!(got.ppp.area() as i64 - got.ppp.width() as i64, size);
        Ok(got)
    }
}

#[derive(Serialize, Deserialize)]
struct MarkedRepr {
    pairs: Vec<(u32, u32)>,
    mark: u32,
}

impl Serialize for MarkedPpp {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MarkedRepr { pairs: self.ppp.seq.pairs.clone(), mark: self.mark }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MarkedPpp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = MarkedRepr::deserialize(d)?;
        let seq = AltSequence::new(repr.pairs).map_err(D::Error::custom)?;
        MarkedPpp::new(Ppp::new(seq).map_err(D::Error::custom)?, repr.mark)
            .map_err(D::Error::custom)
    }
}

/// Whether the ends of a heap can be glued: empty, or the rightmost maximal
/// segment starts no further right than the leftmost minimal segment ends.
/// (Equivalently: no minimal segment lies completely left of a maximal one.)
pub fn is_wrappable(h: &Heap) -> bool {
    match (h.maxima().last(), h.minima().first()) {
        (Some(rm), Some(lm)) => rm.a <= lm.b,
        _ => true,
    }
}

/// The rightmost maximal piece, if any.
pub fn rightmost_maximal(h: &Heap) -> Option<Piece> {
    h.maxima().into_iter().next_back()
}

/// All segments `[a, b]` with `1 ≤ a ≤ b ≤ q_max` and `b − a ≤ x_max`: the
/// pieces that can appear in a heap whose weight the truncation admits.
pub fn segment_universe(trunc: Trunc) -> Vec<Piece> {
    let mut v = Vec::new();
    for b in 1..=trunc.q_max {
        for a in 1..=b {
            if b - a <= trunc.x_max {
                v.push(Piece::segment(a, b));
            }
        }
    }
    v
}

/// `v([a,b]) = x^{b−a} · y · q^b`.
pub fn segment_weight(p: &Piece) -> Monomial {
    Monomial::xyq((p.b - p.a) as i64, 1, p.b as i64)
}

fn heap_family_sum(
    trunc: Trunc,
    keep: &dyn Fn(&Heap) -> bool,
    multiplicity: &dyn Fn(&Heap) -> i64,
) -> TruncatedSeries {
    let universe = segment_universe(trunc);
    let heaps = enumerate_heaps(&universe, &segment_weight, trunc)
        .expect("every segment weight has positive degree");
    let mut acc = TruncatedSeries::zero(trunc);
    for h in &heaps {
        if h.is_empty() || !keep(h) {
            continue;
        }
        let w = h.weight(&segment_weight);
        acc.add_term(
            (w.x as u32, w.y as u32, w.q as u32),
            BigRational::from_integer(multiplicity(h).into()),
        );
    }
    acc
}

/// `Σ v(H)` over nonempty wrappable heaps — the polyomino generating
/// function, counted the hard way.
pub fn wrappable_sum(trunc: Trunc) -> TruncatedSeries {
    heap_family_sum(trunc, &is_wrappable, &|_| 1)
}

/// `Σ ℓ(M)·v(H)` over nonempty wrappable heaps, where `M` is the rightmost
/// maximal segment: one mark per unit of length of `M`.
pub fn cell_marked_sum(trunc: Trunc) -> TruncatedSeries {
    heap_family_sum(trunc, &is_wrappable, &|h| {
        let m = rightmost_maximal(h).expect("nonempty");
        (m.b - m.a) as i64
    })
}

/// `Σ (ℓ(M)+1)·v(H)` over nonempty wrappable heaps: one mark per point of
/// the rightmost maximal segment.
pub fn point_marked_sum(trunc: Trunc) -> TruncatedSeries {
    heap_family_sum(trunc, &is_wrappable, &|h| {
        let m = rightmost_maximal(h).expect("nonempty");
        (m.b - m.a) as i64 + 1
    })
}

/// `Σ v(H)` over semi-pyramids: heaps with a unique maximal piece of the
/// form `[1, b]`.
pub fn semi_pyramid_sum(trunc: Trunc) -> TruncatedSeries {
    heap_family_sum(trunc, &|h| h.is_pyramid() && h.maxima()[0].a == 1, &|_| 1)
}

/// Which of the two swap roles a nontrivial heap plays.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwapClass {
    /// Removing all minima breaks wrappability, but putting one distinguished
    /// minimum back repairs it.
    TypeZero,
    /// Every other nontrivial heap.
    TypeOne,
}

/// The data controlling which subsets of minima can be removed from a
/// nontrivial heap while keeping what remains wrappable. Indices refer to
/// `heap.minima()` in left-to-right order.
#[derive(Clone, Debug)]
pub struct RemovableMinima {
    pub class: SwapClass,
    /// Index of the repairing minimum (TypeZero only).
    pub pivot: Option<usize>,
    /// `U₁`: minima that any removable set must contain (the minima entirely
    /// left of the anchor, plus the maximal minima entirely right of it).
    pub forced: BTreeSet<usize>,
    /// `U₂`: the largest removable set.
    pub allowed: BTreeSet<usize>,
    /// Whether removing exactly `forced` leaves a wrappable heap; when
    /// false, no subset works at all.
    pub image_member: bool,
    /// The anchor: the rightmost maximal piece that is not minimal.
    pub anchor: Piece,
    /// Indices of minima entirely left of the anchor.
    pub left_of_anchor: BTreeSet<usize>,
}

fn maximal_positions(h: &Heap) -> Vec<(usize, Piece)> {
    let layers = h.layers();
    let mut out = Vec::new();
    for (k, layer) in layers.iter().enumerate() {
        for p in layer {
            let covered = layers[k + 1..].iter().any(|up| up.iter().any(|q| q.overlaps(p)));
            if !covered {
                out.push((k, *p));
            }
        }
    }
    out
}

fn drop_minima(h: &Heap, indices: &BTreeSet<usize>) -> Heap {
    let mins = h.minima();
    let subset: Vec<Piece> = indices.iter().map(|&i| mins[i]).collect();
    h.without_minima(&subset)
}

/// Analyze a nontrivial heap per the removable-minima dichotomy: the subsets
/// `U` of minima with `heap ∖ U` wrappable are exactly
/// `forced ⊆ U ⊆ allowed` when `image_member` holds, and none otherwise.
pub fn removable_minima(h: &Heap) -> Result<RemovableMinima, PppError> {
    if h.is_trivial() {
        return Err(PppError::TrivialHeap);
    }
    let mins = h.minima();
    let anchor = maximal_positions(h)
        .into_iter()
        .filter(|&(layer, _)| layer >= 1)
        .map(|(_, p)| p)
        .max_by_key(|p| (p.a, p.b))
        .expect("a nontrivial heap has a non-minimal maximal piece");
    let maximal_minima: BTreeSet<usize> = maximal_positions(h)
        .iter()
        .filter(|&&(layer, _)| layer == 0)
        .map(|&(_, p)| mins.iter().position(|&q| q == p).expect("minima are distinct"))
        .collect();
    let left_of_anchor: BTreeSet<usize> =
        (0..mins.len()).filter(|&i| mins[i].b < anchor.a).collect();
    let right_of_anchor: BTreeSet<usize> =
        maximal_minima.iter().copied().filter(|&i| mins[i].a > anchor.b).collect();
    let forced: BTreeSet<usize> = left_of_anchor.union(&right_of_anchor).copied().collect();

    let upper = h.without_minima(mins);
    debug_assert!(!upper.is_empty());
    let (class, pivot) = if is_wrappable(&upper) {
        (SwapClass::TypeOne, None)
    } else {
        let repairing: Vec<usize> = (0..mins.len())
            .filter(|&i| is_wrappable(&Heap::single(mins[i]).compose(&upper)))
            .collect();
        debug_assert!(repairing.len() <= 1, "at most one minimum can repair wrappability");
        match repairing.first() {
            Some(&i) => (SwapClass::TypeZero, Some(i)),
            None => (SwapClass::TypeOne, None),
        }
    };
    let allowed: BTreeSet<usize> = match pivot {
        Some(p) => (0..mins.len()).filter(|&i| i != p).collect(),
        None => (0..mins.len()).collect(),
    };
    let image_member = forced.is_subset(&allowed) && is_wrappable(&drop_minima(h, &forced));
    Ok(RemovableMinima {
        class,
        pivot,
        forced,
        allowed,
        image_member,
        anchor,
        left_of_anchor,
    })
}

/// Whether the heap belongs to the cancelling family: nontrivial, with
/// `forced = allowed` and that unique removable set actually working.
pub fn in_swap_family(h: &Heap) -> bool {
    match removable_minima(h) {
        Ok(rm) => rm.forced == rm.allowed && rm.image_member,
        Err(_) => false,
    }
}

fn rebuild(ground: &[Piece], low: Piece, high: Piece, rest: &Heap) -> Heap {
    let mut h = Heap::from_pieces(ground);
    h.push(low);
    h.push(high);
    h.compose(rest)
}

/// The sign-reversing involution on the cancelling family: exchange the
/// right endpoints of one distinguished minimum and one distinguished
/// minimum of the upper heap. Preserves the weight and the number of minima,
/// flips the class, and changes the parity of `forced`.
pub fn endpoint_swap(h: &Heap) -> Result<Heap, PppError> {
    let rm = removable_minima(h)?;
    if !(rm.forced == rm.allowed && rm.image_member) {
        return Err(PppError::NotSwapEligible);
    }
    let mins = h.minima();
    let upper = h.without_minima(mins);
    let (low, high) = match rm.class {
        SwapClass::TypeZero => {
            let low = mins[rm.pivot.expect("TypeZero carries its pivot")];
            let high = upper.minima()[0];
            (low, high)
        }
        SwapClass::TypeOne => {
            let i = *rm
                .left_of_anchor
                .iter()
                .next_back()
                .expect("a TypeOne swap-family heap has a minimum left of the anchor");
            debug_assert_eq!(upper.minima().len(), 1);
            (mins[i], upper.minima()[0])
        }
    };
    let ground: Vec<Piece> = mins.iter().copied().filter(|&p| p != low).collect();
    let rest = upper.without_minima(&[high]);
    debug_assert_eq!(rebuild(&ground, low, high, &rest), *h);
    debug_assert!(low.a <= high.b && high.a <= low.b, "the swapped pieces overlap");
    Ok(rebuild(
        &ground,
        Piece::segment(low.a, high.b),
        Piece::segment(high.a, low.b),
        &rest,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qformulas::{marked_ppp_series, point_marked_ppp_series, pp_series, ppp_series};

    fn seg(a: u32, b: u32) -> Piece {
        Piece::segment(a, b)
    }

    fn seq(pairs: &[(u32, u32)]) -> AltSequence {
        AltSequence::new(pairs.to_vec()).unwrap()
    }

    /// All alternating sequences with `Σ b ≤ max_area`.
    fn all_sequences(max_area: u32) -> Vec<AltSequence> {
        let mut out = vec![AltSequence::new(vec![]).unwrap()];
        let mut frontier: Vec<Vec<(u32, u32)>> = vec![vec![]];
        while let Some(partial) = frontier.pop() {
            let used: u32 = partial.iter().map(|&(_, b)| b).sum();
            let a_cap = partial.last().map(|&(_, b)| b).unwrap_or(u32::MAX);
            for b in 1..=(max_area - used) {
                for a in 1..=b.min(a_cap) {
                    let mut next = partial.clone();
                    next.push((a, b));
                    out.push(AltSequence::new(next.clone()).unwrap());
                    frontier.push(next);
                }
            }
        }
        out
    }

    #[test]
    fn sequence_validation_and_json() {
        assert!(AltSequence::new(vec![]).unwrap().wraps());
        assert_eq!(
            AltSequence::new(vec![(0, 2)]).unwrap_err(),
            PppError::InvalidPair { index: 0, a: 0, b: 2 }
        );
        assert_eq!(
            AltSequence::new(vec![(3, 2)]).unwrap_err(),
            PppError::InvalidPair { index: 0, a: 3, b: 2 }
        );
        assert_eq!(
            AltSequence::new(vec![(1, 2), (3, 4)]).unwrap_err(),
            PppError::BrokenAlternation { index: 1, a: 3, prev_b: 2 }
        );
        let s = seq(&[(2, 5), (5, 7), (3, 7), (1, 2), (1, 1)]);
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(js, r#"{"pairs":[[2,5],[5,7],[3,7],[1,2],[1,1]]}"#);
        assert_eq!(serde_json::from_str::<AltSequence>(&js).unwrap(), s);
        assert!(serde_json::from_str::<AltSequence>(r#"{"pairs":[[2,1]]}"#).is_err());
        assert!(serde_json::from_str::<Ppp>(r#"{"pairs":[[2,5],[1,1]]}"#).is_err());
        assert!(serde_json::from_str::<Ppp>(r#"{"pairs":[]}"#).is_err());
        let mp: MarkedPpp = serde_json::from_str(r#"{"pairs":[[1,3],[2,3]],"mark":2}"#).unwrap();
        assert_eq!(mp.mark(), 2);
        assert_eq!(serde_json::to_string(&mp).unwrap(), r#"{"pairs":[[1,3],[2,3]],"mark":2}"#);
        assert!(serde_json::from_str::<MarkedPpp>(r#"{"pairs":[[1,3]],"mark":4}"#).is_err());
    }

    #[test]
    fn sequence_heap_worked_examples() {
        // Stacking (2,5),(5,7),(3,7),(1,2),(1,1): ends cannot glue.
        let s1 = seq(&[(2, 5), (5, 7), (3, 7), (1, 2), (1, 1)]);
        assert!(!s1.wraps());
        let h1 = s1.to_heap();
        assert_eq!(
            h1.layers(),
            &[
                vec![seg(1, 1), seg(3, 7)],
                vec![seg(1, 2), seg(5, 7)],
                vec![seg(2, 5)],
            ]
        );
        assert!(!is_wrappable(&h1));
        assert_eq!(AltSequence::from_heap(&h1).unwrap(), s1);

        // Stacking (5,7),(7,7),(2,4),(1,2),(2,6): glues, and the heap wraps.
        let s2 = seq(&[(5, 7), (7, 7), (2, 4), (1, 2), (2, 6)]);
        assert!(s2.wraps());
        let h2 = s2.to_heap();
        assert_eq!(
            h2.layers(),
            &[
                vec![seg(2, 6), seg(7, 7)],
                vec![seg(1, 2), seg(5, 7)],
                vec![seg(2, 4)],
            ]
        );
        assert!(is_wrappable(&h2));
        assert_eq!(rightmost_maximal(&h2), Some(seg(5, 7)));
        assert_eq!(AltSequence::from_heap(&h2).unwrap(), s2);

        let p = Ppp::new(s2).unwrap();
        assert_eq!((p.width(), p.height(), p.area()), (5, 9, 26));
        let w = p.weight();
        assert_eq!((w.x, w.y, w.q), (9, 5, 26));
        assert_eq!(p.half_perimeter(), 14);
        assert_eq!(Ppp::from_heap(&h2).unwrap(), p);
        assert_eq!(Ppp::from_heap(&h1).unwrap_err(), PppError::BrokenWrap { first_a: 2, last_b: 1 });
    }

    #[test]
    fn sequence_heap_round_trips() {
        let seqs = all_sequences(7);
        assert!(seqs.len() > 300);
        let mut heaps = BTreeSet::new();
        for s in &seqs {
            let h = s.to_heap();
            assert_eq!(AltSequence::from_heap(&h).unwrap(), *s, "peeling inverts stacking");
            assert_eq!(s.wraps(), is_wrappable(&h), "gluing matches wrappability");
            let w = h.weight(&segment_weight);
            assert_eq!(
                (w.x as u32, w.y as u32, w.q as u32),
                (s.height(), s.width(), s.area()),
                "the heap carries the polyomino statistics"
            );
            heaps.insert(h);
        }
        assert_eq!(heaps.len(), seqs.len(), "stacking is injective");
        // ...and surjective: every enumerated heap arises from a sequence.
        let trunc = Trunc::new(7, 7, 7);
        let universe = segment_universe(trunc);
        let enumerated = enumerate_heaps(&universe, &segment_weight, trunc).unwrap();
        for h in &enumerated {
            assert!(heaps.contains(h), "heap {:?} not reached by any sequence", h);
        }
        assert_eq!(enumerated.len(), seqs.len());
    }

    #[test]
    fn wrappable_sums_match_the_closed_forms() {
        let t = Trunc::new(4, 4, 9);
        assert_eq!(wrappable_sum(t), ppp_series(t), "plain polyomino series");
        assert_eq!(cell_marked_sum(t), marked_ppp_series(t), "cell-marked series");
        assert_eq!(point_marked_sum(t), point_marked_ppp_series(t), "point-marked series");
        let semi = semi_pyramid_sum(t);
        assert_eq!(
            semi.mul_monomial(&Monomial::x_pow(1)).unwrap().truncated(t),
            pp_series(t),
            "semi-pyramids give the non-periodic polyomino series after one x"
        );
    }

    #[test]
    fn removable_minima_match_brute_force() {
        let t = Trunc::new(3, 3, 7);
        let universe = segment_universe(t);
        let heaps = enumerate_heaps(&universe, &segment_weight, t).unwrap();
        let mut nontrivial = 0;
        for h in &heaps {
            if h.is_trivial() {
                // Trivial heaps: removal leaves a (possibly empty) trivial
                // heap, wrappable unless empty — the dichotomy tells nothing
                // here, so just confirm the error.
                assert_eq!(removable_minima(h).unwrap_err(), PppError::TrivialHeap);
                continue;
            }
            nontrivial += 1;
            let rm = removable_minima(h).unwrap();
            let k = h.minima().len();
            for mask in 0u32..(1 << k) {
                let subset: BTreeSet<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
                let works = is_wrappable(&drop_minima(h, &subset));
                let predicted = rm.image_member
                    && rm.forced.is_subset(&subset)
                    && subset.is_subset(&rm.allowed);
                assert_eq!(
                    works, predicted,
                    "removal dichotomy failed on {:?} removing {:?}",
                    h, subset
                );
            }
        }
        assert!(nontrivial > 100);
    }

    #[test]
    fn endpoint_swap_is_a_sign_reversing_involution() {
        let t = Trunc::new(4, 4, 9);
        let universe = segment_universe(t);
        let heaps = enumerate_heaps(&universe, &segment_weight, t).unwrap();
        let mut family = 0usize;
        let mut signed = TruncatedSeries::zero(t);
        for h in &heaps {
            if !in_swap_family(h) {
                continue;
            }
            family += 1;
            let rm = removable_minima(h).unwrap();
            let g = endpoint_swap(h).unwrap();
            assert!(in_swap_family(&g));
            let rg = removable_minima(&g).unwrap();
            assert_ne!(rm.class, rg.class, "the swap flips the class");
            assert_eq!(endpoint_swap(&g).unwrap(), *h, "the swap is an involution");
            assert_eq!(
                h.weight(&segment_weight),
                g.weight(&segment_weight),
                "the swap preserves the weight"
            );
            assert_eq!(h.minima().len(), g.minima().len());
            assert_eq!(
                (rm.forced.len() + rg.forced.len()) % 2,
                1,
                "the swap flips the sign (−1)^|forced|"
            );
            let w = h.weight(&segment_weight);
            let sign = if rm.forced.len() % 2 == 0 { 1 } else { -1 };
            signed.add_term(
                (w.x as u32, w.y as u32, w.q as u32),
                BigRational::from_integer(sign.into()),
            );
        }
        assert!(family > 50, "the family should be substantial, got {family}");
        assert_eq!(signed, TruncatedSeries::zero(t), "the signed family sum cancels");
        // Heaps outside the family refuse to swap.
        let column = Heap::from_pieces(&[seg(1, 1), seg(1, 1)]);
        assert_eq!(endpoint_swap(&column).unwrap_err(), PppError::NotSwapEligible);
    }

    #[test]
    fn worked_polyomino_to_diagram() {
        let p = Ppp::new(seq(&[(5, 7), (7, 7), (2, 4), (1, 2), (2, 6)])).unwrap();
        let mp = MarkedPpp::new(p.clone(), 5).unwrap();
        let d = mp.to_diagram().unwrap();
        assert_eq!(d.rank(), 14);
        assert_eq!(d.size(), 21);
        assert_eq!(d.col_sizes(), &[2, 2, 2, 1, 1, 1, 1, 0, 1, 1, 1, 2, 3, 3]);
        let expected: BTreeMap<usize, ChainType> = [
            (0, ChainType::R),
            (1, ChainType::R),
            (3, ChainType::L),
            (4, ChainType::R),
            (5, ChainType::R),
            (8, ChainType::L),
            (9, ChainType::R),
            (12, ChainType::R),
        ]
        .into_iter()
        .collect();
        assert_eq!(d.chain_types(), &expected);
        assert_eq!(MarkedPpp::from_diagram(&d).unwrap(), mp);

        // The other two marks give different diagrams of the same rank/size.
        let mut seen = BTreeSet::new();
        for j in 5..=7 {
            let mp = MarkedPpp::new(p.clone(), j).unwrap();
            let d = mp.to_diagram().unwrap();
            assert_eq!((d.rank(), d.size()), (14, 21));
            assert_eq!(MarkedPpp::from_diagram(&d).unwrap(), mp);
            seen.insert(format!("{:?}", d));
        }
        assert_eq!(seen.len(), 3);
    }

    #[test]
    fn rectangular_and_empty_special_cases() {
        for width in 1..=4usize {
            // M = 1 rectangles are the empty diagrams.
            let ones = seq(&vec![(1, 1); width]);
            let mp = MarkedPpp::new(Ppp::new(ones).unwrap(), 1).unwrap();
            let d = mp.to_diagram().unwrap();
            assert_eq!(d, AlternatingDiagram::empty(width));
            assert_eq!(MarkedPpp::from_diagram(&d).unwrap(), mp);
            // M ≥ 2 rectangles are the one shape with no diagram.
            for m_col in 2..=3u32 {
                let flat = seq(&vec![(m_col, m_col); width]);
                let mp = MarkedPpp::new(Ppp::new(flat).unwrap(), m_col).unwrap();
                assert_eq!(
                    mp.to_diagram().unwrap_err(),
                    PppError::RectangularPpp { width, column: m_col }
                );
            }
        }
    }

    /// All valid diagrams of the given rank with size at most `max_size`.
    fn all_diagrams(n: usize, max_size: u32) -> Vec<AlternatingDiagram> {
        let mut cols_list: Vec<Vec<u32>> = Vec::new();
        let mut stack: Vec<Vec<u32>> = vec![vec![]];
        while let Some(partial) = stack.pop() {
            if partial.len() == n {
                let ok_cycle = n == 1 || partial[n - 1].abs_diff(partial[0]) <= 1;
                if ok_cycle {
                    cols_list.push(partial);
                }
                continue;
            }
            let used: u32 = partial.iter().sum();
            for c in 0..=(max_size - used) {
                if let Some(&last) = partial.last() {
                    if last.abs_diff(c) > 1 {
                        continue;
                    }
                }
                let mut next = partial.clone();
                next.push(c);
                stack.push(next);
            }
        }
        let mut out = Vec::new();
        for cols in cols_list {
            let domain: Vec<usize> = (0..n)
                .filter(|&i| cols[i] > 0 && cols[i] == cols[(i + 1) % n])
                .collect();
            for mask in 0u32..(1 << domain.len()) {
                let types: BTreeMap<usize, ChainType> = domain
                    .iter()
                    .enumerate()
                    .map(|(bit, &i)| {
                        (i, if mask & (1 << bit) != 0 { ChainType::R } else { ChainType::L })
                    })
                    .collect();
                if let Ok(d) = AlternatingDiagram::validate(n, cols.clone(), types) {
                    out.push(d);
                }
            }
        }
        out
    }

    #[test]
    fn diagram_round_trips_exhaustively() {
        for n in 1..=4usize {
            let diagrams = all_diagrams(n, 6);
            assert!(diagrams.len() > 1 || n == 1);
            for d in &diagrams {
                let mp = MarkedPpp::from_diagram(d).unwrap();
                assert_eq!(
                    mp.ppp().half_perimeter() as usize,
                    n,
                    "width + height is the rank on {:?}",
                    d
                );
                assert_eq!(
                    (mp.ppp().area() - mp.ppp().width()) as u64,
                    d.size(),
                    "area − width is the size on {:?}",
                    d
                );
                assert_eq!(mp.to_diagram().unwrap(), *d, "round trip on {:?}", d);
            }
        }
    }

    #[test]
    fn marked_polyomino_round_trips_exhaustively() {
        let mut checked = 0usize;
        for s in all_sequences(7) {
            if s.pairs().is_empty() || !s.wraps() {
                continue;
            }
            let rect = s.rectangular_column();
            let p = Ppp::new(s).unwrap();
            let (a1, b1) = p.seq().pairs()[0];
            for j in a1..=b1 {
                let mp = MarkedPpp::new(p.clone(), j).unwrap();
                match mp.to_diagram() {
                    Ok(d) => {
                        assert_eq!(d.rank() as u32, p.half_perimeter());
                        assert_eq!(d.size() as u32, p.area() - p.width());
                        assert_eq!(MarkedPpp::from_diagram(&d).unwrap(), mp);
                        checked += 1;
                    }
                    Err(PppError::RectangularPpp { .. }) => {
                        assert!(rect.is_some_and(|m| m >= 2), "only flat rectangles fail");
                    }
                    Err(e) => panic!("unexpected error {e}"),
                }
            }
        }
        assert!(checked > 200, "checked {checked}");
    }

    #[test]
    fn diagram_counts_match_the_point_marked_series() {
        // Diagrams of rank n and size s are counted by the point-marked
        // series at y = x/q shifted by the flat-rectangle family; checking
        // raw counts per (n, s) against the bijection is simpler: the number
        // of marked polyominoes with half-perimeter n, area − width = s,
        // excluding M ≥ 2 rectangles, must equal the diagram count.
        let t = Trunc::new(6, 6, 6);
        let mut from_polyominoes: BTreeMap<(u32, u32), u64> = BTreeMap::new();
        for s in all_sequences(6) {
            if s.pairs().is_empty() || !s.wraps() || s.rectangular_column().is_some_and(|m| m >= 2)
            {
                continue;
            }
            let p = Ppp::new(s).unwrap();
            let n = p.half_perimeter();
            let size = p.area() - p.width();
            let (a1, b1) = p.seq().pairs()[0];
            if n <= t.x_max {
                *from_polyominoes.entry((n, size)).or_default() += (b1 - a1 + 1) as u64;
            }
        }
        let mut from_diagrams: BTreeMap<(u32, u32), u64> = BTreeMap::new();
        for n in 1..=t.x_max as usize {
            for d in all_diagrams(n, t.q_max) {
                // Only sizes reachable within area ≤ 6: area = size + width ≤ 6.
                let size = d.size() as u32;
                if size + 1 <= 6 {
                    *from_diagrams.entry((n as u32, size)).or_default() += 1;
                }
            }
        }
        for (&(n, s), &count) in &from_diagrams {
            // Polyominoes with area = s + width ≤ 6 cover all diagrams of
            // rank n, size s whose polyomino has area ≤ 6; restrict both
            // sides to that window.
            let poly = from_polyominoes.get(&(n, s)).copied().unwrap_or(0);
            assert!(
                poly <= count,
                "bijection image bound violated at rank {n} size {s}"
            );
        }
        // Exact agreement where the area window is complete: every diagram
        // of size s has area = s + width, width ≤ rank, so rank + s ≤ 6
        // guarantees completeness.
        for (&(n, s), &count) in &from_diagrams {
            if n + s <= 6 {
                assert_eq!(
                    from_polyominoes.get(&(n, s)).copied().unwrap_or(0),
                    count,
                    "marked polyomino count vs diagram count at rank {n} size {s}"
                );
            }
        }
    }
}
