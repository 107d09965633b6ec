//! Walks on a weighted digraph and the bijection ψ between walks and pairs
//! (self-avoiding path, heap of elementary cycles).
//!
//! Pieces here are elementary cycles (closed walks visiting no vertex
//! twice, taken up to rotation); two cycles are concurrent when their
//! vertex sets intersect. ψ scans a walk left to right, keeping the current
//! self-avoiding prefix; whenever an arc revisits a vertex, the loop just
//! closed is split off and dropped onto the heap. The inverse replays the
//! recursion backwards: at each step, at most one maximal cycle of the heap
//! contains the path's current endpoint (two such cycles would be
//! concurrent, hence comparable, hence not both maximal), and the last move
//! was a cycle-closure exactly when that cycle meets the path only at the
//! endpoint.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::Monomial;

/// A finite directed multigraph with weighted, optionally labeled arcs.
/// Parallel arcs are distinguished by their index.
#[derive(Clone, Debug)]
pub struct Digraph {
    vertex_names: Vec<String>,
    arcs: Vec<Arc>,
}

/// One arc of a [`Digraph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    /// Distinguishes parallel arcs (e.g. the two loop labels at a vertex).
    pub label: Option<char>,
    pub weight: Monomial,
}

impl Digraph {
    pub fn new(vertex_names: Vec<String>) -> Self {
        Digraph { vertex_names, arcs: Vec::new() }
    }

    /// Add an arc and return its id.
    pub fn add_arc(&mut self, from: usize, to: usize, label: Option<char>, weight: Monomial) -> usize {
        assert!(from < self.vertex_names.len() && to < self.vertex_names.len());
        self.arcs.push(Arc { from, to, label, weight });
        self.arcs.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Ids of arcs leaving `v`.
    pub fn arcs_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs.iter().enumerate().filter(move |(_, a)| a.from == v).map(|(i, _)| i)
    }
}

/// A walk: a start vertex and a contiguous arc sequence (possibly empty).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Walk {
    pub start: usize,
    pub arcs: Vec<usize>,
}

impl Walk {
    pub fn trivial(start: usize) -> Self {
        Walk { start, arcs: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Check contiguity against `g` and return the end vertex.
    pub fn end(&self, g: &Digraph) -> Result<usize, CycleError> {
        let mut at = self.start;
        if at >= g.vertex_count() {
            return Err(CycleError::InvalidWalk { reason: format!("start vertex {at} out of range") });
        }
        for &id in &self.arcs {
            let arc = g.arcs().get(id).ok_or_else(|| CycleError::InvalidWalk {
                reason: format!("arc id {id} out of range"),
            })?;
            if arc.from != at {
                return Err(CycleError::InvalidWalk {
                    reason: format!("arc {id} leaves {} but the walk is at {}", arc.from, at),
                });
            }
            at = arc.to;
        }
        Ok(at)
    }

    /// Vertex sequence, start first (length = arcs + 1). Assumes contiguity.
    pub fn vertices(&self, g: &Digraph) -> Vec<usize> {
        let mut vs = vec![self.start];
        for &id in &self.arcs {
            vs.push(g.arcs()[id].to);
        }
        vs
    }

    /// No vertex visited twice.
    pub fn is_self_avoiding(&self, g: &Digraph) -> bool {
        let vs = self.vertices(g);
        let set: BTreeSet<usize> = vs.iter().copied().collect();
        set.len() == vs.len()
    }

    /// Product of arc weights.
    pub fn weight(&self, g: &Digraph) -> Monomial {
        product_weight(self.arcs.iter().map(|&id| &g.arcs()[id].weight))
    }

    /// Human-readable vertex itinerary such as `ABFC`.
    pub fn describe(&self, g: &Digraph) -> String {
        self.vertices(g).iter().map(|&v| g.vertex_name(v).to_string()).collect()
    }
}

fn product_weight<'a>(weights: impl Iterator<Item = &'a Monomial>) -> Monomial {
    let mut w = Monomial::new(1, 0, 0, 0);
    for m in weights {
        w.coeff_num *= m.coeff_num;
        w.x += m.x;
        w.y += m.y;
        w.q += m.q;
    }
    w
}

/// An elementary cycle: a closed walk visiting each vertex once, stored
/// canonically by rotating the arc sequence so the lexicographically least
/// vertex comes first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cycle {
    arcs: Vec<usize>,
}

impl Cycle {
    /// Canonicalize an arc sequence forming an elementary cycle: contiguous,
    /// closed, and visiting no vertex twice. Panics otherwise.
    pub fn from_arc_ids(g: &Digraph, arcs: Vec<usize>) -> Self {
        let walk = Walk { start: g.arcs()[arcs[0]].from, arcs };
        let end = walk.end(g).expect("arcs must chain");
        assert_eq!(end, walk.start, "an elementary cycle is closed");
        let mut vs = walk.vertices(g);
        vs.pop();
        let distinct: BTreeSet<usize> = vs.iter().copied().collect();
        assert_eq!(distinct.len(), vs.len(), "an elementary cycle repeats no vertex");
        Cycle::from_arcs(g, walk.arcs)
    }

    /// Canonicalize an arc sequence forming an elementary cycle.
    fn from_arcs(g: &Digraph, arcs: Vec<usize>) -> Self {
        debug_assert!(!arcs.is_empty());
        let mut best = 0;
        for (k, &id) in arcs.iter().enumerate() {
            if g.arcs()[id].from < g.arcs()[arcs[best]].from {
                best = k;
            }
        }
        let mut rotated = arcs[best..].to_vec();
        rotated.extend_from_slice(&arcs[..best]);
        Cycle { arcs: rotated }
    }

    pub fn arcs(&self) -> &[usize] {
        &self.arcs
    }

    /// Vertices visited, in cycle order starting at the least vertex.
    pub fn vertex_set(&self, g: &Digraph) -> BTreeSet<usize> {
        self.arcs.iter().map(|&id| g.arcs()[id].from).collect()
    }

    pub fn weight(&self, g: &Digraph) -> Monomial {
        product_weight(self.arcs.iter().map(|&id| &g.arcs()[id].weight))
    }

    pub fn describe(&self, g: &Digraph) -> String {
        let mut s = String::from("(");
        for &id in &self.arcs {
            s.push_str(g.vertex_name(g.arcs()[id].from));
        }
        s.push(')');
        s
    }
}

/// Errors for walk validation and the inverse bijection.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CycleError {
    /// The arc sequence is not a walk of the graph.
    #[error("InvalidWalk: {reason}")]
    InvalidWalk { reason: String },
    /// A maximal cycle of the heap misses the self-avoiding path, so the
    /// pair is outside the image of ψ.
    #[error("ConditionViolated: a maximal cycle avoids the path")]
    ConditionViolated,
}

/// A heap whose pieces are elementary cycles, concurrent when they share a
/// vertex. Same canonical layer structure as segment heaps.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleHeap {
    layers: Vec<Vec<Cycle>>,
}

impl CycleHeap {
    pub fn empty() -> Self {
        CycleHeap { layers: Vec::new() }
    }

    pub fn push(&mut self, g: &Digraph, c: Cycle) {
        let cset = c.vertex_set(g);
        let mut level = 0;
        for (k, layer) in self.layers.iter().enumerate() {
            if layer.iter().any(|d| !d.vertex_set(g).is_disjoint(&cset)) {
                level = k + 1;
            }
        }
        if level == self.layers.len() {
            self.layers.push(Vec::new());
        }
        let layer = &mut self.layers[level];
        let pos = layer.partition_point(|d| *d < c);
        layer.insert(pos, c);
    }

    pub fn layers(&self) -> &[Vec<Cycle>] {
        &self.layers
    }

    pub fn pieces(&self) -> impl Iterator<Item = &Cycle> {
        self.layers.iter().flatten()
    }

    pub fn piece_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Maximal cycles: none above them (sharing a vertex) in higher layers.
    pub fn maxima(&self, g: &Digraph) -> Vec<Cycle> {
        let mut out = Vec::new();
        for (k, layer) in self.layers.iter().enumerate() {
            for c in layer {
                let cset = c.vertex_set(g);
                let covered = self.layers[k + 1..]
                    .iter()
                    .any(|upper| upper.iter().any(|d| !d.vertex_set(g).is_disjoint(&cset)));
                if !covered {
                    out.push(c.clone());
                }
            }
        }
        out.sort();
        out
    }

    pub fn is_pyramid(&self, g: &Digraph) -> bool {
        !self.is_empty() && self.maxima(g).len() == 1
    }

    /// Remove one maximal cycle (must be maximal) and renormalize.
    fn without_maximal(&self, g: &Digraph, c: &Cycle) -> CycleHeap {
        debug_assert!(self.maxima(g).contains(c));
        let mut h = CycleHeap::empty();
        let mut skipped = false;
        // Removing from the top: skip the highest occurrence of `c`.
        let highest = self
            .layers
            .iter()
            .rposition(|layer| layer.contains(c))
            .expect("cycle present in the heap");
        for (k, layer) in self.layers.iter().enumerate() {
            for d in layer {
                if !skipped && k == highest && d == c {
                    skipped = true;
                    continue;
                }
                h.push(g, d.clone());
            }
        }
        h
    }

    pub fn weight(&self, g: &Digraph) -> Monomial {
        product_weight(self.pieces().flat_map(|c| c.arcs.iter().map(|&id| &g.arcs()[id].weight)))
    }
}

impl fmt::Display for CycleHeap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} cycles in {} layers", self.piece_count(), self.layers.len())
    }
}

/// Forward bijection: scan the walk, split off an elementary cycle each
/// time a vertex repeats, and drop it onto the heap.
pub fn psi_cycles(g: &Digraph, walk: &Walk) -> Result<(Walk, CycleHeap), CycleError> {
    walk.end(g)?;
    let mut heap = CycleHeap::empty();
    // The running self-avoiding path, as arcs plus its vertex sequence.
    let mut path_arcs: Vec<usize> = Vec::new();
    let mut path_vs: Vec<usize> = vec![walk.start];
    for &id in &walk.arcs {
        let to = g.arcs()[id].to;
        if let Some(pos) = path_vs.iter().position(|&v| v == to) {
            // The suffix from the earlier visit of `to`, plus this arc,
            // closes an elementary cycle meeting the path only in `to`.
            let cycle_arcs: Vec<usize> =
                path_arcs.drain(pos..).chain(std::iter::once(id)).collect();
            path_vs.truncate(pos + 1);
            heap.push(g, Cycle::from_arcs(g, cycle_arcs));
        } else {
            path_arcs.push(id);
            path_vs.push(to);
        }
    }
    Ok((Walk { start: walk.start, arcs: path_arcs }, heap))
}

/// Inverse bijection: rebuild the unique walk mapping to `(eta, heap)`.
/// Requires `eta` self-avoiding and every maximal cycle of `heap` to meet
/// `eta`.
pub fn psi_cycles_inverse(
    g: &Digraph,
    eta: &Walk,
    heap: &CycleHeap,
) -> Result<Walk, CycleError> {
    eta.end(g)?;
    if !eta.is_self_avoiding(g) {
        return Err(CycleError::InvalidWalk { reason: "path is not self-avoiding".into() });
    }
    let eta_vs: BTreeSet<usize> = eta.vertices(g).iter().copied().collect();
    for c in heap.maxima(g) {
        if c.vertex_set(g).is_disjoint(&eta_vs) {
            return Err(CycleError::ConditionViolated);
        }
    }
    // Peel the walk from its end. State: current path (arcs + vertices) and
    // remaining heap; `tail` collects the walk's arcs in reverse.
    let mut path_arcs = eta.arcs.clone();
    let mut path_vs = eta.vertices(g);
    let mut h = heap.clone();
    let mut tail: Vec<usize> = Vec::new();
    while !path_arcs.is_empty() || !h.is_empty() {
        let v = *path_vs.last().expect("path has at least its start vertex");
        // At most one maximal cycle contains v (two would be concurrent and
        // hence comparable). The last forward move was the closure of that
        // cycle exactly when it meets the path only in v.
        let closing = h
            .maxima(g)
            .into_iter()
            .find(|c| c.vertex_set(g).contains(&v))
            .filter(|c| {
                let cs = c.vertex_set(g);
                path_vs.iter().filter(|&&u| cs.contains(&u)).count() == 1
            });
        if let Some(c) = closing {
            // Undo the closure: the cycle, opened at v, rejoins the path and
            // its last arc becomes the walk's last arc.
            h = h.without_maximal(g, &c);
            let start = c
                .arcs()
                .iter()
                .position(|&id| g.arcs()[id].from == v)
                .expect("cycle contains v");
            let mut opened: Vec<usize> = c.arcs()[start..].to_vec();
            opened.extend_from_slice(&c.arcs()[..start]);
            let last = opened.pop().expect("elementary cycles are nonempty");
            tail.push(last);
            for &id in &opened {
                path_arcs.push(id);
                path_vs.push(g.arcs()[id].to);
            }
        } else {
            // Undo a plain extension.
            let id = path_arcs.pop().expect("heap nonempty forces a closure at the start vertex");
            path_vs.pop();
            tail.push(id);
        }
    }
    tail.reverse();
    Ok(Walk { start: eta.start, arcs: tail })
}
