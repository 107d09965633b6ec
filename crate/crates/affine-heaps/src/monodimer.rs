//! The monomer/dimer model: closed walks on the looped line graph, the
//! bijection φ from alternating diagrams to walks, its composition Υ with
//! the walk↔heap bijection, signed trivial-heap sums, and the cancellation
//! combinatorics (involution `I`, projection `Pr`).
//!
//! The walk graph has vertices 0, 1, 2, …; edges `i → i+1` ("up"),
//! `i+1 → i` ("down"), and loops at every vertex carrying a label `L` or
//! `R` — except that vertex 0 has only an `L` loop (the *starred* model;
//! the relaxed model adds the `R` loop at 0). A closed walk of length `n`
//! has `area` equal to the sum of the start vertices of its steps, and step
//! weight `x q^{area(step)}`.
//!
//! Elementary cycles of this graph are loops (↦ labeled monomers `[i]`) and
//! round trips `i → i+1 → i` (↦ dimers `[i, i+1]`), which identifies heaps
//! of cycles with heaps of monomers and dimers under the weights
//! `v([i]) = x q^i` and `v([i,i+1]) = x² q^{2i+1}`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycles::{self, CycleError, CycleHeap, Digraph};
use crate::diagrams::{AlternatingDiagram, ChainType, DiagramError};
use crate::heaps::{trivial_alternating_sum, Heap, Piece};
use crate::series::{Monomial, Trunc, TruncatedSeries};

/// Errors of the walk/pyramid layer.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MdError {
    /// Malformed walk: broken chaining, a step below vertex 0, a missing or
    /// forbidden loop label.
    #[error("InvalidWalk: {reason}")]
    InvalidWalk { reason: String },
    /// A walk consisting solely of identically-labeled loops at one positive
    /// vertex corresponds to no diagram.
    #[error("ExceptionalWalk: uniform loops at a positive vertex")]
    ExceptionalWalk,
    /// The trivial heap has no dimer and no L-monomer directly left of an
    /// R-monomer, so the sign-reversing swap is undefined.
    #[error("NoActiveSite: no dimer or LR-adjacency to swap")]
    NoActiveSite,
    /// The word contains the forbidden contiguous factor `LR`.
    #[error("ForbiddenFactor: contiguous LR at positions {at} and {}", at + 1)]
    ForbiddenFactor { at: usize },
    /// The heap of a marked pyramid must have a unique maximal piece.
    #[error("NotAPyramid: the heap has {maxima} maximal pieces")]
    NotAPyramid { maxima: usize },
    /// The mark must be a point of the maximal segment.
    #[error("MarkOutsideMaximalPiece: {mark} not in [{a}, {b}]")]
    MarkOutsideMaximalPiece { mark: u32, a: u32, b: u32 },
    /// Propagated diagram-layer error.
    #[error("{0}")]
    Diagram(#[from] DiagramError),
    /// Propagated cycle-layer error.
    #[error("{0}")]
    Cycle(#[from] CycleError),
}

/// One step of a walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Up,
    Down,
    Loop,
}

/// A walk step: up/down steps carry no label, loops carry `L` or `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Step {
    pub kind: StepKind,
    pub label: Option<char>,
}

impl Step {
    pub fn up() -> Self {
        Step { kind: StepKind::Up, label: None }
    }

    pub fn down() -> Self {
        Step { kind: StepKind::Down, label: None }
    }

    pub fn looped(label: char) -> Self {
        Step { kind: StepKind::Loop, label: Some(label) }
    }
}

/// Which loops exist at vertex 0: the starred graph has only `L` there; the
/// relaxed graph also has `R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkModel {
    /// Loops `L`/`R` everywhere except only `L` at vertex 0.
    Starred,
    /// Loops `L`/`R` everywhere, including vertex 0.
    Relaxed,
}

/// A walk on the looped line graph, as a start vertex and step sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MdWalk {
    pub start: u32,
    pub steps: Vec<Step>,
}

impl MdWalk {
    pub fn new(start: u32, steps: Vec<Step>) -> Self {
        MdWalk { start, steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Structural validity under `model`: steps chain without going below
    /// 0, loops are labeled `L`/`R` (only `L` at 0 when starred), and
    /// up/down steps are unlabeled.
    pub fn validate(&self, model: WalkModel) -> Result<(), MdError> {
        let mut at = self.start;
        for (k, s) in self.steps.iter().enumerate() {
            match s.kind {
                StepKind::Up => {
                    if s.label.is_some() {
                        return Err(MdError::InvalidWalk {
                            reason: format!("step {k}: up steps carry no label"),
                        });
                    }
                    at += 1;
                }
                StepKind::Down => {
                    if s.label.is_some() {
                        return Err(MdError::InvalidWalk {
                            reason: format!("step {k}: down steps carry no label"),
                        });
                    }
                    if at == 0 {
                        return Err(MdError::InvalidWalk {
                            reason: format!("step {k}: down step below vertex 0"),
                        });
                    }
                    at -= 1;
                }
                StepKind::Loop => match s.label {
                    Some('L') => {}
                    Some('R') => {
                        if at == 0 && model == WalkModel::Starred {
                            return Err(MdError::InvalidWalk {
                                reason: format!("step {k}: no R loop at vertex 0"),
                            });
                        }
                    }
                    other => {
                        return Err(MdError::InvalidWalk {
                            reason: format!("step {k}: loop label {other:?} not L or R"),
                        });
                    }
                },
            }
        }
        Ok(())
    }

    /// Vertex itinerary `j_0, …, j_n` (one more entry than steps). Panics on
    /// an invalid walk; call [`Self::validate`] first.
    pub fn vertices(&self) -> Vec<u32> {
        let mut vs = vec![self.start];
        for s in &self.steps {
            let at = *vs.last().expect("nonempty");
            vs.push(match s.kind {
                StepKind::Up => at + 1,
                StepKind::Down => at.checked_sub(1).expect("validated walk"),
                StepKind::Loop => at,
            });
        }
        vs
    }

    pub fn end(&self) -> u32 {
        *self.vertices().last().expect("nonempty")
    }

    pub fn is_closed(&self) -> bool {
        self.end() == self.start
    }

    /// Sum of the start vertices of all steps.
    pub fn area(&self) -> u64 {
        let vs = self.vertices();
        vs[..vs.len() - 1].iter().map(|&v| v as u64).sum()
    }

    /// Does the walk consist solely of loops, all at one positive vertex,
    /// with one common label?
    pub fn is_exceptional(&self) -> bool {
        self.start > 0
            && !self.steps.is_empty()
            && self.steps.iter().all(|s| s.kind == StepKind::Loop)
            && self.steps.windows(2).all(|p| p[0].label == p[1].label)
    }
}

impl fmt::Display for MdWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start)?;
        let mut at = self.start;
        for s in &self.steps {
            at = match s.kind {
                StepKind::Up => at + 1,
                StepKind::Down => at.saturating_sub(1),
                StepKind::Loop => at,
            };
            match s.kind {
                StepKind::Loop => write!(f, " ={}{}", s.label.unwrap_or('?'), at)?,
                _ => write!(f, " {}", at)?,
            }
        }
        Ok(())
    }
}

/// A pyramid of monomers and dimers together with a marked point of its
/// unique maximal segment.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MarkedPyramid {
    pyramid: Heap,
    mark: u32,
}

impl MarkedPyramid {
    pub fn new(pyramid: Heap, mark: u32) -> Result<Self, MdError> {
        let maxima = pyramid.maxima();
        if maxima.len() != 1 {
            return Err(MdError::NotAPyramid { maxima: maxima.len() });
        }
        let top = maxima[0];
        if mark < top.a || mark > top.b {
            return Err(MdError::MarkOutsideMaximalPiece { mark, a: top.a, b: top.b });
        }
        Ok(MarkedPyramid { pyramid, mark })
    }

    pub fn pyramid(&self) -> &Heap {
        &self.pyramid
    }

    pub fn mark(&self) -> u32 {
        self.mark
    }

    /// The monomial `x^{ℓ(H)+|H|} q^{Σ endpoints}` of the pyramid (the mark
    /// does not enter the weight).
    pub fn weight(&self) -> Monomial {
        self.pyramid.weight(&md_weight)
    }

    /// Column heaps: every piece a monomer at one common positive abscissa,
    /// all carrying the same label. These are the images of the exceptional
    /// walks and correspond to no diagram.
    pub fn is_column(&self) -> bool {
        let mut pieces = self.pyramid.pieces();
        let first = match pieces.next() {
            None => return false,
            Some(p) => *p,
        };
        first.len() == 0
            && first.a > 0
            && self
                .pyramid
                .pieces()
                .all(|p| (p.a, p.b, p.label) == (first.a, first.b, first.label))
    }
}

impl<'de> Deserialize<'de> for MarkedPyramid {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            pyramid: Heap,
            mark: u32,
        }
        let repr = Repr::deserialize(de)?;
        MarkedPyramid::new(repr.pyramid, repr.mark).map_err(serde::de::Error::custom)
    }
}

/// Weight of a monomer/dimer piece: `v([i]) = x q^i`,
/// `v([i,i+1]) = x² q^{2i+1}` — one `x` per cell, `q` to the sum of the
/// cell abscissas.
pub fn md_weight(p: &Piece) -> Monomial {
    let cells = (p.len() + 1) as i64;
    Monomial::xyq(cells, 0, (p.a as i64 + p.b as i64) * cells / 2)
}

/// From a diagram to the closed walk through its column sizes
/// `|D_0| → |D_1| → … → |D_n| = |D_0|`; a flat step at equal positive sizes
/// is the loop labeled by the chain type, and flat steps at size 0 take the
/// `L` loop.
pub fn phi(d: &AlternatingDiagram) -> MdWalk {
    let n = d.rank();
    let cols = d.col_sizes();
    let mut steps = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b) = (cols[i], cols[(i + 1) % n]);
        steps.push(if b == a + 1 {
            Step::up()
        } else if a == b + 1 {
            Step::down()
        } else if a == 0 {
            Step::looped('L')
        } else {
            let label = match d.chain_types()[&i] {
                ChainType::L => 'L',
                ChainType::R => 'R',
            };
            Step::looped(label)
        });
    }
    let walk = MdWalk::new(cols[0], steps);
    debug_assert!(walk.validate(WalkModel::Starred).is_ok());
    debug_assert!(walk.is_closed());
    debug_assert!(!walk.is_exceptional());
    walk
}

/// Inverse of [`phi`]: vertices become column sizes, loop labels become
/// chain types. The walk must be a closed walk on the starred graph and not
/// exceptional.
pub fn phi_inverse(walk: &MdWalk) -> Result<AlternatingDiagram, MdError> {
    walk.validate(WalkModel::Starred)?;
    if walk.is_empty() {
        return Err(MdError::InvalidWalk { reason: "a diagram has positive rank".into() });
    }
    if !walk.is_closed() {
        return Err(MdError::InvalidWalk {
            reason: format!("walk ends at {} instead of {}", walk.end(), walk.start),
        });
    }
    if walk.is_exceptional() {
        return Err(MdError::ExceptionalWalk);
    }
    let n = walk.len();
    let vs = walk.vertices();
    let col_sizes: Vec<u32> = vs[..n].to_vec();
    let mut chain_types = std::collections::BTreeMap::new();
    for (i, s) in walk.steps.iter().enumerate() {
        if s.kind == StepKind::Loop && vs[i] > 0 {
            let t = if s.label == Some('L') { ChainType::L } else { ChainType::R };
            chain_types.insert(i, t);
        }
    }
    let d = AlternatingDiagram::validate(n, col_sizes, chain_types)
        .expect("non-exceptional closed walks encode valid diagrams");
    Ok(d)
}

/// The walk graph as an explicit digraph on vertices `0..=vmax`, with arc
/// ids recorded for conversions.
pub struct WalkGraph {
    graph: Digraph,
    loop_l: Vec<usize>,
    loop_r: Vec<Option<usize>>,
    up: Vec<usize>,
    down: Vec<usize>,
}

impl WalkGraph {
    /// Build the graph on `0..=vmax` (`model` decides the loop at 0). Arc
    /// weights are `x q^{start}`.
    pub fn new(vmax: u32, model: WalkModel) -> Self {
        let names = (0..=vmax).map(|v| v.to_string()).collect();
        let mut graph = Digraph::new(names);
        let mut loop_l = Vec::new();
        let mut loop_r = Vec::new();
        let mut up = Vec::new();
        let mut down = Vec::new();
        for i in 0..=vmax as usize {
            let w = Monomial::xyq(1, 0, i as i64);
            loop_l.push(graph.add_arc(i, i, Some('L'), w.clone()));
            loop_r.push(if i > 0 || model == WalkModel::Relaxed {
                Some(graph.add_arc(i, i, Some('R'), w))
            } else {
                None
            });
        }
        for i in 0..vmax as usize {
            up.push(graph.add_arc(i, i + 1, None, Monomial::xyq(1, 0, i as i64)));
            down.push(graph.add_arc(i + 1, i, None, Monomial::xyq(1, 0, (i + 1) as i64)));
        }
        WalkGraph { graph, loop_l, loop_r, up, down }
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    /// Translate a validated walk into arc ids on this graph.
    pub fn arcs_of(&self, walk: &MdWalk) -> cycles::Walk {
        let mut arcs = Vec::with_capacity(walk.len());
        let mut at = walk.start as usize;
        for s in &walk.steps {
            match s.kind {
                StepKind::Up => {
                    arcs.push(self.up[at]);
                    at += 1;
                }
                StepKind::Down => {
                    arcs.push(self.down[at - 1]);
                    at -= 1;
                }
                StepKind::Loop => {
                    arcs.push(match s.label {
                        Some('R') => self.loop_r[at].expect("R loop exists in this model"),
                        _ => self.loop_l[at],
                    });
                }
            }
        }
        cycles::Walk { start: walk.start as usize, arcs }
    }

    /// Translate arc ids back into steps.
    pub fn steps_of(&self, walk: &cycles::Walk) -> MdWalk {
        let steps = walk
            .arcs
            .iter()
            .map(|&id| {
                let arc = &self.graph.arcs()[id];
                if arc.from == arc.to {
                    Step::looped(arc.label.expect("loops are labeled"))
                } else if arc.to == arc.from + 1 {
                    Step::up()
                } else {
                    Step::down()
                }
            })
            .collect();
        MdWalk::new(walk.start as u32, steps)
    }

    /// Interpret an elementary cycle as a monomer or dimer.
    fn cycle_to_piece(&self, c: &cycles::Cycle) -> Piece {
        match c.arcs() {
            [id] => {
                let arc = &self.graph.arcs()[*id];
                debug_assert_eq!(arc.from, arc.to);
                Piece::monomer(arc.from as u32, arc.label.expect("loops are labeled"))
            }
            [id1, id2] => {
                let (a, b) = (&self.graph.arcs()[*id1], &self.graph.arcs()[*id2]);
                debug_assert_eq!(a.to, b.from);
                debug_assert_eq!(b.to, a.from);
                Piece::dimer(a.from.min(b.from) as u32)
            }
            other => unreachable!("line-graph cycles have ≤ 2 arcs, got {}", other.len()),
        }
    }

    /// Interpret a monomer or dimer as an elementary cycle (arc ids).
    fn piece_to_cycle_arcs(&self, p: &Piece) -> Vec<usize> {
        if p.len() == 0 {
            vec![match p.label {
                Some('R') => self.loop_r[p.a as usize].expect("R loop exists in this model"),
                _ => self.loop_l[p.a as usize],
            }]
        } else {
            debug_assert_eq!(p.len(), 1, "pieces are monomers or dimers");
            vec![self.up[p.a as usize], self.down[p.a as usize]]
        }
    }
}

/// Convert a cycle heap over the walk graph into a monomer/dimer heap. Two
/// cycles share a vertex exactly when the corresponding segments overlap,
/// so pushing in layer order reproduces the same shape.
fn cycle_heap_to_md(wg: &WalkGraph, h: &CycleHeap) -> Heap {
    let mut heap = Heap::empty();
    for c in h.pieces() {
        heap.push(wg.cycle_to_piece(c));
    }
    heap
}

/// The composite bijection: diagram → closed walk → (trivial path, heap of
/// cycles) → marked pyramid, marked at the walk's basepoint.
pub fn upsilon(d: &AlternatingDiagram) -> MarkedPyramid {
    assert!(d.rank() >= 2, "the walk correspondence needs rank ≥ 2");
    let walk = phi(d);
    let vmax = walk.vertices().iter().copied().max().unwrap_or(0) + 1;
    let wg = WalkGraph::new(vmax, WalkModel::Starred);
    let (eta, cycle_heap) =
        cycles::psi_cycles(wg.graph(), &wg.arcs_of(&walk)).expect("phi emits valid walks");
    debug_assert!(eta.is_empty(), "closed walks leave a trivial path");
    let pyramid = cycle_heap_to_md(&wg, &cycle_heap);
    MarkedPyramid::new(pyramid, walk.start)
        .expect("a nonempty closed walk yields a pyramid marked at its basepoint")
}

/// Inverse of [`upsilon`]: rebuild the closed walk from the marked pyramid
/// (column heaps and relaxed-model pyramids are rejected on the way).
pub fn upsilon_inverse(mp: &MarkedPyramid) -> Result<AlternatingDiagram, MdError> {
    let vmax = mp.pyramid.pieces().map(|p| p.b).max().unwrap_or(0) + 1;
    let wg = WalkGraph::new(vmax, WalkModel::Relaxed);
    let mut cycle_heap = CycleHeap::empty();
    for p in mp.pyramid.pieces() {
        let arcs = wg.piece_to_cycle_arcs(p);
        cycle_heap.push(wg.graph(), cycles::Cycle::from_arc_ids(wg.graph(), arcs));
    }
    let eta = cycles::Walk::trivial(mp.mark as usize);
    let walk = cycles::psi_cycles_inverse(wg.graph(), &eta, &cycle_heap)?;
    phi_inverse(&wg.steps_of(&walk))
}

/// The four trivial-heap families whose signed sums have closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrivialModel {
    /// Monomers labeled `L`/`R` at every abscissa, and dimers.
    Md,
    /// As `Md` but the only label at abscissa 0 is `L`.
    MdStar,
    /// Dimers only.
    DimersOnly,
    /// Dimers, plus optionally a single `L` monomer at abscissa 0.
    LAtZeroOnly,
}

/// Every monomer/dimer piece of `model` whose weight fits under `trunc`.
pub fn md_universe(model: TrivialModel, trunc: Trunc) -> Vec<Piece> {
    let mut u = Vec::new();
    let monomers_everywhere = matches!(model, TrivialModel::Md | TrivialModel::MdStar);
    if trunc.x_max >= 1 {
        match model {
            TrivialModel::Md | TrivialModel::MdStar | TrivialModel::LAtZeroOnly => {
                u.push(Piece::monomer(0, 'L'));
            }
            TrivialModel::DimersOnly => {}
        }
        if model == TrivialModel::Md {
            u.push(Piece::monomer(0, 'R'));
        }
        if monomers_everywhere {
            for i in 1..=trunc.q_max {
                u.push(Piece::monomer(i, 'L'));
                u.push(Piece::monomer(i, 'R'));
            }
        }
    }
    if trunc.x_max >= 2 {
        let mut i = 0;
        while 2 * i + 1 <= trunc.q_max {
            u.push(Piece::dimer(i));
            i += 1;
        }
    }
    u.sort();
    u
}

/// `Σ_T (−1)^{|T|} v(T)` over the trivial heaps of `model`, by direct
/// enumeration.
pub fn signed_trivial_sum(model: TrivialModel, trunc: Trunc) -> TruncatedSeries {
    let universe = md_universe(model, trunc);
    trivial_alternating_sum(&universe, &|_| true, &md_weight, trunc, 0)
}

/// The sign-reversing involution on trivial monomer/dimer heaps: at the
/// smallest abscissa `i` carrying either a dimer `[i,i+1]` or the monomer
/// pair (`L` at `i`, `R` at `i+1`), swap one configuration for the other.
/// Weight-preserving since `x²q^{2i+1} = (xq^i)(xq^{i+1})`; flips piece
/// parity.
pub fn involution_i(t: &Heap) -> Result<Heap, MdError> {
    assert!(t.is_trivial(), "the involution acts on trivial heaps");
    let pieces: Vec<Piece> = t.pieces().copied().collect();
    let has = |p: Piece| pieces.binary_search(&p).is_ok();
    let mut site: Option<(u32, bool)> = None; // (i, site is a dimer)
    for p in &pieces {
        let candidate = if p.len() == 1 {
            Some((p.a, true))
        } else if p.label == Some('L') && has(Piece::monomer(p.a + 1, 'R')) {
            Some((p.a, false))
        } else {
            None
        };
        if let Some(c) = candidate {
            if site.map_or(true, |s| c.0 < s.0) {
                site = Some(c);
            }
        }
    }
    let Some((i, is_dimer)) = site else {
        return Err(MdError::NoActiveSite);
    };
    let mut out: Vec<Piece> = if is_dimer {
        let mut v: Vec<Piece> = pieces.iter().copied().filter(|p| *p != Piece::dimer(i)).collect();
        v.push(Piece::monomer(i, 'L'));
        v.push(Piece::monomer(i + 1, 'R'));
        v
    } else {
        let mut v: Vec<Piece> = pieces
            .iter()
            .copied()
            .filter(|p| *p != Piece::monomer(i, 'L') && *p != Piece::monomer(i + 1, 'R'))
            .collect();
        v.push(Piece::dimer(i));
        v
    };
    out.sort();
    Ok(Heap::from_pieces(&out))
}

/// Letters of the cancellation words: an empty slot or a labeled monomer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WordLetter {
    O,
    L,
    R,
}

impl fmt::Display for WordLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordLetter::O => write!(f, "0"),
            WordLetter::L => write!(f, "L"),
            WordLetter::R => write!(f, "R"),
        }
    }
}

fn trim_word(mut w: Vec<WordLetter>) -> Vec<WordLetter> {
    while w.last() == Some(&WordLetter::O) {
        w.pop();
    }
    w
}

/// Split an `LR`-avoiding word into its `R`-subword and `L`-subword (zeros
/// kept, the other letter's positions removed).
pub fn projection_pr(
    w: &[WordLetter],
) -> Result<(Vec<WordLetter>, Vec<WordLetter>), MdError> {
    if let Some(at) = w.windows(2).position(|p| p == [WordLetter::L, WordLetter::R]) {
        return Err(MdError::ForbiddenFactor { at });
    }
    let w_r = trim_word(w.iter().copied().filter(|&l| l != WordLetter::L).collect());
    let w_l = trim_word(w.iter().copied().filter(|&l| l != WordLetter::R).collect());
    Ok((w_r, w_l))
}

/// Inverse of [`projection_pr`]: between the (i−1)-th and i-th zero of the
/// result, place the `R`-run of the i-th gap of `w_r` followed by the
/// `L`-run of the i-th gap of `w_l`.
pub fn projection_pr_inverse(w_r: &[WordLetter], w_l: &[WordLetter]) -> Vec<WordLetter> {
    debug_assert!(!w_r.contains(&WordLetter::L));
    debug_assert!(!w_l.contains(&WordLetter::R));
    // Run lengths between consecutive zeros (both words end in implicit
    // zeros, so a final partial run is also a gap).
    let gaps = |w: &[WordLetter]| {
        let mut runs = Vec::new();
        let mut run = 0usize;
        for &l in w {
            if l == WordLetter::O {
                runs.push(run);
                run = 0;
            } else {
                run += 1;
            }
        }
        runs.push(run); // letters after the last explicit zero
        runs
    };
    let (r_gaps, l_gaps) = (gaps(w_r), gaps(w_l));
    let rounds = r_gaps.len().max(l_gaps.len());
    let mut w = Vec::new();
    for i in 0..rounds {
        for _ in 0..r_gaps.get(i).copied().unwrap_or(0) {
            w.push(WordLetter::R);
        }
        for _ in 0..l_gaps.get(i).copied().unwrap_or(0) {
            w.push(WordLetter::L);
        }
        w.push(WordLetter::O);
    }
    trim_word(w)
}

/// Index sum of the nonzero letters of a word.
pub fn word_index_sum(w: &[WordLetter]) -> u64 {
    w.iter().enumerate().filter(|(_, &l)| l != WordLetter::O).map(|(i, _)| i as u64).sum()
}

/// Count of a given letter.
pub fn word_count(w: &[WordLetter], letter: WordLetter) -> u64 {
    w.iter().filter(|&&l| l == letter).count() as u64
}
