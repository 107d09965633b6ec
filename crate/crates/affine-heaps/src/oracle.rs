//! Independent brute-force enumerators.
//!
//! Everything here counts by direct exhaustive search — breadth-first over
//! the Coxeter group, depth-first over walks, nested iteration over column
//! sequences — deliberately avoiding the closed forms and bijections found
//! elsewhere in the crate, so that agreement between the two sides is
//! meaningful evidence rather than circular bookkeeping.

use crate::diagrams::{AlternatingDiagram, ChainType};
use crate::monodimer::{MdWalk, Step};
use crate::permutations::AffinePermutation;
use crate::ppp::{AltSequence, Ppp};
use crate::series::{Trunc, TruncatedSeries};
use num::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

/// Which subfamily of 321-avoiding elements a count table tallies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassTag {
    /// All 321-avoiding affine permutations.
    Affine,
    /// 321-avoiding permutations fixing the finite window `1..=n`.
    Finite,
    /// 321-avoiding affine involutions.
    AffineInvolution,
    /// 321-avoiding finite involutions.
    FiniteInvolution,
}

impl ClassTag {
    pub const ALL: [ClassTag; 4] = [
        ClassTag::Affine,
        ClassTag::Finite,
        ClassTag::AffineInvolution,
        ClassTag::FiniteInvolution,
    ];

    pub fn parse(s: &str) -> Option<ClassTag> {
        match s {
            "affine" => Some(ClassTag::Affine),
            "finite" => Some(ClassTag::Finite),
            "affine-involution" => Some(ClassTag::AffineInvolution),
            "finite-involution" => Some(ClassTag::FiniteInvolution),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassTag::Affine => "affine",
            ClassTag::Finite => "finite",
            ClassTag::AffineInvolution => "affine-involution",
            ClassTag::FiniteInvolution => "finite-involution",
        }
    }

    fn admits(self, sigma: &AffinePermutation) -> bool {
        match self {
            ClassTag::Affine => true,
            ClassTag::Finite => sigma.is_finite(),
            ClassTag::AffineInvolution => sigma.is_involution(),
            ClassTag::FiniteInvolution => sigma.is_finite() && sigma.is_involution(),
        }
    }
}

/// Counts of 321-avoiding elements by Coxeter length. Lengths with count
/// zero are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    pub n: usize,
    pub class_tag: ClassTag,
    pub rows: BTreeMap<u64, u64>,
}

impl CountTable {
    pub fn total(&self) -> u64 {
        self.rows.values().sum()
    }

    pub fn count_at(&self, len: u64) -> u64 {
        self.rows.get(&len).copied().unwrap_or(0)
    }

    /// `length,count` rows sorted by length.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("length,count\n");
        for (len, count) in &self.rows {
            writeln!(out, "{len},{count}").expect("string writes cannot fail");
        }
        out
    }
}

/// Breadth-first search over the rank-`n` affine symmetric group from the
/// identity: every element of length `ℓ + 1` is a length-`ℓ` element times
/// one generator, so layer ℓ of the search holds exactly the elements of
/// length ℓ. Calls `visit` once per element, in deterministic order.
fn bfs_group(n: usize, max_len: u64, visit: &mut dyn FnMut(u64, &AffinePermutation)) {
    assert!(n >= 2, "the construction needs window size at least 2");
    let gens: Vec<AffinePermutation> = (0..n)
        .map(|i| AffinePermutation::generator(n, i).expect("generator index is in range"))
        .collect();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut layer: Vec<AffinePermutation> = vec![AffinePermutation::identity(n)];
    seen.insert(layer[0].window().to_vec());
    for len in 0..=max_len {
        for sigma in &layer {
            visit(len, sigma);
        }
        if len == max_len {
            break;
        }
        let mut next: Vec<AffinePermutation> = Vec::new();
        for sigma in &layer {
            for g in &gens {
                let tau = sigma.compose(g).expect("sizes match");
                if tau.inversion_number() == len + 1 && seen.insert(tau.window().to_vec()) {
                    next.push(tau);
                }
            }
        }
        next.sort();
        layer = next;
    }
}

/// Count 321-avoiding elements of the rank-`n` affine symmetric group by
/// length, up to `max_len`, filtered per `class`.
pub fn enumerate_fc_elements(n: usize, max_len: u64, class: ClassTag) -> CountTable {
    let mut rows: BTreeMap<u64, u64> = BTreeMap::new();
    bfs_group(n, max_len, &mut |len, sigma| {
        if sigma.is_321_avoiding() && class.admits(sigma) {
            *rows.entry(len).or_default() += 1;
        }
    });
    rows.retain(|_, c| *c > 0);
    CountTable { n, class_tag: class, rows }
}

/// All 321-avoiding elements of the rank-`n` affine symmetric group with
/// length at most `max_len`, in order of (length, window).
pub fn fc_elements(n: usize, max_len: u64) -> Vec<AffinePermutation> {
    let mut out = Vec::new();
    bfs_group(n, max_len, &mut |_, sigma| {
        if sigma.is_321_avoiding() {
            out.push(sigma.clone());
        }
    });
    out
}

/// All valid alternating diagrams of rank `n` with size at most `max_size`,
/// by direct iteration: every cyclically ±1-balanced column-size vector,
/// crossed with every chain-type assignment, filtered through validation.
/// Sorted and duplicate-free.
pub fn enumerate_diagrams(n: usize, max_size: u32) -> Vec<AlternatingDiagram> {
    let mut cols_list: Vec<Vec<u32>> = Vec::new();
    let mut stack: Vec<Vec<u32>> = vec![vec![]];
    while let Some(partial) = stack.pop() {
        if partial.len() == n {
            if n == 1 || partial[n - 1].abs_diff(partial[0]) <= 1 {
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
        let domain: Vec<usize> =
            (0..n).filter(|&i| cols[i] > 0 && cols[i] == cols[(i + 1) % n]).collect();
        assert!(domain.len() < 31, "type assignments fit in a u32 mask");
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
    out.sort_by_key(|d| (d.size(), d.col_sizes().to_vec(), format!("{:?}", d.chain_types())));
    out
}

/// Loop availability on the half-line walk graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoopRule {
    /// `L` and `R` at every vertex, including 0.
    Everywhere,
    /// `L` and `R` at positive vertices; only `L` at 0.
    StarredAtZero,
    /// No loops anywhere: every step moves.
    NoLoops,
    /// A single `L` loop at vertex 0; positive vertices have no loops.
    OnlyAtZero,
}

impl LoopRule {
    fn loops_at(self, v: u32) -> &'static [char] {
        match (self, v) {
            (LoopRule::Everywhere, _) => &['L', 'R'],
            (LoopRule::StarredAtZero, 0) => &['L'],
            (LoopRule::StarredAtZero, _) => &['L', 'R'],
            (LoopRule::NoLoops, _) => &[],
            (LoopRule::OnlyAtZero, 0) => &['L'],
            (LoopRule::OnlyAtZero, _) => &[],
        }
    }
}

/// All closed walks on the half-line with the given loop rule, of length at
/// most `max_len` and area at most `max_area` (area = sum of the vertices
/// each step departs from). Includes one empty walk per start vertex
/// `0..=max_area`. Depth-first with area pruning; sorted, duplicate-free.
pub fn enumerate_closed_walks(rule: LoopRule, max_len: usize, max_area: u64) -> Vec<MdWalk> {
    let mut out: Vec<MdWalk> = Vec::new();
    // A closed walk of length ≥ 1 departs its start at least once, so
    // starts above max_area cannot appear; the empty walks cut off there
    // too, to keep the stream finite.
    for start in 0..=(max_area as u32) {
        let mut steps: Vec<Step> = Vec::new();
        dfs(rule, start, start, 0, max_len, max_area, &mut steps, &mut out);
    }
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    rule: LoopRule,
    start: u32,
    at: u32,
    area: u64,
    budget: usize,
    max_area: u64,
    steps: &mut Vec<Step>,
    out: &mut Vec<MdWalk>,
) {
    if at == start {
        out.push(MdWalk::new(start, steps.clone()));
    }
    if budget == 0 {
        return;
    }
    let here = area + at as u64;
    if here > max_area {
        return;
    }
    for &label in rule.loops_at(at) {
        steps.push(Step::looped(label));
        dfs(rule, start, at, here, budget - 1, max_area, steps, out);
        steps.pop();
    }
    steps.push(Step::up());
    dfs(rule, start, at + 1, here, budget - 1, max_area, steps, out);
    steps.pop();
    if at > 0 {
        steps.push(Step::down());
        dfs(rule, start, at - 1, here, budget - 1, max_area, steps, out);
        steps.pop();
    }
}

/// Tally the closed walks of length `1..=x_max` and area `≤ q_max` into a
/// series with coefficient of `x^ℓ q^a` equal to the walk count.
pub fn closed_walk_tally(rule: LoopRule, trunc: Trunc) -> TruncatedSeries {
    let mut acc = TruncatedSeries::zero(trunc);
    for w in enumerate_closed_walks(rule, trunc.x_max as usize, trunc.q_max as u64) {
        if w.is_empty() {
            continue;
        }
        acc.add_term(
            (w.len() as u32, 0, w.area() as u32),
            BigRational::from_integer(1.into()),
        );
    }
    acc
}

/// All periodic parallelogram polyominoes with at most `max_width` columns
/// and at most `max_area` cells, by nested iteration over column sequences.
/// Sorted, duplicate-free.
pub fn enumerate_ppp(max_width: u32, max_area: u32) -> Vec<Ppp> {
    let mut out: Vec<Ppp> = Vec::new();
    let mut frontier: Vec<Vec<(u32, u32)>> = vec![vec![]];
    while let Some(partial) = frontier.pop() {
        let used: u32 = partial.iter().map(|&(_, b)| b).sum();
        if !partial.is_empty() {
            let seq = AltSequence::new(partial.clone()).expect("built within the constraints");
            if seq.wraps() {
                out.push(Ppp::new(seq).expect("nonempty and wrapping"));
            }
        }
        if partial.len() as u32 == max_width || used == max_area {
            continue;
        }
        let a_cap = partial.last().map(|&(_, b)| b).unwrap_or(u32::MAX);
        for b in 1..=(max_area - used) {
            for a in 1..=b.min(a_cap) {
                let mut next = partial.clone();
                next.push((a, b));
                frontier.push(next);
            }
        }
    }
    out.sort();
    out
}

/// Tally the enumerated polyominoes into `x^height y^width q^area`.
pub fn ppp_tally(trunc: Trunc) -> TruncatedSeries {
    let mut acc = TruncatedSeries::zero(trunc);
    for p in enumerate_ppp(trunc.y_max, trunc.q_max) {
        let w = p.weight();
        if trunc.admits((w.x as u32, w.y as u32, w.q as u32)) {
            acc.add_term((w.x as u32, w.y as u32, w.q as u32), BigRational::from_integer(1.into()));
        }
    }
    acc
}
