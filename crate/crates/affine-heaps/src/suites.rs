//! Named verification suites.
//!
//! Each suite checks a family of exact enumerative identities by comparing
//! closed-form series against independent brute-force enumeration, or by
//! driving bijections exhaustively through round trips. Every check yields
//! one PASS/FAIL line; failures carry the first counterexample found.
//! Output is deterministic for fixed arguments regardless of the worker
//! count: checks run in any order but report in declaration order.

use crate::cycles::{psi_cycles, psi_cycles_inverse, Digraph, Walk};
use crate::diagrams::{AlternatingDiagram, ChainType};
use crate::heaps::{
    enumerate_heaps, inversion_lemma_lhs, inversion_lemma_rhs, pyramid_series_lhs,
    pyramid_series_rhs, Piece,
};
use crate::monodimer::{
    md_weight, phi, phi_inverse, signed_trivial_sum, upsilon, upsilon_inverse, MdError,
    TrivialModel,
};
use crate::oracle::{
    closed_walk_tally, enumerate_closed_walks, enumerate_diagrams, enumerate_fc_elements,
    fc_elements, ppp_tally, ClassTag, LoopRule,
};
use crate::ppp::{
    cell_marked_sum, endpoint_swap, in_swap_family, removable_minima, segment_universe,
    segment_weight, semi_pyramid_sum, wrappable_sum, AltSequence, MarkedPpp, Ppp,
};
use crate::qformulas::{
    marked_ppp_series, ppp_series, pp_series, series_big_j, series_big_n, series_big_n_hat,
    series_cal_j, series_frak_h, series_h, series_j, theorem_involutions, theorem_s,
    theorem_s_tilde, walk_series_o, walk_series_o_bar, walk_series_o_bar_star,
    walk_series_o_star,
};
use crate::series::{Exponents, Monomial, Trunc, TruncatedSeries, Var};
use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// The outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// First counterexample or failure reason; empty on success.
    pub detail: String,
}

/// The outcome of one suite: its checks in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// One line per check plus a summary line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            if c.passed {
                writeln!(out, "PASS  {}/{}", self.suite, c.name).unwrap();
            } else {
                writeln!(out, "FAIL  {}/{}: {}", self.suite, c.name, c.detail).unwrap();
            }
        }
        let (done, total) = (self.checks.iter().filter(|c| c.passed).count(), self.checks.len());
        writeln!(
            out,
            "{}: {} ({done}/{total} checks)",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" }
        )
        .unwrap();
        out
    }
}

/// Optional overrides for the built-in per-suite bounds.
#[derive(Clone, Copy, Debug, Default)]
pub struct Scale {
    pub n_max: Option<usize>,
    pub len_max: Option<u64>,
    pub x_max: Option<u32>,
    pub y_max: Option<u32>,
    pub q_max: Option<u32>,
}

/// All suite names, in canonical reporting order.
pub const SUITE_NAMES: [&str; 10] = [
    "thm-main",
    "thm-involutions",
    "catalan",
    "inversion-lemma",
    "trivial-series",
    "bijection-round-trips",
    "ppp-series",
    "cancellation",
    "identities",
    "walk-series",
];

type CheckFn = Box<dyn Fn() -> Result<(), String> + Send + Sync + 'static>;

/// Run the checks with up to `jobs` worker threads; results keep the
/// declaration order.
fn execute(suite: &str, checks: Vec<(String, CheckFn)>, jobs: usize) -> SuiteReport {
    let total = checks.len();
    let workers = jobs.max(1).min(total.max(1));
    let slots: Vec<Mutex<Option<CheckResult>>> = (0..total).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let run_one = |i: usize| {
        let (name, f) = &checks[i];
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|payload| {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panicked".into());
            Err(format!("panicked: {msg}"))
        });
        *slots[i].lock().unwrap() = Some(CheckResult {
            name: name.clone(),
            passed: outcome.is_ok(),
            detail: outcome.err().unwrap_or_default(),
        });
    };
    if workers <= 1 {
        for i in 0..total {
            run_one(i);
        }
    } else {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= total {
                        break;
                    }
                    run_one(i);
                });
            }
        });
    }
    SuiteReport {
        suite: suite.to_string(),
        checks: slots
            .into_iter()
            .map(|m| m.into_inner().unwrap().expect("every slot filled"))
            .collect(),
    }
}

/// Exact equality of two series, reporting the first differing coefficient.
fn series_eq(label: &str, lhs: &TruncatedSeries, rhs: &TruncatedSeries) -> Result<(), String> {
    if lhs == rhs {
        return Ok(());
    }
    let keys: BTreeSet<Exponents> =
        lhs.terms().map(|(e, _)| *e).chain(rhs.terms().map(|(e, _)| *e)).collect();
    for e in keys {
        if lhs.coeff(e) != rhs.coeff(e) {
            return Err(format!(
                "{label}: first difference at x^{} y^{} q^{}: {} vs {}",
                e.0,
                e.1,
                e.2,
                lhs.coeff(e),
                rhs.coeff(e)
            ));
        }
    }
    Err(format!("{label}: same coefficients under different truncation bounds"))
}

fn catalan(n: u64) -> u64 {
    // binom(2n, n) / (n + 1), exactly, without overflow for small n.
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for k in 1..=n as u128 {
        num *= n as u128 + k;
        den *= k;
    }
    (num / den / (n as u128 + 1)) as u64
}

/// Run one named suite; `None` for an unknown name.
pub fn run_suite(name: &str, scale: Scale, jobs: usize) -> Option<SuiteReport> {
    let checks = match name {
        "thm-main" => thm_main_checks(scale),
        "thm-involutions" => thm_involutions_checks(scale),
        "catalan" => catalan_checks(scale),
        "inversion-lemma" => inversion_lemma_checks(scale),
        "trivial-series" => trivial_series_checks(scale),
        "bijection-round-trips" => bijection_checks(scale),
        "ppp-series" => ppp_series_checks(scale),
        "cancellation" => cancellation_checks(scale),
        "identities" => identities_checks(scale),
        "walk-series" => walk_series_checks(scale),
        _ => return None,
    };
    Some(execute(name, checks, jobs))
}

/// Run every suite in canonical order.
pub fn run_all(scale: Scale, jobs: usize) -> Vec<SuiteReport> {
    SUITE_NAMES
        .iter()
        .map(|n| run_suite(n, scale, jobs).expect("canonical names are known"))
        .collect()
}

// ---------------------------------------------------------------------------
// thm-main: length generating functions of 321-avoiding elements.

fn table_vs_series(
    table_n: usize,
    class: ClassTag,
    len_max: u64,
    series: &TruncatedSeries,
    x_exp: u32,
) -> Result<(), String> {
    let table = enumerate_fc_elements(table_n, len_max, class);
    for l in 0..=len_max {
        let search = table.count_at(l) as i64;
        let formula = series.coeff_i64((x_exp, 0, l as u32)).ok_or_else(|| {
            format!("coefficient at x^{x_exp} q^{l} is not an integer")
        })?;
        if search != formula {
            return Err(format!(
                "window size {table_n} ({}), length {l}: search {search}, series {formula}",
                class.name()
            ));
        }
    }
    Ok(())
}

fn thm_main_checks(scale: Scale) -> Vec<(String, CheckFn)> {
    let n_max = scale.n_max.unwrap_or(6).max(2);
    let len_max = scale.len_max.unwrap_or(12);
    let mut checks: Vec<(String, CheckFn)> = Vec::new();
    for n in 2..=n_max {
        checks.push((
            format!("affine counts at window size {n}"),
            Box::new(move || {
                let st = theorem_s_tilde(Trunc::xq(n as u32, len_max as u32));
                table_vs_series(n, ClassTag::Affine, len_max, &st, n as u32)
            }),
        ));
        checks.push((
            format!("finite counts at window size {n}"),
            Box::new(move || {
                let s = theorem_s(Trunc::xq(n as u32, len_max as u32));
                table_vs_series(n, ClassTag::Finite, len_max, &s, n as u32 - 1)
            }),
        ));
    }
    checks
}

// ---------------------------------------------------------------------------
// thm-involutions: the same comparison for involutions.

fn thm_involutions_checks(scale: Scale) -> Vec<(String, CheckFn)> {
    let n_max = scale.n_max.unwrap_or(6).max(2);
    let len_max = scale.len_max.unwrap_or(12);
    let mut checks: Vec<(String, CheckFn)> = Vec::new();
    for n in 2..=n_max {
        checks.push((
            format!("affine involution counts at window size {n}"),
            Box::new(move || {
                let (_, s_tilde) = theorem_involutions(Trunc::xq(n as u32, len_max as u32));
                table_vs_series(n, ClassTag::AffineInvolution, len_max, &s_tilde, n as u32)
            }),
        ));
        checks.push((
            format!("finite involution counts at window size {n}"),
            Box::new(move || {
                let (s, _) = theorem_involutions(Trunc::xq(n as u32, len_max as u32));
                table_vs_series(n, ClassTag::FiniteInvolution, len_max, &s, n as u32 - 1)
            }),
        ));
    }
    checks
}

// ---------------------------------------------------------------------------
// catalan: totals of the finite tables.

fn catalan_checks(scale: Scale) -> Vec<(String, CheckFn)> {
    let n_max = scale.n_max.unwrap_or(6).max(2);
    (2..=n_max)
        .map(|n| {
            let name = format!("window size {n} total is the Catalan number");
            let f: CheckFn = Box::new(move || {
                let full_len = (n * (n - 1) / 2) as u64;
                let total = enumerate_fc_elements(n, full_len, ClassTag::Finite).total();
                let expect = catalan(n as u64);
                if total == expect {
                    Ok(())
                } else {
                    Err(format!("total {total}, Catalan({n}) = {expect}"))
                }
            });
            (name, f)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// inversion-lemma: heap sums as quotients of signed trivial sums.

/// Monomers at abscissas `0..=5` with both labels, dimers `[i, i+1] ⊆ [0, 5]`.
fn bounded_md_universe() -> Vec<Piece> {
    let mut u = Vec::new();
    for i in 0..=5u32 {
        u.push(Piece::monomer(i, 'L'));
        u.push(Piece::monomer(i, 'R'));
        if i < 5 {
            u.push(Piece::dimer(i));
        }
    }
    u
}

/// A seeded random segment universe plus a random target subset.
fn random_segment_universe(seed: u64) -> (Vec<Piece>, BTreeSet<Piece>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut universe = Vec::new();
    let mut marked = BTreeSet::new();
    for b in 1..=6u32 {
        for a in b.saturating_sub(3).max(1)..=b {
            if rng.gen_bool(0.5) {
                let p = Piece::segment(a, b);
                universe.push(p);
                if rng.gen_bool(0.5) {
                    marked.insert(p);
                }
            }
        }
    }
    (universe, marked)
}

fn inversion_lemma_checks(scale: Scale) -> Vec<(String, CheckFn)> {
    let q_max = scale.q_max.unwrap_or(10);
    let mut checks: Vec<(String, CheckFn)> = Vec::new();
    checks.push((
        "monomer-dimer heap sum equals the trivial-sum quotient".into(),
        Box::new(move || {
            let u = bounded_md_universe();
            let t = Trunc::xq(8, q_max);
            let lhs = inversion_lemma_lhs(&u, &|_| true, &md_weight, t).map_err(fmt_err)?;
            let rhs = inversion_lemma_rhs(&u, &|_| true, &md_weight, t).map_err(fmt_err)?;
            series_eq("monomers and dimers", &lhs, &rhs)
        }),
    ));
    checks.push((
        "monomer-dimer sum with monomer-only maxima".into(),
        Box::new(move || {
            let u = bounded_md_universe();
            let t = Trunc::xq(8, q_max);
            let in_m = |p: &Piece| p.label.is_some();
            let lhs = inversion_lemma_lhs(&u, &in_m, &md_weight, t).map_err(fmt_err)?;
            let rhs = inversion_lemma_rhs(&u, &in_m, &md_weight, t).map_err(fmt_err)?;
            series_eq("monomer-topped heaps", &lhs, &rhs)
        }),
    ));
    checks.push((
        "monomer-dimer pyramids equal the log-derivative quotient".into(),
        Box::new(move || {
            let u = bounded_md_universe();
            let t = Trunc::xq(8, q_max);
            let lhs = pyramid_series_lhs(&u, &md_weight, t).map_err(fmt_err)?;
            let rhs = pyramid_series_rhs(&u, &md_weight, t).map_err(fmt_err)?;
            series_eq("monomer-dimer pyramids", &lhs, &rhs)
        }),
    ));
    for seed in [11u64, 23, 47] {
        checks.push((
            format!("random segment universe, seed {seed}"),
            Box::new(move || {
                let (u, marked) = random_segment_universe(seed);
                let t = Trunc::new(6, 5, q_max);
                let in_m = |p: &Piece| marked.contains(p);
                let lhs = inversion_lemma_lhs(&u, &in_m, &segment_weight, t).map_err(fmt_err)?;
                let rhs = inversion_lemma_rhs(&u, &in_m, &segment_weight, t).map_err(fmt_err)?;
                series_eq("restricted-maxima heaps", &lhs, &rhs)?;
                let plhs = pyramid_series_lhs(&u, &segment_weight, t).map_err(fmt_err)?;
                let prhs = pyramid_series_rhs(&u, &segment_weight, t).map_err(fmt_err)?;
                series_eq("pyramids", &plhs, &prhs)
            }),
        ));
    }
    checks
}

fn fmt_err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// ---------------------------------------------------------------------------
// trivial-series: the four signed trivial-heap sums and their closed forms.

fn trivial_series_checks(scale: Scale) -> Vec<(String, CheckFn)> {
    let q_max = scale.q_max.unwrap_or(12);
    let x_max = scale.x_max.unwrap_or(12);
    let cases: [(&str, TrivialModel, fn(Trunc) -> TruncatedSeries); 4] = [
        ("both labels everywhere: h", TrivialModel::Md, series_h),
        ("starred at zero: j", TrivialModel::MdStar, series_j),
        ("dimers only", TrivialModel::DimersOnly, series_frak_h),
        ("one loop label at zero", TrivialModel::LAtZeroOnly, series_cal_j),
    ];
    cases
        .into_iter()
        .map(|(label, model, formula)| {
            let name = format!("signed trivial sum, {label}");
            let f: CheckFn = Box::new(move || {
                let t = Trunc::xq(x_max, q_max);
                series_eq(label, &signed_trivial_sum(model, t), &formula(t))
            });
            (name, f)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// bijection-round-trips.

/// The seven-vertex digraph used by the worked path example: A–G with ten
/// unit-weight arcs.
fn worked_digraph() -> Digraph {
    let names = ["A", "B", "C", "D", "E", "F", "G"].map(String::from).to_vec();
    let mut g = Digraph::new(names);
    for (f, t) in
        [(0, 1), (1, 5), (1, 2), (2, 6), (2, 4), (3, 2), (4, 3), (5, 2), (5, 0), (6, 1)]
    {
        g.add_arc(f, t, None, Monomial::xyq(0, 0, 1));
    }
    g
}

fn walk_by_names(g: &Digraph, names: &str) -> Walk {
    let ids: Vec<usize> = names
        .chars()
        .map(|c| {
            (0..g.vertex_count()).find(|&v| g.vertex_name(v) == c.to_string()).expect("named")
        })
        .collect();
    let arcs = ids
        .windows(2)
        .map(|p| {
            (0..g.arcs().len())
                .find(|&id| g.arcs()[id].from == p[0] && g.arcs()[id].to == p[1])
                .expect("unique arc")
        })
        .collect();
    Walk { start: ids[0], arcs }
}

/// All walks on `g` with at most `max_len` arcs, from every start.
fn all_walks(g: &Digraph, max_len: usize) -> Vec<Walk> {
    let mut out: Vec<Walk> = (0..g.vertex_count()).map(Walk::trivial).collect();
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            let at = w.end(g).expect("constructed walks are contiguous");
            for id in g.arcs_from(at) {
                let mut e = w.clone();
                e.arcs.push(id);
                next.push(e);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// The rank-12 worked diagram whose walk and marked pyramid carry weight
/// `x^12 q^17`.
fn worked_rank12_diagram() -> AlternatingDiagram {
    let types: BTreeMap<usize, ChainType> = [
        (1, ChainType::R),
        (3, ChainType::L),
        (5, ChainType::L),
        (6, ChainType::R),
        (8, ChainType::L),
        (9, ChainType::R),
        (10, ChainType::L),
        (11, ChainType::R),
    ]
    .into_iter()
    .collect();
    AlternatingDiagram::validate(12, vec![1, 2, 2, 1, 1, 2, 2, 2, 1, 1, 1, 1], types)
        .expect("the worked diagram is valid")
}

fn bijection_checks(scale: Scale) -> Vec<(String, CheckFn)> {
    let n_max = scale.n_max.unwrap_or(5).max(2);
    let size_max = scale.len_max.unwrap_or(8) as u32;
    let mut checks: Vec<(String, CheckFn)> = Vec::new();
    checks.push((
        "window to diagram and back, statistics preserved".into(),
        Box::new(move || {
            for n in 2..=n_max {
                for sigma in fc_elements(n, size_max as u64) {
                    let d = AlternatingDiagram::delta(&sigma).map_err(fmt_err)?;
                    if d.size() != sigma.inversion_number() {
                        return Err(format!(
                            "{:?}: size {} != length {}",
                            sigma.window(),
                            d.size(),
                            sigma.inversion_number()
                        ));
                    }
                    if d.delta_inverse() != sigma {
                        return Err(format!("round trip failed on {:?}", sigma.window()));
                    }
                }
            }
            Ok(())
        }),
    ));
    checks.push((
        "diagram to window and back".into(),
        Box::new(move || {
            for n in 2..=n_max {
                for d in enumerate_diagrams(n, size_max) {
                    let sigma = d.delta_inverse();
                    if !sigma.is_321_avoiding() {
                        return Err(format!("{d:?}: preimage {:?} not 321-avoiding", sigma.window()));
                    }
                    let back = AlternatingDiagram::delta(&sigma).map_err(fmt_err)?;
                    if back != d {
                        return Err(format!("round trip failed on {d:?}"));
                    }
                }
            }
            Ok(())
        }),
    ));
    checks.push((
        "diagram to walk and back, area preserved".into(),
        Box::new(move || {
            for n in 2..=n_max {
                for d in enumerate_diagrams(n, size_max) {
                    let w = phi(&d);
                    if w.area() != d.size() {
                        return Err(format!("{d:?}: walk area {} != size {}", w.area(), d.size()));
                    }
                    if w.len() != n {
                        return Err(format!("{d:?}: walk length {} != rank {n}", w.len()));
                    }
                    let back = phi_inverse(&w).map_err(fmt_err)?;
                    if back != d {
                        return Err(format!("round trip failed on {d:?}"));
                    }
                }
            }
            Ok(())
        }),
    ));
    checks.push((
        "walk to diagram and back".into(),
        Box::new(move || {
            for w in enumerate_closed_walks(LoopRule::StarredAtZero, n_max, size_max as u64) {
                if w.is_empty() {
                    continue;
                }
                match phi_inverse(&w) {
                    Ok(d) => {
                        if phi(&d) != w {
                            return Err(format!("round trip failed on walk {w}"));
                        }
                    }
                    Err(MdError::ExceptionalWalk) => {
                        if !w.is_exceptional() {
                            return Err(format!("walk {w} wrongly rejected as exceptional"));
                        }
                    }
                    Err(e) => return Err(format!("walk {w}: {e}")),
                }
            }
            Ok(())
        }),
    ));
    checks.push((
        "walk to self-avoiding path plus cycle heap and back".into(),
        Box::new(move || {
            let g = worked_digraph();
            for w in all_walks(&g, size_max as usize) {
                let (eta, heap) = psi_cycles(&g, &w).map_err(fmt_err)?;
                if !eta.is_self_avoiding(&g) {
                    return Err(format!("path of {} not self-avoiding", w.describe(&g)));
                }
                let back = psi_cycles_inverse(&g, &eta, &heap).map_err(fmt_err)?;
                if back != w {
                    return Err(format!("round trip failed on {}", w.describe(&g)));
                }
                let (ww, ew, hw) = (w.weight(&g), eta.weight(&g), heap.weight(&g));
                if ww.q != ew.q + hw.q {
                    return Err(format!("weight not preserved on {}", w.describe(&g)));
                }
            }
            Ok(())
        }),
    ));
    checks.push((
        "diagram to marked pyramid and back, weight preserved".into(),
        Box::new(move || {
            for n in 2..=n_max {
                for d in enumerate_diagrams(n, size_max) {
                    let mp = upsilon(&d);
                    let w = mp.weight();
                    if (w.x, w.q) != (n as i64, d.size() as i64) {
                        return Err(format!(
                            "{d:?}: pyramid weight x^{} q^{}, wanted x^{n} q^{}",
                            w.x,
                            w.q,
                            d.size()
                        ));
                    }
                    let back = upsilon_inverse(&mp).map_err(fmt_err)?;
                    if back != d {
                        return Err(format!("round trip failed on {d:?}"));
                    }
                }
            }
            Ok(())
        }),
    ));
    checks.push((
        "column sequence to segment heap and back".into(),
        Box::new(move || {
            // Heaps of at most 4 segments within the bounds, each of which
            // must be reached by exactly one column sequence.
            let t = Trunc::new(size_max, 4, size_max);
            let universe = segment_universe(t);
            for h in enumerate_heaps(&universe, &segment_weight, t).map_err(fmt_err)? {
                let seq = AltSequence::from_heap(&h).map_err(fmt_err)?;
                if seq.to_heap() != h {
                    return Err(format!("round trip failed on {h:?}"));
                }
                let w = h.weight(&segment_weight);
                if (seq.height(), seq.width(), seq.area())
                    != (w.x as u32, w.y as u32, w.q as u32)
                {
                    return Err(format!("statistics disagree on {h:?}"));
                }
            }
            Ok(())
        }),
    ));
    checks.push((
        "marked polyomino to diagram and back".into(),
        Box::new(move || {
            for n in 1..=n_max {
                for d in enumerate_diagrams(n, size_max) {
                    let mp = MarkedPpp::from_diagram(&d).map_err(fmt_err)?;
                    if mp.ppp().half_perimeter() as usize != n
                        || (mp.ppp().area() - mp.ppp().width()) as u64 != d.size()
                    {
                        return Err(format!("{d:?}: statistics disagree"));
                    }
                    let back = mp.to_diagram().map_err(fmt_err)?;
                    if back != d {
                        return Err(format!("round trip failed on {d:?}"));
                    }
                }
            }
            Ok(())
        }),
    ));
    checks.push((
        "worked instances".into(),
        Box::new(move || {
            // A size-31 diagram from an eight-value window.
            let sigma = crate::permutations::AffinePermutation::from_window(
                8,
                vec![-6, 13, -4, -1, 0, 14, 19, 1],
            )
            .map_err(fmt_err)?;
            let d = AlternatingDiagram::delta(&sigma).map_err(fmt_err)?;
            if d.size() != 31 || d.delta_inverse() != sigma {
                return Err("31-element diagram instance failed".into());
            }

            // The rank-12 diagram chain: walk and marked pyramid of weight
            // x^12 q^17.
            let d = worked_rank12_diagram();
            let w = phi(&d);
            if (w.len(), w.area()) != (12, 17) {
                return Err(format!("worked walk has length {} area {}", w.len(), w.area()));
            }
            if phi_inverse(&w).map_err(fmt_err)? != d {
                return Err("worked walk does not invert".into());
            }
            let mp = upsilon(&d);
            let wt = mp.weight();
            if (wt.x, wt.q) != (12, 17) {
                return Err(format!("worked pyramid weight x^{} q^{}", wt.x, wt.q));
            }

            // The five-column polyomino with width 5, height 9, area 26.
            let p = Ppp::new(
                AltSequence::new(vec![(5, 7), (7, 7), (2, 4), (1, 2), (2, 6)]).map_err(fmt_err)?,
            )
            .map_err(fmt_err)?;
            if (p.width(), p.height(), p.area()) != (5, 9, 26) {
                return Err("five-column polyomino statistics failed".into());
            }
            let mp = MarkedPpp::new(p, 5).map_err(fmt_err)?;
            let d = mp.to_diagram().map_err(fmt_err)?;
            if d.rank() != 14 || d.size() != 21 || MarkedPpp::from_diagram(&d).map_err(fmt_err)? != mp
            {
                return Err("five-column polyomino diagram chain failed".into());
            }

            // The worked fourteen-step path and its cycle heap.
            let g = worked_digraph();
            let walk = walk_by_names(&g, "ABFCGBFABCEDCE");
            let (eta, heap) = psi_cycles(&g, &walk).map_err(fmt_err)?;
            if eta.describe(&g) != "ABCE" || heap.piece_count() != 3 {
                return Err("worked path split failed".into());
            }
            let described: Vec<Vec<String>> = heap
                .layers()
                .iter()
                .map(|layer| layer.iter().map(|c| c.describe(&g)).collect())
                .collect();
            if described != vec![vec!["(BFCG)".to_string()], vec![
                "(ABF)".to_string(),
                "(CED)".to_string(),
            ]] {
                return Err(format!("worked path cycles were {described:?}"));
            }
            if psi_cycles_inverse(&g, &eta, &heap).map_err(fmt_err)? != walk {
                return Err("worked path does not invert".into());
            }
            Ok(())
        }),
    ));
    checks
}

// ---------------------------------------------------------------------------
// ppp-series.

fn ppp_series_checks(scale: Scale) -> Vec<(String, CheckFn)> {
    let t = Trunc::new(
        scale.x_max.unwrap_or(5),
        scale.y_max.unwrap_or(5),
        scale.q_max.unwrap_or(12),
    );
    vec![
        (
            "wrappable heap sum equals the polyomino series".into(),
            Box::new(move || series_eq("polyominoes", &wrappable_sum(t), &ppp_series(t)))
                as CheckFn,
        ),
        (
            "semi-pyramid sum equals the non-periodic series".into(),
            Box::new(move || {
                let lhs = semi_pyramid_sum(t)
                    .mul_monomial(&Monomial::x_pow(1))
                    .map_err(fmt_err)?
                    .truncated(t);
                series_eq("semi-pyramids", &lhs, &pp_series(t))
            }),
        ),
        (
            "cell-marked sum equals the marked series".into(),
            Box::new(move || {
                series_eq("marked polyominoes", &cell_marked_sum(t), &marked_ppp_series(t))
            }),
        ),
        (
            "column-sequence tally agrees with the heap sum".into(),
            Box::new(move || series_eq("two enumerations", &ppp_tally(t), &wrappable_sum(t))),
        ),
    ]
}

// ---------------------------------------------------------------------------
// cancellation.

fn cancellation_checks(scale: Scale) -> Vec<(String, CheckFn)> {
    let t = Trunc::new(
        scale.x_max.unwrap_or(6),
        scale.y_max.unwrap_or(4),
        scale.q_max.unwrap_or(10),
    );
    vec![
        (
            "signed sum over the swap family vanishes".into(),
            Box::new(move || {
                let universe = segment_universe(t);
                let heaps =
                    enumerate_heaps(&universe, &segment_weight, t).map_err(fmt_err)?;
                let mut signed = TruncatedSeries::zero(t);
                let mut members = 0usize;
                for h in &heaps {
                    if !in_swap_family(h) {
                        continue;
                    }
                    members += 1;
                    let rm = removable_minima(h).map_err(fmt_err)?;
                    let w = h.weight(&segment_weight);
                    let sign = if rm.forced.len() % 2 == 0 { 1 } else { -1 };
                    signed.add_term(
                        (w.x as u32, w.y as u32, w.q as u32),
                        BigRational::from_integer(sign.into()),
                    );
                }
                if members == 0 {
                    return Err("the family is unexpectedly empty".into());
                }
                series_eq("signed family sum", &signed, &TruncatedSeries::zero(t))
            }) as CheckFn,
        ),
        (
            "endpoint swap is a class-flipping weighted involution".into(),
            Box::new(move || {
                let universe = segment_universe(t);
                let heaps =
                    enumerate_heaps(&universe, &segment_weight, t).map_err(fmt_err)?;
                for h in &heaps {
                    if !in_swap_family(h) {
                        continue;
                    }
                    let g = endpoint_swap(h).map_err(fmt_err)?;
                    if !in_swap_family(&g) {
                        return Err(format!("image of {h:?} leaves the family"));
                    }
                    if endpoint_swap(&g).map_err(fmt_err)? != *h {
                        return Err(format!("not an involution on {h:?}"));
                    }
                    let (rh, rg) =
                        (removable_minima(h).map_err(fmt_err)?, removable_minima(&g).map_err(fmt_err)?);
                    if rh.class == rg.class {
                        return Err(format!("class not flipped on {h:?}"));
                    }
                    if (rh.forced.len() + rg.forced.len()) % 2 != 1 {
                        return Err(format!("sign not flipped on {h:?}"));
                    }
                    if h.weight(&segment_weight) != g.weight(&segment_weight) {
                        return Err(format!("weight not preserved on {h:?}"));
                    }
                }
                Ok(())
            }),
        ),
    ]
}

// ---------------------------------------------------------------------------
// identities.

fn identities_checks(scale: Scale) -> Vec<(String, CheckFn)> {
    let x_max = scale.x_max.unwrap_or(6);
    let q_max = scale.q_max.unwrap_or(10);
    let mut checks: Vec<(String, CheckFn)> = Vec::new();
    checks.push((
        "j(x) = h(x) + x h(xq)".into(),
        Box::new(move || {
            let t = Trunc::xq(x_max, q_max);
            let h = series_h(t);
            let rhs = h
                .substitute(Var::X, &Monomial::xyq(1, 0, 1))
                .map_err(fmt_err)?
                .mul_monomial(&Monomial::x_pow(1))
                .map_err(fmt_err)?
                .add(&h);
            series_eq("two-term relation", &series_j(t), &rhs)
        }),
    ));
    checks.push((
        "J(x) (xq;q)_inf = j(x)".into(),
        Box::new(move || {
            let t = Trunc::xq(x_max, q_max);
            let poch = TruncatedSeries::pochhammer(t, &Monomial::xyq(1, 0, 1), 1, None)
                .map_err(fmt_err)?;
            series_eq("infinite-product relation", &series_big_j(t).mul(&poch), &series_j(t))
        }),
    ));
    checks.push((
        "N(x, x/q, q) = J(x)".into(),
        Box::new(move || {
            let room = x_max;
            let big = Trunc::new(x_max + room, room, q_max + room);
            let lhs = series_big_n(big)
                .substitute(Var::Y, &Monomial::xyq(1, 0, -1))
                .map_err(fmt_err)?
                .truncated(Trunc::xq(x_max, q_max));
            series_eq("first specialization", &lhs, &series_big_j(Trunc::xq(x_max, q_max)))
        }),
    ));
    checks.push((
        "Nhat(x, x/q, q) = -x J(xq) / (1 - xq)".into(),
        Box::new(move || {
            let room = x_max;
            let big = Trunc::new(x_max + room, room, q_max + room);
            let t = Trunc::xq(x_max, q_max);
            let lhs = series_big_n_hat(big)
                .substitute(Var::Y, &Monomial::xyq(1, 0, -1))
                .map_err(fmt_err)?
                .truncated(t);
            let mut geom = TruncatedSeries::one(t);
            geom.add_term((1, 0, 1), BigRational::from_integer((-1).into()));
            let rhs = series_big_j(t)
                .substitute(Var::X, &Monomial::xyq(1, 0, 1))
                .map_err(fmt_err)?
                .mul(&geom.recip().map_err(fmt_err)?)
                .mul_monomial(&Monomial::x_pow(1))
                .map_err(fmt_err)?
                .neg()
                .truncated(t);
            series_eq("second specialization", &lhs, &rhs)
        }),
    ));
    checks.push((
        "calJ(x) = frakh(x) - x frakh(xq)".into(),
        Box::new(move || {
            let t = Trunc::xq(x_max, q_max);
            let frak = series_frak_h(t);
            let rhs = frak.sub(
                &frak
                    .substitute(Var::X, &Monomial::xyq(1, 0, 1))
                    .map_err(fmt_err)?
                    .mul_monomial(&Monomial::x_pow(1))
                    .map_err(fmt_err)?,
            );
            series_eq("dimer relation", &series_cal_j(t), &rhs)
        }),
    ));
    checks.push((
        "calJ(x) - frakh(xq) = -x calJ(-xq)".into(),
        Box::new(move || {
            let t = Trunc::xq(x_max, q_max);
            let cal = series_cal_j(t);
            let lhs = cal.sub(
                &series_frak_h(t).substitute(Var::X, &Monomial::xyq(1, 0, 1)).map_err(fmt_err)?,
            );
            let rhs = cal
                .substitute(Var::X, &Monomial::new(-1, 1, 0, 1))
                .map_err(fmt_err)?
                .mul_monomial(&Monomial::x_pow(1))
                .map_err(fmt_err)?
                .neg();
            series_eq("twisted relation", &lhs, &rhs)
        }),
    ));
    checks
}

// ---------------------------------------------------------------------------
// walk-series.

fn walk_series_checks(scale: Scale) -> Vec<(String, CheckFn)> {
    let len_max = scale.x_max.unwrap_or(10);
    let area_max = scale.q_max.unwrap_or(12);
    let cases: [(&str, LoopRule, fn(Trunc) -> TruncatedSeries); 4] = [
        ("both loop labels everywhere", LoopRule::Everywhere, walk_series_o),
        ("one loop label at zero", LoopRule::StarredAtZero, walk_series_o_star),
        ("no loops", LoopRule::NoLoops, walk_series_o_bar),
        ("loops only at zero", LoopRule::OnlyAtZero, walk_series_o_bar_star),
    ];
    cases
        .into_iter()
        .map(|(label, rule, formula)| {
            let name = format!("closed walks, {label}");
            let f: CheckFn = Box::new(move || {
                let t = Trunc::xq(len_max, area_max);
                series_eq(label, &closed_walk_tally(rule, t), &formula(t))
            });
            (name, f)
        })
        .collect()
}
