//! The named q-series of the theory and the closed forms built from them.
//!
//! Seven basic series are defined by explicit summations whose n-th term
//! carries a factor `x^n` (or `x^{2n}`, or `y^n`), so under truncation only
//! finitely many terms contribute and every coefficient below the bound is
//! exact:
//!
//! - `series_J`: `J(x) = Σ_{n≥0} (−x)^n q^{n(n−1)/2} / ((q;q)_n (xq;q)_n)`
//! - `series_h`: `h(x) = Σ_{n≥0} (−x)^n q^{n(n−1)/2} (xq^n;q)_∞ / (q;q)_n`
//! - `series_j`: `j(x) = Σ_{n≥0} (−x)^n q^{n(n−1)/2} (xq^{n+1};q)_∞ / (q;q)_n`
//! - `series_cal_J`: `𝒥(x) = Σ_{n≥0} (−1)^⌈n/2⌉ x^n q^{n(n−1)/2} / (q²;q²)_⌊n/2⌋`
//! - `series_frak_h`: `𝔥(x) = Σ_{n≥0} (−1)^n x^{2n} q^{n(2n−1)} / (q²;q²)_n`
//! - `series_N`: `N(x,y,q) = Σ_{n≥0} (−y)^n q^{n(n+1)/2} / ((q;q)_n (xq;q)_n)`
//! - `series_Nhat`: `N̂(x,y,q) = Σ_{n≥1} (−y)^n q^{n(n+1)/2} / ((q;q)_{n−1} (xq;q)_n)`
//!
//! On top of these sit the counting series:
//!
//! - `theorem_S`: `S(x,q) = J(xq) / ((1−xq)·J(x))`, whose coefficient of
//!   `x^{n−1} q^ℓ` counts 321-avoiding permutations of `S_n` with `ℓ`
//!   inversions;
//! - `theorem_S_tilde`: `S̃(x,q) = −x·J′(x)/J(x) − Σ_{n,k≥1} x^n q^{nk}`,
//!   whose coefficient of `x^n q^ℓ` counts 321-avoiding affine permutations
//!   of size `n` with `ℓ` inversions;
//! - `theorem_involutions`: the analogous pair `(𝒮, 𝒮̃)` for involutions,
//!   `𝒮 = 𝒥(−xq)/𝒥(x)` and `𝒮̃ = −x·𝒥′(x)/𝒥(x)`;
//! - `walk_series_*`: logarithmic derivatives `−x·f′/f` counting closed
//!   walks by length (x) and area (q) on the half-line graphs.

use crate::series::{Monomial, Trunc, TruncatedSeries, Var};

/// `n(n−1)/2`, the exponent of `q` attached to the `n`-th summand.
fn binom2(n: u32) -> u32 {
    n * n.saturating_sub(1) / 2
}

/// Geometric series `1/(1 − m) = Σ_{k≥0} m^k` for a monomial `m` with
/// nonnegative exponents and at least one positive exponent (so the powers
/// leave the truncation bound and the sum is finite).
fn geometric(trunc: Trunc, m: &Monomial) -> TruncatedSeries {
    assert!(
        m.x >= 0 && m.y >= 0 && m.q >= 0 && m.total_degree() > 0,
        "geometric series requires a nonconstant monomial with nonnegative exponents"
    );
    let mut acc = TruncatedSeries::one(trunc);
    let mut k: i64 = 1;
    loop {
        let power = Monomial::new(
            if m.coeff_num < 0 && k % 2 == 1 { -1 } else { 1 },
            m.x * k,
            m.y * k,
            m.q * k,
        );
        if power.x > trunc.x_max as i64 || power.y > trunc.y_max as i64 || power.q > trunc.q_max as i64
        {
            break;
        }
        acc = acc.add(&TruncatedSeries::monomial(trunc, &power));
        k += 1;
    }
    acc
}

/// Shared summation engine for `J` and `N`-type series.
///
/// Computes `Σ_n sign(n) · base(n) / ((q;q)_{n-qq_lag} (xq;q)_n)` where the
/// two inverse Pochhammer factors are maintained incrementally: at step `n`
/// the running product is multiplied by the geometric series of the new
/// factor's argument. `start` is the first summation index.
struct PochQuotientSum<'f> {
    trunc: Trunc,
    start: u32,
    /// Numerator monomial of the n-th term (sign folded into the coefficient).
    term: &'f dyn Fn(u32) -> Monomial,
    /// Whether the `(q;q)` factor index lags one behind `n` (used by `N̂`,
    /// whose denominator is `(q;q)_{n−1}`).
    qq_lags: bool,
}

impl PochQuotientSum<'_> {
    fn eval(&self) -> TruncatedSeries {
        let trunc = self.trunc;
        let mut acc = TruncatedSeries::zero(trunc);
        // Inverses of (q;q)_k and (xq;q)_k, grown incrementally.
        let mut inv_qq = TruncatedSeries::one(trunc);
        let mut inv_xq = TruncatedSeries::one(trunc);
        let mut qq_index: u32 = 0;
        let mut xq_index: u32 = 0;
        let mut n = 0u32;
        loop {
            let term = (self.term)(n);
            // The n-th term's minimal degrees are exactly the numerator's
            // exponents (both denominators have constant term 1), so once the
            // numerator leaves the bound every later term does too: its x/y
            // exponent is nondecreasing in n and its q exponent is n(n±1)/2.
            if term.x > trunc.x_max as i64
                || term.y > trunc.y_max as i64
                || term.q > trunc.q_max as i64
            {
                break;
            }
            if n >= self.start {
                let qq_target = if self.qq_lags { n - 1 } else { n };
                while qq_index < qq_target {
                    qq_index += 1;
                    inv_qq = inv_qq.mul(&geometric(trunc, &Monomial::xyq(0, 0, qq_index as i64)));
                }
                while xq_index < n {
                    xq_index += 1;
                    inv_xq = inv_xq.mul(&geometric(trunc, &Monomial::xyq(1, 0, xq_index as i64)));
                }
                let numer = TruncatedSeries::monomial(trunc, &term);
                acc = acc.add(&numer.mul(&inv_qq).mul(&inv_xq));
            }
            n += 1;
        }
        acc
    }
}

/// `J(x) = Σ_{n≥0} (−x)^n q^{n(n−1)/2} / ((q;q)_n (xq;q)_n)`.
///
/// This is the series whose ratio `J(xq)/J(x)` generates the finite counting
/// polynomials; it is also the signed weight sum over pairs (partition into
/// distinct parts, partition into distinct parts) attached to trivial heaps.
pub fn series_big_j(trunc: Trunc) -> TruncatedSeries {
    let term = |n: u32| {
        Monomial::new(if n % 2 == 1 { -1 } else { 1 }, n as i64, 0, binom2(n) as i64)
    };
    PochQuotientSum { trunc, start: 0, term: &term, qq_lags: false }.eval()
}

/// `h(x) = Σ_{n≥0} (−x)^n q^{n(n−1)/2} (xq^n;q)_∞ / (q;q)_n`: the signed
/// generating series of trivial heaps of labeled monomers and dimers on the
/// half-line (label L-only at abscissa 0).
pub fn series_h(trunc: Trunc) -> TruncatedSeries {
    h_like(trunc, 0)
}

/// `j(x) = Σ_{n≥0} (−x)^n q^{n(n−1)/2} (xq^{n+1};q)_∞ / (q;q)_n`: as
/// `series_h` but with both labels allowed at abscissa 0. Satisfies
/// `j(x) = h(x) + x·h(xq)` and `J(x) = j(x)/(xq;q)_∞`.
pub fn series_j(trunc: Trunc) -> TruncatedSeries {
    h_like(trunc, 1)
}

/// Common form of `h` (offset 0) and `j` (offset 1).
fn h_like(trunc: Trunc, offset: u32) -> TruncatedSeries {
    let mut acc = TruncatedSeries::zero(trunc);
    let mut inv_qq = TruncatedSeries::one(trunc);
    let mut n = 0u32;
    loop {
        let c2 = binom2(n) as i64;
        if n as i64 > trunc.x_max as i64 || c2 > trunc.q_max as i64 {
            break;
        }
        if n > 0 {
            inv_qq = inv_qq.mul(&geometric(trunc, &Monomial::xyq(0, 0, n as i64)));
        }
        let sign = if n % 2 == 1 { -1 } else { 1 };
        let numer = TruncatedSeries::monomial(trunc, &Monomial::new(sign, n as i64, 0, c2));
        let poch = TruncatedSeries::pochhammer(
            trunc,
            &Monomial::xyq(1, 0, (n + offset) as i64),
            1,
            None,
        )
        .expect("argument has positive x-degree, the infinite product truncates");
        acc = acc.add(&numer.mul(&poch).mul(&inv_qq));
        n += 1;
    }
    acc
}

/// `𝒥(x) = Σ_{n≥0} (−1)^⌈n/2⌉ x^n q^{n(n−1)/2} / (q²;q²)_⌊n/2⌋`: the signed
/// generating series of trivial heaps of dimers with L-monomers allowed only
/// at abscissa 0. Its logarithmic derivative counts the involution classes.
pub fn series_cal_j(trunc: Trunc) -> TruncatedSeries {
    let mut acc = TruncatedSeries::zero(trunc);
    let mut inv_q2 = TruncatedSeries::one(trunc);
    let mut n = 0u32;
    loop {
        let c2 = binom2(n) as i64;
        if n as i64 > trunc.x_max as i64 || c2 > trunc.q_max as i64 {
            break;
        }
        if n >= 2 && n % 2 == 0 {
            // (q²;q²)_{n/2} gains the factor (1 − q^n) at even n.
            inv_q2 = inv_q2.mul(&geometric(trunc, &Monomial::xyq(0, 0, n as i64)));
        }
        let sign = if (n + 1) / 2 % 2 == 1 { -1 } else { 1 };
        let numer = TruncatedSeries::monomial(trunc, &Monomial::new(sign, n as i64, 0, c2));
        acc = acc.add(&numer.mul(&inv_q2));
        n += 1;
    }
    acc
}

/// `𝔥(x) = Σ_{n≥0} (−1)^n x^{2n} q^{n(2n−1)} / (q²;q²)_n`: the signed
/// generating series of trivial heaps of dimers only (no monomers). Note
/// `n(2n−1) = binom2(2n)`.
pub fn series_frak_h(trunc: Trunc) -> TruncatedSeries {
    let mut acc = TruncatedSeries::zero(trunc);
    let mut inv_q2 = TruncatedSeries::one(trunc);
    let mut n = 0u32;
    loop {
        let c2 = binom2(2 * n) as i64;
        if 2 * n as i64 > trunc.x_max as i64 || c2 > trunc.q_max as i64 {
            break;
        }
        if n > 0 {
            inv_q2 = inv_q2.mul(&geometric(trunc, &Monomial::xyq(0, 0, 2 * n as i64)));
        }
        let sign = if n % 2 == 1 { -1 } else { 1 };
        let numer = TruncatedSeries::monomial(trunc, &Monomial::new(sign, 2 * n as i64, 0, c2));
        acc = acc.add(&numer.mul(&inv_q2));
        n += 1;
    }
    acc
}

/// `N(x,y,q) = Σ_{n≥0} (−y)^n q^{n(n+1)/2} / ((q;q)_n (xq;q)_n)`: the signed
/// trivial-heap sum for segments weighted `v([a,b]) = x^{b−a} y q^b`, the
/// denominator of every polyomino series. `N(x, x/q, q) = J(x)`.
pub fn series_big_n(trunc: Trunc) -> TruncatedSeries {
    let term = |n: u32| {
        Monomial::new(if n % 2 == 1 { -1 } else { 1 }, 0, n as i64, binom2(n + 1) as i64)
    };
    PochQuotientSum { trunc, start: 0, term: &term, qq_lags: false }.eval()
}

/// `N̂(x,y,q) = Σ_{n≥1} (−y)^n q^{n(n+1)/2} / ((q;q)_{n−1} (xq;q)_n)`: the
/// companion numerator sum, restricted to trivial heaps whose leftmost piece
/// starts at abscissa 1. `N̂(x, x/q, q) = −x·J(xq)/(1−xq)`.
pub fn series_big_n_hat(trunc: Trunc) -> TruncatedSeries {
    let term = |n: u32| {
        Monomial::new(if n % 2 == 1 { -1 } else { 1 }, 0, n as i64, binom2(n + 1) as i64)
    };
    PochQuotientSum { trunc, start: 1, term: &term, qq_lags: true }.eval()
}

/// `S(x,q) = (1/(1−xq)) · J(xq)/J(x)`. The coefficient of `x^{n−1}` is the
/// inversion-number generating polynomial of 321-avoiding permutations of
/// `S_n` (so the constant term is 1, the lone element of `S_1`).
pub fn theorem_s(trunc: Trunc) -> TruncatedSeries {
    let t = Trunc::xq(trunc.x_max, trunc.q_max);
    let j = series_big_j(t);
    // x ↦ xq only raises exponents, so no bound inflation is needed.
    let jxq = j
        .substitute(Var::X, &Monomial::xyq(1, 0, 1))
        .expect("raising substitution cannot produce negative exponents");
    let inv_one_minus_xq = geometric(t, &Monomial::xyq(1, 0, 1));
    inv_one_minus_xq
        .mul(&jxq)
        .mul(&j.recip().expect("J has constant term 1"))
        .truncated(trunc)
}

/// `S̃(x,q) = −x·J′(x)/J(x) − Σ_{n,k≥1} x^n q^{nk}`. The coefficient of
/// `x^n` is the inversion-number generating polynomial of 321-avoiding
/// affine permutations of size `n`.
pub fn theorem_s_tilde(trunc: Trunc) -> TruncatedSeries {
    let ratio = neg_x_dlog_xq(&series_big_j, trunc.x_max, trunc.q_max);
    let mut corr = TruncatedSeries::zero(Trunc::xq(trunc.x_max, trunc.q_max));
    for n in 1..=trunc.x_max {
        let mut k = 1u32;
        while n * k <= trunc.q_max {
            corr.add_term((n, 0, n * k), num::BigRational::from_integer(1.into()));
            k += 1;
        }
    }
    ratio.sub(&corr).truncated(trunc)
}

/// `(𝒮, 𝒮̃)` with `𝒮(x,q) = 𝒥(−xq)/𝒥(x)` and `𝒮̃(x,q) = −x·𝒥′(x)/𝒥(x)`:
/// the involution analogues of `theorem_s` / `theorem_s_tilde`. The
/// coefficient of `x^{n−1}` in `𝒮` (resp. `x^n` in `𝒮̃`) counts 321-avoiding
/// involutions of `S_n` (resp. affine involutions of size `n`) by inversions.
pub fn theorem_involutions(trunc: Trunc) -> (TruncatedSeries, TruncatedSeries) {
    let t = Trunc::xq(trunc.x_max, trunc.q_max);
    let cal_j = series_cal_j(t);
    let cal_j_negxq = cal_j
        .substitute(Var::X, &Monomial::new(-1, 1, 0, 1))
        .expect("raising substitution cannot produce negative exponents");
    let s = cal_j_negxq
        .mul(&cal_j.recip().expect("constant term 1"))
        .truncated(trunc);
    let s_tilde = neg_x_dlog_xq(&series_cal_j, trunc.x_max, trunc.q_max).truncated(trunc);
    (s, s_tilde)
}

/// `−x·f′(x)/f(x)` for a two-variable series constructor `f`, exact to
/// `(x_max, q_max)`.
///
/// The derivative loses the top x-coefficient, so `f` is built at
/// `x_max + 1`: then `f′` is exact to `x_max`, `x·f′` is exact to `x_max`
/// after re-truncation, and the quotient stays exact.
fn neg_x_dlog_xq(
    f: &dyn Fn(Trunc) -> TruncatedSeries,
    x_max: u32,
    q_max: u32,
) -> TruncatedSeries {
    let big = Trunc::xq(x_max + 1, q_max);
    let f_big = f(big);
    let x_fprime = f_big
        .derivative(Var::X)
        .mul_monomial(&Monomial::x_pow(1))
        .expect("multiplying by x cannot produce negative exponents");
    x_fprime
        .neg()
        .mul(&f_big.truncated(Trunc::xq(x_max, q_max)).recip().expect("constant term 1"))
        .truncated(Trunc::xq(x_max, q_max))
}

/// Walk-counting series on the half-line graph with both loop labels at
/// every positive vertex and both labels at 0 as well: `O(x,q) = −x·h′/h`.
/// Coefficient of `x^ℓ q^a` = closed walks of length `ℓ` and area `a`.
pub fn walk_series_o(trunc: Trunc) -> TruncatedSeries {
    neg_x_dlog_xq(&series_h, trunc.x_max, trunc.q_max).truncated(trunc)
}

/// As `walk_series_o` but with only the L loop at vertex 0 (the starred
/// model): `O*(x,q) = −x·j′/j`.
pub fn walk_series_o_star(trunc: Trunc) -> TruncatedSeries {
    neg_x_dlog_xq(&series_j, trunc.x_max, trunc.q_max).truncated(trunc)
}

/// Loop-free walk model: `Ō(x,q) = −x·𝔥′/𝔥` counts closed walks using no
/// loops at all (every step moves).
pub fn walk_series_o_bar(trunc: Trunc) -> TruncatedSeries {
    neg_x_dlog_xq(&series_frak_h, trunc.x_max, trunc.q_max).truncated(trunc)
}

/// Loops-only-at-zero walk model: `Ō*(x,q) = −x·𝒥′/𝒥`.
pub fn walk_series_o_bar_star(trunc: Trunc) -> TruncatedSeries {
    neg_x_dlog_xq(&series_cal_j, trunc.x_max, trunc.q_max).truncated(trunc)
}

/// `PPP(x,y,q) = −y·∂_y N/N`: generating function of periodic parallelogram
/// polyominoes by height (x), width (y), area (q).
pub fn ppp_series(trunc: Trunc) -> TruncatedSeries {
    let big = Trunc::new(trunc.x_max, trunc.y_max + 1, trunc.q_max);
    let n = series_big_n(big);
    let y_dn = n
        .derivative(Var::Y)
        .mul_monomial(&Monomial::xyq(0, 1, 0))
        .expect("multiplying by y cannot produce negative exponents");
    y_dn.neg()
        .mul(&n.truncated(trunc).recip().expect("constant term 1"))
        .truncated(trunc)
}

/// `PP(x,y,q) = −x·N̂/N`: generating function of (non-periodic) parallelogram
/// polyominoes, equivalently of semi-pyramids of segments (maximal piece
/// starting at abscissa 1).
pub fn pp_series(trunc: Trunc) -> TruncatedSeries {
    let n = series_big_n(trunc);
    let nhat = series_big_n_hat(trunc);
    nhat.mul_monomial(&Monomial::x_pow(1))
        .expect("multiplying by x cannot produce negative exponents")
        .neg()
        .mul(&n.recip().expect("constant term 1"))
        .truncated(trunc)
}

/// `−x·∂_x N/N`: the cell-marked polyomino series. Coefficientwise it equals
/// the sum over heaps in the in-H̃ class of `ℓ(M)·v(H)` where `M` is the
/// rightmost maximal segment (one mark per unit of length of `M`).
pub fn marked_ppp_series(trunc: Trunc) -> TruncatedSeries {
    let big = Trunc::new(trunc.x_max + 1, trunc.y_max, trunc.q_max);
    let n = series_big_n(big);
    let x_dn = n
        .derivative(Var::X)
        .mul_monomial(&Monomial::x_pow(1))
        .expect("multiplying by x cannot produce negative exponents");
    x_dn.neg()
        .mul(&n.truncated(trunc).recip().expect("constant term 1"))
        .truncated(trunc)
}

/// `−(x·∂_x + y·∂_y) N/N`: the point-marked polyomino series, in which each
/// heap is counted `ℓ(M)+1` times (marks sit on the `ℓ(M)+1` points of the
/// rightmost maximal segment). Equals `marked_ppp_series + ppp_series`.
pub fn point_marked_ppp_series(trunc: Trunc) -> TruncatedSeries {
    marked_ppp_series(trunc).add(&ppp_series(trunc))
}

/// Named-series lookup for the CLI: every public series constructor under
/// its conventional short name.
pub fn by_name(name: &str, trunc: Trunc) -> Option<TruncatedSeries> {
    Some(match name {
        "J" => series_big_j(trunc),
        "calJ" => series_cal_j(trunc),
        "h" => series_h(trunc),
        "j" => series_j(trunc),
        "frakh" => series_frak_h(trunc),
        "N" => series_big_n(trunc),
        "Nhat" => series_big_n_hat(trunc),
        "S" => theorem_s(trunc),
        "Stilde" => theorem_s_tilde(trunc),
        "invS" => theorem_involutions(trunc).0,
        "invStilde" => theorem_involutions(trunc).1,
        "O" => walk_series_o(trunc),
        "Ostar" => walk_series_o_star(trunc),
        "Obar" => walk_series_o_bar(trunc),
        "Obarstar" => walk_series_o_bar_star(trunc),
        "PPP" => ppp_series(trunc),
        "PP" => pp_series(trunc),
        _ => return None,
    })
}

/// All names accepted by [`by_name`], in the order they are documented.
pub const SERIES_NAMES: &[&str] = &[
    "J", "calJ", "h", "j", "frakh", "N", "Nhat", "S", "Stilde", "invS", "invStilde", "O", "Ostar",
    "Obar", "Obarstar", "PPP", "PP",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Trunc;

    fn xq(x: u32, q: u32) -> Trunc {
        Trunc::xq(x, q)
    }

    #[test]
    fn j_low_order_terms() {
        // J = 1 − x/((1−q)(1−xq)) + O(x²): expanding the n=1 term to first
        // order gives coefficient −1 on x and on xq.
        let j = series_big_j(xq(2, 3));
        assert_eq!(j.coeff_i64((0, 0, 0)), Some(1));
        assert_eq!(j.coeff_i64((1, 0, 0)), Some(-1));
        assert_eq!(j.coeff_i64((1, 0, 1)), Some(-1), "x q term of -x/((1-q)(1-xq))");
    }

    #[test]
    fn h_and_j_constant_terms() {
        assert_eq!(series_h(xq(3, 3)).coeff_i64((0, 0, 0)), Some(1));
        assert_eq!(series_j(xq(3, 3)).coeff_i64((0, 0, 0)), Some(1));
        assert_eq!(series_cal_j(xq(3, 3)).coeff_i64((0, 0, 0)), Some(1));
        assert_eq!(series_frak_h(xq(3, 3)).coeff_i64((0, 0, 0)), Some(1));
    }

    #[test]
    fn frak_h_x2_q1() {
        // The n=1 term of 𝔥 is −x²q/(1−q²); its lowest term is −x²q.
        let fh = series_frak_h(xq(4, 4));
        assert_eq!(fh.coeff_i64((2, 0, 1)), Some(-1));
    }

    #[test]
    fn n_and_nhat_constant_terms() {
        let t = Trunc::new(3, 3, 6);
        assert_eq!(series_big_n(t).coeff_i64((0, 0, 0)), Some(1));
        assert!(series_big_n_hat(t).coeff((0, 0, 0)).numer().bits() == 0);
    }

    #[test]
    fn identity_j_equals_h_plus_x_h_xq() {
        // j(x) = h(x) + x·h(xq).
        let t = xq(6, 10);
        let j = series_j(t);
        let h = series_h(t);
        let h_xq = h
            .substitute(Var::X, &Monomial::xyq(1, 0, 1))
            .unwrap()
            .mul_monomial(&Monomial::x_pow(1))
            .unwrap();
        assert_eq!(j, h.add(&h_xq), "j(x) = h(x) + x h(xq)");
    }

    #[test]
    fn identity_big_j_times_poch_equals_j() {
        // J(x)·(xq;q)_∞ = j(x).
        let t = xq(5, 9);
        let lhs = series_big_j(t).mul(
            &TruncatedSeries::pochhammer(t, &Monomial::xyq(1, 0, 1), 1, None).unwrap(),
        );
        assert_eq!(lhs, series_j(t), "J(x)(xq;q)_inf = j(x)");
    }

    #[test]
    fn identity_cal_j_from_frak_h() {
        // 𝒥(x) = 𝔥(x) − x·𝔥(xq).
        let t = xq(6, 10);
        let frak = series_frak_h(t);
        let frak_xq = frak
            .substitute(Var::X, &Monomial::xyq(1, 0, 1))
            .unwrap()
            .mul_monomial(&Monomial::x_pow(1))
            .unwrap();
        assert_eq!(series_cal_j(t), frak.sub(&frak_xq), "calJ = frakh(x) - x frakh(xq)");
    }

    #[test]
    fn identity_cal_j_twisted() {
        // 𝒥(x) − 𝔥(xq) = −x·𝒥(−xq).
        let t = xq(6, 10);
        let cal = series_cal_j(t);
        let frak_xq = series_frak_h(t).substitute(Var::X, &Monomial::xyq(1, 0, 1)).unwrap();
        let cal_negxq = cal
            .substitute(Var::X, &Monomial::new(-1, 1, 0, 1))
            .unwrap()
            .mul_monomial(&Monomial::x_pow(1))
            .unwrap()
            .neg();
        assert_eq!(cal.sub(&frak_xq), cal_negxq, "calJ(x) - frakh(xq) = -x calJ(-xq)");
    }

    #[test]
    fn identity_n_specializes_to_j() {
        // N(x, x/q, q) = J(x). The substitution y ↦ x·q^{−1} lowers q-degrees
        // and moves y-degrees onto x, so N is built at inflated bounds
        // (X + Y_room, Y_room, Q + Y_room) before substituting.
        let x_max = 5u32;
        let q_max = 9u32;
        let room = x_max; // y-degree never needs to exceed the final x bound
        let big = Trunc::new(x_max + room, room, q_max + room);
        let n = series_big_n(big);
        let nsub = n
            .substitute(Var::Y, &Monomial::xyq(1, 0, -1))
            .unwrap()
            .truncated(Trunc::xq(x_max, q_max));
        assert_eq!(nsub, series_big_j(Trunc::xq(x_max, q_max)), "N(x, x/q, q) = J(x)");
    }

    #[test]
    fn identity_nhat_specializes() {
        // N̂(x, x/q, q) = −x·J(xq)/(1−xq).
        let x_max = 5u32;
        let q_max = 9u32;
        let room = x_max;
        let big = Trunc::new(x_max + room, room, q_max + room);
        let t = Trunc::xq(x_max, q_max);
        let lhs = series_big_n_hat(big)
            .substitute(Var::Y, &Monomial::xyq(1, 0, -1))
            .unwrap()
            .truncated(t);
        let j_xq = series_big_j(t).substitute(Var::X, &Monomial::xyq(1, 0, 1)).unwrap();
        let rhs = j_xq
            .mul(&geometric(t, &Monomial::xyq(1, 0, 1)))
            .mul_monomial(&Monomial::x_pow(1))
            .unwrap()
            .neg();
        assert_eq!(lhs, rhs, "Nhat(x, x/q, q) = -x J(xq)/(1-xq)");
    }

    #[test]
    fn s_is_pp_specialized() {
        // PP(x, x/q, q) = x²·S(x,q): on the diagonal y = x/q, the x-exponent
        // of a polyomino term becomes ℓ(H)+|H|+1 = half-perimeter, and PPs of
        // half-perimeter n+1 correspond to the 321-avoiding permutations
        // counted by [x^{n-1}]S — two degrees apart in total.
        let x_max = 4u32;
        let q_max = 8u32;
        let room = x_max;
        let big = Trunc::new(x_max + room, room, q_max + room);
        let t = Trunc::xq(x_max, q_max);
        let pp = pp_series(big)
            .substitute(Var::Y, &Monomial::xyq(1, 0, -1))
            .unwrap()
            .truncated(t);
        let x2_s = theorem_s(t).mul_monomial(&Monomial::x_pow(2)).unwrap();
        assert_eq!(pp, x2_s, "PP(x, x/q, q) = x^2 S(x,q)");
    }

    #[test]
    fn s_constant_and_first_coefficients() {
        let s = theorem_s(xq(3, 6));
        assert_eq!(s.coeff_i64((0, 0, 0)), Some(1), "S_1 has one element");
        // S_2 = {12, 21}: lengths 0 and 1.
        assert_eq!(s.coeff_i64((1, 0, 0)), Some(1));
        assert_eq!(s.coeff_i64((1, 0, 1)), Some(1));
        assert_eq!(s.coeff_i64((1, 0, 2)), Some(0));
        // S_3 minus the 321 pattern: lengths 0,1,1,2,2.
        assert_eq!(s.coeff_i64((2, 0, 0)), Some(1));
        assert_eq!(s.coeff_i64((2, 0, 1)), Some(2));
        assert_eq!(s.coeff_i64((2, 0, 2)), Some(2));
        assert_eq!(s.coeff_i64((2, 0, 3)), Some(0));
    }

    #[test]
    fn s_tilde_size_one_row() {
        // The affine symmetric group of size 1 is trivial: S̃_1(q) = 1.
        let st = theorem_s_tilde(xq(2, 8));
        assert_eq!(st.coeff_i64((1, 0, 0)), Some(1));
        for l in 1..=8u32 {
            assert_eq!(st.coeff_i64((1, 0, l)), Some(0), "no length-{} element of size 1", l);
        }
    }

    #[test]
    fn s_tilde_size_two_row() {
        // Size 2: the infinite dihedral group, every element 321-avoiding;
        // one element of each positive length times two directions.
        let st = theorem_s_tilde(xq(2, 8));
        assert_eq!(st.coeff_i64((2, 0, 0)), Some(1));
        for l in 1..=8u32 {
            assert_eq!(st.coeff_i64((2, 0, l)), Some(2), "two elements of length {}", l);
        }
    }

    #[test]
    fn involution_s_row_two() {
        // 321-avoiding involutions of S_3 by length: e, s_1, s_2, and
        // s_1s_2s_1 = 321 is excluded → 1 + 2q.
        let (s, _) = theorem_involutions(xq(3, 6));
        assert_eq!(s.coeff_i64((2, 0, 0)), Some(1));
        assert_eq!(s.coeff_i64((2, 0, 1)), Some(2));
        assert_eq!(s.coeff_i64((2, 0, 2)), Some(0));
        assert_eq!(s.coeff_i64((2, 0, 3)), Some(0), "the long element is not 321-avoiding");
    }

    #[test]
    fn walk_series_low_orders() {
        // Length-1 closed walks are single loops. In the starred model
        // (L-only at 0): one loop at 0, two loops at each i ≥ 1.
        let o_star = walk_series_o_star(xq(3, 4));
        assert_eq!(o_star.coeff_i64((0, 0, 0)), Some(0), "no closed walks of length 0 counted");
        assert_eq!(o_star.coeff_i64((1, 0, 0)), Some(1));
        for a in 1..=4u32 {
            assert_eq!(o_star.coeff_i64((1, 0, a)), Some(2), "two loops at vertex {}", a);
        }
        // In the unstarred model vertex 0 also has an R loop.
        let o = walk_series_o(xq(3, 4));
        assert_eq!(o.coeff_i64((1, 0, 0)), Some(2));
        // Loop-free walks need even length; length 1 has none.
        let o_bar = walk_series_o_bar(xq(3, 4));
        for a in 0..=4u32 {
            assert_eq!(o_bar.coeff_i64((1, 0, a)), Some(0));
        }
    }

    #[test]
    fn truncation_stability() {
        // Enlarging the bound never changes coefficients already retained.
        let small = series_big_j(xq(3, 5));
        let large = series_big_j(xq(6, 11));
        for (&e, c) in small.terms() {
            assert_eq!(&large.coeff(e), c, "coefficient at {:?} must be stable", e);
        }
        assert_eq!(large.truncated(xq(3, 5)), small);
        let small_n = series_big_n(Trunc::new(2, 2, 4));
        let large_n = series_big_n(Trunc::new(4, 4, 9));
        assert_eq!(large_n.truncated(Trunc::new(2, 2, 4)), small_n);
    }

    #[test]
    fn point_marked_is_cell_marked_plus_unmarked() {
        let t = Trunc::new(3, 3, 6);
        let pm = point_marked_ppp_series(t);
        assert_eq!(pm, marked_ppp_series(t).add(&ppp_series(t)));
    }

    #[test]
    fn by_name_covers_documented_names() {
        let t = Trunc::new(2, 2, 3);
        for name in SERIES_NAMES {
            assert!(by_name(name, t).is_some(), "{} must resolve", name);
        }
        assert!(by_name("bogus", t).is_none());
    }
}
