//! Truncated formal power series in the variables `x`, `y`, `q` with exact
//! rational coefficients.
//!
//! A [`TruncatedSeries`] stores finitely many monomials `c · x^a y^b q^d`
//! keyed by the exponent triple `(a, b, d)`, together with a per-variable
//! truncation bound [`Trunc`]. Every operation keeps only exponents that are
//! componentwise within the bound, so a series is always an exact
//! representative of some formal power series modulo
//! `(x^{X+1}, y^{Y+1}, q^{Q+1})`.
//!
//! Design rules observed throughout:
//!
//! - coefficients are exact `BigRational`s — no floating point anywhere;
//! - the zero series has an empty term map (no explicit zero coefficients are
//!   ever stored), which makes structural equality coincide with series
//!   equality at equal truncation;
//! - binary operations require nothing of the two bounds and use the
//!   componentwise minimum for the result.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exponent triple `(x, y, q)` of a monomial. Lexicographic `Ord` on the
/// triple gives the canonical term order used for serialization.
pub type Exponents = (u32, u32, u32);

/// The three formal variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Var {
    X,
    Y,
    Q,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X => write!(f, "x"),
            Var::Y => write!(f, "y"),
            Var::Q => write!(f, "q"),
        }
    }
}

/// Per-variable truncation bound: exponents `dx ≤ x_max`, `dy ≤ y_max`,
/// `dq ≤ q_max` are retained, everything above is discarded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trunc {
    pub x_max: u32,
    pub y_max: u32,
    pub q_max: u32,
}

impl Trunc {
    pub fn new(x_max: u32, y_max: u32, q_max: u32) -> Self {
        Trunc { x_max, y_max, q_max }
    }

    /// Bound for `x`/`q` work that never touches `y`.
    pub fn xq(x_max: u32, q_max: u32) -> Self {
        Trunc { x_max, y_max: 0, q_max }
    }

    /// Componentwise minimum, the bound of any binary operation.
    pub fn min(self, other: Trunc) -> Trunc {
        Trunc {
            x_max: self.x_max.min(other.x_max),
            y_max: self.y_max.min(other.y_max),
            q_max: self.q_max.min(other.q_max),
        }
    }

    /// Does the exponent triple survive this bound?
    pub fn admits(self, e: Exponents) -> bool {
        e.0 <= self.x_max && e.1 <= self.y_max && e.2 <= self.q_max
    }
}

/// A signed monomial `coeff · x^a y^b q^d` with integer exponents, used as the
/// target of substitutions and as the value of a piece weight. Exponents are
/// signed so substitution targets like `x·q^{-1}` are expressible; a monomial
/// used as a weight must have nonnegative exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub coeff_num: i64,
    pub x: i64,
    pub y: i64,
    pub q: i64,
}

impl Monomial {
    pub fn new(coeff_num: i64, x: i64, y: i64, q: i64) -> Self {
        Monomial { coeff_num, x, y, q }
    }

    /// `x^a`.
    pub fn x_pow(a: i64) -> Self {
        Monomial::new(1, a, 0, 0)
    }

    /// `x^a y^b q^d` with unit coefficient.
    pub fn xyq(a: i64, b: i64, d: i64) -> Self {
        Monomial::new(1, a, b, d)
    }

    /// Total degree in all variables (for positivity checks on weights).
    pub fn total_degree(&self) -> i64 {
        self.x + self.y + self.q
    }
}

/// Errors raised by series operations.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SeriesError {
    /// Reciprocal of a series whose constant term is not 1.
    #[error("NonUnitConstantTerm: reciprocal requires constant term 1, found {found}")]
    NonUnitConstantTerm { found: String },
    /// A substitution produced a negative exponent on a surviving term.
    #[error("NegativeExponent: substitution sends x^{x} y^{y} q^{q} below zero in {var}")]
    NegativeExponent { var: Var, x: i64, y: i64, q: i64 },
    /// An infinite Pochhammer product whose factors never leave the bound.
    #[error("DivergentInfiniteProduct: (c; q)_∞ with constant argument c ≠ 0 does not truncate")]
    DivergentInfiniteProduct,
}

/// A truncated formal power series: sparse map from exponent triples to
/// nonzero exact rational coefficients, plus the truncation bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub trunc: Trunc,
    terms: BTreeMap<Exponents, BigRational>,
}

impl TruncatedSeries {
    /// The zero series at the given bound.
    pub fn zero(trunc: Trunc) -> Self {
        TruncatedSeries { trunc, terms: BTreeMap::new() }
    }

    /// The constant series 1.
    pub fn one(trunc: Trunc) -> Self {
        let mut s = Self::zero(trunc);
        s.add_term((0, 0, 0), BigRational::one());
        s
    }

    /// The series consisting of a single monomial (dropped if outside the
    /// bound or if an exponent is negative — callers that must reject
    /// negative exponents do so before constructing).
    pub fn monomial(trunc: Trunc, m: &Monomial) -> Self {
        let mut s = Self::zero(trunc);
        if m.x >= 0 && m.y >= 0 && m.q >= 0 {
            let e = (m.x as u32, m.y as u32, m.q as u32);
            if trunc.admits(e) {
                s.add_term(e, BigRational::from(BigInt::from(m.coeff_num)));
            }
        }
        s
    }

    /// Single variable to the first power.
    pub fn var(trunc: Trunc, v: Var) -> Self {
        let m = match v {
            Var::X => Monomial::xyq(1, 0, 0),
            Var::Y => Monomial::xyq(0, 1, 0),
            Var::Q => Monomial::xyq(0, 0, 1),
        };
        Self::monomial(trunc, &m)
    }

    /// Iterate terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    /// Number of stored (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `x^a y^b q^d` (zero if absent).
    pub fn coeff(&self, e: Exponents) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficient as an `i64`, if integral and in range. Convenient for
    /// comparing against enumeration counts.
    pub fn coeff_i64(&self, e: Exponents) -> Option<i64> {
        let c = self.coeff(e);
        if !c.denom().is_one() {
            return None;
        }
        i64::try_from(c.numer().clone()).ok()
    }

    /// Add `c` to the coefficient at `e`, dropping the entry if the result is
    /// zero and the whole term if `e` is outside the bound.
    pub fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() || !self.trunc.admits(e) {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Re-truncate to a (usually smaller) bound.
    pub fn truncated(&self, trunc: Trunc) -> Self {
        let mut s = Self::zero(trunc);
        for (&e, c) in &self.terms {
            s.add_term(e, c.clone());
        }
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = Self::zero(self.trunc.min(other.trunc));
        for (&e, c) in &self.terms {
            s.add_term(e, c.clone());
        }
        for (&e, c) in &other.terms {
            s.add_term(e, c.clone());
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut s = Self::zero(self.trunc);
        for (&e, c) in &self.terms {
            s.add_term(e, -c.clone());
        }
        s
    }

    pub fn scalar_mul_int(&self, k: i64) -> Self {
        let kk = BigRational::from(BigInt::from(k));
        let mut s = Self::zero(self.trunc);
        for (&e, c) in &self.terms {
            s.add_term(e, c * &kk);
        }
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let mut s = Self::zero(trunc);
        for (&(ax, ay, aq), ca) in &self.terms {
            if ax > trunc.x_max || ay > trunc.y_max || aq > trunc.q_max {
                continue;
            }
            for (&(bx, by, bq), cb) in &other.terms {
                let e = (ax + bx, ay + by, aq + bq);
                if !trunc.admits(e) {
                    continue;
                }
                s.add_term(e, ca * cb);
            }
        }
        s
    }

    /// Multiply by a single signed monomial with integer exponents. Terms
    /// whose shifted exponents exceed the bound are discarded; terms whose
    /// shifted exponents go negative raise `NegativeExponent`.
    pub fn mul_monomial(&self, m: &Monomial) -> Result<Self, SeriesError> {
        let mut s = Self::zero(self.trunc);
        let coeff = BigRational::from(BigInt::from(m.coeff_num));
        for (&(ax, ay, aq), c) in &self.terms {
            let (nx, ny, nq) = (ax as i64 + m.x, ay as i64 + m.y, aq as i64 + m.q);
            for (val, var) in [(nx, Var::X), (ny, Var::Y), (nq, Var::Q)] {
                if val < 0 {
                    return Err(SeriesError::NegativeExponent { var, x: nx, y: ny, q: nq });
                }
            }
            s.add_term((nx as u32, ny as u32, nq as u32), c * &coeff);
        }
        Ok(s)
    }

    /// Reciprocal. Requires constant term exactly 1; computed as the
    /// geometric series `1/(1 - r) = Σ r^k` where `r = 1 - self` has zero
    /// constant term, so `r^k` has total degree ≥ k and the sum is finite
    /// within any bound.
    pub fn recip(&self) -> Result<Self, SeriesError> {
        let c0 = self.coeff((0, 0, 0));
        if !c0.is_one() {
            return Err(SeriesError::NonUnitConstantTerm { found: format!("{}", c0) });
        }
        let trunc = self.trunc;
        let r = Self::one(trunc).sub(self);
        let mut acc = Self::one(trunc);
        let mut pow = Self::one(trunc);
        let k_max = trunc.x_max + trunc.y_max + trunc.q_max;
        for _ in 0..k_max {
            pow = pow.mul(&r);
            if pow.is_zero() {
                break;
            }
            acc = acc.add(&pow);
        }
        Ok(acc)
    }

    /// `self / other` (other must have constant term 1).
    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&other.recip()?))
    }

    /// Formal partial derivative with respect to `v`. The bound in `v` drops
    /// by one (the top coefficient of the input cannot produce an exact top
    /// coefficient of the derivative).
    pub fn derivative(&self, v: Var) -> Self {
        let trunc = match v {
            Var::X => Trunc { x_max: self.trunc.x_max.saturating_sub(1), ..self.trunc },
            Var::Y => Trunc { y_max: self.trunc.y_max.saturating_sub(1), ..self.trunc },
            Var::Q => Trunc { q_max: self.trunc.q_max.saturating_sub(1), ..self.trunc },
        };
        let mut s = Self::zero(trunc);
        for (&(ax, ay, aq), c) in &self.terms {
            let (k, e) = match v {
                Var::X if ax > 0 => (ax, (ax - 1, ay, aq)),
                Var::Y if ay > 0 => (ay, (ax, ay - 1, aq)),
                Var::Q if aq > 0 => (aq, (ax, ay, aq - 1)),
                _ => continue,
            };
            s.add_term(e, c * BigRational::from(BigInt::from(k)));
        }
        s
    }

    /// Substitute `v ↦ target` where `target` is a signed monomial (e.g.
    /// `x ↦ x·q` for `J(xq)`, `x ↦ -x·q`, or `y ↦ x·q^{-1}`). Terms whose
    /// rewritten exponents exceed the bound are discarded (truncation); terms
    /// whose rewritten exponents become negative raise `NegativeExponent`.
    ///
    /// Truncation caution: a term discarded by the *input's* bound can never
    /// come back, so when a substitution lowers exponents (such as
    /// `y ↦ x·q^{-1}`) the input must be computed at an inflated bound. The
    /// callers in `qformulas` document their inflation choices.
    pub fn substitute(&self, v: Var, target: &Monomial) -> Result<Self, SeriesError> {
        let mut s = Self::zero(self.trunc);
        for (&(ax, ay, aq), c) in &self.terms {
            let k = match v {
                Var::X => ax as i64,
                Var::Y => ay as i64,
                Var::Q => aq as i64,
            };
            let (mut nx, mut ny, mut nq) = (ax as i64, ay as i64, aq as i64);
            match v {
                Var::X => nx = 0,
                Var::Y => ny = 0,
                Var::Q => nq = 0,
            }
            nx += k * target.x;
            ny += k * target.y;
            nq += k * target.q;
            for (val, var) in [(nx, Var::X), (ny, Var::Y), (nq, Var::Q)] {
                if val < 0 {
                    return Err(SeriesError::NegativeExponent { var, x: nx, y: ny, q: nq });
                }
            }
            let sign = if target.coeff_num < 0 && k % 2 == 1 { -1 } else { 1 };
            let mag = target.coeff_num.abs();
            debug_assert!(mag == 1, "substitution targets use coefficient ±1");
            let _ = mag;
            s.add_term(
                (nx as u32, ny as u32, nq as u32),
                c * BigRational::from(BigInt::from(sign)),
            );
        }
        Ok(s)
    }

    /// q-Pochhammer product `(arg; q^step)_n = Π_{k=0}^{n-1} (1 − arg·q^{k·step})`
    /// with `n = None` meaning the infinite product. The infinite product is
    /// cut off at the first factor that is ≡ 1 modulo the bound, which exists
    /// unless `arg` is a nonzero constant (then `DivergentInfiniteProduct`).
    pub fn pochhammer(
        trunc: Trunc,
        arg: &Monomial,
        step: u32,
        n: Option<u32>,
    ) -> Result<Self, SeriesError> {
        if let None = n {
            if arg.x == 0 && arg.y == 0 && arg.q == 0 && arg.coeff_num != 0 {
                return Err(SeriesError::DivergentInfiniteProduct);
            }
        }
        let mut acc = Self::one(trunc);
        let mut k: u32 = 0;
        loop {
            if let Some(nn) = n {
                if k >= nn {
                    break;
                }
            }
            let factor_arg =
                Monomial::new(arg.coeff_num, arg.x, arg.y, arg.q + (k as i64) * (step as i64));
            // A factor is ≡ 1 when its monomial is invisible under the bound.
            let vanished = factor_arg.x > trunc.x_max as i64
                || factor_arg.y > trunc.y_max as i64
                || factor_arg.q > trunc.q_max as i64
                || factor_arg.coeff_num == 0;
            if vanished {
                if n.is_none() {
                    break;
                }
                k += 1;
                continue;
            }
            let factor = Self::one(trunc).sub(&Self::monomial(trunc, &factor_arg));
            acc = acc.mul(&factor);
            k += 1;
        }
        Ok(acc)
    }
}

/// Serialized term: exponents plus the exact rational coefficient split into
/// numerator and denominator strings (strings keep arbitrary-precision values
/// exact and byte-stable).
#[derive(Serialize, Deserialize)]
struct TermRepr {
    x: u32,
    y: u32,
    q: u32,
    num: String,
    den: String,
}

impl Serialize for TruncatedSeries {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("TruncatedSeries", 2)?;
        st.serialize_field("trunc", &[self.trunc.x_max, self.trunc.y_max, self.trunc.q_max])?;
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(&(x, y, q), c)| TermRepr {
                x,
                y,
                q,
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect();
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            trunc: [u32; 3],
            terms: Vec<TermRepr>,
        }
        let repr = Repr::deserialize(de)?;
        let mut s = TruncatedSeries::zero(Trunc::new(repr.trunc[0], repr.trunc[1], repr.trunc[2]));
        for t in repr.terms {
            let num: BigInt = t.num.parse().map_err(serde::de::Error::custom)?;
            let den: BigInt = t.den.parse().map_err(serde::de::Error::custom)?;
            if den.is_zero() {
                return Err(serde::de::Error::custom("zero denominator"));
            }
            s.add_term((t.x, t.y, t.q), BigRational::new(num, den));
        }
        Ok(s)
    }
}

impl fmt::Display for TruncatedSeries {
    /// Human-readable form, terms in lexicographic exponent order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b, d), c) in &self.terms {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut vars = String::new();
            for (sym, e) in [("x", a), ("y", b), ("q", d)] {
                if e == 1 {
                    vars.push_str(sym);
                } else if e > 1 {
                    vars.push_str(&format!("{}^{}", sym, e));
                }
            }
            if vars.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", vars)?;
            } else {
                write!(f, "{}*{}", mag, vars)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(x: u32, y: u32, q: u32) -> Trunc {
        Trunc::new(x, y, q)
    }

    #[test]
    fn zero_is_empty_map() {
        let s = TruncatedSeries::zero(t(3, 0, 3));
        assert_eq!(s.term_count(), 0);
        let also_zero = TruncatedSeries::var(t(3, 0, 3), Var::X)
            .sub(&TruncatedSeries::var(t(3, 0, 3), Var::X));
        assert_eq!(s, also_zero, "cancellation must normalize to the empty map");
    }

    #[test]
    fn mul_respects_truncation() {
        // (1 + x)^4 truncated at x^2: 1 + 4x + 6x^2.
        let one_plus_x =
            TruncatedSeries::one(t(2, 0, 0)).add(&TruncatedSeries::var(t(2, 0, 0), Var::X));
        let p2 = one_plus_x.mul(&one_plus_x);
        let p4 = p2.mul(&p2);
        assert_eq!(p4.coeff_i64((0, 0, 0)), Some(1));
        assert_eq!(p4.coeff_i64((1, 0, 0)), Some(4));
        assert_eq!(p4.coeff_i64((2, 0, 0)), Some(6));
        assert_eq!(p4.term_count(), 3);
    }

    #[test]
    fn recip_geometric() {
        // 1/(1 - q) = 1 + q + q^2 + ... exactly up to the bound.
        let trunc = t(0, 0, 8);
        let denom = TruncatedSeries::one(trunc).sub(&TruncatedSeries::var(trunc, Var::Q));
        let inv = denom.recip().expect("constant term is 1");
        for d in 0..=8 {
            assert_eq!(inv.coeff_i64((0, 0, d)), Some(1), "coefficient of q^{}", d);
        }
        // Multiplying back gives 1.
        assert_eq!(denom.mul(&inv), TruncatedSeries::one(trunc));
    }

    #[test]
    fn recip_requires_unit_constant() {
        let trunc = t(2, 0, 2);
        let s = TruncatedSeries::var(trunc, Var::X);
        assert!(matches!(s.recip(), Err(SeriesError::NonUnitConstantTerm { .. })));
        let two = TruncatedSeries::one(trunc).scalar_mul_int(2);
        assert!(matches!(two.recip(), Err(SeriesError::NonUnitConstantTerm { .. })));
    }

    #[test]
    fn derivative_power_rule() {
        // d/dx (x^3 q) = 3 x^2 q, and the x-bound drops by one.
        let trunc = t(5, 0, 5);
        let s = TruncatedSeries::monomial(trunc, &Monomial::xyq(3, 0, 1));
        let d = s.derivative(Var::X);
        assert_eq!(d.trunc, t(4, 0, 5));
        assert_eq!(d.coeff_i64((2, 0, 1)), Some(3));
        assert_eq!(d.term_count(), 1);
    }

    #[test]
    fn substitute_x_to_xq() {
        // x^2 under x ↦ x·q becomes x^2 q^2.
        let trunc = t(4, 0, 4);
        let s = TruncatedSeries::monomial(trunc, &Monomial::x_pow(2));
        let sub = s.substitute(Var::X, &Monomial::xyq(1, 0, 1)).unwrap();
        assert_eq!(sub.coeff_i64((2, 0, 2)), Some(1));
        assert_eq!(sub.term_count(), 1);
    }

    #[test]
    fn substitute_x_to_minus_xq_signs() {
        // (x + x^2) under x ↦ -x·q becomes -x q + x^2 q^2.
        let trunc = t(4, 0, 4);
        let s = TruncatedSeries::monomial(trunc, &Monomial::x_pow(1))
            .add(&TruncatedSeries::monomial(trunc, &Monomial::x_pow(2)));
        let sub = s.substitute(Var::X, &Monomial::new(-1, 1, 0, 1)).unwrap();
        assert_eq!(sub.coeff_i64((1, 0, 1)), Some(-1));
        assert_eq!(sub.coeff_i64((2, 0, 2)), Some(1));
    }

    #[test]
    fn substitute_y_to_x_over_q() {
        // y·q under y ↦ x·q^{-1} becomes x; y alone errors (negative q).
        let trunc = t(4, 4, 4);
        let yq = TruncatedSeries::monomial(trunc, &Monomial::xyq(0, 1, 1));
        let ok = yq.substitute(Var::Y, &Monomial::xyq(1, 0, -1)).unwrap();
        assert_eq!(ok.coeff_i64((1, 0, 0)), Some(1));
        let y = TruncatedSeries::var(trunc, Var::Y);
        assert!(matches!(
            y.substitute(Var::Y, &Monomial::xyq(1, 0, -1)),
            Err(SeriesError::NegativeExponent { var: Var::Q, .. })
        ));
    }

    #[test]
    fn pochhammer_finite() {
        // (q; q)_2 = (1-q)(1-q^2) = 1 - q - q^2 + q^3.
        let trunc = t(0, 0, 5);
        let p = TruncatedSeries::pochhammer(trunc, &Monomial::xyq(0, 0, 1), 1, Some(2)).unwrap();
        assert_eq!(p.coeff_i64((0, 0, 0)), Some(1));
        assert_eq!(p.coeff_i64((0, 0, 1)), Some(-1));
        assert_eq!(p.coeff_i64((0, 0, 2)), Some(-1));
        assert_eq!(p.coeff_i64((0, 0, 3)), Some(1));
        assert_eq!(p.term_count(), 4);
    }

    #[test]
    fn pochhammer_infinite_euler() {
        // 1/(q; q)_∞ is the partition generating function: 1,1,2,3,5,7,11,...
        let trunc = t(0, 0, 10);
        let p = TruncatedSeries::pochhammer(trunc, &Monomial::xyq(0, 0, 1), 1, None).unwrap();
        let partitions = p.recip().unwrap();
        let expected = [1i64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (d, &want) in expected.iter().enumerate() {
            assert_eq!(
                partitions.coeff_i64((0, 0, d as u32)),
                Some(want),
                "partitions of {}",
                d
            );
        }
    }

    #[test]
    fn pochhammer_infinite_divergent() {
        let trunc = t(2, 0, 2);
        assert!(matches!(
            TruncatedSeries::pochhammer(trunc, &Monomial::new(1, 0, 0, 0), 1, None),
            Err(SeriesError::DivergentInfiniteProduct)
        ));
        // Zero constant argument is fine: the empty-looking product is 1.
        let p = TruncatedSeries::pochhammer(trunc, &Monomial::new(0, 0, 0, 0), 1, None).unwrap();
        assert_eq!(p, TruncatedSeries::one(trunc));
    }

    #[test]
    fn pochhammer_step_two() {
        // (q^2; q^2)_2 = (1-q^2)(1-q^4).
        let trunc = t(0, 0, 8);
        let p = TruncatedSeries::pochhammer(trunc, &Monomial::xyq(0, 0, 2), 2, Some(2)).unwrap();
        assert_eq!(p.coeff_i64((0, 0, 2)), Some(-1));
        assert_eq!(p.coeff_i64((0, 0, 4)), Some(-1));
        assert_eq!(p.coeff_i64((0, 0, 6)), Some(1));
    }

    #[test]
    fn json_round_trip_is_stable() {
        let trunc = t(2, 1, 2);
        let s = TruncatedSeries::monomial(trunc, &Monomial::xyq(1, 1, 2))
            .add(&TruncatedSeries::one(trunc))
            .sub(&TruncatedSeries::monomial(trunc, &Monomial::x_pow(2)).scalar_mul_int(3));
        let js = serde_json::to_string(&s).unwrap();
        let back: TruncatedSeries = serde_json::from_str(&js).unwrap();
        assert_eq!(s, back);
        assert_eq!(js, serde_json::to_string(&back).unwrap(), "byte-stable serialization");
    }
}
