//! Affine permutations in window notation.
//!
//! An affine permutation of size `n` is a bijection `σ: ℤ → ℤ` with
//! `σ(i + n) = σ(i) + n` for all `i` and `Σ_{i=1}^{n} σ(i) = n(n+1)/2`. It is
//! determined by its *window* `[σ(1), …, σ(n)]`; the two defining conditions
//! become: the window values have pairwise distinct residues mod `n`, and
//! they sum to `n(n+1)/2`.
//!
//! The group is generated by `s_0, …, s_{n−1}`, where `s_i` (for `i ≥ 1`)
//! swaps `i ↔ i+1` (and all translates), and `s_0 = [0, 2, 3, …, n−1, n+1]`
//! swaps `0 ↔ 1` and translates.
//!
//! The *inversion number* is `inv(σ) = #{(i,j) : i ∈ {1..n}, j > i,
//! σ(i) > σ(j)}`; it equals the Coxeter length (the minimal number of
//! generators whose product is `σ`). A permutation is *321-avoiding* when no
//! `i < j < k` has `σ(i) > σ(j) > σ(k)`; this is equivalent to full
//! commutativity, i.e. in any reduced word the occurrences of `s_i` and
//! `s_{i+1}` alternate for every `i` (indices mod `n`). Both characterizations
//! are implemented and cross-checked.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors for window validation and group operations.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PermError {
    /// Two window values share a residue class mod `n`.
    #[error("NotBijective: window values {v1} and {v2} are congruent mod {n}")]
    NotBijective { v1: i64, v2: i64, n: usize },
    /// Window sum differs from `n(n+1)/2`.
    #[error("WrongSum: window sums to {found}, expected {expected}")]
    WrongSum { found: i64, expected: i64 },
    /// Window length differs from the stated size.
    #[error("WrongLength: got {found} values for size {n}")]
    WrongLength { found: usize, n: usize },
    /// Binary operation on permutations of different sizes.
    #[error("SizeMismatch: sizes {a} and {b} differ")]
    SizeMismatch { a: usize, b: usize },
    /// Generator index out of range (or `n < 2`, where no generators exist).
    #[error("InvalidGenerator: s_{i} does not exist at size {n}")]
    InvalidGenerator { i: usize, n: usize },
    /// Unparseable window text.
    #[error("ParseError: {0}")]
    Parse(String),
}

/// An affine permutation of size `n`, stored by its window `[σ(1)…σ(n)]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePermutation {
    n: usize,
    window: Vec<i64>,
}

/// A reduced word: a sequence of generator indices in `{0, …, n−1}` whose
/// product is the permutation and whose length equals its inversion number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedWord {
    pub letters: Vec<usize>,
}

impl AffinePermutation {
    /// Validate a window: residues mod `n` must be a permutation of
    /// `{0,…,n−1}` and the sum must be `n(n+1)/2`.
    pub fn from_window(n: usize, values: Vec<i64>) -> Result<Self, PermError> {
        if values.len() != n || n == 0 {
            return Err(PermError::WrongLength { found: values.len(), n });
        }
        let mut seen: Vec<Option<i64>> = vec![None; n];
        for &v in &values {
            let r = v.rem_euclid(n as i64) as usize;
            if let Some(prev) = seen[r] {
                return Err(PermError::NotBijective { v1: prev, v2: v, n });
            }
            seen[r] = Some(v);
        }
        let sum: i64 = values.iter().sum();
        let expected = (n as i64) * (n as i64 + 1) / 2;
        if sum != expected {
            return Err(PermError::WrongSum { found: sum, expected });
        }
        Ok(AffinePermutation { n, window: values })
    }

    /// The identity of size `n`.
    pub fn identity(n: usize) -> Self {
        AffinePermutation { n, window: (1..=n as i64).collect() }
    }

    /// The generator `s_i`, `0 ≤ i ≤ n−1`, `n ≥ 2`: swaps `i ↔ i+1` and all
    /// their translates. `s_0 = [0, 2, …, n−1, n+1]`.
    pub fn generator(n: usize, i: usize) -> Result<Self, PermError> {
        if n < 2 || i >= n {
            return Err(PermError::InvalidGenerator { i, n });
        }
        let mut w: Vec<i64> = (1..=n as i64).collect();
        if i == 0 {
            w[0] = 0;
            w[n - 1] = n as i64 + 1;
        } else {
            w[i - 1] = i as i64 + 1;
            w[i] = i as i64;
        }
        Ok(AffinePermutation { n, window: w })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// Evaluate `σ(i)` for any integer, via `σ(i + n) = σ(i) + n`.
    pub fn apply(&self, i: i64) -> i64 {
        let n = self.n as i64;
        let r = (i - 1).rem_euclid(n); // position r+1 in the window
        let shift = i - (r + 1);
        self.window[r as usize] + shift
    }

    /// `σ∘τ` (apply `τ` first).
    pub fn compose(&self, other: &Self) -> Result<Self, PermError> {
        if self.n != other.n {
            return Err(PermError::SizeMismatch { a: self.n, b: other.n });
        }
        let window = (1..=self.n as i64).map(|i| self.apply(other.apply(i))).collect();
        Ok(AffinePermutation { n: self.n, window })
    }

    /// `σ⁻¹`, solved residue by residue: if `σ(r) = v` then `σ⁻¹(v) = r`, and
    /// periodicity fills in the rest.
    pub fn inverse(&self) -> Self {
        let n = self.n as i64;
        let mut window = vec![0i64; self.n];
        for (idx, &v) in self.window.iter().enumerate() {
            let r = idx as i64 + 1; // σ(r) = v
            let residue = (v - 1).rem_euclid(n); // v sits at window slot `residue` of σ⁻¹
            // σ(r + k n) = v + k n, so σ⁻¹(v + k n) = r + k n; choose k so the
            // argument lands in {1..n}: v + k n = residue + 1.
            let k = (residue + 1 - v) / n;
            window[residue as usize] = r + k * n;
        }
        AffinePermutation { n: self.n, window }
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &v)| v == i as i64 + 1)
    }

    /// `max_k (σ(k) − k)` — how far any value exceeds its position. Zero only
    /// for the identity (positive deviations must exist whenever negative
    /// ones do, since deviations sum to zero over a period).
    fn max_up(&self) -> i64 {
        self.window.iter().enumerate().map(|(i, &v)| v - (i as i64 + 1)).max().unwrap()
    }

    /// `max_k (k − σ(k))`.
    fn max_down(&self) -> i64 {
        self.window.iter().enumerate().map(|(i, &v)| (i as i64 + 1) - v).max().unwrap()
    }

    /// The inversion number `#{(i,j) : i ∈ {1..n}, j > i, σ(i) > σ(j)}`.
    ///
    /// The scan over `j` is finite because `σ(j) ≥ j − M′` with
    /// `M′ = max_k(k − σ(k))`: an inversion needs `σ(j) < σ(i)`, hence
    /// `j < σ(i) + M′`.
    pub fn inversion_number(&self) -> u64 {
        let md = self.max_down();
        let mut inv = 0u64;
        for i in 1..=self.n as i64 {
            let si = self.apply(i);
            let mut j = i + 1;
            while j < si + md {
                if self.apply(j) < si {
                    inv += 1;
                }
                j += 1;
            }
        }
        inv
    }

    /// Position descents: indices `i ∈ {0..n−1}` with `σ(i) > σ(i+1)`
    /// (equivalently, right-multiplying by `s_i` shortens the permutation).
    fn descents(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.apply(i as i64) > self.apply(i as i64 + 1)).collect()
    }

    /// A reduced word for `σ`, of length `inversion_number(σ)`:
    /// repeatedly strip the smallest position descent from the right. The
    /// collected letters, reversed, multiply left-to-right to `σ`.
    pub fn reduced_word(&self) -> ReducedWord {
        let mut cur = self.clone();
        let mut letters_reversed = Vec::new();
        while !cur.is_identity() {
            let i = *cur.descents().first().expect("a non-identity permutation has a descent");
            let s = Self::generator(cur.n, i).expect("descent index is a valid generator");
            cur = cur.compose(&s).expect("equal sizes");
            letters_reversed.push(i);
        }
        letters_reversed.reverse();
        ReducedWord { letters: letters_reversed }
    }

    /// Direct 321-pattern scan: is there `i < j < k` with
    /// `σ(i) > σ(j) > σ(k)`?
    ///
    /// By periodicity the middle index can be fixed in `{1..n}`. The window
    /// for `i` is `[σ(j)+1−M, j−1]` because `σ(i) ≤ i + M` forces
    /// `i ≥ σ(i) − M > σ(j) − M`; symmetrically `k ∈ [j+1, σ(j)−1+M′]`
    /// because `σ(k) ≥ k − M′`.
    fn has_321_pattern(&self) -> bool {
        let m_up = self.max_up();
        let m_down = self.max_down();
        for j in 1..=self.n as i64 {
            let sj = self.apply(j);
            for i in (sj + 1 - m_up)..j {
                if self.apply(i) <= sj {
                    continue;
                }
                for k in (j + 1)..(sj + m_down) {
                    if self.apply(k) < sj {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Alternation test on a reduced word: the permutation is fully
    /// commutative iff for every `i` (mod `n`) the letters in `{i, i+1}`
    /// alternate, i.e. no two consecutive occurrences are equal.
    fn word_is_alternating(word: &ReducedWord, n: usize) -> bool {
        for i in 0..n {
            let next = (i + 1) % n;
            if next == i {
                continue; // n = 1: no adjacent pair
            }
            let mut last: Option<usize> = None;
            for &letter in &word.letters {
                if letter == i || letter == next {
                    if last == Some(letter) {
                        return false;
                    }
                    last = Some(letter);
                }
            }
        }
        true
    }

    /// 321-avoidance, decided by the direct pattern scan and independently by
    /// the reduced-word alternation criterion; the two must agree.
    pub fn is_321_avoiding(&self) -> bool {
        let by_pattern = !self.has_321_pattern();
        let by_word = Self::word_is_alternating(&self.reduced_word(), self.n);
        debug_assert_eq!(
            by_pattern, by_word,
            "pattern scan and word alternation disagree on {}",
            self
        );
        by_pattern
    }

    /// Is `σ² = id`?
    pub fn is_involution(&self) -> bool {
        (1..=self.n as i64).all(|i| self.apply(self.apply(i)) == i)
    }

    /// Does `σ` fix `{1..n}` setwise (equivalently, lie in the finite
    /// symmetric group `S_n` embedded by windows inside `[1, n]`)?
    pub fn is_finite(&self) -> bool {
        self.window.iter().all(|&v| 1 <= v && v <= self.n as i64)
    }

    /// Product of a generator word, left to right.
    pub fn from_word(n: usize, letters: &[usize]) -> Result<Self, PermError> {
        let mut acc = Self::identity(n);
        for &i in letters {
            acc = acc.compose(&Self::generator(n, i)?)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for AffinePermutation {
    /// Window text form `[a1,a2,…,an]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.window.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, "]")
    }
}

impl FromStr for AffinePermutation {
    type Err = PermError;

    /// Parse `[a1,a2,…,an]`; the size is the number of entries.
    fn from_str(s: &str) -> Result<Self, PermError> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| PermError::Parse(format!("expected [a1,…,an], got {:?}", s)))?;
        let values: Vec<i64> = inner
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|e| PermError::Parse(e.to_string()))?;
        let n = values.len();
        Self::from_window(n, values)
    }
}

impl Serialize for AffinePermutation {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            n: usize,
            window: &'a [i64],
        }
        Repr { n: self.n, window: &self.window }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for AffinePermutation {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            window: Vec<i64>,
        }
        let repr = Repr::deserialize(de)?;
        AffinePermutation::from_window(repr.n, repr.window).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, w: &[i64]) -> AffinePermutation {
        AffinePermutation::from_window(n, w.to_vec()).expect("valid window")
    }

    #[test]
    fn window_validation() {
        assert!(AffinePermutation::from_window(8, vec![-6, 13, -4, -1, 0, 14, 19, 1]).is_ok());
        assert!(AffinePermutation::from_window(4, vec![6, -3, -1, 8]).is_ok());
        assert!(matches!(
            AffinePermutation::from_window(3, vec![1, 1, 4]),
            Err(PermError::NotBijective { .. })
        ));
        assert!(matches!(
            AffinePermutation::from_window(3, vec![1, 2, 6]),
            Err(PermError::WrongSum { found: 9, expected: 6 })
        ));
        assert!(matches!(
            AffinePermutation::from_window(3, vec![1, 2]),
            Err(PermError::WrongLength { .. })
        ));
    }

    #[test]
    fn apply_periodicity() {
        let sigma = p(4, &[6, -3, -1, 8]);
        assert_eq!(sigma.apply(5), 10, "σ(5) = σ(1) + 4");
        assert_eq!(sigma.apply(1), 6);
        assert_eq!(sigma.apply(0), 8 - 4, "σ(0) = σ(4) − 4");
        let id3 = AffinePermutation::identity(3);
        assert_eq!(id3.apply(-7), -7);
        let s0 = p(4, &[0, 2, 3, 5]);
        assert_eq!(s0.apply(0), 1, "s_0 swaps 0 and 1");
        assert_eq!(s0.apply(1), 0);
    }

    #[test]
    fn generators() {
        assert_eq!(
            AffinePermutation::generator(4, 1).unwrap().window(),
            &[2, 1, 3, 4],
            "s_1 swaps positions 1 and 2"
        );
        assert_eq!(AffinePermutation::generator(4, 0).unwrap().window(), &[0, 2, 3, 5]);
        for i in 0..4 {
            let s = AffinePermutation::generator(4, i).unwrap();
            assert!(s.compose(&s).unwrap().is_identity(), "s_{}² = e", i);
        }
        assert!(AffinePermutation::generator(1, 0).is_err(), "no generators at size 1");
    }

    #[test]
    fn compose_inverse_round_trip() {
        let sigma = p(4, &[6, -3, -1, 8]);
        let inv = sigma.inverse();
        assert!(sigma.compose(&inv).unwrap().is_identity());
        assert!(inv.compose(&sigma).unwrap().is_identity());
        assert_eq!(sigma.inversion_number(), inv.inversion_number());
    }

    #[test]
    fn inversion_numbers() {
        assert_eq!(AffinePermutation::identity(5).inversion_number(), 0);
        assert_eq!(p(4, &[6, -3, -1, 8]).inversion_number(), 9);
        assert_eq!(p(8, &[-6, 13, -4, -1, 0, 14, 19, 1]).inversion_number(), 31);
        assert_eq!(p(3, &[3, 2, 1]).inversion_number(), 3);
    }

    #[test]
    fn reduced_words() {
        assert!(AffinePermutation::identity(3).reduced_word().letters.is_empty());
        for i in 0..4 {
            let s = AffinePermutation::generator(4, i).unwrap();
            assert_eq!(s.reduced_word().letters, vec![i]);
        }
        let sigma = p(4, &[6, -3, -1, 8]);
        let word = sigma.reduced_word();
        assert_eq!(word.letters.len() as u64, sigma.inversion_number());
        let rebuilt = AffinePermutation::from_word(4, &word.letters).unwrap();
        assert_eq!(rebuilt, sigma, "reduced word multiplies back to σ");
    }

    #[test]
    fn avoidance_examples() {
        assert!(AffinePermutation::identity(3).is_321_avoiding());
        assert!(p(4, &[6, -3, -1, 8]).is_321_avoiding());
        assert!(p(8, &[-6, 13, -4, -1, 0, 14, 19, 1]).is_321_avoiding());
        assert!(!p(3, &[3, 2, 1]).is_321_avoiding(), "the pattern itself");
        assert!(!p(4, &[3, 2, 1, 4]).is_321_avoiding());
        assert!(p(4, &[3, 4, 1, 2]).is_321_avoiding());
    }

    #[test]
    fn involution_and_finiteness() {
        assert!(AffinePermutation::generator(4, 2).unwrap().is_involution());
        assert!(!p(8, &[-6, 13, -4, -1, 0, 14, 19, 1]).is_finite());
        let t = p(3, &[2, 1, 3]);
        assert!(t.is_involution() && t.is_finite());
        assert!(!p(4, &[6, -3, -1, 8]).is_involution());
    }

    #[test]
    fn pattern_scan_matches_naive_scan() {
        // The windowed scan must agree with a brute-force scan over a wide
        // range of indices; σ(i) ≤ i + M and σ(k) ≥ k − M′ justify the
        // windows, and [1−3n, 4n] comfortably covers every pattern whose
        // middle index lies in {1..n} for the sizes tested here.
        let mut cases = vec![
            p(3, &[3, 2, 1]),
            p(3, &[2, 1, 3]),
            p(4, &[6, -3, -1, 8]),
            p(4, &[3, 4, 1, 2]),
            p(2, &[4, -1]),
            p(3, &[-2, 2, 6]),
        ];
        // All products of ≤ 4 generators at n = 3.
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        cases.push(AffinePermutation::from_word(3, &[a, b, c, d]).unwrap());
                    }
                }
            }
        }
        for sigma in &cases {
            let n = sigma.size() as i64;
            let lo = 1 - 3 * n;
            let hi = 4 * n;
            let mut naive = false;
            'outer: for i in lo..=hi {
                for j in (i + 1)..=hi {
                    if sigma.apply(i) <= sigma.apply(j) {
                        continue;
                    }
                    for k in (j + 1)..=hi {
                        if sigma.apply(j) > sigma.apply(k) {
                            naive = true;
                            break 'outer;
                        }
                    }
                }
            }
            assert_eq!(
                sigma.has_321_pattern(),
                naive,
                "windowed and naive scans disagree on {}",
                sigma
            );
        }
    }

    #[test]
    fn text_round_trip() {
        let sigma = p(4, &[6, -3, -1, 8]);
        assert_eq!(sigma.to_string(), "[6,-3,-1,8]");
        let back: AffinePermutation = "[6,-3,-1,8]".parse().unwrap();
        assert_eq!(back, sigma);
        assert!(" [2, 1, 3] ".parse::<AffinePermutation>().is_ok(), "whitespace tolerated");
        assert!("2,1,3".parse::<AffinePermutation>().is_err(), "brackets required");
        assert!("[1,1,4]".parse::<AffinePermutation>().is_err(), "validation applies");
    }

    #[test]
    fn json_round_trip() {
        let sigma = p(4, &[6, -3, -1, 8]);
        let js = serde_json::to_string(&sigma).unwrap();
        assert_eq!(js, r#"{"n":4,"window":[6,-3,-1,8]}"#);
        let back: AffinePermutation = serde_json::from_str(&js).unwrap();
        assert_eq!(back, sigma);
        assert!(serde_json::from_str::<AffinePermutation>(r#"{"n":3,"window":[1,1,4]}"#).is_err());
    }
}
