//! Affine alternating diagrams and the bijection `delta` with 321-avoiding
//! affine permutations.
//!
//! An alternating diagram of rank `n` is a poset whose elements carry labels
//! `s_0, …, s_{n−1}` such that for every `i` (mod `n`) the elements labeled
//! `s_i` or `s_{i+1}` form a chain with alternating labels, and the poset is
//! the transitive closure of these chains. Identifying the elements labeled
//! `s_i` with a *column*, the whole structure is captured by:
//!
//! - `col_sizes[i]`: the number of elements labeled `s_i`;
//! - for every adjacent pair with equal positive sizes, a *chain type*:
//!   type `R` when the chain reads `s_i s_{i+1} … s_i s_{i+1}` bottom to top,
//!   type `L` when it reads `s_{i+1} s_i … s_{i+1} s_i`.
//!
//! Alternation forces `|col_sizes[i] − col_sizes[i+1]| ≤ 1` cyclically, and
//! two families are excluded because their chains close into a directed cycle
//! instead of a poset: all columns equal to some `k ≥ 1` with every chain of
//! type `R`, and the same with every chain of type `L`.
//!
//! `delta` sends a 321-avoiding affine permutation to the diagram whose
//! chains are the alternating subwords of a reduced word; `delta_inverse`
//! rebuilds the permutation by multiplying any linear extension of the poset
//! (full commutativity makes the result independent of the extension).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::permutations::{AffinePermutation, PermError};

/// Reading direction of an equal-size alternating chain, bottom to top.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ChainType {
    /// `s_i s_{i+1} … s_i s_{i+1}` bottom to top.
    R,
    /// `s_{i+1} s_i … s_{i+1} s_i` bottom to top.
    L,
}

impl ChainType {
    pub fn flipped(self) -> Self {
        match self {
            ChainType::R => ChainType::L,
            ChainType::L => ChainType::R,
        }
    }
}

/// Errors for diagram validation and for `delta` on non-fully-commutative
/// input.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DiagramError {
    /// Adjacent column sizes differ by more than one (cyclically), or a
    /// positive column exists at rank 1 where no alternating chain can.
    #[error("NotAlternating: columns {i} and {j} have sizes {a} and {b}")]
    NotAlternating { i: usize, j: usize, a: u32, b: u32 },
    /// All columns equal and positive with every chain of type R.
    #[error("ExcludedUniformR: equal columns of size {k} with all chains R close a cycle")]
    ExcludedUniformR { k: u32 },
    /// All columns equal and positive with every chain of type L.
    #[error("ExcludedUniformL: equal columns of size {k} with all chains L close a cycle")]
    ExcludedUniformL { k: u32 },
    /// `chain_types` keys differ from the required set
    /// `{i : col_sizes[i] = col_sizes[i+1] > 0}`.
    #[error("ChainTypeDomainMismatch: type at {i} is {state}")]
    ChainTypeDomainMismatch { i: usize, state: &'static str },
    /// A reduced word whose `{s_i, s_{i+1}}` subword fails to alternate — the
    /// permutation is not fully commutative (not 321-avoiding).
    #[error("NotFullyCommutative: letters {i} and {next} repeat consecutively")]
    NotFullyCommutative { i: usize, next: usize },
    /// Wrapped permutation-layer error (sizes, parsing).
    #[error("{0}")]
    Perm(#[from] PermError),
}

/// An affine alternating diagram, stored by column sizes and chain types.
/// Constructed only through [`AlternatingDiagram::validate`], so every value
/// satisfies the alternation and exclusion conditions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlternatingDiagram {
    n: usize,
    col_sizes: Vec<u32>,
    chain_types: BTreeMap<usize, ChainType>,
}

impl AlternatingDiagram {
    /// Validate the encoding: cyclic ±1 size condition, chain-type domain
    /// exactly `{i : c_i = c_{i+1} > 0}`, and the two excluded uniform
    /// families.
    pub fn validate(
        n: usize,
        col_sizes: Vec<u32>,
        chain_types: BTreeMap<usize, ChainType>,
    ) -> Result<Self, DiagramError> {
        assert!(n >= 1, "rank must be positive");
        assert_eq!(col_sizes.len(), n, "one column size per label");
        if n == 1 {
            // A single label admits no alternating chain with two or more
            // elements, so only the empty diagram exists at rank 1.
            if col_sizes[0] > 0 {
                return Err(DiagramError::NotAlternating {
                    i: 0,
                    j: 0,
                    a: col_sizes[0],
                    b: col_sizes[0],
                });
            }
            if let Some((&i, _)) = chain_types.iter().next() {
                return Err(DiagramError::ChainTypeDomainMismatch { i, state: "unexpected" });
            }
            return Ok(AlternatingDiagram { n, col_sizes, chain_types });
        }
        for i in 0..n {
            let j = (i + 1) % n;
            let (a, b) = (col_sizes[i], col_sizes[j]);
            if a.abs_diff(b) > 1 {
                return Err(DiagramError::NotAlternating { i, j, a, b });
            }
            let needs_type = a == b && a > 0;
            match (needs_type, chain_types.contains_key(&i)) {
                (true, false) => {
                    return Err(DiagramError::ChainTypeDomainMismatch { i, state: "missing" })
                }
                (false, true) => {
                    return Err(DiagramError::ChainTypeDomainMismatch { i, state: "unexpected" })
                }
                _ => {}
            }
        }
        let k = col_sizes[0];
        if k > 0 && col_sizes.iter().all(|&c| c == k) {
            if chain_types.values().all(|&t| t == ChainType::R) {
                return Err(DiagramError::ExcludedUniformR { k });
            }
            if chain_types.values().all(|&t| t == ChainType::L) {
                return Err(DiagramError::ExcludedUniformL { k });
            }
        }
        Ok(AlternatingDiagram { n, col_sizes, chain_types })
    }

    /// The empty diagram of rank `n`.
    pub fn empty(n: usize) -> Self {
        AlternatingDiagram { n, col_sizes: vec![0; n], chain_types: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn col_sizes(&self) -> &[u32] {
        &self.col_sizes
    }

    pub fn chain_types(&self) -> &BTreeMap<usize, ChainType> {
        &self.chain_types
    }

    /// Number of elements, `Σ |D_i|`.
    pub fn size(&self) -> u64 {
        self.col_sizes.iter().map(|&c| c as u64).sum()
    }

    /// A diagram is finite (its permutation lies in `S_n`) iff no element is
    /// labeled `s_0`.
    pub fn is_finite(&self) -> bool {
        self.col_sizes[0] == 0
    }

    /// The dual diagram: same columns, every chain read top to bottom, which
    /// flips each chain type.
    pub fn dual(&self) -> Self {
        let chain_types = self.chain_types.iter().map(|(&i, &t)| (i, t.flipped())).collect();
        AlternatingDiagram { n: self.n, col_sizes: self.col_sizes.clone(), chain_types }
    }

    /// Self-dual iff every chain type equals its flip partner — the diagram
    /// equals its dual. Corresponds to the permutation being an involution.
    pub fn is_self_dual(&self) -> bool {
        *self == self.dual()
    }

    /// The image of a 321-avoiding affine permutation: column sizes are the
    /// letter multiplicities of a reduced word, and each equal-size chain
    /// type is read off the first letter of the `{s_i, s_{i+1}}` subword
    /// (`s_i` first ⇒ type R).
    pub fn delta(sigma: &AffinePermutation) -> Result<Self, DiagramError> {
        let n = sigma.size();
        let word = sigma.reduced_word();
        let mut col_sizes = vec![0u32; n];
        for &letter in &word.letters {
            col_sizes[letter] += 1;
        }
        let mut chain_types = BTreeMap::new();
        if n >= 2 {
            for i in 0..n {
                let next = (i + 1) % n;
                let mut first: Option<usize> = None;
                let mut last: Option<usize> = None;
                for &letter in &word.letters {
                    if letter == i || letter == next {
                        if last == Some(letter) {
                            return Err(DiagramError::NotFullyCommutative { i, next });
                        }
                        last = Some(letter);
                        first.get_or_insert(letter);
                    }
                }
                if col_sizes[i] == col_sizes[next] && col_sizes[i] > 0 {
                    let t = if first == Some(i) { ChainType::R } else { ChainType::L };
                    chain_types.insert(i, t);
                }
            }
        }
        let diagram = Self::validate(n, col_sizes, chain_types)
            .expect("the chains of a reduced word always assemble into a valid diagram");
        Ok(diagram)
    }

    /// The chain `C_{i,i+1}` as a bottom-to-top list of elements, each
    /// element being `(column, level)` with level 0 at the bottom of its
    /// column. Alternation plus the sizes (and the type, when sizes are
    /// equal) determine the interleaving completely.
    fn chain(&self, i: usize) -> Vec<(usize, u32)> {
        let j = (i + 1) % self.n;
        let (ci, cj) = (self.col_sizes[i], self.col_sizes[j]);
        let total = (ci + cj) as usize;
        let mut out = Vec::with_capacity(total);
        if total == 0 {
            return out;
        }
        // Which column supplies the bottom element?
        let bottom_is_i = if ci > cj {
            true
        } else if ci < cj {
            false
        } else {
            self.chain_types[&i] == ChainType::R
        };
        let (mut level_i, mut level_j) = (0u32, 0u32);
        let mut take_i = bottom_is_i;
        for _ in 0..total {
            if take_i {
                out.push((i, level_i));
                level_i += 1;
            } else {
                out.push((j, level_j));
                level_j += 1;
            }
            take_i = !take_i;
        }
        debug_assert_eq!(level_i, ci);
        debug_assert_eq!(level_j, cj);
        out
    }

    /// The inverse bijection: rebuild the poset from the chains, take a
    /// linear extension, and multiply the corresponding generators. Full
    /// commutativity guarantees independence of the extension;
    /// [`Self::delta_inverse_by_level`] exercises a second extension order.
    pub fn delta_inverse(&self) -> AffinePermutation {
        self.linear_extension_product(false)
    }

    /// As [`Self::delta_inverse`], but resolving ties in the linear extension
    /// by level before column (the default resolves by column). Both must
    /// produce the same permutation.
    pub fn delta_inverse_by_level(&self) -> AffinePermutation {
        self.linear_extension_product(true)
    }

    fn linear_extension_product(&self, by_level: bool) -> AffinePermutation {
        // Elements are (column, level); collect direct predecessors from
        // every chain. (At rank 1 only the empty diagram exists, so the
        // loop body never runs.)
        let mut preds: BTreeMap<(usize, u32), Vec<(usize, u32)>> = BTreeMap::new();
        for (col, &size) in self.col_sizes.iter().enumerate() {
            for level in 0..size {
                preds.entry((col, level)).or_default();
            }
        }
        if self.n >= 2 {
            for i in 0..self.n {
                let chain = self.chain(i);
                for pair in chain.windows(2) {
                    preds.get_mut(&pair[1]).expect("chain elements are columns").push(pair[0]);
                }
            }
        }
        let mut remaining: BTreeMap<(usize, u32), usize> =
            preds.iter().map(|(&e, ps)| (e, ps.len())).collect();
        let mut succs: BTreeMap<(usize, u32), Vec<(usize, u32)>> = BTreeMap::new();
        for (&e, ps) in &preds {
            for &p in ps {
                succs.entry(p).or_default().push(e);
            }
        }
        let mut letters = Vec::with_capacity(remaining.len());
        while !remaining.is_empty() {
            let minimal = remaining
                .iter()
                .filter(|(_, &deg)| deg == 0)
                .map(|(&e, _)| e)
                .min_by_key(|&(col, level)| if by_level { (level, col as u32) } else { (col as u32, level) })
                .expect("a valid diagram is a poset, so a minimal element exists");
            letters.push(minimal.0);
            remaining.remove(&minimal);
            if let Some(next) = succs.get(&minimal) {
                for e in next {
                    *remaining.get_mut(e).expect("successor not yet removed") -= 1;
                }
            }
        }
        AffinePermutation::from_word(self.n, &letters)
            .expect("letters are valid generator indices")
    }
}

impl fmt::Display for AlternatingDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {} cols {:?} types {{", self.n, self.col_sizes)?;
        for (k, (i, t)) in self.chain_types.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{:?}", i, t)?;
        }
        write!(f, "}}")
    }
}

impl Serialize for AlternatingDiagram {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            n: usize,
            cols: &'a [u32],
            types: &'a BTreeMap<usize, ChainType>,
        }
        Repr { n: self.n, cols: &self.col_sizes, types: &self.chain_types }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for AlternatingDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            cols: Vec<u32>,
            types: BTreeMap<usize, ChainType>,
        }
        let repr = Repr::deserialize(de)?;
        if repr.cols.len() != repr.n || repr.n == 0 {
            return Err(serde::de::Error::custom(format!(
                "expected {} column sizes, got {}",
                repr.n,
                repr.cols.len()
            )));
        }
        AlternatingDiagram::validate(repr.n, repr.cols, repr.types)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn types(entries: &[(usize, ChainType)]) -> BTreeMap<usize, ChainType> {
        entries.iter().cloned().collect()
    }

    fn perm(w: &[i64]) -> AffinePermutation {
        AffinePermutation::from_window(w.len(), w.to_vec()).unwrap()
    }

    #[test]
    fn validation_examples() {
        let all_r = types(&[(0, ChainType::R), (1, ChainType::R), (2, ChainType::R), (3, ChainType::R)]);
        assert!(matches!(
            AlternatingDiagram::validate(4, vec![1, 1, 1, 1], all_r),
            Err(DiagramError::ExcludedUniformR { k: 1 })
        ));
        let all_l = types(&[(0, ChainType::L), (1, ChainType::L), (2, ChainType::L), (3, ChainType::L)]);
        assert!(matches!(
            AlternatingDiagram::validate(4, vec![1, 1, 1, 1], all_l),
            Err(DiagramError::ExcludedUniformL { k: 1 })
        ));
        assert!(AlternatingDiagram::validate(4, vec![0, 0, 0, 0], BTreeMap::new()).is_ok());
        let d = AlternatingDiagram::validate(4, vec![2, 1, 2, 1], BTreeMap::new()).unwrap();
        assert!(d.chain_types().is_empty(), "no equal positive adjacent pair");
        assert!(matches!(
            AlternatingDiagram::validate(4, vec![2, 0, 1, 1], types(&[(2, ChainType::R)])),
            Err(DiagramError::NotAlternating { .. })
        ));
        assert!(matches!(
            AlternatingDiagram::validate(4, vec![1, 1, 0, 0], BTreeMap::new()),
            Err(DiagramError::ChainTypeDomainMismatch { i: 0, state: "missing" })
        ));
        assert!(matches!(
            AlternatingDiagram::validate(4, vec![1, 2, 1, 0], types(&[(1, ChainType::L)])),
            Err(DiagramError::ChainTypeDomainMismatch { i: 1, state: "unexpected" })
        ));
        // Mixed types on all-equal columns are fine.
        let mixed = types(&[(0, ChainType::R), (1, ChainType::L), (2, ChainType::R), (3, ChainType::L)]);
        assert!(AlternatingDiagram::validate(4, vec![1, 1, 1, 1], mixed).is_ok());
    }

    #[test]
    fn rank_one_only_empty() {
        assert!(AlternatingDiagram::validate(1, vec![0], BTreeMap::new()).is_ok());
        assert!(AlternatingDiagram::validate(1, vec![1], BTreeMap::new()).is_err());
    }

    #[test]
    fn delta_examples() {
        let id = AffinePermutation::identity(4);
        let d = AlternatingDiagram::delta(&id).unwrap();
        assert_eq!(d.size(), 0);
        assert!(d.is_finite() && d.is_self_dual());

        let sigma = perm(&[6, -3, -1, 8]);
        let d = AlternatingDiagram::delta(&sigma).unwrap();
        assert_eq!(d.size(), 9, "size equals the inversion number");
        assert!(!d.is_finite(), "σ moves values outside the window");

        let big = perm(&[-6, 13, -4, -1, 0, 14, 19, 1]);
        let d = AlternatingDiagram::delta(&big).unwrap();
        assert_eq!(d.size(), 31);

        assert!(matches!(
            AlternatingDiagram::delta(&perm(&[3, 2, 1])),
            Err(DiagramError::NotFullyCommutative { .. })
        ));
    }

    #[test]
    fn delta_round_trips() {
        for w in [
            vec![6, -3, -1, 8],
            vec![-6, 13, -4, -1, 0, 14, 19, 1],
            vec![2, 1, 3],
            vec![3, 4, 1, 2],
            vec![4, -1],
        ] {
            let sigma = perm(&w);
            let d = AlternatingDiagram::delta(&sigma).unwrap();
            assert_eq!(d.delta_inverse(), sigma, "Δ⁻¹∘Δ = id on {}", sigma);
            assert_eq!(
                d.delta_inverse_by_level(),
                sigma,
                "linear extension order must not matter on {}",
                sigma
            );
            assert_eq!(d.size(), sigma.inversion_number(), "size = inv on {}", sigma);
            assert_eq!(d.is_finite(), sigma.is_finite());
            assert_eq!(d.is_self_dual(), sigma.is_involution());
        }
    }

    #[test]
    fn dual_flips_types() {
        let sigma = perm(&[6, -3, -1, 8]);
        let d = AlternatingDiagram::delta(&sigma).unwrap();
        let dd = d.dual();
        assert_eq!(d.col_sizes(), dd.col_sizes());
        assert_eq!(d.dual().dual(), d);
        // The dual diagram is the image of the inverse permutation.
        assert_eq!(dd.delta_inverse(), sigma.inverse());
    }

    #[test]
    fn empty_chain_types_is_self_dual() {
        let d = AlternatingDiagram::validate(4, vec![2, 1, 2, 1], BTreeMap::new()).unwrap();
        assert!(d.is_self_dual(), "nothing to flip");
    }

    #[test]
    fn json_round_trip() {
        let sigma = perm(&[6, -3, -1, 8]);
        let d = AlternatingDiagram::delta(&sigma).unwrap();
        let js = serde_json::to_string(&d).unwrap();
        let back: AlternatingDiagram = serde_json::from_str(&js).unwrap();
        assert_eq!(back, d);
        // Invalid payloads are rejected at parse time.
        let bad = r#"{"n":4,"cols":[1,1,1,1],"types":{"0":"R","1":"R","2":"R","3":"R"}}"#;
        assert!(serde_json::from_str::<AlternatingDiagram>(bad).is_err());
    }
}
