//! Grothendieck-group arithmetic for symbols `i_{P_I}` and `v_{P_I}` tensored
//! with a Galois orbit symbol and a Tate twist, plus the Ext dimensions of
//! generalized Steinberg representations.
//!
//! Representations are never materialized; a [`VirtualRep`] is a finite
//! integer combination of symbols.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::cohomology_engine::CohomologySummand;
use crate::lattice_roots::format_word;

/// A subset of the relative simple roots `Δ`, as a bit mask.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Self {
        assert!(n < 64, "at most 63 simple roots");
        Subset((1u64 << n) - 1)
    }

    pub fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        Subset(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | 1 << i)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn symmetric_difference(self, other: Subset) -> Self {
        Subset(self.0 ^ other.0)
    }

    /// `Δ ∖ self` for `|Δ| = n`.
    pub fn complement(self, n: usize) -> Self {
        Subset(Subset::full(n).0 & !self.0)
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    /// All `2^n` subsets of `Δ`, in increasing bit order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        (0..=Subset::full(n).0).map(Subset)
    }

    /// All `K` with `self ⊆ K ⊆ Δ`.
    pub fn supersets(self, n: usize) -> impl Iterator<Item = Subset> {
        let free = self.complement(n).0;
        // Enumerate submasks of `free` in increasing order.
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == free { None } else { Some(((cur | !free).wrapping_add(1)) & free) };
            Some(Subset(self.0 | cur))
        })
    }

    /// `{a1,a3}` using the given labels.
    pub fn display(self, labels: &[String]) -> String {
        let names: Vec<&str> = self.indices().map(|i| labels[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn labels(self, labels: &[String]) -> Vec<String> {
        self.indices().map(|i| labels[i].clone()).collect()
    }
}

/// The `J(Q_p)`-part of a symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum JSymbol {
    /// `i_{P_I}`: locally constant functions on `J/P_I`.
    Induced(Subset),
    /// `v_{P_I}`: the generalized Steinberg quotient.
    Steinberg(Subset),
}

/// `ind_[w]`, recorded by the canonical reduced word of the orbit and its size.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaloisSymbol {
    pub word: Vec<u8>,
    pub dim: usize,
}

impl fmt::Display for GaloisSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ind[{}]", format_word(&self.word))
    }
}

/// `J-symbol ⊗ ind_[w] (twist)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RepSymbol {
    pub j: JSymbol,
    pub galois: GaloisSymbol,
    pub twist: i64,
}

impl RepSymbol {
    pub fn induced(subset: Subset, galois: GaloisSymbol, twist: i64) -> Self {
        Self { j: JSymbol::Induced(subset), galois, twist }
    }

    /// `v_{P_I}`; `v_{P_Δ}` is stored as `i_{P_Δ}`, the trivial representation.
    pub fn steinberg(subset: Subset, delta_len: usize, galois: GaloisSymbol, twist: i64) -> Self {
        let j = if subset == Subset::full(delta_len) {
            JSymbol::Induced(subset)
        } else {
            JSymbol::Steinberg(subset)
        };
        Self { j, galois, twist }
    }

    /// `i[P_{a1,a2}] ⊗ ind[s1] (-1)`.
    pub fn display(&self, labels: &[String]) -> String {
        let (kind, s) = match &self.j {
            JSymbol::Induced(s) => ("i", s),
            JSymbol::Steinberg(s) => ("v", s),
        };
        let names: Vec<&str> = s.indices().map(|i| labels[i].as_str()).collect();
        format!("{kind}[P_{{{}}}] ⊗ {} ({})", names.join(","), self.galois, self.twist)
    }
}

/// Steinberg symbol text for `v_{P_I}` on its own, e.g. `v[P_{a1}]`.
pub fn steinberg_name(subset: Subset, labels: &[String]) -> String {
    let names: Vec<&str> = subset.indices().map(|i| labels[i].as_str()).collect();
    format!("v[P_{{{}}}]", names.join(","))
}

/// `v_{P_I} = Σ_{I ⊆ K ⊆ Δ} (-1)^{|K ∖ I|} i_{P_K}`.
pub fn expand_v(subset: Subset, delta_len: usize) -> Vec<(Subset, i64)> {
    subset
        .supersets(delta_len)
        .map(|k| {
            let sign = if (k.len() - subset.len()).is_multiple_of(2) { 1 } else { -1 };
            (k, sign)
        })
        .collect()
}

/// Inverse of [`expand_v`]: `i_{P_I} = Σ_{I ⊆ K ⊆ Δ} v_{P_K}`.
pub fn induced_as_steinberg(subset: Subset, delta_len: usize) -> Vec<(Subset, i64)> {
    subset.supersets(delta_len).map(|k| (k, 1)).collect()
}

/// A finite integer combination of symbols; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VirtualRep {
    tokens: BTreeMap<RepSymbol, i64>,
}

impl VirtualRep {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(symbol: RepSymbol) -> Self {
        let mut r = Self::new();
        r.add_token(symbol, 1);
        r
    }

    pub fn add_token(&mut self, symbol: RepSymbol, mult: i64) {
        if mult == 0 {
            return;
        }
        let entry = self.tokens.entry(symbol.clone()).or_insert(0);
        *entry += mult;
        if *entry == 0 {
            self.tokens.remove(&symbol);
        }
    }

    pub fn add_scaled(&mut self, other: &VirtualRep, c: i64) {
        for (s, m) in &other.tokens {
            self.add_token(s.clone(), c * m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RepSymbol, i64)> {
        self.tokens.iter().map(|(s, &m)| (s, m))
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn neg(&self) -> Self {
        let mut r = Self::new();
        r.add_scaled(self, -1);
        r
    }

    /// Rewrites every `v_{P_I}` as a combination of `i_{P_K}`.
    pub fn expand(&self, delta_len: usize) -> Self {
        let mut out = Self::new();
        for (s, m) in &self.tokens {
            match &s.j {
                JSymbol::Induced(_) => out.add_token(s.clone(), *m),
                JSymbol::Steinberg(i) => {
                    for (k, c) in expand_v(*i, delta_len) {
                        out.add_token(RepSymbol::induced(k, s.galois.clone(), s.twist), c * m);
                    }
                }
            }
        }
        out
    }

    pub fn display(&self, labels: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (s, m)) in self.tokens.iter().enumerate() {
            let body = s.display(labels);
            match (i, *m) {
                (0, 1) => out.push_str(&body),
                (0, -1) => write!(out, "-{body}").unwrap(),
                (0, m) => write!(out, "{m}*{body}").unwrap(),
                (_, 1) => write!(out, " + {body}").unwrap(),
                (_, -1) => write!(out, " - {body}").unwrap(),
                (_, m) if m < 0 => write!(out, " - {}*{body}", -m).unwrap(),
                (_, m) => write!(out, " + {m}*{body}").unwrap(),
            }
        }
        out
    }
}

impl std::ops::Add for &VirtualRep {
    type Output = VirtualRep;
    fn add(self, rhs: &VirtualRep) -> VirtualRep {
        let mut r = self.clone();
        r.add_scaled(rhs, 1);
        r
    }
}

impl std::ops::Sub for &VirtualRep {
    type Output = VirtualRep;
    fn sub(self, rhs: &VirtualRep) -> VirtualRep {
        let mut r = self.clone();
        r.add_scaled(rhs, -1);
        r
    }
}

/// A virtual representation graded by cohomological degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VirtualGradedRep {
    degrees: BTreeMap<usize, VirtualRep>,
}

impl VirtualGradedRep {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_token(&mut self, degree: usize, symbol: RepSymbol, mult: i64) {
        let slot = self.degrees.entry(degree).or_default();
        slot.add_token(symbol, mult);
        if slot.is_zero() {
            self.degrees.remove(&degree);
        }
    }

    pub fn degree(&self, d: usize) -> Option<&VirtualRep> {
        self.degrees.get(&d)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &VirtualRep)> {
        self.degrees.iter().map(|(&d, r)| (d, r))
    }

    /// Degree-alternating sum `Σ (-1)^d [H^d]`.
    pub fn euler(&self) -> VirtualRep {
        let mut out = VirtualRep::new();
        for (&d, r) in &self.degrees {
            out.add_scaled(r, if d % 2 == 0 { 1 } else { -1 });
        }
        out
    }
}

/// `dim Ext^i(v_{P_I}, v_{P_I'})` for a group whose centre has split rank `r`:
/// with `d = |I ∪ I'| - |I ∩ I'|`, this is `binomial(r, i - d)` for
/// `d ≤ i ≤ r` and zero otherwise. The offset `d` is the size of the
/// symmetric difference; subtracting `|I ∩ I'|` a second time instead would
/// make `Ext^0(v, v)` vanish whenever `I` is non-empty.
pub fn ext_dimension(i_set: Subset, j_set: Subset, degree: usize, center_rank: usize) -> u64 {
    let d = i_set.symmetric_difference(j_set).len();
    if d <= degree && degree <= center_rank {
        binomial(center_rank as u64, (degree - d) as u64)
    } else {
        0
    }
}

/// One pair of orbits examined by [`splitting_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingPair {
    pub orbits: [String; 2],
    pub y_degree: usize,
    pub lengths: [usize; 2],
    pub subsets: [Vec<String>; 2],
    pub size_gap: usize,
    pub ext1: u64,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingReport {
    pub pairs: Vec<SplittingPair>,
}

impl SplittingReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|p| p.passed)
    }
}

/// For orbits contributing to the same total degree `2l + |Δ∖I| - 1` on the
/// complement side with different lengths, checks that `|I_[w]|` and
/// `|I_[w']|` differ by at least two and that `Ext^1` between the
/// corresponding Steinberg representations vanishes.
pub fn splitting_check(
    summands: &[CohomologySummand],
    labels: &[String],
    center_rank: usize,
) -> SplittingReport {
    let n = labels.len();
    let y_degree = |s: &CohomologySummand| 2 * s.length + s.parabolic_subset.complement(n).len();
    let mut pairs = Vec::new();
    for (a, sa) in summands.iter().enumerate() {
        for sb in &summands[a + 1..] {
            // Both sides carry the same -1 shift, so compare 2l + |Δ∖I|.
            if y_degree(sa) != y_degree(sb) || sa.length == sb.length {
                continue;
            }
            let size_gap = sa.parabolic_subset.len().abs_diff(sb.parabolic_subset.len());
            let ext1 = ext_dimension(sa.parabolic_subset, sb.parabolic_subset, 1, center_rank);
            pairs.push(SplittingPair {
                orbits: [format_word(&sa.orbit_word), format_word(&sb.orbit_word)],
                y_degree: y_degree(sa).saturating_sub(1),
                lengths: [sa.length, sb.length],
                subsets: [sa.parabolic_subset.labels(labels), sb.parabolic_subset.labels(labels)],
                size_gap,
                ext1,
                passed: size_gap >= 2 && ext1 == 0,
            });
        }
    }
    SplittingReport { pairs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g() -> GaloisSymbol {
        GaloisSymbol { word: vec![], dim: 1 }
    }

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("a{i}")).collect()
    }

    #[test]
    fn supersets_enumeration() {
        let s: Vec<u64> = Subset::from_bits(0b010).supersets(3).map(Subset::bits).collect();
        assert_eq!(s, vec![0b010, 0b011, 0b110, 0b111]);
        assert_eq!(Subset::full(3).supersets(3).count(), 1);
        assert_eq!(Subset::EMPTY.supersets(0).collect::<Vec<_>>(), vec![Subset::EMPTY]);
    }

    #[test]
    fn expand_v_examples() {
        assert_eq!(expand_v(Subset::full(2), 2), vec![(Subset::full(2), 1)]);
        let i = Subset::from_indices([0]);
        assert_eq!(expand_v(i, 2), vec![(i, 1), (Subset::full(2), -1)]);
        let b = expand_v(Subset::EMPTY, 2);
        assert_eq!(
            b,
            vec![
                (Subset::EMPTY, 1),
                (Subset::from_indices([0]), -1),
                (Subset::from_indices([1]), -1),
                (Subset::full(2), 1)
            ]
        );
    }

    #[test]
    fn steinberg_of_delta_is_trivial() {
        let s = RepSymbol::steinberg(Subset::full(2), 2, g(), 0);
        assert_eq!(s.j, JSymbol::Induced(Subset::full(2)));
        assert_eq!(s.display(&labels(2)), "i[P_{a1,a2}] ⊗ ind[e] (0)");
    }

    #[test]
    fn virtual_rep_arithmetic() {
        let a = VirtualRep::single(RepSymbol::induced(Subset::EMPTY, g(), 0));
        let b = VirtualRep::single(RepSymbol::steinberg(Subset::EMPTY, 1, g(), 0));
        let diff = &b.expand(1) - &a;
        assert_eq!(diff.display(&labels(1)), "-i[P_{a1}] ⊗ ind[e] (0)");
        assert!((&a - &a).is_zero());
        assert_eq!((&a + &a).iter().next().unwrap().1, 2);
    }

    #[test]
    fn graded_euler_characteristic() {
        let mut r = VirtualGradedRep::new();
        let sym = RepSymbol::induced(Subset::EMPTY, g(), 0);
        r.add_token(1, sym.clone(), 1);
        r.add_token(2, sym.clone(), 3);
        r.add_token(4, sym.clone(), 1);
        r.add_token(4, sym.clone(), -1);
        assert!(r.degree(4).is_none());
        assert_eq!(r.euler(), {
            let mut v = VirtualRep::new();
            v.add_token(sym, 2);
            v
        });
    }

    #[test]
    fn ext_examples() {
        for r in 0..4 {
            assert_eq!(ext_dimension(Subset::EMPTY, Subset::EMPTY, 0, r), 1);
            assert_eq!(ext_dimension(Subset::from_indices([0]), Subset::from_indices([1]), 1, r), 0);
        }
        assert_eq!(ext_dimension(Subset::EMPTY, Subset::EMPTY, 1, 1), 1);
        assert_eq!(ext_dimension(Subset::EMPTY, Subset::from_indices([0]), 1, 1), 1);
        assert_eq!(ext_dimension(Subset::EMPTY, Subset::EMPTY, 2, 3), 3);
    }

    proptest! {
        #[test]
        fn mobius_inversion_round_trip(n in 0usize..=12, bits in any::<u64>()) {
            let i = Subset::from_bits(bits & Subset::full(n).bits());
            // i_I -> Σ v_K -> Σ Σ ± i_L must return i_I.
            let mut acc: BTreeMap<Subset, i64> = BTreeMap::new();
            for (k, c) in induced_as_steinberg(i, n) {
                for (l, d) in expand_v(k, n) {
                    *acc.entry(l).or_default() += c * d;
                }
            }
            acc.retain(|_, m| *m != 0);
            prop_assert_eq!(acc.into_iter().collect::<Vec<_>>(), vec![(i, 1)]);
        }

        #[test]
        fn ext_is_symmetric_and_vanishes_above_rank(
            a in 0u64..64, b in 0u64..64, i in 0usize..10, r in 0usize..6
        ) {
            let (a, b) = (Subset::from_bits(a), Subset::from_bits(b));
            prop_assert_eq!(ext_dimension(a, b, i, r), ext_dimension(b, a, i, r));
            if i > r {
                prop_assert_eq!(ext_dimension(a, b, i, r), 0);
            }
        }
    }
}
