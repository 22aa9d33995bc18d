use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice_roots::RootDatum;
use crate::maybe_par_iter;
#[cfg(feature = "parallel")]
use crate::par::*;
use crate::rational::{rat, Rat, RatMatrix};

pub const DEFAULT_CAP: usize = 1_000_000;

/// Square integer matrix acting on coweight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Self { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Self { n, data: rows.concat() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).map(<[i64]>::to_vec).take(self.n).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Self { n, data }
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::identity(self.n), |acc, _| acc.mul(self))
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        (0..self.n)
            .map(|i| {
                self.data[i * self.n..(i + 1) * self.n]
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| **a != 0)
                    .fold(Rat::from_integer(0.into()), |acc, (&a, x)| acc + rat(a) * x)
            })
            .collect()
    }

    pub fn apply_int(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| self.data[i * self.n..(i + 1) * self.n].iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }

    /// Action on covectors, `λ ↦ λ ∘ self`.
    pub fn pull_back(&self, covector: &[Rat]) -> Vec<Rat> {
        (0..self.n)
            .map(|j| {
                (0..self.n).fold(Rat::from_integer(0.into()), |acc, i| {
                    acc + &covector[i] * rat(self.data[i * self.n + j])
                })
            })
            .collect()
    }

    pub fn to_rat(&self) -> RatMatrix {
        let rows: Vec<Vec<Rat>> = self.to_rows().iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        RatMatrix::from_rows(&rows).unwrap_or_else(|| RatMatrix::zeros(0, 0))
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.n + j]
    }
}

/// A Weyl group element: its matrix, the lexicographically least reduced
/// word (0-based simple indices), and its length.
#[derive(Clone, Debug)]
pub struct WeylElement {
    word: Vec<u8>,
    matrix: IntMatrix,
}

impl WeylElement {
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        self.matrix.apply(v)
    }

    /// `(length, word)`, the canonical order used everywhere.
    pub fn sort_key(&self) -> (usize, &[u8]) {
        (self.word.len(), &self.word)
    }

    pub fn word_string(&self) -> String {
        format_word(&self.word)
    }
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElement {}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word_string())
    }
}

/// Renders a reduced word with 1-based indices: `e`, `s2s1`, or `s10.s2`
/// once an index needs two digits.
pub fn format_word(word: &[u8]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    let sep = if word.iter().any(|&i| i >= 9) { "." } else { "" };
    word.iter().map(|&i| format!("s{}", i + 1)).collect::<Vec<_>>().join(sep)
}

/// The enumerated Weyl group, sorted by `(length, word)`.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    index: HashMap<IntMatrix, usize>,
    rank: usize,
}

impl WeylGroup {
    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize) -> &WeylElement {
        &self.elements[i]
    }

    pub fn position(&self, m: &IntMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn longest_length(&self) -> usize {
        self.elements.last().map_or(0, WeylElement::length)
    }

    /// Coefficients of the length generating function `Σ q^{l(w)}`.
    pub fn length_polynomial(&self) -> Vec<usize> {
        let mut coeffs = vec![0; self.longest_length() + 1];
        for w in &self.elements {
            coeffs[w.length()] += 1;
        }
        coeffs
    }
}

/// Enumerates `W` by breadth-first closure under right multiplication by
/// simple reflections. Level `k` holds exactly the elements of length `k`;
/// processing each level in word order makes the first word found for an
/// element its lexicographically least reduced word.
pub fn enumerate_weyl(datum: &RootDatum, cap: usize) -> Result<WeylGroup> {
    let rank = datum.rank();
    let n = datum.dimension();
    let gens: Vec<IntMatrix> = (0..rank).map(|i| datum.simple_reflection_matrix(i)).collect();

    let identity = WeylElement { word: Vec::new(), matrix: IntMatrix::identity(n) };
    let mut index = HashMap::from([(identity.matrix.clone(), 0)]);
    let mut elements = vec![identity];
    let mut level = 0..1;

    while !level.is_empty() {
        let frontier = &elements[level.clone()];
        let candidates: Vec<Vec<(u8, IntMatrix)>> = maybe_par_iter!(frontier)
            .map(|w| {
                gens.iter()
                    .enumerate()
                    .map(|(i, s)| (i as u8, w.matrix.mul(s)))
                    .filter(|(_, m)| !index.contains_key(m))
                    .collect()
            })
            .collect();

        let start = elements.len();
        for (parent, children) in level.clone().zip(candidates) {
            for (i, m) in children {
                if index.contains_key(&m) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                let mut word = elements[parent].word.clone();
                word.push(i);
                index.insert(m.clone(), elements.len());
                elements.push(WeylElement { word, matrix: m });
            }
        }
        level = start..elements.len();
    }

    Ok(WeylGroup { elements, index, rank })
}
