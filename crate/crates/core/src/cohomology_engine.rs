//! Kostant representatives, Galois orbits, the sets `Ω_I` and `I_[w]`, the
//! cohomology of the strata `Y_I`, the `E_1`/`E_2` pages of the spectral
//! sequence of the fundamental complex, and the assembled cohomology of the
//! period domain.
//!
//! Everything is computed once in [`Engine::new`]; the remaining methods are
//! cheap views over the cached orbit data.

use std::collections::{BTreeMap, HashMap};

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arithmetic_datum::ValidatedDatum;
use crate::error::{Error, Result};
use crate::lattice_roots::{enumerate_weyl, format_word, WeylGroup};
#[cfg(feature = "parallel")]
use crate::par::*;
use crate::rational::Rat;
use crate::rep_k_group::{
    GaloisSymbol, RepSymbol, Subset, VirtualGradedRep, VirtualRep,
};
use crate::{maybe_into_par_iter, maybe_par_iter};

/// `W^μ`: one minimal-length element per coset `w W_μ`, as indices into the
/// enumerated Weyl group, in canonical order.
#[derive(Clone, Debug)]
pub struct KostantSet {
    pub elements: Vec<usize>,
    pub stabilizer: Vec<usize>,
}

/// Minimal-length coset representatives for the stabilizer of `mu`.
pub fn kostant_representatives(weyl: &WeylGroup, mu: &[i64]) -> KostantSet {
    let images: Vec<Vec<i64>> =
        maybe_par_iter!(weyl.elements()).map(|w| w.matrix().apply_int(mu)).collect();
    let mut first: HashMap<&[i64], usize> = HashMap::new();
    let mut elements = Vec::new();
    let mut stabilizer = Vec::new();
    for (idx, image) in images.iter().enumerate() {
        if image.as_slice() == mu {
            stabilizer.push(idx);
        }
        match first.get(image.as_slice()) {
            None => {
                first.insert(image, idx);
                elements.push(idx);
            }
            Some(&rep) => assert!(
                weyl.get(rep).length() < weyl.get(idx).length(),
                "two minimal-length elements {} and {} in one coset",
                weyl.get(rep),
                weyl.get(idx)
            ),
        }
    }
    KostantSet { elements, stabilizer }
}

/// An orbit `[w]` of `Γ` on `W^μ`.
#[derive(Clone, Debug)]
pub struct GaloisOrbit {
    /// Indices into the Weyl group, canonical representative first.
    pub members: Vec<usize>,
    pub length: usize,
}

impl GaloisOrbit {
    pub fn representative(&self) -> usize {
        self.members[0]
    }

    /// `dim ind_[w]`.
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Partitions `W^μ` into orbits of `w ↦ γ w γ^{-1}`.
pub fn galois_orbits(
    weyl: &WeylGroup,
    kostant: &KostantSet,
    action: &crate::arithmetic_datum::GaloisAction,
) -> Result<Vec<GaloisOrbit>> {
    let position: HashMap<usize, usize> =
        kostant.elements.iter().enumerate().map(|(k, &w)| (w, k)).collect();
    let mut assigned = vec![false; kostant.elements.len()];
    let mut orbits = Vec::new();
    for (k, &w) in kostant.elements.iter().enumerate() {
        if assigned[k] {
            continue;
        }
        let mut members = Vec::new();
        for power in 0..action.order() {
            let conj = action.conjugate(weyl.get(w).matrix(), power);
            let idx = weyl.position(&conj).ok_or_else(|| {
                Error::ActionNotStable(format!("conjugate of {} is not in W", weyl.get(w)))
            })?;
            let slot = *position.get(&idx).ok_or_else(|| {
                Error::ActionNotStable(format!(
                    "conjugate {} of {} is not a Kostant representative",
                    weyl.get(idx),
                    weyl.get(w)
                ))
            })?;
            if !assigned[slot] {
                assigned[slot] = true;
                members.push(idx);
            }
        }
        members.sort_by(|a, b| weyl.get(*a).sort_key().cmp(&weyl.get(*b).sort_key()));
        let length = weyl.get(w).length();
        assert!(members.iter().all(|&m| weyl.get(m).length() == length));
        assert_eq!(action.order() % members.len(), 0, "orbit size divides the group order");
        orbits.push(GaloisOrbit { members, length });
    }
    Ok(orbits)
}

/// One summand `v_{P_I} ⊗ ind_[w] {-l} [-|Δ∖I|]` of the cohomology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologySummand {
    pub orbit: usize,
    pub orbit_word: Vec<u8>,
    pub length: usize,
    pub parabolic_subset: Subset,
    pub degree: usize,
    pub tate_twist: i64,
    pub galois_dim: usize,
}

impl CohomologySummand {
    pub fn steinberg(&self, delta_len: usize) -> RepSymbol {
        RepSymbol::steinberg(
            self.parabolic_subset,
            delta_len,
            GaloisSymbol { word: self.orbit_word.clone(), dim: self.galois_dim },
            self.tate_twist,
        )
    }
}

/// A class `ind_[w] {-l}` in the cohomology of a stratum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisClass {
    pub orbit: String,
    pub degree: usize,
    pub twist: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumCohomology {
    pub subset: Vec<String>,
    /// `I = Δ`: the whole flag variety, outside the range `I ⊊ Δ` where the
    /// stratum formula is a theorem.
    pub extension: bool,
    pub classes: Vec<GaloisClass>,
}

impl StratumCohomology {
    /// Betti numbers `dim H^d` for `d = 0..=max degree`.
    pub fn betti(&self) -> Vec<usize> {
        let top = self.classes.iter().map(|c| c.degree).max().map_or(0, |d| d + 1);
        let mut b = vec![0; top];
        for c in &self.classes {
            b[c.degree] += c.dim;
        }
        b
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PageKey {
    pub p: usize,
    pub q: usize,
    pub orbit: usize,
}

/// Entries of a spectral-sequence page, split by orbit subcomplex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpectralPage {
    pub entries: BTreeMap<PageKey, VirtualRep>,
}

impl SpectralPage {
    fn add(&mut self, key: PageKey, symbol: RepSymbol) {
        let slot = self.entries.entry(key).or_default();
        slot.add_token(symbol, 1);
        if slot.is_zero() {
            self.entries.remove(&key);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `E^{p,q}` summed over orbits.
    pub fn total(&self, p: usize, q: usize) -> VirtualRep {
        let mut out = VirtualRep::new();
        for (k, r) in &self.entries {
            if k.p == p && k.q == q {
                out.add_scaled(r, 1);
            }
        }
        out
    }

    /// `Σ_p (-1)^p [E^{p,q}]` restricted to one orbit.
    pub fn row_euler(&self, orbit: usize, q: usize) -> VirtualRep {
        let mut out = VirtualRep::new();
        for (k, r) in &self.entries {
            if k.orbit == orbit && k.q == q {
                out.add_scaled(r, if k.p % 2 == 0 { 1 } else { -1 });
            }
        }
        out
    }

    /// Regroups the page by total degree `p + q`.
    pub fn by_total_degree(&self) -> VirtualGradedRep {
        let mut out = VirtualGradedRep::new();
        for (k, r) in &self.entries {
            for (s, m) in r.iter() {
                out.add_token(k.p + k.q, s.clone(), m);
            }
        }
        out
    }
}

/// Result of the long-exact-sequence identity in the Grothendieck group.
#[derive(Clone, Debug)]
pub struct LesReport {
    pub flag: VirtualRep,
    pub period_domain: VirtualRep,
    pub complement: VirtualRep,
    /// `χ(flag) - χ_c(period domain) - χ(Y)` after expanding every `v`.
    pub residual: VirtualRep,
}

impl LesReport {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

/// One row of the `E_1 → E_2` Euler-characteristic comparison.
#[derive(Clone, Debug)]
pub struct EulerRow {
    pub orbit: usize,
    pub q: usize,
    pub e1: VirtualRep,
    pub e2: VirtualRep,
    pub passed: bool,
}

/// Cached combinatorics of a validated datum.
#[derive(Debug)]
pub struct Engine {
    datum: ValidatedDatum,
    weyl: WeylGroup,
    kostant: KostantSet,
    orbits: Vec<GaloisOrbit>,
    /// `(wμ, ω_α) - (ν, ω_α)` for each orbit's representative and each `α`.
    excess: Vec<Vec<Rat>>,
}

impl Engine {
    pub fn new(datum: ValidatedDatum, cap: usize) -> Result<Self> {
        let weyl = enumerate_weyl(datum.root_datum(), cap)?;
        let kostant = kostant_representatives(&weyl, &datum.mu().mu);
        let orbits = galois_orbits(&weyl, &kostant, datum.galois())?;

        let ambient = datum.root_datum().ambient();
        let mu = datum.mu().as_rat();
        let omega = &datum.inner_form().omega;
        let nu_pairings: Vec<Rat> = omega.iter().map(|w| ambient.pair(&datum.slope().nu, w)).collect();
        let excess_of = |w: usize| -> Vec<Rat> {
            let wmu = weyl.get(w).apply(&mu);
            omega.iter().zip(&nu_pairings).map(|(om, nu)| ambient.pair(&wmu, om) - nu).collect()
        };
        let per_orbit: Vec<Result<Vec<Rat>>> = maybe_par_iter!(orbits)
            .map(|o| {
                let rep = excess_of(o.representative());
                for &m in &o.members[1..] {
                    let other = excess_of(m);
                    let same = rep.iter().zip(&other).all(|(a, b)| a.is_positive() == b.is_positive());
                    if !same {
                        return Err(Error::ActionNotStable(format!(
                            "pairings of {} and {} disagree",
                            weyl.get(o.representative()),
                            weyl.get(m)
                        )));
                    }
                }
                Ok(rep)
            })
            .collect();
        let excess = per_orbit.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(Self { datum, weyl, kostant, orbits, excess })
    }

    pub fn datum(&self) -> &ValidatedDatum {
        &self.datum
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn kostant(&self) -> &KostantSet {
        &self.kostant
    }

    pub fn orbits(&self) -> &[GaloisOrbit] {
        &self.orbits
    }

    pub fn delta_len(&self) -> usize {
        self.datum.inner_form().delta_len()
    }

    pub fn labels(&self) -> &[String] {
        &self.datum.inner_form().delta
    }

    pub fn center_rank(&self) -> usize {
        self.datum.inner_form().center_rank
    }

    pub fn orbit_word(&self, orbit: usize) -> &[u8] {
        self.weyl.get(self.orbits[orbit].representative()).word()
    }

    pub fn orbit_name(&self, orbit: usize) -> String {
        format_word(self.orbit_word(orbit))
    }

    pub fn galois_symbol(&self, orbit: usize) -> GaloisSymbol {
        GaloisSymbol { word: self.orbit_word(orbit).to_vec(), dim: self.orbits[orbit].size() }
    }

    /// The pairing excesses `(wμ, ω_α) - (ν, ω_α)` of an orbit.
    pub fn excess(&self, orbit: usize) -> &[Rat] {
        &self.excess[orbit]
    }

    /// `[w] ∈ Ω_I`: the strict inequality holds for every `α ∉ I`.
    pub fn in_omega(&self, orbit: usize, subset: Subset) -> bool {
        (0..self.delta_len())
            .filter(|&a| !subset.contains(a))
            .all(|a| self.excess[orbit][a].is_positive())
    }

    /// `Ω_I` as orbit indices in canonical order.
    pub fn omega_i(&self, subset: Subset) -> Vec<usize> {
        (0..self.orbits.len()).filter(|&o| self.in_omega(o, subset)).collect()
    }

    /// `I_[w] = {α : (wμ, ω_α) ≤ (ν, ω_α)}`.
    pub fn minimal_parabolic_subset(&self, orbit: usize) -> Subset {
        Subset::from_indices((0..self.delta_len()).filter(|&a| !self.excess[orbit][a].is_positive()))
    }

    /// `I_[w]` from its definition: the least `I` with `[w] ∈ Ω_I`, found by
    /// scanning all subsets. `None` if the admissible subsets have no least
    /// element.
    pub fn minimal_parabolic_subset_by_scan(&self, orbit: usize) -> Option<Subset> {
        let n = self.delta_len();
        let admissible: Vec<Subset> = Subset::all(n).filter(|&s| self.in_omega(orbit, s)).collect();
        let least = admissible.iter().copied().reduce(Subset::intersection)?;
        admissible.contains(&least).then_some(least)
    }

    /// The cohomology of the period domain, one summand per orbit, sorted by
    /// `(degree, twist, representative)`.
    pub fn compute_cohomology(&self) -> Vec<CohomologySummand> {
        let n = self.delta_len();
        let mut out: Vec<CohomologySummand> = maybe_into_par_iter!(0..self.orbits.len())
            .map(|o| {
                let subset = self.minimal_parabolic_subset(o);
                let l = self.orbits[o].length;
                CohomologySummand {
                    orbit: o,
                    orbit_word: self.orbit_word(o).to_vec(),
                    length: l,
                    parabolic_subset: subset,
                    degree: 2 * l + subset.complement(n).len(),
                    tate_twist: -(l as i64),
                    galois_dim: self.orbits[o].size(),
                }
            })
            .collect();
        out.sort_by(|a, b| {
            (a.degree, a.tate_twist, a.length, &a.orbit_word)
                .cmp(&(b.degree, b.tate_twist, b.length, &b.orbit_word))
        });
        out
    }

    /// `H^*_c(Y_I) = ⊕_{[w] ∈ Ω_I} ind_[w] {-l[w]}`. `I = Δ` is accepted and
    /// flagged as the flag-variety extension.
    pub fn y_i_cohomology(&self, subset: Subset) -> Result<StratumCohomology> {
        let n = self.delta_len();
        if !subset.is_subset_of(Subset::full(n)) {
            return Err(Error::Config(format!("subset {:#b} is not contained in Delta", subset.bits())));
        }
        let classes = self
            .omega_i(subset)
            .into_iter()
            .map(|o| GaloisClass {
                orbit: self.orbit_name(o),
                degree: 2 * self.orbits[o].length,
                twist: -(self.orbits[o].length as i64),
                dim: self.orbits[o].size(),
            })
            .collect();
        Ok(StratumCohomology {
            subset: subset.labels(self.labels()),
            extension: subset == Subset::full(n),
            classes,
        })
    }

    /// `E_1^{p,q} = ⊕_{|Δ∖I| = p+1} ⊕_{[w] ∈ Ω_I} i_{P_I} ⊗ ind_[w] (-l)` at
    /// `q = 2 l([w])`, assembled from the sets `Ω_I` directly.
    pub fn e1_page(&self) -> SpectralPage {
        let n = self.delta_len();
        let full = Subset::full(n);
        let subsets: Vec<Subset> = Subset::all(n).filter(|&s| s != full).collect();
        let per_subset: Vec<Vec<(PageKey, RepSymbol)>> = maybe_par_iter!(subsets)
            .map(|&s| {
                let p = s.complement(n).len() - 1;
                self.omega_i(s)
                    .into_iter()
                    .map(|o| {
                        let l = self.orbits[o].length;
                        (
                            PageKey { p, q: 2 * l, orbit: o },
                            RepSymbol::induced(s, self.galois_symbol(o), -(l as i64)),
                        )
                    })
                    .collect()
            })
            .collect();
        let mut page = SpectralPage::default();
        for (key, sym) in per_subset.into_iter().flatten() {
            page.add(key, sym);
        }
        page
    }

    /// The closed form of `E_2` per orbit, with `d = |Δ∖I_[w]|`: nothing for
    /// `d = 0`; `i_{P_{I_[w]}}` at `p = 0` for `d = 1`; `i_J` at `p = 0` and
    /// `v_{P_{I_[w]}}` at `p = d - 1` for `d > 1`. All in row `q = 2 l([w])`.
    pub fn e2_page(&self) -> SpectralPage {
        let n = self.delta_len();
        let mut page = SpectralPage::default();
        for o in 0..self.orbits.len() {
            let subset = self.minimal_parabolic_subset(o);
            let d = subset.complement(n).len();
            let l = self.orbits[o].length;
            let (q, twist, g) = (2 * l, -(l as i64), self.galois_symbol(o));
            match d {
                0 => {}
                1 => page.add(PageKey { p: 0, q, orbit: o }, RepSymbol::induced(subset, g, twist)),
                _ => {
                    page.add(
                        PageKey { p: 0, q, orbit: o },
                        RepSymbol::induced(Subset::full(n), g.clone(), twist),
                    );
                    page.add(
                        PageKey { p: d - 1, q, orbit: o },
                        RepSymbol::steinberg(subset, n, g, twist),
                    );
                }
            }
        }
        page
    }

    /// Compares `Σ_p (-1)^p` of `E_1` and `E_2` for every orbit subcomplex and
    /// every row, after expanding Steinberg symbols.
    pub fn euler_conservation(&self) -> Vec<EulerRow> {
        let n = self.delta_len();
        let (e1, e2) = (self.e1_page(), self.e2_page());
        let mut rows: Vec<(usize, usize)> =
            e1.entries.keys().chain(e2.entries.keys()).map(|k| (k.orbit, k.q)).collect();
        rows.sort_unstable();
        rows.dedup();
        rows.into_iter()
            .map(|(orbit, q)| {
                let a = e1.row_euler(orbit, q).expand(n);
                let b = e2.row_euler(orbit, q).expand(n);
                let passed = a == b;
                EulerRow { orbit, q, e1: a, e2: b, passed }
            })
            .collect()
    }

    /// Cohomology of the flag variety: `⊕_[w] i_J ⊗ ind_[w] {-l}`.
    pub fn flag_cohomology(&self) -> VirtualGradedRep {
        let full = Subset::full(self.delta_len());
        let mut out = VirtualGradedRep::new();
        for (o, orbit) in self.orbits.iter().enumerate() {
            let l = orbit.length;
            out.add_token(2 * l, RepSymbol::induced(full, self.galois_symbol(o), -(l as i64)), 1);
        }
        out
    }

    /// The computed cohomology as a graded virtual representation.
    pub fn period_domain_cohomology(&self) -> VirtualGradedRep {
        let n = self.delta_len();
        let mut out = VirtualGradedRep::new();
        for s in self.compute_cohomology() {
            out.add_token(s.degree, s.steinberg(n), 1);
        }
        out
    }

    /// `χ(flag) = χ_c(period domain) + χ(Y)`, with `χ(Y)` read off the `E_2`
    /// page regrouped by total degree.
    pub fn les_consistency(&self) -> LesReport {
        let n = self.delta_len();
        let flag = self.flag_cohomology().euler().expand(n);
        let period_domain = self.period_domain_cohomology().euler().expand(n);
        let complement = self.e2_page().by_total_degree().euler().expand(n);
        let residual = &(&flag - &period_domain) - &complement;
        LesReport { flag, period_domain, complement, residual }
    }
}
