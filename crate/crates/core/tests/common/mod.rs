//! Brute-force oracle for the Weyl group combinatorics.
//!
//! Nothing here calls the engine's enumeration, coset or orbit code. The
//! group is the closure of the simple reflection matrices, lengths are
//! inversion counts over positive coroots grown by root strings, Kostant
//! representatives are picked by scanning every coset, orbits come from
//! explicit conjugation, and `Ω_I`, `I_[w]` are found by scanning every subset
//! of `Δ` for every orbit member.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use perdomcoh_core::arithmetic_datum::{PeriodDatum, ValidatedDatum};
use perdomcoh_core::catalog;
use perdomcoh_core::cohomology_engine::Engine;
use perdomcoh_core::config::{ActionConfig, InnerFormConfig, Options, ScenarioConfig, SlopeConfig, CONFIG_SCHEMA};
use perdomcoh_core::lattice_roots::{build_root_datum, GroupType, DEFAULT_CAP};
use perdomcoh_core::rational::{frac, rat, JsonRat, Rat};
use perdomcoh_core::report::SummandRow;
use perdomcoh_core::rep_k_group::Subset;

pub type Mat = Vec<Vec<i64>>;

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn mat_vec(a: &Mat, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// The Weyl group as a set of matrices, with inversion-count lengths.
pub struct Group {
    pub gens: Vec<Mat>,
    pub elements: Vec<Mat>,
    pub length: HashMap<Mat, usize>,
    pub positive_coroots: Vec<Vec<i64>>,
}

impl Group {
    pub fn new(roots: &[Vec<i64>], coroots: &[Vec<i64>], n: usize) -> Self {
        // s_i(x) = x - <x, α_i> α_i^∨, so column j is e_j - α_i[j] α_i^∨.
        let gens: Vec<Mat> = roots
            .iter()
            .zip(coroots)
            .map(|(a, c)| (0..n).map(|r| (0..n).map(|j| i64::from(r == j) - a[j] * c[r]).collect()).collect())
            .collect();
        let mut seen: HashSet<Mat> = HashSet::new();
        let mut queue = VecDeque::from([identity(n)]);
        seen.insert(identity(n));
        let mut elements = Vec::new();
        while let Some(m) = queue.pop_front() {
            for g in &gens {
                let next = mat_mul(g, &m);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
            elements.push(m);
        }
        // Positive coroots by root strings: from β^∨, s_i β^∨ is a larger
        // positive coroot whenever <α_i, β^∨> < 0.
        let mut pos: BTreeSet<Vec<i64>> = coroots.iter().cloned().collect();
        let mut frontier: Vec<Vec<i64>> = coroots.to_vec();
        while let Some(b) = frontier.pop() {
            for (a, c) in roots.iter().zip(coroots) {
                let p = dot(a, &b);
                if p < 0 {
                    let next: Vec<i64> = b.iter().zip(c).map(|(x, y)| x - p * y).collect();
                    if pos.insert(next.clone()) {
                        frontier.push(next);
                    }
                }
            }
        }
        let positive_coroots: Vec<Vec<i64>> = pos.into_iter().collect();
        let negatives: HashSet<Vec<i64>> =
            positive_coroots.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
        let length = elements
            .iter()
            .map(|w| {
                let l = positive_coroots.iter().filter(|b| negatives.contains(&mat_vec(w, b))).count();
                (w.clone(), l)
            })
            .collect();
        Self { gens, elements, length, positive_coroots }
    }

    pub fn len_of(&self, w: &Mat) -> usize {
        self.length[w]
    }

    /// Lexicographically least reduced word, 1-based, via left descents.
    pub fn lexmin_word(&self, w: &Mat) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = w.clone();
        while self.len_of(&cur) > 0 {
            let l = self.len_of(&cur);
            let i = (0..self.gens.len())
                .find(|&i| self.len_of(&mat_mul(&self.gens[i], &cur)) < l)
                .expect("a non-identity element has a left descent");
            word.push(i + 1);
            cur = mat_mul(&self.gens[i], &cur);
        }
        word
    }
}

pub fn word_string(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    word.iter().map(|i| format!("s{i}")).collect()
}

fn pair(q: &[Vec<Rat>], x: &[Rat], y: &[Rat]) -> Rat {
    let mut s = rat(0);
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            s += xi * &q[i][j] * yj;
        }
    }
    s
}

fn to_rat(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

/// Everything the oracle derives for one datum.
pub struct OracleResult {
    pub group: Group,
    pub kostant: Vec<Mat>,
    /// Orbits as sorted member lists; the first member is the canonical one.
    pub orbits: Vec<Vec<Mat>>,
    /// `I_[w]` per orbit, as a set of indices.
    pub minimal: Vec<BTreeSet<usize>>,
    /// `Ω_I` keyed by subset bits, as orbit indices.
    pub omega: BTreeMap<u64, BTreeSet<usize>>,
}

pub fn oracle(datum: &PeriodDatum) -> OracleResult {
    let rd = datum.root_datum();
    let n = rd.dimension();
    let group = Group::new(rd.simple_roots(), rd.simple_coroots(), n);
    let mu = &datum.mu().mu;

    // Kostant representatives: scan every coset of the stabiliser.
    let mut cosets: BTreeMap<Vec<i64>, Vec<Mat>> = BTreeMap::new();
    for w in &group.elements {
        cosets.entry(mat_vec(w, mu)).or_default().push(w.clone());
    }
    let mut kostant = Vec::new();
    for members in cosets.values() {
        let min = members.iter().map(|w| group.len_of(w)).min().unwrap();
        let minimal: Vec<&Mat> = members.iter().filter(|w| group.len_of(w) == min).collect();
        assert_eq!(minimal.len(), 1, "minimal length element of a coset is unique");
        kostant.push(minimal[0].clone());
    }

    // Orbits of w ↦ γ w γ^{-1}, with γ^{-1} = γ^{order-1}.
    let gamma: Mat = datum.galois().generator().to_rows();
    let order = datum.galois().order();
    let mut gamma_inv = identity(n);
    for _ in 1..order {
        gamma_inv = mat_mul(&gamma_inv, &gamma);
    }
    let kostant_set: HashSet<&Mat> = kostant.iter().collect();
    let key = |w: &Mat| (group.len_of(w), group.lexmin_word(w));
    let mut done: HashSet<Mat> = HashSet::new();
    let mut orbits: Vec<Vec<Mat>> = Vec::new();
    for w in &kostant {
        if done.contains(w) {
            continue;
        }
        let mut members = vec![w.clone()];
        let mut cur = w.clone();
        loop {
            cur = mat_mul(&mat_mul(&gamma, &cur), &gamma_inv);
            if cur == *w {
                break;
            }
            assert!(kostant_set.contains(&cur), "conjugation leaves W^mu");
            if !members.contains(&cur) {
                members.push(cur.clone());
            }
        }
        members.sort_by_key(|m| key(m));
        done.extend(members.iter().cloned());
        orbits.push(members);
    }
    orbits.sort_by_key(|o| key(&o[0]));

    // Ω_I and I_[w] by scanning subsets, evaluating every member.
    let q = rd.ambient().inner_product().to_rows();
    let omega_vecs = &datum.inner_form().omega;
    let nu = &datum.slope().nu;
    let d = omega_vecs.len();
    let holds = |w: &Mat, a: usize| {
        let wmu = to_rat(&mat_vec(w, mu));
        pair(&q, &wmu, &omega_vecs[a]) > pair(&q, nu, &omega_vecs[a])
    };
    let mut omega: BTreeMap<u64, BTreeSet<usize>> = BTreeMap::new();
    for bits in 0..(1u64 << d) {
        let mut set = BTreeSet::new();
        for (o, members) in orbits.iter().enumerate() {
            let verdicts: Vec<bool> = members
                .iter()
                .map(|w| (0..d).filter(|a| bits & (1 << a) == 0).all(|a| holds(w, a)))
                .collect();
            assert!(verdicts.iter().all(|&v| v == verdicts[0]), "membership depends on the representative");
            if verdicts[0] {
                set.insert(o);
            }
        }
        omega.insert(bits, set);
    }
    let minimal = (0..orbits.len())
        .map(|o| {
            let admissible: Vec<u64> = omega.iter().filter(|(_, s)| s.contains(&o)).map(|(&b, _)| b).collect();
            let least: Vec<u64> = admissible
                .iter()
                .copied()
                .filter(|&b| admissible.iter().all(|&c| c & b == b))
                .collect();
            assert_eq!(least.len(), 1, "a unique minimal admissible subset");
            (0..d).filter(|a| least[0] & (1 << a) != 0).collect()
        })
        .collect();
    OracleResult { group, kostant, orbits, minimal, omega }
}

/// Summand rows computed from the oracle alone.
pub fn oracle_rows(datum: &PeriodDatum) -> Vec<SummandRow> {
    let o = oracle(datum);
    let labels = &datum.inner_form().delta;
    let d = labels.len();
    let mut rows: Vec<(usize, i64, usize, Vec<usize>, SummandRow)> = o
        .orbits
        .iter()
        .zip(&o.minimal)
        .map(|(members, min)| {
            let l = o.group.len_of(&members[0]);
            let names: Vec<String> = min.iter().map(|&a| labels[a].clone()).collect();
            let word = o.group.lexmin_word(&members[0]);
            let row = SummandRow {
                degree: 2 * l + d - min.len(),
                tate_twist: -(l as i64),
                steinberg_symbol: format!("v[P_{{{}}}]", names.join(",")),
                parabolic_subset: names,
                galois_orbit_rep: word_string(&word),
                galois_dim: members.len(),
                orbit_length: l,
            };
            (row.degree, row.tate_twist, l, word, row)
        })
        .collect();
    rows.sort_by(|a, b| (a.0, a.1, a.2, &a.3).cmp(&(b.0, b.1, b.2, &b.3)));
    rows.into_iter().map(|r| r.4).collect()
}

fn palindromic(v: &[usize]) -> bool {
    v.iter().eq(v.iter().rev())
}

/// Compares the oracle against the engine on one datum. Returns the number
/// of individual facts compared.
pub fn compare(name: &str, datum: ValidatedDatum) -> Result<usize, String> {
    let o = oracle(&datum);
    let engine = Engine::new(datum.clone(), DEFAULT_CAP).map_err(|e| format!("{name}: {e}"))?;
    let mut facts = 0;
    let fail = |what: &str| Err(format!("{name}: {what}"));

    // Group and length axioms.
    let w = engine.weyl();
    if w.len() != o.group.elements.len() {
        return fail(&format!("|W| = {} vs oracle {}", w.len(), o.group.elements.len()));
    }
    for e in w.elements() {
        let m = e.matrix().to_rows();
        match o.group.length.get(&m) {
            Some(&l) if l == e.length() => facts += 1,
            Some(&l) => return fail(&format!("{e} has length {} vs {l} inversions", e.length())),
            None => return fail(&format!("{e} not in the oracle group")),
        }
        let l = e.length();
        for g in &o.group.gens {
            let sl = o.group.len_of(&mat_mul(g, &m));
            if sl + 1 != l && sl != l + 1 {
                return fail(&format!("l(s w) = {sl} for l(w) = {l}"));
            }
        }
        if e.word_string() != word_string(&o.group.lexmin_word(&m)) {
            return fail(&format!("{e} is not the lexmin reduced word"));
        }
    }
    let longest = o.group.elements.iter().map(|m| o.group.len_of(m)).max().unwrap_or(0);
    if longest != o.group.positive_coroots.len() {
        return fail("longest length differs from the number of positive coroots");
    }

    // Kostant representatives.
    let engine_kostant: BTreeSet<Mat> =
        engine.kostant().elements.iter().map(|&i| w.get(i).matrix().to_rows()).collect();
    let oracle_kostant: BTreeSet<Mat> = o.kostant.iter().cloned().collect();
    if engine_kostant != oracle_kostant {
        return fail("W^mu differs");
    }
    facts += oracle_kostant.len();

    // Orbits, in canonical order with canonical representatives.
    if engine.orbits().len() != o.orbits.len() {
        return fail(&format!("{} orbits vs oracle {}", engine.orbits().len(), o.orbits.len()));
    }
    for (k, (eo, oo)) in engine.orbits().iter().zip(&o.orbits).enumerate() {
        let members: Vec<Mat> = eo.members.iter().map(|&i| w.get(i).matrix().to_rows()).collect();
        if members != *oo {
            return fail(&format!("orbit {k} differs"));
        }
        if engine.orbit_name(k) != word_string(&o.group.lexmin_word(&oo[0])) {
            return fail(&format!("orbit {k} representative word differs"));
        }
        facts += 1;
    }

    // Ω_I for every I, and I_[w].
    for (&bits, set) in &o.omega {
        let engine_set: BTreeSet<usize> = engine.omega_i(Subset::from_bits(bits)).into_iter().collect();
        if engine_set != *set {
            return fail(&format!("Omega for subset {bits:#b} differs"));
        }
        facts += 1;
    }
    for (k, min) in o.minimal.iter().enumerate() {
        let engine_min: BTreeSet<usize> = engine.minimal_parabolic_subset(k).indices().collect();
        if engine_min != *min {
            return fail(&format!("I_[w] differs for orbit {k}"));
        }
        facts += 1;
    }

    // Flag Betti numbers: palindromic and equal to the engine's.
    let mut betti = vec![0usize; 2 * longest + 1];
    for (m, members) in o.orbits.iter().map(|m| (&m[0], m)) {
        betti[2 * o.group.len_of(m)] += members.len();
    }
    while betti.last() == Some(&0) && betti.len() > 1 {
        betti.pop();
    }
    if !palindromic(&betti) {
        return fail(&format!("flag Betti numbers {betti:?} are not palindromic"));
    }
    let engine_betti = engine.y_i_cohomology(Subset::full(engine.delta_len())).unwrap().betti();
    if engine_betti != betti {
        return fail(&format!("flag Betti {engine_betti:?} vs oracle {betti:?}"));
    }

    // The summand table itself.
    let engine_rows: Vec<(usize, i64, Vec<usize>, usize, usize)> = engine
        .compute_cohomology()
        .iter()
        .map(|s| (s.degree, s.tate_twist, s.parabolic_subset.indices().collect(), s.galois_dim, s.length))
        .collect();
    let labels = &datum.inner_form().delta;
    let oracle_summands: Vec<(usize, i64, Vec<usize>, usize, usize)> = oracle_rows(&datum)
        .into_iter()
        .map(|r| {
            let idx = r.parabolic_subset.iter().map(|n| labels.iter().position(|l| l == n).unwrap()).collect();
            (r.degree, r.tate_twist, idx, r.galois_dim, r.orbit_length)
        })
        .collect();
    if engine_rows != oracle_summands {
        return fail("summand table differs");
    }
    facts += engine_rows.len();
    Ok(facts)
}

fn config(name: String, group: GroupType, mu: Vec<i64>, slope: SlopeConfig, inner_form: InnerFormConfig) -> ScenarioConfig {
    ScenarioConfig {
        schema: CONFIG_SCHEMA.into(),
        name,
        group,
        galois: None,
        averaging: None,
        mu,
        slope,
        inner_form,
        options: Options::default(),
    }
}

/// Dominant integral `μ` with entries in `-1..=2`, at most `limit` of them.
fn dominant_mus(group: &GroupType, limit: usize) -> Vec<Vec<i64>> {
    let rd = build_root_datum(group).unwrap();
    let n = rd.dimension();
    let mut out = Vec::new();
    let mut v = vec![-1i64; n];
    loop {
        if rd.simple_roots().iter().all(|a| dot(a, &v) >= 0) {
            out.push(v.clone());
        }
        let mut i = 0;
        while i < n && v[i] == 2 {
            v[i] = -1;
            i += 1;
        }
        if i == n {
            break;
        }
        v[i] += 1;
    }
    out.sort_by_key(|m| (m.iter().map(|x| x.abs()).sum::<i64>(), m.clone()));
    out.truncate(limit);
    out
}

/// Every root datum of the suite has `|W| ≤ 120`.
pub fn oracle_scenarios() -> Vec<ScenarioConfig> {
    let split_groups = vec![
        GroupType::Gl { n: 1 },
        GroupType::Gl { n: 2 },
        GroupType::Gl { n: 3 },
        GroupType::Gl { n: 4 },
        GroupType::Gl { n: 5 },
        GroupType::B { rank: 2 },
        GroupType::B { rank: 3 },
        GroupType::C { rank: 2 },
        GroupType::C { rank: 3 },
        GroupType::D { rank: 3 },
        GroupType::G { rank: 2 },
        GroupType::GSp { g: 1 },
        GroupType::GSp { g: 2 },
        GroupType::GSp { g: 3 },
        GroupType::Product { factors: vec![GroupType::Gl { n: 2 }, GroupType::Gl { n: 3 }] },
        GroupType::Product { factors: vec![GroupType::B { rank: 2 }, GroupType::Gl { n: 2 }] },
    ];
    let mut out = Vec::new();
    for g in &split_groups {
        let n = build_root_datum(g).unwrap().dimension();
        for mu in dominant_mus(g, 12) {
            let zero = SlopeConfig::Explicit { nu: vec![JsonRat(rat(0)); n], s: 1 };
            out.push(config(format!("{} {mu:?}", g.tag()), g.clone(), mu, zero, InnerFormConfig::Split));
        }
    }
    // Non-split inner forms of GL_n: μ with determinant k.
    for n in 2..=5usize {
        for k in 1..n as i64 {
            for mu in dominant_mus(&GroupType::Gl { n }, 400).into_iter().filter(|m| m.iter().sum::<i64>() == k).take(6) {
                out.push(config(
                    format!("GL{n} slope {k}/{n} {mu:?}"),
                    GroupType::Gl { n },
                    mu,
                    SlopeConfig::GlBasic { k },
                    InnerFormConfig::GlBasic { k: None },
                ));
            }
        }
    }
    // Weil restrictions with the factor swap.
    for m in [2usize, 3] {
        let factors = vec![GroupType::Gl { n: m }, GroupType::Gl { n: m }];
        let group = GroupType::Product { factors };
        let perm: Vec<usize> = (0..2 * m).map(|i| (i + m) % (2 * m)).collect();
        let relative_roots: Vec<Vec<JsonRat>> = (0..m - 1)
            .map(|i| {
                let mut v = vec![JsonRat(rat(0)); 2 * m];
                for off in [0, m] {
                    v[off + i] = JsonRat(frac(1, 2));
                    v[off + i + 1] = JsonRat(frac(-1, 2));
                }
                v
            })
            .collect();
        for half in dominant_mus(&GroupType::Gl { n: m }, 6) {
            let mu: Vec<i64> = half.iter().chain(&half).copied().collect();
            let mut c = config(
                format!("Res GL{m} {half:?}"),
                group.clone(),
                mu,
                SlopeConfig::Explicit { nu: vec![JsonRat(rat(0)); 2 * m], s: 1 },
                InnerFormConfig::Explicit {
                    delta: (1..m).map(|i| format!("a{i}")).collect(),
                    relative_roots: relative_roots.clone(),
                    omegas: None,
                    center_rank: 1,
                },
            );
            c.galois = Some(ActionConfig { coordinate_permutation: Some(perm.clone()), matrix: None, order: 2 });
            out.push(c);
        }
    }
    out
}

pub struct SuiteSummary {
    pub scenarios: usize,
    pub facts: usize,
    pub largest_group: usize,
}

/// Runs the oracle against the engine on every suite scenario and on every
/// catalog scenario with `|W| ≤ 120`.
pub fn run_suite() -> Result<SuiteSummary, String> {
    let mut configs = oracle_scenarios();
    configs.extend(catalog::STANDARD.iter().map(|n| catalog::catalog(n).unwrap()));
    let mut summary = SuiteSummary { scenarios: 0, facts: 0, largest_group: 0 };
    for c in configs {
        let datum = c.to_datum().map_err(|e| format!("{}: {e}", c.name))?;
        let Ok(datum) = ValidatedDatum::new(datum) else { continue };
        let size = Group::new(datum.root_datum().simple_roots(), datum.root_datum().simple_coroots(), datum.root_datum().dimension()).elements.len();
        if size > 120 {
            continue;
        }
        summary.facts += compare(&c.name, datum)?;
        summary.scenarios += 1;
        summary.largest_group = summary.largest_group.max(size);
    }
    Ok(summary)
}

/// The `weil_restriction_gl2` summand table, from the oracle alone.
pub fn weil_restriction_rows() -> Vec<SummandRow> {
    let datum = catalog::catalog("weil_restriction_gl2").unwrap().to_datum().unwrap();
    oracle_rows(&datum)
}
