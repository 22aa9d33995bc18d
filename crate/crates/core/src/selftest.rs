//! The invariant suite run by `perdomcoh selftest` and by `run --check`.
//!
//! Every check recomputes something the engine already knows by a second
//! route, so a passing suite means the two routes agree on this scenario.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arithmetic_datum::ValidatedDatum;
use crate::catalog::{catalog, fixture, render_fixture, STANDARD};
use crate::cohomology_engine::Engine;
use crate::error::Result;
use crate::lattice_roots::DEFAULT_CAP;
use crate::rational::{is_nonnegative, Rat};
use crate::rep_k_group::{expand_v, ext_dimension, induced_as_steinberg, Subset};

/// Groups at most this large get the element-by-element checks.
const ELEMENTWISE_LIMIT: usize = 50_000;
/// Subset scans and Möbius inversion run up to this many relative roots.
const SUBSET_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &str, failures: Vec<String>, ok_detail: String) -> Self {
        let passed = failures.is_empty();
        let detail = if passed {
            ok_detail
        } else {
            let shown: Vec<_> = failures.iter().take(3).cloned().collect();
            let more = failures.len().saturating_sub(3);
            let mut d = shown.join("; ");
            if more > 0 {
                write!(d, "; and {more} more").unwrap();
            }
            d
        };
        Self { name: name.into(), passed, detail }
    }

    fn skipped(name: &str, why: String) -> Self {
        Self { name: name.into(), passed: true, detail: format!("skipped: {why}") }
    }
}

/// Positive coroots as the `W`-orbit of the simple coroots with non-negative
/// simple-coroot coefficients.
fn positive_coroots(engine: &Engine) -> Vec<Vec<Rat>> {
    let rd = engine.datum().root_datum();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for w in engine.weyl().elements() {
        for i in 0..rd.rank() {
            let v = w.apply(&rd.simple_coroot(i));
            let coeffs = rd.coroot_coefficients(&v).expect("coroots lie in the coroot span");
            if is_nonnegative(&coeffs) && seen.insert(v.clone()) {
                out.push(v);
            }
        }
    }
    out
}

fn is_negative_coroot(engine: &Engine, v: &[Rat]) -> bool {
    let coeffs = engine.datum().root_datum().coroot_coefficients(v).expect("in the coroot span");
    coeffs.iter().all(|c| !c.is_positive())
}

fn length_axioms(engine: &Engine) -> CheckOutcome {
    let w = engine.weyl();
    if w.len() > ELEMENTWISE_LIMIT {
        return CheckOutcome::skipped("length_axioms", format!("|W| = {} exceeds {ELEMENTWISE_LIMIT}", w.len()));
    }
    let positive = positive_coroots(engine);
    let mut failures = Vec::new();
    for e in w.elements() {
        let inversions = positive.iter().filter(|b| is_negative_coroot(engine, &e.apply(b))).count();
        if inversions != e.length() || e.word().len() != e.length() {
            failures.push(format!("{e}: word length {}, inversions {inversions}", e.length()));
        }
    }
    let expected = positive.len();
    if w.longest_length() != expected {
        failures.push(format!("longest element has length {}, |Φ+| = {expected}", w.longest_length()));
    }
    CheckOutcome::new(
        "length_axioms",
        failures,
        format!("l(w) = #inverted positive coroots for all {} elements; |Φ+| = {expected}", w.len()),
    )
}

fn palindromic(v: &[usize]) -> bool {
    v.iter().eq(v.iter().rev())
}

fn length_palindromic(engine: &Engine) -> CheckOutcome {
    let poly = engine.weyl().length_polynomial();
    let failures = if palindromic(&poly) { vec![] } else { vec![format!("{poly:?}")] };
    CheckOutcome::new("weyl_length_palindromic", failures, format!("{poly:?}"))
}

fn flag_palindromic(engine: &Engine) -> CheckOutcome {
    let betti = engine
        .y_i_cohomology(Subset::full(engine.delta_len()))
        .expect("Delta is a subset of itself")
        .betti();
    // Odd degrees vanish; compare the even part.
    let even: Vec<usize> = betti.iter().step_by(2).copied().collect();
    let odd_zero = betti.iter().skip(1).step_by(2).all(|&b| b == 0);
    let failures = if palindromic(&even) && odd_zero { vec![] } else { vec![format!("{betti:?}")] };
    CheckOutcome::new("flag_betti_palindromic", failures, format!("{even:?} in even degrees"))
}

fn inner_product_invariance(engine: &Engine) -> CheckOutcome {
    let w = engine.weyl();
    if w.len() > ELEMENTWISE_LIMIT {
        return CheckOutcome::skipped("inner_product_invariance", format!("|W| = {}", w.len()));
    }
    let q = engine.datum().root_datum().ambient().inner_product();
    let failures = w
        .elements()
        .iter()
        .filter(|e| {
            let m = e.matrix().to_rat();
            m.transpose().mul(q).mul(&m) != *q
        })
        .map(|e| e.to_string())
        .collect();
    CheckOutcome::new("inner_product_invariance", failures, format!("(wx, wy) = (x, y) for all {} elements", w.len()))
}

fn galois_length_preservation(engine: &Engine) -> CheckOutcome {
    let w = engine.weyl();
    let action = engine.datum().galois();
    if w.len() > ELEMENTWISE_LIMIT {
        return CheckOutcome::skipped("galois_length_preservation", format!("|W| = {}", w.len()));
    }
    let mut failures = Vec::new();
    for e in w.elements() {
        for k in 1..action.order() {
            match w.position(&action.conjugate(e.matrix(), k)) {
                Some(i) if w.get(i).length() == e.length() => {}
                Some(i) => failures.push(format!("γ^{k}({e}) = {} changes length", w.get(i))),
                None => failures.push(format!("γ^{k}({e}) is not in W")),
            }
        }
    }
    CheckOutcome::new(
        "galois_length_preservation",
        failures,
        format!("generator of order {} on {} elements", action.order(), w.len()),
    )
}

fn kostant_cardinality(engine: &Engine) -> CheckOutcome {
    let k = engine.kostant();
    let (a, b, w) = (k.elements.len(), k.stabilizer.len(), engine.weyl().len());
    let failures = if a * b == w { vec![] } else { vec![format!("{a} * {b} != {w}")] };
    CheckOutcome::new("kostant_cardinality", failures, format!("|W^mu| * |W_mu| = {a} * {b} = {w}"))
}

fn orbit_partition(engine: &Engine) -> CheckOutcome {
    let orbits = engine.orbits();
    let order = engine.datum().galois().order();
    let total: usize = orbits.iter().map(|o| o.size()).sum();
    let mut failures = Vec::new();
    if total != engine.kostant().elements.len() {
        failures.push(format!("orbit sizes sum to {total}, |W^mu| = {}", engine.kostant().elements.len()));
    }
    let mut members: Vec<usize> = orbits.iter().flat_map(|o| o.members.iter().copied()).collect();
    members.sort_unstable();
    let mut kostant = engine.kostant().elements.clone();
    kostant.sort_unstable();
    if members != kostant {
        failures.push("orbits do not partition W^mu".into());
    }
    for (i, o) in orbits.iter().enumerate() {
        if !order.is_multiple_of(o.size()) {
            failures.push(format!("orbit {} has size {} not dividing {order}", engine.orbit_name(i), o.size()));
        }
        if o.members.iter().any(|&m| engine.weyl().get(m).length() != o.length) {
            failures.push(format!("orbit {} mixes lengths", engine.orbit_name(i)));
        }
    }
    CheckOutcome::new("orbit_partition", failures, format!("{} orbits, sizes sum to {total}", orbits.len()))
}

fn representative_independence(engine: &Engine) -> CheckOutcome {
    let d = engine.datum();
    let ambient = d.root_datum().ambient();
    let mu = d.mu().as_rat();
    let omega = &d.inner_form().omega;
    let nu = &d.slope().nu;
    let sign_vector = |w: usize| -> Vec<bool> {
        let wmu = engine.weyl().get(w).apply(&mu);
        omega.iter().map(|om| (ambient.pair(&wmu, om) - ambient.pair(nu, om)).is_positive()).collect()
    };
    let mut failures = Vec::new();
    for (i, o) in engine.orbits().iter().enumerate() {
        let rep = sign_vector(o.representative());
        for &m in &o.members[1..] {
            if sign_vector(m) != rep {
                failures.push(format!("{} vs {}", engine.orbit_name(i), engine.weyl().get(m)));
            }
        }
    }
    CheckOutcome::new("representative_independence", failures, "I_[w] and Omega memberships agree on every member".into())
}

fn omega_monotonicity(engine: &Engine) -> CheckOutcome {
    let n = engine.delta_len();
    if n > SUBSET_LIMIT {
        return CheckOutcome::skipped("omega_monotonicity", format!("|Delta| = {n}"));
    }
    let mut failures = Vec::new();
    let omegas: Vec<HashSet<usize>> = Subset::all(n).map(|s| engine.omega_i(s).into_iter().collect()).collect();
    for s in Subset::all(n) {
        for a in (0..n).filter(|&a| !s.contains(a)) {
            let bigger = s.with(a);
            if !omegas[s.bits() as usize].is_subset(&omegas[bigger.bits() as usize]) {
                failures.push(format!(
                    "Omega_{} not inside Omega_{}",
                    s.display(engine.labels()),
                    bigger.display(engine.labels())
                ));
            }
        }
    }
    if omegas[Subset::full(n).bits() as usize].len() != engine.orbits().len() {
        failures.push("Omega_Delta is not every orbit".into());
    }
    CheckOutcome::new("omega_monotonicity", failures, format!("checked on all {} subsets", 1u64 << n))
}

fn minimal_subset_scan(engine: &Engine) -> CheckOutcome {
    let n = engine.delta_len();
    if n > SUBSET_LIMIT {
        return CheckOutcome::skipped("minimal_subset_scan", format!("|Delta| = {n}"));
    }
    let failures = (0..engine.orbits().len())
        .filter_map(|o| {
            let formula = engine.minimal_parabolic_subset(o);
            let scan = engine.minimal_parabolic_subset_by_scan(o);
            (scan != Some(formula)).then(|| {
                format!(
                    "{}: formula {} vs scan {:?}",
                    engine.orbit_name(o),
                    formula.display(engine.labels()),
                    scan.map(|s| s.display(engine.labels()))
                )
            })
        })
        .collect();
    CheckOutcome::new("minimal_subset_scan", failures, "per-root formula matches the subset scan".into())
}

fn degree_bounds(engine: &Engine) -> CheckOutcome {
    let summands = engine.compute_cohomology();
    let n = engine.delta_len();
    let max_len = engine.orbits().iter().map(|o| o.length).max().unwrap_or(0);
    let mut failures = Vec::new();
    if summands.len() != engine.orbits().len() {
        failures.push(format!("{} summands for {} orbits", summands.len(), engine.orbits().len()));
    }
    let mut seen: Vec<usize> = summands.iter().map(|s| s.orbit).collect();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != summands.len() {
        failures.push("an orbit contributes twice".into());
    }
    for s in &summands {
        let expected = (-2 * s.tate_twist) as usize + s.parabolic_subset.complement(n).len();
        if s.degree > 2 * max_len || s.degree != expected {
            failures.push(format!("{}: degree {} twist {}", engine.orbit_name(s.orbit), s.degree, s.tate_twist));
        }
    }
    CheckOutcome::new("degree_bounds", failures, format!("degrees within [0, {}]", 2 * max_len))
}

fn page_positions(engine: &Engine) -> CheckOutcome {
    let n = engine.delta_len();
    let mut failures = Vec::new();
    for k in engine.e1_page().entries.keys() {
        if k.p + 1 > n {
            failures.push(format!("E1 entry at p = {}", k.p));
        }
    }
    for k in engine.e2_page().entries.keys() {
        let d = engine.minimal_parabolic_subset(k.orbit).complement(n).len();
        let q = 2 * engine.orbits()[k.orbit].length;
        if k.q != q || (k.p != 0 && k.p + 1 != d) {
            failures.push(format!("E2 entry at ({}, {}) for {}", k.p, k.q, engine.orbit_name(k.orbit)));
        }
    }
    CheckOutcome::new("page_positions", failures, "E1 in 0 <= p < |Delta|, E2 at p in {0, d-1}".into())
}

fn mobius_inversion(engine: &Engine) -> CheckOutcome {
    let n = engine.delta_len().min(SUBSET_LIMIT);
    let mut failures = Vec::new();
    for s in Subset::all(n) {
        let mut total = std::collections::BTreeMap::<u64, i64>::new();
        for (k, a) in expand_v(s, n) {
            for (l, b) in induced_as_steinberg(k, n) {
                *total.entry(l.bits()).or_default() += a * b;
            }
        }
        total.retain(|_, c| *c != 0);
        if total.len() != 1 || total.get(&s.bits()) != Some(&1) {
            failures.push(format!("subset {:#b}", s.bits()));
        }
    }
    CheckOutcome::new("mobius_inversion", failures, format!("identity on the subset lattice of size {}", 1u64 << n))
}

fn ext_symmetry(engine: &Engine) -> CheckOutcome {
    let n = engine.delta_len().min(6);
    let r = engine.center_rank();
    let mut failures = Vec::new();
    for a in Subset::all(n) {
        for b in Subset::all(n) {
            for i in 0..=n + r + 1 {
                if ext_dimension(a, b, i, r) != ext_dimension(b, a, i, r) {
                    failures.push(format!("asymmetric at {:#b}, {:#b}, {i}", a.bits(), b.bits()));
                }
            }
            if ext_dimension(a, b, r + 1, r) != 0 {
                failures.push(format!("Ext^{} nonzero", r + 1));
            }
        }
    }
    CheckOutcome::new("ext_symmetry", failures, format!("symmetric, vanishing above degree {r}"))
}

/// Structural invariants of one scenario; the LES, row-Euler and splitting
/// checks are reported separately.
pub fn invariant_suite(engine: &Engine) -> Vec<CheckOutcome> {
    vec![
        length_axioms(engine),
        length_palindromic(engine),
        flag_palindromic(engine),
        inner_product_invariance(engine),
        galois_length_preservation(engine),
        kostant_cardinality(engine),
        orbit_partition(engine),
        representative_independence(engine),
        omega_monotonicity(engine),
        minimal_subset_scan(engine),
        degree_bounds(engine),
        page_positions(engine),
        mobius_inversion(engine),
        ext_symmetry(engine),
    ]
}

/// LES, row-Euler and splitting verdicts, in the shape of [`CheckOutcome`].
pub fn theorem_checks(engine: &Engine) -> Vec<CheckOutcome> {
    let labels = engine.labels();
    let les = engine.les_consistency();
    let les_detail = if les.passed() {
        format!(
            "chi(flag) - chi_c - chi(Y) = 0 over {} + {} + {} terms",
            les.flag.len(),
            les.period_domain.len(),
            les.complement.len()
        )
    } else {
        format!("residual {}", les.residual.display(labels))
    };
    let rows = engine.euler_conservation();
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("orbit {} row q = {}", engine.orbit_name(r.orbit), r.q))
        .collect();
    let splitting = crate::rep_k_group::splitting_check(&engine.compute_cohomology(), labels, engine.center_rank());
    let split_bad: Vec<String> = splitting
        .pairs
        .iter()
        .filter(|p| !p.passed)
        .map(|p| format!("{} / {}: gap {}, ext1 {}", p.orbits[0], p.orbits[1], p.size_gap, p.ext1))
        .collect();
    vec![
        CheckOutcome { name: "les_identity".into(), passed: les.passed(), detail: les_detail },
        CheckOutcome::new("row_euler_conservation", bad, format!("{} (orbit, row) pairs", rows.len())),
        CheckOutcome::new("splitting", split_bad, format!("{} same-degree pairs with different lengths", splitting.pairs.len())),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioOutcome {
    pub scenario: String,
    pub checks: Vec<CheckOutcome>,
}

impl ScenarioOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Builds the engine for a catalog scenario.
pub fn engine_for(name: &str) -> Result<Engine> {
    let config = catalog(name)?;
    let datum = ValidatedDatum::new(config.to_datum()?)?;
    Engine::new(datum, DEFAULT_CAP)
}

fn fixture_check(name: &str) -> Result<CheckOutcome> {
    let rendered = render_fixture(name)?;
    let failures = match fixture(name) {
        None => vec!["no fixture recorded".into()],
        Some(f) if f == rendered => vec![],
        Some(f) => {
            let line = f.lines().zip(rendered.lines()).position(|(a, b)| a != b).unwrap_or_else(|| f.lines().count().min(rendered.lines().count()));
            vec![format!("report differs from the fixture at line {}", line + 1)]
        }
    };
    Ok(CheckOutcome::new("fixture_reproduced", failures, format!("{} bytes, identical", rendered.len())))
}

/// Runs every check on every standard scenario, including byte-for-byte
/// reproduction of its fixture.
pub fn run_selftest() -> Result<Vec<ScenarioOutcome>> {
    STANDARD
        .iter()
        .map(|&name| {
            let engine = engine_for(name)?;
            let mut checks = theorem_checks(&engine);
            checks.extend(invariant_suite(&engine));
            checks.push(fixture_check(name)?);
            Ok(ScenarioOutcome { scenario: name.into(), checks })
        })
        .collect()
}
