//! The full input of the cohomology formula: a root datum with a finite Galois
//! action, a dominant cocharacter `μ`, a basic slope `ν`, and the relative
//! data of the inner form `J`. Validation never throws; it produces a report,
//! and only a [`ValidatedDatum`] is accepted downstream.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice_roots::{IntMatrix, RootDatum};
use crate::rational::{dot, frac, int_vec, is_integral, rat, scale, sub, zero_vec, Rat, VecDisplay};

/// A finite cyclic group acting on the ambient space through a based
/// automorphism of the root datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisAction {
    generator: IntMatrix,
    order: usize,
}

impl GaloisAction {
    pub fn new(generator: IntMatrix, order: usize) -> Self {
        Self { generator, order }
    }

    pub fn trivial(dimension: usize) -> Self {
        Self { generator: IntMatrix::identity(dimension), order: 1 }
    }

    /// Generator permuting coordinates: coordinate `i` is sent to `perm[i]`.
    pub fn from_coordinate_permutation(perm: &[usize], order: usize) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        let mut m = IntMatrix::identity(n);
        for i in 0..n {
            m[(i, i)] = 0;
        }
        for (i, &j) in perm.iter().enumerate() {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(Error::Config(format!("{perm:?} is not a permutation")));
            }
            m[(j, i)] = 1;
        }
        Ok(Self { generator: m, order })
    }

    pub fn generator(&self) -> &IntMatrix {
        &self.generator
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.generator == IntMatrix::identity(self.generator.size())
    }

    /// `γ^0, γ^1, ..., γ^{e-1}`.
    pub fn elements(&self) -> Vec<IntMatrix> {
        let mut out = Vec::with_capacity(self.order);
        let mut g = IntMatrix::identity(self.generator.size());
        for _ in 0..self.order {
            out.push(g.clone());
            g = g.mul(&self.generator);
        }
        out
    }

    /// `γ^k w γ^{-k}`.
    pub fn conjugate(&self, w: &IntMatrix, k: usize) -> IntMatrix {
        let g = self.generator.pow(k % self.order.max(1));
        let g_inv = self.generator.pow((self.order - k % self.order) % self.order);
        g.mul(w).mul(&g_inv)
    }

    /// Average of the orbit of `v`.
    pub fn average(&self, v: &[Rat]) -> Vec<Rat> {
        let elems = self.elements();
        let total = elems.iter().fold(zero_vec(v.len()), |acc, g| {
            acc.iter().zip(g.apply(v)).map(|(a, b)| a + b).collect()
        });
        scale(&frac(1, elems.len() as i64), &total)
    }

    pub fn fixes(&self, v: &[Rat]) -> bool {
        self.generator.apply(v) == v
    }

    /// Problems with this action as a based automorphism of `datum`.
    fn defects(&self, datum: &RootDatum) -> Vec<String> {
        let mut out = Vec::new();
        let n = datum.dimension();
        if self.generator.size() != n {
            out.push(format!("generator has size {}, expected {n}", self.generator.size()));
            return out;
        }
        if self.order == 0 {
            out.push("order must be positive".into());
            return out;
        }
        if self.generator.pow(self.order) != IntMatrix::identity(n) {
            out.push(format!("generator^{} is not the identity", self.order));
        }
        let coroots = datum.simple_coroots();
        for (i, c) in coroots.iter().enumerate() {
            let image = self.generator.apply_int(c);
            match coroots.iter().position(|d| *d == image) {
                Some(j) => {
                    if self.generator.pull_back(&datum.simple_root(j)) != datum.simple_root(i) {
                        out.push(format!("simple root a{} is not carried to a{}", i + 1, j + 1));
                    }
                }
                None => out.push(format!("simple coroot {} is not sent to a simple coroot", i + 1)),
            }
        }
        let g = self.generator.to_rat();
        let q = datum.ambient().inner_product();
        if g.transpose().mul(q).mul(&g) != *q {
            out.push("generator does not preserve the inner product".into());
        }
        out
    }
}

/// Dominant integral cocharacter `μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocharacterClass {
    pub mu: Vec<i64>,
}

impl CocharacterClass {
    pub fn as_rat(&self) -> Vec<Rat> {
        int_vec(&self.mu)
    }
}

/// Slope `ν` of a basic, decent element together with its decency exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeDatum {
    pub nu: Vec<Rat>,
    pub s: u64,
}

/// Relative data of the inner form `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerFormDatum {
    pub delta: Vec<String>,
    pub relative_roots: Vec<Vec<Rat>>,
    pub omega: Vec<Vec<Rat>>,
    pub center_rank: usize,
}

impl InnerFormDatum {
    pub fn delta_len(&self) -> usize {
        self.delta.len()
    }
}

/// Relative data for `J = G`, `b = 1`.
pub fn builtin_j_split(datum: &RootDatum, galois: &GaloisAction) -> Result<InnerFormDatum> {
    if !galois.is_trivial() {
        return Err(Error::NonTrivialAction);
    }
    let relative_roots: Vec<Vec<Rat>> = (0..datum.rank()).map(|i| datum.simple_root(i)).collect();
    let omega = datum.dual_basis_coweights(&relative_roots)?;
    Ok(InnerFormDatum {
        delta: (1..=datum.rank()).map(|i| format!("a{i}")).collect(),
        relative_roots,
        omega,
        center_rank: datum.central_rank(),
    })
}

/// The basic element of `GL_n` with slope `k/n`: with `k/n = k'/n'` reduced
/// and `m = n/n'`, `J` is `GL_m` over the division algebra of invariant
/// `k'/n'`. Relative simple root `j` averages the difference of two adjacent
/// blocks of `n'` coordinates.
pub fn builtin_j_gl_basic(n: usize, k: i64) -> Result<(SlopeDatum, InnerFormDatum)> {
    if n == 0 {
        return Err(Error::RankZero("GL".into()));
    }
    let n_i = n as i64;
    let block = (n_i / k.gcd(&n_i)) as usize;
    let m = n / block;
    let nu = vec![frac(k, n_i); n];
    let mut relative_roots = Vec::with_capacity(m.saturating_sub(1));
    let mut omega = Vec::with_capacity(m.saturating_sub(1));
    for j in 1..m {
        let mut beta = zero_vec(n);
        for i in (j - 1) * block..j * block {
            beta[i] = frac(1, block as i64);
        }
        for i in j * block..(j + 1) * block {
            beta[i] = frac(-1, block as i64);
        }
        relative_roots.push(beta);
        let shift = frac((j * block) as i64, n_i);
        omega.push((0..n).map(|i| if i < j * block { Rat::one() } else { Rat::zero() } - &shift).collect());
    }
    Ok((
        SlopeDatum { nu, s: block as u64 },
        InnerFormDatum {
            delta: (1..m).map(|i| format!("a{i}")).collect(),
            relative_roots,
            omega,
            center_rank: 1,
        },
    ))
}

/// `μ̄`: the average of `μ` over the averaging group.
pub fn average_mu(mu: &[Rat], group: &GaloisAction) -> Vec<Rat> {
    group.average(mu)
}

/// The full input `(G, Γ, μ, b, J)`.
#[derive(Clone, Debug)]
pub struct PeriodDatum {
    root_datum: RootDatum,
    galois: GaloisAction,
    averaging: Option<GaloisAction>,
    mu: CocharacterClass,
    slope: SlopeDatum,
    inner_form: InnerFormDatum,
}

impl PeriodDatum {
    /// Checks shapes only; mathematical conditions are left to [`validate`].
    pub fn new(
        root_datum: RootDatum,
        galois: GaloisAction,
        averaging: Option<GaloisAction>,
        mu: CocharacterClass,
        slope: SlopeDatum,
        inner_form: InnerFormDatum,
    ) -> Result<Self> {
        let n = root_datum.dimension();
        let shape = |what: &str, len: usize| {
            if len == n {
                Ok(())
            } else {
                Err(Error::Config(format!("{what} has {len} coordinates, expected {n}")))
            }
        };
        shape("mu", mu.mu.len())?;
        shape("nu", slope.nu.len())?;
        shape("Galois generator", galois.generator().size())?;
        if let Some(a) = &averaging {
            shape("averaging generator", a.generator().size())?;
        }
        let d = inner_form.delta.len();
        if inner_form.relative_roots.len() != d || inner_form.omega.len() != d {
            return Err(Error::Config(format!(
                "inner form has {d} labels, {} relative roots and {} coweights",
                inner_form.relative_roots.len(),
                inner_form.omega.len()
            )));
        }
        for v in inner_form.relative_roots.iter().chain(&inner_form.omega) {
            shape("inner form vector", v.len())?;
        }
        if d > 63 {
            return Err(Error::Config("at most 63 relative simple roots are supported".into()));
        }
        Ok(Self { root_datum, galois, averaging, mu, slope, inner_form })
    }

    pub fn root_datum(&self) -> &RootDatum {
        &self.root_datum
    }

    pub fn galois(&self) -> &GaloisAction {
        &self.galois
    }

    pub fn averaging(&self) -> Option<&GaloisAction> {
        self.averaging.as_ref()
    }

    pub fn mu(&self) -> &CocharacterClass {
        &self.mu
    }

    pub fn slope(&self) -> &SlopeDatum {
        &self.slope
    }

    pub fn inner_form(&self) -> &InnerFormDatum {
        &self.inner_form
    }

    pub fn mu_bar(&self) -> Vec<Rat> {
        average_mu(&self.mu.as_rat(), self.averaging.as_ref().unwrap_or(&self.galois))
    }

    /// The slope compared against `μ̄`. A zero slope stands for `b = 1`, which
    /// is only defined up to a central twist; it is normalized to the central
    /// part of `μ̄`.
    pub fn effective_slope(&self) -> Vec<Rat> {
        if self.slope.nu.iter().all(Zero::is_zero) {
            self.root_datum.central_projection(&self.mu_bar())
        } else {
            self.slope.nu.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationCheck {
    pub name: String,
    pub passed: bool,
    /// Informational checks are reported but never fail validation.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub informational: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.informational)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ValidationCheck> {
        self.checks.iter().filter(|c| !c.passed && !c.informational)
    }

    pub fn get(&self, name: &str) -> Option<&ValidationCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let verdict = match (c.passed, c.informational) {
                (true, _) => "pass",
                (false, true) => "info",
                (false, false) => "FAIL",
            };
            writeln!(f, "  [{verdict}] {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

pub const NON_EMPTINESS: &str = "non_emptiness (mu_bar >= nu)";

/// Runs every check on the datum and reports each verdict.
pub fn validate(datum: &PeriodDatum) -> ValidationReport {
    let rd = &datum.root_datum;
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, informational: bool, detail: String| {
        checks.push(ValidationCheck { name: name.into(), passed, informational, detail });
    };

    let q = rd.ambient().inner_product();
    let w_invariant = (0..rd.rank()).all(|i| {
        let s = rd.simple_reflection_matrix(i).to_rat();
        s.transpose().mul(q).mul(&s) == *q
    });
    push(
        "inner_product_weyl_invariant",
        w_invariant,
        false,
        format!("checked on {} simple reflections", rd.rank()),
    );

    let galois_defects = datum.galois.defects(rd);
    push(
        "galois_action",
        galois_defects.is_empty(),
        false,
        if galois_defects.is_empty() {
            format!("order {} based automorphism preserving ( , )", datum.galois.order)
        } else {
            galois_defects.join("; ")
        },
    );
    if let Some(avg) = &datum.averaging {
        let defects = avg.defects(rd);
        push(
            "averaging_action",
            defects.is_empty(),
            false,
            if defects.is_empty() { format!("order {}", avg.order) } else { defects.join("; ") },
        );
    }

    let mu = datum.mu.as_rat();
    let pairings: Vec<Rat> = (0..rd.rank()).map(|i| dot(&rd.simple_root(i), &mu)).collect();
    push(
        "mu_dominant",
        pairings.iter().all(|p| !p.is_negative()),
        false,
        format!("<mu, alpha_i> = {}", VecDisplay(&pairings)),
    );

    let nu = &datum.slope.nu;
    let nu_pairings: Vec<Rat> = (0..rd.rank()).map(|i| dot(&rd.simple_root(i), nu)).collect();
    push(
        "nu_basic",
        nu_pairings.iter().all(Zero::is_zero),
        false,
        format!("<nu, alpha_i> = {}", VecDisplay(&nu_pairings)),
    );
    let s_nu = scale(&rat(datum.slope.s as i64), nu);
    push(
        "nu_decent",
        datum.slope.s >= 1 && is_integral(&s_nu),
        false,
        format!("s = {}, s*nu = {}", datum.slope.s, VecDisplay(&s_nu)),
    );

    push("galois_fixes_mu", datum.galois.fixes(&mu), false, format!("mu = {}", VecDisplay(&mu)));
    push("galois_fixes_nu", datum.galois.fixes(nu), false, format!("nu = {}", VecDisplay(nu)));

    let inner = &datum.inner_form;
    let moved: Vec<&str> = inner
        .delta
        .iter()
        .zip(&inner.omega)
        .filter(|(_, w)| !datum.galois.fixes(w))
        .map(|(l, _)| l.as_str())
        .collect();
    push(
        "galois_fixes_omega",
        moved.is_empty(),
        false,
        if moved.is_empty() { "all fundamental coweights fixed".into() } else { format!("moved: {}", moved.join(", ")) },
    );

    let mut dual_ok = true;
    for (a, w) in inner.omega.iter().enumerate() {
        for (b, beta) in inner.relative_roots.iter().enumerate() {
            let expected = if a == b { Rat::one() } else { Rat::zero() };
            dual_ok &= dot(beta, w) == expected;
        }
    }
    push(
        "omega_dual_basis",
        dual_ok,
        false,
        format!("|Delta| = {}, <omega_a, beta_b> = delta_ab", inner.delta.len()),
    );

    let mu_bar = datum.mu_bar();
    let effective = datum.effective_slope();
    let normalized = effective != *nu;
    let diff = sub(&mu_bar, &effective);
    let coeffs = rd.coroot_coefficients(&diff);
    let central_mu = rd.central_projection(&mu_bar);
    let central_nu = rd.central_projection(&effective);
    let nonempty = rd.dominance_leq(&effective, &mu_bar);
    let detail = match &coeffs {
        Some(c) => format!(
            "mu_bar = {}, nu = {}{}; mu_bar - nu has coroot coefficients {}",
            VecDisplay(&mu_bar),
            VecDisplay(&effective),
            if normalized { " (b = 1, centrally normalized)" } else { "" },
            VecDisplay(c)
        ),
        None => format!(
            "mu_bar = {}, nu = {}; central projections differ: {} vs {}",
            VecDisplay(&mu_bar),
            VecDisplay(&effective),
            VecDisplay(&central_mu),
            VecDisplay(&central_nu)
        ),
    };
    push(NON_EMPTINESS, nonempty, false, detail);

    let integral = coeffs.as_ref().is_some_and(|c| is_integral(c));
    push(
        "integral_lattice (mu_bar - nu in X_*(T_der))",
        integral,
        true,
        "integer coroot coefficients; reported for information only".into(),
    );

    ValidationReport { checks }
}

/// A datum that passed [`validate`].
#[derive(Clone, Debug)]
pub struct ValidatedDatum {
    datum: PeriodDatum,
    report: ValidationReport,
}

impl ValidatedDatum {
    pub fn new(datum: PeriodDatum) -> Result<Self> {
        let report = validate(&datum);
        if report.passed() {
            Ok(Self { datum, report })
        } else {
            Err(Error::Validation(Box::new(report)))
        }
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }
}

impl std::ops::Deref for ValidatedDatum {
    type Target = PeriodDatum;
    fn deref(&self) -> &PeriodDatum {
        &self.datum
    }
}
