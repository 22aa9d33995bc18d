//! Root data, reflections, dominance and dual bases over exact rationals.
//!
//! A root datum lives in a coordinate space `X_*(T) ⊗ Q`: coweights are column
//! vectors, roots are covectors, and both simple roots and simple coroots are
//! integral. The space carries a rational inner product that is invariant
//! under the Weyl group.

mod weyl;

pub use weyl::{enumerate_weyl, format_word, IntMatrix, WeylElement, WeylGroup, DEFAULT_CAP};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{
    dot, frac, from_json_vec, int_vec, is_nonnegative, kernel, rat, solve, sub, to_json_vec,
    JsonRat, Rat, RatMatrix,
};
use num_traits::{One, Signed, Zero};

/// The rational coweight space with its invariant inner product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientSpace {
    inner_product: RatMatrix,
    labels: Vec<String>,
}

impl AmbientSpace {
    pub fn new(inner_product: RatMatrix, labels: Vec<String>) -> Result<Self> {
        if !inner_product.is_symmetric() {
            return Err(Error::InvalidRootDatum("inner product is not symmetric".into()));
        }
        if labels.len() != inner_product.rows() {
            return Err(Error::InvalidRootDatum("label count differs from dimension".into()));
        }
        Ok(Self { inner_product, labels })
    }

    pub fn dimension(&self) -> usize {
        self.labels.len()
    }

    pub fn inner_product(&self) -> &RatMatrix {
        &self.inner_product
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `(x, y)` for the stored form.
    pub fn pair(&self, x: &[Rat], y: &[Rat]) -> Rat {
        self.inner_product.form(x, y)
    }
}

/// Builder parameters for the supported families. Serialized with a `type`
/// tag in the configuration dialect.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum GroupType {
    /// `GL_n` in `n` coordinates with the standard dot product.
    #[serde(rename = "GL")]
    Gl { n: usize },
    /// Type `A_rank`, realised as `GL_{rank+1}`.
    A { rank: usize },
    B { rank: usize },
    C { rank: usize },
    D { rank: usize },
    E { rank: usize },
    F { rank: usize },
    G { rank: usize },
    /// `GSp_{2g}` in coordinates `(a_1, ..., a_g, c)`.
    #[serde(rename = "GSp")]
    GSp { g: usize },
    #[serde(rename = "product")]
    Product { factors: Vec<GroupType> },
    #[serde(rename = "explicit")]
    Explicit {
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
        inner_product: Vec<Vec<JsonRat>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
}

impl GroupType {
    pub fn tag(&self) -> String {
        match self {
            GroupType::Gl { n } => format!("GL{n}"),
            GroupType::A { rank } => format!("A{rank}"),
            GroupType::B { rank } => format!("B{rank}"),
            GroupType::C { rank } => format!("C{rank}"),
            GroupType::D { rank } => format!("D{rank}"),
            GroupType::E { rank } => format!("E{rank}"),
            GroupType::F { rank } => format!("F{rank}"),
            GroupType::G { rank } => format!("G{rank}"),
            GroupType::GSp { g } => format!("GSp{}", 2 * g),
            GroupType::Product { factors } => {
                factors.iter().map(GroupType::tag).collect::<Vec<_>>().join("x")
            }
            GroupType::Explicit { .. } => "explicit".into(),
        }
    }
}

/// A based root datum with integral simple roots and coroots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    tag: String,
    ambient: AmbientSpace,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
}

impl RootDatum {
    /// Assembles and checks a root datum from its simple roots, simple
    /// coroots and inner product.
    pub fn new(
        tag: impl Into<String>,
        ambient: AmbientSpace,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let dim = ambient.dimension();
        if simple_roots.len() != simple_coroots.len() {
            return Err(Error::InvalidRootDatum("root and coroot counts differ".into()));
        }
        if simple_roots.iter().chain(&simple_coroots).any(|v| v.len() != dim) {
            return Err(Error::InvalidRootDatum(format!(
                "roots and coroots must have {dim} coordinates"
            )));
        }
        let cartan = simple_coroots
            .iter()
            .map(|cv| simple_roots.iter().map(|r| int_dot(r, cv)).collect())
            .collect();
        let datum = Self { tag: tag.into(), ambient, simple_roots, simple_coroots, cartan };
        datum.check()?;
        Ok(datum)
    }

    /// Generalized-Cartan-matrix axioms, finite type, and invariance of the
    /// inner product under every simple reflection.
    fn check(&self) -> Result<()> {
        let r = self.rank();
        let a = &self.cartan;
        for i in 0..r {
            if a[i][i] != 2 {
                return Err(Error::InvalidRootDatum(format!("cartan[{i}][{i}] = {} != 2", a[i][i])));
            }
            for j in 0..r {
                if i != j && (a[i][j] > 0 || (a[i][j] == 0) != (a[j][i] == 0)) {
                    return Err(Error::InvalidRootDatum(format!(
                        "cartan entries ({i},{j}) = {}, ({j},{i}) = {} are not admissible",
                        a[i][j], a[j][i]
                    )));
                }
            }
        }
        let cartan_q = RatMatrix::from_rows(
            &a.iter().map(|row| int_vec(row)).collect::<Vec<_>>(),
        )
        .unwrap_or_else(|| RatMatrix::zeros(0, 0));
        if cartan_q.leading_minors().iter().any(|m| !m.is_positive()) {
            return Err(Error::InvalidRootDatum("cartan matrix is not of finite type".into()));
        }
        let gram = self.coroot_gram();
        if gram.leading_minors().iter().any(|m| !m.is_positive()) {
            return Err(Error::InvalidRootDatum(
                "inner product is not positive definite on the coroot span".into(),
            ));
        }
        let q = self.ambient.inner_product();
        for i in 0..r {
            let s = self.simple_reflection_matrix(i).to_rat();
            if s.transpose().mul(q).mul(&s) != *q {
                return Err(Error::InvalidRootDatum(format!(
                    "inner product is not invariant under s{}",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn ambient(&self) -> &AmbientSpace {
        &self.ambient
    }

    pub fn dimension(&self) -> usize {
        self.ambient.dimension()
    }

    /// Semisimple rank.
    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    /// `cartan[i][j] = <α_i^∨, α_j>`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_root(&self, i: usize) -> Vec<Rat> {
        int_vec(&self.simple_roots[i])
    }

    pub fn simple_coroot(&self, i: usize) -> Vec<Rat> {
        int_vec(&self.simple_coroots[i])
    }

    /// Dimension of the central torus.
    pub fn central_rank(&self) -> usize {
        self.dimension() - self.rank()
    }

    pub fn coroot_matrix(&self) -> RatMatrix {
        let cols: Vec<_> = (0..self.rank()).map(|i| self.simple_coroot(i)).collect();
        RatMatrix::from_cols(&cols, self.dimension())
    }

    fn coroot_gram(&self) -> RatMatrix {
        let c = self.coroot_matrix();
        c.transpose().mul(self.ambient.inner_product()).mul(&c)
    }

    pub fn simple_reflection_matrix(&self, i: usize) -> IntMatrix {
        let n = self.dimension();
        let mut m = IntMatrix::identity(n);
        for r in 0..n {
            for c in 0..n {
                m[(r, c)] -= self.simple_coroots[i][r] * self.simple_roots[i][c];
            }
        }
        m
    }

    /// `v - <v, α_i> α_i^∨`.
    pub fn reflect(&self, v: &[Rat], i: usize) -> Result<Vec<Rat>> {
        if i >= self.rank() {
            return Err(Error::IndexOutOfRange { index: i, rank: self.rank() });
        }
        let c = dot(&self.simple_root(i), v);
        Ok(v.iter()
            .zip(&self.simple_coroots[i])
            .map(|(x, &a)| x - &c * rat(a))
            .collect())
    }

    /// Coefficients of `v` in the basis of simple coroots, or `None` when `v`
    /// has a non-zero central component.
    pub fn coroot_coefficients(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        solve(&self.coroot_matrix(), v)
    }

    /// Orthogonal projection onto the complement of the coroot span.
    pub fn central_projection(&self, v: &[Rat]) -> Vec<Rat> {
        let c = self.coroot_matrix();
        let ct_q = c.transpose().mul(self.ambient.inner_product());
        let x = solve(&self.coroot_gram(), &ct_q.apply(v))
            .expect("coroot Gram matrix is positive definite");
        sub(v, &c.apply(&x))
    }

    /// `x ≤ y` in the dominance order: `y - x` is a non-negative rational
    /// combination of simple coroots (so in particular has no central part).
    pub fn dominance_leq(&self, x: &[Rat], y: &[Rat]) -> bool {
        self.coroot_coefficients(&sub(y, x))
            .is_some_and(|c| is_nonnegative(&c))
    }

    pub fn is_dominant(&self, v: &[Rat]) -> bool {
        (0..self.rank()).all(|i| !dot(&self.simple_root(i), v).is_negative())
    }

    /// Coweights `ω` in the coroot span with `<ω_a, β_b> = δ_ab` for the given
    /// covectors, orthogonal to the subspace of the coroot span killed by all
    /// of them. For the absolute simple roots this is the fundamental-coweight
    /// basis projected away from the centre.
    pub fn dual_basis_coweights(&self, covectors: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>> {
        let m = covectors.len();
        if m == 0 {
            return Ok(Vec::new());
        }
        if covectors.iter().any(|b| b.len() != self.dimension()) {
            return Err(Error::DependentFamily("covector has the wrong dimension".into()));
        }
        let c = self.coroot_matrix();
        let b = RatMatrix::from_rows(covectors).expect("rows have equal length");
        let bc = b.mul(&c);
        if bc.rank() < m {
            return Err(Error::DependentFamily(
                "covectors are dependent on the coroot span".into(),
            ));
        }
        // Rows: duality conditions, then orthogonality to the common kernel.
        let r = self.rank();
        let gram = self.coroot_gram();
        let mut rows: Vec<Vec<Rat>> = bc.to_rows();
        for z in kernel(&bc) {
            rows.push(gram.apply(&z));
        }
        let system = RatMatrix::from_rows(&rows).expect("rows have equal length");
        debug_assert_eq!(system.rows(), r);
        (0..m)
            .map(|k| {
                let mut rhs = vec![Rat::zero(); r];
                rhs[k] = Rat::one();
                solve(&system, &rhs)
                    .map(|x| c.apply(&x))
                    .ok_or_else(|| Error::DependentFamily("duality system is singular".into()))
            })
            .collect()
    }
}

fn int_dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn coordinate_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn scalar_identity(n: usize, c: i64) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = rat(c);
    }
    m
}

fn gl(n: usize) -> Result<RootDatum> {
    if n == 0 {
        return Err(Error::RankZero("GL".into()));
    }
    let roots: Vec<Vec<i64>> = (0..n - 1)
        .map(|i| {
            let mut v = unit(n, i);
            v[i + 1] = -1;
            v
        })
        .collect();
    let ambient = AmbientSpace::new(RatMatrix::identity(n), coordinate_labels(n))?;
    RootDatum::new(format!("GL{n}"), ambient, roots.clone(), roots)
}

/// Classical types in `n` coordinates: `B_n` as `SO_{2n+1}`, `C_n` as
/// `Sp_{2n}`, `D_n` as `SO_{2n}`.
fn classical(family: char, n: usize) -> Result<RootDatum> {
    let min = if family == 'D' { 3 } else { 1 };
    if n == 0 {
        return Err(Error::RankZero(family.to_string()));
    }
    if n < min {
        return Err(Error::UnsupportedType(format!("{family}{n}")));
    }
    let diff = |i: usize| {
        let mut v = unit(n, i);
        v[i + 1] = -1;
        v
    };
    let mut roots: Vec<Vec<i64>> = (0..n - 1).map(diff).collect();
    let mut coroots = roots.clone();
    let scale = match family {
        'B' => {
            roots.push(unit(n, n - 1));
            coroots.push(unit(n, n - 1).into_iter().map(|x| 2 * x).collect());
            1
        }
        'C' => {
            roots.push(unit(n, n - 1).into_iter().map(|x| 2 * x).collect());
            coroots.push(unit(n, n - 1));
            2
        }
        'D' => {
            let mut v = vec![0; n];
            v[n - 2] = 1;
            v[n - 1] = 1;
            roots.push(v.clone());
            coroots.push(v);
            1
        }
        _ => unreachable!(),
    };
    let ambient = AmbientSpace::new(scalar_identity(n, scale), coordinate_labels(n))?;
    RootDatum::new(format!("{family}{n}"), ambient, roots, coroots)
}

/// Bourbaki Cartan matrices for the exceptional types.
fn exceptional_cartan(family: char, n: usize) -> Option<Vec<Vec<i64>>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match (family, n) {
        ('G', 2) => link(0, 1, -3, -1),
        ('F', 4) => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        ('E', 6..=8) => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            for i in 2..n - 1 {
                link(i, i + 1, -1, -1);
            }
        }
        _ => return None,
    }
    Some(a)
}

/// Root datum in the basis of simple coroots with the symmetrized invariant
/// form, short coroots of squared length 2.
fn from_cartan(tag: String, a: Vec<Vec<i64>>) -> Result<RootDatum> {
    let n = a.len();
    // d_j = (α_j^∨, α_j^∨) / 2 satisfies a_ij d_j = a_ji d_i.
    let mut d: Vec<Option<Rat>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rat::one());
        let mut stack = vec![start];
        let mut component = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i != j && a[i][j] != 0 && d[j].is_none() {
                    let di = d[i].clone().expect("visited");
                    d[j] = Some(frac(a[j][i], a[i][j]) * di);
                    stack.push(j);
                    component.push(j);
                }
            }
        }
        let min = component
            .iter()
            .map(|&k| d[k].clone().expect("visited"))
            .min()
            .expect("non-empty component");
        for k in component {
            d[k] = d[k].take().map(|x| x / &min);
        }
    }
    let mut q = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            q[(i, j)] = rat(a[i][j]) * d[j].clone().expect("all nodes visited");
        }
    }
    let coroots: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
    let roots: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| a[i][j]).collect()).collect();
    let ambient = AmbientSpace::new(q, coordinate_labels(n))?;
    RootDatum::new(tag, ambient, roots, coroots)
}

/// `GSp_{2g}`: cocharacters `t ↦ diag(t^{a_1}, .., t^{a_g}, t^{c-a_g}, .., t^{c-a_1})`.
fn gsp(g: usize) -> Result<RootDatum> {
    if g == 0 {
        return Err(Error::RankZero("GSp".into()));
    }
    let n = g + 1;
    let mut roots = Vec::with_capacity(g);
    let mut coroots = Vec::with_capacity(g);
    for i in 0..g - 1 {
        let mut v = unit(n, i);
        v[i + 1] = -1;
        roots.push(v.clone());
        coroots.push(v);
    }
    let mut long = vec![0; n];
    long[g - 1] = 2;
    long[g] = -1;
    roots.push(long);
    coroots.push(unit(n, g - 1));
    // 2 Σ u_i^2 with u_i = a_i - c/2 (i ≤ g) and u_{g+1} = c/2.
    let mut u = RatMatrix::zeros(n, n);
    for i in 0..g {
        u[(i, i)] = Rat::one();
        u[(i, g)] = frac(-1, 2);
    }
    u[(g, g)] = frac(1, 2);
    let q = u.transpose().mul(&u).mul(&scalar_identity(n, 2));
    let mut labels = coordinate_labels(g);
    labels.push("c".into());
    let ambient = AmbientSpace::new(q, labels)?;
    RootDatum::new(format!("GSp{}", 2 * g), ambient, roots, coroots)
}

fn product(factors: &[GroupType]) -> Result<RootDatum> {
    if factors.is_empty() {
        return Err(Error::RankZero("product".into()));
    }
    let parts = factors.iter().map(build_root_datum).collect::<Result<Vec<_>>>()?;
    let dim: usize = parts.iter().map(RootDatum::dimension).sum();
    let mut q = RatMatrix::zeros(dim, dim);
    let mut labels = Vec::with_capacity(dim);
    let mut roots = Vec::new();
    let mut coroots = Vec::new();
    let mut offset = 0;
    for (k, part) in parts.iter().enumerate() {
        let n = part.dimension();
        let pq = part.ambient().inner_product();
        for i in 0..n {
            for j in 0..n {
                q[(offset + i, offset + j)] = pq[(i, j)].clone();
            }
        }
        labels.extend(part.ambient().labels().iter().map(|l| format!("{}.{l}", k + 1)));
        let pad = |v: &Vec<i64>| {
            let mut out = vec![0; dim];
            out[offset..offset + n].copy_from_slice(v);
            out
        };
        roots.extend(part.simple_roots().iter().map(pad));
        coroots.extend(part.simple_coroots().iter().map(pad));
        offset += n;
    }
    let tag = parts.iter().map(|p| p.tag().to_string()).collect::<Vec<_>>().join("x");
    RootDatum::new(tag, AmbientSpace::new(q, labels)?, roots, coroots)
}

/// Builds one of the supported root data with its canonical inner product.
pub fn build_root_datum(group: &GroupType) -> Result<RootDatum> {
    match group {
        GroupType::Gl { n } => gl(*n),
        GroupType::A { rank } => {
            if *rank == 0 {
                return Err(Error::RankZero("A".into()));
            }
            gl(rank + 1)
        }
        GroupType::B { rank } => classical('B', *rank),
        GroupType::C { rank } => classical('C', *rank),
        GroupType::D { rank } => classical('D', *rank),
        GroupType::E { rank } | GroupType::F { rank } | GroupType::G { rank } => {
            let family = group.tag().chars().next().expect("non-empty tag");
            if *rank == 0 {
                return Err(Error::RankZero(family.to_string()));
            }
            let a = exceptional_cartan(family, *rank)
                .ok_or_else(|| Error::UnsupportedType(group.tag()))?;
            from_cartan(group.tag(), a)
        }
        GroupType::GSp { g } => gsp(*g),
        GroupType::Product { factors } => product(factors),
        GroupType::Explicit { simple_roots, simple_coroots, inner_product, labels } => {
            let rows: Vec<Vec<Rat>> = inner_product.iter().map(|r| from_json_vec(r)).collect();
            let q = RatMatrix::from_rows(&rows)
                .ok_or_else(|| Error::InvalidRootDatum("ragged inner product".into()))?;
            if q.rows() == 0 {
                return Err(Error::RankZero("explicit".into()));
            }
            let labels = labels.clone().unwrap_or_else(|| coordinate_labels(q.rows()));
            RootDatum::new("explicit", AmbientSpace::new(q, labels)?, simple_roots.clone(), simple_coroots.clone())
        }
    }
}

impl RootDatum {
    /// The explicit form of this datum, suitable for the configuration file.
    pub fn to_explicit(&self) -> GroupType {
        GroupType::Explicit {
            simple_roots: self.simple_roots.clone(),
            simple_coroots: self.simple_coroots.clone(),
            inner_product: self.ambient.inner_product().to_rows().iter().map(|r| to_json_vec(r)).collect(),
            labels: Some(self.ambient.labels().to_vec()),
        }
    }
}
