//! The JSON configuration dialect.
//!
//! ```json
//! {
//!   "schema": "perdomcoh/config/v1",
//!   "name": "drinfeld(3)",
//!   "group": { "type": "GL", "n": 3 },
//!   "mu": [1, 0, 0],
//!   "slope": { "kind": "explicit", "nu": [0, 0, 0], "s": 1 },
//!   "inner_form": { "kind": "split" }
//! }
//! ```
//!
//! Rationals are written as JSON integers or as `"p/q"` strings. `galois` and
//! `averaging` take either `coordinate_permutation` (coordinate `i` goes to
//! `perm[i]`) or a full integer `matrix`, plus the `order` of the generator.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arithmetic_datum::{
    builtin_j_gl_basic, builtin_j_split, CocharacterClass, GaloisAction, InnerFormDatum,
    PeriodDatum, SlopeDatum,
};
use crate::error::{Error, Result};
use crate::lattice_roots::{build_root_datum, GroupType, IntMatrix, RootDatum, DEFAULT_CAP};
use crate::rational::{from_json_vec, JsonRat};

pub const CONFIG_SCHEMA: &str = "perdomcoh/config/v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinate_permutation: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i64>>>,
    pub order: usize,
}

impl ActionConfig {
    fn build(&self, what: &str) -> Result<GaloisAction> {
        if self.order == 0 {
            return Err(Error::Config(format!("{what}: order must be positive")));
        }
        match (&self.coordinate_permutation, &self.matrix) {
            (Some(p), None) => GaloisAction::from_coordinate_permutation(p, self.order),
            (None, Some(m)) => IntMatrix::from_rows(m)
                .map(|g| GaloisAction::new(g, self.order))
                .ok_or_else(|| Error::Config(format!("{what}: matrix is not square"))),
            _ => Err(Error::Config(format!(
                "{what}: give exactly one of `coordinate_permutation` or `matrix`"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SlopeConfig {
    /// A zero slope means `b = 1`.
    Explicit { nu: Vec<JsonRat>, s: u64 },
    /// Basic element of `GL_n` with slope `k/n`.
    GlBasic { k: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InnerFormConfig {
    Split,
    /// Takes `k` from the slope when omitted.
    GlBasic {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k: Option<i64>,
    },
    Explicit {
        delta: Vec<String>,
        relative_roots: Vec<Vec<JsonRat>>,
        /// Computed as the dual basis inside the coroot span when omitted.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        omegas: Option<Vec<Vec<JsonRat>>>,
        center_rank: usize,
    },
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Config(format!("unknown format `{other}`"))),
        }
    }
}

fn default_cap() -> usize {
    DEFAULT_CAP
}

fn is_default_cap(cap: &usize) -> bool {
    *cap == DEFAULT_CAP
}

fn is_false(b: &bool) -> bool {
    !b
}

fn is_text(f: &Format) -> bool {
    *f == Format::Text
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "is_false")]
    pub checks: bool,
    #[serde(default, skip_serializing_if = "is_false")]
    pub pages: bool,
    #[serde(default, skip_serializing_if = "is_false")]
    pub euler: bool,
    #[serde(default, skip_serializing_if = "is_text")]
    pub format: Format,
    #[serde(default = "default_cap", skip_serializing_if = "is_default_cap")]
    pub cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self { checks: false, pages: false, euler: false, format: Format::Text, cap: DEFAULT_CAP }
    }
}

impl Options {
    fn is_default(&self) -> bool {
        *self == Self::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub schema: String,
    pub name: String,
    pub group: GroupType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub galois: Option<ActionConfig>,
    /// Larger group used only to average `μ`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub averaging: Option<ActionConfig>,
    pub mu: Vec<i64>,
    pub slope: SlopeConfig,
    pub inner_form: InnerFormConfig,
    #[serde(default, skip_serializing_if = "Options::is_default")]
    pub options: Options,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text)?;
        if config.schema != CONFIG_SCHEMA {
            return Err(Error::Config(format!(
                "unsupported schema `{}`, expected `{CONFIG_SCHEMA}`",
                config.schema
            )));
        }
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes") + "\n"
    }

    /// `sha256:` of the compact serialization, options excluded.
    pub fn hash(&self) -> String {
        let mut canonical = self.clone();
        canonical.options = Options::default();
        let bytes = serde_json::to_vec(&canonical).expect("config serializes");
        let digest = Sha256::digest(&bytes);
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        format!("sha256:{hex}")
    }

    fn gl_size(&self) -> Result<usize> {
        match self.group {
            GroupType::Gl { n } => Ok(n),
            GroupType::A { rank } => Ok(rank + 1),
            _ => Err(Error::Config("gl_basic requires a GL group".into())),
        }
    }

    /// Assembles the (not yet validated) period datum.
    pub fn to_datum(&self) -> Result<PeriodDatum> {
        let root_datum = build_root_datum(&self.group)?;
        let n = root_datum.dimension();
        let galois = match &self.galois {
            Some(a) => a.build("galois")?,
            None => GaloisAction::trivial(n),
        };
        let averaging = self.averaging.as_ref().map(|a| a.build("averaging")).transpose()?;

        let (slope, builtin_inner) = match &self.slope {
            SlopeConfig::Explicit { nu, s } => (SlopeDatum { nu: from_json_vec(nu), s: *s }, None),
            SlopeConfig::GlBasic { k } => {
                let (slope, inner) = builtin_j_gl_basic(self.gl_size()?, *k)?;
                (slope, Some((*k, inner)))
            }
        };
        let inner_form = match &self.inner_form {
            InnerFormConfig::Split => builtin_j_split(&root_datum, &galois)?,
            InnerFormConfig::GlBasic { k } => match (builtin_inner, k) {
                (Some((slope_k, inner)), None) => inner_form_checked(inner, slope_k, slope_k)?,
                (Some((slope_k, inner)), Some(k)) => inner_form_checked(inner, slope_k, *k)?,
                (None, Some(k)) => builtin_j_gl_basic(self.gl_size()?, *k)?.1,
                (None, None) => {
                    return Err(Error::Config("gl_basic inner form needs `k`".into()));
                }
            },
            InnerFormConfig::Explicit { delta, relative_roots, omegas, center_rank } => {
                explicit_inner_form(&root_datum, delta, relative_roots, omegas.as_deref(), *center_rank)?
            }
        };
        PeriodDatum::new(root_datum, galois, averaging, CocharacterClass { mu: self.mu.clone() }, slope, inner_form)
    }
}

fn inner_form_checked(inner: InnerFormDatum, slope_k: i64, k: i64) -> Result<InnerFormDatum> {
    if slope_k != k {
        return Err(Error::Config(format!("inner form k = {k} differs from slope k = {slope_k}")));
    }
    Ok(inner)
}

fn explicit_inner_form(
    root_datum: &RootDatum,
    delta: &[String],
    relative_roots: &[Vec<JsonRat>],
    omegas: Option<&[Vec<JsonRat>]>,
    center_rank: usize,
) -> Result<InnerFormDatum> {
    let relative_roots: Vec<_> = relative_roots.iter().map(|r| from_json_vec(r)).collect();
    if relative_roots.iter().any(|r| r.len() != root_datum.dimension()) {
        return Err(Error::Config("relative root has the wrong dimension".into()));
    }
    let omega = match omegas {
        Some(w) => w.iter().map(|v| from_json_vec(v)).collect(),
        None => root_datum.dual_basis_coweights(&relative_roots)?,
    };
    Ok(InnerFormDatum { delta: delta.to_vec(), relative_roots, omega, center_rank })
}
