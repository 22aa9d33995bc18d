//! Built-in scenarios and their expected-output fixtures.
//!
//! Parameterised families are addressed as `drinfeld(n)`, `lubin_tate(n)` and
//! `gl_n_basic(n,k)`; fixed scenarios by bare name. Custom scenarios live as
//! config files under `catalog/` and are compiled in.

use crate::config::{ActionConfig, Format, InnerFormConfig, Options, ScenarioConfig, SlopeConfig, CONFIG_SCHEMA};
use crate::error::{Error, Result};
use crate::lattice_roots::GroupType;
use crate::rational::{rat, JsonRat};
use crate::report::{run, RunOptions};

const CUSTOM: &[(&str, &str)] = &[
    ("gl4_grassmannian", include_str!("../catalog/gl4_grassmannian.json")),
    ("gsp4_regular", include_str!("../catalog/gsp4_regular.json")),
    ("g2_split", include_str!("../catalog/g2_split.json")),
    ("gl5_slope_two_fifths", include_str!("../catalog/gl5_slope_two_fifths.json")),
    ("gl4_regular", include_str!("../catalog/gl4_regular.json")),
    ("gl4_mu_3100", include_str!("../catalog/gl4_mu_3100.json")),
];

/// Every scenario that ships with a fixture, in the order the self-test and
/// the acceptance suite walk them.
pub const STANDARD: &[&str] = &[
    "drinfeld(2)",
    "drinfeld(3)",
    "drinfeld(4)",
    "drinfeld(5)",
    "lubin_tate(2)",
    "lubin_tate(3)",
    "lubin_tate(4)",
    "lubin_tate(5)",
    "weil_restriction_gl2",
    "gsp4_siegel",
    "gl_n_basic(4,2)",
    "gl_n_basic(6,2)",
    "gl_n_basic(6,3)",
    "gl4_grassmannian",
    "gsp4_regular",
    "g2_split",
    "gl5_slope_two_fifths",
    "gl4_regular",
    "gl4_mu_3100",
];

const FIXTURES: &[(&str, &str)] = &[
    ("drinfeld(2)", include_str!("../fixtures/drinfeld_2.json")),
    ("drinfeld(3)", include_str!("../fixtures/drinfeld_3.json")),
    ("drinfeld(4)", include_str!("../fixtures/drinfeld_4.json")),
    ("drinfeld(5)", include_str!("../fixtures/drinfeld_5.json")),
    ("lubin_tate(2)", include_str!("../fixtures/lubin_tate_2.json")),
    ("lubin_tate(3)", include_str!("../fixtures/lubin_tate_3.json")),
    ("lubin_tate(4)", include_str!("../fixtures/lubin_tate_4.json")),
    ("lubin_tate(5)", include_str!("../fixtures/lubin_tate_5.json")),
    ("weil_restriction_gl2", include_str!("../fixtures/weil_restriction_gl2.json")),
    ("gsp4_siegel", include_str!("../fixtures/gsp4_siegel.json")),
    ("gl_n_basic(4,2)", include_str!("../fixtures/gl_n_basic_4_2.json")),
    ("gl_n_basic(6,2)", include_str!("../fixtures/gl_n_basic_6_2.json")),
    ("gl_n_basic(6,3)", include_str!("../fixtures/gl_n_basic_6_3.json")),
    ("gl4_grassmannian", include_str!("../fixtures/gl4_grassmannian.json")),
    ("gsp4_regular", include_str!("../fixtures/gsp4_regular.json")),
    ("g2_split", include_str!("../fixtures/g2_split.json")),
    ("gl5_slope_two_fifths", include_str!("../fixtures/gl5_slope_two_fifths.json")),
    ("gl4_regular", include_str!("../fixtures/gl4_regular.json")),
    ("gl4_mu_3100", include_str!("../fixtures/gl4_mu_3100.json")),
];

/// Summand table of `weil_restriction_gl2` as produced by the brute-force
/// orbit oracle in the test suite.
pub const WEIL_RESTRICTION_ORACLE: &str = include_str!("../fixtures/weil_restriction_gl2.oracle.json");

/// `drinfeld(3)` → `drinfeld_3`, used for fixture file names.
pub fn file_stem(name: &str) -> String {
    name.chars()
        .filter_map(|c| match c {
            '(' | ',' => Some('_'),
            ')' | ' ' => None,
            c => Some(c),
        })
        .collect()
}

/// The expected JSON report (with checks) for a standard scenario.
pub fn fixture(name: &str) -> Option<&'static str> {
    let name = normalize(name);
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, f)| *f).filter(|f| !f.is_empty())
}

/// Options under which fixtures are recorded: checks on, pages and Euler
/// sections off, default cap.
pub fn fixture_options() -> RunOptions {
    RunOptions { checks: true, ..RunOptions::default() }
}

/// Renders the JSON report that the fixture of `name` must match byte for
/// byte.
pub fn render_fixture(name: &str) -> Result<String> {
    let config = catalog(name)?;
    Ok(run(&config, &fixture_options())?.render(Format::Json))
}

fn normalize(name: &str) -> String {
    name.chars().filter(|c| !c.is_whitespace()).collect()
}

fn parse_args(name: &str, family: &str) -> Option<Vec<i64>> {
    let inner = name.strip_prefix(family)?.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|a| a.parse().ok()).collect()
}

fn positive(arg: i64, name: &str) -> Result<usize> {
    usize::try_from(arg)
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::UnknownScenario(format!("{name}: size must be positive")))
}

/// Resolves a catalog name to its full configuration.
pub fn catalog(name: &str) -> Result<ScenarioConfig> {
    let name = normalize(name);
    if let Some(args) = parse_args(&name, "drinfeld") {
        if let [n] = args[..] {
            return Ok(drinfeld(positive(n, &name)?));
        }
    }
    if let Some(args) = parse_args(&name, "lubin_tate") {
        if let [n] = args[..] {
            return Ok(lubin_tate(positive(n, &name)?));
        }
    }
    if let Some(args) = parse_args(&name, "gl_n_basic") {
        if let [n, k] = args[..] {
            return Ok(gl_n_basic(positive(n, &name)?, k));
        }
    }
    match name.as_str() {
        "weil_restriction_gl2" => return Ok(weil_restriction_gl2()),
        "gsp4_siegel" => return Ok(gsp4_siegel()),
        _ => {}
    }
    match CUSTOM.iter().find(|(n, _)| *n == name) {
        Some((_, text)) => ScenarioConfig::from_json(text),
        None => Err(Error::UnknownScenario(name)),
    }
}

fn base(name: String, group: GroupType, mu: Vec<i64>, slope: SlopeConfig, inner_form: InnerFormConfig) -> ScenarioConfig {
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

fn zero_slope(n: usize) -> SlopeConfig {
    SlopeConfig::Explicit { nu: vec![JsonRat(rat(0)); n], s: 1 }
}

fn first_unit(n: usize) -> Vec<i64> {
    let mut mu = vec![0; n];
    mu[0] = 1;
    mu
}

/// `GL_n`, `b = 1`, `μ = (1, 0, ..., 0)`: Drinfeld's upper half space.
pub fn drinfeld(n: usize) -> ScenarioConfig {
    base(format!("drinfeld({n})"), GroupType::Gl { n }, first_unit(n), zero_slope(n), InnerFormConfig::Split)
}

/// `GL_n`, slope `1/n`, `μ = (1, 0, ..., 0)`: the Lubin-Tate case, where the
/// period domain is all of projective space.
pub fn lubin_tate(n: usize) -> ScenarioConfig {
    base(
        format!("lubin_tate({n})"),
        GroupType::Gl { n },
        first_unit(n),
        SlopeConfig::GlBasic { k: 1 },
        InnerFormConfig::GlBasic { k: None },
    )
}

/// `GL_n` with the basic element of slope `k/n` and the minuscule `μ` of the
/// same determinant: `μ = (q+1, ..., q+1, q, ..., q)` with `r` leading
/// entries, where `k = qn + r` and `0 ≤ r < n`.
pub fn gl_n_basic(n: usize, k: i64) -> ScenarioConfig {
    let n_i = n as i64;
    let (q, r) = (k.div_euclid(n_i), k.rem_euclid(n_i) as usize);
    let mu = (0..n).map(|i| if i < r { q + 1 } else { q }).collect();
    base(
        format!("gl_n_basic({n},{k})"),
        GroupType::Gl { n },
        mu,
        SlopeConfig::GlBasic { k },
        InnerFormConfig::GlBasic { k: None },
    )
}

/// `Res GL_2` over an unramified quadratic extension, modelled as
/// `GL_2 × GL_2` with Frobenius swapping the factors and `μ = ((1,0),(1,0))`.
/// `J` is the quasi-split group itself, with one relative simple root.
pub fn weil_restriction_gl2() -> ScenarioConfig {
    let half = |x: i64| JsonRat(crate::rational::frac(x, 2));
    let mut c = base(
        "weil_restriction_gl2".into(),
        GroupType::Product { factors: vec![GroupType::Gl { n: 2 }, GroupType::Gl { n: 2 }] },
        vec![1, 0, 1, 0],
        zero_slope(4),
        InnerFormConfig::Explicit {
            delta: vec!["a1".into()],
            relative_roots: vec![vec![half(1), half(-1), half(1), half(-1)]],
            omegas: None,
            center_rank: 1,
        },
    );
    c.galois = Some(ActionConfig { coordinate_permutation: Some(vec![2, 3, 0, 1]), matrix: None, order: 2 });
    c
}

/// `GSp_4`, `b = 1`, Siegel cocharacter `t ↦ diag(t, t, 1, 1)`: the period
/// domain inside the Lagrangian Grassmannian.
pub fn gsp4_siegel() -> ScenarioConfig {
    base("gsp4_siegel".into(), GroupType::GSp { g: 2 }, vec![1, 1, 1], zero_slope(3), InnerFormConfig::Split)
}
