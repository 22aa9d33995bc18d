//! Result reports: assembly from the engine and rendering as text, JSON or
//! CSV.
//!
//! Symbols use the grammar `i[P_{a1,a2}] ⊗ ind[s1] (-1)` for induced
//! representations and `v[P_{a1}]` for generalized Steinberg representations;
//! `v[P_{...}]` over all of `Δ` is the trivial representation. Virtual sums
//! join terms with ` + ` and ` - `, with integer multiplicities written as
//! `3*symbol`. Reports contain no timestamps or paths, so identical inputs
//! give byte-identical output.

use serde::{Deserialize, Serialize};

use crate::arithmetic_datum::{ValidatedDatum, ValidationCheck};
use crate::cohomology_engine::{CohomologySummand, Engine, SpectralPage};
use crate::config::{Format, Options, ScenarioConfig};
use crate::error::Result;
use crate::lattice_roots::{format_word, DEFAULT_CAP};
use crate::rep_k_group::{ext_dimension, splitting_check, steinberg_name, SplittingPair, Subset};
use crate::selftest::{invariant_suite, theorem_checks, CheckOutcome};

pub const REPORT_SCHEMA: &str = "perdomcoh/report/v1";

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub checks: bool,
    pub pages: bool,
    pub euler: bool,
    pub cap: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { checks: false, pages: false, euler: false, cap: DEFAULT_CAP }
    }
}

impl From<&Options> for RunOptions {
    fn from(o: &Options) -> Self {
        Self { checks: o.checks, pages: o.pages, euler: o.euler, cap: o.cap }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SummandRow {
    pub degree: usize,
    pub tate_twist: i64,
    pub steinberg_symbol: String,
    pub parabolic_subset: Vec<String>,
    pub galois_orbit_rep: String,
    pub galois_dim: usize,
    pub orbit_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageEntry {
    pub p: usize,
    pub q: usize,
    pub orbit: String,
    pub terms: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pages {
    pub e1: Vec<PageEntry>,
    pub e2: Vec<PageEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerRowEntry {
    pub orbit: String,
    pub q: usize,
    pub e1: String,
    pub e2: String,
    pub passed: bool,
}

/// Degree-alternating sums, every `v` expanded into `i`'s.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerSection {
    pub flag: String,
    pub period_domain: String,
    pub complement: String,
    pub residual: String,
    pub rows: Vec<EulerRowEntry>,
}

/// `dims[i] = dim Ext^i(left, right)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtEntry {
    pub left: String,
    pub right: String,
    pub dims: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChecksSection {
    pub passed: bool,
    pub validation: Vec<ValidationCheck>,
    pub theorem: Vec<CheckOutcome>,
    pub splitting_pairs: Vec<SplittingPair>,
    /// Between the Steinberg representations that occur in the summands.
    pub ext_table: Vec<ExtEntry>,
    pub invariants: Vec<CheckOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultReport {
    pub schema: String,
    pub tool: String,
    pub config_hash: String,
    pub scenario: String,
    pub group: String,
    pub delta: Vec<String>,
    pub center_rank: usize,
    pub weyl_order: usize,
    pub kostant_size: usize,
    pub summands: Vec<SummandRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pages: Option<Pages>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler: Option<EulerSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<ChecksSection>,
}

/// Validates, computes and assembles the report. A datum that fails
/// validation comes back as [`crate::Error::Validation`].
pub fn run(config: &ScenarioConfig, opts: &RunOptions) -> Result<ResultReport> {
    let datum = ValidatedDatum::new(config.to_datum()?)?;
    let engine = Engine::new(datum, opts.cap)?;
    Ok(ResultReport::assemble(config, &engine, opts))
}

fn summand_row(engine: &Engine, s: &CohomologySummand) -> SummandRow {
    SummandRow {
        degree: s.degree,
        tate_twist: s.tate_twist,
        steinberg_symbol: steinberg_name(s.parabolic_subset, engine.labels()),
        parabolic_subset: s.parabolic_subset.labels(engine.labels()),
        galois_orbit_rep: format_word(&s.orbit_word),
        galois_dim: s.galois_dim,
        orbit_length: s.length,
    }
}

fn page_entries(engine: &Engine, page: &SpectralPage) -> Vec<PageEntry> {
    page.entries
        .iter()
        .map(|(k, r)| PageEntry { p: k.p, q: k.q, orbit: engine.orbit_name(k.orbit), terms: r.display(engine.labels()) })
        .collect()
}

fn euler_section(engine: &Engine) -> EulerSection {
    let labels = engine.labels();
    let les = engine.les_consistency();
    let rows = engine
        .euler_conservation()
        .into_iter()
        .map(|r| EulerRowEntry {
            orbit: engine.orbit_name(r.orbit),
            q: r.q,
            e1: r.e1.display(labels),
            e2: r.e2.display(labels),
            passed: r.passed,
        })
        .collect();
    EulerSection {
        flag: les.flag.display(labels),
        period_domain: les.period_domain.display(labels),
        complement: les.complement.display(labels),
        residual: les.residual.display(labels),
        rows,
    }
}

fn ext_table(engine: &Engine, summands: &[CohomologySummand]) -> Vec<ExtEntry> {
    let mut subsets: Vec<Subset> = summands.iter().map(|s| s.parabolic_subset).collect();
    subsets.sort_by_key(|s| (s.len(), s.bits()));
    subsets.dedup();
    let r = engine.center_rank();
    let labels = engine.labels();
    let mut out = Vec::new();
    for &a in &subsets {
        for &b in &subsets {
            out.push(ExtEntry {
                left: steinberg_name(a, labels),
                right: steinberg_name(b, labels),
                dims: (0..=r + 1).map(|i| ext_dimension(a, b, i, r)).collect(),
            });
        }
    }
    out
}

impl ResultReport {
    pub fn assemble(config: &ScenarioConfig, engine: &Engine, opts: &RunOptions) -> Self {
        let summands = engine.compute_cohomology();
        let pages = opts.pages.then(|| Pages {
            e1: page_entries(engine, &engine.e1_page()),
            e2: page_entries(engine, &engine.e2_page()),
        });
        let euler = opts.euler.then(|| euler_section(engine));
        let checks = opts.checks.then(|| {
            let theorem = theorem_checks(engine);
            let invariants = invariant_suite(engine);
            let passed = theorem.iter().chain(&invariants).all(|c| c.passed);
            ChecksSection {
                passed,
                validation: engine.datum().report().checks.clone(),
                theorem,
                splitting_pairs: splitting_check(&summands, engine.labels(), engine.center_rank()).pairs,
                ext_table: ext_table(engine, &summands),
                invariants,
            }
        });
        Self {
            schema: REPORT_SCHEMA.into(),
            tool: format!("perdomcoh {}", crate::VERSION),
            config_hash: config.hash(),
            scenario: config.name.clone(),
            group: engine.datum().root_datum().tag().into(),
            delta: engine.labels().to_vec(),
            center_rank: engine.center_rank(),
            weyl_order: engine.weyl().len(),
            kostant_size: engine.kostant().elements.len(),
            summands: summands.iter().map(|s| summand_row(engine, s)).collect(),
            pages,
            euler,
            checks,
        }
    }

    /// `false` only if a requested check failed.
    pub fn passed(&self) -> bool {
        let euler_ok = self.euler.as_ref().is_none_or(|e| e.residual == "0" && e.rows.iter().all(|r| r.passed));
        let checks_ok = self.checks.as_ref().is_none_or(|c| c.passed);
        euler_ok && checks_ok
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// The summands as a sorted multiset, for round-trip comparisons.
    pub fn summand_multiset(&self) -> Vec<SummandRow> {
        let mut rows = self.summands.clone();
        rows.sort();
        rows
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Csv => self.to_csv(),
        }
    }

    fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(SUMMAND_COLUMNS).expect("in-memory write");
        for r in &self.summands {
            w.write_record(summand_cells(r)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("# perdomcoh report ({})", self.schema));
        line(format!("tool:        {}", self.tool));
        line(format!("config:      {}", self.config_hash));
        line(format!("scenario:    {}", self.scenario));
        line(format!("group:       {}", self.group));
        line(format!("delta:       {{{}}}", self.delta.join(",")));
        line(format!("center rank: {}", self.center_rank));
        line(format!(
            "|W| = {}, |W^mu| = {}, orbits = {}",
            self.weyl_order,
            self.kostant_size,
            self.summands.len()
        ));
        line(String::new());
        let rows: Vec<Vec<String>> = self.summands.iter().map(summand_cells).collect();
        line(table(&SUMMAND_COLUMNS, &rows, &[true, true, false, false, false, true, true]));

        if let Some(p) = &self.pages {
            for (name, entries) in [("E1", &p.e1), ("E2", &p.e2)] {
                line(String::new());
                if entries.is_empty() {
                    line(format!("{name} page: empty"));
                    continue;
                }
                line(format!("{name} page"));
                let rows: Vec<Vec<String>> = entries
                    .iter()
                    .map(|e| vec![e.p.to_string(), e.q.to_string(), e.orbit.clone(), e.terms.clone()])
                    .collect();
                line(table(&["p", "q", "orbit", "terms"], &rows, &[true, true, false, false]));
            }
        }

        if let Some(e) = &self.euler {
            line(String::new());
            line("Euler characteristics (v expanded)".into());
            line(format!("  chi(flag) = {}", e.flag));
            line(format!("  chi_c     = {}", e.period_domain));
            line(format!("  chi(Y)    = {}", e.complement));
            line(format!("  residual  = {}", e.residual));
            let rows: Vec<Vec<String>> = e
                .rows
                .iter()
                .map(|r| vec![r.orbit.clone(), r.q.to_string(), verdict(r.passed).into(), r.e1.clone()])
                .collect();
            line(table(&["orbit", "q", "row", "sum_p (-1)^p E1 = E2"], &rows, &[false, true, false, false]));
        }

        if let Some(c) = &self.checks {
            line(String::new());
            line("Validation".into());
            for v in &c.validation {
                let tag = match (v.passed, v.informational) {
                    (true, _) => "pass",
                    (false, true) => "info",
                    (false, false) => "FAIL",
                };
                line(format!("  [{tag}] {}: {}", v.name, v.detail));
            }
            line(String::new());
            line("Checks".into());
            for o in c.theorem.iter().chain(&c.invariants) {
                line(format!("  [{}] {}: {}", verdict(o.passed), o.name, o.detail));
            }
            if !c.splitting_pairs.is_empty() {
                line(String::new());
                line("Splitting pairs".into());
                let rows: Vec<Vec<String>> = c
                    .splitting_pairs
                    .iter()
                    .map(|p| {
                        vec![
                            p.orbits[0].clone(),
                            p.orbits[1].clone(),
                            p.y_degree.to_string(),
                            format!("{}/{}", p.lengths[0], p.lengths[1]),
                            format!("{{{}}}", p.subsets[0].join(",")),
                            format!("{{{}}}", p.subsets[1].join(",")),
                            p.size_gap.to_string(),
                            p.ext1.to_string(),
                            verdict(p.passed).into(),
                        ]
                    })
                    .collect();
                line(table(
                    &["orbit", "orbit'", "y_degree", "lengths", "I", "I'", "gap", "ext1", "verdict"],
                    &rows,
                    &[false, false, true, false, false, false, true, true, false],
                ));
            }
            line(String::new());
            line("Ext dimensions".into());
            let rows: Vec<Vec<String>> = c
                .ext_table
                .iter()
                .map(|e| {
                    let dims: Vec<String> = e.dims.iter().map(u64::to_string).collect();
                    vec![e.left.clone(), e.right.clone(), dims.join(" ")]
                })
                .collect();
            line(table(&["left", "right", "dim Ext^i, i = 0.."], &rows, &[false, false, false]));
            line(String::new());
            line(format!("verdict: {}", if c.passed { "all checks passed" } else { "CHECKS FAILED" }));
        }
        out
    }
}

const SUMMAND_COLUMNS: [&str; 7] = [
    "degree",
    "tate_twist",
    "steinberg_symbol",
    "parabolic_subset",
    "galois_orbit_rep",
    "galois_dim",
    "orbit_length",
];

fn summand_cells(r: &SummandRow) -> Vec<String> {
    vec![
        r.degree.to_string(),
        r.tate_twist.to_string(),
        r.steinberg_symbol.clone(),
        format!("{{{}}}", r.parabolic_subset.join(",")),
        r.galois_orbit_rep.clone(),
        r.galois_dim.to_string(),
        r.orbit_length.to_string(),
    ]
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "FAIL"
    }
}

/// Aligned columns separated by two spaces, no trailing whitespace.
fn table(headers: &[&str], rows: &[Vec<String>], right: &[bool]) -> String {
    let width = |s: &str| s.chars().count();
    let mut widths: Vec<usize> = headers.iter().map(|h| width(h)).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(width(c));
        }
    }
    let fmt_row = |cells: Vec<&str>| {
        let last = cells.len() - 1;
        let parts: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let pad = " ".repeat(widths[i] - width(c));
                if right[i] {
                    format!("{pad}{c}")
                } else if i == last {
                    c.to_string()
                } else {
                    format!("{c}{pad}")
                }
            })
            .collect();
        parts.join("  ").trim_end().to_string()
    };
    let mut lines = vec![fmt_row(headers.to_vec())];
    lines.extend(rows.iter().map(|r| fmt_row(r.iter().map(String::as_str).collect())));
    lines.join("\n")
}
