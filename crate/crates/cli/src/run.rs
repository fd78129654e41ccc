use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use hochschild::exactalg::{is_prime, BimoduleRep, Field, Oracle, OracleError};
use hochschild::formulas::{classify_and_compute, FormulaError};
use hochschild::presentations::{build_algebra, PresentationError};
use hochschild::simplicial::gs_compare;
use serde::Serialize;
use thiserror::Error;

use crate::document::{Body, Document, ParseError};

/// Process exit statuses.
pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Input(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Input(_) => EXIT_INPUT,
            CliError::Unsupported(_) => EXIT_UNSUPPORTED,
        }
    }
}

impl From<FormulaError> for CliError {
    fn from(e: FormulaError) -> Self {
        match e {
            FormulaError::Oracle(o) => o.into(),
            FormulaError::Presentation(p) => p.into(),
            FormulaError::FormulaUnavailable(_)
            | FormulaError::CyclicQuiver
            | FormulaError::NotPregenerated
            | FormulaError::NotNarrow
            | FormulaError::Disconnected => CliError::Unsupported(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::GuardExceeded { .. } | OracleError::CyclicQuiver => {
                CliError::Unsupported(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<PresentationError> for CliError {
    fn from(e: PresentationError) -> Self {
        match e {
            PresentationError::InfiniteDimensional
            | PresentationError::InfiniteBasis
            | PresentationError::NotAdmissible
            | PresentationError::Unsupported(_) => CliError::Unsupported(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub field: Field,
    pub max_dim: Option<usize>,
    pub max_dim_h2: Option<usize>,
    pub per_component: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            field: Field::Rational,
            max_dim: None,
            max_dim_h2: None,
            per_component: false,
        }
    }
}

impl RunOptions {
    fn oracle(&self) -> Oracle {
        let mut o = Oracle::over(self.field);
        if let Some(d) = self.max_dim {
            o.limits.max_dim = d;
        }
        if let Some(d) = self.max_dim_h2 {
            o.limits.max_dim_degree2 = d;
        }
        o
    }
}

/// Values computed by each route, and whether they coincide.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Checks {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    #[serde(flatten)]
    pub values: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub name: String,
    pub method: String,
    pub dim_h1: usize,
    pub intermediates: BTreeMap<String, i64>,
    pub checks: Checks,
    pub field: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl RunReport {
    fn new(doc: &Document, method: impl Into<String>, dim_h1: usize, opts: &RunOptions) -> Self {
        RunReport {
            name: doc.name.clone(),
            method: method.into(),
            dim_h1,
            intermediates: BTreeMap::new(),
            checks: Checks::default(),
            field: opts.field.to_string(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.checks.agree == Some(false) {
            EXIT_MISMATCH
        } else {
            EXIT_OK
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: dim H1 = {} ({}, field {})", self.name, self.dim_h1, self.method, self.field);
        for (k, v) in &self.intermediates {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for (k, v) in &self.checks.values {
            let _ = writeln!(out, "  check {k} = {v}");
        }
        match self.checks.agree {
            Some(true) => out.push_str("  agree: yes\n"),
            Some(false) => out.push_str("  agree: NO\n"),
            None => {}
        }
        let _ = writeln!(out, "  time: {:.3} ms", self.elapsed.as_secs_f64() * 1e3);
        out
    }
}

fn timed(f: impl FnOnce() -> Result<RunReport, CliError>) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let mut r = f()?;
    r.elapsed = start.elapsed();
    Ok(r)
}

fn formula_report(doc: &Document, opts: &RunOptions) -> Result<RunReport, CliError> {
    let Body::Quiver(p) = &doc.body else {
        return Err(CliError::Unsupported(
            "no closed formula for incidence algebras; use `oracle` or `poset`".into(),
        ));
    };
    let h = classify_and_compute(p, &opts.oracle())?;
    let mut r = RunReport::new(doc, h.method.as_str(), h.dim_h1, opts);
    r.intermediates = h.intermediates;
    if opts.per_component {
        for c in &h.per_component {
            let names: Vec<&str> = c.vertices.iter().map(|v| v.as_str()).collect();
            r.intermediates
                .insert(format!("component[{}]", names.join(",")), c.dim_h1 as i64);
        }
    }
    Ok(r)
}

/// Evaluate the applicable closed formula.
pub fn run_formula(doc: &Document, opts: &RunOptions) -> Result<RunReport, CliError> {
    timed(|| formula_report(doc, opts))
}

/// Brute-force `H¹`, plus the bar complex in degrees 0 to 2 where the guards allow.
pub fn run_oracle(doc: &Document, opts: &RunOptions) -> Result<RunReport, CliError> {
    timed(|| {
        let o = opts.oracle();
        let alg = build_algebra(&doc.presentation())?;
        let reg = BimoduleRep::regular(&alg);
        let h1 = o.h1(&reg)?;
        let mut r = RunReport::new(doc, "oracle", h1, opts);
        r.intermediates.insert("dim_algebra".into(), alg.dim() as i64);
        r.intermediates.insert("dim_center".into(), o.center_dim(&alg)? as i64);
        r.intermediates.insert("dim_derivations".into(), o.derivation_space_dim(&reg)? as i64);
        r.intermediates.insert("dim_inner".into(), o.inner_dim(&reg)? as i64);
        if alg.dim() <= o.limits.max_dim_degree2 {
            for degree in 0..=2 {
                let d = o.bar_cohomology_dim(&reg, degree)?;
                r.checks.values.insert(format!("bar_h{degree}"), d);
            }
            r.checks.agree = Some(r.checks.values["bar_h1"] == h1);
        }
        Ok(r)
    })
}

/// Formula and oracle side by side; mismatches give exit status 1.
pub fn run_check(doc: &Document, opts: &RunOptions) -> Result<RunReport, CliError> {
    timed(|| {
        let mut r = formula_report(doc, opts)?;
        let alg = build_algebra(&doc.presentation())?;
        let oracle = opts.oracle().h1(&BimoduleRep::regular(&alg))?;
        r.checks.values.insert("formula".into(), r.dim_h1);
        r.checks.values.insert("oracle".into(), oracle);
        r.checks.agree = Some(oracle == r.dim_h1);
        Ok(r)
    })
}

/// Incidence-algebra `H¹` against simplicial `H¹` of the order complex.
pub fn run_poset(doc: &Document, opts: &RunOptions) -> Result<RunReport, CliError> {
    timed(|| {
        let Body::Poset(p) = &doc.body else {
            return Err(CliError::Unsupported("`poset` needs a poset document".into()));
        };
        let c = gs_compare(p, &opts.oracle())?;
        let mut r = RunReport::new(doc, "incidence_vs_simplicial", c.dim_h1_incidence, opts);
        r.intermediates.insert("elements".into(), p.len() as i64);
        r.intermediates
            .insert("comparability_components".into(), p.comparability_components() as i64);
        r.checks.values.insert("incidence".into(), c.dim_h1_incidence);
        r.checks.values.insert("simplicial".into(), c.dim_h1_simplicial);
        r.checks.agree = Some(c.agree);
        Ok(r)
    })
}

/// Parse `q` or `fp:<prime>`.
pub fn parse_field(s: &str) -> Result<Field, String> {
    if s == "q" {
        return Ok(Field::Rational);
    }
    let p = s
        .strip_prefix("fp:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| format!("expected `q` or `fp:<prime>`, got `{s}`"))?;
    if is_prime(p) {
        Ok(Field::Prime(p))
    } else {
        Err(format!("{p} is not prime"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::parse;

    const KRONECKER: &str = "quiver k2\nvertex x\nvertex y\narrow a x y\narrow b x y\nend\n";

    #[test]
    fn formula_and_oracle_on_kronecker() {
        let doc = parse(KRONECKER).unwrap();
        let opts = RunOptions::default();
        let f = run_formula(&doc, &opts).unwrap();
        assert_eq!((f.dim_h1, f.method.as_str()), (3, "path_algebra_acyclic"));
        let o = run_oracle(&doc, &opts).unwrap();
        assert_eq!(o.dim_h1, 3);
        assert_eq!(o.checks.values["bar_h0"], 1);
        assert_eq!(o.checks.agree, Some(true));
        let c = run_check(&doc, &opts).unwrap();
        assert_eq!(c.exit_code(), EXIT_OK);
    }

    #[test]
    fn unavailable_formula_is_unsupported() {
        let doc = parse("quiver c\nvertex 1\nvertex 2\narrow a 1 2\narrow b 2 1\nend\n").unwrap();
        let e = run_formula(&doc, &RunOptions::default()).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_UNSUPPORTED);
        let e = run_oracle(&doc, &RunOptions::default()).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_UNSUPPORTED);
    }

    #[test]
    fn guard_is_configurable() {
        let doc = parse(KRONECKER).unwrap();
        let opts = RunOptions {
            max_dim: Some(3),
            ..RunOptions::default()
        };
        assert_eq!(run_oracle(&doc, &opts).unwrap_err().exit_code(), EXIT_UNSUPPORTED);
        let opts = RunOptions {
            max_dim_h2: Some(2),
            ..RunOptions::default()
        };
        assert!(!run_oracle(&doc, &opts).unwrap().checks.values.contains_key("bar_h2"));
    }

    #[test]
    fn fields() {
        assert_eq!(parse_field("q"), Ok(Field::Rational));
        assert_eq!(parse_field("fp:101"), Ok(Field::Prime(101)));
        assert!(parse_field("fp:100").is_err());
        assert!(parse_field("r").is_err());
    }

    #[test]
    fn json_schema() {
        let doc = parse(KRONECKER).unwrap();
        let r = run_check(&doc, &RunOptions::default()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["checks", "dim_h1", "field", "intermediates", "method", "name"]);
        assert_eq!(v["checks"]["agree"], true);
        assert_eq!(v["field"], "q");
    }
}
