//! Closed formulas for `dim H¹(Λ, Λ)` and a dispatcher choosing among them.
//!
//! Every formula of the form `1 - |Q0| + …` is evaluated per connected
//! component and summed. Couples are pairs `(a, ε)` with `a` an arrow and `ε`
//! a basis path parallel to it; they are stored as [`ParallelPair`]s with
//! the arrow on the left.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::exactalg::{BimoduleRep, ExactMatrix, Oracle, OracleError};
use crate::presentations::{
    basis_b, build_algebra, contains_generator, is_admissible_monomial, is_pregenerated_monomial,
    truncated_is_pregenerated, AlgebraPresentation, MonomialIdeal, PresentationError,
    RelationScheme, TruncationIdeal,
};
use crate::quiver::{parallel_pairs, Component, ParallelPair, Path, Quiver, QuiverError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("cyclic quiver unsupported")]
    CyclicQuiver,
    #[error("quiver is not connected")]
    Disconnected,
    #[error("not pre-generated")]
    NotPregenerated,
    #[error("quiver is not narrow")]
    NotNarrow,
    #[error("formula unavailable, use oracle: {0}")]
    FormulaUnavailable(&'static str),
    #[error("formula produced a negative dimension ({0})")]
    Negative(i64),
}

/// Which closed formula produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    PathAlgebraAcyclic,
    TruncatedAcyclic,
    MonomialAcyclic,
    Pregenerated,
    Narrow,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::PathAlgebraAcyclic => "path_algebra_acyclic",
            Method::TruncatedAcyclic => "truncated_acyclic",
            Method::MonomialAcyclic => "monomial_acyclic",
            Method::Pregenerated => "pregenerated",
            Method::Narrow => "narrow",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentH1 {
    pub vertices: Vec<VertexId>,
    pub dim_h1: usize,
}

/// Result of a closed formula; `intermediates` are summed over components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Report {
    pub dim_h1: usize,
    pub method: Method,
    pub per_component: Vec<ComponentH1>,
    pub intermediates: BTreeMap<String, i64>,
}

impl H1Report {
    fn assemble(method: Method, parts: Vec<(Component, usize, Vec<(&'static str, i64)>)>) -> Self {
        let mut intermediates = BTreeMap::new();
        let mut per_component = Vec::new();
        for (c, dim_h1, counts) in parts {
            for (k, v) in counts {
                *intermediates.entry(k.to_owned()).or_insert(0) += v;
            }
            per_component.push(ComponentH1 {
                vertices: c.quiver.vertices().to_vec(),
                dim_h1,
            });
        }
        intermediates.insert("components".into(), per_component.len() as i64);
        H1Report {
            dim_h1: per_component.iter().map(|c| c.dim_h1).sum(),
            method,
            per_component,
            intermediates,
        }
    }
}

/// The couples `Q1//B` split into glued, effective and non-effective ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoupleClassification {
    pub all: BTreeSet<ParallelPair>,
    pub glued: BTreeSet<ParallelPair>,
    pub effective: BTreeSet<ParallelPair>,
    pub non_effective: BTreeSet<ParallelPair>,
}

/// Slice multiplicities of a bimodule over a path algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleSliceData {
    /// `(y, x) ↦` dimension of the part of `X` running from `x` to `y`,
    /// which is `e_x X e_y` for diagram-order multiplication.
    pub slice_dims: BTreeMap<(VertexId, VertexId), usize>,
    /// Elements commuting with every vertex idempotent.
    pub dim_x_e: usize,
    /// Elements commuting with the whole algebra.
    pub dim_x_t: usize,
}

impl BimoduleSliceData {
    /// Read the slices off the idempotent projections `v ↦ e_x v e_y`.
    pub fn from_rep(x: &BimoduleRep<'_>, oracle: &Oracle) -> Result<Self, FormulaError> {
        let idem = x.algebra().vertex_idempotents();
        let mut slice_dims = BTreeMap::new();
        let mut dim_x_e = 0;
        for (y, ey) in idem {
            for (v, ev) in idem {
                let proj: ExactMatrix = x.left(*ev).mul(x.right(*ey));
                let d = proj.rank(oracle.field)?;
                if y == v {
                    dim_x_e += d;
                }
                slice_dims.insert((y.clone(), v.clone()), d);
            }
        }
        Ok(BimoduleSliceData {
            slice_dims,
            dim_x_e,
            dim_x_t: oracle.invariants_dim(x)?,
        })
    }
}

fn natural(v: i64) -> Result<usize, FormulaError> {
    usize::try_from(v).map_err(|_| FormulaError::Negative(v))
}

fn require_acyclic(quiver: &Quiver) -> Result<(), FormulaError> {
    if quiver.is_acyclic() {
        Ok(())
    } else {
        Err(FormulaError::CyclicQuiver)
    }
}

/// `Q1//B` for a basis path set `B`.
fn arrow_couples(quiver: &Quiver, basis: &[Path]) -> BTreeSet<ParallelPair> {
    parallel_pairs(&quiver.arrow_paths(), basis).into_iter().collect()
}

/// Couples `(a, ε)` where `a` is the first or last arrow of `ε`, or `a` is a
/// loop and `ε` the trivial path at its vertex.
pub fn glued_pairs(quiver: &Quiver, basis: &[Path]) -> BTreeSet<ParallelPair> {
    arrow_couples(quiver, basis)
        .into_iter()
        .filter(|pair| {
            let a = pair.left.arrows()[0];
            let eps = &pair.right;
            if eps.is_trivial() {
                quiver.arrows()[a].is_loop()
            } else {
                eps.first_arrow() == Some(a) || eps.last_arrow() == Some(a)
            }
        })
        .collect()
}

/// Classify `Q1//B` on an acyclic quiver.
///
/// A non-glued couple `(a, ε)` is effective when some generator containing
/// `a` becomes a basis path after replacing that occurrence of `a` by `ε`.
pub fn effective_pairs(
    quiver: &Quiver,
    ideal: &MonomialIdeal,
    basis: &[Path],
) -> Result<CoupleClassification, FormulaError> {
    require_acyclic(quiver)?;
    let all = arrow_couples(quiver, basis);
    let glued = glued_pairs(quiver, basis);
    let effective: BTreeSet<ParallelPair> = all
        .iter()
        .filter(|pair| !glued.contains(pair))
        .filter(|pair| {
            ideal.generators().iter().any(|gamma| {
                gamma
                    .occurrences(&pair.left)
                    .any(|pos| !contains_generator(&gamma.substitute(pos, &pair.right), ideal))
            })
        })
        .cloned()
        .collect();
    let non_effective = all.difference(&effective).cloned().collect();
    Ok(CoupleClassification {
        all,
        glued,
        effective,
        non_effective,
    })
}

/// `1 - |Q0| + |(Q1//B)_ne|` per component, for a monomial ideal on an acyclic quiver.
pub fn h1_monomial_acyclic(quiver: &Quiver, ideal: &MonomialIdeal) -> Result<H1Report, FormulaError> {
    require_acyclic(quiver)?;
    let mut parts = Vec::new();
    for c in quiver.connected_components() {
        let z = ideal.restrict(&c);
        let basis = basis_b(&c.quiver, &z)?;
        let cls = effective_pairs(&c.quiver, &z, &basis)?;
        let q0 = c.quiver.vertex_count() as i64;
        let ne = cls.non_effective.len() as i64;
        let dim = natural(1 - q0 + ne)?;
        parts.push((
            c.clone(),
            dim,
            vec![
                ("q0", q0),
                ("q1", c.quiver.arrow_count() as i64),
                ("q1_par_b", cls.all.len() as i64),
                ("q1_par_b_glued", cls.glued.len() as i64),
                ("q1_par_b_e", cls.effective.len() as i64),
                ("q1_par_b_ne", ne),
            ],
        ));
    }
    Ok(H1Report::assemble(Method::MonomialAcyclic, parts))
}

/// `1 - |Q0| + |Q1//B|` per component, `B` the paths of length below `m`.
pub fn h1_truncated_acyclic(quiver: &Quiver, m: usize) -> Result<H1Report, FormulaError> {
    TruncationIdeal::new(m)?;
    require_acyclic(quiver)?;
    let mut parts = Vec::new();
    for c in quiver.connected_components() {
        let basis: Vec<Path> = c
            .quiver
            .enumerate_paths(Some(m - 1))?
            .into_iter()
            .collect();
        let q0 = c.quiver.vertex_count() as i64;
        let couples = arrow_couples(&c.quiver, &basis).len() as i64;
        parts.push((
            c.clone(),
            natural(1 - q0 + couples)?,
            vec![
                ("q0", q0),
                ("q1", c.quiver.arrow_count() as i64),
                ("q1_par_b", couples),
            ],
        ));
    }
    Ok(H1Report::assemble(Method::TruncatedAcyclic, parts))
}

fn is_pregenerated(presentation: &AlgebraPresentation) -> Result<bool, FormulaError> {
    let quiver = presentation.quiver();
    Ok(match presentation.scheme() {
        RelationScheme::None => quiver.is_acyclic(),
        RelationScheme::Monomial(z) => {
            if !is_admissible_monomial(quiver, z) {
                return Err(PresentationError::NotAdmissible.into());
            }
            is_pregenerated_monomial(quiver, z)?
        }
        RelationScheme::Truncated(t) => truncated_is_pregenerated(quiver, t.m())?,
        RelationScheme::Incidence(_) => false,
    })
}

/// `dim Z(Λ) - Σ_x dim xΛx + Σ_{x,y} |yQ1x| dim yΛx` for a pre-generated ideal.
///
/// The center comes from the oracle on each component's algebra; the slices
/// are counted on the path basis.
pub fn h1_pregenerated(
    presentation: &AlgebraPresentation,
    oracle: &Oracle,
) -> Result<H1Report, FormulaError> {
    if !is_pregenerated(presentation)? {
        return Err(FormulaError::NotPregenerated);
    }
    let mut parts = Vec::new();
    for (c, sub) in presentation.components() {
        let q = sub.quiver();
        let basis = sub.path_basis()?;
        let algebra = build_algebra(&sub)?;
        let center = oracle.center_dim(&algebra)? as i64;
        let n = q.vertex_count();
        let mut slice = vec![vec![0i64; n]; n];
        for p in &basis {
            slice[p.source()][p.target()] += 1;
        }
        let diag: i64 = (0..n).map(|x| slice[x][x]).sum();
        let arrows: i64 = q
            .arrows()
            .iter()
            .map(|a| slice[a.source][a.target])
            .sum();
        parts.push((
            c.clone(),
            natural(center - diag + arrows)?,
            vec![
                ("q0", n as i64),
                ("center_dim", center),
                ("sum_diag_slices", diag),
                ("sum_arrow_slices", arrows),
            ],
        ));
    }
    Ok(H1Report::assemble(Method::Pregenerated, parts))
}

/// `1 - |Q0| + |Q1|` per component on a narrow quiver, for any admissible monomial ideal.
pub fn h1_narrow(quiver: &Quiver) -> Result<H1Report, FormulaError> {
    if !quiver.is_narrow()? {
        return Err(FormulaError::NotNarrow);
    }
    let parts = quiver
        .connected_components()
        .into_iter()
        .map(|c| {
            let q0 = c.quiver.vertex_count() as i64;
            let q1 = c.quiver.arrow_count() as i64;
            Ok((c, natural(1 - q0 + q1)?, vec![("q0", q0), ("q1", q1)]))
        })
        .collect::<Result<Vec<_>, FormulaError>>()?;
    Ok(H1Report::assemble(Method::Narrow, parts))
}

/// `dim X^T - dim X^E + Σ_{x,y} |yQ1x| dim yXx` for a bimodule `X` over `kQ`.
pub fn h1_tensor_coefficients(quiver: &Quiver, x: &BimoduleSliceData) -> Result<usize, FormulaError> {
    let mut hom = 0i64;
    for a in quiver.arrows() {
        let key = (
            quiver.vertices()[a.target].clone(),
            quiver.vertices()[a.source].clone(),
        );
        hom += *x.slice_dims.get(&key).unwrap_or(&0) as i64;
    }
    natural(x.dim_x_t as i64 - x.dim_x_e as i64 + hom)
}

/// `1 - |Q0| + |Q//Q1|` per component for the path algebra of an acyclic quiver.
pub fn h1_path_algebra_acyclic(quiver: &Quiver) -> Result<H1Report, FormulaError> {
    require_acyclic(quiver)?;
    let mut parts = Vec::new();
    for c in quiver.connected_components() {
        let counts = c.quiver.path_counts()?;
        let q0 = c.quiver.vertex_count() as i64;
        let couples: i64 = c
            .quiver
            .arrows()
            .iter()
            .map(|a| counts[a.source][a.target] as i64)
            .sum();
        parts.push((
            c.clone(),
            natural(1 - q0 + couples)?,
            vec![
                ("q0", q0),
                ("q1", c.quiver.arrow_count() as i64),
                ("q_par_q1", couples),
                ("center_dim", 1),
                ("sum_diag_slices", q0),
            ],
        ));
    }
    Ok(H1Report::assemble(Method::PathAlgebraAcyclic, parts))
}

/// `1 - |Q0| + |Q1|` for a connected acyclic quiver: a lower bound for
/// `dim H¹` of every monomial quotient, since the diagonal couples are never
/// effective.
pub fn h1_bound_monomial(quiver: &Quiver, ideal: &MonomialIdeal) -> Result<usize, FormulaError> {
    require_acyclic(quiver)?;
    if !quiver.is_connected() {
        return Err(FormulaError::Disconnected);
    }
    crate::presentations::check_minimal(quiver, ideal.generators())?;
    natural(1 - quiver.vertex_count() as i64 + quiver.arrow_count() as i64)
}

/// Pick the first applicable formula: path algebra, truncated, monomial
/// (all acyclic), then pre-generated.
pub fn classify_and_compute(
    presentation: &AlgebraPresentation,
    oracle: &Oracle,
) -> Result<H1Report, FormulaError> {
    let quiver = presentation.quiver();
    let acyclic = quiver.is_acyclic();
    match presentation.scheme() {
        RelationScheme::None if acyclic => h1_path_algebra_acyclic(quiver),
        RelationScheme::None => Err(FormulaError::FormulaUnavailable(
            "path algebra of a cyclic quiver is infinite dimensional",
        )),
        RelationScheme::Truncated(t) if acyclic => h1_truncated_acyclic(quiver, t.m()),
        RelationScheme::Monomial(z) if acyclic => h1_monomial_acyclic(quiver, z),
        RelationScheme::Incidence(_) => Err(FormulaError::FormulaUnavailable(
            "incidence algebras have no closed formula here",
        )),
        _ => match h1_pregenerated(presentation, oracle) {
            Err(FormulaError::NotPregenerated) => Err(FormulaError::FormulaUnavailable(
                "ideal on a cyclic quiver is not pre-generated",
            )),
            r => r,
        },
    }
}
