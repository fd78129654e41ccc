//! Relation schemes on path algebras and their finite-dimensional quotients.
//!
//! A presentation is a quiver together with one of: no relations, a monomial
//! ideal generated by a minimal set of paths, a truncation ideal `F^m`, or a
//! poset (incidence algebra on its Hasse quiver). [`build_algebra`] turns a
//! presentation into structure constants.

mod algebra;

use std::collections::{HashMap, HashSet};

use thiserror::Error;

pub use algebra::{AlgebraError, LinComb, StructureConstantAlgebra};

use crate::quiver::{compose, Component, Path, Quiver, QuiverError};
use crate::simplicial::{self, Poset, PosetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("length < 2 generator `{0}`")]
    ShortGenerator(String),
    #[error("non-minimal: `{outer}` contains `{inner}`")]
    NonMinimal { outer: String, inner: String },
    #[error("infinite basis: relation-avoiding paths are unbounded")]
    InfiniteBasis,
    #[error("infinite slice between `{0}` and `{1}`")]
    InfiniteSlice(String, String),
    #[error("truncation level must be at least 2, got {0}")]
    TruncationTooSmall(usize),
    #[error("infinite dimensional algebra")]
    InfiniteDimensional,
    #[error("ideal is not admissible")]
    NotAdmissible,
    #[error("operation not supported for {0}")]
    Unsupported(&'static str),
}

/// Two-sided ideal generated by a minimal set of paths of length at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MonomialIdeal {
    generators: Vec<Path>,
}

impl MonomialIdeal {
    /// Deduplicate, check minimality, and sort the generators.
    pub fn new(quiver: &Quiver, generators: Vec<Path>) -> Result<Self, PresentationError> {
        let mut seen = HashSet::new();
        let mut generators: Vec<Path> = generators
            .into_iter()
            .filter(|p| seen.insert(p.clone()))
            .collect();
        check_minimal(quiver, &generators)?;
        quiver.sort_paths(&mut generators);
        Ok(MonomialIdeal { generators })
    }

    pub fn empty() -> Self {
        MonomialIdeal::default()
    }

    pub fn generators(&self) -> &[Path] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn max_generator_len(&self) -> usize {
        self.generators.iter().map(Path::len).max().unwrap_or(0)
    }

    /// Generators lying inside the component, in component indices.
    pub fn restrict(&self, component: &Component) -> MonomialIdeal {
        MonomialIdeal {
            generators: self
                .generators
                .iter()
                .filter_map(|g| component.restrict_path(g))
                .collect(),
        }
    }
}

/// The truncation ideal `F^m`, spanned by all paths of length at least `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationIdeal {
    m: usize,
}

impl TruncationIdeal {
    pub fn new(m: usize) -> Result<Self, PresentationError> {
        if m < 2 {
            return Err(PresentationError::TruncationTooSmall(m));
        }
        Ok(TruncationIdeal { m })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `F^m` as a monomial ideal: all paths of length exactly `m`.
    pub fn as_monomial(&self, quiver: &Quiver) -> MonomialIdeal {
        let mut generators: Vec<Path> = quiver
            .enumerate_paths(Some(self.m))
            .expect("bounded enumeration never fails")
            .into_iter()
            .filter(|p| p.len() == self.m)
            .collect();
        quiver.sort_paths(&mut generators);
        MonomialIdeal { generators }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationScheme {
    None,
    Monomial(MonomialIdeal),
    Truncated(TruncationIdeal),
    Incidence(Poset),
}

/// A path algebra modulo one relation scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPresentation {
    quiver: Quiver,
    scheme: RelationScheme,
}

impl AlgebraPresentation {
    pub fn path_algebra(quiver: Quiver) -> Self {
        AlgebraPresentation {
            quiver,
            scheme: RelationScheme::None,
        }
    }

    pub fn monomial(quiver: Quiver, ideal: MonomialIdeal) -> Self {
        AlgebraPresentation {
            quiver,
            scheme: RelationScheme::Monomial(ideal),
        }
    }

    pub fn truncated(quiver: Quiver, m: usize) -> Result<Self, PresentationError> {
        Ok(AlgebraPresentation {
            quiver,
            scheme: RelationScheme::Truncated(TruncationIdeal::new(m)?),
        })
    }

    /// The incidence algebra of a poset, presented on its Hasse quiver.
    pub fn incidence(poset: Poset) -> Self {
        AlgebraPresentation {
            quiver: simplicial::hasse_quiver(&poset),
            scheme: RelationScheme::Incidence(poset),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn scheme(&self) -> &RelationScheme {
        &self.scheme
    }

    /// The monomial generators of the ideal, when the ideal is monomial.
    pub fn monomial_generators(&self) -> Option<MonomialIdeal> {
        match &self.scheme {
            RelationScheme::None => Some(MonomialIdeal::empty()),
            RelationScheme::Monomial(z) => Some(z.clone()),
            RelationScheme::Truncated(t) => Some(t.as_monomial(&self.quiver)),
            RelationScheme::Incidence(_) => None,
        }
    }

    /// One presentation per connected component of the quiver.
    pub fn components(&self) -> Vec<(Component, AlgebraPresentation)> {
        self.quiver
            .connected_components()
            .into_iter()
            .map(|c| {
                let scheme = match &self.scheme {
                    RelationScheme::None => RelationScheme::None,
                    RelationScheme::Monomial(z) => RelationScheme::Monomial(z.restrict(&c)),
                    RelationScheme::Truncated(t) => RelationScheme::Truncated(*t),
                    RelationScheme::Incidence(p) => {
                        let names: Vec<&str> = c.quiver.vertices().iter().map(|v| v.as_str()).collect();
                        RelationScheme::Incidence(p.restrict(&names))
                    }
                };
                let sub = AlgebraPresentation {
                    quiver: c.quiver.clone(),
                    scheme,
                };
                (c, sub)
            })
            .collect()
    }

    /// Disjoint union of two quiver presentations.
    ///
    /// Equal truncation levels stay truncated; any other mix of quiver schemes
    /// becomes a monomial presentation. Incidence presentations are rejected.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self, PresentationError> {
        let (quiver, voff, aoff) = self.quiver.disjoint_union(&other.quiver);
        if let (RelationScheme::Truncated(a), RelationScheme::Truncated(b)) =
            (&self.scheme, &other.scheme)
        {
            if a == b {
                return Ok(AlgebraPresentation {
                    quiver,
                    scheme: RelationScheme::Truncated(*a),
                });
            }
        }
        if matches!(
            (&self.scheme, &other.scheme),
            (RelationScheme::None, RelationScheme::None)
        ) {
            return Ok(AlgebraPresentation::path_algebra(quiver));
        }
        let (Some(z1), Some(z2)) = (self.monomial_generators(), other.monomial_generators())
        else {
            return Err(PresentationError::Unsupported("incidence presentations"));
        };
        let gens = z1
            .generators
            .iter()
            .cloned()
            .chain(z2.generators.iter().map(|g| g.shifted(voff, aoff)))
            .collect();
        let ideal = MonomialIdeal::new(&quiver, gens)?;
        Ok(AlgebraPresentation::monomial(quiver, ideal))
    }

    /// Basis paths of the quotient (quiver schemes only).
    pub fn path_basis(&self) -> Result<Vec<Path>, PresentationError> {
        let z = self
            .monomial_generators()
            .ok_or(PresentationError::Unsupported("incidence presentations"))?;
        basis_b(&self.quiver, &z).map_err(|e| match e {
            PresentationError::InfiniteBasis => PresentationError::InfiniteDimensional,
            e => e,
        })
    }
}

/// Every generator has length at least 2 and none contains another as a strict sub-path.
pub fn check_minimal(quiver: &Quiver, generators: &[Path]) -> Result<(), PresentationError> {
    for g in generators {
        if g.len() < 2 {
            return Err(PresentationError::ShortGenerator(quiver.path_label(g)));
        }
    }
    for outer in generators {
        for inner in generators {
            if inner.len() < outer.len() && outer.contains(inner) {
                return Err(PresentationError::NonMinimal {
                    outer: quiver.path_label(outer),
                    inner: quiver.path_label(inner),
                });
            }
        }
    }
    Ok(())
}

/// True iff some generator occurs as a contiguous sub-path of `p`.
pub fn contains_generator(p: &Path, ideal: &MonomialIdeal) -> bool {
    ideal.generators.iter().any(|z| p.contains(z))
}

/// True iff a generator is a suffix of `extended`.
///
/// Relation-avoiding paths are grown one arrow at a time, so a new occurrence
/// can only end at the last arrow.
fn ends_with_generator(extended: &Path, ideal: &MonomialIdeal) -> bool {
    let n = extended.len();
    ideal.generators.iter().any(|z| {
        let k = z.len();
        k <= n && extended.arrows()[n - k..] == z.arrows()[..]
    })
}

fn extend(quiver: &Quiver, p: &Path, arrow: usize) -> Path {
    compose(p, &quiver.arrow_path(arrow)).expect("arrow starts at path target")
}

/// Whether the set of relation-avoiding paths is finite (so `F^n ⊆ I` for some `n`).
///
/// States of the avoidance automaton are the avoiding paths of length
/// `L - 1` (`L` the longest generator); a transition appends an arrow when the
/// result still avoids every generator. Avoiding paths are unbounded exactly
/// when this graph has a cycle.
pub fn is_admissible_monomial(quiver: &Quiver, ideal: &MonomialIdeal) -> bool {
    if ideal.is_empty() {
        return quiver.is_acyclic();
    }
    if quiver.is_acyclic() {
        return true;
    }
    let window = ideal.max_generator_len() - 1;
    let states = avoiding_paths_up_to(quiver, ideal, window)
        .into_iter()
        .filter(|p| p.len() == window)
        .collect::<Vec<_>>();
    let index: HashMap<&[usize], usize> = states
        .iter()
        .enumerate()
        .map(|(i, p)| (p.arrows(), i))
        .collect();
    let successors: Vec<Vec<usize>> = states
        .iter()
        .map(|w| {
            quiver
                .arrows()
                .iter()
                .enumerate()
                .filter(|(_, a)| a.source == w.target())
                .filter_map(|(ai, _)| {
                    let next = extend(quiver, w, ai);
                    if ends_with_generator(&next, ideal) {
                        None
                    } else {
                        index.get(&next.arrows()[1..]).copied()
                    }
                })
                .collect()
        })
        .collect();
    !has_cycle(&successors)
}

fn has_cycle(successors: &[Vec<usize>]) -> bool {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let mut mark = vec![Mark::New; successors.len()];
    for start in 0..successors.len() {
        if mark[start] != Mark::New {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        mark[start] = Mark::Active;
        while let Some((v, i)) = stack.pop() {
            if i < successors[v].len() {
                stack.push((v, i + 1));
                let w = successors[v][i];
                match mark[w] {
                    Mark::Active => return true,
                    Mark::New => {
                        mark[w] = Mark::Active;
                        stack.push((w, 0));
                    }
                    Mark::Done => {}
                }
            } else {
                mark[v] = Mark::Done;
            }
        }
    }
    false
}

/// Relation-avoiding paths of length at most `max_len`.
fn avoiding_paths_up_to(quiver: &Quiver, ideal: &MonomialIdeal, max_len: usize) -> Vec<Path> {
    let mut all: Vec<Path> = (0..quiver.vertex_count()).map(Path::trivial).collect();
    let mut frontier = all.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for (ai, a) in quiver.arrows().iter().enumerate() {
                if a.source != p.target() {
                    continue;
                }
                let q = extend(quiver, p, ai);
                if !ends_with_generator(&q, ideal) {
                    next.push(q);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

/// Length of the longest relation-avoiding path, if avoiding paths are bounded.
pub fn longest_avoiding_path(quiver: &Quiver, ideal: &MonomialIdeal) -> Option<usize> {
    basis_b(quiver, ideal)
        .ok()
        .map(|b| b.iter().map(Path::len).max().unwrap_or(0))
}

/// All paths avoiding every generator (the basis of `kQ/⟨Z⟩`), sorted.
pub fn basis_b(quiver: &Quiver, ideal: &MonomialIdeal) -> Result<Vec<Path>, PresentationError> {
    if !is_admissible_monomial(quiver, ideal) {
        return Err(PresentationError::InfiniteBasis);
    }
    let mut all = avoiding_paths_up_to(quiver, ideal, usize::MAX);
    quiver.sort_paths(&mut all);
    Ok(all)
}

/// Path counts from `x` to `y`: in `I`, in `FI + IF`, and in `kQ`.
///
/// On a quiver with oriented cycles the slices of `kQ` are infinite; counts
/// are then taken over paths of length at most `cutoff`, which exceeds every
/// basis path and every generator, so the equalities between the three
/// numbers are the same as between the true slices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SliceDims {
    pub ideal: usize,
    pub ideal_products: usize,
    pub ambient: usize,
    pub cutoff: Option<usize>,
}

pub fn slice_ideal_dims(
    quiver: &Quiver,
    ideal: &MonomialIdeal,
    x: usize,
    y: usize,
) -> Result<SliceDims, PresentationError> {
    let cutoff = if quiver.is_acyclic() {
        None
    } else {
        let longest = longest_avoiding_path(quiver, ideal).ok_or_else(|| {
            PresentationError::InfiniteSlice(
                quiver.vertices()[x].to_string(),
                quiver.vertices()[y].to_string(),
            )
        })?;
        Some((longest + 1).max(ideal.max_generator_len()))
    };
    let paths = quiver.enumerate_paths(cutoff)?;
    let mut dims = SliceDims {
        ideal: 0,
        ideal_products: 0,
        ambient: 0,
        cutoff,
    };
    for p in paths.iter().filter(|p| p.source() == x && p.target() == y) {
        dims.ambient += 1;
        let mut in_ideal = false;
        let mut in_products = false;
        for z in ideal.generators() {
            for start in p.occurrences(z) {
                in_ideal = true;
                if start > 0 || start + z.len() < p.len() {
                    in_products = true;
                }
            }
        }
        dims.ideal += usize::from(in_ideal);
        dims.ideal_products += usize::from(in_products);
    }
    Ok(dims)
}

/// Pre-generated test for a monomial ideal by scanning every vertex-pair slice.
pub fn is_pregenerated_monomial(
    quiver: &Quiver,
    ideal: &MonomialIdeal,
) -> Result<bool, PresentationError> {
    if !is_admissible_monomial(quiver, ideal) {
        return Err(PresentationError::NotAdmissible);
    }
    let n = quiver.vertex_count();
    for x in 0..n {
        for y in 0..n {
            let d = slice_ideal_dims(quiver, ideal, x, y)?;
            if d.ideal != d.ambient && d.ideal != d.ideal_products {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Shortcut for the pre-generated test: for every pair `(x, y)`, either no
/// basis path runs from `x` to `y` or no generator does.
pub fn is_pregenerated_monomial_shortcut(
    quiver: &Quiver,
    ideal: &MonomialIdeal,
) -> Result<bool, PresentationError> {
    let basis = basis_b(quiver, ideal).map_err(|_| PresentationError::NotAdmissible)?;
    let ends = |p: &Path| (p.source(), p.target());
    let basis_ends: HashSet<(usize, usize)> = basis.iter().map(ends).collect();
    Ok(!ideal
        .generators()
        .iter()
        .any(|z| basis_ends.contains(&ends(z))))
}

/// `F^m` is pre-generated iff every path parallel to a length-`m` path has length at least `m`.
pub fn truncated_is_pregenerated(quiver: &Quiver, m: usize) -> Result<bool, PresentationError> {
    TruncationIdeal::new(m)?;
    let paths = quiver.enumerate_paths(Some(m))?;
    let short: HashSet<(usize, usize)> = paths
        .iter()
        .filter(|p| p.len() < m)
        .map(|p| (p.source(), p.target()))
        .collect();
    Ok(!paths
        .iter()
        .filter(|p| p.len() == m)
        .any(|p| short.contains(&(p.source(), p.target()))))
}

/// Materialize a presentation as structure constants.
///
/// Quiver schemes use the basis of relation-avoiding paths with concatenation
/// as product; the incidence scheme uses the matrix units of the poset.
pub fn build_algebra(
    presentation: &AlgebraPresentation,
) -> Result<StructureConstantAlgebra, PresentationError> {
    if let RelationScheme::Incidence(poset) = presentation.scheme() {
        return Ok(simplicial::incidence_algebra(poset));
    }
    let quiver = presentation.quiver();
    let basis = presentation.path_basis()?;
    algebra_on_paths(quiver, &basis)
}

/// Structure constants for the span of a concatenation-closed-modulo-zero path set.
pub(crate) fn algebra_on_paths(
    quiver: &Quiver,
    basis: &[Path],
) -> Result<StructureConstantAlgebra, PresentationError> {
    let index: HashMap<&Path, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let labels = basis.iter().map(|p| quiver.path_label(p)).collect();
    let trivial: Vec<(usize, usize)> = basis
        .iter()
        .enumerate()
        .filter(|(_, p)| p.is_trivial())
        .map(|(i, p)| (p.source(), i))
        .collect();
    let unit: Vec<usize> = trivial.iter().map(|(_, i)| *i).collect();
    let idempotents = trivial
        .iter()
        .map(|(v, i)| (quiver.vertices()[*v].clone(), *i))
        .collect();
    Ok(StructureConstantAlgebra::from_basis_products(
        labels,
        |i, j| compose(&basis[i], &basis[j]).and_then(|p| index.get(&p).copied()),
        &unit,
        idempotents,
    )?)
}

/// The path algebra `kQ`, the quotient `kQ/⟨Z⟩`, and the projection between
/// them (`None` for basis paths of `kQ` that lie in the ideal).
pub struct QuotientMap {
    pub path_algebra: StructureConstantAlgebra,
    pub quotient: StructureConstantAlgebra,
    pub projection: Vec<Option<usize>>,
}

pub fn quotient_map(quiver: &Quiver, ideal: &MonomialIdeal) -> Result<QuotientMap, PresentationError> {
    let all = quiver
        .enumerate_paths(None)
        .map_err(|_| PresentationError::InfiniteDimensional)?;
    let basis = basis_b(quiver, ideal)?;
    let index: HashMap<&Path, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let projection = all.iter().map(|p| index.get(p).copied()).collect();
    Ok(QuotientMap {
        path_algebra: algebra_on_paths(quiver, &all)?,
        quotient: algebra_on_paths(quiver, &basis)?,
        projection,
    })
}
