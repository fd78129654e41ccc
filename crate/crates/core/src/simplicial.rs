//! Finite posets, their incidence algebras and order complexes.
//!
//! The first Hochschild cohomology of an incidence algebra agrees with the
//! first simplicial cohomology of the order complex; [`gs_compare`] computes
//! both sides independently.

use num_rational::BigRational;
use thiserror::Error;

use crate::exactalg::{BimoduleRep, ExactMatrix, Field, Oracle, OracleError};
use crate::presentations::StructureConstantAlgebra;
use crate::quiver::{Quiver, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("empty poset")]
    Empty,
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("antisymmetry violation: `{0}` <= `{1}` <= `{0}`")]
    Antisymmetry(String, String),
    #[error("relation is not {0}")]
    NotAnOrder(&'static str),
}

/// A finite partially ordered set; `leq[a][b]` means `a <= b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl Poset {
    /// Build from relation pairs `(a, b)` meaning `a <= b`; the reflexive
    /// transitive closure is taken before validation.
    pub fn new<E, R, S>(elements: E, relations: R) -> Result<Self, PosetError>
    where
        E: IntoIterator<Item = S>,
        R: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let elements: Vec<String> = elements.into_iter().map(|e| e.as_ref().to_owned()).collect();
        if elements.is_empty() {
            return Err(PosetError::Empty);
        }
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(PosetError::DuplicateElement(e.clone()));
            }
        }
        let n = elements.len();
        let index = |name: &str| {
            elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| PosetError::UnknownElement(name.to_owned()))
        };
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in relations {
            let (a, b) = (index(a.as_ref())?, index(b.as_ref())?);
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        let p = Poset { elements, leq };
        validate_poset(&p)?;
        Ok(p)
    }

    /// Build from cover pairs `(upper, lower)`.
    pub fn from_covers<E, R, S>(elements: E, covers: R) -> Result<Self, PosetError>
    where
        E: IntoIterator<Item = S>,
        R: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        Poset::new(elements, covers.into_iter().map(|(u, l)| (l, u)))
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    /// Cover pairs `(upper, lower)`: `lower < upper` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for upper in 0..n {
            for lower in 0..n {
                if self.lt(lower, upper)
                    && !(0..n).any(|z| self.lt(lower, z) && self.lt(z, upper))
                {
                    out.push((upper, lower));
                }
            }
        }
        out
    }

    /// The induced sub-poset on the named elements, in the given order.
    pub fn restrict(&self, names: &[&str]) -> Poset {
        let idx: Vec<usize> = names
            .iter()
            .map(|n| self.elements.iter().position(|e| e == n).expect("known element"))
            .collect();
        Poset {
            elements: idx.iter().map(|&i| self.elements[i].clone()).collect(),
            leq: idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.leq[i][j]).collect())
                .collect(),
        }
    }

    /// Number of connected components of the comparability graph.
    pub fn comparability_components(&self) -> usize {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                for w in 0..n {
                    if !seen[w] && (self.leq[v][w] || self.leq[w][v]) {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }
}

/// Check reflexivity, antisymmetry and transitivity.
pub fn validate_poset(p: &Poset) -> Result<(), PosetError> {
    let n = p.len();
    if n == 0 {
        return Err(PosetError::Empty);
    }
    for i in 0..n {
        if !p.leq[i][i] {
            return Err(PosetError::NotAnOrder("reflexive"));
        }
        for j in 0..n {
            if i != j && p.leq[i][j] && p.leq[j][i] {
                return Err(PosetError::Antisymmetry(
                    p.elements[i].clone(),
                    p.elements[j].clone(),
                ));
            }
            for k in 0..n {
                if p.leq[i][j] && p.leq[j][k] && !p.leq[i][k] {
                    return Err(PosetError::NotAnOrder("transitive"));
                }
            }
        }
    }
    Ok(())
}

/// One arrow `x → y` per cover `x > y`.
pub fn hasse_quiver(p: &Poset) -> Quiver {
    let arrows: Vec<(String, String, String)> = p
        .covers()
        .into_iter()
        .map(|(u, l)| {
            (
                format!("{}>{}", p.elements[u], p.elements[l]),
                p.elements[u].clone(),
                p.elements[l].clone(),
            )
        })
        .collect();
    Quiver::new(p.elements.clone(), arrows).expect("poset elements are distinct")
}

/// Basis `e(y,x)` for `y <= x` with `e(y,z) e(z,x) = e(y,x)`; the diagonal comes first.
pub fn incidence_algebra(p: &Poset) -> StructureConstantAlgebra {
    let n = p.len();
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    for y in 0..n {
        for x in 0..n {
            if p.lt(y, x) {
                pairs.push((y, x));
            }
        }
    }
    let labels = pairs
        .iter()
        .map(|&(y, x)| {
            if y == x {
                format!("e_{}", p.elements[x])
            } else {
                format!("e({},{})", p.elements[y], p.elements[x])
            }
        })
        .collect();
    let index = |pair: (usize, usize)| pairs.iter().position(|&q| q == pair);
    let unit: Vec<usize> = (0..n).collect();
    let idem = (0..n)
        .map(|i| (VertexId(p.elements[i].clone()), i))
        .collect();
    StructureConstantAlgebra::from_basis_products(
        labels,
        |i, j| {
            let (y, z) = pairs[i];
            let (z2, x) = pairs[j];
            if z == z2 {
                index((y, x))
            } else {
                None
            }
        },
        &unit,
        idem,
    )
    .expect("incidence algebras are associative and unital")
}

/// Strict chains of a poset, by dimension 0, 1, 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderComplex {
    pub simplices_by_dim: [Vec<Vec<usize>>; 3],
}

pub fn order_complex(p: &Poset) -> OrderComplex {
    let n = p.len();
    let vertices: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut edges = Vec::new();
    let mut triangles = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if !p.lt(a, b) {
                continue;
            }
            edges.push(vec![a, b]);
            for c in 0..n {
                if p.lt(b, c) {
                    triangles.push(vec![a, b, c]);
                }
            }
        }
    }
    OrderComplex {
        simplices_by_dim: [vertices, edges, triangles],
    }
}

/// The simplicial coboundary from `degree`-cochains to `degree + 1`-cochains.
///
/// Rows are indexed by the `(degree + 1)`-simplices, columns by the
/// `degree`-simplices, with the alternating face signs.
pub fn coboundary(c: &OrderComplex, degree: usize) -> ExactMatrix {
    let lower = &c.simplices_by_dim[degree];
    let upper = &c.simplices_by_dim[degree + 1];
    let mut m = ExactMatrix::new(lower.len());
    for s in upper {
        let entries = (0..s.len()).map(|drop| {
            let face: Vec<usize> = s
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != drop)
                .map(|(_, v)| *v)
                .collect();
            let col = lower
                .iter()
                .position(|f| *f == face)
                .expect("order complexes are closed under faces");
            let sign = if drop % 2 == 0 { 1 } else { -1 };
            (col, BigRational::from_integer(sign.into()))
        });
        m.push_row(entries);
    }
    m
}

/// Dimension of simplicial cohomology in degree 0 or 1.
pub fn simplicial_h_dim(c: &OrderComplex, degree: usize, field: Field) -> Result<usize, OracleError> {
    let d0 = coboundary(c, 0);
    let d1 = coboundary(c, 1);
    if !d1.mul(&d0).is_zero() {
        return Err(OracleError::Internal("coboundary does not square to zero".into()));
    }
    let r0 = d0.rank(field)?;
    match degree {
        0 => Ok(c.simplices_by_dim[0].len() - r0),
        1 => Ok(c.simplices_by_dim[1].len() - d1.rank(field)? - r0),
        d => Err(OracleError::DegreeOutOfRange(d)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComparisonReport {
    pub dim_h1_incidence: usize,
    pub dim_h1_simplicial: usize,
    pub agree: bool,
}

/// Hochschild H¹ of the incidence algebra against simplicial H¹ of the order complex.
pub fn gs_compare(p: &Poset, oracle: &Oracle) -> Result<ComparisonReport, OracleError> {
    let alg = incidence_algebra(p);
    let regular = BimoduleRep::regular(&alg);
    let dim_h1_incidence = oracle.h1(&regular)?;
    let dim_h1_simplicial = simplicial_h_dim(&order_complex(p), 1, oracle.field)?;
    Ok(ComparisonReport {
        dim_h1_incidence,
        dim_h1_simplicial,
        agree: dim_h1_incidence == dim_h1_simplicial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    pub(crate) fn crown() -> Poset {
        Poset::from_covers(
            ["a", "b", "c", "d"],
            [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        )
        .unwrap()
    }

    /// The relations as printed for the four-element example: a > c, a > d, b < c, b < d.
    fn diamond() -> Poset {
        Poset::from_covers(
            ["a", "b", "c", "d"],
            [("a", "c"), ("a", "d"), ("c", "b"), ("d", "b")],
        )
        .unwrap()
    }

    fn chain(n: usize) -> Poset {
        let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let covers: Vec<(String, String)> = (1..n)
            .map(|i| (names[i].clone(), names[i - 1].clone()))
            .collect();
        Poset::from_covers(names.clone(), covers).unwrap()
    }

    fn antichain(n: usize) -> Poset {
        let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        Poset::new(names, Vec::<(String, String)>::new()).unwrap()
    }

    #[test]
    fn poset_validation() {
        assert!(validate_poset(&chain(3)).is_ok());
        assert!(validate_poset(&antichain(3)).is_ok());
        assert_eq!(
            Poset::new(["a", "b"], [("a", "b"), ("b", "a")]),
            Err(PosetError::Antisymmetry("a".into(), "b".into()))
        );
        assert_eq!(
            Poset::new(["a"], [("a", "z")]),
            Err(PosetError::UnknownElement("z".into()))
        );
        assert!(diamond().lt(1, 0));
    }

    #[test]
    fn hasse() {
        let h = hasse_quiver(&crown());
        assert_eq!((h.vertex_count(), h.arrow_count()), (4, 4));
        assert_eq!(hasse_quiver(&chain(3)).arrow_count(), 2);
        let a = hasse_quiver(&antichain(5));
        assert_eq!((a.vertex_count(), a.arrow_count()), (5, 0));
        // arrows run from the larger element to the smaller
        let arrow = &h.arrows()[0];
        assert_eq!(h.vertices()[arrow.source].as_str(), "a");
        assert_eq!(h.vertices()[arrow.target].as_str(), "c");
    }

    #[test]
    fn incidence_dimensions() {
        assert_eq!(incidence_algebra(&chain(2)).dim(), 3);
        assert_eq!(incidence_algebra(&crown()).dim(), 8);
        assert_eq!(incidence_algebra(&antichain(4)).dim(), 4);
        assert_eq!(incidence_algebra(&diamond()).dim(), 9);
        let alg = incidence_algebra(&chain(3));
        let sum: Vec<(usize, BigRational)> = alg
            .vertex_idempotents()
            .iter()
            .map(|(_, i)| (*i, BigRational::one()))
            .collect();
        assert_eq!(&sum, alg.unit());
    }

    #[test]
    fn complexes() {
        let c = order_complex(&crown());
        assert_eq!(
            c.simplices_by_dim.each_ref().map(Vec::len),
            [4, 4, 0]
        );
        let c = order_complex(&chain(3));
        assert_eq!(c.simplices_by_dim.each_ref().map(Vec::len), [3, 3, 1]);
        let c = order_complex(&antichain(3));
        assert_eq!(c.simplices_by_dim.each_ref().map(Vec::len), [3, 0, 0]);
    }

    #[test]
    fn simplicial_cohomology() {
        let q = Field::Rational;
        assert_eq!(simplicial_h_dim(&order_complex(&crown()), 1, q), Ok(1));
        assert_eq!(simplicial_h_dim(&order_complex(&chain(3)), 1, q), Ok(0));
        assert_eq!(simplicial_h_dim(&order_complex(&antichain(3)), 0, q), Ok(3));
        assert_eq!(simplicial_h_dim(&order_complex(&diamond()), 1, q), Ok(0));
        assert_eq!(
            simplicial_h_dim(&order_complex(&crown()), 2, q),
            Err(OracleError::DegreeOutOfRange(2))
        );
    }

    #[test]
    fn comparison() {
        let oracle = Oracle::default();
        let r = gs_compare(&crown(), &oracle).unwrap();
        assert_eq!((r.dim_h1_incidence, r.dim_h1_simplicial, r.agree), (1, 1, true));
        let r = gs_compare(&chain(3), &oracle).unwrap();
        assert_eq!((r.dim_h1_incidence, r.dim_h1_simplicial, r.agree), (0, 0, true));
        let r = gs_compare(&diamond(), &oracle).unwrap();
        assert_eq!((r.dim_h1_incidence, r.dim_h1_simplicial, r.agree), (0, 0, true));
    }
}
