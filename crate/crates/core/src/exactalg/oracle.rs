//! Brute-force Hochschild computations by exact linear algebra.
//!
//! Unknowns for a map `f: Λ → X` are indexed by `i * dim X + k`, the
//! coefficient of `x_k` in `f(b_i)`. Cochains `Λ^{⊗n} → X` index the tuple
//! `(i_1, …, i_n)` in base `dim Λ`, most significant first, then `k`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{BimoduleRep, ExactMatrix, Field, OracleError};
use crate::presentations::StructureConstantAlgebra;
use crate::quiver::Quiver;

/// Size guards for the brute-force computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    /// Largest algebra dimension for degree 0 and 1 computations.
    pub max_dim: usize,
    /// Largest algebra dimension for the degree-2 bar complex.
    pub max_dim_degree2: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_dim: 64,
            max_dim_degree2: 12,
        }
    }
}

/// Field choice plus guards; every oracle computation goes through this.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Oracle {
    pub field: Field,
    pub limits: OracleLimits,
}

/// Accumulates one sparse row per output coordinate.
struct RowBuilder {
    rows: BTreeMap<usize, BTreeMap<usize, BigRational>>,
}

impl RowBuilder {
    fn new() -> Self {
        RowBuilder {
            rows: BTreeMap::new(),
        }
    }

    fn add(&mut self, row: usize, col: usize, value: &BigRational) {
        let entry = self
            .rows
            .entry(row)
            .or_default()
            .entry(col)
            .or_insert_with(BigRational::zero);
        *entry += value;
    }

    fn sub(&mut self, row: usize, col: usize, value: &BigRational) {
        self.add(row, col, &-value);
    }

    /// Push rows `0..count`, including the zero ones, so shapes stay exact.
    fn flush_into(&mut self, m: &mut ExactMatrix, count: usize) {
        let mut rows = std::mem::take(&mut self.rows);
        for k in 0..count {
            m.push_row(rows.remove(&k).unwrap_or_default());
        }
    }
}

impl Oracle {
    pub fn over(field: Field) -> Self {
        Oracle {
            field,
            limits: OracleLimits::default(),
        }
    }

    fn guard(&self, dim: usize, limit: usize) -> Result<(), OracleError> {
        if dim > limit {
            Err(OracleError::GuardExceeded { dim, limit })
        } else {
            Ok(())
        }
    }

    /// Dimension of the center.
    pub fn center_dim(&self, algebra: &StructureConstantAlgebra) -> Result<usize, OracleError> {
        let d = algebra.dim();
        self.guard(d, self.limits.max_dim)?;
        let mut m = ExactMatrix::new(d);
        let mut rb = RowBuilder::new();
        for i in 0..d {
            for l in 0..d {
                for (k, c) in algebra.product(l, i) {
                    rb.add(*k, l, c);
                }
                for (k, c) in algebra.product(i, l) {
                    rb.sub(*k, l, c);
                }
            }
            rb.flush_into(&mut m, d);
        }
        m.kernel_dim(self.field)
    }

    /// Dimension of `X^Λ = {v : b v = v b for all b}`.
    pub fn invariants_dim(&self, x: &BimoduleRep<'_>) -> Result<usize, OracleError> {
        let d = x.algebra().dim();
        self.guard(d, self.limits.max_dim)?;
        Ok(x.dim() - self.coboundary(x, 0)?.rank(self.field)?)
    }

    /// Dimension of the space of derivations `Λ → X`.
    pub fn derivation_space_dim(&self, x: &BimoduleRep<'_>) -> Result<usize, OracleError> {
        let d = x.algebra().dim();
        self.guard(d, self.limits.max_dim)?;
        let alg = x.algebra();
        let dx = x.dim();
        let mut m = ExactMatrix::new(d * dx);
        let mut rb = RowBuilder::new();
        for i in 0..d {
            for j in 0..d {
                // f(b_i b_j) - b_i f(b_j) - f(b_i) b_j = 0
                for (l, c) in alg.product(i, j) {
                    for k in 0..dx {
                        rb.add(k, l * dx + k, c);
                    }
                }
                for k in 0..dx {
                    for (mm, v) in x.left(i).row(k) {
                        rb.sub(k, j * dx + mm, v);
                    }
                    for (mm, v) in x.right(j).row(k) {
                        rb.sub(k, i * dx + mm, v);
                    }
                }
                rb.flush_into(&mut m, dx);
            }
        }
        m.kernel_dim(self.field)
    }

    /// Dimension of the inner derivations, `dim X - dim X^Λ`.
    pub fn inner_dim(&self, x: &BimoduleRep<'_>) -> Result<usize, OracleError> {
        Ok(x.dim() - self.invariants_dim(x)?)
    }

    /// Dimension of the span of `{λ ↦ λv - vλ}` over a basis of `X`.
    pub fn inner_dim_by_spanning(&self, x: &BimoduleRep<'_>) -> Result<usize, OracleError> {
        // the spanning vectors are the columns of the degree-0 coboundary
        self.coboundary(x, 0)?.transpose().rank(self.field)
    }

    /// `dim H¹(Λ, X)`: derivations modulo inner derivations.
    pub fn h1(&self, x: &BimoduleRep<'_>) -> Result<usize, OracleError> {
        Ok(self.derivation_space_dim(x)? - self.inner_dim(x)?)
    }

    /// `dim H¹(kQ, X)` for a bimodule over the path algebra of an acyclic quiver.
    pub fn derivations_with_coefficients(
        &self,
        quiver: &Quiver,
        x: &BimoduleRep<'_>,
    ) -> Result<usize, OracleError> {
        if !quiver.is_acyclic() {
            return Err(OracleError::CyclicQuiver);
        }
        let paths = quiver
            .path_counts()
            .map_err(|_| OracleError::CyclicQuiver)?
            .iter()
            .flatten()
            .sum::<u128>();
        if paths != x.algebra().dim() as u128 {
            return Err(OracleError::InvalidBimodule(
                "bimodule is not over the path algebra of this quiver".into(),
            ));
        }
        self.h1(x)
    }

    /// The Hochschild coboundary `C^n → C^{n+1}` of the bar complex.
    pub fn coboundary(&self, x: &BimoduleRep<'_>, n: usize) -> Result<ExactMatrix, OracleError> {
        let alg = x.algebra();
        let d = alg.dim();
        let dx = x.dim();
        let cols = d.pow(n as u32) * dx;
        let mut m = ExactMatrix::new(cols);
        let mut rb = RowBuilder::new();
        let sign = |e: usize| {
            if e.is_multiple_of(2) {
                BigRational::one()
            } else {
                -BigRational::one()
            }
        };
        let encode = |tuple: &[usize]| tuple.iter().fold(0usize, |acc, &t| acc * d + t);
        let mut tuple = vec![0usize; n + 1];
        for _ in 0..d.pow(n as u32 + 1) {
            // a_1 f(a_2, …, a_{n+1})
            let tail = encode(&tuple[1..]);
            for k in 0..dx {
                for (mm, v) in x.left(tuple[0]).row(k) {
                    rb.add(k, tail * dx + mm, v);
                }
            }
            // Σ (-1)^i f(…, a_i a_{i+1}, …)
            for i in 0..n {
                let s = sign(i + 1);
                for (l, c) in alg.product(tuple[i], tuple[i + 1]) {
                    let mut merged = Vec::with_capacity(n);
                    merged.extend_from_slice(&tuple[..i]);
                    merged.push(*l);
                    merged.extend_from_slice(&tuple[i + 2..]);
                    let col = encode(&merged) * dx;
                    let sc = &s * c;
                    for k in 0..dx {
                        rb.add(k, col + k, &sc);
                    }
                }
            }
            // (-1)^{n+1} f(a_1, …, a_n) a_{n+1}
            let head = encode(&tuple[..n]);
            let s = sign(n + 1);
            for k in 0..dx {
                for (mm, v) in x.right(tuple[n]).row(k) {
                    rb.add(k, head * dx + mm, &(&s * v));
                }
            }
            rb.flush_into(&mut m, dx);
            // next tuple, last coordinate fastest
            for pos in (0..=n).rev() {
                tuple[pos] += 1;
                if tuple[pos] < d {
                    break;
                }
                tuple[pos] = 0;
            }
        }
        Ok(m)
    }

    /// Cohomology of the bar complex in degree 0, 1 or 2.
    pub fn bar_cohomology_dim(&self, x: &BimoduleRep<'_>, degree: usize) -> Result<usize, OracleError> {
        let d = x.algebra().dim();
        match degree {
            0 | 1 => self.guard(d, self.limits.max_dim)?,
            2 => self.guard(d, self.limits.max_dim_degree2)?,
            _ => return Err(OracleError::DegreeOutOfRange(degree)),
        }
        let cochains = d.pow(degree as u32) * x.dim();
        let outgoing = self.coboundary(x, degree)?.rank(self.field)?;
        let incoming = if degree == 0 {
            0
        } else {
            self.coboundary(x, degree - 1)?.rank(self.field)?
        };
        Ok(cochains - outgoing - incoming)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{build_algebra, quotient_map, AlgebraPresentation, MonomialIdeal};

    fn path_algebra(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> StructureConstantAlgebra {
        let q = Quiver::new(vertices.iter().copied(), arrows.iter().copied()).unwrap();
        build_algebra(&AlgebraPresentation::path_algebra(q)).unwrap()
    }

    fn kronecker2() -> StructureConstantAlgebra {
        path_algebra(&["x", "y"], &[("a", "x", "y"), ("b", "x", "y")])
    }

    fn a2() -> StructureConstantAlgebra {
        path_algebra(&["x", "y"], &[("a", "x", "y")])
    }

    fn cycle3_trunc2() -> StructureConstantAlgebra {
        let q = Quiver::new(
            ["1", "2", "3"],
            [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")],
        )
        .unwrap();
        build_algebra(&AlgebraPresentation::truncated(q, 2).unwrap()).unwrap()
    }

    #[test]
    fn centers() {
        let o = Oracle::default();
        assert_eq!(o.center_dim(&StructureConstantAlgebra::split_semisimple(3)), Ok(3));
        assert_eq!(o.center_dim(&kronecker2()), Ok(1));
        assert_eq!(o.center_dim(&cycle3_trunc2()), Ok(1));
    }

    #[test]
    fn invariants() {
        let o = Oracle::default();
        let k = kronecker2();
        assert_eq!(o.invariants_dim(&BimoduleRep::regular(&k)), Ok(1));
        let ss = StructureConstantAlgebra::split_semisimple(2);
        assert_eq!(o.invariants_dim(&BimoduleRep::regular(&ss)), Ok(2));
        // the simple bimodule at x: e_x acts as 1 on both sides, e_y and a as 0
        let alg = a2();
        let ex = alg.labels().iter().position(|l| l == "e_x").unwrap();
        let act = |i: usize| {
            if i == ex {
                ExactMatrix::identity(1)
            } else {
                ExactMatrix::zeros(1, 1)
            }
        };
        let simple = BimoduleRep::new(&alg, 1, (0..3).map(act).collect(), (0..3).map(act).collect())
            .unwrap();
        assert_eq!(o.invariants_dim(&simple), Ok(1));
    }

    #[test]
    fn derivations_and_inner() {
        let o = Oracle::default();
        let ss = StructureConstantAlgebra::split_semisimple(2);
        let r = BimoduleRep::regular(&ss);
        assert_eq!(o.derivation_space_dim(&r), Ok(0));
        assert_eq!(o.inner_dim(&r), Ok(0));
        let a = a2();
        let r = BimoduleRep::regular(&a);
        assert_eq!(o.derivation_space_dim(&r), Ok(2));
        assert_eq!(o.inner_dim(&r), Ok(2));
        assert_eq!(o.h1(&r), Ok(0));
        let k = kronecker2();
        let r = BimoduleRep::regular(&k);
        assert_eq!(o.derivation_space_dim(&r), Ok(6));
        assert_eq!(o.inner_dim(&r), Ok(3));
        assert_eq!(o.inner_dim_by_spanning(&r), Ok(3));
        assert_eq!(o.h1(&r), Ok(3));
        let t = cycle3_trunc2();
        assert_eq!(o.h1(&BimoduleRep::regular(&t)), Ok(1));
    }

    #[test]
    fn bar_complex() {
        let o = Oracle::default();
        let k = kronecker2();
        let r = BimoduleRep::regular(&k);
        assert_eq!(o.bar_cohomology_dim(&r, 0), o.invariants_dim(&r));
        assert_eq!(o.bar_cohomology_dim(&r, 1), Ok(3));
        let t = cycle3_trunc2();
        assert_eq!(o.bar_cohomology_dim(&BimoduleRep::regular(&t), 2), Ok(0));
        // δ¹ ∘ δ⁰ = 0 and δ² ∘ δ¹ = 0
        let d0 = o.coboundary(&r, 0).unwrap();
        let d1 = o.coboundary(&r, 1).unwrap();
        let d2 = o.coboundary(&r, 2).unwrap();
        assert!(d1.mul(&d0).is_zero());
        assert!(d2.mul(&d1).is_zero());
    }

    #[test]
    fn guards() {
        let o = Oracle {
            field: Field::Rational,
            limits: OracleLimits {
                max_dim: 3,
                max_dim_degree2: 2,
            },
        };
        let k = kronecker2();
        let r = BimoduleRep::regular(&k);
        assert_eq!(o.h1(&r), Err(OracleError::GuardExceeded { dim: 4, limit: 3 }));
        let a = a2();
        let r = BimoduleRep::regular(&a);
        assert_eq!(
            o.bar_cohomology_dim(&r, 2),
            Err(OracleError::GuardExceeded { dim: 3, limit: 2 })
        );
        assert_eq!(o.bar_cohomology_dim(&r, 3), Err(OracleError::DegreeOutOfRange(3)));
    }

    #[test]
    fn coefficients_in_a_quotient() {
        let o = Oracle::default();
        let q = Quiver::new(
            ["1", "2", "3"],
            [("a", "1", "2"), ("b", "2", "3"), ("c", "2", "3")],
        )
        .unwrap();
        let z = MonomialIdeal::new(&q, vec![q.path_by_names(&["a", "b"]).unwrap()]).unwrap();
        let qm = quotient_map(&q, &z).unwrap();
        let quotient_regular = BimoduleRep::regular(&qm.quotient);
        let x = BimoduleRep::quotient_over_path_algebra(&quotient_regular, &qm).unwrap();
        assert_eq!(o.derivations_with_coefficients(&q, &x), Ok(3));

        let k = Quiver::new(["x", "y"], [("a", "x", "y"), ("b", "x", "y")]).unwrap();
        let kq = build_algebra(&AlgebraPresentation::path_algebra(k.clone())).unwrap();
        assert_eq!(o.derivations_with_coefficients(&k, &BimoduleRep::regular(&kq)), Ok(3));

        let a3 = Quiver::new(["x", "y", "z"], [("a", "x", "y"), ("b", "y", "z")]).unwrap();
        let kq = build_algebra(&AlgebraPresentation::path_algebra(a3.clone())).unwrap();
        assert_eq!(o.derivations_with_coefficients(&a3, &BimoduleRep::regular(&kq)), Ok(0));
    }

    #[test]
    fn invalid_bimodule_rejected() {
        let a = a2();
        let zero = || ExactMatrix::zeros(1, 1);
        let err = BimoduleRep::new(&a, 1, vec![zero(), zero(), zero()], vec![zero(), zero(), zero()])
            .unwrap_err();
        assert!(matches!(err, OracleError::InvalidBimodule(_)));
    }
}
