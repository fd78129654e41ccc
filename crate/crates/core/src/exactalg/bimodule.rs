use num_rational::BigRational;
use num_traits::One;

use super::{ExactMatrix, OracleError};
use crate::presentations::{LinComb, QuotientMap, StructureConstantAlgebra};

/// A finite-dimensional bimodule over a structure-constant algebra.
///
/// `left[i]` is the matrix of `v ↦ b_i · v`, `right[i]` that of `v ↦ v · b_i`.
/// Matrices act on column vectors: entry `(k, m)` is the coefficient of
/// basis vector `k` in the image of basis vector `m`.
#[derive(Debug, Clone)]
pub struct BimoduleRep<'a> {
    algebra: &'a StructureConstantAlgebra,
    dim: usize,
    left: Vec<ExactMatrix>,
    right: Vec<ExactMatrix>,
}

impl<'a> BimoduleRep<'a> {
    /// Build and check the action axioms.
    pub fn new(
        algebra: &'a StructureConstantAlgebra,
        dim: usize,
        left: Vec<ExactMatrix>,
        right: Vec<ExactMatrix>,
    ) -> Result<Self, OracleError> {
        let rep = BimoduleRep {
            algebra,
            dim,
            left,
            right,
        };
        rep.validate()?;
        Ok(rep)
    }

    /// The algebra as a bimodule over itself.
    pub fn regular(algebra: &'a StructureConstantAlgebra) -> Self {
        let d = algebra.dim();
        let mut left = Vec::with_capacity(d);
        let mut right = Vec::with_capacity(d);
        for i in 0..d {
            let mut l = vec![Vec::new(); d];
            let mut r = vec![Vec::new(); d];
            for m in 0..d {
                for (k, c) in algebra.product(i, m) {
                    l[*k].push((m, c.clone()));
                }
                for (k, c) in algebra.product(m, i) {
                    r[*k].push((m, c.clone()));
                }
            }
            left.push(matrix_from_rows(d, l));
            right.push(matrix_from_rows(d, r));
        }
        BimoduleRep {
            algebra,
            dim: d,
            left,
            right,
        }
    }

    /// Restrict scalars along an algebra map given on basis elements.
    ///
    /// `images[i]` is the image of `algebra`'s `i`-th basis element in the
    /// algebra `self` is defined over.
    pub fn pullback(
        &self,
        algebra: &'a StructureConstantAlgebra,
        images: &[LinComb],
    ) -> Result<BimoduleRep<'a>, OracleError> {
        if images.len() != algebra.dim() {
            return Err(OracleError::InvalidBimodule(
                "one image per basis element is required".into(),
            ));
        }
        let left = images.iter().map(|c| self.left_of(c)).collect();
        let right = images.iter().map(|c| self.right_of(c)).collect();
        BimoduleRep::new(algebra, self.dim, left, right)
    }

    /// `kQ/⟨Z⟩` as a bimodule over the path algebra `kQ`.
    pub fn quotient_over_path_algebra(
        quotient_regular: &BimoduleRep<'_>,
        map: &'a QuotientMap,
    ) -> Result<BimoduleRep<'a>, OracleError> {
        let images: Vec<LinComb> = map
            .projection
            .iter()
            .map(|p| p.map(|i| vec![(i, BigRational::one())]).unwrap_or_default())
            .collect();
        let left = images.iter().map(|c| quotient_regular.left_of(c)).collect();
        let right = images.iter().map(|c| quotient_regular.right_of(c)).collect();
        BimoduleRep::new(&map.path_algebra, quotient_regular.dim, left, right)
    }

    pub fn algebra(&self) -> &'a StructureConstantAlgebra {
        self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left(&self, i: usize) -> &ExactMatrix {
        &self.left[i]
    }

    pub fn right(&self, i: usize) -> &ExactMatrix {
        &self.right[i]
    }

    pub fn left_of(&self, c: &LinComb) -> ExactMatrix {
        combine(&self.left, c, self.dim)
    }

    pub fn right_of(&self, c: &LinComb) -> ExactMatrix {
        combine(&self.right, c, self.dim)
    }

    /// Left action is multiplicative, right action anti-multiplicative, the
    /// two commute, and the unit acts as the identity on both sides.
    pub fn validate(&self) -> Result<(), OracleError> {
        let d = self.algebra.dim();
        let bad = |msg: String| Err(OracleError::InvalidBimodule(msg));
        if self.left.len() != d || self.right.len() != d {
            return bad(format!("expected {d} action matrices per side"));
        }
        for m in self.left.iter().chain(&self.right) {
            if m.row_count() != self.dim || m.col_count() != self.dim {
                return bad("action matrix has the wrong shape".into());
            }
        }
        let labels = self.algebra.labels();
        for i in 0..d {
            for j in 0..d {
                let prod = self.algebra.product(i, j);
                if self.left_of(prod) != self.left[i].mul(&self.left[j]) {
                    return bad(format!("left action not multiplicative on ({}, {})", labels[i], labels[j]));
                }
                if self.right_of(prod) != self.right[j].mul(&self.right[i]) {
                    return bad(format!("right action not multiplicative on ({}, {})", labels[i], labels[j]));
                }
                if self.left[i].mul(&self.right[j]) != self.right[j].mul(&self.left[i]) {
                    return bad(format!("actions of {} and {} do not commute", labels[i], labels[j]));
                }
            }
        }
        let id = ExactMatrix::identity(self.dim);
        if self.left_of(self.algebra.unit()) != id || self.right_of(self.algebra.unit()) != id {
            return bad("unit does not act as the identity".into());
        }
        Ok(())
    }
}

fn matrix_from_rows(cols: usize, rows: Vec<Vec<(usize, BigRational)>>) -> ExactMatrix {
    let mut m = ExactMatrix::new(cols);
    for r in rows {
        m.push_row(r);
    }
    m
}

fn combine(mats: &[ExactMatrix], c: &LinComb, dim: usize) -> ExactMatrix {
    c.iter().fold(ExactMatrix::zeros(dim, dim), |acc, (i, coeff)| {
        acc.add_scaled(&mats[*i], coeff)
    })
}
