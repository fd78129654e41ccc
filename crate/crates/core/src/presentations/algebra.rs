//! Finite-dimensional algebras given by structure constants.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::quiver::VertexId;

/// A sparse linear combination of basis indices, sorted, without zero terms.
pub type LinComb = Vec<(usize, BigRational)>;

fn lincomb(terms: impl IntoIterator<Item = (usize, BigRational)>) -> LinComb {
    let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (i, c) in terms {
        *acc.entry(i).or_insert_with(BigRational::zero) += c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn basis_vector(i: usize) -> LinComb {
    vec![(i, BigRational::one())]
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("product table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },
    #[error("associativity failure on basis triple ({0}, {1}, {2})")]
    AssociativityFailure(String, String, String),
    #[error("unit is not a two-sided identity on `{0}`")]
    UnitFailure(String),
    #[error("vertex idempotents: {0}")]
    IdempotentFailure(String),
    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),
}

/// An associative unital algebra with an explicit basis and product table.
///
/// `table[i * dim + j]` is the product `b_i * b_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstantAlgebra {
    labels: Vec<String>,
    table: Vec<LinComb>,
    unit: LinComb,
    vertex_idempotents: Vec<(VertexId, usize)>,
}

impl StructureConstantAlgebra {
    /// Build and check associativity, the unit, and the vertex idempotents.
    pub fn new(
        labels: Vec<String>,
        table: Vec<LinComb>,
        unit: LinComb,
        vertex_idempotents: Vec<(VertexId, usize)>,
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        if table.len() != dim * dim {
            return Err(AlgebraError::TableSize {
                expected: dim * dim,
                found: table.len(),
            });
        }
        for comb in table.iter().chain(std::iter::once(&unit)) {
            if let Some((i, _)) = comb.iter().find(|(i, _)| *i >= dim) {
                return Err(AlgebraError::IndexOutOfRange(*i));
            }
        }
        let alg = StructureConstantAlgebra {
            labels,
            table: table.into_iter().map(lincomb).collect(),
            unit: lincomb(unit),
            vertex_idempotents,
        };
        alg.check_associativity()?;
        alg.check_unit()?;
        alg.check_idempotents()?;
        Ok(alg)
    }

    /// Build an algebra whose basis products are basis elements or zero.
    pub fn from_basis_products(
        labels: Vec<String>,
        product: impl Fn(usize, usize) -> Option<usize>,
        unit: &[usize],
        vertex_idempotents: Vec<(VertexId, usize)>,
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        let table = (0..dim * dim)
            .map(|ij| {
                product(ij / dim, ij % dim)
                    .map(basis_vector)
                    .unwrap_or_default()
            })
            .collect();
        let unit = unit.iter().map(|&i| (i, BigRational::one())).collect();
        Self::new(labels, table, unit, vertex_idempotents)
    }

    /// The split semisimple algebra k × … × k with `n` factors.
    pub fn split_semisimple(n: usize) -> Self {
        let labels = (0..n).map(|i| format!("e_{i}")).collect();
        let idem = (0..n).map(|i| (VertexId(i.to_string()), i)).collect();
        let all: Vec<usize> = (0..n).collect();
        Self::from_basis_products(labels, |i, j| (i == j).then_some(i), &all, idem)
            .expect("k^n is a valid algebra")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &LinComb {
        &self.unit
    }

    pub fn vertex_idempotents(&self) -> &[(VertexId, usize)] {
        &self.vertex_idempotents
    }

    /// `b_i * b_j`.
    pub fn product(&self, i: usize, j: usize) -> &LinComb {
        &self.table[i * self.dim() + j]
    }

    pub fn mul(&self, u: &LinComb, v: &LinComb) -> LinComb {
        lincomb(u.iter().flat_map(|(i, a)| {
            v.iter().flat_map(move |(j, b)| {
                let ab = a * b;
                self.product(*i, *j)
                    .iter()
                    .map(move |(k, c)| (*k, &ab * c))
            })
        }))
    }

    /// Same basis, product table transposed.
    pub fn opposite(&self) -> Self {
        let dim = self.dim();
        let table = (0..dim * dim)
            .map(|ij| self.product(ij % dim, ij / dim).clone())
            .collect();
        StructureConstantAlgebra {
            labels: self.labels.clone(),
            table,
            unit: self.unit.clone(),
            vertex_idempotents: self.vertex_idempotents.clone(),
        }
    }

    /// Direct product `self × other`; `other`'s basis is shifted past `self`'s.
    pub fn direct_product(&self, other: &Self) -> Self {
        let (d1, d2) = (self.dim(), other.dim());
        let dim = d1 + d2;
        let shift = |c: &LinComb| -> LinComb { c.iter().map(|(i, v)| (i + d1, v.clone())).collect() };
        let mut table = vec![LinComb::new(); dim * dim];
        for i in 0..d1 {
            for j in 0..d1 {
                table[i * dim + j] = self.product(i, j).clone();
            }
        }
        for i in 0..d2 {
            for j in 0..d2 {
                table[(i + d1) * dim + j + d1] = shift(other.product(i, j));
            }
        }
        let mut taken: BTreeSet<String> = self.labels.iter().cloned().collect();
        let mut labels = self.labels.clone();
        for l in &other.labels {
            let mut name = l.clone();
            while taken.contains(&name) {
                name.push('\'');
            }
            taken.insert(name.clone());
            labels.push(name);
        }
        let mut unit = self.unit.clone();
        unit.extend(shift(&other.unit));
        let mut idem = self.vertex_idempotents.clone();
        idem.extend(
            other
                .vertex_idempotents
                .iter()
                .map(|(v, i)| (VertexId(format!("{}'", v.0)), i + d1)),
        );
        StructureConstantAlgebra {
            labels,
            table,
            unit,
            vertex_idempotents: idem,
        }
    }

    fn check_associativity(&self) -> Result<(), AlgebraError> {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                let ij = self.product(i, j);
                for k in 0..dim {
                    let left = self.mul(ij, &basis_vector(k));
                    let right = self.mul(&basis_vector(i), self.product(j, k));
                    if left != right {
                        return Err(AlgebraError::AssociativityFailure(
                            self.labels[i].clone(),
                            self.labels[j].clone(),
                            self.labels[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<(), AlgebraError> {
        for i in 0..self.dim() {
            let b = basis_vector(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(AlgebraError::UnitFailure(self.labels[i].clone()));
            }
        }
        Ok(())
    }

    fn check_idempotents(&self) -> Result<(), AlgebraError> {
        if self.vertex_idempotents.is_empty() {
            return Ok(());
        }
        for (v, i) in &self.vertex_idempotents {
            for (w, j) in &self.vertex_idempotents {
                let prod = self.product(*i, *j);
                let expected = if i == j { basis_vector(*i) } else { LinComb::new() };
                if *prod != expected {
                    return Err(AlgebraError::IdempotentFailure(format!(
                        "e_{v} * e_{w} is not as expected"
                    )));
                }
            }
        }
        let sum = lincomb(
            self.vertex_idempotents
                .iter()
                .map(|(_, i)| (*i, BigRational::one())),
        );
        if sum != self.unit {
            return Err(AlgebraError::IdempotentFailure(
                "idempotents do not sum to the unit".into(),
            ));
        }
        Ok(())
    }
}
