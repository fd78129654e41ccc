//! Sparse exact matrices and rank computation.
//!
//! Entries are rationals. Rank over the rationals clears denominators row by
//! row and runs fraction-free elimination on integer rows, first with `i64`
//! and, if any intermediate overflows, again with arbitrary precision. Rank
//! over a prime field reduces every entry modulo `p`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::OracleError;

/// The coefficient field for a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub type SparseRow = Vec<(usize, BigRational)>;

/// A sparse row-major matrix of exact rationals.
///
/// Rows are kept sorted by column with no explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    cols: usize,
    rows: Vec<SparseRow>,
}

fn normalize(row: impl IntoIterator<Item = (usize, BigRational)>) -> SparseRow {
    let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (c, v) in row {
        *acc.entry(c).or_insert_with(BigRational::zero) += v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

impl ExactMatrix {
    pub fn new(cols: usize) -> Self {
        ExactMatrix {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            cols,
            rows: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        ExactMatrix {
            cols: n,
            rows: (0..n).map(|i| vec![(i, BigRational::one())]).collect(),
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = ExactMatrix::new(cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged dense matrix");
            m.push_row(
                r.iter()
                    .enumerate()
                    .map(|(c, &v)| (c, BigRational::from_integer(v.into()))),
            );
        }
        m
    }

    /// Append a row given as (column, value) entries; repeated columns are summed.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, BigRational)>) {
        let row = normalize(entries);
        debug_assert!(row.iter().all(|(c, _)| *c < self.cols));
        self.rows.push(row);
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, BigRational)] {
        &self.rows[i]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[(usize, BigRational)]> {
        self.rows.iter().map(Vec::as_slice)
    }

    pub fn get(&self, r: usize, c: usize) -> BigRational {
        self.rows[r]
            .binary_search_by_key(&c, |(col, _)| *col)
            .map(|i| self.rows[r][i].1.clone())
            .unwrap_or_else(|_| BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows.len(), "dimension mismatch");
        let rows = self
            .rows
            .iter()
            .map(|row| {
                normalize(row.iter().flat_map(|(k, v)| {
                    other.rows[*k].iter().map(move |(c, w)| (*c, v * w))
                }))
            })
            .collect();
        ExactMatrix {
            cols: other.cols,
            rows,
        }
    }

    /// `self + factor * other`.
    pub fn add_scaled(&self, other: &ExactMatrix, factor: &BigRational) -> ExactMatrix {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.rows.len(), other.rows.len());
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                normalize(
                    a.iter()
                        .cloned()
                        .chain(b.iter().map(|(c, v)| (*c, v * factor))),
                )
            })
            .collect();
        ExactMatrix {
            cols: self.cols,
            rows,
        }
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut rows = vec![Vec::new(); self.cols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                rows[*c].push((r, v.clone()));
            }
        }
        ExactMatrix {
            cols: self.rows.len(),
            rows,
        }
    }

    /// Exact rank over the given field.
    pub fn rank(&self, field: Field) -> Result<usize, OracleError> {
        match field {
            Field::Rational => Ok(self.rank_rational()),
            Field::Prime(p) => self.rank_mod(p),
        }
    }

    /// Dimension of the right kernel: `cols - rank`.
    pub fn kernel_dim(&self, field: Field) -> Result<usize, OracleError> {
        Ok(self.cols - self.rank(field)?)
    }

    fn integer_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        self.rows
            .iter()
            .filter(|r| !r.is_empty())
            .map(|row| {
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
                row.iter()
                    .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
                    .collect()
            })
            .collect()
    }

    fn rank_rational(&self) -> usize {
        let mut rows = self.integer_rows();
        rows.sort_by_key(Vec::len);
        let small: Option<Vec<Vec<(usize, i64)>>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(c, v)| v.to_i64().filter(|v| *v != i64::MIN).map(|v| (*c, v)))
                    .collect()
            })
            .collect();
        if let Some(small) = small {
            if let Some(rank) = fraction_free_rank::<i64>(small, self.cols) {
                return rank;
            }
        }
        fraction_free_rank::<BigInt>(rows, self.cols).expect("bigint elimination cannot overflow")
    }

    fn rank_mod(&self, p: u64) -> Result<usize, OracleError> {
        if !is_prime(p) {
            return Err(OracleError::NotPrime(p));
        }
        let pb = BigInt::from(p);
        let mut rows = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let mut out = Vec::with_capacity(row.len());
            for (c, v) in row {
                let den = v.denom().mod_floor(&pb).to_u64().unwrap();
                if den == 0 {
                    return Err(OracleError::DenominatorDivisibleByPrime(p));
                }
                let num = v.numer().mod_floor(&pb).to_u64().unwrap();
                let x = mul_mod(num, inv_mod(den, p), p);
                if x != 0 {
                    out.push((*c, x));
                }
            }
            if !out.is_empty() {
                rows.push(out);
            }
        }
        rows.sort_by_key(Vec::len);
        let mut pivots: Vec<Option<Vec<(usize, u64)>>> = vec![None; self.cols];
        let mut rank = 0;
        for mut row in rows {
            while let Some(&(lead, coeff)) = row.first() {
                match &pivots[lead] {
                    Some(piv) => {
                        // pivot rows are monic
                        row = merge_mod(&row, piv, p - coeff, p);
                    }
                    None => {
                        let inv = inv_mod(coeff, p);
                        for e in &mut row {
                            e.1 = mul_mod(e.1, inv, p);
                        }
                        pivots[lead] = Some(row);
                        rank += 1;
                        break;
                    }
                }
            }
            if rank == self.cols {
                break;
            }
        }
        Ok(rank)
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(result, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    result
}

/// `a + factor * b` over Z/p.
fn merge_mod(a: &[(usize, u64)], b: &[(usize, u64)], factor: u64, p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        let (c, v) = if take_a {
            i += 1;
            a[i - 1]
        } else if take_b {
            j += 1;
            (b[j - 1].0, mul_mod(b[j - 1].1, factor, p))
        } else {
            i += 1;
            j += 1;
            (a[i - 1].0, (a[i - 1].1 + mul_mod(b[j - 1].1, factor, p)) % p)
        };
        if v != 0 {
            out.push((c, v));
        }
    }
    out
}

/// Integer arithmetic used by fraction-free elimination; `None` signals overflow.
trait EliminationInt: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn gcd(&self, other: &Self) -> Self;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    fn checked_sub(&self, other: &Self) -> Option<Self>;
    fn checked_neg(&self) -> Option<Self>;
    fn exact_div(&self, other: &Self) -> Self;
    fn checked_abs(&self) -> Option<Self>;
    fn is_one(&self) -> bool;
}

impl EliminationInt for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i64::checked_mul(*self, *other).filter(|v| *v != i64::MIN)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        i64::checked_sub(*self, *other).filter(|v| *v != i64::MIN)
    }
    fn checked_neg(&self) -> Option<Self> {
        i64::checked_neg(*self)
    }
    fn exact_div(&self, other: &Self) -> Self {
        self / other
    }
    fn checked_abs(&self) -> Option<Self> {
        i64::checked_abs(*self)
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl EliminationInt for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn exact_div(&self, other: &Self) -> Self {
        self / other
    }
    fn checked_abs(&self) -> Option<Self> {
        Some(Signed::abs(self))
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

/// `ka * a - kb * b`, dropping zeros.
fn combine<T: EliminationInt>(
    a: &[(usize, T)],
    ka: &T,
    b: &[(usize, T)],
    kb: &T,
) -> Option<Vec<(usize, T)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (c, v) = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            i += 1;
            (a[i - 1].0, a[i - 1].1.checked_mul(ka)?)
        } else if i >= a.len() || b[j].0 < a[i].0 {
            j += 1;
            (b[j - 1].0, b[j - 1].1.checked_mul(kb)?.checked_neg()?)
        } else {
            i += 1;
            j += 1;
            let x = a[i - 1].1.checked_mul(ka)?;
            let y = b[j - 1].1.checked_mul(kb)?;
            (a[i - 1].0, x.checked_sub(&y)?)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    Some(out)
}

fn make_primitive<T: EliminationInt>(row: &mut [(usize, T)]) -> Option<()> {
    let Some(first) = row.first() else {
        return Some(());
    };
    let mut g = first.1.checked_abs()?;
    for (_, v) in row.iter().skip(1) {
        if g.is_one() {
            return Some(());
        }
        g = g.gcd(v);
    }
    if !g.is_one() {
        for e in row.iter_mut() {
            e.1 = e.1.exact_div(&g);
        }
    }
    Some(())
}

fn fraction_free_rank<T: EliminationInt>(rows: Vec<Vec<(usize, T)>>, cols: usize) -> Option<usize> {
    let mut pivots: Vec<Option<Vec<(usize, T)>>> = vec![None; cols];
    let mut rank = 0;
    for mut row in rows {
        make_primitive(&mut row)?;
        while let Some((lead, coeff)) = row.first().cloned() {
            match &pivots[lead] {
                Some(piv) => {
                    let pc = &piv[0].1;
                    let g = pc.gcd(&coeff);
                    let ka = pc.exact_div(&g);
                    let kb = coeff.exact_div(&g);
                    row = combine(&row, &ka, piv, &kb)?;
                    make_primitive(&mut row)?;
                }
                None => {
                    pivots[lead] = Some(row);
                    rank += 1;
                    break;
                }
            }
        }
        if rank == cols {
            break;
        }
    }
    Some(rank)
}
