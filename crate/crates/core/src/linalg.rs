//! Dense exact linear algebra: echelon forms, rank, kernels, images and solving.
//!
//! Prime fields use Gauss-Jordan elimination; the rationals go through a
//! fraction-free (Bareiss) forward pass on integer rows before the final
//! back substitution. Pivots are the first nonzero entry in the lowest
//! column, taking the lowest row index on ties.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{common_denominator, Field, PrimeField, Rationals};

/// Reduced row echelon form: `rows[i]` has a leading one in column `pivots[i]`
/// and zeros in every other pivot column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon<E> {
    pub cols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<E>>,
}

impl<E> Echelon<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub(crate) fn gauss_jordan<F: Field>(field: &F, rows: usize, cols: usize, data: &[F::Elem]) -> Echelon<F::Elem> {
    debug_assert_eq!(data.len(), rows * cols);
    let mut m: Vec<Vec<F::Elem>> = data.chunks(cols.max(1)).take(rows).map(<[_]>::to_vec).collect();
    if cols == 0 {
        m.clear();
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv(&m[r][c]).expect("nonzero pivot");
        for v in m[r][c..].iter_mut() {
            *v = field.mul(v, &inv);
        }
        let (head, tail) = m.split_at_mut(r);
        let (prow, rest) = tail.split_first_mut().expect("pivot row");
        for row in head.iter_mut().chain(rest.iter_mut()) {
            if field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&prow[c..]) {
                if !field.is_zero(y) {
                    *x = field.sub(x, &field.mul(&factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Echelon { cols, pivots, rows: m }
}

/// Fraction-free elimination over `Q`: each row is scaled to integers, the
/// forward pass runs Bareiss' exact-division recurrence, and the resulting
/// integer echelon form is normalised to reduced form at the end.
pub(crate) fn bareiss_echelon(rows: usize, cols: usize, data: &[BigRational]) -> Echelon<BigRational> {
    let mut m: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row = &data[i * cols..(i + 1) * cols];
            let den = common_denominator(row);
            row.iter().map(|q| q.numer() * (&den / q.denom())).collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, bottom) = m.split_at_mut(r + 1);
        let prow = &top[r];
        let pivot = &prow[c];
        for row in bottom.iter_mut() {
            let lead = row[c].clone();
            for j in c..cols {
                let v = &row[j] * pivot - &lead * &prow[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot.clone();
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    // Back substitution on the rank rows only.
    let mut q: Vec<Vec<BigRational>> = m
        .into_iter()
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    for i in (0..r).rev() {
        let c = pivots[i];
        let inv = q[i][c].recip();
        for v in q[i][c..].iter_mut() {
            *v *= &inv;
        }
        let (head, tail) = q.split_at_mut(i);
        let prow = &tail[0];
        for row in head.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&prow[c..]) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
    }
    Echelon { cols, pivots, rows: q }
}

/// An exact dense matrix with a compute-once echelon cache.
#[derive(Debug)]
pub struct RankMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
    echelon: OnceLock<Echelon<F::Elem>>,
}

impl<F: Field> Clone for RankMatrix<F> {
    fn clone(&self) -> Self {
        RankMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.clone(),
            echelon: self.echelon.clone(),
        }
    }
}

impl<F: Field> PartialEq for RankMatrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: Field> RankMatrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        RankMatrix {
            field,
            rows,
            cols,
            data,
            echelon: OnceLock::new(),
        }
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Self::new(field, rows, cols, data)
    }

    pub fn identity(field: F, n: usize) -> Self {
        Self::from_fn(field, n, n, |f, i, j| if i == j { f.one() } else { f.zero() })
    }

    pub fn from_fn(field: F, rows: usize, cols: usize, mut entry: impl FnMut(&F, usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(entry(&field, i, j));
            }
        }
        Self::new(field, rows, cols, data)
    }

    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let n = rows.len();
        let data: Vec<_> = rows
            .into_iter()
            .inspect(|r| assert_eq!(r.len(), cols, "ragged rows"))
            .flatten()
            .collect();
        Self::new(field, n, cols, data)
    }

    /// Builds a matrix from its columns (each of length `rows`).
    pub fn from_columns(field: F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let cols = columns.len();
        Self::from_fn(field, rows, cols, |_, i, j| columns[j][i].clone())
    }

    pub fn from_i64_rows(field: F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, cols, data)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }
    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field.clone(), self.cols, self.rows, |_, i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn echelon(&self) -> &Echelon<F::Elem> {
        self.echelon
            .get_or_init(|| self.field.echelon(self.rows, self.cols, &self.data))
    }

    /// Echelon form computed afresh, bypassing the cache.
    pub fn recompute_echelon(&self) -> Echelon<F::Elem> {
        self.field.echelon(self.rows, self.cols, &self.data)
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.echelon().pivots
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn has_full_rank(&self) -> bool {
        self.rank() == self.rows.min(self.cols)
    }

    /// Basis of the right kernel, one vector per free column (in increasing
    /// column order), each with a one in its free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let ech = self.echelon();
        let pivot_set: BTreeSet<usize> = ech.pivots.iter().copied().collect();
        (0..self.cols)
            .filter(|c| !pivot_set.contains(c))
            .map(|free| {
                let mut v = vec![self.field.zero(); self.cols];
                v[free] = self.field.one();
                for (row, &pc) in ech.rows.iter().zip(&ech.pivots) {
                    v[pc] = self.field.neg(&row[free]);
                }
                v
            })
            .collect()
    }

    /// Columns of the matrix forming a basis of its image.
    pub fn image_basis(&self) -> Vec<Vec<F::Elem>> {
        self.pivot_columns().iter().map(|&j| self.column(j)).collect()
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(self.field.zero(), |acc, (a, b)| {
                    self.field.add(&acc, &self.field.mul(a, b))
                })
            })
            .collect()
    }

    /// Some `x` with `M x = b`, or `None` when `b` is outside the image.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows);
        let f = &self.field;
        let augmented = RankMatrix::from_fn(f.clone(), self.rows, self.cols + 1, |_, i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let ech = augmented.echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &pc) in ech.rows.iter().zip(&ech.pivots) {
            x[pc] = row[self.cols].clone();
        }
        Some(x)
    }

    /// True when the vectors are linearly independent.
    pub fn independent(field: F, vectors: &[Vec<F::Elem>]) -> bool {
        let Some(first) = vectors.first() else {
            return true;
        };
        let m = RankMatrix::from_rows(field, first.len(), vectors.to_vec());
        m.rank() == vectors.len()
    }
}

/// Reduces a rational matrix modulo `p`.
pub fn reduce_mod_p(m: &RankMatrix<Rationals>, field: &PrimeField) -> Result<RankMatrix<PrimeField>> {
    let data = m
        .data
        .iter()
        .map(|q| field.from_rational(q))
        .collect::<Result<Vec<_>>>()?;
    Ok(RankMatrix::new(*field, m.rows, m.cols, data))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeRank {
    pub prime: u64,
    pub rank: usize,
}

/// Ranks of one integer-constructible matrix reduced at several primes.
///
/// `consensus` (the maximum) is a certified lower bound for the rank over
/// `Q`, since reduction mod `p` never increases rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiPrimeRank {
    pub per_prime: Vec<PrimeRank>,
    pub consensus: usize,
    pub disagreement: bool,
}

/// Builds the matrix at every prime (in parallel) and reports the ranks.
pub fn multi_prime_rank<B>(build: B, primes: &[u64]) -> Result<MultiPrimeRank>
where
    B: Fn(&PrimeField) -> Result<RankMatrix<PrimeField>> + Sync,
{
    if primes.is_empty() {
        return Err(Error::precondition("at least one prime is required"));
    }
    let distinct: BTreeSet<_> = primes.iter().collect();
    if distinct.len() != primes.len() {
        return Err(Error::precondition("primes must be distinct"));
    }
    let per_prime = primes
        .par_iter()
        .map(|&p| {
            let field = PrimeField::new(p)?;
            let m = build(&field)?;
            Ok(PrimeRank {
                prime: p,
                rank: m.rank(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let consensus = per_prime.iter().map(|r| r.rank).max().unwrap_or(0);
    let disagreement = per_prime.iter().any(|r| r.rank != consensus);
    Ok(MultiPrimeRank {
        per_prime,
        consensus,
        disagreement,
    })
}

/// [`multi_prime_rank`] for a fixed rational matrix.
pub fn multi_prime_rank_of(m: &RankMatrix<Rationals>, primes: &[u64]) -> Result<MultiPrimeRank> {
    multi_prime_rank(|f| reduce_mod_p(m, f), primes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn identity_rank() {
        assert_eq!(RankMatrix::identity(fp(7), 3).rank(), 3);
        assert_eq!(RankMatrix::identity(Rationals, 3).rank(), 3);
    }

    #[test]
    fn proportional_rows() {
        let m = RankMatrix::from_i64_rows(fp(7), &[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_of_row_vector() {
        let m = RankMatrix::from_i64_rows(fp(7), &[&[1, 1]]);
        assert_eq!(m.kernel_basis(), vec![vec![6, 1]]);
    }

    #[test]
    fn full_column_rank_has_empty_kernel() {
        let m = RankMatrix::from_i64_rows(fp(7), &[&[1, 0], &[0, 1], &[3, 3]]);
        assert!(m.kernel_basis().is_empty());
        assert!(m.is_injective());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = RankMatrix::from_i64_rows(Rationals, &[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, -1, 2]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_and_inconsistent() {
        let f = fp(101);
        let m = RankMatrix::from_i64_rows(f, &[&[1, 1], &[1, -1], &[2, 0]]);
        let b: Vec<u64> = [3, 1, 4].iter().map(|&v| f.from_i64(v)).collect();
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let bad: Vec<u64> = [3, 1, 5].iter().map(|&v| f.from_i64(v)).collect();
        assert!(m.solve(&bad).is_none());
    }

    #[test]
    fn multi_prime_identity() {
        let m = RankMatrix::identity(Rationals, 3);
        let rep = multi_prime_rank_of(&m, &[7, 10007]).unwrap();
        assert_eq!(rep.consensus, 3);
        assert!(!rep.disagreement);
        assert_eq!(rep.per_prime.iter().map(|r| r.rank).collect::<Vec<_>>(), vec![3, 3]);
    }

    #[test]
    fn multi_prime_rank_drop() {
        let m = RankMatrix::from_i64_rows(Rationals, &[&[10007, 0], &[0, 1]]);
        let rep = multi_prime_rank_of(&m, &[10007]).unwrap();
        assert_eq!(rep.consensus, 1);
        assert_eq!(m.rank(), 2);
        let both = multi_prime_rank_of(&m, &[10007, 65537]).unwrap();
        assert!(both.disagreement);
        assert_eq!(both.consensus, 2);
    }

    #[test]
    fn multi_prime_denominator_failure() {
        let seventh = BigRational::new(1.into(), 7.into());
        let m = RankMatrix::new(Rationals, 1, 1, vec![seventh]);
        assert_eq!(multi_prime_rank_of(&m, &[7, 11]), Err(Error::PrimeReduction(7)));
        assert!(multi_prime_rank_of(&m, &[11, 11]).is_err());
    }

    #[test]
    fn bareiss_matches_gauss_jordan() {
        let rows: &[&[i64]] = &[&[2, 4, -2, 1], &[1, 3, 0, 5], &[3, 7, -2, 6], &[0, 0, 1, 1]];
        let q = RankMatrix::from_i64_rows(Rationals, rows);
        let via_gj = gauss_jordan(&Rationals, 4, 4, &q.data);
        assert_eq!(q.echelon(), &via_gj);
    }

    #[test]
    fn cache_agrees_with_recomputation() {
        let m = RankMatrix::from_i64_rows(fp(13), &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let first = m.rank();
        assert_eq!(m.echelon(), &m.recompute_echelon());
        assert_eq!(m.rank(), first);
        assert_eq!(first, 2);
    }
}
