//! Exact sparse and dense linear algebra over [`Rational`].
//!
//! Everything here is exact. Sparse rank and kernel computations use
//! incremental row echelon insertion: each incoming row is reduced against the
//! pivots already stored until its leading column is new. Callers keep fill-in
//! bounded by feeding blocks that are already split along a grading.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

use crate::rational::Rational;

/// A finitely supported vector with coefficients indexed by an ordered key.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseVec<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for SparseVec<K> {
    fn default() -> Self {
        SparseVec { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SparseVec<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(key: K) -> Self {
        let mut v = Self::new();
        v.terms.insert(key, Rational::one());
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (K, Rational)>>(terms: I) -> Self {
        let mut v = Self::new();
        for (k, c) in terms {
            v.add_term(k, &c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, key: &K) -> Option<&Rational> {
        self.terms.get(key)
    }

    pub fn coeff(&self, key: &K) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, key: K, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &SparseVec<K>, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (k, v) in other.iter() {
            self.add_term(k.clone(), &(v * c));
        }
    }

    pub fn add(&mut self, other: &SparseVec<K>) {
        self.add_scaled(other, &Rational::one());
    }

    pub fn sub(&mut self, other: &SparseVec<K>) {
        self.add_scaled(other, &Rational::from(-1));
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        SparseVec { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn difference(&self, other: &SparseVec<K>) -> Self {
        let mut out = self.clone();
        out.sub(other);
        out
    }

    pub fn map_keys<L: Ord + Clone, F: Fn(&K) -> L>(&self, f: F) -> SparseVec<L> {
        let mut out = SparseVec::new();
        for (k, v) in self.iter() {
            out.add_term(f(k), v);
        }
        out
    }

    pub fn into_terms(self) -> BTreeMap<K, Rational> {
        self.terms
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for SparseVec<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        SparseVec::from_terms(iter)
    }
}

/// A linear map stored column by column: each source basis key maps to its
/// image vector. Missing columns are an error on application rather than zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearTable<S: Ord, T: Ord> {
    columns: BTreeMap<S, SparseVec<T>>,
}

impl<S: Ord, T: Ord> Default for LinearTable<S, T> {
    fn default() -> Self {
        LinearTable { columns: BTreeMap::new() }
    }
}

impl<S: Ord + Clone, T: Ord + Clone> LinearTable<S, T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, source: S, image: SparseVec<T>) {
        self.columns.insert(source, image);
    }

    pub fn column(&self, source: &S) -> Option<&SparseVec<T>> {
        self.columns.get(source)
    }

    pub fn columns(&self) -> impl Iterator<Item = (&S, &SparseVec<T>)> {
        self.columns.iter()
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Applies the map by linearity. Returns the first source key that has no
    /// stored column.
    pub fn apply(&self, v: &SparseVec<S>) -> Result<SparseVec<T>, S> {
        let mut out = SparseVec::new();
        for (k, c) in v.iter() {
            let col = self.columns.get(k).ok_or_else(|| k.clone())?;
            out.add_scaled(col, c);
        }
        Ok(out)
    }
}

/// Row-echelon accumulator for sparse rows over column indices `usize`.
///
/// Stored rows are normalized so their leading coefficient is one.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, Vec<(usize, Rational)>>,
}

/// `a + c * b` for sorted sparse rows.
fn axpy(a: &[(usize, Rational)], b: &[(usize, Rational)], c: &Rational) -> Vec<(usize, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, &b[j].1 * c));
            j += 1;
        } else {
            let v = &a[i].1 + &(&b[j].1 * c);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces `row` against the stored pivots on its leading entries only.
    fn reduce_leading(&self, mut row: Vec<(usize, Rational)>) -> Vec<(usize, Rational)> {
        while let Some((lead, c)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => row = axpy(&row, p, &-c),
                None => break,
            }
        }
        row
    }

    /// Inserts a row given as (column, value) pairs in any order. Returns
    /// whether the rank increased.
    pub fn insert(&mut self, mut row: Vec<(usize, Rational)>) -> bool {
        row.retain(|(_, v)| !v.is_zero());
        row.sort_by_key(|(c, _)| *c);
        row.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 += &b.1;
                true
            } else {
                false
            }
        });
        row.retain(|(_, v)| !v.is_zero());
        let row = self.reduce_leading(row);
        match row.first() {
            None => false,
            Some((lead, c)) => {
                let lead = *lead;
                let inv = c.recip();
                let row: Vec<_> = row.into_iter().map(|(k, v)| (k, &v * &inv)).collect();
                self.pivots.insert(lead, row);
                true
            }
        }
    }

    /// Whether `row` lies in the span of the stored rows.
    pub fn contains(&self, mut row: Vec<(usize, Rational)>) -> bool {
        row.retain(|(_, v)| !v.is_zero());
        row.sort_by_key(|(c, _)| *c);
        let mut row = row;
        loop {
            row = self.reduce_leading(row);
            match row.first() {
                None => return true,
                Some((lead, _)) if !self.pivots.contains_key(lead) => return false,
                Some(_) => {}
            }
        }
    }

    /// Fully reduces the stored rows (reduced row echelon form).
    pub fn into_reduced(self) -> BTreeMap<usize, Vec<(usize, Rational)>> {
        let mut done: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        for (lead, mut row) in self.pivots.into_iter().rev() {
            loop {
                let hit = row
                    .iter()
                    .skip(1)
                    .find(|(c, _)| done.contains_key(c))
                    .map(|(c, v)| (*c, v.clone()));
                match hit {
                    Some((c, v)) => row = axpy(&row, &done[&c], &-v),
                    None => break,
                }
            }
            done.insert(lead, row);
        }
        done
    }
}

/// Exact rank of a set of sparse rows.
pub fn sparse_rank<I>(rows: I) -> usize
where
    I: IntoIterator<Item = Vec<(usize, Rational)>>,
{
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Basis of the right kernel `{x : M x = 0}` of the matrix whose rows are
/// given, with `ncols` columns. The basis is the standard one indexed by
/// free columns, so it is deterministic.
pub fn sparse_kernel<I>(rows: I, ncols: usize) -> Vec<SparseVec<usize>>
where
    I: IntoIterator<Item = Vec<(usize, Rational)>>,
{
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    let reduced = e.into_reduced();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !reduced.contains_key(c)) {
        let mut v = SparseVec::unit(free);
        for (lead, row) in reduced.iter() {
            if let Ok(pos) = row.binary_search_by_key(&free, |(c, _)| *c) {
                v.add_term(*lead, &-&row[pos].1);
            }
        }
        out.push(v);
    }
    out
}

/// Dense exact matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        DenseMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self[(r, c)].clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        DenseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * s).collect() }
    }

    pub fn add(&self, other: &DenseMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &DenseMatrix) -> Self {
        self.add(&other.scale(&Rational::from(-1)))
    }

    pub fn mul(&self, other: &DenseMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let v = &out[(i, j)] + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    fn sparse_rows(&self) -> impl Iterator<Item = Vec<(usize, Rational)>> + '_ {
        (0..self.rows).map(move |r| {
            self.row(r)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect()
        })
    }

    pub fn rank(&self) -> usize {
        sparse_rank(self.sparse_rows())
    }

    /// Columns form a basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        sparse_kernel(self.sparse_rows(), self.cols)
            .into_iter()
            .map(|v| (0..self.cols).map(|c| v.coeff(&c)).collect())
            .collect()
    }

    /// Indices of a maximal linearly independent subset of the columns,
    /// chosen greedily left to right.
    pub fn independent_columns(&self) -> Vec<usize> {
        let mut e = Echelon::new();
        let mut out = Vec::new();
        for c in 0..self.cols {
            let col: Vec<_> = (0..self.rows)
                .filter(|&r| !self[(r, c)].is_zero())
                .map(|r| (r, self[(r, c)].clone()))
                .collect();
            if e.insert(col) {
                out.push(c);
            }
        }
        out
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<DenseMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = DenseMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if pivot != col {
                for c in 0..n {
                    a.data.swap(pivot * n + c, col * n + c);
                    inv.data.swap(pivot * n + c, col * n + c);
                }
            }
            let p = a[(col, col)].recip();
            for c in 0..n {
                let v = &a[(col, c)] * &p;
                a.set(col, c, v);
                let v = &inv[(col, c)] * &p;
                inv.set(col, c, v);
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for c in 0..n {
                    if !a[(col, c)].is_zero() {
                        let v = &a[(r, c)] - &(&f * &a[(col, c)]);
                        a.set(r, c, v);
                    }
                    if !inv[(col, c)].is_zero() {
                        let v = &inv[(r, c)] - &(&f * &inv[(col, c)]);
                        inv.set(r, c, v);
                    }
                }
            }
        }
        Some(inv)
    }

    /// A left inverse `L` with `L * self = I` for a matrix of full column
    /// rank, built from an invertible square subset of rows. `None` if the
    /// columns are dependent.
    pub fn left_inverse(&self) -> Option<DenseMatrix> {
        let rows = self.transpose().independent_columns();
        if rows.len() != self.cols {
            return None;
        }
        let mut square = DenseMatrix::zeros(self.cols, self.cols);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                square.set(i, c, self[(r, c)].clone());
            }
        }
        let inv = square.inverse()?;
        let mut out = DenseMatrix::zeros(self.cols, self.rows);
        for (i, &r) in rows.iter().enumerate() {
            for k in 0..self.cols {
                out.set(k, r, inv[(k, i)].clone());
            }
        }
        Some(out)
    }

    /// Some solution `x` of `self * x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let n = self.cols;
        let mut e = Echelon::new();
        // Augmented rows; column n carries the right-hand side.
        for r in 0..self.rows {
            let mut row: Vec<(usize, Rational)> = self
                .row(r)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect();
            if !b[r].is_zero() {
                row.push((n, b[r].clone()));
            }
            e.insert(row);
        }
        let reduced = e.into_reduced();
        if reduced.contains_key(&n) {
            return None;
        }
        let mut x = vec![Rational::zero(); n];
        for (lead, row) in reduced.iter() {
            if let Some((_, v)) = row.iter().find(|(c, _)| *c == n) {
                x[*lead] = v.clone();
            }
        }
        Some(x)
    }

    /// Determinant by exact elimination.
    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                for c in 0..n {
                    a.data.swap(pivot * n + c, col * n + c);
                }
                det = -det;
            }
            let p = a[(col, col)].clone();
            det = &det * &p;
            let pinv = p.recip();
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] * &pinv;
                for c in col..n {
                    if !a[(col, c)].is_zero() {
                        let v = &a[(r, c)] - &(&f * &a[(col, c)]);
                        a.set(r, c, v);
                    }
                }
            }
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn m(rows: &[&[i64]]) -> DenseMatrix {
        DenseMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect())
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(Rational::is_zero));
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), DenseMatrix::identity(2));
        assert_eq!(a.solve(&[q(3), q(2)]).unwrap(), vec![q(1), q(1)]);
        assert!(m(&[&[1, 1], &[1, 1]]).inverse().is_none());
        assert!(m(&[&[1, 1], &[1, 1]]).solve(&[q(1), q(2)]).is_none());
        assert_eq!(m(&[&[1, 2], &[3, 4]]).determinant(), q(-2));
    }

    #[test]
    fn left_inverse_recovers_coordinates() {
        let a = m(&[&[1, 0], &[1, 1], &[0, 2]]);
        let l = a.left_inverse().unwrap();
        assert_eq!(l.mul(&a), DenseMatrix::identity(2));
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(vec![(0, q(1)), (2, q(1))]));
        assert!(e.insert(vec![(1, q(1)), (2, q(-1))]));
        assert!(!e.insert(vec![(0, q(2)), (1, q(1)), (2, q(1))]));
        assert!(e.contains(vec![(0, q(1)), (1, q(1))]));
        assert!(!e.contains(vec![(2, q(1))]));
    }
}
