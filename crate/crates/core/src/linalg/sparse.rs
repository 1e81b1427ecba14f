//! Sparse matrices and the row-echelon engine behind every rank, kernel and
//! membership computation in the crate.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::matrix::{Matrix, Rref};
use super::rational::Rational;
use super::scalar::{Field, Scalar};

/// Sorted, zero-free sparse vector.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn sparse_from_dense(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Rescales `v` so that, over the rationals, its entries are coprime
/// integers with a positive leading entry; over `F_p` the leading entry
/// becomes one. Spans are unchanged.
pub fn primitive(v: SparseVec) -> SparseVec {
    let Some((_, lead)) = v.first() else { return v };
    let scale = match lead {
        Scalar::Q(lead) => {
            let mut den = BigInt::one();
            let mut num = BigInt::zero();
            for (_, x) in &v {
                let Scalar::Q(x) = x else { unreachable!("mixed fields") };
                den = den.lcm(&x.denom());
                num = num.gcd(&x.numer());
            }
            if lead.is_negative() {
                num = -num;
            }
            Scalar::Q(Rational::from_bigints(den, num))
        }
        other => other.inv().expect("leading entries are nonzero"),
    };
    if scale.is_one() {
        return v;
    }
    v.into_iter().map(|(i, x)| (i, x.mul(&scale))).collect()
}

pub fn sparse_to_dense(field: Field, len: usize, v: &SparseVec) -> Vec<Scalar> {
    let mut out = vec![field.zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a - c * b` for sorted sparse vectors.
pub fn axpy_sub(a: &SparseVec, c: &Scalar, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c.mul(&b[j].1).neg()));
            j += 1;
        } else {
            let v = a[i].1.sub(&c.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale_sparse(v: &mut SparseVec, s: &Scalar) {
    for (_, x) in v.iter_mut() {
        *x = x.mul(s);
    }
}

/// Row-major sparse matrix without explicit zeros or duplicate coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        SparseMatrix { field, rows, cols, data: vec![Vec::new(); rows] }
    }

    /// Builds from `(row, col, value)` triples, summing duplicates and dropping
    /// zeros.
    pub fn from_triples(
        field: Field,
        rows: usize,
        cols: usize,
        triples: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (r, c, v) in triples {
            assert!(r < rows && c < cols, "triple ({r},{c}) out of bounds");
            if !v.is_zero() {
                buckets[r].push((c, v));
            }
        }
        let data = buckets
            .into_iter()
            .map(|mut row| {
                row.sort_by_key(|e| e.0);
                let mut merged: SparseVec = Vec::with_capacity(row.len());
                for (c, v) in row {
                    match merged.last_mut() {
                        Some((lc, lv)) if *lc == c => *lv = lv.add(&v),
                        _ => merged.push((c, v)),
                    }
                }
                merged.retain(|(_, v)| !v.is_zero());
                merged
            })
            .collect();
        SparseMatrix { field, rows, cols, data }
    }

    pub(crate) fn from_sorted_rows(field: Field, cols: usize, data: Vec<SparseVec>) -> Self {
        SparseMatrix { field, rows: data.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows, self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                m.set(r, *c, v.clone());
            }
        }
        m
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut data: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        SparseMatrix { field: self.field, rows: self.cols, cols: self.rows, data }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                let mut acc = self.field.zero();
                for (c, x) in row {
                    if !v[*c].is_zero() {
                        acc.add_mul_assign(x, &v[*c]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Product `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows);
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: HashMap<usize, Scalar> = HashMap::new();
                for (k, a) in row {
                    for (j, b) in &other.data[*k] {
                        acc.entry(*j)
                            .and_modify(|x| x.add_mul_assign(a, b))
                            .or_insert_with(|| a.mul(b));
                    }
                }
                let mut v: SparseVec = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                v.sort_by_key(|e| e.0);
                v
            })
            .collect();
        SparseMatrix { field: self.field, rows: self.rows, cols: other.cols, data }
    }

    /// Columns as sparse vectors.
    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    /// Full reduced row echelon form, computed sparsely.
    pub fn rref(&self) -> Rref {
        let mut ech = Echelon::new(self.field, self.cols);
        for row in &self.data {
            ech.insert(row.clone());
        }
        let (rows, pivots) = ech.into_reduced();
        let mut m = Matrix::zeros(self.field, self.rows, self.cols);
        for (i, row) in rows.iter().enumerate() {
            for (c, v) in row {
                m.set(i, *c, v.clone());
            }
        }
        Rref { matrix: m, pivots }
    }

    /// Rank. The bipartite row/column graph is split into connected
    /// components first; each block is eliminated independently.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let blocks = self.blocks();
        blocks.into_par_iter().map(|rows| block_rank(self.field, rows)).sum()
    }

    /// Groups the nonzero rows by connected component of the row/column
    /// incidence graph.
    fn blocks(&self) -> Vec<Vec<SparseVec>> {
        let mut parent: Vec<usize> = (0..self.cols).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for row in &self.data {
            if let Some(&(first, _)) = row.first() {
                let a = find(&mut parent, first);
                for (c, _) in &row[1..] {
                    let b = find(&mut parent, *c);
                    if a != b {
                        parent[b] = a;
                    }
                }
            }
        }
        let mut index: HashMap<usize, usize> = HashMap::new();
        let mut out: Vec<Vec<SparseVec>> = Vec::new();
        for row in &self.data {
            if let Some(&(first, _)) = row.first() {
                let root = find(&mut parent, first);
                let k = *index.entry(root).or_insert_with(|| {
                    out.push(Vec::new());
                    out.len() - 1
                });
                out[k].push(row.clone());
            }
        }
        out
    }
}

fn block_rank(field: Field, mut rows: Vec<SparseVec>) -> usize {
    // Eliminate along whichever side is shorter.
    let mut cols: Vec<usize> = rows.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
    cols.sort_unstable();
    cols.dedup();
    if rows.len() > cols.len() {
        let pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut t: Vec<SparseVec> = vec![Vec::new(); cols.len()];
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row {
                t[pos[c]].push((r, v.clone()));
            }
        }
        rows = t;
    }
    rows.sort_by_key(Vec::len);
    let width = rows.iter().filter_map(|r| r.last().map(|e| e.0 + 1)).max().unwrap_or(0);
    let mut ech = Echelon::new(field, width);
    for row in rows {
        ech.insert(row);
    }
    ech.rank()
}

/// Incrementally maintained row echelon basis of a subspace of `K^width`.
///
/// Every stored row has leading coefficient one at a column no other stored
/// row leads at. Incoming vectors are reduced only until their leading
/// column is free, which is enough to decide independence.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    width: usize,
    rows: Vec<SparseVec>,
    lead: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(field: Field, width: usize) -> Self {
        Echelon { field, width, rows: Vec::new(), lead: HashMap::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` until its leading column carries no pivot. Returns the
    /// residual (empty iff `v` lies in the span).
    pub fn reduce_leading(&self, mut v: SparseVec) -> SparseVec {
        while let Some((c, x)) = v.first() {
            match self.lead.get(c) {
                Some(&k) => {
                    let x = x.clone();
                    v = axpy_sub(&v, &x, &self.rows[k]);
                }
                None => break,
            }
        }
        v
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce_leading(v).is_empty()
    }

    /// Adds `v`; returns `true` if it was independent of the stored rows.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        debug_assert!(v.iter().all(|(c, _)| *c < self.width));
        let mut v = self.reduce_leading(v);
        let Some((c, x)) = v.first().cloned() else {
            return false;
        };
        if !x.is_one() {
            let inv = x.inv().expect("nonzero leading entry");
            scale_sparse(&mut v, &inv);
        }
        self.lead.insert(c, self.rows.len());
        self.rows.push(v);
        true
    }

    pub fn insert_dense(&mut self, v: &[Scalar]) -> bool {
        self.insert(sparse_from_dense(v))
    }

    /// Consumes the echelon basis and returns the reduced row echelon basis
    /// ordered by pivot column, with the pivot columns.
    pub fn into_reduced(self) -> (Vec<SparseVec>, Vec<usize>) {
        let mut order: Vec<(usize, usize)> = self.lead.iter().map(|(c, k)| (*c, *k)).collect();
        order.sort_unstable();
        let pivots: Vec<usize> = order.iter().map(|e| e.0).collect();
        let mut rows: Vec<SparseVec> = Vec::with_capacity(order.len());
        let mut src = self.rows;
        for &(_, k) in &order {
            rows.push(std::mem::take(&mut src[k]));
        }
        let pos: HashMap<usize, usize> = pivots.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        for i in (0..rows.len()).rev() {
            let mut v = std::mem::take(&mut rows[i]);
            let mut idx = 1;
            while idx < v.len() {
                let (c, x) = (v[idx].0, v[idx].1.clone());
                match pos.get(&c) {
                    Some(&j) if j > i => {
                        v = axpy_sub(&v, &x, &rows[j]);
                    }
                    _ => idx += 1,
                }
            }
            rows[i] = v;
        }
        (rows, pivots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triples_merge_and_drop_zeros() {
        let f = Field::Rational;
        let m = SparseMatrix::from_triples(
            f,
            2,
            2,
            vec![(0, 0, f.from_i64(1)), (0, 0, f.from_i64(-1)), (1, 1, f.from_i64(2))],
        );
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.row(1), &vec![(1, f.from_i64(2))]);
    }

    #[test]
    fn rank_splits_blocks() {
        let f = Field::Rational;
        // Two independent 2x2 blocks, one singular.
        let m = Matrix::from_i64(
            f,
            &[&[1, 2, 0, 0], &[2, 4, 0, 0], &[0, 0, 1, 1], &[0, 0, 1, -1]],
        )
        .to_sparse();
        assert_eq!(m.blocks().len(), 2);
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn echelon_membership() {
        let f = Field::Rational;
        let mut e = Echelon::new(f, 3);
        assert!(e.insert_dense(&[f.from_i64(1), f.from_i64(1), f.zero()]));
        assert!(!e.insert_dense(&[f.from_i64(2), f.from_i64(2), f.zero()]));
        assert!(e.insert_dense(&[f.zero(), f.from_i64(1), f.from_i64(1)]));
        let (rows, pivots) = e.into_reduced();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(rows[0], vec![(0, f.one()), (2, f.from_i64(-1))]);
    }
}
