//! Exact linear algebra over the rationals and prime fields.
//!
//! Dense and sparse routes share one contract: reduced row echelon forms are
//! unique, so every basis handed out by this module is independent of the
//! representation that produced it.

mod matrix;
mod rational;
mod scalar;
mod sparse;
mod subspace;

pub use matrix::{Matrix, Rref};
pub use rational::{ParseRationalError, Rational};
pub use scalar::{is_prime, Field, Scalar};
pub use sparse::{primitive, sparse_from_dense, sparse_to_dense, Echelon, SparseMatrix, SparseVec};
pub use subspace::{Quotient, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Tuning knobs shared by the elimination entry points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinalgConfig {
    /// Matrices whose fraction of nonzero entries is below this threshold are
    /// eliminated sparsely.
    pub sparse_density_threshold: f64,
}

impl Default for LinalgConfig {
    fn default() -> Self {
        LinalgConfig { sparse_density_threshold: 0.25 }
    }
}

/// Reduced row echelon form and rank, with the default configuration.
pub fn rref_rank(m: &Matrix) -> (Matrix, usize) {
    rref_rank_with(m, &LinalgConfig::default())
}

pub fn rref_rank_with(m: &Matrix, config: &LinalgConfig) -> (Matrix, usize) {
    let r = if m.density() < config.sparse_density_threshold {
        m.to_sparse().rref()
    } else {
        m.rref_dense()
    };
    let rank = r.rank();
    (r.matrix, rank)
}

/// Basis of the right null space of a sparse matrix.
///
/// Each basis vector has a one at its own free column and zeros at every
/// other free column, so coordinates of a kernel element are its entries at
/// the free columns.
#[derive(Debug, Clone)]
pub struct Kernel {
    field: Field,
    width: usize,
    vectors: Vec<SparseVec>,
    free: Vec<usize>,
}

impl Kernel {
    /// The kernel of the zero map on `K^width`.
    pub fn identity(field: Field, width: usize) -> Self {
        Kernel {
            field,
            width,
            vectors: (0..width).map(|i| vec![(i, field.one())]).collect(),
            free: (0..width).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    pub fn dense_vectors(&self) -> Vec<Vec<Scalar>> {
        self.vectors.iter().map(|v| sparse_to_dense(self.field, self.width, v)).collect()
    }

    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    /// Coordinates of a kernel element in this basis.
    pub fn coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.free.iter().map(|c| v[*c].clone()).collect()
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.width];
        for (c, v) in coeffs.iter().zip(&self.vectors) {
            if c.is_zero() {
                continue;
            }
            for (i, x) in v {
                out[*i].add_mul_assign(c, x);
            }
        }
        out
    }
}

pub fn kernel_sparse(m: &SparseMatrix) -> Kernel {
    let field = m.field();
    let mut ech = Echelon::new(field, m.cols());
    for r in 0..m.rows() {
        ech.insert(m.row(r).clone());
    }
    let (rows, pivots) = ech.into_reduced();
    let mut is_pivot = vec![false; m.cols()];
    for p in &pivots {
        is_pivot[*p] = true;
    }
    let free: Vec<usize> = (0..m.cols()).filter(|c| !is_pivot[*c]).collect();
    let slot: std::collections::HashMap<usize, usize> =
        free.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let mut vectors: Vec<SparseVec> = free.iter().map(|c| vec![(*c, field.one())]).collect();
    for (row, p) in rows.iter().zip(&pivots) {
        for (c, x) in row.iter().skip(1) {
            if let Some(&k) = slot.get(c) {
                vectors[k].push((*p, x.neg()));
            }
        }
    }
    for v in &mut vectors {
        v.sort_by_key(|e| e.0);
    }
    debug_assert_eq!(pivots.len() + vectors.len(), m.cols(), "rank-nullity");
    Kernel { field, width: m.cols(), vectors, free }
}

/// Columns form a basis of the right null space of `m`.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    let k = kernel_sparse(&m.to_sparse());
    Matrix::from_cols(m.field(), m.cols(), &k.dense_vectors())
}

/// Solves `m x = b`. Free variables are set to zero. `Ok(None)` means the
/// system is inconsistent.
pub fn solve_linear(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
    solve_sparse(&m.to_sparse(), b)
}

pub fn solve_sparse(m: &SparseMatrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
    if b.len() != m.rows() {
        return Err(LinalgError::DimensionMismatch { expected: m.rows(), found: b.len() });
    }
    let n = m.cols();
    let field = m.field();
    let mut ech = Echelon::new(field, n + 1);
    for r in 0..m.rows() {
        let mut row = m.row(r).clone();
        if !b[r].is_zero() {
            row.push((n, b[r].clone()));
        }
        ech.insert(row);
    }
    let (rows, pivots) = ech.into_reduced();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![field.zero(); n];
    for (row, p) in rows.iter().zip(&pivots) {
        if let Some((c, v)) = row.last() {
            if *c == n {
                x[*p] = v.clone();
            }
        }
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(q(), 2);
        assert_eq!(rref_rank(&id), (id.clone(), 2));
        let z = Matrix::zeros(q(), 3, 4);
        assert_eq!(rref_rank(&z), (z.clone(), 0));
        let m = Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]);
        let (r, rank) = rref_rank(&m);
        assert_eq!(r, Matrix::from_i64(q(), &[&[1, 2], &[0, 0]]));
        assert_eq!(rank, 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::identity(q(), 3)).cols(), 0);
        assert_eq!(kernel_basis(&Matrix::zeros(q(), 2, 3)).cols(), 3);
        let k = kernel_basis(&Matrix::from_i64(q(), &[&[1, 2]]));
        assert_eq!(k, Matrix::from_i64(q(), &[&[-2], &[1]]));
    }

    #[test]
    fn solve_examples() {
        let f = q();
        let b = vec![f.from_i64(3), f.from_i64(-1)];
        assert_eq!(solve_linear(&Matrix::identity(f, 2), &b).unwrap(), Some(b.clone()));
        let x = solve_linear(&Matrix::from_i64(f, &[&[1, 1]]), &[f.from_i64(3)]).unwrap();
        assert_eq!(x, Some(vec![f.from_i64(3), f.zero()]));
        assert_eq!(solve_linear(&Matrix::from_i64(f, &[&[0]]), &[f.one()]).unwrap(), None);
        assert!(matches!(
            solve_linear(&Matrix::identity(f, 2), &[f.one()]),
            Err(LinalgError::DimensionMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn prime_field_rank_differs_from_rational() {
        let m = Matrix::from_i64(q(), &[&[1, 1], &[1, -1]]);
        assert_eq!(rref_rank(&m).1, 2);
        let m2 = Matrix::from_i64(Field::Prime(2), &[&[1, 1], &[1, -1]]);
        assert_eq!(rref_rank(&m2).1, 1);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(-3i64..4, r * c).prop_map(move |xs| {
                // Bias towards zeros so both routes get exercised.
                Matrix::from_fn(Field::Rational, r, c, |i, j| {
                    let x = xs[i * c + j];
                    Field::Rational.from_i64(if x.abs() == 3 { 0 } else { x })
                })
            })
        })
    }

    proptest! {
        #[test]
        fn rank_of_transpose(m in small_matrix()) {
            prop_assert_eq!(rref_rank(&m).1, rref_rank(&m.transpose()).1);
        }

        #[test]
        fn rank_nullity_and_exact_kernel(m in small_matrix()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(k.cols() + rref_rank(&m).1, m.cols());
            prop_assert!(m.mul(&k).is_zero());
            prop_assert_eq!(rref_rank(&k).1, k.cols());
        }

        #[test]
        fn dense_and_sparse_routes_agree(m in small_matrix()) {
            let dense = rref_rank_with(&m, &LinalgConfig { sparse_density_threshold: 0.0 });
            let sparse = rref_rank_with(&m, &LinalgConfig { sparse_density_threshold: 1.1 });
            prop_assert_eq!(&dense, &sparse);
            let (r, _) = &dense;
            prop_assert_eq!(&rref_rank(r).0, r);
            prop_assert_eq!(m.to_sparse().rank(), dense.1);
        }

        #[test]
        fn solve_reproduces_target(m in small_matrix(), seed in prop::collection::vec(-2i64..3, 6)) {
            let f = Field::Rational;
            let x0: Vec<Scalar> = (0..m.cols()).map(|i| f.from_i64(seed[i % seed.len()])).collect();
            let b = m.mul_vec(&x0);
            let x = solve_linear(&m, &b).unwrap().expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&x), b);
        }
    }
}
