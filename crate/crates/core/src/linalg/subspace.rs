use super::matrix::Matrix;
use super::scalar::{Field, Scalar};
use super::sparse::{axpy_sub, sparse_from_dense, sparse_to_dense, Echelon, SparseMatrix, SparseVec};

/// A subspace of `K^n`, stored by its reduced row echelon basis.
///
/// The basis is canonical, so two subspaces are equal iff their stored rows
/// agree, and coordinates of a member are read off at the pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: (0..ambient).map(|i| vec![(i, field.one())]).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_echelon(ech: Echelon) -> Self {
        let field = ech.field();
        let ambient = ech.width();
        let (rows, pivots) = ech.into_reduced();
        Subspace { field, ambient, rows, pivots }
    }

    pub fn span<I, V>(field: Field, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[Scalar]>,
    {
        let mut ech = Echelon::new(field, ambient);
        for v in vectors {
            let v = v.as_ref();
            assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
            ech.insert(sparse_from_dense(v));
        }
        Self::from_echelon(ech)
    }

    pub fn span_sparse(field: Field, ambient: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut ech = Echelon::new(field, ambient);
        for v in vectors {
            ech.insert(v);
        }
        Self::from_echelon(ech)
    }

    /// Column space of a matrix.
    pub fn column_space(m: &Matrix) -> Self {
        Self::span(m.field(), m.rows(), m.col_vectors())
    }

    pub fn column_space_sparse(m: &SparseMatrix) -> Self {
        Self::span_sparse(m.field(), m.rows(), m.columns())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_sparse(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|r| sparse_to_dense(self.field, self.ambient, r)).collect()
    }

    /// `ambient x dim` matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_cols(self.field, self.ambient, &self.basis())
    }

    fn residual(&self, v: &[Scalar]) -> SparseVec {
        let mut r = sparse_from_dense(v);
        for (row, p) in self.rows.iter().zip(&self.pivots) {
            if !v[*p].is_zero() {
                r = axpy_sub(&r, &v[*p], row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        self.residual(v).is_empty()
    }

    pub fn contains_sparse(&self, v: &SparseVec) -> bool {
        self.contains(&sparse_to_dense(self.field, self.ambient, v))
    }

    /// Coordinates with respect to the stored basis, `None` if `v` is not a
    /// member.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|p| v[*p].clone()).collect())
    }

    /// Element with the given coordinates.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coeffs.len(), self.dim());
        let mut out = vec![self.field.zero(); self.ambient];
        for (c, row) in coeffs.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (i, x) in row {
                out[*i].add_mul_assign(c, x);
            }
        }
        out
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains_sparse(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Self::span_sparse(self.field, self.ambient, self.rows.iter().chain(&other.rows).cloned())
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let (k, l) = (self.dim(), other.dim());
        if k == 0 || l == 0 {
            return Subspace::zero(self.field, self.ambient);
        }
        // Solve sum x_i u_i - sum y_j w_j = 0.
        let mut triples = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                triples.push((*c, i, v.clone()));
            }
        }
        for (j, row) in other.rows.iter().enumerate() {
            for (c, v) in row {
                triples.push((*c, k + j, v.neg()));
            }
        }
        let m = SparseMatrix::from_triples(self.field, self.ambient, k + l, triples);
        let ker = super::kernel_sparse(&m);
        let vecs: Vec<Vec<Scalar>> = ker
            .vectors()
            .iter()
            .map(|x| {
                let dense = sparse_to_dense(self.field, k + l, x);
                self.combine(&dense[..k])
            })
            .collect();
        Self::span(self.field, self.ambient, vecs)
    }

    /// Image under a linear map given as a closure on vectors.
    pub fn map(&self, target: usize, f: impl Fn(&[Scalar]) -> Vec<Scalar>) -> Subspace {
        Self::span(self.field, target, self.basis().iter().map(|v| f(v)))
    }
}

/// The quotient `K^n / U`, realized on the standard basis vectors at the
/// non-pivot columns of `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    sub: Subspace,
    complement: Vec<usize>,
}

impl Quotient {
    pub fn new(sub: Subspace) -> Self {
        let mut is_pivot = vec![false; sub.ambient];
        for p in &sub.pivots {
            is_pivot[*p] = true;
        }
        let complement = (0..sub.ambient).filter(|i| !is_pivot[*i]).collect();
        Quotient { sub, complement }
    }

    pub fn field(&self) -> Field {
        self.sub.field
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn ambient(&self) -> usize {
        self.sub.ambient
    }

    pub fn kernel(&self) -> &Subspace {
        &self.sub
    }

    /// Indices of the standard basis vectors spanning the complement.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = sparse_to_dense(self.field(), self.ambient(), &self.sub.residual(v));
        self.complement.iter().map(|i| r[*i].clone()).collect()
    }

    pub fn lift(&self, q: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(q.len(), self.dim());
        let mut out = vec![self.field().zero(); self.ambient()];
        for (i, x) in self.complement.iter().zip(q) {
            out[*i] = x.clone();
        }
        out
    }

    /// `dim x ambient` matrix of the projection.
    pub fn projection_matrix(&self) -> Matrix {
        let f = self.field();
        let n = self.ambient();
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|j| {
                let mut e = vec![f.zero(); n];
                e[j] = f.one();
                self.project(&e)
            })
            .collect();
        Matrix::from_cols(f, self.dim(), &cols)
    }

    /// `ambient x dim` matrix of the section.
    pub fn section_matrix(&self) -> Matrix {
        let f = self.field();
        let mut m = Matrix::zeros(f, self.ambient(), self.dim());
        for (k, i) in self.complement.iter().enumerate() {
            m.set(*i, k, f.one());
        }
        m
    }

    /// Map induced on the quotient by an endomorphism preserving the kernel.
    pub fn induced(&self, t: &Matrix) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self
            .complement
            .iter()
            .map(|i| self.project(&t.col(*i)))
            .collect();
        Matrix::from_cols(self.field(), self.dim(), &cols)
    }
}
