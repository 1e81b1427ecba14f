//! Finite-dimensional associative unital algebras given by structure
//! constants.
//!
//! An algebra of dimension `d` stores, for each pair of basis elements, the
//! sparse coefficient vector of their product: `b_i b_j = sum_k c[i][j][k] b_k`.
//! The zero algebra (dimension 0) is a legal value.

pub mod catalog;
mod pierce;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    kernel_sparse, sparse_from_dense, sparse_to_dense, Echelon, Field, Matrix, Quotient, Scalar,
    SparseMatrix, SparseVec, Subspace,
};

pub use pierce::{Piece, PierceData};

/// A finite-dimensional associative unital algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    dim: usize,
    labels: Vec<String>,
    table: Vec<SparseVec>,
    unit: Vec<Scalar>,
}

/// One violated ring axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    /// `(b_i b_j) b_k != b_i (b_j b_k)`.
    Associativity { i: usize, j: usize, k: usize },
    /// `u b_i != b_i`.
    LeftUnit { i: usize },
    /// `b_i u != b_i`.
    RightUnit { i: usize },
    /// A structure constant refers to an index outside the basis.
    IndexOutOfRange { i: usize, j: usize, k: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Associativity { i, j, k } => {
                write!(f, "associativity fails on basis triple ({i},{j},{k})")
            }
            Violation::LeftUnit { i } => write!(f, "unit fails on the left of basis element {i}"),
            Violation::RightUnit { i } => {
                write!(f, "unit fails on the right of basis element {i}")
            }
            Violation::IndexOutOfRange { i, j, k } => {
                write!(f, "structure constant ({i},{j},{k}) is out of range")
            }
        }
    }
}

/// Result of [`Algebra::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// An element together with the algebra it lives in.
#[derive(Clone, Debug)]
pub struct Element<'a> {
    parent: &'a Algebra,
    coeffs: Vec<Scalar>,
}

impl<'a> Element<'a> {
    pub fn parent(&self) -> &'a Algebra {
        self.parent
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    fn check_parent(&self, other: &Element<'_>) -> Result<()> {
        if std::ptr::eq(self.parent, other.parent) || self.parent == other.parent {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn mul(&self, other: &Element<'_>) -> Result<Element<'a>> {
        self.check_parent(other)?;
        Ok(Element { parent: self.parent, coeffs: self.parent.mul(&self.coeffs, &other.coeffs) })
    }

    pub fn add(&self, other: &Element<'_>) -> Result<Element<'a>> {
        self.check_parent(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect();
        Ok(Element { parent: self.parent, coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }
}

impl PartialEq for Element<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.coeffs == other.coeffs
    }
}

/// An element `x` with `x x = x`, checked at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Idempotent {
    coeffs: Vec<Scalar>,
}

impl Idempotent {
    pub fn new(algebra: &Algebra, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != algebra.dim() {
            return Err(Error::ParentMismatch);
        }
        if algebra.mul(&coeffs, &coeffs) != coeffs {
            return Err(Error::NotIdempotent);
        }
        Ok(Idempotent { coeffs })
    }

    pub fn unit(algebra: &Algebra) -> Self {
        Idempotent { coeffs: algebra.unit().to_vec() }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// The complementary idempotent `1 - e`.
    pub fn complement(&self, algebra: &Algebra) -> Idempotent {
        let coeffs = algebra.unit().iter().zip(&self.coeffs).map(|(u, x)| u.sub(x)).collect();
        Idempotent { coeffs }
    }
}

/// A quotient algebra together with the projection from its parent.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub algebra: Algebra,
    pub map: Quotient,
}

impl QuotientAlgebra {
    /// Image of an element of the parent algebra.
    pub fn project(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.map.project(x)
    }
}

fn add_scaled(out: &mut [Scalar], c: &Scalar, v: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (k, x) in v {
        out[*k].add_mul_assign(c, x);
    }
}

impl Algebra {
    /// Builds an algebra from dense or sparse products and validates it
    /// strictly: every violation is reported.
    pub fn from_table(
        field: Field,
        labels: Vec<String>,
        table: Vec<SparseVec>,
        unit: Vec<Scalar>,
    ) -> Result<Self> {
        let a = Self::from_table_unchecked(field, labels, table, unit);
        let report = a.validate();
        if report.is_valid() {
            Ok(a)
        } else {
            Err(Error::InvalidAlgebra(report))
        }
    }

    pub(crate) fn from_table_unchecked(
        field: Field,
        labels: Vec<String>,
        mut table: Vec<SparseVec>,
        unit: Vec<Scalar>,
    ) -> Self {
        let dim = unit.len();
        assert_eq!(labels.len(), dim, "one label per basis element");
        assert_eq!(table.len(), dim * dim, "one product per basis pair");
        for v in &mut table {
            v.retain(|(_, x)| !x.is_zero());
            v.sort_by_key(|e| e.0);
        }
        Algebra { field, dim, labels, table, unit }
    }

    /// Builds an algebra from triples `(i, j, k, c)` meaning `c` is the
    /// coefficient of `b_k` in `b_i b_j`. Repeated triples are summed.
    /// Returns the validation report if the axioms fail, including out of
    /// range indices.
    pub fn from_triples(
        field: Field,
        labels: Vec<String>,
        triples: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        unit: Vec<Scalar>,
    ) -> Result<Self> {
        let d = unit.len();
        let mut dense: Vec<Vec<Scalar>> = vec![vec![field.zero(); d]; d * d];
        let mut bad = Vec::new();
        for (i, j, k, c) in triples {
            if i >= d || j >= d || k >= d {
                bad.push(Violation::IndexOutOfRange { i, j, k });
                continue;
            }
            dense[i * d + j][k] = dense[i * d + j][k].add(&c);
        }
        if !bad.is_empty() {
            return Err(Error::InvalidAlgebra(ValidationReport { violations: bad }));
        }
        let table = dense.iter().map(|v| sparse_from_dense(v)).collect();
        Self::from_table(field, labels, table, unit)
    }

    /// Builds an algebra whose product of basis elements is given densely.
    pub fn from_fn(
        field: Field,
        labels: Vec<String>,
        unit: Vec<Scalar>,
        mut product: impl FnMut(usize, usize) -> Vec<Scalar>,
    ) -> Result<Self> {
        let d = unit.len();
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                table.push(sparse_from_dense(&product(i, j)));
            }
        }
        Self::from_table(field, labels, table, unit)
    }

    /// The zero algebra, in which `0 = 1`.
    pub fn zero(field: Field) -> Self {
        Algebra { field, dim: 0, labels: Vec::new(), table: Vec::new(), unit: Vec::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// Coefficients of `b_i b_j`.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim + j]
    }

    /// All nonzero structure constants as `(i, j, k, c)`.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        (0..self.dim).flat_map(move |i| {
            (0..self.dim).flat_map(move |j| self.product(i, j).iter().map(move |(k, c)| (i, j, *k, c)))
        })
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vector();
        v[i] = self.field.one();
        v
    }

    pub fn element(&self, coeffs: Vec<Scalar>) -> Result<Element<'_>> {
        if coeffs.len() != self.dim {
            return Err(Error::ParentMismatch);
        }
        Ok(Element { parent: self, coeffs })
    }

    pub fn one(&self) -> Element<'_> {
        Element { parent: self, coeffs: self.unit.clone() }
    }

    /// Product of two coefficient vectors.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                add_scaled(&mut out, &xi.mul(yj), self.product(i, j));
            }
        }
        out
    }

    /// Product of two sparse coefficient vectors.
    pub fn mul_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = self.zero_vector();
        for (i, xi) in x {
            for (j, yj) in y {
                add_scaled(&mut out, &xi.mul(yj), self.product(*i, *j));
            }
        }
        sparse_from_dense(&out)
    }

    /// Matrix of `y -> x y`; column `j` holds `x b_j`.
    pub fn left_mult(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> =
            (0..self.dim).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Matrix::from_cols(self.field, self.dim, &cols)
    }

    /// Matrix of `y -> y x`; column `j` holds `b_j x`.
    pub fn right_mult(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> =
            (0..self.dim).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        Matrix::from_cols(self.field, self.dim, &cols)
    }

    /// Checks every associativity triple and both unit laws.
    pub fn validate(&self) -> ValidationReport {
        self.validate_with(true)
    }

    /// With `strict = false` validation stops at the first violation.
    pub fn validate_with(&self, strict: bool) -> ValidationReport {
        let d = self.dim;
        let mut violations = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let p = self.product(i, j);
                for k in 0..d {
                    let mut lhs = self.zero_vector();
                    for (l, c) in p {
                        add_scaled(&mut lhs, c, self.product(*l, k));
                    }
                    let mut rhs = self.zero_vector();
                    for (l, c) in self.product(j, k) {
                        add_scaled(&mut rhs, c, self.product(i, *l));
                    }
                    if lhs != rhs {
                        violations.push(Violation::Associativity { i, j, k });
                        if !strict {
                            return ValidationReport { violations };
                        }
                    }
                }
            }
        }
        for i in 0..d {
            let b = self.basis_vector(i);
            if self.mul(&self.unit, &b) != b {
                violations.push(Violation::LeftUnit { i });
                if !strict {
                    return ValidationReport { violations };
                }
            }
            if self.mul(&b, &self.unit) != b {
                violations.push(Violation::RightUnit { i });
                if !strict {
                    return ValidationReport { violations };
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// `{z : z x = x z for every x in the list}`, computed as one kernel.
    pub fn centralizer(&self, xs: &[Vec<Scalar>]) -> Subspace {
        let d = self.dim;
        let mut triples = Vec::new();
        for (t, x) in xs.iter().enumerate() {
            let l = self.left_mult(x);
            let r = self.right_mult(x);
            // Column j of (R_x - L_x) is b_j x - x b_j.
            for k in 0..d {
                for j in 0..d {
                    let v = r.get(k, j).sub(l.get(k, j));
                    if !v.is_zero() {
                        triples.push((t * d + k, j, v));
                    }
                }
            }
        }
        let m = SparseMatrix::from_triples(self.field, xs.len() * d, d, triples);
        let k = kernel_sparse(&m);
        Subspace::span_sparse(self.field, d, k.vectors().iter().cloned())
    }

    /// The centre `{z : z b_i = b_i z for all i}`.
    pub fn centre(&self) -> Subspace {
        let basis: Vec<Vec<Scalar>> = (0..self.dim).map(|i| self.basis_vector(i)).collect();
        self.centralizer(&basis)
    }

    /// The smallest two-sided ideal containing `gens`, by saturation.
    pub fn two_sided_ideal(&self, gens: &[Vec<Scalar>]) -> Subspace {
        self.saturate(gens, true, true)
    }

    /// The right ideal `gens * A`.
    pub fn right_ideal(&self, gens: &[Vec<Scalar>]) -> Subspace {
        self.saturate(gens, false, true)
    }

    /// The left ideal `A * gens`.
    pub fn left_ideal(&self, gens: &[Vec<Scalar>]) -> Subspace {
        self.saturate(gens, true, false)
    }

    fn saturate(&self, gens: &[Vec<Scalar>], left: bool, right: bool) -> Subspace {
        let d = self.dim;
        let mut ech = Echelon::new(self.field, d);
        let mut queue: Vec<SparseVec> = gens.iter().map(|g| sparse_from_dense(g)).collect();
        while let Some(v) = queue.pop() {
            if !ech.insert(v.clone()) {
                continue;
            }
            for i in 0..d {
                let b = vec![(i, self.field.one())];
                if left {
                    queue.push(self.mul_sparse(&b, &v));
                }
                if right {
                    queue.push(self.mul_sparse(&v, &b));
                }
            }
        }
        Subspace::from_echelon(ech)
    }

    pub fn is_two_sided_ideal(&self, ideal: &Subspace) -> bool {
        ideal.basis().iter().all(|v| {
            (0..self.dim).all(|i| {
                let b = self.basis_vector(i);
                ideal.contains(&self.mul(&b, v)) && ideal.contains(&self.mul(v, &b))
            })
        })
    }

    /// `A / I` on the complement basis of `I`; errors if `I` is not a
    /// two-sided ideal.
    pub fn quotient(&self, ideal: &Subspace) -> Result<QuotientAlgebra> {
        if ideal.ambient() != self.dim || !self.is_two_sided_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let q = Quotient::new(ideal.clone());
        let reps = q.complement().to_vec();
        let labels = reps.iter().map(|i| self.labels[*i].clone()).collect();
        let mut table = Vec::with_capacity(reps.len() * reps.len());
        for &i in &reps {
            for &j in &reps {
                let p = sparse_to_dense(self.field, self.dim, self.product(i, j));
                table.push(sparse_from_dense(&q.project(&p)));
            }
        }
        let unit = q.project(&self.unit);
        let algebra = Self::from_table_unchecked(self.field, labels, table, unit);
        debug_assert!(algebra.validate().is_valid());
        Ok(QuotientAlgebra { algebra, map: q })
    }

    /// The subspace `sub` as an algebra with unit `unit`, on the stored basis
    /// of `sub`. The unit need not be the unit of `self`, which covers corner
    /// rings `eAe`.
    pub fn subalgebra(&self, sub: &Subspace, unit: &[Scalar]) -> Result<Algebra> {
        if sub.dim() == 0 {
            return if unit.iter().all(Scalar::is_zero) {
                Ok(Algebra::zero(self.field))
            } else {
                Err(Error::NotASubalgebra)
            };
        }
        let basis = sub.basis();
        let mut table = Vec::with_capacity(basis.len() * basis.len());
        for x in &basis {
            for y in &basis {
                let c = sub.coords(&self.mul(x, y)).ok_or(Error::NotASubalgebra)?;
                table.push(sparse_from_dense(&c));
            }
        }
        let u = sub.coords(unit).ok_or(Error::NotASubalgebra)?;
        let labels = (0..basis.len()).map(|i| format!("s{i}")).collect();
        let alg = Self::from_table_unchecked(self.field, labels, table, u);
        let report = alg.validate();
        if !report.is_valid() {
            return Err(Error::NotASubalgebra);
        }
        Ok(alg)
    }

    /// The same algebra on the basis given by the columns of `p` (expressed
    /// in the current basis).
    pub fn change_basis(&self, p: &Matrix, labels: Vec<String>) -> Result<Algebra> {
        let inv = p.inverse().ok_or(Error::SingularBasisChange)?;
        let cols = p.col_vectors();
        let d = self.dim;
        let mut table = Vec::with_capacity(d * d);
        for x in &cols {
            for y in &cols {
                table.push(sparse_from_dense(&inv.mul_vec(&self.mul(x, y))));
            }
        }
        let unit = inv.mul_vec(&self.unit);
        Ok(Self::from_table_unchecked(self.field, labels, table, unit))
    }

    /// Same basis, `c_op[i][j][k] = c[j][i][k]`.
    pub fn opposite(&self) -> Algebra {
        let d = self.dim;
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                table.push(self.product(j, i).clone());
            }
        }
        Algebra {
            field: self.field,
            dim: d,
            labels: self.labels.clone(),
            table,
            unit: self.unit.clone(),
        }
    }

    /// `self ⊗ other`; the basis element `a_i ⊗ b_j` has index
    /// `i * other.dim() + j`.
    pub fn tensor(&self, other: &Algebra) -> Result<Algebra> {
        if self.field != other.field {
            return Err(Error::FieldMismatch("tensor product of algebras".into()));
        }
        let (d1, d2) = (self.dim, other.dim);
        let n = d1 * d2;
        let mut table = Vec::with_capacity(n * n);
        for i1 in 0..d1 {
            for j1 in 0..d2 {
                for i2 in 0..d1 {
                    for j2 in 0..d2 {
                        let mut v = Vec::new();
                        for (k1, c1) in self.product(i1, i2) {
                            for (k2, c2) in other.product(j1, j2) {
                                v.push((k1 * d2 + k2, c1.mul(c2)));
                            }
                        }
                        v.sort_by_key(|e| e.0);
                        table.push(v);
                    }
                }
            }
        }
        let mut unit = vec![self.field.zero(); n];
        for (i, x) in self.unit.iter().enumerate() {
            for (j, y) in other.unit.iter().enumerate() {
                unit[i * d2 + j] = x.mul(y);
            }
        }
        let mut labels = Vec::with_capacity(n);
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("{a}*{b}"));
            }
        }
        Ok(Self::from_table_unchecked(self.field, labels, table, unit))
    }

    /// `A^op ⊗ A`; a bimodule over `A` is a right module over it.
    pub fn enveloping(&self) -> Algebra {
        self.opposite().tensor(self).expect("same field")
    }

    /// `M_n(A) = M_n(K) ⊗ A`.
    pub fn matrix_algebra(&self, n: usize) -> Algebra {
        catalog::full_matrix(self.field, n).tensor(self).expect("same field")
    }

    /// Relabels the basis.
    pub fn with_labels(mut self, labels: Vec<String>) -> Algebra {
        assert_eq!(labels.len(), self.dim);
        self.labels = labels;
        self
    }

    /// Pierce decomposition with respect to an idempotent.
    pub fn pierce(&self, e: &Idempotent) -> Result<PierceData> {
        PierceData::new(self, e)
    }

    /// Reduces all structure constants into a prime field. Fails if a
    /// denominator vanishes there.
    pub fn reduce_mod(&self, p: u64) -> Result<Algebra> {
        let field = Field::Prime(p);
        let conv = |x: &Scalar| -> Result<Scalar> {
            match x {
                Scalar::Q(r) => field
                    .from_rational(r)
                    .ok_or_else(|| Error::FieldMismatch(format!("denominator of {r} vanishes mod {p}"))),
                Scalar::Fp { .. } => Err(Error::FieldMismatch("already over a prime field".into())),
            }
        };
        let mut table = Vec::with_capacity(self.table.len());
        for v in &self.table {
            let mut w = Vec::with_capacity(v.len());
            for (k, x) in v {
                w.push((*k, conv(x)?));
            }
            table.push(w);
        }
        let unit = self.unit.iter().map(conv).collect::<Result<Vec<_>>>()?;
        Algebra::from_table(field, self.labels.clone(), table, unit)
    }
}

impl Algebra {
    /// The subalgebra generated by the unit and `gens`, as a subspace.
    pub fn generated_subalgebra(&self, gens: &[Vec<Scalar>]) -> Subspace {
        let mut ech = Echelon::new(self.field, self.dim);
        let mut queue = vec![self.unit.clone()];
        ech.insert_dense(&self.unit);
        while let Some(x) = queue.pop() {
            for g in gens {
                let y = self.mul(&x, g);
                if ech.insert_dense(&y) {
                    queue.push(y);
                }
            }
        }
        Subspace::from_echelon(ech)
    }

    /// Indices of basis elements that generate the algebra, chosen greedily
    /// in basis order. A linear map commuting with the actions of these
    /// commutes with every element.
    pub fn generator_indices(&self) -> Vec<usize> {
        let mut chosen = Vec::new();
        let mut gens: Vec<Vec<Scalar>> = Vec::new();
        let mut current = self.generated_subalgebra(&gens);
        for i in 0..self.dim {
            if current.dim() == self.dim {
                break;
            }
            let b = self.basis_vector(i);
            if !current.contains(&b) {
                chosen.push(i);
                gens.push(b);
                current = self.generated_subalgebra(&gens);
            }
        }
        chosen
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(dim {} over {}, basis {:?})", self.dim, self.field, self.labels)
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| q().from_i64(x)).collect()
    }

    #[test]
    fn catalog_algebras_validate() {
        for a in [
            ground(q()),
            dual_numbers(q()),
            truncated_polynomial(q(), 3, "x"),
            upper_triangular(q(), 2),
            full_matrix(q(), 2),
            product_of_fields(q(), 3),
            quadratic_extension(q(), 2),
            path_algebra_a2(q()),
        ] {
            assert!(a.validate().is_valid(), "{a:?}");
        }
    }

    #[test]
    fn violation_cites_triple() {
        // With a a = b, a b = a and b a = 0: (a a) a = 0 but a (a a) = a.
        let f = q();
        let unit_rows = [(0, 0, 0), (0, 1, 1), (1, 0, 1), (0, 2, 2), (2, 0, 2)];
        let mut triples: Vec<_> = unit_rows.iter().map(|&(i, j, k)| (i, j, k, f.one())).collect();
        triples.push((1, 1, 2, f.one()));
        triples.push((1, 2, 1, f.one()));
        let err = Algebra::from_triples(f, vec!["1".into(), "a".into(), "b".into()], triples, v(&[1, 0, 0]))
            .unwrap_err();
        let Error::InvalidAlgebra(report) = err else { panic!("expected report") };
        assert!(report.violations.contains(&Violation::Associativity { i: 1, j: 1, k: 1 }));
    }

    #[test]
    fn products() {
        let d = dual_numbers(q());
        let x = d.element(v(&[0, 1])).unwrap();
        assert!(x.mul(&x).unwrap().is_zero());
        assert_eq!(d.one().mul(&x).unwrap(), x);
        let m = full_matrix(q(), 2);
        // Basis E11, E12, E21, E22.
        let e12 = m.element(m.basis_vector(1)).unwrap();
        let e21 = m.element(m.basis_vector(2)).unwrap();
        assert_eq!(e12.mul(&e21).unwrap().coeffs(), v(&[1, 0, 0, 0]).as_slice());
        assert_eq!(x.mul(&e12), Err(Error::ParentMismatch));
    }

    #[test]
    fn centres() {
        assert_eq!(dual_numbers(q()).centre().dim(), 2);
        assert_eq!(full_matrix(q(), 2).centre().dim(), 1);
        assert_eq!(upper_triangular(q(), 2).centre().dim(), 1);
    }

    #[test]
    fn ideals_and_quotients() {
        let t = upper_triangular(q(), 2); // E11, E12, E22
        assert_eq!(t.two_sided_ideal(&[t.unit().to_vec()]).dim(), 3);
        assert_eq!(t.two_sided_ideal(&[]).dim(), 0);
        let i = t.two_sided_ideal(&[v(&[1, 0, 0])]);
        assert_eq!(i, Subspace::span(q(), 3, [v(&[1, 0, 0]), v(&[0, 1, 0])]));

        let d = dual_numbers(q());
        let rad = d.two_sided_ideal(&[v(&[0, 1])]);
        let qa = d.quotient(&rad).unwrap();
        assert_eq!(qa.algebra.dim(), 1);
        assert_eq!(qa.algebra.unit(), &v(&[1])[..]);
        assert_eq!(d.quotient(&Subspace::zero(q(), 2)).unwrap().algebra, d);
        assert_eq!(d.quotient(&Subspace::full(q(), 2)).unwrap().algebra.dim(), 0);
        assert_eq!(
            d.quotient(&Subspace::span(q(), 2, [v(&[1, 1])])).unwrap_err(),
            Error::NotAnIdeal
        );
    }

    #[test]
    fn derived_algebras() {
        let d = dual_numbers(q());
        assert_eq!(d.opposite(), d);
        let t = upper_triangular(q(), 2);
        assert_eq!(t.opposite().opposite(), t);
        assert_ne!(t.opposite(), t);
        assert_eq!(ground(q()).enveloping().dim(), 1);
        let e = d.enveloping();
        assert_eq!(e.dim(), 4);
        assert!(e.validate().is_valid());
        assert!(t.enveloping().validate().is_valid());
        assert!(d.matrix_algebra(2).validate().is_valid());
    }

    #[test]
    fn change_of_basis_round_trip() {
        let t = upper_triangular(q(), 2);
        let p = Matrix::from_i64(q(), &[&[1, 1, 0], &[0, 1, 0], &[1, 0, 1]]);
        let t2 = t.change_basis(&p, t.labels().to_vec()).unwrap();
        assert!(t2.validate().is_valid());
        let back = t2.change_basis(&p.inverse().unwrap(), t.labels().to_vec()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn idempotents() {
        let t = upper_triangular(q(), 2);
        assert!(Idempotent::new(&t, v(&[0, 0, 1])).is_ok());
        assert_eq!(Idempotent::new(&t, v(&[0, 1, 0])), Err(Error::NotIdempotent));
        let e = Idempotent::new(&t, v(&[1, 0, 0])).unwrap();
        assert_eq!(e.complement(&t).coeffs(), &v(&[0, 0, 1])[..]);
    }

    #[test]
    fn reduction_mod_p() {
        let a = quadratic_extension(q(), 2);
        let a2 = a.reduce_mod(7).unwrap();
        assert!(a2.validate().is_valid());
        assert_eq!(a2.field(), Field::Prime(7));
    }
}
