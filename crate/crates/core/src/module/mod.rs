//! Modules and bimodules over finite-dimensional algebras, given by action
//! matrices on column vectors.
//!
//! Right action convention: the matrix `R_i` sends `v` to `v b_i`. Acting by
//! `b_i` and then by `b_j` is `R_j R_i`, so the relation is
//! `R_j R_i = sum_k c[i][j][k] R_k`; see [`RIGHT_ACTION_ORDER`]. A left action
//! `L_i : v -> b_i v` satisfies `L_i L_j = sum_k c[i][j][k] L_k`.

mod hom;
mod props;
mod tensor;

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar, Subspace};

pub use hom::{end_algebra, hom_space, HomSpace};
pub use props::{
    free_cover, is_generator, is_projective, norm_and_stable_end, trace_ideal, FreeCover, NormData,
    ProjectivityWitness,
};
pub use tensor::{tensor_bimodules, tensor_over, TensorProduct};

/// The product order used by right action matrices: `R_j R_i` represents
/// `b_i b_j`.
pub const RIGHT_ACTION_ORDER: &str = "R_j R_i = sum_k c[i][j][k] R_k";

fn action_combination(field: Field, dim: usize, action: &[Matrix], x: &[Scalar]) -> Matrix {
    let mut out = Matrix::zeros(field, dim, dim);
    for (c, m) in x.iter().zip(action) {
        if !c.is_zero() {
            out = out.add(&m.scale(c));
        }
    }
    out
}

fn check_action(algebra: &Algebra, dim: usize, action: &[Matrix], right: bool) -> Result<()> {
    let field = algebra.field();
    if action.len() != algebra.dim() {
        return Err(Error::InvalidModule(format!(
            "expected {} action matrices, found {}",
            algebra.dim(),
            action.len()
        )));
    }
    for (i, m) in action.iter().enumerate() {
        if m.rows() != dim || m.cols() != dim || m.field() != field {
            return Err(Error::InvalidModule(format!("action matrix {i} has the wrong shape")));
        }
    }
    if action_combination(field, dim, action, algebra.unit()) != Matrix::identity(field, dim) {
        return Err(Error::InvalidModule("the unit does not act as the identity".into()));
    }
    for i in 0..algebra.dim() {
        for j in 0..algebra.dim() {
            let lhs = if right { action[j].mul(&action[i]) } else { action[i].mul(&action[j]) };
            let prod = crate::linalg::sparse_to_dense(field, algebra.dim(), algebra.product(i, j));
            if lhs != action_combination(field, dim, action, &prod) {
                return Err(Error::InvalidModule(format!(
                    "action does not respect the product of basis elements {i} and {j}"
                )));
            }
        }
    }
    Ok(())
}

/// A finite-dimensional right module.
#[derive(Clone, Debug, PartialEq)]
pub struct RightModule {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl RightModule {
    pub fn new(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        check_action(&algebra, dim, &action, true)?;
        Ok(RightModule { algebra, dim, action })
    }

    pub(crate) fn new_unchecked(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Self {
        debug_assert!(check_action(&algebra, dim, &action, true).is_ok());
        RightModule { algebra, dim, action }
    }

    /// `A_A`, with `R_i` the right multiplication by `b_i`.
    pub fn regular(algebra: Arc<Algebra>) -> Self {
        let action = (0..algebra.dim()).map(|i| algebra.right_mult(&algebra.basis_vector(i))).collect();
        RightModule { dim: algebra.dim(), algebra, action }
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let field = algebra.field();
        let action = (0..algebra.dim()).map(|_| Matrix::zeros(field, 0, 0)).collect();
        RightModule { algebra, dim: 0, action }
    }

    /// `A^r`.
    pub fn free(algebra: Arc<Algebra>, r: usize) -> Self {
        let reg = Self::regular(algebra.clone());
        (0..r).fold(Self::zero(algebra), |acc, _| acc.direct_sum(&reg))
    }

    /// `A / I` for a right ideal `I` (in particular a two-sided one).
    pub fn cyclic_quotient(algebra: Arc<Algebra>, ideal: &Subspace) -> Result<Self> {
        Self::regular(algebra).quotient(ideal)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// Matrix of `v -> v x`.
    pub fn action_of(&self, x: &[Scalar]) -> Matrix {
        action_combination(self.field(), self.dim, &self.action, x)
    }

    pub fn act(&self, v: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        self.action_of(x).mul_vec(v)
    }

    pub fn direct_sum(&self, other: &RightModule) -> RightModule {
        assert!(Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra);
        let field = self.field();
        let (m, n) = (self.dim, other.dim);
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                Matrix::from_fn(field, m + n, m + n, |r, c| match (r < m, c < m) {
                    (true, true) => a.get(r, c).clone(),
                    (false, false) => b.get(r - m, c - m).clone(),
                    _ => field.zero(),
                })
            })
            .collect();
        RightModule { algebra: self.algebra.clone(), dim: m + n, action }
    }

    /// The submodule generated by `vs`: the span of all `v b_i`.
    pub fn generated_by(&self, vs: &[Vec<Scalar>]) -> Subspace {
        let images = vs.iter().flat_map(|v| self.action.iter().map(move |r| r.mul_vec(v)));
        Subspace::span(self.field(), self.dim, images)
    }

    pub fn is_submodule(&self, sub: &Subspace) -> bool {
        sub.basis().iter().all(|v| self.action.iter().all(|r| sub.contains(&r.mul_vec(v))))
    }

    /// The submodule `sub` on its stored basis.
    pub fn submodule(&self, sub: &Subspace) -> Result<RightModule> {
        if !self.is_submodule(sub) {
            return Err(Error::InvalidModule("subspace is not a submodule".into()));
        }
        let basis = sub.basis();
        let field = self.field();
        let action = self
            .action
            .iter()
            .map(|r| {
                let cols: Vec<Vec<Scalar>> =
                    basis.iter().map(|v| sub.coords(&r.mul_vec(v)).expect("closed")).collect();
                Matrix::from_cols(field, sub.dim(), &cols)
            })
            .collect();
        Ok(RightModule { algebra: self.algebra.clone(), dim: sub.dim(), action })
    }

    /// The quotient by a submodule, on the complement basis.
    pub fn quotient(&self, sub: &Subspace) -> Result<RightModule> {
        if !self.is_submodule(sub) {
            return Err(Error::InvalidModule("subspace is not a submodule".into()));
        }
        let q = crate::linalg::Quotient::new(sub.clone());
        let action = self.action.iter().map(|r| q.induced(r)).collect();
        Ok(RightModule { algebra: self.algebra.clone(), dim: q.dim(), action })
    }

    /// Restriction of scalars along an algebra map `phi: A' -> A`, given as
    /// the `dim A x dim A'` matrix of images of the basis of `A'`.
    pub fn restrict(&self, source: Arc<Algebra>, phi: &Matrix) -> Result<RightModule> {
        let action = (0..source.dim()).map(|j| self.action_of(&phi.col(j))).collect();
        RightModule::new(source, self.dim, action)
    }

    /// The same data as a left module over the opposite algebra.
    pub fn as_left_op(&self) -> LeftModule {
        LeftModule {
            algebra: Arc::new(self.algebra.opposite()),
            dim: self.dim,
            action: self.action.clone(),
        }
    }
}

/// A finite-dimensional left module; `L_i : v -> b_i v`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeftModule {
    algebra: Arc<Algebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl LeftModule {
    pub fn new(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        check_action(&algebra, dim, &action, false)?;
        Ok(LeftModule { algebra, dim, action })
    }

    pub(crate) fn new_unchecked(algebra: Arc<Algebra>, dim: usize, action: Vec<Matrix>) -> Self {
        debug_assert!(check_action(&algebra, dim, &action, false).is_ok());
        LeftModule { algebra, dim, action }
    }

    pub fn regular(algebra: Arc<Algebra>) -> Self {
        let action = (0..algebra.dim()).map(|i| algebra.left_mult(&algebra.basis_vector(i))).collect();
        LeftModule { dim: algebra.dim(), algebra, action }
    }

    pub fn zero(algebra: Arc<Algebra>) -> Self {
        let field = algebra.field();
        let action = (0..algebra.dim()).map(|_| Matrix::zeros(field, 0, 0)).collect();
        LeftModule { algebra, dim: 0, action }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn action_of(&self, x: &[Scalar]) -> Matrix {
        action_combination(self.field(), self.dim, &self.action, x)
    }

    /// The same data as a right module over the opposite algebra.
    pub fn as_right_op(&self) -> RightModule {
        RightModule {
            algebra: Arc::new(self.algebra.opposite()),
            dim: self.dim,
            action: self.action.clone(),
        }
    }

    /// As [`RightModule::as_left_op`] but reusing an already built opposite
    /// algebra.
    pub fn as_right_over(&self, opposite: Arc<Algebra>) -> RightModule {
        debug_assert_eq!(*opposite, self.algebra.opposite());
        RightModule { algebra: opposite, dim: self.dim, action: self.action.clone() }
    }

    pub fn is_submodule(&self, sub: &Subspace) -> bool {
        sub.basis().iter().all(|v| self.action.iter().all(|l| sub.contains(&l.mul_vec(v))))
    }

    pub fn quotient(&self, sub: &Subspace) -> Result<LeftModule> {
        if !self.is_submodule(sub) {
            return Err(Error::InvalidModule("subspace is not a submodule".into()));
        }
        let q = crate::linalg::Quotient::new(sub.clone());
        let action = self.action.iter().map(|l| q.induced(l)).collect();
        Ok(LeftModule { algebra: self.algebra.clone(), dim: q.dim(), action })
    }
}

/// A `(B, A)`-bimodule: left `B`-action and right `A`-action commuting with
/// each other.
#[derive(Clone, Debug, PartialEq)]
pub struct Bimodule {
    left: Arc<Algebra>,
    right: Arc<Algebra>,
    dim: usize,
    left_action: Vec<Matrix>,
    right_action: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(
        left: Arc<Algebra>,
        right: Arc<Algebra>,
        dim: usize,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
    ) -> Result<Self> {
        check_action(&left, dim, &left_action, false)?;
        check_action(&right, dim, &right_action, true)?;
        for (i, l) in left_action.iter().enumerate() {
            for (j, r) in right_action.iter().enumerate() {
                if l.mul(r) != r.mul(l) {
                    return Err(Error::InvalidModule(format!(
                        "left action of {i} and right action of {j} do not commute"
                    )));
                }
            }
        }
        Ok(Bimodule { left, right, dim, left_action, right_action })
    }

    pub(crate) fn new_unchecked(
        left: Arc<Algebra>,
        right: Arc<Algebra>,
        dim: usize,
        left_action: Vec<Matrix>,
        right_action: Vec<Matrix>,
    ) -> Self {
        Bimodule { left, right, dim, left_action, right_action }
    }

    /// `A` as an `(A, A)`-bimodule.
    pub fn regular(algebra: Arc<Algebra>) -> Self {
        let l = LeftModule::regular(algebra.clone());
        let r = RightModule::regular(algebra.clone());
        Bimodule {
            left: algebra.clone(),
            right: algebra,
            dim: l.dim,
            left_action: l.action,
            right_action: r.action,
        }
    }

    pub fn left_algebra(&self) -> &Arc<Algebra> {
        &self.left
    }

    pub fn right_algebra(&self) -> &Arc<Algebra> {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.right.field()
    }

    pub fn left_action(&self) -> &[Matrix] {
        &self.left_action
    }

    pub fn right_action(&self) -> &[Matrix] {
        &self.right_action
    }

    pub fn left_action_of(&self, x: &[Scalar]) -> Matrix {
        action_combination(self.field(), self.dim, &self.left_action, x)
    }

    pub fn right_action_of(&self, x: &[Scalar]) -> Matrix {
        action_combination(self.field(), self.dim, &self.right_action, x)
    }

    pub fn right_part(&self) -> RightModule {
        RightModule { algebra: self.right.clone(), dim: self.dim, action: self.right_action.clone() }
    }

    pub fn left_part(&self) -> LeftModule {
        LeftModule { algebra: self.left.clone(), dim: self.dim, action: self.left_action.clone() }
    }

    /// The right module over `B^op ⊗ A` with `m (b ⊗ a) = b m a`; the basis
    /// element `b_i ⊗ a_j` has index `i * dim A + j`.
    pub fn as_right_module(&self, enveloping: Arc<Algebra>) -> RightModule {
        debug_assert_eq!(enveloping.dim(), self.left.dim() * self.right.dim());
        let mut action = Vec::with_capacity(enveloping.dim());
        for l in &self.left_action {
            for r in &self.right_action {
                action.push(l.mul(r));
            }
        }
        RightModule::new_unchecked(enveloping, self.dim, action)
    }

    /// Restricts both actions to subspace `sub`, which must be stable under
    /// them.
    pub fn subbimodule(&self, sub: &Subspace) -> Result<Bimodule> {
        let l = self.left_part().as_right_op();
        let r = self.right_part();
        if !r.is_submodule(sub) || !l.is_submodule(sub) {
            return Err(Error::InvalidModule("subspace is not a sub-bimodule".into()));
        }
        let restrict = |ms: &[Matrix]| -> Vec<Matrix> {
            let basis = sub.basis();
            ms.iter()
                .map(|m| {
                    let cols: Vec<Vec<Scalar>> =
                        basis.iter().map(|v| sub.coords(&m.mul_vec(v)).expect("stable")).collect();
                    Matrix::from_cols(self.field(), sub.dim(), &cols)
                })
                .collect()
        };
        Ok(Bimodule {
            left: self.left.clone(),
            right: self.right.clone(),
            dim: sub.dim(),
            left_action: restrict(&self.left_action),
            right_action: restrict(&self.right_action),
        })
    }
}

/// A module homomorphism, as a `dim target x dim source` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap {
    matrix: Matrix,
}

impl ModuleMap {
    pub fn new(source: &RightModule, target: &RightModule, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::InvalidModule("map has the wrong shape".into()));
        }
        for (rm, rn) in source.action().iter().zip(target.action()) {
            if matrix.mul(rm) != rn.mul(&matrix) {
                return Err(Error::InvalidModule("map does not intertwine the actions".into()));
            }
        }
        Ok(ModuleMap { matrix })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn action_convention_regression() {
        // Upper triangular E11, E12, E22: E11 E12 = E12, E12 E11 = 0.
        let a = Arc::new(upper_triangular(q(), 2));
        let m = RightModule::regular(a.clone());
        let (r11, r12) = (&m.action()[0], &m.action()[1]);
        // Acting by E11 then by E12 is the action of E11 E12 = E12.
        assert_eq!(r12.mul(r11), *r12);
        assert!(r11.mul(r12).is_zero());
        assert_eq!(RIGHT_ACTION_ORDER, "R_j R_i = sum_k c[i][j][k] R_k");
        let bad = vec![r12.clone(), r11.clone(), m.action()[2].clone()];
        assert!(RightModule::new(a, 3, bad).is_err());
    }

    #[test]
    fn regular_modules_are_valid() {
        for alg in [dual_numbers(q()), full_matrix(q(), 2), upper_triangular(q(), 2)] {
            let a = Arc::new(alg);
            let r = RightModule::regular(a.clone());
            assert!(RightModule::new(a.clone(), r.dim(), r.action().to_vec()).is_ok());
            let l = LeftModule::regular(a.clone());
            assert!(LeftModule::new(a.clone(), l.dim(), l.action().to_vec()).is_ok());
            let b = Bimodule::regular(a.clone());
            let env = Arc::new(a.enveloping());
            let rm = b.as_right_module(env.clone());
            assert!(RightModule::new(env, rm.dim(), rm.action().to_vec()).is_ok());
        }
    }

    #[test]
    fn quotient_and_free() {
        let a = Arc::new(dual_numbers(q()));
        let rad = a.two_sided_ideal(&[a.basis_vector(1)]);
        let s = RightModule::cyclic_quotient(a.clone(), &rad).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.action()[1].is_zero());
        assert_eq!(RightModule::free(a.clone(), 3).dim(), 6);
        let l = RightModule::regular(a).as_left_op().as_right_op();
        assert_eq!(l.dim(), 2);
    }
}
