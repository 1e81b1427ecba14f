use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{kernel_sparse, solve_linear, Matrix, Scalar, SparseMatrix, Subspace};
use crate::module::{tensor_over, LeftModule, RightModule, TensorProduct};

/// `S (x)_R S` with its `S`-invariants and the multiplication map, for a
/// unital subalgebra `R` of `S` given as a subspace.
struct Enveloping {
    tensor: TensorProduct,
    /// Columns span `{m : s m = m s}` in the coordinates of the quotient.
    invariants: Matrix,
    /// `mu : S (x)_R S -> S` on the quotient.
    mu: Matrix,
}

fn enveloping(s: &Arc<Algebra>, r: &Subspace) -> Result<Enveloping> {
    let field = s.field();
    let d = s.dim();
    let ring = Arc::new(s.subalgebra(r, s.unit())?);
    let basis = r.basis();
    let right = RightModule::new(ring.clone(), d, basis.iter().map(|x| s.right_mult(x)).collect())?;
    let left = LeftModule::new(ring, d, basis.iter().map(|x| s.left_mult(x)).collect())?;
    let tensor = tensor_over(&right, &left);
    let t = tensor.dim();
    let id = Matrix::identity(field, d);
    let mut triples = Vec::new();
    for i in 0..d {
        let b = s.basis_vector(i);
        let diff = tensor.induced(&s.left_mult(&b), &id).sub(&tensor.induced(&id, &s.right_mult(&b)));
        for row in 0..t {
            for col in 0..t {
                let v = diff.get(row, col);
                if !v.is_zero() {
                    triples.push((i * t + row, col, v.clone()));
                }
            }
        }
    }
    let k = kernel_sparse(&SparseMatrix::from_triples(field, d * t, t, triples));
    let invariants = Matrix::from_cols(field, t, &k.dense_vectors());
    // u_q (x) v_r -> b_q b_r, then along the section of the quotient.
    let full = Matrix::from_fn(field, d, d * d, |k, c| {
        let (q, r) = (c / d, c % d);
        s.product(q, r).iter().find(|(i, _)| *i == k).map_or(field.zero(), |(_, x)| x.clone())
    });
    let mu = full.mul(&tensor.quotient().section_matrix());
    Ok(Enveloping { tensor, invariants, mu })
}

/// `theta(S/R)`, the image of the `S`-invariants of `S (x)_R S` under
/// multiplication.
#[derive(Clone, Debug)]
pub struct DifferentReport {
    pub tensor_dim: usize,
    pub invariants_dim: usize,
    pub theta: Subspace,
    pub is_ideal: bool,
}

pub fn noether_different(s: &Arc<Algebra>, r: &Subspace) -> Result<DifferentReport> {
    if !s.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let env = enveloping(s, r)?;
    let image = env.mu.mul(&env.invariants);
    let theta = Subspace::column_space(&image);
    Ok(DifferentReport {
        tensor_dim: env.tensor.dim(),
        invariants_dim: env.invariants.cols(),
        is_ideal: s.is_two_sided_ideal(&theta),
        theta,
    })
}

/// Whether `mu : S (x)_R S -> S` splits as a map of `S`-bimodules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparabilityReport {
    pub separable: bool,
    /// The image of `1` under a splitting, in the coordinates of the tensor
    /// product.
    pub witness: Option<Vec<Scalar>>,
    /// For commutative `S`: whether `theta(S/R)` equals the centre.
    pub theta_is_centre: Option<bool>,
}

impl SeparabilityReport {
    pub fn consistent(&self) -> bool {
        self.theta_is_centre.map_or(true, |t| t == self.separable)
    }
}

/// A bimodule splitting is determined by the image `w` of `1`, which must be
/// `S`-invariant with `mu(w) = 1`.
pub fn separability_check(s: &Arc<Algebra>, r: &Subspace) -> Result<SeparabilityReport> {
    let env = enveloping(s, r)?;
    let restricted = env.mu.mul(&env.invariants);
    let witness = solve_linear(&restricted, s.unit())?.map(|c| env.invariants.mul_vec(&c));
    let theta_is_centre = if s.is_commutative() {
        let theta = noether_different(s, r)?.theta;
        let centre = s.centre();
        Some(theta.dim() == centre.dim() && centre.contains_subspace(&theta))
    } else {
        None
    };
    Ok(SeparabilityReport { separable: witness.is_some(), witness, theta_is_centre })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::*;
    use crate::linalg::Field;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn full_subring_is_separable() {
        let s = Arc::new(truncated_polynomial(q(), 3, "x"));
        let all = Subspace::full(q(), 3);
        let d = noether_different(&s, &all).unwrap();
        assert_eq!(d.theta.dim(), 3);
        let sep = separability_check(&s, &all).unwrap();
        assert!(sep.separable && sep.consistent());
    }

    #[test]
    fn split_algebra_over_the_ground_field() {
        let s = Arc::new(product_of_fields(q(), 3));
        let r = Subspace::span(q(), 3, [s.unit().to_vec()]);
        let d = noether_different(&s, &r).unwrap();
        assert_eq!((d.tensor_dim, d.invariants_dim, d.theta.dim()), (9, 3, 3));
        let sep = separability_check(&s, &r).unwrap();
        assert!(sep.separable && sep.consistent());
    }

    #[test]
    fn cubic_over_even_part() {
        let s = Arc::new(truncated_polynomial(q(), 3, "x"));
        let r = Subspace::span(q(), 3, [s.basis_vector(0), s.basis_vector(2)]);
        let d = noether_different(&s, &r).unwrap();
        // S = R + Rx with Rx = R/(x^2), so S (x)_R S = S + S/(x^2).
        assert_eq!(d.tensor_dim, 5);
        assert!(d.is_ideal);
        // The invariants a (x) 1 + b (x) x need a = xb + c x^2; they map onto
        // the span of 2x and x^2.
        assert_eq!(d.invariants_dim, 3);
        assert_eq!(d.theta, s.two_sided_ideal(&[s.basis_vector(1)]));
        let sep = separability_check(&s, &r).unwrap();
        assert!(!sep.separable && sep.consistent());
    }

    #[test]
    fn noncommutative_input() {
        let s = Arc::new(full_matrix(q(), 2));
        let r = Subspace::span(q(), 4, [s.unit().to_vec()]);
        assert!(matches!(noether_different(&s, &r), Err(Error::NotCommutative)));
        // M_2 is separable over the ground field.
        let sep = separability_check(&s, &r).unwrap();
        assert!(sep.separable && sep.theta_is_centre.is_none());
    }
}
