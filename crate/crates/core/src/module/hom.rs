use std::sync::Arc;

use crate::algebra::Algebra;
use crate::linalg::{kernel_sparse, Field, sparse_from_dense, Kernel, Matrix, Scalar, SparseMatrix};

use super::RightModule;

/// `Hom_A(M, N)` for right modules, as the kernel of the intertwining system.
///
/// A map is an `n x m` matrix, vectorised row-major: entry `(p, q)` sits at
/// index `p * m + q`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    field: Field,
    source_dim: usize,
    target_dim: usize,
    kernel: Kernel,
    basis: Vec<Matrix>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// Coordinates of `phi` in [`HomSpace::basis`], `None` when `phi` is not
    /// a homomorphism.
    pub fn coords(&self, phi: &Matrix) -> Option<Vec<Scalar>> {
        let flat = phi.to_vec();
        let c = self.kernel.coords(&flat);
        (self.kernel.combine(&c) == flat).then_some(c)
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> Matrix {
        Matrix::from_vec(self.field, self.target_dim, self.source_dim, self.kernel.combine(coeffs))
    }
}

/// All linear maps `phi: M -> N` with `phi R^M_a = R^N_a phi` for `a` running
/// over algebra generators.
pub fn hom_space(source: &RightModule, target: &RightModule) -> HomSpace {
    let field = source.field();
    let (m, n) = (source.dim(), target.dim());
    let gens = source.algebra().generator_indices();
    let mut triples = Vec::new();
    let mut row = 0;
    for &g in &gens {
        let (rm, rn) = (&source.action()[g], &target.action()[g]);
        // (phi rm - rn phi)_{pq} = sum_r phi_{pr} rm_{rq} - sum_r rn_{pr} phi_{rq}
        for p in 0..n {
            for q in 0..m {
                for r in 0..m {
                    let x = rm.get(r, q);
                    if !x.is_zero() {
                        triples.push((row, p * m + r, x.clone()));
                    }
                }
                for r in 0..n {
                    let x = rn.get(p, r);
                    if !x.is_zero() {
                        triples.push((row, r * m + q, x.neg()));
                    }
                }
                row += 1;
            }
        }
    }
    let sys = SparseMatrix::from_triples(field, row, n * m, triples);
    let kernel = kernel_sparse(&sys);
    let basis = kernel
        .dense_vectors()
        .into_iter()
        .map(|v| Matrix::from_vec(field, n, m, v))
        .collect();
    HomSpace { field, source_dim: m, target_dim: n, kernel, basis }
}

/// `End_A(M)` with product `phi psi = phi . psi`, on the basis of
/// [`hom_space`]`(M, M)`.
pub fn end_algebra(module: &RightModule) -> (Arc<Algebra>, HomSpace) {
    let field = module.field();
    let hom = hom_space(module, module);
    let d = hom.dim();
    let mut table = Vec::with_capacity(d * d);
    for x in hom.basis() {
        for y in hom.basis() {
            let c = hom.coords(&x.mul(y)).expect("composition of homomorphisms");
            table.push(sparse_from_dense(&c));
        }
    }
    let unit = if d == 0 {
        Vec::new()
    } else {
        hom.coords(&Matrix::identity(field, module.dim())).expect("identity")
    };
    let labels = (0..d).map(|i| format!("f{i}")).collect();
    let alg = Algebra::from_table_unchecked(field, labels, table, unit);
    debug_assert!(alg.validate().is_valid());
    (Arc::new(alg), hom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::*;
    use crate::linalg::Field;

    #[test]
    fn hom_from_regular_is_the_module() {
        let q = Field::Rational;
        for alg in [dual_numbers(q), full_matrix(q, 2), path_algebra_a2(q)] {
            let a = Arc::new(alg);
            let reg = RightModule::regular(a.clone());
            let free = RightModule::free(a.clone(), 2);
            assert_eq!(hom_space(&reg, &free).dim(), free.dim());
            // End of A_A is A acting by left multiplication.
            let (end, _) = end_algebra(&reg);
            assert_eq!(end.dim(), a.dim());
        }
    }

    #[test]
    fn coords_reject_non_homomorphisms() {
        let q = Field::Rational;
        let a = Arc::new(dual_numbers(q));
        let reg = RightModule::regular(a);
        let h = hom_space(&reg, &reg);
        let bad = Matrix::from_i64(q, &[&[1, 0], &[0, 0]]);
        assert!(h.coords(&bad).is_none());
        let good = Matrix::from_i64(q, &[&[0, 0], &[1, 0]]);
        let c = h.coords(&good).unwrap();
        assert_eq!(h.combine(&c), good);
    }

    #[test]
    fn matrix_algebra_simple_module() {
        let q = Field::Rational;
        let a = Arc::new(full_matrix(q, 2));
        let reg = RightModule::regular(a.clone());
        // Row space E11 A is simple; End is one dimensional.
        let row = a.right_ideal(&[a.basis_vector(0)]);
        let s = reg.submodule(&row).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(end_algebra(&s).0.dim(), 1);
        assert_eq!(hom_space(&s, &reg).dim(), 2);
    }
}
