use crate::linalg::{Matrix, Quotient, Scalar, SparseVec, Subspace};

use super::{Bimodule, LeftModule, RightModule};

/// `M (x)_A N` as a quotient of `M (x) N`; the pure tensor of basis vectors
/// `u_q (x) v_s` has index `q * dim N + s`.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    quotient: Quotient,
    m: usize,
    n: usize,
}

impl TensorProduct {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    pub fn factor_dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    /// Class of `u (x) v`.
    pub fn class_of(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let field = self.quotient.field();
        let mut w = vec![field.zero(); self.m * self.n];
        for (q, x) in u.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (s, y) in v.iter().enumerate() {
                if !y.is_zero() {
                    w[q * self.n + s] = x.mul(y);
                }
            }
        }
        self.quotient.project(&w)
    }

    /// The map induced on the quotient by `f (x) g`.
    pub fn induced(&self, f: &Matrix, g: &Matrix) -> Matrix {
        self.quotient.induced(&f.kron(g))
    }
}

fn tensor_relations(field: crate::linalg::Field, right: &[Matrix], left: &[Matrix], gens: &[usize], m: usize, n: usize) -> Subspace {
    // Relations u a (x) v - u (x) a v for generators a and basis vectors u, v.
    let mut rels: Vec<SparseVec> = Vec::new();
    for &g in gens {
        let (r, l) = (&right[g], &left[g]);
        for q in 0..m {
            for s in 0..n {
                let mut v = vec![field.zero(); m * n];
                for p in 0..m {
                    let x = r.get(p, q);
                    if !x.is_zero() {
                        v[p * n + s] = v[p * n + s].add(x);
                    }
                }
                for t in 0..n {
                    let x = l.get(t, s);
                    if !x.is_zero() {
                        v[q * n + t] = v[q * n + t].sub(x);
                    }
                }
                rels.push(crate::linalg::sparse_from_dense(&v));
            }
        }
    }
    Subspace::span_sparse(field, m * n, rels)
}

/// `M (x)_A N` for a right module `M` and a left module `N` over the same
/// algebra.
pub fn tensor_over(m: &RightModule, n: &LeftModule) -> TensorProduct {
    assert_eq!(**m.algebra(), **n.algebra(), "tensor over different algebras");
    let gens = m.algebra().generator_indices();
    let rel = tensor_relations(m.field(), m.action(), n.action(), &gens, m.dim(), n.dim());
    TensorProduct { quotient: Quotient::new(rel), m: m.dim(), n: n.dim() }
}

/// `M (x)_A N` for a `(B, A)`-bimodule `M` and an `(A, C)`-bimodule `N`,
/// with its induced `(B, C)`-bimodule structure.
pub fn tensor_bimodules(m: &Bimodule, n: &Bimodule) -> (TensorProduct, Bimodule) {
    let t = tensor_over(&m.right_part(), &n.left_part());
    let field = m.field();
    let id_m = Matrix::identity(field, m.dim());
    let id_n = Matrix::identity(field, n.dim());
    let left = m.left_action().iter().map(|l| t.induced(l, &id_n)).collect();
    let right = n.right_action().iter().map(|r| t.induced(&id_m, r)).collect();
    let b = Bimodule::new_unchecked(
        m.left_algebra().clone(),
        n.right_algebra().clone(),
        t.dim(),
        left,
        right,
    );
    (t, b)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::catalog::*;
    use crate::linalg::Field;

    #[test]
    fn tensor_with_regular_is_identity() {
        let q = Field::Rational;
        let a = Arc::new(path_algebra_a2(q));
        let reg = Bimodule::regular(a.clone());
        let (t, b) = tensor_bimodules(&reg, &reg);
        assert_eq!(t.dim(), 3);
        assert!(Bimodule::new(
            b.left_algebra().clone(),
            b.right_algebra().clone(),
            b.dim(),
            b.left_action().to_vec(),
            b.right_action().to_vec()
        )
        .is_ok());
    }

    #[test]
    fn simple_tensor_simple() {
        // k (x)_{k[x]/x^2} k = k.
        let q = Field::Rational;
        let a = Arc::new(dual_numbers(q));
        let rad = a.two_sided_ideal(&[a.basis_vector(1)]);
        let s = RightModule::cyclic_quotient(a.clone(), &rad).unwrap();
        let sl = LeftModule::regular(a).quotient(&rad).unwrap();
        assert_eq!(tensor_over(&s, &sl).dim(), 1);
    }

    #[test]
    fn matrix_row_times_column() {
        // E11 M2 (x)_{M2} M2 E11 is one dimensional.
        let q = Field::Rational;
        let a = Arc::new(full_matrix(q, 2));
        let row = a.right_ideal(&[a.basis_vector(0)]);
        let col = a.left_ideal(&[a.basis_vector(0)]);
        let r = RightModule::regular(a.clone()).submodule(&row).unwrap();
        let l = LeftModule::regular(a.clone()).as_right_op().submodule(&col).unwrap().as_left_op();
        let l = LeftModule::new(a, l.dim(), l.action().to_vec()).unwrap();
        assert_eq!(tensor_over(&r, &l).dim(), 1);
    }
}
