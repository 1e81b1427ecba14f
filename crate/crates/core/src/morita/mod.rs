//! Morita contexts: an algebra `C` with an idempotent `e`, seen as the
//! matrix ring
//!
//! ```text
//! ( B  M )     B = e'Ce', M = e'Ce
//! ( N  A )     N = eCe',  A = eCe
//! ```
//!
//! The context keeps `C` on a basis adapted to this pattern, so each summand
//! is a block of coordinates.

mod auslander;
mod checks;
mod classify;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Idempotent, Piece, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Matrix, Scalar, Subspace};
use crate::module::{hom_space, tensor_over, Bimodule, HomSpace, LeftModule, RightModule, TensorProduct};

pub use auslander::{
    auslander_context, gldim_spot_check, verify_grade_theorem, AuslanderContext, GldimCheck,
    GradeTheoremReport,
};
pub use checks::{
    ext_shift_check, morita_package, tor_corner_check, ExtShiftReport, MoritaPackage, TorCornerReport,
};
pub(crate) use checks::bijective_into;
pub use classify::{classify, classify_context, wedderburn_projective, ContextReport, WedderburnProjective};

/// A Morita context on the adapted basis `[B | M | N | A]`.
#[derive(Clone, Debug)]
pub struct MoritaContext {
    c: Arc<Algebra>,
    /// Columns: the adapted basis in the coordinates of the algebra that was
    /// passed in.
    basis_change: Matrix,
    e: Vec<Scalar>,
    e_prime: Vec<Scalar>,
    dims: [usize; 4],
    a: Arc<Algebra>,
    b: Arc<Algebra>,
}

/// The exact sequence `0 -> Omega -> Ce (x)_A eC -> C -> C/CeC -> 0`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FundamentalSequence {
    pub dim_omega: usize,
    pub dim_tensor: usize,
    pub dim_c: usize,
    pub dim_cbar: usize,
    pub rank_mu: usize,
    /// The image of the multiplication map is the ideal `CeC`.
    pub image_is_ideal: bool,
    /// The alternating sum of dimensions vanishes and `mu` kills `Omega`.
    pub exact: bool,
    /// `e Omega = 0 = Omega e`.
    pub annihilated_by_e: bool,
    /// `dim ker f` and `dim coker f` for `f : M (x)_A N -> B`.
    pub f_kernel_dim: usize,
    pub f_cokernel_dim: usize,
}

impl FundamentalSequence {
    /// Exactness together with the matching of the corner sequence
    /// `0 -> Omega -> M (x)_A N -> B -> C/CeC -> 0`.
    pub fn holds(&self) -> bool {
        self.exact
            && self.image_is_ideal
            && self.annihilated_by_e
            && self.f_kernel_dim == self.dim_omega
            && self.f_cokernel_dim == self.dim_cbar
    }
}

/// The map `alpha_C : C -> End_A(Ce)` given by left multiplication.
#[derive(Clone, Debug)]
pub struct AlphaMap {
    /// `dim End_A(Ce) x dim C`.
    pub matrix: Matrix,
    pub rank: usize,
    pub injective: bool,
    pub bijective: bool,
}

impl MoritaContext {
    pub fn new(c: &Algebra, e: &Idempotent) -> Result<Self> {
        let pierce = c.pierce(e)?;
        let p = pierce.adapted_basis();
        let dims = Piece::ALL.map(|piece| pierce.dim(piece));
        let labels: Vec<String> = p
            .col_vectors()
            .iter()
            .enumerate()
            .map(|(k, col)| {
                let nz: Vec<usize> = (0..col.len()).filter(|&i| !col[i].is_zero()).collect();
                match nz.as_slice() {
                    [i] if col[*i].is_one() => c.labels()[*i].clone(),
                    _ => format!("v{k}"),
                }
            })
            .collect();
        let rebased = c.change_basis(&p, labels)?;
        let inv = p.inverse().ok_or(Error::SingularBasisChange)?;
        let ev = inv.mul_vec(e.coeffs());
        let field = c.field();
        let epv: Vec<Scalar> =
            rebased.unit().iter().zip(&ev).map(|(u, x)| u.sub(x)).collect();
        let mut ctx = MoritaContext {
            c: Arc::new(rebased),
            basis_change: p,
            e: ev,
            e_prime: epv,
            dims,
            a: Arc::new(Algebra::zero(field)),
            b: Arc::new(Algebra::zero(field)),
        };
        let a_space = ctx.coordinate_space(&[Piece::A]);
        let b_space = ctx.coordinate_space(&[Piece::B]);
        ctx.a = Arc::new(ctx.c.subalgebra(&a_space, &ctx.e)?);
        ctx.b = Arc::new(ctx.c.subalgebra(&b_space, &ctx.e_prime)?);
        Ok(ctx)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.c
    }

    pub fn basis_change(&self) -> &Matrix {
        &self.basis_change
    }

    pub fn e(&self) -> &[Scalar] {
        &self.e
    }

    pub fn e_prime(&self) -> &[Scalar] {
        &self.e_prime
    }

    pub fn dim(&self, p: Piece) -> usize {
        self.dims[p as usize]
    }

    /// Coordinates of summand `p` in the adapted basis.
    pub fn indices(&self, p: Piece) -> Vec<usize> {
        let start: usize = self.dims[..p as usize].iter().sum();
        (start..start + self.dims[p as usize]).collect()
    }

    fn indices_of(&self, pieces: &[Piece]) -> Vec<usize> {
        pieces.iter().flat_map(|p| self.indices(*p)).collect()
    }

    fn coordinate_space(&self, pieces: &[Piece]) -> Subspace {
        let field = self.c.field();
        let d = self.c.dim();
        Subspace::span(
            field,
            d,
            self.indices_of(pieces).into_iter().map(|i| {
                let mut v = vec![field.zero(); d];
                v[i] = field.one();
                v
            }),
        )
    }

    /// `A = eCe` on the basis of the `A` block.
    pub fn corner_a(&self) -> &Arc<Algebra> {
        &self.a
    }

    /// `B = e'Ce'` on the basis of the `B` block.
    pub fn corner_b(&self) -> &Arc<Algebra> {
        &self.b
    }

    /// Embeds block coordinates of summand `p` into `C`.
    pub fn embed(&self, p: Piece, x: &[Scalar]) -> Vec<Scalar> {
        let mut v = self.c.zero_vector();
        for (i, k) in self.indices(p).into_iter().enumerate() {
            v[k] = x[i].clone();
        }
        v
    }

    fn block(&self, m: &Matrix, rows: &[Piece], cols: &[Piece]) -> Matrix {
        m.select_rows(&self.indices_of(rows)).select_cols(&self.indices_of(cols))
    }

    fn left_block(&self, x_piece: Piece, i: usize, on: &[Piece], to: &[Piece]) -> Matrix {
        let x = self.c.basis_vector(self.indices(x_piece)[i]);
        self.block(&self.c.left_mult(&x), to, on)
    }

    fn right_block(&self, x_piece: Piece, i: usize, on: &[Piece], to: &[Piece]) -> Matrix {
        let x = self.c.basis_vector(self.indices(x_piece)[i]);
        self.block(&self.c.right_mult(&x), to, on)
    }

    fn corner_actions(&self, corner: Piece, on: &[Piece], left: bool) -> Vec<Matrix> {
        (0..self.dim(corner))
            .map(|i| {
                if left {
                    self.left_block(corner, i, on, on)
                } else {
                    self.right_block(corner, i, on, on)
                }
            })
            .collect()
    }

    fn c_actions(&self, on: &[Piece], left: bool) -> Vec<Matrix> {
        (0..self.c.dim())
            .map(|i| {
                let x = self.c.basis_vector(i);
                let m = if left { self.c.left_mult(&x) } else { self.c.right_mult(&x) };
                self.block(&m, on, on)
            })
            .collect()
    }

    /// `M = e'Ce` as a `(B, A)`-bimodule.
    pub fn m_bimodule(&self) -> Bimodule {
        Bimodule::new_unchecked(
            self.b.clone(),
            self.a.clone(),
            self.dim(Piece::M),
            self.corner_actions(Piece::B, &[Piece::M], true),
            self.corner_actions(Piece::A, &[Piece::M], false),
        )
    }

    /// `N = eCe'` as an `(A, B)`-bimodule.
    pub fn n_bimodule(&self) -> Bimodule {
        Bimodule::new_unchecked(
            self.a.clone(),
            self.b.clone(),
            self.dim(Piece::N),
            self.corner_actions(Piece::A, &[Piece::N], true),
            self.corner_actions(Piece::B, &[Piece::N], false),
        )
    }

    /// `Ce = M (+) A` as a `(C, A)`-bimodule, on the `M` block then the `A`
    /// block.
    pub fn ce(&self) -> Bimodule {
        let on = [Piece::M, Piece::A];
        Bimodule::new_unchecked(
            self.c.clone(),
            self.a.clone(),
            self.dim(Piece::M) + self.dim(Piece::A),
            self.c_actions(&on, true),
            self.corner_actions(Piece::A, &on, false),
        )
    }

    /// `eC = N (+) A` as an `(A, C)`-bimodule.
    pub fn ec(&self) -> Bimodule {
        let on = [Piece::N, Piece::A];
        Bimodule::new_unchecked(
            self.a.clone(),
            self.c.clone(),
            self.dim(Piece::N) + self.dim(Piece::A),
            self.corner_actions(Piece::A, &on, true),
            self.c_actions(&on, false),
        )
    }

    /// `e'C = B (+) M` as a right `C`-module.
    pub fn e_prime_c(&self) -> RightModule {
        let on = [Piece::B, Piece::M];
        RightModule::new_unchecked(self.c.clone(), self.dim(Piece::B) + self.dim(Piece::M), self.c_actions(&on, false))
    }

    /// The multiplication map from `X (x) Y` (full tensor space, index
    /// `q * dim Y + s`) into the coordinates of `target`.
    fn product_matrix(&self, x: &[Piece], y: &[Piece], target: &[Piece]) -> Matrix {
        let xi = self.indices_of(x);
        let yi = self.indices_of(y);
        let ti = self.indices_of(target);
        let field = self.c.field();
        let mut cols = Vec::with_capacity(xi.len() * yi.len());
        for &p in &xi {
            for &q in &yi {
                let prod = crate::linalg::sparse_to_dense(field, self.c.dim(), self.c.product(p, q));
                debug_assert!((0..self.c.dim()).all(|k| ti.contains(&k) || prod[k].is_zero()));
                cols.push(ti.iter().map(|&k| prod[k].clone()).collect());
            }
        }
        Matrix::from_cols(field, ti.len(), &cols)
    }

    /// `f : M (x)_A N -> B` on the quotient basis of the tensor product.
    pub fn f_map(&self) -> (TensorProduct, Matrix) {
        let t = tensor_over(&self.m_bimodule().right_part(), &self.n_bimodule().left_part());
        let full = self.product_matrix(&[Piece::M], &[Piece::N], &[Piece::B]);
        let m = full.mul(&t.quotient().section_matrix());
        (t, m)
    }

    /// `g : N (x)_B M -> A`.
    pub fn g_map(&self) -> (TensorProduct, Matrix) {
        let t = tensor_over(&self.n_bimodule().right_part(), &self.m_bimodule().left_part());
        let full = self.product_matrix(&[Piece::N], &[Piece::M], &[Piece::A]);
        let m = full.mul(&t.quotient().section_matrix());
        (t, m)
    }

    /// `mu_e : Ce (x)_A eC -> C`, with the tensor product as a
    /// `C`-bimodule.
    pub fn mu_map(&self) -> (TensorProduct, Bimodule, Matrix) {
        let (t, tb) = crate::module::tensor_bimodules(&self.ce(), &self.ec());
        let all = Piece::ALL;
        let full = self.product_matrix(&[Piece::M, Piece::A], &[Piece::N, Piece::A], &all);
        let m = full.mul(&t.quotient().section_matrix());
        (t, tb, m)
    }

    /// The ideal `CeC`.
    pub fn ideal_e(&self) -> Subspace {
        self.c.two_sided_ideal(&[self.e.clone()])
    }

    /// The ideal `Ce'C`.
    pub fn ideal_e_prime(&self) -> Subspace {
        self.c.two_sided_ideal(&[self.e_prime.clone()])
    }

    /// The Morita defects `C/CeC` and `C/Ce'C`.
    pub fn defects(&self) -> Result<(QuotientAlgebra, QuotientAlgebra)> {
        Ok((self.c.quotient(&self.ideal_e())?, self.c.quotient(&self.ideal_e_prime())?))
    }

    /// `C/CeC` as a right `C`-module.
    pub fn cbar_right(&self) -> RightModule {
        RightModule::cyclic_quotient(self.c.clone(), &self.ideal_e()).expect("two-sided ideal")
    }

    /// `C/CeC` as a left `C`-module.
    pub fn cbar_left(&self) -> LeftModule {
        LeftModule::regular(self.c.clone()).quotient(&self.ideal_e()).expect("two-sided ideal")
    }

    /// `C/Ce'C` as a right `C`-module.
    pub fn cbar_prime_right(&self) -> RightModule {
        RightModule::cyclic_quotient(self.c.clone(), &self.ideal_e_prime()).expect("two-sided ideal")
    }

    /// The same algebra with the roles of `e` and `e'` exchanged.
    pub fn swapped(&self) -> Result<MoritaContext> {
        let e = Idempotent::new(&self.c, self.e_prime.clone())?;
        MoritaContext::new(&self.c, &e)
    }

    pub fn fundamental_sequence(&self) -> FundamentalSequence {
        let (t, tb, mu) = self.mu_map();
        let rank_mu = Subspace::column_space(&mu).dim();
        let omega = kernel_basis(&mu);
        let image = Subspace::column_space(&mu);
        let ideal = self.ideal_e();
        let dim_cbar = self.c.dim() - ideal.dim();
        let le = tb.left_action_of(&self.e);
        let re = tb.right_action_of(&self.e);
        let annihilated_by_e = le.mul(&omega).is_zero() && re.mul(&omega).is_zero();
        let (ft, f) = self.f_map();
        let f_rank = Subspace::column_space(&f).dim();
        let dim_omega = omega.cols();
        let exact = mu.mul(&omega).is_zero()
            && dim_omega + self.c.dim() == t.dim() + dim_cbar
            && dim_omega == t.dim() - rank_mu;
        FundamentalSequence {
            dim_omega,
            dim_tensor: t.dim(),
            dim_c: self.c.dim(),
            dim_cbar,
            rank_mu,
            image_is_ideal: image == ideal,
            exact,
            annihilated_by_e,
            f_kernel_dim: ft.dim() - f_rank,
            f_cokernel_dim: self.dim(Piece::B) - f_rank,
        }
    }

    /// `alpha_C`, with `End_A(Ce)` on the basis of [`hom_space`].
    pub fn alpha_map(&self) -> (AlphaMap, HomSpace) {
        let ce = self.ce();
        let right = ce.right_part();
        let end = hom_space(&right, &right);
        let field = self.c.field();
        let cols: Vec<Vec<Scalar>> = ce
            .left_action()
            .iter()
            .map(|l| end.coords(l).expect("left multiplication is A-linear"))
            .collect();
        let matrix = Matrix::from_cols(field, end.dim(), &cols);
        let rank = Subspace::column_space(&matrix).dim();
        let injective = rank == self.c.dim();
        let bijective = injective && rank == end.dim();
        (AlphaMap { matrix, rank, injective, bijective }, end)
    }
}

/// Builds the context of `(C, e)`.
pub fn build_context(c: &Algebra, e: &Idempotent) -> Result<MoritaContext> {
    MoritaContext::new(c, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::*;
    use crate::linalg::Field;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Field::Rational.from_i64(x)).collect()
    }

    #[test]
    fn matrix_units_context() {
        let c = full_matrix(Field::Rational, 2);
        let e = Idempotent::new(&c, v(&[1, 0, 0, 0])).unwrap();
        let ctx = MoritaContext::new(&c, &e).unwrap();
        for p in Piece::ALL {
            assert_eq!(ctx.dim(p), 1);
        }
        let (_, f) = ctx.f_map();
        assert!(!f.is_zero());
        let (_, g) = ctx.g_map();
        assert!(!g.is_zero());
        let (cbar, cbar_p) = ctx.defects().unwrap();
        assert_eq!((cbar.algebra.dim(), cbar_p.algebra.dim()), (0, 0));
        let fs = ctx.fundamental_sequence();
        assert!(fs.holds());
        assert_eq!(fs.dim_omega, 0);
        assert!(ctx.alpha_map().0.bijective);
    }

    #[test]
    fn unit_idempotent() {
        let c = dual_numbers(Field::Rational);
        let ctx = MoritaContext::new(&c, &Idempotent::unit(&c)).unwrap();
        assert_eq!(ctx.dim(Piece::A), 2);
        let (cbar, cbar_p) = ctx.defects().unwrap();
        assert_eq!(cbar.algebra.dim(), 0);
        assert_eq!(cbar_p.algebra.dim(), 2);
        let fs = ctx.fundamental_sequence();
        assert!(fs.holds());
        assert_eq!((fs.dim_tensor, fs.rank_mu), (2, 2));
    }

    #[test]
    fn upper_triangular_corner() {
        // E11, E12, E22 with e = E22: N = 0, so f = 0 and C/CeC = B.
        let c = upper_triangular(Field::Rational, 2);
        let e = Idempotent::new(&c, v(&[0, 0, 1])).unwrap();
        let ctx = MoritaContext::new(&c, &e).unwrap();
        assert_eq!(ctx.dim(Piece::N), 0);
        let (cbar, cbar_p) = ctx.defects().unwrap();
        assert_eq!(cbar.algebra.dim(), 1);
        assert_eq!(cbar_p.algebra.dim(), 1);
        let fs = ctx.fundamental_sequence();
        assert!(fs.holds());
        assert_eq!(fs.f_cokernel_dim, 1);
        // C/CeC is the simple at vertex 1, of projective dimension one.
        let alpha = ctx.alpha_map().0;
        assert!(alpha.injective && !alpha.bijective);
        // With e = E11 the defect is the simple projective E22 C, which
        // embeds in C.
        let e = Idempotent::new(&c, v(&[1, 0, 0])).unwrap();
        let ctx = MoritaContext::new(&c, &e).unwrap();
        assert!(!ctx.alpha_map().0.injective);
    }
}
