use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Idempotent, Piece};
use crate::error::{Error, Result};
use crate::homology::{ext_dims, grade_of, Grade, ResolutionConfig};
use crate::linalg::{kernel_basis, sparse_from_dense, Matrix, Scalar, Subspace};
use crate::module::{hom_space, is_generator, is_projective, norm_and_stable_end, HomSpace, RightModule};

use super::MoritaContext;

/// `C = End_A(M (+) A)` with `e` the projection onto `A`.
///
/// The basis of `C` is the concatenation of the [`hom_space`] bases of
/// `End_A(M)`, `Hom_A(A, M)`, `Hom_A(M, A)` and `End_A(A)`, which is already
/// adapted to the pattern `[B | M | N | A]`.
#[derive(Clone, Debug)]
pub struct AuslanderContext {
    pub context: MoritaContext,
    pub base: Arc<Algebra>,
    pub module: RightModule,
    pub blocks: [HomSpace; 4],
    /// Evaluation at the unit, `End_A(A) -> A`, as a matrix on the `A`
    /// block; it is an algebra isomorphism.
    pub corner_a_iso: Matrix,
    /// Evaluation at the unit, `Hom_A(A, M) -> M`.
    pub corner_m_iso: Matrix,
}

impl AuslanderContext {
    /// Dimensions of the four blocks and invertibility of the evaluation
    /// isomorphisms.
    pub fn corners_match(&self) -> bool {
        let ctx = &self.context;
        let a = &self.base;
        let dims_ok = ctx.dim(Piece::A) == a.dim()
            && ctx.dim(Piece::M) == self.module.dim()
            && ctx.dim(Piece::B) == self.blocks[0].dim()
            && ctx.dim(Piece::N) == self.blocks[2].dim();
        if !dims_ok {
            return false;
        }
        let iso_a = self.corner_a_iso.inverse().is_some();
        let iso_m = self.corner_m_iso.inverse().is_some();
        // Multiplicativity of evaluation on the A corner.
        let ca = ctx.corner_a();
        let mut mult = true;
        for i in 0..ca.dim() {
            for j in 0..ca.dim() {
                let lhs = self.corner_a_iso.mul_vec(&ca.mul(&ca.basis_vector(i), &ca.basis_vector(j)));
                let rhs = a.mul(&self.corner_a_iso.col(i), &self.corner_a_iso.col(j));
                mult &= lhs == rhs;
            }
        }
        iso_a && iso_m && mult
    }
}

fn embed_block(field: crate::linalg::Field, size: usize, rows: usize, cols: usize, m: &Matrix) -> Matrix {
    Matrix::from_fn(field, size, size, |r, c| {
        if r >= rows && r < rows + m.rows() && c >= cols && c < cols + m.cols() {
            m.get(r - rows, c - cols).clone()
        } else {
            field.zero()
        }
    })
}

/// The Auslander context of the pair `(A, M)`.
pub fn auslander_context(module: &RightModule) -> Result<AuslanderContext> {
    let a = module.algebra().clone();
    let field = a.field();
    let reg = RightModule::regular(a.clone());
    let (m, d) = (module.dim(), a.dim());
    let size = m + d;
    let blocks = [
        hom_space(module, module),
        hom_space(&reg, module),
        hom_space(module, &reg),
        hom_space(&reg, &reg),
    ];
    let offsets = [(0, 0), (0, m), (m, 0), (m, m)];
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    let names = ["end", "hom_am", "hom_ma", "end_a"];
    for (b, (&(r, c), name)) in blocks.iter().zip(offsets.iter().zip(names)) {
        for (k, phi) in b.basis().iter().enumerate() {
            basis.push(embed_block(field, size, r, c, phi));
            labels.push(format!("{name}{k}"));
        }
    }
    let coords = |big: &Matrix| -> Vec<Scalar> {
        let mut out = Vec::with_capacity(basis.len());
        for (b, &(r, c)) in blocks.iter().zip(&offsets) {
            let rows: Vec<usize> = (r..r + b.target_dim()).collect();
            let cols: Vec<usize> = (c..c + b.source_dim()).collect();
            let piece = big.select_rows(&rows).select_cols(&cols);
            out.extend(b.coords(&piece).expect("block of an endomorphism of M + A"));
        }
        out
    };
    let mut table = Vec::with_capacity(basis.len() * basis.len());
    for x in &basis {
        for y in &basis {
            table.push(sparse_from_dense(&coords(&x.mul(y))));
        }
    }
    let unit = coords(&Matrix::identity(field, size));
    let c = Algebra::from_table_unchecked(field, labels, table, unit);
    debug_assert!(c.validate().is_valid());
    let proj = embed_block(field, size, m, m, &Matrix::identity(field, d));
    let e = Idempotent::new(&c, coords(&proj))?;
    let context = MoritaContext::new(&c, &e)?;
    debug_assert_eq!(*context.basis_change(), Matrix::identity(field, c.dim()));

    let eval = |b: &HomSpace| -> Matrix {
        let cols: Vec<Vec<Scalar>> = b.basis().iter().map(|phi| phi.mul_vec(a.unit())).collect();
        Matrix::from_cols(field, b.target_dim(), &cols)
    };
    let corner_a_iso = eval(&blocks[3]);
    let corner_m_iso = eval(&blocks[1]);
    Ok(AuslanderContext { context, base: a, module: module.clone(), blocks, corner_a_iso, corner_m_iso })
}

/// Outcome of comparing the grade of the stable endomorphism ring with the
/// first non-vanishing self-extension of a generator.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GradeTheoremReport {
    pub cutoff: usize,
    /// Grade of `End_A(M)/P(M, M)` as a right `End_A(M)`-module.
    pub stable_grade: Grade,
    /// `1 + min{i >= 1 : Ext^i_A(M, M) != 0}`, or beyond the cutoff.
    pub ext_grade: Grade,
    /// `dim Ext^i_A(M, M)` for `i = 0..=cutoff`.
    pub self_ext: Vec<usize>,
    pub stable_dim: usize,
    /// `(dim Ext^g_End(stEnd, End), dim Ext^{g-1}_A(M, M))` when `g` is
    /// finite.
    pub top_dims: Option<(usize, usize)>,
}

impl GradeTheoremReport {
    pub fn holds(&self) -> bool {
        self.stable_grade == self.ext_grade && self.top_dims.map_or(true, |(x, y)| x == y)
    }
}

pub fn verify_grade_theorem(module: &RightModule, cutoff: usize, config: &ResolutionConfig) -> Result<GradeTheoremReport> {
    if !is_generator(module) {
        return Err(Error::NotAGenerator);
    }
    let nd = norm_and_stable_end(module)?;
    let stable = RightModule::cyclic_quotient(nd.end.clone(), &nd.image)?;
    let stable_grade = grade_of(&stable, cutoff, config)?;
    let self_ext = ext_dims(module, module, cutoff, config)?;
    let ext_grade = match (1..=cutoff).find(|&i| self_ext[i] != 0) {
        Some(i) if i < cutoff => Grade::Finite(i + 1),
        _ => Grade::Beyond(cutoff),
    };
    let top_dims = match stable_grade {
        Grade::Finite(g) if g >= 1 => {
            let end_reg = RightModule::regular(nd.end.clone());
            let ext = ext_dims(&stable, &end_reg, g, config)?;
            Some((ext[g], self_ext[g - 1]))
        }
        _ => None,
    };
    Ok(GradeTheoremReport { cutoff, stable_grade, ext_grade, self_ext, stable_dim: stable.dim(), top_dims })
}

/// The radical of an algebra over a field of characteristic zero, as the
/// kernel of the trace form `(x, y) -> tr(L_{xy})`.
pub(crate) fn radical_char0(a: &Algebra) -> Option<Subspace> {
    if a.field().characteristic() != 0 {
        return None;
    }
    let d = a.dim();
    let traces: Vec<Scalar> = (0..d).map(|k| a.left_mult(&a.basis_vector(k)).trace()).collect();
    let gram = Matrix::from_fn(a.field(), d, d, |i, j| {
        let mut t = a.field().zero();
        for (k, c) in a.product(i, j) {
            t.add_mul_assign(c, &traces[*k]);
        }
        t
    });
    Some(Subspace::column_space(&kernel_basis(&gram)))
}

/// Spot check of: if `M` is a generator, `End_A(M)` has finite global
/// dimension `d` and `Ext^i_A(M, M) = 0` for `0 < i < d`, then `M` is
/// projective and `A` has global dimension `d` as well.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GldimCheck {
    pub generator: bool,
    /// `None` when undetermined: positive characteristic, or no vanishing
    /// up to the cutoff.
    pub gldim: Option<usize>,
    pub premise: bool,
    pub projective: bool,
    /// Only computed when the premise holds.
    pub gldim_base: Option<usize>,
}

impl GldimCheck {
    pub fn holds(&self) -> bool {
        !self.premise || (self.projective && self.gldim_base == self.gldim)
    }

    pub fn determined(&self) -> bool {
        self.gldim.is_some()
    }
}

/// Global dimension as the largest `k` with `Ext^k(A/J, A/J) != 0`, which
/// needs the radical; `None` when it is not available or no vanishing shows
/// up to the cutoff.
pub fn global_dimension(algebra: &Arc<Algebra>, cutoff: usize, config: &ResolutionConfig) -> Result<Option<usize>> {
    let Some(rad) = radical_char0(algebra) else { return Ok(None) };
    let top = RightModule::cyclic_quotient(algebra.clone(), &rad)?;
    let ext = ext_dims(&top, &top, cutoff + 1, config)?;
    Ok(ext.iter().position(|&x| x == 0).map(|k| k - 1))
}

pub fn gldim_spot_check(module: &RightModule, cutoff: usize, config: &ResolutionConfig) -> Result<GldimCheck> {
    let (end, _) = crate::module::end_algebra(module);
    let generator = is_generator(module);
    let projective = is_projective(module).is_projective();
    let gldim = global_dimension(&end, cutoff, config)?;
    let premise = match gldim {
        Some(d) if generator => {
            let self_ext = ext_dims(module, module, d.max(1), config)?;
            (1..d).all(|i| self_ext[i] == 0)
        }
        _ => false,
    };
    let gldim_base = if premise { global_dimension(module.algebra(), cutoff, config)? } else { None };
    Ok(GldimCheck { generator, gldim, premise, projective, gldim_base })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::*;
    use crate::linalg::Field;

    fn simple_of_dual() -> RightModule {
        let a = Arc::new(dual_numbers(Field::Rational));
        let rad = a.two_sided_ideal(&[a.basis_vector(1)]);
        RightModule::cyclic_quotient(a, &rad).unwrap()
    }

    #[test]
    fn dual_numbers_simple_context() {
        let s = simple_of_dual();
        let aus = auslander_context(&s).unwrap();
        assert_eq!(aus.context.algebra().dim(), 5);
        assert!(aus.corners_match());
        let (cbar, _) = aus.context.defects().unwrap();
        assert_eq!(cbar.algebra.dim(), 1);
        assert!(aus.context.alpha_map().0.bijective);
    }

    #[test]
    fn regular_module_context_is_morita() {
        let a = Arc::new(upper_triangular(Field::Rational, 2));
        let aus = auslander_context(&RightModule::regular(a)).unwrap();
        let (cbar, cbar_p) = aus.context.defects().unwrap();
        assert_eq!((cbar.algebra.dim(), cbar_p.algebra.dim()), (0, 0));
    }

    #[test]
    fn grade_theorem_dual_numbers() {
        let s = simple_of_dual();
        let m = s.direct_sum(&RightModule::regular(s.algebra().clone()));
        let r = verify_grade_theorem(&m, 5, &ResolutionConfig::default()).unwrap();
        assert_eq!(r.stable_grade, Grade::Finite(2));
        assert_eq!(r.ext_grade, Grade::Finite(2));
        assert_eq!(r.top_dims, Some((1, 1)));
        assert!(r.holds());
        assert!(matches!(verify_grade_theorem(&s, 5, &ResolutionConfig::default()), Err(Error::NotAGenerator)));
    }

    #[test]
    fn radical_and_gldim() {
        let a = upper_triangular(Field::Rational, 2);
        assert_eq!(radical_char0(&a).unwrap().dim(), 1);
        let m = RightModule::regular(Arc::new(a));
        let chk = gldim_spot_check(&m, 4, &ResolutionConfig::default()).unwrap();
        assert_eq!(chk.gldim, Some(1));
        assert!(chk.premise && chk.holds());
        assert_eq!(chk.gldim_base, Some(1));
        let simple = simple_of_dual();
        let chk = gldim_spot_check(&simple, 4, &ResolutionConfig::default()).unwrap();
        assert_eq!(chk.gldim, Some(0));
        assert!(!chk.generator && !chk.premise);
        let d = RightModule::regular(Arc::new(dual_numbers(Field::Rational)));
        assert_eq!(gldim_spot_check(&d, 3, &ResolutionConfig::default()).unwrap().gldim, None);
    }
}
