use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::homology::{ext_dims, grade_of, Grade, ResolutionConfig};
use crate::linalg::{Matrix, Scalar};
use crate::module::{end_algebra, hom_space, is_generator, is_projective, trace_ideal, RightModule};

use super::checks::bijective_into;
use super::{FundamentalSequence, MoritaContext};

/// Outcome of the Wedderburn-projectivity test for a right module `P`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WedderburnProjective {
    pub projective: bool,
    /// `R -> End_{End_R(P)}(Hom_R(P, R))` is bijective.
    pub double_dual_bijective: bool,
}

impl WedderburnProjective {
    pub fn holds(&self) -> bool {
        self.projective && self.double_dual_bijective
    }
}

/// Tests `P_R` for being a Wedderburn projective. The dual `Hom_R(P, R)` is
/// a right `End_R(P)`-module by precomposition.
pub fn wedderburn_projective(p: &RightModule) -> WedderburnProjective {
    let r = p.algebra().clone();
    let field = r.field();
    let projective = is_projective(p).is_projective();
    let (e, end_hom) = end_algebra(p);
    let dual = hom_space(p, &RightModule::regular(r.clone()));
    let coords_of = |phi: &Matrix| dual.coords(phi).expect("stays in the dual");
    let action: Vec<Matrix> = end_hom
        .basis()
        .iter()
        .map(|lambda| {
            let cols: Vec<Vec<Scalar>> = dual.basis().iter().map(|phi| coords_of(&phi.mul(lambda))).collect();
            Matrix::from_cols(field, dual.dim(), &cols)
        })
        .collect();
    let dual_mod = RightModule::new_unchecked(e, dual.dim(), action);
    let double = hom_space(&dual_mod, &dual_mod);
    let from_r: Vec<Matrix> = (0..r.dim())
        .map(|i| {
            let l = r.left_mult(&r.basis_vector(i));
            let cols: Vec<Vec<Scalar>> = dual.basis().iter().map(|phi| coords_of(&l.mul(phi))).collect();
            Matrix::from_cols(field, dual.dim(), &cols)
        })
        .collect();
    let double_dual_bijective = if r.dim() == 0 { double.dim() == 0 } else { bijective_into(&double, &from_r) };
    WedderburnProjective { projective, double_dual_bijective }
}

/// Dimensions, grades and the classification of a Morita context.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ContextReport {
    pub cutoff: usize,
    pub dim_c: usize,
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_cbar: usize,
    pub dim_cbar_prime: usize,
    pub grade_cbar_right: Grade,
    pub grade_cbar_left: Grade,
    pub grade_cbar_prime_right: Grade,
    pub grade_cbar_prime_left: Grade,
    /// `dim Hom_C(C/CeC, C)` and `dim Ext^1_C(C/CeC, C)`.
    pub ext_cbar_c: [usize; 2],
    pub fundamental: FundamentalSequence,
    pub alpha_injective: bool,
    pub alpha_bijective: bool,
    pub morita_idempotent: bool,
    pub morita_equivalence: bool,
    pub auslander: bool,
    pub wedderburn: bool,
    /// `M = e'Ce` generates over `A`.
    pub m_generator: bool,
    /// `(C, e')` has a defect of grade at least two.
    pub swapped_auslander: bool,
    pub n_wedderburn_projective: WedderburnProjective,
    /// `dim B / tau_N(B)`.
    pub trace_quotient_dim: usize,
}

impl ContextReport {
    /// Agreement between the flags and the characterizations that were
    /// computed independently of them.
    pub fn consistent(&self) -> bool {
        let [hom, ext1] = self.ext_cbar_c;
        let alpha_ok = self.alpha_injective == (hom == 0) && self.alpha_bijective == (hom == 0 && ext1 == 0);
        let auslander_ok = self.auslander == self.alpha_bijective;
        let second = self.auslander && self.m_generator;
        let third = self.swapped_auslander && self.n_wedderburn_projective.holds();
        let wedderburn_ok = self.wedderburn == second && self.wedderburn == third;
        let trace_ok = !self.wedderburn || self.trace_quotient_dim == self.dim_cbar;
        alpha_ok && auslander_ok && wedderburn_ok && trace_ok && self.fundamental.holds()
    }
}

fn left_grade(m: crate::module::LeftModule, cutoff: usize, config: &ResolutionConfig) -> Result<Grade> {
    grade_of(&m.as_right_op(), cutoff, config)
}

pub fn classify_context(ctx: &MoritaContext, cutoff: usize, config: &ResolutionConfig) -> Result<ContextReport> {
    let cutoff = cutoff.max(2);
    let c = ctx.algebra();
    let cbar = ctx.cbar_right();
    let cbar_prime = ctx.cbar_prime_right();
    let swapped = ctx.swapped()?;
    let grade_cbar_right = grade_of(&cbar, cutoff, config)?;
    let grade_cbar_prime_right = grade_of(&cbar_prime, cutoff, config)?;
    let grade_cbar_left = left_grade(ctx.cbar_left(), cutoff, config)?;
    let grade_cbar_prime_left = left_grade(swapped.cbar_left(), cutoff, config)?;
    let ext = ext_dims(&cbar, &RightModule::regular(c.clone()), 1, config)?;
    let (alpha, _) = ctx.alpha_map();
    let n_right = ctx.n_bimodule().right_part();
    let m_right = ctx.m_bimodule().right_part();
    let auslander = grade_cbar_right.at_least(2);
    let dim_cbar = cbar.dim();
    let dim_cbar_prime = cbar_prime.dim();
    Ok(ContextReport {
        cutoff,
        dim_c: c.dim(),
        dim_a: ctx.corner_a().dim(),
        dim_b: ctx.corner_b().dim(),
        dim_cbar,
        dim_cbar_prime,
        grade_cbar_right,
        grade_cbar_left,
        grade_cbar_prime_right,
        grade_cbar_prime_left,
        ext_cbar_c: [ext[0], ext[1]],
        fundamental: ctx.fundamental_sequence(),
        alpha_injective: alpha.injective,
        alpha_bijective: alpha.bijective,
        morita_idempotent: dim_cbar == 0,
        morita_equivalence: dim_cbar == 0 && dim_cbar_prime == 0,
        auslander,
        wedderburn: dim_cbar_prime == 0 && auslander,
        m_generator: is_generator(&m_right),
        swapped_auslander: grade_cbar_prime_right.at_least(2),
        n_wedderburn_projective: wedderburn_projective(&n_right),
        trace_quotient_dim: ctx.corner_b().dim() - trace_ideal(&n_right).dim(),
    })
}

/// Convenience for callers holding only `(C, e)`.
pub fn classify(c: &Arc<crate::algebra::Algebra>, e: &crate::algebra::Idempotent, cutoff: usize) -> Result<ContextReport> {
    classify_context(&MoritaContext::new(c, e)?, cutoff, &ResolutionConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::*;
    use crate::algebra::Idempotent;
    use crate::linalg::Field;
    use crate::morita::auslander_context;

    fn cfg() -> ResolutionConfig {
        ResolutionConfig::default()
    }

    #[test]
    fn matrix_units_are_a_morita_equivalence() {
        let q = Field::Rational;
        let c = Arc::new(full_matrix(q, 2));
        let e = Idempotent::new(&c, vec![q.one(), q.zero(), q.zero(), q.zero()]).unwrap();
        let r = classify(&c, &e, 4).unwrap();
        assert!(r.morita_equivalence && r.wedderburn && r.auslander);
        assert!(r.consistent(), "{r:?}");
    }

    #[test]
    fn dual_numbers_contexts() {
        let a = Arc::new(dual_numbers(Field::Rational));
        let rad = a.two_sided_ideal(&[a.basis_vector(1)]);
        let s = RightModule::cyclic_quotient(a.clone(), &rad).unwrap();
        let aus = auslander_context(&s).unwrap();
        let r = classify_context(&aus.context, 4, &cfg()).unwrap();
        assert!(r.auslander && !r.wedderburn && !r.m_generator);
        assert_ne!(r.dim_cbar_prime, 0);
        assert!(r.consistent(), "{r:?}");

        let m = s.direct_sum(&RightModule::regular(a));
        let aus = auslander_context(&m).unwrap();
        let r = classify_context(&aus.context, 4, &cfg()).unwrap();
        assert!(r.auslander && r.wedderburn && r.m_generator);
        assert_eq!(r.grade_cbar_right, Grade::Finite(2));
        assert_eq!(r.trace_quotient_dim, r.dim_cbar);
        assert!(r.consistent(), "{r:?}");
    }

    #[test]
    fn upper_triangular_is_not_auslander() {
        let q = Field::Rational;
        let c = Arc::new(upper_triangular(q, 2));
        let e = Idempotent::new(&c, vec![q.zero(), q.zero(), q.one()]).unwrap();
        let r = classify(&c, &e, 4).unwrap();
        assert_eq!(r.grade_cbar_right, Grade::Finite(1));
        assert!(!r.auslander && r.alpha_injective);
        assert!(r.consistent(), "{r:?}");
    }

    #[test]
    fn wedderburn_projectives() {
        let q = Field::Rational;
        let a = Arc::new(upper_triangular(q, 2));
        assert!(wedderburn_projective(&RightModule::regular(a.clone())).holds());
        // E11 A spans E11, E12 and is projective, but its endomorphism ring
        // is too small to recover A.
        let p = RightModule::regular(a.clone()).submodule(&a.right_ideal(&[a.basis_vector(0)])).unwrap();
        let w = wedderburn_projective(&p);
        assert!(w.projective);
    }
}
