use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::hochschild::{hh_via_bar, hh_via_ext, AdaptedAlgebra, BarCochains, BarOptions};
use crate::homology::{depth_on_ideal, ext_dims, grade_of, Grade, ResolutionConfig};
use crate::linalg::{kernel_sparse, Matrix, Quotient, Scalar, SparseMatrix, Subspace};
use crate::module::{hom_space, is_projective, Bimodule, RightModule};
use crate::morita::{auslander_context, bijective_into, MoritaContext};

use super::different::{noether_different, separability_check};
use super::skew::{infinitesimally_outer, trace_and_invariants, SkewGroupData};
use super::GroupAction;

/// `fS` as a right `SG`-module on the space of `S`: `f s . (s' h) = f h^{-1}(s s')`.
fn f_s_module(data: &SkewGroupData) -> Result<RightModule> {
    let s = data.base();
    let d = s.dim();
    let group = data.action().group();
    let mut action = Vec::with_capacity(data.skew_algebra().dim());
    for h in 0..group.order() {
        let back = data.action().matrix(group.inverse(h));
        for j in 0..d {
            action.push(back.mul(&s.right_mult(&s.basis_vector(j))));
        }
    }
    RightModule::new(data.skew_algebra().clone(), d, action)
}

/// The `(SG, R)` context `End_SG(fS (+) SG)` and its defects.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DefectReport {
    /// `dim SG / SfS`.
    pub dim_sgbar: usize,
    /// `dim C / CeC` for the projection `e` onto `fS`.
    pub dim_cbar: usize,
    pub grade_sgbar: Grade,
    pub dim_cbar_prime: usize,
    /// `dim R - rank tr_G`.
    pub expected_cbar_prime: usize,
    /// `r -> (f s -> f r s)` is an isomorphism `R -> End_SG(fS)`.
    pub corner_is_r: bool,
    pub trace_surjective: bool,
    pub fs_projective: bool,
    pub morita_equivalence: bool,
}

impl DefectReport {
    pub fn holds(&self) -> bool {
        let surjective_ok = !self.trace_surjective || (self.dim_cbar_prime == 0 && self.fs_projective);
        self.dim_sgbar == self.dim_cbar
            && self.dim_cbar_prime == self.expected_cbar_prime
            && self.corner_is_r
            && surjective_ok
            && self.morita_equivalence == (self.dim_sgbar == 0 && self.dim_cbar_prime == 0)
    }
}

/// The context with `e` the projection onto `fS`, so that `eCe = R` and
/// `e'Ce' = SG`, together with the defect report.
pub fn sg_context_and_defect(
    data: &SkewGroupData,
    cutoff: usize,
    config: &ResolutionConfig,
) -> Result<(MoritaContext, DefectReport)> {
    let s = data.base();
    let sg = data.skew_algebra();
    let fs = f_s_module(data)?;
    let aus = auslander_context(&fs)?;
    let ctx = aus.context.swapped()?;
    let ideal = sg.two_sided_ideal(&[data.f().to_vec()]);
    let sgbar = RightModule::cyclic_quotient(sg.clone(), &ideal)?;
    let grade_sgbar = grade_of(&sgbar, cutoff, config)?;
    let trace = trace_and_invariants(data.action());
    let maps: Vec<Matrix> = data.invariant_space().basis().iter().map(|r| s.left_mult(r)).collect();
    let corner_is_r = bijective_into(&hom_space(&fs, &fs), &maps);
    let dim_cbar = ctx.cbar_right().dim();
    let dim_cbar_prime = ctx.cbar_prime_right().dim();
    let report = DefectReport {
        dim_sgbar: sgbar.dim(),
        dim_cbar,
        grade_sgbar,
        dim_cbar_prime,
        expected_cbar_prime: trace.dim_r - trace.trace_rank,
        corner_is_r,
        trace_surjective: trace.surjective,
        fs_projective: is_projective(&fs).is_projective(),
        morita_equivalence: dim_cbar == 0 && dim_cbar_prime == 0,
    };
    Ok((ctx, report))
}

/// `SG/SfS = 0` forces `S` separable over `R`; for infinitesimally outer
/// actions the converse holds too.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SeparabilityDirections {
    pub sgbar_zero: bool,
    pub separable: bool,
    pub outer: bool,
}

impl SeparabilityDirections {
    pub fn holds(&self) -> bool {
        (!self.sgbar_zero || self.separable) && (!(self.outer && self.separable) || self.sgbar_zero)
    }
}

pub fn separability_directions(data: &SkewGroupData) -> Result<SeparabilityDirections> {
    let ideal = data.skew_algebra().two_sided_ideal(&[data.f().to_vec()]);
    Ok(SeparabilityDirections {
        sgbar_zero: ideal.dim() == data.skew_algebra().dim(),
        separable: separability_check(data.base(), data.invariant_space())?.separable,
        outer: infinitesimally_outer(data).outer,
    })
}

fn add_sparse(field: crate::linalg::Field, ms: &[SparseMatrix]) -> SparseMatrix {
    let (rows, cols) = (ms[0].rows(), ms[0].cols());
    let mut triples = Vec::new();
    for m in ms {
        for r in 0..rows {
            for (c, x) in m.row(r) {
                triples.push((r, *c, x.clone()));
            }
        }
    }
    SparseMatrix::from_triples(field, rows, cols, triples)
}

fn columns_to_sparse(field: crate::linalg::Field, rows: usize, cols: &[crate::linalg::SparseVec]) -> SparseMatrix {
    let mut triples = Vec::new();
    for (c, v) in cols.iter().enumerate() {
        for (r, x) in v {
            triples.push((*r, c, x.clone()));
        }
    }
    SparseMatrix::from_triples(field, rows, cols.len(), triples)
}

/// `dim HH^n(S, X)^G` for `n = 0..=n_max` through the normalized bar
/// cochains with `g . phi = T_g o phi o (A_{g^{-1}})^{(x) n}`. The
/// coefficients are `S` with `T_g = A_g` when `coeffs` is `None`, and
/// otherwise a bimodule with the matrices `T_g`. The flag records that the
/// action commutes with the differential. Requires `|G|` invertible.
pub fn invariant_hh(
    action: &GroupAction,
    coeffs: Option<(&Bimodule, &[Matrix])>,
    n_max: usize,
    cap: usize,
) -> Result<(Vec<usize>, bool)> {
    let s = action.algebra();
    let field = s.field();
    let group = action.group();
    if !field.is_unit_integer(group.order() as u64) {
        return Err(Error::InvalidAction("the group order is not invertible".into()));
    }
    let adapted = AdaptedAlgebra::trivial(s)?;
    let top = n_max + 1;
    let (bar, conj): (BarCochains, Vec<Matrix>) = match coeffs {
        None => (BarCochains::with_algebra_coefficients(adapted, top, cap)?, action.matrices().to_vec()),
        Some((m, t)) => (BarCochains::with_coefficients(adapted, m, top, cap)?, t.to_vec()),
    };
    let mut taus: Vec<Vec<SparseMatrix>> = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let per_g = (0..group.order())
            .map(|g| bar.transport(n, action.matrix(group.inverse(g)), &conj[g]))
            .collect::<Result<Vec<_>>>()?;
        taus.push(per_g);
    }
    let mut commutes = true;
    for n in 0..top {
        let d = bar.differential(n);
        for g in 0..group.order() {
            commutes &= d.mul(&taus[n][g]) == taus[n + 1][g].mul(d);
        }
    }
    let mut dims = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let reynolds = add_sparse(field, &taus[n]);
        let z = kernel_sparse(bar.differential(n));
        let zg = reynolds.mul(&columns_to_sparse(field, bar.dims()[n], z.vectors())).rank();
        let bg = if n == 0 { 0 } else { reynolds.mul(bar.differential(n - 1)).rank() };
        dims.push(zg - bg);
    }
    Ok((dims, commutes))
}

/// `HH^i(SG, X)` computed over `(SG)^e` against `HH^i(S, X)^G`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DegenerationReport {
    pub applicable: bool,
    pub sg_side: Vec<usize>,
    pub invariant_side: Vec<usize>,
    pub commutes: bool,
}

impl DegenerationReport {
    pub fn holds(&self) -> bool {
        !self.applicable || (self.commutes && self.sg_side == self.invariant_side)
    }
}

pub fn verify_degeneration(
    data: &SkewGroupData,
    m: &Bimodule,
    n_max: usize,
    config: &ResolutionConfig,
    cap: usize,
) -> Result<DegenerationReport> {
    let s = data.base();
    let group = data.action().group();
    if !s.field().is_unit_integer(group.order() as u64) {
        return Ok(DegenerationReport {
            applicable: false,
            sg_side: Vec::new(),
            invariant_side: Vec::new(),
            commutes: false,
        });
    }
    let sg_side = hh_via_ext(data.skew_algebra(), Some(m), n_max, config)?.dims;
    let embedded: Vec<Vec<Scalar>> = (0..s.dim()).map(|i| data.embed(&s.basis_vector(i))).collect();
    let restricted = Bimodule::new(
        s.clone(),
        s.clone(),
        m.dim(),
        embedded.iter().map(|x| m.left_action_of(x)).collect(),
        embedded.iter().map(|x| m.right_action_of(x)).collect(),
    )?;
    let conj: Vec<Matrix> = (0..group.order())
        .map(|g| {
            let l = m.left_action_of(&data.group_element(g));
            let r = m.right_action_of(&data.group_element(group.inverse(g)));
            l.mul(&r)
        })
        .collect();
    let (invariant_side, commutes) = invariant_hh(data.action(), Some((&restricted, &conj)), n_max, cap)?;
    Ok(DegenerationReport { applicable: true, sg_side, invariant_side, commutes })
}

/// The hypotheses under which the invariant comparison clauses apply.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Hypotheses {
    pub commutative: bool,
    pub order_invertible: bool,
    pub outer: bool,
}

impl Hypotheses {
    pub fn all(&self) -> bool {
        self.commutative && self.order_invertible && self.outer
    }
}

/// Consequences of the different and of the defect `SG/SfS` for a
/// commutative `S`. Clauses whose hypotheses fail are `None`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct InvariantComparison {
    pub hypotheses: Hypotheses,
    pub cutoff: usize,
    pub theta_dim: usize,
    pub annihilator_dim: usize,
    /// `theta(S/R)` kills `SG/SfS` on both sides, checked on products and
    /// against the annihilator computed as a kernel.
    pub annihilation: bool,
    pub grade: Grade,
    pub depth: Grade,
    /// `grade_SG(SG/SfS) >= depth(theta, S)`, computed regardless of the
    /// hypotheses.
    pub grade_exceeds_depth: bool,
    pub grade_bound: Option<bool>,
    /// `(g, dim Ext^i_{S^e}(S, Sg) for i < depth)` for `g != 1`.
    pub twisted_ext: Vec<(usize, Vec<usize>)>,
    pub twisted_vanish: Option<bool>,
    pub hh_s_fixed: Vec<usize>,
    pub hh_r: Vec<usize>,
    pub hh_match: Option<bool>,
    /// `dim Ext^j_R(S, S)` for `j = 0..=grade - 2`.
    pub ext_r: Vec<usize>,
    pub ext_r_vanish: Option<bool>,
}

impl InvariantComparison {
    pub fn holds(&self) -> bool {
        self.annihilation
            && [self.grade_bound, self.twisted_vanish, self.hh_match, self.ext_r_vanish]
                .iter()
                .all(|c| c.unwrap_or(true))
    }
}

/// `Finite(c)` as `c`, `Beyond(cutoff)` as `cutoff + 1`.
fn effective(g: Grade) -> usize {
    match g {
        Grade::Finite(c) => c,
        Grade::Beyond(c) => c + 1,
    }
}

fn annihilator(sg: &Algebra, embedded: &[Vec<Scalar>], quotient: &Quotient) -> Subspace {
    let field = sg.field();
    let q = quotient.dim();
    let mut triples = Vec::new();
    for (j, s) in embedded.iter().enumerate() {
        for k in 0..sg.dim() {
            let b = sg.basis_vector(k);
            for (side, prod) in [sg.mul(s, &b), sg.mul(&b, s)].iter().enumerate() {
                for (r, x) in quotient.project(prod).into_iter().enumerate() {
                    if !x.is_zero() {
                        triples.push(((2 * k + side) * q + r, j, x));
                    }
                }
            }
        }
    }
    let m = SparseMatrix::from_triples(field, 2 * sg.dim() * q, embedded.len(), triples);
    Subspace::span_sparse(field, embedded.len(), kernel_sparse(&m).vectors().iter().cloned())
}

pub fn verify_invariant_comparison(
    data: &SkewGroupData,
    cutoff: usize,
    config: &ResolutionConfig,
    cap: usize,
) -> Result<InvariantComparison> {
    let s = data.base();
    if !s.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let field = s.field();
    let sg = data.skew_algebra();
    let group = data.action().group();
    let hypotheses = Hypotheses {
        commutative: true,
        order_invertible: field.is_unit_integer(group.order() as u64),
        outer: infinitesimally_outer(data).outer,
    };
    let gated = hypotheses.all();

    let theta = noether_different(s, data.invariant_space())?.theta;
    let ideal = sg.two_sided_ideal(&[data.f().to_vec()]);
    let quotient = Quotient::new(ideal.clone());
    let embedded: Vec<Vec<Scalar>> = (0..s.dim()).map(|i| data.embed(&s.basis_vector(i))).collect();
    let ann = annihilator(sg, &embedded, &quotient);
    let direct = theta.basis().iter().all(|t| {
        let t = data.embed(t);
        (0..sg.dim()).all(|k| {
            let b = sg.basis_vector(k);
            ideal.contains(&sg.mul(&t, &b)) && ideal.contains(&sg.mul(&b, &t))
        })
    });
    let annihilation = direct && ann.contains_subspace(&theta);

    let sgbar = RightModule::cyclic_quotient(sg.clone(), &ideal)?;
    let grade = grade_of(&sgbar, cutoff, config)?;
    let depth = depth_on_ideal(s.clone(), &theta, cutoff, config)?;
    let (c, g) = (effective(depth), effective(grade));
    let grade_exceeds_depth = grade.at_least(c);

    let mut twisted_ext = Vec::new();
    let mut hh_s_fixed = Vec::new();
    let mut hh_r = Vec::new();
    let mut ext_r = Vec::new();
    if gated {
        let env = Arc::new(s.enveloping());
        let source = Bimodule::regular(s.clone()).as_right_module(env.clone());
        let lefts: Vec<Matrix> = (0..s.dim()).map(|i| s.left_mult(&s.basis_vector(i))).collect();
        if c > 0 {
            for h in (0..group.order()).filter(|&h| h != group.identity()) {
                let a = data.action().matrix(h);
                let rights = (0..s.dim()).map(|j| s.right_mult(&a.col(j))).collect();
                let twisted = Bimodule::new(s.clone(), s.clone(), s.dim(), lefts.clone(), rights)?;
                let dims = ext_dims(&source, &twisted.as_right_module(env.clone()), (c - 1).min(cutoff), config)?;
                twisted_ext.push((h, dims));
            }
        }
        if c >= 2 {
            hh_s_fixed = invariant_hh(data.action(), None, c - 2, cap)?.0;
            let options = BarOptions { cap, idempotents: None };
            hh_r = hh_via_bar(data.invariant_ring(), None, c - 2, &options)?.dims;
        }
        if g >= 2 {
            let r = data.invariant_ring().clone();
            let basis = data.invariant_space().basis();
            let s_r = RightModule::new(r, s.dim(), basis.iter().map(|x| s.right_mult(x)).collect())?;
            ext_r = ext_dims(&s_r, &s_r, g - 2, config)?;
        }
    }
    let gate = |b: bool| gated.then_some(b);
    Ok(InvariantComparison {
        hypotheses,
        cutoff,
        theta_dim: theta.dim(),
        annihilator_dim: ann.dim(),
        annihilation,
        grade,
        depth,
        grade_exceeds_depth,
        grade_bound: gate(grade_exceeds_depth),
        twisted_vanish: gate(twisted_ext.iter().all(|(_, d)| d.iter().all(|&x| x == 0))),
        hh_match: gate(hh_s_fixed == hh_r),
        ext_r_vanish: gate(ext_r.iter().skip(1).all(|&x| x == 0)),
        twisted_ext,
        hh_s_fixed,
        hh_r,
        ext_r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::*;
    use crate::group::build_skew_group;
    use crate::hochschild::DEFAULT_BAR_CAP;
    use crate::linalg::Field;

    fn q() -> Field {
        Field::Rational
    }

    fn cubic_sign() -> SkewGroupData {
        let s = Arc::new(truncated_polynomial(q(), 3, "x"));
        let sign = Matrix::from_i64(q(), &[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]]);
        build_skew_group(&GroupAction::cyclic(s, 2, sign).unwrap()).unwrap()
    }

    fn cyclic_shift() -> SkewGroupData {
        let s = Arc::new(product_of_fields(q(), 3));
        let shift = Matrix::from_i64(q(), &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        build_skew_group(&GroupAction::cyclic(s, 3, shift).unwrap()).unwrap()
    }

    fn cfg() -> ResolutionConfig {
        ResolutionConfig::default()
    }

    #[test]
    fn shift_context_is_a_morita_equivalence() {
        let data = cyclic_shift();
        let (ctx, r) = sg_context_and_defect(&data, 4, &cfg()).unwrap();
        assert!(r.holds(), "{r:?}");
        assert!(r.morita_equivalence && r.dim_sgbar == 0);
        assert_eq!(ctx.corner_a().dim(), 1);
        assert_eq!(ctx.corner_b().dim(), 9);
        let dirs = separability_directions(&data).unwrap();
        assert!(dirs.holds() && dirs.sgbar_zero && dirs.separable);
    }

    #[test]
    fn sign_context_has_a_defect() {
        let data = cubic_sign();
        let (_, r) = sg_context_and_defect(&data, 4, &cfg()).unwrap();
        assert!(r.holds(), "{r:?}");
        assert!(r.dim_sgbar > 0 && r.dim_cbar_prime == 0);
        let dirs = separability_directions(&data).unwrap();
        assert!(dirs.holds() && !dirs.sgbar_zero && !dirs.separable && !dirs.outer);
    }

    #[test]
    fn trivial_group_context() {
        let s = Arc::new(dual_numbers(q()));
        let data = build_skew_group(&GroupAction::trivial(s)).unwrap();
        let (_, r) = sg_context_and_defect(&data, 3, &cfg()).unwrap();
        assert!(r.holds() && r.dim_sgbar == 0 && r.morita_equivalence);
    }

    #[test]
    fn degeneration_on_both_fixtures() {
        for data in [cubic_sign(), cyclic_shift()] {
            let m = Bimodule::regular(data.skew_algebra().clone());
            let r = verify_degeneration(&data, &m, 3, &cfg(), DEFAULT_BAR_CAP).unwrap();
            assert!(r.holds(), "{r:?}");
        }
    }

    #[test]
    fn invariant_comparison() {
        let r = verify_invariant_comparison(&cyclic_shift(), 4, &cfg(), DEFAULT_BAR_CAP).unwrap();
        assert!(r.hypotheses.all() && r.holds(), "{r:?}");
        assert_eq!(r.theta_dim, 3);
        assert!(matches!(r.depth, Grade::Beyond(_)));
        assert_eq!(r.hh_r[..4], [1, 0, 0, 0]);
        assert_eq!(r.hh_s_fixed, r.hh_r);

        let r = verify_invariant_comparison(&cubic_sign(), 4, &cfg(), DEFAULT_BAR_CAP).unwrap();
        assert!(!r.hypotheses.outer && r.holds(), "{r:?}");
        assert!(r.annihilation && r.grade_exceeds_depth);
        assert_eq!(r.depth, Grade::Finite(0));
        assert!(r.grade_bound.is_none() && r.hh_match.is_none());
    }
}
