use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::Result;
use crate::linalg::{kernel_sparse, Matrix, Scalar, SparseMatrix, Subspace};

use super::GroupAction;

/// The skew group algebra `SG` with basis `s_i g` (index `g * dim S + i`),
/// the element `f = sum_g g` and the invariant ring `R = S^G`.
#[derive(Clone, Debug)]
pub struct SkewGroupData {
    action: GroupAction,
    sg: Arc<Algebra>,
    f: Vec<Scalar>,
    invariants: Subspace,
    invariant_ring: Arc<Algebra>,
}

/// The joint fixed space of the matrices, as one kernel.
fn fixed_space(action: &GroupAction) -> Subspace {
    let s = action.algebra();
    let (d, field) = (s.dim(), s.field());
    let mut triples = Vec::new();
    for (g, a) in action.matrices().iter().enumerate() {
        for r in 0..d {
            for c in 0..d {
                let mut v = a.get(r, c).clone();
                if r == c {
                    v = v.sub(&field.one());
                }
                if !v.is_zero() {
                    triples.push((g * d + r, c, v));
                }
            }
        }
    }
    let m = SparseMatrix::from_triples(field, action.matrices().len() * d, d, triples);
    Subspace::span_sparse(field, d, kernel_sparse(&m).vectors().iter().cloned())
}

pub fn build_skew_group(action: &GroupAction) -> Result<SkewGroupData> {
    let s = action.algebra().clone();
    let group = action.group();
    let (d, n, field) = (s.dim(), group.order(), s.field());
    let mut labels = Vec::with_capacity(d * n);
    for g in 0..n {
        for l in s.labels() {
            labels.push(if g == group.identity() { l.clone() } else { format!("{l}*g{g}") });
        }
    }
    let mut unit = vec![field.zero(); d * n];
    for (i, x) in s.unit().iter().enumerate() {
        unit[group.identity() * d + i] = x.clone();
    }
    // (s_i g)(s_j h) = s_i g(s_j) gh
    let sg = Algebra::from_fn(field, labels, unit, |p, q| {
        let (g, i) = (p / d, p % d);
        let (h, j) = (q / d, q % d);
        let moved = action.matrix(g).col(j);
        let prod = s.mul(&s.basis_vector(i), &moved);
        let gh = group.mul(g, h);
        let mut out = vec![field.zero(); d * n];
        for (k, x) in prod.into_iter().enumerate() {
            out[gh * d + k] = x;
        }
        out
    })?;
    let mut f = vec![field.zero(); d * n];
    for g in 0..n {
        for (i, x) in s.unit().iter().enumerate() {
            f[g * d + i] = x.clone();
        }
    }
    let invariants = fixed_space(action);
    let invariant_ring = Arc::new(s.subalgebra(&invariants, s.unit())?);
    Ok(SkewGroupData { action: action.clone(), sg: Arc::new(sg), f, invariants, invariant_ring })
}

impl SkewGroupData {
    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn base(&self) -> &Arc<Algebra> {
        self.action.algebra()
    }

    pub fn skew_algebra(&self) -> &Arc<Algebra> {
        &self.sg
    }

    pub fn order(&self) -> usize {
        self.action.group().order()
    }

    /// `f = sum_g g`.
    pub fn f(&self) -> &[Scalar] {
        &self.f
    }

    /// `R = S^G` as a subspace of `S`.
    pub fn invariant_space(&self) -> &Subspace {
        &self.invariants
    }

    /// `R` on the stored basis of [`Self::invariant_space`].
    pub fn invariant_ring(&self) -> &Arc<Algebra> {
        &self.invariant_ring
    }

    /// The columns are the basis of `R` in the coordinates of `S`.
    pub fn invariant_inclusion(&self) -> Matrix {
        let s = self.base();
        Matrix::from_cols(s.field(), s.dim(), &self.invariants.basis())
    }

    /// `s -> s * identity`.
    pub fn embed(&self, s: &[Scalar]) -> Vec<Scalar> {
        self.embed_at(s, self.action.group().identity())
    }

    /// `s -> s g`.
    pub fn embed_at(&self, s: &[Scalar], g: usize) -> Vec<Scalar> {
        let d = self.base().dim();
        let mut out = self.sg.zero_vector();
        for (i, x) in s.iter().enumerate() {
            out[g * d + i] = x.clone();
        }
        out
    }

    /// The group element `g` in `SG`.
    pub fn group_element(&self, g: usize) -> Vec<Scalar> {
        self.embed_at(self.base().unit(), g)
    }

    /// `f^2 = |G| f` and `f g = g f = f` for every `g`.
    pub fn check_invariants(&self) -> bool {
        let sg = &self.sg;
        let field = sg.field();
        let n = field.from_i64(self.order() as i64);
        let scaled: Vec<Scalar> = self.f.iter().map(|x| x.mul(&n)).collect();
        let square_ok = sg.mul(&self.f, &self.f) == scaled;
        let absorb_ok = (0..self.order()).all(|g| {
            let x = self.group_element(g);
            sg.mul(&self.f, &x) == self.f && sg.mul(&x, &self.f) == self.f
        });
        square_ok && absorb_ok
    }
}

/// The trace `tr_G = sum_g A_g` and the invariant ring.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TraceData {
    pub dim_s: usize,
    pub dim_r: usize,
    pub trace_rank: usize,
    pub surjective: bool,
    /// `|G|` is a unit in the ground field, so `tr_G(r) = |G| r` splits the
    /// inclusion of `R`.
    pub order_invertible: bool,
    /// The image of the trace lies in `R`.
    pub image_invariant: bool,
    /// `R` is closed under multiplication and contains the unit.
    pub subalgebra: bool,
    #[serde(skip)]
    pub trace: Option<Matrix>,
}

pub fn trace_and_invariants(action: &GroupAction) -> TraceData {
    let s = action.algebra();
    let field = s.field();
    let trace = action
        .matrices()
        .iter()
        .fold(Matrix::zeros(field, s.dim(), s.dim()), |acc, a| acc.add(a));
    let r = fixed_space(action);
    let image = Subspace::column_space(&trace);
    let subalgebra = r.contains(s.unit())
        && r.basis().iter().all(|x| r.basis().iter().all(|y| r.contains(&s.mul(x, y))));
    TraceData {
        dim_s: s.dim(),
        dim_r: r.dim(),
        trace_rank: image.dim(),
        surjective: image.dim() == r.dim(),
        order_invertible: field.is_unit_integer(action.group().order() as u64),
        image_invariant: r.contains_subspace(&image),
        subalgebra,
        trace: Some(trace),
    }
}

/// Whether no `g != 1` is inner on `S` in the weak sense that some non-zero
/// `s'` satisfies `s s' = s' g(s)` for all `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuterReport {
    pub outer: bool,
    /// A group element and a non-zero `s'` for it, when not outer.
    pub witness: Option<(usize, Vec<Scalar>)>,
    /// `dim {s' : s s' = s' g(s)}` for each `g`; for the identity this is the
    /// centre of `S`.
    pub twisted_dims: Vec<usize>,
    /// `dim (SG)^S`, the centralizer of `S` in `SG`.
    pub centralizer_dim: usize,
    /// `(SG)^S` equals `Z(S)` placed at the identity.
    pub centralizer_is_centre: bool,
}

impl OuterReport {
    /// The centralizer splits along the group elements.
    pub fn consistent(&self) -> bool {
        self.centralizer_dim == self.twisted_dims.iter().sum::<usize>() && self.outer == self.centralizer_is_centre
    }
}

/// `{s' : b_i s' = s' g(b_i) for all i}`.
fn twisted_space(s: &Algebra, a: &Matrix) -> Subspace {
    let d = s.dim();
    let mut triples = Vec::new();
    for i in 0..d {
        let l = s.left_mult(&s.basis_vector(i));
        let r = s.right_mult(&a.col(i));
        for k in 0..d {
            for j in 0..d {
                let v = l.get(k, j).sub(r.get(k, j));
                if !v.is_zero() {
                    triples.push((i * d + k, j, v));
                }
            }
        }
    }
    let m = SparseMatrix::from_triples(s.field(), d * d, d, triples);
    Subspace::span_sparse(s.field(), d, kernel_sparse(&m).vectors().iter().cloned())
}

pub fn infinitesimally_outer(data: &SkewGroupData) -> OuterReport {
    let s = data.base();
    let group = data.action().group();
    let mut twisted_dims = Vec::with_capacity(group.order());
    let mut witness = None;
    for g in 0..group.order() {
        let space = twisted_space(s, data.action().matrix(g));
        if g != group.identity() && witness.is_none() && space.dim() > 0 {
            witness = Some((g, space.basis()[0].clone()));
        }
        twisted_dims.push(space.dim());
    }
    let embedded: Vec<Vec<Scalar>> = (0..s.dim()).map(|i| data.embed(&s.basis_vector(i))).collect();
    let centralizer = data.skew_algebra().centralizer(&embedded);
    let centre = s.centre();
    let placed = Subspace::span(s.field(), data.skew_algebra().dim(), centre.basis().iter().map(|z| data.embed(z)));
    let centralizer_is_centre = centralizer.dim() == placed.dim() && centralizer.contains_subspace(&placed);
    OuterReport {
        outer: witness.is_none(),
        witness,
        twisted_dims,
        centralizer_dim: centralizer.dim(),
        centralizer_is_centre,
    }
}

/// `Z(SG)` against `Z(S)^G`, meaningful when the action is infinitesimally
/// outer.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CentreReport {
    pub applicable: bool,
    pub centre_sg: usize,
    pub fixed_centre_s: usize,
    /// For commutative `S`: `Z(SG)` is `R` placed at the identity.
    pub equals_r: Option<bool>,
}

impl CentreReport {
    pub fn holds(&self) -> bool {
        !self.applicable || (self.centre_sg == self.fixed_centre_s && self.equals_r != Some(false))
    }
}

pub fn centre_of_sg_check(data: &SkewGroupData) -> CentreReport {
    let s = data.base();
    let outer = infinitesimally_outer(data).outer;
    let centre_sg = data.skew_algebra().centre();
    let fixed = s.centre().intersection(data.invariant_space());
    let equals_r = s.is_commutative().then(|| {
        let placed = Subspace::span(
            s.field(),
            data.skew_algebra().dim(),
            data.invariant_space().basis().iter().map(|r| data.embed(r)),
        );
        placed.dim() == centre_sg.dim() && centre_sg.contains_subspace(&placed)
    });
    CentreReport { applicable: outer, centre_sg: centre_sg.dim(), fixed_centre_s: fixed.dim(), equals_r }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::*;
    use crate::linalg::Field;

    fn q() -> Field {
        Field::Rational
    }

    pub(crate) fn cubic_sign() -> GroupAction {
        let s = Arc::new(truncated_polynomial(q(), 3, "x"));
        let sign = Matrix::from_i64(q(), &[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]]);
        GroupAction::cyclic(s, 2, sign).unwrap()
    }

    pub(crate) fn cyclic_shift() -> GroupAction {
        let s = Arc::new(product_of_fields(q(), 3));
        let shift = Matrix::from_i64(q(), &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        GroupAction::cyclic(s, 3, shift).unwrap()
    }

    #[test]
    fn skew_group_invariants() {
        for act in [cubic_sign(), cyclic_shift()] {
            let data = build_skew_group(&act).unwrap();
            assert_eq!(data.skew_algebra().dim(), act.algebra().dim() * act.group().order());
            assert!(data.skew_algebra().validate().is_valid());
            assert!(data.check_invariants());
        }
        let s = Arc::new(dual_numbers(q()));
        let data = build_skew_group(&GroupAction::trivial(s.clone())).unwrap();
        assert_eq!(*data.skew_algebra().as_ref(), *s.as_ref());
    }

    #[test]
    fn cubic_sign_action() {
        let act = cubic_sign();
        let t = trace_and_invariants(&act);
        assert_eq!((t.dim_r, t.trace_rank), (2, 2));
        assert!(t.surjective && t.order_invertible && t.subalgebra && t.image_invariant);
        let data = build_skew_group(&act).unwrap();
        let x2 = vec![q().zero(), q().zero(), q().one()];
        assert!(data.invariant_space().contains(&x2));
        let o = infinitesimally_outer(&data);
        assert!(!o.outer && o.consistent());
        let (g, w) = o.witness.unwrap();
        assert_eq!(g, 1);
        assert_eq!(Subspace::span(q(), 3, [w]), Subspace::span(q(), 3, [x2]));
        assert!(!centre_of_sg_check(&data).applicable);
    }

    #[test]
    fn cyclic_shift_action() {
        let data = build_skew_group(&cyclic_shift()).unwrap();
        let o = infinitesimally_outer(&data);
        assert!(o.outer && o.consistent(), "{o:?}");
        let c = centre_of_sg_check(&data);
        assert!(c.applicable && c.holds());
        assert_eq!(c.centre_sg, 1);
    }

    #[test]
    fn trace_in_characteristic_two() {
        let f = Field::Prime(2);
        let s = Arc::new(product_of_fields(f, 2));
        let swap = Matrix::from_i64(f, &[&[0, 1], &[1, 0]]);
        let act = GroupAction::cyclic(s, 2, swap).unwrap();
        let t = trace_and_invariants(&act);
        assert!(!t.order_invertible);
        // R is spanned by the unit, and tr(e_1) = 1, so the trace is still onto.
        assert!(t.surjective);
        let s = Arc::new(dual_numbers(f));
        // Over F_2 the sign action is trivial; use a trivial group of order 2.
        let id = Matrix::identity(f, 2);
        let act = GroupAction::cyclic(s, 2, id).unwrap();
        let t = trace_and_invariants(&act);
        assert!(!t.surjective && t.trace_rank == 0);
    }

    #[test]
    fn galois_action_is_outer() {
        let s = Arc::new(quadratic_extension(q(), 2));
        let conj = Matrix::from_i64(q(), &[&[1, 0], &[0, -1]]);
        let data = build_skew_group(&GroupAction::cyclic(s, 2, conj).unwrap()).unwrap();
        assert!(infinitesimally_outer(&data).outer);
    }
}
