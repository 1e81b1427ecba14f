//! Algebra and module level properties over the corpus.

use std::sync::Arc;

use corner::algebra::{Algebra, Idempotent};
use corner::battery::{Corpus, SuiteOptions};
use corner::corpus;
use corner::io::{emit_spec, parse_spec};
use corner::linalg::{Field, Matrix, Scalar};
use corner::module::{hom_space, tensor_over, RightModule};
use corner::morita::MoritaContext;
use proptest::prelude::*;

fn algebras() -> Vec<(String, Arc<Algebra>)> {
    Corpus::load().unwrap().algebras().into_iter().map(|c| (c.subject, c.algebra)).collect()
}

fn element(a: &Algebra, coeffs: &[i64]) -> Vec<Scalar> {
    (0..a.dim()).map(|i| a.field().from_i64(coeffs[i % coeffs.len()])).collect()
}

#[test]
fn opposite_of_opposite() {
    for (name, a) in algebras() {
        assert_eq!(a.opposite().opposite(), *a, "{name}");
    }
}

#[test]
fn spec_documents_round_trip() {
    for name in corpus::names() {
        let doc = parse_spec(corpus::text(name).unwrap().as_bytes()).unwrap();
        let again = parse_spec(emit_spec(&doc).as_bytes()).unwrap();
        assert_eq!(doc, again, "{name}");
    }
}

#[test]
fn quotient_by_the_ideal_of_e_kills_e() {
    for f in corpus::load_all().unwrap() {
        let a = f.algebra();
        for (name, e) in &f.loaded.idempotents {
            let q = a.quotient(&a.two_sided_ideal(&[e.coeffs().to_vec()])).unwrap();
            assert!(q.project(e.coeffs()).iter().all(Scalar::is_zero), "{}/{name}", f.name);
            // The complement survives as the unit of the quotient.
            let image = q.project(e.complement(a).coeffs());
            assert_eq!(image, q.algebra.unit().to_vec(), "{}/{name}", f.name);
        }
    }
}

#[test]
fn pierce_pieces_add_up() {
    for f in corpus::load_all().unwrap() {
        let a = f.algebra();
        for (name, e) in &f.loaded.idempotents {
            let p = a.pierce(e).unwrap();
            let total: usize = corner::algebra::Piece::ALL.iter().map(|&piece| p.dim(piece)).sum();
            assert_eq!(total, a.dim(), "{}/{name}", f.name);
        }
    }
}

/// `(X (x)_B Y)` as a right `A`-module, for a `(B, A)`-bimodule `Y`.
fn tensor_module(x: &RightModule, y: &corner::module::Bimodule) -> RightModule {
    let t = tensor_over(x, &y.left_part());
    let id = Matrix::identity(x.field(), x.dim());
    let action = y.right_action().iter().map(|r| t.induced(&id, r)).collect();
    RightModule::new(y.right_algebra().clone(), t.dim(), action).unwrap()
}

/// `Hom_A(Y, Z)` as a right `B`-module through `(phi b)(y) = phi(b y)`.
fn hom_module(y: &corner::module::Bimodule, z: &RightModule) -> RightModule {
    let h = hom_space(&y.right_part(), z);
    let b = y.left_algebra();
    let action = (0..b.dim())
        .map(|i| {
            let l = y.left_action_of(&b.basis_vector(i));
            let cols: Vec<Vec<Scalar>> = h.basis().iter().map(|phi| h.coords(&phi.mul(&l)).unwrap()).collect();
            Matrix::from_fn(z.field(), h.dim(), h.dim(), |r, c| cols[c][r].clone())
        })
        .collect();
    RightModule::new(b.clone(), h.dim(), action).unwrap()
}

/// Quotients of the regular module by the right ideals of basis vectors,
/// together with the regular module.
fn small_modules(a: &Arc<Algebra>) -> Vec<RightModule> {
    let mut out = vec![RightModule::regular(a.clone())];
    for i in 0..a.dim() {
        let ideal = a.right_ideal(&[a.basis_vector(i)]);
        if ideal.dim() < a.dim() {
            out.push(RightModule::cyclic_quotient(a.clone(), &ideal).unwrap());
        }
    }
    out
}

fn corpus_contexts() -> Vec<(String, MoritaContext)> {
    let corpus = Corpus::load().unwrap();
    corpus.contexts(&SuiteOptions::default()).unwrap().into_iter().map(|c| (c.subject, c.context)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn products_are_associative_and_unital(
        pick in 0usize..14,
        x in prop::collection::vec(-4i64..5, 1..7),
        y in prop::collection::vec(-4i64..5, 1..7),
        z in prop::collection::vec(-4i64..5, 1..7),
    ) {
        let all = algebras();
        let (_, a) = &all[pick % all.len()];
        let (x, y, z) = (element(a, &x), element(a, &y), element(a, &z));
        prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
        prop_assert_eq!(a.mul(a.unit(), &x), x.clone());
        prop_assert_eq!(a.mul(&x, a.unit()), x);
    }

    /// `Hom_A(X (x)_B Y, Z) = Hom_B(X, Hom_A(Y, Z))` with `Y = e'Ce`.
    #[test]
    fn tensor_hom_adjunction(pick in 0usize..64, xi in 0usize..8, zi in 0usize..8) {
        let contexts = corpus_contexts();
        let (name, ctx) = &contexts[pick % contexts.len()];
        let y = ctx.m_bimodule();
        let xs = small_modules(ctx.corner_b());
        let zs = small_modules(ctx.corner_a());
        let (x, z) = (&xs[xi % xs.len()], &zs[zi % zs.len()]);
        let left = hom_space(&tensor_module(x, &y), z).dim();
        let right = hom_space(x, &hom_module(&y, z)).dim();
        prop_assert_eq!(left, right, "{}", name);
    }
}

#[test]
fn idempotents_are_checked() {
    let a = corner::algebra::catalog::dual_numbers(Field::Rational);
    let x = vec![Field::Rational.zero(), Field::Rational.one()];
    assert!(Idempotent::new(&a, x).is_err());
    assert!(Idempotent::new(&a, a.unit().to_vec()).is_ok());
}
