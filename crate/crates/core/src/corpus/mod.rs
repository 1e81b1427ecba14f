//! The bundled example corpus: small algebras over the rationals with
//! designated modules, idempotents and group actions.
//!
//! The JSON files under `corpus/` are generated from [`reference`], which
//! builds the same documents from the catalog; a test keeps the two in sync.

use std::sync::Arc;

use crate::algebra::{catalog, Algebra};
use crate::error::{Error, Result};
use crate::group::{build_skew_group, GroupAction, SkewGroupData};
use crate::io::{
    idempotent_spec, matrix_spec, module_spec, parse_spec, vertex_spec, ActionSpec, GroupSpec, Loaded, SkewSpec,
    SpecDocument,
};
use crate::linalg::{Field, Matrix, Scalar};
use crate::module::RightModule;

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        const FILES: &[(&str, &str)] = &[$(($name, include_str!(concat!("../../corpus/", $name, ".json")))),*];
    };
}

bundled!(
    "ground",
    "dual-numbers",
    "truncated-cubic",
    "dual-numbers-u",
    "upper-triangular",
    "m2",
    "q2",
    "q3",
    "q-sqrt2",
    "a2-path",
    "skew-cubic-z2",
    "skew-q3-z3",
);

/// Names of the bundled fixtures, in corpus order.
pub fn names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

/// The JSON text of a bundled fixture.
pub fn text(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// A parsed and validated fixture.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub document: SpecDocument,
    pub loaded: Loaded,
}

impl Fixture {
    pub fn algebra(&self) -> &Arc<Algebra> {
        self.loaded.algebra.as_ref().expect("corpus fixtures carry an algebra")
    }

    /// The skew group algebra of the fixture's action, if it has one.
    pub fn skew_data(&self) -> Option<Result<SkewGroupData>> {
        self.loaded.action.as_ref().map(build_skew_group)
    }
}

pub fn load(name: &str) -> Result<Fixture> {
    let text = text(name).ok_or_else(|| Error::Spec {
        location: "corpus".into(),
        message: format!("no bundled fixture named {name:?}"),
    })?;
    let document = parse_spec(text.as_bytes())?;
    let loaded = document.load()?;
    Ok(Fixture { name: name.to_string(), document, loaded })
}

pub fn load_all() -> Result<Vec<Fixture>> {
    names().map(load).collect()
}

fn q() -> Field {
    Field::Rational
}

fn int_vec(xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| q().from_i64(x)).collect()
}

/// `A / gens A`.
fn quotient(a: &Arc<Algebra>, gens: &[Vec<Scalar>]) -> RightModule {
    RightModule::cyclic_quotient(a.clone(), &a.right_ideal(gens)).expect("right ideal")
}

fn document(name: &str, a: &Algebra) -> SpecDocument {
    SpecDocument::from_algebra(name, a)
}

/// The unit as the only designated idempotent.
fn with_unit(mut doc: SpecDocument, a: &Algebra) -> SpecDocument {
    doc.idempotents.push(idempotent_spec("one", a.unit()));
    doc
}

fn local(name: &str, a: Algebra, extra: &[(&str, usize)]) -> SpecDocument {
    let a = Arc::new(a);
    let mut doc = with_unit(document(name, &a), &a);
    let rad: Vec<Vec<Scalar>> = (1..a.dim()).map(|i| a.basis_vector(i)).collect();
    doc.modules.push(module_spec("simple", &quotient(&a, &rad), true));
    // `A / (x^k)`.
    for (label, k) in extra {
        doc.modules.push(module_spec(label, &quotient(&a, &[a.basis_vector(*k)]), true));
    }
    doc
}

fn cyclic_action(n: usize, generator: &Matrix) -> ActionSpec {
    ActionSpec { group: GroupSpec::Cyclic(n), generator: Some(matrix_spec(generator)), matrices: None }
}

/// `(1 + s g) / 2` for `s = 1, -1` in the skew group algebra of an
/// involution.
fn half_sum(data: &SkewGroupData, sign: i64) -> Vec<Scalar> {
    let sg = data.skew_algebra();
    let half = q().from_i64(2).inv().expect("characteristic zero");
    let signed = q().from_i64(sign);
    sg.unit()
        .iter()
        .zip(data.group_element(1))
        .map(|(u, g)| u.add(&signed.mul(&g)).mul(&half))
        .collect()
}

fn skew_cubic() -> SpecDocument {
    let s = Arc::new(catalog::truncated_polynomial(q(), 3, "x"));
    let sign = Matrix::from_i64(q(), &[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]]);
    let action = GroupAction::cyclic(s.clone(), 2, sign.clone()).expect("sign action");
    let data = build_skew_group(&action).expect("skew group algebra");
    let sg = data.skew_algebra();
    let x = data.embed(&s.basis_vector(1));
    let g = data.group_element(1);
    let minus = |v: &[Scalar], w: &[Scalar]| -> Vec<Scalar> { v.iter().zip(w).map(|(a, b)| a.sub(b)).collect() };
    let plus = |v: &[Scalar], w: &[Scalar]| -> Vec<Scalar> { v.iter().zip(w).map(|(a, b)| a.add(b)).collect() };
    let trivial = quotient(sg, &[x.clone(), minus(&g, sg.unit())]);
    let sign_module = quotient(sg, &[x, plus(&g, sg.unit())]);
    let (e_plus, e_minus) = (half_sum(&data, 1), half_sum(&data, -1));
    let mut doc = document("skew-cubic-z2", &s);
    doc.modules.push(module_spec("simple", &quotient(&s, &[s.basis_vector(1)]), false));
    doc.action = Some(cyclic_action(2, &sign));
    doc.skew = Some(SkewSpec {
        modules: vec![module_spec("trivial", &trivial, true), module_spec("sign", &sign_module, false)],
        idempotents: vec![idempotent_spec("plus", &e_plus), idempotent_spec("minus", &e_minus)],
        vertex_idempotents: Some(vertex_spec(&[e_plus, e_minus])),
    });
    doc
}

fn skew_q3() -> SpecDocument {
    let s = Arc::new(catalog::product_of_fields(q(), 3));
    let shift = Matrix::from_i64(q(), &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
    let action = GroupAction::cyclic(s.clone(), 3, shift.clone()).expect("shift action");
    let data = build_skew_group(&action).expect("skew group algebra");
    let sg = data.skew_algebra();
    let vertices: Vec<Vec<Scalar>> = (0..3).map(|i| data.embed(&s.basis_vector(i))).collect();
    let simple = quotient(sg, &vertices[1..]);
    let mut doc = document("skew-q3-z3", &s);
    doc.idempotents.push(idempotent_spec("e1", &s.basis_vector(0)));
    doc.action = Some(cyclic_action(3, &shift));
    doc.skew = Some(SkewSpec {
        modules: vec![module_spec("simple", &simple, false)],
        idempotents: vec![idempotent_spec("e1", &vertices[0])],
        vertex_idempotents: Some(vertex_spec(&vertices)),
    });
    doc
}

/// The document of a fixture, built from the catalog.
pub fn reference(name: &str) -> Option<SpecDocument> {
    let doc = match name {
        "ground" => with_unit(document(name, &catalog::ground(q())), &catalog::ground(q())),
        "dual-numbers" => local(name, catalog::dual_numbers(q()), &[]),
        "truncated-cubic" => local(name, catalog::truncated_polynomial(q(), 3, "x"), &[("x-quotient", 2)]),
        "dual-numbers-u" => {
            let mut doc = local(name, catalog::truncated_polynomial(q(), 2, "u"), &[]);
            doc.idempotents.clear();
            doc
        }
        "upper-triangular" => {
            // Basis E11, E12, E22.
            let a = Arc::new(catalog::upper_triangular(q(), 2));
            let mut doc = document(name, &a);
            let (e11, e12, e22) = (a.basis_vector(0), a.basis_vector(1), a.basis_vector(2));
            doc.modules.push(module_spec("S1", &quotient(&a, &[e12.clone(), e22.clone()]), true));
            doc.modules.push(module_spec("S2", &quotient(&a, &[e11.clone(), e12]), false));
            doc.idempotents.push(idempotent_spec("E11", &e11));
            doc.idempotents.push(idempotent_spec("E22", &e22));
            doc.vertex_idempotents = Some(vertex_spec(&[e11, e22]));
            doc
        }
        "m2" => {
            let a = Arc::new(catalog::full_matrix(q(), 2));
            let mut doc = document(name, &a);
            let (e11, e22) = (a.basis_vector(0), a.basis_vector(3));
            // Row vectors: A / E2 A.
            doc.modules.push(module_spec("row", &quotient(&a, &[e22.clone()]), true));
            doc.idempotents.push(idempotent_spec("E11", &e11));
            doc.vertex_idempotents = Some(vertex_spec(&[e11, e22]));
            doc
        }
        "q2" | "q3" => {
            let n = if name == "q2" { 2 } else { 3 };
            let a = Arc::new(catalog::product_of_fields(q(), n));
            let mut doc = document(name, &a);
            let others: Vec<Vec<Scalar>> = (1..n).map(|i| a.basis_vector(i)).collect();
            doc.modules.push(module_spec("factor", &quotient(&a, &others), n == 2));
            doc.idempotents.push(idempotent_spec("e1", &a.basis_vector(0)));
            if n == 3 {
                doc.idempotents.push(idempotent_spec("e1+e2", &int_vec(&[1, 1, 0])));
            }
            doc.vertex_idempotents = Some(vertex_spec(&(0..n).map(|i| a.basis_vector(i)).collect::<Vec<_>>()));
            doc
        }
        "q-sqrt2" => {
            let a = catalog::quadratic_extension(q(), 2);
            with_unit(document(name, &a), &a)
        }
        "a2-path" => {
            // Basis e1, e2, a with e1 a = a = a e2.
            let a = Arc::new(catalog::path_algebra_a2(q()));
            let mut doc = document(name, &a);
            let (e1, e2, arrow) = (a.basis_vector(0), a.basis_vector(1), a.basis_vector(2));
            doc.modules.push(module_spec("S1", &quotient(&a, &[e2.clone(), arrow.clone()]), true));
            doc.modules.push(module_spec("S2", &quotient(&a, &[e1.clone(), arrow]), false));
            doc.idempotents.push(idempotent_spec("e1", &e1));
            doc.idempotents.push(idempotent_spec("e2", &e2));
            doc.vertex_idempotents = Some(vertex_spec(&[e1, e2]));
            doc
        }
        "skew-cubic-z2" => skew_cubic(),
        "skew-q3-z3" => skew_q3(),
        _ => return None,
    };
    Some(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::emit_spec;

    #[test]
    fn bundled_files_match_the_catalog() {
        for name in names() {
            let doc = reference(name).unwrap();
            assert_eq!(emit_spec(&doc), text(name).unwrap(), "{name} is stale");
        }
    }

    #[test]
    fn every_fixture_loads() {
        let all = load_all().unwrap();
        assert_eq!(all.len(), 12);
        for f in &all {
            assert!(f.algebra().validate().is_valid(), "{}", f.name);
        }
        let skew: Vec<&Fixture> = all.iter().filter(|f| f.loaded.skew.is_some()).collect();
        assert_eq!(skew.len(), 2);
        for f in skew {
            let data = f.skew_data().unwrap().unwrap();
            assert_eq!(**data.skew_algebra(), *f.loaded.skew.as_ref().unwrap().algebra);
        }
    }

    #[test]
    fn designated_module_dimensions() {
        let dims = |name: &str| -> Vec<usize> {
            load(name).unwrap().loaded.modules.iter().map(|m| m.module.dim()).collect()
        };
        assert_eq!(dims("truncated-cubic"), vec![1, 2]);
        assert_eq!(dims("upper-triangular"), vec![1, 1]);
        assert_eq!(dims("m2"), vec![2]);
        let skew = load("skew-cubic-z2").unwrap().loaded.skew.unwrap();
        assert_eq!(skew.modules.iter().map(|m| m.module.dim()).collect::<Vec<_>>(), vec![1, 1]);
        let skew = load("skew-q3-z3").unwrap().loaded.skew.unwrap();
        assert_eq!(skew.modules[0].module.dim(), 3);
    }
}
