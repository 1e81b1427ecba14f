use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Idempotent};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupAction};
use crate::linalg::{is_prime, Field, Matrix, Rational, Scalar};
use crate::module::RightModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Algebra,
    Module,
    Idempotent,
    GroupAction,
    ContextJob,
}

/// `"Q"` or `{"Fp": p}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Name(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

impl FieldSpec {
    pub fn of(field: Field) -> Self {
        match field {
            Field::Rational => FieldSpec::Name("Q".into()),
            Field::Prime(p) => FieldSpec::Prime { fp: p },
        }
    }

    pub fn field(&self) -> Result<Field> {
        match self {
            FieldSpec::Name(n) if n == "Q" => Ok(Field::Rational),
            FieldSpec::Name(n) => Err(spec_error("field", format!("unknown field {n:?}"))),
            FieldSpec::Prime { fp } if is_prime(*fp) => Ok(Field::Prime(*fp)),
            FieldSpec::Prime { fp } => Err(spec_error("field", format!("{fp} is not prime"))),
        }
    }
}

/// A field element: rationals as strings `"num/den"`, residues as integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Text(String),
}

impl Value {
    pub fn of(x: &Scalar) -> Self {
        match x {
            Scalar::Q(r) => Value::Text(r.to_string()),
            Scalar::Fp { value, .. } => Value::Int(*value as i64),
        }
    }

    pub fn scalar(&self, field: Field, location: &str) -> Result<Scalar> {
        match self {
            Value::Int(n) => Ok(field.from_i64(*n)),
            Value::Text(t) => {
                let r = Rational::from_str(t.trim())
                    .map_err(|e| spec_error(location, format!("cannot parse {t:?}: {e}")))?;
                field
                    .from_rational(&r)
                    .ok_or_else(|| spec_error(location, format!("{t} has a denominator that is not invertible in {field}")))
            }
        }
    }
}

fn spec_error(location: &str, message: String) -> Error {
    Error::Spec { location: location.to_string(), message }
}

fn values(xs: &[Scalar]) -> Vec<Value> {
    xs.iter().map(Value::of).collect()
}

fn scalars(field: Field, xs: &[Value], location: &str) -> Result<Vec<Scalar>> {
    xs.iter().enumerate().map(|(i, x)| x.scalar(field, &format!("{location}[{i}]"))).collect()
}

pub fn matrix_spec(m: &Matrix) -> Vec<Vec<Value>> {
    (0..m.rows()).map(|r| values(m.row(r))).collect()
}

fn matrix_of(field: Field, rows: &[Vec<Value>], n: usize, location: &str) -> Result<Matrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(spec_error(location, format!("expected a {n}x{n} matrix")));
    }
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, r)| scalars(field, r, &format!("{location}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(field, rows))
}

/// Structure constants `[i, j, k, c]`: `c` is the coefficient of `b_k` in
/// `b_i b_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub labels: Vec<String>,
    pub unit: Vec<Value>,
    pub products: Vec<(usize, usize, usize, Value)>,
}

/// A right module: `action[i]` is the matrix of `v -> v b_i`, row by row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub name: String,
    pub dim: usize,
    pub action: Vec<Vec<Vec<Value>>>,
    /// Marks the module for the Auslander contexts of the corpus.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub auslander: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentSpec {
    pub name: String,
    pub coeffs: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupSpec {
    Cyclic(usize),
    Table(Vec<Vec<usize>>),
}

/// Either one matrix per group element, or a generator of a cyclic group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSpec {
    pub group: GroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Vec<Vec<Value>>>>,
}

/// Objects living on the skew group algebra of the action, in its basis
/// `s_i g` (index `g * dim S + i`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewSpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<ModuleSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub idempotents: Vec<IdempotentSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_idempotents: Option<Vec<Vec<Value>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bar_cap: Option<usize>,
}

/// The on-disk format for algebras and the objects attached to them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecDocument {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<ModuleSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub idempotents: Vec<IdempotentSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_idempotents: Option<Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skew: Option<SkewSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub job: Option<JobSpec>,
}

/// A document turned into validated objects.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub name: String,
    pub field: Field,
    pub algebra: Option<Arc<Algebra>>,
    pub modules: Vec<NamedModule>,
    pub idempotents: Vec<(String, Idempotent)>,
    pub vertex_idempotents: Option<Vec<Vec<Scalar>>>,
    pub action: Option<GroupAction>,
    pub skew: Option<SkewObjects>,
    pub job: JobSpec,
}

#[derive(Clone, Debug)]
pub struct NamedModule {
    pub name: String,
    pub module: RightModule,
    pub auslander: bool,
}

/// Modules and idempotents of the skew group algebra.
#[derive(Clone, Debug)]
pub struct SkewObjects {
    pub algebra: Arc<Algebra>,
    pub modules: Vec<NamedModule>,
    pub idempotents: Vec<(String, Idempotent)>,
    pub vertex_idempotents: Option<Vec<Vec<Scalar>>>,
}

pub fn parse_spec(bytes: &[u8]) -> Result<SpecDocument> {
    let text = std::str::from_utf8(bytes).map_err(|e| spec_error("input", format!("not UTF-8: {e}")))?;
    let doc: SpecDocument = serde_json::from_str(text)
        .map_err(|e| spec_error(&format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    doc.field.field()?;
    if doc.algebra.is_some() {
        doc.load()?;
    }
    Ok(doc)
}

pub fn emit_spec(doc: &SpecDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("spec documents serialize");
    s.push('\n');
    s
}

fn load_modules(a: &Arc<Algebra>, specs: &[ModuleSpec], prefix: &str) -> Result<Vec<NamedModule>> {
    let field = a.field();
    specs
        .iter()
        .enumerate()
        .map(|(m, spec)| {
            let loc = format!("{prefix}[{m}] ({})", spec.name);
            if spec.action.len() != a.dim() {
                return Err(spec_error(&loc, format!("{} action matrices for dimension {}", spec.action.len(), a.dim())));
            }
            let action = spec
                .action
                .iter()
                .enumerate()
                .map(|(i, rows)| matrix_of(field, rows, spec.dim, &format!("{loc}.action[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            let module = RightModule::new(a.clone(), spec.dim, action).map_err(|e| spec_error(&loc, e.to_string()))?;
            Ok(NamedModule { name: spec.name.clone(), module, auslander: spec.auslander })
        })
        .collect()
}

fn load_idempotents(a: &Algebra, specs: &[IdempotentSpec], prefix: &str) -> Result<Vec<(String, Idempotent)>> {
    specs
        .iter()
        .enumerate()
        .map(|(i, spec)| {
            let loc = format!("{prefix}[{i}] ({})", spec.name);
            let coeffs = scalars(a.field(), &spec.coeffs, &loc)?;
            if coeffs.len() != a.dim() {
                return Err(spec_error(&loc, "wrong number of coefficients".into()));
            }
            let e = Idempotent::new(a, coeffs).map_err(|e| spec_error(&loc, e.to_string()))?;
            Ok((spec.name.clone(), e))
        })
        .collect()
}

fn load_vertices(a: &Algebra, specs: &Option<Vec<Vec<Value>>>, loc: &str) -> Result<Option<Vec<Vec<Scalar>>>> {
    let Some(vs) = specs else { return Ok(None) };
    let es = vs
        .iter()
        .enumerate()
        .map(|(i, v)| scalars(a.field(), v, &format!("{loc}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    // The adapted basis construction checks the system.
    crate::hochschild::AdaptedAlgebra::new(a, &es).map_err(|e| spec_error(loc, e.to_string()))?;
    Ok(Some(es))
}

impl SpecDocument {
    /// Builds and validates every object carried by the document.
    pub fn load(&self) -> Result<Loaded> {
        self.load_over(None)
    }

    /// Like [`Self::load`], with modules and idempotents read over `base`
    /// when the document carries no algebra of its own.
    pub fn load_over(&self, base: Option<&Arc<Algebra>>) -> Result<Loaded> {
        let field = self.field.field()?;
        let algebra = match (&self.algebra, base) {
            (Some(spec), _) => Some(Arc::new(self.build_algebra(field, spec)?)),
            (None, Some(a)) => {
                if a.field() != field {
                    return Err(Error::FieldMismatch(format!("document is over {field}, algebra over {}", a.field())));
                }
                Some(a.clone())
            }
            (None, None) => None,
        };
        let needs_algebra = !self.modules.is_empty()
            || !self.idempotents.is_empty()
            || self.vertex_idempotents.is_some()
            || self.action.is_some();
        let Some(a) = algebra.clone() else {
            if needs_algebra {
                return Err(spec_error("algebra", "objects given without an algebra".into()));
            }
            return Ok(Loaded {
                name: self.name.clone().unwrap_or_default(),
                field,
                algebra: None,
                modules: Vec::new(),
                idempotents: Vec::new(),
                vertex_idempotents: None,
                action: None,
                skew: None,
                job: self.job.clone().unwrap_or_default(),
            });
        };
        let modules = load_modules(&a, &self.modules, "modules")?;
        let idempotents = load_idempotents(&a, &self.idempotents, "idempotents")?;
        let vertex_idempotents = load_vertices(&a, &self.vertex_idempotents, "vertex_idempotents")?;
        let action = self.action.as_ref().map(|s| build_action(&a, s)).transpose()?;
        let skew = match (&self.skew, &action) {
            (Some(spec), Some(act)) => {
                let sg = crate::group::build_skew_group(act)?.skew_algebra().clone();
                Some(SkewObjects {
                    modules: load_modules(&sg, &spec.modules, "skew.modules")?,
                    idempotents: load_idempotents(&sg, &spec.idempotents, "skew.idempotents")?,
                    vertex_idempotents: load_vertices(&sg, &spec.vertex_idempotents, "skew.vertex_idempotents")?,
                    algebra: sg,
                })
            }
            (Some(_), None) => return Err(spec_error("skew", "skew objects need an action".into())),
            _ => None,
        };
        Ok(Loaded {
            name: self.name.clone().unwrap_or_default(),
            field,
            algebra: Some(a),
            modules,
            idempotents,
            vertex_idempotents,
            action,
            skew,
            job: self.job.clone().unwrap_or_default(),
        })
    }

    fn build_algebra(&self, field: Field, spec: &AlgebraSpec) -> Result<Algebra> {
        let d = spec.unit.len();
        if spec.labels.len() != d {
            return Err(spec_error("algebra.labels", format!("{} labels for dimension {d}", spec.labels.len())));
        }
        let unit = scalars(field, &spec.unit, "algebra.unit")?;
        let triples = spec
            .products
            .iter()
            .enumerate()
            .map(|(t, (i, j, k, c))| Ok((*i, *j, *k, c.scalar(field, &format!("algebra.products[{t}]"))?)))
            .collect::<Result<Vec<_>>>()?;
        Algebra::from_triples(field, spec.labels.clone(), triples, unit)
            .map_err(|e| spec_error("algebra.products", e.to_string()))
    }

    /// A document describing `a` alone.
    pub fn from_algebra(name: &str, a: &Algebra) -> Self {
        let products = a.triples().map(|(i, j, k, c)| (i, j, k, Value::of(c))).collect();
        SpecDocument {
            kind: Kind::Algebra,
            name: Some(name.to_string()),
            field: FieldSpec::of(a.field()),
            algebra: Some(AlgebraSpec { labels: a.labels().to_vec(), unit: values(a.unit()), products }),
            modules: Vec::new(),
            idempotents: Vec::new(),
            vertex_idempotents: None,
            action: None,
            skew: None,
            job: None,
        }
    }
}

pub fn module_spec(name: &str, m: &RightModule, auslander: bool) -> ModuleSpec {
    ModuleSpec { name: name.to_string(), dim: m.dim(), action: m.action().iter().map(matrix_spec).collect(), auslander }
}

pub fn idempotent_spec(name: &str, coeffs: &[Scalar]) -> IdempotentSpec {
    IdempotentSpec { name: name.to_string(), coeffs: values(coeffs) }
}

pub fn vertex_spec(es: &[Vec<Scalar>]) -> Vec<Vec<Value>> {
    es.iter().map(|e| values(e)).collect()
}

pub fn action_spec(action: &GroupAction) -> ActionSpec {
    ActionSpec {
        group: GroupSpec::Table(action.group().table().to_vec()),
        generator: None,
        matrices: Some(action.matrices().iter().map(matrix_spec).collect()),
    }
}

fn build_action(a: &Arc<Algebra>, spec: &ActionSpec) -> Result<GroupAction> {
    let field = a.field();
    let d = a.dim();
    let group = match &spec.group {
        GroupSpec::Cyclic(n) if *n > 0 => FiniteGroup::cyclic(*n),
        GroupSpec::Cyclic(_) => return Err(spec_error("action.group", "cyclic group of order zero".into())),
        GroupSpec::Table(t) => FiniteGroup::from_table(t.clone()).map_err(|e| spec_error("action.group", e.to_string()))?,
    };
    let matrices = match (&spec.generator, &spec.matrices) {
        (Some(g), None) => {
            if !matches!(spec.group, GroupSpec::Cyclic(_)) {
                return Err(spec_error("action.generator", "a generator needs a cyclic group".into()));
            }
            let g = matrix_of(field, g, d, "action.generator")?;
            let mut ms = vec![Matrix::identity(field, d)];
            for k in 1..group.order() {
                ms.push(ms[k - 1].mul(&g));
            }
            ms
        }
        (None, Some(ms)) => ms
            .iter()
            .enumerate()
            .map(|(i, m)| matrix_of(field, m, d, &format!("action.matrices[{i}]")))
            .collect::<Result<Vec<_>>>()?,
        _ => return Err(spec_error("action", "give exactly one of generator and matrices".into())),
    };
    GroupAction::new(a.clone(), group, matrices).map_err(|e| spec_error("action", e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::*;

    #[test]
    fn round_trip() {
        let a = upper_triangular(Field::Rational, 2);
        let doc = SpecDocument::from_algebra("ut2", &a);
        let text = emit_spec(&doc);
        let back = parse_spec(text.as_bytes()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(emit_spec(&back), text);
        assert_eq!(*back.load().unwrap().algebra.unwrap(), a);
    }

    #[test]
    fn prime_field_values() {
        let doc = r#"{"kind": "algebra", "field": {"Fp": 3}, "algebra": {"labels": ["1"], "unit": [1],
            "products": [[0, 0, 0, "1/3"]]}}"#;
        let err = parse_spec(doc.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("not invertible"), "{err}");
        let doc = doc.replace("1/3", "4");
        assert!(parse_spec(doc.as_bytes()).is_ok());
    }

    #[test]
    fn reports_the_failing_triple() {
        // x x = y and y x = x, but x y = 0, so (x x) x != x (x x).
        let doc = r#"{"kind": "algebra", "field": "Q", "algebra": {"labels": ["1", "x", "y"], "unit": ["1", "0", "0"],
            "products": [[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"],[0,2,2,"1"],[2,0,2,"1"],[1,1,2,"1"],[2,1,1,"1"]]}}"#;
        let err = parse_spec(doc.as_bytes()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("algebra.products") && msg.contains("associativity"), "{msg}");
    }

    #[test]
    fn malformed_input() {
        assert!(matches!(parse_spec(b"{\"kind\": "), Err(Error::Spec { .. })));
        let doc = r#"{"kind": "algebra", "field": "R"}"#;
        assert!(parse_spec(doc.as_bytes()).unwrap_err().to_string().contains("unknown field"));
    }
}
