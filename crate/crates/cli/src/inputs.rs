//! Turning command-line arguments into validated objects.
//!
//! An algebra comes from `--algebra FILE` or `--corpus NAME`. Modules,
//! idempotents and actions are either files holding a document over that
//! algebra, or names of objects designated in the algebra document itself.

use std::path::Path;
use std::sync::Arc;

use corner::algebra::{Algebra, Idempotent};
use corner::corpus;
use corner::group::{build_skew_group, GroupAction, SkewGroupData};
use corner::io::{parse_spec, Loaded, SpecDocument};
use corner::linalg::Scalar;
use corner::module::RightModule;
use corner::{Error, Result};

/// The algebra a command works over, with what its document designates.
pub struct Workspace {
    pub name: String,
    pub loaded: Loaded,
    /// Set when the command works over the skew group algebra.
    pub skew: Option<SkewGroupData>,
}

fn usage(message: impl Into<String>) -> Error {
    Error::Usage(message.into())
}

fn read_document(path: &Path) -> Result<SpecDocument> {
    let bytes = std::fs::read(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse_spec(&bytes).map_err(|e| match e {
        Error::Spec { location, message } => Error::Spec { location: format!("{}: {location}", path.display()), message },
        other => other,
    })
}

impl Workspace {
    pub fn open(algebra: Option<&Path>, corpus_name: Option<&str>, action: Option<&str>, skew: bool) -> Result<Self> {
        let (name, mut loaded) = match (algebra, corpus_name) {
            (Some(path), None) => {
                let doc = read_document(path)?;
                let name = doc.name.clone().unwrap_or_else(|| path.display().to_string());
                (name, doc.load()?)
            }
            (None, Some(name)) => {
                let f = corpus::load(name).map_err(|_| {
                    usage(format!("unknown corpus fixture {name:?}; available: {}", corpus::names().collect::<Vec<_>>().join(", ")))
                })?;
                (f.name, f.loaded)
            }
            (Some(_), Some(_)) => return Err(usage("give either --algebra or --corpus, not both")),
            (None, None) => return Err(usage("an algebra is required: --algebra FILE or --corpus NAME")),
        };
        if loaded.algebra.is_none() {
            return Err(usage(format!("{name}: the document carries no algebra")));
        }
        if let Some(spec) = action {
            let path = Path::new(spec);
            if !path.is_file() {
                return Err(usage(format!("action file {spec} not found")));
            }
            let doc = read_document(path)?;
            let over = doc.load_over(loaded.algebra.as_ref())?;
            loaded.action = Some(over.action.ok_or_else(|| usage(format!("{spec} holds no action")))?);
        }
        let skew = if skew {
            let act = loaded.action.as_ref().ok_or_else(|| usage("--skew needs a group action"))?;
            Some(build_skew_group(act)?)
        } else {
            None
        };
        Ok(Workspace { name, loaded, skew })
    }

    /// The algebra commands act on: the base, or `SG` under `--skew`.
    pub fn algebra(&self) -> &Arc<Algebra> {
        match &self.skew {
            Some(data) => data.skew_algebra(),
            None => self.loaded.algebra.as_ref().expect("checked on open"),
        }
    }

    pub fn subject(&self) -> String {
        if self.skew.is_some() {
            format!("{}/SG", self.name)
        } else {
            self.name.clone()
        }
    }

    /// Vertex idempotents designated for the working algebra.
    pub fn vertices(&self) -> Option<Vec<Vec<Scalar>>> {
        if self.skew.is_some() {
            self.loaded.skew.as_ref().and_then(|s| s.vertex_idempotents.clone())
        } else {
            self.loaded.vertex_idempotents.clone()
        }
    }

    pub fn action(&self) -> Result<&GroupAction> {
        self.loaded.action.as_ref().ok_or_else(|| usage("this command needs a group action: --action FILE"))
    }

    /// Loads a file holding objects over the working algebra.
    fn attached(&self, path: &Path) -> Result<Loaded> {
        read_document(path)?.load_over(Some(self.algebra()))
    }

    pub fn module(&self, spec: &str) -> Result<(String, RightModule)> {
        if spec == "regular" {
            return Ok((spec.to_string(), RightModule::regular(self.algebra().clone())));
        }
        let path = Path::new(spec);
        if path.is_file() {
            let loaded = self.attached(path)?;
            let m = loaded.modules.into_iter().next().ok_or_else(|| usage(format!("{spec} holds no module")))?;
            return Ok((m.name, m.module));
        }
        let designated = match (&self.skew, &self.loaded.skew) {
            (Some(_), Some(s)) => &s.modules,
            (Some(_), None) => return Err(usage("the document designates no modules over SG")),
            (None, _) => &self.loaded.modules,
        };
        designated
            .iter()
            .find(|m| m.name == spec)
            .map(|m| (m.name.clone(), m.module.clone()))
            .ok_or_else(|| {
                let names: Vec<&str> = designated.iter().map(|m| m.name.as_str()).collect();
                usage(format!("no module file or designated module {spec:?}; designated: [{}]", names.join(", ")))
            })
    }

    pub fn idempotent(&self, spec: &str) -> Result<(String, Idempotent)> {
        let path = Path::new(spec);
        if path.is_file() {
            let loaded = self.attached(path)?;
            return loaded.idempotents.into_iter().next().ok_or_else(|| usage(format!("{spec} holds no idempotent")));
        }
        let designated = match (&self.skew, &self.loaded.skew) {
            (Some(_), Some(s)) => &s.idempotents,
            (Some(_), None) => return Err(usage("the document designates no idempotents over SG")),
            (None, _) => &self.loaded.idempotents,
        };
        designated.iter().find(|(n, _)| n == spec).cloned().ok_or_else(|| {
            let names: Vec<&str> = designated.iter().map(|(n, _)| n.as_str()).collect();
            usage(format!("no idempotent file or designated idempotent {spec:?}; designated: [{}]", names.join(", ")))
        })
    }

    pub fn skew_data(&self) -> Result<SkewGroupData> {
        match &self.skew {
            Some(data) => Ok(data.clone()),
            None => build_skew_group(self.action()?),
        }
    }
}
