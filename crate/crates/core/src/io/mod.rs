//! JSON documents for algebras, modules, idempotents and group actions, and
//! machine-readable reports.

mod report;
mod spec;

pub use report::{is_registered, Check, Report, Status, REGISTRY};
pub use spec::{
    action_spec, emit_spec, idempotent_spec, matrix_spec, module_spec, parse_spec, vertex_spec, ActionSpec, AlgebraSpec, FieldSpec,
    GroupSpec, IdempotentSpec, JobSpec, Kind, Loaded, ModuleSpec, NamedModule, SkewObjects, SkewSpec, SpecDocument,
    Value,
};
