//! Command-line front end: every command prints a JSON report and exits
//! with 0 when no check failed, 1 when one did, 2 on usage or input errors
//! and 3 when a computation hits a resource cap.

mod inputs;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use corner::battery::{
    alpha_grade_check, chi_checks, context_structure_checks, degeneration_check, fundamental_checks, gldim_check,
    hh_agreement_check, invariant_checks, module_structure_checks, pierce_check, rigidity_module_check,
    ring_axioms_check, run_suite, skew_structure_checks, stable_grade_check, AlgebraCase, ContextCase, ModuleCase,
    SuiteOptions,
};
use corner::hochschild::{hh_via_bar, hh_via_ext, BarOptions};
use corner::homology::{ext_dims, grade_of};
use corner::io::{Check, Report, Status};
use corner::module::{hom_space, is_generator, RightModule};
use corner::morita::{auslander_context, MoritaContext};
use corner::{Error, Result};

use inputs::Workspace;

/// Environment variables read for the resource caps.
const RESOLUTION_CAP_VAR: &str = "CORNER_RESOLUTION_CAP";
const BAR_CAP_VAR: &str = "CORNER_BAR_CAP";

#[derive(Parser)]
#[command(name = "corner", version, about = "Exact computations with Morita contexts of finite dimensional algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Source {
    /// JSON document holding the algebra and its designated objects.
    #[arg(long, value_name = "FILE")]
    algebra: Option<PathBuf>,
    /// A bundled corpus fixture instead of a file.
    #[arg(long, value_name = "NAME")]
    corpus: Option<String>,
    /// JSON document holding a group action on the algebra.
    #[arg(long, value_name = "FILE")]
    action: Option<String>,
    /// Work over the skew group algebra of the action.
    #[arg(long)]
    skew: bool,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value_t = 5)]
    cutoff: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest free module a resolution may build, in scalars.
    #[arg(long, env = RESOLUTION_CAP_VAR)]
    resolution_cap: Option<usize>,
    /// Largest bar cochain space, in scalars.
    #[arg(long, env = BAR_CAP_VAR)]
    bar_cap: Option<usize>,
    /// Leave the wall time out of the report.
    #[arg(long)]
    no_time: bool,
    /// Write the report here instead of standard output.
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Bar,
    Ext,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra document and everything it designates.
    Validate {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
    },
    /// Pierce decomposition of an idempotent and its closure under products.
    Pierce {
        #[command(flatten)]
        source: Source,
        /// Idempotent file, or the name of a designated idempotent.
        #[arg(long)]
        idempotent: String,
        #[command(flatten)]
        common: Common,
    },
    /// Classify the Morita context of an idempotent.
    Classify {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        idempotent: String,
        #[command(flatten)]
        common: Common,
    },
    /// Dimensions of Ext between two modules.
    Ext {
        #[command(flatten)]
        source: Source,
        /// Module file, designated module name, or `regular`.
        #[arg(long)]
        module: String,
        /// Second argument of Ext; the module itself if absent.
        #[arg(long)]
        target: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Grade of a module, and for generators the stable endomorphism grade.
    Grade {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        module: String,
        #[command(flatten)]
        common: Common,
    },
    /// Hochschild cohomology dimensions.
    Hh {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[command(flatten)]
        common: Common,
    },
    /// The comparison map chi of the context of an idempotent.
    Chi {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        idempotent: String,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 10)]
        pairs: usize,
        #[command(flatten)]
        common: Common,
    },
    /// The Auslander context End(M + A) of a module.
    Auslander {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        module: String,
        #[command(flatten)]
        common: Common,
    },
    /// Skew group algebra of an action: structure, centre, degeneration.
    Skew {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
    },
    /// Invariant ring, Noether different and separability of an action.
    Invariants {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
    },
    /// The full battery over the bundled corpus.
    Suite {
        #[command(flatten)]
        common: Common,
    },
}

impl Common {
    /// Flags and environment first, then the job section of the document,
    /// then defaults.
    fn options(&self, job: Option<&corner::io::JobSpec>) -> SuiteOptions {
        let mut o = SuiteOptions { cutoff: self.cutoff, ..SuiteOptions::default() };
        if let Some(job) = job {
            if let Some(c) = job.resolution_cap {
                o.resolution_cap = c;
            }
            if let Some(c) = job.bar_cap {
                o.bar_cap = c;
            }
            if let Some(d) = job.max_degree {
                o.max_degree = d;
            }
        }
        if let Some(seed) = self.seed {
            o.seed = seed;
        }
        if let Some(c) = self.resolution_cap {
            o.resolution_cap = c;
        }
        if let Some(c) = self.bar_cap {
            o.bar_cap = c;
        }
        o
    }
}

fn open(source: &Source) -> Result<Workspace> {
    Workspace::open(source.algebra.as_deref(), source.corpus.as_deref(), source.action.as_deref(), source.skew)
}

fn context_case(ws: &Workspace, idempotent: &str) -> Result<ContextCase> {
    let (name, e) = ws.idempotent(idempotent)?;
    Ok(ContextCase { subject: format!("{}/{name}", ws.subject()), context: MoritaContext::new(ws.algebra(), &e)? })
}

fn module_case(ws: &Workspace, module: &str) -> Result<ModuleCase> {
    let (name, module) = ws.module(module)?;
    Ok(ModuleCase { subject: format!("{}/{name}", ws.subject()), module })
}

fn with_regular(case: &ModuleCase) -> ModuleCase {
    ModuleCase {
        subject: format!("{}+A", case.subject),
        module: case.module.direct_sum(&RightModule::regular(case.module.algebra().clone())),
    }
}

fn source_echo(source: &Source) -> serde_json::Value {
    json!({
        "algebra": source.algebra.as_ref().map(|p| p.display().to_string()),
        "corpus": source.corpus,
        "action": source.action,
        "skew": source.skew,
    })
}

/// Runs a command; returns the report and where to write it.
fn run(command: Command) -> Result<(Report, Common)> {
    match command {
        Command::Suite { common } => {
            let options = common.options(None);
            Ok((run_suite(&options)?, common))
        }
        Command::Validate { source, common } => {
            let ws = open(&source)?;
            let options = common.options(Some(&ws.loaded.job));
            let mut report = Report::new(json!({"command": "validate", "source": source_echo(&source), "options": options}));
            report.push(ring_axioms_check(&ws.name, ws.loaded.algebra.as_ref().expect("checked on open")));
            if let Some(s) = &ws.loaded.skew {
                report.push(ring_axioms_check(&format!("{}/SG", ws.name), &s.algebra));
            }
            Ok((report, common))
        }
        Command::Pierce { source, idempotent, common } => {
            let ws = open(&source)?;
            let options = common.options(Some(&ws.loaded.job));
            let case = context_case(&ws, &idempotent)?;
            let mut report = Report::new(json!({
                "command": "pierce", "source": source_echo(&source), "idempotent": idempotent, "options": options,
            }));
            report.push(pierce_check(&case));
            Ok((report, common))
        }
        Command::Classify { source, idempotent, common } => {
            let ws = open(&source)?;
            let options = common.options(Some(&ws.loaded.job));
            let case = context_case(&ws, &idempotent)?;
            let mut report = Report::new(json!({
                "command": "classify", "source": source_echo(&source), "idempotent": idempotent, "options": options,
            }));
            report.push(pierce_check(&case));
            report.extend(fundamental_checks(&case, &options));
            report.push(alpha_grade_check(&case, &options));
            report.extend(context_structure_checks(&case, &options));
            Ok((report, common))
        }
        Command::Ext { source, module, target, common } => {
            let ws = open(&source)?;
            let options = common.options(Some(&ws.loaded.job));
            let (m_name, m) = ws.module(&module)?;
            let (n_name, n) = match &target {
                Some(t) => ws.module(t)?,
                None => (m_name.clone(), m.clone()),
            };
            let dims = ext_dims(&m, &n, options.cutoff, &options.config())?;
            let hom = hom_space(&m, &n).dim();
            let mut report = Report::new(json!({
                "command": "ext", "source": source_echo(&source), "module": module, "target": target, "options": options,
            }));
            report.push(
                Check::new(
                    "ext-table",
                    format!("{}/Ext({m_name},{n_name})", ws.subject()),
                    Status::from_bool(dims[0] == hom),
                    json!({"dims": dims, "hom_dim": hom}),
                )
                .with_cutoff(options.cutoff),
            );
            Ok((report, common))
        }
        Command::Grade { source, module, common } => {
            let ws = open(&source)?;
            let options = common.options(Some(&ws.loaded.job));
            let case = module_case(&ws, &module)?;
            let grade = grade_of(&case.module, options.cutoff, &options.config())?;
            let generator = is_generator(&case.module);
            let mut report = Report::new(json!({
                "command": "grade", "source": source_echo(&source), "module": module, "options": options,
            }));
            report.push(
                Check::new("grade", &case.subject, Status::Pass, json!({"grade": grade, "generator": generator}))
                    .with_cutoff(options.cutoff),
            );
            if generator {
                report.push(stable_grade_check(&case, &options));
            }
            Ok((report, common))
        }
        Command::Hh { source, max_degree, method, common } => {
            let ws = open(&source)?;
            let mut options = common.options(Some(&ws.loaded.job));
            options.max_degree = max_degree;
            let case = AlgebraCase { subject: ws.subject(), algebra: ws.algebra().clone(), vertices: ws.vertices() };
            let mut report = Report::new(json!({
                "command": "hh", "source": source_echo(&source), "max_degree": max_degree, "options": options,
            }));
            let table = match method {
                Method::Both => {
                    report.push(hh_agreement_check(&case, &options));
                    return Ok((report, common));
                }
                Method::Bar => {
                    let bar = BarOptions { cap: options.bar_cap, idempotents: case.vertices.clone() };
                    hh_via_bar(&case.algebra, None, max_degree, &bar)?
                }
                Method::Ext => hh_via_ext(&case.algebra, None, max_degree, &options.config())?,
            };
            report.push(Check::new("hh-table", &case.subject, Status::Pass, serde_json::to_value(&table).expect("serializes")));
            Ok((report, common))
        }
        Command::Chi { source, idempotent, max_degree, pairs, common } => {
            let ws = open(&source)?;
            let mut options = common.options(Some(&ws.loaded.job));
            options.chi_degree = max_degree;
            options.cup_pairs = pairs;
            let case = context_case(&ws, &idempotent)?;
            let mut report = Report::new(json!({
                "command": "chi", "source": source_echo(&source), "idempotent": idempotent, "options": options,
            }));
            report.extend(chi_checks(&case, &options));
            Ok((report, common))
        }
        Command::Auslander { source, module, common } => {
            let ws = open(&source)?;
            let options = common.options(Some(&ws.loaded.job));
            let case = module_case(&ws, &module)?;
            let context = ContextCase {
                subject: format!("{}/End({}+A)", ws.subject(), case.subject.rsplit('/').next().unwrap_or_default()),
                context: auslander_context(&case.module)?.context,
            };
            let pair = with_regular(&case);
            let mut report = Report::new(json!({
                "command": "auslander", "source": source_echo(&source), "module": module, "options": options,
            }));
            report.extend(module_structure_checks(&case));
            report.push(gldim_check(&case, &options));
            report.push(gldim_check(&pair, &options));
            report.push(stable_grade_check(&pair, &options));
            report.push(rigidity_module_check(&case, &options));
            report.push(pierce_check(&context));
            report.extend(fundamental_checks(&context, &options));
            report.push(alpha_grade_check(&context, &options));
            report.extend(context_structure_checks(&context, &options));
            Ok((report, common))
        }
        Command::Skew { source, common } => {
            let ws = open(&source)?;
            let options = common.options(Some(&ws.loaded.job));
            let data = ws.skew_data()?;
            let mut report = Report::new(json!({"command": "skew", "source": source_echo(&source), "options": options}));
            report.push(ring_axioms_check(&format!("{}/SG", ws.name), data.skew_algebra()));
            report.extend(skew_structure_checks(&ws.name, &data, &options));
            report.push(degeneration_check(&ws.name, &data, &options));
            Ok((report, common))
        }
        Command::Invariants { source, common } => {
            let ws = open(&source)?;
            let options = common.options(Some(&ws.loaded.job));
            let data = ws.skew_data()?;
            let mut report =
                Report::new(json!({"command": "invariants", "source": source_echo(&source), "options": options}));
            report.extend(invariant_checks(&ws.name, &data, &options));
            Ok((report, common))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (mut report, common) = match run(cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    let text = report.to_json(!common.no_time);
    match &common.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(Error::Usage(String::new()).exit_code() as u8);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
