//! The verification battery over the bundled corpus. Each [`Criterion`]
//! produces a list of registry-named checks; [`run_suite`] runs all of them.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::algebra::{Algebra, Idempotent};
use crate::corpus::{self, Fixture};
use crate::error::{Error, Result};
use crate::group::{
    centre_of_sg_check, infinitesimally_outer, noether_different, separability_check, separability_directions,
    sg_context_and_defect, trace_and_invariants, verify_degeneration, verify_invariant_comparison, SkewGroupData,
};
use crate::hochschild::{
    cup_compatibility, hh_via_bar, hh_via_ext, relative_bar_homology, rigidity_check, verify_mhh, BarOptions,
    ChiComparison, DEFAULT_BAR_CAP,
};
use crate::homology::{grade_of, tor_dims, ResolutionConfig};
use crate::io::{Check, Report, Status};
use crate::linalg::Scalar;
use crate::module::{Bimodule, RightModule};
use crate::morita::{
    auslander_context, classify_context, ext_shift_check, gldim_spot_check, morita_package, tor_corner_check,
    verify_grade_theorem, wedderburn_projective, MoritaContext,
};

/// Parameters shared by every check of a suite run.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteOptions {
    pub cutoff: usize,
    /// Highest Hochschild degree for the method comparison.
    pub max_degree: usize,
    /// Highest degree of the comparison map `chi`.
    pub chi_degree: usize,
    pub cup_pairs: usize,
    pub seed: u64,
    pub resolution_cap: usize,
    pub bar_cap: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        let config = ResolutionConfig::default();
        SuiteOptions {
            cutoff: 5,
            max_degree: 4,
            chi_degree: 3,
            cup_pairs: 10,
            seed: config.seed,
            resolution_cap: config.cap,
            bar_cap: DEFAULT_BAR_CAP,
        }
    }
}

impl SuiteOptions {
    pub fn config(&self) -> ResolutionConfig {
        ResolutionConfig { seed: self.seed, cap: self.resolution_cap }
    }
}

/// The groups of checks, one per acceptance criterion, plus the checks that
/// are not tied to a criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    RingAndPierce,
    FundamentalSequence,
    AlphaGrade,
    StableGrade,
    HhAgreement,
    MatrixInvariance,
    Chi,
    Rigidity,
    Degeneration,
    Invariants,
    Contexts,
}

impl Criterion {
    pub const ALL: [Criterion; 11] = [
        Criterion::RingAndPierce,
        Criterion::FundamentalSequence,
        Criterion::AlphaGrade,
        Criterion::StableGrade,
        Criterion::HhAgreement,
        Criterion::MatrixInvariance,
        Criterion::Chi,
        Criterion::Rigidity,
        Criterion::Degeneration,
        Criterion::Invariants,
        Criterion::Contexts,
    ];
}

/// An algebra of the corpus, with its vertex idempotents if it has any.
#[derive(Clone, Debug)]
pub struct AlgebraCase {
    pub subject: String,
    pub algebra: Arc<Algebra>,
    pub vertices: Option<Vec<Vec<Scalar>>>,
}

/// A Morita context of the corpus.
#[derive(Clone, Debug)]
pub struct ContextCase {
    pub subject: String,
    pub context: MoritaContext,
}

/// A designated module of the corpus.
#[derive(Clone, Debug)]
pub struct ModuleCase {
    pub subject: String,
    pub module: RightModule,
}

/// The loaded corpus together with everything derived from it.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub fixtures: Vec<Fixture>,
    pub skew: Vec<(String, SkewGroupData)>,
}

impl Corpus {
    pub fn load() -> Result<Self> {
        let fixtures = corpus::load_all()?;
        let skew = fixtures
            .iter()
            .filter_map(|f| f.skew_data().map(|d| d.map(|d| (f.name.clone(), d))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Corpus { fixtures, skew })
    }

    pub fn algebras(&self) -> Vec<AlgebraCase> {
        let mut out = Vec::new();
        for f in &self.fixtures {
            out.push(AlgebraCase {
                subject: f.name.clone(),
                algebra: f.algebra().clone(),
                vertices: f.loaded.vertex_idempotents.clone(),
            });
            if let Some(s) = &f.loaded.skew {
                out.push(AlgebraCase {
                    subject: format!("{}/SG", f.name),
                    algebra: s.algebra.clone(),
                    vertices: s.vertex_idempotents.clone(),
                });
            }
        }
        out
    }

    /// Designated modules over the base algebras and over the skew group
    /// algebras.
    pub fn modules(&self) -> Vec<ModuleCase> {
        let mut out = Vec::new();
        for f in &self.fixtures {
            for m in &f.loaded.modules {
                out.push(ModuleCase { subject: format!("{}/{}", f.name, m.name), module: m.module.clone() });
            }
            if let Some(s) = &f.loaded.skew {
                for m in &s.modules {
                    out.push(ModuleCase { subject: format!("{}/SG/{}", f.name, m.name), module: m.module.clone() });
                }
            }
        }
        out
    }

    /// `X (+) A` for every designated module `X` over `A`.
    pub fn generator_pairs(&self) -> Vec<ModuleCase> {
        self.modules()
            .into_iter()
            .map(|m| ModuleCase {
                subject: format!("{}+A", m.subject),
                module: m.module.direct_sum(&RightModule::regular(m.module.algebra().clone())),
            })
            .collect()
    }

    /// Designated idempotents, Auslander contexts of flagged modules, and
    /// the contexts `End_SG(fS (+) SG)`.
    pub fn contexts(&self, options: &SuiteOptions) -> Result<Vec<ContextCase>> {
        let mut jobs: Vec<(String, Box<dyn Fn() -> Result<MoritaContext> + Send + Sync + '_>)> = Vec::new();
        for f in &self.fixtures {
            let a = f.algebra().clone();
            for (name, e) in &f.loaded.idempotents {
                let a = a.clone();
                jobs.push((format!("{}/{name}", f.name), Box::new(move || MoritaContext::new(&a, e))));
            }
            for m in f.loaded.modules.iter().filter(|m| m.auslander) {
                jobs.push((
                    format!("{}/End({}+A)", f.name, m.name),
                    Box::new(move || Ok(auslander_context(&m.module)?.context)),
                ));
            }
            if let Some(s) = &f.loaded.skew {
                for (name, e) in &s.idempotents {
                    let sg = s.algebra.clone();
                    jobs.push((format!("{}/SG/{name}", f.name), Box::new(move || MoritaContext::new(&sg, e))));
                }
                for m in s.modules.iter().filter(|m| m.auslander) {
                    jobs.push((
                        format!("{}/SG/End({}+SG)", f.name, m.name),
                        Box::new(move || Ok(auslander_context(&m.module)?.context)),
                    ));
                }
            }
        }
        for (name, data) in &self.skew {
            let config = options.config();
            let cutoff = options.cutoff;
            jobs.push((
                format!("{name}/End(fS+SG)"),
                Box::new(move || Ok(sg_context_and_defect(data, cutoff, &config)?.0)),
            ));
        }
        jobs.par_iter()
            .map(|(subject, build)| Ok(ContextCase { subject: subject.clone(), context: build()? }))
            .collect()
    }
}

fn payload<T: Serialize>(x: &T) -> Json {
    serde_json::to_value(x).expect("reports serialize")
}

/// A check from a fallible computation: errors from resource caps are
/// inconclusive, every other error is a failure.
fn check_from<T: Serialize>(name: &str, subject: &str, result: Result<T>, holds: impl Fn(&T) -> bool) -> Check {
    match result {
        Ok(report) => Check::new(name, subject, Status::from_bool(holds(&report)), payload(&report)),
        Err(e @ Error::ResourceCap { .. }) => Check::new(name, subject, Status::Inconclusive, json!({"error": e.to_string()})),
        Err(e) => Check::new(name, subject, Status::Fail, json!({"error": e.to_string()})),
    }
}

/// Validation of the structure constants.
pub fn ring_axioms_check(subject: &str, algebra: &Algebra) -> Check {
    let report = algebra.validate();
    let violations: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
    Check::new(
        "ring-axioms",
        subject,
        Status::from_bool(report.is_valid()),
        json!({"dim": algebra.dim(), "violations": violations}),
    )
}

pub fn pierce_check(case: &ContextCase) -> Check {
    let c = case.context.algebra();
    let result = Idempotent::new(c, case.context.e().to_vec()).and_then(|e| c.pierce(&e)).map(|p| {
        let dims = crate::algebra::Piece::ALL.map(|piece| p.dim(piece));
        json!({"dims": dims, "violations": p.closure_violations(c).len()})
    });
    check_from("pierce-closure", &case.subject, result, |r| r["violations"] == 0)
}

/// The fundamental sequence of the context and the comparison of `Omega`
/// with `Tor_2`.
pub fn fundamental_checks(case: &ContextCase, options: &SuiteOptions) -> [Check; 2] {
    let ctx = &case.context;
    let fs = ctx.fundamental_sequence();
    let seq = Check::new("fundamental-sequence", &case.subject, Status::from_bool(fs.holds()), payload(&fs));
    let tor = tor_dims(&ctx.cbar_right(), &ctx.cbar_left(), 2, &options.config())
        .map(|t| json!({"dim_omega": fs.dim_omega, "tor2": t[2]}));
    let omega = check_from("omega-tor", &case.subject, tor, |r| r["dim_omega"] == r["tor2"]);
    [seq, omega]
}

/// `alpha` bijective against the grade of `C/CeC`. The two sides share no
/// code: one is a rank computation, the other a resolution.
pub fn alpha_grade_check(case: &ContextCase, options: &SuiteOptions) -> Check {
    let ctx = &case.context;
    let (alpha, end) = ctx.alpha_map();
    let result = grade_of(&ctx.cbar_right(), options.cutoff, &options.config()).map(|grade| {
        json!({
            "alpha_rank": alpha.rank,
            "dim_c": ctx.algebra().dim(),
            "dim_end_ce": end.dim(),
            "alpha_bijective": alpha.bijective,
            "grade": grade,
            "grade_at_least_two": grade.at_least(2),
        })
    });
    check_from("alpha-grade-biconditional", &case.subject, result, |r| r["alpha_bijective"] == r["grade_at_least_two"])
        .with_cutoff(options.cutoff)
}

/// For a generator: grade of the stable endomorphism ring against the first
/// nonvanishing self-extension.
pub fn stable_grade_check(case: &ModuleCase, options: &SuiteOptions) -> Check {
    let result = verify_grade_theorem(&case.module, options.cutoff, &options.config());
    check_from("stable-endomorphism-grade", &case.subject, result, |r| r.holds()).with_cutoff(options.cutoff)
}

pub fn hh_agreement_check(case: &AlgebraCase, options: &SuiteOptions) -> Check {
    let bar_options = BarOptions { cap: options.bar_cap, idempotents: case.vertices.clone() };
    let result = hh_via_bar(&case.algebra, None, options.max_degree, &bar_options).and_then(|bar| {
        let ext = hh_via_ext(&case.algebra, None, options.max_degree, &options.config())?;
        Ok(json!({"bar": bar.dims, "ext": ext.dims, "vertices": case.vertices.as_ref().map_or(1, Vec::len)}))
    });
    check_from("hh-method-agreement", &case.subject, result, |r| r["bar"] == r["ext"])
}

/// `HH(M_2(A))` through the bar cochains of `M_2(A)` against `HH(A)` through
/// `Ext` over `A^e`, and `chi` for the corner `E11 (x) 1`.
pub fn matrix_invariance_check(subject: &str, a: &Arc<Algebra>, n_max: usize, options: &SuiteOptions) -> Check {
    let result = (|| {
        let m2 = a.matrix_algebra(2);
        let mut e = m2.zero_vector();
        e[..a.dim()].clone_from_slice(a.unit());
        let chi = ChiComparison::new(&m2, &e, n_max + 1, options.bar_cap)?;
        let degrees: Vec<_> = (0..=n_max).map(|n| chi.degree(n)).collect();
        let hh_a = hh_via_ext(a, None, n_max, &options.config())?.dims;
        Ok(json!({
            "hh_matrix": chi.hh_c()[..=n_max].to_vec(),
            "hh_a": hh_a,
            "chi_bijective": degrees.iter().all(|d| d.injective && d.surjective),
        }))
    })();
    check_from("hh-matrix-invariance", subject, result, |r| r["hh_matrix"] == r["hh_a"] && r["chi_bijective"] == true)
}

/// Cup compatibility of `chi` on sampled pairs, and the comparison of `chi`
/// with the grade of `C/CeC`.
pub fn chi_checks(case: &ContextCase, options: &SuiteOptions) -> [Check; 2] {
    let ctx = &case.context;
    let cup = ChiComparison::new(ctx.algebra(), ctx.e(), options.chi_degree, options.bar_cap)
        .map(|chi| cup_compatibility(&chi, options.cup_pairs, options.seed));
    let wanted = options.cup_pairs;
    let cup = check_from("chi-cup-compatibility", &case.subject, cup, |r| r.holds(wanted));
    let mhh = verify_mhh(ctx, options.cutoff, options.chi_degree, &options.config(), options.bar_cap);
    let mhh = match mhh {
        Ok(r) if r.holds() && !r.conclusive => Check::new("chi-comparison", &case.subject, Status::Inconclusive, payload(&r)),
        other => check_from("chi-comparison", &case.subject, other, |r| r.holds()),
    };
    [cup, mhh.with_cutoff(options.cutoff)]
}

pub fn rigidity_module_check(case: &ModuleCase, options: &SuiteOptions) -> Check {
    match rigidity_check(&case.module, &options.config(), options.bar_cap) {
        Ok(r) if !r.premise => Check::new("rigidity", &case.subject, Status::Inapplicable, payload(&r)),
        other => check_from("rigidity", &case.subject, other, |r| r.holds()),
    }
}

/// `HH(SG, SG)` against `HH(S, SG)^G` in degrees up to 3.
pub fn degeneration_check(name: &str, data: &SkewGroupData, options: &SuiteOptions) -> Check {
    let regular = Bimodule::regular(data.skew_algebra().clone());
    match verify_degeneration(data, &regular, 3, &options.config(), options.bar_cap) {
        Ok(r) if !r.applicable => Check::new("hh-degeneration", name, Status::Inapplicable, payload(&r)),
        other => check_from("hh-degeneration", name, other, |r| r.holds()),
    }
}

/// Structure of `SG`, the trace, outerness, the centre and the context
/// `End_SG(fS (+) SG)`.
pub fn skew_structure_checks(name: &str, data: &SkewGroupData, options: &SuiteOptions) -> Vec<Check> {
    let mut out = Vec::new();
    let sg = data.skew_algebra();
    out.push(Check::new(
        "skew-group-structure",
        name,
        Status::from_bool(data.check_invariants()),
        json!({"dim_s": data.base().dim(), "order": data.order(), "dim_sg": sg.dim()}),
    ));
    let trace = trace_and_invariants(data.action());
    let trace_ok = trace.image_invariant && trace.subalgebra && (!trace.order_invertible || trace.surjective);
    out.push(Check::new("trace-and-invariants", name, Status::from_bool(trace_ok), payload(&trace)));
    let outer = infinitesimally_outer(data);
    out.push(Check::new(
        "infinitesimally-outer",
        name,
        Status::from_bool(outer.consistent()),
        json!({
            "outer": outer.outer,
            "twisted_dims": outer.twisted_dims,
            "centralizer_dim": outer.centralizer_dim,
            "witness_group_element": outer.witness.as_ref().map(|w| w.0),
        }),
    ));
    let centre = centre_of_sg_check(data);
    let status = if centre.applicable { Status::from_bool(centre.holds()) } else { Status::Inapplicable };
    out.push(Check::new("centre-of-skew-group", name, status, payload(&centre)));
    let context = sg_context_and_defect(data, options.cutoff, &options.config()).and_then(|(_, defect)| {
        // A Morita equivalence between R and SG must preserve Hochschild
        // cohomology.
        let hh = if defect.morita_equivalence {
            let hh_r = hh_via_ext(data.invariant_ring(), None, 3, &options.config())?.dims;
            let hh_sg = hh_via_ext(sg, None, 3, &options.config())?.dims;
            Some((hh_r, hh_sg))
        } else {
            None
        };
        Ok(json!({"defect": defect, "holds": defect.holds(), "hh": hh}))
    });
    out.push(
        check_from("skew-group-context", name, context, |c| {
            c["holds"] == true && c["hh"].as_array().map_or(true, |p| p[0] == p[1])
        })
        .with_cutoff(options.cutoff),
    );
    out
}

/// The Noether different, separability, and the comparison of the grade of
/// `SG/SfS` with the depth of the different.
pub fn invariant_checks(name: &str, data: &SkewGroupData, options: &SuiteOptions) -> Vec<Check> {
    let mut out = Vec::new();
    let r = data.invariant_space();
    let different = noether_different(data.base(), r).map(|d| {
        json!({"tensor_dim": d.tensor_dim, "invariants_dim": d.invariants_dim, "theta_dim": d.theta.dim(), "is_ideal": d.is_ideal})
    });
    out.push(match different {
        Err(Error::NotCommutative) => Check::new("noether-different", name, Status::Inapplicable, Json::Null),
        other => check_from("noether-different", name, other, |d| d["is_ideal"] == true),
    });
    let sep = separability_check(data.base(), r)
        .map(|s| json!({"separable": s.separable, "theta_is_centre": s.theta_is_centre, "consistent": s.consistent()}));
    out.push(check_from("separability", name, sep, |s| s["consistent"] == true));
    out.push(check_from("separability-directions", name, separability_directions(data), |d| d.holds()));
    let comparison = verify_invariant_comparison(data, options.cutoff, &options.config(), options.bar_cap);
    out.push(match comparison {
        Err(Error::NotCommutative) => Check::new("invariant-comparison", name, Status::Inapplicable, Json::Null),
        other => check_from("invariant-comparison", name, other, |c| c.holds()).with_cutoff(options.cutoff),
    });
    out
}

/// The Morita package, Tor and Ext comparisons, the relative bar complex and
/// the classification flags of one context.
pub fn context_structure_checks(case: &ContextCase, options: &SuiteOptions) -> Vec<Check> {
    let config = options.config();
    let ctx = &case.context;
    let s = case.subject.as_str();
    let package = morita_package(ctx);
    let status = if package.applicable { Status::from_bool(package.holds()) } else { Status::Inapplicable };
    vec![
        Check::new("morita-package", s, status, payload(&package)),
        check_from("tor-corner", s, tor_corner_check(ctx, 3, &config), |r| r.holds()),
        check_from("ext-shift", s, ext_shift_check(ctx, options.cutoff, &config), |r| r.holds()).with_cutoff(options.cutoff),
        check_from("relative-bar-homology", s, relative_bar_homology(ctx, 3, &config, options.bar_cap), |r| r.holds()),
        check_from("context-classification", s, classify_context(ctx, options.cutoff, &config), |r| r.consistent())
            .with_cutoff(options.cutoff),
    ]
}

/// Projectivity with its double dual, and the corners of the Auslander
/// context of the module.
pub fn module_structure_checks(case: &ModuleCase) -> [Check; 2] {
    let s = case.subject.as_str();
    let w = wedderburn_projective(&case.module);
    // A projective generator returns the ring as its double dual.
    let wp = if w.projective && crate::module::is_generator(&case.module) {
        Check::new("wedderburn-projective", s, Status::from_bool(w.holds()), payload(&w))
    } else {
        Check::new("wedderburn-projective", s, Status::Inapplicable, payload(&w))
    };
    let corners = auslander_context(&case.module)
        .map(|a| json!({"corners_match": a.corners_match(), "dim_c": a.context.algebra().dim()}));
    let corners = check_from("auslander-corners", s, corners, |r| r["corners_match"] == true);
    [wp, corners]
}

/// The global dimension implication; it only speaks about generators.
pub fn gldim_check(case: &ModuleCase, options: &SuiteOptions) -> Check {
    let s = case.subject.as_str();
    match gldim_spot_check(&case.module, options.cutoff, &options.config()) {
        Ok(r) if !r.generator => Check::new("gldim-projectivity", s, Status::Inapplicable, payload(&r)),
        Ok(r) if !r.determined() => Check::new("gldim-projectivity", s, Status::Inconclusive, payload(&r)),
        other => check_from("gldim-projectivity", s, other, |r| r.holds()),
    }
    .with_cutoff(options.cutoff)
}

fn ring_and_pierce(corpus: &Corpus, contexts: &[ContextCase]) -> Vec<Check> {
    let mut checks: Vec<Check> =
        corpus.algebras().par_iter().map(|case| ring_axioms_check(&case.subject, &case.algebra)).collect();
    checks.par_extend(contexts.par_iter().map(pierce_check));
    checks
}

fn matrix_invariance(corpus: &Corpus, options: &SuiteOptions) -> Vec<Check> {
    ["ground", "dual-numbers"]
        .par_iter()
        .filter_map(|name| corpus.fixtures.iter().find(|f| f.name == *name))
        .map(|f| matrix_invariance_check(&f.name, f.algebra(), 3, options))
        .collect()
}

fn invariants(corpus: &Corpus, options: &SuiteOptions) -> Vec<Check> {
    corpus
        .skew
        .par_iter()
        .flat_map_iter(|(name, data)| {
            let mut checks = skew_structure_checks(name, data, options);
            checks.extend(invariant_checks(name, data, options));
            checks
        })
        .collect()
}

/// Checks on contexts and modules that are not tied to an acceptance
/// criterion.
fn context_checks(corpus: &Corpus, contexts: &[ContextCase], options: &SuiteOptions) -> Vec<Check> {
    let mut checks: Vec<Check> =
        contexts.par_iter().flat_map_iter(|case| context_structure_checks(case, options)).collect();
    checks.par_extend(corpus.modules().par_iter().flat_map_iter(module_structure_checks));
    let mut cases = corpus.modules();
    cases.extend(corpus.generator_pairs());
    checks.par_extend(cases.par_iter().map(|case| gldim_check(case, options)));
    checks
}

/// Runs one group of checks on a loaded corpus.
pub fn run_criterion(
    criterion: Criterion,
    corpus: &Corpus,
    contexts: &[ContextCase],
    options: &SuiteOptions,
) -> Vec<Check> {
    match criterion {
        Criterion::RingAndPierce => ring_and_pierce(corpus, contexts),
        Criterion::FundamentalSequence => {
            contexts.par_iter().flat_map_iter(|case| fundamental_checks(case, options)).collect()
        }
        Criterion::AlphaGrade => contexts.par_iter().map(|case| alpha_grade_check(case, options)).collect(),
        Criterion::StableGrade => {
            corpus.generator_pairs().par_iter().map(|case| stable_grade_check(case, options)).collect()
        }
        Criterion::HhAgreement => corpus.algebras().par_iter().map(|case| hh_agreement_check(case, options)).collect(),
        Criterion::MatrixInvariance => matrix_invariance(corpus, options),
        Criterion::Chi => contexts.par_iter().flat_map_iter(|case| chi_checks(case, options)).collect(),
        Criterion::Rigidity => corpus.modules().par_iter().map(|case| rigidity_module_check(case, options)).collect(),
        Criterion::Degeneration => {
            corpus.skew.par_iter().map(|(name, data)| degeneration_check(name, data, options)).collect()
        }
        Criterion::Invariants => invariants(corpus, options),
        Criterion::Contexts => context_checks(corpus, contexts, options),
    }
}

/// The full battery. The report lists the checks sorted by name and
/// subject, so it does not depend on scheduling.
pub fn run_suite(options: &SuiteOptions) -> Result<Report> {
    let start = Instant::now();
    let corpus = Corpus::load()?;
    let contexts = corpus.contexts(options)?;
    let groups: Vec<Vec<Check>> =
        Criterion::ALL.par_iter().map(|&c| run_criterion(c, &corpus, &contexts, options)).collect();
    let mut report = Report::new(json!({"command": "suite", "options": options}));
    report.extend(groups.into_iter().flatten());
    report.sort();
    report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    Ok(report)
}
