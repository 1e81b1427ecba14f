//! Acceptance battery: one line per criterion with its outcome and runtime.
//! Exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use corner::battery::{run_criterion, run_suite, ContextCase, Corpus, Criterion, SuiteOptions};
use corner::io::{Check, Status};
use corner::linalg::{Field, Matrix, Subspace};
use serde_json::{json, Value};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn named<'a>(checks: &'a [Check], name: &str) -> Vec<&'a Check> {
    checks.iter().filter(|c| c.name == name).collect()
}

fn find<'a>(checks: &'a [Check], name: &str, subject: &str) -> Option<&'a Check> {
    checks.iter().find(|c| c.name == name && c.subject == subject)
}

/// Every check with the name passed; lists the ones that did not.
fn all_pass(checks: &[Check], name: &str) -> (bool, String) {
    let list = named(checks, name);
    let bad: Vec<String> =
        list.iter().filter(|c| c.status != Status::Pass).map(|c| format!("{} ({:?})", c.subject, c.status)).collect();
    (!list.is_empty() && bad.is_empty(), if bad.is_empty() { format!("{} {name}", list.len()) } else { bad.join(", ") })
}

/// `HH(K[x]/(x^n))` over the rationals from the two-periodic resolution
/// `... -> A -(n x^(n-1))-> A -(x (x) 1 - 1 (x) x)-> A -> ...`: after
/// applying `Hom_{A^e}(-, A)` the maps become `0` and multiplication by
/// `n x^(n-1)`.
fn truncated_polynomial_hh(n: usize, degrees: usize) -> Vec<usize> {
    let q = Field::Rational;
    let mult = Matrix::from_fn(q, n, n, |r, c| if c == 0 && r == n - 1 { q.from_i64(n as i64) } else { q.zero() });
    let rank = Subspace::column_space(&mult).dim();
    (0..=degrees).map(|i| if i == 0 { n } else { n - rank }).collect()
}

/// The centre of `M_n(Q)` by solving `[E_ij, X] = 0` directly; matrix
/// algebras are separable, so higher Hochschild cohomology vanishes.
fn matrix_algebra_hh(n: usize, degrees: usize) -> Vec<usize> {
    let q = Field::Rational;
    let d = n * n;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            // Entry (a, b) of E_ij X - X E_ij.
            for a in 0..n {
                for b in 0..n {
                    let mut row = vec![q.zero(); d];
                    if a == i {
                        row[j * n + b] = row[j * n + b].add(&q.one());
                    }
                    if b == j {
                        row[a * n + i] = row[a * n + i].sub(&q.one());
                    }
                    rows.push(row);
                }
            }
        }
    }
    let centre = d - Subspace::column_space(&Matrix::from_rows(q, rows).transpose()).dim();
    let mut out = vec![0; degrees + 1];
    out[0] = centre;
    out
}

fn dims(v: &Value) -> Vec<usize> {
    serde_json::from_value(v.clone()).unwrap_or_default()
}

fn criterion_1(checks: &[Check]) -> Outcome {
    let (rings, a) = all_pass(checks, "ring-axioms");
    let (pierce, b) = all_pass(checks, "pierce-closure");
    let algebras = named(checks, "ring-axioms").len();
    outcome(rings && pierce && algebras >= 12, format!("{a}; {b}"))
}

fn criterion_2(checks: &[Check]) -> Outcome {
    let (fs, a) = all_pass(checks, "fundamental-sequence");
    let (tor, b) = all_pass(checks, "omega-tor");
    let annihilated = named(checks, "fundamental-sequence").iter().all(|c| c.payload["annihilated_by_e"] == true);
    outcome(fs && tor && annihilated, format!("{a}; {b}"))
}

fn criterion_3(checks: &[Check]) -> Outcome {
    let (ok, detail) = all_pass(checks, "alpha-grade-biconditional");
    let both = named(checks, "alpha-grade-biconditional");
    let yes = both.iter().filter(|c| c.payload["alpha_bijective"] == true).count();
    outcome(ok && yes > 0 && yes < both.len(), format!("{detail}, {yes} with alpha bijective"))
}

fn criterion_4(checks: &[Check]) -> Outcome {
    let (ok, detail) = all_pass(checks, "stable-endomorphism-grade");
    let count = named(checks, "stable-endomorphism-grade").len();
    let dual = find(checks, "stable-endomorphism-grade", "dual-numbers/simple+A")
        .map(|c| c.payload["stable_grade"].clone());
    let dual_ok = dual == Some(json!({"Finite": 2}));
    outcome(ok && count >= 8 && dual_ok, format!("{detail}; dual numbers give {}", dual.unwrap_or(Value::Null)))
}

fn criterion_5(checks: &[Check]) -> Outcome {
    let (ok, detail) = all_pass(checks, "hh-method-agreement");
    let m2 = find(checks, "hh-method-agreement", "m2").map(|c| dims(&c.payload["bar"]));
    let dual = find(checks, "hh-method-agreement", "dual-numbers").map(|c| dims(&c.payload["bar"]));
    let m2_ok = m2.as_deref() == Some(&matrix_algebra_hh(2, 4)[..]);
    let dual_ok = dual.as_deref() == Some(&truncated_polynomial_hh(2, 4)[..]);
    outcome(ok && m2_ok && dual_ok, format!("{detail}; M2 {m2:?}, dual numbers {dual:?}"))
}

fn criterion_6(checks: &[Check]) -> Outcome {
    let (ok, detail) = all_pass(checks, "hh-matrix-invariance");
    let dual = find(checks, "hh-matrix-invariance", "dual-numbers").map(|c| dims(&c.payload["hh_matrix"]));
    let ground = find(checks, "hh-matrix-invariance", "ground").map(|c| dims(&c.payload["hh_matrix"]));
    let values_ok = dual.as_deref() == Some(&truncated_polynomial_hh(2, 3)[..])
        && ground.as_deref() == Some(&matrix_algebra_hh(1, 3)[..]);
    outcome(ok && values_ok && named(checks, "hh-matrix-invariance").len() == 2, format!("{detail}; {ground:?}, {dual:?}"))
}

fn criterion_7(checks: &[Check]) -> Outcome {
    let (cup, a) = all_pass(checks, "chi-cup-compatibility");
    let cup_count = named(checks, "chi-cup-compatibility").iter().all(|c| c.payload["tested"].as_u64() >= Some(10));
    let comparisons = named(checks, "chi-comparison");
    let failed: Vec<&str> = comparisons
        .iter()
        .filter(|c| c.status == Status::Fail || (c.status == Status::Inconclusive && c.payload["conclusive"] != false))
        .map(|c| c.subject.as_str())
        .collect();
    let resolved = comparisons.iter().filter(|c| c.status == Status::Pass).count();
    outcome(
        cup && cup_count && failed.is_empty() && resolved > 0,
        format!("{a}; {resolved} of {} comparisons with resolved grade pass; failing {failed:?}", comparisons.len()),
    )
}

fn criterion_8(checks: &[Check]) -> Outcome {
    let list = named(checks, "rigidity");
    let applicable: Vec<&&Check> = list.iter().filter(|c| c.status != Status::Inapplicable).collect();
    let ok = !applicable.is_empty() && applicable.iter().all(|c| c.status == Status::Pass && c.payload["hh2_c"] == 0);
    outcome(ok, format!("{} pairs satisfy the premise", applicable.len()))
}

fn criterion_9(checks: &[Check]) -> Outcome {
    let (ok, detail) = all_pass(checks, "hh-degeneration");
    let lengths = named(checks, "hh-degeneration").iter().all(|c| dims(&c.payload["sg_side"]).len() == 4);
    outcome(ok && lengths && named(checks, "hh-degeneration").len() == 2, detail)
}

fn criterion_10(checks: &[Check]) -> Outcome {
    let (ok, detail) = all_pass(checks, "invariant-comparison");
    let clauses = named(checks, "invariant-comparison")
        .iter()
        .all(|c| c.payload["annihilation"] == true && c.payload["grade_exceeds_depth"] == true);
    let shift = find(checks, "skew-group-context", "skew-q3-z3");
    let oracle = json!([[1, 0, 0, 0], [1, 0, 0, 0]]);
    let shift_ok = shift.is_some_and(|c| {
        c.status == Status::Pass
            && c.payload["defect"]["dim_sgbar"] == 0
            && c.payload["defect"]["morita_equivalence"] == true
            && c.payload["hh"] == oracle
    });
    outcome(ok && clauses && shift_ok, format!("{detail}; shift fixture {}", if shift_ok { "matches" } else { "differs" }))
}

fn main() {
    let options = SuiteOptions::default();
    let start = Instant::now();
    let corpus = Corpus::load().expect("corpus loads");
    let contexts: Vec<ContextCase> = corpus.contexts(&options).expect("contexts build");
    println!("corpus: {} fixtures, {} contexts, loaded in {:.2?}", corpus.fixtures.len(), contexts.len(), start.elapsed());

    type Judge = fn(&[Check]) -> Outcome;
    let plan: [(usize, &str, Criterion, u64, Judge); 10] = [
        (1, "ring axioms and Pierce closure", Criterion::RingAndPierce, 5, criterion_1),
        (2, "fundamental sequence", Criterion::FundamentalSequence, 30, criterion_2),
        (3, "alpha bijective iff grade >= 2", Criterion::AlphaGrade, 60, criterion_3),
        (4, "stable endomorphism grade", Criterion::StableGrade, 120, criterion_4),
        (5, "Hochschild method agreement", Criterion::HhAgreement, 120, criterion_5),
        (6, "matrix invariance of HH", Criterion::MatrixInvariance, 120, criterion_6),
        (7, "comparison map chi", Criterion::Chi, 180, criterion_7),
        (8, "rigidity", Criterion::Rigidity, 60, criterion_8),
        (9, "degeneration for skew group algebras", Criterion::Degeneration, 120, criterion_9),
        (10, "invariant battery", Criterion::Invariants, 60, criterion_10),
    ];
    let mut failures = 0;
    for (number, title, criterion, limit, judge) in plan {
        let t = Instant::now();
        let checks = run_criterion(criterion, &corpus, &contexts, &options);
        let elapsed = t.elapsed();
        let o = judge(&checks);
        let ok = o.ok && elapsed <= Duration::from_secs(limit);
        failures += usize::from(!ok);
        println!(
            "criterion {number:>2} {}: {title} ({elapsed:.2?}, limit {limit}s): {}",
            if ok { "PASS" } else { "FAIL" },
            o.detail
        );
        for c in checks.iter().filter(|c| c.status == Status::Fail) {
            println!("    failed {} on {}: {}", c.name, c.subject, c.payload);
        }
    }

    let t = Instant::now();
    let first = run_suite(&options).expect("suite runs");
    let second = run_suite(&options).expect("suite runs");
    let elapsed = t.elapsed();
    let same = first.to_json(false) == second.to_json(false);
    let each = Duration::from_millis(first.wall_time_ms.unwrap_or(0).max(second.wall_time_ms.unwrap_or(0)));
    let ok = same && each <= Duration::from_secs(600);
    failures += usize::from(!ok);
    println!(
        "criterion 11 {}: determinism ({elapsed:.2?} for two runs, limit 600s each): {} checks, reports {}, {} failing",
        if ok { "PASS" } else { "FAIL" },
        first.checks.len(),
        if same { "identical" } else { "differ" },
        first.failures().count()
    );
    for c in first.failures() {
        println!("    failed {} on {}: {}", c.name, c.subject, c.payload);
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
