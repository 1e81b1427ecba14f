use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

/// Frozen check names with a one-line description each. Names are never
/// renamed or reused, so reports can be compared across versions.
pub const REGISTRY: &[(&str, &str)] = &[
    ("alpha-grade-biconditional", "alpha_C is bijective exactly when grade C/CeC >= 2"),
    ("auslander-corners", "End_A(M + A) has corners End_A(M) and A"),
    ("centre-of-skew-group", "Z(SG) agrees with Z(S)^G for outer actions"),
    ("chi-comparison", "chi is bijective below g - 1, injective at g - 1, and HH(C/A) vanishes below g"),
    ("chi-cup-compatibility", "chi is multiplicative on sampled cocycle pairs up to coboundaries"),
    ("context-classification", "Morita, Auslander and Wedderburn flags agree with their characterizations"),
    ("determinism", "two runs of the same job give identical reports"),
    ("ext-shift", "Ext of Ce (x)_A eC against Ext of C/CeC shifted by one"),
    ("ext-table", "dimensions of Ext between two modules"),
    ("fundamental-sequence", "exactness of 0 -> Omega -> Ce (x)_A eC -> C -> C/CeC -> 0"),
    ("gldim-projectivity", "for a generator M, finite global dimension d of End_A(M) with vanishing self-extensions below d forces M projective and gldim A = d"),
    ("grade", "grade of a module"),
    ("hh-degeneration", "HH(SG, X) agrees with HH(S, X)^G"),
    ("hh-matrix-invariance", "HH of M_2(A) agrees with HH of A"),
    ("hh-method-agreement", "bar complex and enveloping Ext give the same HH dimensions"),
    ("hh-table", "dimensions of Hochschild cohomology by one method"),
    ("infinitesimally-outer", "twisted centralizers of S in SG"),
    ("invariant-comparison", "Noether different, depth and grade of SG/SfS, and HH of S^G"),
    ("morita-package", "consequences of CeC = C"),
    ("noether-different", "theta(S/R) is an ideal of S"),
    ("omega-tor", "dim Omega equals dim Tor_2^C(C/CeC, C/CeC)"),
    ("pierce-closure", "products of Pierce pieces land in the expected pieces"),
    ("relative-bar-homology", "homology of the relative bar complex B(C/A)"),
    ("rigidity", "Ext^1_A(M, M) = 0 and HH^2(A) = 0 force HH^2(End_A(M + A)) = 0"),
    ("ring-axioms", "associativity and unit of the structure constants"),
    ("separability", "splitting of S (x)_R S -> S as bimodules"),
    ("separability-directions", "SG/SfS = 0 against separability of S over R"),
    ("skew-group-context", "defects of the context End_SG(fS + SG)"),
    ("skew-group-structure", "f^2 = |G| f and fg = gf = f in SG"),
    ("stable-endomorphism-grade", "grade of the stable endomorphism ring of a generator against its self-extensions"),
    ("tor-corner", "Tor^A(Ce, eC) against Tor^A(M, N), with e acting by zero"),
    ("trace-and-invariants", "trace map onto the invariant ring"),
    ("wedderburn-projective", "projectivity and double dual of a module"),
];

pub fn is_registered(name: &str) -> bool {
    REGISTRY.iter().any(|(n, _)| *n == name)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inapplicable,
    Inconclusive,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// What the check ran on, e.g. a corpus fixture and module.
    pub subject: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
    #[serde(default)]
    pub payload: Json,
}

impl Check {
    /// # Panics
    /// If `name` is not in [`REGISTRY`].
    pub fn new(name: &str, subject: impl Into<String>, status: Status, payload: Json) -> Self {
        assert!(is_registered(name), "unregistered check name {name}");
        Check { name: name.to_string(), subject: subject.into(), status, cutoff: None, payload }
    }

    pub fn with_cutoff(mut self, cutoff: usize) -> Self {
        self.cutoff = Some(cutoff);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub job: Json,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl Report {
    pub fn new(job: Json) -> Self {
        Report { job, checks: Vec::new(), wall_time_ms: None }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    /// Orders the checks by name and subject, so that reports do not depend
    /// on the order in which jobs finished.
    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| (&a.name, &a.subject).cmp(&(&b.name, &b.subject)));
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    /// 0 when no check failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// Pretty JSON; the wall time is left out unless asked for, which makes
    /// the output byte-for-byte reproducible.
    pub fn to_json(&self, with_time: bool) -> String {
        let mut r = self.clone();
        r.sort();
        if !with_time {
            r.wall_time_ms = None;
        }
        let mut s = serde_json::to_string_pretty(&r).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn registry_is_sorted_and_unique() {
        let names: Vec<&str> = REGISTRY.iter().map(|(n, _)| *n).collect();
        let mut sorted = names.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(names, sorted);
    }

    #[test]
    #[should_panic(expected = "unregistered")]
    fn unknown_names_are_rejected() {
        Check::new("no-such-check", "x", Status::Pass, json!(null));
    }

    #[test]
    fn ordering_and_exit_code() {
        let mut r = Report::new(json!({"command": "test"}));
        r.push(Check::new("rigidity", "b", Status::Pass, json!(null)));
        r.push(Check::new("grade", "a", Status::Inconclusive, json!(null)));
        r.wall_time_ms = Some(12);
        assert_eq!(r.exit_code(), 0);
        let text = r.to_json(false);
        assert!(text.find("grade").unwrap() < text.find("rigidity").unwrap());
        assert!(!text.contains("wall_time"));
        r.push(Check::new("ring-axioms", "c", Status::Fail, json!(null)));
        assert_eq!(r.exit_code(), 1);
    }
}
