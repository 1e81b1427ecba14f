//! Resolutions, Ext and grade on the corpus modules and contexts.

use corner::battery::{Corpus, ModuleCase, SuiteOptions};
use corner::homology::{ext_dims, grade_of, FreeResolution, Grade, ResolutionConfig};
use corner::module::{hom_space, LeftModule, RightModule};
use proptest::prelude::*;

fn modules() -> Vec<ModuleCase> {
    let corpus = Corpus::load().unwrap();
    let mut out = corpus.modules();
    out.extend(corpus.generator_pairs());
    out
}

/// Pairs of modules over the same algebra.
fn pairs() -> Vec<(String, RightModule, RightModule)> {
    let ms = modules();
    let mut out = Vec::new();
    for a in &ms {
        for b in &ms {
            if a.module.algebra() == b.module.algebra() {
                out.push((format!("{} -> {}", a.subject, b.subject), a.module.clone(), b.module.clone()));
            }
        }
    }
    out
}

#[test]
fn resolutions_square_to_zero() {
    let config = ResolutionConfig::default();
    for case in modules() {
        let a = case.module.algebra().clone();
        let mut r = FreeResolution::new(&case.module, 0, &config).unwrap();
        r.extend_to(4).unwrap();
        let regular = LeftModule::regular(a);
        for n in 1..4 {
            let composite = r.tor_differential(n, &regular).mul(&r.tor_differential(n + 1, &regular));
            assert!(composite.is_zero(), "{} at degree {n}", case.subject);
        }
    }
}

#[test]
fn dual_numbers_simple_is_periodic() {
    let corpus = Corpus::load().unwrap();
    let simple = corpus.modules().into_iter().find(|m| m.subject == "dual-numbers/simple").unwrap();
    assert_eq!(ext_dims(&simple.module, &simple.module, 5, &ResolutionConfig::default()).unwrap(), vec![1; 6]);
}

/// For each context with `g = grade_C(C/CeC)`, `Ext^i_C(C/CeC, -)` vanishes
/// below `g` on both summands `eC` and `e'C` of `C`.
#[test]
fn ext_vanishes_below_the_grade_on_summands() {
    let options = SuiteOptions::default();
    let config = options.config();
    let corpus = Corpus::load().unwrap();
    for case in corpus.contexts(&options).unwrap() {
        let ctx = &case.context;
        let cbar = ctx.cbar_right();
        let g = grade_of(&cbar, 4, &config).unwrap();
        let below = match g {
            Grade::Finite(g) => g,
            Grade::Beyond(c) => c + 1,
        };
        if below == 0 {
            continue;
        }
        for summand in [ctx.ec().right_part(), ctx.e_prime_c()] {
            let ext = ext_dims(&cbar, &summand, below - 1, &config).unwrap();
            assert!(ext.iter().all(|&d| d == 0), "{}: {ext:?} below {g:?}", case.subject);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ext_zero_is_hom(pick in 0usize..1000) {
        let all = pairs();
        let (name, m, n) = &all[pick % all.len()];
        let ext = ext_dims(m, n, 1, &ResolutionConfig::default()).unwrap();
        prop_assert_eq!(ext[0], hom_space(m, n).dim(), "{}", name);
    }

    /// A larger cutoff and a different seed reproduce the same dimensions.
    #[test]
    fn ext_is_stable(pick in 0usize..1000, seed in 0u64..1000) {
        let all = pairs();
        let (name, m, n) = &all[pick % all.len()];
        let short = ext_dims(m, n, 2, &ResolutionConfig::default()).unwrap();
        let config = ResolutionConfig { seed, ..ResolutionConfig::default() };
        let long = ext_dims(m, n, 4, &config).unwrap();
        prop_assert_eq!(&short[..], &long[..=2], "{}", name);
    }
}
