//! Skew group algebras of the two bundled actions.

use corner::battery::{Corpus, SuiteOptions};
use corner::group::sg_context_and_defect;
use corner::hochschild::{hh_via_bar, hh_via_ext, BarOptions};
use corner::homology::grade_of;

/// For `C = End_SG(fS (+) SG)` with `C/Ce'C = 0`, tensoring with `Ce'` is an
/// equivalence, so `C/CeC` has the same grade over `C` as `SG/SfS` over `SG`.
#[test]
fn grade_is_preserved_when_the_other_defect_vanishes() {
    let options = SuiteOptions::default();
    let corpus = Corpus::load().unwrap();
    let mut seen = 0;
    for (name, data) in &corpus.skew {
        let (ctx, defect) = sg_context_and_defect(data, options.cutoff, &options.config()).unwrap();
        if defect.dim_cbar_prime != 0 {
            continue;
        }
        seen += 1;
        let grade_c = grade_of(&ctx.cbar_right(), options.cutoff, &options.config()).unwrap();
        assert_eq!(grade_c, defect.grade_sgbar, "{name}");
    }
    assert_eq!(seen, 2);
}

#[test]
fn shift_action_is_a_morita_equivalence() {
    let options = SuiteOptions::default();
    let corpus = Corpus::load().unwrap();
    let (_, data) = corpus.skew.iter().find(|(n, _)| n == "skew-q3-z3").unwrap();
    let (_, defect) = sg_context_and_defect(data, options.cutoff, &options.config()).unwrap();
    assert_eq!(defect.dim_sgbar, 0);
    assert!(defect.morita_equivalence);
    // SG is a 3 x 3 matrix algebra over the invariant ring Q.
    let sg = data.skew_algebra();
    assert_eq!(sg.dim(), 9);
    assert_eq!(sg.centre().dim(), 1);
    assert_eq!(hh_via_ext(sg, None, 3, &options.config()).unwrap().dims, vec![1, 0, 0, 0]);
}

#[test]
fn sign_action_on_the_cubic() {
    let corpus = Corpus::load().unwrap();
    let (_, data) = corpus.skew.iter().find(|(n, _)| n == "skew-cubic-z2").unwrap();
    assert_eq!(data.invariant_ring().dim(), 2);
    let sg = data.skew_algebra();
    let bar = hh_via_bar(sg, None, 3, &BarOptions::default()).unwrap();
    let ext = hh_via_ext(sg, None, 3, &SuiteOptions::default().config()).unwrap();
    assert_eq!(bar.dims, ext.dims);
    assert_eq!(bar.dims[0], sg.centre().dim());
}
