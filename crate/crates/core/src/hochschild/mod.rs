//! Hochschild cohomology by two independent methods: normalized bar
//! cochains, and `Ext` over the enveloping algebra.
//!
//! The bar cochains are taken relative to the span `E` of a complete set of
//! orthogonal idempotents, which is a separable subalgebra, so they compute
//! the absolute groups. With the unit as the only idempotent this is the
//! usual normalized complex.

mod bar;
mod chi;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::Result;
use crate::homology::{ext_dims, ResolutionConfig};
use crate::linalg::Scalar;
use crate::module::Bimodule;

pub use bar::{AdaptedAlgebra, BarCochains, Path, DEFAULT_BAR_CAP};
pub use chi::{
    cup_compatibility, relative_bar_homology, rigidity_check, verify_mhh, ChiComparison, ChiDegree,
    CupReport, MhhReport, RelativeBarReport, RigidityReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HHMethod {
    Bar,
    Ext,
}

/// `dim HH^n(A, X)` for `n = 0..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HHTable {
    pub method: HHMethod,
    pub dims: Vec<usize>,
}

/// Options for the bar method.
#[derive(Clone, Debug)]
pub struct BarOptions {
    /// Largest admissible cochain space.
    pub cap: usize,
    /// Complete set of orthogonal idempotents; the unit alone if `None`.
    pub idempotents: Option<Vec<Vec<Scalar>>>,
}

impl Default for BarOptions {
    fn default() -> Self {
        BarOptions { cap: DEFAULT_BAR_CAP, idempotents: None }
    }
}

impl BarOptions {
    pub(crate) fn adapt(&self, a: &Algebra) -> Result<AdaptedAlgebra> {
        match &self.idempotents {
            Some(es) => AdaptedAlgebra::new(a, es),
            None => AdaptedAlgebra::trivial(a),
        }
    }
}

/// `HH^n(A, X) = Ext^n_{A^e}(A, X)`; `None` means `X = A`.
pub fn hh_via_ext(
    a: &Arc<Algebra>,
    coeffs: Option<&Bimodule>,
    n_max: usize,
    config: &ResolutionConfig,
) -> Result<HHTable> {
    let env = Arc::new(a.enveloping());
    let regular = Bimodule::regular(a.clone());
    let source = regular.as_right_module(env.clone());
    let target = coeffs.unwrap_or(&regular).as_right_module(env);
    let dims = ext_dims(&source, &target, n_max, config)?;
    Ok(HHTable { method: HHMethod::Ext, dims })
}

/// Cohomology of the normalized bar cochains; `None` means `X = A`.
pub fn hh_via_bar(a: &Algebra, coeffs: Option<&Bimodule>, n_max: usize, options: &BarOptions) -> Result<HHTable> {
    let adapted = options.adapt(a)?;
    let bar = match coeffs {
        Some(m) => BarCochains::with_coefficients(adapted, m, n_max + 1, options.cap)?,
        None => BarCochains::with_algebra_coefficients(adapted, n_max + 1, options.cap)?,
    };
    Ok(HHTable { method: HHMethod::Bar, dims: bar.cohomology_dims() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::*;
    use crate::linalg::Field;

    fn both(a: Algebra, n: usize) -> (Vec<usize>, Vec<usize>) {
        let a = Arc::new(a);
        let bar = hh_via_bar(&a, None, n, &BarOptions::default()).unwrap();
        let ext = hh_via_ext(&a, None, n, &ResolutionConfig::default()).unwrap();
        (bar.dims, ext.dims)
    }

    #[test]
    fn dual_numbers_agree() {
        let (b, e) = both(dual_numbers(Field::Rational), 4);
        assert_eq!(b, vec![2, 1, 1, 1, 1]);
        assert_eq!(e, b);
    }

    #[test]
    fn separable_algebras() {
        let (b, e) = both(full_matrix(Field::Rational, 2), 3);
        assert_eq!(b, vec![1, 0, 0, 0]);
        assert_eq!(e, b);
        let (b, e) = both(quadratic_extension(Field::Rational, 2), 3);
        assert_eq!(b, vec![2, 0, 0, 0]);
        assert_eq!(e, b);
    }

    #[test]
    fn truncated_cubic_and_path_algebra() {
        let (b, e) = both(truncated_polynomial(Field::Rational, 3, "x"), 3);
        assert_eq!(e, b);
        assert_eq!(b[0], 3);
        let (b, e) = both(path_algebra_a2(Field::Rational), 3);
        assert_eq!(e, b);
        assert_eq!(b, vec![1, 0, 0, 0]);
    }

    #[test]
    fn positive_characteristic_changes_the_answer() {
        // Over F_2 the group algebra of Z/2 is the dual numbers.
        let f = Field::Prime(2);
        let (b, e) = both(dual_numbers(f), 3);
        assert_eq!(e, b);
        assert_eq!(b, vec![2, 2, 2, 2]);
    }

    #[test]
    fn bimodule_coefficients() {
        let q = Field::Rational;
        let a = Arc::new(dual_numbers(q));
        // The regular bimodule passed explicitly goes through the general
        // coefficient path.
        let m = Bimodule::regular(a.clone());
        let bar = hh_via_bar(&a, Some(&m), 3, &BarOptions::default()).unwrap();
        let ext = hh_via_ext(&a, Some(&m), 3, &ResolutionConfig::default()).unwrap();
        assert_eq!(bar.dims, ext.dims);
    }
}
