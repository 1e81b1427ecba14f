//! Standard small algebras.

use super::Algebra;
use crate::linalg::{Field, Scalar};

fn unit_vec(field: Field, d: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); d];
    v[i] = field.one();
    v
}

/// The ground field as a one-dimensional algebra.
pub fn ground(field: Field) -> Algebra {
    Algebra::from_fn(field, vec!["1".into()], vec![field.one()], |_, _| vec![field.one()])
        .expect("ground field")
}

/// `K[x]/(x^n)` on the monomial basis `1, x, ..., x^(n-1)`.
pub fn truncated_polynomial(field: Field, n: usize, var: &str) -> Algebra {
    assert!(n >= 1);
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        })
        .collect();
    Algebra::from_fn(field, labels, unit_vec(field, n, 0), |i, j| {
        if i + j < n {
            unit_vec(field, n, i + j)
        } else {
            vec![field.zero(); n]
        }
    })
    .expect("truncated polynomial ring")
}

/// `K[x]/(x^2)`.
pub fn dual_numbers(field: Field) -> Algebra {
    truncated_polynomial(field, 2, "x")
}

/// Matrix units `E_ij`, row-major.
pub fn full_matrix(field: Field, n: usize) -> Algebra {
    let d = n * n;
    let labels = (0..d).map(|k| format!("E{}{}", k / n + 1, k % n + 1)).collect();
    let mut unit = vec![field.zero(); d];
    for i in 0..n {
        unit[i * n + i] = field.one();
    }
    Algebra::from_fn(field, labels, unit, |x, y| {
        let (a, b) = (x / n, x % n);
        let (c, e) = (y / n, y % n);
        if b == c {
            unit_vec(field, d, a * n + e)
        } else {
            vec![field.zero(); d]
        }
    })
    .expect("matrix algebra")
}

/// Upper triangular `n x n` matrices on the units `E_ij`, `i <= j`, listed
/// row by row. For `n = 2` the basis is `E11, E12, E22`.
pub fn upper_triangular(field: Field, n: usize) -> Algebra {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let d = pairs.len();
    let index = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).unwrap();
    let labels = pairs.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
    let mut unit = vec![field.zero(); d];
    for i in 0..n {
        unit[index(i, i)] = field.one();
    }
    Algebra::from_fn(field, labels, unit, |x, y| {
        let (a, b) = pairs[x];
        let (c, e) = pairs[y];
        if b == c {
            unit_vec(field, d, index(a, e))
        } else {
            vec![field.zero(); d]
        }
    })
    .expect("upper triangular algebra")
}

/// `K^n` with primitive idempotents `e_1, ..., e_n`.
pub fn product_of_fields(field: Field, n: usize) -> Algebra {
    let labels = (0..n).map(|i| format!("e{}", i + 1)).collect();
    Algebra::from_fn(field, labels, vec![field.one(); n], |i, j| {
        if i == j {
            unit_vec(field, n, i)
        } else {
            vec![field.zero(); n]
        }
    })
    .expect("product of fields")
}

/// `K[r]/(r^2 - d)` on the basis `1, r`. Over the rationals with `d` not a
/// square this is the field `Q(sqrt d)`.
pub fn quadratic_extension(field: Field, d: i64) -> Algebra {
    Algebra::from_fn(field, vec!["1".into(), "r".into()], unit_vec(field, 2, 0), |i, j| {
        match (i, j) {
            (0, k) | (k, 0) => unit_vec(field, 2, k),
            _ => vec![field.from_i64(d), field.zero()],
        }
    })
    .expect("quadratic extension")
}

/// Path algebra of the quiver `1 -a-> 2`, with paths composed left to
/// right: `e1 a = a = a e2`. Basis `e1, e2, a`.
pub fn path_algebra_a2(field: Field) -> Algebra {
    let z = || vec![field.zero(); 3];
    Algebra::from_fn(
        field,
        vec!["e1".into(), "e2".into(), "a".into()],
        vec![field.one(), field.one(), field.zero()],
        |i, j| match (i, j) {
            (0, 0) => unit_vec(field, 3, 0),
            (1, 1) => unit_vec(field, 3, 1),
            (0, 2) | (2, 1) => unit_vec(field, 3, 2),
            _ => z(),
        },
    )
    .expect("path algebra")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let q = Field::Rational;
        assert_eq!(full_matrix(q, 3).dim(), 9);
        assert_eq!(upper_triangular(q, 3).dim(), 6);
        assert_eq!(truncated_polynomial(q, 4, "t").labels()[3], "t^3");
        assert!(product_of_fields(q, 3).is_commutative());
        assert!(!path_algebra_a2(q).is_commutative());
    }

    #[test]
    fn prime_field_catalog() {
        let f = Field::Prime(2);
        assert!(full_matrix(f, 2).validate().is_valid());
        assert!(quadratic_extension(f, 1).validate().is_valid());
    }
}
