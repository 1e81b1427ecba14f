use serde::{Deserialize, Serialize};

use super::{Algebra, Idempotent};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, Subspace};

/// The four Pierce summands of `C` for an idempotent `e` with complement
/// `e' = 1 - e`, laid out as the `(2 x 2)`-matrix pattern
///
/// ```text
/// ( B = e'Ce'   M = e'Ce )
/// ( N = eCe'    A = eCe  )
/// ```
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Piece {
    B,
    M,
    N,
    A,
}

impl Piece {
    pub const ALL: [Piece; 4] = [Piece::B, Piece::M, Piece::N, Piece::A];

    /// Whether the left and right multipliers are `e` (true) or `e'`.
    pub fn sides(self) -> (bool, bool) {
        match self {
            Piece::B => (false, false),
            Piece::M => (false, true),
            Piece::N => (true, false),
            Piece::A => (true, true),
        }
    }

    fn from_sides(left: bool, right: bool) -> Piece {
        match (left, right) {
            (false, false) => Piece::B,
            (false, true) => Piece::M,
            (true, false) => Piece::N,
            (true, true) => Piece::A,
        }
    }

    /// The summand containing products `x y` with `x` in `self` and `y` in
    /// `other`, or `None` when all such products vanish.
    pub fn product(self, other: Piece) -> Option<Piece> {
        let (l, m1) = self.sides();
        let (m2, r) = other.sides();
        (m1 == m2).then(|| Piece::from_sides(l, r))
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Pierce decomposition of an algebra with respect to an idempotent.
#[derive(Clone, Debug)]
pub struct PierceData {
    e: Vec<Scalar>,
    e_prime: Vec<Scalar>,
    pieces: [Subspace; 4],
    a: Algebra,
    b: Algebra,
}

impl PierceData {
    pub(super) fn new(c: &Algebra, e: &Idempotent) -> Result<Self> {
        if e.coeffs().len() != c.dim() {
            return Err(Error::ParentMismatch);
        }
        let e_prime = e.complement(c);
        let ev = e.coeffs().to_vec();
        let epv = e_prime.coeffs().to_vec();
        let pick = |side: bool| if side { &ev } else { &epv };
        let pieces = Piece::ALL.map(|p| {
            let (l, r) = p.sides();
            let (x, y) = (pick(l), pick(r));
            let images = (0..c.dim()).map(|i| c.mul(&c.mul(x, &c.basis_vector(i)), y));
            Subspace::span(c.field(), c.dim(), images)
        });
        let total: usize = pieces.iter().map(Subspace::dim).sum();
        debug_assert_eq!(total, c.dim(), "Pierce summands must fill the algebra");
        let a = c.subalgebra(&pieces[Piece::A.index()], &ev)?;
        let b = c.subalgebra(&pieces[Piece::B.index()], &epv)?;
        Ok(PierceData { e: ev, e_prime: epv, pieces, a, b })
    }

    pub fn e(&self) -> &[Scalar] {
        &self.e
    }

    pub fn e_prime(&self) -> &[Scalar] {
        &self.e_prime
    }

    pub fn piece(&self, p: Piece) -> &Subspace {
        &self.pieces[p.index()]
    }

    pub fn dim(&self, p: Piece) -> usize {
        self.piece(p).dim()
    }

    /// The corner algebra `A = eCe` with unit `e`.
    pub fn corner_a(&self) -> &Algebra {
        &self.a
    }

    /// The corner algebra `B = e'Ce'` with unit `e'`.
    pub fn corner_b(&self) -> &Algebra {
        &self.b
    }

    /// Columns: the bases of `B`, `M`, `N`, `A` in that order.
    pub fn adapted_basis(&self) -> Matrix {
        let field = self.pieces[0].field();
        let n = self.pieces[0].ambient();
        let cols: Vec<Vec<Scalar>> = self.pieces.iter().flat_map(Subspace::basis).collect();
        Matrix::from_cols(field, n, &cols)
    }

    /// Inclusion of a summand, as an `ambient x dim` matrix.
    pub fn inclusion(&self, p: Piece) -> Matrix {
        self.piece(p).basis_matrix()
    }

    /// Coordinates of the component of `x` in summand `p`.
    pub fn project(&self, c: &Algebra, p: Piece, x: &[Scalar]) -> Vec<Scalar> {
        let (l, r) = p.sides();
        let left = if l { &self.e } else { &self.e_prime };
        let right = if r { &self.e } else { &self.e_prime };
        let y = c.mul(&c.mul(left, x), right);
        self.piece(p).coords(&y).expect("compression lands in its summand")
    }

    /// Every product of basis elements of two summands that escapes the
    /// summand predicted by the matrix pattern, as `(p, q, i, j)`.
    pub fn closure_violations(&self, c: &Algebra) -> Vec<(Piece, Piece, usize, usize)> {
        let mut out = Vec::new();
        for p in Piece::ALL {
            for q in Piece::ALL {
                let target = p.product(q);
                for (i, x) in self.piece(p).basis().iter().enumerate() {
                    for (j, y) in self.piece(q).basis().iter().enumerate() {
                        let z = c.mul(x, y);
                        let ok = match target {
                            Some(t) => self.piece(t).contains(&z),
                            None => z.iter().all(Scalar::is_zero),
                        };
                        if !ok {
                            out.push((p, q, i, j));
                        }
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::*;
    use crate::linalg::Field;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Field::Rational.from_i64(x)).collect()
    }

    #[test]
    fn unit_idempotent() {
        let c = dual_numbers(Field::Rational);
        let p = c.pierce(&Idempotent::unit(&c)).unwrap();
        assert_eq!(p.dim(Piece::A), 2);
        assert_eq!(p.dim(Piece::B) + p.dim(Piece::M) + p.dim(Piece::N), 0);
        assert_eq!(p.corner_a().dim(), 2);
        assert_eq!(p.corner_b().dim(), 0);
    }

    #[test]
    fn matrix_units() {
        let c = full_matrix(Field::Rational, 2);
        let e = Idempotent::new(&c, v(&[1, 0, 0, 0])).unwrap();
        let p = c.pierce(&e).unwrap();
        for piece in Piece::ALL {
            assert_eq!(p.dim(piece), 1);
        }
        assert!(p.closure_violations(&c).is_empty());
        assert_eq!(p.adapted_basis().inverse().map(|m| m.rows()), Some(4));
    }

    #[test]
    fn upper_triangular_corner() {
        let c = upper_triangular(Field::Rational, 2); // E11, E12, E22
        let e = Idempotent::new(&c, v(&[0, 0, 1])).unwrap();
        let p = c.pierce(&e).unwrap();
        assert_eq!(p.dim(Piece::A), 1);
        assert_eq!(p.dim(Piece::B), 1);
        assert_eq!(p.dim(Piece::M), 1);
        assert_eq!(p.dim(Piece::N), 0);
        assert!(p.closure_violations(&c).is_empty());
    }

    #[test]
    fn pattern_products() {
        assert_eq!(Piece::M.product(Piece::N), Some(Piece::B));
        assert_eq!(Piece::N.product(Piece::M), Some(Piece::A));
        assert_eq!(Piece::M.product(Piece::M), None);
        assert_eq!(Piece::B.product(Piece::M), Some(Piece::M));
    }
}
