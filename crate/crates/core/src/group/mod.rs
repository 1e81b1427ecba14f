//! Finite groups acting on algebras: skew group algebras, traces and
//! invariants, Noether differents, and the comparison of Hochschild
//! cohomology of `SG` with `G`-invariants.

mod different;
mod skew;
mod verify;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

pub use different::{noether_different, separability_check, DifferentReport, SeparabilityReport};
pub use skew::{
    build_skew_group, centre_of_sg_check, infinitesimally_outer, trace_and_invariants, CentreReport, OuterReport,
    SkewGroupData, TraceData,
};
pub use verify::{
    invariant_hh, separability_directions, sg_context_and_defect, verify_degeneration, verify_invariant_comparison,
    DefectReport, DegenerationReport, Hypotheses, InvariantComparison, SeparabilityDirections,
};

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Checks closure, associativity, a two-sided identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidAction("the group table is empty".into()));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidAction(format!("row {g} of the group table has length {}", row.len())));
            }
            if let Some(h) = row.iter().position(|&x| x >= n) {
                return Err(Error::InvalidAction(format!("product {g}*{h} is out of range")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidAction("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let h = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| Error::InvalidAction(format!("element {g} has no inverse")))?;
            inverse.push(h);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidAction(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, identity, inverse })
    }

    /// `Z/n` with `g_i g_j = g_{i+j mod n}`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order zero");
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let inverse = (0..n).map(|i| (n - i) % n).collect();
        FiniteGroup { table, identity: 0, inverse }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }
}

/// `G` acting on `S` by algebra automorphisms `g -> A_g`, where `A_g` acts on
/// coordinate columns.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAction {
    group: FiniteGroup,
    algebra: Arc<Algebra>,
    matrices: Vec<Matrix>,
}

impl GroupAction {
    /// Checks that each matrix is a unital algebra automorphism and that
    /// `A_g A_h = A_{gh}`.
    pub fn new(algebra: Arc<Algebra>, group: FiniteGroup, matrices: Vec<Matrix>) -> Result<Self> {
        let d = algebra.dim();
        let field = algebra.field();
        if matrices.len() != group.order() {
            return Err(Error::InvalidAction(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        for (g, a) in matrices.iter().enumerate() {
            if a.rows() != d || a.cols() != d || a.field() != field {
                return Err(Error::InvalidAction(format!("matrix of element {g} has the wrong shape or field")));
            }
            if a.mul_vec(algebra.unit()) != algebra.unit() {
                return Err(Error::InvalidAction(format!("element {g} does not fix the unit")));
            }
            for i in 0..d {
                for j in 0..d {
                    let lhs = a.mul_vec(&algebra.mul(&algebra.basis_vector(i), &algebra.basis_vector(j)));
                    let rhs = algebra.mul(&a.col(i), &a.col(j));
                    if lhs != rhs {
                        return Err(Error::InvalidAction(format!(
                            "element {g} is not multiplicative on basis elements {i}, {j}"
                        )));
                    }
                }
            }
        }
        if matrices[group.identity()] != Matrix::identity(field, d) {
            return Err(Error::InvalidAction("the identity does not act trivially".into()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                if matrices[g].mul(&matrices[h]) != matrices[group.mul(g, h)] {
                    return Err(Error::InvalidAction(format!("A_{g} A_{h} differs from the matrix of their product")));
                }
            }
        }
        Ok(GroupAction { group, algebra, matrices })
    }

    /// The cyclic group generated by one automorphism of finite order `n`.
    pub fn cyclic(algebra: Arc<Algebra>, n: usize, generator: Matrix) -> Result<Self> {
        let field = algebra.field();
        let mut matrices = vec![Matrix::identity(field, algebra.dim())];
        for k in 1..n {
            matrices.push(matrices[k - 1].mul(&generator));
        }
        Self::new(algebra, FiniteGroup::cyclic(n), matrices)
    }

    pub fn trivial(algebra: Arc<Algebra>) -> Self {
        let id = Matrix::identity(algebra.field(), algebra.dim());
        GroupAction { group: FiniteGroup::trivial(), algebra, matrices: vec![id] }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn matrix(&self, g: usize) -> &Matrix {
        &self.matrices[g]
    }

    pub fn apply(&self, g: usize, s: &[Scalar]) -> Vec<Scalar> {
        self.matrices[g].mul_vec(s)
    }

    /// Whether only the identity acts trivially.
    pub fn is_faithful(&self) -> bool {
        let id = Matrix::identity(self.algebra.field(), self.algebra.dim());
        (0..self.group.order()).all(|g| g == self.group.identity() || self.matrices[g] != id)
    }
}
