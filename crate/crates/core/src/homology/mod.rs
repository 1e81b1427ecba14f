//! Chain complexes, free resolutions, and the Ext, Tor and grade computations
//! built on them.

mod resolution;

use crate::linalg::{Field, SparseMatrix};

pub use resolution::{
    depth_on_ideal, ext_dims, grade_of, tor_dims, FreeResolution, Grade, ResolutionConfig,
    DEFAULT_RESOLUTION_CAP, DEFAULT_SEED,
};

/// A bounded complex `C_0 <- C_1 <- ...`; `differentials[n]` is the map
/// `C_{n+1} -> C_n` as a `dim C_n x dim C_{n+1}` matrix.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    field: Field,
    dims: Vec<usize>,
    differentials: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn new(field: Field, dims: Vec<usize>, differentials: Vec<SparseMatrix>) -> Self {
        assert_eq!(differentials.len() + 1, dims.len().max(1));
        for (n, d) in differentials.iter().enumerate() {
            assert_eq!((d.rows(), d.cols()), (dims[n], dims[n + 1]), "differential {n} has the wrong shape");
        }
        ChainComplex { field, dims, differentials }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differential(&self, n: usize) -> &SparseMatrix {
        &self.differentials[n]
    }

    /// Whether consecutive differentials compose to zero.
    pub fn is_complex(&self) -> bool {
        self.differentials.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }

    /// Homology dimensions in degrees `0..dims.len() - 1`; the top degree is
    /// omitted since its outgoing boundary is unknown.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(SparseMatrix::rank).collect();
        (0..self.differentials.len())
            .map(|n| {
                let incoming = ranks[n];
                let outgoing = if n == 0 { 0 } else { ranks[n - 1] };
                self.dims[n] - outgoing - incoming
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplicial_interval() {
        // Interval: two vertices, one edge.
        let q = Field::Rational;
        let d = SparseMatrix::from_triples(q, 2, 1, [(0, 0, q.from_i64(-1)), (1, 0, q.one())]);
        let c = ChainComplex::new(q, vec![2, 1, 0], vec![d, SparseMatrix::zeros(q, 1, 0)]);
        assert!(c.is_complex());
        assert_eq!(c.homology_dims(), vec![1, 0]);
    }
}
