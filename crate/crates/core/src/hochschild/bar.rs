use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Field, Matrix, Scalar, SparseMatrix, Subspace};
use crate::module::Bimodule;

/// An algebra on a basis adapted to a complete set of orthogonal idempotents
/// `e_0, ..., e_{r-1}`: the idempotents come first, every other basis
/// element ("arrow") lies in a single `e_s A e_t`.
#[derive(Clone, Debug)]
pub struct AdaptedAlgebra {
    algebra: Arc<Algebra>,
    /// Columns are the adapted basis in the coordinates of the original
    /// algebra.
    basis_change: Matrix,
    vertices: usize,
    /// `(s, t)` for every adapted basis element.
    block: Vec<(usize, usize)>,
    /// For every adapted basis element, its arrow number, if it is one.
    arrow_of: Vec<Option<usize>>,
    arrows: Vec<usize>,
}

fn check_system(a: &Algebra, idempotents: &[Vec<Scalar>]) -> Result<()> {
    let field = a.field();
    let mut sum = a.zero_vector();
    for (i, e) in idempotents.iter().enumerate() {
        if e.len() != a.dim() {
            return Err(Error::IdempotentSystem(format!("element {i} has the wrong length")));
        }
        if e.iter().all(Scalar::is_zero) {
            return Err(Error::IdempotentSystem(format!("element {i} is zero")));
        }
        for (j, f) in idempotents.iter().enumerate() {
            let p = a.mul(e, f);
            let expected = if i == j { e.clone() } else { vec![field.zero(); a.dim()] };
            if p != expected {
                return Err(Error::IdempotentSystem(format!("elements {i} and {j}")));
            }
        }
        for (s, x) in sum.iter_mut().zip(e) {
            *s = s.add(x);
        }
    }
    if sum != a.unit() {
        return Err(Error::IdempotentSystem("the elements do not sum to the unit".into()));
    }
    Ok(())
}

fn label_for(a: &Algebra, v: &[Scalar], fallback: String) -> String {
    let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    match nz.as_slice() {
        [i] if v[*i].is_one() => a.labels()[*i].clone(),
        _ => fallback,
    }
}

impl AdaptedAlgebra {
    pub fn new(a: &Algebra, idempotents: &[Vec<Scalar>]) -> Result<Self> {
        check_system(a, idempotents)?;
        let field = a.field();
        let d = a.dim();
        let r = idempotents.len();
        let lefts: Vec<Matrix> = idempotents.iter().map(|e| a.left_mult(e)).collect();
        let rights: Vec<Matrix> = idempotents.iter().map(|e| a.right_mult(e)).collect();
        let mut cols: Vec<Vec<Scalar>> = idempotents.to_vec();
        let mut block: Vec<(usize, usize)> = (0..r).map(|s| (s, s)).collect();
        for s in 0..r {
            for t in 0..r {
                let piece = Subspace::column_space(&lefts[s].mul(&rights[t]));
                let mut ech = Echelon::new(field, d);
                if s == t {
                    ech.insert_dense(&idempotents[s]);
                }
                for v in piece.basis() {
                    if ech.insert_dense(&v) {
                        cols.push(v);
                        block.push((s, t));
                    }
                }
            }
        }
        if cols.len() != d {
            return Err(Error::IdempotentSystem("Pierce pieces do not span the algebra".into()));
        }
        let p = Matrix::from_cols(field, d, &cols);
        let labels = cols
            .iter()
            .enumerate()
            .map(|(k, v)| label_for(a, v, if k < r { format!("e{k}") } else { format!("x{}", k - r) }))
            .collect();
        let algebra = Arc::new(a.change_basis(&p, labels)?);
        Ok(Self::from_parts(algebra, p, r, block))
    }

    /// The plain normalized bar complex: the only idempotent is the unit.
    pub fn trivial(a: &Algebra) -> Result<Self> {
        Self::new(a, &[a.unit().to_vec()])
    }

    fn from_parts(algebra: Arc<Algebra>, basis_change: Matrix, vertices: usize, block: Vec<(usize, usize)>) -> Self {
        let mut arrow_of = vec![None; algebra.dim()];
        let mut arrows = Vec::new();
        for k in vertices..algebra.dim() {
            arrow_of[k] = Some(arrows.len());
            arrows.push(k);
        }
        AdaptedAlgebra { algebra, basis_change, vertices, block, arrow_of, arrows }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn basis_change(&self) -> &Matrix {
        &self.basis_change
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn block(&self, k: usize) -> (usize, usize) {
        self.block[k]
    }

    /// Adapted index of arrow `x`.
    pub fn arrow(&self, x: usize) -> usize {
        self.arrows[x]
    }

    /// Arrow number of adapted basis element `k`.
    pub fn arrow_of(&self, k: usize) -> Option<usize> {
        self.arrow_of[k]
    }

    /// The corner `e_v A e_v` with its own adapted basis (`e_v` first), and
    /// the indices of that basis inside this one.
    pub fn corner(&self, v: usize) -> (AdaptedAlgebra, Vec<usize>) {
        let a = &self.algebra;
        let field = a.field();
        let keep: Vec<usize> =
            std::iter::once(v).chain(self.arrows.iter().copied().filter(|&k| self.block[k] == (v, v))).collect();
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let mut table = Vec::with_capacity(keep.len() * keep.len());
        for &i in &keep {
            for &j in &keep {
                table.push(a.product(i, j).iter().map(|(k, c)| (pos[k], c.clone())).collect());
            }
        }
        let mut unit = vec![field.zero(); keep.len()];
        unit[0] = field.one();
        let labels = keep.iter().map(|&k| a.labels()[k].clone()).collect();
        let corner = Arc::new(Algebra::from_table_unchecked(field, labels, table, unit));
        debug_assert!(corner.validate().is_valid());
        let n = keep.len();
        let block = vec![(0, 0); n];
        (Self::from_parts(corner, Matrix::identity(field, n), 1, block), keep)
    }
}

/// A bimodule over an adapted algebra on a basis adapted to the pieces
/// `e_s X e_t`, with the actions stored sparsely.
#[derive(Clone, Debug)]
pub(crate) struct Coefficients {
    /// Nonzero entries `(row, col, value)` of the left and right actions of
    /// every adapted basis element.
    left: Vec<Vec<(usize, usize, Scalar)>>,
    right: Vec<Vec<(usize, usize, Scalar)>>,
    pub(crate) block_of: Vec<(usize, usize)>,
    pub(crate) position: Vec<usize>,
    pub(crate) blocks: Vec<Vec<Vec<usize>>>,
    /// Columns are the coefficient basis in the original coordinates of the
    /// bimodule (of the algebra, for the regular bimodule).
    pub(crate) basis: Matrix,
}

fn nonzeros(m: &Matrix) -> Vec<(usize, usize, Scalar)> {
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let x = m.get(r, c);
            if !x.is_zero() {
                out.push((r, c, x.clone()));
            }
        }
    }
    out
}

impl Coefficients {
    fn from_actions(
        vertices: usize,
        left: &[Matrix],
        right: &[Matrix],
        block_of: Vec<(usize, usize)>,
        basis: Matrix,
    ) -> Self {
        let dim = block_of.len();
        let mut blocks = vec![vec![Vec::new(); vertices]; vertices];
        let mut position = vec![0; dim];
        for (k, &(s, t)) in block_of.iter().enumerate() {
            position[k] = blocks[s][t].len();
            blocks[s][t].push(k);
        }
        Coefficients {
            left: left.iter().map(nonzeros).collect(),
            right: right.iter().map(nonzeros).collect(),
            block_of,
            position,
            blocks,
            basis,
        }
    }

    /// The algebra itself, whose adapted basis is already split into pieces.
    pub(crate) fn regular(ad: &AdaptedAlgebra) -> Self {
        let a = &ad.algebra;
        let left: Vec<Matrix> = (0..a.dim()).map(|i| a.left_mult(&a.basis_vector(i))).collect();
        let right: Vec<Matrix> = (0..a.dim()).map(|i| a.right_mult(&a.basis_vector(i))).collect();
        Self::from_actions(ad.vertices, &left, &right, ad.block.clone(), ad.basis_change.clone())
    }

    /// A bimodule given over the original basis of the algebra.
    pub(crate) fn general(ad: &AdaptedAlgebra, m: &Bimodule) -> Result<Self> {
        let field = m.field();
        let p = &ad.basis_change;
        let transform = |acts: &[Matrix]| -> Vec<Matrix> {
            (0..p.cols())
                .map(|k| {
                    let mut acc = Matrix::zeros(field, m.dim(), m.dim());
                    for (i, act) in acts.iter().enumerate() {
                        let c = p.get(i, k);
                        if !c.is_zero() {
                            acc = acc.add(&act.scale(c));
                        }
                    }
                    acc
                })
                .collect()
        };
        let left = transform(m.left_action());
        let right = transform(m.right_action());
        let r = ad.vertices;
        let mut cols = Vec::new();
        let mut block_of = Vec::new();
        for s in 0..r {
            for t in 0..r {
                let piece = Subspace::column_space(&left[s].mul(&right[t]));
                for v in piece.basis() {
                    cols.push(v);
                    block_of.push((s, t));
                }
            }
        }
        let q = Matrix::from_cols(field, m.dim(), &cols);
        let qi = q.inverse().ok_or(Error::SingularBasisChange)?;
        let conj = |xs: Vec<Matrix>| -> Vec<Matrix> { xs.iter().map(|x| qi.mul(x).mul(&q)).collect() };
        Ok(Self::from_actions(r, &conj(left), &conj(right), block_of, q))
    }
}

/// A path of arrows `a_1 ... a_n` with `t(a_k) = s(a_{k+1})`; in degree zero
/// the empty path at a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<u32>,
}

/// Paths of each length up to a bound, with their lookup tables.
#[derive(Clone, Debug)]
pub(crate) struct Paths {
    pub(crate) by_degree: Vec<Vec<Path>>,
    index: Vec<HashMap<Vec<u32>, usize>>,
}

impl Paths {
    fn new(ad: &AdaptedAlgebra, top: usize, mut budget: impl FnMut(usize, &[Path]) -> Result<()>) -> Result<Self> {
        let zero: Vec<Path> = (0..ad.vertices).map(|v| Path { start: v, end: v, arrows: Vec::new() }).collect();
        budget(0, &zero)?;
        let mut by_degree = vec![zero];
        let mut index = vec![HashMap::new()];
        for n in 1..=top {
            let mut next = Vec::new();
            for p in &by_degree[n - 1] {
                for (x, &k) in ad.arrows.iter().enumerate() {
                    let (s, t) = ad.block[k];
                    if s == p.end {
                        let mut arrows = p.arrows.clone();
                        arrows.push(x as u32);
                        next.push(Path { start: p.start, end: t, arrows });
                    }
                }
            }
            budget(n, &next)?;
            index.push(next.iter().enumerate().map(|(i, p)| (p.arrows.clone(), i)).collect());
            by_degree.push(next);
        }
        Ok(Paths { by_degree, index })
    }

    /// Position of the path with the given arrows, or of the vertex when
    /// there are none.
    pub(crate) fn find(&self, arrows: &[u32], vertex: usize) -> usize {
        if arrows.is_empty() {
            vertex
        } else {
            self.index[arrows.len()][arrows]
        }
    }
}

/// The normalized cochain complex `Hom_{E^e}((A/E)^{(x)_E n}, X)` relative
/// to the span `E` of the idempotents, up to a degree bound.
#[derive(Clone, Debug)]
pub struct BarCochains {
    adapted: AdaptedAlgebra,
    pub(crate) coeffs: Coefficients,
    pub(crate) paths: Paths,
    /// Per degree and path, the first coordinate of its block.
    pub(crate) offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
    /// `differentials[n] : C^n -> C^{n+1}`.
    differentials: Vec<SparseMatrix>,
    /// `arrow_products[x][y]`: the arrow part of `a_x a_y`.
    arrow_products: Vec<Vec<Vec<(u32, Scalar)>>>,
}

pub const DEFAULT_BAR_CAP: usize = 200_000;

impl BarCochains {
    /// Cochains in degrees `0..=top`, differentials `0..top`.
    pub(crate) fn build(adapted: AdaptedAlgebra, coeffs: Coefficients, top: usize, cap: usize) -> Result<Self> {
        let block_size = |s: usize, t: usize| coeffs.blocks[s][t].len();
        let paths = Paths::new(&adapted, top, |n, ps| {
            let needed: usize = ps.iter().map(|p| block_size(p.start, p.end)).sum();
            if needed > cap {
                Err(Error::ResourceCap { what: format!("bar cochains in degree {n}"), needed, cap })
            } else {
                Ok(())
            }
        })?;
        let mut offsets = Vec::with_capacity(top + 1);
        let mut dims = Vec::with_capacity(top + 1);
        for ps in &paths.by_degree {
            let mut off = Vec::with_capacity(ps.len());
            let mut acc = 0;
            for p in ps {
                off.push(acc);
                acc += block_size(p.start, p.end);
            }
            offsets.push(off);
            dims.push(acc);
        }
        let a = adapted.algebra.clone();
        let arrow_products = adapted
            .arrows
            .iter()
            .map(|&i| {
                adapted
                    .arrows
                    .iter()
                    .map(|&j| {
                        a.product(i, j)
                            .iter()
                            .filter_map(|(k, c)| adapted.arrow_of[*k].map(|x| (x as u32, c.clone())))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut bar = BarCochains {
            adapted,
            coeffs,
            paths,
            offsets,
            dims,
            differentials: Vec::new(),
            arrow_products,
        };
        bar.differentials = (0..top).map(|n| bar.differential_matrix(n)).collect();
        Ok(bar)
    }

    /// Cochains of `A` with values in `A`.
    pub fn with_algebra_coefficients(adapted: AdaptedAlgebra, top: usize, cap: usize) -> Result<Self> {
        let coeffs = Coefficients::regular(&adapted);
        Self::build(adapted, coeffs, top, cap)
    }

    /// Cochains of `A` with values in a bimodule given on the original basis.
    pub fn with_coefficients(adapted: AdaptedAlgebra, m: &Bimodule, top: usize, cap: usize) -> Result<Self> {
        let coeffs = Coefficients::general(&adapted, m)?;
        Self::build(adapted, coeffs, top, cap)
    }

    pub fn adapted(&self) -> &AdaptedAlgebra {
        &self.adapted
    }

    pub fn field(&self) -> Field {
        self.adapted.algebra.field()
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differential(&self, n: usize) -> &SparseMatrix {
        &self.differentials[n]
    }

    pub fn paths(&self, n: usize) -> &[Path] {
        &self.paths.by_degree[n]
    }

    /// `dim HH^n` for `n < top`.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(SparseMatrix::rank).collect();
        (0..self.top())
            .map(|n| self.dims[n] - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] })
            .collect()
    }

    /// The value block of a cochain at a path.
    pub(crate) fn value<'v>(&self, phi: &'v [Scalar], n: usize, path: usize) -> &'v [Scalar] {
        let p = &self.paths.by_degree[n][path];
        let start = self.offsets[n][path];
        &phi[start..start + self.coeffs.blocks[p.start][p.end].len()]
    }

    fn differential_matrix(&self, n: usize) -> SparseMatrix {
        let field = self.field();
        let co = &self.coeffs;
        let arrows = &self.adapted.arrows;
        let sign = |k: usize| if k % 2 == 0 { field.one() } else { field.one().neg() };
        let mut triples = Vec::new();
        for (pi, p) in self.paths.by_degree[n + 1].iter().enumerate() {
            let row0 = self.offsets[n + 1][pi];
            let (s, t) = (p.start, p.end);
            let a = &p.arrows;
            let first = arrows[a[0] as usize];
            let mid = self.adapted.block[first].1;
            // a_1 phi(a_2, ..., a_{n+1})
            let tail = self.paths.find(&a[1..], mid);
            let off = self.offsets[n][tail];
            for (k, j, v) in &co.left[first] {
                if co.block_of[*j] == (mid, t) {
                    triples.push((row0 + co.position[*k], off + co.position[*j], v.clone()));
                }
            }
            // (-1)^i phi(..., a_i a_{i+1}, ...)
            let width = co.blocks[s][t].len();
            for i in 1..=n {
                let sg = sign(i);
                for (x, c) in &self.arrow_products[a[i - 1] as usize][a[i] as usize] {
                    let mut key: Vec<u32> = Vec::with_capacity(n);
                    key.extend_from_slice(&a[..i - 1]);
                    key.push(*x);
                    key.extend_from_slice(&a[i + 1..]);
                    let off = self.offsets[n][self.paths.find(&key, s)];
                    let val = sg.mul(c);
                    for q in 0..width {
                        triples.push((row0 + q, off + q, val.clone()));
                    }
                }
            }
            // (-1)^{n+1} phi(a_1, ..., a_n) a_{n+1}
            let last = arrows[a[n] as usize];
            let pre = self.adapted.block[last].0;
            let init = self.paths.find(&a[..n], pre);
            let off = self.offsets[n][init];
            let sg = sign(n + 1);
            for (k, j, v) in &co.right[last] {
                if co.block_of[*j] == (s, pre) {
                    triples.push((row0 + co.position[*k], off + co.position[*j], sg.mul(v)));
                }
            }
        }
        SparseMatrix::from_triples(field, self.dims[n + 1], self.dims[n], triples)
    }

    /// The cochain map `phi -> t o phi o sigma^{(x) n}` in degree `n`, for an
    /// automorphism `sigma` of the algebra fixing the unit and a linear map
    /// `t` of the coefficients, both on original bases. Only the complex
    /// relative to the unit alone is supported.
    pub fn transport(&self, n: usize, sigma: &Matrix, t: &Matrix) -> Result<SparseMatrix> {
        let field = self.field();
        let ad = &self.adapted;
        if ad.vertices != 1 {
            return Err(Error::IdempotentSystem("transport needs the unit as the only idempotent".into()));
        }
        let p = &ad.basis_change;
        let pi = p.inverse().ok_or(Error::SingularBasisChange)?;
        let s = pi.mul(sigma).mul(p);
        let q = &self.coeffs.basis;
        let qi = q.inverse().ok_or(Error::SingularBasisChange)?;
        let tc = qi.mul(t).mul(q);
        // images[x]: the arrow part of sigma(a_x).
        let images: Vec<Vec<(u32, Scalar)>> = ad
            .arrows
            .iter()
            .map(|&k| {
                ad.arrows
                    .iter()
                    .enumerate()
                    .filter_map(|(y, &j)| {
                        let c = s.get(j, k);
                        (!c.is_zero()).then(|| (y as u32, c.clone()))
                    })
                    .collect()
            })
            .collect();
        let width = self.coeffs.blocks[0][0].len();
        let mut triples = Vec::new();
        for (pi_, path) in self.paths.by_degree[n].iter().enumerate() {
            let row0 = self.offsets[n][pi_];
            let mut terms: Vec<(Vec<u32>, Scalar)> = vec![(Vec::new(), field.one())];
            for &a in &path.arrows {
                let mut next = Vec::new();
                for (key, c) in &terms {
                    for (y, d) in &images[a as usize] {
                        let mut k = key.clone();
                        k.push(*y);
                        next.push((k, c.mul(d)));
                    }
                }
                terms = next;
            }
            for (key, c) in terms {
                let col0 = self.offsets[n][self.paths.find(&key, 0)];
                for r in 0..width {
                    for cc in 0..width {
                        let x = tc.get(r, cc);
                        if !x.is_zero() {
                            triples.push((row0 + r, col0 + cc, c.mul(x)));
                        }
                    }
                }
            }
        }
        Ok(SparseMatrix::from_triples(field, self.dims[n], self.dims[n], triples))
    }

    /// Cup product of cochains of degrees `p` and `q` with values in the
    /// algebra; requires `p + q <= top`.
    pub fn cup(&self, phi: &[Scalar], p: usize, psi: &[Scalar], q: usize) -> Vec<Scalar> {
        let n = p + q;
        let a = &self.adapted.algebra;
        let field = a.field();
        let co = &self.coeffs;
        let mut out = vec![field.zero(); self.dims[n]];
        let embed = |block: &[Scalar], s: usize, t: usize| -> Vec<Scalar> {
            let mut v = a.zero_vector();
            for (x, &k) in block.iter().zip(&co.blocks[s][t]) {
                v[k] = x.clone();
            }
            v
        };
        for (pi, path) in self.paths.by_degree[n].iter().enumerate() {
            let split = if p == 0 {
                path.start
            } else {
                self.adapted.block[self.adapted.arrows[path.arrows[p - 1] as usize]].1
            };
            let left = self.paths.find(&path.arrows[..p], path.start);
            let right = self.paths.find(&path.arrows[p..], split);
            let x = embed(self.value(phi, p, left), path.start, split);
            let y = embed(self.value(psi, q, right), split, path.end);
            let prod = a.mul(&x, &y);
            let off = self.offsets[n][pi];
            for (q_, &k) in co.blocks[path.start][path.end].iter().enumerate() {
                out[off + q_] = prod[k].clone();
            }
        }
        out
    }

    /// Whether `phi` in degree `n` is a coboundary.
    pub fn is_coboundary(&self, phi: &[Scalar], n: usize) -> bool {
        if n == 0 {
            return phi.iter().all(Scalar::is_zero);
        }
        crate::linalg::solve_sparse(&self.differentials[n - 1], phi).expect("shapes agree").is_some()
    }

    pub fn is_cocycle(&self, phi: &[Scalar], n: usize) -> bool {
        self.differentials[n].mul_vec(phi).iter().all(Scalar::is_zero)
    }

    /// The degree-zero cochain given by an element of the algebra, which
    /// must commute with the idempotents.
    pub fn degree_zero(&self, z: &[Scalar]) -> Vec<Scalar> {
        let co = &self.coeffs;
        let mut out = Vec::with_capacity(self.dims[0]);
        for v in 0..self.adapted.vertices {
            out.extend(co.blocks[v][v].iter().map(|&k| z[k].clone()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn adapted_matrix_units() {
        let a = full_matrix(q(), 2);
        let f = q();
        let e0 = vec![f.one(), f.zero(), f.zero(), f.zero()];
        let e1 = vec![f.zero(), f.zero(), f.zero(), f.one()];
        let ad = AdaptedAlgebra::new(&a, &[e0, e1]).unwrap();
        assert_eq!(ad.arrow_count(), 2);
        let bar = BarCochains::with_algebra_coefficients(ad, 4, DEFAULT_BAR_CAP).unwrap();
        // Paths alternate between the two vertices: two of every length.
        assert_eq!(bar.dims(), &[2, 2, 2, 2, 2]);
        assert_eq!(bar.cohomology_dims(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn bad_systems_are_rejected() {
        let a = dual_numbers(q());
        let x = a.basis_vector(1);
        assert!(matches!(AdaptedAlgebra::new(&a, &[x]), Err(Error::IdempotentSystem(_))));
    }

    #[test]
    fn dual_numbers_plain_bar() {
        let ad = AdaptedAlgebra::trivial(&dual_numbers(q())).unwrap();
        let bar = BarCochains::with_algebra_coefficients(ad, 5, DEFAULT_BAR_CAP).unwrap();
        for n in 0..bar.top() - 1 {
            assert!(bar.differential(n + 1).mul(bar.differential(n)).is_zero());
        }
        assert_eq!(bar.cohomology_dims(), vec![2, 1, 1, 1, 1]);
    }

    #[test]
    fn cap_is_reported_with_degree() {
        let ad = AdaptedAlgebra::trivial(&truncated_polynomial(q(), 3, "x")).unwrap();
        match BarCochains::with_algebra_coefficients(ad, 6, 100) {
            Err(Error::ResourceCap { what, .. }) => assert!(what.contains("degree 6")),
            other => panic!("expected a cap error, got {other:?}"),
        }
    }

    #[test]
    fn unit_is_neutral_for_cup() {
        let ad = AdaptedAlgebra::trivial(&truncated_polynomial(q(), 3, "x")).unwrap();
        let bar = BarCochains::with_algebra_coefficients(ad, 3, DEFAULT_BAR_CAP).unwrap();
        let one = bar.degree_zero(bar.adapted().algebra().unit());
        let z1 = crate::linalg::kernel_sparse(bar.differential(1)).dense_vectors();
        for psi in &z1 {
            assert_eq!(&bar.cup(&one, 0, psi, 1), psi);
            assert_eq!(&bar.cup(psi, 1, &one, 0), psi);
        }
    }
}
