use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{kernel_sparse, primitive, sparse_from_dense, Echelon, Field, Scalar, SparseMatrix, SparseVec, Subspace};
use crate::module::{LeftModule, RightModule};

/// Upper bound on the summed dimensions of the free modules in a resolution.
pub const DEFAULT_RESOLUTION_CAP: usize = 20_000;

pub const DEFAULT_SEED: u64 = 0x00c0_ffee;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolutionConfig {
    /// Seeds the random combinations used to pick generators.
    pub seed: u64,
    pub cap: usize,
}

impl Default for ResolutionConfig {
    fn default() -> Self {
        ResolutionConfig { seed: DEFAULT_SEED, cap: DEFAULT_RESOLUTION_CAP }
    }
}

/// Grade of a module: the least `i` with `Ext^i(M, A) != 0`, or a note that
/// no such `i` exists up to the cutoff.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Grade {
    Finite(usize),
    Beyond(usize),
}

impl Grade {
    /// Whether the grade is known to be at least `k`.
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Grade::Finite(g) => g >= k,
            Grade::Beyond(c) => c + 1 >= k,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Grade::Finite(g) => Some(g),
            Grade::Beyond(_) => None,
        }
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grade::Finite(g) => write!(f, "{g}"),
            Grade::Beyond(c) => write!(f, ">{c}"),
        }
    }
}

/// `v b_i` for `v` in the free module `A^r`, blockwise.
fn free_act(alg: &Algebra, v: &SparseVec, i: usize) -> SparseVec {
    let d = alg.dim();
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (idx, x) in v {
        let (k, j) = (idx / d, idx % d);
        for (l, c) in alg.product(j, i) {
            let e = acc.entry(k * d + l).or_insert_with(|| alg.field().zero());
            e.add_mul_assign(x, c);
        }
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// Picks generators of the submodule spanned by `candidates`. Each new
/// generator is a random combination of the candidates not yet reached, which
/// keeps the number of generators near the minimum.
/// How many kernel vectors are tried on their own before falling back to a
/// generic combination.
const SINGLE_TRIES: usize = 24;

fn generic_generators(
    field: Field,
    width: usize,
    candidates: &[SparseVec],
    act: impl Fn(&SparseVec) -> Vec<SparseVec>,
    rng: &mut ChaCha8Rng,
) -> Vec<SparseVec> {
    // Kernel vectors come out of elimination with denominators; clearing them
    // keeps entries from compounding along the resolution.
    let candidates: Vec<SparseVec> = candidates.iter().cloned().map(primitive).collect();
    let mut reached = Echelon::new(field, width);
    let mut gens = Vec::new();
    loop {
        let remaining: Vec<&SparseVec> =
            candidates.iter().filter(|c| !reached.contains((*c).clone())).collect();
        if remaining.is_empty() {
            return gens;
        }
        let mut dense = vec![field.zero(); width];
        for c in &remaining {
            let s = field.from_i64(rng.gen_range(1..=9));
            for (i, x) in c.iter() {
                dense[*i].add_mul_assign(&s, x);
            }
        }
        let mut combo = primitive(sparse_from_dense(&dense));
        if reached.contains(combo.clone()) {
            combo = remaining[0].clone();
        }
        // A single candidate that reaches as far as the generic combination
        // has far smaller entries, and entries feed the next syzygy.
        let reach = |v: &SparseVec| {
            let mut e = reached.clone();
            for w in act(v) {
                e.insert(w);
            }
            e.rank()
        };
        let target = reach(&combo);
        if let Some(single) = remaining.iter().take(SINGLE_TRIES).find(|c| reach(c) == target) {
            combo = (*single).clone();
        }
        for w in act(&combo) {
            reached.insert(w);
        }
        gens.push(combo);
    }
}

/// A free resolution `... -> A^{r_1} -> A^{r_0} -> M -> 0` of a right module.
///
/// The generator `j` of `P_n` (for `n >= 1`) maps to an element of
/// `A^{r_{n-1}}`, whose component in slot `k` is the coefficient `a_jk`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    algebra: Arc<Algebra>,
    module: RightModule,
    config: ResolutionConfig,
    rng: ChaCha8Rng,
    ranks: Vec<usize>,
    /// `images[n][j]` is the image of generator `j` of `P_n`, in `M` for
    /// `n = 0` and in `A^{r_{n-1}}` otherwise.
    images: Vec<Vec<SparseVec>>,
    total: usize,
}

impl FreeResolution {
    pub fn new(module: &RightModule, length: usize, config: &ResolutionConfig) -> Result<Self> {
        let mut res = FreeResolution {
            algebra: module.algebra().clone(),
            module: module.clone(),
            config: *config,
            rng: ChaCha8Rng::seed_from_u64(config.seed),
            ranks: Vec::new(),
            images: Vec::new(),
            total: 0,
        };
        res.extend_to(length)?;
        Ok(res)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Index of the last computed term.
    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    /// The coefficient `a_jk` of the differential `P_n -> P_{n-1}`.
    pub fn coefficient(&self, n: usize, j: usize, k: usize) -> Vec<Scalar> {
        let d = self.algebra.dim();
        let field = self.algebra.field();
        let mut out = vec![field.zero(); d];
        for (idx, x) in &self.images[n][j] {
            if idx / d == k {
                out[idx % d] = x.clone();
            }
        }
        out
    }

    /// Whether some computed term vanished, so the resolution is finite.
    pub fn terminated(&self) -> bool {
        self.ranks.last() == Some(&0)
    }

    /// Computes terms up to `P_length`.
    pub fn extend_to(&mut self, length: usize) -> Result<()> {
        while self.ranks.len() <= length {
            let n = self.ranks.len();
            if self.terminated() {
                self.ranks.push(0);
                self.images.push(Vec::new());
                continue;
            }
            let gens = if n == 0 { self.cover_module() } else { self.cover_syzygy(n - 1) };
            let r = gens.len();
            self.total += r * self.algebra.dim();
            if self.total > self.config.cap {
                return Err(Error::ResourceCap {
                    what: "free resolution".into(),
                    needed: self.total,
                    cap: self.config.cap,
                });
            }
            self.ranks.push(r);
            self.images.push(gens);
        }
        Ok(())
    }

    fn cover_module(&mut self) -> Vec<SparseVec> {
        let field = self.algebra.field();
        let m = self.module.dim();
        let candidates: Vec<SparseVec> = (0..m).map(|j| vec![(j, field.one())]).collect();
        let module = &self.module;
        generic_generators(
            field,
            m,
            &candidates,
            |v| {
                let dense = crate::linalg::sparse_to_dense(field, m, v);
                module.action().iter().map(|r| sparse_from_dense(&r.mul_vec(&dense))).collect()
            },
            &mut self.rng,
        )
    }

    /// Generators of the kernel of `P_n -> P_{n-1}` (or `P_0 -> M`).
    fn cover_syzygy(&mut self, n: usize) -> Vec<SparseVec> {
        let field = self.algebra.field();
        let d = self.algebra.dim();
        let width = self.ranks[n] * d;
        let target = if n == 0 { self.module.dim() } else { self.ranks[n - 1] * d };
        let dmat = self.differential_matrix(n);
        debug_assert_eq!((dmat.rows(), dmat.cols()), (target, width));
        let kernel = kernel_sparse(&dmat);
        let alg = self.algebra.clone();
        generic_generators(
            field,
            width,
            kernel.vectors(),
            |v| (0..d).map(|i| free_act(&alg, v, i)).collect(),
            &mut self.rng,
        )
    }

    /// `delta^n : Hom(P_n, N) -> Hom(P_{n+1}, N)` on `N^{r_n} -> N^{r_{n+1}}`,
    /// `delta(phi)_j = sum_k R^N(a_jk) phi_k`. Requires `P_{n+1}`.
    pub fn ext_differential(&self, n: usize, target: &RightModule) -> SparseMatrix {
        let field = self.algebra.field();
        let nd = target.dim();
        let (rn, rn1) = (self.ranks[n], self.ranks[n + 1]);
        let mut triples = Vec::new();
        for j in 0..rn1 {
            for k in 0..rn {
                let a = self.coefficient(n + 1, j, k);
                if a.iter().all(Scalar::is_zero) {
                    continue;
                }
                let block = target.action_of(&a);
                for p in 0..nd {
                    for q in 0..nd {
                        let x = block.get(p, q);
                        if !x.is_zero() {
                            triples.push((j * nd + p, k * nd + q, x.clone()));
                        }
                    }
                }
            }
        }
        SparseMatrix::from_triples(field, rn1 * nd, rn * nd, triples)
    }

    /// `partial_n : P_n (x) L -> P_{n-1} (x) L` on `L^{r_n} -> L^{r_{n-1}}`.
    pub fn tor_differential(&self, n: usize, left: &LeftModule) -> SparseMatrix {
        let field = self.algebra.field();
        let ld = left.dim();
        let (rn, rn0) = (self.ranks[n], self.ranks[n - 1]);
        let mut triples = Vec::new();
        for j in 0..rn {
            for k in 0..rn0 {
                let a = self.coefficient(n, j, k);
                if a.iter().all(Scalar::is_zero) {
                    continue;
                }
                let block = left.action_of(&a);
                for p in 0..ld {
                    for q in 0..ld {
                        let x = block.get(p, q);
                        if !x.is_zero() {
                            triples.push((k * ld + p, j * ld + q, x.clone()));
                        }
                    }
                }
            }
        }
        SparseMatrix::from_triples(field, rn0 * ld, rn * ld, triples)
    }

    /// `P_n -> P_{n-1}` (or `P_0 -> M` for `n = 0`) as a sparse matrix.
    fn differential_matrix(&self, n: usize) -> SparseMatrix {
        let field = self.algebra.field();
        let d = self.algebra.dim();
        let target = if n == 0 { self.module.dim() } else { self.ranks[n - 1] * d };
        let mut triples = Vec::new();
        for (k, g) in self.images[n].iter().enumerate() {
            for i in 0..d {
                let col = if n == 0 {
                    let dense = crate::linalg::sparse_to_dense(field, target, g);
                    sparse_from_dense(&self.module.action()[i].mul_vec(&dense))
                } else {
                    free_act(&self.algebra, g, i)
                };
                for (r, x) in col {
                    triples.push((r, k * d + i, x));
                }
            }
        }
        SparseMatrix::from_triples(field, target, self.ranks[n] * d, triples)
    }

    /// Lifts a module endomorphism `f` of `M` (a `dim M x dim M` matrix) to
    /// a chain map on the resolution, up to degree `upto`. Entry `[n][j]` is
    /// the image of generator `j` of `P_n` in `P_n`.
    pub fn lift_endomorphism(&mut self, f: &crate::linalg::Matrix, upto: usize) -> Result<Vec<Vec<SparseVec>>> {
        self.extend_to(upto)?;
        let field = self.algebra.field();
        let d = self.algebra.dim();
        let mut lifts: Vec<Vec<SparseVec>> = Vec::new();
        for n in 0..=upto {
            let dmat = self.differential_matrix(n).to_dense();
            let mut level = Vec::with_capacity(self.ranks[n]);
            for j in 0..self.ranks[n] {
                let target = if n == 0 {
                    let g = crate::linalg::sparse_to_dense(field, self.module.dim(), &self.images[0][j]);
                    f.mul_vec(&g)
                } else {
                    // f_{n-1}(d(eps_j)) = sum_k f_{n-1}(eps_k) a_jk
                    let mut acc = vec![field.zero(); self.ranks[n - 1] * d];
                    for k in 0..self.ranks[n - 1] {
                        let a = self.coefficient(n, j, k);
                        for (i, c) in a.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            for (idx, x) in free_act(&self.algebra, &lifts[n - 1][k], i) {
                                acc[idx].add_mul_assign(c, &x);
                            }
                        }
                    }
                    acc
                };
                let x = crate::linalg::solve_linear(&dmat, &target)
                    .expect("shapes agree")
                    .expect("the image lies in the image of the differential");
                level.push(sparse_from_dense(&x));
            }
            lifts.push(level);
        }
        Ok(lifts)
    }

    /// The map on `P_n (x) L = L^{r_n}` induced by a lifted chain map and an
    /// endomorphism `h` of `L`: `eps_j (x) l -> sum_k eps_k (x) (f_n(eps_j))_k h(l)`.
    pub fn tor_chain_map(&self, n: usize, lifts: &[Vec<SparseVec>], left: &LeftModule, h: &crate::linalg::Matrix) -> SparseMatrix {
        let field = self.algebra.field();
        let d = self.algebra.dim();
        let ld = left.dim();
        let r = self.ranks[n];
        let mut triples = Vec::new();
        for j in 0..r {
            for k in 0..r {
                let mut a = vec![field.zero(); d];
                for (idx, x) in &lifts[n][j] {
                    if idx / d == k {
                        a[idx % d] = x.clone();
                    }
                }
                if a.iter().all(Scalar::is_zero) {
                    continue;
                }
                let block = left.action_of(&a).mul(h);
                for p in 0..ld {
                    for q in 0..ld {
                        let x = block.get(p, q);
                        if !x.is_zero() {
                            triples.push((k * ld + p, j * ld + q, x.clone()));
                        }
                    }
                }
            }
        }
        SparseMatrix::from_triples(field, r * ld, r * ld, triples)
    }

    /// Whether the chain map `phi` on `P_n (x) L` induces zero on `Tor_n`.
    pub fn induces_zero_on_tor(&mut self, n: usize, left: &LeftModule, phi: &SparseMatrix) -> Result<bool> {
        self.extend_to(n + 1)?;
        let cycles = if n == 0 {
            let w = self.ranks[0] * left.dim();
            crate::linalg::Kernel::identity(self.algebra.field(), w)
        } else {
            kernel_sparse(&self.tor_differential(n, left))
        };
        let boundaries = crate::linalg::Subspace::column_space_sparse(&self.tor_differential(n + 1, left));
        Ok(cycles.dense_vectors().iter().all(|z| boundaries.contains(&phi.mul_vec(z))))
    }

    /// `dim Ext^n(M, N)` for `n = 0..=max`.
    pub fn ext_dims(&mut self, target: &RightModule, max: usize) -> Result<Vec<usize>> {
        self.extend_to(max + 1)?;
        let ranks: Vec<usize> = (0..=max).map(|n| self.ext_differential(n, target).rank()).collect();
        Ok((0..=max)
            .map(|n| {
                let before = if n == 0 { 0 } else { ranks[n - 1] };
                self.ranks[n] * target.dim() - ranks[n] - before
            })
            .collect())
    }

    /// `dim Tor_n(M, L)` for `n = 0..=max`.
    pub fn tor_dims(&mut self, left: &LeftModule, max: usize) -> Result<Vec<usize>> {
        self.extend_to(max + 1)?;
        let ranks: Vec<usize> = (1..=max + 1).map(|n| self.tor_differential(n, left).rank()).collect();
        Ok((0..=max)
            .map(|n| {
                let out = if n == 0 { 0 } else { ranks[n - 1] };
                self.ranks[n] * left.dim() - out - ranks[n]
            })
            .collect())
    }
}

pub fn ext_dims(m: &RightModule, n: &RightModule, max: usize, config: &ResolutionConfig) -> Result<Vec<usize>> {
    FreeResolution::new(m, 0, config)?.ext_dims(n, max)
}

pub fn tor_dims(m: &RightModule, l: &LeftModule, max: usize, config: &ResolutionConfig) -> Result<Vec<usize>> {
    FreeResolution::new(m, 0, config)?.tor_dims(l, max)
}

/// `grade_A M`, the least `i` with `Ext^i_A(M, A_A) != 0`, searched up to
/// `cutoff`.
pub fn grade_of(m: &RightModule, cutoff: usize, config: &ResolutionConfig) -> Result<Grade> {
    if m.dim() == 0 {
        return Ok(Grade::Beyond(cutoff));
    }
    let reg = RightModule::regular(m.algebra().clone());
    let mut res = FreeResolution::new(m, 1, config)?;
    let mut prev_rank = 0;
    for i in 0..=cutoff {
        res.extend_to(i + 1)?;
        let rank = res.ext_differential(i, &reg).rank();
        if res.rank(i) * reg.dim() - rank - prev_rank > 0 {
            return Ok(Grade::Finite(i));
        }
        prev_rank = rank;
    }
    Ok(Grade::Beyond(cutoff))
}

/// `depth(I, A) = grade_A(A / I)` for a two-sided ideal `I`.
pub fn depth_on_ideal(algebra: Arc<Algebra>, ideal: &Subspace, cutoff: usize, config: &ResolutionConfig) -> Result<Grade> {
    let q = RightModule::cyclic_quotient(algebra, ideal)?;
    grade_of(&q, cutoff, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rational
    }

    fn simple_of(a: &Arc<Algebra>, rad: &[usize]) -> RightModule {
        let gens: Vec<Vec<Scalar>> = rad.iter().map(|&i| a.basis_vector(i)).collect();
        let ideal = a.right_ideal(&gens);
        RightModule::cyclic_quotient(a.clone(), &ideal).unwrap()
    }

    #[test]
    fn dual_numbers_simple() {
        // Ext^n(k, k) = k in every degree; Ext^n(k, A) = 0 except n = 0.
        let a = Arc::new(dual_numbers(q()));
        let k = simple_of(&a, &[1]);
        let cfg = ResolutionConfig::default();
        let mut res = FreeResolution::new(&k, 5, &cfg).unwrap();
        assert_eq!(res.ranks(), &[1, 1, 1, 1, 1, 1]);
        assert_eq!(res.ext_dims(&k, 4).unwrap(), vec![1; 5]);
        let reg = RightModule::regular(a.clone());
        assert_eq!(res.ext_dims(&reg, 3).unwrap(), vec![1, 0, 0, 0]);
        assert_eq!(grade_of(&k, 4, &cfg).unwrap(), Grade::Finite(0));
        let kl = LeftModule::regular(a.clone()).quotient(&a.left_ideal(&[a.basis_vector(1)])).unwrap();
        assert_eq!(res.tor_dims(&kl, 3).unwrap(), vec![1; 4]);
    }

    #[test]
    fn path_algebra_global_dimension_one() {
        let a = Arc::new(path_algebra_a2(q()));
        // Simple at vertex 1: e1 A / a A.
        let reg = RightModule::regular(a.clone());
        let s1 = reg.quotient(&a.right_ideal(&[a.basis_vector(1), a.basis_vector(2)])).unwrap();
        let mut res = FreeResolution::new(&s1, 4, &ResolutionConfig::default()).unwrap();
        // Free covers are not projective covers here, so the resolution
        // keeps going; the Ext groups still vanish above degree one.
        assert_eq!(res.rank(0), 1);
        assert_eq!(res.ext_dims(&s1, 2).unwrap(), vec![1, 0, 0]);
        // Ext^1(S1, A) = Ext^1(S1, P2) = k.
        assert_eq!(res.ext_dims(&reg, 2).unwrap(), vec![0, 1, 0]);
        assert_eq!(grade_of(&s1, 3, &ResolutionConfig::default()).unwrap(), Grade::Finite(1));
    }

    #[test]
    fn semisimple_grade() {
        let a = Arc::new(full_matrix(q(), 2));
        let row = a.right_ideal(&[a.basis_vector(0)]);
        let s = RightModule::regular(a.clone()).submodule(&row).unwrap();
        assert_eq!(grade_of(&s, 3, &ResolutionConfig::default()).unwrap(), Grade::Finite(0));
        let zero = RightModule::zero(a);
        assert_eq!(grade_of(&zero, 3, &ResolutionConfig::default()).unwrap(), Grade::Beyond(3));
    }

    #[test]
    fn cap_is_enforced() {
        let a = Arc::new(truncated_polynomial(q(), 3, "x"));
        let k = simple_of(&a, &[1]);
        let cfg = ResolutionConfig { cap: 10, ..Default::default() };
        assert!(matches!(FreeResolution::new(&k, 5, &cfg), Err(Error::ResourceCap { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn ext_dims_do_not_depend_on_seed(seed in any::<u64>(), which in 0usize..3) {
            let a = Arc::new(match which {
                0 => truncated_polynomial(q(), 3, "x"),
                1 => upper_triangular(q(), 2),
                _ => path_algebra_a2(q()),
            });
            let reg = RightModule::regular(a.clone());
            let m = reg.quotient(&a.two_sided_ideal(&[a.basis_vector(a.dim() - 1)])).unwrap();
            let base = ext_dims(&m, &m, 3, &ResolutionConfig::default()).unwrap();
            let other = ext_dims(&m, &m, 3, &ResolutionConfig { seed, ..Default::default() }).unwrap();
            prop_assert_eq!(base, other);
        }
    }
}
