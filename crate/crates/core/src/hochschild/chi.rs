use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::homology::{ext_dims, grade_of, tor_dims, ChainComplex, Grade, ResolutionConfig};
use crate::linalg::{kernel_sparse, sparse_from_dense, Echelon, Field, Scalar, SparseMatrix};
use crate::module::RightModule;
use crate::morita::{auslander_context, MoritaContext};

use super::bar::{AdaptedAlgebra, BarCochains};

/// The comparison map `chi : HH(C) -> HH(eCe)` on normalized cochains
/// relative to `E = span(e', e)`. Restricting such a cochain to arguments in
/// `eCe` is exactly `phi -> e phi(-) e`, and it is a coordinate projection.
#[derive(Clone, Debug)]
pub struct ChiComparison {
    c_bar: BarCochains,
    a_bar: BarCochains,
    /// For every degree and every coordinate of the `eCe`-cochains, the
    /// matching coordinate of the `C`-cochains.
    selections: Vec<Vec<usize>>,
    c_hh: Vec<usize>,
    a_hh: Vec<usize>,
}

/// `chi^n` on cohomology.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ChiDegree {
    pub degree: usize,
    pub hh_c: usize,
    pub hh_a: usize,
    pub rank: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl ChiComparison {
    /// Cochains of `C` and of `eCe` in degrees `0..=top`.
    pub fn new(c: &Algebra, e: &[Scalar], top: usize, cap: usize) -> Result<Self> {
        let e_prime: Vec<Scalar> = c.unit().iter().zip(e).map(|(u, x)| u.sub(x)).collect();
        let mut idems = Vec::new();
        if e_prime.iter().any(|x| !x.is_zero()) {
            idems.push(e_prime);
        }
        let v = idems.len();
        idems.push(e.to_vec());
        let c_ad = AdaptedAlgebra::new(c, &idems)?;
        let (a_ad, keep) = c_ad.corner(v);
        let c_bar = BarCochains::with_algebra_coefficients(c_ad, top, cap)?;
        let a_bar = BarCochains::with_algebra_coefficients(a_ad, top, cap)?;
        let c_ad = c_bar.adapted();
        let selections = (0..=top)
            .map(|n| {
                let mut sel = Vec::with_capacity(a_bar.dims()[n]);
                for p in a_bar.paths(n) {
                    let mapped: Vec<u32> = p
                        .arrows
                        .iter()
                        .map(|&x| c_ad.arrow_of(keep[x as usize + 1]).expect("corner arrow") as u32)
                        .collect();
                    let cp = c_bar.paths.find(&mapped, v);
                    let c_off = c_bar.offsets[n][cp];
                    let width = a_bar.coeffs.blocks[p.start][p.end].len();
                    debug_assert_eq!(width, c_bar.coeffs.blocks[v][v].len());
                    sel.extend(c_off..c_off + width);
                }
                sel
            })
            .collect();
        let c_hh = c_bar.cohomology_dims();
        let a_hh = a_bar.cohomology_dims();
        Ok(ChiComparison { c_bar, a_bar, selections, c_hh, a_hh })
    }

    pub fn top(&self) -> usize {
        self.c_bar.top()
    }

    pub fn c_cochains(&self) -> &BarCochains {
        &self.c_bar
    }

    pub fn a_cochains(&self) -> &BarCochains {
        &self.a_bar
    }

    /// `dim HH^n(C)` for `n < top`.
    pub fn hh_c(&self) -> &[usize] {
        &self.c_hh
    }

    pub fn hh_a(&self) -> &[usize] {
        &self.a_hh
    }

    pub fn chi(&self, phi: &[Scalar], n: usize) -> Vec<Scalar> {
        self.selections[n].iter().map(|&i| phi[i].clone()).collect()
    }

    pub fn chi_matrix(&self, n: usize) -> SparseMatrix {
        let field = self.c_bar.field();
        let sel = &self.selections[n];
        SparseMatrix::from_triples(
            field,
            sel.len(),
            self.c_bar.dims()[n],
            sel.iter().enumerate().map(|(i, &j)| (i, j, field.one())),
        )
    }

    /// `chi` commutes with the differentials, so it sends cocycles to
    /// cocycles and coboundaries to coboundaries.
    pub fn is_chain_map(&self) -> bool {
        (0..self.top()).all(|n| {
            let lhs = self.chi_matrix(n + 1).mul(self.c_bar.differential(n));
            let rhs = self.a_bar.differential(n).mul(&self.chi_matrix(n));
            lhs == rhs
        })
    }

    /// Rank of `chi^n` on cohomology, for `n < top`.
    pub fn degree(&self, n: usize) -> ChiDegree {
        let field = self.c_bar.field();
        let mut ech = Echelon::new(field, self.a_bar.dims()[n]);
        if n > 0 {
            for col in self.a_bar.differential(n - 1).transpose().into_rows() {
                ech.insert(col);
            }
        }
        let base = ech.rank();
        for z in kernel_sparse(self.c_bar.differential(n)).dense_vectors() {
            ech.insert(sparse_from_dense(&self.chi(&z, n)));
        }
        let rank = ech.rank() - base;
        let (hh_c, hh_a) = (self.c_hh[n], self.a_hh[n]);
        ChiDegree { degree: n, hh_c, hh_a, rank, injective: rank == hh_c, surjective: rank == hh_a }
    }

    /// `dim HH^n(C/A)` from the long exact sequence
    /// `HH^{n-1}(C) -> HH^{n-1}(A) -> HH^n(C/A) -> HH^n(C) -> HH^n(A)`.
    pub fn relative_dims_les(&self, degrees: &[ChiDegree]) -> Vec<usize> {
        (0..degrees.len())
            .map(|n| {
                let ker = degrees[n].hh_c - degrees[n].rank;
                let coker = if n == 0 { 0 } else { degrees[n - 1].hh_a - degrees[n - 1].rank };
                ker + coker
            })
            .collect()
    }

    /// `dim HH^n(C/A)` as the cohomology of the kernel of `chi`, for
    /// `n < top`.
    pub fn relative_dims_direct(&self) -> Vec<usize> {
        let field = self.c_bar.field();
        let complement: Vec<Vec<usize>> = (0..=self.top())
            .map(|n| {
                let mut selected = vec![false; self.c_bar.dims()[n]];
                for &i in &self.selections[n] {
                    selected[i] = true;
                }
                (0..selected.len()).filter(|&i| !selected[i]).collect()
            })
            .collect();
        let ranks: Vec<usize> = (0..self.top())
            .map(|n| {
                let mut col_pos = vec![usize::MAX; self.c_bar.dims()[n]];
                for (k, &i) in complement[n].iter().enumerate() {
                    col_pos[i] = k;
                }
                let d = self.c_bar.differential(n);
                let mut triples = Vec::new();
                for (r, &row) in complement[n + 1].iter().enumerate() {
                    for (c, x) in d.row(row) {
                        if col_pos[*c] != usize::MAX {
                            triples.push((r, col_pos[*c], x.clone()));
                        }
                    }
                }
                SparseMatrix::from_triples(field, complement[n + 1].len(), complement[n].len(), triples).rank()
            })
            .collect();
        (0..self.top())
            .map(|n| complement[n].len() - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] })
            .collect()
    }
}

/// Compatibility of `chi` with cup products on sampled cocycle pairs.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CupReport {
    pub tested: usize,
    /// Pairs whose cup product in `C` fails to be a cocycle.
    pub leibniz_failures: usize,
    /// Pairs with `chi(phi psi) - chi(phi) chi(psi)` not a coboundary.
    pub chi_failures: usize,
    pub degrees: Vec<(usize, usize)>,
}

impl CupReport {
    pub fn holds(&self, wanted: usize) -> bool {
        self.tested >= wanted && self.leibniz_failures == 0 && self.chi_failures == 0
    }
}

fn random_combination(rng: &mut ChaCha8Rng, field: Field, basis: &[Vec<Scalar>], width: usize) -> Vec<Scalar> {
    let mut out = vec![field.zero(); width];
    for b in basis {
        let c = field.from_i64(rng.gen_range(-3..=3));
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(b) {
            o.add_mul_assign(&c, x);
        }
    }
    out
}

/// Samples cocycle pairs in all degrees `p + q <= top` round-robin until
/// `wanted` pairs have been tested.
pub fn cup_compatibility(chi: &ChiComparison, wanted: usize, seed: u64) -> CupReport {
    let c = chi.c_cochains();
    let a = chi.a_cochains();
    let field = c.field();
    let top = chi.top();
    let cocycles: Vec<Vec<Vec<Scalar>>> =
        (0..top).map(|n| kernel_sparse(c.differential(n)).dense_vectors()).collect();
    let mut degrees = Vec::new();
    for n in 0..=top {
        for p in 0..=n {
            let q = n - p;
            if p < top && q < top && !cocycles[p].is_empty() && !cocycles[q].is_empty() {
                degrees.push((p, q));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CupReport { tested: 0, leibniz_failures: 0, chi_failures: 0, degrees: degrees.clone() };
    if degrees.is_empty() {
        return report;
    }
    let mut k = 0;
    while report.tested < wanted {
        let (p, q) = degrees[k % degrees.len()];
        k += 1;
        let phi = random_combination(&mut rng, field, &cocycles[p], c.dims()[p]);
        let psi = random_combination(&mut rng, field, &cocycles[q], c.dims()[q]);
        let n = p + q;
        let prod = c.cup(&phi, p, &psi, q);
        if n < top && !c.is_cocycle(&prod, n) {
            report.leibniz_failures += 1;
        }
        let lhs = chi.chi(&prod, n);
        let rhs = a.cup(&chi.chi(&phi, p), p, &chi.chi(&psi, q), q);
        let diff: Vec<Scalar> = lhs.iter().zip(&rhs).map(|(x, y)| x.sub(y)).collect();
        if !a.is_coboundary(&diff, n) {
            report.chi_failures += 1;
        }
        report.tested += 1;
    }
    report
}

/// `chi^j` bijective for `j <= g - 2`, injective for `j = g - 1`, and
/// `HH^i(C/A) = 0` for `i < g`, where `g` is the grade of `C/CeC`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MhhReport {
    pub grade: Grade,
    /// The grade is known exactly, or `C/CeC = 0`.
    pub conclusive: bool,
    pub chain_map: bool,
    pub degrees: Vec<ChiDegree>,
    pub relative_les: Vec<usize>,
    pub relative_direct: Vec<usize>,
    pub bijective_ok: bool,
    pub injective_ok: bool,
    pub vanishing_ok: bool,
}

impl MhhReport {
    pub fn holds(&self) -> bool {
        self.chain_map && self.relative_les == self.relative_direct && self.bijective_ok && self.injective_ok && self.vanishing_ok
    }
}

/// Runs the comparison in degrees `0..=n_max`.
pub fn verify_mhh(
    ctx: &MoritaContext,
    cutoff: usize,
    n_max: usize,
    config: &ResolutionConfig,
    cap: usize,
) -> Result<MhhReport> {
    let cbar = ctx.cbar_right();
    let grade = grade_of(&cbar, cutoff, config)?;
    // A lower bound for the grade; `None` when it is infinite.
    let (g, conclusive) = match grade {
        _ if cbar.dim() == 0 => (None, true),
        Grade::Finite(g) => (Some(g), true),
        Grade::Beyond(c) => (Some(c + 1), false),
    };
    let chi = ChiComparison::new(ctx.algebra(), ctx.e(), n_max + 1, cap)?;
    let degrees: Vec<ChiDegree> = (0..=n_max).map(|n| chi.degree(n)).collect();
    let relative_les = chi.relative_dims_les(&degrees);
    let relative_direct = chi.relative_dims_direct();
    let below = |j: usize, bound: Option<usize>, shift: usize| bound.map_or(true, |g| j + shift <= g);
    let bijective_ok = degrees.iter().filter(|d| below(d.degree, g, 2)).all(|d| d.injective && d.surjective);
    let injective_ok = match (g, conclusive) {
        (Some(g), true) if g >= 1 && g - 1 <= n_max => degrees[g - 1].injective,
        _ => true,
    };
    let vanishing_ok = relative_les.iter().enumerate().filter(|(i, _)| below(*i, g, 1)).all(|(_, &x)| x == 0);
    Ok(MhhReport {
        grade,
        conclusive,
        chain_map: chi.is_chain_map(),
        degrees,
        relative_les,
        relative_direct,
        bijective_ok,
        injective_ok,
        vanishing_ok,
    })
}

/// If `Ext^1_A(M, M) = 0` and `HH^2(A) = 0` then `HH^2(End_A(M (+) A)) = 0`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RigidityReport {
    pub ext1: usize,
    pub hh2_a: usize,
    pub hh2_c: usize,
    pub premise: bool,
}

impl RigidityReport {
    pub fn holds(&self) -> bool {
        !self.premise || self.hh2_c == 0
    }
}

pub fn rigidity_check(module: &RightModule, config: &ResolutionConfig, cap: usize) -> Result<RigidityReport> {
    let ext1 = ext_dims(module, module, 1, config)?[1];
    let aus = auslander_context(module)?;
    let chi = ChiComparison::new(aus.context.algebra(), aus.context.e(), 3, cap)?;
    let (hh2_c, hh2_a) = (chi.hh_c()[2], chi.hh_a()[2]);
    Ok(RigidityReport { ext1, hh2_a, hh2_c, premise: ext1 == 0 && hh2_a == 0 })
}

/// Homology of the relative bar complex `B(C/A)`, the quotient of the
/// normalized bar resolution of `C` by `Ce (x) B(A) (x) eC`, against
/// `(dim C/CeC, dim Omega, Tor^A_1(M, N), Tor^A_2(M, N), ...)`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RelativeBarReport {
    pub homology: Vec<usize>,
    pub expected: Vec<usize>,
}

impl RelativeBarReport {
    pub fn holds(&self) -> bool {
        self.homology == self.expected
    }
}

pub fn relative_bar_homology(
    ctx: &MoritaContext,
    max_degree: usize,
    config: &ResolutionConfig,
    cap: usize,
) -> Result<RelativeBarReport> {
    let c = ctx.algebra();
    let field = c.field();
    let e_prime = ctx.e_prime().to_vec();
    let mut idems = Vec::new();
    if e_prime.iter().any(|x| !x.is_zero()) {
        idems.push(e_prime);
    }
    let v = idems.len();
    idems.push(ctx.e().to_vec());
    let ad = AdaptedAlgebra::new(c, &idems)?;
    let top = max_degree + 1;
    // Use the cochain path enumeration; the coefficient blocks are not used.
    let skeleton = BarCochains::with_algebra_coefficients(ad, top, usize::MAX)?;
    let ad = skeleton.adapted();
    let alg = ad.algebra();
    let d = alg.dim();
    let r = ad.vertices();
    // Left factors in C e_s, right factors in e_t C.
    let mut left: Vec<Vec<usize>> = vec![Vec::new(); r];
    let mut right: Vec<Vec<usize>> = vec![Vec::new(); r];
    let mut left_pos = vec![0; d];
    let mut right_pos = vec![0; d];
    for k in 0..d {
        let (s, t) = ad.block(k);
        left_pos[k] = left[t].len();
        left[t].push(k);
        right_pos[k] = right[s].len();
        right[s].push(k);
    }
    let pure = |p: &super::bar::Path| p.start == v && p.end == v && p.arrows.iter().all(|&x| ad.block(ad.arrow(x as usize)) == (v, v));
    // Coordinates of the quotient complex: impure paths only.
    let mut offsets: Vec<Vec<Option<usize>>> = Vec::new();
    let mut dims = Vec::new();
    for n in 0..=top {
        let mut acc = 0;
        let mut off = Vec::new();
        for p in skeleton.paths(n) {
            if pure(p) {
                off.push(None);
            } else {
                off.push(Some(acc));
                acc += left[p.start].len() * right[p.end].len();
            }
        }
        if acc > cap {
            return Err(Error::ResourceCap { what: format!("relative bar chains in degree {n}"), needed: acc, cap });
        }
        offsets.push(off);
        dims.push(acc);
    }
    let sign = |k: usize| if k % 2 == 0 { field.one() } else { field.one().neg() };
    let mut differentials = Vec::new();
    // b_n : B_n -> B_{n-1}, stored as differentials[n - 1].
    for n in 1..=top {
        let mut triples = Vec::new();
        for (pi, p) in skeleton.paths(n).iter().enumerate() {
            let Some(col0) = offsets[n][pi] else { continue };
            let a = &p.arrows;
            let wr = right[p.end].len();
            let push = |target: usize, x: usize, y: usize, val: Scalar, src_x: usize, src_y: usize, triples: &mut Vec<_>| {
                if let Some(row0) = offsets[n - 1][target] {
                    let w = right[skeleton.paths(n - 1)[target].end].len();
                    triples.push((row0 + x * w + y, col0 + src_x * wr + src_y, val));
                }
            };
            for (ix, &x) in left[p.start].iter().enumerate() {
                for (iy, &y) in right[p.end].iter().enumerate() {
                    // x a_1 (x) a_2 ... (x) y
                    let first = ad.arrow(a[0] as usize);
                    let mid = ad.block(first).1;
                    let tail = skeleton.paths.find(&a[1..], mid);
                    for (k, c0) in alg.mul_sparse(&vec![(x, field.one())], &vec![(first, field.one())]) {
                        push(tail, left_pos[k], right_pos[y], c0, ix, iy, &mut triples);
                    }
                    // (-1)^i x (x) ... a_i a_{i+1} ... (x) y
                    for i in 1..n {
                        let prod = alg.product(ad.arrow(a[i - 1] as usize), ad.arrow(a[i] as usize));
                        for (k, c0) in prod {
                            let Some(xk) = ad.arrow_of(*k) else { continue };
                            let mut key: Vec<u32> = a[..i - 1].to_vec();
                            key.push(xk as u32);
                            key.extend_from_slice(&a[i + 1..]);
                            let target = skeleton.paths.find(&key, p.start);
                            push(target, left_pos[x], right_pos[y], sign(i).mul(c0), ix, iy, &mut triples);
                        }
                    }
                    // (-1)^n x (x) a_1 ... (x) a_n y
                    let last = ad.arrow(a[n - 1] as usize);
                    let pre = ad.block(last).0;
                    let init = skeleton.paths.find(&a[..n - 1], pre);
                    for (k, c0) in alg.mul_sparse(&vec![(last, field.one())], &vec![(y, field.one())]) {
                        push(init, left_pos[x], right_pos[k], sign(n).mul(&c0), ix, iy, &mut triples);
                    }
                }
            }
        }
        differentials.push(SparseMatrix::from_triples(field, dims[n - 1], dims[n], triples));
    }
    let complex = ChainComplex::new(field, dims, differentials);
    debug_assert!(complex.is_complex());
    let homology = complex.homology_dims();
    let fs = ctx.fundamental_sequence();
    let mut expected = vec![fs.dim_cbar, fs.dim_omega];
    if max_degree >= 2 {
        let tor = tor_dims(&ctx.m_bimodule().right_part(), &ctx.n_bimodule().left_part(), max_degree - 1, config)?;
        expected.extend_from_slice(&tor[1..]);
    }
    expected.truncate(max_degree + 1);
    Ok(RelativeBarReport { homology, expected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog::*;
    use crate::algebra::Idempotent;
    use crate::hochschild::DEFAULT_BAR_CAP;
    use std::sync::Arc;

    fn q() -> Field {
        Field::Rational
    }

    fn dual_simple_plus_regular() -> RightModule {
        let a = Arc::new(dual_numbers(q()));
        let rad = a.two_sided_ideal(&[a.basis_vector(1)]);
        let s = RightModule::cyclic_quotient(a.clone(), &rad).unwrap();
        s.direct_sum(&RightModule::regular(a))
    }

    #[test]
    fn unit_idempotent_gives_identity() {
        let c = dual_numbers(q());
        let chi = ChiComparison::new(&c, c.unit(), 3, DEFAULT_BAR_CAP).unwrap();
        assert!(chi.is_chain_map());
        for n in 0..3 {
            let d = chi.degree(n);
            assert!(d.injective && d.surjective);
        }
        assert_eq!(chi.relative_dims_direct(), vec![0, 0, 0]);
    }

    #[test]
    fn morita_case_is_bijective() {
        let c = full_matrix(q(), 2).tensor(&dual_numbers(q())).unwrap();
        let e = Idempotent::new(&c, {
            let mut v = c.zero_vector();
            v[0] = q().one();
            v
        })
        .unwrap();
        let ctx = MoritaContext::new(&c, &e).unwrap();
        let r = verify_mhh(&ctx, 4, 3, &ResolutionConfig::default(), DEFAULT_BAR_CAP).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.relative_les, vec![0, 0, 0, 0]);
        assert_eq!(r.degrees.iter().map(|d| d.hh_c).collect::<Vec<_>>(), vec![2, 1, 1, 1]);
    }

    #[test]
    fn auslander_context_of_dual_numbers() {
        let aus = auslander_context(&dual_simple_plus_regular()).unwrap();
        let r = verify_mhh(&aus.context, 5, 2, &ResolutionConfig::default(), DEFAULT_BAR_CAP).unwrap();
        assert_eq!(r.grade, Grade::Finite(2));
        assert!(r.holds(), "{r:?}");
        assert!(r.degrees[0].injective && r.degrees[0].surjective);
        assert!(r.degrees[1].injective);
        let chi = ChiComparison::new(aus.context.algebra(), aus.context.e(), 2, DEFAULT_BAR_CAP).unwrap();
        let cup = cup_compatibility(&chi, 10, 7);
        assert!(cup.holds(10), "{cup:?}");
    }

    #[test]
    fn relative_bar_homology_matches() {
        let a = Arc::new(dual_numbers(q()));
        let rad = a.two_sided_ideal(&[a.basis_vector(1)]);
        let s = RightModule::cyclic_quotient(a, &rad).unwrap();
        let aus = auslander_context(&s).unwrap();
        let r = relative_bar_homology(&aus.context, 3, &ResolutionConfig::default(), 100_000).unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn rigidity_for_projective_module() {
        let a = Arc::new(path_algebra_a2(q()));
        let p = RightModule::regular(a.clone()).submodule(&a.right_ideal(&[a.basis_vector(0)])).unwrap();
        let r = rigidity_check(&p, &ResolutionConfig::default(), DEFAULT_BAR_CAP).unwrap();
        assert!(r.premise);
        assert!(r.holds());
    }
}
