//! Algebras with a basis closed under multiplication up to phases.
//!
//! Both twisted group algebras and the defect tube algebra are of this kind:
//! every basis element `b` is an arrow `source(b) -> target(b)` between
//! objects, and `b2 * b1` (with `b1` applied first) is either zero, when the
//! arrows do not compose, or a phase times a basis element. This module
//! provides the scans and the semisimple decomposition shared by both.

use std::collections::VecDeque;

use nalgebra::{DMatrix, RealField};
use num_complex::Complex;
use num_traits::{Float, FloatConst};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::phases::Phase;
use crate::spectral::{cluster_sizes, eigenvalues, SpectralError};

pub trait MonomialAlgebra {
    fn dim(&self) -> usize;
    fn num_objects(&self) -> usize;
    fn source(&self, b: usize) -> usize;
    fn target(&self, b: usize) -> usize;
    /// `b2 * b1` for `source(b2) == target(b1)`.
    fn product(&self, b2: usize, b1: usize) -> (Phase, usize);
    /// The unit arrow at object `x`.
    fn identity_at(&self, x: usize) -> usize;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("basis element {0} has no inverse arrow")]
    NotInvertible(usize),
    #[error("decomposition of the block at object {representative} is inconsistent after {attempts} attempts: {detail}")]
    DecompositionInconsistent { representative: usize, attempts: usize, detail: String },
}

/// Basis elements grouped by source object.
pub fn outgoing<A: MonomialAlgebra + ?Sized>(alg: &A) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); alg.num_objects()];
    for b in 0..alg.dim() {
        out[alg.source(b)].push(b);
    }
    out
}

/// Connected components of the object graph, each sorted, ordered by their
/// least object.
pub fn blocks<A: MonomialAlgebra + ?Sized>(alg: &A) -> Vec<Vec<usize>> {
    let n = alg.num_objects();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for b in 0..alg.dim() {
        let (s, t) = (find(&mut parent, alg.source(b)), find(&mut parent, alg.target(b)));
        if s != t {
            parent[s.max(t)] = s.min(t);
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(x);
    }
    groups
}

/// First failure of associativity `(c b) a = c (b a)` or of the unit laws,
/// as the offending basis triple (unit failures repeat the element).
pub fn associativity_scan<A: MonomialAlgebra + ?Sized>(alg: &A) -> Option<[usize; 3]> {
    let out = outgoing(alg);
    for a in 0..alg.dim() {
        let ea = alg.identity_at(alg.target(a));
        let e0 = alg.identity_at(alg.source(a));
        if alg.product(ea, a) != (Phase::one(), a) || alg.product(a, e0) != (Phase::one(), a) {
            return Some([a, a, a]);
        }
        for &b in &out[alg.target(a)] {
            let (p_ba, ba) = alg.product(b, a);
            for &c in &out[alg.target(b)] {
                let (p_cb, cb) = alg.product(c, b);
                let (p1, r1) = alg.product(cb, a);
                let (p2, r2) = alg.product(c, ba);
                if r1 != r2 || p_cb * p1 != p_ba * p2 {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// For each basis arrow `u: x -> y`, an arrow `v: y -> x` and the phase
/// `l` with `v u = l e_x`.
fn pseudo_inverses<A: MonomialAlgebra + ?Sized>(
    alg: &A,
    out: &[Vec<usize>],
) -> Result<Vec<(usize, Phase)>, MonomialError> {
    (0..alg.dim())
        .map(|u| {
            let (x, y) = (alg.source(u), alg.target(u));
            let ex = alg.identity_at(x);
            out[y]
                .iter()
                .filter(|&&v| alg.target(v) == x)
                .find_map(|&v| {
                    let (l, r) = alg.product(v, u);
                    (r == ex).then_some((v, l))
                })
                .ok_or(MonomialError::NotInvertible(u))
        })
        .collect()
}

/// Exact dimension of the center of the block spanned by `objects`.
///
/// Central elements are supported on loops. Conjugation `l -> u l u^-1`
/// permutes loops up to phases; the center has one basis element per orbit
/// on which every conjugation fixing a loop fixes it with phase exactly 1.
pub fn center_dimension<A: MonomialAlgebra + ?Sized>(
    alg: &A,
    objects: &[usize],
) -> Result<usize, MonomialError> {
    let out = outgoing(alg);
    let inv = pseudo_inverses(alg, &out)?;
    let conj = |u: usize, l: usize| {
        let (v, lam) = inv[u];
        let (p1, lv) = alg.product(l, v);
        let (p2, r) = alg.product(u, lv);
        (p1 * p2 / lam, r)
    };
    let mut seen = vec![false; alg.dim()];
    let mut count = 0;
    for &x in objects {
        for &l in &out[x] {
            if alg.target(l) != x || seen[l] {
                continue;
            }
            let regular = out[x].iter().all(|&u| {
                if alg.target(u) != x {
                    return true;
                }
                let (p, r) = conj(u, l);
                r != l || p.is_one()
            });
            if regular {
                count += 1;
            }
            let mut queue = VecDeque::from([l]);
            seen[l] = true;
            while let Some(k) = queue.pop_front() {
                for &u in &out[alg.source(k)] {
                    let (_, r) = conj(u, k);
                    if !seen[r] {
                        seen[r] = true;
                        queue.push_back(r);
                    }
                }
            }
        }
    }
    Ok(count)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecompositionConfig {
    pub seed: u64,
    /// Eigenvalues closer than this are identified.
    pub tolerance: f64,
    /// Distinct clusters must be at least this far apart.
    pub gap: f64,
    pub max_attempts: usize,
}

impl Default for DecompositionConfig {
    fn default() -> Self {
        Self { seed: 0, tolerance: 1e-8, gap: 1e-4, max_attempts: 5 }
    }
}

/// The simple modules supported on one block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSpectrum {
    /// Least object of the block.
    pub representative: usize,
    /// Number of objects in the block.
    pub objects: usize,
    /// Dimension of each simple module at a single object, ascending.
    pub local_dims: Vec<usize>,
    pub center_dimension: usize,
    /// Random elements drawn before the counts agreed.
    pub attempts: usize,
}

/// Seed for attempt `k` at object `x`, independent of evaluation order.
fn attempt_seed(seed: u64, x: usize, k: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ ((x as u64) << 24) ^ (k as u64)
}

/// Left action of a random element on the column module `A e_x`.
fn column_matrix<A, T>(alg: &A, out: &[Vec<usize>], x: usize, coeff: &[T]) -> DMatrix<Complex<T>>
where
    A: MonomialAlgebra + ?Sized,
    T: RealField + Float + FloatConst,
{
    let cols = &out[x];
    let d = cols.len();
    let mut pos = vec![usize::MAX; alg.dim()];
    for (i, &b) in cols.iter().enumerate() {
        pos[b] = i;
    }
    let mut m = DMatrix::from_element(d, d, Complex::new(T::zero(), T::zero()));
    for (j, &b) in cols.iter().enumerate() {
        for &c in &out[alg.target(b)] {
            let (p, r) = alg.product(c, b);
            let z: Complex<T> = p.to_complex();
            m[(pos[r], j)] += z * coeff[c];
        }
    }
    m
}

/// Simple modules of each block by eigenvalue multiplicities of a random
/// element acting on a column module.
///
/// On the block of an object orbit `O`, a simple module `V` of local
/// dimension `n` has dimension `|O| n` and occurs `n` times in `A e_x`; a
/// generic element therefore shows `|O| n` distinct eigenvalues of
/// multiplicity `n` on it. The count is accepted only if it matches the
/// exact center dimension and, when given, `expected(representative)`;
/// otherwise a new element is drawn.
pub fn decompose<A, T>(
    alg: &A,
    config: &DecompositionConfig,
    expected: &dyn Fn(usize) -> Option<usize>,
) -> Result<Vec<BlockSpectrum>, MonomialError>
where
    A: MonomialAlgebra + ?Sized,
    T: RealField + Float + FloatConst,
{
    let out = outgoing(alg);
    let tol: T = nalgebra::convert(config.tolerance);
    let gap: T = nalgebra::convert(config.gap);
    let mut result = Vec::new();
    for block in blocks(alg) {
        let x = block[0];
        let orbit = block.len();
        let d = out[x].len();
        let center = center_dimension(alg, &block)?;
        let want = expected(x);
        let mut detail = String::new();
        let mut found = None;
        for attempt in 1..=config.max_attempts.max(1) {
            let mut rng = ChaCha8Rng::seed_from_u64(attempt_seed(config.seed, x, attempt));
            let raw: Vec<f64> = (0..alg.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let norm: f64 = raw.iter().map(|v| v.abs()).sum();
            let coeff: Vec<T> = raw.iter().map(|v| nalgebra::convert(v / norm)).collect();
            let eigs = match eigenvalues(column_matrix(alg, &out, x, &coeff)) {
                Ok(e) => e,
                Err(e) => {
                    detail = format!("{e:?}");
                    continue;
                }
            };
            let sizes = match cluster_sizes(&eigs, tol, gap) {
                Ok(s) => s,
                Err(SpectralError::GapTooSmall { distance }) => {
                    detail = format!("clusters only {distance:.3e} apart");
                    continue;
                }
                Err(e) => {
                    detail = format!("{e:?}");
                    continue;
                }
            };
            match local_dims(&sizes, orbit, d) {
                Ok(dims) if dims.len() == center && want.is_none_or(|w| w == dims.len()) => {
                    found = Some((dims, attempt));
                    break;
                }
                Ok(dims) => {
                    detail = format!(
                        "{} simples from eigenvalues, center dimension {center}, expected {want:?}",
                        dims.len()
                    );
                }
                Err(e) => detail = e,
            }
        }
        let Some((local_dims, attempts)) = found else {
            return Err(MonomialError::DecompositionInconsistent {
                representative: x,
                attempts: config.max_attempts,
                detail,
            });
        };
        result.push(BlockSpectrum {
            representative: x,
            objects: orbit,
            local_dims,
            center_dimension: center,
            attempts,
        });
    }
    Ok(result)
}

/// Converts eigenvalue cluster sizes on `A e_x` into local dimensions.
fn local_dims(sizes: &[usize], orbit: usize, d: usize) -> Result<Vec<usize>, String> {
    let mut by_size = std::collections::BTreeMap::new();
    for &s in sizes {
        *by_size.entry(s).or_insert(0usize) += 1;
    }
    let mut dims = Vec::new();
    for (&n, &clusters) in &by_size {
        if clusters % (orbit * n) != 0 {
            return Err(format!("{clusters} clusters of size {n} on an orbit of size {orbit}"));
        }
        dims.extend(std::iter::repeat_n(n, clusters / (orbit * n)));
    }
    let sq: usize = dims.iter().map(|n| n * n).sum();
    if sq * orbit != d {
        return Err(format!("sum of squared dimensions {sq} times {orbit} != {d}"));
    }
    Ok(dims)
}
