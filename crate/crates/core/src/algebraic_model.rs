//! Bimodules between graded algebra objects, flattened to modules over a
//! tube algebra.
//!
//! Degrees live in `G x G` with associator
//! `W(a, b, c) = w(a1, b1, c1) w(a2, b2, c2)^-1`. An algebra object with
//! one-dimensional components has structure constants `c(a, b)` and is
//! associative in the twisted sense when
//!
//! ```text
//! c(a, b) c(ab, c) = W(a, b, c) c(b, c) c(a, bc).
//! ```
//!
//! A bimodule `M` over `A_G` (left, degrees `(g, g)`) and `A_H` (right,
//! degrees `iota(k)`) is given by operators `rho(x; g): M_x -> M_gx` and
//! `varrho(x; k): M_x -> M_{x iota(k)}` subject to
//!
//! ```text
//! rho(gx; g') rho(x; g)                 = W(g', g, x)^-1 rho(x; g'g)
//! varrho(x iota(k); k') varrho(x; k)    = W(x, iota(k), iota(k')) c_H(k, k') varrho(x; kk')
//! rho(x iota(k); g) varrho(x; k)        = W(g, x, iota(k))^-1 varrho(gx; k) rho(x; g)
//! ```
//!
//! The tube algebra has basis `b(x; g, h) = varrho(gx; h^-1) rho(x; g)`,
//! an arrow `x -> g x iota(h)^-1`, and its modules are exactly such
//! bimodules.

use std::collections::HashMap;

use nalgebra::RealField;
use num_traits::{Float, FloatConst};
use serde::Serialize;
use thiserror::Error;

use crate::groupoid_rep::{orbit_seed, CategoryInvariants, Provenance};
use crate::groups::{FiniteGroup, PairEmbedding};
use crate::monomial::{
    associativity_scan, blocks, decompose, BlockSpectrum, DecompositionConfig,
    MonomialAlgebra, MonomialError,
};
use crate::phases::{Cochain, Phase, ScanResult};
use crate::transgression::{DefectDatum, GroupoidCocycle, TransgressionError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraicError {
    #[error(transparent)]
    Transgression(#[from] TransgressionError),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error("{algebra} fails twisted associativity at {witness:?}")]
    AssociativityFailure { algebra: &'static str, witness: Vec<usize> },
    #[error("support is not closed under multiplication")]
    SupportNotClosed,
}

/// `W(a, b, c)` on pairs.
fn big_omega(w: &Cochain, a: (usize, usize), b: (usize, usize), c: (usize, usize)) -> Phase {
    w.at3(a.0, b.0, c.0) / w.at3(a.1, b.1, c.1)
}

fn pair_mul(g: &FiniteGroup, a: (usize, usize), b: (usize, usize)) -> (usize, usize) {
    (g.mul(a.0, b.0), g.mul(a.1, b.1))
}

/// An algebra object in `G x G`-graded spaces with one-dimensional
/// components on `support`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAlgebraObject {
    pub support: Vec<(usize, usize)>,
    /// `constants[i * n + j]` is the phase of `e_i e_j`.
    pub constants: Vec<Phase>,
    /// `products[i * n + j]` is the support index of `e_i e_j`.
    pub products: Vec<usize>,
}

impl GradedAlgebraObject {
    fn from_fn(
        g: &FiniteGroup,
        support: Vec<(usize, usize)>,
        c: impl Fn(usize, usize) -> Phase,
    ) -> Result<Self, AlgebraicError> {
        let n = support.len();
        let index: HashMap<(usize, usize), usize> =
            support.iter().enumerate().map(|(i, &d)| (d, i)).collect();
        let mut constants = Vec::with_capacity(n * n);
        let mut products = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let d = pair_mul(g, support[i], support[j]);
                products.push(*index.get(&d).ok_or(AlgebraicError::SupportNotClosed)?);
                constants.push(c(i, j));
            }
        }
        Ok(Self { support, constants, products })
    }

    pub fn dim(&self) -> usize {
        self.support.len()
    }

    pub fn product(&self, i: usize, j: usize) -> (Phase, usize) {
        let k = i * self.dim() + j;
        (self.constants[k], self.products[k])
    }

    /// Unit laws at degree `(e, e)`, then the twisted associativity law;
    /// witness a support triple (unit failures repeat the element).
    pub fn twisted_associativity_scan(&self, w: &Cochain) -> ScanResult {
        let fail = |v: Vec<usize>| ScanResult { ok: false, witness: Some(v) };
        let n = self.dim();
        let Some(u) = self.support.iter().position(|&d| d == (0, 0)) else {
            return fail(vec![]);
        };
        for a in 0..n {
            if self.product(u, a) != (Phase::one(), a) || self.product(a, u) != (Phase::one(), a) {
                return fail(vec![a, a, a]);
            }
        }
        for a in 0..n {
            for b in 0..n {
                let (cab, ab) = self.product(a, b);
                for c in 0..n {
                    let (cbc, bc) = self.product(b, c);
                    let lhs = cab * self.product(ab, c).0;
                    let s = &self.support;
                    let rhs = big_omega(w, s[a], s[b], s[c]) * cbc * self.product(a, bc).0;
                    if lhs != rhs {
                        return fail(vec![a, b, c]);
                    }
                }
            }
        }
        ScanResult { ok: true, witness: None }
    }
}

/// `A_{H, theta}` without admission checks: support index `k` sits in
/// degree `iota(k)` (the component of `h = k^-1`, degree
/// `(iota1(h)^-1, iota2(h)^-1)`), with `e_k e_k' = theta(k, k')^-1 e_kk'`.
pub fn a_h_theta_from_parts(
    g: &FiniteGroup,
    embedding: &PairEmbedding,
    theta: &Cochain,
) -> Result<GradedAlgebraObject, AlgebraicError> {
    let support = embedding.subgroup().elements().map(|k| embedding.iota(k)).collect();
    GradedAlgebraObject::from_fn(g, support, |a, b| theta.at2(a, b).inv())
}

pub fn build_a_h_theta(datum: &DefectDatum) -> Result<GradedAlgebraObject, AlgebraicError> {
    datum.require_admitted()?;
    let a = a_h_theta_from_parts(datum.group(), datum.embedding(), datum.theta())?;
    let scan = a.twisted_associativity_scan(datum.omega());
    match scan.witness {
        Some(witness) => Err(AlgebraicError::AssociativityFailure { algebra: "A_H", witness }),
        None => Ok(a),
    }
}

/// The group algebra on diagonal degrees `(g, g)`.
pub fn build_a_g_diag(g: &FiniteGroup, omega: &Cochain) -> Result<GradedAlgebraObject, AlgebraicError> {
    let a = GradedAlgebraObject::from_fn(g, g.elements().map(|x| (x, x)).collect(), |_, _| Phase::one())?;
    let scan = a.twisted_associativity_scan(omega);
    match scan.witness {
        Some(witness) => Err(AlgebraicError::AssociativityFailure { algebra: "A_G", witness }),
        None => Ok(a),
    }
}

/// The tube algebra of a defect datum; see the module docs.
#[derive(Debug, Clone)]
pub struct DefectTubeAlgebra {
    group: FiniteGroup,
    embedding: PairEmbedding,
    omega: Cochain,
    theta: Cochain,
}

/// A tube basis element `b(x; g, h)`, `x = (a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TubeBasis {
    pub a: usize,
    pub b: usize,
    pub g: usize,
    pub h: usize,
}

impl DefectTubeAlgebra {
    fn n(&self) -> usize {
        self.group.order()
    }

    fn nh(&self) -> usize {
        self.embedding.subgroup().order()
    }

    pub fn index(&self, t: TubeBasis) -> usize {
        let (n, nh) = (self.n(), self.nh());
        ((t.a * n + t.b) * n + t.g) * nh + t.h
    }

    pub fn basis(&self, i: usize) -> TubeBasis {
        let (n, nh) = (self.n(), self.nh());
        let (x, m) = (i / (n * nh), i % (n * nh));
        TubeBasis { a: x / n, b: x % n, g: m / nh, h: m % nh }
    }

    /// `rho(x; g)` and `varrho(x; k)` as basis elements.
    pub fn rho(&self, x: usize, g: usize) -> usize {
        x * self.n() * self.nh() + g * self.nh()
    }

    pub fn varrho(&self, x: usize, k: usize) -> usize {
        let h = self.embedding.subgroup().inv(k);
        x * self.n() * self.nh() + h
    }

    fn diag(&self, g: usize) -> (usize, usize) {
        (g, g)
    }

    /// `(nonzero phase, index)` triples `(i, j, k, exponent)` with
    /// `b_i b_j = e(exponent) b_k`, `b_j` applied first, ordered by `i`
    /// then `j`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, String)> {
        let out = crate::monomial::outgoing(self);
        let mut v = Vec::new();
        for i in 0..self.dim() {
            let x = self.source(i);
            for j in 0..self.dim() {
                if self.target(j) == x {
                    let (p, k) = self.product(i, j);
                    v.push((i, j, k, p.to_string()));
                }
            }
        }
        debug_assert_eq!(v.len(), out.iter().map(|o| o.len() * o.len()).sum::<usize>());
        v
    }
}

impl MonomialAlgebra for DefectTubeAlgebra {
    fn dim(&self) -> usize {
        self.n().pow(3) * self.nh()
    }

    fn num_objects(&self) -> usize {
        self.n() * self.n()
    }

    fn source(&self, b: usize) -> usize {
        b / (self.n() * self.nh())
    }

    fn target(&self, b: usize) -> usize {
        let t = self.basis(b);
        let g = &self.group;
        let (i1, i2) = self.embedding.iota(t.h);
        let a = g.mul(g.mul(t.g, t.a), g.inv(i1));
        let bb = g.mul(g.mul(t.g, t.b), g.inv(i2));
        a * self.n() + bb
    }

    /// `b(y; g', h') b(x; g, h)` by moving `varrho(k)` past `rho(g')` and
    /// then merging the two `rho`s and the two `varrho`s.
    fn product(&self, b2: usize, b1: usize) -> (Phase, usize) {
        let (t1, t2) = (self.basis(b1), self.basis(b2));
        let g = &self.group;
        let hg = self.embedding.subgroup();
        let w = &self.omega;
        let x = (t1.a, t1.b);
        let (k, k2) = (hg.inv(t1.h), hg.inv(t2.h));
        let ik = self.embedding.iota(k);
        let ik2 = self.embedding.iota(k2);
        let gx = pair_mul(g, self.diag(t1.g), x);
        let g2gx = pair_mul(g, self.diag(t2.g), gx);
        let swap = big_omega(w, self.diag(t2.g), gx, ik).inv();
        let vv = big_omega(w, g2gx, ik, ik2) * self.theta.at2(k, k2).inv();
        let rr = big_omega(w, self.diag(t2.g), self.diag(t1.g), x).inv();
        let prod = TubeBasis { a: t1.a, b: t1.b, g: g.mul(t2.g, t1.g), h: hg.mul(t2.h, t1.h) };
        (swap * vv * rr, self.index(prod))
    }

    fn identity_at(&self, x: usize) -> usize {
        self.rho(x, 0)
    }
}

pub fn build_tube_algebra(datum: &DefectDatum) -> Result<DefectTubeAlgebra, AlgebraicError> {
    datum.require_admitted()?;
    let tube = DefectTubeAlgebra {
        group: datum.group().clone(),
        embedding: datum.embedding().clone(),
        omega: datum.omega().clone(),
        theta: datum.theta().clone(),
    };
    if let Some(w) = associativity_scan(&tube) {
        return Err(AlgebraicError::AssociativityFailure { algebra: "tube", witness: w.to_vec() });
    }
    Ok(tube)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RelationStatus {
    Holds,
    /// First argument tuple `(x, g or h, g' or h')` where the sides differ.
    Fails { witness: Vec<usize> },
    /// The relation only matches the transgression for symmetric data.
    NotApplicable,
}

impl RelationStatus {
    pub fn ok(&self) -> bool {
        !matches!(self, RelationStatus::Fails { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    /// `rho rho` against `c(x; (g,e), (g',e))`.
    pub rho: RelationStatus,
    /// `varrho varrho` against `c(x; (e,h), (e,h'))`.
    pub varrho: RelationStatus,
    /// `rho varrho` against `c(x; (e,h), (g,e))`.
    pub mixed: RelationStatus,
}

impl TheoremCheck {
    pub fn holds(&self) -> bool {
        self.rho.ok() && self.varrho.ok() && self.mixed.ok()
    }

    /// All three relations were checked and hold.
    pub fn verified(&self) -> bool {
        [&self.rho, &self.varrho, &self.mixed].iter().all(|r| **r == RelationStatus::Holds)
    }
}

/// Compares the generator relations of the tube algebra with the
/// transgressed cocycle. Each printed relation has the form
/// `(product of generators) = phase^-1 (generator)`; the phase is read off
/// the tube algebra and compared to the matching specialization of `tau`.
///
/// The `rho` relation holds for every admitted datum. The other two match
/// `tau` only up to the tetrahedral and triangle symmetries, so they are
/// reported as not applicable when those fail.
pub fn verify_theorem_relations(
    datum: &DefectDatum,
    tau: &GroupoidCocycle,
) -> Result<TheoremCheck, AlgebraicError> {
    let tube = build_tube_algebra(datum)?;
    Ok(theorem_relations_on(&tube, datum, tau))
}

/// [`verify_theorem_relations`] for an already built tube algebra of `datum`.
pub fn theorem_relations_on(tube: &DefectTubeAlgebra, datum: &DefectDatum, tau: &GroupoidCocycle) -> TheoremCheck {
    let (n, nh) = (datum.group().order(), datum.subgroup().order());
    let hg = datum.subgroup();
    let morph = |gg: usize, h: usize| gg * nh + h;
    let tube_phase = |b2: usize, b1: usize| tube.product(b2, b1).0;

    let scan = |f: &dyn Fn(usize, usize, usize) -> bool, second: usize, third: usize| {
        for x in 0..n * n {
            for i in 0..second {
                for j in 0..third {
                    if !f(x, i, j) {
                        return RelationStatus::Fails { witness: vec![x, i, j] };
                    }
                }
            }
        }
        RelationStatus::Holds
    };

    let rho = scan(
        &|x, g1, g2| {
            let gx = tube.target(tube.rho(x, g1));
            tube_phase(tube.rho(gx, g2), tube.rho(x, g1)).inv() == tau.get(x, morph(g1, 0), morph(g2, 0))
        },
        n,
        n,
    );
    let symmetric = datum.certificates().symmetric();
    let (varrho, mixed) = if !symmetric {
        (RelationStatus::NotApplicable, RelationStatus::NotApplicable)
    } else {
        let vv = scan(
            &|x, h1, h2| {
                let v1 = tube.varrho(x, hg.inv(h1));
                let v2 = tube.varrho(tube.target(v1), hg.inv(h2));
                tube_phase(v2, v1).inv() == tau.get(x, morph(0, h1), morph(0, h2))
            },
            nh,
            nh,
        );
        let mx = scan(
            &|x, h, gg| {
                let v = tube.varrho(x, hg.inv(h));
                let r = tube.rho(tube.target(v), gg);
                tube_phase(r, v).inv() == tau.get(x, morph(0, h), morph(gg, 0))
            },
            nh,
            n,
        );
        (vv, mx)
    };
    TheoremCheck { rho, varrho, mixed }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub invariants: CategoryInvariants,
    /// Graded dimension of each simple, blocks by ascending representative.
    pub graded_dims: Vec<usize>,
    #[serde(skip)]
    pub blocks: Vec<BlockSpectrum>,
    pub center_dimension: usize,
}

/// Simple modules of the tube algebra.
pub fn decompose_bimodule_category<T>(
    datum: &DefectDatum,
    config: &DecompositionConfig,
) -> Result<DecompositionReport, AlgebraicError>
where
    T: RealField + Float + FloatConst,
{
    let tube = build_tube_algebra(datum)?;
    decompose_tube::<T>(&tube, config)
}

pub fn decompose_tube<T>(
    tube: &DefectTubeAlgebra,
    config: &DecompositionConfig,
) -> Result<DecompositionReport, AlgebraicError>
where
    T: RealField + Float + FloatConst,
{
    let mut spectra = Vec::new();
    for block in blocks(tube) {
        let x = block[0];
        let sub = BlockView { tube, objects: &block };
        let cfg = DecompositionConfig { seed: orbit_seed(config.seed, x), ..*config };
        let mut s = decompose::<_, T>(&sub, &cfg, &|_| None)?;
        let mut b = s.pop().expect("one block");
        b.representative = x;
        spectra.push(b);
    }
    let per: Vec<(usize, Vec<usize>)> = spectra.iter().map(|b| (b.objects, b.local_dims.clone())).collect();
    let invariants = CategoryInvariants::from_orbits(&per, tube.n(), Provenance::Algebraic);
    let graded_dims = per.iter().flat_map(|(o, d)| d.iter().map(move |n| o * n)).collect();
    let center_dimension = spectra.iter().map(|b| b.center_dimension).sum();
    Ok(DecompositionReport { invariants, graded_dims, blocks: spectra, center_dimension })
}

/// One block of the tube algebra, reindexed so that it can be decomposed
/// on its own.
struct BlockView<'a> {
    tube: &'a DefectTubeAlgebra,
    objects: &'a [usize],
}

impl BlockView<'_> {
    fn local(&self, x: usize) -> usize {
        self.objects.binary_search(&x).expect("object in block")
    }

    fn width(&self) -> usize {
        self.tube.n() * self.tube.nh()
    }
}

impl MonomialAlgebra for BlockView<'_> {
    fn dim(&self) -> usize {
        self.objects.len() * self.width()
    }
    fn num_objects(&self) -> usize {
        self.objects.len()
    }
    fn source(&self, b: usize) -> usize {
        b / self.width()
    }
    fn target(&self, b: usize) -> usize {
        self.local(self.tube.target(self.global(b)))
    }
    fn product(&self, b2: usize, b1: usize) -> (Phase, usize) {
        let (p, r) = self.tube.product(self.global(b2), self.global(b1));
        (p, self.source(b1) * self.width() + r % self.width())
    }
    fn identity_at(&self, x: usize) -> usize {
        x * self.width()
    }
}

impl BlockView<'_> {
    fn global(&self, b: usize) -> usize {
        self.objects[b / self.width()] * self.width() + b % self.width()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid_rep::linearization_invariants;
    use crate::groups::{cyclic, symmetric3};
    use crate::phases::{cyclic_three_cocycle, symmetrize_in_class, SolverConfig, SymmetrizeOutcome};
    use crate::transgression::tau_closed_form;

    fn datum(g: &FiniteGroup, w: Cochain, emb: PairEmbedding) -> DefectDatum {
        let theta = Cochain::unit(emb.subgroup(), 2);
        DefectDatum::admit(g.clone(), w, emb, theta).unwrap()
    }

    fn symmetric(n: usize, p: usize) -> Cochain {
        match symmetrize_in_class(&cyclic_three_cocycle(n, p), &SolverConfig::default()).unwrap() {
            SymmetrizeOutcome::Symmetric { symmetric, .. } => symmetric,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn graded_algebras() {
        let t = FiniteGroup::trivial();
        let d = datum(&t, Cochain::unit(&t, 3), PairEmbedding::trivial());
        let a = build_a_h_theta(&d).unwrap();
        assert_eq!(a.support, vec![(0, 0)]);

        let z4 = cyclic(4);
        let w = symmetric(4, 2);
        let d = datum(&z4, w.clone(), PairEmbedding::diagonal(&z4));
        assert_eq!(build_a_h_theta(&d).unwrap().dim(), 4);
        assert_eq!(build_a_g_diag(&z4, &w).unwrap().dim(), 4);
        let s3 = symmetric3();
        let a = build_a_g_diag(&s3, &Cochain::unit(&s3, 3)).unwrap();
        assert!(a.constants.iter().all(Phase::is_one));
    }

    /// Trivial omega: A_H is the twisted group algebra of H and is
    /// associative iff theta is a cocycle.
    #[test]
    fn a_h_associativity_tracks_defect_condition() {
        let z4 = cyclic(4);
        let w = cyclic_three_cocycle(4, 1);
        // iota(h) = (2h, 0): pullback difference is nontrivial
        let z2 = cyclic(2);
        let emb = PairEmbedding::new(z2.clone(), vec![(0, 0), (2, 0)], &z4).unwrap();
        let theta_ok = Cochain::from_fn(&z2, 2, |t| Phase::new((t[0] * t[1]) as i64, 4));
        let d = DefectDatum::new(z4.clone(), w.clone(), emb.clone(), theta_ok.clone()).unwrap();
        let a = a_h_theta_from_parts(&z4, &emb, &theta_ok).unwrap();
        assert_eq!(d.certificates().defect_condition.ok, a.twisted_associativity_scan(&w).ok);

        for entry in [[1usize, 1], [0, 1]] {
            let mut bad = theta_ok.clone();
            bad.set(&entry, bad.get(&entry) * Phase::new(1, 3));
            let d = DefectDatum::new(z4.clone(), w.clone(), emb.clone(), bad.clone()).unwrap();
            let a = a_h_theta_from_parts(&z4, &emb, &bad).unwrap();
            assert_eq!(d.certificates().defect_condition.ok, a.twisted_associativity_scan(&w).ok);
            assert!(!a.twisted_associativity_scan(&w).ok);
        }
    }

    #[test]
    fn tube_dimensions() {
        let t = FiniteGroup::trivial();
        let d = datum(&t, Cochain::unit(&t, 3), PairEmbedding::trivial());
        assert_eq!(build_tube_algebra(&d).unwrap().dim(), 1);
        let z2 = cyclic(2);
        let d = datum(&z2, Cochain::unit(&z2, 3), PairEmbedding::trivial());
        let tube = build_tube_algebra(&d).unwrap();
        assert_eq!(tube.dim(), 8);
        for i in 0..tube.dim() {
            assert_eq!(tube.index(tube.basis(i)), i);
        }
    }

    #[test]
    fn tube_is_associative_without_symmetry() {
        let z2 = cyclic(2);
        let d = datum(&z2, cyclic_three_cocycle(2, 1), PairEmbedding::diagonal(&z2));
        let tube = build_tube_algebra(&d).unwrap();
        assert!(associativity_scan(&tube).is_none());
        let tau = tau_closed_form(&d).unwrap();
        let check = verify_theorem_relations(&d, &tau).unwrap();
        assert_eq!(check.rho, RelationStatus::Holds);
        assert_eq!(check.varrho, RelationStatus::NotApplicable);
    }

    #[test]
    fn relations_hold_for_symmetric_data() {
        let t = FiniteGroup::trivial();
        let d = datum(&t, Cochain::unit(&t, 3), PairEmbedding::trivial());
        assert!(verify_theorem_relations(&d, &tau_closed_form(&d).unwrap()).unwrap().holds());

        let z4 = cyclic(4);
        let d = datum(&z4, symmetric(4, 2), PairEmbedding::diagonal(&z4));
        let tau = tau_closed_form(&d).unwrap();
        let check = verify_theorem_relations(&d, &tau).unwrap();
        assert_eq!(check, TheoremCheck {
            rho: RelationStatus::Holds,
            varrho: RelationStatus::Holds,
            mixed: RelationStatus::Holds
        });
    }

    #[test]
    fn corrupted_tau_breaks_a_relation() {
        let z4 = cyclic(4);
        let d = datum(&z4, symmetric(4, 2), PairEmbedding::diagonal(&z4));
        let mut tau = tau_closed_form(&d).unwrap();
        // x = 0, m = (1, e), m' = (1, e)
        let v = tau.get(0, 4, 4);
        tau.set(0, 4, 4, v * Phase::new(1, 2));
        let check = verify_theorem_relations(&d, &tau).unwrap();
        assert_eq!(check.rho, RelationStatus::Fails { witness: vec![0, 1, 1] });
    }

    #[test]
    fn decompositions_match_groupoid_route() {
        let cfg = DecompositionConfig::default();
        let t = FiniteGroup::trivial();
        let d = datum(&t, Cochain::unit(&t, 3), PairEmbedding::trivial());
        let r = decompose_bimodule_category::<f64>(&d, &cfg).unwrap();
        assert_eq!((r.invariants.count, r.invariants.total_dims.clone()), (1, vec![1]));

        let z2 = cyclic(2);
        let d = datum(&z2, Cochain::unit(&z2, 3), PairEmbedding::diagonal(&z2));
        let r = decompose_bimodule_category::<f64>(&d, &cfg).unwrap();
        assert_eq!(r.invariants.count, 4);

        let s3 = symmetric3();
        let d = datum(&s3, Cochain::unit(&s3, 3), PairEmbedding::diagonal(&s3));
        let r = decompose_bimodule_category::<f64>(&d, &cfg).unwrap();
        assert_eq!(r.invariants.total_dims, vec![1, 1, 2, 2, 2, 2, 3, 3]);
        assert_eq!(r.center_dimension, 8);
        let lin = linearization_invariants::<f64>(&d, &tau_closed_form(&d).unwrap(), &cfg).unwrap();
        assert!(r.invariants.agrees_with(&lin.invariants));

        let z4 = cyclic(4);
        let d = datum(&z4, symmetric(4, 2), PairEmbedding::diagonal(&z4));
        let r = decompose_bimodule_category::<f64>(&d, &cfg).unwrap();
        let lin = linearization_invariants::<f64>(&d, &tau_closed_form(&d).unwrap(), &cfg).unwrap();
        assert!(r.invariants.agrees_with(&lin.invariants), "{:?} vs {:?}", r.invariants, lin.invariants);
    }

    #[test]
    fn export_is_canonical() {
        let z2 = cyclic(2);
        let d = datum(&z2, cyclic_three_cocycle(2, 1), PairEmbedding::diagonal(&z2));
        let tube = build_tube_algebra(&d).unwrap();
        let sc = tube.structure_constants();
        // 4 objects, 4 outgoing and 4 incoming arrows each
        assert_eq!(sc.len(), 4 * 4 * 4);
        assert!(sc.windows(2).all(|w| (w[0].0, w[0].1) < (w[1].0, w[1].1)));
        assert!(sc.iter().any(|e| e.3 != "0/1"));
    }
}
