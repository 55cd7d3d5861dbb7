//! The action groupoid of a defect datum and its twisted linearization.
//!
//! Simple objects of the linearization are pairs (orbit, irreducible
//! projective representation of the stabilizer), the projectivity given by
//! the restriction of the transgressed 2-cocycle.

use nalgebra::RealField;
use num_traits::{Float, FloatConst};
use serde::Serialize;
use thiserror::Error;

use crate::groups::{conjugacy, orbits_of_action, FiniteGroup, GroupError, OrbitData, Subgroup};
use crate::monomial::{decompose, DecompositionConfig, MonomialAlgebra, MonomialError};
use crate::phases::{is_cocycle, Cochain, Phase, PhaseError};
use crate::transgression::{DefectDatum, GroupoidCocycle, TransgressionError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupoidError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Phase(#[from] PhaseError),
    #[error(transparent)]
    Transgression(#[from] TransgressionError),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error("restriction of tau to the stabilizer of object {representative} is not a 2-cocycle at {witness:?}")]
    RestrictionNotCocycle { representative: usize, witness: Vec<usize> },
    #[error("cocycle has {got} morphisms, groupoid has {expected}")]
    SizeMismatch { got: usize, expected: usize },
}

/// A finite group acting on `0..num_objects`, with the action tabulated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionGroupoid {
    acting: FiniteGroup,
    objects: usize,
    table: Vec<usize>,
    orbits: OrbitData,
}

impl ActionGroupoid {
    /// Tabulates `act` and checks the action axioms exhaustively.
    pub fn from_action(
        acting: FiniteGroup,
        objects: usize,
        act: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, GroupError> {
        let table: Vec<usize> =
            (0..acting.order() * objects).map(|i| act(i / objects, i % objects)).collect();
        let orbits = orbits_of_action(objects, &acting, |m, x| table[m * objects + x])?;
        Ok(Self { acting, objects, table, orbits })
    }

    /// Objects `(a, b)` in `G x G`, morphisms `(g, h)` in `G x H` acting by
    /// `(g a iota1(h)^-1, g b iota2(h)^-1)`.
    pub fn new(datum: &DefectDatum) -> Result<Self, GroupError> {
        let g = datum.group();
        let emb = datum.embedding();
        let (n, nh) = (g.order(), datum.subgroup().order());
        let acting = g.direct_product(datum.subgroup());
        Self::from_action(acting, n * n, |m, x| {
            let (gg, h) = (m / nh, m % nh);
            let (a, b) = (x / n, x % n);
            let a2 = g.mul(g.mul(gg, a), g.inv(emb.iota1(h)));
            let b2 = g.mul(g.mul(gg, b), g.inv(emb.iota2(h)));
            a2 * n + b2
        })
    }

    pub fn num_objects(&self) -> usize {
        self.objects
    }

    pub fn num_morphisms(&self) -> usize {
        self.acting.order()
    }

    pub fn acting_group(&self) -> &FiniteGroup {
        &self.acting
    }

    #[inline]
    pub fn act(&self, m: usize, x: usize) -> usize {
        self.table[m * self.objects + x]
    }

    /// `m2 m1`, with `m1` applied first.
    #[inline]
    pub fn compose(&self, m2: usize, m1: usize) -> usize {
        self.acting.mul(m2, m1)
    }

    pub fn orbits(&self) -> &OrbitData {
        &self.orbits
    }
}

/// An orbit with its stabilizer and the restricted 2-cocycle
/// `alpha(s1, s2) = c(x; s2, s1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilizerWithCocycle {
    pub representative: usize,
    pub orbit_size: usize,
    pub stabilizer: Subgroup,
    /// A 2-cochain on `stabilizer.group` (local indices).
    pub alpha: Cochain,
}

pub fn stabilizer_cocycles(
    groupoid: &ActionGroupoid,
    tau: &GroupoidCocycle,
) -> Result<Vec<StabilizerWithCocycle>, GroupoidError> {
    if tau.num_morphisms() != groupoid.num_morphisms() || tau.num_objects() != groupoid.num_objects() {
        return Err(GroupoidError::SizeMismatch {
            got: tau.num_morphisms(),
            expected: groupoid.num_morphisms(),
        });
    }
    let od = groupoid.orbits();
    od.orbits
        .iter()
        .zip(&od.stabilizers)
        .map(|(orbit, stab)| {
            let x = orbit[0];
            let stabilizer = groupoid.acting_group().subgroup(stab)?;
            let el = &stabilizer.elements;
            let alpha = Cochain::from_fn(&stabilizer.group, 2, |t| tau.get(x, el[t[1]], el[t[0]]));
            let scan = is_cocycle(&alpha)?;
            if let Some(witness) = scan.witness {
                return Err(GroupoidError::RestrictionNotCocycle { representative: x, witness });
            }
            Ok(StabilizerWithCocycle { representative: x, orbit_size: orbit.len(), stabilizer, alpha })
        })
        .collect()
}

/// Number of alpha-regular conjugacy classes: `k` is regular when
/// `alpha(k, z) = alpha(z, k)` for every `z` commuting with `k`.
pub fn alpha_regular_count(k: &FiniteGroup, alpha: &Cochain) -> usize {
    let cd = conjugacy(k);
    cd.representatives()
        .zip(&cd.centralizers)
        .filter(|(r, cent)| cent.iter().all(|&z| alpha.at2(*r, z) == alpha.at2(z, *r)))
        .count()
}

/// `C_alpha[K]` with `u_a u_b = alpha(a, b) u_ab`.
pub struct TwistedGroupAlgebra<'a> {
    pub group: &'a FiniteGroup,
    pub alpha: &'a Cochain,
}

impl MonomialAlgebra for TwistedGroupAlgebra<'_> {
    fn dim(&self) -> usize {
        self.group.order()
    }
    fn num_objects(&self) -> usize {
        1
    }
    fn source(&self, _: usize) -> usize {
        0
    }
    fn target(&self, _: usize) -> usize {
        0
    }
    fn product(&self, b2: usize, b1: usize) -> (Phase, usize) {
        (self.alpha.at2(b2, b1), self.group.mul(b2, b1))
    }
    fn identity_at(&self, _: usize) -> usize {
        0
    }
}

/// Irrep dimensions of `C_alpha[K]`, ascending. The count is checked
/// against both the alpha-regular count and the exact center dimension.
pub fn twisted_algebra_decompose<T>(
    k: &FiniteGroup,
    alpha: &Cochain,
    config: &DecompositionConfig,
) -> Result<Vec<usize>, GroupoidError>
where
    T: RealField + Float + FloatConst,
{
    let regular = alpha_regular_count(k, alpha);
    let alg = TwistedGroupAlgebra { group: k, alpha };
    let blocks = decompose::<_, T>(&alg, config, &|_| Some(regular))?;
    Ok(blocks.into_iter().next().map(|b| b.local_dims).unwrap_or_default())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Groupoid,
    Algebraic,
    DrinfeldCenter,
    ConjugationGroupoid,
    MultiPoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleObjectRecord {
    pub representative: usize,
    pub orbit_size: usize,
    pub irrep_index: usize,
    pub irrep_dim: usize,
    /// Dimension of the underlying graded vector space, `orbit_size * irrep_dim`.
    pub graded_dim: usize,
}

/// Comparable fingerprint of a semisimple category.
///
/// `total_dims` divides each graded dimension by the order of the freely
/// acting left factor, so the diagonal defect reproduces the usual
/// dimensions of the Drinfeld double (`|class| * irrep dim`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CategoryInvariants {
    pub count: usize,
    /// Irrep dimensions per orbit, orbits by ascending representative.
    pub irrep_dims: Vec<Vec<usize>>,
    pub graded_dims: Vec<usize>,
    pub total_dims: Vec<usize>,
    pub provenance: Provenance,
}

impl CategoryInvariants {
    /// Assembles invariants from per-orbit `(orbit_size, irrep dims)`.
    /// `free_factor` is the order of the group acting freely on the left.
    pub fn from_orbits(
        orbits: &[(usize, Vec<usize>)],
        free_factor: usize,
        provenance: Provenance,
    ) -> Self {
        let mut graded = Vec::new();
        let mut irrep_dims = Vec::new();
        for (size, dims) in orbits {
            let mut d = dims.clone();
            d.sort_unstable();
            graded.extend(d.iter().map(|n| size * n));
            irrep_dims.push(d);
        }
        graded.sort_unstable();
        let total_dims = graded.iter().map(|d| d / free_factor.max(1)).collect();
        Self { count: graded.len(), irrep_dims, graded_dims: graded, total_dims, provenance }
    }

    /// Equal up to provenance.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.count == other.count
            && self.irrep_dims == other.irrep_dims
            && self.graded_dims == other.graded_dims
            && self.total_dims == other.total_dims
    }

    /// Sorted list of per-orbit irrep dimension lists. Unlike orbit sizes
    /// this is unchanged under equivalence of groupoids.
    pub fn orbit_types(&self) -> Vec<Vec<usize>> {
        let mut v = self.irrep_dims.clone();
        v.sort();
        v
    }

    /// Count and sorted total dimensions only; used where orbit grouping
    /// differs between routes.
    pub fn agrees_in_dims(&self, other: &Self) -> bool {
        self.count == other.count && self.total_dims == other.total_dims
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Linearization {
    pub stabilizers: Vec<StabilizerWithCocycle>,
    pub records: Vec<SimpleObjectRecord>,
    pub invariants: CategoryInvariants,
}

/// Simple objects of the twisted linearization of the action groupoid.
pub fn linearization_invariants<T>(
    datum: &DefectDatum,
    tau: &GroupoidCocycle,
    config: &DecompositionConfig,
) -> Result<Linearization, GroupoidError>
where
    T: RealField + Float + FloatConst,
{
    datum.require_admitted()?;
    let groupoid = ActionGroupoid::new(datum)?;
    let stabilizers = stabilizer_cocycles(&groupoid, tau)?;
    let mut records = Vec::new();
    let mut per_orbit = Vec::new();
    for s in &stabilizers {
        let cfg = DecompositionConfig { seed: orbit_seed(config.seed, s.representative), ..*config };
        let dims = twisted_algebra_decompose::<T>(&s.stabilizer.group, &s.alpha, &cfg)?;
        for (i, &n) in dims.iter().enumerate() {
            records.push(SimpleObjectRecord {
                representative: s.representative,
                orbit_size: s.orbit_size,
                irrep_index: i,
                irrep_dim: n,
                graded_dim: s.orbit_size * n,
            });
        }
        per_orbit.push((s.orbit_size, dims));
    }
    let invariants =
        CategoryInvariants::from_orbits(&per_orbit, datum.group().order(), Provenance::Groupoid);
    Ok(Linearization { stabilizers, records, invariants })
}

/// Per-orbit seed, independent of the order orbits are processed in.
pub(crate) fn orbit_seed(seed: u64, representative: usize) -> u64 {
    seed ^ (representative as u64).wrapping_mul(0xD1B5_4A32_D192_ED03)
}
