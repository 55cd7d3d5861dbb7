//! Runs both pipelines on a defect datum and compares them; Drinfeld
//! centers, admissible theta, gauge robustness and multi-point traces.

use std::fmt;
use std::time::{Duration, Instant};

use nalgebra::RealField;
use num_traits::{Float, FloatConst};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algebraic_model::{
    build_tube_algebra, decompose_tube, theorem_relations_on, AlgebraicError, TheoremCheck,
};
use crate::groupoid_rep::{
    linearization_invariants, orbit_seed, twisted_algebra_decompose, ActionGroupoid, CategoryInvariants,
    GroupoidError, Provenance,
};
use crate::groups::{conjugacy, cyclic, symmetric3, FiniteGroup, GroupError, PairEmbedding};
use crate::monomial::DecompositionConfig;
use crate::phases::{
    cohomology_group, cyclic_three_cocycle, is_cocycle, is_normalized, solve_coboundary_equation,
    symmetrize_in_class, symmetrize_theta, Cochain, CoboundarySolution, Obstruction, Phase, PhaseError,
    SolverConfig, SymmetrizeOutcome,
};
use crate::transgression::{
    check_groupoid_cocycle, gauge_shift_theta, mixed_normalization_check, pullback_pair, tau_closed_form,
    tau_simplicial, DefectDatum, TransgressionError,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Admission,
    Transgression,
    Relations,
    Linearization,
    TubeAlgebra,
    Theta,
    Center,
    Gauge,
    MultiPoint,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Admission => "admission",
            Stage::Transgression => "transgression",
            Stage::Relations => "relations",
            Stage::Linearization => "linearization",
            Stage::TubeAlgebra => "tube algebra",
            Stage::Theta => "theta",
            Stage::Center => "center",
            Stage::Gauge => "gauge",
            Stage::MultiPoint => "multi-point",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TraceError {
    #[error("{stage}: {source}")]
    Transgression { stage: Stage, source: TransgressionError },
    #[error("{stage}: {source}")]
    Groupoid { stage: Stage, source: GroupoidError },
    #[error("{stage}: {source}")]
    Algebraic { stage: Stage, source: AlgebraicError },
    #[error("{stage}: {source}")]
    Phase { stage: Stage, source: PhaseError },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("multi-point traces are only supported for omega = 1")]
    NontrivialOmegaUnsupported,
    #[error("defect list is empty")]
    EmptyDefectList,
    #[error("defect {index}: {reason}")]
    BadDefect { index: usize, reason: String },
    #[error("{stage}: {reason}")]
    Internal { stage: Stage, reason: String },
}

impl TraceError {
    pub fn stage(&self) -> Option<Stage> {
        match self {
            TraceError::Transgression { stage, .. }
            | TraceError::Groupoid { stage, .. }
            | TraceError::Algebraic { stage, .. }
            | TraceError::Phase { stage, .. }
            | TraceError::Internal { stage, .. } => Some(*stage),
            _ => None,
        }
    }

    /// True if a solver refused to allocate beyond its budget.
    pub fn is_budget_exceeded(&self) -> bool {
        let is = |e: &PhaseError| matches!(e, PhaseError::BudgetExceeded { .. });
        match self {
            TraceError::Phase { source, .. } => is(source),
            TraceError::Transgression { source: TransgressionError::Phase(p), .. } => is(p),
            TraceError::Groupoid { source: GroupoidError::Phase(p), .. } => is(p),
            _ => false,
        }
    }
}

fn tr(stage: Stage) -> impl Fn(TransgressionError) -> TraceError {
    move |source| TraceError::Transgression { stage, source }
}

fn gr(stage: Stage) -> impl Fn(GroupoidError) -> TraceError {
    move |source| TraceError::Groupoid { stage, source }
}

fn al(stage: Stage) -> impl Fn(AlgebraicError) -> TraceError {
    move |source| TraceError::Algebraic { stage, source }
}

fn ph(stage: Stage) -> impl Fn(PhaseError) -> TraceError {
    move |source| TraceError::Phase { stage, source }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TraceConfig {
    pub decomposition: DecompositionConfig,
    pub solver: SolverConfig,
}

/// SHA-256 over a canonical text rendering of the datum and the settings
/// that influence the output.
pub fn fingerprint(datum: &DefectDatum, config: &TraceConfig) -> String {
    let mut h = Sha256::new();
    let mut put = |tag: &str, body: String| {
        h.update(tag.as_bytes());
        h.update(b":");
        h.update(body.as_bytes());
        h.update(b"\n");
    };
    let rows = |g: &FiniteGroup| {
        g.table_rows().iter().map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(",")).collect::<Vec<_>>().join(";")
    };
    let values = |c: &Cochain| c.values().iter().map(Phase::to_string).collect::<Vec<_>>().join(",");
    put("group", rows(datum.group()));
    put("omega", values(datum.omega()));
    put("subgroup", rows(datum.subgroup()));
    put("iota", datum.embedding().map().iter().map(|(a, b)| format!("{a} {b}")).collect::<Vec<_>>().join(","));
    put("theta", values(datum.theta()));
    let d = &config.decomposition;
    put("decomposition", format!("{} {:e} {:e} {}", d.seed, d.tolerance, d.gap, d.max_attempts));
    hex::encode(h.finalize())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RouteComparison {
    Equal,
    /// First `(x, m, m')` where the two evaluations differ.
    Differ { first: Vec<usize> },
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateSummary {
    pub admitted: bool,
    pub omega_tetrahedral: bool,
    pub theta_triangle: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransgressionSummary {
    pub groupoid_cocycle: bool,
    pub mixed_normalization: bool,
    pub closed_vs_simplicial: RouteComparison,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub version: String,
    pub fingerprint: String,
    pub seed: u64,
    pub certificates: CertificateSummary,
    pub transgression: TransgressionSummary,
    pub relations: TheoremCheck,
    pub gauge: CategoryInvariants,
    pub algebraic: CategoryInvariants,
    /// Counts and sorted total dimensions coincide.
    pub agreement: bool,
    /// Wall-clock time per stage; not part of the structured output.
    #[serde(skip)]
    pub timings: Vec<(Stage, Duration)>,
}

impl TraceReport {
    /// Everything that should hold for an admitted datum.
    pub fn all_checks_pass(&self) -> bool {
        self.agreement
            && self.transgression.groupoid_cocycle
            && self.transgression.mixed_normalization
            && !matches!(self.transgression.closed_vs_simplicial, RouteComparison::Differ { .. })
            && self.relations.holds()
    }
}

/// Both pipelines on one datum.
pub fn compute_trace<T>(datum: &DefectDatum, config: &TraceConfig) -> Result<TraceReport, TraceError>
where
    T: RealField + Float + FloatConst,
{
    datum.require_admitted().map_err(tr(Stage::Admission))?;
    let mut timings = Vec::new();
    let mut clock = Instant::now();
    let mut lap = |stage: Stage, timings: &mut Vec<(Stage, Duration)>| {
        timings.push((stage, clock.elapsed()));
        clock = Instant::now();
    };

    let tau = tau_closed_form(datum).map_err(tr(Stage::Transgression))?;
    let groupoid = ActionGroupoid::new(datum)?;
    let cocycle = check_groupoid_cocycle(&tau, &groupoid);
    let mixed = mixed_normalization_check(&tau);
    let closed_vs_simplicial = if datum.certificates().symmetric() {
        let simp = tau_simplicial(datum).map_err(tr(Stage::Transgression))?;
        match first_difference(&tau, &simp) {
            None => RouteComparison::Equal,
            Some(first) => RouteComparison::Differ { first },
        }
    } else {
        RouteComparison::Skipped { reason: "omega or theta is not symmetric".into() }
    };
    lap(Stage::Transgression, &mut timings);

    let lin = linearization_invariants::<T>(datum, &tau, &config.decomposition)
        .map_err(gr(Stage::Linearization))?;
    lap(Stage::Linearization, &mut timings);

    let tube = build_tube_algebra(datum).map_err(al(Stage::TubeAlgebra))?;
    let relations = theorem_relations_on(&tube, datum, &tau);
    lap(Stage::Relations, &mut timings);
    let alg = decompose_tube::<T>(&tube, &config.decomposition).map_err(al(Stage::TubeAlgebra))?;
    lap(Stage::TubeAlgebra, &mut timings);

    let c = datum.certificates();
    Ok(TraceReport {
        version: VERSION.to_string(),
        fingerprint: fingerprint(datum, config),
        seed: config.decomposition.seed,
        certificates: CertificateSummary {
            admitted: c.admitted(),
            omega_tetrahedral: c.omega_tetrahedral.ok,
            theta_triangle: c.theta_triangle.ok,
        },
        transgression: TransgressionSummary {
            groupoid_cocycle: cocycle.ok,
            mixed_normalization: mixed.ok,
            closed_vs_simplicial,
        },
        relations,
        agreement: lin.invariants.agrees_in_dims(&alg.invariants),
        gauge: lin.invariants,
        algebraic: alg.invariants,
        timings,
    })
}

fn first_difference(
    a: &crate::transgression::GroupoidCocycle,
    b: &crate::transgression::GroupoidCocycle,
) -> Option<Vec<usize>> {
    let k = a.num_morphisms();
    a.values().iter().zip(b.values()).position(|(x, y)| x != y).map(|i| vec![i / (k * k), (i / k) % k, i % k])
}

/// The diagonal datum with `theta = 1`.
pub fn diagonal_datum(g: &FiniteGroup, omega: &Cochain) -> Result<DefectDatum, TraceError> {
    let emb = PairEmbedding::diagonal(g);
    let theta = Cochain::unit(emb.subgroup(), 2);
    DefectDatum::admit(g.clone(), omega.clone(), emb, theta).map_err(tr(Stage::Admission))
}

/// Gauge-side invariants of the diagonal defect.
pub fn drinfeld_center<T>(g: &FiniteGroup, omega: &Cochain, config: &TraceConfig) -> Result<CategoryInvariants, TraceError>
where
    T: RealField + Float + FloatConst,
{
    Ok(drinfeld_center_report::<T>(g, omega, config)?.trace.gauge)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CenterReport {
    pub trace: TraceReport,
    /// Classes and centralizers with the usual twisted-double cocycles.
    pub conjugation: CategoryInvariants,
    pub agreement: bool,
}

pub fn drinfeld_center_report<T>(g: &FiniteGroup, omega: &Cochain, config: &TraceConfig) -> Result<CenterReport, TraceError>
where
    T: RealField + Float + FloatConst,
{
    let d = diagonal_datum(g, omega)?;
    let trace = compute_trace::<T>(&d, config)?;
    let conjugation = conjugation_center::<T>(g, omega, &config.decomposition)?;
    let agreement = trace.agreement && trace.gauge.agrees_in_dims(&conjugation);
    Ok(CenterReport { trace, conjugation, agreement })
}

/// `beta_g(x, y) = w(g, x, y) w(x, y, g) / w(x, g, y)` on the centralizer of `g`.
pub fn centralizer_cocycle(omega: &Cochain, g: usize, centralizer: &crate::groups::Subgroup) -> Cochain {
    let el = &centralizer.elements;
    Cochain::from_fn(&centralizer.group, 2, |t| {
        let (x, y) = (el[t[0]], el[t[1]]);
        omega.at3(g, x, y) * omega.at3(x, y, g) / omega.at3(x, g, y)
    })
}

/// Drinfeld center from conjugacy classes and twisted centralizer algebras,
/// without going through the transgression.
pub fn conjugation_center<T>(
    g: &FiniteGroup,
    omega: &Cochain,
    config: &DecompositionConfig,
) -> Result<CategoryInvariants, TraceError>
where
    T: RealField + Float + FloatConst,
{
    let cd = conjugacy(g);
    let mut per = Vec::new();
    for (class, cent) in cd.classes.iter().zip(&cd.centralizers) {
        let sub = g.subgroup(cent)?;
        let beta = centralizer_cocycle(omega, class[0], &sub);
        if let Some(w) = is_cocycle(&beta).map_err(ph(Stage::Center))?.witness {
            return Err(TraceError::Internal {
                stage: Stage::Center,
                reason: format!("centralizer cocycle of {} fails at {w:?}", class[0]),
            });
        }
        let cfg = DecompositionConfig { seed: orbit_seed(config.seed, class[0]), ..*config };
        let dims = twisted_algebra_decompose::<T>(&sub.group, &beta, &cfg).map_err(gr(Stage::Center))?;
        per.push((class.len(), dims));
    }
    Ok(CategoryInvariants::from_orbits(&per, 1, Provenance::ConjugationGroupoid))
}

#[derive(Debug, Clone, PartialEq)]
pub enum ThetaOutcome {
    /// `d theta = iota1^* omega / iota2^* omega`. When a gauge making theta
    /// triangle-symmetric exists within the bound it has been applied.
    Solved { theta: Cochain, triangle_symmetric: bool, bound: u64 },
    Obstructed(Obstruction),
}

pub fn solve_admissible_theta(
    g: &FiniteGroup,
    omega: &Cochain,
    embedding: &PairEmbedding,
    solver: &SolverConfig,
) -> Result<ThetaOutcome, TraceError> {
    if let Some(w) = is_cocycle(omega).map_err(ph(Stage::Theta))?.witness {
        return Err(TraceError::Phase { stage: Stage::Theta, source: PhaseError::NotACocycle(w) });
    }
    if let Some(w) = is_normalized(omega).witness {
        return Err(TraceError::Phase { stage: Stage::Theta, source: PhaseError::NotNormalized(w) });
    }
    PairEmbedding::new(embedding.subgroup().clone(), embedding.map().to_vec(), g)?;
    let target = pullback_pair(omega, embedding);
    match solve_coboundary_equation(&target, solver).map_err(ph(Stage::Theta))? {
        CoboundarySolution::Solved { solution, bound } => {
            Ok(match symmetrize_theta(&solution, solver).map_err(ph(Stage::Theta))? {
                SymmetrizeOutcome::Symmetric { symmetric, .. } => {
                    ThetaOutcome::Solved { theta: symmetric, triangle_symmetric: true, bound }
                }
                _ => ThetaOutcome::Solved { theta: solution, triangle_symmetric: false, bound },
            })
        }
        CoboundarySolution::Obstructed(o) => Ok(ThetaOutcome::Obstructed(o)),
    }
}

/// Normalized 1-cochain with exponents in `(1/den) Z`.
pub fn random_one_cochain(h: &FiniteGroup, den: i64, rng: &mut impl Rng) -> Cochain {
    Cochain::from_fn(h, 1, |t| if t[0] == 0 { Phase::one() } else { Phase::new(rng.gen_range(0..den), den) })
}

/// Normalized 2-cochain with exponents in `(1/den) Z`.
pub fn random_two_cochain(g: &FiniteGroup, den: i64, rng: &mut impl Rng) -> Cochain {
    Cochain::from_fn(g, 2, |t| {
        if t.contains(&0) {
            Phase::one()
        } else {
            Phase::new(rng.gen_range(0..den), den)
        }
    })
}

/// Replaces omega by `omega * d(beta)` and adjusts theta by
/// `iota1^* beta / iota2^* beta` so the defect condition still holds.
pub fn gauge_shift_omega(datum: &DefectDatum, beta: &Cochain) -> Result<DefectDatum, TraceError> {
    let g = datum.group();
    if beta.degree() != 2 || beta.group() != g {
        return Err(TraceError::Transgression {
            stage: Stage::Gauge,
            source: TransgressionError::Mismatch("beta must be a 2-cochain on G".into()),
        });
    }
    let emb = datum.embedding();
    let db = crate::phases::coboundary(beta).map_err(ph(Stage::Gauge))?;
    let omega = datum.omega().mul(&db).map_err(ph(Stage::Gauge))?;
    let h = emb.subgroup();
    let top = beta.pullback(h, |x| emb.iota1(x));
    let bottom = beta.pullback(h, |x| emb.iota2(x));
    let theta = datum.theta().mul(&top).and_then(|t| t.mul(&bottom.inv())).map_err(ph(Stage::Gauge))?;
    DefectDatum::admit(g.clone(), omega, emb.clone(), theta).map_err(tr(Stage::Gauge))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaugeRobustness {
    pub baseline: CategoryInvariants,
    /// Gauge-side and algebraic invariants after each shift.
    pub shifted: Vec<(CategoryInvariants, CategoryInvariants)>,
    pub unchanged: bool,
}

/// Runs [`compute_trace`] after `shifts` random shifts `theta -> theta d(beta)`.
pub fn gauge_robustness<T>(
    datum: &DefectDatum,
    shifts: usize,
    seed: u64,
    config: &TraceConfig,
) -> Result<GaugeRobustness, TraceError>
where
    T: RealField + Float + FloatConst,
{
    let base = compute_trace::<T>(datum, config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = datum.subgroup();
    let den = 2 * h.order() as i64;
    let mut shifted = Vec::new();
    for _ in 0..shifts {
        let beta = random_one_cochain(h, den, &mut rng);
        let d = match gauge_shift_theta(datum, &beta) {
            Ok(d) => d,
            // symmetry lost; the datum is still admitted
            Err(TransgressionError::CertificateFailure { shifted, .. }) => *shifted,
            Err(e) => return Err(tr(Stage::Gauge)(e)),
        };
        let r = compute_trace::<T>(&d, config)?;
        shifted.push((r.gauge, r.algebraic));
    }
    let unchanged = shifted
        .iter()
        .all(|(a, b)| a.agrees_in_dims(&base.gauge) && b.agrees_in_dims(&base.gauge));
    Ok(GaugeRobustness { baseline: base.gauge, shifted, unchanged })
}

/// `n` defects around a circle, all with `omega = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPointDatum {
    group: FiniteGroup,
    defects: Vec<(PairEmbedding, Cochain)>,
}

impl MultiPointDatum {
    pub fn new(
        group: FiniteGroup,
        omega: &Cochain,
        defects: Vec<(PairEmbedding, Cochain)>,
    ) -> Result<Self, TraceError> {
        if !omega.is_unit() {
            return Err(TraceError::NontrivialOmegaUnsupported);
        }
        if defects.is_empty() {
            return Err(TraceError::EmptyDefectList);
        }
        for (i, (emb, theta)) in defects.iter().enumerate() {
            let bad = |reason: String| TraceError::BadDefect { index: i, reason };
            PairEmbedding::new(emb.subgroup().clone(), emb.map().to_vec(), &group)?;
            if theta.degree() != 2 || theta.group() != emb.subgroup() {
                return Err(bad("theta must be a 2-cochain on H".into()));
            }
            if let Some(w) = is_cocycle(theta).map_err(ph(Stage::MultiPoint))?.witness {
                return Err(bad(format!("theta is not a cocycle at {w:?}")));
            }
            if !is_normalized(theta).full() {
                return Err(bad("theta is not normalized".into()));
            }
        }
        Ok(Self { group, defects })
    }

    pub fn len(&self) -> usize {
        self.defects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defects.is_empty()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn defects(&self) -> &[(PairEmbedding, Cochain)] {
        &self.defects
    }

    /// The same circle read from defect `r` on.
    pub fn rotated(&self, r: usize) -> Self {
        let mut defects = self.defects.clone();
        defects.rotate_left(r % self.len());
        Self { group: self.group.clone(), defects }
    }
}

fn digits(mut i: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for k in (0..radices.len()).rev() {
        out[k] = i % radices[k];
        i /= radices[k];
    }
    out
}

fn undigits(ds: &[usize], radices: &[usize]) -> usize {
    ds.iter().zip(radices).fold(0, |acc, (d, r)| acc * r + d)
}

/// Linearization of the `n`-seam groupoid.
///
/// Objects are `(a_1, b_1, ..., a_n, b_n)`: seam `i` is flanked by `a_i`
/// (towards region `i`) and `b_i` (towards region `i + 1`, cyclically).
/// `(g_1..g_n, h_1..h_n)` sends `a_i -> g_i a_i iota_i1(h_i)^-1` and
/// `b_i -> g_{i+1} b_i iota_i2(h_i)^-1`. Stabilizers are twisted by
/// `alpha(s, s') = prod_i theta_i(h_i, h'_i)^-1`. For `n = 1` this is the
/// one-seam groupoid with trivial omega.
pub fn multi_point_trace<T>(datum: &MultiPointDatum, config: &DecompositionConfig) -> Result<CategoryInvariants, TraceError>
where
    T: RealField + Float + FloatConst,
{
    let g = &datum.group;
    let n = datum.len();
    let ng = g.order();
    let mut acting = g.clone();
    for _ in 1..n {
        acting = acting.direct_product(g);
    }
    for (emb, _) in &datum.defects {
        acting = acting.direct_product(emb.subgroup());
    }
    let mut mradix = vec![ng; n];
    mradix.extend(datum.defects.iter().map(|(e, _)| e.subgroup().order()));
    let oradix = vec![ng; 2 * n];
    let objects = ng.pow(2 * n as u32);

    let act = |m: usize, x: usize| {
        let md = digits(m, &mradix);
        let mut xd = digits(x, &oradix);
        for (i, (emb, _)) in datum.defects.iter().enumerate() {
            let h = md[n + i];
            let (i1, i2) = emb.iota(h);
            xd[2 * i] = g.mul(g.mul(md[i], xd[2 * i]), g.inv(i1));
            xd[2 * i + 1] = g.mul(g.mul(md[(i + 1) % n], xd[2 * i + 1]), g.inv(i2));
        }
        undigits(&xd, &oradix)
    };
    let groupoid = ActionGroupoid::from_action(acting, objects, act)?;
    let od = groupoid.orbits();
    let mut per = Vec::new();
    for (orbit, stab) in od.orbits.iter().zip(&od.stabilizers) {
        let sub = groupoid.acting_group().subgroup(stab)?;
        let el = &sub.elements;
        let alpha = Cochain::from_fn(&sub.group, 2, |t| {
            let (s1, s2) = (digits(el[t[0]], &mradix), digits(el[t[1]], &mradix));
            datum.defects.iter().enumerate().map(|(i, (_, th))| th.at2(s1[n + i], s2[n + i]).inv()).product()
        });
        if let Some(w) = is_cocycle(&alpha).map_err(ph(Stage::MultiPoint))?.witness {
            return Err(TraceError::Internal {
                stage: Stage::MultiPoint,
                reason: format!("stabilizer cocycle at object {} fails at {w:?}", orbit[0]),
            });
        }
        let cfg = DecompositionConfig { seed: orbit_seed(config.seed, orbit[0]), ..*config };
        let dims = twisted_algebra_decompose::<T>(&sub.group, &alpha, &cfg).map_err(gr(Stage::MultiPoint))?;
        per.push((orbit.len(), dims));
    }
    Ok(CategoryInvariants::from_orbits(&per, ng.pow(n as u32), Provenance::MultiPoint))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicReport {
    pub rotations: Vec<CategoryInvariants>,
    pub invariant: bool,
}

/// Orbit-order independent comparison: count, graded and total dimensions,
/// and the per-orbit irrep dimensions.
fn same_category(a: &CategoryInvariants, b: &CategoryInvariants) -> bool {
    a.agrees_in_dims(b) && a.graded_dims == b.graded_dims && a.orbit_types() == b.orbit_types()
}

pub fn cyclic_invariance_check<T>(datum: &MultiPointDatum, config: &DecompositionConfig) -> Result<CyclicReport, TraceError>
where
    T: RealField + Float + FloatConst,
{
    let rotations = (0..datum.len())
        .map(|r| multi_point_trace::<T>(&datum.rotated(r), config))
        .collect::<Result<Vec<_>, _>>()?;
    let invariant = rotations.iter().all(|r| same_category(r, &rotations[0]));
    Ok(CyclicReport { rotations, invariant })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OmegaKind {
    Trivial,
    /// A tetrahedrally symmetric representative of a nontrivial class.
    Symmetrized,
    /// A nontrivial class with no symmetric representative.
    Unsymmetrizable,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixEntry {
    pub label: String,
    pub omega_kind: OmegaKind,
    pub datum: DefectDatum,
}

/// Nontrivial classes to try for a matrix group, generator first.
fn nontrivial_candidates(name: &str, g: &FiniteGroup, solver: &SolverConfig) -> Result<Vec<Cochain>, TraceError> {
    if let Some(n) = name.strip_prefix("Z/") {
        let n: usize = n.parse().expect("matrix label");
        return Ok((1..n).map(|p| cyclic_three_cocycle(n, p)).collect());
    }
    let rep = cohomology_group(g, 3, solver).map_err(ph(Stage::Admission))?;
    let Some(gen) = rep.representatives.first() else { return Ok(Vec::new()) };
    let order = rep.invariant_factors[0] as i64;
    Ok((1..order).map(|k| Cochain::from_fn(g, 3, |t| gen.get(t).pow(k))).collect())
}

/// One nontrivial omega: the first symmetrizable class if any, else the
/// generator itself.
pub fn matrix_omega(name: &str, g: &FiniteGroup, solver: &SolverConfig) -> Result<Option<(Cochain, OmegaKind)>, TraceError> {
    let cands = nontrivial_candidates(name, g, solver)?;
    for c in &cands {
        if let SymmetrizeOutcome::Symmetric { symmetric, .. } =
            symmetrize_in_class(c, solver).map_err(ph(Stage::Admission))?
        {
            return Ok(Some((symmetric, OmegaKind::Symmetrized)));
        }
    }
    Ok(cands.into_iter().next().map(|c| (c, OmegaKind::Unsymmetrizable)))
}

/// The first subgroup of `G x G` (by order, then elements) that is neither
/// trivial, nor everything, nor the diagonal, and admits a theta.
pub fn intermediate_subgroup(
    g: &FiniteGroup,
    omega: &Cochain,
    solver: &SolverConfig,
) -> Result<Option<(PairEmbedding, Cochain)>, TraceError> {
    let n = g.order();
    let gg = g.direct_product(g);
    let diag: Vec<usize> = g.elements().map(|a| a * n + a).collect();
    for sub in gg.two_generated_subgroups() {
        if sub.len() == 1 || sub.len() == n * n || sub == diag {
            continue;
        }
        let emb = PairEmbedding::from_pair_subgroup(g, &sub)?;
        if let ThetaOutcome::Solved { theta, .. } = solve_admissible_theta(g, omega, &emb, solver)? {
            return Ok(Some((emb, theta)));
        }
    }
    Ok(None)
}

/// Groups `Z/2, Z/3, Z/4, S3`; omega trivial and one nontrivial class;
/// subgroups diagonal, trivial and one intermediate; theta from the solver.
pub fn admitted_test_matrix(solver: &SolverConfig) -> Result<Vec<MatrixEntry>, TraceError> {
    let groups = [("Z/2", cyclic(2)), ("Z/3", cyclic(3)), ("Z/4", cyclic(4)), ("S3", symmetric3())];
    let mut out = Vec::new();
    for (name, g) in groups {
        let mut omegas = vec![(Cochain::unit(&g, 3), OmegaKind::Trivial)];
        omegas.extend(matrix_omega(name, &g, solver)?);
        for (omega, kind) in omegas {
            let mut subs = Vec::new();
            for (label, emb) in [("diagonal", PairEmbedding::diagonal(&g)), ("trivial", PairEmbedding::trivial())] {
                if let ThetaOutcome::Solved { theta, .. } = solve_admissible_theta(&g, &omega, &emb, solver)? {
                    subs.push((label.to_string(), emb, theta));
                }
            }
            if let Some((emb, theta)) = intermediate_subgroup(&g, &omega, solver)? {
                let label = format!("intermediate{:?}", emb.map());
                subs.push((label, emb, theta));
            }
            for (sl, emb, theta) in subs {
                let datum = DefectDatum::admit(g.clone(), omega.clone(), emb, theta).map_err(tr(Stage::Admission))?;
                out.push(MatrixEntry { label: format!("{name}/{kind:?}/{sl}"), omega_kind: kind, datum });
            }
        }
    }
    Ok(out)
}
