//! Defect data and the transgressed groupoid 2-cocycle.
//!
//! The action groupoid has objects `(a, b)` in `G x G` and morphisms
//! `m = (g, h)` in `G x H`, acting by `m.(a, b) = (g a iota1(h)^-1, g b iota2(h)^-1)`.
//! A [`GroupoidCocycle`] is stored as `c(x; m, m')` where `m` is applied
//! first and `m'` second; the composite is `m' m = (g' g, h' h)`. In this
//! order the cocycle identity reads
//!
//! ```text
//! c(x; m1, m2) c(x; m2 m1, m3) = c(m1.x; m2, m3) c(x; m1, m3 m2).
//! ```
//!
//! Two evaluations are provided. [`tau_closed_form`] multiplies out the
//! prism formula directly. [`tau_simplicial`] builds the decorated prism and
//! evaluates each simplex in a fixed global vertex order, using the
//! tetrahedral and triangle symmetries to account for reordering; it only
//! agrees with the closed form when those symmetries hold.

use serde::Serialize;
use thiserror::Error;

use crate::groupoid_rep::ActionGroupoid;
use crate::groups::{FiniteGroup, GroupError, PairEmbedding};
use crate::phases::{
    coboundary, is_cocycle, is_normalized, tetrahedral_symmetry_check, triangle_symmetry_check,
    Cochain, NormalizationReport, Phase, PhaseError, ScanResult, SymmetryCheck,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TransgressionError {
    #[error(transparent)]
    Phase(#[from] PhaseError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("inconsistent defect datum: {0}")]
    Mismatch(String),
    #[error("defect datum is not admitted: {}", .0.join("; "))]
    NotAdmitted(Vec<String>),
    #[error("simplicial evaluation needs symmetric data: {0}")]
    SymmetryCertificateMissing(String),
    #[error("gauge shift breaks a certificate: {reason}")]
    CertificateFailure { reason: String, shifted: Box<DefectDatum> },
    #[error("gauge cochain is not normalized (beta(e) != 1)")]
    BetaNotNormalized,
}

/// Validity flags of a defect datum, each with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificates {
    pub omega_cocycle: ScanResult,
    pub omega_normalized: NormalizationReport,
    pub omega_tetrahedral: SymmetryCheck,
    pub theta_normalized: NormalizationReport,
    pub theta_triangle: SymmetryCheck,
    /// `d theta = iota1^* omega / iota2^* omega`, witness an `H`-triple.
    pub defect_condition: ScanResult,
}

impl Certificates {
    /// The conditions every computation needs.
    pub fn admitted(&self) -> bool {
        self.failures().is_empty()
    }

    /// Tetrahedral symmetry of omega and triangle symmetry of theta.
    pub fn symmetric(&self) -> bool {
        self.omega_tetrahedral.ok && self.theta_triangle.ok
    }

    /// Human-readable list of failed admission conditions.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(w) = &self.omega_cocycle.witness {
            out.push(format!("omega is not a cocycle at {w:?}"));
        }
        if !self.omega_normalized.full() {
            out.push(format!(
                "omega is not normalized in slots {:?} (e.g. at {:?})",
                self.omega_normalized.failing_slots(),
                self.omega_normalized.witness.clone().unwrap_or_default()
            ));
        }
        if !self.theta_normalized.full() {
            out.push(format!(
                "theta is not normalized in slots {:?} (e.g. at {:?})",
                self.theta_normalized.failing_slots(),
                self.theta_normalized.witness.clone().unwrap_or_default()
            ));
        }
        if let Some(w) = &self.defect_condition.witness {
            out.push(format!("defect condition fails at {w:?}"));
        }
        out
    }
}

/// `(G, omega, iota: H -> G x G, theta)` together with its certificates.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectDatum {
    group: FiniteGroup,
    omega: Cochain,
    embedding: PairEmbedding,
    theta: Cochain,
    certificates: Certificates,
}

impl DefectDatum {
    /// Checks shapes and computes certificates. Failed certificates are
    /// recorded, not rejected; see [`DefectDatum::admit`].
    pub fn new(
        group: FiniteGroup,
        omega: Cochain,
        embedding: PairEmbedding,
        theta: Cochain,
    ) -> Result<Self, TransgressionError> {
        if omega.degree() != 3 || omega.group() != &group {
            return Err(TransgressionError::Mismatch("omega must be a 3-cochain on G".into()));
        }
        if theta.degree() != 2 || theta.group() != embedding.subgroup() {
            return Err(TransgressionError::Mismatch("theta must be a 2-cochain on H".into()));
        }
        // re-validate the embedding against this particular G
        PairEmbedding::new(embedding.subgroup().clone(), embedding.map().to_vec(), &group)?;

        let target = pullback_pair(&omega, &embedding);
        let dtheta = coboundary(&theta)?;
        let mut defect_witness = None;
        crate::phases::for_each_tuple(embedding.subgroup().order(), 3, |t| {
            if defect_witness.is_none() && dtheta.get(t) != target.get(t) {
                defect_witness = Some(t.to_vec());
            }
        });
        let certificates = Certificates {
            omega_cocycle: is_cocycle(&omega)?,
            omega_normalized: is_normalized(&omega),
            omega_tetrahedral: tetrahedral_symmetry_check(&omega),
            theta_normalized: is_normalized(&theta),
            theta_triangle: triangle_symmetry_check(&theta),
            defect_condition: ScanResult { ok: defect_witness.is_none(), witness: defect_witness },
        };
        Ok(Self { group, omega, embedding, theta, certificates })
    }

    /// Like [`DefectDatum::new`] but rejects data that fail admission.
    pub fn admit(
        group: FiniteGroup,
        omega: Cochain,
        embedding: PairEmbedding,
        theta: Cochain,
    ) -> Result<Self, TransgressionError> {
        let d = Self::new(group, omega, embedding, theta)?;
        d.require_admitted()?;
        Ok(d)
    }

    pub fn require_admitted(&self) -> Result<(), TransgressionError> {
        let f = self.certificates.failures();
        if f.is_empty() {
            Ok(())
        } else {
            Err(TransgressionError::NotAdmitted(f))
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn omega(&self) -> &Cochain {
        &self.omega
    }

    pub fn embedding(&self) -> &PairEmbedding {
        &self.embedding
    }

    pub fn subgroup(&self) -> &FiniteGroup {
        self.embedding.subgroup()
    }

    pub fn theta(&self) -> &Cochain {
        &self.theta
    }

    pub fn certificates(&self) -> &Certificates {
        &self.certificates
    }

    /// Same datum with theta replaced; certificates recomputed.
    pub fn with_theta(&self, theta: Cochain) -> Result<Self, TransgressionError> {
        Self::new(self.group.clone(), self.omega.clone(), self.embedding.clone(), theta)
    }
}

/// `h-triple -> omega(iota1 h..) / omega(iota2 h..)`.
pub fn pullback_pair(omega: &Cochain, embedding: &PairEmbedding) -> Cochain {
    let h = embedding.subgroup();
    let top = omega.pullback(h, |x| embedding.iota1(x));
    let bottom = omega.pullback(h, |x| embedding.iota2(x));
    top.mul(&bottom.inv()).expect("same base")
}

/// Dense table of `c(x; m, m')` (see the module docs for the order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidCocycle {
    g_order: usize,
    h_order: usize,
    values: Vec<Phase>,
}

impl GroupoidCocycle {
    fn filled(g_order: usize, h_order: usize, mut f: impl FnMut(usize, usize, usize) -> Phase) -> Self {
        let objects = g_order * g_order;
        let morphisms = g_order * h_order;
        let mut values = Vec::with_capacity(objects * morphisms * morphisms);
        for x in 0..objects {
            for m in 0..morphisms {
                for m2 in 0..morphisms {
                    values.push(f(x, m, m2));
                }
            }
        }
        Self { g_order, h_order, values }
    }

    pub fn unit(g_order: usize, h_order: usize) -> Self {
        Self::filled(g_order, h_order, |_, _, _| Phase::one())
    }

    pub fn num_objects(&self) -> usize {
        self.g_order * self.g_order
    }

    pub fn num_morphisms(&self) -> usize {
        self.g_order * self.h_order
    }

    pub fn g_order(&self) -> usize {
        self.g_order
    }

    pub fn h_order(&self) -> usize {
        self.h_order
    }

    /// Object `(a, b)` has index `a |G| + b`; morphism `(g, h)` has index
    /// `g |H| + h`.
    #[inline]
    pub fn get(&self, x: usize, m: usize, m2: usize) -> Phase {
        let k = self.num_morphisms();
        self.values[(x * k + m) * k + m2]
    }

    pub fn set(&mut self, x: usize, m: usize, m2: usize, v: Phase) {
        let k = self.num_morphisms();
        self.values[(x * k + m) * k + m2] = v;
    }

    pub fn values(&self) -> &[Phase] {
        &self.values
    }

    pub fn is_unit(&self) -> bool {
        self.values.iter().all(Phase::is_one)
    }

    /// Exponent strings, object-major, then the first-applied morphism,
    /// then the second.
    pub fn export(&self) -> Vec<String> {
        self.values.iter().map(Phase::to_string).collect()
    }
}

/// The ω-part of one prism half:
/// `w(g', g, y) w(g', g y k^-1, k)^-1 w(g' g y k^-1 k'^-1, k', k)`.
fn half_closed(w: &Cochain, g: &FiniteGroup, y: usize, g1: usize, k1: usize, g2: usize, k2: usize) -> Phase {
    let gy = g.mul(g1, y);
    let gyk = g.mul(gy, g.inv(k1));
    let last = g.mul(g.mul(g2, gyk), g.inv(k2));
    w.at3(g2, g1, y) / w.at3(g2, gyk, k1) * w.at3(last, k2, k1)
}

/// The closed prism formula
/// `c((a,b); (g,h), (g',h')) = theta(h',h)^-1 T(a; iota1) T(b; iota2)^-1`.
pub fn tau_closed_form(datum: &DefectDatum) -> Result<GroupoidCocycle, TransgressionError> {
    datum.require_admitted()?;
    let g = datum.group();
    let emb = datum.embedding();
    let (n, nh) = (g.order(), datum.subgroup().order());
    let (w, th) = (datum.omega(), datum.theta());
    Ok(GroupoidCocycle::filled(n, nh, |x, m, m2| {
        let (a, b) = (x / n, x % n);
        let (g1, h1) = (m / nh, m % nh);
        let (g2, h2) = (m2 / nh, m2 % nh);
        let top = half_closed(w, g, a, g1, emb.iota1(h1), g2, emb.iota1(h2));
        let bottom = half_closed(w, g, b, g1, emb.iota2(h1), g2, emb.iota2(h2));
        th.at2(h2, h1).inv() * top / bottom
    }))
}

/// Prism vertices: three on the object edge (`T0 T1 T2`) and three on the
/// seam (`M0 M1 M2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vertex {
    T0,
    T1,
    T2,
    M0,
    M1,
    M2,
}

use Vertex::*;

/// A total order on the prism vertices used to evaluate every simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexOrder(pub [Vertex; 6]);

impl VertexOrder {
    /// The frozen evaluation order. It interleaves object and seam vertices
    /// so that every tetrahedron and the middle triangle are reordered.
    pub const CANONICAL: VertexOrder = VertexOrder([T1, M0, T2, M2, T0, M1]);

    fn rank(&self, v: Vertex) -> usize {
        self.0.iter().position(|&u| u == v).expect("all vertices listed")
    }
}

/// Sorts `vs` by `order` and returns the sign of the sorting permutation.
fn sort_with_sign<const K: usize>(vs: [Vertex; K], order: &VertexOrder) -> ([Vertex; K], i64) {
    let mut out = vs;
    let mut sign = 1;
    // bubble sort: each swap is one transposition
    for i in 0..K {
        for j in 0..K - 1 - i {
            if order.rank(out[j]) > order.rank(out[j + 1]) {
                out.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    (out, sign)
}

/// Positions of the prism vertices in one half: object vertices in `G`,
/// seam vertices as `H`-elements mapped into `G`.
struct Placement<'a> {
    g: &'a FiniteGroup,
    pos: [usize; 6],
}

impl Placement<'_> {
    fn at(&self, v: Vertex) -> usize {
        self.pos[v as usize]
    }

    /// `w(p3 p2^-1, p2 p1^-1, p1 p0^-1)` for the listed order.
    fn tetrahedron(&self, w: &Cochain, v: [Vertex; 4]) -> Phase {
        let g = self.g;
        let p: Vec<usize> = v.iter().map(|&u| self.at(u)).collect();
        let e = |i: usize, j: usize| g.mul(p[j], g.inv(p[i]));
        w.at3(e(2, 3), e(1, 2), e(0, 1))
    }
}

/// `theta(p2 p1^-1, p1 p0^-1)^-1` for the listed order.
fn triangle(h: &FiniteGroup, theta: &Cochain, pos: &[usize; 6], v: [Vertex; 3]) -> Phase {
    let p: Vec<usize> = v.iter().map(|&u| pos[u as usize]).collect();
    let e = |i: usize, j: usize| h.mul(p[j], h.inv(p[i]));
    theta.at2(e(1, 2), e(0, 1)).inv()
}

/// Simplicial evaluation of the decorated prism.
///
/// Upper half: `(M0 T0 T1 T2)+ (M0 M1 T1 T2)- (M0 M1 M2 T2)+` with seam
/// labels through `iota1`; lower half the same through `iota2`, inverted;
/// middle triangle `(M0 M1 M2)`. Each simplex is evaluated in `order`, the
/// sign of the reordering flipping the exponent.
pub fn tau_simplicial_with_order(
    datum: &DefectDatum,
    order: &VertexOrder,
) -> Result<GroupoidCocycle, TransgressionError> {
    datum.require_admitted()?;
    let c = datum.certificates();
    if !c.omega_tetrahedral.ok {
        return Err(TransgressionError::SymmetryCertificateMissing(format!(
            "omega fails tetrahedral relation at {:?}",
            c.omega_tetrahedral.witness
        )));
    }
    if !c.theta_triangle.ok {
        return Err(TransgressionError::SymmetryCertificateMissing(format!(
            "theta fails triangle relation at {:?}",
            c.theta_triangle.witness
        )));
    }
    let g = datum.group();
    let hg = datum.subgroup();
    let emb = datum.embedding();
    let (n, nh) = (g.order(), hg.order());
    let (w, th) = (datum.omega(), datum.theta());

    let tets: [([Vertex; 4], i64); 3] =
        [([M0, T0, T1, T2], 1), ([M0, M1, T1, T2], -1), ([M0, M1, M2, T2], 1)];
    let tets_sorted = tets.map(|(v, s)| {
        let (sv, sign) = sort_with_sign(v, order);
        (sv, s * sign)
    });
    let (tri_sorted, tri_sign) = sort_with_sign([M0, M1, M2], order);

    Ok(GroupoidCocycle::filled(n, nh, |x, m, m2| {
        let (g1, h1) = (m / nh, m % nh);
        let (g2, h2) = (m2 / nh, m2 % nh);
        let seam = [0, h1, hg.mul(h2, h1)];
        let half = |y: usize, side: usize| {
            let pos = [
                y,
                g.mul(g1, y),
                g.mul(g2, g.mul(g1, y)),
                emb.component(side, seam[0]),
                emb.component(side, seam[1]),
                emb.component(side, seam[2]),
            ];
            let pl = Placement { g, pos };
            tets_sorted.iter().map(|(v, s)| pl.tetrahedron(w, *v).pow(*s)).product::<Phase>()
        };
        let hpos = [0, 0, 0, seam[0], seam[1], seam[2]];
        let mid = triangle(hg, th, &hpos, tri_sorted).pow(tri_sign);
        mid * half(x / n, 0) / half(x % n, 1)
    }))
}

pub fn tau_simplicial(datum: &DefectDatum) -> Result<GroupoidCocycle, TransgressionError> {
    tau_simplicial_with_order(datum, &VertexOrder::CANONICAL)
}

/// First `(x, m1, m2, m3)` violating the cocycle identity, if any.
pub fn check_groupoid_cocycle(tau: &GroupoidCocycle, groupoid: &ActionGroupoid) -> ScanResult {
    let k = groupoid.num_morphisms();
    assert_eq!(k, tau.num_morphisms(), "cocycle and groupoid sizes differ");
    for x in 0..groupoid.num_objects() {
        for m1 in 0..k {
            let y = groupoid.act(m1, x);
            for m2 in 0..k {
                let m21 = groupoid.compose(m2, m1);
                let c12 = tau.get(x, m1, m2);
                for m3 in 0..k {
                    let lhs = c12 * tau.get(x, m21, m3);
                    let rhs = tau.get(y, m2, m3) * tau.get(x, m1, groupoid.compose(m3, m2));
                    if lhs != rhs {
                        return ScanResult { ok: false, witness: Some(vec![x, m1, m2, m3]) };
                    }
                }
            }
        }
    }
    ScanResult { ok: true, witness: None }
}

/// Checks `c(x; (g,e), (e,h)) = 1` for all `x, g, h`; witness `(x, g, h)`.
pub fn mixed_normalization_check(tau: &GroupoidCocycle) -> ScanResult {
    let nh = tau.h_order();
    for x in 0..tau.num_objects() {
        for g in 0..tau.g_order() {
            for h in 0..nh {
                if !tau.get(x, g * nh, h).is_one() {
                    return ScanResult { ok: false, witness: Some(vec![x, g, h]) };
                }
            }
        }
    }
    ScanResult { ok: true, witness: None }
}

/// Replaces theta by `theta * d(beta)`.
///
/// Fails with `CertificateFailure` (carrying the shifted datum) when the
/// shift destroys triangle symmetry that the input had.
pub fn gauge_shift_theta(datum: &DefectDatum, beta: &Cochain) -> Result<DefectDatum, TransgressionError> {
    if beta.degree() != 1 || beta.group() != datum.subgroup() {
        return Err(TransgressionError::Mismatch("beta must be a 1-cochain on H".into()));
    }
    if !beta.at1(0).is_one() {
        return Err(TransgressionError::BetaNotNormalized);
    }
    let theta = datum.theta().mul(&coboundary(beta)?)?;
    let shifted = datum.with_theta(theta)?;
    if datum.certificates().theta_triangle.ok && !shifted.certificates().theta_triangle.ok {
        let reason = format!(
            "shifted theta fails triangle relation at {:?}",
            shifted.certificates().theta_triangle.witness
        );
        return Err(TransgressionError::CertificateFailure { reason, shifted: Box::new(shifted) });
    }
    Ok(shifted)
}
