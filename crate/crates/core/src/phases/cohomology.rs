//! Coboundary matrices, cohomology with Q/Z coefficients, and the solvers
//! built on them: coboundary equations and symmetric gauge choices.
//!
//! All systems are posed on normalized cochains (zero whenever an argument is
//! the identity) unless the target itself is not normalized. Normalized
//! cochains compute the same cohomology and keep every solution normalized.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use super::snf::{smith_normal_form, Snf};
use super::solve::{solve_mod_one, InfeasibilityCertificate, IntMatrix, QzOutcome};
use super::{coboundary, for_each_tuple, is_cocycle, is_normalized, tetrahedral_partners, Cochain, Phase, PhaseError};
use crate::groups::FiniteGroup;

/// Default cap on the number of dense matrix entries a solver may allocate.
pub const DEFAULT_BUDGET: usize = 4_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub budget: usize,
    /// Solutions are sought with denominators dividing this. `None` picks
    /// `|G|^2` times the lcm of the target's denominators.
    pub denominator_bound: Option<u64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET, denominator_bound: None }
    }
}

impl SolverConfig {
    fn bound_for(&self, g: &FiniteGroup, target_lcm: i64) -> u64 {
        self.denominator_bound
            .unwrap_or_else(|| (g.order() * g.order()) as u64 * target_lcm as u64)
    }
}

/// Index map between tuples and matrix columns, optionally skipping every
/// tuple that contains the identity.
#[derive(Debug, Clone, Copy)]
struct Basis {
    order: usize,
    degree: usize,
    normalized: bool,
}

impl Basis {
    fn radix(&self) -> usize {
        if self.normalized {
            self.order - 1
        } else {
            self.order
        }
    }

    fn len(&self) -> usize {
        self.radix().pow(self.degree as u32)
    }

    fn index(&self, t: &[usize]) -> Option<usize> {
        let r = self.radix();
        let mut acc = 0;
        for &x in t {
            let d = if self.normalized {
                if x == 0 {
                    return None;
                }
                x - 1
            } else {
                x
            };
            acc = acc * r + d;
        }
        Some(acc)
    }

    fn tuples(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(self.len());
        let shift = self.normalized as usize;
        for_each_tuple(self.radix(), self.degree, |t| {
            out.push(t.iter().map(|&x| x + shift).collect())
        });
        out
    }

    fn vector(&self, c: &Cochain) -> Vec<Ratio<i64>> {
        self.tuples().iter().map(|t| c.get(t).exponent()).collect()
    }

    fn cochain(&self, g: &FiniteGroup, x: &[Ratio<i64>]) -> Cochain {
        Cochain::from_fn(g, self.degree, |t| match self.index(t) {
            Some(i) => Phase::from_ratio(x[i]),
            None => Phase::one(),
        })
    }
}

/// The faces of `t` in the inhomogeneous coboundary, with signs.
fn faces(g: &FiniteGroup, t: &[usize]) -> Vec<(Vec<usize>, i64)> {
    let n = t.len() - 1;
    let mut out = Vec::with_capacity(n + 2);
    out.push((t[1..].to_vec(), 1));
    for i in 1..=n {
        let mut f = Vec::with_capacity(n);
        f.extend_from_slice(&t[..i - 1]);
        f.push(g.mul(t[i - 1], t[i]));
        f.extend_from_slice(&t[i + 1..]);
        out.push((f, if i % 2 == 1 { -1 } else { 1 }));
    }
    out.push((t[..n].to_vec(), if (n + 1) % 2 == 1 { -1 } else { 1 }));
    out
}

/// Adds the row of `d` evaluated at `t` (times `sign`) into `row`.
fn add_face_row(g: &FiniteGroup, src: &Basis, t: &[usize], sign: i64, row: &mut [i64]) {
    for (f, s) in faces(g, t) {
        if let Some(j) = src.index(&f) {
            row[j] += sign * s;
        }
    }
}

/// Integer matrix of `d: C^n -> C^{n+1}` in the tuple bases, normalized or not.
pub fn coboundary_matrix(g: &FiniteGroup, n: usize, normalized: bool) -> IntMatrix {
    let src = Basis { order: g.order(), degree: n, normalized };
    let dst = Basis { order: g.order(), degree: n + 1, normalized };
    let mut m = IntMatrix::zeros(dst.len(), src.len());
    for (i, t) in dst.tuples().iter().enumerate() {
        let row = &mut m.entries[i * src.len()..(i + 1) * src.len()];
        add_face_row(g, &src, t, 1, row);
    }
    m
}

fn check_budget(needed: usize, config: &SolverConfig) -> Result<(), PhaseError> {
    if needed > config.budget {
        Err(PhaseError::BudgetExceeded { needed, budget: config.budget })
    } else {
        Ok(())
    }
}

/// `H^n(G, Q/Z)` with generators.
#[derive(Debug, Clone)]
pub struct CohomologyReport {
    pub degree: usize,
    /// Orders of the cyclic summands, each dividing the next.
    pub invariant_factors: Vec<u64>,
    /// One normalized cocycle per invariant factor, generating its summand.
    pub representatives: Vec<Cochain>,
    group: FiniteGroup,
    snf: Snf<BigInt>,
    /// Position of each invariant factor on the Smith diagonal.
    slots: Vec<usize>,
}

impl CohomologyReport {
    /// Coordinates of the class of a normalized cocycle, one per invariant
    /// factor, each in `0..factor`.
    pub fn class_of(&self, c: &Cochain) -> Result<Vec<u64>, PhaseError> {
        if c.degree() != self.degree || c.group() != &self.group {
            return Err(PhaseError::BaseMismatch);
        }
        if !is_normalized(c).full() {
            return Err(PhaseError::NotNormalized(is_normalized(c).witness.unwrap_or_default()));
        }
        let basis = Basis { order: self.group.order(), degree: self.degree, normalized: true };
        let x = basis.vector(c);
        let n = self.snf.cols;
        self.slots
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&i, &d)| {
                // y_i = (Q^-1 x)_i lies in (1/d) Z / Z for a cocycle
                let mut acc = Ratio::<BigInt>::zero();
                for (j, xj) in x.iter().enumerate() {
                    let q = self.snf.q_inv[i * n + j].clone();
                    acc += Ratio::new(BigInt::from(*xj.numer()) * q, BigInt::from(*xj.denom()));
                }
                let scaled = acc * BigInt::from(d);
                if !scaled.is_integer() {
                    return Err(PhaseError::NotACocycle(vec![]));
                }
                Ok(scaled.to_integer().mod_floor(&BigInt::from(d)).to_u64().unwrap())
            })
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }
}

/// Invariant factors and generators of `H^n(G, Q/Z)` for `1 <= n <= 3`.
///
/// On normalized cochains, `Z^n` is the kernel of `D_n` and the coboundaries
/// form its largest divisible subgroup, so `H^n` is read off the nontrivial
/// Smith entries of `D_n`. The rank identity `rank D_{n-1} + rank D_n = dim C^n`
/// (vanishing rational cohomology) is checked as a self-test.
pub fn cohomology_group(
    g: &FiniteGroup,
    n: usize,
    config: &SolverConfig,
) -> Result<CohomologyReport, PhaseError> {
    if !(1..=3).contains(&n) {
        return Err(PhaseError::DegreeUnsupported(n));
    }
    let k = g.order() - 1;
    let dims = [k.pow(n as u32 - 1), k.pow(n as u32), k.pow(n as u32 + 1)];
    check_budget(dims[2] * dims[1] + dims[1] * dims[0], config)?;

    let d_prev = coboundary_matrix(g, n - 1, true);
    let d_n = coboundary_matrix(g, n, true);
    let snf_prev = smith_normal_form(d_prev.rows, d_prev.cols, &d_prev.entries);
    let snf = smith_normal_form(d_n.rows, d_n.cols, &d_n.entries);
    if snf_prev.rank() + snf.rank() != dims[1] {
        return Err(PhaseError::Internal(format!(
            "rank identity fails in degree {n}: {} + {} != {}",
            snf_prev.rank(),
            snf.rank(),
            dims[1]
        )));
    }

    let basis = Basis { order: g.order(), degree: n, normalized: true };
    let mut invariant_factors = Vec::new();
    let mut representatives = Vec::new();
    let mut slots = Vec::new();
    for (i, d) in snf.diag.iter().enumerate() {
        let d = d.to_u64().ok_or_else(|| PhaseError::Internal("huge invariant factor".into()))?;
        if d == 1 {
            continue;
        }
        // x = Q e_i / d
        let x: Vec<Ratio<i64>> = (0..dims[1])
            .map(|j| {
                let q = snf.q_at(j, i).mod_floor(&BigInt::from(d)).to_i64().unwrap();
                Ratio::new(q, d as i64)
            })
            .collect();
        let rep = basis.cochain(g, &x);
        if !is_cocycle(&rep)?.ok {
            return Err(PhaseError::Internal("cohomology representative is not a cocycle".into()));
        }
        invariant_factors.push(d);
        representatives.push(rep);
        slots.push(i);
    }
    Ok(CohomologyReport { degree: n, invariant_factors, representatives, group: g.clone(), snf, slots })
}

/// Why no solution was returned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// The target's class is nonzero. `class` lists its coordinates against
    /// the generators of [`cohomology_group`] (empty if that was not computable).
    NonzeroClass { certificate: InfeasibilityCertificate, class: Vec<(u64, u64)> },
    /// Solutions exist, but none with denominators dividing `bound`.
    BeyondBound { bound: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoboundarySolution {
    /// `coboundary(solution) == target` exactly.
    Solved { solution: Cochain, bound: u64 },
    Obstructed(Obstruction),
}

/// Solves `d x = target` for a cochain `x` one degree lower.
pub fn solve_coboundary_equation(
    target: &Cochain,
    config: &SolverConfig,
) -> Result<CoboundarySolution, PhaseError> {
    let n = target.degree();
    if n == 0 || n > 4 {
        return Err(PhaseError::DegreeUnsupported(n));
    }
    let g = target.group().clone();
    if n <= 3 {
        let scan = is_cocycle(target)?;
        if let Some(w) = scan.witness {
            return Err(PhaseError::NotACocycle(w));
        }
    }
    let normalized = is_normalized(target).full();
    let src = Basis { order: g.order(), degree: n - 1, normalized };
    let dst = Basis { order: g.order(), degree: n, normalized };
    check_budget(src.len() * dst.len(), config)?;

    let m = coboundary_matrix(&g, n - 1, normalized);
    let snf = smith_normal_form(m.rows, m.cols, &m.entries);
    let t = dst.vector(target);
    let bound = config.bound_for(&g, target.denominator_lcm());
    let outcome = match solve_mod_one(&m, &snf, &t, Some(bound))? {
        QzOutcome::Solved(x) => {
            let solution = src.cochain(&g, &x);
            if coboundary(&solution)? != *target {
                return Err(PhaseError::Internal("coboundary solution does not reproduce target".into()));
            }
            CoboundarySolution::Solved { solution, bound }
        }
        QzOutcome::BeyondBound { bound, .. } => {
            CoboundarySolution::Obstructed(Obstruction::BeyondBound { bound })
        }
        QzOutcome::Obstructed(certificate) => {
            let class = if normalized && (1..=3).contains(&n) {
                match cohomology_group(&g, n, config) {
                    Ok(report) => report
                        .invariant_factors
                        .iter()
                        .copied()
                        .zip(report.class_of(target)?)
                        .collect(),
                    Err(PhaseError::BudgetExceeded { .. }) => Vec::new(),
                    Err(e) => return Err(e),
                }
            } else {
                Vec::new()
            };
            CoboundarySolution::Obstructed(Obstruction::NonzeroClass { certificate, class })
        }
    };
    Ok(outcome)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymmetrizeOutcome {
    /// `symmetric = input * d(beta)`, with `beta` normalized.
    Symmetric { symmetric: Cochain, beta: Cochain, bound: u64 },
    /// The linear system has no solution at all; `certificate` proves it.
    NoSymmetricRepresentative { certificate: InfeasibilityCertificate },
    /// Solutions exist only with denominators beyond `bound`.
    BeyondBound { bound: u64 },
}

/// Rows `sum_k sign_k * (x + d beta)(tuple_k) = 0` as a matrix in `beta`,
/// with the target collecting the known part.
struct SymmetrySystem {
    rows: Vec<Vec<i64>>,
    target: Vec<Ratio<i64>>,
}

impl SymmetrySystem {
    fn push(&mut self, g: &FiniteGroup, src: &Basis, x: &Cochain, terms: &[(&[usize], i64)]) {
        let mut row = vec![0; src.len()];
        let mut known = Ratio::zero();
        for &(t, s) in terms {
            add_face_row(g, src, t, s, &mut row);
            known += x.get(t).exponent() * s;
        }
        if row.iter().all(|&v| v == 0) && known.is_integer() {
            return;
        }
        self.rows.push(row);
        self.target.push(-known);
    }

    fn solve(
        self,
        g: &FiniteGroup,
        src: &Basis,
        x: &Cochain,
        config: &SolverConfig,
    ) -> Result<SymmetrizeOutcome, PhaseError> {
        let cols = src.len();
        check_budget(self.rows.len() * cols, config)?;
        let mut m = IntMatrix::zeros(self.rows.len(), cols);
        for (i, r) in self.rows.iter().enumerate() {
            m.entries[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        let snf = smith_normal_form(m.rows, m.cols, &m.entries);
        let bound = config.bound_for(g, x.denominator_lcm());
        Ok(match solve_mod_one(&m, &snf, &self.target, Some(bound))? {
            QzOutcome::Solved(b) => {
                let beta = src.cochain(g, &b);
                let symmetric = x.mul(&coboundary(&beta)?)?;
                SymmetrizeOutcome::Symmetric { symmetric, beta, bound }
            }
            QzOutcome::Obstructed(certificate) => {
                SymmetrizeOutcome::NoSymmetricRepresentative { certificate }
            }
            QzOutcome::BeyondBound { bound, .. } => SymmetrizeOutcome::BeyondBound { bound },
        })
    }
}

/// Looks for a normalized 2-cochain `beta` making `omega * d(beta)` satisfy
/// the three tetrahedral relations.
pub fn symmetrize_in_class(
    omega: &Cochain,
    config: &SolverConfig,
) -> Result<SymmetrizeOutcome, PhaseError> {
    if omega.degree() != 3 {
        return Err(PhaseError::DegreeUnsupported(omega.degree()));
    }
    if let Some(w) = is_cocycle(omega)?.witness {
        return Err(PhaseError::NotACocycle(w));
    }
    let norm = is_normalized(omega);
    if !norm.full() {
        return Err(PhaseError::NotNormalized(norm.witness.unwrap_or_default()));
    }
    let g = omega.group().clone();
    let src = Basis { order: g.order(), degree: 2, normalized: true };
    let mut sys = SymmetrySystem { rows: Vec::new(), target: Vec::new() };
    for_each_tuple(g.order(), 3, |t| {
        for p in tetrahedral_partners(&g, t[0], t[1], t[2]) {
            sys.push(&g, &src, omega, &[(t, 1), (&p, 1)]);
        }
    });
    let out = sys.solve(&g, &src, omega, config)?;
    if let SymmetrizeOutcome::Symmetric { symmetric, .. } = &out {
        if !super::tetrahedral_symmetry_check(symmetric).ok {
            return Err(PhaseError::Internal("symmetrized cocycle fails the tetrahedral check".into()));
        }
    }
    Ok(out)
}

/// Looks for a normalized 1-cochain `beta` making `theta * d(beta)` satisfy
/// both triangle relations.
pub fn symmetrize_theta(
    theta: &Cochain,
    config: &SolverConfig,
) -> Result<SymmetrizeOutcome, PhaseError> {
    if theta.degree() != 2 {
        return Err(PhaseError::DegreeUnsupported(theta.degree()));
    }
    let g = theta.group().clone();
    let src = Basis { order: g.order(), degree: 1, normalized: true };
    let mut sys = SymmetrySystem { rows: Vec::new(), target: Vec::new() };
    for a in g.elements() {
        for b in g.elements() {
            let ai = g.inv(a);
            let bi = g.inv(b);
            let ba = [b, a];
            sys.push(&g, &src, theta, &[(&ba, 1), (&[a, g.mul(ai, bi)], -1)]);
            sys.push(&g, &src, theta, &[(&ba, 1), (&[ai, bi], 1)]);
        }
    }
    let out = sys.solve(&g, &src, theta, config)?;
    if let SymmetrizeOutcome::Symmetric { symmetric, .. } = &out {
        if !super::triangle_symmetry_check(symmetric).ok {
            return Err(PhaseError::Internal("symmetrized theta fails the triangle check".into()));
        }
    }
    Ok(out)
}
