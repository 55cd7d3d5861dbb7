//! Exact roots of unity, cochains on finite groups with values in Q/Z, and
//! the validation scans used to admit defect data.
//!
//! A [`Phase`] stores the exponent `q` of `exp(2 pi i q)` as a reduced
//! fraction in `[0, 1)`. Cochains are dense arrays of phases indexed by
//! element tuples in row-major order.

mod cohomology;
pub mod snf;
mod solve;

use std::fmt;
use std::ops::{Div, Mul};
use std::str::FromStr;

use num_complex::Complex;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Float, FloatConst, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::groups::FiniteGroup;

pub use cohomology::{
    coboundary_matrix, cohomology_group, solve_coboundary_equation, symmetrize_in_class,
    symmetrize_theta, CohomologyReport, CoboundarySolution, Obstruction, SolverConfig,
    SymmetrizeOutcome, DEFAULT_BUDGET,
};
pub use solve::{
    solve_mod_one, InfeasibilityCertificate, IntMatrix, QzOutcome,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PhaseError {
    #[error("coboundary of degree {0} cochains is not supported (degree must be at most 3)")]
    DegreeUnsupported(usize),
    #[error("cochain is not a cocycle; first failing tuple {0:?}")]
    NotACocycle(Vec<usize>),
    #[error("cochain is not normalized; first failing tuple {0:?}")]
    NotNormalized(Vec<usize>),
    #[error("expected {expected} values for a degree {degree} cochain, got {got}")]
    WrongLength { degree: usize, expected: usize, got: usize },
    #[error("cochains live on different groups")]
    BaseMismatch,
    #[error("linear system needs {needed} matrix entries, budget is {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error("invalid exponent `{0}`: expected p/q with 0 <= p/q < 1")]
    BadExponent(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

/// `exp(2 pi i q)` for a rational `q`, stored with `0 <= q < 1` in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(Ratio<i64>);

impl Phase {
    pub const fn one() -> Self {
        Phase(Ratio::new_raw(0, 1))
    }

    /// The phase with exponent `num/den`, reduced modulo 1.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "phase with zero denominator");
        Self::from_ratio(Ratio::new(num, den))
    }

    pub fn from_ratio(r: Ratio<i64>) -> Self {
        let fl = r.floor();
        Phase(r - fl)
    }

    /// Reads `p/q` (or a bare integer), rejecting values outside `[0, 1)`.
    pub fn parse_exponent(s: &str) -> Result<Self, PhaseError> {
        let bad = || PhaseError::BadExponent(s.to_string());
        let t = s.trim();
        let r = match t.split_once('/') {
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let q: i64 = q.trim().parse().map_err(|_| bad())?;
                if q <= 0 {
                    return Err(bad());
                }
                Ratio::new(p, q)
            }
            None => Ratio::from_integer(t.parse::<i64>().map_err(|_| bad())?),
        };
        if r < Ratio::zero() || r >= Ratio::from_integer(1) {
            return Err(bad());
        }
        Ok(Phase(r))
    }

    #[inline]
    pub fn exponent(&self) -> Ratio<i64> {
        self.0
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.0.is_zero()
    }

    #[inline]
    pub fn inv(self) -> Self {
        Self::from_ratio(-self.0)
    }

    pub fn pow(self, k: i64) -> Self {
        Self::from_ratio(self.0 * k)
    }

    pub fn denominator(&self) -> i64 {
        *self.0.denom()
    }

    pub fn to_complex<T: Float + FloatConst>(&self) -> Complex<T> {
        let num = T::from(*self.0.numer()).unwrap();
        let den = T::from(*self.0.denom()).unwrap();
        let angle = T::TAU() * num / den;
        Complex::new(angle.cos(), angle.sin())
    }
}

impl Default for Phase {
    fn default() -> Self {
        Self::one()
    }
}

// phases multiply by adding exponents
#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for Phase {
    type Output = Phase;
    #[inline]
    fn mul(self, rhs: Phase) -> Phase {
        Phase::from_ratio(self.0 + rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for Phase {
    type Output = Phase;
    #[inline]
    fn div(self, rhs: Phase) -> Phase {
        Phase::from_ratio(self.0 - rhs.0)
    }
}

impl std::iter::Product for Phase {
    fn product<I: Iterator<Item = Phase>>(iter: I) -> Phase {
        iter.fold(Phase::one(), |a, b| a * b)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({self})")
    }
}

impl FromStr for Phase {
    type Err = PhaseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Phase::parse_exponent(s)
    }
}

/// Calls `f` on every tuple in `0..order` of length `n`, in row-major order.
pub fn for_each_tuple(order: usize, n: usize, mut f: impl FnMut(&[usize])) {
    let mut t = vec![0usize; n];
    let total = order.pow(n as u32);
    for _ in 0..total {
        f(&t);
        for slot in (0..n).rev() {
            t[slot] += 1;
            if t[slot] < order {
                break;
            }
            t[slot] = 0;
        }
    }
}

/// A function `G^n -> Q/Z`, stored densely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    group: FiniteGroup,
    values: Vec<Phase>,
}

impl Cochain {
    pub fn unit(group: &FiniteGroup, degree: usize) -> Self {
        let len = group.order().pow(degree as u32);
        Self { degree, group: group.clone(), values: vec![Phase::one(); len] }
    }

    pub fn from_fn(group: &FiniteGroup, degree: usize, mut f: impl FnMut(&[usize]) -> Phase) -> Self {
        let mut values = Vec::with_capacity(group.order().pow(degree as u32));
        for_each_tuple(group.order(), degree, |t| values.push(f(t)));
        Self { degree, group: group.clone(), values }
    }

    pub fn from_values(
        group: &FiniteGroup,
        degree: usize,
        values: Vec<Phase>,
    ) -> Result<Self, PhaseError> {
        let expected = group.order().pow(degree as u32);
        if values.len() != expected {
            return Err(PhaseError::WrongLength { degree, expected, got: values.len() });
        }
        Ok(Self { degree, group: group.clone(), values })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    #[inline]
    pub fn values(&self) -> &[Phase] {
        &self.values
    }

    #[inline]
    pub fn index_of(&self, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.degree);
        let n = self.group.order();
        args.iter().fold(0, |acc, &a| acc * n + a)
    }

    #[inline]
    pub fn get(&self, args: &[usize]) -> Phase {
        self.values[self.index_of(args)]
    }

    #[inline]
    pub fn at1(&self, a: usize) -> Phase {
        self.values[a]
    }

    #[inline]
    pub fn at2(&self, a: usize, b: usize) -> Phase {
        self.values[a * self.group.order() + b]
    }

    #[inline]
    pub fn at3(&self, a: usize, b: usize, c: usize) -> Phase {
        let n = self.group.order();
        self.values[(a * n + b) * n + c]
    }

    pub fn set(&mut self, args: &[usize], value: Phase) {
        let i = self.index_of(args);
        self.values[i] = value;
    }

    pub fn is_unit(&self) -> bool {
        self.values.iter().all(Phase::is_one)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Cochain) -> Result<Cochain, PhaseError> {
        if self.group != other.group || self.degree != other.degree {
            return Err(PhaseError::BaseMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| a * b).collect();
        Ok(Cochain { degree: self.degree, group: self.group.clone(), values })
    }

    pub fn inv(&self) -> Cochain {
        Cochain {
            degree: self.degree,
            group: self.group.clone(),
            values: self.values.iter().map(|p| p.inv()).collect(),
        }
    }

    /// Least common multiple of all exponent denominators.
    pub fn denominator_lcm(&self) -> i64 {
        self.values.iter().fold(1, |acc, p| acc.lcm(&p.denominator()))
    }

    /// Pull back along a homomorphism `phi: K -> G` (given as an index map).
    pub fn pullback(&self, k: &FiniteGroup, phi: impl Fn(usize) -> usize) -> Cochain {
        let mut buf = vec![0; self.degree];
        Cochain::from_fn(k, self.degree, |t| {
            for (b, &x) in buf.iter_mut().zip(t) {
                *b = phi(x);
            }
            self.get(&buf)
        })
    }
}

/// The inhomogeneous coboundary
/// `(dc)(g1..g_{n+1}) = c(g2..) * prod_i c(.., g_i g_{i+1}, ..)^{(-1)^i} * c(g1..g_n)^{(-1)^{n+1}}`.
pub fn coboundary(c: &Cochain) -> Result<Cochain, PhaseError> {
    let n = c.degree();
    if n > 3 {
        return Err(PhaseError::DegreeUnsupported(n));
    }
    let g = c.group().clone();
    let mut face = vec![0usize; n];
    Ok(Cochain::from_fn(&g, n + 1, |t| coboundary_at(c, &g, t, &mut face)))
}

fn coboundary_at(c: &Cochain, g: &FiniteGroup, t: &[usize], face: &mut [usize]) -> Phase {
    let n = c.degree();
    // the first face drops g1
    face.copy_from_slice(&t[1..]);
    let mut acc = c.get(face);
    for i in 1..=n {
        // merge slots i-1 and i (0-based) into their product
        let mut k = 0;
        let mut j = 0;
        while j < t.len() {
            if j == i - 1 {
                face[k] = g.mul(t[j], t[j + 1]);
                j += 2;
            } else {
                face[k] = t[j];
                j += 1;
            }
            k += 1;
        }
        let v = c.get(face);
        acc = if i % 2 == 1 { acc / v } else { acc * v };
    }
    face.copy_from_slice(&t[..n]);
    let v = c.get(face);
    if (n + 1) % 2 == 1 {
        acc / v
    } else {
        acc * v
    }
}

/// Outcome of a scan that either passes or stops at the first failing tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanResult {
    pub ok: bool,
    pub witness: Option<Vec<usize>>,
}

impl ScanResult {
    fn pass() -> Self {
        Self { ok: true, witness: None }
    }

    fn fail(w: Vec<usize>) -> Self {
        Self { ok: false, witness: Some(w) }
    }
}

/// True iff `dc` is the unit cochain; otherwise the first tuple where it is not.
pub fn is_cocycle(c: &Cochain) -> Result<ScanResult, PhaseError> {
    let n = c.degree();
    if n > 3 {
        return Err(PhaseError::DegreeUnsupported(n));
    }
    let g = c.group().clone();
    let mut face = vec![0usize; n];
    let mut witness = None;
    for_each_tuple(g.order(), n + 1, |t| {
        if witness.is_none() && !coboundary_at(c, &g, t, &mut face).is_one() {
            witness = Some(t.to_vec());
        }
    });
    Ok(witness.map_or_else(ScanResult::pass, ScanResult::fail))
}

/// Which slots of a cochain vanish whenever the identity sits in them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizationReport {
    /// `slot_ok[i]` is true iff `c(.., e, ..)` with `e` in slot `i` is always 1.
    pub slot_ok: Vec<bool>,
    /// First tuple with an identity entry and a nonunit value.
    pub witness: Option<Vec<usize>>,
}

impl NormalizationReport {
    /// Normalized in the first slot, the weakest form used for 3-cocycles.
    pub fn first_slot(&self) -> bool {
        self.slot_ok.first().copied().unwrap_or(true)
    }

    /// Normalized in every slot.
    pub fn full(&self) -> bool {
        self.slot_ok.iter().all(|&b| b)
    }

    pub fn failing_slots(&self) -> Vec<usize> {
        self.slot_ok.iter().enumerate().filter(|(_, &ok)| !ok).map(|(i, _)| i).collect()
    }
}

pub fn is_normalized(c: &Cochain) -> NormalizationReport {
    let mut slot_ok = vec![true; c.degree()];
    let mut witness = None;
    for_each_tuple(c.group().order(), c.degree(), |t| {
        if c.get(t).is_one() {
            return;
        }
        for (i, &x) in t.iter().enumerate() {
            if x == 0 {
                slot_ok[i] = false;
                if witness.is_none() {
                    witness = Some(t.to_vec());
                }
            }
        }
    });
    NormalizationReport { slot_ok, witness }
}

/// A symmetry relation violated at `args`; relations are numbered from 1 in
/// the order they are listed on the check functions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryWitness {
    pub relation: usize,
    pub args: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryCheck {
    pub ok: bool,
    pub witness: Option<SymmetryWitness>,
}

/// The three tetrahedral relations as index maps: relation `r` demands
/// `w(a,b,c) * w(sigma_r(a,b,c)) = 1`.
pub(crate) fn tetrahedral_partners(g: &FiniteGroup, a: usize, b: usize, c: usize) -> [[usize; 3]; 3] {
    let ab = g.mul(a, b);
    let bc = g.mul(b, c);
    [[g.inv(a), ab, c], [ab, g.inv(b), bc], [a, bc, g.inv(c)]]
}

/// Checks `w(a,b,c) = w(a^-1,ab,c)^-1 = w(ab,b^-1,bc)^-1 = w(a,bc,c^-1)^-1`.
pub fn tetrahedral_symmetry_check(omega: &Cochain) -> SymmetryCheck {
    let g = omega.group();
    for a in g.elements() {
        for b in g.elements() {
            for c in g.elements() {
                let w = omega.at3(a, b, c);
                for (r, p) in tetrahedral_partners(g, a, b, c).iter().enumerate() {
                    if !(w * omega.at3(p[0], p[1], p[2])).is_one() {
                        return SymmetryCheck {
                            ok: false,
                            witness: Some(SymmetryWitness { relation: r + 1, args: vec![a, b, c] }),
                        };
                    }
                }
            }
        }
    }
    SymmetryCheck { ok: true, witness: None }
}

/// Checks `t(b,a) = t(a, a^-1 b^-1)` (relation 1) and `t(b,a) = t(a^-1, b^-1)^-1`
/// (relation 2). The witness lists `(a, b)`.
pub fn triangle_symmetry_check(theta: &Cochain) -> SymmetryCheck {
    let g = theta.group();
    for a in g.elements() {
        for b in g.elements() {
            let lhs = theta.at2(b, a);
            let r1 = theta.at2(a, g.mul(g.inv(a), g.inv(b)));
            let r2 = theta.at2(g.inv(a), g.inv(b)).inv();
            for (r, rhs) in [r1, r2].into_iter().enumerate() {
                if lhs != rhs {
                    return SymmetryCheck {
                        ok: false,
                        witness: Some(SymmetryWitness { relation: r + 1, args: vec![a, b] }),
                    };
                }
            }
        }
    }
    SymmetryCheck { ok: true, witness: None }
}

/// The standard generator of `H^3(Z/n, Q/Z)` raised to the power `p`:
/// `w(a,b,c) = exp(2 pi i p a (b + c - [b+c]_n) / n^2)`.
pub fn cyclic_three_cocycle(n: usize, p: usize) -> Cochain {
    assert!(n > 0 && p < n, "need 0 <= p < n");
    let g = crate::groups::cyclic(n);
    let n2 = (n * n) as i64;
    Cochain::from_fn(&g, 3, |t| {
        let (a, b, c) = (t[0], t[1], t[2]);
        let carry = b + c - (b + c) % n;
        Phase::new((p * a * carry) as i64, n2)
    })
}
