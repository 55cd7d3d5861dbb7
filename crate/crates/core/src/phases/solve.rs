//! Integer linear systems with unknowns in Q/Z.
//!
//! Solves `M x = t (mod Z^r)` for `x` in `(Q/Z)^c` through the Smith form
//! `P M Q = D`: with `y = Q^-1 x` the system splits into `d_i y_i = (P t)_i`
//! for `i < rank` and `(P t)_i = 0 mod 1` for the remaining rows. A failing
//! row `i` yields the certificate `u = e_i^T P`, an integer vector with
//! `u^T M = 0` and `u^T t` not an integer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::snf::Snf;
use super::PhaseError;

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![0; rows * cols] }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.cols + j] += v;
    }

    /// `M x` reduced modulo 1.
    pub fn apply_mod_one(&self, x: &[Ratio<i64>]) -> Vec<Ratio<i64>> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Ratio::zero();
                for (j, xj) in x.iter().enumerate() {
                    let m = self.get(i, j);
                    if m != 0 {
                        acc = frac(acc + xj * m);
                    }
                }
                acc
            })
            .collect()
    }

    /// `u^T M`.
    pub fn left_mul(&self, u: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(u.len(), self.rows);
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let m = self.get(i, j);
                if m != 0 {
                    *o += ui * m;
                }
            }
        }
        out
    }
}

fn frac<T: Clone + Integer>(r: Ratio<T>) -> Ratio<T> {
    let f = r.floor();
    r - f
}

fn to_small(r: &BigRational) -> Result<Ratio<i64>, PhaseError> {
    let r = frac(r.clone());
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(n), Some(d)) => Ok(Ratio::new(n, d)),
        _ => Err(PhaseError::Internal(format!("exponent {r} does not fit in i64"))),
    }
}

fn big(r: &Ratio<i64>) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Integer multipliers `u` with `u^T M = 0` and `u^T t` not in `Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfeasibilityCertificate {
    pub multipliers: Vec<BigInt>,
    /// `u^T t` reduced modulo 1 (nonzero).
    pub residue: BigRational,
}

impl InfeasibilityCertificate {
    /// Re-derives both certificate properties from scratch.
    pub fn verify(&self, m: &IntMatrix, t: &[Ratio<i64>]) -> bool {
        if !m.left_mul(&self.multipliers).iter().all(Zero::is_zero) {
            return false;
        }
        let mut acc = BigRational::zero();
        for (u, ti) in self.multipliers.iter().zip(t) {
            acc += big(ti) * u;
        }
        let acc = frac(acc);
        !acc.is_zero() && acc == self.residue
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QzOutcome {
    Solved(Vec<Ratio<i64>>),
    /// No solution with any denominators.
    Obstructed(InfeasibilityCertificate),
    /// Solvable, but not with denominators dividing `bound`; `exact` is a
    /// solution with larger denominators.
    BeyondBound { bound: u64, exact: Vec<Ratio<i64>> },
}

/// Solves `M x = t (mod 1)`. With `bound = Some(B)` the solution is sought
/// in `((1/B) Z / Z)^c`.
pub fn solve_mod_one(
    m: &IntMatrix,
    snf: &Snf<BigInt>,
    t: &[Ratio<i64>],
    bound: Option<u64>,
) -> Result<QzOutcome, PhaseError> {
    assert_eq!(t.len(), m.rows);
    assert_eq!((snf.rows, snf.cols), (m.rows, m.cols));
    let rank = snf.rank();
    let mut s: Vec<BigRational> = t.iter().map(big).collect();
    snf.apply_p(&mut s);

    if let Some(i) = (rank..m.rows).find(|&i| !s[i].is_integer()) {
        let cert = InfeasibilityCertificate { multipliers: snf.p_row(i), residue: frac(s[i].clone()) };
        if !cert.verify(m, t) {
            return Err(PhaseError::Internal("infeasibility certificate does not verify".into()));
        }
        return Ok(QzOutcome::Obstructed(cert));
    }

    let y: Vec<BigRational> = (0..m.cols)
        .map(|i| if i < rank { frac(&s[i] / &snf.diag[i]) } else { BigRational::zero() })
        .collect();
    let exact = back_substitute(snf, &y)?;
    check(m, &exact, t)?;

    let Some(b) = bound else { return Ok(QzOutcome::Solved(exact)) };
    let bb = BigInt::from(b);
    let mut yb = vec![BigRational::zero(); m.cols];
    for i in 0..rank {
        let r = &s[i] * &bb;
        if !r.is_integer() {
            return Ok(QzOutcome::BeyondBound { bound: b, exact });
        }
        let r = r.to_integer();
        let d = &snf.diag[i];
        let g = d.gcd(&bb);
        if !(&r % &g).is_zero() {
            return Ok(QzOutcome::BeyondBound { bound: b, exact });
        }
        let modulus = &bb / &g;
        let inv = mod_inverse(&(d / &g), &modulus);
        let yi = ((&r / &g) * inv).mod_floor(&modulus);
        yb[i] = BigRational::new(yi, bb.clone());
    }
    let bounded = back_substitute(snf, &yb)?;
    check(m, &bounded, t)?;
    Ok(QzOutcome::Solved(bounded))
}

fn back_substitute(snf: &Snf<BigInt>, y: &[BigRational]) -> Result<Vec<Ratio<i64>>, PhaseError> {
    (0..snf.cols)
        .map(|j| {
            let mut acc = BigRational::zero();
            for (k, yk) in y.iter().enumerate() {
                if !yk.is_zero() {
                    acc += yk * snf.q_at(j, k);
                }
            }
            to_small(&acc)
        })
        .collect()
}

fn check(m: &IntMatrix, x: &[Ratio<i64>], t: &[Ratio<i64>]) -> Result<(), PhaseError> {
    let got = m.apply_mod_one(x);
    if got.iter().zip(t).all(|(a, b)| frac(a - b).is_zero()) {
        Ok(())
    } else {
        Err(PhaseError::Internal("solution fails the system it solves".into()))
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.abs().is_one());
    e.x.mod_floor(m)
}

#[cfg(test)]
mod tests {
    use super::super::snf::smith_normal_form;
    use super::*;

    fn solve(m: &IntMatrix, t: &[Ratio<i64>], bound: Option<u64>) -> QzOutcome {
        let s = smith_normal_form(m.rows, m.cols, &m.entries);
        solve_mod_one(m, &s, t, bound).unwrap()
    }

    #[test]
    fn doubling() {
        // 2x = 1/2 has x = 1/4 (or 3/4)
        let m = IntMatrix { rows: 1, cols: 1, entries: vec![2] };
        match solve(&m, &[Ratio::new(1, 2)], None) {
            QzOutcome::Solved(x) => assert!(x[0] == Ratio::new(1, 4) || x[0] == Ratio::new(3, 4)),
            other => panic!("{other:?}"),
        }
        // at bound 2 the same system has no solution
        assert!(matches!(solve(&m, &[Ratio::new(1, 2)], Some(2)), QzOutcome::BeyondBound { .. }));
        assert!(matches!(solve(&m, &[Ratio::new(1, 2)], Some(4)), QzOutcome::Solved(_)));
    }

    #[test]
    fn inconsistent_rows() {
        // x = 1/3 and x = 0 simultaneously
        let m = IntMatrix { rows: 2, cols: 1, entries: vec![1, 1] };
        let t = [Ratio::new(1, 3), Ratio::zero()];
        match solve(&m, &t, None) {
            QzOutcome::Obstructed(c) => {
                assert!(c.verify(&m, &t));
                let third = BigRational::new(1.into(), 3.into());
                assert!(c.residue == third || c.residue == third.clone() + third);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_matrix() {
        let m = IntMatrix::zeros(2, 2);
        assert!(matches!(solve(&m, &[Ratio::zero(), Ratio::zero()], None), QzOutcome::Solved(_)));
        assert!(matches!(
            solve(&m, &[Ratio::new(1, 5), Ratio::zero()], None),
            QzOutcome::Obstructed(_)
        ));
    }
}
