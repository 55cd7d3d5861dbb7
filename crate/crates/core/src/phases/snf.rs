//! Smith normal form over the integers with retained transforms.
//!
//! `P A Q = D` with `P`, `Q` unimodular and `D` diagonal, `d_1 | d_2 | ...`.
//! `Q` and `Q^-1` are kept dense; `P` is kept as the list of elementary row
//! operations, which is all the solvers need (apply `P` to a vector and read
//! off single rows of `P`).
//!
//! The elimination is generic over the integer type and uses checked
//! arithmetic; [`smith_normal_form`] runs it in `i64` and falls back to
//! `BigInt` when an entry overflows.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};

/// Integer types the elimination can run over.
pub trait SnfInt:
    Clone + Debug + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + Into<BigInt>
{
}

impl<T> SnfInt for T where
    T: Clone + Debug + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + Into<BigInt>
{
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowOp<I> {
    Swap(usize, usize),
    /// `row[dst] += k * row[src]`
    AddMul { src: usize, dst: usize, k: I },
    Negate(usize),
}

#[derive(Debug, Clone)]
pub struct Snf<I> {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub diag: Vec<I>,
    pub row_ops: Vec<RowOp<I>>,
    /// `cols x cols`, row-major.
    pub q: Vec<I>,
    pub q_inv: Vec<I>,
}

fn axpy<I: SnfInt>(acc: &I, k: &I, x: &I) -> Result<I, Overflow> {
    let p = k.checked_mul(x).ok_or(Overflow)?;
    acc.checked_add(&p).ok_or(Overflow)
}

struct Work<I> {
    rows: usize,
    cols: usize,
    a: Vec<I>,
    row_ops: Vec<RowOp<I>>,
    q: Vec<I>,
    q_inv: Vec<I>,
}

impl<I: SnfInt> Work<I> {
    fn at(&self, i: usize, j: usize) -> &I {
        &self.a[i * self.cols + j]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.a.swap(i * self.cols + c, j * self.cols + c);
        }
        self.row_ops.push(RowOp::Swap(i, j));
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self.a[i * self.cols + c].clone();
            self.a[i * self.cols + c] = v;
        }
        self.row_ops.push(RowOp::Negate(i));
    }

    /// `row[dst] += k * row[src]`
    fn add_row(&mut self, src: usize, dst: usize, k: I) -> Result<(), Overflow> {
        for c in 0..self.cols {
            let v = axpy(&self.a[dst * self.cols + c], &k, &self.a[src * self.cols + c])?;
            self.a[dst * self.cols + c] = v;
        }
        self.row_ops.push(RowOp::AddMul { src, dst, k });
        Ok(())
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.a.swap(r * self.cols + i, r * self.cols + j);
        }
        let n = self.cols;
        for r in 0..n {
            self.q.swap(r * n + i, r * n + j);
        }
        for c in 0..n {
            self.q_inv.swap(i * n + c, j * n + c);
        }
    }

    /// `col[dst] += k * col[src]`; `Q <- Q E`, `Q^-1 <- E^-1 Q^-1`.
    fn add_col(&mut self, src: usize, dst: usize, k: I) -> Result<(), Overflow> {
        for r in 0..self.rows {
            let v = axpy(&self.a[r * self.cols + dst], &k, &self.a[r * self.cols + src])?;
            self.a[r * self.cols + dst] = v;
        }
        let n = self.cols;
        for r in 0..n {
            let v = axpy(&self.q[r * n + dst], &k, &self.q[r * n + src])?;
            self.q[r * n + dst] = v;
        }
        let neg = -k;
        for c in 0..n {
            let v = axpy(&self.q_inv[src * n + c], &neg, &self.q_inv[dst * n + c])?;
            self.q_inv[src * n + c] = v;
        }
        Ok(())
    }

    /// Smallest nonzero |entry| in the lower-right block from `(t, t)`.
    fn min_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = self.at(i, j);
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| v.abs() < self.at(bi, bj).abs()) {
                    best = Some((i, j));
                    if v.abs().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn min_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let cells = (t..self.rows).map(|i| (i, t)).chain((t + 1..self.cols).map(|j| (t, j)));
        for (i, j) in cells {
            let v = self.at(i, j);
            if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < self.at(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
        best
    }

    fn run(&mut self) -> Result<Vec<I>, Overflow> {
        let mut diag = Vec::new();
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((pi, pj)) = self.min_in_block(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.at(t, t).clone();
                let mut clean = true;
                for i in t + 1..self.rows {
                    if self.at(i, t).is_zero() {
                        continue;
                    }
                    let q = self.at(i, t).div_floor(&p);
                    self.add_row(t, i, -q)?;
                    clean &= self.at(i, t).is_zero();
                }
                for j in t + 1..self.cols {
                    if self.at(t, j).is_zero() {
                        continue;
                    }
                    let q = self.at(t, j).div_floor(&p);
                    self.add_col(t, j, -q)?;
                    clean &= self.at(t, j).is_zero();
                }
                if !clean {
                    let (i, j) = self.min_in_cross(t).expect("pivot cross is nonzero");
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                // divisibility: pull a non-multiple into the pivot row
                let p = self.at(t, t).clone();
                let offender = (t + 1..self.rows).find(|&i| {
                    (t + 1..self.cols).any(|j| !self.at(i, j).mod_floor(&p).is_zero())
                });
                match offender {
                    Some(i) => self.add_row(i, t, I::one())?,
                    None => break,
                }
            }
            if self.at(t, t).is_negative() {
                self.negate_row(t);
            }
            diag.push(self.at(t, t).clone());
            t += 1;
        }
        Ok(diag)
    }
}

/// Smith normal form over the integer type `I`, or `Overflow`.
pub fn snf_in<I>(rows: usize, cols: usize, entries: &[i64]) -> Result<Snf<I>, Overflow>
where
    I: SnfInt + From<i64>,
{
    assert_eq!(entries.len(), rows * cols);
    let mut identity = vec![I::zero(); cols * cols];
    for i in 0..cols {
        identity[i * cols + i] = I::one();
    }
    let mut w = Work {
        rows,
        cols,
        a: entries.iter().map(|&v| I::from(v)).collect(),
        row_ops: Vec::new(),
        q: identity.clone(),
        q_inv: identity,
    };
    let diag = w.run()?;
    Ok(Snf { rows, cols, diag, row_ops: w.row_ops, q: w.q, q_inv: w.q_inv })
}

/// Smith normal form, in `i64` when possible and `BigInt` otherwise.
pub fn smith_normal_form(rows: usize, cols: usize, entries: &[i64]) -> Snf<BigInt> {
    match snf_in::<i64>(rows, cols, entries) {
        Ok(s) => s.widen(),
        Err(Overflow) => snf_in::<BigInt>(rows, cols, entries).expect("BigInt cannot overflow"),
    }
}

impl<I: SnfInt> Snf<I> {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    pub fn widen(self) -> Snf<BigInt> {
        let w = |v: Vec<I>| v.into_iter().map(Into::into).collect::<Vec<BigInt>>();
        Snf {
            rows: self.rows,
            cols: self.cols,
            diag: w(self.diag),
            row_ops: self
                .row_ops
                .into_iter()
                .map(|op| match op {
                    RowOp::Swap(a, b) => RowOp::Swap(a, b),
                    RowOp::AddMul { src, dst, k } => RowOp::AddMul { src, dst, k: k.into() },
                    RowOp::Negate(a) => RowOp::Negate(a),
                })
                .collect(),
            q: w(self.q),
            q_inv: w(self.q_inv),
        }
    }
}

impl Snf<BigInt> {
    /// `P v` for a vector over any ring containing the integers.
    pub fn apply_p<T>(&self, v: &mut [T])
    where
        T: Clone + std::ops::Neg<Output = T> + std::ops::Add<Output = T> + std::ops::Mul<Output = T> + From<BigInt>,
    {
        assert_eq!(v.len(), self.rows);
        for op in &self.row_ops {
            match op {
                RowOp::Swap(a, b) => v.swap(*a, *b),
                RowOp::Negate(a) => v[*a] = -v[*a].clone(),
                RowOp::AddMul { src, dst, k } => {
                    v[*dst] = v[*dst].clone() + T::from(k.clone()) * v[*src].clone();
                }
            }
        }
    }

    /// Row `i` of `P`, computed as `P^T e_i` by undoing the operations in
    /// reverse with their transposes.
    pub fn p_row(&self, i: usize) -> Vec<BigInt> {
        let mut y = vec![BigInt::zero(); self.rows];
        y[i] = BigInt::one();
        for op in self.row_ops.iter().rev() {
            match op {
                RowOp::Swap(a, b) => y.swap(*a, *b),
                RowOp::Negate(a) => y[*a] = -y[*a].clone(),
                RowOp::AddMul { src, dst, k } => {
                    let add = k * &y[*dst];
                    y[*src] += add;
                }
            }
        }
        y
    }

    pub fn q_at(&self, i: usize, j: usize) -> &BigInt {
        &self.q[i * self.cols + j]
    }

    pub fn q_inv_at(&self, i: usize, j: usize) -> &BigInt {
        &self.q_inv[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat_mul(a: &[BigInt], b: &[BigInt], n: usize, k: usize, m: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); n * m];
        for i in 0..n {
            for l in 0..k {
                for j in 0..m {
                    out[i * m + j] += &a[i * k + l] * &b[l * m + j];
                }
            }
        }
        out
    }

    /// Rebuilds `P` densely and checks `P A Q = D` and `Q Q^-1 = 1`.
    fn verify(rows: usize, cols: usize, a: &[i64], s: &Snf<BigInt>) {
        let mut p = vec![BigInt::zero(); rows * rows];
        for i in 0..rows {
            for (j, v) in s.p_row(i).into_iter().enumerate() {
                p[i * rows + j] = v;
            }
        }
        // apply_p on each column of the identity must agree with p_row
        for j in 0..rows {
            let mut e = vec![BigInt::zero(); rows];
            e[j] = BigInt::one();
            s.apply_p(&mut e);
            for i in 0..rows {
                assert_eq!(e[i], p[i * rows + j]);
            }
        }
        let a: Vec<BigInt> = a.iter().map(|&v| BigInt::from(v)).collect();
        let paq = mat_mul(&mat_mul(&p, &a, rows, rows, cols), &s.q, rows, cols, cols);
        for i in 0..rows {
            for j in 0..cols {
                let expect =
                    if i == j && i < s.rank() { s.diag[i].clone() } else { BigInt::zero() };
                assert_eq!(paq[i * cols + j], expect, "PAQ at ({i},{j})");
            }
        }
        let qq = mat_mul(&s.q, &s.q_inv, cols, cols, cols);
        for i in 0..cols {
            for j in 0..cols {
                assert_eq!(qq[i * cols + j], BigInt::from((i == j) as i64));
            }
        }
        for w in s.diag.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "divisibility chain");
        }
        assert!(s.diag.iter().all(|d| d.is_positive()));
    }

    #[test]
    fn small_examples() {
        let a = [2, 4, 4, -6, 6, 12, 10, -4, -16];
        let s = smith_normal_form(3, 3, &a);
        verify(3, 3, &a, &s);
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);

        let a = [2, 0, 0, 3];
        let s = smith_normal_form(2, 2, &a);
        assert_eq!(s.diag, vec![BigInt::from(1), BigInt::from(6)]);
        verify(2, 2, &a, &s);

        let s = smith_normal_form(2, 3, &[0; 6]);
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn overflow_falls_back() {
        let big = i64::MAX / 2;
        let a = [big, big - 1, big - 3, big - 7];
        let s = smith_normal_form(2, 2, &a);
        verify(2, 2, &a, &s);
        let wide = snf_in::<BigInt>(2, 2, &a).unwrap();
        assert_eq!(s.diag, wide.diag);
    }

    proptest! {
        #[test]
        fn snf_certified(rows in 1usize..6, cols in 1usize..6, seed in proptest::collection::vec(-9i64..10, 36)) {
            let a: Vec<i64> = seed[..rows * cols].to_vec();
            let s = smith_normal_form(rows, cols, &a);
            verify(rows, cols, &a, &s);
        }
    }
}
