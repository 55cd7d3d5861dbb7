//! Eigenvalues of complex matrices and tolerance-based clustering.
//!
//! Generic over the real scalar (`f32` or `f64`); everything upstream of this
//! module is exact.

use nalgebra::{ComplexField, DMatrix, RealField, Schur};
use num_complex::Complex;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralError {
    /// The Schur iteration did not converge.
    NoConvergence,
    /// Two distinct clusters are closer than the required gap.
    GapTooSmall { distance: f64 },
}

/// All eigenvalues of a square complex matrix.
pub fn eigenvalues<T: RealField + Copy>(m: DMatrix<Complex<T>>) -> Result<Vec<Complex<T>>, SpectralError> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "square matrix expected");
    match n {
        0 => Ok(Vec::new()),
        1 => Ok(vec![m[(0, 0)]]),
        2 => {
            let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
            let tr = a + d;
            let det = a * d - b * c;
            let two = Complex::new(T::one() + T::one(), T::zero());
            let four = two * two;
            let disc = ComplexField::sqrt(tr * tr - four * det);
            Ok(vec![(tr + disc) / two, (tr - disc) / two])
        }
        _ => {
            let schur = Schur::try_new(m, T::default_epsilon(), 200 * n)
                .ok_or(SpectralError::NoConvergence)?;
            let (_, t) = schur.unpack();
            Ok(t.diagonal().iter().copied().collect())
        }
    }
}

/// Groups eigenvalues whose distance is at most `tol` (single linkage) and
/// returns the cluster sizes, largest first. Fails if two clusters are
/// closer than `gap`.
pub fn cluster_sizes<T: RealField + Copy>(
    eigs: &[Complex<T>],
    tol: T,
    gap: T,
) -> Result<Vec<usize>, SpectralError> {
    let n = eigs.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let dist = |i: usize, j: usize| ComplexField::modulus(eigs[i] - eigs[j]);
    for i in 0..n {
        for j in i + 1..n {
            if dist(i, j) <= tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    let mut closest: Option<T> = None;
    for i in 0..n {
        for j in i + 1..n {
            if roots[i] != roots[j] {
                let d = dist(i, j);
                if closest.is_none_or(|c| d < c) {
                    closest = Some(d);
                }
            }
        }
    }
    if let Some(c) = closest {
        if c < gap {
            return Err(SpectralError::GapTooSmall { distance: nalgebra::try_convert(c).unwrap_or(0.0) });
        }
    }
    let mut counts = std::collections::BTreeMap::new();
    for r in roots {
        *counts.entry(r).or_insert(0usize) += 1;
    }
    let mut sizes: Vec<usize> = counts.into_values().collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(sizes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn small_matrices() {
        let m = DMatrix::from_row_slice(1, 1, &[c(2.0, 1.0)]);
        assert_eq!(eigenvalues(m).unwrap(), vec![c(2.0, 1.0)]);
        // rotation by 90 degrees has eigenvalues +-i
        let m = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let mut e = eigenvalues(m).unwrap();
        e.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((e[0] - c(0.0, -1.0)).norm() < 1e-12 && (e[1] - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn cyclic_shift_spectrum() {
        // the 5-cycle permutation matrix has the fifth roots of unity as eigenvalues
        let n = 5;
        let mut m = DMatrix::from_element(n, n, c(0.0, 0.0));
        for i in 0..n {
            m[((i + 1) % n, i)] = c(1.0, 0.0);
        }
        let e = eigenvalues(m).unwrap();
        for k in 0..n {
            let z = Complex::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64);
            assert!(e.iter().any(|x| (x - z).norm() < 1e-10));
        }
        assert_eq!(cluster_sizes(&e, 1e-8, 1e-4).unwrap(), vec![1; 5]);
    }

    #[test]
    fn clustering() {
        let e = [c(0.0, 0.0), c(1e-12, 0.0), c(1.0, 0.0), c(1.0, 1e-13), c(1.0, -1e-13), c(-1.0, 0.0)];
        assert_eq!(cluster_sizes(&e, 1e-8, 1e-4).unwrap(), vec![3, 2, 1]);
        let close = [c(0.0, 0.0), c(1e-6, 0.0)];
        assert!(matches!(cluster_sizes(&close, 1e-8, 1e-4), Err(SpectralError::GapTooSmall { .. })));
        let e32 = [Complex::new(0.5f32, 0.0), Complex::new(0.5f32, 1e-7)];
        assert_eq!(cluster_sizes(&e32, 1e-5, 1e-3).unwrap(), vec![2]);
    }
}
