//! Minimal dense symmetric linear algebra: storage, Cholesky, Jacobi
//! eigenvalues. Self-contained so everything stays generic over the scalar.

use crate::real::Real;

/// Dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> SquareMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![T::zero(); n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Largest absolute difference from the transpose.
    pub fn asymmetry(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    pub fn trace(&self) -> T {
        (0..self.n).map(|i| self[(i, i)]).fold(T::zero(), |acc, v| acc + v)
    }
}

impl<T> std::ops::Index<(usize, usize)> for SquareMatrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for SquareMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

/// Why a Cholesky attempt was abandoned.
#[derive(Clone, Copy, Debug)]
pub enum CholeskyFailure<T> {
    /// A pivot was negative beyond rounding tolerance.
    NegativePivot { index: usize, pivot: T },
    /// A pivot was (numerically) zero but its column was not, so the matrix
    /// is not positive semidefinite within tolerance.
    InconsistentZeroPivot { index: usize, residual: T },
}

/// Lower-triangular Cholesky factor of a symmetric positive semidefinite
/// matrix.
///
/// Exact zero rows (zero diagonal with zero column, e.g. the time-zero row of
/// a covariance matrix) produce exact zero rows in the factor, so degenerate
/// coordinates stay exactly zero in samples.
pub fn cholesky_lower<T: Real>(a: &SquareMatrix<T>) -> Result<SquareMatrix<T>, CholeskyFailure<T>> {
    let n = a.n();
    let mut l = SquareMatrix::zeros(n);
    // Pivot tolerance relative to the largest diagonal entry.
    let diag_scale = (0..n).fold(T::zero(), |acc, i| acc.max(a[(i, i)].abs()));
    let tol = T::epsilon() * diag_scale * T::cast_usize(n.max(1));
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d = d - l[(j, k)] * l[(j, k)];
        }
        if d > tol {
            let ljj = d.sqrt();
            l[(j, j)] = ljj;
            for i in (j + 1)..n {
                let mut s = a[(i, j)];
                for k in 0..j {
                    s = s - l[(i, k)] * l[(j, k)];
                }
                l[(i, j)] = s / ljj;
            }
        } else if d >= -tol {
            // Semidefinite direction: the entire column must vanish too.
            l[(j, j)] = T::zero();
            for i in (j + 1)..n {
                let mut s = a[(i, j)];
                for k in 0..j {
                    s = s - l[(i, k)] * l[(j, k)];
                }
                if s.abs() > tol.max(T::epsilon() * diag_scale) {
                    return Err(CholeskyFailure::InconsistentZeroPivot { index: j, residual: s });
                }
            }
        } else {
            return Err(CholeskyFailure::NegativePivot { index: j, pivot: d });
        }
    }
    Ok(l)
}

/// All eigenvalues of a symmetric matrix by the cyclic Jacobi method,
/// ascending. Intended for moderate sizes (diagnostics and tests).
pub fn symmetric_eigenvalues<T: Real>(a: &SquareMatrix<T>) -> Vec<T> {
    let n = a.n();
    if n == 0 {
        return Vec::new();
    }
    let mut m = a.clone();
    let half = T::cast(0.5);
    for _sweep in 0..64 {
        let mut off = T::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                off = off + m[(i, j)] * m[(i, j)];
            }
        }
        if off <= T::epsilon() * T::epsilon() * m.trace().abs().max(T::one()) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let theta = half * (m[(q, q)] - m[(p, p)]) / apq;
                // tan of the rotation angle, the stable small-angle root.
                let t = {
                    let sign = if theta >= T::zero() { T::one() } else { -T::one() };
                    sign / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let cos = T::one() / (t * t + T::one()).sqrt();
                let sin = t * cos;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = cos * mkp - sin * mkq;
                    m[(k, q)] = sin * mkp + cos * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = cos * mpk - sin * mqk;
                    m[(q, k)] = sin * mpk + cos * mqk;
                }
            }
        }
    }
    let mut eig: Vec<T> = (0..n).map(|i| m[(i, i)]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eig
}
