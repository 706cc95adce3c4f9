//! Cyclic Jacobi eigensolver for dense symmetric matrices and the spectral
//! summary of a reversible chain.

use crate::error::{Error, Result};
use crate::spectral::dense::DenseMatrix;
use crate::spectral::EIGEN_TOL;

/// Converged when the off-diagonal Frobenius norm is below this fraction of `‖M‖_F`.
const OFF_DIAGONAL_RATIO: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Descending.
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: Vec<Vec<f64>>,
    /// `max_k ‖M v_k - λ_k v_k‖∞`.
    pub residual: f64,
    pub sweeps: usize,
}

/// All eigenpairs of a symmetric matrix.
///
/// The input must be symmetric to within `tol`; it is symmetrized before the
/// sweeps start. Output order is deterministic for a fixed input.
pub fn eigendecompose_symmetric(m: &DenseMatrix, tol: f64) -> Result<EigenDecomposition> {
    let n = m.dim();
    let asym = m.asymmetry();
    if asym > tol {
        return Err(Error::NotSymmetric(asym));
    }
    let mut a = m.combine(0.5, &m.transpose(), 0.5);
    let mut v = DenseMatrix::identity(n);
    let scale = a.frobenius();
    let mut sweeps = 0;
    loop {
        let off: f64 = (0..n)
            .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)] * a[(p, q)])
            .sum::<f64>()
            .sqrt();
        if off <= OFF_DIAGONAL_RATIO * scale || n < 2 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(y, y)].total_cmp(&a[(x, x)]).then(x.cmp(&y)));
    let values: Vec<f64> = order.iter().map(|&k| a[(k, k)]).collect();
    let vectors: Vec<Vec<f64>> = order.iter().map(|&k| (0..n).map(|r| v[(r, k)]).collect()).collect();
    let residual = values
        .iter()
        .zip(&vectors)
        .map(|(&lam, vec)| m.mul_vec(vec).iter().zip(vec).map(|(mv, x)| (mv - lam * x).abs()).fold(0.0, f64::max))
        .fold(0.0, f64::max);
    Ok(EigenDecomposition { values, vectors, residual, sweeps })
}

pub fn eigenvalues_symmetric(m: &DenseMatrix) -> Result<Vec<f64>> {
    Ok(eigendecompose_symmetric(m, EIGEN_TOL)?.values)
}

/// `min eigenvalue >= -tol`.
pub fn psd_check(m: &DenseMatrix, tol: f64) -> Result<bool> {
    let values = eigendecompose_symmetric(m, tol.max(EIGEN_TOL))?.values;
    Ok(values.last().is_none_or(|&x| x >= -tol))
}

/// Spectral summary of a symmetric stochastic matrix.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Spectrum {
    /// All eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    /// Second largest eigenvalue (0 for a single state).
    pub lambda_1: f64,
    /// Smallest eigenvalue.
    pub lambda_min: f64,
    /// `max(λ_1, |λ_min|)`.
    pub lambda_star: f64,
    /// `1 - λ_*`.
    pub gap: f64,
    /// `1 / (1 - λ_*)`.
    pub relaxation: f64,
    /// `1 / (1 - λ_1)`, the quantity the comparison theorems bound.
    pub relaxation_second: f64,
    /// `λ_min = -1` to tolerance.
    pub periodic: bool,
    pub residual_norm: f64,
}

impl Spectrum {
    pub fn from_eigenvalues(eigenvalues: Vec<f64>, residual_norm: f64) -> Self {
        let lambda_1 = eigenvalues.get(1).copied().unwrap_or(0.0);
        let lambda_min = if eigenvalues.len() > 1 { *eigenvalues.last().expect("nonempty") } else { 0.0 };
        let lambda_star = lambda_1.max(lambda_min.abs());
        // Rounding can push a unit eigenvalue just past 1; the relaxation time is then infinite.
        let gap = (1.0 - lambda_star).max(0.0);
        Self {
            lambda_1,
            lambda_min,
            lambda_star,
            gap,
            relaxation: 1.0 / gap,
            relaxation_second: 1.0 / (1.0 - lambda_1).max(0.0),
            periodic: eigenvalues.len() > 1 && lambda_min <= -1.0 + EIGEN_TOL,
            residual_norm,
            eigenvalues,
        }
    }

    /// `λ_1` and `λ_*` differ (a large negative eigenvalue dominates).
    pub fn star_differs(&self) -> bool {
        (self.lambda_star - self.lambda_1).abs() > EIGEN_TOL
    }
}
