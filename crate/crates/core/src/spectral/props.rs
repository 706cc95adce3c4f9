//! Numerical checks of the general facts the comparison framework rests on:
//! the eigen-difference identity, laziness, and the Dirichlet-form reading
//! of positive semidefiniteness.

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::spectral::compare::within;
use crate::spectral::dense::DenseMatrix;
use crate::spectral::eigen::{eigendecompose_symmetric, Spectrum};
use crate::spectral::EIGEN_TOL;

/// A random ergodic reversible chain: Metropolis moves with uniform
/// proposals towards random weights. Returns the matrix and its stationary
/// distribution.
pub fn random_reversible_chain(size: usize, rng: &mut RngStream) -> (DenseMatrix, Vec<f64>) {
    assert!(size >= 1);
    let weights: Vec<f64> = (0..size).map(|_| 0.05 + rng.unit_f64()).collect();
    let total: f64 = weights.iter().sum();
    let pi: Vec<f64> = weights.iter().map(|w| w / total).collect();
    let mut x = DenseMatrix::zeros(size);
    if size == 1 {
        x[(0, 0)] = 1.0;
        return (x, pi);
    }
    let propose = 1.0 / (size - 1) as f64;
    for a in 0..size {
        let mut out = 0.0;
        for b in 0..size {
            if a != b {
                let p = propose * (pi[b] / pi[a]).min(1.0);
                x[(a, b)] = p;
                out += p;
            }
        }
        x[(a, a)] = 1.0 - out;
    }
    (x, pi)
}

fn check_reversible(x: &DenseMatrix, pi: &[f64]) -> Result<()> {
    let n = x.dim();
    if pi.len() != n {
        return Err(Error::LengthMismatch(n, pi.len()));
    }
    for a in 0..n {
        for b in a + 1..n {
            let gap = (pi[a] * x[(a, b)] - pi[b] * x[(b, a)]).abs();
            if gap > EIGEN_TOL {
                return Err(Error::NotReversible(format!("detailed balance fails at ({a}, {b}) by {gap:e}")));
            }
        }
    }
    Ok(())
}

/// `D M D⁻¹` with `D = diag(√π)`, symmetric when `M` is reversible w.r.t. `π`.
fn symmetrize(m: &DenseMatrix, pi: &[f64]) -> DenseMatrix {
    DenseMatrix::from_fn(m.dim(), |a, b| pi[a].sqrt() * m[(a, b)] / pi[b].sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenDifferenceVerdict {
    /// `{0} ∪ {α - β(1 - λ_i)}`, descending.
    pub predicted: Vec<f64>,
    /// Spectrum of `α(I - X*) - β(I - X)`, descending.
    pub computed: Vec<f64>,
    pub max_error: f64,
}

/// Compares the spectrum of `α(I - X*) - β(I - X)` with the one predicted
/// from the eigenvalues of `X`.
pub fn eigen_difference_check(x: &DenseMatrix, pi: &[f64], alpha: f64, beta: f64) -> Result<EigenDifferenceVerdict> {
    check_reversible(x, pi)?;
    let n = x.dim();
    let lambdas = eigendecompose_symmetric(&symmetrize(x, pi), EIGEN_TOL)?.values;
    let mut predicted: Vec<f64> =
        std::iter::once(0.0).chain(lambdas.iter().skip(1).map(|l| alpha - beta * (1.0 - l))).collect();
    predicted.sort_by(|a, b| b.total_cmp(a));

    let m = DenseMatrix::from_fn(n, |a, b| {
        let id = if a == b { 1.0 } else { 0.0 };
        alpha * (id - pi[b]) - beta * (id - x[(a, b)])
    });
    let computed = eigendecompose_symmetric(&symmetrize(&m, pi), EIGEN_TOL)?.values;
    let max_error = predicted.iter().zip(&computed).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    Ok(EigenDifferenceVerdict { predicted, computed, max_error })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LazyVerdict {
    pub delta: f64,
    pub lambda_1: f64,
    pub lazy_lambda_star: f64,
    /// `(1 - δ) + δ λ_1`.
    pub predicted_lambda_star: f64,
    pub lazy_relaxation: f64,
    /// `(1/δ) (1 - λ_*)⁻¹` of the original chain.
    pub bound: f64,
    pub pass: bool,
}

/// `(1 - λ_{*,δ})⁻¹ <= (1/δ)(1 - λ_*)⁻¹` and `λ_{*,δ} = (1 - δ) + δ λ_1` for
/// the δ-lazy version of a symmetric stochastic `p`.
pub fn lazy_relaxation_check(p: &DenseMatrix, delta: f64) -> Result<LazyVerdict> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::BadDelta(delta.to_string()));
    }
    let base = Spectrum::from_eigenvalues(eigendecompose_symmetric(p, EIGEN_TOL)?.values, 0.0);
    let lazy_matrix = DenseMatrix::identity(p.dim()).combine(1.0 - delta, p, delta);
    let lazy = Spectrum::from_eigenvalues(eigendecompose_symmetric(&lazy_matrix, EIGEN_TOL)?.values, 0.0);
    if p.dim() > 1 && lazy.lambda_min < -EIGEN_TOL {
        return Err(Error::NegativeLazySpectrum(lazy.lambda_min));
    }
    let predicted = if p.dim() > 1 { (1.0 - delta) + delta * base.lambda_1 } else { 0.0 };
    let bound = base.relaxation / delta;
    let pass = (lazy.lambda_star - predicted).abs() <= EIGEN_TOL && within(lazy.relaxation, bound);
    Ok(LazyVerdict {
        delta,
        lambda_1: base.lambda_1,
        lazy_lambda_star: lazy.lambda_star,
        predicted_lambda_star: predicted,
        lazy_relaxation: lazy.relaxation,
        bound,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirichletVerdict {
    /// `α(I - P) - (I - P̃) ⪰ 0`.
    pub psd: bool,
    /// Every tested `f` satisfied `fᵀ(I - P̃)f <= α fᵀ(I - P)f`.
    pub forms_hold: bool,
    /// A violating `f`, when one was found.
    pub counterexample: Option<Vec<f64>>,
    pub trials: usize,
}

/// Cross-checks the Dirichlet-form inequality `E_P̃(f) <= α E_P(f)` over
/// random `f` against the PSD test of `α(I - P) - (I - P̃)`. The eigenvector
/// of the smallest eigenvalue is always among the trials, so a failing PSD
/// test is always witnessed.
pub fn dirichlet_equivalence_check(
    p: &DenseMatrix,
    p_tilde: &DenseMatrix,
    alpha: f64,
    trials: usize,
    rng: &mut RngStream,
) -> Result<DirichletVerdict> {
    let n = p.dim();
    if p_tilde.dim() != n {
        return Err(Error::LengthMismatch(n, p_tilde.dim()));
    }
    let id = DenseMatrix::identity(n);
    let form_p = id.combine(1.0, p, -1.0);
    let form_t = id.combine(1.0, p_tilde, -1.0);
    let diff = form_p.combine(alpha, &form_t, -1.0);
    let e = eigendecompose_symmetric(&diff, EIGEN_TOL)?;
    let psd = e.values.last().is_none_or(|&x| x >= -EIGEN_TOL);

    let mut candidates: Vec<Vec<f64>> = e.vectors.last().cloned().into_iter().collect();
    for _ in 0..trials {
        let f: Vec<f64> = (0..n).map(|_| 2.0 * rng.unit_f64() - 1.0).collect();
        let norm = f.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            candidates.push(f.iter().map(|x| x / norm).collect());
        }
    }
    let counterexample =
        candidates.into_iter().find(|f| form_t.quadratic_form(f) > alpha * form_p.quadratic_form(f) + EIGEN_TOL);
    let forms_hold = counterexample.is_none();
    if forms_hold != psd {
        return Err(Error::InconsistentVerdict(format!(
            "PSD test says {psd}, Dirichlet forms say {forms_hold} (min eigenvalue {:?})",
            e.values.last()
        )));
    }
    Ok(DirichletVerdict { psd, forms_hold, counterexample, trials })
}
