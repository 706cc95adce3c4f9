//! Exact evolution of distributions, total variation distance and mixing
//! times, checked against the spectral bounds.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::samplers::{run_chain_with, ChainSpec};
use crate::spectral::{build_transition, spectral_report, Spectrum, TransitionMatrix};
use crate::statespace::StateSpace;

/// Per-step renormalization keeps drift in the total mass below this.
const MASS_DRIFT: f64 = 1e-12;

/// Sparse double-precision rows of a transition matrix.
#[derive(Debug, Clone)]
pub struct SparseChain {
    rows: Vec<Vec<(usize, f64)>>,
}

impl SparseChain {
    pub fn new(p: &TransitionMatrix) -> Self {
        Self { rows: p.to_sparse_f64() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `vᵀ P`, renormalized.
    pub fn step(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; v.len()];
        for (x, &mass) in v.iter().enumerate() {
            if mass != 0.0 {
                for &(y, p) in &self.rows[x] {
                    out[y] += mass * p;
                }
            }
        }
        let total: f64 = out.iter().sum();
        if (total - 1.0).abs() > MASS_DRIFT / 10.0 {
            out.iter_mut().for_each(|p| *p /= total);
        }
        out
    }
}

/// Row `x` of `P^t`.
pub fn distribution_at(p: &TransitionMatrix, x: usize, t: usize) -> Vec<f64> {
    let chain = SparseChain::new(p);
    let mut v = vec![0.0; p.dim()];
    v[x] = 1.0;
    for _ in 0..t {
        v = chain.step(&v);
    }
    v
}

/// `½ Σ |p - q|`.
pub fn tv_distance(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch(p.len(), q.len()));
    }
    Ok(0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>())
}

fn tv_to_uniform(v: &[f64]) -> f64 {
    let u = 1.0 / v.len() as f64;
    0.5 * v.iter().map(|a| (a - u).abs()).sum::<f64>()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixingReport {
    pub epsilon: f64,
    pub states: usize,
    pub tau: usize,
    pub lambda_star: f64,
    /// `½ λ_*/(1 - λ_*) ln(1/(2ε))`.
    pub lower_bound: f64,
    /// `(1 - λ_*)⁻¹ (ln N + ln(1/ε))`.
    pub upper_bound: f64,
    /// Worst-case distance `d(t) = max_x Δ_x(t)` for `t = 0..=tau`.
    pub curve: Vec<f64>,
    /// `d(t)` never increased along the scan.
    pub monotone: bool,
    pub horizon: usize,
}

impl MixingReport {
    /// `⌈lower⌉ - 1 <= τ <= upper`.
    pub fn bounds_hold(&self) -> bool {
        let lower_ok = self.lower_bound <= 0.0 || self.tau as f64 >= self.lower_bound.ceil() - 1.0;
        lower_ok && self.tau as f64 <= self.upper_bound * (1.0 + 1e-9)
    }
}

/// `½ λ/(1 - λ) ln(1/(2ε))` and `(1 - λ)⁻¹ (ln N + ln(1/ε))`.
pub fn spectral_bounds(lambda_star: f64, states: usize, epsilon: f64) -> (f64, f64) {
    let rel = 1.0 / (1.0 - lambda_star);
    let lower = 0.5 * lambda_star * rel * (1.0 / (2.0 * epsilon)).ln();
    let upper = rel * ((states as f64).ln() + (1.0 / epsilon).ln());
    (lower, upper)
}

/// `10 ⌈(1 - λ_*)⁻¹ ln(4N)⌉`.
pub fn default_horizon(s: &Spectrum, states: usize) -> usize {
    (10.0 * (s.relaxation * (4.0 * states as f64).ln()).ceil()).max(1.0) as usize
}

fn support_components(p: &TransitionMatrix) -> usize {
    let n = p.dim();
    let mut seen = vec![false; n];
    let mut count = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in p.row(x).keys() {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    count
}

/// Smallest `t` with `max_x Δ_x(t) <= ε`.
///
/// For an ergodic chain `d(t)` is non-increasing, so the first time the scan
/// reaches `ε` it stays there; the scan checks that monotonicity as it goes.
pub fn mixing_time(p: &TransitionMatrix, epsilon: f64, horizon: Option<usize>) -> Result<MixingReport> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::BadParameter(format!("epsilon must be positive (got {epsilon})")));
    }
    let n = p.dim();
    let spectrum = spectral_report(p)?;
    let (lower_bound, upper_bound) = if n > 1 { spectral_bounds(spectrum.lambda_star, n, epsilon) } else { (0.0, 0.0) };
    let mut report = MixingReport {
        epsilon,
        states: n,
        tau: 0,
        lambda_star: spectrum.lambda_star,
        lower_bound,
        upper_bound,
        curve: vec![if n > 1 { 1.0 - 1.0 / n as f64 } else { 0.0 }],
        monotone: true,
        horizon: 0,
    };
    if n == 1 || epsilon >= 1.0 {
        return Ok(report);
    }
    let components = support_components(p);
    if components > 1 {
        return Err(Error::Reducible(components));
    }
    if spectrum.periodic {
        return Err(Error::PeriodicChain(spectrum.lambda_min));
    }
    let horizon = horizon.unwrap_or_else(|| default_horizon(&spectrum, n));
    report.horizon = horizon;
    let chain = SparseChain::new(p);
    let mut rows: Vec<Vec<f64>> = (0..n)
        .map(|x| {
            let mut v = vec![0.0; n];
            v[x] = 1.0;
            v
        })
        .collect();
    let mut prev = report.curve[0];
    for t in 1..=horizon {
        rows = rows.par_iter().map(|v| chain.step(v)).collect();
        let d = rows.iter().map(|v| tv_to_uniform(v)).fold(0.0, f64::max);
        if d > prev + 1e-12 {
            report.monotone = false;
        }
        prev = d;
        report.curve.push(d);
        if d <= epsilon {
            report.tau = t;
            return Ok(report);
        }
    }
    Err(Error::HorizonExceeded(horizon))
}

/// Mixing time together with the check `⌈lower⌉ - 1 <= τ(ε) <= upper`.
pub fn check_mixing_bounds(p: &TransitionMatrix, epsilon: f64) -> Result<MixingReport> {
    let report = mixing_time(p, epsilon, None)?;
    if !report.bounds_hold() {
        return Err(Error::BoundViolated(format!(
            "tau({}) = {} outside [{}, {}] with lambda_* = {} on {} states",
            report.epsilon, report.tau, report.lower_bound, report.upper_bound, report.lambda_star, report.states
        )));
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalReport {
    pub steps: u64,
    pub runs: usize,
    /// Endpoint counts by state index.
    pub histogram: Vec<u64>,
    /// Row `start` of `P^steps`.
    pub exact: Vec<f64>,
    pub tv_to_exact: f64,
    pub tv_to_uniform: f64,
    /// Pearson statistic of the histogram against the uniform distribution.
    pub chi_square: f64,
}

/// Runs `runs` independent trajectories of `steps` steps from state `start`
/// (run `i` on stream `i` of `seed`) and compares the endpoints with the
/// exact distribution.
pub fn empirical_distribution(
    space: &StateSpace,
    chain: &ChainSpec,
    start: usize,
    steps: u64,
    runs: usize,
    seed: u64,
) -> Result<EmpiricalReport> {
    if start >= space.len() {
        return Err(Error::IndexOutOfRange { index: start, limit: space.len() });
    }
    chain.validate(space.spec())?;
    let p = build_transition(space, chain)?;
    let a0 = space.state(start);
    let ends: Vec<usize> = (0..runs)
        .into_par_iter()
        .map(|i| {
            let mut rng = RngStream::new(seed, i as u64);
            let run = run_chain_with(a0, chain, steps, &mut rng, None)?;
            space.index_of(&run.last).ok_or_else(|| Error::NotInStateSpace(run.last.canonical_hex()))
        })
        .collect::<Result<_>>()?;
    let mut histogram = vec![0u64; space.len()];
    for e in ends {
        histogram[e] += 1;
    }
    let freq: Vec<f64> = histogram.iter().map(|&c| c as f64 / runs.max(1) as f64).collect();
    let exact = distribution_at(&p, start, steps as usize);
    let expected = runs as f64 / space.len() as f64;
    let chi_square = histogram.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    Ok(EmpiricalReport {
        steps,
        runs,
        tv_to_exact: tv_distance(&freq, &exact)?,
        tv_to_uniform: tv_to_uniform(&freq),
        histogram,
        exact,
        chi_square,
    })
}
