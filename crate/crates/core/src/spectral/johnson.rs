//! Closed-form spectra of Johnson graphs `J(p, q)`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rational::{binomial_u64, Rational};
use crate::spectral::dense::DenseMatrix;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct JohnsonSpectrum {
    pub p: usize,
    pub q: usize,
    /// `(eigenvalue, multiplicity)`, eigenvalues strictly decreasing.
    pub pairs: Vec<(i64, u64)>,
    /// `-(p + 1)² / 4` as `(numerator, denominator)`.
    pub min_bound: (i64, i64),
}

impl JohnsonSpectrum {
    pub fn vertex_count(&self) -> u64 {
        binomial_u64(self.p as u64, self.q as u64)
    }

    /// Every eigenvalue repeated by multiplicity, descending.
    pub fn expanded(&self) -> Vec<f64> {
        self.pairs.iter().flat_map(|&(value, mult)| std::iter::repeat_n(value as f64, mult as usize)).collect()
    }

    pub fn min_eigenvalue(&self) -> i64 {
        self.pairs.last().map(|p| p.0).unwrap_or(0)
    }
}

/// `(q - i)(p - q - i) - i` with multiplicity `C(p, i) - C(p, i - 1)`.
///
/// `i` runs up to `min(q, p - q)`: past that the multiplicities turn
/// non-positive, since `J(p, q)` and `J(p, p - q)` are the same graph.
pub fn johnson_spectrum(p: usize, q: usize) -> Result<JohnsonSpectrum> {
    if q == 0 || q > p {
        return Err(Error::BadPQ { p, q });
    }
    let top = q.min(p - q);
    let (pi, qi) = (p as i64, q as i64);
    let pairs = (0..=top)
        .map(|i| {
            let ii = i as i64;
            let value = (qi - ii) * (pi - qi - ii) - ii;
            let below = if i == 0 { 0 } else { binomial_u64(p as u64, i as u64 - 1) };
            (value, binomial_u64(p as u64, i as u64) - below)
        })
        .collect();
    let b = johnson_min_bound(p);
    let min_bound = (i64::try_from(b.numer()).expect("small"), i64::try_from(b.denom()).expect("small"));
    Ok(JohnsonSpectrum { p, q, pairs, min_bound })
}

/// `-(p + 1)² / 4`, the minimum of `x (x - (p + 1))` over the reals.
pub fn johnson_min_bound(p: usize) -> Rational {
    let s = BigInt::from(p + 1);
    -Rational::new(&s * &s, BigInt::from(4))
}

/// `μ_i - q (p - q) = i (i - (p + 1))`.
pub fn johnson_shift(p: usize, i: usize) -> i64 {
    let (p, i) = (p as i64, i as i64);
    i * (i - (p + 1))
}

/// The `q`-subsets of `{0..p}` in lexicographic order and the adjacency
/// matrix joining subsets that share `q - 1` elements.
pub fn johnson_adjacency(p: usize, q: usize) -> Result<(Vec<Vec<usize>>, DenseMatrix)> {
    if q == 0 || q > p {
        return Err(Error::BadPQ { p, q });
    }
    let mut subsets = Vec::new();
    let mut cur = Vec::with_capacity(q);
    fn rec(p: usize, q: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for x in start..p {
            cur.push(x);
            rec(p, q, x + 1, cur, out);
            cur.pop();
        }
    }
    rec(p, q, 0, &mut cur, &mut subsets);
    let adj = DenseMatrix::from_fn(subsets.len(), |a, b| {
        let common = subsets[a].iter().filter(|x| subsets[b].binary_search(x).is_ok()).count();
        if common + 1 == q {
            1.0
        } else {
            0.0
        }
    });
    Ok((subsets, adj))
}
