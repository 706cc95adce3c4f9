//! Spectra of the per-class blocks behind k-Curveball: an average of
//! `k` single-pair resampling matrices acting on a product of classes.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::rational::Rational;
use crate::spectral::dense::DenseMatrix;
use crate::statespace::{Neighborhood, StateSpace};

/// `(1/k) Σ_i I ⊗ .. ⊗ Q_i ⊗ .. ⊗ I` with `Q_i = J / w_i`, the uniform
/// resampling matrix on a set of size `w_i`.
pub fn tensor_block_matrix(w_sizes: &[usize]) -> DenseMatrix {
    let k = w_sizes.len();
    let total: usize = w_sizes.iter().product();
    let mut out = DenseMatrix::zeros(total);
    for i in 0..k {
        let mut term = DenseMatrix::identity(1);
        for (j, &w) in w_sizes.iter().enumerate() {
            let factor = if i == j { DenseMatrix::from_fn(w, |_, _| 1.0 / w as f64) } else { DenseMatrix::identity(w) };
            term = term.kron(&factor);
        }
        out = out.combine(1.0, &term, 1.0 / k as f64);
    }
    out
}

/// The eigenvalue multiset of [`tensor_block_matrix`] in closed form.
///
/// Each `Q_i` has spectrum `{1, 0 × (w_i - 1)}`, so an eigenvalue is `t / k`
/// where `t` counts the factors contributing their top eigenvalue; the
/// multiplicity of `t / k` is the coefficient of `x^t` in `Π (x + w_i - 1)`.
/// Descending by value.
pub fn tensor_block_spectrum(w_sizes: &[usize]) -> Vec<(Rational, u64)> {
    let k = w_sizes.len();
    let mut poly = vec![1u64];
    for &w in w_sizes {
        let mut next = vec![0u64; poly.len() + 1];
        for (t, &c) in poly.iter().enumerate() {
            next[t + 1] += c;
            next[t] += c * (w as u64 - 1);
        }
        poly = next;
    }
    let mut out: BTreeMap<Rational, u64> = BTreeMap::new();
    for (t, &mult) in poly.iter().enumerate() {
        if mult > 0 {
            *out.entry(Rational::new(BigInt::from(t), BigInt::from(k.max(1)))).or_default() += mult;
        }
    }
    out.into_iter().rev().collect()
}

/// The block of the averaged single-pair chain on one κ-class, built from
/// the actual states: from `x`, pick one of the `k` pairs and resample
/// uniformly among the class members that agree with `x` off that pair.
pub fn kappa_block_matrix(space: &StateSpace, class: &Neighborhood) -> DenseMatrix {
    let k = class.pairs.len();
    let wpr = space.spec().words_per_row();
    let rows_equal_except = |x: usize, y: usize, pair: (usize, usize)| {
        let (a, b) = (space.state(x).words(), space.state(y).words());
        (0..space.spec().m())
            .filter(|&r| r != pair.0 && r != pair.1)
            .all(|r| a[r * wpr..(r + 1) * wpr] == b[r * wpr..(r + 1) * wpr])
    };
    let size = class.size();
    let mut out = DenseMatrix::zeros(size);
    for &pair in &class.pairs {
        for a in 0..size {
            let reach: Vec<usize> =
                (0..size).filter(|&b| rows_equal_except(class.members[a], class.members[b], pair)).collect();
            let w = 1.0 / (k as f64 * reach.len() as f64);
            for b in reach {
                out[(a, b)] += w;
            }
        }
    }
    out
}

/// Expands a closed-form multiset into a descending list of floats.
pub fn expand_spectrum(pairs: &[(Rational, u64)]) -> Vec<f64> {
    pairs.iter().flat_map(|(v, m)| std::iter::repeat_n(crate::rational::to_f64(v), *m as usize)).collect()
}
