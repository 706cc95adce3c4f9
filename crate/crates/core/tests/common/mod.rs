//! Instance families and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use curvemix::{enumerate_states, Error, MarginSpec, StateSpace, DEFAULT_MAX_STATES};

/// All vectors of length `len` with entries in `0..=max`, non-increasing.
pub fn sorted_vectors(len: usize, max: usize) -> Vec<Vec<usize>> {
    fn rec(len: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in (0..=cap).rev() {
            cur.push(x);
            rec(len, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, max, &mut Vec::new(), &mut out);
    out
}

/// All vectors of length `len` with entries in `0..=max`.
pub fn all_vectors(len: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(n, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Square margins with a forbidden diagonal, one representative per orbit
/// of simultaneous row and column relabelling.
pub fn diagonal_margins(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in all_vectors(n, n - 1) {
        for c in all_vectors(n, n - 1) {
            if r.iter().sum::<usize>() != c.iter().sum::<usize>() {
                continue;
            }
            let canon = perms
                .iter()
                .map(|p| {
                    let rr: Vec<usize> = p.iter().map(|&i| r[i]).collect();
                    let cc: Vec<usize> = p.iter().map(|&i| c[i]).collect();
                    (rr, cc)
                })
                .max()
                .expect("at least one permutation");
            if seen.insert(canon.clone()) {
                out.push(canon);
            }
        }
    }
    out
}

/// Enumerates if the instance is valid and feasible.
pub fn try_space(spec: MarginSpec) -> Option<StateSpace> {
    match enumerate_states(Arc::new(spec), DEFAULT_MAX_STATES) {
        Ok(space) => Some(space),
        Err(Error::EmptyStateSpace) => None,
        Err(e) => panic!("unexpected enumeration error: {e}"),
    }
}

/// The desk-scale sweep: every margin pair with `2 <= m, n <= 4`, up to
/// sorting rows and columns, and every square `n <= 4` margin pair with a
/// forbidden diagonal, up to relabelling; only instances with at least two
/// states are kept.
pub fn sweep() -> Vec<StateSpace> {
    let mut out = Vec::new();
    for m in 2..=4 {
        for n in 2..=4 {
            for r in sorted_vectors(m, n) {
                for c in sorted_vectors(n, m) {
                    if r.iter().sum::<usize>() != c.iter().sum::<usize>() {
                        continue;
                    }
                    if let Ok(spec) = MarginSpec::new(r.clone(), c, []) {
                        if let Some(space) = try_space(spec) {
                            if space.len() >= 2 {
                                out.push(space);
                            }
                        }
                    }
                }
            }
        }
    }
    for n in 2..=4 {
        for (r, c) in diagonal_margins(n) {
            if let Ok(spec) = MarginSpec::with_diagonal_forbidden(r, c) {
                if let Some(space) = try_space(spec) {
                    if space.len() >= 2 {
                        out.push(space);
                    }
                }
            }
        }
    }
    out
}

/// State as an integer, bit `i * n + j` for entry `(i, j)`.
pub fn state_mask(space: &StateSpace, idx: usize) -> u64 {
    let a = space.state(idx);
    let n = space.spec().n();
    (0..space.spec().m()).fold(0, |acc, i| acc | a.row_words(i)[0] << (i * n))
}

/// Row and column sums of a mask.
pub fn mask_margins(mask: u64, m: usize, n: usize) -> (Vec<usize>, Vec<usize>) {
    let row_bits = (1u64 << n) - 1;
    let rows = (0..m).map(|i| ((mask >> (i * n)) & row_bits).count_ones() as usize).collect();
    let cols = (0..n).map(|j| (0..m).filter(|&i| mask >> (i * n + j) & 1 == 1).count()).collect();
    (rows, cols)
}

pub fn describe(space: &StateSpace) -> String {
    let spec = space.spec();
    let mut s = format!("r={:?} c={:?}", spec.row_sums(), spec.col_sums());
    if spec.has_diagonal_forbidden() {
        s.push_str(" F=diag");
    } else if !spec.forbidden().is_empty() {
        s.push_str(&format!(" F={:?}", spec.forbidden()));
    }
    s
}

/// A random instance together with one of its matrices: the margins are
/// read off a random 0/1 matrix and some of its zeros are forbidden.
pub fn arb_instance(
    max_m: usize,
    max_n: usize,
) -> impl proptest::strategy::Strategy<Value = (MarginSpec, Vec<Vec<u8>>)> {
    use proptest::prelude::*;
    (1..=max_m, 1..=max_n)
        .prop_flat_map(|(m, n)| {
            (
                Just(m),
                Just(n),
                proptest::collection::vec(any::<bool>(), m * n),
                proptest::collection::vec(proptest::bool::weighted(0.15), m * n),
            )
        })
        .prop_map(|(m, n, cells, forbid)| {
            let rows: Vec<Vec<u8>> = (0..m).map(|i| (0..n).map(|j| cells[i * n + j] as u8).collect()).collect();
            let r = rows.iter().map(|row| row.iter().map(|&x| x as usize).sum()).collect();
            let c = (0..n).map(|j| rows.iter().map(|row| row[j] as usize).sum()).collect();
            let f: Vec<(usize, usize)> =
                (0..m * n).filter(|&b| forbid[b] && !cells[b]).map(|b| (b / n, b % n)).collect();
            (MarginSpec::new(r, c, f).expect("margins of a matrix"), rows)
        })
}
