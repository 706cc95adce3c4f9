//! Exact transition matrices on an enumerated state space.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;
use crate::rational::{binomial, fraction_string, from_small, to_f64, Rational};
use crate::samplers::{ChainKind, ChainSpec};
use crate::spectral::dense::DenseMatrix;
use crate::statespace::{
    count_disjoint_pair_collections, disjoint_pair_collections, kappa_partition, pair_switches, row_pairs,
    Neighborhood, StateSpace,
};

/// k-Curveball matrices sum over every collection of disjoint pairs; beyond
/// this many rows that enumeration is too large to be worth doing exactly.
pub const MAX_KCURVEBALL_ROWS: usize = 8;

/// A square matrix of exact rationals stored by rows, zeros omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    chain: Option<ChainSpec>,
    rows: Vec<BTreeMap<usize, Rational>>,
}

fn add_entry(row: &mut BTreeMap<usize, Rational>, col: usize, value: Rational) {
    if value.is_zero() {
        return;
    }
    let slot = row.entry(col).or_insert_with(Rational::zero);
    *slot += value;
    if slot.is_zero() {
        row.remove(&col);
    }
}

impl TransitionMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { chain: None, rows: vec![BTreeMap::new(); n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for (i, row) in m.rows.iter_mut().enumerate() {
            row.insert(i, Rational::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// The chain this matrix was built for, if any.
    pub fn chain(&self) -> Option<&ChainSpec> {
        self.chain.as_ref()
    }

    pub fn with_chain(mut self, chain: ChainSpec) -> Self {
        self.chain = Some(chain);
        self
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.rows[i].get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero entries of row `i`, by column.
    pub fn row(&self, i: usize) -> &BTreeMap<usize, Rational> {
        &self.rows[i]
    }

    pub fn add(&mut self, i: usize, j: usize, value: Rational) {
        add_entry(&mut self.rows[i], j, value);
    }

    pub fn nonzeros(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_stochastic(&self) -> bool {
        self.rows.iter().all(|row| {
            row.values().all(|v| !v.is_negative()) && row.values().fold(Rational::zero(), |acc, v| acc + v).is_one()
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, row)| row.iter().all(|(&j, v)| self.rows[j].get(&i) == Some(v)))
    }

    /// Smallest diagonal entry.
    pub fn min_holding(&self) -> Rational {
        (0..self.dim()).map(|i| self.get(i, i)).min().unwrap_or_else(Rational::one)
    }

    /// `(1 - delta) I + delta P`.
    pub fn lazy(&self, delta: &Rational) -> TransitionMatrix {
        let hold = Rational::one() - delta;
        let mut out = TransitionMatrix::zeros(self.dim());
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, v) in row {
                out.add(i, j, v * delta);
            }
            out.add(i, i, hold.clone());
        }
        out.chain = self.chain;
        out
    }

    /// `a * self + b * other`, untagged.
    pub fn combine(&self, a: &Rational, other: &TransitionMatrix, b: &Rational) -> TransitionMatrix {
        assert_eq!(self.dim(), other.dim());
        let mut out = TransitionMatrix::zeros(self.dim());
        for i in 0..self.dim() {
            for (&j, v) in &self.rows[i] {
                out.add(i, j, v * a);
            }
            for (&j, v) in &other.rows[i] {
                out.add(i, j, v * b);
            }
        }
        out
    }

    /// First entry, in row-major order, where the two matrices differ.
    pub fn first_difference(&self, other: &TransitionMatrix) -> Option<(usize, usize, Rational, Rational)> {
        if self.dim() != other.dim() {
            return Some((self.dim().min(other.dim()), 0, Rational::zero(), Rational::zero()));
        }
        for i in 0..self.dim() {
            if self.rows[i] == other.rows[i] {
                continue;
            }
            let cols: std::collections::BTreeSet<usize> =
                self.rows[i].keys().chain(other.rows[i].keys()).copied().collect();
            for j in cols {
                let (x, y) = (self.get(i, j), other.get(i, j));
                if x != y {
                    return Some((i, j, x, y));
                }
            }
        }
        None
    }

    /// Exact equality, reporting the first differing entry.
    pub fn assert_equal(&self, other: &TransitionMatrix) -> Result<()> {
        match self.first_difference(other) {
            None => Ok(()),
            Some((row, col, expected, got)) => Err(Error::ReconstructionMismatch {
                row,
                col,
                expected: fraction_string(&expected),
                got: fraction_string(&got),
            }),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.dim());
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, v) in row {
                d[(i, j)] = to_f64(v);
            }
        }
        d
    }

    /// Double-precision rows for repeated vector products.
    pub fn to_sparse_f64(&self) -> Vec<Vec<(usize, f64)>> {
        self.rows.iter().map(|row| row.iter().map(|(&j, v)| (j, to_f64(v))).collect()).collect()
    }

    /// Principal submatrix on the given (sorted) states; a chain restricted to
    /// one of its closed classes.
    pub fn restrict(&self, states: &[usize]) -> TransitionMatrix {
        let pos: BTreeMap<usize, usize> = states.iter().enumerate().map(|(a, &s)| (s, a)).collect();
        let mut out = TransitionMatrix::zeros(states.len());
        for (a, &s) in states.iter().enumerate() {
            for (j, v) in &self.rows[s] {
                if let Some(&b) = pos.get(j) {
                    out.add(a, b, v.clone());
                }
            }
        }
        out.chain = self.chain;
        out
    }

    /// Every entry as `p/q`, one row per line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if j > 0 {
                    out.push(',');
                }
                let v = self.get(i, j);
                let _ = write!(out, "{}/{}", v.numer(), v.denom());
            }
            out.push('\n');
        }
        out
    }
}

fn inverse(x: &BigInt) -> Rational {
    Rational::new(BigInt::one(), x.clone())
}

/// All `size`-subsets of `items`, in lexicographic order.
fn subsets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for p in start..items.len() {
            if items.len() - p < size - cur.len() {
                break;
            }
            cur.push(items[p]);
            rec(items, size, p + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, size, 0, &mut Vec::new(), &mut out);
    out
}

fn lookup(space: &StateSpace, b: &BinaryMatrix) -> usize {
    space.index_of(b).expect("moves stay inside the state space")
}

/// Off-diagonal `weight` per switch-adjacent neighbour, rest on the diagonal.
fn switch_matrix(space: &StateSpace, weight: &Rational) -> TransitionMatrix {
    let pairs = row_pairs(space.spec().m());
    let mut p = TransitionMatrix::zeros(space.len());
    for (x, a) in space.states().iter().enumerate() {
        let mut moves = 0u64;
        for &(i, j) in &pairs {
            for s in pair_switches(a, i, j) {
                let b = a.apply_switch(s.i, s.j, s.k, s.l).expect("valid switch");
                p.add(x, lookup(space, &b), weight.clone());
                moves += 1;
            }
        }
        p.add(x, x, Rational::one() - weight * Rational::from_integer(BigInt::from(moves)));
    }
    p
}

fn check_assumption(space: &StateSpace, gamma: &Rational) -> Result<()> {
    let pairs = row_pairs(space.spec().m());
    for a in space.states() {
        for &(i, j) in &pairs {
            let (u, l) = a.pair_counts(i, j);
            let value = gamma * Rational::from_integer(BigInt::from(u * l));
            if value >= Rational::one() {
                return Err(Error::AssumptionViolated { i, j, value: fraction_string(&value) });
            }
        }
    }
    Ok(())
}

/// The exact transition matrix of `chain` on `space`.
pub fn build_transition(space: &StateSpace, chain: &ChainSpec) -> Result<TransitionMatrix> {
    let spec = space.spec();
    chain.validate(spec)?;
    let m = spec.m();
    let base = if m < 2 {
        TransitionMatrix::identity(space.len())
    } else {
        let pair_weight = inverse(&binomial(m as u64, 2));
        match chain.kind {
            ChainKind::GammaSwitch(_) | ChainKind::KtvSwitch => {
                let gamma = from_small(chain.switch_gamma(spec).expect("switch chain has a gamma"));
                check_assumption(space, &gamma)?;
                switch_matrix(space, &(gamma * pair_weight))
            }
            ChainKind::EdgeSwitch => match binomial(spec.rho_total() as u64, 2) {
                e if e.is_zero() => TransitionMatrix::identity(space.len()),
                e => switch_matrix(space, &inverse(&e)),
            },
            ChainKind::Curveball => curveball_matrix(space, &pair_weight),
            ChainKind::KCurveball(k) => k_curveball_matrix(space, k)?,
        }
    };
    let p = match chain.laziness {
        Some(delta) => base.lazy(&from_small(delta)),
        None => base,
    };
    Ok(p.with_chain(*chain))
}

/// Curveball straight from its move: every placement of the trade columns
/// on every row pair.
fn curveball_matrix(space: &StateSpace, pair_weight: &Rational) -> TransitionMatrix {
    let pairs = row_pairs(space.spec().m());
    let mut p = TransitionMatrix::zeros(space.len());
    for (x, a) in space.states().iter().enumerate() {
        for &(i, j) in &pairs {
            let stats = a.row_pair_stats(i, j).expect("valid pair");
            let placements = subsets(&stats.trade_columns, stats.u());
            let w = pair_weight / Rational::from_integer(BigInt::from(placements.len()));
            for chosen in placements {
                let b = a.apply_trade(i, j, &chosen).expect("placement of the trade columns");
                p.add(x, lookup(space, &b), w.clone());
            }
        }
    }
    p
}

fn k_curveball_matrix(space: &StateSpace, k: usize) -> Result<TransitionMatrix> {
    let m = space.spec().m();
    if m > MAX_KCURVEBALL_ROWS {
        return Err(Error::BadParameter(format!(
            "exact k-Curveball matrices are limited to {MAX_KCURVEBALL_ROWS} rows"
        )));
    }
    let collections = disjoint_pair_collections(m, k);
    debug_assert_eq!(collections.len() as u64, count_disjoint_pair_collections(m, k));
    let mut partitions = Vec::with_capacity(collections.len());
    for kappa in &collections {
        partitions.push(kappa_partition(space, kappa)?);
    }
    Ok(build_heat_bath(space, &partitions))
}

/// `Σ_a |partitions|⁻¹ Σ_R 1·σ_R`: from a state, pick a partition uniformly
/// and resample uniformly inside the class containing the state.
///
/// With one partition per row pair this is the heat-bath variant of the
/// switch chains; with one per disjoint-pair collection it is k-Curveball.
pub fn build_heat_bath(space: &StateSpace, partitions: &[Vec<Neighborhood>]) -> TransitionMatrix {
    if partitions.is_empty() {
        return TransitionMatrix::identity(space.len());
    }
    let weight = Rational::new(BigInt::one(), BigInt::from(partitions.len()));
    let mut p = TransitionMatrix::zeros(space.len());
    for partition in partitions {
        for class in partition {
            let w = &weight / Rational::from_integer(BigInt::from(class.size()));
            for &x in &class.members {
                for &y in &class.members {
                    p.add(x, y, w.clone());
                }
            }
        }
    }
    p
}

/// One block of the switch decomposition: the class `N` of a row pair with
/// matrix `(1 - u l γ) I_N + γ M(H_N)`.
#[derive(Debug, Clone)]
pub struct SwitchBlock {
    pub pair: (usize, usize),
    pub members: Vec<usize>,
    pub u: usize,
    pub l: usize,
    /// `1 - u l γ`; negative for edge-switch blocks with many trade columns.
    pub holding: Rational,
    /// Switch adjacency inside the class, as pairs of positions in `members`.
    pub adjacency: Vec<(usize, usize)>,
    pub gamma: Rational,
}

impl SwitchBlock {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// The block as a dense `|N| x |N|` matrix.
    pub fn dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::identity(self.size()).scale(to_f64(&self.holding));
        let g = to_f64(&self.gamma);
        for &(a, b) in &self.adjacency {
            d[(a, b)] = g;
        }
        d
    }

    /// `M(H_N)` alone.
    pub fn adjacency_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.size());
        for &(a, b) in &self.adjacency {
            d[(a, b)] = 1.0;
        }
        d
    }

    /// Row sums of the exact block, which the assumption makes stochastic.
    pub fn row_sums(&self) -> Vec<Rational> {
        let mut sums = vec![self.holding.clone(); self.size()];
        for &(a, _) in &self.adjacency {
            sums[a] += &self.gamma;
        }
        sums
    }
}

#[derive(Debug, Clone)]
pub struct SwitchDecomposition {
    pub gamma: Rational,
    pub blocks: Vec<SwitchBlock>,
    /// The switch matrix the blocks were summed against.
    pub matrix: TransitionMatrix,
}

impl SwitchDecomposition {
    pub fn negative_holding_blocks(&self) -> usize {
        self.blocks.iter().filter(|b| b.holding.is_negative()).count()
    }

    pub fn min_holding(&self) -> Option<Rational> {
        self.blocks.iter().map(|b| b.holding.clone()).min()
    }
}

/// Splits `P_γ` into per-row-pair class blocks and checks that
/// `Σ_(i,j) C(m,2)⁻¹ Σ_N [(1 - u l γ) I_N + γ M(H_N)]` rebuilds it exactly.
///
/// The identity is algebraic, so `γ` need not satisfy the assumption; blocks
/// with negative holding are kept and counted.
pub fn decompose_switch(space: &StateSpace, gamma: &Rational) -> Result<SwitchDecomposition> {
    let m = space.spec().m();
    let pairs = row_pairs(m);
    let pair_weight = if m < 2 { Rational::one() } else { inverse(&binomial(m as u64, 2)) };
    let matrix =
        if m < 2 { TransitionMatrix::identity(space.len()) } else { switch_matrix(space, &(gamma * &pair_weight)) };
    let mut blocks = Vec::new();
    let mut rebuilt = TransitionMatrix::zeros(space.len());
    for &(i, j) in &pairs {
        for class in crate::statespace::partition_by_rowpair(space, i, j)? {
            let (u, l) = class.profile[0];
            let holding = Rational::one() - gamma * Rational::from_integer(BigInt::from(u * l));
            let pos: BTreeMap<usize, usize> = class.members.iter().enumerate().map(|(a, &s)| (s, a)).collect();
            let mut adjacency = Vec::new();
            for (a, &s) in class.members.iter().enumerate() {
                let state = space.state(s);
                for sw in pair_switches(state, i, j) {
                    let b = lookup(space, &state.apply_switch(sw.i, sw.j, sw.k, sw.l).expect("valid switch"));
                    adjacency.push((a, pos[&b]));
                }
            }
            adjacency.sort_unstable();
            for &s in &class.members {
                rebuilt.add(s, s, &pair_weight * &holding);
            }
            for &(a, b) in &adjacency {
                rebuilt.add(class.members[a], class.members[b], &pair_weight * gamma);
            }
            blocks.push(SwitchBlock {
                pair: (i, j),
                members: class.members,
                u,
                l,
                holding,
                adjacency,
                gamma: gamma.clone(),
            });
        }
    }
    if m < 2 {
        rebuilt = TransitionMatrix::identity(space.len());
    }
    matrix.assert_equal(&rebuilt)?;
    Ok(SwitchDecomposition { gamma: gamma.clone(), blocks, matrix })
}

/// The decomposition at the edge-switch value `γ = C(m,2) / C(ρ,2)`; its
/// blocks need not be stochastic.
pub fn decompose_edge_switch(space: &StateSpace) -> Result<SwitchDecomposition> {
    let spec = space.spec();
    let pairs = binomial(spec.rho_total() as u64, 2);
    if pairs.is_zero() || spec.m() < 2 {
        return decompose_switch(space, &Rational::zero());
    }
    let gamma = Rational::new(binomial(spec.m() as u64, 2), pairs);
    decompose_switch(space, &gamma)
}

/// Row-pair partitions for every pair, the input to [`build_heat_bath`] that
/// yields Curveball.
pub fn row_pair_partitions(space: &StateSpace) -> Result<Vec<Vec<Neighborhood>>> {
    row_pairs(space.spec().m()).into_iter().map(|(i, j)| crate::statespace::partition_by_rowpair(space, i, j)).collect()
}
