//! Seeded single-step and multi-step runners for the switch, edge-switch,
//! Curveball and k-Curveball chains.
//!
//! Every public `step_*` function takes a matrix and returns the next state;
//! [`run_chain`] drives the same transitions in place.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::instance::MarginSpec;
use crate::matrix::BinaryMatrix;
use crate::rational::{binomial_u64, parse_small_ratio, SmallRatio};
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChainKind {
    /// Each switch-adjacent neighbour on the drawn row pair has probability `gamma`.
    GammaSwitch(SmallRatio),
    /// Gamma switch with `gamma = 2 / (n (n - 1))`, realized by drawing two rows and two columns.
    KtvSwitch,
    /// Two distinct one-entries drawn uniformly, switched when they form a checkerboard.
    EdgeSwitch,
    Curveball,
    /// Independent binomial trades on `k` disjoint uniformly drawn row pairs.
    KCurveball(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChainSpec {
    pub kind: ChainKind,
    /// With probability `1 - delta` the lazy chain holds.
    pub laziness: Option<SmallRatio>,
}

impl ChainSpec {
    pub const fn new(kind: ChainKind) -> Self {
        Self { kind, laziness: None }
    }

    pub fn gamma(gamma: SmallRatio) -> Self {
        Self::new(ChainKind::GammaSwitch(gamma))
    }

    pub const fn ktv() -> Self {
        Self::new(ChainKind::KtvSwitch)
    }

    pub const fn edge() -> Self {
        Self::new(ChainKind::EdgeSwitch)
    }

    pub const fn curveball() -> Self {
        Self::new(ChainKind::Curveball)
    }

    pub const fn k_curveball(k: usize) -> Self {
        Self::new(ChainKind::KCurveball(k))
    }

    pub fn lazy(mut self, delta: SmallRatio) -> Self {
        self.laziness = Some(delta);
        self
    }

    /// Checks parameters against an instance.
    pub fn validate(&self, spec: &MarginSpec) -> Result<()> {
        if let Some(delta) = self.laziness {
            if *delta.numer() == 0 || delta.numer() >= delta.denom() {
                return Err(Error::BadDelta(delta.to_string()));
            }
        }
        match self.kind {
            ChainKind::GammaSwitch(g) if *g.numer() == 0 => Err(Error::BadParameter("gamma must be positive".into())),
            ChainKind::KtvSwitch if spec.n() < 2 => {
                Err(Error::BadParameter("the KTV chain needs at least two columns".into()))
            }
            ChainKind::KCurveball(0) => Err(Error::BadParameter("k must be positive".into())),
            ChainKind::KCurveball(k) if 2 * k > spec.m() => Err(Error::KTooLarge { k, m: spec.m() }),
            _ => Ok(()),
        }
    }

    /// The per-switch probability `gamma` for switch-type chains, before laziness.
    pub fn switch_gamma(&self, spec: &MarginSpec) -> Option<SmallRatio> {
        match self.kind {
            ChainKind::GammaSwitch(g) => Some(g),
            ChainKind::KtvSwitch => ktv_gamma(spec.n()),
            ChainKind::EdgeSwitch => {
                let pairs = binomial_u64(spec.rho_total() as u64, 2);
                (pairs > 0).then(|| SmallRatio::new(binomial_u64(spec.m() as u64, 2), pairs))
            }
            _ => None,
        }
    }

    pub fn base(&self) -> ChainSpec {
        ChainSpec::new(self.kind)
    }
}

/// `2 / (n (n - 1))`, undefined below two columns.
pub fn ktv_gamma(n: usize) -> Option<SmallRatio> {
    (n >= 2).then(|| SmallRatio::new(2, (n * (n - 1)) as u64))
}

impl fmt::Display for ChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.laziness) {
            (ChainKind::EdgeSwitch, Some(d)) => return write!(f, "edge-lazy:{d}"),
            (_, Some(d)) => write!(f, "lazy:{d}:")?,
            _ => {}
        }
        match self.kind {
            ChainKind::GammaSwitch(g) => write!(f, "gamma:{g}"),
            ChainKind::KtvSwitch => write!(f, "ktv"),
            ChainKind::EdgeSwitch => write!(f, "edge"),
            ChainKind::Curveball => write!(f, "curveball"),
            ChainKind::KCurveball(k) => write!(f, "kcurveball:{k}"),
        }
    }
}

impl FromStr for ChainSpec {
    type Err = Error;

    /// `ktv | gamma:<p/q> | curveball | kcurveball:<k> | edge | edge-lazy:<p/q>`,
    /// optionally prefixed by `lazy:<p/q>:` for any chain.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("lazy:") {
            let (delta, inner) =
                rest.split_once(':').ok_or_else(|| Error::Parse(format!("expected lazy:<p/q>:<chain>, got {s:?}")))?;
            let chain: ChainSpec = inner.parse()?;
            if chain.laziness.is_some() {
                return Err(Error::Parse("laziness given twice".into()));
            }
            return Ok(chain.lazy(parse_small_ratio(delta)?));
        }
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let need = |what: &str| arg.ok_or_else(|| Error::Parse(format!("{head} needs {what}")));
        let chain = match head {
            "ktv" => ChainSpec::ktv(),
            "curveball" => ChainSpec::curveball(),
            "edge" => ChainSpec::edge(),
            "gamma" => ChainSpec::gamma(parse_small_ratio(need("a rational gamma")?)?),
            "edge-lazy" => ChainSpec::edge().lazy(parse_small_ratio(need("a rational delta")?)?),
            "kcurveball" => {
                let k = need("k")?.parse().map_err(|_| Error::Parse(format!("bad k in {s:?}")))?;
                ChainSpec::k_curveball(k)
            }
            _ => return Err(Error::Parse(format!("unknown chain {s:?}"))),
        };
        if arg.is_some() && matches!(head, "ktv" | "curveball" | "edge") {
            return Err(Error::Parse(format!("{head} takes no argument")));
        }
        Ok(chain)
    }
}

fn pick_bit(mask: &[u64], mut rank: usize) -> usize {
    for (w, &word) in mask.iter().enumerate() {
        let ones = word.count_ones() as usize;
        if rank < ones {
            let mut rest = word;
            for _ in 0..rank {
                rest &= rest - 1;
            }
            return w * 64 + rest.trailing_zeros() as usize;
        }
        rank -= ones;
    }
    unreachable!("rank exceeds mask population")
}

fn collect_bits(mask: &[u64], out: &mut Vec<usize>) {
    for (w, &word) in mask.iter().enumerate() {
        let mut rest = word;
        while rest != 0 {
            out.push(w * 64 + rest.trailing_zeros() as usize);
            rest &= rest - 1;
        }
    }
}

fn flip_switch(a: &mut BinaryMatrix, i: usize, j: usize, k: usize, l: usize) {
    for (r, c) in [(i, k), (i, l), (j, k), (j, l)] {
        a.flip(r, c);
    }
}

fn gamma_switch_in_place(a: &mut BinaryMatrix, gamma: SmallRatio, rng: &mut RngStream) -> Result<()> {
    let m = a.spec().m();
    if m < 2 {
        return Ok(());
    }
    let (i, j) = rng.distinct_pair(m);
    let (upper, lower) = a.pair_masks(i, j);
    let u: usize = upper.iter().map(|w| w.count_ones() as usize).sum();
    let l: usize = lower.iter().map(|w| w.count_ones() as usize).sum();
    let numer = (u * l) as u64 * gamma.numer();
    if numer >= *gamma.denom() && u * l > 0 {
        return Err(Error::AssumptionViolated { i, j, value: SmallRatio::new(numer, *gamma.denom()).to_string() });
    }
    if rng.bernoulli(numer, *gamma.denom()) {
        let k = pick_bit(&upper, rng.index(u));
        let c = pick_bit(&lower, rng.index(l));
        flip_switch(a, i, j, k, c);
    }
    Ok(())
}

fn ktv_classical_in_place(a: &mut BinaryMatrix, rng: &mut RngStream) {
    let (m, n) = (a.spec().m(), a.spec().n());
    if m < 2 || n < 2 {
        return;
    }
    let (i, j) = rng.distinct_pair(m);
    let (k, l) = rng.distinct_pair(n);
    let checker = a.get(i, k) == a.get(j, l) && a.get(i, l) == a.get(j, k) && a.get(i, k) != a.get(i, l);
    let spec = a.spec();
    let blocked = [(i, k), (i, l), (j, k), (j, l)].iter().any(|&(r, c)| spec.is_forbidden(r, c));
    if checker && !blocked {
        flip_switch(a, i, j, k, l);
    }
}

fn trade_in_place(a: &mut BinaryMatrix, i: usize, j: usize, rng: &mut RngStream, scratch: &mut Vec<usize>) {
    let (upper, lower) = a.pair_masks(i, j);
    let u: usize = upper.iter().map(|w| w.count_ones() as usize).sum();
    scratch.clear();
    collect_bits(&upper, scratch);
    collect_bits(&lower, scratch);
    if u == 0 || u == scratch.len() {
        return;
    }
    scratch.sort_unstable();
    rng.partial_shuffle(scratch, u);
    // Row i gets ones at scratch[..u]; everything else on the trade columns goes to row j.
    for (pos, &col) in scratch.iter().enumerate() {
        let want_top = pos < u;
        if a.get(i, col) != want_top {
            a.flip(i, col);
            a.flip(j, col);
        }
    }
}

fn curveball_in_place(a: &mut BinaryMatrix, rng: &mut RngStream, scratch: &mut Vec<usize>) {
    let m = a.spec().m();
    if m < 2 {
        return;
    }
    let (i, j) = rng.distinct_pair(m);
    trade_in_place(a, i, j, rng, scratch);
}

fn k_curveball_in_place(a: &mut BinaryMatrix, k: usize, rng: &mut RngStream, scratch: &mut Vec<usize>) -> Result<()> {
    for (i, j) in sample_disjoint_pairs(a.spec().m(), k, rng)? {
        trade_in_place(a, i, j, rng, scratch);
    }
    Ok(())
}

/// One-entry positions for the edge-switch chain, updated as switches are applied.
#[derive(Debug, Clone)]
pub struct EdgeList {
    ones: Vec<(usize, usize)>,
}

impl EdgeList {
    pub fn new(a: &BinaryMatrix) -> Self {
        let (m, n) = (a.spec().m(), a.spec().n());
        let ones = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| a.get(i, j)).collect();
        Self { ones }
    }

    pub fn len(&self) -> usize {
        self.ones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ones.is_empty()
    }

    /// One edge-switch step on `a`, which must be the matrix this list tracks.
    pub fn step(&mut self, a: &mut BinaryMatrix, rng: &mut RngStream) {
        if self.ones.len() < 2 {
            return;
        }
        let (p, q) = rng.distinct_pair(self.ones.len());
        let (i, x) = self.ones[p];
        let (j, y) = self.ones[q];
        if i == j || x == y || a.get(i, y) || a.get(j, x) {
            return;
        }
        let spec = a.spec();
        if spec.is_forbidden(i, y) || spec.is_forbidden(j, x) {
            return;
        }
        flip_switch(a, i, j, x, y);
        self.ones[p] = (i, y);
        self.ones[q] = (j, x);
    }
}

/// One step of the gamma-switch chain.
pub fn step_gamma_switch(a: &BinaryMatrix, gamma: SmallRatio, rng: &mut RngStream) -> Result<BinaryMatrix> {
    let mut b = a.clone();
    gamma_switch_in_place(&mut b, gamma, rng)?;
    debug_assert!(b.check_membership().is_ok());
    Ok(b)
}

/// One step of the KTV chain in its classical two-rows-two-columns form.
pub fn step_ktv(a: &BinaryMatrix, rng: &mut RngStream) -> BinaryMatrix {
    let mut b = a.clone();
    ktv_classical_in_place(&mut b, rng);
    debug_assert!(b.check_membership().is_ok());
    b
}

/// One Curveball step: a uniform binomial trade on a uniform row pair.
pub fn step_curveball(a: &BinaryMatrix, rng: &mut RngStream) -> BinaryMatrix {
    let mut b = a.clone();
    curveball_in_place(&mut b, rng, &mut Vec::new());
    debug_assert!(b.check_membership().is_ok());
    b
}

/// A uniform element of the set of `k` pairwise disjoint row pairs.
///
/// Draws `2k` rows by a partial shuffle, then matches the lowest unmatched
/// row with a uniform remaining one until all are paired. Pairs come back
/// as `(a, b)` with `a < b`, sorted.
pub fn sample_disjoint_pairs(m: usize, k: usize, rng: &mut RngStream) -> Result<Vec<(usize, usize)>> {
    if 2 * k > m {
        return Err(Error::KTooLarge { k, m });
    }
    let mut rows: Vec<usize> = (0..m).collect();
    rng.partial_shuffle(&mut rows, 2 * k);
    let mut chosen = rows[..2 * k].to_vec();
    chosen.sort_unstable();
    let mut pairs = Vec::with_capacity(k);
    while !chosen.is_empty() {
        let first = chosen.remove(0);
        let partner = chosen.remove(rng.index(chosen.len()));
        pairs.push((first, partner));
    }
    Ok(pairs)
}

pub fn step_k_curveball(a: &BinaryMatrix, k: usize, rng: &mut RngStream) -> Result<BinaryMatrix> {
    let mut b = a.clone();
    k_curveball_in_place(&mut b, k, rng, &mut Vec::new())?;
    debug_assert!(b.check_membership().is_ok());
    Ok(b)
}

/// One edge-switch step. Builds the one-entry list from scratch; use
/// [`EdgeList`] or [`run_chain`] for repeated steps.
pub fn step_edge_switch(a: &BinaryMatrix, rng: &mut RngStream) -> BinaryMatrix {
    let mut b = a.clone();
    EdgeList::new(a).step(&mut b, rng);
    debug_assert!(b.check_membership().is_ok());
    b
}

/// Holds with probability `1 - delta`, otherwise delegates to `inner`.
pub fn step_lazy<F>(a: &BinaryMatrix, delta: SmallRatio, rng: &mut RngStream, inner: F) -> Result<BinaryMatrix>
where
    F: FnOnce(&BinaryMatrix, &mut RngStream) -> Result<BinaryMatrix>,
{
    if *delta.numer() == 0 || delta.numer() >= delta.denom() {
        return Err(Error::BadDelta(delta.to_string()));
    }
    if rng.bernoulli_ratio(delta) {
        inner(a, rng)
    } else {
        Ok(a.clone())
    }
}

/// One step of any chain.
pub fn step(a: &BinaryMatrix, chain: &ChainSpec, rng: &mut RngStream) -> Result<BinaryMatrix> {
    chain.validate(a.spec())?;
    let base = |a: &BinaryMatrix, rng: &mut RngStream| -> Result<BinaryMatrix> {
        match chain.kind {
            ChainKind::GammaSwitch(g) => step_gamma_switch(a, g, rng),
            ChainKind::KtvSwitch => Ok(step_ktv(a, rng)),
            ChainKind::EdgeSwitch => Ok(step_edge_switch(a, rng)),
            ChainKind::Curveball => Ok(step_curveball(a, rng)),
            ChainKind::KCurveball(k) => step_k_curveball(a, k, rng),
        }
    };
    match chain.laziness {
        Some(delta) => step_lazy(a, delta, rng, base),
        None => base(a, rng),
    }
}

#[derive(Debug, Clone)]
pub struct ChainRun {
    pub last: BinaryMatrix,
    /// States at times `0, thin, 2 thin, ...` when thinning was requested.
    pub trajectory: Vec<BinaryMatrix>,
}

/// Runs `steps` transitions from `start` on stream 0 of `seed`.
pub fn run_chain(start: &BinaryMatrix, chain: &ChainSpec, steps: u64, seed: u64) -> Result<BinaryMatrix> {
    let mut rng = RngStream::new(seed, 0);
    Ok(run_chain_with(start, chain, steps, &mut rng, None)?.last)
}

/// Runs `steps` transitions, optionally recording every `thin`-th state.
pub fn run_chain_with(
    start: &BinaryMatrix,
    chain: &ChainSpec,
    steps: u64,
    rng: &mut RngStream,
    thin: Option<u64>,
) -> Result<ChainRun> {
    chain.validate(start.spec())?;
    let mut a = start.clone();
    let mut edges = matches!(chain.kind, ChainKind::EdgeSwitch).then(|| EdgeList::new(&a));
    let mut scratch = Vec::new();
    let mut trajectory = Vec::new();
    let thin = thin.filter(|&t| t > 0);
    if thin.is_some() {
        trajectory.push(a.clone());
    }
    for t in 1..=steps {
        let moves = match chain.laziness {
            Some(delta) => rng.bernoulli_ratio(delta),
            None => true,
        };
        if moves {
            match chain.kind {
                ChainKind::GammaSwitch(g) => gamma_switch_in_place(&mut a, g, rng)?,
                ChainKind::KtvSwitch => ktv_classical_in_place(&mut a, rng),
                ChainKind::EdgeSwitch => edges.as_mut().expect("edge list").step(&mut a, rng),
                ChainKind::Curveball => curveball_in_place(&mut a, rng, &mut scratch),
                ChainKind::KCurveball(k) => k_curveball_in_place(&mut a, k, rng, &mut scratch)?,
            }
        }
        debug_assert!(a.check_membership().is_ok());
        if let Some(every) = thin {
            if t % every == 0 {
                trajectory.push(a.clone());
            }
        }
    }
    Ok(ChainRun { last: a, trajectory })
}
