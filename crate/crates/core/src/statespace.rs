//! Exhaustive enumeration of `Ω(r, c, F)`, binomial neighbourhoods,
//! state graphs and the structural checks built on them.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::instance::{MarginSpec, WORD_BITS};
use crate::matrix::{BinaryMatrix, Switch};
use crate::rational::binomial_u64;
use crate::samplers::ChainKind;

/// Default enumeration cap, overridable by callers.
pub const DEFAULT_MAX_STATES: usize = 200_000;

/// An enumerated state space, canonically sorted.
#[derive(Debug, Clone)]
pub struct StateSpace {
    spec: Arc<MarginSpec>,
    states: Vec<BinaryMatrix>,
}

impl StateSpace {
    pub fn spec(&self) -> &Arc<MarginSpec> {
        &self.spec
    }

    pub fn states(&self) -> &[BinaryMatrix] {
        &self.states
    }

    pub fn state(&self, idx: usize) -> &BinaryMatrix {
        &self.states[idx]
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, a: &BinaryMatrix) -> Option<usize> {
        if !Arc::ptr_eq(a.spec(), &self.spec) && a.spec() != &self.spec {
            return None;
        }
        self.states.binary_search(a).ok()
    }

    /// Stationary probability of every state.
    pub fn pi(&self) -> f64 {
        1.0 / self.states.len() as f64
    }
}

struct Enumerator<'a> {
    spec: &'a Arc<MarginSpec>,
    allowed_below: Vec<usize>,
    allowed_after: Vec<usize>,
    col_rem: Vec<usize>,
    words: Vec<u64>,
    wpr: usize,
    out: Vec<BinaryMatrix>,
    cap: usize,
}

impl Enumerator<'_> {
    fn cell(&mut self, i: usize, j: usize, row_rem: usize) -> Result<()> {
        let (m, n) = (self.spec.m(), self.spec.n());
        if j == n {
            if row_rem != 0 {
                return Ok(());
            }
            if i + 1 == m {
                if self.out.len() == self.cap {
                    return Err(Error::StateSpaceTooLarge { cap: self.cap });
                }
                self.out.push(BinaryMatrix::from_words_unchecked(self.spec.clone(), self.words.clone()));
                return Ok(());
            }
            return self.cell(i + 1, 0, self.spec.row_sums()[i + 1]);
        }
        let (after, below) = if self.allowed_after.is_empty() {
            (n - 1 - j, m - 1 - i)
        } else {
            (self.allowed_after[i * n + j], self.allowed_below[i * n + j])
        };
        let allowed = self.allowed_after.is_empty() || !self.spec.is_forbidden(i, j);
        let bit = 1u64 << (j % WORD_BITS);
        let w = i * self.wpr + j / WORD_BITS;
        // Ones first: row-major enumeration then comes out in descending key order.
        if allowed && row_rem > 0 && self.col_rem[j] > 0 && row_rem - 1 <= after && self.col_rem[j] - 1 <= below {
            self.col_rem[j] -= 1;
            self.words[w] |= bit;
            let res = self.cell(i, j + 1, row_rem - 1);
            self.words[w] &= !bit;
            self.col_rem[j] += 1;
            res?;
        }
        if row_rem <= after && self.col_rem[j] <= below {
            self.cell(i, j + 1, row_rem)?;
        }
        Ok(())
    }
}

/// All matrices of the instance, canonically sorted; fails above `cap` states.
///
/// Backtracking row by row, cell by cell. A column keeps a branch alive only
/// while the rows below can still supply its remaining ones, and a row only
/// while its remaining allowed cells can hold its remaining ones.
pub fn enumerate_states(spec: Arc<MarginSpec>, cap: usize) -> Result<StateSpace> {
    let (m, n) = (spec.m(), spec.n());
    let allowed = |i: usize, j: usize| !spec.is_forbidden(i, j);
    // Allowed cells strictly below and strictly right of each cell; closed
    // forms when nothing is forbidden.
    let (mut allowed_below, mut allowed_after) = (Vec::new(), Vec::new());
    if !spec.forbidden().is_empty() {
        allowed_below = vec![0usize; m * n];
        for i in (0..m.saturating_sub(1)).rev() {
            for j in 0..n {
                allowed_below[i * n + j] = allowed_below[(i + 1) * n + j] + allowed(i + 1, j) as usize;
            }
        }
        allowed_after = vec![0usize; m * n];
        for i in 0..m {
            for j in (0..n.saturating_sub(1)).rev() {
                allowed_after[i * n + j] = allowed_after[i * n + j + 1] + allowed(i, j + 1) as usize;
            }
        }
    }
    let wpr = spec.words_per_row();
    let mut en = Enumerator {
        spec: &spec,
        allowed_below,
        allowed_after,
        col_rem: spec.col_sums().to_vec(),
        words: vec![0; m * wpr],
        wpr,
        out: Vec::new(),
        cap,
    };
    en.cell(0, 0, spec.row_sums()[0])?;
    let mut states = en.out;
    if states.is_empty() {
        return Err(Error::EmptyStateSpace);
    }
    // Emitted in descending order.
    states.reverse();
    debug_assert!(states.windows(2).all(|w| w[0] < w[1]));
    Ok(StateSpace { spec, states })
}

/// A binomial neighbourhood for one row pair, or a κ-neighbourhood for a
/// collection of disjoint row pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Neighborhood {
    /// Row pairs `(i, j)` with `i < j`; a single entry for a row-pair neighbourhood.
    pub pairs: Vec<(usize, usize)>,
    /// Sorted state indices.
    pub members: Vec<usize>,
    /// `(u, l)` for every pair, in the order of `pairs`.
    pub profile: Vec<(usize, usize)>,
}

impl Neighborhood {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// `Π C(u + l, u)` over the pairs.
    pub fn expected_size(&self) -> u64 {
        self.profile.iter().map(|&(u, l)| binomial_u64((u + l) as u64, u as u64)).product()
    }
}

fn check_pair(spec: &MarginSpec, i: usize, j: usize) -> Result<()> {
    if j >= spec.m() {
        return Err(Error::IndexOutOfRange { index: j, limit: spec.m() });
    }
    if i >= j {
        return Err(Error::BadRowPair { i, j });
    }
    Ok(())
}

/// `N_ij(A)` straight from its definition: the states agreeing with `A`
/// everywhere except on rows `i, j` restricted to `U_ij(A) ∪ L_ij(A)`.
pub fn binomial_neighborhood(space: &StateSpace, state: usize, i: usize, j: usize) -> Result<Neighborhood> {
    check_pair(space.spec(), i, j)?;
    if state >= space.len() {
        return Err(Error::IndexOutOfRange { index: state, limit: space.len() });
    }
    let a = space.state(state);
    let (upper, lower) = a.pair_masks(i, j);
    let trade: Vec<u64> = upper.iter().zip(&lower).map(|(u, l)| u | l).collect();
    let wpr = space.spec().words_per_row();
    let m = space.spec().m();
    let agrees = |b: &BinaryMatrix| {
        (0..m).all(|r| {
            (0..wpr).all(|w| {
                let (x, y) = (a.words()[r * wpr + w], b.words()[r * wpr + w]);
                if r == i || r == j {
                    (x ^ y) & !trade[w] == 0
                } else {
                    x == y
                }
            })
        })
    };
    let members: Vec<usize> = (0..space.len()).filter(|&s| agrees(space.state(s))).collect();
    let u = upper.iter().map(|w| w.count_ones() as usize).sum();
    let l = lower.iter().map(|w| w.count_ones() as usize).sum();
    Ok(Neighborhood { pairs: vec![(i, j)], members, profile: vec![(u, l)] })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn classes(mut self) -> Vec<Vec<usize>> {
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..self.parent.len() {
            let r = self.find(x);
            groups.entry(r).or_default().push(x);
        }
        groups.into_values().collect()
    }
}

/// Every switch available from `a` on rows `i < j`.
pub(crate) fn pair_switches(a: &BinaryMatrix, i: usize, j: usize) -> Vec<Switch> {
    let stats = a.row_pair_stats(i, j).expect("valid row pair");
    let mut out = Vec::with_capacity(stats.u() * stats.l());
    for &k in &stats.upper {
        for &l in &stats.lower {
            out.push(Switch { i, j, k: k.min(l), l: k.max(l) });
        }
    }
    out
}

fn apply(a: &BinaryMatrix, s: &Switch) -> BinaryMatrix {
    a.apply_switch(s.i, s.j, s.k, s.l).expect("switch from U x L is valid")
}

/// The classes `R_(i,j)`: states joined by switches confined to rows `i, j`.
pub fn partition_by_rowpair(space: &StateSpace, i: usize, j: usize) -> Result<Vec<Neighborhood>> {
    check_pair(space.spec(), i, j)?;
    let mut uf = UnionFind::new(space.len());
    for (idx, a) in space.states().iter().enumerate() {
        for s in pair_switches(a, i, j) {
            let b = space.index_of(&apply(a, &s)).expect("switch stays in the space");
            uf.union(idx, b);
        }
    }
    Ok(uf
        .classes()
        .into_iter()
        .map(|members| {
            let profile = vec![space.state(members[0]).pair_counts(i, j)];
            Neighborhood { pairs: vec![(i, j)], members, profile }
        })
        .collect())
}

/// All row pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn row_pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect()
}

/// Every collection of `k` pairwise disjoint row pairs out of `m` rows, each
/// sorted, in lexicographic order.
pub fn disjoint_pair_collections(m: usize, k: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        m: usize,
        k: usize,
        min_first: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in min_first..m {
            if used[a] {
                continue;
            }
            for b in a + 1..m {
                if used[b] {
                    continue;
                }
                used[a] = true;
                used[b] = true;
                cur.push((a, b));
                rec(m, k, a + 1, used, cur, out);
                cur.pop();
                used[a] = false;
                used[b] = false;
            }
        }
    }
    let mut out = Vec::new();
    if 2 * k <= m {
        rec(m, k, 0, &mut vec![false; m], &mut Vec::new(), &mut out);
    }
    out
}

/// `|L_k| = m! / ((m - 2k)! 2^k k!)`.
pub fn count_disjoint_pair_collections(m: usize, k: usize) -> u64 {
    if 2 * k > m {
        return 0;
    }
    let falling: u64 = (0..2 * k as u64).map(|x| m as u64 - x).product();
    let fact: u64 = (1..=k as u64).product();
    falling / ((1u64 << k) * fact)
}

/// The classes `R_κ` for a collection of disjoint row pairs.
///
/// States are grouped by everything a trade on the pairs of `κ` cannot
/// change: the rows outside `κ`, and on each pair the trade-column mask
/// together with the entries off that mask.
pub fn kappa_partition(space: &StateSpace, kappa: &[(usize, usize)]) -> Result<Vec<Neighborhood>> {
    let spec = space.spec();
    let mut used = vec![false; spec.m()];
    for &(i, j) in kappa {
        check_pair(spec, i, j)?;
        if used[i] || used[j] {
            return Err(Error::OverlappingPairs);
        }
        used[i] = true;
        used[j] = true;
    }
    let wpr = spec.words_per_row();
    let mut groups: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
    for (idx, a) in space.states().iter().enumerate() {
        let mut key = a.words().to_vec();
        for &(i, j) in kappa {
            let (upper, lower) = a.pair_masks(i, j);
            for w in 0..wpr {
                let trade = upper[w] | lower[w];
                key[i * wpr + w] &= !trade;
                key[j * wpr + w] &= !trade;
                key.push(trade);
            }
        }
        groups.entry(key).or_default().push(idx);
    }
    let mut classes: Vec<Neighborhood> = groups
        .into_values()
        .map(|members| {
            let first = space.state(members[0]);
            let profile = kappa.iter().map(|&(i, j)| first.pair_counts(i, j)).collect();
            Neighborhood { pairs: kappa.to_vec(), members, profile }
        })
        .collect();
    classes.sort_by_key(|c| c.members[0]);
    Ok(classes)
}

/// How an edge of a state graph arises.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveLabel {
    Switch(Switch),
    /// A trade on the listed pairs; for k-Curveball the first collection in
    /// lexicographic order that realizes the move.
    Trade(Vec<(usize, usize)>),
}

/// Undirected, loop-free support graph of a chain.
#[derive(Debug, Clone)]
pub struct StateGraph {
    adjacency: Vec<BTreeMap<usize, MoveLabel>>,
}

impl StateGraph {
    fn new(n: usize) -> Self {
        Self { adjacency: vec![BTreeMap::new(); n] }
    }

    fn add(&mut self, a: usize, b: usize, label: MoveLabel) {
        if a == b {
            return;
        }
        self.adjacency[a].entry(b).or_insert_with(|| label.clone());
        self.adjacency[b].entry(a).or_insert(label);
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn neighbors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[a].keys().copied()
    }

    pub fn label(&self, a: usize, b: usize) -> Option<&MoveLabel> {
        self.adjacency[a].get(&b)
    }

    pub fn degree(&self, a: usize) -> usize {
        self.adjacency[a].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains_key(&b)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|n| n.len()).sum::<usize>() / 2
    }

    /// Edges `(a, b)` with `a < b`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(a, nb)| nb.keys().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    /// Two-colouring if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut colour: Vec<Option<bool>> = vec![None; self.len()];
        for start in 0..self.len() {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let c = colour[v].expect("coloured");
                for w in self.neighbors(v) {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(x) if x == c => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(|c| c.unwrap_or(false)).collect())
    }
}

/// Support graph of `kind` on the space: `{A, B}` is an edge iff the chain
/// moves from `A` to `B != A` with positive probability.
pub fn build_state_graph(space: &StateSpace, kind: &ChainKind) -> StateGraph {
    let spec = space.spec();
    let mut g = StateGraph::new(space.len());
    match kind {
        ChainKind::GammaSwitch(_) | ChainKind::KtvSwitch | ChainKind::EdgeSwitch => {
            for (idx, a) in space.states().iter().enumerate() {
                for (i, j) in row_pairs(spec.m()) {
                    for s in pair_switches(a, i, j) {
                        let b = space.index_of(&apply(a, &s)).expect("in space");
                        g.add(idx, b, MoveLabel::Switch(s));
                    }
                }
            }
        }
        ChainKind::Curveball | ChainKind::KCurveball(_) => {
            let k = match kind {
                ChainKind::KCurveball(k) => *k,
                _ => 1,
            };
            for kappa in disjoint_pair_collections(spec.m(), k) {
                for class in kappa_partition(space, &kappa).expect("disjoint pairs") {
                    for (x, &a) in class.members.iter().enumerate() {
                        for &b in &class.members[x + 1..] {
                            g.add(a, b, MoveLabel::Trade(kappa.clone()));
                        }
                    }
                }
            }
        }
    }
    g
}

/// Connected components of a state graph, each sorted, ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub components: Vec<Vec<usize>>,
}

impl Components {
    pub fn is_irreducible(&self) -> bool {
        self.components.len() <= 1
    }

    pub fn count(&self) -> usize {
        self.components.len()
    }
}

pub fn check_irreducibility(graph: &StateGraph) -> Components {
    let mut uf = UnionFind::new(graph.len());
    for (a, b) in graph.edges() {
        uf.union(a, b);
    }
    Components { components: uf.classes() }
}

/// Result of a successful Johnson-isomorphism check on one neighbourhood.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JohnsonVerdict {
    pub p: usize,
    pub q: usize,
    /// Label set `Z` of every member: positions, within the trade columns, of row `i`'s ones.
    pub labels: Vec<Vec<usize>>,
    pub degree: usize,
}

/// Checks that the switch graph induced on a row-pair neighbourhood is `J(u + l, u)`.
pub fn check_johnson_isomorphism(nb: &Neighborhood, space: &StateSpace) -> Result<JohnsonVerdict> {
    let [(i, j)] = nb.pairs[..] else {
        return Err(Error::BadParameter("Johnson check needs a single row pair".into()));
    };
    let [(u, l)] = nb.profile[..] else { unreachable!() };
    if u == 0 || l == 0 {
        return Err(Error::BadParameter("Johnson check needs u, l >= 1".into()));
    }
    let p = u + l;
    let first = space.state(nb.members[0]);
    let trade = first.row_pair_stats(i, j)?.trade_columns;
    let mut labels = Vec::with_capacity(nb.size());
    for &s in &nb.members {
        let b = space.state(s);
        if b.row_pair_stats(i, j)?.trade_columns != trade {
            return Err(Error::NotIsomorphic { a: nb.members[0], b: s });
        }
        let z: Vec<usize> = trade.iter().enumerate().filter(|&(_, &c)| b.get(i, c)).map(|(x, _)| x).collect();
        if z.len() != u {
            return Err(Error::NotIsomorphic { a: nb.members[0], b: s });
        }
        labels.push(z);
    }
    let mut sorted = labels.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != labels.len() || sorted.len() as u64 != binomial_u64(p as u64, u as u64) {
        return Err(Error::NotIsomorphic { a: nb.members[0], b: nb.members[nb.size() - 1] });
    }
    let mut degree = None;
    for x in 0..nb.size() {
        let mut deg = 0;
        for y in 0..nb.size() {
            if x == y {
                continue;
            }
            let (a, b) = (space.state(nb.members[x]), space.state(nb.members[y]));
            let adjacent = matches!(a.is_switch_adjacent(b)?, Some(s) if (s.i, s.j) == (i, j));
            let common = labels[x].iter().filter(|c| labels[y].contains(c)).count();
            if adjacent != (common == u - 1) {
                return Err(Error::NotIsomorphic { a: nb.members[x], b: nb.members[y] });
            }
            deg += adjacent as usize;
        }
        match degree {
            None => degree = Some(deg),
            Some(d) if d != deg => return Err(Error::NotIsomorphic { a: nb.members[0], b: nb.members[x] }),
            _ => {}
        }
    }
    Ok(JohnsonVerdict { p, q: u, labels, degree: degree.unwrap_or(0) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::instances;

    fn space(spec: MarginSpec) -> StateSpace {
        enumerate_states(Arc::new(spec), DEFAULT_MAX_STATES).unwrap()
    }

    #[test]
    fn permutation_and_derangement_counts() {
        assert_eq!(space(instances::permutation(3)).len(), 6);
        assert_eq!(space(instances::regular_directed(4, 1)).len(), 9);
        let single = space(MarginSpec::new(vec![2], vec![1, 1], []).unwrap());
        assert_eq!(single.len(), 1);
        assert_eq!(single.state(0).to_rows(), vec![vec![1, 1]]);
    }

    #[test]
    fn states_are_sorted_by_key() {
        let s = space(instances::regular_directed(4, 2));
        for w in s.states().windows(2) {
            assert!(w[0].canonical_key() < w[1].canonical_key());
        }
        for (i, a) in s.states().iter().enumerate() {
            assert_eq!(s.index_of(a), Some(i));
        }
    }

    #[test]
    fn cap_and_empty() {
        let spec = Arc::new(instances::permutation(4));
        assert_eq!(enumerate_states(spec.clone(), 23).unwrap_err(), Error::StateSpaceTooLarge { cap: 23 });
        assert_eq!(enumerate_states(spec, 24).unwrap().len(), 24);
        let empty = MarginSpec::new(vec![3, 1], vec![2, 2, 0, 0], []).unwrap();
        assert_eq!(enumerate_states(Arc::new(empty), 10).unwrap_err(), Error::EmptyStateSpace);
    }

    #[test]
    fn permutation_pair_partition() {
        let s = space(instances::permutation(3));
        let classes = partition_by_rowpair(&s, 0, 1).unwrap();
        assert_eq!(classes.len(), 3);
        assert!(classes.iter().all(|c| c.size() == 2 && c.profile == vec![(1, 1)]));
    }

    #[test]
    fn sizes_of_neighbourhoods_sum_to_space() {
        let s = space(MarginSpec::new(vec![2, 2, 1], vec![1, 2, 1, 1], []).unwrap());
        for (i, j) in row_pairs(3) {
            let classes = partition_by_rowpair(&s, i, j).unwrap();
            let total: u64 = classes.iter().map(|c| c.expected_size()).sum();
            assert_eq!(total as usize, s.len());
            for c in &classes {
                assert_eq!(c.size() as u64, c.expected_size());
                let direct = binomial_neighborhood(&s, c.members[0], i, j).unwrap();
                assert_eq!(direct.members, c.members);
            }
        }
    }

    #[test]
    fn disjoint_collections_are_counted() {
        assert_eq!(disjoint_pair_collections(4, 2).len(), 3);
        assert_eq!(disjoint_pair_collections(5, 2).len(), 15);
        assert_eq!(disjoint_pair_collections(6, 3).len(), 15);
        for m in 2..9 {
            for k in 1..=m / 2 {
                assert_eq!(disjoint_pair_collections(m, k).len() as u64, count_disjoint_pair_collections(m, k));
            }
        }
        assert!(disjoint_pair_collections(3, 2).is_empty());
    }

    #[test]
    fn kappa_partition_rejects_overlaps() {
        let s = space(instances::permutation(4));
        assert_eq!(kappa_partition(&s, &[(0, 1), (1, 2)]).unwrap_err(), Error::OverlappingPairs);
    }

    #[test]
    fn switch_graph_of_s3_is_k33() {
        let s = space(instances::permutation(3));
        let g = build_state_graph(&s, &ChainKind::KtvSwitch);
        assert!((0..6).all(|v| g.degree(v) == 3));
        assert_eq!(g.edge_count(), 9);
        assert!(g.bipartition().is_some());
        assert!(check_irreducibility(&g).is_irreducible());
    }

    #[test]
    fn three_cycles_are_not_connected_by_switches() {
        let s = space(instances::regular_directed(3, 1));
        assert_eq!(s.len(), 2);
        let g = build_state_graph(&s, &ChainKind::Curveball);
        assert_eq!(check_irreducibility(&g).count(), 2);
    }

    #[test]
    fn johnson_on_permutation_edge() {
        let s = space(instances::permutation(3));
        let nb = &partition_by_rowpair(&s, 0, 1).unwrap()[0];
        let v = check_johnson_isomorphism(nb, &s).unwrap();
        assert_eq!((v.p, v.q, v.degree), (2, 1, 1));
    }
}
