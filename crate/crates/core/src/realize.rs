//! Finding one member of `Ω(r, c, F)` without enumerating the space.
//!
//! Rows and columns form a bipartite flow network (source → row `i` with
//! capacity `r_i`, row → column for every allowed entry, column `j` → sink
//! with capacity `c_j`); a saturating flow is a matrix of the instance.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::instance::MarginSpec;
use crate::matrix::BinaryMatrix;

struct Edge {
    to: usize,
    cap: usize,
}

struct Dinic {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    level: Vec<i64>,
    cursor: Vec<usize>,
}

impl Dinic {
    fn new(nodes: usize) -> Self {
        Self { edges: Vec::new(), adj: vec![Vec::new(); nodes], level: vec![0; nodes], cursor: vec![0; nodes] }
    }

    fn add(&mut self, from: usize, to: usize, cap: usize) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { to, cap });
        self.adj[from].push(id);
        self.edges.push(Edge { to: from, cap: 0 });
        self.adj[to].push(id + 1);
        id
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.adj[v] {
                let Edge { to, cap } = self.edges[e];
                if cap > 0 && self.level[to] < 0 {
                    self.level[to] = self.level[v] + 1;
                    queue.push_back(to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, v: usize, t: usize, pushed: usize) -> usize {
        if v == t {
            return pushed;
        }
        while self.cursor[v] < self.adj[v].len() {
            let e = self.adj[v][self.cursor[v]];
            let Edge { to, cap } = self.edges[e];
            if cap > 0 && self.level[to] == self.level[v] + 1 {
                let got = self.dfs(to, t, pushed.min(cap));
                if got > 0 {
                    self.edges[e].cap -= got;
                    self.edges[e ^ 1].cap += got;
                    return got;
                }
            }
            self.cursor[v] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.cursor.iter_mut().for_each(|c| *c = 0);
            loop {
                let f = self.dfs(s, t, usize::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
        flow
    }
}

/// Some matrix of the instance, or [`Error::EmptyStateSpace`].
pub fn find_state(spec: Arc<MarginSpec>) -> Result<BinaryMatrix> {
    let (m, n) = (spec.m(), spec.n());
    let source = m + n;
    let sink = source + 1;
    let mut net = Dinic::new(m + n + 2);
    for (i, &r) in spec.row_sums().iter().enumerate() {
        net.add(source, i, r);
    }
    for (j, &c) in spec.col_sums().iter().enumerate() {
        net.add(m + j, sink, c);
    }
    let mut cells = Vec::new();
    for i in 0..m {
        for j in 0..n {
            if !spec.is_forbidden(i, j) {
                cells.push((i, j, net.add(i, m + j, 1)));
            }
        }
    }
    if net.max_flow(source, sink) != spec.rho_total() {
        return Err(Error::EmptyStateSpace);
    }
    let mut rows = vec![vec![0u8; n]; m];
    for (i, j, e) in cells {
        if net.edges[e].cap == 0 {
            rows[i][j] = 1;
        }
    }
    BinaryMatrix::from_rows(spec, &rows)
}
