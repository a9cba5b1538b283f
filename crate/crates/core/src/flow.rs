//! Maximum-weight closure over the vertex/edge incidence structure, solved
//! with Dinic's algorithm.
//!
//! For integer weights `p` per vertex and `q` per edge the solver finds
//! `max q * e(U) - p * |U|` over vertex sets `U` containing a prescribed set
//! of forced vertices.

use std::collections::VecDeque;

const INF: i64 = i64::MAX / 4;
const SOURCE: usize = 0;
const SINK: usize = 1;

#[derive(Debug, Clone)]
pub(crate) struct ClosureSolver {
    n: usize,
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    base: Vec<i64>,
    forced_arc: Vec<usize>,
    level: Vec<i32>,
    next: Vec<usize>,
    total: i64,
}

impl ClosureSolver {
    pub(crate) fn new(n: usize, edges: &[(usize, usize)], vertex_weight: i64, edge_weight: i64) -> Self {
        let nodes = 2 + n + edges.len();
        let mut solver = ClosureSolver {
            n,
            adj: vec![Vec::new(); nodes],
            to: Vec::with_capacity(6 * edges.len() + 4 * n),
            cap: Vec::with_capacity(6 * edges.len() + 4 * n),
            base: Vec::new(),
            forced_arc: Vec::with_capacity(n),
            level: vec![0; nodes],
            next: vec![0; nodes],
            total: edge_weight * edges.len() as i64,
        };
        for v in 0..n {
            solver.add_arc(2 + v, SINK, vertex_weight);
            let arc = solver.add_arc(SOURCE, 2 + v, 0);
            solver.forced_arc.push(arc);
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            let node = 2 + n + i;
            solver.add_arc(SOURCE, node, edge_weight);
            solver.add_arc(node, 2 + u, INF);
            solver.add_arc(node, 2 + v, INF);
        }
        solver.base = solver.cap.clone();
        solver
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> usize {
        let id = self.to.len();
        self.adj[from].push(id);
        self.to.push(to);
        self.cap.push(cap);
        self.adj[to].push(id + 1);
        self.to.push(from);
        self.cap.push(0);
        id
    }

    /// Maximum closure value with every vertex in `forced` included. The
    /// residual network is kept for the side queries below.
    pub(crate) fn solve(&mut self, forced: &[usize]) -> i64 {
        self.cap.copy_from_slice(&self.base);
        for &v in forced {
            self.cap[self.forced_arc[v]] = INF;
        }
        let mut flow = 0i64;
        while self.bfs() {
            self.next.iter_mut().for_each(|x| *x = 0);
            loop {
                let pushed = self.dfs(SOURCE, INF);
                if pushed == 0 {
                    break;
                }
                flow += pushed;
            }
        }
        self.total - flow
    }

    fn bfs(&mut self) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[SOURCE] = 0;
        let mut queue = VecDeque::from([SOURCE]);
        while let Some(v) = queue.pop_front() {
            for &arc in &self.adj[v] {
                let w = self.to[arc];
                if self.cap[arc] > 0 && self.level[w] < 0 {
                    self.level[w] = self.level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        self.level[SINK] >= 0
    }

    fn dfs(&mut self, v: usize, limit: i64) -> i64 {
        if v == SINK {
            return limit;
        }
        while self.next[v] < self.adj[v].len() {
            let arc = self.adj[v][self.next[v]];
            let w = self.to[arc];
            if self.cap[arc] > 0 && self.level[w] == self.level[v] + 1 {
                let pushed = self.dfs(w, limit.min(self.cap[arc]));
                if pushed > 0 {
                    self.cap[arc] -= pushed;
                    self.cap[arc ^ 1] += pushed;
                    return pushed;
                }
            }
            self.next[v] += 1;
        }
        0
    }

    /// The inclusion-minimal optimal vertex set of the last solve.
    pub(crate) fn min_side(&self) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[SOURCE] = true;
        let mut stack = vec![SOURCE];
        while let Some(v) = stack.pop() {
            for &arc in &self.adj[v] {
                let w = self.to[arc];
                if self.cap[arc] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen[2..2 + self.n].to_vec()
    }

    /// The inclusion-maximal optimal vertex set of the last solve.
    pub(crate) fn max_side(&self) -> Vec<bool> {
        let mut reaches = vec![false; self.adj.len()];
        reaches[SINK] = true;
        let mut stack = vec![SINK];
        while let Some(v) = stack.pop() {
            for &arc in &self.adj[v] {
                // `arc ^ 1` runs from the neighbour into `v`.
                let w = self.to[arc];
                if self.cap[arc ^ 1] > 0 && !reaches[w] {
                    reaches[w] = true;
                    stack.push(w);
                }
            }
        }
        reaches[2..2 + self.n].iter().map(|r| !r).collect()
    }
}
