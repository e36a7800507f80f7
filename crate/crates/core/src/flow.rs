//! Integer feasible flow with lower and upper arc bounds (Dinic's algorithm
//! on the standard super-source/super-sink transformation).

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    rev: usize,
    cap: i64,
}

/// Residual network for max flow.
#[derive(Debug, Clone)]
struct Dinic {
    arcs: Vec<Vec<Arc>>,
    level: Vec<i32>,
    cursor: Vec<usize>,
}

impl Dinic {
    fn new(nodes: usize) -> Self {
        Self {
            arcs: vec![Vec::new(); nodes],
            level: vec![0; nodes],
            cursor: vec![0; nodes],
        }
    }

    /// Returns `(node, position)` of the forward arc.
    fn add(&mut self, from: usize, to: usize, cap: i64) -> (usize, usize) {
        let fwd = self.arcs[from].len();
        let back = self.arcs[to].len() + usize::from(from == to);
        self.arcs[from].push(Arc { to, rev: back, cap });
        self.arcs[to].push(Arc { to: from, rev: fwd, cap: 0 });
        (from, fwd)
    }

    fn bfs(&mut self, source: usize, sink: usize) -> bool {
        self.level.fill(-1);
        self.level[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for arc in &self.arcs[u] {
                if arc.cap > 0 && self.level[arc.to] < 0 {
                    self.level[arc.to] = self.level[u] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        self.level[sink] >= 0
    }

    fn dfs(&mut self, u: usize, sink: usize, limit: i64) -> i64 {
        if u == sink {
            return limit;
        }
        while self.cursor[u] < self.arcs[u].len() {
            let i = self.cursor[u];
            let Arc { to, rev, cap } = self.arcs[u][i];
            if cap > 0 && self.level[to] == self.level[u] + 1 {
                let pushed = self.dfs(to, sink, limit.min(cap));
                if pushed > 0 {
                    self.arcs[u][i].cap -= pushed;
                    self.arcs[to][rev].cap += pushed;
                    return pushed;
                }
            }
            self.cursor[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, source: usize, sink: usize) -> i64 {
        let mut total = 0;
        while self.bfs(source, sink) {
            self.cursor.fill(0);
            loop {
                let pushed = self.dfs(source, sink, i64::MAX);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }
}

/// A network of arcs with bounds `lower <= flow <= upper`, solved for any
/// circulation satisfying all bounds (every node conserves flow).
#[derive(Debug, Clone, Default)]
pub struct BoundedNetwork {
    nodes: usize,
    arcs: Vec<(usize, usize, i64, i64)>,
}

impl BoundedNetwork {
    pub fn new(nodes: usize) -> Self {
        Self {
            nodes,
            arcs: Vec::new(),
        }
    }

    /// Adds an arc and returns its id.
    pub fn add_arc(&mut self, from: usize, to: usize, lower: i64, upper: i64) -> usize {
        assert!(0 <= lower && lower <= upper, "arc bounds must satisfy 0 <= lower <= upper");
        self.arcs.push((from, to, lower, upper));
        self.arcs.len() - 1
    }

    /// Integral flow on every arc, or `None` when no feasible circulation exists.
    pub fn feasible_circulation(&self) -> Option<Vec<i64>> {
        let super_source = self.nodes;
        let super_sink = self.nodes + 1;
        let mut dinic = Dinic::new(self.nodes + 2);
        let mut excess = vec![0i64; self.nodes];
        let handles: Vec<_> = self
            .arcs
            .iter()
            .map(|&(from, to, lower, upper)| {
                excess[to] += lower;
                excess[from] -= lower;
                dinic.add(from, to, upper - lower)
            })
            .collect();
        let mut demand = 0;
        for (node, &e) in excess.iter().enumerate() {
            if e > 0 {
                dinic.add(super_source, node, e);
                demand += e;
            } else if e < 0 {
                dinic.add(node, super_sink, -e);
            }
        }
        if dinic.max_flow(super_source, super_sink) != demand {
            return None;
        }
        Some(
            handles
                .iter()
                .zip(&self.arcs)
                .map(|(&(node, pos), &(_, _, lower, upper))| lower + (upper - lower - dinic.arcs[node][pos].cap))
                .collect(),
        )
    }
}
