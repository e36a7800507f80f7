//! Brute-force reference computations shared by the integration tests. They
//! work on plain vectors and bit masks and use nothing from the library except
//! the graph containers they read from.

#![allow(dead_code)]

use gf_factors::{EdgeSubgraph, FractionalFactor, Graph, SplitMix64, VertexFunc, VertexSet, Witness};

/// Plain copy of an instance.
pub struct Plain {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub in_h: Vec<bool>,
    pub g: Vec<i64>,
    pub f: Vec<i64>,
}

impl Plain {
    pub fn new(graph: &Graph, g: &VertexFunc, f: &VertexFunc, sub: &EdgeSubgraph) -> Self {
        Self {
            n: graph.vertex_count(),
            edges: graph.edges().to_vec(),
            in_h: (0..graph.edge_count()).map(|i| sub.contains(i)).collect(),
            g: g.values().iter().map(|&v| v as i64).collect(),
            f: f.values().iter().map(|&v| v as i64).collect(),
        }
    }

    fn degree(&self, x: usize, only_h: bool) -> i64 {
        self.edges
            .iter()
            .zip(&self.in_h)
            .filter(|&(&(u, v), &h)| (u == x || v == x) && (h || !only_h))
            .count() as i64
    }

    /// Edges of `G` (or of `H`) from `x` into the mask.
    fn edges_into(&self, x: usize, mask: u64, only_h: bool) -> i64 {
        self.edges
            .iter()
            .zip(&self.in_h)
            .filter(|&(_, &h)| h || !only_h)
            .filter_map(|(&(u, v), _)| {
                if u == x {
                    Some(v)
                } else if v == x {
                    Some(u)
                } else {
                    None
                }
            })
            .filter(|&y| mask >> y & 1 == 1)
            .count() as i64
    }

    /// `f(S) + d_{G-S}(T) - g(T)`.
    pub fn def_frac(&self, s: u64, t: u64) -> i64 {
        let mut total = 0;
        for x in 0..self.n {
            if s >> x & 1 == 1 {
                total += self.f[x];
            }
            if t >> x & 1 == 1 {
                total += self.degree(x, false) - self.edges_into(x, s, false) - self.g[x];
            }
        }
        total
    }

    /// `g(S) + d_{G-S}(T) - f(T) - d_H(S) + e_H(S, T)`.
    pub fn def_all(&self, s: u64, t: u64) -> i64 {
        let mut total = 0;
        for x in 0..self.n {
            if s >> x & 1 == 1 {
                total += self.g[x] - self.degree(x, true) + self.edges_into(x, t, true);
            }
            if t >> x & 1 == 1 {
                total += self.degree(x, false) - self.edges_into(x, s, false) - self.f[x];
            }
        }
        total
    }

    /// Every disjoint pair of masks.
    pub fn pairs(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        let total = 3u64.pow(self.n as u32);
        for mut code in 0..total {
            let (mut s, mut t) = (0u64, 0u64);
            for x in 0..self.n {
                match code % 3 {
                    1 => s |= 1 << x,
                    2 => t |= 1 << x,
                    _ => {}
                }
                code /= 3;
            }
            out.push((s, t));
        }
        out
    }

    /// Least violating pair under (|S| + |T|, S, T) with sets ordered by size
    /// and then lexicographically.
    pub fn minimal(&self, def: impl Fn(&Self, u64, u64) -> i64) -> Option<(Vec<usize>, Vec<usize>, i64)> {
        self.pairs()
            .into_iter()
            .filter_map(|(s, t)| {
                let d = def(self, s, t);
                (d < 0).then(|| (members(s), members(t), d))
            })
            .min_by(|a, b| {
                let key = |w: &(Vec<usize>, Vec<usize>, i64)| {
                    (w.0.len() + w.1.len(), w.0.len(), w.0.clone(), w.1.len(), w.1.clone())
                };
                key(a).cmp(&key(b))
            })
    }

    /// Whether some `h` in `{0, 1/2, 1}^E` has `g <= d^h <= f` (and `h = 1`
    /// on `H` when `forced`). Weights are doubled to stay integral.
    pub fn half_integral_exists(&self, forced: bool) -> bool {
        let m = self.edges.len();
        let mut weights = vec![0i64; m];
        let mut degree = vec![0i64; self.n];
        loop {
            let ok = (0..m).all(|i| !forced || !self.in_h[i] || weights[i] == 2)
                && (0..self.n).all(|x| 2 * self.g[x] <= degree[x] && degree[x] <= 2 * self.f[x]);
            if ok {
                return true;
            }
            // Odometer over {0, 1, 2}^m.
            let mut i = 0;
            loop {
                if i == m {
                    return false;
                }
                let (u, v) = self.edges[i];
                if weights[i] < 2 {
                    weights[i] += 1;
                    degree[u] += 1;
                    degree[v] += 1;
                    break;
                }
                weights[i] = 0;
                degree[u] -= 2;
                degree[v] -= 2;
                i += 1;
            }
        }
    }

    /// Checks a factor against `[g, f]`, the `{0, 1/2, 1}` range and, when
    /// `forced`, `h = 1` on `H`.
    pub fn accepts(&self, factor: &FractionalFactor, forced: bool) -> Result<(), String> {
        if factor.edges() != self.edges.as_slice() {
            return Err("edge list differs".into());
        }
        let mut degree = vec![0i64; self.n];
        for (i, (&(u, v), w)) in self.edges.iter().zip(factor.weights()).enumerate() {
            let doubled = w * 2;
            if !doubled.is_integer() || *doubled.numer() < 0 || *doubled.numer() > 2 {
                return Err(format!("edge {i} has weight {w}"));
            }
            if forced && self.in_h[i] && *doubled.numer() != 2 {
                return Err(format!("forced edge {i} has weight {w}"));
            }
            degree[u] += doubled.numer();
            degree[v] += doubled.numer();
        }
        for x in 0..self.n {
            if degree[x] < 2 * self.g[x] || degree[x] > 2 * self.f[x] {
                return Err(format!("vertex {x} has doubled degree {}", degree[x]));
            }
        }
        Ok(())
    }
}

pub fn members(mask: u64) -> Vec<usize> {
    (0..64).filter(|x| mask >> x & 1 == 1).collect()
}

pub fn mask(set: &VertexSet) -> u64 {
    set.members().iter().map(|&x| 1u64 << x).sum()
}

pub fn witness_tuple(w: &Witness) -> (Vec<usize>, Vec<usize>, i64) {
    (w.s.members().to_vec(), w.t.members().to_vec(), w.deficiency)
}

/// Every labeled simple graph on `n` vertices.
pub fn labeled_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0..1u64 << pairs.len())
        .map(|choice| {
            let edges = pairs.iter().enumerate().filter(|(i, _)| choice >> i & 1 == 1).map(|(_, &e)| e);
            Graph::new(n, edges).unwrap()
        })
        .collect()
}

/// `G(n, 1/2)` from `rng`.
pub fn coin_graph(n: usize, rng: &mut SplitMix64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_u64() >> 63 == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Uniform `1 <= g <= f <= max(d, 1)`.
pub fn positive_bounds(graph: &Graph, rng: &mut SplitMix64) -> (VertexFunc, VertexFunc) {
    let (mut g, mut f) = (Vec::new(), Vec::new());
    for x in 0..graph.vertex_count() {
        let top = graph.degree(x).max(1) as u64;
        let a = rng.between(1, top);
        let b = rng.between(1, top);
        g.push(a.min(b) as u32);
        f.push(a.max(b) as u32);
    }
    (VertexFunc::new(g), VertexFunc::new(f))
}

/// Each edge joins `H` with probability 1/2.
pub fn coin_subgraph(graph: &Graph, rng: &mut SplitMix64) -> EdgeSubgraph {
    EdgeSubgraph::new(graph, (0..graph.edge_count()).filter(|_| rng.next_u64() >> 63 == 1)).unwrap()
}
