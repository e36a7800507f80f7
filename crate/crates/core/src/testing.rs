//! Shared helpers for unit tests.

use proptest::prelude::*;

use crate::graph::{EdgeSubgraph, Graph, VertexFunc, VertexSet};

/// Every disjoint pair `(S, T)` on `0..n`, by base-3 labelling of the vertices.
pub fn all_disjoint_pairs(n: usize) -> Vec<(VertexSet, VertexSet)> {
    (0..3usize.pow(n as u32))
        .map(|code| {
            let mut rest = code;
            let (mut s, mut t) = (Vec::new(), Vec::new());
            for x in 0..n {
                match rest % 3 {
                    1 => s.push(x),
                    2 => t.push(x),
                    _ => {}
                }
                rest /= 3;
            }
            (VertexSet::new(s), VertexSet::new(t))
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub g: VertexFunc,
    pub f: VertexFunc,
    pub sub: EdgeSubgraph,
}

/// Random graph on at most `max_n` vertices with `0 <= g <= f <= max_value`
/// and a random edge subgraph.
pub fn arb_instance(max_n: usize, max_value: u32) -> impl Strategy<Value = Instance> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs = n * (n - 1) / 2;
        (
            prop::collection::vec(any::<bool>(), pairs),
            prop::collection::vec((0..=max_value, 0..=max_value), n),
            prop::collection::vec(prop::bool::weighted(0.3), pairs),
        )
            .prop_map(move |(keep, bounds, in_sub)| {
                let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                let edges: Vec<_> = all.zip(&keep).filter(|(_, &k)| k).map(|(e, _)| e).collect();
                let graph = Graph::new(n, edges).unwrap();
                let sub = EdgeSubgraph::new(&graph, (0..graph.edge_count()).filter(|&i| in_sub[i])).unwrap();
                let g = VertexFunc::new(bounds.iter().map(|&(a, b)| a.min(b)).collect());
                let f = VertexFunc::new(bounds.iter().map(|&(a, b)| a.max(b)).collect());
                Instance { graph, g, f, sub }
            })
    })
}
