//! Simple undirected graphs, vertex functions, edge subgraphs and vertex sets,
//! together with the text formats they are read from and the set/degree
//! arithmetic the factor conditions are phrased in.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, ParseErrorKind, Result};

/// A finite simple undirected graph on vertices `0..n`.
///
/// Edges are stored as `(u, v)` with `u < v`, in insertion (file) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    index: HashMap<(usize, usize), usize>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut graph = Self::empty(n);
        for (u, v) in edges {
            graph.push_edge(u, v).map_err(Error::InvalidGraph)?;
        }
        Ok(graph)
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
            index: HashMap::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut graph = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                graph.push_edge(u, v).expect("complete graph edges are distinct");
            }
        }
        graph
    }

    /// Cycle `0-1-...-(n-1)-0`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        let edges = (0..n).map(|i| (i, (i + 1) % n));
        Self::new(n, edges).expect("cycle edges are distinct")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("path edges are distinct")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star edges are distinct")
    }

    fn push_edge(&mut self, u: usize, v: usize) -> Result<(), ParseErrorKind> {
        if u >= self.n {
            return Err(ParseErrorKind::OutOfRange(u));
        }
        if v >= self.n {
            return Err(ParseErrorKind::OutOfRange(v));
        }
        if u == v {
            return Err(ParseErrorKind::Loop(u));
        }
        let key = (u.min(v), u.max(v));
        if self.index.contains_key(&key) {
            return Err(ParseErrorKind::DuplicateEdge(key.0, key.1));
        }
        self.index.insert(key, self.edges.len());
        self.edges.push(key);
        self.adjacency[u].push(v);
        self.adjacency[v].push(u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.adjacency[x]
    }

    pub fn degree(&self, x: usize) -> usize {
        self.adjacency[x].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// Position of edge `{u, v}` in the edge list, in either orientation.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    /// Degree sequence as a vertex function.
    pub fn degree_func(&self) -> VertexFunc {
        VertexFunc::with_role(self.degrees().into_iter().map(to_u32).collect(), Role::Derived)
    }

    /// Serialize in the graph file format.
    pub fn to_text(&self) -> String {
        let mut out = format!("p {} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("e {u} {v}\n"));
        }
        out
    }
}

fn to_u32(x: usize) -> u32 {
    u32::try_from(x).expect("degree fits in u32")
}

/// Which role a vertex function plays in an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    G,
    F,
    R,
    RPrime,
    Derived,
}

/// A non-negative integer value per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexFunc {
    values: Vec<u32>,
    role: Role,
}

impl VertexFunc {
    pub fn new(values: Vec<u32>) -> Self {
        Self::with_role(values, Role::Derived)
    }

    pub fn with_role(values: Vec<u32>, role: Role) -> Self {
        Self { values, role }
    }

    pub fn constant(n: usize, value: u32) -> Self {
        Self::new(vec![value; n])
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn set_role(mut self, role: Role) -> Self {
        self.role = role;
        self
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn get(&self, x: usize) -> u32 {
        self.values[x]
    }

    pub(crate) fn at(&self, x: usize) -> i64 {
        i64::from(self.values[x])
    }

    /// Checks that the function covers exactly the vertices of `graph`.
    pub fn check_length(&self, graph: &Graph) -> Result<()> {
        if self.values.len() != graph.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: graph.vertex_count(),
                found: self.values.len(),
            });
        }
        Ok(())
    }

    /// Serialize in the function file format.
    pub fn to_text(&self) -> String {
        self.values
            .iter()
            .enumerate()
            .map(|(x, v)| format!("{x} {v}\n"))
            .collect()
    }
}

impl fmt::Display for VertexFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A subset of a host graph's edges, stored as positions in the host edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSubgraph {
    n: usize,
    indices: Vec<usize>,
    edges: Vec<(usize, usize)>,
    degrees: Vec<usize>,
}

impl EdgeSubgraph {
    pub fn new(host: &Graph, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        indices.sort_unstable();
        indices.dedup();
        let mut degrees = vec![0; host.vertex_count()];
        let mut edges = Vec::with_capacity(indices.len());
        for &i in &indices {
            let &(u, v) = host.edges().get(i).ok_or(Error::EdgeOutOfRange(i))?;
            degrees[u] += 1;
            degrees[v] += 1;
            edges.push((u, v));
        }
        Ok(Self {
            n: host.vertex_count(),
            indices,
            edges,
            degrees,
        })
    }

    pub fn empty(host: &Graph) -> Self {
        Self::new(host, []).expect("empty subgraph is valid")
    }

    pub fn full(host: &Graph) -> Self {
        Self::new(host, 0..host.edge_count()).expect("all edge indices are valid")
    }

    /// Subgraph given by endpoint pairs; each pair must be an edge of `host`.
    pub fn from_pairs(host: &Graph, pairs: &[(usize, usize)]) -> Result<Self> {
        let indices = pairs
            .iter()
            .map(|&(u, v)| {
                host.edge_index(u, v)
                    .ok_or(Error::InvalidGraph(ParseErrorKind::NoSuchEdge(u, v)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(host, indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn contains(&self, edge_index: usize) -> bool {
        self.indices.binary_search(&edge_index).is_ok()
    }

    pub fn degree(&self, x: usize) -> usize {
        self.degrees[x]
    }

    pub fn degree_func(&self) -> VertexFunc {
        VertexFunc::new(self.degrees.iter().copied().map(to_u32).collect())
    }

    /// Serialize in the subgraph file format.
    pub fn to_text(&self) -> String {
        self.edges.iter().map(|(u, v)| format!("e {u} {v}\n")).collect()
    }
}

/// A set of vertices kept sorted and duplicate-free.
///
/// Sets are totally ordered by cardinality first, then lexicographically on
/// the sorted member list. Every witness search reports the first violation
/// under this order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Self(members)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn all(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn singleton(x: usize) -> Self {
        Self(vec![x])
    }

    pub fn from_mask(mask: u64) -> Self {
        Self((0..64).filter(|&i| mask >> i & 1 == 1).collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// Bitmask form; only valid for members below 64.
    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &x| m | 1 << x)
    }

    /// Checks that all members are vertices of a graph on `n` vertices.
    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&x) if x >= n => Err(Error::VertexOutOfRange(x)),
            _ => Ok(()),
        }
    }

    /// First common member of `self` and `other`, if any.
    pub fn common(&self, other: &VertexSet) -> Option<usize> {
        self.iter().find(|&x| other.contains(x))
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// Anything that can list undirected edges: a whole graph or an edge subgraph.
pub trait EdgeSource {
    fn edge_pairs(&self) -> &[(usize, usize)];
}

impl EdgeSource for Graph {
    fn edge_pairs(&self) -> &[(usize, usize)] {
        self.edges()
    }
}

impl EdgeSource for EdgeSubgraph {
    fn edge_pairs(&self) -> &[(usize, usize)] {
        self.edges()
    }
}

fn check_disjoint(s: &VertexSet, t: &VertexSet) -> Result<()> {
    match s.common(t) {
        Some(x) => Err(Error::NotDisjoint(x)),
        None => Ok(()),
    }
}

/// `phi(S)`: the sum of `phi` over `S`; zero on the empty set.
pub fn func_sum(phi: &VertexFunc, s: &VertexSet) -> i64 {
    s.iter().map(|x| phi.at(x)).sum()
}

/// Number of edges of `edges` with one endpoint in `s` and the other in `t`.
pub fn edges_between(edges: &impl EdgeSource, s: &VertexSet, t: &VertexSet) -> Result<i64> {
    check_disjoint(s, t)?;
    let count = edges
        .edge_pairs()
        .iter()
        .filter(|&&(u, v)| (s.contains(u) && t.contains(v)) || (s.contains(v) && t.contains(u)))
        .count();
    Ok(count as i64)
}

/// `d_{G-S}(T)`: total degree of `T` after deleting `S` and its incident edges.
pub fn deg_after_removal(graph: &Graph, s: &VertexSet, t: &VertexSet) -> Result<i64> {
    check_disjoint(s, t)?;
    let total = t
        .iter()
        .map(|x| graph.neighbors(x).iter().filter(|&&y| !s.contains(y)).count())
        .sum::<usize>();
    Ok(total as i64)
}

/// `G - E(H)`: same vertices, the edges of `H` removed, relative order kept.
pub fn remove_edges(graph: &Graph, sub: &EdgeSubgraph) -> Graph {
    let kept = graph
        .edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| !sub.contains(*i))
        .map(|(_, &e)| e);
    Graph::new(graph.vertex_count(), kept).expect("subset of a simple graph is simple")
}

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

fn parse_number<T: std::str::FromStr>(line: usize, token: &str) -> Result<T, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::at(line, ParseErrorKind::Malformed(format!("bad number {token:?}"))))
}

fn parse_edge_line(line: usize, tokens: &[&str]) -> Result<(usize, usize), ParseError> {
    match tokens {
        ["e", u, v] => Ok((parse_number(line, u)?, parse_number(line, v)?)),
        _ => Err(ParseError::at(
            line,
            ParseErrorKind::Malformed("expected \"e <u> <v>\"".into()),
        )),
    }
}

/// Reads the graph file format: `p <n> <m>` followed by `m` lines `e <u> <v>`
/// with `u < v`. Lines starting with `#` are comments.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = significant_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or(ParseError::global(ParseErrorKind::MissingHeader))?;
    let (n, m): (usize, usize) = match header.as_slice() {
        ["p", n, m] => (parse_number(header_line, n)?, parse_number(header_line, m)?),
        _ => return Err(ParseError::at(header_line, ParseErrorKind::MissingHeader)),
    };
    let mut graph = Graph::empty(n);
    for (line, tokens) in lines {
        let (u, v) = parse_edge_line(line, &tokens)?;
        if u == v && u < n {
            return Err(ParseError::at(line, ParseErrorKind::Loop(u)));
        }
        if u > v && u < n {
            return Err(ParseError::at(
                line,
                ParseErrorKind::Malformed(format!("endpoints must satisfy u < v, got {u} {v}")),
            ));
        }
        graph.push_edge(u, v).map_err(|kind| ParseError::at(line, kind))?;
    }
    if graph.edge_count() != m {
        return Err(ParseError::global(ParseErrorKind::EdgeCount {
            expected: m,
            found: graph.edge_count(),
        }));
    }
    Ok(graph)
}

/// Reads the function file format: one `<vertex> <value>` line per vertex.
pub fn parse_vertex_func(text: &str, graph: &Graph) -> Result<VertexFunc, ParseError> {
    let n = graph.vertex_count();
    let mut values: Vec<Option<u32>> = vec![None; n];
    for (line, tokens) in significant_lines(text) {
        let [x, value] = tokens.as_slice() else {
            return Err(ParseError::at(
                line,
                ParseErrorKind::Malformed("expected \"<vertex> <value>\"".into()),
            ));
        };
        let x: usize = parse_number(line, x)?;
        if x >= n {
            return Err(ParseError::at(line, ParseErrorKind::OutOfRange(x)));
        }
        if value.starts_with('-') {
            return Err(ParseError::at(line, ParseErrorKind::NegativeValue(x)));
        }
        let value: u32 = parse_number(line, value)?;
        if values[x].replace(value).is_some() {
            return Err(ParseError::at(line, ParseErrorKind::DuplicateVertex(x)));
        }
    }
    values
        .into_iter()
        .enumerate()
        .map(|(x, v)| v.ok_or(ParseError::global(ParseErrorKind::MissingVertex(x))))
        .collect::<Result<Vec<_>, _>>()
        .map(VertexFunc::new)
}

/// Reads the subgraph file format: zero or more `e <u> <v>` lines naming
/// edges of `graph`.
pub fn parse_subgraph(text: &str, graph: &Graph) -> Result<EdgeSubgraph, ParseError> {
    let mut indices = Vec::new();
    for (line, tokens) in significant_lines(text) {
        let (u, v) = parse_edge_line(line, &tokens)?;
        let index = graph
            .edge_index(u, v)
            .ok_or(ParseError::at(line, ParseErrorKind::NoSuchEdge(u, v)))?;
        if indices.contains(&index) {
            return Err(ParseError::at(line, ParseErrorKind::DuplicateEdge(u.min(v), u.max(v))));
        }
        indices.push(index);
    }
    Ok(EdgeSubgraph::new(graph, indices).expect("indices come from the graph"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> VertexSet {
        VertexSet::new(xs.iter().copied())
    }

    #[test]
    fn parses_small_graphs() {
        let k2 = parse_graph("p 2 1\ne 0 1\n").unwrap();
        assert_eq!(k2.edges(), &[(0, 1)]);

        let empty = parse_graph("# four isolated vertices\np 4 0\n").unwrap();
        assert_eq!((empty.vertex_count(), empty.edge_count()), (4, 0));

        let k3 = parse_graph("p 3 3\ne 0 1\ne 1 2\ne 0 2\n").unwrap();
        assert_eq!(k3.edges(), &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(k3.degrees(), vec![2, 2, 2]);
    }

    #[test]
    fn graph_errors_carry_line_numbers() {
        let err = parse_graph("p 3 1\ne 1 1\n").unwrap_err();
        assert_eq!(err, ParseError::at(2, ParseErrorKind::Loop(1)));

        let err = parse_graph("p 3 2\ne 0 1\n\ne 0 1\n").unwrap_err();
        assert_eq!(err, ParseError::at(4, ParseErrorKind::DuplicateEdge(0, 1)));

        let err = parse_graph("p 3 1\ne 0 3\n").unwrap_err();
        assert_eq!(err, ParseError::at(2, ParseErrorKind::OutOfRange(3)));

        let err = parse_graph("p 3 1\nx 0 1\n").unwrap_err();
        assert_eq!(err.line, Some(2));

        let err = parse_graph("p 3 2\ne 0 1\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::EdgeCount { expected: 2, found: 1 });

        assert!(parse_graph("").is_err());
        assert!(parse_graph("p 3 1\ne 2 1\n").is_err());
    }

    #[test]
    fn parses_vertex_functions() {
        let k2 = Graph::complete(2);
        assert_eq!(parse_vertex_func("0 1\n1 1\n", &k2).unwrap().values(), &[1, 1]);

        let star = Graph::star(3);
        let phi = parse_vertex_func("0 2\n1 1\n2 1\n3 1\n", &star).unwrap();
        assert_eq!(phi.values(), &[2, 1, 1, 1]);

        let err = parse_vertex_func("0 1\n", &k2).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::MissingVertex(1));
        assert_eq!(err.to_string(), "vertex 1 uncovered");

        let err = parse_vertex_func("0 1\n0 2\n", &k2).unwrap_err();
        assert_eq!(err, ParseError::at(2, ParseErrorKind::DuplicateVertex(0)));

        let err = parse_vertex_func("0 -1\n1 1\n", &k2).unwrap_err();
        assert_eq!(err, ParseError::at(1, ParseErrorKind::NegativeValue(0)));
    }

    #[test]
    fn parses_subgraphs() {
        let k3 = Graph::complete(3);
        let h = parse_subgraph("e 0 1\n", &k3).unwrap();
        assert_eq!(h.indices(), &[k3.edge_index(0, 1).unwrap()]);

        assert!(parse_subgraph("", &k3).unwrap().is_empty());

        let err = parse_subgraph("e 0 3\n", &k3).unwrap_err();
        assert_eq!(err, ParseError::at(1, ParseErrorKind::NoSuchEdge(0, 3)));

        let err = parse_subgraph("e 0 1\ne 1 0\n", &k3).unwrap_err();
        assert_eq!(err.line, Some(2));
    }

    #[test]
    fn func_sum_examples() {
        assert_eq!(func_sum(&VertexFunc::constant(3, 1), &VertexSet::empty()), 0);
        let k3 = Graph::complete(3);
        assert_eq!(func_sum(&k3.degree_func(), &VertexSet::all(3)), 6);
        let phi = VertexFunc::new(vec![2, 1, 1, 1]);
        assert_eq!(func_sum(&phi, &set(&[1, 2, 3])), 3);
    }

    #[test]
    fn edges_between_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(edges_between(&k3, &set(&[0]), &set(&[1, 2])).unwrap(), 2);
        assert_eq!(edges_between(&k3, &VertexSet::empty(), &set(&[1, 2])).unwrap(), 0);

        let star = Graph::star(3);
        let h = EdgeSubgraph::from_pairs(&star, &[(0, 1)]).unwrap();
        assert_eq!(edges_between(&h, &set(&[0]), &set(&[1, 2, 3])).unwrap(), 1);

        assert_eq!(
            edges_between(&k3, &set(&[0, 1]), &set(&[1])),
            Err(Error::NotDisjoint(1))
        );
    }

    #[test]
    fn deg_after_removal_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(deg_after_removal(&k3, &set(&[0]), &set(&[1, 2])).unwrap(), 2);
        let star = Graph::star(3);
        assert_eq!(deg_after_removal(&star, &set(&[0]), &set(&[1, 2, 3])).unwrap(), 0);
        let c5 = Graph::cycle(5);
        assert_eq!(deg_after_removal(&c5, &VertexSet::empty(), &VertexSet::all(5)).unwrap(), 10);
        assert!(deg_after_removal(&k3, &set(&[0]), &set(&[0])).is_err());
    }

    #[test]
    fn remove_edges_examples() {
        let k2 = Graph::complete(2);
        let bare = remove_edges(&k2, &EdgeSubgraph::full(&k2));
        assert_eq!((bare.vertex_count(), bare.edge_count()), (2, 0));

        let c4 = Graph::cycle(4);
        let h = EdgeSubgraph::from_pairs(&c4, &[(0, 1)]).unwrap();
        assert_eq!(remove_edges(&c4, &h).edges(), &[(1, 2), (2, 3), (0, 3)]);

        assert_eq!(remove_edges(&c4, &EdgeSubgraph::empty(&c4)), c4);
    }

    #[test]
    fn vertex_set_order_is_cardinality_then_lex() {
        let mut sets = vec![set(&[1, 2]), set(&[0, 3]), set(&[2]), VertexSet::empty(), set(&[0, 1, 2])];
        sets.sort();
        assert_eq!(
            sets,
            vec![VertexSet::empty(), set(&[2]), set(&[0, 3]), set(&[1, 2]), set(&[0, 1, 2])]
        );
    }

    #[test]
    fn text_formats_round_trip() {
        let c4 = Graph::cycle(4);
        assert_eq!(parse_graph(&c4.to_text()).unwrap(), c4);
        let phi = VertexFunc::new(vec![3, 0, 1, 2]);
        assert_eq!(parse_vertex_func(&phi.to_text(), &c4).unwrap(), phi);
        let h = EdgeSubgraph::from_pairs(&c4, &[(2, 3), (0, 1)]).unwrap();
        assert_eq!(parse_subgraph(&h.to_text(), &c4).unwrap(), h);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn graph_and_labels() -> impl Strategy<Value = (Graph, Vec<u8>, Vec<bool>)> {
            (1usize..8).prop_flat_map(|n| {
                let pairs = n * (n - 1) / 2;
                (
                    prop::collection::vec(any::<bool>(), pairs),
                    prop::collection::vec(0u8..3, n),
                    prop::collection::vec(any::<bool>(), pairs),
                )
                    .prop_map(move |(keep, labels, in_h)| {
                        let all: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
                        let edges = all.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
                        let graph = Graph::new(n, edges).unwrap();
                        let m = graph.edge_count();
                        (graph, labels, in_h[..m].to_vec())
                    })
            })
        }

        proptest! {
            #[test]
            fn set_arithmetic_identities((graph, labels, in_h) in graph_and_labels()) {
                let s = VertexSet::new((0..labels.len()).filter(|&x| labels[x] == 1));
                let t = VertexSet::new((0..labels.len()).filter(|&x| labels[x] == 2));
                let degrees = graph.degree_func();

                prop_assert_eq!(func_sum(&degrees, &VertexSet::all(graph.vertex_count())),
                    2 * graph.edge_count() as i64);

                let d_rest = deg_after_removal(&graph, &s, &t).unwrap();
                let between = edges_between(&graph, &s, &t).unwrap();
                prop_assert_eq!(d_rest, func_sum(&degrees, &t) - between);
                prop_assert_eq!(between, edges_between(&graph, &t, &s).unwrap());

                let union = VertexSet::new(s.iter().chain(t.iter()));
                prop_assert_eq!(func_sum(&degrees, &union), func_sum(&degrees, &s) + func_sum(&degrees, &t));

                let h = EdgeSubgraph::new(&graph, (0..graph.edge_count()).filter(|&i| in_h[i])).unwrap();
                let rest = remove_edges(&graph, &h);
                for x in 0..graph.vertex_count() {
                    prop_assert!(h.degree(x) <= graph.degree(x));
                    prop_assert_eq!(rest.degree(x), graph.degree(x) - h.degree(x));
                }
            }
        }
    }
}
