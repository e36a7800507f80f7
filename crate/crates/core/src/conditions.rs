//! Deficiency functions and the checkers built on them.
//!
//! Every checker reports the first violating pair `(S, T)` under the global
//! pair order: total size `|S| + |T|`, then `S`, then `T`, with vertex sets
//! compared by cardinality and then lexicographically.
//!
//! All deficiencies used here are additive in `T` once `S` is fixed:
//! `D(S, T) = base(S) + sum_{x in T} c_S(x)`. The full checkers evaluate every
//! disjoint pair; the canonical checkers evaluate only `T = {x : c_S(x) < 0}`,
//! which minimizes `D(S, .)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    deg_after_removal, edges_between, func_sum, EdgeSubgraph, Graph, VertexFunc, VertexSet,
};

/// Hard limit of the bitmask representation used by the enumerators.
pub const MAX_MASK_VERTICES: usize = 63;

/// Size limits for the exponential enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guards {
    pub max_vertices: usize,
    /// Limit on disjoint pairs visited by full enumeration (there are `3^n`).
    pub max_pairs: u128,
    /// Limit on the number of integer functions `r` in a box `[g, f]`.
    pub max_r_functions: u128,
}

impl Default for Guards {
    fn default() -> Self {
        Self {
            max_vertices: 16,
            max_pairs: 3u128.pow(16),
            max_r_functions: 1 << 20,
        }
    }
}

impl Guards {
    pub(crate) fn check_vertices(&self, n: usize) -> Result<()> {
        let limit = self.max_vertices.min(MAX_MASK_VERTICES);
        if n > limit {
            return Err(Error::Guard {
                what: "vertex count",
                needed: n as u128,
                limit: limit as u128,
            });
        }
        Ok(())
    }

    fn check_pairs(&self, n: usize) -> Result<()> {
        self.check_vertices(n)?;
        let needed = 3u128.pow(n as u32);
        if needed > self.max_pairs {
            return Err(Error::Guard {
                what: "disjoint pairs",
                needed,
                limit: self.max_pairs,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOptions {
    /// Accept zero values of `g` and `f`; by default both must be positive.
    pub allow_zero: bool,
    pub guards: Guards,
}

impl CheckOptions {
    pub fn allowing_zero() -> Self {
        Self {
            allow_zero: true,
            ..Self::default()
        }
    }
}

/// A disjoint pair `(S, T)` together with the value of the checked quantity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub s: VertexSet,
    pub t: VertexSet,
    pub deficiency: i64,
}

impl Witness {
    /// Key of the global pair order.
    pub fn order_key(&self) -> (usize, &VertexSet, &VertexSet) {
        (self.s.len() + self.t.len(), &self.s, &self.t)
    }
}

/// Which condition produced a [`CheckReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckMode {
    /// Existence, one canonical `T` per `S`.
    ExistsCanonical,
    /// Existence, every disjoint pair.
    ExistsFull,
    /// All factors including `H`, every disjoint pair.
    AllFull,
    /// All factors with `E(H)` empty, canonical `T` built from `f`.
    AllCanonicalNoH,
    /// All factors including `H`, canonical `T` built from `f` and `e_H(S, x)`.
    AllCanonical,
    /// Pairwise degree-product test with a nonempty `H`.
    PairwiseWithH,
    /// Pairwise degree-product test with `E(H)` empty.
    Pairwise,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub pairs_examined: u64,
    pub mode: CheckMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExistsMode {
    Canonical,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AllMode {
    Full,
    /// Canonical `T` with `E(H)` empty; rejects a nonempty `H`.
    CanonicalNoH,
    /// Canonical `T` accounting for `H`. Not a stated characterization on its
    /// own; it is cross-checked against [`AllMode::Full`] in the tests.
    Canonical,
}

pub(crate) fn validate_bounds(
    graph: &Graph,
    g: &VertexFunc,
    f: &VertexFunc,
    allow_zero: bool,
) -> Result<()> {
    g.check_length(graph)?;
    f.check_length(graph)?;
    for x in 0..graph.vertex_count() {
        if g.get(x) > f.get(x) {
            return Err(Error::BoundsOrder {
                vertex: x,
                g: g.get(x),
                f: f.get(x),
            });
        }
        if !allow_zero && g.get(x) == 0 {
            return Err(Error::NotPositive { vertex: x, role: "g" });
        }
    }
    Ok(())
}

fn validate_pair(graph: &Graph, s: &VertexSet, t: &VertexSet) -> Result<()> {
    s.check_within(graph.vertex_count())?;
    t.check_within(graph.vertex_count())?;
    if let Some(x) = s.common(t) {
        return Err(Error::NotDisjoint(x));
    }
    Ok(())
}

/// `f(S) + d_{G-S}(T) - g(T)`. Negative exactly when `(S, T)` certifies
/// that no fractional `(g, f)`-factor exists.
pub fn deficiency_frac(
    graph: &Graph,
    g: &VertexFunc,
    f: &VertexFunc,
    s: &VertexSet,
    t: &VertexSet,
) -> Result<i64> {
    validate_bounds(graph, g, f, true)?;
    validate_pair(graph, s, t)?;
    Ok(func_sum(f, s) + deg_after_removal(graph, s, t)? - func_sum(g, t))
}

/// `g(S) + d_{G-S}(T) - f(T) - d_H(S) + e_H(S, T)`. Negative exactly when
/// `(S, T)` certifies that some `r` in `[g, f]` has no fractional `r`-factor
/// with `h = 1` on `E(H)`. With `E(H)` empty this is `g(S) + d_{G-S}(T) - f(T)`.
pub fn deficiency_all(
    graph: &Graph,
    g: &VertexFunc,
    f: &VertexFunc,
    sub: &EdgeSubgraph,
    s: &VertexSet,
    t: &VertexSet,
) -> Result<i64> {
    validate_bounds(graph, g, f, true)?;
    validate_pair(graph, s, t)?;
    let d_h = sub.degree_func();
    Ok(func_sum(g, s) + deg_after_removal(graph, s, t)? - func_sum(f, t) - func_sum(&d_h, s)
        + edges_between(sub, s, t)?)
}

/// `{x not in S : d_{G-S}(x) < phi(x)}`.
#[allow(non_snake_case)]
pub fn canonical_T(graph: &Graph, phi: &VertexFunc, s: &VertexSet) -> Result<VertexSet> {
    phi.check_length(graph)?;
    s.check_within(graph.vertex_count())?;
    let mut members = Vec::new();
    for x in (0..graph.vertex_count()).filter(|&x| !s.contains(x)) {
        let single = VertexSet::singleton(x);
        if deg_after_removal(graph, s, &single)? < phi.at(x) {
            members.push(x);
        }
    }
    Ok(VertexSet::new(members))
}

/// Bitmask view of an instance whose deficiency is additive in `T`.
pub(crate) struct Additive {
    n: usize,
    adjacency: Vec<u64>,
    sub_adjacency: Vec<u64>,
    /// Per-vertex weight summed over `S` for the base term.
    s_weight: Vec<i64>,
    /// Per-vertex weight subtracted for membership in `T`.
    t_weight: Vec<i64>,
    /// Whether `e_H(S, x)` enters the `T` contribution.
    count_sub: bool,
}

impl Additive {
    fn masks(graph: &Graph, sub: Option<&EdgeSubgraph>) -> (Vec<u64>, Vec<u64>) {
        let n = graph.vertex_count();
        let mut adjacency = vec![0u64; n];
        for &(u, v) in graph.edges() {
            adjacency[u] |= 1 << v;
            adjacency[v] |= 1 << u;
        }
        let mut sub_adjacency = vec![0u64; n];
        for &(u, v) in sub.map(EdgeSubgraph::edges).unwrap_or_default() {
            sub_adjacency[u] |= 1 << v;
            sub_adjacency[v] |= 1 << u;
        }
        (adjacency, sub_adjacency)
    }

    /// `f(S) + sum_{x in T} (d_{G-S}(x) - g(x))`.
    pub(crate) fn frac(graph: &Graph, g: &VertexFunc, f: &VertexFunc) -> Self {
        let (adjacency, sub_adjacency) = Self::masks(graph, None);
        let n = graph.vertex_count();
        Self {
            n,
            adjacency,
            sub_adjacency,
            s_weight: (0..n).map(|x| f.at(x)).collect(),
            t_weight: (0..n).map(|x| g.at(x)).collect(),
            count_sub: false,
        }
    }

    /// `g(S) - d_H(S) + sum_{x in T} (d_{G-S}(x) - f(x) + e_H(S, x))`.
    pub(crate) fn all(graph: &Graph, g: &VertexFunc, f: &VertexFunc, sub: &EdgeSubgraph) -> Self {
        let (adjacency, sub_adjacency) = Self::masks(graph, Some(sub));
        let n = graph.vertex_count();
        Self {
            n,
            adjacency,
            sub_adjacency,
            s_weight: (0..n).map(|x| g.at(x) - sub.degree(x) as i64).collect(),
            t_weight: (0..n).map(|x| f.at(x)).collect(),
            count_sub: true,
        }
    }

    fn base(&self, s_mask: u64) -> i64 {
        iter_mask(s_mask).map(|x| self.s_weight[x]).sum()
    }

    fn contribution(&self, s_mask: u64, x: usize) -> i64 {
        let mut c = (self.adjacency[x] & !s_mask).count_ones() as i64 - self.t_weight[x];
        if self.count_sub {
            c += (self.sub_adjacency[x] & s_mask).count_ones() as i64;
        }
        c
    }

    /// Walks every disjoint pair in the global order and returns the first
    /// with negative deficiency, plus the number of pairs visited.
    pub(crate) fn first_violation_full(&self) -> (Option<Witness>, u64) {
        let n = self.n;
        let mut visited = 0u64;
        let mut candidates = Vec::with_capacity(n);
        let mut contributions = Vec::with_capacity(n);
        for total in 0..=n {
            for s_size in 0..=total {
                let t_size = total - s_size;
                let mut s_combo = Combinations::new(n, s_size);
                while let Some(s_idx) = s_combo.next() {
                    let s_mask = s_idx.iter().fold(0u64, |m, &x| m | 1 << x);
                    let base = self.base(s_mask);
                    candidates.clear();
                    candidates.extend((0..n).filter(|&x| s_mask >> x & 1 == 0));
                    contributions.clear();
                    contributions.extend(candidates.iter().map(|&x| self.contribution(s_mask, x)));
                    let mut t_combo = Combinations::new(candidates.len(), t_size);
                    while let Some(t_idx) = t_combo.next() {
                        visited += 1;
                        let deficiency = base + t_idx.iter().map(|&i| contributions[i]).sum::<i64>();
                        if deficiency < 0 {
                            let witness = Witness {
                                s: VertexSet::new(s_idx.iter().copied()),
                                t: VertexSet::new(t_idx.iter().map(|&i| candidates[i])),
                                deficiency,
                            };
                            return (Some(witness), visited);
                        }
                    }
                }
            }
        }
        (None, visited)
    }

    /// Canonical check: for each `S` in the global order, evaluates
    /// `T = {x not in S : c_S(x) < 0}`. Returns the first violating canonical
    /// pair and the number of sets `S` visited.
    pub(crate) fn first_violation_canonical(&self) -> (Option<Witness>, u64) {
        let n = self.n;
        let mut visited = 0u64;
        for s_size in 0..=n {
            let mut s_combo = Combinations::new(n, s_size);
            while let Some(s_idx) = s_combo.next() {
                visited += 1;
                let s_mask = s_idx.iter().fold(0u64, |m, &x| m | 1 << x);
                let t_mask = (0..n)
                    .filter(|&x| s_mask >> x & 1 == 0 && self.contribution(s_mask, x) < 0)
                    .fold(0u64, |m, x| m | 1 << x);
                let deficiency =
                    self.base(s_mask) + iter_mask(t_mask).map(|x| self.contribution(s_mask, x)).sum::<i64>();
                if deficiency < 0 {
                    let witness = Witness {
                        s: VertexSet::from_mask(s_mask),
                        t: VertexSet::from_mask(t_mask),
                        deficiency,
                    };
                    return (Some(witness), visited);
                }
            }
        }
        (None, visited)
    }

    /// The violating pair that is first in the global order, found without
    /// visiting all `3^n` pairs.
    ///
    /// For fixed `S` the sizes `j` for which some `|T| = j` violates form an
    /// interval whose left end is the least `j` such that `base(S)` plus the
    /// `j` smallest contributions is negative. The minimal total size is taken
    /// over all `S`; ties go to the first `S`, and `T` is then the
    /// lexicographically first set of that size with a negative sum.
    pub(crate) fn minimal_violation(&self) -> Option<Witness> {
        let n = self.n;
        let mut best: Option<(usize, u64)> = None;
        for s_size in 0..=n {
            if best.is_some_and(|(size, _)| s_size >= size) {
                break;
            }
            let mut s_combo = Combinations::new(n, s_size);
            while let Some(s_idx) = s_combo.next() {
                let s_mask = s_idx.iter().fold(0u64, |m, &x| m | 1 << x);
                let base = self.base(s_mask);
                let mut sorted: Vec<i64> = (0..n)
                    .filter(|&x| s_mask >> x & 1 == 0)
                    .map(|x| self.contribution(s_mask, x))
                    .collect();
                sorted.sort_unstable();
                let mut acc = base;
                let mut least = (acc < 0).then_some(0);
                for (j, c) in sorted.iter().enumerate() {
                    if least.is_some() {
                        break;
                    }
                    acc += c;
                    if acc < 0 {
                        least = Some(j + 1);
                    }
                }
                if let Some(j) = least {
                    let size = s_size + j;
                    if best.is_none_or(|(b, _)| size < b) {
                        best = Some((size, s_mask));
                    }
                }
            }
        }
        let (size, s_mask) = best?;
        let t_size = size - s_mask.count_ones() as usize;
        let candidates: Vec<usize> = (0..n).filter(|&x| s_mask >> x & 1 == 0).collect();
        let contributions: Vec<i64> = candidates.iter().map(|&x| self.contribution(s_mask, x)).collect();
        let base = self.base(s_mask);
        let min_tail = |from: usize, count: usize| -> i64 {
            let mut tail = contributions[from..].to_vec();
            tail.sort_unstable();
            tail[..count].iter().sum()
        };
        let mut chosen = Vec::with_capacity(t_size);
        let mut acc = base;
        let mut start = 0;
        for picked in 0..t_size {
            let remaining = t_size - picked - 1;
            let i = (start..candidates.len() - remaining)
                .find(|&i| acc + contributions[i] + min_tail(i + 1, remaining) < 0)
                .expect("a violating completion exists by choice of size");
            acc += contributions[i];
            chosen.push(candidates[i]);
            start = i + 1;
        }
        Some(Witness {
            s: VertexSet::from_mask(s_mask),
            t: VertexSet::new(chosen),
            deficiency: acc,
        })
    }
}

fn iter_mask(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&x| mask >> x & 1 == 1)
}

/// Lexicographic `k`-combinations of `0..n`, yielded as sorted index slices.
pub(crate) struct Combinations {
    n: usize,
    idx: Vec<usize>,
    started: bool,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            idx: (0..k).collect(),
            started: false,
        }
    }

    pub(crate) fn next(&mut self) -> Option<&[usize]> {
        let k = self.idx.len();
        if !self.started {
            self.started = true;
            return (k <= self.n).then_some(&self.idx[..]);
        }
        let i = (0..k).rev().find(|&i| self.idx[i] < self.n - k + i)?;
        self.idx[i] += 1;
        for j in i + 1..k {
            self.idx[j] = self.idx[j - 1] + 1;
        }
        Some(&self.idx[..])
    }
}

/// Minimal witness against the existence of a fractional `(g, f)`-factor.
pub fn minimal_witness_frac(
    graph: &Graph,
    g: &VertexFunc,
    f: &VertexFunc,
    guards: &Guards,
) -> Result<Option<Witness>> {
    validate_bounds(graph, g, f, true)?;
    guards.check_vertices(graph.vertex_count())?;
    Ok(Additive::frac(graph, g, f).minimal_violation())
}

/// Minimal witness against all fractional `(g, f)`-factors including `H`.
pub fn minimal_witness_all(
    graph: &Graph,
    g: &VertexFunc,
    f: &VertexFunc,
    sub: &EdgeSubgraph,
    guards: &Guards,
) -> Result<Option<Witness>> {
    validate_bounds(graph, g, f, true)?;
    guards.check_vertices(graph.vertex_count())?;
    Ok(Additive::all(graph, g, f, sub).minimal_violation())
}

/// Decides whether `graph` has a fractional `(g, f)`-factor.
///
/// `Canonical` evaluates one canonical `T` per `S` and, on failure, reports
/// the minimal witness over all pairs; `Full` walks all `3^n` pairs.
pub fn check_exists(
    graph: &Graph,
    g: &VertexFunc,
    f: &VertexFunc,
    mode: ExistsMode,
    options: &CheckOptions,
) -> Result<CheckReport> {
    validate_bounds(graph, g, f, options.allow_zero)?;
    let additive = Additive::frac(graph, g, f);
    Ok(match mode {
        ExistsMode::Full => {
            options.guards.check_pairs(graph.vertex_count())?;
            let (witness, visited) = additive.first_violation_full();
            report(witness, visited, CheckMode::ExistsFull)
        }
        ExistsMode::Canonical => {
            options.guards.check_vertices(graph.vertex_count())?;
            canonical_report(&additive, CheckMode::ExistsCanonical)
        }
    })
}

/// Decides whether `graph` admits all fractional `(g, f)`-factors including `H`.
pub fn check_all_including(
    graph: &Graph,
    g: &VertexFunc,
    f: &VertexFunc,
    sub: &EdgeSubgraph,
    mode: AllMode,
    options: &CheckOptions,
) -> Result<CheckReport> {
    validate_bounds(graph, g, f, options.allow_zero)?;
    let additive = Additive::all(graph, g, f, sub);
    Ok(match mode {
        AllMode::Full => {
            options.guards.check_pairs(graph.vertex_count())?;
            let (witness, visited) = additive.first_violation_full();
            report(witness, visited, CheckMode::AllFull)
        }
        AllMode::CanonicalNoH => {
            if !sub.is_empty() {
                return Err(Error::NonEmptySubgraph(sub.len()));
            }
            options.guards.check_vertices(graph.vertex_count())?;
            canonical_report(&additive, CheckMode::AllCanonicalNoH)
        }
        AllMode::Canonical => {
            options.guards.check_vertices(graph.vertex_count())?;
            canonical_report(&additive, CheckMode::AllCanonical)
        }
    })
}

fn report(witness: Option<Witness>, visited: u64, mode: CheckMode) -> CheckReport {
    CheckReport {
        holds: witness.is_none(),
        witness,
        pairs_examined: visited,
        mode,
    }
}

fn canonical_report(additive: &Additive, mode: CheckMode) -> CheckReport {
    let (violation, visited) = additive.first_violation_canonical();
    let witness = violation.map(|_| {
        additive
            .minimal_violation()
            .expect("a violating canonical pair implies a minimal one")
    });
    report(witness, visited, mode)
}

/// Pairwise degree-product test: for every ordered pair `(x, y)`,
/// `(g(x) - d_H(x)) d_G(y) >= (d_G(x) - d_H(x)) f(y)`.
///
/// Requires `d_H(x) <= g(x) <= f(x) <= d_G(x)` everywhere; a violation of that
/// chain is an error, not a failed test. On failure the witness holds
/// `S = {x}`, `T = {y}` and the (negative) difference of the two sides.
pub fn check_sufficient(
    graph: &Graph,
    g: &VertexFunc,
    f: &VertexFunc,
    sub: &EdgeSubgraph,
) -> Result<CheckReport> {
    g.check_length(graph)?;
    f.check_length(graph)?;
    let n = graph.vertex_count();
    for x in 0..n {
        let (d_h, d_g) = (sub.degree(x) as i64, graph.degree(x) as i64);
        let detail = if d_h > g.at(x) {
            Some(format!("d_H = {d_h} exceeds g = {}", g.get(x)))
        } else if g.get(x) > f.get(x) {
            Some(format!("g = {} exceeds f = {}", g.get(x), f.get(x)))
        } else if f.at(x) > d_g {
            Some(format!("f = {} exceeds d_G = {d_g}", f.get(x)))
        } else {
            None
        };
        if let Some(detail) = detail {
            return Err(Error::Hypothesis { vertex: x, detail });
        }
    }
    let mode = if sub.is_empty() {
        CheckMode::Pairwise
    } else {
        CheckMode::PairwiseWithH
    };
    let mut visited = 0u64;
    for x in 0..n {
        let d_hx = sub.degree(x) as i64;
        let slack_x = g.at(x) - d_hx;
        let room_x = graph.degree(x) as i64 - d_hx;
        for y in 0..n {
            visited += 1;
            let difference = slack_x * graph.degree(y) as i64 - room_x * f.at(y);
            if difference < 0 {
                let witness = Witness {
                    s: VertexSet::singleton(x),
                    t: VertexSet::singleton(y),
                    deficiency: difference,
                };
                return Ok(report(Some(witness), visited, mode));
            }
        }
    }
    Ok(report(None, visited, mode))
}
