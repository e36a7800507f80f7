//! Constructive side: explicit fractional factors, or a witness that none exist.
//!
//! A fractional `(g, f)`-factor is found as an integral circulation on the
//! bipartite double cover of the graph. Every vertex `x` is split into an
//! out-copy `x'` and an in-copy `x''`; every edge `{u, v}` becomes two unit
//! arcs `u' -> v''` and `v' -> u''`. The source feeds each `x'` and each `x''`
//! drains to the sink, both with bounds `[g(x), f(x)]`. Setting
//! `h(uv) = (flow(u'v'') + flow(v'u'')) / 2` gives a factor whose weighted
//! degree at `x` is the mean of the two vertex-arc flows, and any fractional
//! factor yields a fractional circulation by putting `h` on both images, so
//! an integral one exists too. Every `h` value is therefore a multiple of 1/2.

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conditions::{minimal_witness_frac, validate_bounds, Guards, Witness};
use crate::error::{Error, Result};
use crate::flow::BoundedNetwork;
use crate::graph::{remove_edges, EdgeSubgraph, Graph, Role, VertexFunc, VertexSet};

pub type Rational = Ratio<i64>;

/// Edge weights `h: E(G) -> [0, 1]`, one per host edge in host order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalFactor {
    edges: Vec<(usize, usize)>,
    weights: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorViolation {
    #[error("factor has {found} weights, graph has {expected} edges")]
    EdgeCount { expected: usize, found: usize },
    #[error("edge {0} differs from the host graph")]
    HostMismatch(usize),
    #[error("h on edge {0} lies outside [0, 1]")]
    OutOfRange(usize),
    #[error("h on edge {0} is not a multiple of 1/2")]
    NotHalfIntegral(usize),
    #[error("weighted degree {degree} at vertex {vertex} outside [{lower}, {upper}]")]
    Degree {
        vertex: usize,
        degree: Rational,
        lower: u32,
        upper: u32,
    },
    #[error("edge {0} of H does not carry h = 1")]
    NotIncluded(usize),
}

impl FractionalFactor {
    pub fn new(graph: &Graph, weights: Vec<Rational>) -> Self {
        assert_eq!(weights.len(), graph.edge_count(), "one weight per edge");
        Self {
            edges: graph.edges().to_vec(),
            weights,
        }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// Positions of the edges with `h > 0`.
    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len())
            .filter(|&i| self.weights[i] > Rational::zero())
            .collect()
    }

    /// `sum_{e in E(x)} h(e)`.
    pub fn weighted_degree(&self, x: usize) -> Rational {
        self.edges
            .iter()
            .zip(&self.weights)
            .filter(|((u, v), _)| *u == x || *v == x)
            .map(|(_, &w)| w)
            .sum()
    }

    /// Replays every constraint of a fractional `(g, f)`-factor of `graph`,
    /// plus half-integrality.
    pub fn verify(&self, graph: &Graph, g: &VertexFunc, f: &VertexFunc) -> Result<(), FactorViolation> {
        if self.weights.len() != graph.edge_count() {
            return Err(FactorViolation::EdgeCount {
                expected: graph.edge_count(),
                found: self.weights.len(),
            });
        }
        let two = Rational::from_integer(2);
        for (i, (&edge, &w)) in self.edges.iter().zip(&self.weights).enumerate() {
            if graph.edges()[i] != edge {
                return Err(FactorViolation::HostMismatch(i));
            }
            if w < Rational::zero() || w > Rational::one() {
                return Err(FactorViolation::OutOfRange(i));
            }
            if !(w * two).is_integer() {
                return Err(FactorViolation::NotHalfIntegral(i));
            }
        }
        let mut degrees = vec![Rational::zero(); graph.vertex_count()];
        for (&(u, v), &w) in self.edges.iter().zip(&self.weights) {
            degrees[u] += w;
            degrees[v] += w;
        }
        for (x, &degree) in degrees.iter().enumerate() {
            let (lower, upper) = (g.get(x), f.get(x));
            if degree < Rational::from(i64::from(lower)) || degree > Rational::from(i64::from(upper)) {
                return Err(FactorViolation::Degree {
                    vertex: x,
                    degree,
                    lower,
                    upper,
                });
            }
        }
        Ok(())
    }

    /// [`verify`](Self::verify) for an `r`-factor, plus `h = 1` on every edge of `sub`.
    pub fn verify_including(&self, graph: &Graph, r: &VertexFunc, sub: &EdgeSubgraph) -> Result<(), FactorViolation> {
        self.verify(graph, r, r)?;
        match sub.indices().iter().find(|&&i| !self.weights[i].is_one()) {
            Some(&i) => Err(FactorViolation::NotIncluded(i)),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveOutcome {
    Factor(FractionalFactor),
    Witness(Witness),
}

impl SolveOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Self::Factor(_))
    }

    pub fn factor(&self) -> Option<&FractionalFactor> {
        match self {
            Self::Factor(factor) => Some(factor),
            Self::Witness(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Self::Factor(_) => None,
            Self::Witness(witness) => Some(witness),
        }
    }
}

/// Searches for a fractional `(g, f)`-factor by flow. Never guarded.
pub fn find_factor(graph: &Graph, g: &VertexFunc, f: &VertexFunc) -> Result<Option<FractionalFactor>> {
    validate_bounds(graph, g, f, true)?;
    let n = graph.vertex_count();
    let (source, sink) = (2 * n, 2 * n + 1);
    let mut net = BoundedNetwork::new(2 * n + 2);
    for x in 0..n {
        net.add_arc(source, x, g.at(x), f.at(x));
        net.add_arc(n + x, sink, g.at(x), f.at(x));
    }
    let images: Vec<(usize, usize)> = graph
        .edges()
        .iter()
        .map(|&(u, v)| (net.add_arc(u, n + v, 0, 1), net.add_arc(v, n + u, 0, 1)))
        .collect();
    let bound: i64 = (0..n).map(|x| f.at(x)).sum();
    net.add_arc(sink, source, 0, bound);
    let Some(flow) = net.feasible_circulation() else {
        return Ok(None);
    };
    let weights = images
        .iter()
        .map(|&(a, b)| Rational::new(flow[a] + flow[b], 2))
        .collect();
    Ok(Some(FractionalFactor::new(graph, weights)))
}

/// A fractional `(g, f)`-factor of `graph`, or the minimal pair `(S, T)` with
/// `f(S) + d_{G-S}(T) - g(T) < 0`.
///
/// Only the witness search is subject to `guards`.
pub fn solve_fractional_factor(
    graph: &Graph,
    g: &VertexFunc,
    f: &VertexFunc,
    guards: &Guards,
) -> Result<SolveOutcome> {
    if let Some(factor) = find_factor(graph, g, f)? {
        return Ok(SolveOutcome::Factor(factor));
    }
    let witness = minimal_witness_frac(graph, g, f, guards)?
        .expect("flow infeasibility implies a negative deficiency pair");
    Ok(SolveOutcome::Witness(witness))
}

/// `r'(x) = d_G(x) - r(x)`.
pub fn complement_func(graph: &Graph, r: &VertexFunc) -> Result<VertexFunc> {
    r.check_length(graph)?;
    let values = (0..graph.vertex_count())
        .map(|x| {
            let degree = graph.degree(x);
            (degree as u32).checked_sub(r.get(x)).ok_or(Error::ExceedsDegree {
                vertex: x,
                value: r.get(x),
                degree,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VertexFunc::with_role(values, Role::RPrime))
}

/// How [`solve_including`] reduces the forced-subgraph problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Fractional `(r - d_H)`-factor of `G - E(H)`, lifted with `h = 1` on `E(H)`.
    Direct,
    /// Fractional `(d_G - r)`-factor of `G - E(H)`, mapped back by `h -> 1 - h`.
    Complement,
}

/// A fractional `r`-factor of `graph` with `h = 1` on every edge of `sub`, or a
/// witness against it.
///
/// Witnesses are stated on the original instance: `(S, T)` satisfies
/// `deficiency_all(G, r, r, H, S, T) < 0`, which equals the deficiency of the
/// reduced instance `(G - E(H), r - d_H)`. If `r(x) < d_H(x)` somewhere the
/// witness is `({x}, {})` for the first such `x`. The complement route finds
/// its witness `(A, B)` on `(G - E(H), d_G - r)` and reports `(B, A)`; the two
/// deficiencies coincide.
pub fn solve_including(
    graph: &Graph,
    r: &VertexFunc,
    sub: &EdgeSubgraph,
    route: Route,
    guards: &Guards,
) -> Result<SolveOutcome> {
    match reduce_including(graph, r, sub, route)? {
        Reduced::Degenerate(witness) => Ok(SolveOutcome::Witness(witness)),
        Reduced::Instance { rest, bound } => match find_factor(&rest, &bound, &bound)? {
            Some(factor) => Ok(SolveOutcome::Factor(lift(graph, sub, route, &factor))),
            None => {
                let witness = minimal_witness_frac(&rest, &bound, &bound, guards)?
                    .expect("flow infeasibility implies a negative deficiency pair");
                Ok(SolveOutcome::Witness(match route {
                    Route::Direct => witness,
                    Route::Complement => Witness {
                        s: witness.t,
                        t: witness.s,
                        deficiency: witness.deficiency,
                    },
                }))
            }
        },
    }
}

/// Feasibility only, without witness search; never guarded.
pub fn including_feasible(graph: &Graph, r: &VertexFunc, sub: &EdgeSubgraph, route: Route) -> Result<bool> {
    Ok(match reduce_including(graph, r, sub, route)? {
        Reduced::Degenerate(_) => false,
        Reduced::Instance { rest, bound } => find_factor(&rest, &bound, &bound)?.is_some(),
    })
}

enum Reduced {
    Degenerate(Witness),
    Instance { rest: Graph, bound: VertexFunc },
}

fn reduce_including(graph: &Graph, r: &VertexFunc, sub: &EdgeSubgraph, route: Route) -> Result<Reduced> {
    r.check_length(graph)?;
    let complement = match route {
        Route::Complement => Some(complement_func(graph, r)?),
        Route::Direct => None,
    };
    if let Some(x) = (0..graph.vertex_count()).find(|&x| r.at(x) < sub.degree(x) as i64) {
        return Ok(Reduced::Degenerate(Witness {
            s: VertexSet::singleton(x),
            t: VertexSet::empty(),
            deficiency: r.at(x) - sub.degree(x) as i64,
        }));
    }
    let rest = remove_edges(graph, sub);
    let bound = complement.unwrap_or_else(|| {
        let values = (0..graph.vertex_count())
            .map(|x| r.get(x) - sub.degree(x) as u32)
            .collect();
        VertexFunc::with_role(values, Role::Derived)
    });
    Ok(Reduced::Instance { rest, bound })
}

fn lift(graph: &Graph, sub: &EdgeSubgraph, route: Route, reduced: &FractionalFactor) -> FractionalFactor {
    let mut rest = reduced.weights().iter();
    let weights = (0..graph.edge_count())
        .map(|i| {
            if sub.contains(i) {
                Rational::one()
            } else {
                let &w = rest.next().expect("reduced graph keeps every other edge");
                match route {
                    Route::Direct => w,
                    Route::Complement => Rational::one() - w,
                }
            }
        })
        .collect();
    FractionalFactor::new(graph, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions::{deficiency_all, deficiency_frac};

    fn ones(n: usize) -> VertexFunc {
        VertexFunc::constant(n, 1)
    }

    fn half() -> Rational {
        Rational::new(1, 2)
    }

    /// Exhaustive search over `h` in `{0, 1/2, 1}^m`.
    fn exists_half_integral(graph: &Graph, g: &VertexFunc, f: &VertexFunc) -> bool {
        let m = graph.edge_count();
        (0..3usize.pow(m as u32)).any(|code| {
            let mut twice = vec![0u32; graph.vertex_count()];
            let mut rest = code;
            for &(u, v) in graph.edges() {
                let w = (rest % 3) as u32;
                rest /= 3;
                twice[u] += w;
                twice[v] += w;
            }
            (0..graph.vertex_count()).all(|x| 2 * g.get(x) <= twice[x] && twice[x] <= 2 * f.get(x))
        })
    }

    #[test]
    fn solve_examples() {
        let guards = Guards::default();
        let k2 = Graph::complete(2);
        let outcome = solve_fractional_factor(&k2, &ones(2), &ones(2), &guards).unwrap();
        assert_eq!(outcome.factor().unwrap().weights(), &[Rational::one()]);

        let c5 = Graph::cycle(5);
        let outcome = solve_fractional_factor(&c5, &ones(5), &ones(5), &guards).unwrap();
        let factor = outcome.factor().unwrap();
        assert_eq!(factor.weights(), &[half(); 5]);
        factor.verify(&c5, &ones(5), &ones(5)).unwrap();
        assert_eq!(factor.support().len(), 5);

        let star = Graph::star(3);
        let outcome = solve_fractional_factor(&star, &ones(4), &ones(4), &guards).unwrap();
        let witness = outcome.witness().unwrap();
        assert_eq!(witness.s, VertexSet::singleton(0));
        assert_eq!(witness.t, VertexSet::new([1, 2]));
        assert_eq!(witness.deficiency, -1);
    }

    #[test]
    fn complement_func_examples() {
        let c4 = Graph::cycle(4);
        assert_eq!(complement_func(&c4, &ones(4)).unwrap().values(), &[1, 1, 1, 1]);
        let k3 = Graph::complete(3);
        let two = VertexFunc::constant(3, 2);
        assert_eq!(complement_func(&k3, &two).unwrap().values(), &[0, 0, 0]);
        let star = Graph::star(3);
        assert_eq!(complement_func(&star, &ones(4)).unwrap().values(), &[2, 0, 0, 0]);
        assert!(matches!(
            complement_func(&star, &VertexFunc::constant(4, 2)),
            Err(Error::ExceedsDegree { vertex: 1, .. })
        ));
    }

    #[test]
    fn solve_including_examples() {
        let guards = Guards::default();
        let c4 = Graph::cycle(4);
        let h = EdgeSubgraph::from_pairs(&c4, &[(0, 1)]).unwrap();
        let i = |u, v| c4.edge_index(u, v).unwrap();
        for route in [Route::Direct, Route::Complement] {
            let outcome = solve_including(&c4, &ones(4), &h, route, &guards).unwrap();
            let factor = outcome.factor().unwrap();
            factor.verify_including(&c4, &ones(4), &h).unwrap();
            let w = factor.weights();
            assert_eq!((w[i(0, 1)], w[i(2, 3)]), (Rational::one(), Rational::one()));
            assert_eq!((w[i(1, 2)], w[i(0, 3)]), (Rational::zero(), Rational::zero()));
        }

        let path = Graph::path(3);
        let h = EdgeSubgraph::from_pairs(&path, &[(0, 1)]).unwrap();
        for route in [Route::Direct, Route::Complement] {
            let outcome = solve_including(&path, &ones(3), &h, route, &guards).unwrap();
            let witness = outcome.witness().unwrap();
            assert_eq!((&witness.s, &witness.t), (&VertexSet::singleton(1), &VertexSet::singleton(2)));
            assert_eq!(witness.deficiency, -1);
            let replay = deficiency_all(&path, &ones(3), &ones(3), &h, &witness.s, &witness.t).unwrap();
            assert_eq!(replay, -1);
        }

        let k2 = Graph::complete(2);
        let full = EdgeSubgraph::full(&k2);
        for route in [Route::Direct, Route::Complement] {
            let outcome = solve_including(&k2, &ones(2), &full, route, &guards).unwrap();
            assert_eq!(outcome.factor().unwrap().weights(), &[Rational::one()]);
        }
    }

    #[test]
    fn solve_including_degenerate_and_errors() {
        let guards = Guards::default();
        let k3 = Graph::complete(3);
        let full = EdgeSubgraph::full(&k3);
        let outcome = solve_including(&k3, &ones(3), &full, Route::Direct, &guards).unwrap();
        let witness = outcome.witness().unwrap();
        assert_eq!((&witness.s, &witness.t, witness.deficiency), (&VertexSet::singleton(0), &VertexSet::empty(), -1));
        assert_eq!(deficiency_all(&k3, &ones(3), &ones(3), &full, &witness.s, &witness.t).unwrap(), -1);

        let three = VertexFunc::constant(3, 3);
        assert!(solve_including(&k3, &three, &full, Route::Complement, &guards).is_err());
        assert!(!solve_including(&k3, &three, &full, Route::Direct, &guards).unwrap().is_feasible());
    }

    #[test]
    fn verify_rejects_bad_factors() {
        let k2 = Graph::complete(2);
        let too_big = FractionalFactor::new(&k2, vec![Rational::new(3, 2)]);
        assert_eq!(too_big.verify(&k2, &ones(2), &ones(2)), Err(FactorViolation::OutOfRange(0)));
        let third = FractionalFactor::new(&k2, vec![Rational::new(1, 3)]);
        assert_eq!(third.verify(&k2, &ones(2), &ones(2)), Err(FactorViolation::NotHalfIntegral(0)));
        let low = FractionalFactor::new(&k2, vec![half()]);
        assert!(matches!(low.verify(&k2, &ones(2), &ones(2)), Err(FactorViolation::Degree { vertex: 0, .. })));
        let zero = FractionalFactor::new(&k2, vec![Rational::zero()]);
        assert_eq!(
            zero.verify_including(&k2, &VertexFunc::constant(2, 0), &EdgeSubgraph::full(&k2)),
            Err(FactorViolation::NotIncluded(0))
        );
    }

    mod properties {
        use super::*;
        use crate::testing::arb_instance;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(300))]

            #[test]
            fn outcomes_replay(inst in arb_instance(6, 4)) {
                let (graph, g, f) = (&inst.graph, &inst.g, &inst.f);
                match solve_fractional_factor(graph, g, f, &Guards::default()).unwrap() {
                    SolveOutcome::Factor(factor) => prop_assert!(factor.verify(graph, g, f).is_ok()),
                    SolveOutcome::Witness(w) => {
                        prop_assert!(w.deficiency < 0);
                        prop_assert_eq!(deficiency_frac(graph, g, f, &w.s, &w.t).unwrap(), w.deficiency);
                    }
                }
            }

            #[test]
            fn agrees_with_half_integral_enumeration(inst in arb_instance(5, 3)) {
                prop_assume!(inst.graph.edge_count() <= 8);
                let (graph, g, f) = (&inst.graph, &inst.g, &inst.f);
                prop_assert_eq!(find_factor(graph, g, f).unwrap().is_some(), exists_half_integral(graph, g, f));
            }

            #[test]
            fn routes_agree(inst in arb_instance(6, 4)) {
                let (graph, sub) = (&inst.graph, &inst.sub);
                // r between d_H and d_G so that both routes apply
                let r = VertexFunc::new((0..graph.vertex_count())
                    .map(|x| (inst.g.get(x) as usize).clamp(sub.degree(x), graph.degree(x)) as u32)
                    .collect());
                let guards = Guards::default();
                let direct = solve_including(graph, &r, sub, Route::Direct, &guards).unwrap();
                let complement = solve_including(graph, &r, sub, Route::Complement, &guards).unwrap();
                prop_assert_eq!(direct.is_feasible(), complement.is_feasible());
                for outcome in [&direct, &complement] {
                    match outcome {
                        SolveOutcome::Factor(factor) => prop_assert!(factor.verify_including(graph, &r, sub).is_ok()),
                        SolveOutcome::Witness(w) => {
                            prop_assert!(w.deficiency < 0);
                            prop_assert_eq!(deficiency_all(graph, &r, &r, sub, &w.s, &w.t).unwrap(), w.deficiency);
                        }
                    }
                }
            }

            #[test]
            fn complement_is_an_involution(inst in arb_instance(6, 4)) {
                let graph = &inst.graph;
                let r = VertexFunc::new((0..graph.vertex_count())
                    .map(|x| inst.f.get(x).min(graph.degree(x) as u32))
                    .collect());
                let twice = complement_func(graph, &complement_func(graph, &r).unwrap()).unwrap();
                prop_assert_eq!(twice.values(), r.values());
            }
        }
    }
}
