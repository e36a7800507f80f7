//! Definition-level ground truth for "all fractional `(g, f)`-factors
//! including `H`": walk every integer `r` with `g <= r <= f` and solve each.

use serde::{Deserialize, Serialize};

use crate::conditions::{check_all_including, validate_bounds, AllMode, CheckOptions, Guards, Witness};
use crate::error::{Error, Result};
use crate::graph::{EdgeSubgraph, Graph, Role, VertexFunc};
use crate::solver::{including_feasible, solve_including, Route};

/// Lexicographic stream of the integer functions in the box `[g, f]`.
#[derive(Debug, Clone)]
pub struct RFunctionSpace {
    lower: Vec<u32>,
    upper: Vec<u32>,
    next: Option<Vec<u32>>,
}

impl RFunctionSpace {
    pub fn new(g: &VertexFunc, f: &VertexFunc) -> Result<Self> {
        if g.len() != f.len() {
            return Err(Error::LengthMismatch {
                expected: g.len(),
                found: f.len(),
            });
        }
        if let Some(x) = (0..g.len()).find(|&x| g.get(x) > f.get(x)) {
            return Err(Error::BoundsOrder {
                vertex: x,
                g: g.get(x),
                f: f.get(x),
            });
        }
        Ok(Self {
            lower: g.values().to_vec(),
            upper: f.values().to_vec(),
            next: Some(g.values().to_vec()),
        })
    }

    /// `prod_x (f(x) - g(x) + 1)`, saturating.
    pub fn cardinality(&self) -> u128 {
        self.lower
            .iter()
            .zip(&self.upper)
            .fold(1u128, |acc, (&lo, &hi)| acc.saturating_mul(u128::from(hi - lo) + 1))
    }
}

impl Iterator for RFunctionSpace {
    type Item = VertexFunc;

    fn next(&mut self) -> Option<VertexFunc> {
        let current = self.next.take()?;
        let mut successor = current.clone();
        // odometer with the last coordinate fastest
        let carry = (0..successor.len()).rev().find(|&x| successor[x] < self.upper[x]);
        if let Some(x) = carry {
            successor[x] += 1;
            successor[x + 1..].copy_from_slice(&self.lower[x + 1..]);
            self.next = Some(successor);
        }
        Some(VertexFunc::with_role(current, Role::R))
    }
}

/// All `r` with `g <= r <= f`, refusing boxes larger than the guard.
pub fn enumerate_r(g: &VertexFunc, f: &VertexFunc, guards: &Guards) -> Result<RFunctionSpace> {
    let space = RFunctionSpace::new(g, f)?;
    let needed = space.cardinality();
    if needed > guards.max_r_functions {
        return Err(Error::Guard {
            what: "r-functions",
            needed,
            limit: guards.max_r_functions,
        });
    }
    Ok(space)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailingR {
    pub r: VertexFunc,
    /// Witness against a fractional `r`-factor including `H`, as reported by
    /// [`solve_including`].
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllFactorsReport {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing: Option<FailingR>,
    pub r_examined: u64,
}

/// Tests every `r` in `[g, f]` for a fractional `r`-factor with `h = 1` on
/// `E(H)`; stops at the lexicographically first failure.
pub fn all_factors_brute(
    graph: &Graph,
    g: &VertexFunc,
    f: &VertexFunc,
    sub: &EdgeSubgraph,
    guards: &Guards,
) -> Result<AllFactorsReport> {
    validate_bounds(graph, g, f, true)?;
    guards.check_vertices(graph.vertex_count())?;
    let mut examined = 0;
    for r in enumerate_r(g, f, guards)? {
        examined += 1;
        if !including_feasible(graph, &r, sub, Route::Direct)? {
            let witness = solve_including(graph, &r, sub, Route::Direct, guards)?
                .witness()
                .cloned()
                .expect("infeasible instance yields a witness");
            return Ok(AllFactorsReport {
                holds: false,
                failing: Some(FailingR { r, witness }),
                r_examined: examined,
            });
        }
    }
    Ok(AllFactorsReport {
        holds: true,
        failing: None,
        r_examined: examined,
    })
}

/// Replayable copy of an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceEcho {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub g: Vec<u32>,
    pub f: Vec<u32>,
    pub h_edges: Vec<(usize, usize)>,
}

impl InstanceEcho {
    pub fn new(graph: &Graph, g: &VertexFunc, f: &VertexFunc, sub: &EdgeSubgraph) -> Self {
        Self {
            n: graph.vertex_count(),
            edges: graph.edges().to_vec(),
            g: g.values().to_vec(),
            f: f.values().to_vec(),
            h_edges: sub.edges().to_vec(),
        }
    }

    /// Rebuilds `(G, g, f, H)`.
    pub fn rebuild(&self) -> Result<(Graph, VertexFunc, VertexFunc, EdgeSubgraph)> {
        let graph = Graph::new(self.n, self.edges.iter().copied())?;
        let sub = EdgeSubgraph::from_pairs(&graph, &self.h_edges)?;
        let g = VertexFunc::with_role(self.g.clone(), Role::G);
        let f = VertexFunc::with_role(self.f.clone(), Role::F);
        Ok((graph, g, f, sub))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub agree: bool,
    pub instance: InstanceEcho,
    pub brute: bool,
    pub full: bool,
    /// Verdict of the canonical mode without `H`; only when `E(H)` is empty.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub canonical: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_r: Option<VertexFunc>,
    pub r_examined: u64,
    pub pairs_examined: u64,
}

/// Compares the definition-level verdict with the all-pairs characterization
/// (and the canonical one when `E(H)` is empty).
pub fn verify_equivalence(
    graph: &Graph,
    g: &VertexFunc,
    f: &VertexFunc,
    sub: &EdgeSubgraph,
    options: &CheckOptions,
) -> Result<DiscrepancyReport> {
    let brute = all_factors_brute(graph, g, f, sub, &options.guards)?;
    let full = check_all_including(graph, g, f, sub, AllMode::Full, options)?;
    let canonical = if sub.is_empty() {
        Some(check_all_including(graph, g, f, sub, AllMode::CanonicalNoH, options)?.holds)
    } else {
        None
    };
    let agree = brute.holds == full.holds && canonical.is_none_or(|c| c == full.holds);
    Ok(DiscrepancyReport {
        agree,
        instance: InstanceEcho::new(graph, g, f, sub),
        brute: brute.holds,
        full: full.holds,
        canonical,
        failing_r: brute.failing.map(|failing| failing.r),
        r_examined: brute.r_examined,
        pairs_examined: full.pairs_examined,
    })
}
