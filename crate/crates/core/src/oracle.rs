//! Seeded instance generation and the cross-check search.
//!
//! All randomness comes from SplitMix64 (Steele, Lea and Flood), chosen so the
//! streams can be reproduced bit for bit in any language:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! return z ^ (z >> 31)
//! ```
//!
//! A uniform draw below `k` is `(next() * k) >> 64` in 128-bit arithmetic; a
//! Bernoulli draw with probability `a/b` succeeds when the draw below `b` is
//! less than `a`. Trial `i` of a search seeded with `s` uses the `(i+1)`-th
//! output of SplitMix64 started at `s` as its own seed.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::all_factors::{verify_equivalence, InstanceEcho};
use crate::conditions::{
    check_all_including, check_exists, check_sufficient, AllMode, CheckOptions, ExistsMode, Guards,
};
use crate::error::{Error, Result};
use crate::graph::{remove_edges, EdgeSubgraph, Graph, Role, VertexFunc};
use crate::solver::{find_factor, including_feasible, Route};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The SplitMix64 generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..bound`; `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        ((u128::from(self.next_u64()) * u128::from(bound)) >> 64) as u64
    }

    /// Uniform in `lo..=hi`.
    pub fn between(&mut self, lo: u64, hi: u64) -> u64 {
        assert!(lo <= hi, "empty range");
        lo + self.below(hi - lo + 1)
    }

    pub fn chance(&mut self, p: Probability) -> bool {
        self.below(p.den) < p.num
    }
}

/// Seed of the `index`-th sub-stream of `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    SplitMix64::new(seed.wrapping_add(index.wrapping_mul(GOLDEN_GAMMA))).next_u64()
}

/// An exact probability `num / den` with `num <= den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Probability {
    pub num: u64,
    pub den: u64,
}

impl Probability {
    pub const ZERO: Self = Self { num: 0, den: 1 };
    pub const ONE: Self = Self { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Option<Self> {
        (den > 0 && num <= den).then_some(Self { num, den })
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Probability {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (num, den) = s.split_once('/').unwrap_or((s, "1"));
        let num = num.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let den = den.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        Self::new(num, den).ok_or_else(|| format!("{s:?} is not a probability"))
    }
}

/// G(n, p): each pair `u < v`, in lexicographic order, is kept independently
/// with probability `p`.
pub fn random_graph(n: usize, p: Probability, seed: u64) -> Graph {
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.chance(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("pairs u < v are distinct")
}

/// How `(g, f, H)` is drawn for a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "rule")]
pub enum BoundsRule {
    /// `H` empty-able by `sub`; `1 <= g <= f <= max(d_G(x), 1) + slack`, and
    /// `f - g <= max_width` when given.
    Positive {
        sub: Probability,
        slack: u32,
        max_width: Option<u32>,
    },
    /// Each edge joins `H` with probability `sub`; then
    /// `max(d_H, 1) <= g <= f <= d_G` uniformly, and `g = f = 0` where `d_G = 0`.
    Hypothesis { sub: Probability },
    /// Like `Hypothesis`, but `g` and `f` track a common fraction of the degree
    /// so the pairwise degree-product test often holds: one ratio `a/b` is
    /// drawn per instance; vertices touching `H` get `g = f = d_G`, the others
    /// `g = f` near `a/b * d_G`.
    Proportional { sub: Probability },
}

impl BoundsRule {
    /// Whether every draw satisfies `d_H <= g <= f <= d_G`.
    pub fn within_degrees(&self) -> bool {
        !matches!(self, Self::Positive { .. })
    }
}

/// Draws `(g, f, H)` for `graph` under `rule`.
pub fn random_instance(graph: &Graph, rule: BoundsRule, seed: u64) -> (VertexFunc, VertexFunc, EdgeSubgraph) {
    let mut rng = SplitMix64::new(seed);
    let sub_p = match rule {
        BoundsRule::Positive { sub, .. } | BoundsRule::Hypothesis { sub } | BoundsRule::Proportional { sub } => sub,
    };
    let sub = EdgeSubgraph::new(graph, (0..graph.edge_count()).filter(|_| rng.chance(sub_p)))
        .expect("indices are in range");
    let n = graph.vertex_count();
    let (mut g, mut f) = (Vec::with_capacity(n), Vec::with_capacity(n));
    let ratio = (rng.between(1, 4), 4);
    for x in 0..n {
        let degree = graph.degree(x) as u64;
        let d_h = sub.degree(x) as u64;
        let (lo, hi) = match rule {
            BoundsRule::Positive { slack, max_width, .. } => {
                let top = degree.max(1) + u64::from(slack);
                let lo = rng.between(1, top);
                let cap = max_width.map_or(top, |w| top.min(lo + u64::from(w)));
                (lo, rng.between(lo, cap))
            }
            _ if degree == 0 => (0, 0),
            BoundsRule::Hypothesis { .. } => {
                let lo = rng.between(d_h.max(1), degree);
                (lo, rng.between(lo, degree))
            }
            BoundsRule::Proportional { .. } if d_h > 0 => (degree, degree),
            BoundsRule::Proportional { .. } => {
                let target = (ratio.0 * degree).div_ceil(ratio.1).clamp(1, degree);
                let spread = rng.below(3);
                match spread {
                    0 => (target, target),
                    1 => (target, (target + 1).min(degree)),
                    _ => (target.saturating_sub(1).max(1), target),
                }
            }
        };
        g.push(lo as u32);
        f.push(hi as u32);
    }
    let g = VertexFunc::with_role(g, Role::G);
    let f = VertexFunc::with_role(f, Role::F);
    for x in 0..n {
        assert!(g.get(x) <= f.get(x), "generated g > f");
        if rule.within_degrees() {
            assert!(
                sub.degree(x) as u32 <= g.get(x) || graph.degree(x) == 0,
                "generated g below d_H"
            );
            assert!(f.get(x) as usize <= graph.degree(x), "generated f above d_G");
        }
    }
    (g, f, sub)
}

/// Restriction of an instance to its non-isolated vertices, relabelled in order.
pub fn drop_isolated(
    graph: &Graph,
    g: &VertexFunc,
    f: &VertexFunc,
    sub: &EdgeSubgraph,
) -> (Graph, VertexFunc, VertexFunc, EdgeSubgraph) {
    let kept: Vec<usize> = (0..graph.vertex_count()).filter(|&x| graph.degree(x) > 0).collect();
    let mut label = vec![usize::MAX; graph.vertex_count()];
    for (new, &old) in kept.iter().enumerate() {
        label[old] = new;
    }
    let relabel = |&(u, v): &(usize, usize)| (label[u], label[v]);
    let reduced = Graph::new(kept.len(), graph.edges().iter().map(relabel)).expect("relabelling keeps the graph simple");
    let sub_pairs: Vec<_> = sub.edges().iter().map(relabel).collect();
    let reduced_sub = EdgeSubgraph::from_pairs(&reduced, &sub_pairs).expect("H edges survive");
    let pick = |phi: &VertexFunc| VertexFunc::with_role(kept.iter().map(|&x| phi.get(x)).collect(), phi.role());
    (reduced, pick(g), pick(f), reduced_sub)
}

/// A named cross-check run by [`search_counterexample`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Check {
    /// Canonical-`T` and all-pairs existence checks agree.
    #[serde(rename = "thm1-thm2")]
    ExistsModes,
    /// The all-pairs characterization matches the definition-level oracle.
    #[serde(rename = "thm4-brute")]
    AllVersusBrute,
    /// The pairwise degree-product test never holds on a failing instance.
    #[serde(rename = "thm5-implies-thm4")]
    SufficientSound,
    /// Direct and complement reductions agree, and match a plain solve.
    #[serde(rename = "routes-agree")]
    RoutesAgree,
    /// With `E(H)` empty: canonical equals all-pairs, and the pairwise test is sound.
    #[serde(rename = "cor6-specialization")]
    EmptySubgraph,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::ExistsModes,
        Check::AllVersusBrute,
        Check::SufficientSound,
        Check::RoutesAgree,
        Check::EmptySubgraph,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::ExistsModes => "thm1-thm2",
            Check::AllVersusBrute => "thm4-brute",
            Check::SufficientSound => "thm5-implies-thm4",
            Check::RoutesAgree => "routes-agree",
            Check::EmptySubgraph => "cor6-specialization",
        }
    }

    fn index(self) -> u64 {
        Self::ALL.iter().position(|&c| c == self).expect("listed") as u64
    }

    /// Rule used when the configuration does not override it. The two rules
    /// returned alternate by a coin flip per trial.
    pub fn default_rules(self) -> [BoundsRule; 2] {
        let quarter = Probability { num: 1, den: 4 };
        match self {
            Check::ExistsModes => [BoundsRule::Positive {
                sub: Probability::ZERO,
                slack: 0,
                max_width: None,
            }; 2],
            Check::AllVersusBrute => [
                BoundsRule::Positive {
                    sub: quarter,
                    slack: 1,
                    max_width: Some(1),
                },
                BoundsRule::Hypothesis { sub: quarter },
            ],
            Check::SufficientSound => [BoundsRule::Hypothesis { sub: quarter }, BoundsRule::Proportional { sub: quarter }],
            Check::RoutesAgree => [BoundsRule::Hypothesis { sub: quarter }, BoundsRule::Positive {
                sub: quarter,
                slack: 0,
                max_width: Some(0),
            }],
            Check::EmptySubgraph => [
                BoundsRule::Hypothesis { sub: Probability::ZERO },
                BoundsRule::Proportional { sub: Probability::ZERO },
            ],
        }
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub p: Probability,
    pub trials: u64,
    pub seed: u64,
    pub checks: Vec<Check>,
    /// Replaces every check's default bounds rule.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsRule>,
    pub guards: Guards,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            n_min: 1,
            n_max: 6,
            p: Probability { num: 1, den: 2 },
            trials: 1000,
            seed: 0,
            checks: Check::ALL.to_vec(),
            bounds: None,
            guards: Guards::default(),
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.n_min > self.n_max {
            return Err(format!("n-min {} exceeds n-max {}", self.n_min, self.n_max));
        }
        if self.checks.is_empty() {
            return Err("no checks selected".into());
        }
        Ok(())
    }

    /// `(graph, g, f, H)` of the given trial and check, as the search draws it.
    pub fn instance(&self, trial: u64, check: Check) -> (Graph, VertexFunc, VertexFunc, EdgeSubgraph) {
        let trial_seed = derive_seed(self.seed, trial);
        let mut rng = SplitMix64::new(trial_seed);
        let n = rng.between(self.n_min as u64, self.n_max as u64) as usize;
        let graph = random_graph(n, self.p, rng.next_u64());
        let instance_seed = derive_seed(trial_seed, check.index());
        let rule = self
            .bounds
            .unwrap_or_else(|| check.default_rules()[(instance_seed & 1) as usize]);
        let (g, f, sub) = random_instance(&graph, rule, instance_seed);
        (graph, g, f, sub)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub check: Check,
    pub checked: u64,
    pub skipped: u64,
    /// Instances on which the check's premise held, when it has one (the
    /// pairwise test held, for the soundness checks).
    pub premise_held: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub trial: u64,
    pub trial_seed: u64,
    pub check: Check,
    pub instance: InstanceEcho,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub config: SearchConfig,
    pub summaries: Vec<CheckSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy: Option<Discrepancy>,
}

impl SearchReport {
    pub fn found(&self) -> bool {
        self.discrepancy.is_some()
    }
}

enum Outcome {
    Agreed { premise: bool },
    Skipped,
    Disagreed(String),
}

fn is_guard(err: &Error) -> bool {
    matches!(err, Error::Guard { .. })
}

/// Runs one check on one instance.
pub fn run_check(
    check: Check,
    graph: &Graph,
    g: &VertexFunc,
    f: &VertexFunc,
    sub: &EdgeSubgraph,
    guards: &Guards,
) -> Result<Option<String>> {
    match evaluate(check, graph, g, f, sub, guards)? {
        Outcome::Disagreed(detail) => Ok(Some(detail)),
        _ => Ok(None),
    }
}

fn evaluate(
    check: Check,
    graph: &Graph,
    g: &VertexFunc,
    f: &VertexFunc,
    sub: &EdgeSubgraph,
    guards: &Guards,
) -> Result<Outcome> {
    let options = CheckOptions {
        allow_zero: true,
        guards: *guards,
    };
    if graph.vertex_count() > guards.max_vertices {
        return Ok(Outcome::Skipped);
    }
    let agreed = Outcome::Agreed { premise: false };
    Ok(match check {
        Check::ExistsModes => {
            let canonical = check_exists(graph, g, f, ExistsMode::Canonical, &options)?;
            let full = check_exists(graph, g, f, ExistsMode::Full, &options)?;
            if canonical.holds != full.holds || canonical.witness != full.witness {
                Outcome::Disagreed(format!(
                    "canonical holds={} witness={:?}; full holds={} witness={:?}",
                    canonical.holds, canonical.witness, full.holds, full.witness
                ))
            } else {
                agreed
            }
        }
        Check::AllVersusBrute => {
            let report = verify_equivalence(graph, g, f, sub, &options)?;
            if report.agree {
                agreed
            } else {
                Outcome::Disagreed(format!(
                    "brute={} full={} canonical={:?} failing r={:?}",
                    report.brute, report.full, report.canonical, report.failing_r
                ))
            }
        }
        Check::SufficientSound | Check::EmptySubgraph => {
            let (graph, g, f, sub) = drop_isolated(graph, g, f, sub);
            let sufficient = check_sufficient(&graph, &g, &f, &sub)?;
            let full = check_all_including(&graph, &g, &f, &sub, AllMode::Full, &options)?;
            if sufficient.holds && !full.holds {
                return Ok(Outcome::Disagreed(format!(
                    "pairwise test holds but the all-pairs check fails at {:?}",
                    full.witness
                )));
            }
            if check == Check::EmptySubgraph {
                let canonical = check_all_including(&graph, &g, &f, &sub, AllMode::CanonicalNoH, &options)?;
                if canonical.holds != full.holds {
                    return Ok(Outcome::Disagreed(format!(
                        "canonical holds={} but all-pairs holds={}",
                        canonical.holds, full.holds
                    )));
                }
            }
            Outcome::Agreed {
                premise: sufficient.holds,
            }
        }
        Check::RoutesAgree => {
            let r = g;
            let direct = including_feasible(graph, r, sub, Route::Direct)?;
            let complement = match including_feasible(graph, r, sub, Route::Complement) {
                Ok(verdict) => Some(verdict),
                Err(Error::ExceedsDegree { .. }) => None,
                Err(err) => return Err(err),
            };
            let reduced = if (0..graph.vertex_count()).all(|x| sub.degree(x) as u32 <= r.get(x)) {
                let bound =
                    VertexFunc::new((0..graph.vertex_count()).map(|x| r.get(x) - sub.degree(x) as u32).collect());
                find_factor(&remove_edges(graph, sub), &bound, &bound)?.is_some()
            } else {
                false
            };
            if complement.is_some_and(|c| c != direct) || reduced != direct {
                Outcome::Disagreed(format!(
                    "direct={direct} complement={complement:?} reduced solve={reduced}"
                ))
            } else {
                agreed
            }
        }
    })
}

/// Runs the selected checks over the seeded instance stream.
///
/// Every trial is evaluated; the reported discrepancy is the one with the
/// lowest trial index (then the earliest check in the configured order), so
/// the result does not depend on scheduling.
pub fn search_counterexample(config: &SearchConfig) -> Result<SearchReport, String> {
    config.validate()?;
    let outcomes: Vec<Vec<(Check, Result<Outcome>)>> = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            config
                .checks
                .iter()
                .map(|&check| {
                    let (graph, g, f, sub) = config.instance(trial, check);
                    (check, evaluate(check, &graph, &g, &f, &sub, &config.guards))
                })
                .collect()
        })
        .collect();

    let mut summaries: Vec<CheckSummary> = config
        .checks
        .iter()
        .map(|&check| CheckSummary {
            check,
            checked: 0,
            skipped: 0,
            premise_held: 0,
        })
        .collect();
    let mut discrepancy = None;
    for (trial, results) in outcomes.into_iter().enumerate() {
        for (slot, (check, result)) in results.into_iter().enumerate() {
            let summary = &mut summaries[slot];
            let detail = match result {
                Ok(Outcome::Agreed { premise }) => {
                    summary.checked += 1;
                    summary.premise_held += u64::from(premise);
                    continue;
                }
                Ok(Outcome::Skipped) => {
                    summary.skipped += 1;
                    continue;
                }
                Err(err) if is_guard(&err) => {
                    summary.skipped += 1;
                    continue;
                }
                Ok(Outcome::Disagreed(detail)) => detail,
                Err(err) => format!("check raised an error: {err}"),
            };
            summary.checked += 1;
            if discrepancy.is_none() {
                let (graph, g, f, sub) = config.instance(trial as u64, check);
                discrepancy = Some(Discrepancy {
                    trial: trial as u64,
                    trial_seed: derive_seed(config.seed, trial as u64),
                    check,
                    instance: InstanceEcho::new(&graph, &g, &f, &sub),
                    detail,
                });
            }
        }
    }
    Ok(SearchReport {
        config: config.clone(),
        summaries,
        discrepancy,
    })
}
