use std::fmt::Write as _;

use gf_factors::{FractionalFactor, SearchReport, Witness};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Feasible,
    Infeasible,
    Holds,
    Fails,
    Agree,
    Disagree,
    Error,
}

impl Verdict {
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Feasible | Verdict::Holds | Verdict::Agree => 0,
            Verdict::Infeasible | Verdict::Fails | Verdict::Disagree => 1,
            Verdict::Error => 2,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Verdict::Feasible => "feasible",
            Verdict::Infeasible => "infeasible",
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Agree => "agree",
            Verdict::Disagree => "disagree",
            Verdict::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub name: String,
    pub args: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessOut {
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub deficiency: i64,
}

impl From<&Witness> for WitnessOut {
    fn from(w: &Witness) -> Self {
        Self {
            s: w.s.members().to_vec(),
            t: w.t.members().to_vec(),
            deficiency: w.deficiency,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalOut {
    pub num: i64,
    pub den: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeWeight {
    pub u: usize,
    pub v: usize,
    pub h: RationalOut,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorOut {
    pub edges: Vec<EdgeWeight>,
}

impl From<&FractionalFactor> for FactorOut {
    fn from(factor: &FractionalFactor) -> Self {
        let edges = factor
            .edges()
            .iter()
            .zip(factor.weights())
            .map(|(&(u, v), w)| EdgeWeight {
                u,
                v,
                h: RationalOut {
                    num: *w.numer(),
                    den: *w.denom(),
                },
            })
            .collect();
        Self { edges }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs_examined: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_functions_examined: Option<u64>,
    pub elapsed_ms: u64,
}

/// Machine-readable result of one command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: CommandEcho,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_r: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor: Option<FactorOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchReport>,
    pub stats: Stats,
    pub tool_version: String,
}

impl Report {
    pub fn new(command: CommandEcho, verdict: Verdict) -> Self {
        Self {
            command,
            verdict,
            reason: None,
            witness: None,
            failing_r: None,
            factor: None,
            search: None,
            stats: Stats::default(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "verdict: {}", self.verdict.label()).unwrap();
        if let Some(reason) = &self.reason {
            writeln!(out, "reason: {reason}").unwrap();
        }
        if let Some(r) = &self.failing_r {
            writeln!(out, "failing r: {r:?}").unwrap();
        }
        if let Some(w) = &self.witness {
            writeln!(out, "witness: S={:?} T={:?} deficiency={}", w.s, w.t, w.deficiency).unwrap();
        }
        if let Some(factor) = &self.factor {
            for e in &factor.edges {
                writeln!(out, "h({}, {}) = {}/{}", e.u, e.v, e.h.num, e.h.den).unwrap();
            }
        }
        if let Some(search) = &self.search {
            for s in &search.summaries {
                writeln!(
                    out,
                    "{}: checked {} skipped {} premise held {}",
                    s.check, s.checked, s.skipped, s.premise_held
                )
                .unwrap();
            }
            if let Some(d) = &search.discrepancy {
                writeln!(out, "discrepancy: trial {} (seed {}) check {}: {}", d.trial, d.trial_seed, d.check, d.detail)
                    .unwrap();
                writeln!(out, "instance: {}", serde_json::to_string(&d.instance).unwrap()).unwrap();
            }
        }
        if let Some(pairs) = self.stats.pairs_examined {
            writeln!(out, "pairs examined: {pairs}").unwrap();
        }
        if let Some(rs) = self.stats.r_functions_examined {
            writeln!(out, "r-functions examined: {rs}").unwrap();
        }
        out
    }
}
