//! Per-graph invariant bundles, as printed by `lexconn compute`.

use std::str::FromStr;

use serde::Serialize;

use crate::cuts;
use crate::error::{Error, Result};
use crate::extended::ExtendedNat;
use crate::flow;
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Invariant {
    /// κ(G)
    K,
    /// k₁(G)
    K1,
    Super,
    /// δ(G)
    Delta,
    /// V₀(G)
    V0,
}

impl Invariant {
    pub const ALL: [Invariant; 5] = [
        Invariant::K,
        Invariant::K1,
        Invariant::Super,
        Invariant::Delta,
        Invariant::V0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::K => "k",
            Invariant::K1 => "k1",
            Invariant::Super => "super",
            Invariant::Delta => "delta",
            Invariant::V0 => "v0",
        }
    }
}

impl FromStr for Invariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Invariant::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown invariant {s:?}")))
    }
}

/// The requested invariants of one graph; absent fields were not requested.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k1: Option<ExtendedNat>,
    #[serde(rename = "super", skip_serializing_if = "Option::is_none")]
    pub super_connected: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v0: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_cut: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k1_cut: Option<Option<VertexSet>>,
}

impl InvariantReport {
    /// Computes `which` on `g`; with `witnesses`, also a minimum cut for
    /// `k` and a minimum k₁-cut (or null) for `k1`.
    pub fn compute(g: &Graph, which: &[Invariant], witnesses: bool) -> Result<Self> {
        let mut r = InvariantReport::default();
        for &inv in which {
            match inv {
                Invariant::K => {
                    let cut = flow::minimum_vertex_cut(g)?;
                    r.k = Some(cut.len());
                    if witnesses {
                        r.k_cut = Some(cut);
                    }
                }
                Invariant::K1 => {
                    let cut = cuts::min_k1_cut(g)?;
                    r.k1 = Some(cut.as_ref().map_or(ExtendedNat::Infinity, |c| c.len().into()));
                    if witnesses {
                        r.k1_cut = Some(cut);
                    }
                }
                Invariant::Super => {
                    g.require_nonempty("super connectivity")?;
                    r.super_connected = Some(cuts::is_super_connected(g)?.super_connected);
                }
                Invariant::Delta => r.delta = Some(g.min_degree()?),
                Invariant::V0 => r.v0 = Some(g.isolated_vertices()),
            }
        }
        Ok(r)
    }

    /// `(name, value)` pairs in request order, values in their textual form
    /// (`infinity` for ∞, vertex lists joined by `;`).
    pub fn fields(&self) -> Vec<(&'static str, String)> {
        fn list(s: &VertexSet) -> String {
            s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(";")
        }
        let mut out = Vec::new();
        if let Some(k) = self.k {
            out.push(("k", k.to_string()));
        }
        if let Some(k1) = self.k1 {
            out.push(("k1", k1.to_string()));
        }
        if let Some(s) = self.super_connected {
            out.push(("super", s.to_string()));
        }
        if let Some(d) = self.delta {
            out.push(("delta", d.to_string()));
        }
        if let Some(v0) = &self.v0 {
            out.push(("v0", list(v0)));
        }
        if let Some(c) = &self.k_cut {
            out.push(("k_cut", list(c)));
        }
        if let Some(c) = &self.k1_cut {
            out.push(("k1_cut", c.as_ref().map_or_else(|| "none".into(), list)));
        }
        out
    }
}
