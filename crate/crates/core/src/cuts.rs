//! Vertex-cut predicates and exhaustive cut oracles.
//!
//! The predicates ([`is_vertex_cut`], [`is_k1_vertex_cut`],
//! [`CutCertificate::evaluate`]) work on graphs of any size. Everything that
//! enumerates subsets runs on a 64-bit adjacency bitmask and is limited to
//! [`ORACLE_MAX_N`] vertices. The enumeration shares no code with the
//! max-flow path in [`crate::flow`].
//!
//! Subsets are visited by size, then in lexicographic order of their sorted
//! vertex lists, so the first hit at each size is the canonical tie-break.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extended::ExtendedNat;
use crate::graph::{Graph, VertexSet};

/// Largest vertex count accepted by the subset-enumeration oracles.
pub const ORACLE_MAX_N: usize = 64;

/// Which vertex cuts `X` of G₁ the isolated-count minimum ranges over when
/// evaluating the k₁ formula for products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reading {
    /// `X` ranges over minimum vertex cuts only.
    #[default]
    MinCutsOnly,
    /// `X` ranges over every vertex cut.
    AllCuts,
}

impl std::str::FromStr for Reading {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min_cuts_only" => Ok(Reading::MinCutsOnly),
            "all_cuts" => Ok(Reading::AllCuts),
            other => Err(Error::Usage(format!(
                "unknown reading {other:?} (expected min_cuts_only or all_cuts)"
            ))),
        }
    }
}

impl std::fmt::Display for Reading {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Reading::MinCutsOnly => "min_cuts_only",
            Reading::AllCuts => "all_cuts",
        })
    }
}

/// A vertex set together with the facts about `G − cut` that every cut
/// claim in this crate is checked against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutCertificate {
    pub cut: VertexSet,
    /// `G − cut` has at least two components.
    pub disconnects: bool,
    /// `G − cut` is K₁.
    pub reduces_to_trivial: bool,
    /// `V₀(G − cut)`.
    pub isolated_after: VertexSet,
    /// The set is a vertex cut of size κ(G).
    pub is_minimum: bool,
}

impl CutCertificate {
    /// Evaluates every flag from scratch. `is_minimum` needs κ(G), which is
    /// computed with [`vertex_connectivity_oracle`].
    pub fn evaluate(g: &Graph, cut: &VertexSet) -> Result<Self> {
        let kappa = vertex_connectivity_oracle(g)?;
        Self::evaluate_with_kappa(g, cut, kappa)
    }

    /// As [`CutCertificate::evaluate`] with a known κ(G).
    pub fn evaluate_with_kappa(g: &Graph, cut: &VertexSet, kappa: usize) -> Result<Self> {
        let facts = Remainder::of(g, cut)?;
        let is_cut = facts.disconnects || facts.remaining == 1;
        Ok(CutCertificate {
            cut: cut.clone(),
            disconnects: facts.disconnects,
            reduces_to_trivial: facts.remaining == 1,
            isolated_after: facts.isolated,
            is_minimum: is_cut && cut.len() == kappa,
        })
    }

    pub fn is_vertex_cut(&self) -> bool {
        self.disconnects || self.reduces_to_trivial
    }

    pub fn is_k1_cut(&self) -> bool {
        self.disconnects && self.isolated_after.is_empty()
    }
}

struct Remainder {
    remaining: usize,
    disconnects: bool,
    isolated: VertexSet,
}

impl Remainder {
    fn of(g: &Graph, cut: &VertexSet) -> Result<Self> {
        g.require_nonempty("vertex cuts")?;
        cut.check_range(g.n())?;
        let removed = cut.to_mask(g.n());
        let comps = g.components_avoiding(&removed);
        let isolated = (0..g.n())
            .filter(|&v| !removed[v] && g.neighbors(v).iter().all(|&w| removed[w]))
            .collect();
        Ok(Remainder {
            remaining: g.n() - cut.len(),
            disconnects: comps.len() >= 2,
            isolated,
        })
    }
}

/// `G − S` is disconnected or is K₁. Removing every vertex is not a cut.
pub fn is_vertex_cut(g: &Graph, s: &VertexSet) -> Result<bool> {
    let r = Remainder::of(g, s)?;
    Ok(r.disconnects || r.remaining == 1)
}

/// `G − S` is disconnected and has no isolated vertex.
pub fn is_k1_vertex_cut(g: &Graph, s: &VertexSet) -> Result<bool> {
    let r = Remainder::of(g, s)?;
    Ok(r.disconnects && r.isolated.is_empty())
}

/// Adjacency as bitmasks, for subset enumeration.
struct BitGraph {
    adj: Vec<u64>,
    full: u64,
}

impl BitGraph {
    fn new(g: &Graph) -> Result<Self> {
        let n = g.n();
        g.require_nonempty("exhaustive cut search")?;
        if n > ORACLE_MAX_N {
            return Err(Error::TooLarge {
                n,
                limit: ORACLE_MAX_N,
            });
        }
        let adj = (0..n)
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
            .collect();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Ok(BitGraph { adj, full })
    }

    fn n(&self) -> usize {
        self.adj.len()
    }

    fn connected_within(&self, r: u64) -> bool {
        if r == 0 {
            return true;
        }
        let start = r & r.wrapping_neg();
        let mut reached = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                next |= self.adj[f.trailing_zeros() as usize];
                f &= f - 1;
            }
            frontier = next & r & !reached;
            reached |= frontier;
        }
        reached == r
    }

    fn isolated_within(&self, r: u64) -> u64 {
        let mut out = 0;
        let mut rest = r;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            if self.adj[v] & r == 0 {
                out |= 1 << v;
            }
            rest &= rest - 1;
        }
        out
    }

    fn remainder(&self, s: u64) -> u64 {
        self.full & !s
    }

    fn is_cut(&self, s: u64) -> bool {
        let r = self.remainder(s);
        match r.count_ones() {
            0 => false,
            1 => true,
            _ => !self.connected_within(r),
        }
    }

    fn is_k1_cut(&self, s: u64) -> bool {
        let r = self.remainder(s);
        r.count_ones() >= 4 && self.isolated_within(r) == 0 && !self.connected_within(r)
    }
}

fn mask_to_set(mut m: u64) -> VertexSet {
    let mut ids = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        ids.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    VertexSet::from_unsorted(ids)
}

/// k-subsets of `0..n` as bitmasks, in lexicographic order of the sorted
/// index lists.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let mask = self.idx.iter().fold(0u64, |m, &i| m | 1 << i);
        let k = self.idx.len();
        match (0..k).rev().find(|&i| self.idx[i] < self.n - k + i) {
            Some(i) => {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
            }
            None => self.done = true,
        }
        Some(mask)
    }
}

/// Subsets by increasing size, lexicographic within each size.
fn subsets_up_to(n: usize, max_size: usize) -> impl Iterator<Item = u64> {
    (0..=max_size.min(n)).flat_map(move |k| Combinations::new(n, k))
}

fn first_min_cut(bg: &BitGraph) -> u64 {
    // S = V minus one vertex always reduces to K₁, so the scan terminates.
    subsets_up_to(bg.n(), bg.n() - 1)
        .find(|&s| bg.is_cut(s))
        .expect("n − 1 vertices always form a cut")
}

/// κ(G) by scanning subsets in increasing size.
pub fn vertex_connectivity_oracle(g: &Graph) -> Result<usize> {
    let bg = BitGraph::new(g)?;
    Ok(first_min_cut(&bg).count_ones() as usize)
}

/// The lexicographically first minimum vertex cut.
pub fn min_vertex_cut_oracle(g: &Graph) -> Result<VertexSet> {
    let bg = BitGraph::new(g)?;
    Ok(mask_to_set(first_min_cut(&bg)))
}

/// The lexicographically first minimum k₁-vertex-cut, if one exists.
///
/// A k₁-cut leaves at least two components with at least two vertices each,
/// so only sizes up to `n − 4` are searched.
pub fn min_k1_cut(g: &Graph) -> Result<Option<VertexSet>> {
    let bg = BitGraph::new(g)?;
    let n = bg.n();
    if n < 4 {
        return Ok(None);
    }
    Ok(subsets_up_to(n, n - 4)
        .find(|&s| bg.is_k1_cut(s))
        .map(mask_to_set))
}

/// k₁(G), `Infinity` when no k₁-vertex-cut exists.
pub fn k1_connectivity(g: &Graph) -> Result<ExtendedNat> {
    Ok(match min_k1_cut(g)? {
        Some(s) => ExtendedNat::Finite(s.len()),
        None => ExtendedNat::Infinity,
    })
}

fn require_connected_noncomplete(g: &Graph, what: &str) -> Result<()> {
    if !g.is_connected()? {
        return Err(Error::domain(format!("{what} requires a connected graph")));
    }
    if g.is_complete()? {
        return Err(Error::domain(format!(
            "{what} requires a non-complete graph"
        )));
    }
    Ok(())
}

/// Every minimum vertex cut, in lexicographic order.
pub fn enumerate_min_vertex_cuts(g: &Graph) -> Result<Vec<CutCertificate>> {
    require_connected_noncomplete(g, "minimum cut enumeration")?;
    let bg = BitGraph::new(g)?;
    let kappa = first_min_cut(&bg).count_ones() as usize;
    Ok(Combinations::new(bg.n(), kappa)
        .filter(|&s| bg.is_cut(s))
        .map(|s| {
            let r = bg.remainder(s);
            CutCertificate {
                cut: mask_to_set(s),
                disconnects: !bg.connected_within(r),
                reduces_to_trivial: r.count_ones() == 1,
                isolated_after: mask_to_set(bg.isolated_within(r)),
                is_minimum: true,
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuperReason {
    /// Decided by inspecting every minimum cut.
    Computed,
    /// Disconnected graphs are not super connected by convention.
    Disconnected,
    /// Complete graphs count as super connected: their minimum cuts leave K₁.
    CompleteConvention,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperVerdict {
    pub super_connected: bool,
    pub reason: SuperReason,
}

/// Whether every minimum vertex cut isolates a vertex.
pub fn is_super_connected(g: &Graph) -> Result<SuperVerdict> {
    if !g.is_connected()? {
        return Ok(SuperVerdict {
            super_connected: false,
            reason: SuperReason::Disconnected,
        });
    }
    if g.is_complete()? {
        return Ok(SuperVerdict {
            super_connected: true,
            reason: SuperReason::CompleteConvention,
        });
    }
    let all_isolate = enumerate_min_vertex_cuts(g)?
        .iter()
        .all(|c| !c.isolated_after.is_empty() || c.reduces_to_trivial);
    Ok(SuperVerdict {
        super_connected: all_isolate,
        reason: SuperReason::Computed,
    })
}

/// A minimum vertex cut leaving the fewest isolated vertices, with that
/// count. Ties go to the lexicographically smallest cut.
pub fn select_optimal_min_cut(g: &Graph) -> Result<(CutCertificate, usize)> {
    select_optimal_cut(g, Reading::MinCutsOnly)
}

/// As [`select_optimal_min_cut`], but under [`Reading::AllCuts`] the cut
/// ranges over every vertex cut; ties then go to the smaller cut, then the
/// lexicographically smaller one.
pub fn select_optimal_cut(g: &Graph, reading: Reading) -> Result<(CutCertificate, usize)> {
    match reading {
        Reading::MinCutsOnly => {
            let best = enumerate_min_vertex_cuts(g)?
                .into_iter()
                .min_by_key(|c| c.isolated_after.len())
                .expect("a connected non-complete graph has a minimum cut");
            let count = best.isolated_after.len();
            Ok((best, count))
        }
        Reading::AllCuts => {
            require_connected_noncomplete(g, "optimal cut selection")?;
            let bg = BitGraph::new(g)?;
            let kappa = first_min_cut(&bg).count_ones() as usize;
            let (mask, count) = subsets_up_to(bg.n(), bg.n() - 1)
                .filter(|&s| bg.is_cut(s))
                .map(|s| (s, bg.isolated_within(bg.remainder(s)).count_ones()))
                .min_by_key(|&(_, c)| c)
                .expect("a connected non-complete graph has a cut");
            let cert = CutCertificate::evaluate_with_kappa(g, &mask_to_set(mask), kappa)?;
            Ok((cert, count as usize))
        }
    }
}
