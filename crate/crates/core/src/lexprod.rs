//! Lexicographic product `G₁ ∘ G₂` and closed-form connectivity results.
//!
//! Product vertex `(i, j)` has flat id `i·m + j` where `m = |V(G₂)|`, so the
//! copy of G₂ sitting over `i ∈ V(G₁)` is the contiguous row
//! `i·m .. (i+1)·m`.
//!
//! The k₁ and super-connectivity fast paths never return an unchecked
//! value: k₁ answers carry a witness that is re-verified on the product,
//! and anything the closed forms do not cover is computed by the exhaustive
//! oracles in [`crate::cuts`]. The `branch` on each result names the clause
//! that produced it.

use serde::{Deserialize, Serialize};

use crate::cuts::{self, Reading};
use crate::error::{Error, Result};
use crate::extended::ExtendedNat;
use crate::flow::vertex_connectivity;
use crate::graph::{Graph, VertexSet};

/// Row-major indexing of `V(G₁) × V(G₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductIndex {
    pub n1: usize,
    pub m: usize,
}

impl ProductIndex {
    pub fn new(n1: usize, m: usize) -> Result<Self> {
        if n1 == 0 || m == 0 {
            return Err(Error::domain("product factors must have at least one vertex"));
        }
        Ok(ProductIndex { n1, m })
    }

    pub fn len(&self) -> usize {
        self.n1 * self.m
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn pair(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.n1 && j < self.m);
        i * self.m + j
    }

    pub fn unpair(&self, id: usize) -> (usize, usize) {
        (id / self.m, id % self.m)
    }
}

pub fn lex_product(g1: &Graph, g2: &Graph) -> Result<Graph> {
    let idx = ProductIndex::new(g1.n(), g2.n())?;
    let m = idx.m;
    let mut p = Graph::empty(idx.len());
    for i in 0..idx.n1 {
        for (a, b) in g2.edges() {
            p.add_edge(idx.pair(i, a), idx.pair(i, b))?;
        }
    }
    for (i, k) in g1.edges() {
        for a in 0..m {
            for b in 0..m {
                p.add_edge(idx.pair(i, a), idx.pair(k, b))?;
            }
        }
    }
    Ok(p)
}

/// `X × V(G₂)`.
pub fn lift_min_cut(x: &VertexSet, m: usize) -> VertexSet {
    x.iter().flat_map(|i| i * m..(i + 1) * m).collect()
}

/// `(X × V(G₂)) ∪ (B × V₀(G₂))` where `B` holds the vertices outside `X`
/// whose whole neighborhood lies in `X`, i.e. `V₀(G₁ − X)`.
pub fn lift_k1_cut(g1: &Graph, g2: &Graph, x: &VertexSet) -> Result<VertexSet> {
    if !cuts::is_vertex_cut(g1, x)? {
        return Err(Error::domain(format!("{x} is not a vertex cut of G1")));
    }
    let m = g2.n();
    let stranded = (0..g1.n())
        .filter(|&v| !x.contains(v) && g1.neighbors(v).iter().all(|&w| x.contains(w)));
    let v0 = g2.isolated_vertices();
    let extra: VertexSet = stranded
        .flat_map(|i| v0.iter().map(move |j| i * m + j))
        .collect();
    Ok(lift_min_cut(x, m).union(&extra))
}

/// κ(G₁ ∘ G₂) from the factors: `κ(G₁)·m` for non-complete G₁,
/// `(n−1)·m + κ(G₂)` for G₁ = Kₙ, and 0 when G₁ is disconnected.
pub fn lex_connectivity(g1: &Graph, g2: &Graph) -> Result<usize> {
    let idx = ProductIndex::new(g1.n(), g2.n())?;
    if !g1.is_connected()? {
        return Ok(0);
    }
    if g1.is_complete()? {
        return Ok((idx.n1 - 1) * idx.m + vertex_connectivity(g2)?);
    }
    Ok(vertex_connectivity(g1)? * idx.m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum K1Branch {
    /// k₁(G₁) = κ(G₁).
    Thm22,
    /// κ(G₁) < k₁(G₁) < ∞.
    Thm23,
    /// k₁(G₁) = ∞.
    Cor24,
    OracleFallback,
}

/// The closed-form k₁ value before any verification, with the cuts the
/// constructions produce (smallest first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K1Formula {
    pub value: ExtendedNat,
    pub branch: K1Branch,
    pub candidates: Vec<VertexSet>,
}

/// Evaluates the k₁ formula for `G₁ ∘ G₂`. Returns `None` when G₁ is
/// complete, where no closed form applies.
pub fn k1_formula(g1: &Graph, g2: &Graph, reading: Reading) -> Result<Option<K1Formula>> {
    let m = ProductIndex::new(g1.n(), g2.n())?.m;
    if !g1.is_connected()? {
        return Err(Error::domain("k1 of a product needs a connected first factor"));
    }
    if g1.is_complete()? {
        return Ok(None);
    }
    let kappa1 = vertex_connectivity(g1)?;
    let kappa_prod = kappa1 * m;
    let min_k1 = cuts::min_k1_cut(g1)?;

    let optimal_lift = || -> Result<(usize, VertexSet)> {
        let (x, count) = cuts::select_optimal_cut(g1, reading)?;
        let lifted = lift_k1_cut(g1, g2, &x.cut)?;
        Ok((kappa_prod + count * g2.isolated_vertices().len(), lifted))
    };

    let formula = match min_k1 {
        Some(s) if s.len() == kappa1 => K1Formula {
            value: ExtendedNat::Finite(kappa_prod),
            branch: K1Branch::Thm22,
            candidates: vec![lift_min_cut(&s, m)],
        },
        Some(s) => {
            let s_lift = lift_min_cut(&s, m);
            let (x_value, x_lift) = optimal_lift()?;
            let mut candidates = vec![s_lift, x_lift];
            candidates.sort_by_key(VertexSet::len);
            K1Formula {
                value: ExtendedNat::Finite((s.len() * m).min(x_value)),
                branch: K1Branch::Thm23,
                candidates,
            }
        }
        None => {
            let (x_value, x_lift) = optimal_lift()?;
            K1Formula {
                value: ExtendedNat::Finite(x_value),
                branch: K1Branch::Cor24,
                candidates: vec![x_lift],
            }
        }
    };
    Ok(Some(formula))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexK1Result {
    pub value: ExtendedNat,
    pub branch: K1Branch,
    /// A k₁-vertex-cut of the product of size `value`, when finite.
    pub witness: Option<VertexSet>,
    /// The closed-form branch whose witness failed verification, when the
    /// result came from the oracle instead.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fallback_from: Option<K1Branch>,
}

/// k₁(G₁ ∘ G₂) under the minimum-cuts reading.
pub fn lex_k1_connectivity(g1: &Graph, g2: &Graph) -> Result<LexK1Result> {
    lex_k1_connectivity_with(g1, g2, Reading::MinCutsOnly)
}

pub fn lex_k1_connectivity_with(g1: &Graph, g2: &Graph, reading: Reading) -> Result<LexK1Result> {
    let formula = k1_formula(g1, g2, reading)?;
    let product = lex_product(g1, g2)?;

    if let Some(f) = &formula {
        if let ExtendedNat::Finite(value) = f.value {
            for cand in &f.candidates {
                if cand.len() == value && cuts::is_k1_vertex_cut(&product, cand)? {
                    return Ok(LexK1Result {
                        value: f.value,
                        branch: f.branch,
                        witness: Some(cand.clone()),
                        fallback_from: None,
                    });
                }
            }
        }
    }

    let witness = cuts::min_k1_cut(&product)?;
    Ok(LexK1Result {
        value: witness
            .as_ref()
            .map_or(ExtendedNat::Infinity, |w| ExtendedNat::Finite(w.len())),
        branch: K1Branch::OracleFallback,
        witness,
        fallback_from: formula.map(|f| f.branch),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuperBranch {
    /// G₂ connected, `m ≥ 2`: not super connected.
    Part1,
    /// G₂ disconnected without isolated vertices: not super connected.
    Part2,
    /// G₂ disconnected with isolated vertices and G₁ super connected.
    Part3,
    /// `m = 1`, so the product is G₁ itself.
    IsoM1,
    OracleFallback,
    /// G₁ disconnected; not super connected by convention.
    Disconnected,
}

/// Whether `G₁ ∘ G₂` is super connected, and which clause decided it.
pub fn lex_super_connected(g1: &Graph, g2: &Graph) -> Result<(bool, SuperBranch)> {
    let idx = ProductIndex::new(g1.n(), g2.n())?;
    if !g1.is_connected()? {
        return Ok((false, SuperBranch::Disconnected));
    }
    if idx.m == 1 {
        return Ok((cuts::is_super_connected(g1)?.super_connected, SuperBranch::IsoM1));
    }
    let by_oracle = || -> Result<(bool, SuperBranch)> {
        let product = lex_product(g1, g2)?;
        Ok((
            cuts::is_super_connected(&product)?.super_connected,
            SuperBranch::OracleFallback,
        ))
    };
    if g1.is_complete()? {
        return by_oracle();
    }
    if g2.is_connected()? {
        return Ok((false, SuperBranch::Part1));
    }
    if g2.isolated_vertices().is_empty() {
        return Ok((false, SuperBranch::Part2));
    }
    if cuts::is_super_connected(g1)?.super_connected {
        return Ok((true, SuperBranch::Part3));
    }
    by_oracle()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::{is_k1_vertex_cut, is_vertex_cut, vertex_connectivity_oracle};
    use crate::io::serialize_graph6;
    use proptest::prelude::*;
    use ExtendedNat::*;

    fn set(ids: &[usize]) -> VertexSet {
        VertexSet::from(ids.to_vec())
    }

    fn five_vertex_g1() -> Graph {
        Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (1, 3), (1, 4), (3, 4)]).unwrap()
    }

    fn k2_plus_k1() -> Graph {
        Graph::from_edges(3, [(0, 1)]).unwrap()
    }

    #[test]
    fn product_index_round_trip() {
        let idx = ProductIndex::new(4, 3).unwrap();
        for id in 0..idx.len() {
            let (i, j) = idx.unpair(id);
            assert_eq!(idx.pair(i, j), id);
        }
        assert_eq!(idx.unpair(7), (2, 1));
        assert!(ProductIndex::new(0, 3).is_err());
    }

    #[test]
    fn small_products() {
        assert_eq!(
            lex_product(&Graph::complete(2), &Graph::complete(2)).unwrap(),
            Graph::complete(4)
        );
        let c4 = lex_product(&Graph::complete(2), &Graph::empty(2)).unwrap();
        assert_eq!(c4.edge_count(), 4);
        assert!(c4.neighbors(0) == [2, 3] && c4.neighbors(1) == [2, 3]);
        let p = lex_product(&Graph::cycle(4), &Graph::complete(2)).unwrap();
        assert_eq!((p.n(), p.edge_count()), (8, 20));
        assert!(lex_product(&Graph::empty(0), &Graph::complete(2)).is_err());
    }

    #[test]
    fn product_is_not_commutative() {
        let a = lex_product(&Graph::path(3), &Graph::empty(2)).unwrap();
        let b = lex_product(&Graph::empty(2), &Graph::path(3)).unwrap();
        assert_ne!(a.edge_count(), b.edge_count());
    }

    #[test]
    fn lifting_min_cuts() {
        assert_eq!(lift_min_cut(&set(&[1]), 3), set(&[3, 4, 5]));
        assert!(lift_min_cut(&VertexSet::new(), 5).is_empty());
        let p = lex_product(&five_vertex_g1(), &k2_plus_k1()).unwrap();
        let lifted = lift_min_cut(&set(&[1]), 3);
        assert!(is_vertex_cut(&p, &lifted).unwrap());

        // {0,1} reduces K₃ to K₁ but its lift leaves a connected K₂ copy.
        let p = lex_product(&Graph::complete(3), &Graph::complete(2)).unwrap();
        assert!(is_vertex_cut(&Graph::complete(3), &set(&[0, 1])).unwrap());
        assert!(!is_vertex_cut(&p, &lift_min_cut(&set(&[0, 1]), 2)).unwrap());
    }

    #[test]
    fn lifting_k1_cuts() {
        let star = Graph::star(3);
        let x = lift_k1_cut(&star, &k2_plus_k1(), &set(&[0])).unwrap();
        // center row 0..3 plus (leaf, y₃) for each leaf
        assert_eq!(x, set(&[0, 1, 2, 5, 8, 11]));

        let x = lift_k1_cut(&five_vertex_g1(), &k2_plus_k1(), &set(&[1])).unwrap();
        assert_eq!(x, set(&[3, 4, 5]));

        let x = lift_k1_cut(&Graph::cycle(5), &Graph::complete(3), &set(&[0, 2])).unwrap();
        assert_eq!(x, lift_min_cut(&set(&[0, 2]), 3));

        assert!(lift_k1_cut(&Graph::path(3), &Graph::complete(2), &set(&[0])).is_err());
    }

    #[test]
    fn connectivity_fast_path() {
        assert_eq!(lex_connectivity(&Graph::cycle(4), &Graph::complete(2)).unwrap(), 4);
        assert_eq!(lex_connectivity(&Graph::complete(3), &Graph::path(3)).unwrap(), 7);
        assert_eq!(lex_connectivity(&Graph::path(3), &Graph::empty(1)).unwrap(), 1);
        assert_eq!(lex_connectivity(&k2_plus_k1(), &Graph::complete(2)).unwrap(), 0);
        for (g1, g2) in [
            (Graph::cycle(4), Graph::complete(2)),
            (Graph::complete(3), Graph::path(3)),
        ] {
            let p = lex_product(&g1, &g2).unwrap();
            assert_eq!(
                lex_connectivity(&g1, &g2).unwrap(),
                vertex_connectivity_oracle(&p).unwrap()
            );
        }
    }

    #[test]
    fn k1_thm22_branch() {
        let r = lex_k1_connectivity(&Graph::path(6), &Graph::path(3)).unwrap();
        assert_eq!((r.value, r.branch), (Finite(3), K1Branch::Thm22));
        let p = lex_product(&Graph::path(6), &Graph::path(3)).unwrap();
        assert_eq!(cuts::k1_connectivity(&p).unwrap(), Finite(3));
    }

    #[test]
    fn k1_cor24_branch() {
        let r = lex_k1_connectivity(&Graph::star(3), &Graph::complete(2)).unwrap();
        assert_eq!((r.value, r.branch), (Finite(2), K1Branch::Cor24));
        assert_eq!(r.witness, Some(set(&[0, 1])));

        let r = lex_k1_connectivity(&Graph::star(3), &k2_plus_k1()).unwrap();
        assert_eq!((r.value, r.branch), (Finite(6), K1Branch::Cor24));
        let p = lex_product(&Graph::star(3), &k2_plus_k1()).unwrap();
        assert_eq!(cuts::k1_connectivity(&p).unwrap(), Finite(6));
        assert!(is_k1_vertex_cut(&p, r.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn k1_falls_back_when_witness_fails() {
        // K₁,₃ ∘ 2K₁ = K₂,₆: the constructed set removes every vertex.
        let r = lex_k1_connectivity(&Graph::star(3), &Graph::empty(2)).unwrap();
        assert_eq!(r.branch, K1Branch::OracleFallback);
        assert_eq!(r.fallback_from, Some(K1Branch::Cor24));
        assert_eq!(r.value, Infinity);
        assert_eq!(r.witness, None);
    }

    #[test]
    fn k1_complete_first_factor_uses_oracle() {
        let r = lex_k1_connectivity(&Graph::complete(3), &Graph::empty(2)).unwrap();
        assert_eq!(r.branch, K1Branch::OracleFallback);
        assert_eq!(r.fallback_from, None);
        assert!(lex_k1_connectivity(&k2_plus_k1(), &Graph::complete(2)).is_err());
    }

    #[test]
    fn k1_result_json_shape() {
        let r = lex_k1_connectivity(&Graph::star(3), &Graph::complete(2)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v, serde_json::json!({"value": 2, "branch": "cor24", "witness": [0, 1]}));
        let r = lex_k1_connectivity(&Graph::star(3), &Graph::empty(2)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["value"], "infinity");
        assert_eq!(v["witness"], serde_json::Value::Null);
    }

    #[test]
    fn super_connected_branches() {
        assert_eq!(
            lex_super_connected(&Graph::cycle(4), &Graph::complete(2)).unwrap(),
            (false, SuperBranch::Part1)
        );
        assert_eq!(
            lex_super_connected(&five_vertex_g1(), &k2_plus_k1()).unwrap(),
            (false, SuperBranch::OracleFallback)
        );
        assert_eq!(
            lex_super_connected(&Graph::cycle(4), &k2_plus_k1()).unwrap(),
            (true, SuperBranch::Part3)
        );
        let p = lex_product(&Graph::cycle(4), &k2_plus_k1()).unwrap();
        assert!(cuts::is_super_connected(&p).unwrap().super_connected);

        let two_k2 = Graph::complete(2).disjoint_union(&Graph::complete(2));
        assert_eq!(
            lex_super_connected(&Graph::cycle(4), &two_k2).unwrap(),
            (false, SuperBranch::Part2)
        );
        assert_eq!(
            lex_super_connected(&Graph::cycle(4), &Graph::empty(1)).unwrap(),
            (true, SuperBranch::IsoM1)
        );
        assert_eq!(
            lex_super_connected(&k2_plus_k1(), &Graph::complete(2)).unwrap(),
            (false, SuperBranch::Disconnected)
        );
        assert_eq!(
            lex_super_connected(&Graph::complete(3), &Graph::complete(2))
                .unwrap()
                .1,
            SuperBranch::OracleFallback
        );
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let edges = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .zip(bits)
                    .filter_map(|(e, b)| b.then_some(e));
                Graph::from_edges(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn edge_count_identity(g1 in arb_graph(6), g2 in arb_graph(4)) {
            let p = lex_product(&g1, &g2).unwrap();
            let m = g2.n();
            prop_assert_eq!(p.edge_count(), g1.n() * g2.edge_count() + g1.edge_count() * m * m);
        }

        #[test]
        fn times_k1_is_identity(g in arb_graph(7)) {
            prop_assert_eq!(lex_product(&g, &Graph::empty(1)).unwrap(), g);
        }

        #[test]
        fn lifted_cut_is_a_cut(g1 in arb_graph(6), g2 in arb_graph(3), pick in any::<u8>()) {
            let x: VertexSet = (0..g1.n()).filter(|i| pick >> i & 1 == 1).collect();
            // A cut that only reduces G₁ to K₁ leaves a whole copy of G₂.
            let disconnects = g1.components_avoiding(&x.to_mask(g1.n())).len() >= 2;
            if disconnects {
                let p = lex_product(&g1, &g2).unwrap();
                let lifted = lift_min_cut(&x, g2.n());
                prop_assert_eq!(lifted.len(), x.len() * g2.n());
                prop_assert!(is_vertex_cut(&p, &lifted).unwrap());
            }
        }

        #[test]
        fn k1_witness_always_verifies(g1 in arb_graph(5), g2 in arb_graph(3)) {
            if g1.is_connected().unwrap() {
                let r = lex_k1_connectivity(&g1, &g2).unwrap();
                let p = lex_product(&g1, &g2).unwrap();
                match (r.value, &r.witness) {
                    (Finite(v), Some(w)) => {
                        prop_assert_eq!(w.len(), v);
                        prop_assert!(is_k1_vertex_cut(&p, w).unwrap(),
                            "{} {}", serialize_graph6(&g1), serialize_graph6(&g2));
                    }
                    (Infinity, None) => prop_assert_eq!(r.branch, K1Branch::OracleFallback),
                    other => prop_assert!(false, "inconsistent result {:?}", other),
                }
            }
        }
    }
}
