//! Vertex connectivity by unit-capacity max-flow on the split graph.
//!
//! Every vertex `v` becomes an arc `v_in -> v_out` of capacity 1 and every
//! edge `uv` becomes arcs `u_out -> v_in` and `v_out -> u_in`. The maximum
//! `s_out -> t_in` flow is the number of internally disjoint `s`–`t` paths,
//! which equals the minimum `s`–`t` separator for non-adjacent `s, t`.
//!
//! κ(G) is the minimum local connectivity over the pairs `(v_i, w)` with
//! `i <= κ` and `w` non-adjacent to `v_i` (Even). Some vertex among the
//! first κ+1 lies outside any fixed minimum cut, so that range suffices.

use std::collections::VecDeque;

use crate::error::Result;
use crate::graph::{Graph, VertexSet};

struct Arc {
    to: usize,
    cap: usize,
}

struct SplitNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl SplitNetwork {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut net = SplitNetwork {
            arcs: Vec::with_capacity(2 * (n + 2 * g.edge_count())),
            out: vec![Vec::new(); 2 * n],
        };
        for v in 0..n {
            net.push(2 * v, 2 * v + 1, 1);
        }
        for (u, v) in g.edges() {
            net.push(2 * u + 1, 2 * v, n);
            net.push(2 * v + 1, 2 * u, n);
        }
        net
    }

    fn push(&mut self, from: usize, to: usize, cap: usize) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    /// One BFS augmentation along a shortest residual path.
    fn augment(&mut self, source: usize, sink: usize) -> bool {
        let mut via = vec![usize::MAX; self.out.len()];
        let mut queue = VecDeque::from([source]);
        via[source] = usize::MAX - 1;
        while let Some(u) = queue.pop_front() {
            for &a in &self.out[u] {
                let Arc { to, cap } = self.arcs[a];
                if cap > 0 && via[to] == usize::MAX {
                    via[to] = a;
                    if to == sink {
                        let mut x = sink;
                        while x != source {
                            let a = via[x];
                            self.arcs[a].cap -= 1;
                            self.arcs[a ^ 1].cap += 1;
                            x = self.arcs[a ^ 1].to;
                        }
                        return true;
                    }
                    queue.push_back(to);
                }
            }
        }
        false
    }

    fn reachable(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[source] = true;
        let mut stack = vec![source];
        while let Some(u) = stack.pop() {
            for &a in &self.out[u] {
                let Arc { to, cap } = self.arcs[a];
                if cap > 0 && !seen[to] {
                    seen[to] = true;
                    stack.push(to);
                }
            }
        }
        seen
    }
}

/// Internally disjoint `s`–`t` paths for non-adjacent `s`, `t`, capped at
/// `limit`. Returns the flow value and, when it is below `limit`, the
/// separator read off the residual network.
fn local_cut(g: &Graph, s: usize, t: usize, limit: usize) -> (usize, Option<VertexSet>) {
    debug_assert!(s != t && !g.has_edge(s, t));
    let mut net = SplitNetwork::new(g);
    let (source, sink) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    while flow < limit && net.augment(source, sink) {
        flow += 1;
    }
    if flow >= limit {
        return (flow, None);
    }
    let seen = net.reachable(source);
    let cut = (0..g.n())
        .filter(|&v| v != s && v != t && seen[2 * v] && !seen[2 * v + 1])
        .collect();
    (flow, Some(cut))
}

/// A minimum vertex cut together with its size.
///
/// Conventions: the empty set for disconnected graphs and for K₁; the first
/// `n − 1` vertices for Kₙ, which reduces the graph to K₁.
pub fn minimum_vertex_cut(g: &Graph) -> Result<VertexSet> {
    let n = g.n();
    g.require_nonempty("vertex connectivity")?;
    if n == 1 || !g.is_connected()? {
        return Ok(VertexSet::new());
    }
    if g.is_complete()? {
        return Ok((0..n - 1).collect());
    }

    let delta = g.min_degree()?;
    // N(v) for a minimum-degree v separates v from the rest.
    let v = (0..n).find(|&v| g.degree(v) == delta).expect("n >= 1");
    let mut best: VertexSet = g.neighbors(v).iter().copied().collect();

    let mut i = 0;
    while i < n && i <= best.len() {
        for j in i + 1..n {
            if g.has_edge(i, j) {
                continue;
            }
            if let (_, Some(cut)) = local_cut(g, i, j, best.len()) {
                best = cut;
            }
        }
        i += 1;
    }
    Ok(best)
}

/// κ(G).
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    minimum_vertex_cut(g).map(|c| c.len())
}
