//! Adjacency-only graphs: isomorphism by backtracking and the 2-switch.

use std::collections::BTreeSet;

use thiserror::Error;

use super::GraphError;

pub const ISOMORPHISM_VERTEX_CAP: usize = 21;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbstractGraph {
    adj: Vec<BTreeSet<usize>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SwitchError {
    #[error("vertices of a 2-switch must be distinct")]
    NotDistinct,
    #[error("vertex {0} out of range")]
    UnknownVertex(usize),
    #[error("{0}{1} is not an edge")]
    MissingEdge(usize, usize),
    #[error("{0}{1} is already an edge")]
    ExistingEdge(usize, usize),
}

impl AbstractGraph {
    pub fn from_adjacency(adj: Vec<Vec<usize>>) -> Self {
        AbstractGraph {
            adj: adj.into_iter().map(|l| l.into_iter().collect()).collect(),
        }
    }

    pub fn from_edges(vertices: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![BTreeSet::new(); vertices];
        for &(a, b) in edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        AbstractGraph { adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj.get(a).is_some_and(|s| s.contains(&b))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        out
    }

    pub fn degrees_sorted(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(BTreeSet::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Degree followed by the sorted neighbour degrees.
    fn signature(&self, v: usize) -> Vec<usize> {
        let mut nd: Vec<usize> = self.adj[v].iter().map(|&w| self.adj[w].len()).collect();
        nd.sort_unstable();
        let mut sig = vec![self.adj[v].len()];
        sig.extend(nd);
        sig
    }
}

/// Replaces edges `xy` and `zw` by `yz` and `wx`.
pub fn two_switch(
    g: &AbstractGraph,
    xy: (usize, usize),
    zw: (usize, usize),
) -> Result<AbstractGraph, SwitchError> {
    let ((x, y), (z, w)) = (xy, zw);
    let all = [x, y, z, w];
    if let Some(&bad) = all.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(SwitchError::UnknownVertex(bad));
    }
    let distinct: BTreeSet<usize> = all.iter().copied().collect();
    if distinct.len() != 4 {
        return Err(SwitchError::NotDistinct);
    }
    if !g.has_edge(x, y) {
        return Err(SwitchError::MissingEdge(x, y));
    }
    if !g.has_edge(z, w) {
        return Err(SwitchError::MissingEdge(z, w));
    }
    if g.has_edge(y, z) {
        return Err(SwitchError::ExistingEdge(y, z));
    }
    if g.has_edge(w, x) {
        return Err(SwitchError::ExistingEdge(w, x));
    }
    let mut out = g.clone();
    out.adj[x].remove(&y);
    out.adj[y].remove(&x);
    out.adj[z].remove(&w);
    out.adj[w].remove(&z);
    out.adj[y].insert(z);
    out.adj[z].insert(y);
    out.adj[w].insert(x);
    out.adj[x].insert(w);
    Ok(out)
}

/// Backtracking isomorphism test with degree and neighbourhood-degree
/// pruning. Both graphs must have at most [`ISOMORPHISM_VERTEX_CAP`] vertices.
pub fn is_isomorphic(g1: &AbstractGraph, g2: &AbstractGraph) -> Result<bool, GraphError> {
    for g in [g1, g2] {
        if g.vertex_count() > ISOMORPHISM_VERTEX_CAP {
            return Err(GraphError::TooLarge {
                vertices: g.vertex_count(),
                cap: ISOMORPHISM_VERTEX_CAP,
            });
        }
    }
    if g1.vertex_count() != g2.vertex_count()
        || g1.edges().len() != g2.edges().len()
        || g1.degrees_sorted() != g2.degrees_sorted()
    {
        return Ok(false);
    }
    let sig1: Vec<Vec<usize>> = (0..g1.vertex_count()).map(|v| g1.signature(v)).collect();
    let sig2: Vec<Vec<usize>> = (0..g2.vertex_count()).map(|v| g2.signature(v)).collect();
    let mut s1 = sig1.clone();
    let mut s2 = sig2.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return Ok(false);
    }

    // visit g1 in BFS order so each new vertex tends to touch mapped ones
    let mut order = Vec::with_capacity(g1.vertex_count());
    let mut placed = vec![false; g1.vertex_count()];
    for s in 0..g1.vertex_count() {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in g1.neighbors(v) {
                if !placed[w] {
                    placed[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }

    let mut map = vec![usize::MAX; g1.vertex_count()];
    let mut used = vec![false; g2.vertex_count()];
    Ok(extend(g1, g2, &sig1, &sig2, &order, 0, &mut map, &mut used))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g1: &AbstractGraph,
    g2: &AbstractGraph,
    sig1: &[Vec<usize>],
    sig2: &[Vec<usize>],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for c in 0..g2.vertex_count() {
        if used[c] || sig1[v] != sig2[c] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| g1.has_edge(u, v) == g2.has_edge(map[u], c));
        if !consistent {
            continue;
        }
        map[v] = c;
        used[c] = true;
        if extend(g1, g2, sig1, sig2, order, depth + 1, map, used) {
            return true;
        }
        used[c] = false;
        map[v] = usize::MAX;
    }
    false
}
