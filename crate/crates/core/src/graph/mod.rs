//! Undirected simple graphs, their orientations, and the structural
//! predicates the rest of the crate relies on.
//!
//! Vertex ids are dense `0..n`. Edges are stored as `(u, v)` with `u < v`
//! in lexicographic order; this order fixes the meaning of a direction-bit
//! vector passed to [`orient`]: bit `i` clear means edge `i` is oriented
//! from its smaller endpoint to its larger one, bit `i` set means the
//! opposite.

mod blocks;
mod canon;
mod generate;
mod parse;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub use blocks::{block_decomposition, cactus_profile, Block, BlockKind, BlockProfile};
pub use canon::{canonical_label, canonical_label_with_cap, Canonical, CanonicalLabel, CANON_CAP};
pub use generate::connected_graphs;
pub use parse::{parse_digraph, parse_graph};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a simple graph. Edge endpoints may be given in either order;
    /// self-loops, duplicates and out-of-range ids are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let e = (u.min(v), u.max(v));
            if !set.insert(e) {
                return Err(Error::DuplicateEdge(e.0, e.1));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    /// Cycle `0-1-...-(n-1)-0`, `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    /// Star with hub 0 and leaves `1..n`.
    pub fn star(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (0, i))).expect("star is simple")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical (lexicographic, `u < v`) order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of edge `{u, v}` in the canonical edge order.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n
    }

    /// Deletes the given vertices and renumbers the survivors densely,
    /// preserving their relative order. Returns the new graph and the map
    /// from old ids to new ids.
    pub fn remove_vertices(&self, removed: &[usize]) -> (Graph, Vec<Option<usize>>) {
        let mut map = vec![None; self.n];
        let mut next = 0;
        for (u, slot) in map.iter_mut().enumerate() {
            if !removed.contains(&u) {
                *slot = Some(next);
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((map[u]?, map[v]?)));
        let g = Graph::new(next, edges).expect("induced subgraph of a simple graph is simple");
        (g, map)
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().copied().chain([(u, v)]))
    }

    /// Edge-list document: header `n m`, then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        write_edge_list(self.n, &self.edges)
    }
}

impl fmt::Display for Graph {
    /// Compact single-line form, e.g. `4:0-1,1-2,2-3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{u}-{v}")?;
        }
        Ok(())
    }
}

fn write_edge_list(n: usize, pairs: &[(usize, usize)]) -> String {
    let mut out = format!("{} {}\n", n, pairs.len());
    for (u, v) in pairs {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// An orientation: a set of arcs with per-vertex out- and in-degrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    out_deg: Vec<usize>,
    in_deg: Vec<usize>,
}

impl Digraph {
    /// Builds a digraph whose underlying graph is simple: no loops, no
    /// repeated arcs and never both `(u, v)` and `(v, u)`.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut list = Vec::new();
        for (u, v) in arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            list.push((u, v));
        }
        Ok(Self::from_arcs_unchecked(n, list))
    }

    fn from_arcs_unchecked(n: usize, mut arcs: Vec<(usize, usize)>) -> Self {
        arcs.sort_unstable();
        let mut out_deg = vec![0; n];
        let mut in_deg = vec![0; n];
        for &(u, v) in &arcs {
            out_deg[u] += 1;
            in_deg[v] += 1;
        }
        Digraph {
            n,
            arcs,
            out_deg,
            in_deg,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Arcs sorted lexicographically.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_deg[u]
    }

    pub fn in_degree(&self, u: usize) -> usize {
        self.in_deg[u]
    }

    pub fn out_degrees(&self) -> &[usize] {
        &self.out_deg
    }

    pub fn in_degrees(&self) -> &[usize] {
        &self.in_deg
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.binary_search(&(u, v)).is_ok()
    }

    pub fn underlying(&self) -> Graph {
        Graph::new(self.n, self.arcs.iter().copied()).expect("orientation of a simple graph")
    }

    /// Applies a vertex relabeling `u -> perm[u]`.
    pub fn permute(&self, perm: &[usize]) -> Digraph {
        let arcs = self.arcs.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Digraph::from_arcs_unchecked(self.n, arcs)
    }

    pub fn to_edge_list(&self) -> String {
        write_edge_list(self.n, &self.arcs)
    }
}

impl fmt::Display for Digraph {
    /// Compact single-line form, e.g. `3:0>1,1>2,2>0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for (i, (u, v)) in self.arcs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{u}>{v}")?;
        }
        Ok(())
    }
}

impl Graph {
    pub fn permute(&self, perm: &[usize]) -> Graph {
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("relabeling preserves simplicity")
    }
}

/// A property a graph failed in [`validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValidationFailure {
    Empty,
    Disconnected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validation {
    pub failures: Vec<ValidationFailure>,
}

impl Validation {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the scope requirements every statement in this crate assumes.
/// Simplicity is enforced by [`Graph::new`], so only emptiness and
/// connectivity can fail here.
pub fn validate(g: &Graph) -> Validation {
    let mut failures = Vec::new();
    if g.n() == 0 {
        failures.push(ValidationFailure::Empty);
    } else if !g.is_connected() {
        failures.push(ValidationFailure::Disconnected);
    }
    Validation { failures }
}

/// Two-colouring of a bipartite graph. Each component is coloured from its
/// smallest vertex, which lands in the first set.
pub fn bipartition(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut color: Vec<Option<bool>> = vec![None; g.n()];
    for start in 0..g.n() {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].expect("queued vertices are coloured");
            for &v in g.neighbors(u) {
                match color[v] {
                    None => {
                        color[v] = Some(!cu);
                        queue.push_back(v);
                    }
                    Some(cv) if cv == cu => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for (u, c) in color.into_iter().enumerate() {
        if c == Some(false) {
            left.push(u);
        } else {
            right.push(u);
        }
    }
    Some((left, right))
}

/// Orients every edge of `g` according to one direction bit per edge, in
/// canonical edge order.
pub fn orient(g: &Graph, directions: &[bool]) -> Result<Digraph> {
    if directions.len() != g.m() {
        return Err(Error::DirectionLength {
            expected: g.m(),
            found: directions.len(),
        });
    }
    let arcs = g
        .edges()
        .iter()
        .zip(directions)
        .map(|(&(u, v), &flip)| if flip { (v, u) } else { (u, v) })
        .collect();
    Ok(Digraph::from_arcs_unchecked(g.n(), arcs))
}

/// Same as [`orient`] with the direction bits packed into a mask; bit `i`
/// belongs to edge `i`.
pub fn orient_mask(g: &Graph, mask: u64) -> Digraph {
    let arcs = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| if mask >> i & 1 == 1 { (v, u) } else { (u, v) })
        .collect();
    Digraph::from_arcs_unchecked(g.n(), arcs)
}

/// Inverse of [`orient_mask`]: recovers the direction mask of an
/// orientation of `g`. Returns `None` if `d` is not an orientation of `g`.
pub fn direction_mask(g: &Graph, d: &Digraph) -> Option<u64> {
    if d.n() != g.n() || d.arcs().len() != g.m() {
        return None;
    }
    let mut mask = 0u64;
    for &(u, v) in d.arcs() {
        let i = g.edge_index(u, v)?;
        if u > v {
            mask |= 1 << i;
        }
    }
    Some(mask)
}

pub fn reverse(d: &Digraph) -> Digraph {
    let arcs = d.arcs.iter().map(|&(u, v)| (v, u)).collect();
    Digraph::from_arcs_unchecked(d.n, arcs)
}

/// Every vertex is a sink or a source.
pub fn is_sink_source(d: &Digraph) -> bool {
    d.out_deg.iter().zip(&d.in_deg).all(|(&p, &q)| p == 0 || q == 0)
}
