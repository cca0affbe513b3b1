//! Simple undirected graphs stored as bit-set adjacency rows, plus the graph
//! operations (complement, line graph, cone, blow-up products, Cartesian
//! product, unions) that every named construction in this crate composes.

use std::collections::VecDeque;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest order a materialized [`Graph`] may have.
pub const MAX_ORDER: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {0} is outside the supported range 1..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("part list is empty")]
    EmptyParts,
    #[error("part {index} has size zero")]
    ZeroPart { index: usize },
    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("operation requires at least one edge")]
    Edgeless,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// A simple undirected graph on vertices `0..n`.
///
/// Rows are bit sets: bit `j` of row `i` is set iff `i ~ j`. Graphs are
/// immutable once built; every operation returns a new graph.
#[derive(Clone, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    label: Option<String>,
}

/// Sorted degree sequence together with regularity information.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub is_regular: bool,
    /// Common degree when the graph is regular.
    pub r: Option<usize>,
}

/// A connected component together with the map back to the parent's vertices.
#[derive(Debug, Clone)]
pub struct Component {
    pub graph: Graph,
    /// `vertices[i]` is the parent vertex that became vertex `i` of `graph`.
    pub vertices: Vec<usize>,
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

fn check_order(n: usize) -> Result<(), GraphError> {
    if n == 0 || n > MAX_ORDER {
        return Err(GraphError::OrderOutOfRange(n));
    }
    Ok(())
}

impl Graph {
    /// Builds a graph from a symmetric predicate evaluated on every pair `i < j`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Result<Graph, GraphError> {
        check_order(n)?;
        let words = words_for(n);
        let mut rows = vec![0u64; n * words];
        for i in 0..n {
            for j in (i + 1)..n {
                if adjacent(i, j) {
                    rows[i * words + j / 64] |= 1 << (j % 64);
                    rows[j * words + i / 64] |= 1 << (i % 64);
                }
            }
        }
        let g = Graph { n, words, rows, label: None };
        debug_assert!(g.is_well_formed());
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        check_order(n)?;
        let words = words_for(n);
        let mut rows = vec![0u64; n * words];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            rows[u * words + v / 64] |= 1 << (v % 64);
            rows[v * words + u / 64] |= 1 << (u % 64);
        }
        Ok(Graph { n, words, rows, label: None })
    }

    /// Graph on `n <= 11` vertices whose edges are selected by `mask`, bit `k`
    /// standing for the `k`-th pair in graph6 order `(0,1), (0,2), (1,2), (0,3), ...`.
    pub fn from_edge_mask(n: usize, mask: u64) -> Result<Graph, GraphError> {
        check_order(n)?;
        if n * (n - 1) / 2 > 64 {
            return Err(GraphError::InvalidParameter(format!("edge mask cannot address order {n}")));
        }
        let mut rows = vec![0u64; n];
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if mask >> k & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
                k += 1;
            }
        }
        Ok(Graph { n, words: 1, rows, label: None })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Graph {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + b)
            })
        })
    }

    /// Number of common neighbours of `i` and `j`, i.e. the `(i, j)` entry of `A²`.
    pub fn common_neighbors(&self, i: usize, j: usize) -> usize {
        self.row(i)
            .iter()
            .zip(self.row(j))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            out.extend(self.neighbors(i).filter(|&j| j > i).map(|j| (i, j)));
        }
        out
    }

    /// Row-major integer adjacency matrix.
    pub fn adjacency_i64(&self) -> Vec<i64> {
        let n = self.n;
        let mut a = vec![0i64; n * n];
        for i in 0..n {
            for j in self.neighbors(i) {
                a[i * n + j] = 1;
            }
        }
        a
    }

    pub fn adjacency_f64(&self) -> Vec<f64> {
        self.adjacency_i64().into_iter().map(|x| x as f64).collect()
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let mut degrees: Vec<usize> = (0..self.n).map(|i| self.degree(i)).collect();
        degrees.sort_unstable();
        let is_regular = degrees.first() == degrees.last();
        let r = if is_regular { degrees.first().copied() } else { None };
        DegreeProfile { degrees, is_regular, r }
    }

    /// Common degree, or `None` when the graph is irregular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (1..self.n).all(|i| self.degree(i) == d).then_some(d)
    }

    fn is_well_formed(&self) -> bool {
        (0..self.n).all(|i| {
            !self.has_edge(i, i)
                && self.neighbors(i).all(|j| j < self.n && self.has_edge(j, i))
        })
    }

    /// Vertex `i` of the result is vertex `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::InvalidParameter("permutation length mismatch".into()));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(GraphError::InvalidParameter("not a permutation".into()));
            }
        }
        Graph::from_fn(self.n, |i, j| self.has_edge(perm[i], perm[j]))
    }

    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        for &v in vertices {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        Graph::from_fn(vertices.len(), |i, j| self.has_edge(vertices[i], vertices[j]))
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn connected_components(&self) -> Vec<Component> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut verts = vec![s];
            comp[s] = id;
            let mut head = 0;
            while head < verts.len() {
                let u = verts[head];
                head += 1;
                for v in self.neighbors(u) {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        verts.push(v);
                    }
                }
            }
            verts.sort_unstable();
            let graph = self
                .induced_subgraph(&verts)
                .expect("component vertices are in range");
            out.push(Component { graph, vertices: verts });
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.distances_from(0).iter().all(Option::is_some)
    }

    /// Two-colourability by BFS.
    pub fn is_bipartite(&self) -> bool {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u] == Some(true);
                for v in self.neighbors(u) {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            queue.push_back(v);
                        }
                        Some(sv) if sv == su => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// Largest eccentricity; `None` for a disconnected graph (infinite diameter).
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.n {
            for d in self.distances_from(s) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    /// Part sizes (ascending) when the graph is complete multipartite, i.e. when
    /// non-adjacency is an equivalence relation. Edgeless graphs count as one part.
    pub fn complete_multipartite_parts(&self) -> Option<Vec<usize>> {
        let co = self.complement();
        let comps = co.connected_components();
        let mut parts = Vec::with_capacity(comps.len());
        for c in &comps {
            let k = c.vertices.len();
            if c.graph.edge_count() != k * (k - 1) / 2 {
                return None;
            }
            parts.push(k);
        }
        parts.sort_unstable();
        Some(parts)
    }

    /// `Some((p, q))` with `p <= q` when the graph is exactly `K_{p,q}`.
    pub fn complete_bipartite_parts(&self) -> Option<(usize, usize)> {
        match self.complete_multipartite_parts()?.as_slice() {
            &[p, q] => Some((p, q)),
            _ => None,
        }
    }

    // ---- operations ---------------------------------------------------------

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.n, |i, j| !self.has_edge(i, j)).expect("same order")
    }

    /// Vertices are the edges of `self` in [`Graph::edges`] order.
    pub fn line_graph(&self) -> Result<Graph, GraphError> {
        let edges = self.edges();
        if edges.is_empty() {
            return Err(GraphError::Edgeless);
        }
        Graph::from_fn(edges.len(), |a, b| {
            let (u, v) = edges[a];
            let (x, y) = edges[b];
            u == x || u == y || v == x || v == y
        })
    }

    /// Adds apex vertex `n` adjacent to every existing vertex.
    pub fn cone(&self) -> Result<Graph, GraphError> {
        let n = self.n;
        Graph::from_fn(n + 1, |i, j| j == n || self.has_edge(i, j))
    }

    /// `G ⊗ J_m`: vertex `(u, i)` is `u*m + i`; `(u,i) ~ (v,j)` iff `u ~ v`.
    pub fn tensor_j(&self, m: usize) -> Result<Graph, GraphError> {
        if m == 0 {
            return Err(GraphError::InvalidParameter("blow-up factor must be at least 1".into()));
        }
        Graph::from_fn(self.n * m, |a, b| self.has_edge(a / m, b / m))
    }

    /// `G ⊛ J_m` with adjacency `(A + I) ⊗ J_m − I`: clones of one vertex form a clique.
    pub fn star_j(&self, m: usize) -> Result<Graph, GraphError> {
        if m == 0 {
            return Err(GraphError::InvalidParameter("blow-up factor must be at least 1".into()));
        }
        Graph::from_fn(self.n * m, |a, b| a / m == b / m || self.has_edge(a / m, b / m))
    }

    /// `G □ H`: vertex `(u, x)` is `u*|V(H)| + x`.
    pub fn cartesian_product(&self, other: &Graph) -> Result<Graph, GraphError> {
        let k = other.n;
        Graph::from_fn(self.n * k, |a, b| {
            let (u, x) = (a / k, a % k);
            let (v, y) = (b / k, b % k);
            (u == v && other.has_edge(x, y)) || (x == y && self.has_edge(u, v))
        })
    }

    /// Vertices at distance exactly `k` become adjacent.
    pub fn distance_graph(&self, k: usize) -> Result<Graph, GraphError> {
        if k == 0 {
            return Err(GraphError::InvalidParameter("distance must be positive".into()));
        }
        let dist: Vec<Vec<Option<usize>>> = (0..self.n).map(|s| self.distances_from(s)).collect();
        Graph::from_fn(self.n, |i, j| dist[i][j] == Some(k))
    }

    pub fn disjoint_union(graphs: &[Graph]) -> Result<Graph, GraphError> {
        let mut offsets = Vec::with_capacity(graphs.len());
        let mut total = 0;
        for g in graphs {
            offsets.push(total);
            total += g.n;
        }
        let mut edges = Vec::new();
        for (g, off) in graphs.iter().zip(offsets) {
            edges.extend(g.edges().into_iter().map(|(u, v)| (u + off, v + off)));
        }
        Graph::from_edges(total, &edges)
    }

    // ---- elementary constructors -------------------------------------------

    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        Graph::from_fn(n, |_, _| true)
    }

    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        Graph::from_fn(n, |_, _| false)
    }

    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::OrderOutOfRange(n));
        }
        Graph::from_fn(n, |i, j| j == i + 1 || (i == 0 && j == n - 1))
    }

    pub fn path(n: usize) -> Result<Graph, GraphError> {
        Graph::from_fn(n, |i, j| j == i + 1)
    }

    /// `K_{p₁,…,p_r}`: vertices are numbered part by part.
    pub fn complete_multipartite(parts: &[usize]) -> Result<Graph, GraphError> {
        if parts.is_empty() {
            return Err(GraphError::EmptyParts);
        }
        if let Some(index) = parts.iter().position(|&p| p == 0) {
            return Err(GraphError::ZeroPart { index });
        }
        let owner: Vec<usize> = parts
            .iter()
            .enumerate()
            .flat_map(|(k, &p)| std::iter::repeat_n(k, p))
            .collect();
        Graph::from_fn(owner.len(), |i, j| owner[i] != owner[j])
    }

    pub fn complete_bipartite(p: usize, q: usize) -> Result<Graph, GraphError> {
        Graph::complete_multipartite(&[p, q])
    }

    /// `K⁻_{ℓ,ℓ}`: `K_{ℓ,ℓ}` minus the perfect matching `i ~ ℓ+i`.
    pub fn k_minus(l: usize) -> Result<Graph, GraphError> {
        if l <= 2 {
            return Err(GraphError::InvalidParameter(format!("K-minus needs l > 2, got {l}")));
        }
        Graph::from_fn(2 * l, |i, j| i < l && j >= l && j - l != i)
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows
    }
}

impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.rows.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.edge_count())
            .field("label", &self.label)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic;

    #[test]
    fn elementary_constructors() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(k4.regular_degree(), Some(3));
        assert_eq!(Graph::empty(5).unwrap().edge_count(), 0);
        assert!(are_isomorphic(&Graph::cycle(4).unwrap(), &Graph::complete_bipartite(2, 2).unwrap()));
        assert!(Graph::cycle(2).is_err());
        assert_eq!(Graph::complete(0), Err(GraphError::OrderOutOfRange(0)));
        assert!(Graph::complete(MAX_ORDER + 1).is_err());
    }

    #[test]
    fn multipartite_errors_and_shapes() {
        assert_eq!(Graph::complete_multipartite(&[]), Err(GraphError::EmptyParts));
        assert_eq!(Graph::complete_multipartite(&[2, 0]), Err(GraphError::ZeroPart { index: 1 }));
        let k23 = Graph::complete_bipartite(2, 3).unwrap();
        assert_eq!(k23.edge_count(), 6);
        assert!(k23.is_bipartite());
        let cp3 = Graph::complete_multipartite(&[2, 2, 2]).unwrap();
        assert_eq!(cp3.order(), 6);
        assert_eq!(cp3.regular_degree(), Some(4));
        assert_eq!(cp3.complete_multipartite_parts(), Some(vec![2, 2, 2]));
        assert_eq!(k23.complete_bipartite_parts(), Some((2, 3)));
        assert_eq!(Graph::path(4).unwrap().complete_multipartite_parts(), None);
    }

    #[test]
    fn k_minus_small_cases() {
        let q3 = Graph::k_minus(4).unwrap();
        assert_eq!((q3.order(), q3.edge_count()), (8, 12));
        assert_eq!(q3.regular_degree(), Some(3));
        let c6 = Graph::k_minus(3).unwrap();
        assert!(are_isomorphic(&c6, &Graph::cycle(6).unwrap()));
        assert!(Graph::k_minus(2).is_err());
    }

    #[test]
    fn complement_involution_and_self_complementary() {
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(k5.complement(), Graph::empty(5).unwrap());
        let c5 = Graph::cycle(5).unwrap();
        assert!(are_isomorphic(&c5.complement(), &c5));
        let p4 = Graph::path(4).unwrap();
        assert_eq!(p4.complement().complement(), p4);
    }

    #[test]
    fn line_graph_of_regular_graph() {
        let q3 = Graph::k_minus(4).unwrap();
        let lq3 = q3.line_graph().unwrap();
        assert_eq!(lq3.order(), 12);
        assert_eq!(lq3.regular_degree(), Some(4));
        assert_eq!(Graph::empty(3).unwrap().line_graph(), Err(GraphError::Edgeless));
    }

    #[test]
    fn cone_and_products() {
        let star = Graph::empty(4).unwrap().cone().unwrap();
        assert_eq!(star.complete_bipartite_parts(), Some((1, 4)));
        assert_eq!(star.degree(4), 4);

        let k2 = Graph::complete(2).unwrap();
        assert!(are_isomorphic(&k2.tensor_j(2).unwrap(), &Graph::complete_bipartite(2, 2).unwrap()));
        assert_eq!(Graph::complete(1).unwrap().star_j(5).unwrap(), Graph::complete(5).unwrap());
        assert!(k2.tensor_j(0).is_err());
        assert!(k2.star_j(0).is_err());
        assert!(are_isomorphic(&k2.cartesian_product(&k2).unwrap(), &Graph::cycle(4).unwrap()));
    }

    #[test]
    fn unions_components_and_distances() {
        let k2 = Graph::complete(2).unwrap();
        let u = Graph::disjoint_union(&[k2.clone(), k2.clone(), k2]).unwrap();
        let comps = u.connected_components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[1].vertices, vec![2, 3]);
        assert!(!u.is_connected());
        assert_eq!(u.diameter(), None);
        assert_eq!(Graph::path(5).unwrap().diameter(), Some(4));
        assert!(!Graph::cycle(5).unwrap().is_bipartite());
        assert!(Graph::cycle(6).unwrap().is_bipartite());
    }

    #[test]
    fn edge_mask_order_matches_graph6_pairs() {
        // bit 0 = (0,1), bit 1 = (0,2), bit 2 = (1,2)
        let g = Graph::from_edge_mask(3, 0b110).unwrap();
        assert_eq!(g.edges(), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
    }
}
