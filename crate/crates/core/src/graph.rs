use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::{iter_words, words_for, Bits};
use crate::error::{Error, Result};

/// An undirected edge with `0 < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn other(&self, v: usize) -> usize {
        if v == self.0 {
            self.1
        } else {
            self.0
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Immutable simple graph on `0..n` with sorted adjacency lists and adjacency bitsets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    offsets: Vec<usize>,
    nbrs: Vec<usize>,
    labels: Option<Vec<String>>,
}

/// An induced subgraph together with the parent index of each of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Induced {
    pub graph: Graph,
    pub parent: Vec<usize>,
}

impl Induced {
    pub fn to_parent(&self, v: usize) -> usize {
        self.parent[v]
    }

    pub fn edge_to_parent(&self, e: Edge) -> Edge {
        Edge::new(self.parent[e.0], self.parent[e.1])
    }

    /// Index in the subgraph of a parent vertex, if present.
    pub fn from_parent(&self, p: usize) -> Option<usize> {
        self.parent.binary_search(&p).ok()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph::build(n, &[])
    }

    /// Builds a graph, rejecting self-loops and out-of-range endpoints. Parallel edges collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n {
                return Err(Error::VertexOutOfRange(a));
            }
            if b >= n {
                return Err(Error::VertexOutOfRange(b));
            }
            if a == b {
                return Err(Error::invalid(format!("self-loop at vertex {a}")));
            }
            list.push(Edge::new(a, b));
        }
        Ok(Graph::build(n, &list))
    }

    pub(crate) fn build(n: usize, edges: &[Edge]) -> Self {
        let words = words_for(n);
        let mut rows = vec![0u64; n * words];
        for e in edges {
            rows[e.0 * words + (e.1 >> 6)] |= 1 << (e.1 & 63);
            rows[e.1 * words + (e.0 >> 6)] |= 1 << (e.0 & 63);
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut nbrs = Vec::new();
        offsets.push(0);
        for v in 0..n {
            nbrs.extend(iter_words(&rows[v * words..(v + 1) * words]));
            offsets.push(nbrs.len());
        }
        Graph { n, words, rows, offsets, nbrs, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::invalid("label count differs from vertex count"));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.nbrs.len() / 2
    }

    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Adjacency row as a single word; only meaningful when `n <= 64`.
    #[inline]
    pub fn mask(&self, v: usize) -> u64 {
        self.rows[v * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.words + (v >> 6)] >> (v & 63) & 1 == 1
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v))
        }
    }

    pub fn check_edge(&self, e: Edge) -> Result<()> {
        self.check_vertex(e.0)?;
        self.check_vertex(e.1)?;
        if self.has_edge(e.0, e.1) {
            Ok(())
        } else {
            Err(Error::NotAnEdge(e.0, e.1))
        }
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u).iter().filter(move |&&v| v > u).map(move |&v| Edge(u, v))
        })
    }

    pub fn edge_vec(&self) -> Vec<Edge> {
        self.edges().collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Closed neighbourhood of `v` as a bitset.
    pub fn closed_row(&self, v: usize) -> Bits {
        let mut b = Bits::from_words(self.row(v));
        b.insert(v);
        b
    }

    /// Vertex sets of the connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Subgraph induced by `vertices` (any order, duplicates ignored); vertices renumbered in increasing order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Induced> {
        let mut parent: Vec<usize> = vertices.to_vec();
        parent.sort_unstable();
        parent.dedup();
        if let Some(&v) = parent.last() {
            self.check_vertex(v)?;
        }
        let mut index = vec![usize::MAX; self.n];
        for (i, &p) in parent.iter().enumerate() {
            index[p] = i;
        }
        let mut edges = Vec::new();
        for (i, &p) in parent.iter().enumerate() {
            for &q in self.neighbors(p) {
                let j = index[q];
                if j != usize::MAX && j > i {
                    edges.push(Edge(i, j));
                }
            }
        }
        let mut graph = Graph::build(parent.len(), &edges);
        if let Some(l) = &self.labels {
            graph.labels = Some(parent.iter().map(|&p| l[p].clone()).collect());
        }
        Ok(Induced { graph, parent })
    }

    pub fn delete_vertices(&self, removed: &[usize]) -> Result<Induced> {
        let mut gone = vec![false; self.n];
        for &v in removed {
            self.check_vertex(v)?;
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !gone[v]).collect();
        self.induced_subgraph(&keep)
    }

    pub fn delete_edge(&self, e: Edge) -> Result<Graph> {
        let e = Edge::new(e.0, e.1);
        self.check_edge(e)?;
        let edges: Vec<Edge> = self.edges().filter(|&f| f != e).collect();
        let mut g = Graph::build(self.n, &edges);
        g.labels = self.labels.clone();
        Ok(g)
    }

    pub fn add_edges(&self, extra: &[Edge]) -> Result<Graph> {
        let mut edges = self.edge_vec();
        for &e in extra {
            self.check_vertex(e.0)?;
            self.check_vertex(e.1)?;
            if e.0 == e.1 {
                return Err(Error::invalid(format!("self-loop at vertex {}", e.0)));
            }
            edges.push(Edge::new(e.0, e.1));
        }
        Ok(Graph::build(self.n, &edges))
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let k = self.n;
        let mut edges = self.edge_vec();
        edges.extend(other.edges().map(|e| Edge(e.0 + k, e.1 + k)));
        Graph::build(k + other.n, &edges)
    }

    /// Relabels by `perm`, where vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::invalid("permutation length differs from vertex count"));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(Error::invalid("not a permutation"));
            }
            seen[p] = true;
        }
        let edges: Vec<Edge> = self.edges().map(|e| Edge::new(perm[e.0], perm[e.1])).collect();
        Ok(Graph::build(self.n, &edges))
    }

    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    edges.push(Edge(u, v));
                }
            }
        }
        Graph::build(self.n, &edges)
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v)))
    }

    /// Open neighbourhood of a vertex set.
    pub fn neighborhood(&self, set: &[usize]) -> Vec<usize> {
        let mut b = Bits::new(self.n);
        for &v in set {
            b.union_with(self.row(v));
        }
        b.to_vec()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for v in 0..self.n {
            match &self.labels {
                Some(l) => s.push_str(&format!("  {v} [label=\"{}\"];\n", l[v].replace('"', "\\\""))),
                None => s.push_str(&format!("  {v};\n")),
            }
        }
        for e in self.edges() {
            s.push_str(&format!("  {} -- {};\n", e.0, e.1));
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&crate::io::to_graph6(self))
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        crate::io::parse_graph6(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn induced_keeps_parent_map() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let h = g.induced_subgraph(&[4, 1, 0]).unwrap();
        assert_eq!(h.parent, vec![0, 1, 4]);
        assert_eq!(h.graph.edge_vec(), vec![Edge(0, 1), Edge(0, 2)]);
        assert_eq!(h.from_parent(4), Some(2));
    }

    #[test]
    fn delete_missing_edge_is_error() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(g.delete_edge(Edge(1, 2)), Err(Error::NotAnEdge(1, 2)));
        assert_eq!(g.delete_edge(Edge(1, 0)).unwrap().m(), 0);
    }

    #[test]
    fn self_loop_rejected() {
        assert!(Graph::from_edges(2, [(1, 1)]).is_err());
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
    }

    #[test]
    fn wide_graph_rows() {
        let g = Graph::from_edges(130, [(0, 129), (64, 65)]).unwrap();
        assert!(g.has_edge(129, 0));
        assert_eq!(g.neighbors(65), &[64]);
        assert_eq!(g.components().len(), 128);
    }

    #[test]
    fn dot_output() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(g.to_dot(), "graph G {\n  0;\n  1;\n  0 -- 1;\n}\n");
    }
}
