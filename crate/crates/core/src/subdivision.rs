//! Even subdivisions of K4 and of the blossom pair T.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::matching::has_perfect_matching_within;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubdivisionKind {
    K4,
    T,
}

impl fmt::Display for SubdivisionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubdivisionKind::K4 => "K4",
            SubdivisionKind::T => "T",
        })
    }
}

/// Corner-slot pairs of the six K4 paths, in storage order.
pub const K4_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// An even subdivision of K4 or T inside some host graph.
///
/// For K4, `corners` holds the four branch vertices and `paths[i]` joins
/// `corners[K4_PAIRS[i].0]` to `corners[K4_PAIRS[i].1]`. For T, `corners` holds the two
/// tips, `paths[0]` runs from the first tip to the second and `cycles[i]` starts at
/// `corners[i]` and lists the cycle once without returning to the tip.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EvenSubdivision {
    pub kind: SubdivisionKind,
    pub corners: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
    #[serde(default)]
    pub cycles: Vec<Vec<usize>>,
}

fn path_edges(p: &[usize]) -> impl Iterator<Item = Edge> + '_ {
    p.windows(2).map(|w| Edge::new(w[0], w[1]))
}

fn cycle_edges(c: &[usize]) -> impl Iterator<Item = Edge> + '_ {
    (0..c.len()).map(move |i| Edge::new(c[i], c[(i + 1) % c.len()]))
}

/// Orients a cycle to start at `start` and continue toward its smaller neighbour.
fn orient_cycle(c: &[usize], start: usize) -> Vec<usize> {
    let k = c.len();
    let i = c.iter().position(|&x| x == start).expect("start on cycle");
    let fwd: Vec<usize> = (0..k).map(|j| c[(i + j) % k]).collect();
    let bwd: Vec<usize> = (0..k).map(|j| c[(i + k - j) % k]).collect();
    if k > 1 && bwd[1] < fwd[1] {
        bwd
    } else {
        fwd
    }
}

impl EvenSubdivision {
    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.corners.clone();
        for p in &self.paths {
            v.extend(p);
        }
        for c in &self.cycles {
            v.extend(c);
        }
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut e: Vec<Edge> = self.paths.iter().flat_map(|p| path_edges(p)).collect();
        for c in &self.cycles {
            e.extend(cycle_edges(c));
        }
        e.sort_unstable();
        e
    }

    pub fn order(&self) -> usize {
        self.vertices().len()
    }

    /// Checks the defining structure and that every edge lies in `g`.
    pub fn check(&self, g: &Graph) -> std::result::Result<(), WitnessDefect> {
        let n = g.n();
        let all: Vec<usize> = self.vertices();
        if all.iter().any(|&v| v >= n) {
            return Err(WitnessDefect::Shape);
        }
        if self.edges().iter().any(|e| !g.has_edge(e.0, e.1)) {
            return Err(WitnessDefect::MissingEdge);
        }
        let mut count = vec![0usize; n];
        match self.kind {
            SubdivisionKind::K4 => {
                if self.corners.len() != 4 || self.paths.len() != 6 || !self.cycles.is_empty() {
                    return Err(WitnessDefect::Shape);
                }
                for (p, &(a, b)) in self.paths.iter().zip(K4_PAIRS.iter()) {
                    if p.len() < 2 || p[0] != self.corners[a] || p[p.len() - 1] != self.corners[b] {
                        return Err(WitnessDefect::Shape);
                    }
                    if p.len() % 2 != 0 {
                        return Err(WitnessDefect::Parity);
                    }
                    for &v in &p[1..p.len() - 1] {
                        count[v] += 1;
                    }
                }
                for &c in &self.corners {
                    count[c] += 1;
                }
            }
            SubdivisionKind::T => {
                if self.corners.len() != 2 || self.paths.len() != 1 || self.cycles.len() != 2 {
                    return Err(WitnessDefect::Shape);
                }
                let p = &self.paths[0];
                if p.len() < 2 || p[0] != self.corners[0] || p[p.len() - 1] != self.corners[1] {
                    return Err(WitnessDefect::Shape);
                }
                for (c, &t) in self.cycles.iter().zip(&self.corners) {
                    if c.len() < 3 || c[0] != t {
                        return Err(WitnessDefect::Shape);
                    }
                    if c.len() % 2 == 0 {
                        return Err(WitnessDefect::Parity);
                    }
                    for &v in c {
                        count[v] += 1;
                    }
                }
                if p.len() % 2 != 0 {
                    return Err(WitnessDefect::Parity);
                }
                for &v in &p[1..p.len() - 1] {
                    count[v] += 1;
                }
            }
        }
        if self.corners[0] == self.corners[1] || count.iter().any(|&c| c > 1) {
            return Err(WitnessDefect::Shape);
        }
        Ok(())
    }

    /// Sorted corners (K4) or tips (T), paths oriented from the lower slot, cycles from their tips.
    pub fn canonical(&self) -> EvenSubdivision {
        match self.kind {
            SubdivisionKind::K4 => {
                let mut order: Vec<usize> = (0..4).collect();
                order.sort_by_key(|&i| self.corners[i]);
                self.with_corner_order(&order)
            }
            SubdivisionKind::T => {
                if self.corners[0] <= self.corners[1] {
                    let cycles = self.cycles.iter().zip(&self.corners).map(|(c, &t)| orient_cycle(c, t)).collect();
                    EvenSubdivision { cycles, ..self.clone() }
                } else {
                    let mut p = self.paths[0].clone();
                    p.reverse();
                    EvenSubdivision {
                        kind: SubdivisionKind::T,
                        corners: vec![self.corners[1], self.corners[0]],
                        paths: vec![p],
                        cycles: vec![
                            orient_cycle(&self.cycles[1], self.corners[1]),
                            orient_cycle(&self.cycles[0], self.corners[0]),
                        ],
                    }
                }
            }
        }
    }

    /// K4 witness relabelled so that new slot `i` is old slot `order[i]`.
    pub fn with_corner_order(&self, order: &[usize]) -> EvenSubdivision {
        assert_eq!(self.kind, SubdivisionKind::K4);
        let corners: Vec<usize> = order.iter().map(|&i| self.corners[i]).collect();
        let paths = K4_PAIRS
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (order[a], order[b]);
                let idx = K4_PAIRS.iter().position(|&(p, q)| (p, q) == (x.min(y), x.max(y))).unwrap();
                let mut p = self.paths[idx].clone();
                if x > y {
                    p.reverse();
                }
                p
            })
            .collect();
        EvenSubdivision { kind: SubdivisionKind::K4, corners, paths, cycles: Vec::new() }
    }

    /// Maps every vertex through `f`.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> EvenSubdivision {
        EvenSubdivision {
            kind: self.kind,
            corners: self.corners.iter().map(|&v| f(v)).collect(),
            paths: self.paths.iter().map(|p| p.iter().map(|&v| f(v)).collect()).collect(),
            cycles: self.cycles.iter().map(|c| c.iter().map(|&v| f(v)).collect()).collect(),
        }
    }
}

/// Why a witness fails validation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessDefect {
    Shape,
    Parity,
    MissingEdge,
    NotNice,
}

impl fmt::Display for WitnessDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessDefect::Shape => "shape",
            WitnessDefect::Parity => "parity",
            WitnessDefect::MissingEdge => "missing edge",
            WitnessDefect::NotNice => "not nice",
        })
    }
}

/// Follows a degree-2 chain from `start` through `first` until a branch vertex.
fn trace(h: &Graph, branch: &[bool], start: usize, first: usize) -> Vec<usize> {
    let mut path = vec![start, first];
    let (mut prev, mut cur) = (start, first);
    while !branch[cur] {
        let nb = h.neighbors(cur);
        let next = if nb[0] != prev { nb[0] } else { nb[1] };
        path.push(next);
        prev = cur;
        cur = next;
        if path.len() > h.n() + 1 {
            break;
        }
    }
    path
}

fn degree_shape(h: &Graph, branches: usize) -> Option<Vec<usize>> {
    if !h.is_connected() {
        return None;
    }
    let mut corners = Vec::new();
    for v in 0..h.n() {
        match h.degree(v) {
            2 => {}
            3 => corners.push(v),
            _ => return None,
        }
    }
    (corners.len() == branches).then_some(corners)
}

/// Whether the whole graph is an even subdivision of K4; returns the canonical witness.
pub fn recognize_even_k4_subdivision(h: &Graph) -> Option<EvenSubdivision> {
    let corners = degree_shape(h, 4)?;
    let mut branch = vec![false; h.n()];
    for &c in &corners {
        branch[c] = true;
    }
    let slot = |v: usize| corners.iter().position(|&c| c == v);
    let mut paths: Vec<Option<Vec<usize>>> = vec![None; 6];
    for (i, &c) in corners.iter().enumerate() {
        for &nb in h.neighbors(c) {
            let p = trace(h, &branch, c, nb);
            let j = slot(*p.last().unwrap())?;
            if j == i {
                return None;
            }
            if j > i {
                let k = K4_PAIRS.iter().position(|&pair| pair == (i, j)).unwrap();
                if paths[k].is_some() || p.len() % 2 != 0 {
                    return None;
                }
                paths[k] = Some(p);
            }
        }
    }
    let paths: Vec<Vec<usize>> = paths.into_iter().collect::<Option<_>>()?;
    Some(EvenSubdivision { kind: SubdivisionKind::K4, corners, paths, cycles: Vec::new() })
}

/// Whether the whole graph is an even subdivision of T; returns the canonical witness.
pub fn recognize_even_t_subdivision(h: &Graph) -> Option<EvenSubdivision> {
    let tips = degree_shape(h, 2)?;
    let mut branch = vec![false; h.n()];
    for &t in &tips {
        branch[t] = true;
    }
    let mut cycles = Vec::new();
    let mut path = None;
    for (i, &t) in tips.iter().enumerate() {
        let mut loops = Vec::new();
        for &nb in h.neighbors(t) {
            let p = trace(h, &branch, t, nb);
            if *p.last().unwrap() == t {
                loops.push(p);
            } else if i == 0 {
                if path.is_some() {
                    return None;
                }
                path = Some(p);
            }
        }
        if loops.len() != 2 {
            return None;
        }
        let mut c = loops.swap_remove(0);
        c.pop();
        if c.len() % 2 == 0 {
            return None;
        }
        cycles.push(orient_cycle(&c, t));
    }
    let path = path?;
    if path.len() % 2 != 0 {
        return None;
    }
    Some(EvenSubdivision { kind: SubdivisionKind::T, corners: tips, paths: vec![path], cycles })
}

/// Either kind, T first.
pub fn recognize_even_subdivision(h: &Graph) -> Option<EvenSubdivision> {
    recognize_even_t_subdivision(h).or_else(|| recognize_even_k4_subdivision(h))
}

/// The graph formed by the witness edges on `host`'s vertex set, restricted to the witness vertices.
pub fn witness_graph(s: &EvenSubdivision) -> (Graph, Vec<usize>) {
    let verts = s.vertices();
    let idx = |v: usize| verts.binary_search(&v).unwrap();
    let edges: Vec<Edge> = s.edges().into_iter().map(|e| Edge::new(idx(e.0), idx(e.1))).collect();
    (Graph::build(verts.len(), &edges), verts)
}

fn match_full(p: &[usize], out: &mut Vec<Edge>) {
    for w in p.chunks(2) {
        out.push(Edge::new(w[0], w[1]));
    }
}

fn match_interior(p: &[usize], out: &mut Vec<Edge>) {
    if p.len() > 2 {
        match_full(&p[1..p.len() - 1], out);
    }
}

/// Perfect matching of a K4 witness: P12 and P34 matched along their length, the
/// interiors of the other four paths matched among themselves.
pub fn k4_subdivision_perfect_matching(s: &EvenSubdivision) -> Result<Vec<Edge>> {
    if s.kind != SubdivisionKind::K4 || s.paths.len() != 6 {
        return Err(Error::invalid("expected a K4 witness"));
    }
    let mut out = Vec::new();
    match_full(&s.paths[0], &mut out);
    match_full(&s.paths[5], &mut out);
    for i in 1..5 {
        match_interior(&s.paths[i], &mut out);
    }
    out.sort_unstable();
    Ok(out)
}

/// The unique perfect matching of a T witness.
pub fn t_subdivision_unique_pm(s: &EvenSubdivision) -> Result<Vec<Edge>> {
    if s.kind != SubdivisionKind::T || s.paths.len() != 1 || s.cycles.len() != 2 {
        return Err(Error::invalid("expected a T witness"));
    }
    let mut out = Vec::new();
    match_full(&s.paths[0], &mut out);
    for c in &s.cycles {
        match_full(&c[1..], &mut out);
    }
    out.sort_unstable();
    Ok(out)
}

/// The matching of the witness given by its own construction.
pub fn subdivision_perfect_matching(s: &EvenSubdivision) -> Result<Vec<Edge>> {
    match s.kind {
        SubdivisionKind::K4 => k4_subdivision_perfect_matching(s),
        SubdivisionKind::T => t_subdivision_unique_pm(s),
    }
}

/// `G − V(S)` has a perfect matching.
pub fn is_nice(g: &Graph, s: &EvenSubdivision) -> bool {
    let mut alive = vec![true; g.n()];
    for v in s.vertices() {
        if v < g.n() {
            alive[v] = false;
        }
    }
    has_perfect_matching_within(g, &alive)
}

/// Replaces each listed edge by a path with the given (even) number of new vertices,
/// appended in plan order.
pub fn subdivide_edges_even(g: &Graph, plan: &[(Edge, usize)]) -> Result<Graph> {
    let mut edges: Vec<Edge> = g.edge_vec();
    let mut next = g.n();
    for &(e, k) in plan {
        let e = Edge::new(e.0, e.1);
        g.check_edge(e)?;
        if k % 2 == 1 {
            return Err(Error::invalid(format!("odd subdivision count {k} on edge {e}")));
        }
        if k == 0 {
            continue;
        }
        let pos = edges.iter().position(|&f| f == e).ok_or(Error::invalid(format!("edge {e} listed twice")))?;
        edges.swap_remove(pos);
        let mut prev = e.0;
        for _ in 0..k {
            edges.push(Edge::new(prev, next));
            prev = next;
            next += 1;
        }
        edges.push(Edge::new(prev, e.1));
    }
    Ok(Graph::build(next, &edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn t() -> Graph {
        Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap()
    }

    #[test]
    fn k4_recognised() {
        let s = recognize_even_k4_subdivision(&k4()).unwrap();
        assert_eq!(s.corners, vec![0, 1, 2, 3]);
        assert_eq!(k4_subdivision_perfect_matching(&s).unwrap(), vec![Edge(0, 1), Edge(2, 3)]);
        assert!(s.check(&k4()).is_ok());
        assert!(recognize_even_t_subdivision(&k4()).is_none());
    }

    #[test]
    fn odd_subdivision_rejected() {
        let g = subdivide_edges_even(&k4(), &[(Edge(0, 1), 2)]).unwrap();
        assert!(recognize_even_k4_subdivision(&g).is_some());
        assert!(subdivide_edges_even(&k4(), &[(Edge(0, 1), 1)]).is_err());
        // one extra vertex makes an odd path
        let odd = Graph::from_edges(5, [(0, 4), (4, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(recognize_even_k4_subdivision(&odd).is_none());
    }

    #[test]
    fn t_recognised() {
        let s = recognize_even_t_subdivision(&t()).unwrap();
        assert_eq!(s.corners, vec![2, 3]);
        assert_eq!(s.paths, vec![vec![2, 3]]);
        assert_eq!(s.cycles, vec![vec![2, 0, 1], vec![3, 4, 5]]);
        assert_eq!(t_subdivision_unique_pm(&s).unwrap(), vec![Edge(0, 1), Edge(2, 3), Edge(4, 5)]);
        assert!(is_nice(&t(), &s));
        assert!(s.check(&t()).is_ok());
    }

    #[test]
    fn defects_reported() {
        let mut s = recognize_even_t_subdivision(&t()).unwrap();
        s.cycles[0].pop();
        assert_eq!(s.check(&t()), Err(WitnessDefect::Shape));
        let mut s = recognize_even_k4_subdivision(&k4()).unwrap();
        s.paths[0] = vec![0, 2, 1];
        assert_eq!(s.check(&k4()), Err(WitnessDefect::Parity));
    }

    #[test]
    fn corner_reorder_roundtrip() {
        let g = subdivide_edges_even(&k4(), &[(Edge(0, 2), 2), (Edge(1, 3), 4)]).unwrap();
        let s = recognize_even_k4_subdivision(&g).unwrap();
        let r = s.with_corner_order(&[0, 2, 1, 3]);
        assert!(r.check(&g).is_ok());
        assert_eq!(r.canonical(), s);
        let pm = k4_subdivision_perfect_matching(&r).unwrap();
        assert_eq!(pm.len(), g.n() / 2);
    }
}
