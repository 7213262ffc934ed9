use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

/// A matching stored as a mate array.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching { mate: vec![None; n] }
    }

    /// Validates that every edge is in `g` and no two edges share a vertex.
    pub fn from_edges(g: &Graph, edges: &[Edge]) -> Result<Self> {
        let mut m = Matching::empty(g.n());
        for &e in edges {
            let e = Edge::new(e.0, e.1);
            g.check_edge(e)?;
            if m.mate[e.0].is_some() || m.mate[e.1].is_some() {
                return Err(Error::invalid(format!("edges share a vertex at {e}")));
            }
            m.mate[e.0] = Some(e.1);
            m.mate[e.1] = Some(e.0);
        }
        Ok(m)
    }

    pub fn from_pairs(g: &Graph, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges: Vec<Edge> = pairs.iter().map(|&(a, b)| Edge::new(a, b)).collect();
        Matching::from_edges(g, &edges)
    }

    pub fn n(&self) -> usize {
        self.mate.len()
    }

    #[inline]
    pub fn mate(&self, v: usize) -> Option<usize> {
        self.mate[v]
    }

    pub fn mates(&self) -> &[Option<usize>] {
        &self.mate
    }

    pub fn size(&self) -> usize {
        self.mate.iter().filter(|m| m.is_some()).count() / 2
    }

    pub fn is_perfect(&self) -> bool {
        self.mate.iter().all(Option::is_some)
    }

    pub fn contains(&self, e: Edge) -> bool {
        e.0 < self.n() && self.mate[e.0] == Some(e.1)
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(u, m)| m.filter(|&v| v > u).map(|v| Edge(u, v)))
            .collect()
    }

    pub fn exposed(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.mate[v].is_none()).collect()
    }

    /// Checks the matching against `g` (edges present, symmetric).
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.n() == g.n()
            && self.mate.iter().enumerate().all(|(u, m)| match *m {
                None => true,
                Some(v) => v < g.n() && self.mate[v] == Some(u) && g.has_edge(u, v),
            })
    }

    pub fn require_perfect(&self, g: &Graph) -> Result<()> {
        if self.is_valid_for(g) && self.is_perfect() {
            Ok(())
        } else {
            Err(Error::NotPerfectMatching)
        }
    }

    /// The matching seen from an induced subgraph: edges with both ends inside.
    pub fn restrict(&self, parent: &[usize]) -> Matching {
        let mut m = Matching::empty(parent.len());
        for (i, &p) in parent.iter().enumerate() {
            if let Some(q) = self.mate[p] {
                if let Ok(j) = parent.binary_search(&q) {
                    m.mate[i] = Some(j);
                }
            }
        }
        m
    }

    pub(crate) fn set(&mut self, u: usize, v: usize) {
        self.mate[u] = Some(v);
        self.mate[v] = Some(u);
    }
}

impl Serialize for Matching {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.edges().serialize(s)
    }
}

#[derive(Deserialize)]
#[serde(transparent)]
pub struct MatchingEdges(pub Vec<Edge>);

/// Edmonds' blossom algorithm restricted to vertices with `alive[v]`.
struct Blossom<'a> {
    g: &'a Graph,
    alive: &'a [bool],
    mate: Vec<usize>,
    p: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

const NIL: usize = usize::MAX;

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph, alive: &'a [bool], init: Option<&Matching>) -> Self {
        let n = g.n();
        let mut mate = vec![NIL; n];
        if let Some(m) = init {
            for (u, &x) in m.mate.iter().enumerate() {
                if let Some(v) = x {
                    if alive[u] && alive[v] {
                        mate[u] = v;
                    }
                }
            }
        }
        Blossom {
            g,
            alive,
            mate,
            p: vec![NIL; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn greedy(&mut self) {
        for u in 0..self.g.n() {
            if !self.alive[u] || self.mate[u] != NIL {
                continue;
            }
            for &v in self.g.neighbors(u) {
                if self.alive[v] && self.mate[v] == NIL {
                    self.mate[u] = v;
                    self.mate[v] = u;
                    break;
                }
            }
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NIL {
                break;
            }
            a = self.p[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.p[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.p[v] = child;
            child = self.mate[v];
            v = self.p[self.mate[v]];
        }
    }

    /// BFS from an exposed root; returns the exposed endpoint of an augmenting path.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n();
        self.used.iter_mut().for_each(|x| *x = false);
        self.p.iter_mut().for_each(|x| *x = NIL);
        for i in 0..n {
            self.base[i] = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in self.g.neighbors(v) {
                if !self.alive[to] || self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NIL && self.p[self.mate[to]] != NIL) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.alive[i] && self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.p[to] == NIL {
                    self.p[to] = v;
                    if self.mate[to] == NIL {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        None
    }

    /// Vertex sequence of the augmenting path ending at `end`, from the root.
    fn path_to(&self, end: usize) -> Vec<usize> {
        let mut path = Vec::new();
        let mut v = end;
        while v != NIL {
            let pv = self.p[v];
            path.push(v);
            path.push(pv);
            v = self.mate[pv];
        }
        path.reverse();
        path
    }

    fn augment(&mut self, end: usize) {
        let mut v = end;
        while v != NIL {
            let pv = self.p[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }

    fn run(&mut self) {
        for r in 0..self.g.n() {
            if self.alive[r] && self.mate[r] == NIL {
                if let Some(end) = self.find_path(r) {
                    self.augment(end);
                }
            }
        }
    }

    fn into_matching(self) -> Matching {
        Matching { mate: self.mate.into_iter().map(|m| (m != NIL).then_some(m)).collect() }
    }
}

pub fn maximum_matching(g: &Graph) -> Matching {
    let alive = vec![true; g.n()];
    let mut b = Blossom::new(g, &alive, None);
    b.greedy();
    b.run();
    b.into_matching()
}

/// Maximum matching obtained by augmenting `init` (which must be a matching of `g`).
pub fn maximum_matching_from(g: &Graph, init: &Matching) -> Matching {
    let alive = vec![true; g.n()];
    let mut b = Blossom::new(g, &alive, Some(init));
    b.run();
    b.into_matching()
}

/// Maximum matching of the subgraph induced by `alive`, in the indices of `g`.
pub fn maximum_matching_within(g: &Graph, alive: &[bool]) -> Matching {
    let mut b = Blossom::new(g, alive, None);
    b.greedy();
    b.run();
    b.into_matching()
}

/// Augments `init` inside the subgraph induced by `alive`.
pub(crate) fn maximum_matching_from_within(g: &Graph, init: &Matching, alive: &[bool]) -> Matching {
    let mut b = Blossom::new(g, alive, Some(init));
    b.run();
    b.into_matching()
}

pub fn matching_number(g: &Graph) -> usize {
    maximum_matching(g).size()
}

pub fn has_perfect_matching(g: &Graph) -> bool {
    g.n() % 2 == 0 && maximum_matching(g).is_perfect()
}

pub fn has_perfect_matching_within(g: &Graph, alive: &[bool]) -> bool {
    let count = alive.iter().filter(|&&a| a).count();
    if count % 2 == 1 {
        return false;
    }
    let m = maximum_matching_within(g, alive);
    (0..g.n()).all(|v| !alive[v] || m.mate[v].is_some())
}

/// Perfect matching of `g` avoiding vertices outside `alive`, or `None`.
pub fn perfect_matching_within(g: &Graph, alive: &[bool]) -> Option<Matching> {
    let m = maximum_matching_within(g, alive);
    (0..g.n()).all(|v| !alive[v] || m.mate[v].is_some()).then_some(m)
}

/// Whether `e` lies in at least one perfect matching.
pub fn edge_in_some_perfect_matching(g: &Graph, e: Edge) -> Result<bool> {
    let e = Edge::new(e.0, e.1);
    g.check_edge(e)?;
    let mut alive = vec![true; g.n()];
    alive[e.0] = false;
    alive[e.1] = false;
    Ok(has_perfect_matching_within(g, &alive))
}

/// Edges lying in some perfect matching, in lexicographic order.
pub fn allowed_edges(g: &Graph) -> Vec<Edge> {
    if !has_perfect_matching(g) {
        return Vec::new();
    }
    let mut alive = vec![true; g.n()];
    g.edges()
        .filter(|e| {
            alive[e.0] = false;
            alive[e.1] = false;
            let ok = has_perfect_matching_within(g, &alive);
            alive[e.0] = true;
            alive[e.1] = true;
            ok
        })
        .collect()
}

/// Up to `cap` perfect matchings in a fixed deterministic order.
pub fn enumerate_perfect_matchings(g: &Graph, cap: usize) -> Vec<Matching> {
    fn rec(g: &Graph, m: &mut Matching, out: &mut Vec<Matching>, cap: usize) {
        if out.len() >= cap {
            return;
        }
        let Some(v) = (0..g.n()).find(|&v| m.mate[v].is_none()) else {
            out.push(m.clone());
            return;
        };
        for &u in g.neighbors(v) {
            if m.mate[u].is_none() {
                m.set(v, u);
                rec(g, m, out, cap);
                m.mate[v] = None;
                m.mate[u] = None;
            }
        }
    }
    let mut out = Vec::new();
    if g.n() % 2 == 0 && cap > 0 && has_perfect_matching(g) {
        rec(g, &mut Matching::empty(g.n()), &mut out, cap);
    }
    out
}

/// A simple path from `u` to `v` whose inner vertices lie in `interior`, whose first
/// and last edges are outside `m`, and which alternates between non-`m` and `m` edges.
pub fn alternating_path_between(
    g: &Graph,
    m: &Matching,
    u: usize,
    v: usize,
    interior: &[usize],
) -> Result<Option<Vec<usize>>> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if m.n() != g.n() {
        return Err(Error::invalid("matching size differs from graph order"));
    }
    let mut inside = vec![false; g.n()];
    for &x in interior {
        g.check_vertex(x)?;
        inside[x] = true;
    }
    if u == v || inside[u] || inside[v] {
        return Err(Error::invalid("endpoints must be distinct and outside the interior"));
    }
    // Only the endpoints are exposed in the restricted matching, so an augmenting path
    // from u must end at v, and augmenting paths are exactly the alternating paths wanted.
    let mut keep = vec![u, v];
    for &x in interior {
        if let Some(y) = m.mate(x) {
            if inside[y] {
                keep.push(x);
            }
        }
    }
    let sub = g.induced_subgraph(&keep)?;
    let (su, sv) = (sub.from_parent(u).unwrap(), sub.from_parent(v).unwrap());
    let mut h = sub.graph;
    if m.contains(Edge::new(u, v)) {
        h = h.delete_edge(Edge::new(su, sv))?;
    }
    let mut init = m.restrict(&sub.parent);
    init.mate[su] = None;
    init.mate[sv] = None;
    let alive = vec![true; h.n()];
    let mut b = Blossom::new(&h, &alive, Some(&init));
    Ok(b.find_path(su).map(|end| {
        debug_assert_eq!(end, sv);
        b.path_to(end).into_iter().map(|x| sub.parent[x]).collect()
    }))
}

/// Whether an odd cycle through `v` exists whose other vertices lie in `interior`, with
/// both edges at `v` outside `m` and alternation along the rest of the cycle.
pub fn closed_alternating_walk_exists(g: &Graph, m: &Matching, v: usize, interior: &[usize]) -> Result<bool> {
    g.check_vertex(v)?;
    if m.n() != g.n() {
        return Err(Error::invalid("matching size differs from graph order"));
    }
    // a twin v' of v turns the cycle into an alternating path from v to v'
    let n = g.n();
    let mut edges = g.edge_vec();
    edges.extend(g.neighbors(v).iter().map(|&x| Edge::new(x, n)));
    let h = Graph::build(n + 1, &edges);
    let mut mate = m.mate.clone();
    mate.push(None);
    let inner: Vec<usize> = interior.iter().copied().filter(|&x| x != v).collect();
    Ok(alternating_path_between(&h, &Matching { mate }, v, n, &inner)?.is_some())
}
