//! Critical independent sets, twins and the Deming extension.

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Induced};
use crate::independence::alpha;
use crate::matching::{maximum_matching, Matching};

/// A maximum critical independent set `Jc` with `X = Jc ∪ N(Jc)` and its complement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalDecomposition {
    pub critical_set: Vec<usize>,
    pub x: Vec<usize>,
    pub xc: Vec<usize>,
    pub critical_difference: i64,
}

fn require_small(g: &Graph) -> Result<()> {
    if g.n() > 64 {
        return Err(Error::invalid("exhaustive critical-set search supports at most 64 vertices"));
    }
    Ok(())
}

/// Visits every independent set (including the empty one) in lexicographic order of
/// sorted member lists, passing the set and its neighbourhood. Returning `false` stops.
fn for_each_independent(
    g: &Graph,
    meter: &mut Meter,
    mut f: impl FnMut(u64, u64) -> bool,
) -> Result<()> {
    fn rec(
        g: &Graph,
        set: u64,
        nbhd: u64,
        cand: u64,
        meter: &mut Meter,
        f: &mut dyn FnMut(u64, u64) -> bool,
    ) -> Result<bool> {
        meter.tick()?;
        if !f(set, nbhd) {
            return Ok(false);
        }
        let mut c = cand;
        while c != 0 {
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            let higher = c;
            if !rec(g, set | 1 << v, nbhd | g.mask(v), higher & !g.mask(v), meter, f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    rec(g, 0, 0, if g.n() == 0 { 0 } else { all }, meter, &mut f).map(|_| ())
}

fn mask_to_vec(m: u64) -> Vec<usize> {
    crate::bitset::ones(m).collect()
}

/// Exhaustive: maximises `|I| − |N(I)|`, then `|I|`; ties go to the lexicographically
/// smallest sorted member list.
pub fn maximum_critical_independent_set(g: &Graph, budget: &Budget) -> Result<CriticalDecomposition> {
    require_small(g)?;
    let mut meter = budget.meter(budget.oracle_nodes);
    let mut best = (0i64, 0usize, 0u64);
    for_each_independent(g, &mut meter, |set, nbhd| {
        let d = set.count_ones() as i64 - nbhd.count_ones() as i64;
        let k = set.count_ones() as usize;
        if d > best.0 || (d == best.0 && k > best.1) {
            best = (d, k, set);
        }
        true
    })?;
    let set = best.2;
    let mut nbhd = 0u64;
    for v in crate::bitset::ones(set) {
        nbhd |= g.mask(v);
    }
    let x = set | nbhd;
    Ok(CriticalDecomposition {
        critical_set: mask_to_vec(set),
        x: mask_to_vec(x),
        xc: (0..g.n()).filter(|&v| x >> v & 1 == 0).collect(),
        critical_difference: best.0,
    })
}

/// Every nonempty independent set `I` has `|N(I)| > |I|`.
pub fn is_2_bicritical(g: &Graph, budget: &Budget) -> Result<bool> {
    require_small(g)?;
    let mut meter = budget.meter(budget.oracle_nodes);
    let mut ok = true;
    for_each_independent(g, &mut meter, |set, nbhd| {
        if set != 0 && nbhd.count_ones() <= set.count_ones() {
            ok = false;
        }
        ok
    })?;
    Ok(ok)
}

/// Adjacent vertex pairs `(u, v)`, `u < v`, with equal closed neighbourhoods.
pub fn find_twins(g: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for e in g.edges() {
        let (a, b) = (g.closed_row(e.0), g.closed_row(e.1));
        if a == b {
            out.push((e.0, e.1));
        }
    }
    out
}

/// Deletes `v`, which must have a twin.
pub fn remove_twin(g: &Graph, v: usize) -> Result<Induced> {
    g.check_vertex(v)?;
    let cv = g.closed_row(v);
    if !g.neighbors(v).iter().any(|&u| g.closed_row(u) == cv) {
        return Err(Error::NoTwin(v));
    }
    g.delete_vertices(&[v])
}

/// G' with a twin added for each vertex left exposed by a maximum matching.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DemingExtension {
    pub graph: Graph,
    /// Perfect matching of the extension: the base matching plus each vertex with its twin.
    pub matching: Matching,
    pub base_matching: Matching,
    /// `(v, v')` with `v'` the twin added for exposed vertex `v`.
    pub twins: Vec<(usize, usize)>,
}

pub fn deming_extension(g: &Graph) -> DemingExtension {
    deming_extension_with(g, maximum_matching(g))
}

/// Extension relative to a given maximum matching.
pub fn deming_extension_with(g: &Graph, base: Matching) -> DemingExtension {
    let n = g.n();
    let exposed = base.exposed();
    let mut edges = g.edge_vec();
    let mut twins = Vec::new();
    for (i, &v) in exposed.iter().enumerate() {
        let t = n + i;
        twins.push((v, t));
        edges.push(Edge(v, t));
        for &u in g.neighbors(v) {
            edges.push(Edge(u, t));
        }
    }
    let graph = Graph::build(n + exposed.len(), &edges);
    let mut pairs: Vec<Edge> = base.edges();
    pairs.extend(twins.iter().map(|&(v, t)| Edge(v, t)));
    let matching = Matching::from_edges(&graph, &pairs).expect("extension matching is valid");
    DemingExtension { graph, matching, base_matching: base, twins }
}

/// n − 2α.
pub fn gallai_class_number(g: &Graph, budget: &Budget) -> Result<i64> {
    Ok(g.n() as i64 - 2 * alpha(g, budget)? as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_critical_set() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        let c = maximum_critical_independent_set(&k2, &Budget::deterministic()).unwrap();
        assert_eq!(c.critical_set, vec![0]);
        assert_eq!(c.x, vec![0, 1]);
        assert_eq!(c.critical_difference, 0);
    }

    #[test]
    fn star_critical_set() {
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let c = maximum_critical_independent_set(&star, &Budget::deterministic()).unwrap();
        assert_eq!(c.critical_set, vec![1, 2, 3]);
        assert_eq!(c.critical_difference, 2);
        assert!(c.xc.is_empty());
    }

    #[test]
    fn bicritical() {
        let b = Budget::deterministic();
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(is_2_bicritical(&k4, &b).unwrap());
        assert!(!is_2_bicritical(&Graph::from_edges(2, [(0, 1)]).unwrap(), &b).unwrap());
        assert!(!is_2_bicritical(&Graph::empty(1), &b).unwrap());
    }

    #[test]
    fn path_extension() {
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let ext = deming_extension(&p3);
        assert_eq!(ext.graph.n(), 4);
        assert!(ext.matching.is_perfect());
        assert_eq!(ext.twins.len(), 1);
        let (v, t) = ext.twins[0];
        assert_eq!(ext.graph.closed_row(v), ext.graph.closed_row(t));
    }

    #[test]
    fn twins() {
        let k3 = Graph::from_edges(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(find_twins(&k3).len(), 3);
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(remove_twin(&p3, 1).unwrap_err(), Error::NoTwin(1));
        assert_eq!(remove_twin(&k3, 2).unwrap().graph.m(), 1);
    }
}
