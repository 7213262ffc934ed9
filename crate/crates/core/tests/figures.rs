//! Caption claims for the named graphs, checked by brute force where the graphs are small.

use deming::deming::{deming_decomposition, is_deming_bp, is_deming_k4, validate_decomposition};
use deming::egervary::is_egervary;
use deming::generators::gen_named;
use deming::independence::alpha;
use deming::matching::enumerate_perfect_matchings;
use deming::subdivision::{recognize_even_k4_subdivision, recognize_even_t_subdivision};
use deming::{Budget, Edge, Graph, Matching};

fn named(s: &str) -> Graph {
    gen_named(s).unwrap()
}

fn brute_alpha(g: &Graph) -> usize {
    fn rec(g: &Graph, cand: u64) -> usize {
        if cand == 0 {
            return 0;
        }
        let v = cand.trailing_zeros() as usize;
        let rest = cand & !(1 << v);
        rec(g, rest).max(1 + rec(g, rest & !g.mask(v)))
    }
    rec(g, (1u64 << g.n()) - 1)
}

fn brute_nu(g: &Graph) -> usize {
    fn rec(g: &Graph, free: u64) -> usize {
        if free == 0 {
            return 0;
        }
        let v = free.trailing_zeros() as usize;
        let rest = free & !(1 << v);
        let mut best = rec(g, rest);
        let mut c = rest & g.mask(v);
        while c != 0 {
            let u = c.trailing_zeros() as usize;
            c &= c - 1;
            best = best.max(1 + rec(g, rest & !(1 << u)));
        }
        best
    }
    rec(g, (1u64 << g.n()) - 1)
}

fn brute_ke(g: &Graph) -> bool {
    brute_alpha(g) + brute_nu(g) == g.n()
}

/// Spanning subgraphs of `g` with exactly `k` edges.
fn spanning_with(g: &Graph, k: usize) -> Vec<Graph> {
    let edges = g.edge_vec();
    assert!(edges.len() <= 20);
    (0u32..1 << edges.len())
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| {
            let keep = edges.iter().enumerate().filter(|(i, _)| s >> i & 1 == 1).map(|(_, e)| (e.0, e.1));
            Graph::from_edges(g.n(), keep).unwrap()
        })
        .collect()
}

fn has_spanning_even_k4(g: &Graph) -> bool {
    g.n() >= 4 && spanning_with(g, g.n() + 2).iter().any(|h| recognize_even_k4_subdivision(h).is_some())
}

fn has_spanning_even_t(g: &Graph) -> bool {
    spanning_with(g, g.n() + 1).iter().any(|h| recognize_even_t_subdivision(h).is_some())
}

fn in_some_pm(g: &Graph, e: Edge) -> bool {
    enumerate_perfect_matchings(g, usize::MAX).iter().any(|m| m.contains(e))
}

fn b() -> Budget {
    Budget::deterministic()
}

#[test]
fn t_is_neither_ke_nor_egervary() {
    let t = named("T");
    assert_eq!((t.n(), t.m(), brute_alpha(&t), brute_nu(&t)), (6, 7, 2, 3));
    assert!(!brute_ke(&t));
    let tri = |a: usize, b: usize, c: usize| t.has_edge(a, b) && t.has_edge(b, c) && t.has_edge(a, c);
    assert!(tri(0, 1, 2) && tri(3, 4, 5));
    assert_eq!(is_egervary(&t, &b()).unwrap().decided(), Some(false));
}

#[test]
fn k4_problem_has_both_obstructions() {
    let g = named("k4_problem");
    assert!(brute_nu(&g) * 2 == g.n());
    assert!(has_spanning_even_k4(&g));
    assert!(has_spanning_even_t(&g));
    assert!(!brute_ke(&g));
    assert_eq!(is_egervary(&g, &b()).unwrap().decided(), Some(false));
}

#[test]
fn t_sub_is_deming_bp() {
    let g = named("T_sub");
    assert!(recognize_even_t_subdivision(&g).is_some());
    assert!(is_deming_bp(&g).unwrap().is_some());
    for e in g.edges() {
        if in_some_pm(&g, e) {
            let rest = g.delete_vertices(&[e.0, e.1]).unwrap().graph;
            assert!(brute_ke(&rest), "removing {e} leaves a non-KE graph");
        }
    }
    assert!(!in_some_pm(&g, Edge::new(6, 7)));
}

#[test]
fn k4notegervary_is_deming_k4_but_not_a_subdivision() {
    let k = named("k4notegervary");
    assert!(is_deming_k4(&k).unwrap().is_some());
    assert!(recognize_even_k4_subdivision(&k).is_none());
    for e in [Edge::new(5, 6), Edge::new(0, 6)] {
        let h = k.delete_edge(e).unwrap();
        assert!(has_spanning_even_k4(&h), "K - {e}");
        assert!(!brute_ke(&h), "K - {e}");
    }
}

#[test]
fn k4notminimal_decomposition_changes_the_matching() {
    let g = named("k4notminimal");
    let m = Matching::from_pairs(&g, &[(1, 5), (3, 4), (0, 2)]).unwrap();
    assert!(m.is_perfect());
    let dec = deming_decomposition(&g, &m).unwrap();
    assert!(validate_decomposition(&g, &dec).unwrap().is_ok());
    assert_eq!((dec.r(), dec.l()), (0, 1));
    assert_eq!(dec.k4[0].vertices, vec![0, 1, 2, 3]);
    assert_eq!(dec.remainder, vec![4, 5]);
    let mut pm = dec.induced_matching.clone();
    pm.sort();
    assert_eq!(pm, vec![Edge::new(0, 2), Edge::new(1, 3), Edge::new(4, 5)]);
}

#[test]
fn bipartite_extension_k4_k33() {
    let g = named("k4_k33");
    // K3,3 restores the deleted edge between its attachment vertices
    assert_eq!((g.n(), g.m()), (8, 6 - 1 + 9));
    assert!(g.has_edge(2, 3));
    assert!(!brute_ke(&g));
    assert_eq!(is_egervary(&g, &b()).unwrap().decided(), Some(true));
}

#[test]
fn petersen_shape() {
    let g = named("petersen");
    assert_eq!((g.n(), g.m()), (10, 15));
    assert!((0..10).all(|v| g.degree(v) == 3));
    // no triangles or 4-cycles
    for u in 0..10 {
        for v in u + 1..10 {
            let common = (g.mask(u) & g.mask(v)).count_ones();
            assert!(common <= if g.has_edge(u, v) { 0 } else { 1 });
        }
    }
    assert!(is_deming_bp(&g).unwrap().is_some());
}

/// Vertex sets of 5-cycles.
fn pentagons(g: &Graph) -> Vec<u64> {
    let mut out = Vec::new();
    for a in 0..g.n() {
        for &b in g.neighbors(a) {
            for &c in g.neighbors(b) {
                for &d in g.neighbors(c) {
                    for &e in g.neighbors(d) {
                        let vs = [a, b, c, d, e];
                        let mask = vs.iter().fold(0u64, |m, &v| m | 1 << v);
                        if a == *vs.iter().min().unwrap() && mask.count_ones() == 5 && g.has_edge(e, a) {
                            out.push(mask);
                        }
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[test]
fn c60_pentagons_and_decomposition() {
    let g = named("c60");
    assert_eq!((g.n(), g.m()), (60, 90));
    assert!((0..60).all(|v| g.degree(v) == 3));
    let p = pentagons(&g);
    assert_eq!(p.len(), 12);
    assert_eq!(p.iter().fold(0u64, |acc, m| acc | m).count_ones(), 60);
    assert_eq!(alpha(&g, &b()).unwrap(), 24);

    let m = enumerate_perfect_matchings(&g, 1).remove(0);
    let dec = deming_decomposition(&g, &m).unwrap();
    assert!(validate_decomposition(&g, &dec).unwrap().is_ok());
    assert_eq!((dec.r(), dec.l()), (6, 0));
    assert!(dec.remainder.is_empty());
    for part in &dec.bp {
        let mask = part.vertices.iter().fold(0u64, |acc, &v| acc | 1 << v);
        let inside: Vec<u64> = p.iter().copied().filter(|q| q & mask == *q).collect();
        assert_eq!(inside.len(), 2, "part {:?}", part.vertices);
        assert_eq!(mask.count_ones(), 10);
        let joins = g.edges().filter(|e| inside[0] >> e.0 & 1 == 1 && inside[1] >> e.1 & 1 == 1
            || inside[1] >> e.0 & 1 == 1 && inside[0] >> e.1 & 1 == 1).count();
        assert_eq!(joins, 1);
        let d = g.induced_subgraph(&part.vertices).unwrap().graph;
        assert_eq!(brute_alpha(&d), 4);
    }
}
