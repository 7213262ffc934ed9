//! Egerváry graphs: matchable graphs with no spanning subgraph made of independent
//! edges and at least one odd cycle.
//!
//! Such a spanning subgraph exists exactly when two vertex-disjoint odd cycles leave a
//! matchable remainder: given a nice even T-subdivision, its two cycles leave the even
//! connecting-path interior plus a matchable complement; conversely two such cycles and
//! a matching of the rest already form the spanning subgraph.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::bitset::ones;
use crate::budget::{Budget, Meter};
use crate::deming::DemingDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Induced};
use crate::ke::ke_certificate_any;
use crate::matching::{
    alternating_path_between, edge_in_some_perfect_matching, has_perfect_matching, has_perfect_matching_within,
    maximum_matching, perfect_matching_within, Matching,
};
use crate::subdivision::{is_nice, recognize_even_t_subdivision, EvenSubdivision, SubdivisionKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EgervaryStatus {
    Egervary,
    NotEgervary,
    Undecided,
}

/// Two disjoint odd cycles, a perfect matching of everything else, and the nice even
/// T-subdivision derived from them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddCyclePair {
    pub cycles: Vec<Vec<usize>>,
    pub remainder_matching: Vec<Edge>,
    pub subdivision: EvenSubdivision,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EgervaryVerdict {
    pub status: EgervaryStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<OddCyclePair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl EgervaryVerdict {
    fn undecided(reason: impl Into<String>) -> Self {
        EgervaryVerdict { status: EgervaryStatus::Undecided, witness: None, reason: Some(reason.into()) }
    }

    pub fn decided(&self) -> Option<bool> {
        match self.status {
            EgervaryStatus::Egervary => Some(true),
            EgervaryStatus::NotEgervary => Some(false),
            EgervaryStatus::Undecided => None,
        }
    }

    /// `Ok(bool)` when decided, `BudgetExceeded` otherwise.
    pub fn require(&self) -> Result<bool> {
        self.decided().ok_or(Error::BudgetExceeded)
    }
}

/// A spanning collection of independent edges and odd cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicCover {
    pub edges: Vec<Edge>,
    pub cycles: Vec<Vec<usize>>,
}

fn alive_outside(n: usize, used: u64) -> Vec<bool> {
    (0..n).map(|v| used >> v & 1 == 0).collect()
}

/// Odd cycles of exactly `len` vertices, one representative per vertex set not in `seen`.
fn odd_cycles_of_length(
    g: &Graph,
    len: usize,
    seen: &mut HashSet<u64>,
    meter: &mut Meter,
    out: &mut Vec<(u64, Vec<usize>)>,
) -> Result<()> {
    fn rec(
        g: &Graph,
        len: usize,
        path: &mut Vec<usize>,
        used: u64,
        seen: &mut HashSet<u64>,
        meter: &mut Meter,
        out: &mut Vec<(u64, Vec<usize>)>,
    ) -> Result<()> {
        meter.tick()?;
        let s = path[0];
        let v = *path.last().unwrap();
        if path.len() == len {
            if g.has_edge(v, s) && path[1] < v && seen.insert(used) {
                out.push((used, path.clone()));
            }
            return Ok(());
        }
        // vertices above the start only, so each cycle is rooted at its minimum
        let mut c = g.mask(v) & !used & !((2u64 << s) - 1);
        while c != 0 {
            let w = c.trailing_zeros() as usize;
            c &= c - 1;
            path.push(w);
            rec(g, len, path, used | 1 << w, seen, meter, out)?;
            path.pop();
        }
        Ok(())
    }
    for s in 0..g.n() {
        let mut path = vec![s];
        rec(g, len, &mut path, 1 << s, seen, meter, out)?;
    }
    Ok(())
}

fn pair_search(g: &Graph, budget: &Budget) -> Result<Option<(Vec<usize>, Vec<usize>, Matching)>> {
    let n = g.n();
    let mut steps = budget.meter(budget.oracle_nodes);
    let mut pairs = budget.meter(budget.cycle_pairs);
    let mut seen = HashSet::new();
    let mut groups: Vec<Vec<(u64, Vec<usize>)>> = vec![Vec::new(); n + 1];
    // pairs are taken by the longer cycle's length, then the shorter's
    let mut len = 3;
    while len + 3 <= n {
        let mut found = Vec::new();
        odd_cycles_of_length(g, len, &mut seen, &mut steps, &mut found)?;
        groups[len] = found;
        for short in (3..=len).step_by(2) {
            for (j, (m2, c2)) in groups[len].iter().enumerate() {
                let firsts = if short == len { &groups[len][..j] } else { &groups[short][..] };
                for (m1, c1) in firsts {
                    if m1 & m2 != 0 {
                        continue;
                    }
                    pairs.tick()?;
                    if let Some(rest) = perfect_matching_within(g, &alive_outside(n, m1 | m2)) {
                        return Ok(Some((c1.clone(), c2.clone(), rest)));
                    }
                }
            }
        }
        len += 2;
    }
    Ok(None)
}

/// Decides the Egerváry property of a matchable graph by the odd-cycle-pair method.
pub fn is_egervary(g: &Graph, budget: &Budget) -> Result<EgervaryVerdict> {
    let m1 = maximum_matching(g);
    if !m1.is_perfect() {
        return Err(Error::NotMatchable);
    }
    if g.n() > 64 {
        return Ok(EgervaryVerdict::undecided("order above 64"));
    }
    match pair_search(g, budget) {
        Ok(None) => Ok(EgervaryVerdict { status: EgervaryStatus::Egervary, witness: None, reason: None }),
        Ok(Some((c1, c2, rest))) => {
            let cover = BasicCover { edges: rest.edges(), cycles: vec![c1.clone(), c2.clone()] };
            let subdivision = extract_nice_t_subdivision(g, &m1, &cover)?;
            Ok(EgervaryVerdict {
                status: EgervaryStatus::NotEgervary,
                witness: Some(OddCyclePair { cycles: vec![c1, c2], remainder_matching: cover.edges, subdivision }),
                reason: None,
            })
        }
        Err(Error::BudgetExceeded) => Ok(EgervaryVerdict::undecided("cycle search budget exhausted")),
        Err(e) => Err(e),
    }
}

fn check_cover(g: &Graph, cover: &BasicCover) -> Result<()> {
    let mut seen = vec![false; g.n()];
    let mut mark = |v: usize| -> Result<()> {
        g.check_vertex(v)?;
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::invalid(format!("vertex {v} covered twice")));
        }
        Ok(())
    };
    for e in &cover.edges {
        g.check_edge(*e)?;
        mark(e.0)?;
        mark(e.1)?;
    }
    for c in &cover.cycles {
        if c.len() < 3 || c.len() % 2 == 0 {
            return Err(Error::invalid("cover cycles must be odd with at least three vertices"));
        }
        for i in 0..c.len() {
            mark(c[i])?;
            g.check_edge(Edge::new(c[i], c[(i + 1) % c.len()]))?;
        }
    }
    if cover.cycles.is_empty() || seen.contains(&false) {
        return Err(Error::invalid("cover must span the graph and contain an odd cycle"));
    }
    Ok(())
}

/// Path component of `M0 ∪ M1` leaving cycle vertex `a`; ends at another cycle vertex.
fn component_path(m0: &[Option<usize>], m1: &Matching, cycle_of: &[Option<usize>], a: usize) -> Vec<usize> {
    let mut p = vec![a];
    let mut x = a;
    let mut use_m1 = true;
    loop {
        let y = if use_m1 { m1.mate(x) } else { m0[x] }.expect("cover and matching are perfect");
        p.push(y);
        if cycle_of[y].is_some() {
            return p;
        }
        x = y;
        use_m1 = !use_m1;
    }
}

fn cycle_from(c: &[usize], start: usize) -> Vec<usize> {
    let i = c.iter().position(|&x| x == start).unwrap();
    c[i..].iter().chain(&c[..i]).copied().collect()
}

/// A nice even T-subdivision read off from a path component of `M0 ∪ M1` joining two
/// cycles of the cover. Covers with more than two cycles are first reduced: two joined
/// cycles and their path are replaced by matching edges.
pub fn extract_nice_t_subdivision(g: &Graph, m1: &Matching, cover: &BasicCover) -> Result<EvenSubdivision> {
    m1.require_perfect(g)?;
    check_cover(g, cover)?;
    let n = g.n();
    let mut m0 = vec![None; n];
    for e in &cover.edges {
        m0[e.0] = Some(e.1);
        m0[e.1] = Some(e.0);
    }
    let mut cycles = cover.cycles.clone();
    loop {
        let mut cycle_of = vec![None; n];
        for (i, c) in cycles.iter().enumerate() {
            for &v in c {
                cycle_of[v] = Some(i);
            }
        }
        let mut joined = None;
        'search: for (i, c) in cycles.iter().enumerate() {
            for &a in c {
                let p = component_path(&m0, m1, &cycle_of, a);
                let j = cycle_of[*p.last().unwrap()].unwrap();
                if j != i {
                    joined = Some((i, j, p));
                    break 'search;
                }
            }
        }
        let (i, j, p) = joined.ok_or_else(|| Error::Invariant("no path joins two cover cycles".into()))?;
        let (a, b) = (p[0], *p.last().unwrap());
        if cycles.len() == 2 {
            let s = EvenSubdivision {
                kind: SubdivisionKind::T,
                corners: vec![a, b],
                paths: vec![p],
                cycles: vec![cycle_from(&cycles[i], a), cycle_from(&cycles[j], b)],
            };
            if s.check(g).is_err() || !is_nice(g, &s) {
                return Err(Error::Invariant("extracted T-subdivision is not nice".into()));
            }
            return Ok(s.canonical());
        }
        // M1 on the path, and the even paths left on each cycle after removing its end
        for w in p.chunks(2) {
            m0[w[0]] = Some(w[1]);
            m0[w[1]] = Some(w[0]);
        }
        for (k, t) in [(i, a), (j, b)] {
            let rest = cycle_from(&cycles[k], t);
            for w in rest[1..].chunks(2) {
                m0[w[0]] = Some(w[1]);
                m0[w[1]] = Some(w[0]);
            }
        }
        let (hi, lo) = (i.max(j), i.min(j));
        cycles.remove(hi);
        cycles.remove(lo);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConditionStatus {
    Holds,
    Fails,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    BpPart { vertices: Vec<usize> },
    NotEgervary { part: usize, witness: Option<OddCyclePair> },
    EdgeNotInPerfectMatching { part: usize, edge: Edge },
    CrossingEdge { edge: Edge },
    AlternatingPath { path: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub status: ConditionStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl Condition {
    fn holds() -> Self {
        Condition { status: ConditionStatus::Holds, counterexample: None }
    }

    fn fails(c: Counterexample) -> Self {
        Condition { status: ConditionStatus::Fails, counterexample: Some(c) }
    }

    fn undecided() -> Self {
        Condition { status: ConditionStatus::Undecided, counterexample: None }
    }
}

/// The six necessary conditions for a decomposed matchable graph to be Egerváry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecessaryConditionsReport {
    /// No Deming-BP parts.
    pub no_bp_parts: Condition,
    /// Every Deming-K4 part is Egerváry.
    pub k4_parts_egervary: Condition,
    /// Every edge of every Deming-K4 part lies in a perfect matching of G.
    pub k4_edges_allowed: Condition,
    /// No edge joins two Deming-K4 parts.
    pub k4_parts_independent: Condition,
    /// `G[V(K_j) ∪ V(R)]` is Egerváry for every part.
    pub k4_plus_remainder_egervary: Condition,
    /// No `M_R`-alternating path joins vertices of different Deming-K4 parts.
    pub no_alternating_paths: Condition,
}

impl NecessaryConditionsReport {
    pub fn items(&self) -> [&Condition; 6] {
        [
            &self.no_bp_parts,
            &self.k4_parts_egervary,
            &self.k4_edges_allowed,
            &self.k4_parts_independent,
            &self.k4_plus_remainder_egervary,
            &self.no_alternating_paths,
        ]
    }

    pub fn all_hold(&self) -> bool {
        self.items().iter().all(|c| c.status == ConditionStatus::Holds)
    }

    pub fn any_fails(&self) -> bool {
        self.items().iter().any(|c| c.status == ConditionStatus::Fails)
    }
}

fn egervary_condition<'a>(
    g: &Graph,
    sets: impl Iterator<Item = (usize, Vec<usize>)> + 'a,
    budget: &Budget,
) -> Result<Condition> {
    let mut undecided = false;
    for (part, vs) in sets {
        let h = g.induced_subgraph(&vs)?;
        let v = is_egervary(&h.graph, budget)?;
        match v.status {
            EgervaryStatus::Egervary => {}
            EgervaryStatus::Undecided => undecided = true,
            EgervaryStatus::NotEgervary => {
                let witness = v.witness.map(|w| OddCyclePair {
                    cycles: w.cycles.iter().map(|c| c.iter().map(|&x| h.parent[x]).collect()).collect(),
                    remainder_matching: w.remainder_matching.iter().map(|&e| h.edge_to_parent(e)).collect(),
                    subdivision: w.subdivision.map(|x| h.parent[x]),
                });
                return Ok(Condition::fails(Counterexample::NotEgervary { part, witness }));
            }
        }
    }
    Ok(if undecided { Condition::undecided() } else { Condition::holds() })
}

/// Evaluates the six necessary conditions. `M_R` is `m` restricted to the remainder when
/// that restriction is perfect there, and the decomposition's induced matching otherwise.
pub fn necessary_conditions(
    g: &Graph,
    m: &Matching,
    dec: &DemingDecomposition,
    budget: &Budget,
) -> Result<NecessaryConditionsReport> {
    m.require_perfect(g)?;
    let no_bp_parts = match dec.bp.first() {
        None => Condition::holds(),
        Some(p) => Condition::fails(Counterexample::BpPart { vertices: p.vertices.clone() }),
    };
    let k4_parts_egervary = egervary_condition(g, dec.k4.iter().map(|p| p.vertices.clone()).enumerate(), budget)?;

    let mut k4_edges_allowed = Condition::holds();
    'allowed: for (j, p) in dec.k4.iter().enumerate() {
        let h = g.induced_subgraph(&p.vertices)?;
        for e in h.graph.edges() {
            let e = h.edge_to_parent(e);
            if !edge_in_some_perfect_matching(g, e)? {
                k4_edges_allowed = Condition::fails(Counterexample::EdgeNotInPerfectMatching { part: j, edge: e });
                break 'allowed;
            }
        }
    }

    let mut owner = vec![usize::MAX; g.n()];
    for (j, p) in dec.k4.iter().enumerate() {
        for &v in &p.vertices {
            owner[v] = j;
        }
    }
    let k4_parts_independent = match g
        .edges()
        .find(|e| owner[e.0] != usize::MAX && owner[e.1] != usize::MAX && owner[e.0] != owner[e.1])
    {
        None => Condition::holds(),
        Some(e) => Condition::fails(Counterexample::CrossingEdge { edge: e }),
    };

    let k4_plus_remainder_egervary = egervary_condition(
        g,
        dec.k4.iter().enumerate().map(|(j, p)| {
            let mut vs: Vec<usize> = p.vertices.iter().chain(&dec.remainder).copied().collect();
            vs.sort_unstable();
            (j, vs)
        }),
        budget,
    )?;

    let in_r = |v: usize| dec.remainder.binary_search(&v).is_ok();
    let restricted = |mm: &Matching| {
        let mut out = Matching::empty(g.n());
        for e in mm.edges() {
            if in_r(e.0) && in_r(e.1) {
                out.set(e.0, e.1);
            }
        }
        out
    };
    let mut m_r = restricted(m);
    if dec.remainder.iter().any(|&v| m_r.mate(v).is_none()) {
        m_r = restricted(&Matching::from_edges(g, &dec.induced_matching)?);
    }
    let mut no_alternating_paths = Condition::holds();
    'paths: for (j, p) in dec.k4.iter().enumerate() {
        for q in &dec.k4[j + 1..] {
            for &v in &p.vertices {
                for &w in &q.vertices {
                    if let Some(path) = alternating_path_between(g, &m_r, v, w, &dec.remainder)? {
                        no_alternating_paths = Condition::fails(Counterexample::AlternatingPath { path });
                        break 'paths;
                    }
                }
            }
        }
    }

    Ok(NecessaryConditionsReport {
        no_bp_parts,
        k4_parts_egervary,
        k4_edges_allowed,
        k4_parts_independent,
        k4_plus_remainder_egervary,
        no_alternating_paths,
    })
}

/// Evaluates "G is not an even T-subdivision and `G − e` is Egerváry for every edge `e`
/// missing some perfect matching" literally, recursing on edge-deleted graphs.
pub fn recursive_characterization_check(g: &Graph, budget: &Budget) -> Result<bool> {
    if !has_perfect_matching(g) {
        return Err(Error::NotMatchable);
    }
    let mut memo: HashMap<Vec<Edge>, bool> = HashMap::new();
    let mut meter = budget.meter(budget.oracle_nodes);
    fn rec(g: &Graph, memo: &mut HashMap<Vec<Edge>, bool>, meter: &mut Meter) -> Result<bool> {
        let key = g.edge_vec();
        if let Some(&v) = memo.get(&key) {
            return Ok(v);
        }
        meter.tick()?;
        let mut ok = recognize_even_t_subdivision(g).is_none();
        if ok {
            for e in g.edges() {
                let h = g.delete_edge(e)?;
                if has_perfect_matching(&h) && !rec(&h, memo, meter)? {
                    ok = false;
                    break;
                }
            }
        }
        memo.insert(key, ok);
        Ok(ok)
    }
    rec(g, &mut memo, &mut meter)
}

/// `H` and `R` side by side (R relabelled after H) plus edges `(h, r)` from `V(H)` to
/// `N_R(I)`, where `r` indexes `R`.
pub fn egervary_extension(
    h: &Graph,
    r: &Graph,
    i: &[usize],
    new_edges: &[(usize, usize)],
    budget: &Budget,
) -> Result<Graph> {
    for &v in i {
        r.check_vertex(v)?;
    }
    if !is_egervary(h, budget)?.require()? {
        return Err(Error::invalid("H is not Egerváry"));
    }
    if !ke_certificate_any(r)?.is_ke() {
        return Err(Error::invalid("R is not KE"));
    }
    if !r.is_independent(i) || 2 * i.len() != r.n() {
        return Err(Error::invalid("I is not a maximum independent set of R"));
    }
    let nbhd = r.neighborhood(i);
    let off = h.n();
    let mut extra = Vec::new();
    for &(x, y) in new_edges {
        h.check_vertex(x)?;
        r.check_vertex(y)?;
        if nbhd.binary_search(&y).is_err() {
            return Err(Error::invalid(format!("new edge ({x}, {y}) does not end in N(I)")));
        }
        extra.push(Edge::new(x, off + y));
    }
    let g = h.disjoint_union(r).add_edges(&extra)?;
    if g.n() <= 16 && is_egervary(&g, budget)?.decided() == Some(false) {
        return Err(Error::Invariant("Egerváry extension produced a non-Egerváry graph".into()));
    }
    Ok(g)
}

/// `G − I − N(I)` for the maximum critical independent set `I`, and whether both graphs
/// get the same Egerváry verdict.
pub fn critical_reduction_preserves_egervary(g: &Graph, budget: &Budget) -> Result<(Induced, bool)> {
    let cd = crate::critical::maximum_critical_independent_set(g, budget)?;
    if cd.critical_difference != 0 {
        return Err(Error::NoBalancedCriticalSet);
    }
    let reduced = g.induced_subgraph(&cd.xc)?;
    let before = is_egervary(g, budget)?.require()?;
    let after = is_egervary(&reduced.graph, budget)?.require()?;
    Ok((reduced, before == after))
}

/// For a Deming-K4 graph `k` with spanning witness `f`: every edge `e` of `f` leaves
/// `k − e` KE, or Egerváry with a spanning even K4-subdivision.
pub fn deming_k4_edge_condition(k: &Graph, f: &EvenSubdivision, budget: &Budget) -> Result<bool> {
    for e in f.edges() {
        let h = k.delete_edge(e)?;
        if !has_perfect_matching(&h) {
            return Ok(false);
        }
        if ke_certificate_any(&h)?.is_ke() {
            continue;
        }
        let mut meter = budget.meter(budget.oracle_nodes);
        if crate::search::spanning_k4(&h, &mut meter)?.is_none() || !is_egervary(&h, budget)?.require()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Independent Egerváry tests used to cross-check [`is_egervary`].
pub mod oracles {
    use super::*;

    /// Vertex sets of odd cycles, grouped by their minimum vertex, from a
    /// Hamiltonian-path table over subsets.
    fn odd_cycle_sets(g: &Graph, meter: &mut Meter) -> Result<Vec<Vec<u32>>> {
        let n = g.n();
        let mut ends = vec![0u32; 1 << n];
        let mut out = vec![Vec::new(); n];
        for s in 0..n {
            let higher: u32 = ((1u64 << n) - 1) as u32 & !((2u32 << s) - 1);
            let start = 1u32 << s;
            ends[start as usize] = start;
            let nbr_s = g.mask(s) as u32;
            let mut sub = 0u32;
            loop {
                let mask = sub | start;
                let e = ends[mask as usize];
                if e != 0 {
                    meter.tick()?;
                    if mask.count_ones() >= 3 && mask.count_ones() % 2 == 1 && e & nbr_s != 0 {
                        out[s].push(mask);
                    }
                    for v in ones(e as u64) {
                        for w in ones(g.mask(v) & u64::from(higher & !mask)) {
                            ends[(mask | 1 << w) as usize] |= 1 << w;
                        }
                    }
                }
                if sub == higher {
                    break;
                }
                sub = sub.wrapping_sub(higher) & higher;
            }
            // clear for the next start
            let mut sub = 0u32;
            loop {
                ends[(sub | start) as usize] = 0;
                if sub == higher {
                    break;
                }
                sub = sub.wrapping_sub(higher) & higher;
            }
        }
        Ok(out)
    }

    /// Definition check: searches spanning subgraphs of independent edges and odd cycles
    /// with at least one cycle. Returns whether the graph is Egerváry.
    pub fn definition_check(g: &Graph, budget: &Budget) -> Result<bool> {
        if !has_perfect_matching(g) {
            return Err(Error::NotMatchable);
        }
        let n = g.n();
        if n > 20 {
            return Err(Error::invalid("definition check supports at most 20 vertices"));
        }
        let mut meter = budget.meter(budget.oracle_nodes);
        let by_min = odd_cycle_sets(g, &mut meter)?;
        // memo: 0 unknown, 1 no cover, 2 matchable only, 3 cover with a cycle
        let mut memo = vec![0u8; 1 << n];
        fn rec(g: &Graph, left: u32, by_min: &[Vec<u32>], memo: &mut [u8], meter: &mut Meter) -> Result<u8> {
            if left == 0 {
                return Ok(2);
            }
            if memo[left as usize] != 0 {
                return Ok(memo[left as usize]);
            }
            meter.tick()?;
            let v = left.trailing_zeros() as usize;
            let mut best = 1;
            for u in ones(g.mask(v) & u64::from(left)) {
                best = best.max(rec(g, left & !(1 << v) & !(1 << u), by_min, memo, meter)?);
                if best == 3 {
                    break;
                }
            }
            if best < 3 {
                for &c in &by_min[v] {
                    if c & !left == 0 && rec(g, left & !c, by_min, memo, meter)? >= 2 {
                        best = 3;
                        break;
                    }
                }
            }
            memo[left as usize] = best;
            Ok(best)
        }
        let full = ((1u64 << n) - 1) as u32;
        Ok(rec(g, full, &by_min, &mut memo, &mut meter)? != 3)
    }

    /// Odd paths from the last vertex of `path` into `target`, avoiding `used`.
    #[allow(clippy::too_many_arguments)]
    fn odd_paths(
        g: &Graph,
        path: &mut Vec<usize>,
        used: u64,
        target: u64,
        meter: &mut Meter,
        f: &mut dyn FnMut(&[usize], &mut Meter) -> Result<bool>,
    ) -> Result<bool> {
        meter.tick()?;
        let v = *path.last().unwrap();
        for w in ones(g.mask(v)) {
            if target >> w & 1 == 1 {
                if path.len() % 2 == 1 {
                    path.push(w);
                    let hit = f(path, meter)?;
                    path.pop();
                    if hit {
                        return Ok(true);
                    }
                }
            } else if used >> w & 1 == 0 {
                path.push(w);
                let hit = odd_paths(g, path, used | 1 << w, target, meter, f)?;
                path.pop();
                if hit {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Direct search for a nice even T-subdivision: two disjoint odd cycles joined by an
    /// odd path whose removal together with the cycles leaves a matchable graph.
    pub fn nice_t_search(g: &Graph, budget: &Budget) -> Result<Option<EvenSubdivision>> {
        if !has_perfect_matching(g) {
            return Err(Error::NotMatchable);
        }
        let n = g.n();
        if n > 64 {
            return Err(Error::invalid("T-subdivision search supports at most 64 vertices"));
        }
        let mut meter = budget.meter(budget.oracle_nodes);
        let mut seen = HashSet::new();
        let mut cycles: Vec<(u64, Vec<usize>)> = Vec::new();
        let mut len = 3;
        while len + 3 <= n {
            let before = cycles.len();
            odd_cycles_of_length(g, len, &mut seen, &mut meter, &mut cycles)?;
            for j in before..cycles.len() {
                let (m2, c2) = &cycles[j];
                for (m1, c1) in &cycles[..j] {
                    // the connecting path's interior is an even path, so a nice T on
                    // these cycles needs a matchable complement of the cycles
                    if m1 & m2 != 0 || !has_perfect_matching_within(g, &alive_outside(n, m1 | m2)) {
                        continue;
                    }
                    let mut found = None;
                    for &a in c1 {
                        let mut path = vec![a];
                        let hit = odd_paths(g, &mut path, m1 | m2, *m2, &mut meter, &mut |p, _| {
                            let b = *p.last().unwrap();
                            let s = EvenSubdivision {
                                kind: SubdivisionKind::T,
                                corners: vec![a, b],
                                paths: vec![p.to_vec()],
                                cycles: vec![cycle_from(c1, a), cycle_from(c2, b)],
                            };
                            if is_nice(g, &s) {
                                found = Some(s.canonical());
                                return Ok(true);
                            }
                            Ok(false)
                        })?;
                        if hit {
                            return Ok(found);
                        }
                    }
                }
            }
            len += 2;
        }
        Ok(None)
    }
}
