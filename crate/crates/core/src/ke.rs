//! König–Egerváry certificates relative to a perfect matching.
//!
//! With one boolean per matching edge choosing the endpoint that enters the independent
//! set, each non-matching edge is a 2-clause. A satisfying assignment is a maximum
//! independent set of size n/2; a contradiction is reduced to a minimal
//! matching-saturated subgraph, which is read off as a nice even subdivision.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::budget::Meter;
use crate::critical::deming_extension;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::matching::{has_perfect_matching_within, maximum_matching, perfect_matching_within, Matching};
use crate::search::{spanning_k4, spanning_t};
use crate::subdivision::{recognize_even_subdivision, EvenSubdivision, WitnessDefect};
use crate::twosat::{Outcome, TwoSat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum KeCertificate {
    #[serde(rename = "KE")]
    Ke { independent_set: Vec<usize> },
    #[serde(rename = "NOT_KE")]
    NotKe { obstruction: EvenSubdivision, remainder_matching: Vec<Edge> },
}

impl KeCertificate {
    pub fn is_ke(&self) -> bool {
        matches!(self, KeCertificate::Ke { .. })
    }

    pub fn obstruction(&self) -> Option<&EvenSubdivision> {
        match self {
            KeCertificate::NotKe { obstruction, .. } => Some(obstruction),
            KeCertificate::Ke { .. } => None,
        }
    }
}

static FALLBACKS: AtomicU64 = AtomicU64::new(0);

/// How many certificates needed the exhaustive obstruction search since process start.
pub fn fallback_count() -> u64 {
    FALLBACKS.load(Ordering::Relaxed)
}

const FALLBACK_BUDGET: u64 = 50_000_000;

struct Instance<'a> {
    g: &'a Graph,
    m: &'a Matching,
    pair: Vec<usize>,
    medges: Vec<Edge>,
}

impl<'a> Instance<'a> {
    fn new(g: &'a Graph, m: &'a Matching) -> Self {
        let medges = m.edges();
        let mut pair = vec![0; g.n()];
        for (i, e) in medges.iter().enumerate() {
            pair[e.0] = i;
            pair[e.1] = i;
        }
        Instance { g, m, pair, medges }
    }

    /// Literal "v is in the set".
    fn lit(&self, v: usize) -> usize {
        let i = self.pair[v];
        2 * i + (self.medges[i].1 == v) as usize
    }

    fn formula(&self, pairs: &[bool], dropped: &dyn Fn(Edge) -> bool) -> TwoSat {
        let mut s = TwoSat::new(self.medges.len());
        for (i, e) in self.medges.iter().enumerate() {
            if !pairs[i] {
                continue;
            }
            for &u in &[e.0, e.1] {
                for &w in self.g.neighbors(u) {
                    if w > u && pairs[self.pair[w]] && self.m.mate(u) != Some(w) && !dropped(Edge(u, w)) {
                        s.clause(self.lit(u) ^ 1, self.lit(w) ^ 1);
                    }
                }
            }
        }
        s
    }
}

/// A certificate for `g` relative to the perfect matching `m`.
pub fn ke_certificate(g: &Graph, m: &Matching) -> Result<KeCertificate> {
    m.require_perfect(g)?;
    let inst = Instance::new(g, m);
    let k = inst.medges.len();
    let all = vec![true; k];
    let full = inst.formula(&all, &|_| false);
    let bad = match full.solve() {
        Outcome::Sat(value) => {
            let mut set: Vec<usize> = inst.medges.iter().zip(&value).map(|(e, &t)| if t { e.0 } else { e.1 }).collect();
            set.sort_unstable();
            return Ok(KeCertificate::Ke { independent_set: set });
        }
        Outcome::Unsat(i) => i,
    };
    // pairs on the two contradictory implication chains
    let mut pairs = vec![false; k];
    for (a, b) in [(2 * bad, 2 * bad + 1), (2 * bad + 1, 2 * bad)] {
        for lit in full.chain(a, b).expect("contradiction has both chains") {
            pairs[lit / 2] = true;
        }
    }
    for i in 0..k {
        if pairs[i] {
            pairs[i] = false;
            if inst.formula(&pairs, &|_| false).satisfiable() {
                pairs[i] = true;
            }
        }
    }
    let region: Vec<usize> = (0..g.n()).filter(|&v| pairs[inst.pair[v]]).collect();
    let mut dropped: Vec<Edge> = Vec::new();
    for &u in &region {
        for &w in g.neighbors(u) {
            if w > u && pairs[inst.pair[w]] && m.mate(u) != Some(w) {
                let e = Edge(u, w);
                dropped.push(e);
                if inst.formula(&pairs, &|f| dropped.contains(&f)).satisfiable() {
                    dropped.pop();
                }
            }
        }
    }
    let sub = g.induced_subgraph(&region)?;
    let keep: Vec<Edge> = sub.graph.edges().filter(|&e| !dropped.contains(&sub.edge_to_parent(e))).collect();
    let f = Graph::build(region.len(), &keep);
    let obstruction = match recognize_even_subdivision(&f) {
        Some(s) => s.map(|v| sub.parent[v]),
        None => {
            FALLBACKS.fetch_add(1, Ordering::Relaxed);
            log::warn!("minimal obstruction on {} vertices is not a subdivision; searching exhaustively", region.len());
            find_nice_subdivision(g, &region)?
        }
    };
    let inside = obstruction.vertices();
    let remainder_matching = if inside == region {
        m.edges().into_iter().filter(|e| !pairs[inst.pair[e.0]]).collect()
    } else {
        let mut alive = vec![true; g.n()];
        for &v in &inside {
            alive[v] = false;
        }
        let mut seeded = Matching::empty(g.n());
        for e in m.edges() {
            if alive[e.0] && alive[e.1] {
                seeded.set(e.0, e.1);
            }
        }
        let rest = crate::matching::maximum_matching_from_within(g, &seeded, &alive);
        if (0..g.n()).any(|v| alive[v] && rest.mate(v).is_none()) {
            return Err(Error::Invariant("obstruction complement is not matchable".into()));
        }
        rest.edges()
    };
    Ok(KeCertificate::NotKe { obstruction: obstruction.canonical(), remainder_matching })
}

/// Smallest-first exhaustive search for an even subdivision inside `region` whose
/// complement in `g` is matchable.
fn find_nice_subdivision(g: &Graph, region: &[usize]) -> Result<EvenSubdivision> {
    let mut meter = Meter::new(FALLBACK_BUDGET, 0);
    let r = region.len();
    if r > 62 {
        return Err(Error::Invariant("obstruction region too large for exhaustive search".into()));
    }
    // the whole region first: its complement is matched by the original matching
    for size in std::iter::once(r).chain((4..r).step_by(2)) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let w: Vec<usize> = idx.iter().map(|&i| region[i]).collect();
            let mut alive = vec![true; g.n()];
            for &v in &w {
                alive[v] = false;
            }
            if has_perfect_matching_within(g, &alive) {
                let sub = g.induced_subgraph(&w)?;
                let found = match spanning_t(&sub.graph, &mut meter)? {
                    Some(s) => Some(s),
                    None => spanning_k4(&sub.graph, &mut meter)?,
                };
                if let Some(s) = found {
                    return Ok(s.map(|v| sub.parent[v]));
                }
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
    }
    Err(Error::Invariant("non-KE graph without a nice even subdivision".into()))
}

/// Advances `idx` to the next increasing index tuple below `r`.
pub(crate) fn next_combination(idx: &mut [usize], r: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < r - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Why a certificate is rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateDefect {
    MatchingNotPerfect,
    VertexOutOfRange,
    NotIndependent,
    WrongSize,
    Witness(WitnessDefect),
}

impl fmt::Display for CertificateDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificateDefect::MatchingNotPerfect => f.write_str("matching not perfect"),
            CertificateDefect::VertexOutOfRange => f.write_str("vertex out of range"),
            CertificateDefect::NotIndependent => f.write_str("not independent"),
            CertificateDefect::WrongSize => f.write_str("wrong size"),
            CertificateDefect::Witness(w) => w.fmt(f),
        }
    }
}

/// Re-checks a certificate from scratch.
pub fn validate_certificate(g: &Graph, m: &Matching, cert: &KeCertificate) -> std::result::Result<(), CertificateDefect> {
    if m.require_perfect(g).is_err() {
        return Err(CertificateDefect::MatchingNotPerfect);
    }
    match cert {
        KeCertificate::Ke { independent_set } => {
            if independent_set.iter().any(|&v| v >= g.n()) {
                return Err(CertificateDefect::VertexOutOfRange);
            }
            if !g.is_independent(independent_set) {
                return Err(CertificateDefect::NotIndependent);
            }
            if 2 * independent_set.len() != g.n() {
                return Err(CertificateDefect::WrongSize);
            }
            Ok(())
        }
        KeCertificate::NotKe { obstruction, remainder_matching } => {
            obstruction.check(g).map_err(CertificateDefect::Witness)?;
            let inside = obstruction.vertices();
            let mut covered = vec![false; g.n()];
            for &v in &inside {
                covered[v] = true;
            }
            for e in remainder_matching {
                if e.0 >= g.n() || e.1 >= g.n() || !g.has_edge(e.0, e.1) || covered[e.0] || covered[e.1] {
                    return Err(CertificateDefect::Witness(WitnessDefect::NotNice));
                }
                covered[e.0] = true;
                covered[e.1] = true;
            }
            if covered.iter().all(|&c| c) {
                Ok(())
            } else {
                Err(CertificateDefect::Witness(WitnessDefect::NotNice))
            }
        }
    }
}

/// KE test for any graph; unmatchable graphs are decided through their Deming extension.
pub fn is_ke(g: &Graph) -> bool {
    let m = maximum_matching(g);
    if m.is_perfect() {
        return ke_certificate(g, &m).map(|c| c.is_ke()).expect("perfect matching");
    }
    let ext = deming_extension(g);
    ke_certificate(&ext.graph, &ext.matching).map(|c| c.is_ke()).expect("standard matching is perfect")
}

/// Certificate relative to some perfect matching of `g`, if it has one.
pub fn ke_certificate_any(g: &Graph) -> Result<KeCertificate> {
    let alive = vec![true; g.n()];
    let m = perfect_matching_within(g, &alive).ok_or(Error::NotMatchable)?;
    ke_certificate(g, &m)
}
