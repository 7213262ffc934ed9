//! Deming subgraphs and the extended Deming decomposition.

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::ke::{is_ke, ke_certificate, ke_certificate_any, KeCertificate};
use crate::matching::{allowed_edges, has_perfect_matching, maximum_matching, maximum_matching_from, Matching};
use crate::search::{spanning_k4, spanning_t};
use crate::subdivision::{k4_subdivision_perfect_matching, subdivision_perfect_matching, EvenSubdivision, SubdivisionKind};

const SEARCH_BUDGET: u64 = 100_000_000;

/// Every allowed edge `xy` leaves `D − {x, y}` KE.
fn allowed_deletions_ke(d: &Graph) -> Result<bool> {
    for e in allowed_edges(d) {
        let sub = d.delete_vertices(&[e.0, e.1])?;
        if !ke_certificate_any(&sub.graph)?.is_ke() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_deming_kind(d: &Graph, kind: SubdivisionKind) -> Result<Option<EvenSubdivision>> {
    let Some(m) = Some(maximum_matching(d)).filter(Matching::is_perfect) else {
        return Ok(None);
    };
    if d.n() == 0 || !allowed_deletions_ke(d)? {
        return Ok(None);
    }
    let cert = ke_certificate(d, &m)?;
    let Some(s) = cert.obstruction() else { return Ok(None) };
    // with every allowed deletion KE, the nice obstruction must span D
    if s.order() != d.n() {
        return Err(Error::Invariant("obstruction of a Deming candidate does not span it".into()));
    }
    if s.kind == kind {
        return Ok(Some(s.clone()));
    }
    let mut meter = Meter::new(SEARCH_BUDGET, 0);
    match kind {
        SubdivisionKind::K4 => spanning_k4(d, &mut meter),
        SubdivisionKind::T => spanning_t(d, &mut meter),
    }
}

/// A spanning even K4-subdivision witness when `d` is Deming-K4.
pub fn is_deming_k4(d: &Graph) -> Result<Option<EvenSubdivision>> {
    is_deming_kind(d, SubdivisionKind::K4)
}

/// A spanning even T-subdivision witness when `d` is Deming-BP.
pub fn is_deming_bp(d: &Graph) -> Result<Option<EvenSubdivision>> {
    is_deming_kind(d, SubdivisionKind::T)
}

/// Definition check for a claimed Deming graph with a given spanning witness.
pub fn check_deming_definition(d: &Graph, witness: &EvenSubdivision) -> Result<bool> {
    Ok(witness.check(d).is_ok() && witness.order() == d.n() && allowed_deletions_ke(d)?)
}

/// `K − e` is KE for every edge `e`.
pub fn is_even_k4_subdivision_by_deletion(k: &Graph) -> Result<bool> {
    for e in k.edges() {
        if !is_ke(&k.delete_edge(e)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One shrink step: deleting `edge` left a non-KE graph whose obstruction lives on `vertices`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShrinkStep {
    pub edge: Edge,
    pub vertices: Vec<usize>,
}

/// A Deming subgraph obtained from a nice obstruction, in the indices of the host.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shrunk {
    pub vertices: Vec<usize>,
    pub witness: EvenSubdivision,
    /// A perfect matching of the obstruction vertices that were dropped.
    pub removed: Vec<Edge>,
    pub steps: Vec<ShrinkStep>,
}

/// Shrinks the nice obstruction `s` of `h` until it induces a Deming graph.
pub fn shrink_to_deming(h: &Graph, s: &EvenSubdivision) -> Result<Shrunk> {
    let mut u = s.vertices();
    let mut witness = s.clone();
    let mut removed = Vec::new();
    let mut steps = Vec::new();
    'outer: loop {
        let d = h.induced_subgraph(&u)?;
        for e in allowed_edges(&d.graph) {
            let sub = d.graph.delete_vertices(&[e.0, e.1])?;
            let cert = ke_certificate_any(&sub.graph)?;
            if let KeCertificate::NotKe { obstruction, remainder_matching } = cert {
                let up = |v: usize| d.parent[sub.parent[v]];
                removed.push(d.edge_to_parent(e));
                removed.extend(remainder_matching.iter().map(|f| Edge::new(up(f.0), up(f.1))));
                witness = obstruction.map(up).canonical();
                u = witness.vertices();
                steps.push(ShrinkStep { edge: d.edge_to_parent(e), vertices: u.clone() });
                continue 'outer;
            }
        }
        removed.sort_unstable();
        return Ok(Shrunk { vertices: u, witness, removed, steps });
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemingPart {
    pub vertices: Vec<usize>,
    pub witness: EvenSubdivision,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceStep {
    pub round: usize,
    pub obstruction: EvenSubdivision,
    pub shrinks: Vec<ShrinkStep>,
    pub part: String,
    pub vertices: Vec<usize>,
}

/// Deming-BP parts, Deming-K4 parts and a KE remainder partitioning the vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemingDecomposition {
    pub bp: Vec<DemingPart>,
    pub k4: Vec<DemingPart>,
    pub remainder: Vec<usize>,
    pub induced_matching: Vec<Edge>,
    pub provenance: Vec<ProvenanceStep>,
}

impl DemingDecomposition {
    pub fn r(&self) -> usize {
        self.bp.len()
    }

    pub fn l(&self) -> usize {
        self.k4.len()
    }

    pub fn parts(&self) -> impl Iterator<Item = &DemingPart> {
        self.bp.iter().chain(&self.k4)
    }
}

/// Chooses the K4 corner pairing whose construction matching shares most edges with `m`;
/// corners are then listed as the smallest corner, its partner, and the other two in order.
fn orient_k4(s: &EvenSubdivision, m: &Matching) -> EvenSubdivision {
    let base = s.canonical();
    let mut best = base.clone();
    let mut best_score = None;
    for order in [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]] {
        let cand = base.with_corner_order(&order);
        let score = k4_subdivision_perfect_matching(&cand).unwrap().iter().filter(|e| m.contains(**e)).count();
        if best_score.is_none_or(|b| score > b) {
            best_score = Some(score);
            best = cand;
        }
    }
    best
}

/// Decomposes `g` relative to the perfect matching `m`.
pub fn deming_decomposition(g: &Graph, m: &Matching) -> Result<DemingDecomposition> {
    m.require_perfect(g)?;
    let mut cur: Vec<usize> = (0..g.n()).collect();
    let mut mcur = m.clone();
    let mut bp = Vec::new();
    let mut k4 = Vec::new();
    let mut provenance = Vec::new();
    let mut round = 0;
    loop {
        let h = g.induced_subgraph(&cur)?;
        let mh = mcur.restrict(&h.parent);
        let cert = ke_certificate(&h.graph, &mh)?;
        let KeCertificate::NotKe { obstruction, remainder_matching } = cert else { break };
        let shrunk = shrink_to_deming(&h.graph, &obstruction)?;
        let up = |v: usize| h.parent[v];
        let vertices: Vec<usize> = shrunk.vertices.iter().map(|&v| up(v)).collect();
        let mut witness = shrunk.witness.map(up);
        let label = match witness.kind {
            SubdivisionKind::T => "bp",
            SubdivisionKind::K4 => {
                witness = orient_k4(&witness, m);
                "k4"
            }
        };
        provenance.push(ProvenanceStep {
            round,
            obstruction: obstruction.map(up),
            shrinks: shrunk
                .steps
                .iter()
                .map(|s| ShrinkStep { edge: h.edge_to_parent(s.edge), vertices: s.vertices.iter().map(|&v| up(v)).collect() })
                .collect(),
            part: label.to_string(),
            vertices: vertices.clone(),
        });
        let part = DemingPart { vertices: vertices.clone(), witness };
        if label == "bp" {
            bp.push(part);
        } else {
            k4.push(part);
        }
        // G_cur − V(D) is matched by the obstruction's remainder matching plus the shrink pairs
        let mut next = Matching::empty(g.n());
        for e in remainder_matching.iter().chain(&shrunk.removed) {
            next.set(up(e.0), up(e.1));
        }
        cur.retain(|v| vertices.binary_search(v).is_err());
        mcur = next;
        round += 1;
    }
    let remainder = cur;
    let mut induced = Vec::new();
    for p in bp.iter().chain(&k4) {
        induced.extend(subdivision_perfect_matching(&p.witness)?);
    }
    let r = g.induced_subgraph(&remainder)?;
    let seeded = maximum_matching_from(&r.graph, &m.restrict(&r.parent));
    if !seeded.is_perfect() {
        return Err(Error::Invariant("KE remainder without a perfect matching".into()));
    }
    induced.extend(seeded.edges().into_iter().map(|e| r.edge_to_parent(e)));
    induced.sort_unstable();
    Ok(DemingDecomposition { bp, k4, remainder, induced_matching: induced, provenance })
}

/// The decomposition-induced perfect matching.
pub fn induced_perfect_matching(dec: &DemingDecomposition) -> Vec<Edge> {
    dec.induced_matching.clone()
}

/// Re-checks a decomposition against the definitions; returns the first defect found.
pub fn validate_decomposition(g: &Graph, dec: &DemingDecomposition) -> Result<std::result::Result<(), String>> {
    let mut owner = vec![usize::MAX; g.n()];
    let mut mark = |vs: &[usize], id: usize| -> std::result::Result<(), String> {
        for &v in vs {
            if v >= g.n() || owner[v] != usize::MAX {
                return Err(format!("vertex {v} missing or repeated"));
            }
            owner[v] = id;
        }
        Ok(())
    };
    let parts: Vec<&DemingPart> = dec.parts().collect();
    for (i, p) in parts.iter().enumerate() {
        if let Err(e) = mark(&p.vertices, i) {
            return Ok(Err(e));
        }
    }
    if let Err(e) = mark(&dec.remainder, parts.len()) {
        return Ok(Err(e));
    }
    if owner.contains(&usize::MAX) {
        return Ok(Err("parts do not cover the vertex set".into()));
    }
    let pm = match Matching::from_edges(g, &dec.induced_matching) {
        Ok(pm) if pm.is_perfect() => pm,
        _ => return Ok(Err("induced matching is not a perfect matching".into())),
    };
    if pm.edges().iter().any(|e| owner[e.0] != owner[e.1]) {
        return Ok(Err("induced matching crosses parts".into()));
    }
    for (i, p) in parts.iter().enumerate() {
        let expected = if i < dec.bp.len() { SubdivisionKind::T } else { SubdivisionKind::K4 };
        let d = g.induced_subgraph(&p.vertices)?;
        let local = p.witness.map(|v| d.from_parent(v).unwrap_or(usize::MAX));
        if p.witness.kind != expected || !check_deming_definition(&d.graph, &local)? {
            return Ok(Err(format!("part {i} fails the Deming definition")));
        }
    }
    let r = g.induced_subgraph(&dec.remainder)?;
    if !ke_certificate(&r.graph, &pm.restrict(&r.parent))?.is_ke() {
        return Ok(Err("remainder is not KE".into()));
    }
    Ok(Ok(()))
}

/// Edges `x_i y_i ∈ M ∩ E(D_i)`, one per Deming part, whose joint deletion leaves a KE graph.
/// `m` must restrict to a perfect matching of every part, as the induced matching does.
pub fn nu_minus_k_witness(
    g: &Graph,
    m: &Matching,
    dec: &DemingDecomposition,
    budget: &Budget,
) -> Result<Option<Vec<Edge>>> {
    m.require_perfect(g)?;
    let mut choices: Vec<Vec<Edge>> = Vec::new();
    for p in dec.parts() {
        let inside = |v: usize| p.vertices.binary_search(&v).is_ok();
        if p.vertices.iter().any(|&v| m.mate(v).is_none_or(|w| !inside(w))) {
            return Err(Error::invalid("matching does not restrict to a perfect matching of every part"));
        }
        choices.push(m.edges().into_iter().filter(|e| inside(e.0)).collect());
    }
    let mut meter = budget.meter(budget.oracle_nodes);
    let mut pick = Vec::new();
    fn rec(
        g: &Graph,
        m: &Matching,
        choices: &[Vec<Edge>],
        pick: &mut Vec<Edge>,
        meter: &mut Meter,
    ) -> Result<bool> {
        if pick.len() == choices.len() {
            meter.tick()?;
            let gone: Vec<usize> = pick.iter().flat_map(|e| [e.0, e.1]).collect();
            let sub = g.delete_vertices(&gone)?;
            return Ok(ke_certificate(&sub.graph, &m.restrict(&sub.parent))?.is_ke());
        }
        for &e in &choices[pick.len()] {
            pick.push(e);
            if rec(g, m, choices, pick, meter)? {
                return Ok(true);
            }
            pick.pop();
        }
        Ok(false)
    }
    Ok(rec(g, m, &choices, &mut pick, &mut meter)?.then_some(pick))
}

/// Decomposition of any graph: unmatchable graphs are decomposed through their Deming
/// extension (vertices `>= g.n()` are added twins).
pub fn decompose_any(g: &Graph) -> Result<(Graph, DemingDecomposition)> {
    if has_perfect_matching(g) {
        let m = maximum_matching(g);
        return Ok((g.clone(), deming_decomposition(g, &m)?));
    }
    let ext = crate::critical::deming_extension(g);
    let dec = deming_decomposition(&ext.graph, &ext.matching)?;
    Ok((ext.graph, dec))
}
