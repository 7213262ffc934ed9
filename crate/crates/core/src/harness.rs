//! Per-graph analysis records and the resumable conjecture runner.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::budget::Budget;
use crate::critical::{deming_extension, maximum_critical_independent_set, CriticalDecomposition};
use crate::deming::{deming_decomposition, validate_decomposition, DemingDecomposition};
use crate::egervary::{is_egervary, necessary_conditions, oracles, ConditionStatus, EgervaryStatus, EgervaryVerdict};
use crate::error::{Error, Result};
use crate::generators::gen_random_matchable;
use crate::graph::Graph;
use crate::independence::{alpha, GraphInvariants};
use crate::io::{parse_graph6, to_graph6};
use crate::ke::{ke_certificate, KeCertificate};
use crate::matching::{matching_number, maximum_matching};
use crate::subdivision::{EvenSubdivision, SubdivisionKind};

pub const ANALYSIS_SCHEMA: &str = "deming.analysis/1";
pub const STATE_SCHEMA: &str = "deming.conjectures/1";

/// graph6 of the nauty canonical form (orders up to 64; larger graphs keep their labelling).
pub fn graph_id(g: &Graph) -> String {
    if g.n() > 64 {
        return to_graph6(g);
    }
    let rows: Vec<u64> = (0..g.n()).map(|v| g.mask(v)).collect();
    let canon = graph_enum::canonical_form(&rows);
    let c = Graph::from_edges(g.n(), graph_enum::edges(&canon)).expect("canonical form is simple");
    to_graph6(&c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeSummary {
    /// "KE" or "NOT_KE".
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<EvenSubdivision>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartSummary {
    pub kind: SubdivisionKind,
    pub vertices: Vec<usize>,
    pub nu: usize,
    pub alpha: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionSummary {
    pub r: usize,
    pub l: usize,
    pub parts: Vec<PartSummary>,
    pub remainder: Vec<usize>,
    pub remainder_alpha: Option<usize>,
}

impl DecompositionSummary {
    /// Σ α(parts) + α(R), when every term is known.
    pub fn alpha_sum(&self) -> Option<usize> {
        let mut s = self.remainder_alpha?;
        for p in &self.parts {
            s += p.alpha?;
        }
        Some(s)
    }
}

/// The Deming extension an unmatchable graph was analysed through.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionSummary {
    pub n: usize,
    /// `(v, v')`, with `v'` the twin added for `v`.
    pub twins: Vec<(usize, usize)>,
    pub alpha: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisRecord {
    pub schema: String,
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub matchable: bool,
    pub invariants: Option<GraphInvariants>,
    /// For unmatchable graphs, the certificate of the extension.
    pub ke: KeSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<ExtensionSummary>,
    /// Vertices `>= n` are extension twins.
    pub decomposition: DecompositionSummary,
    /// Absent for unmatchable graphs.
    pub egervary: Option<EgervaryVerdict>,
    pub critical_split: Option<CriticalDecomposition>,
    /// Fields left open by an exhausted budget.
    pub undecided: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl AnalysisRecord {
    /// Cross-field consistency; returns the first contradiction.
    pub fn check_consistency(&self) -> std::result::Result<(), String> {
        let ke = self.ke.verdict == "KE";
        if ke != self.ke.obstruction.is_none() {
            return Err("KE verdict and obstruction disagree".into());
        }
        if ke && (self.decomposition.r + self.decomposition.l != 0) {
            return Err("KE graph with Deming parts".into());
        }
        if let Some(inv) = &self.invariants {
            if inv.is_ke != ke {
                return Err("oracle and certificate disagree on KE".into());
            }
            if let Some(e) = &self.extension {
                if e.alpha.is_some_and(|a| a != inv.alpha) {
                    return Err("extension changed α".into());
                }
            }
        }
        if let Some(v) = &self.egervary {
            if v.status == EgervaryStatus::NotEgervary && v.witness.is_none() {
                return Err("NOT_EGERVARY without witness".into());
            }
            if ke && v.status == EgervaryStatus::NotEgervary {
                return Err("KE graph judged not Egerváry".into());
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub budget: Budget,
    /// Timings make records irreproducible, so they are off unless asked for.
    pub timings: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { budget: Budget::deterministic(), timings: false }
    }
}

/// `Ok(None)` when the budget ran out, with `field` noted as undecided.
fn soft<T>(r: Result<T>, field: &str, undecided: &mut Vec<String>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::BudgetExceeded) => {
            undecided.push(field.to_string());
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn summarize(h: &Graph, dec: &DemingDecomposition, budget: &Budget, undecided: &mut Vec<String>) -> Result<DecompositionSummary> {
    let mut parts = Vec::new();
    let mut open = false;
    for p in dec.parts() {
        let sub = h.induced_subgraph(&p.vertices)?;
        let a = match alpha(&sub.graph, budget) {
            Ok(a) => Some(a),
            Err(Error::BudgetExceeded) => {
                open = true;
                None
            }
            Err(e) => return Err(e),
        };
        parts.push(PartSummary {
            kind: p.witness.kind,
            vertices: p.vertices.clone(),
            nu: p.vertices.len() / 2,
            alpha: a,
        });
    }
    if open {
        undecided.push("part_alpha".into());
    }
    let r = h.induced_subgraph(&dec.remainder)?;
    let remainder_alpha = soft(alpha(&r.graph, budget), "remainder_alpha", undecided)?;
    Ok(DecompositionSummary { r: dec.r(), l: dec.l(), parts, remainder: dec.remainder.clone(), remainder_alpha })
}

/// Everything the library knows how to compute about `g`. Unmatchable graphs are
/// certified and decomposed through their Deming extension.
pub fn analyze(g: &Graph, opts: &AnalyzeOptions) -> Result<AnalysisRecord> {
    let budget = &opts.budget;
    let mut undecided = Vec::new();
    let mut timings = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |name: &str, timings: &mut BTreeMap<String, f64>| {
        timings.insert(name.to_string(), clock.elapsed().as_secs_f64() * 1e3);
        clock = Instant::now();
    };

    let nu = matching_number(g);
    let matchable = 2 * nu == g.n();
    let invariants = soft(alpha(g, budget), "alpha", &mut undecided)?.map(|a| GraphInvariants {
        alpha: a,
        nu,
        n: g.n(),
        delta: g.n() as i64 - 2 * a as i64,
        is_ke: a + nu == g.n(),
    });
    lap("alpha", &mut timings);

    let (h, m, extension) = if matchable {
        (g.clone(), maximum_matching(g), None)
    } else {
        let ext = deming_extension(g);
        let a = soft(alpha(&ext.graph, budget), "extension_alpha", &mut undecided)?;
        let summary = ExtensionSummary { n: ext.graph.n(), twins: ext.twins.clone(), alpha: a };
        (ext.graph, ext.matching, Some(summary))
    };
    let ke = match ke_certificate(&h, &m)? {
        KeCertificate::Ke { .. } => KeSummary { verdict: "KE".into(), obstruction: None },
        KeCertificate::NotKe { obstruction, .. } => KeSummary { verdict: "NOT_KE".into(), obstruction: Some(obstruction) },
    };
    lap("ke", &mut timings);

    let dec = deming_decomposition(&h, &m)?;
    let decomposition = summarize(&h, &dec, budget, &mut undecided)?;
    lap("decomposition", &mut timings);

    let egervary = if matchable {
        let v = is_egervary(g, budget)?;
        if v.status == EgervaryStatus::Undecided {
            undecided.push("egervary".into());
        }
        Some(v)
    } else {
        None
    };
    lap("egervary", &mut timings);

    let critical_split = if g.n() <= 64 {
        soft(maximum_critical_independent_set(g, budget), "critical_split", &mut undecided)?
    } else {
        undecided.push("critical_split".into());
        None
    };
    lap("critical_split", &mut timings);

    Ok(AnalysisRecord {
        schema: ANALYSIS_SCHEMA.into(),
        graph6: graph_id(g),
        n: g.n(),
        m: g.m(),
        matchable,
        invariants,
        ke,
        extension,
        decomposition,
        egervary,
        critical_split,
        undecided,
        timings_ms: opts.timings.then_some(timings),
    })
}

/// The claims tested over a corpus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conjecture {
    /// Egerváry iff the six decomposition conditions hold.
    Characterization,
    /// Egerváry graphs have α additive over their decomposition.
    EgervaryAdditivity,
    /// Any decomposition without BP parts has α additive over it.
    DecompositionAdditivity,
}

impl Conjecture {
    pub const ALL: [Conjecture; 3] =
        [Conjecture::Characterization, Conjecture::EgervaryAdditivity, Conjecture::DecompositionAdditivity];
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub confirmed: u64,
    /// Counterexample candidates; see `candidates` for their audits.
    pub refuted: u64,
    pub undecided: u64,
    pub not_applicable: u64,
}

/// An independent re-derivation of the facts a candidate rests on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Audit {
    /// Every re-check agreed with the original computation.
    pub confirmed: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub conjecture: Conjecture,
    pub index: u64,
    pub graph6: String,
    pub detail: String,
    pub audit: Audit,
    pub record: AnalysisRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusDescriptor {
    pub source: String,
    pub count: u64,
    pub sha256: String,
}

/// Graphs to test, in a fixed order.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub source: String,
    pub graphs: Vec<Graph>,
}

impl Corpus {
    pub fn new(source: impl Into<String>, graphs: Vec<Graph>) -> Self {
        Corpus { source: source.into(), graphs }
    }

    pub fn from_graph6(source: impl Into<String>, text: &str) -> Result<Self> {
        let graphs = text.lines().map(str::trim).filter(|l| !l.is_empty()).map(parse_graph6).collect::<Result<_>>()?;
        Ok(Corpus::new(source, graphs))
    }

    /// `count` random matchable graphs, graph `i` with seed `seed + i` and an even order
    /// cycling through `min_n..=max_n`.
    pub fn random(min_n: usize, max_n: usize, edge_prob: f64, seed: u64, count: u64) -> Result<Self> {
        let orders: Vec<usize> = (min_n..=max_n).filter(|n| n % 2 == 0).collect();
        if orders.is_empty() {
            return Err(Error::invalid("no even order in range"));
        }
        let graphs = (0..count)
            .map(|i| gen_random_matchable(orders[i as usize % orders.len()], edge_prob, seed + i))
            .collect::<Result<_>>()?;
        Ok(Corpus::new(format!("random:{min_n}-{max_n}:{edge_prob}:{seed}:{count}"), graphs))
    }

    pub fn descriptor(&self) -> CorpusDescriptor {
        let mut h = Sha256::new();
        for g in &self.graphs {
            h.update(to_graph6(g).as_bytes());
            h.update(b"\n");
        }
        let sha256 = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
        CorpusDescriptor { source: self.source.clone(), count: self.graphs.len() as u64, sha256 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureRunState {
    pub schema: String,
    pub corpus: CorpusDescriptor,
    pub budget: Budget,
    /// Index of the next graph to process.
    pub cursor: u64,
    pub skipped_unmatchable: u64,
    pub tallies: BTreeMap<Conjecture, Tally>,
    pub candidates: Vec<Candidate>,
}

impl ConjectureRunState {
    pub fn new(corpus: &Corpus, budget: Budget) -> Self {
        ConjectureRunState {
            schema: STATE_SCHEMA.into(),
            corpus: corpus.descriptor(),
            budget,
            cursor: 0,
            skipped_unmatchable: 0,
            tallies: Conjecture::ALL.iter().map(|&c| (c, Tally::default())).collect(),
            candidates: Vec::new(),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.cursor == self.corpus.count
    }

    /// Candidates whose audit did not confirm them: these point at bugs, not mathematics.
    pub fn unexplained(&self) -> impl Iterator<Item = &Candidate> {
        self.candidates.iter().filter(|c| !c.audit.confirmed)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let state: ConjectureRunState =
            serde_json::from_str(&text).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
        if state.schema != STATE_SCHEMA {
            return Err(Error::invalid(format!("unsupported state schema {}", state.schema)));
        }
        Ok(state)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_string_pretty(self).expect("state serializes"))?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Outcome {
    Confirmed,
    Refuted(String),
    Undecided,
    NotApplicable,
}

struct Evaluated {
    outcomes: Option<Vec<(Conjecture, Outcome)>>,
}

fn part_alphas(g: &Graph, dec: &DemingDecomposition, budget: &Budget) -> Result<Option<(usize, usize)>> {
    let mut sum = 0;
    for vs in dec.parts().map(|p| &p.vertices).chain(std::iter::once(&dec.remainder)) {
        match alpha(&g.induced_subgraph(vs)?.graph, budget) {
            Ok(a) => sum += a,
            Err(Error::BudgetExceeded) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    match alpha(g, budget) {
        Ok(a) => Ok(Some((a, sum))),
        Err(Error::BudgetExceeded) => Ok(None),
        Err(e) => Err(e),
    }
}

fn evaluate(g: &Graph, budget: &Budget) -> Result<Evaluated> {
    let m = maximum_matching(g);
    if !m.is_perfect() {
        return Ok(Evaluated { outcomes: None });
    }
    let dec = deming_decomposition(g, &m)?;
    let eg = is_egervary(g, budget)?.decided();
    let nc = necessary_conditions(g, &m, &dec, budget)?;
    let alphas = part_alphas(g, &dec, budget)?;

    let characterization = match eg {
        None => Outcome::Undecided,
        Some(true) if nc.any_fails() => {
            let failing: Vec<usize> =
                (1..=6).filter(|&i| nc.items()[i - 1].status == ConditionStatus::Fails).collect();
            Outcome::Refuted(format!("Egerváry but condition(s) {failing:?} fail"))
        }
        Some(false) if nc.all_hold() => Outcome::Refuted("all six conditions hold but not Egerváry".into()),
        Some(true) if nc.all_hold() => Outcome::Confirmed,
        Some(false) if nc.any_fails() => Outcome::Confirmed,
        Some(_) => Outcome::Undecided,
    };
    let additive = |applicable: bool| match (applicable, alphas) {
        (false, _) => Outcome::NotApplicable,
        (true, None) => Outcome::Undecided,
        (true, Some((a, s))) if a == s => Outcome::Confirmed,
        (true, Some((a, s))) => Outcome::Refuted(format!("α = {a} but the parts sum to {s}")),
    };
    let egervary_additivity = match eg {
        None => Outcome::Undecided,
        Some(false) => Outcome::NotApplicable,
        Some(true) if dec.r() > 0 => Outcome::Refuted("Egerváry graph with a Deming-BP part".into()),
        Some(true) => additive(true),
    };
    let decomposition_additivity = additive(dec.r() == 0);
    Ok(Evaluated {
        outcomes: Some(vec![
            (Conjecture::Characterization, characterization),
            (Conjecture::EgervaryAdditivity, egervary_additivity),
            (Conjecture::DecompositionAdditivity, decomposition_additivity),
        ]),
    })
}

/// Plain branching without bounds; independent of the main solver.
fn audit_alpha(g: &Graph) -> Option<usize> {
    if g.n() > 64 {
        return None;
    }
    fn rec(g: &Graph, cand: u64) -> usize {
        if cand == 0 {
            return 0;
        }
        let v = cand.trailing_zeros() as usize;
        let rest = cand & !(1 << v);
        let with = 1 + rec(g, rest & !g.mask(v));
        if g.mask(v) & rest == 0 {
            return with;
        }
        with.max(rec(g, rest))
    }
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    Some(rec(g, all))
}

/// Re-derives a candidate's facts by independent routes: the decomposition is re-validated,
/// α of G, its parts and remainder by unbounded branching, and the Egerváry verdict by the
/// definition-based oracle.
pub fn audit_candidate(g: &Graph, budget: &Budget) -> Result<Audit> {
    let mut notes = Vec::new();
    let mut confirmed = true;
    let m = maximum_matching(g);
    let dec = deming_decomposition(g, &m)?;
    match validate_decomposition(g, &dec)? {
        Ok(()) => notes.push("decomposition re-validated".into()),
        Err(e) => {
            confirmed = false;
            notes.push(format!("decomposition defect: {e}"));
        }
    }
    if g.n() <= 30 {
        let mut check = |label: &str, h: &Graph| -> Result<()> {
            let a = alpha(h, budget)?;
            if audit_alpha(h) != Some(a) {
                confirmed = false;
                notes.push(format!("α of {label} disagrees with brute force"));
            }
            Ok(())
        };
        check("G", g)?;
        for (i, p) in dec.parts().enumerate() {
            check(&format!("part {i}"), &g.induced_subgraph(&p.vertices)?.graph)?;
        }
        check("remainder", &g.induced_subgraph(&dec.remainder)?.graph)?;
        notes.push("α values re-derived by brute force".into());
    } else {
        notes.push("α not re-derived: order above 30".into());
    }
    if g.n() <= 20 {
        let v = is_egervary(g, budget)?;
        match (v.decided(), oracles::definition_check(g, budget)) {
            (Some(a), Ok(b)) if a == b => notes.push("Egerváry verdict re-derived from the definition".into()),
            (_, Err(Error::BudgetExceeded)) | (None, _) => notes.push("Egerváry verdict not re-derived".into()),
            (_, Err(e)) => return Err(e),
            _ => {
                confirmed = false;
                notes.push("Egerváry verdict disagrees with the definition".into());
            }
        }
        if let Some(w) = &v.witness {
            if w.subdivision.check(g).is_err() {
                confirmed = false;
                notes.push("Egerváry witness is not a subgraph".into());
            }
        }
    } else {
        notes.push("Egerváry verdict not re-derived: order above 20".into());
    }
    Ok(Audit { confirmed, notes })
}

const CHUNK: usize = 256;

/// Runs (or resumes) the conjecture battery over `corpus`, persisting the state to
/// `state_path` after every chunk. At most `limit` further graphs are processed.
pub fn run_conjecture_suite(
    corpus: &Corpus,
    budget: &Budget,
    state_path: &Path,
    limit: Option<u64>,
) -> Result<ConjectureRunState> {
    let descriptor = corpus.descriptor();
    let mut state = if state_path.exists() {
        let s = ConjectureRunState::load(state_path)?;
        if s.corpus.sha256 != descriptor.sha256 {
            return Err(Error::invalid("state file belongs to a different corpus"));
        }
        if s.budget != *budget {
            return Err(Error::invalid("state file was produced under a different budget"));
        }
        s
    } else {
        ConjectureRunState::new(corpus, *budget)
    };
    let end = limit.map_or(descriptor.count, |l| (state.cursor + l).min(descriptor.count));
    while state.cursor < end {
        let lo = state.cursor as usize;
        let hi = (lo + CHUNK).min(end as usize);
        let results: Vec<Result<Evaluated>> =
            corpus.graphs[lo..hi].par_iter().map(|g| evaluate(g, budget)).collect();
        for (i, r) in results.into_iter().enumerate() {
            let idx = lo + i;
            let Some(outcomes) = r?.outcomes else {
                state.skipped_unmatchable += 1;
                continue;
            };
            for (c, o) in outcomes {
                let t = state.tallies.entry(c).or_default();
                match o {
                    Outcome::Confirmed => t.confirmed += 1,
                    Outcome::Undecided => t.undecided += 1,
                    Outcome::NotApplicable => t.not_applicable += 1,
                    Outcome::Refuted(detail) => {
                        t.refuted += 1;
                        let g = &corpus.graphs[idx];
                        log::warn!("{c:?} candidate at index {idx}: {detail}");
                        state.candidates.push(Candidate {
                            conjecture: c,
                            index: idx as u64,
                            graph6: to_graph6(g),
                            detail,
                            audit: audit_candidate(g, budget)?,
                            record: analyze(g, &AnalyzeOptions { budget: *budget, timings: false })?,
                        });
                    }
                }
            }
        }
        state.cursor = hi as u64;
        state.save(state_path)?;
    }
    Ok(state)
}
