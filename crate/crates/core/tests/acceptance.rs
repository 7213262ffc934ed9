//! Acceptance run: one PASS/FAIL line per criterion. Runs as a plain binary so the lines
//! are visible in `cargo test` output.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use deming::critical::{deming_extension, find_twins, maximum_critical_independent_set, remove_twin};
use deming::deming::{deming_decomposition, induced_perfect_matching, is_deming_bp, validate_decomposition};
use deming::egervary::{is_egervary, oracles};
use deming::generators::{
    c60, complete, complete_bipartite, cycle, gen_bipartite_extension, gen_blossom_pair, gen_bracelet,
    gen_even_k4_subdivision, gen_named, gen_random_matchable, gen_weak_banana, gen_weak_wheel, path, petersen,
};
use deming::harness::{analyze, run_conjecture_suite, AnalyzeOptions, Conjecture, ConjectureRunState, Corpus};
use deming::independence::{alpha, is_alpha_critical};
use deming::io::to_graph6;
use deming::ke::{ke_certificate, validate_certificate};
use deming::matching::{enumerate_perfect_matchings, matching_number, maximum_matching, Matching};
use deming::subdivision::{
    k4_subdivision_perfect_matching, recognize_even_k4_subdivision, recognize_even_t_subdivision,
    t_subdivision_unique_pm, SubdivisionKind,
};
use deming::{Budget, Edge, Graph, Result};

const B: Budget = Budget { oracle_nodes: 100_000_000, cycle_pairs: 10_000_000, wall_clock_secs: 0 };

/// Counts checks and keeps a few failure descriptions.
#[derive(Default)]
struct Tally {
    checked: u64,
    failed: u64,
    examples: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.examples.len() < 5 {
                self.examples.push(what());
            }
        }
    }

    fn ok(&self) -> bool {
        self.failed == 0
    }

    fn summary(&self) -> String {
        if self.ok() {
            format!("{} checks", self.checked)
        } else {
            format!("{} of {} checks failed, e.g. {}", self.failed, self.checked, self.examples.join("; "))
        }
    }
}

fn a(g: &Graph) -> usize {
    alpha(g, &B).expect("α within budget")
}

fn from_rows(rows: &[u64]) -> Graph {
    Graph::from_edges(rows.len(), graph_enum::edges(rows)).unwrap()
}

fn sub(g: &Graph, vs: &[usize]) -> Graph {
    g.induced_subgraph(vs).unwrap().graph
}

/// KE certificate against the oracle, then the decomposition against its theorem.
#[derive(Default)]
struct Decomposed {
    ke: Tally,
    dec: Tally,
    parts: Tally,
    graphs: u64,
}

impl Decomposed {
    fn run(&mut self, g: &Graph, alpha_g: usize) -> Result<bool> {
        self.graphs += 1;
        let m = maximum_matching(g);
        let nu = m.size();
        let oracle_ke = alpha_g + nu == g.n();
        let cert = ke_certificate(g, &m)?;
        let valid = validate_certificate(g, &m, &cert);
        self.ke.check(cert.is_ke() == oracle_ke && valid.is_ok(), || {
            format!("{}: certificate KE={} oracle KE={oracle_ke} validation {valid:?}", to_graph6(g), cert.is_ke())
        });

        let dec = deming_decomposition(g, &m)?;
        let mut problems = Vec::new();
        if let Err(e) = validate_decomposition(g, &dec)? {
            problems.push(e);
        }
        let mut nu_sum = 0;
        for (i, p) in dec.parts().enumerate() {
            let h = sub(g, &p.vertices);
            let (ah, nh) = (a(&h), matching_number(&h));
            nu_sum += nh;
            self.parts.check(ah + 1 == nh, || format!("{} part {i}: α={ah} ν={nh}", to_graph6(g)));
            if ah + 1 != nh {
                problems.push(format!("part {i} has α={ah}, ν={nh}"));
            }
        }
        let r = sub(g, &dec.remainder);
        let (ar, nr) = (a(&r), matching_number(&r));
        nu_sum += nr;
        if ar != nr {
            problems.push(format!("remainder has α={ar}, ν={nr}"));
        }
        if nu_sum != nu {
            problems.push(format!("ν={nu} but the parts sum to {nu_sum}"));
        }
        if alpha_g + dec.r() + dec.l() > nu {
            problems.push(format!("α={alpha_g} exceeds ν−(r+ℓ)"));
        }
        if oracle_ke && dec.r() + dec.l() > 0 {
            problems.push("KE graph with Deming parts".into());
        }
        match Matching::from_edges(g, &induced_perfect_matching(&dec)) {
            Ok(pm) if pm.is_perfect() => {}
            _ => problems.push("induced matching not perfect".into()),
        }
        self.dec.check(problems.is_empty(), || format!("{}: {}", to_graph6(g), problems.join(", ")));
        Ok(oracle_ke)
    }
}

/// The three Egerváry tests, and KE ⇒ Egerváry.
#[derive(Default)]
struct Egervary {
    agree: Tally,
    ke_implies: Tally,
    egervary: u64,
}

impl Egervary {
    fn run(&mut self, g: &Graph, ke: bool, all_three: bool) -> Result<()> {
        let e = is_egervary(g, &B)?.require()?;
        if all_three {
            let d = oracles::definition_check(g, &B)?;
            let t = oracles::nice_t_search(g, &B)?.is_none();
            self.agree.check(e == d && d == t, || {
                format!("{}: pairs {e}, definition {d}, nice T {t}", to_graph6(g))
            });
        }
        self.ke_implies.check(!ke || e, || format!("{} is KE but judged not Egerváry", to_graph6(g)));
        self.egervary += e as u64;
        Ok(())
    }
}

#[derive(Default)]
struct Andrasfai {
    delta2: Tally,
    delta0: Tally,
}

/// One pass over every graph with at most `max_n` vertices.
#[derive(Default)]
struct Corpus10 {
    graphs: u64,
    connected_matchable: u64,
    matchable: u64,
    decomposed: Decomposed,
    egervary: Egervary,
    andrasfai: Andrasfai,
    seconds: f64,
}

impl Corpus10 {
    fn run(max_n: usize) -> Result<Self> {
        let start = Instant::now();
        let mut s = Corpus10::default();
        let mut err = None;
        graph_enum::for_each_graph_in_range(1, max_n, |rows| {
            if err.is_some() {
                return;
            }
            if let Err(e) = s.visit(rows) {
                err = Some(e);
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        s.seconds = start.elapsed().as_secs_f64();
        Ok(s)
    }

    fn visit(&mut self, rows: &[u64]) -> Result<()> {
        self.graphs += 1;
        let g = from_rows(rows);
        let connected = graph_enum::is_connected(rows);
        let ag = a(&g);
        let delta = g.n() as i64 - 2 * ag as i64;
        if connected && (delta == 0 || delta == 2) && is_alpha_critical(&g, &B)? {
            if delta == 2 {
                self.andrasfai.delta2.check(recognize_even_k4_subdivision(&g).is_some(), || {
                    format!("{} is α-critical with δ=2 but not an even K4-subdivision", to_graph6(&g))
                });
            } else {
                self.andrasfai.delta0.check(g.n() == 2 && g.m() == 1, || {
                    format!("{} is α-critical with δ=0 but not K2", to_graph6(&g))
                });
            }
        }
        if g.n() % 2 == 1 || 2 * matching_number(&g) != g.n() {
            return Ok(());
        }
        self.matchable += 1;
        let ke = if connected {
            self.connected_matchable += 1;
            self.decomposed.run(&g, ag)?
        } else {
            ag + g.n() / 2 == g.n()
        };
        self.egervary.run(&g, ke, true)
    }
}

/// `count` seeded random matchable graphs with even orders up to 20.
fn random_matchable(count: u64) -> impl Iterator<Item = Graph> {
    const P: [f64; 5] = [0.1, 0.15, 0.2, 0.3, 0.5];
    (0..count).map(|i| {
        let n = 2 + 2 * (i as usize % 10);
        gen_random_matchable(n, P[(i / 10) as usize % P.len()], 1_000 + i).unwrap()
    })
}

#[derive(Default)]
struct RandomPass {
    decomposed: Decomposed,
    egervary: Egervary,
}

impl RandomPass {
    fn run() -> Result<Self> {
        let mut s = RandomPass::default();
        for g in random_matchable(10_000) {
            let ke = s.decomposed.run(&g, a(&g))?;
            s.egervary.run(&g, ke, false)?;
        }
        Ok(s)
    }
}

fn odd_lengths(max: usize) -> impl Iterator<Item = usize> + Clone {
    (1..=max).step_by(2)
}

fn k4_subdivisions() -> impl Iterator<Item = ([usize; 6], Graph)> {
    let l: Vec<usize> = odd_lengths(7).collect();
    let mut out = Vec::new();
    for i in 0..l.len().pow(6) {
        let mut x = i;
        let mut lens = [0; 6];
        for slot in &mut lens {
            *slot = l[x % l.len()];
            x /= l.len();
        }
        out.push((lens, gen_even_k4_subdivision(lens).unwrap()));
    }
    out.into_iter()
}

fn blossom_pairs(max_p: usize) -> impl Iterator<Item = ((usize, usize, usize), Graph)> {
    let mut out = Vec::new();
    for c1 in (3..=9).step_by(2) {
        for c2 in (3..=9).step_by(2) {
            for p in odd_lengths(max_p) {
                out.push(((c1, c2, p), gen_blossom_pair(c1, c2, p).unwrap()));
            }
        }
    }
    out.into_iter()
}

fn criterion1() -> Result<(bool, String)> {
    let r = analyze(&gen_named("T")?, &AnalyzeOptions { budget: B, timings: false })?;
    let inv = r.invariants.clone().unwrap();
    let eg = r.egervary.as_ref().and_then(|e| e.decided());
    let ok = (inv.alpha, inv.nu, inv.n, inv.is_ke, eg) == (2, 3, 6, false, Some(false));
    Ok((ok, format!("α={} ν={} n={} KE={} Egerváry={:?}", inv.alpha, inv.nu, inv.n, inv.is_ke, eg)))
}

fn criterion4(corpus: &Corpus10, random: &RandomPass) -> Result<(bool, String)> {
    let mut t = Tally::default();
    for (lens, g) in k4_subdivisions() {
        let (ag, nu) = (a(&g), matching_number(&g));
        t.check(ag + 1 == nu, || format!("K4 subdivision {lens:?}: α={ag} ν={nu}"));
    }
    for (p, g) in blossom_pairs(7) {
        let (ag, nu) = (a(&g), matching_number(&g));
        t.check(ag + 1 == nu, || format!("blossom pair {p:?}: α={ag} ν={nu}"));
    }
    let parts = &corpus.decomposed.parts;
    let rparts = &random.decomposed.parts;
    let ok = t.ok() && parts.ok() && rparts.ok();
    Ok((
        ok,
        format!(
            "decomposition parts: {} (corpus) + {} (random); generated: {}",
            parts.summary(),
            rparts.summary(),
            t.summary()
        ),
    ))
}

fn criterion5() -> Result<(bool, String)> {
    let mut k4 = Tally::default();
    for (lens, g) in k4_subdivisions() {
        let s = recognize_even_k4_subdivision(&g);
        let pm_ok = s.as_ref().is_some_and(|s| {
            k4_subdivision_perfect_matching(s)
                .ok()
                .and_then(|pm| Matching::from_edges(&g, &pm).ok())
                .is_some_and(|m| m.is_perfect())
        });
        k4.check(pm_ok, || format!("K4 subdivision {lens:?}: constructed matching invalid"));
        let ag = a(&g);
        for e in g.edges() {
            let h = g.delete_edge(e)?;
            let ah = a(&h);
            k4.check(ah + matching_number(&h) == h.n(), || format!("K4 subdivision {lens:?} − {e} is not KE"));
            k4.check(ah == ag + 1, || format!("K4 subdivision {lens:?}: {e} is not α-critical"));
        }
    }
    let mut bp = Tally::default();
    for (p, g) in blossom_pairs(9) {
        let pms = enumerate_perfect_matchings(&g, 2);
        bp.check(pms.len() == 1, || format!("blossom pair {p:?} has {} perfect matchings", pms.len()));
        let Some(pm) = pms.first() else { continue };
        let constructed = recognize_even_t_subdivision(&g).and_then(|s| t_subdivision_unique_pm(&s).ok());
        bp.check(constructed.as_deref() == Some(&pm.edges()[..]), || {
            format!("blossom pair {p:?}: constructed matching differs")
        });
        for e in g.edges().filter(|e| !pm.contains(*e)) {
            let h = g.delete_edge(e)?;
            bp.check(a(&h) + matching_number(&h) == h.n(), || format!("blossom pair {p:?} − {e} is not KE"));
        }
    }
    Ok((k4.ok() && bp.ok(), format!("K4 subdivisions: {}; blossom pairs: {}", k4.summary(), bp.summary())))
}

fn criterion6() -> Result<(bool, String)> {
    let g = c60();
    let start = Instant::now();
    let ag = a(&g);
    let secs = start.elapsed().as_secs_f64();
    let dec = deming_decomposition(&g, &maximum_matching(&g))?;
    let mut problems = Vec::new();
    if let Err(e) = validate_decomposition(&g, &dec)? {
        problems.push(e);
    }
    let mut covered = HashSet::new();
    let mut sum = 0;
    for p in &dec.bp {
        let w = &p.witness;
        let lens: Vec<usize> = w.cycles.iter().map(Vec::len).collect();
        if p.vertices.len() != 10 || w.kind != SubdivisionKind::T || lens != [5, 5] || w.paths[0].len() != 2 {
            problems.push(format!("part {:?} is not two pentagons joined by an edge", p.vertices));
        }
        for c in &w.cycles {
            if !c.iter().all(|v| covered.insert(*v)) {
                problems.push("pentagons overlap".into());
            }
        }
        let ap = a(&sub(&g, &p.vertices));
        if ap != 4 {
            problems.push(format!("part α={ap}"));
        }
        sum += ap;
    }
    let ok = ag == 24 && dec.r() == 6 && dec.l() == 0 && dec.remainder.is_empty() && sum == ag && problems.is_empty();
    Ok((
        ok,
        format!(
            "α={ag} ({secs:.2}s), r={} ℓ={} |R|={}, Σα(parts)={sum}{}",
            dec.r(),
            dec.l(),
            dec.remainder.len(),
            if problems.is_empty() { String::new() } else { format!(", {}", problems.join("; ")) }
        ),
    ))
}

fn criterion7() -> Result<(bool, String)> {
    let g = petersen();
    let bp = is_deming_bp(&g)?.is_some();
    let (ag, nu) = (a(&g), matching_number(&g));
    Ok((bp && ag == 4 && nu == 5, format!("Deming-BP={bp} α={ag} ν={nu}")))
}

/// Vertex masks of all odd cycles.
fn odd_cycles(g: &Graph) -> Vec<u32> {
    fn dfs(g: &Graph, s: usize, v: usize, mask: u32, len: usize, out: &mut HashSet<u32>) {
        for &w in g.neighbors(v) {
            if w == s && len >= 3 && len % 2 == 1 {
                out.insert(mask);
            } else if w > s && mask >> w & 1 == 0 {
                dfs(g, s, w, mask | 1 << w, len + 1, out);
            }
        }
    }
    let mut out = HashSet::new();
    for s in 0..g.n() {
        dfs(g, s, s, 1 << s, 1, &mut out);
    }
    out.into_iter().collect()
}

fn has_disjoint_odd_cycles(g: &Graph) -> bool {
    let c = odd_cycles(g);
    c.iter().enumerate().any(|(i, x)| c[i + 1..].iter().any(|y| x & y == 0))
}

fn family_sweeps() -> Result<(Tally, Tally, u64)> {
    let mut eg = Tally::default();
    let mut pairs = Tally::default();
    let mut matchable = 0;
    let mut visit = |label: String, g: &Graph, check_cycles: bool| -> Result<()> {
        if g.n() > 20 {
            return Ok(());
        }
        if check_cycles {
            pairs.check(!has_disjoint_odd_cycles(g), || format!("{label} has two disjoint odd cycles"));
        }
        if 2 * matching_number(g) == g.n() {
            matchable += 1;
            let v = is_egervary(g, &B)?.decided();
            eg.check(v == Some(true), || format!("{label}: verdict {v:?}"));
        }
        Ok(())
    };
    let mut wheels = Vec::new();
    for c in 3..=7 {
        for code in 0..3usize.pow(c as u32) {
            let spokes: Vec<usize> = (0..c).map(|i| 1 + code / 3usize.pow(i as u32) % 3).collect();
            let g = gen_weak_wheel(c, &spokes)?;
            visit(format!("weak wheel {c} {spokes:?}"), &g, true)?;
            // extensions are taken of matchable wheels only
            if c <= 6 && spokes.iter().all(|&s| s <= 2) && 2 * matching_number(&g) == g.n() {
                wheels.push((format!("weak wheel {c} {spokes:?}"), g));
            }
        }
    }
    let mut bananas = Vec::new();
    for k in 3..=5 {
        let mut lens = vec![1; k];
        loop {
            if lens.iter().filter(|&&l| l == 1).count() <= 1 {
                let g = gen_weak_banana(&lens)?;
                visit(format!("weak banana {lens:?}"), &g, true)?;
                if k == 3 && lens.iter().all(|&l| l <= 3) {
                    bananas.push(lens.clone());
                }
            }
            // next non-decreasing sequence over 1..=7
            let Some(i) = (0..k).rev().find(|&i| lens[i] < 7) else { break };
            let v = lens[i] + 1;
            for x in &mut lens[i..] {
                *x = v;
            }
        }
    }
    for x in &bananas {
        for y in &bananas {
            for z in &bananas {
                let g = gen_bracelet(x, y, z)?;
                visit(format!("bracelet {x:?} {y:?} {z:?}"), &g, true)?;
            }
        }
    }
    let hs = [
        ("K2", complete(2), vec![(0, 1)]),
        ("P4", path(4), vec![(0, 1), (0, 3), (1, 2)]),
        ("C4", cycle(4), vec![(0, 1)]),
        ("C6", cycle(6), vec![(0, 1), (0, 3)]),
        ("K23", complete_bipartite(2, 3), vec![(0, 2), (2, 0)]),
        ("K33", complete_bipartite(3, 3), vec![(0, 3)]),
        ("P3", path(3), vec![(0, 1), (1, 0)]),
    ];
    let mut unequal = Tally::default();
    for (label, w) in &wheels {
        for e in w.edges() {
            for (hname, h, attaches) in &hs {
                for &att in attaches {
                    let g = gen_bipartite_extension(w, (e.0, e.1), h, att)?;
                    let name = format!("{label} : {hname} on {e} at {att:?}");
                    if 2 * matching_number(&g) == g.n() {
                        let parts = deming::generators::bipartition(h).unwrap();
                        let ones = parts.iter().filter(|&&p| p == 1).count();
                        unequal.check(2 * ones == h.n(), || format!("{name} is matchable with unequal parts"));
                    }
                    visit(name, &g, false)?;
                }
            }
        }
    }
    eg.checked += unequal.checked;
    eg.failed += unequal.failed;
    eg.examples.extend(unequal.examples);
    Ok((eg, pairs, matchable))
}

fn criterion8(corpus: &Corpus10, random: &RandomPass) -> Result<(bool, String)> {
    let (fam, pairs, fam_matchable) = family_sweeps()?;
    let e = &corpus.egervary;
    let ke = [&e.ke_implies, &random.egervary.ke_implies];
    let ok = e.agree.ok() && fam.ok() && pairs.ok() && ke.iter().all(|t| t.ok());
    Ok((
        ok,
        format!(
            "three tests on {} matchable graphs n≤10 ({} Egerváry): {}; families: {} matchable, {}; no disjoint odd cycles: {}; KE ⇒ Egerváry: {} + {}",
            corpus.matchable,
            e.egervary,
            e.agree.summary(),
            fam_matchable,
            fam.summary(),
            pairs.summary(),
            ke[0].summary(),
            ke[1].summary()
        ),
    ))
}

fn criterion9(corpus: &Corpus10) -> Result<(bool, String)> {
    let d = &corpus.andrasfai;
    // δ = n − 2α is even iff n is, so order 11 contributes no graph with δ ∈ {0, 2}
    let ok = d.delta2.ok() && d.delta0.ok() && d.delta2.checked > 0 && d.delta0.checked == 1;
    Ok((
        ok,
        format!(
            "α-critical connected graphs n≤10 with δ=2: {}, δ=0: {}; n=11 has odd δ",
            d.delta2.summary(),
            d.delta0.summary()
        ),
    ))
}

/// Brute-force critical sets: the maximum critical independent sets by exhaustion.
fn maximum_critical_sets(g: &Graph) -> Vec<u64> {
    let n = g.n();
    let mut best = (i64::MIN, 0u32);
    let mut sets = Vec::new();
    for s in 0u64..1 << n {
        let mut nb = 0u64;
        let mut indep = true;
        for v in 0..n {
            if s >> v & 1 == 1 {
                indep &= g.mask(v) & s == 0;
                nb |= g.mask(v);
            }
        }
        if !indep {
            continue;
        }
        let key = (s.count_ones() as i64 - nb.count_ones() as i64, s.count_ones());
        if key > best {
            best = key;
            sets.clear();
        }
        if key == best {
            sets.push(s);
        }
    }
    sets
}

fn two_bicritical_brute(g: &Graph) -> bool {
    (1u64..1 << g.n()).all(|s| {
        let mut nb = 0u64;
        for v in 0..g.n() {
            if s >> v & 1 == 1 {
                if g.mask(v) & s != 0 {
                    return true;
                }
                nb |= g.mask(v);
            }
        }
        nb.count_ones() > s.count_ones()
    })
}

fn add_twin(g: &Graph, v: usize) -> Graph {
    let t = g.n();
    let mut edges = g.edge_vec();
    edges.push(Edge(v, t));
    edges.extend(g.neighbors(v).iter().map(|&u| Edge(u, t)));
    Graph::from_edges(t + 1, edges.into_iter().map(|e| (e.0, e.1))).unwrap()
}

#[derive(Default)]
struct CriticalSplit {
    idt: Tally,
    twins: Tally,
    extension: Tally,
}

impl CriticalSplit {
    fn run(&mut self, g: &Graph) -> Result<()> {
        let id = to_graph6(g);
        let ag = a(g);
        let crit = is_alpha_critical(g, &B)?;
        let cd = maximum_critical_independent_set(g, &B)?;
        let (x, xc) = (sub(g, &cd.x), sub(g, &cd.xc));
        self.idt.check(a(&x) + a(&xc) == ag, || format!("{id}: α not additive over X"));
        self.idt.check(a(&x) + matching_number(&x) == x.n(), || format!("{id}: G[X] not KE"));
        self.idt.check(two_bicritical_brute(&xc), || format!("{id}: G[Xc] not 2-bicritical"));
        let xmask: u64 = cd.x.iter().map(|&v| 1u64 << v).sum();
        for s in maximum_critical_sets(g) {
            let mut closed = s;
            for v in 0..g.n() {
                if s >> v & 1 == 1 {
                    closed |= g.mask(v);
                }
            }
            self.idt.check(closed == xmask, || format!("{id}: critical set {s:#b} gives a different X"));
        }

        for v in 0..g.n() {
            let h = add_twin(g, v);
            self.twins.check(a(&h) == ag, || format!("{id}: twin at {v} changes α"));
            let hc = is_alpha_critical(&h, &B)?;
            self.twins.check(hc == crit, || format!("{id}: twin at {v} changes α-criticality"));
        }
        for (u, w) in find_twins(g) {
            for v in [u, w] {
                let h = remove_twin(g, v)?.graph;
                self.twins.check(a(&h) == ag, || format!("{id}: removing twin {v} changes α"));
                let hc = is_alpha_critical(&h, &B)?;
                self.twins.check(hc == crit, || format!("{id}: removing twin {v} changes α-criticality"));
            }
        }

        let ext = deming_extension(g);
        let e = &ext.graph;
        let ae = a(e);
        self.extension.check(ae == ag, || format!("{id}: extension changes α"));
        let ke = ag + matching_number(g) == g.n();
        self.extension.check((ae + matching_number(e) == e.n()) == ke, || format!("{id}: extension changes KE"));
        let ec = is_alpha_critical(e, &B)?;
        self.extension.check(ec == crit, || format!("{id}: extension changes α-criticality"));
        let dec = deming_decomposition(e, &ext.matching)?;
        for p in dec.parts() {
            let inside: Vec<usize> = p.vertices.iter().copied().filter(|&v| v < g.n()).collect();
            self.extension.check(a(&sub(e, &p.vertices)) == a(&sub(g, &inside)), || {
                format!("{id}: Deming part {:?} of the extension loses α in G", p.vertices)
            });
        }
        Ok(())
    }
}

fn criterion10() -> Result<(bool, String)> {
    let mut l = CriticalSplit::default();
    let mut err = None;
    let mut count = 0u64;
    graph_enum::for_each_graph_in_range(1, 9, |rows| {
        if err.is_none() {
            count += 1;
            if let Err(e) = l.run(&from_rows(rows)) {
                err = Some(e);
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=16);
        let p = [0.1, 0.2, 0.3, 0.5, 0.7][rng.gen_range(0..5)];
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        l.run(&Graph::from_edges(n, edges)?)?;
        count += 1;
    }
    let ok = l.idt.ok() && l.twins.ok() && l.extension.ok();
    Ok((
        ok,
        format!(
            "{count} graphs; decomposition: {}; twins: {}; extension: {}",
            l.idt.summary(),
            l.twins.summary(),
            l.extension.summary()
        ),
    ))
}

fn criterion11() -> Result<(bool, String)> {
    let mut graphs = Vec::new();
    graph_enum::for_each_graph_in_range(2, 8, |rows| {
        if rows.len() % 2 == 0 && graph_enum::is_connected(rows) {
            let g = from_rows(rows);
            if 2 * matching_number(&g) == g.n() {
                graphs.push(g);
            }
        }
    });
    let corpus = Corpus::new("connected matchable graphs, 2 <= n <= 8", graphs);
    let dir = tempfile::tempdir().map_err(deming::Error::from)?;
    let start = Instant::now();
    let full = run_conjecture_suite(&corpus, &B, &dir.path().join("full.json"), None)?;
    let secs = start.elapsed().as_secs_f64();
    let again = run_conjecture_suite(&corpus, &B, &dir.path().join("again.json"), None)?;
    let resumed_path = dir.path().join("resumed.json");
    let half = run_conjecture_suite(&corpus, &B, &resumed_path, Some(corpus.graphs.len() as u64 / 2))?;
    let resumed = run_conjecture_suite(&corpus, &B, &resumed_path, None)?;
    let reloaded = ConjectureRunState::load(&resumed_path)?;

    let same = |s: &ConjectureRunState| s.tallies == full.tallies && s.candidates == full.candidates;
    let reproducible = same(&again) && same(&resumed) && same(&reloaded) && !half.is_complete();
    let unexplained = full.unexplained().count();
    let mut text = format!("{} graphs in {secs:.1}s;", full.corpus.count);
    for c in Conjecture::ALL {
        let t = full.tallies[&c];
        text.push_str(&format!(
            " {c:?}: {} confirmed, {} refuted, {} undecided, {} n/a;",
            t.confirmed, t.refuted, t.undecided, t.not_applicable
        ));
    }
    for c in full.candidates.iter().take(3) {
        text.push_str(&format!(" audited counterexample {:?} {} ({});", c.conjecture, c.graph6, c.detail));
    }
    if full.candidates.len() > 3 {
        text.push_str(&format!(" {} more audited counterexamples;", full.candidates.len() - 3));
    }
    text.push_str(&format!(" unexplained {unexplained}; rerun/resume identical: {reproducible}"));
    Ok((full.is_complete() && unexplained == 0 && reproducible, text))
}

fn report(i: usize, r: Result<(bool, String)>, start: Instant, all: &mut bool) {
    let (ok, text) = r.unwrap_or_else(|e| (false, format!("error: {e}")));
    *all &= ok;
    println!(
        "criterion {i:>2}: {} [{:.0}s] {text}",
        if ok { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
}

fn main() -> ExitCode {
    let mut all = true;
    let t = Instant::now();
    report(1, criterion1(), t, &mut all);

    let t = Instant::now();
    let corpus = Corpus10::run(10);
    let random = RandomPass::run();
    let (corpus, random) = match (corpus, random) {
        (Ok(c), Ok(r)) => (c, r),
        (c, r) => {
            let e = c.err().or(r.err()).unwrap();
            for i in [2, 3, 4, 8, 9] {
                report(i, Err(e.clone()), t, &mut all);
            }
            return ExitCode::FAILURE;
        }
    };
    println!(
        "  n<=10 pass: {} graphs, {} matchable, {} connected matchable, {:.0}s",
        corpus.graphs, corpus.matchable, corpus.connected_matchable, corpus.seconds
    );
    report(
        2,
        Ok((
            corpus.decomposed.ke.ok() && random.decomposed.ke.ok(),
            format!(
                "corpus: {}; random n<=20: {}",
                corpus.decomposed.ke.summary(),
                random.decomposed.ke.summary()
            ),
        )),
        t,
        &mut all,
    );
    report(
        3,
        Ok((
            corpus.decomposed.dec.ok() && random.decomposed.dec.ok(),
            format!(
                "corpus: {}; random n<=20: {}",
                corpus.decomposed.dec.summary(),
                random.decomposed.dec.summary()
            ),
        )),
        t,
        &mut all,
    );
    let t = Instant::now();
    report(4, criterion4(&corpus, &random), t, &mut all);
    let t = Instant::now();
    report(5, criterion5(), t, &mut all);
    let t = Instant::now();
    report(6, criterion6(), t, &mut all);
    let t = Instant::now();
    report(7, criterion7(), t, &mut all);
    let t = Instant::now();
    report(8, criterion8(&corpus, &random), t, &mut all);
    let t = Instant::now();
    report(9, criterion9(&corpus), t, &mut all);
    let t = Instant::now();
    report(10, criterion10(), t, &mut all);
    let t = Instant::now();
    report(11, criterion11(), t, &mut all);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
