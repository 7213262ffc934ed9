use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use deming::critical::{deming_extension, is_2_bicritical, maximum_critical_independent_set};
use deming::deming::{decompose_any, validate_decomposition};
use deming::egervary::{is_egervary, EgervaryStatus};
use deming::generators::{
    gen_blossom_pair, gen_bracelet, gen_even_k4_subdivision, gen_named, gen_random_matchable, gen_weak_banana,
    gen_weak_wheel,
};
use deming::harness::{analyze, run_conjecture_suite, AnalyzeOptions, Corpus};
use deming::independence::independence_number;
use deming::io::{read_graphs, to_edge_list, to_graph6};
use deming::ke::{ke_certificate, KeCertificate};
use deming::matching::maximum_matching;
use deming::{Budget, Error, Graph};

#[derive(Parser)]
#[command(name = "deming", version, about = "König-Egerváry certificates, Deming decompositions and Egerváry tests")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct BudgetArgs {
    /// Search-node limit for exact α and other exhaustive searches.
    #[arg(long, global = true)]
    oracle_nodes: Option<u64>,
    /// Limit on odd-cycle pairs examined by the Egerváry test.
    #[arg(long, global = true)]
    cycle_pairs: Option<u64>,
    /// Per-call wall-clock limit in seconds (0 disables).
    #[arg(long, global = true)]
    wall_clock: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        let mut b = Budget::from_env();
        if let Some(x) = self.oracle_nodes {
            b.oracle_nodes = x;
        }
        if let Some(x) = self.cycle_pairs {
            b.cycle_pairs = x;
        }
        if let Some(x) = self.wall_clock {
            b.wall_clock_secs = x;
        }
        b
    }
}

#[derive(Args)]
struct Input {
    /// Input file (graph6 lines or an edge list); stdin when absent.
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

impl Input {
    fn graphs(&self) -> Result<Vec<Graph>, Error> {
        let text = match &self.input {
            Some(p) => std::fs::read_to_string(p)?,
            None => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s)?;
                s
            }
        };
        read_graphs(&text, None)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Full analysis record per graph.
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Include per-stage timings.
        #[arg(long)]
        timings: bool,
    },
    /// Deming decomposition (through the Deming extension when unmatchable).
    Decompose {
        #[command(flatten)]
        input: Input,
    },
    /// König-Egerváry certificate.
    Ke {
        #[command(flatten)]
        input: Input,
    },
    /// Egerváry verdict of a matchable graph.
    Egervary {
        #[command(flatten)]
        input: Input,
    },
    /// Independence number with a maximum independent set.
    Alpha {
        #[command(flatten)]
        input: Input,
    },
    /// Maximum critical independent set and 2-bicriticality.
    Critical {
        #[command(flatten)]
        input: Input,
    },
    /// Deming extension.
    Extend {
        #[command(flatten)]
        input: Input,
    },
    /// Print a generated graph.
    Gen {
        #[command(subcommand)]
        family: Family,
        /// Edge list instead of graph6.
        #[arg(long, global = true)]
        edge_list: bool,
    },
    /// Run or resume the conjecture battery.
    Conjectures {
        /// graph6 corpus file.
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        corpus: Option<PathBuf>,
        /// Random corpus MIN_N:MAX_N:EDGE_PROB:SEED:COUNT.
        #[arg(long)]
        random: Option<String>,
        /// State file, resumed when it exists.
        #[arg(long)]
        state: PathBuf,
        /// Process at most this many further graphs.
        #[arg(long)]
        limit: Option<u64>,
    },
}

#[derive(Subcommand)]
enum Family {
    WeakWheel { cycle_len: usize, spokes: Vec<usize> },
    WeakBanana { lens: Vec<usize> },
    /// Three comma-separated banana specs, e.g. `1,2,3 2,2,2 1,2,2`.
    Bracelet { uv: String, vw: String, wu: String },
    BlossomPair { c1: usize, c2: usize, p: usize },
    K4Subdivision { lens: Vec<usize> },
    Named { name: String },
    Random { n: usize, edge_prob: f64, seed: u64 },
}

enum Outcome {
    Done,
    Undecided,
}

fn emit(pretty: bool, value: &Value, text: impl FnOnce() -> String) {
    if pretty {
        println!("{}", text());
    } else {
        println!("{value}");
    }
}

fn list(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad length `{x}`"))))
        .collect()
}

fn family_graph(f: &Family) -> Result<Graph, Error> {
    match f {
        Family::WeakWheel { cycle_len, spokes } => gen_weak_wheel(*cycle_len, spokes),
        Family::WeakBanana { lens } => gen_weak_banana(lens),
        Family::Bracelet { uv, vw, wu } => gen_bracelet(&list(uv)?, &list(vw)?, &list(wu)?),
        Family::BlossomPair { c1, c2, p } => gen_blossom_pair(*c1, *c2, *p),
        Family::K4Subdivision { lens } => {
            let lens: [usize; 6] =
                lens.as_slice().try_into().map_err(|_| Error::InvalidArgument("need six path lengths".into()))?;
            gen_even_k4_subdivision(lens)
        }
        Family::Named { name } => gen_named(name),
        Family::Random { n, edge_prob, seed } => gen_random_matchable(*n, *edge_prob, *seed),
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let budget = cli.budget.budget();
    let pretty = cli.pretty;
    let mut undecided = false;
    match &cli.cmd {
        Cmd::Analyze { input, timings } => {
            let opts = AnalyzeOptions { budget, timings: *timings };
            for g in input.graphs()? {
                let r = analyze(&g, &opts)?;
                undecided |= !r.undecided.is_empty();
                let v = serde_json::to_value(&r).expect("record serializes");
                emit(pretty, &v, || {
                    let inv = r.invariants.as_ref();
                    let show = |x: Option<usize>| x.map_or("?".to_string(), |a| a.to_string());
                    let eg = r.egervary.as_ref().map_or("n/a".to_string(), |e| format!("{:?}", e.status));
                    format!(
                        "{}: n={} m={} alpha={} nu={} ke={} egervary={} r={} l={}{}",
                        r.graph6,
                        r.n,
                        r.m,
                        show(inv.map(|i| i.alpha)),
                        show(inv.map(|i| i.nu)),
                        r.ke.verdict,
                        eg,
                        r.decomposition.r,
                        r.decomposition.l,
                        if r.undecided.is_empty() { String::new() } else { format!(" undecided={:?}", r.undecided) }
                    )
                });
            }
        }
        Cmd::Decompose { input } => {
            for g in input.graphs()? {
                let (h, dec) = decompose_any(&g)?;
                let valid = validate_decomposition(&h, &dec)?;
                let v = json!({
                    "graph6": to_graph6(&g),
                    "extended": h.n() != g.n(),
                    "n": h.n(),
                    "decomposition": dec,
                    "valid": valid.is_ok(),
                });
                emit(pretty, &v, || {
                    let mut s = format!("{}: r={} l={} remainder={:?}", to_graph6(&g), dec.r(), dec.l(), dec.remainder);
                    for p in &dec.bp {
                        s.push_str(&format!("\n  BP {:?}", p.vertices));
                    }
                    for p in &dec.k4 {
                        s.push_str(&format!("\n  K4 {:?}", p.vertices));
                    }
                    s
                });
            }
        }
        Cmd::Ke { input } => {
            for g in input.graphs()? {
                let m = maximum_matching(&g);
                let (cert, extended) = if m.is_perfect() {
                    (ke_certificate(&g, &m)?, false)
                } else {
                    let ext = deming_extension(&g);
                    (ke_certificate(&ext.graph, &ext.matching)?, true)
                };
                let mut v = serde_json::to_value(&cert).expect("certificate serializes");
                v["graph6"] = json!(to_graph6(&g));
                v["extended"] = json!(extended);
                emit(pretty, &v, || match &cert {
                    KeCertificate::Ke { independent_set } => format!("KE, independent set {independent_set:?}"),
                    KeCertificate::NotKe { obstruction, .. } => {
                        format!("NOT_KE, even {} subdivision on {:?}", obstruction.kind, obstruction.vertices())
                    }
                });
            }
        }
        Cmd::Egervary { input } => {
            for g in input.graphs()? {
                let verdict = is_egervary(&g, &budget)?;
                undecided |= verdict.status == EgervaryStatus::Undecided;
                let mut v = serde_json::to_value(&verdict).expect("verdict serializes");
                v["graph6"] = json!(to_graph6(&g));
                emit(pretty, &v, || match &verdict.witness {
                    Some(w) => format!("{:?}, odd cycles {:?}", verdict.status, w.cycles),
                    None => format!("{:?}", verdict.status),
                });
            }
        }
        Cmd::Alpha { input } => {
            for g in input.graphs()? {
                match independence_number(&g, &budget) {
                    Ok(r) => {
                        let v = json!({"graph6": to_graph6(&g), "alpha": r.alpha, "witness": r.witness, "nodes": r.nodes});
                        emit(pretty, &v, || format!("alpha={} {:?}", r.alpha, r.witness));
                    }
                    Err(Error::BudgetExceeded) => {
                        undecided = true;
                        let v = json!({"graph6": to_graph6(&g), "alpha": null, "undecided": true});
                        emit(pretty, &v, || "alpha undecided".into());
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        Cmd::Critical { input } => {
            for g in input.graphs()? {
                let cd = maximum_critical_independent_set(&g, &budget)?;
                let bicritical = is_2_bicritical(&g, &budget)?;
                let mut v = serde_json::to_value(&cd).expect("decomposition serializes");
                v["graph6"] = json!(to_graph6(&g));
                v["two_bicritical"] = json!(bicritical);
                emit(pretty, &v, || {
                    format!(
                        "critical set {:?}, difference {}, X={:?}, X^c={:?}, 2-bicritical={}",
                        cd.critical_set, cd.critical_difference, cd.x, cd.xc, bicritical
                    )
                });
            }
        }
        Cmd::Extend { input } => {
            for g in input.graphs()? {
                let ext = deming_extension(&g);
                let v = json!({
                    "graph6": to_graph6(&g),
                    "extension": to_graph6(&ext.graph),
                    "twins": ext.twins,
                    "matching": ext.matching,
                });
                emit(pretty, &v, || format!("{} twins {:?}", to_graph6(&ext.graph), ext.twins));
            }
        }
        Cmd::Gen { family, edge_list } => {
            let g = family_graph(family)?;
            if *edge_list {
                print!("{}", to_edge_list(&g));
            } else {
                println!("{}", to_graph6(&g));
            }
        }
        Cmd::Conjectures { corpus, random, state, limit } => {
            let corpus = match (corpus, random) {
                (Some(p), _) => Corpus::from_graph6(p.display().to_string(), &std::fs::read_to_string(p)?)?,
                (None, Some(spec)) => {
                    let parts: Vec<&str> = spec.split(':').collect();
                    let bad = || Error::InvalidArgument(format!("bad random corpus spec `{spec}`"));
                    if parts.len() != 5 {
                        return Err(bad());
                    }
                    Corpus::random(
                        parts[0].parse().map_err(|_| bad())?,
                        parts[1].parse().map_err(|_| bad())?,
                        parts[2].parse().map_err(|_| bad())?,
                        parts[3].parse().map_err(|_| bad())?,
                        parts[4].parse().map_err(|_| bad())?,
                    )?
                }
                (None, None) => unreachable!("clap requires a corpus"),
            };
            let s = run_conjecture_suite(&corpus, &budget, state, *limit)?;
            undecided |= s.tallies.values().any(|t| t.undecided > 0);
            let v = json!({
                "state": state.display().to_string(),
                "cursor": s.cursor,
                "complete": s.is_complete(),
                "tallies": s.tallies,
                "candidates": s.candidates.len(),
                "unexplained": s.unexplained().count(),
            });
            emit(pretty, &v, || {
                let mut out = format!("{}/{} graphs processed", s.cursor, s.corpus.count);
                for (c, t) in &s.tallies {
                    out.push_str(&format!(
                        "\n  {c:?}: confirmed {} refuted {} undecided {} n/a {}",
                        t.confirmed, t.refuted, t.undecided, t.not_applicable
                    ));
                }
                for c in &s.candidates {
                    out.push_str(&format!(
                        "\n  candidate {:?} {} ({}), audit {}",
                        c.conjecture,
                        c.graph6,
                        c.detail,
                        if c.audit.confirmed { "confirmed" } else { "FAILED" }
                    ));
                }
                out
            });
        }
    }
    Ok(if undecided { Outcome::Undecided } else { Outcome::Done })
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Undecided) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
