use std::io::{BufWriter, Write};

use clap::Parser;

/// Prints one graph6 line per isomorphism class of graphs on N vertices.
#[derive(Parser)]
#[command(name = "graph-enum", version)]
struct Args {
    /// Number of vertices (at most 16).
    n: usize,
    /// Connected graphs only.
    #[arg(short, long)]
    connected: bool,
    /// Print only the count.
    #[arg(short = 'u', long)]
    count: bool,
}

fn main() {
    let args = Args::parse();
    if args.n > 16 {
        eprintln!("graph-enum: n must be at most 16");
        std::process::exit(2);
    }
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut count = 0u64;
    graph_enum::for_each_graph(args.n, |rows| {
        if args.connected && !graph_enum::is_connected(rows) {
            return;
        }
        count += 1;
        if !args.count {
            writeln!(out, "{}", graph_enum::to_graph6(rows)).expect("write to stdout");
        }
    });
    if args.count {
        writeln!(out, "{count}").expect("write to stdout");
    }
}
