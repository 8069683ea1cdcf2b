use std::io::{BufReader, IsTerminal, Write};
use std::rc::Rc;

use clap::Parser;
use level01_cli::{load_defs, repl, run_batch, Config};

/// A two-level logic programming engine over lambda-tree syntax.
#[derive(Parser)]
#[command(name = "level01", version)]
struct Args {
    /// Definition files, loaded in order
    files: Vec<String>,

    /// Run this goal instead of starting the interactive loop (repeatable);
    /// prefix the goal with '!' to expect failure
    #[arg(short = 'e', long = "exec", value_name = "GOAL")]
    exec: Vec<String>,

    /// Print every answer instead of prompting after each one
    #[arg(long)]
    all: bool,

    /// Abort any single goal after this many proof steps
    #[arg(long, value_name = "STEPS")]
    budget: Option<u64>,

    /// Discard output from the 'print' builtin
    #[arg(long)]
    quiet: bool,

    /// Preload the bundled pi-calculus / modal-logic example programs
    #[arg(long)]
    corpus: bool,
}

fn run() -> i32 {
    let args = Args::parse();
    let cfg = Config {
        files: args.files,
        queries: args.exec,
        all: args.all,
        budget: args.budget,
        quiet: args.quiet,
        corpus: args.corpus,
    };
    let defs = match load_defs(&cfg) {
        Ok(d) => Rc::new(d),
        Err(e) => {
            eprintln!("Error: {}", e);
            return 2;
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = if cfg.queries.is_empty() {
        let stdin = std::io::stdin();
        let echo = !stdin.is_terminal();
        let mut input = BufReader::new(stdin.lock());
        match repl(&cfg, defs, &mut input, &mut out, echo) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("Error: {}", e);
                2
            }
        }
    } else {
        match run_batch(&cfg, defs, &mut out) {
            Ok(code) => code,
            Err(e) => {
                eprintln!("Error: {}", e);
                2
            }
        }
    };
    let _ = out.flush();
    code
}

fn main() {
    // deep backtracking searches recurse heavily; give them room
    let child = std::thread::Builder::new()
        .stack_size(256 * 1024 * 1024)
        .spawn(run)
        .expect("spawn worker thread");
    std::process::exit(child.join().expect("worker thread panicked"));
}
