//! The command-line front end: an interactive read-eval-print loop and a
//! batch mode that runs a list of goals and reports one line per goal.

use std::cell::Cell;
use std::io::{BufRead, Write};
use std::rc::Rc;

use level01::{format_bindings, parse_goal, prepare, Ctx, Defs, Session};

#[derive(Clone, Debug, Default)]
pub struct Config {
    /// definition files, loaded in order
    pub files: Vec<String>,
    /// goals to run in batch mode; a `!` prefix marks an expected failure
    pub queries: Vec<String>,
    /// print every answer instead of prompting after each one
    pub all: bool,
    /// abort any single goal after this many proof steps
    pub budget: Option<u64>,
    /// discard output from the `print` builtin
    pub quiet: bool,
    /// preload the bundled pi-calculus / modal-logic corpus
    pub corpus: bool,
}

/// Build the definition store from the configuration.
pub fn load_defs(cfg: &Config) -> Result<Defs, String> {
    let mut defs = if cfg.corpus {
        level01::corpus::load_corpus()
    } else {
        Defs::new()
    };
    for file in &cfg.files {
        let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {}", file, e))?;
        defs.extend_str(&text)
            .map_err(|e| format!("{}: {}", file, e))?;
    }
    Ok(defs)
}

fn fresh_ctx(cfg: &Config, session: &Rc<Session>, defs: &Rc<Defs>) -> Ctx {
    session.reset();
    let mut ctx = Ctx::new(session.clone(), defs.clone());
    if let Some(b) = cfg.budget {
        ctx.budget = Some(Rc::new(Cell::new(b)));
    }
    ctx
}

/// Move any pending `print` output from the sink to `out`.
fn flush_sink(ctx: &Ctx, quiet: bool, out: &mut dyn Write) -> std::io::Result<()> {
    let text = std::mem::take(&mut *ctx.sink.borrow_mut());
    if !quiet {
        out.write_all(text.as_bytes())?;
    }
    Ok(())
}

fn read_line(input: &mut dyn BufRead) -> std::io::Result<Option<String>> {
    let mut line = String::new();
    if input.read_line(&mut line)? == 0 {
        Ok(None)
    } else {
        Ok(Some(line.trim_end_matches(['\n', '\r']).to_string()))
    }
}

/// The interactive loop. With `echo` set, every consumed input line is
/// echoed to `out`, so a piped session reads like a real one.
pub fn repl(
    cfg: &Config,
    defs: Rc<Defs>,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    echo: bool,
) -> std::io::Result<()> {
    let session = Session::new();
    loop {
        write!(out, "?- ")?;
        out.flush()?;
        let Some(line) = read_line(input)? else {
            writeln!(out)?;
            return Ok(());
        };
        if echo {
            writeln!(out, "{}", line)?;
        }
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        if matches!(text, "quit" | "quit." | "exit" | "exit.") {
            return Ok(());
        }
        let goal = match parse_goal(text) {
            Ok(g) => g,
            Err(e) => {
                writeln!(out, "Error: {}", e)?;
                continue;
            }
        };
        let ctx = fresh_ctx(cfg, &session, &defs);
        let query = match prepare(&goal, &ctx) {
            Ok(q) => q,
            Err(e) => {
                writeln!(out, "Error: {}", e)?;
                continue;
            }
        };
        let mut stream = query.answers.clone();
        let mut first = true;
        loop {
            let step = stream.next();
            flush_sink(&ctx, cfg.quiet, out)?;
            match step {
                Err(e) => {
                    writeln!(out, "Error: {}", e)?;
                    break;
                }
                Ok(None) => {
                    writeln!(out, "No.")?;
                    break;
                }
                Ok(Some((theta, rest))) => {
                    stream = rest;
                    if first {
                        writeln!(out, "Yes")?;
                        first = false;
                    }
                    for binding in format_bindings(&query.free, &theta) {
                        writeln!(out, "{}", binding)?;
                    }
                    if cfg.all {
                        continue;
                    }
                    let mut again = None;
                    while again.is_none() {
                        write!(out, "Find another? [y/n] ")?;
                        out.flush()?;
                        let Some(answer) = read_line(input)? else {
                            writeln!(out)?;
                            return Ok(());
                        };
                        if echo {
                            writeln!(out, "{}", answer)?;
                        }
                        match answer.trim() {
                            "y" => again = Some(true),
                            "n" => again = Some(false),
                            _ => {}
                        }
                    }
                    if again == Some(false) {
                        break;
                    }
                }
            }
        }
    }
}

/// Run the configured goals, one result line each, tab-separated:
/// the goal, then `Yes`/`No`/`Error: ...`, then any binding groups.
/// Returns the process exit code: 0 only if every goal met its
/// expectation and no engine error occurred.
pub fn run_batch(cfg: &Config, defs: Rc<Defs>, out: &mut dyn Write) -> std::io::Result<i32> {
    let session = Session::new();
    let mut code = 0;
    for raw in &cfg.queries {
        let (expect_fail, text) = match raw.trim().strip_prefix('!') {
            Some(rest) => (true, rest.trim()),
            None => (false, raw.trim()),
        };
        let mut met = false;
        let result = match parse_goal(text) {
            Err(e) => format!("Error: {}", e),
            Ok(goal) => {
                let ctx = fresh_ctx(cfg, &session, &defs);
                let outcome = prepare(&goal, &ctx).and_then(|q| {
                    let answers = if cfg.all {
                        q.answers.collect()?
                    } else {
                        q.answers.next()?.into_iter().map(|(th, _)| th).collect()
                    };
                    Ok((q.free, answers))
                });
                flush_sink(&ctx, cfg.quiet, out)?;
                match outcome {
                    Err(e) => format!("Error: {}", e),
                    Ok((_, answers)) if answers.is_empty() => {
                        met = expect_fail;
                        "No".to_string()
                    }
                    Ok((free, answers)) => {
                        met = !expect_fail;
                        let mut parts = vec!["Yes".to_string()];
                        for theta in &answers {
                            let group = format_bindings(&free, theta).join(", ");
                            if !group.is_empty() {
                                parts.push(group);
                            }
                        }
                        parts.join("\t")
                    }
                }
            }
        };
        if !met {
            code = 1;
        }
        writeln!(out, "{}\t{}", text, result)?;
    }
    Ok(code)
}
