//! End-to-end acceptance checks. Each numbered criterion prints one
//! PASS/FAIL line; the test fails if any criterion does.

use std::cell::Cell;
use std::io::Cursor;
use std::rc::Rc;

use level01::corpus::load_corpus;
use level01::testgen::unify_audit;
use level01::{parse_goal, prepare, solve, Ctx, Defs, Level, Session, Stream, Term, VarKind};
use level01_cli::{repl, run_batch, Config};

/// Number of answers to `goal` over `defs`, or an engine error message.
fn count(defs: &Rc<Defs>, goal: &str) -> Result<usize, String> {
    let session = Session::new();
    let ctx = Ctx::new(session, defs.clone());
    let goal = parse_goal(goal).map_err(|e| e.to_string())?;
    let q = prepare(&goal, &ctx).map_err(|e| e.to_string())?;
    Ok(q.answers.collect().map_err(|e| e.to_string())?.len())
}

fn expect(defs: &Rc<Defs>, goal: &str, succeeds: bool) -> Result<(), String> {
    let n = count(defs, goal)?;
    if (n > 0) == succeeds {
        Ok(())
    } else {
        Err(format!(
            "goal {:?} {} but should {}",
            goal,
            if n > 0 { "succeeded" } else { "failed" },
            if succeeds { "succeed" } else { "fail" }
        ))
    }
}

// 1. The interactive transcript: six canonical session queries.
fn criterion_1() -> Result<(), String> {
    let script = "\
nabla x\\ x = (M x).
y
pi x\\ x = (M x).
y
pi M\\ nabla x\\ x = M => false.
y
pi f\\ nabla x\\ x = f x => print \"unification succeeded\".
n
nabla x\\ pi y\\ x = y => print \"unification succeeded\".
n
nabla x\\ x = (M x) => false.
";
    let expected = "\
?- nabla x\\ x = (M x).
Yes
M = x1\\x1
Find another? [y/n] y
No.
?- pi x\\ x = (M x).
Yes
M = x1\\x1
Find another? [y/n] y
No.
?- pi M\\ nabla x\\ x = M => false.
Yes
Find another? [y/n] y
No.
?- pi f\\ nabla x\\ x = f x => print \"unification succeeded\".
unification succeeded
Yes
Find another? [y/n] n
?- nabla x\\ pi y\\ x = y => print \"unification succeeded\".
unification succeeded
Yes
Find another? [y/n] n
?- nabla x\\ x = (M x) => false.
Error: non-pure term found in implicational goal.
?- \n";
    let defs = Rc::new(Defs::new());
    let mut input = Cursor::new(script.as_bytes().to_vec());
    let mut out = Vec::new();
    repl(&Config::default(), defs, &mut input, &mut out, true).map_err(|e| e.to_string())?;
    let out = String::from_utf8(out).unwrap();
    if out == expected {
        Ok(())
    } else {
        Err(format!("transcript mismatch:\n{}", out))
    }
}

// 2. Universal implications over a small database of facts.
fn criterion_2() -> Result<(), String> {
    let defs = Rc::new(Defs::load_str("p a. p b. q a. q b. q c.").unwrap());
    expect(&defs, "pi x\\ p x => q x", true)?;
    expect(&defs, "p c => false", true)?;
    expect(&defs, "pi x\\ q x => p x", false)
}

// 3. Eigenvariables play dual roles across an implication.
fn criterion_3() -> Result<(), String> {
    let defs = Rc::new(Defs::new());
    expect(&defs, "pi x\\ pi y\\ x = a => y = b", false)
}

// 4. The stuck process has no transition of either kind.
fn criterion_4(defs: &Rc<Defs>) -> Result<(), String> {
    expect(
        defs,
        "example 0 P, (pi A\\ pi Q\\ one P A Q => false), \
         (pi A\\ pi Q\\ onep P A Q => false)",
        true,
    )
}

// 5. The bisimulation verdicts on the narrated pairs.
fn criterion_5(defs: &Rc<Defs>) -> Result<(), String> {
    expect(defs, "example 2 P, example 6 Q, bisim P Q", true)?;
    expect(defs, "example 2 P, example 3 Q, bisim P Q", false)
}

// 6. Both bisimilar processes satisfy the bundled modal assertion.
fn criterion_6(defs: &Rc<Defs>) -> Result<(), String> {
    expect(
        defs,
        "assert A, example 2 P, example 6 Q, sat P A, sat Q A",
        true,
    )
}

// 7a. Every unifier produced during a corpus run re-verifies, as do the
// unifiers of 1,000 randomized pattern pairs.
fn criterion_7a(defs: &Rc<Defs>) -> Result<(), String> {
    let session = Session::new();
    session.verify_unifiers.set(true);
    let ctx = Ctx::new(session.clone(), defs.clone());
    let goal = parse_goal("example 2 P, example 6 Q, bisim P Q").unwrap();
    let q = prepare(&goal, &ctx).map_err(|e| e.to_string())?;
    if q.answers.collect().map_err(|e| e.to_string())?.is_empty() {
        return Err("verified corpus run lost its answer".into());
    }
    let checked = session.unifications_checked.get();
    if checked == 0 {
        return Err("corpus run verified no unifiers".into());
    }
    let audit = unify_audit(1000, 0xACCE55);
    if audit.non_patterns != 0 {
        return Err(format!(
            "{} generated pairs left the fragment",
            audit.non_patterns
        ));
    }
    if audit.successes == 0 || audit.verified as usize != audit.successes {
        return Err(format!("audit did not verify every success: {:?}", audit));
    }
    Ok(())
}

// 7b. Each answer to a level-0 goal re-proves the goal it instantiates.
fn criterion_7b(defs: &Rc<Defs>) -> Result<(), String> {
    for goal in [
        "example 1 P, one P A Q",
        "example 2 P, onep P A M",
        "example 5 P, one P A Q",
        "example 6 P, onep P A M",
    ] {
        let session = Session::new();
        let ctx = Ctx::new(session.clone(), defs.clone());
        let parsed = parse_goal(goal).unwrap();
        let vars: Vec<Rc<Term>> = parsed
            .free_names
            .iter()
            .map(|_| Rc::new(Term::Var(session.fresh_var(VarKind::Logic(Level::Zero)))))
            .collect();
        let f = parsed.formula.instantiate_params(&vars);
        let answers = solve(Level::Zero, &f, &ctx)
            .collect()
            .map_err(|e| e.to_string())?;
        if answers.is_empty() {
            return Err(format!("no answers to re-check for {:?}", goal));
        }
        for theta in answers {
            let instantiated = f.apply_subst(&theta);
            let recheck = solve(
                Level::Zero,
                &instantiated,
                &Ctx::new(session.clone(), defs.clone()),
            )
            .next()
            .map_err(|e| e.to_string())?;
            if recheck.is_none() {
                return Err(format!("answer to {:?} does not re-prove it", goal));
            }
        }
    }
    Ok(())
}

// 7c. A stream thunk fires exactly once however often it is traversed.
fn criterion_7c() -> Result<(), String> {
    let fired = Rc::new(Cell::new(0u32));
    let f2 = fired.clone();
    let s: Stream<u32, String> = Stream::defer(move || {
        f2.set(f2.get() + 1);
        Ok(Stream::cons(1, Stream::singleton(2)))
    });
    for _ in 0..3 {
        if s.collect() != Ok(vec![1, 2]) {
            return Err("stream changed across traversals".into());
        }
    }
    if fired.get() == 1 {
        Ok(())
    } else {
        Err(format!("thunk fired {} times", fired.get()))
    }
}

// 7d. Negation duality: a closed level-0 goal fails exactly when its
// negation by implication succeeds.
fn criterion_7d(defs: &Rc<Defs>) -> Result<(), String> {
    let mut goals = Vec::new();
    for i in 0..=6 {
        goals.push(format!(
            "sigma P\\ sigma A\\ sigma Q\\ example {} P, one P A Q",
            i
        ));
        goals.push(format!(
            "sigma P\\ sigma A\\ sigma M\\ example {} P, onep P A M",
            i
        ));
    }
    goals.extend([
        "sigma P\\ sigma Q\\ example 1 P, one P tau Q".to_string(),
        "sigma P\\ sigma Q\\ example 0 P, one P tau Q".to_string(),
        "sigma P\\ sigma M\\ example 2 P, onep P (dn x) M".to_string(),
        "sigma P\\ sigma M\\ example 4 P, onep P (dn x) M".to_string(),
        "a = a".to_string(),
        "a = b".to_string(),
    ]);
    assert_eq!(goals.len(), 20);
    for g in &goals {
        let holds = count(defs, g)? > 0;
        let negated = count(defs, &format!("({}) => false", g))? > 0;
        if holds == negated {
            return Err(format!(
                "duality broken for {:?}: goal {}, negation {}",
                g,
                if holds { "holds" } else { "fails" },
                if negated { "holds" } else { "fails" }
            ));
        }
    }
    Ok(())
}

// 7e. Bisimulation is reflexive on every example process and its verdict
// is symmetric across pairs.
fn criterion_7e(defs: &Rc<Defs>) -> Result<(), String> {
    for i in 0..=6 {
        expect(defs, &format!("example {} P, bisim P P", i), true)
            .map_err(|e| format!("reflexivity: {}", e))?;
    }
    for (i, j) in [(0, 4), (1, 5), (2, 3), (2, 6), (3, 6)] {
        let ij = count(
            defs,
            &format!("example {} P, example {} Q, bisim P Q", i, j),
        )? > 0;
        let ji = count(
            defs,
            &format!("example {} P, example {} Q, bisim P Q", j, i),
        )? > 0;
        if ij != ji {
            return Err(format!("bisim {}-{} is not symmetric", i, j));
        }
    }
    Ok(())
}

// 8. Two identical batch runs are byte-identical and meet expectations.
fn criterion_8() -> Result<(), String> {
    let cfg = Config {
        corpus: true,
        all: true,
        queries: vec![
            "example 0 P, (pi A\\ pi Q\\ one P A Q => false), \
             (pi A\\ pi Q\\ onep P A Q => false)"
                .into(),
            "example 4 P, one P A Q".into(),
            "example 2 P, example 6 Q, bisim P Q".into(),
            "!example 2 P, example 3 Q, bisim P Q".into(),
            "assert A, example 2 P, example 6 Q, sat P A, sat Q A".into(),
        ],
        ..Config::default()
    };
    let mut runs = Vec::new();
    for _ in 0..2 {
        let defs = Rc::new(load_corpus());
        let mut out = Vec::new();
        let code = run_batch(&cfg, defs, &mut out).map_err(|e| e.to_string())?;
        if code != 0 {
            return Err(format!(
                "batch run exited {}:\n{}",
                code,
                String::from_utf8_lossy(&out)
            ));
        }
        runs.push(out);
    }
    if runs[0] == runs[1] {
        Ok(())
    } else {
        Err("batch output differs between runs".into())
    }
}

#[test]
fn acceptance() {
    let defs = Rc::new(load_corpus());
    let checks: Vec<(&str, Box<dyn Fn() -> Result<(), String>>)> = vec![
        ("1 interactive transcript", Box::new(criterion_1)),
        ("2 universal implications", Box::new(criterion_2)),
        ("3 dual eigenvariable roles", Box::new(criterion_3)),
        ("4 stuck process check", {
            let d = defs.clone();
            Box::new(move || criterion_4(&d))
        }),
        ("5 bisimulation verdicts", {
            let d = defs.clone();
            Box::new(move || criterion_5(&d))
        }),
        ("6 modal assertion", {
            let d = defs.clone();
            Box::new(move || criterion_6(&d))
        }),
        ("7a unifier re-verification", {
            let d = defs.clone();
            Box::new(move || criterion_7a(&d))
        }),
        ("7b answer re-check", {
            let d = defs.clone();
            Box::new(move || criterion_7b(&d))
        }),
        ("7c stream memoization", Box::new(criterion_7c)),
        ("7d negation duality", {
            let d = defs.clone();
            Box::new(move || criterion_7d(&d))
        }),
        ("7e bisim reflexivity and symmetry", {
            let d = defs.clone();
            Box::new(move || criterion_7e(&d))
        }),
        ("8 batch determinism", Box::new(criterion_8)),
    ];
    let mut failures = Vec::new();
    for (name, check) in &checks {
        match check() {
            Ok(()) => println!("criterion {}: PASS", name),
            Err(e) => {
                println!("criterion {}: FAIL ({})", name, e);
                failures.push(format!("{}: {}", name, e));
            }
        }
    }
    assert!(
        failures.is_empty(),
        "failed criteria:\n{}",
        failures.join("\n")
    );
}
