//! The two-level prover: depth-first search with lazy answer streams,
//! def-R backchaining, and the two-step implication strategy.

use std::cell::{Cell as StdCell, RefCell};
use std::rc::Rc;

use crate::defs::Defs;
use crate::formula::Formula;
use crate::stream::Stream;
use crate::syntax::{print_term, SourceGoal};
use crate::term::{
    fresh, vars_of, Level, LocalSig, Session, Substitution, Sym, Term, Var, VarKind,
};
use crate::unify::{unify, UnifyOutcome};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("non-pure term found in implicational goal.")]
    NonPureGoal,
    #[error("non-pattern unification problem on {0}.")]
    NonPattern(String),
    #[error("undefined atom: {0}.")]
    UndefinedAtom(String),
    #[error("level violation: {0}.")]
    LevelViolation(String),
    #[error("step budget exceeded.")]
    BudgetExceeded,
}

pub type AnswerStream = Stream<Substitution, EngineError>;

/// Everything a proof step needs. Cheap to clone; branches share the
/// definition store and session but carry their own bindings and signature.
#[derive(Clone)]
pub struct Ctx {
    pub session: Rc<Session>,
    pub defs: Rc<Defs>,
    pub sigma: LocalSig,
    pub theta: Substitution,
    /// eigenvariables are instantiable (Step 1 of an implication)
    pub promoted: bool,
    /// output buffer for the `print` builtin
    pub sink: Rc<RefCell<String>>,
    /// optional remaining-steps counter shared across the query
    pub budget: Option<Rc<StdCell<u64>>>,
}

impl Ctx {
    pub fn new(session: Rc<Session>, defs: Rc<Defs>) -> Ctx {
        Ctx {
            session,
            defs,
            sigma: LocalSig::new(),
            theta: Substitution::new(),
            promoted: false,
            sink: Rc::new(RefCell::new(String::new())),
            budget: None,
        }
    }

    fn with_theta(&self, theta: Substitution) -> Ctx {
        let mut c = self.clone();
        c.theta = theta;
        c
    }

    fn charge(&self) -> Result<(), EngineError> {
        if let Some(b) = &self.budget {
            if b.get() == 0 {
                return Err(EngineError::BudgetExceeded);
            }
            b.set(b.get() - 1);
        }
        Ok(())
    }
}

/// Prove `g` at the given level. Answers are substitutions extending
/// `ctx.theta`, enumerated lazily in clause order, left branch first.
pub fn solve(level: Level, g: &Formula, ctx: &Ctx) -> AnswerStream {
    let g = g.clone();
    let ctx = ctx.clone();
    Stream::defer(move || {
        ctx.charge()?;
        Ok(match &g {
            Formula::Top => Stream::singleton(ctx.theta.clone()),
            Formula::Bot => Stream::empty(),
            Formula::And(a, b) => {
                let b = (**b).clone();
                let ctx2 = ctx.clone();
                solve(level, a, &ctx).flat_map(move |th| solve(level, &b, &ctx2.with_theta(th)))
            }
            Formula::Or(a, b) => {
                let b = (**b).clone();
                let ctx2 = ctx.clone();
                solve(level, a, &ctx).concat_lazy(move || Ok(solve(level, &b, &ctx2)))
            }
            Formula::Ex(_, body) => {
                let v = fresh(&ctx.session, VarKind::Logic(level), &ctx.sigma);
                solve(level, &body.open(&v), &ctx)
            }
            Formula::Nabla(_, body) => {
                let l = ctx.session.fresh_local();
                let mut ctx2 = ctx.clone();
                ctx2.sigma = ctx.sigma.push(l);
                solve(level, &body.open(&Rc::new(Term::Local(l))), &ctx2)
            }
            Formula::All(_, body) => {
                if level == Level::Zero {
                    return Err(EngineError::LevelViolation(
                        "universal quantifier in a level-0 goal".into(),
                    ));
                }
                let v = fresh(&ctx.session, VarKind::Eigen, &ctx.sigma);
                solve(level, &body.open(&v), &ctx)
            }
            Formula::Imp(a, b) => {
                if level == Level::Zero {
                    return Err(EngineError::LevelViolation(
                        "implication in a level-0 goal".into(),
                    ));
                }
                prove_implication(a, b, &ctx)
            }
            Formula::Atom(t) => solve_atom(level, t, &ctx)?,
        })
    })
}

fn solve_atom(level: Level, t: &Rc<Term>, ctx: &Ctx) -> Result<AnswerStream, EngineError> {
    let t = ctx.theta.apply(t);
    let (name, arity) = match t.head_const() {
        Some((s, n)) => (s.clone(), n),
        None => return Err(EngineError::UndefinedAtom(print_term(&t))),
    };
    let args: Vec<Rc<Term>> = match &*t {
        Term::App(_, a) => a.clone(),
        _ => Vec::new(),
    };
    match (&*name, arity) {
        ("=", 2) => Ok(
            match unify(&ctx.session, &ctx.theta, &args[0], &args[1], ctx.promoted) {
                UnifyOutcome::Success(th) => Stream::singleton(th),
                UnifyOutcome::Fail => Stream::empty(),
                UnifyOutcome::NonPattern(bad) => {
                    return Err(EngineError::NonPattern(print_term(&bad)))
                }
            },
        ),
        ("print", 1) => {
            // string literals print unquoted, like a message
            let line = match &*args[0] {
                Term::Str(s) => s.to_string(),
                _ => print_term(&args[0]),
            };
            let mut sink = ctx.sink.borrow_mut();
            sink.push_str(&line);
            sink.push('\n');
            Ok(Stream::singleton(ctx.theta.clone()))
        }
        _ => {
            if ctx.defs.clauses(&name, arity).is_none() {
                return Err(EngineError::UndefinedAtom(format!("{} / {}", name, arity)));
            }
            Ok(backchain(level, t.clone(), name, arity, 0, ctx.clone()))
        }
    }
}

/// Try the clauses of a predicate in order, lazily: clause `idx` is only
/// renamed (consuming fresh variables) when the stream reaches it.
fn backchain(
    level: Level,
    atom: Rc<Term>,
    name: Sym,
    arity: usize,
    idx: usize,
    ctx: Ctx,
) -> AnswerStream {
    Stream::defer(move || {
        let clauses = ctx.defs.clauses(&name, arity).expect("checked by caller");
        if idx >= clauses.len() {
            return Ok(Stream::empty());
        }
        let (head, body) = clauses[idx].rename(&ctx.session, level, &ctx.sigma);
        let first = match unify(&ctx.session, &ctx.theta, &atom, &head, ctx.promoted) {
            UnifyOutcome::Success(th) => solve(level, &body, &ctx.with_theta(th)),
            UnifyOutcome::Fail => Stream::empty(),
            UnifyOutcome::NonPattern(bad) => return Err(EngineError::NonPattern(print_term(&bad))),
        };
        let (atom, name, ctx2) = (atom.clone(), name.clone(), ctx.clone());
        Ok(first.concat_lazy(move || {
            Ok(backchain(
                level,
                atom.clone(),
                name.clone(),
                arity,
                idx + 1,
                ctx2.clone(),
            ))
        }))
    })
}

/// The implication goal `G => D`.
///
/// Guard: `G` under the current bindings must not contain level-1 logic
/// variables. Step 1: prove `G` by the level-0 prover with eigenvariables
/// promoted. Step 2: for each Step-1 answer, `D` under that answer must be
/// provable. The goal exports no bindings of its own.
fn prove_implication(g: &Formula, d: &Formula, ctx: &Ctx) -> AnswerStream {
    let g_inst = g.apply_subst(&ctx.theta);
    let mut vars = Vec::new();
    g_inst.for_each_atom(&mut |t| vars_of(t, &mut vars));
    if vars.iter().any(|v| v.kind == VarKind::Logic(Level::One)) {
        return Stream::err(EngineError::NonPureGoal);
    }
    let watermark = ctx.session.now();
    let mut ctx1 = ctx.clone();
    ctx1.promoted = true;
    let answers = solve(Level::Zero, g, &ctx1);
    step2(answers, d.clone(), ctx.clone(), watermark)
}

fn step2(answers: AnswerStream, d: Formula, ctx: Ctx, watermark: u64) -> AnswerStream {
    Stream::defer(move || {
        match answers.next()? {
            // Step-1 stream exhausted without a failing branch: succeed,
            // exporting nothing
            None => Ok(Stream::singleton(ctx.theta.clone())),
            Some((th_i, rest)) => {
                let mut branch_ctx = ctx.with_theta(th_i.clone());
                branch_ctx.promoted = false;
                match solve(Level::One, &d, &branch_ctx).next()? {
                    None => Ok(Stream::empty()),
                    Some((th_out, _)) => {
                        // a branch may not constrain anything that existed
                        // before the implication, beyond the Step-1 answer:
                        // branch-dependent bindings have no joint meaning
                        for (v, _) in th_out.bindings() {
                            if v.ts < watermark && th_i.lookup(v.id).is_none() {
                                return Err(EngineError::NonPureGoal);
                            }
                        }
                        Ok(step2(rest.clone(), d.clone(), ctx.clone(), watermark))
                    }
                }
            }
        }
    })
}

/// A goal ready to run: its free names have become fresh level-1 logic
/// variables whose bindings are read off each answer.
pub struct PreparedQuery {
    pub free: Vec<(Sym, Var)>,
    pub answers: AnswerStream,
}

/// Check the level grammar of a goal against the definition store.
pub fn check_goal(f: &Formula, defs: &Defs, level: Level) -> Result<(), EngineError> {
    match f {
        Formula::Top | Formula::Bot => Ok(()),
        Formula::Atom(t) => {
            if level == Level::Zero {
                if let Some((name, arity)) = t.head_const() {
                    if defs.level_of(name, arity) == Level::One {
                        return Err(EngineError::LevelViolation(format!(
                            "level-1 predicate {} in a level-0 position",
                            name
                        )));
                    }
                }
            }
            Ok(())
        }
        Formula::And(a, b) | Formula::Or(a, b) => {
            check_goal(a, defs, level)?;
            check_goal(b, defs, level)
        }
        Formula::Imp(a, b) => {
            if level == Level::Zero {
                return Err(EngineError::LevelViolation(
                    "implication in a level-0 position".into(),
                ));
            }
            check_goal(a, defs, Level::Zero)?;
            check_goal(b, defs, Level::One)
        }
        Formula::All(_, b) => {
            if level == Level::Zero {
                return Err(EngineError::LevelViolation(
                    "universal quantifier in a level-0 position".into(),
                ));
            }
            check_goal(b, defs, Level::One)
        }
        Formula::Ex(_, b) | Formula::Nabla(_, b) => check_goal(b, defs, level),
    }
}

/// Set up a parsed goal in the given context. The caller decides whether to
/// reset the session first (the CLI does, for reproducible variable names).
pub fn prepare(goal: &SourceGoal, ctx: &Ctx) -> Result<PreparedQuery, EngineError> {
    check_goal(&goal.formula, &ctx.defs, Level::One)?;
    let free: Vec<(Sym, Var)> = goal
        .free_names
        .iter()
        .map(|n| (n.clone(), ctx.session.fresh_var(VarKind::Logic(Level::One))))
        .collect();
    let params: Vec<Rc<Term>> = free.iter().map(|(_, v)| Rc::new(Term::Var(*v))).collect();
    let f = goal.formula.instantiate_params(&params);
    Ok(PreparedQuery {
        free,
        answers: solve(Level::One, &f, ctx),
    })
}

/// `Name = term` lines for one answer, in free-name order.
pub fn format_bindings(free: &[(Sym, Var)], theta: &Substitution) -> Vec<String> {
    free.iter()
        .map(|(n, v)| {
            let t = theta.apply(&Rc::new(Term::Var(*v)));
            format!("{} = {}", n, print_term(&t))
        })
        .collect()
}
