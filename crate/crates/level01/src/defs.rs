//! The definition store: clauses grouped by predicate, plus level inference.
//!
//! A predicate is level 1 when some clause body contains an implication or a
//! universal quantifier, or (transitively) calls a level-1 predicate.
//! Everything else is level 0, including the builtins `=` and `print`.

use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use indexmap::IndexMap;

use crate::formula::Formula;
use crate::syntax::{parse_program, ParseError, SourceClause};
use crate::term::{fresh, Level, LocalSig, Session, Sym, Term, VarKind};

pub const BUILTINS: &[&str] = &["=", "print"];

#[derive(Debug, thiserror::Error)]
pub enum DefError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("clause head is not a predicate applied to arguments")]
    BadHead,
    #[error("cannot redefine builtin predicate {0}")]
    Builtin(Sym),
}

/// One stored clause.  `Param(i)` placeholders in head and body stand for the
/// clause's free variables, renamed apart at each use.
#[derive(Clone, Debug)]
pub struct Clause {
    pub head: Rc<Term>,
    pub body: Formula,
    pub names: Vec<Sym>,
}

impl Clause {
    /// Rename the clause apart: each placeholder becomes a fresh logic
    /// variable of the given level, raised over `sigma`.
    pub fn rename(&self, session: &Session, level: Level, sigma: &LocalSig) -> (Rc<Term>, Formula) {
        let params: Vec<Rc<Term>> = self
            .names
            .iter()
            .map(|_| fresh(session, VarKind::Logic(level), sigma))
            .collect();
        let head = crate::term::normalize(&subst_params(&self.head, &params));
        let body = self.body.instantiate_params(&params);
        (head, body)
    }
}

fn subst_params(t: &Rc<Term>, params: &[Rc<Term>]) -> Rc<Term> {
    match &**t {
        Term::Param(i) => params[*i].clone(),
        Term::Const(_) | Term::Str(_) | Term::Bound(_) | Term::Local(_) | Term::Var(_) => t.clone(),
        Term::Abs(h, b) => Rc::new(Term::Abs(h.clone(), subst_params(b, params))),
        Term::App(h, args) => Rc::new(Term::App(
            subst_params(h, params),
            args.iter().map(|a| subst_params(a, params)).collect(),
        )),
    }
}

pub type PredKey = (Sym, usize);

#[derive(Default)]
pub struct Defs {
    preds: IndexMap<PredKey, Vec<Clause>>,
    levels: HashMap<PredKey, Level>,
}

impl Defs {
    pub fn new() -> Defs {
        Defs::default()
    }

    pub fn load_str(text: &str) -> Result<Defs, DefError> {
        let mut defs = Defs::new();
        defs.extend_str(text)?;
        Ok(defs)
    }

    pub fn extend_str(&mut self, text: &str) -> Result<(), DefError> {
        for clause in parse_program(text)? {
            self.add_clause(clause)?;
        }
        Ok(())
    }

    pub fn add_clause(&mut self, src: SourceClause) -> Result<(), DefError> {
        let (name, arity) = match src.head.head_const() {
            Some((name, arity)) => (name.clone(), arity),
            None => return Err(DefError::BadHead),
        };
        if BUILTINS.contains(&&*name) {
            return Err(DefError::Builtin(name));
        }
        self.preds.entry((name, arity)).or_default().push(Clause {
            head: src.head,
            body: src.body,
            names: src.free_names,
        });
        self.recompute_levels();
        Ok(())
    }

    pub fn clauses(&self, name: &str, arity: usize) -> Option<&[Clause]> {
        self.preds
            .get(&(Sym::from(name), arity))
            .map(|v| v.as_slice())
    }

    pub fn is_defined(&self, name: &str, arity: usize) -> bool {
        BUILTINS.contains(&name) || self.preds.contains_key(&(Sym::from(name), arity))
    }

    /// Level of a predicate; builtins and unknown predicates are level 0.
    pub fn level_of(&self, name: &str, arity: usize) -> Level {
        self.levels
            .get(&(Sym::from(name), arity))
            .copied()
            .unwrap_or(Level::Zero)
    }

    pub fn preds(&self) -> impl Iterator<Item = (&PredKey, &[Clause])> {
        self.preds.iter().map(|(k, v)| (k, v.as_slice()))
    }

    fn recompute_levels(&mut self) {
        // direct level-1 markers and the call graph
        let mut level1: HashSet<PredKey> = HashSet::new();
        let mut calls: HashMap<PredKey, HashSet<PredKey>> = HashMap::new();
        for (key, clauses) in &self.preds {
            let deps = calls.entry(key.clone()).or_default();
            for clause in clauses {
                if clause.body.has_imp_or_all() {
                    level1.insert(key.clone());
                }
                clause.body.for_each_atom(&mut |t| {
                    if let Some((name, arity)) = t.head_const() {
                        deps.insert((name.clone(), arity));
                    }
                });
            }
        }
        // propagate to callers until stable
        loop {
            let mut changed = false;
            for (key, deps) in &calls {
                if !level1.contains(key) && deps.iter().any(|d| level1.contains(d)) {
                    level1.insert(key.clone());
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        self.levels = self
            .preds
            .keys()
            .map(|k| {
                let lvl = if level1.contains(k) {
                    Level::One
                } else {
                    Level::Zero
                };
                (k.clone(), lvl)
            })
            .collect();
    }
}
