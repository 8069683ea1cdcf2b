//! Goal and clause-body formulas over lambda-tree terms.
//!
//! Quantifier bodies share the terms' de Bruijn space: `Bound(0)` inside a
//! quantified body refers to the nearest enclosing binder, whether that is a
//! term abstraction or a formula quantifier.

use std::rc::Rc;

use crate::term::{Substitution, Sym, Term};

#[derive(Clone, Debug)]
pub enum Formula {
    Top,
    Bot,
    Atom(Rc<Term>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    All(Sym, Box<Formula>),
    Ex(Sym, Box<Formula>),
    Nabla(Sym, Box<Formula>),
}

// binder name hints are ignored, matching term alpha-equality
impl PartialEq for Formula {
    fn eq(&self, other: &Formula) -> bool {
        match (self, other) {
            (Formula::Top, Formula::Top) | (Formula::Bot, Formula::Bot) => true,
            (Formula::Atom(s), Formula::Atom(t)) => s == t,
            (Formula::And(a, b), Formula::And(c, d))
            | (Formula::Or(a, b), Formula::Or(c, d))
            | (Formula::Imp(a, b), Formula::Imp(c, d)) => a == c && b == d,
            (Formula::All(_, a), Formula::All(_, b))
            | (Formula::Ex(_, a), Formula::Ex(_, b))
            | (Formula::Nabla(_, a), Formula::Nabla(_, b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Formula {}

impl Formula {
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    /// Instantiate the outermost quantifier binder with `arg`.
    pub fn open(&self, arg: &Rc<Term>) -> Formula {
        self.open_at(0, arg)
    }

    fn open_at(&self, depth: usize, arg: &Rc<Term>) -> Formula {
        match self {
            Formula::Top => Formula::Top,
            Formula::Bot => Formula::Bot,
            Formula::Atom(t) => Formula::Atom(open_term(t, depth, arg)),
            Formula::And(a, b) => Formula::and(a.open_at(depth, arg), b.open_at(depth, arg)),
            Formula::Or(a, b) => Formula::or(a.open_at(depth, arg), b.open_at(depth, arg)),
            Formula::Imp(a, b) => Formula::imp(a.open_at(depth, arg), b.open_at(depth, arg)),
            Formula::All(h, b) => Formula::All(h.clone(), Box::new(b.open_at(depth + 1, arg))),
            Formula::Ex(h, b) => Formula::Ex(h.clone(), Box::new(b.open_at(depth + 1, arg))),
            Formula::Nabla(h, b) => Formula::Nabla(h.clone(), Box::new(b.open_at(depth + 1, arg))),
        }
    }

    pub fn apply_subst(&self, theta: &Substitution) -> Formula {
        self.map_atoms(&|t| theta.apply(t))
    }

    /// Replace clause/goal parameter placeholders by the given terms.
    pub fn instantiate_params(&self, params: &[Rc<Term>]) -> Formula {
        self.map_atoms(&|t| crate::term::normalize(&subst_params(t, params)))
    }

    pub fn map_atoms(&self, f: &impl Fn(&Rc<Term>) -> Rc<Term>) -> Formula {
        match self {
            Formula::Top => Formula::Top,
            Formula::Bot => Formula::Bot,
            Formula::Atom(t) => Formula::Atom(f(t)),
            Formula::And(a, b) => Formula::and(a.map_atoms(f), b.map_atoms(f)),
            Formula::Or(a, b) => Formula::or(a.map_atoms(f), b.map_atoms(f)),
            Formula::Imp(a, b) => Formula::imp(a.map_atoms(f), b.map_atoms(f)),
            Formula::All(h, b) => Formula::All(h.clone(), Box::new(b.map_atoms(f))),
            Formula::Ex(h, b) => Formula::Ex(h.clone(), Box::new(b.map_atoms(f))),
            Formula::Nabla(h, b) => Formula::Nabla(h.clone(), Box::new(b.map_atoms(f))),
        }
    }

    pub fn for_each_atom(&self, f: &mut impl FnMut(&Rc<Term>)) {
        match self {
            Formula::Top | Formula::Bot => {}
            Formula::Atom(t) => f(t),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.for_each_atom(f);
                b.for_each_atom(f);
            }
            Formula::All(_, b) | Formula::Ex(_, b) | Formula::Nabla(_, b) => b.for_each_atom(f),
        }
    }

    /// Syntactic marker for level-1 content.
    pub fn has_imp_or_all(&self) -> bool {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(_) => false,
            Formula::Imp(_, _) | Formula::All(_, _) => true,
            Formula::And(a, b) | Formula::Or(a, b) => a.has_imp_or_all() || b.has_imp_or_all(),
            Formula::Ex(_, b) | Formula::Nabla(_, b) => b.has_imp_or_all(),
        }
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

/// `open` for a term under `depth` formula binders: params stay, indices
/// above the cut are shifted down.
fn open_term(t: &Rc<Term>, depth: usize, arg: &Rc<Term>) -> Rc<Term> {
    match &**t {
        Term::Bound(k) => {
            if *k == depth {
                // arg is closed (a fresh variable or local), no shifting
                arg.clone()
            } else if *k > depth {
                Rc::new(Term::Bound(k - 1))
            } else {
                t.clone()
            }
        }
        Term::Const(_) | Term::Str(_) | Term::Local(_) | Term::Var(_) | Term::Param(_) => t.clone(),
        Term::Abs(h, b) => Rc::new(Term::Abs(h.clone(), open_term(b, depth + 1, arg))),
        Term::App(h, args) => crate::term::normalize(&Rc::new(Term::App(
            open_term(h, depth, arg),
            args.iter().map(|a| open_term(a, depth, arg)).collect(),
        ))),
    }
}
