//! Lambda-tree syntax: terms, beta-normalization, substitutions, and the
//! session state that stamps every variable and local constant.
//!
//! Bound variables are de Bruijn indices (`Term::Bound`); the `Abs` hint is
//! kept only for printing and is ignored by equality, so structural equality
//! on normalized terms is alpha-equality.

use std::cell::Cell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

pub type Sym = Rc<str>;

/// Guard against beta-divergence of untypable terms; clause and goal terms
/// in practice are simply-typed-shaped and never come close.
const BETA_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct VarId(pub u64);

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Level {
    Zero,
    One,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VarKind {
    Eigen,
    Logic(Level),
}

/// An eigenvariable or logic variable. `ts` is the creation timestamp used
/// for scope pruning; pruning may copy a variable under a fresh id while
/// keeping the older timestamp, so the two are distinct fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Var {
    pub id: VarId,
    pub ts: u64,
    pub kind: VarKind,
}

/// A nabla-generated local constant. Never instantiated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Local {
    pub id: u64,
    pub ts: u64,
}

#[derive(Clone, Debug)]
pub enum Term {
    Const(Sym),
    /// Quoted string literal; an atomic constant.
    Str(Sym),
    /// de Bruijn index into enclosing `Abs` binders.
    Bound(usize),
    Local(Local),
    Var(Var),
    Abs(Sym, Rc<Term>),
    App(Rc<Term>, Vec<Rc<Term>>),
    /// Placeholder for a clause or goal variable, replaced by a fresh raised
    /// variable before the term ever reaches the engine.
    Param(usize),
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        match (self, other) {
            (Term::Const(a), Term::Const(b)) => a == b,
            (Term::Str(a), Term::Str(b)) => a == b,
            (Term::Bound(a), Term::Bound(b)) => a == b,
            (Term::Local(a), Term::Local(b)) => a.id == b.id,
            (Term::Var(a), Term::Var(b)) => a.id == b.id,
            // binder hints are ignored: structural equality is alpha-equality
            (Term::Abs(_, a), Term::Abs(_, b)) => a == b,
            (Term::App(h1, a1), Term::App(h2, a2)) => h1 == h2 && a1 == a2,
            (Term::Param(a), Term::Param(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Term {}

impl Term {
    pub fn const_(name: &str) -> Rc<Term> {
        Rc::new(Term::Const(Rc::from(name)))
    }

    pub fn app(head: Rc<Term>, args: Vec<Rc<Term>>) -> Rc<Term> {
        if args.is_empty() {
            head
        } else {
            Rc::new(Term::App(head, args))
        }
    }

    pub fn abs(hint: &str, body: Rc<Term>) -> Rc<Term> {
        Rc::new(Term::Abs(Rc::from(hint), body))
    }

    /// Head symbol of an atom, if the head is a constant.
    pub fn head_const(&self) -> Option<(&Sym, usize)> {
        match self {
            Term::Const(s) => Some((s, 0)),
            Term::App(h, args) => match &**h {
                Term::Const(s) => Some((s, args.len())),
                _ => None,
            },
            _ => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print_term(self))
    }
}

/// Ordered list of local constants in nabla-introduction order.
#[derive(Clone, Default, Debug)]
pub struct LocalSig(Vec<Local>);

impl LocalSig {
    pub fn new() -> Self {
        LocalSig(Vec::new())
    }

    pub fn push(&self, l: Local) -> Self {
        debug_assert!(self.0.iter().all(|x| x.id != l.id));
        let mut v = self.0.clone();
        v.push(l);
        LocalSig(v)
    }

    pub fn locals(&self) -> &[Local] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }
}

/// Per-engine mutable state: the timestamp counter behind `fresh`, and an
/// optional re-verification hook used by the test harness.
#[derive(Default)]
pub struct Session {
    counter: Cell<u64>,
    /// When set, every successful unification is re-checked by applying the
    /// unifier to both sides and comparing; the count is exposed for audits.
    pub verify_unifiers: Cell<bool>,
    pub unifications_checked: Cell<u64>,
}

impl Session {
    pub fn new() -> Rc<Session> {
        Rc::new(Session::default())
    }

    pub fn reset(&self) {
        self.counter.set(0);
    }

    /// Current timestamp watermark; variables created later compare greater.
    pub fn now(&self) -> u64 {
        self.counter.get()
    }

    fn tick(&self) -> u64 {
        let n = self.counter.get() + 1;
        self.counter.set(n);
        n
    }

    pub fn fresh_var(&self, kind: VarKind) -> Var {
        let n = self.tick();
        Var {
            id: VarId(n),
            ts: n,
            kind,
        }
    }

    /// A copy of `v` under a new id that keeps the older of the two scopes.
    /// Used when pruning introduces an intermediate variable.
    pub fn fresh_var_at(&self, kind: VarKind, ts: u64) -> Var {
        let n = self.tick();
        Var {
            id: VarId(n),
            ts: ts.min(n),
            kind,
        }
    }

    pub fn fresh_local(&self) -> Local {
        let n = self.tick();
        Local { id: n, ts: n }
    }
}

/// `fresh`: a new variable raised over the local signature, i.e. applied to
/// every member of `sigma` in order. With an empty signature the bare
/// variable is returned.
pub fn fresh(session: &Session, kind: VarKind, sigma: &LocalSig) -> Rc<Term> {
    let v = Rc::new(Term::Var(session.fresh_var(kind)));
    let args: Vec<Rc<Term>> = sigma
        .locals()
        .iter()
        .map(|l| Rc::new(Term::Local(*l)))
        .collect();
    Term::app(v, args)
}

/// Shift free de Bruijn indices >= `cutoff` by `d`.
fn shift(t: &Rc<Term>, d: usize, cutoff: usize) -> Rc<Term> {
    if d == 0 {
        return t.clone();
    }
    match &**t {
        Term::Bound(k) if *k >= cutoff => Rc::new(Term::Bound(k + d)),
        Term::Bound(_)
        | Term::Const(_)
        | Term::Str(_)
        | Term::Local(_)
        | Term::Var(_)
        | Term::Param(_) => t.clone(),
        Term::Abs(h, b) => Rc::new(Term::Abs(h.clone(), shift(b, d, cutoff + 1))),
        Term::App(h, args) => Rc::new(Term::App(
            shift(h, d, cutoff),
            args.iter().map(|a| shift(a, d, cutoff)).collect(),
        )),
    }
}

/// Replace `Bound(depth)` with `arg` (shifted into place) and close the gap.
fn subst_bound(t: &Rc<Term>, depth: usize, arg: &Rc<Term>) -> Rc<Term> {
    match &**t {
        Term::Bound(k) => {
            if *k == depth {
                shift(arg, depth, 0)
            } else if *k > depth {
                Rc::new(Term::Bound(k - 1))
            } else {
                t.clone()
            }
        }
        Term::Const(_) | Term::Str(_) | Term::Local(_) | Term::Var(_) | Term::Param(_) => t.clone(),
        Term::Abs(h, b) => Rc::new(Term::Abs(h.clone(), subst_bound(b, depth + 1, arg))),
        Term::App(h, args) => Rc::new(Term::App(
            subst_bound(h, depth, arg),
            args.iter().map(|a| subst_bound(a, depth, arg)).collect(),
        )),
    }
}

/// Instantiate the outermost binder of an abstraction body with `arg`.
pub fn open(body: &Rc<Term>, arg: &Rc<Term>) -> Rc<Term> {
    normalize(&subst_bound(body, 0, arg))
}

/// True iff `Bound(idx)` occurs free in `t`.
fn mentions(t: &Term, idx: usize) -> bool {
    match t {
        Term::Bound(k) => *k == idx,
        Term::Const(_) | Term::Str(_) | Term::Local(_) | Term::Var(_) | Term::Param(_) => false,
        Term::Abs(_, b) => mentions(b, idx + 1),
        Term::App(h, args) => mentions(h, idx) || args.iter().any(|a| mentions(a, idx)),
    }
}

/// Shift free indices above `cutoff` down by one (`Bound(cutoff)` must not
/// occur free).
fn unshift(t: &Rc<Term>, cutoff: usize) -> Rc<Term> {
    match &**t {
        Term::Bound(k) => {
            debug_assert_ne!(*k, cutoff);
            if *k > cutoff {
                Rc::new(Term::Bound(k - 1))
            } else {
                t.clone()
            }
        }
        Term::Const(_) | Term::Str(_) | Term::Local(_) | Term::Var(_) | Term::Param(_) => t.clone(),
        Term::Abs(h, b) => Rc::new(Term::Abs(h.clone(), unshift(b, cutoff + 1))),
        Term::App(h, args) => Rc::new(Term::App(
            unshift(h, cutoff),
            args.iter().map(|a| unshift(a, cutoff)).collect(),
        )),
    }
}

/// Beta-eta-normalize. Nested applications are flattened so no `App` head is
/// an `App` or an `Abs` in the result, and eta-redexes are contracted.
pub fn normalize(t: &Rc<Term>) -> Rc<Term> {
    let mut budget = BETA_BUDGET;
    norm(t, &mut budget)
}

fn norm(t: &Rc<Term>, budget: &mut u64) -> Rc<Term> {
    match &**t {
        Term::Const(_)
        | Term::Str(_)
        | Term::Bound(_)
        | Term::Local(_)
        | Term::Var(_)
        | Term::Param(_) => t.clone(),
        Term::Abs(h, b) => {
            let nb = norm(b, budget);
            // eta: \x. t x  ==>  t  when x is not free in t
            if let Term::App(head, args) = &*nb {
                let n = args.len();
                if matches!(&*args[n - 1], Term::Bound(0))
                    && !mentions(head, 0)
                    && args[..n - 1].iter().all(|a| !mentions(a, 0))
                {
                    let inner = Term::app(head.clone(), args[..n - 1].to_vec());
                    return unshift(&inner, 0);
                }
            }
            if Rc::ptr_eq(&nb, b) {
                t.clone()
            } else {
                Rc::new(Term::Abs(h.clone(), nb))
            }
        }
        Term::App(head, args) => {
            let mut head = norm(head, budget);
            let mut queue: Vec<Rc<Term>> = args.iter().map(|a| norm(a, budget)).collect();
            loop {
                match &*head.clone() {
                    Term::Abs(_, body) if !queue.is_empty() => {
                        if *budget == 0 {
                            panic!("beta reduction budget exhausted");
                        }
                        *budget -= 1;
                        let arg = queue.remove(0);
                        head = norm(&subst_bound(body, 0, &arg), budget);
                    }
                    Term::App(h2, args2) => {
                        let mut all = args2.clone();
                        all.append(&mut queue);
                        queue = all;
                        head = h2.clone();
                    }
                    _ => break,
                }
            }
            Term::app(head, queue)
        }
    }
}

/// Idempotent map from variables to (closed-under-self) terms. The full
/// `Var` is kept alongside each binding so scope checks can consult the
/// bound variable's timestamp and kind.
#[derive(Clone, Default, Debug)]
pub struct Substitution {
    map: HashMap<VarId, (Var, Rc<Term>)>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn lookup(&self, id: VarId) -> Option<&Rc<Term>> {
        self.map.get(&id).map(|(_, t)| t)
    }

    pub fn domain(&self) -> impl Iterator<Item = VarId> + '_ {
        self.map.keys().copied()
    }

    pub fn bindings(&self) -> impl Iterator<Item = (&Var, &Rc<Term>)> {
        self.map.values().map(|(v, t)| (v, t))
    }

    /// Apply, capture-avoiding, and normalize the result. The range is
    /// already closed under the substitution, so one pass suffices.
    pub fn apply(&self, t: &Rc<Term>) -> Rc<Term> {
        if self.map.is_empty() {
            return normalize(t);
        }
        normalize(&self.replace(t))
    }

    fn replace(&self, t: &Rc<Term>) -> Rc<Term> {
        match &**t {
            Term::Var(v) => match self.map.get(&v.id) {
                // bindings are closed terms: no shifting needed under binders
                Some((_, b)) => b.clone(),
                None => t.clone(),
            },
            Term::Const(_) | Term::Str(_) | Term::Bound(_) | Term::Local(_) | Term::Param(_) => {
                t.clone()
            }
            Term::Abs(h, b) => Rc::new(Term::Abs(h.clone(), self.replace(b))),
            Term::App(h, args) => Rc::new(Term::App(
                self.replace(h),
                args.iter().map(|a| self.replace(a)).collect(),
            )),
        }
    }

    /// Extend with `v -> t`, keeping idempotence: the binding is first closed
    /// under `self`, then folded into every existing binding.
    pub fn bind(&self, v: Var, t: &Rc<Term>) -> Substitution {
        let closed = self.apply(t);
        debug_assert!(
            !occurs(v.id, &closed),
            "binding would violate the occurs check"
        );
        let single = Substitution {
            map: HashMap::from([(v.id, (v, closed.clone()))]),
        };
        let mut map: HashMap<VarId, (Var, Rc<Term>)> = self
            .map
            .iter()
            .map(|(k, (w, b))| (*k, (*w, single.apply(b))))
            .collect();
        map.insert(v.id, (v, closed));
        Substitution { map }
    }
}

/// Does variable `id` occur (free) in `t`?
pub fn occurs(id: VarId, t: &Term) -> bool {
    match t {
        Term::Var(v) => v.id == id,
        Term::Const(_) | Term::Str(_) | Term::Bound(_) | Term::Local(_) | Term::Param(_) => false,
        Term::Abs(_, b) => occurs(id, b),
        Term::App(h, args) => occurs(id, h) || args.iter().any(|a| occurs(id, a)),
    }
}

/// Collect every variable occurring in `t`, left to right, without duplicates.
pub fn vars_of(t: &Term, out: &mut Vec<Var>) {
    match t {
        Term::Var(v) => {
            if !out.iter().any(|w| w.id == v.id) {
                out.push(*v);
            }
        }
        Term::Const(_) | Term::Str(_) | Term::Bound(_) | Term::Local(_) | Term::Param(_) => {}
        Term::Abs(_, b) => vars_of(b, out),
        Term::App(h, args) => {
            vars_of(h, out);
            for a in args {
                vars_of(a, out);
            }
        }
    }
}

/// Collect every local constant occurring in `t`.
pub fn locals_of(t: &Term, out: &mut Vec<Local>) {
    match t {
        Term::Local(l) => {
            if !out.iter().any(|x| x.id == l.id) {
                out.push(*l);
            }
        }
        Term::Const(_) | Term::Str(_) | Term::Bound(_) | Term::Var(_) | Term::Param(_) => {}
        Term::Abs(_, b) => locals_of(b, out),
        Term::App(h, args) => {
            locals_of(h, out);
            for a in args {
                locals_of(a, out);
            }
        }
    }
}
