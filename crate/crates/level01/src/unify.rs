//! Higher-order pattern unification with mixed-prefix scope pruning.
//!
//! Instantiable variables are logic variables plus, when `promoted` is set,
//! eigenvariables (promotion happens inside Step 1 of an implication).
//! Local constants and unpromoted eigenvariables are rigid. Timestamps stand
//! in for the quantifier prefix: a variable may only be bound to a term whose
//! rigid locals and eigenvariables are older than the variable itself, except
//! where they appear among its raised arguments.

use std::rc::Rc;

use crate::term::{normalize, open, Session, Substitution, Term, Var};

#[derive(Debug)]
pub enum UnifyOutcome {
    Success(Substitution),
    Fail,
    NonPattern(Rc<Term>),
}

enum Stop {
    Fail,
    NonPattern(Rc<Term>),
}

pub fn instantiable(v: &Var, promoted: bool) -> bool {
    match v.kind {
        crate::term::VarKind::Logic(_) => true,
        crate::term::VarKind::Eigen => promoted,
    }
}

/// True iff every instantiable variable in `t` is applied to pairwise
/// distinct pattern arguments.
pub fn is_pattern(t: &Term, promoted: bool) -> bool {
    match t {
        Term::Const(_) | Term::Str(_) | Term::Bound(_) | Term::Local(_) | Term::Param(_) => true,
        Term::Var(_) => true,
        Term::Abs(_, b) => is_pattern(b, promoted),
        Term::App(h, args) => match &**h {
            Term::Var(v) if instantiable(v, promoted) => {
                pattern_args(v, args, promoted) && args.iter().all(|a| is_pattern(a, promoted))
            }
            _ => is_pattern(h, promoted) && args.iter().all(|a| is_pattern(a, promoted)),
        },
    }
}

/// A legal argument of a flexible head `v`: a bound index, a local constant
/// (any age, thanks to raising), a rigid eigenvariable introduced after `v`,
/// or such an eigenvariable raised over locals.
fn pattern_arg(v: &Var, a: &Term, promoted: bool) -> bool {
    match a {
        Term::Bound(_) | Term::Local(_) => true,
        Term::Var(w) => !instantiable(w, promoted) && w.ts > v.ts,
        Term::App(h, hargs) => match &**h {
            Term::Var(w) if !instantiable(w, promoted) && w.ts > v.ts => {
                hargs.iter().all(|x| matches!(&**x, Term::Local(_)))
            }
            _ => false,
        },
        _ => false,
    }
}

/// Check the pattern restriction on the arguments of a flexible head:
/// each legal in shape and pairwise distinct.
fn pattern_args(v: &Var, args: &[Rc<Term>], promoted: bool) -> bool {
    args.iter().all(|a| pattern_arg(v, a, promoted))
        && args
            .iter()
            .enumerate()
            .all(|(i, a)| args[..i].iter().all(|b| b != a))
}

pub fn unify(
    session: &Session,
    theta: &Substitution,
    s: &Rc<Term>,
    t: &Rc<Term>,
    promoted: bool,
) -> UnifyOutcome {
    let mut u = Unifier { session, promoted };
    match u.unify_rec(theta.clone(), s, t) {
        Ok(theta2) => {
            if session.verify_unifiers.get() {
                let ls = theta2.apply(s);
                let rs = theta2.apply(t);
                assert_eq!(*ls, *rs, "unifier failed re-verification");
                session
                    .unifications_checked
                    .set(session.unifications_checked.get() + 1);
            }
            UnifyOutcome::Success(theta2)
        }
        Err(Stop::Fail) => UnifyOutcome::Fail,
        Err(Stop::NonPattern(t)) => UnifyOutcome::NonPattern(t),
    }
}

struct Unifier<'a> {
    session: &'a Session,
    promoted: bool,
}

fn split(t: &Rc<Term>) -> (Rc<Term>, Vec<Rc<Term>>) {
    match &**t {
        Term::App(h, args) => (h.clone(), args.clone()),
        _ => (t.clone(), Vec::new()),
    }
}

impl<'a> Unifier<'a> {
    fn flex(&self, head: &Rc<Term>) -> Option<Var> {
        match &**head {
            Term::Var(v) if instantiable(v, self.promoted) => Some(*v),
            _ => None,
        }
    }

    fn unify_rec(
        &mut self,
        theta: Substitution,
        s: &Rc<Term>,
        t: &Rc<Term>,
    ) -> Result<Substitution, Stop> {
        let s = theta.apply(s);
        let t = theta.apply(t);
        if s == t {
            return Ok(theta);
        }
        match (&*s, &*t) {
            (Term::Abs(_, b1), Term::Abs(_, b2)) => {
                let l = Rc::new(Term::Local(self.session.fresh_local()));
                self.unify_rec(theta, &open(b1, &l), &open(b2, &l))
            }
            // eta: an abstraction against anything else forces application
            (Term::Abs(_, b1), _) => {
                let l = Rc::new(Term::Local(self.session.fresh_local()));
                let rt = normalize(&Term::app(t.clone(), vec![l.clone()]));
                self.unify_rec(theta, &open(b1, &l), &rt)
            }
            (_, Term::Abs(_, b2)) => {
                let l = Rc::new(Term::Local(self.session.fresh_local()));
                let ls = normalize(&Term::app(s.clone(), vec![l.clone()]));
                self.unify_rec(theta, &ls, &open(b2, &l))
            }
            _ => {
                let (h1, a1) = split(&s);
                let (h2, a2) = split(&t);
                match (self.flex(&h1), self.flex(&h2)) {
                    (Some(f), Some(g)) => self.flex_flex(theta, f, &a1, &s, g, &a2, &t),
                    (Some(f), None) => self.bind_flex(theta, f, &a1, &s, &t),
                    (None, Some(g)) => self.bind_flex(theta, g, &a2, &t, &s),
                    (None, None) => {
                        if !rigid_heads_equal(&h1, &h2) || a1.len() != a2.len() {
                            return Err(Stop::Fail);
                        }
                        let mut theta = theta;
                        for (x, y) in a1.iter().zip(a2.iter()) {
                            theta = self.unify_rec(theta, x, y)?;
                        }
                        Ok(theta)
                    }
                }
            }
        }
    }

    fn flex_flex(
        &mut self,
        theta: Substitution,
        f: Var,
        fargs: &[Rc<Term>],
        fterm: &Rc<Term>,
        g: Var,
        gargs: &[Rc<Term>],
        gterm: &Rc<Term>,
    ) -> Result<Substitution, Stop> {
        if f.id == g.id {
            // same variable, differing argument lists: keep positions where
            // the arguments agree
            if !pattern_args(&f, fargs, self.promoted) {
                return Err(Stop::NonPattern(fterm.clone()));
            }
            if !pattern_args(&g, gargs, self.promoted) {
                return Err(Stop::NonPattern(gterm.clone()));
            }
            if fargs.len() != gargs.len() {
                return Err(Stop::Fail);
            }
            let n = fargs.len();
            let kept: Vec<usize> = (0..n).filter(|&i| fargs[i] == gargs[i]).collect();
            let f2 = self.session.fresh_var_at(f.kind, f.ts);
            let body = Term::app(
                Rc::new(Term::Var(f2)),
                kept.iter()
                    .map(|&i| Rc::new(Term::Bound(n - 1 - i)))
                    .collect(),
            );
            return Ok(theta.bind(f, &wrap_abs(body, n)));
        }
        // bind the younger variable, keeping the older stable in answers
        if f.ts >= g.ts {
            self.bind_flex(theta, f, fargs, fterm, gterm)
        } else {
            self.bind_flex(theta, g, gargs, gterm, fterm)
        }
    }

    /// Solve `F a1 ... an = rhs` by inverting `rhs` through the argument
    /// renaming, pruning flexible subterms where needed.
    fn bind_flex(
        &mut self,
        theta: Substitution,
        f: Var,
        args: &[Rc<Term>],
        fterm: &Rc<Term>,
        rhs: &Rc<Term>,
    ) -> Result<Substitution, Stop> {
        if !pattern_args(&f, args, self.promoted) {
            return Err(Stop::NonPattern(fterm.clone()));
        }
        let n = args.len();
        let mut inv = Invert {
            session: self.session,
            promoted: self.promoted,
            f,
            args: args.to_vec(),
            theta,
        };
        let body = inv.invert(rhs, 0)?;
        let theta = inv.theta;
        Ok(theta.bind(f, &wrap_abs(body, n)))
    }
}

fn wrap_abs(mut body: Rc<Term>, n: usize) -> Rc<Term> {
    for i in (0..n).rev() {
        body = Term::abs(&format!("x{}", i + 1), body);
    }
    normalize(&body)
}

fn rigid_heads_equal(a: &Rc<Term>, b: &Rc<Term>) -> bool {
    match (&**a, &**b) {
        (Term::Const(x), Term::Const(y)) => x == y,
        (Term::Str(x), Term::Str(y)) => x == y,
        (Term::Local(x), Term::Local(y)) => x.id == y.id,
        (Term::Var(x), Term::Var(y)) => x.id == y.id,
        (Term::Bound(x), Term::Bound(y)) => x == y,
        _ => false,
    }
}

struct Invert<'a> {
    session: &'a Session,
    promoted: bool,
    f: Var,
    /// the arguments `F` was applied to, mapped to `Bound(n-1-i)` in the image
    args: Vec<Rc<Term>>,
    theta: Substitution,
}

impl<'a> Invert<'a> {
    /// The bound index standing for `t` in `F`'s binding, if `t` is one of
    /// `F`'s arguments. Arguments never contain de Bruijn indices of the term
    /// being inverted, so the lookup is depth-independent modulo the shift.
    fn bound_for(&self, t: &Term, depth: usize) -> Option<Rc<Term>> {
        let n = self.args.len();
        self.args
            .iter()
            .position(|a| &**a == t)
            .map(|pos| Rc::new(Term::Bound(depth + n - 1 - pos)))
    }

    /// Age bound on direct occurrences: a rigid atom may stay in `F`'s
    /// binding only if it is older than `F`.
    fn older_than_f(&self, t: &Term) -> bool {
        match t {
            Term::Local(l) => l.ts < self.f.ts,
            Term::Var(v) => v.ts < self.f.ts,
            Term::App(h, _) => self.older_than_f(h),
            _ => false,
        }
    }

    fn invert(&mut self, t: &Rc<Term>, depth: usize) -> Result<Rc<Term>, Stop> {
        let t = self.theta.apply(t);
        if let Some(b) = self.bound_for(&t, depth) {
            return Ok(b);
        }
        match &*t {
            Term::Const(_) | Term::Str(_) | Term::Param(_) => Ok(t.clone()),
            Term::Bound(k) => {
                debug_assert!(*k < depth);
                Ok(t.clone())
            }
            Term::Local(l) => {
                if l.ts < self.f.ts {
                    Ok(t.clone())
                } else {
                    Err(Stop::Fail)
                }
            }
            Term::Var(v) if !instantiable(v, self.promoted) => {
                if v.ts < self.f.ts {
                    Ok(t.clone())
                } else {
                    Err(Stop::Fail)
                }
            }
            Term::Var(v) => {
                if v.id == self.f.id {
                    return Err(Stop::Fail); // occurs check
                }
                self.prune_flex(*v, &[], &t, depth)
            }
            Term::Abs(h, b) => {
                let nb = self.invert(b, depth + 1)?;
                Ok(normalize(&Rc::new(Term::Abs(h.clone(), nb))))
            }
            Term::App(h, args) => match &**h {
                Term::Var(v) if instantiable(v, self.promoted) => {
                    if v.id == self.f.id {
                        return Err(Stop::Fail);
                    }
                    self.prune_flex(*v, args, &t, depth)
                }
                _ => {
                    let nh = self.invert(h, depth)?;
                    let mut nargs = Vec::with_capacity(args.len());
                    for a in args {
                        nargs.push(self.invert(a, depth)?);
                    }
                    Ok(normalize(&Term::app(nh, nargs)))
                }
            },
        }
    }

    /// Map a flexible subterm `G z1 ... zm` into the image of `F`'s binding.
    /// Arguments outside the renaming and outside `F`'s scope are pruned by
    /// rebinding `G` to a fresh variable over the survivors; the fresh
    /// variable keeps the older of the two scopes.
    fn prune_flex(
        &mut self,
        g: Var,
        args: &[Rc<Term>],
        whole: &Rc<Term>,
        depth: usize,
    ) -> Result<Rc<Term>, Stop> {
        if !pattern_args(&g, args, self.promoted) {
            return Err(Stop::NonPattern(whole.clone()));
        }
        let m = args.len();
        let mut kept_positions = Vec::new();
        let mut mapped = Vec::new();
        for (i, a) in args.iter().enumerate() {
            let image = match &**a {
                Term::Bound(k) => {
                    if *k < depth {
                        Some(a.clone())
                    } else {
                        None
                    }
                }
                _ => match self.bound_for(a, depth) {
                    Some(b) => Some(b),
                    None if self.older_than_f(a) => Some(a.clone()),
                    None => None,
                },
            };
            if let Some(img) = image {
                kept_positions.push(i);
                mapped.push(img);
            }
        }
        if kept_positions.len() == m && g.ts <= self.f.ts {
            return Ok(Term::app(Rc::new(Term::Var(g)), mapped));
        }
        let g2 = self.session.fresh_var_at(g.kind, g.ts.min(self.f.ts));
        let g_body = Term::app(
            Rc::new(Term::Var(g2)),
            kept_positions
                .iter()
                .map(|&i| Rc::new(Term::Bound(m - 1 - i)))
                .collect(),
        );
        self.theta = self.theta.bind(g, &wrap_abs(g_body, m));
        Ok(Term::app(Rc::new(Term::Var(g2)), mapped))
    }
}
