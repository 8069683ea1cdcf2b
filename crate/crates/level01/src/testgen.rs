//! Deterministic random generation of pattern unification problems, used by
//! the property suites to audit the unifier.

use std::rc::Rc;

use crate::term::{Local, Session, Substitution, Term, Var, VarKind};
use crate::unify::{unify, UnifyOutcome};

/// A small xorshift* generator: reproducible across runs and platforms.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed.max(1))
    }

    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

const CONSTS: &[&str] = &["a", "b", "c"];
const FUNS: &[&str] = &["f", "g"];

/// One variable of the generated problem: raised over a prefix of the local
/// signature fixed at creation.
struct GenVar {
    var: Var,
    raised: Vec<Local>,
}

fn gen_term(rng: &mut Rng, vars: &[GenVar], locals: &[Local], depth: usize) -> Rc<Term> {
    let pick = rng.below(if depth == 0 { 3 } else { 4 });
    match pick {
        0 => Term::const_(CONSTS[rng.below(CONSTS.len() as u64) as usize]),
        1 => Rc::new(Term::Local(locals[rng.below(locals.len() as u64) as usize])),
        2 => {
            let gv = &vars[rng.below(vars.len() as u64) as usize];
            Term::app(
                Rc::new(Term::Var(gv.var)),
                gv.raised.iter().map(|l| Rc::new(Term::Local(*l))).collect(),
            )
        }
        _ => {
            let head = Term::const_(FUNS[rng.below(FUNS.len() as u64) as usize]);
            let n = 1 + rng.below(2) as usize;
            let args = (0..n)
                .map(|_| gen_term(rng, vars, locals, depth - 1))
                .collect();
            Term::app(head, args)
        }
    }
}

#[derive(Default, Debug)]
pub struct Audit {
    pub attempts: usize,
    pub successes: usize,
    pub failures: usize,
    pub non_patterns: usize,
    /// successful unifiers re-verified by applying them to both sides
    pub verified: u64,
}

/// Generate `n` random pattern unification pairs and solve each with
/// re-verification enabled; panics if any solved problem fails to verify.
pub fn unify_audit(n: usize, seed: u64) -> Audit {
    let mut rng = Rng::new(seed);
    let session = Session::new();
    session.verify_unifiers.set(true);
    let mut audit = Audit::default();
    for _ in 0..n {
        session.reset();
        let locals: Vec<Local> = (0..3).map(|_| session.fresh_local()).collect();
        let vars: Vec<GenVar> = (0..3)
            .map(|_| {
                let k = rng.below(locals.len() as u64 + 1) as usize;
                GenVar {
                    var: session.fresh_var(VarKind::Logic(crate::term::Level::Zero)),
                    raised: locals[..k].to_vec(),
                }
            })
            .collect();
        let depth = 1 + rng.below(2) as usize;
        let s = gen_term(&mut rng, &vars, &locals, depth);
        let t = gen_term(&mut rng, &vars, &locals, depth);
        audit.attempts += 1;
        match unify(&session, &Substitution::new(), &s, &t, false) {
            UnifyOutcome::Success(theta) => {
                audit.successes += 1;
                assert_eq!(
                    *theta.apply(&s),
                    *theta.apply(&t),
                    "unifier does not equate the generated pair"
                );
            }
            UnifyOutcome::Fail => audit.failures += 1,
            UnifyOutcome::NonPattern(_) => audit.non_patterns += 1,
        }
    }
    audit.verified = session.unifications_checked.get();
    audit
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rng_is_deterministic() {
        let mut a = Rng::new(42);
        let mut b = Rng::new(42);
        for _ in 0..100 {
            assert_eq!(a.next(), b.next());
        }
    }

    #[test]
    fn audit_exercises_both_outcomes() {
        let audit = unify_audit(500, 7);
        assert_eq!(audit.attempts, 500);
        assert!(audit.successes > 50, "too few successes: {:?}", audit);
        assert!(audit.failures > 50, "too few failures: {:?}", audit);
        assert_eq!(audit.non_patterns, 0, "generator must stay in the fragment");
        assert_eq!(audit.verified as usize, audit.successes);
    }
}
