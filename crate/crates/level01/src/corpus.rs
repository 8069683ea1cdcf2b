//! The bundled example programs: finite pi-calculus transitions with open
//! bisimulation, and a modal logic over them.

use std::rc::Rc;

use crate::defs::Defs;
use crate::engine::{format_bindings, prepare, Ctx, EngineError};
use crate::syntax::parse_goal;
use crate::term::Session;

pub const PI_DEF: &str = include_str!("../corpus/pi.def");
pub const MODAL_DEF: &str = include_str!("../corpus/modal.def");
pub const ASSERT_DEF: &str = include_str!("../corpus/assert.def");

/// All three bundled files as one definition store.
pub fn load_corpus() -> Defs {
    let mut defs = Defs::new();
    defs.extend_str(PI_DEF).expect("pi.def parses");
    defs.extend_str(MODAL_DEF).expect("modal.def parses");
    defs.extend_str(ASSERT_DEF).expect("assert.def parses");
    defs
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Expect {
    Succeed,
    Fail,
}

pub struct CorpusCase {
    pub name: &'static str,
    pub query: &'static str,
    pub expect: Expect,
}

/// The headline corpus checks, in source order.
pub fn corpus_cases() -> Vec<CorpusCase> {
    vec![
        CorpusCase {
            name: "example-0-is-stuck",
            query: "example 0 P, (pi A\\pi Q\\ one P A Q => false), \
                    (pi A\\pi Q\\ onep P A Q => false)",
            expect: Expect::Succeed,
        },
        CorpusCase {
            name: "example-4-has-a-transition",
            query: "example 4 P, one P A Q",
            expect: Expect::Succeed,
        },
        CorpusCase {
            name: "bisim-2-6",
            query: "example 2 P, example 6 Q, bisim P Q",
            expect: Expect::Succeed,
        },
        CorpusCase {
            name: "bisim-2-3",
            query: "example 2 P, example 3 Q, bisim P Q",
            expect: Expect::Fail,
        },
        CorpusCase {
            name: "modal-2-and-6-satisfy-assert",
            query: "assert A, example 2 P, example 6 Q, sat P A, sat Q A",
            expect: Expect::Succeed,
        },
    ]
}

/// Run a query against the corpus, returning each answer's binding lines.
pub fn run_corpus_query(query: &str) -> Result<Vec<Vec<String>>, EngineError> {
    let session = Session::new();
    let defs = Rc::new(load_corpus());
    let ctx = Ctx::new(session, defs);
    let goal = parse_goal(query).expect("corpus query parses");
    let q = prepare(&goal, &ctx)?;
    let answers = q.answers.collect()?;
    Ok(answers
        .iter()
        .map(|th| format_bindings(&q.free, th))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Formula;
    use crate::term::Level;

    #[test]
    fn clause_counts() {
        let defs = load_corpus();
        assert_eq!(defs.clauses("one", 3).unwrap().len(), 12);
        assert_eq!(defs.clauses("onep", 3).unwrap().len(), 8);
        assert_eq!(defs.clauses("bisim", 2).unwrap().len(), 1);
        assert_eq!(defs.clauses("sat", 2).unwrap().len(), 11);
        assert_eq!(defs.clauses("example", 2).unwrap().len(), 7);
        assert_eq!(defs.clauses("assert", 1).unwrap().len(), 1);
    }

    #[test]
    fn predicate_levels() {
        let defs = load_corpus();
        assert_eq!(defs.level_of("one", 3), Level::Zero);
        assert_eq!(defs.level_of("onep", 3), Level::Zero);
        assert_eq!(defs.level_of("example", 2), Level::Zero);
        assert_eq!(defs.level_of("bisim", 2), Level::One);
        assert_eq!(defs.level_of("sat", 2), Level::One);
    }

    #[test]
    fn bisim_body_is_a_six_way_conjunction() {
        let defs = load_corpus();
        let clause = &defs.clauses("bisim", 2).unwrap()[0];
        fn conjuncts(f: &Formula) -> usize {
            match f {
                Formula::And(a, b) => conjuncts(a) + conjuncts(b),
                _ => 1,
            }
        }
        assert_eq!(conjuncts(&clause.body), 6);
    }

    #[test]
    fn example_processes_are_closed() {
        let defs = load_corpus();
        for clause in defs.clauses("example", 2).unwrap() {
            let mut vars = Vec::new();
            crate::term::vars_of(&clause.head, &mut vars);
            assert!(vars.is_empty());
            assert!(clause.names.is_empty(), "example clause has free names");
        }
    }

    #[test]
    fn example_4_single_tau_transition() {
        let a = run_corpus_query("example 4 P, one P A Q").unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a[0][1], "A = tau");
        assert_eq!(a[0][2], "Q = z");
    }

    #[test]
    fn example_1_free_transitions_in_clause_order() {
        let a = run_corpus_query("example 1 P, one P A Q").unwrap();
        assert_eq!(a.len(), 2, "free output then internal communication");
        assert_eq!(a[0][1], "A = up x a");
        assert_eq!(a[1][1], "A = tau");
        assert_eq!(a[1][2], "Q = par z z");
    }

    #[test]
    fn example_1_bound_transitions() {
        let a = run_corpus_query("example 1 P, onep P A M").unwrap();
        assert_eq!(a.len(), 1, "only the input side steps");
        assert_eq!(a[0][1], "A = dn x");
    }

    #[test]
    fn example_5_restriction_hides_the_output() {
        // the name x is restricted: no free transition survives except tau
        let a = run_corpus_query("example 5 P, one P A Q").unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a[0][1], "A = tau");
    }

    #[test]
    fn headline_cases() {
        for case in corpus_cases() {
            let n = run_corpus_query(case.query).unwrap().len();
            match case.expect {
                Expect::Succeed => assert!(n > 0, "{} should succeed", case.name),
                Expect::Fail => assert_eq!(n, 0, "{} should fail", case.name),
            }
        }
    }

    #[test]
    fn bisim_is_symmetric_on_examples() {
        let ab = run_corpus_query("example 2 P, example 6 Q, bisim P Q").unwrap();
        let ba = run_corpus_query("example 6 P, example 2 Q, bisim P Q").unwrap();
        assert!(!ab.is_empty());
        assert_eq!(ab.is_empty(), ba.is_empty());
        // and the failing pair fails both ways
        assert!(run_corpus_query("example 3 P, example 2 Q, bisim P Q")
            .unwrap()
            .is_empty());
    }

    #[test]
    fn modal_duality_spot_check() {
        // example 4 can do tau: the diamond holds and its negation fails
        assert_eq!(
            run_corpus_query("example 4 P, sat P (diaAct tau top)")
                .unwrap()
                .len(),
            1
        );
        // the equivalent level-0 transition goal cannot be refuted
        assert!(
            run_corpus_query("example 4 P, ((sigma Q\\ one P tau Q) => false)")
                .unwrap()
                .is_empty()
        );
        // example 0 is stuck: the box formula holds vacuously
        assert_eq!(
            run_corpus_query("example 0 P, sat P (boxAct tau bot)")
                .unwrap()
                .len(),
            1
        );
    }
}
