//! A two-level logic programming engine over lambda-tree syntax, with
//! higher-order pattern unification and lazily memoized answer streams.

pub mod corpus;
pub mod defs;
pub mod engine;
pub mod formula;
pub mod stream;
pub mod syntax;
pub mod term;
pub mod testgen;
pub mod unify;

pub use defs::{Clause, DefError, Defs};
pub use engine::{format_bindings, prepare, solve, AnswerStream, Ctx, EngineError, PreparedQuery};
pub use formula::Formula;
pub use stream::Stream;
pub use syntax::{parse_goal, parse_program, ParseError, SourceGoal};
pub use term::{Level, Local, LocalSig, Session, Substitution, Sym, Term, Var, VarId, VarKind};
pub use unify::{unify, UnifyOutcome};
