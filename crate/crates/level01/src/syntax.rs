//! Concrete syntax: lexer, parser and printer.
//!
//! Definition files are sequences of clauses terminated by `.`, with `%`
//! starting a comment line. `H.` abbreviates `H := true.` Connectives, in
//! decreasing order of precedence: `&`/`,` (conjunction), `;` (disjunction),
//! `=>` (implication), then the quantifiers `pi`, `sigma`, `nabla`, each
//! binding through a backslash abstraction whose body extends as far to the
//! right as the enclosing parentheses allow. `=` is an infix atom binding
//! tighter than `&`. Identifiers with a leading capital are variables,
//! implicitly quantified outside their clause (or free in a goal).

use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use crate::formula::Formula;
use crate::term::{Sym, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at {}:{}: {}",
            self.line, self.col, self.msg
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Str(String),
    LParen,
    RParen,
    Backslash,
    Dot,
    Define, // :=
    Eq,     // =
    Arrow,  // =>
    Amp,    // & and ,
    Semi,   // ;
    Eof,
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    col: usize,
}

fn err<T>(pos: Pos, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line: pos.line,
        col: pos.col,
        msg: msg.into(),
    })
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1usize;
    let mut col = 1usize;
    macro_rules! bump {
        () => {{
            let c = chars.next();
            if let Some(c) = c {
                if c == '\n' {
                    line += 1;
                    col = 1;
                } else {
                    col += 1;
                }
            }
            c
        }};
    }
    loop {
        let pos = Pos { line, col };
        let c = match chars.peek() {
            None => break,
            Some(c) => *c,
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump!();
            }
            '%' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump!();
                }
            }
            '(' => {
                bump!();
                toks.push((Tok::LParen, pos));
            }
            ')' => {
                bump!();
                toks.push((Tok::RParen, pos));
            }
            '\\' => {
                bump!();
                toks.push((Tok::Backslash, pos));
            }
            '.' => {
                bump!();
                toks.push((Tok::Dot, pos));
            }
            '&' | ',' => {
                bump!();
                toks.push((Tok::Amp, pos));
            }
            ';' => {
                bump!();
                toks.push((Tok::Semi, pos));
            }
            ':' => {
                bump!();
                if chars.peek() == Some(&'=') {
                    bump!();
                    toks.push((Tok::Define, pos));
                } else {
                    return err(pos, "expected '=' after ':'");
                }
            }
            '=' => {
                bump!();
                if chars.peek() == Some(&'>') {
                    bump!();
                    toks.push((Tok::Arrow, pos));
                } else {
                    toks.push((Tok::Eq, pos));
                }
            }
            '"' => {
                bump!();
                let mut s = String::new();
                loop {
                    match bump!() {
                        None => return err(pos, "unterminated string literal"),
                        Some('"') => break,
                        Some(c) => s.push(c),
                    }
                }
                toks.push((Tok::Str(s), pos));
            }
            c if c.is_alphanumeric() || c == '_' || c == '\'' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '\'' {
                        s.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(s), pos));
            }
            c => return err(pos, format!("unexpected character '{}'", c)),
        }
    }
    toks.push((Tok::Eof, Pos { line, col }));
    Ok(toks)
}

#[derive(Clone, Debug)]
struct Expr {
    pos: Pos,
    kind: ExprKind,
}

#[derive(Clone, Debug)]
enum ExprKind {
    Id(String),
    Str(String),
    True,
    False,
    App(Vec<Expr>),
    Abs(String, Box<Expr>),
    Quant(Quant, String, Box<Expr>),
    Eq(Box<Expr>, Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Imp(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Quant {
    Pi,
    Sigma,
    Nabla,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        let i = (self.at + 1).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            err(self.pos(), format!("expected {}", what))
        }
    }

    fn parse_expr(&mut self) -> Result<Expr, ParseError> {
        self.parse_imp()
    }

    fn parse_imp(&mut self) -> Result<Expr, ParseError> {
        let l = self.parse_or()?;
        if *self.peek() == Tok::Arrow {
            let pos = self.pos();
            self.next();
            let r = self.parse_imp()?;
            Ok(Expr {
                pos,
                kind: ExprKind::Imp(Box::new(l), Box::new(r)),
            })
        } else {
            Ok(l)
        }
    }

    fn parse_or(&mut self) -> Result<Expr, ParseError> {
        let l = self.parse_and()?;
        if *self.peek() == Tok::Semi {
            let pos = self.pos();
            self.next();
            let r = self.parse_or()?;
            Ok(Expr {
                pos,
                kind: ExprKind::Or(Box::new(l), Box::new(r)),
            })
        } else {
            Ok(l)
        }
    }

    fn parse_and(&mut self) -> Result<Expr, ParseError> {
        let l = self.parse_eq()?;
        if *self.peek() == Tok::Amp {
            let pos = self.pos();
            self.next();
            let r = self.parse_and()?;
            Ok(Expr {
                pos,
                kind: ExprKind::And(Box::new(l), Box::new(r)),
            })
        } else {
            Ok(l)
        }
    }

    fn parse_eq(&mut self) -> Result<Expr, ParseError> {
        let l = self.parse_app()?;
        if *self.peek() == Tok::Eq {
            let pos = self.pos();
            self.next();
            let r = self.parse_app()?;
            Ok(Expr {
                pos,
                kind: ExprKind::Eq(Box::new(l), Box::new(r)),
            })
        } else {
            Ok(l)
        }
    }

    fn starts_primary(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Str(_) | Tok::LParen)
    }

    fn parse_app(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        let head = self.parse_primary()?;
        let mut items = vec![head];
        while self.starts_primary() {
            items.push(self.parse_primary()?);
        }
        if items.len() == 1 {
            Ok(items.pop().unwrap())
        } else {
            Ok(Expr {
                pos,
                kind: ExprKind::App(items),
            })
        }
    }

    fn parse_primary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::LParen => {
                self.next();
                let e = self.parse_expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Str(s) => {
                self.next();
                Ok(Expr {
                    pos,
                    kind: ExprKind::Str(s),
                })
            }
            Tok::Ident(name) => {
                let quant = match name.as_str() {
                    "pi" => Some(Quant::Pi),
                    "sigma" => Some(Quant::Sigma),
                    "nabla" => Some(Quant::Nabla),
                    _ => None,
                };
                if let Some(q) = quant {
                    self.next();
                    let binder = match self.peek().clone() {
                        Tok::Ident(b) if *self.peek2() == Tok::Backslash => b,
                        _ => return err(self.pos(), format!("expected binder after '{}'", name)),
                    };
                    self.next(); // binder
                    self.next(); // backslash
                    let body = self.parse_expr()?;
                    return Ok(Expr {
                        pos,
                        kind: ExprKind::Quant(q, binder, Box::new(body)),
                    });
                }
                self.next();
                if *self.peek() == Tok::Backslash {
                    self.next();
                    let body = self.parse_expr()?;
                    return Ok(Expr {
                        pos,
                        kind: ExprKind::Abs(name, Box::new(body)),
                    });
                }
                match name.as_str() {
                    "true" => Ok(Expr {
                        pos,
                        kind: ExprKind::True,
                    }),
                    "false" => Ok(Expr {
                        pos,
                        kind: ExprKind::False,
                    }),
                    _ => Ok(Expr {
                        pos,
                        kind: ExprKind::Id(name),
                    }),
                }
            }
            _ => err(pos, "expected a term"),
        }
    }
}

/// A definition clause as written: head atom, body formula, and the
/// capitalized names implicitly quantified outside the clause (appearing as
/// `Term::Param` placeholders in head and body, indexed by position here).
#[derive(Clone, Debug)]
pub struct SourceClause {
    pub head: Rc<Term>,
    pub body: Formula,
    pub free_names: Vec<Sym>,
}

/// A goal as typed: its free capitalized names become the query's top-level
/// logic variables, whose bindings are printed.
#[derive(Clone, Debug)]
pub struct SourceGoal {
    pub formula: Formula,
    pub free_names: Vec<Sym>,
}

fn is_var_name(name: &str) -> bool {
    name.starts_with(|c: char| c.is_uppercase() || c == '_')
}

struct Elab {
    binders: Vec<String>,
    free_names: Vec<Sym>,
}

impl Elab {
    fn new() -> Elab {
        Elab {
            binders: Vec::new(),
            free_names: Vec::new(),
        }
    }

    fn term(&mut self, e: &Expr) -> Result<Rc<Term>, ParseError> {
        match &e.kind {
            ExprKind::Id(name) => {
                if let Some(i) = self.binders.iter().rev().position(|b| b == name) {
                    return Ok(Rc::new(Term::Bound(i)));
                }
                if is_var_name(name) {
                    let idx = match self.free_names.iter().position(|n| &**n == name.as_str()) {
                        Some(i) => i,
                        None => {
                            self.free_names.push(Rc::from(name.as_str()));
                            self.free_names.len() - 1
                        }
                    };
                    Ok(Rc::new(Term::Param(idx)))
                } else {
                    Ok(Term::const_(name))
                }
            }
            ExprKind::Str(s) => Ok(Rc::new(Term::Str(Rc::from(s.as_str())))),
            ExprKind::App(items) => {
                let head = self.term(&items[0])?;
                let mut args = Vec::with_capacity(items.len() - 1);
                for it in &items[1..] {
                    args.push(self.term(it)?);
                }
                Ok(crate::term::normalize(&Term::app(head, args)))
            }
            ExprKind::Abs(x, b) => {
                self.binders.push(x.clone());
                let body = self.term(b);
                self.binders.pop();
                Ok(Term::abs(x, body?))
            }
            ExprKind::True | ExprKind::False => err(e.pos, "truth constant used in term position"),
            ExprKind::Quant(_, _, _) => err(e.pos, "quantifier used in term position"),
            ExprKind::Eq(_, _) | ExprKind::And(_, _) | ExprKind::Or(_, _) | ExprKind::Imp(_, _) => {
                err(e.pos, "logical connective used in term position")
            }
        }
    }

    fn formula(&mut self, e: &Expr) -> Result<Formula, ParseError> {
        match &e.kind {
            ExprKind::True => Ok(Formula::Top),
            ExprKind::False => Ok(Formula::Bot),
            ExprKind::Eq(l, r) => {
                let lt = self.term(l)?;
                let rt = self.term(r)?;
                Ok(Formula::Atom(Term::app(Term::const_("="), vec![lt, rt])))
            }
            ExprKind::And(l, r) => Ok(Formula::and(self.formula(l)?, self.formula(r)?)),
            ExprKind::Or(l, r) => Ok(Formula::or(self.formula(l)?, self.formula(r)?)),
            ExprKind::Imp(l, r) => Ok(Formula::imp(self.formula(l)?, self.formula(r)?)),
            ExprKind::Quant(q, x, b) => {
                self.binders.push(x.clone());
                let body = self.formula(b);
                self.binders.pop();
                let body = Box::new(body?);
                let hint: Sym = Rc::from(x.as_str());
                Ok(match q {
                    Quant::Pi => Formula::All(hint, body),
                    Quant::Sigma => Formula::Ex(hint, body),
                    Quant::Nabla => Formula::Nabla(hint, body),
                })
            }
            ExprKind::Abs(_, _) => err(e.pos, "unexpected abstraction in formula position"),
            ExprKind::Id(_) | ExprKind::App(_) | ExprKind::Str(_) => {
                Ok(Formula::Atom(self.term(e)?))
            }
        }
    }
}

/// Parse a definition file: clauses separated by `.`, `%` comments ignored.
pub fn parse_program(text: &str) -> Result<Vec<SourceClause>, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0 };
    let mut clauses = Vec::new();
    while *p.peek() != Tok::Eof {
        let head_expr = p.parse_expr()?;
        let body_expr = if *p.peek() == Tok::Define {
            p.next();
            Some(p.parse_expr()?)
        } else {
            None
        };
        p.expect(Tok::Dot, "'.' at end of clause")?;
        let mut elab = Elab::new();
        let head = elab.term(&head_expr)?;
        let body = match &body_expr {
            Some(e) => elab.formula(e)?,
            None => Formula::Top,
        };
        clauses.push(SourceClause {
            head,
            body,
            free_names: elab.free_names,
        });
    }
    Ok(clauses)
}

/// Parse one goal, with an optional terminating `.`.
pub fn parse_goal(text: &str) -> Result<SourceGoal, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0 };
    let e = p.parse_expr()?;
    if *p.peek() == Tok::Dot {
        p.next();
    }
    if *p.peek() != Tok::Eof {
        return err(p.pos(), "trailing input after goal");
    }
    let mut elab = Elab::new();
    let formula = elab.formula(&e)?;
    Ok(SourceGoal {
        formula,
        free_names: elab.free_names,
    })
}

// ---------------------------------------------------------------------------
// Printing

struct Printer<'a> {
    counter: usize,
    local_names: HashMap<u64, String>,
    params: &'a [Sym],
}

impl<'a> Printer<'a> {
    fn new(params: &'a [Sym]) -> Printer<'a> {
        Printer {
            counter: 0,
            local_names: HashMap::new(),
            params,
        }
    }

    fn next_name(&mut self) -> String {
        self.counter += 1;
        format!("x{}", self.counter)
    }

    fn atom(&self, t: &Term) -> bool {
        matches!(
            t,
            Term::Const(_)
                | Term::Str(_)
                | Term::Bound(_)
                | Term::Local(_)
                | Term::Var(_)
                | Term::Param(_)
        )
    }

    fn term(&mut self, t: &Term, env: &mut Vec<String>, parens: bool) -> String {
        match t {
            Term::Const(s) => s.to_string(),
            Term::Str(s) => format!("\"{}\"", s),
            Term::Bound(k) => env
                .get(env.len().wrapping_sub(k + 1))
                .cloned()
                .unwrap_or_else(|| format!("x?{}", k)),
            Term::Local(l) => {
                if let Some(n) = self.local_names.get(&l.id) {
                    n.clone()
                } else {
                    let n = self.next_name();
                    self.local_names.insert(l.id, n.clone());
                    n
                }
            }
            Term::Var(v) => format!("_{}", v.id.0),
            Term::Param(i) => self
                .params
                .get(*i)
                .map(|s| s.to_string())
                .unwrap_or_else(|| format!("_P{}", i)),
            Term::Abs(_, b) => {
                let name = self.next_name();
                env.push(name.clone());
                let body = self.term(b, env, false);
                env.pop();
                let s = format!("{}\\{}", name, body);
                if parens {
                    format!("({})", s)
                } else {
                    s
                }
            }
            Term::App(h, args) => {
                let mut s = self.term(h, env, true);
                for a in args {
                    s.push(' ');
                    let wrap = !self.atom(a);
                    s.push_str(&self.term(a, env, wrap));
                }
                if parens {
                    format!("({})", s)
                } else {
                    s
                }
            }
        }
    }

    fn formula(&mut self, f: &Formula, env: &mut Vec<String>, prec: u8) -> String {
        // precedence: 0 lowest (=> and quantifiers), 1 ';', 2 '&', 3 atoms
        let (s, my) = match f {
            Formula::Top => ("true".to_string(), 3),
            Formula::Bot => ("false".to_string(), 3),
            Formula::Atom(t) => match &**t {
                Term::App(h, args) if args.len() == 2 && is_eq_head(h) => {
                    let l = self.term(&args[0], env, !self.atom(&args[0]));
                    let r = self.term(&args[1], env, !self.atom(&args[1]));
                    (format!("{} = {}", l, r), 3)
                }
                _ => (self.term(t, env, false), 3),
            },
            Formula::And(a, b) => {
                let l = self.formula(a, env, 3);
                let r = self.formula(b, env, 2);
                (format!("{} & {}", l, r), 2)
            }
            Formula::Or(a, b) => {
                let l = self.formula(a, env, 2);
                let r = self.formula(b, env, 1);
                (format!("{} ; {}", l, r), 1)
            }
            Formula::Imp(a, b) => {
                let l = self.formula(a, env, 1);
                let r = self.formula(b, env, 0);
                (format!("{} => {}", l, r), 0)
            }
            Formula::All(_, b) | Formula::Ex(_, b) | Formula::Nabla(_, b) => {
                let kw = match f {
                    Formula::All(_, _) => "pi",
                    Formula::Ex(_, _) => "sigma",
                    _ => "nabla",
                };
                let name = self.next_name();
                env.push(name.clone());
                let body = self.formula(b, env, 0);
                env.pop();
                (format!("{} {}\\ {}", kw, name, body), 0)
            }
        };
        if my < prec {
            format!("({})", s)
        } else {
            s
        }
    }
}

fn is_eq_head(h: &Rc<Term>) -> bool {
    matches!(&**h, Term::Const(s) if &**s == "=")
}

/// Print a term; abstraction binders and local constants are numbered
/// `x1`, `x2`, ... in binding order.
pub fn print_term(t: &Term) -> String {
    Printer::new(&[]).term(t, &mut Vec::new(), false)
}

pub fn print_term_with(t: &Term, params: &[Sym]) -> String {
    Printer::new(params).term(t, &mut Vec::new(), false)
}

/// Print a goal back in concrete syntax; reparsing yields an alpha-equal
/// formula.
pub fn print_goal(g: &SourceGoal) -> String {
    Printer::new(&g.free_names).formula(&g.formula, &mut Vec::new(), 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_append_program() {
        let text = "append nil L L.\nappend (cons X L1) L2 (cons X L3) := append L1 L2 L3.";
        let cs = parse_program(text).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0].body, Formula::Top);
        assert_eq!(cs[0].free_names.len(), 1);
        assert_eq!(cs[1].free_names.len(), 4);
        let (h, n) = cs[1].head.head_const().unwrap();
        assert_eq!(&**h, "append");
        assert_eq!(n, 3);
    }

    #[test]
    fn comment_only_file_is_empty() {
        assert!(parse_program("% only a comment\n").unwrap().is_empty());
    }

    #[test]
    fn goal_conjunction_of_implication_and_atom() {
        let g = parse_goal("(pi x\\ p x => q x) & (p a)").unwrap();
        match &g.formula {
            Formula::And(l, r) => {
                assert!(matches!(&**l, Formula::All(_, _)));
                assert!(matches!(&**r, Formula::Atom(_)));
            }
            other => panic!("expected conjunction, got {:?}", other),
        }
    }

    #[test]
    fn precedence_and_binds_tighter_than_or() {
        let g = parse_goal("a , b ; c").unwrap();
        match &g.formula {
            Formula::Or(l, _) => assert!(matches!(&**l, Formula::And(_, _))),
            other => panic!("expected disjunction at top, got {:?}", other),
        }
    }

    #[test]
    fn nabla_equation_collects_free_name() {
        let g = parse_goal("nabla x\\ x = (M x)").unwrap();
        assert_eq!(g.free_names.len(), 1);
        assert_eq!(&*g.free_names[0], "M");
        match &g.formula {
            Formula::Nabla(_, b) => match &**b {
                Formula::Atom(t) => {
                    let (h, n) = t.head_const().unwrap();
                    assert_eq!(&**h, "=");
                    assert_eq!(n, 2);
                }
                other => panic!("expected equation, got {:?}", other),
            },
            other => panic!("expected nabla, got {:?}", other),
        }
    }

    #[test]
    fn eq_binds_tighter_than_arrow() {
        let g = parse_goal("pi M\\ nabla x\\ x = M => false").unwrap();
        // pi M\ nabla x\ ((x = M) => false)
        match &g.formula {
            Formula::All(_, b) => match &**b {
                Formula::Nabla(_, b2) => assert!(matches!(&**b2, Formula::Imp(_, _))),
                other => panic!("{:?}", other),
            },
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn abstraction_as_final_application_argument() {
        let g = parse_goal("example 1 (par (in x y\\z) (out x a z))").unwrap();
        assert!(g.free_names.is_empty());
        match &g.formula {
            Formula::Atom(t) => {
                let (h, n) = t.head_const().unwrap();
                assert_eq!(&**h, "example");
                assert_eq!(n, 2);
            }
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn sigma_body_swallows_conjunction() {
        let g = parse_goal("sigma X\\ p X & q X").unwrap();
        match &g.formula {
            Formula::Ex(_, b) => assert!(matches!(&**b, Formula::And(_, _))),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn print_identity_abstraction() {
        let t = Term::abs("w", Rc::new(Term::Bound(0)));
        assert_eq!(print_term(&t), "x1\\x1");
    }

    #[test]
    fn print_constant() {
        assert_eq!(print_term(&Term::const_("a")), "a");
    }

    #[test]
    fn print_nested_abstraction_numbering() {
        let body = Term::app(
            Term::const_("par"),
            vec![Rc::new(Term::Bound(1)), Rc::new(Term::Bound(0))],
        );
        let t = Term::abs("a", Term::abs("b", body));
        assert_eq!(print_term(&t), "x1\\x2\\par x1 x2");
    }

    #[test]
    fn print_parenthesizes_compound_arguments() {
        let inner = Term::app(Term::const_("f"), vec![Term::const_("a")]);
        let t = Term::app(Term::const_("g"), vec![inner, Term::const_("b")]);
        assert_eq!(print_term(&t), "g (f a) b");
    }

    #[test]
    fn goal_round_trip_alpha_equal() {
        for src in [
            "nabla x\\ x = (M x)",
            "pi x\\ p x => q x",
            "(pi x\\ p x => q x) & (p a)",
            "a , b ; c",
            "sigma X\\ append X nil (cons a nil)",
            "pi f\\ nabla x\\ x = f x => print \"ok\"",
        ] {
            let g1 = parse_goal(src).unwrap();
            let printed = print_goal(&g1);
            let g2 = parse_goal(&printed)
                .unwrap_or_else(|e| panic!("reparse of {:?} failed: {}", printed, e));
            assert_eq!(
                g1.formula, g2.formula,
                "round trip of {:?} via {:?}",
                src, printed
            );
        }
    }

    #[test]
    fn syntax_error_has_position() {
        let e = parse_program("append nil L L").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(e.msg.contains("'.'"));
    }

    #[test]
    fn string_literals_are_atomic_constants() {
        let g = parse_goal("print \"unification succeeded\"").unwrap();
        match &g.formula {
            Formula::Atom(t) => match &**t {
                Term::App(_, args) => {
                    assert!(matches!(&*args[0], Term::Str(s) if &**s == "unification succeeded"))
                }
                other => panic!("{:?}", other),
            },
            other => panic!("{:?}", other),
        }
    }
}
