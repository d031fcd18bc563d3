//! Untyped λ-terms.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::types::ParseError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Abs(String, Box<Term>),
    App(Box<Term>, Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpineError {
    #[error("term is an abstraction, not a spine")]
    Abstraction,
    #[error("term has a redex at its head")]
    NotNormal,
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn abs(binder: impl Into<String>, body: Term) -> Term {
        Term::Abs(binder.into(), Box::new(body))
    }

    pub fn app(function: Term, argument: Term) -> Term {
        Term::App(Box::new(function), Box::new(argument))
    }

    /// `head a1 ... ak`.
    pub fn spine(head: impl Into<String>, arguments: impl IntoIterator<Item = Term>) -> Term {
        arguments.into_iter().fold(Term::var(head), Term::app)
    }

    /// `\b1. \b2. ... body`.
    pub fn abstractions<S: Into<String>>(binders: impl IntoIterator<Item = S>, body: Term) -> Term {
        let binders: Vec<String> = binders.into_iter().map(Into::into).collect();
        binders
            .into_iter()
            .rev()
            .fold(body, |acc, b| Term::abs(b, acc))
    }

    /// True iff no subterm has the shape `(\x. B) A`.
    pub fn is_beta_normal(&self) -> bool {
        match self {
            Term::Var(_) => true,
            Term::Abs(_, body) => body.is_beta_normal(),
            Term::App(f, a) => {
                !matches!(**f, Term::Abs(..)) && f.is_beta_normal() && a.is_beta_normal()
            }
        }
    }

    /// Split a normal non-abstraction into its head variable and arguments.
    pub fn spine_decompose(&self) -> Result<(&str, Vec<&Term>), SpineError> {
        let mut args = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Term::Var(x) => {
                    args.reverse();
                    return Ok((x, args));
                }
                Term::App(f, a) => {
                    args.push(&**a);
                    cur = f;
                }
                Term::Abs(..) if args.is_empty() => return Err(SpineError::Abstraction),
                Term::Abs(..) => return Err(SpineError::NotNormal),
            }
        }
    }

    /// Number of syntax nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Abs(_, b) => 1 + b.size(),
            Term::App(f, a) => 1 + f.size() + a.size(),
        }
    }

    /// Nesting depth of binders and spines: a variable has height 1, an
    /// abstraction one more than its body, and a spine `x a1 .. ak` one more
    /// than its tallest argument.
    pub fn height(&self) -> usize {
        match self {
            Term::Abs(_, b) => 1 + b.height(),
            _ => match self.spine_decompose() {
                Ok((_, args)) => 1 + args.iter().map(|a| a.height()).max().unwrap_or(0),
                Err(_) => match self {
                    Term::App(f, a) => 1 + f.height().max(a.height()),
                    _ => unreachable!(),
                },
            },
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        fn go(t: &Term, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match t {
                Term::Var(x) => {
                    if !bound.contains(x) {
                        out.insert(x.clone());
                    }
                }
                Term::Abs(x, b) => {
                    bound.push(x.clone());
                    go(b, bound, out);
                    bound.pop();
                }
                Term::App(f, a) => {
                    go(f, bound, out);
                    go(a, bound, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Number of occurrences of `name` in head position of a spine.
    pub fn count_head_uses(&self, name: &str) -> usize {
        match self {
            Term::Var(x) => usize::from(x == name),
            Term::Abs(_, b) => b.count_head_uses(name),
            Term::App(..) => match self.spine_decompose() {
                Ok((h, args)) => {
                    usize::from(h == name)
                        + args.iter().map(|a| a.count_head_uses(name)).sum::<usize>()
                }
                Err(_) => 0,
            },
        }
    }

    fn nameless(&self) -> Nameless {
        fn go(t: &Term, scope: &mut Vec<String>) -> Nameless {
            match t {
                Term::Var(x) => match scope.iter().rev().position(|b| b == x) {
                    Some(i) => Nameless::Bound(i),
                    None => Nameless::Free(x.clone()),
                },
                Term::Abs(x, b) => {
                    scope.push(x.clone());
                    let body = go(b, scope);
                    scope.pop();
                    Nameless::Abs(Box::new(body))
                }
                Term::App(f, a) => Nameless::App(Box::new(go(f, scope)), Box::new(go(a, scope))),
            }
        }
        go(self, &mut Vec::new())
    }

    /// Equality up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Term) -> bool {
        self.nameless() == other.nameless()
    }
}

#[derive(PartialEq, Eq)]
enum Nameless {
    Free(String),
    Bound(usize),
    Abs(Box<Nameless>),
    App(Box<Nameless>, Box<Nameless>),
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => f.write_str(x),
            Term::Abs(x, b) => write!(f, "\\{x}. {b}"),
            Term::App(fun, arg) => {
                match **fun {
                    Term::Abs(..) => write!(f, "({fun})")?,
                    _ => write!(f, "{fun}")?,
                }
                match **arg {
                    Term::Var(ref x) => write!(f, " {x}"),
                    _ => write!(f, " ({arg})"),
                }
            }
        }
    }
}

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

struct TermParser<'a> {
    src: &'a str,
    pos: usize,
}

impl TermParser<'_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::at(self.src, self.pos, msg)
    }

    fn name(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.src[self.pos..].chars().next() {
            Some(c) if is_name_start(c) => {}
            _ => return Err(self.err("expected a variable name")),
        }
        while let Some(c) = self.src[self.pos..].chars().next() {
            if is_name_char(c) {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(c @ ('\\' | 'λ')) => {
                self.pos += c.len_utf8();
                let binder = self.name()?;
                if self.peek() != Some('.') {
                    return Err(self.err("expected `.` after binder"));
                }
                self.pos += 1;
                let body = self.term()?;
                Ok(Term::abs(binder, body))
            }
            _ => self.app(),
        }
    }

    fn app(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.atom()?;
        loop {
            match self.peek() {
                Some(c) if is_name_start(c) || c == '(' => {
                    let arg = self.atom()?;
                    acc = Term::app(acc, arg);
                }
                // A trailing abstraction is the last argument.
                Some('\\' | 'λ') => {
                    let arg = self.term()?;
                    return Ok(Term::app(acc, arg));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.term()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if is_name_start(c) => Ok(Term::Var(self.name()?)),
            Some(c) => Err(self.err(format!("unexpected character `{c}`"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parse a term. `\x. M` extends as far right as possible; application is
/// left-associative.
pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = TermParser { src, pos: 0 };
    let t = p.term()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(t)
}

pub fn print_term(m: &Term) -> String {
    m.to_string()
}

impl std::str::FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Term, ParseError> {
        parse_term(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn parse_basics() {
        assert_eq!(p("\\x. x"), Term::abs("x", Term::var("x")));
        assert_eq!(
            p("xt y1 xf"),
            Term::app(Term::app(Term::var("xt"), Term::var("y1")), Term::var("xf"))
        );
        assert_eq!(p("λx.x"), p("\\x. x"));
        assert_eq!(p("f \\x. x"), Term::app(Term::var("f"), p("\\x. x")));
        assert_eq!(p("(\\x. x) y"), Term::app(p("\\x.x"), Term::var("y")));
    }

    #[test]
    fn round_trip_up_to_alpha() {
        for s in [
            "\\x.\\y. x y",
            "x0 (\\y2. xt y1 xf)",
            "(\\x. x) (\\y. y) z",
            "f (g x) (\\z. z)",
        ] {
            let t = p(s);
            let back = p(&print_term(&t));
            assert!(back.alpha_eq(&t), "{s}");
            assert_eq!(back, t);
        }
    }

    #[test]
    fn beta_normality() {
        assert!(p("\\x. x").is_beta_normal());
        assert!(!p("(\\x. x) y").is_beta_normal());
        assert!(p("xt y1 xf").is_beta_normal());
        assert!(!p("f ((\\x. x) y)").is_beta_normal());
        assert!(!p("\\z. (\\x. x) z").is_beta_normal());
    }

    #[test]
    fn spines() {
        let t = p("xf");
        assert_eq!(t.spine_decompose().unwrap(), ("xf", vec![]));
        let t = p("xt y1 xf");
        let (h, args) = t.spine_decompose().unwrap();
        assert_eq!(h, "xt");
        assert_eq!(args, vec![&Term::var("y1"), &Term::var("xf")]);
        let t = p("x (\\y. y)");
        let (h, args) = t.spine_decompose().unwrap();
        assert_eq!((h, args), ("x", vec![&p("\\y. y")]));
        assert_eq!(p("\\x. x").spine_decompose(), Err(SpineError::Abstraction));
        assert_eq!(
            p("(\\x. x) y").spine_decompose(),
            Err(SpineError::NotNormal)
        );
    }

    #[test]
    fn alpha_equivalence() {
        assert!(p("\\x. x").alpha_eq(&p("\\y. y")));
        assert!(!p("\\x. \\y. x").alpha_eq(&p("\\x. \\y. y")));
        assert!(!p("\\x. z").alpha_eq(&p("\\x. w")));
        // shadowing
        assert!(p("\\x. \\x. x").alpha_eq(&p("\\a. \\b. b")));
    }

    #[test]
    fn measures() {
        assert_eq!(p("x").height(), 1);
        assert_eq!(p("\\x. x").height(), 2);
        assert_eq!(p("xt y1 xf").height(), 2);
        assert_eq!(p("xt y1 xf").size(), 5);
        assert_eq!(p("\\z. z").size(), 2);
        assert_eq!(
            p("xs (\\y2. xs (\\y3. x0 (\\y4. y1)))").count_head_uses("xs"),
            2
        );
        assert_eq!(
            p("\\x. y x").free_vars().into_iter().collect::<Vec<_>>(),
            vec!["y"]
        );
    }

    #[test]
    fn syntax_errors() {
        assert!(parse_term("\\x x").is_err());
        assert!(parse_term("(x").is_err());
        assert!(parse_term("").is_err());
        let e = parse_term("x )").unwrap_err();
        assert_eq!(e.column, 3);
    }
}
