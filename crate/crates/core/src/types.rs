//! Intersection types in ACI-canonical form.
//!
//! A [`Type`] can only be built through the smart constructors below, so every
//! value is canonical: intersections are flattened, duplicate-free, sorted and
//! have at least two members. Structural equality is therefore equality modulo
//! idempotence, commutativity and associativity of `&`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Mark atoms used by the encodings. They live in the same flat namespace as
/// user symbols, which is why machine alphabets may not reuse these names.
pub const MARK_LEFT: &str = "l";
pub const MARK_RIGHT: &str = "r";
pub const MARK_DOT: &str = "dot";
pub const MARK_CIRC: &str = "circ";
pub const MARK_STAR: &str = "star";
pub const MARK_HASH: &str = "hash";
pub const MARK_DOLLAR: &str = "dollar";
/// The blank tape symbol.
pub const BLANK: &str = "_";

pub const RESERVED_MARKS: [&str; 7] = [
    MARK_LEFT,
    MARK_RIGHT,
    MARK_DOT,
    MARK_CIRC,
    MARK_STAR,
    MARK_HASH,
    MARK_DOLLAR,
];

pub fn is_reserved_mark(name: &str) -> bool {
    RESERVED_MARKS.contains(&name)
}

/// A type atom. Composite state/symbol atoms are rendered `q@a`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(Arc<str>);

impl Atom {
    pub fn new(name: impl AsRef<str>) -> Self {
        Atom(Arc::from(name.as_ref()))
    }

    /// The atom `⟨state, symbol⟩`.
    pub fn pair(state: &str, symbol: &str) -> Self {
        Atom::new(format!("{state}@{symbol}"))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Node {
    Atom(Atom),
    Arrow(Type, Type),
    Inter(Vec<Type>),
}

/// A canonical intersection type. Cloning is cheap.
///
/// The total order is the structural one: atoms (by name) before arrows
/// (source, then target) before intersections (member list).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Type(Arc<Node>);

/// Borrowed view of the top-level constructor of a [`Type`].
#[derive(Clone, Copy, Debug)]
pub enum Shape<'a> {
    Atom(&'a Atom),
    Arrow(&'a Type, &'a Type),
    Inter(&'a [Type]),
}

impl Type {
    pub fn atom(name: impl AsRef<str>) -> Type {
        Type(Arc::new(Node::Atom(Atom::new(name))))
    }

    pub fn from_atom(atom: Atom) -> Type {
        Type(Arc::new(Node::Atom(atom)))
    }

    pub fn arrow(source: Type, target: Type) -> Type {
        Type(Arc::new(Node::Arrow(source, target)))
    }

    /// Right-nested arrow `a1 -> a2 -> ... -> target`.
    pub fn arrows(arguments: impl IntoIterator<Item = Type>, target: Type) -> Type {
        let args: Vec<Type> = arguments.into_iter().collect();
        args.into_iter()
            .rev()
            .fold(target, |acc, arg| Type::arrow(arg, acc))
    }

    /// Canonical intersection of the given types, or `None` if there are none.
    pub fn try_intersection(members: impl IntoIterator<Item = Type>) -> Option<Type> {
        let mut set = BTreeSet::new();
        for m in members {
            match &*m.0 {
                Node::Inter(inner) => set.extend(inner.iter().cloned()),
                _ => {
                    set.insert(m);
                }
            }
        }
        let mut flat: Vec<Type> = set.into_iter().collect();
        match flat.len() {
            0 => None,
            1 => flat.pop(),
            _ => Some(Type(Arc::new(Node::Inter(flat)))),
        }
    }

    /// Canonical intersection of a non-empty collection.
    ///
    /// Panics on an empty collection; there is no top type.
    pub fn intersection(members: impl IntoIterator<Item = Type>) -> Type {
        Type::try_intersection(members).expect("intersection of zero types")
    }

    pub fn shape(&self) -> Shape<'_> {
        match &*self.0 {
            Node::Atom(a) => Shape::Atom(a),
            Node::Arrow(s, t) => Shape::Arrow(s, t),
            Node::Inter(ms) => Shape::Inter(ms),
        }
    }

    pub fn as_atom(&self) -> Option<&Atom> {
        match &*self.0 {
            Node::Atom(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_arrow(&self) -> Option<(&Type, &Type)> {
        match &*self.0 {
            Node::Arrow(s, t) => Some((s, t)),
            _ => None,
        }
    }

    pub fn is_intersection(&self) -> bool {
        matches!(&*self.0, Node::Inter(_))
    }

    /// Top-level intersection members; a non-intersection is its own sole member.
    pub fn members(&self) -> &[Type] {
        match &*self.0 {
            Node::Inter(ms) => ms,
            _ => std::slice::from_ref(self),
        }
    }

    /// Leivant rank: 0 for simple types, intersections count one level,
    /// arrow sources one more.
    pub fn rank(&self) -> usize {
        if self.is_simple() {
            return 0;
        }
        match &*self.0 {
            Node::Atom(_) => 0,
            Node::Inter(ms) => ms.iter().map(Type::rank).max().unwrap_or(0).max(1),
            Node::Arrow(s, t) => (1 + s.rank()).max(t.rank()),
        }
    }

    /// Arrow nesting depth to the left of arrows.
    pub fn order(&self) -> usize {
        match &*self.0 {
            Node::Atom(_) => 0,
            Node::Inter(ms) => ms.iter().map(Type::order).max().unwrap_or(0),
            Node::Arrow(s, t) => (1 + s.order()).max(t.order()),
        }
    }

    /// True iff the type mentions no intersection.
    pub fn is_simple(&self) -> bool {
        match &*self.0 {
            Node::Atom(_) => true,
            Node::Arrow(s, t) => s.is_simple() && t.is_simple(),
            Node::Inter(_) => false,
        }
    }

    /// Every atom occurring anywhere in the type.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match &*self.0 {
            Node::Atom(a) => {
                out.insert(a.clone());
            }
            Node::Arrow(s, t) => {
                s.collect_atoms(out);
                t.collect_atoms(out);
            }
            Node::Inter(ms) => ms.iter().for_each(|m| m.collect_atoms(out)),
        }
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        match &*self.0 {
            Node::Atom(_) => 1,
            Node::Arrow(s, t) => 1 + s.size() + t.size(),
            Node::Inter(ms) => 1 + ms.iter().map(Type::size).sum::<usize>(),
        }
    }
}

impl fmt::Debug for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Node::Atom(a) => f.write_str(a.name()),
            Node::Arrow(s, t) => {
                if s.as_arrow().is_some() {
                    write!(f, "({s}) -> {t}")
                } else {
                    write!(f, "{s} -> {t}")
                }
            }
            Node::Inter(ms) => {
                for (i, m) in ms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" & ")?;
                    }
                    if m.as_arrow().is_some() {
                        write!(f, "({m})")?;
                    } else {
                        write!(f, "{m}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// An un-normalised type tree, as written by a user or produced by a parser.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawType {
    Atom(String),
    Arrow(Box<RawType>, Box<RawType>),
    Inter(Box<RawType>, Box<RawType>),
}

impl RawType {
    pub fn atom(name: &str) -> RawType {
        RawType::Atom(name.to_string())
    }

    pub fn arrow(s: RawType, t: RawType) -> RawType {
        RawType::Arrow(Box::new(s), Box::new(t))
    }

    pub fn inter(s: RawType, t: RawType) -> RawType {
        RawType::Inter(Box::new(s), Box::new(t))
    }
}

impl From<&Type> for RawType {
    fn from(t: &Type) -> RawType {
        match t.shape() {
            Shape::Atom(a) => RawType::Atom(a.name().to_string()),
            Shape::Arrow(s, t) => RawType::arrow(s.into(), t.into()),
            Shape::Inter(ms) => {
                let mut it = ms.iter().map(RawType::from);
                let first = it.next().expect("intersection has members");
                it.fold(first, RawType::inter)
            }
        }
    }
}

/// ACI normal form of a raw type tree.
pub fn canonicalize(raw: &RawType) -> Type {
    match raw {
        RawType::Atom(a) => Type::atom(a),
        RawType::Arrow(s, t) => Type::arrow(canonicalize(s), canonicalize(t)),
        RawType::Inter(s, t) => Type::intersection([canonicalize(s), canonicalize(t)]),
    }
}

/// One arrow chain `arguments -> target` of a type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub arguments: Vec<Type>,
    pub target: Atom,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComponentError {
    #[error("target not atomic: `{0}` ends in an intersection; split the goal first")]
    TargetNotAtomic(Type),
}

/// Argument lists and atomic targets of each top-level member, in canonical
/// member order.
pub fn arrow_components(t: &Type) -> Result<Vec<Component>, ComponentError> {
    t.members()
        .iter()
        .map(|member| {
            let mut arguments = Vec::new();
            let mut cur = member;
            loop {
                match cur.shape() {
                    Shape::Atom(a) => {
                        return Ok(Component {
                            arguments,
                            target: a.clone(),
                        })
                    }
                    Shape::Arrow(s, t) => {
                        arguments.push(s.clone());
                        cur = t;
                    }
                    Shape::Inter(_) => return Err(ComponentError::TargetNotAtomic(member.clone())),
                }
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn at(src: &str, offset: usize, message: impl Into<String>) -> ParseError {
        let before = &src[..offset.min(src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError {
            offset,
            line,
            column,
            message: message.into(),
        }
    }
}

pub fn is_atom_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '@'
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Arrow,
    Amp,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(n) => write!(f, "`{n}`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
        }
    }
}

fn lex_type(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                out.push((i, Tok::LParen));
            }
            ')' => {
                chars.next();
                out.push((i, Tok::RParen));
            }
            '&' => {
                chars.next();
                out.push((i, Tok::Amp));
            }
            '-' => {
                chars.next();
                match chars.next() {
                    Some((_, '>')) => out.push((i, Tok::Arrow)),
                    _ => return Err(ParseError::at(src, i, "expected `->`")),
                }
            }
            c if is_atom_char(c) && c != '@' => {
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if is_atom_char(d) {
                        end = j + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((i, Tok::Name(src[i..end].to_string())));
            }
            other => {
                return Err(ParseError::at(
                    src,
                    i,
                    format!("unexpected character `{other}`"),
                ))
            }
        }
    }
    Ok(out)
}

struct TypeParser<'a> {
    src: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl TypeParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.src.len(), |(o, _)| *o)
    }

    fn ty(&mut self) -> Result<RawType, ParseError> {
        let lhs = self.iseg()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.ty()?;
            Ok(RawType::arrow(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn iseg(&mut self) -> Result<RawType, ParseError> {
        let mut acc = self.prim()?;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            let rhs = self.prim()?;
            acc = RawType::inter(acc, rhs);
        }
        Ok(acc)
    }

    fn prim(&mut self) -> Result<RawType, ParseError> {
        let offset = self.offset();
        match self.toks.get(self.pos).map(|(_, t)| t.clone()) {
            Some(Tok::Name(n)) => {
                self.pos += 1;
                Ok(RawType::Atom(n))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.ty()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(ParseError::at(self.src, self.offset(), "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(tok) => Err(ParseError::at(
                self.src,
                offset,
                format!("expected an atom or `(`, found {tok}"),
            )),
            None => Err(ParseError::at(self.src, offset, "unexpected end of input")),
        }
    }
}

/// Parse a type without normalising it.
pub fn parse_raw_type(src: &str) -> Result<RawType, ParseError> {
    let toks = lex_type(src)?;
    let mut p = TypeParser { src, toks, pos: 0 };
    let t = p.ty()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::at(src, p.offset(), "trailing input"));
    }
    Ok(t)
}

/// Parse and canonicalise. `&` binds tighter than `->`, arrows associate to
/// the right.
pub fn parse_type(src: &str) -> Result<Type, ParseError> {
    parse_raw_type(src).map(|raw| canonicalize(&raw))
}

pub fn print_type(t: &Type) -> String {
    t.to_string()
}

impl std::str::FromStr for Type {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Type, ParseError> {
        parse_type(s)
    }
}
