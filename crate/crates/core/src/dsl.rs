//! Text format for equation systems.
//!
//! ```text
//! index 2
//! # the stream of ones
//! x = [1, $x]
//! y = <1 ; $y>
//! ```
//!
//! `1` is the atom, `0` the empty tuple-of-itself, `[t, ...]` an `I`-tuple,
//! `$x` a variable, and `<t ; u>` a variant pair padded to full arity with `0`.
//! A right-hand side must be the atom or a tuple; a bare `$x` is rejected.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::coalg::{IndexSet, NodeShape, RegularElement};
use crate::eqsolve::{EquationSystem, Leaf, TermX};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(usize),
    Dollar,
    Eq,
    LBracket,
    RBracket,
    LAngle,
    RAngle,
    Comma,
    Semi,
    Newline,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Nat(n) => format!("`{n}`"),
            Tok::Dollar => "`$`".into(),
            Tok::Eq => "`=`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LAngle => "`<`".into(),
            Tok::RAngle => "`>`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn error(self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    for (l, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let pos = Pos {
                line: l + 1,
                column: i + 1,
            };
            let c = chars[i];
            let single = match c {
                '$' => Some(Tok::Dollar),
                '=' => Some(Tok::Eq),
                '[' => Some(Tok::LBracket),
                ']' => Some(Tok::RBracket),
                '<' => Some(Tok::LAngle),
                '>' => Some(Tok::RAngle),
                ',' => Some(Tok::Comma),
                ';' => Some(Tok::Semi),
                _ => None,
            };
            if let Some(tok) = single {
                out.push((tok, pos));
                i += 1;
            } else if c == '#' {
                break;
            } else if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let n = text
                    .parse()
                    .map_err(|_| pos.error(format!("number `{text}` is too large")))?;
                out.push((Tok::Nat(n), pos));
            } else if is_ident_start(c) {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            } else {
                return Err(pos.error(format!("unexpected character `{c}`")));
            }
        }
        out.push((
            Tok::Newline,
            Pos {
                line: l + 1,
                column: chars.len() + 1,
            },
        ));
    }
    let end = Pos {
        line: src.lines().count().max(1),
        column: src.lines().last().map_or(1, |l| l.chars().count() + 1),
    };
    out.push((Tok::Eof, end));
    Ok(out)
}

#[derive(Debug)]
enum Ast {
    One,
    Zero,
    Var(String, Pos),
    Tuple(Vec<Ast>, Pos),
    Pair(Box<Ast>, Box<Ast>, Pos),
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, Pos) {
        &self.toks[self.at]
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn skip_newlines(&mut self) {
        while self.peek().0 == Tok::Newline {
            self.next();
        }
    }

    fn expect(&mut self, want: Tok) -> Result<Pos> {
        let (tok, pos) = self.next();
        if tok == want {
            Ok(pos)
        } else {
            Err(pos.error(format!("expected {}, found {}", want.describe(), tok.describe())))
        }
    }

    fn end_of_line(&mut self) -> Result<()> {
        match self.next() {
            (Tok::Newline | Tok::Eof, _) => Ok(()),
            (tok, pos) => Err(pos.error(format!("expected end of line, found {}", tok.describe()))),
        }
    }

    fn ident(&mut self) -> Result<(String, Pos)> {
        match self.next() {
            (Tok::Ident(name), pos) => Ok((name, pos)),
            (tok, pos) => Err(pos.error(format!("expected a name, found {}", tok.describe()))),
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let (tok, pos) = self.next();
        match tok {
            Tok::Nat(1) => Ok(Ast::One),
            Tok::Nat(0) => Ok(Ast::Zero),
            Tok::Dollar => {
                let (name, _) = self.ident()?;
                Ok(Ast::Var(name, pos))
            }
            Tok::LBracket => {
                let mut items = vec![self.term()?];
                loop {
                    match self.next() {
                        (Tok::Comma, _) => items.push(self.term()?),
                        (Tok::RBracket, _) => break,
                        (tok, p) => {
                            return Err(p.error(format!("expected `,` or `]`, found {}", tok.describe())))
                        }
                    }
                }
                Ok(Ast::Tuple(items, pos))
            }
            Tok::LAngle => {
                let a = self.term()?;
                self.expect(Tok::Semi)?;
                let b = self.term()?;
                self.expect(Tok::RAngle)?;
                Ok(Ast::Pair(Box::new(a), Box::new(b), pos))
            }
            other => Err(pos.error(format!("expected a term, found {}", other.describe()))),
        }
    }
}

struct Lowering<'a> {
    index: IndexSet,
    defined: &'a HashMap<String, Pos>,
}

impl Lowering<'_> {
    fn zero(&self) -> Leaf {
        Leaf::Const(RegularElement::zero(self.index))
    }

    fn term(&self, ast: &Ast) -> Result<TermX> {
        match ast {
            Ast::One => Ok(TermX::Atom),
            Ast::Zero => Ok(TermX::Tuple(vec![self.zero(); self.index.size()])),
            Ast::Var(name, pos) => Err(pos.error(format!(
                "`${name}` cannot stand alone as a right-hand side; wrap it in a tuple"
            ))),
            Ast::Tuple(items, pos) => {
                if items.len() != self.index.size() {
                    return Err(pos.error(format!(
                        "tuple has {} components but the index set has {}",
                        items.len(),
                        self.index.size()
                    )));
                }
                Ok(TermX::Tuple(
                    items.iter().map(|t| self.leaf(t)).collect::<Result<_>>()?,
                ))
            }
            Ast::Pair(a, b, pos) => {
                if self.index.size() < 2 {
                    return Err(pos.error(format!(
                        "pair sugar needs an index set of size at least 2, got {}",
                        self.index.size()
                    )));
                }
                let mut leaves = vec![self.leaf(a)?, self.leaf(b)?];
                leaves.resize_with(self.index.size(), || self.zero());
                Ok(TermX::Tuple(leaves))
            }
        }
    }

    fn leaf(&self, ast: &Ast) -> Result<Leaf> {
        match ast {
            Ast::Zero => Ok(self.zero()),
            Ast::Var(name, pos) => {
                if self.defined.contains_key(name) {
                    Ok(Leaf::Var(name.clone()))
                } else {
                    Err(pos.error(format!("unbound variable `{name}`")))
                }
            }
            _ => Ok(Leaf::Sub(self.term(ast)?)),
        }
    }
}

/// Parses a system. Errors carry the line and column of the offending token.
pub fn parse_system(src: &str) -> Result<EquationSystem> {
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
    };
    p.skip_newlines();
    let (kw, pos) = p.ident()?;
    if kw != "index" {
        return Err(pos.error(format!("expected `index`, found `{kw}`")));
    }
    let size = match p.next() {
        (Tok::Nat(0), pos) => return Err(pos.error("the index set must be non-empty")),
        (Tok::Nat(n), _) => n,
        (tok, pos) => return Err(pos.error(format!("expected the index size, found {}", tok.describe()))),
    };
    p.end_of_line()?;

    let mut raw = Vec::new();
    let mut defined = HashMap::new();
    loop {
        p.skip_newlines();
        if p.peek().0 == Tok::Eof {
            break;
        }
        let (name, pos) = p.ident()?;
        p.expect(Tok::Eq)?;
        let rhs = p.term()?;
        p.end_of_line()?;
        if let Some(first) = defined.insert(name.clone(), pos) {
            return Err(pos.error(format!(
                "`{name}` is already defined on line {}",
                first.line
            )));
        }
        raw.push((name, rhs));
    }

    let lower = Lowering {
        index: IndexSet::new(size),
        defined: &defined,
    };
    let equations = raw
        .iter()
        .map(|(name, rhs)| Ok((name.clone(), lower.term(rhs)?)))
        .collect::<Result<Vec<_>>>()?;
    EquationSystem::new(lower.index, equations)
}

/// Renders a system in the format [`parse_system`] reads.
///
/// Constants other than `0` and `1` have no literal syntax, so each is written
/// out as auxiliary equations over fresh names.
pub fn render_system(sys: &EquationSystem) -> String {
    let existing: BTreeSet<&str> = sys.variables().map(String::as_str).collect();
    let mut prefix = String::from("_k");
    while existing.iter().any(|v| v.starts_with(&prefix)) {
        prefix.insert(0, '_');
    }
    let mut r = Renderer {
        index: sys.index(),
        prefix,
        aux: Vec::new(),
        consts: 0,
    };
    let mut out = format!("index {}\n", sys.index().size());
    for (var, term) in sys.equations() {
        let rhs = r.term(term);
        writeln!(out, "{var} = {rhs}").unwrap();
    }
    for line in &r.aux {
        writeln!(out, "{line}").unwrap();
    }
    out
}

struct Renderer {
    index: IndexSet,
    prefix: String,
    aux: Vec<String>,
    consts: usize,
}

impl Renderer {
    fn term(&mut self, t: &TermX) -> String {
        match t {
            TermX::Atom => "1".into(),
            TermX::Tuple(leaves) => {
                let parts: Vec<String> = leaves.iter().map(|l| self.leaf(l)).collect();
                format!("[{}]", parts.join(", "))
            }
        }
    }

    fn leaf(&mut self, l: &Leaf) -> String {
        match l {
            Leaf::Var(v) => format!("${v}"),
            Leaf::Sub(t) => self.term(t),
            Leaf::Const(c) => self.constant(c),
        }
    }

    fn constant(&mut self, c: &RegularElement) -> String {
        if c.is_atom() {
            return "1".into();
        }
        let zero = RegularElement::zero(self.index);
        if c.bisim(&zero).is_ok_and(|v| v.is_bisimilar()) {
            return "0".into();
        }
        let c = c.minimize();
        let n = self.consts;
        self.consts += 1;
        let name = |s: usize| format!("{}{n}_{s}", self.prefix);
        for (s, shape) in c.coalgebra().shapes().iter().enumerate() {
            let rhs = match shape {
                NodeShape::Atom => "1".to_string(),
                NodeShape::Tuple(children) => {
                    let parts: Vec<String> = children.iter().map(|&k| format!("${}", name(k))).collect();
                    format!("[{}]", parts.join(", "))
                }
            };
            self.aux.push(format!("{} = {rhs}", name(s)));
        }
        format!("${}", name(c.root()))
    }
}
