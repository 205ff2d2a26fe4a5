use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactpoly::{Indet, Poly, Rational};
use crate::lcsa::{build_named, direct_sum, Algebra, Element, NamedAlgebra, Parity, Signature};

use super::{MapDef, Model};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(&'static str),
    Eof,
}

const SYMBOLS: [&str; 19] = [
    "|->", "->", "↦", "{", "}", "[", "]", "(", ")", ",", ";", ":", "=", "+", "-", "*", "/", "^", "⊕",
];

const RESERVED: [&str; 7] = ["d", "l", "m", "x", "∂", "λ", "μ"];

fn err(pos: Pos, msg: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.line,
        col: pos.col,
        msg: msg.into(),
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '∂'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '#' || c == '\'' || c == '∂'
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push((Tok::Int(s.parse().expect("digits")), pos));
            continue;
        }
        if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            col += i - start;
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                let n = s.chars().count();
                i += n;
                col += n;
                out.push((Tok::Sym(s), pos));
            }
            None => return Err(err(pos, format!("unexpected character `{c}`"))),
        }
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(BigInt),
    Name(String, Pos),
    Add(Box<Expr>, Box<Expr>, Pos),
    Sub(Box<Expr>, Box<Expr>, Pos),
    Mul(Box<Expr>, Box<Expr>, Pos),
    Div(Box<Expr>, BigInt, Pos),
    Pow(Box<Expr>, u32, Pos),
    Neg(Box<Expr>),
}

enum Val {
    Scalar(Poly),
    Elem(Element),
}

struct Scope<'a> {
    sig: &'a Signature,
    vars: &'a [Indet],
}

impl Scope<'_> {
    fn eval(&self, e: &Expr) -> Result<Val> {
        Ok(match e {
            Expr::Num(n) => Val::Scalar(Poly::constant(Rational::from_integer(n.clone()))),
            Expr::Name(name, pos) => {
                if let Some(v) = Indet::from_name(name).ok().filter(|v| self.vars.contains(v)) {
                    Val::Scalar(Poly::var(v))
                } else if let Some(i) = self.sig.index_of(name) {
                    Val::Elem(Element::generator(self.sig.rank(), i))
                } else if RESERVED.contains(&name.as_str()) {
                    return Err(err(*pos, format!("variable `{name}` is not allowed here")));
                } else {
                    return Err(err(*pos, format!("unknown generator `{name}`")));
                }
            }
            Expr::Add(a, b, pos) | Expr::Sub(a, b, pos) => {
                let neg = matches!(e, Expr::Sub(..));
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                let b = if neg { negate(b) } else { b };
                match (a, b) {
                    (Val::Scalar(p), Val::Scalar(q)) => Val::Scalar(&p + &q),
                    (Val::Elem(x), Val::Elem(y)) => Val::Elem(&x + &y),
                    (Val::Scalar(p), Val::Elem(y)) | (Val::Elem(y), Val::Scalar(p)) if p.is_zero() => Val::Elem(y),
                    _ => return Err(err(*pos, "cannot add a scalar to an element")),
                }
            }
            Expr::Mul(a, b, pos) => match (self.eval(a)?, self.eval(b)?) {
                (Val::Scalar(p), Val::Scalar(q)) => Val::Scalar(&p * &q),
                (Val::Scalar(p), Val::Elem(y)) | (Val::Elem(y), Val::Scalar(p)) => Val::Elem(y.mul_poly(&p)),
                (Val::Elem(_), Val::Elem(_)) => return Err(err(*pos, "cannot multiply two elements")),
            },
            Expr::Div(a, n, pos) => {
                if n.is_zero() {
                    return Err(err(*pos, "division by zero"));
                }
                let inv = Rational::new(BigInt::from(1), n.clone());
                match self.eval(a)? {
                    Val::Scalar(p) => Val::Scalar(p.scale(&inv)),
                    Val::Elem(x) => Val::Elem(x.scale(&inv)),
                }
            }
            Expr::Pow(a, k, pos) => match self.eval(a)? {
                Val::Scalar(p) => Val::Scalar(p.pow(*k)),
                Val::Elem(_) => return Err(err(*pos, "cannot raise an element to a power")),
            },
            Expr::Neg(a) => negate(self.eval(a)?),
        })
    }

    fn element(&self, e: &Expr, pos: Pos) -> Result<Element> {
        match self.eval(e)? {
            Val::Elem(x) => Ok(x),
            Val::Scalar(p) if p.is_zero() => Ok(Element::zero(self.sig.rank())),
            Val::Scalar(_) => Err(err(pos, "expected an element, found a scalar")),
        }
    }
}

fn negate(v: Val) -> Val {
    match v {
        Val::Scalar(p) => Val::Scalar(-p),
        Val::Elem(x) => Val::Elem(-x),
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    model: Model,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn describe(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn expect(&mut self, sym: &'static str) -> Result<Pos> {
        let (t, pos) = self.bump();
        if t == Tok::Sym(sym) {
            Ok(pos)
        } else {
            Err(err(pos, format!("expected `{sym}`, found {}", Self::describe(&t))))
        }
    }

    fn eat(&mut self, sym: &'static str) -> bool {
        if *self.peek() == Tok::Sym(sym) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<(String, Pos)> {
        match self.bump() {
            (Tok::Ident(s), pos) => Ok((s, pos)),
            (t, pos) => Err(err(pos, format!("expected a name, found {}", Self::describe(&t)))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Pos> {
        let (s, pos) = self.ident()?;
        if s == kw {
            Ok(pos)
        } else {
            Err(err(pos, format!("expected `{kw}`, found `{s}`")))
        }
    }

    fn parity(&mut self) -> Result<Parity> {
        let (s, pos) = self.ident()?;
        match s.as_str() {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(err(pos, format!("expected `even` or `odd`, found `{s}`"))),
        }
    }

    fn file(mut self) -> Result<Model> {
        loop {
            match self.peek().clone() {
                Tok::Eof => return Ok(self.model),
                Tok::Ident(s) if s == "algebra" => self.algebra()?,
                Tok::Ident(s) if s == "map" => self.map()?,
                t => {
                    return Err(err(
                        self.pos(),
                        format!("expected `algebra` or `map`, found {}", Self::describe(&t)),
                    ))
                }
            }
        }
    }

    fn define(&mut self, name: String, pos: Pos, alg: Algebra) -> Result<()> {
        if self.model.algebras.iter().any(|(n, _)| *n == name) {
            return Err(err(pos, format!("algebra `{name}` is defined twice")));
        }
        self.model.algebras.push((name, Arc::new(alg)));
        Ok(())
    }

    fn lookup(&self, name: &str, pos: Pos) -> Result<Arc<Algebra>> {
        self.model.algebra(name).map_err(|_| err(pos, format!("unknown algebra `{name}`")))
    }

    fn algebra(&mut self) -> Result<()> {
        self.keyword("algebra")?;
        let (name, pos) = self.ident()?;
        if self.eat("=") {
            let (kind, kpos) = self.ident()?;
            let alg = match kind.as_str() {
                "builtin" => {
                    let (mut which, wpos) = self.ident()?;
                    if self.eat(":") {
                        match self.bump() {
                            (Tok::Ident(s), _) => which = format!("{which}:{s}"),
                            (Tok::Int(n), _) => which = format!("{which}:{n}"),
                            (t, p) => return Err(err(p, format!("unexpected {}", Self::describe(&t)))),
                        }
                    }
                    let named = NamedAlgebra::from_name(&which).map_err(|e| err(wpos, e.to_string()))?;
                    build_named(named).map_err(|e| err(wpos, e.to_string()))?
                }
                "direct_sum" => {
                    self.expect("(")?;
                    let (a, apos) = self.ident()?;
                    self.expect(",")?;
                    let (b, bpos) = self.ident()?;
                    self.expect(")")?;
                    let (a, b) = (self.lookup(&a, apos)?, self.lookup(&b, bpos)?);
                    (*direct_sum(&a, &b).algebra).clone()
                }
                _ => return Err(err(kpos, format!("expected `builtin` or `direct_sum`, found `{kind}`"))),
            };
            self.expect(";")?;
            return self.define(name.clone(), pos, alg.renamed(name));
        }
        self.expect("{")?;
        let mut gens: Vec<(String, Parity)> = Vec::new();
        let mut brackets: Vec<(String, Pos, String, Pos, Expr, Pos)> = Vec::new();
        while !self.eat("}") {
            let (kw, kpos) = self.ident()?;
            match kw.as_str() {
                "generator" => {
                    let (g, gpos) = self.ident()?;
                    if RESERVED.contains(&g.as_str()) {
                        return Err(err(gpos, format!("`{g}` is reserved for a variable")));
                    }
                    if gens.iter().any(|(n, _)| *n == g) {
                        return Err(err(gpos, format!("generator `{g}` declared twice")));
                    }
                    let p = self.parity()?;
                    self.expect(";")?;
                    gens.push((g, p));
                }
                "bracket" => {
                    self.expect("[")?;
                    let (a, apos) = self.ident()?;
                    self.expect(",")?;
                    let (b, bpos) = self.ident()?;
                    self.expect("]")?;
                    let eq = self.expect("=")?;
                    let e = self.expr()?;
                    self.expect(";")?;
                    brackets.push((a, apos, b, bpos, e, eq));
                }
                _ => return Err(err(kpos, format!("expected `generator` or `bracket`, found `{kw}`"))),
            }
        }
        let sig = Signature::new(gens).map_err(|e| err(pos, e.to_string()))?;
        let scope = Scope {
            sig: &sig,
            vars: &[Indet::D, Indet::LAMBDA],
        };
        let mut builder = Algebra::builder(name.clone(), sig.clone());
        for (a, apos, b, bpos, e, eq) in &brackets {
            let i = sig.index_of(a).ok_or_else(|| err(*apos, format!("unknown generator `{a}`")))?;
            let j = sig.index_of(b).ok_or_else(|| err(*bpos, format!("unknown generator `{b}`")))?;
            let value = scope.element(e, *eq)?;
            builder.bracket(i, j, value).map_err(|e| err(*apos, e.to_string()))?;
        }
        let alg = builder.build().map_err(|e| err(pos, e.to_string()))?;
        self.define(name, pos, alg)
    }

    fn map(&mut self) -> Result<()> {
        self.keyword("map")?;
        let (name, pos) = self.ident()?;
        if self.model.maps.iter().any(|m| m.name == name) {
            return Err(err(pos, format!("map `{name}` is defined twice")));
        }
        self.expect(":")?;
        let (src, spos) = self.ident()?;
        self.expect("->")?;
        let (dst, dpos) = self.ident()?;
        let (source, target) = (self.lookup(&src, spos)?, self.lookup(&dst, dpos)?);
        self.expect("{")?;
        let mut images: Vec<Option<Element>> = vec![None; source.rank()];
        let scope_vars = [Indet::D, Indet::X];
        while !self.eat("}") {
            let (g, gpos) = self.ident()?;
            let i = source
                .sig()
                .index_of(&g)
                .ok_or_else(|| err(gpos, format!("unknown generator `{g}` of {src}")))?;
            if !(self.eat("|->") || self.eat("↦")) {
                let (t, p) = self.bump();
                return Err(err(p, format!("expected `|->`, found {}", Self::describe(&t))));
            }
            let epos = self.pos();
            let e = self.expr()?;
            self.expect(";")?;
            let scope = Scope {
                sig: target.sig(),
                vars: &scope_vars,
            };
            let value = scope.element(&e, epos)?;
            if images[i].replace(value).is_some() {
                return Err(err(gpos, format!("image of `{g}` given twice")));
            }
        }
        let parity = if matches!(self.peek(), Tok::Ident(s) if s == "parity") {
            self.bump();
            let p = self.parity()?;
            self.expect(";")?;
            p
        } else {
            self.eat(";");
            Parity::Even
        };
        let images: Vec<Element> = images
            .into_iter()
            .map(|e| e.unwrap_or_else(|| target.zero()))
            .collect();
        for (i, img) in images.iter().enumerate() {
            let want = parity + source.sig().parity(i);
            if let Some(k) = img.support().find(|&k| target.sig().parity(k) != want) {
                return Err(err(
                    pos,
                    format!(
                        "image of {} under a {parity} map involves {}, which has the wrong parity",
                        source.sig().name(i),
                        target.sig().name(k)
                    ),
                ));
            }
        }
        self.model.maps.push(MapDef {
            name,
            source: src,
            target: dst,
            parity,
            images,
        });
        Ok(())
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Expr> {
        let mut left = self.term()?;
        loop {
            let pos = self.pos();
            if self.eat("+") {
                left = Expr::Add(Box::new(left), Box::new(self.term()?), pos);
            } else if self.eat("-") {
                left = Expr::Sub(Box::new(left), Box::new(self.term()?), pos);
            } else {
                return Ok(left);
            }
        }
    }

    // term := '-' term | power (('*')? power | '/' INT)*
    fn term(&mut self) -> Result<Expr> {
        if self.eat("-") {
            return Ok(Expr::Neg(Box::new(self.term()?)));
        }
        let mut left = self.power()?;
        loop {
            let pos = self.pos();
            if self.eat("*") {
                left = Expr::Mul(Box::new(left), Box::new(self.power()?), pos);
            } else if self.eat("/") {
                match self.bump() {
                    (Tok::Int(n), _) => left = Expr::Div(Box::new(left), n, pos),
                    (t, p) => return Err(err(p, format!("expected an integer divisor, found {}", Self::describe(&t)))),
                }
            } else if matches!(self.peek(), Tok::Ident(_) | Tok::Int(_) | Tok::Sym("(")) {
                left = Expr::Mul(Box::new(left), Box::new(self.power()?), pos);
            } else {
                return Ok(left);
            }
        }
    }

    // power := atom ('^' INT)?
    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        let pos = self.pos();
        if self.eat("^") {
            match self.bump() {
                (Tok::Int(n), p) => {
                    let k = n.to_u32().ok_or_else(|| err(p, "exponent too large"))?;
                    return Ok(Expr::Pow(Box::new(base), k, pos));
                }
                (t, p) => return Err(err(p, format!("expected an exponent, found {}", Self::describe(&t)))),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.bump() {
            (Tok::Int(n), _) => Ok(Expr::Num(n)),
            (Tok::Ident(s), pos) => Ok(Expr::Name(s, pos)),
            (Tok::Sym("("), _) => {
                let e = self.expr()?;
                self.expect(")")?;
                Ok(e)
            }
            (t, pos) => Err(err(pos, format!("expected an expression, found {}", Self::describe(&t)))),
        }
    }
}

/// Parses a whole `.lcsa` file. Either every definition is valid or the
/// first problem is reported with its line and column.
pub fn parse(src: &str) -> Result<Model> {
    let toks = lex(src)?;
    Parser {
        toks,
        i: 0,
        model: Model::default(),
    }
    .file()
}

/// Parses a single element expression such as `(d + 2*x) L - 1/2 G` over
/// `sig`, allowing the indeterminates in `vars` as scalars.
pub fn parse_element(src: &str, sig: &Signature, vars: &[Indet]) -> Result<Element> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        i: 0,
        model: Model::default(),
    };
    let start = p.pos();
    let e = p.expr()?;
    if !matches!(p.peek(), Tok::Eof) {
        return Err(err(p.pos(), format!("unexpected {}", Parser::describe(p.peek()))));
    }
    Scope { sig, vars }.element(&e, start)
}
