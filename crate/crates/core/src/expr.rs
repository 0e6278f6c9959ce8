//! Expression grammar, parser, and evaluator for the text form of
//! elements.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := primary ('^' uint)*
//! primary:= rational | atom | '(' expr ')' | 'comm' '(' expr ',' expr ')'
//! atom   := name '[' uint ',' uint ']'    name in {E, Ep, F, Fp, x, d, M}
//! rational := uint ('/' uint)?
//! ```
//!
//! Whitespace is insignificant. Atoms are validated against the declared
//! algebra during parsing, so errors carry the source position.

use crate::dualpair::{DualPairContext, Normalization};
use crate::poly::{skew_id, CommutativePolynomial, VarSet};
use crate::scalar::Rat;
use crate::uea::{AlgebraKind, LieAlgebraSpec, UEAElement};
use crate::weyl::{Shape, WeylElement};
use num_bigint::BigInt;
use num_traits::One;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AtomKind {
    /// E[i,j]: large gl generator (UEA) or its realization in a pair
    E,
    /// Ep[a,b]: small gl generator image under L (pair contexts only)
    Ep,
    /// F[i,j]: large o generator or its realization
    F,
    /// Fp[a,b]: small sp side image under L (pair contexts only)
    Fp,
    /// x[i,a]: coordinate function
    X,
    /// d[i,a]: partial derivative
    D,
    /// M[i,j]: commutative matrix symbol
    M,
}

impl AtomKind {
    fn name(&self) -> &'static str {
        match self {
            AtomKind::E => "E",
            AtomKind::Ep => "Ep",
            AtomKind::F => "F",
            AtomKind::Fp => "Fp",
            AtomKind::X => "x",
            AtomKind::D => "d",
            AtomKind::M => "M",
        }
    }
}

/// Abstract syntax, flattened: sums and products are n-ary.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expression {
    Rational(Rat),
    Atom(AtomKind, u32, u32),
    Neg(Box<Expression>),
    Sum(Vec<Expression>),
    Product(Vec<Expression>),
    Power(Box<Expression>, u32),
    Commutator(Box<Expression>, Box<Expression>),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    pub message: String,
}

/// The algebra an expression is read into.
#[derive(Clone, Debug)]
pub enum AlgebraContext {
    /// `weyl:RxC` — x and d atoms
    Weyl(Shape),
    /// `sym:RxC` — commutative polynomial ring on the x/d symbols
    WeylSymbols(Shape),
    /// `gl:n` — E atoms in U(gl_n)
    Gl(Arc<LieAlgebraSpec>),
    /// `o:N` — F atoms in U(o_N)
    O(Arc<LieAlgebraSpec>),
    /// `mgl:n` — commutative M matrix ring
    MGl(u32),
    /// `mo:N` — commutative skew M ring
    MO(u32),
    /// `glpair:n,k[,normalized]` — E realizes through R, Ep through L,
    /// x and d stay Weyl atoms; everything lands in the Weyl algebra
    GlPair(Arc<DualPairContext>),
    /// `spopair:N,k` — F through R, Fp through L
    SpoPair(Arc<DualPairContext>),
}

impl AlgebraContext {
    /// Parses an algebra descriptor such as `weyl:2x1`, `gl:3`, `o:4`,
    /// `sym:2x2`, `mgl:2`, `mo:4`, `glpair:2,1`, `glpair:2,1,normalized`,
    /// `spopair:4,1`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let (head, rest) = s
            .split_once(':')
            .ok_or_else(|| format!("malformed algebra `{s}`: expected `kind:params`"))?;
        let shape_of = |r: &str| -> Result<Shape, String> {
            let (a, b) = r
                .split_once('x')
                .ok_or_else(|| format!("malformed shape `{r}`: expected RxC"))?;
            let rows: u32 = a.parse().map_err(|_| format!("bad row count `{a}`"))?;
            let cols: u32 = b.parse().map_err(|_| format!("bad column count `{b}`"))?;
            if rows == 0 || cols == 0 {
                return Err("shape must be positive".to_string());
            }
            Ok(Shape::new(rows, cols))
        };
        let uint = |r: &str| -> Result<u32, String> {
            r.parse().map_err(|_| format!("bad size `{r}`"))
        };
        match head {
            "weyl" => Ok(AlgebraContext::Weyl(shape_of(rest)?)),
            "sym" => Ok(AlgebraContext::WeylSymbols(shape_of(rest)?)),
            "gl" => {
                let n = uint(rest)?;
                if n == 0 {
                    return Err("size must be positive".to_string());
                }
                Ok(AlgebraContext::Gl(LieAlgebraSpec::gl(n)))
            }
            "o" => {
                let n = uint(rest)?;
                if n < 2 {
                    return Err("orthogonal size must be at least 2".to_string());
                }
                Ok(AlgebraContext::O(LieAlgebraSpec::o(n)))
            }
            "mgl" => {
                let n = uint(rest)?;
                if n == 0 {
                    return Err("size must be positive".to_string());
                }
                Ok(AlgebraContext::MGl(n))
            }
            "mo" => {
                let n = uint(rest)?;
                if n < 2 {
                    return Err("orthogonal size must be at least 2".to_string());
                }
                Ok(AlgebraContext::MO(n))
            }
            "glpair" | "spopair" => {
                let parts: Vec<&str> = rest.split(',').collect();
                if parts.len() < 2 || parts.len() > 3 {
                    return Err(format!(
                        "malformed pair `{rest}`: expected large,k[,normalized]"
                    ));
                }
                let large = uint(parts[0])?;
                let k = uint(parts[1])?;
                let normalized = match parts.get(2) {
                    None => false,
                    Some(&"normalized") => true,
                    Some(other) => return Err(format!("unknown pair flag `{other}`")),
                };
                if head == "glpair" {
                    let norm = if normalized {
                        Normalization::Normalized
                    } else {
                        Normalization::Unnormalized
                    };
                    let ctx = DualPairContext::gl_gl(large, k, norm)
                        .map_err(|e| e.to_string())?;
                    Ok(AlgebraContext::GlPair(Arc::new(ctx)))
                } else {
                    let ctx = DualPairContext::o_sp(large, k).map_err(|e| e.to_string())?;
                    Ok(AlgebraContext::SpoPair(Arc::new(ctx)))
                }
            }
            other => Err(format!("unknown algebra kind `{other}`")),
        }
    }

    /// Checks that an atom belongs to the declared algebra and that its
    /// indices are in range; returns a message on failure.
    fn validate_atom(&self, kind: AtomKind, i: u32, j: u32) -> Result<(), String> {
        let range = |lo: u32, i: u32, hi: u32, what: &str| -> Result<(), String> {
            if i < lo || i > hi {
                Err(format!("index {i} of {what} out of range {lo}..{hi}"))
            } else {
                Ok(())
            }
        };
        let reject = |kind: AtomKind| -> Result<(), String> {
            Err(format!(
                "atom {}[..] is not in the declared algebra",
                kind.name()
            ))
        };
        match self {
            AlgebraContext::Weyl(sh) | AlgebraContext::WeylSymbols(sh) => match kind {
                AtomKind::X | AtomKind::D => {
                    range(1, i, sh.rows, "row")?;
                    range(1, j, sh.cols, "column")
                }
                other => reject(other),
            },
            AlgebraContext::Gl(alg) => match (kind, alg.kind()) {
                (AtomKind::E, AlgebraKind::Gl { n }) => {
                    range(1, i, n, "row")?;
                    range(1, j, n, "column")
                }
                _ => reject(kind),
            },
            AlgebraContext::O(alg) => match (kind, alg.kind()) {
                (AtomKind::F, AlgebraKind::O { n }) => {
                    range(1, i, n, "row")?;
                    range(1, j, n, "column")
                }
                _ => reject(kind),
            },
            AlgebraContext::MGl(n) => match kind {
                AtomKind::M => {
                    range(1, i, *n, "row")?;
                    range(1, j, *n, "column")
                }
                other => reject(other),
            },
            AlgebraContext::MO(n) => match kind {
                AtomKind::M => {
                    range(1, i, *n, "row")?;
                    range(1, j, *n, "column")
                }
                other => reject(other),
            },
            AlgebraContext::GlPair(ctx) => match kind {
                AtomKind::E => {
                    range(1, i, ctx.large_size(), "row")?;
                    range(1, j, ctx.large_size(), "column")
                }
                AtomKind::Ep => {
                    range(1, i, ctx.k(), "row")?;
                    range(1, j, ctx.k(), "column")
                }
                AtomKind::X | AtomKind::D => {
                    range(1, i, ctx.large_size(), "row")?;
                    range(1, j, ctx.k(), "column")
                }
                other => reject(other),
            },
            AlgebraContext::SpoPair(ctx) => match kind {
                AtomKind::F => {
                    range(1, i, ctx.large_size(), "row")?;
                    range(1, j, ctx.large_size(), "column")
                }
                AtomKind::Fp => {
                    range(1, i, 2 * ctx.k(), "row")?;
                    range(1, j, 2 * ctx.k(), "column")
                }
                AtomKind::X | AtomKind::D => {
                    range(1, i, ctx.large_size(), "row")?;
                    range(1, j, ctx.k(), "column")
                }
                other => reject(other),
            },
        }
    }
}

/// A parsed-and-evaluated element of whichever algebra was declared.
#[derive(Clone, PartialEq, Debug)]
pub enum Element {
    Weyl(WeylElement),
    Uea(UEAElement),
    Poly(CommutativePolynomial),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Weyl(e) => e.fmt(f),
            Element::Uea(e) => e.fmt(f),
            Element::Poly(e) => e.fmt(f),
        }
    }
}

impl Element {
    fn zero_of(ctx: &AlgebraContext) -> Element {
        match ctx {
            AlgebraContext::Weyl(sh) => Element::Weyl(WeylElement::zero(*sh)),
            AlgebraContext::WeylSymbols(sh) => Element::Poly(CommutativePolynomial::zero(
                VarSet::WeylSymbols { shape: *sh },
            )),
            AlgebraContext::Gl(alg) | AlgebraContext::O(alg) => {
                Element::Uea(UEAElement::zero(alg))
            }
            AlgebraContext::MGl(n) => {
                Element::Poly(CommutativePolynomial::zero(VarSet::MatrixGl { n: *n }))
            }
            AlgebraContext::MO(n) => {
                Element::Poly(CommutativePolynomial::zero(VarSet::MatrixSkew { n: *n }))
            }
            AlgebraContext::GlPair(ctx) | AlgebraContext::SpoPair(ctx) => {
                Element::Weyl(WeylElement::zero(ctx.shape()))
            }
        }
    }

    fn scalar_of(ctx: &AlgebraContext, c: Rat) -> Element {
        match Element::zero_of(ctx) {
            Element::Weyl(z) => Element::Weyl(WeylElement::scalar(z.shape(), c)),
            Element::Uea(z) => Element::Uea(UEAElement::scalar(z.algebra(), c)),
            Element::Poly(z) => Element::Poly(CommutativePolynomial::constant(z.var_set(), c)),
        }
    }

    fn add(&self, other: &Element) -> Element {
        match (self, other) {
            (Element::Weyl(a), Element::Weyl(b)) => Element::Weyl(a.add(b)),
            (Element::Uea(a), Element::Uea(b)) => Element::Uea(a.add(b)),
            (Element::Poly(a), Element::Poly(b)) => Element::Poly(a.add(b)),
            _ => unreachable!("mixed element kinds cannot arise from one context"),
        }
    }

    fn mul(&self, other: &Element) -> Element {
        match (self, other) {
            (Element::Weyl(a), Element::Weyl(b)) => Element::Weyl(a.mul(b)),
            (Element::Uea(a), Element::Uea(b)) => Element::Uea(a.mul(b)),
            (Element::Poly(a), Element::Poly(b)) => Element::Poly(a.mul(b)),
            _ => unreachable!("mixed element kinds cannot arise from one context"),
        }
    }

    fn neg(&self) -> Element {
        match self {
            Element::Weyl(a) => Element::Weyl(a.neg()),
            Element::Uea(a) => Element::Uea(a.neg()),
            Element::Poly(a) => Element::Poly(a.neg()),
        }
    }

    fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    fn pow(&self, e: u32) -> Element {
        match self {
            Element::Weyl(a) => Element::Weyl(a.pow(e)),
            Element::Uea(a) => Element::Uea(a.pow(e)),
            Element::Poly(a) => Element::Poly(a.pow(e)),
        }
    }

    fn commutator(&self, other: &Element) -> Element {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Element::Weyl(a) => a.is_zero(),
            Element::Uea(a) => a.is_zero(),
            Element::Poly(a) => a.is_zero(),
        }
    }
}

fn atom_element(ctx: &AlgebraContext, kind: AtomKind, i: u32, j: u32) -> Element {
    match ctx {
        AlgebraContext::Weyl(sh) => match kind {
            AtomKind::X => Element::Weyl(WeylElement::x(*sh, i, j)),
            AtomKind::D => Element::Weyl(WeylElement::d(*sh, i, j)),
            _ => unreachable!("atom validated against context"),
        },
        AlgebraContext::WeylSymbols(sh) => {
            let vars = VarSet::WeylSymbols { shape: *sh };
            let id = match kind {
                AtomKind::X => sh.var_id(i, j),
                AtomKind::D => sh.pairs() + sh.var_id(i, j),
                _ => unreachable!("atom validated against context"),
            };
            Element::Poly(CommutativePolynomial::var(vars, id))
        }
        AlgebraContext::Gl(alg) | AlgebraContext::O(alg) => {
            Element::Uea(UEAElement::gen_entry(alg, i, j))
        }
        AlgebraContext::MGl(n) => Element::Poly(CommutativePolynomial::var(
            VarSet::MatrixGl { n: *n },
            (i - 1) * n + (j - 1),
        )),
        AlgebraContext::MO(n) => {
            let vars = VarSet::MatrixSkew { n: *n };
            match i.cmp(&j) {
                Ordering::Less => {
                    Element::Poly(CommutativePolynomial::var(vars, skew_id(*n, i, j)))
                }
                Ordering::Greater => Element::Poly(
                    CommutativePolynomial::var(vars, skew_id(*n, j, i))
                        .scale(&-Rat::one()),
                ),
                Ordering::Equal => Element::Poly(CommutativePolynomial::zero(vars)),
            }
        }
        AlgebraContext::GlPair(pair) => match kind {
            AtomKind::E => {
                Element::Weyl(pair.r_matrix().at(i as usize - 1, j as usize - 1).clone())
            }
            AtomKind::Ep => Element::Weyl(pair.realize_left(i, j)),
            AtomKind::X => Element::Weyl(WeylElement::x(pair.shape(), i, j)),
            AtomKind::D => Element::Weyl(WeylElement::d(pair.shape(), i, j)),
            _ => unreachable!("atom validated against context"),
        },
        AlgebraContext::SpoPair(pair) => match kind {
            AtomKind::F => {
                Element::Weyl(pair.r_matrix().at(i as usize - 1, j as usize - 1).clone())
            }
            AtomKind::Fp => Element::Weyl(pair.realize_left(i, j)),
            AtomKind::X => Element::Weyl(WeylElement::x(pair.shape(), i, j)),
            AtomKind::D => Element::Weyl(WeylElement::d(pair.shape(), i, j)),
            _ => unreachable!("atom validated against context"),
        },
    }
}

/// Evaluates a parsed expression in a context (the parser has already
/// validated every atom).
pub fn evaluate(expr: &Expression, ctx: &AlgebraContext) -> Element {
    match expr {
        Expression::Rational(c) => Element::scalar_of(ctx, c.clone()),
        Expression::Atom(kind, i, j) => atom_element(ctx, *kind, *i, *j),
        Expression::Neg(inner) => evaluate(inner, ctx).neg(),
        Expression::Sum(parts) => {
            let mut acc = Element::zero_of(ctx);
            for p in parts {
                acc = acc.add(&evaluate(p, ctx));
            }
            acc
        }
        Expression::Product(parts) => {
            let mut acc = Element::scalar_of(ctx, Rat::one());
            for p in parts {
                acc = acc.mul(&evaluate(p, ctx));
            }
            acc
        }
        Expression::Power(base, e) => evaluate(base, ctx).pow(*e),
        Expression::Commutator(a, b) => evaluate(a, ctx).commutator(&evaluate(b, ctx)),
    }
}

/// Parses source text against a declared algebra.
pub fn parse_expression(source: &str, ctx: &AlgebraContext) -> Result<Expression, ParseError> {
    let mut p = Parser::new(source, ctx);
    let e = p.parse_expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

/// Parse-then-evaluate convenience.
pub fn parse_and_evaluate(source: &str, ctx: &AlgebraContext) -> Result<Element, ParseError> {
    Ok(evaluate(&parse_expression(source, ctx)?, ctx))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    line: u32,
    col: u32,
    ctx: &'a AlgebraContext,
    depth: u32,
}

/// Nesting bound; parenthesized expressions beyond this are rejected
/// rather than risking stack exhaustion on adversarial input.
const MAX_DEPTH: u32 = 200;

impl<'a> Parser<'a> {
    fn new(source: &'a str, ctx: &'a AlgebraContext) -> Self {
        Parser {
            src: source.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
            ctx,
            depth: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col,
            message: message.into(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.bump();
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn parse_uint(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.error("expected an unsigned integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<u32>()
            .map_err(|_| self.error(format!("integer `{text}` too large")))
    }

    fn parse_bigint(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.error("expected an unsigned integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse::<BigInt>().unwrap())
    }

    fn parse_ident(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            self.bump();
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn parse_expr(&mut self) -> Result<Expression, ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error("expression nests too deeply"));
        }
        let mut parts = Vec::new();
        self.skip_ws();
        let leading_minus = self.eat(b'-');
        let first = self.parse_term()?;
        parts.push(if leading_minus {
            Expression::Neg(Box::new(first))
        } else {
            first
        });
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    parts.push(self.parse_term()?);
                }
                Some(b'-') => {
                    self.bump();
                    parts.push(Expression::Neg(Box::new(self.parse_term()?)));
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Expression::Sum(parts)
        })
    }

    fn parse_term(&mut self) -> Result<Expression, ParseError> {
        let mut parts = vec![self.parse_factor()?];
        while self.eat(b'*') {
            parts.push(self.parse_factor()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Expression::Product(parts)
        })
    }

    fn parse_factor(&mut self) -> Result<Expression, ParseError> {
        let mut base = self.parse_primary()?;
        while self.eat(b'^') {
            let e = self.parse_uint()?;
            base = Expression::Power(Box::new(base), e);
        }
        Ok(base)
    }

    fn parse_primary(&mut self) -> Result<Expression, ParseError> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.bump();
                let inner = self.parse_expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'-') => {
                self.bump();
                let inner = self.parse_primary()?;
                Ok(Expression::Neg(Box::new(inner)))
            }
            Some(c) if c.is_ascii_digit() => {
                let numer = self.parse_bigint()?;
                // a rational literal may carry /denominator
                let save = (self.pos, self.line, self.col);
                if self.eat(b'/') {
                    self.skip_ws();
                    if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        let denom = self.parse_bigint()?;
                        if denom == BigInt::from(0) {
                            return Err(self.error("zero denominator"));
                        }
                        return Ok(Expression::Rational(Rat::new(numer, denom)));
                    }
                    (self.pos, self.line, self.col) = save;
                    return Err(self.error("expected digits after `/`"));
                }
                Ok(Expression::Rational(Rat::from_integer(numer)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let (line, col) = (self.line, self.col);
                let ident = self.parse_ident();
                if ident == "comm" {
                    self.expect(b'(')?;
                    let a = self.parse_expr()?;
                    self.expect(b',')?;
                    let b = self.parse_expr()?;
                    self.expect(b')')?;
                    return Ok(Expression::Commutator(Box::new(a), Box::new(b)));
                }
                let kind = match ident.as_str() {
                    "E" => AtomKind::E,
                    "Ep" => AtomKind::Ep,
                    "F" => AtomKind::F,
                    "Fp" => AtomKind::Fp,
                    "x" => AtomKind::X,
                    "d" => AtomKind::D,
                    "M" => AtomKind::M,
                    other => {
                        return Err(ParseError {
                            line,
                            col,
                            message: format!("unknown symbol `{other}`"),
                        })
                    }
                };
                self.expect(b'[')?;
                let i = self.parse_uint()?;
                self.expect(b',')?;
                let j = self.parse_uint()?;
                self.expect(b']')?;
                if let Err(message) = self.ctx.validate_atom(kind, i, j) {
                    return Err(ParseError { line, col, message });
                }
                Ok(Expression::Atom(kind, i, j))
            }
            Some(c) => Err(self.error(format!("unexpected character `{}`", c as char))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Lcg;
    use crate::scalar::{rat, ratio};

    fn weyl11() -> AlgebraContext {
        AlgebraContext::parse("weyl:1x1").unwrap()
    }

    #[test]
    fn defining_relation_through_parser() {
        let ctx = weyl11();
        let e = parse_and_evaluate("d[1,1]*x[1,1]", &ctx).unwrap();
        assert_eq!(e.to_string(), "x[1,1]*d[1,1] + 1");
    }

    #[test]
    fn commutator_in_gl2() {
        let ctx = AlgebraContext::parse("gl:2").unwrap();
        let e = parse_and_evaluate("comm(E[1,2],E[2,1])", &ctx).unwrap();
        assert_eq!(e.to_string(), "E[1,1] - E[2,2]");
    }

    #[test]
    fn index_out_of_range_errors_with_position() {
        let ctx = AlgebraContext::parse("weyl:2x1").unwrap();
        let err = parse_expression("x[3,1]", &ctx).unwrap_err();
        assert_eq!(err.line, 1);
        assert_eq!(err.col, 1);
        assert!(err.message.contains("out of range"));
        // atom from another algebra
        let err = parse_expression("E[1,1]", &ctx).unwrap_err();
        assert!(err.message.contains("not in the declared algebra"));
    }

    #[test]
    fn rational_literals_and_precedence() {
        let ctx = weyl11();
        let e = parse_and_evaluate("3/2*x[1,1] + 1", &ctx).unwrap();
        assert_eq!(e.to_string(), "3/2*x[1,1] + 1");
        let e = parse_and_evaluate("(x[1,1] + 1)^2", &ctx).unwrap();
        assert_eq!(e.to_string(), "x[1,1]^2 + 2*x[1,1] + 1");
        let e = parse_and_evaluate("-x[1,1] - -1", &ctx).unwrap();
        assert_eq!(e.to_string(), "-x[1,1] + 1");
        let e = parse_and_evaluate("2^3", &ctx).unwrap();
        match e {
            Element::Weyl(w) => assert_eq!(w, WeylElement::scalar(Shape::new(1, 1), rat(8))),
            _ => panic!(),
        }
    }

    #[test]
    fn syntax_errors_carry_position() {
        let ctx = weyl11();
        for bad in ["", "x[1,1]*", "x[1 1]", "((x[1,1])", "1/0", "q[1,1]", "x[,1]"] {
            let err = parse_expression(bad, &ctx).unwrap_err();
            assert!(err.line >= 1 && err.col >= 1, "position missing for `{bad}`");
        }
    }

    #[test]
    fn pair_contexts_realize() {
        let ctx = AlgebraContext::parse("glpair:1,1").unwrap();
        let e = parse_and_evaluate("E[1,1]", &ctx).unwrap();
        assert_eq!(e.to_string(), "x[1,1]*d[1,1]");
        let e = parse_and_evaluate("Ep[1,1] - E[1,1]", &ctx).unwrap();
        assert!(e.is_zero());
        let ctx = AlgebraContext::parse("spopair:2,1").unwrap();
        let e = parse_and_evaluate("F[1,2] + F[2,1]", &ctx).unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn skew_m_context() {
        let ctx = AlgebraContext::parse("mo:4").unwrap();
        let e = parse_and_evaluate("M[2,1] + M[1,2]", &ctx).unwrap();
        assert!(e.is_zero());
        let e = parse_and_evaluate("M[3,3]", &ctx).unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn format_parse_evaluate_is_fixed_point() {
        let mut rng = Lcg::new(0x10adab1e);
        // Weyl elements
        let wctx = AlgebraContext::parse("weyl:2x2").unwrap();
        let shape = Shape::new(2, 2);
        for _ in 0..50 {
            let e = WeylElement::random(&mut rng, shape, 3, 4);
            let text = e.to_string();
            let back = parse_and_evaluate(&text, &wctx).unwrap();
            assert_eq!(back, Element::Weyl(e.clone()), "roundtrip failed: {text}");
            assert_eq!(back.to_string(), text);
        }
        // UEA elements
        for (desc, alg) in [("gl:2", LieAlgebraSpec::gl(2)), ("o:4", LieAlgebraSpec::o(4))] {
            let ctx = AlgebraContext::parse(desc).unwrap();
            for _ in 0..50 {
                let e = UEAElement::random(&mut rng, &alg, 3, 4);
                let text = e.to_string();
                let back = parse_and_evaluate(&text, &ctx).unwrap();
                assert_eq!(back, Element::Uea(e.clone()), "roundtrip failed: {text}");
                assert_eq!(back.to_string(), text);
            }
        }
    }

    #[test]
    fn zero_formats_and_parses() {
        let ctx = weyl11();
        let e = parse_and_evaluate("0", &ctx).unwrap();
        assert!(e.is_zero());
        assert_eq!(e.to_string(), "0");
        let e = parse_and_evaluate("x[1,1] - x[1,1]", &ctx).unwrap();
        assert_eq!(e.to_string(), "0");
        let half = parse_and_evaluate("1/2", &ctx).unwrap();
        match half {
            Element::Weyl(w) => {
                assert_eq!(w, WeylElement::scalar(Shape::new(1, 1), ratio(1, 2)))
            }
            _ => panic!(),
        }
    }
}
