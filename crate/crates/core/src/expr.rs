//! The expression language used by the CLI and the relation tables.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' integer)?
//! atom   := generator | 'q' | rational | '(' expr ')' | map '(' expr ')'
//! ```
//!
//! A leading `-` is accepted at the start of an expression. Products must
//! be written with `*`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::engine::{Element, FreeElement, Letter, Monomial, Presentation};
use crate::error::Error;
use crate::scalar::QScalar;
use crate::tensor::TensorElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapName {
    D,
    Delta,
    S,
    Eps,
    DL,
    DR,
    Dx,
    Dxi,
    Dtheta,
    Dz,
}

impl MapName {
    pub const ALL: [MapName; 10] = [
        MapName::D,
        MapName::Delta,
        MapName::S,
        MapName::Eps,
        MapName::DL,
        MapName::DR,
        MapName::Dx,
        MapName::Dxi,
        MapName::Dtheta,
        MapName::Dz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MapName::D => "d",
            MapName::Delta => "Delta",
            MapName::S => "S",
            MapName::Eps => "eps",
            MapName::DL => "DL",
            MapName::DR => "DR",
            MapName::Dx => "Dx",
            MapName::Dxi => "Dxi",
            MapName::Dtheta => "Dtheta",
            MapName::Dz => "Dz",
        }
    }

    pub fn from_name(s: &str) -> Option<MapName> {
        MapName::ALL.into_iter().find(|m| m.name() == s)
    }

    /// Presentations in which the map can be used.
    pub fn available_in(self) -> &'static [&'static str] {
        match self {
            MapName::Delta | MapName::Eps => &["dqsp", "dqsp-ext"],
            MapName::S => &["dqsp-ext"],
            MapName::D | MapName::DL | MapName::DR => &["dqsp-omega"],
            MapName::Dx | MapName::Dxi | MapName::Dtheta | MapName::Dz => {
                &["dqsp", "dqsp-omega", "dqsp-ops"]
            }
        }
    }

    pub fn is_available(self, p: &Presentation) -> bool {
        self.available_in().contains(&p.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ast {
    /// Terms with a flag marking subtraction.
    Sum(Vec<(bool, Ast)>),
    Product(Vec<Ast>),
    Power(Box<Ast>, i64),
    Scalar(QScalar),
    Generator(String),
    Apply(MapName, Box<Ast>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Number(BigRational),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, Error> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            c if c.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = text[start..i].parse().expect("digits");
                let mut value = BigRational::from_integer(num);
                if i < bytes.len() && bytes[i] == b'/' {
                    let dstart = i + 1;
                    let mut j = dstart;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j == dstart {
                        return Err(syntax(i, "expected a denominator after '/'"));
                    }
                    let den: BigInt = text[dstart..j].parse().expect("digits");
                    if den == BigInt::from(0) {
                        return Err(syntax(dstart, "zero denominator"));
                    }
                    value /= BigRational::from_integer(den);
                    i = j;
                }
                out.push((start, Tok::Number(value)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'')
                {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            other => return Err(syntax(start, format!("unexpected character {other:?}"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    pres: &'a Presentation,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), Error> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(syntax(self.offset(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Ast, Error> {
        let mut terms = Vec::new();
        let mut negated = false;
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            negated = true;
        }
        terms.push((negated, self.term()?));
        loop {
            match self.peek() {
                Some(Tok::Plus) => negated = false,
                Some(Tok::Minus) => negated = true,
                _ => break,
            }
            self.pos += 1;
            terms.push((negated, self.term()?));
        }
        if terms.len() == 1 && !terms[0].0 {
            Ok(terms.pop().expect("one term").1)
        } else {
            Ok(Ast::Sum(terms))
        }
    }

    fn term(&mut self) -> Result<Ast, Error> {
        let mut factors = vec![self.factor()?];
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 { factors.pop().expect("one factor") } else { Ast::Product(factors) })
    }

    fn factor(&mut self) -> Result<Ast, Error> {
        let atom = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(atom);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.offset();
        match self.bump() {
            Some(Tok::Number(n)) if n.is_integer() => {
                let k: i64 = n
                    .to_integer()
                    .try_into()
                    .map_err(|_| syntax(at, "exponent too large"))?;
                Ok(Ast::Power(Box::new(atom), if negative { -k } else { k }))
            }
            _ => Err(syntax(at, "expected an integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Ast, Error> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Number(n)) => Ok(Ast::Scalar(QScalar::from_rational(n))),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                if self.peek() == Some(&Tok::LParen) {
                    let map = MapName::from_name(&name)
                        .ok_or_else(|| syntax(at, format!("unknown map {name:?}")))?;
                    if !map.is_available(self.pres) {
                        return Err(Error::Unsupported(format!(
                            "{name} is not available in {} (available in {})",
                            self.pres.name(),
                            map.available_in().join(", ")
                        )));
                    }
                    self.pos += 1;
                    let inner = self.expr()?;
                    self.expect(Tok::RParen, "')'")?;
                    return Ok(Ast::Apply(map, Box::new(inner)));
                }
                if name == "q" {
                    return Ok(Ast::Scalar(QScalar::q()));
                }
                if resolve_generator(self.pres, &name).is_none() {
                    return Err(Error::UnknownGenerator(format!("{name} (at {at}) in {}", self.pres.name())));
                }
                Ok(Ast::Generator(name))
            }
            Some(_) => Err(syntax(at, "expected a generator, number, 'q' or '('")),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

/// Resolves a generator spelling, including `xinv` for the inverse of a
/// Laurent `x`.
pub fn resolve_generator(p: &Presentation, name: &str) -> Option<Letter> {
    if let Some(g) = p.index_of(name) {
        return Some(Letter::new(g));
    }
    let base = name.strip_suffix("inv")?;
    let g = p.index_of(base)?;
    p.generator(g).laurent.then_some(Letter::inv(g))
}

pub fn parse_expression(text: &str, p: &Presentation) -> Result<Ast, Error> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0, end: text.len(), pres: p };
    if parser.peek().is_none() {
        return Err(syntax(0, "empty expression"));
    }
    let ast = parser.expr()?;
    if parser.pos < parser.toks.len() {
        let at = parser.offset();
        let msg = match parser.peek() {
            Some(Tok::Ident(_)) | Some(Tok::Number(_)) | Some(Tok::LParen) => {
                "expected an operator; products need an explicit '*'"
            }
            _ => "unexpected token",
        };
        return Err(syntax(at, msg));
    }
    Ok(ast)
}

/// Result of evaluating an expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(QScalar),
    Element(Element),
    Tensor(TensorElement),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(s) => write!(f, "{s}"),
            Value::Element(e) => write!(f, "{e}"),
            Value::Tensor(t) => write!(f, "{t}"),
        }
    }
}

fn type_error(op: &str, a: &Value, b: &Value) -> Error {
    let kind = |v: &Value| match v {
        Value::Scalar(_) => "scalar",
        Value::Element(_) => "element",
        Value::Tensor(_) => "tensor",
    };
    Error::Unsupported(format!("cannot {op} a {} and a {}", kind(a), kind(b)))
}

impl Value {
    fn into_element(self, p: &Arc<Presentation>) -> Result<Element, Error> {
        match self {
            Value::Scalar(s) => Ok(Element::scalar(p, s)),
            Value::Element(e) => Ok(e),
            Value::Tensor(_) => Err(Error::Unsupported("expected an element, found a tensor".into())),
        }
    }

    fn add(self, other: Value, p: &Arc<Presentation>) -> Result<Value, Error> {
        Ok(match (self, other) {
            (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(a + b),
            (Value::Tensor(a), Value::Tensor(b)) => Value::Tensor(a.try_add(&b)?),
            (Value::Element(a), Value::Scalar(b)) => {
                Value::Element(a.try_add(&Element::scalar(a.presentation(), b))?)
            }
            (Value::Scalar(a), Value::Element(b)) => {
                Value::Element(Element::scalar(b.presentation(), a).try_add(&b)?)
            }
            (Value::Element(a), Value::Element(b)) => Value::Element(a.try_add(&b)?),
            (a, b) => {
                let _ = p;
                return Err(type_error("add", &a, &b));
            }
        })
    }

    fn mul(self, other: Value) -> Result<Value, Error> {
        Ok(match (self, other) {
            (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(a * b),
            (Value::Scalar(a), Value::Element(b)) | (Value::Element(b), Value::Scalar(a)) => {
                Value::Element(b.scale(&a))
            }
            (Value::Scalar(a), Value::Tensor(b)) | (Value::Tensor(b), Value::Scalar(a)) => {
                Value::Tensor(b.scale(&a))
            }
            (Value::Element(a), Value::Element(b)) => Value::Element(a.try_mul(&b)?),
            (Value::Tensor(a), Value::Tensor(b)) => Value::Tensor(a.try_mul(&b)?),
            (a, b) => return Err(type_error("multiply", &a, &b)),
        })
    }

    fn neg(self) -> Value {
        match self {
            Value::Scalar(s) => Value::Scalar(-s),
            Value::Element(e) => Value::Element(-e),
            Value::Tensor(t) => Value::Tensor(-&t),
        }
    }

    fn pow(self, k: i64) -> Result<Value, Error> {
        match self {
            Value::Scalar(s) => s
                .pow(k)
                .map(Value::Scalar)
                .ok_or_else(|| Error::Unsupported(format!("({s})^{k} is not a Laurent polynomial"))),
            Value::Element(e) if k >= 0 => {
                let k = u32::try_from(k).map_err(|_| Error::ExponentOverflow)?;
                Ok(Value::Element(e.pow(k)))
            }
            Value::Element(e) => {
                let inv = invert_laurent(&e).ok_or_else(|| {
                    Error::Unsupported(format!("{e} has no inverse in {}", e.presentation().name()))
                })?;
                let k = u32::try_from(-k).map_err(|_| Error::ExponentOverflow)?;
                Ok(Value::Element(inv.pow(k)))
            }
            Value::Tensor(t) if k >= 0 => {
                let mut acc = Value::Scalar(QScalar::one());
                for _ in 0..k {
                    acc = acc.mul(Value::Tensor(t.clone()))?;
                }
                Ok(acc)
            }
            Value::Tensor(_) => Err(Error::Unsupported("negative powers of tensors".into())),
        }
    }
}

/// Inverse of `c * m` where `c` is a unit and `m` involves only Laurent
/// generators.
fn invert_laurent(e: &Element) -> Option<Element> {
    if e.num_terms() != 1 {
        return None;
    }
    let p = e.presentation();
    let (m, c) = e.terms().next()?;
    let only_laurent = m
        .exponents()
        .iter()
        .enumerate()
        .all(|(i, x)| *x == 0 || p.generator(i).laurent);
    if !only_laurent {
        return None;
    }
    let inv = Monomial::from_exponents(m.exponents().iter().map(|x| -x).collect());
    Some(Element::from_monomial(p, inv, c.inverse()?))
}

pub fn evaluate(ast: &Ast, p: &Arc<Presentation>) -> Result<Value, Error> {
    Ok(match ast {
        Ast::Scalar(s) => Value::Scalar(s.clone()),
        Ast::Generator(name) => {
            let letter = resolve_generator(p, name).ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            Value::Element(Element::from_word(p, &[letter]))
        }
        Ast::Sum(terms) => {
            let mut acc = Value::Scalar(QScalar::zero());
            for (negated, t) in terms {
                let v = evaluate(t, p)?;
                acc = acc.add(if *negated { v.neg() } else { v }, p)?;
            }
            acc
        }
        Ast::Product(factors) => {
            let mut acc = Value::Scalar(QScalar::one());
            for f in factors {
                acc = acc.mul(evaluate(f, p)?)?;
            }
            acc
        }
        Ast::Power(base, k) => evaluate(base, p)?.pow(*k)?,
        Ast::Apply(map, inner) => {
            let arg = evaluate(inner, p)?.into_element(p)?;
            apply_map(*map, &arg)?
        }
    })
}

pub fn apply_map(map: MapName, arg: &Element) -> Result<Value, Error> {
    use crate::calculus::{coaction, de_rham, Side};
    Ok(match map {
        MapName::D => Value::Element(de_rham(arg)?),
        MapName::Delta => Value::Tensor(crate::hopf::coproduct(arg)?),
        MapName::S => Value::Element(crate::hopf::antipode(arg)?),
        MapName::Eps => Value::Scalar(crate::hopf::counit(arg)?),
        MapName::DL => Value::Tensor(coaction(Side::Left, arg)?),
        MapName::DR => Value::Tensor(coaction(Side::Right, arg)?),
        MapName::Dx | MapName::Dxi | MapName::Dtheta | MapName::Dz => {
            Value::Element(crate::operators::apply_partial(map.name(), arg)?)
        }
    })
}

/// Parses and evaluates in one step.
pub fn eval_str(text: &str, p: &Arc<Presentation>) -> Result<Value, Error> {
    evaluate(&parse_expression(text, p)?, p)
}

/// Reads an expression as an unreduced word combination. Maps are not
/// allowed here.
pub fn to_free(ast: &Ast, p: &Arc<Presentation>) -> Result<FreeElement, Error> {
    Ok(match ast {
        Ast::Scalar(s) => FreeElement::scalar(p, s.clone()),
        Ast::Generator(name) => {
            let letter = resolve_generator(p, name).ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            FreeElement::letter(p, letter)?
        }
        Ast::Sum(terms) => {
            let mut acc = FreeElement::zero(p);
            for (negated, t) in terms {
                let v = to_free(t, p)?;
                acc = if *negated { acc.try_sub(&v)? } else { acc.try_add(&v)? };
            }
            acc
        }
        Ast::Product(factors) => {
            let mut acc = FreeElement::one(p);
            for f in factors {
                acc = acc.try_mul(&to_free(f, p)?)?;
            }
            acc
        }
        Ast::Power(base, k) if *k >= 0 => {
            to_free(base, p)?.pow(u32::try_from(*k).map_err(|_| Error::ExponentOverflow)?)
        }
        Ast::Power(base, k) => {
            let k = u32::try_from(-*k).map_err(|_| Error::ExponentOverflow)?;
            match base.as_ref() {
                Ast::Generator(name) => {
                    let l = resolve_generator(p, name).ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                    let inv = Letter { gen: l.gen, inverse: !l.inverse };
                    FreeElement::letter(p, inv)?.pow(k)
                }
                Ast::Scalar(s) => FreeElement::scalar(
                    p,
                    s.pow(-i64::from(k)).ok_or_else(|| Error::Unsupported(format!("({s})^-{k}")))?,
                ),
                _ => return Err(Error::Unsupported("negative powers of compound words".into())),
            }
        }
        Ast::Apply(map, _) => {
            return Err(Error::Unsupported(format!("{} cannot appear in a word expression", map.name())))
        }
    })
}

/// Parses `text` as an unreduced word combination.
pub fn parse_free(text: &str, p: &Arc<Presentation>) -> Result<FreeElement, Error> {
    to_free(&parse_expression(text, p)?, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dqsp() -> Arc<Presentation> {
        Presentation::builtin("dqsp").unwrap()
    }

    #[test]
    fn parse_shapes() {
        let p = dqsp();
        let ast = parse_expression("x*xi - q*xi*x", &p).unwrap();
        match ast {
            Ast::Sum(ts) => {
                assert_eq!(ts.len(), 2);
                assert!(!ts[0].0 && ts[1].0);
                assert!(matches!(ts[0].1, Ast::Product(_)));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            parse_expression("xi^2", &p).unwrap(),
            Ast::Power(Box::new(Ast::Generator("xi".into())), 2)
        );
        let o = Presentation::builtin("dqsp-omega").unwrap();
        assert_eq!(
            parse_expression("d(x*z)", &o).unwrap(),
            Ast::Apply(
                MapName::D,
                Box::new(Ast::Product(vec![Ast::Generator("x".into()), Ast::Generator("z".into())]))
            )
        );
    }

    #[test]
    fn parse_errors() {
        let p = dqsp();
        assert!(matches!(parse_expression("x xi", &p), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expression("x + ", &p), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expression("w*x", &p), Err(Error::UnknownGenerator(_))));
        assert!(matches!(parse_expression("S(x)", &p), Err(Error::Unsupported(_))));
        assert!(matches!(parse_expression("foo(x)", &p), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expression("(x", &p), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expression("", &p), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expression("1/0", &p), Err(Error::Syntax { .. })));
    }

    #[test]
    fn evaluation_examples() {
        let p = dqsp();
        assert_eq!(eval_str("z*xi", &p).unwrap().to_string(), "-q*xi*z");
        assert_eq!(eval_str("xi*x", &p).unwrap().to_string(), "q^-1*x*xi");
        assert_eq!(eval_str("xi^2", &p).unwrap().to_string(), "0");
        assert_eq!(eval_str("eps(x^3 + xi)", &p).unwrap().to_string(), "1");
        assert_eq!(eval_str("(1 + q)*(1 - q)", &p).unwrap().to_string(), "1 - q^2");
        assert_eq!(eval_str("-1/2*q^-1*x + x*q", &p).unwrap().to_string(), "(-1/2*q^-1 + q)*x");
        let ext = Presentation::builtin("dqsp-ext").unwrap();
        assert_eq!(eval_str("S(xi)", &ext).unwrap().to_string(), "-q*x^-2*xi");
        assert_eq!(eval_str("xinv*x", &ext).unwrap().to_string(), "1");
        assert_eq!(eval_str("x^-2*x^2", &ext).unwrap().to_string(), "1");
        assert!(eval_str("xi^-1", &ext).is_err());
    }

    #[test]
    fn free_reading_keeps_words() {
        let p = dqsp();
        let f = parse_free("x*xi - q*xi*x", &p).unwrap();
        assert_eq!(f.to_string(), "x*xi - q*xi*x");
        assert!(f.reduce().is_zero());
        let ext = Presentation::builtin("dqsp-ext").unwrap();
        let g = parse_free("xinv*xi - q^-1*xi*x^-1", &ext).unwrap();
        assert!(g.reduce().is_zero());
    }
}
