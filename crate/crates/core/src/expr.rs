//! Parsing of the canonical text forms and a small calculator over symbols.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" exp)?
//! exp    := int | "-" int | "{" ["-"] int ["/" int] "}"
//! atom   := int | "i" | "M" | "t" | "x" | "r" | "xi" | "d_r" | "d_xi"
//!         | "(" expr ")" | name "(" expr ("," expr)* ")"
//! ```
//!
//! Functions: `theta`, `theta_inv`, `theta_t` (each with an optional ν argument), `bracket`,
//! `trace`, `euler`, `dt`, `plus` (differential part).

use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::psido::{HalfInt, SymVar, Symbol};
use crate::ring::{CoeffFn, GaussRat, Rat, Scalar, Var};
use crate::transforms::Theta;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Int(digits.parse().expect("ascii digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].1.is_ascii_alphanumeric() || chars[k].1 == '_') {
                k += 1;
            }
            out.push((pos, Tok::Ident(chars[start..k].iter().map(|&(_, c)| c).collect())));
        } else if "+-*/^(){},".contains(c) {
            out.push((pos, Tok::Op(c)));
            k += 1;
        } else {
            return Err(Error::Parse { pos, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

/// Intermediate values: a function with the symbol variable it mentions, if any, or a symbol.
#[derive(Clone, Debug)]
enum Value {
    Fn(CoeffFn, Option<SymVar>),
    Sym(Symbol),
}

fn unify(a: Option<SymVar>, b: Option<SymVar>) -> Result<Option<SymVar>> {
    match (a, b) {
        (Some(x), Some(y)) if x != y => Err(Error::MixedVariable),
        (Some(x), _) => Ok(Some(x)),
        (None, y) => Ok(y),
    }
}

impl Value {
    fn var(&self) -> Option<SymVar> {
        match self {
            Value::Fn(_, v) => *v,
            Value::Sym(s) => Some(s.var()),
        }
    }

    fn into_symbol(self, var: SymVar) -> Result<Symbol> {
        match self {
            Value::Fn(f, v) => {
                unify(v, Some(var))?;
                Ok(Symbol::function(var, f))
            }
            Value::Sym(s) if s.var() == var => Ok(s),
            Value::Sym(_) => Err(Error::MixedVariable),
        }
    }

    fn symbol_default(self, default: SymVar) -> Result<Symbol> {
        let var = self.var().unwrap_or(default);
        self.into_symbol(var)
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    floor: HalfInt,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, floor: HalfInt) -> Result<Self> {
        Ok(Parser { toks: tokenize(src)?, at: 0, end: src.len(), floor, src })
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn finish(&self) -> Result<()> {
        if self.at < self.toks.len() {
            return self.err(format!("trailing input '{}'", &self.src[self.pos()..]));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let rhs = self.term()?;
                acc = self.add(acc, rhs, false)?;
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = self.add(acc, rhs, true)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = self.mul(acc, rhs)?;
            } else if self.eat('/') {
                let pos = self.pos();
                let rhs = self.unary()?;
                acc = self.div(acc, rhs, pos)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Value> {
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(neg(v));
        }
        self.power()
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                let n: i64 = n.try_into().map_err(|_| Error::Parse { pos: self.pos(), msg: "exponent too large".into() })?;
                Ok(if neg { -n } else { n })
            }
            _ => self.err("expected an integer"),
        }
    }

    fn exponent(&mut self) -> Result<HalfInt> {
        if self.eat('{') {
            let n = self.int()?;
            let e = if self.eat('/') {
                match self.int()? {
                    1 => HalfInt::int(n),
                    2 => HalfInt::halves(n),
                    _ => return self.err("exponents must lie in 1/2 Z"),
                }
            } else {
                HalfInt::int(n)
            };
            self.expect('}')?;
            Ok(e)
        } else {
            Ok(HalfInt::int(self.int()?))
        }
    }

    fn integer_exponent(&mut self) -> Result<i32> {
        let pos = self.pos();
        let e = self.exponent()?;
        match e.to_int().and_then(|n| i32::try_from(n).ok()) {
            Some(n) => Ok(n),
            None => Err(Error::Parse { pos, msg: format!("exponent {e} must be an integer here") }),
        }
    }

    fn power(&mut self) -> Result<Value> {
        let pos = self.pos();
        let tok = match self.peek().cloned() {
            Some(t) => t,
            None => return self.err("unexpected end of input"),
        };
        self.at += 1;
        let monomial = |p: i32, q: i32, k: i32, var: Option<SymVar>| Value::Fn(CoeffFn::raw(GaussRat::one(), k, p, q), var);
        match tok {
            Tok::Int(n) => self.maybe_pow(Value::Fn(CoeffFn::constant(Scalar::constant(GaussRat::real(Rat::from_integer(n)))), None)),
            Tok::Op('(') => {
                let v = self.expr()?;
                self.expect(')')?;
                self.maybe_pow(v)
            }
            Tok::Ident(name) => {
                if self.peek() == Some(&Tok::Op('(')) {
                    self.at += 1;
                    let mut args = vec![self.expr()?];
                    while self.eat(',') {
                        args.push(self.expr()?);
                    }
                    self.expect(')')?;
                    let v = self.call(&name, args, pos)?;
                    return self.maybe_pow(v);
                }
                let e = if self.eat('^') { Some(pos) } else { None };
                let int_exp = |p: &mut Self| -> Result<i32> { if e.is_some() { p.integer_exponent() } else { Ok(1) } };
                match name.as_str() {
                    "i" => {
                        let n = int_exp(self)?;
                        let v = GaussRat::i().pow(n as i64)?;
                        Ok(Value::Fn(CoeffFn::constant(Scalar::constant(v)), None))
                    }
                    "M" => Ok(monomial(0, 0, int_exp(self)?, None)),
                    "t" => Ok(monomial(int_exp(self)?, 0, 0, None)),
                    "x" => Ok(monomial(0, int_exp(self)?, 0, None)),
                    "r" => Ok(monomial(0, int_exp(self)?, 0, Some(SymVar::R))),
                    "xi" => Ok(monomial(0, int_exp(self)?, 0, Some(SymVar::Xi))),
                    "d_r" | "d_xi" => {
                        let var = if name == "d_r" { SymVar::R } else { SymVar::Xi };
                        let order = if e.is_some() { self.exponent()? } else { HalfInt::ONE };
                        Ok(Value::Sym(Symbol::d(var, order)))
                    }
                    _ => Err(Error::Parse { pos, msg: format!("unknown name '{name}'") }),
                }
            }
            Tok::Op(c) => Err(Error::Parse { pos, msg: format!("unexpected '{c}'") }),
        }
    }

    fn maybe_pow(&mut self, base: Value) -> Result<Value> {
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        let n = self.integer_exponent()?;
        if n < 0 {
            if let Value::Fn(f, var) = &base {
                if let Some(s) = f.as_scalar() {
                    return Ok(Value::Fn(CoeffFn::constant(s.pow(n as i64)?), *var));
                }
            }
            return Err(Error::Parse { pos, msg: "negative powers only apply to monomials and constants".into() });
        }
        let mut acc = Value::Fn(CoeffFn::one(), None);
        for _ in 0..n {
            acc = self.mul(acc, base.clone())?;
        }
        Ok(acc)
    }

    fn add(&self, a: Value, b: Value, subtract: bool) -> Result<Value> {
        let b = if subtract { neg(b) } else { b };
        match (a, b) {
            (Value::Fn(f, va), Value::Fn(g, vb)) => Ok(Value::Fn(&f + &g, unify(va, vb)?)),
            (a, b) => {
                let var = unify(a.var(), b.var())?.expect("a symbol operand fixes the variable");
                Ok(Value::Sym(a.into_symbol(var)?.add(&b.into_symbol(var)?)?))
            }
        }
    }

    fn mul(&self, a: Value, b: Value) -> Result<Value> {
        match (a, b) {
            (Value::Fn(f, va), Value::Fn(g, vb)) => Ok(Value::Fn(&f * &g, unify(va, vb)?)),
            (Value::Fn(f, va), Value::Sym(s)) => {
                unify(va, Some(s.var()))?;
                Ok(Value::Sym(s.left_mul_fn(&f)))
            }
            (Value::Sym(s), b) => {
                let rhs = b.into_symbol(s.var())?;
                Ok(Value::Sym(s.mul(&rhs, self.floor)?))
            }
        }
    }

    fn div(&self, a: Value, b: Value, pos: usize) -> Result<Value> {
        let inv = match &b {
            Value::Fn(f, None) => f.as_scalar().map(|s| s.inv()),
            _ => None,
        };
        match inv {
            Some(inv) => {
                let inv = inv?;
                Ok(match a {
                    Value::Fn(f, v) => Value::Fn(f.scale(&inv), v),
                    Value::Sym(s) => Value::Sym(s.scale(&inv)),
                })
            }
            None => Err(Error::Parse { pos, msg: "division only by nonzero constants".into() }),
        }
    }

    fn nu_arg(&self, args: &[Value], pos: usize) -> Result<GaussRat> {
        match args.get(1) {
            None => Ok(GaussRat::zero()),
            Some(Value::Fn(f, None)) => {
                let s = f.as_scalar().ok_or(Error::Parse { pos, msg: "nu must be a constant".into() })?;
                if s.terms().any(|(k, _)| k != 0) {
                    return Err(Error::Parse { pos, msg: "nu must not involve M".into() });
                }
                Ok(s.coeff(0))
            }
            Some(_) => Err(Error::Parse { pos, msg: "nu must be a constant".into() }),
        }
    }

    fn call(&self, name: &str, args: Vec<Value>, pos: usize) -> Result<Value> {
        let arity = |n: std::ops::RangeInclusive<usize>| -> Result<()> {
            if n.contains(&args.len()) {
                Ok(())
            } else {
                Err(Error::Parse { pos, msg: format!("{name} takes {:?} arguments, got {}", n, args.len()) })
            }
        };
        let fl = self.floor;
        match name {
            "theta" | "theta_inv" | "theta_t" => {
                arity(1..=2)?;
                let th = Theta::new(self.nu_arg(&args, pos)?);
                let src = if name == "theta_inv" { SymVar::R } else { SymVar::Xi };
                let s = args[0].clone().into_symbol(src)?;
                Ok(Value::Sym(match name {
                    "theta" => th.theta(&s, fl)?,
                    "theta_inv" => th.theta_inv(&s, fl)?,
                    _ => th.theta_t(&s, fl)?,
                }))
            }
            "bracket" => {
                arity(2..=2)?;
                let var = unify(args[0].var(), args[1].var())?.unwrap_or(SymVar::R);
                let a = args[0].clone().into_symbol(var)?;
                let b = args[1].clone().into_symbol(var)?;
                Ok(Value::Sym(a.bracket(&b, fl)?))
            }
            "trace" => {
                arity(1..=1)?;
                Ok(Value::Fn(args[0].clone().symbol_default(SymVar::R)?.adler_trace()?, None))
            }
            "euler" => {
                arity(1..=1)?;
                Ok(Value::Sym(args[0].clone().symbol_default(SymVar::R)?.euler()))
            }
            "plus" => {
                arity(1..=1)?;
                Ok(Value::Sym(args[0].clone().symbol_default(SymVar::R)?.differential_part()))
            }
            "dt" => {
                arity(1..=1)?;
                Ok(match args[0].clone() {
                    Value::Fn(f, v) => Value::Fn(f.deriv(Var::T), v),
                    Value::Sym(s) => Value::Sym(s.time_deriv()),
                })
            }
            _ => Err(Error::Parse { pos, msg: format!("unknown function '{name}'") }),
        }
    }
}

fn neg(v: Value) -> Value {
    match v {
        Value::Fn(f, var) => Value::Fn(-&f, var),
        Value::Sym(s) => Value::Sym(s.neg()),
    }
}

fn parse_value(src: &str, floor: HalfInt) -> Result<Value> {
    let mut p = Parser::new(src, floor)?;
    let v = p.expr()?;
    p.finish()?;
    Ok(v)
}

/// Evaluate an expression; symbols render with their floor annotation.
pub fn eval(src: &str, floor: HalfInt) -> Result<String> {
    Ok(match parse_value(src, floor)? {
        Value::Fn(f, None) => f.to_string(),
        Value::Fn(f, Some(var)) => f.render(var.name()),
        Value::Sym(s) => s.to_string(),
    })
}

/// Parse a function in canonical form; `x` is the space variable.
pub fn parse_coeff(src: &str) -> Result<CoeffFn> {
    match parse_value(src, HalfInt::ZERO)? {
        Value::Fn(f, _) => Ok(f),
        Value::Sym(_) => Err(Error::Parse { pos: 0, msg: "expected a function, found a symbol".into() }),
    }
}

/// Depth used when a body marked exact still needs a truncated product.
const EXACT_PARSE_FLOOR: HalfInt = HalfInt(-64);

/// Parse `body | exact` or `body | floor=F` as a symbol in `var`.
pub fn parse_symbol(src: &str, var: SymVar) -> Result<Symbol> {
    let (body, floor) = match src.rsplit_once('|') {
        None => (src, None),
        Some((body, ann)) => {
            let ann = ann.trim();
            let floor = if ann == "exact" {
                None
            } else if let Some(f) = ann.strip_prefix("floor=") {
                Some(f.parse::<HalfInt>().map_err(|msg| Error::Parse { pos: body.len() + 1, msg })?)
            } else {
                return Err(Error::Parse { pos: body.len() + 1, msg: format!("bad annotation '{ann}'") });
            };
            (body, floor)
        }
    };
    let s = parse_value(body, floor.unwrap_or(EXACT_PARSE_FLOOR))?.into_symbol(var)?;
    match floor {
        Some(_) => Ok(s.with_floor(floor)),
        None if s.is_exact() => Ok(s),
        None => Err(Error::Parse { pos: 0, msg: "annotated exact but the body does not terminate".into() }),
    }
}

impl FromStr for CoeffFn {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_coeff(s)
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_coeff(s)?.as_scalar().ok_or(Error::Parse { pos: 0, msg: "expected a constant".into() })
    }
}

impl FromStr for GaussRat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let sc: Scalar = s.parse()?;
        if sc.terms().any(|(k, _)| k != 0) {
            return Err(Error::Parse { pos: 0, msg: "expected a number without M".into() });
        }
        Ok(sc.coeff(0))
    }
}

/// Symbols over `r` unless the text mentions `xi` or `d_xi`.
impl FromStr for Symbol {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let var = if s.contains("xi") { SymVar::Xi } else { SymVar::R };
        parse_symbol(s, var)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FL: HalfInt = HalfInt(-7);

    #[test]
    fn theta_of_euler_generator() {
        assert_eq!(eval("theta(xi*d_xi)", FL).unwrap(), "1/2*r*d_r | exact");
        assert_eq!(eval("theta(xi)", FL).unwrap(), "1/2*r*d_r^-1 | exact");
        assert_eq!(eval("theta(d_xi^{1/2})", FL).unwrap(), "d_r | exact");
    }

    #[test]
    fn arithmetic_and_brackets() {
        assert_eq!(eval("bracket(d_r, r)", FL).unwrap(), "1 | exact");
        assert_eq!(eval("(1 + i)^2", FL).unwrap(), "2*i");
        assert_eq!(eval("3/2*M^-1*t^2 - t^2*M^-1", FL).unwrap(), "1/2*M^-1*t^2");
        assert_eq!(eval("trace(r^-1*d_r^-1)", FL).unwrap(), "1");
        assert!(matches!(eval("r*xi", FL), Err(Error::MixedVariable)));
        assert!(matches!(eval("1/0", FL), Err(Error::DivisionByZero) | Err(Error::Parse { .. }) | Err(Error::NonUnit(_))));
        assert!(matches!(eval("foo(1)", FL), Err(Error::Parse { .. })));
        assert!(matches!(eval("t +", FL), Err(Error::Parse { .. })));
    }

    #[test]
    fn canonical_forms_round_trip() {
        for text in ["(3/2 + 1/2*i)*M^-1*t^2*x^-1", "-1/64*M^-6*t^6 + 3/16*i*M^-5*t^5*x", "0", "-i*t^-3"] {
            let f: CoeffFn = text.parse().unwrap();
            assert_eq!(f.to_string(), text);
        }
        for text in ["1/2*r*d_r | exact", "-t*xi^2*d_xi^{-3/2} + 2*d_xi^-2 | floor=-7/2", "0 | floor=-1"] {
            let s: Symbol = text.parse().unwrap();
            assert_eq!(s.to_string(), text);
        }
    }
}
