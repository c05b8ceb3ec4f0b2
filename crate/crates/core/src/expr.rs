//! Exact arithmetic expressions over the coordinate field, used for family
//! parameters, derived quantities, constraints and isometry templates.
//!
//! Grammar:
//! ```text
//! cond   := expr ("==" | "=" | "!=" | "<" | "<=" | ">" | ">=") expr
//! expr   := ["-"] term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := atom ["^" integer]
//! atom   := number | "r2" | "r3" | "r6" | name | name "." ("x" | "y")
//!         | name "(" expr ("," expr)* ")" | "(" expr ")" | "-" factor
//! ```
//! Numbers are decimal integers or decimals (`0.25`), read exactly.
//! Built-in functions: `cos15(k)` and `sin15(k)` for angles `k·15°`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::field::{cos_sin_15, Scalar};
use crate::{Point, QScalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("syntax error in {text:?} at byte {pos}: {msg}")]
    Syntax { text: String, pos: usize, msg: String },
    #[error("unknown name {0:?}")]
    Unknown(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0}() takes an integer argument")]
    NonInteger(String),
    #[error("unknown function {0:?}")]
    UnknownFunction(String),
    #[error("{name}() expects {expected} argument(s), got {found}")]
    Arity { name: String, expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(QScalar),
    Var(String),
    Coord(String, Axis),
    Neg(Box<Expr>),
    Bin(Box<Expr>, Op, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(String, Vec<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl Rel {
    fn symbol(self) -> &'static str {
        match self {
            Rel::Eq => "=",
            Rel::Ne => "!=",
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Gt => ">",
            Rel::Ge => ">=",
        }
    }
}

/// A relation between two expressions.
#[derive(Debug, Clone, PartialEq)]
pub struct Condition {
    pub lhs: Expr,
    pub rel: Rel,
    pub rhs: Expr,
}

/// Named scalars and points available to an expression.
#[derive(Debug, Clone, Default)]
pub struct Env {
    scalars: HashMap<String, QScalar>,
    points: HashMap<String, Point>,
}

impl Env {
    pub fn new() -> Self {
        Env::default()
    }

    pub fn set(&mut self, name: &str, value: QScalar) {
        self.scalars.insert(name.to_string(), value);
    }

    pub fn set_point(&mut self, name: &str, p: Point) {
        self.points.insert(name.to_string(), p);
    }

    pub fn get(&self, name: &str) -> Option<&QScalar> {
        self.scalars.get(name)
    }

    pub fn point(&self, name: &str) -> Option<&Point> {
        self.points.get(name)
    }
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr, ExprError> {
        let mut p = Parser::new(text);
        let e = p.expr()?;
        p.finish()?;
        Ok(e)
    }

    pub fn eval(&self, env: &Env) -> Result<QScalar, ExprError> {
        match self {
            Expr::Num(v) => Ok(v.clone()),
            Expr::Var(name) => env.get(name).cloned().ok_or_else(|| ExprError::Unknown(name.clone())),
            Expr::Coord(name, axis) => {
                let p = env.point(name).ok_or_else(|| ExprError::Unknown(name.clone()))?;
                Ok(match axis {
                    Axis::X => p.x.clone(),
                    Axis::Y => p.y.clone(),
                })
            }
            Expr::Neg(e) => Ok(-e.eval(env)?),
            Expr::Bin(a, op, b) => {
                let (x, y) = (a.eval(env)?, b.eval(env)?);
                match op {
                    Op::Add => Ok(x + &y),
                    Op::Sub => Ok(x - &y),
                    Op::Mul => Ok(x * &y),
                    Op::Div => {
                        if y.is_zero() {
                            Err(ExprError::DivisionByZero)
                        } else {
                            Ok(x / &y)
                        }
                    }
                }
            }
            Expr::Pow(e, k) => {
                let base = e.eval(env)?;
                let mut acc = QScalar::one();
                for _ in 0..k.unsigned_abs() {
                    acc = acc * &base;
                }
                if *k < 0 {
                    acc.inverse().ok_or(ExprError::DivisionByZero)
                } else {
                    Ok(acc)
                }
            }
            Expr::Call(name, args) => {
                let arity = |n: usize| {
                    if args.len() == n {
                        Ok(())
                    } else {
                        Err(ExprError::Arity {
                            name: name.clone(),
                            expected: n,
                            found: args.len(),
                        })
                    }
                };
                match name.as_str() {
                    "cos15" | "sin15" => {
                        arity(1)?;
                        let k = args[0]
                            .eval(env)?
                            .to_integer()
                            .ok_or_else(|| ExprError::NonInteger(name.clone()))?;
                        let (c, s) = cos_sin_15::<crate::Rational>(k);
                        Ok(if name == "cos15" { c } else { s })
                    }
                    _ => Err(ExprError::UnknownFunction(name.clone())),
                }
            }
        }
    }

    /// Names of scalars and points the expression reads.
    pub fn names(&self, out: &mut Vec<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(n) | Expr::Coord(n, _) => {
                if !out.contains(n) {
                    out.push(n.clone());
                }
            }
            Expr::Neg(e) | Expr::Pow(e, _) => e.names(out),
            Expr::Bin(a, _, b) => {
                a.names(out);
                b.names(out);
            }
            Expr::Call(_, args) => args.iter().for_each(|a| a.names(out)),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => {
                if v.is_rational() && !v.is_negative() {
                    write!(f, "{v}")
                } else {
                    write!(f, "({v})")
                }
            }
            Expr::Var(n) => f.write_str(n),
            Expr::Coord(n, Axis::X) => write!(f, "{n}.x"),
            Expr::Coord(n, Axis::Y) => write!(f, "{n}.y"),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Bin(a, op, b) => {
                let s = match op {
                    Op::Add => "+",
                    Op::Sub => "-",
                    Op::Mul => "*",
                    Op::Div => "/",
                };
                write!(f, "({a}{s}{b})")
            }
            Expr::Pow(e, k) => write!(f, "({e})^{k}"),
            Expr::Call(n, args) => {
                write!(f, "{n}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl Condition {
    pub fn parse(text: &str) -> Result<Condition, ExprError> {
        let mut p = Parser::new(text);
        let lhs = p.expr()?;
        let rel = p.relation()?;
        let rhs = p.expr()?;
        p.finish()?;
        Ok(Condition { lhs, rel, rhs })
    }

    pub fn holds(&self, env: &Env) -> Result<bool, ExprError> {
        let d = self.lhs.eval(env)? - &self.rhs.eval(env)?;
        let s = d.sign().as_i8();
        Ok(match self.rel {
            Rel::Eq => s == 0,
            Rel::Ne => s != 0,
            Rel::Lt => s < 0,
            Rel::Le => s <= 0,
            Rel::Gt => s > 0,
            Rel::Ge => s >= 0,
        })
    }

    /// Same relation with the sides read in either order.
    pub fn equivalent(&self, other: &Condition) -> bool {
        let flipped = |r: Rel| match r {
            Rel::Lt => Rel::Gt,
            Rel::Le => Rel::Ge,
            Rel::Gt => Rel::Lt,
            Rel::Ge => Rel::Le,
            r => r,
        };
        (self.lhs == other.lhs && self.rel == other.rel && self.rhs == other.rhs)
            || (self.lhs == other.rhs && flipped(self.rel) == other.rel && self.rhs == other.lhs)
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.rel.symbol(), self.rhs)
    }
}

/// Parses a single value, either a field literal or a constant expression.
pub fn parse_value(text: &str) -> Result<QScalar, ExprError> {
    if let Ok(v) = text.parse::<QScalar>() {
        return Ok(v);
    }
    Expr::parse(text)?.eval(&Env::new())
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            text,
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, msg: &str) -> ExprError {
        ExprError::Syntax {
            text: self.text.to_string(),
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn finish(&mut self) -> Result<(), ExprError> {
        if self.peek().is_some() {
            Err(self.error("unexpected trailing input"))
        } else {
            Ok(())
        }
    }

    fn relation(&mut self) -> Result<Rel, ExprError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        for (tok, rel) in [
            ("==", Rel::Eq),
            ("!=", Rel::Ne),
            ("<=", Rel::Le),
            (">=", Rel::Ge),
            ("=", Rel::Eq),
            ("<", Rel::Lt),
            (">", Rel::Gt),
        ] {
            if rest.starts_with(tok) {
                self.pos += tok.len();
                return Ok(rel);
            }
        }
        Err(self.error("expected a relation"))
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(b'+') => Op::Add,
                Some(b'-') => Op::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(Box::new(lhs), op, Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek() {
                Some(b'*') => Op::Mul,
                Some(b'/') => Op::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = Expr::Bin(Box::new(lhs), op, Box::new(rhs));
        }
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let negative = self.eat(b'-');
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let k: i32 = self.text[start..self.pos]
                .parse()
                .map_err(|_| self.error("expected an integer exponent"))?;
            return Ok(Expr::Pow(Box::new(base), if negative { -k } else { k }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = self.text[start..self.pos].to_string();
                match name.as_str() {
                    "r2" => return Ok(Expr::Num(QScalar::sqrt2())),
                    "r3" => return Ok(Expr::Num(QScalar::sqrt3())),
                    "r6" => return Ok(Expr::Num(QScalar::sqrt6())),
                    _ => {}
                }
                if self.bytes.get(self.pos) == Some(&b'.') {
                    self.pos += 1;
                    let axis = match self.bytes.get(self.pos) {
                        Some(b'x') => Axis::X,
                        Some(b'y') => Axis::Y,
                        _ => return Err(self.error("expected .x or .y")),
                    };
                    self.pos += 1;
                    return Ok(Expr::Coord(name, axis));
                }
                if self.eat(b'(') {
                    let mut args = vec![self.expr()?];
                    while self.eat(b',') {
                        args.push(self.expr()?);
                    }
                    if !self.eat(b')') {
                        return Err(self.error("expected ')'"));
                    }
                    return Ok(Expr::Call(name, args));
                }
                Ok(Expr::Var(name))
            }
            _ => Err(self.error("expected a value")),
        }
    }

    fn number(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        while self.pos < self.bytes.len() && (self.bytes[self.pos].is_ascii_digit() || self.bytes[self.pos] == b'.') {
            self.pos += 1;
        }
        let lit = &self.text[start..self.pos];
        let (int, frac) = lit.split_once('.').unwrap_or((lit, ""));
        if frac.contains('.') || (int.is_empty() && frac.is_empty()) {
            return Err(self.error("malformed number"));
        }
        let digits = format!("{int}{frac}");
        let denom = format!("1{}", "0".repeat(frac.len()));
        let value = <crate::Rational as crate::field::Coefficient>::parse_ratio(&format!("{digits}/{denom}"))
            .ok_or_else(|| self.error("malformed number"))?;
        Ok(Expr::Num(QScalar::rational(value)))
    }
}

/// Evaluates a list of `(x, y)` expression pairs into a point.
pub fn eval_point(x: &Expr, y: &Expr, env: &Env) -> Result<Point, ExprError> {
    Ok(Point::new(x.eval(env)?, y.eval(env)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    fn eval(s: &str) -> QScalar {
        Expr::parse(s).unwrap().eval(&Env::new()).unwrap()
    }

    #[test]
    fn arithmetic() {
        assert_eq!(eval("1 + 2*3"), q(7, 1));
        assert_eq!(eval("(1+2)*3"), q(9, 1));
        assert_eq!(eval("3/4 - 1/4"), q(1, 2));
        assert_eq!(eval("-2^2"), q(-4, 1));
        assert_eq!(eval("2^-1"), q(1, 2));
        assert_eq!(eval("0.25"), q(1, 4));
        assert_eq!(eval("r2*r3"), QScalar::sqrt6());
        assert_eq!(eval("r2^2"), q(2, 1));
        assert_eq!(eval("cos15(4)"), q(1, 2));
        assert_eq!(eval("sin15(6)"), q(1, 1));
    }

    #[test]
    fn names_and_points() {
        let mut env = Env::new();
        env.set("a", q(3, 1));
        env.set_point("P", Point::new(q(1, 2), q(5, 1)));
        let e = Expr::parse("a*P.x + P.y").unwrap();
        assert_eq!(e.eval(&env).unwrap(), q(13, 2));
        let mut names = Vec::new();
        e.names(&mut names);
        assert_eq!(names, vec!["a".to_string(), "P".to_string()]);
        assert_eq!(
            Expr::parse("b").unwrap().eval(&env),
            Err(ExprError::Unknown("b".into()))
        );
    }

    #[test]
    fn conditions() {
        let mut env = Env::new();
        env.set("a", q(1, 1));
        env.set("b", q(2, 1));
        assert!(Condition::parse("a < b").unwrap().holds(&env).unwrap());
        assert!(Condition::parse("2*a = b").unwrap().holds(&env).unwrap());
        assert!(Condition::parse("a != b").unwrap().holds(&env).unwrap());
        assert!(!Condition::parse("a >= b").unwrap().holds(&env).unwrap());
        let c1 = Condition::parse("a < b").unwrap();
        let c2 = Condition::parse("b > a").unwrap();
        assert!(c1.equivalent(&c2));
    }

    #[test]
    fn syntax_errors() {
        assert!(Expr::parse("1 +").is_err());
        assert!(Expr::parse("(1").is_err());
        assert!(Expr::parse("1 2").is_err());
        assert!(Condition::parse("a b").is_err());
        assert_eq!(Expr::parse("1/0").unwrap().eval(&Env::new()), Err(ExprError::DivisionByZero));
    }

    #[test]
    fn values() {
        assert_eq!(parse_value("1/2+3*r2").unwrap(), "1/2+3*r2".parse::<QScalar>().unwrap());
        assert_eq!(parse_value("(1+r3)/2").unwrap(), q(1, 2) + &(QScalar::sqrt3() * &q(1, 2)));
    }
}
