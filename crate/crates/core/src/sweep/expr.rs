//! Sweep parameters by name and the constraint language binding one
//! parameter to the others.
//!
//! A constraint is `target = expression`, where the expression is a Laurent
//! polynomial in parameter names: numbers, names, `+ - * /`, parentheses and
//! integer powers `^k`. Division is only by a single term, so every expression
//! normalizes to a sum of monomials `c · Π p_i^{k_i}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::SystemParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Param {
    DeltaA,
    DeltaC,
    G,
    X1,
    X2,
    V,
    Epsilon,
    Kappa,
    /// Both atomic decay rates at once.
    Gamma,
    Gamma1,
    Gamma2,
    /// Correlation delay; only meaningful as an axis.
    Tau,
}

impl Param {
    pub const ALL: [Param; 12] = [
        Param::DeltaA,
        Param::DeltaC,
        Param::G,
        Param::X1,
        Param::X2,
        Param::V,
        Param::Epsilon,
        Param::Kappa,
        Param::Gamma,
        Param::Gamma1,
        Param::Gamma2,
        Param::Tau,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Param::DeltaA => "delta_a",
            Param::DeltaC => "delta_c",
            Param::G => "g",
            Param::X1 => "x1",
            Param::X2 => "x2",
            Param::V => "V",
            Param::Epsilon => "epsilon",
            Param::Kappa => "kappa",
            Param::Gamma => "gamma",
            Param::Gamma1 => "gamma1",
            Param::Gamma2 => "gamma2",
            Param::Tau => "tau",
        }
    }

    /// Carries units of frequency (converted between unit systems).
    pub fn is_rate(self) -> bool {
        !matches!(self, Param::X1 | Param::X2 | Param::Tau)
    }

    pub fn get(self, p: &SystemParams) -> f64 {
        match self {
            Param::DeltaA => p.delta_a,
            Param::DeltaC => p.delta_c,
            Param::G => p.g,
            Param::X1 => p.x1,
            Param::X2 => p.x2,
            Param::V => p.v,
            Param::Epsilon => p.epsilon,
            Param::Kappa => p.kappa,
            Param::Gamma | Param::Gamma1 => p.gamma1,
            Param::Gamma2 => p.gamma2,
            Param::Tau => f64::NAN,
        }
    }

    /// Panics for [`Param::Tau`], which is not part of [`SystemParams`].
    pub fn set(self, p: &mut SystemParams, value: f64) {
        match self {
            Param::DeltaA => p.delta_a = value,
            Param::DeltaC => p.delta_c = value,
            Param::G => p.g = value,
            Param::X1 => p.x1 = value,
            Param::X2 => p.x2 = value,
            Param::V => p.v = value,
            Param::Epsilon => p.epsilon = value,
            Param::Kappa => p.kappa = value,
            Param::Gamma => {
                p.gamma1 = value;
                p.gamma2 = value;
            }
            Param::Gamma1 => p.gamma1 = value,
            Param::Gamma2 => p.gamma2 = value,
            Param::Tau => panic!("tau is not a system parameter"),
        }
    }

    /// Whether writing `self` changes the value read through `other`.
    pub fn overlaps(self, other: Param) -> bool {
        use Param::{Gamma, Gamma1, Gamma2};
        self == other || matches!((self, other), (Gamma, Gamma1 | Gamma2) | (Gamma1 | Gamma2, Gamma))
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "v" {
            return Ok(Param::V);
        }
        Param::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::config(format!("unknown parameter '{s}'")))
    }
}

impl TryFrom<String> for Param {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Param> for String {
    fn from(p: Param) -> String {
        p.name().to_string()
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Monomial {
    coef: f64,
    /// Sorted by parameter, no zero exponents.
    powers: Vec<(Param, i32)>,
}

impl Monomial {
    fn constant(c: f64) -> Self {
        Monomial { coef: c, powers: Vec::new() }
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut powers = self.powers.clone();
        for &(p, k) in &other.powers {
            match powers.iter_mut().find(|(q, _)| *q == p) {
                Some(entry) => entry.1 += k,
                None => powers.push((p, k)),
            }
        }
        powers.retain(|&(_, k)| k != 0);
        powers.sort();
        Monomial {
            coef: self.coef * other.coef,
            powers,
        }
    }

    fn inverse(&self) -> Result<Monomial> {
        if self.coef == 0.0 {
            return Err(Error::config("division by zero in constraint"));
        }
        Ok(Monomial {
            coef: 1.0 / self.coef,
            powers: self.powers.iter().map(|&(p, k)| (p, -k)).collect(),
        })
    }

    fn eval(&self, params: &SystemParams) -> f64 {
        self.powers
            .iter()
            .fold(self.coef, |acc, &(p, k)| acc * p.get(params).powi(k))
    }
}

/// Sum of monomials.
#[derive(Debug, Clone, PartialEq)]
struct Polynomial(Vec<Monomial>);

impl Polynomial {
    fn plus(mut self, other: Polynomial) -> Polynomial {
        self.0.extend(other.0);
        self
    }

    fn scaled(self, s: f64) -> Polynomial {
        Polynomial(self.0.into_iter().map(|m| Monomial { coef: m.coef * s, ..m }).collect())
    }

    fn times(&self, other: &Polynomial) -> Polynomial {
        let mut out = Vec::with_capacity(self.0.len() * other.0.len());
        for a in &self.0 {
            for b in &other.0 {
                out.push(a.times(b));
            }
        }
        Polynomial(out)
    }

    fn as_monomial(&self) -> Option<&Monomial> {
        match self.0.as_slice() {
            [m] => Some(m),
            _ => None,
        }
    }

    fn power(&self, k: i32) -> Result<Polynomial> {
        if k >= 0 {
            let mut out = Polynomial(vec![Monomial::constant(1.0)]);
            for _ in 0..k {
                out = out.times(self);
            }
            return Ok(out);
        }
        let m = self
            .as_monomial()
            .ok_or_else(|| Error::config("negative powers are only allowed on a single term"))?;
        Polynomial(vec![m.inverse()?]).power(-k)
    }

    fn params(&self) -> impl Iterator<Item = Param> + '_ {
        self.0.iter().flat_map(|m| m.powers.iter().map(|&(p, _)| p))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let v = text
                .parse()
                .map_err(|_| Error::config(format!("bad number '{text}' in constraint")))?;
            out.push(Token::Num(v));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::config(format!("unexpected character '{c}' in constraint")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.plus(self.term()?);
            } else if self.eat('-') {
                acc = acc.plus(self.term()?.scaled(-1.0));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.times(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                let m = d
                    .as_monomial()
                    .ok_or_else(|| Error::config("division is only supported by a single term"))?;
                acc = acc.times(&Polynomial(vec![m.inverse()?]));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.eat('-') {
            return Ok(self.unary()?.scaled(-1.0));
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.primary()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let k = match self.tokens.get(self.pos) {
                Some(Token::Num(v)) if v.fract() == 0.0 && v.abs() < 64.0 => *v as i32,
                _ => return Err(Error::config("exponent must be a small integer")),
            };
            self.pos += 1;
            return base.power(if neg { -k } else { k });
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Polynomial> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(v)) => {
                self.pos += 1;
                Ok(Polynomial(vec![Monomial::constant(v)]))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let p: Param = name.parse()?;
                Ok(Polynomial(vec![Monomial {
                    coef: 1.0,
                    powers: vec![(p, 1)],
                }]))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::config("missing ')' in constraint"));
                }
                Ok(inner)
            }
            other => Err(Error::config(format!("unexpected {other:?} in constraint"))),
        }
    }
}

/// `target = expression`, evaluated on the parameters of each grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Constraint {
    target: Param,
    expr: Polynomial,
    source: String,
}

impl Constraint {
    pub fn target(&self) -> Param {
        self.target
    }

    /// Parameters the right-hand side reads.
    pub fn inputs(&self) -> Vec<Param> {
        let mut v: Vec<Param> = self.expr.params().collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn evaluate(&self, params: &SystemParams) -> f64 {
        self.expr.0.iter().map(|m| m.eval(params)).sum()
    }

    /// Writes the target; a non-finite value (e.g. division by zero) is an error.
    pub fn apply(&self, params: &mut SystemParams) -> Result<()> {
        let v = self.evaluate(params);
        if !v.is_finite() {
            return Err(Error::Singular {
                what: "constraint",
                magnitude: v,
                scale: 0.0,
            });
        }
        self.target.set(params, v);
        Ok(())
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl FromStr for Constraint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (lhs, rhs) = s
            .split_once('=')
            .ok_or_else(|| Error::config(format!("constraint '{s}' has no '='")))?;
        let target: Param = lhs.trim().parse()?;
        if target == Param::Tau {
            return Err(Error::config("tau cannot be constrained"));
        }
        let mut parser = Parser {
            tokens: tokenize(rhs)?,
            pos: 0,
        };
        if parser.tokens.is_empty() {
            return Err(Error::config(format!("constraint '{s}' has an empty right-hand side")));
        }
        let expr = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::config(format!("trailing input in constraint '{s}'")));
        }
        let c = Constraint {
            target,
            expr,
            source: s.trim().to_string(),
        };
        let inputs = c.inputs();
        if inputs.contains(&Param::Tau) {
            return Err(Error::config("constraints cannot depend on tau"));
        }
        if inputs.iter().any(|p| p.overlaps(target)) {
            return Err(Error::config(format!("constraint '{s}' refers to its own target")));
        }
        Ok(c)
    }
}

impl TryFrom<String> for Constraint {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Constraint> for String {
    fn from(c: Constraint) -> String {
        c.source
    }
}
