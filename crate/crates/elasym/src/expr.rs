//! A small expression language for tensor formulas, so that the covariant
//! and invariant tables are transcribed as data.
//!
//! ```text
//! expr    := term (op term)*          op: .  :  |  x   (left associative)
//! term    := factor ('*' factor)*     matrix product (one contraction)
//! factor  := primary ('^' integer)?   matrix power
//! primary := name | func '(' expr ')' | '(' expr ')'
//! func    := tr | tr13 | sym | eps
//! ```
//!
//! `.`, `:` and `|` contract one, two and three indices (last ones of the
//! left operand against first ones of the right operand); `x` is the
//! generalized cross product of the symmetrized operands; `tr` contracts the
//! first index pair, `tr13` the first and third indices, `sym` symmetrizes
//! and `eps(M)` is `ε_{ijk} M_{jk}`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::tensor::{ops, Tensor};

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Name(String),
    Contract(Box<Node>, Box<Node>, usize),
    Cross(Box<Node>, Box<Node>),
    Pow(Box<Node>, usize),
    Func(Func, Box<Node>),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Func {
    Tr,
    Tr13,
    Sym,
    Eps,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(usize),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Int(s.parse().map_err(|_| Error::Expr(format!("bad integer {s}")))?));
        } else if "().:|*^".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Expr(format!("unexpected character {c:?} in {src:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.toks.get(self.pos) {
            Some(Tok::Sym(s)) if *s == c => {
                self.pos += 1;
                Ok(())
            }
            other => Err(Error::Expr(format!("expected {c:?}, found {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Sym('.')) => Some(1),
                Some(Tok::Sym(':')) => Some(2),
                Some(Tok::Sym('|')) => Some(3),
                Some(Tok::Ident(s)) if s == "x" => Some(0),
                _ => None,
            };
            let Some(op) = op else { break };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == 0 {
                Node::Cross(Box::new(lhs), Box::new(rhs))
            } else {
                Node::Contract(Box::new(lhs), Box::new(rhs), op)
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.factor()?;
        while let Some(Tok::Sym('*')) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = Node::Contract(Box::new(lhs), Box::new(rhs), 1);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Node> {
        let base = self.primary()?;
        if let Some(Tok::Sym('^')) = self.peek() {
            self.pos += 1;
            match self.toks.get(self.pos) {
                Some(Tok::Int(k)) if *k >= 1 => {
                    let k = *k;
                    self.pos += 1;
                    return Ok(Node::Pow(Box::new(base), k));
                }
                other => return Err(Error::Expr(format!("expected exponent, found {other:?}"))),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Node> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let func = match name.as_str() {
                    "tr" => Some(Func::Tr),
                    "tr13" => Some(Func::Tr13),
                    "sym" => Some(Func::Sym),
                    "eps" => Some(Func::Eps),
                    _ => None,
                };
                match func {
                    Some(f) if matches!(self.peek(), Some(Tok::Sym('('))) => {
                        self.pos += 1;
                        let e = self.expr()?;
                        self.expect(')')?;
                        Ok(Node::Func(f, Box::new(e)))
                    }
                    _ => Ok(Node::Name(name)),
                }
            }
            other => Err(Error::Expr(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse(src: &str) -> Result<Node> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Expr(format!("trailing input in {src:?}")));
    }
    Ok(e)
}

/// Named tensor values.
pub type Env = HashMap<String, Tensor>;

pub fn eval(node: &Node, env: &Env) -> Result<Tensor> {
    match node {
        Node::Name(n) => env.get(n).cloned().ok_or_else(|| Error::Expr(format!("unknown name {n}"))),
        Node::Contract(l, r, k) => eval(l, env)?.contract(&eval(r, env)?, *k),
        Node::Cross(l, r) => {
            let a = eval(l, env)?.symmetrize();
            let b = eval(r, env)?.symmetrize();
            Tensor::from_sym(&ops::cross(&a, &b)?)
        }
        Node::Pow(b, k) => {
            let base = eval(b, env)?;
            let mut acc = base.clone();
            for _ in 1..*k {
                acc = acc.contract(&base, 1)?;
            }
            Ok(acc)
        }
        Node::Func(f, arg) => {
            let v = eval(arg, env)?;
            match f {
                Func::Tr => v.trace_pair(0, 1),
                Func::Tr13 => {
                    if v.order() < 3 {
                        return Err(Error::OrderTooSmall { needed: 3, got: v.order() });
                    }
                    v.trace_pair(0, 2)
                }
                Func::Sym => Tensor::from_sym(&v.symmetrize()),
                Func::Eps => {
                    if v.order() != 2 {
                        return Err(Error::WrongOrder { expected: 2, got: v.order() });
                    }
                    Tensor::levi_civita().contract(&v, 2)
                }
            }
        }
    }
}

/// A named formula.
#[derive(Clone, Debug)]
pub struct Def {
    pub name: String,
    pub node: Node,
}

/// Parses `(name, source)` pairs.
pub fn compile(defs: &[(&str, &str)]) -> Result<Vec<Def>> {
    defs.iter()
        .map(|(n, s)| Ok(Def { name: n.to_string(), node: parse(s)? }))
        .collect()
}

/// Evaluates definitions in order; each result is added to `env` under its
/// name so later formulas can refer to it.
pub fn run(defs: &[Def], env: &mut Env) -> Result<Vec<Tensor>> {
    let mut out = Vec::with_capacity(defs.len());
    for d in defs {
        let v = eval(&d.node, env)?;
        env.insert(d.name.clone(), v.clone());
        out.push(v);
    }
    Ok(out)
}
