//! Shape terms over one generator, their variables and variances.
//!
//! A shape is a term built from the generator `1`, the unit `I`, binary
//! tensor `*` and internal hom `[,]`. Variables are the occurrences of the
//! generator, addressed by the path from the root; the variance of a
//! variable is `+` exactly when the number of hom-domain steps on its path
//! is even.

use crate::error::{Error, Result};
use std::fmt;

/// A shape term. Tensor is binary in the term; [`ShapeTerm::tensor_all`]
/// builds the canonical left-associated n-ary form used for frames.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShapeTerm {
    Gen,
    Unit,
    Tensor(Box<ShapeTerm>, Box<ShapeTerm>),
    Hom(Box<ShapeTerm>, Box<ShapeTerm>),
}

impl ShapeTerm {
    pub fn tensor(left: ShapeTerm, right: ShapeTerm) -> ShapeTerm {
        ShapeTerm::Tensor(Box::new(left), Box::new(right))
    }

    pub fn hom(dom: ShapeTerm, cod: ShapeTerm) -> ShapeTerm {
        ShapeTerm::Hom(Box::new(dom), Box::new(cod))
    }

    /// The shape `X_m = [1^(*m), 1]`, with `1^(*0) = I`.
    pub fn x(m: usize) -> ShapeTerm {
        ShapeTerm::hom(
            ShapeTerm::tensor_all(std::iter::repeat(ShapeTerm::Gen).take(m)),
            ShapeTerm::Gen,
        )
    }

    /// Canonical n-ary tensor: left-associated fold with unit factors
    /// dropped; the empty tensor is `I`.
    pub fn tensor_all<I: IntoIterator<Item = ShapeTerm>>(factors: I) -> ShapeTerm {
        let mut acc: Option<ShapeTerm> = None;
        for f in factors {
            if f == ShapeTerm::Unit {
                continue;
            }
            acc = Some(match acc {
                None => f,
                Some(a) => ShapeTerm::tensor(a, f),
            });
        }
        acc.unwrap_or(ShapeTerm::Unit)
    }

    /// Top-level tensor factors, flattened, with unit factors dropped.
    pub fn tensor_factors(&self) -> Vec<&ShapeTerm> {
        let mut out = Vec::new();
        fn walk<'a>(t: &'a ShapeTerm, out: &mut Vec<&'a ShapeTerm>) {
            match t {
                ShapeTerm::Tensor(l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
                ShapeTerm::Unit => {}
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }

    /// Paths to the generator leaves, in left-to-right order.
    pub fn leaves(&self) -> Vec<VarPath> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        collect_leaves(self, &mut prefix, &mut out);
        out
    }

    /// Number of generator leaves.
    pub fn leaf_count(&self) -> usize {
        match self {
            ShapeTerm::Gen => 1,
            ShapeTerm::Unit => 0,
            ShapeTerm::Tensor(l, r) | ShapeTerm::Hom(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    /// The subterm at the end of `path`, if the path is valid.
    pub fn subterm(&self, path: &VarPath) -> Option<&ShapeTerm> {
        let mut cur = self;
        for step in &path.0 {
            cur = match (step, cur) {
                (Step::TensorLeft, ShapeTerm::Tensor(l, _)) => l,
                (Step::TensorRight, ShapeTerm::Tensor(_, r)) => r,
                (Step::HomDom, ShapeTerm::Hom(d, _)) => d,
                (Step::HomCod, ShapeTerm::Hom(_, c)) => c,
                _ => return None,
            };
        }
        Some(cur)
    }

    /// Replace the generator leaves, in leaf order, by the given subterms.
    pub fn substitute_leaves(&self, replacements: &[ShapeTerm]) -> Result<ShapeTerm> {
        if replacements.len() != self.leaf_count() {
            return Err(Error::ArityMismatch {
                expected: self.leaf_count(),
                got: replacements.len(),
            });
        }
        let mut idx = 0;
        fn walk(t: &ShapeTerm, reps: &[ShapeTerm], idx: &mut usize) -> ShapeTerm {
            match t {
                ShapeTerm::Gen => {
                    let r = reps[*idx].clone();
                    *idx += 1;
                    r
                }
                ShapeTerm::Unit => ShapeTerm::Unit,
                ShapeTerm::Tensor(l, r) => {
                    ShapeTerm::tensor(walk(l, reps, idx), walk(r, reps, idx))
                }
                ShapeTerm::Hom(d, c) => ShapeTerm::hom(walk(d, reps, idx), walk(c, reps, idx)),
            }
        }
        Ok(walk(self, replacements, &mut idx))
    }
}

fn collect_leaves(t: &ShapeTerm, prefix: &mut Vec<Step>, out: &mut Vec<VarPath>) {
    match t {
        ShapeTerm::Gen => out.push(VarPath(prefix.clone())),
        ShapeTerm::Unit => {}
        ShapeTerm::Tensor(l, r) => {
            prefix.push(Step::TensorLeft);
            collect_leaves(l, prefix, out);
            prefix.pop();
            prefix.push(Step::TensorRight);
            collect_leaves(r, prefix, out);
            prefix.pop();
        }
        ShapeTerm::Hom(d, c) => {
            prefix.push(Step::HomDom);
            collect_leaves(d, prefix, out);
            prefix.pop();
            prefix.push(Step::HomCod);
            collect_leaves(c, prefix, out);
            prefix.pop();
        }
    }
}

/// One step of a variable path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    TensorLeft,
    TensorRight,
    HomDom,
    HomCod,
}

/// Address of a generator leaf in a shape term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VarPath(pub Vec<Step>);

impl VarPath {
    pub fn variance(&self) -> Variance {
        let homdoms = self.0.iter().filter(|s| **s == Step::HomDom).count();
        if homdoms % 2 == 0 {
            Variance::Plus
        } else {
            Variance::Minus
        }
    }

    /// `self` followed by `inner`.
    pub fn join(&self, inner: &VarPath) -> VarPath {
        let mut steps = self.0.clone();
        steps.extend_from_slice(&inner.0);
        VarPath(steps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variance {
    Plus,
    Minus,
}

impl Variance {
    pub fn flip(self) -> Variance {
        match self {
            Variance::Plus => Variance::Minus,
            Variance::Minus => Variance::Plus,
        }
    }
}

impl fmt::Display for Variance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variance::Plus => write!(f, "+"),
            Variance::Minus => write!(f, "-"),
        }
    }
}

/// Which boundary of a would-be morphism a twisted variable lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Dom,
    Cod,
}

/// A variable of the twisted sum of `dom -> cod`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistedVar {
    pub side: Side,
    pub path: VarPath,
    pub variance: Variance,
}

/// Variables of a shape with their variances, in leaf order.
pub fn variables(t: &ShapeTerm) -> Vec<(VarPath, Variance)> {
    t.leaves()
        .into_iter()
        .map(|p| {
            let v = p.variance();
            (p, v)
        })
        .collect()
}

/// The twisted sum of `dom -> cod`: domain variables with variances
/// reversed, then codomain variables unchanged.
pub fn twisted_variables(dom: &ShapeTerm, cod: &ShapeTerm) -> Vec<TwistedVar> {
    let mut out = Vec::new();
    for (path, v) in variables(dom) {
        out.push(TwistedVar {
            side: Side::Dom,
            path,
            variance: v.flip(),
        });
    }
    for (path, v) in variables(cod) {
        out.push(TwistedVar {
            side: Side::Cod,
            path,
            variance: v,
        });
    }
    out
}

/// Parse a shape expression.
///
/// Grammar: `expr := factor ('*' factor)*` with `*` left-associative and
/// `factor := '1' | 'I' | '(' expr ')' | '[' expr ',' expr ']'`.
/// Whitespace is insignificant.
pub fn parse_shape(text: &str) -> Result<ShapeTerm> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let t = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(t)
}

/// Fully parenthesized canonical text for a shape.
pub fn print_shape(t: &ShapeTerm) -> String {
    t.to_string()
}

impl fmt::Display for ShapeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeTerm::Gen => write!(f, "1"),
            ShapeTerm::Unit => write!(f, "I"),
            ShapeTerm::Tensor(l, r) => write!(f, "({l}*{r})"),
            ShapeTerm::Hom(d, c) => write!(f, "[{d},{c}]"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", b as char)))
        }
    }

    fn expr(&mut self) -> Result<ShapeTerm> {
        let mut t = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let r = self.factor()?;
            t = ShapeTerm::tensor(t, r);
        }
        Ok(t)
    }

    fn factor(&mut self) -> Result<ShapeTerm> {
        match self.peek() {
            Some(b'1') => {
                self.pos += 1;
                Ok(ShapeTerm::Gen)
            }
            Some(b'I') => {
                self.pos += 1;
                Ok(ShapeTerm::Unit)
            }
            Some(b'(') => {
                self.pos += 1;
                let t = self.expr()?;
                self.expect(b')')?;
                Ok(t)
            }
            Some(b'[') => {
                self.pos += 1;
                let d = self.expr()?;
                self.expect(b',')?;
                let c = self.expr()?;
                self.expect(b']')?;
                Ok(ShapeTerm::hom(d, c))
            }
            _ => Err(self.err("expected '1', 'I', '(' or '['")),
        }
    }
}
