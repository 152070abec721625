//! Expression grammar for elements of the algebra and its dual.
//!
//! ```text
//! element  := term ('+' term)*
//! term     := atom ('*' atom)*
//! atom     := scalar | milnorGen | dualGen | '(' element ')'
//! scalar   := ('t' | 'r') ('^' nat)?
//! milnorGen:= 'Q' nat | 'Q(' nat (',' nat)* ')' | 'P(' nat (',' nat)* ')' | 'Sq' nat
//! dualGen  := 'tau(' nat (',' nat)* ')' | 'xi(' nat (',' nat)* ')'
//!           | ('t' | 'x') nat ('^' nat)?
//! ```
//!
//! Whitespace-insensitive. Multiplication of Milnor generators denotes the
//! algebra product, so `Sq2*Sq1` is a computation, not a basis label; on the
//! Steenrod side scalars on the right act through the twisted module
//! structure, which the evaluator delegates to the product engine.

use std::fmt;

use motivic_steenrod::dual::{multiply_elements, DualElement, DualMonomial};
use motivic_steenrod::scalar::HScalar;
use motivic_steenrod::steenrod::{milnor_basis, sq, SteenrodElement};
use motivic_steenrod::{Algebra, AlgebraError};

/// Abstract syntax of an expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    /// `t^a`
    ScalarTau(u32),
    /// `r^b`
    ScalarRho(u32),
    /// `Q3` or `Q(0,2)`
    Q(Vec<u32>),
    /// `P(3,0,1)`
    P(Vec<u32>),
    /// `Sq4`
    Sq(u32),
    /// `tau(0,2)`
    DualTau(Vec<u32>),
    /// `xi(3,0,1)` (exponents positionally from `xi_1`)
    DualXi(Vec<u32>),
    /// `t0^e`
    DualTauPow(u32, u32),
    /// `x1^e`
    DualXiPow(u32, u32),
}

/// Parse failure with position and what was expected there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at position {}: expected {}, found {}",
            self.position, self.expected, self.found
        )
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        input: input.as_bytes(),
        pos: 0,
    };
    let expr = p.element()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(p.error("end of input"));
    }
    Ok(expr)
}

impl<'a> Parser<'a> {
    fn error(&self, expected: &str) -> ParseError {
        let found = match self.input.get(self.pos) {
            Some(&c) => format!("{:?}", c as char),
            None => "end of input".to_string(),
        };
        ParseError {
            position: self.pos,
            expected: expected.to_string(),
            found,
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.input.get(self.pos), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8, what: &str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(what))
        }
    }

    fn nat(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.input.get(self.pos), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("a number"));
        }
        std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ParseError {
                position: start,
                expected: "a number that fits 32 bits".to_string(),
                found: "larger literal".to_string(),
            })
    }

    fn nat_list(&mut self) -> Result<Vec<u32>, ParseError> {
        let mut out = vec![self.nat()?];
        while self.eat(b',') {
            out.push(self.nat()?);
        }
        self.expect(b')', "`,` or `)`")?;
        Ok(out)
    }

    fn element(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![self.term()?];
        while self.eat(b'+') {
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut atoms = vec![self.atom()?];
        while self.eat(b'*') {
            atoms.push(self.atom()?);
        }
        Ok(if atoms.len() == 1 {
            atoms.pop().unwrap()
        } else {
            Expr::Product(atoms)
        })
    }

    fn power(&mut self) -> Result<u32, ParseError> {
        if self.eat(b'^') {
            self.nat()
        } else {
            Ok(1)
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.element()?;
                self.expect(b')', "`)`")?;
                Ok(inner)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Expr::ScalarTau(0)) // the unit
            }
            Some(b'0') => {
                self.pos += 1;
                Ok(Expr::Sum(Vec::new())) // the zero element
            }
            Some(b'r') => {
                self.pos += 1;
                Ok(Expr::ScalarRho(self.power()?))
            }
            Some(b'S') => {
                self.pos += 1;
                self.expect(b'q', "`Sq`")?;
                Ok(Expr::Sq(self.nat()?))
            }
            Some(b'Q') => {
                self.pos += 1;
                if self.eat(b'(') {
                    Ok(Expr::Q(self.nat_list()?))
                } else {
                    Ok(Expr::Q(vec![self.nat()?]))
                }
            }
            Some(b'P') => {
                self.pos += 1;
                self.expect(b'(', "`(` after `P`")?;
                Ok(Expr::P(self.nat_list()?))
            }
            Some(b't') => {
                // `tau(...)`, `t<i>^e`, or the scalar `t^a`
                self.pos += 1;
                if self.input[self.pos..].starts_with(b"au(") {
                    self.pos += 3;
                    Ok(Expr::DualTau(self.nat_list()?))
                } else if matches!(self.input.get(self.pos), Some(b'0'..=b'9')) {
                    let i = self.nat()?;
                    Ok(Expr::DualTauPow(i, self.power()?))
                } else {
                    Ok(Expr::ScalarTau(self.power()?))
                }
            }
            Some(b'x') => {
                self.pos += 1;
                if self.input[self.pos..].starts_with(b"i(") {
                    self.pos += 2;
                    Ok(Expr::DualXi(self.nat_list()?))
                } else {
                    let i = self.nat()?;
                    Ok(Expr::DualXiPow(i, self.power()?))
                }
            }
            _ => Err(self.error("an atom: scalar, generator, or `(`")),
        }
    }
}

/// What an expression evaluates to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Scalar(HScalar),
    Dual(DualElement),
    Milnor(SteenrodElement),
}

/// Evaluation failure: either a kind mismatch or an algebra error.
#[derive(Debug)]
pub enum EvalError {
    KindMismatch(String),
    Algebra(AlgebraError),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::KindMismatch(msg) => write!(f, "{msg}"),
            EvalError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for EvalError {}

impl From<AlgebraError> for EvalError {
    fn from(e: AlgebraError) -> Self {
        EvalError::Algebra(e)
    }
}

impl Value {
    pub fn is_zero(&self) -> bool {
        match self {
            Value::Scalar(h) => h.is_zero(),
            Value::Dual(x) => x.is_zero(),
            Value::Milnor(x) => x.is_zero(),
        }
    }

    pub fn into_milnor(self) -> Result<SteenrodElement, EvalError> {
        match self {
            Value::Milnor(x) => Ok(x),
            Value::Scalar(h) => Ok(SteenrodElement::unit().scale(&h)),
            Value::Dual(_) => Err(EvalError::KindMismatch(
                "expected a Steenrod-algebra element, found a dual-algebra element".into(),
            )),
        }
    }

    pub fn into_dual(self) -> Result<DualElement, EvalError> {
        match self {
            Value::Dual(x) => Ok(x),
            Value::Scalar(h) => Ok(DualElement::scalar(h)),
            Value::Milnor(_) => Err(EvalError::KindMismatch(
                "expected a dual-algebra element, found a Steenrod-algebra element".into(),
            )),
        }
    }
}

/// Evaluate an expression. Milnor products go through the engine; a scalar
/// multiplied from the right of a Steenrod element acts through the twisted
/// right module structure, which the engine's pairing implements.
pub fn eval(alg: &Algebra, expr: &Expr) -> Result<Value, EvalError> {
    match expr {
        Expr::Sum(terms) => {
            let mut acc: Option<Value> = None;
            for t in terms {
                let v = eval(alg, t)?;
                acc = Some(match acc {
                    None => v,
                    Some(prev) => add_values(prev, v)?,
                });
            }
            Ok(acc.unwrap_or(Value::Scalar(HScalar::zero())))
        }
        Expr::Product(factors) => {
            let mut acc: Option<Value> = None;
            for fex in factors {
                let v = eval(alg, fex)?;
                acc = Some(match acc {
                    None => v,
                    Some(prev) => mul_values(alg, prev, v)?,
                });
            }
            Ok(acc.unwrap_or(Value::Scalar(HScalar::one())))
        }
        Expr::ScalarTau(a) => Ok(Value::Scalar(HScalar::monomial(*a, 0))),
        Expr::ScalarRho(b) => Ok(Value::Scalar(HScalar::monomial(0, *b))),
        Expr::Q(indices) => {
            check_distinct(indices)?;
            Ok(Value::Milnor(milnor_basis(indices, &[])?))
        }
        Expr::P(r) => Ok(Value::Milnor(milnor_basis(&[], r)?)),
        Expr::Sq(k) => Ok(Value::Milnor(sq(*k)?)),
        Expr::DualTau(indices) => {
            check_distinct(indices)?;
            Ok(Value::Dual(DualElement::from_monomial(DualMonomial::new(
                indices,
                &[],
            )?)))
        }
        Expr::DualXi(r) => Ok(Value::Dual(DualElement::from_monomial(DualMonomial::new(
            &[],
            r,
        )?))),
        Expr::DualTauPow(i, e) => {
            let gen = DualElement::from_monomial(DualMonomial::tau_gen(*i)?);
            let mut acc = DualElement::one();
            for _ in 0..*e {
                acc = multiply_elements(&acc, &gen)?;
            }
            Ok(Value::Dual(acc))
        }
        Expr::DualXiPow(i, e) => {
            if *i < 1 {
                return Err(EvalError::KindMismatch(
                    "xi indices start at 1 (x1, x2, ...)".into(),
                ));
            }
            Ok(Value::Dual(DualElement::from_monomial(
                DualMonomial::xi_gen(*i, *e)?,
            )))
        }
    }
}

fn check_distinct(indices: &[u32]) -> Result<(), EvalError> {
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != indices.len() {
        return Err(EvalError::KindMismatch(format!(
            "repeated index in {indices:?}; tau indices are square-free"
        )));
    }
    Ok(())
}

fn add_values(a: Value, b: Value) -> Result<Value, EvalError> {
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x.add(&y)),
        (Value::Dual(x), y) => Value::Dual(x.add(&y.into_dual()?)),
        (x @ Value::Scalar(_), Value::Dual(y)) => Value::Dual(x.into_dual()?.add(&y)),
        (Value::Milnor(x), y) => Value::Milnor(x.add(&y.into_milnor()?)),
        (x @ Value::Scalar(_), Value::Milnor(y)) => Value::Milnor(x.into_milnor()?.add(&y)),
    })
}

fn mul_values(alg: &Algebra, a: Value, b: Value) -> Result<Value, EvalError> {
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x.mul(&y)),
        // a scalar on the left acts plainly on either algebra
        (Value::Scalar(x), Value::Dual(y)) => Value::Dual(y.scale(&x)),
        (Value::Scalar(x), Value::Milnor(y)) => Value::Milnor(y.scale(&x)),
        (Value::Dual(x), y) => Value::Dual(multiply_elements(&x, &y.into_dual()?)?),
        // a scalar on the right of a Steenrod element is the twisted right
        // action; the engine computes it
        (Value::Milnor(x), y) => Value::Milnor(alg.product(&x, &y.into_milnor()?)?),
    })
}
