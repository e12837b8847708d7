//! Exact coefficient fields: Q, Q(√d) and Q(t1, ..., tm).

mod parse;
pub mod poly;
mod quadratic;
mod ratfunc;

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use parse::{parse_scalar, split_top_level_terms, top_level_sum};
pub use poly::Poly;
pub use quadratic::QuadraticNumber;
pub use ratfunc::RationalFunction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("quadratic field needs a squarefree d >= 2, got {0}")]
    InvalidQuadratic(i64),
    #[error("invalid indeterminate list: {0}")]
    InvalidVariables(String),
    #[error("operands live in different fields ({left} and {right})")]
    Mismatch { left: String, right: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable `{name}` at byte {pos} is not declared in {field}")]
    UndeclaredVariable { name: String, pos: usize, field: String },
    #[error("unrecognised field `{0}`")]
    UnknownField(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Quadratic { d: i64 },
    RationalFunctions { vars: Arc<[String]> },
}

fn is_squarefree(d: i64) -> bool {
    let mut p = 2i64;
    while p * p <= d {
        if d % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl FieldSpec {
    pub fn quadratic(d: i64) -> Result<Self, FieldError> {
        if d < 2 || !is_squarefree(d) {
            return Err(FieldError::InvalidQuadratic(d));
        }
        Ok(FieldSpec::Quadratic { d })
    }

    pub fn rational_functions<S: AsRef<str>>(vars: &[S]) -> Result<Self, FieldError> {
        if vars.is_empty() {
            return Err(FieldError::InvalidVariables("no indeterminates".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for v in vars {
            let v = v.as_ref();
            let ok = !v.is_empty()
                && v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(FieldError::InvalidVariables(format!("bad name `{v}`")));
            }
            if !seen.insert(v.to_string()) {
                return Err(FieldError::InvalidVariables(format!("duplicate name `{v}`")));
            }
        }
        Ok(FieldSpec::RationalFunctions { vars: vars.iter().map(|v| v.as_ref().to_string()).collect() })
    }

    /// Reads `Q`, `Q(sqrt5)`, `Q(sqrt(5))`, `quadratic(5)`, `Q(t1,t2)` or
    /// `rational_functions(t1,t2)`.
    pub fn from_text(text: &str) -> Result<Self, FieldError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "Q" || s == "rationals" {
            return Ok(FieldSpec::Rationals);
        }
        let inner = |prefix: &str| s.strip_prefix(prefix).and_then(|r| r.strip_suffix(')'));
        if let Some(body) = inner("quadratic(") {
            let d = body.parse().map_err(|_| FieldError::UnknownField(text.into()))?;
            return Self::quadratic(d);
        }
        if let Some(body) = inner("rational_functions(") {
            return Self::rational_functions(&body.split(',').collect::<Vec<_>>());
        }
        if let Some(body) = inner("Q(") {
            if let Some(rest) = body.strip_prefix("sqrt") {
                let rest = rest.trim_start_matches('(').trim_end_matches(')');
                let d = rest.parse().map_err(|_| FieldError::UnknownField(text.into()))?;
                return Self::quadratic(d);
            }
            return Self::rational_functions(&body.split(',').collect::<Vec<_>>());
        }
        Err(FieldError::UnknownField(text.into()))
    }

    pub fn zero(&self) -> Scalar {
        self.embed(BigRational::zero())
    }

    pub fn one(&self) -> Scalar {
        self.embed(BigRational::one())
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.embed(int(n))
    }

    pub fn from_ratio(&self, n: i64, d: i64) -> Scalar {
        self.embed(BigRational::new(n.into(), d.into()))
    }

    /// The inclusion Q → self.
    pub fn embed(&self, q: BigRational) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(q),
            FieldSpec::Quadratic { d } => Scalar::Quadratic(QuadraticNumber::rational(q, *d)),
            FieldSpec::RationalFunctions { vars } => Scalar::Function(RationalFunction::constant(q, vars.clone())),
        }
    }

    /// √d in a quadratic field.
    pub fn root(&self) -> Option<Scalar> {
        match self {
            FieldSpec::Quadratic { d } => Some(Scalar::Quadratic(QuadraticNumber::root(*d))),
            _ => None,
        }
    }

    /// An indeterminate of a rational-function field, by name.
    pub fn var(&self, name: &str) -> Option<Scalar> {
        match self {
            FieldSpec::RationalFunctions { vars } => {
                let i = vars.iter().position(|v| v == name)?;
                Some(Scalar::Function(RationalFunction::from_poly(Poly::var(vars.len(), i), vars.clone())))
            }
            _ => None,
        }
    }

    pub fn vars(&self) -> &[String] {
        match self {
            FieldSpec::RationalFunctions { vars } => vars,
            _ => &[],
        }
    }

    pub fn parse(&self, text: &str) -> Result<Scalar, FieldError> {
        parse_scalar(text, self)
    }

    /// Parses `x`, panicking on failure. Meant for literals in constructors and tests.
    pub fn s(&self, text: &str) -> Scalar {
        match parse_scalar(text, self) {
            Ok(x) => x,
            Err(e) => panic!("bad scalar literal {text:?}: {e}"),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Quadratic { d } => write!(f, "Q(sqrt{d})"),
            FieldSpec::RationalFunctions { vars } => write!(f, "Q({})", vars.join(",")),
        }
    }
}

/// An exact field element tagged with its field.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Quadratic(QuadraticNumber),
    Function(RationalFunction),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
}

/// Checked arithmetic entry point; `y` is required for the binary operations.
pub fn field_arith(op: ArithOp, x: &Scalar, y: Option<&Scalar>) -> Result<Scalar, FieldError> {
    let need = || y.ok_or_else(|| FieldError::Syntax { pos: 0, msg: "missing second operand".into() });
    match op {
        ArithOp::Add => x.try_add(need()?),
        ArithOp::Mul => x.try_mul(need()?),
        ArithOp::Neg => Ok(-x),
        ArithOp::Inv => x.inv(),
    }
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Quadratic(q) => FieldSpec::Quadratic { d: q.d },
            Scalar::Function(f) => FieldSpec::RationalFunctions { vars: f.vars().clone() },
        }
    }

    fn same_field(&self, o: &Scalar) -> bool {
        match (self, o) {
            (Scalar::Rational(_), Scalar::Rational(_)) => true,
            (Scalar::Quadratic(a), Scalar::Quadratic(b)) => a.d == b.d,
            (Scalar::Function(a), Scalar::Function(b)) => Arc::ptr_eq(a.vars(), b.vars()) || a.vars() == b.vars(),
            _ => false,
        }
    }

    fn mismatch(&self, o: &Scalar) -> FieldError {
        FieldError::Mismatch { left: self.field().to_string(), right: o.field().to_string() }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Quadratic(q) => q.is_zero(),
            Scalar::Function(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().is_some_and(|q| q.is_one())
    }

    /// The value as a rational number, if it lies in the prime field.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(q) => Some(q.clone()),
            Scalar::Quadratic(q) => q.b.is_zero().then(|| q.a.clone()),
            Scalar::Function(f) => f.constant_value(),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.to_rational().is_some()
    }

    pub fn is_integer(&self) -> bool {
        self.to_rational().is_some_and(|q| q.is_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_rational().filter(|q| q.is_integer()).and_then(|q| q.to_integer().to_i64())
    }

    pub fn try_add(&self, o: &Scalar) -> Result<Scalar, FieldError> {
        Ok(match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Quadratic(a), Scalar::Quadratic(b)) if a.d == b.d => Scalar::Quadratic(a.add(b)),
            (Scalar::Function(a), Scalar::Function(b)) if self.same_field(o) => Scalar::Function(a.add(b)),
            _ => return Err(self.mismatch(o)),
        })
    }

    pub fn try_sub(&self, o: &Scalar) -> Result<Scalar, FieldError> {
        self.try_add(&-o)
    }

    pub fn try_mul(&self, o: &Scalar) -> Result<Scalar, FieldError> {
        Ok(match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Quadratic(a), Scalar::Quadratic(b)) if a.d == b.d => Scalar::Quadratic(a.mul(b)),
            (Scalar::Function(a), Scalar::Function(b)) if self.same_field(o) => Scalar::Function(a.mul(b)),
            _ => return Err(self.mismatch(o)),
        })
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Quadratic(q) => Scalar::Quadratic(q.inv().expect("nonzero")),
            Scalar::Function(f) => Scalar::Function(f.inv().expect("nonzero")),
        })
    }

    pub fn try_div(&self, o: &Scalar) -> Result<Scalar, FieldError> {
        if !self.same_field(o) {
            return Err(self.mismatch(o));
        }
        self.try_mul(&o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Scalar, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field().one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Rough size measure; smaller entries make cheaper pivots.
    pub fn weight(&self) -> usize {
        match self {
            Scalar::Rational(q) => (q.numer().bits() + q.denom().bits()) as usize / 64,
            Scalar::Quadratic(q) => 1 + (q.a.numer().bits() + q.a.denom().bits() + q.b.numer().bits()) as usize / 64,
            Scalar::Function(f) => f.weight(),
        }
    }

    /// Substitutes rational values for the indeterminates. Identity on Q; quadratic
    /// scalars with nonzero √d part have no rational image and give `None`.
    pub fn specialize(&self, point: &[BigRational]) -> Option<BigRational> {
        match self {
            Scalar::Function(f) => f.eval(point),
            _ => self.to_rational(),
        }
    }

    pub fn is_negative_literal(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            _ => false,
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (Scalar::Quadratic(a), Scalar::Quadratic(b)) => a == b,
            (Scalar::Function(a), Scalar::Function(b)) => self.same_field(other) && a == b,
            _ => match (self.to_rational(), other.to_rational()) {
                (Some(a), Some(b)) => a == b,
                _ => false,
            },
        }
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Quadratic(q) => write!(f, "{}", q.render()),
            Scalar::Function(r) => write!(f, "{}", r.render()),
        }
    }
}

macro_rules! panicking_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                match self.$checked(o) {
                    Ok(x) => x,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}

panicking_binop!(Add, add, try_add);
panicking_binop!(Sub, sub, try_sub);
panicking_binop!(Mul, mul, try_mul);
panicking_binop!(Div, div, try_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Quadratic(q) => Scalar::Quadratic(q.neg()),
            Scalar::Function(f) => Scalar::Function(f.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}
