//! Elements a + b·√d of a real quadratic field.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticNumber {
    pub a: BigRational,
    pub b: BigRational,
    pub d: i64,
}

impl QuadraticNumber {
    pub fn new(a: BigRational, b: BigRational, d: i64) -> Self {
        QuadraticNumber { a, b, d }
    }

    pub fn rational(a: BigRational, d: i64) -> Self {
        QuadraticNumber { a, b: BigRational::zero(), d }
    }

    /// √d itself.
    pub fn root(d: i64) -> Self {
        QuadraticNumber { a: BigRational::zero(), b: BigRational::one(), d }
    }

    fn dq(&self) -> BigRational {
        BigRational::from_integer(self.d.into())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadraticNumber { a: &self.a + &o.a, b: &self.b + &o.b, d: self.d }
    }

    pub fn neg(&self) -> Self {
        QuadraticNumber { a: -&self.a, b: -&self.b, d: self.d }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let a = &self.a * &o.a + &self.b * &o.b * self.dq();
        let b = &self.a * &o.b + &self.b * &o.a;
        QuadraticNumber { a, b, d: self.d }
    }

    pub fn conj(&self) -> Self {
        QuadraticNumber { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    /// a² − d·b², never zero for nonzero input since d is not a square.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * self.dq()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(QuadraticNumber { a: &self.a / &n, b: -&self.b / &n, d: self.d })
    }

    pub fn render(&self) -> String {
        if self.b.is_zero() {
            return self.a.to_string();
        }
        let b_abs = self.b.abs();
        let b_part = if b_abs.is_one() { "r".to_string() } else { format!("{b_abs}*r") };
        if self.a.is_zero() {
            return if self.b.is_negative() { format!("-{b_part}") } else { b_part };
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        format!("{} {} {}", self.a, sign, b_part)
    }
}
