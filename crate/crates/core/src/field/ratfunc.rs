//! Reduced fractions of multivariate polynomials.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{gcd, Poly};

/// Element of Q(t1, ..., tm).
///
/// Canonical form: `num` and `den` are coprime and `den` has leading
/// coefficient 1. Zero is `0 / 1`.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
    vars: Arc<[String]>,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly, vars: Arc<[String]>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::reduce(num, den, vars))
    }

    fn reduce(num: Poly, den: Poly, vars: Arc<[String]>) -> Self {
        let n = vars.len();
        if num.is_zero() {
            return RationalFunction { num: Poly::zero(n), den: Poly::one(n), vars };
        }
        let g = gcd(&num, &den);
        let (mut num, mut den) =
            if g.is_one() { (num, den) } else { (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides")) };
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den, vars }
    }

    pub fn from_poly(p: Poly, vars: Arc<[String]>) -> Self {
        let n = vars.len();
        RationalFunction { num: p, den: Poly::one(n), vars }
    }

    pub fn constant(c: BigRational, vars: Arc<[String]>) -> Self {
        let n = vars.len();
        Self::from_poly(Poly::constant(n, c), vars)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The rational value, when the function is constant.
    pub fn constant_value(&self) -> Option<BigRational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(n / d)
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::reduce(self.num.add(&o.num), self.den.clone(), self.vars.clone());
        }
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Self::reduce(num, self.den.mul(&o.den), self.vars.clone())
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone(), vars: self.vars.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::constant(BigRational::zero(), self.vars.clone());
        }
        // cross-cancel first to keep intermediate sizes down
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("divides");
        let d2 = o.den.div_exact(&g1).expect("divides");
        let n2 = o.num.div_exact(&g2).expect("divides");
        let d1 = self.den.div_exact(&g2).expect("divides");
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.leading_coeff();
        let inv = lc.recip();
        RationalFunction { num: num.scale(&inv), den: den.scale(&inv), vars: self.vars.clone() }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let lc = self.num.leading_coeff().recip();
        Some(RationalFunction { num: self.den.scale(&lc), den: self.num.scale(&lc), vars: self.vars.clone() })
    }

    pub fn eval(&self, point: &[BigRational]) -> Option<BigRational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    /// Rough size measure used for pivot selection.
    pub fn weight(&self) -> usize {
        self.num.len() + self.den.len()
    }

    pub fn render(&self) -> String {
        let num = self.num.render(&self.vars);
        if self.den.is_one() {
            return num;
        }
        let wrap = |s: String, p: &Poly| if p.len() > 1 || s.contains('*') { format!("({s})") } else { s };
        format!("{}/{}", wrap(num, &self.num), wrap(self.den.render(&self.vars), &self.den))
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for RationalFunction {}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Arc<[String]> {
        Arc::from(vec!["t".to_string()])
    }

    fn t() -> RationalFunction {
        RationalFunction::from_poly(Poly::var(1, 0), vars())
    }

    fn c(n: i64) -> RationalFunction {
        RationalFunction::constant(BigRational::from_integer(n.into()), vars())
    }

    #[test]
    fn cancellation_is_complete() {
        // (t^2 - 1)/(t - 1) = t + 1
        let a = t().mul(&t()).sub(&c(1));
        let b = t().sub(&c(1));
        let q = a.mul(&b.inv().unwrap());
        assert_eq!(q, t().add(&c(1)));
        assert!(q.den().is_one());
    }

    #[test]
    fn denominator_is_monic() {
        let q = c(1).mul(&t().add(&t()).add(&c(4)).inv().unwrap());
        assert_eq!(q.den().leading_coeff(), BigRational::one());
        assert_eq!(q.render(), "1/2/(t + 2)");
    }

    #[test]
    fn zero_has_one_representation() {
        let z = t().sub(&t());
        assert!(z.den().is_one());
        assert_eq!(z, c(0));
    }
}
