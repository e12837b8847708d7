//! Multivariate polynomials over Q in a fixed number of variables.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic with variable 0 the most significant. The leading
//! term is therefore the last entry of the map.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(Monomial(e), BigRational::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn constant_value(&self) -> Option<BigRational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(BigRational::zero))
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &BigRational) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    fn mul_term(&self, m: &Monomial, c: &BigRational) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m1, c1)| (m1.mul(m), c1 * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        let lc = self.leading_coeff();
        if lc.is_zero() || lc.is_one() {
            return self.clone();
        }
        self.scale(&lc.recip())
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    fn main_var(&self) -> Option<usize> {
        (0..self.nvars).rev().find(|&v| self.degree_in(v) > 0)
    }

    /// Coefficients with respect to `v`; entry `i` multiplies `v^i` and is free of `v`.
    pub fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Poly::zero(self.nvars); d + 1];
        for (m, c) in &self.terms {
            let mut e = m.clone();
            let k = e.0[v] as usize;
            e.0[v] = 0;
            out[k].add_term(e, c.clone());
        }
        out
    }

    fn var_power(&self, v: usize, k: u32) -> Monomial {
        let mut e = vec![0; self.nvars];
        e[v] = k;
        Monomial(e)
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut q = Poly::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return None;
            }
            let m = rm.div(&dm);
            let c = rc / &dc;
            rem = rem.sub(&d.mul_term(&m, &c));
            q.add_term(m, c);
        }
        Some(q)
    }

    /// Pseudo-remainder of `self` by `g` with respect to the variable `v`.
    fn prem(&self, g: &Poly, v: usize) -> Poly {
        let dg = g.degree_in(v);
        let lcg = g.coeffs_in(v).pop().unwrap_or_else(|| Poly::zero(self.nvars));
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= dg {
            let dr = r.degree_in(v);
            let lcr = r.coeffs_in(v).pop().expect("nonzero");
            let shift = Poly::from_terms(self.nvars, [(self.var_power(v, dr - dg), BigRational::one())]);
            r = r.mul(&lcg).sub(&lcr.mul(&shift).mul(g));
        }
        r
    }

    /// Content with respect to `v` (monic, free of `v`) and the primitive part.
    fn content_pp(&self, v: usize) -> (Poly, Poly) {
        let mut content = Poly::zero(self.nvars);
        for c in self.coeffs_in(v) {
            if c.is_zero() {
                continue;
            }
            content = if content.is_zero() { c.monic() } else { gcd(&content, &c) };
            if content.is_one() {
                break;
            }
        }
        let pp = self.div_exact(&content).expect("content divides");
        (content, pp)
    }

    /// Substitutes rational values for every variable.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, x) in m.0.iter().zip(point) {
                if *e > 0 {
                    t *= num_traits::pow(x.clone(), *e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Renders the polynomial with the given variable names, highest term first.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(v, e)| if *e == 1 { names[v].clone() } else { format!("{}^{}", names[v], e) })
                    .collect();
            if mono.is_empty() {
                let _ = write!(out, "{}", a);
            } else if a.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                let _ = write!(out, "{}*{}", a, mono.join("*"));
            }
        }
        out
    }

    /// Scales by the lcm of denominators, producing integer coefficients.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

/// Greatest common divisor, normalized to leading coefficient 1.
///
/// Recursive: splits off the content with respect to the highest-index
/// variable present and runs a primitive pseudo-remainder sequence on the
/// primitive parts.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let n = a.nvars;
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(n);
    }
    let v = match (a.main_var(), b.main_var()) {
        (Some(x), Some(y)) => x.max(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => return Poly::one(n),
    };
    let (ca, pa) = a.content_pp(v);
    let (cb, pb) = b.content_pp(v);
    let c = gcd(&ca, &cb);
    let g = if pa.degree_in(v) == 0 || pb.degree_in(v) == 0 {
        Poly::one(n)
    } else {
        let (mut f, mut g) = if pa.degree_in(v) >= pb.degree_in(v) { (pa, pb) } else { (pb, pa) };
        loop {
            let r = f.prem(&g, v);
            if r.is_zero() {
                break g;
            }
            if r.degree_in(v) == 0 {
                break Poly::one(n);
            }
            let (_, rp) = r.content_pp(v);
            f = g;
            g = rp;
        }
    };
    c.mul(&g).monic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn grlex_leading_term() {
        // t0^2 + t0*t1^2: total degree 3 wins over 2
        let p = x(2, 0).pow(2).add(&x(2, 0).mul(&x(2, 1).pow(2)));
        assert_eq!(p.leading().unwrap().0, &Monomial(vec![1, 2]));
        // same degree: t0 beats t1
        let p = x(2, 0).add(&x(2, 1));
        assert_eq!(p.leading().unwrap().0, &Monomial(vec![1, 0]));
    }

    #[test]
    fn exact_division_and_failure() {
        let a = x(2, 0).add(&x(2, 1));
        let b = x(2, 0).sub(&x(2, 1));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(prod.add(&Poly::one(2)).div_exact(&a).is_none());
    }

    #[test]
    fn gcd_univariate() {
        // (t-1)(t+2) and (t-1)(t-3)
        let t = x(1, 0);
        let one = Poly::one(1);
        let a = t.sub(&one).mul(&t.add(&one.scale(&q(2))));
        let b = t.sub(&one).mul(&t.sub(&one.scale(&q(3))));
        assert_eq!(gcd(&a, &b), t.sub(&one));
    }

    #[test]
    fn gcd_bivariate_with_content() {
        // a = (t0 + t1)^2 * t1, b = (t0 + t1) * t1^2 * (t0 - 1)
        let s = x(2, 0).add(&x(2, 1));
        let a = s.pow(2).mul(&x(2, 1));
        let b = s.mul(&x(2, 1).pow(2)).mul(&x(2, 0).sub(&Poly::one(2)));
        let g = gcd(&a, &b);
        assert_eq!(g, s.mul(&x(2, 1)).monic());
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let a = x(2, 0).pow(2).add(&x(2, 1));
        let b = x(2, 1).pow(3).sub(&x(2, 0));
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn render_orders_terms() {
        let names = vec!["t1".to_string(), "t2".to_string()];
        let p = x(2, 0).pow(2).scale(&q(3)).sub(&x(2, 1)).add(&Poly::one(2));
        assert_eq!(p.render(&names), "3*t1^2 - t2 + 1");
    }
}
