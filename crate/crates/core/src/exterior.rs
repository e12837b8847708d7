//! Sparse exterior algebra on the dual of an n-dimensional space, n ≤ 64.
//!
//! A basis monomial e^{i1}∧…∧e^{ik} (i1 < … < ik) is packed into the bitmask
//! with bits i1..ik set. Ordering the masks numerically is exactly the
//! colexicographic order on multi-indices, which is also the coordinate order
//! used by [`KForm::coords`].

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::field::{split_top_level_terms, top_level_sum, FieldError, FieldSpec, Scalar};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("forms live in dimensions {left} and {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("cannot contract a 0-form")]
    ContractZeroForm,
    #[error("expected {expected} coordinates, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("form syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Packs a strictly increasing multi-index.
pub fn mask_of(indices: &[usize]) -> u64 {
    indices.iter().fold(0u64, |m, &i| m | (1u64 << i))
}

pub fn indices_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Position of a mask among all masks of the same popcount, in colex order.
pub fn colex_rank(mask: u64) -> usize {
    indices_of(mask).iter().enumerate().map(|(j, &i)| binomial(i, j + 1)).sum()
}

/// Inverse of [`colex_rank`].
pub fn colex_unrank(mut rank: usize, degree: usize) -> u64 {
    let mut mask = 0u64;
    for j in (1..=degree).rev() {
        let mut i = j - 1;
        while binomial(i + 1, j) <= rank {
            i += 1;
        }
        rank -= binomial(i, j);
        mask |= 1 << i;
    }
    mask
}

/// All degree-k masks in dimension n, in colex order.
pub fn basis_masks(dim: usize, degree: usize) -> Vec<u64> {
    (0..binomial(dim, degree)).map(|r| colex_unrank(r, degree)).collect()
}

/// Sign of `a ∧ b` relative to the sorted monomial `a | b`; zero when they overlap.
fn wedge_sign(a: u64, b: u64) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> j).count_ones();
        rest &= rest - 1;
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KForm {
    degree: usize,
    dim: usize,
    field: FieldSpec,
    coeffs: BTreeMap<u64, Scalar>,
}

impl KForm {
    pub fn zero(field: &FieldSpec, dim: usize, degree: usize) -> Self {
        assert!(dim <= 64, "dimension above 64");
        KForm { degree, dim, field: field.clone(), coeffs: BTreeMap::new() }
    }

    /// The 0-form 1.
    pub fn unit(field: &FieldSpec, dim: usize) -> Self {
        Self::constant(field, dim, field.one())
    }

    pub fn constant(field: &FieldSpec, dim: usize, c: Scalar) -> Self {
        let mut f = Self::zero(field, dim, 0);
        f.insert(0, c);
        f
    }

    /// c · e^{i1}∧…∧e^{ik} for arbitrary (not necessarily sorted) indices.
    pub fn monomial(field: &FieldSpec, dim: usize, indices: &[usize], c: Scalar) -> Self {
        let mut out = Self::zero(field, dim, indices.len());
        let mut mask = 0u64;
        let mut sign = 1;
        for &i in indices {
            assert!(i < dim, "index {i} out of range for dimension {dim}");
            sign *= wedge_sign(mask, 1 << i);
            mask |= 1 << i;
        }
        if sign != 0 {
            out.insert(mask, if sign < 0 { -c } else { c });
        }
        out
    }

    /// e^{i1}∧…∧e^{ik} with coefficient 1.
    pub fn basis(field: &FieldSpec, dim: usize, indices: &[usize]) -> Self {
        Self::monomial(field, dim, indices, field.one())
    }

    pub fn one_form(field: &FieldSpec, coeffs: &[Scalar]) -> Self {
        let mut out = Self::zero(field, coeffs.len(), 1);
        for (i, c) in coeffs.iter().enumerate() {
            out.insert(1 << i, c.clone());
        }
        out
    }

    fn insert(&mut self, mask: u64, c: Scalar) {
        if c.is_zero() {
            self.coeffs.remove(&mask);
        } else {
            self.coeffs.insert(mask, c);
        }
    }

    fn accumulate(&mut self, mask: u64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let v = match self.coeffs.get(&mask) {
            Some(old) => old + &c,
            None => c,
        };
        self.insert(mask, v);
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// (mask, coefficient) pairs in colex order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Scalar)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, indices: &[usize]) -> Scalar {
        let probe = KForm::basis(&self.field, self.dim, indices);
        match probe.coeffs.iter().next() {
            Some((m, s)) => self.coeffs.get(m).map_or_else(|| self.field.zero(), |c| c * s),
            None => self.field.zero(),
        }
    }

    fn check_same(&self, o: &KForm) -> Result<(), ExteriorError> {
        if self.dim != o.dim {
            return Err(ExteriorError::DimensionMismatch { left: self.dim, right: o.dim });
        }
        Ok(())
    }

    pub fn try_add(&self, o: &KForm) -> Result<KForm, ExteriorError> {
        self.check_same(o)?;
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(o.clone());
        }
        assert_eq!(self.degree, o.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (m, c) in &o.coeffs {
            out.accumulate(*m, c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, o: &KForm) -> KForm {
        self.try_add(o).expect("dimension mismatch")
    }

    pub fn sub(&self, o: &KForm) -> KForm {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> KForm {
        self.scale(&self.field.from_int(-1))
    }

    pub fn scale(&self, s: &Scalar) -> KForm {
        let mut out = KForm::zero(&self.field, self.dim, self.degree);
        if s.is_zero() {
            return out;
        }
        for (m, c) in &self.coeffs {
            out.insert(*m, c * s);
        }
        out
    }

    pub fn wedge(&self, o: &KForm) -> Result<KForm, ExteriorError> {
        self.check_same(o)?;
        let degree = self.degree + o.degree;
        if degree > self.dim {
            return Ok(KForm::zero(&self.field, self.dim, 0));
        }
        let mut out = KForm::zero(&self.field, self.dim, degree);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &o.coeffs {
                match wedge_sign(*a, *b) {
                    0 => {}
                    1 => out.accumulate(a | b, ca * cb),
                    _ => out.accumulate(a | b, -(ca * cb)),
                }
            }
        }
        Ok(out)
    }

    /// Wedge that panics on dimension mismatch.
    pub fn w(&self, o: &KForm) -> KForm {
        self.wedge(o).expect("dimension mismatch")
    }

    pub fn wedge_power(&self, p: usize) -> Result<KForm, ExteriorError> {
        let mut acc = KForm::unit(&self.field, self.dim);
        for _ in 0..p {
            acc = acc.wedge(self)?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    /// Interior product ι_x.
    pub fn contract(&self, x: &[Scalar]) -> Result<KForm, ExteriorError> {
        if x.len() != self.dim {
            return Err(ExteriorError::DimensionMismatch { left: self.dim, right: x.len() });
        }
        if self.degree == 0 {
            return Err(ExteriorError::ContractZeroForm);
        }
        let mut out = KForm::zero(&self.field, self.dim, self.degree - 1);
        for (m, c) in &self.coeffs {
            let mut rest = *m;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if x[i].is_zero() {
                    continue;
                }
                let before = (m & ((1u64 << i) - 1)).count_ones();
                let v = c * &x[i];
                out.accumulate(m & !(1 << i), if before.is_multiple_of(2) { v } else { -v });
            }
        }
        Ok(out)
    }

    /// Contraction with the i-th basis vector.
    pub fn contract_basis(&self, i: usize) -> Result<KForm, ExteriorError> {
        let mut x = vec![self.field.zero(); self.dim];
        x[i] = self.field.one();
        self.contract(&x)
    }

    /// Dense coordinates in the colex basis of Λ^k.
    pub fn coords(&self) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); binomial(self.dim, self.degree)];
        for (m, c) in &self.coeffs {
            v[colex_rank(*m)] = c.clone();
        }
        v
    }

    pub fn from_coords(field: &FieldSpec, dim: usize, degree: usize, seq: &[Scalar]) -> Result<KForm, ExteriorError> {
        let expected = binomial(dim, degree);
        if seq.len() != expected {
            return Err(ExteriorError::LengthMismatch { expected, got: seq.len() });
        }
        let mut out = KForm::zero(field, dim, degree);
        for (r, c) in seq.iter().enumerate() {
            if !c.is_zero() {
                out.coeffs.insert(colex_unrank(r, degree), c.clone());
            }
        }
        Ok(out)
    }

    /// Pullback along the linear map whose j-th column is the image of the j-th
    /// basis vector of the source. `f` has `self.dim` rows.
    pub fn pullback(&self, f: &Matrix) -> KForm {
        assert_eq!(f.rows(), self.dim, "pullback shape");
        let src = f.cols();
        let pulled: Vec<KForm> = (0..self.dim).map(|i| KForm::one_form(&self.field, &f.row(i))).collect();
        let mut out = KForm::zero(&self.field, src, self.degree);
        for (m, c) in &self.coeffs {
            let mut term = KForm::constant(&self.field, src, c.clone());
            for i in indices_of(*m) {
                term = term.w(&pulled[i]);
            }
            if !term.is_zero() {
                out = out.add(&term);
            }
        }
        out
    }

    /// Relabels index i as `map[i]` inside a space of dimension `new_dim`.
    pub fn reindex(&self, new_dim: usize, map: &[usize]) -> KForm {
        let mut out = KForm::zero(&self.field, new_dim, self.degree);
        for (m, c) in &self.coeffs {
            let idx: Vec<usize> = indices_of(*m).into_iter().map(|i| map[i]).collect();
            let t = KForm::monomial(&self.field, new_dim, &idx, c.clone());
            out = out.add(&t);
        }
        out
    }

    /// Applies `f` to every coefficient, e.g. to embed into a larger field.
    pub fn map_coeffs(&self, field: &FieldSpec, f: impl Fn(&Scalar) -> Scalar) -> KForm {
        let mut out = KForm::zero(field, self.dim, self.degree);
        for (m, c) in &self.coeffs {
            out.insert(*m, f(c));
        }
        out
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (m, c)) in self.coeffs.iter().enumerate() {
            let mono: Vec<&str> = indices_of(*m).iter().map(|&i| names[i].as_str()).collect();
            let mono = mono.join("^");
            let mut text = c.to_string();
            let negative = text.starts_with('-') && !top_level_sum(&text);
            if negative {
                text.remove(0);
            }
            if top_level_sum(&text) {
                text = format!("({text})");
            }
            match (n, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if mono.is_empty() {
                out.push_str(&text);
            } else if text == "1" {
                out.push_str(&mono);
            } else {
                let _ = write!(out, "{text} * {mono}");
            }
        }
        out
    }

    /// Reads the `c * b1^b3 + ...` syntax. `degree` fixes the degree of an
    /// all-zero input; otherwise it is inferred and checked.
    pub fn parse(text: &str, names: &[String], field: &FieldSpec, degree: Option<usize>) -> Result<KForm, ExteriorError> {
        let dim = names.len();
        let mut out: Option<KForm> = None;
        for (start, piece) in split_top_level_terms(text) {
            let trimmed = piece.trim_start();
            let offset = start + piece.len() - trimmed.len();
            let (negative, body, body_at) = match trimmed.as_bytes().first() {
                Some(b'-') => (true, &trimmed[1..], offset + 1),
                Some(b'+') if start > 0 => (false, &trimmed[1..], offset + 1),
                _ => (false, trimmed, offset),
            };
            if body.trim().is_empty() {
                return Err(ExteriorError::Syntax { pos: body_at, msg: "empty term".into() });
            }
            let (coeff_text, mono) = split_monomial(body, names);
            let coeff = match coeff_text {
                Some(ct) => field.parse(ct).map_err(|e| shift_err(e, body_at))?,
                None => field.one(),
            };
            let coeff = if negative { -coeff } else { coeff };
            let term = KForm::monomial(field, dim, &mono, coeff);
            let term_degree = mono.len();
            out = Some(match out {
                None => term,
                Some(acc) => {
                    if acc.degree != term_degree {
                        return Err(ExteriorError::Syntax {
                            pos: body_at,
                            msg: format!("term of degree {term_degree} in a form of degree {}", acc.degree),
                        });
                    }
                    acc.add(&term)
                }
            });
        }
        let mut form = out.ok_or(ExteriorError::Syntax { pos: 0, msg: "empty form".into() })?;
        if let Some(d) = degree {
            if form.is_zero() {
                form.degree = d;
            } else if form.degree != d {
                return Err(ExteriorError::Syntax { pos: 0, msg: format!("expected a {d}-form, got degree {}", form.degree) });
            }
        }
        Ok(form)
    }
}

fn shift_err(e: FieldError, by: usize) -> ExteriorError {
    match e {
        FieldError::Syntax { pos, msg } => ExteriorError::Syntax { pos: pos + by, msg },
        FieldError::UndeclaredVariable { name, pos, field } => {
            ExteriorError::Field(FieldError::UndeclaredVariable { name, pos: pos + by, field })
        }
        other => ExteriorError::Field(other),
    }
}

fn as_monomial(s: &str, names: &[String]) -> Option<Vec<usize>> {
    s.split('^').map(|p| names.iter().position(|n| n == p.trim())).collect()
}

/// Splits a term into coefficient text and basis indices. The monomial is the
/// part after the last top-level `*`, or the whole term, when it consists of
/// basis names only.
fn split_monomial<'a>(body: &'a str, names: &[String]) -> (Option<&'a str>, Vec<usize>) {
    let mut depth = 0i32;
    let mut last_star = None;
    for (i, c) in body.bytes().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'*' if depth == 0 => last_star = Some(i),
            _ => {}
        }
    }
    if let Some(mono) = as_monomial(body, names) {
        return (None, mono);
    }
    if let Some(i) = last_star {
        if let Some(mono) = as_monomial(&body[i + 1..], names) {
            return (Some(&body[..i]), mono);
        }
    }
    (Some(body), Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn e(dim: usize, idx: &[usize]) -> KForm {
        KForm::basis(&q(), dim, idx)
    }

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("e{i}")).collect()
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(e(3, &[0, 1]).w(&e(3, &[2])), e(3, &[0, 1, 2]));
        assert_eq!(e(3, &[1]).w(&e(3, &[0])), e(3, &[0, 1]).neg());
        assert!(e(3, &[1]).w(&e(3, &[1])).is_zero());
    }

    #[test]
    fn contraction_examples() {
        let f = q();
        assert_eq!(e(3, &[0, 1]).contract_basis(0).unwrap(), e(3, &[1]));
        assert_eq!(e(3, &[0, 1]).contract_basis(1).unwrap(), e(3, &[0]).neg());
        assert!(e(3, &[0, 1]).contract_basis(2).unwrap().is_zero());
        assert_eq!(KForm::unit(&f, 3).contract_basis(0), Err(ExteriorError::ContractZeroForm));
    }

    #[test]
    fn standard_symplectic_square() {
        let om = e(4, &[0, 1]).add(&e(4, &[2, 3]));
        let sq = om.wedge_power(2).unwrap();
        assert_eq!(sq, e(4, &[0, 1, 2, 3]).scale(&q().from_int(2)));
        assert_eq!(om.wedge_power(0).unwrap(), KForm::unit(&q(), 4));
    }

    #[test]
    fn colex_positions() {
        // in dimension 3, degree 2: {0,1}, {0,2}, {1,2}
        assert_eq!(basis_masks(3, 2), vec![0b011, 0b101, 0b110]);
        assert_eq!(e(3, &[0, 2]).coords(), vec![q().zero(), q().one(), q().zero()]);
        assert!(KForm::zero(&q(), 3, 2).coords().iter().all(Scalar::is_zero));
        for n in 0..8 {
            for k in 0..=n {
                assert_eq!(basis_masks(n, k).len(), binomial(n, k));
                for (r, m) in basis_masks(n, k).iter().enumerate() {
                    assert_eq!(colex_rank(*m), r);
                }
            }
        }
        assert!(matches!(KForm::from_coords(&q(), 3, 2, &[q().one()]), Err(ExteriorError::LengthMismatch { .. })));
    }

    #[test]
    fn text_round_trip() {
        let f = FieldSpec::rational_functions(&["t"]).unwrap();
        let n = names(4);
        let a = KForm::parse("(1 - t) * e1^e2 - 1/2 * e3^e4 + t^2/(t+1)*e2^e3", &n, &f, None).unwrap();
        assert_eq!(a.degree(), 2);
        let text = a.render(&n);
        assert_eq!(KForm::parse(&text, &n, &f, None).unwrap(), a);
        assert_eq!(KForm::parse("e2^e1", &n, &f, None).unwrap(), KForm::basis(&f, 4, &[0, 1]).neg());
        assert_eq!(KForm::parse("0", &n, &f, Some(2)).unwrap(), KForm::zero(&f, 4, 2));
        assert!(KForm::parse("e1 + e1^e2", &n, &f, None).is_err());
        assert!(KForm::parse("e1 + 2 * e9", &n, &f, None).is_err());
    }

    #[test]
    fn pullback_of_swap() {
        let f = q();
        let swap = Matrix::from_ints(&f, &[&[0, 1], &[1, 0]]);
        assert_eq!(e(2, &[0, 1]).pullback(&swap), e(2, &[0, 1]).neg());
    }

    fn form(dim: usize, degree: usize) -> impl Strategy<Value = KForm> {
        let slots = binomial(dim, degree);
        proptest::collection::vec(prop_oneof![3 => Just(0i64), 1 => -3i64..4], slots).prop_map(move |v| {
            let f = FieldSpec::Rationals;
            let s: Vec<Scalar> = v.iter().map(|&x| f.from_int(x)).collect();
            KForm::from_coords(&f, dim, degree, &s).unwrap()
        })
    }

    fn vector(dim: usize) -> impl Strategy<Value = Vec<Scalar>> {
        proptest::collection::vec(-3i64..4, dim).prop_map(|v| v.into_iter().map(|x| FieldSpec::Rationals.from_int(x)).collect())
    }

    proptest! {
        #[test]
        fn graded_anticommutativity((a, b, p, r) in (0usize..4, 0usize..4).prop_flat_map(|(p, r)| (form(6, p), form(6, r), Just(p), Just(r)))) {
            let lhs = a.w(&b);
            let rhs = b.w(&a);
            let rhs = if (p * r) % 2 == 1 { rhs.neg() } else { rhs };
            prop_assert_eq!(lhs.coords(), rhs.coords());
        }

        #[test]
        fn wedge_is_associative(a in form(6, 1), b in form(6, 2), c in form(6, 2)) {
            prop_assert_eq!(a.w(&b).w(&c), a.w(&b.w(&c)));
        }

        #[test]
        fn contraction_is_an_antiderivation(a in form(6, 2), b in form(6, 3), x in vector(6)) {
            let lhs = a.w(&b).contract(&x).unwrap();
            let rhs = a.contract(&x).unwrap().w(&b).add(&a.w(&b.contract(&x).unwrap()));
            prop_assert_eq!(lhs.coords(), rhs.coords());
            let twice = b.contract(&x).unwrap().contract(&x).unwrap();
            prop_assert!(twice.is_zero());
        }

        #[test]
        fn coordinates_round_trip(a in form(7, 3)) {
            let back = KForm::from_coords(a.field(), 7, 3, &a.coords()).unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn text_round_trip_random(a in form(5, 2)) {
            let n = names(5);
            prop_assert_eq!(KForm::parse(&a.render(&n), &n, a.field(), Some(2)).unwrap(), a);
        }
    }
}
