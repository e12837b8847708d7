//! Lie algebras given by structure constants.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exterior::{basis_masks, indices_of, ExteriorError, KForm};
use crate::field::{FieldError, FieldSpec, Scalar};
use crate::linalg::{Matrix, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("Jacobi identity fails on ({}, {}, {}) with defect {}", .0.triple.0, .0.triple.1, .0.triple.2, .0.defect)]
    JacobiViolation(Box<JacobiDefect>),
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket [e{0}, e{0}] must vanish and cannot be specified")]
    DiagonalBracket(usize),
    #[error("bracket of ({0}, {1}) given twice")]
    DuplicateBracket(usize, usize),
    #[error("{got} basis names for dimension {dim}")]
    NameCount { dim: usize, got: usize },
    #[error("duplicate basis name `{0}`")]
    DuplicateName(String),
    #[error("coefficient {value} is not in {field}")]
    WrongField { value: String, field: String },
    #[error("vectors do not span a subalgebra")]
    NotClosed,
    #[error("change of basis is singular")]
    Singular,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

/// The first triple on which the Jacobi identity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiDefect {
    pub triple: (usize, usize, usize),
    pub names: (String, String, String),
    pub defect: String,
    pub defect_vector: Vec<Scalar>,
}

/// (i, j, [(k, "scalar text")])
pub type BracketText<'a> = (usize, usize, &'a [(usize, &'a str)]);

/// One bracket relation [e_i, e_j] = Σ c_k e_k.
#[derive(Clone, Debug)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, Scalar)>,
}

impl BracketEntry {
    pub fn new(i: usize, j: usize, terms: Vec<(usize, Scalar)>) -> Self {
        BracketEntry { i, j, terms }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    names: Vec<String>,
    field: FieldSpec,
    /// nonzero brackets [e_i, e_j] for i < j
    table: BTreeMap<(usize, usize), Vector>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriState {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriState::Yes => "yes",
            TriState::No => "no",
            TriState::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub nilpotent: bool,
    pub solvable: bool,
    pub completely_solvable: TriState,
}

pub fn default_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

fn field_matches(x: &Scalar, field: &FieldSpec) -> bool {
    &x.field() == field
}

impl LieAlgebra {
    /// Builds the algebra and checks the Jacobi identity on all basis triples.
    /// Entries with i > j are read as [e_i, e_j] and stored antisymmetrically.
    pub fn new(field: &FieldSpec, names: Vec<String>, entries: Vec<BracketEntry>) -> Result<Self, LieError> {
        let dim = names.len();
        let mut seen = std::collections::BTreeSet::new();
        for n in &names {
            if !seen.insert(n.clone()) {
                return Err(LieError::DuplicateName(n.clone()));
            }
        }
        let mut table = BTreeMap::new();
        let mut given = std::collections::BTreeSet::new();
        for e in entries {
            for idx in [e.i, e.j] {
                if idx >= dim {
                    return Err(LieError::IndexOutOfRange { index: idx, dim });
                }
            }
            if e.i == e.j {
                return Err(LieError::DiagonalBracket(e.i));
            }
            let (i, j, flip) = if e.i < e.j { (e.i, e.j, false) } else { (e.j, e.i, true) };
            if !given.insert((i, j)) {
                return Err(LieError::DuplicateBracket(i, j));
            }
            let mut v = vec![field.zero(); dim];
            for (k, c) in e.terms {
                if k >= dim {
                    return Err(LieError::IndexOutOfRange { index: k, dim });
                }
                if !field_matches(&c, field) {
                    return Err(LieError::WrongField { value: c.to_string(), field: field.to_string() });
                }
                v[k] = &v[k] + &c;
            }
            if flip {
                v = v.iter().map(|x| -x).collect();
            }
            if v.iter().any(|x| !x.is_zero()) {
                table.insert((i, j), v);
            }
        }
        let g = LieAlgebra { dim, names, field: field.clone(), table };
        g.check_jacobi()?;
        Ok(g)
    }

    /// Shorthand for constructors: brackets given as (i, j, [(k, "scalar text")]).
    pub fn from_text(field: &FieldSpec, names: &[&str], brackets: &[BracketText]) -> Result<Self, LieError> {
        let entries = brackets
            .iter()
            .map(|(i, j, terms)| {
                let terms = terms.iter().map(|(k, c)| Ok((*k, field.parse(c)?))).collect::<Result<Vec<_>, FieldError>>()?;
                Ok(BracketEntry::new(*i, *j, terms))
            })
            .collect::<Result<Vec<_>, LieError>>()?;
        Self::new(field, names.iter().map(|s| s.to_string()).collect(), entries)
    }

    pub fn abelian(field: &FieldSpec, dim: usize) -> Self {
        LieAlgebra { dim, names: default_names(dim), field: field.clone(), table: BTreeMap::new() }
    }

    fn check_jacobi(&self) -> Result<(), LieError> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let a = self.bracket_vec(&self.unit(i), &self.bracket(j, k));
                    let b = self.bracket_vec(&self.unit(j), &self.bracket(k, i));
                    let c = self.bracket_vec(&self.unit(k), &self.bracket(i, j));
                    let sum: Vector = (0..self.dim).map(|t| &(&a[t] + &b[t]) + &c[t]).collect();
                    if sum.iter().any(|x| !x.is_zero()) {
                        return Err(LieError::JacobiViolation(Box::new(JacobiDefect {
                            triple: (i, j, k),
                            names: (self.names[i].clone(), self.names[j].clone(), self.names[k].clone()),
                            defect: self.render_vector(&sum),
                            defect_vector: sum,
                        })));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim);
        self.names = names;
        self
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn unit(&self, i: usize) -> Vector {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn zero_vector(&self) -> Vector {
        vec![self.field.zero(); self.dim]
    }

    /// Nonzero brackets [e_i, e_j] with i < j.
    pub fn brackets(&self) -> impl Iterator<Item = ((usize, usize), &Vector)> {
        self.table.iter().map(|(k, v)| (*k, v))
    }

    pub fn bracket(&self, i: usize, j: usize) -> Vector {
        if i < j {
            self.table.get(&(i, j)).cloned().unwrap_or_else(|| self.zero_vector())
        } else if i > j {
            self.table.get(&(j, i)).map(|v| v.iter().map(|x| -x).collect()).unwrap_or_else(|| self.zero_vector())
        } else {
            self.zero_vector()
        }
    }

    pub fn bracket_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = self.zero_vector();
        for (&(i, j), v) in &self.table {
            // [x, y] picks up (x_i y_j − x_j y_i) [e_i, e_j]
            let c = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
            if c.is_zero() {
                continue;
            }
            for (o, vk) in out.iter_mut().zip(v) {
                if !vk.is_zero() {
                    *o += &(&c * vk);
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.table.is_empty()
    }

    /// Matrix of ad_x; column j is [x, e_j].
    pub fn ad_vec(&self, x: &[Scalar]) -> Matrix {
        let cols = (0..self.dim).map(|j| self.bracket_vec(x, &self.unit(j))).collect();
        Matrix::from_columns(&self.field, self.dim, cols)
    }

    pub fn ad(&self, i: usize) -> Matrix {
        let cols = (0..self.dim).map(|j| self.bracket(i, j)).collect();
        Matrix::from_columns(&self.field, self.dim, cols)
    }

    /// d e^k as a 2-form.
    pub fn d_basis(&self, k: usize) -> KForm {
        let mut out = KForm::zero(&self.field, self.dim, 2);
        for (&(i, j), v) in &self.table {
            if !v[k].is_zero() {
                out = out.add(&KForm::monomial(&self.field, self.dim, &[i, j], -&v[k]));
            }
        }
        out
    }

    fn d_one_forms(&self) -> Vec<KForm> {
        (0..self.dim).map(|k| self.d_basis(k)).collect()
    }

    fn d_monomial(&self, mask: u64, dk: &[KForm]) -> KForm {
        let idx = indices_of(mask);
        let mut out = KForm::zero(&self.field, self.dim, idx.len() + 1);
        for p in 0..idx.len() {
            if dk[idx[p]].is_zero() {
                continue;
            }
            let before = KForm::basis(&self.field, self.dim, &idx[..p]);
            let after = KForm::basis(&self.field, self.dim, &idx[p + 1..]);
            let term = before.w(&dk[idx[p]]).w(&after);
            out = if p % 2 == 0 { out.add(&term) } else { out.sub(&term) };
        }
        out
    }

    /// Chevalley–Eilenberg differential.
    pub fn d(&self, a: &KForm) -> KForm {
        self.try_d(a).expect("form does not live on this algebra")
    }

    pub fn try_d(&self, a: &KForm) -> Result<KForm, LieError> {
        if a.dim() != self.dim {
            return Err(ExteriorError::DimensionMismatch { left: self.dim, right: a.dim() }.into());
        }
        if a.field() != &self.field {
            return Err(FieldError::Mismatch { left: self.field.to_string(), right: a.field().to_string() }.into());
        }
        let dk = self.d_one_forms();
        let mut out = KForm::zero(&self.field, self.dim, a.degree() + 1);
        if a.degree() >= self.dim {
            return Ok(out);
        }
        for (m, c) in a.terms() {
            out = out.add(&self.d_monomial(m, &dk).scale(c));
        }
        Ok(out)
    }

    /// d on every colex basis monomial of degree k.
    pub fn d_images(&self, k: usize) -> Vec<KForm> {
        let dk = self.d_one_forms();
        basis_masks(self.dim, k)
            .into_iter()
            .map(|m| if k >= self.dim { KForm::zero(&self.field, self.dim, k + 1) } else { self.d_monomial(m, &dk) })
            .collect()
    }

    /// Span of all brackets [u, v] with u ∈ a, v ∈ b.
    pub fn bracket_spaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for u in a.basis() {
            for v in b.basis() {
                let w = self.bracket_vec(u, v);
                if w.iter().any(|x| !x.is_zero()) {
                    vs.push(w);
                }
            }
        }
        Subspace::span(&self.field, self.dim, vs)
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(&self.field, self.dim)
    }

    pub fn commutator(&self) -> Subspace {
        Subspace::span(&self.field, self.dim, self.table.values().cloned().collect())
    }

    /// Kernel of x ↦ (ad_x e_1, …, ad_x e_n).
    pub fn center(&self) -> Subspace {
        let mut rows = Vec::new();
        for j in 0..self.dim {
            // row block for the map x ↦ [x, e_j]; column i carries [e_i, e_j]
            let m = Matrix::from_columns(&self.field, self.dim, (0..self.dim).map(|i| self.bracket(i, j)).collect());
            rows.extend(m.row_vecs());
        }
        let k = crate::linalg::kernel_of_rows(rows, self.dim, &self.field);
        Subspace::span(&self.field, self.dim, k)
    }

    /// g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ … until it stabilises.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = self.full();
        let mut series = vec![full.clone()];
        loop {
            let next = self.bracket_spaces(&full, series.last().expect("nonempty"));
            if &next == series.last().expect("nonempty") {
                return series;
            }
            series.push(next);
        }
    }

    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut series = vec![self.full()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.bracket_spaces(last, last);
            if &next == last {
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().is_some_and(Subspace::is_zero)
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(Subspace::is_zero)
    }

    pub fn is_unimodular(&self) -> bool {
        (0..self.dim).all(|i| self.ad(i).trace().is_zero())
    }

    pub fn classify(&self) -> Classification {
        let nilpotent = self.is_nilpotent();
        let solvable = nilpotent || self.is_solvable();
        let completely_solvable = if nilpotent {
            TriState::Yes
        } else if !solvable {
            TriState::No
        } else {
            self.real_spectrum()
        };
        Classification { nilpotent, solvable, completely_solvable }
    }

    /// For a solvable algebra the weights are linear functionals, so reality of
    /// the spectra of the basis elements' ad decides reality for every element.
    fn real_spectrum(&self) -> TriState {
        let mut verdict = TriState::Yes;
        for i in 0..self.dim {
            let ad = self.ad(i);
            if permutation_triangular(&ad) {
                continue;
            }
            match real_rooted(&ad.charpoly()) {
                TriState::Yes => {}
                TriState::No => return TriState::No,
                TriState::Unknown => verdict = TriState::Unknown,
            }
        }
        verdict
    }

    pub fn is_heisenberg(&self) -> bool {
        if self.dim.is_multiple_of(2) || !self.is_nilpotent() {
            return false;
        }
        let c = self.commutator();
        if c.dim() != 1 || c != self.center() {
            return false;
        }
        let pivot = c.pivots()[0];
        let rest: Vec<usize> = (0..self.dim).filter(|&i| i != pivot).collect();
        let rows: Vec<Vector> = rest
            .iter()
            .map(|&a| rest.iter().map(|&b| c.coords(&self.bracket(a, b)).expect("bracket lies in the center")[0].clone()).collect())
            .collect();
        Matrix::from_rows(&self.field, rows).rank() == rest.len()
    }

    /// Structure constants in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix, names: Vec<String>) -> Result<LieAlgebra, LieError> {
        let inv = p.inverse().ok_or(LieError::Singular)?;
        let cols: Vec<Vector> = (0..self.dim).map(|j| p.column(j)).collect();
        let mut entries = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let w = inv.apply(&self.bracket_vec(&cols[i], &cols[j]));
                entries.push(BracketEntry::new(i, j, w.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()));
            }
        }
        LieAlgebra::new(&self.field, names, entries)
    }

    /// The subalgebra spanned by `vectors`, written in that basis.
    pub fn restrict(&self, vectors: &[Vector], names: Vec<String>) -> Result<LieAlgebra, LieError> {
        let m = Matrix::from_columns(&self.field, self.dim, vectors.to_vec());
        let mut entries = Vec::new();
        for i in 0..vectors.len() {
            for j in i + 1..vectors.len() {
                let w = self.bracket_vec(&vectors[i], &vectors[j]);
                let c = m.solve(&w).ok_or(LieError::NotClosed)?;
                entries.push(BracketEntry::new(i, j, c.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()));
            }
        }
        LieAlgebra::new(&self.field, names, entries)
    }

    /// Whether `f` (columns are images of this algebra's basis in `target`) preserves brackets.
    pub fn is_morphism_to(&self, target: &LieAlgebra, f: &Matrix) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| f.apply(&self.bracket(i, j)) == target.bracket_vec(&f.column(i), &f.column(j))))
    }

    pub fn render_vector(&self, v: &[Scalar]) -> String {
        KForm::one_form(&self.field, v).render(&self.names)
    }

    pub fn render_brackets(&self) -> Vec<String> {
        self.table.iter().map(|(&(i, j), v)| format!("[{}, {}] = {}", self.names[i], self.names[j], self.render_vector(v))).collect()
    }

    /// Form parsed against this algebra's basis names.
    pub fn form(&self, text: &str) -> KForm {
        match KForm::parse(text, &self.names, &self.field, None) {
            Ok(f) => f,
            Err(e) => panic!("bad form literal {text:?}: {e}"),
        }
    }

    pub fn parse_form(&self, text: &str, degree: Option<usize>) -> Result<KForm, ExteriorError> {
        KForm::parse(text, &self.names, &self.field, degree)
    }
}

/// True when a simultaneous permutation of rows and columns makes `m` upper
/// triangular, i.e. the graph of nonzero off-diagonal entries is acyclic.
fn permutation_triangular(m: &Matrix) -> bool {
    let n = m.rows();
    let mut indeg = vec![0usize; n];
    for (i, j, x) in m.entries() {
        if i != j && !x.is_zero() {
            indeg[j] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        #[allow(clippy::needless_range_loop)]
        for w in 0..n {
            if w != v && !m.get(v, w).is_zero() {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
    }
    seen == n
}

/// Yes/No when the polynomial has rational coefficients, by counting real
/// roots of its squarefree part with a Sturm sequence.
fn real_rooted(coeffs: &[Scalar]) -> TriState {
    let Some(p) = coeffs.iter().map(Scalar::to_rational).collect::<Option<Vec<_>>>() else {
        return TriState::Unknown;
    };
    let p = upoly::trim(p);
    let sf = upoly::squarefree(&p);
    if upoly::degree(&sf) == upoly::count_real_roots(&sf) {
        TriState::Yes
    } else {
        TriState::No
    }
}

mod upoly {
    //! Dense univariate polynomials over Q, lowest degree first.

    use super::*;

    pub fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }

    pub fn degree(p: &[BigRational]) -> usize {
        p.len().saturating_sub(1)
    }

    fn derivative(p: &[BigRational]) -> Vec<BigRational> {
        p.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect()
    }

    fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut r = a.to_vec();
        let lb = b.last().expect("nonzero divisor").clone();
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let f = r.last().expect("nonempty") / &lb;
            for (i, c) in b.iter().enumerate() {
                r[i + shift] = &r[i + shift] - &f * c;
            }
            r.pop();
            r = trim(r);
        }
        r
    }

    fn div(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut r = a.to_vec();
        let lb = b.last().expect("nonzero divisor").clone();
        let mut q = vec![BigRational::zero(); a.len().saturating_sub(b.len()) + 1];
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let f = r.last().expect("nonempty") / &lb;
            for (i, c) in b.iter().enumerate() {
                r[i + shift] = &r[i + shift] - &f * c;
            }
            q[shift] = f;
            r.pop();
        }
        trim(q)
    }

    fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b);
            a = b;
            b = r;
        }
        a
    }

    pub fn squarefree(p: &[BigRational]) -> Vec<BigRational> {
        let g = gcd(p, &derivative(p));
        if g.len() <= 1 {
            p.to_vec()
        } else {
            div(p, &g)
        }
    }

    fn sign_changes(values: impl Iterator<Item = i32>) -> usize {
        let nonzero: Vec<i32> = values.filter(|s| *s != 0).collect();
        nonzero.windows(2).filter(|w| w[0] != w[1]).count()
    }

    fn sign(x: &BigRational) -> i32 {
        if x.is_positive() {
            1
        } else if x.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Number of distinct real roots of a squarefree polynomial.
    pub fn count_real_roots(p: &[BigRational]) -> usize {
        if p.len() <= 1 {
            return 0;
        }
        let mut seq = vec![p.to_vec(), derivative(p)];
        loop {
            let n = seq.len();
            let r = rem(&seq[n - 2], &seq[n - 1]);
            if r.is_empty() {
                break;
            }
            seq.push(r.into_iter().map(|c| -c).collect());
        }
        let at_pos = seq.iter().map(|q| sign(q.last().expect("nonzero")));
        let at_neg = seq.iter().map(|q| {
            let s = sign(q.last().expect("nonzero"));
            if degree(q).is_multiple_of(2) {
                s
            } else {
                -s
            }
        });
        sign_changes(at_neg) - sign_changes(at_pos)
    }

}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn h3() -> LieAlgebra {
        LieAlgebra::from_text(&q(), &["e1", "e2", "e3"], &[(0, 1, &[(2, "1")])]).unwrap()
    }

    #[test]
    fn jacobi_violation_is_reported() {
        let err = LieAlgebra::from_text(&q(), &["e1", "e2", "e3"], &[(0, 1, &[(0, "1")]), (0, 2, &[(1, "1")])]).unwrap_err();
        match err {
            LieError::JacobiViolation(d) => {
                assert_eq!(d.triple, (0, 1, 2));
                // [e1,[e2,e3]] + [e2,[e3,e1]] + [e3,[e1,e2]] = −[e1,e3] = −e2
                assert_eq!(d.defect_vector, vec![q().zero(), q().from_int(-1), q().zero()]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn heisenberg_differential_and_spaces() {
        let g = h3();
        assert_eq!(g.d(&g.form("e3")), g.form("-e1^e2"));
        assert_eq!(g.commutator(), Subspace::coordinate(&q(), 3, &[2]));
        assert_eq!(g.center(), Subspace::coordinate(&q(), 3, &[2]));
        assert!(g.is_unimodular());
        assert!(g.is_heisenberg());
        let c = g.classify();
        assert!(c.nilpotent && c.solvable && c.completely_solvable == TriState::Yes);
    }

    #[test]
    fn abelian_spaces() {
        let g = LieAlgebra::abelian(&q(), 4);
        assert!(g.commutator().is_zero());
        assert_eq!(g.center(), Subspace::full(&q(), 4));
        assert!(!LieAlgebra::abelian(&q(), 3).is_heisenberg());
    }

    #[test]
    fn affine_line_is_not_unimodular() {
        let g = LieAlgebra::from_text(&q(), &["e1", "e2"], &[(0, 1, &[(1, "1")])]).unwrap();
        assert!(!g.is_unimodular());
        assert_eq!(g.ad(0).trace(), q().one());
        let c = g.classify();
        assert!(!c.nilpotent && c.solvable && c.completely_solvable == TriState::Yes);
    }

    #[test]
    fn euclidean_algebra_is_not_completely_solvable() {
        let g = LieAlgebra::from_text(&q(), &["e1", "e2", "e3"], &[(0, 1, &[(2, "1")]), (0, 2, &[(1, "-1")])]).unwrap();
        let c = g.classify();
        assert!(c.solvable && !c.nilpotent);
        assert_eq!(c.completely_solvable, TriState::No);
    }

    #[test]
    fn sl2_is_not_solvable() {
        // [h,e] = 2e, [h,f] = −2f, [e,f] = h
        let g = LieAlgebra::from_text(&q(), &["h", "e", "f"], &[(0, 1, &[(1, "2")]), (0, 2, &[(2, "-2")]), (1, 2, &[(0, "1")])]).unwrap();
        let c = g.classify();
        assert!(!c.solvable);
        assert_eq!(c.completely_solvable, TriState::No);
        assert!(g.center().is_zero());
    }

    #[test]
    fn d_squared_vanishes_on_all_monomials() {
        let g = LieAlgebra::from_text(&q(), &["e1", "e2", "e3", "e4"], &[(0, 1, &[(1, "1")]), (0, 2, &[(3, "1")]), (0, 3, &[(2, "-1")])])
            .unwrap();
        for k in 0..=4 {
            for a in g.d_images(k) {
                assert!(g.d(&a).is_zero());
            }
        }
    }

    #[test]
    fn morphism_criterion_matches_pullback() {
        // projection h3 → R² (abelian) is a morphism; pullback commutes with d
        let g = h3();
        let target = LieAlgebra::abelian(&q(), 2);
        let f = Matrix::from_ints(&q(), &[&[1, 0, 0], &[0, 1, 0]]);
        assert!(g.is_morphism_to(&target, &f));
        for k in 0..2 {
            let th = KForm::basis(&q(), 2, &[k]);
            assert_eq!(g.d(&th.pullback(&f)), target.d(&th).pullback(&f));
        }
        // a map hitting the center badly is not
        let bad = Matrix::from_ints(&q(), &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let ab3 = LieAlgebra::abelian(&q(), 3);
        assert!(!g.is_morphism_to(&ab3, &bad));
        let th = KForm::basis(&q(), 3, &[2]);
        assert_ne!(g.d(&th.pullback(&bad)), ab3.d(&th).pullback(&bad));
    }

    #[test]
    fn change_basis_round_trip() {
        let g = h3();
        let p = Matrix::from_ints(&q(), &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 2]]);
        let h = g.change_basis(&p, default_names(3)).unwrap();
        // [b1, b2] = [e1, e1 + e2] = e3 = b3 / 2
        assert_eq!(h.bracket(0, 1), vec![q().zero(), q().zero(), q().from_ratio(1, 2)]);
        let back = h.change_basis(&p.inverse().unwrap(), default_names(3)).unwrap();
        assert_eq!(back, g);
    }
}
