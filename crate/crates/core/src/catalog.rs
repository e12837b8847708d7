//! Constructors for the algebras, forms and lattice witnesses used as fixtures,
//! plus a small registry addressable by id.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::cohomology::betti;
use crate::exterior::KForm;
use crate::field::{FieldError, FieldSpec, Scalar};
use crate::lattice::{alpha, alpha_field, exact_exp, lattice_check, Block, DerivationBlockSpec, LatticeCertificate, LatticeError};
use crate::lefschetz::{contact_lefschetz, symplectic_lefschetz, LefschetzError};
use crate::liealg::{BracketEntry, LieAlgebra, LieError};
use crate::linalg::{Matrix, Vector};
use crate::symcon::{contactize, verify_contact, verify_symplectic, ContactStructure, SymconError, SymplecticStructure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("k must be an integer >= 3, got {0}")]
    InvalidK(i64),
    #[error("need at least one k")]
    EmptyKList,
    #[error("invalid size parameter {0}")]
    InvalidSize(usize),
    #[error("lattice fixture for the Jordan example needs even m, got {0}")]
    OddM(usize),
    #[error("lattice fixture for the diagonal example needs all k equal")]
    UnequalK,
    #[error("parameter {0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("parameters live in incompatible fields: {0}")]
    WrongField(String),
    #[error("unknown catalog id {0:?}")]
    UnknownId(String),
    #[error(transparent)]
    Symcon(#[from] SymconError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn entry(i: usize, j: usize, terms: Vec<(usize, Scalar)>) -> BracketEntry {
    BracketEntry::new(i, j, terms)
}

/// h_{2n+1} with basis z, x1, y1, …, xn, yn, [x_i, y_i] = z and η = z*.
pub fn heisenberg(n: usize) -> Result<ContactStructure, CatalogError> {
    if n == 0 {
        return Err(CatalogError::InvalidSize(n));
    }
    let f = FieldSpec::Rationals;
    let mut basis = vec!["z".to_string()];
    for i in 1..=n {
        basis.push(format!("x{i}"));
        basis.push(format!("y{i}"));
    }
    let entries = (0..n).map(|i| entry(2 * i + 1, 2 * i + 2, vec![(0, f.one())])).collect();
    let g = LieAlgebra::new(&f, basis, entries)?;
    let eta = KForm::basis(&f, 2 * n + 1, &[0]);
    Ok(verify_contact(&g, &eta)?)
}

/// R^{2n} with ω = Σ e^{2i−1}∧e^{2i}.
pub fn abelian_standard(n: usize) -> Result<SymplecticStructure, CatalogError> {
    if n == 0 {
        return Err(CatalogError::InvalidSize(n));
    }
    let f = FieldSpec::Rationals;
    let h = LieAlgebra::abelian(&f, 2 * n);
    let mut omega = KForm::zero(&f, 2 * n, 2);
    for i in 0..n {
        omega = omega.add(&KForm::basis(&f, 2 * n, &[2 * i, 2 * i + 1]));
    }
    Ok(verify_symplectic(&h, &omega)?)
}

/// h₃ ⊕ R with [e1, e2] = e3 and ω = e¹∧e³ + e²∧e⁴.
pub fn h3_plus_r() -> SymplecticStructure {
    let f = FieldSpec::Rationals;
    let h = LieAlgebra::from_text(&f, &["e1", "e2", "e3", "e4"], &[(0, 1, &[(2, "1")])]).expect("valid");
    let omega = h.form("e1^e3 + e2^e4");
    verify_symplectic(&h, &omega).expect("symplectic")
}

/// aff(R): [e1, e2] = e2, ω = e¹∧e² (Frobenius).
pub fn aff() -> SymplecticStructure {
    let f = FieldSpec::Rationals;
    let h = LieAlgebra::from_text(&f, &["e1", "e2"], &[(0, 1, &[(1, "1")])]).expect("valid");
    verify_symplectic(&h, &h.form("e1^e2")).expect("symplectic")
}

/// e(2): [e1, e2] = e3, [e1, e3] = −e2.
pub fn euclidean2() -> LieAlgebra {
    let f = FieldSpec::Rationals;
    LieAlgebra::from_text(&f, &["e1", "e2", "e3"], &[(0, 1, &[(2, "1")]), (0, 2, &[(1, "-1")])]).expect("valid")
}

/// sl(2, R) with η = h*.
pub fn sl2() -> ContactStructure {
    let f = FieldSpec::Rationals;
    let g = LieAlgebra::from_text(&f, &["h", "e", "f"], &[(0, 1, &[(1, "2")]), (0, 2, &[(2, "-2")]), (1, 2, &[(0, "1")])]).expect("valid");
    verify_contact(&g, &g.form("h")).expect("contact")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// one indeterminate per distinct k
    Independent,
    /// a single indeterminate for all blocks
    AllEqual,
}

/// 𝔥_A = R f₁ ⋉_A R^{2m+1} with A = (0) ⊕ diag(t₁..t_m) ⊕ diag(−t₁..−t_m).
#[derive(Clone, Debug)]
pub struct Example41 {
    pub k_list: Vec<i64>,
    pub relation: Relation,
    pub symplectic: SymplecticStructure,
    pub contact: ContactStructure,
    /// Named forms on 𝔥_A.
    pub forms: BTreeMap<String, KForm>,
}

impl Example41 {
    pub fn m(&self) -> usize {
        self.k_list.len()
    }

    /// n = m + 1, half the dimension of 𝔥_A.
    pub fn n(&self) -> usize {
        self.m() + 1
    }

    pub fn form(&self, name: &str) -> &KForm {
        &self.forms[name]
    }

    pub fn gamma(&self, l: usize) -> &KForm {
        self.form(&format!("gamma_{l}"))
    }

    pub fn gamma_bar(&self, l: usize) -> &KForm {
        self.form(&format!("gammabar_{l}"))
    }

    pub fn sigma(&self, l: usize) -> &KForm {
        self.form(&format!("sigma_{l}"))
    }

    pub fn sigma_bar(&self, l: usize) -> &KForm {
        self.form(&format!("sigmabar_{l}"))
    }

    pub fn theta(&self, i: usize, j: usize) -> &KForm {
        self.form(&format!("theta_{i}|{j}"))
    }

    /// σ₂, …, σ_n
    pub fn w(&self) -> Vec<KForm> {
        (2..=self.n()).map(|l| self.sigma(l).clone()).collect()
    }

    /// σ̄₂, …, σ̄_n
    pub fn w_bar(&self) -> Vec<KForm> {
        (2..=self.n()).map(|l| self.sigma_bar(l).clone()).collect()
    }
}

fn check_k(k: i64) -> Result<(), CatalogError> {
    if k < 3 {
        Err(CatalogError::InvalidK(k))
    } else {
        Ok(())
    }
}

fn almost_abelian_names(m: usize) -> Vec<String> {
    let mut v = names(&["f1", "f2"]);
    v.extend((1..=m).map(|i| format!("u{i}")));
    v.extend((1..=m).map(|i| format!("v{i}")));
    v
}

pub fn example_41(k_list: &[i64], relation: Relation) -> Result<Example41, CatalogError> {
    if k_list.is_empty() {
        return Err(CatalogError::EmptyKList);
    }
    for &k in k_list {
        check_k(k)?;
    }
    let mut distinct: Vec<i64> = Vec::new();
    for &k in k_list {
        if !distinct.contains(&k) {
            distinct.push(k);
        }
    }
    let vars: Vec<String> = if relation == Relation::AllEqual || distinct.len() == 1 {
        vec!["t".into()]
    } else {
        distinct.iter().map(|k| format!("t{k}")).collect()
    };
    let f = FieldSpec::rational_functions(&vars)?;
    let t_of = |k: i64| {
        let name = if vars.len() == 1 { vars[0].clone() } else { format!("t{k}") };
        f.var(&name).expect("declared")
    };
    let m = k_list.len();
    let dim = 2 * m + 2;
    let u = |i: usize| 1 + i;
    let v = |i: usize| 1 + m + i;
    let mut entries = Vec::new();
    for (i, &k) in k_list.iter().enumerate() {
        let t = t_of(k);
        entries.push(entry(0, u(i + 1), vec![(u(i + 1), t.clone())]));
        entries.push(entry(0, v(i + 1), vec![(v(i + 1), -t)]));
    }
    let h = LieAlgebra::new(&f, almost_abelian_names(m), entries)?;

    let b = |idx: &[usize]| KForm::basis(&f, dim, idx);
    let n = m + 1;
    let mut forms = BTreeMap::new();
    let delta = b(&[0, 1]);
    forms.insert("delta".to_string(), delta.clone());
    let x: Vec<usize> = (2..dim).collect();
    forms.insert("Gamma".to_string(), b(&x));
    for a in 1..=2 * m {
        let rest: Vec<usize> = x.iter().copied().filter(|&i| i != 1 + a).collect();
        forms.insert(format!("Gamma_{a}"), b(&rest));
        for c in a + 1..=2 * m {
            let rest: Vec<usize> = x.iter().copied().filter(|&i| i != 1 + a && i != 1 + c).collect();
            forms.insert(format!("Gamma_{a},{c}"), b(&rest));
        }
    }
    let gammas: Vec<KForm> = (1..=n).map(|l| if l == 1 { delta.clone() } else { b(&[u(l - 1), v(l - 1)]) }).collect();
    let product = |skip: usize| gammas.iter().enumerate().filter(|&(j, _)| j != skip).fold(KForm::unit(&f, dim), |acc, (_, g)| acc.w(g));
    let gbars: Vec<KForm> = (0..n).map(product).collect();
    let omega = gammas.iter().fold(KForm::zero(&f, dim, 2), |acc, g| acc.add(g));
    let mut sbar1 = KForm::zero(&f, dim, 2 * n - 2);
    for (l, g) in gbars.iter().enumerate() {
        sbar1 = if l % 2 == 0 { sbar1.add(g) } else { sbar1.sub(g) };
    }
    for l in 1..=n {
        forms.insert(format!("gamma_{l}"), gammas[l - 1].clone());
        forms.insert(format!("gammabar_{l}"), gbars[l - 1].clone());
        let (s, sb) = if l == 1 { (omega.clone(), sbar1.clone()) } else { (gammas[l - 1].sub(&gammas[0]), gbars[l - 1].sub(&gbars[0])) };
        forms.insert(format!("sigma_{l}"), s);
        forms.insert(format!("sigmabar_{l}"), sb);
    }
    for i in 1..=m {
        for j in 1..=m {
            if i != j {
                forms.insert(format!("theta_{i}|{j}"), b(&[u(i), v(j)]));
            }
        }
    }
    let symplectic = verify_symplectic(&h, &omega)?;
    let contact = contactize(&symplectic);
    Ok(Example41 { k_list: k_list.to_vec(), relation, symplectic, contact, forms })
}

/// 𝔥_A with A₀ = J_m(t) ⊕ J_m(−t) and ω = δ + Σ (−1)^{i+1} u^i∧v^{m+1−i}.
#[derive(Clone, Debug)]
pub struct Example42 {
    pub k: i64,
    pub m: usize,
    pub symplectic: SymplecticStructure,
    pub contact: ContactStructure,
}

pub fn example_42(k: i64, m: usize) -> Result<Example42, CatalogError> {
    check_k(k)?;
    if m < 2 {
        return Err(CatalogError::InvalidSize(m));
    }
    let f = FieldSpec::rational_functions(&["t"])?;
    let t = f.var("t").expect("declared");
    let dim = 2 * m + 2;
    let u = |i: usize| 1 + i;
    let v = |i: usize| 1 + m + i;
    let mut entries = Vec::new();
    for i in 1..=m {
        let mut tu = vec![(u(i), t.clone())];
        let mut tv = vec![(v(i), -t.clone())];
        if i < m {
            tu.push((u(i + 1), f.one()));
            tv.push((v(i + 1), f.one()));
        }
        entries.push(entry(0, u(i), tu));
        entries.push(entry(0, v(i), tv));
    }
    let h = LieAlgebra::new(&f, almost_abelian_names(m), entries)?;
    let mut omega = KForm::basis(&f, dim, &[0, 1]);
    for i in 1..=m {
        let sign = if i % 2 == 1 { f.one() } else { -f.one() };
        omega = omega.add(&KForm::monomial(&f, dim, &[u(i), v(m + 1 - i)], sign));
    }
    let symplectic = verify_symplectic(&h, &omega)?;
    let contact = contactize(&symplectic);
    Ok(Example42 { k, m, symplectic, contact })
}

/// Coefficients of ω = a w¹w² + b x¹z¹ + c x²z² + e x¹x² + f y¹y².
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BgParams {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub e: Scalar,
    pub f: Scalar,
}

impl BgParams {
    /// a = b = c = f = 1, e = 0.
    pub fn unit() -> Self {
        let q = FieldSpec::Rationals;
        BgParams { a: q.one(), b: q.one(), c: q.one(), e: q.zero(), f: q.one() }
    }

    /// The values making the rescaled contactization admit a lattice, over Q(√(k²−4)).
    pub fn lattice(k: i64) -> Result<Self, CatalogError> {
        let al = alpha(k)?;
        let w = al.field();
        let kk = w.from_int(k);
        let ell = kk.clone() * (kk.clone() * kk.clone() - w.from_int(2)) - (kk.clone() * kk - w.one()) * al.clone();
        let a2m1 = al.clone() * al.clone() - w.one();
        let inv_alpha = al.inv()?;
        let f = -(a2m1.pow(3)? * ell).inv()?;
        Ok(BgParams { a: w.one(), b: inv_alpha.clone(), c: inv_alpha, e: w.zero(), f })
    }

    fn field(&self) -> Result<FieldSpec, CatalogError> {
        let all = [&self.a, &self.b, &self.c, &self.e, &self.f];
        let mut field = FieldSpec::Rationals;
        for x in all {
            if !x.is_rational() {
                let fx = x.field();
                if field != FieldSpec::Rationals && field != fx {
                    return Err(CatalogError::WrongField(format!("{field} and {fx}")));
                }
                field = fx;
            }
        }
        Ok(field)
    }
}

#[derive(Clone, Debug)]
pub struct ExampleBg {
    pub params: BgParams,
    pub symplectic: SymplecticStructure,
    pub contact: ContactStructure,
}

pub const BG_NAMES: [&str; 8] = ["w1", "w2", "x1", "y1", "z1", "x2", "y2", "z2"];

fn bg_build(p: &BgParams, field: &FieldSpec, scale: Scalar) -> Result<ExampleBg, CatalogError> {
    for (name, x) in [("a", &p.a), ("b", &p.b), ("c", &p.c), ("f", &p.f)] {
        if x.is_zero() {
            return Err(CatalogError::ZeroParameter(name));
        }
    }
    let mv = |x: &Scalar| -> Scalar {
        if &x.field() == field {
            x.clone()
        } else {
            field.embed(x.to_rational().expect("checked by field()"))
        }
    };
    let one = field.one();
    let i = |n: i64| field.from_int(n) * scale.clone();
    // w1 w2 x1 y1 z1 x2 y2 z2
    let entries = vec![
        entry(2, 3, vec![(4, one.clone())]),
        entry(5, 6, vec![(7, one)]),
        entry(0, 2, vec![(2, i(1))]),
        entry(0, 3, vec![(3, i(-2))]),
        entry(0, 4, vec![(4, i(-1))]),
        entry(0, 5, vec![(5, i(-1))]),
        entry(0, 6, vec![(6, i(2))]),
        entry(0, 7, vec![(7, i(1))]),
    ];
    let h = LieAlgebra::new(field, names(&BG_NAMES), entries)?;
    let mono = |a: usize, b: usize, c: &Scalar| KForm::monomial(field, 8, &[a, b], mv(c));
    let omega = mono(0, 1, &p.a).add(&mono(2, 4, &p.b)).add(&mono(5, 7, &p.c)).add(&mono(2, 5, &p.e)).add(&mono(3, 6, &p.f));
    let symplectic = verify_symplectic(&h, &omega)?;
    let contact = contactize(&symplectic);
    Ok(ExampleBg { params: p.clone(), symplectic, contact })
}

pub fn example_bg(p: &BgParams) -> Result<ExampleBg, CatalogError> {
    let field = p.field()?;
    bg_build(p, &field, field.one())
}

/// The isomorphic copy with w₁ ↦ t·w₁, over Q(t); parameters must be rational.
pub fn example_bg_scaled(p: &BgParams) -> Result<ExampleBg, CatalogError> {
    if p.field()? != FieldSpec::Rationals {
        return Err(CatalogError::WrongField("the rescaled variant needs rational parameters".into()));
    }
    let field = FieldSpec::rational_functions(&["t"])?;
    let t = field.var("t").expect("declared");
    bg_build(p, &field, t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeId {
    Sec41(Vec<i64>),
    Sec42 { k: i64, m: usize },
    Sec43(i64),
}

impl fmt::Display for LatticeId {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeId::Sec41(ks) => {
                write!(out, "lattice-sec41")?;
                for k in ks {
                    write!(out, "-{k}")?;
                }
                Ok(())
            }
            LatticeId::Sec42 { k, m } => write!(out, "lattice-sec42-{k}-{m}"),
            LatticeId::Sec43(k) => write!(out, "lattice-sec43-{k}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LatticeFixture {
    pub id: LatticeId,
    pub algebra: LieAlgebra,
    /// Ordered basis of the nilpotent ideal, in the algebra's coordinates.
    pub ideal: Vec<Vector>,
    pub spec: DerivationBlockSpec,
    /// Columns are the candidate rational basis in ideal coordinates.
    pub candidate: Matrix,
    /// The integer matrix as displayed for this construction.
    pub displayed_exp: Matrix,
}

impl LatticeFixture {
    pub fn check(&self) -> Result<LatticeCertificate, LatticeError> {
        let mut cert = lattice_check(&self.algebra, &self.ideal, &self.spec, &self.candidate)?;
        cert.algebra_id = self.id.to_string();
        Ok(cert)
    }
}

fn m2(f: &FieldSpec, a: i64, b: i64, c: i64, d: i64) -> Matrix {
    Matrix::from_ints(f, &[&[a, b], &[c, d]])
}

/// Companion matrix of a monic polynomial given by coefficients low to high (leading 1 omitted).
pub fn companion(f: &FieldSpec, coeffs: &[Scalar]) -> Matrix {
    let n = coeffs.len();
    let mut m = Matrix::zeros(f, n, n);
    for i in 1..n {
        m.set(i, i - 1, f.one());
    }
    for (i, c) in coeffs.iter().enumerate() {
        m.set(i, n - 1, -c.clone());
    }
    m
}

/// (x² − kx + 1)^m, coefficients low to high, leading coefficient dropped.
fn q_poly(f: &FieldSpec, k: i64, m: usize) -> Vec<Scalar> {
    let base = [f.one(), f.from_int(-k), f.one()];
    let mut p = vec![f.one()];
    for _ in 0..m {
        let mut next = vec![f.zero(); p.len() + 2];
        for (i, a) in p.iter().enumerate() {
            for (j, b) in base.iter().enumerate() {
                next[i + j] = next[i + j].clone() + a.clone() * b.clone();
            }
        }
        p = next;
    }
    p.pop();
    p
}

fn unit_vec(f: &FieldSpec, n: usize, i: usize) -> Vector {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

pub fn lattice_fixture(id: &LatticeId) -> Result<LatticeFixture, CatalogError> {
    let nil2 = Block::Nilpotent(m2(&FieldSpec::Rationals, 0, 1, 0, 0));
    match id {
        LatticeId::Sec41(ks) => {
            let k = *ks.first().ok_or(CatalogError::EmptyKList)?;
            if ks.iter().any(|&x| x != k) {
                return Err(CatalogError::UnequalK);
            }
            let ex = example_41(ks, Relation::AllEqual)?;
            let g = ex.contact.algebra.clone();
            let m = ks.len();
            let gd = g.dim();
            // g: xi f1 f2 u1..um v1..vm
            let mut order = vec![0, 2];
            for i in 1..=m {
                order.push(2 + i);
                order.push(2 + m + i);
            }
            let ideal: Vec<Vector> = order.iter().map(|&i| g.unit(i)).collect();
            let mut blocks = vec![nil2];
            for _ in 0..m {
                blocks.push(Block::scalar(1, 1));
                blocks.push(Block::scalar(-1, 1));
            }
            let spec = DerivationBlockSpec::new(k, blocks)?;
            let (w, _) = alpha_field(k)?;
            let a = alpha(k)?;
            let q = (w.one() - a.clone() * a.clone()).inv()?;
            let dn = gd - 1;
            let mut cols = vec![unit_vec(&w, dn, 0), unit_vec(&w, dn, 1)];
            for i in 0..m {
                let (ui, vi) = (2 + 2 * i, 3 + 2 * i);
                let mut wi = vec![w.zero(); dn];
                wi[ui] = w.one();
                wi[vi] = q.clone() * a.clone();
                let mut wt = vec![w.zero(); dn];
                wt[ui] = a.clone();
                wt[vi] = q.clone();
                cols.push(wi);
                cols.push(wt);
            }
            let candidate = Matrix::from_columns(&w, dn, cols);
            let mut shown = vec![m2(&w, 1, 1, 0, 1)];
            shown.extend(ks.iter().map(|&k| m2(&w, 0, -1, 1, k)));
            Ok(LatticeFixture { id: id.clone(), algebra: g, ideal, spec, candidate, displayed_exp: Matrix::direct_sum(&shown) })
        }
        LatticeId::Sec42 { k, m } => {
            let (k, m) = (*k, *m);
            if m % 2 == 1 {
                return Err(CatalogError::OddM(m));
            }
            let ex = example_42(k, m)?;
            let g = ex.contact.algebra.clone();
            let dn = g.dim() - 1;
            let mut order = vec![0, 2];
            order.extend(3..g.dim());
            let ideal: Vec<Vector> = order.iter().map(|&i| g.unit(i)).collect();
            let q = FieldSpec::Rationals;
            let mut nsub = Matrix::zeros(&q, m, m);
            for i in 1..m {
                nsub.set(i, i - 1, q.one());
            }
            let spec = DerivationBlockSpec::new(k, vec![nil2, Block::Scaled { m: 1, n: nsub.clone() }, Block::Scaled { m: -1, n: nsub }])?;
            let e = exact_exp(&spec);
            let w = e.field().clone();
            let mut wj = vec![w.zero(); dn];
            wj[2] = w.one();
            wj[2 + m] = w.one();
            let mut cols = vec![unit_vec(&w, dn, 0), unit_vec(&w, dn, 1)];
            for _ in 0..2 * m {
                let next = e.apply(&wj);
                cols.push(std::mem::replace(&mut wj, next));
            }
            let candidate = Matrix::from_columns(&w, dn, cols);
            let shown = Matrix::direct_sum(&[m2(&w, 1, 1, 0, 1), companion(&w, &q_poly(&w, k, m))]);
            Ok(LatticeFixture { id: id.clone(), algebra: g, ideal, spec, candidate, displayed_exp: shown })
        }
        LatticeId::Sec43(k) => {
            let k = *k;
            let params = BgParams::lattice(k)?;
            let ex = example_bg(&params)?;
            let g = ex.contact.algebra.clone();
            // g: xi w1 w2 x1 y1 z1 x2 y2 z2; ideal order ξ, w2, x1, x2, y1, y2, z1, z2
            let order = [0, 2, 3, 6, 4, 7, 5, 8];
            let ideal: Vec<Vector> = order.iter().map(|&i| g.unit(i)).collect();
            let blocks = vec![
                nil2,
                Block::scalar(1, 1),
                Block::scalar(-1, 1),
                Block::scalar(-2, 1),
                Block::scalar(2, 1),
                Block::scalar(-1, 1),
                Block::scalar(1, 1),
            ];
            let spec = DerivationBlockSpec::new(k, blocks)?;
            let w = g.field().clone();
            let a = alpha(k)?;
            let kk = w.from_int(k);
            let ell = kk.clone() * (kk.clone() * kk.clone() - w.from_int(2)) - (kk.clone() * kk - w.one()) * a.clone();
            let a2m1 = a.clone() * a.clone() - w.one();
            let coef = [(w.one(), w.one()), (a2m1.clone(), -(a2m1 * ell)), (w.one(), w.one())];
            let mut cols = vec![unit_vec(&w, 8, 0), unit_vec(&w, 8, 1)];
            for (p, (lam, del)) in coef.iter().enumerate() {
                let (i1, i2) = (2 + 2 * p, 3 + 2 * p);
                let mut c1 = vec![w.zero(); 8];
                c1[i1] = lam.clone();
                c1[i2] = del.clone() * a.clone();
                let mut c2 = vec![w.zero(); 8];
                c2[i1] = lam.clone() * a.clone();
                c2[i2] = del.clone();
                cols.push(c1);
                cols.push(c2);
            }
            let candidate = Matrix::from_columns(&w, 8, cols);
            let shown = Matrix::direct_sum(&[m2(&w, 1, 1, 0, 1), m2(&w, k * k + 1, -k, -k, 1), m2(&w, 0, -1, 1, k), m2(&w, -k, 1, 1, 0)]);
            Ok(LatticeFixture { id: id.clone(), algebra: g, ideal, spec, candidate, displayed_exp: shown })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Paper,
    Trivial,
    Derived,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Paper => "paper",
            Provenance::Trivial => "trivial",
            Provenance::Derived => "derived",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// the symplectic algebra 𝔥
    H,
    /// the contact algebra 𝔤
    G,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expectation {
    Betti {
        on: Target,
        k: usize,
        value: usize,
    },
    /// symplectic on H, contact on G
    Lefschetz {
        on: Target,
        s: usize,
        verdict: bool,
    },
    Heisenberg(bool),
    Unimodular {
        on: Target,
        value: bool,
    },
    Frobenius(bool),
    LatticeValid(bool),
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = |on: &Target| if *on == Target::H { "h" } else { "g" };
        match self {
            Expectation::Betti { on, k, value } => write!(f, "b{k}({}) = {value}", t(on)),
            Expectation::Lefschetz { on: Target::H, s, verdict } => write!(f, "symplectic {s}-Lefschetz = {verdict}"),
            Expectation::Lefschetz { on: Target::G, s, verdict } => write!(f, "contact {s}-Lefschetz = {verdict}"),
            Expectation::Heisenberg(v) => write!(f, "heisenberg = {v}"),
            Expectation::Unimodular { on, value } => write!(f, "unimodular({}) = {value}", t(on)),
            Expectation::Frobenius(v) => write!(f, "frobenius = {v}"),
            Expectation::LatticeValid(v) => write!(f, "lattice certificate valid = {v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestItem {
    pub expectation: Expectation,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub item: ManifestItem,
    pub actual: String,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub description: String,
    pub symplectic: Option<SymplecticStructure>,
    pub contact: Option<ContactStructure>,
    pub forms: BTreeMap<String, KForm>,
    pub lattice: Option<LatticeFixture>,
    pub manifest: Vec<ManifestItem>,
}

impl CatalogEntry {
    fn new(id: &str, description: String) -> Self {
        CatalogEntry {
            id: id.to_string(),
            description,
            symplectic: None,
            contact: None,
            forms: BTreeMap::new(),
            lattice: None,
            manifest: Vec::new(),
        }
    }

    fn expect(mut self, provenance: Provenance, expectation: Expectation) -> Self {
        self.manifest.push(ManifestItem { expectation, provenance });
        self
    }

    pub fn algebra(&self, on: Target) -> Option<&LieAlgebra> {
        match on {
            Target::H => self.symplectic.as_ref().map(|s| &s.algebra),
            Target::G => self.contact.as_ref().map(|c| &c.algebra),
        }
    }

    fn evaluate(&self, e: &Expectation) -> Result<String, String> {
        let missing = || "structure not present".to_string();
        let lef_err = |e: LefschetzError| e.to_string();
        match e {
            Expectation::Betti { on, k, .. } => Ok(betti(self.algebra(*on).ok_or_else(missing)?, *k).to_string()),
            Expectation::Lefschetz { on: Target::H, s, .. } => {
                let s_ = self.symplectic.as_ref().ok_or_else(missing)?;
                Ok(symplectic_lefschetz(s_, *s).map_err(lef_err)?.verdict().to_string())
            }
            Expectation::Lefschetz { on: Target::G, s, .. } => {
                let c = self.contact.as_ref().ok_or_else(missing)?;
                Ok(contact_lefschetz(c, *s).map_err(lef_err)?.verdict().to_string())
            }
            Expectation::Heisenberg(_) => Ok(self.algebra(Target::G).ok_or_else(missing)?.is_heisenberg().to_string()),
            Expectation::Unimodular { on, .. } => Ok(self.algebra(*on).ok_or_else(missing)?.is_unimodular().to_string()),
            Expectation::Frobenius(_) => Ok(self.symplectic.as_ref().ok_or_else(missing)?.is_frobenius().to_string()),
            Expectation::LatticeValid(_) => {
                let l = self.lattice.as_ref().ok_or_else(missing)?;
                Ok(l.check().map_err(|e| e.to_string())?.valid().to_string())
            }
        }
    }

    /// Re-derives every manifest value with the engine.
    pub fn run(&self) -> Vec<Outcome> {
        self.manifest
            .iter()
            .map(|item| {
                let expected = match &item.expectation {
                    Expectation::Betti { value, .. } => value.to_string(),
                    Expectation::Lefschetz { verdict, .. } => verdict.to_string(),
                    Expectation::Heisenberg(v)
                    | Expectation::Unimodular { value: v, .. }
                    | Expectation::Frobenius(v)
                    | Expectation::LatticeValid(v) => v.to_string(),
                };
                let (actual, ok) = match self.evaluate(&item.expectation) {
                    Ok(a) => {
                        let ok = a == expected;
                        (a, ok)
                    }
                    Err(e) => (format!("error: {e}"), false),
                };
                Outcome { item: item.clone(), actual, ok }
            })
            .collect()
    }
}

/// Representative ids; parametrized families accept other parameters too.
pub fn list() -> Vec<(&'static str, &'static str)> {
    vec![
        ("heisenberg-3", "Heisenberg algebra h_{2n+1}, contact (heisenberg-<2n+1>)"),
        ("heisenberg-5", "Heisenberg algebra h_5"),
        ("heisenberg-7", "Heisenberg algebra h_7"),
        ("abelian-4", "abelian R^{2n} with the standard form (abelian-<2n>)"),
        ("h3xR", "h3 + R with e1^e3 + e2^e4 and its contactization"),
        ("aff", "aff(R) with the Frobenius form e1^e2"),
        ("sl2", "sl(2,R) with eta = h*"),
        ("sec41-3", "diagonal almost abelian example (sec41-<k1>-<k2>...)"),
        ("sec41-3-4", "diagonal example, independent parameters"),
        ("sec41eq-3-3", "diagonal example, all parameters equal (sec41eq-<k1>-...)"),
        ("sec42-3-2", "Jordan block almost abelian example (sec42-<k>-<m>)"),
        ("bg", "Benson-Gordon 8-dimensional example, unit parameters"),
        ("bg-scaled", "Benson-Gordon example with w1 rescaled by t"),
        ("lattice-sec41-3", "lattice witness for the diagonal example (lattice-sec41-<k>-<k>...)"),
        ("lattice-sec42-3-2", "lattice witness for the Jordan example (lattice-sec42-<k>-<even m>)"),
        ("lattice-sec43-3", "lattice witness for the Benson-Gordon example (lattice-sec43-<k>)"),
    ]
}

fn parse_ints(id: &str, rest: &str) -> Result<Vec<i64>, CatalogError> {
    let unknown = || CatalogError::UnknownId(id.to_string());
    if rest.is_empty() {
        return Err(unknown());
    }
    rest.split('-').map(|p| p.parse::<i64>().map_err(|_| unknown())).collect()
}

fn size(id: &str, x: i64) -> Result<usize, CatalogError> {
    usize::try_from(x).map_err(|_| CatalogError::UnknownId(id.to_string()))
}

pub fn lookup(id: &str) -> Result<CatalogEntry, CatalogError> {
    use Expectation::*;
    use Provenance::*;
    use Target::*;
    let unknown = || CatalogError::UnknownId(id.to_string());
    if let Some(rest) = id.strip_prefix("heisenberg-") {
        let d = size(id, *parse_ints(id, rest)?.first().ok_or_else(unknown)?)?;
        if d < 3 || d % 2 == 0 {
            return Err(unknown());
        }
        let n = (d - 1) / 2;
        let mut e = CatalogEntry::new(id, format!("Heisenberg algebra of dimension {d}"))
            .expect(Trivial, Heisenberg(true))
            .expect(Trivial, Betti { on: G, k: 1, value: 2 * n })
            .expect(Paper, Lefschetz { on: G, s: 1, verdict: true });
        e.contact = Some(heisenberg(n)?);
        return Ok(e);
    }
    if let Some(rest) = id.strip_prefix("abelian-") {
        let d = size(id, *parse_ints(id, rest)?.first().ok_or_else(unknown)?)?;
        if d < 2 || d % 2 == 1 {
            return Err(unknown());
        }
        let s = abelian_standard(d / 2)?;
        let mut e = CatalogEntry::new(id, format!("abelian algebra of dimension {d}"))
            .expect(Trivial, Lefschetz { on: H, s: d / 2, verdict: true })
            .expect(Trivial, Betti { on: H, k: 1, value: d })
            .expect(Paper, Lefschetz { on: G, s: 1, verdict: true })
            .expect(Trivial, Heisenberg(true));
        e.contact = Some(contactize(&s));
        e.symplectic = Some(s);
        return Ok(e);
    }
    if let Some(rest) =
        id.strip_prefix("sec41eq-").map(|r| (r, Relation::AllEqual)).or(id.strip_prefix("sec41-").map(|r| (r, Relation::Independent)))
    {
        let (rest, relation) = rest;
        let ks = parse_ints(id, rest)?;
        let ex = example_41(&ks, relation)?;
        let n = ex.n();
        let distinct = ks.iter().collect::<std::collections::BTreeSet<_>>().len();
        let mut e = CatalogEntry::new(id, format!("diagonal almost abelian example, k = {ks:?}, {relation:?}"))
            .expect(Paper, Lefschetz { on: H, s: 1, verdict: true })
            .expect(Paper, Lefschetz { on: G, s: 1, verdict: true })
            .expect(Trivial, Unimodular { on: G, value: true });
        if relation == Relation::Independent && distinct == ks.len() {
            e = e
                .expect(Paper, Betti { on: G, k: 2, value: n - 1 })
                .expect(Paper, Betti { on: G, k: 2 * n - 1, value: n - 1 })
                .expect(Paper, Lefschetz { on: G, s: 2, verdict: true });
        } else {
            // θ_{i|j} add m(m−1) classes when all parameters coincide
            let m = ks.len();
            e = e
                .expect(Derived, Betti { on: G, k: 2, value: n - 1 + m * (m - 1) })
                .expect(Derived, Betti { on: G, k: 2 * n - 1, value: n - 1 + m * (m - 1) })
                .expect(Paper, Lefschetz { on: G, s: 2, verdict: true });
        }
        e.forms = ex.forms;
        e.symplectic = Some(ex.symplectic);
        e.contact = Some(ex.contact);
        return Ok(e);
    }
    if let Some(rest) = id.strip_prefix("sec42-") {
        let v = parse_ints(id, rest)?;
        let [k, m] = v[..] else { return Err(unknown()) };
        let ex = example_42(k, size(id, m)?)?;
        let mut e = CatalogEntry::new(id, format!("Jordan block almost abelian example, k = {k}, m = {m}"))
            .expect(Paper, Lefschetz { on: H, s: 1, verdict: true })
            .expect(Paper, Lefschetz { on: H, s: 2, verdict: false })
            .expect(Paper, Lefschetz { on: G, s: 1, verdict: true })
            .expect(Paper, Lefschetz { on: G, s: 2, verdict: false });
        e.symplectic = Some(ex.symplectic);
        e.contact = Some(ex.contact);
        return Ok(e);
    }
    if let Some(rest) = id.strip_prefix("lattice-") {
        let lid = if let Some(r) = rest.strip_prefix("sec41-") {
            LatticeId::Sec41(parse_ints(id, r)?)
        } else if let Some(r) = rest.strip_prefix("sec42-") {
            let v = parse_ints(id, r)?;
            let [k, m] = v[..] else { return Err(unknown()) };
            LatticeId::Sec42 { k, m: size(id, m)? }
        } else if let Some(r) = rest.strip_prefix("sec43-") {
            let v = parse_ints(id, r)?;
            let [k] = v[..] else { return Err(unknown()) };
            LatticeId::Sec43(k)
        } else {
            return Err(unknown());
        };
        let fx = lattice_fixture(&lid)?;
        let mut e = CatalogEntry::new(id, format!("lattice witness {lid}")).expect(Paper, LatticeValid(true));
        e.contact = Some(verify_contact(&fx.algebra, &KForm::basis(fx.algebra.field(), fx.algebra.dim(), &[0]))?);
        e.lattice = Some(fx);
        return Ok(e);
    }
    let mut e = match id {
        "h3xR" => {
            let s = h3_plus_r();
            let mut e = CatalogEntry::new(id, "h3 + R with e1^e3 + e2^e4".into())
                .expect(Trivial, Betti { on: H, k: 1, value: 3 })
                .expect(Paper, Lefschetz { on: H, s: 1, verdict: false })
                .expect(Paper, Lefschetz { on: G, s: 1, verdict: false })
                .expect(Trivial, Heisenberg(false));
            e.contact = Some(contactize(&s));
            e.symplectic = Some(s);
            e
        }
        "aff" => {
            let mut e = CatalogEntry::new(id, "aff(R) with the Frobenius form e1^e2".into())
                .expect(Paper, Frobenius(true))
                .expect(Paper, Unimodular { on: H, value: false })
                .expect(Trivial, Betti { on: H, k: 2, value: 0 });
            e.symplectic = Some(aff());
            e
        }
        "sl2" => {
            let mut e = CatalogEntry::new(id, "sl(2,R) with eta = h*".into())
                .expect(Trivial, Unimodular { on: G, value: true })
                .expect(Trivial, Betti { on: G, k: 1, value: 0 })
                .expect(Trivial, Betti { on: G, k: 3, value: 1 });
            e.contact = Some(sl2());
            e
        }
        "bg" | "bg-scaled" => {
            let p = BgParams::unit();
            let ex = if id == "bg" { example_bg(&p)? } else { example_bg_scaled(&p)? };
            let mut e = CatalogEntry::new(id, "Benson-Gordon example, a = b = c = f = 1, e = 0".into())
                .expect(Paper, Betti { on: H, k: 1, value: 2 })
                .expect(Paper, Betti { on: H, k: 2, value: 5 })
                .expect(Paper, Lefschetz { on: H, s: 1, verdict: true })
                .expect(Paper, Lefschetz { on: H, s: 2, verdict: false })
                .expect(Paper, Lefschetz { on: G, s: 1, verdict: true })
                .expect(Paper, Lefschetz { on: G, s: 2, verdict: false });
            e.symplectic = Some(ex.symplectic);
            e.contact = Some(ex.contact);
            e
        }
        _ => return Err(unknown()),
    };
    e.id = id.to_string();
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::cohomology;
    use crate::linalg::Subspace;

    #[test]
    fn heisenberg_shapes() {
        for n in 1..=3 {
            let c = heisenberg(n).unwrap();
            assert_eq!(c.algebra.dim(), 2 * n + 1);
            assert!(c.algebra.is_heisenberg());
            assert_eq!(c.xi, c.algebra.unit(0));
        }
        assert!(heisenberg(0).is_err());
    }

    #[test]
    fn small_fixtures() {
        assert!(aff().is_frobenius());
        assert!(!h3_plus_r().is_frobenius());
        assert!(sl2().algebra.center().is_zero());
        assert!(euclidean2().is_solvable());
    }

    #[test]
    fn example_41_shapes_and_identities() {
        let ex = example_41(&[3, 4], Relation::Independent).unwrap();
        assert_eq!(ex.contact.algebra.dim(), 7);
        assert_eq!(ex.symplectic.algebra.field().vars(), &["t3".to_string(), "t4".to_string()]);
        let h = &ex.symplectic.algebra;
        let n = ex.n();
        let f = h.field().clone();
        // γ₁ = (σ₁ − Σ σ_l)/n
        let mut s = ex.sigma(1).clone();
        for l in 2..=n {
            s = s.sub(ex.sigma(l));
        }
        assert_eq!(s.scale(&f.from_ratio(1, n as i64)), *ex.gamma(1));
        // L^{n−2} γ_i = (n−2)! Σ_{j≠i} γ̄_j and L^{n−2} σ_k = −(n−2)! σ̄_k
        let fact: i64 = (1..=(n as i64 - 2)).product();
        let ln2 = ex.symplectic.omega.wedge_power(n - 2).unwrap();
        for i in 1..=n {
            let mut sum = KForm::zero(&f, h.dim(), 2 * n - 2);
            for j in (1..=n).filter(|&j| j != i) {
                sum = sum.add(ex.gamma_bar(j));
            }
            assert_eq!(ln2.w(ex.gamma(i)), sum.scale(&f.from_int(fact)));
        }
        for k in 2..=n {
            assert_eq!(ln2.w(ex.sigma(k)), ex.sigma_bar(k).scale(&f.from_int(-fact)));
        }
        for g in (1..=n).map(|l| ex.gamma(l)) {
            assert!(h.d(g).is_zero());
        }
        assert_eq!(ex.forms.keys().filter(|k| k.starts_with("theta_")).count(), 2);
    }

    #[test]
    fn sigma_bars_span_gamma_bars() {
        let spans = |ex: &Example41| {
            let f = ex.symplectic.algebra.field();
            let sb: Vec<_> = (1..=ex.n()).map(|l| ex.sigma_bar(l).coords()).collect();
            let gb: Vec<_> = (1..=ex.n()).map(|l| ex.gamma_bar(l).coords()).collect();
            let d = sb[0].len();
            (Subspace::span(f, d, sb), Subspace::span(f, d, gb))
        };
        let (s, g) = spans(&example_41(&[3, 5], Relation::Independent).unwrap());
        assert_eq!(s, g);
        // even n: σ̄₁ = −Σ_{l≥2} (−1)^l σ̄_l
        let ex = example_41(&[3, 5, 7], Relation::Independent).unwrap();
        let (s, g) = spans(&ex);
        assert_eq!((s.dim(), g.dim()), (3, 4));
        let n = ex.n();
        let h = &ex.symplectic.algebra;
        let f = h.field();
        // σ₂∧…∧σ_n = γ̄₁ − Σ_{l≥2} γ̄_l, which is σ̄₁ only when n = 2
        let prod = ex.w().iter().fold(KForm::unit(f, h.dim()), |acc, s| acc.w(s));
        let mut expected = ex.gamma_bar(1).clone();
        for l in 2..=n {
            expected = expected.sub(ex.gamma_bar(l));
        }
        assert_eq!(prod, expected);
        let small = example_41(&[3], Relation::Independent).unwrap();
        assert_eq!(small.w()[0], *small.sigma_bar(1));
    }

    #[test]
    fn example_42_and_bg_build() {
        let ex = example_42(3, 2).unwrap();
        assert_eq!(ex.symplectic.algebra.dim(), 6);
        assert!(example_42(3, 1).is_err());
        let bg = example_bg(&BgParams::unit()).unwrap();
        assert_eq!(bg.symplectic.algebra.dim(), 8);
        assert_eq!(bg.contact.algebra.dim(), 9);
        assert_eq!(bg.symplectic.algebra.center(), Subspace::coordinate(&FieldSpec::Rationals, 8, &[1]));
        let mut p = BgParams::unit();
        p.f = FieldSpec::Rationals.zero();
        assert_eq!(example_bg(&p).unwrap_err(), CatalogError::ZeroParameter("f"));
        let scaled = example_bg_scaled(&BgParams::unit()).unwrap();
        assert_eq!(cohomology(&scaled.symplectic.algebra, 2).unwrap().betti, 5);
    }

    #[test]
    fn lattice_fixtures_certify() {
        for id in [
            LatticeId::Sec41(vec![3]),
            LatticeId::Sec41(vec![4, 4]),
            LatticeId::Sec42 { k: 3, m: 2 },
            LatticeId::Sec43(3),
            LatticeId::Sec43(4),
        ] {
            let fx = lattice_fixture(&id).unwrap();
            let cert = fx.check().unwrap();
            assert!(cert.valid(), "{id}: {:?}", cert.offending);
            assert!(cert.derivation_consistent, "{id}");
        }
        assert_eq!(lattice_fixture(&LatticeId::Sec42 { k: 3, m: 3 }).unwrap_err(), CatalogError::OddM(3));
        assert_eq!(lattice_fixture(&LatticeId::Sec41(vec![3, 4])).unwrap_err(), CatalogError::UnequalK);
    }

    #[test]
    fn lattice_matrices() {
        let fx = lattice_fixture(&LatticeId::Sec41(vec![3])).unwrap();
        assert_eq!(fx.check().unwrap().exp_matrix, fx.displayed_exp);
        let fx = lattice_fixture(&LatticeId::Sec42 { k: 3, m: 2 }).unwrap();
        assert_eq!(fx.check().unwrap().exp_matrix, fx.displayed_exp);
        // M ⊕ M^{-2} ⊕ M^{-1} with M = [[0, −1], [1, k]]
        for k in [3, 4, 5] {
            let fx = lattice_fixture(&LatticeId::Sec43(k)).unwrap();
            let w = fx.algebra.field().clone();
            let m = m2(&w, 0, -1, 1, k);
            let mi = m.inverse().unwrap();
            let expected = Matrix::direct_sum(&[m2(&w, 1, 1, 0, 1), m.clone(), mi.mul(&mi), mi]);
            assert_eq!(fx.check().unwrap().exp_matrix, expected);
        }
    }

    #[test]
    fn registry() {
        for (id, _) in list() {
            let e = lookup(id).unwrap();
            assert_eq!(e.id, id);
            assert!(!e.manifest.is_empty());
        }
        assert_eq!(lookup("nope").unwrap_err(), CatalogError::UnknownId("nope".into()));
        assert!(lookup("heisenberg-4").is_err());
    }
}
