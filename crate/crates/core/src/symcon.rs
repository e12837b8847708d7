//! Symplectic and contact structures, contactization and its inverse, and the
//! Benson–Gordon checks for a supplied abelian complement.

use thiserror::Error;

use crate::cohomology::{betti, is_exact, CohomologyError};
use crate::exterior::KForm;
use crate::field::Scalar;
use crate::liealg::{BracketEntry, LieAlgebra, LieError};
use crate::linalg::{Matrix, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymconError {
    #[error("symplectic forms need an even-dimensional algebra, got dimension {0}")]
    OddDimension(usize),
    #[error("contact forms need an odd-dimensional algebra, got dimension {0}")]
    EvenDimension(usize),
    #[error("form is not closed; its differential is {0}")]
    NotClosed(String),
    #[error("form is degenerate: its top power vanishes")]
    Degenerate,
    #[error("eta ∧ (d eta)^n vanishes")]
    NotContact,
    #[error("expected a {expected}-form, got degree {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("the center is trivial, so there is no symplectic quotient")]
    TrivialCenter,
    #[error("candidate complement has dimension {got}, but b1 = {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticStructure {
    pub algebra: LieAlgebra,
    pub omega: KForm,
    pub n: usize,
    /// Some primitive γ with dγ = ω when ω is exact.
    pub primitive: Option<KForm>,
}

impl SymplecticStructure {
    pub fn is_frobenius(&self) -> bool {
        self.primitive.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactStructure {
    pub algebra: LieAlgebra,
    pub eta: KForm,
    pub xi: Vector,
    pub n: usize,
}

/// ω(x, y) for a 2-form.
pub fn eval2(form: &KForm, x: &[Scalar], y: &[Scalar]) -> Scalar {
    let r = form.contract(x).and_then(|f| f.contract(y)).expect("2-form");
    r.coeff(&[])
}

/// Gram matrix of a 2-form on a list of vectors.
pub fn gram(form: &KForm, vs: &[Vector]) -> Matrix {
    let rows = vs.iter().map(|x| vs.iter().map(|y| eval2(form, x, y)).collect()).collect();
    Matrix::from_rows(form.field(), rows)
}

pub fn verify_symplectic(h: &LieAlgebra, omega: &KForm) -> Result<SymplecticStructure, SymconError> {
    let dim = h.dim();
    if dim % 2 == 1 {
        return Err(SymconError::OddDimension(dim));
    }
    if omega.degree() != 2 && !omega.is_zero() {
        return Err(SymconError::WrongDegree { expected: 2, got: omega.degree() });
    }
    let d = h.try_d(omega)?;
    if !d.is_zero() {
        return Err(SymconError::NotClosed(d.render(h.names())));
    }
    let n = dim / 2;
    if omega.wedge_power(n).expect("same dimension").is_zero() {
        return Err(SymconError::Degenerate);
    }
    let primitive = is_exact(h, omega)?;
    Ok(SymplecticStructure { algebra: h.clone(), omega: omega.clone(), n, primitive })
}

pub fn verify_contact(g: &LieAlgebra, eta: &KForm) -> Result<ContactStructure, SymconError> {
    let dim = g.dim();
    if dim.is_multiple_of(2) {
        return Err(SymconError::EvenDimension(dim));
    }
    if eta.degree() != 1 {
        return Err(SymconError::WrongDegree { expected: 1, got: eta.degree() });
    }
    let n = dim / 2;
    let deta = g.try_d(eta)?;
    let vol = eta.w(&deta.wedge_power(n).expect("same dimension"));
    if vol.is_zero() {
        return Err(SymconError::NotContact);
    }
    // ι_ξ η = 1 and (ι_ξ dη)_l = Σ_i ξ_i dη(e_i, e_l) = 0
    let units: Vec<Vector> = (0..dim).map(|i| g.unit(i)).collect();
    let a = gram(&deta, &units);
    let mut rows = vec![eta.coords()];
    rows.extend(a.transpose().row_vecs());
    let mut rhs = vec![g.field().zero(); dim + 1];
    rhs[0] = g.field().one();
    let xi = Matrix::from_rows(g.field(), rows).solve(&rhs).expect("contact forms have a Reeb vector");
    Ok(ContactStructure { algebra: g.clone(), eta: eta.clone(), xi, n })
}

fn xi_name(names: &[String]) -> String {
    let mut name = "xi".to_string();
    while names.contains(&name) {
        name.push('_');
    }
    name
}

/// Central extension by ω, with ξ as basis vector 0 and η its dual.
pub fn contactize(s: &SymplecticStructure) -> ContactStructure {
    let h = &s.algebra;
    let f = h.field();
    let dim = h.dim();
    let mut entries = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let mut terms: Vec<(usize, Scalar)> = Vec::new();
            let w = s.omega.coeff(&[i, j]);
            if !w.is_zero() {
                terms.push((0, w));
            }
            for (k, c) in h.bracket(i, j).into_iter().enumerate() {
                if !c.is_zero() {
                    terms.push((k + 1, c));
                }
            }
            if !terms.is_empty() {
                entries.push(BracketEntry::new(i + 1, j + 1, terms));
            }
        }
    }
    let mut names = vec![xi_name(h.names())];
    names.extend(h.names().iter().cloned());
    let g = LieAlgebra::new(f, names, entries).expect("closed forms give central extensions");
    let eta = KForm::basis(f, dim + 1, &[0]);
    verify_contact(&g, &eta).expect("contactization of a symplectic form is contact")
}

#[derive(Clone, Debug)]
pub struct Decontactization {
    pub structure: SymplecticStructure,
    /// Columns: ξ followed by the chosen basis of ker η, in the original coordinates.
    /// `contactize(structure)` equals the input algebra written in this basis.
    pub iso: Matrix,
}

pub fn decontactize(c: &ContactStructure) -> Result<Decontactization, SymconError> {
    let g = &c.algebra;
    let f = g.field();
    if g.center().is_zero() {
        return Err(SymconError::TrivialCenter);
    }
    let dim = g.dim();
    let eta_row = Matrix::from_rows(f, vec![c.eta.coords()]);
    let kernel = eta_row.kernel();
    let free: Vec<usize> =
        kernel.iter().map(|v| v.iter().zip(&c.eta.coords()).position(|(x, e)| x.is_one() && e.is_zero()).unwrap_or(0)).collect();
    let k = kernel.len();
    let kmat = Matrix::from_columns(f, dim, kernel.clone());
    let eta_of = |v: &[Scalar]| -> Scalar { c.eta.coords().iter().zip(v).fold(f.zero(), |acc, (a, b)| acc + a * b) };
    let mut entries = Vec::new();
    let mut omega = KForm::zero(f, k, 2);
    for i in 0..k {
        for j in i + 1..k {
            let v = g.bracket_vec(&kernel[i], &kernel[j]);
            let e = eta_of(&v);
            let proj: Vector = v.iter().zip(&c.xi).map(|(x, xi)| x - &(&e * xi)).collect();
            let coords = kmat.solve(&proj).expect("projection lies in ker eta");
            let terms: Vec<(usize, Scalar)> = coords.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
            if !terms.is_empty() {
                entries.push(BracketEntry::new(i, j, terms));
            }
            if !e.is_zero() {
                omega = omega.add(&KForm::monomial(f, k, &[i, j], e));
            }
        }
    }
    let names = free.iter().map(|&i| g.names()[i].clone()).collect();
    let h = LieAlgebra::new(f, names, entries)?;
    let structure = verify_symplectic(&h, &omega)?;
    let mut cols = vec![c.xi.clone()];
    cols.extend(kernel);
    let iso = Matrix::from_columns(f, dim, cols);
    Ok(Decontactization { structure, iso })
}

/// Lifts a form on 𝔥 to the contactization (indices shift by one).
pub fn lift(form: &KForm) -> KForm {
    let map: Vec<usize> = (1..=form.dim()).collect();
    form.reindex(form.dim() + 1, &map)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BgReport {
    /// (i) 𝔞 is abelian and complements 𝔫 = [𝔥, 𝔥]
    pub abelian_complement: bool,
    /// (ii) 𝔞 and 𝔫 are even-dimensional
    pub even_dimensions: bool,
    /// (iii) 𝔷(𝔥) ∩ 𝔫 = 0
    pub center_meets_commutator_trivially: bool,
    /// (iv) ω + dγ splits as ω_𝔞 + ω_𝔫 with nondegenerate parts
    pub split_representative: bool,
    /// (v) the nonzero parts are closed and not exact
    pub parts_closed_nonexact: bool,
    /// (vi) ad(𝔞) preserves ω_𝔫
    pub ad_invariant: bool,
    /// correction γ used for (iv)
    pub correction: Option<KForm>,
    /// mixed part of ω on 𝔞 × 𝔫 when no correction exists
    pub obstruction: Option<KForm>,
    pub omega_a: Option<KForm>,
    pub omega_n: Option<KForm>,
}

impl BgReport {
    pub fn flags(&self) -> [bool; 6] {
        [
            self.abelian_complement,
            self.even_dimensions,
            self.center_meets_commutator_trivially,
            self.split_representative,
            self.parts_closed_nonexact,
            self.ad_invariant,
        ]
    }

    pub fn all_pass(&self) -> bool {
        self.flags().iter().all(|&b| b)
    }
}

pub fn verify_bg_conditions(s: &SymplecticStructure, a: &Subspace) -> Result<BgReport, SymconError> {
    let h = &s.algebra;
    let f = h.field();
    let dim = h.dim();
    let b1 = betti(h, 1);
    if a.dim() != b1 {
        return Err(SymconError::DimensionMismatch { expected: b1, got: a.dim() });
    }
    let nsub = h.commutator();
    let abelian = h.bracket_spaces(a, a).is_zero();
    let complement = a.intersection(&nsub).is_zero() && a.dim() + nsub.dim() == dim;
    let even = a.dim().is_multiple_of(2) && nsub.dim().is_multiple_of(2);
    let center_ok = h.center().intersection(&nsub).is_zero();
    let mut report = BgReport {
        abelian_complement: abelian && complement,
        even_dimensions: even,
        center_meets_commutator_trivially: center_ok,
        split_representative: false,
        parts_closed_nonexact: false,
        ad_invariant: false,
        correction: None,
        obstruction: None,
        omega_a: None,
        omega_n: None,
    };
    if !complement {
        return Ok(report);
    }
    let av = a.basis().to_vec();
    let nv = nsub.basis().to_vec();

    // mixed part of ω + dγ is linear in γ; solve for it to vanish
    let mixed = |form: &KForm| -> Vector { av.iter().flat_map(|x| nv.iter().map(move |y| eval2(form, x, y))).collect() };
    let target: Vector = mixed(&s.omega).iter().map(|x| -x).collect();
    let correction = if target.iter().all(Scalar::is_zero) {
        Some(KForm::zero(f, dim, 1))
    } else {
        let cols: Vec<Vector> = (0..dim).map(|l| mixed(&h.d(&KForm::basis(f, dim, &[l])))).collect();
        let m = Matrix::from_columns(f, target.len(), cols);
        m.solve(&target).map(|x| KForm::one_form(f, &x))
    };
    let Some(gamma) = correction else {
        // report the mixed part itself, written against the dual splitting
        let p = Matrix::from_columns(f, dim, av.iter().chain(&nv).cloned().collect());
        let pinv = p.inverse().expect("complementary bases");
        let mut obs = KForm::zero(f, dim, 2);
        for (i, x) in av.iter().enumerate() {
            for (j, y) in nv.iter().enumerate() {
                let w = eval2(&s.omega, x, y);
                if w.is_zero() {
                    continue;
                }
                let ai = KForm::one_form(f, &pinv.row(i));
                let bj = KForm::one_form(f, &pinv.row(av.len() + j));
                obs = obs.add(&ai.w(&bj).scale(&w));
            }
        }
        report.obstruction = Some(obs);
        return Ok(report);
    };
    let om = s.omega.add(&h.d(&gamma));
    let p = Matrix::from_columns(f, dim, av.iter().chain(&nv).cloned().collect());
    let pinv = p.inverse().expect("complementary bases");
    let block = |keep_a: bool| {
        let mut d = Matrix::zeros(f, dim, dim);
        for i in 0..dim {
            if (i < av.len()) == keep_a {
                d.set(i, i, f.one());
            }
        }
        p.mul(&d).mul(&pinv)
    };
    let omega_a = om.pullback(&block(true));
    let omega_n = om.pullback(&block(false));
    let nondeg = |form: &KForm, vs: &[Vector]| gram(form, vs).rank() == vs.len();
    report.split_representative = nondeg(&omega_a, &av) && nondeg(&omega_n, &nv);
    let good = |form: &KForm, part_dim: usize| -> Result<bool, SymconError> {
        if part_dim == 0 {
            return Ok(true);
        }
        if !h.d(form).is_zero() {
            return Ok(false);
        }
        Ok(is_exact(h, form)?.is_none())
    };
    report.parts_closed_nonexact = good(&omega_a, av.len())? && good(&omega_n, nv.len())?;
    report.ad_invariant = av.iter().all(|x| {
        nv.iter().all(|y| {
            nv.iter().all(|z| {
                let lhs = eval2(&omega_n, &h.bracket_vec(x, y), z);
                let rhs = eval2(&omega_n, y, &h.bracket_vec(x, z));
                (&lhs + &rhs).is_zero()
            })
        })
    });
    report.correction = Some(gamma);
    report.omega_a = Some(omega_a);
    report.omega_n = Some(omega_n);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn std_abelian(n: usize) -> SymplecticStructure {
        let h = LieAlgebra::abelian(&q(), 2 * n);
        let mut om = KForm::zero(&q(), 2 * n, 2);
        for i in 0..n {
            om = om.add(&KForm::basis(&q(), 2 * n, &[2 * i, 2 * i + 1]));
        }
        verify_symplectic(&h, &om).unwrap()
    }

    #[test]
    fn abelian_standard_form() {
        let s = std_abelian(2);
        assert!(!s.is_frobenius());
    }

    #[test]
    fn affine_line_is_frobenius() {
        let h = LieAlgebra::from_text(&q(), &["e1", "e2"], &[(0, 1, &[(1, "1")])]).unwrap();
        let s = verify_symplectic(&h, &h.form("e1^e2")).unwrap();
        assert!(s.is_frobenius());
        // ω = −d e²
        assert_eq!(h.d(&h.form("-e2")), s.omega);
    }

    #[test]
    fn symplectic_errors() {
        let h3 = LieAlgebra::from_text(&q(), &["e1", "e2", "e3"], &[(0, 1, &[(2, "1")])]).unwrap();
        assert_eq!(verify_symplectic(&h3, &h3.form("e1^e2")).unwrap_err(), SymconError::OddDimension(3));
        let h = LieAlgebra::from_text(&q(), &["e1", "e2", "e3", "e4"], &[(0, 1, &[(2, "1")])]).unwrap();
        assert!(matches!(verify_symplectic(&h, &h.form("e3^e4")), Err(SymconError::NotClosed(_))));
        assert_eq!(verify_symplectic(&h, &h.form("e1^e2")).unwrap_err(), SymconError::Degenerate);
    }

    #[test]
    fn heisenberg_reeb_vector() {
        let g = LieAlgebra::from_text(&q(), &["e1", "e2", "e3"], &[(0, 1, &[(2, "1")])]).unwrap();
        let c = verify_contact(&g, &g.form("e3")).unwrap();
        assert_eq!(c.xi, g.unit(2));
        let ab = LieAlgebra::abelian(&q(), 3);
        assert_eq!(verify_contact(&ab, &ab.form("e1")).unwrap_err(), SymconError::NotContact);
    }

    #[test]
    fn contactize_abelian_gives_heisenberg() {
        let c = contactize(&std_abelian(2));
        assert!(c.algebra.is_heisenberg());
        assert_eq!(c.algebra.center(), Subspace::coordinate(&q(), 5, &[0]));
        let back = decontactize(&c).unwrap();
        assert_eq!(back.structure, std_abelian(2));
        assert_eq!(back.iso, Matrix::identity(&q(), 5));
    }

    #[test]
    fn sl2_has_trivial_center() {
        let g = LieAlgebra::from_text(&q(), &["h", "e", "f"], &[(0, 1, &[(1, "2")]), (0, 2, &[(2, "-2")]), (1, 2, &[(0, "1")])]).unwrap();
        let c = verify_contact(&g, &g.form("h")).unwrap();
        assert_eq!(decontactize(&c).unwrap_err(), SymconError::TrivialCenter);
    }

    #[test]
    fn decontactize_general_basis() {
        // h3 with η = e3 + e1: Reeb vector is still e3 and the quotient is R² with a symplectic form
        let g = LieAlgebra::from_text(&q(), &["e1", "e2", "e3"], &[(0, 1, &[(2, "1")])]).unwrap();
        let c = verify_contact(&g, &g.form("e1 + e3")).unwrap();
        let d = decontactize(&c).unwrap();
        let again = contactize(&d.structure);
        let names = again.algebra.names().to_vec();
        assert_eq!(g.change_basis(&d.iso, names).unwrap(), again.algebra);
    }

    #[test]
    fn bg_on_abelian_and_nilpotent() {
        let s = std_abelian(2);
        let r = verify_bg_conditions(&s, &Subspace::full(&q(), 4)).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert!(matches!(verify_bg_conditions(&s, &Subspace::coordinate(&q(), 4, &[0, 1])), Err(SymconError::DimensionMismatch { .. })));

        // h3 ⊕ R with ω = e1^e3 + e2^e4; b1 = 3 so no admissible complement of the right size exists,
        // and any complement of the commutator fails (iii)
        let h = LieAlgebra::from_text(&q(), &["e1", "e2", "e3", "e4"], &[(0, 1, &[(2, "1")])]).unwrap();
        let s = verify_symplectic(&h, &h.form("e1^e3 + e2^e4")).unwrap();
        let a = Subspace::coordinate(&q(), 4, &[0, 1, 3]);
        let r = verify_bg_conditions(&s, &a).unwrap();
        assert!(!r.center_meets_commutator_trivially);
        assert!(!r.even_dimensions);
        assert!(!r.abelian_complement);
    }
}
