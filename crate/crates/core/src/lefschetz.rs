//! Symplectic and contact s-Lefschetz conditions.
//!
//! The contact condition in degree k is about the relation between H^k and
//! H^{2n+1-k} given by the admissible forms
//!
//! ```text
//! A_k = { β ∈ Λ^k : dβ = 0, ι_ξ β = 0, (dη)^{n-k+1} ∧ β = 0 }
//! ```
//!
//! through π(β) = [β] and φ(β) = [η ∧ (dη)^{n-k} ∧ β]. Writing P and F for
//! their matrices on a basis of A_k, the relation is defined on all of H^k iff
//! rank P = b_k, is a function iff F vanishes on ker P, and is then an
//! isomorphism iff ker F ⊆ ker P and rank F = b_{2n+1-k}.

use rayon::prelude::*;
use thiserror::Error;

use crate::cohomology::{cohomology, CohomologyDescriptor};
use crate::exterior::{basis_masks, binomial, KForm};
use crate::field::Scalar;
use crate::linalg::{kernel_of_rows, Matrix, Subspace, Vector};
use crate::symcon::{contactize, lift, ContactStructure, SymplecticStructure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LefschetzError {
    #[error("the algebra is not unimodular")]
    NotUnimodular,
    #[error("degree bound {s} exceeds n = {n}")]
    DegreeTooLarge { s: usize, n: usize },
    #[error("symplectic verdict {h} but contact verdict {g} for the contactization")]
    Inconsistency { h: bool, g: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Symplectic,
    Contact,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub k: usize,
    pub source_betti: usize,
    pub target_betti: usize,
    /// contact only: every class of H^k has an admissible representative
    pub domain_covered: Option<bool>,
    /// contact only: admissible exact forms have exact images
    pub well_defined: Option<bool>,
    pub injective: bool,
    pub surjective: bool,
    pub verdict: bool,
    /// representative of a class without an admissible representative
    pub uncovered: Option<KForm>,
    /// admissible exact β whose image is not exact
    pub ill_defined: Option<KForm>,
    /// nonzero class mapped to zero
    pub kernel: Option<KForm>,
    /// image of `kernel`, exact by construction
    pub kernel_image: Option<KForm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzReport {
    pub mode: Mode,
    pub n: usize,
    pub degrees: Vec<DegreeReport>,
}

impl LefschetzReport {
    pub fn verdict(&self) -> bool {
        self.degrees.iter().all(|d| d.verdict)
    }

    pub fn degree(&self, k: usize) -> &DegreeReport {
        &self.degrees[k]
    }
}

/// Matrix of β ↦ form ∧ β on Λ^k.
pub fn wedge_matrix(form: &KForm, k: usize) -> Matrix {
    let dim = form.dim();
    let out = form.degree() + k;
    let rows = binomial(dim, out);
    let cols = basis_masks(dim, k)
        .into_iter()
        .map(|m| {
            let b = KForm::basis(form.field(), dim, &crate::exterior::indices_of(m));
            let w = form.w(&b);
            if rows == 0 {
                Vec::new()
            } else if w.is_zero() {
                vec![form.field().zero(); rows]
            } else {
                w.coords()
            }
        })
        .collect();
    Matrix::from_columns(form.field(), rows, cols)
}

/// Matrix of ι_x on Λ^k, k ≥ 1.
pub fn contraction_matrix(x: &[Scalar], k: usize) -> Matrix {
    let dim = x.len();
    let field = x[0].field();
    let cols = basis_masks(dim, k)
        .into_iter()
        .map(|m| KForm::basis(&field, dim, &crate::exterior::indices_of(m)).contract(x).expect("k >= 1").coords())
        .collect();
    Matrix::from_columns(&field, binomial(dim, k - 1), cols)
}

fn rank_of_columns(field: &crate::field::FieldSpec, rows: usize, cols: &[Vector]) -> usize {
    if cols.is_empty() || rows == 0 {
        return 0;
    }
    Matrix::from_columns(field, rows, cols.to_vec()).rank()
}

/// Bijectivity of [α] ↦ [ω^{n-k} ∧ α] for all k ≤ s.
pub fn symplectic_lefschetz(s: &SymplecticStructure, deg: usize) -> Result<LefschetzReport, LefschetzError> {
    let n = s.n;
    if deg > n {
        return Err(LefschetzError::DegreeTooLarge { s: deg, n });
    }
    let h = &s.algebra;
    let degrees = (0..=deg)
        .into_par_iter()
        .map(|k| {
            let src = cohomology(h, k).expect("degree in range");
            let dst = cohomology(h, 2 * n - k).expect("degree in range");
            let lk = s.omega.wedge_power(n - k).expect("same dimension");
            let images: Vec<Vector> =
                src.representatives.iter().map(|r| dst.class_coords(h, &lk.w(r)).expect("ω^j ∧ closed is closed")).collect();
            let m = Matrix::from_columns(h.field(), dst.betti, images);
            let rank = if src.betti == 0 || dst.betti == 0 { 0 } else { m.rank() };
            let injective = rank == src.betti;
            let surjective = rank == dst.betti;
            let (kernel, kernel_image) = if injective {
                (None, None)
            } else {
                let v = if dst.betti == 0 { unit_vec(h.field(), src.betti, 0) } else { m.kernel().remove(0) };
                let w = src.form_of(h, &v);
                let img = lk.w(&w);
                (Some(w), Some(img))
            };
            DegreeReport {
                k,
                source_betti: src.betti,
                target_betti: dst.betti,
                domain_covered: None,
                well_defined: None,
                injective,
                surjective,
                verdict: injective && surjective,
                uncovered: None,
                ill_defined: None,
                kernel,
                kernel_image,
            }
        })
        .collect();
    Ok(LefschetzReport { mode: Mode::Symplectic, n, degrees })
}

fn unit_vec(field: &crate::field::FieldSpec, len: usize, i: usize) -> Vector {
    let mut v = vec![field.zero(); len];
    v[i] = field.one();
    v
}

/// The admissible space A_k with the matrices of π and φ on its basis.
struct Admissible {
    basis: Vec<KForm>,
    src: CohomologyDescriptor,
    dst: CohomologyDescriptor,
    /// columns: π(β_j) in representative coordinates
    pi: Vec<Vector>,
    /// columns: φ(β_j) in representative coordinates
    phi: Vec<Vector>,
    /// η ∧ (dη)^{n-k}
    lef: KForm,
}

fn admissible(c: &ContactStructure, k: usize) -> Admissible {
    let g = &c.algebra;
    let f = g.field();
    let n = c.n;
    let dim = g.dim();
    let deta = g.d(&c.eta);
    let mut rows: Vec<Vector> = Vec::new();
    if k < dim {
        rows.extend(crate::cohomology::d_matrix(g, k).row_vecs());
    }
    if k >= 1 {
        rows.extend(contraction_matrix(&c.xi, k).row_vecs());
    }
    let prim = deta.wedge_power(n + 1 - k).expect("same dimension");
    if !prim.is_zero() {
        rows.extend(wedge_matrix(&prim, k).row_vecs());
    }
    let slots = binomial(dim, k);
    let basis: Vec<KForm> =
        kernel_of_rows(rows, slots, f).into_iter().map(|v| KForm::from_coords(f, dim, k, &v).expect("length")).collect();
    let src = cohomology(g, k).expect("degree in range");
    let dst = cohomology(g, dim - k).expect("degree in range");
    let lef = c.eta.w(&deta.wedge_power(n - k).expect("same dimension"));
    let pi = basis.iter().map(|b| src.coords_of_closed(g, &b.coords())).collect();
    let phi = basis
        .iter()
        .map(|b| {
            let img = lef.w(b);
            assert!(g.d(&img).is_zero(), "η ∧ (dη)^(n-k) ∧ β must be closed for admissible β");
            dst.coords_of_closed(g, &if img.is_zero() { KForm::zero(f, dim, dim - k) } else { img }.coords())
        })
        .collect();
    Admissible { basis, src, dst, pi, phi, lef }
}

fn combine(field: &crate::field::FieldSpec, dim: usize, k: usize, forms: &[KForm], c: &[Scalar]) -> KForm {
    let mut out = KForm::zero(field, dim, k);
    for (x, b) in c.iter().zip(forms) {
        if !x.is_zero() {
            out = out.add(&b.scale(x));
        }
    }
    out
}

/// Some admissible β with [β] equal to the class with the given coordinates.
pub fn horizontal_primitive_rep(c: &ContactStructure, k: usize, class_coords: &[Scalar]) -> Option<KForm> {
    let g = &c.algebra;
    let adm = admissible(c, k);
    if class_coords.iter().all(Scalar::is_zero) {
        return Some(KForm::zero(g.field(), g.dim(), k));
    }
    if adm.basis.is_empty() {
        return None;
    }
    let p = Matrix::from_columns(g.field(), adm.src.betti, adm.pi.clone());
    let v = p.solve(class_coords)?;
    Some(combine(g.field(), g.dim(), k, &adm.basis, &v))
}

fn contact_degree(c: &ContactStructure, k: usize) -> DegreeReport {
    let g = &c.algebra;
    let f = g.field();
    let dim = g.dim();
    let adm = admissible(c, k);
    let (b_src, b_dst) = (adm.src.betti, adm.dst.betti);
    let a = adm.basis.len();

    let rank_pi = rank_of_columns(f, b_src, &adm.pi);
    let domain_covered = rank_pi == b_src;
    let uncovered = if domain_covered {
        None
    } else {
        let image = Subspace::span(f, b_src, adm.pi.clone());
        (0..b_src).find(|&i| !image.contains(&unit_vec(f, b_src, i))).map(|i| adm.src.representatives[i].clone())
    };

    // ker P as vectors of A_k coordinates
    let ker_pi: Vec<Vector> = if a == 0 {
        Vec::new()
    } else if b_src == 0 {
        (0..a).map(|i| unit_vec(f, a, i)).collect()
    } else {
        Matrix::from_columns(f, b_src, adm.pi.clone()).kernel()
    };
    let phi_m = (a > 0 && b_dst > 0).then(|| Matrix::from_columns(f, b_dst, adm.phi.clone()));
    let apply_phi = |v: &[Scalar]| -> Vector { phi_m.as_ref().map_or_else(Vec::new, |m| m.apply(v)) };
    let bad = ker_pi.iter().find(|v| apply_phi(v).iter().any(|x| !x.is_zero()));
    let well_defined = bad.is_none();
    let ill_defined = bad.map(|v| combine(f, dim, k, &adm.basis, v));

    // ker F ⊆ ker P
    let ker_phi: Vec<Vector> = match &phi_m {
        Some(m) => m.kernel(),
        None => (0..a).map(|i| unit_vec(f, a, i)).collect(),
    };
    let pi_m = (a > 0 && b_src > 0).then(|| Matrix::from_columns(f, b_src, adm.pi.clone()));
    let leak = ker_phi.iter().find_map(|v| {
        let pv = pi_m.as_ref().map_or_else(Vec::new, |m| m.apply(v));
        pv.iter().any(|x| !x.is_zero()).then(|| (v.clone(), pv))
    });
    let injective = leak.is_none();
    let (kernel, kernel_image) = match leak {
        Some((v, pv)) => {
            let beta = combine(f, dim, k, &adm.basis, &v);
            (Some(adm.src.form_of(g, &pv)), Some(adm.lef.w(&beta)))
        }
        None => (None, None),
    };
    let rank_phi = rank_of_columns(f, b_dst, &adm.phi);
    let surjective = rank_phi == b_dst;
    DegreeReport {
        k,
        source_betti: b_src,
        target_betti: b_dst,
        domain_covered: Some(domain_covered),
        well_defined: Some(well_defined),
        injective,
        surjective,
        verdict: domain_covered && well_defined && injective && surjective,
        uncovered,
        ill_defined,
        kernel,
        kernel_image,
    }
}

pub fn contact_lefschetz(c: &ContactStructure, deg: usize) -> Result<LefschetzReport, LefschetzError> {
    if deg > c.n {
        return Err(LefschetzError::DegreeTooLarge { s: deg, n: c.n });
    }
    let degrees = (0..=deg).into_par_iter().map(|k| contact_degree(c, k)).collect();
    Ok(LefschetzReport { mode: Mode::Contact, n: c.n, degrees })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainCheck {
    pub h_verdict: bool,
    pub g_verdict: bool,
    pub agree: bool,
}

/// 1-Lefschetz for (𝔥, ω) against 1-Lefschetz for its contactization.
pub fn theorem_main_check(s: &SymplecticStructure) -> Result<MainCheck, LefschetzError> {
    if !s.algebra.is_unimodular() {
        return Err(LefschetzError::NotUnimodular);
    }
    let deg = s.n.min(1);
    let h_verdict = symplectic_lefschetz(s, deg)?.verdict();
    let g_verdict = contact_lefschetz(&contactize(s), deg)?.verdict();
    if h_verdict != g_verdict {
        return Err(LefschetzError::Inconsistency { h: h_verdict, g: g_verdict });
    }
    Ok(MainCheck { h_verdict, g_verdict, agree: true })
}

/// The sign ε with [η∧(dη)^{n-1}∧π*β] = ε·[η∧π*(ω^{n-1}∧β)] for every class
/// [β] ∈ H¹(𝔥), or `None` if no single sign works. Since dη = −π*ω the
/// expected value is (−1)^{n-1}.
pub fn commuting_square_sign(s: &SymplecticStructure) -> Option<i32> {
    let h = &s.algebra;
    let c = contactize(s);
    let g = &c.algebra;
    let n = s.n;
    let h1 = cohomology(h, 1).expect("degree 1");
    let top = cohomology(g, 2 * n).expect("degree 2n");
    let deta = g.d(&c.eta);
    let lef = c.eta.w(&deta.wedge_power(n - 1).expect("same dimension"));
    let ln1 = s.omega.wedge_power(n - 1).expect("same dimension");
    let mut sign = None;
    for b in &h1.representatives {
        let left = top.class_coords(g, &lef.w(&lift(b))).expect("closed");
        let right = top.class_coords(g, &c.eta.w(&lift(&ln1.w(b)))).expect("closed");
        if left.iter().all(Scalar::is_zero) && right.iter().all(Scalar::is_zero) {
            continue;
        }
        let neg: Vec<Scalar> = right.iter().map(|x| -x).collect();
        let this = if left == right {
            1
        } else if left == neg {
            -1
        } else {
            return None;
        };
        if sign.is_some_and(|s| s != this) {
            return None;
        }
        sign = Some(this);
    }
    sign.or(Some(if (n - 1).is_multiple_of(2) { 1 } else { -1 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::liealg::LieAlgebra;
    use crate::symcon::{verify_contact, verify_symplectic};

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

    fn h3_plus_r() -> SymplecticStructure {
        let h = LieAlgebra::from_text(&q(), &["e1", "e2", "e3", "e4"], &[(0, 1, &[(2, "1")])]).unwrap();
        verify_symplectic(&h, &h.form("e1^e3 + e2^e4")).unwrap()
    }

    #[test]
    fn abelian_is_hard_lefschetz() {
        for n in 1..=3 {
            let r = symplectic_lefschetz(&std_abelian(n), n).unwrap();
            assert!(r.verdict());
        }
    }

    #[test]
    fn h3_plus_r_fails_in_degree_one() {
        let s = h3_plus_r();
        let r = symplectic_lefschetz(&s, 1).unwrap();
        assert!(r.degree(0).verdict);
        let d1 = r.degree(1);
        assert!(!d1.verdict);
        let w = d1.kernel.clone().unwrap();
        assert!(s.algebra.d(&w).is_zero());
        assert!(crate::cohomology::is_exact(&s.algebra, &w).unwrap().is_none());
        assert!(crate::cohomology::is_exact(&s.algebra, d1.kernel_image.as_ref().unwrap()).unwrap().is_some());
    }

    #[test]
    fn top_degree_is_always_bijective() {
        let s = h3_plus_r();
        assert!(symplectic_lefschetz(&s, 2).unwrap().degree(2).verdict);
    }

    #[test]
    fn heisenberg_contact_lefschetz() {
        let g = LieAlgebra::from_text(&q(), &["z", "x", "y"], &[(1, 2, &[(0, "1")])]).unwrap();
        let c = verify_contact(&g, &g.form("z")).unwrap();
        let r = contact_lefschetz(&c, 1).unwrap();
        assert!(r.verdict(), "{r:?}");
    }

    #[test]
    fn theorem_main_on_small_fixtures() {
        let a = theorem_main_check(&std_abelian(2)).unwrap();
        assert!(a.h_verdict && a.g_verdict && a.agree);
        let b = theorem_main_check(&h3_plus_r()).unwrap();
        assert!(!b.h_verdict && !b.g_verdict && b.agree);
        let aff = LieAlgebra::from_text(&q(), &["e1", "e2"], &[(0, 1, &[(1, "1")])]).unwrap();
        let s = verify_symplectic(&aff, &aff.form("e1^e2")).unwrap();
        assert_eq!(theorem_main_check(&s), Err(LefschetzError::NotUnimodular));
    }

    #[test]
    fn commuting_square_sign_is_minus_one_to_the_n_minus_one() {
        assert_eq!(commuting_square_sign(&std_abelian(1)), Some(1));
        assert_eq!(commuting_square_sign(&std_abelian(2)), Some(-1));
        assert_eq!(commuting_square_sign(&std_abelian(3)), Some(1));
    }

    #[test]
    fn horizontal_reps_in_degree_one() {
        let c = contactize(&std_abelian(2));
        let h1 = cohomology(&c.algebra, 1).unwrap();
        for i in 0..h1.betti {
            let coords = unit_vec(&q(), h1.betti, i);
            let b = horizontal_primitive_rep(&c, 1, &coords).unwrap();
            assert_eq!(h1.class_coords(&c.algebra, &b).unwrap(), coords);
            assert!(b.contract(&c.xi).unwrap().is_zero());
        }
        assert!(horizontal_primitive_rep(&c, 1, &vec![q().zero(); h1.betti]).unwrap().is_zero());
    }
}
