//! Chevalley–Eilenberg cohomology by exact rank and kernel computations.

use rayon::prelude::*;
use thiserror::Error;

use crate::exterior::{binomial, KForm};
use crate::field::Scalar;
use crate::liealg::LieAlgebra;
use crate::linalg::{Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("form is not closed; d of it is {0}")]
    NotClosed(String),
    #[error("degree {degree} outside 0..={dim}")]
    DegreeOutOfRange { degree: usize, dim: usize },
    #[error("form has degree {got}, descriptor is for degree {expected}")]
    WrongDegree { expected: usize, got: usize },
}

/// Matrix of d: Λ^k → Λ^{k+1} in the colex monomial bases.
pub fn d_matrix(g: &LieAlgebra, k: usize) -> Matrix {
    let n = g.dim();
    let rows = binomial(n, k + 1);
    let cols = g.d_images(k).into_iter().map(|f| if rows == 0 { Vec::new() } else { f.coords() }).collect();
    Matrix::from_columns(g.field(), rows, cols)
}

fn rank_d(g: &LieAlgebra, k: Option<usize>) -> usize {
    match k {
        Some(k) if k < g.dim() => d_matrix(g, k).rank(),
        _ => 0,
    }
}

pub fn betti(g: &LieAlgebra, k: usize) -> usize {
    let n = g.dim();
    if k > n {
        return 0;
    }
    binomial(n, k) - rank_d(g, Some(k)) - rank_d(g, k.checked_sub(1))
}

/// All Betti numbers b_0..b_n; degrees are computed in parallel.
pub fn betti_table(g: &LieAlgebra) -> Vec<usize> {
    let n = g.dim();
    let ranks: Vec<usize> = (0..=n).into_par_iter().map(|k| rank_d(g, Some(k))).collect();
    (0..=n).map(|k| binomial(n, k) - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyDescriptor {
    pub degree: usize,
    pub cocycles: Subspace,
    pub coboundaries: Subspace,
    pub representatives: Vec<KForm>,
    pub betti: usize,
}

pub fn cohomology(g: &LieAlgebra, k: usize) -> Result<CohomologyDescriptor, CohomologyError> {
    let n = g.dim();
    if k > n {
        return Err(CohomologyError::DegreeOutOfRange { degree: k, dim: n });
    }
    let slots = binomial(n, k);
    let cocycles = if k < n { Subspace::span(g.field(), slots, d_matrix(g, k).kernel()) } else { Subspace::full(g.field(), slots) };
    let coboundaries = match k {
        0 => Subspace::zero(g.field(), slots),
        _ => Subspace::span(g.field(), slots, g.d_images(k - 1).iter().map(KForm::coords).collect()),
    };
    let reps = coboundaries.greedy_complement(cocycles.basis());
    let representatives: Vec<KForm> = reps.iter().map(|v| KForm::from_coords(g.field(), n, k, v).expect("length")).collect();
    Ok(CohomologyDescriptor { degree: k, betti: representatives.len(), cocycles, coboundaries, representatives })
}

pub fn cohomology_all(g: &LieAlgebra) -> Vec<CohomologyDescriptor> {
    (0..=g.dim()).into_par_iter().map(|k| cohomology(g, k).expect("degree in range")).collect()
}

pub fn is_closed(g: &LieAlgebra, a: &KForm) -> bool {
    g.d(a).is_zero()
}

fn require_closed(g: &LieAlgebra, a: &KForm) -> Result<(), CohomologyError> {
    let da = g.d(a);
    if da.is_zero() {
        Ok(())
    } else {
        Err(CohomologyError::NotClosed(da.render(g.names())))
    }
}

/// Some γ with dγ = a, or `None` when a is closed but not exact.
pub fn is_exact(g: &LieAlgebra, a: &KForm) -> Result<Option<KForm>, CohomologyError> {
    require_closed(g, a)?;
    if a.is_zero() {
        return Ok(Some(KForm::zero(g.field(), g.dim(), a.degree().saturating_sub(1))));
    }
    let k = a.degree();
    if k == 0 {
        return Ok(None);
    }
    let m = d_matrix(g, k - 1);
    Ok(m.solve(&a.coords()).map(|x| KForm::from_coords(g.field(), g.dim(), k - 1, &x).expect("length")))
}

impl CohomologyDescriptor {
    /// Coordinates of [a] in the representative basis.
    pub fn class_coords(&self, g: &LieAlgebra, a: &KForm) -> Result<Vec<Scalar>, CohomologyError> {
        if a.degree() != self.degree && !a.is_zero() {
            return Err(CohomologyError::WrongDegree { expected: self.degree, got: a.degree() });
        }
        require_closed(g, a)?;
        Ok(self.coords_of_closed(g, &a.coords()))
    }

    /// Same as [`class_coords`](Self::class_coords) for a coordinate vector already known to be closed.
    pub fn coords_of_closed(&self, g: &LieAlgebra, v: &[Scalar]) -> Vec<Scalar> {
        let mut cols: Vec<Vec<Scalar>> = self.representatives.iter().map(KForm::coords).collect();
        cols.extend(self.coboundaries.basis().iter().cloned());
        let m = Matrix::from_columns(g.field(), v.len(), cols);
        let x = m.solve(v).expect("closed forms are combinations of representatives and coboundaries");
        x[..self.betti].to_vec()
    }

    /// Σ c_i rep_i.
    pub fn form_of(&self, g: &LieAlgebra, coords: &[Scalar]) -> KForm {
        let mut out = KForm::zero(g.field(), g.dim(), self.degree);
        for (c, r) in coords.iter().zip(&self.representatives) {
            if !c.is_zero() {
                out = out.add(&r.scale(c));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::linalg::bareiss_rank;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn h3() -> LieAlgebra {
        LieAlgebra::from_text(&q(), &["e1", "e2", "e3"], &[(0, 1, &[(2, "1")])]).unwrap()
    }

    #[test]
    fn heisenberg_betti_numbers() {
        let g = h3();
        assert_eq!(betti_table(&g), vec![1, 2, 2, 1]);
        assert_eq!(d_matrix(&g, 1).rank(), 1);
        assert_eq!(bareiss_rank(&d_matrix(&g, 1)), Some(1));
        let top = cohomology(&g, 3).unwrap();
        assert_eq!(top.betti, 1);
        assert_eq!(top.representatives[0], KForm::basis(&q(), 3, &[0, 1, 2]));
    }

    #[test]
    fn abelian_cohomology_is_everything() {
        let g = LieAlgebra::abelian(&q(), 4);
        for k in 0..=4 {
            assert!(d_matrix(&g, k).is_zero());
            assert_eq!(betti(&g, k), binomial(4, k));
        }
    }

    #[test]
    fn non_unimodular_top_degree_vanishes() {
        let g = LieAlgebra::from_text(&q(), &["e1", "e2"], &[(0, 1, &[(1, "1")])]).unwrap();
        assert_eq!(cohomology(&g, 2).unwrap().betti, 0);
    }

    #[test]
    fn exactness_and_class_coordinates() {
        let g = h3();
        let exact = g.form("e1^e2");
        let pre = is_exact(&g, &exact).unwrap().unwrap();
        assert_eq!(g.d(&pre), exact);
        assert!(is_exact(&g, &g.form("e1")).unwrap().is_none());
        assert!(matches!(is_exact(&g, &g.form("e3")), Err(CohomologyError::NotClosed(_))));

        let h2 = cohomology(&g, 2).unwrap();
        for (i, r) in h2.representatives.iter().enumerate() {
            let c = h2.class_coords(&g, r).unwrap();
            for (j, x) in c.iter().enumerate() {
                assert_eq!(x.is_one(), i == j);
                assert_eq!(x.is_zero(), i != j);
            }
        }
        assert!(h2.class_coords(&g, &KForm::zero(&q(), 3, 2)).unwrap().iter().all(Scalar::is_zero));
    }
}
