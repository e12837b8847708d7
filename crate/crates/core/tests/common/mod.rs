#![allow(dead_code)]

use lefschetz_core::catalog::{self, list, lookup};
use lefschetz_core::exterior::binomial;
use lefschetz_core::lattice::alpha;
use lefschetz_core::liealg::BracketEntry;
use lefschetz_core::*;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub const CASES: u32 = 100;

/// R f₁ ⋉ (R f₂ ⊕ R^{2m}) with f₁ acting by ΩS on R^{2m}, S symmetric; ω = f¹f² + Σ uⁱvⁱ.
#[allow(clippy::needless_range_loop)]
pub fn sp_almost_abelian(m: usize, sym: &[i64]) -> SymplecticStructure {
    let q = FieldSpec::Rationals;
    let d = 2 * m;
    let mut s = vec![vec![0i64; d]; d];
    let mut it = sym.iter().cycle();
    for i in 0..d {
        for j in i..d {
            let x = *it.next().unwrap();
            s[i][j] = x;
            s[j][i] = x;
        }
    }
    // Ω(u_i, v_i) = 1 with coordinates u1..um, v1..vm
    let omega_row = |i: usize| -> Vec<(usize, i64)> {
        if i < m {
            vec![(i + m, 1)]
        } else {
            vec![(i - m, -1)]
        }
    };
    let mut a = vec![vec![0i64; d]; d];
    for i in 0..d {
        for (k, w) in omega_row(i) {
            for j in 0..d {
                a[i][j] += w * s[k][j];
            }
        }
    }
    let mut names = vec!["f1".to_string(), "f2".to_string()];
    names.extend((1..=m).map(|i| format!("u{i}")));
    names.extend((1..=m).map(|i| format!("v{i}")));
    let mut entries = Vec::new();
    for j in 0..d {
        let terms: Vec<(usize, Scalar)> = (0..d).filter(|&i| a[i][j] != 0).map(|i| (2 + i, q.from_int(a[i][j]))).collect();
        if !terms.is_empty() {
            entries.push(BracketEntry::new(0, 2 + j, terms));
        }
    }
    let h = LieAlgebra::new(&q, names, entries).expect("almost abelian brackets satisfy Jacobi");
    let mut text = "f1^f2".to_string();
    for i in 1..=m {
        text.push_str(&format!(" + u{i}^v{i}"));
    }
    let omega = h.form(&text);
    verify_symplectic(&h, &omega).expect("ω is closed for ΩS")
}

pub fn sp_strategy() -> impl Strategy<Value = SymplecticStructure> {
    (1usize..=2, prop::collection::vec(-2i64..=2, 10)).prop_map(|(m, v)| sp_almost_abelian(m, &v))
}

/// Every algebra appearing in the catalog registry, symplectic and contact sides.
pub fn catalog_algebras() -> Vec<(String, LieAlgebra)> {
    let mut out = Vec::new();
    for (id, _) in list() {
        let e = lookup(id).unwrap();
        if let Some(s) = &e.symplectic {
            out.push((format!("{id}/h"), s.algebra.clone()));
        }
        if let Some(c) = &e.contact {
            out.push((format!("{id}/g"), c.algebra.clone()));
        }
    }
    out.push(("e2".into(), catalog::euclidean2()));
    out
}

pub fn unimodular_symplectic_fixtures() -> Vec<SymplecticStructure> {
    let mut out = vec![catalog::abelian_standard(2).unwrap(), catalog::h3_plus_r()];
    out.push(catalog::example_41(&[3], catalog::Relation::Independent).unwrap().symplectic);
    out.push(catalog::example_42(3, 2).unwrap().symplectic);
    out.push(catalog::example_bg(&catalog::BgParams::unit()).unwrap().symplectic);
    out
}

pub fn dd_zero(g: &LieAlgebra, k: usize, coeffs: &[i64]) -> Result<(), TestCaseError> {
    let f = g.field();
    let k = k % (g.dim() + 1);
    let n = binomial(g.dim(), k);
    let c: Vec<Scalar> = (0..n).map(|i| f.from_int(coeffs[i % coeffs.len()])).collect();
    let a = KForm::from_coords(f, g.dim(), k, &c).unwrap();
    prop_assert!(g.d(&g.d(&a)).is_zero());
    Ok(())
}

pub fn poincare(g: &LieAlgebra) -> Result<(), TestCaseError> {
    let b = betti_table(g);
    let n = g.dim();
    for k in 0..=n {
        prop_assert_eq!(b[k], b[n - k], "k = {}", k);
    }
    Ok(())
}

/// dim ker(L : H¹(𝔥) → H³(𝔥)).
pub fn l_kernel_on_h1(s: &SymplecticStructure) -> usize {
    let h = &s.algebra;
    let h1 = cohomology(h, 1).unwrap();
    let h3 = cohomology(h, 3).unwrap();
    let images: Vec<Vector> = h1.representatives.iter().map(|r| h3.class_coords(h, &s.omega.w(r)).unwrap()).collect();
    h1.betti - Subspace::span(h.field(), h3.betti, images).dim()
}

/// b₁ and b_{2n} relations, with b₂(𝔤) = b₂(𝔥) − 1 + dim ker(L|H¹) from the Gysin sequence.
pub fn contact_pair(s: &SymplecticStructure) -> Result<(), TestCaseError> {
    let c = contactize(s);
    let (h, g) = (&s.algebra, &c.algebra);
    let n = s.n;
    prop_assert_eq!(betti(g, 1), betti(h, 1));
    prop_assert_eq!(betti(g, 2) + 1, betti(h, 2) + l_kernel_on_h1(s));
    prop_assert_eq!(betti(g, 2 * n), betti(h, 2 * n - 1));
    Ok(())
}

/// The unqualified relation b₂(𝔤) = b₂(𝔥) − 1.
pub fn b2_drops_by_one(s: &SymplecticStructure) -> Result<(), TestCaseError> {
    let g = contactize(s).algebra;
    prop_assert_eq!(betti(&g, 2) + 1, betti(&s.algebra, 2), "on {:?}", s.algebra.names());
    Ok(())
}

pub fn xi_in_commutator(s: &SymplecticStructure) -> Result<(), TestCaseError> {
    let c = contactize(s);
    let g = &c.algebra;
    let f = g.field();
    let ng = g.commutator();
    prop_assert!(ng.contains(&c.xi));
    let lifted: Vec<Vector> =
        s.algebra.commutator().basis().iter().map(|v| std::iter::once(f.zero()).chain(v.iter().cloned()).collect()).collect();
    let nh = Subspace::span(f, g.dim(), lifted);
    prop_assert_eq!(ng.dim(), nh.dim() + 1);
    prop_assert_eq!(ng, Subspace::span(f, g.dim(), vec![c.xi.clone()]).sum(&nh));
    Ok(())
}

pub fn alpha_trace(k: i64, l: i64) -> Result<(), TestCaseError> {
    let a = alpha(k).unwrap();
    let t = a.pow(l).unwrap() + a.pow(-l).unwrap();
    prop_assert!(t.is_integer(), "k = {}, l = {}: {}", k, l, t);
    Ok(())
}

pub fn round_trip(s: &SymplecticStructure) -> Result<(), TestCaseError> {
    let c = contactize(s);
    let dec = decontactize(&c).unwrap();
    let back = contactize(&dec.structure);
    prop_assert!(dec.iso.inverse().is_some());
    prop_assert!(back.algebra.is_morphism_to(&c.algebra, &dec.iso));
    prop_assert_eq!(c.eta.pullback(&dec.iso), back.eta);
    prop_assert_eq!(betti_table(&dec.structure.algebra), betti_table(&s.algebra));
    Ok(())
}
