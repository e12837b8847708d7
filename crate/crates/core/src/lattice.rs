//! Lattice certificates for almost nilpotent groups R ⋉_D N.
//!
//! A certificate checks a supplied witness: a codimension-one nilpotent ideal,
//! the exponential of the derivation given blockwise with eigenvalues that are
//! integer multiples of t_k = log α, and a candidate basis of the ideal in
//! which the bracket is rational and exp(D) is integral.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::field::{FieldError, FieldSpec, Scalar};
use crate::liealg::{default_names, BracketEntry, LieAlgebra, LieError};
use crate::linalg::{Matrix, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("k must be at least 3, got {0}")]
    InvalidK(i64),
    #[error("block {index} is not nilpotent")]
    NotNilpotentBlock { index: usize },
    #[error("block {index} is not a square rational matrix")]
    BadBlock { index: usize },
    #[error("blocks cover {blocks} coordinates, the ideal has dimension {ideal}")]
    SizeMismatch { blocks: usize, ideal: usize },
    #[error("ideal has dimension {got}, expected codimension one in dimension {dim}")]
    WrongCodimension { dim: usize, got: usize },
    #[error("the given vectors do not span a subalgebra")]
    NotSubalgebra,
    #[error("the algebra is not unimodular, so its group has no lattices")]
    NotUnimodular,
    #[error("candidate basis is singular")]
    SingularCandidate,
    #[error("candidate has shape {rows}x{cols}, expected {dim}x{dim}")]
    CandidateShape { rows: usize, cols: usize, dim: usize },
    #[error("structure constant {0} of the ideal does not lie in the working field")]
    FieldMismatch(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    /// exp(N)
    Nilpotent(Matrix),
    /// α^m · exp(N)
    Scaled { m: i64, n: Matrix },
}

impl Block {
    pub fn size(&self) -> usize {
        self.matrix().rows()
    }

    pub fn matrix(&self) -> &Matrix {
        match self {
            Block::Nilpotent(n) | Block::Scaled { n, .. } => n,
        }
    }

    pub fn multiple(&self) -> i64 {
        match self {
            Block::Nilpotent(_) => 0,
            Block::Scaled { m, .. } => *m,
        }
    }

    /// A size-s block α^m with no nilpotent part.
    pub fn scalar(m: i64, s: usize) -> Self {
        Block::Scaled { m, n: Matrix::zeros(&FieldSpec::Rationals, s, s) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationBlockSpec {
    k: i64,
    blocks: Vec<Block>,
}

impl DerivationBlockSpec {
    pub fn new(k: i64, blocks: Vec<Block>) -> Result<Self, LatticeError> {
        if k < 3 {
            return Err(LatticeError::InvalidK(k));
        }
        for (index, b) in blocks.iter().enumerate() {
            let n = b.matrix();
            if !n.is_square() || n.entries().any(|(_, _, x)| !x.is_rational()) {
                return Err(LatticeError::BadBlock { index });
            }
            if !n.pow(n.rows() as u32).is_zero() {
                return Err(LatticeError::NotNilpotentBlock { index });
            }
        }
        let blocks = blocks.into_iter().map(|b| match b {
            Block::Nilpotent(n) => Block::Nilpotent(to_rationals(&n)),
            Block::Scaled { m, n } => Block::Scaled { m, n: to_rationals(&n) },
        });
        Ok(DerivationBlockSpec { k, blocks: blocks.collect() })
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn size(&self) -> usize {
        self.blocks.iter().map(Block::size).sum()
    }

    /// Index ranges covered by the blocks, in order.
    pub fn ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.blocks
            .iter()
            .map(|b| {
                let r = start..start + b.size();
                start = r.end;
                r
            })
            .collect()
    }
}

fn to_rationals(m: &Matrix) -> Matrix {
    let q = FieldSpec::Rationals;
    let rows = m.row_vecs().into_iter().map(|r| r.iter().map(|x| q.embed(x.to_rational().expect("checked"))).collect());
    Matrix::from_rows(&q, rows.collect())
}

/// Q(√d) with k² − 4 = s²d, d squarefree.
pub fn alpha_field(k: i64) -> Result<(FieldSpec, i64), LatticeError> {
    if k < 3 {
        return Err(LatticeError::InvalidK(k));
    }
    let mut d = k * k - 4;
    let mut s = 1;
    let mut p = 2;
    while p * p <= d {
        while d % (p * p) == 0 {
            d /= p * p;
            s *= p;
        }
        p += 1;
    }
    Ok((FieldSpec::quadratic(d)?, s))
}

/// α = (k + √(k²−4))/2, the larger root of x² − kx + 1.
pub fn alpha(k: i64) -> Result<Scalar, LatticeError> {
    let (f, s) = alpha_field(k)?;
    let r = f.root().expect("quadratic");
    Ok((f.from_int(k) + f.from_int(s) * r) * f.from_ratio(1, 2))
}

fn factorial_exp(n: &Matrix, field: &FieldSpec) -> Matrix {
    let size = n.rows();
    let n = lift_matrix(n, field);
    let mut out = Matrix::identity(field, size);
    let mut term = Matrix::identity(field, size);
    for j in 1..size.max(1) {
        term = term.mul(&n).scale(&field.from_ratio(1, j as i64));
        out = out.add(&term);
    }
    out
}

fn lift_matrix(m: &Matrix, field: &FieldSpec) -> Matrix {
    let rows = m.row_vecs().into_iter().map(|r| r.iter().map(|x| field.embed(x.to_rational().expect("rational"))).collect());
    Matrix::from_rows(field, rows.collect())
}

/// exp(t₀D) over Q(√(k²−4)), assembled blockwise.
pub fn exact_exp(spec: &DerivationBlockSpec) -> Matrix {
    let (field, _) = alpha_field(spec.k).expect("validated");
    let a = alpha(spec.k).expect("validated");
    let blocks: Vec<Matrix> = spec
        .blocks
        .iter()
        .map(|b| {
            let e = factorial_exp(b.matrix(), &field);
            match b.multiple() {
                0 => e,
                m => e.scale(&a.pow(m).expect("α is a unit")),
            }
        })
        .collect();
    Matrix::direct_sum(&blocks)
}

/// Whether `ideal` is a nilpotent ideal of codimension one.
pub fn verify_nilpotent_ideal(g: &LieAlgebra, ideal: &Subspace) -> Result<bool, LatticeError> {
    if ideal.dim() + 1 != g.dim() {
        return Err(LatticeError::WrongCodimension { dim: g.dim(), got: ideal.dim() });
    }
    if !ideal.contains_subspace(&g.bracket_spaces(&g.full(), ideal)) {
        return Ok(false);
    }
    let mut term = ideal.clone();
    loop {
        let next = g.bracket_spaces(ideal, &term);
        if next.is_zero() {
            return Ok(true);
        }
        if next == term {
            return Ok(false);
        }
        term = next;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Offending {
    pub place: String,
    pub value: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCertificate {
    pub algebra_id: String,
    /// Columns: the candidate basis in coordinates of the ordered ideal basis.
    pub ideal_basis: Matrix,
    pub ideal_nilpotent: bool,
    pub rational_basis_ok: bool,
    /// Bracket of the ideal in the candidate basis.
    pub structure_constants: LieAlgebra,
    pub exp_matrix: Matrix,
    pub integral_ok: bool,
    /// ad of the transversal vector restricted to the ideal is c·diag(m) + N blockwise.
    pub derivation_consistent: bool,
    pub offending: Vec<Offending>,
}

impl LatticeCertificate {
    pub fn valid(&self) -> bool {
        self.ideal_nilpotent && self.rational_basis_ok && self.integral_ok
    }
}

fn move_scalar(x: &Scalar, to: &FieldSpec) -> Option<Scalar> {
    if &x.field() == to {
        Some(x.clone())
    } else {
        x.to_rational().map(|q| to.embed(q))
    }
}

/// Checks the lattice criterion for R ⋉ span(ideal) with the given witness.
///
/// `ideal` is an ordered basis of the ideal in `g`'s coordinates; `spec` and
/// `candidate` are written in that ordered basis. The candidate's columns are
/// the new basis vectors.
pub fn lattice_check(
    g: &LieAlgebra,
    ideal: &[Vector],
    spec: &DerivationBlockSpec,
    candidate: &Matrix,
) -> Result<LatticeCertificate, LatticeError> {
    if !g.is_unimodular() {
        return Err(LatticeError::NotUnimodular);
    }
    let dim = ideal.len();
    if spec.size() != dim {
        return Err(LatticeError::SizeMismatch { blocks: spec.size(), ideal: dim });
    }
    if candidate.rows() != dim || candidate.cols() != dim {
        return Err(LatticeError::CandidateShape { rows: candidate.rows(), cols: candidate.cols(), dim });
    }
    let span = Subspace::span(g.field(), g.dim(), ideal.to_vec());
    if span.dim() != dim {
        return Err(LatticeError::WrongCodimension { dim: g.dim(), got: span.dim() });
    }
    let ideal_nilpotent = verify_nilpotent_ideal(g, &span)?;
    let n = g.restrict(ideal, default_names(dim)).map_err(|_| LatticeError::NotSubalgebra)?;

    let (work, _) = alpha_field(spec.k)?;
    let mut entries = Vec::new();
    for ((i, j), v) in n.brackets() {
        let terms = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| move_scalar(c, &work).map(|c| (k, c)).ok_or_else(|| LatticeError::FieldMismatch(c.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        entries.push(BracketEntry::new(i, j, terms));
    }
    let n_work = LieAlgebra::new(&work, n.names().to_vec(), entries)?;
    let p = Matrix::from_rows(
        &work,
        candidate
            .row_vecs()
            .iter()
            .map(|r| r.iter().map(|x| move_scalar(x, &work).ok_or_else(|| LatticeError::FieldMismatch(x.to_string()))).collect())
            .collect::<Result<Vec<_>, _>>()?,
    );
    let p_inv = p.inverse().ok_or(LatticeError::SingularCandidate)?;
    let names: Vec<String> = (1..=dim).map(|i| format!("b{i}")).collect();
    let structure_constants = n_work.change_basis(&p, names.clone())?;

    let mut offending = Vec::new();
    for ((i, j), v) in structure_constants.brackets() {
        for (k, c) in v.iter().enumerate() {
            if !c.is_rational() {
                offending.push(Offending { place: format!("[{}, {}] along {}", names[i], names[j], names[k]), value: c.clone() });
            }
        }
    }
    let rational_basis_ok = offending.is_empty();

    let exp_matrix = p_inv.mul(&exact_exp(spec)).mul(&p);
    for (i, j, c) in exp_matrix.entries() {
        if !c.is_integer() {
            offending.push(Offending { place: format!("exp[{}, {}]", i + 1, j + 1), value: c.clone() });
        }
    }
    let integral_ok = exp_matrix.entries().all(|(_, _, x)| x.is_integer());

    let derivation_consistent = derivation_consistent(g, ideal, &span, spec);

    Ok(LatticeCertificate {
        algebra_id: String::new(),
        ideal_basis: p,
        ideal_nilpotent,
        rational_basis_ok,
        structure_constants,
        exp_matrix,
        integral_ok,
        derivation_consistent,
        offending,
    })
}

fn derivation_consistent(g: &LieAlgebra, ideal: &[Vector], span: &Subspace, spec: &DerivationBlockSpec) -> bool {
    let Some(x0) = (0..g.dim()).map(|i| g.unit(i)).find(|e| !span.contains(e)) else {
        return false;
    };
    let basis = Matrix::from_columns(g.field(), g.dim(), ideal.to_vec());
    let mut cols = Vec::new();
    for b in ideal {
        match basis.solve(&g.bracket_vec(&x0, b)) {
            Some(c) => cols.push(c),
            None => return false,
        }
    }
    let d = Matrix::from_columns(g.field(), ideal.len(), cols);
    let ranges = spec.ranges();
    let f = g.field();
    let c = spec
        .blocks
        .iter()
        .zip(&ranges)
        .find(|(b, _)| b.multiple() != 0)
        .map(|(b, r)| d.get(r.start, r.start).clone() * f.from_int(b.multiple()).inv().expect("nonzero"));
    if c.as_ref().is_some_and(Scalar::is_zero) {
        return false;
    }
    let mut expected = Matrix::zeros(f, ideal.len(), ideal.len());
    for (b, r) in spec.blocks.iter().zip(&ranges) {
        let n = lift_matrix(b.matrix(), f);
        for i in 0..b.size() {
            for j in 0..b.size() {
                let mut x = n.get(i, j).clone();
                if i == j && b.multiple() != 0 {
                    x = x + c.clone().expect("scaled block exists") * f.from_int(b.multiple());
                }
                expected.set(r.start + i, r.start + j, x);
            }
        }
    }
    d == expected
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BgSolution {
    pub k: i64,
    pub matrix: Matrix,
    pub rank_of_m: usize,
    /// The (u, v) parametrization spans the solution space.
    pub parametrization_ok: bool,
    /// p and q at (u, v) = (0, 1 − k²).
    pub p: Scalar,
    pub q: Scalar,
    /// p + qα³, pα + qα², pα² + qα, pα³ + q are all rational there.
    pub conditions_ok: bool,
}

/// The linear system for p, q ∈ Q(α) making the x̃, ỹ brackets rational.
pub fn bg_solution_space(k: i64) -> Result<BgSolution, LatticeError> {
    let (work, _) = alpha_field(k)?;
    let q = FieldSpec::Rationals;
    let k2 = k * k;
    let matrix =
        Matrix::from_ints(&q, &[&[0, 1, k2 - 1, k * (k2 - 2)], &[1, k, k, k2 - 1], &[k, k2 - 1, 1, k], &[k2 - 1, k * (k2 - 2), 0, 1]]);
    let rank_of_m = matrix.rank();
    let param = |u: BigRational, v: BigRational| -> Vector {
        let den = BigRational::from_integer(BigInt::from(k2 - 1));
        let c = BigRational::from_integer(BigInt::from(k * (k2 - 2)));
        let p1 = -(&c * &u + &v) / &den;
        let q1 = -(&u + &c * &v) / &den;
        vec![q.embed(p1), q.embed(u), q.embed(q1), q.embed(v)]
    };
    let one = BigRational::one;
    let zero = BigRational::zero;
    let s1 = param(one(), zero());
    let s2 = param(zero(), one());
    let kills = |v: &Vector| matrix.apply(v).iter().all(Scalar::is_zero);
    let independent = Matrix::from_columns(&q, 4, vec![s1.clone(), s2.clone()]).rank() == 2;
    let parametrization_ok = kills(&s1) && kills(&s2) && independent && rank_of_m + 2 == 4;

    let pt = param(zero(), BigRational::from_integer(BigInt::from(1 - k2)));
    let a = alpha(k)?;
    let lift = |x: &Scalar| work.embed(x.to_rational().expect("rational"));
    let p = lift(&pt[0]) + lift(&pt[1]) * a.clone();
    let qq = lift(&pt[2]) + lift(&pt[3]) * a.clone();
    let a2 = a.clone() * a.clone();
    let a3 = a2.clone() * a.clone();
    let conditions = [
        p.clone() + qq.clone() * a3.clone(),
        p.clone() * a.clone() + qq.clone() * a2.clone(),
        p.clone() * a2 + qq.clone() * a.clone(),
        p.clone() * a3 + qq.clone(),
    ];
    let conditions_ok = conditions.iter().all(Scalar::is_rational);
    Ok(BgSolution { k, matrix, rank_of_m, parametrization_ok, p, q: qq, conditions_ok })
}
