//! Dense exact linear algebra over a [`FieldSpec`].
//!
//! Everything reduces to one routine, [`rref`]. The reduced row echelon form
//! of a matrix is unique, so kernels, solutions and subspace bases built from
//! it do not depend on pivot order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::{FieldSpec, Scalar};

pub type Vector = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, field: field.clone(), data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &FieldSpec, rows: Vec<Vector>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let r = rows.len();
        let data: Vec<Scalar> = rows.into_iter().inspect(|row| assert_eq!(row.len(), cols, "ragged rows")).flatten().collect();
        Matrix { rows: r, cols, field: field.clone(), data }
    }

    /// Builds from small integer entries.
    pub fn from_ints(field: &FieldSpec, rows: &[&[i64]]) -> Self {
        Self::from_rows(field, rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect())
    }

    pub fn from_columns(field: &FieldSpec, nrows: usize, cols: Vec<Vector>) -> Self {
        let mut m = Self::zeros(field, nrows, cols.len());
        for (j, c) in cols.into_iter().enumerate() {
            assert_eq!(c.len(), nrows, "column length");
            for (i, x) in c.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data.iter().enumerate().map(move |(k, x)| (k / self.cols, k % self.cols, x))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for (i, j, x) in self.entries() {
            t.set(j, i, x.clone());
        }
        t
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(&self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "shape mismatch in apply");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field.clone(), data }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.add(&o.scale(&self.field.from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field.clone(), data }
    }

    pub fn pow(&self, e: u32) -> Matrix {
        let mut acc = Matrix::identity(&self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| acc + self.get(i, i))
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[Matrix]) -> Matrix {
        let field = blocks.first().map(|b| b.field.clone()).unwrap_or(FieldSpec::Rationals);
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(&field, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for (i, j, x) in b.entries() {
                m.set(r0 + i, c0 + j, x.clone());
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn rank(&self) -> usize {
        rref(self.row_vecs(), self.cols, &self.field).pivots.len()
    }

    /// Basis of the null space `{x : A x = 0}` in the standard free-variable form.
    pub fn kernel(&self) -> Vec<Vector> {
        kernel_of_rows(self.row_vecs(), self.cols, &self.field)
    }

    /// Some solution of `A x = b`, or `None` when inconsistent. Free variables are 0.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let aug: Vec<Vector> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i);
                r.push(b[i].clone());
                r
            })
            .collect();
        let red = rref(aug, self.cols + 1, &self.field);
        if red.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &p) in red.pivots.iter().enumerate() {
            x[p] = red.rows[r][self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug: Vec<Vector> = (0..n)
            .map(|i| {
                let mut r = self.row(i);
                r.extend((0..n).map(|j| if i == j { self.field.one() } else { self.field.zero() }));
                r
            })
            .collect();
        let red = rref(aug, 2 * n, &self.field);
        if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_rows(&self.field, red.rows.into_iter().map(|r| r[n..].to_vec()).collect()))
    }

    /// Characteristic polynomial det(x·I − A), coefficients from degree 0 upwards.
    /// Faddeev–LeVerrier; the divisions are by integers, so any field of
    /// characteristic zero is fine.
    pub fn charpoly(&self) -> Vec<Scalar> {
        assert!(self.is_square());
        let n = self.rows;
        let mut c = vec![self.field.zero(); n + 1];
        c[n] = self.field.one();
        let mut m = Matrix::zeros(&self.field, n, n);
        for k in 1..=n {
            let mut next = self.mul(&m);
            for i in 0..n {
                let v = next.get(i, i) + &c[n - k + 1];
                next.set(i, i, v);
            }
            let tr = self.mul(&next).trace();
            c[n - k] = -(tr / self.field.from_int(k as i64));
            m = next;
        }
        c
    }

    /// Replaces every entry by its image under a rational specialisation of the
    /// indeterminates. `None` if some denominator vanishes or an entry is irrational.
    pub fn specialize(&self, point: &[BigRational]) -> Option<Matrix> {
        let data: Option<Vec<Scalar>> = self.data.iter().map(|x| x.specialize(point).map(Scalar::Rational)).collect();
        Some(Matrix { rows: self.rows, cols: self.cols, field: FieldSpec::Rationals, data: data? })
    }

    pub fn render(&self) -> String {
        let rows: Vec<String> =
            (0..self.rows).map(|i| format!("[{}]", self.row(i).iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))).collect();
        format!("[{}]", rows.join(", "))
    }
}

pub struct Rref {
    pub rows: Vec<Vector>,
    pub pivots: Vec<usize>,
}

fn pivot_row(rows: &[Vector], start: usize, col: usize, by_weight: bool) -> Option<usize> {
    let candidates = (start..rows.len()).filter(|&r| !rows[r][col].is_zero());
    if by_weight {
        candidates.min_by_key(|&r| (rows[r][col].weight(), rows[r].iter().filter(|x| !x.is_zero()).count(), r))
    } else {
        candidates.min()
    }
}

/// Reduced row echelon form. Zero rows are dropped from the result.
pub fn rref(mut rows: Vec<Vector>, ncols: usize, field: &FieldSpec) -> Rref {
    let by_weight = matches!(field, FieldSpec::RationalFunctions { .. });
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = pivot_row(&rows, r, col, by_weight) else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(col) {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    Rref { rows, pivots }
}

pub fn kernel_of_rows(rows: Vec<Vector>, ncols: usize, field: &FieldSpec) -> Vec<Vector> {
    let red = rref(rows, ncols, field);
    let mut is_pivot = vec![false; ncols];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![field.zero(); ncols];
            v[f] = field.one();
            for (i, &p) in red.pivots.iter().enumerate() {
                v[p] = -&red.rows[i][f];
            }
            v
        })
        .collect()
}

/// Rank of a rational matrix by fraction-free (Bareiss) elimination on the
/// integer matrix obtained by clearing row denominators. `None` if some entry is
/// not rational.
pub fn bareiss_rank(m: &Matrix) -> Option<usize> {
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let row: Vec<BigRational> = m.row(i).iter().map(Scalar::to_rational).collect::<Option<_>>()?;
        let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        a.push(row.iter().map(|q| (q * BigRational::from_integer(l.clone())).to_integer()).collect());
    }
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].abs();
        if prev.is_zero() {
            prev = BigInt::one();
        }
        r += 1;
    }
    Some(r)
}

/// A subspace of `field^dim`, stored as the rows of its reduced row echelon basis.
/// Two subspaces are equal iff their stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    dim: usize,
    field: FieldSpec,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: &FieldSpec, dim: usize, vectors: Vec<Vector>) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), dim, "vector length");
        }
        let red = rref(vectors, dim, field);
        Subspace { dim, field: field.clone(), rows: red.rows, pivots: red.pivots }
    }

    pub fn zero(field: &FieldSpec, dim: usize) -> Self {
        Self::span(field, dim, Vec::new())
    }

    pub fn full(field: &FieldSpec, dim: usize) -> Self {
        Self::span(field, dim, Matrix::identity(field, dim).row_vecs())
    }

    /// Span of standard basis vectors.
    pub fn coordinate(field: &FieldSpec, dim: usize, indices: &[usize]) -> Self {
        let id = Matrix::identity(field, dim);
        Self::span(field, dim, indices.iter().map(|&i| id.row(i)).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is outside.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        // reduced rows make the pivot entries the coordinates
        let c: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec![self.field.zero(); self.dim];
        for (ci, row) in c.iter().zip(&self.rows) {
            if ci.is_zero() {
                continue;
            }
            for (x, y) in rebuilt.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x += &(ci * y);
                }
            }
        }
        (rebuilt.as_slice() == v).then_some(c)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, o: &Subspace) -> bool {
        o.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut v = self.rows.clone();
        v.extend(o.rows.iter().cloned());
        Subspace::span(&self.field, self.dim, v)
    }

    pub fn intersection(&self, o: &Subspace) -> Subspace {
        // x = Σ a_i u_i = Σ b_j w_j  ⇔  (a, −b) in the kernel of [U; W]^T
        let (p, q) = (self.dim(), o.dim());
        if p == 0 || q == 0 {
            return Subspace::zero(&self.field, self.dim);
        }
        let mut cols = self.rows.clone();
        cols.extend(o.rows.iter().cloned());
        let m = Matrix::from_columns(&self.field, self.dim, cols);
        let vecs = m
            .kernel()
            .into_iter()
            .map(|k| {
                let mut x = vec![self.field.zero(); self.dim];
                for (a, u) in k[..p].iter().zip(&self.rows) {
                    for (xi, ui) in x.iter_mut().zip(u) {
                        *xi += &(a * ui);
                    }
                }
                x
            })
            .collect();
        Subspace::span(&self.field, self.dim, vecs)
    }

    /// Vectors from `candidates` (in order) that extend `self` to a basis of the
    /// span of both, picked greedily.
    pub fn greedy_complement(&self, candidates: &[Vector]) -> Vec<Vector> {
        let mut acc = self.clone();
        let mut out = Vec::new();
        for v in candidates {
            if !acc.contains(v) {
                acc = acc.sum(&Subspace::span(&self.field, self.dim, vec![v.clone()]));
                out.push(v.clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn kernel_and_solve() {
        let m = Matrix::from_ints(&q(), &[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).iter().all(Scalar::is_zero));
        }
        let x = m.solve(&[q().from_int(1), q().from_int(2)]).unwrap();
        assert_eq!(m.apply(&x), vec![q().from_int(1), q().from_int(2)]);
        assert!(m.solve(&[q().from_int(1), q().from_int(3)]).is_none());
    }

    #[test]
    fn inverse_over_quadratic_field() {
        let f = FieldSpec::quadratic(5).unwrap();
        let a = f.s("(3 + r)/2");
        let m = Matrix::from_rows(&f, vec![vec![f.one(), a.clone()], vec![a.clone(), f.one()]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(&f, 2));
        let singular = Matrix::from_rows(&f, vec![vec![f.one(), a.clone()], vec![a.clone(), &a * &a]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn rank_over_rational_functions() {
        let f = FieldSpec::rational_functions(&["t"]).unwrap();
        let t = f.var("t").unwrap();
        // [[t, 1], [1, 1/t]] is singular
        let m = Matrix::from_rows(&f, vec![vec![t.clone(), f.one()], vec![f.one(), t.inv().unwrap()]]);
        assert_eq!(m.rank(), 1);
        // generic rank 2; specialisation at t=1 drops it
        let m = Matrix::from_rows(&f, vec![vec![t.clone(), f.one()], vec![f.one(), f.one()]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.specialize(&[BigRational::one()]).unwrap().rank(), 1);
    }

    #[test]
    fn charpoly_of_rotation() {
        let m = Matrix::from_ints(&q(), &[&[0, 0, 0], &[0, 0, -1], &[0, 1, 0]]);
        let c = m.charpoly();
        // x³ + x
        let want: Vec<Scalar> = [0, 1, 0, 1].iter().map(|&n| q().from_int(n)).collect();
        assert_eq!(c, want);
    }

    #[test]
    fn subspace_operations() {
        let f = q();
        let a = Subspace::coordinate(&f, 3, &[0, 1]);
        let b = Subspace::span(&f, 3, vec![vec![f.one(), f.zero(), f.one()], vec![f.zero(), f.one(), f.zero()]]);
        let i = a.intersection(&b);
        assert_eq!(i, Subspace::coordinate(&f, 3, &[1]));
        assert_eq!(a.sum(&b), Subspace::full(&f, 3));
        assert!(a.contains(&[f.from_int(5), f.from_int(-1), f.zero()]));
        assert!(!a.contains(&[f.zero(), f.zero(), f.one()]));
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-3i64..4, c), r))
    }

    proptest! {
        #[test]
        fn bareiss_agrees_with_rref(rows in small_matrix()) {
            let f = q();
            let m = Matrix::from_rows(&f, rows.iter().map(|r| r.iter().map(|&x| f.from_int(x)).collect()).collect());
            prop_assert_eq!(bareiss_rank(&m), Some(m.rank()));
            prop_assert_eq!(m.rank() + m.kernel().len(), m.cols());
            prop_assert_eq!(m.transpose().rank(), m.rank());
        }

        #[test]
        fn subspace_dimension_formula(a in small_matrix(), b in small_matrix()) {
            let f = q();
            let n = a[0].len();
            let b: Vec<Vec<i64>> = b.into_iter().map(|mut r| { r.resize(n, 1); r }).collect();
            let to = |m: &Vec<Vec<i64>>| m.iter().map(|r| r.iter().map(|&x| f.from_int(x)).collect()).collect::<Vec<_>>();
            let sa = Subspace::span(&f, n, to(&a));
            let sb = Subspace::span(&f, n, to(&b));
            prop_assert_eq!(sa.sum(&sb).dim() + sa.intersection(&sb).dim(), sa.dim() + sb.dim());
        }
    }
}
