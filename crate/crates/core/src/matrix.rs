//! Dense row-major matrices and the linear algebra the rest of the crate is
//! built on: exact rank (fraction-free Bareiss over the rationals, plain
//! Gaussian elimination over prime fields), kernels, inverses, Kronecker
//! products and singular values.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{ExactField, Field, Rationals, Reals};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    /// Builds a matrix from row-major entries.
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dim(format!(
                "{} entries given for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let m = Matrix {
            field,
            rows,
            cols,
            data,
        };
        m.check_finite()?;
        Ok(m)
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        Self::from_fn(field.clone(), n, n, |i, j| {
            if i == j {
                field.one()
            } else {
                field.zero()
            }
        })
    }

    pub fn from_fn(
        field: F,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> F::Elem,
    ) -> Self {
        let data = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::dim("ragged rows"));
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: F, len: usize, cols: &[Vec<F::Elem>]) -> Result<Self> {
        if cols.iter().any(|c| c.len() != len) {
            return Err(Error::dim("columns of unequal length"));
        }
        Ok(Matrix::from_fn(field, len, cols.len(), |i, j| {
            cols[j][i].clone()
        }))
    }

    pub fn from_i64(field: F, rows: &[&[i64]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(field, rows)
    }

    fn check_finite(&self) -> Result<()> {
        if self.data.iter().all(|e| self.field.is_finite(e)) {
            Ok(())
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }
    pub fn into_entries(self) -> Vec<F::Elem> {
        self.data
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.field.clone(), self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        Ok(Matrix::from_fn(f.clone(), self.rows, other.cols, |i, j| {
            let mut acc = f.zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !f.is_zero(a) {
                    acc = f.add(&acc, &f.mul(a, other.get(k, j)));
                }
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::dim("vector length differs from column count"));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |f, a, b| f.sub(a, b))
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, s)).collect(),
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&F, &F::Elem, &F::Elem) -> F::Elem) -> Result<Self> {
        self.same_ring(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::dim("shape mismatch"));
        }
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| op(&self.field, a, b))
                .collect(),
        })
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.field.ring(),
                other.field.ring()
            )));
        }
        Ok(())
    }

    /// Kronecker product; the row-block index comes from `self`.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let f = &self.field;
        let (r2, c2) = (other.rows, other.cols);
        Ok(Matrix::from_fn(
            f.clone(),
            self.rows * r2,
            self.cols * c2,
            |i, j| f.mul(self.get(i / r2, j / c2), other.get(i % r2, j % c2)),
        ))
    }

    pub fn map<G: Field>(&self, field: G, op: impl Fn(&F::Elem) -> G::Elem) -> Result<Matrix<G>> {
        Matrix::new(field, self.rows, self.cols, self.data.iter().map(op).collect())
    }

    /// Rank with the ring's own method (exact or thresholded).
    pub fn rank(&self) -> usize {
        self.field.matrix_rank(self)
    }
}

pub fn kron<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<Matrix<F>> {
    a.kron(b)
}

/// Exact rank over the rationals or a prime field.
pub fn rank_exact<F: ExactField>(m: &Matrix<F>) -> usize {
    m.field().matrix_rank(m)
}

/// Number of singular values above `rel_tol * sigma_max`.
pub fn rank_numeric(m: &Matrix<Reals>, rel_tol: f64) -> Result<usize> {
    if !(rel_tol > 0.0) {
        return Err(Error::invalid("rel_tol must be positive"));
    }
    if m.entries().iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let sv = singular_values(m);
    let Some(&top) = sv.first() else {
        return Ok(0);
    };
    if top == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|&&s| s > rel_tol * top).count())
}

/// Singular values in descending order, `min(rows, cols)` of them.
pub fn singular_values(m: &Matrix<Reals>) -> Vec<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return Vec::new();
    }
    let dm = DMatrix::from_row_slice(m.rows(), m.cols(), m.entries());
    let mut sv: Vec<f64> = dm.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Clears denominators row by row; the row space is unchanged.
fn integer_rows(m: &Matrix<Rationals>) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut scales = Vec::with_capacity(m.rows());
    let rows = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            let ints = row.iter().map(|q| q.numer() * (&l / q.denom())).collect();
            scales.push(l);
            ints
        })
        .collect();
    (rows, scales)
}

struct Bareiss {
    rank: usize,
    last_pivot: BigInt,
    odd_swaps: bool,
}

/// Fraction-free elimination with full pivoting: at each step the pivot is
/// the first nonzero entry of the trailing block in row-major scan order.
fn bareiss(a: &mut [Vec<BigInt>]) -> Bareiss {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut odd_swaps = false;
    let mut k = 0;
    while k < rows && k < cols {
        let pivot = (k..rows)
            .flat_map(|i| (k..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero());
        let Some((pi, pj)) = pivot else { break };
        if pi != k {
            a.swap(pi, k);
            odd_swaps = !odd_swaps;
        }
        if pj != k {
            for row in a.iter_mut() {
                row.swap(pj, k);
            }
            odd_swaps = !odd_swaps;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let prow = &top[k];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..cols {
                let v = &prow[k] * &row[j] - &lead * &prow[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = top[k][k].clone();
        k += 1;
    }
    Bareiss {
        rank: k,
        last_pivot: prev,
        odd_swaps,
    }
}

pub(crate) fn bareiss_rank(m: &Matrix<Rationals>) -> usize {
    let (mut rows, _) = integer_rows(m);
    bareiss(&mut rows).rank
}

/// Determinant of a square rational matrix by Bareiss elimination.
pub fn determinant_bareiss(m: &Matrix<Rationals>) -> Result<BigRational> {
    if !m.is_square() {
        return Err(Error::dim("determinant of a non-square matrix"));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigRational::one());
    }
    let (mut rows, scales) = integer_rows(m);
    let out = bareiss(&mut rows);
    if out.rank < n {
        return Ok(BigRational::zero());
    }
    let denom = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    let det = BigRational::new(out.last_pivot, denom);
    Ok(if out.odd_swaps { -det } else { det })
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

pub fn rref<F: ExactField>(m: &Matrix<F>) -> Rref<F> {
    let f = m.field().clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(a.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(a.get(r, c)).expect("pivot is nonzero");
        for j in c..cols {
            let v = f.mul(a.get(r, j), &inv);
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || f.is_zero(a.get(i, c)) {
                continue;
            }
            let factor = a.get(i, c).clone();
            for j in c..cols {
                let v = f.sub(a.get(i, j), &f.mul(&factor, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: a, pivots }
}

pub(crate) fn gauss_rank<F: ExactField>(m: &Matrix<F>) -> usize {
    rref(m).pivots.len()
}

/// Basis of the right kernel, one vector per free column.
pub fn nullspace_exact<F: ExactField>(m: &Matrix<F>) -> Vec<Vec<F::Elem>> {
    let f = m.field();
    let Rref { matrix: r, pivots } = rref(m);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); m.cols()];
            v[fc] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row, fc));
            }
            v
        })
        .collect()
}

pub fn inverse<F: ExactField>(m: &Matrix<F>) -> Option<Matrix<F>> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let f = m.field().clone();
    let aug = Matrix::from_fn(f, n, 2 * n, |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else if j - n == i {
            m.field().one()
        } else {
            m.field().zero()
        }
    });
    let r = rref(&aug);
    if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Matrix::from_fn(m.field().clone(), n, n, |i, j| {
        r.matrix.get(i, n + j).clone()
    }))
}

/// Solves `m x = b`; returns one solution if the system is consistent.
pub fn solve<F: ExactField>(m: &Matrix<F>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    if b.len() != m.rows() {
        return None;
    }
    let f = m.field().clone();
    let cols = m.cols();
    let aug = Matrix::from_fn(f.clone(), m.rows(), cols + 1, |i, j| {
        if j < cols {
            m.get(i, j).clone()
        } else {
            b[i].clone()
        }
    });
    let r = rref(&aug);
    if r.pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![f.zero(); cols];
    for (row, &pc) in r.pivots.iter().enumerate() {
        x[pc] = r.matrix.get(row, cols).clone();
    }
    Some(x)
}

/// Determinant over any exact field by elimination.
pub fn determinant<F: ExactField>(m: &Matrix<F>) -> Result<F::Elem> {
    if !m.is_square() {
        return Err(Error::dim("determinant of a non-square matrix"));
    }
    let f = m.field().clone();
    let n = m.rows();
    let mut a = m.clone();
    let mut det = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !f.is_zero(a.get(i, c))) else {
            return Ok(f.zero());
        };
        if p != c {
            for j in 0..n {
                a.data.swap(p * n + j, c * n + j);
            }
            det = f.neg(&det);
        }
        let piv = a.get(c, c).clone();
        det = f.mul(&det, &piv);
        let inv = f.inv(&piv).expect("nonzero pivot");
        for i in c + 1..n {
            let factor = f.mul(a.get(i, c), &inv);
            if f.is_zero(&factor) {
                continue;
            }
            for j in c..n {
                let v = f.sub(a.get(i, j), &f.mul(&factor, a.get(c, j)));
                a.set(i, j, v);
            }
        }
    }
    Ok(det)
}

pub fn to_float(m: &Matrix<Rationals>) -> Matrix<Reals> {
    m.map(Reals, crate::field::rational_to_f64)
        .expect("rationals convert to finite floats")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rational, PrimeField};
    use num_traits::Signed;
    use crate::sampling::{small_int, Rng64};

    fn q(rows: &[&[i64]]) -> Matrix<Rationals> {
        Matrix::from_i64(Rationals, rows).unwrap()
    }

    /// Textbook Gaussian elimination over rationals with explicit partial
    /// pivoting; kept separate from `rref` and Bareiss on purpose.
    fn oracle_rank(m: &Matrix<Rationals>) -> usize {
        let mut a: Vec<Vec<BigRational>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        let (rows, cols) = (m.rows(), m.cols());
        let mut rank = 0;
        for c in 0..cols {
            let best = (rank..rows)
                .filter(|&i| !a[i][c].is_zero())
                .max_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs()));
            let Some(p) = best else { continue };
            a.swap(rank, p);
            for i in rank + 1..rows {
                let factor = &a[i][c] / &a[rank][c];
                for j in c..cols {
                    let t = &factor * &a[rank][j];
                    a[i][j] -= t;
                }
            }
            rank += 1;
        }
        rank
    }

    fn random_rational(rows: usize, cols: usize, seed: u64, rank_cap: Option<usize>) -> Matrix<Rationals> {
        let mut rng = Rng64::new(seed);
        match rank_cap {
            None => Matrix::from_fn(Rationals, rows, cols, |_, _| {
                rational(small_int(&mut rng), 1 + (small_int(&mut rng).unsigned_abs() as i64 % 3))
            }),
            Some(k) => {
                let a = Matrix::from_fn(Rationals, rows, k, |_, _| int(small_int(&mut rng)));
                let b = Matrix::from_fn(Rationals, k, cols, |_, _| int(small_int(&mut rng)));
                a.mul(&b).unwrap()
            }
        }
    }

    #[test]
    fn rank_small_cases() {
        assert_eq!(rank_exact(&Matrix::identity(Rationals, 3)), 3);
        assert_eq!(rank_exact(&q(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank_exact(&Matrix::zeros(Rationals, 3, 2)), 0);
        assert_eq!(rank_exact(&Matrix::zeros(Rationals, 0, 0)), 0);
    }

    #[test]
    fn bareiss_matches_oracle_on_random_matrices() {
        for seed in 0..40 {
            let cap = if seed % 2 == 0 { None } else { Some(1 + (seed as usize % 5)) };
            let m = random_rational(6, 6, seed, cap);
            assert_eq!(rank_exact(&m), oracle_rank(&m), "seed {seed}");
            assert_eq!(gauss_rank(&m), oracle_rank(&m), "seed {seed}");
        }
    }

    #[test]
    fn rank_over_prime_field() {
        let f = PrimeField::new(3).unwrap();
        // [[1,2],[2,1]] has det -3 = 0 mod 3
        let m = Matrix::from_i64(f, &[&[1, 2], &[2, 1]]).unwrap();
        assert_eq!(rank_exact(&m), 1);
        let m = Matrix::from_i64(PrimeField::new(5).unwrap(), &[&[1, 2], &[2, 1]]).unwrap();
        assert_eq!(rank_exact(&m), 2);
    }

    #[test]
    fn numeric_rank() {
        let i4 = Matrix::identity(Reals, 4);
        assert_eq!(rank_numeric(&i4, 1e-8).unwrap(), 4);
        assert_eq!(rank_numeric(&Matrix::zeros(Reals, 3, 3), 1e-8).unwrap(), 0);
        assert!(rank_numeric(&i4, 0.0).is_err());
        assert!(Matrix::new(Reals, 1, 1, vec![f64::NAN]).is_err());
        for seed in 0..100 {
            let m = random_rational(8, 8, 1000 + seed, Some(1 + seed as usize % 8));
            assert_eq!(rank_numeric(&to_float(&m), 1e-8).unwrap(), rank_exact(&m));
        }
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace_exact(&Matrix::identity(Rationals, 3)).is_empty());
        let ns = nullspace_exact(&q(&[&[1, 1]]));
        assert_eq!(ns, vec![vec![int(-1), int(1)]]);
        // catalecticant of x^3 + y^3
        let cat = q(&[&[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(nullspace_exact(&cat), vec![vec![int(0), int(1), int(0)]]);
    }

    #[test]
    fn nullspace_vectors_are_in_kernel() {
        for seed in 0..20 {
            let m = random_rational(5, 7, 50 + seed, Some(1 + seed as usize % 5));
            let ns = nullspace_exact(&m);
            assert_eq!(ns.len(), 7 - rank_exact(&m));
            for v in ns {
                assert!(m.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn kron_examples() {
        let i2 = Matrix::identity(Rationals, 2);
        assert_eq!(i2.kron(&i2).unwrap(), Matrix::identity(Rationals, 4));
        let m = q(&[&[0, 1], &[-1, 0]]);
        let mm = m.kron(&m).unwrap();
        assert_eq!(mm, mm.transpose());
        // spectrum (1,1,-1,-1): MM - I and MM + I both have rank 2, and (MM)^2 = I
        let i4 = Matrix::identity(Rationals, 4);
        assert_eq!(rank_exact(&mm.sub(&i4).unwrap()), 2);
        assert_eq!(rank_exact(&mm.add(&i4).unwrap()), 2);
        assert_eq!(mm.mul(&mm).unwrap(), i4);
    }

    #[test]
    fn kron_mixed_product() {
        for seed in 0..10 {
            let [a, b, c, d] = [0, 1, 2, 3].map(|k| random_rational(2, 2, seed * 10 + k, None));
            let lhs = a.kron(&b).unwrap().mul(&c.kron(&d).unwrap()).unwrap();
            let rhs = a.mul(&c).unwrap().kron(&b.mul(&d).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn kron_ring_mismatch() {
        let a = Matrix::identity(PrimeField::new(3).unwrap(), 2);
        let b = Matrix::identity(PrimeField::new(5).unwrap(), 2);
        assert!(matches!(a.kron(&b), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn singular_value_examples() {
        let d = Matrix::from_rows(Reals, vec![vec![3.0, 0.0], vec![0.0, 2.0]]).unwrap();
        assert_eq!(singular_values(&d), vec![3.0, 2.0]);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = Matrix::from_rows(Reals, vec![vec![h, 0.0], vec![0.0, h]]).unwrap();
        for s in singular_values(&bell) {
            assert!((s - h).abs() < 1e-15);
        }
        let mut rng = Rng64::new(7);
        let m = Matrix::from_fn(Reals, 5, 5, |_, _| rng.unit_f64() * 2.0 - 1.0);
        let frob: f64 = m.entries().iter().map(|x| x * x).sum();
        let ssq: f64 = singular_values(&m).iter().map(|s| s * s).sum();
        assert!((frob - ssq).abs() < 1e-10);
    }

    #[test]
    fn determinants_agree() {
        for seed in 0..30 {
            let m = random_rational(5, 5, 300 + seed, if seed % 3 == 0 { Some(4) } else { None });
            assert_eq!(determinant_bareiss(&m).unwrap(), determinant(&m).unwrap());
        }
        assert_eq!(determinant_bareiss(&q(&[&[0, 1], &[1, 0]])).unwrap(), int(-1));
    }

    #[test]
    fn inverse_and_solve() {
        let m = q(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(Rationals, 2));
        assert!(inverse(&q(&[&[1, 2], &[2, 4]])).is_none());
        let x = solve(&m, &[int(3), int(2)]).unwrap();
        assert_eq!(x, vec![int(1), int(1)]);
        assert!(solve(&q(&[&[1, 1], &[1, 1]]), &[int(1), int(2)]).is_none());
    }
}
