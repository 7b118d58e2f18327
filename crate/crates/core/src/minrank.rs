//! Minimum rank of matrix subspaces, tensor products of subspaces, the
//! `X = span{M, I}` family, and entanglement entropy.
//!
//! Results from exhaustive enumeration or structure are labelled
//! certified; sampled minima are upper bounds only.

use nalgebra::DMatrix;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{int, rational_to_f64, ExactField, Field, PrimeField, Rationals, Reals};
use crate::matrix::{rank_exact, singular_values, to_float, Matrix};
use crate::sampling::{small_int, Rng64};
use crate::tensor::{DenseTensor, Shape};

/// Cap on `p^k` for exhaustive enumeration.
pub const MAX_ENUMERATION: u64 = 1_000_000;
/// Largest `n` accepted by [`gurvits_construction`].
pub const MAX_GURVITS_N: usize = 8;
/// Singular-value threshold below which a Schmidt weight counts as zero.
pub const ENTROPY_TOL: f64 = 1e-10;

/// A linear space of `rows × cols` matrices given by an independent basis.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixSubspace<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    basis: Vec<Matrix<F>>,
}

impl<F: Field> MatrixSubspace<F> {
    pub fn new(field: F, rows: usize, cols: usize, basis: Vec<Matrix<F>>) -> Result<Self> {
        for (i, b) in basis.iter().enumerate() {
            if b.rows() != rows || b.cols() != cols {
                return Err(Error::dim(format!(
                    "basis element {i} is {}x{}, expected {rows}x{cols}",
                    b.rows(),
                    b.cols()
                )));
            }
            if *b.field() != field {
                return Err(Error::RingMismatch(format!("basis element {i} is over {}", b.field().ring())));
            }
        }
        let stacked: Vec<Vec<F::Elem>> = basis.iter().map(|b| b.entries().to_vec()).collect();
        if !basis.is_empty() {
            let m = Matrix::from_rows(field.clone(), stacked)?;
            if field.matrix_rank(&m) != basis.len() {
                return Err(Error::invalid("basis matrices are linearly dependent"));
            }
        }
        Ok(MatrixSubspace { field, rows, cols, basis })
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

    pub fn basis(&self) -> &[Matrix<F>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `Σ c_i B_i`.
    pub fn combination(&self, coeffs: &[F::Elem]) -> Result<Matrix<F>> {
        if coeffs.len() != self.basis.len() {
            return Err(Error::dim(format!("{} coefficients for a {}-dim space", coeffs.len(), self.dim())));
        }
        let f = &self.field;
        let mut acc = Matrix::zeros(f.clone(), self.rows, self.cols);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !f.is_zero(c) {
                acc = acc.add(&b.scale(c))?;
            }
        }
        Ok(acc)
    }
}

/// Minimum rank together with the combination attaining it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinRank<E> {
    pub min_rank: usize,
    pub coefficients: Vec<E>,
    /// `true` for an exact minimum, `false` for a sampled upper bound.
    pub certified: bool,
    pub evaluated: u64,
}

/// Exact minimum over all nonzero combinations, each line taken once
/// (first nonzero coefficient equal to 1).
pub fn min_rank_exact_fp(s: &MatrixSubspace<PrimeField>) -> Result<MinRank<u32>> {
    let p = s.field.modulus() as u64;
    let k = s.dim();
    if k == 0 {
        return Err(Error::invalid("the zero subspace has no nonzero element"));
    }
    let total = (p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > MAX_ENUMERATION as u128 {
        return Err(Error::cap("p^k coefficient vectors", total, MAX_ENUMERATION as u128));
    }
    let total = total as u64;
    let decode = |mut x: u64| -> Vec<u32> {
        (0..k)
            .map(|_| {
                let d = x % p;
                x /= p;
                d as u32
            })
            .rev()
            .collect()
    };
    let best = (1..total)
        .into_par_iter()
        .filter_map(|x| {
            let c = decode(x);
            let lead = c.iter().find(|&&v| v != 0).copied()?;
            if lead != 1 {
                return None;
            }
            let m = s.combination(&c).expect("coefficient count matches");
            Some((s.field.matrix_rank(&m), x))
        })
        .min()
        .expect("a nonzero subspace has a normalized vector");
    Ok(MinRank {
        min_rank: best.0,
        coefficients: decode(best.1),
        certified: true,
        evaluated: (total - 1) / (p - 1),
    })
}

/// Upper bound: minimum over every basis element, all pairwise sums and
/// differences, and `trials` random small-integer combinations.
pub fn min_rank_sample(s: &MatrixSubspace<Rationals>, trials: usize, seed: u64) -> Result<MinRank<BigRational>> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let k = s.dim();
    if k == 0 {
        return Err(Error::invalid("the zero subspace has no nonzero element"));
    }
    let mut candidates: Vec<Vec<i64>> = Vec::new();
    for i in 0..k {
        let mut e = vec![0; k];
        e[i] = 1;
        candidates.push(e);
        for j in i + 1..k {
            for sign in [1, -1] {
                let mut c = vec![0; k];
                c[i] = 1;
                c[j] = sign;
                candidates.push(c);
            }
        }
    }
    candidates.extend((0..trials).map(|t| {
        let mut rng = Rng64::derived(seed, t as u64);
        loop {
            let c: Vec<i64> = (0..k).map(|_| small_int(&mut rng)).collect();
            if c.iter().any(|&x| x != 0) {
                break c;
            }
        }
    }));
    let evaluated = candidates.len() as u64;
    let (rank, idx) = candidates
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let q: Vec<BigRational> = c.iter().map(|&x| int(x)).collect();
            (rank_exact(&s.combination(&q).expect("coefficient count matches")), i)
        })
        .min()
        .expect("candidates are nonempty");
    Ok(MinRank {
        min_rank: rank,
        coefficients: candidates[idx].iter().map(|&x| int(x)).collect(),
        certified: false,
        evaluated,
    })
}

/// Reorders `vec(X) ⊗ vec(Y)`, indexed `(a1, b1, a2, b2)`, into the matrix
/// with rows `(a1, a2)` and columns `(b1, b2)`.
pub fn braid_product<F: Field>(x: &Matrix<F>, y: &Matrix<F>) -> Result<Matrix<F>> {
    let f = x.field().clone();
    let tx = DenseTensor::new(f.clone(), Shape::new(vec![x.rows(), x.cols()])?, x.entries().to_vec())?;
    let ty = DenseTensor::new(f.clone(), Shape::new(vec![y.rows(), y.cols()])?, y.entries().to_vec())?;
    let braided = tx.outer(&ty)?.braid(&[0, 2, 1, 3])?;
    Matrix::new(f, x.rows() * y.rows(), x.cols() * y.cols(), braided.into_data())
}

/// `S1 ⊗ S2` with basis `{B ⊗ C}` in matrix form: rows `A1 ⊗ A2`,
/// columns `B1 ⊗ B2`.
pub fn tensor_subspace<F: Field>(s1: &MatrixSubspace<F>, s2: &MatrixSubspace<F>) -> Result<MatrixSubspace<F>> {
    if s1.field != s2.field {
        return Err(Error::RingMismatch(format!("{} vs {}", s1.field.ring(), s2.field.ring())));
    }
    let basis = s1
        .basis
        .iter()
        .flat_map(|b| s2.basis.iter().map(move |c| braid_product(b, c)))
        .collect::<Result<Vec<_>>>()?;
    MatrixSubspace::new(s1.field.clone(), s1.rows * s2.rows, s1.cols * s2.cols, basis)
}

/// `[[0, 1], [-1, 0]]`.
pub fn rotation<F: Field>(field: F) -> Matrix<F> {
    Matrix::from_i64(field, &[&[0, 1], &[-1, 0]]).expect("2x2 literal")
}

/// `X ⊗ I_n = span{M ⊗ I_n, I_2n}`.
pub fn gurvits_space<F: Field>(field: F, n: usize) -> MatrixSubspace<F> {
    let m = rotation(field.clone()).kron(&Matrix::identity(field.clone(), n)).expect("same ring");
    let id = Matrix::identity(field.clone(), 2 * n);
    MatrixSubspace::new(field, 2 * n, 2 * n, vec![m, id]).expect("M ⊗ I and I are independent")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GurvitsRecord {
    pub n: usize,
    /// Minimum rank over `S_2n`.
    pub minrank_x: usize,
    /// Exact ranks of `a(M⊗I) + bI` at the checked ratios.
    pub sample_ranks: Vec<(String, usize)>,
    /// `rank((M⊗I_n)⊗(M⊗I_n) - I)`.
    pub witness_rank: usize,
    /// `rank((M⊗I_n)⊗(M⊗I_n) + I)`.
    pub witness_rank_plus: usize,
    /// `minrank_x² - witness_rank`.
    pub decrement: i64,
}

/// Builds `S_2n`, checks its minimum rank at `a/b ∈ {0, ±1, ±2, ±3}` and
/// `b = 0`, and computes the witness ranks in `S_2n ⊗ S_2n` exactly.
pub fn gurvits_construction(n: usize) -> Result<GurvitsRecord> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if n > MAX_GURVITS_N {
        return Err(Error::cap("gurvits n", n as u128, MAX_GURVITS_N as u128));
    }
    let s = gurvits_space(Rationals, n);
    let mut points: Vec<(String, [i64; 2])> = (-3..=3).map(|a| (format!("{a}:1"), [a, 1])).collect();
    points.push(("1:0".into(), [1, 0]));
    let sample_ranks: Vec<(String, usize)> = points
        .into_par_iter()
        .map(|(label, [a, b])| {
            let m = s.combination(&[int(a), int(b)]).expect("two coefficients");
            (label, rank_exact(&m))
        })
        .collect();
    // M has no real eigenvalue, so every nonzero aM + bI is invertible up to
    // the factor I_n; the samples confirm the value.
    let minrank_x = sample_ranks.iter().map(|&(_, r)| r).min().expect("nonempty");
    let mm = braid_product(&s.basis[0], &s.basis[0])?;
    let id = Matrix::identity(Rationals, 4 * n * n);
    let (witness_rank, witness_rank_plus) = rayon::join(
        || rank_exact(&mm.sub(&id).expect("square")),
        || rank_exact(&mm.add(&id).expect("square")),
    );
    Ok(GurvitsRecord {
        n,
        minrank_x,
        sample_ranks,
        witness_rank,
        witness_rank_plus,
        decrement: (minrank_x * minrank_x) as i64 - witness_rank as i64,
    })
}

/// A vector in `C^{d_A} ⊗ C^{d_B}` stored row-major as a `d_A × d_B` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteVector {
    dims: (usize, usize),
    data: Vec<f64>,
}

impl BipartiteVector {
    pub fn new(da: usize, db: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != da * db {
            return Err(Error::dim(format!("{} entries for {da}x{db}", data.len())));
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(BipartiteVector { dims: (da, db), data })
    }

    pub fn from_matrix(m: &Matrix<Reals>) -> Result<Self> {
        Self::new(m.rows(), m.cols(), m.entries().to_vec())
    }

    pub fn from_rational_matrix(m: &Matrix<Rationals>) -> Result<Self> {
        Self::from_matrix(&to_float(m))
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn matrix(&self) -> Matrix<Reals> {
        Matrix::new(Reals, self.dims.0, self.dims.1, self.data.clone()).expect("validated shape")
    }

    /// Singular values of the normalized matrix form; their squares sum to 1.
    pub fn schmidt_coefficients(&self) -> Result<Vec<f64>> {
        let norm = self.data.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::invalid("entropy of the zero vector"));
        }
        Ok(singular_values(&self.matrix()).into_iter().map(|s| s / norm).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LogBase {
    Two,
    E,
}

impl LogBase {
    fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::E => x.ln(),
        }
    }
}

/// `-Σ p_i log p_i` with `p_i = σ_i²` of the normalized matrix form.
pub fn entanglement_entropy(v: &BipartiteVector, base: LogBase) -> Result<f64> {
    let h = v
        .schmidt_coefficients()?
        .into_iter()
        .filter(|&s| s > ENTROPY_TOL)
        .map(|s| {
            let p = s * s;
            -p * base.log(p)
        })
        .sum::<f64>();
    Ok(h.max(0.0))
}

/// Smallest entropy over basis elements and `trials` random Gaussian
/// combinations; an upper bound on the true minimum.
pub fn min_entropy_sample(s: &MatrixSubspace<Rationals>, trials: usize, seed: u64, base: LogBase) -> Result<f64> {
    let basis: Vec<DMatrix<f64>> = s
        .basis
        .iter()
        .map(|b| DMatrix::from_row_slice(b.rows(), b.cols(), &b.entries().iter().map(rational_to_f64).collect::<Vec<_>>()))
        .collect();
    let entropy_of = |m: &DMatrix<f64>| -> Result<f64> {
        let rows: Vec<f64> = (0..m.nrows()).flat_map(|i| (0..m.ncols()).map(move |j| m[(i, j)])).collect();
        entanglement_entropy(&BipartiteVector::new(m.nrows(), m.ncols(), rows)?, base)
    };
    let mut best = f64::INFINITY;
    for b in &basis {
        best = best.min(entropy_of(b)?);
    }
    let sampled = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = Rng64::derived(seed, t as u64);
            let m = basis
                .iter()
                .fold(DMatrix::zeros(s.rows, s.cols), |acc, b| acc + b * rng.normal());
            entropy_of(&m)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(sampled.into_iter().fold(best, f64::min))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FriedlandRecord {
    pub n: usize,
    /// `2 · min_{S_2n} H`, equal to `2 log(2n)`.
    pub sum_of_mins: f64,
    /// Entropy of `(M⊗I)⊗(M⊗I) - I` in `S_2n ⊗ S_2n`.
    pub joint_min_upper: f64,
    pub margin: f64,
    pub violated: bool,
    /// Largest deviation of sampled `S_2n` entropies from `log(2n)`.
    pub sample_deviation: f64,
}

/// Natural-log entropies: every nonzero element of `S_2n` is a multiple of
/// an orthogonal matrix, so its minimum is `log(2n)`; the joint space has
/// the witness of entropy `log(2n²)`.
pub fn friedland_check(n: usize) -> Result<FriedlandRecord> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if n > MAX_GURVITS_N {
        return Err(Error::cap("friedland n", n as u128, MAX_GURVITS_N as u128));
    }
    let s = gurvits_space(Rationals, n);
    let exact_min = ((2 * n) as f64).ln();
    let mut sample_deviation: f64 = 0.0;
    let mut rng = Rng64::new(n as u64);
    for _ in 0..16 {
        let (a, b) = (rng.normal(), rng.normal());
        let m = Matrix::new(
            Reals,
            2 * n,
            2 * n,
            s.basis[0]
                .entries()
                .iter()
                .zip(s.basis[1].entries())
                .map(|(x, y)| a * rational_to_f64(x) + b * rational_to_f64(y))
                .collect(),
        )?;
        let h = entanglement_entropy(&BipartiteVector::from_matrix(&m)?, LogBase::E)?;
        sample_deviation = sample_deviation.max((h - exact_min).abs());
    }
    let mm = braid_product(&s.basis[0], &s.basis[0])?;
    let witness = mm.sub(&Matrix::identity(Rationals, 4 * n * n))?;
    let joint_min_upper = entanglement_entropy(&BipartiteVector::from_rational_matrix(&witness)?, LogBase::E)?;
    let sum_of_mins = 2.0 * exact_min;
    Ok(FriedlandRecord {
        n,
        sum_of_mins,
        joint_min_upper,
        margin: sum_of_mins - joint_min_upper,
        violated: joint_min_upper < sum_of_mins,
        sample_deviation,
    })
}

/// Reduces a rational subspace modulo `p`; `None` if a denominator vanishes
/// or the reduced basis becomes dependent.
pub fn reduce_mod_p(s: &MatrixSubspace<Rationals>, p: &PrimeField) -> Option<MatrixSubspace<PrimeField>> {
    let basis = s
        .basis
        .iter()
        .map(|b| {
            let e = b.entries().iter().map(|q| p.reduce(q)).collect::<Option<Vec<u32>>>()?;
            Matrix::new(p.clone(), b.rows(), b.cols(), e).ok()
        })
        .collect::<Option<Vec<_>>>()?;
    MatrixSubspace::new(p.clone(), s.rows, s.cols, basis).ok()
}

/// Ranks of every basis element; the minimum rank never exceeds them.
pub fn basis_ranks<F: ExactField>(s: &MatrixSubspace<F>) -> Vec<usize> {
    s.basis.iter().map(rank_exact).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational;

    fn fp(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn unit(field: &PrimeField, n: usize, i: usize, j: usize) -> Matrix<PrimeField> {
        Matrix::from_fn(field.clone(), n, n, |a, b| if (a, b) == (i, j) { 1 } else { 0 })
    }

    #[test]
    fn exact_examples() {
        let f3 = fp(3);
        let s = MatrixSubspace::new(f3.clone(), 2, 2, vec![Matrix::identity(f3.clone(), 2)]).unwrap();
        assert_eq!(min_rank_exact_fp(&s).unwrap().min_rank, 2);
        let s = MatrixSubspace::new(f3.clone(), 2, 2, vec![unit(&f3, 2, 0, 0)]).unwrap();
        assert_eq!(min_rank_exact_fp(&s).unwrap().min_rank, 1);
        for p in [3, 7, 11] {
            let r = min_rank_exact_fp(&gurvits_space(fp(p), 1)).unwrap();
            assert_eq!(r.min_rank, 2, "p = {p}");
            assert_eq!(r.evaluated, (p as u64) + 1);
        }
        // -1 is a square mod 5, so M + 2I is singular
        let r = min_rank_exact_fp(&gurvits_space(fp(5), 1)).unwrap();
        assert_eq!(r.min_rank, 1);
        assert_eq!(r.coefficients, vec![1, 2]);
    }

    #[test]
    fn exact_caps_and_validation() {
        let f = fp(2);
        let basis: Vec<_> = (0..4)
            .flat_map(|i| (0..5).map(move |j| (i, j)))
            .map(|(i, j)| unit(&f, 5, i, j))
            .collect();
        let s = MatrixSubspace::new(f.clone(), 5, 5, basis).unwrap();
        assert!(matches!(min_rank_exact_fp(&s), Err(Error::CapExceeded { .. })));
        let dup = vec![Matrix::identity(f.clone(), 2), Matrix::identity(f.clone(), 2)];
        assert!(MatrixSubspace::new(f.clone(), 2, 2, dup).is_err());
        assert!(MatrixSubspace::new(f.clone(), 3, 3, vec![Matrix::identity(f, 2)]).is_err());
    }

    #[test]
    fn sampled_examples() {
        let s = MatrixSubspace::new(Rationals, 2, 2, vec![Matrix::identity(Rationals, 2)]).unwrap();
        let r = min_rank_sample(&s, 5, 1).unwrap();
        assert_eq!(r.min_rank, 2);
        assert!(!r.certified);
        let x = gurvits_space(Rationals, 1);
        let y = tensor_subspace(&x, &x).unwrap();
        let r = min_rank_sample(&y, 10, 2).unwrap();
        assert_eq!(r.min_rank, 2);
        let w = y.combination(&r.coefficients).unwrap();
        assert_eq!(rank_exact(&w), 2);
    }

    #[test]
    fn sampled_bound_dominates_fp_minimum() {
        let f = fp(101);
        let mut rng = Rng64::new(5);
        for _ in 0..5 {
            let basis: Vec<Matrix<Rationals>> = (0..2)
                .map(|_| Matrix::from_fn(Rationals, 3, 3, |_, _| int(small_int(&mut rng))))
                .collect();
            let Ok(s) = MatrixSubspace::new(Rationals, 3, 3, basis) else { continue };
            let upper = min_rank_sample(&s, 30, 9).unwrap().min_rank;
            if let Some(sp) = reduce_mod_p(&s, &f) {
                assert!(upper >= min_rank_exact_fp(&sp).unwrap().min_rank);
            }
        }
    }

    #[test]
    fn braiding() {
        let i2 = Matrix::identity(Rationals, 2);
        let s = MatrixSubspace::new(Rationals, 2, 2, vec![i2.clone()]).unwrap();
        let t = tensor_subspace(&s, &s).unwrap();
        assert_eq!(t.basis(), &[Matrix::identity(Rationals, 4)]);
        let x = gurvits_space(Rationals, 1);
        let y = tensor_subspace(&x, &x).unwrap();
        assert_eq!(y.dim(), 4);
        let m = rotation(Rationals);
        let expected = [m.kron(&m), m.kron(&i2), i2.kron(&m), i2.kron(&i2)];
        for (b, e) in y.basis().iter().zip(expected) {
            assert_eq!(b, &e.unwrap());
        }
        // braiding the (a1,a2,b1,b2) form back recovers vec(X) ⊗ vec(Y)
        let a = Matrix::from_i64(Rationals, &[&[1, 2, 3], &[4, 5, 6]]).unwrap();
        let b = Matrix::from_i64(Rationals, &[&[7, 8], &[9, 10], &[11, 12]]).unwrap();
        let p = braid_product(&a, &b).unwrap();
        let t = DenseTensor::new(Rationals, Shape::new(vec![2, 3, 3, 2]).unwrap(), p.entries().to_vec()).unwrap();
        let back = t.braid(&[0, 2, 1, 3]).unwrap().braid(&[0, 2, 1, 3]).unwrap();
        assert_eq!(back, t);
        let ta = DenseTensor::new(Rationals, Shape::new(vec![2, 3]).unwrap(), a.entries().to_vec()).unwrap();
        let tb = DenseTensor::new(Rationals, Shape::new(vec![3, 2]).unwrap(), b.entries().to_vec()).unwrap();
        assert_eq!(t.braid(&[0, 2, 1, 3]).unwrap(), ta.outer(&tb).unwrap());
    }

    #[test]
    fn product_witness_bounds_min_rank() {
        let f = fp(3);
        let s1 = MatrixSubspace::new(f.clone(), 2, 2, vec![unit(&f, 2, 0, 0), Matrix::identity(f.clone(), 2)]).unwrap();
        let s2 = MatrixSubspace::new(f.clone(), 2, 2, vec![unit(&f, 2, 0, 1), unit(&f, 2, 1, 0)]).unwrap();
        let (r1, r2) = (min_rank_exact_fp(&s1).unwrap(), min_rank_exact_fp(&s2).unwrap());
        let t = tensor_subspace(&s1, &s2).unwrap();
        let rt = min_rank_exact_fp(&t).unwrap().min_rank;
        assert!(rt <= r1.min_rank * r2.min_rank);
        let w = braid_product(&s1.combination(&r1.coefficients).unwrap(), &s2.combination(&r2.coefficients).unwrap()).unwrap();
        assert_eq!(rank_exact(&w), r1.min_rank * r2.min_rank);
    }

    #[test]
    fn gurvits_values() {
        let r = gurvits_construction(1).unwrap();
        assert_eq!((r.minrank_x, r.witness_rank, r.witness_rank_plus, r.decrement), (2, 2, 2, 2));
        let r = gurvits_construction(2).unwrap();
        assert_eq!((r.minrank_x, r.witness_rank, r.decrement), (4, 8, 8));
        assert_eq!(gurvits_construction(3).unwrap().witness_rank, 18);
        assert!(gurvits_construction(0).is_err());
        assert!(gurvits_construction(9).is_err());
    }

    #[test]
    fn entropy_examples() {
        let u = [1.0, 2.0];
        let w = [3.0, -1.0, 0.5];
        let prod: Vec<f64> = u.iter().flat_map(|a| w.iter().map(move |b| a * b)).collect();
        let v = BipartiteVector::new(2, 3, prod).unwrap();
        assert!(entanglement_entropy(&v, LogBase::E).unwrap().abs() < 1e-12);
        let bell = BipartiteVector::new(2, 2, vec![1.0, 0.0, 0.0, 1.0]).unwrap();
        assert!((entanglement_entropy(&bell, LogBase::E).unwrap() - 2f64.ln()).abs() < 1e-12);
        assert!((entanglement_entropy(&bell, LogBase::Two).unwrap() - 1.0).abs() < 1e-12);
        assert!(entanglement_entropy(&BipartiteVector::new(1, 2, vec![0.0, 0.0]).unwrap(), LogBase::E).is_err());
        assert!(BipartiteVector::new(1, 2, vec![f64::NAN, 0.0]).is_err());
    }

    #[test]
    fn witness_entropy_and_friedland() {
        for n in 1..=3 {
            let r = friedland_check(n).unwrap();
            assert!((r.joint_min_upper - ((2 * n * n) as f64).ln()).abs() < 1e-9);
            assert!((r.margin - 2f64.ln()).abs() < 1e-9);
            assert!(r.violated);
            assert!(r.sample_deviation < 1e-9);
        }
        let r = friedland_check(2).unwrap();
        assert!((r.sum_of_mins - 2.0 * 4f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn sampled_min_entropy_of_gurvits_space() {
        let s = gurvits_space(Rationals, 2);
        let h = min_entropy_sample(&s, 50, 3, LogBase::E).unwrap();
        assert!((h - 4f64.ln()).abs() < 1e-9);
        let e = MatrixSubspace::new(Rationals, 2, 2, vec![Matrix::from_fn(Rationals, 2, 2, |i, j| rational((i + j) as i64, 1))]).unwrap();
        assert!(min_entropy_sample(&e, 10, 1, LogBase::E).unwrap() >= 0.0);
    }

    #[test]
    fn basis_ranks_bound_minimum() {
        let f = fp(7);
        let s = gurvits_space(f, 2);
        let m = min_rank_exact_fp(&s).unwrap().min_rank;
        assert!(basis_ranks(&s).iter().all(|&r| r >= m));
        assert!(m > 0);
    }
}
