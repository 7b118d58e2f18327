use super::Decomposition;
use crate::error::{Error, Result};
use crate::field::{ExactField, Field};
use crate::matrix::{rref, Matrix};
use crate::rank::f_rank;
use crate::tensor::{Bipartition, DenseTensor};

/// Independence of `D^{(I)} = {⊗_{j∈I} a_i^{(j)}}_i` for one subset `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetCheck {
    pub subset: Vec<usize>,
    pub rank: usize,
    pub independent: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrossVerdict {
    /// Every summand has pairwise proportional factors.
    Symmetric,
    /// Some `D^{(I)}` with `|I| = d - 2` is dependent; nothing is concluded.
    HypothesisNotMet,
    /// The hypothesis holds yet a summand is not symmetric. Never expected.
    Contradiction,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrossReport<F: Field> {
    pub independence: Vec<SubsetCheck>,
    pub verdict: GrossVerdict,
    /// Per summand, `λ_k` with `a_i^{(k)} = λ_k a_i^{(1)}` for every factor
    /// `k` (the first entry is always 1). `None` if not proportional.
    pub certificates: Vec<Option<Vec<F::Elem>>>,
    /// `α_i(T) = a_i^{(k)} ⊗ a_i^{(l)}` held for every summand and pair.
    pub dual_checks_passed: bool,
}

impl<F: Field> GrossReport<F> {
    pub fn symmetric_verdict(&self) -> bool {
        self.verdict == GrossVerdict::Symmetric
    }

    pub fn independence_holds(&self) -> bool {
        self.independence.iter().all(|c| c.independent)
    }
}

impl<F: ExactField> GrossReport<F> {
    /// Summands rewritten as `c_i · v_i^{⊗d}` with the scalars folded into
    /// `c_i`; `None` unless the verdict is symmetric.
    pub fn symmetric_summands(&self, d: &Decomposition<F>) -> Option<Vec<(F::Elem, Vec<F::Elem>)>> {
        if !self.symmetric_verdict() {
            return None;
        }
        let f = d.field();
        Some(
            d.summands()
                .iter()
                .zip(&self.certificates)
                .map(|(s, c)| {
                    let scale = c
                        .as_ref()
                        .expect("symmetric verdict has all certificates")
                        .iter()
                        .fold(f.one(), |acc, x| f.mul(&acc, x));
                    (scale, s[0].clone())
                })
                .collect(),
        )
    }
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

/// `λ` with `w = λ v`, using the first nonzero coordinate of `v`.
fn proportionality<F: Field>(f: &F, v: &[F::Elem], w: &[F::Elem]) -> Option<F::Elem> {
    let i = v.iter().position(|x| !f.is_zero(x))?;
    let lambda = f.div(&w[i], &v[i])?;
    v.iter()
        .zip(w)
        .all(|(a, b)| f.mul(&lambda, a) == *b)
        .then_some(lambda)
}

/// Left inverse `L` (`L A = I`) of a matrix with independent columns.
fn left_inverse<F: ExactField>(a: &Matrix<F>) -> Matrix<F> {
    let f = a.field().clone();
    let (n, r) = (a.rows(), a.cols());
    // pick r independent rows of A, invert that square block
    let rows = rref(&a.transpose()).pivots;
    let block = Matrix::from_fn(f.clone(), r, r, |i, j| a.get(rows[i], j).clone());
    let b_inv = crate::matrix::inverse(&block).expect("selected rows are independent");
    let mut l = Matrix::zeros(f, r, n);
    for i in 0..r {
        for (j, &row) in rows.iter().enumerate() {
            l.set(i, row, b_inv.get(i, j).clone());
        }
    }
    l
}

fn validate<F: Field>(t: &DenseTensor<F>, d: &Decomposition<F>) -> Result<()> {
    if d.shape() != t.shape() {
        return Err(Error::dim("decomposition shape differs from the tensor"));
    }
    if d.reconstruct() != *t {
        return Err(Error::invalid("the summands do not reconstruct the tensor"));
    }
    Ok(())
}

/// Tests the symmetry lemma on a decomposition `D` of a symmetric tensor:
/// if every `D^{(I)}` with `|I| = d - 2` is linearly independent then every
/// summand is symmetric. The dual basis `α_i` of each `D^{(I)}` is built
/// explicitly and `α_i(T) = a_i^{(k)} ⊗ a_i^{(l)}` is verified for the
/// complementary pair `{k, l}`.
pub fn gross_check<F: ExactField>(t: &DenseTensor<F>, d: &Decomposition<F>) -> Result<GrossReport<F>> {
    let n = t.order();
    if n <= 2 {
        return Err(Error::invalid("the symmetry lemma needs more than 2 factors"));
    }
    if !t.is_symmetric() {
        return Err(Error::invalid("the tensor is not symmetric"));
    }
    validate(t, d)?;
    let f = t.field().clone();
    let r = d.len();

    let mut independence = Vec::new();
    let mut columns_by_subset = Vec::new();
    for subset in subsets_of_size(n, n - 2) {
        let cols = d.projection(&subset);
        let len: usize = subset.iter().map(|&j| t.dims()[j]).product();
        let a = Matrix::from_columns(f.clone(), len, &cols)?;
        let rank = a.rank();
        independence.push(SubsetCheck {
            subset: subset.clone(),
            rank,
            independent: rank == r,
        });
        columns_by_subset.push((subset, a));
    }

    let certificates: Vec<Option<Vec<F::Elem>>> = d
        .summands()
        .iter()
        .map(|s| s.iter().map(|v| proportionality(&f, &s[0], v)).collect())
        .collect();

    if !independence.iter().all(|c| c.independent) {
        return Ok(GrossReport {
            independence,
            verdict: GrossVerdict::HypothesisNotMet,
            certificates,
            dual_checks_passed: false,
        });
    }

    let mut dual_ok = true;
    for (subset, a) in &columns_by_subset {
        let pair: Vec<usize> = (0..n).filter(|j| !subset.contains(j)).collect();
        let (k, l) = (pair[0], pair[1]);
        let flat = t.flatten(&Bipartition::new(subset, n)?)?;
        let alpha_t = left_inverse(a).mul(&flat)?;
        let (dk, dl) = (t.dims()[k], t.dims()[l]);
        for (i, s) in d.summands().iter().enumerate() {
            let m = Matrix::new(f.clone(), dk, dl, alpha_t.row(i).to_vec())?;
            let expected = Matrix::from_fn(f.clone(), dk, dl, |x, y| f.mul(&s[k][x], &s[l][y]));
            dual_ok &= m == expected && m == m.transpose();
        }
    }

    let all_proportional = certificates.iter().all(Option::is_some);
    let verdict = if dual_ok && all_proportional {
        GrossVerdict::Symmetric
    } else {
        GrossVerdict::Contradiction
    };
    Ok(GrossReport {
        independence,
        verdict,
        certificates,
        dual_checks_passed: dual_ok,
    })
}

/// True iff `|D|` equals the rank of a flattening `([1..k], [k+1..d])`,
/// which certifies `D` minimal.
pub fn gross_minimality_check<F: Field>(t: &DenseTensor<F>, d: &Decomposition<F>) -> Result<bool> {
    validate(t, d)?;
    let n = t.order();
    for k in 1..n {
        let left: Vec<usize> = (0..k).collect();
        if f_rank(t, &Bipartition::new(&left, n)?)? == d.len() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, Rationals};
    use crate::rank::{w_state, w_state_decomposition};
    use crate::tensor::Shape;
    use num_rational::BigRational;

    fn qv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn power_decomposition(vs: &[Vec<i64>], d: usize) -> Decomposition<Rationals> {
        Decomposition::from_summands(
            Rationals,
            vs.iter().map(|v| vec![qv(v); d]).collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_power() {
        let d = power_decomposition(&[vec![1, 2]], 3);
        let t = d.reconstruct();
        let rep = gross_check(&t, &d).unwrap();
        assert!(rep.independence_holds());
        assert_eq!(rep.verdict, GrossVerdict::Symmetric);
        assert!(rep.dual_checks_passed);
    }

    #[test]
    fn generic_rank_three_in_sym3_q4() {
        let d = power_decomposition(&[vec![1, 2, -1, 3], vec![0, 1, 4, -2], vec![5, -1, 1, 1]], 3);
        let t = d.reconstruct();
        let rep = gross_check(&t, &d).unwrap();
        assert_eq!(rep.independence.len(), 3);
        assert!(rep.independence.iter().all(|c| c.rank == 3));
        assert_eq!(rep.verdict, GrossVerdict::Symmetric);
        let sym = rep.symmetric_summands(&d).unwrap();
        let rebuilt = sym.iter().fold(DenseTensor::zeros(Rationals, t.shape().clone()), |acc, (c, v)| {
            acc.add(&crate::tensor::veronese_point(&Rationals, v, 3).unwrap().scale(c)).unwrap()
        });
        assert_eq!(rebuilt, t);
    }

    #[test]
    fn asymmetric_dependent_decomposition() {
        // x⊗x⊗(x+y) + x⊗x⊗(-y) = x⊗x⊗x
        let d = Decomposition::from_summands(
            Rationals,
            vec![
                vec![qv(&[1, 0]), qv(&[1, 0]), qv(&[1, 1])],
                vec![qv(&[1, 0]), qv(&[1, 0]), qv(&[0, -1])],
            ],
        )
        .unwrap();
        let t = d.reconstruct();
        assert!(t.is_symmetric());
        let rep = gross_check(&t, &d).unwrap();
        assert_eq!(rep.verdict, GrossVerdict::HypothesisNotMet);
        assert!(rep.certificates.iter().all(Option::is_none));
    }

    #[test]
    fn rejects_mismatch_and_low_order() {
        let d = power_decomposition(&[vec![1, 2]], 3);
        let t = DenseTensor::zeros(Rationals, Shape::new(vec![2, 2, 2]).unwrap());
        assert!(gross_check(&t, &d).is_err());
        let d2 = power_decomposition(&[vec![1, 2]], 2);
        assert!(gross_check(&d2.reconstruct(), &d2).is_err());
    }

    #[test]
    fn minimality_examples() {
        let e = |i: usize| (0..3).map(|j| int((i == j) as i64)).collect::<Vec<_>>();
        let diag = Decomposition::from_summands(Rationals, (0..3).map(|i| vec![e(i), e(i), e(i)]).collect()).unwrap();
        assert!(gross_minimality_check(&diag.reconstruct(), &diag).unwrap());
        let w = w_state(&Rationals, 3).unwrap();
        let wd = w_state_decomposition(&Rationals, 3).unwrap();
        assert!(!gross_minimality_check(&w, &wd).unwrap());
        let two = power_decomposition(&[vec![1, 2], vec![3, -1]], 3);
        assert!(gross_minimality_check(&two.reconstruct(), &two).unwrap());
    }
}
