//! Binary forms, their catalecticant (Hankel) matrices and apolar kernels.
//!
//! A form of degree `d` is stored by its monomial coefficients
//! `f = Σ c_i x^{d-i} y^i`. The catalecticants are built from the
//! normalized moments `a_i = c_i / binom(d, i)`, for which a power sum
//! `Σ λ_k (α_k x + β_k y)^d` has `a_i = Σ λ_k α_k^{d-i} β_k^i`.
//!
//! A kernel vector `k` of the level-`r` catalecticant defines the degree-`r`
//! form `g(s, t) = Σ_j k_j s^{r-j} t^j`; when `g` is square-free its roots are
//! the nodes `(α_k : β_k)` of a decomposition with `r` terms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::matrix::{nullspace_exact, Matrix};
use crate::sampling::{small_int, Rng64};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<BigRational>,
}

impl BinaryForm {
    /// From monomial coefficients of `x^d, x^{d-1} y, …, y^d`.
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("a binary form needs at least one coefficient"));
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Σ λ_k (α_k x + β_k y)^d` expanded into monomial coefficients.
    pub fn power_sum(degree: usize, terms: &[(BigRational, BigRational, BigRational)]) -> Self {
        let coeffs = (0..=degree)
            .map(|i| {
                let b = BigRational::from_integer(binomial(degree, i));
                terms.iter().fold(BigRational::zero(), |acc, (lambda, alpha, beta)| {
                    acc + lambda * pow(alpha, degree - i) * pow(beta, i)
                }) * b
            })
            .collect();
        BinaryForm { coeffs }
    }

    pub fn moments(&self) -> Vec<BigRational> {
        let d = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c / BigRational::from_integer(binomial(d, i)))
            .collect()
    }

    /// The `(d - r + 1) × (r + 1)` Hankel matrix `H[i][j] = a_{i+j}`.
    pub fn catalecticant(&self, r: usize) -> Result<Matrix<Rationals>> {
        let d = self.degree();
        if r > d {
            return Err(Error::invalid(format!("catalecticant level {r} above degree {d}")));
        }
        let a = self.moments();
        Ok(Matrix::from_fn(Rationals, d - r + 1, r + 1, |i, j| a[i + j].clone()))
    }

    /// Smallest level with a square-free apolar form, and that form.
    ///
    /// When the level-`r` kernel is more than one dimensional, its basis
    /// vectors are tried first, then seeded random combinations.
    pub fn apolar_witness(&self) -> Result<ApolarWitness> {
        if self.is_zero() {
            return Err(Error::invalid("the zero form has no Waring rank"));
        }
        let d = self.degree();
        for r in 1..=d {
            let kernel = nullspace_exact(&self.catalecticant(r)?);
            if kernel.is_empty() {
                continue;
            }
            if let Some(form) = square_free_member(&kernel, r as u64) {
                return Ok(ApolarWitness { rank: r, kernel_form: form });
            }
        }
        // Degree 0 forms land here; any nonzero constant is one 0-th power.
        Ok(ApolarWitness {
            rank: d.max(1),
            kernel_form: Vec::new(),
        })
    }
}

/// Kernel form certifying the Waring rank of a binary form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApolarWitness {
    pub rank: usize,
    /// Coefficients `k_j` of `g(s,t) = Σ k_j s^{r-j} t^j`.
    pub kernel_form: Vec<BigRational>,
}

fn square_free_member(kernel: &[Vec<BigRational>], seed: u64) -> Option<Vec<BigRational>> {
    for v in kernel {
        if is_square_free_binary(v) {
            return Some(v.clone());
        }
    }
    if kernel.len() == 1 {
        return None;
    }
    let mut rng = Rng64::new(0x5eed ^ seed);
    for _ in 0..64 {
        let mut combo = vec![BigRational::zero(); kernel[0].len()];
        for v in kernel {
            let c = BigRational::from_integer(small_int(&mut rng).into());
            for (x, y) in combo.iter_mut().zip(v) {
                *x += &c * y;
            }
        }
        if is_square_free_binary(&combo) {
            return Some(combo);
        }
    }
    None
}

/// Square-free test for `g(s,t) = Σ k_j s^{r-j} t^j`: the root `(1:0)` has
/// multiplicity equal to the number of leading zero coefficients, the
/// remaining roots are those of `p(s) = g(s, 1)`, tested by `gcd(p, p')`.
pub fn is_square_free_binary(k: &[BigRational]) -> bool {
    let lead_zeros = k.iter().take_while(|c| c.is_zero()).count();
    if lead_zeros == k.len() || lead_zeros > 1 {
        return false;
    }
    let p = dehomogenize(k);
    Poly::gcd(&p, &p.derivative()).degree() == Some(0)
}

/// `g(s, 1)` as a polynomial in `s` (ascending coefficients).
pub fn dehomogenize(k: &[BigRational]) -> Poly {
    let r = k.len() - 1;
    // coefficient of s^{r-j} is k_j
    Poly::new((0..=r).map(|e| k[r - e].clone()).collect())
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

pub(crate) fn pow(x: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

/// Univariate polynomial over the rationals, ascending coefficients,
/// without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<BigRational>);

impl Poly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    fn rem(&self, other: &Poly) -> Poly {
        let Some(dd) = other.degree() else {
            panic!("division by the zero polynomial");
        };
        let mut r = self.0.clone();
        let lead = other.0[dd].clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let q = &r[top] / &lead;
            for (i, c) in other.0.iter().enumerate() {
                let k = top - dd + i;
                r[k] = &r[k] - &q * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while b.degree().is_some() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.0.last().cloned() {
            Some(lead) => Poly::new(a.0.iter().map(|c| c / &lead).collect()),
            None => a,
        }
    }

    /// Distinct rational roots, by the rational root theorem on the
    /// integer-scaled polynomial. `None` if a coefficient is too large to
    /// enumerate divisors.
    pub fn rational_roots(&self) -> Option<Vec<BigRational>> {
        let deg = self.degree()?;
        let lcm = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let mut roots = Vec::new();
        let low = ints.iter().take_while(|c| c.is_zero()).count();
        if low > 0 {
            roots.push(BigRational::zero());
        }
        if low == deg {
            return Some(roots);
        }
        let constant = ints[low].abs().to_u64()?;
        let leading = ints[deg].abs().to_u64()?;
        const LIMIT: u64 = 1_000_000_000_000;
        if constant > LIMIT || leading > LIMIT {
            return None;
        }
        let (ps, qs) = (divisors(constant), divisors(leading));
        let mut cands: Vec<BigRational> = Vec::new();
        for p in &ps {
            for q in &qs {
                for sign in [1i64, -1] {
                    let c = BigRational::new(BigInt::from(*p) * sign, BigInt::from(*q));
                    if !cands.contains(&c) {
                        cands.push(c);
                    }
                }
            }
        }
        roots.extend(cands.into_iter().filter(|c| self.eval(c).is_zero()));
        roots.sort();
        Some(roots)
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub(crate) fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rational};

    #[test]
    fn catalecticant_of_sum_of_cubes() {
        let f = BinaryForm::from_i64(&[1, 0, 0, 1]).unwrap();
        let cat = f.catalecticant(2).unwrap();
        assert_eq!(cat, Matrix::from_i64(Rationals, &[&[1, 0, 0], &[0, 0, 1]]).unwrap());
        let w = f.apolar_witness().unwrap();
        assert_eq!(w.rank, 2);
        assert_eq!(w.kernel_form, vec![int(0), int(1), int(0)]);
    }

    #[test]
    fn powers_have_rank_one() {
        for d in 1..7 {
            let mut c = vec![0; d + 1];
            c[0] = 1;
            assert_eq!(BinaryForm::from_i64(&c).unwrap().apolar_witness().unwrap().rank, 1);
        }
    }

    #[test]
    fn tangential_forms_have_rank_degree() {
        // x^{d-1} y
        for d in 3..8 {
            let mut c = vec![0; d + 1];
            c[1] = 1;
            assert_eq!(BinaryForm::from_i64(&c).unwrap().apolar_witness().unwrap().rank, d);
        }
    }

    #[test]
    fn zero_form_rejected() {
        assert!(BinaryForm::from_i64(&[0, 0, 0]).unwrap().apolar_witness().is_err());
    }

    #[test]
    fn power_sum_expansion() {
        // (x + y)^3 + (x - y)^3 = 2x^3 + 6xy^2
        let f = BinaryForm::power_sum(
            3,
            &[(int(1), int(1), int(1)), (int(1), int(1), int(-1))],
        );
        assert_eq!(f, BinaryForm::from_i64(&[2, 0, 6, 0]).unwrap());
    }

    #[test]
    fn square_free_examples() {
        // s t
        assert!(is_square_free_binary(&[int(0), int(1), int(0)]));
        // t^2
        assert!(!is_square_free_binary(&[int(0), int(0), int(1)]));
        // s^2
        assert!(!is_square_free_binary(&[int(1), int(0), int(0)]));
        // (s - t)^2 = s^2 - 2st + t^2
        assert!(!is_square_free_binary(&[int(1), int(-2), int(1)]));
        // s^2 + t^2
        assert!(is_square_free_binary(&[int(1), int(0), int(1)]));
    }

    #[test]
    fn poly_gcd_and_roots() {
        // (s - 1)(s + 2)(2s - 1) = 2s^3 + s^2 - 5s + 2
        let p = Poly::new(vec![int(2), int(-5), int(1), int(2)]);
        assert_eq!(
            p.rational_roots().unwrap(),
            vec![int(-2), rational(1, 2), int(1)]
        );
        let g = Poly::gcd(&p, &Poly::new(vec![int(-1), int(1)]));
        assert_eq!(g, Poly::new(vec![int(-1), int(1)]));
        // s^2 + 1 has none
        assert!(Poly::new(vec![int(1), int(0), int(1)]).rational_roots().unwrap().is_empty());
        assert_eq!(
            Poly::new(vec![int(0), int(0), int(3)]).rational_roots().unwrap(),
            vec![int(0)]
        );
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(7, 0), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::from(0));
    }
}
