use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::Decomposition;
use crate::binary_form::{binomial, dehomogenize, pow, to_f64, BinaryForm, Poly};
use crate::error::{Error, Result};
use crate::field::{format_rational, Rationals};
use crate::matrix::{solve, Matrix};
use crate::tensor::Shape;

/// Relative residual accepted on the floating point path.
pub const FLOAT_RESIDUAL_TOL: f64 = 1e-8;

/// One term `λ (α x + β y)^d` with rational data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactTerm {
    pub coefficient: BigRational,
    pub alpha: BigRational,
    pub beta: BigRational,
}

/// One term `λ (α x + β y)^d` with complex data, stored as `[re, im]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FloatTerm {
    pub coefficient: [f64; 2],
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
}

/// A Waring decomposition `f = Σ λ_k (α_k x + β_k y)^d`.
#[derive(Clone, Debug, PartialEq)]
pub enum WaringDecomposition {
    /// All nodes rational; reconstruction is exact.
    Exact { degree: usize, terms: Vec<ExactTerm> },
    /// Some node is irrational; coefficients come from a least-squares fit.
    Float {
        degree: usize,
        terms: Vec<FloatTerm>,
        relative_residual: f64,
    },
}

impl WaringDecomposition {
    pub fn rank(&self) -> usize {
        match self {
            WaringDecomposition::Exact { terms, .. } => terms.len(),
            WaringDecomposition::Float { terms, .. } => terms.len(),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            WaringDecomposition::Exact { degree, .. } | WaringDecomposition::Float { degree, .. } => *degree,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, WaringDecomposition::Exact { .. })
    }

    /// `0` on the exact path.
    pub fn residual(&self) -> f64 {
        match self {
            WaringDecomposition::Exact { .. } => 0.0,
            WaringDecomposition::Float { relative_residual, .. } => *relative_residual,
        }
    }

    /// The exact power sum as a symmetric tensor decomposition, with `λ`
    /// absorbed into the first factor. `None` on the float path.
    pub fn to_tensor_decomposition(&self) -> Option<Decomposition<Rationals>> {
        let WaringDecomposition::Exact { degree, terms } = self else {
            return None;
        };
        let d = (*degree).max(1);
        let summands = terms
            .iter()
            .map(|t| {
                let v = vec![t.alpha.clone(), t.beta.clone()];
                let mut factors = vec![v.clone(); d];
                factors[0] = v.iter().map(|x| x * &t.coefficient).collect();
                factors
            })
            .collect();
        Decomposition::new(Rationals, Shape::new(vec![2; d]).ok()?, summands).ok()
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            WaringDecomposition::Exact { degree, terms } => serde_json::json!({
                "path": "exact",
                "degree": degree,
                "terms": terms.iter().map(|t| serde_json::json!({
                    "coefficient": format_rational(&t.coefficient),
                    "node": [format_rational(&t.alpha), format_rational(&t.beta)],
                })).collect::<Vec<_>>(),
                "residual": 0,
            }),
            WaringDecomposition::Float {
                degree,
                terms,
                relative_residual,
            } => serde_json::json!({
                "path": "float",
                "degree": degree,
                "terms": terms,
                "residual": relative_residual,
            }),
        }
    }
}

/// Decomposes a binary form as a sum of `r` powers of linear forms, where
/// `r` is its Waring rank from the catalecticant ladder. The nodes are the
/// roots of the square-free apolar form: exact when they are all rational,
/// otherwise from companion-matrix eigenvalues polished by Newton steps.
pub fn sylvester_decompose_binary(form: &BinaryForm) -> Result<WaringDecomposition> {
    let witness = form.apolar_witness()?;
    let d = form.degree();
    if d == 0 {
        return Ok(WaringDecomposition::Exact {
            degree: 0,
            terms: vec![ExactTerm {
                coefficient: form.coeffs()[0].clone(),
                alpha: BigRational::one(),
                beta: BigRational::zero(),
            }],
        });
    }
    let g = &witness.kernel_form;
    if g.is_empty() {
        return Err(Error::Unsupported(format!(
            "no square-free apolar form up to degree {d}: rank exceeds the generic bound"
        )));
    }
    let at_infinity = g[0].is_zero();
    let p = dehomogenize(g);
    let finite_roots = p.degree().unwrap_or(0);

    if let Some(roots) = p.rational_roots().filter(|r| r.len() == finite_roots) {
        let mut nodes: Vec<(BigRational, BigRational)> = Vec::new();
        if at_infinity {
            nodes.push((BigRational::one(), BigRational::zero()));
        }
        nodes.extend(roots.into_iter().map(|s| (s, BigRational::one())));
        return exact_coefficients(form, nodes);
    }
    float_decomposition(form, &p, at_infinity)
}

fn exact_coefficients(
    form: &BinaryForm,
    nodes: Vec<(BigRational, BigRational)>,
) -> Result<WaringDecomposition> {
    let d = form.degree();
    let a = form.moments();
    let v = Matrix::from_fn(Rationals, d + 1, nodes.len(), |m, i| {
        pow(&nodes[i].0, d - m) * pow(&nodes[i].1, m)
    });
    let lambda = solve(&v, &a).ok_or_else(|| {
        Error::Unsupported("apolar nodes do not reproduce the form".to_string())
    })?;
    let terms = nodes
        .into_iter()
        .zip(lambda)
        .map(|((alpha, beta), coefficient)| ExactTerm {
            coefficient,
            alpha,
            beta,
        })
        .collect();
    Ok(WaringDecomposition::Exact { degree: d, terms })
}

fn float_decomposition(form: &BinaryForm, p: &Poly, at_infinity: bool) -> Result<WaringDecomposition> {
    let d = form.degree();
    let pc: Vec<f64> = p.coeffs().iter().map(to_f64).collect();
    let mut nodes: Vec<(Complex64, Complex64)> = Vec::new();
    if at_infinity {
        nodes.push((Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)));
    }
    for s in polish_roots(&pc, &companion_roots(&pc)) {
        // unit-norm nodes keep the power matrix well conditioned
        let scale = (1.0 + s.norm_sqr()).sqrt();
        nodes.push((s / scale, Complex64::new(1.0 / scale, 0.0)));
    }

    let target: Vec<f64> = form.coeffs().iter().map(to_f64).collect();
    let weights: Vec<f64> = (0..=d).map(|m| to_f64(&BigRational::from_integer(binomial(d, m)))).collect();
    let v = DMatrix::from_fn(d + 1, nodes.len(), |m, i| {
        nodes[i].0.powu((d - m) as u32) * nodes[i].1.powu(m as u32) * weights[m]
    });
    let b = DVector::from_iterator(d + 1, target.iter().map(|&x| Complex64::new(x, 0.0)));
    let lambda = v
        .clone()
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| Error::Unsupported(format!("least-squares solve failed: {e}")))?;
    let norm = b.norm();
    let relative_residual = (&v * &lambda - &b).norm() / if norm > 0.0 { norm } else { 1.0 };
    if !relative_residual.is_finite() || relative_residual > FLOAT_RESIDUAL_TOL {
        return Err(Error::Unsupported(format!(
            "float decomposition residual {relative_residual:e} exceeds {FLOAT_RESIDUAL_TOL:e}"
        )));
    }
    let pair = |z: Complex64| [z.re, z.im];
    let terms = nodes
        .iter()
        .zip(lambda.iter())
        .map(|(&(a, b), &c)| FloatTerm {
            coefficient: pair(c),
            alpha: pair(a),
            beta: pair(b),
        })
        .collect();
    Ok(WaringDecomposition::Float {
        degree: d,
        terms,
        relative_residual,
    })
}

/// Eigenvalues of the companion matrix of `Σ c_i s^i` (ascending).
fn companion_roots(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let m = DMatrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -c[i] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    m.complex_eigenvalues().iter().copied().collect()
}

fn polish_roots(c: &[f64], roots: &[Complex64]) -> Vec<Complex64> {
    let eval = |z: Complex64| {
        c.iter().rev().fold((Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)), |(p, dp), &a| {
            (p * z + a, dp * z + p)
        })
    };
    roots
        .iter()
        .map(|&z0| {
            let mut z = z0;
            for _ in 0..50 {
                let (p, dp) = eval(z);
                if dp.norm() == 0.0 {
                    break;
                }
                let step = p / dp;
                z -= step;
                if step.norm() <= 1e-16 * z.norm().max(1.0) {
                    break;
                }
            }
            z
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::int;
    use crate::sampling::{small_int, Rng64};

    fn reconstruct_exact(w: &WaringDecomposition) -> BinaryForm {
        let WaringDecomposition::Exact { degree, terms } = w else {
            panic!("expected exact path")
        };
        let t: Vec<_> = terms
            .iter()
            .map(|t| (t.coefficient.clone(), t.alpha.clone(), t.beta.clone()))
            .collect();
        BinaryForm::power_sum(*degree, &t)
    }

    #[test]
    fn sum_of_cubes() {
        let f = BinaryForm::from_i64(&[1, 0, 0, 1]).unwrap();
        let w = sylvester_decompose_binary(&f).unwrap();
        assert_eq!(w.rank(), 2);
        assert_eq!(reconstruct_exact(&w), f);
        let WaringDecomposition::Exact { terms, .. } = &w else { unreachable!() };
        assert_eq!((terms[0].alpha.clone(), terms[0].beta.clone()), (int(1), int(0)));
        assert_eq!((terms[1].alpha.clone(), terms[1].beta.clone()), (int(0), int(1)));
    }

    #[test]
    fn sum_of_cubes_rotated() {
        // (x+y)^3 + (x-y)^3 = 2x^3 + 6xy^2
        let f = BinaryForm::from_i64(&[2, 0, 6, 0]).unwrap();
        let w = sylvester_decompose_binary(&f).unwrap();
        assert_eq!(w.rank(), 2);
        assert_eq!(reconstruct_exact(&w), f);
        let WaringDecomposition::Exact { terms, .. } = &w else { unreachable!() };
        let mut nodes: Vec<_> = terms.iter().map(|t| t.alpha.clone() / t.beta.clone()).collect();
        nodes.sort();
        assert_eq!(nodes, vec![int(-1), int(1)]);
    }

    #[test]
    fn pure_power() {
        for d in 1..=6 {
            let mut c = vec![0; d + 1];
            c[0] = 1;
            let w = sylvester_decompose_binary(&BinaryForm::from_i64(&c).unwrap()).unwrap();
            let WaringDecomposition::Exact { terms, .. } = &w else { panic!() };
            assert_eq!(terms.len(), 1);
            assert_eq!(terms[0].coefficient, int(1));
            assert_eq!((terms[0].alpha.clone(), terms[0].beta.clone()), (int(1), int(0)));
        }
    }

    #[test]
    fn random_forms_reconstruct() {
        let mut rng = Rng64::new(17);
        for d in [3usize, 4, 5, 6, 7] {
            for _ in 0..5 {
                let c: Vec<i64> = (0..=d).map(|_| small_int(&mut rng)).collect();
                let f = BinaryForm::from_i64(&c).unwrap();
                if f.is_zero() {
                    continue;
                }
                let w = sylvester_decompose_binary(&f).unwrap_or_else(|e| panic!("{c:?} {e} {:?}", f.apolar_witness()));
                if w.is_exact() {
                    assert_eq!(reconstruct_exact(&w), f);
                } else {
                    assert!(w.residual() <= FLOAT_RESIDUAL_TOL);
                }
            }
        }
    }

    #[test]
    fn tensor_decomposition_is_symmetric_tensor_of_form() {
        let f = BinaryForm::from_i64(&[2, 0, 6, 0]).unwrap();
        let w = sylvester_decompose_binary(&f).unwrap();
        let t = w.to_tensor_decomposition().unwrap().reconstruct();
        assert!(t.is_symmetric());
        // entry with m copies of index 1 is the moment a_m
        let a = f.moments();
        for idx in 0..8 {
            let m = (idx as u32).count_ones() as usize;
            assert_eq!(t.data()[idx], a[m]);
        }
    }

    #[test]
    fn json_uses_rational_strings() {
        let f = BinaryForm::new(vec![crate::field::rational(1, 2), int(0), int(0)]).unwrap();
        let w = sylvester_decompose_binary(&f).unwrap();
        let j = w.to_json();
        assert_eq!(j["terms"][0]["coefficient"], "1/2");
    }
}
