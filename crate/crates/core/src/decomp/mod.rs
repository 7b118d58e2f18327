//! Decomposition-level tests: the symmetry lemma for decompositions of
//! symmetric tensors, Kruskal's uniqueness condition, apolar (Sylvester)
//! decompositions of binary forms, and direct-sum rank experiments.

mod gross;
mod kruskal;
mod strassen;
mod sylvester;

pub use gross::{gross_check, gross_minimality_check, GrossReport, GrossVerdict, SubsetCheck};
pub use kruskal::{kruskal_rank, kruskal_uniqueness, MAX_KRUSKAL_COLUMNS};
pub use strassen::{direct_sum, strassen_experiment, StrassenRecord};
pub use sylvester::{sylvester_decompose_binary, ExactTerm, FloatTerm, WaringDecomposition};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::tensor::{rank_one, DenseTensor, Shape};

/// An ordered list of rank-one summands, each given by its factor vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<F: Field> {
    field: F,
    shape: Shape,
    summands: Vec<Vec<Vec<F::Elem>>>,
}

impl<F: Field> Decomposition<F> {
    pub fn new(field: F, shape: Shape, summands: Vec<Vec<Vec<F::Elem>>>) -> Result<Self> {
        for (i, s) in summands.iter().enumerate() {
            if s.len() != shape.order() {
                return Err(Error::dim(format!(
                    "summand {i} has {} factors, shape has {}",
                    s.len(),
                    shape.order()
                )));
            }
            for (k, v) in s.iter().enumerate() {
                if v.len() != shape.dims()[k] {
                    return Err(Error::dim(format!(
                        "summand {i} factor {k} has length {}, expected {}",
                        v.len(),
                        shape.dims()[k]
                    )));
                }
                if v.iter().all(|x| field.is_zero(x)) {
                    return Err(Error::invalid(format!("summand {i} factor {k} is zero")));
                }
            }
        }
        Ok(Decomposition {
            field,
            shape,
            summands,
        })
    }

    /// Infers the shape from the first summand.
    pub fn from_summands(field: F, summands: Vec<Vec<Vec<F::Elem>>>) -> Result<Self> {
        let first = summands
            .first()
            .ok_or_else(|| Error::invalid("cannot infer a shape from zero summands"))?;
        let shape = Shape::new(first.iter().map(Vec::len).collect())?;
        Self::new(field, shape, summands)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn shape(&self) -> &Shape {
        &self.shape
    }
    pub fn summands(&self) -> &[Vec<Vec<F::Elem>>] {
        &self.summands
    }
    pub fn len(&self) -> usize {
        self.summands.len()
    }
    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }
    pub fn order(&self) -> usize {
        self.shape.order()
    }

    pub fn summand_tensor(&self, i: usize) -> DenseTensor<F> {
        rank_one(&self.field, &self.summands[i]).expect("factors validated on construction")
    }

    /// `Σ_i a_i^{(1)} ⊗ … ⊗ a_i^{(d)}`.
    pub fn reconstruct(&self) -> DenseTensor<F> {
        (0..self.len()).fold(
            DenseTensor::zeros(self.field.clone(), self.shape.clone()),
            |acc, i| acc.add(&self.summand_tensor(i)).expect("same shape"),
        )
    }

    /// Matrix whose `i`-th column is `a_i^{(k)}`.
    pub fn factor_matrix(&self, k: usize) -> Matrix<F> {
        let cols: Vec<Vec<F::Elem>> = self.summands.iter().map(|s| s[k].clone()).collect();
        Matrix::from_columns(self.field.clone(), self.shape.dims()[k], &cols)
            .expect("factor lengths validated")
    }

    /// `⊗_{j ∈ positions} a_i^{(j)}` flattened to a vector, for each `i`.
    pub fn projection(&self, positions: &[usize]) -> Vec<Vec<F::Elem>> {
        self.summands
            .iter()
            .map(|s| {
                let factors: Vec<Vec<F::Elem>> = positions.iter().map(|&j| s[j].clone()).collect();
                rank_one(&self.field, &factors)
                    .expect("nonzero factors")
                    .into_data()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, Rationals};

    #[test]
    fn validation_and_reconstruction() {
        let v = |a: i64, b: i64| vec![int(a), int(b)];
        let d = Decomposition::from_summands(
            Rationals,
            vec![vec![v(1, 0), v(1, 0)], vec![v(0, 1), v(0, 1)]],
        )
        .unwrap();
        assert_eq!(d.reconstruct().data(), &[int(1), int(0), int(0), int(1)]);
        assert_eq!(d.factor_matrix(0), Matrix::identity(Rationals, 2));
        assert_eq!(d.projection(&[1]), vec![v(1, 0), v(0, 1)]);
        assert!(Decomposition::from_summands(Rationals, vec![vec![v(0, 0), v(1, 0)]]).is_err());
        assert!(Decomposition::from_summands(Rationals, vec![vec![v(1, 0)], vec![v(1, 0), v(1, 1)]]).is_err());
    }
}
