use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::rank::exact_rank_bruteforce;
use crate::tensor::{DenseTensor, Shape};

/// Block-diagonal embedding of `t1 ⊕ t2` in
/// `(A_1 ⊕ A_2) ⊗ (B_1 ⊕ B_2) ⊗ (C_1 ⊕ C_2)`.
pub fn direct_sum<F: Field>(t1: &DenseTensor<F>, t2: &DenseTensor<F>) -> Result<DenseTensor<F>> {
    if t1.order() != t2.order() {
        return Err(Error::dim("direct sum of tensors with different orders"));
    }
    if t1.field() != t2.field() {
        return Err(Error::RingMismatch(format!("{} vs {}", t1.ring(), t2.ring())));
    }
    let (d1, d2) = (t1.dims(), t2.dims());
    let dims: Vec<usize> = d1.iter().zip(d2).map(|(a, b)| a + b).collect();
    let f = t1.field().clone();
    Ok(DenseTensor::from_fn(f.clone(), Shape::new(dims)?, |idx| {
        if idx.iter().zip(d1).all(|(&i, &d)| i < d) {
            t1.get(idx).clone()
        } else if idx.iter().zip(d1).all(|(&i, &d)| i >= d) {
            let local: Vec<usize> = idx.iter().zip(d1).map(|(&i, &d)| i - d).collect();
            t2.get(&local).clone()
        } else {
            f.zero()
        }
    }))
}

/// Ranks over `F_p` of two tensors and of their direct sum. `None` means
/// the rank exceeds `r_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrassenRecord {
    pub modulus: u32,
    pub r_max: usize,
    pub r1: Option<usize>,
    pub r2: Option<usize>,
    pub r_sum: Option<usize>,
    /// `Some(r_sum == r1 + r2)` when all three ranks were determined.
    pub additive: Option<bool>,
}

pub fn strassen_experiment(
    t1: &DenseTensor<PrimeField>,
    t2: &DenseTensor<PrimeField>,
    r_max: usize,
) -> Result<StrassenRecord> {
    if t1.order() != 3 || t2.order() != 3 {
        return Err(Error::invalid("the direct-sum experiment takes 3-factor tensors"));
    }
    let sum = direct_sum(t1, t2)?;
    let r1 = exact_rank_bruteforce(t1, r_max)?.rank;
    let r2 = exact_rank_bruteforce(t2, r_max)?.rank;
    let r_sum = exact_rank_bruteforce(&sum, r_max)?.rank;
    if let (Some(a), Some(b)) = (r1, r2) {
        if a + b <= r_max {
            let s = r_sum.expect("the two witnesses give a decomposition within r_max");
            assert!(s <= a + b, "direct sum rank {s} exceeds {a} + {b}");
        }
    }
    let additive = match (r1, r2, r_sum) {
        (Some(a), Some(b), Some(s)) => Some(s == a + b),
        _ => None,
    };
    Ok(StrassenRecord {
        modulus: t1.field().modulus(),
        r_max,
        r1,
        r2,
        r_sum,
        additive,
    })
}
