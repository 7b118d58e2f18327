//! Computable rank notions: flattening rank, multilinear rank, the
//! flattening lower bound for border rank, exhaustive rank over tiny prime
//! fields, the W-state family, and the Waring rank of binary forms.
//!
//! Results over `F_p` are rank over `F_p`; they are never presented as rank
//! over the rationals or complexes.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::binary_form::{ApolarWitness, BinaryForm};
use crate::decomp::Decomposition;
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Ring};
use crate::tensor::{Bipartition, DenseTensor, Shape};

/// Rank of `t` flattened along `b`.
pub fn f_rank<F: Field>(t: &DenseTensor<F>, b: &Bipartition) -> Result<usize> {
    Ok(t.flatten(b)?.rank())
}

/// Per-factor ranks `(r_1, …, r_n)`: the smallest subspace dimensions with
/// `T ∈ A_1 ⊗ … ⊗ A_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultilinearRank(pub Vec<usize>);

impl MultilinearRank {
    pub fn ranks(&self) -> &[usize] {
        &self.0
    }
}

pub fn multilinear_rank<F: Field>(t: &DenseTensor<F>) -> MultilinearRank {
    if t.order() == 1 {
        return MultilinearRank(vec![usize::from(!t.is_zero())]);
    }
    MultilinearRank(
        (0..t.order())
            .map(|i| t.mode_flattening(i).expect("valid mode").rank())
            .collect(),
    )
}

/// Largest flattening rank over all bipartitions.
pub fn border_rank_lower_bound<F: Field>(t: &DenseTensor<F>) -> usize {
    if t.order() == 1 {
        return usize::from(!t.is_zero());
    }
    Bipartition::all(t.order())
        .iter()
        .map(|b| f_rank(t, b).expect("bipartition matches order"))
        .max()
        .unwrap_or(0)
}

/// Largest `r_max` accepted by the exhaustive search.
pub const MAX_BRUTEFORCE_RANK: usize = 4;
/// Largest number of tensor entries accepted by the exhaustive search.
pub const MAX_BRUTEFORCE_ENTRIES: usize = 64;
/// Cap on the number of rank-one candidates when `r_max <= 2`.
pub const RANK_ONE_CAP: u128 = 1_000_000;
/// Cap on the number of unordered candidate pairs when `r_max >= 3`.
pub const PAIR_CAP: u128 = 6_000_000;

/// Outcome of the exhaustive search over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruteForceRank {
    pub modulus: u32,
    /// `None` means every `r <= r_max` was refuted.
    pub rank: Option<usize>,
    pub r_max: usize,
    /// Factor vectors of a decomposition attaining `rank`.
    pub witness: Option<Vec<Vec<Vec<u32>>>>,
    /// Number of normalized rank-one tensors enumerated.
    pub candidates: u64,
}

impl BruteForceRank {
    pub fn exceeds(&self) -> bool {
        self.rank.is_none()
    }
}

/// Normalized rank-one tensors of a shape over `F_p`: factors before the
/// last are projective points (first nonzero coordinate 1), the last factor
/// is any nonzero vector and absorbs the scale. Each nonzero rank-one tensor
/// appears exactly once.
struct RankOneCatalog {
    p: u8,
    shape: Shape,
    factor_lists: Vec<Vec<Vec<u8>>>,
    tensors: Vec<Vec<u8>>,
}

fn projective_points(p: u8, d: usize) -> Vec<Vec<u8>> {
    all_vectors(p, d)
        .into_iter()
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .collect()
}

fn nonzero_vectors(p: u8, d: usize) -> Vec<Vec<u8>> {
    all_vectors(p, d)
        .into_iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect()
}

fn all_vectors(p: u8, d: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn catalog_size(p: u128, dims: &[usize]) -> u128 {
    let n = dims.len();
    dims.iter().enumerate().fold(1u128, |acc, (k, &d)| {
        let pd = p.saturating_pow(d as u32);
        let count = if k + 1 == n { pd - 1 } else { (pd - 1) / (p - 1) };
        acc.saturating_mul(count)
    })
}

impl RankOneCatalog {
    fn build(p: u8, shape: &Shape) -> Self {
        let n = shape.order();
        let factor_lists: Vec<Vec<Vec<u8>>> = shape
            .dims()
            .iter()
            .enumerate()
            .map(|(k, &d)| {
                if k + 1 == n {
                    nonzero_vectors(p, d)
                } else {
                    projective_points(p, d)
                }
            })
            .collect();
        let mut tensors = vec![vec![1u8]];
        for list in &factor_lists {
            tensors = tensors
                .into_iter()
                .flat_map(|t| {
                    list.iter().map(move |v| {
                        t.iter()
                            .flat_map(|&a| v.iter().map(move |&b| ((a as u16 * b as u16) % p as u16) as u8))
                            .collect::<Vec<u8>>()
                    })
                })
                .collect();
        }
        RankOneCatalog {
            p,
            shape: shape.clone(),
            factor_lists,
            tensors,
        }
    }

    fn factors(&self, mut index: usize) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.factor_lists.len()];
        for (k, list) in self.factor_lists.iter().enumerate().rev() {
            out[k] = list[index % list.len()].iter().map(|&x| x as u32).collect();
            index /= list.len();
        }
        out
    }

    fn key(&self, v: &[u8]) -> u128 {
        v.iter().fold(0u128, |acc, &x| acc * self.p as u128 + x as u128)
    }

    fn minus(&self, t: &[u8], a: &[u8]) -> Vec<u8> {
        t.iter().zip(a).map(|(&x, &y)| (x + self.p - y) % self.p).collect()
    }
}

/// Smallest `r <= r_max` such that `t` is a sum of `r` rank-one tensors over
/// `F_p`, found by exhaustive enumeration of normalized factor vectors.
///
/// Levels 3 and 4 use a meet-in-the-middle table of rank-one tensors and of
/// their pairwise sums. Refuses with [`Error::CapExceeded`] when the table
/// for `r_max` would be too large.
pub fn exact_rank_bruteforce(t: &DenseTensor<PrimeField>, r_max: usize) -> Result<BruteForceRank> {
    let p = t.field().modulus();
    if ![2, 3, 5].contains(&p) {
        return Err(Error::invalid(format!(
            "exhaustive rank search needs p in {{2, 3, 5}}, got {p}"
        )));
    }
    let entries = t.shape().volume();
    if entries > MAX_BRUTEFORCE_ENTRIES {
        return Err(Error::invalid(format!(
            "{entries} entries exceeds the {MAX_BRUTEFORCE_ENTRIES}-entry limit"
        )));
    }
    if r_max > MAX_BRUTEFORCE_RANK {
        return Err(Error::invalid(format!(
            "r_max {r_max} exceeds {MAX_BRUTEFORCE_RANK}"
        )));
    }
    let size = catalog_size(p as u128, t.dims());
    if r_max >= 3 {
        let pairs = size.saturating_mul(size.saturating_add(1)) / 2;
        if pairs > PAIR_CAP {
            return Err(Error::cap("rank-one pair table", pairs, PAIR_CAP));
        }
    } else if size > RANK_ONE_CAP {
        return Err(Error::cap("rank-one catalog", size, RANK_ONE_CAP));
    }

    let target: Vec<u8> = t.data().iter().map(|&x| x as u8).collect();
    let mut out = BruteForceRank {
        modulus: p,
        rank: None,
        r_max,
        witness: None,
        candidates: size as u64,
    };
    if target.iter().all(|&x| x == 0) {
        out.rank = Some(0);
        out.witness = Some(Vec::new());
        return Ok(out);
    }
    if r_max == 0 {
        return Ok(out);
    }
    let cat = RankOneCatalog::build(p as u8, t.shape());
    let n = cat.tensors.len();
    let singles: HashMap<u128, usize> = cat
        .tensors
        .iter()
        .enumerate()
        .map(|(i, v)| (cat.key(v), i))
        .collect();
    let single_of = |v: &[u8]| singles.get(&cat.key(v)).copied();

    let found: Option<Vec<usize>> = 'search: {
        if let Some(i) = single_of(&target) {
            break 'search Some(vec![i]);
        }
        if r_max >= 2 {
            let hit = (0..n).into_par_iter().find_first(|&i| {
                single_of(&cat.minus(&target, &cat.tensors[i])).is_some()
            });
            if let Some(i) = hit {
                let j = single_of(&cat.minus(&target, &cat.tensors[i])).expect("found above");
                break 'search Some(vec![i, j]);
            }
        }
        if r_max >= 3 {
            let hit = (0..n).into_par_iter().find_map_first(|i| {
                let rest = cat.minus(&target, &cat.tensors[i]);
                (i..n).find_map(|j| {
                    single_of(&cat.minus(&rest, &cat.tensors[j])).map(|k| vec![i, j, k])
                })
            });
            if hit.is_some() {
                break 'search hit;
            }
        }
        if r_max >= 4 {
            let mut pair_keys: Vec<u128> = (0..n)
                .into_par_iter()
                .flat_map_iter(|i| {
                    let cat = &cat;
                    (i..n).map(move |j| {
                        let s: Vec<u8> = cat.tensors[i]
                            .iter()
                            .zip(&cat.tensors[j])
                            .map(|(&a, &b)| (a + b) % cat.p)
                            .collect();
                        cat.key(&s)
                    })
                })
                .collect();
            pair_keys.par_sort_unstable();
            pair_keys.dedup();
            let hit = (0..n).into_par_iter().find_map_first(|i| {
                let rest = cat.minus(&target, &cat.tensors[i]);
                (i..n).find_map(|j| {
                    let rest2 = cat.minus(&rest, &cat.tensors[j]);
                    pair_keys.binary_search(&cat.key(&rest2)).ok().map(|_| {
                        // split the remaining pair sum
                        let (k, l) = (0..n)
                            .find_map(|k| {
                                single_of(&cat.minus(&rest2, &cat.tensors[k])).map(|l| (k, l))
                            })
                            .expect("pair sum decomposes");
                        vec![i, j, k, l]
                    })
                })
            });
            if hit.is_some() {
                break 'search hit;
            }
        }
        None
    };

    if let Some(idx) = found {
        out.rank = Some(idx.len());
        out.witness = Some(idx.into_iter().map(|i| cat.factors(i)).collect());
    }
    debug_assert_eq!(cat.shape, *t.shape());
    Ok(out)
}

/// `Σ_k x ⊗ … ⊗ y ⊗ … ⊗ x` (`y` in position `k`) with `x = e_1`, `y = e_2`.
pub fn w_state<F: Field>(field: &F, n: usize) -> Result<DenseTensor<F>> {
    if n < 2 {
        return Err(Error::invalid("the W-state needs at least two factors"));
    }
    let shape = Shape::new(vec![2; n])?;
    Ok(DenseTensor::from_fn(field.clone(), shape, |idx| {
        if idx.iter().sum::<usize>() == 1 {
            field.one()
        } else {
            field.zero()
        }
    }))
}

/// The defining `n`-term decomposition of the W-state, an upper-bound
/// certificate `rank <= n`.
pub fn w_state_decomposition<F: Field>(field: &F, n: usize) -> Result<Decomposition<F>> {
    if n < 2 {
        return Err(Error::invalid("the W-state needs at least two factors"));
    }
    let x = vec![field.one(), field.zero()];
    let y = vec![field.zero(), field.one()];
    let summands = (0..n)
        .map(|k| (0..n).map(|j| if j == k { y.clone() } else { x.clone() }).collect())
        .collect();
    Decomposition::new(field.clone(), Shape::new(vec![2; n])?, summands)
}

/// Waring rank of a binary form by the catalecticant ladder: the smallest
/// `r` whose catalecticant kernel contains a square-free form.
pub fn sylvester_symmetric_rank_binary(form: &BinaryForm) -> Result<usize> {
    Ok(sylvester_witness(form)?.rank)
}

pub fn sylvester_witness(form: &BinaryForm) -> Result<ApolarWitness> {
    form.apolar_witness()
}

/// Field tag attached to every rank value reported by this module.
pub fn rank_field_tag<F: Field>(t: &DenseTensor<F>) -> Ring {
    t.ring()
}
