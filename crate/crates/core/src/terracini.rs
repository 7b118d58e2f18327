//! Secant variety dimensions by Terracini's lemma.
//!
//! The affine cone over `σ_r(X)` has, at a generic point, tangent space
//! equal to the span of the tangent spaces of `X̂` at `r` generic points. We
//! sample `r` random integer points, stack spanning sets of their tangent
//! spaces and take the exact rank. A sample can only under-report, so the
//! maximum over trials is a certified lower bound that is exact with
//! probability one.
//!
//! Symmetric varieties live in `S^d V` (or products of such), so their
//! tangent vectors are restricted to the coordinates at multi-indices that
//! are non-decreasing within each symmetric block.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::binary_form::binomial;
use crate::error::{Error, Result};
use crate::field::{int, Field, Rationals};
use crate::matrix::Matrix;
use crate::sampling::{small_int, Rng64};
use crate::tensor::{rank_one, DenseTensor, Shape};

/// Largest ambient dimension accepted.
pub const MAX_AMBIENT: usize = 20_000;
/// Largest dense tensor materialized while building tangent vectors.
pub const MAX_DENSE_VOLUME: usize = 1 << 20;
/// Attempts at drawing a point with nonzero factors before giving up.
pub const MAX_RESAMPLES: usize = 10;
pub const DEFAULT_TRIALS: usize = 3;

/// The variety `X` whose secants are measured.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VarietySpec {
    /// `Seg(PV_1 × … × PV_n)`.
    Segre { dims: Vec<usize> },
    /// `v_d(PV)` with `dim V = n`.
    Veronese { n: usize, d: usize },
    /// Products of Veronese embeddings, block `i` of degree `degrees[i]`.
    SegreVeronese { dims: Vec<usize>, degrees: Vec<usize> },
    /// `Sub_{r_1,…,r_n} ⊂ P(V_1 ⊗ … ⊗ V_n)`.
    Subspace { dims: Vec<usize>, ranks: Vec<usize> },
    /// `Sub_r(S^d V)`: symmetric tensors in `S^d A` for some `r`-dimensional `A ⊂ V`.
    SymSubspace { dim: usize, r: usize, d: usize },
}

impl VarietySpec {
    pub fn segre(dims: &[usize]) -> Self {
        VarietySpec::Segre { dims: dims.to_vec() }
    }

    pub fn veronese(n: usize, d: usize) -> Self {
        VarietySpec::Veronese { n, d }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: &[usize], what: &str| {
            if v.is_empty() || v.contains(&0) {
                Err(Error::invalid(format!("{what} must be a nonempty list of positive values")))
            } else {
                Ok(())
            }
        };
        match self {
            VarietySpec::Segre { dims } => positive(dims, "segre dims")?,
            VarietySpec::Veronese { n, d } => positive(&[*n, *d], "veronese n and d")?,
            VarietySpec::SegreVeronese { dims, degrees } => {
                positive(dims, "segre-veronese dims")?;
                positive(degrees, "segre-veronese degrees")?;
                if dims.len() != degrees.len() {
                    return Err(Error::invalid("segre-veronese needs one degree per factor"));
                }
            }
            VarietySpec::Subspace { dims, ranks } => {
                positive(dims, "subspace dims")?;
                positive(ranks, "subspace ranks")?;
                if dims.len() != ranks.len() {
                    return Err(Error::invalid("subspace variety needs one rank per factor"));
                }
                if ranks.iter().zip(dims).any(|(r, d)| r > d) {
                    return Err(Error::invalid("subspace ranks must not exceed the dims"));
                }
                if ranks.len() > 1 {
                    for (i, &ri) in ranks.iter().enumerate() {
                        let others: usize = ranks.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, r)| r).product();
                        if ri > others {
                            return Err(Error::invalid(format!(
                                "subspace rank r_{} = {ri} exceeds the product {others} of the others",
                                i + 1
                            )));
                        }
                    }
                }
            }
            VarietySpec::SymSubspace { dim, r, d } => {
                positive(&[*dim, *r, *d], "symmetric subspace dim, r and d")?;
                if r > dim {
                    return Err(Error::invalid("symmetric subspace rank exceeds the dim"));
                }
            }
        }
        let volume = self.dense_shape_dims().iter().try_fold(1usize, |acc, &d| acc.checked_mul(d));
        if self.dense_shape_dims().len() > crate::tensor::MAX_FACTORS {
            return Err(Error::invalid("too many tensor factors"));
        }
        match volume {
            Some(v) if v <= MAX_DENSE_VOLUME => {}
            _ => {
                return Err(Error::cap(
                    "dense tangent tensor volume",
                    volume.map_or(u128::MAX, |v| v as u128),
                    MAX_DENSE_VOLUME as u128,
                ))
            }
        }
        let ambient = self.ambient_dim();
        if ambient > MAX_AMBIENT {
            return Err(Error::cap("ambient dimension", ambient as u128, MAX_AMBIENT as u128));
        }
        Ok(())
    }

    /// Factor dims of the dense tensors carrying points of `X`, with the
    /// symmetric blocks (first position, block length) alongside.
    fn dense_layout(&self) -> (Vec<usize>, Vec<(usize, usize)>) {
        let mut dims = Vec::new();
        let mut blocks = Vec::new();
        let mut push = |n: usize, d: usize| {
            blocks.push((dims.len(), d));
            dims.extend(std::iter::repeat(n).take(d));
        };
        match self {
            VarietySpec::Segre { dims: ds } | VarietySpec::Subspace { dims: ds, .. } => {
                for &n in ds {
                    push(n, 1);
                }
            }
            VarietySpec::Veronese { n, d } => push(*n, *d),
            VarietySpec::SegreVeronese { dims: ds, degrees } => {
                for (&n, &d) in ds.iter().zip(degrees) {
                    push(n, d);
                }
            }
            VarietySpec::SymSubspace { dim, d, .. } => push(*dim, *d),
        }
        (dims, blocks)
    }

    fn dense_shape_dims(&self) -> Vec<usize> {
        self.dense_layout().0
    }

    /// Dimension of the linear span of `X̂`.
    pub fn ambient_dim(&self) -> usize {
        let sym = |n: usize, d: usize| binom_usize(n + d - 1, d);
        match self {
            VarietySpec::Segre { dims } | VarietySpec::Subspace { dims, .. } => dims.iter().product(),
            VarietySpec::Veronese { n, d } => sym(*n, *d),
            VarietySpec::SegreVeronese { dims, degrees } => {
                dims.iter().zip(degrees).map(|(&n, &d)| sym(n, d)).product()
            }
            VarietySpec::SymSubspace { dim, d, .. } => sym(*dim, *d),
        }
    }

    /// Dimension of the affine cone `X̂`.
    pub fn cone_dim(&self) -> usize {
        match self {
            VarietySpec::Segre { dims } | VarietySpec::SegreVeronese { dims, .. } => {
                1 + dims.iter().map(|d| d - 1).sum::<usize>()
            }
            VarietySpec::Veronese { n, .. } => *n,
            VarietySpec::Subspace { dims, ranks } => {
                ranks.iter().product::<usize>()
                    + dims.iter().zip(ranks).map(|(d, r)| r * (d - r)).sum::<usize>()
            }
            VarietySpec::SymSubspace { dim, r, d } => binom_usize(r + d - 1, *d) + r * (dim - r),
        }
    }

    /// `min(r · dim X̂, ambient)`.
    pub fn expected_dim(&self, r: usize) -> usize {
        (r * self.cone_dim()).min(self.ambient_dim())
    }

    /// Flat indices (in the dense layout) of the canonical coordinates.
    fn coordinates(&self) -> Vec<usize> {
        let (dims, blocks) = self.dense_layout();
        let shape = Shape::new(dims).expect("validated spec");
        (0..shape.volume())
            .filter(|&flat| {
                let idx = shape.multi_index(flat);
                blocks
                    .iter()
                    .all(|&(start, len)| idx[start..start + len].windows(2).all(|w| w[0] <= w[1]))
            })
            .collect()
    }
}

fn binom_usize(n: usize, k: usize) -> usize {
    usize::try_from(binomial(n, k)).unwrap_or(usize::MAX)
}

fn list(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietySpec::Segre { dims } => write!(f, "segre:{}", list(dims)),
            VarietySpec::Veronese { n, d } => write!(f, "veronese:{n},{d}"),
            VarietySpec::SegreVeronese { dims, degrees } => write!(f, "segver:{}@{}", list(dims), list(degrees)),
            VarietySpec::Subspace { dims, ranks } => write!(f, "sub:{}@{}", list(dims), list(ranks)),
            VarietySpec::SymSubspace { dim, r, d } => write!(f, "symsub:{dim},{r},{d}"),
        }
    }
}

impl FromStr for VarietySpec {
    type Err = Error;

    /// Grammar: `segre:d1,d2,… | veronese:n,d | segver:d1,d2@e1,e2 |
    /// sub:d1,d2,d3@r1,r2,r3 | symsub:dim,r,d`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::invalid(format!("variety `{s}`: {msg}"));
        let (kind, rest) = s.trim().split_once(':').ok_or_else(|| bad("missing `kind:`"))?;
        let nums = |t: &str| -> Result<Vec<usize>> {
            t.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| bad(&format!("`{x}` is not a count"))))
                .collect()
        };
        let two_lists = |t: &str| -> Result<(Vec<usize>, Vec<usize>)> {
            let (a, b) = t.split_once('@').ok_or_else(|| bad("expected `dims@values`"))?;
            Ok((nums(a)?, nums(b)?))
        };
        let spec = match kind.trim() {
            "segre" => VarietySpec::Segre { dims: nums(rest)? },
            "veronese" => match nums(rest)?.as_slice() {
                &[n, d] => VarietySpec::Veronese { n, d },
                _ => return Err(bad("expected `veronese:n,d`")),
            },
            "segver" => {
                let (dims, degrees) = two_lists(rest)?;
                VarietySpec::SegreVeronese { dims, degrees }
            }
            "sub" => {
                let (dims, ranks) = two_lists(rest)?;
                VarietySpec::Subspace { dims, ranks }
            }
            "symsub" => match nums(rest)?.as_slice() {
                &[dim, r, d] => VarietySpec::SymSubspace { dim, r, d },
                _ => return Err(bad("expected `symsub:dim,r,d`")),
            },
            other => return Err(bad(&format!("unknown kind `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Parameters of a point on `X̂`.
#[derive(Clone, Debug, PartialEq)]
pub enum PointParams {
    /// One vector per factor (Segre), per block (Segre–Veronese), or a
    /// single vector (Veronese).
    Vectors(Vec<Vec<BigRational>>),
    /// Core tensor and factor maps `A_i` (columns spanning the subspaces).
    /// For the symmetric subspace variety the core is symmetric and there
    /// is a single map used on every factor.
    Tucker {
        core: DenseTensor<Rationals>,
        maps: Vec<Matrix<Rationals>>,
    },
}

fn random_vector(rng: &mut Rng64, n: usize) -> Vec<BigRational> {
    (0..n).map(|_| int(small_int(rng))).collect()
}

/// Draws a random point with integer coordinates in `[-10, 10]`,
/// resampling zero factors up to [`MAX_RESAMPLES`] times.
pub fn sample_point(spec: &VarietySpec, rng: &mut Rng64) -> Result<PointParams> {
    let nonzero_vector = |rng: &mut Rng64, n: usize| -> Result<Vec<BigRational>> {
        for _ in 0..MAX_RESAMPLES {
            let v = random_vector(rng, n);
            if v.iter().any(|x| *x != int(0)) {
                return Ok(v);
            }
        }
        Err(Error::Unsupported("could not sample a nonzero factor".into()))
    };
    let nonzero_matrix = |rng: &mut Rng64, rows: usize, cols: usize| -> Result<Matrix<Rationals>> {
        for _ in 0..MAX_RESAMPLES {
            let m = Matrix::from_fn(Rationals, rows, cols, |_, _| int(small_int(rng)));
            if (0..cols).all(|j| m.column(j).iter().any(|x| *x != int(0))) {
                return Ok(m);
            }
        }
        Err(Error::Unsupported("could not sample a factor map with nonzero columns".into()))
    };
    Ok(match spec {
        VarietySpec::Segre { dims } | VarietySpec::SegreVeronese { dims, .. } => {
            PointParams::Vectors(dims.iter().map(|&n| nonzero_vector(rng, n)).collect::<Result<_>>()?)
        }
        VarietySpec::Veronese { n, .. } => PointParams::Vectors(vec![nonzero_vector(rng, *n)?]),
        VarietySpec::Subspace { dims, ranks } => {
            let core_shape = Shape::new(ranks.clone())?;
            let core = loop_nonzero(|| DenseTensor::from_fn(Rationals, core_shape.clone(), |_| int(small_int(rng))))?;
            let maps = dims
                .iter()
                .zip(ranks)
                .map(|(&d, &r)| nonzero_matrix(rng, d, r))
                .collect::<Result<_>>()?;
            PointParams::Tucker { core, maps }
        }
        VarietySpec::SymSubspace { dim, r, d } => {
            let shape = Shape::new(vec![*r; *d])?;
            let core = loop_nonzero(|| random_symmetric(&shape, rng))?;
            PointParams::Tucker {
                core,
                maps: vec![nonzero_matrix(rng, *dim, *r)?],
            }
        }
    })
}

fn loop_nonzero(mut draw: impl FnMut() -> DenseTensor<Rationals>) -> Result<DenseTensor<Rationals>> {
    for _ in 0..MAX_RESAMPLES {
        let t = draw();
        if !t.is_zero() {
            return Ok(t);
        }
    }
    Err(Error::Unsupported("could not sample a nonzero core".into()))
}

/// Symmetric tensor with one random entry per sorted multi-index.
fn random_symmetric(shape: &Shape, rng: &mut Rng64) -> DenseTensor<Rationals> {
    let mut values = std::collections::HashMap::new();
    DenseTensor::from_fn(Rationals, shape.clone(), |idx| {
        let mut key = idx.to_vec();
        key.sort_unstable();
        values.entry(key).or_insert_with(|| int(small_int(rng))).clone()
    })
}

fn unit_matrix(rows: usize, cols: usize, a: usize, b: usize) -> Matrix<Rationals> {
    Matrix::from_fn(Rationals, rows, cols, |i, j| int((i == a && j == b) as i64))
}

fn apply_maps(core: &DenseTensor<Rationals>, maps: &[&Matrix<Rationals>]) -> Result<DenseTensor<Rationals>> {
    maps.iter()
        .enumerate()
        .try_fold(core.clone(), |t, (k, m)| t.mode_product(k, m))
}

/// Spanning set of the affine tangent space of `X̂` at the point, in the
/// canonical ambient coordinates.
pub fn affine_tangent_basis(spec: &VarietySpec, params: &PointParams) -> Result<Vec<Vec<BigRational>>> {
    spec.validate()?;
    let (dense_dims, blocks) = spec.dense_layout();
    let shape = Shape::new(dense_dims.clone())?;
    let mut tangents: Vec<DenseTensor<Rationals>> = Vec::new();
    let bad_params = || Error::invalid(format!("point parameters do not match {spec}"));

    match (spec, params) {
        (
            VarietySpec::Segre { .. } | VarietySpec::SegreVeronese { .. } | VarietySpec::Veronese { .. },
            PointParams::Vectors(vs),
        ) if vs.len() == blocks.len() => {
            let block_dims: Vec<usize> = blocks.iter().map(|&(s, _)| dense_dims[s]).collect();
            if vs.iter().zip(&block_dims).any(|(v, &n)| v.len() != n) {
                return Err(bad_params());
            }
            if vs.iter().any(|v| v.iter().all(|x| *x == int(0))) {
                return Err(Error::invalid("zero factor vector in the point parameters"));
            }
            let base: Vec<Vec<BigRational>> = blocks
                .iter()
                .zip(vs)
                .flat_map(|(&(_, len), v)| std::iter::repeat(v.clone()).take(len))
                .collect();
            for (b, &(start, len)) in blocks.iter().enumerate() {
                for j in 0..block_dims[b] {
                    let e: Vec<BigRational> = (0..block_dims[b]).map(|i| int((i == j) as i64)).collect();
                    // Leibniz: the direction e in each slot of the block
                    let mut sum = DenseTensor::zeros(Rationals, shape.clone());
                    for pos in start..start + len {
                        let mut factors = base.clone();
                        factors[pos] = e.clone();
                        sum = sum.add(&rank_one(&Rationals, &factors)?)?;
                    }
                    tangents.push(sum);
                }
            }
        }
        (VarietySpec::Subspace { dims, ranks }, PointParams::Tucker { core, maps })
            if maps.len() == dims.len()
                && core.dims() == ranks.as_slice()
                && maps.iter().zip(dims.iter().zip(ranks)).all(|(m, (&d, &r))| m.rows() == d && m.cols() == r) =>
        {
            let n = dims.len();
            let map_refs: Vec<&Matrix<Rationals>> = maps.iter().collect();
            let core_shape = core.shape().clone();
            for flat in 0..core_shape.volume() {
                let unit = DenseTensor::from_fn(Rationals, core_shape.clone(), |idx| {
                    int((core_shape.flat_index(idx) == flat) as i64)
                });
                tangents.push(apply_maps(&unit, &map_refs)?);
            }
            for i in 0..n {
                let ids: Vec<Matrix<Rationals>> = (0..n).map(|j| Matrix::identity(Rationals, ranks[j])).collect();
                let partial: Vec<&Matrix<Rationals>> =
                    (0..n).map(|j| if j == i { &ids[j] } else { &maps[j] }).collect();
                let q = apply_maps(core, &partial)?;
                for a in 0..dims[i] {
                    for b in 0..ranks[i] {
                        tangents.push(q.mode_product(i, &unit_matrix(dims[i], ranks[i], a, b))?);
                    }
                }
            }
        }
        (VarietySpec::SymSubspace { dim, r, d }, PointParams::Tucker { core, maps })
            if maps.len() == 1
                && core.dims() == vec![*r; *d].as_slice()
                && maps[0].rows() == *dim
                && maps[0].cols() == *r =>
        {
            if !core.is_symmetric() {
                return Err(Error::invalid("symmetric subspace core must be symmetric"));
            }
            let a = &maps[0];
            let all_a: Vec<&Matrix<Rationals>> = vec![a; *d];
            let core_shape = core.shape().clone();
            for flat in 0..core_shape.volume() {
                let idx = core_shape.multi_index(flat);
                if idx.windows(2).any(|w| w[0] > w[1]) {
                    continue;
                }
                let unit = DenseTensor::from_fn(Rationals, core_shape.clone(), |j| {
                    let mut s = j.to_vec();
                    s.sort_unstable();
                    int((s == idx) as i64)
                });
                tangents.push(apply_maps(&unit, &all_a)?);
            }
            let id = Matrix::identity(Rationals, *r);
            let partials: Vec<DenseTensor<Rationals>> = (0..*d)
                .map(|k| {
                    let m: Vec<&Matrix<Rationals>> = (0..*d).map(|j| if j == k { &id } else { a }).collect();
                    apply_maps(core, &m)
                })
                .collect::<Result<_>>()?;
            for i in 0..*dim {
                for j in 0..*r {
                    let e = unit_matrix(*dim, *r, i, j);
                    let mut sum = DenseTensor::zeros(Rationals, shape.clone());
                    for (k, q) in partials.iter().enumerate() {
                        sum = sum.add(&q.mode_product(k, &e)?)?;
                    }
                    tangents.push(sum);
                }
            }
        }
        _ => return Err(bad_params()),
    }

    let coords = spec.coordinates();
    Ok(tangents
        .into_iter()
        .map(|t| coords.iter().map(|&c| t.data()[c].clone()).collect())
        .collect())
}

/// Dimension estimate for one secant variety.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SecantReport {
    pub variety: String,
    pub r: usize,
    pub ambient_affine_dim: usize,
    pub computed_affine_dim: usize,
    pub expected_affine_dim: usize,
    pub defect: usize,
    pub trials: usize,
}

impl SecantReport {
    pub fn is_defective(&self) -> bool {
        self.defect > 0
    }
}

/// Rank of the stacked tangent spaces at `r` points drawn from `rng`.
fn terracini_rank(spec: &VarietySpec, r: usize, rng: &mut Rng64) -> Result<usize> {
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for _ in 0..r {
        let p = sample_point(spec, rng)?;
        rows.extend(affine_tangent_basis(spec, &p)?);
    }
    let ambient = spec.ambient_dim();
    Ok(Matrix::from_rows(Rationals, rows)
        .map(|m| Rationals.matrix_rank(&m))
        .unwrap_or(0)
        .min(ambient))
}

/// Terracini estimate of `dim σ_r(X)^` (affine): the maximum over `trials`
/// independent samples, stopping early once the expected value is reached.
pub fn secant_dimension(spec: &VarietySpec, r: usize, trials: usize, seed: u64) -> Result<SecantReport> {
    spec.validate()?;
    if r == 0 {
        return Err(Error::invalid("r must be at least 1"));
    }
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let expected = spec.expected_dim(r);
    let mut best = 0;
    let mut used = 0;
    for t in 0..trials {
        let mut rng = Rng64::derived(seed, ((r as u64) << 20) | t as u64);
        best = best.max(terracini_rank(spec, r, &mut rng)?);
        used += 1;
        assert!(best <= expected, "Terracini rank {best} exceeds the expected {expected} for {spec}, r = {r}");
        if best == expected {
            break;
        }
    }
    Ok(SecantReport {
        variety: spec.to_string(),
        r,
        ambient_affine_dim: spec.ambient_dim(),
        computed_affine_dim: best,
        expected_affine_dim: expected,
        defect: expected - best,
        trials: used,
    })
}

/// Smallest `r` with `σ_r(X)` filling the ambient space, and the reports
/// for every `r` up to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericRankReport {
    pub variety: String,
    pub generic_rank: usize,
    pub profile: Vec<SecantReport>,
}

impl GenericRankReport {
    pub fn defective(&self) -> impl Iterator<Item = &SecantReport> {
        self.profile.iter().filter(|r| r.is_defective())
    }
}

pub fn generic_rank(spec: &VarietySpec, trials: usize, seed: u64) -> Result<GenericRankReport> {
    spec.validate()?;
    let ambient = spec.ambient_dim();
    let mut profile = Vec::new();
    for r in 1..=ambient {
        let rep = secant_dimension(spec, r, trials, seed)?;
        let full = rep.computed_affine_dim == ambient;
        profile.push(rep);
        if full {
            return Ok(GenericRankReport {
                variety: spec.to_string(),
                generic_rank: r,
                profile,
            });
        }
    }
    unreachable!("each point adds at least one tangent direction until the ambient space is filled")
}

/// Reports for every spec of the family and every `r` in `r_range`, or up
/// to each spec's generic rank when no range is given. Cells are computed
/// in parallel and returned in (spec, r) order.
pub fn defect_scan(
    family: &[VarietySpec],
    r_range: Option<std::ops::RangeInclusive<usize>>,
    trials: usize,
    seed: u64,
) -> Result<Vec<SecantReport>> {
    let per_spec: Vec<Result<Vec<SecantReport>>> = family
        .par_iter()
        .map(|spec| match &r_range {
            Some(range) => range
                .clone()
                .into_par_iter()
                .map(|r| secant_dimension(spec, r, trials, seed))
                .collect(),
            None => generic_rank(spec, trials, seed).map(|g| g.profile),
        })
        .collect();
    let mut out = Vec::new();
    for cells in per_spec {
        out.extend(cells?);
    }
    Ok(out)
}
