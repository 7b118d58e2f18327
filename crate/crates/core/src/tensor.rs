//! Dense tensors in `V_1 ⊗ … ⊗ V_n`.
//!
//! Entries are stored row-major (last index fastest). Every flattening and
//! every file format uses this order, with factor positions ascending.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{Field, Ring};
use crate::matrix::Matrix;
use crate::sampling::{small_int, Rng64};

/// More factors than this are rejected.
pub const MAX_FACTORS: usize = 12;

/// Factor dimensions `(dim V_1, …, dim V_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shape(Vec<usize>);

impl Shape {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::invalid("shape needs at least one factor"));
        }
        if dims.len() > MAX_FACTORS {
            return Err(Error::invalid(format!(
                "{} factors exceeds the {MAX_FACTORS}-factor limit",
                dims.len()
            )));
        }
        if dims.contains(&0) {
            return Err(Error::invalid("factor dimensions must be positive"));
        }
        Ok(Shape(dims))
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    /// Number of entries.
    pub fn volume(&self) -> usize {
        self.0.iter().product()
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.0.len()];
        for k in (0..self.0.len()).rev() {
            idx[k] = flat % self.0[k];
            flat /= self.0[k];
        }
        idx
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.0).fold(0, |acc, (&i, &d)| acc * d + i)
    }
}

/// A split of factor positions into `I` and its complement, both nonempty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bipartition {
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Bipartition {
    pub fn new(left: &[usize], order: usize) -> Result<Self> {
        let mut l = left.to_vec();
        l.sort_unstable();
        l.dedup();
        if l.len() != left.len() || l.iter().any(|&i| i >= order) {
            return Err(Error::invalid(format!(
                "bipartition side {left:?} is not a set of positions below {order}"
            )));
        }
        if l.is_empty() || l.len() == order {
            return Err(Error::invalid("both sides of a bipartition must be nonempty"));
        }
        let right = (0..order).filter(|i| !l.contains(i)).collect();
        Ok(Bipartition { left: l, right })
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn order(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// All bipartitions of `order` positions, each unordered pair once
    /// (the side containing position 0 is the left one).
    pub fn all(order: usize) -> Vec<Bipartition> {
        if order < 2 {
            return Vec::new();
        }
        let full = 1usize << order;
        (1..full)
            .filter(|mask| mask & 1 == 1 && *mask != full - 1)
            .map(|mask| {
                let left: Vec<usize> = (0..order).filter(|i| mask >> i & 1 == 1).collect();
                Bipartition::new(&left, order).expect("valid by construction")
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseTensor<F: Field> {
    field: F,
    shape: Shape,
    data: Vec<F::Elem>,
}

impl<F: Field> DenseTensor<F> {
    pub fn new(field: F, shape: Shape, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != shape.volume() {
            return Err(Error::dim(format!(
                "{} entries for shape {:?} ({} expected)",
                data.len(),
                shape.dims(),
                shape.volume()
            )));
        }
        if !data.iter().all(|e| field.is_finite(e)) {
            return Err(Error::NonFinite);
        }
        Ok(DenseTensor { field, shape, data })
    }

    pub fn zeros(field: F, shape: Shape) -> Self {
        let data = vec![field.zero(); shape.volume()];
        DenseTensor { field, shape, data }
    }

    pub fn from_fn(field: F, shape: Shape, mut f: impl FnMut(&[usize]) -> F::Elem) -> Self {
        let data = (0..shape.volume())
            .map(|flat| f(&shape.multi_index(flat)))
            .collect();
        DenseTensor { field, shape, data }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ring(&self) -> Ring {
        self.field.ring()
    }
    pub fn shape(&self) -> &Shape {
        &self.shape
    }
    pub fn dims(&self) -> &[usize] {
        self.shape.dims()
    }
    pub fn order(&self) -> usize {
        self.shape.order()
    }
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }
    pub fn into_data(self) -> Vec<F::Elem> {
        self.data
    }

    pub fn get(&self, idx: &[usize]) -> &F::Elem {
        &self.data[self.shape.flat_index(idx)]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::RingMismatch(format!(
                "{} vs {}",
                self.field.ring(),
                other.field.ring()
            )));
        }
        if self.shape != other.shape {
            return Err(Error::dim(format!(
                "shapes {:?} and {:?} differ",
                self.dims(),
                other.dims()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = &self.field;
        Ok(DenseTensor {
            field: f.clone(),
            shape: self.shape.clone(),
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let f = &self.field;
        DenseTensor {
            field: f.clone(),
            shape: self.shape.clone(),
            data: self.data.iter().map(|a| f.mul(a, s)).collect(),
        }
    }

    /// Tensor product `self ⊗ other`; factors of `self` come first.
    pub fn outer(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::RingMismatch("outer product".into()));
        }
        let mut dims = self.dims().to_vec();
        dims.extend_from_slice(other.dims());
        let shape = Shape::new(dims)?;
        let f = &self.field;
        let data = self
            .data
            .iter()
            .flat_map(|a| other.data.iter().map(move |b| f.mul(a, b)))
            .collect();
        Ok(DenseTensor {
            field: f.clone(),
            shape,
            data,
        })
    }

    /// Reorders factors: output factor `k` is input factor `perm[k]`.
    pub fn braid(&self, perm: &[usize]) -> Result<Self> {
        let n = self.order();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::invalid(format!(
                "{perm:?} is not a permutation of {n} factor positions"
            )));
        }
        let dims = perm.iter().map(|&p| self.dims()[p]).collect();
        let shape = Shape::new(dims)?;
        Ok(DenseTensor::from_fn(self.field.clone(), shape, |out_idx| {
            let mut src = vec![0; n];
            for (k, &p) in perm.iter().enumerate() {
                src[p] = out_idx[k];
            }
            self.get(&src).clone()
        }))
    }

    /// The matrix of the tensor regrouped along `b`: rows enumerate
    /// `I`-multi-indices, columns `I^C`-multi-indices, both row-major.
    pub fn flatten(&self, b: &Bipartition) -> Result<Matrix<F>> {
        if b.order() != self.order() {
            return Err(Error::invalid(format!(
                "bipartition of {} positions used on a {}-factor tensor",
                b.order(),
                self.order()
            )));
        }
        let dims = self.dims();
        let left_dims: Vec<usize> = b.left().iter().map(|&i| dims[i]).collect();
        let right_dims: Vec<usize> = b.right().iter().map(|&i| dims[i]).collect();
        let rows: usize = left_dims.iter().product();
        let cols: usize = right_dims.iter().product();
        let mut data = vec![self.field.zero(); rows * cols];
        for (flat, v) in self.data.iter().enumerate() {
            let idx = self.shape.multi_index(flat);
            let r = b.left().iter().fold(0, |acc, &i| acc * dims[i] + idx[i]);
            let c = b.right().iter().fold(0, |acc, &i| acc * dims[i] + idx[i]);
            data[r * cols + c] = v.clone();
        }
        Matrix::new(self.field.clone(), rows, cols, data)
    }

    /// Applies `m` to factor `k`: the result has `m.rows()` as its `k`-th
    /// dimension and entries `Σ_b m[a, b] t[…, b, …]`.
    pub fn mode_product(&self, k: usize, m: &Matrix<F>) -> Result<Self> {
        if k >= self.order() || m.cols() != self.dims()[k] {
            return Err(Error::dim(format!(
                "{}x{} matrix applied to factor {k} of shape {:?}",
                m.rows(),
                m.cols(),
                self.dims()
            )));
        }
        if *m.field() != self.field {
            return Err(Error::RingMismatch("mode product".into()));
        }
        let f = &self.field;
        let mut dims = self.dims().to_vec();
        dims[k] = m.rows();
        let mut src = vec![0; self.order()];
        Ok(DenseTensor::from_fn(f.clone(), Shape::new(dims)?, |idx| {
            src.copy_from_slice(idx);
            let mut acc = f.zero();
            for b in 0..m.cols() {
                let w = m.get(idx[k], b);
                if f.is_zero(w) {
                    continue;
                }
                src[k] = b;
                acc = f.add(&acc, &f.mul(w, self.get(&src)));
            }
            acc
        }))
    }

    /// Flattening of factor `i` against all the others.
    pub fn mode_flattening(&self, i: usize) -> Result<Matrix<F>> {
        self.flatten(&Bipartition::new(&[i], self.order())?)
    }

    fn equal_dims(&self) -> bool {
        self.dims().windows(2).all(|w| w[0] == w[1])
    }

    /// True iff every adjacent transposition of indices leaves the entries
    /// unchanged; false for unequal factor dimensions.
    pub fn is_symmetric(&self) -> bool {
        if !self.equal_dims() {
            return false;
        }
        let n = self.order();
        (0..self.data.len()).all(|flat| {
            let mut idx = self.shape.multi_index(flat);
            (0..n.saturating_sub(1)).all(|k| {
                idx.swap(k, k + 1);
                let same = self.get(&idx) == &self.data[flat];
                idx.swap(k, k + 1);
                same
            })
        })
    }

    /// Average over all `d!` index permutations.
    ///
    /// Each entry becomes the mean over the orbit of its multi-index, which is
    /// the same average because every orbit point is hit `d!/|orbit|` times.
    pub fn symmetrize(&self) -> Result<Self> {
        if !self.equal_dims() {
            return Err(Error::invalid("symmetrize needs equal factor dimensions"));
        }
        let d = self.order() as u32;
        if let Ring::Prime(p) = self.ring() {
            if p <= d {
                return Err(Error::invalid(format!(
                    "{d}! is not invertible modulo {p}"
                )));
            }
        }
        let f = &self.field;
        let mut orbits: HashMap<Vec<usize>, (F::Elem, i64)> = HashMap::new();
        for (flat, v) in self.data.iter().enumerate() {
            let mut key = self.shape.multi_index(flat);
            key.sort_unstable();
            let slot = orbits.entry(key).or_insert_with(|| (f.zero(), 0));
            slot.0 = f.add(&slot.0, v);
            slot.1 += 1;
        }
        let means: HashMap<Vec<usize>, F::Elem> = orbits
            .into_iter()
            .map(|(k, (sum, count))| {
                let inv = f.inv(&f.from_i64(count)).expect("orbit size invertible");
                (k, f.mul(&sum, &inv))
            })
            .collect();
        Ok(DenseTensor::from_fn(f.clone(), self.shape.clone(), |idx| {
            let mut key = idx.to_vec();
            key.sort_unstable();
            means[&key].clone()
        }))
    }

    pub fn map<G: Field>(&self, field: G, op: impl Fn(&F::Elem) -> G::Elem) -> Result<DenseTensor<G>> {
        DenseTensor::new(field, self.shape.clone(), self.data.iter().map(op).collect())
    }
}

/// `v_1 ⊗ … ⊗ v_n`; every factor must be nonzero.
pub fn rank_one<F: Field>(field: &F, vectors: &[Vec<F::Elem>]) -> Result<DenseTensor<F>> {
    if vectors.iter().any(|v| v.iter().all(|x| field.is_zero(x))) {
        return Err(Error::invalid("zero factor vector is not a projective point"));
    }
    let shape = Shape::new(vectors.iter().map(Vec::len).collect())?;
    Ok(DenseTensor::from_fn(field.clone(), shape, |idx| {
        idx.iter()
            .zip(vectors)
            .fold(field.one(), |acc, (&i, v)| field.mul(&acc, &v[i]))
    }))
}

/// The `d`-th tensor power of `v`.
pub fn veronese_point<F: Field>(field: &F, v: &[F::Elem], d: usize) -> Result<DenseTensor<F>> {
    if d == 0 {
        return Err(Error::invalid("degree must be at least 1"));
    }
    rank_one(field, &vec![v.to_vec(); d])
}

/// `w_1^{d_1} ⊗ … ⊗ w_n^{d_n}` as a tensor with `Σ d_i` factors.
pub fn segre_veronese_point<F: Field>(
    field: &F,
    vectors: &[Vec<F::Elem>],
    degrees: &[usize],
) -> Result<DenseTensor<F>> {
    if vectors.len() != degrees.len() {
        return Err(Error::dim("one degree per vector"));
    }
    if degrees.contains(&0) {
        return Err(Error::invalid("degrees must be at least 1"));
    }
    let factors: Vec<Vec<F::Elem>> = vectors
        .iter()
        .zip(degrees)
        .flat_map(|(v, &d)| std::iter::repeat(v.clone()).take(d))
        .collect();
    rank_one(field, &factors)
}

/// Entries drawn uniformly from the integers in `[-10, 10]`.
pub fn random_tensor<F: Field>(shape: Shape, field: &F, seed: u64) -> DenseTensor<F> {
    let mut rng = Rng64::new(seed);
    let data = (0..shape.volume())
        .map(|_| field.from_i64(small_int(&mut rng)))
        .collect();
    DenseTensor {
        field: field.clone(),
        shape,
        data,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rational, PrimeField, Rationals};
    use crate::matrix::rank_exact;
    use num_rational::BigRational;

    fn qv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn shape(d: &[usize]) -> Shape {
        Shape::new(d.to_vec()).unwrap()
    }

    #[test]
    fn shape_validation() {
        assert!(Shape::new(vec![]).is_err());
        assert!(Shape::new(vec![2, 0]).is_err());
        assert!(Shape::new(vec![1; 13]).is_err());
        let s = shape(&[2, 3, 4]);
        for flat in 0..24 {
            assert_eq!(s.flat_index(&s.multi_index(flat)), flat);
        }
        assert_eq!(s.multi_index(5), vec![0, 1, 1]);
    }

    #[test]
    fn bipartition_validation() {
        assert!(Bipartition::new(&[], 3).is_err());
        assert!(Bipartition::new(&[0, 1, 2], 3).is_err());
        assert!(Bipartition::new(&[3], 3).is_err());
        assert!(Bipartition::new(&[1, 1], 3).is_err());
        let b = Bipartition::new(&[2, 0], 4).unwrap();
        assert_eq!(b.left(), &[0, 2]);
        assert_eq!(b.right(), &[1, 3]);
        assert_eq!(Bipartition::all(3).len(), 3);
        assert_eq!(Bipartition::all(4).len(), 7);
    }

    #[test]
    fn rank_one_examples() {
        let e11 = rank_one(&Rationals, &[qv(&[1, 0]), qv(&[1, 0])]).unwrap();
        assert_eq!(e11.data(), qv(&[1, 0, 0, 0]).as_slice());
        let ones = rank_one(&Rationals, &[qv(&[1, 1]), qv(&[1, 1])]).unwrap();
        assert_eq!(ones.data(), qv(&[1, 1, 1, 1]).as_slice());
        assert!(rank_one(&Rationals, &[qv(&[0, 0]), qv(&[1, 1])]).is_err());
        let t = rank_one(&Rationals, &[qv(&[1, 2]), qv(&[3, 0, 1]), qv(&[1, -1])]).unwrap();
        assert_eq!(t.get(&[1, 2, 1]), &int(-2));
        for i in 0..3 {
            assert_eq!(rank_exact(&t.mode_flattening(i).unwrap()), 1);
        }
    }

    #[test]
    fn veronese_examples() {
        let t = veronese_point(&Rationals, &qv(&[1, 1]), 2).unwrap();
        assert_eq!(t.data(), qv(&[1, 1, 1, 1]).as_slice());
        let t = veronese_point(&Rationals, &qv(&[1, 0]), 3).unwrap();
        assert_eq!(t.data().iter().filter(|x| **x != int(0)).count(), 1);
        assert_eq!(t.get(&[0, 0, 0]), &int(1));
        let t = veronese_point(&Rationals, &qv(&[1, 2]), 2).unwrap();
        assert_eq!(t.data(), qv(&[1, 2, 2, 4]).as_slice());
        assert!(t.is_symmetric());
        assert!(veronese_point(&Rationals, &qv(&[1, 2]), 0).is_err());
    }

    #[test]
    fn segre_veronese_examples() {
        let a = qv(&[1, 2]);
        let b = qv(&[3, -1, 0]);
        assert_eq!(
            segre_veronese_point(&Rationals, &[a.clone(), b.clone()], &[1, 1]).unwrap(),
            rank_one(&Rationals, &[a.clone(), b]).unwrap()
        );
        assert_eq!(
            segre_veronese_point(&Rationals, &[a.clone()], &[3]).unwrap(),
            veronese_point(&Rationals, &a, 3).unwrap()
        );
        // (1,1)^2 ⊗ (1,0): every slice over the first index is [[1,0],[1,0]]
        let t = segre_veronese_point(&Rationals, &[qv(&[1, 1]), qv(&[1, 0])], &[2, 1]).unwrap();
        assert_eq!(t.data(), qv(&[1, 0, 1, 0, 1, 0, 1, 0]).as_slice());
    }

    #[test]
    fn flatten_examples() {
        let mut diag = DenseTensor::zeros(Rationals, shape(&[2, 2, 2]));
        diag.data[0] = int(1);
        diag.data[7] = int(1);
        let m = diag.flatten(&Bipartition::new(&[0], 3).unwrap()).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 4);
        assert_eq!(rank_exact(&m), 2);
        // row index from factor 0, column index from (1, 2)
        assert_eq!(m.get(1, 3), &int(1));
        assert_eq!(m.get(0, 0), &int(1));
        let t = random_tensor(shape(&[2, 3, 2]), &Rationals, 3);
        let m = t.flatten(&Bipartition::new(&[0, 2], 3).unwrap()).unwrap();
        assert_eq!((m.rows(), m.cols()), (4, 3));
        assert_eq!(m.get(3, 2), t.get(&[1, 2, 1]));
        assert!(t.flatten(&Bipartition::new(&[0], 4).unwrap()).is_err());
    }

    #[test]
    fn symmetrize_examples() {
        let e12 = rank_one(&Rationals, &[qv(&[1, 0]), qv(&[0, 1])]).unwrap();
        assert!(!e12.is_symmetric());
        let s = e12.symmetrize().unwrap();
        let half = rational(1, 2);
        assert_eq!(s.data(), &[int(0), half.clone(), half, int(0)]);
        assert!(s.is_symmetric());
        assert_eq!(s.symmetrize().unwrap(), s);
        let t = rank_one(&Rationals, &[qv(&[1, 0]), qv(&[1, 0]), qv(&[0, 1])]).unwrap();
        let s = t.symmetrize().unwrap();
        let third = rational(1, 3);
        for idx in [[0, 0, 1], [0, 1, 0], [1, 0, 0]] {
            assert_eq!(s.get(&idx), &third);
        }
        assert_eq!(s.data().iter().filter(|x| **x != int(0)).count(), 3);
    }

    #[test]
    fn symmetrize_errors() {
        let t = random_tensor(shape(&[2, 3]), &Rationals, 0);
        assert!(t.symmetrize().is_err());
        assert!(!t.is_symmetric());
        let f3 = PrimeField::new(3).unwrap();
        assert!(random_tensor(shape(&[2, 2, 2]), &f3, 0).symmetrize().is_err());
        let f5 = PrimeField::new(5).unwrap();
        let s = random_tensor(shape(&[2, 2, 2]), &f5, 0).symmetrize().unwrap();
        assert!(s.is_symmetric());
    }

    #[test]
    fn braid_examples() {
        let t = random_tensor(shape(&[2, 3, 4]), &Rationals, 11);
        assert_eq!(t.braid(&[0, 1, 2]).unwrap(), t);
        let swapped = t.braid(&[1, 0, 2]).unwrap();
        assert_eq!(swapped.dims(), &[3, 2, 4]);
        assert_eq!(swapped.braid(&[1, 0, 2]).unwrap(), t);
        let (a, b, c) = (qv(&[1, 2]), qv(&[0, 1, -3]), qv(&[5, 1, 1, 2]));
        let r = rank_one(&Rationals, &[a.clone(), b.clone(), c.clone()]).unwrap();
        // 1-based (2,3,1)
        assert_eq!(r.braid(&[1, 2, 0]).unwrap(), rank_one(&Rationals, &[b, c, a]).unwrap());
        assert!(t.braid(&[0, 0, 1]).is_err());
        assert!(t.braid(&[0, 1]).is_err());
    }

    #[test]
    fn outer_product_matches_rank_one() {
        let a = rank_one(&Rationals, &[qv(&[1, 2]), qv(&[3, 4])]).unwrap();
        let b = rank_one(&Rationals, &[qv(&[0, 1, 1])]).unwrap();
        assert_eq!(
            a.outer(&b).unwrap(),
            rank_one(&Rationals, &[qv(&[1, 2]), qv(&[3, 4]), qv(&[0, 1, 1])]).unwrap()
        );
    }

    #[test]
    fn random_tensor_is_seeded() {
        let s = shape(&[3, 3]);
        assert_eq!(random_tensor(s.clone(), &Rationals, 5), random_tensor(s.clone(), &Rationals, 5));
        assert_ne!(random_tensor(s.clone(), &Rationals, 5), random_tensor(s, &Rationals, 6));
    }
}
