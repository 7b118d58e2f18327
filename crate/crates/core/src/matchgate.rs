//! Pfaffians, sub-Pfaffian signature vectors, perfect matchings and
//! matchgate identities.
//!
//! Subsets of `k` wires are encoded little-endian: bit `i` of the index is
//! set when wire `i` is present. `Pf` of the empty matrix is 1.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// Largest skew matrix accepted by [`pfaffian`].
pub const MAX_PFAFFIAN_SIZE: usize = 24;
/// Largest node count for [`count_matchings`].
pub const MAX_MATCHING_NODES: usize = 16;
/// Largest edge count for [`pfaffian_orientation_search`].
pub const MAX_ORIENTATION_EDGES: usize = 20;
/// Largest wire count for [`mgi_residuals`].
pub const MAX_MGI_WIRES: usize = 10;

/// Skew-symmetric matrix stored by its strict upper triangle.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewMatrix<F: Field> {
    field: F,
    size: usize,
    upper: Vec<F::Elem>,
}

fn upper_index(size: usize, i: usize, j: usize) -> usize {
    // row i contributes size - 1 - i entries
    i * (2 * size - i - 1) / 2 + (j - i - 1)
}

impl<F: Field> SkewMatrix<F> {
    /// From the entries `a_ij`, `i < j`, in row-major order.
    pub fn from_upper(field: F, size: usize, upper: Vec<F::Elem>) -> Result<Self> {
        if upper.len() != size * size.saturating_sub(1) / 2 {
            return Err(Error::dim(format!(
                "{} upper entries for a {size}x{size} skew matrix",
                upper.len()
            )));
        }
        Ok(SkewMatrix { field, size, upper })
    }

    pub fn from_matrix(m: &Matrix<F>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::dim("skew matrix must be square"));
        }
        let f = m.field().clone();
        let n = m.rows();
        let mut upper = Vec::new();
        for i in 0..n {
            if !f.is_zero(m.get(i, i)) {
                return Err(Error::invalid("skew matrix has a nonzero diagonal entry"));
            }
            for j in i + 1..n {
                if f.add(m.get(i, j), m.get(j, i)) != f.zero() {
                    return Err(Error::invalid(format!("entries ({i},{j}) and ({j},{i}) are not opposite")));
                }
                upper.push(m.get(i, j).clone());
            }
        }
        Ok(SkewMatrix { field: f, size: n, upper })
    }

    pub fn zeros(field: F, size: usize) -> Self {
        let upper = vec![field.zero(); size * size.saturating_sub(1) / 2];
        SkewMatrix { field, size, upper }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> F::Elem {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => self.field.zero(),
            Less => self.upper[upper_index(self.size, i, j)].clone(),
            Greater => self.field.neg(&self.upper[upper_index(self.size, j, i)]),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        assert!(i != j, "diagonal of a skew matrix is zero");
        if i < j {
            self.upper[upper_index(self.size, i, j)] = v;
        } else {
            self.upper[upper_index(self.size, j, i)] = self.field.neg(&v);
        }
    }

    pub fn to_matrix(&self) -> Matrix<F> {
        Matrix::from_fn(self.field.clone(), self.size, self.size, |i, j| self.get(i, j))
    }

    /// Simultaneous permutation of rows and columns: new index `k` is old
    /// index `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let n = self.size;
        let mut out = SkewMatrix::zeros(self.field.clone(), n);
        for i in 0..n {
            for j in i + 1..n {
                out.set(i, j, self.get(perm[i], perm[j]));
            }
        }
        out
    }
}

/// Pfaffians of principal submatrices, memoized by node subset.
struct PfaffianMemo<'a, F: Field> {
    a: &'a SkewMatrix<F>,
    memo: HashMap<u32, F::Elem>,
}

impl<'a, F: Field> PfaffianMemo<'a, F> {
    fn new(a: &'a SkewMatrix<F>) -> Self {
        PfaffianMemo { a, memo: HashMap::new() }
    }

    /// `Pf` of the submatrix on the nodes of `mask`.
    fn pf(&mut self, mask: u32) -> F::Elem {
        let f = self.a.field.clone();
        if mask == 0 {
            return f.one();
        }
        if mask.count_ones() % 2 == 1 {
            return f.zero();
        }
        if let Some(v) = self.memo.get(&mask) {
            return v.clone();
        }
        let first = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << first);
        let mut total = f.zero();
        let mut pos = 0;
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let a = self.a.get(first, j);
            if !f.is_zero(&a) {
                let minor = self.pf(rest & !(1 << j));
                let term = f.mul(&a, &minor);
                total = if pos % 2 == 0 { f.add(&total, &term) } else { f.sub(&total, &term) };
            }
            pos += 1;
        }
        self.memo.insert(mask, total.clone());
        total
    }
}

fn full_mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// `Pf(A)` by expansion along the first row, `Pf([[0,a],[-a,0]]) = a`.
pub fn pfaffian<F: Field>(a: &SkewMatrix<F>) -> Result<F::Elem> {
    if a.size > MAX_PFAFFIAN_SIZE {
        return Err(Error::cap("pfaffian size", a.size as u128, MAX_PFAFFIAN_SIZE as u128));
    }
    Ok(PfaffianMemo::new(a).pf(full_mask(a.size)))
}

/// A length-`2^k` vector indexed by subsets of `k` wires.
#[derive(Clone, Debug, PartialEq)]
pub struct SignatureVector<F: Field> {
    field: F,
    wires: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> SignatureVector<F> {
    pub fn new(field: F, entries: Vec<F::Elem>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::dim(format!("signature length {n} is not a power of two")));
        }
        Ok(SignatureVector {
            field,
            wires: n.trailing_zeros() as usize,
            entries,
        })
    }

    pub fn from_i64(field: F, entries: &[i64]) -> Result<Self> {
        let e = entries.iter().map(|&x| field.from_i64(x)).collect();
        Self::new(field, e)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn wires(&self) -> usize {
        self.wires
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.entries
    }

    pub fn get(&self, subset: usize) -> &F::Elem {
        &self.entries[subset]
    }
}

/// Entry `J ⊆ I` is `Pf` of `a` with the nodes of `J` deleted; wire `i`
/// of the signature is node `universe[i]`.
pub fn sub_pfaffian_vector<F: Field>(a: &SkewMatrix<F>, universe: &[usize]) -> Result<SignatureVector<F>> {
    if a.size > MAX_PFAFFIAN_SIZE {
        return Err(Error::cap("pfaffian size", a.size as u128, MAX_PFAFFIAN_SIZE as u128));
    }
    let mut seen = 0u32;
    for &u in universe {
        if u >= a.size || seen & (1 << u) != 0 {
            return Err(Error::invalid(format!("universe {universe:?} is not a set of nodes below {}", a.size)));
        }
        seen |= 1 << u;
    }
    let full = full_mask(a.size);
    let mut memo = PfaffianMemo::new(a);
    let entries = (0..1usize << universe.len())
        .map(|j| {
            let deleted = universe
                .iter()
                .enumerate()
                .filter(|&(i, _)| j >> i & 1 == 1)
                .fold(0u32, |m, (_, &u)| m | 1 << u);
            memo.pf(full & !deleted)
        })
        .collect();
    SignatureVector::new(a.field.clone(), entries)
}

/// An undirected graph with weighted edges `(i, j, w)`, `i < j`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph<F: Field> {
    field: F,
    nodes: usize,
    edges: Vec<(usize, usize, F::Elem)>,
}

impl<F: Field> WeightedGraph<F> {
    pub fn new(field: F, nodes: usize, edges: Vec<(usize, usize, F::Elem)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for (i, j, _) in &edges {
            if i >= j {
                return Err(Error::invalid(format!("edge ({i},{j}) must satisfy i < j")));
            }
            if *j >= nodes {
                return Err(Error::invalid(format!("edge ({i},{j}) leaves the {nodes} nodes")));
            }
            if !seen.insert((*i, *j)) {
                return Err(Error::invalid(format!("duplicate edge ({i},{j})")));
            }
        }
        Ok(WeightedGraph { field, nodes, edges })
    }

    /// Unit weights on the given edges.
    pub fn unweighted(field: F, nodes: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let e = edges.iter().map(|&(i, j)| (i, j, field.one())).collect();
        Self::new(field, nodes, e)
    }

    pub fn complete(field: F, n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Self::unweighted(field, n, &edges).expect("complete graph is simple")
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(field: F, a: usize, b: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))).collect();
        Self::unweighted(field, a + b, &edges).expect("complete bipartite graph is simple")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize, F::Elem)] {
        &self.edges
    }

    /// Skew matrix with `a_ij = ±w` for edge `(i, j, w)`; `signs[e]` is the
    /// sign of edge `e` (`true` for minus).
    pub fn skew_matrix(&self, minus: &[bool]) -> SkewMatrix<F> {
        let f = &self.field;
        let mut a = SkewMatrix::zeros(f.clone(), self.nodes);
        for ((i, j, w), &neg) in self.edges.iter().zip(minus) {
            a.set(*i, *j, if neg { f.neg(w) } else { w.clone() });
        }
        a
    }
}

/// Σ over perfect matchings of the product of matched edge weights.
pub fn count_matchings<F: Field>(g: &WeightedGraph<F>) -> Result<F::Elem> {
    if g.nodes > MAX_MATCHING_NODES {
        return Err(Error::cap("matching node count", g.nodes as u128, MAX_MATCHING_NODES as u128));
    }
    let f = &g.field;
    let mut adj: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); g.nodes];
    for (i, j, w) in &g.edges {
        adj[*i].push((*j, w.clone()));
        adj[*j].push((*i, w.clone()));
    }
    fn rec<F: Field>(f: &F, adj: &[Vec<(usize, F::Elem)>], mask: u32, memo: &mut HashMap<u32, F::Elem>) -> F::Elem {
        if mask == 0 {
            return f.one();
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let i = mask.trailing_zeros() as usize;
        let mut total = f.zero();
        for (j, w) in &adj[i] {
            if mask >> j & 1 == 1 {
                let sub = rec(f, adj, mask & !(1 << i) & !(1 << j), memo);
                total = f.add(&total, &f.mul(w, &sub));
            }
        }
        memo.insert(mask, total.clone());
        total
    }
    if g.nodes % 2 == 1 {
        return Ok(f.zero());
    }
    Ok(rec(f, &adj, full_mask(g.nodes), &mut HashMap::new()))
}

/// Outcome of the exhaustive orientation search.
#[derive(Clone, Debug, PartialEq)]
pub struct OrientationSearch<F: Field> {
    /// Per-edge sign (`+1` or `-1`) of the first orientation found.
    pub orientation: Option<Vec<i8>>,
    pub matchings: F::Elem,
    pub pfaffian: Option<F::Elem>,
    /// Sign vectors examined, in lexicographic order.
    pub candidates_checked: u64,
}

/// First sign vector (lexicographic, `+` before `-`, edge 0 most
/// significant) whose skew matrix has `|Pf|` equal to the matching sum.
pub fn pfaffian_orientation_search<F: Field>(g: &WeightedGraph<F>) -> Result<OrientationSearch<F>> {
    let e = g.edges.len();
    if e > MAX_ORIENTATION_EDGES {
        return Err(Error::cap("orientation search edges", e as u128, MAX_ORIENTATION_EDGES as u128));
    }
    let count = count_matchings(g)?;
    let f = &g.field;
    let neg_count = f.neg(&count);
    let signs = |s: u64| -> Vec<bool> { (0..e).map(|k| s >> (e - 1 - k) & 1 == 1).collect() };
    let total = 1u64 << e;
    let found = (0..total).into_par_iter().find_first(|&s| {
        let pf = pfaffian(&g.skew_matrix(&signs(s))).expect("size within matching cap");
        pf == count || pf == neg_count
    });
    Ok(match found {
        Some(s) => {
            let minus = signs(s);
            OrientationSearch {
                orientation: Some(minus.iter().map(|&m| if m { -1 } else { 1 }).collect()),
                pfaffian: Some(pfaffian(&g.skew_matrix(&minus))?),
                matchings: count,
                candidates_checked: s + 1,
            }
        }
        None => OrientationSearch {
            orientation: None,
            pfaffian: None,
            matchings: count,
            candidates_checked: total,
        },
    })
}

/// Residuals of the matchgate identities: for every pair of subsets
/// `α < β` with symmetric difference `{p_1 < … < p_l}`,
/// `Σ_i (-1)^i s[α ⊕ p_i] s[β ⊕ p_i]`. All vanish on sub-Pfaffian vectors.
pub fn mgi_residuals<F: Field>(s: &SignatureVector<F>) -> Result<Vec<F::Elem>> {
    let k = s.wires;
    if k > MAX_MGI_WIRES {
        return Err(Error::cap("matchgate identity wires", k as u128, MAX_MGI_WIRES as u128));
    }
    let n = 1usize << k;
    let f = &s.field;
    let rows: Vec<Vec<F::Elem>> = (0..n)
        .into_par_iter()
        .map(|alpha| {
            (alpha + 1..n)
                .map(|beta| {
                    let diff = alpha ^ beta;
                    let mut acc = f.zero();
                    let mut i = 0;
                    for p in 0..k {
                        if diff >> p & 1 == 0 {
                            continue;
                        }
                        i += 1;
                        let term = f.mul(&s.entries[alpha ^ 1 << p], &s.entries[beta ^ 1 << p]);
                        acc = if i % 2 == 0 { f.add(&acc, &term) } else { f.sub(&acc, &term) };
                    }
                    acc
                })
                .collect()
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

/// `true` when every matchgate identity residual vanishes.
pub fn satisfies_mgi<F: Field>(s: &SignatureVector<F>) -> Result<bool> {
    Ok(mgi_residuals(s)?.iter().all(|r| s.field.is_zero(r)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Generator,
    Recognizer,
}

fn digits(mut x: usize, base: usize, k: usize) -> Vec<usize> {
    (0..k)
        .map(|_| {
            let d = x % base;
            x /= base;
            d
        })
        .collect()
}

/// Applies the wire basis change `b` (a `2 × c` matrix) to every wire.
///
/// Generator side: `2^k` entries in, `c^k` out, with
/// `out[j] = Σ_S s_S Π_i b[bit_i(S), j_i]`. Recognizer side: the transpose,
/// `c^k` in and `2^k` out. C-ary indices are little-endian like subsets.
pub fn transform_signature<F: Field>(s: &[F::Elem], field: &F, b: &Matrix<F>, side: Side) -> Result<Vec<F::Elem>> {
    if b.rows() != 2 || b.cols() == 0 {
        return Err(Error::dim(format!("basis change must be 2 x c, got {}x{}", b.rows(), b.cols())));
    }
    let c = b.cols();
    let (in_base, out_base) = match side {
        Side::Generator => (2, c),
        Side::Recognizer => (c, 2),
    };
    let mut k = 0;
    let mut len = 1usize;
    while len < s.len() {
        len = len.checked_mul(in_base).ok_or_else(|| Error::dim("signature too long"))?;
        k += 1;
    }
    if len != s.len() {
        return Err(Error::dim(format!("signature length {} is not a power of {in_base}", s.len())));
    }
    let out_len = out_base.pow(k as u32);
    let coefficient = |bits: &[usize], js: &[usize]| {
        bits.iter()
            .zip(js)
            .fold(field.one(), |acc, (&bit, &j)| field.mul(&acc, b.get(bit, j)))
    };
    Ok((0..out_len)
        .map(|o| {
            let od = digits(o, out_base, k);
            s.iter().enumerate().fold(field.zero(), |acc, (i, x)| {
                if field.is_zero(x) {
                    return acc;
                }
                let id = digits(i, in_base, k);
                let w = match side {
                    Side::Generator => coefficient(&id, &od),
                    Side::Recognizer => coefficient(&od, &id),
                };
                field.add(&acc, &field.mul(x, &w))
            })
        })
        .collect())
}
