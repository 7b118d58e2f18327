//! Characters of the symmetric group and Kronecker coefficients.
//!
//! Characters come from the Murnaghan–Nakayama rule on beta-sets: removing
//! a border strip of length `k` moves one bead `k` places down, with sign
//! `(-1)^{beads jumped}`. Kronecker coefficients are character sums
//!
//! `K_{λμν} = (1/n!) Σ_C |C| χ_λ(C) χ_μ(C) χ_ν(C)`.
//!
//! Character tables are built once per `n` and shared.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest `n` for [`partitions_of`].
pub const MAX_PARTITION_N: usize = 20;
/// Largest `n` for [`character`].
pub const MAX_CHARACTER_N: usize = 16;
/// Largest `n` for [`kronecker_coefficient`].
pub const MAX_KRONECKER_N: usize = 14;

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::invalid(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The rectangle with `rows` parts equal to `width`.
    pub fn rectangle(width: usize, rows: usize) -> Self {
        if width == 0 {
            return Partition::empty();
        }
        Partition(vec![width; rows])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Self {
        let width = self.0.first().copied().unwrap_or(0);
        Partition((1..=width).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    /// Every part multiplied by `k`.
    pub fn stretch(&self, k: usize) -> Self {
        Partition(self.0.iter().map(|p| p * k).collect())
    }

    /// `z_λ = Π i^{m_i} m_i!`, the centralizer order of the class of cycle type `λ`.
    pub fn centralizer_order(&self) -> u128 {
        let mut counts: HashMap<usize, u32> = HashMap::new();
        for &p in &self.0 {
            *counts.entry(p).or_default() += 1;
        }
        counts.iter().fold(1u128, |acc, (&i, &m)| {
            acc * (i as u128).pow(m) * (1..=m as u128).product::<u128>()
        })
    }

    /// Number of standard tableaux, by the hook length formula.
    pub fn dimension(&self) -> u128 {
        let n = self.size() as u128;
        let conj = self.conjugate();
        let mut hooks = 1u128;
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                hooks *= (row - j + conj.0[j] - i - 1) as u128;
            }
        }
        (1..=n).product::<u128>() / hooks
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::invalid(format!("bad partition part `{x}`"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// All partitions of `n` in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Result<Vec<Partition>> {
    if n > MAX_PARTITION_N {
        return Err(Error::cap("partition size", n as u128, MAX_PARTITION_N as u128));
    }
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    Ok(out)
}

/// A conjugacy class of `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassData {
    pub cycle_type: Partition,
    pub size: u128,
}

/// Beta-set of `λ` with `len` beads: `λ_i + len - 1 - i`.
fn beta_set(lambda: &[usize], len: usize) -> Vec<usize> {
    (0..len)
        .map(|i| lambda.get(i).copied().unwrap_or(0) + len - 1 - i)
        .collect()
}

fn from_beta(beta: &[usize]) -> Vec<usize> {
    let len = beta.len();
    let mut b = beta.to_vec();
    b.sort_unstable_by(|x, y| y.cmp(x));
    b.iter()
        .enumerate()
        .map(|(i, &x)| x + i + 1 - len)
        .filter(|&p| p > 0)
        .collect()
}

fn mn_character(lambda: &[usize], mu: &[usize], memo: &mut HashMap<(Vec<usize>, Vec<usize>), i64>) -> i64 {
    if mu.is_empty() {
        return i64::from(lambda.is_empty());
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let k = mu[0];
    let len = lambda.len().max(1);
    let beta = beta_set(lambda, len);
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let jumped = beta.iter().filter(|&&x| x > b - k && x < b).count();
        let mut next = beta.clone();
        next[i] = b - k;
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        total += sign * mn_character(&from_beta(&next), &mu[1..], memo);
    }
    memo.insert(key, total);
    total
}

/// `χ_λ(μ)` for `|λ| = |μ| <= 16`.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(Error::dim(format!(
            "character of a partition of {} on a class of {}",
            lambda.size(),
            mu.size()
        )));
    }
    if lambda.size() > MAX_CHARACTER_N {
        return Err(Error::cap("character size", lambda.size() as u128, MAX_CHARACTER_N as u128));
    }
    if lambda.size() <= MAX_KRONECKER_N {
        let table = character_table(lambda.size())?;
        return Ok(table.value(lambda, mu));
    }
    Ok(mn_character(lambda.parts(), mu.parts(), &mut HashMap::new()))
}

/// Character table of `S_n`: rows and columns indexed by
/// [`partitions_of`]`(n)`.
#[derive(Debug)]
pub struct CharacterTable {
    pub n: usize,
    pub partitions: Vec<Partition>,
    pub classes: Vec<ClassData>,
    values: Vec<Vec<i64>>,
    index: HashMap<Partition, usize>,
}

impl CharacterTable {
    fn build(n: usize) -> Result<Self> {
        let partitions = partitions_of(n)?;
        let factorial: u128 = (1..=n as u128).product();
        let classes = partitions
            .iter()
            .map(|p| ClassData {
                cycle_type: p.clone(),
                size: factorial / p.centralizer_order(),
            })
            .collect();
        let mut memo = HashMap::new();
        let values = partitions
            .iter()
            .map(|l| partitions.iter().map(|m| mn_character(l.parts(), m.parts(), &mut memo)).collect())
            .collect();
        let index = partitions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(CharacterTable {
            n,
            partitions,
            classes,
            values,
            index,
        })
    }

    pub fn value(&self, lambda: &Partition, mu: &Partition) -> i64 {
        self.values[self.index[lambda]][self.index[mu]]
    }

    pub fn row(&self, lambda: &Partition) -> &[i64] {
        &self.values[self.index[lambda]]
    }
}

/// Shared character table of `S_n`, `n <= 14`.
pub fn character_table(n: usize) -> Result<Arc<CharacterTable>> {
    if n > MAX_KRONECKER_N {
        return Err(Error::cap("character table size", n as u128, MAX_KRONECKER_N as u128));
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CharacterTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("cache lock").get(&n) {
        return Ok(t.clone());
    }
    let table = Arc::new(CharacterTable::build(n)?);
    Ok(cache.lock().expect("cache lock").entry(n).or_insert(table).clone())
}

/// `K_{λμν}` for partitions of a common `n <= 14`.
pub fn kronecker_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    let n = lambda.size();
    if mu.size() != n || nu.size() != n {
        return Err(Error::dim(format!(
            "Kronecker coefficient of partitions of {n}, {} and {}",
            mu.size(),
            nu.size()
        )));
    }
    let table = character_table(n)?;
    let (a, b, c) = (table.row(lambda), table.row(mu), table.row(nu));
    let sum: i128 = table
        .classes
        .iter()
        .enumerate()
        .map(|(i, class)| class.size as i128 * a[i] as i128 * b[i] as i128 * c[i] as i128)
        .sum();
    let factorial: i128 = (1..=n as i128).product();
    assert_eq!(sum % factorial, 0, "character sum for {lambda} {mu} {nu} not divisible by {n}!");
    let k = sum / factorial;
    assert!(k >= 0, "negative Kronecker coefficient for {lambda} {mu} {nu}");
    Ok(k as u64)
}

/// `K_{λ,δ,δ}` for the rectangle `δ`, in both orientations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RectangularReport {
    pub lambda: Partition,
    pub d: usize,
    pub n: usize,
    /// With `δ` = `n` parts equal to `d`.
    pub coefficient: u64,
    /// With `δ` = `d` parts equal to `n`.
    pub transposed_coefficient: u64,
    pub orientations_differ: bool,
    /// `ℓ(λ) > n²`, so `S_λ(A ⊗ B)` vanishes for `dim A = dim B = n`.
    pub exceeds_length: bool,
}

pub fn rectangular_kronecker(lambda: &Partition, d: usize, n: usize) -> Result<RectangularReport> {
    if lambda.size() != d * n {
        return Err(Error::dim(format!("|λ| = {} but d·n = {}", lambda.size(), d * n)));
    }
    let rect = Partition::rectangle(d, n);
    let coefficient = kronecker_coefficient(lambda, &rect, &rect)?;
    let conj = rect.conjugate();
    let transposed_coefficient = kronecker_coefficient(lambda, &conj, &conj)?;
    Ok(RectangularReport {
        lambda: lambda.clone(),
        d,
        n,
        coefficient,
        transposed_coefficient,
        orientations_differ: coefficient != transposed_coefficient,
        exceeds_length: lambda.len() > n * n,
    })
}

/// One positive entry of the Kronecker cone sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeRow {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    pub k: u64,
}

pub const MAX_CONE_DIM: usize = 4;
pub const MAX_CONE_N: usize = 10;

/// All triples with `ℓ(λ) <= p`, `ℓ(μ) <= q`, `ℓ(ν) <= r`, sizes
/// `1..=n_max`, and `K_{λμν} > 0`.
pub fn cone_sample(p: usize, q: usize, r: usize, n_max: usize) -> Result<Vec<ConeRow>> {
    for (name, v) in [("p", p), ("q", q), ("r", r)] {
        if v == 0 || v > MAX_CONE_DIM {
            return Err(Error::invalid(format!("{name} = {v} must lie in 1..={MAX_CONE_DIM}")));
        }
    }
    if n_max > MAX_CONE_N {
        return Err(Error::cap("cone sample size", n_max as u128, MAX_CONE_N as u128));
    }
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let parts = partitions_of(n)?;
        let with_len = |m: usize| parts.iter().filter(move |x| x.len() <= m);
        for l in with_len(p) {
            for m in with_len(q) {
                for v in with_len(r) {
                    let k = kronecker_coefficient(l, m, v)?;
                    if k > 0 {
                        rows.push(ConeRow {
                            lambda: l.clone(),
                            mu: m.clone(),
                            nu: v.clone(),
                            k,
                        });
                    }
                }
            }
        }
    }
    Ok(rows)
}

/// For each row whose doubled size is within the coefficient cap, the
/// coefficient of the doubled triple; positive by the semigroup property.
pub fn stretching_check(rows: &[ConeRow]) -> Result<Vec<(ConeRow, u64)>> {
    rows.iter()
        .filter(|row| 2 * row.lambda.size() <= MAX_KRONECKER_N)
        .map(|row| {
            let k2 = kronecker_coefficient(&row.lambda.stretch(2), &row.mu.stretch(2), &row.nu.stretch(2))?;
            Ok((row.clone(), k2))
        })
        .collect()
}

pub const MAX_WEYL_SIZE: usize = 12;
pub const MAX_WEYL_DIM: usize = 4;

/// Weight multiplicities of `S^d(S^n C^a)`.
fn plethysm_weights(d: usize, n: usize, a: usize) -> HashMap<Vec<usize>, u64> {
    fn monomials(n: usize, a: usize) -> Vec<Vec<usize>> {
        if a == 1 {
            return vec![vec![n]];
        }
        (0..=n)
            .rev()
            .flat_map(|first| {
                monomials(n - first, a - 1).into_iter().map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
            })
            .collect()
    }
    let monos = monomials(n, a);
    let mut out = HashMap::new();
    fn rec(
        monos: &[Vec<usize>],
        start: usize,
        left: usize,
        acc: &mut Vec<usize>,
        out: &mut HashMap<Vec<usize>, u64>,
    ) {
        if left == 0 {
            *out.entry(acc.clone()).or_default() += 1;
            return;
        }
        for i in start..monos.len() {
            for (x, m) in acc.iter_mut().zip(&monos[i]) {
                *x += m;
            }
            rec(monos, i, left - 1, acc, out);
            for (x, m) in acc.iter_mut().zip(&monos[i]) {
                *x -= m;
            }
        }
    }
    rec(&monos, 0, d, &mut vec![0; a], &mut out);
    out
}

fn permutations(a: usize) -> Vec<(Vec<usize>, i64)> {
    if a == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(a - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, a - 1);
            // inserting the largest element passes over len - pos others
            let sign = if (p.len() - pos) % 2 == 0 { s } else { -s };
            out.push((q, sign));
        }
    }
    out
}

/// Multiplicity of `S_λ C^a` in `S^d(S^n C^a)`, from the weight multiset by
/// `Σ_σ sgn(σ) m(λ + ρ − σρ)`.
pub fn plethysm_multiplicity(lambda: &Partition, d: usize, n: usize, a: usize) -> Result<u64> {
    if lambda.size() != d * n {
        return Err(Error::dim(format!("|λ| = {} but d·n = {}", lambda.size(), d * n)));
    }
    if a == 0 || a > MAX_WEYL_DIM || lambda.size() > MAX_WEYL_SIZE {
        return Err(Error::invalid(format!(
            "plethysm needs 1 <= a <= {MAX_WEYL_DIM} and |λ| <= {MAX_WEYL_SIZE}"
        )));
    }
    if lambda.len() > a {
        return Ok(0);
    }
    let weights = plethysm_weights(d, n, a);
    let lam: Vec<i64> = (0..a).map(|i| lambda.parts().get(i).copied().unwrap_or(0) as i64).collect();
    let rho: Vec<i64> = (0..a).map(|i| (a - 1 - i) as i64).collect();
    let mut total = 0i64;
    for (sigma, sign) in permutations(a) {
        let w: Option<Vec<usize>> = (0..a)
            .map(|i| usize::try_from(lam[i] + rho[i] - rho[sigma[i]]).ok())
            .collect();
        if let Some(w) = w {
            total += sign * weights.get(&w).copied().unwrap_or(0) as i64;
        }
    }
    assert!(total >= 0, "negative plethysm multiplicity");
    Ok(total as u64)
}

/// Whether `S_λ C^a` has a nonzero Weyl-group invariant in its zero weight
/// space, decided as: some `S^d(S^n C^a)` with `d·n = |λ|` contains `S_λ`.
pub fn weyl_zero_weight_invariant_exists(lambda: &Partition, a: usize) -> Result<bool> {
    let size = lambda.size();
    if a == 0 || size % a != 0 {
        return Err(Error::invalid(format!("|λ| = {size} is not divisible by a = {a}")));
    }
    if size == 0 {
        return Ok(true);
    }
    for d in 1..=size {
        if size % d == 0 && plethysm_multiplicity(lambda, d, size / d, a)? > 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Euler's pentagonal recurrence.
    fn partition_count(n: usize) -> i64 {
        let mut c = vec![0i64; n + 1];
        c[0] = 1;
        for m in 1..=n {
            let mut k = 1i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > m {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                c[m] += sign * c[m - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= m {
                    c[m] += sign * c[m - g2];
                }
                k += 1;
            }
        }
        c[n]
    }

    #[test]
    fn partition_enumeration() {
        assert_eq!(partitions_of(0).unwrap(), vec![Partition::empty()]);
        let four = partitions_of(4).unwrap();
        assert_eq!(four.iter().map(|x| x.to_string()).collect::<Vec<_>>(), ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
        for n in 0..=20 {
            assert_eq!(partitions_of(n).unwrap().len() as i64, partition_count(n));
        }
        assert_eq!(partitions_of(10).unwrap().len(), 42);
        assert!(partitions_of(21).is_err());
    }

    #[test]
    fn partition_basics() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::rectangle(2, 3), p(&[2, 2, 2]));
        assert_eq!(p(&[2, 1]).dimension(), 2);
        assert_eq!(p(&[3, 2, 1]).dimension(), 16);
        assert_eq!("3,1".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert_eq!(p(&[2, 2, 1]).centralizer_order(), 2 * 2 * 2);
    }

    #[test]
    fn character_examples() {
        for n in 1..=8 {
            let sign_of = |mu: &Partition| if (n - mu.len()) % 2 == 0 { 1 } else { -1 };
            for mu in partitions_of(n).unwrap() {
                assert_eq!(character(&p(&[n]), &mu).unwrap(), 1);
                assert_eq!(character(&Partition::rectangle(1, n), &mu).unwrap(), sign_of(&mu));
            }
            for lambda in partitions_of(n).unwrap() {
                assert_eq!(character(&lambda, &Partition::rectangle(1, n)).unwrap() as u128, lambda.dimension());
            }
        }
        assert_eq!(character(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(character(&p(&[2, 1]), &p(&[2, 1])).unwrap(), 0);
        assert_eq!(character(&p(&[2, 1]), &p(&[3])).unwrap(), -1);
        assert!(character(&p(&[2]), &p(&[1])).is_err());
        // beyond the cached tables
        assert_eq!(character(&p(&[16]), &p(&[4, 4, 4, 4])).unwrap(), 1);
    }

    #[test]
    fn orthogonality() {
        for n in 1..=8 {
            let t = character_table(n).unwrap();
            let fact: i128 = (1..=n as i128).product();
            for a in &t.partitions {
                for b in &t.partitions {
                    let s: i128 = t
                        .classes
                        .iter()
                        .enumerate()
                        .map(|(i, c)| c.size as i128 * t.row(a)[i] as i128 * t.row(b)[i] as i128)
                        .sum();
                    assert_eq!(s, if a == b { fact } else { 0 });
                }
            }
        }
    }

    #[test]
    fn kronecker_examples() {
        let l = p(&[2, 1]);
        assert_eq!(kronecker_coefficient(&l, &l, &l).unwrap(), 1);
        // direct sum over the three classes of S_3: sizes 1, 3, 2
        let direct = (1 * 2 * 2 * 2 + 3 * 0 + 2 * -1 * -1 * -1) / 6;
        assert_eq!(direct, 1);
        for n in 1..=6 {
            let parts = partitions_of(n).unwrap();
            for m in &parts {
                for v in &parts {
                    let triv = kronecker_coefficient(&p(&[n]), m, v).unwrap();
                    assert_eq!(triv, u64::from(m == v));
                    let sign = kronecker_coefficient(&Partition::rectangle(1, n), m, v).unwrap();
                    assert_eq!(sign, u64::from(*m == v.conjugate()));
                }
            }
        }
        assert!(kronecker_coefficient(&p(&[2]), &p(&[2]), &p(&[1])).is_err());
        let big = p(&[15]);
        assert!(matches!(kronecker_coefficient(&big, &big, &big), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn rectangles() {
        for n in 1..=3 {
            for d in 1..=3 {
                let r = rectangular_kronecker(&p(&[d * n]), d, n).unwrap();
                assert_eq!(r.coefficient, 1);
                assert!(!r.orientations_differ);
            }
        }
        let direct: Vec<u64> = partitions_of(4)
            .unwrap()
            .iter()
            .map(|l| kronecker_coefficient(l, &p(&[2, 2]), &p(&[2, 2])).unwrap())
            .collect();
        let rect: Vec<u64> = partitions_of(4)
            .unwrap()
            .iter()
            .map(|l| rectangular_kronecker(l, 2, 2).unwrap().coefficient)
            .collect();
        assert_eq!(direct, rect);
        assert_eq!(rect, vec![1, 0, 1, 0, 1]);
        let long = rectangular_kronecker(&Partition::rectangle(1, 6), 3, 2).unwrap();
        assert!(long.exceeds_length);
    }

    #[test]
    fn cone() {
        let rows = cone_sample(2, 2, 2, 2).unwrap();
        let mut expected = Vec::new();
        for n in 1..=2 {
            for l in partitions_of(n).unwrap() {
                for m in partitions_of(n).unwrap() {
                    for v in partitions_of(n).unwrap() {
                        let k = kronecker_coefficient(&l, &m, &v).unwrap();
                        if k > 0 {
                            expected.push((l.clone(), m.clone(), v.clone(), k));
                        }
                    }
                }
            }
        }
        let got: Vec<_> = rows.iter().map(|r| (r.lambda.clone(), r.mu.clone(), r.nu.clone(), r.k)).collect();
        assert_eq!(got, expected);
        let rows = cone_sample(3, 3, 3, 5).unwrap();
        for n in 1..=5 {
            assert!(rows.iter().any(|r| r.lambda == p(&[n]) && r.mu == p(&[n]) && r.nu == p(&[n])));
        }
        for (row, k2) in stretching_check(&rows).unwrap() {
            assert!(k2 > 0, "{row:?}");
        }
        assert!(cone_sample(5, 1, 1, 2).is_err());
        assert!(cone_sample(2, 2, 2, 11).is_err());
    }

    fn weyl_dimension(lambda: &Partition, a: usize) -> u128 {
        let l: Vec<i64> = (0..a).map(|i| lambda.parts().get(i).copied().unwrap_or(0) as i64).collect();
        let (mut num, mut den) = (1i128, 1i128);
        for i in 0..a {
            for j in i + 1..a {
                num *= (l[i] - l[j] + (j - i) as i64) as i128;
                den *= (j - i) as i128;
            }
        }
        (num / den) as u128
    }

    #[test]
    fn plethysm_decomposes_dimension() {
        let binom = |n: u128, k: u128| -> u128 { (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1)) };
        for a in 1..=3usize {
            for (d, n) in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (2, 4)] {
                let total: u128 = partitions_of(d * n)
                    .unwrap()
                    .iter()
                    .map(|l| plethysm_multiplicity(l, d, n, a).unwrap() as u128 * weyl_dimension(l, a))
                    .sum();
                let sn = binom((n + a - 1) as u128, n as u128);
                assert_eq!(total, binom(sn + d as u128 - 1, d as u128), "a={a} d={d} n={n}");
            }
        }
    }

    #[test]
    fn weyl_examples() {
        for n in [2, 4, 6] {
            assert!(weyl_zero_weight_invariant_exists(&p(&[n]), 2).unwrap());
        }
        assert!(!weyl_zero_weight_invariant_exists(&p(&[1, 1]), 2).unwrap());
        assert!(weyl_zero_weight_invariant_exists(&p(&[2, 2]), 2).unwrap());
        assert_eq!(plethysm_multiplicity(&p(&[2, 2]), 2, 2, 2).unwrap(), 1);
        assert!(weyl_zero_weight_invariant_exists(&p(&[1, 1]), 3).is_err());
    }
}
