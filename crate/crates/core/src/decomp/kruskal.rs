use rayon::prelude::*;

use super::Decomposition;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// Largest column count accepted by [`kruskal_rank`].
pub const MAX_KRUSKAL_COLUMNS: usize = 12;

/// Largest `k` such that every `k` columns are linearly independent;
/// `0` if some column vanishes.
pub fn kruskal_rank<F: Field>(m: &Matrix<F>) -> Result<usize> {
    let n = m.cols();
    if n > MAX_KRUSKAL_COLUMNS {
        return Err(Error::cap("kruskal rank columns", n as u128, MAX_KRUSKAL_COLUMNS as u128));
    }
    let cols: Vec<Vec<F::Elem>> = (0..n).map(|j| m.column(j)).collect();
    let f = m.field();
    let mut k = 0;
    for size in 1..=n.min(m.rows()) {
        let all_independent = subsets(n, size).into_par_iter().all(|s| {
            let picked: Vec<Vec<F::Elem>> = s.iter().map(|&j| cols[j].clone()).collect();
            Matrix::from_columns(f.clone(), m.rows(), &picked)
                .expect("columns share a length")
                .rank()
                == size
        });
        if !all_independent {
            break;
        }
        k = size;
    }
    Ok(k)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

/// Kruskal's sufficient condition `k_1 + k_2 + k_3 ≥ 2r + 2` for the
/// decomposition to be the unique one of its length. A single summand is
/// reported unique.
pub fn kruskal_uniqueness<F: Field>(d: &Decomposition<F>) -> Result<bool> {
    if d.order() != 3 {
        return Err(Error::invalid(format!(
            "Kruskal's condition needs exactly 3 factors, got {}",
            d.order()
        )));
    }
    let r = d.len();
    if r <= 1 {
        return Ok(true);
    }
    let mut total = 0;
    for k in 0..3 {
        total += kruskal_rank(&d.factor_matrix(k))?;
    }
    Ok(total >= 2 * r + 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, Rationals};
    use crate::matrix::rank_exact;
    use crate::sampling::{nonzero_int_vector, Rng64};
    use crate::tensor::Shape;

    #[test]
    fn examples() {
        assert_eq!(kruskal_rank(&Matrix::identity(Rationals, 3)).unwrap(), 3);
        let rep = Matrix::from_i64(Rationals, &[&[1, 1, 0], &[2, 2, 1]]).unwrap();
        assert_eq!(kruskal_rank(&rep).unwrap(), 1);
        let zero_col = Matrix::from_i64(Rationals, &[&[1, 0], &[0, 0]]).unwrap();
        assert_eq!(kruskal_rank(&zero_col).unwrap(), 0);
        let wide = Matrix::zeros(Rationals, 2, 13);
        assert!(matches!(kruskal_rank(&wide), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn random_four_by_six() {
        let mut rng = Rng64::new(3);
        let m = Matrix::from_fn(Rationals, 4, 6, |_, _| int(crate::sampling::small_int(&mut rng)));
        let k = kruskal_rank(&m).unwrap();
        // oracle: every 4-subset of columns has full rank
        let all = subsets(6, 4).iter().all(|s| {
            let c: Vec<_> = s.iter().map(|&j| m.column(j)).collect();
            rank_exact(&Matrix::from_columns(Rationals, 4, &c).unwrap()) == 4
        });
        assert!(all);
        assert_eq!(k, 4);
        assert!(k <= rank_exact(&m));
    }

    #[test]
    fn uniqueness() {
        let e = |i: usize| (0..3).map(|j| int((i == j) as i64)).collect::<Vec<_>>();
        let diag = Decomposition::new(
            Rationals,
            Shape::new(vec![3, 3, 3]).unwrap(),
            (0..3).map(|i| vec![e(i), e(i), e(i)]).collect(),
        )
        .unwrap();
        assert!(kruskal_uniqueness(&diag).unwrap());
        let single = Decomposition::from_summands(Rationals, vec![vec![e(0), e(1), e(2)]]).unwrap();
        assert!(kruskal_uniqueness(&single).unwrap());

        let mut rng = Rng64::new(9);
        let mut v = || nonzero_int_vector(&mut rng, 5).into_iter().map(int).collect::<Vec<_>>();
        let summands = (0..3).map(|_| vec![v(), v(), v()]).collect();
        let generic = Decomposition::from_summands(Rationals, summands).unwrap();
        assert!(kruskal_uniqueness(&generic).unwrap());

        let two = Decomposition::from_summands(Rationals, vec![vec![e(0), e(1)]]).unwrap();
        assert!(kruskal_uniqueness(&two).is_err());
    }
}
