//! Independent determinant and Pfaffian expansions.

use reidemeister_core::matrix::Mat;
use reidemeister_core::Field;

/// Signed sum over permutations, built row by row.
pub fn leibniz<F: Field>(m: &Mat<F>) -> F {
    fn go<F: Field>(m: &Mat<F>, row: usize, used: &mut Vec<bool>) -> F {
        if row == m.rows() {
            return F::one();
        }
        let mut acc = F::zero();
        for j in 0..m.cols() {
            if used[j] {
                continue;
            }
            let skipped = (0..j).filter(|&c| !used[c]).count();
            used[j] = true;
            let t = m.get(row, j).mul(&go(m, row + 1, used));
            used[j] = false;
            acc = if skipped % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        acc
    }
    go(m, 0, &mut vec![false; m.cols()])
}

/// Pfaffian by expansion along the first row.
pub fn pfaffian<F: Field>(m: &Mat<F>) -> F {
    let n = m.rows();
    if n == 0 {
        return F::one();
    }
    let mut acc = F::zero();
    for j in 1..n {
        let keep: Vec<usize> = (1..n).filter(|&k| k != j).collect();
        let minor = Mat::from_fn(n - 2, n - 2, |a, b| m.get(keep[a], keep[b]).clone());
        let t = m.get(0, j).mul(&pfaffian(&minor));
        acc = if j % 2 == 1 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}
