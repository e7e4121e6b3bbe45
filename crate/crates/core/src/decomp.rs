//! `X = L Q` decompositions: orthogonal Gram-Schmidt and its symplectic
//! block analogue over the `M_2` valued skew form.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{BaseField, Field};
use crate::matrix::{GroupKind, Mat};
use crate::tower::{TowerElem, TowerField};

pub type TMat<K> = Mat<TowerElem<K>>;

/// A row of 2x2 blocks, stored as a `2 x 2n` matrix.
pub type BlockRow<K> = TMat<K>;

#[derive(Clone, Debug)]
pub struct LQPair<K> {
    pub l: TMat<K>,
    pub q: TMat<K>,
    pub kind: GroupKind,
    /// Per pivot: the radicand whose root normalizes row (or block row) `k`.
    pub radicands: Vec<TowerElem<K>>,
    /// Per pivot: the root taken.
    pub roots: Vec<TowerElem<K>>,
}

fn dot<F: Field>(u: &[F], v: &[F]) -> F {
    u.iter()
        .zip(v)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
}

fn check(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::CheckFailed(what.into()))
    }
}

fn require_square_in<K: BaseField>(x: &TMat<K>, field: &TowerField<K>) -> Result<()> {
    if !x.is_square() {
        return Err(Error::Dimension(format!("{}x{} matrix is not square", x.rows(), x.cols())));
    }
    if x.entries().iter().any(|e| !field.contains(e)) {
        return Err(Error::TowerMismatch);
    }
    Ok(())
}

/// Classical Gram-Schmidt on the rows of `X`, normalized with square roots from `field`.
pub fn orthogonal_gs<K: BaseField>(x: &TMat<K>, field: &mut TowerField<K>) -> Result<LQPair<K>> {
    require_square_in(x, field)?;
    let n = x.rows();
    let mut ys: Vec<Vec<TowerElem<K>>> = Vec::with_capacity(n);
    let mut norms: Vec<TowerElem<K>> = Vec::with_capacity(n);
    for k in 0..n {
        let xk = x.row(k);
        let mut y = xk.to_vec();
        for i in 0..k {
            let c = dot(&ys[i], xk).div(&norms[i])?;
            if c.is_zero() {
                continue;
            }
            for (yj, yij) in y.iter_mut().zip(&ys[i]) {
                *yj = yj.sub(&c.mul(yij));
            }
        }
        let r = dot(&y, &y);
        if r.is_zero() {
            if y.iter().all(|e| e.is_zero()) {
                return Err(Error::Singular);
            }
            return Err(Error::IsotropicPivot(k));
        }
        ys.push(y);
        norms.push(r);
    }
    let mut roots = Vec::with_capacity(n);
    let mut q_rows = Vec::with_capacity(n);
    for (y, r) in ys.iter().zip(&norms) {
        let s = field.adjoin_sqrt(r)?;
        let si = s.inv()?;
        q_rows.push(y.iter().map(|e| e.mul(&si)).collect::<Vec<_>>());
        roots.push(s);
    }
    let q = Mat::from_rows(q_rows)?;
    let qt = q.transpose();
    check(q.matmul(&qt)?.is_identity(), "Q Qᵀ = I")?;
    let l = x.matmul(&qt)?;
    check(l.is_lower_triangular(), "L lower triangular")?;
    for (k, root) in roots.iter().enumerate() {
        check(l.get(k, k) == root, "L diagonal = √⟨Y_k, Y_k⟩")?;
    }
    check(l.matmul(&q)? == *x, "L Q = X")?;
    Ok(LQPair {
        l,
        q,
        kind: GroupKind::Orthogonal,
        radicands: norms,
        roots,
    })
}

/// Block row `k` of a `2n x 2n` matrix.
pub fn block_row<K: BaseField>(x: &TMat<K>, k: usize) -> BlockRow<K> {
    x.block(2 * k, 0, 2, x.cols())
}

/// `⟨U, V⟩ = U Ω Vᵀ`.
pub fn block_form<K: BaseField>(u: &BlockRow<K>, v: &BlockRow<K>) -> Result<TMat<K>> {
    if u.rows() != 2 || v.rows() != 2 || u.cols() != v.cols() || !u.cols().is_multiple_of(2) {
        return Err(Error::Dimension("block rows must be 2 x 2n of equal length".into()));
    }
    // U Ω has columns (2i, 2i+1) = (-u[.,2i+1], u[.,2i])
    let uo = Mat::from_fn(2, u.cols(), |r, c| {
        if c % 2 == 0 {
            u.get(r, c + 1).neg()
        } else {
            u.get(r, c - 1).clone()
        }
    });
    uo.matmul(&v.transpose())
}

/// `d(U) = Σ det(u_i)`.
pub fn block_det_sum<K: BaseField>(u: &BlockRow<K>) -> TowerElem<K> {
    (0..u.cols() / 2).fold(TowerElem::zero(), |acc, i| {
        let d = u.get(0, 2 * i).mul(u.get(1, 2 * i + 1)).sub(&u.get(0, 2 * i + 1).mul(u.get(1, 2 * i)));
        acc.add(&d)
    })
}

/// Symplectic block Gram-Schmidt: `Y_k = X_k + Σ d(Y_i)⁻¹ ⟨X_k, Y_i⟩ J Y_i`, `Q_k = Y_k √(d(Y_k)⁻¹)`.
pub fn symplectic_block_gs<K: BaseField>(x: &TMat<K>, field: &mut TowerField<K>) -> Result<LQPair<K>> {
    require_square_in(x, field)?;
    if !x.rows().is_multiple_of(2) {
        return Err(Error::Dimension(format!("symplectic dimension {} is odd", x.rows())));
    }
    let n = x.rows() / 2;
    let j = TMat::<K>::j();
    let mut ys: Vec<BlockRow<K>> = Vec::with_capacity(n);
    let mut ds: Vec<TowerElem<K>> = Vec::with_capacity(n);
    for k in 0..n {
        let xk = block_row(x, k);
        let mut y = xk.clone();
        for i in 0..k {
            let g = block_form(&xk, &ys[i])?;
            if g.is_zero() {
                continue;
            }
            let c = ds[i].inv()?;
            let t = g.matmul(&j)?.matmul(&ys[i])?.scale(&c);
            y = y.add(&t)?;
        }
        let d = block_det_sum(&y);
        if d.is_zero() {
            if y.is_zero() {
                return Err(Error::Singular);
            }
            return Err(Error::BlockIsotropicPivot(k));
        }
        ys.push(y);
        ds.push(d);
    }
    let mut radicands = Vec::with_capacity(n);
    let mut roots = Vec::with_capacity(n);
    let mut rows = Vec::with_capacity(2 * n);
    for (y, d) in ys.iter().zip(&ds) {
        let r = d.inv()?;
        let s = field.adjoin_sqrt(&r)?;
        let qk = y.scale(&s);
        rows.extend(qk.row_vecs());
        radicands.push(r);
        roots.push(s);
    }
    let q = Mat::from_rows(rows)?;
    let om = TMat::<K>::omega(n);
    check(q.matmul(&om)?.matmul(&q.transpose())? == om, "Q Ω Qᵀ = Ω")?;
    for a in 0..n {
        for b in 0..n {
            let g = block_form(&block_row(&q, a), &block_row(&q, b))?;
            let want = if a == b { j.clone() } else { Mat::zeros(2, 2) };
            check(g == want, "⟨Q_i, Q_j⟩ = δ_ij J")?;
        }
    }
    // Q⁻¹ = -Ω Qᵀ Ω
    let qinv = om.matmul(&q.transpose())?.matmul(&om)?.neg();
    let l = x.matmul(&qinv)?;
    check(l.is_block_lower_triangular(), "L block lower triangular")?;
    check(l.matmul(&q)? == *x, "L Q = X")?;
    Ok(LQPair {
        l,
        q,
        kind: GroupKind::Symplectic,
        radicands,
        roots,
    })
}

/// Lifts a base-field matrix into tower elements.
pub fn lift<K: BaseField>(m: &Mat<K>) -> TMat<K> {
    m.map(|k| TowerElem::base(k.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn hand_gram_schmidt() {
        let x = Mat::from_rows(alloc::vec![alloc::vec![q(3, 1), q(4, 1)], alloc::vec![q(0, 1), q(5, 1)]]).unwrap();
        let mut f = TowerField::new();
        let lq = orthogonal_gs(&lift(&x), &mut f).unwrap();
        let want_q = Mat::from_rows(alloc::vec![alloc::vec![q(3, 5), q(4, 5)], alloc::vec![q(-4, 5), q(3, 5)]]).unwrap();
        let want_l = Mat::from_rows(alloc::vec![alloc::vec![q(5, 1), q(0, 1)], alloc::vec![q(4, 1), q(3, 1)]]).unwrap();
        assert_eq!(lq.q, lift(&want_q));
        assert_eq!(lq.l, lift(&want_l));
        assert_eq!(f.depth(), 0);
    }

    #[test]
    fn isotropic_row() {
        let mut f = TowerField::<Rational>::new();
        let i = f.adjoin_sqrt(&TowerElem::base(q(-1, 1))).unwrap();
        let x = Mat::from_rows(alloc::vec![
            alloc::vec![TowerElem::one(), i],
            alloc::vec![TowerElem::zero(), TowerElem::one()],
        ])
        .unwrap();
        assert_eq!(orthogonal_gs(&x, &mut f).unwrap_err(), Error::IsotropicPivot(0));
    }

    #[test]
    fn block_isotropic() {
        let e = |v: i64| q(v, 1);
        let x = Mat::from_rows(alloc::vec![
            alloc::vec![e(1), e(0), e(0), e(1)],
            alloc::vec![e(0), e(1), e(1), e(0)],
            alloc::vec![e(0), e(0), e(1), e(0)],
            alloc::vec![e(0), e(0), e(0), e(1)],
        ])
        .unwrap();
        assert!(!Field::is_zero(&x.det().unwrap()));
        let mut f = TowerField::new();
        assert_eq!(
            symplectic_block_gs(&lift(&x), &mut f).unwrap_err(),
            Error::BlockIsotropicPivot(0)
        );
    }
}
