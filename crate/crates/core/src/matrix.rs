//! Dense matrices over any [`Field`], group predicates and random test matrices.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ratfunc::{RatFn, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupKind {
    Orthogonal,
    SpecialOrthogonal,
    Symplectic,
}

impl GroupKind {
    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Orthogonal => "orthogonal",
            GroupKind::SpecialOrthogonal => "special-orthogonal",
            GroupKind::Symplectic => "symplectic",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "orthogonal" => Some(GroupKind::Orthogonal),
            "special-orthogonal" => Some(GroupKind::SpecialOrthogonal),
            "symplectic" => Some(GroupKind::Symplectic),
            _ => None,
        }
    }

    pub fn check_dim(self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::Dimension("dimension must be positive".into()));
        }
        if self == GroupKind::Symplectic && !n.is_multiple_of(2) {
            return Err(Error::Dimension(format!("symplectic dimension {n} is odd")));
        }
        Ok(())
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| F::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn diagonal(d: &[F]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { F::zero() })
    }

    /// `diag(-1, 1, ..., 1)`.
    pub fn reflection(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| match (i == j, i) {
            (true, 0) => F::one().neg(),
            (true, _) => F::one(),
            _ => F::zero(),
        })
    }

    /// `J = [[0, 1], [-1, 0]]`.
    pub fn j() -> Self {
        Self::omega(1)
    }

    /// `J ⊕ ... ⊕ J` with `n` blocks.
    pub fn omega(n: usize) -> Self {
        Self::from_fn(2 * n, 2 * n, |i, j| {
            if i / 2 != j / 2 {
                F::zero()
            } else if i % 2 == 0 && j % 2 == 1 {
                F::one()
            } else if i % 2 == 1 && j % 2 == 0 {
                F::one().neg()
            } else {
                F::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<F> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<G: Field>(&self, f: impl FnMut(&F) -> G) -> Mat<G> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<G: Field, E>(&self, f: impl FnMut(&F) -> core::result::Result<G, E>) -> core::result::Result<Mat<G>, E> {
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<core::result::Result<_, _>>()?,
        })
    }

    /// Square submatrix `[r0, r0+n) x [c0, c0+n)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        Self::from_fn(h, w, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| c.mul(x))
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn matmul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = F::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b));
                }
                out.push(acc);
            }
        }
        Ok(Mat {
            rows: self.rows,
            cols: o.cols,
            data: out,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "{}x{} matrix is not square",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    /// Gauss-Jordan elimination with the first nonzero pivot in each column.
    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut inv = Self::identity(n).row_vecs();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(col, p);
            inv.swap(col, p);
            let pinv = a[col][col].inv()?;
            for k in 0..n {
                a[col][k] = a[col][k].mul(&pinv);
                inv[col][k] = inv[col][k].mul(&pinv);
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for k in 0..n {
                    if !a[col][k].is_zero() {
                        a[r][k] = a[r][k].sub(&f.mul(&a[col][k]));
                    }
                    if !inv[col][k].is_zero() {
                        inv[r][k] = inv[r][k].sub(&f.mul(&inv[col][k]));
                    }
                }
            }
        }
        Self::from_rows(inv)
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> Result<F> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(F::one());
        }
        let mut a = self.row_vecs();
        let mut prev = F::one();
        let mut negate = false;
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(F::zero());
            };
            if p != k {
                a.swap(k, p);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = if prev.is_one() { t } else { t.div(&prev)? };
                }
                a[i][k] = F::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { d.neg() } else { d })
    }

    /// Laplace expansion along the first row.
    pub fn det_cofactor(&self) -> Result<F> {
        self.require_square()?;
        fn rec<F: Field>(m: &[Vec<F>]) -> F {
            let n = m.len();
            if n == 0 {
                return F::one();
            }
            if n == 1 {
                return m[0][0].clone();
            }
            let mut acc = F::zero();
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<F>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let t = m[0][c].mul(&rec(&minor));
                acc = if c % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            acc
        }
        Ok(rec(&self.row_vecs()))
    }

    pub fn direct_sum(&self, o: &Self) -> Result<Self> {
        self.require_square()?;
        o.require_square()?;
        let n = self.rows;
        let m = o.rows;
        Ok(Self::from_fn(n + m, n + m, |i, j| {
            if i < n && j < n {
                self.get(i, j).clone()
            } else if i >= n && j >= n {
                o.get(i - n, j - n).clone()
            } else {
                F::zero()
            }
        }))
    }

    pub fn direct_sum_all(blocks: &[Self]) -> Result<Self> {
        let mut acc = Mat::zeros(0, 0);
        for b in blocks {
            acc = acc.direct_sum(b)?;
        }
        Ok(acc)
    }

    /// `M Mᵀ = I`.
    pub fn is_orthogonal(&self) -> bool {
        self.is_square()
            && self
                .matmul(&self.transpose())
                .is_ok_and(|p| p.is_identity())
    }

    /// `M Ω Mᵀ = Ω`.
    pub fn is_symplectic(&self) -> bool {
        if !self.is_square() || !self.rows.is_multiple_of(2) {
            return false;
        }
        let om = Self::omega(self.rows / 2);
        self.matmul(&om)
            .and_then(|p| p.matmul(&self.transpose()))
            .is_ok_and(|p| p == om)
    }

    pub fn is_in_group(&self, kind: GroupKind) -> bool {
        match kind {
            GroupKind::Orthogonal => self.is_orthogonal(),
            GroupKind::SpecialOrthogonal => {
                self.is_orthogonal() && self.det().is_ok_and(|d| d.is_one())
            }
            GroupKind::Symplectic => self.is_symplectic(),
        }
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    /// Zero above the 2x2 diagonal blocks.
    pub fn is_block_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| j / 2 <= i / 2 || self.get(i, j).is_zero()))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn is_block_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i / 2 == j / 2 || self.get(i, j).is_zero()))
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `I - 2 vᵀv / (v vᵀ)` for a row vector `v` with `v vᵀ ≠ 0`.
pub fn householder<F: Field>(v: &[F]) -> Result<Mat<F>> {
    let n = v.len();
    let vv = v.iter().fold(F::zero(), |acc, x| acc.add(&x.mul(x)));
    if vv.is_zero() {
        return Err(Error::Invalid("isotropic reflection vector".into()));
    }
    let c = F::from_int(2).div(&vv)?;
    Ok(Mat::from_fn(n, n, |i, j| {
        let id = if i == j { F::one() } else { F::zero() };
        id.sub(&c.mul(&v[i]).mul(&v[j]))
    }))
}

fn small_nonzero(rng: &mut ChaCha8Rng, h: i64) -> i64 {
    loop {
        let x = rng.gen_range(-h..=h);
        if x != 0 {
            return x;
        }
    }
}

/// Random member of `O_n(Q)` as a product of Householder reflections.
///
/// `det` selects the determinant (`Some(1)` or `Some(-1)`); `None` picks it at random.
pub fn gen_orthogonal_rational(n: usize, seed: u64, det: Option<i8>) -> Mat<Rational> {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let det = det.unwrap_or(if rng.gen_bool(0.5) { 1 } else { -1 });
    let mut k = n.max(2);
    if k.is_multiple_of(2) != (det == 1) {
        k += 1;
    }
    let mut m = Mat::identity(n);
    for _ in 0..k {
        let v: Vec<Rational> = loop {
            let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-2i64..=2)).collect();
            if v.iter().any(|&x| x != 0) {
                break v.into_iter().map(|x| q(x, 1)).collect();
            }
        };
        m = m.matmul(&householder(&v).unwrap()).unwrap();
    }
    debug_assert!(m.is_orthogonal());
    m
}

/// `I + c vᵀ v Ω`, a symplectic transvection.
pub fn transvection<F: Field>(v: &[F], c: &F) -> Mat<F> {
    let n = v.len();
    let s = Mat::from_fn(n, n, |i, j| c.mul(&v[i]).mul(&v[j]));
    Mat::identity(n)
        .add(&s.matmul(&Mat::omega(n / 2)).unwrap())
        .unwrap()
}

/// Random member of `Sp_{2n}(Q)` (`dim = 2n`) from transvections and block-diagonal `SL_2` factors.
pub fn gen_symplectic_rational(dim: usize, seed: u64) -> Mat<Rational> {
    assert!(dim >= 2 && dim.is_multiple_of(2));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks: Vec<Mat<Rational>> = (0..dim / 2)
        .map(|_| {
            let a = rng.gen_range(-2i64..=2);
            let b = rng.gen_range(-2i64..=2);
            let up = Mat::from_rows(vec![vec![q(1, 1), q(a, 1)], vec![q(0, 1), q(1, 1)]]).unwrap();
            let lo = Mat::from_rows(vec![vec![q(1, 1), q(0, 1)], vec![q(b, 2), q(1, 1)]]).unwrap();
            up.matmul(&lo).unwrap()
        })
        .collect();
    let mut m = Mat::direct_sum_all(&blocks).unwrap();
    for _ in 0..dim.max(2) {
        let v: Vec<Rational> = (0..dim).map(|_| q(rng.gen_range(-1i64..=1), 1)).collect();
        let c = q(small_nonzero(&mut rng, 2), rng.gen_range(1i64..=2));
        m = m.matmul(&transvection(&v, &c)).unwrap();
    }
    debug_assert!(m.is_symplectic());
    m
}

fn lift_rational(m: &Mat<Rational>) -> Mat<RatFn> {
    m.map(RatFn::from_rational)
}

/// Random member of `O_n(Q(t))`: a rational sample times two reflections in vectors `(t + c, v_2, ...)`.
///
/// The determinant follows `det` as in [`gen_orthogonal_rational`].
pub fn gen_orthogonal_parametric(n: usize, seed: u64, det: Option<i8>, t: usize) -> Mat<RatFn> {
    let base = gen_orthogonal_rational(n, seed, det);
    let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(17) ^ 0x7a);
    let tv = RatFn::var(t);
    let mut h = Mat::identity(n);
    for _ in 0..2 {
        let v: Vec<RatFn> = (0..n)
            .map(|i| {
                let c = RatFn::from_int(rng.gen_range(-2i64..=2));
                if i == 0 {
                    tv.add(&c)
                } else {
                    c
                }
            })
            .collect();
        h = h.matmul(&householder(&v).unwrap()).unwrap();
    }
    let m = lift_rational(&base).matmul(&h).unwrap();
    debug_assert!(m.is_orthogonal());
    m
}

/// Random member of `Sp_{2n}(Q(t))`: a rational sample times a transvection with coefficient `t`.
pub fn gen_symplectic_parametric(dim: usize, seed: u64, t: usize) -> Mat<RatFn> {
    let base = gen_symplectic_rational(dim, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(17) ^ 0x7a);
    let v: Vec<RatFn> = loop {
        let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(-1i64..=1)).collect();
        if v.iter().any(|&x| x != 0) {
            break v.into_iter().map(RatFn::from_int).collect();
        }
    };
    let m = lift_rational(&base).matmul(&transvection(&v, &RatFn::var(t))).unwrap();
    debug_assert!(m.is_symplectic());
    m
}

/// Random invertible rational matrix with small integer entries.
pub fn gen_invertible_rational(n: usize, seed: u64) -> Mat<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m = Mat::from_fn(n, n, |_, _| q(rng.gen_range(-5i64..=5), 1));
        if !Field::is_zero(&m.det().unwrap()) {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_and_j() {
        let j = Mat::<Rational>::j();
        assert_eq!(j.inverse().unwrap(), j.neg());
        let o2 = Mat::<Rational>::omega(2);
        assert_eq!(j.direct_sum(&j).unwrap(), o2);
        assert_eq!(o2.transpose(), o2.neg());
        assert!(o2.matmul(&o2).unwrap() == Mat::identity(4).neg());
    }

    #[test]
    fn reflection_on_basis_vector() {
        let h = householder(&[q(1, 1), q(0, 1), q(0, 1)]).unwrap();
        assert_eq!(h, Mat::reflection(3));
    }

    #[test]
    fn rotation_from_two_reflections() {
        let r = householder(&[q(1, 1), q(0, 1)])
            .unwrap()
            .matmul(&householder(&[q(2, 1), q(1, 1)]).unwrap())
            .unwrap();
        let want = Mat::from_rows(vec![vec![q(3, 5), q(4, 5)], vec![q(-4, 5), q(3, 5)]]).unwrap();
        assert_eq!(r, want);
        assert!(r.is_orthogonal());
        assert_eq!(r.det().unwrap(), q(1, 1));
    }

    #[test]
    fn generators_land_in_groups() {
        for seed in 0..10 {
            for n in 2..=5 {
                let m = gen_orthogonal_rational(n, seed, Some(-1));
                assert!(m.is_orthogonal());
                assert_eq!(m.det().unwrap(), q(-1, 1));
            }
            let s = gen_symplectic_rational(6, seed);
            assert!(s.is_symplectic());
        }
    }

    #[test]
    fn bareiss_matches_cofactor() {
        for seed in 0..20 {
            let m = gen_invertible_rational(4, seed);
            assert_eq!(m.det().unwrap(), m.det_cofactor().unwrap());
            let p = m.inverse().unwrap().matmul(&m).unwrap();
            assert!(p.is_identity());
        }
    }
}
