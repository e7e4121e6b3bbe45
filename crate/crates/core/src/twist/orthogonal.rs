use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{make_twisting_field, require, Check, TwistClass, TwistingContext, Witness};
use crate::decomp::{orthogonal_gs, LQPair};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fieldmap::Elem;
use crate::matrix::{GroupKind, Mat};
use crate::ratfunc::{RatFn, VarRegistry};
use crate::tower::TowerElem;

#[derive(Clone, Debug)]
pub struct OrthogonalNormalForm {
    pub lq: LQPair<RatFn>,
    pub d: Mat<Elem>,
    pub class: TwistClass,
    pub checks: Vec<Check>,
}

/// `X = L Q`, `D = L⁻¹ φ(L)` diagonal with entries ±1 and `A = Q⁻¹ D φ(Q)`.
pub fn orthogonal_normal_form(ctx: &mut TwistingContext) -> Result<OrthogonalNormalForm> {
    if !ctx.a.is_orthogonal() {
        return Err(Error::WrongGroup("orthogonal"));
    }
    let mut checks = Vec::new();
    let x = ctx.x.clone();
    let lq = orthogonal_gs(&x, &mut ctx.field)?;
    checks.push(Check::new("L Q = X", true));
    checks.push(Check::new("Q Qᵀ = I", true));
    checks.push(Check::new("L lower triangular", true));
    let phi_l = ctx.apply(&lq.l)?;
    let d = lq.l.inverse()?.matmul(&phi_l)?;
    let one = Elem::one();
    let diag_ok = d.is_diagonal()
        && (0..d.rows()).all(|i| *d.get(i, i) == one || *d.get(i, i) == one.neg());
    require(&mut checks, "D diagonal with entries ±1", diag_ok)?;
    let phi_q = ctx.apply(&lq.q)?;
    let rebuilt = lq.q.transpose().matmul(&d)?.matmul(&phi_q)?;
    require(&mut checks, "A = Q⁻¹ D φ(Q)", rebuilt == ctx.a_elem())?;
    let det_d = d.det()?;
    let det_a = TowerElem::base(ctx.a.det()?);
    require(&mut checks, "det D = det A", det_d == det_a)?;
    let class = if det_d.is_one() {
        TwistClass::Plus
    } else {
        TwistClass::Minus
    };
    Ok(OrthogonalNormalForm { lq, d, class, checks })
}

#[derive(Clone, Debug)]
pub struct DiagConjugator {
    /// Number of `-1` entries of `D`.
    pub m: usize,
    pub p: Mat<Elem>,
    pub t: Mat<Elem>,
    pub w: Mat<Elem>,
    pub e: Mat<Elem>,
    /// Slots of `α, β` when they were needed (`m ≥ 2`).
    pub alpha_beta: Option<(usize, usize)>,
    pub checks: Vec<Check>,
}

/// Conjugates a diagonal ±1 matrix `D` to `I` or `diag(-1, 1, ..., 1)`: `W⁻¹ E φ(W) = D`.
pub fn orthogonal_diag_conjugator(d: &Mat<Elem>, ctx: &mut TwistingContext) -> Result<DiagConjugator> {
    let n = d.rows();
    let one = Elem::one();
    let minus = one.neg();
    if !d.is_square() || !d.is_diagonal() || (0..n).any(|i| *d.get(i, i) != one && *d.get(i, i) != minus) {
        return Err(Error::Invalid("D must be diagonal with entries ±1".into()));
    }
    let neg: Vec<usize> = (0..n).filter(|&i| *d.get(i, i) == minus).collect();
    let pos: Vec<usize> = (0..n).filter(|&i| *d.get(i, i) == one).collect();
    let m = neg.len();
    let order: Vec<usize> = neg.iter().chain(&pos).copied().collect();
    let p = Mat::from_fn(n, n, |i, j| if order[i] == j { Elem::one() } else { Elem::zero() });

    let pairs = m / 2;
    let offset = m % 2;
    let mut alpha_beta = None;
    let mut t = Mat::identity(n);
    if pairs > 0 {
        let a = ctx.reg.fresh();
        let b = ctx.reg.fresh();
        alpha_beta = Some((a, b));
        let images: BTreeMap<usize, RatFn> = [(a, RatFn::var(a).neg()), (b, RatFn::var(b).neg())].into_iter().collect();
        ctx.adjoin_generators(images);
        let al = TowerElem::base(RatFn::var(a));
        let be = TowerElem::base(RatFn::var(b));
        let s = ctx.field.adjoin_sqrt(&al.square().add(&be.square()))?;
        let si = s.inv()?;
        let z = [[al.mul(&si), be.mul(&si)], [be.neg().mul(&si), al.mul(&si)]];
        for k in 0..pairs {
            let o = offset + 2 * k;
            for (r, row) in z.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    t.set(o + r, o + c, v.clone());
                }
            }
        }
    }
    let e = if offset == 1 {
        Mat::reflection(n)
    } else {
        Mat::identity(n)
    };
    let w = t.matmul(&p)?;
    let mut checks = Vec::new();
    require(&mut checks, "W orthogonal", w.is_orthogonal())?;
    let phi_w = ctx.apply(&w)?;
    let lhs = w.transpose().matmul(&e)?.matmul(&phi_w)?;
    require(&mut checks, "W⁻¹ E φ(W) = D", lhs == *d)?;
    Ok(DiagConjugator {
        m,
        p,
        t,
        w,
        e,
        alpha_beta,
        checks,
    })
}

/// Witness `X_tot` with `E φ(X_tot) = X_tot A`; for `SpecialOrthogonal`, `X_tot ∈ SO_n`.
pub fn full_witness_orthogonal(
    a: &Mat<RatFn>,
    kind: GroupKind,
    reg: VarRegistry,
    max_depth: usize,
) -> Result<Witness> {
    if kind == GroupKind::Symplectic {
        return Err(Error::Invalid("symplectic kind passed to the orthogonal witness".into()));
    }
    if !a.is_in_group(kind) {
        return Err(Error::WrongGroup(kind.name()));
    }
    let mut ctx = make_twisting_field(a, reg, max_depth)?;
    let mut checks = ctx.checks.clone();
    let nf = orthogonal_normal_form(&mut ctx)?;
    checks.extend(nf.checks.iter().cloned());
    let dc = orthogonal_diag_conjugator(&nf.d, &mut ctx)?;
    checks.extend(dc.checks.iter().cloned());
    let mut x_tot = dc.w.matmul(&nf.lq.q)?;
    if kind == GroupKind::SpecialOrthogonal {
        let det = x_tot.det()?;
        let mut fix = vec![Elem::one(); x_tot.rows()];
        fix[0] = det;
        x_tot = Mat::diagonal(&fix).matmul(&x_tot)?;
        require(&mut checks, "det X_tot = 1", x_tot.det()?.is_one())?;
    }
    require(&mut checks, "X_tot orthogonal", x_tot.is_orthogonal())?;
    let phi_x = ctx.apply(&x_tot)?;
    let ok = dc.e.matmul(&phi_x)? == x_tot.matmul(&ctx.a_elem())?;
    require(&mut checks, "E φ(X_tot) = X_tot A", ok)?;
    let class = if dc.e.is_identity() {
        TwistClass::Plus
    } else {
        TwistClass::Minus
    };
    require(&mut checks, "class = sign det A", class == nf.class)?;
    Ok(Witness {
        kind,
        a: ctx.a,
        reg: ctx.reg,
        field: ctx.field,
        phi: ctx.phi,
        x: ctx.x,
        l: nf.lq.l,
        q: nf.lq.q,
        d: nf.d,
        conjugator: dc.w,
        e: dc.e,
        x_tot,
        class,
        checks,
    })
}
