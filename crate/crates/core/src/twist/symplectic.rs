use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{make_twisting_field, require, Check, TwistClass, TwistingContext, Witness};
use crate::decomp::{symplectic_block_gs, LQPair};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fieldmap::Elem;
use crate::matrix::{GroupKind, Mat};
use crate::ratfunc::{RatFn, VarRegistry};
use crate::tower::TowerElem;

/// `M⁻¹ = -Ω Mᵀ Ω` for symplectic `M`.
fn sp_inverse(m: &Mat<Elem>) -> Result<Mat<Elem>> {
    let om = Mat::omega(m.rows() / 2);
    Ok(om.matmul(&m.transpose())?.matmul(&om)?.neg())
}

fn det2(m: &Mat<Elem>) -> Elem {
    m.get(0, 0).mul(m.get(1, 1)).sub(&m.get(0, 1).mul(m.get(1, 0)))
}

#[derive(Clone, Debug)]
pub struct SymplecticNormalForm {
    pub lq: LQPair<RatFn>,
    pub d: Mat<Elem>,
    pub checks: Vec<Check>,
}

/// `X = L Q`, `D = L⁻¹ φ(L)` block diagonal with `det D_k = 1` and `A = Q⁻¹ D φ(Q)`.
pub fn symplectic_normal_form(ctx: &mut TwistingContext) -> Result<SymplecticNormalForm> {
    if !ctx.a.is_symplectic() {
        return Err(Error::WrongGroup("symplectic"));
    }
    let mut checks = Vec::new();
    let x = ctx.x.clone();
    let lq = symplectic_block_gs(&x, &mut ctx.field)?;
    checks.push(Check::new("L Q = X", true));
    checks.push(Check::new("Q Ω Qᵀ = Ω", true));
    checks.push(Check::new("L block lower triangular", true));
    let phi_l = ctx.apply(&lq.l)?;
    let d = lq.l.inverse()?.matmul(&phi_l)?;
    require(&mut checks, "D block diagonal", d.is_block_diagonal())?;
    let blocks_ok = (0..d.rows() / 2).all(|k| det2(&d.block(2 * k, 2 * k, 2, 2)).is_one());
    require(&mut checks, "det D_k = 1", blocks_ok)?;
    let phi_q = ctx.apply(&lq.q)?;
    let rebuilt = sp_inverse(&lq.q)?.matmul(&d)?.matmul(&phi_q)?;
    require(&mut checks, "A = Q⁻¹ D φ(Q)", rebuilt == ctx.a_elem())?;
    Ok(SymplecticNormalForm { lq, d, checks })
}

#[derive(Clone, Debug)]
pub struct BlockConjugator {
    pub y: Mat<Elem>,
    /// Slots of the fresh 2x2 matrix `P_k`, row-major, per block.
    pub p_vars: Vec<[usize; 4]>,
    pub checks: Vec<Check>,
}

/// For `D = D_1 ⊕ ... ⊕ D_m` with `D_k ∈ SL_2`, returns `Y ∈ Sp` with `Y⁻¹ φ(Y) = D`.
///
/// Blocks of `D` must have base-field entries, since they become generator images `P_k ↦ P_k D_k`.
pub fn symplectic_block_conjugator(d: &Mat<Elem>, ctx: &mut TwistingContext) -> Result<BlockConjugator> {
    if !d.is_square() || !d.rows().is_multiple_of(2) || !d.is_block_diagonal() {
        return Err(Error::Invalid("D must be block diagonal with 2x2 blocks".into()));
    }
    let m = d.rows() / 2;
    let mut checks = Vec::new();
    let mut blocks = Vec::with_capacity(m);
    let mut p_vars = Vec::with_capacity(m);
    for k in 0..m {
        let dk = d.block(2 * k, 2 * k, 2, 2);
        if !det2(&dk).is_one() {
            return Err(Error::Invalid("block determinant is not 1".into()));
        }
        let dk_base = dk
            .entries()
            .iter()
            .map(|e| e.as_base().cloned())
            .collect::<Option<Vec<RatFn>>>()
            .ok_or_else(|| Error::Invalid("block entries outside the base field".into()))?;
        let dk_base = Mat::new(2, 2, dk_base)?;
        let vars = [ctx.reg.fresh(), ctx.reg.fresh(), ctx.reg.fresh(), ctx.reg.fresh()];
        let p = Mat::from_fn(2, 2, |i, j| RatFn::var(vars[2 * i + j]));
        let pd = p.matmul(&dk_base)?;
        let images: BTreeMap<usize, RatFn> = vars.iter().copied().zip(pd.entries().iter().cloned()).collect();
        ctx.adjoin_generators(images);
        let p = p.map(|f| TowerElem::base(f.clone()));
        let det_p = det2(&p);
        let s = ctx.field.adjoin_sqrt(&det_p.inv()?)?;
        let phi_s = ctx.apply_elem(&s)?;
        require(&mut checks, "φ(√det(P_k)⁻¹) = √det(P_k)⁻¹", phi_s == s)?;
        let yk = p.scale(&s);
        require(&mut checks, "det Y_k = 1", det2(&yk).is_one())?;
        blocks.push(yk);
        p_vars.push(vars);
    }
    let y = Mat::direct_sum_all(&blocks)?;
    require(&mut checks, "Y symplectic", y.is_symplectic())?;
    let phi_y = ctx.apply(&y)?;
    require(&mut checks, "Y⁻¹ φ(Y) = D", sp_inverse(&y)?.matmul(&phi_y)? == *d)?;
    Ok(BlockConjugator { y, p_vars, checks })
}

/// Witness `X_tot = Y Q` with `φ(X_tot) = X_tot A`.
pub fn full_witness_symplectic(a: &Mat<RatFn>, reg: VarRegistry, max_depth: usize) -> Result<Witness> {
    GroupKind::Symplectic.check_dim(a.rows())?;
    if !a.is_symplectic() {
        return Err(Error::WrongGroup("symplectic"));
    }
    let mut ctx = make_twisting_field(a, reg, max_depth)?;
    let mut checks = ctx.checks.clone();
    let nf = symplectic_normal_form(&mut ctx)?;
    checks.extend(nf.checks.iter().cloned());
    let bc = symplectic_block_conjugator(&nf.d, &mut ctx)?;
    checks.extend(bc.checks.iter().cloned());
    let x_tot = bc.y.matmul(&nf.lq.q)?;
    require(&mut checks, "X_tot symplectic", x_tot.is_symplectic())?;
    let phi_x = ctx.apply(&x_tot)?;
    require(&mut checks, "φ(X_tot) = X_tot A", phi_x == x_tot.matmul(&ctx.a_elem())?)?;
    let n = a.rows();
    Ok(Witness {
        kind: GroupKind::Symplectic,
        a: ctx.a,
        reg: ctx.reg,
        field: ctx.field,
        phi: ctx.phi,
        x: ctx.x,
        l: nf.lq.l,
        q: nf.lq.q,
        d: nf.d,
        conjugator: bc.y,
        e: Mat::identity(n),
        x_tot,
        class: TwistClass::Trivial,
        checks,
    })
}
