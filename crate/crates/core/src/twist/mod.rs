//! Twisted conjugacy: the twisting field, normal forms, explicit witnesses,
//! their verification and class censuses.

mod census;
mod orthogonal;
mod symplectic;
mod verify;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

pub use census::{census, CensusMember, CensusReport};
pub use orthogonal::{
    full_witness_orthogonal, orthogonal_diag_conjugator, orthogonal_normal_form, DiagConjugator,
    OrthogonalNormalForm,
};
pub use symplectic::{
    full_witness_symplectic, symplectic_block_conjugator, symplectic_normal_form, BlockConjugator,
    SymplecticNormalForm,
};
pub use verify::{mutate_entry, verify_witness, SpotCheck, Verdicts};

use crate::decomp::lift;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fieldmap::{Elem, FieldMap, Tower};
use crate::matrix::{GroupKind, Mat};
use crate::ratfunc::{RatFn, VarRegistry};
use crate::tower::TowerElem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TwistClass {
    Plus,
    Minus,
    Trivial,
}

impl TwistClass {
    pub fn name(self) -> &'static str {
        match self {
            TwistClass::Plus => "Plus",
            TwistClass::Minus => "Minus",
            TwistClass::Trivial => "Trivial",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "Plus" => Some(TwistClass::Plus),
            "Minus" => Some(TwistClass::Minus),
            "Trivial" => Some(TwistClass::Trivial),
            _ => None,
        }
    }
}

/// Coefficient field of input matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    /// `Q`
    Rationals,
    /// `Q(t)`, with `t` in registry slot 0.
    RationalFunctions,
}

impl Base {
    pub fn name(self) -> &'static str {
        match self {
            Base::Rationals => "Q",
            Base::RationalFunctions => "Q(t)",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "Q" => Some(Base::Rationals),
            "Q(t)" => Some(Base::RationalFunctions),
            _ => None,
        }
    }

    /// Fresh registry for one witness computation.
    pub fn registry(self) -> VarRegistry {
        match self {
            Base::Rationals => VarRegistry::new(),
            Base::RationalFunctions => VarRegistry::with_parameter(),
        }
    }
}

/// Named pass/fail result of one exact identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

impl Check {
    pub fn new(name: &str, passed: bool) -> Self {
        Check {
            name: name.into(),
            passed,
        }
    }
}

pub(crate) fn require(checks: &mut Vec<Check>, name: &str, ok: bool) -> Result<()> {
    checks.push(Check::new(name, ok));
    if ok {
        Ok(())
    } else {
        Err(Error::CheckFailed(name.into()))
    }
}

/// The field `Q(X)` with `φ(X) = X A`.
#[derive(Clone, Debug)]
pub struct TwistingContext {
    pub a: Mat<RatFn>,
    pub reg: VarRegistry,
    pub field: Tower,
    pub phi: FieldMap,
    pub x: Mat<Elem>,
    pub x_vars: Vec<usize>,
    pub checks: Vec<Check>,
}

impl TwistingContext {
    pub fn a_elem(&self) -> Mat<Elem> {
        lift(&self.a)
    }

    pub fn apply(&mut self, m: &Mat<Elem>) -> Result<Mat<Elem>> {
        self.phi.apply_to_matrix(&mut self.field, m)
    }

    pub fn apply_elem(&mut self, e: &Elem) -> Result<Elem> {
        self.phi.apply(&mut self.field, e)
    }

    /// Extends `φ` to new generators.
    pub fn adjoin_generators(&mut self, images: BTreeMap<usize, RatFn>) {
        self.phi.extend(images);
    }
}

/// Builds `X` from `n²` fresh variables and `φ: x_ij ↦ (X A)_ij`; other variables are fixed.
pub fn make_twisting_field(a: &Mat<RatFn>, mut reg: VarRegistry, max_depth: usize) -> Result<TwistingContext> {
    if !a.is_square() {
        return Err(Error::Dimension("input matrix is not square".into()));
    }
    let n = a.rows();
    let det_a = a.det()?;
    if det_a.is_zero() {
        return Err(Error::Singular);
    }
    for e in a.entries() {
        if e.vars().iter().any(|&v| v >= reg.len()) {
            return Err(Error::Invalid("matrix entry uses an unregistered variable".into()));
        }
    }
    let x_vars = reg.fresh_many(n * n);
    let xs = Mat::from_fn(n, n, |i, j| RatFn::var(x_vars[i * n + j]));
    let xa = xs.matmul(a)?;
    let images: BTreeMap<usize, RatFn> = x_vars.iter().copied().zip(xa.entries().iter().cloned()).collect();
    let phi = FieldMap::new(&reg, images)?;
    let x = lift(&xs);
    let mut ctx = TwistingContext {
        a: a.clone(),
        reg,
        field: Tower::with_max_depth(max_depth),
        phi,
        x,
        x_vars,
        checks: Vec::new(),
    };
    let mut checks = Vec::new();
    let x = ctx.x.clone();
    let phx = ctx.apply(&x)?;
    require(&mut checks, "φ(X) = X A", phx == x.matmul(&lift(a))?)?;

    let ainv = a.inverse()?;
    let back: BTreeMap<usize, RatFn> = ctx
        .x_vars
        .iter()
        .copied()
        .zip(xs.matmul(&ainv)?.entries().iter().cloned())
        .collect();
    let psi = FieldMap::new(&ctx.reg, back)?;
    require(
        &mut checks,
        "A⁻¹-substitution inverts φ on generators",
        ctx.phi.compose(&psi)?.is_identity_on_generators() && psi.compose(&ctx.phi)?.is_identity_on_generators(),
    )?;

    let det_x = x.det()?;
    let lhs = ctx.apply_elem(&det_x)?;
    require(
        &mut checks,
        "φ(det X) = det X · det A",
        lhs == det_x.mul(&TowerElem::base(det_a)),
    )?;
    ctx.checks = checks;
    Ok(ctx)
}

/// Output of a full witness computation.
#[derive(Clone, Debug)]
pub struct Witness {
    pub kind: GroupKind,
    pub a: Mat<RatFn>,
    pub reg: VarRegistry,
    pub field: Tower,
    pub phi: FieldMap,
    pub x: Mat<Elem>,
    pub l: Mat<Elem>,
    pub q: Mat<Elem>,
    pub d: Mat<Elem>,
    /// `W = T P` (orthogonal) or `Y = Y_1 ⊕ ... ⊕ Y_m` (symplectic).
    pub conjugator: Mat<Elem>,
    pub e: Mat<Elem>,
    pub x_tot: Mat<Elem>,
    pub class: TwistClass,
    pub checks: Vec<Check>,
}

impl Witness {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Witness for `a`; when `a` is already its normal form `E` the witness is `X_tot = I`.
pub fn full_witness(a: &Mat<RatFn>, kind: GroupKind, reg: VarRegistry, max_depth: usize) -> Result<Witness> {
    kind.check_dim(a.rows())?;
    if !a.is_in_group(kind) {
        return Err(Error::WrongGroup(kind.name()));
    }
    let (e, class) = expected_normal_form(a, kind)?;
    if lift(a) == e {
        return Ok(trivial_witness(a, kind, reg, max_depth, e, class));
    }
    full_witness_generic(a, kind, reg, max_depth)
}

/// Runs the full pipeline over the twisting field even when `a` is already a normal form.
pub fn full_witness_generic(a: &Mat<RatFn>, kind: GroupKind, reg: VarRegistry, max_depth: usize) -> Result<Witness> {
    kind.check_dim(a.rows())?;
    match kind {
        GroupKind::Orthogonal | GroupKind::SpecialOrthogonal => full_witness_orthogonal(a, kind, reg, max_depth),
        GroupKind::Symplectic => full_witness_symplectic(a, reg, max_depth),
    }
}

fn trivial_witness(
    a: &Mat<RatFn>,
    kind: GroupKind,
    reg: VarRegistry,
    max_depth: usize,
    e: Mat<Elem>,
    class: TwistClass,
) -> Witness {
    let n = a.rows();
    let id: Mat<Elem> = Mat::identity(n);
    Witness {
        kind,
        a: a.clone(),
        reg,
        field: Tower::with_max_depth(max_depth),
        phi: FieldMap::identity(),
        x: id.clone(),
        l: id.clone(),
        q: id.clone(),
        d: e.clone(),
        conjugator: id.clone(),
        e,
        x_tot: id,
        class,
        checks: alloc::vec![Check::new("A is its own normal form", true)],
    }
}

/// The normal form the witness of `a` must reach.
pub fn expected_normal_form(a: &Mat<RatFn>, kind: GroupKind) -> Result<(Mat<Elem>, TwistClass)> {
    let n = a.rows();
    Ok(match kind {
        GroupKind::Symplectic => (Mat::identity(n), TwistClass::Trivial),
        _ => {
            let d = a.det()?;
            if d.is_one() {
                (Mat::identity(n), TwistClass::Plus)
            } else {
                (Mat::reflection(n), TwistClass::Minus)
            }
        }
    })
}
