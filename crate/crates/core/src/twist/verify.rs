use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{expected_normal_form, Check};
use crate::error::Result;
use crate::field::Field;
use crate::fieldmap::{Elem, FieldMap, Tower};
use crate::matrix::{GroupKind, Mat};
use crate::ratfunc::{RatFn, Rational, VarRegistry};
use crate::tower::{Specializer, TowerElem};

const MAX_RESAMPLES: usize = 200;

#[derive(Clone, Debug)]
pub struct SpotCheck {
    pub point: BTreeMap<usize, Rational>,
    /// Points rejected before this one (poles or vanishing radicands).
    pub resampled: usize,
    pub identity: bool,
    pub group: bool,
}

impl SpotCheck {
    pub fn passed(&self) -> bool {
        self.identity && self.group
    }
}

#[derive(Clone, Debug, Default)]
pub struct Verdicts {
    pub exact: Vec<Check>,
    pub spots: Vec<SpotCheck>,
    /// Set when no admissible point was found for some spot check.
    pub spot_error: Option<String>,
}

impl Verdicts {
    pub fn exact_pass(&self) -> bool {
        self.exact.iter().all(|c| c.passed)
    }

    pub fn spots_pass(&self) -> bool {
        self.spot_error.is_none() && self.spots.iter().all(SpotCheck::passed)
    }

    pub fn all_pass(&self) -> bool {
        self.exact_pass() && self.spots_pass()
    }
}

/// Adds 1 to entry `(i, j)`.
pub fn mutate_entry(m: &Mat<Elem>, i: usize, j: usize) -> Mat<Elem> {
    let mut out = m.clone();
    out.set(i, j, m.get(i, j).add(&Elem::one()));
    out
}

fn in_group<F: Field>(m: &Mat<F>, kind: GroupKind) -> bool {
    m.is_in_group(kind)
}

/// Checks `E φ(X_tot) = X_tot A` exactly and at `spot_points` random rational points.
#[allow(clippy::too_many_arguments)]
pub fn verify_witness(
    a: &Mat<RatFn>,
    kind: GroupKind,
    x_tot: &Mat<Elem>,
    e: &Mat<Elem>,
    phi: &FieldMap,
    field: &Tower,
    reg: &VarRegistry,
    spot_points: usize,
    seed: u64,
) -> Verdicts {
    let mut v = Verdicts::default();
    let mut field = field.clone();
    let mut phi = phi.clone();
    let a_elem = a.map(|f| TowerElem::base(f.clone()));

    let shape_ok = x_tot.is_square() && e.is_square() && x_tot.rows() == a.rows() && e.rows() == a.rows();
    v.exact.push(Check::new("shapes agree", shape_ok));
    if !shape_ok {
        return v;
    }

    let phi_x = match phi.apply_to_matrix(&mut field, x_tot) {
        Ok(m) => m,
        Err(err) => {
            v.exact.push(Check::new(&format!("φ(X_tot) computable: {err}"), false));
            return v;
        }
    };
    let identity = e.matmul(&phi_x).ok() == x_tot.matmul(&a_elem).ok();
    v.exact.push(Check::new("E φ(X_tot) = X_tot A", identity));
    v.exact.push(Check::new("X_tot in group", in_group(x_tot, kind)));
    let nf_ok = expected_normal_form(a, kind).is_ok_and(|(want, _)| want == *e);
    v.exact.push(Check::new("E is the normal form of A", nf_ok));
    // once E φ(X_tot) = X_tot A holds, det φ(X_tot) = det X_tot det A / det E exactly
    let nat = identity
        && match (x_tot.det(), lift_det(a), e.det()) {
            (Ok(dx), Ok(da), Ok(de)) => dx
                .mul(&da)
                .div(&de)
                .is_ok_and(|dphi| phi.apply(&mut field, &dx).is_ok_and(|pd| pd == dphi)),
            _ => false,
        };
    v.exact.push(Check::new("φ(det X_tot) = det φ(X_tot)", nat));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..spot_points {
        let mut resampled = 0;
        loop {
            if resampled >= MAX_RESAMPLES {
                v.spot_error = Some("no admissible specialization point found".to_string());
                return v;
            }
            let point: BTreeMap<usize, Rational> = (0..reg.len())
                .map(|i| {
                    let n = rng.gen_range(-9i64..=9);
                    let d = rng.gen_range(1i64..=4);
                    (i, Rational::new(n.into(), d.into()))
                })
                .collect();
            match spot(&field, point, x_tot, &phi_x, &a_elem, e, kind) {
                Ok(s) => {
                    v.spots.push(SpotCheck { resampled, ..s });
                    break;
                }
                Err(_) => resampled += 1,
            }
        }
    }
    v
}

fn spot(
    field: &Tower,
    point: BTreeMap<usize, Rational>,
    x_tot: &Mat<Elem>,
    phi_x: &Mat<Elem>,
    a: &Mat<Elem>,
    e: &Mat<Elem>,
    kind: GroupKind,
) -> Result<SpotCheck> {
    let s: Specializer = field.specializer(point)?;
    let x = x_tot.try_map(|t| s.apply(t))?;
    let px = phi_x.try_map(|t| s.apply(t))?;
    let an = a.try_map(|t| s.apply(t))?;
    let en = e.try_map(|t| s.apply(t))?;
    let identity = en.matmul(&px)? == x.matmul(&an)?;
    let group = match kind {
        GroupKind::Symplectic => x.is_symplectic(),
        _ => x.is_orthogonal() && (kind == GroupKind::Orthogonal || x.det()?.is_one()),
    };
    Ok(SpotCheck {
        point: s.point().clone(),
        resampled: 0,
        identity,
        group,
    })
}

fn lift_det(a: &Mat<RatFn>) -> Result<Elem> {
    Ok(TowerElem::base(a.det()?))
}
