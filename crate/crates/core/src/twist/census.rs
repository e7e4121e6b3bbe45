use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{full_witness_generic, Base, Check, TwistClass, Witness};
use crate::error::Result;
use crate::fieldmap::Elem;
use crate::matrix::{
    gen_orthogonal_parametric, gen_orthogonal_rational, gen_symplectic_parametric, gen_symplectic_rational, GroupKind,
    Mat,
};
use crate::ratfunc::{RatFn, Rational};
use crate::tower::TowerElem;

#[derive(Clone, Debug)]
pub struct CensusMember {
    /// `None` for the fixed probes.
    pub seed: Option<u64>,
    pub a: Mat<RatFn>,
    pub det_sign: i8,
    pub class: TwistClass,
    pub e: Mat<Elem>,
    pub witness_checks_pass: bool,
}

#[derive(Clone, Debug)]
pub struct CensusReport {
    pub kind: GroupKind,
    pub base: Base,
    pub n: usize,
    pub members: Vec<CensusMember>,
    pub probes: Vec<CensusMember>,
    /// Number of distinct normal forms `E` among members and probes.
    pub classes: usize,
    pub class_matches_det: bool,
    /// The probes land in pairwise distinct classes.
    pub probes_distinct: bool,
    pub invariance: Vec<Check>,
}

impl CensusReport {
    pub fn expected_classes(&self) -> usize {
        match self.kind {
            GroupKind::Orthogonal => 2,
            _ => 1,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.classes == self.expected_classes()
            && self.class_matches_det
            && self.probes_distinct
            && self.invariance.iter().all(|c| c.passed)
            && self.members.iter().chain(&self.probes).all(|m| m.witness_checks_pass)
    }
}

fn inverse_in_group(m: &Mat<Elem>, kind: GroupKind) -> Result<Mat<Elem>> {
    match kind {
        GroupKind::Symplectic => {
            let om = Mat::omega(m.rows() / 2);
            Ok(om.matmul(&m.transpose())?.matmul(&om)?.neg())
        }
        _ => Ok(m.transpose()),
    }
}

/// `det(z A φ(z)⁻¹) = det A`.
fn det_invariant(w: &mut Witness, z: &Mat<Elem>, a: &Mat<Elem>) -> Result<bool> {
    let phi_z = w.phi.apply_to_matrix(&mut w.field, z)?;
    let lhs = z.matmul(a)?.matmul(&inverse_in_group(&phi_z, w.kind)?)?.det()?;
    Ok(lhs == a.det()?)
}

fn sample(kind: GroupKind, base: Base, n: usize, seed: u64) -> Mat<RatFn> {
    match (base, kind) {
        (Base::Rationals, GroupKind::Orthogonal) => lift(&gen_orthogonal_rational(n, seed, None)),
        (Base::Rationals, GroupKind::SpecialOrthogonal) => lift(&gen_orthogonal_rational(n, seed, Some(1))),
        (Base::Rationals, GroupKind::Symplectic) => lift(&gen_symplectic_rational(n, seed)),
        (Base::RationalFunctions, GroupKind::Orthogonal) => gen_orthogonal_parametric(n, seed, None, 0),
        (Base::RationalFunctions, GroupKind::SpecialOrthogonal) => gen_orthogonal_parametric(n, seed, Some(1), 0),
        (Base::RationalFunctions, GroupKind::Symplectic) => gen_symplectic_parametric(n, seed, 0),
    }
}

fn lift(m: &Mat<Rational>) -> Mat<RatFn> {
    m.map(RatFn::from_rational)
}

fn member(
    kind: GroupKind,
    base: Base,
    a: Mat<RatFn>,
    seed: Option<u64>,
    max_depth: usize,
) -> Result<(CensusMember, Witness)> {
    let w = full_witness_generic(&a, kind, base.registry(), max_depth)?;
    let det_sign = if a.det()?.is_positive() { 1 } else { -1 };
    let m = CensusMember {
        seed,
        a,
        det_sign,
        class: w.class,
        e: w.e.clone(),
        witness_checks_pass: w.all_checks_pass(),
    };
    Ok((m, w))
}

fn distinct<'a>(forms: impl Iterator<Item = &'a Mat<Elem>>) -> usize {
    let mut seen: Vec<&Mat<Elem>> = Vec::new();
    for f in forms {
        if !seen.contains(&f) {
            seen.push(f);
        }
    }
    seen.len()
}

/// Classifies `samples` random elements of the group (plus fixed probes) by twisted class.
pub fn census(
    kind: GroupKind,
    base: Base,
    n: usize,
    samples: usize,
    seed: u64,
    max_depth: usize,
) -> Result<CensusReport> {
    kind.check_dim(n)?;
    let mut members = Vec::with_capacity(samples);
    let mut invariance = Vec::new();
    let z_lift = sample(kind, Base::Rationals, n, seed ^ 0x5eed).map(|f| TowerElem::base(f.clone()));
    for i in 0..samples {
        let s = seed.wrapping_add(i as u64);
        let (m, _) = member(kind, base, sample(kind, base, n, s), Some(s), max_depth)?;
        members.push(m);
    }

    let mut probe_mats = alloc::vec![Mat::identity(n)];
    if kind == GroupKind::Orthogonal {
        probe_mats.push(Mat::reflection(n));
    }
    let mut probes = Vec::new();
    for p in probe_mats {
        let (m, mut w) = member(kind, base, p, None, max_depth)?;
        let a = w.a.map(|f| TowerElem::base(f.clone()));
        let zs = [
            ("rational z", z_lift.clone()),
            ("z = X_tot", w.x_tot.clone()),
            ("z = Q", w.q.clone()),
            ("z = conjugator", w.conjugator.clone()),
        ];
        for (label, z) in zs {
            let ok = det_invariant(&mut w, &z, &a)?;
            invariance.push(Check {
                name: alloc::format!("det(z A φ(z)⁻¹) = det A, probe {}, {label}", m.class.name()),
                passed: ok,
            });
        }
        probes.push(m);
    }

    let forms = distinct(members.iter().chain(&probes).map(|m| &m.e));
    let class_matches_det = members.iter().chain(&probes).all(|m| match m.class {
        TwistClass::Plus => m.det_sign == 1,
        TwistClass::Minus => m.det_sign == -1,
        TwistClass::Trivial => kind == GroupKind::Symplectic,
    });
    let probe_sigs: BTreeSet<i8> = probes.iter().map(|p| p.det_sign).collect();
    let probes_distinct = probe_sigs.len() == probes.len() && distinct(probes.iter().map(|p| &p.e)) == probes.len();
    Ok(CensusReport {
        kind,
        base,
        n,
        members,
        probes,
        classes: forms,
        class_matches_det,
        probes_distinct,
        invariance,
    })
}
