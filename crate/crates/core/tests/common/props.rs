//! Property bodies shared by the module suites and the acceptance runner.

use std::collections::BTreeMap;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use reidemeister_core::fieldmap::{Elem, FieldMap, Tower};
use reidemeister_core::ratfunc::{RatFn, VarRegistry};
use reidemeister_core::tower::TowerElem;
use reidemeister_core::Field;

use super::poly;

type Outcome = Result<(), TestCaseError>;

pub fn field_axioms(a: RatFn, b: RatFn, c: RatFn) -> Outcome {
    prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    prop_assert_eq!(a.add(&b), b.add(&a));
    prop_assert_eq!(a.mul(&b), b.mul(&a));
    prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    prop_assert!(a.sub(&a).is_zero());
    prop_assert_eq!(a.add(&RatFn::zero()), a.clone());
    prop_assert_eq!(a.mul(&RatFn::one()), a.clone());
    Ok(())
}

pub fn multiplicative_inverse(a: RatFn, b: RatFn) -> Outcome {
    prop_assert!(a.mul(&a.inv().unwrap()).is_one());
    prop_assert_eq!(a.div(&b).unwrap().mul(&b), a.clone());
    prop_assert_eq!(a.mul(&b).inv().unwrap(), a.inv().unwrap().mul(&b.inv().unwrap()));
    Ok(())
}

/// A tower over `Q(x1, x2)` with radicals `s1 = √r1`, `s2 = √r2`.
pub fn tower2(r1: &RatFn, r2: &RatFn) -> (Tower, Elem, Elem) {
    let mut f = Tower::new();
    let s1 = f.adjoin_sqrt(&TowerElem::base(r1.clone())).unwrap();
    let s2 = f.adjoin_sqrt(&TowerElem::base(r2.clone())).unwrap();
    (f, s1, s2)
}

/// `c0 + c1 s1 + c2 s2 + c3 s1 s2`.
pub fn combine(c: &[RatFn; 4], s1: &Elem, s2: &Elem) -> Elem {
    [Elem::one(), s1.clone(), s2.clone(), s1.mul(s2)]
        .iter()
        .zip(c)
        .fold(Elem::zero(), |acc, (e, k)| acc.add(&e.mul(&TowerElem::base(k.clone()))))
}

pub fn leaves() -> impl Strategy<Value = [RatFn; 4]> {
    [poly(2), poly(2), poly(2), poly(2)]
}

pub fn adjunction_is_sound(r1: RatFn, r2: RatFn, c: [RatFn; 4]) -> Outcome {
    let (mut f, s1, s2) = tower2(&r1, &r2);
    prop_assert_eq!(s1.square(), TowerElem::base(r1));
    prop_assert_eq!(s2.square(), TowerElem::base(r2));
    let r = combine(&c, &s1, &s2);
    if !r.is_zero() {
        let s = f.adjoin_sqrt(&r).unwrap();
        prop_assert_eq!(s.square(), r);
        prop_assert!(s.is_canonical_sign());
    }
    Ok(())
}

pub fn product_radicals_reuse_layers(r1: RatFn, r2: RatFn, c: RatFn) -> Outcome {
    let (mut f, s1, s2) = tower2(&r1, &r2);
    let depth = f.depth();
    let r = r1.mul(&r2).mul(&c.square());
    let s = f.adjoin_sqrt(&TowerElem::base(r.clone())).unwrap();
    prop_assert_eq!(f.depth(), depth);
    prop_assert_eq!(s.square(), TowerElem::base(r));
    let expect = s1.mul(&s2).mul(&TowerElem::base(c));
    prop_assert!(s == expect || s == expect.neg());
    Ok(())
}

/// Invertible affine substitutions of `x1, x2` with small integer coefficients.
pub fn affine2() -> impl Strategy<Value = BTreeMap<usize, RatFn>> {
    (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3)
        .prop_filter("invertible", |&(a, b, _, d, e, _)| a * e - b * d != 0)
        .prop_map(|(a, b, c, d, e, f)| {
            let lin = |p: i64, q: i64, k: i64| {
                RatFn::from_int(p)
                    .mul(&RatFn::var(0))
                    .add(&RatFn::from_int(q).mul(&RatFn::var(1)))
                    .add(&RatFn::from_int(k))
            };
            [(0, lin(a, b, c)), (1, lin(d, e, f))].into_iter().collect()
        })
}

pub fn map_setup(r1: &RatFn, r2: &RatFn, images: BTreeMap<usize, RatFn>) -> (Tower, Elem, Elem, FieldMap) {
    let reg = VarRegistry::from_names(["x1", "x2"]).unwrap();
    let (f, s1, s2) = tower2(r1, r2);
    (f, s1, s2, FieldMap::new(&reg, images).unwrap())
}

pub fn apply_is_a_homomorphism(
    r1: RatFn,
    r2: RatFn,
    img: BTreeMap<usize, RatFn>,
    ca: [RatFn; 4],
    cb: [RatFn; 4],
) -> Outcome {
    let (mut f, s1, s2, mut m) = map_setup(&r1, &r2, img);
    let (a, b) = (combine(&ca, &s1, &s2), combine(&cb, &s1, &s2));
    let ma = m.apply(&mut f, &a).unwrap();
    let mb = m.apply(&mut f, &b).unwrap();
    prop_assert_eq!(m.apply(&mut f, &a.add(&b)).unwrap(), ma.add(&mb));
    prop_assert_eq!(m.apply(&mut f, &a.mul(&b)).unwrap(), ma.mul(&mb));
    prop_assert_eq!(m.apply(&mut f, &a.neg()).unwrap(), ma.neg());
    Ok(())
}
