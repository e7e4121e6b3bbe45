mod common;

use common::*;
use common::oracles::leibniz;
use proptest::prelude::*;
use reidemeister_core::matrix::*;
use reidemeister_core::ratfunc::*;
use reidemeister_core::{Error, Field};

fn qm(rows: &[&[(i64, i64)]]) -> Mat<Rational> {
    Mat::from_rows(rows.iter().map(|r| r.iter().map(|&(n, d)| q(n, d)).collect()).collect()).unwrap()
}

#[test]
fn determinant_examples() {
    assert!(Mat::<Rational>::identity(4).det().unwrap().is_one());
    let reg = VarRegistry::from_names(["x11", "x12", "x21", "x22"]).unwrap();
    let x = Mat::from_fn(2, 2, |i, j| RatFn::var(2 * i + j));
    assert_eq!(x.det().unwrap(), parse_ratfn("x11*x22 - x12*x21", &reg).unwrap());
    let m = qm(&[&[(1, 1), (2, 1), (3, 1)], &[(0, 1), (1, 2), (-1, 1)], &[(4, 1), (0, 1), (2, 3)]]);
    assert_eq!(m.det().unwrap(), leibniz(&m));
    assert_eq!(m.det_cofactor().unwrap(), leibniz(&m));
}

#[test]
fn j_and_omega() {
    let j = Mat::<Rational>::j();
    assert_eq!(j.inverse().unwrap(), j.neg());
    assert_eq!(Mat::<Rational>::omega(1), j);
    let o2 = Mat::<Rational>::omega(2);
    assert_eq!(j.direct_sum(&j).unwrap(), o2);
    assert_eq!(o2.transpose(), o2.neg());
    assert_eq!(o2.matmul(&o2).unwrap(), Mat::identity(4).neg());
    assert!(o2.matmul(&o2.transpose()).unwrap().is_identity());
}

#[test]
fn direct_sum_examples() {
    let i1 = Mat::<Rational>::identity(1);
    let i2 = Mat::<Rational>::identity(2);
    assert_eq!(i1.direct_sum(&i2).unwrap(), Mat::identity(3));
    let wide = Mat::<Rational>::zeros(1, 2);
    assert!(matches!(wide.direct_sum(&i1), Err(Error::Dimension(_))));
}

#[test]
fn singular_and_mismatched() {
    let m = qm(&[&[(1, 1), (2, 1)], &[(2, 1), (4, 1)]]);
    assert!(matches!(m.inverse(), Err(Error::Singular)));
    assert!(Field::is_zero(&m.det().unwrap()));
    let a = Mat::<Rational>::identity(2);
    let b = Mat::<Rational>::identity(3);
    assert!(a.matmul(&b).is_err());
    assert!(a.add(&b).is_err());
    let swap = qm(&[&[(0, 1), (1, 1)], &[(1, 1), (0, 1)]]);
    assert_eq!(swap.inverse().unwrap(), swap);
}

#[test]
fn group_predicates() {
    for n in 1..5 {
        assert!(Mat::<Rational>::identity(n).is_orthogonal());
        assert!(Mat::<Rational>::reflection(n).is_orthogonal());
        assert!(!Mat::<Rational>::reflection(n).is_in_group(GroupKind::SpecialOrthogonal));
    }
    let sl2 = qm(&[&[(2, 1), (3, 1)], &[(1, 1), (2, 1)]]);
    assert!(sl2.is_symplectic());
    assert!(!sl2.is_orthogonal());
    let not_sl2 = qm(&[&[(2, 1), (0, 1)], &[(0, 1), (1, 1)]]);
    assert!(!not_sl2.is_symplectic());
    assert!(!Mat::<Rational>::identity(3).is_symplectic());
    assert!(GroupKind::Symplectic.check_dim(3).is_err());
}

#[test]
fn householder_examples() {
    let e1 = vec![q(1, 1), q(0, 1), q(0, 1)];
    assert_eq!(householder(&e1).unwrap(), Mat::reflection(3));
    let h1 = householder(&[q(1, 1), q(0, 1)]).unwrap();
    let h2 = householder(&[q(2, 1), q(1, 1)]).unwrap();
    assert_eq!(h2, qm(&[&[(-3, 5), (-4, 5)], &[(-4, 5), (3, 5)]]));
    let rot = h1.matmul(&h2).unwrap();
    assert_eq!(rot, qm(&[&[(3, 5), (4, 5)], &[(-4, 5), (3, 5)]]));
    assert!(rot.is_orthogonal());
    assert!(rot.det().unwrap().is_one());
    assert!(householder(&[q(0, 1), q(0, 1)]).is_err());
}

#[test]
fn generators_land_in_their_groups() {
    for seed in 0..20 {
        for n in 1..6 {
            let o = gen_orthogonal_rational(n, seed, None);
            assert!(o.is_orthogonal());
            for det in [1i8, -1] {
                let o = gen_orthogonal_rational(n, seed, Some(det));
                assert!(o.is_orthogonal());
                assert_eq!(o.det().unwrap(), q(det as i64, 1));
            }
        }
        for dim in [2, 4, 6] {
            assert!(gen_symplectic_rational(dim, seed).is_symplectic());
        }
        for n in 2..4 {
            assert!(gen_orthogonal_parametric(n, seed, None, 0).is_orthogonal());
        }
        assert!(gen_symplectic_parametric(4, seed, 0).is_symplectic());
        let m = gen_invertible_rational(4, seed);
        assert!(!Field::is_zero(&m.det().unwrap()));
    }
    assert_eq!(gen_orthogonal_rational(3, 5, None), gen_orthogonal_rational(3, 5, None));
}

fn rat_mat(n: usize) -> impl Strategy<Value = Mat<Rational>> {
    prop::collection::vec(small_rational(), n * n).prop_map(move |v| Mat::new(n, n, v).unwrap())
}

fn ratfn_mat(n: usize) -> impl Strategy<Value = Mat<RatFn>> {
    prop::collection::vec(poly(2), n * n).prop_map(move |v| Mat::new(n, n, v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn inverse_is_two_sided(m in rat_mat(4)) {
        match m.inverse() {
            Ok(inv) => {
                prop_assert!(inv.matmul(&m).unwrap().is_identity());
                prop_assert!(m.matmul(&inv).unwrap().is_identity());
            }
            Err(Error::Singular) => prop_assert!(Field::is_zero(&leibniz(&m))),
            Err(e) => panic!("{e:?}"),
        }
    }

    #[test]
    fn det_matches_leibniz(m in rat_mat(4), p in ratfn_mat(3)) {
        prop_assert_eq!(m.det().unwrap(), leibniz(&m));
        prop_assert_eq!(p.det().unwrap(), leibniz(&p));
    }

    #[test]
    fn det_is_multiplicative(a in rat_mat(3), b in rat_mat(3)) {
        prop_assert_eq!(a.matmul(&b).unwrap().det().unwrap(), a.det().unwrap().mul(&b.det().unwrap()));
        prop_assert_eq!(a.direct_sum(&b).unwrap().det().unwrap(), leibniz(&a).mul(&leibniz(&b)));
        prop_assert_eq!(a.transpose().det().unwrap(), a.det().unwrap());
    }

    #[test]
    fn orthogonal_group_is_closed(s1 in 0u64..1000, s2 in 0u64..1000, n in 2usize..5) {
        let a = gen_orthogonal_rational(n, s1, None);
        let b = gen_orthogonal_rational(n, s2, None);
        prop_assert!(a.matmul(&b).unwrap().is_orthogonal());
        prop_assert_eq!(a.inverse().unwrap(), a.transpose());
    }

    #[test]
    fn symplectic_group_is_closed(s1 in 0u64..1000, s2 in 0u64..1000, half in 1usize..4) {
        let a = gen_symplectic_rational(2 * half, s1);
        let b = gen_symplectic_rational(2 * half, s2);
        prop_assert!(a.matmul(&b).unwrap().is_symplectic());
        prop_assert!(a.inverse().unwrap().is_symplectic());
        prop_assert!(a.det().unwrap().is_one());
    }
}
