#![allow(dead_code)]

pub mod oracles;
pub mod props;

use proptest::prelude::*;
use reidemeister_core::ratfunc::{RatFn, Rational};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Sum of up to four terms `c x_i^a x_j^b` over variables `0..nvars`.
pub fn poly(nvars: usize) -> impl Strategy<Value = RatFn> {
    prop::collection::vec((-4i64..=4, 0..nvars, 0u32..3, 0..nvars, 0u32..2), 1..5).prop_map(|terms| {
        terms.into_iter().fold(RatFn::zero(), |acc, (c, i, a, j, b)| {
            let t = RatFn::from_int(c).mul(&RatFn::var(i).pow(a)).mul(&RatFn::var(j).pow(b));
            acc.add(&t)
        })
    })
}

pub fn nonzero_poly(nvars: usize) -> impl Strategy<Value = RatFn> {
    poly(nvars).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn ratfn(nvars: usize) -> impl Strategy<Value = RatFn> {
    (poly(nvars), nonzero_poly(nvars)).prop_map(|(n, d)| n.div(&d).unwrap())
}

pub fn nonzero_ratfn(nvars: usize) -> impl Strategy<Value = RatFn> {
    ratfn(nvars).prop_filter("nonzero", |f| !f.is_zero())
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| q(n, d))
}
