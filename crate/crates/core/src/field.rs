//! Field interfaces shared by the base fields and the radical towers.

use core::fmt::Debug;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratfunc::{int_sqrt, RatFn, Rational};

pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn from_rational(q: &Rational) -> Self;

    fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn square(&self) -> Self {
        self.mul(self)
    }
}

/// A field usable as the bottom of a radical tower.
pub trait BaseField: Field {
    /// A square root inside the field, if one exists.
    fn sqrt(&self) -> Option<Self>;
    /// Sign used to pick between `s` and `-s`.
    fn is_positive(&self) -> bool;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl BaseField for Rational {
    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        Some(Rational::new(int_sqrt(self.numer())?, int_sqrt(self.denom())?))
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
}

impl Field for RatFn {
    fn zero() -> Self {
        RatFn::zero()
    }
    fn one() -> Self {
        RatFn::one()
    }
    fn is_zero(&self) -> bool {
        RatFn::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        RatFn::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFn::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFn::mul(self, o)
    }
    fn neg(&self) -> Self {
        RatFn::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        RatFn::inv(self).map_err(|_| Error::DivisionByZero)
    }
    fn from_rational(q: &Rational) -> Self {
        RatFn::from_rational(q)
    }
    fn is_one(&self) -> bool {
        RatFn::is_one(self)
    }
    fn square(&self) -> Self {
        RatFn::square(self)
    }
}

impl BaseField for RatFn {
    fn sqrt(&self) -> Option<Self> {
        RatFn::sqrt(self)
    }
    fn is_positive(&self) -> bool {
        RatFn::is_positive(self)
    }
}
