use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::gcd::poly_gcd;
use super::mono::Mono;
use super::poly::{IntPoly, Polynomial};
use super::{RatFnError, Rational, VarRegistry};

/// Reduced quotient of integer polynomials.
///
/// Stored as `num / den` with `gcd(num, den) = 1` over the integers and a
/// positive leading coefficient on `den`; zero is `0 / 1`. Equality is
/// structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFn {
    num: IntPoly,
    den: IntPoly,
}

impl Default for RatFn {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFn {
    pub fn zero() -> Self {
        RatFn {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFn {
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(IntPoly::constant(BigInt::from(n)))
    }

    pub fn from_rational(q: &Rational) -> Self {
        RatFn {
            num: IntPoly::constant(q.numer().clone()),
            den: IntPoly::constant(q.denom().clone()),
        }
    }

    pub fn var(v: usize) -> Self {
        Self::from_poly(IntPoly::var(v))
    }

    pub fn from_poly(num: IntPoly) -> Self {
        RatFn {
            num,
            den: IntPoly::one(),
        }
    }

    pub fn from_polynomial(p: &Polynomial) -> Self {
        let (scale, prim) = p.to_integer_primitive();
        Self::from_poly(prim).mul(&Self::from_rational(&scale))
    }

    /// Reduces `num / den` to canonical form.
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self, RatFnError> {
        if den.is_zero() {
            return Err(RatFnError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = poly_gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        Ok(Self::sign_normalized(num, den))
    }

    /// Canonicalizes when `num` and `den` are known coprime up to integer content.
    pub(crate) fn new_coprime(num: IntPoly, den: IntPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.content().gcd(&den.content());
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (divide_content(&num, &g), divide_content(&den, &g))
        };
        Self::sign_normalized(num, den)
    }

    fn sign_normalized(num: IntPoly, den: IntPoly) -> Self {
        if den.leading_coeff().is_some_and(|c| c.is_negative()) {
            RatFn {
                num: num.neg(),
                den: den.neg(),
            }
        } else {
            RatFn { num, den }
        }
    }

    pub fn num_int(&self) -> &IntPoly {
        &self.num
    }

    pub fn den_int(&self) -> &IntPoly {
        &self.den
    }

    /// Numerator over the primitive denominator (rational coefficients).
    pub fn numerator(&self) -> Polynomial {
        let c = self.den.content();
        let r = self.num.to_rational();
        if c.is_one() {
            r
        } else {
            r.scale(&Rational::from_integer(c).recip())
        }
    }

    /// Primitive denominator with positive leading coefficient.
    pub fn denominator(&self) -> Polynomial {
        self.den.primitive_part().1.to_rational()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some(Rational::new(n, d)),
            _ => None,
        }
    }

    /// Canonical sign: leading numerator coefficient positive.
    pub fn is_positive(&self) -> bool {
        self.num.leading_coeff().is_some_and(|c| c.is_positive())
    }

    pub fn width(&self) -> usize {
        self.num.width().max(self.den.width())
    }

    pub fn vars(&self) -> Vec<usize> {
        let mut m = self.num.var_mask();
        let dm = self.den.var_mask();
        if dm.len() > m.len() {
            m.resize(dm.len(), false);
        }
        for (i, b) in dm.into_iter().enumerate() {
            m[i] |= b;
        }
        m.into_iter()
            .enumerate()
            .filter_map(|(i, b)| b.then_some(i))
            .collect()
    }

    pub fn neg(&self) -> Self {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = self.num.add(&o.num);
            if self.den.is_one() {
                return RatFn {
                    num,
                    den: self.den.clone(),
                };
            }
            return Self::new(num, self.den.clone()).unwrap();
        }
        if self.den.is_constant() && o.den.is_constant() {
            let d1 = self.den.as_constant().unwrap();
            let d2 = o.den.as_constant().unwrap();
            let l = d1.lcm(&d2);
            let num = self
                .num
                .scale(&(&l / &d1))
                .add(&o.num.scale(&(&l / &d2)));
            return Self::new_coprime(num, IntPoly::constant(l));
        }
        let g = poly_gcd(&self.den, &o.den);
        if g.is_one() {
            let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            let den = self.den.mul(&o.den);
            // gcd(num, den) is already 1 over Q
            return Self::new_coprime(num, den);
        }
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = o.den.div_exact(&g).unwrap();
        let num = self.num.mul(&d1).add(&o.num.mul(&b1));
        if num.is_zero() {
            return Self::zero();
        }
        let den = b1.mul(&o.den);
        let g2 = poly_gcd(&num, &g);
        if g2.is_one() {
            Self::new_coprime(num, den)
        } else {
            Self::new_coprime(num.div_exact(&g2).unwrap(), den.div_exact(&g2).unwrap())
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFn {
                num: self.num.mul(&o.num),
                den: IntPoly::one(),
            };
        }
        let g1 = poly_gcd(&self.num, &o.den);
        let g2 = poly_gcd(&o.num, &self.den);
        let div = |p: &IntPoly, g: &IntPoly| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).unwrap()
            }
        };
        let num = div(&self.num, &g1).mul(&div(&o.num, &g2));
        let den = div(&self.den, &g2).mul(&div(&o.den, &g1));
        Self::sign_normalized(num, den)
    }

    pub fn square(&self) -> Self {
        RatFn {
            num: self.num.square(),
            den: self.den.square(),
        }
    }

    pub fn inv(&self) -> Result<Self, RatFnError> {
        if self.is_zero() {
            return Err(RatFnError::DivisionByZero);
        }
        Ok(Self::sign_normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self, RatFnError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFn {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Exact square root, if `self` is a square in the field.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if !self.is_positive() {
            return None;
        }
        let d = self.den.sqrt()?;
        let n = self.num.sqrt()?;
        Some(Self::sign_normalized(n, d))
    }

    /// Exact value at `point`; every occurring variable must be assigned.
    pub fn evaluate(&self, point: &BTreeMap<usize, Rational>) -> Result<Rational, RatFnError> {
        self.evaluate_with(|v| point.get(&v).cloned())
    }

    pub fn evaluate_with<F>(&self, mut value: F) -> Result<Rational, RatFnError>
    where
        F: FnMut(usize) -> Option<Rational>,
    {
        let mut missing = None;
        let mut lookup = |v: usize| {
            let r = value(v);
            if r.is_none() {
                missing = Some(v);
            }
            r
        };
        let n = self.num.to_rational().eval_with(&mut lookup);
        let d = self.den.to_rational().eval_with(&mut lookup);
        match (n, d) {
            (Some(n), Some(d)) => {
                if d.is_zero() {
                    Err(RatFnError::Pole)
                } else {
                    Ok(n / d)
                }
            }
            _ => Err(RatFnError::MissingValue(missing.unwrap_or(0))),
        }
    }

    /// Substitutes `images` for variables (unlisted variables are fixed).
    pub fn substitute(&self, images: &BTreeMap<usize, RatFn>) -> Result<Self, RatFnError> {
        Substitution::new(images.clone())?.apply(self)
    }

    pub fn display(&self, reg: &VarRegistry) -> String {
        super::print::format_ratfn(self, reg)
    }
}

fn divide_content(p: &IntPoly, g: &BigInt) -> IntPoly {
    IntPoly::from_sorted(
        p.terms()
            .iter()
            .map(|(m, c)| (m.clone(), c / g))
            .collect(),
    )
}

/// A prepared substitution `variable -> RatFn`.
///
/// When every image has a constant denominator the composition is done
/// with integer Horner evaluation. When the images are affine with
/// rational coefficients and an invertible linear part, the substitution is
/// an automorphism of the polynomial ring, so reduced fractions stay reduced
/// and no gcd is needed.
#[derive(Clone, Debug)]
pub struct Substitution {
    images: BTreeMap<usize, RatFn>,
    /// Common denominator and integer numerators when all image denominators are constant.
    integral: Option<(BigInt, BTreeMap<usize, IntPoly>)>,
    ring_automorphism: bool,
}

impl Substitution {
    pub fn new(images: BTreeMap<usize, RatFn>) -> Result<Self, RatFnError> {
        let integral = if images.values().all(|f| f.den.is_constant()) {
            let mut c = BigInt::one();
            for f in images.values() {
                c = c.lcm(&f.den.as_constant().unwrap());
            }
            let nums = images
                .iter()
                .map(|(&v, f)| {
                    let d = f.den.as_constant().unwrap();
                    (v, f.num.scale(&(&c / d)))
                })
                .collect();
            Some((c, nums))
        } else {
            None
        };
        let ring_automorphism = integral.is_some() && is_affine_automorphism(&images);
        Ok(Substitution {
            images,
            integral,
            ring_automorphism,
        })
    }

    pub fn images(&self) -> &BTreeMap<usize, RatFn> {
        &self.images
    }

    pub fn is_ring_automorphism(&self) -> bool {
        self.ring_automorphism
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().all(|(&v, f)| *f == RatFn::var(v))
    }

    pub fn apply(&self, f: &RatFn) -> Result<RatFn, RatFnError> {
        if f.num.is_constant() && f.den.is_constant() {
            return Ok(f.clone());
        }
        if let Some((c, nums)) = &self.integral {
            let (hn, kn) = horner_integral(&f.num, c, nums);
            let (hd, kd) = horner_integral(&f.den, c, nums);
            if hd.is_zero() {
                return Err(RatFnError::DivisionByZero);
            }
            let (num, den) = if kd >= kn {
                (hn.scale(&num_traits::pow(c.clone(), (kd - kn) as usize)), hd)
            } else {
                (hn, hd.scale(&num_traits::pow(c.clone(), (kn - kd) as usize)))
            };
            if self.ring_automorphism {
                return Ok(RatFn::new_coprime(num, den));
            }
            return RatFn::new(num, den);
        }
        let n = horner_general(&f.num, &self.images);
        let d = horner_general(&f.den, &self.images);
        if d.is_zero() {
            return Err(RatFnError::DivisionByZero);
        }
        n.div(&d)
    }
}

/// `p(images) * c^k`, returning the integer polynomial and `k`.
fn horner_integral(p: &IntPoly, c: &BigInt, nums: &BTreeMap<usize, IntPoly>) -> (IntPoly, u32) {
    let width = p.width();
    let vars: Vec<usize> = (0..width)
        .filter(|&v| p.degree_in(v) > 0)
        .collect();
    let degs: Vec<u16> = vars.iter().map(|&v| p.degree_in(v)).collect();
    let k: u32 = degs.iter().map(|&d| d as u32).sum();
    let c_is_one = c.is_one();
    let mut cpow: Vec<BigInt> = alloc::vec![BigInt::one()];
    let maxd = degs.iter().copied().max().unwrap_or(0) as usize;
    for i in 1..=maxd {
        let next = &cpow[i - 1] * c;
        cpow.push(next);
    }
    let images: Vec<IntPoly> = vars
        .iter()
        .map(|&v| match nums.get(&v) {
            Some(m) => m.clone(),
            None => IntPoly::var(v).scale(c),
        })
        .collect();
    let terms: Vec<(Mono, BigInt)> = p.terms().to_vec();
    let out = horner_rec(&terms, 0, &vars, &degs, &images, &cpow, c_is_one);
    (out, k)
}

fn horner_rec(
    terms: &[(Mono, BigInt)],
    level: usize,
    vars: &[usize],
    degs: &[u16],
    images: &[IntPoly],
    cpow: &[BigInt],
    c_is_one: bool,
) -> IntPoly {
    if terms.is_empty() {
        return IntPoly::zero();
    }
    if level == vars.len() {
        let mut s = BigInt::zero();
        for (_, c) in terms {
            s += c;
        }
        return IntPoly::constant(s);
    }
    let v = vars[level];
    let d = degs[level] as usize;
    let mut buckets: Vec<Vec<(Mono, BigInt)>> = (0..=d).map(|_| Vec::new()).collect();
    for (m, c) in terms {
        buckets[m.exp(v) as usize].push((m.clone(), c.clone()));
    }
    let mut acc = horner_rec(&buckets[d], level + 1, vars, degs, images, cpow, c_is_one);
    for e in (0..d).rev() {
        acc = acc.mul(&images[level]);
        let h = horner_rec(&buckets[e], level + 1, vars, degs, images, cpow, c_is_one);
        if !h.is_zero() {
            if c_is_one {
                acc = acc.add(&h);
            } else {
                acc = acc.add(&h.scale(&cpow[d - e]));
            }
        }
    }
    acc
}

fn horner_general(p: &IntPoly, images: &BTreeMap<usize, RatFn>) -> RatFn {
    let mut acc = RatFn::zero();
    let mut cache: BTreeMap<(usize, u16), RatFn> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut t = RatFn::from_poly(IntPoly::constant(c.clone()));
        for (v, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let key = (v, e);
            cache.entry(key).or_insert_with(|| {
                let base = images.get(&v).cloned().unwrap_or_else(|| RatFn::var(v));
                base.pow(e as u32)
            });
            t = t.mul(&cache[&key]);
        }
        acc = acc.add(&t);
    }
    acc
}

/// Images affine in the variables with rational coefficients and invertible linear part.
fn is_affine_automorphism(images: &BTreeMap<usize, RatFn>) -> bool {
    let mut vars: Vec<usize> = images.keys().copied().collect();
    for f in images.values() {
        if !f.den.is_constant() || f.num.total_degree() > 1 {
            return false;
        }
        vars.extend(f.vars());
    }
    vars.sort_unstable();
    vars.dedup();
    let n = vars.len();
    let mut m: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for &v in &vars {
        let mut row = alloc::vec![Rational::zero(); n];
        match images.get(&v) {
            None => row[vars.binary_search(&v).unwrap()] = Rational::one(),
            Some(f) => {
                let d = f.den.as_constant().unwrap();
                for (mono, c) in f.num.terms() {
                    if mono.is_one() {
                        continue;
                    }
                    let w = mono
                        .exponents()
                        .iter()
                        .position(|&e| e == 1)
                        .unwrap();
                    row[vars.binary_search(&w).unwrap()] = Rational::new(c.clone(), d.clone());
                }
            }
        }
        m.push(row);
    }
    rational_full_rank(m)
}

fn rational_full_rank(mut m: Vec<Vec<Rational>>) -> bool {
    let n = m.len();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return false;
        };
        m.swap(col, p);
        let pivot = m[col][col].clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            let (top, bottom) = m.split_at_mut(r);
            for (dst, src) in bottom[0][col..n].iter_mut().zip(&top[col][col..n]) {
                *dst -= &f * src;
            }
        }
    }
    true
}
