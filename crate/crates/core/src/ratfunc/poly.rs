use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::mono::Mono;
use super::Rational;

/// Coefficient ring for [`Poly`].
pub trait Coeff: Clone + PartialEq + Eq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Exact quotient, `None` when the division does not stay in the ring.
    fn div_exact(&self, o: &Self) -> Option<Self>;
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            return None;
        }
        let (q, r) = self.div_rem(o);
        Zero::is_zero(&r).then_some(q)
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        (!Zero::is_zero(o)).then(|| self / o)
    }
}

/// Sparse multivariate polynomial, terms sorted by descending graded-lex order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<C> {
    terms: Vec<(Mono, C)>,
}

/// Integer polynomial, the representation behind [`super::RatFn`].
pub type IntPoly = Poly<BigInt>;
/// Polynomial with rational coefficients.
pub type Polynomial = Poly<Rational>;

impl<C: Coeff> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: alloc::vec![(Mono::one(), c)],
            }
        }
    }

    pub fn var(v: usize) -> Self {
        Self::term(Mono::var(v, 1), C::one())
    }

    pub fn term(m: Mono, c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: alloc::vec![(m, c)],
            }
        }
    }

    /// Builds from arbitrary terms, combining duplicates and dropping zeros.
    pub fn from_terms(mut terms: Vec<(Mono, C)>) -> Self {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mono, C)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add_ref(&c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        Poly { terms: out }
    }

    /// Terms must already be sorted descending with no duplicates or zeros.
    pub(crate) fn from_sorted(terms: Vec<(Mono, C)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Mono, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1 == C::one()
    }

    pub fn as_constant(&self) -> Option<C> {
        if self.terms.is_empty() {
            Some(C::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<&(Mono, C)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.0.degree())
    }

    pub fn degree_in(&self, v: usize) -> u16 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    /// One past the highest variable index occurring.
    pub fn width(&self) -> usize {
        self.terms.iter().map(|t| t.0.width()).max().unwrap_or(0)
    }

    /// Presence flag per variable index below [`Poly::width`].
    pub fn var_mask(&self) -> Vec<bool> {
        let mut mask = alloc::vec![false; self.width()];
        for (m, _) in &self.terms {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    mask[i] = true;
                }
            }
        }
        mask
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg_ref()))
                .collect(),
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other {
                        b[j].1.neg_ref()
                    } else {
                        b[j].1.clone()
                    };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        a[i].1.sub_ref(&b[j].1)
                    } else {
                        a[i].1.add_ref(&b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate_other {
                t.1.neg_ref()
            } else {
                t.1.clone()
            };
            out.push((t.0.clone(), c));
        }
        Poly { terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        self.merge(other, true)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.mul_ref(c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Mono, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(tm, a)| (tm.mul(m), a.mul_ref(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                prods.push((ma.mul(mb), ca.mul_ref(cb)));
            }
        }
        Self::from_terms(prods)
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Exact multivariate division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (dm, dc) = &d.terms[0];
        if d.terms.len() == 1 {
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                out.push((m.div(dm)?, c.div_exact(dc)?));
            }
            return Some(Poly { terms: out });
        }
        if d.total_degree() > self.total_degree() {
            return None;
        }
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.terms.first() {
            let qm = rm.div(dm)?;
            let qc = rc.div_exact(dc)?;
            rem = rem.sub(&d.mul_term(&qm, &qc));
            quot.push((qm, qc));
        }
        Some(Poly { terms: quot })
    }

    /// Coefficients with respect to variable `v`, index = power of `v`.
    pub fn to_univariate(&self, v: usize) -> Vec<Self> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Mono, C)>> = (0..=deg).map(|_| Vec::new()).collect();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(v);
            buckets[e as usize].push((rest, c.clone()));
        }
        // removing one variable preserves relative order within a bucket
        buckets
            .into_iter()
            .map(|b| {
                if b.windows(2).all(|w| w[0].0 > w[1].0) {
                    Poly { terms: b }
                } else {
                    Self::from_terms(b)
                }
            })
            .collect()
    }

    pub fn from_univariate(v: usize, coeffs: &[Self]) -> Self {
        let mut terms = Vec::new();
        for (e, p) in coeffs.iter().enumerate() {
            let vm = Mono::var(v, e as u16);
            for (m, c) in &p.terms {
                terms.push((m.mul(&vm), c.clone()));
            }
        }
        Self::from_terms(terms)
    }

    /// Evaluates with `eval_var(v)` supplying variable values; `None` if any is missing.
    pub fn eval_with<F>(&self, mut value: F) -> Option<C>
    where
        F: FnMut(usize) -> Option<C>,
    {
        let width = self.width();
        let mut cache: Vec<Option<Vec<C>>> = (0..width).map(|_| None).collect();
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if cache[v].is_none() {
                    cache[v] = Some(alloc::vec![C::one(), value(v)?]);
                }
                let powers = cache[v].as_mut().unwrap();
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap().mul_ref(&powers[1]);
                    powers.push(next);
                }
                t = t.mul_ref(&powers[e as usize]);
            }
            acc = acc.add_ref(&t);
        }
        Some(acc)
    }

    pub fn map_coeffs<D: Coeff, F: FnMut(&C) -> D>(&self, mut f: F) -> Poly<D> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect())
    }
}

impl IntPoly {
    /// Gcd of the coefficients, signed like the leading coefficient.
    pub fn content(&self) -> BigInt {
        let mut g = <BigInt as Zero>::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        match self.leading_coeff() {
            Some(lc) if lc.is_negative() => -g,
            _ => g,
        }
    }

    /// Divides out the content; leading coefficient becomes positive.
    pub fn primitive_part(&self) -> (BigInt, IntPoly) {
        if self.is_zero() {
            return (<BigInt as Zero>::zero(), Self::zero());
        }
        let c = self.content();
        if c.is_one() {
            return (c, self.clone());
        }
        let p = Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a / &c))
                .collect(),
        };
        (c, p)
    }

    pub fn to_rational(&self) -> Polynomial {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), Rational::from_integer(c.clone())))
                .collect(),
        }
    }

    /// Exact polynomial square root with positive leading coefficient.
    pub fn sqrt(&self) -> Option<IntPoly> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (lm, lc) = &self.terms[0];
        if lc.is_negative() {
            return None;
        }
        let rc = int_sqrt(lc)?;
        let rm = lm.sqrt()?;
        if self.terms.len() == 1 {
            return Some(Poly::term(rm, rc));
        }
        // even-degree check on the trailing term speeds up rejection
        let (tm, tc) = self.terms.last().unwrap();
        tm.sqrt()?;
        if tc.is_negative() {
            return None;
        }
        let lead = (rm.clone(), rc.clone());
        let two_lead_c = &rc * BigInt::from(2);
        let mut root: Vec<(Mono, BigInt)> = alloc::vec![lead];
        let mut rem = self.sub(&Poly::term(rm.mul(&rm), &rc * &rc));
        let mut last = rm.clone();
        while let Some((m, c)) = rem.terms.first() {
            let qm = m.div(&rm)?;
            if qm >= last {
                return None;
            }
            let qc = c.div_exact(&two_lead_c)?;
            // rem -= 2 * root * t + t^2
            let root_poly = Poly {
                terms: root.clone(),
            };
            let t2 = (qm.mul(&qm), &qc * &qc);
            let twice = root_poly.mul_term(&qm, &(&qc * BigInt::from(2)));
            rem = rem.sub(&twice).sub(&Poly::term(t2.0, t2.1));
            root.push((qm.clone(), qc));
            last = qm;
        }
        Some(Poly { terms: root })
    }
}

/// Integer square root for perfect squares.
pub fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = num_integer::Roots::sqrt(n);
    (&r * &r == *n).then_some(r)
}

impl Polynomial {
    /// Splits into a rational scale and a primitive integer polynomial.
    pub fn to_integer_primitive(&self) -> (Rational, IntPoly) {
        if self.is_zero() {
            return (<Rational as Zero>::zero(), IntPoly::zero());
        }
        let mut lcm = <BigInt as One>::one();
        for (_, c) in &self.terms {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<(Mono, BigInt)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.numer() * (&lcm / c.denom())))
            .collect();
        let p = Poly { terms: ints };
        let (cont, prim) = p.primitive_part();
        (Rational::new(cont, lcm), prim)
    }
}
