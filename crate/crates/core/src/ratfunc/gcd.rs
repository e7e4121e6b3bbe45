//! Multivariate gcd over the integers.
//!
//! The driver strips integer contents, peels off variables that occur in
//! only one operand, tries a modular coprimality certificate and falls back
//! to the primitive subresultant remainder sequence on the lowest-index
//! shared variable.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{IntPoly, Polynomial};
use super::Rational;

const PRIME: u64 = 2_147_483_647;

/// Greatest common divisor with positive leading coefficient, integer content included.
///
/// `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return b.primitive_part().1.scale(&b.content().abs());
    }
    if b.is_zero() {
        return a.primitive_part().1.scale(&a.content().abs());
    }
    let (ca, pa) = a.primitive_part();
    let (cb, pb) = b.primitive_part();
    let c = ca.gcd(&cb);
    let g = gcd_primitive(&pa, &pb);
    if c.is_one() {
        g
    } else {
        g.scale(&c)
    }
}

/// Gcd over `Q[x]`: `gcd` is primitive with positive leading coefficient
/// (so constants give 1) and `content` is the gcd of the two rational contents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyGcd {
    pub gcd: Polynomial,
    pub content: Rational,
}

pub fn polynomial_gcd(a: &Polynomial, b: &Polynomial) -> PolyGcd {
    let (ca, pa) = a.to_integer_primitive();
    let (cb, pb) = b.to_integer_primitive();
    let content = if ca.is_zero() {
        cb.abs()
    } else if cb.is_zero() {
        ca.abs()
    } else {
        Rational::new(ca.numer().gcd(cb.numer()), ca.denom().lcm(cb.denom()))
    };
    let g = poly_gcd(&pa, &pb);
    let g = if g.is_zero() { g } else { g.primitive_part().1 };
    PolyGcd {
        gcd: g.to_rational(),
        content,
    }
}

/// Gcd of two primitive polynomials; result primitive with positive leading coefficient.
fn gcd_primitive(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_constant() || b.is_constant() {
        return IntPoly::one();
    }
    if a == b {
        return a.clone();
    }
    let ma = a.var_mask();
    let mb = b.var_mask();
    let width = ma.len().max(mb.len());
    let has = |m: &[bool], v: usize| m.get(v).copied().unwrap_or(false);
    for v in 0..width {
        if has(&ma, v) && !has(&mb, v) {
            return gcd_with_coefficients(b, a, v);
        }
        if has(&mb, v) && !has(&ma, v) {
            return gcd_with_coefficients(a, b, v);
        }
    }
    let vars: Vec<usize> = (0..width).filter(|&v| has(&ma, v)).collect();

    // cheap exact-division shortcuts
    let (small, large) = if b.len() <= a.len() { (b, a) } else { (a, b) };
    if small.total_degree() <= large.total_degree() && large.div_exact(small).is_some() {
        return small.clone();
    }

    if modular_coprime(a, b, &vars) {
        return IntPoly::one();
    }
    subresultant_gcd(a, b, vars[0])
}

/// `gcd(p, q)` where `q` involves `v` and `p` does not: reduces to the
/// coefficients of `q` in `v`.
fn gcd_with_coefficients(p: &IntPoly, q: &IntPoly, v: usize) -> IntPoly {
    let mut g = p.clone();
    let mut coeffs = q.to_univariate(v);
    coeffs.retain(|c| !c.is_zero());
    coeffs.sort_by_key(|c| c.len());
    for c in coeffs {
        g = gcd_primitive(&g, &c.primitive_part().1);
        if g.is_constant() {
            return IntPoly::one();
        }
    }
    g
}

/// Content with respect to `v`: gcd of the coefficients, a polynomial free of `v`.
fn content_in(coeffs: &[IntPoly]) -> IntPoly {
    let mut nz: Vec<&IntPoly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    nz.sort_by_key(|c| c.len());
    let mut g = match nz.first() {
        Some(c) => (*c).clone(),
        None => return IntPoly::zero(),
    };
    for c in &nz[1..] {
        if g.is_constant() {
            break;
        }
        g = poly_gcd(&g, c);
    }
    if g.is_constant() {
        // integer content of the coefficient list
        let mut ic = BigInt::zero();
        for c in &nz {
            ic = ic.gcd(&c.content());
        }
        IntPoly::constant(ic)
    } else {
        g
    }
}

fn trim(u: &mut Vec<IntPoly>) {
    while u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
}

fn lc(u: &[IntPoly]) -> &IntPoly {
    u.last().expect("nonzero univariate")
}

/// Pseudo-remainder of `a` by `b` in `R[v]`, `deg a >= deg b`.
fn prem(a: &[IntPoly], b: &[IntPoly]) -> Vec<IntPoly> {
    let db = b.len() - 1;
    let lb = lc(b).clone();
    let mut r: Vec<IntPoly> = a.to_vec();
    let mut e = (a.len() - 1) as i64 - db as i64 + 1;
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = lc(&r).clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(&lb);
        }
        for (i, bc) in b.iter().enumerate() {
            let t = bc.mul(&lr);
            r[i + shift] = r[i + shift].sub(&t);
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c = c.mul(&f);
        }
    }
    r
}

fn div_all(u: &[IntPoly], d: &IntPoly) -> Vec<IntPoly> {
    u.iter()
        .map(|c| c.div_exact(d).expect("subresultant division is exact"))
        .collect()
}

fn subresultant_gcd(a: &IntPoly, b: &IntPoly, v: usize) -> IntPoly {
    let ua = a.to_univariate(v);
    let ub = b.to_univariate(v);
    let ca = content_in(&ua);
    let cb = content_in(&ub);
    let c = poly_gcd(&ca, &cb);
    let mut f = div_all(&ua, &ca);
    let mut g = div_all(&ub, &cb);
    if f.len() < g.len() {
        core::mem::swap(&mut f, &mut g);
    }
    let mut gg = IntPoly::one();
    let mut h = IntPoly::one();
    loop {
        let delta = (f.len() - g.len()) as u32;
        let r = prem(&f, &g);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            // gcd is free of v
            return c.primitive_part().1;
        }
        let divisor = gg.mul(&h.pow(delta));
        f = core::mem::replace(&mut g, div_all(&r, &divisor));
        gg = lc(&f).clone();
        h = if delta == 0 {
            h
        } else {
            let num = gg.pow(delta);
            if delta == 1 {
                num
            } else {
                num.div_exact(&h.pow(delta - 1))
                    .expect("subresultant h update is exact")
            }
        };
    }
    let cg = content_in(&g);
    let pg = IntPoly::from_univariate(v, &div_all(&g, &cg));
    pg.mul(&c).primitive_part().1
}

// ---- modular coprimality certificate ----

struct ModTerms {
    terms: Vec<(Vec<(usize, u16)>, u64)>,
}

impl ModTerms {
    fn new(p: &IntPoly) -> Self {
        let m = BigInt::from(PRIME);
        let terms = p
            .terms()
            .iter()
            .map(|(mono, c)| {
                let r = c.mod_floor(&m).to_u64().unwrap();
                let exps = mono
                    .exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (i, e))
                    .collect();
                (exps, r)
            })
            .collect();
        ModTerms { terms }
    }

    /// Univariate image in `v` with the other variables set to `point`.
    fn image(&self, v: usize, point: &[u64]) -> Vec<u64> {
        let mut out: Vec<u64> = Vec::new();
        for (exps, c) in &self.terms {
            let mut val = *c;
            let mut deg = 0usize;
            for &(i, e) in exps {
                if i == v {
                    deg = e as usize;
                } else {
                    val = mulmod(val, powmod(point[i], e as u64));
                }
            }
            if out.len() <= deg {
                out.resize(deg + 1, 0);
            }
            out[deg] = (out[deg] + val) % PRIME;
        }
        out
    }
}

fn mulmod(a: u64, b: u64) -> u64 {
    (a * b) % PRIME
}

fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    b %= PRIME;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    acc
}

fn trim_mod(u: &mut Vec<u64>) {
    while u.last() == Some(&0) {
        u.pop();
    }
}

fn mod_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    trim_mod(&mut a);
    trim_mod(&mut b);
    while !b.is_empty() {
        // a <- a mod b
        let inv = powmod(*b.last().unwrap(), PRIME - 2);
        while a.len() >= b.len() {
            let f = mulmod(*a.last().unwrap(), inv);
            let shift = a.len() - b.len();
            for (i, &bc) in b.iter().enumerate() {
                a[i + shift] = (a[i + shift] + PRIME - mulmod(f, bc)) % PRIME;
            }
            trim_mod(&mut a);
        }
        core::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Certifies `gcd(a, b) = 1` for primitive `a`, `b` sharing the variable set
/// `vars`: if for every variable the modular univariate images (with
/// nonvanishing leading coefficients) are coprime, the gcd has degree zero
/// in every variable. A `false` answer is inconclusive.
fn modular_coprime(a: &IntPoly, b: &IntPoly, vars: &[usize]) -> bool {
    let ta = ModTerms::new(a);
    let tb = ModTerms::new(b);
    let width = a.width().max(b.width());
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    let mut point = alloc::vec![0u64; width];
    for p in point.iter_mut() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        *p = 2 + state % (PRIME - 3);
    }
    for &v in vars {
        let ia = ta.image(v, &point);
        let ib = tb.image(v, &point);
        let da = a.degree_in(v) as usize;
        let db = b.degree_in(v) as usize;
        if ia.len() != da + 1 || ib.len() != db + 1 || ia[da] == 0 || ib[db] == 0 {
            return false;
        }
        if mod_gcd_degree(ia, ib) != 0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: usize) -> IntPoly {
        IntPoly::var(v)
    }
    fn c(n: i64) -> IntPoly {
        IntPoly::constant(BigInt::from(n))
    }

    #[test]
    fn difference_of_squares() {
        let a = x(0).square().sub(&x(1).square());
        let b = x(0).sub(&x(1));
        assert_eq!(poly_gcd(&a, &b), b);
    }

    #[test]
    fn zero_cases() {
        let p = x(0).scale(&BigInt::from(6)).add(&c(4));
        assert_eq!(poly_gcd(&p, &IntPoly::zero()), p);
        assert_eq!(poly_gcd(&IntPoly::zero(), &IntPoly::zero()), IntPoly::zero());
        assert_eq!(poly_gcd(&c(6), &c(4)), c(2));
    }

    #[test]
    fn hidden_common_factor() {
        let f = x(0).mul(&x(1)).add(&x(2)).add(&c(3));
        let g1 = x(0).square().add(&x(2).pow(3)).sub(&x(1));
        let g2 = x(1).square().sub(&x(0).mul(&x(2))).add(&c(7));
        let a = f.mul(&g1);
        let b = f.mul(&g2);
        assert_eq!(poly_gcd(&a, &b), f);
        assert_eq!(poly_gcd(&g1, &g2), c(1));
    }

    #[test]
    fn factor_in_subset_of_variables() {
        let f = x(1).add(&c(1));
        let a = f.mul(&x(0).add(&x(2)));
        let b = f.mul(&x(2).sub(&c(5)));
        assert_eq!(poly_gcd(&a, &b), f);
        let g = f.square().mul(&x(0));
        assert_eq!(poly_gcd(&g, &f.mul(&x(3))), f);
    }

    #[test]
    fn nonmonic_univariate() {
        let f = x(0).scale(&BigInt::from(2)).add(&c(3));
        let a = f.mul(&x(0).square().add(&c(1)));
        let b = f.mul(&x(0).scale(&BigInt::from(5)).sub(&c(1)));
        assert_eq!(poly_gcd(&a, &b), f);
    }
}
