//! Towers of quadratic extensions `K(√r1)(√r2)…` and their elements.
//!
//! An element of a depth-`d` tower is a vector of `2^d` base coefficients:
//! the first half is `a`, the second half `b`, read as `a + b√r_d` with `a`
//! and `b` in the depth-`d-1` tower. Elements are kept at the smallest depth
//! that holds them, so an element whose top `b` half vanishes lives below.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{BaseField, Field};
use crate::ratfunc::{RatFn, Rational};

pub const DEFAULT_MAX_DEPTH: usize = 64;

pub struct Layer<K> {
    depth: usize,
    radicand: TowerElem<K>,
    padded: Vec<K>,
    parent: Option<Arc<Layer<K>>>,
}

impl<K> Layer<K> {
    fn ancestor(self: &Arc<Self>, depth: usize) -> Option<Arc<Layer<K>>> {
        let mut cur = Some(self.clone());
        while let Some(l) = cur {
            if l.depth == depth {
                return Some(l);
            }
            if l.depth < depth {
                return None;
            }
            cur = l.parent.clone();
        }
        None
    }
}

fn same_layer<K>(a: &Option<Arc<Layer<K>>>, b: &Option<Arc<Layer<K>>>) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => Arc::ptr_eq(x, y),
        _ => false,
    }
}

fn layer_depth<K>(l: &Option<Arc<Layer<K>>>) -> usize {
    l.as_ref().map_or(0, |l| l.depth)
}

/// The radicands (padded to the depth of their layer minus one) from the bottom up.
fn chain<K>(top: &Option<Arc<Layer<K>>>) -> Vec<&[K]> {
    let mut out = Vec::new();
    let mut cur = top.as_deref();
    while let Some(l) = cur {
        out.push(l.padded.as_slice());
        cur = l.parent.as_deref();
    }
    out.reverse();
    out
}

/// Element of a radical tower over `K`.
pub struct TowerElem<K> {
    layer: Option<Arc<Layer<K>>>,
    coeffs: Vec<K>,
}

impl<K: Clone> Clone for TowerElem<K> {
    fn clone(&self) -> Self {
        TowerElem {
            layer: self.layer.clone(),
            coeffs: self.coeffs.clone(),
        }
    }
}

impl<K: PartialEq> PartialEq for TowerElem<K> {
    fn eq(&self, o: &Self) -> bool {
        same_layer(&self.layer, &o.layer) && self.coeffs == o.coeffs
    }
}

impl<K: fmt::Debug> fmt::Debug for TowerElem<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TowerElem")
            .field("depth", &layer_depth(&self.layer))
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

impl<K: BaseField> TowerElem<K> {
    pub fn base(k: K) -> Self {
        TowerElem {
            layer: None,
            coeffs: vec![k],
        }
    }

    pub fn depth(&self) -> usize {
        layer_depth(&self.layer)
    }

    /// Coefficient vector of length `2^depth`.
    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn as_base(&self) -> Option<&K> {
        (self.layer.is_none()).then(|| &self.coeffs[0])
    }

    /// The leaves padded to depth `d`, which must not be below `self.depth()`.
    pub fn coeffs_at(&self, d: usize) -> Vec<K> {
        let mut v = self.coeffs.clone();
        v.resize(1 << d, K::zero());
        v
    }

    fn build(layer: Option<Arc<Layer<K>>>, mut coeffs: Vec<K>) -> Self {
        let mut layer = layer;
        while let Some(l) = layer.as_ref() {
            let half = coeffs.len() / 2;
            if coeffs[half..].iter().all(|c| c.is_zero()) {
                coeffs.truncate(half);
                layer = l.parent.clone();
            } else {
                break;
            }
        }
        TowerElem { layer, coeffs }
    }

    /// Deeper of the two layers; panics when the elements come from unrelated towers.
    fn join(&self, o: &Self) -> Option<Arc<Layer<K>>> {
        let (deep, shallow) = if self.depth() >= o.depth() {
            (&self.layer, &o.layer)
        } else {
            (&o.layer, &self.layer)
        };
        if let (Some(d), Some(s)) = (deep, shallow) {
            match d.ancestor(s.depth) {
                Some(a) if Arc::ptr_eq(&a, s) => {}
                _ => panic!("tower elements from different towers"),
            }
        }
        deep.clone()
    }

    fn binary(&self, o: &Self, f: impl FnOnce(&[K], &[K], &[&[K]], usize) -> Vec<K>) -> Self {
        let layer = self.join(o);
        let d = layer_depth(&layer);
        let a = self.coeffs_at(d);
        let b = o.coeffs_at(d);
        let out = f(&a, &b, &chain(&layer), d);
        Self::build(layer, out)
    }

    /// `a² - b²r` for the top layer, in the field one level down.
    pub fn norm(&self) -> Self {
        match self.layer.as_ref() {
            None => self.clone(),
            Some(l) => {
                let ch = chain(&self.layer);
                let half = self.coeffs.len() / 2;
                let n = raw_norm(&self.coeffs[..half], &self.coeffs[half..], &ch, l.depth);
                Self::build(l.parent.clone(), n)
            }
        }
    }

    /// Canonical sign: first nonzero leaf positive.
    pub fn is_canonical_sign(&self) -> bool {
        self.coeffs
            .iter()
            .find(|c| !c.is_zero())
            .is_none_or(|c| c.is_positive())
    }

    /// Applies a ring homomorphism given on leaves and on the layer radicals.
    ///
    /// `radicals[k]` is the image of the radical of layer `k + 1`.
    pub fn fold<L: Field>(
        &self,
        leaf: &mut impl FnMut(&K) -> Result<L>,
        radicals: &[L],
    ) -> Result<L> {
        fold_raw(&self.coeffs, self.depth(), leaf, radicals)
    }

    pub fn map_leaves(&self, mut f: impl FnMut(&K) -> K) -> Self {
        let coeffs = self.coeffs.iter().map(&mut f).collect();
        Self::build(self.layer.clone(), coeffs)
    }
}

fn fold_raw<K: BaseField, L: Field>(
    x: &[K],
    d: usize,
    leaf: &mut impl FnMut(&K) -> Result<L>,
    radicals: &[L],
) -> Result<L> {
    if d == 0 {
        return leaf(&x[0]);
    }
    let half = x.len() / 2;
    let a = fold_raw(&x[..half], d - 1, leaf, radicals)?;
    if x[half..].iter().all(|c| c.is_zero()) {
        return Ok(a);
    }
    let b = fold_raw(&x[half..], d - 1, leaf, radicals)?;
    Ok(a.add(&b.mul(&radicals[d - 1])))
}

fn raw_add<K: Field>(a: &[K], b: &[K]) -> Vec<K> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

fn raw_sub<K: Field>(a: &[K], b: &[K]) -> Vec<K> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

fn is_zero_raw<K: Field>(a: &[K]) -> bool {
    a.iter().all(|c| c.is_zero())
}

fn raw_mul<K: Field>(x: &[K], y: &[K], ch: &[&[K]], d: usize) -> Vec<K> {
    if d == 0 {
        return vec![x[0].mul(&y[0])];
    }
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    let (c, e) = y.split_at(h);
    let bz = is_zero_raw(b);
    let ez = is_zero_raw(e);
    if bz && ez {
        let mut out = raw_mul(a, c, ch, d - 1);
        out.resize(x.len(), K::zero());
        return out;
    }
    if bz {
        let mut out = raw_mul(a, c, ch, d - 1);
        out.extend(raw_mul(a, e, ch, d - 1));
        return out;
    }
    if ez {
        let mut out = raw_mul(a, c, ch, d - 1);
        out.extend(raw_mul(b, c, ch, d - 1));
        return out;
    }
    let ac = raw_mul(a, c, ch, d - 1);
    let be = raw_mul(b, e, ch, d - 1);
    let cross = raw_mul(&raw_add(a, b), &raw_add(c, e), ch, d - 1);
    let mid = raw_sub(&raw_sub(&cross, &ac), &be);
    let mut out = raw_add(&ac, &raw_mul(&be, ch[d - 1], ch, d - 1));
    out.extend(mid);
    out
}

fn raw_square<K: Field>(x: &[K], ch: &[&[K]], d: usize) -> Vec<K> {
    raw_mul(x, x, ch, d)
}

/// `a² - b²·r_d` at depth `d - 1`.
fn raw_norm<K: Field>(a: &[K], b: &[K], ch: &[&[K]], d: usize) -> Vec<K> {
    let a2 = raw_square(a, ch, d - 1);
    if is_zero_raw(b) {
        return a2;
    }
    let b2 = raw_square(b, ch, d - 1);
    raw_sub(&a2, &raw_mul(&b2, ch[d - 1], ch, d - 1))
}

fn raw_inv<K: Field>(x: &[K], ch: &[&[K]], d: usize) -> Result<Vec<K>> {
    if d == 0 {
        return Ok(vec![x[0].inv()?]);
    }
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    if is_zero_raw(b) {
        let mut out = raw_inv(a, ch, d - 1)?;
        out.resize(x.len(), K::zero());
        return Ok(out);
    }
    let n = raw_norm(a, b, ch, d);
    if is_zero_raw(&n) {
        return Err(Error::DegenerateTower);
    }
    let ni = raw_inv(&n, ch, d - 1)?;
    let mut out = raw_mul(a, &ni, ch, d - 1);
    let nb: Vec<K> = raw_mul(b, &ni, ch, d - 1).iter().map(|c| c.neg()).collect();
    out.extend(nb);
    Ok(out)
}

fn raw_sqrt<K: BaseField>(x: &[K], ch: &[&[K]], d: usize) -> Option<Vec<K>> {
    if d == 0 {
        return x[0].sqrt().map(|s| vec![s]);
    }
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    let r = ch[d - 1];
    let zeros = || vec![K::zero(); h];
    if is_zero_raw(b) {
        if is_zero_raw(a) {
            return Some(vec![K::zero(); x.len()]);
        }
        if let Some(s) = raw_sqrt(a, ch, d - 1) {
            let mut out = s;
            out.extend(zeros());
            return Some(out);
        }
        let ri = raw_inv(r, ch, d - 1).ok()?;
        let q = raw_mul(a, &ri, ch, d - 1);
        let y = raw_sqrt(&q, ch, d - 1)?;
        let mut out = zeros();
        out.extend(y);
        return Some(out);
    }
    // (x + y√r)² = a + b√r with x² = (a ± c)/2, c² = a² - b²r, y = b/(2x)
    let n = raw_norm(a, b, ch, d);
    let c = raw_sqrt(&n, ch, d - 1)?;
    let half = K::from_rational(&Rational::new(1.into(), 2.into()));
    for sign in [false, true] {
        let t = if sign { raw_sub(a, &c) } else { raw_add(a, &c) };
        let t: Vec<K> = t.iter().map(|v| v.mul(&half)).collect();
        if is_zero_raw(&t) {
            continue;
        }
        let Some(xs) = raw_sqrt(&t, ch, d - 1) else {
            continue;
        };
        let two_x: Vec<K> = xs.iter().map(|v| v.add(v)).collect();
        let Ok(inv2x) = raw_inv(&two_x, ch, d - 1) else {
            continue;
        };
        let ys = raw_mul(b, &inv2x, ch, d - 1);
        let mut cand = xs;
        cand.extend(ys);
        if raw_square(&cand, ch, d) == x {
            return Some(cand);
        }
    }
    None
}

impl<K: BaseField> Field for TowerElem<K> {
    fn zero() -> Self {
        Self::base(K::zero())
    }
    fn one() -> Self {
        Self::base(K::one())
    }
    fn is_zero(&self) -> bool {
        self.layer.is_none() && self.coeffs[0].is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        self.binary(o, |a, b, _, _| raw_add(a, b))
    }
    fn sub(&self, o: &Self) -> Self {
        self.binary(o, |a, b, _, _| raw_sub(a, b))
    }
    fn mul(&self, o: &Self) -> Self {
        if self.layer.is_none() && o.layer.is_none() {
            return Self::base(self.coeffs[0].mul(&o.coeffs[0]));
        }
        self.binary(o, raw_mul)
    }
    fn neg(&self) -> Self {
        TowerElem {
            layer: self.layer.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.depth();
        let out = raw_inv(&self.coeffs, &chain(&self.layer), d)?;
        Ok(Self::build(self.layer.clone(), out))
    }
    fn from_rational(q: &Rational) -> Self {
        Self::base(K::from_rational(q))
    }
    fn is_one(&self) -> bool {
        self.layer.is_none() && self.coeffs[0].is_one()
    }
    fn square(&self) -> Self {
        let d = self.depth();
        let out = raw_square(&self.coeffs, &chain(&self.layer), d);
        Self::build(self.layer.clone(), out)
    }
}

/// An append-only tower of quadratic extensions over `K`.
pub struct TowerField<K> {
    top: Option<Arc<Layer<K>>>,
    max_depth: usize,
}

impl<K> Clone for TowerField<K> {
    fn clone(&self) -> Self {
        TowerField {
            top: self.top.clone(),
            max_depth: self.max_depth,
        }
    }
}

impl<K: fmt::Debug + BaseField> fmt::Debug for TowerField<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.radicands()).finish()
    }
}

impl<K: BaseField> Default for TowerField<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: BaseField> TowerField<K> {
    pub fn new() -> Self {
        Self::with_max_depth(DEFAULT_MAX_DEPTH)
    }

    pub fn with_max_depth(max_depth: usize) -> Self {
        TowerField {
            top: None,
            max_depth,
        }
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    pub fn set_max_depth(&mut self, d: usize) {
        self.max_depth = d;
    }

    pub fn depth(&self) -> usize {
        layer_depth(&self.top)
    }

    /// Whether `e` is an element of this tower.
    pub fn contains(&self, e: &TowerElem<K>) -> bool {
        match (&self.top, &e.layer) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(t), Some(l)) => t.ancestor(l.depth).is_some_and(|a| Arc::ptr_eq(&a, l)),
        }
    }

    /// Whether this tower extends `other` (shares its layers as a prefix).
    pub fn extends(&self, other: &TowerField<K>) -> bool {
        match (&self.top, &other.top) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(t), Some(o)) => t.ancestor(o.depth).is_some_and(|a| Arc::ptr_eq(&a, o)),
        }
    }

    /// Layer radicands from the bottom up.
    pub fn radicands(&self) -> Vec<TowerElem<K>> {
        let mut out = Vec::new();
        let mut cur = self.top.as_deref();
        while let Some(l) = cur {
            out.push(l.radicand.clone());
            cur = l.parent.as_deref();
        }
        out.reverse();
        out
    }

    /// The adjoined root `√r_k` of layer `k` (1-based).
    pub fn radical(&self, k: usize) -> TowerElem<K> {
        let layer = self
            .top
            .as_ref()
            .and_then(|t| t.ancestor(k))
            .expect("layer index out of range");
        let mut coeffs = vec![K::zero(); 1 << k];
        coeffs[1 << (k - 1)] = K::one();
        TowerElem {
            layer: Some(layer),
            coeffs,
        }
    }

    /// Rebuilds an element from a coefficient vector of length `2^depth` with `depth <= self.depth()`.
    pub fn element(&self, coeffs: Vec<K>) -> Result<TowerElem<K>> {
        let n = coeffs.len();
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::Invalid("coefficient count must be a power of two".into()));
        }
        let d = n.trailing_zeros() as usize;
        if d > self.depth() {
            return Err(Error::Invalid("element deeper than its tower".into()));
        }
        let layer = if d == 0 {
            None
        } else {
            self.top.as_ref().and_then(|t| t.ancestor(d))
        };
        Ok(TowerElem::build(layer, coeffs))
    }

    /// Replays a recorded tower: radicand `k` is given by its coefficients over layers `0..k`.
    pub fn from_radicands(radicands: Vec<Vec<K>>, max_depth: usize) -> Result<Self> {
        let mut field = Self::with_max_depth(max_depth);
        for (k, coeffs) in radicands.into_iter().enumerate() {
            let r = field.element(coeffs)?;
            field.adjoin_sqrt(&r)?;
            if field.depth() != k + 1 {
                return Err(Error::Invalid(format!("radicand {} is already a square", k + 1)));
            }
        }
        Ok(field)
    }

    /// A square root of `r` inside the tower, with canonical sign.
    pub fn sqrt_in_tower(&self, r: &TowerElem<K>) -> Option<TowerElem<K>> {
        assert!(self.contains(r), "element not in this tower");
        let d = self.depth();
        let x = r.coeffs_at(d);
        let ch = chain(&self.top);
        let s = raw_sqrt(&x, &ch, d)?;
        let mut s = TowerElem::build(self.top.clone(), s);
        if !s.is_canonical_sign() {
            s = s.neg();
        }
        Some(s)
    }

    /// Returns `s` with `s² = r`, appending the layer `√r` when no root exists yet.
    pub fn adjoin_sqrt(&mut self, r: &TowerElem<K>) -> Result<TowerElem<K>> {
        if r.is_zero() {
            return Err(Error::ZeroRadicand);
        }
        if !self.contains(r) {
            return Err(Error::TowerMismatch);
        }
        if let Some(s) = self.sqrt_in_tower(r) {
            return Ok(s);
        }
        let d = self.depth();
        if d >= self.max_depth {
            return Err(Error::TowerDepthExceeded(self.max_depth));
        }
        let layer = Arc::new(Layer {
            depth: d + 1,
            radicand: r.clone(),
            padded: r.coeffs_at(d),
            parent: self.top.clone(),
        });
        self.top = Some(layer);
        Ok(self.radical(d + 1))
    }
}

impl TowerField<RatFn> {
    /// Specialization into a numeric tower at `point`.
    pub fn specializer(&self, point: BTreeMap<usize, Rational>) -> Result<Specializer> {
        let mut numeric = TowerField::<Rational>::with_max_depth(self.max_depth.max(self.depth()));
        let mut images: Vec<TowerElem<Rational>> = Vec::new();
        for r in self.radicands() {
            let v = specialize_with(&r, &point, &images)?;
            if v.is_zero() {
                return Err(Error::BranchCollapse);
            }
            images.push(numeric.adjoin_sqrt(&v)?);
        }
        Ok(Specializer {
            source: self.clone(),
            point,
            numeric,
            images,
        })
    }
}

fn specialize_with(
    e: &TowerElem<RatFn>,
    point: &BTreeMap<usize, Rational>,
    images: &[TowerElem<Rational>],
) -> Result<TowerElem<Rational>> {
    let mut leaf = |f: &RatFn| -> Result<TowerElem<Rational>> {
        Ok(TowerElem::base(f.evaluate(point)?))
    };
    e.fold(&mut leaf, images)
}

/// Ring homomorphism from a symbolic tower to a numeric one at a rational point.
#[derive(Clone)]
pub struct Specializer {
    source: TowerField<RatFn>,
    point: BTreeMap<usize, Rational>,
    numeric: TowerField<Rational>,
    images: Vec<TowerElem<Rational>>,
}

impl Specializer {
    pub fn point(&self) -> &BTreeMap<usize, Rational> {
        &self.point
    }

    pub fn numeric(&self) -> &TowerField<Rational> {
        &self.numeric
    }

    pub fn apply(&self, e: &TowerElem<RatFn>) -> Result<TowerElem<Rational>> {
        if !self.source.contains(e) {
            return Err(Error::TowerMismatch);
        }
        specialize_with(e, &self.point, &self.images)
    }
}

/// Convenience wrapper: specialize a single element of `field` at `point`.
pub fn specialize(
    field: &TowerField<RatFn>,
    e: &TowerElem<RatFn>,
    point: &BTreeMap<usize, Rational>,
) -> Result<(TowerField<Rational>, TowerElem<Rational>)> {
    let s = field.specializer(point.clone())?;
    let v = s.apply(e)?;
    Ok((s.numeric, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::{parse_ratfn, VarRegistry};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rational_square_roots() {
        let mut f = TowerField::<Rational>::new();
        let s = f.adjoin_sqrt(&TowerElem::base(q(9, 4))).unwrap();
        assert_eq!(s, TowerElem::base(q(3, 2)));
        assert_eq!(f.depth(), 0);
        let r2 = f.adjoin_sqrt(&TowerElem::base(q(2, 1))).unwrap();
        assert_eq!(f.depth(), 1);
        let x = TowerElem::one().add(&r2);
        let inv = x.inv().unwrap();
        assert_eq!(inv, r2.sub(&TowerElem::one()));
    }

    #[test]
    fn denested_root() {
        let mut f = TowerField::<Rational>::new();
        let r2 = f.adjoin_sqrt(&TowerElem::base(q(2, 1))).unwrap();
        // 3 + 2√2 = (1 + √2)²
        let t = TowerElem::from_int(3).add(&r2.add(&r2));
        let s = f.sqrt_in_tower(&t).unwrap();
        assert_eq!(s, TowerElem::one().add(&r2));
        assert_eq!(f.depth(), 1);
    }

    #[test]
    fn product_radical_reuse() {
        let reg = VarRegistry::from_names(["x1", "x2"]).unwrap();
        let p = |s: &str| TowerElem::base(parse_ratfn(s, &reg).unwrap());
        let mut f = TowerField::<RatFn>::new();
        let a = f.adjoin_sqrt(&p("x1")).unwrap();
        let b = f.adjoin_sqrt(&p("x2")).unwrap();
        let c = f.adjoin_sqrt(&p("x1*x2")).unwrap();
        assert_eq!(f.depth(), 2);
        assert_eq!(c, a.mul(&b));
        let d = f.adjoin_sqrt(&p("4*x1")).unwrap();
        assert_eq!(d, a.add(&a).add(&a).add(&a).mul(&TowerElem::from_rational(&q(1, 2))));
        assert!(f.sqrt_in_tower(&p("x1 + 1")).is_none());
    }

    #[test]
    fn specialization_collapses() {
        let reg = VarRegistry::from_names(["x1", "x2"]).unwrap();
        let p = |s: &str| TowerElem::base(parse_ratfn(s, &reg).unwrap());
        let mut f = TowerField::<RatFn>::new();
        let a = f.adjoin_sqrt(&p("x1")).unwrap();
        let point: BTreeMap<usize, Rational> = [(0, q(4, 1)), (1, q(3, 1))].into_iter().collect();
        let (nf, v) = specialize(&f, &a, &point).unwrap();
        assert_eq!(v, TowerElem::base(q(2, 1)));
        assert_eq!(nf.depth(), 0);
        let e = TowerElem::one().add(&a).mul(&TowerElem::one().sub(&a));
        let point: BTreeMap<usize, Rational> = [(0, q(7, 1))].into_iter().collect();
        let (_, v) = specialize(&f, &e, &point).unwrap();
        assert_eq!(v, TowerElem::base(q(-6, 1)));
    }
}
