//! Field endomorphisms of a radical tower over `Q(x1, ..., xm)` given on generators.
//!
//! A map stores the image of each moved variable. Radicals are extended by
//! the branch rule `√r ↦ adjoin_sqrt(φ(r))`, memoized per layer, which may
//! append layers to the tower being mapped into.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::ratfunc::{RatFn, Substitution, VarRegistry};
use crate::tower::{TowerElem, TowerField};

pub type Elem = TowerElem<RatFn>;
pub type Tower = TowerField<RatFn>;

#[derive(Clone)]
pub struct FieldMap {
    subst: Substitution,
    /// Tower whose first `radical_images.len()` layers have memoized images.
    memo_field: Tower,
    radical_images: Vec<Elem>,
}

impl core::fmt::Debug for FieldMap {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FieldMap")
            .field("images", self.subst.images())
            .field("radical_images", &self.radical_images.len())
            .finish()
    }
}

impl FieldMap {
    pub fn identity() -> Self {
        Self::from_images(BTreeMap::new())
    }

    /// Substitution map; every variable in an image must be registered in `reg`.
    pub fn new(reg: &VarRegistry, images: BTreeMap<usize, RatFn>) -> Result<Self> {
        for (&v, f) in &images {
            if v >= reg.len() || f.vars().iter().any(|&w| w >= reg.len()) {
                return Err(Error::Invalid("image uses an unregistered variable".into()));
            }
        }
        Ok(Self::from_images(images))
    }

    fn from_images(mut images: BTreeMap<usize, RatFn>) -> Self {
        images.retain(|&v, f| *f != RatFn::var(v));
        FieldMap {
            subst: Substitution::new(images).expect("images are canonical"),
            memo_field: Tower::new(),
            radical_images: Vec::new(),
        }
    }

    pub fn images(&self) -> &BTreeMap<usize, RatFn> {
        self.subst.images()
    }

    pub fn image_of_var(&self, v: usize) -> RatFn {
        self.images().get(&v).cloned().unwrap_or_else(|| RatFn::var(v))
    }

    pub fn is_identity_on_generators(&self) -> bool {
        self.images().is_empty()
    }

    /// Memoized images of the radicals `√r_1, √r_2, ...`, bottom up.
    pub fn radical_images(&self) -> &[Elem] {
        &self.radical_images
    }

    /// Adds generator images; memoized radical images stay valid as long as
    /// the new generators do not occur in the tower so far.
    pub fn extend(&mut self, more: BTreeMap<usize, RatFn>) {
        let mut images = self.images().clone();
        images.extend(more);
        images.retain(|&v, f| *f != RatFn::var(v));
        self.subst = Substitution::new(images).expect("images are canonical");
    }

    /// Whether the generator substitution is an affine automorphism of the polynomial ring.
    pub fn is_ring_automorphism(&self) -> bool {
        self.subst.is_ring_automorphism()
    }

    pub fn apply_base(&self, f: &RatFn) -> Result<RatFn> {
        if self.images().is_empty() {
            return Ok(f.clone());
        }
        Ok(self.subst.apply(f)?)
    }

    fn ensure_radicals(&mut self, field: &mut Tower, depth: usize) -> Result<()> {
        if !field.extends(&self.memo_field) {
            self.radical_images.clear();
            self.memo_field = Tower::new();
        }
        while self.radical_images.len() < depth {
            let k = self.radical_images.len();
            let r = field.radicands()[k].clone();
            let img = self.fold(&r)?;
            let s = field.adjoin_sqrt(&img)?;
            self.radical_images.push(s);
            self.memo_field = field.clone();
        }
        Ok(())
    }

    fn fold(&self, e: &Elem) -> Result<Elem> {
        let mut leaf = |f: &RatFn| -> Result<Elem> { Ok(TowerElem::base(self.apply_base(f)?)) };
        e.fold(&mut leaf, &self.radical_images)
    }

    /// Image of `e`, which must lie in `field`; may grow `field`.
    pub fn apply(&mut self, field: &mut Tower, e: &Elem) -> Result<Elem> {
        if !field.contains(e) {
            return Err(Error::TowerMismatch);
        }
        self.ensure_radicals(field, e.depth())?;
        self.fold(e)
    }

    pub fn apply_to_matrix(&mut self, field: &mut Tower, m: &Mat<Elem>) -> Result<Mat<Elem>> {
        let d = m.entries().iter().map(|e| e.depth()).max().unwrap_or(0);
        for e in m.entries() {
            if !field.contains(e) {
                return Err(Error::TowerMismatch);
            }
        }
        self.ensure_radicals(field, d)?;
        m.try_map(|e| self.fold(e))
    }

    /// Composite substitution: substitute `self`'s images, then `first`'s.
    ///
    /// As ring maps this is `f ↦ first(self(f))`, so `x1 ↦ x1 + 1` composed
    /// with `x1 ↦ 2 x1` sends `x1` to `2 x1 + 1`. Radical images are
    /// recomputed on demand.
    pub fn compose(&self, first: &FieldMap) -> Result<FieldMap> {
        let mut images = BTreeMap::new();
        for &v in first.images().keys().chain(self.images().keys()) {
            images.insert(v, first.apply_base(&self.image_of_var(v))?);
        }
        Ok(Self::from_images(images))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::parse_ratfn;
    use crate::field::Field;

    #[test]
    fn compose_order() {
        let reg = VarRegistry::from_names(["x1"]).unwrap();
        let p = |s| parse_ratfn(s, &reg).unwrap();
        let shift = FieldMap::new(&reg, [(0, p("x1 + 1"))].into_iter().collect()).unwrap();
        let dbl = FieldMap::new(&reg, [(0, p("2*x1"))].into_iter().collect()).unwrap();
        let c = shift.compose(&dbl).unwrap();
        assert_eq!(c.image_of_var(0), p("2*x1 + 1"));
        let neg = FieldMap::new(&reg, [(0, p("-x1"))].into_iter().collect()).unwrap();
        assert!(neg.compose(&neg).unwrap().is_identity_on_generators());
    }

    #[test]
    fn branch_rule() {
        let reg = VarRegistry::from_names(["x1", "x2"]).unwrap();
        let p = |s| TowerElem::base(parse_ratfn(s, &reg).unwrap());
        let mut f = Tower::new();
        let s = f.adjoin_sqrt(&p("x1^2 + 1")).unwrap();
        let mut neg = FieldMap::new(&reg, [(0, parse_ratfn("-x1", &reg).unwrap())].into_iter().collect()).unwrap();
        assert_eq!(neg.apply(&mut f, &s).unwrap(), s);
        assert_eq!(f.depth(), 1);

        let mut g = Tower::new();
        let r1 = g.adjoin_sqrt(&p("x1")).unwrap();
        let mut swap = FieldMap::new(&reg, [(0, parse_ratfn("x2", &reg).unwrap())].into_iter().collect()).unwrap();
        let img = swap.apply(&mut g, &r1).unwrap();
        assert_eq!(g.depth(), 2);
        assert_eq!(img.square(), p("x2"));
    }
}
