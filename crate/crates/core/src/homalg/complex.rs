use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::Category;
use crate::error::{Error, Result};

/// A bounded complex `C^lo -> ... -> C^{lo + len - 1}`. Outside that range
/// the objects are zero. Zero objects at either end are trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex<C: Category> {
    cat: C,
    lo: i64,
    objs: Vec<C::Obj>,
    diffs: Vec<C::Mor>,
}

/// Components `f^i: A^i -> B^i`; missing degrees are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap<C: Category> {
    pub source: Complex<C>,
    pub target: Complex<C>,
    comps: BTreeMap<i64, C::Mor>,
}

impl<C: Category> Complex<C> {
    /// Objects `objs[k]` in degree `lo + k` and `diffs[k]: objs[k] -> objs[k+1]`.
    /// Fails unless every `d^{i+1} d^i` vanishes.
    pub fn new(cat: C, lo: i64, objs: Vec<C::Obj>, diffs: Vec<C::Mor>) -> Result<Self> {
        if diffs.len() + 1 != objs.len() && !(objs.is_empty() && diffs.is_empty()) {
            return Err(Error::Dimension(alloc::format!("{} objects need {} differentials", objs.len(), objs.len().saturating_sub(1))));
        }
        let c = Complex { cat, lo, objs, diffs };
        c.check()?;
        Ok(c.trimmed())
    }

    pub fn zero(cat: C) -> Self {
        Complex { cat, lo: 0, objs: Vec::new(), diffs: Vec::new() }
    }

    /// `a` placed in degree `deg`.
    pub fn concentrated(cat: C, a: C::Obj, deg: i64) -> Self {
        Complex { cat, lo: deg, objs: alloc::vec![a], diffs: Vec::new() }.trimmed()
    }

    /// Two-term complex `a --f--> b` with `a` in degree `deg`.
    pub fn two_term(cat: C, a: C::Obj, b: C::Obj, f: C::Mor, deg: i64) -> Self {
        Complex { cat, lo: deg, objs: alloc::vec![a, b], diffs: alloc::vec![f] }.trimmed()
    }

    /// Direct sum of objects with zero differentials.
    pub fn graded(cat: C, parts: &BTreeMap<i64, C::Obj>) -> Self {
        let mut out = Complex::zero(cat.clone());
        for (&d, a) in parts {
            out = out.direct_sum(&Complex::concentrated(cat.clone(), a.clone(), d));
        }
        out
    }

    pub fn unit(cat: C) -> Self {
        let u = cat.unit();
        Self::concentrated(cat, u, 0)
    }

    fn check(&self) -> Result<()> {
        for k in 0..self.diffs.len().saturating_sub(1) {
            let dd = self.cat.compose(&self.diffs[k + 1], &self.diffs[k]);
            if !self.cat.is_zero_morphism(&dd) {
                return Err(Error::NotAComplex(self.lo + k as i64));
            }
        }
        Ok(())
    }

    pub fn is_complex(&self) -> bool {
        self.check().is_ok()
    }

    fn trimmed(mut self) -> Self {
        while self.objs.last().is_some_and(|o| self.cat.is_zero_object(o)) {
            self.objs.pop();
            self.diffs.pop();
        }
        while self.objs.first().is_some_and(|o| self.cat.is_zero_object(o)) {
            self.objs.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        if self.objs.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
        self
    }

    pub fn category(&self) -> &C {
        &self.cat
    }

    pub fn is_zero(&self) -> bool {
        self.objs.is_empty()
    }

    /// Degrees carrying a (possibly) nonzero object, as an inclusive range.
    pub fn range(&self) -> Option<(i64, i64)> {
        if self.objs.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.objs.len() as i64 - 1))
        }
    }

    pub fn degrees(&self) -> Vec<i64> {
        (0..self.objs.len() as i64).map(|k| self.lo + k).collect()
    }

    pub fn obj(&self, i: i64) -> C::Obj {
        let k = i - self.lo;
        if k >= 0 && (k as usize) < self.objs.len() {
            self.objs[k as usize].clone()
        } else {
            self.cat.zero_object()
        }
    }

    /// `d^i: C^i -> C^{i+1}`.
    pub fn diff(&self, i: i64) -> C::Mor {
        let k = i - self.lo;
        if k >= 0 && (k as usize) < self.diffs.len() {
            self.diffs[k as usize].clone()
        } else {
            self.cat.zero_morphism(&self.obj(i), &self.obj(i + 1))
        }
    }

    /// `(C[n])^i = C^{i+n}`, differential `(-1)^n d`.
    pub fn shift(&self, n: i64) -> Self {
        let diffs = if n % 2 == 0 { self.diffs.clone() } else { self.diffs.iter().map(|d| self.cat.neg(d)).collect() };
        Complex { cat: self.cat.clone(), lo: self.lo - n, objs: self.objs.clone(), diffs }.trimmed()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (Some((a0, a1)), Some((b0, b1))) = (self.range(), other.range()) else {
            return if self.is_zero() { other.clone() } else { self.clone() };
        };
        let (lo, hi) = (a0.min(b0), a1.max(b1));
        let cat = &self.cat;
        let objs: Vec<C::Obj> = (lo..=hi).map(|i| cat.direct_sum(&[self.obj(i), other.obj(i)])).collect();
        let diffs = (lo..hi)
            .map(|i| {
                let src = [self.obj(i), other.obj(i)];
                let tgt = [self.obj(i + 1), other.obj(i + 1)];
                let (d1, d2) = (self.diff(i), other.diff(i));
                cat.block(&src, &tgt, &|r, c| match (r, c) {
                    (0, 0) => Some(d1.clone()),
                    (1, 1) => Some(d2.clone()),
                    _ => None,
                })
            })
            .collect();
        Complex { cat: cat.clone(), lo, objs, diffs }.trimmed()
    }

    /// Total complex of the componentwise tensor product:
    /// `(C ⊗ D)^n = ⊕_{i+j=n} C^i ⊗ D^j`, `d = d_C ⊗ 1 + (-1)^i 1 ⊗ d_D`.
    pub fn tensor(&self, other: &Self) -> Self {
        let (Some((a0, a1)), Some((b0, b1))) = (self.range(), other.range()) else {
            return Complex::zero(self.cat.clone());
        };
        let cat = &self.cat;
        // Summands of degree n, indexed by i ascending.
        let parts = |n: i64| -> Vec<(i64, C::Obj)> {
            (a0..=a1).filter(|i| (b0..=b1).contains(&(n - i))).map(|i| (i, cat.tensor(&self.obj(i), &other.obj(n - i)))).collect()
        };
        let (lo, hi) = (a0 + b0, a1 + b1);
        let objs: Vec<C::Obj> = (lo..=hi).map(|n| cat.direct_sum(&parts(n).into_iter().map(|p| p.1).collect::<Vec<_>>())).collect();
        let diffs = (lo..hi)
            .map(|n| {
                let src = parts(n);
                let tgt = parts(n + 1);
                let so: Vec<C::Obj> = src.iter().map(|p| p.1.clone()).collect();
                let to: Vec<C::Obj> = tgt.iter().map(|p| p.1.clone()).collect();
                cat.block(&so, &to, &|r, c| {
                    let i = src[c].0;
                    let j = n - i;
                    let ti = tgt[r].0;
                    if ti == i + 1 {
                        Some(cat.tensor_morphisms(&self.diff(i), &cat.identity(&other.obj(j))))
                    } else if ti == i {
                        let m = cat.tensor_morphisms(&cat.identity(&self.obj(i)), &other.diff(j));
                        Some(if i.rem_euclid(2) == 0 { m } else { cat.neg(&m) })
                    } else {
                        None
                    }
                })
            })
            .collect();
        Complex { cat: cat.clone(), lo, objs, diffs }.trimmed()
    }

    pub fn identity_map(&self) -> ChainMap<C> {
        let comps = self.degrees().into_iter().map(|i| (i, self.cat.identity(&self.obj(i)))).collect();
        ChainMap { source: self.clone(), target: self.clone(), comps }
    }

    pub fn zero_map(&self, target: &Self) -> ChainMap<C> {
        ChainMap { source: self.clone(), target: target.clone(), comps: BTreeMap::new() }
    }

    /// Same complex with each object and differential transformed.
    pub fn map_components<D: Category>(
        &self,
        cat: D,
        obj: impl Fn(&C::Obj) -> D::Obj,
        mor: impl Fn(&C::Mor) -> D::Mor,
    ) -> Result<Complex<D>> {
        Complex::new(cat, self.lo, self.objs.iter().map(obj).collect(), self.diffs.iter().map(mor).collect())
    }
}

impl<C: Category> ChainMap<C> {
    /// Fails unless `f^{i+1} d_A^i = d_B^i f^i` in every degree.
    pub fn new(source: Complex<C>, target: Complex<C>, comps: BTreeMap<i64, C::Mor>) -> Result<Self> {
        let f = ChainMap { source, target, comps };
        f.check()?;
        Ok(f)
    }

    fn check(&self) -> Result<()> {
        let cat = self.source.category().clone();
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for r in [self.source.range(), self.target.range()].into_iter().flatten() {
            lo = lo.min(r.0);
            hi = hi.max(r.1);
        }
        for i in lo.saturating_sub(1)..=hi {
            let left = cat.compose(&self.comp(i + 1), &self.source.diff(i));
            let right = cat.compose(&self.target.diff(i), &self.comp(i));
            if !cat.is_zero_morphism(&cat.add(&left, &cat.neg(&right))) {
                return Err(Error::NotAChainMap(i));
            }
        }
        Ok(())
    }

    pub fn comp(&self, i: i64) -> C::Mor {
        match self.comps.get(&i) {
            Some(m) => m.clone(),
            None => self.source.category().zero_morphism(&self.source.obj(i), &self.target.obj(i)),
        }
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &ChainMap<C>) -> ChainMap<C> {
        let cat = self.source.category();
        let mut comps = BTreeMap::new();
        for i in g.source.degrees() {
            comps.insert(i, cat.compose(&self.comp(i), &g.comp(i)));
        }
        ChainMap { source: g.source.clone(), target: self.target.clone(), comps }
    }

    /// `cone(f)^i = B^i ⊕ A^{i+1}`, `d = [[d_B, f^{i+1}], [0, -d_A]]`,
    /// together with `B -> cone(f)` and `cone(f) -> A[1]`.
    pub fn cone(&self) -> (Complex<C>, ChainMap<C>, ChainMap<C>) {
        let cat = self.source.category().clone();
        let (a, b) = (&self.source, &self.target);
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        if let Some((l, h)) = b.range() {
            lo = lo.min(l);
            hi = hi.max(h);
        }
        if let Some((l, h)) = a.range() {
            lo = lo.min(l - 1);
            hi = hi.max(h - 1);
        }
        if lo > hi {
            let z = Complex::zero(cat);
            return (z.clone(), b.zero_map(&z), z.zero_map(&a.shift(1)));
        }
        let pair = |i: i64| [b.obj(i), a.obj(i + 1)];
        let objs: Vec<C::Obj> = (lo..=hi).map(|i| cat.direct_sum(&pair(i))).collect();
        let diffs = (lo..hi)
            .map(|i| {
                let (db, f, da) = (b.diff(i), self.comp(i + 1), cat.neg(&a.diff(i + 1)));
                cat.block(&pair(i), &pair(i + 1), &|r, c| match (r, c) {
                    (0, 0) => Some(db.clone()),
                    (0, 1) => Some(f.clone()),
                    (1, 1) => Some(da.clone()),
                    _ => None,
                })
            })
            .collect();
        let raw = Complex { cat: cat.clone(), lo, objs, diffs };
        let mut incl = BTreeMap::new();
        let mut proj = BTreeMap::new();
        for i in lo..=hi {
            let p = pair(i);
            incl.insert(i, cat.block(&[b.obj(i)], &p, &|r, _| (r == 0).then(|| cat.identity(&b.obj(i)))));
            proj.insert(i, cat.block(&p, &[a.obj(i + 1)], &|_, c| (c == 1).then(|| cat.identity(&a.obj(i + 1)))));
        }
        // Trimming only drops zero objects, so the components stay valid.
        let cone = raw.trimmed();
        let incl = ChainMap { source: b.clone(), target: cone.clone(), comps: restrict(incl, &cone) };
        let proj = ChainMap { source: cone.clone(), target: a.shift(1), comps: restrict(proj, &cone) };
        (cone, incl, proj)
    }

    /// Is every component zero?
    pub fn is_zero(&self) -> bool {
        let cat = self.source.category();
        self.comps.values().all(|m| cat.is_zero_morphism(m))
    }
}

/// Drop components at degrees where the trimmed cone has no object.
fn restrict<C: Category>(comps: BTreeMap<i64, C::Mor>, cone: &Complex<C>) -> BTreeMap<i64, C::Mor> {
    let keep = cone.range();
    comps.into_iter().filter(|(i, _)| keep.is_some_and(|(l, h)| *i >= l && *i <= h)).collect()
}
