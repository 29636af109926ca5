//! Thick closure inside a pool of indecomposables, and roofs in Verdier
//! quotients.
//!
//! Over a hereditary base every object of `D^b` is a sum of shifted
//! representations and `Hom(M, N[s])` vanishes unless `s ∈ {0, 1}`. Cones of
//! such morphisms have closed forms: `cone(f) ≅ coker f ⊕ (ker f)[1]` for a
//! map of representations and `cone(ξ) ≅ E[1]` for an extension class with
//! middle term `E`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use rand::Rng;

use super::{Complex, RepCategory};
use crate::error::Result;
use crate::linalg::{Field, Matrix, Scalar};
use crate::quiver::{decompose, ext1, hom_space, is_isomorphic, Ext1, Rep, RepMorphism};

/// A morphism `M -> N[s]` in the derived category of a hereditary base.
#[derive(Clone, Debug)]
pub enum ShiftedMorphism {
    /// `s = 0`: a map of representations.
    Hom(RepMorphism),
    /// `s = 1`: an extension class, given by a cocycle (one matrix per arrow).
    Ext(Vec<Matrix>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureBudget {
    /// Shifts `s` for which morphisms `M -> N[s]` are enumerated.
    pub window: (i64, i64),
    pub rounds: usize,
    /// Hom spaces with more elements than this are sampled by basis only.
    pub max_elements: u64,
}

impl Default for ClosureBudget {
    fn default() -> Self {
        ClosureBudget { window: (-2, 2), rounds: 32, max_elements: 1 << 12 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureResult {
    pub members: BTreeSet<usize>,
    /// A full round added nothing and every morphism was enumerated.
    pub fixed_point: bool,
    pub rounds: usize,
}

fn kernel_rep(src: &Rep, f: &RepMorphism) -> Result<Rep> {
    src.subrep(&f.comps.iter().map(|c| c.kernel_matrix()).collect::<Vec<_>>())
}

fn cokernel_rep(tgt: &Rep, f: &RepMorphism) -> Result<Rep> {
    Ok(tgt.quotient(&f.comps.iter().map(|c| c.image_matrix()).collect::<Vec<_>>())?.0)
}

/// Index of the pool member isomorphic to `r`, if any.
fn pool_index(pool: &[Rep], r: &Rep) -> Result<Option<usize>> {
    for (i, p) in pool.iter().enumerate() {
        if p.dims() == r.dims() && is_isomorphic(p, r)?.is_iso() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Indecomposable summands of `cone(M -> N[s])` as `(pool index, shift)`;
/// `None` in the index marks a summand outside the pool.
pub fn cone_summands(pool: &[Rep], m: &Rep, n: &Rep, f: &ShiftedMorphism) -> Result<Vec<(Option<usize>, i64)>> {
    let mut pieces: Vec<(Rep, i64)> = Vec::new();
    match f {
        ShiftedMorphism::Hom(f) => {
            pieces.push((cokernel_rep(n, f)?, 0));
            pieces.push((kernel_rep(m, f)?, 1));
        }
        ShiftedMorphism::Ext(cocycle) => pieces.push((Ext1::extension(m, n, cocycle)?, 1)),
    }
    let mut out = Vec::new();
    for (rep, shift) in pieces {
        if rep.is_zero() {
            continue;
        }
        for s in decompose(&rep)?.summands {
            out.push((pool_index(pool, &s)?, shift));
        }
    }
    Ok(out)
}

/// All elements of the span of `basis` (combined by `combine`), or just the
/// basis when the span is too large or the field infinite. The flag reports
/// whether the enumeration was exhaustive.
fn span_elements<T: Clone>(field: Field, basis: &[T], limit: u64, combine: impl Fn(&[Scalar]) -> T) -> (Vec<T>, bool) {
    let d = basis.len() as u32;
    match (field.order(), field.elements()) {
        (Some(q), Some(elems)) if (q as u128).pow(d) <= limit as u128 => {
            let mut out = Vec::new();
            let mut digits = alloc::vec![0usize; basis.len()];
            loop {
                let coeffs: Vec<Scalar> = digits.iter().map(|&i| elems[i].clone()).collect();
                out.push(combine(&coeffs));
                let mut k = 0;
                loop {
                    if k == digits.len() {
                        return (out, true);
                    }
                    digits[k] += 1;
                    if digits[k] < elems.len() {
                        break;
                    }
                    digits[k] = 0;
                    k += 1;
                }
            }
        }
        _ => (basis.to_vec(), false),
    }
}

/// `Σ c_k ξ_k` for cocycles `ξ_k: M -> N[1]`.
fn combine_cocycles(f: Field, basis: &[Vec<Matrix>], coeffs: &[Scalar], m: &Rep, n: &Rep) -> Vec<Matrix> {
    m.quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            let mut acc = Matrix::zeros(f, n.dim(arrow.target), m.dim(arrow.source));
            for (b, c) in basis.iter().zip(coeffs) {
                acc = acc.add(&b[a].scale(c));
            }
            acc
        })
        .collect()
}

/// Every morphism `M -> N[s]` for `s` in the window (hereditary: only
/// `s = 0, 1` contribute).
fn shifted_morphisms(m: &Rep, n: &Rep, budget: &ClosureBudget) -> Result<(Vec<ShiftedMorphism>, bool)> {
    let f = m.field();
    let mut out = Vec::new();
    let mut exhaustive = true;
    if budget.window.0 <= 0 && 0 <= budget.window.1 {
        let basis = hom_space(m, n)?;
        let (els, full) = span_elements(f, &basis, budget.max_elements, |c| RepMorphism::combine(f, &basis, c, m, n));
        exhaustive &= full;
        out.extend(els.into_iter().map(ShiftedMorphism::Hom));
    }
    if budget.window.0 <= 1 && 1 <= budget.window.1 {
        let e = ext1(m, n)?;
        let (els, full) = span_elements(f, &e.basis, budget.max_elements, |c| combine_cocycles(f, &e.basis, c, m, n));
        exhaustive &= full;
        out.extend(els.into_iter().map(ShiftedMorphism::Ext));
    }
    Ok((out, exhaustive))
}

/// Cone summands for every ordered pair of pool members, computed on demand
/// and shared between closures.
#[derive(Clone, Debug)]
pub struct ConeTable {
    pool: Vec<Rep>,
    budget: ClosureBudget,
    entries: BTreeMap<(usize, usize), (BTreeSet<usize>, bool)>,
}

impl ConeTable {
    pub fn new(pool: Vec<Rep>, budget: ClosureBudget) -> Self {
        ConeTable { pool, budget, entries: BTreeMap::new() }
    }

    pub fn pool(&self) -> &[Rep] {
        &self.pool
    }

    /// Pool members among the cone summands of all `pool[i] -> pool[j][s]`,
    /// and whether that list is exhaustive.
    pub fn entry(&mut self, i: usize, j: usize) -> Result<(BTreeSet<usize>, bool)> {
        if let Some(e) = self.entries.get(&(i, j)) {
            return Ok(e.clone());
        }
        let (morphs, mut full) = shifted_morphisms(&self.pool[i], &self.pool[j], &self.budget)?;
        let mut found = BTreeSet::new();
        for f in &morphs {
            for (idx, _) in cone_summands(&self.pool, &self.pool[i], &self.pool[j], f)? {
                match idx {
                    Some(k) => {
                        found.insert(k);
                    }
                    None => full = false,
                }
            }
        }
        self.entries.insert((i, j), (found.clone(), full));
        Ok((found, full))
    }

    /// Close `members` under cones until nothing changes or the round budget
    /// runs out.
    pub fn closure(&mut self, generators: &BTreeSet<usize>) -> Result<ClosureResult> {
        let mut members = generators.clone();
        let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut exhaustive = true;
        for round in 1..=self.budget.rounds {
            let current: Vec<usize> = members.iter().copied().collect();
            let mut added = BTreeSet::new();
            for &i in &current {
                for &j in &current {
                    if !done.insert((i, j)) {
                        continue;
                    }
                    let (found, full) = self.entry(i, j)?;
                    exhaustive &= full;
                    added.extend(found.into_iter().filter(|k| !members.contains(k)));
                }
            }
            if added.is_empty() {
                return Ok(ClosureResult { members, fixed_point: exhaustive, rounds: round });
            }
            members.extend(added);
        }
        Ok(ClosureResult { members, fixed_point: false, rounds: self.budget.rounds })
    }
}

/// Smallest subset of `pool` containing `generators` and closed under
/// shifts, summands and cones of morphisms between members.
pub fn thick_closure(pool: &[Rep], generators: &[usize], budget: &ClosureBudget) -> Result<ClosureResult> {
    ConeTable::new(pool.to_vec(), *budget).closure(&generators.iter().copied().collect())
}

/// A roof `x <-s- w -g-> y` whose denominator `s` has its cone in the ideal.
#[derive(Clone, Debug)]
pub struct Roof {
    pub apex: Rep,
    pub denominator: RepMorphism,
    pub numerator: RepMorphism,
}

#[derive(Clone, Debug)]
pub struct QuotientHom {
    pub roofs: Vec<Roof>,
    /// Certified lower bound for `dim Hom_{T/I}(x, y)`.
    pub lower_bound: usize,
    /// `true` only when the bound is known to be the dimension (empty ideal).
    pub exact: bool,
    /// Vertices whose evaluation functors kill the ideal; roofs are told
    /// apart by their images under these.
    pub detecting: Vec<usize>,
}

fn all_in_pool(pool: &[Rep], r: &Rep) -> Result<bool> {
    if r.is_zero() {
        return Ok(true);
    }
    for s in decompose(r)?.summands {
        if pool_index(pool, &s)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Roofs `x <- w -> y` for the Verdier quotient by the thick ideal spanned by
/// `ideal`. Denominators come in two kinds, both with cone in the ideal:
/// inclusions `ker h ⊆ x` for `h: x -> i` with cokernel in the ideal, and
/// projections `E -> x` from extensions of `x` by an ideal member. At most
/// `budget` morphisms of each kind are tried per ideal member. Independence
/// of the images `g_v s_v^{-1}` under evaluation at vertices that kill the
/// ideal certifies the lower bound.
pub fn quotient_hom_bounded(x: &Rep, y: &Rep, ideal: &[Rep], budget: usize) -> Result<QuotientHom> {
    let f = x.field();
    let n = x.quiver().num_vertices();
    if ideal.iter().all(|r| r.is_zero()) {
        let roofs: Vec<Roof> = hom_space(x, y)?
            .into_iter()
            .map(|g| Roof { apex: x.clone(), denominator: RepMorphism::identity(x), numerator: g })
            .collect();
        return Ok(QuotientHom { lower_bound: roofs.len(), roofs, exact: true, detecting: (0..n).collect() });
    }
    let detecting: Vec<usize> = (0..n).filter(|&v| ideal.iter().all(|r| r.dim(v) == 0)).collect();
    let mut denominators: Vec<(Rep, RepMorphism)> = alloc::vec![(x.clone(), RepMorphism::identity(x))];
    for i in ideal {
        let basis = hom_space(x, i)?;
        let (hs, _) = span_elements(f, &basis, budget as u64, |c| RepMorphism::combine(f, &basis, c, x, i));
        for h in hs.into_iter().take(budget) {
            let bases: Vec<Matrix> = h.comps.iter().map(|c| c.kernel_matrix()).collect();
            let w = x.subrep(&bases)?;
            if w.total_dim() == x.total_dim() || !all_in_pool(ideal, &x.quotient(&bases)?.0)? {
                continue;
            }
            let s = RepMorphism { comps: bases };
            if !denominators.iter().any(|(a, d)| *a == w && *d == s) {
                denominators.push((w, s));
            }
        }
        let e = ext1(x, i)?;
        let (classes, _) = span_elements(f, &e.basis, budget as u64, |c| combine_cocycles(f, &e.basis, c, x, i));
        for xi in classes.into_iter().take(budget) {
            if xi.iter().all(|m| m.is_zero()) {
                continue;
            }
            let w = Ext1::extension(x, i, &xi)?;
            let s = RepMorphism {
                comps: (0..n).map(|v| Matrix::zeros(f, x.dim(v), i.dim(v)).hstack(&Matrix::identity(f, x.dim(v)))).collect(),
            };
            denominators.push((w, s));
        }
    }
    let mut roofs = Vec::new();
    let mut images: Vec<Vec<Scalar>> = Vec::new();
    for (w, s) in denominators {
        for g in hom_space(&w, y)? {
            let mut img = Vec::new();
            for &v in &detecting {
                let inv = s.comps[v].inverse().expect("denominator is invertible where the ideal vanishes");
                img.extend(g.comps[v].mul(&inv).entries().iter().cloned());
            }
            images.push(img);
            roofs.push(Roof { apex: w.clone(), denominator: s.clone(), numerator: g });
        }
    }
    let len: usize = detecting.iter().map(|&v| x.dim(v) * y.dim(v)).sum();
    let lower_bound = crate::linalg::rank_of_vectors(f, len, &images);
    Ok(QuotientHom { roofs, lower_bound, exact: false, detecting })
}

/// A random complex built from shifted two-term pieces `X -f-> Y` with
/// random representations and random `f ∈ Hom(X, Y)`.
pub fn random_complex<R: Rng + ?Sized>(cat: &RepCategory, rng: &mut R, pieces: usize) -> Complex<RepCategory> {
    let n = cat.quiver.num_vertices();
    let f = cat.field;
    let mut out = Complex::zero(cat.clone());
    for _ in 0..rng.gen_range(1..=pieces.max(1)) {
        let dx: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        let dy: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        let x = Rep::random(cat.quiver.clone(), f, dx, rng);
        let y = Rep::random(cat.quiver.clone(), f, dy, rng);
        let basis = hom_space(&x, &y).expect("same category");
        let coeffs: Vec<Scalar> = basis.iter().map(|_| f.random(rng)).collect();
        let map = RepMorphism::combine(f, &basis, &coeffs, &x, &y);
        let deg = rng.gen_range(-1..=1);
        out = out.direct_sum(&Complex::two_term(cat.clone(), x, y, map, deg));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{list_indecomposables, Quiver};
    use alloc::sync::Arc;

    const F2: Field = Field::Prime(2);

    fn pool(q: Quiver) -> Vec<Rep> {
        list_indecomposables(Arc::new(q), F2, None).unwrap().reps
    }

    #[test]
    fn closure_on_a2() {
        // pool order: S1, S2, P1
        let p = pool(Quiver::linear(2));
        let b = ClosureBudget::default();
        let empty = thick_closure(&p, &[], &b).unwrap();
        assert!(empty.members.is_empty() && empty.fixed_point);
        let simples = thick_closure(&p, &[0, 1], &b).unwrap();
        assert_eq!(simples.members, BTreeSet::from([0, 1, 2]));
        assert!(simples.fixed_point);
        // P1 is exceptional: its thick closure is itself.
        assert_eq!(thick_closure(&p, &[2], &b).unwrap().members, BTreeSet::from([2]));
        // S1 and P1 give S2 as the kernel of P1 -> S1.
        assert_eq!(thick_closure(&p, &[0, 2], &b).unwrap().members, BTreeSet::from([0, 1, 2]));
    }

    #[test]
    fn closure_is_idempotent_and_monotone() {
        let p = pool(Quiver::linear(3));
        let b = ClosureBudget::default();
        for mask in 0u32..(1 << p.len()) {
            let gens: Vec<usize> = (0..p.len()).filter(|i| mask & (1 << i) != 0).collect();
            let c = thick_closure(&p, &gens, &b).unwrap();
            assert!(c.fixed_point);
            let again: Vec<usize> = c.members.iter().copied().collect();
            assert_eq!(thick_closure(&p, &again, &b).unwrap().members, c.members);
            for extra in 0..p.len() {
                let mut more = gens.clone();
                more.push(extra);
                assert!(thick_closure(&p, &more, &b).unwrap().members.is_superset(&c.members));
            }
        }
    }

    #[test]
    fn ext_cone_gives_projective() {
        let p = pool(Quiver::linear(2));
        let e = ext1(&p[0], &p[1]).unwrap();
        let s = cone_summands(&p, &p[0], &p[1], &ShiftedMorphism::Ext(e.basis[0].clone())).unwrap();
        assert_eq!(s, alloc::vec![(Some(2), 1)]);
    }

    #[test]
    fn quotient_roofs() {
        let q = Arc::new(Quiver::linear(2));
        let unit = Rep::unit(q.clone(), F2);
        let s2 = Rep::simple(q.clone(), F2, 1);
        let exact = quotient_hom_bounded(&unit, &unit, &[], 16).unwrap();
        assert!(exact.exact);
        assert_eq!(exact.lower_bound, 1);
        let r = quotient_hom_bounded(&unit, &unit, core::slice::from_ref(&s2), 16).unwrap();
        assert!(!r.exact);
        assert_eq!(r.lower_bound, 1);
        assert_eq!(r.detecting, alloc::vec![0]);
        // P1 -> S1 becomes invertible once S2 = ker is killed.
        let s1 = Rep::simple(q.clone(), F2, 0);
        let r = quotient_hom_bounded(&s1, &unit, &[s2], 16).unwrap();
        assert_eq!(r.lower_bound, 1);
    }
}
