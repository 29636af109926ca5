use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{open_basic, support, Graded, OpenSet, QuiverInstance, RingInstance, TensorInstance};
use crate::error::{Error, Result};
use crate::homalg::{cohomology, Complex, RepCategory};
use crate::quiver::{is_isomorphic, RepMorphism};
use crate::ringcat::{FiniteRing, FreeModules, RingElem, RingMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GammaFunctor {
    Identity,
    /// Restriction to the full subquiver on these vertices.
    SubquiverRestriction { keep: Vec<usize> },
    /// Base change along a surjection `R -> target`.
    RingQuotient { target: FiniteRing },
    /// `a ↦ a ⊕ a`: exact, but not a tensor functor.
    Doubling,
}

/// `γ: |Sp T'| -> |Sp T|`, `[F'] ↦ [F' ∘ g]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gamma {
    /// `map[i]` is the source point equal to `F'_i ∘ g`.
    pub map: Vec<usize>,
    pub source_labels: Vec<String>,
    pub target_labels: Vec<String>,
    /// `γ^{-1}(U_a) = U_{g(a)}` for every pool member `a`.
    pub continuous: bool,
    /// Objects on which the identification `F' ∘ g = F` was checked.
    pub objects_checked: usize,
}

fn convolve(a: &Graded, b: &Graded) -> Graded {
    let mut out = Graded::new();
    for (i, x) in a {
        for (j, y) in b {
            *out.entry(i + j).or_insert(0) += x * y;
        }
    }
    out.retain(|_, n| *n > 0);
    out
}

/// Compute `γ` for a functor `g` given on objects. `g` is first checked to be
/// a tensor functor on evaluations: `F'(g(1)) = k` in degree 0 and
/// `F'(g(a ⊗ b)) = F'(g(a) ⊗ g(b))` at every target point, over pool pairs
/// and `samples` random pairs.
pub fn gamma<I: TensorInstance, J: TensorInstance>(
    source: &I,
    target: &J,
    g: &dyn Fn(&I::Obj) -> Result<J::Obj>,
    samples: usize,
    seed: u64,
) -> Result<Gamma> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut objects: Vec<I::Obj> = source.pool().objects.clone();
    objects.push(source.unit());
    for _ in 0..samples {
        objects.push(source.sample_object(&mut rng));
    }
    let tpts = target.points().len();
    let gu = g(&source.unit())?;
    for p in 0..tpts {
        if target.evaluate(p, &gu)? != Graded::from([(0, 1)]) {
            return Err(Error::NotATensorFunctor(alloc::format!("g(1) is not the unit at {}", target.points()[p].label)));
        }
    }
    let images: Vec<J::Obj> = objects.iter().map(g).collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..objects.len()).flat_map(|i| (0..objects.len()).map(move |j| (i, j))).collect();
    for &(i, j) in pairs.iter().take(4 * objects.len()) {
        let lhs = g(&source.tensor(&objects[i], &objects[j]))?;
        let rhs = target.tensor(&images[i], &images[j]);
        for p in 0..tpts {
            if target.evaluate(p, &lhs)? != target.evaluate(p, &rhs)? {
                return Err(Error::NotATensorFunctor(alloc::format!("g(a ⊗ b) and g(a) ⊗ g(b) differ at {}", target.points()[p].label)));
            }
        }
    }
    let mut map = Vec::with_capacity(tpts);
    for p in 0..tpts {
        let composite: Vec<Graded> = images.iter().map(|b| target.evaluate(p, b)).collect::<Result<_>>()?;
        let mut found = None;
        for q in 0..source.points().len() {
            let direct: Vec<Graded> = objects.iter().map(|a| source.evaluate(q, a)).collect::<Result<_>>()?;
            if direct == composite {
                found = Some(q);
                break;
            }
        }
        map.push(found.ok_or_else(|| {
            Error::NotATensorFunctor(alloc::format!("{} ∘ g is not a listed point", target.points()[p].label))
        })?);
    }
    let mut continuous = true;
    for a in &source.pool().objects {
        let u = open_basic(source, a)?;
        let pre: OpenSet = (0..tpts).filter(|&p| u.contains(&map[p])).collect();
        continuous &= pre == open_basic(target, &g(a)?)?;
    }
    Ok(Gamma {
        map,
        source_labels: source.points().iter().map(|p| p.label.clone()).collect(),
        target_labels: target.points().iter().map(|p| p.label.clone()).collect(),
        continuous,
        objects_checked: objects.len(),
    })
}

/// Apply a functor out of a quiver instance. Returns the target instance,
/// the vertex inclusion (identity unless restricting) and `γ`.
pub fn quiver_gamma(
    source: &QuiverInstance,
    functor: &GammaFunctor,
    samples: usize,
    seed: u64,
) -> Result<(QuiverInstance, Vec<usize>, Gamma)> {
    let q = source.quiver();
    let field = source.field();
    match functor {
        GammaFunctor::Identity => {
            let target = QuiverInstance::new(q.clone(), field, None)?;
            let gm = gamma(source, &target, &|a| Ok(a.clone()), samples, seed)?;
            Ok((target, (0..q.num_vertices()).collect(), gm))
        }
        GammaFunctor::Doubling => {
            let target = QuiverInstance::new(q.clone(), field, None)?;
            let gm = gamma(source, &target, &|a| Ok(a.direct_sum(a)), samples, seed)?;
            Ok((target, (0..q.num_vertices()).collect(), gm))
        }
        GammaFunctor::SubquiverRestriction { keep } => {
            let (sub, vmap, amap) = q.full_subquiver(keep)?;
            let sub = Arc::new(sub);
            let target = QuiverInstance::new(sub.clone(), field, None)?;
            let cat = RepCategory::new(sub.clone(), field);
            let g = |c: &Complex<RepCategory>| {
                c.map_components(
                    cat.clone(),
                    |r| r.restrict(sub.clone(), &vmap, &amap),
                    |m| RepMorphism { comps: vmap.iter().map(|&v| m.comps[v].clone()).collect() },
                )
            };
            let gm = gamma(source, &target, &g, samples, seed)?;
            Ok((target, vmap.clone(), gm))
        }
        GammaFunctor::RingQuotient { .. } => Err(Error::Unsupported("ring base change on a quiver instance".into())),
    }
}

/// The entrywise map `R -> S` for the supported quotients, verified to be a
/// unital ring homomorphism on all pairs (or 4096 seeded pairs for large `R`).
pub fn quotient_map(source: &FiniteRing, target: &FiniteRing) -> Result<impl Fn(&RingElem) -> RingElem + Clone> {
    let t = target.clone();
    let s = source.clone();
    let f = move |a: &RingElem| match (&s, &t) {
        (FiniteRing::Zmod(_) | FiniteRing::PrimeField(_), _) => t.from_i64(a.0[0] as i64),
        (FiniteRing::PolyQuotient { .. }, _) => t.from_poly(&a.0),
        (FiniteRing::Product(rs), _) => {
            // Projection onto the first factor equal to the target.
            let parts = s.components(a);
            let i = rs.iter().position(|r| r == &t).unwrap_or(0);
            parts[i].clone()
        }
    };
    let compatible = match (source, target) {
        (FiniteRing::Zmod(n), FiniteRing::Zmod(d) | FiniteRing::PrimeField(d)) => n % d == 0,
        (FiniteRing::PrimeField(p), FiniteRing::PrimeField(q)) => p == q,
        (FiniteRing::PolyQuotient { p, f }, FiniteRing::PolyQuotient { p: q, f: g }) => {
            p == q && crate::linalg::field::poly::rem(f, g, *p).is_empty()
        }
        (FiniteRing::PolyQuotient { p, .. }, FiniteRing::PrimeField(q)) => p == q,
        (FiniteRing::Product(rs), t) => rs.contains(t),
        _ => false,
    };
    if !compatible {
        return Err(Error::InvalidRing(alloc::format!("{target} is not a supported quotient of {source}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x0171);
    let pairs: Vec<(RingElem, RingElem)> = if source.order() <= 256 {
        let e = source.elements()?;
        e.iter().flat_map(|a| e.iter().map(move |b| (a.clone(), b.clone()))).collect()
    } else {
        (0..4096).map(|_| (source.random(&mut rng), source.random(&mut rng))).collect()
    };
    let hom = f(&source.one()) == target.one()
        && pairs.iter().all(|(a, b)| {
            f(&source.add(a, b)) == target.add(&f(a), &f(b)) && f(&source.mul(a, b)) == target.mul(&f(a), &f(b))
        });
    if !hom {
        return Err(Error::InvalidRing(alloc::format!("{source} -> {target} is not a ring homomorphism")));
    }
    Ok(f)
}

pub fn ring_gamma(source: &RingInstance, functor: &GammaFunctor, samples: usize, seed: u64) -> Result<(RingInstance, Gamma)> {
    match functor {
        GammaFunctor::Identity => {
            let target = source.clone();
            let gm = gamma(source, &target, &|a| Ok(a.clone()), samples, seed)?;
            Ok((target, gm))
        }
        GammaFunctor::Doubling => {
            let target = source.clone();
            let gm = gamma(source, &target, &|a| Ok(a.direct_sum(a)), samples, seed)?;
            Ok((target, gm))
        }
        GammaFunctor::RingQuotient { target: t } => {
            let f = quotient_map(source.ring(), t)?;
            let target = RingInstance::new(t.clone())?;
            let cat = FreeModules { ring: t.clone() };
            let g = |c: &crate::ringcat::FreeComplex| {
                c.map_components(cat.clone(), |&n| n, |m: &RingMatrix| RingMatrix {
                    rows: m.rows,
                    cols: m.cols,
                    data: m.data.iter().map(&f).collect(),
                })
            };
            let gm = gamma(source, &target, &g, samples, seed)?;
            Ok((target, gm))
        }
        GammaFunctor::SubquiverRestriction { .. } => Err(Error::Unsupported("subquiver restriction on a ring instance".into())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Identity,
    /// A quiver automorphism given by its vertex permutation `σ`.
    Automorphism(Vec<usize>),
    /// Unit `u = 1[s]` with `a ⊗₀ b = (a ⊗ b)[-s]`.
    ShiftTwist(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transport {
    /// `u ⊗' a ≅ a` for the new unit `u`, on pool members and samples.
    pub unit_law: bool,
    /// Transported points satisfy `F'(a ⊗' b) = F'(a) ⊗ F'(b)` and `F'(u) = k`.
    pub points_are_tensor: bool,
    pub points_before: usize,
    pub points_after: usize,
    /// `bijection[w]` is the original point matching transported point `w`.
    pub bijection: Vec<usize>,
    /// `s'(a) = bijection^{-1}(s(a))` on every pool member and sample.
    pub supports_match: bool,
    /// `s'(a ⊗' b) = s'(a) ∩ s'(b)` over pool pairs.
    pub tensor_axiom: bool,
}

impl Transport {
    pub fn holds(&self) -> bool {
        self.unit_law && self.points_are_tensor && self.points_before == self.points_after && self.supports_match && self.tensor_axiom
    }
}

fn complexes_isomorphic(a: &Complex<RepCategory>, b: &Complex<RepCategory>) -> Result<bool> {
    let (ha, hb) = (cohomology(a)?, cohomology(b)?);
    if ha.keys().ne(hb.keys()) {
        return Ok(false);
    }
    for (d, pa) in &ha {
        if !is_isomorphic(&pa.rep, &hb[d].rep)?.is_iso() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Move the tensor product of a quiver instance along an equivalence and
/// compare spectra. For an automorphism `σ` the new product is
/// `a ⊗₁ b = σ^{-1}(σa ⊗ σb)` with points `F_v ∘ σ`; for a shift twist it is
/// `a ⊗₀ b = (a ⊗ b)[-s]` with unit `1[s]` and points `F_v(-)[-s]`.
pub fn transport_tensor(inst: &QuiverInstance, eq: &Equivalence, samples: usize, seed: u64) -> Result<Transport> {
    let q = inst.quiver();
    let n = q.num_vertices();
    let (perm, s) = match eq {
        Equivalence::Identity => ((0..n).collect::<Vec<_>>(), 0),
        Equivalence::Automorphism(p) => (p.clone(), 0),
        Equivalence::ShiftTwist(s) => ((0..n).collect(), *s),
    };
    let arrows = q.automorphism_arrows(&perm)?;
    let mut inv = alloc::vec![0; n];
    for (v, &w) in perm.iter().enumerate() {
        inv[w] = v;
    }
    let inv_arrows = q.automorphism_arrows(&inv)?;
    let cat = inst.category().clone();
    let relabel = |c: &Complex<RepCategory>, vp: &[usize], ap: &[usize]| -> Complex<RepCategory> {
        c.map_components(cat.clone(), |r| r.permute(vp, ap), |m| {
            let mut comps = m.comps.clone();
            for (v, c) in m.comps.iter().enumerate() {
                comps[vp[v]] = c.clone();
            }
            RepMorphism { comps }
        })
        .expect("relabelling preserves complexes")
    };
    let g = |c: &Complex<RepCategory>| relabel(c, &perm, &arrows);
    let g_inv = |c: &Complex<RepCategory>| relabel(c, &inv, &inv_arrows);
    let new_tensor = |a: &Complex<RepCategory>, b: &Complex<RepCategory>| g_inv(&g(a).tensor(&g(b))).shift(-s);
    let new_unit = g_inv(&inst.unit()).shift(s);
    // Transported point w: F_w(g(a))[-s].
    let new_eval = |w: usize, a: &Complex<RepCategory>| -> Result<Graded> {
        Ok(inst.evaluate(w, &g(a))?.into_iter().map(|(d, k)| (d + s, k)).collect())
    };
    let new_support = |a: &Complex<RepCategory>| -> Result<OpenSet> {
        let mut out = BTreeSet::new();
        for w in 0..n {
            if !new_eval(w, a)?.is_empty() {
                out.insert(w);
            }
        }
        Ok(out)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut objects = inst.pool().objects.clone();
    for _ in 0..samples {
        objects.push(inst.sample_object(&mut rng));
    }

    let mut unit_law = true;
    let mut points_are_tensor = true;
    for w in 0..n {
        points_are_tensor &= new_eval(w, &new_unit)? == Graded::from([(0, 1)]);
    }
    for a in &objects {
        unit_law &= complexes_isomorphic(&new_tensor(&new_unit, a), a)?;
        unit_law &= complexes_isomorphic(&new_tensor(a, &new_unit), a)?;
    }
    for a in &objects {
        for b in inst.pool().objects.iter() {
            let t = new_tensor(a, b);
            for w in 0..n {
                points_are_tensor &= new_eval(w, &t)? == convolve(&new_eval(w, a)?, &new_eval(w, b)?);
            }
        }
    }

    // The original point matching each transported one on all test objects.
    let mut bijection = Vec::with_capacity(n);
    for w in 0..n {
        let new: Vec<Graded> = objects.iter().map(|a| new_eval(w, a)).collect::<Result<_>>()?;
        let shifted = |v: usize| -> Result<Vec<Graded>> {
            objects.iter().map(|a| Ok(inst.evaluate(v, a)?.into_iter().map(|(d, k)| (d + s, k)).collect())).collect()
        };
        let mut found = None;
        for v in 0..n {
            if shifted(v)? == new && !bijection.contains(&v) {
                found = Some(v);
                break;
            }
        }
        match found {
            Some(v) => bijection.push(v),
            None => {
                return Ok(Transport {
                    unit_law,
                    points_are_tensor,
                    points_before: n,
                    points_after: n,
                    bijection,
                    supports_match: false,
                    tensor_axiom: false,
                })
            }
        }
    }
    let mut supports_match = true;
    for a in &objects {
        let old = support(inst, a)?;
        let expected: OpenSet = (0..n).filter(|&w| old.contains(&bijection[w])).collect();
        supports_match &= new_support(a)? == expected;
    }
    let mut tensor_axiom = true;
    for a in &inst.pool().objects {
        for b in &inst.pool().objects {
            let (sa, sb) = (new_support(a)?, new_support(b)?);
            tensor_axiom &= new_support(&new_tensor(a, b))? == sa.intersection(&sb).copied().collect::<OpenSet>();
        }
    }
    Ok(Transport { unit_law, points_are_tensor, points_before: n, points_after: n, bijection, supports_match, tensor_axiom })
}
