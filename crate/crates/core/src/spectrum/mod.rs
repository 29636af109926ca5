//! Tensor points, supports, thick tensor ideals and prime ideals of a small
//! tensor triangulated category, and the comparison map `[F] ↦ ker F`.
//!
//! Every category here is handled through [`TensorInstance`]: a finite list
//! of points, each evaluating an object to graded dimensions over its residue
//! field, and a pool of indecomposables up to shift that stands in for the
//! objects when enumerating ideals. All spectra are finite and discrete, so
//! open sets are plain subsets of the point list.

mod functor;
mod instances;
mod stalk;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use functor::{gamma, quiver_gamma, quotient_map, ring_gamma, transport_tensor, Equivalence, Gamma, GammaFunctor, Transport};
pub use instances::{OrbitInstance, QuiverInstance, RingInstance};
pub use stalk::{quiver_stalk, ring_stalk, Stalk};

use crate::error::Result;
use crate::linalg::Field;
use crate::orbit::ObstructionCertificate;

/// Graded dimensions, zero degrees omitted.
pub type Graded = BTreeMap<i64, usize>;

/// A set of points, as indices into [`TensorInstance::points`].
pub type OpenSet = BTreeSet<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumPoint {
    pub label: String,
    pub residue: Field,
}

/// Indecomposables up to shift. `complete` records whether every
/// indecomposable is known to be in the list.
#[derive(Clone, Debug)]
pub struct Pool<O> {
    pub objects: Vec<O>,
    pub labels: Vec<String>,
    pub complete: bool,
}

/// `a -> b -> cone -> a[1]`.
#[derive(Clone, Debug)]
pub struct Triangle<O> {
    pub a: O,
    pub b: O,
    pub cone: O,
}

pub trait TensorInstance {
    type Obj: Clone + Debug;

    fn name(&self) -> String;
    fn points(&self) -> &[SpectrumPoint];
    fn evaluate(&self, point: usize, a: &Self::Obj) -> Result<Graded>;

    fn zero(&self) -> Self::Obj;
    fn unit(&self) -> Self::Obj;
    fn shift(&self, a: &Self::Obj, n: i64) -> Self::Obj;
    fn direct_sum(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Obj;
    fn tensor(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Obj;

    fn sample_object(&self, rng: &mut ChaCha8Rng) -> Self::Obj;
    fn sample_triangle(&self, rng: &mut ChaCha8Rng) -> Result<Triangle<Self::Obj>>;

    fn pool(&self) -> &Pool<Self::Obj>;
    /// Pool members generating the same thick subcategory as `a`; `None`
    /// when a summand of `a` is not in the pool.
    fn pool_summands(&self, a: &Self::Obj) -> Result<Option<BTreeSet<usize>>>;
    /// Smallest thick subcategory containing `generators`, as pool indices,
    /// and whether the closure is certified complete.
    fn thick_closure(&self, generators: &BTreeSet<usize>) -> Result<(BTreeSet<usize>, bool)>;

    /// Evaluations at every point, for witnesses.
    fn describe(&self, a: &Self::Obj) -> String {
        if self.points().is_empty() {
            return alloc::format!("{a:?}");
        }
        let parts: Vec<String> = (0..self.points().len())
            .map(|p| match self.evaluate(p, a) {
                Ok(g) => alloc::format!("{}{g:?}", self.points()[p].label),
                Err(e) => alloc::format!("{}: {e}", self.points()[p].label),
            })
            .collect();
        alloc::format!("<{}>", parts.join(" "))
    }

    /// Why the point list is empty, when it is.
    fn obstruction(&self) -> Option<ObstructionCertificate> {
        None
    }
}

/// `s(a) = {F : F(a) ≠ 0}`.
pub fn support<I: TensorInstance>(inst: &I, a: &I::Obj) -> Result<OpenSet> {
    let mut out = BTreeSet::new();
    for p in 0..inst.points().len() {
        if !inst.evaluate(p, a)?.is_empty() {
            out.insert(p);
        }
    }
    Ok(out)
}

/// `U_a`, the complement of the support.
pub fn open_basic<I: TensorInstance>(inst: &I, a: &I::Obj) -> Result<OpenSet> {
    let s = support(inst, a)?;
    Ok((0..inst.points().len()).filter(|p| !s.contains(p)).collect())
}

/// `ker F` as pool indices.
pub fn kernel<I: TensorInstance>(inst: &I, point: usize) -> Result<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    for (i, a) in inst.pool().objects.iter().enumerate() {
        if inst.evaluate(point, a)?.is_empty() {
            out.insert(i);
        }
    }
    Ok(out)
}

/// A thick tensor ideal as a set of pool members.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ThickIdeal {
    pub members: BTreeSet<usize>,
    /// The closure reached a certified fixed point over a complete pool.
    pub complete: bool,
}

/// Close under thick closure and tensoring with pool members until stable.
pub fn ideal_closure<I: TensorInstance>(inst: &I, generators: &BTreeSet<usize>) -> Result<ThickIdeal> {
    let n = inst.pool().objects.len();
    let mut members = generators.clone();
    let mut complete = inst.pool().complete;
    loop {
        let (closed, full) = inst.thick_closure(&members)?;
        complete &= full;
        let mut next = closed.clone();
        for &i in &closed {
            for j in 0..n {
                let t = inst.tensor(&inst.pool().objects[i], &inst.pool().objects[j]);
                match inst.pool_summands(&t)? {
                    Some(s) => next.extend(s),
                    None => complete = false,
                }
            }
        }
        if next == members {
            return Ok(ThickIdeal { members, complete });
        }
        members = next;
    }
}

/// `T^U = ⋂_{F ∈ U} ker F`, with a check that it is closed.
pub fn ideal_t_u<I: TensorInstance>(inst: &I, u: &OpenSet) -> Result<(ThickIdeal, bool)> {
    let mut members: BTreeSet<usize> = (0..inst.pool().objects.len()).collect();
    for &p in u {
        let k = kernel(inst, p)?;
        members.retain(|i| k.contains(i));
    }
    let closed = ideal_closure(inst, &members)?;
    let is_closed = closed.members == members;
    Ok((ThickIdeal { members, complete: closed.complete }, is_closed))
}

/// Pool subsets are enumerated exhaustively up to this pool size.
const EXHAUSTIVE_POOL: usize = 14;

#[derive(Clone, Debug)]
pub struct IdealLattice {
    pub ideals: Vec<ThickIdeal>,
    /// Every subset of a complete pool was closed.
    pub exhaustive: bool,
    /// The intersection of any two ideals is again in the list.
    pub closed_under_intersection: bool,
}

/// All thick tensor ideals: the closure of every subset of the pool.
pub fn enumerate_thick_tensor_ideals<I: TensorInstance>(inst: &I) -> Result<IdealLattice> {
    let n = inst.pool().objects.len();
    let mut found: BTreeMap<BTreeSet<usize>, bool> = BTreeMap::new();
    let exhaustive_subsets = n <= EXHAUSTIVE_POOL;
    let subsets: Vec<BTreeSet<usize>> = if exhaustive_subsets {
        (0u32..1 << n).map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect()).collect()
    } else {
        let mut s: Vec<BTreeSet<usize>> = alloc::vec![BTreeSet::new()];
        s.extend((0..n).map(|i| BTreeSet::from([i])));
        s
    };
    for gens in subsets {
        let ideal = ideal_closure(inst, &gens)?;
        let entry = found.entry(ideal.members).or_insert(true);
        *entry &= ideal.complete;
    }
    let ideals: Vec<ThickIdeal> = found.into_iter().map(|(members, complete)| ThickIdeal { members, complete }).collect();
    let sets: BTreeSet<&BTreeSet<usize>> = ideals.iter().map(|i| &i.members).collect();
    let closed_under_intersection = ideals.iter().all(|a| {
        ideals.iter().all(|b| sets.contains(&a.members.intersection(&b.members).copied().collect::<BTreeSet<_>>()))
    });
    let exhaustive = exhaustive_subsets && ideals.iter().all(|i| i.complete);
    Ok(IdealLattice { ideals, exhaustive, closed_under_intersection })
}

#[derive(Clone, Debug)]
pub struct BalmerSpectrum {
    pub primes: Vec<ThickIdeal>,
    /// `U(a) = {P : a ∈ P}` for each pool member `a`, as indices into `primes`.
    pub basis: Vec<BTreeSet<usize>>,
    pub exhaustive: bool,
}

/// Is `a ⊗ b ∈ P ⟹ a ∈ P or b ∈ P` over all pool pairs?
pub fn is_prime<I: TensorInstance>(inst: &I, ideal: &BTreeSet<usize>) -> Result<bool> {
    let n = inst.pool().objects.len();
    if ideal.len() == n {
        return Ok(false);
    }
    for i in 0..n {
        for j in 0..n {
            if ideal.contains(&i) || ideal.contains(&j) {
                continue;
            }
            let t = inst.tensor(&inst.pool().objects[i], &inst.pool().objects[j]);
            if let Some(s) = inst.pool_summands(&t)? {
                if s.is_subset(ideal) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn balmer_spectrum<I: TensorInstance>(inst: &I, lattice: &IdealLattice) -> Result<BalmerSpectrum> {
    let mut primes = Vec::new();
    for ideal in &lattice.ideals {
        if is_prime(inst, &ideal.members)? {
            primes.push(ideal.clone());
        }
    }
    let basis = (0..inst.pool().objects.len())
        .map(|a| primes.iter().enumerate().filter(|(_, p)| p.members.contains(&a)).map(|(k, _)| k).collect())
        .collect();
    Ok(BalmerSpectrum { primes, basis, exhaustive: lattice.exhaustive })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    /// `f(F)` as an index into the prime list, `None` if `ker F` is not
    /// among the primes.
    pub map: Vec<Option<usize>>,
    pub kernels: Vec<BTreeSet<usize>>,
    pub injective: bool,
    pub surjective: bool,
    /// `f^{-1}(U(a)) = U_a` for every pool member `a`.
    pub continuous: bool,
}

impl Comparison {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective && self.map.iter().all(|m| m.is_some())
    }
}

pub fn comparison_f<I: TensorInstance>(inst: &I, spec: &BalmerSpectrum) -> Result<Comparison> {
    let npts = inst.points().len();
    let kernels: Vec<BTreeSet<usize>> = (0..npts).map(|p| kernel(inst, p)).collect::<Result<_>>()?;
    let map: Vec<Option<usize>> = kernels.iter().map(|k| spec.primes.iter().position(|p| &p.members == k)).collect();
    let image: BTreeSet<usize> = map.iter().flatten().copied().collect();
    let injective = image.len() == map.iter().flatten().count() && map.iter().all(|m| m.is_some());
    let surjective = image.len() == spec.primes.len();
    let mut continuous = true;
    for (a, obj) in inst.pool().objects.iter().enumerate() {
        let pre: OpenSet = (0..npts).filter(|&p| map[p].is_some_and(|k| spec.basis[a].contains(&k))).collect();
        continuous &= pre == open_basic(inst, obj)?;
    }
    Ok(Comparison { map, kernels, injective, surjective, continuous })
}

/// Points of `T/T^{U_a}` are the points whose kernel contains `T^{U_a}`.
/// Returns them together with `U_a`.
pub fn localization_points<I: TensorInstance>(inst: &I, a: &I::Obj) -> Result<(OpenSet, OpenSet)> {
    let u = open_basic(inst, a)?;
    let (t_u, _) = ideal_t_u(inst, &u)?;
    let mut quotient = BTreeSet::new();
    for p in 0..inst.points().len() {
        if t_u.members.is_subset(&kernel(inst, p)?) {
            quotient.insert(p);
        }
    }
    Ok((quotient, u))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomResult {
    pub name: &'static str,
    pub checked: usize,
    pub passed: usize,
    /// A description of the first failing object(s).
    pub witness: Option<String>,
}

impl AxiomResult {
    fn new(name: &'static str) -> Self {
        AxiomResult { name, checked: 0, passed: 0, witness: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if ok {
            self.passed += 1;
        } else if self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn holds(&self) -> bool {
        self.passed == self.checked
    }
}

#[derive(Clone, Debug)]
pub struct SupportReport {
    pub axioms: Vec<AxiomResult>,
}

impl SupportReport {
    pub fn holds(&self) -> bool {
        self.axioms.iter().all(|a| a.holds())
    }

    pub fn get(&self, name: &str) -> Option<&AxiomResult> {
        self.axioms.iter().find(|a| a.name == name)
    }
}

fn euler(g: &Graded) -> i64 {
    g.iter().map(|(d, n)| if d % 2 == 0 { *n as i64 } else { -(*n as i64) }).sum()
}

/// The six support-data axioms on `samples` random objects and triangles,
/// the same for `⊕` and `⊗` over all pool pairs, and `a ∈ T^{U_a}`,
/// `U_{a ⊕ a'} ⊆ U_a` over the pool. Evaluation is also checked to be
/// exact on triangles through Euler characteristics.
pub fn verify_support_data<I: TensorInstance>(inst: &I, samples: usize, seed: u64) -> Result<SupportReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: OpenSet = (0..inst.points().len()).collect();
    let mut zero = AxiomResult::new("support of zero is empty");
    let mut unit = AxiomResult::new("support of unit is everything");
    let mut shift = AxiomResult::new("support is shift invariant");
    let mut sum = AxiomResult::new("support of a sum is the union");
    let mut cone = AxiomResult::new("support of a cone lies in the union");
    let mut tensor = AxiomResult::new("support of a tensor is the intersection");
    let mut exact = AxiomResult::new("evaluation is exact on triangles");
    let mut member = AxiomResult::new("a lies in T^{U_a}");
    let mut shrink = AxiomResult::new("U of a sum lies in U of a summand");

    zero.record(support(inst, &inst.zero())?.is_empty(), || "zero".into());
    unit.record(support(inst, &inst.unit())? == all, || "unit".into());

    let check_pair = |a: &I::Obj, b: &I::Obj, shift: &mut AxiomResult, sum: &mut AxiomResult, tensor: &mut AxiomResult| -> Result<()> {
        let (sa, sb) = (support(inst, a)?, support(inst, b)?);
        for n in [-1, 1, 2] {
            let ok = support(inst, &inst.shift(a, n))? == sa;
            shift.record(ok, || alloc::format!("{} shifted by {n}", inst.describe(a)));
        }
        let ok = support(inst, &inst.direct_sum(a, b))? == sa.union(&sb).copied().collect();
        sum.record(ok, || alloc::format!("{} ⊕ {}", inst.describe(a), inst.describe(b)));
        let ok = support(inst, &inst.tensor(a, b))? == sa.intersection(&sb).copied().collect();
        tensor.record(ok, || alloc::format!("{} ⊗ {}", inst.describe(a), inst.describe(b)));
        Ok(())
    };

    for _ in 0..samples {
        let a = inst.sample_object(&mut rng);
        let b = inst.sample_object(&mut rng);
        check_pair(&a, &b, &mut shift, &mut sum, &mut tensor)?;
        let t = inst.sample_triangle(&mut rng)?;
        let (sa, sb, sc) = (support(inst, &t.a)?, support(inst, &t.b)?, support(inst, &t.cone)?);
        let union: OpenSet = sa.union(&sb).copied().collect();
        cone.record(sc.is_subset(&union), || alloc::format!("cone {} of {} -> {}", inst.describe(&t.cone), inst.describe(&t.a), inst.describe(&t.b)));
        for p in 0..inst.points().len() {
            let (ea, eb, ec) = (inst.evaluate(p, &t.a)?, inst.evaluate(p, &t.b)?, inst.evaluate(p, &t.cone)?);
            exact.record(euler(&ec) == euler(&eb) - euler(&ea), || alloc::format!("point {p} on cone of {}", inst.describe(&t.a)));
        }
    }

    let pool = &inst.pool().objects;
    for (i, a) in pool.iter().enumerate() {
        for b in pool {
            check_pair(a, b, &mut shift, &mut sum, &mut tensor)?;
            let ua = open_basic(inst, a)?;
            let uab = open_basic(inst, &inst.direct_sum(a, b))?;
            shrink.record(uab.is_subset(&ua), || alloc::format!("{} ⊕ {}", inst.describe(a), inst.describe(b)));
        }
        let (t_u, _) = ideal_t_u(inst, &open_basic(inst, a)?)?;
        member.record(t_u.members.contains(&i), || inst.pool().labels[i].clone());
    }

    Ok(SupportReport { axioms: alloc::vec![zero, unit, shift, sum, cone, tensor, exact, member, shrink] })
}

/// Fault-injection fixture: the wrapped instance with `a ⊗ b` replaced by
/// `a ⊕ b`, which breaks the tensor axiom.
#[derive(Clone, Debug)]
pub struct CorruptTensor<I>(pub I);

impl<I: TensorInstance> TensorInstance for CorruptTensor<I> {
    type Obj = I::Obj;

    fn name(&self) -> String {
        alloc::format!("{} (corrupted tensor)", self.0.name())
    }
    fn points(&self) -> &[SpectrumPoint] {
        self.0.points()
    }
    fn evaluate(&self, point: usize, a: &I::Obj) -> Result<Graded> {
        self.0.evaluate(point, a)
    }
    fn zero(&self) -> I::Obj {
        self.0.zero()
    }
    fn unit(&self) -> I::Obj {
        self.0.unit()
    }
    fn shift(&self, a: &I::Obj, n: i64) -> I::Obj {
        self.0.shift(a, n)
    }
    fn direct_sum(&self, a: &I::Obj, b: &I::Obj) -> I::Obj {
        self.0.direct_sum(a, b)
    }
    fn tensor(&self, a: &I::Obj, b: &I::Obj) -> I::Obj {
        self.0.direct_sum(a, b)
    }
    fn sample_object(&self, rng: &mut ChaCha8Rng) -> I::Obj {
        self.0.sample_object(rng)
    }
    fn sample_triangle(&self, rng: &mut ChaCha8Rng) -> Result<Triangle<I::Obj>> {
        self.0.sample_triangle(rng)
    }
    fn pool(&self) -> &Pool<I::Obj> {
        self.0.pool()
    }
    fn pool_summands(&self, a: &I::Obj) -> Result<Option<BTreeSet<usize>>> {
        self.0.pool_summands(a)
    }
    fn thick_closure(&self, generators: &BTreeSet<usize>) -> Result<(BTreeSet<usize>, bool)> {
        self.0.thick_closure(generators)
    }
}

#[cfg(test)]
mod tests;
