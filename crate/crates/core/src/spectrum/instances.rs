use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cell::RefCell;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Graded, Pool, SpectrumPoint, TensorInstance, Triangle};
use crate::error::{Error, Result};
use crate::homalg::{cohomology, cohomology_dims, random_complex, Category, ChainMap, ClosureBudget, Complex, ConeTable, RepCategory};
use crate::linalg::Field;
use crate::orbit::{tensor_point_obstruction, ObstructionCertificate, OrbitMorphism, OrbitObject};
use crate::quiver::{decompose, hom_space, is_isomorphic, list_indecomposables, Completeness, Quiver, Rep, RepMorphism};
use crate::ringcat::{fiber, koszul, random_free_complex, FiniteRing, FreeComplex, FreeModules, PrimePoint, RingMatrix};

fn dims_label(dims: &[usize]) -> String {
    let parts: Vec<String> = dims.iter().map(|d| alloc::format!("{d}")).collect();
    alloc::format!("({})", parts.join(","))
}

/// `D^b(rep_ℓ Q)` with the vertex-wise tensor product. Points are the
/// evaluations `F_v = H^*(-)_v`.
#[derive(Debug)]
pub struct QuiverInstance {
    cat: RepCategory,
    points: Vec<SpectrumPoint>,
    pool: Pool<Complex<RepCategory>>,
    reps: Vec<Rep>,
    cones: RefCell<ConeTable>,
}

impl QuiverInstance {
    /// `dim_bound` is needed for quivers not of type A, where the
    /// indecomposables are found by search.
    pub fn new(quiver: Arc<Quiver>, field: Field, dim_bound: Option<usize>) -> Result<Self> {
        Self::with_budget(quiver, field, dim_bound, ClosureBudget::default())
    }

    /// As [`QuiverInstance::new`], with an explicit budget for thick closures.
    pub fn with_budget(quiver: Arc<Quiver>, field: Field, dim_bound: Option<usize>, budget: ClosureBudget) -> Result<Self> {
        quiver.topological_order()?;
        let cat = RepCategory::new(quiver.clone(), field);
        let points = quiver.vertices().iter().map(|v| SpectrumPoint { label: alloc::format!("F_{v}"), residue: field }).collect();
        let found = list_indecomposables(quiver, field, dim_bound)?;
        let reps = found.reps;
        let pool = Pool {
            objects: reps.iter().map(|r| Complex::concentrated(cat.clone(), r.clone(), 0)).collect(),
            labels: reps.iter().map(|r| dims_label(r.dims())).collect(),
            complete: found.completeness == Completeness::Complete,
        };
        let cones = RefCell::new(ConeTable::new(reps.clone(), budget));
        Ok(QuiverInstance { cat, points, pool, reps, cones })
    }

    pub fn category(&self) -> &RepCategory {
        &self.cat
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.cat.quiver
    }

    pub fn field(&self) -> Field {
        self.cat.field
    }

    /// The pool as representations.
    pub fn reps(&self) -> &[Rep] {
        &self.reps
    }

    pub fn object(&self, r: Rep) -> Complex<RepCategory> {
        Complex::concentrated(self.cat.clone(), r, 0)
    }

    fn pool_index(&self, r: &Rep) -> Result<Option<usize>> {
        for (i, p) in self.reps.iter().enumerate() {
            if p.dims() == r.dims() && is_isomorphic(p, r)?.is_iso() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

impl TensorInstance for QuiverInstance {
    type Obj = Complex<RepCategory>;

    fn name(&self) -> String {
        alloc::format!("quiver with {} vertices over {}", self.quiver().num_vertices(), self.field())
    }

    fn points(&self) -> &[SpectrumPoint] {
        &self.points
    }

    fn evaluate(&self, point: usize, a: &Self::Obj) -> Result<Graded> {
        Ok(cohomology_dims(a).into_iter().map(|(d, dims)| (d, dims[point])).filter(|(_, n)| *n > 0).collect())
    }

    fn zero(&self) -> Self::Obj {
        Complex::zero(self.cat.clone())
    }

    fn unit(&self) -> Self::Obj {
        Complex::unit(self.cat.clone())
    }

    fn shift(&self, a: &Self::Obj, n: i64) -> Self::Obj {
        a.shift(n)
    }

    fn direct_sum(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Obj {
        a.direct_sum(b)
    }

    fn tensor(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Obj {
        a.tensor(b)
    }

    fn sample_object(&self, rng: &mut ChaCha8Rng) -> Self::Obj {
        random_complex(&self.cat, rng, 2)
    }

    fn sample_triangle(&self, rng: &mut ChaCha8Rng) -> Result<Triangle<Self::Obj>> {
        let cat = &self.cat;
        let f = cat.field;
        let n = self.quiver().num_vertices();
        let map = if rng.gen_bool(0.5) {
            // A random map of representations placed in one degree.
            let x = Rep::random(cat.quiver.clone(), f, (0..n).map(|_| rng.gen_range(0..=2)).collect(), rng);
            let y = Rep::random(cat.quiver.clone(), f, (0..n).map(|_| rng.gen_range(0..=2)).collect(), rng);
            let basis = hom_space(&x, &y)?;
            let coeffs: Vec<_> = basis.iter().map(|_| f.random(rng)).collect();
            let g = RepMorphism::combine(f, &basis, &coeffs, &x, &y);
            let d = rng.gen_range(-1..=1);
            let a = Complex::concentrated(cat.clone(), x, d);
            let b = Complex::concentrated(cat.clone(), y, d);
            let comps = if a.is_zero() || b.is_zero() { BTreeMap::new() } else { BTreeMap::from([(d, g)]) };
            ChainMap::new(a, b, comps)?
        } else {
            // r · (inclusion of a summand) between complexes.
            let a = random_complex(cat, rng, 2);
            let c = random_complex(cat, rng, 2);
            let b = a.direct_sum(&c);
            let r = f.random(rng);
            let mut comps = BTreeMap::new();
            for i in a.degrees() {
                let id = RepMorphism::identity(&a.obj(i)).scale(&r);
                comps.insert(i, cat.block(&[a.obj(i)], &[a.obj(i), c.obj(i)], &|row, _| (row == 0).then(|| id.clone())));
            }
            ChainMap::new(a, b, comps)?
        };
        let (cone, _, _) = map.cone();
        Ok(Triangle { a: map.source, b: map.target, cone })
    }

    fn pool(&self) -> &Pool<Self::Obj> {
        &self.pool
    }

    fn pool_summands(&self, a: &Self::Obj) -> Result<Option<BTreeSet<usize>>> {
        let mut out = BTreeSet::new();
        for piece in cohomology(a)?.into_values() {
            for s in decompose(&piece.rep)?.summands {
                match self.pool_index(&s)? {
                    Some(i) => {
                        out.insert(i);
                    }
                    None => return Ok(None),
                }
            }
        }
        Ok(Some(out))
    }

    fn thick_closure(&self, generators: &BTreeSet<usize>) -> Result<(BTreeSet<usize>, bool)> {
        let r = self.cones.borrow_mut().closure(generators)?;
        Ok((r.members, r.fixed_point))
    }
}

/// Perfect complexes over a finite commutative ring. Points are the fibers
/// `x^* = - ⊗ k(x)` at the primes.
///
/// Over these rings thick subcategories of perfect complexes are classified
/// by subsets of the (discrete) spectrum, so the pool holds one Koszul
/// complex `R --u--> R` for each nonempty set of primes, with `u` chosen to
/// lie in exactly those primes.
#[derive(Clone, Debug)]
pub struct RingInstance {
    ring: FiniteRing,
    primes: Vec<PrimePoint>,
    points: Vec<SpectrumPoint>,
    pool: Pool<FreeComplex>,
    supports: Vec<BTreeSet<usize>>,
}

impl RingInstance {
    pub fn new(ring: FiniteRing) -> Result<Self> {
        let primes = ring.primes()?;
        let points = primes.iter().map(|p| SpectrumPoint { label: alloc::format!("{}", p.ideal), residue: p.residue }).collect();
        let elems = ring.elements()?;
        let mut by_support: BTreeMap<BTreeSet<usize>, crate::ringcat::RingElem> = BTreeMap::new();
        for u in &elems {
            let s: BTreeSet<usize> = primes.iter().enumerate().filter(|(_, p)| ring.contains(p, u)).map(|(i, _)| i).collect();
            if !s.is_empty() {
                by_support.entry(s).or_insert_with(|| u.clone());
            }
        }
        if by_support.len() + 1 != 1 << primes.len() {
            return Err(Error::InvalidRing("some set of primes has no Koszul generator".into()));
        }
        // Order by size, then lexicographically.
        let mut entries: Vec<(BTreeSet<usize>, crate::ringcat::RingElem)> = by_support.into_iter().collect();
        entries.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        let pool = Pool {
            objects: entries.iter().map(|(_, u)| koszul(&ring, u)).collect(),
            labels: entries.iter().map(|(_, u)| alloc::format!("K({})", ring.display_elem(u))).collect(),
            complete: true,
        };
        let supports = entries.into_iter().map(|(s, _)| s).collect();
        Ok(RingInstance { ring, primes, points, pool, supports })
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn primes(&self) -> &[PrimePoint] {
        &self.primes
    }

    pub fn category(&self) -> FreeModules {
        FreeModules { ring: self.ring.clone() }
    }

    /// `R --u--> R` for `u` given as an integer.
    pub fn multiplication(&self, u: i64) -> FreeComplex {
        koszul(&self.ring, &self.ring.from_i64(u))
    }
}

impl TensorInstance for RingInstance {
    type Obj = FreeComplex;

    fn name(&self) -> String {
        alloc::format!("perfect complexes over {}", self.ring)
    }

    fn points(&self) -> &[SpectrumPoint] {
        &self.points
    }

    fn evaluate(&self, point: usize, a: &Self::Obj) -> Result<Graded> {
        let fib = fiber(a, &self.primes[point])?;
        Ok(cohomology_dims(&fib).into_iter().map(|(d, dims)| (d, dims[0])).collect())
    }

    fn zero(&self) -> Self::Obj {
        Complex::zero(self.category())
    }

    fn unit(&self) -> Self::Obj {
        Complex::unit(self.category())
    }

    fn shift(&self, a: &Self::Obj, n: i64) -> Self::Obj {
        a.shift(n)
    }

    fn direct_sum(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Obj {
        a.direct_sum(b)
    }

    fn tensor(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Obj {
        a.tensor(b)
    }

    fn sample_object(&self, rng: &mut ChaCha8Rng) -> Self::Obj {
        random_free_complex(&self.ring, rng, 2)
    }

    fn sample_triangle(&self, rng: &mut ChaCha8Rng) -> Result<Triangle<Self::Obj>> {
        let ring = &self.ring;
        let cat = self.category();
        let map = if rng.gen_bool(0.5) {
            // K(u) -> K(v) with components (u t, v t).
            let (u, v, t) = (ring.random(rng), ring.random(rng), ring.random(rng));
            let one = |x| RingMatrix { rows: 1, cols: 1, data: alloc::vec![x] };
            let comps = BTreeMap::from([(-1, one(ring.mul(&u, &t))), (0, one(ring.mul(&v, &t)))]);
            ChainMap::new(koszul(ring, &u), koszul(ring, &v), comps)?
        } else {
            let a = random_free_complex(ring, rng, 2);
            let c = random_free_complex(ring, rng, 2);
            let b = a.direct_sum(&c);
            let r = ring.random(rng);
            let mut comps = BTreeMap::new();
            for i in a.degrees() {
                let id = RingMatrix::identity(ring, a.obj(i)).scale(ring, &r);
                comps.insert(i, cat.block(&[a.obj(i)], &[a.obj(i), c.obj(i)], &|row, _| (row == 0).then(|| id.clone())));
            }
            ChainMap::new(a, b, comps)?
        };
        let (cone, _, _) = map.cone();
        Ok(Triangle { a: map.source, b: map.target, cone })
    }

    fn pool(&self) -> &Pool<Self::Obj> {
        &self.pool
    }

    fn pool_summands(&self, a: &Self::Obj) -> Result<Option<BTreeSet<usize>>> {
        let s = super::support(self, a)?;
        if s.is_empty() {
            return Ok(Some(BTreeSet::new()));
        }
        Ok(self.supports.iter().position(|t| *t == s).map(|i| BTreeSet::from([i])))
    }

    fn thick_closure(&self, generators: &BTreeSet<usize>) -> Result<(BTreeSet<usize>, bool)> {
        let union: BTreeSet<usize> = generators.iter().flat_map(|&i| self.supports[i].iter().copied()).collect();
        let members = self.supports.iter().enumerate().filter(|(_, s)| s.is_subset(&union)).map(|(i, _)| i).collect();
        Ok((members, true))
    }
}

/// The orbit category `T_ℓ/[m]`: no points, a pool of one object (the unit;
/// every nonzero object has a shift of it as a summand).
#[derive(Clone, Debug)]
pub struct OrbitInstance {
    m: usize,
    field: Field,
    pool: Pool<OrbitObject>,
}

impl OrbitInstance {
    pub fn new(m: usize, field: Field) -> Result<Self> {
        let unit = OrbitObject::unit(m)?;
        Ok(OrbitInstance { m, field, pool: Pool { objects: alloc::vec![unit], labels: alloc::vec!["1".into()], complete: true } })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

impl TensorInstance for OrbitInstance {
    type Obj = OrbitObject;

    fn name(&self) -> String {
        alloc::format!("orbit category of graded {}-spaces by [{}]", self.field, self.m)
    }

    fn points(&self) -> &[SpectrumPoint] {
        &[]
    }

    fn evaluate(&self, _point: usize, _a: &OrbitObject) -> Result<Graded> {
        Err(Error::Unsupported("the orbit category has no tensor points".into()))
    }

    fn zero(&self) -> OrbitObject {
        OrbitObject::zero(self.m).expect("m >= 1")
    }

    fn unit(&self) -> OrbitObject {
        self.pool.objects[0].clone()
    }

    fn shift(&self, a: &OrbitObject, n: i64) -> OrbitObject {
        a.shift(n)
    }

    fn direct_sum(&self, a: &OrbitObject, b: &OrbitObject) -> OrbitObject {
        a.direct_sum(b)
    }

    fn tensor(&self, a: &OrbitObject, b: &OrbitObject) -> OrbitObject {
        a.tensor(b)
    }

    fn sample_object(&self, rng: &mut ChaCha8Rng) -> OrbitObject {
        OrbitObject::random(self.m, 2, rng).expect("m >= 1")
    }

    fn sample_triangle(&self, rng: &mut ChaCha8Rng) -> Result<Triangle<OrbitObject>> {
        let a = OrbitObject::random(self.m, 2, rng)?;
        let b = OrbitObject::random(self.m, 2, rng)?;
        let cone = OrbitMorphism::random(self.field, &a, &b, rng).cone();
        Ok(Triangle { a, b, cone })
    }

    fn pool(&self) -> &Pool<OrbitObject> {
        &self.pool
    }

    fn pool_summands(&self, a: &OrbitObject) -> Result<Option<BTreeSet<usize>>> {
        Ok(Some(if a.is_zero() { BTreeSet::new() } else { BTreeSet::from([0]) }))
    }

    fn thick_closure(&self, generators: &BTreeSet<usize>) -> Result<(BTreeSet<usize>, bool)> {
        Ok((generators.clone(), true))
    }

    fn obstruction(&self) -> Option<ObstructionCertificate> {
        tensor_point_obstruction(self.field, self.m).ok()
    }
}
