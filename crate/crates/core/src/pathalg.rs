//! Natural transformations between the evaluation points `F_v` of a quiver
//! instance, and the comparison with the path algebra `kQ`.
//!
//! Paths compose right to left: `p · q` is "first `q`, then `p`", and is zero
//! unless `q` ends where `p` starts. A path `p: v -> w` acts as the
//! transformation `F_v -> F_w` with component `V_p` at `V`.
//!
//! Naturality is tested on a finite category: the pool of indecomposables at
//! shifts in a window, with every morphism between them. Over a hereditary
//! base only degree-0 maps `M[s] -> N[s]` survive evaluation, since
//! `F_v` sends an extension class `M -> N[1]` to a map between spaces in
//! different degrees.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::linalg::{rank_of_vectors, Field, Matrix, Scalar};
use crate::quiver::{hom_space, Path, Quiver, Rep, RepMorphism};
use crate::spectrum::QuiverInstance;

/// `kQ` with basis the paths of `Q`.
#[derive(Clone, Debug)]
pub struct PathAlgebra {
    pub quiver: Arc<Quiver>,
    pub field: Field,
    pub basis: Vec<Path>,
    /// `table[i][j]` is the index of `basis[i] · basis[j]`, `None` for zero.
    pub table: Vec<Vec<Option<usize>>>,
}

impl PathAlgebra {
    pub fn new(quiver: Arc<Quiver>, field: Field) -> Result<Self> {
        let basis = quiver.paths()?;
        let table = basis
            .iter()
            .map(|p| basis.iter().map(|q| p.after(q).and_then(|pq| basis.iter().position(|b| *b == pq))).collect())
            .collect();
        Ok(PathAlgebra { quiver, field, basis, table })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn labels(&self) -> Vec<String> {
        self.basis.iter().map(|p| p.display(&self.quiver)).collect()
    }

    /// Exhaustive over basis triples.
    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        let mul = |a: Option<usize>, b: Option<usize>| a.zip(b).and_then(|(a, b)| self.table[a][b]);
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| mul(mul(Some(a), Some(b)), Some(c)) == mul(Some(a), mul(Some(b), Some(c))))))
    }

    /// `Σ_v e_v` acts as the identity on every basis element.
    pub fn idempotents_sum_to_one(&self) -> bool {
        let idem: Vec<usize> = (0..self.dim()).filter(|&i| self.basis[i].is_trivial()).collect();
        idem.len() == self.quiver.num_vertices()
            && (0..self.dim()).all(|p| {
                let left: Vec<usize> = idem.iter().filter_map(|&e| self.table[e][p]).collect();
                let right: Vec<usize> = idem.iter().filter_map(|&e| self.table[p][e]).collect();
                left == [p] && right == [p]
            })
    }
}

/// Whether natural transformations must commute with the shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftPolicy {
    /// `η_{X[1]} = η_X[1]`, as for morphisms of exact functors.
    Compatible,
    /// Only the naturality squares; each shift gets its own component.
    Plain,
}

/// The pool at shifts `window.0..=window.1`.
#[derive(Clone, Debug)]
pub struct TestCategory {
    pub objects: Vec<(usize, i64)>,
    pub window: (i64, i64),
    /// Basis of `Hom(pool[i], pool[j])`, keyed by `(i, j)`.
    pub homs: BTreeMap<(usize, usize), Vec<RepMorphism>>,
}

impl TestCategory {
    pub fn new(inst: &QuiverInstance, window: (i64, i64)) -> Result<Self> {
        let reps = inst.reps();
        let mut homs = BTreeMap::new();
        for (i, m) in reps.iter().enumerate() {
            for (j, n) in reps.iter().enumerate() {
                homs.insert((i, j), hom_space(m, n)?);
            }
        }
        let objects = (window.0..=window.1).flat_map(|s| (0..reps.len()).map(move |i| (i, s))).collect();
        Ok(TestCategory { objects, window, homs })
    }
}

/// Components `η_{(i, s)}: pool[i]_v -> pool[i]_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransformation {
    pub source: usize,
    pub target: usize,
    pub comps: BTreeMap<(usize, i64), Matrix>,
}

impl NatTransformation {
    /// `self ∘ other`.
    pub fn compose(&self, other: &NatTransformation) -> Option<NatTransformation> {
        if other.target != self.source {
            return None;
        }
        let comps = self.comps.iter().map(|(k, m)| (*k, m.mul(&other.comps[k]))).collect();
        Some(NatTransformation { source: other.source, target: self.target, comps })
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|m| m.is_zero())
    }

    pub fn vectorize(&self) -> Vec<Scalar> {
        self.comps.values().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    /// Component on a direct sum of pool members at shift `s`.
    fn on_sum(&self, field: Field, parts: &[usize], s: i64) -> Matrix {
        let blocks: Vec<Matrix> = parts.iter().map(|&i| self.comps[&(i, s)].clone()).collect();
        Matrix::block_diag(field, &blocks)
    }
}

#[derive(Clone, Debug)]
pub struct NatSpace {
    pub basis: Vec<NatTransformation>,
    pub window: (i64, i64),
    /// Number of paths `v -> w`.
    pub paths: usize,
    /// The dimension exceeded the path count even after enlarging the window.
    pub under_constrained: bool,
    pub enlarged: bool,
    /// Every basis element passed naturality on fresh random morphisms
    /// between sums of pool members.
    pub rechecked: bool,
}

impl NatSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn solve_nat(inst: &QuiverInstance, tc: &TestCategory, v: usize, w: usize, policy: ShiftPolicy) -> Result<Vec<NatTransformation>> {
    let field = inst.field();
    let reps = inst.reps();
    // Unknown blocks: one per pool member, or one per (member, shift).
    let keys: Vec<(usize, i64)> = match policy {
        ShiftPolicy::Compatible => (0..reps.len()).map(|i| (i, 0)).collect(),
        ShiftPolicy::Plain => tc.objects.clone(),
    };
    let key_of = |i: usize, s: i64| match policy {
        ShiftPolicy::Compatible => (i, 0),
        ShiftPolicy::Plain => (i, s),
    };
    let mut offsets = BTreeMap::new();
    let mut total = 0;
    for &(i, s) in &keys {
        offsets.insert((i, s), total);
        total += reps[i].dim(w) * reps[i].dim(v);
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for s in tc.window.0..=tc.window.1 {
        for (&(i, j), basis) in &tc.homs {
            let (m, n) = (&reps[i], &reps[j]);
            let (om, on) = (offsets[&key_of(i, s)], offsets[&key_of(j, s)]);
            for f in basis {
                let (fv, fw) = (&f.comps[v], &f.comps[w]);
                // (η_N f_v - f_w η_M)[r, c] = 0.
                for r in 0..n.dim(w) {
                    for c in 0..m.dim(v) {
                        let mut row = alloc::vec![field.zero(); total];
                        for k in 0..n.dim(v) {
                            let idx = on + r * n.dim(v) + k;
                            row[idx] = field.add(&row[idx], fv.get(k, c));
                        }
                        for k in 0..m.dim(w) {
                            let idx = om + k * m.dim(v) + c;
                            row[idx] = field.sub(&row[idx], fw.get(r, k));
                        }
                        if row.iter().any(|x| !field.is_zero(x)) {
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    let system = Matrix::from_rows(field, rows, total)?;
    let kernel = system.kernel_matrix();
    let mut out = Vec::new();
    for col in kernel.columns() {
        let mut comps = BTreeMap::new();
        for &(i, s) in &tc.objects {
            let o = offsets[&key_of(i, s)];
            let (rr, cc) = (reps[i].dim(w), reps[i].dim(v));
            let data = col[o..o + rr * cc].to_vec();
            comps.insert((i, s), Matrix::from_scalars(field, rr, cc, data)?);
        }
        out.push(NatTransformation { source: v, target: w, comps });
    }
    Ok(out)
}

/// Naturality on random morphisms between sums of one or two pool members.
fn recheck(inst: &QuiverInstance, tc: &TestCategory, eta: &NatTransformation, trials: usize, seed: u64) -> Result<bool> {
    let field = inst.field();
    let reps = inst.reps();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (v, w) = (eta.source, eta.target);
    for _ in 0..trials {
        let pick = |rng: &mut ChaCha8Rng| -> Vec<usize> { (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..reps.len())).collect() };
        let (xs, ys) = (pick(&mut rng), pick(&mut rng));
        let s = rng.gen_range(tc.window.0..=tc.window.1);
        let x = Rep::direct_sum(&xs.iter().map(|&i| reps[i].clone()).collect::<Vec<_>>())?;
        let y = Rep::direct_sum(&ys.iter().map(|&i| reps[i].clone()).collect::<Vec<_>>())?;
        let basis = hom_space(&x, &y)?;
        let coeffs: Vec<Scalar> = basis.iter().map(|_| field.random(&mut rng)).collect();
        let f = RepMorphism::combine(field, &basis, &coeffs, &x, &y);
        let lhs = eta.on_sum(field, &ys, s).mul(&f.comps[v]);
        let rhs = f.comps[w].mul(&eta.on_sum(field, &xs, s));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn count_paths(q: &Quiver, v: usize, w: usize) -> Result<usize> {
    Ok(q.paths()?.iter().filter(|p| p.source == v && p.target == w).count())
}

/// `Hom(F_v, F_w)` on the test category over `window`. If the dimension
/// exceeds the number of paths the window is widened by one on each side
/// and the system solved again; a persisting excess is reported.
pub fn nat_transform_space(inst: &QuiverInstance, v: usize, w: usize, window: (i64, i64), policy: ShiftPolicy) -> Result<NatSpace> {
    let paths = count_paths(inst.quiver(), v, w)?;
    let mut tc = TestCategory::new(inst, window)?;
    let mut basis = solve_nat(inst, &tc, v, w, policy)?;
    let mut enlarged = false;
    if basis.len() > paths {
        tc = TestCategory::new(inst, (window.0 - 1, window.1 + 1))?;
        basis = solve_nat(inst, &tc, v, w, policy)?;
        enlarged = true;
    }
    let mut rechecked = true;
    for (k, eta) in basis.iter().enumerate() {
        rechecked &= recheck(inst, &tc, eta, 16, 0x5EED ^ (k as u64))?;
    }
    Ok(NatSpace { under_constrained: basis.len() > paths, basis, window: tc.window, paths, enlarged, rechecked })
}

/// `φ(p)`: the transformation `V ↦ V_p` on the test category.
pub fn realize_path(inst: &QuiverInstance, p: &Path, window: (i64, i64)) -> NatTransformation {
    let comps = (window.0..=window.1)
        .flat_map(|s| inst.reps().iter().enumerate().map(move |(i, r)| ((i, s), r.path_map(p))))
        .collect();
    NatTransformation { source: p.source, target: p.target, comps }
}

/// Is `eta` natural with respect to every basis morphism of `tc`?
pub fn is_natural(inst: &QuiverInstance, tc: &TestCategory, eta: &NatTransformation) -> bool {
    let (v, w) = (eta.source, eta.target);
    tc.homs.iter().all(|(&(i, j), basis)| {
        (tc.window.0..=tc.window.1)
            .all(|s| basis.iter().all(|f| eta.comps[&(j, s)].mul(&f.comps[v]) == f.comps[w].mul(&eta.comps[&(i, s)])))
    }) && inst.reps().len() * (tc.window.1 - tc.window.0 + 1) as usize == eta.comps.len()
}

#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub algebra_dim: usize,
    /// `(v, w, dim Hom(F_v, F_w), paths v -> w)`.
    pub pairs: Vec<(usize, usize, usize, usize)>,
    pub natural: bool,
    pub injective: bool,
    pub surjective: bool,
    pub multiplicative: bool,
    pub associative: bool,
    pub under_constrained: bool,
    /// A pair of basis paths whose product is not respected.
    pub counterexample: Option<(String, String)>,
}

impl Reconstruction {
    pub fn total_dim(&self) -> usize {
        self.pairs.iter().map(|p| p.2).sum()
    }

    pub fn holds(&self) -> bool {
        self.natural
            && self.injective
            && self.surjective
            && self.multiplicative
            && self.associative
            && !self.under_constrained
            && self.total_dim() == self.algebra_dim
    }
}

/// Check that `φ: kQ -> ⊕_{v,w} Hom(F_v, F_w)` is an algebra isomorphism.
pub fn verify_reconstruction(inst: &QuiverInstance, window: (i64, i64), policy: ShiftPolicy) -> Result<Reconstruction> {
    let q = inst.quiver();
    let field = inst.field();
    let alg = PathAlgebra::new(q.clone(), field)?;
    let tc = TestCategory::new(inst, window)?;
    let realized: Vec<NatTransformation> = alg.basis.iter().map(|p| realize_path(inst, p, window)).collect();
    let natural = realized.iter().all(|eta| is_natural(inst, &tc, eta));

    let n = q.num_vertices();
    let mut pairs = Vec::new();
    let mut injective = true;
    let mut surjective = true;
    let mut under_constrained = false;
    for v in 0..n {
        for w in 0..n {
            let space = nat_transform_space(inst, v, w, window, policy)?;
            under_constrained |= space.under_constrained;
            let here: Vec<Vec<Scalar>> = realized.iter().filter(|e| e.source == v && e.target == w).map(|e| e.vectorize()).collect();
            let len = here.first().map(|x| x.len()).unwrap_or(0);
            injective &= rank_of_vectors(field, len, &here) == here.len();
            // Each solution must lie in the span of the realized paths.
            if space.window == window {
                for eta in &space.basis {
                    let mut with = here.clone();
                    with.push(eta.vectorize());
                    surjective &= rank_of_vectors(field, len, &with) == here.len();
                }
            }
            surjective &= space.dim() == here.len() && space.rechecked;
            pairs.push((v, w, space.dim(), space.paths));
        }
    }

    let mut multiplicative = true;
    let mut counterexample = None;
    for (i, a) in realized.iter().enumerate() {
        for (j, b) in realized.iter().enumerate() {
            let ok = match (a.compose(b), alg.table[i][j]) {
                (Some(c), Some(k)) => c == realized[k],
                (Some(c), None) => c.is_zero(),
                (None, k) => k.is_none(),
            };
            if !ok {
                multiplicative = false;
                counterexample.get_or_insert_with(|| (alg.basis[i].display(q), alg.basis[j].display(q)));
            }
        }
    }
    let associative = alg.is_associative()
        && realized.iter().all(|a| {
            realized.iter().all(|b| {
                realized.iter().all(|c| {
                    let left = a.compose(b).and_then(|ab| ab.compose(c));
                    let right = b.compose(c).and_then(|bc| a.compose(&bc));
                    left == right
                })
            })
        });
    Ok(Reconstruction { algebra_dim: alg.dim(), pairs, natural, injective, surjective, multiplicative, associative, under_constrained, counterexample })
}

#[derive(Clone, Debug)]
pub struct BaseChange {
    pub source_dim: usize,
    pub target_dim: usize,
    /// `ψ(φ_k(p)) = φ_{k'}(p)` for every path.
    pub coherent: bool,
    /// Structure constants agree.
    pub tables_agree: bool,
    pub bijective: bool,
}

impl BaseChange {
    pub fn holds(&self) -> bool {
        self.coherent && self.tables_agree && self.bijective
    }
}

/// `ψ: A(T, k) ⊗ k' -> A(T, k')`, computed by re-solving over `k'`.
pub fn base_change(inst: &QuiverInstance, target: Field, window: (i64, i64), policy: ShiftPolicy) -> Result<BaseChange> {
    let ext = QuiverInstance::new(inst.quiver().clone(), target, None)?;
    let small = verify_reconstruction(inst, window, policy)?;
    let big = verify_reconstruction(&ext, window, policy)?;
    let alg = PathAlgebra::new(inst.quiver().clone(), inst.field())?;
    let mut coherent = inst.reps().len() == ext.reps().len();
    if coherent {
        for p in &alg.basis {
            let a = realize_path(inst, p, window);
            let b = realize_path(&ext, p, window);
            for (k, m) in &a.comps {
                coherent &= m.embed(target)? == b.comps[k];
            }
        }
    }
    let ext_alg = PathAlgebra::new(inst.quiver().clone(), target)?;
    Ok(BaseChange {
        source_dim: small.total_dim(),
        target_dim: big.total_dim(),
        coherent,
        tables_agree: alg.table == ext_alg.table && small.multiplicative && big.multiplicative,
        bijective: small.holds() && big.holds() && small.total_dim() == big.total_dim(),
    })
}

/// For restriction to a full subquiver: the realized paths of the subquiver,
/// evaluated on restricted pool members, agree with the realized image paths
/// on the original members.
pub fn pullback_consistent(inst: &QuiverInstance, keep: &[usize]) -> Result<bool> {
    let q = inst.quiver();
    let (sub, vmap, amap) = q.full_subquiver(keep)?;
    let sub = Arc::new(sub);
    for p in sub.paths()? {
        let image = Path { source: vmap[p.source], target: vmap[p.target], arrows: p.arrows.iter().map(|&a| amap[a]).collect() };
        for r in inst.reps() {
            if r.restrict(sub.clone(), &vmap, &amap).path_map(&p) != r.path_map(&image) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    const F2: Field = Field::Prime(2);
    const W: (i64, i64) = (-1, 1);

    fn inst(q: Quiver, f: Field) -> QuiverInstance {
        QuiverInstance::new(Arc::new(q), f, None).unwrap()
    }

    #[test]
    fn abstract_algebras() {
        let one = PathAlgebra::new(Arc::new(Quiver::linear(1)), F2).unwrap();
        assert_eq!(one.dim(), 1);
        let a2 = PathAlgebra::new(Arc::new(Quiver::linear(2)), F2).unwrap();
        assert_eq!(a2.dim(), 3);
        let labels = a2.labels();
        let (e1, a) = (labels.iter().position(|l| l == "e_1").unwrap(), labels.iter().position(|l| l.len() == 1).unwrap());
        assert_eq!(a2.table[a][e1], Some(a));
        assert_eq!(a2.table[e1][a], None);
        assert!(a2.is_associative() && a2.idempotents_sum_to_one());
        let a3 = PathAlgebra::new(Arc::new(Quiver::linear(3)), F2).unwrap();
        assert_eq!(a3.dim(), 6);
        assert!(a3.is_associative() && a3.idempotents_sum_to_one());
    }

    #[test]
    fn a2_hom_dimensions() {
        let i = inst(Quiver::linear(2), F2);
        let d = |v, w| nat_transform_space(&i, v, w, W, ShiftPolicy::Compatible).unwrap();
        assert_eq!((d(0, 1).dim(), d(1, 0).dim(), d(0, 0).dim(), d(1, 1).dim()), (1, 0, 1, 1));
        assert!(d(0, 1).rechecked && !d(0, 1).under_constrained);
    }

    #[test]
    fn plain_naturality_is_under_constrained() {
        let i = inst(Quiver::linear(2), F2);
        let s = nat_transform_space(&i, 0, 0, W, ShiftPolicy::Plain).unwrap();
        assert!(s.enlarged && s.under_constrained);
        assert_eq!(s.dim(), 5);
    }

    #[test]
    fn realized_paths() {
        let i = inst(Quiver::linear(2), F2);
        let tc = TestCategory::new(&i, W).unwrap();
        let a = &i.quiver().paths().unwrap().into_iter().find(|p| p.len() == 1).unwrap();
        let eta = realize_path(&i, a, W);
        assert!(is_natural(&i, &tc, &eta));
        let unit = i.reps().iter().position(|r| r.dims() == [1, 1]).unwrap();
        assert!(eta.comps[&(unit, 0)].is_identity());
        let s1 = i.reps().iter().position(|r| r.dims() == [1, 0]).unwrap();
        assert!(eta.comps[&(s1, 0)].is_zero());
        let e = realize_path(&i, &Path::trivial(0), W);
        assert!(e.comps.values().all(|m| m.is_identity()));
    }

    #[test]
    fn reconstruction() {
        for (q, f, dim) in [
            (Quiver::linear(1), F2, 1),
            (Quiver::linear(2), F2, 3),
            (Quiver::linear(3), Field::Rationals, 6),
            (Quiver::type_a(&[true, false]), F2, 5),
        ] {
            let r = verify_reconstruction(&inst(q, f), W, ShiftPolicy::Compatible).unwrap();
            assert!(r.holds(), "{r:?}");
            assert_eq!(r.total_dim(), dim);
        }
    }

    #[test]
    fn f2_to_f4() {
        let f4 = Field::gf(2, 2).unwrap();
        let b = base_change(&inst(Quiver::linear(2), F2), f4, W, ShiftPolicy::Compatible).unwrap();
        assert!(b.holds());
        assert_eq!((b.source_dim, b.target_dim), (3, 3));
    }

    #[test]
    fn restriction_pullback() {
        assert!(pullback_consistent(&inst(Quiver::linear(2), F2), &[0]).unwrap());
        assert!(pullback_consistent(&inst(Quiver::linear(3), F2), &[1, 2]).unwrap());
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(12))]
        #[test]
        fn any_type_a_orientation(forward in proptest::collection::vec(proptest::bool::ANY, 0..3)) {
            let q = Quiver::type_a(&forward);
            let paths = q.paths().unwrap().len();
            let r = verify_reconstruction(&inst(q, F2), W, ShiftPolicy::Compatible).unwrap();
            proptest::prop_assert!(r.holds());
            proptest::prop_assert_eq!(r.total_dim(), paths);
        }
    }
}
