use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Path, Quiver};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

/// A finite-dimensional representation: one vector space per vertex and one
/// matrix per arrow, of shape `dims[target] x dims[source]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rep {
    quiver: Arc<Quiver>,
    field: Field,
    dims: Vec<usize>,
    mats: Vec<Matrix>,
}

/// A family of linear maps, one per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RepMorphism {
    pub comps: Vec<Matrix>,
}

impl Rep {
    pub fn new(quiver: Arc<Quiver>, field: Field, dims: Vec<usize>, mats: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.num_vertices() || mats.len() != quiver.num_arrows() {
            return Err(Error::InvalidRep(alloc::format!(
                "{} dims / {} matrices for {} vertices / {} arrows",
                dims.len(),
                mats.len(),
                quiver.num_vertices(),
                quiver.num_arrows()
            )));
        }
        for (a, m) in quiver.arrows().iter().zip(&mats) {
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::InvalidRep(alloc::format!(
                    "arrow {} has a {}x{} matrix, expected {}x{}",
                    a.label,
                    m.rows(),
                    m.cols(),
                    dims[a.target],
                    dims[a.source]
                )));
            }
        }
        Ok(Rep { quiver, field, dims, mats })
    }

    pub fn zero(quiver: Arc<Quiver>, field: Field) -> Self {
        let dims = alloc::vec![0; quiver.num_vertices()];
        let mats = quiver.arrows().iter().map(|_| Matrix::zeros(field, 0, 0)).collect();
        Rep { quiver, field, dims, mats }
    }

    /// The tensor unit: `k` at every vertex, identities on arrows.
    pub fn unit(quiver: Arc<Quiver>, field: Field) -> Self {
        let dims = alloc::vec![1; quiver.num_vertices()];
        let mats = quiver.arrows().iter().map(|_| Matrix::identity(field, 1)).collect();
        Rep { quiver, field, dims, mats }
    }

    pub fn simple(quiver: Arc<Quiver>, field: Field, v: usize) -> Self {
        let mut dims = alloc::vec![0; quiver.num_vertices()];
        dims[v] = 1;
        Self::with_zero_maps(quiver, field, dims)
    }

    /// Arrow maps all zero.
    pub fn with_zero_maps(quiver: Arc<Quiver>, field: Field, dims: Vec<usize>) -> Self {
        let mats = quiver.arrows().iter().map(|a| Matrix::zeros(field, dims[a.target], dims[a.source])).collect();
        Rep { quiver, field, dims, mats }
    }

    /// Indecomposable projective at `v`: basis at `w` is the set of paths `v -> w`.
    pub fn projective(quiver: Arc<Quiver>, field: Field, v: usize) -> Result<Self> {
        let paths: Vec<Path> = quiver.paths()?.into_iter().filter(|p| p.source == v).collect();
        let n = quiver.num_vertices();
        let basis: Vec<Vec<&Path>> = (0..n).map(|w| paths.iter().filter(|p| p.target == w).collect()).collect();
        let dims = basis.iter().map(|b| b.len()).collect::<Vec<_>>();
        let mut mats = Vec::new();
        for (ai, a) in quiver.arrows().iter().enumerate() {
            let mut m = Matrix::zeros(field, dims[a.target], dims[a.source]);
            for (col, p) in basis[a.source].iter().enumerate() {
                let mut ext = p.arrows.clone();
                ext.push(ai);
                let row = basis[a.target].iter().position(|q| q.arrows == ext).expect("extended path is enumerated");
                m.set(row, col, field.one());
            }
            mats.push(m);
        }
        Ok(Rep { quiver, field, dims, mats })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn mat(&self, arrow: usize) -> &Matrix {
        &self.mats[arrow]
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Vertices with nonzero space.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dims.len()).filter(|&v| self.dims[v] > 0).collect()
    }

    fn same_category(&self, other: &Rep) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.quiver != other.quiver {
            return Err(Error::InvalidRep("representations of different quivers".into()));
        }
        Ok(())
    }

    /// Vertex-wise tensor product; arrow maps are Kronecker products.
    pub fn tensor(&self, other: &Rep) -> Result<Rep> {
        self.same_category(other)?;
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a * b).collect();
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| a.kronecker(b)).collect();
        Ok(Rep { quiver: self.quiver.clone(), field: self.field, dims, mats })
    }

    pub fn direct_sum(parts: &[Rep]) -> Result<Rep> {
        let first = parts.first().ok_or_else(|| Error::InvalidRep("empty direct sum".into()))?;
        for p in parts {
            first.same_category(p)?;
        }
        let n = first.quiver.num_vertices();
        let dims = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let mats = (0..first.quiver.num_arrows())
            .map(|a| Matrix::block_diag(first.field, &parts.iter().map(|p| p.mats[a].clone()).collect::<Vec<_>>()))
            .collect();
        Ok(Rep { quiver: first.quiver.clone(), field: first.field, dims, mats })
    }

    pub fn sum(&self, other: &Rep) -> Result<Rep> {
        Rep::direct_sum(&[self.clone(), other.clone()])
    }

    /// Subrepresentation spanned at each vertex by the columns of `bases[v]`
    /// (assumed independent and closed under the arrow maps).
    pub fn subrep(&self, bases: &[Matrix]) -> Result<Rep> {
        let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
        let mut mats = Vec::new();
        for (ai, a) in self.quiver.arrows().iter().enumerate() {
            let image = self.mats[ai].mul(&bases[a.source]);
            let m = bases[a.target]
                .solve_matrix(&image)?
                .ok_or_else(|| Error::InvalidRep(alloc::format!("subspace not stable under arrow {}", a.label)))?;
            mats.push(m);
        }
        Rep::new(self.quiver.clone(), self.field, dims, mats)
    }

    /// Quotient by the subrepresentation spanned by `bases`, with the
    /// projection `self -> quotient`.
    pub fn quotient(&self, bases: &[Matrix]) -> Result<(Rep, RepMorphism)> {
        let f = self.field;
        let mut proj = Vec::new();
        let mut sections = Vec::new();
        for (v, b) in bases.iter().enumerate() {
            let (p, s) = complement(f, self.dims[v], b);
            proj.push(p);
            sections.push(s);
        }
        let dims: Vec<usize> = proj.iter().map(|p| p.rows()).collect();
        let mats = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| proj[a.target].mul(&self.mats[ai]).mul(&sections[a.source]))
            .collect();
        let q = Rep::new(self.quiver.clone(), f, dims, mats)?;
        Ok((q, RepMorphism { comps: proj }))
    }

    /// Relabel along a quiver automorphism: `(σV)_{σ(v)} = V_v`.
    pub fn permute(&self, vertex_perm: &[usize], arrow_perm: &[usize]) -> Rep {
        let mut dims = alloc::vec![0; self.dims.len()];
        for (v, &d) in self.dims.iter().enumerate() {
            dims[vertex_perm[v]] = d;
        }
        let mut mats = alloc::vec![Matrix::zeros(self.field, 0, 0); self.mats.len()];
        for (a, m) in self.mats.iter().enumerate() {
            mats[arrow_perm[a]] = m.clone();
        }
        Rep { quiver: self.quiver.clone(), field: self.field, dims, mats }
    }

    /// Restriction to a full subquiver given by its vertex and arrow inclusions.
    pub fn restrict(&self, sub: Arc<Quiver>, vertex_map: &[usize], arrow_map: &[usize]) -> Rep {
        let dims = vertex_map.iter().map(|&v| self.dims[v]).collect();
        let mats = arrow_map.iter().map(|&a| self.mats[a].clone()).collect();
        Rep { quiver: sub, field: self.field, dims, mats }
    }

    /// Composite of the arrow maps along `p`, as a map `V_source -> V_target`.
    pub fn path_map(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.field, self.dims[p.source]);
        for &a in &p.arrows {
            m = self.mats[a].mul(&m);
        }
        m
    }

    /// Same representation with scalars pushed into an extension field.
    pub fn extend_scalars(&self, target: Field) -> Result<Rep> {
        let mats = self.mats.iter().map(|m| m.embed(target)).collect::<Result<Vec<_>>>()?;
        Ok(Rep { quiver: self.quiver.clone(), field: target, dims: self.dims.clone(), mats })
    }

    pub fn random<R: Rng + ?Sized>(quiver: Arc<Quiver>, field: Field, dims: Vec<usize>, rng: &mut R) -> Rep {
        let mats = quiver.arrows().iter().map(|a| Matrix::random(field, dims[a.target], dims[a.source], rng)).collect();
        Rep { quiver, field, dims, mats }
    }
}

/// For a column basis `b` of a subspace of `k^n`: a projection `k^n -> k^n/b`
/// and a section of it, both relative to a completion of `b` by standard vectors.
pub(crate) fn complement(f: Field, n: usize, b: &Matrix) -> (Matrix, Matrix) {
    let full = b.hstack(&Matrix::identity(f, n));
    let piv = full.echelon().pivots;
    let extra: Vec<usize> = piv.iter().copied().filter(|&c| c >= b.cols()).collect();
    let section = full.select_columns(&extra);
    let basis = b.hstack(&section);
    let inv = basis.inverse().expect("completed basis is invertible");
    let proj = inv.block(b.cols(), 0, extra.len(), n);
    (proj, section)
}

impl RepMorphism {
    pub fn identity(v: &Rep) -> Self {
        RepMorphism { comps: v.dims.iter().map(|&d| Matrix::identity(v.field, d)).collect() }
    }

    pub fn zero(src: &Rep, tgt: &Rep) -> Self {
        RepMorphism { comps: src.dims.iter().zip(&tgt.dims).map(|(&s, &t)| Matrix::zeros(src.field, t, s)).collect() }
    }

    /// Do the components intertwine the arrow maps of `src` and `tgt`?
    pub fn is_morphism(&self, src: &Rep, tgt: &Rep) -> bool {
        if self.comps.len() != src.dims.len() {
            return false;
        }
        for (v, c) in self.comps.iter().enumerate() {
            if c.shape() != (tgt.dims[v], src.dims[v]) {
                return false;
            }
        }
        src.quiver.arrows().iter().enumerate().all(|(ai, a)| {
            self.comps[a.target].mul(&src.mats[ai]) == tgt.mats[ai].mul(&self.comps[a.source])
        })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RepMorphism) -> RepMorphism {
        RepMorphism { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn add(&self, other: &RepMorphism) -> RepMorphism {
        RepMorphism { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> RepMorphism {
        RepMorphism { comps: self.comps.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn neg(&self) -> RepMorphism {
        RepMorphism { comps: self.comps.iter().map(|a| a.neg()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(|c| c.is_invertible())
    }

    pub fn inverse(&self) -> Option<RepMorphism> {
        self.comps.iter().map(|c| c.inverse()).collect::<Option<Vec<_>>>().map(|comps| RepMorphism { comps })
    }

    pub fn pow(&self, e: u64) -> RepMorphism {
        RepMorphism { comps: self.comps.iter().map(|c| c.pow(e)).collect() }
    }

    pub fn direct_sum(parts: &[RepMorphism]) -> RepMorphism {
        let n = parts[0].comps.len();
        let field = parts[0].comps[0].field();
        RepMorphism {
            comps: (0..n)
                .map(|v| Matrix::block_diag(field, &parts.iter().map(|p| p.comps[v].clone()).collect::<Vec<_>>()))
                .collect(),
        }
    }

    /// Concatenate all components into one vector.
    pub fn vectorize(&self) -> Vec<Scalar> {
        self.comps.iter().flat_map(|c| c.entries().iter().cloned()).collect()
    }

    /// Linear combination of `basis` with coefficients `coeffs`.
    pub fn combine(field: Field, basis: &[RepMorphism], coeffs: &[Scalar], src: &Rep, tgt: &Rep) -> RepMorphism {
        let mut acc = RepMorphism::zero(src, tgt);
        for (b, c) in basis.iter().zip(coeffs) {
            if !field.is_zero(c) {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }

    /// Block-diagonal matrix of all components: the induced linear map on `⊕_v V_v`.
    pub fn total_matrix(&self, field: Field) -> Matrix {
        Matrix::block_diag(field, &self.comps)
    }
}

/// Basis of `Hom(V, W)`: the solution space of `X_j V_a = W_a X_i` over all
/// arrows `a: i -> j`.
pub fn hom_space(v: &Rep, w: &Rep) -> Result<Vec<RepMorphism>> {
    v.same_category(w)?;
    let f = v.field;
    let q = &v.quiver;
    let n = q.num_vertices();
    let mut offsets = Vec::with_capacity(n + 1);
    let mut total = 0;
    for vert in 0..n {
        offsets.push(total);
        total += w.dims[vert] * v.dims[vert];
    }
    let idx = |vert: usize, r: usize, c: usize| offsets[vert] + r * v.dims[vert] + c;

    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (ai, a) in q.arrows().iter().enumerate() {
        let (i, j) = (a.source, a.target);
        let va = &v.mats[ai];
        let wa = &w.mats[ai];
        for r in 0..w.dims[j] {
            for c in 0..v.dims[i] {
                let mut row = alloc::vec![f.zero(); total];
                // (X_j V_a)[r, c] = Σ_k X_j[r, k] V_a[k, c]
                for k in 0..v.dims[j] {
                    let x = idx(j, r, k);
                    row[x] = f.add(&row[x], va.get(k, c));
                }
                // -(W_a X_i)[r, c] = -Σ_k W_a[r, k] X_i[k, c]
                for k in 0..w.dims[i] {
                    let x = idx(i, k, c);
                    row[x] = f.sub(&row[x], wa.get(r, k));
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows(f, rows, total)?;
    let kernel = system.kernel();
    Ok(kernel
        .into_iter()
        .map(|vec| RepMorphism {
            comps: (0..n)
                .map(|vert| {
                    let start = offsets[vert];
                    let len = w.dims[vert] * v.dims[vert];
                    Matrix::from_scalars(f, w.dims[vert], v.dims[vert], vec[start..start + len].to_vec())
                        .expect("block has the declared size")
                })
                .collect(),
        })
        .collect())
}

/// Outcome of an isomorphism test. `Undecided` only arises when the search
/// budget runs out before an isomorphism is found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    Iso(RepMorphism),
    NotIso,
    Undecided,
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Iso(_))
    }
}

/// Exhaustive over `Hom(V, W)` when it has at most this many elements.
const EXHAUSTIVE_ISO_LIMIT: u64 = 1 << 12;
const RANDOM_ISO_DRAWS: usize = 64;

pub fn is_isomorphic(v: &Rep, w: &Rep) -> Result<IsoVerdict> {
    v.same_category(w)?;
    if v.dims != w.dims {
        return Ok(IsoVerdict::NotIso);
    }
    if v.is_zero() {
        return Ok(IsoVerdict::Iso(RepMorphism::identity(v)));
    }
    if v == w {
        return Ok(IsoVerdict::Iso(RepMorphism::identity(v)));
    }
    let f = v.field;
    let basis = hom_space(v, w)?;
    // An iso V -> W gives Hom(V, W) ≅ End(V) ≅ Hom(W, V).
    if basis.len() != hom_space(v, v)?.len() || basis.len() != hom_space(w, v)?.len() {
        return Ok(IsoVerdict::NotIso);
    }
    let d = basis.len();
    if let Some(q) = f.order() {
        if (q as u128).pow(d as u32) <= EXHAUSTIVE_ISO_LIMIT as u128 {
            let elems = f.elements().expect("finite field");
            let mut coeffs = alloc::vec![0usize; d];
            loop {
                let c: Vec<Scalar> = coeffs.iter().map(|&i| elems[i].clone()).collect();
                let m = RepMorphism::combine(f, &basis, &c, v, w);
                if m.is_iso() {
                    return Ok(IsoVerdict::Iso(m));
                }
                // odometer
                let mut k = 0;
                loop {
                    if k == d {
                        return Ok(IsoVerdict::NotIso);
                    }
                    coeffs[k] += 1;
                    if coeffs[k] < elems.len() {
                        break;
                    }
                    coeffs[k] = 0;
                    k += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x150_150);
    for _ in 0..RANDOM_ISO_DRAWS {
        let c: Vec<Scalar> = (0..d).map(|_| f.random(&mut rng)).collect();
        let m = RepMorphism::combine(f, &basis, &c, v, w);
        if m.is_iso() {
            return Ok(IsoVerdict::Iso(m));
        }
    }
    Ok(IsoVerdict::Undecided)
}

/// `Ext^1(V, W)` from the standard two-term projective resolution
/// `0 -> ⊕_{a:i->j} P_j ⊗ V_i -> ⊕_i P_i ⊗ V_i -> V -> 0`. Applying
/// `Hom(-, W)` gives `δ: ⊕_i Hom(V_i, W_i) -> ⊕_{a:i->j} Hom(V_i, W_j)`,
/// `(f_i) ↦ (W_a f_i - f_j V_a)`; `Hom(V, W) = ker δ` and `Ext^1 = coker δ`.
#[derive(Clone, Debug)]
pub struct Ext1 {
    pub dim: usize,
    /// The matrix of `δ`.
    pub delta: Matrix,
    /// Cocycles (one matrix `V_i -> W_j` per arrow) whose classes form a basis.
    pub basis: Vec<Vec<Matrix>>,
}

pub fn ext1(v: &Rep, w: &Rep) -> Result<Ext1> {
    v.same_category(w)?;
    let f = v.field;
    let q = v.quiver.clone();
    q.topological_order()?;
    let n = q.num_vertices();
    let mut src_off = Vec::new();
    let mut src_total = 0;
    for vert in 0..n {
        src_off.push(src_total);
        src_total += w.dims[vert] * v.dims[vert];
    }
    let mut tgt_off = Vec::new();
    let mut tgt_total = 0;
    for a in q.arrows() {
        tgt_off.push(tgt_total);
        tgt_total += w.dims[a.target] * v.dims[a.source];
    }
    let mut delta = Matrix::zeros(f, tgt_total, src_total);
    for (ai, a) in q.arrows().iter().enumerate() {
        let (i, j) = (a.source, a.target);
        for r in 0..w.dims[j] {
            for c in 0..v.dims[i] {
                let row = tgt_off[ai] + r * v.dims[i] + c;
                // (W_a f_i)[r, c] = Σ_k W_a[r,k] f_i[k,c]
                for k in 0..w.dims[i] {
                    let col = src_off[i] + k * v.dims[i] + c;
                    let val = f.add(delta.get(row, col), w.mats[ai].get(r, k));
                    delta.set(row, col, val);
                }
                // -(f_j V_a)[r, c] = -Σ_k f_j[r,k] V_a[k,c]
                for k in 0..v.dims[j] {
                    let col = src_off[j] + r * v.dims[j] + k;
                    let val = f.sub(delta.get(row, col), v.mats[ai].get(k, c));
                    delta.set(row, col, val);
                }
            }
        }
    }
    let image = delta.image_matrix();
    let (_, section) = complement(f, tgt_total, &image);
    let basis = section
        .columns()
        .into_iter()
        .map(|col| {
            q.arrows()
                .iter()
                .enumerate()
                .map(|(ai, a)| {
                    let len = w.dims[a.target] * v.dims[a.source];
                    Matrix::from_scalars(f, w.dims[a.target], v.dims[a.source], col[tgt_off[ai]..tgt_off[ai] + len].to_vec())
                        .expect("block size")
                })
                .collect()
        })
        .collect::<Vec<Vec<Matrix>>>();
    Ok(Ext1 { dim: basis.len(), delta, basis })
}

impl Ext1 {
    /// Middle term `E` of the extension `0 -> W -> E -> V -> 0` classified by
    /// the cocycle `g`: `E_i = W_i ⊕ V_i`, `E_a = [[W_a, g_a], [0, V_a]]`.
    pub fn extension(v: &Rep, w: &Rep, cocycle: &[Matrix]) -> Result<Rep> {
        v.same_category(w)?;
        let f = v.field;
        let q = v.quiver.clone();
        let dims: Vec<usize> = (0..q.num_vertices()).map(|i| w.dims[i] + v.dims[i]).collect();
        let mut mats = Vec::new();
        for (ai, a) in q.arrows().iter().enumerate() {
            let mut m = Matrix::zeros(f, dims[a.target], dims[a.source]);
            m.set_block(0, 0, &w.mats[ai]);
            m.set_block(0, w.dims[a.source], &cocycle[ai]);
            m.set_block(w.dims[a.target], w.dims[a.source], &v.mats[ai]);
            mats.push(m);
        }
        Rep::new(q, f, dims, mats)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Arc<Quiver> {
        Arc::new(Quiver::linear(2))
    }

    const F2: Field = Field::Prime(2);

    #[test]
    fn standard_reps_on_a2() {
        let q = a2();
        let unit = Rep::unit(q.clone(), F2);
        assert_eq!(unit.dims(), &[1, 1]);
        assert!(unit.mat(0).is_identity());
        let p2 = Rep::projective(q.clone(), F2, 1).unwrap();
        assert_eq!(p2, Rep::simple(q.clone(), F2, 1));
        let p1 = Rep::projective(q.clone(), F2, 0).unwrap();
        assert_eq!(p1, unit);
    }

    #[test]
    fn tensor_on_a2() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), F2, 0);
        let s2 = Rep::simple(q.clone(), F2, 1);
        assert!(s1.tensor(&s2).unwrap().is_zero());
        let unit = Rep::unit(q.clone(), F2);
        let p = Rep::projective(q, F2, 0).unwrap().sum(&s1).unwrap();
        assert!(is_isomorphic(&unit.tensor(&p).unwrap(), &p).unwrap().is_iso());
    }

    #[test]
    fn hom_dimensions() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), F2, 0);
        let s2 = Rep::simple(q.clone(), F2, 1);
        assert_eq!(hom_space(&s1, &s1).unwrap().len(), 1);
        assert_eq!(hom_space(&s1, &s2).unwrap().len(), 0);
        let unit = Rep::unit(q.clone(), F2);
        assert_eq!(hom_space(&unit, &unit).unwrap().len(), 1);
        let q3 = Arc::new(Quiver::type_a(&[true, false, false]));
        let u3 = Rep::unit(q3, Field::Rationals);
        assert_eq!(hom_space(&u3, &u3).unwrap().len(), 1);
    }

    #[test]
    fn hom_basis_elements_are_morphisms() {
        let q = Arc::new(Quiver::linear(3));
        let p1 = Rep::projective(q.clone(), F2, 0).unwrap();
        let p2 = Rep::projective(q.clone(), F2, 1).unwrap();
        let basis = hom_space(&p2, &p1).unwrap();
        assert_eq!(basis.len(), 1);
        assert!(basis.iter().all(|m| m.is_morphism(&p2, &p1)));
    }

    #[test]
    fn ext_on_a2() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), F2, 0);
        let s2 = Rep::simple(q.clone(), F2, 1);
        let e = ext1(&s1, &s2).unwrap();
        assert_eq!(e.dim, 1);
        assert_eq!(ext1(&s2, &s1).unwrap().dim, 0);
        let p1 = Rep::projective(q.clone(), F2, 0).unwrap();
        for x in [&s1, &s2, &p1] {
            assert_eq!(ext1(&p1, x).unwrap().dim, 0);
            assert_eq!(ext1(&s2, x).unwrap().dim, 0);
        }
        // The nonsplit extension of S1 by S2 is P1.
        let mid = Ext1::extension(&s1, &s2, &e.basis[0]).unwrap();
        assert!(is_isomorphic(&mid, &p1).unwrap().is_iso());
    }

    #[test]
    fn quotient_and_subrep() {
        let q = a2();
        let p1 = Rep::projective(q.clone(), F2, 0).unwrap();
        // S2 sits inside P1 at vertex 2.
        let bases = alloc::vec![Matrix::zeros(F2, 1, 0), Matrix::identity(F2, 1)];
        let sub = p1.subrep(&bases).unwrap();
        assert_eq!(sub, Rep::simple(q.clone(), F2, 1));
        let (quo, proj) = p1.quotient(&bases).unwrap();
        assert_eq!(quo, Rep::simple(q.clone(), F2, 0));
        assert!(proj.is_morphism(&p1, &quo));
        let bad = alloc::vec![Matrix::identity(F2, 1), Matrix::zeros(F2, 1, 0)];
        assert!(p1.subrep(&bad).is_err());
    }

    #[test]
    fn iso_detection() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), F2, 0);
        let s2 = Rep::simple(q.clone(), F2, 1);
        let unit = Rep::unit(q.clone(), F2);
        assert_eq!(is_isomorphic(&s1.sum(&s2).unwrap(), &unit).unwrap(), IsoVerdict::NotIso);
        let a = s1.sum(&s2).unwrap();
        let b = s2.sum(&s1).unwrap();
        assert_eq!(a.dims(), b.dims());
        assert!(is_isomorphic(&a, &b).unwrap().is_iso());
    }
}
