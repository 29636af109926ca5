//! Krull–Schmidt decomposition by Fitting's lemma.
//!
//! For `f ∈ End(V)` and `N = dim V`, `V = ker f^N ⊕ im f^N` as
//! representations. Candidates are basis endomorphisms shifted by their
//! eigenvalues, then seeded random combinations. A summand is reported as
//! indecomposable only with a certificate that its endomorphism ring is
//! `k·1 ⊕ J` with `J` a nilpotent ideal; otherwise the status is `Undecided`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::rep::{hom_space, is_isomorphic, Rep, RepMorphism};
use crate::error::Result;
use crate::linalg::{rank_of_vectors, Field, Matrix, Scalar};

const RANDOM_DRAWS: usize = 64;
/// Eigenvalues over a finite field are found by trying every element.
const ROOT_SEARCH_LIMIT: u64 = 1 << 12;
const DIVISOR_SEARCH_LIMIT: u64 = 1 << 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecomposeStatus {
    /// Every summand carries a locality certificate.
    Complete,
    /// Some summand could be neither split nor certified indecomposable.
    Undecided,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Rep>,
    /// Isomorphism `⊕ summands -> V`.
    pub iso: RepMorphism,
    pub status: DecomposeStatus,
}

impl Decomposition {
    /// Summands grouped into isomorphism classes, with multiplicities.
    pub fn multiplicities(&self) -> Result<Vec<(Rep, usize)>> {
        let mut classes: Vec<(Rep, usize)> = Vec::new();
        'outer: for s in &self.summands {
            for (rep, count) in classes.iter_mut() {
                if is_isomorphic(rep, s)?.is_iso() {
                    *count += 1;
                    continue 'outer;
                }
            }
            classes.push((s.clone(), 1));
        }
        Ok(classes)
    }
}

pub fn decompose(v: &Rep) -> Result<Decomposition> {
    let mut pieces: Vec<(Rep, Vec<Matrix>, bool)> = Vec::new();
    if !v.is_zero() {
        let incl: Vec<Matrix> = v.dims().iter().map(|&d| Matrix::identity(v.field(), d)).collect();
        split_into(v, incl, &mut pieces)?;
    }
    pieces.sort_by(|a, b| b.0.total_dim().cmp(&a.0.total_dim()).then_with(|| a.0.dims().cmp(b.0.dims())));
    let field = v.field();
    let iso = RepMorphism {
        comps: (0..v.dims().len())
            .map(|vert| {
                let mut m = Matrix::zeros(field, v.dim(vert), 0);
                for (_, incl, _) in &pieces {
                    m = m.hstack(&incl[vert]);
                }
                m
            })
            .collect(),
    };
    let status = if pieces.iter().all(|p| p.2) { DecomposeStatus::Complete } else { DecomposeStatus::Undecided };
    Ok(Decomposition { summands: pieces.into_iter().map(|p| p.0).collect(), iso, status })
}

/// `Some(true)` for a certified indecomposable, `Some(false)` when a splitting
/// exists, `None` when neither could be established.
pub fn is_indecomposable(v: &Rep) -> Result<Option<bool>> {
    if v.is_zero() {
        return Ok(Some(false));
    }
    let d = decompose(v)?;
    Ok(match (d.summands.len(), d.status) {
        (1, DecomposeStatus::Complete) => Some(true),
        (1, DecomposeStatus::Undecided) => None,
        _ => Some(false),
    })
}

/// `incl[v]` embeds `w` into the original representation at vertex `v`.
fn split_into(w: &Rep, incl: Vec<Matrix>, out: &mut Vec<(Rep, Vec<Matrix>, bool)>) -> Result<()> {
    let end = hom_space(w, w)?;
    if let Some((kernel, image)) = find_split(w, &end)? {
        for bases in [kernel, image] {
            let sub = w.subrep(&bases)?;
            let sub_incl = incl.iter().zip(&bases).map(|(i, b)| i.mul(b)).collect();
            split_into(&sub, sub_incl, out)?;
        }
        return Ok(());
    }
    let local = certify_local(w, &end);
    out.push((w.clone(), incl, local));
    Ok(())
}

/// Bases (per vertex) of `ker g` and `im g` for a Fitting power `g` that is
/// neither zero nor invertible.
fn find_split(w: &Rep, end: &[RepMorphism]) -> Result<Option<(Vec<Matrix>, Vec<Matrix>)>> {
    if end.len() <= 1 {
        return Ok(None);
    }
    let f = w.field();
    for b in end {
        if let Some(s) = try_split(w, b) {
            return Ok(Some(s));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x0F17_71A6);
    for _ in 0..RANDOM_DRAWS {
        let coeffs: Vec<Scalar> = end.iter().map(|_| f.random(&mut rng)).collect();
        let m = RepMorphism::combine(f, end, &coeffs, w, w);
        if let Some(s) = try_split(w, &m) {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

fn try_split(w: &Rep, phi: &RepMorphism) -> Option<(Vec<Matrix>, Vec<Matrix>)> {
    let f = w.field();
    let n = w.total_dim() as u64;
    let total = phi.total_matrix(f);
    let mut shifts = eigenvalues(&total).unwrap_or_default();
    shifts.insert(0, f.zero());
    for lambda in shifts {
        let g = phi.add(&RepMorphism::identity(w).scale(&f.neg(&lambda))).pow(n);
        if g.is_zero() || g.is_iso() {
            continue;
        }
        let kernel = g.comps.iter().map(|c| c.kernel_matrix()).collect();
        let image = g.comps.iter().map(|c| c.image_matrix()).collect();
        return Some((kernel, image));
    }
    None
}

/// Certify `End(w) = k·1 ⊕ J` with `J = span{b - λ_b}` a nilpotent ideal.
fn certify_local(w: &Rep, end: &[RepMorphism]) -> bool {
    let f = w.field();
    if end.len() == 1 {
        return true;
    }
    let mut radical = Vec::new();
    for b in end {
        let Some(ev) = eigenvalues(&b.total_matrix(f)) else {
            return false;
        };
        if ev.len() != 1 {
            return false;
        }
        let r = b.add(&RepMorphism::identity(w).scale(&f.neg(&ev[0])));
        if !r.total_matrix(f).is_nilpotent() {
            return false;
        }
        radical.push(r);
    }
    let len = end[0].vectorize().len();
    let mut spanning: Vec<Vec<Scalar>> = radical.iter().map(|r| r.vectorize()).collect();
    let j_rank = rank_of_vectors(f, len, &spanning);
    spanning.push(RepMorphism::identity(w).vectorize());
    if rank_of_vectors(f, len, &spanning) != end.len() || j_rank + 1 != end.len() {
        return false;
    }
    spanning.pop();
    // J must be a two-sided ideal.
    let j_basis = independent(f, len, &radical);
    for x in &j_basis {
        for b in end {
            for prod in [x.compose(b), b.compose(x)] {
                let mut probe = spanning.clone();
                probe.push(prod.vectorize());
                if rank_of_vectors(f, len, &probe) != j_rank {
                    return false;
                }
            }
        }
    }
    // Powers of J shrink to zero.
    let mut power = j_basis.clone();
    for _ in 0..=w.total_dim() {
        if power.is_empty() {
            return true;
        }
        let mut next = Vec::new();
        for x in &power {
            for y in &j_basis {
                next.push(x.compose(y));
            }
        }
        power = independent(f, len, &next);
    }
    power.is_empty()
}

fn independent(f: Field, len: usize, ms: &[RepMorphism]) -> Vec<RepMorphism> {
    let mut keep: Vec<RepMorphism> = Vec::new();
    let mut vecs: Vec<Vec<Scalar>> = Vec::new();
    for m in ms {
        vecs.push(m.vectorize());
        if rank_of_vectors(f, len, &vecs) > keep.len() {
            keep.push(m.clone());
        } else {
            vecs.pop();
        }
    }
    keep
}

/// Distinct eigenvalues in the ground field; `None` if they could not be
/// determined within the search limits.
pub(crate) fn eigenvalues(m: &Matrix) -> Option<Vec<Scalar>> {
    let f = m.field();
    let n = m.rows();
    if n == 0 {
        return Some(Vec::new());
    }
    match f.order() {
        Some(q) if q <= ROOT_SEARCH_LIMIT => {
            let elems = f.elements()?;
            Some(
                elems
                    .into_iter()
                    .filter(|l| m.sub(&Matrix::scalar(f, n, l)).rank() < n)
                    .collect(),
            )
        }
        Some(_) => None,
        None => rational_eigenvalues(m),
    }
}

fn rat(s: &Scalar) -> BigRational {
    match s {
        Scalar::Rat(r) => r.clone(),
        Scalar::Fin(x) => BigRational::from_integer(BigInt::from(*x)),
    }
}

/// Coefficients `c_0, ..., c_n` of `det(xI - A)` by Faddeev–LeVerrier.
fn char_poly(m: &Matrix) -> Vec<BigRational> {
    let n = m.rows();
    let f = m.field();
    let mut c = alloc::vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    let mut mk = Matrix::zeros(f, n, n);
    for k in 1..=n {
        let coeff = Scalar::Rat(c[n - k + 1].clone());
        mk = m.mul(&mk).add(&Matrix::scalar(f, n, &coeff));
        let am = m.mul(&mk);
        let mut tr = BigRational::zero();
        for i in 0..n {
            tr += rat(am.get(i, i));
        }
        c[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
    }
    c
}

fn divisors(x: &BigInt) -> Option<Vec<BigInt>> {
    let x = x.abs().to_u64()?;
    if x > DIVISOR_SEARCH_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= x {
        if x % d == 0 {
            out.push(BigInt::from(d));
            if d * d != x {
                out.push(BigInt::from(x / d));
            }
        }
        d += 1;
    }
    Some(out)
}

fn rational_eigenvalues(m: &Matrix) -> Option<Vec<Scalar>> {
    let poly = char_poly(m);
    let lcm = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = poly.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let low = ints.iter().position(|c| !c.is_zero())?;
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(BigRational::zero());
    }
    let trimmed = &ints[low..];
    let lead = trimmed.last()?;
    if trimmed.len() > 1 {
        let ps = divisors(&trimmed[0])?;
        let qs = divisors(lead)?;
        for p in &ps {
            for q in &qs {
                for sign in [1, -1] {
                    let cand = BigRational::new(p * sign, q.clone());
                    if roots.contains(&cand) {
                        continue;
                    }
                    let mut acc = BigRational::zero();
                    for c in trimmed.iter().rev() {
                        acc = acc * &cand + BigRational::from_integer(c.clone());
                    }
                    if acc.is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    Some(roots.into_iter().map(Scalar::Rat).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use alloc::sync::Arc;

    fn check(v: &Rep) -> Decomposition {
        let d = decompose(v).unwrap();
        assert!(d.iso.is_iso());
        let sum = Rep::direct_sum(&d.summands).unwrap();
        assert!(d.iso.is_morphism(&sum, v));
        let mut dims = alloc::vec![0; v.dims().len()];
        for s in &d.summands {
            for (acc, x) in dims.iter_mut().zip(s.dims()) {
                *acc += x;
            }
        }
        assert_eq!(dims, v.dims());
        d
    }

    #[test]
    fn unit_plus_simple_splits() {
        for field in [Field::Prime(2), Field::Rationals, Field::Prime(5)] {
            let q = Arc::new(Quiver::linear(2));
            let unit = Rep::unit(q.clone(), field);
            let s1 = Rep::simple(q.clone(), field, 0);
            let d = check(&unit.sum(&s1).unwrap());
            assert_eq!(d.status, DecomposeStatus::Complete);
            assert_eq!(d.summands.len(), 2);
            assert_eq!(d.summands[0], unit);
            assert!(is_isomorphic(&d.summands[1], &s1).unwrap().is_iso());
        }
    }

    #[test]
    fn indecomposables_stay_whole() {
        let q = Arc::new(Quiver::linear(3));
        let f = Field::Prime(2);
        let p1 = Rep::projective(q.clone(), f, 0).unwrap();
        let d = check(&p1);
        assert_eq!(d.summands, alloc::vec![p1.clone()]);
        assert_eq!(is_indecomposable(&p1).unwrap(), Some(true));
    }

    #[test]
    fn doubled_summand() {
        let q = Arc::new(Quiver::linear(2));
        let f = Field::Rationals;
        let p1 = Rep::projective(q, f, 0).unwrap();
        let d = check(&p1.sum(&p1).unwrap());
        assert_eq!(d.summands.len(), 2);
        let m = d.multiplicities().unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].1, 2);
    }

    #[test]
    fn kronecker_with_f4_endomorphisms_is_undecided_over_f2() {
        // k^2 ⇉ k^2 with maps I and the companion matrix of x^2+x+1:
        // End = F_4, which is local but not of the form k·1 ⊕ J over F_2.
        let q = Arc::new(Quiver::new(&["1", "2"], &[("1", "2", "a"), ("1", "2", "b")]).unwrap());
        let f = Field::Prime(2);
        let c = Matrix::from_i64(f, &[&[0, 1], &[1, 1]]);
        let v = Rep::new(q, f, alloc::vec![2, 2], alloc::vec![Matrix::identity(f, 2), c]).unwrap();
        let d = check(&v);
        assert_eq!(d.summands.len(), 1);
        assert_eq!(d.status, DecomposeStatus::Undecided);
        assert_eq!(is_indecomposable(&v).unwrap(), None);
    }

    #[test]
    fn rational_eigenvalues_found() {
        let f = Field::Rationals;
        let m = Matrix::from_i64(f, &[&[2, 1], &[0, -3]]);
        let ev = eigenvalues(&m).unwrap();
        assert_eq!(ev, alloc::vec![f.from_i64(-3), f.from_i64(2)]);
        let half = Matrix::from_scalars(f, 1, 1, alloc::vec![f.from_ratio(1, 2).unwrap()]).unwrap();
        assert_eq!(eigenvalues(&half).unwrap(), alloc::vec![f.from_ratio(1, 2).unwrap()]);
    }
}
