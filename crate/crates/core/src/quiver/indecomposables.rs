//! Lists of indecomposable representations.
//!
//! Type `A_n` quivers (any orientation) have exactly the `n(n+1)/2` interval
//! modules, built directly, and so do disjoint unions of them componentwise. Other quivers are searched exhaustively over a
//! finite field up to a total-dimension bound.

use alloc::sync::Arc;
use alloc::vec::Vec;

use super::decompose::is_indecomposable;
use super::rep::{is_isomorphic, IsoVerdict, Rep};
use super::Quiver;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completeness {
    /// The full list, by the classification of type `A` representations.
    Complete,
    /// Every indecomposable of total dimension at most the bound.
    UpToBound(usize),
    /// Search finished but some candidates could not be decided.
    Partial(usize),
}

#[derive(Clone, Debug)]
pub struct Indecomposables {
    pub reps: Vec<Rep>,
    pub completeness: Completeness,
}

/// `M_{[i, j]}`: `k` on positions `i..=j` of `order`, identity on arrows
/// inside the interval, zero elsewhere.
pub fn interval_module(q: Arc<Quiver>, field: Field, order: &[usize], i: usize, j: usize) -> Rep {
    let mut dims = alloc::vec![0; q.num_vertices()];
    for &v in &order[i..=j] {
        dims[v] = 1;
    }
    let mats = q
        .arrows()
        .iter()
        .map(|a| {
            if dims[a.source] == 1 && dims[a.target] == 1 {
                Matrix::identity(field, 1)
            } else {
                Matrix::zeros(field, dims[a.target], dims[a.source])
            }
        })
        .collect();
    Rep::new(q, field, dims, mats).expect("interval module shapes match")
}

/// Indecomposables of `q` over `field`. Type `A` is exact for every field;
/// otherwise the field must be finite and a bound is required.
pub fn list_indecomposables(q: Arc<Quiver>, field: Field, dim_bound: Option<usize>) -> Result<Indecomposables> {
    q.topological_order()?;
    if let Some(reps) = type_a_components(&q, field)? {
        return Ok(Indecomposables { reps, completeness: Completeness::Complete });
    }
    match dim_bound {
        Some(bound) if field.is_finite() => exhaustive_indecomposables(q, field, bound),
        _ => Err(Error::Unbounded),
    }
}

/// Interval modules of each connected component, extended by zero, when
/// every component is of type `A`. Components are taken in order of their
/// smallest vertex.
fn type_a_components(q: &Arc<Quiver>, field: Field) -> Result<Option<Vec<Rep>>> {
    if let Some(order) = q.type_a_order() {
        let n = order.len();
        let mut reps = Vec::with_capacity(n * (n + 1) / 2);
        for len in 0..n {
            for i in 0..n - len {
                reps.push(interval_module(q.clone(), field, &order, i, i + len));
            }
        }
        return Ok(Some(reps));
    }
    let n = q.num_vertices();
    let mut comp = (0..n).collect::<Vec<usize>>();
    fn root(c: &mut [usize], v: usize) -> usize {
        let mut r = v;
        while c[r] != r {
            r = c[r];
        }
        c[v] = r;
        r
    }
    for a in q.arrows() {
        let (x, y) = (root(&mut comp, a.source), root(&mut comp, a.target));
        comp[x.max(y)] = x.min(y);
    }
    let mut groups: alloc::collections::BTreeMap<usize, Vec<usize>> = alloc::collections::BTreeMap::new();
    for v in 0..n {
        let r = root(&mut comp, v);
        groups.entry(r).or_default().push(v);
    }
    if groups.len() < 2 {
        return Ok(None);
    }
    let mut reps = Vec::new();
    for verts in groups.values() {
        let (sub, vmap, amap) = q.full_subquiver(verts)?;
        let sub = Arc::new(sub);
        let Some(local) = type_a_components(&sub, field)? else {
            return Ok(None);
        };
        for r in local {
            let mut dims = alloc::vec![0; n];
            for (i, &v) in vmap.iter().enumerate() {
                dims[v] = r.dim(i);
            }
            let mut mats: Vec<Matrix> = q.arrows().iter().map(|a| Matrix::zeros(field, dims[a.target], dims[a.source])).collect();
            for (i, &a) in amap.iter().enumerate() {
                mats[a] = r.mat(i).clone();
            }
            reps.push(Rep::new(q.clone(), field, dims, mats)?);
        }
    }
    Ok(Some(reps))
}

/// Every indecomposable of total dimension `1..=bound` up to isomorphism,
/// by enumerating all arrow matrices over a finite field.
pub fn exhaustive_indecomposables(q: Arc<Quiver>, field: Field, bound: usize) -> Result<Indecomposables> {
    q.topological_order()?;
    let elems = field.elements().ok_or(Error::Unbounded)?;
    let mut found: Vec<Rep> = Vec::new();
    let mut undecided = false;
    for dims in dim_vectors(q.num_vertices(), bound) {
        if !support_connected(&q, &dims) {
            continue;
        }
        let sizes: Vec<usize> = q.arrows().iter().map(|a| dims[a.target] * dims[a.source]).collect();
        let total: usize = sizes.iter().sum();
        let mut digits = alloc::vec![0usize; total];
        loop {
            let mut entries = digits.iter().map(|&d| elems[d].clone());
            let mats: Vec<Matrix> = q
                .arrows()
                .iter()
                .zip(&sizes)
                .map(|(a, &s)| {
                    let data: Vec<Scalar> = entries.by_ref().take(s).collect();
                    Matrix::from_scalars(field, dims[a.target], dims[a.source], data).expect("sized")
                })
                .collect();
            let cand = Rep::new(q.clone(), field, dims.clone(), mats)?;
            match is_indecomposable(&cand)? {
                Some(true) => {
                    let mut new = true;
                    for r in found.iter().filter(|r| r.dims() == cand.dims()) {
                        match is_isomorphic(r, &cand)? {
                            IsoVerdict::Iso(_) => {
                                new = false;
                                break;
                            }
                            IsoVerdict::NotIso => {}
                            IsoVerdict::Undecided => undecided = true,
                        }
                    }
                    if new {
                        found.push(cand);
                    }
                }
                Some(false) => {}
                None => undecided = true,
            }
            if !advance(&mut digits, elems.len()) {
                break;
            }
        }
    }
    let completeness = if undecided { Completeness::Partial(bound) } else { Completeness::UpToBound(bound) };
    Ok(Indecomposables { reps: found, completeness })
}

fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Nonzero dimension vectors with total at most `bound`, by increasing total.
fn dim_vectors(n: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for total in 1..=bound {
        let mut cur = alloc::vec![0; n];
        compositions(n, total, 0, &mut cur, &mut out);
    }
    out
}

fn compositions(n: usize, left: usize, i: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if i + 1 == n {
        cur[i] = left;
        out.push(cur.clone());
        return;
    }
    if n == 0 {
        return;
    }
    for x in (0..=left).rev() {
        cur[i] = x;
        compositions(n, left - x, i + 1, cur, out);
    }
}

/// Indecomposables have connected support.
fn support_connected(q: &Quiver, dims: &[usize]) -> bool {
    let support: Vec<usize> = (0..dims.len()).filter(|&v| dims[v] > 0).collect();
    let Some(&start) = support.first() else {
        return false;
    };
    let mut seen = alloc::vec![false; dims.len()];
    seen[start] = true;
    let mut stack = alloc::vec![start];
    while let Some(v) = stack.pop() {
        for a in q.arrows() {
            for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                if x == v && dims[y] > 0 && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    support.iter().all(|&v| seen[v])
}

#[cfg(test)]
mod tests {
    use super::*;

    const F2: Field = Field::Prime(2);

    fn cross_check(q: Quiver, bound: usize) {
        let q = Arc::new(q);
        let intervals = list_indecomposables(q.clone(), F2, None).unwrap();
        assert_eq!(intervals.completeness, Completeness::Complete);
        let searched = exhaustive_indecomposables(q, F2, bound).unwrap();
        assert_eq!(searched.completeness, Completeness::UpToBound(bound));
        assert_eq!(intervals.reps.len(), searched.reps.len());
        for r in &intervals.reps {
            assert_eq!(is_indecomposable(r).unwrap(), Some(true));
            let hits = searched.reps.iter().filter(|s| is_isomorphic(r, s).unwrap().is_iso()).count();
            assert_eq!(hits, 1);
        }
    }

    #[test]
    fn a1_a2_a3() {
        let a1 = list_indecomposables(Arc::new(Quiver::linear(1)), Field::Rationals, None).unwrap();
        assert_eq!(a1.reps.len(), 1);
        let q = Arc::new(Quiver::linear(2));
        let a2 = list_indecomposables(q.clone(), F2, None).unwrap();
        assert_eq!(a2.reps.len(), 3);
        assert_eq!(a2.reps[0], Rep::simple(q.clone(), F2, 0));
        assert_eq!(a2.reps[1], Rep::simple(q.clone(), F2, 1));
        assert_eq!(a2.reps[2], Rep::projective(q, F2, 0).unwrap());
        cross_check(Quiver::linear(2), 3);
        cross_check(Quiver::linear(3), 3);
        cross_check(Quiver::type_a(&[true, false]), 3);
    }

    #[test]
    fn kronecker_needs_a_bound() {
        let q = Arc::new(Quiver::new(&["1", "2"], &[("1", "2", "a"), ("1", "2", "b")]).unwrap());
        assert_eq!(list_indecomposables(q.clone(), Field::Rationals, Some(2)).unwrap_err(), Error::Unbounded);
        assert_eq!(list_indecomposables(q.clone(), F2, None).unwrap_err(), Error::Unbounded);
        // Dimension vectors (1,0), (0,1) and the three points of P^1(F_2) at (1,1).
        let found = list_indecomposables(q, F2, Some(2)).unwrap();
        assert_eq!(found.reps.len(), 5);
    }
}
