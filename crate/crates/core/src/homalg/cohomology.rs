use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{Complex, RepCategory};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::{Rep, RepMorphism};

/// Degree -> dimension vector, zero degrees omitted.
pub type GradedDims = BTreeMap<i64, Vec<usize>>;

/// Degree -> object, zero objects omitted.
pub type GradedObject = BTreeMap<i64, Rep>;

/// `H^i = Z^i / B^i` with the cycle inclusion `Z^i -> C^i` (columns of
/// `cycles[v]`) and the projection `Z^i -> H^i`.
#[derive(Clone, Debug)]
pub struct CohomologyPiece {
    pub rep: Rep,
    pub cycles: Vec<Matrix>,
    pub projection: RepMorphism,
}

pub type Cohomology = BTreeMap<i64, CohomologyPiece>;

/// Vertex-wise `dim H^i = dim C^i - rank d^i - rank d^{i-1}`.
pub fn cohomology_dims(c: &Complex<RepCategory>) -> GradedDims {
    let n = c.category().quiver.num_vertices();
    let mut out = BTreeMap::new();
    for i in c.degrees() {
        let obj = c.obj(i);
        let (din, dout) = (c.diff(i - 1), c.diff(i));
        let dims: Vec<usize> = (0..n).map(|v| obj.dim(v) - dout.comps[v].rank() - din.comps[v].rank()).collect();
        if dims.iter().any(|&d| d > 0) {
            out.insert(i, dims);
        }
    }
    out
}

pub fn cohomology(c: &Complex<RepCategory>) -> Result<Cohomology> {
    let mut out = BTreeMap::new();
    for i in c.degrees() {
        let obj = c.obj(i);
        let cycles: Vec<Matrix> = c.diff(i).comps.iter().map(|m| m.kernel_matrix()).collect();
        let z = obj.subrep(&cycles)?;
        // Boundaries in cycle coordinates.
        let din = c.diff(i - 1);
        let mut bounds = Vec::new();
        for (v, cyc) in cycles.iter().enumerate() {
            let img = din.comps[v].image_matrix();
            let coords = cyc.solve_matrix(&img)?.ok_or(Error::NotAComplex(i - 1))?;
            bounds.push(coords);
        }
        let (h, projection) = z.quotient(&bounds)?;
        if !h.is_zero() {
            out.insert(i, CohomologyPiece { rep: h, cycles, projection });
        }
    }
    Ok(out)
}

/// `⊕_i H^i(C)[-i]`. Over a hereditary base (every acyclic quiver) this is
/// isomorphic to `C` in the derived category; the returned dimensions serve
/// as the certificate.
pub fn normalize_hereditary(c: &Complex<RepCategory>) -> Result<(GradedObject, GradedDims)> {
    if !c.category().quiver.is_acyclic() {
        return Err(Error::NotHereditary);
    }
    let h = cohomology(c)?;
    let graded: GradedObject = h.into_iter().map(|(i, p)| (i, p.rep)).collect();
    let normal = Complex::graded(c.category().clone(), &graded);
    let certificate = cohomology_dims(&normal);
    if certificate != cohomology_dims(c) {
        return Err(Error::NotHereditary);
    }
    Ok((graded, certificate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::{Category, ChainMap};
    use crate::linalg::Field;
    use crate::quiver::{hom_space, is_isomorphic, Quiver};
    use alloc::sync::Arc;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const F2: Field = Field::Prime(2);

    fn a2() -> RepCategory {
        RepCategory::new(Arc::new(Quiver::linear(2)), F2)
    }

    /// `P_2 -> P_1`, the inclusion, in degrees -1 and 0.
    fn p2_to_p1(cat: &RepCategory) -> (Rep, Rep, RepMorphism) {
        let q = cat.quiver.clone();
        let p1 = Rep::projective(q.clone(), F2, 0).unwrap();
        let p2 = Rep::projective(q, F2, 1).unwrap();
        let f = hom_space(&p2, &p1).unwrap().remove(0);
        (p2, p1, f)
    }

    #[test]
    fn projective_resolution_of_s1() {
        let cat = a2();
        let (p2, p1, f) = p2_to_p1(&cat);
        let c = Complex::two_term(cat.clone(), p2, p1, f, -1);
        let h = cohomology(&c).unwrap();
        assert_eq!(h.len(), 1);
        let s1 = Rep::simple(cat.quiver.clone(), F2, 0);
        assert!(is_isomorphic(&h[&0].rep, &s1).unwrap().is_iso());
        assert_eq!(cohomology_dims(&c), BTreeMap::from([(0, alloc::vec![1, 0])]));
        let (normal, cert) = normalize_hereditary(&c).unwrap();
        assert_eq!(normal.len(), 1);
        assert_eq!(cert, cohomology_dims(&c));
    }

    #[test]
    fn iso_differential_is_acyclic() {
        let cat = a2();
        let u = cat.unit();
        let c = Complex::two_term(cat.clone(), u.clone(), u.clone(), cat.identity(&u), 0);
        assert!(cohomology(&c).unwrap().is_empty());
    }

    #[test]
    fn zero_differentials_are_their_own_cohomology() {
        let cat = a2();
        let s1 = Rep::simple(cat.quiver.clone(), F2, 0);
        let c = Complex::graded(cat.clone(), &BTreeMap::from([(0, cat.unit()), (2, s1.clone())]));
        let h = cohomology(&c).unwrap();
        assert_eq!(h[&0].rep, cat.unit());
        assert_eq!(h[&2].rep, s1);
        assert_eq!(normalize_hereditary(&c).unwrap().0, BTreeMap::from([(0, cat.unit()), (2, s1)]));
    }

    #[test]
    fn cones() {
        let cat = a2();
        let (p2, p1, f) = p2_to_p1(&cat);
        let a = Complex::concentrated(cat.clone(), p2.clone(), 0);
        let b = Complex::concentrated(cat.clone(), p1.clone(), 0);
        let map = ChainMap::new(a.clone(), b.clone(), BTreeMap::from([(0, f)])).unwrap();
        let (cone, incl, proj) = map.cone();
        assert!(cone.is_complex());
        assert!(proj.compose(&incl).is_zero());
        // B -> cone(f) kills f up to the homotopy h = (0, id): A^i -> B^{i-1} ⊕ A^i.
        let comp = incl.compose(&map);
        for i in -2..=1 {
            let h = |j: i64| cat.block(&[a.obj(j)], &[b.obj(j - 1), a.obj(j)], &|r, _| (r == 1).then(|| cat.identity(&a.obj(j))));
            let dh = cat.compose(&cone.diff(i - 1), &h(i));
            let hd = cat.compose(&h(i + 1), &a.diff(i));
            assert_eq!(cat.add(&dh, &hd), comp.comp(i));
        }
        assert_eq!(cohomology_dims(&cone), BTreeMap::from([(0, alloc::vec![1, 0])]));
        // cone(id) is contractible
        let (c, _, _) = a.identity_map().cone();
        assert!(cohomology_dims(&c).is_empty());
        // cone(0) = B ⊕ A[1]
        let (c, _, _) = a.zero_map(&b).cone();
        let expected = b.direct_sum(&a.shift(1));
        assert_eq!(cohomology_dims(&c), cohomology_dims(&expected));
    }

    #[test]
    fn shift_and_tensor() {
        let cat = a2();
        let (p2, p1, f) = p2_to_p1(&cat);
        let c = Complex::two_term(cat.clone(), p2, p1, f, -1);
        assert_eq!(c.shift(0), c);
        assert_eq!(c.shift(1).shift(-1), c);
        let h = cohomology_dims(&c);
        let h1: GradedDims = cohomology_dims(&c.shift(1));
        assert_eq!(h1, h.iter().map(|(i, d)| (i - 1, d.clone())).collect::<GradedDims>());
        let unit = Complex::unit(cat.clone());
        assert_eq!(cohomology_dims(&unit.tensor(&c)), h);
        let s1 = Complex::concentrated(cat.clone(), Rep::simple(cat.quiver.clone(), F2, 0), 0);
        let s2 = Complex::concentrated(cat.clone(), Rep::simple(cat.quiver.clone(), F2, 1), 0);
        assert!(s1.tensor(&s2).is_zero());
        assert_eq!(cohomology_dims(&c.shift(1).tensor(&c)), cohomology_dims(&c.tensor(&c).shift(1)));
    }

    #[test]
    fn random_tensor_is_a_complex_with_kunneth_dims() {
        let cat = RepCategory::new(Arc::new(Quiver::linear(3)), Field::Prime(3));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let c = crate::homalg::thick::random_complex(&cat, &mut rng, 2);
            let d = crate::homalg::thick::random_complex(&cat, &mut rng, 2);
            let t = c.tensor(&d);
            assert!(t.is_complex());
            let (hc, hd, ht) = (cohomology_dims(&c), cohomology_dims(&d), cohomology_dims(&t));
            let mut expect: GradedDims = BTreeMap::new();
            for (i, x) in &hc {
                for (j, y) in &hd {
                    let e = expect.entry(i + j).or_insert_with(|| alloc::vec![0; 3]);
                    for v in 0..3 {
                        e[v] += x[v] * y[v];
                    }
                }
            }
            expect.retain(|_, d| d.iter().any(|&x| x > 0));
            assert_eq!(ht, expect);
        }
    }
}
