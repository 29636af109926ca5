use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rand::Rng;

use super::{FiniteRing, PrimePoint, RingElem};
use crate::error::Result;
use crate::homalg::{cohomology_dims, Category, Complex, RepCategory};
use crate::linalg::snf::{kernel_order_mod, IntMatrix};
use crate::linalg::{Field, Matrix};
use crate::quiver::RepMorphism;

/// A matrix over a finite ring, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<RingElem>,
}

impl RingMatrix {
    pub fn zeros(ring: &FiniteRing, rows: usize, cols: usize) -> Self {
        RingMatrix { rows, cols, data: alloc::vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &FiniteRing, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElem {
        &self.data[i * self.cols + j]
    }

    pub fn random<R: Rng + ?Sized>(ring: &FiniteRing, rows: usize, cols: usize, rng: &mut R) -> Self {
        RingMatrix { rows, cols, data: (0..rows * cols).map(|_| ring.random(rng)).collect() }
    }

    pub fn scale(&self, ring: &FiniteRing, r: &RingElem) -> Self {
        RingMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| ring.mul(r, a)).collect() }
    }

    pub fn mul(&self, ring: &FiniteRing, other: &RingMatrix) -> RingMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = ring.zero();
                for k in 0..self.cols {
                    acc = ring.add(&acc, &ring.mul(self.get(i, k), other.get(k, j)));
                }
                out.data[i * other.cols + j] = acc;
            }
        }
        out
    }

    /// Entrywise image in the residue field at `p`.
    pub fn reduce(&self, ring: &FiniteRing, p: &PrimePoint) -> Matrix {
        let data = self.data.iter().map(|a| ring.reduce(p, a)).collect();
        Matrix::from_scalars(p.residue, self.rows, self.cols, data).expect("shape is consistent")
    }
}

/// Finitely generated free modules `R^n` over a finite ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModules {
    pub ring: FiniteRing,
}

pub type FreeComplex = Complex<FreeModules>;

impl Category for FreeModules {
    type Obj = usize;
    type Mor = RingMatrix;

    fn zero_object(&self) -> usize {
        0
    }

    fn unit(&self) -> usize {
        1
    }

    fn is_zero_object(&self, a: &usize) -> bool {
        *a == 0
    }

    fn identity(&self, a: &usize) -> RingMatrix {
        RingMatrix::identity(&self.ring, *a)
    }

    fn zero_morphism(&self, src: &usize, tgt: &usize) -> RingMatrix {
        RingMatrix::zeros(&self.ring, *tgt, *src)
    }

    fn compose(&self, g: &RingMatrix, f: &RingMatrix) -> RingMatrix {
        g.mul(&self.ring, f)
    }

    fn add(&self, f: &RingMatrix, g: &RingMatrix) -> RingMatrix {
        RingMatrix { rows: f.rows, cols: f.cols, data: f.data.iter().zip(&g.data).map(|(a, b)| self.ring.add(a, b)).collect() }
    }

    fn neg(&self, f: &RingMatrix) -> RingMatrix {
        RingMatrix { rows: f.rows, cols: f.cols, data: f.data.iter().map(|a| self.ring.neg(a)).collect() }
    }

    fn is_zero_morphism(&self, f: &RingMatrix) -> bool {
        f.data.iter().all(|a| self.ring.is_zero(a))
    }

    fn direct_sum(&self, objs: &[usize]) -> usize {
        objs.iter().sum()
    }

    fn block(&self, src: &[usize], tgt: &[usize], blocks: &dyn Fn(usize, usize) -> Option<RingMatrix>) -> RingMatrix {
        let (rows, cols) = (tgt.iter().sum::<usize>(), src.iter().sum::<usize>());
        let mut m = RingMatrix::zeros(&self.ring, rows, cols);
        let mut r0 = 0;
        for (i, &t) in tgt.iter().enumerate() {
            let mut c0 = 0;
            for (j, &s) in src.iter().enumerate() {
                if let Some(b) = blocks(i, j) {
                    for r in 0..t {
                        for c in 0..s {
                            m.data[(r0 + r) * cols + c0 + c] = b.get(r, c).clone();
                        }
                    }
                }
                c0 += s;
            }
            r0 += t;
        }
        m
    }

    fn tensor(&self, a: &usize, b: &usize) -> usize {
        a * b
    }

    fn tensor_morphisms(&self, f: &RingMatrix, g: &RingMatrix) -> RingMatrix {
        let (rows, cols) = (f.rows * g.rows, f.cols * g.cols);
        let mut m = RingMatrix::zeros(&self.ring, rows, cols);
        for i in 0..f.rows {
            for j in 0..f.cols {
                for k in 0..g.rows {
                    for l in 0..g.cols {
                        m.data[(i * g.rows + k) * cols + j * g.cols + l] = self.ring.mul(f.get(i, j), g.get(k, l));
                    }
                }
            }
        }
        m
    }
}

/// `x*(C) = C ⊗_R k(x)` as a complex of vector spaces.
pub fn fiber(c: &FreeComplex, p: &PrimePoint) -> Result<Complex<RepCategory>> {
    let ring = &c.category().ring;
    let target = RepCategory::vector_spaces(p.residue);
    let spaces = target.clone();
    c.map_components(target, |&n| spaces.space(n), |m| RepMorphism { comps: alloc::vec![m.reduce(ring, p)] })
}

/// Indices (into `ring.primes()`) of the primes where the fiber has cohomology.
pub fn support(c: &FreeComplex) -> Result<Vec<usize>> {
    let ring = &c.category().ring;
    let mut out = Vec::new();
    for (i, p) in ring.primes()?.iter().enumerate() {
        if !cohomology_dims(&fiber(c, p)?).is_empty() {
            out.push(i);
        }
    }
    Ok(out)
}

/// `|{x ∈ R^cols : m x = 0}|`.
pub fn kernel_order(ring: &FiniteRing, m: &RingMatrix) -> BigUint {
    match ring {
        FiniteRing::Zmod(n) | FiniteRing::PrimeField(n) => {
            let data = m.data.iter().map(|a| BigInt::from(a.0[0])).collect();
            let k = kernel_order_mod(&IntMatrix::from_vec(m.rows, m.cols, data), &BigInt::from(*n));
            k.to_biguint().expect("orders are positive")
        }
        FiniteRing::PolyQuotient { p, f } => {
            // R^cols as an F_p-space with basis x^k e_j.
            let d = f.len() - 1;
            let field = Field::Prime(*p);
            let mut lin = Matrix::zeros(field, m.rows * d, m.cols * d);
            for j in 0..m.cols {
                for k in 0..d {
                    let mut xk = alloc::vec![0; k + 1];
                    xk[k] = 1;
                    let basis = ring.from_poly(&xk);
                    for i in 0..m.rows {
                        let img = ring.mul(m.get(i, j), &basis);
                        for (t, &c) in img.0.iter().enumerate() {
                            lin.set(i * d + t, j * d + k, field.from_i64(c as i64));
                        }
                    }
                }
            }
            BigUint::from(*p).pow((m.cols * d - lin.rank()) as u32)
        }
        FiniteRing::Product(rs) => {
            let mut total = BigUint::one();
            for (idx, r) in rs.iter().enumerate() {
                let data = m.data.iter().map(|a| ring.components(a)[idx].clone()).collect();
                total *= kernel_order(r, &RingMatrix { rows: m.rows, cols: m.cols, data });
            }
            total
        }
    }
}

/// Exactness over `R` itself: `|ker d^i| = |im d^{i-1}| = |R^{n_{i-1}}| / |ker d^{i-1}|`
/// in every degree.
pub fn is_acyclic_over_ring(c: &FreeComplex) -> bool {
    let ring = &c.category().ring;
    let order = BigUint::from(ring.order());
    c.degrees().into_iter().all(|i| {
        let prev = c.obj(i - 1);
        kernel_order(ring, &c.diff(i)) * kernel_order(ring, &c.diff(i - 1)) == order.pow(prev as u32)
    })
}

/// `R --u--> R` in degrees -1, 0. Its support is `{p : u ∈ p}`.
pub fn koszul(ring: &FiniteRing, u: &RingElem) -> FreeComplex {
    let m = RingMatrix { rows: 1, cols: 1, data: alloc::vec![u.clone()] };
    Complex::two_term(FreeModules { ring: ring.clone() }, 1, 1, m, -1)
}

/// A direct sum of up to `pieces` random two-term complexes `R^a -> R^b`.
/// Random matrices rarely square to zero, so longer complexes are built by
/// summing shifted two-term pieces.
pub fn random_free_complex<R: Rng + ?Sized>(ring: &FiniteRing, rng: &mut R, pieces: usize) -> FreeComplex {
    let cat = FreeModules { ring: ring.clone() };
    let mut out = Complex::zero(cat.clone());
    for _ in 0..rng.gen_range(1..=pieces.max(1)) {
        let (a, b) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        let m = RingMatrix::random(ring, b, a, rng);
        out = out.direct_sum(&Complex::two_term(cat.clone(), a, b, m, rng.gen_range(-1..=1)));
    }
    out
}

/// `|ker|` by enumeration.
#[cfg(test)]
pub(crate) fn kernel_order_exhaustive(ring: &FiniteRing, m: &RingMatrix) -> Result<u64> {
    let elems = ring.elements()?;
    let mut count = 0u64;
    let total = (elems.len() as u64).pow(m.cols as u32);
    for mut code in 0..total {
        let x: Vec<RingElem> = (0..m.cols)
            .map(|_| {
                let e = elems[(code % elems.len() as u64) as usize].clone();
                code /= elems.len() as u64;
                e
            })
            .collect();
        let col = RingMatrix { rows: m.cols, cols: 1, data: x };
        if m.mul(ring, &col).data.iter().all(|a| ring.is_zero(a)) {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z12() -> FiniteRing {
        FiniteRing::zmod(12).unwrap()
    }

    #[test]
    fn koszul_supports() {
        let r = z12();
        assert_eq!(support(&koszul(&r, &r.from_i64(2))).unwrap(), [0]);
        assert_eq!(support(&koszul(&r, &r.from_i64(3))).unwrap(), [1]);
        assert_eq!(support(&koszul(&r, &r.from_i64(0))).unwrap(), [0, 1]);
        assert!(support(&koszul(&r, &r.from_i64(5))).unwrap().is_empty());
        assert_eq!(support(&Complex::unit(FreeModules { ring: r })).unwrap(), [0, 1]);
    }

    #[test]
    fn acyclicity_matches_fibers() {
        let r = z12();
        assert!(is_acyclic_over_ring(&koszul(&r, &r.from_i64(5))));
        assert!(!is_acyclic_over_ring(&koszul(&r, &r.from_i64(2))));
        let dual = FiniteRing::poly_quotient(2, &[0, 0, 1]).unwrap();
        assert!(!is_acyclic_over_ring(&koszul(&dual, &dual.from_poly(&[0, 1]))));
        assert!(is_acyclic_over_ring(&koszul(&dual, &dual.from_poly(&[1, 1]))));
    }

    #[test]
    fn tensor_support_is_intersection() {
        let r = FiniteRing::zmod(30).unwrap();
        let a = koszul(&r, &r.from_i64(6));
        let b = koszul(&r, &r.from_i64(10));
        assert_eq!(support(&a).unwrap(), [0, 1]);
        assert_eq!(support(&b).unwrap(), [0, 2]);
        assert_eq!(support(&a.tensor(&b)).unwrap(), [0]);
    }

    fn rings() -> Vec<FiniteRing> {
        alloc::vec![
            FiniteRing::zmod(12).unwrap(),
            FiniteRing::zmod(8).unwrap(),
            FiniteRing::poly_quotient(2, &[0, 0, 1]).unwrap(),
            FiniteRing::poly_quotient(3, &[1, 0, 1]).unwrap(),
            FiniteRing::product(alloc::vec![FiniteRing::PrimeField(2), FiniteRing::zmod(4).unwrap()]).unwrap(),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn kernel_order_matches_enumeration(seed in any::<u64>(), which in 0usize..5, rows in 0usize..3, cols in 0usize..3) {
            let ring = &rings()[which];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = RingMatrix::random(ring, rows, cols, &mut rng);
            prop_assert_eq!(kernel_order(ring, &m), BigUint::from(kernel_order_exhaustive(ring, &m).unwrap()));
        }

        /// Over these artinian rings a perfect complex is acyclic iff every
        /// fiber is.
        #[test]
        fn acyclic_iff_empty_support(seed in any::<u64>(), which in 0usize..5) {
            let ring = &rings()[which];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = random_free_complex(ring, &mut rng, 2);
            prop_assert_eq!(is_acyclic_over_ring(&c), support(&c).unwrap().is_empty());
        }
    }
}
