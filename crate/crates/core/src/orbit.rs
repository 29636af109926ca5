//! The orbit category `T_ℓ/[m]` of graded vector spaces.
//!
//! Objects are the objects of `D^b(Vect_ℓ)`, and `Hom(a, b) = ⊕_j Hom(a, b[jm])`.
//! Every complex of vector spaces is the sum of its cohomology, so an object
//! is determined up to isomorphism by its dimensions summed over degree
//! classes mod `m`, and a morphism by one matrix per class. The unit is
//! periodic, `1 ≅ 1[m]`, which rules out tensor points while leaving the zero
//! ideal prime.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitObject {
    m: usize,
    grading: Vec<usize>,
}

impl OrbitObject {
    /// `grading[c]` is the total dimension in degrees `≡ c (mod m)`.
    pub fn new(m: usize, grading: Vec<usize>) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroPeriod);
        }
        if grading.len() != m {
            return Err(Error::Dimension(alloc::format!("grading has {} classes, expected {m}", grading.len())));
        }
        Ok(OrbitObject { m, grading })
    }

    pub fn zero(m: usize) -> Result<Self> {
        Self::new(m, alloc::vec![0; m])
    }

    /// `ℓ` in degree 0.
    pub fn unit(m: usize) -> Result<Self> {
        Self::concentrated(m, 0, 1)
    }

    /// `ℓ^dim` in degree `deg`.
    pub fn concentrated(m: usize, deg: i64, dim: usize) -> Result<Self> {
        let mut g = alloc::vec![0; m.max(1)];
        if m > 0 {
            g[deg.rem_euclid(m as i64) as usize] = dim;
        }
        Self::new(m, g)
    }

    /// The class of a bounded graded vector space `degree -> dim`.
    pub fn from_degrees(m: usize, dims: &BTreeMap<i64, usize>) -> Result<Self> {
        let mut g = alloc::vec![0; m.max(1)];
        if m > 0 {
            for (&d, &n) in dims {
                g[d.rem_euclid(m as i64) as usize] += n;
            }
        }
        Self::new(m, g)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn grading(&self) -> &[usize] {
        &self.grading
    }

    pub fn dim(&self) -> usize {
        self.grading.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// `(a[n])^i = a^{i+n}`.
    pub fn shift(&self, n: i64) -> Self {
        let m = self.m as i64;
        let grading = (0..m).map(|c| self.grading[(c + n).rem_euclid(m) as usize]).collect();
        OrbitObject { m: self.m, grading }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m, "objects of different orbit categories");
        OrbitObject { m: self.m, grading: self.grading.iter().zip(&other.grading).map(|(a, b)| a + b).collect() }
    }

    /// Degreewise tensor: convolution of gradings mod `m`.
    pub fn tensor(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m, "objects of different orbit categories");
        let mut grading = alloc::vec![0; self.m];
        for (i, a) in self.grading.iter().enumerate() {
            for (j, b) in other.grading.iter().enumerate() {
                grading[(i + j) % self.m] += a * b;
            }
        }
        OrbitObject { m: self.m, grading }
    }

    pub fn random<R: Rng + ?Sized>(m: usize, max_dim: usize, rng: &mut R) -> Result<Self> {
        Self::new(m, (0..m).map(|_| rng.gen_range(0..=max_dim)).collect())
    }
}

/// `dim Hom(a, b) = Σ_c a_c · b_c`: a map of degree `jm` matches classes.
pub fn orbit_hom(a: &OrbitObject, b: &OrbitObject) -> Result<usize> {
    if a.m != b.m {
        return Err(Error::Dimension(alloc::format!("periods {} and {}", a.m, b.m)));
    }
    Ok(a.grading.iter().zip(&b.grading).map(|(x, y)| x * y).sum())
}

/// One matrix `b_c × a_c` per degree class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitMorphism {
    pub source: OrbitObject,
    pub target: OrbitObject,
    pub comps: Vec<Matrix>,
}

impl OrbitMorphism {
    pub fn identity(field: Field, a: &OrbitObject) -> Self {
        OrbitMorphism { source: a.clone(), target: a.clone(), comps: a.grading.iter().map(|&n| Matrix::identity(field, n)).collect() }
    }

    pub fn random<R: Rng + ?Sized>(field: Field, a: &OrbitObject, b: &OrbitObject, rng: &mut R) -> Self {
        let comps = (0..a.m).map(|c| Matrix::random(field, b.grading[c], a.grading[c], rng)).collect();
        OrbitMorphism { source: a.clone(), target: b.clone(), comps }
    }

    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(|c| c.is_square() && c.is_invertible())
    }

    /// `f ⊗ g`, blockwise Kronecker products gathered by class.
    pub fn tensor(&self, other: &Self) -> Self {
        let m = self.source.m;
        let source = self.source.tensor(&other.source);
        let target = self.target.tensor(&other.target);
        let field = self.comps[0].field();
        let comps = (0..m)
            .map(|c| {
                let pairs: Vec<(usize, usize)> = (0..m).map(|i| (i, (c + m - i) % m)).collect();
                let blocks: Vec<Matrix> = pairs.iter().map(|&(i, j)| self.comps[i].kronecker(&other.comps[j])).collect();
                Matrix::block_diag(field, &blocks)
            })
            .collect();
        OrbitMorphism { source, target, comps }
    }

    /// `cone(f) ≅ coker f ⊕ (ker f)[1]`.
    pub fn cone(&self) -> OrbitObject {
        let m = self.source.m;
        let ranks: Vec<usize> = self.comps.iter().map(|c| c.rank()).collect();
        let coker: Vec<usize> = (0..m).map(|c| self.target.grading[c] - ranks[c]).collect();
        let ker = OrbitObject { m, grading: (0..m).map(|c| self.source.grading[c] - ranks[c]).collect() };
        OrbitObject { m, grading: coker }.direct_sum(&ker.shift(1))
    }
}

/// An explicit isomorphism `a -> a[m]`: identity matrices on matching classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicityWitness {
    pub object: OrbitObject,
    pub shifted: OrbitObject,
    pub iso: OrbitMorphism,
    pub verdict: bool,
}

pub fn shift_periodicity(field: Field, a: &OrbitObject) -> PeriodicityWitness {
    let shifted = a.shift(a.m as i64);
    let iso = OrbitMorphism {
        source: a.clone(),
        target: shifted.clone(),
        comps: a.grading.iter().map(|&n| Matrix::identity(field, n)).collect(),
    };
    let verdict = shifted == *a && iso.is_iso();
    PeriodicityWitness { object: a.clone(), shifted, iso, verdict }
}

pub fn unit_shift_periodicity(field: Field, m: usize) -> Result<PeriodicityWitness> {
    Ok(shift_periodicity(field, &OrbitObject::unit(m)?))
}

/// One checked link of the obstruction argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assertion {
    pub claim: String,
    pub holds: bool,
}

/// Why no exact tensor functor `T_ℓ/[m] -> D^b(Vect_k)` exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionCertificate {
    pub m: usize,
    pub chain: Vec<Assertion>,
    pub points: usize,
}

impl ObstructionCertificate {
    pub fn holds(&self) -> bool {
        self.chain.iter().all(|a| a.holds)
    }
}

/// A tensor point sends `1` to `k` in degree 0 and commutes with shifts, so
/// `1 ≅ 1[m]` forces `k ≅ k[m]` in `D^b(Vect_k)`, where graded dimensions
/// tell them apart.
pub fn tensor_point_obstruction(field: Field, m: usize) -> Result<ObstructionCertificate> {
    if m == 0 {
        return Err(Error::ZeroPeriod);
    }
    let image_of_unit: BTreeMap<i64, usize> = BTreeMap::from([(0, 1)]);
    let image_of_shift: BTreeMap<i64, usize> = image_of_unit.iter().map(|(d, n)| (d - m as i64, *n)).collect();
    let witness = unit_shift_periodicity(field, m)?;
    let unit_back = OrbitObject::from_degrees(m, &image_of_unit)? == OrbitObject::unit(m)?;
    let chain = alloc::vec![
        Assertion { claim: "a tensor point sends 1 to k concentrated in degree 0".into(), holds: unit_back },
        Assertion { claim: alloc::format!("1 is isomorphic to 1[{m}] in the orbit category"), holds: witness.verdict },
        Assertion {
            claim: alloc::format!("an exact functor sends 1[{m}] to k[{m}], concentrated in degree -{m}"),
            holds: image_of_shift.keys().all(|&d| d == -(m as i64)),
        },
        Assertion {
            claim: alloc::format!("k and k[{m}] have different graded dimensions in D^b(Vect_k)"),
            holds: image_of_unit != image_of_shift,
        },
    ];
    Ok(ObstructionCertificate { m, chain, points: 0 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroIdealVerdict {
    pub m: usize,
    pub pairs_checked: usize,
    /// A pair of nonzero objects with zero tensor product, if one was found.
    pub zero_divisor: Option<(OrbitObject, OrbitObject)>,
    /// Every nonzero object generates the whole category, so the thick
    /// tensor ideals are `0` and `T` and the only prime is `0`.
    pub primes: usize,
}

impl ZeroIdealVerdict {
    pub fn zero_is_prime(&self) -> bool {
        self.zero_divisor.is_none()
    }
}

/// Samples `samples` pairs of nonzero objects and checks `a ⊗ b ≠ 0`.
pub fn zero_ideal_prime(m: usize, samples: usize, seed: u64) -> Result<ZeroIdealVerdict> {
    if m == 0 {
        return Err(Error::ZeroPeriod);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nonzero = |rng: &mut ChaCha8Rng| loop {
        let a = OrbitObject::random(m, 2, rng).expect("m >= 1");
        if !a.is_zero() {
            return a;
        }
    };
    let mut zero_divisor = None;
    for _ in 0..samples {
        let (a, b) = (nonzero(&mut rng), nonzero(&mut rng));
        if a.tensor(&b).is_zero() {
            zero_divisor = Some((a, b));
            break;
        }
    }
    let primes = usize::from(zero_divisor.is_none());
    Ok(ZeroIdealVerdict { m, pairs_checked: samples, zero_divisor, primes })
}

/// Spot-check that `- ⊗ c` preserves cones: `cone(f) ⊗ c ≅ cone(f ⊗ id_c)`.
pub fn tensor_exactness_check(field: Field, m: usize, samples: usize, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a = OrbitObject::random(m, 2, &mut rng)?;
        let b = OrbitObject::random(m, 2, &mut rng)?;
        let c = OrbitObject::random(m, 2, &mut rng)?;
        let f = OrbitMorphism::random(field, &a, &b, &mut rng);
        let lhs = f.cone().tensor(&c);
        let rhs = f.tensor(&OrbitMorphism::identity(field, &c)).cone();
        if lhs != rhs || f.cone().dim() + 2 * f.comps.iter().map(|x| x.rank()).sum::<usize>() != a.dim() + b.dim() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const F2: Field = Field::Prime(2);

    #[test]
    fn homs() {
        let u = OrbitObject::unit(2).unwrap();
        assert_eq!(orbit_hom(&u, &u).unwrap(), 1);
        assert_eq!(orbit_hom(&OrbitObject::zero(2).unwrap(), &u).unwrap(), 0);
        assert_eq!(orbit_hom(&u, &u.shift(1)).unwrap(), 0);
        assert_eq!(orbit_hom(&u, &u.shift(2)).unwrap(), 1);
    }

    #[test]
    fn periodicity() {
        for m in [1, 2, 5] {
            assert!(unit_shift_periodicity(F2, m).unwrap().verdict);
        }
        let a = OrbitObject::concentrated(3, 1, 1).unwrap();
        assert!(shift_periodicity(F2, &a).verdict);
        assert_ne!(a.shift(1), a);
    }

    #[test]
    fn obstruction() {
        for m in [1, 2, 5] {
            let cert = tensor_point_obstruction(F2, m).unwrap();
            assert!(cert.holds());
            assert_eq!(cert.points, 0);
            assert_eq!(cert.chain.len(), 4);
        }
        assert_eq!(tensor_point_obstruction(F2, 0), Err(Error::ZeroPeriod));
    }

    #[test]
    fn zero_ideal() {
        let u = OrbitObject::unit(2).unwrap();
        assert_eq!(u.tensor(&u), u);
        for m in [1, 2, 5] {
            let v = zero_ideal_prime(m, 100, 7).unwrap();
            assert!(v.zero_is_prime());
            assert_eq!(v.primes, 1);
        }
    }

    #[test]
    fn cones_are_exact() {
        assert!(tensor_exactness_check(F2, 2, 30, 1).unwrap());
        assert!(tensor_exactness_check(Field::Prime(3), 3, 30, 2).unwrap());
        let u = OrbitObject::unit(2).unwrap();
        assert!(OrbitMorphism::identity(F2, &u).cone().is_zero());
    }

    proptest! {
        #[test]
        fn tensor_multiplies_dimension(m in 1usize..6, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = OrbitObject::random(m, 3, &mut rng).unwrap();
            let b = OrbitObject::random(m, 3, &mut rng).unwrap();
            prop_assert_eq!(a.tensor(&b).dim(), a.dim() * b.dim());
            prop_assert_eq!(a.shift(m as i64), a.clone());
            prop_assert_eq!(a.tensor(&b), b.tensor(&a));
        }
    }
}
