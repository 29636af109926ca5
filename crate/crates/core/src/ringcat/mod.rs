//! Finite commutative rings and perfect complexes over them.
//!
//! Supported rings are `Z/n`, prime fields, `F_p[x]/(f)` for monic `f`, and
//! finite products of these. All of them are artinian, so every prime is
//! maximal, `Spec` is finite and discrete, and localizations have closed
//! forms: `Z/n` at `p` is `Z/p^e` for `p^e || n`, and `F_p[x]/(f)` at `g` is
//! `F_p[x]/(g^e)` for `g^e || f`.

mod complex;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use complex::{
    fiber, is_acyclic_over_ring, kernel_order, koszul, random_free_complex, support, FreeComplex, FreeModules, RingMatrix,
};

use crate::error::{Error, Result};
use crate::linalg::field::{is_prime, poly};
use crate::linalg::{Field, Scalar};

/// Integers above this are not factored.
const FACTOR_LIMIT: u64 = 1 << 40;
/// Rings above this size are not enumerated element by element.
const ENUMERATION_LIMIT: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiniteRing {
    Zmod(u64),
    PrimeField(u64),
    /// `F_p[x]/(f)`, `f` monic, coefficients low degree first.
    PolyQuotient { p: u64, f: Vec<u64> },
    Product(Vec<FiniteRing>),
}

/// An element as a flat coefficient vector: one residue for `Z/n` and prime
/// fields, `deg f` coefficients for `F_p[x]/(f)`, concatenated components
/// for products.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElem(pub Vec<u64>);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeIdeal {
    /// `(p)` in `Z/n`.
    Integer(u64),
    /// The zero ideal of a field.
    Zero,
    /// `(g)` in `F_p[x]/(f)` for a monic irreducible factor `g` of `f`.
    Poly(Vec<u64>),
    /// A prime of one factor of a product.
    Component(usize, alloc::boxed::Box<PrimeIdeal>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePoint {
    pub ideal: PrimeIdeal,
    pub residue: Field,
}

impl FiniteRing {
    pub fn zmod(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRing(alloc::format!("Z/{n} needs n >= 2")));
        }
        Ok(FiniteRing::Zmod(n))
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FiniteRing::PrimeField(p))
    }

    pub fn poly_quotient(p: u64, f: &[u64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut f: Vec<u64> = f.iter().map(|c| c % p).collect();
        poly::trim(&mut f);
        if f.len() < 2 || !poly::is_monic(&f) {
            return Err(Error::InvalidRing("modulus must be monic of degree at least 1".into()));
        }
        Ok(FiniteRing::PolyQuotient { p, f })
    }

    pub fn product(factors: Vec<FiniteRing>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidRing("empty product".into()));
        }
        Ok(FiniteRing::Product(factors))
    }

    /// Coefficients per element.
    pub fn width(&self) -> usize {
        match self {
            FiniteRing::Zmod(_) | FiniteRing::PrimeField(_) => 1,
            FiniteRing::PolyQuotient { f, .. } => f.len() - 1,
            FiniteRing::Product(rs) => rs.iter().map(|r| r.width()).sum(),
        }
    }

    pub fn order(&self) -> u128 {
        match self {
            FiniteRing::Zmod(n) | FiniteRing::PrimeField(n) => *n as u128,
            FiniteRing::PolyQuotient { p, f } => (*p as u128).pow((f.len() - 1) as u32),
            FiniteRing::Product(rs) => rs.iter().map(|r| r.order()).product(),
        }
    }

    /// Split a product element into its components.
    pub fn components(&self, a: &RingElem) -> Vec<RingElem> {
        match self {
            FiniteRing::Product(rs) => {
                let mut out = Vec::with_capacity(rs.len());
                let mut at = 0;
                for r in rs {
                    out.push(RingElem(a.0[at..at + r.width()].to_vec()));
                    at += r.width();
                }
                out
            }
            _ => alloc::vec![a.clone()],
        }
    }

    fn join(parts: Vec<RingElem>) -> RingElem {
        RingElem(parts.into_iter().flat_map(|p| p.0).collect())
    }

    pub fn zero(&self) -> RingElem {
        RingElem(alloc::vec![0; self.width()])
    }

    pub fn one(&self) -> RingElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, x: i64) -> RingElem {
        match self {
            FiniteRing::Zmod(n) | FiniteRing::PrimeField(n) => RingElem(alloc::vec![x.rem_euclid(*n as i64) as u64]),
            FiniteRing::PolyQuotient { p, f } => {
                let mut v = alloc::vec![0; f.len() - 1];
                v[0] = x.rem_euclid(*p as i64) as u64;
                RingElem(v)
            }
            FiniteRing::Product(rs) => Self::join(rs.iter().map(|r| r.from_i64(x)).collect()),
        }
    }

    /// `F_p[x]/(f)` element from a polynomial, reduced mod `f`.
    pub fn from_poly(&self, coeffs: &[u64]) -> RingElem {
        match self {
            FiniteRing::PolyQuotient { p, f } => {
                let r = poly::rem(&coeffs.iter().map(|c| c % p).collect::<Vec<_>>(), f, *p);
                let mut v = alloc::vec![0; f.len() - 1];
                v[..r.len()].copy_from_slice(&r);
                RingElem(v)
            }
            _ => self.from_i64(coeffs.first().copied().unwrap_or(0) as i64),
        }
    }

    pub fn is_zero(&self, a: &RingElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match self {
            FiniteRing::Zmod(n) | FiniteRing::PrimeField(n) => RingElem(alloc::vec![((a.0[0] as u128 + b.0[0] as u128) % *n as u128) as u64]),
            FiniteRing::PolyQuotient { p, .. } => RingElem(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % p).collect()),
            FiniteRing::Product(rs) => Self::join(
                rs.iter().zip(self.components(a)).zip(self.components(b)).map(|((r, x), y)| r.add(&x, &y)).collect(),
            ),
        }
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        match self {
            FiniteRing::Zmod(n) | FiniteRing::PrimeField(n) => RingElem(alloc::vec![(n - a.0[0]) % n]),
            FiniteRing::PolyQuotient { p, .. } => RingElem(a.0.iter().map(|x| (p - x) % p).collect()),
            FiniteRing::Product(rs) => Self::join(rs.iter().zip(self.components(a)).map(|(r, x)| r.neg(&x)).collect()),
        }
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match self {
            FiniteRing::Zmod(n) | FiniteRing::PrimeField(n) => RingElem(alloc::vec![((a.0[0] as u128 * b.0[0] as u128) % *n as u128) as u64]),
            FiniteRing::PolyQuotient { p, f } => {
                let prod = poly::mul(&a.0, &b.0, *p);
                self.from_poly(&poly::rem(&prod, f, *p))
            }
            FiniteRing::Product(rs) => Self::join(
                rs.iter().zip(self.components(a)).zip(self.components(b)).map(|((r, x), y)| r.mul(&x, &y)).collect(),
            ),
        }
    }

    pub fn is_unit(&self, a: &RingElem) -> bool {
        match self {
            FiniteRing::Zmod(n) | FiniteRing::PrimeField(n) => a.0[0].gcd(n) == 1,
            FiniteRing::PolyQuotient { p, f } => {
                let mut g = a.0.clone();
                poly::trim(&mut g);
                poly_gcd(&g, f, *p).len() == 1
            }
            FiniteRing::Product(rs) => rs.iter().zip(self.components(a)).all(|(r, x)| r.is_unit(&x)),
        }
    }

    /// Every element, in a fixed order. Fails above the enumeration limit.
    pub fn elements(&self) -> Result<Vec<RingElem>> {
        if self.order() > ENUMERATION_LIMIT as u128 {
            return Err(Error::Unsupported(alloc::format!("{} has {} elements", self, self.order())));
        }
        Ok(match self {
            FiniteRing::Zmod(n) | FiniteRing::PrimeField(n) => (0..*n).map(|x| RingElem(alloc::vec![x])).collect(),
            FiniteRing::PolyQuotient { p, f } => {
                let d = f.len() - 1;
                (0..self.order() as u64)
                    .map(|mut code| {
                        RingElem(
                            (0..d)
                                .map(|_| {
                                    let c = code % p;
                                    code /= p;
                                    c
                                })
                                .collect(),
                        )
                    })
                    .collect()
            }
            FiniteRing::Product(rs) => {
                let mut acc: Vec<Vec<RingElem>> = alloc::vec![Vec::new()];
                for r in rs {
                    let els = r.elements()?;
                    acc = acc
                        .into_iter()
                        .flat_map(|prefix| {
                            els.iter().map(move |e| {
                                let mut v = prefix.clone();
                                v.push(e.clone());
                                v
                            })
                        })
                        .collect();
                }
                acc.into_iter().map(Self::join).collect()
            }
        })
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> RingElem {
        match self {
            FiniteRing::Zmod(n) | FiniteRing::PrimeField(n) => RingElem(alloc::vec![rng.gen_range(0..*n)]),
            FiniteRing::PolyQuotient { p, f } => RingElem((0..f.len() - 1).map(|_| rng.gen_range(0..*p)).collect()),
            FiniteRing::Product(rs) => Self::join(rs.iter().map(|r| r.random(rng)).collect()),
        }
    }

    pub fn display_elem(&self, a: &RingElem) -> String {
        match self {
            FiniteRing::Zmod(_) | FiniteRing::PrimeField(_) => alloc::format!("{}", a.0[0]),
            FiniteRing::PolyQuotient { .. } => poly_string(&a.0),
            FiniteRing::Product(rs) => {
                let parts: Vec<String> = rs.iter().zip(self.components(a)).map(|(r, x)| r.display_elem(&x)).collect();
                alloc::format!("({})", parts.join(", "))
            }
        }
    }

    /// The complete list of primes with their residue fields.
    pub fn primes(&self) -> Result<Vec<PrimePoint>> {
        Ok(match self {
            FiniteRing::Zmod(n) => factor_integer(*n)?
                .into_iter()
                .map(|(p, _)| PrimePoint { ideal: PrimeIdeal::Integer(p), residue: Field::Prime(p) })
                .collect(),
            FiniteRing::PrimeField(p) => alloc::vec![PrimePoint { ideal: PrimeIdeal::Zero, residue: Field::Prime(*p) }],
            FiniteRing::PolyQuotient { p, f } => {
                let mut out = Vec::new();
                for (g, _) in poly::factor(f, *p) {
                    let residue = Field::galois(*p, &g).map_err(|e| Error::Unfactorable(alloc::format!("{}: {e}", poly_string(&g))))?;
                    out.push(PrimePoint { ideal: PrimeIdeal::Poly(g), residue });
                }
                out
            }
            FiniteRing::Product(rs) => {
                let mut out = Vec::new();
                for (i, r) in rs.iter().enumerate() {
                    for q in r.primes()? {
                        out.push(PrimePoint { ideal: PrimeIdeal::Component(i, alloc::boxed::Box::new(q.ideal)), residue: q.residue });
                    }
                }
                out
            }
        })
    }

    /// Image of `a` in the residue field at `p`.
    pub fn reduce(&self, p: &PrimePoint, a: &RingElem) -> Scalar {
        self.reduce_ideal(&p.ideal, p.residue, a)
    }

    fn reduce_ideal(&self, ideal: &PrimeIdeal, residue: Field, a: &RingElem) -> Scalar {
        match (self, ideal) {
            (FiniteRing::Zmod(_), PrimeIdeal::Integer(_)) | (FiniteRing::PrimeField(_), PrimeIdeal::Zero) => {
                residue.from_i64((a.0[0] % residue.characteristic()) as i64)
            }
            (FiniteRing::PolyQuotient { p, .. }, PrimeIdeal::Poly(g)) => residue.from_coeffs(&poly::rem(&a.0, g, *p)),
            (FiniteRing::Product(rs), PrimeIdeal::Component(i, q)) => rs[*i].reduce_ideal(q, residue, &self.components(a)[*i]),
            _ => panic!("prime of a different ring"),
        }
    }

    pub fn contains(&self, p: &PrimePoint, a: &RingElem) -> bool {
        p.residue.is_zero(&self.reduce(p, a))
    }

    /// The localization `R_p` as a ring.
    pub fn localize(&self, p: &PrimeIdeal) -> Result<FiniteRing> {
        match (self, p) {
            (FiniteRing::Zmod(n), PrimeIdeal::Integer(q)) => {
                let mut pe = 1;
                let mut m = *n;
                while m % q == 0 {
                    pe *= q;
                    m /= q;
                }
                Ok(FiniteRing::Zmod(pe))
            }
            (FiniteRing::PrimeField(_), PrimeIdeal::Zero) => Ok(self.clone()),
            (FiniteRing::PolyQuotient { p, f }, PrimeIdeal::Poly(g)) => {
                let e = poly::factor(f, *p).into_iter().find(|(h, _)| h == g).map(|(_, e)| e).ok_or_else(|| {
                    Error::InvalidRing(alloc::format!("{} does not divide {}", poly_string(g), poly_string(f)))
                })?;
                Ok(FiniteRing::PolyQuotient { p: *p, f: poly::pow(g, e, *p) })
            }
            (FiniteRing::Product(rs), PrimeIdeal::Component(i, q)) => rs[*i].localize(q),
            _ => Err(Error::InvalidRing("prime of a different ring".into())),
        }
    }

    /// The canonical map `R -> R_p`.
    pub fn to_localization(&self, p: &PrimeIdeal, a: &RingElem) -> Result<RingElem> {
        let target = self.localize(p)?;
        Ok(match (self, p) {
            (FiniteRing::Zmod(_), _) => match target {
                FiniteRing::Zmod(pe) => RingElem(alloc::vec![a.0[0] % pe]),
                _ => unreachable!(),
            },
            (FiniteRing::PrimeField(_), _) => a.clone(),
            (FiniteRing::PolyQuotient { .. }, _) => target.from_poly(&a.0),
            (FiniteRing::Product(rs), PrimeIdeal::Component(i, q)) => rs[*i].to_localization(q, &self.components(a)[*i])?,
            _ => return Err(Error::InvalidRing("prime of a different ring".into())),
        })
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteRing::Zmod(n) => write!(f, "Z/{n}"),
            FiniteRing::PrimeField(p) => write!(f, "F_{p}"),
            FiniteRing::PolyQuotient { p, f: m } => write!(f, "F_{p}[x]/({})", poly_string(m)),
            FiniteRing::Product(rs) => {
                for (i, r) in rs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    write!(f, "{r}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeIdeal::Integer(p) => write!(f, "({p})"),
            PrimeIdeal::Zero => f.write_str("(0)"),
            PrimeIdeal::Poly(g) => write!(f, "({})", poly_string(g)),
            PrimeIdeal::Component(i, q) => write!(f, "#{i}{q}"),
        }
    }
}

pub(crate) fn poly_string(c: &[u64]) -> String {
    let mut terms = Vec::new();
    for (k, &a) in c.iter().enumerate().rev() {
        if a == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => "x".into(),
            _ => alloc::format!("x^{k}"),
        };
        terms.push(match (a, k) {
            (_, 0) => alloc::format!("{a}"),
            (1, _) => mono,
            _ => alloc::format!("{a}{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    poly::trim(&mut a);
    poly::trim(&mut b);
    while !b.is_empty() {
        let r = poly::rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Prime factorization by trial division.
pub fn factor_integer(n: u64) -> Result<Vec<(u64, u32)>> {
    if n > FACTOR_LIMIT {
        return Err(Error::Unfactorable(alloc::format!("{n} exceeds the trial-division limit {FACTOR_LIMIT}")));
    }
    let mut out = Vec::new();
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        let mut e = 0;
        while m.is_multiple_of(d) {
            m /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    Ok(out)
}

/// `Π_{p ∈ U} R_p`, sections of the structure sheaf over the (discrete)
/// open set `U`. Empty `U` gives the zero ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sections {
    pub factors: Vec<(PrimeIdeal, FiniteRing)>,
}

impl Sections {
    pub fn order(&self) -> u128 {
        self.factors.iter().map(|(_, r)| r.order()).product()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn describe(&self) -> String {
        if self.factors.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self.factors.iter().map(|(_, r)| alloc::format!("{r}")).collect();
        parts.join(" x ")
    }
}

pub fn structure_sheaf(r: &FiniteRing, open: &[usize]) -> Result<Sections> {
    let primes = r.primes()?;
    let mut factors = Vec::new();
    for &i in open {
        let p = primes.get(i).ok_or_else(|| Error::InvalidRing(alloc::format!("no prime with index {i}")))?;
        factors.push((p.ideal.clone(), r.localize(&p.ideal)?));
    }
    Ok(Sections { factors })
}

/// Evidence that `x ↦ (x_p)_p` is a ring isomorphism `R -> Π_p R_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrtCertificate {
    pub bijective: bool,
    pub additive: bool,
    pub multiplicative: bool,
    pub unital: bool,
    pub pairs_checked: usize,
    /// All pairs were checked, not a sample.
    pub exhaustive: bool,
}

impl CrtCertificate {
    pub fn holds(&self) -> bool {
        self.bijective && self.additive && self.multiplicative && self.unital
    }
}

const EXHAUSTIVE_PAIR_LIMIT: u128 = 1 << 8;

pub fn crt_certificate(r: &FiniteRing, seed: u64) -> Result<CrtCertificate> {
    let primes = r.primes()?;
    let locs: Vec<FiniteRing> = primes.iter().map(|p| r.localize(&p.ideal)).collect::<Result<_>>()?;
    let image = |a: &RingElem| -> Result<Vec<RingElem>> { primes.iter().map(|p| r.to_localization(&p.ideal, a)).collect() };
    let elems = r.elements()?;
    let target_order: u128 = locs.iter().map(|l| l.order()).product();
    let mut seen = alloc::collections::BTreeSet::new();
    for a in &elems {
        seen.insert(image(a)?);
    }
    let bijective = seen.len() as u128 == r.order() && target_order == r.order();
    let unital = image(&r.one())? == locs.iter().map(|l| l.one()).collect::<Vec<_>>();
    let pairs: Vec<(RingElem, RingElem)> = if r.order() <= EXHAUSTIVE_PAIR_LIMIT {
        elems.iter().flat_map(|a| elems.iter().map(move |b| (a.clone(), b.clone()))).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..4096).map(|_| (r.random(&mut rng), r.random(&mut rng))).collect()
    };
    let mut additive = true;
    let mut multiplicative = true;
    for (a, b) in &pairs {
        let (ia, ib) = (image(a)?, image(b)?);
        let sum: Vec<RingElem> = locs.iter().zip(ia.iter().zip(&ib)).map(|(l, (x, y))| l.add(x, y)).collect();
        let prod: Vec<RingElem> = locs.iter().zip(ia.iter().zip(&ib)).map(|(l, (x, y))| l.mul(x, y)).collect();
        additive &= image(&r.add(a, b))? == sum;
        multiplicative &= image(&r.mul(a, b))? == prod;
    }
    Ok(CrtCertificate {
        bijective,
        additive,
        multiplicative,
        unital,
        pairs_checked: pairs.len(),
        exhaustive: r.order() <= EXHAUSTIVE_PAIR_LIMIT,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalVerdict {
    pub local: bool,
    /// The non-units; the maximal ideal when `local`.
    pub non_units: Vec<RingElem>,
    /// Two non-units with a unit sum, or a non-unit times an element that
    /// is a unit, when not local.
    pub witness: Option<(RingElem, RingElem)>,
}

/// Local iff the non-units form an ideal, checked over all pairs.
pub fn local_ring_check(s: &FiniteRing) -> Result<LocalVerdict> {
    let elems = s.elements()?;
    let non_units: Vec<RingElem> = elems.iter().filter(|a| !s.is_unit(a)).cloned().collect();
    for a in &non_units {
        for b in &non_units {
            if s.is_unit(&s.add(a, b)) {
                let witness = Some((a.clone(), b.clone()));
                return Ok(LocalVerdict { local: false, non_units, witness });
            }
        }
        for r in &elems {
            if s.is_unit(&s.mul(r, a)) {
                let witness = Some((r.clone(), a.clone()));
                return Ok(LocalVerdict { local: false, non_units, witness });
            }
        }
    }
    Ok(LocalVerdict { local: true, non_units, witness: None })
}

/// `|S^{-1} R|` for `S = R \ p`, by sorting all fractions `r/s` into classes
/// of `r/s ~ r'/s'` iff `t (r s' - r' s) = 0` for some `t ∈ S`. These are the
/// roofs `R <-s- R -r-> R` whose denominator becomes invertible at `p`.
pub fn fraction_count(r: &FiniteRing, p: &PrimePoint) -> Result<usize> {
    let elems = r.elements()?;
    let denoms: Vec<&RingElem> = elems.iter().filter(|s| !r.contains(p, s)).collect();
    let mut reps: Vec<(RingElem, RingElem)> = Vec::new();
    for a in &elems {
        for &s in &denoms {
            let known = reps.iter().any(|(b, t)| {
                let cross = r.sub(&r.mul(a, t), &r.mul(b, s));
                denoms.iter().any(|u| r.is_zero(&r.mul(u, &cross)))
            });
            if !known {
                reps.push((a.clone(), s.clone()));
            }
        }
    }
    Ok(reps.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(r: &FiniteRing) -> Vec<String> {
        r.primes().unwrap().iter().map(|p| alloc::format!("{}", p.ideal)).collect()
    }

    #[test]
    fn primes_of_small_rings() {
        assert_eq!(names(&FiniteRing::zmod(12).unwrap()), ["(2)", "(3)"]);
        assert_eq!(names(&FiniteRing::prime_field(2).unwrap()), ["(0)"]);
        let dual = FiniteRing::poly_quotient(2, &[0, 0, 1]).unwrap();
        assert_eq!(names(&dual), ["(x)"]);
        let prod = FiniteRing::product(alloc::vec![FiniteRing::PrimeField(2), FiniteRing::PrimeField(3)]).unwrap();
        assert_eq!(names(&prod), ["#0(0)", "#1(0)"]);
        // x^2+x+1 is irreducible over F_2: residue field F_4.
        let f4 = FiniteRing::poly_quotient(2, &[1, 1, 1]).unwrap();
        assert_eq!(f4.primes().unwrap()[0].residue.order(), Some(4));
        assert!(matches!(FiniteRing::zmod((1 << 41) + 1).unwrap().primes(), Err(Error::Unfactorable(_))));
    }

    #[test]
    fn localizations() {
        let z12 = FiniteRing::zmod(12).unwrap();
        let ps = z12.primes().unwrap();
        assert_eq!(z12.localize(&ps[0].ideal).unwrap(), FiniteRing::Zmod(4));
        assert_eq!(z12.localize(&ps[1].ideal).unwrap(), FiniteRing::Zmod(3));
        let dual = FiniteRing::poly_quotient(2, &[0, 0, 1]).unwrap();
        let p = &dual.primes().unwrap()[0];
        assert_eq!(dual.localize(&p.ideal).unwrap(), dual);
        for r in [z12, dual, FiniteRing::zmod(6).unwrap(), FiniteRing::poly_quotient(3, &[2, 0, 1]).unwrap()] {
            for p in r.primes().unwrap() {
                assert_eq!(fraction_count(&r, &p).unwrap() as u128, r.localize(&p.ideal).unwrap().order());
            }
        }
    }

    #[test]
    fn sheaf_sections() {
        let z12 = FiniteRing::zmod(12).unwrap();
        assert!(structure_sheaf(&z12, &[]).unwrap().is_zero_ring());
        assert_eq!(structure_sheaf(&z12, &[0]).unwrap().describe(), "Z/4");
        let all = structure_sheaf(&z12, &[0, 1]).unwrap();
        assert_eq!(all.describe(), "Z/4 x Z/3");
        assert_eq!(all.order(), 12);
        let cert = crt_certificate(&z12, 1).unwrap();
        assert!(cert.holds() && cert.exhaustive);
        let ring = FiniteRing::product(alloc::vec![FiniteRing::PrimeField(2), FiniteRing::poly_quotient(3, &[0, 0, 1]).unwrap()]).unwrap();
        assert!(crt_certificate(&ring, 1).unwrap().holds());
    }

    #[test]
    fn locality() {
        let z4 = local_ring_check(&FiniteRing::zmod(4).unwrap()).unwrap();
        assert!(z4.local);
        assert_eq!(z4.non_units, alloc::vec![RingElem(alloc::vec![0]), RingElem(alloc::vec![2])]);
        let z6 = local_ring_check(&FiniteRing::zmod(6).unwrap()).unwrap();
        assert!(!z6.local);
        assert!(z6.witness.is_some());
        let f5 = local_ring_check(&FiniteRing::prime_field(5).unwrap()).unwrap();
        assert!(f5.local);
        assert_eq!(f5.non_units.len(), 1);
    }

    #[test]
    fn poly_arithmetic() {
        let r = FiniteRing::poly_quotient(2, &[1, 1, 1]).unwrap();
        let x = r.from_poly(&[0, 1]);
        // x^2 = x + 1
        assert_eq!(r.mul(&x, &x), r.from_poly(&[1, 1]));
        assert!(r.elements().unwrap().iter().filter(|a| !r.is_zero(a)).all(|a| r.is_unit(a)));
        assert_eq!(r.display_elem(&r.from_poly(&[1, 1])), "x+1");
    }
}
