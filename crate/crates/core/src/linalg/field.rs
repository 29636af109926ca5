//! Exact scalar fields: prime fields, small Galois extensions and the rationals.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// A field element. Finite-field elements are stored as packed base-`p`
/// coefficient vectors; rationals as normalized big fractions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Fin(u64),
    Rat(BigRational),
}

/// Largest field order we are willing to pack into a `u64` element code.
const MAX_FINITE_ORDER: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    /// `F_p`.
    Prime(u64),
    /// `F_p[x]/(g)` for a monic irreducible `g` of the given degree. `modulus`
    /// packs the coefficients of `g` below the leading one, base `p`.
    Galois { p: u64, degree: u32, modulus: u64 },
    /// `Q`.
    Rationals,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense polynomial helpers over `F_p`, coefficients low degree first.
pub(crate) mod poly {
    use alloc::vec::Vec;

    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = alloc::vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }

    pub fn inv_mod_p(a: u64, p: u64) -> u64 {
        super::pow_mod(a % p, p - 2, p)
    }

    /// Quotient and remainder of `a` by nonzero `b`.
    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = inv_mod_p(b[db], p);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = alloc::vec![0u64; r.len() - db];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = r[r.len() - 1] * lead_inv % p;
            q[shift] = c;
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * bi % p) % p;
            }
            trim(&mut r);
        }
        trim(&mut q);
        (q, r)
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        divrem(a, b, p).1
    }

    pub fn is_monic(a: &[u64]) -> bool {
        a.last() == Some(&1)
    }

    /// All monic polynomials of exactly degree `d`.
    pub fn monics(d: usize, p: u64) -> Vec<Vec<u64>> {
        let count = p.pow(d as u32);
        (0..count)
            .map(|code| {
                let mut c = code;
                let mut v: Vec<u64> = (0..d)
                    .map(|_| {
                        let digit = c % p;
                        c /= p;
                        digit
                    })
                    .collect();
                v.push(1);
                v
            })
            .collect()
    }

    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let d = f.len() - 1;
        if d == 0 {
            return false;
        }
        for e in 1..=d / 2 {
            for g in monics(e, p) {
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Factor a monic polynomial into monic irreducibles with multiplicities,
    /// sorted by (degree, coefficients).
    pub fn factor(f: &[u64], p: u64) -> Vec<(Vec<u64>, u32)> {
        let mut rest: Vec<u64> = f.to_vec();
        trim(&mut rest);
        let mut out = Vec::new();
        let mut e = 1;
        while rest.len() > 1 {
            if e > rest.len() - 1 {
                break;
            }
            for g in monics(e, p) {
                if !is_irreducible(&g, p) {
                    continue;
                }
                let mut mult = 0;
                loop {
                    let (q, r) = divrem(&rest, &g, p);
                    if !r.is_empty() {
                        break;
                    }
                    rest = q;
                    mult += 1;
                }
                if mult > 0 {
                    out.push((g, mult));
                }
            }
            e += 1;
        }
        out
    }

    pub fn pow(a: &[u64], e: u32, p: u64) -> Vec<u64> {
        let mut out = alloc::vec![1u64];
        for _ in 0..e {
            out = mul(&out, a, p);
        }
        out
    }

    pub fn pack(a: &[u64], p: u64) -> u64 {
        a.iter().rev().fold(0u64, |acc, &c| acc * p + c)
    }

    pub fn unpack(mut code: u64, p: u64, len: usize) -> Vec<u64> {
        let mut v = Vec::with_capacity(len);
        for _ in 0..len {
            v.push(code % p);
            code /= p;
        }
        trim(&mut v);
        v
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// `F_p[x]/(g)`; `g` is given low-degree-first and must be monic irreducible.
    pub fn galois(p: u64, modulus: &[u64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut g: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        poly::trim(&mut g);
        if g.len() < 2 || !poly::is_monic(&g) || !poly::is_irreducible(&g, p) {
            return Err(Error::InvalidModulus);
        }
        let degree = (g.len() - 1) as u32;
        if degree == 1 {
            return Ok(Field::Prime(p));
        }
        let order = (p as u128).pow(degree);
        if order > MAX_FINITE_ORDER as u128 {
            return Err(Error::FieldTooLarge);
        }
        Ok(Field::Galois { p, degree, modulus: poly::pack(&g[..g.len() - 1], p) })
    }

    /// The field of order `p^degree` defined by the first monic irreducible
    /// polynomial in lexicographic coefficient order.
    pub fn gf(p: u64, degree: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if degree == 0 {
            return Err(Error::InvalidModulus);
        }
        if degree == 1 {
            return Ok(Field::Prime(p));
        }
        let g = poly::monics(degree as usize, p)
            .into_iter()
            .find(|g| poly::is_irreducible(g, p))
            .ok_or(Error::InvalidModulus)?;
        Field::galois(p, &g)
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            Field::Prime(p) | Field::Galois { p, .. } => p,
            Field::Rationals => 0,
        }
    }

    /// Number of elements, `None` for `Q`.
    pub fn order(&self) -> Option<u64> {
        match *self {
            Field::Prime(p) => Some(p),
            Field::Galois { p, degree, .. } => Some(p.pow(degree)),
            Field::Rationals => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// Degree over the prime field (1 for `Q`).
    pub fn degree(&self) -> u32 {
        match *self {
            Field::Galois { degree, .. } => degree,
            _ => 1,
        }
    }

    fn modulus_poly(&self) -> Vec<u64> {
        match *self {
            Field::Galois { p, degree, modulus } => {
                let mut g = poly::unpack(modulus, p, degree as usize);
                g.resize(degree as usize, 0);
                g.push(1);
                g
            }
            _ => Vec::new(),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::zero()),
            _ => Scalar::Fin(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::one()),
            _ => Scalar::Fin(1),
        }
    }

    pub fn from_i64(&self, x: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(x))),
            Field::Prime(p) | Field::Galois { p, .. } => Scalar::Fin(x.rem_euclid(p as i64) as u64),
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.from_i64(num);
        let d = self.from_i64(den);
        Ok(self.mul(&n, &self.inv(&d)?))
    }

    /// Element of a Galois field from its coefficient list (low degree first).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Scalar {
        match *self {
            Field::Prime(p) => Scalar::Fin(coeffs.first().copied().unwrap_or(0) % p),
            Field::Galois { p, .. } => {
                let reduced = poly::rem(
                    &coeffs.iter().map(|c| c % p).collect::<Vec<_>>(),
                    &self.modulus_poly(),
                    p,
                );
                Scalar::Fin(poly::pack(&reduced, p))
            }
            Field::Rationals => self.from_i64(coeffs.first().copied().unwrap_or(0) as i64),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fin(x) => *x == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fin(x) => *x == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    fn fin(a: &Scalar) -> u64 {
        match a {
            Scalar::Fin(x) => *x,
            Scalar::Rat(_) => panic!("rational scalar used in a finite field"),
        }
    }

    fn rat(a: &Scalar) -> &BigRational {
        match a {
            Scalar::Rat(r) => r,
            Scalar::Fin(_) => panic!("finite-field scalar used in Q"),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match *self {
            Field::Prime(p) => Scalar::Fin((Self::fin(a) + Self::fin(b)) % p),
            Field::Galois { p, degree, .. } => {
                let (mut x, mut y) = (Self::fin(a), Self::fin(b));
                let mut out = 0u64;
                let mut place = 1u64;
                for _ in 0..degree {
                    out += ((x % p + y % p) % p) * place;
                    x /= p;
                    y /= p;
                    place *= p;
                }
                Scalar::Fin(out)
            }
            Field::Rationals => Scalar::Rat(Self::rat(a) + Self::rat(b)),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match *self {
            Field::Prime(p) => Scalar::Fin((p - Self::fin(a) % p) % p),
            Field::Galois { p, degree, .. } => {
                let mut x = Self::fin(a);
                let mut out = 0u64;
                let mut place = 1u64;
                for _ in 0..degree {
                    out += ((p - x % p) % p) * place;
                    x /= p;
                    place *= p;
                }
                Scalar::Fin(out)
            }
            Field::Rationals => Scalar::Rat(-Self::rat(a)),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match *self {
            Field::Prime(p) => Scalar::Fin(((Self::fin(a) as u128 * Self::fin(b) as u128) % p as u128) as u64),
            Field::Galois { p, degree, .. } => {
                let x = poly::unpack(Self::fin(a), p, degree as usize);
                let y = poly::unpack(Self::fin(b), p, degree as usize);
                let prod = poly::mul(&x, &y, p);
                Scalar::Fin(poly::pack(&poly::rem(&prod, &self.modulus_poly(), p), p))
            }
            Field::Rationals => Scalar::Rat(Self::rat(a) * Self::rat(b)),
        }
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match *self {
            Field::Prime(p) => Scalar::Fin(pow_mod(Self::fin(a), p - 2, p)),
            Field::Galois { .. } => {
                let q = self.order().unwrap_or(2);
                self.pow(a, q - 2)
            }
            Field::Rationals => Scalar::Rat(Self::rat(a).recip()),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Every element, in code order. `None` for `Q`.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        self.order().map(|q| (0..q).map(Scalar::Fin).collect())
    }

    /// A uniformly random element for finite fields; for `Q` a random integer
    /// in `[-bound, bound]` with a random small denominator.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self.order() {
            Some(q) => Scalar::Fin(rng.gen_range(0..q)),
            None => {
                let num: i64 = rng.gen_range(-9..=9);
                let den: i64 = rng.gen_range(1..=3);
                Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
            }
        }
    }

    /// Image of an element of `other` under the canonical embedding into `self`.
    /// Supported: prime subfield into any extension of the same characteristic,
    /// and identity maps.
    pub fn embed_from(&self, other: &Field, a: &Scalar) -> Result<Scalar> {
        if self == other {
            return Ok(a.clone());
        }
        match (*other, *self) {
            (Field::Prime(p), Field::Galois { p: q, .. }) if p == q => Ok(a.clone()),
            _ => Err(Error::NoEmbedding),
        }
    }

    pub fn display(&self, a: &Scalar) -> alloc::string::String {
        use alloc::string::ToString;
        match (self, a) {
            (Field::Rationals, Scalar::Rat(r)) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    alloc::format!("{}/{}", r.numer(), r.denom())
                }
            }
            (Field::Galois { p, degree, .. }, Scalar::Fin(x)) => {
                let coeffs = poly::unpack(*x, *p, *degree as usize);
                if coeffs.is_empty() {
                    return "0".to_string();
                }
                let mut parts = Vec::new();
                for (i, c) in coeffs.iter().enumerate().rev() {
                    if *c == 0 {
                        continue;
                    }
                    parts.push(match (i, c) {
                        (0, c) => c.to_string(),
                        (1, 1) => "x".to_string(),
                        (1, c) => alloc::format!("{c}x"),
                        (i, 1) => alloc::format!("x^{i}"),
                        (i, c) => alloc::format!("{c}x^{i}"),
                    });
                }
                parts.join("+")
            }
            (_, Scalar::Fin(x)) => x.to_string(),
            (_, Scalar::Rat(r)) => r.to_string(),
        }
    }

    /// Integer value of a rational scalar when it is integral.
    pub fn as_integer(&self, a: &Scalar) -> Option<BigInt> {
        match a {
            Scalar::Rat(r) if r.is_integer() => Some(r.to_integer()),
            Scalar::Fin(x) if matches!(self, Field::Prime(_)) => Some(BigInt::from(*x)),
            _ => None,
        }
    }

    /// Absolute height of a rational scalar; used only for growth diagnostics.
    pub fn height(&self, a: &Scalar) -> u64 {
        match a {
            Scalar::Rat(r) => r.numer().abs().bits().max(r.denom().bits()),
            Scalar::Fin(_) => 0,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::Galois { p, degree, .. } => write!(f, "F_{}", p.pow(*degree)),
            Field::Rationals => write!(f, "Q"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(5);
        assert_eq!(f.add(&a, &b), Scalar::Fin(1));
        assert_eq!(f.mul(&a, &b), Scalar::Fin(1));
        assert_eq!(f.inv(&a).unwrap(), Scalar::Fin(5));
        assert_eq!(f.from_i64(-1), Scalar::Fin(6));
        assert!(Field::prime(6).is_err());
    }

    #[test]
    fn f4_is_a_field() {
        let f = Field::gf(2, 2).unwrap();
        assert_eq!(f.order(), Some(4));
        let els = f.elements().unwrap();
        for a in &els[1..] {
            let inv = f.inv(a).unwrap();
            assert!(f.is_one(&f.mul(a, &inv)));
        }
        // x * x = x + 1 in F_2[x]/(x^2+x+1)
        let x = Scalar::Fin(2);
        assert_eq!(f.mul(&x, &x), Scalar::Fin(3));
        for a in &els {
            assert!(f.is_zero(&f.add(a, a)));
        }
    }

    #[test]
    fn galois_rejects_reducible_modulus() {
        assert!(Field::galois(2, &[1, 0, 1]).is_err());
        assert!(Field::galois(3, &[1, 0, 1]).is_ok());
    }

    #[test]
    fn factor_over_f2() {
        // x^2 = x * x
        assert_eq!(poly::factor(&[0, 0, 1], 2), alloc::vec![(alloc::vec![0, 1], 2)]);
        // x^2 + 1 = (x + 1)^2 over F_2
        assert_eq!(poly::factor(&[1, 0, 1], 2), alloc::vec![(alloc::vec![1, 1], 2)]);
        // x^3 + x = x (x+1)^2
        assert_eq!(
            poly::factor(&[0, 1, 0, 1], 2),
            alloc::vec![(alloc::vec![0, 1], 1), (alloc::vec![1, 1], 2)]
        );
    }

    #[test]
    fn rationals() {
        let q = Field::Rationals;
        let a = q.from_ratio(1, 2).unwrap();
        let b = q.from_ratio(1, 3).unwrap();
        assert_eq!(q.add(&a, &b), q.from_ratio(5, 6).unwrap());
        assert_eq!(q.display(&q.from_ratio(-4, 6).unwrap()), "-2/3");
        assert!(q.inv(&q.zero()).is_err());
    }
}
