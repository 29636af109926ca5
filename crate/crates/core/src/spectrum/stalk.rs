use alloc::string::String;
use alloc::vec::Vec;

use super::{kernel, QuiverInstance, RingInstance, TensorInstance};
use crate::error::Result;
use crate::homalg::quotient_hom_bounded;
use crate::linalg::Field;
use crate::quiver::{hom_space, Rep};
use crate::ringcat::{fraction_count, local_ring_check, FiniteRing, LocalVerdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stalk {
    /// `End_{T/ker F}(1) = R_p`, exactly.
    Ring {
        point: String,
        ring: FiniteRing,
        local: LocalVerdict,
        residue: Field,
        /// `|R_p| / |m_p| = |k(p)|`.
        residue_matches: bool,
        /// `|R_p|` counted independently as fractions `r/s`, `s ∉ p`.
        fractions: usize,
    },
    /// Roof-calculus lower bound for `End_{T/ker F}(1)`.
    Quiver {
        point: String,
        residue: Field,
        /// `dim End_T(1)`.
        end_dim: usize,
        lower_bound: usize,
        exact: bool,
    },
}

impl Stalk {
    pub fn is_local(&self) -> Option<bool> {
        match self {
            Stalk::Ring { local, .. } => Some(local.local),
            Stalk::Quiver { .. } => None,
        }
    }
}

pub fn ring_stalk(inst: &RingInstance, point: usize) -> Result<Stalk> {
    let r = inst.ring();
    let p = &inst.primes()[point];
    let s = r.localize(&p.ideal)?;
    let local = local_ring_check(&s)?;
    let residue_matches = local.local && Some(s.order() / local.non_units.len() as u128) == p.residue.order().map(|o| o as u128);
    Ok(Stalk::Ring {
        point: inst.points()[point].label.clone(),
        fractions: fraction_count(r, p)?,
        ring: s,
        local,
        residue: p.residue,
        residue_matches,
    })
}

/// `budget` bounds the morphisms tried per ideal member when building roofs.
pub fn quiver_stalk(inst: &QuiverInstance, point: usize, budget: usize) -> Result<Stalk> {
    let ideal: Vec<Rep> = kernel(inst, point)?.into_iter().map(|i| inst.reps()[i].clone()).collect();
    let unit = Rep::unit(inst.quiver().clone(), inst.field());
    let q = quotient_hom_bounded(&unit, &unit, &ideal, budget)?;
    Ok(Stalk::Quiver {
        point: inst.points()[point].label.clone(),
        residue: inst.field(),
        end_dim: hom_space(&unit, &unit)?.len(),
        lower_bound: q.lower_bound,
        exact: q.exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_stalks() {
        let inst = RingInstance::new(FiniteRing::zmod(12).unwrap()).unwrap();
        let Stalk::Ring { ring, local, residue_matches, fractions, .. } = ring_stalk(&inst, 0).unwrap() else { panic!() };
        assert_eq!(ring, FiniteRing::Zmod(4));
        assert!(local.local && residue_matches);
        assert_eq!(fractions, 4);
        let dual = RingInstance::new(FiniteRing::poly_quotient(2, &[0, 0, 1]).unwrap()).unwrap();
        let Stalk::Ring { ring, .. } = ring_stalk(&dual, 0).unwrap() else { panic!() };
        assert_eq!(&ring, dual.ring());
    }

    #[test]
    fn quiver_stalk_lower_bound() {
        let inst = QuiverInstance::new(alloc::sync::Arc::new(crate::quiver::Quiver::linear(2)), Field::Prime(2), None).unwrap();
        for v in 0..2 {
            let Stalk::Quiver { residue, end_dim, lower_bound, exact, .. } = quiver_stalk(&inst, v, 16).unwrap() else { panic!() };
            assert_eq!(residue, Field::Prime(2));
            assert_eq!((end_dim, lower_bound, exact), (1, 1, false));
        }
    }
}
