use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::*;
use crate::linalg::Field;
use crate::quiver::{Quiver, Rep};
use crate::ringcat::FiniteRing;

const F2: Field = Field::Prime(2);

fn quiver(q: Quiver, f: Field) -> QuiverInstance {
    QuiverInstance::new(Arc::new(q), f, None).unwrap()
}

fn set(xs: &[usize]) -> BTreeSet<usize> {
    xs.iter().copied().collect()
}

fn full_report<I: TensorInstance>(inst: &I) -> (usize, usize, Comparison) {
    let lattice = enumerate_thick_tensor_ideals(inst).unwrap();
    assert!(lattice.closed_under_intersection);
    let spec = balmer_spectrum(inst, &lattice).unwrap();
    let cmp = comparison_f(inst, &spec).unwrap();
    (lattice.ideals.len(), spec.primes.len(), cmp)
}

#[test]
fn a2_points_supports_and_ideals() {
    let inst = quiver(Quiver::linear(2), F2);
    assert_eq!(inst.points().len(), 2);
    let s1 = inst.object(Rep::simple(inst.quiver().clone(), F2, 0));
    let s2 = inst.object(Rep::simple(inst.quiver().clone(), F2, 1));
    assert_eq!(support(&inst, &inst.unit()).unwrap(), set(&[0, 1]));
    assert_eq!(inst.evaluate(1, &s1).unwrap(), Graded::new());
    assert_eq!(open_basic(&inst, &s1).unwrap(), set(&[1]));
    assert!(open_basic(&inst, &inst.direct_sum(&s1, &s2)).unwrap().is_empty());

    let (ideals, primes, cmp) = full_report(&inst);
    assert_eq!((ideals, primes), (4, 2));
    assert!(cmp.bijective() && cmp.continuous);

    let (all, closed) = ideal_t_u(&inst, &set(&[0, 1])).unwrap();
    assert!(all.members.is_empty() && closed);
    let (none, _) = ideal_t_u(&inst, &set(&[])).unwrap();
    assert_eq!(none.members.len(), 3);
    let (only, closed) = ideal_t_u(&inst, &set(&[1])).unwrap();
    assert!(closed);
    assert_eq!(only.members.len(), 1);
    assert_eq!(inst.reps()[*only.members.first().unwrap()].dims(), [1, 0]);
}

#[test]
fn type_a_ideal_counts() {
    for (q, ideals, primes) in [
        (Quiver::linear(1), 2, 1),
        (Quiver::linear(3), 8, 3),
        (Quiver::type_a(&[true, false]), 8, 3),
        (Quiver::discrete(2), 4, 2),
    ] {
        let inst = quiver(q, F2);
        let (i, p, cmp) = full_report(&inst);
        assert_eq!((i, p), (ideals, primes));
        assert!(cmp.bijective() && cmp.continuous);
    }
}

#[test]
fn rings() {
    for (n, pts) in [(4, 1), (6, 2), (12, 2)] {
        let inst = RingInstance::new(FiniteRing::zmod(n).unwrap()).unwrap();
        assert_eq!(inst.points().len(), pts);
        let (ideals, primes, cmp) = full_report(&inst);
        assert_eq!((ideals, primes), (1 << pts, pts));
        assert!(cmp.bijective() && cmp.continuous);
    }
    let z12 = RingInstance::new(FiniteRing::zmod(12).unwrap()).unwrap();
    assert_eq!(support(&z12, &z12.multiplication(2)).unwrap(), set(&[0]));
    assert!(!z12.evaluate(0, &z12.multiplication(2)).unwrap().is_empty());
}

#[test]
fn orbit_has_primes_but_no_points() {
    let inst = OrbitInstance::new(2, F2).unwrap();
    assert!(inst.points().is_empty());
    assert!(inst.obstruction().unwrap().holds());
    let (ideals, primes, cmp) = full_report(&inst);
    assert_eq!((ideals, primes), (2, 1));
    assert!(cmp.injective && !cmp.surjective);
}

#[test]
fn support_axioms_and_fault_injection() {
    let inst = quiver(Quiver::linear(2), F2);
    let report = verify_support_data(&inst, 40, 3).unwrap();
    assert!(report.holds(), "{:?}", report.axioms);
    let ring = RingInstance::new(FiniteRing::zmod(12).unwrap()).unwrap();
    assert!(verify_support_data(&ring, 40, 3).unwrap().holds());
    assert!(verify_support_data(&OrbitInstance::new(2, F2).unwrap(), 20, 3).unwrap().holds());
    let bad = verify_support_data(&CorruptTensor(quiver(Quiver::linear(2), F2)), 10, 3).unwrap();
    let t = bad.get("support of a tensor is the intersection").unwrap();
    assert!(!t.holds() && t.witness.is_some());
}

#[test]
fn localization_matches_open_sets() {
    for q in [Quiver::linear(2), Quiver::linear(3)] {
        let inst = quiver(q, F2);
        for a in &inst.pool().objects {
            let (points, u) = localization_points(&inst, a).unwrap();
            assert_eq!(points, u);
        }
        let (p, u) = localization_points(&inst, &inst.zero()).unwrap();
        assert_eq!((p.len(), u.len()), (inst.points().len(), inst.points().len()));
        assert!(localization_points(&inst, &inst.unit()).unwrap().0.is_empty());
    }
}

#[test]
fn gamma_maps() {
    let a2 = quiver(Quiver::linear(2), F2);
    let (_, _, id) = quiver_gamma(&a2, &GammaFunctor::Identity, 5, 1).unwrap();
    assert_eq!(id.map, [0, 1]);
    let (_, vmap, g) = quiver_gamma(&a2, &GammaFunctor::SubquiverRestriction { keep: alloc::vec![0] }, 10, 1).unwrap();
    assert_eq!(vmap, [0]);
    assert_eq!(g.map, [0]);
    assert!(g.continuous);
    assert!(matches!(quiver_gamma(&a2, &GammaFunctor::Doubling, 5, 1), Err(crate::Error::NotATensorFunctor(_))));

    let z12 = RingInstance::new(FiniteRing::zmod(12).unwrap()).unwrap();
    let (z3, g) = ring_gamma(&z12, &GammaFunctor::RingQuotient { target: FiniteRing::zmod(3).unwrap() }, 10, 1).unwrap();
    assert_eq!(z3.points().len(), 1);
    assert_eq!(g.map, [1]);
    assert!(g.continuous);
    assert!(ring_gamma(&z12, &GammaFunctor::RingQuotient { target: FiniteRing::zmod(5).unwrap() }, 1, 1).is_err());
}

#[test]
fn transported_tensors() {
    let a2 = quiver(Quiver::linear(2), F2);
    let t = transport_tensor(&a2, &Equivalence::ShiftTwist(2), 10, 1).unwrap();
    assert!(t.holds(), "{t:?}");
    assert_eq!(t.bijection, [0, 1]);
    let id = transport_tensor(&a2, &Equivalence::Identity, 5, 1).unwrap();
    assert!(id.holds());
    let two = quiver(Quiver::discrete(2), F2);
    let swap = transport_tensor(&two, &Equivalence::Automorphism(alloc::vec![1, 0]), 10, 1).unwrap();
    assert!(swap.holds(), "{swap:?}");
    assert_eq!(swap.bijection, [1, 0]);
    assert!(transport_tensor(&a2, &Equivalence::Automorphism(alloc::vec![1, 0]), 1, 1).is_err());
}

#[test]
fn rational_comparison() {
    let inst = quiver(Quiver::linear(2), Field::Rationals);
    let cmp = {
        let lattice = enumerate_thick_tensor_ideals(&inst).unwrap();
        let spec = balmer_spectrum(&inst, &lattice).unwrap();
        comparison_f(&inst, &spec).unwrap()
    };
    assert!(cmp.injective && cmp.continuous);
    let kernels: Vec<_> = cmp.kernels.iter().collect();
    assert_ne!(kernels[0], kernels[1]);
}
