use std::sync::Arc;

use funspec_core::linalg::Field;
use funspec_core::quiver::Quiver;
use funspec_core::ringcat::FiniteRing;
use funspec_core::spectrum::{
    balmer_spectrum, comparison_f, enumerate_thick_tensor_ideals, support, OrbitInstance, QuiverInstance, RingInstance,
    TensorInstance,
};

fn spectrum_counts<I: TensorInstance>(inst: &I) -> (usize, usize, usize, bool) {
    let lattice = enumerate_thick_tensor_ideals(inst).unwrap();
    let spec = balmer_spectrum(inst, &lattice).unwrap();
    let cmp = comparison_f(inst, &spec).unwrap();
    (inst.points().len(), lattice.ideals.len(), spec.primes.len(), cmp.bijective() && cmp.continuous)
}

#[test]
fn a4_over_f3() {
    let inst = QuiverInstance::new(Arc::new(Quiver::type_a(&[true, false, true])), Field::Prime(3), None).unwrap();
    assert_eq!(inst.reps().len(), 10);
    assert_eq!(spectrum_counts(&inst), (4, 16, 4, true));
}

#[test]
fn square_free_ring() {
    let inst = RingInstance::new(FiniteRing::zmod(30).unwrap()).unwrap();
    assert_eq!(spectrum_counts(&inst), (3, 8, 3, true));
    let s: Vec<String> = support(&inst, &inst.multiplication(6)).unwrap().into_iter().map(|p| inst.points()[p].label.clone()).collect();
    assert_eq!(s, ["(2)", "(3)"]);
}

#[test]
fn field_extension_ring() {
    // F_2[x]/(x^2 + x + 1) is F_4: one point with residue field F_4.
    let inst = RingInstance::new(FiniteRing::poly_quotient(2, &[1, 1, 1]).unwrap()).unwrap();
    assert_eq!(spectrum_counts(&inst), (1, 2, 1, true));
    assert_eq!(inst.points()[0].residue.order(), Some(4));
}

#[test]
fn orbit_category_has_primes_without_points() {
    let inst = OrbitInstance::new(3, Field::Prime(5)).unwrap();
    let (points, ideals, primes, bijective) = spectrum_counts(&inst);
    assert_eq!((points, ideals, primes, bijective), (0, 2, 1, false));
    assert!(inst.obstruction().unwrap().holds());
}
