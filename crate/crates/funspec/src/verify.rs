//! The acceptance matrix: nine groups of exact checks over fixed instances.

use std::collections::BTreeMap;
use std::sync::Arc;

use anyhow::Result;
use funspec_core::homalg::{cohomology_dims, random_complex, ChainMap, Complex, RepCategory};
use funspec_core::linalg::{smith_normal_form, Field, IntMatrix};
use funspec_core::orbit::{tensor_point_obstruction, unit_shift_periodicity, zero_ideal_prime};
use funspec_core::pathalg::{base_change, pullback_consistent, verify_reconstruction, ShiftPolicy};
use funspec_core::quiver::{decompose, hom_space, is_indecomposable, DecomposeStatus, Quiver, Rep, RepMorphism};
use funspec_core::ringcat::{crt_certificate, structure_sheaf, FiniteRing, PrimeIdeal};
use funspec_core::spectrum::{
    balmer_spectrum, comparison_f, enumerate_thick_tensor_ideals, kernel, localization_points, quiver_gamma, ring_gamma,
    ring_stalk, support, transport_tensor, verify_support_data, CorruptTensor, Equivalence, GammaFunctor,
    OrbitInstance, QuiverInstance, RingInstance, Stalk, TensorInstance,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;
use crate::run::run;

const F2: Field = Field::Prime(2);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub module: &'static str,
    pub operation: &'static str,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub criterion: usize,
    pub title: &'static str,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl Check {
    fn new(criterion: usize, title: &'static str) -> Self {
        Check { criterion, title, checks: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn expect(&mut self, ok: bool, module: &'static str, operation: &'static str, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure { module, operation, witness: witness() });
        }
    }

    fn absorb<T>(&mut self, r: Result<T>, module: &'static str, operation: &'static str) -> Option<T> {
        match r {
            Ok(t) => Some(t),
            Err(e) => {
                self.expect(false, module, operation, || format!("error: {e}"));
                None
            }
        }
    }

    pub fn line(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!("[{verdict}] {}. {} ({} checks)", self.criterion, self.title, self.checks);
        if let Some(f) = self.failures.first() {
            s.push_str(&format!("\n       first failure: {}::{}: {}", f.module, f.operation, f.witness));
        }
        s
    }
}

fn a3_mixed() -> Quiver {
    Quiver::type_a(&[true, false])
}

fn quiver_inst(q: Quiver, f: Field) -> Result<QuiverInstance> {
    Ok(QuiverInstance::new(Arc::new(q), f, None)?)
}

fn quiver_comparison() -> Check {
    let mut c = Check::new(1, "quiver points, ideals and primes");
    let cases = [("A1", Quiver::linear(1)), ("A2", Quiver::linear(2)), ("A3", Quiver::linear(3)), ("A3 mixed", a3_mixed())];
    for (name, q) in cases {
        let n = q.num_vertices();
        for field in [F2, Field::Rationals] {
            let Some(inst) = c.absorb(quiver_inst(q.clone(), field), "spectrum", "QuiverInstance::new") else { continue };
            c.expect(inst.points().len() == n, "spectrum", "points", || format!("{name} over {field}: {} points", inst.points().len()));
            let kernels: Vec<_> = (0..n).filter_map(|p| kernel(&inst, p).ok()).collect();
            let distinct = (0..n).all(|i| (0..i).all(|j| kernels[i] != kernels[j]));
            c.expect(kernels.len() == n && distinct, "spectrum", "kernel", || format!("{name} over {field}: kernels coincide"));
            if field != F2 {
                continue;
            }
            let Some(lattice) = c.absorb(enumerate_thick_tensor_ideals(&inst).map_err(Into::into), "spectrum", "enumerate_thick_tensor_ideals")
            else {
                continue;
            };
            c.expect(lattice.exhaustive && lattice.ideals.len() == 1 << n, "spectrum", "enumerate_thick_tensor_ideals", || {
                format!("{name}: {} ideals, exhaustive {}", lattice.ideals.len(), lattice.exhaustive)
            });
            let Some(spec) = c.absorb(balmer_spectrum(&inst, &lattice).map_err(Into::into), "spectrum", "balmer_spectrum") else { continue };
            let primes_are_kernels = spec.primes.iter().all(|p| kernels.contains(&p.members));
            c.expect(spec.primes.len() == n && primes_are_kernels, "spectrum", "balmer_spectrum", || {
                format!("{name}: {} primes, all kernels {primes_are_kernels}", spec.primes.len())
            });
            if let Some(cmp) = c.absorb(comparison_f(&inst, &spec).map_err(Into::into), "spectrum", "comparison_f") {
                c.expect(cmp.bijective() && cmp.continuous, "spectrum", "comparison_f", || format!("{name}: {cmp:?}"));
            }
        }
    }
    c
}

fn path_algebra() -> Check {
    let mut c = Check::new(2, "path algebra reconstruction");
    let w = (-1, 1);
    for (name, q, dim) in [("A2", Quiver::linear(2), 3), ("A3", Quiver::linear(3), 6), ("A3 mixed", a3_mixed(), 5)] {
        let Some(inst) = c.absorb(quiver_inst(q, F2), "spectrum", "QuiverInstance::new") else { continue };
        if let Some(r) = c.absorb(verify_reconstruction(&inst, w, ShiftPolicy::Compatible).map_err(Into::into), "pathalg", "verify_reconstruction") {
            c.expect(r.holds() && r.total_dim() == dim && r.algebra_dim == dim, "pathalg", "verify_reconstruction", || {
                format!("{name}: dim {} vs {dim}, {r:?}", r.total_dim())
            });
        }
        let Some(f4) = c.absorb(Field::gf(2, 2).map_err(Into::into), "linalg", "Field::gf") else { continue };
        if let Some(b) = c.absorb(base_change(&inst, f4, w, ShiftPolicy::Compatible).map_err(Into::into), "pathalg", "base_change") {
            c.expect(b.holds() && b.target_dim == dim, "pathalg", "base_change", || format!("{name}: {b:?}"));
        }
    }
    c
}

fn affine() -> Check {
    let mut c = Check::new(3, "affine reconstruction at artinian scale");
    let rings = [
        FiniteRing::zmod(4),
        FiniteRing::zmod(6),
        FiniteRing::zmod(12),
        FiniteRing::poly_quotient(2, &[0, 0, 1]),
        FiniteRing::product(vec![FiniteRing::Zmod(2), FiniteRing::Zmod(3)]),
    ];
    for r in rings {
        let Some(r) = c.absorb(r.map_err(Into::into), "ringcat", "FiniteRing") else { continue };
        let Some(inst) = c.absorb(RingInstance::new(r.clone()).map_err(Into::into), "spectrum", "RingInstance::new") else { continue };
        let Some(primes) = c.absorb(r.primes().map_err(Into::into), "ringcat", "primes") else { continue };
        c.expect(inst.points().len() == primes.len(), "spectrum", "points", || format!("{r}: {} points", inst.points().len()));
        let cmp = enumerate_thick_tensor_ideals(&inst).and_then(|l| balmer_spectrum(&inst, &l)).and_then(|s| comparison_f(&inst, &s));
        if let Some(cmp) = c.absorb(cmp.map_err(Into::into), "spectrum", "comparison_f") {
            c.expect(cmp.bijective() && cmp.continuous, "spectrum", "comparison_f", || format!("{r}: {cmp:?}"));
        }
        for (i, p) in primes.iter().enumerate() {
            let Some(Stalk::Ring { ring, local, residue_matches, fractions, .. }) =
                c.absorb(ring_stalk(&inst, i).map_err(Into::into), "spectrum", "ring_stalk")
            else {
                continue;
            };
            c.expect(local.local && residue_matches, "ringcat", "local_ring_check", || format!("{r} at {}: not local", p.ideal));
            c.expect(fractions as u128 == ring.order(), "ringcat", "localize", || {
                format!("{r} at {}: {ring} has {} elements, {fractions} fractions", p.ideal, ring.order())
            });
            if r == FiniteRing::Zmod(12) {
                let expected = match p.ideal {
                    PrimeIdeal::Integer(2) => FiniteRing::Zmod(4),
                    _ => FiniteRing::Zmod(3),
                };
                c.expect(ring == expected, "ringcat", "localize", || format!("Z/12 at {}: {ring}", p.ideal));
            }
        }
        let all: Vec<usize> = (0..primes.len()).collect();
        if let Some(s) = c.absorb(structure_sheaf(&r, &all).map_err(Into::into), "ringcat", "structure_sheaf") {
            c.expect(s.order() == r.order(), "ringcat", "structure_sheaf", || format!("{r}: sections {}", s.describe()));
        }
        if let Some(crt) = c.absorb(crt_certificate(&r, 1).map_err(Into::into), "ringcat", "crt_certificate") {
            c.expect(crt.holds(), "ringcat", "crt_certificate", || format!("{r}: {crt:?}"));
        }
        if r == FiniteRing::Zmod(12) {
            if let Some(s) = c.absorb(support(&inst, &inst.multiplication(2)).map_err(Into::into), "spectrum", "support") {
                let labels: Vec<&str> = s.iter().map(|&i| inst.points()[i].label.as_str()).collect();
                c.expect(labels == ["(2)"], "spectrum", "support", || format!("support of Z/12 -2-> Z/12: {labels:?}"));
            }
        }
    }
    c
}

fn axiom_check<I: TensorInstance>(c: &mut Check, inst: &I, seed: u64) {
    if let Some(r) = c.absorb(verify_support_data(inst, 200, seed).map_err(Into::into), "spectrum", "verify_support_data") {
        for a in &r.axioms {
            c.expect(a.holds(), "spectrum", "verify_support_data", || {
                format!("{}: {} ({}/{} passed): {}", inst.name(), a.name, a.passed, a.checked, a.witness.clone().unwrap_or_default())
            });
        }
    }
}

fn support_axioms(seed: u64, corrupt: bool) -> Check {
    let mut c = Check::new(4, "support data axioms");
    for q in [Quiver::linear(2), Quiver::linear(3), a3_mixed()] {
        let Some(inst) = c.absorb(quiver_inst(q, F2), "spectrum", "QuiverInstance::new") else { continue };
        if corrupt {
            axiom_check(&mut c, &CorruptTensor(inst), seed);
        } else {
            axiom_check(&mut c, &inst, seed);
        }
    }
    for n in [6, 12] {
        if let Some(inst) = c.absorb(FiniteRing::zmod(n).and_then(RingInstance::new).map_err(Into::into), "spectrum", "RingInstance::new") {
            axiom_check(&mut c, &inst, seed);
        }
    }
    c
}

fn orbit(seed: u64) -> Check {
    let mut c = Check::new(5, "orbit category counterexample");
    for m in [1, 2, 5] {
        if let Some(w) = c.absorb(unit_shift_periodicity(F2, m).map_err(Into::into), "orbit", "unit_shift_periodicity") {
            c.expect(w.verdict && w.iso.is_iso(), "orbit", "unit_shift_periodicity", || format!("m={m}: 1 and 1[{m}] not identified"));
        }
        if let Some(cert) = c.absorb(tensor_point_obstruction(F2, m).map_err(Into::into), "orbit", "tensor_point_obstruction") {
            let failed: Vec<&str> = cert.chain.iter().filter(|a| !a.holds).map(|a| a.claim.as_str()).collect();
            c.expect(cert.holds() && cert.points == 0, "orbit", "tensor_point_obstruction", || format!("m={m}: {failed:?}"));
        }
        if let Some(v) = c.absorb(zero_ideal_prime(m, 100, seed).map_err(Into::into), "orbit", "zero_ideal_prime") {
            c.expect(v.zero_is_prime() && v.pairs_checked == 100 && v.primes == 1, "orbit", "zero_ideal_prime", || {
                format!("m={m}: zero divisor {:?}", v.zero_divisor)
            });
        }
        let Some(inst) = c.absorb(OrbitInstance::new(m, F2).map_err(Into::into), "spectrum", "OrbitInstance::new") else { continue };
        c.expect(inst.points().is_empty() && inst.obstruction().is_some_and(|o| o.holds()), "spectrum", "points", || {
            format!("m={m}: {} points", inst.points().len())
        });
        let r = enumerate_thick_tensor_ideals(&inst).and_then(|l| {
            let s = balmer_spectrum(&inst, &l)?;
            Ok((l.ideals.len(), s.primes.len(), comparison_f(&inst, &s)?))
        });
        if let Some((ideals, primes, cmp)) = c.absorb(r.map_err(Into::into), "spectrum", "balmer_spectrum") {
            c.expect(ideals == 2 && primes == 1, "spectrum", "balmer_spectrum", || format!("m={m}: {ideals} ideals, {primes} primes"));
            c.expect(!cmp.surjective, "spectrum", "comparison_f", || format!("m={m}: comparison reported surjective"));
        }
    }
    c
}

fn localization() -> Check {
    let mut c = Check::new(6, "localization points are the basic opens");
    for (name, q) in [("A2", Quiver::linear(2)), ("A3", Quiver::linear(3)), ("A3 mixed", a3_mixed())] {
        let Some(inst) = c.absorb(quiver_inst(q, F2), "spectrum", "QuiverInstance::new") else { continue };
        for (i, a) in inst.pool().objects.iter().enumerate() {
            if let Some((quotient, u)) = c.absorb(localization_points(&inst, a).map_err(Into::into), "spectrum", "localization_points") {
                c.expect(quotient == u, "spectrum", "localization_points", || {
                    format!("{name}, {}: quotient {quotient:?} vs U {u:?}", inst.pool().labels[i])
                });
            }
        }
    }
    c
}

fn functoriality(seed: u64) -> Check {
    let mut c = Check::new(7, "functoriality of the spectrum");
    if let Some(inst) = c.absorb(quiver_inst(Quiver::linear(2), F2), "spectrum", "QuiverInstance::new") {
        let g = quiver_gamma(&inst, &GammaFunctor::SubquiverRestriction { keep: vec![0] }, 50, seed);
        if let Some((_, _, g)) = c.absorb(g.map_err(Into::into), "spectrum", "quiver_gamma") {
            c.expect(g.continuous && g.map == [0], "spectrum", "quiver_gamma", || format!("A1 in A2: {g:?}"));
        }
        if let Some(ok) = c.absorb(pullback_consistent(&inst, &[0]).map_err(Into::into), "pathalg", "pullback_consistent") {
            c.expect(ok, "pathalg", "pullback_consistent", || "A1 in A2: realized paths disagree".into());
        }
    }
    let r = FiniteRing::zmod(12).and_then(RingInstance::new).and_then(|inst| {
        ring_gamma(&inst, &GammaFunctor::RingQuotient { target: FiniteRing::zmod(3)? }, 50, seed).map(|(_, g)| g)
    });
    if let Some(g) = c.absorb(r.map_err(Into::into), "spectrum", "ring_gamma") {
        c.expect(g.continuous && g.map.len() == 1 && g.source_labels[g.map[0]] == "(3)", "spectrum", "ring_gamma", || {
            format!("Z/12 -> Z/3: {g:?}")
        });
    }
    c
}

fn transport(seed: u64) -> Check {
    let mut c = Check::new(8, "tensor transport");
    let cases = [
        ("shift twist 1[2] on A2", Quiver::linear(2), Equivalence::ShiftTwist(2), vec![0, 1]),
        ("swap on two points", Quiver::discrete(2), Equivalence::Automorphism(vec![1, 0]), vec![1, 0]),
    ];
    for (name, q, eq, bijection) in cases {
        let Some(inst) = c.absorb(quiver_inst(q, F2), "spectrum", "QuiverInstance::new") else { continue };
        if let Some(t) = c.absorb(transport_tensor(&inst, &eq, 50, seed).map_err(Into::into), "spectrum", "transport_tensor") {
            c.expect(t.holds() && t.bijection == bijection, "spectrum", "transport_tensor", || format!("{name}: {t:?}"));
        }
    }
    c
}

fn infrastructure(seed: u64) -> Check {
    let mut c = Check::new(9, "infrastructure properties");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = Arc::new(Quiver::linear(3));

    for _ in 0..20 {
        let dims: Vec<usize> = (0..3).map(|_| rng.gen_range(0..=2)).collect();
        let v = Rep::random(q.clone(), F2, dims.clone(), &mut rng);
        let Some(d) = c.absorb(decompose(&v).map_err(Into::into), "quiver", "decompose") else { continue };
        let total: Vec<usize> = (0..3).map(|i| d.summands.iter().map(|s| s.dim(i)).sum()).collect();
        c.expect(total == dims && d.iso.is_iso(), "quiver", "decompose", || format!("dims {dims:?}: summands add to {total:?}"));
        c.expect(d.status == DecomposeStatus::Complete, "quiver", "decompose", || format!("dims {dims:?}: undecided"));
        for s in &d.summands {
            let again = is_indecomposable(s).ok().flatten();
            c.expect(again == Some(true), "quiver", "is_indecomposable", || format!("summand {:?} split again", s.dims()));
        }
    }

    for _ in 0..20 {
        let (r, k) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..k).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let a = IntMatrix::from_i64(&refs);
        let s = smith_normal_form(&a);
        c.expect(s.u.mul(&a).mul(&s.v) == s.d && s.d.is_diagonal(), "linalg", "smith_normal_form", || format!("{rows:?}"));
    }

    let cat = RepCategory::new(q.clone(), F2);
    for _ in 0..20 {
        let m = Rep::random(q.clone(), F2, (0..3).map(|_| rng.gen_range(0..=2)).collect(), &mut rng);
        let n = Rep::random(q.clone(), F2, (0..3).map(|_| rng.gen_range(0..=2)).collect(), &mut rng);
        let Some(basis) = c.absorb(hom_space(&m, &n).map_err(Into::into), "quiver", "hom_space") else { continue };
        let coeffs: Vec<_> = basis.iter().map(|_| F2.random(&mut rng)).collect();
        let f = RepMorphism::combine(F2, &basis, &coeffs, &m, &n);
        let a = Complex::concentrated(cat.clone(), m.clone(), 0);
        let b = Complex::concentrated(cat.clone(), n.clone(), 0);
        let Some(map) = c.absorb(ChainMap::new(a, b, BTreeMap::from([(0, f.clone())])).map_err(Into::into), "homalg", "ChainMap::new")
        else {
            continue;
        };
        // 0 -> H^{-1}(cone) -> M -> N -> H^0(cone) -> 0
        let (cone, _, _) = map.cone();
        let h = cohomology_dims(&cone);
        let ranks: Vec<usize> = f.comps.iter().map(|x| x.rank()).collect();
        let ker: Vec<usize> = (0..3).map(|v| m.dim(v) - ranks[v]).collect();
        let coker: Vec<usize> = (0..3).map(|v| n.dim(v) - ranks[v]).collect();
        let get = |d: i64| h.get(&d).cloned().unwrap_or_else(|| vec![0; 3]);
        c.expect(get(-1) == ker && get(0) == coker && h.len() <= 2, "homalg", "cone", || {
            format!("dims {:?} -> {:?}: cone cohomology {h:?}", m.dims(), n.dims())
        });
    }
    for _ in 0..10 {
        let a = random_complex(&cat, &mut rng, 2);
        let (cone, _, _) = a.identity_map().cone();
        c.expect(cohomology_dims(&cone).is_empty(), "homalg", "cone", || "cone of an identity is not acyclic".into());
    }

    let cfg = RunConfig::from_json(
        r#"{"instance": {"quiver": {"vertices": ["1", "2"], "arrows": [["1", "2", "a"]], "field": "f2"}},
            "tasks": ["points", "ideals", "axioms", "transport"], "budgets": {"samples": 40}}"#,
    );
    match cfg {
        Ok(mut cfg) => {
            cfg.seed = seed;
            let first = run(&cfg).map(|r| r.to_json());
            let second = run(&cfg).map(|r| r.to_json());
            match (first, second) {
                (Ok(x), Ok(y)) => c.expect(x == y, "cli", "run", || "reports differ between identical runs".into()),
                (Err(e), _) | (_, Err(e)) => c.expect(false, "cli", "run", || e.to_string()),
            }
        }
        Err(d) => c.expect(false, "cli", "RunConfig::from_json", || format!("{d:?}")),
    }
    c
}

/// Run every criterion. With `corrupt`, the support axioms are checked
/// against a deliberately broken tensor product and must fail.
pub fn verify_suite(seed: u64, corrupt: bool) -> Vec<Check> {
    vec![
        quiver_comparison(),
        path_algebra(),
        affine(),
        support_axioms(seed, corrupt),
        orbit(seed),
        localization(),
        functoriality(seed),
        transport(seed),
        infrastructure(seed),
    ]
}

pub fn table(checks: &[Check]) -> String {
    let mut out = String::new();
    for c in checks {
        out.push_str(&c.line());
        out.push('\n');
    }
    let passed = checks.iter().filter(|c| c.passed()).count();
    out.push_str(&format!("{passed}/{} criteria passed\n", checks.len()));
    out
}
