//! Build an instance from a [`RunConfig`] and run its tasks.

use std::collections::BTreeSet;

use anyhow::{anyhow, Result};
use funspec_core::homalg::ClosureBudget;
use funspec_core::orbit::{tensor_point_obstruction, unit_shift_periodicity, zero_ideal_prime};
use funspec_core::pathalg::{pullback_consistent, verify_reconstruction, ShiftPolicy};
use funspec_core::ringcat::{crt_certificate, structure_sheaf};
use funspec_core::spectrum::{
    balmer_spectrum, comparison_f, enumerate_thick_tensor_ideals, ideal_t_u, localization_points, open_basic,
    quiver_gamma, quiver_stalk, ring_gamma, ring_stalk, support, transport_tensor, verify_support_data, Equivalence,
    GammaFunctor, OrbitInstance, QuiverInstance, RingInstance, Stalk, TensorInstance,
};
use serde_json::{json, Value};

use crate::config::{build_quiver, parse_field, GammaSpec, InstanceSpec, RunConfig, Task, TransportSpec};
use crate::report::{Report, Status, TaskReport};

fn shadows(kind: &str, task: Task) -> &'static str {
    match (kind, task) {
        ("orbit", Task::Points) => "a shift-periodic unit admits no tensor points",
        ("orbit", Task::Primes) => "the zero ideal is prime, so the prime spectrum is nonempty",
        ("orbit", Task::Comparison) => "points to primes is not surjective for the orbit category",
        (_, Task::Points) => "points of the functorial spectrum",
        (_, Task::Supports) => "supports, basic opens and the ideals they cut out",
        (_, Task::Ideals) => "thick tensor ideals correspond to subsets of points",
        (_, Task::Primes) => "prime thick tensor ideals are the kernels of points",
        (_, Task::Comparison) => "the comparison map from points to primes is a homeomorphism",
        ("ring", Task::Stalks) => "stalks of the structure sheaf are the local rings R_p",
        (_, Task::Stalks) => "stalks of the structure sheaf are nonzero local rings",
        (_, Task::PathAlgebra) => "the path algebra is recovered from natural transformations of points",
        (_, Task::Transport) => "transported tensor structures have isomorphic spectra",
        (_, Task::Gamma) => "tensor functors induce continuous maps of spectra",
        (_, Task::Axioms) => "points define a support data",
    }
}

fn labels<I: TensorInstance>(inst: &I, set: &BTreeSet<usize>) -> Vec<String> {
    set.iter().map(|&i| inst.points()[i].label.clone()).collect()
}

fn pool_labels<I: TensorInstance>(inst: &I, set: &BTreeSet<usize>) -> Vec<String> {
    set.iter().map(|&i| inst.pool().labels[i].clone()).collect()
}

fn points_task<I: TensorInstance>(inst: &I, expected: usize) -> (Status, Value) {
    let pts: Vec<Value> = inst.points().iter().map(|p| json!({"label": p.label, "residue": p.residue.to_string()})).collect();
    (Status::from_bool(pts.len() == expected), json!({"count": pts.len(), "expected": expected, "points": pts}))
}

fn supports_task<I: TensorInstance>(inst: &I) -> Result<(Status, Value)> {
    let mut rows = Vec::new();
    let mut ok = true;
    let mut complete = true;
    for (i, a) in inst.pool().objects.iter().enumerate() {
        let s = support(inst, a)?;
        let u = open_basic(inst, a)?;
        let (t_u, closed) = ideal_t_u(inst, &u)?;
        let (quotient, _) = localization_points(inst, a)?;
        let member = t_u.members.contains(&i);
        ok &= member && quotient == u;
        complete &= closed && t_u.complete;
        rows.push(json!({
            "object": inst.pool().labels[i],
            "support": labels(inst, &s),
            "open": labels(inst, &u),
            "in_own_ideal": member,
            "quotient_points_equal_open": quotient == u,
        }));
    }
    Ok((Status::bounded(ok, complete), json!({ "objects": rows })))
}

fn ideals_task<I: TensorInstance>(inst: &I, expected: usize) -> Result<(Status, Value)> {
    let lattice = enumerate_thick_tensor_ideals(inst)?;
    let ideals: Vec<Vec<String>> = lattice.ideals.iter().map(|i| pool_labels(inst, &i.members)).collect();
    let ok = ideals.len() == expected && lattice.closed_under_intersection;
    Ok((
        Status::bounded(ok, lattice.exhaustive),
        json!({
            "count": ideals.len(),
            "expected": expected,
            "exhaustive": lattice.exhaustive,
            "closed_under_intersection": lattice.closed_under_intersection,
            "ideals": ideals,
        }),
    ))
}

fn primes_and_comparison<I: TensorInstance>(inst: &I) -> Result<(Value, Value, bool, bool, bool)> {
    let lattice = enumerate_thick_tensor_ideals(inst)?;
    let spec = balmer_spectrum(inst, &lattice)?;
    let cmp = comparison_f(inst, &spec)?;
    let primes: Vec<Vec<String>> = spec.primes.iter().map(|p| pool_labels(inst, &p.members)).collect();
    let map: Vec<Value> = cmp
        .map
        .iter()
        .enumerate()
        .map(|(p, k)| json!({"point": inst.points()[p].label, "kernel": pool_labels(inst, &cmp.kernels[p]), "prime": k}))
        .collect();
    let primes_json = json!({"count": primes.len(), "exhaustive": spec.exhaustive, "primes": primes});
    let cmp_json = json!({
        "map": map,
        "injective": cmp.injective,
        "surjective": cmp.surjective,
        "continuous": cmp.continuous,
    });
    Ok((primes_json, cmp_json, cmp.bijective() && cmp.continuous, spec.exhaustive, primes.len() == inst.points().len()))
}

fn axioms_task<I: TensorInstance>(inst: &I, samples: usize, seed: u64) -> Result<(Status, Value)> {
    let rep = verify_support_data(inst, samples, seed)?;
    let rows: Vec<Value> = rep
        .axioms
        .iter()
        .map(|a| json!({"axiom": a.name, "checked": a.checked, "passed": a.passed, "witness": a.witness}))
        .collect();
    Ok((Status::from_bool(rep.holds()), json!({ "axioms": rows })))
}

fn stalk_json(s: &Stalk) -> (bool, Value) {
    match s {
        Stalk::Ring { point, ring, local, residue, residue_matches, fractions } => {
            let ok = local.local && *residue_matches && *fractions as u128 == ring.order();
            (
                ok,
                json!({
                    "point": point,
                    "ring": ring.to_string(),
                    "order": ring.order() as u64,
                    "local": local.local,
                    "maximal_ideal_size": local.non_units.len(),
                    "residue": residue.to_string(),
                    "residue_matches": residue_matches,
                    "fractions": fractions,
                }),
            )
        }
        Stalk::Quiver { point, residue, end_dim, lower_bound, exact } => (
            *lower_bound >= 1,
            json!({
                "point": point,
                "residue": residue.to_string(),
                "end_dim": end_dim,
                "lower_bound": lower_bound,
                "exact": exact,
            }),
        ),
    }
}

fn run_common<I: TensorInstance>(inst: &I, task: Task, cfg: &RunConfig) -> Result<Option<(Status, Value)>> {
    let npts = inst.points().len();
    Ok(Some(match task {
        Task::Supports => supports_task(inst)?,
        Task::Ideals => ideals_task(inst, 1 << npts)?,
        Task::Primes => {
            let (p, _, _, exhaustive, count_ok) = primes_and_comparison(inst)?;
            (Status::bounded(count_ok, exhaustive), p)
        }
        Task::Comparison => {
            let (_, c, ok, exhaustive, _) = primes_and_comparison(inst)?;
            (Status::bounded(ok, exhaustive), c)
        }
        Task::Axioms => axioms_task(inst, cfg.budgets.samples, cfg.seed)?,
        _ => return Ok(None),
    }))
}

fn run_quiver(cfg: &RunConfig) -> Result<Report> {
    let InstanceSpec::Quiver { vertices, arrows, field, dim_bound } = &cfg.instance else { unreachable!() };
    let field = parse_field(field).map_err(|e| anyhow!(e))?;
    let q = build_quiver(vertices, arrows)?;
    let budget = ClosureBudget { rounds: cfg.budgets.closure_rounds, ..ClosureBudget::default() };
    let inst = QuiverInstance::with_budget(q.clone(), field, *dim_bound, budget)?;
    let w = cfg.budgets.window;
    let mut tasks = Vec::new();
    for &task in &cfg.tasks {
        let (status, details) = match task {
            Task::Points => points_task(&inst, q.num_vertices()),
            Task::Stalks => {
                let mut ok = true;
                let mut rows = Vec::new();
                for p in 0..inst.points().len() {
                    let (good, v) = stalk_json(&quiver_stalk(&inst, p, cfg.budgets.stalk_budget)?);
                    ok &= good;
                    rows.push(v);
                }
                (Status::from_bool(ok), json!({ "stalks": rows }))
            }
            Task::PathAlgebra => {
                let r = verify_reconstruction(&inst, (-w, w), ShiftPolicy::Compatible)?;
                let pairs: Vec<Value> = r
                    .pairs
                    .iter()
                    .map(|&(v, u, d, p)| json!({"source": vertices[v], "target": vertices[u], "dim": d, "paths": p}))
                    .collect();
                let status = if r.under_constrained { Status::Inconclusive } else { Status::from_bool(r.holds()) };
                (
                    status,
                    json!({
                        "algebra_dim": r.algebra_dim,
                        "dim": r.total_dim(),
                        "pairs": pairs,
                        "natural": r.natural,
                        "injective": r.injective,
                        "surjective": r.surjective,
                        "multiplicative": r.multiplicative,
                        "associative": r.associative,
                        "under_constrained": r.under_constrained,
                        "counterexample": r.counterexample,
                    }),
                )
            }
            Task::Transport => {
                let eq = match &cfg.transport {
                    None => Equivalence::ShiftTwist(2),
                    Some(TransportSpec::Shift(s)) => Equivalence::ShiftTwist(*s),
                    Some(TransportSpec::Automorphism(img)) => {
                        Equivalence::Automorphism(img.iter().map(|l| q.vertex_index(l).expect("validated")).collect())
                    }
                };
                let t = transport_tensor(&inst, &eq, cfg.budgets.samples, cfg.seed)?;
                (
                    Status::from_bool(t.holds()),
                    json!({
                        "equivalence": format!("{eq:?}"),
                        "unit_law": t.unit_law,
                        "points_are_tensor": t.points_are_tensor,
                        "points_before": t.points_before,
                        "points_after": t.points_after,
                        "bijection": t.bijection,
                        "supports_match": t.supports_match,
                        "tensor_axiom": t.tensor_axiom,
                    }),
                )
            }
            Task::Gamma => {
                let keep: Vec<usize> = match &cfg.gamma {
                    Some(GammaSpec::Keep(k)) => k.iter().map(|l| q.vertex_index(l).expect("validated")).collect(),
                    _ => vec![0],
                };
                let (target, _, g) =
                    quiver_gamma(&inst, &GammaFunctor::SubquiverRestriction { keep: keep.clone() }, cfg.budgets.samples, cfg.seed)?;
                let pullback = pullback_consistent(&inst, &keep)?;
                (
                    Status::from_bool(g.continuous && pullback),
                    json!({
                        "target": target.name(),
                        "map": g.map.iter().enumerate().map(|(i, &s)| json!([g.target_labels[i], g.source_labels[s]])).collect::<Vec<_>>(),
                        "continuous": g.continuous,
                        "objects_checked": g.objects_checked,
                        "pullback_consistent": pullback,
                    }),
                )
            }
            other => run_common(&inst, other, cfg)?.expect("shared task"),
        };
        tasks.push(TaskReport { task: task.to_string(), shadows: shadows("quiver", task).into(), status, details });
    }
    Ok(Report::new(inst.name(), "quiver", cfg.seed, tasks))
}

fn run_ring(cfg: &RunConfig) -> Result<Report> {
    let InstanceSpec::Ring(spec) = &cfg.instance else { unreachable!() };
    let ring = spec.build()?;
    let inst = RingInstance::new(ring.clone())?;
    let mut tasks = Vec::new();
    for &task in &cfg.tasks {
        let (status, details) = match task {
            Task::Points => points_task(&inst, ring.primes()?.len()),
            Task::Stalks => {
                let mut ok = true;
                let mut rows = Vec::new();
                for p in 0..inst.points().len() {
                    let (good, v) = stalk_json(&ring_stalk(&inst, p)?);
                    ok &= good;
                    rows.push(v);
                }
                let all: Vec<usize> = (0..inst.points().len()).collect();
                let sections = structure_sheaf(&ring, &all)?;
                let crt = crt_certificate(&ring, cfg.seed)?;
                ok &= crt.holds() && sections.order() == ring.order();
                (
                    Status::from_bool(ok),
                    json!({
                        "stalks": rows,
                        "global_sections": sections.describe(),
                        "crt": {"bijective": crt.bijective, "additive": crt.additive, "multiplicative": crt.multiplicative,
                                "unital": crt.unital, "pairs_checked": crt.pairs_checked, "exhaustive": crt.exhaustive},
                    }),
                )
            }
            Task::Gamma => {
                let Some(GammaSpec::Quotient(t)) = &cfg.gamma else { unreachable!("validated") };
                let target = t.build()?;
                let (tinst, g) = ring_gamma(&inst, &GammaFunctor::RingQuotient { target }, cfg.budgets.samples, cfg.seed)?;
                (
                    Status::from_bool(g.continuous),
                    json!({
                        "target": tinst.name(),
                        "map": g.map.iter().enumerate().map(|(i, &s)| json!([g.target_labels[i], g.source_labels[s]])).collect::<Vec<_>>(),
                        "continuous": g.continuous,
                        "objects_checked": g.objects_checked,
                    }),
                )
            }
            other => run_common(&inst, other, cfg)?.expect("shared task"),
        };
        tasks.push(TaskReport { task: task.to_string(), shadows: shadows("ring", task).into(), status, details });
    }
    Ok(Report::new(inst.name(), "ring", cfg.seed, tasks))
}

fn run_orbit(cfg: &RunConfig) -> Result<Report> {
    let InstanceSpec::Orbit { m, field } = &cfg.instance else { unreachable!() };
    let field = parse_field(field).map_err(|e| anyhow!(e))?;
    let inst = OrbitInstance::new(*m, field)?;
    let mut tasks = Vec::new();
    for &task in &cfg.tasks {
        let (status, details) = match task {
            Task::Points => {
                let cert = tensor_point_obstruction(field, *m)?;
                let period = unit_shift_periodicity(field, *m)?;
                let chain: Vec<Value> = cert.chain.iter().map(|a| json!({"claim": a.claim, "holds": a.holds})).collect();
                (
                    Status::from_bool(cert.holds() && period.verdict && inst.points().is_empty()),
                    json!({"count": inst.points().len(), "unit_periodic": period.verdict, "obstruction": chain}),
                )
            }
            Task::Ideals => ideals_task(&inst, 2)?,
            Task::Primes | Task::Comparison => {
                let verdict = zero_ideal_prime(*m, cfg.budgets.samples, cfg.seed)?;
                let (p, c, _, exhaustive, _) = primes_and_comparison(&inst)?;
                let primes = p["count"].as_u64().unwrap_or(0) as usize;
                let surjective = c["surjective"].as_bool().unwrap_or(true);
                let ok = verdict.zero_is_prime() && primes == 1 && verdict.primes == 1 && !surjective;
                let mut details = if task == Task::Primes { p } else { c };
                details["zero_ideal_prime"] = json!(verdict.zero_is_prime());
                details["pairs_checked"] = json!(verdict.pairs_checked);
                details["non_surjective"] = json!(!surjective);
                (Status::bounded(ok, exhaustive), details)
            }
            _ => unreachable!("validated"),
        };
        tasks.push(TaskReport { task: task.to_string(), shadows: shadows("orbit", task).into(), status, details });
    }
    Ok(Report::new(inst.name(), "orbit", cfg.seed, tasks))
}

/// Run a validated config.
pub fn run(cfg: &RunConfig) -> Result<Report> {
    match cfg.instance {
        InstanceSpec::Quiver { .. } => run_quiver(cfg),
        InstanceSpec::Ring(_) => run_ring(cfg),
        InstanceSpec::Orbit { .. } => run_orbit(cfg),
    }
}
