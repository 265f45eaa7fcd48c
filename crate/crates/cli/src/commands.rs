//! Subcommand bodies.

use clap::ValueEnum;
use dynpoisson::acceptance::{run_all, HAMILTONIAN_TOL, MODULAR_TOL, MOMENT_LIMIT_TOL};
use dynpoisson::dynr::{build_phi, eval_r, verify_dynamical_r, EvaluationPoint, RMatrixSpec};
use dynpoisson::homog::{
    build_pi_spec, compact_intersection_dim, conjugated_subalgebra, enumerate_leaves,
    jacobi_obstruction, lagrangian_subalgebra, limit_distance, verify_lagrangian,
};
use dynpoisson::matrixrep::{
    fibonacci_sphere, hamiltonian_consistency, modular_field_numeric, moment_map_eval,
    HamiltonianKind, Mat, MatrixModel, MomentKind, HAMILTONIAN_SIGN,
};
use dynpoisson::{Algebra, PoissonHomSpec, RootSystem, Tolerances, WeylGroup, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::parse;
use crate::{CliError, Command, Common, Outcome, Setup};

type Result<T> = std::result::Result<T, CliError>;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentMode {
    Dressing,
    Bruhat,
    Limit,
}

fn c(z: C64) -> Value {
    // adding 0.0 maps -0.0 to 0.0
    json!([z.re + 0.0, z.im + 0.0])
}

fn mat(m: &Mat) -> Value {
    Value::Array(
        (0..m.nrows())
            .flat_map(|i| (0..m.ncols()).map(move |j| (i, j)))
            .map(|(i, j)| c(m[(i, j)]))
            .collect(),
    )
}

fn simple_labels(rs: &RootSystem, ids: &[usize]) -> Vec<String> {
    ids.iter().map(|&i| rs.simple_name(i)).collect()
}

/// Parsed algebra, X, X₁ (in the order given), λ text and ε.
struct Context {
    rs: RootSystem,
    alg: Algebra,
    x: Vec<usize>,
    x1: Vec<usize>,
    epsilon: C64,
}

fn context(setup: &Setup) -> Result<Context> {
    let rs = parse::root_system(&setup.algebra)?;
    let alg = parse::algebra(&rs)?;
    let x = parse::names(&rs, &setup.x)?;
    let x1 = parse::names(&rs, &setup.x1)?;
    if let Some(&g) = x1.iter().find(|g| !x.contains(g)) {
        return Err(CliError::Usage(format!(
            "X1 is not contained in X: {}",
            rs.simple_name(g)
        )));
    }
    let epsilon = parse::complex(&setup.epsilon)?;
    if epsilon.norm() == 0.0 {
        return Err(CliError::Usage("epsilon must be nonzero".into()));
    }
    Ok(Context {
        rs,
        alg,
        x,
        x1,
        epsilon,
    })
}

/// Real λ values, one per root of X.
fn x_lambda(ctx: &Context, setup: &Setup) -> Result<Vec<f64>> {
    let v = parse::reals(&setup.lambda)?;
    if v.len() != ctx.x.len() {
        return Err(CliError::Usage(format!(
            "--lambda needs {} real values (one per root of X), got {}",
            ctx.x.len(),
            v.len()
        )));
    }
    Ok(v)
}

/// Complex λ coordinates, one per simple root.
fn rank_lambda(ctx: &Context, setup: &Setup) -> Result<EvaluationPoint> {
    let v = parse::complexes(&setup.lambda)?;
    if v.len() != ctx.rs.rank() {
        return Err(CliError::Usage(format!(
            "--lambda needs {} values, got {}",
            ctx.rs.rank(),
            v.len()
        )));
    }
    Ok(EvaluationPoint::new(v))
}

fn pi_spec(ctx: &Context, setup: &Setup, tol: &Tolerances) -> Result<PoissonHomSpec> {
    let lam = x_lambda(ctx, setup)?;
    Ok(build_pi_spec(
        &ctx.rs,
        &ctx.x,
        &ctx.x1,
        &lam,
        ctx.epsilon,
        tol,
    )?)
}

fn spec_json(ctx: &Context, spec: &PoissonHomSpec) -> Value {
    let rs = &ctx.rs;
    json!({
        "X": simple_labels(rs, &spec.x),
        "X1": simple_labels(rs, &spec.x1),
        "lambda1": spec.lambda1,
        "epsilon": c(spec.epsilon),
    })
}

pub fn run(cmd: &Command, common: &Common, tol: &Tolerances) -> Result<Outcome> {
    match cmd {
        Command::Algebra { algebra } => algebra_info(algebra),
        Command::Rmatrix { setup, twist } => rmatrix(setup, twist, tol),
        Command::Cdybe { setup, twist } => cdybe(setup, twist, tol),
        Command::Poisson { setup } => poisson(setup, tol),
        Command::Lagrangian { setup } => lagrangian(setup, tol),
        Command::Leaves { setup } => leaves(setup),
        Command::Limits { setup, y, t } => limits(setup, y, t, tol),
        Command::Moment {
            setup,
            kind,
            w,
            t,
            points,
        } => moment(setup, *kind, w.as_deref(), *t, *points, common.seed, tol),
        Command::Modular { setup, a, points } => modular(setup, a, *points),
        Command::Suite => suite(common.seed),
    }
}

fn algebra_info(designator: &str) -> Result<Outcome> {
    let rs = parse::root_system(designator)?;
    let alg = parse::algebra(&rs)?;
    let positive: Vec<Value> = rs
        .positive_roots()
        .map(|a| json!({ "id": a, "label": rs.root_label(a), "coords": rs.root(a), "height": rs.height(a) }))
        .collect();
    let weyl_order = WeylGroup::new(&rs).ok().map(|w| w.order());
    let result = json!({
        "designator": rs.designator(),
        "rank": rs.rank(),
        "dimension": alg.dim(),
        "num_roots": rs.num_roots(),
        "cartan_matrix": rs.cartan_matrix(),
        "simple_roots": simple_labels(&rs, &(0..rs.rank()).collect::<Vec<_>>()),
        "positive_roots": positive,
        "basis": (0..alg.dim()).map(|i| alg.basis_name(i)).collect::<Vec<_>>(),
        "weyl_order": weyl_order,
        "jacobi_residual": alg.jacobi_residual(),
    });
    Ok(Outcome {
        passed: true,
        result,
    })
}

fn r_spec(ctx: &Context, twist: &str) -> Result<RMatrixSpec> {
    let word = parse::word(&ctx.rs, twist)?;
    Ok(RMatrixSpec::new(&ctx.rs, ctx.epsilon, &ctx.x)?.with_twist(&word))
}

fn rmatrix(setup: &Setup, twist: &str, tol: &Tolerances) -> Result<Outcome> {
    let ctx = context(setup)?;
    let lambda = rank_lambda(&ctx, setup)?;
    let spec = r_spec(&ctx, twist)?;
    let phi = build_phi(&ctx.rs, &spec, &lambda, tol)?;
    let r = eval_r(&ctx.alg, &spec, &lambda, tol)?;
    let phi_json: Vec<Value> = (0..ctx.rs.num_roots())
        .map(|a| json!({ "root": ctx.rs.root_label(a), "phi": c(phi.value(a)), "derivative": c(phi.derivative(a)) }))
        .collect();
    let terms: Vec<Value> = r
        .r
        .terms()
        .map(|(k, v)| json!({ "left": ctx.alg.basis_name(k[0] as usize), "right": ctx.alg.basis_name(k[1] as usize), "value": c(*v) }))
        .collect();
    let result = json!({
        "X": simple_labels(&ctx.rs, &spec.x),
        "twist": simple_labels(&ctx.rs, &spec.twist),
        "epsilon": c(ctx.epsilon),
        "lambda": lambda.values.iter().map(|z| c(*z)).collect::<Vec<_>>(),
        "phi": phi_json,
        "r_terms": terms,
        "r_norm": r.r.norm(),
    });
    Ok(Outcome {
        passed: true,
        result,
    })
}

fn cdybe(setup: &Setup, twist: &str, tol: &Tolerances) -> Result<Outcome> {
    let ctx = context(setup)?;
    let lambda = rank_lambda(&ctx, setup)?;
    let spec = r_spec(&ctx, twist)?;
    let rep = verify_dynamical_r(&ctx.alg, &spec, &lambda, tol)?;
    let result = json!({
        "X": simple_labels(&ctx.rs, &spec.x),
        "twist": simple_labels(&ctx.rs, &spec.twist),
        "epsilon": c(ctx.epsilon),
        "lambda": lambda.values.iter().map(|z| c(*z)).collect::<Vec<_>>(),
        "residuals": rep,
        "threshold": tol.residual,
    });
    Ok(Outcome {
        passed: rep.passes(tol.residual),
        result,
    })
}

fn poisson(setup: &Setup, tol: &Tolerances) -> Result<Outcome> {
    let ctx = context(setup)?;
    let spec = pi_spec(&ctx, setup, tol)?;
    let rs = &ctx.rs;
    let phi = spec.phi(rs);
    let obstruction = jacobi_obstruction(&ctx.alg, &phi, ctx.epsilon)?;
    let coefficients: Vec<Value> = spec
        .pi_coefficients()
        .into_iter()
        .map(|(a, z)| json!({ "root": rs.root_label(a), "k": spec.k(a), "pi_e": c(z) }))
        .collect();
    let result = json!({
        "spec": spec_json(&ctx, &spec),
        "coefficients": coefficients,
        "jacobi_obstruction": obstruction,
        "threshold": tol.strict,
    });
    Ok(Outcome {
        passed: obstruction <= tol.strict,
        result,
    })
}

fn lagrangian(setup: &Setup, tol: &Tolerances) -> Result<Outcome> {
    let ctx = context(setup)?;
    let spec = pi_spec(&ctx, setup, tol)?;
    let lag = lagrangian_subalgebra(&ctx.alg, &spec)?;
    let rep = verify_lagrangian(&ctx.alg, &lag);
    let kdim = compact_intersection_dim(&ctx.alg, &lag)?;
    let conj = conjugated_subalgebra(&ctx.alg, &spec)?;
    let distance = lag.subspace().distance(&conj.subspace());
    let passed = rep.passes(tol.strict) && kdim == ctx.rs.rank() && distance <= tol.strict;
    let result = json!({
        "spec": spec_json(&ctx, &spec),
        "report": rep,
        "compact_intersection_dim": kdim,
        "conjugated_distance": distance,
        "threshold": tol.strict,
    });
    Ok(Outcome { passed, result })
}

fn leaves(setup: &Setup) -> Result<Outcome> {
    let ctx = context(setup)?;
    let weyl = WeylGroup::new(&ctx.rs)?;
    let mut x = ctx.x.clone();
    x.sort_unstable();
    let atlas = enumerate_leaves(&ctx.rs, &weyl, &x, &ctx.x1)?;
    let partition = atlas.cells_partition(weyl.order());
    let result = json!({
        "X": simple_labels(&ctx.rs, &x),
        "leaf_count": atlas.leaves.len(),
        "dimensions": atlas.leaves.iter().map(|l| l.dimension).collect::<Vec<_>>(),
        "atlas": atlas,
        "cells_partition_weyl_group": partition,
    });
    Ok(Outcome {
        passed: partition,
        result,
    })
}

fn limits(setup: &Setup, y: &str, t: &str, tol: &Tolerances) -> Result<Outcome> {
    let ctx = context(setup)?;
    let spec = pi_spec(&ctx, setup, tol)?;
    let mut y = parse::names(&ctx.rs, y)?;
    if y.is_empty() {
        y = (0..ctx.rs.rank()).collect();
    }
    y.sort_unstable();
    let ts = parse::reals(t)?;
    if ts.is_empty() {
        return Err(CliError::Usage("--t needs at least one value".into()));
    }
    let dists = ts
        .iter()
        .map(|&t| limit_distance(&ctx.alg, &spec, &y, t, tol))
        .collect::<dynpoisson::Result<Vec<_>>>()?;
    // distances must not grow along increasing t
    let mut order: Vec<usize> = (0..ts.len()).collect();
    order.sort_by(|&a, &b| ts[a].total_cmp(&ts[b]));
    let passed = order.windows(2).all(|p| {
        let (a, b) = (&dists[p[0]], &dists[p[1]]);
        b.bivector_dist <= a.bivector_dist + tol.strict
            && b.subspace_dist <= a.subspace_dist + tol.strict
    });
    let result = json!({
        "spec": spec_json(&ctx, &spec),
        "Y": simple_labels(&ctx.rs, &y),
        "distances": dists,
    });
    Ok(Outcome { passed, result })
}

/// Identity plus random entries on the root positions of the cell of `w`.
fn cell_element(model: &MatrixModel, weyl: &WeylGroup, w: usize, rng: &mut ChaCha8Rng) -> Mat {
    let n = model.size();
    let mut m = Mat::identity(n, n);
    for a in model.cell_roots(weyl, w) {
        m[model.position(a)] = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    }
    m
}

fn moment(
    setup: &Setup,
    kind: MomentMode,
    w: Option<&str>,
    t: f64,
    points: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<Outcome> {
    let ctx = context(setup)?;
    let rs = &ctx.rs;
    let model = MatrixModel::new(&ctx.alg)?;
    let weyl = WeylGroup::new(rs)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = match w {
        Some(s) => weyl.from_word(&parse::word(rs, s)?)?,
        None => weyl.longest(),
    };
    let eps = ctx.epsilon;
    let all: Vec<usize> = (0..rs.rank()).collect();
    let basis: Vec<Mat> = all.iter().map(|&j| model.t(j)).collect();
    let dressing_spec = || -> Result<PoissonHomSpec> {
        let lam = parse::reals(&setup.lambda)?;
        if lam.len() != rs.rank() {
            return Err(CliError::Usage(format!(
                "--lambda needs {} real values (one per simple root), got {}",
                rs.rank(),
                lam.len()
            )));
        }
        Ok(build_pi_spec(rs, &all, &[], &lam, eps, tol)?)
    };
    let mut worst = 0.0f64;
    let mut checked = true;
    let (sample, value, threshold) = match kind {
        MomentMode::Dressing => {
            let spec = dressing_spec()?;
            let lambda = model.cartan(&spec.lambda_coords(rs));
            let k = model.random_su(&mut rng);
            let value = moment_map_eval(
                &model,
                &weyl,
                &MomentKind::Dressing {
                    lambda,
                    k: k.clone(),
                },
                eps,
            )?;
            for _ in 0..points {
                let k = model.random_su(&mut rng);
                for x in &basis {
                    worst = worst.max(hamiltonian_consistency(
                        &model,
                        &weyl,
                        &HamiltonianKind::Dressing(spec.clone()),
                        &k,
                        x,
                        tol.fd_step,
                    )?);
                }
            }
            (
                json!({ "k": mat(&k) }),
                serde_json::to_value(value).unwrap_or(Value::Null),
                HAMILTONIAN_TOL,
            )
        }
        MomentMode::Bruhat => {
            let n = cell_element(&model, &weyl, w, &mut rng);
            let value =
                moment_map_eval(&model, &weyl, &MomentKind::Bruhat { w, n: n.clone() }, eps)?;
            // the Hamiltonian check is implemented for the open cell of SU(2)
            if model.size() == 2 && w == weyl.longest() {
                for _ in 0..points {
                    let k = model.random_su(&mut rng);
                    for x in &basis {
                        worst = worst.max(hamiltonian_consistency(
                            &model,
                            &weyl,
                            &HamiltonianKind::Bruhat { epsilon: eps },
                            &k,
                            x,
                            tol.fd_step,
                        )?);
                    }
                }
            } else {
                checked = false;
            }
            (
                json!({ "n": mat(&n) }),
                serde_json::to_value(value).unwrap_or(Value::Null),
                HAMILTONIAN_TOL,
            )
        }
        MomentMode::Limit => {
            let spec = dressing_spec()?;
            let lambda = model.cartan(&spec.lambda_coords(rs));
            let n = cell_element(&model, &weyl, w, &mut rng);
            let value = moment_map_eval(
                &model,
                &weyl,
                &MomentKind::LimitCheck {
                    lambda,
                    t,
                    w,
                    n: n.clone(),
                },
                eps,
            )?;
            worst = value.pairings.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            (
                json!({ "n": mat(&n), "t": t }),
                serde_json::to_value(value).unwrap_or(Value::Null),
                MOMENT_LIMIT_TOL,
            )
        }
    };
    let passed = worst.is_finite() && worst < threshold;
    let result = json!({
        "kind": format!("{kind:?}").to_lowercase(),
        "w": simple_labels(rs, weyl.reduced_word(w)),
        "epsilon": c(eps),
        "sample": sample,
        "value": value,
        "defect": checked.then_some(worst),
        "threshold": threshold,
        "hamiltonian_sign": HAMILTONIAN_SIGN,
    });
    Ok(Outcome { passed, result })
}

fn modular(setup: &Setup, a: &str, points: usize) -> Result<Outcome> {
    let ctx = context(setup)?;
    if ctx.rs.designator() != "A1" {
        return Err(CliError::Usage("modular needs --algebra A1".into()));
    }
    if points == 0 {
        return Err(CliError::Usage("--points must be positive".into()));
    }
    let model = MatrixModel::new(&ctx.alg)?;
    let values = parse::reals(a)?;
    if values.is_empty() {
        return Err(CliError::Usage("--a needs at least one value".into()));
    }
    let grid = fibonacci_sphere(points);
    let reports = values
        .iter()
        .map(|&a| modular_field_numeric(&model, ctx.epsilon, a, &grid, 1e-5))
        .collect::<dynpoisson::Result<Vec<_>>>()?;
    let mut passed = true;
    let per_a: Vec<Value> = reports
        .iter()
        .map(|r| {
            let independence = r.difference(&reports[0]);
            passed &= r.match_defect < MODULAR_TOL
                && r.max_divergence < MODULAR_TOL
                && independence < MODULAR_TOL;
            json!({
                "a": r.a,
                "match_defect": r.match_defect,
                "max_divergence": r.max_divergence,
                "difference_from_first": independence,
            })
        })
        .collect();
    let field: Vec<Value> = reports[0]
        .points
        .iter()
        .zip(&reports[0].field)
        .map(|(p, v)| json!({ "point": p, "field": v.iter().map(|z| c(*z)).collect::<Vec<_>>() }))
        .collect();
    let result = json!({
        "epsilon": c(ctx.epsilon),
        "points": points,
        "families": per_a,
        "field": field,
        "threshold": MODULAR_TOL,
    });
    Ok(Outcome { passed, result })
}

fn suite(seed: u64) -> Result<Outcome> {
    let results = run_all(seed);
    for r in &results {
        eprintln!("{}", r.line());
    }
    let passed = results.iter().all(|r| r.passed);
    Ok(Outcome {
        passed,
        result: json!({ "seed": seed, "criteria": results }),
    })
}
