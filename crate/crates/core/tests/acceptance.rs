//! Acceptance suite: each criterion runs under its time limit and prints one PASS/FAIL line.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cmweyl::cm::catalog;
use cmweyl::free::{AutGenerator, Automorphism};
use cmweyl::rat::rat;
use cmweyl::resolution::{compatibility_defect, delta_x_recurrence, g2_on_x};
use cmweyl::skew::product_equals;
use cmweyl::{
    build_dg_envelope, build_envelope, check_ainf_axioms, delta_x, equivalent, groebner,
    omega_ideal, restrict_dg_to_ainf, structure_maps_equal, theta, CMPoint, Chirality, Exp,
    RatMatrix, SkewSum, ThetaOptions, TieBreak, UniPoly, WeylElement,
};

const SEED: u64 = 20_241_015;
const CONJUGATES: usize = 10;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn points() -> Vec<(String, CMPoint)> {
    catalog(SEED, CONJUGATES)
}

fn roundtrip_inputs() -> Vec<(String, CMPoint)> {
    let mut out = vec![
        ("n0".to_string(), CMPoint::empty()),
        ("zero".to_string(), CMPoint::zero_point()),
    ];
    for (a, b) in [(1, 0), (0, 1), (1, -2)] {
        out.push((format!("n1({a},{b})"), CMPoint::single(rat(a), rat(b))));
    }
    out.push(("n2_nilpotent".to_string(), CMPoint::nilpotent2()));
    out
}

fn rank_one_and_trace() -> Outcome {
    let pts = points();
    for (name, p) in &pts {
        ensure(p.validate(), || format!("{name}: rank-one relation fails"))?;
        ensure(p.trace_ji() == rat(p.n as i64), || {
            format!("{name}: j i = {} but n = {}", p.trace_ji(), p.n)
        })?;
    }
    Ok(format!("{} points", pts.len()))
}

fn kappa_identities() -> Outcome {
    let pts = points();
    let one = SkewSum::one(Chirality::XY);
    for (name, p) in &pts {
        let (kappa, chi) = p.kappa();
        let ok = product_equals(&chi, &kappa, &one).map_err(|e| format!("{name}: {e}"))?;
        ensure(ok, || format!("{name}: chi kappa != 1"))?;
        ensure(p.kappa_series_check(4), || {
            format!("{name}: series of kappa disagrees with lambda")
        })?;
    }
    Ok(format!("{} points", pts.len()))
}

fn membership() -> Outcome {
    let pts = points();
    for (name, p) in &pts {
        let (kappa, chi) = p.kappa();
        let px = WeylElement::poly_x(&p.x.charpoly());
        let qy = WeylElement::poly_y(&p.y.charpoly());
        ensure(kappa.rmul(&px).in_poly_ring(), || {
            format!("{name}: kappa p(x) not in k(y)[x]")
        })?;
        ensure(chi.rmul(&qy).in_poly_ring(), || {
            format!("{name}: chi q(y) not in k(x)[y]")
        })?;
    }
    Ok(format!("{} points", pts.len()))
}

fn envelope_axioms() -> Outcome {
    let pts = points();
    for (name, p) in &pts {
        let env = build_envelope(p, 8).map_err(|e| format!("{name}: {e}"))?;
        let rep = check_ainf_axioms(&env, 4).map_err(|e| format!("{name}: {e}"))?;
        if let Some(f) = rep.first_failure() {
            return Err(format!("{name}: {} fails at {}", f.axiom, f.location));
        }
    }
    let env = build_envelope(&CMPoint::zero_point(), 8).map_err(|e| e.to_string())?;
    let mutated = env.with_perturbed_lambda(1, 0, &rat(1));
    let rep = check_ainf_axioms(&mutated, 4).map_err(|e| e.to_string())?;
    let hit = rep
        .get("homotopy_associativity_k0")
        .ok_or("missing homotopy_associativity_k0 entry")?;
    ensure(!hit.pass, || {
        "perturbed lambda_10 still passes homotopy associativity on K0".into()
    })?;
    Ok(format!(
        "{} points; mutation caught at {}",
        pts.len(),
        hit.location
    ))
}

fn dg_agreement() -> Outcome {
    let pts = points();
    for (name, p) in &pts {
        let dg = build_dg_envelope(p, 8).map_err(|e| format!("{name}: {e}"))?;
        if let Some(f) = dg.leibniz_report().first_failure() {
            return Err(format!("{name}: {} fails at {}", f.axiom, f.location));
        }
        let env = build_envelope(p, 8).map_err(|e| format!("{name}: {e}"))?;
        let budget = 8 - p.n.saturating_sub(1);
        let rep = structure_maps_equal(&env, &restrict_dg_to_ainf(&dg), budget)
            .map_err(|e| format!("{name}: {e}"))?;
        if let Some(f) = rep.first_failure() {
            return Err(format!("{name}: {} differs at {}", f.axiom, f.location));
        }
    }
    Ok(format!("{} points", pts.len()))
}

fn resolution_maps() -> Outcome {
    let pts = points();
    for (name, p) in &pts {
        for (r, g) in g2_on_x(p).iter().enumerate() {
            ensure(g.is_zero(), || format!("{name}: g2(e{r}, x) != 0"))?;
        }
        let basis: Vec<Vec<_>> = (0..p.n)
            .map(|r| {
                (0..p.n)
                    .map(|t| if t == r { rat(1) } else { rat(0) })
                    .collect()
            })
            .collect();
        for v in basis.iter().chain(std::iter::once(&p.i)) {
            for k in 0..=2 {
                for m in 0..=5 {
                    let a = delta_x(p, v, k, m);
                    let b = delta_x_recurrence(p, v, k, m);
                    let ok = a.sub(&b).map(|d| d.is_zero()).unwrap_or(false);
                    ensure(ok, || {
                        format!("{name}: closed form and recurrence differ at k={k} m={m}")
                    })?;
                }
            }
        }
        ensure(compatibility_defect(p).is_zero(), || {
            format!("{name}: g_y image of p(X) i differs from kappa p(x)")
        })?;
    }
    Ok(format!("{} points", pts.len()))
}

/// Leading exponents of the span of `g · x^a y^b`, total degree at most `deg`, by row reduction.
fn row_reduction_leads(gens: &[WeylElement], deg: usize) -> BTreeSet<Exp> {
    let mut cols: Vec<Exp> = (0..=deg)
        .flat_map(|l| (0..=deg - l).map(move |k| Exp::new(k, l)))
        .collect();
    cols.sort_by(|a, b| b.cmp(a));
    let mut rows = Vec::new();
    for g in gens {
        let dg = g.degree().unwrap_or(0);
        for a in 0..=deg.saturating_sub(dg) {
            for b in 0..=deg.saturating_sub(dg) - a {
                let m = g * &WeylElement::monomial(a, b, rat(1));
                rows.push(cols.iter().map(|e| m.coeff(e.k, e.l)).collect::<Vec<_>>());
            }
        }
    }
    let (_, pivots) = RatMatrix::from_rows(rows).expect("rectangular").rref();
    pivots.into_iter().map(|c| cols[c]).collect()
}

fn groebner_oracle() -> Outcome {
    let cases = [
        (
            WeylElement::from_int_terms(&[(0, 2, 1)]),
            WeylElement::from_int_terms(&[(1, 1, 1), (0, 0, -2)]),
            1,
        ),
        (
            WeylElement::from_int_terms(&[(0, 3, 1)]),
            WeylElement::from_int_terms(&[(2, 1, 1), (1, 0, -4)]),
            2,
        ),
    ];
    let deg = 8;
    let mut sizes = Vec::new();
    for (f, g, size) in cases {
        let gens = [f, g];
        let gb = groebner(&gens).map_err(|e| e.to_string())?;
        let oracle = row_reduction_leads(&gens, deg);
        let window = deg - 3;
        let from_gb: BTreeSet<Exp> = (0..=window)
            .flat_map(|l| (0..=window - l).map(move |k| Exp::new(k, l)))
            .filter(|e| gb.contains_exp(*e))
            .collect();
        let from_rows: BTreeSet<Exp> = oracle
            .iter()
            .filter(|e| e.degree() <= window)
            .copied()
            .collect();
        ensure(from_gb == from_rows, || {
            format!("staircase {from_gb:?} vs row reduction {from_rows:?}")
        })?;
        ensure(oracle.iter().all(|e| gb.contains_exp(*e)), || {
            "row reduction finds a lead outside the staircase".into()
        })?;
        let comp = gb.complement().map_err(|e| e.to_string())?;
        ensure(comp.len() == size, || {
            format!("complement size {} (expected {size})", comp.len())
        })?;
        sizes.push(comp.len());
    }
    Ok(format!("complement sizes {sizes:?}"))
}

fn roundtrip() -> Outcome {
    let inputs = roundtrip_inputs();
    for (name, p) in &inputs {
        let ideal = omega_ideal(p).map_err(|e| format!("{name}: {e}"))?;
        let q = theta(&ideal.cleared_generators(), ThetaOptions::default())
            .map_err(|e| format!("{name}: {e}"))?
            .point;
        let eq = equivalent(p, &q).map_err(|e| format!("{name}: {e}"))?;
        ensure(eq.equivalent, || {
            format!("{name}: not equivalent ({:?})", eq.witness)
        })?;
        ensure(p.lambda_table(4) == q.lambda_table(4), || {
            format!("{name}: lambda tables differ")
        })?;
    }
    Ok(format!("{} inputs", inputs.len()))
}

fn equivariance() -> Outcome {
    let p = CMPoint::zero_point();
    let ideal = omega_ideal(&p).map_err(|e| e.to_string())?;
    let base = theta(&ideal.cleared_generators(), ThetaOptions::default())
        .map_err(|e| e.to_string())?
        .point;
    let sigmas = [
        (
            "y -> y+x",
            AutGenerator::ShiftY(UniPoly::from_ints(&[0, 1])),
        ),
        (
            "y -> y+x^2",
            AutGenerator::ShiftY(UniPoly::from_ints(&[0, 0, 1])),
        ),
        (
            "x -> x+y",
            AutGenerator::ShiftX(UniPoly::from_ints(&[0, 1])),
        ),
    ];
    for (label, g) in &sigmas {
        let sigma = Automorphism::from_generator(g).map_err(|e| e.to_string())?;
        let moved: Vec<WeylElement> = ideal
            .cleared_generators()
            .iter()
            .map(|a| sigma.apply(a))
            .collect();
        let lhs = theta(&moved, ThetaOptions::default())
            .map_err(|e| format!("{label}: {e}"))?
            .point;
        let rhs = base.act(&sigma).map_err(|e| format!("{label}: {e}"))?;
        let eq = equivalent(&lhs, &rhs).map_err(|e| format!("{label}: {e}"))?;
        ensure(eq.equivalent, || {
            format!("{label}: not equivalent ({:?})", eq.witness)
        })?;
    }
    Ok(format!("{} automorphisms", sigmas.len()))
}

fn tie_break_independence() -> Outcome {
    let inputs = roundtrip_inputs();
    for (name, p) in &inputs {
        let gens = omega_ideal(p)
            .map_err(|e| format!("{name}: {e}"))?
            .cleared_generators();
        let alt = ThetaOptions {
            tie: TieBreak::MinL,
            ..Default::default()
        };
        let a = theta(&gens, alt).map_err(|e| format!("{name}: {e}"))?.point;
        let b = theta(&gens, ThetaOptions::default())
            .map_err(|e| format!("{name}: {e}"))?
            .point;
        for (other, what) in [(p, "input"), (&b, "default tie-break")] {
            let eq = equivalent(&a, other).map_err(|e| format!("{name}: {e}"))?;
            ensure(eq.equivalent, || {
                format!("{name}: differs from the {what} ({:?})", eq.witness)
            })?;
        }
    }
    Ok(format!("{} inputs", inputs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "rank-one relation and trace on the catalog",
            Duration::from_secs(1),
            rank_one_and_trace,
        ),
        (
            "chi kappa = 1 and kappa series",
            Duration::from_secs(10),
            kappa_identities,
        ),
        (
            "kappa p(x) and chi q(y) are polynomial on one side",
            Duration::from_secs(10),
            membership,
        ),
        (
            "envelope axioms and mutation test",
            Duration::from_secs(30),
            envelope_axioms,
        ),
        (
            "DG envelope restricts to the A-infinity envelope",
            Duration::from_secs(10),
            dg_agreement,
        ),
        ("resolution maps", Duration::from_secs(30), resolution_maps),
        (
            "Groebner bases against row reduction",
            Duration::from_secs(10),
            groebner_oracle,
        ),
        (
            "round trip theta(omega(p)) ~ p",
            Duration::from_secs(120),
            roundtrip,
        ),
        (
            "equivariance under automorphisms",
            Duration::from_secs(120),
            equivariance,
        ),
        (
            "independence of the lift tie-break",
            Duration::from_secs(120),
            tie_break_independence,
        ),
    ];
    let mut failures = 0;
    for (idx, (title, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *limit => Err(format!("{detail}; exceeded {limit:?}")),
            other => other,
        };
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "PASS {:>2} {title} ({detail}; {secs:.2}s, limit {}s)",
                idx + 1,
                limit.as_secs()
            ),
            Err(why) => {
                failures += 1;
                println!(
                    "FAIL {:>2} {title}: {why} ({secs:.2}s, limit {}s)",
                    idx + 1,
                    limit.as_secs()
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
