//! Acceptance criteria, one PASS/FAIL line each. Every check is exact; each
//! criterion also has a wall-clock limit.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use serde_json::Value;

use bimod_core::metric::ml_family_zeta3;
use bimod_core::qalgebra::{AlgElem, Window};
use bimod_core::scalar::{Field, Zeta3};
use bimod_core::verify::{self, VerificationResult, DEFAULT_SEED};

const SEED: u64 = DEFAULT_SEED;

fn passed(results: &[VerificationResult]) -> Result<(), String> {
    match results.iter().find(|r| !r.passed()) {
        None => Ok(()),
        Some(r) => Err(format!("{} failed: {}", r.name, r.details)),
    }
}

fn expect(details: &Value, key: &str, want: impl Into<Value>) -> Result<(), String> {
    let want = want.into();
    if details[key] == want {
        Ok(())
    } else {
        Err(format!("{key} = {}, expected {want}", details[key]))
    }
}

fn center() -> Result<(), String> {
    let r = verify::center(6);
    passed(std::slice::from_ref(&r))?;
    // centrality by direct commutation with the generators
    let (x, y) = (AlgElem::<Zeta3>::x(), AlgElem::<Zeta3>::y());
    let mut central = Vec::new();
    for r in 0..=6 {
        for p in 0..=6 {
            let m = AlgElem::monomial(p, r, Zeta3::one());
            if &m * &x == &x * &m && &m * &y == &y * &m {
                central.push(m.to_string());
            }
        }
    }
    let reported: Vec<String> = r.details["center_basis"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    let mut a = central.clone();
    let mut b = reported;
    a.sort();
    b.sort();
    if a != b || a.len() != 9 {
        return Err(format!("centre {b:?}, direct {a:?}"));
    }
    expect(&r.details, "central_oneforms_match_generators", true)?;
    expect(&r.details, "left_right_conversion", true)
}

fn metric_generic() -> Result<(), String> {
    let r = verify::metric_generic();
    passed(std::slice::from_ref(&r))?;
    expect(&r.details, "polynomial_dimension", 0)?;
    expect(&r.details, "laurent_tau_symmetric_dimension", 3)?;
    expect(&r.details, "laurent_tau_symmetric_matches_family", true)?;
    expect(&r.details, "laurent_dimension", 4)
}

/// Family dimensions on `[0, bound]^2` counted slot by slot.
fn zeta3_counts(bound: i64) -> (usize, usize, usize) {
    let window = Window::square(bound);
    let z = AlgElem::<Zeta3>::zero;
    let fits = |g: [AlgElem<Zeta3>; 4]| {
        let m = ml_family_zeta3(&g[0], &g[1], &g[2], &g[3]).unwrap();
        m.g.iter().flatten().all(|e| e.fits(&window))
    };
    let (mut family, mut tau, mut extra) = (0, 0, 0);
    for p in (0..=bound).step_by(3) {
        for r in (0..=bound).step_by(3) {
            let c = AlgElem::monomial(p, r, Zeta3::one());
            let slots = [
                fits([c.clone(), z(), z(), z()]),
                fits([z(), c.clone(), z(), z()]),
                fits([z(), z(), c.clone(), z()]),
                fits([z(), z(), z(), c.clone()]),
            ];
            family += slots.iter().filter(|s| **s).count();
            tau += slots[0] as usize + slots[3] as usize + (slots[1] && slots[2]) as usize;
            if p == 0 {
                extra += 1;
            }
        }
    }
    (family, tau, extra)
}

fn metric_zeta3() -> Result<(), String> {
    let r = verify::metric_zeta3(7);
    passed(std::slice::from_ref(&r))?;
    let (family, tau, extra) = zeta3_counts(7);
    expect(&r.details, "family_dimension", family)?;
    expect(&r.details, "solver_dimension", family + extra)?;
    expect(&r.details, "tau_symmetric_dimension", tau)?;
    expect(&r.details, "tau_dimension_drop", family + extra - tau)?;
    expect(&r.details, "tau_symmetric_equals_family_with_y_eq_qw", true)
}

fn right_from_left() -> Result<(), String> {
    let a = verify::right_from_left(SEED, 50, 20);
    let b = verify::rescaled_sigma(4);
    passed(&[a.clone(), b.clone()])?;
    expect(&a.details, "residuals_zero", 50)?;
    expect(&a.details, "rejected_not_admissible", 20)?;
    expect(&b.details, "q2_sigma_solvable", false)
}

fn whole_bimodule() -> Result<(), String> {
    let a = verify::whole_bimodule_generic();
    let b = verify::whole_bimodule_zeta3(SEED, 10);
    passed(&[a.clone(), b.clone()])?;
    expect(&a.details, "solve_dimension", 1)?;
    expect(&b.details, "residuals_zero", 10)
}

fn gauge() -> Result<(), String> {
    let a = verify::gauge_demo();
    let b = verify::bimodule_gauge(SEED, 20);
    passed(&[a.clone(), b.clone()])?;
    expect(&a.details, "G^1_12", "1")?;
    expect(&a.details, "admissible", false)?;
    expect(&b.details, "preserved", 20)
}

fn compat_equivalence() -> Result<(), String> {
    let r = verify::compat_equivalence(SEED, 100);
    passed(std::slice::from_ref(&r))?;
    expect(&r.details, "agreeing", 100)?;
    // both verdicts must actually occur
    let full = r.details["fully_compatible"].as_u64().unwrap();
    if full == 0 || full == 100 {
        return Err(format!("degenerate sample: {full} compatible"));
    }
    Ok(())
}

fn appendix() -> Result<(), String> {
    let r = verify::appendix(SEED, 500, 100);
    passed(std::slice::from_ref(&r))?;
    expect(&r.details, "q3_vanishes_at_cube_root", true)?;
    expect(&r.details, "d_squared_zero", 100)
}

fn matrixgeo() -> Result<(), String> {
    let r = verify::matrixgeo(SEED, 50);
    passed(std::slice::from_ref(&r))?;
    expect(&r.details, "metric_round_trip", 50)?;
    expect(&r.details, "swap_criterion_agrees", 50)?;
    expect(&r.details, "compat_display_agrees", 50)
}

type Criterion = (&'static str, u64, fn() -> Result<(), String>);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("centre of the algebra and of the 1-forms", 5, center),
        ("middle-linear metrics at generic q", 30, metric_generic),
        (
            "middle-linear metrics at a cube root of unity",
            60,
            metric_zeta3,
        ),
        (
            "right connection from an admissible left one",
            120,
            right_from_left,
        ),
        ("whole-bimodule families", 60, whole_bimodule),
        ("gauge transformations", 30, gauge),
        ("compatibility over the centre", 120, compat_equivalence),
        ("commutation formulas against rewriting", 30, appendix),
        ("matrix geometry", 60, matrixgeo),
    ];
    let mut failures = 0;
    for (n, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > Duration::from_secs(*limit) {
            outcome = Err(format!("took {elapsed:?}, limit {limit} s"));
        }
        match outcome {
            Ok(()) => println!(
                "criterion {}: PASS {name} ({} ms)",
                n + 1,
                elapsed.as_millis()
            ),
            Err(e) => {
                failures += 1;
                println!(
                    "criterion {}: FAIL {name} ({} ms): {e}",
                    n + 1,
                    elapsed.as_millis()
                );
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
