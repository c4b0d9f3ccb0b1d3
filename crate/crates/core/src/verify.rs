//! Named end-to-end checks of the engine, each producing a [`VerificationResult`].

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::compat::{compat_over_center, metric_compat_residuals, solve_compatible_right};
use crate::connection::{
    admissibility_clauses, gauge_transform_bimodule, gauge_transform_frame, index_triples,
    is_admissible, nilpotent_automorphism, sigma_compat_residuals, sigma_compat_residuals_with,
    solve_compatible_pair, solve_right_from_left, solve_whole_bimodule, total_degree_monomials,
    whole_bimodule_family_generic, whole_bimodule_family_zeta3, whole_bimodule_residuals,
    CentralParams, Christoffel, GaugeMatrix, Side, CLAUSES,
};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::matrixgeo as mg;
use crate::metric::{ml_family_laurent, ml_family_zeta3, solve_middle_linear, Metric};
use crate::oneforms::{
    center_oneforms, central_generators, differential, differential_form, Braiding, OneForm,
    TensorOverA,
};
use crate::qalgebra::{center_basis, AlgElem, Exp, Window};
use crate::random;
use crate::rewrite::{self, basis_letter, monomial_word, Letter};
use crate::scalar::{qn_sum, Field, QField, RatFunc, Zeta3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationResult {
    pub name: String,
    pub status: Status,
    pub details: Value,
    pub elapsed_ms: u64,
}

impl VerificationResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Runs `check`, timing it; an engine error counts as a failure.
pub fn run(name: &str, check: impl FnOnce() -> Result<(bool, Value)>) -> VerificationResult {
    let start = Instant::now();
    let (ok, details) = match check() {
        Ok(r) => r,
        Err(e) => (false, json!({ "error": e.to_string() })),
    };
    VerificationResult {
        name: name.to_string(),
        status: if ok { Status::Pass } else { Status::Fail },
        details,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Rank of a family of sparse vectors.
fn rank<K: Ord + Clone, F: Field>(vectors: &[BTreeMap<K, F>]) -> usize {
    let keys: BTreeSet<K> = vectors.iter().flat_map(|v| v.keys().cloned()).collect();
    if vectors.is_empty() || keys.is_empty() {
        return 0;
    }
    let rows = vectors
        .iter()
        .map(|v| {
            keys.iter()
                .map(|k| v.get(k).cloned().unwrap_or_else(F::zero))
                .collect()
        })
        .collect();
    ExactMatrix::from_rows(rows).rank()
}

/// Whether two families span the same space.
fn same_span<K: Ord + Clone, F: Field>(a: &[BTreeMap<K, F>], b: &[BTreeMap<K, F>]) -> bool {
    let ra = rank(a);
    let both: Vec<_> = a.iter().chain(b).cloned().collect();
    ra == rank(b) && rank(&both) == ra
}

fn alg_vec<F: QField>(tag: usize, a: &AlgElem<F>, out: &mut BTreeMap<(usize, Exp), F>) {
    for (e, c) in a.terms() {
        out.insert((tag, *e), c.clone());
    }
}

fn metric_vec<F: QField>(m: &Metric<F>) -> BTreeMap<(usize, Exp), F> {
    let mut out = BTreeMap::new();
    for (t, e) in m.g.iter().flatten().enumerate() {
        alg_vec(t, e, &mut out);
    }
    out
}

fn form_vec<F: QField>(w: &OneForm<F>) -> BTreeMap<(usize, Exp), F> {
    let mut out = BTreeMap::new();
    for (t, e) in w.b.iter().enumerate() {
        alg_vec(t, e, &mut out);
    }
    out
}

fn christoffel_vec<F: QField>(g: &Christoffel<F>) -> BTreeMap<(usize, Exp), F> {
    let mut out = BTreeMap::new();
    for (t, (_, e)) in g.entries().enumerate() {
        alg_vec(t, e, &mut out);
    }
    out
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

fn central_monomials(window: &Window) -> Vec<Exp> {
    window
        .monomials()
        .into_iter()
        .filter(|(p, r)| p % 3 == 0 && r % 3 == 0)
        .collect()
}

/// Centre of `A` and of the 1-forms at `q^3 = 1`.
pub fn center(bound: i64) -> VerificationResult {
    run("center", || {
        let window = Window::square(bound);
        let basis = center_basis::<Zeta3>(bound);
        let expected: BTreeSet<Exp> = central_monomials(&window).into_iter().collect();
        let found: BTreeSet<Exp> = basis
            .iter()
            .filter_map(|a| match a.terms().collect::<Vec<_>>().as_slice() {
                [(e, c)] if c.is_one() => Some(**e),
                _ => None,
            })
            .collect();
        let basis_ok = found == expected && basis.len() == expected.len();
        let d_zero = basis
            .iter()
            .all(|a| differential(a).map(|d| d.is_zero()).unwrap_or(false));

        let forms = center_oneforms::<Zeta3>(bound);
        let [z1, z2] = central_generators::<Zeta3>();
        let mut family = Vec::new();
        for &(p, r) in &window.monomials() {
            if p % 3 != 0 || r % 3 != 0 {
                continue;
            }
            let c = AlgElem::monomial(p, r, Zeta3::one());
            if p + r + 2 <= bound {
                family.push(z1.left_mul(&c));
            }
            if p + r + 4 <= bound {
                family.push(z2.left_mul(&c));
            }
        }
        let fv: Vec<_> = forms.iter().map(form_vec).collect();
        let gv: Vec<_> = family.iter().map(form_vec).collect();
        let forms_ok = same_span(&fv, &gv) && forms.iter().all(OneForm::is_central);

        // a1 = a xy - b xy^3, a2 = b x^2y^2 has right coefficients (a xy - q b xy^3, b x^2y^2)
        let mut conversion_ok = true;
        for (a, b) in [
            ((0, 0), None),
            ((3, 0), Some((0, 3))),
            ((0, 0), Some((0, 0))),
            ((3, 3), Some((6, 0))),
        ] {
            let m = |(p, r): Exp| AlgElem::monomial(p, r, Zeta3::one());
            let av = m(a);
            let bv = b.map(m).unwrap_or_default();
            let xy = m((1, 1));
            let a1 = &(&av * &xy) - &(&bv * &m((1, 3)));
            let a2 = &bv * &m((2, 2));
            let w = OneForm::from_left(&a1, &a2);
            let expect_b1 = &(&av * &xy) - &(&bv * &m((1, 3))).scale(&Zeta3::q());
            conversion_ok &= w.b[0] == expect_b1 && w.b[1] == a2 && w.is_central();
        }
        let ok = basis_ok && d_zero && forms_ok && conversion_ok;
        Ok((
            ok,
            json!({
                "mode": "zeta3",
                "bound": bound,
                "center_basis": strings(&basis),
                "d_vanishes_on_center": d_zero,
                "central_oneforms_dimension": forms.len(),
                "central_oneforms_match_generators": forms_ok,
                "left_right_conversion": conversion_ok,
            }),
        ))
    })
}

/// Middle-linear metrics supported in a window; pass means the solve ran.
pub fn metric_solve<F: QField>(window: &Window, tau_symmetric: bool) -> VerificationResult {
    run("solve-metric", || {
        let basis = solve_middle_linear::<F>(window, tau_symmetric)?;
        let ok = basis
            .iter()
            .all(|m| m.is_middle_linear() && (!tau_symmetric || m.is_tau_symmetric()));
        Ok((
            ok,
            json!({
                "mode": F::MODE.name(),
                "window": [window.p_min, window.p_max, window.r_min, window.r_max],
                "tau_symmetric": tau_symmetric,
                "dimension": basis.len(),
                "basis": basis.iter().map(|m| strings(&m.g.iter().flatten().collect::<Vec<_>>())).collect::<Vec<_>>(),
            }),
        ))
    })
}

/// No polynomial middle-linear metric at generic `q`; the Laurent family.
pub fn metric_generic() -> VerificationResult {
    run("metric-generic", || {
        let poly = solve_middle_linear::<RatFunc>(&Window::square(8), false)?;
        let poly_tau = solve_middle_linear::<RatFunc>(&Window::square(8), true)?;
        let window = Window::new(-4, 0, 0, 6);
        let sym = solve_middle_linear::<RatFunc>(&window, true)?;
        let all = solve_middle_linear::<RatFunc>(&window, false)?;
        let (one, zero) = (RatFunc::one(), RatFunc::zero());
        let family = [
            ml_family_laurent(&one, &zero, &zero),
            ml_family_laurent(&zero, &one, &zero),
            ml_family_laurent(&zero, &zero, &one),
        ];
        let fam: Vec<_> = family.iter().map(metric_vec).collect();
        let sym_v: Vec<_> = sym.iter().map(metric_vec).collect();
        let all_v: Vec<_> = all.iter().map(metric_vec).collect();
        let sym_match = sym.len() == 3 && same_span(&sym_v, &fam);
        // G12 = -q^-1 x^-3 y^3, G21 = x^-3 y^3 is middle-linear but not tau-symmetric
        let extra = Metric::new(
            AlgElem::zero(),
            AlgElem::monomial(-3, 3, -RatFunc::q_power(-1)),
            AlgElem::monomial(-3, 3, RatFunc::one()),
            AlgElem::zero(),
        );
        let mut expected = fam.clone();
        expected.push(metric_vec(&extra));
        let all_match = all.len() == 4 && same_span(&all_v, &expected) && extra.is_middle_linear();
        let ok = poly.is_empty() && poly_tau.is_empty() && sym_match && all_match;
        Ok((
            ok,
            json!({
                "polynomial_window": [0, 8, 0, 8],
                "polynomial_dimension": poly.len(),
                "laurent_window": [-4, 0, 0, 6],
                "laurent_tau_symmetric_dimension": sym.len(),
                "laurent_tau_symmetric_matches_family": sym_match,
                "laurent_dimension": all.len(),
                "laurent_extra_solution": strings(&extra.g.iter().flatten().collect::<Vec<_>>()),
                "laurent_matches_family_plus_extra": all_match,
            }),
        ))
    })
}

/// Middle-linear metrics at `q^3 = 1` against the central-parameter family.
pub fn metric_zeta3(bound: i64) -> VerificationResult {
    run("metric-zeta3", || {
        let window = Window::square(bound);
        let solved = solve_middle_linear::<Zeta3>(&window, false)?;
        let solved_sym = solve_middle_linear::<Zeta3>(&window, true)?;
        let z = AlgElem::<Zeta3>::zero;
        let fits = |m: &Metric<Zeta3>| m.g.iter().flatten().all(|e| e.fits(&window));
        let mut family = Vec::new();
        let mut family_sym = Vec::new();
        let mut extras = Vec::new();
        for (p, r) in central_monomials(&window) {
            let c = AlgElem::monomial(p, r, Zeta3::one());
            let qc = c.scale(&Zeta3::q());
            let members = [
                ml_family_zeta3(&c, &z(), &z(), &z())?,
                ml_family_zeta3(&z(), &c, &z(), &z())?,
                ml_family_zeta3(&z(), &z(), &c, &z())?,
                ml_family_zeta3(&z(), &z(), &z(), &c)?,
            ];
            for (k, m) in members.into_iter().enumerate() {
                if fits(&m) {
                    family.push(m.clone());
                    if k == 0 || k == 3 {
                        family_sym.push(m);
                    }
                }
            }
            let w_member = ml_family_zeta3(&z(), &qc, &c, &z())?;
            if fits(&w_member) {
                family_sym.push(w_member);
            }
            let extra = Metric::new(z(), c.scale(&-Zeta3::q_power(-1)), c.clone(), z());
            if fits(&extra) {
                extras.push(extra);
            }
        }
        let fam: Vec<_> = family.iter().map(metric_vec).collect();
        let fam_sym: Vec<_> = family_sym.iter().map(metric_vec).collect();
        let sol: Vec<_> = solved.iter().map(metric_vec).collect();
        let sol_sym: Vec<_> = solved_sym.iter().map(metric_vec).collect();
        let ext: Vec<_> = extras.iter().map(metric_vec).collect();
        let fam_rank = rank(&fam);
        let union: Vec<_> = fam.iter().chain(&sol).cloned().collect();
        let family_inside = rank(&union) == solved.len();
        let with_extras: Vec<_> = fam.iter().chain(&ext).cloned().collect();
        let full_match =
            same_span(&sol, &with_extras) && extras.iter().all(Metric::is_middle_linear);
        let sym_match = same_span(&sol_sym, &fam_sym);
        let ok = family_inside && full_match && sym_match;
        Ok((
            ok,
            json!({
                "window": [0, bound, 0, bound],
                "solver_dimension": solved.len(),
                "family_dimension": fam_rank,
                "family_contained": family_inside,
                "extra_dimension": solved.len() as i64 - fam_rank as i64,
                "solver_equals_family_plus_extras": full_match,
                "tau_symmetric_dimension": solved_sym.len(),
                "tau_symmetric_equals_family_with_y_eq_qw": sym_match,
                "tau_dimension_drop": solved.len() - solved_sym.len(),
            }),
        ))
    })
}

/// Closed-form right connections for random admissible left ones, and the
/// admissibility guard.
pub fn right_from_left(seed: u64, good: usize, bad: usize) -> VerificationResult {
    run("right-from-left", || {
        let mut rng = random::rng(seed);
        let mut passed = 0;
        for _ in 0..good {
            let g = random::admissible::<Zeta3, _>(&mut rng, 4);
            let gt = solve_right_from_left(&g)?;
            if sigma_compat_residuals(&g, &gt)?
                .iter()
                .all(TensorOverA::is_zero)
            {
                passed += 1;
            }
        }
        let clauses = [0, 1, 2, 4];
        let mut rejected = 0;
        let mut single = 0;
        for n in 0..bad {
            let base = random::admissible::<Zeta3, _>(&mut rng, 4);
            let g = random::violate(&mut rng, &base, clauses[n % clauses.len()]);
            if admissibility_clauses(&g).iter().filter(|c| !**c).count() == 1 {
                single += 1;
            }
            if matches!(solve_right_from_left(&g), Err(Error::NotAdmissible(_))) {
                rejected += 1;
            }
        }
        Ok((
            passed == good && rejected == bad && single == bad,
            json!({
                "seed": seed,
                "admissible_instances": good,
                "residuals_zero": passed,
                "violating_instances": bad,
                "violating_exactly_one_clause": single,
                "rejected_not_admissible": rejected,
                "clauses": CLAUSES,
            }),
        ))
    })
}

/// The compatibility equations with `q^2 sigma` in place of `sigma` have no solution.
pub fn rescaled_sigma(bound: i64) -> VerificationResult {
    run("rescaled-sigma", || {
        let window = Window::square(bound);
        let sigma = Braiding::<Zeta3>::sigma();
        let standard = solve_compatible_pair(&window, &sigma)?;
        let rescaled = solve_compatible_pair(&window, &sigma.scaled(&Zeta3::q_power(2)))?;
        Ok((
            standard.solution.is_some() && rescaled.solution.is_none(),
            json!({
                "window": [0, bound, 0, bound],
                "unknowns": rescaled.unknowns,
                "sigma_solvable": standard.solution.is_some(),
                "q2_sigma_solvable": rescaled.solution.is_some(),
            }),
        ))
    })
}

fn random_central<R: Rng>(rng: &mut R) -> AlgElem<Zeta3> {
    let mut out = AlgElem::zero();
    for (p, r) in [(0, 0), (3, 0), (0, 3)] {
        if rng.gen_bool(0.5) {
            out = &out + &AlgElem::monomial(p, r, random::scalar(rng));
        }
    }
    out
}

/// The generic-`q` whole-bimodule family and the constraint solve.
pub fn whole_bimodule_generic() -> VerificationResult {
    run("whole-bimodule-generic", || {
        let sigma = Braiding::<RatFunc>::sigma();
        let mut family_ok = true;
        for nu in [RatFunc::zero(), RatFunc::one(), RatFunc::q()] {
            let g = whole_bimodule_family_generic(&nu);
            family_ok &= whole_bimodule_residuals(&g, &sigma)?
                .iter()
                .all(TensorOverA::is_zero);
        }
        let solved = solve_whole_bimodule(&total_degree_monomials(3), &sigma)?;
        let family = christoffel_vec(&whole_bimodule_family_generic(&RatFunc::one()));
        let solved_v: Vec<_> = solved.iter().map(christoffel_vec).collect();
        let solve_ok = solved.len() == 1 && same_span(&solved_v, &[family]);
        Ok((
            family_ok && solve_ok,
            json!({
                "mode": "generic",
                "nu": ["0", "1", "q"],
                "family_residuals_zero": family_ok,
                "solve_total_degree": 3,
                "solve_dimension": solved.len(),
                "solve_matches_family": solve_ok,
            }),
        ))
    })
}

/// The cube-root whole-bimodule family on seeded central parameters.
pub fn whole_bimodule_zeta3(seed: u64, trials: usize) -> VerificationResult {
    run("whole-bimodule-zeta3", || {
        let sigma = Braiding::<Zeta3>::sigma();
        let mut rng = random::rng(seed);
        let mut zero = 0;
        let mut compatible = 0;
        for _ in 0..trials {
            let mut f: CentralParams<Zeta3> = Default::default();
            for (i, j, k) in index_triples() {
                f[i][j][k] = random_central(&mut rng);
            }
            let g = whole_bimodule_family_zeta3(&f)?;
            if whole_bimodule_residuals(&g, &sigma)?
                .iter()
                .all(TensorOverA::is_zero)
            {
                zero += 1;
            }
            if is_admissible(&g) {
                let gt = solve_right_from_left(&g)?;
                if sigma_compat_residuals(&g, &gt)?
                    .iter()
                    .all(TensorOverA::is_zero)
                {
                    compatible += 1;
                }
            }
        }
        Ok((
            zero == trials,
            json!({
                "mode": "zeta3",
                "seed": seed,
                "instances": trials,
                "residuals_zero": zero,
                "admissible_and_compatible": compatible,
            }),
        ))
    })
}

/// Solves for the right connection of a given left connection at `q^3 = 1`.
pub fn right_from_left_input(g: &Christoffel<Zeta3>) -> VerificationResult {
    run("right-from-left", || {
        let clauses: Vec<_> = CLAUSES
            .iter()
            .zip(admissibility_clauses(g))
            .map(|(n, c)| json!({ "clause": n, "holds": c }))
            .collect();
        let gt = match solve_right_from_left(g) {
            Ok(gt) => gt,
            Err(e @ Error::NotAdmissible(_)) => {
                return Ok((
                    false,
                    json!({ "admissible": false, "clauses": clauses, "error": e.to_string() }),
                ))
            }
            Err(e) => return Err(e),
        };
        let residuals = sigma_compat_residuals(g, &gt)?;
        let ok = residuals.iter().all(TensorOverA::is_zero);
        Ok((
            ok,
            json!({
                "admissible": true,
                "clauses": clauses,
                "gammatilde": gt.entries().map(|((i, j, k), e)| (crate::connection::label(i, j, k), e.to_string())).collect::<BTreeMap<_, _>>(),
                "residuals": strings(&residuals),
            }),
        ))
    })
}

/// Metric compatibility of a given triple, in full or over the central 1-forms.
pub fn compat_check<F: QField>(
    g: &Christoffel<F>,
    gt: &Christoffel<F>,
    metric: &Metric<F>,
    center_only: bool,
) -> VerificationResult {
    run("compat-check", || {
        if center_only {
            let ok = compat_over_center(g, gt, metric)?;
            return Ok((
                ok,
                json!({ "mode": F::MODE.name(), "center_only": true, "satisfied": ok }),
            ));
        }
        let report = metric_compat_residuals(g, gt, metric)?;
        Ok((
            report.satisfied,
            json!({ "mode": F::MODE.name(), "center_only": false, "report": report.to_json() }),
        ))
    })
}

/// The frame action of `U = (1 x; 0 1)` on the pure-gauge connection.
pub fn gauge_demo() -> VerificationResult {
    run("gauge-demo", || {
        let g0 = Christoffel::<Zeta3>::zero(Side::Left);
        let u = GaugeMatrix::unipotent_x();
        let g1 = gauge_transform_frame(&u, &g0)?;
        let symbol = g1.get(1, 1, 2).clone();
        let clauses = admissibility_clauses(&g1);
        let back = gauge_transform_frame(&u.inverse(), &g1)?;
        let ok = symbol == AlgElem::one() && !is_admissible(&g1) && back == g0;
        Ok((
            ok,
            json!({
                "gauge": "U = (1 x; 0 1)",
                "transformed": g1.to_string().lines().collect::<Vec<_>>(),
                "G^1_12": symbol.to_string(),
                "admissible": is_admissible(&g1),
                "failed_clauses": CLAUSES.iter().zip(clauses).filter(|(_, c)| !c).map(|(n, _)| *n).collect::<Vec<_>>(),
                "inverse_restores": back == g0,
            }),
        ))
    })
}

/// Bimodule automorphisms preserve sigma-compatibility over the centre.
pub fn bimodule_gauge(seed: u64, trials: usize) -> VerificationResult {
    run("bimodule-gauge", || {
        let mut rng = random::rng(seed);
        let sigma = Braiding::<Zeta3>::sigma();
        let mut preserved = 0;
        for _ in 0..trials {
            let g = random::admissible::<Zeta3, _>(&mut rng, 3);
            let gt = solve_right_from_left(&g)?;
            let c: Zeta3 = random::nonzero_scalar(&mut rng);
            let lambda: Zeta3 = random::nonzero_scalar(&mut rng);
            let f = nilpotent_automorphism(&c)?.scaled(&lambda)?;
            let (g2, gt2, s2) = gauge_transform_bimodule(&f, &g, &gt, &sigma)?;
            if sigma_compat_residuals_with(&g2, &gt2, &s2)?
                .iter()
                .all(TensorOverA::is_zero)
            {
                preserved += 1;
            }
        }
        Ok((
            preserved == trials,
            json!({ "seed": seed, "instances": trials, "preserved": preserved }),
        ))
    })
}

/// Compatibility over the central 1-forms against the full condition.
pub fn compat_equivalence(seed: u64, trials: usize) -> VerificationResult {
    run("compat-equivalence", || {
        let mut rng = random::rng(seed);
        let monos = total_degree_monomials(3);
        let (mut agree, mut satisfied) = (0, 0);
        for n in 0..trials {
            let g = random::admissible::<Zeta3, _>(&mut rng, 3);
            let (gt, metric) = match n % 4 {
                // random right connection and metric
                0 => {
                    let mut gt = Christoffel::zero(Side::Right);
                    for e in gt.gamma.iter_mut().flatten().flatten() {
                        *e = random::element(&mut rng, &monos);
                    }
                    let e = |r: &mut _| random::element(r, &monos);
                    (
                        gt,
                        Metric::new(e(&mut rng), e(&mut rng), e(&mut rng), e(&mut rng)),
                    )
                }
                // zero metric: always compatible
                1 => (solve_right_from_left(&g)?, Metric::zero()),
                // constant metric, right connection solved for compatibility
                2 | 3 => {
                    let c = |r: &mut _| AlgElem::constant(random::scalar::<Zeta3, _>(r));
                    let metric = Metric::new(c(&mut rng), c(&mut rng), c(&mut rng), c(&mut rng));
                    let mut gt = solve_compatible_right(&g, &metric, &monos)?
                        .unwrap_or_else(|| Christoffel::zero(Side::Right));
                    if n % 4 == 3 {
                        let (i, j, k) = index_triples().nth(rng.gen_range(0..8)).expect("index");
                        let m = monos[rng.gen_range(0..monos.len())];
                        let bump = AlgElem::monomial(m.0, m.1, random::nonzero_scalar(&mut rng));
                        gt.gamma[i][j][k] = &gt.gamma[i][j][k] + &bump;
                    }
                    (gt, metric)
                }
                _ => unreachable!(),
            };
            let full = metric_compat_residuals(&g, &gt, &metric)?.satisfied;
            let central = compat_over_center(&g, &gt, &metric)?;
            if full == central {
                agree += 1;
            }
            if full {
                satisfied += 1;
            }
        }
        Ok((
            agree == trials,
            json!({
                "seed": seed,
                "instances": trials,
                "agreeing": agree,
                "fully_compatible": satisfied,
                "incompatible": trials - satisfied,
            }),
        ))
    })
}

/// Engine rules against single-step rewriting, `Q_3 = 0` and `d^2 = 0`.
pub fn appendix(seed: u64, instances: usize, d_trials: usize) -> VerificationResult {
    run("appendix-oracle", || {
        let mut rng = random::rng(seed);
        let mut agree = [0usize; 4];
        for _ in 0..instances {
            let p = rng.gen_range(0..=5u32);
            let r = rng.gen_range(0..=5u32);
            let a = AlgElem::<RatFunc>::monomial(p as i64, r as i64, RatFunc::one());
            for i in 0..2 {
                let mut w = monomial_word(p, r);
                w.push(basis_letter(i));
                let oracle = rewrite::to_oneform(&rewrite::normalize(vec![(RatFunc::one(), w)]));
                if OneForm::basis(i).left_mul(&a) == oracle {
                    agree[i] += 1;
                }
            }
            let (j, k) = (rng.gen_range(0..2), rng.gen_range(0..2));
            let n = rng.gen_range(0..=5u32);
            for (slot, word) in [(2, monomial_word(n, 0)), (3, monomial_word(0, n))] {
                let mut w = word.clone();
                w.extend([basis_letter(j), Letter::Bar, basis_letter(k)]);
                let oracle = rewrite::to_tensor(&rewrite::normalize(vec![(RatFunc::one(), w)]));
                let (pp, rr) = if slot == 2 {
                    (n as i64, 0)
                } else {
                    (0, n as i64)
                };
                let engine =
                    TensorOverA::basis(j, k).left_mul(&AlgElem::monomial(pp, rr, RatFunc::one()));
                if engine == oracle {
                    agree[slot] += 1;
                }
            }
        }
        let q3_zero = qn_sum::<Zeta3>(3)?.is_zero() && !qn_sum::<RatFunc>(3)?.is_zero();
        let monos = total_degree_monomials(4);
        let mut d2 = 0;
        for n in 0..d_trials {
            let ok = if n % 2 == 0 {
                let a = random::element::<RatFunc, _>(&mut rng, &monos);
                differential_form(&differential(&a)?)?.is_zero()
            } else {
                let a = random::element::<Zeta3, _>(&mut rng, &monos);
                differential_form(&differential(&a)?)?.is_zero()
            };
            if ok {
                d2 += 1;
            }
        }
        Ok((
            agree.iter().all(|&c| c == instances) && q3_zero && d2 == d_trials,
            json!({
                "seed": seed,
                "instances_per_formula": instances,
                "x^p y^r xi": agree[0],
                "x^p y^r eta": agree[1],
                "x^n (theta (x)_A theta)": agree[2],
                "y^n (theta (x)_A theta)": agree[3],
                "q3_vanishes_at_cube_root": q3_zero,
                "d_squared_trials": d_trials,
                "d_squared_zero": d2,
            }),
        ))
    })
}

/// The matrix-geometry model: metric correspondence, index-swap criterion
/// and the compatibility display.
pub fn matrixgeo(seed: u64, trials: usize) -> VerificationResult {
    run("matrixgeo", || {
        let m = 2;
        let n = mg::basis_size(m);
        let mut rng = random::rng(seed);
        let (mut round_trip, mut ml_agree) = (0, 0);
        for t in 0..trials {
            let mut grid = mg::random_symmetric_grid(&mut rng, m);
            if t % 2 == 0 {
                for i in 0..n {
                    for j in i..n {
                        let c = mg::random_central(&mut rng, m, 1);
                        grid[i][j] = c.clone();
                        grid[j][i] = c;
                    }
                }
            }
            let g = mg::MGMetric::new(grid.clone())?;
            if g.extract() == grid && g.is_tau_symmetric() {
                round_trip += 1;
            }
            let central = grid.iter().flatten().all(mg::MatFunc::is_central);
            if g.is_middle_linear() == central {
                ml_agree += 1;
            }
        }
        let mut swap_agree = 0;
        for t in 0..trials {
            let central = t % 3 == 0;
            let g = mg::random_christoffel(&mut rng, m, central);
            let mut gt = g.swapped();
            if t % 2 == 1 {
                let (i, j, k) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                gt.gamma[i][j][k] = &gt.gamma[i][j][k] + &mg::random_matfunc(&mut rng, m, 1, 1);
            }
            let mut direct_center = true;
            for i in 0..n {
                let c = &mg::random_central(&mut rng, m, 1) + &mg::MatFunc::one(m);
                let zeta = mg::MGOneForm::basis(m, i).left_mul(&c);
                direct_center &= mg::sigma_compat_residual_mg(&g, &gt, &zeta).is_zero();
            }
            let mut gens: Vec<mg::MatFunc> =
                (0..m).map(|mu| mg::MatFunc::coordinate(m, mu)).collect();
            gens.extend((0..mg::INNER).map(|a| mg::MatFunc::lambda(m, a)));
            let direct_whole = direct_center
                && (0..n).all(|i| {
                    gens.iter().all(|a| {
                        mg::alt_leibniz_residual_mg(&g, &mg::MGOneForm::basis(m, i), a).is_zero()
                    })
                });
            if mg::sigma_compat_mg(&g, &gt) == direct_center
                && mg::whole_bimodule_mg(&g, &gt) == direct_whole
            {
                swap_agree += 1;
            }
        }
        let mut display_agree = 0;
        for _ in 0..trials {
            let g = mg::random_christoffel(&mut rng, m, false);
            let gt = mg::random_christoffel(&mut rng, m, false);
            let metric = mg::MGMetric::new(mg::random_symmetric_grid(&mut rng, m))?;
            let p = mg::metric_compat_mg(&g, &gt, &metric);
            let zeta = mg::MGOneForm {
                c: (0..n)
                    .map(|_| mg::random_matfunc(&mut rng, m, 1, 1))
                    .collect(),
            };
            let rho = mg::MGOneForm {
                c: (0..n)
                    .map(|_| mg::random_matfunc(&mut rng, m, 1, 1))
                    .collect(),
            };
            let mut combined = mg::MGOneForm::zero(m);
            for i in 0..n {
                for j in 0..n {
                    combined = &combined + &p[i][j].left_mul(&zeta.c[i]).right_mul(&rho.c[j]);
                }
            }
            let basis_ok = (0..n).all(|i| {
                (0..n).all(|j| {
                    mg::compat_residual_mg(
                        &g,
                        &gt,
                        &metric,
                        &mg::MGOneForm::basis(m, i),
                        &mg::MGOneForm::basis(m, j),
                    ) == p[i][j]
                })
            });
            if basis_ok && mg::compat_residual_mg(&g, &gt, &metric, &zeta, &rho) == combined {
                display_agree += 1;
            }
        }
        Ok((
            round_trip == trials
                && ml_agree == trials
                && swap_agree == trials
                && display_agree == trials,
            json!({
                "seed": seed,
                "coordinates": m,
                "matrix_size": mg::N,
                "instances": trials,
                "metric_round_trip": round_trip,
                "middle_linear_iff_central": ml_agree,
                "swap_criterion_agrees": swap_agree,
                "compat_display_agrees": display_agree,
            }),
        ))
    })
}

pub const DEFAULT_SEED: u64 = 20240601;

/// Every verification with the default sizes, run on separate threads and
/// reported in declaration order.
pub fn all(seed: u64) -> Vec<VerificationResult> {
    let checks: Vec<Box<dyn FnOnce() -> VerificationResult + Send>> = vec![
        Box::new(|| center(6)),
        Box::new(metric_generic),
        Box::new(|| metric_zeta3(7)),
        Box::new(move || right_from_left(seed, 50, 20)),
        Box::new(|| rescaled_sigma(4)),
        Box::new(whole_bimodule_generic),
        Box::new(move || whole_bimodule_zeta3(seed, 10)),
        Box::new(gauge_demo),
        Box::new(move || bimodule_gauge(seed, 20)),
        Box::new(move || compat_equivalence(seed, 100)),
        Box::new(move || appendix(seed, 500, 100)),
        Box::new(move || matrixgeo(seed, 50)),
    ];
    std::thread::scope(|s| {
        let handles: Vec<_> = checks.into_iter().map(|c| s.spawn(c)).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect()
    })
}
