//! Metric compatibility of a pair of connections.

use serde::Serialize;

use crate::connection::{index_triples, nabla_left, nabla_right, Christoffel, Side};
use crate::error::Result;
use crate::metric::Metric;
use crate::oneforms::{central_generators, differential, Braiding, OneForm, TensorOverA};
use crate::qalgebra::{element_from, Exp, PowerMode};
use crate::scalar::QField;
use crate::system::ResidualSystem;

/// `alpha g(zeta, rho)`, i.e. `g-check(alpha (x)_A zeta, rho)`.
pub fn g_check<F: QField>(
    alpha: &OneForm<F>,
    zeta: &OneForm<F>,
    rho: &OneForm<F>,
    g: &Metric<F>,
) -> OneForm<F> {
    alpha.right_mul(&g.pair(zeta, rho))
}

/// `g(zeta, rho) alpha`, i.e. `g-hat(zeta, rho (x)_A alpha)`.
pub fn g_hat<F: QField>(
    zeta: &OneForm<F>,
    rho: &OneForm<F>,
    alpha: &OneForm<F>,
    g: &Metric<F>,
) -> OneForm<F> {
    alpha.left_mul(&g.pair(zeta, rho))
}

/// Second legs `alpha_j = theta^k c[j][k]` of `T = sum_j theta^j (x)_A alpha_j`.
fn right_legs<F: QField>(t: &TensorOverA<F>) -> [OneForm<F>; 2] {
    [
        OneForm::from_right(t.c[0][0].clone(), t.c[0][1].clone()),
        OneForm::from_right(t.c[1][0].clone(), t.c[1][1].clone()),
    ]
}

/// `g-check(T, rho)` extended over `E (x)_A E`.
pub fn g_check_tensor<F: QField>(
    t: &TensorOverA<F>,
    rho: &OneForm<F>,
    g: &Metric<F>,
) -> OneForm<F> {
    let legs = right_legs(t);
    &g_check(&OneForm::xi(), &legs[0], rho, g) + &g_check(&OneForm::eta(), &legs[1], rho, g)
}

/// `g-hat(zeta, T)` extended over `E (x)_A E`.
pub fn g_hat_tensor<F: QField>(zeta: &OneForm<F>, t: &TensorOverA<F>, g: &Metric<F>) -> OneForm<F> {
    let legs = right_legs(t);
    &g_hat(zeta, &OneForm::xi(), &legs[0], g) + &g_hat(zeta, &OneForm::eta(), &legs[1], g)
}

/// `dg(zeta, rho) - g-check(nabla^L zeta, rho) - g-hat(zeta, nabla^R rho)`.
pub fn compat_residual<F: QField>(
    gamma: &Christoffel<F>,
    gamma_t: &Christoffel<F>,
    g: &Metric<F>,
    zeta: &OneForm<F>,
    rho: &OneForm<F>,
) -> Result<OneForm<F>> {
    let dg = differential(&g.pair(zeta, rho))?;
    let left = g_check_tensor(&nabla_left(gamma, zeta)?, rho, g);
    let right = g_hat_tensor(zeta, &nabla_right(gamma_t, rho)?, g);
    Ok(&(&dg - &left) - &right)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatReport<F> {
    /// `P^{ij}` on the basis pair `(theta^i, theta^j)`.
    pub residuals: [[OneForm<F>; 2]; 2],
    pub satisfied: bool,
    pub mode: &'static str,
}

#[derive(Serialize)]
struct ReportJson {
    mode: &'static str,
    satisfied: bool,
    residuals: Vec<(String, String)>,
}

impl<F: QField> CompatReport<F> {
    pub fn labeled(&self) -> Vec<(String, String)> {
        let mut out = Vec::with_capacity(4);
        for i in 0..2 {
            for j in 0..2 {
                out.push((
                    format!("P{}{}", i + 1, j + 1),
                    self.residuals[i][j].to_string(),
                ));
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ReportJson {
            mode: self.mode,
            satisfied: self.satisfied,
            residuals: self.labeled(),
        })
        .expect("plain data")
    }
}

impl<F: QField> std::fmt::Display for CompatReport<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "mode = {}", self.mode)?;
        writeln!(f, "satisfied = {}", self.satisfied)?;
        for (k, v) in self.labeled() {
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}

pub fn metric_compat_residuals<F: QField>(
    gamma: &Christoffel<F>,
    gamma_t: &Christoffel<F>,
    g: &Metric<F>,
) -> Result<CompatReport<F>> {
    let mut residuals: [[OneForm<F>; 2]; 2] = Default::default();
    for (i, row) in residuals.iter_mut().enumerate() {
        for (j, r) in row.iter_mut().enumerate() {
            *r = compat_residual(gamma, gamma_t, g, &OneForm::basis(i), &OneForm::basis(j))?;
        }
    }
    let satisfied = residuals.iter().flatten().all(OneForm::is_zero);
    Ok(CompatReport {
        residuals,
        satisfied,
        mode: F::MODE.name(),
    })
}

/// A right connection with entries spanned by `monos` making `(gamma, gamma~)`
/// compatible with `g`, if one exists.
pub fn solve_compatible_right<F: QField>(
    gamma: &Christoffel<F>,
    g: &Metric<F>,
    monos: &[Exp],
) -> Result<Option<Christoffel<F>>> {
    let n = monos.len();
    let build = |coeff: &dyn Fn(usize) -> F| {
        let mut gt = Christoffel::zero(Side::Right);
        for (c, (i, j, k)) in index_triples().enumerate() {
            let v: Vec<F> = (0..n).map(|m| coeff(c * n + m)).collect();
            gt.gamma[i][j][k] = element_from(monos, &v, PowerMode::Polynomial);
        }
        gt
    };
    let failure = std::cell::RefCell::new(None);
    let system = ResidualSystem::assemble(8 * n, |u| {
        let gt = build(&|c| if Some(c) == u { F::one() } else { F::zero() });
        match metric_compat_residuals(gamma, &gt, g) {
            Ok(r) => r
                .residuals
                .into_iter()
                .flatten()
                .flat_map(|w| w.b)
                .collect(),
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                Vec::new()
            }
        }
    });
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(system.particular().map(|v| build(&|c| v[c].clone())))
}

/// The compatibility condition with both arguments central. At generic `q`
/// there are no nonzero central 1-forms and the condition is empty.
pub fn compat_over_center<F: QField>(
    gamma: &Christoffel<F>,
    gamma_t: &Christoffel<F>,
    g: &Metric<F>,
) -> Result<bool> {
    if F::ROOT_ORDER != Some(3) {
        return Ok(true);
    }
    let gens = central_generators::<F>();
    for zeta in &gens {
        for rho in &gens {
            if !compat_residual(gamma, gamma_t, g, zeta, rho)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `f_L(t) = (1 - t) nabla^L + t sigma nabla^R` and
/// `f_R(s) = s sigma^-1 nabla^L + (1 - s) nabla^R`.
pub struct InterpPair<F> {
    pub t: F,
    pub s: F,
    gamma: Christoffel<F>,
    gamma_t: Christoffel<F>,
    sigma: Braiding<F>,
    sigma_inv: Braiding<F>,
}

impl<F: QField> InterpPair<F> {
    pub fn left(&self, zeta: &OneForm<F>) -> Result<TensorOverA<F>> {
        let one = F::one();
        let a = nabla_left(&self.gamma, zeta)?.scale(&(one - self.t.clone()));
        let b = self
            .sigma
            .apply(&nabla_right(&self.gamma_t, zeta)?)
            .scale(&self.t);
        Ok(&a + &b)
    }

    pub fn right(&self, zeta: &OneForm<F>) -> Result<TensorOverA<F>> {
        let one = F::one();
        let a = self
            .sigma_inv
            .apply(&nabla_left(&self.gamma, zeta)?)
            .scale(&self.s);
        let b = nabla_right(&self.gamma_t, zeta)?.scale(&(one - self.s.clone()));
        Ok(&a + &b)
    }

    /// `dg(zeta, rho) - g-check(f_L(t) zeta, rho) - g-hat(zeta, f_R(s) rho)`.
    pub fn residual(
        &self,
        g: &Metric<F>,
        zeta: &OneForm<F>,
        rho: &OneForm<F>,
    ) -> Result<OneForm<F>> {
        let dg = differential(&g.pair(zeta, rho))?;
        let left = g_check_tensor(&self.left(zeta)?, rho, g);
        let right = g_hat_tensor(zeta, &self.right(rho)?, g);
        Ok(&(&dg - &left) - &right)
    }
}

pub fn interp_pair<F: QField>(
    t: F,
    s: F,
    gamma: &Christoffel<F>,
    gamma_t: &Christoffel<F>,
    sigma: &Braiding<F>,
) -> Result<InterpPair<F>> {
    Ok(InterpPair {
        t,
        s,
        gamma: gamma.clone(),
        gamma_t: gamma_t.clone(),
        sigma: sigma.clone(),
        sigma_inv: sigma.inverse()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::{solve_right_from_left, Side};
    use crate::scalar::{Field, RatFunc, Zeta3};

    use crate::qalgebra::AlgElem;

    type G = AlgElem<RatFunc>;
    type Z = AlgElem<Zeta3>;

    #[test]
    fn extensions() {
        let xi = OneForm::<RatFunc>::xi();
        assert_eq!(g_check(&xi, &xi, &xi, &Metric::identity()), xi);
        // (xi x) (x) xi against xi (x) (x xi)
        let mut g = Metric::<RatFunc>::zero();
        g.g[0][0] = G::y();
        let a = g_check(&xi.right_mul(&G::x()), &xi, &xi, &g);
        let b = g_check(&xi, &xi.left_mul(&G::x()), &xi, &g);
        assert_eq!(a, b);
        let mut g = Metric::<RatFunc>::zero();
        g.g[0][0] = G::x();
        let out = g_hat(&xi, &xi, &OneForm::eta(), &g);
        let q = RatFunc::q();
        let expect = OneForm::from_right(
            G::monomial(0, 1, q.clone() * q - RatFunc::one()),
            G::monomial(1, 0, RatFunc::q()),
        );
        assert_eq!(out, expect);
    }

    #[test]
    fn report_examples() {
        let g0 = Christoffel::<RatFunc>::zero(Side::Left);
        let gt0 = Christoffel::<RatFunc>::zero(Side::Right);
        let flat = metric_compat_residuals(&g0, &gt0, &Metric::identity()).unwrap();
        assert!(flat.satisfied);
        let mut g = Metric::zero();
        g.g[0][0] = G::x();
        let r = metric_compat_residuals(&g0, &gt0, &g).unwrap();
        assert!(!r.satisfied);
        assert_eq!(r.residuals[0][0], OneForm::xi());
        assert!(r.residuals[0][1].is_zero());
    }

    #[test]
    fn center_check() {
        let g0 = Christoffel::<Zeta3>::zero(Side::Left);
        let gt0 = Christoffel::<Zeta3>::zero(Side::Right);
        assert!(compat_over_center(&g0, &gt0, &Metric::identity()).unwrap());
        let mut g = Metric::zero();
        g.g[0][0] = Z::x();
        assert!(!compat_over_center(&g0, &gt0, &g).unwrap());
    }

    #[test]
    fn interpolation() {
        let g =
            Christoffel::<Zeta3>::zero(Side::Left).with(1, 2, 2, Z::monomial(2, 1, Zeta3::one()));
        let gt = solve_right_from_left(&g).unwrap();
        let sigma = Braiding::sigma();
        let half = Zeta3::one().checked_div(&Zeta3::from_int(2)).unwrap();
        let p0 = interp_pair(Zeta3::zero(), Zeta3::zero(), &g, &gt, &sigma).unwrap();
        let p1 = interp_pair(Zeta3::one(), Zeta3::one(), &g, &gt, &sigma).unwrap();
        let ph = interp_pair(half.clone(), half, &g, &gt, &sigma).unwrap();
        for z in central_generators::<Zeta3>() {
            let base = nabla_left(&g, &z).unwrap();
            assert_eq!(p0.left(&z).unwrap(), base);
            assert_eq!(p1.left(&z).unwrap(), base);
            assert_eq!(p1.right(&z).unwrap(), nabla_right(&gt, &z).unwrap());
        }
        let xi = OneForm::xi();
        assert_ne!(ph.left(&xi).unwrap(), nabla_left(&g, &xi).unwrap());
    }
}
