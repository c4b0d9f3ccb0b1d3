//! Bilinear metrics `g: E (x) E -> A` on the 1-forms of the quantum plane.

use crate::error::{Error, Result};
use crate::oneforms::{tau, OneForm, TensorOverC};
use crate::qalgebra::{element_from, AlgElem, Window};
use crate::scalar::QField;
use crate::system::ResidualSystem;

/// `G[i][j] = g(theta^i (x) theta^j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Metric<F> {
    pub g: [[AlgElem<F>; 2]; 2],
}

/// Labels of the eight middle-linearity residuals, in order.
pub const RESIDUAL_LABELS: [&str; 8] = [
    "x,11", "y,11", "x,12", "y,12", "x,21", "y,21", "x,22", "y,22",
];

impl<F: QField> Metric<F> {
    pub fn new(g11: AlgElem<F>, g12: AlgElem<F>, g21: AlgElem<F>, g22: AlgElem<F>) -> Self {
        Metric {
            g: [[g11, g12], [g21, g22]],
        }
    }

    pub fn zero() -> Self {
        Self::new(
            AlgElem::zero(),
            AlgElem::zero(),
            AlgElem::zero(),
            AlgElem::zero(),
        )
    }

    pub fn identity() -> Self {
        Self::new(
            AlgElem::one(),
            AlgElem::zero(),
            AlgElem::zero(),
            AlgElem::one(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.g.iter().flatten().all(AlgElem::is_zero)
    }

    /// `g(T) = sum a G_ij b` over the slots of `T`.
    pub fn eval(&self, t: &TensorOverC<F>) -> AlgElem<F> {
        let mut out = AlgElem::zero();
        for (i, j, l, r, c) in t.entries() {
            let term = self.g[i][j]
                .left_monomial(l, c)
                .right_monomial(r, &F::one());
            out = &out + &term;
        }
        out
    }

    /// `g(zeta, rho)`.
    pub fn pair(&self, zeta: &OneForm<F>, rho: &OneForm<F>) -> AlgElem<F> {
        self.eval(&TensorOverC::from_forms(zeta, rho))
    }

    /// `g(tau(theta^i (x) theta^j)) - G_ij` for the four basis tensors.
    pub fn tau_residuals(&self) -> Vec<AlgElem<F>> {
        let mut out = Vec::with_capacity(4);
        for i in 0..2 {
            for j in 0..2 {
                let t = TensorOverC::basis(i, j);
                out.push(&self.eval(&tau(&t)) - &self.eval(&t));
            }
        }
        out
    }

    pub fn is_tau_symmetric(&self) -> bool {
        self.tau_residuals().iter().all(AlgElem::is_zero)
    }

    /// `g(a theta^i (x) theta^j) - g(theta^k (x) m_k theta^j)` where
    /// `a theta^i = theta^k m_k`, for `a` in `{x, y}`; ordered as
    /// [`RESIDUAL_LABELS`].
    pub fn middle_linearity_residuals(&self) -> Vec<AlgElem<F>> {
        let mut out = Vec::with_capacity(8);
        for i in 0..2 {
            for j in 0..2 {
                for a in [AlgElem::x(), AlgElem::y()] {
                    let moved = OneForm::basis(i).left_mul(&a);
                    let mut rhs = AlgElem::zero();
                    for (k, mk) in moved.b.iter().enumerate() {
                        if mk.is_zero() {
                            continue;
                        }
                        let rho = OneForm::basis(j).left_mul(mk);
                        rhs = &rhs + &self.pair(&OneForm::basis(k), &rho);
                    }
                    out.push(&(&a * &self.g[i][j]) - &rhs);
                }
            }
        }
        out
    }

    pub fn is_middle_linear(&self) -> bool {
        self.middle_linearity_residuals()
            .iter()
            .all(AlgElem::is_zero)
    }
}

/// Basis of the metrics with entries supported in `window` satisfying all
/// middle-linearity equations (and `g o tau = g` when requested).
pub fn solve_middle_linear<F: QField>(
    window: &Window,
    tau_symmetric: bool,
) -> Result<Vec<Metric<F>>> {
    if window.is_empty() {
        return Err(Error::WindowEmpty);
    }
    let monos = window.monomials();
    let n = monos.len();
    let metric_at = |u: Option<usize>| {
        let mut m = Metric::zero();
        if let Some(i) = u {
            let (p, r) = monos[i % n];
            m.g[(i / n) / 2][(i / n) % 2] = AlgElem::monomial(p, r, F::one());
        }
        m
    };
    let system = ResidualSystem::assemble(4 * n, |u| {
        let m = metric_at(u);
        let mut res = m.middle_linearity_residuals();
        if tau_symmetric {
            res.extend(m.tau_residuals());
        }
        res
    });
    let powers = window.powers();
    Ok(system
        .nullspace()
        .iter()
        .map(|v| {
            let e = |k: usize| element_from(&monos, &v[k * n..(k + 1) * n], powers);
            Metric::new(e(0), e(1), e(2), e(3))
        })
        .collect())
}

fn require_central<F: QField>(name: &str, a: &AlgElem<F>) -> Result<()> {
    if a.is_central() {
        Ok(())
    } else {
        Err(Error::NotCentral(format!("{name} = {a}")))
    }
}

/// The middle-linear metrics at `q^3 = 1` parametrized by central `Z, Y, W, U`.
pub fn ml_family_zeta3<F: QField>(
    z: &AlgElem<F>,
    y_par: &AlgElem<F>,
    w: &AlgElem<F>,
    u: &AlgElem<F>,
) -> Result<Metric<F>> {
    for (name, a) in [("Z", z), ("Y", y_par), ("W", w), ("U", u)] {
        require_central(name, a)?;
    }
    let mono = |p, r| AlgElem::monomial(p, r, F::one());
    let x3 = mono(3, 0);
    let q = F::q();
    let g11 = &(&x3 * z) * &mono(1, 1);
    let x3zy2 = &(&x3 * z) * &mono(0, 2);
    let g12 = &x3zy2.scale(&q) + &(&x3 * y_par);
    let g21 = &x3zy2 + &(&x3 * w);
    let g22 = &(&(u * &mono(2, 2)) + &(&(&y_par.scale(&q) + w) * &mono(2, 1)))
        + &(z * &mono(2, 3)).scale(&F::q_power(2));
    Ok(Metric::new(g11, g12, g21, g22))
}

/// The three-parameter Laurent family of middle-linear metrics at generic `q`.
pub fn ml_family_laurent<F: QField>(a: &F, b: &F, c: &F) -> Metric<F> {
    let m = |p, r, k: F| AlgElem::monomial(p, r, k);
    let qp = F::q_power;
    let g11 = m(-2, 4, a.clone());
    let g12 = &m(-3, 3, qp(1) * b.clone()) + &m(-3, 5, qp(4) * a.clone());
    let g21 = &m(-3, 3, b.clone()) + &m(-3, 5, qp(3) * a.clone());
    let g22 = &(&m(-4, 2, c.clone()) + &m(-4, 4, qp(3) * (qp(2) + F::one()) * b.clone()))
        + &m(-4, 6, qp(8) * a.clone());
    let mut out = Metric::new(g11, g12, g21, g22);
    for row in out.g.iter_mut() {
        for e in row.iter_mut() {
            *e = e.to_laurent();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Field, RatFunc, Zeta3};

    type G = AlgElem<RatFunc>;
    type Z = AlgElem<Zeta3>;

    fn q(n: i64) -> RatFunc {
        RatFunc::q_power(n)
    }

    #[test]
    fn evaluation() {
        let xi = OneForm::<RatFunc>::xi();
        assert_eq!(Metric::identity().pair(&xi, &xi), G::one());
        let mut g = Metric::zero();
        g.g[0][0] = G::one();
        let t = TensorOverC::term(&G::x(), 0, 0, &G::y());
        assert_eq!(g.eval(&t), G::monomial(1, 1, RatFunc::one()));
        let mut g = Metric::zero();
        g.g[0][1] = G::constant(q(1));
        g.g[1][0] = G::one();
        let t = TensorOverC::basis(0, 1);
        assert_eq!(g.eval(&t), g.eval(&tau(&t)));
    }

    #[test]
    fn tau_symmetry() {
        let mut g = Metric::<RatFunc>::zero();
        g.g[0][1] = G::constant(q(1));
        g.g[1][0] = G::one();
        g.g[0][0] = G::x();
        g.g[1][1] = G::monomial(3, 1, q(2));
        assert!(g.is_tau_symmetric());
        assert!(Metric::<RatFunc>::identity().is_tau_symmetric());
        let mut g = Metric::<RatFunc>::zero();
        g.g[0][1] = G::one();
        g.g[1][0] = G::one();
        assert!(!g.is_tau_symmetric());
    }

    #[test]
    fn residual_examples() {
        assert!(Metric::<RatFunc>::zero().is_middle_linear());
        let mut g = Metric::<RatFunc>::zero();
        g.g[0][0] = G::one();
        let res = g.middle_linearity_residuals();
        assert_eq!(res[0], G::monomial(1, 0, RatFunc::one() - q(4)));
        let one = Zeta3::one();
        let fam = ml_family_zeta3(&Z::one(), &Z::zero(), &Z::zero(), &Z::zero()).unwrap();
        assert!(fam.is_middle_linear());
        assert_eq!(fam.g[0][0], Z::monomial(4, 1, one.clone()));
        assert_eq!(fam.g[0][1], Z::monomial(3, 2, Zeta3::q()));
        assert_eq!(fam.g[1][0], Z::monomial(3, 2, one.clone()));
        assert_eq!(fam.g[1][1], Z::monomial(2, 3, Zeta3::q_power(2)));
    }

    #[test]
    fn family_symmetry_clause() {
        let qz = Z::constant(Zeta3::q());
        let sym = ml_family_zeta3(&Z::zero(), &qz, &Z::one(), &Z::zero()).unwrap();
        assert!(sym.is_tau_symmetric() && sym.is_middle_linear());
        let asym = ml_family_zeta3(&Z::zero(), &Z::one(), &Z::one(), &Z::zero()).unwrap();
        assert!(!asym.is_tau_symmetric());
        assert!(matches!(
            ml_family_zeta3(&Z::x(), &Z::zero(), &Z::zero(), &Z::zero()),
            Err(Error::NotCentral(_))
        ));
        assert!(
            ml_family_zeta3(&Z::zero(), &Z::zero(), &Z::zero(), &Z::zero())
                .unwrap()
                .is_zero()
        );
    }

    #[test]
    fn laurent_family() {
        let (one, zero) = (RatFunc::one(), RatFunc::zero());
        let a = ml_family_laurent(&one, &zero, &zero);
        assert!(a.is_middle_linear());
        assert_eq!(a.g[0][1], G::monomial(-3, 5, q(4)));
        let b = ml_family_laurent(&zero, &one, &zero);
        assert!(b.is_middle_linear());
        assert_eq!(b.g[1][1], G::monomial(-4, 4, q(3) * (q(2) + one.clone())));
        assert!(ml_family_laurent(&zero, &zero, &one).is_middle_linear());
    }

    #[test]
    fn small_solves() {
        assert!(solve_middle_linear::<RatFunc>(&Window::square(3), false)
            .unwrap()
            .is_empty());
        assert_eq!(
            solve_middle_linear::<RatFunc>(&Window::new(1, 0, 0, 0), false),
            Err(Error::WindowEmpty)
        );
    }
}
