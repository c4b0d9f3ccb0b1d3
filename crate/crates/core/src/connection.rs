//! Left and right connections on the 1-forms of the quantum plane.
//!
//! Christoffel symbols follow `nabla theta^i = theta^j (x)_A theta^k Gamma^i_jk`,
//! indices stored zero-based as `gamma[i][j][k]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oneforms::{central_generators, differential, Braiding, OneForm, TensorOverA};
use crate::qalgebra::{element_from, AlgElem, Exp, PowerMode, Window};
use crate::scalar::QField;
use crate::system::ResidualSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Christoffel<F> {
    pub gamma: [[[AlgElem<F>; 2]; 2]; 2],
    pub side: Side,
}

/// All `(i, j, k)` in file order `111, 112, 121, 122, 211, ...`.
pub fn index_triples() -> impl Iterator<Item = (usize, usize, usize)> {
    (0..8).map(|n| (n >> 2, (n >> 1) & 1, n & 1))
}

/// `G^1_12` style label for zero-based indices.
pub fn label(i: usize, j: usize, k: usize) -> String {
    format!("G^{}_{}{}", i + 1, j + 1, k + 1)
}

impl<F: QField> Christoffel<F> {
    pub fn zero(side: Side) -> Self {
        Christoffel {
            gamma: Default::default(),
            side,
        }
    }

    /// One-based accessor matching the usual notation `Gamma^i_jk`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &AlgElem<F> {
        &self.gamma[i - 1][j - 1][k - 1]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: AlgElem<F>) {
        self.gamma[i - 1][j - 1][k - 1] = v;
    }

    pub fn with(mut self, i: usize, j: usize, k: usize, v: AlgElem<F>) -> Self {
        self.set(i, j, k, v);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.iter().flatten().flatten().all(AlgElem::is_zero)
    }

    /// `nabla theta^i` as an element of `E (x)_A E`.
    pub fn on_basis(&self, i: usize) -> TensorOverA<F> {
        TensorOverA {
            c: self.gamma[i].clone(),
        }
    }

    pub fn from_basis_images(side: Side, images: [TensorOverA<F>; 2]) -> Self {
        let [a, b] = images;
        Christoffel {
            gamma: [a.c, b.c],
            side,
        }
    }

    fn map(&self, f: impl Fn(&AlgElem<F>) -> Result<AlgElem<F>>) -> Result<Self> {
        let mut out = Self::zero(self.side);
        for (i, j, k) in index_triples() {
            out.gamma[i][j][k] = f(&self.gamma[i][j][k])?;
        }
        Ok(out)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize), &AlgElem<F>)> {
        index_triples().map(move |(i, j, k)| ((i, j, k), &self.gamma[i][j][k]))
    }
}

impl<F: QField> fmt::Display for Christoffel<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((i, j, k), e) in self.entries() {
            writeln!(f, "{} = {e}", label(i, j, k))?;
        }
        Ok(())
    }
}

fn require_side<F: QField>(g: &Christoffel<F>, side: Side) -> Result<()> {
    if g.side == side {
        Ok(())
    } else {
        Err(Error::ModeMismatch(format!(
            "expected a {side:?} connection"
        )))
    }
}

/// `nabla^L zeta = sum_i d(a_i) (x) theta^i + a_i nabla^L theta^i` with `zeta = a_i theta^i`.
pub fn nabla_left<F: QField>(gamma: &Christoffel<F>, zeta: &OneForm<F>) -> Result<TensorOverA<F>> {
    require_side(gamma, Side::Left)?;
    let (a1, a2) = zeta.to_left_form();
    let mut out = TensorOverA::zero();
    for (i, a) in [a1, a2].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let da = differential(a)?;
        out = &out + &TensorOverA::from_forms(&da, &OneForm::basis(i));
        out = &out + &gamma.on_basis(i).left_mul(a);
    }
    Ok(out)
}

/// `nabla^R zeta = sum_i (nabla^R theta^i) b_i + theta^i (x) d(b_i)` with `zeta = theta^i b_i`.
pub fn nabla_right<F: QField>(
    gamma_t: &Christoffel<F>,
    zeta: &OneForm<F>,
) -> Result<TensorOverA<F>> {
    require_side(gamma_t, Side::Right)?;
    let mut out = TensorOverA::zero();
    for (i, b) in zeta.b.iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        out = &out + &gamma_t.on_basis(i).right_mul(b);
        out = &out + &TensorOverA::from_forms(&OneForm::basis(i), &differential(b)?);
    }
    Ok(out)
}

/// `nabla^L zeta - sigma(nabla^R zeta)` on the two generators of the central
/// 1-forms. Empty at generic `q`, where no nonzero central 1-form exists.
pub fn sigma_compat_residuals_with<F: QField>(
    gamma: &Christoffel<F>,
    gamma_t: &Christoffel<F>,
    sigma: &Braiding<F>,
) -> Result<Vec<TensorOverA<F>>> {
    if F::ROOT_ORDER != Some(3) {
        return Ok(Vec::new());
    }
    central_generators::<F>()
        .iter()
        .map(|z| Ok(&nabla_left(gamma, z)? - &sigma.apply(&nabla_right(gamma_t, z)?)))
        .collect()
}

pub fn sigma_compat_residuals<F: QField>(
    gamma: &Christoffel<F>,
    gamma_t: &Christoffel<F>,
) -> Result<Vec<TensorOverA<F>>> {
    sigma_compat_residuals_with(gamma, gamma_t, &Braiding::sigma())
}

pub fn is_sigma_compatible<F: QField>(
    gamma: &Christoffel<F>,
    gamma_t: &Christoffel<F>,
) -> Result<bool> {
    Ok(sigma_compat_residuals(gamma, gamma_t)?
        .iter()
        .all(TensorOverA::is_zero))
}

/// Names of the divisibility clauses checked by [`admissibility_clauses`].
pub const CLAUSES: [&str; 5] = [
    "G^1_12 in xA",
    "G^1_21 in xA",
    "G^1_22 in x^2A",
    "G^2_22 in xA",
    "(q-1)G^2_12 + (1-q^2)G^2_21 + 3q^2 y x^-1 G^2_22 in xA",
];

fn combined_clause<F: QField>(gamma: &Christoffel<F>) -> AlgElem<F> {
    let q = F::q();
    let y_xinv = AlgElem::monomial(0, 1, F::one()) * AlgElem::monomial(-1, 0, F::one());
    let last = (&y_xinv * gamma.get(2, 2, 2)).scale(&(F::from_int(3) * F::q_power(2)));
    &(&gamma.get(2, 1, 2).scale(&(q - F::one()))
        + &gamma.get(2, 2, 1).scale(&(F::one() - F::q_power(2))))
        + &last
}

/// Truth value of each clause. The combined clause is reported false when the
/// clause on `G^2_22` fails, since its `x^-1` factor then leaves the algebra.
pub fn admissibility_clauses<F: QField>(gamma: &Christoffel<F>) -> [bool; 5] {
    let c4 = gamma.get(2, 2, 2).in_left_ideal_x(1);
    [
        gamma.get(1, 1, 2).in_left_ideal_x(1),
        gamma.get(1, 2, 1).in_left_ideal_x(1),
        gamma.get(1, 2, 2).in_left_ideal_x(2),
        c4,
        c4 && combined_clause(gamma).in_left_ideal_x(1),
    ]
}

pub fn is_admissible<F: QField>(gamma: &Christoffel<F>) -> bool {
    admissibility_clauses(gamma).iter().all(|&c| c)
}

/// Product of monomials, left to right.
fn word<F: QField>(ms: &[Exp]) -> AlgElem<F> {
    ms.iter().fold(AlgElem::one().to_laurent(), |acc, &(p, r)| {
        &acc * &AlgElem::monomial(p, r, F::one())
    })
}

/// The right Christoffel symbols determined by a left connection at `q^3 = 1`.
pub fn solve_right_from_left<F: QField>(gamma: &Christoffel<F>) -> Result<Christoffel<F>> {
    require_side(gamma, Side::Left)?;
    if F::ROOT_ORDER != Some(3) {
        return Err(Error::ModeMismatch(
            "the closed-form solver needs q^3 = 1".into(),
        ));
    }
    let clauses = admissibility_clauses(gamma);
    if let Some(n) = clauses.iter().position(|c| !c) {
        return Err(Error::NotAdmissible(format!("fails {}", CLAUSES[n])));
    }
    let g = |i, j, k| gamma.get(i, j, k).to_laurent();
    let q = |n: i64| F::q_power(n);
    let one = F::one();
    let three = F::from_int(3);
    let (x, y) = ((1, 0), (0, 1));
    let (xi, yi) = ((-1, 0), (0, -1));
    let (x2i, y2i) = ((-2, 0), (0, -2));
    let xy = [x, y];
    let x2y2 = [(2, 0), (0, 2)];
    let y2 = [(0, 2)];
    let yixi = [yi, xi];
    let y2ix2i = [y2i, x2i];
    let yx2i = [y, x2i];
    let x2iw = [x2i];
    // c * (left) * gamma * (right)
    let t = |c: F, left: &[Exp], e: &AlgElem<F>, right: &[Exp]| -> AlgElem<F> {
        (&(&word::<F>(left) * e) * &word::<F>(right)).scale(&c)
    };
    let sum = |terms: Vec<AlgElem<F>>| {
        terms
            .into_iter()
            .fold(AlgElem::zero_in(PowerMode::Laurent), |a, b| &a + &b)
    };

    let mut out = Christoffel::zero(Side::Right);
    out.set(
        1,
        1,
        1,
        sum(vec![
            t(q(2), &xy, &g(1, 1, 1), &yixi),
            t(one.clone() - q(1), &y2, &g(1, 1, 2), &yixi),
            t(q(2) - one.clone(), &y2, &g(1, 2, 1), &yixi),
        ]),
    );
    out.set(
        1,
        1,
        2,
        sum(vec![
            t(q(2) - one.clone(), &xy, &g(1, 1, 2), &yixi),
            t(q(1), &xy, &g(1, 2, 1), &yixi),
            t(q(1) - q(2), &y2, &g(1, 2, 2), &yixi),
        ]),
    );
    out.set(
        1,
        2,
        1,
        sum(vec![
            t(q(1), &xy, &g(1, 1, 2), &yixi),
            t(one.clone() - q(1), &y2, &g(1, 2, 2), &yixi),
        ]),
    );
    out.set(1, 2, 2, t(q(2), &xy, &g(1, 2, 2), &yixi));
    out.set(
        2,
        1,
        1,
        sum(vec![
            t(one.clone(), &xy, &g(1, 1, 1), &x2iw),
            t(-one.clone(), &[x], &g(1, 1, 1), &yx2i),
            t(q(1) - one.clone(), &[y], &g(1, 1, 2), &yx2i),
            t(q(1) - q(2), &y2, &g(1, 1, 2), &x2iw),
            t(one.clone() - q(2), &[y], &g(1, 2, 1), &yx2i),
            t(one.clone() - q(1), &y2, &g(1, 2, 1), &x2iw),
            t(q(2), &x2y2, &g(2, 1, 1), &y2ix2i),
            t(q(1) - one.clone(), &[x], &g(2, 1, 2), &yx2i),
            t(one.clone() - q(2), &[x], &g(2, 2, 1), &yx2i),
            t(three, &[y], &g(2, 2, 2), &yx2i),
        ]),
    );
    out.set(
        2,
        1,
        2,
        sum(vec![
            t(one.clone() - q(2), &[x], &g(1, 1, 2), &yx2i),
            t(q(2) - one.clone(), &y2, &g(1, 2, 2), &x2iw),
            t(one.clone() - q(1), &xy, &g(1, 1, 2), &x2iw),
            t(q(2), &xy, &g(1, 2, 1), &x2iw),
            t(-q(1), &[x], &g(1, 2, 1), &yx2i),
            t(q(1) - one.clone(), &[y], &g(1, 2, 2), &yx2i),
            t(q(2) - one.clone(), &x2y2, &g(2, 1, 2), &y2ix2i),
            t(q(1), &x2y2, &g(2, 2, 1), &y2ix2i),
            t(q(2) - q(1), &[x], &g(2, 2, 2), &yx2i),
        ]),
    );
    out.set(
        2,
        2,
        1,
        sum(vec![
            t(q(2), &xy, &g(1, 1, 2), &x2iw),
            t(-q(1), &[x], &g(1, 1, 2), &yx2i),
            t(one.clone() - q(2), &[y], &g(1, 2, 2), &yx2i),
            t(q(1) - q(2), &y2, &g(1, 2, 2), &x2iw),
            t(q(1), &x2y2, &g(2, 1, 2), &y2ix2i),
            t(q(1) - one.clone(), &[x], &g(2, 2, 2), &yx2i),
        ]),
    );
    out.set(
        2,
        2,
        2,
        sum(vec![
            t(one.clone(), &xy, &g(1, 2, 2), &x2iw),
            t(-q(1), &[x], &g(1, 2, 2), &yx2i),
            t(q(2), &x2y2, &g(2, 2, 2), &y2ix2i),
        ]),
    );
    out.map(|e| e.to_polynomial())
}

/// Residuals of `nabla^L(zeta a) = (nabla^L zeta) a + sigma(zeta (x) da)` for
/// `zeta` in `{xi, eta}` and `a` in `{x, y}`, ordered `(xi,x), (xi,y), (eta,x), (eta,y)`.
pub fn whole_bimodule_residuals<F: QField>(
    gamma: &Christoffel<F>,
    sigma: &Braiding<F>,
) -> Result<Vec<TensorOverA<F>>> {
    let mut out = Vec::with_capacity(4);
    for i in 0..2 {
        let zeta = OneForm::basis(i);
        let nz = nabla_left(gamma, &zeta)?;
        for a in [AlgElem::x(), AlgElem::y()] {
            let lhs = nabla_left(gamma, &zeta.right_mul(&a))?;
            let flip = sigma.apply(&TensorOverA::from_forms(&zeta, &differential(&a)?));
            out.push(&(&lhs - &nz.right_mul(&a)) - &flip);
        }
    }
    Ok(out)
}

/// The one-parameter family of left connections satisfying the alternate
/// Leibniz rule on all 1-forms at generic `q`.
pub fn whole_bimodule_family_generic<F: QField>(nu: &F) -> Christoffel<F> {
    let m = |p, r, e: i64, sign: i64| {
        AlgElem::monomial(p, r, F::from_int(sign) * F::q_power(e) * nu.clone())
    };
    Christoffel::zero(Side::Left)
        .with(1, 1, 1, m(1, 2, 1, 1))
        .with(1, 1, 2, m(2, 1, 3, -1))
        .with(1, 2, 1, m(2, 1, 2, -1))
        .with(1, 2, 2, m(3, 0, 5, 1))
        .with(2, 1, 1, m(0, 3, 3, 1))
        .with(2, 1, 2, m(1, 2, 4, -1))
        .with(2, 2, 1, m(1, 2, 3, -1))
        .with(2, 2, 2, m(2, 1, 5, 1))
}

/// Central parameters `f^i_jk` of the cube-root family, indexed like Christoffel symbols.
pub type CentralParams<F> = [[[AlgElem<F>; 2]; 2]; 2];

/// The family of left connections satisfying the alternate Leibniz rule on all
/// 1-forms at `q^3 = 1`.
pub fn whole_bimodule_family_zeta3<F: QField>(f: &CentralParams<F>) -> Result<Christoffel<F>> {
    for (i, j, k) in index_triples() {
        if !f[i][j][k].is_central() {
            return Err(Error::NotCentral(format!(
                "f^{}_{}{} = {}",
                i + 1,
                j + 1,
                k + 1,
                f[i][j][k]
            )));
        }
    }
    let p = |i: usize, j: usize, k: usize| &f[i - 1][j - 1][k - 1];
    let q = |n: i64| F::q_power(n);
    let one = F::one();
    let m = |a, b| AlgElem::<F>::monomial(a, b, F::one());
    // sum of c * y^r * f
    let ys = |terms: &[(F, i64, &AlgElem<F>)]| {
        terms.iter().fold(AlgElem::zero(), |acc, (c, r, e)| {
            &acc + &(&m(0, *r) * e).scale(c)
        })
    };

    let f111 = &m(1, 0)
        * &ys(&[
            (-q(1), 3, p(1, 1, 2)),
            (-one.clone(), 3, p(1, 2, 1)),
            (one.clone(), 1, p(1, 1, 1)),
            (-q(1), 2, p(1, 2, 2)),
        ]);
    let f112 = &m(2, 0) * &ys(&[(one.clone(), 1, p(1, 2, 2)), (one.clone(), 2, p(1, 1, 2))]);
    let f121 = &m(2, 0) * &ys(&[(q(2), 1, p(1, 2, 2)), (one.clone(), 2, p(1, 2, 1))]);
    let f122 = (&m(3, 0) * p(1, 2, 2)).scale(&(-q(2)));
    let f211 = &p(2, 1, 1).clone()
        + &ys(&[
            (q(1), 4, p(2, 2, 2)),
            (-q(1), 4, p(1, 1, 2)),
            (-one.clone(), 4, p(1, 2, 1)),
            (q(1), 2, p(1, 1, 1)),
            (-q(1), 2, p(2, 2, 1)),
            (-q(2), 2, p(2, 1, 2)),
        ]);
    let f212 = &m(1, 0)
        * &ys(&[
            (-q(2), 3, p(2, 2, 2)),
            (q(2), 3, p(1, 1, 2)),
            (one.clone(), 1, p(2, 1, 2)),
            (q(1), 2, p(1, 2, 2)),
        ]);
    let f221 = &m(1, 0)
        * &ys(&[
            (-q(1), 3, p(2, 2, 2)),
            (q(2), 3, p(1, 2, 1)),
            (one.clone(), 1, p(2, 2, 1)),
            (one.clone(), 2, p(1, 2, 2)),
        ]);
    let f222 = &m(2, 0) * &ys(&[(-q(2), 1, p(1, 2, 2)), (one, 2, p(2, 2, 2))]);
    Ok(Christoffel::zero(Side::Left)
        .with(1, 1, 1, f111)
        .with(1, 1, 2, f112)
        .with(1, 2, 1, f121)
        .with(1, 2, 2, f122)
        .with(2, 1, 1, f211)
        .with(2, 1, 2, f212)
        .with(2, 2, 1, f221)
        .with(2, 2, 2, f222))
}

/// Left connections with entries supported in `window` whose whole-bimodule
/// residuals vanish; the residuals are linear in the symbols.
pub fn solve_whole_bimodule<F: QField>(
    monos: &[Exp],
    sigma: &Braiding<F>,
) -> Result<Vec<Christoffel<F>>> {
    let n = monos.len();
    let at = |u: Option<usize>| {
        let mut g = Christoffel::zero(Side::Left);
        if let Some(c) = u {
            let (i, j, k) = index_triples().nth(c / n).expect("index");
            g.gamma[i][j][k] = AlgElem::monomial(monos[c % n].0, monos[c % n].1, F::one());
        }
        g
    };
    let failure = std::cell::RefCell::new(None);
    let system =
        ResidualSystem::assemble(8 * n, |u| match whole_bimodule_residuals(&at(u), sigma) {
            Ok(r) => r
                .into_iter()
                .flat_map(|t| t.c.into_iter().flatten())
                .collect(),
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                Vec::new()
            }
        });
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(system
        .nullspace()
        .iter()
        .map(|v| {
            let mut g = Christoffel::zero(Side::Left);
            for (c, (i, j, k)) in index_triples().enumerate() {
                g.gamma[i][j][k] =
                    element_from(monos, &v[c * n..(c + 1) * n], PowerMode::Polynomial);
            }
            g
        })
        .collect())
}

/// Monomials of total degree at most `d`.
pub fn total_degree_monomials(d: i64) -> Vec<Exp> {
    Window::square(d)
        .monomials()
        .into_iter()
        .filter(|(p, r)| p + r <= d)
        .collect()
}

/// Outcome of the affine solve for a pair `(Gamma, Gamma~)` with entries in a
/// window, compatible with a given braiding on the central 1-forms.
#[derive(Debug, Clone)]
pub struct PairSolve<F> {
    pub unknowns: usize,
    pub solution: Option<(Christoffel<F>, Christoffel<F>)>,
}

pub fn solve_compatible_pair<F: QField>(
    window: &Window,
    sigma: &Braiding<F>,
) -> Result<PairSolve<F>> {
    let monos = window.monomials();
    let n = monos.len();
    let build = |v: &dyn Fn(usize) -> F| {
        let mut g = Christoffel::zero(Side::Left);
        let mut gt = Christoffel::zero(Side::Right);
        for (c, (i, j, k)) in index_triples().enumerate() {
            let coeffs: Vec<F> = (0..n).map(|m| v(c * n + m)).collect();
            g.gamma[i][j][k] = element_from(&monos, &coeffs, PowerMode::Polynomial);
            let coeffs: Vec<F> = (0..n).map(|m| v((8 + c) * n + m)).collect();
            gt.gamma[i][j][k] = element_from(&monos, &coeffs, PowerMode::Polynomial);
        }
        (g, gt)
    };
    let failure = std::cell::RefCell::new(None);
    let system = ResidualSystem::assemble(16 * n, |u| {
        let (g, gt) = build(&|c| if Some(c) == u { F::one() } else { F::zero() });
        match sigma_compat_residuals_with(&g, &gt, sigma) {
            Ok(r) => r
                .into_iter()
                .flat_map(|t| t.c.into_iter().flatten())
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
    let solution = system.particular().map(|v| build(&|c| v[c].clone()));
    Ok(PairSolve {
        unknowns: 16 * n,
        solution,
    })
}

/// A change of frame `theta^i -> U^i_j theta^j` with its declared inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeMatrix<F> {
    pub u: [[AlgElem<F>; 2]; 2],
    pub u_inv: [[AlgElem<F>; 2]; 2],
}

type Mat<F> = [[AlgElem<F>; 2]; 2];

fn mat_mul<F: QField>(a: &Mat<F>, b: &Mat<F>) -> Mat<F> {
    let e = |i: usize, k: usize| &(&a[i][0] * &b[0][k]) + &(&a[i][1] * &b[1][k]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn is_identity<F: QField>(m: &Mat<F>) -> bool {
    m[0][0] == AlgElem::one() && m[1][1] == AlgElem::one() && m[0][1].is_zero() && m[1][0].is_zero()
}

/// Matrix of 1-forms `N^i_k` with `nabla^L theta^i = N^i_k (x)_A theta^k`.
pub type FormMatrix<F> = [[OneForm<F>; 2]; 2];

impl<F: QField> GaugeMatrix<F> {
    pub fn new(u: Mat<F>, u_inv: Mat<F>) -> Result<Self> {
        if !is_identity(&mat_mul(&u, &u_inv)) || !is_identity(&mat_mul(&u_inv, &u)) {
            return Err(Error::InverseInvalid(
                "U * U_inv is not the identity".into(),
            ));
        }
        Ok(GaugeMatrix { u, u_inv })
    }

    /// `U = (1 x; 0 1)`.
    pub fn unipotent_x() -> Self {
        let (o, z) = (AlgElem::one(), AlgElem::zero());
        GaugeMatrix::new(
            [[o.clone(), AlgElem::x()], [z.clone(), o.clone()]],
            [[o.clone(), -AlgElem::x()], [z, o]],
        )
        .expect("valid inverse")
    }

    pub fn inverse(&self) -> Self {
        GaugeMatrix {
            u: self.u_inv.clone(),
            u_inv: self.u.clone(),
        }
    }
}

/// `N^i_m = sum_j theta^j c_m` where `theta^k Gamma^i_jk = c_m theta^m`.
pub fn frame_from_christoffel<F: QField>(gamma: &Christoffel<F>) -> FormMatrix<F> {
    let mut n: FormMatrix<F> = Default::default();
    for i in 0..2 {
        for j in 0..2 {
            let omega =
                OneForm::from_right(gamma.gamma[i][j][0].clone(), gamma.gamma[i][j][1].clone());
            let (c0, c1) = omega.to_left_form();
            n[i][0].b[j] = c0;
            n[i][1].b[j] = c1;
        }
    }
    n
}

pub fn christoffel_from_frame<F: QField>(n: &FormMatrix<F>) -> Christoffel<F> {
    let mut g = Christoffel::zero(Side::Left);
    for i in 0..2 {
        for j in 0..2 {
            let omega = OneForm::from_left(&n[i][0].b[j], &n[i][1].b[j]);
            g.gamma[i][j] = omega.b;
        }
    }
    g
}

/// `N -> dU U^-1 + U N U^-1`.
pub fn gauge_transform_frame<F: QField>(
    u: &GaugeMatrix<F>,
    gamma: &Christoffel<F>,
) -> Result<Christoffel<F>> {
    require_side(gamma, Side::Left)?;
    GaugeMatrix::new(u.u.clone(), u.u_inv.clone())?;
    let n = frame_from_christoffel(gamma);
    let mut out: FormMatrix<F> = Default::default();
    for i in 0..2 {
        for k in 0..2 {
            let mut acc = OneForm::zero();
            for j in 0..2 {
                acc = &acc + &differential(&u.u[i][j])?.right_mul(&u.u_inv[j][k]);
                for l in 0..2 {
                    acc = &acc + &n[j][l].left_mul(&u.u[i][j]).right_mul(&u.u_inv[l][k]);
                }
            }
            out[i][k] = acc;
        }
    }
    Ok(christoffel_from_frame(&out))
}

/// A bimodule map of the 1-forms, `f(theta^i) = images[i]`, with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleMap<F> {
    pub images: [OneForm<F>; 2],
    pub inverse: [OneForm<F>; 2],
}

fn apply_images<F: QField>(images: &[OneForm<F>; 2], w: &OneForm<F>) -> OneForm<F> {
    &images[0].right_mul(&w.b[0]) + &images[1].right_mul(&w.b[1])
}

/// Whether the right-linear map with these basis images is also left linear.
pub fn is_bimodule_map<F: QField>(images: &[OneForm<F>; 2]) -> bool {
    bimodule_defects(images).iter().all(OneForm::is_zero)
}

/// `f(a theta^i) - a f(theta^i)` for `a` in `{x, y}`.
fn bimodule_defects<F: QField>(images: &[OneForm<F>; 2]) -> Vec<OneForm<F>> {
    let mut out = Vec::with_capacity(4);
    for i in 0..2 {
        for a in [AlgElem::x(), AlgElem::y()] {
            let moved = OneForm::basis(i).left_mul(&a);
            out.push(&apply_images(images, &moved) - &images[i].left_mul(&a));
        }
    }
    out
}

impl<F: QField> BimoduleMap<F> {
    pub fn new(images: [OneForm<F>; 2], inverse: [OneForm<F>; 2]) -> Result<Self> {
        if !is_bimodule_map(&images) || !is_bimodule_map(&inverse) {
            return Err(Error::NotBimoduleMap(
                "f(a theta) differs from a f(theta)".into(),
            ));
        }
        for i in 0..2 {
            let basis = OneForm::basis(i);
            if apply_images(&images, &inverse[i]) != basis
                || apply_images(&inverse, &images[i]) != basis
            {
                return Err(Error::InverseInvalid(
                    "f and its inverse do not compose to the identity".into(),
                ));
            }
        }
        Ok(BimoduleMap { images, inverse })
    }

    pub fn identity() -> Self {
        let id = [OneForm::xi(), OneForm::eta()];
        BimoduleMap {
            images: id.clone(),
            inverse: id,
        }
    }

    pub fn apply(&self, w: &OneForm<F>) -> OneForm<F> {
        apply_images(&self.images, w)
    }

    pub fn apply_inverse(&self, w: &OneForm<F>) -> OneForm<F> {
        apply_images(&self.inverse, w)
    }
}

/// `(Gamma, Gamma~, sigma)` transformed by a bimodule automorphism `f`:
/// `((id (x) f^-1) nabla^L f, (f^-1 (x) id) nabla^R f, (id (x) f^-1) sigma (f (x) id))`.
pub fn gauge_transform_bimodule<F: QField>(
    f: &BimoduleMap<F>,
    gamma: &Christoffel<F>,
    gamma_t: &Christoffel<F>,
    sigma: &Braiding<F>,
) -> Result<(Christoffel<F>, Christoffel<F>, Braiding<F>)> {
    let mut left = Vec::with_capacity(2);
    let mut right = Vec::with_capacity(2);
    for i in 0..2 {
        left.push(nabla_left(gamma, &f.images[i])?.map_right_leg(&f.inverse));
        right.push(nabla_right(gamma_t, &f.images[i])?.map_left_leg(&f.inverse));
    }
    let mut images: [[TensorOverA<F>; 2]; 2] = Default::default();
    for (j, row) in images.iter_mut().enumerate() {
        for (k, img) in row.iter_mut().enumerate() {
            let moved = TensorOverA::basis(j, k).map_left_leg(&f.images);
            *img = sigma.apply(&moved).map_right_leg(&f.inverse);
        }
    }
    let [l0, l1]: [TensorOverA<F>; 2] = left.try_into().expect("two images");
    let [r0, r1]: [TensorOverA<F>; 2] = right.try_into().expect("two images");
    Ok((
        Christoffel::from_basis_images(Side::Left, [l0, l1]),
        Christoffel::from_basis_images(Side::Right, [r0, r1]),
        Braiding { images },
    ))
}

/// Bimodule endomorphisms with matrix entries `f(theta^i) = theta^j m^i_j`
/// supported in `[0, bound]^2`.
pub fn bimodule_endomorphism_basis<F: QField>(degree_bound: i64) -> Vec<[OneForm<F>; 2]> {
    let monos = Window::square(degree_bound).monomials();
    let n = monos.len();
    let build = |coeff: &dyn Fn(usize) -> F| {
        let mut images: [OneForm<F>; 2] = Default::default();
        for (blk, (i, j)) in [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
            let c: Vec<F> = (0..n).map(|m| coeff(blk * n + m)).collect();
            images[i].b[j] = element_from(&monos, &c, PowerMode::Polynomial);
        }
        images
    };
    let system = ResidualSystem::assemble(4 * n, |u| {
        let images = build(&|c| if Some(c) == u { F::one() } else { F::zero() });
        bimodule_defects(&images)
            .into_iter()
            .flat_map(|w| w.b)
            .collect()
    });
    system
        .nullspace()
        .iter()
        .map(|v| build(&|c| v[c].clone()))
        .collect()
}

/// `id + c N` with `N(xi) = 0`, `N(eta) = xi x^2 y^2`; a bimodule automorphism
/// when `q^3 = 1`, with inverse `id - c N`.
pub fn nilpotent_automorphism<F: QField>(c: &F) -> Result<BimoduleMap<F>> {
    let n_eta = |k: F| OneForm::from_right(AlgElem::monomial(2, 2, k), AlgElem::one());
    BimoduleMap::new(
        [OneForm::xi(), n_eta(c.clone())],
        [OneForm::xi(), n_eta(-c.clone())],
    )
}

impl<F: QField> BimoduleMap<F> {
    /// `lambda * self`.
    pub fn scaled(&self, lambda: &F) -> Result<Self> {
        let inv = lambda.inv().ok_or(Error::DivisionByZero)?;
        Ok(BimoduleMap {
            images: [self.images[0].scale(lambda), self.images[1].scale(lambda)],
            inverse: [self.inverse[0].scale(&inv), self.inverse[1].scale(&inv)],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Field, RatFunc, Zeta3};

    type Z = AlgElem<Zeta3>;
    type G = AlgElem<RatFunc>;

    fn zm(p: i64, r: i64) -> Z {
        Z::monomial(p, r, Zeta3::one())
    }

    #[test]
    fn nabla_examples() {
        let g0 = Christoffel::<RatFunc>::zero(Side::Left);
        assert!(nabla_left(&g0, &OneForm::xi()).unwrap().is_zero());
        let xxi = OneForm::xi().left_mul(&G::x());
        assert_eq!(nabla_left(&g0, &xxi).unwrap(), TensorOverA::basis(0, 0));
        let gt0 = Christoffel::<RatFunc>::zero(Side::Right);
        assert!(nabla_right(&gt0, &OneForm::xi()).unwrap().is_zero());
        let xix = OneForm::xi().right_mul(&G::x());
        assert_eq!(nabla_right(&gt0, &xix).unwrap(), TensorOverA::basis(0, 0));
        assert!(nabla_right(&g0, &xix).is_err());
    }

    #[test]
    fn leibniz_on_central_form() {
        let g0 = Christoffel::<Zeta3>::zero(Side::Left);
        let [z1, _] = central_generators::<Zeta3>();
        let d = differential(&zm(1, 1)).unwrap();
        assert_eq!(
            nabla_left(&g0, &z1).unwrap(),
            TensorOverA::from_forms(&d, &OneForm::xi())
        );
    }

    #[test]
    fn pure_gauge_is_compatible() {
        let g = Christoffel::<Zeta3>::zero(Side::Left);
        let gt = Christoffel::<Zeta3>::zero(Side::Right);
        let res = sigma_compat_residuals(&g, &gt).unwrap();
        assert_eq!(res.len(), 2);
        assert!(res.iter().all(TensorOverA::is_zero));
        let gg = Christoffel::<RatFunc>::zero(Side::Left);
        let ggt = Christoffel::<RatFunc>::zero(Side::Right);
        assert!(sigma_compat_residuals(&gg, &ggt).unwrap().is_empty());
    }

    #[test]
    fn admissibility_examples() {
        let g0 = Christoffel::<Zeta3>::zero(Side::Left);
        assert!(is_admissible(&g0));
        assert!(!is_admissible(&g0.clone().with(1, 1, 2, Z::one())));
        assert!(is_admissible(&g0.clone().with(1, 2, 2, zm(2, 0))));
        assert!(!is_admissible(&g0.clone().with(2, 2, 2, zm(0, 1))));
        assert!(!is_admissible(&g0.with(2, 1, 2, zm(0, 1))));
    }

    #[test]
    fn solver_examples() {
        let g0 = Christoffel::<Zeta3>::zero(Side::Left);
        assert!(solve_right_from_left(&g0).unwrap().is_zero());
        let g = g0.clone().with(1, 2, 2, zm(2, 0));
        let gt = solve_right_from_left(&g).unwrap();
        assert_eq!(gt.get(1, 2, 2), &zm(2, 0));
        assert!(gt.get(2, 2, 2).is_zero());
        assert!(is_sigma_compatible(&g, &gt).unwrap());
        assert!(matches!(
            solve_right_from_left(&g0.with(1, 1, 2, Z::one())),
            Err(Error::NotAdmissible(_))
        ));
    }

    #[test]
    fn whole_bimodule_generic() {
        let sigma = Braiding::<RatFunc>::sigma();
        for nu in [RatFunc::zero(), RatFunc::one(), RatFunc::q()] {
            let g = whole_bimodule_family_generic(&nu);
            assert!(whole_bimodule_residuals(&g, &sigma)
                .unwrap()
                .iter()
                .all(TensorOverA::is_zero));
        }
        let g = whole_bimodule_family_generic(&RatFunc::one());
        assert_eq!(g.get(2, 2, 2), &G::monomial(2, 1, RatFunc::q_power(5)));
        let bad = Christoffel::zero(Side::Left).with(1, 1, 1, G::one());
        assert!(!whole_bimodule_residuals(&bad, &sigma)
            .unwrap()
            .iter()
            .all(TensorOverA::is_zero));
    }

    #[test]
    fn whole_bimodule_zeta3() {
        let sigma = Braiding::<Zeta3>::sigma();
        for (i, j, k) in index_triples() {
            let mut f: CentralParams<Zeta3> = Default::default();
            f[i][j][k] = Z::one();
            let g = whole_bimodule_family_zeta3(&f).unwrap();
            let res = whole_bimodule_residuals(&g, &sigma).unwrap();
            assert!(
                res.iter().all(TensorOverA::is_zero),
                "f^{}_{}{}",
                i + 1,
                j + 1,
                k + 1
            );
        }
        let mut f: CentralParams<Zeta3> = Default::default();
        f[0][0][0] = Z::one();
        let g = whole_bimodule_family_zeta3(&f).unwrap();
        assert_eq!(g.get(1, 1, 1), &zm(1, 1));
        assert_eq!(g.get(2, 1, 1), &Z::monomial(0, 2, Zeta3::q()));
        f[0][0][0] = Z::x();
        assert!(matches!(
            whole_bimodule_family_zeta3(&f),
            Err(Error::NotCentral(_))
        ));
    }

    #[test]
    fn frame_gauge() {
        let g0 = Christoffel::<Zeta3>::zero(Side::Left);
        let u = GaugeMatrix::unipotent_x();
        let g1 = gauge_transform_frame(&u, &g0).unwrap();
        assert_eq!(g1.get(1, 1, 2), &Z::one());
        assert!(!is_admissible(&g1));
        let back = gauge_transform_frame(&u.inverse(), &g1).unwrap();
        assert_eq!(back, g0);
        let bad = GaugeMatrix::new(u.u.clone(), u.u.clone());
        assert!(matches!(bad, Err(Error::InverseInvalid(_))));
    }

    #[test]
    fn bimodule_gauge() {
        let g = Christoffel::<Zeta3>::zero(Side::Left).with(1, 2, 2, zm(2, 1));
        let gt = solve_right_from_left(&g).unwrap();
        let sigma = Braiding::sigma();
        let id = BimoduleMap::identity();
        let (g1, gt1, s1) = gauge_transform_bimodule(&id, &g, &gt, &sigma).unwrap();
        assert_eq!((&g1, &gt1, &s1), (&g, &gt, &sigma));
        let f = nilpotent_automorphism(&Zeta3::from_int(2))
            .unwrap()
            .scaled(&Zeta3::q())
            .unwrap();
        let (g2, gt2, s2) = gauge_transform_bimodule(&f, &g, &gt, &sigma).unwrap();
        let res = sigma_compat_residuals_with(&g2, &gt2, &s2).unwrap();
        assert!(res.iter().all(TensorOverA::is_zero));
        assert!(nilpotent_automorphism(&RatFunc::one()).is_err());
    }

    #[test]
    fn endomorphisms_at_degree_zero() {
        let basis = bimodule_endomorphism_basis::<RatFunc>(0);
        assert_eq!(basis, vec![[OneForm::xi(), OneForm::eta()]]);
    }
}
