//! Polynomial matrix-valued functions `Poly(t_1..t_m) (x) M_2` with the
//! derivation calculus.
//!
//! The 1-form basis `theta^i` is dual to the derivations `d/dt_mu` followed by
//! `ad(lambda_a)`, `lambda_a = (i/2) sigma_a`. Basis forms are central, so a
//! 1-form is just its list of coefficients.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{Field, Gaussian};

/// Size of the matrix factor.
pub const N: usize = 2;
/// Number of inner directions, `N^2 - 1`.
pub const INNER: usize = N * N - 1;

pub type Mat = [[Gaussian; N]; N];

fn mat_zero() -> Mat {
    std::array::from_fn(|_| std::array::from_fn(|_| Gaussian::zero()))
}

fn mat_identity() -> Mat {
    let mut m = mat_zero();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Gaussian::one();
    }
    m
}

fn mat_is_zero(m: &Mat) -> bool {
    m.iter().flatten().all(Field::is_zero)
}

fn mat_add(a: &Mat, b: &Mat) -> Mat {
    let mut out = a.clone();
    for i in 0..N {
        for j in 0..N {
            out[i][j] = a[i][j].clone() + b[i][j].clone();
        }
    }
    out
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut out = mat_zero();
    for i in 0..N {
        for j in 0..N {
            let mut acc = Gaussian::zero();
            for k in 0..N {
                acc = acc + a[i][k].clone() * b[k][j].clone();
            }
            out[i][j] = acc;
        }
    }
    out
}

fn mat_scale(a: &Mat, c: &Gaussian) -> Mat {
    let mut out = a.clone();
    for e in out.iter_mut().flatten() {
        *e = e.clone() * c.clone();
    }
    out
}

/// `lambda_a = (i/2) sigma_a` for the Pauli matrices.
pub fn lambda(a: usize) -> Mat {
    let half = |re: i64, im: i64| {
        Gaussian::from_ints(re, im)
            .checked_div(&Gaussian::from_ints(2, 0))
            .expect("2 is invertible")
    };
    let z = Gaussian::zero;
    match a {
        0 => [[z(), half(0, 1)], [half(0, 1), z()]],
        1 => [[z(), half(1, 0)], [half(-1, 0), z()]],
        2 => [[half(0, 1), z()], [z(), half(0, -1)]],
        _ => panic!("lambda index {a} out of range"),
    }
}

/// `sum_alpha t^alpha M_alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatFunc {
    m: usize,
    terms: BTreeMap<Vec<u32>, Mat>,
}

impl MatFunc {
    pub fn zero(m: usize) -> Self {
        MatFunc {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(m: usize, mat: Mat) -> Self {
        let mut out = Self::zero(m);
        out.add_term(vec![0; m], mat);
        out
    }

    pub fn one(m: usize) -> Self {
        Self::constant(m, mat_identity())
    }

    pub fn scalar(m: usize, c: Gaussian) -> Self {
        Self::constant(m, mat_scale(&mat_identity(), &c))
    }

    /// `t_mu` times the identity.
    pub fn coordinate(m: usize, mu: usize) -> Self {
        let mut e = vec![0; m];
        e[mu] = 1;
        let mut out = Self::zero(m);
        out.add_term(e, mat_identity());
        out
    }

    pub fn lambda(m: usize, a: usize) -> Self {
        Self::constant(m, lambda(a))
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Mat)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: Vec<u32>, mat: Mat) {
        let merged = match self.terms.remove(&e) {
            Some(old) => mat_add(&old, &mat),
            None => mat,
        };
        if !mat_is_zero(&merged) {
            self.terms.insert(e, merged);
        }
    }

    pub fn scale(&self, c: &Gaussian) -> Self {
        let mut out = Self::zero(self.m);
        for (e, mat) in &self.terms {
            out.add_term(e.clone(), mat_scale(mat, c));
        }
        out
    }

    pub fn partial(&self, mu: usize) -> Self {
        let mut out = Self::zero(self.m);
        for (e, mat) in &self.terms {
            if e[mu] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[mu] -= 1;
            out.add_term(f, mat_scale(mat, &Gaussian::from_ints(e[mu] as i64, 0)));
        }
        out
    }

    pub fn commutator(&self, o: &MatFunc) -> MatFunc {
        &(self * o) - &(o * self)
    }

    /// Central elements are the scalar polynomials times the identity.
    pub fn is_central(&self) -> bool {
        (0..INNER).all(|a| self.commutator(&MatFunc::lambda(self.m, a)).is_zero())
    }
}

impl std::ops::Add for &MatFunc {
    type Output = MatFunc;
    fn add(self, o: &MatFunc) -> MatFunc {
        let mut out = self.clone();
        for (e, mat) in &o.terms {
            out.add_term(e.clone(), mat.clone());
        }
        out
    }
}

impl std::ops::Sub for &MatFunc {
    type Output = MatFunc;
    fn sub(self, o: &MatFunc) -> MatFunc {
        self + &o.scale(&-Gaussian::one())
    }
}

impl std::ops::Mul for &MatFunc {
    type Output = MatFunc;
    fn mul(self, o: &MatFunc) -> MatFunc {
        let mut out = MatFunc::zero(self.m);
        for (e, a) in &self.terms {
            for (f, b) in &o.terms {
                let sum: Vec<u32> = e.iter().zip(f).map(|(u, v)| u + v).collect();
                out.add_term(sum, mat_mul(a, b));
            }
        }
        out
    }
}

impl fmt::Display for MatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, mat)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(mu, &k)| {
                        if k == 1 {
                            format!("t{}", mu + 1)
                        } else {
                            format!("t{}^{k}", mu + 1)
                        }
                    })
                    .collect();
                let rows: Vec<String> = mat
                    .iter()
                    .map(|r| {
                        format!(
                            "[{}]",
                            r.iter()
                                .map(|c| c.to_string())
                                .collect::<Vec<_>>()
                                .join(", ")
                        )
                    })
                    .collect();
                let m = format!("[{}]", rows.join(", "));
                if mono.is_empty() {
                    m
                } else {
                    format!("{}*{m}", mono.join("*"))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `sum_i theta^i c[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MGOneForm {
    pub c: Vec<MatFunc>,
}

/// Number of basis 1-forms for `m` coordinates.
pub fn basis_size(m: usize) -> usize {
    m + INNER
}

impl MGOneForm {
    pub fn zero(m: usize) -> Self {
        MGOneForm {
            c: vec![MatFunc::zero(m); basis_size(m)],
        }
    }

    pub fn basis(m: usize, i: usize) -> Self {
        let mut out = Self::zero(m);
        out.c[i] = MatFunc::one(m);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(MatFunc::is_zero)
    }

    pub fn left_mul(&self, a: &MatFunc) -> Self {
        MGOneForm {
            c: self.c.iter().map(|c| a * c).collect(),
        }
    }

    pub fn right_mul(&self, a: &MatFunc) -> Self {
        MGOneForm {
            c: self.c.iter().map(|c| c * a).collect(),
        }
    }
}

impl std::ops::Add for &MGOneForm {
    type Output = MGOneForm;
    fn add(self, o: &MGOneForm) -> MGOneForm {
        MGOneForm {
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        }
    }
}

impl std::ops::Sub for &MGOneForm {
    type Output = MGOneForm;
    fn sub(self, o: &MGOneForm) -> MGOneForm {
        MGOneForm {
            c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for MGOneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("theta{}*({c})", i + 1))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `da = sum_mu d_mu(a) theta^mu + sum_b [lambda_b, a] theta^(m+b)`.
pub fn differential_mg(a: &MatFunc) -> MGOneForm {
    let m = a.dim();
    let mut out = MGOneForm::zero(m);
    for mu in 0..m {
        out.c[mu] = a.partial(mu);
    }
    for b in 0..INNER {
        out.c[m + b] = MatFunc::lambda(m, b).commutator(a);
    }
    out
}

/// `sum_{jk} theta^j (x)_A theta^k c[j][k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MGTensor {
    pub c: Vec<Vec<MatFunc>>,
}

impl MGTensor {
    pub fn zero(m: usize) -> Self {
        let n = basis_size(m);
        MGTensor {
            c: vec![vec![MatFunc::zero(m); n]; n],
        }
    }

    /// `omega1 (x)_A omega2`; central basis forms let every coefficient move right.
    pub fn from_forms(w1: &MGOneForm, w2: &MGOneForm) -> Self {
        let n = w1.c.len();
        MGTensor {
            c: (0..n)
                .map(|j| (0..n).map(|k| &w1.c[j] * &w2.c[k]).collect())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().flatten().all(MatFunc::is_zero)
    }

    pub fn left_mul(&self, a: &MatFunc) -> Self {
        MGTensor {
            c: self
                .c
                .iter()
                .map(|r| r.iter().map(|e| a * e).collect())
                .collect(),
        }
    }

    pub fn right_mul(&self, a: &MatFunc) -> Self {
        MGTensor {
            c: self
                .c
                .iter()
                .map(|r| r.iter().map(|e| e * a).collect())
                .collect(),
        }
    }

    /// The flip `theta^j (x) theta^k -> theta^k (x) theta^j`.
    pub fn flip(&self) -> Self {
        let n = self.c.len();
        MGTensor {
            c: (0..n)
                .map(|j| (0..n).map(|k| self.c[k][j].clone()).collect())
                .collect(),
        }
    }

    /// `alpha_j = theta^k c[j][k]`, so that `T = sum_j theta^j (x) alpha_j`.
    pub fn right_legs(&self) -> Vec<MGOneForm> {
        self.c.iter().map(|r| MGOneForm { c: r.clone() }).collect()
    }
}

impl std::ops::Add for &MGTensor {
    type Output = MGTensor;
    fn add(self, o: &MGTensor) -> MGTensor {
        MGTensor {
            c: self
                .c
                .iter()
                .zip(&o.c)
                .map(|(a, b)| a.iter().zip(b).map(|(u, v)| u + v).collect())
                .collect(),
        }
    }
}

impl std::ops::Sub for &MGTensor {
    type Output = MGTensor;
    fn sub(self, o: &MGTensor) -> MGTensor {
        MGTensor {
            c: self
                .c
                .iter()
                .zip(&o.c)
                .map(|(a, b)| a.iter().zip(b).map(|(u, v)| u - v).collect())
                .collect(),
        }
    }
}

/// A metric given by its values `G^{ij} = g(theta^i (x) theta^j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MGMetric {
    pub g: Vec<Vec<MatFunc>>,
}

impl MGMetric {
    /// Builds the metric of a symmetric grid.
    pub fn new(g: Vec<Vec<MatFunc>>) -> Result<Self> {
        let n = g.len();
        for i in 0..n {
            if g[i].len() != n {
                return Err(Error::NotSymmetric("grid is not square".into()));
            }
            for j in 0..i {
                if g[i][j] != g[j][i] {
                    return Err(Error::NotSymmetric(format!(
                        "G^{}{} != G^{}{}",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(MGMetric { g })
    }

    /// `g(zeta (x) rho) = sum zeta_i G^{ij} rho_j`.
    pub fn pair(&self, zeta: &MGOneForm, rho: &MGOneForm) -> MatFunc {
        let m = self.g[0][0].dim();
        let mut out = MatFunc::zero(m);
        for (i, zi) in zeta.c.iter().enumerate() {
            if zi.is_zero() {
                continue;
            }
            for (j, rj) in rho.c.iter().enumerate() {
                if !rj.is_zero() {
                    out = &out + &(&(zi * &self.g[i][j]) * rj);
                }
            }
        }
        out
    }

    /// The grid recovered by evaluating on basis pairs.
    pub fn extract(&self) -> Vec<Vec<MatFunc>> {
        let n = self.g.len();
        let m = self.g[0][0].dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.pair(&MGOneForm::basis(m, i), &MGOneForm::basis(m, j)))
                    .collect()
            })
            .collect()
    }

    /// `g(theta^i a (x) theta^j) - g(theta^i (x) a theta^j)` for the matrix generators `a`.
    pub fn middle_linearity_residuals(&self) -> Vec<MatFunc> {
        let n = self.g.len();
        let m = self.g[0][0].dim();
        let mut out = Vec::new();
        for a in 0..INNER {
            let l = MatFunc::lambda(m, a);
            for i in 0..n {
                for j in 0..n {
                    let bi = MGOneForm::basis(m, i);
                    let bj = MGOneForm::basis(m, j);
                    out.push(
                        &self.pair(&bi.right_mul(&l), &bj) - &self.pair(&bi, &bj.left_mul(&l)),
                    );
                }
            }
        }
        out
    }

    pub fn is_middle_linear(&self) -> bool {
        self.middle_linearity_residuals()
            .iter()
            .all(MatFunc::is_zero)
    }

    /// `g(tau(theta^i (x) theta^j)) = g(theta^i (x) theta^j)` on basis pairs.
    pub fn is_tau_symmetric(&self) -> bool {
        let n = self.g.len();
        (0..n).all(|i| (0..n).all(|j| self.g[i][j] == self.g[j][i]))
    }
}

/// `nabla theta^i = theta^j (x) theta^k gamma[i][j][k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MGChristoffel {
    pub gamma: Vec<Vec<Vec<MatFunc>>>,
}

impl MGChristoffel {
    pub fn zero(m: usize) -> Self {
        let n = basis_size(m);
        MGChristoffel {
            gamma: vec![vec![vec![MatFunc::zero(m); n]; n]; n],
        }
    }

    /// Lower indices swapped: `out^i_kj = self^i_jk`.
    pub fn swapped(&self) -> Self {
        let n = self.gamma.len();
        MGChristoffel {
            gamma: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|k| (0..n).map(|j| self.gamma[i][j][k].clone()).collect())
                        .collect()
                })
                .collect(),
        }
    }

    fn on_basis(&self, i: usize) -> MGTensor {
        MGTensor {
            c: self.gamma[i].clone(),
        }
    }

    /// `nabla^L zeta` for `zeta = sum a_i theta^i`.
    pub fn nabla_left(&self, zeta: &MGOneForm) -> MGTensor {
        let m = zeta.c[0].dim();
        let mut out = MGTensor::zero(m);
        for (i, a) in zeta.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            out = &out + &MGTensor::from_forms(&differential_mg(a), &MGOneForm::basis(m, i));
            out = &out + &self.on_basis(i).left_mul(a);
        }
        out
    }

    /// `nabla^R zeta` for `zeta = sum theta^i b_i`.
    pub fn nabla_right(&self, zeta: &MGOneForm) -> MGTensor {
        let m = zeta.c[0].dim();
        let mut out = MGTensor::zero(m);
        for (i, b) in zeta.c.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            out = &out + &self.on_basis(i).right_mul(b);
            out = &out + &MGTensor::from_forms(&MGOneForm::basis(m, i), &differential_mg(b));
        }
        out
    }
}

/// Index-swap criterion for sigma-compatibility over the central forms.
pub fn sigma_compat_mg(gamma: &MGChristoffel, gamma_t: &MGChristoffel) -> bool {
    gamma_t.swapped() == *gamma
}

/// Swap criterion plus commutativity of every symbol.
pub fn whole_bimodule_mg(gamma: &MGChristoffel, gamma_t: &MGChristoffel) -> bool {
    sigma_compat_mg(gamma, gamma_t)
        && gamma
            .gamma
            .iter()
            .flatten()
            .flatten()
            .all(MatFunc::is_central)
}

/// `nabla^L zeta - flip(nabla^R zeta)` evaluated through the Leibniz rules.
pub fn sigma_compat_residual_mg(
    gamma: &MGChristoffel,
    gamma_t: &MGChristoffel,
    zeta: &MGOneForm,
) -> MGTensor {
    &gamma.nabla_left(zeta) - &gamma_t.nabla_right(zeta).flip()
}

/// `nabla^L(zeta a) - (nabla^L zeta) a - flip(zeta (x) da)`.
pub fn alt_leibniz_residual_mg(gamma: &MGChristoffel, zeta: &MGOneForm, a: &MatFunc) -> MGTensor {
    let lhs = gamma.nabla_left(&zeta.right_mul(a));
    let flip = MGTensor::from_forms(zeta, &differential_mg(a)).flip();
    &(&lhs - &gamma.nabla_left(zeta).right_mul(a)) - &flip
}

/// `dg^{ij} - (Gamma^i_kl g^lj + g^il Gamma~^j_lk) theta^k`.
pub fn metric_compat_mg(
    gamma: &MGChristoffel,
    gamma_t: &MGChristoffel,
    g: &MGMetric,
) -> Vec<Vec<MGOneForm>> {
    let n = g.g.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut out = differential_mg(&g.g[i][j]);
                    for k in 0..n {
                        let mut c = out.c[k].clone();
                        for l in 0..n {
                            c = &c - &(&gamma.gamma[i][k][l] * &g.g[l][j]);
                            c = &c - &(&g.g[i][l] * &gamma_t.gamma[j][l][k]);
                        }
                        out.c[k] = c;
                    }
                    out
                })
                .collect()
        })
        .collect()
}

/// `dg(zeta, rho) - g-check(nabla^L zeta, rho) - g-hat(zeta, nabla^R rho)`.
pub fn compat_residual_mg(
    gamma: &MGChristoffel,
    gamma_t: &MGChristoffel,
    g: &MGMetric,
    zeta: &MGOneForm,
    rho: &MGOneForm,
) -> MGOneForm {
    let m = zeta.c[0].dim();
    let mut out = differential_mg(&g.pair(zeta, rho));
    for (k, alpha) in gamma.nabla_left(zeta).right_legs().iter().enumerate() {
        out = &out - &MGOneForm::basis(m, k).right_mul(&g.pair(alpha, rho));
    }
    for (k, alpha) in gamma_t.nabla_right(rho).right_legs().iter().enumerate() {
        out = &out - &alpha.left_mul(&g.pair(zeta, &MGOneForm::basis(m, k)));
    }
    out
}

/// Random matrix function with coordinate degree at most `degree`.
pub fn random_matfunc<R: Rng>(rng: &mut R, m: usize, degree: u32, terms: usize) -> MatFunc {
    let mut out = MatFunc::zero(m);
    for _ in 0..terms {
        let e: Vec<u32> = (0..m).map(|_| rng.gen_range(0..=degree)).collect();
        let mut mat = mat_zero();
        for c in mat.iter_mut().flatten() {
            *c = Gaussian::from_ints(rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        }
        out.add_term(e, mat);
    }
    out
}

/// Random central element.
pub fn random_central<R: Rng>(rng: &mut R, m: usize, degree: u32) -> MatFunc {
    let mut out = MatFunc::zero(m);
    for _ in 0..2 {
        let e: Vec<u32> = (0..m).map(|_| rng.gen_range(0..=degree)).collect();
        let c = Gaussian::from_ints(rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        out.add_term(e, mat_scale(&mat_identity(), &c));
    }
    out
}

pub fn random_symmetric_grid<R: Rng>(rng: &mut R, m: usize) -> Vec<Vec<MatFunc>> {
    let n = basis_size(m);
    let mut g = vec![vec![MatFunc::zero(m); n]; n];
    for i in 0..n {
        for j in i..n {
            let e = random_matfunc(rng, m, 1, 1);
            g[i][j] = e.clone();
            g[j][i] = e;
        }
    }
    g
}

pub fn random_christoffel<R: Rng>(rng: &mut R, m: usize, central: bool) -> MGChristoffel {
    let mut out = MGChristoffel::zero(m);
    for e in out.gamma.iter_mut().flatten().flatten() {
        if rng.gen_bool(0.3) {
            *e = if central {
                random_central(rng, m, 1)
            } else {
                random_matfunc(rng, m, 1, 1)
            };
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const M: usize = 2;

    #[test]
    fn differential_examples() {
        let t1 = MatFunc::coordinate(M, 0);
        assert_eq!(differential_mg(&t1), MGOneForm::basis(M, 0));
        // [lambda_b, lambda_0] = -eps_{b0c} lambda_c
        let d = differential_mg(&MatFunc::lambda(M, 0));
        assert!(d.c[0].is_zero() && d.c[1].is_zero() && d.c[M].is_zero());
        assert_eq!(d.c[M + 1], MatFunc::lambda(M, 2));
        assert_eq!(d.c[M + 2], MatFunc::lambda(M, 1).scale(&-Gaussian::one()));
        let c = &t1 * &t1;
        let dc = differential_mg(&c);
        assert!(dc.c[M..].iter().all(MatFunc::is_zero));
    }

    #[test]
    fn leibniz() {
        let mut rng = crate::random::rng(3);
        for _ in 0..10 {
            let a = random_matfunc(&mut rng, M, 2, 3);
            let b = random_matfunc(&mut rng, M, 2, 3);
            let lhs = differential_mg(&(&a * &b));
            let rhs = &differential_mg(&a).right_mul(&b) + &differential_mg(&b).left_mul(&a);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn metrics() {
        let n = basis_size(M);
        let id: Vec<Vec<MatFunc>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            MatFunc::one(M)
                        } else {
                            MatFunc::zero(M)
                        }
                    })
                    .collect()
            })
            .collect();
        let g = MGMetric::new(id.clone()).unwrap();
        assert!(g.is_middle_linear() && g.is_tau_symmetric());
        assert_eq!(g.extract(), id);
        let mut nc = id.clone();
        nc[0][0] = MatFunc::lambda(M, 0);
        assert!(!MGMetric::new(nc).unwrap().is_middle_linear());
        let mut asym = id;
        asym[0][1] = MatFunc::one(M);
        assert!(matches!(MGMetric::new(asym), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn swap_predicates() {
        let z = MGChristoffel::zero(M);
        assert!(sigma_compat_mg(&z, &z) && whole_bimodule_mg(&z, &z));
        let mut g = MGChristoffel::zero(M);
        g.gamma[0][1][2] = &MatFunc::lambda(M, 0) * &MatFunc::coordinate(M, 0);
        let gt = g.swapped();
        assert!(sigma_compat_mg(&g, &gt));
        assert!(!whole_bimodule_mg(&g, &gt));
    }

    #[test]
    fn compat_examples() {
        let n = basis_size(M);
        let mut grid: Vec<Vec<MatFunc>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            MatFunc::one(M)
                        } else {
                            MatFunc::zero(M)
                        }
                    })
                    .collect()
            })
            .collect();
        let z = MGChristoffel::zero(M);
        let g = MGMetric::new(grid.clone()).unwrap();
        assert!(metric_compat_mg(&z, &z, &g)
            .iter()
            .flatten()
            .all(MGOneForm::is_zero));
        grid[0][0] = MatFunc::coordinate(M, 0);
        let g = MGMetric::new(grid).unwrap();
        let res = metric_compat_mg(&z, &z, &g);
        assert_eq!(res[0][0], MGOneForm::basis(M, 0));
    }
}
