//! The quantum plane `A = <x, y | xy = q yx>` in normal-ordered form.
//!
//! Every element is stored as `sum c_{pr} x^p y^r` with `x` to the left of
//! `y`. Products use `(x^p y^r)(x^s y^t) = q^{-rs} x^{p+s} y^{r+t}`.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::scalar::{Field, QField};
use crate::system::ResidualSystem;

/// Exponent pair `(p, r)` of the monomial `x^p y^r`.
pub type Exp = (i64, i64);

/// Whether negative exponents (formal inverses of `x`, `y`) are admitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PowerMode {
    Polynomial,
    Laurent,
}

impl PowerMode {
    fn join(self, other: PowerMode) -> PowerMode {
        if self == PowerMode::Laurent || other == PowerMode::Laurent {
            PowerMode::Laurent
        } else {
            PowerMode::Polynomial
        }
    }
}

/// Normal-ordered element of the quantum plane.
///
/// Equality compares values: a polynomial and its Laurent copy are equal.
#[derive(Clone, Debug)]
pub struct AlgElem<F> {
    terms: BTreeMap<Exp, F>,
    powers: PowerMode,
}

impl<F: PartialEq> PartialEq for AlgElem<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<F: Eq> Eq for AlgElem<F> {}

impl<F: Hash> Hash for AlgElem<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl<F: QField> Default for AlgElem<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: QField> AlgElem<F> {
    pub fn zero() -> Self {
        AlgElem {
            terms: BTreeMap::new(),
            powers: PowerMode::Polynomial,
        }
    }

    pub fn zero_in(powers: PowerMode) -> Self {
        AlgElem {
            terms: BTreeMap::new(),
            powers,
        }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, F::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, F::one())
    }

    /// `c x^p y^r`; negative exponents put the element in Laurent mode.
    pub fn monomial(p: i64, r: i64, c: F) -> Self {
        let powers = if p < 0 || r < 0 {
            PowerMode::Laurent
        } else {
            PowerMode::Polynomial
        };
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((p, r), c);
        }
        AlgElem { terms, powers }
    }

    /// Builds an element in the requested mode, summing repeated keys.
    pub fn from_terms(
        powers: PowerMode,
        terms: impl IntoIterator<Item = (Exp, F)>,
    ) -> Result<Self> {
        let mut out = Self::zero_in(powers);
        for ((p, r), c) in terms {
            if powers == PowerMode::Polynomial && (p < 0 || r < 0) {
                return Err(Error::NegativeExponent(format!("x^{p} y^{r}")));
            }
            out.add_term((p, r), c);
        }
        Ok(out)
    }

    pub fn powers(&self) -> PowerMode {
        self.powers
    }

    pub fn is_laurent(&self) -> bool {
        self.powers == PowerMode::Laurent
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Exp) -> F {
        self.terms.get(&e).cloned().unwrap_or_else(F::zero)
    }

    /// The scalar this element equals, if it is constant.
    pub fn as_constant(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn to_laurent(&self) -> Self {
        AlgElem {
            terms: self.terms.clone(),
            powers: PowerMode::Laurent,
        }
    }

    /// Back to polynomial mode; fails if a negative exponent survives.
    pub fn to_polynomial(&self) -> Result<Self> {
        if let Some((p, r)) = self.terms.keys().find(|(p, r)| *p < 0 || *r < 0) {
            return Err(Error::NegativeExponent(format!(
                "term x^{p} y^{r} in {self}"
            )));
        }
        Ok(AlgElem {
            terms: self.terms.clone(),
            powers: PowerMode::Polynomial,
        })
    }

    pub(crate) fn add_term(&mut self, e: Exp, c: F) {
        if c.is_zero() {
            return;
        }
        if e.0 < 0 || e.1 < 0 {
            self.powers = PowerMode::Laurent;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero_in(self.powers);
        }
        AlgElem {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (*e, v.clone() * c.clone()))
                .collect(),
            powers: self.powers,
        }
    }

    /// `c x^p y^r * self`.
    pub fn left_monomial(&self, (p, r): Exp, c: &F) -> Self {
        let mut out = Self::zero_in(self.powers);
        for (&(s, t), v) in &self.terms {
            out.add_term((p + s, r + t), F::q_power(-r * s) * c.clone() * v.clone());
        }
        out
    }

    /// `self * c x^s y^t`.
    pub fn right_monomial(&self, (s, t): Exp, c: &F) -> Self {
        let mut out = Self::zero_in(self.powers);
        for (&(p, r), v) in &self.terms {
            out.add_term((p + s, r + t), F::q_power(-r * s) * v.clone() * c.clone());
        }
        out
    }

    /// Strict product: both factors must share a power mode.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.powers != other.powers {
            return Err(Error::ModeMismatch(format!(
                "{:?} times {:?}",
                self.powers, other.powers
            )));
        }
        Ok(self * other)
    }

    /// Nonnegative powers of any element; negative powers of monomials.
    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            let (&(p, r), c) = match self.terms.len() {
                1 => self.terms.iter().next().unwrap(),
                _ => {
                    return Err(Error::LaurentUnsupported(format!(
                        "inverse of non-monomial {self}"
                    )))
                }
            };
            let c_inv = c.inv().ok_or(Error::DivisionByZero)?;
            // (c x^p y^r)^{-1} = c^{-1} y^{-r} x^{-p}
            let inv = Self::monomial(0, -r, c_inv).right_monomial((-p, 0), &F::one());
            return inv.pow(-n);
        }
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        Ok(out)
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// True iff `self` commutes with both generators.
    pub fn is_central(&self) -> bool {
        self.commutator(&Self::x()).is_zero() && self.commutator(&Self::y()).is_zero()
    }

    /// Membership in `x^power A`: every monomial has `x`-exponent at least `power`.
    pub fn in_left_ideal_x(&self, power: i64) -> bool {
        self.terms.keys().all(|(p, _)| *p >= power)
    }

    /// `(min p, max p, min r, max r)` over the support.
    pub fn exponent_bounds(&self) -> Option<(i64, i64, i64, i64)> {
        let mut it = self.terms.keys();
        let &(p0, r0) = it.next()?;
        Some(it.fold((p0, p0, r0, r0), |(a, b, c, d), &(p, r)| {
            (a.min(p), b.max(p), c.min(r), d.max(r))
        }))
    }

    pub fn fits(&self, window: &Window) -> bool {
        self.terms.keys().all(|e| window.contains(*e))
    }
}

impl<F: QField> Add for &AlgElem<F> {
    type Output = AlgElem<F>;
    fn add(self, o: &AlgElem<F>) -> AlgElem<F> {
        let mut out = self.clone();
        out.powers = self.powers.join(o.powers);
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<F: QField> Sub for &AlgElem<F> {
    type Output = AlgElem<F>;
    fn sub(self, o: &AlgElem<F>) -> AlgElem<F> {
        let mut out = self.clone();
        out.powers = self.powers.join(o.powers);
        for (e, c) in &o.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<F: QField> Neg for &AlgElem<F> {
    type Output = AlgElem<F>;
    fn neg(self) -> AlgElem<F> {
        self.scale(&(-F::one()))
    }
}

/// Product; a Laurent factor makes the product Laurent.
impl<F: QField> Mul for &AlgElem<F> {
    type Output = AlgElem<F>;
    fn mul(self, o: &AlgElem<F>) -> AlgElem<F> {
        let mut out = AlgElem::zero_in(self.powers.join(o.powers));
        for (&(p, r), a) in &self.terms {
            for (&(s, t), b) in &o.terms {
                out.add_term((p + s, r + t), F::q_power(-r * s) * a.clone() * b.clone());
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: QField> $tr for AlgElem<F> {
            type Output = AlgElem<F>;
            fn $m(self, o: AlgElem<F>) -> AlgElem<F> {
                (&self).$m(&o)
            }
        }
        impl<F: QField> $tr<&AlgElem<F>> for AlgElem<F> {
            type Output = AlgElem<F>;
            fn $m(self, o: &AlgElem<F>) -> AlgElem<F> {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: QField> Neg for AlgElem<F> {
    type Output = AlgElem<F>;
    fn neg(self) -> AlgElem<F> {
        -&self
    }
}

fn monomial_atom(p: i64, r: i64) -> String {
    let pow = |v: &str, n: i64| match n {
        0 => String::new(),
        1 => v.to_string(),
        n if n < 0 => format!("{v}^({n})"),
        n => format!("{v}^{n}"),
    };
    let parts: Vec<String> = [pow("x", p), pow("y", r)]
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    parts.join("*")
}

/// Formats `sum c * atom` with parenthesized compound coefficients.
pub(crate) fn format_sum<F: Field>(terms: impl Iterator<Item = (String, F)>) -> String {
    let mut out = String::new();
    for (atom, c) in terms {
        let text = c.to_string();
        let simple = c.as_rational();
        let (negative, body) = match &simple {
            Some(r) => {
                let neg = r < &num_rational::BigRational::from_integer(0.into());
                let mag = if neg {
                    (-c.clone()).to_string()
                } else {
                    text.clone()
                };
                (neg, mag)
            }
            None => (false, format!("({text})")),
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        match (atom.is_empty(), body == "1") {
            (true, _) => out.push_str(&body),
            (false, true) => out.push_str(&atom),
            (false, false) => {
                out.push_str(&body);
                out.push('*');
                out.push_str(&atom);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<F: QField> fmt::Display for AlgElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_sum(
            self.terms
                .iter()
                .map(|(&(p, r), c)| (monomial_atom(p, r), c.clone())),
        ))
    }
}

/// Per-variable exponent window `[p_min, p_max] x [r_min, r_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub p_min: i64,
    pub p_max: i64,
    pub r_min: i64,
    pub r_max: i64,
}

impl Window {
    pub fn new(p_min: i64, p_max: i64, r_min: i64, r_max: i64) -> Self {
        Window {
            p_min,
            p_max,
            r_min,
            r_max,
        }
    }

    /// `[0, n] x [0, n]`.
    pub fn square(n: i64) -> Self {
        Window::new(0, n, 0, n)
    }

    pub fn is_empty(&self) -> bool {
        self.p_min > self.p_max || self.r_min > self.r_max
    }

    pub fn powers(&self) -> PowerMode {
        if self.p_min < 0 || self.r_min < 0 {
            PowerMode::Laurent
        } else {
            PowerMode::Polynomial
        }
    }

    pub fn contains(&self, (p, r): Exp) -> bool {
        (self.p_min..=self.p_max).contains(&p) && (self.r_min..=self.r_max).contains(&r)
    }

    /// Monomials in lexicographic `(p, r)` order.
    pub fn monomials(&self) -> Vec<Exp> {
        (self.p_min..=self.p_max)
            .flat_map(|p| (self.r_min..=self.r_max).map(move |r| (p, r)))
            .collect()
    }
}

/// Assembles unknown coefficient vectors back into an element.
pub(crate) fn element_from<F: QField>(
    monos: &[Exp],
    coeffs: &[F],
    powers: PowerMode,
) -> AlgElem<F> {
    let mut out = AlgElem::zero_in(powers);
    for (e, c) in monos.iter().zip(coeffs) {
        out.add_term(*e, c.clone());
    }
    out
}

/// Linear basis of the centre of `A` among elements supported in `[0, bound]^2`.
pub fn center_basis<F: QField>(degree_bound: i64) -> Vec<AlgElem<F>> {
    let monos = Window::square(degree_bound).monomials();
    let system = ResidualSystem::assemble(monos.len(), |u| match u {
        None => vec![AlgElem::zero(), AlgElem::zero()],
        Some(i) => {
            let a = AlgElem::monomial(monos[i].0, monos[i].1, F::one());
            vec![a.commutator(&AlgElem::x()), a.commutator(&AlgElem::y())]
        }
    });
    let ech: Echelon<F> = system.echelon();
    ech.nullspace()
        .iter()
        .map(|v| element_from(&monos, v, PowerMode::Polynomial))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{RatFunc, Zeta3};

    type G = AlgElem<RatFunc>;
    type Z = AlgElem<Zeta3>;

    /// Rewrites a word in x and y into normal order by repeatedly applying
    /// `yx -> q^{-1} xy` to the leftmost inversion.
    fn rewrite_word<F: QField>(word: &[char]) -> AlgElem<F> {
        let mut w: Vec<char> = word.to_vec();
        let mut coeff = F::one();
        while let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] == 'y' && w[i + 1] == 'x')
        {
            w.swap(i, i + 1);
            coeff = coeff * F::q_power(-1);
        }
        let p = w.iter().filter(|&&c| c == 'x').count() as i64;
        let r = w.len() as i64 - p;
        AlgElem::monomial(p, r, coeff)
    }

    #[test]
    fn generator_products() {
        assert_eq!(&G::y() * &G::x(), G::monomial(1, 1, RatFunc::q_power(-1)));
        assert_eq!(&G::x() * &G::y(), G::monomial(1, 1, RatFunc::one()));
        let lhs = &G::monomial(2, 1, RatFunc::one()) * &G::monomial(1, 1, RatFunc::one());
        assert_eq!(lhs, G::monomial(3, 2, RatFunc::q_power(-1)));
        assert_eq!(lhs, rewrite_word::<RatFunc>(&['x', 'x', 'y', 'x', 'y']));
    }

    #[test]
    fn rewriting_oracle_agrees_on_words() {
        let words = ["yxyx", "yyxx", "xyyxxy", "yyyxxx", "yxxyxy"];
        for w in words {
            let chars: Vec<char> = w.chars().collect();
            let by_product = chars.iter().fold(Z::one(), |acc, c| {
                acc * if *c == 'x' { Z::x() } else { Z::y() }
            });
            assert_eq!(by_product, rewrite_word::<Zeta3>(&chars), "{w}");
        }
    }

    #[test]
    fn center_examples() {
        assert_eq!(center_basis::<RatFunc>(6), vec![G::one()]);
        let z = center_basis::<Zeta3>(3);
        let expected: Vec<Z> = [(0, 0), (0, 3), (3, 0), (3, 3)]
            .into_iter()
            .map(|(p, r)| Z::monomial(p, r, Zeta3::one()))
            .collect();
        assert_eq!(z, expected);
        assert_eq!(center_basis::<Zeta3>(2), vec![Z::one()]);
    }

    #[test]
    fn centrality() {
        assert!(Z::monomial(3, 0, Zeta3::one()).is_central());
        assert!(G::one().is_central());
        assert!(!G::x().is_central());
    }

    #[test]
    fn left_ideal_membership() {
        assert!(G::monomial(2, 1, RatFunc::one()).in_left_ideal_x(1));
        assert!(!(&G::one() + &G::monomial(1, 1, RatFunc::one())).in_left_ideal_x(1));
        let e = &G::monomial(2, 1, RatFunc::one()) + &G::monomial(3, 0, RatFunc::one());
        assert!(e.in_left_ideal_x(2));
    }

    #[test]
    fn laurent_inverse() {
        let m = G::monomial(2, 3, RatFunc::from_int(5));
        let inv = m.pow(-1).unwrap();
        assert!(inv.is_laurent());
        assert_eq!(&m * &inv, G::one());
        assert_eq!(&inv * &m, G::one());
        assert!(matches!(G::x().try_mul(&inv), Err(Error::ModeMismatch(_))));
        assert!(G::from_terms(PowerMode::Polynomial, [((-1, 0), RatFunc::one())]).is_err());
    }

    #[test]
    fn display() {
        let e = &G::monomial(1, 1, RatFunc::q_power(2) - RatFunc::one())
            - &G::monomial(0, 2, RatFunc::one());
        assert_eq!(e.to_string(), "-y^2 + (q^2 - 1)*x*y");
        assert_eq!(G::monomial(-2, 4, RatFunc::one()).to_string(), "x^(-2)*y^4");
    }
}
