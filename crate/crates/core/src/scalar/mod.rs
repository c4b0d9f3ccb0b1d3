//! Exact ground fields.
//!
//! Every computation in the crate is generic over a [`Field`]. The quantum
//! plane needs a distinguished deformation parameter `q`, which is what
//! [`QField`] adds. Four fields are provided:
//!
//! - [`Rat`]: the rationals.
//! - [`RatFunc`]: rational functions in an indeterminate `q` (generic `q`).
//! - [`Zeta3`]: `Q(q)` with `q^2 + q + 1 = 0`, i.e. `q` a primitive cube root of unity.
//! - [`Gaussian`]: `Q(i)`, used by the matrix geometry model.
//!
//! [`Scalar`] wraps all four behind a runtime mode tag.

mod dynamic;
mod gaussian;
mod rat;
mod ratfunc;
mod zeta3;

pub use dynamic::Scalar;
pub use gaussian::Gaussian;
pub use rat::Rat;
pub use ratfunc::{Poly, RatFunc};
pub use zeta3::Zeta3;

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Runtime tag of a ground field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mode {
    Rational,
    GenericQ,
    Zeta3,
    Gaussian,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Rational => "rational",
            Mode::GenericQ => "generic",
            Mode::Zeta3 => "zeta3",
            Mode::Gaussian => "gaussian",
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// An exact field with canonical representatives.
///
/// Equality is structural: canonical forms are unique, so `==` is value equality.
pub trait Field:
    Clone
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const MODE: Mode;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: BigRational) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    fn checked_div(&self, other: &Self) -> Result<Self> {
        other
            .inv()
            .map(|inv| self.clone() * inv)
            .ok_or(Error::DivisionByZero)
    }

    /// The rational number this element equals, if it lies in the prime field.
    fn as_rational(&self) -> Option<BigRational>;
}

/// A field carrying the deformation parameter `q` of the quantum plane.
pub trait QField: Field {
    /// Order of `q` as a root of unity, `None` when `q` is generic.
    const ROOT_ORDER: Option<u32>;

    fn q() -> Self;

    /// `q^n` for any integer `n`.
    fn q_power(n: i64) -> Self {
        let q = Self::q();
        let base = if n < 0 {
            q.inv().expect("q is invertible")
        } else {
            q
        };
        pow(&base, n.unsigned_abs())
    }
}

/// Square-and-multiply power.
pub fn pow<F: Field>(base: &F, mut exp: u64) -> F {
    let mut result = F::one();
    let mut acc = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * acc.clone();
        }
        exp >>= 1;
        if exp > 0 {
            acc = acc.clone() * acc;
        }
    }
    result
}

/// `Q_n = sum_{k=1}^{n} q^{2(k-1)}` with `Q_{-1} = Q_0 = 0`.
pub fn qn_sum<F: QField>(n: i64) -> Result<F> {
    if n < -1 {
        return Err(Error::IndexOutOfRange(format!(
            "Q_n needs n >= -1, got {n}"
        )));
    }
    Ok((1..=n).fold(F::zero(), |acc, k| acc + F::q_power(2 * (k - 1))))
}

/// `(q^{2n} - 1) / (q^2 - 1)` for every integer `n`, written as a finite sum so
/// it stays valid when `q^2 = 1` is excluded but not inverted.
///
/// Agrees with [`qn_sum`] for `n >= 0`. Negative `n` only arise when moving
/// formal inverses of `x` past 1-forms.
pub fn q_geometric<F: QField>(n: i64) -> F {
    if n >= 0 {
        (0..n).fold(F::zero(), |acc, k| acc + F::q_power(2 * k))
    } else {
        (n..0).fold(F::zero(), |acc, k| acc - F::q_power(2 * k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qn_sum_base_cases() {
        assert_eq!(qn_sum::<RatFunc>(-1).unwrap(), RatFunc::zero());
        assert_eq!(qn_sum::<RatFunc>(0).unwrap(), RatFunc::zero());
        assert_eq!(
            qn_sum::<RatFunc>(2).unwrap(),
            RatFunc::one() + RatFunc::q_power(2)
        );
        assert!(matches!(
            qn_sum::<RatFunc>(-2),
            Err(Error::IndexOutOfRange(_))
        ));
    }

    #[test]
    fn qn_sum_vanishes_at_cube_root() {
        assert!(qn_sum::<Zeta3>(3).unwrap().is_zero());
        for n in 0..30 {
            let lhs = qn_sum::<Zeta3>(n + 1).unwrap();
            let rhs = qn_sum::<Zeta3>(n).unwrap() + Zeta3::q_power(2 * n);
            assert_eq!(lhs, rhs);
            if n % 3 == 0 {
                assert!(qn_sum::<Zeta3>(n).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn q_power_reduces() {
        assert_eq!(Zeta3::q_power(3), Zeta3::one());
        assert_eq!(Zeta3::q_power(-1), -Zeta3::one() - Zeta3::q());
        let inv_sq = RatFunc::one()
            .checked_div(&(RatFunc::q() * RatFunc::q()))
            .unwrap();
        assert_eq!(RatFunc::q_power(-2), inv_sq);
    }

    #[test]
    fn geometric_matches_closed_form() {
        let q2m1 = RatFunc::q_power(2) - RatFunc::one();
        for n in -5i64..8 {
            let lhs = q_geometric::<RatFunc>(n) * q2m1.clone();
            assert_eq!(lhs, RatFunc::q_power(2 * n) - RatFunc::one(), "n={n}");
            if n >= 0 {
                assert_eq!(q_geometric::<RatFunc>(n), qn_sum::<RatFunc>(n).unwrap());
            }
        }
    }
}
