use std::fmt;

use crate::error::{Error, Result};
use crate::parse::{eval_scalar, parse_expr};

use super::{qn_sum, Field, Gaussian, Mode, QField, Rat, RatFunc, Zeta3};

/// A ground-field element tagged with its mode at runtime.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(Rat),
    GenericQ(RatFunc),
    Zeta3(Zeta3),
    Gaussian(Gaussian),
}

macro_rules! each_mode {
    ($mode:expr, $f:ident => $body:expr) => {
        match $mode {
            Mode::Rational => {
                type $f = Rat;
                Scalar::Rational($body)
            }
            Mode::GenericQ => {
                type $f = RatFunc;
                Scalar::GenericQ($body)
            }
            Mode::Zeta3 => {
                type $f = Zeta3;
                Scalar::Zeta3($body)
            }
            Mode::Gaussian => {
                type $f = Gaussian;
                Scalar::Gaussian($body)
            }
        }
    };
}

macro_rules! binary {
    ($name:ident, $op:tt) => {
        pub fn $name(&self, other: &Scalar) -> Result<Scalar> {
            Ok(match (self, other) {
                (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a.clone() $op b.clone()),
                (Scalar::GenericQ(a), Scalar::GenericQ(b)) => Scalar::GenericQ(a.clone() $op b.clone()),
                (Scalar::Zeta3(a), Scalar::Zeta3(b)) => Scalar::Zeta3(a.clone() $op b.clone()),
                (Scalar::Gaussian(a), Scalar::Gaussian(b)) => Scalar::Gaussian(a.clone() $op b.clone()),
                _ => return Err(self.mismatch(other)),
            })
        }
    };
}

impl Scalar {
    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Rational(_) => Mode::Rational,
            Scalar::GenericQ(_) => Mode::GenericQ,
            Scalar::Zeta3(_) => Mode::Zeta3,
            Scalar::Gaussian(_) => Mode::Gaussian,
        }
    }

    pub fn zero(mode: Mode) -> Scalar {
        each_mode!(mode, F => F::zero())
    }

    pub fn one(mode: Mode) -> Scalar {
        each_mode!(mode, F => F::one())
    }

    pub fn from_int(mode: Mode, n: i64) -> Scalar {
        each_mode!(mode, F => F::from_int(n))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(a) => a.is_zero(),
            Scalar::GenericQ(a) => a.is_zero(),
            Scalar::Zeta3(a) => a.is_zero(),
            Scalar::Gaussian(a) => a.is_zero(),
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::ModeMismatch(format!("{} vs {}", self.mode(), other.mode()))
    }

    binary!(add, +);
    binary!(sub, -);
    binary!(mul, *);

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a.clone()),
            Scalar::GenericQ(a) => Scalar::GenericQ(-a.clone()),
            Scalar::Zeta3(a) => Scalar::Zeta3(-a.clone()),
            Scalar::Gaussian(a) => Scalar::Gaussian(-a.clone()),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a.checked_div(b)?),
            (Scalar::GenericQ(a), Scalar::GenericQ(b)) => Scalar::GenericQ(a.checked_div(b)?),
            (Scalar::Zeta3(a), Scalar::Zeta3(b)) => Scalar::Zeta3(a.checked_div(b)?),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => Scalar::Gaussian(a.checked_div(b)?),
            _ => return Err(self.mismatch(other)),
        })
    }

    /// `q^n`; only the two quantum-plane modes carry `q`.
    pub fn q_power(mode: Mode, n: i64) -> Result<Scalar> {
        match mode {
            Mode::GenericQ => Ok(Scalar::GenericQ(RatFunc::q_power(n))),
            Mode::Zeta3 => Ok(Scalar::Zeta3(Zeta3::q_power(n))),
            other => Err(Error::ModeMismatch(format!("{other} mode has no q"))),
        }
    }

    pub fn qn_sum(mode: Mode, n: i64) -> Result<Scalar> {
        match mode {
            Mode::GenericQ => Ok(Scalar::GenericQ(qn_sum(n)?)),
            Mode::Zeta3 => Ok(Scalar::Zeta3(qn_sum(n)?)),
            other => Err(Error::ModeMismatch(format!("{other} mode has no q"))),
        }
    }

    /// Parses the textual syntax of `mode` (`p/r`, polynomials in `q`,
    /// `a + b*q`, `a + b*i`).
    pub fn parse(mode: Mode, text: &str) -> Result<Scalar> {
        let e = parse_expr(text)?;
        Ok(match mode {
            Mode::Rational => Scalar::Rational(eval_scalar(&e, &|_| None)?),
            Mode::GenericQ => Scalar::GenericQ(eval_scalar(&e, &|n| (n == "q").then(RatFunc::q))?),
            Mode::Zeta3 => Scalar::Zeta3(eval_scalar(&e, &|n| (n == "q").then(Zeta3::q))?),
            Mode::Gaussian => Scalar::Gaussian(eval_scalar(&e, &|n| (n == "i").then(Gaussian::i))?),
        })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(a) => a.fmt(f),
            Scalar::GenericQ(a) => a.fmt(f),
            Scalar::Zeta3(a) => a.fmt(f),
            Scalar::Gaussian(a) => a.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let q = Scalar::q_power(Mode::Zeta3, 1).unwrap();
        assert_eq!(
            q.mul(&q).unwrap(),
            Scalar::parse(Mode::Zeta3, "-1 - q").unwrap()
        );

        let num = Scalar::parse(Mode::GenericQ, "q^2 - 1").unwrap();
        let den = Scalar::parse(Mode::GenericQ, "q - 1").unwrap();
        assert_eq!(num.div(&den).unwrap().to_string(), "q + 1");

        let a = Scalar::parse(Mode::Rational, "2/3").unwrap();
        let b = Scalar::parse(Mode::Rational, "1/6").unwrap();
        assert_eq!(a.add(&b).unwrap().to_string(), "5/6");
    }

    #[test]
    fn errors() {
        let a = Scalar::one(Mode::Rational);
        let b = Scalar::one(Mode::Zeta3);
        assert!(matches!(a.add(&b), Err(Error::ModeMismatch(_))));
        assert_eq!(
            a.div(&Scalar::zero(Mode::Rational)),
            Err(Error::DivisionByZero)
        );
        assert!(Scalar::q_power(Mode::Rational, 1).is_err());
        assert!(matches!(
            Scalar::qn_sum(Mode::Zeta3, -2),
            Err(Error::IndexOutOfRange(_))
        ));
    }

    #[test]
    fn q_power_examples() {
        assert_eq!(
            Scalar::q_power(Mode::Zeta3, 3).unwrap(),
            Scalar::one(Mode::Zeta3)
        );
        assert_eq!(
            Scalar::q_power(Mode::Zeta3, -1).unwrap(),
            Scalar::parse(Mode::Zeta3, "-1-q").unwrap()
        );
        assert_eq!(
            Scalar::q_power(Mode::GenericQ, -2).unwrap(),
            Scalar::parse(Mode::GenericQ, "1/q^2").unwrap()
        );
        assert_eq!(
            Scalar::qn_sum(Mode::Zeta3, 3).unwrap(),
            Scalar::zero(Mode::Zeta3)
        );
    }
}
