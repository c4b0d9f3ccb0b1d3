use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Field, Mode};

/// Arbitrary-precision rational number.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn new(num: i64, den: i64) -> Self {
        Rat(BigRational::new(num.into(), den.into()))
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

/// `p` or `p/r`.
pub(crate) fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn rational_string(r: &BigRational) -> String {
    struct D<'a>(&'a BigRational);
    impl fmt::Display for D<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            fmt_rational(self.0, f)
        }
    }
    D(r).to_string()
}

/// Appends `coef*atom` to a sum being printed, with sign handling.
pub(crate) fn push_term(out: &mut String, coef: &BigRational, atom: &str) {
    let negative = coef.is_negative();
    let mag = coef.abs();
    if out.is_empty() {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    if atom.is_empty() {
        out.push_str(&rational_string(&mag));
    } else if mag.is_one() {
        out.push_str(atom);
    } else {
        out.push_str(&rational_string(&mag));
        out.push('*');
        out.push_str(atom);
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rational(&self.0, f)
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, o: Rat) -> Rat {
        Rat(self.0 + o.0)
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, o: Rat) -> Rat {
        Rat(self.0 - o.0)
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, o: Rat) -> Rat {
        Rat(self.0 * o.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Field for Rat {
    const MODE: Mode = Mode::Rational;

    fn zero() -> Self {
        Rat(BigRational::zero())
    }
    fn one() -> Self {
        Rat(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn from_rational(r: BigRational) -> Self {
        Rat(r)
    }
    fn inv(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Rat(self.0.recip()))
    }
    fn as_rational(&self) -> Option<BigRational> {
        Some(self.0.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_reduce() {
        assert_eq!(Rat::new(2, 3) + Rat::new(1, 6), Rat::new(5, 6));
        assert_eq!(Rat::new(5, 6).to_string(), "5/6");
        assert_eq!(Rat::new(-4, 2).to_string(), "-2");
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(Rat::zero().inv().is_none());
        assert_eq!(Rat::new(3, 4).inv().unwrap(), Rat::new(4, 3));
    }
}
