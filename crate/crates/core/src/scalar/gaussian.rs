use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::rat::push_term;
use super::{Field, Mode};

/// Gaussian rational `a + b*i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gaussian {
    re: BigRational,
    im: BigRational,
}

impl Gaussian {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gaussian { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Gaussian::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    pub fn i() -> Self {
        Gaussian::from_ints(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.re.is_zero() && self.im.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        if !self.re.is_zero() {
            push_term(&mut out, &self.re, "");
        }
        if !self.im.is_zero() {
            push_term(&mut out, &self.im, "i");
        }
        f.write_str(&out)
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re - o.re, self.im - o.im)
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re, -self.im)
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, o: Gaussian) -> Gaussian {
        Gaussian::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Field for Gaussian {
    const MODE: Mode = Mode::Gaussian;

    fn zero() -> Self {
        Gaussian::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        Gaussian::new(BigRational::one(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_rational(r: BigRational) -> Self {
        Gaussian::new(r, BigRational::zero())
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = &self.re * &self.re + &self.im * &self.im;
        Some(Gaussian::new(&self.re / &n, -&self.im / &n))
    }
    fn as_rational(&self) -> Option<BigRational> {
        self.im.is_zero().then(|| self.re.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared() {
        assert_eq!(Gaussian::i() * Gaussian::i(), -Gaussian::one());
        let z = Gaussian::from_ints(2, -3);
        assert_eq!(z.clone() * z.inv().unwrap(), Gaussian::one());
        assert_eq!(z.to_string(), "2 - 3*i");
    }
}
