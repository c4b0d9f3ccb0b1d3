use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::rat::push_term;
use super::{Field, Mode, QField};

/// `a + b*q` with `q^2 = -1 - q`, so `q^3 = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Zeta3 {
    a: BigRational,
    b: BigRational,
}

impl Zeta3 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Zeta3 { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Zeta3::new(
            BigRational::from_integer(a.into()),
            BigRational::from_integer(b.into()),
        )
    }

    pub fn parts(&self) -> (&BigRational, &BigRational) {
        (&self.a, &self.b)
    }

    /// `(a + bq)(a + b q^2) = a^2 - ab + b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }
}

impl fmt::Display for Zeta3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a.is_zero() && self.b.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        if !self.a.is_zero() {
            push_term(&mut out, &self.a, "");
        }
        if !self.b.is_zero() {
            push_term(&mut out, &self.b, "q");
        }
        f.write_str(&out)
    }
}

impl Add for Zeta3 {
    type Output = Zeta3;
    fn add(self, o: Zeta3) -> Zeta3 {
        Zeta3::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for Zeta3 {
    type Output = Zeta3;
    fn sub(self, o: Zeta3) -> Zeta3 {
        Zeta3::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for Zeta3 {
    type Output = Zeta3;
    fn neg(self) -> Zeta3 {
        Zeta3::new(-self.a, -self.b)
    }
}

impl Mul for Zeta3 {
    type Output = Zeta3;
    fn mul(self, o: Zeta3) -> Zeta3 {
        // (a + bq)(c + dq) = ac + (ad + bc) q + bd q^2, q^2 = -1 - q
        let bd = &self.b * &o.b;
        let a = &self.a * &o.a - &bd;
        let b = &self.a * &o.b + &self.b * &o.a - bd;
        Zeta3::new(a, b)
    }
}

impl Field for Zeta3 {
    const MODE: Mode = Mode::Zeta3;

    fn zero() -> Self {
        Zeta3::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        Zeta3::new(BigRational::one(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn from_rational(r: BigRational) -> Self {
        Zeta3::new(r, BigRational::zero())
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        // conjugate is a + b q^2 = (a - b) - b q
        Some(Zeta3::new((&self.a - &self.b) / &n, -&self.b / &n))
    }
    fn as_rational(&self) -> Option<BigRational> {
        self.b.is_zero().then(|| self.a.clone())
    }
}

impl QField for Zeta3 {
    const ROOT_ORDER: Option<u32> = Some(3);

    fn q() -> Self {
        Zeta3::from_ints(0, 1)
    }

    fn q_power(n: i64) -> Self {
        match n.rem_euclid(3) {
            0 => Zeta3::one(),
            1 => Zeta3::q(),
            _ => Zeta3::from_ints(-1, -1),
        }
    }
}
