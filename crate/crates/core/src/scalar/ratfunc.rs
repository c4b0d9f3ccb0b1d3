use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::rat::push_term;
use super::{Field, Mode, QField};

/// Dense univariate polynomial over the rationals, coefficients low to high,
/// no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(k: usize, c: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Number of leading zero coefficients (the `q`-adic valuation).
    fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    fn is_monomial(&self) -> bool {
        !self.is_zero() && self.valuation() + 1 == self.coeffs.len()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    fn monic(&self) -> Poly {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Poly::zero(),
        }
    }

    fn add_ref(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = BigRational::zero();
        Poly::from_coeffs(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + o.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    fn neg_ref(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn mul_ref(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("polynomial division by zero");
        let lc_inv = d.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        if self.degree() == Some(0) || o.degree() == Some(0) {
            return Poly::constant(BigRational::one());
        }
        if self.is_monomial() || o.is_monomial() {
            let k = self.valuation().min(o.valuation());
            return Poly::monomial(k, BigRational::one());
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * at + c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let atom = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            push_term(&mut out, c, &atom);
        }
        f.write_str(&out)
    }
}

/// Rational function in `q` over the rationals: `num / den` with
/// `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::canonical(num, den))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::constant(BigRational::one()),
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::from_poly(Poly::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc_inv = den.leading().unwrap().recip();
        if lc_inv.is_one() {
            RatFunc { num, den }
        } else {
            RatFunc {
                num: num.scale(&lc_inv),
                den: den.scale(&lc_inv),
            }
        }
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval(&self, at: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(at);
        (!d.is_zero()).then(|| self.num.eval(at) / d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        if self.num.is_zero() {
            return o;
        }
        if o.num.is_zero() {
            return self;
        }
        if self.den == o.den {
            if self.den.is_one() {
                return RatFunc::from_poly(self.num.add_ref(&o.num));
            }
            return RatFunc::canonical(self.num.add_ref(&o.num), self.den);
        }
        let num = self.num.mul_ref(&o.den).add_ref(&o.num.mul_ref(&self.den));
        RatFunc::canonical(num, self.den.mul_ref(&o.den))
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: RatFunc) -> RatFunc {
        self + (-o)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: self.num.neg_ref(),
            den: self.den,
        }
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_poly(self.num.mul_ref(&o.num));
        }
        RatFunc::canonical(self.num.mul_ref(&o.num), self.den.mul_ref(&o.den))
    }
}

impl Field for RatFunc {
    const MODE: Mode = Mode::GenericQ;

    fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }
    fn one() -> Self {
        RatFunc::from_poly(Poly::constant(BigRational::one()))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_rational(r: BigRational) -> Self {
        RatFunc::from_poly(Poly::constant(r))
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        let lc_inv = self.num.leading().unwrap().recip();
        Some(RatFunc {
            num: self.den.scale(&lc_inv),
            den: self.num.scale(&lc_inv),
        })
    }
    fn as_rational(&self) -> Option<BigRational> {
        if self.num.is_zero() {
            return Some(BigRational::zero());
        }
        (self.num.degree() == Some(0) && self.den.is_one()).then(|| self.num.coeffs[0].clone())
    }
}

impl QField for RatFunc {
    const ROOT_ORDER: Option<u32> = None;

    fn q() -> Self {
        RatFunc::from_poly(Poly::monomial(1, BigRational::one()))
    }

    fn q_power(n: i64) -> Self {
        let mono = Poly::monomial(n.unsigned_abs() as usize, BigRational::one());
        if n >= 0 {
            RatFunc::from_poly(mono)
        } else {
            RatFunc {
                num: Poly::constant(BigRational::one()),
                den: mono,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RatFunc {
        RatFunc::q()
    }

    #[test]
    fn cancellation() {
        let num = q() * q() - RatFunc::one();
        let den = q() - RatFunc::one();
        assert_eq!(num.checked_div(&den).unwrap(), q() + RatFunc::one());
    }

    #[test]
    fn negative_powers_print() {
        assert_eq!(RatFunc::q_power(-2).to_string(), "(1)/(q^2)");
        assert_eq!((q() * q() - RatFunc::one()).to_string(), "q^2 - 1");
    }

    #[test]
    fn denominator_is_monic() {
        let two = RatFunc::from_int(2);
        let f = RatFunc::one()
            .checked_div(&(two * q() + RatFunc::one()))
            .unwrap();
        assert!(f.denom().leading().unwrap().is_one());
        assert_eq!(
            f.eval(&BigRational::from_integer(1.into())),
            Some(BigRational::new(1.into(), 3.into()))
        );
    }

    #[test]
    fn gcd_of_products() {
        let a = Poly::from_coeffs(
            vec![(-1).into(), 0.into(), 1.into()]
                .into_iter()
                .map(BigRational::from_integer)
                .collect(),
        );
        let b = Poly::from_coeffs(
            vec![1.into(), 1.into()]
                .into_iter()
                .map(BigRational::from_integer)
                .collect(),
        );
        assert_eq!(a.gcd(&b), b);
    }
}
