use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::{forward_owned, LaurentPoly};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Element of Q(q) kept in canonical form.
///
/// The denominator is an ordinary polynomial whose constant term is exactly 1
/// and which shares no factor with the numerator; all powers of `q` live in
/// the numerator. Two equal functions therefore have identical fields.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self::from_laurent(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_laurent(LaurentPoly::from_int(n))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn q_pow(k: i64) -> Self {
        Self::from_laurent(LaurentPoly::q_pow(k))
    }

    pub fn from_laurent(num: LaurentPoly) -> Self {
        RationalFunction {
            num,
            den: LaurentPoly::one(),
        }
    }

    /// Builds `num / den` and brings it into canonical form.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (a, n) = num.to_poly();
        let (b, d) = den.to_poly();
        let g = Poly::gcd(&n, &d);
        let (n, d) = if g.is_one() {
            (n, d)
        } else {
            (n.div_exact(&g), d.div_exact(&g))
        };
        let c = d.constant_term();
        let (n, d) = if c.is_one() {
            (n, d)
        } else {
            let inv = c.recip();
            (n.scale(&inv), d.scale(&inv))
        };
        RationalFunction {
            num: LaurentPoly::from_poly(a - b, &n),
            den: LaurentPoly::from_poly(0, &d),
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// The Laurent polynomial this equals, if the denominator is trivial.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(s),
            den: self.den.clone(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        RationalFunction {
            num: self.num.shift(k),
            den: self.den.clone(),
        }
    }
}

/// Quantum integer `[n] = (q^n - q^-n)/(q - q^-1)`.
pub fn qint(n: i64) -> RationalFunction {
    let sign = n.signum();
    let n = n.abs();
    let p = LaurentPoly::from_terms((0..n).map(|k| (n - 1 - 2 * k, sign)));
    RationalFunction::from_laurent(p)
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        if self.den.is_one() && o.den.is_one() {
            return RationalFunction::from_laurent(&self.num + &o.num);
        }
        if self.den == o.den {
            return RationalFunction::canonical(&self.num + &o.num, self.den.clone());
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        RationalFunction::canonical(num, &self.den * &o.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        self + &(-o)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        if self.is_zero() || o.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RationalFunction::from_laurent(&self.num * &o.num);
        }
        // cancel crosswise first so the final gcd works on smaller inputs
        let (a, b) = cross_cancel(&self.num, &o.den);
        let (c, d) = cross_cancel(&o.num, &self.den);
        RationalFunction::canonical(&a * &c, &b * &d)
    }
}

fn cross_cancel(num: &LaurentPoly, den: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    if den.is_one() {
        return (num.clone(), den.clone());
    }
    let (a, n) = num.to_poly();
    let (b, d) = den.to_poly();
    let g = Poly::gcd(&n, &d);
    if g.is_one() {
        return (num.clone(), den.clone());
    }
    (
        LaurentPoly::from_poly(a, &n.div_exact(&g)),
        LaurentPoly::from_poly(b, &d.div_exact(&g)),
    )
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

forward_owned!(RationalFunction, Add add, Sub sub, Mul mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_laurent(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qint_small() {
        assert!(qint(0).is_zero());
        assert!(qint(1).is_one());
        assert_eq!(qint(2).to_string(), "q^-1 + q");
        assert_eq!(qint(-3), -qint(3));
    }

    #[test]
    fn canonical_form_moves_powers_of_q() {
        // q^2 / (2 q^3 + 2 q^5) = q^-1 / (2 + 2 q^2) = (1/2) q^-1 / (1 + q^2)
        let f = RationalFunction::new(
            LaurentPoly::q_pow(2),
            LaurentPoly::from_terms([(3, 2), (5, 2)]),
        )
        .unwrap();
        assert_eq!(f.denominator(), &LaurentPoly::from_terms([(0, 1), (2, 1)]));
        assert_eq!(f.numerator().to_string(), "1/2*q^-1");
    }

    #[test]
    fn quotient_by_qint_reduces() {
        // [4]/[2] = q^2 + q^-2
        let f = qint(4).div(&qint(2)).unwrap();
        assert_eq!(f.as_laurent().unwrap(), &LaurentPoly::from_terms([(-2, 1), (2, 1)]));
        assert!(RationalFunction::zero().inv().is_err());
    }
}
