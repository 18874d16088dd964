use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Element of the prime field F_p, `p < 2^32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        Fp {
            v: v.rem_euclid(p as i64) as u64,
            p,
        }
    }

    pub fn zero(p: u64) -> Self {
        Fp { v: 0, p }
    }

    pub fn one(p: u64) -> Self {
        Fp { v: 1 % p, p }
    }

    pub fn value(self) -> u64 {
        self.v
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.v == 0
    }

    pub fn add(self, o: Fp) -> Fp {
        Fp {
            v: (self.v + o.v) % self.p,
            p: self.p,
        }
    }

    pub fn sub(self, o: Fp) -> Fp {
        Fp {
            v: (self.v + self.p - o.v) % self.p,
            p: self.p,
        }
    }

    pub fn mul(self, o: Fp) -> Fp {
        Fp {
            v: self.v * o.v % self.p,
            p: self.p,
        }
    }

    pub fn neg(self) -> Fp {
        Fp {
            v: (self.p - self.v) % self.p,
            p: self.p,
        }
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Result<Fp> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.p - 2))
    }

    pub fn from_bigint(n: &BigInt, p: u64) -> Fp {
        let r: BigInt = ((n % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
        Fp {
            v: r.to_u64().unwrap(),
            p,
        }
    }

    /// Reduction of a rational; fails when `p` divides the denominator.
    pub fn from_rational(c: &BigRational, p: u64) -> Result<Fp> {
        let d = Fp::from_bigint(c.denom(), p);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Fp::from_bigint(c.numer(), p).mul(d.inv()?))
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.v, self.p)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element of exact multiplicative order `n` in F_p; requires `n | p - 1`.
pub fn root_of_unity(n: u64, p: u64) -> Option<Fp> {
    if !(p - 1).is_multiple_of(n) {
        return None;
    }
    let factors = prime_factors(n);
    (2..p).map(|g| Fp::new(g as i64, p).pow((p - 1) / n)).find(|z| {
        !z.is_zero() && factors.iter().all(|&r| z.pow(n / r).value() != 1) && z.pow(n).value() == 1
    })
}

/// Smallest prime `p ≥ lower` with `p ≡ 1 (mod n)`.
pub fn prime_congruent_one(n: u64, lower: u64) -> u64 {
    let mut p = lower - lower % n + 1;
    if p < lower {
        p += n;
    }
    while !is_prime(p) {
        p += n;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_roots() {
        let p = 13;
        let a = Fp::new(5, p);
        assert_eq!(a.mul(a.inv().unwrap()).value(), 1);
        assert_eq!(Fp::new(-1, p).value(), 12);
        let z = root_of_unity(12, p).unwrap();
        assert_eq!(z.pow(12).value(), 1);
        assert_ne!(z.pow(6).value(), 1);
        let q = prime_congruent_one(20, 1 << 20);
        assert!(is_prime(q) && q % 20 == 1 && q >= 1 << 20);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(Fp::from_rational(&half, p).unwrap().mul(Fp::new(2, p)).value(), 1);
    }
}
