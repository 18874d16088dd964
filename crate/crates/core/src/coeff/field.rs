use std::fmt;

use super::cyclotomic::{specialize, Cyclotomic};
use super::laurent::LaurentPoly;
use super::modp::{prime_congruent_one, root_of_unity, Fp};
use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};

/// Exact field arithmetic shared by the generic, cyclotomic and modular scalars.
///
/// Constants are produced from an existing element because the cyclotomic
/// and modular fields need their parameters.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;

    fn is_one(&self) -> bool {
        self == &self.one_like()
    }
}

impl Field for RationalFunction {
    fn zero_like(&self) -> Self {
        RationalFunction::zero()
    }
    fn one_like(&self) -> Self {
        RationalFunction::one()
    }
    fn from_int_like(&self, n: i64) -> Self {
        RationalFunction::from_int(n)
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        RationalFunction::inv(self)
    }
    fn is_one(&self) -> bool {
        RationalFunction::is_one(self)
    }
}

impl Field for Cyclotomic {
    fn zero_like(&self) -> Self {
        Cyclotomic::zero(self.conductor())
    }
    fn one_like(&self) -> Self {
        Cyclotomic::one(self.conductor())
    }
    fn from_int_like(&self, n: i64) -> Self {
        Cyclotomic::from_rational(self.conductor(), num_rational::BigRational::from_integer(n.into()))
    }
    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        Cyclotomic::inv(self)
    }
    fn is_one(&self) -> bool {
        Cyclotomic::is_one(self)
    }
}

impl Field for Fp {
    fn zero_like(&self) -> Self {
        Fp::zero(self.modulus())
    }
    fn one_like(&self) -> Self {
        Fp::one(self.modulus())
    }
    fn from_int_like(&self, n: i64) -> Self {
        Fp::new(n, self.modulus())
    }
    fn is_zero(&self) -> bool {
        Fp::is_zero(*self)
    }
    fn add(&self, o: &Self) -> Self {
        Fp::add(*self, *o)
    }
    fn sub(&self, o: &Self) -> Self {
        Fp::sub(*self, *o)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp::mul(*self, *o)
    }
    fn neg(&self) -> Self {
        Fp::neg(*self)
    }
    fn inv(&self) -> Result<Self> {
        Fp::inv(*self)
    }
}

/// A ring map out of Q(q) (defined on functions whose denominator survives).
pub trait Specialization: Send + Sync {
    type F: Field;
    fn lift(&self, f: &RationalFunction) -> Result<Self::F>;
    fn zero(&self) -> Self::F;
    /// Distinguishes specializations in caches.
    fn key(&self) -> String;
}

/// The identity: keep `q` as an indeterminate.
#[derive(Clone, Copy, Debug, Default)]
pub struct Generic;

impl Specialization for Generic {
    type F = RationalFunction;
    fn lift(&self, f: &RationalFunction) -> Result<RationalFunction> {
        Ok(f.clone())
    }
    fn zero(&self) -> RationalFunction {
        RationalFunction::zero()
    }
    fn key(&self) -> String {
        "generic".into()
    }
}

/// `q ↦ e^{sign·πi/ℓ}`.
#[derive(Clone, Copy, Debug)]
pub struct RootOfUnity {
    pub ell: u32,
    pub sign: i8,
}

impl Specialization for RootOfUnity {
    type F = Cyclotomic;
    fn lift(&self, f: &RationalFunction) -> Result<Cyclotomic> {
        specialize(f, self.ell, self.sign)
    }
    fn zero(&self) -> Cyclotomic {
        Cyclotomic::zero(2 * self.ell)
    }
    fn key(&self) -> String {
        format!("root:{}:{}", self.ell, self.sign)
    }
}

/// `q ↦ t` in F_p.
#[derive(Clone, Copy, Debug)]
pub struct ModPrime {
    pub q: Fp,
}

impl ModPrime {
    /// `q` sent to a primitive `2ℓ`-th root of unity mod a prime `p ≡ 1 (mod 2ℓ)`.
    pub fn root_of_unity(ell: u32, lower: u64) -> Self {
        let n = 2 * ell as u64;
        let p = prime_congruent_one(n, lower);
        ModPrime {
            q: root_of_unity(n, p).expect("prime congruent to one has the root"),
        }
    }

    pub fn eval_laurent(&self, p: &LaurentPoly) -> Result<Fp> {
        let m = self.q.modulus();
        let qi = self.q.inv()?;
        let mut acc = Fp::zero(m);
        for (e, c) in p.terms() {
            let base = if e < 0 { qi } else { self.q };
            let t = Fp::from_rational(c, m)?.mul(base.pow(e.unsigned_abs()));
            acc = acc.add(t);
        }
        Ok(acc)
    }
}

impl Specialization for ModPrime {
    type F = Fp;
    fn lift(&self, f: &RationalFunction) -> Result<Fp> {
        let n = self.eval_laurent(f.numerator())?;
        let d = self.eval_laurent(f.denominator())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(n.mul(d.inv()?))
    }
    fn zero(&self) -> Fp {
        Fp::zero(self.q.modulus())
    }
    fn key(&self) -> String {
        format!("modp:{}:{}", self.q.modulus(), self.q.value())
    }
}
