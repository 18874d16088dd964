use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::{forward_owned, LaurentPoly};
use super::poly::Poly;
use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};

/// Shared data for Q(ζ_n): the cyclotomic polynomial and `x^j mod Φ_n` for `j < n`.
pub struct CycloField {
    n: u32,
    phi: Poly,
    powers: Vec<Poly>,
}

impl CycloField {
    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi.degree().unwrap()
    }

    /// Integer coefficients of Φ_n, lowest degree first.
    pub fn cyclotomic_poly(&self) -> Vec<BigInt> {
        self.phi.to_integers()
    }

    fn reduce(&self, p: &Poly) -> Poly {
        if p.0.len() <= self.degree() {
            p.clone()
        } else {
            p.divrem(&self.phi).1
        }
    }
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.n)
    }
}

/// The cyclotomic polynomial Φ_n computed by exact division.
pub(crate) fn cyclotomic_poly(n: u32) -> Poly {
    let mut xn = vec![BigRational::zero(); n as usize + 1];
    xn[0] = -BigRational::one();
    xn[n as usize] = BigRational::one();
    let mut p = Poly::from_coeffs(xn);
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = p.div_exact(&cyclotomic_poly(d));
        }
    }
    p
}

/// Cached field of conductor `n`.
pub fn field(n: u32) -> Arc<CycloField> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    assert!(n >= 1, "conductor must be positive");
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap().get(&n) {
        return f.clone();
    }
    let phi = cyclotomic_poly(n);
    let mut powers = Vec::with_capacity(n as usize);
    let x = Poly::from_ints(&[0, 1]);
    let mut cur = Poly::one();
    for _ in 0..n {
        powers.push(cur.clone());
        cur = cur.mul(&x).divrem(&phi).1;
    }
    let f = Arc::new(CycloField { n, phi, powers });
    cache.lock().unwrap().entry(n).or_insert(f).clone()
}

/// Element of the `n`-th cyclotomic field as a reduced polynomial in ζ_n.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CycloField>,
    coords: Poly,
}

impl Cyclotomic {
    pub fn zero(n: u32) -> Self {
        Cyclotomic {
            field: field(n),
            coords: Poly::zero(),
        }
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(n, BigRational::one())
    }

    pub fn from_rational(n: u32, c: BigRational) -> Self {
        Cyclotomic {
            field: field(n),
            coords: Poly::from_coeffs(vec![c]),
        }
    }

    /// `Σ c_j ζ^j`, reduced.
    pub fn from_coords(n: u32, c: &[BigRational]) -> Self {
        let f = field(n);
        let coords = f.reduce(&Poly::from_coeffs(c.to_vec()));
        Cyclotomic { field: f, coords }
    }

    /// ζ_n^k for any integer `k`.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let f = field(n);
        let idx = k.rem_euclid(n as i64) as usize;
        let coords = f.powers[idx].clone();
        Cyclotomic { field: f, coords }
    }

    pub fn conductor(&self) -> u32 {
        self.field.n
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    /// Coordinates in the power basis `1, ζ, ..., ζ^{φ(n)-1}`.
    pub fn coords(&self) -> Vec<BigRational> {
        let mut c = self.coords.0.clone();
        c.resize(self.field.degree(), BigRational::zero());
        c
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.coords.is_one()
    }

    /// The rational value, when the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coords.0.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coords.0[0].clone()),
            _ => None,
        }
    }

    fn same_field(&self, o: &Self) {
        assert_eq!(self.field.n, o.field.n, "mixing cyclotomic fields");
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s) = Poly::ext_gcd_mod(&self.coords, &self.field.phi);
        debug_assert!(g.is_one());
        Ok(Cyclotomic {
            field: self.field.clone(),
            coords: s,
        })
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coords: self.coords.scale(s),
        }
    }

    /// Evaluates a Laurent polynomial at ζ_n^k.
    pub fn eval_laurent(n: u32, p: &LaurentPoly, k: i64) -> Self {
        let f = field(n);
        let mut acc = vec![BigRational::zero(); f.degree()];
        for (e, c) in p.terms() {
            let idx = (e * k).rem_euclid(n as i64) as usize;
            for (i, v) in f.powers[idx].0.iter().enumerate() {
                if !v.is_zero() {
                    acc[i] += c * v;
                }
            }
        }
        Cyclotomic {
            field: f,
            coords: Poly::from_coeffs(acc),
        }
    }
}

/// Image of `f` under `q ↦ e^{sign·πi/ℓ}` in the field of conductor `2ℓ`.
pub fn specialize(f: &RationalFunction, ell: u32, sign: i8) -> Result<Cyclotomic> {
    if ell < 1 || !(sign == 1 || sign == -1) {
        return Err(Error::Invalid(format!("bad specialization ell={ell} sign={sign}")));
    }
    let n = 2 * ell;
    let num = Cyclotomic::eval_laurent(n, f.numerator(), sign as i64);
    if f.denominator().is_one() {
        return Ok(num);
    }
    let den = Cyclotomic::eval_laurent(n, f.denominator(), sign as i64);
    if den.is_zero() {
        return Err(Error::DenominatorVanishes { ell, sign });
    }
    Ok(&num * &den.inv()?)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, o: &Self) -> bool {
        self.field.n == o.field.n && self.coords == o.coords
    }
}

impl Eq for Cyclotomic {}

impl std::hash::Hash for Cyclotomic {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.field.n.hash(h);
        self.coords.hash(h);
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, o: &Cyclotomic) -> Cyclotomic {
        self.same_field(o);
        Cyclotomic {
            field: self.field.clone(),
            coords: self.coords.add(&o.coords),
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, o: &Cyclotomic) -> Cyclotomic {
        self.same_field(o);
        Cyclotomic {
            field: self.field.clone(),
            coords: self.coords.sub(&o.coords),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, o: &Cyclotomic) -> Cyclotomic {
        self.same_field(o);
        Cyclotomic {
            field: self.field.clone(),
            coords: self.field.reduce(&self.coords.mul(&o.coords)),
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            coords: self.coords.neg(),
        }
    }
}

forward_owned!(Cyclotomic, Add add, Sub sub, Mul mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = format!("z{}", self.field.n);
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coords.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "{var}")?,
                (_, false) => write!(f, "{mag}*{var}")?,
            }
            if i > 1 {
                write!(f, "^{i}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::qint;

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), Poly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic_poly(4), Poly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(12), Poly::from_ints(&[1, 0, -1, 0, 1]));
        assert_eq!(field(20).degree(), 8);
    }

    #[test]
    fn delta_at_ell_six_is_root_three() {
        let d = specialize(&qint(2), 6, 1).unwrap();
        assert_eq!(d, &Cyclotomic::zeta_pow(12, 1) + &Cyclotomic::zeta_pow(12, -1));
        let three = Cyclotomic::from_rational(12, BigRational::from_integer(3.into()));
        assert_eq!(&d * &d, three);
    }

    #[test]
    fn qint_ell_vanishes_and_full_turn_is_one() {
        for ell in 3..12 {
            for s in [1, -1] {
                assert!(specialize(&qint(ell as i64), ell, s).unwrap().is_zero());
                let f = RationalFunction::q_pow(2 * ell as i64);
                assert!(specialize(&f, ell, s).unwrap().is_one());
            }
        }
    }

    #[test]
    fn vanishing_denominator() {
        let f = qint(1).div(&qint(5)).unwrap();
        assert_eq!(
            specialize(&f, 5, -1),
            Err(Error::DenominatorVanishes { ell: 5, sign: -1 })
        );
    }

    #[test]
    fn inverse_roundtrip() {
        let a = &Cyclotomic::zeta_pow(10, 3) + &Cyclotomic::one(10);
        assert!((&a * &a.inv().unwrap()).is_one());
    }
}
