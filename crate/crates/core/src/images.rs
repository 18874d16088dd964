//! Projective images of the braid group on the summands of the square at
//! `q = e^{πi/ℓ}`, `r = q³`: the case table and a brute-force check of the
//! finite cases.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedAdd, CheckedMul, One, Signed, ToPrimitive, Zero};

use crate::coeff::Cyclotomic;
use crate::diagrams::{in_gamma, lambda_level, Diagram, Level};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::squares::square_root;
use crate::tableaux::count_tableaux;

/// Element cap used when no budget is given.
pub const DEFAULT_BUDGET: usize = 200_000;

/// `BMWSQ_BUDGET` if set and valid, else [`DEFAULT_BUDGET`].
pub fn default_budget() -> usize {
    std::env::var("BMWSQ_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Trivial,
    /// `PSp_n(3)`.
    Psp { n: usize },
    /// `PSp_n(3) ⋉ (Z_3)^rank`, realized as `Sp_n(3) ⋉ (Z_3)^n` with the natural action.
    PspSemidirect { n: usize, rank: usize },
    A5,
    A5xPsu { d: usize },
    Psu { d: usize },
    PsuxPsu { d1: usize, d2: usize },
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Trivial => write!(f, "1"),
            GroupKind::Psp { n } => write!(f, "PSp({n},3)"),
            GroupKind::PspSemidirect { n, rank } => write!(f, "PSp({n},3) x| Z3^{rank}"),
            GroupKind::A5 => write!(f, "A5"),
            GroupKind::A5xPsu { d } => write!(f, "A5 x PSU({d})"),
            GroupKind::Psu { d } => write!(f, "PSU({d})"),
            GroupKind::PsuxPsu { d1, d2 } => write!(f, "PSU({d1}) x PSU({d2})"),
        }
    }
}

/// Where a descriptor came from: a row of the case ladder or the generic rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Case(u8),
    Generic,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Case(k) => write!(f, "case {k}"),
            Provenance::Generic => write!(f, "generic"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDescriptor {
    pub kind: GroupKind,
    pub provenance: Provenance,
}

/// `|Sp_{2k}(3)| = 3^{k²} Π_{i=1..k} (3^{2i} − 1)`.
pub fn sp_order(n: usize) -> BigUint {
    assert!(n.is_multiple_of(2), "symplectic groups have even degree");
    let k = n / 2;
    let three = BigUint::from(3u32);
    let mut o = three.pow((k * k) as u32);
    for i in 1..=k {
        o *= three.pow(2 * i as u32) - 1u32;
    }
    o
}

pub fn psp_order(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    sp_order(n) / 2u32
}

impl GroupKind {
    /// `None` for infinite groups.
    pub fn order(&self) -> Option<BigUint> {
        match *self {
            GroupKind::Trivial => Some(BigUint::one()),
            GroupKind::Psp { n } => Some(psp_order(n)),
            // -1 in Sp_n(3) acts by inversion on (Z_3)^n, so it is not central
            // in the semidirect product and survives projectivization
            GroupKind::PspSemidirect { n, rank } => {
                Some(sp_order(n) * BigUint::from(3u32).pow(rank as u32))
            }
            GroupKind::A5 => Some(BigUint::from(60u32)),
            GroupKind::Psu { d: 1 } => Some(BigUint::one()),
            GroupKind::PsuxPsu { d1: 1, d2: 1 } => Some(BigUint::one()),
            GroupKind::A5xPsu { d: 1 } => Some(BigUint::from(60u32)),
            _ => None,
        }
    }
}

impl GroupDescriptor {
    pub fn order(&self) -> Option<BigUint> {
        self.kind.order()
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }
}

fn d_ms(m: usize, s: usize, ell: Level) -> Result<usize> {
    let c = count_tableaux(&Diagram::two_row(m - s, s), ell)?;
    c.to_usize().ok_or_else(|| Error::Invalid("dimension overflow".into()))
}

/// Even-size diagrams of Γ(6) whose summand only involves `V_{m,m/2−2}` and
/// `V_{m,m/2}`, the two Jones representations with image `PSp_{m−2}(3)`.
pub fn sigma6() -> Vec<Diagram> {
    [&[4][..], &[4, 1, 1], &[1, 1, 1, 1], &[2, 2], &[0]]
        .iter()
        .map(|r| Diagram::of(r))
        .collect()
}

fn check_domain(m: usize, lambda: &Diagram, ell: Level) -> Result<u32> {
    let l = match ell {
        Level::Finite(l) if l >= 6 => l,
        _ => return Err(Error::LevelTooSmall(ell)),
    };
    if !in_gamma(lambda, ell)? {
        return Err(Error::NotInGamma {
            diagram: lambda.clone(),
            level: ell,
        });
    }
    if lambda.size() > m || !(m - lambda.size()).is_multiple_of(2) {
        return Err(Error::ParityViolation {
            length: m,
            diagram: lambda.clone(),
        });
    }
    Ok(l)
}

/// Closed projective image of the braid group on the summand labelled `λ`.
pub fn classify_image(m: usize, lambda: &Diagram, ell: Level) -> Result<GroupDescriptor> {
    let l = check_domain(m, lambda, ell)?;
    let case = |k: u8, kind: GroupKind| {
        Ok(GroupDescriptor {
            kind,
            provenance: Provenance::Case(k),
        })
    };
    let is = |r: &[usize]| *lambda == Diagram::of(r);
    let (l1, l2) = (lambda.row(0), lambda.row(1));
    if is(&[m]) {
        return case(1, GroupKind::Trivial);
    }
    if m == 2 {
        return case(2, GroupKind::Trivial);
    }
    if m == 3 && is(&[1, 1, 1]) {
        return case(3, GroupKind::Trivial);
    }
    if m == 4 && is(&[1, 1, 1, 1]) {
        return case(4, GroupKind::Trivial);
    }
    if l == 6 && m % 2 == 1 {
        return case(5, GroupKind::Psp { n: m - 1 });
    }
    if l == 6 && sigma6().contains(lambda) {
        return case(6, GroupKind::Psp { n: m - 2 });
    }
    if l == 6 {
        return case(7, GroupKind::PspSemidirect { n: m - 2, rank: m - 2 });
    }
    if l == 10 && m == 3 && (is(&[2, 1]) || is(&[1])) {
        return case(8, GroupKind::A5);
    }
    if l == 10 && m == 4 && (is(&[2, 2]) || is(&[0])) {
        return case(9, GroupKind::A5);
    }
    if l == 10 && m == 4 && is(&[1, 1]) {
        return case(10, GroupKind::A5xPsu { d: 3 });
    }
    if lambda.num_rows() <= 1 {
        return case(11, GroupKind::Psu { d: d_ms(m, (m - l1) / 2, ell)? });
    }
    if lambda.num_rows() == 3 && lambda.row(1) == 1 && lambda.row(2) == 1 {
        return case(12, GroupKind::Psu { d: d_ms(m, (m - l1) / 2, ell)? });
    }
    if is(&[1, 1, 1, 1]) {
        return case(13, GroupKind::Psu { d: d_ms(m, m / 2, ell)? });
    }
    Ok(GroupDescriptor {
        kind: GroupKind::PsuxPsu {
            d1: d_ms(m, (m - l1 + l2) / 2, ell)?,
            d2: d_ms(m, (m - l1 - l2) / 2, ell)?,
        },
        provenance: Provenance::Generic,
    })
}

/// Closed projective image of the Jones representation on `[m−s, s]`.
pub fn tl_image_group(m: usize, s: usize, ell: Level) -> Result<GroupKind> {
    if m < 3 {
        return Err(Error::Invalid(format!("need at least 3 strands, got {m}")));
    }
    let l = match ell {
        Level::Finite(l) if l >= 6 => l,
        _ => return Err(Error::LevelTooSmall(ell)),
    };
    if 2 * s > m {
        return Err(Error::Invalid(format!("no two-row diagram of size {m} with second row {s}")));
    }
    let shape = Diagram::two_row(m - s, s);
    if !lambda_level(m, ell).contains(&shape) {
        return Err(Error::NotInLambda {
            diagram: shape,
            size: m,
            level: ell,
        });
    }
    let d = d_ms(m, s, ell)?;
    if d == 1 {
        return Ok(GroupKind::Trivial);
    }
    Ok(match l {
        6 if m % 2 == 1 => GroupKind::Psp { n: m - 1 },
        6 if s + 1 == m / 2 => GroupKind::PspSemidirect { n: m - 2, rank: m - 2 },
        6 => GroupKind::Psp { n: m - 2 },
        10 if (m, s) == (3, 1) || (m, s) == (4, 2) => GroupKind::A5,
        _ => GroupKind::Psu { d },
    })
}

/// Integer types usable for packed cyclotomic matrices.
trait Coef: Clone + Eq + Hash + Zero + One + Integer + Signed + CheckedAdd + CheckedMul {
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Coef for i128 {
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coef for BigInt {
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Matrices over Z[ζ_n] stored as `dim × dim × φ(n)` integer coordinates,
/// identified up to scalars.
struct PackedRing {
    n: u32,
    deg: usize,
    dim: usize,
    /// `ζ^j` for `j < 2·deg − 1` in the power basis.
    table: Vec<Vec<BigInt>>,
    inverses: HashMap<Vec<BigInt>, Vec<BigInt>>,
}

impl PackedRing {
    fn new(n: u32, dim: usize) -> Self {
        let deg = Cyclotomic::zero(n).field().degree();
        let table = (0..2 * deg - 1)
            .map(|j| {
                Cyclotomic::zeta_pow(n, j as i64)
                    .coords()
                    .iter()
                    .map(|c| {
                        assert!(c.is_integer(), "cyclotomic polynomials are monic");
                        c.to_integer()
                    })
                    .collect()
            })
            .collect();
        PackedRing {
            n,
            deg,
            dim,
            table,
            inverses: HashMap::new(),
        }
    }

    fn poly_mul<T: Coef>(&self, a: &[T], b: &[T], table: &[Vec<T>]) -> Option<Vec<T>> {
        let mut conv = vec![T::zero(); 2 * self.deg - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] = conv[i + j].checked_add(&x.checked_mul(y)?)?;
                }
            }
        }
        let mut out = vec![T::zero(); self.deg];
        for (j, c) in conv.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, t) in table[j].iter().enumerate() {
                if !t.is_zero() {
                    out[k] = out[k].checked_add(&c.checked_mul(t)?)?;
                }
            }
        }
        Some(out)
    }

    fn mat_mul<T: Coef>(&self, a: &[T], b: &[T], table: &[Vec<T>]) -> Option<Vec<T>> {
        let (d, k) = (self.dim, self.deg);
        let mut out = vec![T::zero(); d * d * k];
        for i in 0..d {
            for l in 0..d {
                let x = &a[(i * d + l) * k..(i * d + l + 1) * k];
                if x.iter().all(|c| c.is_zero()) {
                    continue;
                }
                for j in 0..d {
                    let y = &b[(l * d + j) * k..(l * d + j + 1) * k];
                    if y.iter().all(|c| c.is_zero()) {
                        continue;
                    }
                    let p = self.poly_mul(x, y, table)?;
                    let o = &mut out[(i * d + j) * k..(i * d + j + 1) * k];
                    for (u, v) in o.iter_mut().zip(p) {
                        *u = u.checked_add(&v)?;
                    }
                }
            }
        }
        Some(out)
    }

    /// `D · c^{-1}` with the least positive integer `D` making it integral.
    fn scaled_inverse(&mut self, c: &[BigInt]) -> Vec<BigInt> {
        if let Some(v) = self.inverses.get(c) {
            return v.clone();
        }
        let coords: Vec<BigRational> = c.iter().cloned().map(BigRational::from_integer).collect();
        let inv = Cyclotomic::from_coords(self.n, &coords)
            .inv()
            .expect("first nonzero entry is invertible")
            .coords();
        let den = inv.iter().fold(BigInt::one(), |a, x| a.lcm(x.denom()));
        let v: Vec<BigInt> = inv
            .iter()
            .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        self.inverses.insert(c.to_vec(), v.clone());
        v
    }

    /// Canonical representative: first nonzero entry a positive integer,
    /// coordinates coprime.
    fn normalize<T: Coef>(&mut self, a: Vec<T>, table: &[Vec<T>]) -> Option<Vec<T>> {
        let k = self.deg;
        let first = a.chunks(k).find(|e| e.iter().any(|c| !c.is_zero()))?;
        let c: Vec<BigInt> = first.iter().map(|x| x.to_big()).collect();
        let v: Vec<T> = self
            .scaled_inverse(&c)
            .iter()
            .map(T::from_big)
            .collect::<Option<_>>()?;
        let mut out = Vec::with_capacity(a.len());
        for e in a.chunks(k) {
            if e.iter().all(|x| x.is_zero()) {
                out.extend(e.iter().cloned());
            } else {
                out.extend(self.poly_mul(e, &v, table)?);
            }
        }
        let g = out.iter().fold(T::zero(), |g, x| g.gcd(x));
        let lead = out.iter().find(|x| !x.is_zero())?.clone();
        let g = if lead.is_negative() { -g } else { g };
        Some(out.into_iter().map(|x| x / g.clone()).collect())
    }

    fn product(&mut self, a: &[i128], b: &[i128], small: &[Vec<i128>]) -> Result<Vec<i128>> {
        if let Some(p) = self.mat_mul(a, b, small) {
            if let Some(n) = self.normalize(p, small) {
                return Ok(n);
            }
        }
        let big: Vec<Vec<BigInt>> = self.table.clone();
        let ab: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
        let bb: Vec<BigInt> = b.iter().map(|&x| BigInt::from(x)).collect();
        let p = self.mat_mul(&ab, &bb, &big).expect("big integers do not overflow");
        let n = self.normalize(p, &big).expect("nonzero product");
        n.iter()
            .map(|x| x.to_i128())
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Invalid("projective representative exceeds 128 bits".into()))
    }

    fn pack(&mut self, m: &Matrix<Cyclotomic>) -> Result<Vec<i128>> {
        let mut coords: Vec<BigRational> = Vec::new();
        for x in m.entries() {
            coords.extend(x.coords());
        }
        let den = coords.iter().fold(BigInt::one(), |a, x| a.lcm(x.denom()));
        let ints: Vec<BigInt> = coords
            .iter()
            .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let big = self.table.clone();
        let n = self
            .normalize(ints, &big)
            .ok_or_else(|| Error::Invalid("zero generator".into()))?;
        n.iter()
            .map(|x| x.to_i128())
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Invalid("generator exceeds 128 bits".into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub order: usize,
    pub hit_cap: bool,
    pub dim: usize,
}

/// Breadth-first closure of the projective images of `G̃_1, …, G̃_{m−1}` on
/// the summand labelled `λ`, stopping once more than `budget` elements are found.
pub fn enumerate_projective_group(
    m: usize,
    lambda: &Diagram,
    ell: Level,
    budget: usize,
) -> Result<Enumeration> {
    let l = check_domain(m, lambda, ell)?;
    let sq = square_root(m, l)?;
    let block_of = |i: usize| -> Result<&Matrix<Cyclotomic>> {
        sq.g(i)?
            .block(lambda)
            .ok_or_else(|| Error::Invalid(format!("no summand {lambda} at m={m}, ell={ell}")))
    };
    let dim = sq
        .blocks()
        .iter()
        .find(|b| &b.label == lambda)
        .map(|b| b.dim)
        .ok_or_else(|| Error::Invalid(format!("no summand {lambda} at m={m}, ell={ell}")))?;
    let mut ring = PackedRing::new(2 * l, dim);
    let small: Vec<Vec<i128>> = ring
        .table
        .iter()
        .map(|r| r.iter().map(|x| x.to_i128().expect("small table")).collect())
        .collect();
    let gens: Vec<Vec<i128>> = (1..m)
        .map(|i| ring.pack(block_of(i)?))
        .collect::<Result<_>>()?;
    let mut id = vec![0i128; dim * dim * ring.deg];
    for i in 0..dim {
        id[(i * dim + i) * ring.deg] = 1;
    }
    let mut seen: HashSet<Vec<i128>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = ring.product(&x, g, &small)?;
            if seen.insert(y.clone()) {
                if seen.len() > budget {
                    return Ok(Enumeration {
                        order: seen.len(),
                        hit_cap: true,
                        dim,
                    });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(Enumeration {
        order: seen.len(),
        hit_cap: false,
        dim,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Finite prediction, exact order found.
    Verified,
    /// Infinite prediction and the budget was exhausted.
    Consistent,
    /// Finite prediction but the budget ran out first.
    Inconclusive,
    Mismatch,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Verified => "verified",
            Verdict::Consistent => "consistent",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Mismatch => "mismatch",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageCheck {
    pub descriptor: GroupDescriptor,
    pub enumeration: Enumeration,
    pub verdict: Verdict,
}

pub fn verify_image(m: usize, lambda: &Diagram, ell: Level, budget: usize) -> Result<ImageCheck> {
    let descriptor = classify_image(m, lambda, ell)?;
    let enumeration = enumerate_projective_group(m, lambda, ell, budget)?;
    let verdict = match (descriptor.order(), enumeration.hit_cap) {
        (Some(o), false) if o == BigUint::from(enumeration.order) => Verdict::Verified,
        (Some(o), true) if o > BigUint::from(budget) => Verdict::Inconclusive,
        (None, true) => Verdict::Consistent,
        _ => Verdict::Mismatch,
    };
    Ok(ImageCheck {
        descriptor,
        enumeration,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const L6: Level = Level::Finite(6);
    const L10: Level = Level::Finite(10);

    fn d(r: &[usize]) -> Diagram {
        Diagram::of(r)
    }

    #[test]
    fn orders() {
        assert_eq!(psp_order(2), BigUint::from(12u32));
        assert_eq!(psp_order(4), BigUint::from(25920u32));
        assert_eq!(
            GroupKind::PspSemidirect { n: 2, rank: 2 }.order(),
            Some(BigUint::from(216u32))
        );
        assert_eq!(GroupKind::Psu { d: 3 }.order(), None);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_image(5, &d(&[5]), Level::Finite(7)).unwrap().kind, GroupKind::Trivial);
        assert_eq!(classify_image(3, &d(&[2, 1]), L10).unwrap().kind, GroupKind::A5);
        assert_eq!(
            classify_image(4, &d(&[1, 1]), L10).unwrap().kind,
            GroupKind::A5xPsu { d: 3 }
        );
        assert!(matches!(
            classify_image(4, &d(&[1]), L6),
            Err(Error::ParityViolation { .. })
        ));
        assert!(matches!(
            classify_image(4, &d(&[3, 3]), L6),
            Err(Error::NotInGamma { .. })
        ));
        assert!(matches!(
            classify_image(3, &d(&[1]), Level::Finite(5)),
            Err(Error::LevelTooSmall(_))
        ));
    }

    #[test]
    fn sigma6_matches_enumeration() {
        for lam in [&[0][..], &[1, 1], &[2], &[2, 2], &[3, 1], &[2, 1, 1]] {
            let lam = d(lam);
            let c = verify_image(4, &lam, L6, 5_000).unwrap();
            assert_eq!(c.verdict, Verdict::Verified, "{lam}: {c:?}");
        }
    }

    #[test]
    fn tl_images() {
        assert_eq!(tl_image_group(5, 1, L6).unwrap(), GroupKind::Psp { n: 4 });
        assert_eq!(tl_image_group(3, 1, L10).unwrap(), GroupKind::A5);
        assert_eq!(tl_image_group(4, 1, Level::Finite(8)).unwrap(), GroupKind::Psu { d: 3 });
        assert!(matches!(tl_image_group(5, 0, L6), Err(Error::NotInLambda { .. })));
    }

    #[test]
    fn small_enumerations() {
        let e = enumerate_projective_group(3, &d(&[1]), L6, 10_000).unwrap();
        assert_eq!((e.order, e.hit_cap), (12, false));
        let e = enumerate_projective_group(3, &d(&[2, 1]), L10, 10_000).unwrap();
        assert_eq!((e.order, e.hit_cap), (60, false));
        let e = enumerate_projective_group(3, &d(&[3]), L6, 10).unwrap();
        assert_eq!(e.order, 1);
        let e = enumerate_projective_group(3, &d(&[1]), Level::Finite(7), 500).unwrap();
        assert!(e.hit_cap);
    }
}
