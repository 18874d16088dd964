//! Braid closures and link polynomials from the two traces.
//!
//! `J(β̂) = (−(q+q^{-1}))^{n−1} q^{−e(β)} tr(ρ(β))` and
//! `K(β̂) = x^{n−1} r^{−e(β)} tr²(Φ(β))` with `x = (q+q^{-1})²`, `r = q³`.
//! Since `tr(a g_{m−1}^{±1}) = −q^{±1}/(q+q^{-1}) · tr(a)` for `a` on fewer
//! strands, both prefactors undo stabilization exactly.
//!
//! The Kauffman bracket oracle is an independent state sum in the planar
//! matching monoid. It agrees with `J` under `A² ↦ q`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::coeff::{qint, Field, LaurentPoly, RationalFunction};
use crate::error::{Error, Result};
use crate::pathmodel::generic_model;
use crate::squares::{square_generic, SquareRep};

/// Default crossing cap for the bracket state sum.
pub const ORACLE_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i64>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Invalid("a braid needs at least one strand".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::IndexOutOfRange { index: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Whitespace-separated nonzero integers.
    pub fn parse(strands: usize, s: &str) -> Result<Self> {
        let letters = s
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad braid letter {t:?}"))))
            .collect::<Result<_>>()?;
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    pub fn crossings(&self) -> usize {
        self.letters.len()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.signum()).sum()
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn concat(&self, o: &Self) -> Result<Self> {
        if self.strands != o.strands {
            return Err(Error::ShapeMismatch(self.strands, o.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&o.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// Adds a strand and appends `σ_n^{±1}`.
    pub fn stabilize(&self, positive: bool) -> Self {
        let n = self.strands as i64;
        let mut letters = self.letters.clone();
        letters.push(if positive { n } else { -n });
        BraidWord { strands: self.strands + 1, letters }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// `n: letters`, e.g. `2: 1 1 1`.
    fn from_str(s: &str) -> Result<Self> {
        let (n, w) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected 'strands: letters', got {s:?}")))?;
        let n = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad strand count {n:?}")))?;
        Self::parse(n, w)
    }
}

/// Random word on `2..=max_strands` strands with up to `max_len` letters.
pub fn random_word(rng: &mut ChaCha8Rng, max_strands: usize, max_len: usize) -> BraidWord {
    let n = rng.gen_range(2..=max_strands.max(2));
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..n) as i64;
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord { strands: n, letters }
}

/// Number of components of the closure.
pub fn closure_components(w: &BraidWord) -> usize {
    let n = w.strands;
    let mut perm: Vec<usize> = (0..n).collect();
    for &l in &w.letters {
        let i = l.unsigned_abs() as usize - 1;
        perm.swap(i, i + 1);
    }
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        cycles += 1;
        let mut k = s;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
        }
    }
    cycles
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantValue {
    pub value: LaurentPoly,
    pub strands: usize,
    pub exponent_sum: i64,
    pub components: usize,
}

impl InvariantValue {
    fn new(w: &BraidWord, f: RationalFunction) -> Self {
        let value = f
            .as_laurent()
            .unwrap_or_else(|| panic!("invariant of {w} is not a Laurent polynomial: {f}"))
            .clone();
        InvariantValue {
            value,
            strands: w.strands,
            exponent_sum: w.exponent_sum(),
            components: closure_components(w),
        }
    }
}

/// Jones-type invariant from the Markov trace.
pub fn jones(w: &BraidWord) -> Result<InvariantValue> {
    let t = generic_model(w.strands)?;
    let tr = t.markov_trace(&t.represent_word(&w.letters)?);
    let n = w.strands as i64;
    let pre = qint(2).neg().pow(n - 1)?.shift(-w.exponent_sum());
    Ok(InvariantValue::new(w, &pre * &tr))
}

fn square_cache(m: usize) -> Result<Arc<SquareRep<RationalFunction>>> {
    type Cell = Arc<OnceLock<Result<Arc<SquareRep<RationalFunction>>>>>;
    static CACHE: OnceLock<Mutex<HashMap<usize, Cell>>> = OnceLock::new();
    let cell = CACHE
        .get_or_init(Default::default)
        .lock()
        .unwrap()
        .entry(m)
        .or_default()
        .clone();
    cell.get_or_init(|| square_generic(m).map(Arc::new)).clone()
}

/// Kauffman-type invariant from the squared trace.
///
/// `Φ(β) = q^{e(β)} · (ρ(β)⊗ρ(β))` is assembled on the square summands.
pub fn kauffman_special(w: &BraidWord) -> Result<InvariantValue> {
    let sq = square_cache(w.strands)?;
    let e = w.exponent_sum();
    let rho = sq.model().represent_word(&w.letters)?;
    let phi = sq.diagonal(&rho).scale(&RationalFunction::q_pow(e));
    let tr2 = sq.trace2(&phi);
    let n = w.strands as i64;
    let pre = qint(2).pow(2 * (n - 1))?.shift(-3 * e);
    Ok(InvariantValue::new(w, &pre * &tr2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LickorishCheck {
    pub lhs: InvariantValue,
    pub rhs: LaurentPoly,
    pub equal: bool,
    pub components: usize,
}

/// Compares `K(β̂)` with `J(β̂)²`.
pub fn lickorish_check(w: &BraidWord) -> Result<LickorishCheck> {
    let lhs = kauffman_special(w)?;
    let j = jones(w)?;
    let rhs = &j.value * &j.value;
    Ok(LickorishCheck {
        equal: lhs.value == rhs,
        components: lhs.components,
        lhs,
        rhs,
    })
}

/// Non-crossing pairing of `2n` boundary points: `0..n` on top, `n..2n` below.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Matching(Vec<u8>);

impl Matching {
    fn identity(n: usize) -> Self {
        Matching((0..2 * n).map(|k| ((k + n) % (2 * n)) as u8).collect())
    }

    fn cup_cap(n: usize, i: usize) -> Self {
        let mut m = Self::identity(n);
        m.0[i - 1] = i as u8;
        m.0[i] = (i - 1) as u8;
        m.0[n + i - 1] = (n + i) as u8;
        m.0[n + i] = (n + i - 1) as u8;
        m
    }

    /// `self` stacked above `o`, with the number of closed loops formed.
    fn compose(&self, o: &Matching) -> (Matching, usize) {
        let n = self.0.len() / 2;
        let mut out = vec![0u8; 2 * n];
        let mut seen = vec![false; n];
        // follow from an outer point until another outer point is reached
        let walk = |start_upper: bool, k: usize, seen: &mut Vec<bool>| -> (bool, usize) {
            let (mut upper, mut p) = (start_upper, k);
            loop {
                let q = if upper { self.0[p] } else { o.0[p] } as usize;
                match (upper, q < n) {
                    (true, true) => return (true, q),
                    (false, false) => return (false, q),
                    (true, false) => {
                        seen[q - n] = true;
                        upper = false;
                        p = q - n;
                    }
                    (false, true) => {
                        seen[q] = true;
                        upper = true;
                        p = q + n;
                    }
                }
            }
        };
        for k in 0..n {
            out[k] = walk(true, k, &mut seen).1 as u8;
            out[n + k] = walk(false, n + k, &mut seen).1 as u8;
        }
        let mut loops = 0;
        for k in 0..n {
            if seen[k] {
                continue;
            }
            loops += 1;
            let mut p = k;
            loop {
                seen[p] = true;
                let a = o.0[p] as usize;
                let b = self.0[a + n] as usize - n;
                seen[a] = true;
                p = b;
                if seen[p] {
                    break;
                }
            }
        }
        (Matching(out), loops)
    }

    /// Loops in the trace closure.
    fn closure_loops(&self) -> usize {
        let n = self.0.len() / 2;
        let mut seen = vec![false; 2 * n];
        let mut loops = 0;
        for s in 0..2 * n {
            if seen[s] {
                continue;
            }
            loops += 1;
            let mut p = s;
            while !seen[p] {
                seen[p] = true;
                let q = self.0[p] as usize;
                seen[q] = true;
                p = (q + n) % (2 * n);
            }
        }
        loops
    }
}

fn bracket_delta() -> LaurentPoly {
    LaurentPoly::from_terms([(2, -1), (-2, -1)])
}

/// Writhe-normalized Kauffman bracket `(−A³)^{−e(β)} ⟨β̂⟩` in the variable `A`.
pub fn bracket_oracle(w: &BraidWord, cap: usize) -> Result<LaurentPoly> {
    if w.crossings() > cap {
        return Err(Error::CapExceeded {
            crossings: w.crossings(),
            cap,
        });
    }
    let n = w.strands;
    let delta = bracket_delta();
    let mut states: HashMap<Matching, LaurentPoly> = HashMap::new();
    states.insert(Matching::identity(n), LaurentPoly::one());
    for &l in &w.letters {
        let i = l.unsigned_abs() as usize;
        let s = l.signum();
        let u = Matching::cup_cap(n, i);
        let mut next: HashMap<Matching, LaurentPoly> = HashMap::new();
        for (d, c) in states {
            let (du, loops) = d.compose(&u);
            let keep = c.shift(s);
            let smooth = &c.shift(-s) * &delta.pow(loops as u32);
            for (k, v) in [(d, keep), (du, smooth)] {
                let e = next.entry(k).or_insert_with(LaurentPoly::zero);
                *e = &*e + &v;
            }
        }
        next.retain(|_, v| !v.is_zero());
        states = next;
    }
    let mut total = LaurentPoly::zero();
    for (d, c) in states {
        total = &total + &(&c * &delta.pow(d.closure_loops() as u32 - 1));
    }
    let e = w.exponent_sum();
    let sign = if e % 2 == 0 { 1 } else { -1 };
    Ok(total.shift(-3 * e).scale(&num_rational::BigRational::from_integer(sign.into())))
}

/// `A² ↦ q`; `None` if an odd power of `A` occurs.
pub fn bracket_to_jones(f: &LaurentPoly) -> Option<LaurentPoly> {
    f.divide_exponents(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathmodel::rng;
    use rand::Rng;

    fn w(n: usize, s: &str) -> BraidWord {
        BraidWord::parse(n, s).unwrap()
    }

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn components() {
        assert_eq!(closure_components(&w(3, "")), 3);
        assert_eq!(closure_components(&w(2, "1 1 1")), 1);
        assert_eq!(closure_components(&w(3, "1 -2 1 -2")), 1);
        assert_eq!(closure_components(&w(2, "1 1")), 2);
        assert!(matches!(BraidWord::parse(2, "2"), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(BraidWord::parse(2, "0"), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn jones_examples() {
        assert!(jones(&w(1, "")).unwrap().value.is_one());
        assert!(jones(&w(2, "1")).unwrap().value.is_one());
        assert!(jones(&w(2, "-1")).unwrap().value.is_one());
        let trefoil = jones(&w(2, "1 1 1")).unwrap();
        assert_eq!(trefoil.value, lp(&[(-8, -1), (-6, 1), (-2, 1)]));
        assert_eq!(trefoil.value.to_string(), "-q^-8 + q^-6 + q^-2");
        let fig8 = jones(&w(3, "1 -2 1 -2")).unwrap();
        assert_eq!(fig8.value, lp(&[(-4, 1), (-2, -1), (0, 1), (2, -1), (4, 1)]));
    }

    #[test]
    fn kauffman_examples() {
        assert!(kauffman_special(&w(1, "")).unwrap().value.is_one());
        assert!(kauffman_special(&w(2, "1")).unwrap().value.is_one());
        let j = lp(&[(-8, -1), (-6, 1), (-2, 1)]);
        assert_eq!(kauffman_special(&w(2, "1 1 1")).unwrap().value, &j * &j);
        let c = lickorish_check(&w(3, "1 -2 1 -2")).unwrap();
        assert!(c.equal);
        assert_eq!(c.components, 1);
    }

    #[test]
    fn oracle_examples() {
        assert!(bracket_oracle(&w(1, ""), ORACLE_CAP).unwrap().is_one());
        assert!(bracket_oracle(&w(2, "1"), ORACLE_CAP).unwrap().is_one());
        assert!(bracket_oracle(&w(3, "1 -2"), ORACLE_CAP).unwrap().is_one());
        let f = bracket_oracle(&w(2, "1 1 1"), ORACLE_CAP).unwrap();
        assert_eq!(f, lp(&[(-16, -1), (-12, 1), (-4, 1)]));
        assert_eq!(bracket_to_jones(&f).unwrap(), jones(&w(2, "1 1 1")).unwrap().value);
        let long = BraidWord::new(2, vec![1; 17]).unwrap();
        assert_eq!(
            bracket_oracle(&long, ORACLE_CAP),
            Err(Error::CapExceeded { crossings: 17, cap: 16 })
        );
        // two unlinked unknots
        let two = bracket_oracle(&w(2, ""), ORACLE_CAP).unwrap();
        assert_eq!(two, bracket_delta());
    }

    #[test]
    fn matching_compose() {
        let u = Matching::cup_cap(3, 1);
        let (uu, loops) = u.compose(&u);
        assert_eq!((uu, loops), (u.clone(), 1));
        let v = Matching::cup_cap(3, 2);
        let (uvu, loops) = u.compose(&v).0.compose(&u);
        assert_eq!((uvu, loops), (u.clone(), 0));
        assert_eq!(Matching::identity(3).closure_loops(), 3);
        assert_eq!(u.closure_loops(), 2);
    }

    #[test]
    fn markov_moves_and_oracle() {
        let mut r = rng(5);
        for _ in 0..25 {
            let b = random_word(&mut r, 4, 8);
            let j = jones(&b).unwrap().value;
            assert_eq!(jones(&b.stabilize(true)).unwrap().value, j);
            assert_eq!(jones(&b.stabilize(false)).unwrap().value, j);
            let n = b.strands();
            let u: Vec<i64> = (0..3).map(|_| r.gen_range(1..n as i64) * if r.gen_bool(0.5) { 1 } else { -1 }).collect();
            let u = BraidWord::new(n, u).unwrap();
            let conj = u.concat(&b).unwrap().concat(&u.inverse()).unwrap();
            assert_eq!(jones(&conj).unwrap().value, j);
            let f = bracket_oracle(&b, ORACLE_CAP).unwrap();
            assert_eq!(bracket_to_jones(&f).unwrap(), j, "{b}");
        }
    }

    #[test]
    fn knot_parity() {
        let mut r = rng(9);
        let mut seen = 0;
        while seen < 10 {
            let b = random_word(&mut r, 4, 9);
            if closure_components(&b) != 1 {
                continue;
            }
            seen += 1;
            let v = jones(&b).unwrap().value;
            let par: Vec<i64> = v.terms().map(|(e, _)| e.rem_euclid(2)).collect();
            assert!(par.windows(2).all(|p| p[0] == p[1]), "{b}: {v}");
        }
    }
}
