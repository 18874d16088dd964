//! Two-row tableaux restricted to Λ(·,ℓ) and oscillating tableaux
//! restricted to Γ(ℓ): counting, enumeration and closed forms.
//!
//! A two-row tableau is written as its step string: digit `k` at position
//! `j` means the `j`-th box goes into row `k`. So `112` is the path
//! `[] → [1] → [2] → [2,1]`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::diagrams::{adjacent, gamma_core as in_gamma_core, in_lambda, Diagram, Level};
use crate::error::{Error, Result};

/// A path in Young's lattice through two-row diagrams.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau2Row {
    steps: Vec<u8>,
}

impl Tableau2Row {
    pub fn new(steps: Vec<u8>) -> Result<Self> {
        let mut r = [0usize; 2];
        for &s in &steps {
            match s {
                1 => r[0] += 1,
                2 => r[1] += 1,
                _ => return Err(Error::Parse(format!("step {s} is not 1 or 2"))),
            }
            if r[1] > r[0] {
                return Err(Error::Parse("second row outgrows the first".into()));
            }
        }
        Ok(Tableau2Row { steps })
    }

    pub fn steps(&self) -> &[u8] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// First-row lengths λ₁^{(0)}, …, λ₁^{(m)}.
    pub fn first_rows(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut a = 0;
        out.push(0);
        for &s in &self.steps {
            if s == 1 {
                a += 1;
            }
            out.push(a);
        }
        out
    }

    /// Partial shapes λ^{(0)}, …, λ^{(m)}.
    pub fn shapes(&self) -> Vec<Diagram> {
        let mut r = [0usize; 2];
        let mut out = vec![Diagram::empty()];
        for &s in &self.steps {
            r[s as usize - 1] += 1;
            out.push(Diagram::two_row(r[0], r[1]));
        }
        out
    }

    pub fn shape(&self) -> Diagram {
        self.shapes().pop().unwrap()
    }

    /// Every partial shape lies in Λ(j, ℓ).
    pub fn is_valid_for(&self, ell: Level) -> bool {
        self.shapes()
            .iter()
            .enumerate()
            .all(|(j, d)| in_lambda(d, j, ell))
    }
}

impl fmt::Display for Tableau2Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Tableau2Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tableau2Row({self})")
    }
}

impl FromStr for Tableau2Row {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c {
                '1' => Ok(1),
                '2' => Ok(2),
                _ => Err(Error::Parse(format!("bad step {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Tableau2Row::new(steps)
    }
}

/// A path `[] = ν⁽⁰⁾ ↔ ν⁽¹⁾ ↔ … ↔ ν⁽ᵐ⁾`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OscTableau {
    shapes: Vec<Diagram>,
}

impl OscTableau {
    /// Checks adjacency, parity and (when a level is given) Γ(ℓ) membership.
    pub fn new(shapes: Vec<Diagram>, ell: Option<Level>) -> Result<Self> {
        let t = OscTableau { shapes };
        t.validate(ell)?;
        Ok(t)
    }

    pub(crate) fn new_unchecked(shapes: Vec<Diagram>) -> Self {
        OscTableau { shapes }
    }

    pub fn validate(&self, ell: Option<Level>) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidOscTableau(msg));
        match self.shapes.first() {
            Some(d) if d.is_empty() => {}
            _ => return bad("must start at []".into()),
        }
        for (j, w) in self.shapes.windows(2).enumerate() {
            if !adjacent(&w[0], &w[1]) {
                return bad(format!("{} and {} at step {} are not adjacent", w[0], w[1], j + 1));
            }
        }
        for (j, d) in self.shapes.iter().enumerate() {
            if d.size() > j || (j - d.size()) % 2 != 0 {
                return bad(format!("{d} at level {j} breaks parity"));
            }
            if let Some(ell) = ell {
                ell.check_gamma()?;
                if !in_gamma_core(d, ell) {
                    return bad(format!("{d} at level {j} is not in Gamma({ell})"));
                }
            }
        }
        Ok(())
    }

    pub fn shapes(&self) -> &[Diagram] {
        &self.shapes
    }

    /// Length `m` (number of steps).
    pub fn len(&self) -> usize {
        self.shapes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn shape(&self) -> &Diagram {
        self.shapes.last().unwrap()
    }
}

impl fmt::Display for OscTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.shapes.iter().map(|d| d.to_string()).collect();
        f.write_str(&parts.join(";"))
    }
}

impl fmt::Debug for OscTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OscTableau({self})")
    }
}

impl FromStr for OscTableau {
    type Err = Error;
    /// Parses without a level; use [`OscTableau::validate`] for Γ(ℓ).
    fn from_str(s: &str) -> Result<Self> {
        let shapes = s
            .split(';')
            .map(|p| p.parse::<Diagram>())
            .collect::<Result<Vec<_>>>()?;
        OscTableau::new(shapes, None)
    }
}

fn require_lambda(d: &Diagram, ell: Level) -> Result<()> {
    ell.check_lambda()?;
    if in_lambda(d, d.size(), ell) {
        Ok(())
    } else {
        Err(Error::NotInLambda {
            diagram: d.clone(),
            size: d.size(),
            level: ell,
        })
    }
}

fn two_row_children(d: &Diagram, ell: Level, j: usize) -> impl Iterator<Item = Diagram> + '_ {
    d.grow()
        .into_iter()
        .filter(move |c| c.num_rows() <= 2 && in_lambda(c, j + 1, ell))
}

/// |T_ℓ(λ)| by a level-by-level count.
pub fn count_tableaux(lambda: &Diagram, ell: Level) -> Result<BigUint> {
    require_lambda(lambda, ell)?;
    let m = lambda.size();
    let mut cur: HashMap<Diagram, BigUint> = HashMap::from([(Diagram::empty(), BigUint::one())]);
    for j in 0..m {
        let mut next: HashMap<Diagram, BigUint> = HashMap::new();
        for (d, c) in &cur {
            for child in two_row_children(d, ell, j) {
                if child.row(0) <= lambda.row(0) && child.row(1) <= lambda.row(1) {
                    *next.entry(child).or_insert_with(BigUint::zero) += c;
                }
            }
        }
        cur = next;
    }
    Ok(cur.remove(lambda).unwrap_or_else(BigUint::zero))
}

/// All of T_ℓ(λ) in lexicographic order of step strings.
pub fn enum_tableaux(lambda: &Diagram, ell: Level) -> Result<Vec<Tableau2Row>> {
    require_lambda(lambda, ell)?;
    let (a, b) = (lambda.row(0), lambda.row(1));
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity(a + b);
    fn rec(
        r: (usize, usize),
        target: (usize, usize),
        ell: Level,
        steps: &mut Vec<u8>,
        out: &mut Vec<Tableau2Row>,
    ) {
        if r == target {
            out.push(Tableau2Row {
                steps: steps.clone(),
            });
            return;
        }
        let j = r.0 + r.1;
        for (s, next) in [(1u8, (r.0 + 1, r.1)), (2u8, (r.0, r.1 + 1))] {
            if next.0 > target.0 || next.1 > target.1 || next.1 > next.0 {
                continue;
            }
            if !in_lambda(&Diagram::two_row(next.0, next.1), j + 1, ell) {
                continue;
            }
            steps.push(s);
            rec(next, target, ell, steps, out);
            steps.pop();
        }
    }
    rec((0, 0), (a, b), ell, &mut steps, &mut out);
    Ok(out)
}

fn require_osc_target(m: usize, lambda: &Diagram, ell: Level) -> Result<()> {
    ell.check_gamma()?;
    if !in_gamma_core(lambda, ell) {
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
    Ok(())
}

/// Γ(ℓ)-neighbours of `d`: removals first, then additions, each increasing.
fn osc_children(d: &Diagram, ell: Level) -> Vec<Diagram> {
    d.shrink()
        .into_iter()
        .chain(d.grow())
        .filter(|c| in_gamma_core(c, ell))
        .collect()
}

/// Counts at every vertex of the Γ(ℓ)-restricted Bratteli diagram up to level `m`.
pub fn osc_counts_by_level(m: usize, ell: Level) -> Result<Vec<HashMap<Diagram, BigUint>>> {
    ell.check_gamma()?;
    let mut levels = vec![HashMap::from([(Diagram::empty(), BigUint::one())])];
    for _ in 0..m {
        let mut next: HashMap<Diagram, BigUint> = HashMap::new();
        for (d, c) in levels.last().unwrap() {
            for child in osc_children(d, ell) {
                *next.entry(child).or_insert_with(BigUint::zero) += c;
            }
        }
        levels.push(next);
    }
    Ok(levels)
}

/// |O_ℓ(m, λ)|.
pub fn count_osc(m: usize, lambda: &Diagram, ell: Level) -> Result<BigUint> {
    require_osc_target(m, lambda, ell)?;
    let mut levels = osc_counts_by_level(m, ell)?;
    Ok(levels
        .pop()
        .unwrap()
        .remove(lambda)
        .unwrap_or_else(BigUint::zero))
}

/// All of O_ℓ(m, λ), depth first with removals before additions.
pub fn enum_osc(m: usize, lambda: &Diagram, ell: Level) -> Result<Vec<OscTableau>> {
    require_osc_target(m, lambda, ell)?;
    // reach[j]: diagrams at level j from which λ is reachable at level m
    let mut reach: Vec<HashSet<Diagram>> = vec![HashSet::new(); m + 1];
    reach[m].insert(lambda.clone());
    for j in (0..m).rev() {
        let mut set = HashSet::new();
        for d in &reach[j + 1] {
            for p in osc_children(d, ell) {
                if p.size() <= j && (j - p.size()) % 2 == 0 {
                    set.insert(p);
                }
            }
        }
        reach[j] = set;
    }
    let mut out = Vec::new();
    if !reach[0].contains(&Diagram::empty()) {
        return Ok(out);
    }
    fn rec(
        path: &mut Vec<Diagram>,
        m: usize,
        ell: Level,
        reach: &[HashSet<Diagram>],
        out: &mut Vec<OscTableau>,
    ) {
        let j = path.len() - 1;
        if j == m {
            out.push(OscTableau::new_unchecked(path.clone()));
            return;
        }
        for c in osc_children(path.last().unwrap(), ell) {
            if reach[j + 1].contains(&c) {
                path.push(c);
                rec(path, m, ell, reach, out);
                path.pop();
            }
        }
    }
    rec(&mut vec![Diagram::empty()], m, ell, &reach, &mut out);
    Ok(out)
}

/// Binomial coefficient, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from((n - i) as u64) / BigUint::from((i + 1) as u64);
    }
    acc
}

/// Closed forms for |T_ℓ([m-p, p])| at ℓ = ∞ and ℓ = 6.
pub fn closed_form_dim(m: usize, p: usize, ell: Level) -> Result<BigUint> {
    if p > m {
        return Err(Error::Invalid(format!("p = {p} exceeds m = {m}")));
    }
    let d = Diagram::two_row(m - p, p.min(m - p));
    if 2 * p > m || !in_lambda(&d, m, ell) {
        return Err(Error::NotInLambda {
            diagram: Diagram::new(vec![m - p, p]).unwrap_or(d),
            size: m,
            level: ell,
        });
    }
    match ell {
        Level::Infinite => Ok(binomial(m as i64, p as i64) - binomial(m as i64, p as i64 - 1)),
        Level::Finite(6) => {
            if m == 0 {
                return Ok(BigUint::one());
            }
            let t = BigUint::from(3u32).pow(((m - 1) / 2) as u32);
            Ok(match m - 2 * p {
                0 | 1 => (t + 1u32) / 2u32,
                2 => t,
                _ => (t - 1u32) / 2u32,
            })
        }
        other => Err(Error::UnsupportedLevel(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    const INF: Level = Level::Infinite;
    const L6: Level = Level::Finite(6);

    #[test]
    fn step_convention() {
        let t: Tableau2Row = "112".parse().unwrap();
        assert_eq!(t.first_rows(), vec![0, 1, 2, 2]);
        assert_eq!(t.shape(), d("[2,1]"));
        assert!("21".parse::<Tableau2Row>().is_err());
        assert!("13".parse::<Tableau2Row>().is_err());
    }

    #[test]
    fn tableau_examples() {
        assert_eq!(count_tableaux(&d("[2,1]"), INF).unwrap(), n(2));
        assert_eq!(count_tableaux(&d("[3,2]"), L6).unwrap(), n(5));
        let one: Vec<String> = enum_tableaux(&d("[1,1]"), L6)
            .unwrap()
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(one, ["12"]);
        let two: Vec<String> = enum_tableaux(&d("[2,1]"), INF)
            .unwrap()
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(two, ["112", "121"]);
        // at ℓ = 3 the only path alternates rows
        let l3: Vec<String> = enum_tableaux(&d("[2,2]"), Level::Finite(3))
            .unwrap()
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(l3, ["1212"]);
        assert_eq!(count_tableaux(&d("[3,3]"), Level::Finite(3)).unwrap(), n(1));
        assert!(matches!(
            count_tableaux(&d("[6,1]"), L6),
            Err(Error::NotInLambda { .. })
        ));
    }

    #[test]
    fn osc_examples() {
        assert_eq!(count_osc(2, &d("[1,1]"), INF).unwrap(), n(1));
        assert_eq!(count_osc(3, &d("[1]"), INF).unwrap(), n(3));
        assert_eq!(count_osc(3, &d("[1,1,1]"), INF).unwrap(), n(1));
        assert_eq!(count_osc(0, &d("[]"), L6).unwrap(), n(1));
        let one: Vec<String> = enum_osc(1, &d("[1]"), L6)
            .unwrap()
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(one, ["[];[1]"]);
        let back: Vec<String> = enum_osc(2, &d("[]"), INF)
            .unwrap()
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(back, ["[];[1];[]"]);
        let four = enum_osc(4, &d("[]"), INF).unwrap();
        let seconds: Vec<String> = four.iter().map(|t| t.shapes()[2].to_string()).collect();
        assert_eq!(seconds, ["[]", "[1,1]", "[2]"]);
        assert!(matches!(
            count_osc(3, &d("[2]"), INF),
            Err(Error::ParityViolation { .. })
        ));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_dim(4, 2, INF).unwrap(), n(2));
        assert_eq!(closed_form_dim(4, 1, L6).unwrap(), n(3));
        assert_eq!(closed_form_dim(5, 1, L6).unwrap(), n(4));
        assert!(matches!(
            closed_form_dim(4, 1, Level::Finite(7)),
            Err(Error::UnsupportedLevel(_))
        ));
        assert!(matches!(
            closed_form_dim(7, 0, L6),
            Err(Error::NotInLambda { .. })
        ));
    }

    /// Brute force over all step strings / all ± box walks.
    fn brute_tableaux(lambda: &Diagram, ell: Level) -> usize {
        let m = lambda.size();
        (0..1u32 << m)
            .filter(|mask| {
                let steps: Vec<u8> = (0..m).map(|i| if mask >> i & 1 == 1 { 2 } else { 1 }).collect();
                Tableau2Row::new(steps)
                    .map(|t| t.shape() == *lambda && t.is_valid_for(ell))
                    .unwrap_or(false)
            })
            .count()
    }

    fn brute_osc(m: usize, ell: Level) -> HashMap<Diagram, usize> {
        let mut paths: Vec<Vec<Diagram>> = vec![vec![Diagram::empty()]];
        for _ in 0..m {
            let mut next = Vec::new();
            for p in &paths {
                let last = p.last().unwrap();
                for c in last.shrink().into_iter().chain(last.grow()) {
                    let mut q = p.clone();
                    q.push(c);
                    next.push(q);
                }
            }
            paths = next;
        }
        let mut out = HashMap::new();
        for p in paths {
            if OscTableau::new(p.clone(), Some(ell)).is_ok() {
                *out.entry(p.last().unwrap().clone()).or_insert(0) += 1;
            }
        }
        out
    }

    #[test]
    fn counts_match_brute_force() {
        for ell in [L6, Level::Finite(7), Level::Finite(8), INF] {
            for m in 0..=10 {
                for lam in crate::diagrams::lambda_level(m, ell) {
                    let c = count_tableaux(&lam, ell).unwrap();
                    assert_eq!(c, n(brute_tableaux(&lam, ell) as u64));
                    assert_eq!(c, n(enum_tableaux(&lam, ell).unwrap().len() as u64));
                }
            }
            for m in 0..=7 {
                let brute = brute_osc(m, ell);
                for lam in crate::diagrams::gamma_level(m, ell).unwrap() {
                    let c = count_osc(m, &lam, ell).unwrap();
                    let e = enum_osc(m, &lam, ell).unwrap();
                    assert_eq!(c, n(e.len() as u64));
                    assert_eq!(c, n(*brute.get(&lam).unwrap_or(&0) as u64), "{lam} m={m}");
                }
            }
        }
    }

    #[test]
    fn enumeration_is_sorted_and_valid() {
        let ts = enum_tableaux(&d("[4,3]"), INF).unwrap();
        assert!(ts.windows(2).all(|w| w[0].to_string() < w[1].to_string()));
        for o in enum_osc(6, &d("[2]"), Level::Finite(7)).unwrap() {
            o.validate(Some(Level::Finite(7))).unwrap();
        }
    }
}
