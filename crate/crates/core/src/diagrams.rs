//! Young diagrams, the level sets Λ(j,ℓ) and Γ(ℓ), the `*` reflection and
//! predecessor sets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Young diagram stored by its (positive, weakly decreasing) row lengths.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Diagram {
    rows: Vec<usize>,
}

impl Diagram {
    /// Trailing zero rows are dropped; rows must be weakly decreasing.
    pub fn new(mut rows: Vec<usize>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("rows {rows:?} are not weakly decreasing")));
        }
        Ok(Diagram { rows })
    }

    pub fn empty() -> Self {
        Diagram::default()
    }

    /// Shorthand for known-good literals.
    pub fn of(rows: &[usize]) -> Self {
        Diagram::new(rows.to_vec()).expect("valid diagram literal")
    }

    /// The two-row diagram `[a, b]`, `a ≥ b`.
    pub fn two_row(a: usize, b: usize) -> Self {
        Diagram::of(&[a, b])
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Length of row `i` (0-based); zero past the last row.
    pub fn row(&self, i: usize) -> usize {
        self.rows.get(i).copied().unwrap_or(0)
    }

    /// Length of column `i` (0-based).
    pub fn col(&self, i: usize) -> usize {
        self.rows.iter().take_while(|&&r| r > i).count()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn transpose(&self) -> Diagram {
        let cols = (0..self.row(0)).map(|i| self.col(i)).collect();
        Diagram { rows: cols }
    }

    /// Diagrams obtained by adding one box, in increasing order.
    pub fn grow(&self) -> Vec<Diagram> {
        let mut out: Vec<Diagram> = (0..=self.rows.len())
            .filter(|&i| i == 0 || self.row(i) < self.row(i - 1))
            .map(|i| {
                let mut rows = self.rows.clone();
                if i == rows.len() {
                    rows.push(1);
                } else {
                    rows[i] += 1;
                }
                Diagram { rows }
            })
            .collect();
        out.sort();
        out
    }

    /// Diagrams obtained by removing one box, in increasing order.
    pub fn shrink(&self) -> Vec<Diagram> {
        let mut out: Vec<Diagram> = (0..self.rows.len())
            .filter(|&i| self.row(i) > self.row(i + 1))
            .map(|i| {
                let mut rows = self.rows.clone();
                rows[i] -= 1;
                Diagram::new(rows).unwrap()
            })
            .collect();
        out.sort();
        out
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Diagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("diagram {s:?} must be bracketed")))?;
        if inner.trim().is_empty() {
            return Ok(Diagram::empty());
        }
        let rows = inner
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("diagram {s:?}: {e}")))?;
        if rows.len() > 1 && rows.contains(&0) {
            return Err(Error::Parse(format!("diagram {s:?} has a zero row")));
        }
        Diagram::new(rows)
    }
}

impl TryFrom<Vec<usize>> for Diagram {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Diagram::new(v)
    }
}

impl From<Diagram> for Vec<usize> {
    fn from(d: Diagram) -> Self {
        d.rows
    }
}

/// The level `ℓ`: an integer or infinity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Level {
    Finite(u32),
    Infinite,
}

impl Level {
    pub const INF: Level = Level::Infinite;

    pub fn is_infinite(self) -> bool {
        matches!(self, Level::Infinite)
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Level::Finite(l) => Some(l),
            Level::Infinite => None,
        }
    }

    /// `true` when `x ≤ ℓ - k` (always for infinite `ℓ`).
    pub fn admits(self, x: usize, k: usize) -> bool {
        match self {
            Level::Finite(l) => x + k <= l as usize,
            Level::Infinite => true,
        }
    }

    /// Accepts levels valid for Λ contexts (`ℓ ≥ 3`).
    pub fn check_lambda(self) -> Result<()> {
        match self {
            Level::Finite(l) if l < 3 => Err(Error::LevelTooSmall(self)),
            _ => Ok(()),
        }
    }

    /// Accepts levels valid for Γ contexts (`ℓ ≥ 6`).
    pub fn check_gamma(self) -> Result<()> {
        match self {
            Level::Finite(l) if l < 6 => Err(Error::LevelTooSmall(self)),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(l) => write!(f, "{l}"),
            Level::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") || t == "∞" {
            return Ok(Level::Infinite);
        }
        t.parse::<u32>()
            .map(Level::Finite)
            .map_err(|e| Error::Parse(format!("level {s:?}: {e}")))
    }
}

/// `d ∈ Λ(j, ℓ)`: `d = [j-p, p]` with `0 ≤ j - 2p ≤ ℓ - 2`.
pub fn in_lambda(d: &Diagram, j: usize, ell: Level) -> bool {
    d.size() == j && d.num_rows() <= 2 && ell.admits(d.row(0) - d.row(1), 2)
}

/// The members of Λ(j, ℓ), ordered as `[j], [j-1,1], ...`.
pub fn lambda_level(j: usize, ell: Level) -> Vec<Diagram> {
    (0..=j / 2)
        .map(|p| Diagram::two_row(j - p, p))
        .filter(|d| in_lambda(d, j, ell))
        .collect()
}

pub(crate) fn gamma_core(d: &Diagram, ell: Level) -> bool {
    let cols_ok = d.col(0) + d.col(1) <= 4;
    let rows_ok = ell.admits(d.row(0) + d.row(1), 2);
    let adjoined = match ell {
        Level::Finite(l) => d.rows() == [l as usize - 2, 1, 1],
        Level::Infinite => false,
    };
    (cols_ok && rows_ok) || adjoined
}

/// `d ∈ Γ(ℓ)`; requires `ℓ ≥ 6`.
pub fn in_gamma(d: &Diagram, ell: Level) -> Result<bool> {
    ell.check_gamma()?;
    Ok(gamma_core(d, ell))
}

fn require_gamma(d: &Diagram, ell: Level) -> Result<()> {
    if in_gamma(d, ell)? {
        Ok(())
    } else {
        Err(Error::NotInGamma {
            diagram: d.clone(),
            level: ell,
        })
    }
}

/// Replaces the first column length `c` by `4 - c`.
pub fn star(d: &Diagram, ell: Level) -> Result<Diagram> {
    require_gamma(d, ell)?;
    Ok(star_unchecked(d))
}

pub(crate) fn star_unchecked(d: &Diagram) -> Diagram {
    match d.rows() {
        [] => Diagram::of(&[1, 1, 1, 1]),
        [1, 1, 1, 1] => Diagram::empty(),
        [a] => Diagram::of(&[*a, 1, 1]),
        [a, 1, 1] => Diagram::of(&[*a]),
        _ => d.clone(),
    }
}

/// `d1 ↔ d2`: the diagrams differ by exactly one box.
pub fn adjacent(d1: &Diagram, d2: &Diagram) -> bool {
    let (small, big) = match d1.size().cmp(&d2.size()) {
        std::cmp::Ordering::Less => (d1, d2),
        std::cmp::Ordering::Greater => (d2, d1),
        std::cmp::Ordering::Equal => return false,
    };
    if big.size() != small.size() + 1 {
        return false;
    }
    let n = big.num_rows().max(small.num_rows());
    let diff: usize = (0..n).map(|i| big.row(i).abs_diff(small.row(i))).sum();
    diff == 1 && (0..n).all(|i| big.row(i) >= small.row(i))
}

/// All of Γ(ℓ) with at most `max_size` boxes, sorted; `ℓ ≥ 6` or infinite.
pub fn gamma_upto(max_size: usize, ell: Level) -> Result<Vec<Diagram>> {
    ell.check_gamma()?;
    let mut out = Vec::new();
    for n in 0..=max_size {
        for rows in partitions(n, 4) {
            let d = Diagram { rows };
            if gamma_core(&d, ell) {
                out.push(d);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Γ(ℓ) in full (finite `ℓ ≥ 6`).
pub fn gamma_set(ell: Level) -> Result<Vec<Diagram>> {
    match ell {
        Level::Finite(l) => gamma_upto(l as usize, ell),
        Level::Infinite => Err(Error::UnsupportedLevel(ell)),
    }
}

/// Level `j` of the Γ(ℓ)-restricted Bratteli diagram: `λ ∈ Γ(ℓ)` with `j - |λ| ∈ 2ℕ`.
pub fn gamma_level(j: usize, ell: Level) -> Result<Vec<Diagram>> {
    Ok(gamma_upto(j, ell)?
        .into_iter()
        .filter(|d| (j - d.size()).is_multiple_of(2))
        .collect())
}

/// P(m, λ): the level-(m-1) neighbours of λ inside Γ(ℓ).
pub fn predecessors(m: usize, d: &Diagram, ell: Level) -> Result<Vec<Diagram>> {
    require_gamma(d, ell)?;
    if m < d.size() || !(m - d.size()).is_multiple_of(2) {
        return Err(Error::ParityViolation {
            length: m,
            diagram: d.clone(),
        });
    }
    let mut out: Vec<Diagram> = d
        .shrink()
        .into_iter()
        .chain(d.grow())
        .filter(|nu| nu.size() < m && (m - 1 - nu.size()).is_multiple_of(2) && gamma_core(nu, ell))
        .collect();
    out.sort();
    Ok(out)
}

/// Partitions of `n` with at most `k` parts, each as a row list.
pub fn partitions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        if k == 0 {
            return;
        }
        for part in (1..=max.min(n)).rev() {
            cur.push(part);
            rec(n - part, k - 1, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, n, &mut Vec::new(), &mut out);
    out
}
