//! The bijection between pairs of two-row tableaux `(t_λ, t_μ)` with
//! `λ₁ ≥ μ₁` and Γ(ℓ)-restricted oscillating tableaux.
//!
//! At level `j` the pair `(λ^{(j)}, μ^{(j)})` is sent to `[f, g]` with
//! `f = λ₁+μ₁-j`, `g = |λ₁-μ₁|`, starred when the sign of `λ₁-μ₁` at the
//! last level where it is nonzero is negative.

use std::cmp::Ordering;

use crate::diagrams::{star_unchecked, Diagram, Level};
use crate::error::{Error, Result};
use crate::tableaux::{OscTableau, Tableau2Row};

fn check_pair(t1: &Tableau2Row, t2: &Tableau2Row, ell: Level) -> Result<()> {
    if t1.len() != t2.len() {
        return Err(Error::ShapeMismatch(t1.len(), t2.len()));
    }
    for t in [t1, t2] {
        if !t.is_valid_for(ell) {
            return Err(Error::NotInLambda {
                diagram: t.shape(),
                size: t.len(),
                level: ell,
            });
        }
    }
    let (a, b) = (t1.shape().row(0), t2.shape().row(0));
    if a < b {
        return Err(Error::OrderViolation(a, b));
    }
    Ok(())
}

/// Per-level signs `s^{(j)}`, `j = 0..=m`.
pub fn sign_track(t1: &Tableau2Row, t2: &Tableau2Row) -> Vec<i8> {
    let (a, b) = (t1.first_rows(), t2.first_rows());
    let mut s = 1i8;
    a.iter()
        .zip(&b)
        .map(|(x, y)| {
            match x.cmp(y) {
                Ordering::Greater => s = 1,
                Ordering::Less => s = -1,
                Ordering::Equal => {}
            }
            s
        })
        .collect()
}

/// `(t_λ, t_μ) ↦ o`.
pub fn forward(t1: &Tableau2Row, t2: &Tableau2Row, ell: Level) -> Result<OscTableau> {
    ell.check_gamma()?;
    check_pair(t1, t2, ell)?;
    let (a, b) = (t1.first_rows(), t2.first_rows());
    let signs = sign_track(t1, t2);
    let shapes: Vec<Diagram> = (0..a.len())
        .map(|j| {
            let f = a[j] + b[j] - j;
            let g = a[j].abs_diff(b[j]);
            let d = Diagram::two_row(f, g);
            if signs[j] < 0 {
                star_unchecked(&d)
            } else {
                d
            }
        })
        .collect();
    let o = OscTableau::new_unchecked(shapes);
    if let Err(e) = o.validate(Some(ell)) {
        panic!("bijection left Gamma({ell}) or broke adjacency on ({t1}, {t2}): {e}");
    }
    Ok(o)
}

/// `o ↦ (t_λ, t_μ)`; signs of two-row levels are read from the next level
/// whose shape does not have exactly two rows.
pub fn inverse(o: &OscTableau, ell: Level) -> Result<(Tableau2Row, Tableau2Row)> {
    ell.check_gamma()?;
    o.validate(Some(ell))?;
    let shapes = o.shapes();
    let m = o.len();
    let mut signs = vec![1i8; m + 1];
    let mut ahead = 1i8;
    for j in (0..=m).rev() {
        match shapes[j].num_rows() {
            0 | 1 => ahead = 1,
            2 => {}
            _ => ahead = -1,
        }
        signs[j] = ahead;
    }
    let mut a = Vec::with_capacity(m + 1);
    let mut b = Vec::with_capacity(m + 1);
    for (j, d) in shapes.iter().enumerate() {
        let nu = if d.num_rows() >= 3 { star_unchecked(d) } else { d.clone() };
        let (n1, n2) = (nu.row(0) as i64, nu.row(1) as i64);
        let s = signs[j] as i64;
        let (x, y) = (j as i64 + n1 + s * n2, j as i64 + n1 - s * n2);
        if x % 2 != 0 || y % 2 != 0 {
            return Err(Error::InvalidOscTableau(format!("non-integral rows at level {j}")));
        }
        a.push((x / 2) as usize);
        b.push((y / 2) as usize);
    }
    let to_steps = |rows: &[usize]| -> Result<Tableau2Row> {
        let steps = rows
            .windows(2)
            .map(|w| match w[1] as i64 - w[0] as i64 {
                1 => Ok(1u8),
                0 => Ok(2u8),
                _ => Err(Error::InvalidOscTableau("first row jumps".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        let t = Tableau2Row::new(steps).map_err(|e| Error::InvalidOscTableau(e.to_string()))?;
        if !t.is_valid_for(ell) {
            return Err(Error::InvalidOscTableau(format!("{t} leaves Lambda({ell})")));
        }
        Ok(t)
    };
    Ok((to_steps(&a)?, to_steps(&b)?))
}

/// Lexicographic order on `(λ₁^{(m)}, λ₁^{(m-1)}, …, λ₁^{(1)})`.
pub fn compare(t1: &Tableau2Row, t2: &Tableau2Row) -> Result<Ordering> {
    if t1.len() != t2.len() {
        return Err(Error::ShapeMismatch(t1.len(), t2.len()));
    }
    let (a, b) = (t1.first_rows(), t2.first_rows());
    Ok(a.iter().rev().cmp(b.iter().rev()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{gamma_level, lambda_level};
    use crate::tableaux::{binomial, count_osc, count_tableaux, enum_osc, enum_tableaux};
    use num_bigint::BigUint;

    fn t(s: &str) -> Tableau2Row {
        s.parse().unwrap()
    }

    fn o(s: &str) -> OscTableau {
        s.parse().unwrap()
    }

    const INF: Level = Level::Infinite;
    const L6: Level = Level::Finite(6);

    #[test]
    fn forward_examples() {
        assert_eq!(forward(&t("11"), &t("12"), L6).unwrap().to_string(), "[];[1];[1,1]");
        assert_eq!(forward(&t("121"), &t("121"), L6).unwrap().to_string(), "[];[1];[];[1]");
        assert_eq!(
            forward(&t("121"), &t("112"), INF).unwrap().to_string(),
            "[];[1];[1,1];[1,1,1]"
        );
        assert_eq!(forward(&t("12"), &t("11"), L6), Err(Error::OrderViolation(1, 2)));
        assert_eq!(forward(&t("1"), &t("11"), L6), Err(Error::ShapeMismatch(1, 2)));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse(&o("[];[1];[1,1];[1,1,1]"), L6).unwrap(), (t("121"), t("112")));
        assert_eq!(inverse(&o("[];[1];[];[1]"), L6).unwrap(), (t("121"), t("121")));
        assert_eq!(inverse(&o("[];[1];[1,1]"), L6).unwrap(), (t("11"), t("12")));
        assert!(inverse(&o("[];[1];[2];[3]"), Level::Finite(6)).is_ok());
        assert!(matches!(
            inverse(&o("[];[1];[2];[3];[4];[5]"), L6),
            Err(Error::InvalidOscTableau(_))
        ));
    }

    #[test]
    fn compare_examples() {
        assert_eq!(compare(&t("121"), &t("112")).unwrap(), Ordering::Less);
        assert_eq!(compare(&t("112"), &t("112")).unwrap(), Ordering::Equal);
        assert_eq!(compare(&t("111"), &t("121")).unwrap(), Ordering::Greater);
        assert!(compare(&t("1"), &t("11")).is_err());
    }

    #[test]
    fn round_trips_and_shape_law() {
        for ell in [L6, Level::Finite(7), Level::Finite(8), INF] {
            for m in 0..=9 {
                let tabs: Vec<Tableau2Row> = lambda_level(m, ell)
                    .iter()
                    .flat_map(|l| enum_tableaux(l, ell).unwrap())
                    .collect();
                for x in &tabs {
                    for y in &tabs {
                        let (l, u) = (x.shape(), y.shape());
                        if l.row(0) < u.row(0) {
                            continue;
                        }
                        let out = forward(x, y, ell).unwrap();
                        assert_eq!(&inverse(&out, ell).unwrap(), &(x.clone(), y.clone()));
                        let expect = if l.row(0) > u.row(0) {
                            Diagram::two_row(l.row(0) + u.row(0) - m, l.row(0) - u.row(0))
                        } else {
                            let d = Diagram::of(&[2 * l.row(0) - m]);
                            match compare(x, y).unwrap() {
                                Ordering::Less => star_unchecked(&d),
                                _ => d,
                            }
                        };
                        assert_eq!(out.shape(), &expect);
                    }
                }
                for nu in gamma_level(m, ell).unwrap() {
                    for osc in enum_osc(m, &nu, ell).unwrap() {
                        let (x, y) = inverse(&osc, ell).unwrap();
                        assert_eq!(forward(&x, &y, ell).unwrap(), osc);
                    }
                }
            }
        }
    }

    #[test]
    fn counting_identities() {
        let tri = |n: &BigUint, k: i64| {
            // C(T + k, 2) for k ∈ {0, 1}
            let t = n.clone() + BigUint::from(k as u64);
            if t < BigUint::from(2u32) {
                BigUint::from(0u32)
            } else {
                &t * (&t - 1u32) / 2u32
            }
        };
        for ell in [6, 7, 8, 9, 10].map(Level::Finite).into_iter().chain([INF]) {
            for m in 0..=12usize {
                let lam = lambda_level(m, ell);
                for l in &lam {
                    for u in &lam {
                        if l.row(0) < u.row(0) {
                            continue;
                        }
                        let tl = count_tableaux(l, ell).unwrap();
                        let tu = count_tableaux(u, ell).unwrap();
                        let nu1 = l.row(0) + u.row(0) - m;
                        if l != u {
                            let nu = Diagram::two_row(nu1, l.row(0) - u.row(0));
                            assert_eq!(count_osc(m, &nu, ell).unwrap(), &tl * &tu);
                        } else {
                            let sym = Diagram::of(&[nu1]);
                            assert_eq!(count_osc(m, &sym, ell).unwrap(), tri(&tl, 1));
                            let alt = star_unchecked(&sym);
                            // [1^4] does not fit below level 4
                            let alt_count = if alt.size() > m {
                                BigUint::from(0u32)
                            } else {
                                count_osc(m, &alt, ell).unwrap()
                            };
                            assert_eq!(alt_count, tri(&tl, 0));
                        }
                    }
                }
            }
        }
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
    }
}
