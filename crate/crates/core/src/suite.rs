//! End-to-end verification checks, one per acceptance criterion. Shared by
//! the acceptance test target and `bmwsq verify-all`.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use crate::bijection::{forward, inverse};
use crate::diagrams::{gamma_level, lambda_level, star_unchecked, Diagram, Level};
use crate::error::Result;
use crate::images::{classify_image, enumerate_projective_group, GroupKind, Provenance};
use crate::invariants::{bracket_oracle, bracket_to_jones, jones, lickorish_check, random_word, BraidWord, ORACLE_CAP};
use crate::pathmodel::{rng, verify_tl};
use crate::squares::{dim_audit, generated_dimension, verify_bmw_relations};
use crate::tableaux::{closed_form_dim, count_osc, count_tableaux, enum_osc, enum_tableaux, Tableau2Row};

/// Outcome of one criterion.
#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    /// Checks that should hold and did not.
    pub failures: Vec<String>,
    /// Pinned expectations that exact computation contradicts.
    pub unattainable: Vec<String>,
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.unattainable.is_empty()
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "[{:>2}] {status} {} ({:.1}s): {}",
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.detail
        )?;
        for u in &self.unattainable {
            write!(f, "\n       unattainable: {u}")?;
        }
        for e in self.failures.iter().take(10) {
            write!(f, "\n       failure: {e}")?;
        }
        Ok(())
    }
}

const LEVELS: [Level; 4] = [Level::Infinite, Level::Finite(6), Level::Finite(7), Level::Finite(8)];

fn run(
    id: u8,
    title: &'static str,
    body: impl FnOnce(&mut Vec<String>, &mut Vec<String>) -> Result<String>,
) -> CriterionResult {
    let t = Instant::now();
    let mut failures = Vec::new();
    let mut unattainable = Vec::new();
    let detail = match body(&mut failures, &mut unattainable) {
        Ok(d) => d,
        Err(e) => {
            failures.push(format!("error: {e}"));
            "aborted".into()
        }
    };
    CriterionResult {
        id,
        title,
        failures,
        unattainable,
        detail,
        elapsed: t.elapsed(),
    }
}

fn tableaux_of_size(m: usize, ell: Level) -> Result<Vec<Tableau2Row>> {
    let mut out = Vec::new();
    for l in lambda_level(m, ell) {
        out.extend(enum_tableaux(&l, ell)?);
    }
    Ok(out)
}

pub fn bijection_round_trip(max_m: usize) -> CriterionResult {
    run(1, "bijection round trip", |fail, _| {
        let mut pairs = 0usize;
        let mut oscs = 0usize;
        for ell in [Level::Finite(6), Level::Finite(7), Level::Finite(8), Level::Infinite] {
            for m in 0..=max_m {
                let tabs = tableaux_of_size(m, ell)?;
                for x in &tabs {
                    for y in &tabs {
                        if x.shape().row(0) < y.shape().row(0) {
                            continue;
                        }
                        pairs += 1;
                        let o = forward(x, y, ell)?;
                        if inverse(&o, ell)? != (x.clone(), y.clone()) {
                            fail.push(format!("inverse(forward({x},{y})) at ell={ell}"));
                        }
                    }
                }
                for nu in gamma_level(m, ell)? {
                    for o in enum_osc(m, &nu, ell)? {
                        oscs += 1;
                        let (x, y) = inverse(&o, ell)?;
                        if forward(&x, &y, ell)? != o {
                            fail.push(format!("forward(inverse({o})) at ell={ell}"));
                        }
                    }
                }
            }
        }
        Ok(format!("{pairs} tableau pairs, {oscs} oscillating tableaux, m <= {max_m}"))
    })
}

fn choose2(n: &BigUint, plus: u32) -> BigUint {
    let t = n + plus;
    if t < BigUint::from(2u32) {
        BigUint::from(0u32)
    } else {
        &t * (&t - 1u32) / 2u32
    }
}

pub fn counting_identities(max_m: usize) -> CriterionResult {
    run(2, "tensor/sym/alt counts", |fail, _| {
        let mut checks = 0usize;
        let levels = (6..=10).map(Level::Finite).chain([Level::Infinite]);
        for ell in levels {
            for m in 0..=max_m {
                let lam = lambda_level(m, ell);
                for l in &lam {
                    let tl = count_tableaux(l, ell)?;
                    for u in &lam {
                        if l.row(0) < u.row(0) {
                            continue;
                        }
                        checks += 1;
                        let tu = count_tableaux(u, ell)?;
                        let nu1 = l.row(0) + u.row(0) - m;
                        if l != u {
                            let nu = Diagram::two_row(nu1, l.row(0) - u.row(0));
                            if count_osc(m, &nu, ell)? != &tl * &tu {
                                fail.push(format!("tensor {l} {u} at m={m} ell={ell}"));
                            }
                            continue;
                        }
                        let sym = Diagram::of(&[nu1]);
                        if count_osc(m, &sym, ell)? != choose2(&tl, 1) {
                            fail.push(format!("sym {l} at m={m} ell={ell}"));
                        }
                        let alt = star_unchecked(&sym);
                        let alt_count = if alt.size() > m {
                            BigUint::from(0u32)
                        } else {
                            count_osc(m, &alt, ell)?
                        };
                        if alt_count != choose2(&tl, 0) {
                            fail.push(format!("alt {l} at m={m} ell={ell}"));
                        }
                    }
                }
            }
        }
        Ok(format!("{checks} label pairs, m <= {max_m}, ell in 6..10 and inf"))
    })
}

pub fn closed_forms(max_m: usize) -> CriterionResult {
    run(3, "closed-form tableau counts", |fail, _| {
        let mut checks = 0usize;
        for ell in [Level::Finite(6), Level::Infinite] {
            for m in 0..=max_m {
                for l in lambda_level(m, ell) {
                    checks += 1;
                    let p = l.row(1);
                    if closed_form_dim(m, p, ell)? != count_tableaux(&l, ell)? {
                        fail.push(format!("{l} at ell={ell}"));
                    }
                }
            }
        }
        Ok(format!("{checks} shapes, m <= {max_m}"))
    })
}

fn report_failures(fail: &mut Vec<String>, ctx: &str, report: &std::collections::BTreeMap<String, bool>) {
    for (k, v) in report {
        if !v {
            fail.push(format!("{k} at {ctx}"));
        }
    }
}

pub fn tl_relations(max_m: usize, samples: usize) -> CriterionResult {
    run(4, "Temperley-Lieb relations and Markov trace", |fail, _| {
        let mut n = 0;
        for ell in LEVELS {
            for m in 2..=max_m {
                let r = verify_tl(m, ell, samples, 1000 + m as u64)?;
                n += r.len();
                report_failures(fail, &format!("m={m} ell={ell}"), &r);
            }
        }
        Ok(format!("{n} relation checks, m <= {max_m}, {samples} random pairs per size"))
    })
}

pub fn bmw_relations(max_m: usize, samples: usize) -> CriterionResult {
    run(5, "BMW relations on the square", |fail, _| {
        let mut n = 0;
        for ell in LEVELS {
            for m in 2..=max_m {
                let r = verify_bmw_relations(m, ell, samples, 2000 + m as u64)?;
                n += r.len();
                report_failures(fail, &format!("m={m} ell={ell}"), &r);
            }
        }
        Ok(format!("{n} relation checks incl. the q^2 control, m <= {max_m}"))
    })
}

pub fn dimension_audit(max_m: usize, max_closure: usize) -> CriterionResult {
    run(6, "dimension audit", |fail, _| {
        let mut closures = Vec::new();
        for ell in LEVELS {
            for m in 1..=max_m {
                let a = dim_audit(m, ell)?;
                if !a.consistent() {
                    fail.push(format!(
                        "m={m} ell={ell}: {} / {} / {}",
                        a.oscillating, a.from_tl_dims, a.from_blocks
                    ));
                }
                if m <= max_closure && m >= 2 {
                    let d = generated_dimension(m, ell)?;
                    if BigUint::from(d) != a.from_blocks {
                        fail.push(format!("generated dimension {d} != {} at m={m} ell={ell}", a.from_blocks));
                    }
                    closures.push(format!("{m}/{ell}:{d}"));
                }
            }
        }
        Ok(format!(
            "three totals agree for m <= {max_m}; span closure mod p: {}",
            closures.join(" ")
        ))
    })
}

fn named_words() -> Vec<(&'static str, BraidWord)> {
    let w = |n, s| BraidWord::parse(n, s).expect("valid corpus word");
    vec![
        ("unknot", w(1, "")),
        ("trefoil", w(2, "1 1 1")),
        ("mirror trefoil", w(2, "-1 -1 -1")),
        ("figure-eight", w(3, "1 -2 1 -2")),
        ("cinquefoil", w(2, "1 1 1 1 1")),
        ("three-twist", w(3, "1 1 1 2 -1 2")),
        ("hopf", w(2, "1 1")),
        ("solomon", w(2, "1 1 1 1")),
        ("unlink", w(3, "")),
        ("borromean", w(3, "1 -2 1 -2 1 -2")),
        ("stevedore", w(4, "1 1 2 -1 -3 2 -3")),
        ("6_2", w(3, "1 1 1 -2 1 -2")),
    ]
}

pub fn lickorish(random: usize) -> CriterionResult {
    run(7, "K = J^2 on braid closures", |fail, _| {
        let mut words: Vec<BraidWord> = named_words().into_iter().map(|(_, w)| w).collect();
        let mut r = rng(77);
        words.extend((0..random).map(|_| random_word(&mut r, 5, 12)));
        for w in &words {
            if !lickorish_check(w)?.equal {
                fail.push(format!("{}: {w}", w.strands()));
            }
        }
        Ok(format!("{} words ({random} random, n <= 5, length <= 12)", words.len()))
    })
}

pub fn oracle_agreement(random: usize) -> CriterionResult {
    run(8, "Jones vs bracket state sum (A^2 = q)", |fail, _| {
        let mut words: Vec<BraidWord> = named_words().into_iter().map(|(_, w)| w).collect();
        let mut r = rng(88);
        words.extend((0..random).map(|_| random_word(&mut r, 5, 10)));
        for w in &words {
            let f = bracket_oracle(w, ORACLE_CAP)?;
            match bracket_to_jones(&f) {
                Some(v) if v == jones(w)?.value => {}
                _ => fail.push(format!("{}: {w}", w.strands())),
            }
        }
        Ok(format!("{} words with <= 10 crossings", words.len()))
    })
}

pub fn finite_images(include_m5: bool) -> CriterionResult {
    run(9, "finite image orders by enumeration", |fail, unattainable| {
        let d = |s: &str| s.parse::<Diagram>().expect("valid diagram");
        let mut cases = vec![
            (3, "[2,1]", 10, 60u64),
            (4, "[2,2]", 10, 60),
            (4, "[0]", 10, 60),
            (3, "[1]", 6, 12),
            (4, "[1,1]", 6, 108),
        ];
        if include_m5 {
            cases.push((5, "[3,1,1]", 6, 25920));
        }
        let mut seen = Vec::new();
        for (m, lam, l, pinned) in cases {
            let lam = d(lam);
            let ell = Level::Finite(l);
            let e = enumerate_projective_group(m, &lam, ell, 200_000)?;
            let predicted = classify_image(m, &lam, ell)?.order();
            seen.push(format!("({m},{lam},{l})={}", e.order));
            if e.hit_cap {
                fail.push(format!("({m},{lam},{l}) hit the budget"));
                continue;
            }
            if predicted != Some(BigUint::from(e.order)) {
                fail.push(format!("({m},{lam},{l}): enumeration {} vs table {predicted:?}", e.order));
            }
            if e.order as u64 != pinned {
                unattainable.push(format!(
                    "({m},{lam},{l}) pinned at {pinned}, exact enumeration gives {}: the projective \
                     image is Sp_2(3) x| (Z_3)^2 (the Hessian group), as -1 acts non-centrally",
                    e.order
                ));
            }
        }
        Ok(seen.join(" "))
    })
}

/// Golden case-ladder values: `(m, λ, ℓ, kind, case)` with case 0 for the generic rule.
pub fn golden_classifications() -> Vec<(usize, &'static str, u32, GroupKind, u8)> {
    use GroupKind::*;
    vec![
        (5, "[5]", 7, Trivial, 1),
        (2, "[1,1]", 8, Trivial, 2),
        (3, "[1,1,1]", 7, Trivial, 3),
        (4, "[1,1,1,1]", 8, Trivial, 4),
        (5, "[1]", 6, Psp { n: 4 }, 5),
        (3, "[2,1]", 6, Psp { n: 2 }, 5),
        (4, "[2,2]", 6, Psp { n: 2 }, 6),
        (4, "[0]", 6, Psp { n: 2 }, 6),
        (6, "[4,1,1]", 6, Psp { n: 4 }, 6),
        (4, "[1,1]", 6, PspSemidirect { n: 2, rank: 2 }, 7),
        (6, "[2]", 6, PspSemidirect { n: 4, rank: 4 }, 7),
        (3, "[1]", 10, A5, 8),
        (4, "[0]", 10, A5, 9),
        (4, "[1,1]", 10, A5xPsu { d: 3 }, 10),
        (4, "[2]", 8, Psu { d: 3 }, 11),
        (3, "[1]", 8, Psu { d: 2 }, 11),
        (5, "[3,1,1]", 8, Psu { d: 4 }, 12),
        (6, "[1,1,1,1]", 7, Psu { d: 5 }, 13),
        (5, "[2,1]", 7, PsuxPsu { d1: 5, d2: 4 }, 0),
        (4, "[3,1]", 7, PsuxPsu { d1: 3, d2: 1 }, 0),
    ]
}

pub fn infinite_images(budget: usize) -> CriterionResult {
    run(10, "infinite images exceed budget; golden case table", |fail, _| {
        let mut capped = 0;
        for (m, lam, l) in [(3, "[1]", 7), (3, "[2,1]", 8), (4, "[2,2]", 7), (3, "[1]", 12)] {
            let lam: Diagram = lam.parse()?;
            let ell = Level::Finite(l);
            if classify_image(m, &lam, ell)?.is_finite() {
                fail.push(format!("({m},{lam},{l}) is predicted finite"));
            }
            if enumerate_projective_group(m, &lam, ell, budget)?.hit_cap {
                capped += 1;
            } else {
                fail.push(format!("({m},{lam},{l}) closed below {budget}"));
            }
        }
        let golden = golden_classifications();
        for (m, lam, l, kind, case) in &golden {
            let got = classify_image(*m, &lam.parse()?, Level::Finite(*l))?;
            let prov = if *case == 0 {
                Provenance::Generic
            } else {
                Provenance::Case(*case)
            };
            if got.kind != *kind || got.provenance != prov {
                fail.push(format!("({m},{lam},{l}): {} ({}) vs {kind} ({prov})", got.kind, got.provenance));
            }
        }
        Ok(format!("{capped} capped at {budget}, {} golden triples", golden.len()))
    })
}

/// All criteria; `quick` trims sizes and sample counts.
pub fn run_all(quick: bool, mut sink: impl FnMut(&CriterionResult)) -> Vec<CriterionResult> {
    let steps: Vec<Box<dyn Fn() -> CriterionResult>> = if quick {
        vec![
            Box::new(|| bijection_round_trip(6)),
            Box::new(|| counting_identities(8)),
            Box::new(|| closed_forms(14)),
            Box::new(|| tl_relations(4, 10)),
            Box::new(|| bmw_relations(3, 3)),
            Box::new(|| dimension_audit(5, 4)),
            Box::new(|| lickorish(30)),
            Box::new(|| oracle_agreement(20)),
            Box::new(|| finite_images(false)),
            Box::new(|| infinite_images(2000)),
        ]
    } else {
        vec![
            Box::new(|| bijection_round_trip(9)),
            Box::new(|| counting_identities(12)),
            Box::new(|| closed_forms(14)),
            Box::new(|| tl_relations(6, 100)),
            Box::new(|| bmw_relations(5, 5)),
            Box::new(|| dimension_audit(6, 5)),
            Box::new(|| lickorish(200)),
            Box::new(|| oracle_agreement(25)),
            Box::new(|| finite_images(true)),
            Box::new(|| infinite_images(5000)),
        ]
    };
    steps
        .iter()
        .map(|f| {
            let r = f();
            sink(&r);
            r
        })
        .collect()
}
