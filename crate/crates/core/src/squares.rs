//! The symmetric square of the Temperley-Lieb path model and the BMW
//! generators `G̃_i = q(g_i⊗g_i)`, `Ẽ_i = x(e_i⊗e_i)` acting on it.
//!
//! An element `a⊗a` is stored on the invariant summands of `V⊗V`: the tensor
//! products `V_s⊗V_t` (`s < t`) and the symmetric and exterior squares of each
//! `V_s`. Summands are labelled by diagrams of Γ(ℓ).

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::Serialize;

use crate::coeff::{
    prime_congruent_one, qint, Field, Fp, Generic, ModPrime, RationalFunction, RootOfUnity,
};
use crate::diagrams::{gamma_level, lambda_level, star_unchecked, Diagram, Level};
use crate::error::{Error, Result};
use crate::linalg::{BlockMatrix, Matrix};
use crate::pathmodel::{cached_model, evaluate, random_element, rng, Gen, RelationReport, TlModel};
use crate::tableaux::{count_osc, count_tableaux};

/// Which piece of `V⊗V` a summand comes from; indices are second-row lengths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Source {
    Tensor { s: usize, t: usize },
    Sym { s: usize },
    Alt { s: usize },
}

impl std::fmt::Display for Source {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Source::Tensor { s, t } => write!(f, "({s},{t})"),
            Source::Sym { s } => write!(f, "({s},sym)"),
            Source::Alt { s } => write!(f, "({s},alt)"),
        }
    }
}

/// Γ(ℓ) label of a summand.
pub fn block_label(m: usize, ell: Level, source: Source) -> Result<Diagram> {
    let check = |s: usize| -> Result<()> {
        if 2 * s > m {
            return Err(Error::Invalid(format!("no two-row diagram of size {m} with second row {s}")));
        }
        let d = Diagram::two_row(m - s, s);
        if !lambda_level(m, ell).contains(&d) {
            return Err(Error::NotInLambda {
                diagram: d,
                size: m,
                level: ell,
            });
        }
        Ok(())
    };
    Ok(match source {
        Source::Tensor { s, t } => {
            check(s)?;
            check(t)?;
            let (s, t) = (s.min(t), s.max(t));
            Diagram::two_row(m - s - t, t - s)
        }
        Source::Sym { s } => {
            check(s)?;
            Diagram::of(&[m - 2 * s])
        }
        Source::Alt { s } => {
            check(s)?;
            star_unchecked(&Diagram::of(&[m - 2 * s]))
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareBlock {
    pub label: Diagram,
    pub source: Source,
    pub dim: usize,
}

/// `ℂ`-span of `{a⊗a}` inside `T_m⊗T_m`, with the BMW generators.
pub struct SquareRep<F: Field> {
    tl: Arc<TlModel<F>>,
    blocks: Vec<SquareBlock>,
    gt: Vec<BlockMatrix<F>>,
    gt_inv: Vec<BlockMatrix<F>>,
    et: Vec<BlockMatrix<F>>,
    weights: Vec<F>,
    q: F,
    x: F,
    r: F,
}

impl<F: Field> SquareRep<F> {
    pub fn from_model(tl: Arc<TlModel<F>>) -> Result<Self> {
        let m = tl.strands();
        let ell = tl.level();
        ell.check_gamma()?;
        let idx: Vec<usize> = tl.labels().iter().map(|l| l.row(1)).collect();
        let dims = tl.dims();
        let mut sources = Vec::new();
        for (a, &s) in idx.iter().enumerate() {
            sources.push((Source::Sym { s }, a, a));
            if dims[a] > 1 {
                sources.push((Source::Alt { s }, a, a));
            }
            for (b, &t) in idx.iter().enumerate() {
                if s < t {
                    sources.push((Source::Tensor { s, t }, a, b));
                }
            }
        }
        let w = tl.weights();
        let two = tl.zero().from_int_like(2);
        let mut placed: Vec<(SquareBlock, F, usize, usize)> = sources
            .into_iter()
            .map(|(source, a, b)| {
                let dim = match source {
                    Source::Tensor { .. } => dims[a] * dims[b],
                    Source::Sym { .. } => dims[a] * (dims[a] + 1) / 2,
                    Source::Alt { .. } => dims[a] * (dims[a] - 1) / 2,
                };
                let weight = match source {
                    Source::Tensor { .. } => two.mul(&w[a]).mul(&w[b]),
                    _ => w[a].mul(&w[a]),
                };
                let label = block_label(m, ell, source)?;
                Ok((SquareBlock { label, source, dim }, weight, a, b))
            })
            .collect::<Result<_>>()?;
        placed.sort_by(|x, y| x.0.label.cmp(&y.0.label));
        let lift = |f: RationalFunction| tl.scalar(&f);
        let q = lift(RationalFunction::q_pow(1))?;
        let x = lift(qint(2).pow(2)?)?;
        let r = lift(RationalFunction::q_pow(3))?;
        let qinv = q.inv()?;
        let mut rep = SquareRep {
            blocks: placed.iter().map(|p| p.0.clone()).collect(),
            weights: placed.iter().map(|p| p.1.clone()).collect(),
            gt: Vec::new(),
            gt_inv: Vec::new(),
            et: Vec::new(),
            tl: tl.clone(),
            q: q.clone(),
            x: x.clone(),
            r,
        };
        for i in 1..m {
            rep.gt.push(rep.diagonal(tl.g(i)?).scale(&q));
            rep.gt_inv.push(rep.diagonal(tl.g_inv(i)?).scale(&qinv));
            rep.et.push(rep.diagonal(tl.e(i)?).scale(&x));
        }
        Ok(rep)
    }

    /// `a ↦ a⊗a` restricted to the summands.
    pub fn diagonal(&self, a: &BlockMatrix<F>) -> BlockMatrix<F> {
        let tl_blocks = a.blocks();
        let by_s = |s: usize| {
            &tl_blocks
                .iter()
                .find(|(l, _)| l.row(1) == s)
                .expect("summand index comes from the model")
                .1
        };
        BlockMatrix::new(
            self.blocks
                .iter()
                .map(|b| {
                    let mat = match b.source {
                        Source::Tensor { s, t } => by_s(s).kron(by_s(t)),
                        Source::Sym { s } => by_s(s).sym_square(),
                        Source::Alt { s } => by_s(s).alt_square(),
                    };
                    (b.label.clone(), mat)
                })
                .collect(),
        )
    }

    pub fn model(&self) -> &TlModel<F> {
        &self.tl
    }

    pub fn strands(&self) -> usize {
        self.tl.strands()
    }

    pub fn blocks(&self) -> &[SquareBlock] {
        &self.blocks
    }

    pub fn q(&self) -> &F {
        &self.q
    }

    /// `x = (q+q^{-1})²`.
    pub fn x(&self) -> &F {
        &self.x
    }

    /// `r = q³`.
    pub fn r(&self) -> &F {
        &self.r
    }

    fn check_index(&self, i: usize) -> Result<usize> {
        if i == 0 || i >= self.strands() {
            return Err(Error::IndexOutOfRange {
                index: i as i64,
                strands: self.strands(),
            });
        }
        Ok(i - 1)
    }

    pub fn g(&self, i: usize) -> Result<&BlockMatrix<F>> {
        Ok(&self.gt[self.check_index(i)?])
    }

    pub fn g_inv(&self, i: usize) -> Result<&BlockMatrix<F>> {
        Ok(&self.gt_inv[self.check_index(i)?])
    }

    pub fn e(&self, i: usize) -> Result<&BlockMatrix<F>> {
        Ok(&self.et[self.check_index(i)?])
    }

    pub fn gen(&self, x: Gen) -> Result<&BlockMatrix<F>> {
        match x {
            Gen::G(i) => self.g(i),
            Gen::GInv(i) => self.g_inv(i),
            Gen::E(i) => self.e(i),
        }
    }

    pub fn identity(&self) -> BlockMatrix<F> {
        BlockMatrix::new(
            self.blocks
                .iter()
                .map(|b| (b.label.clone(), Matrix::identity(b.dim, self.tl.zero())))
                .collect(),
        )
    }

    /// `Φ(β)` for a braid word of signed generator indices.
    pub fn represent_word(&self, letters: &[i64]) -> Result<BlockMatrix<F>> {
        let mut acc = self.identity();
        for &l in letters {
            if l == 0 || l.unsigned_abs() as usize >= self.strands() {
                return Err(Error::IndexOutOfRange {
                    index: l,
                    strands: self.strands(),
                });
            }
            acc = acc.mul(self.gen(Gen::from_braid(l))?);
        }
        Ok(acc)
    }

    /// The squared trace `tr²`, i.e. `tr⊗tr` restricted to the summands.
    pub fn trace2(&self, a: &BlockMatrix<F>) -> F {
        a.weighted_trace(&self.weights)
    }

    pub fn element(&self, x: &crate::pathmodel::Element) -> Result<BlockMatrix<F>> {
        evaluate(&self.identity(), |g| self.gen(g), x)
    }
}

/// Square representation over `Q(q)`.
pub fn square_generic(m: usize) -> Result<SquareRep<RationalFunction>> {
    SquareRep::from_model(cached_model(m, Level::Infinite, Generic)?)
}

/// Square representation at `q = e^{πi/ℓ}`.
pub fn square_root(m: usize, ell: u32) -> Result<SquareRep<crate::coeff::Cyclotomic>> {
    Level::Finite(ell).check_gamma()?;
    SquareRep::from_model(cached_model(m, Level::Finite(ell), RootOfUnity { ell, sign: 1 })?)
}

fn cubic<F: Field>(sq: &SquareRep<F>, g: &BlockMatrix<F>) -> bool {
    let id = sq.identity();
    let rinv = sq.r().inv().expect("r is a unit");
    let qinv = sq.q().inv().expect("q is a unit");
    g.sub(&id.scale(&rinv))
        .mul(&g.sub(&id.scale(sq.q())))
        .mul(&g.add(&id.scale(&qinv)))
        .is_zero()
}

/// Relation report for the BMW generators realized on the square.
pub fn verify_square<F: Field>(sq: &SquareRep<F>, samples: usize, seed: u64) -> Result<RelationReport> {
    let m = sq.strands();
    let mut rep = RelationReport::new();
    let put = |r: &mut RelationReport, k: &str, v: bool| {
        let e = r.entry(k.to_string()).or_insert(true);
        *e &= v;
    };
    let id = sq.identity();
    let (q, x, r) = (sq.q().clone(), sq.x().clone(), sq.r().clone());
    let qinv = q.inv()?;
    let rinv = r.inv()?;
    let xinv = x.inv()?;
    let one = q.one_like();
    for k in ["R1", "E", "R2", "B1", "B2", "control_fails_R1"] {
        rep.insert(k.into(), true);
    }
    for i in 1..m {
        let (g, gi, e) = (sq.g(i)?, sq.g_inv(i)?, sq.e(i)?);
        put(&mut rep, "R1", cubic(sq, g));
        put(&mut rep, "E", g.sub(gi) == id.sub(e).scale(&q.sub(&qinv)));
        put(&mut rep, "inverse", g.mul(gi) == id);
        let wrong = sq.diagonal(sq.model().g(i)?).scale(&q.mul(&q));
        put(&mut rep, "control_fails_R1", !cubic(sq, &wrong));
        for j in [i.wrapping_sub(1), i + 1] {
            if j == 0 || j >= m {
                continue;
            }
            put(&mut rep, "R2", e.mul(sq.g(j)?).mul(e) == e.scale(&r));
            put(&mut rep, "R2", e.mul(sq.g_inv(j)?).mul(e) == e.scale(&rinv));
            if j == i + 1 {
                let gj = sq.g(j)?;
                put(&mut rep, "B1", g.mul(gj).mul(g) == gj.mul(g).mul(gj));
            }
        }
        for j in i + 2..m {
            put(&mut rep, "B2", g.mul(sq.g(j)?) == sq.g(j)?.mul(g));
        }
    }
    rep.insert("trace_unit".into(), sq.trace2(&id) == one);
    if m >= 2 {
        let mut te = true;
        let mut tg = true;
        for i in 1..m {
            te &= sq.trace2(sq.e(i)?) == xinv;
            tg &= sq.trace2(sq.g(i)?) == r.mul(&xinv);
            tg &= sq.trace2(sq.g_inv(i)?) == rinv.mul(&xinv);
        }
        rep.insert("trace_e".into(), te);
        rep.insert("trace_g".into(), tg);
    }
    let mut rng = rng(seed);
    let mut cyclic = true;
    let mut markov = true;
    for _ in 0..samples {
        let a = random_element(&mut rng, m.saturating_sub(1), 2, 3);
        let b = random_element(&mut rng, m.saturating_sub(1), 2, 3);
        let (ma, mb) = (sq.element(&a)?, sq.element(&b)?);
        cyclic &= sq.trace2(&ma.mul(&mb)) == sq.trace2(&mb.mul(&ma));
        if m >= 2 {
            let a = random_element(&mut rng, m - 2, 2, 3);
            let b = random_element(&mut rng, m - 2, 2, 3);
            let (ma, mb) = (sq.element(&a)?, sq.element(&b)?);
            let ab = sq.trace2(&ma.mul(&mb));
            for chi in [sq.g(m - 1)?, sq.g_inv(m - 1)?, sq.e(m - 1)?] {
                markov &= sq.trace2(&ma.mul(chi).mul(&mb)) == sq.trace2(chi).mul(&ab);
            }
        }
    }
    rep.insert("trace_cyclic".into(), cyclic);
    if m >= 2 {
        rep.insert("trace_markov".into(), markov);
    }
    Ok(rep)
}

/// Relation report at `(m, ℓ)`, with `q = e^{πi/ℓ}` at finite ℓ.
pub fn verify_bmw_relations(m: usize, ell: Level, samples: usize, seed: u64) -> Result<RelationReport> {
    match ell {
        Level::Infinite => verify_square(&square_generic(m)?, samples, seed),
        Level::Finite(l) => verify_square(&square_root(m, l)?, samples, seed),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditRow {
    pub label: Diagram,
    pub source: Source,
    pub dim: usize,
    pub count_osc: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimAudit {
    pub m: usize,
    pub ell: Level,
    /// Σ_ν |O_ℓ(m,ν)|².
    pub oscillating: BigUint,
    /// Σ_{s<t} d_s²d_t² + Σ_s (C(d_s+1,2)² + C(d_s,2)²).
    pub from_tl_dims: BigUint,
    /// Σ over the computed summands of dim².
    pub from_blocks: BigUint,
    pub blocks: Vec<AuditRow>,
}

impl DimAudit {
    pub fn consistent(&self) -> bool {
        self.oscillating == self.from_tl_dims
            && self.from_tl_dims == self.from_blocks
            && self.blocks.iter().all(|b| BigUint::from(b.dim) == b.count_osc)
    }
}

/// Summand layout of the square without building any matrices.
pub fn square_layout(m: usize, ell: Level) -> Result<Vec<SquareBlock>> {
    ell.check_gamma()?;
    let labels = lambda_level(m, ell);
    let dims: Vec<usize> = labels
        .iter()
        .map(|l| {
            usize::try_from(count_tableaux(l, ell)?)
                .map_err(|_| Error::Invalid("dimension overflow".into()))
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (a, la) in labels.iter().enumerate() {
        let s = la.row(1);
        let d = dims[a];
        out.push((Source::Sym { s }, d * (d + 1) / 2));
        if d > 1 {
            out.push((Source::Alt { s }, d * (d - 1) / 2));
        }
        for (b, lb) in labels.iter().enumerate() {
            if s < lb.row(1) {
                out.push((Source::Tensor { s, t: lb.row(1) }, d * dims[b]));
            }
        }
    }
    let mut blocks = out
        .into_iter()
        .map(|(source, dim)| {
            Ok(SquareBlock {
                label: block_label(m, ell, source)?,
                source,
                dim,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    blocks.sort_by(|x, y| x.label.cmp(&y.label));
    Ok(blocks)
}

pub fn dim_audit(m: usize, ell: Level) -> Result<DimAudit> {
    let blocks = square_layout(m, ell)?;
    let mut oscillating = BigUint::from(0u32);
    for nu in gamma_level(m, ell)? {
        let c = count_osc(m, &nu, ell)?;
        oscillating += &c * &c;
    }
    let dims: Vec<BigUint> = lambda_level(m, ell)
        .iter()
        .map(|l| count_tableaux(l, ell))
        .collect::<Result<_>>()?;
    let mut from_tl_dims = BigUint::from(0u32);
    for (a, d) in dims.iter().enumerate() {
        let sym = binomial_big(&(d + 1u32));
        let alt = binomial_big(d);
        from_tl_dims += &sym * &sym + &alt * &alt;
        for e in &dims[a + 1..] {
            from_tl_dims += d * d * e * e;
        }
    }
    let from_blocks = blocks
        .iter()
        .map(|b| BigUint::from(b.dim * b.dim))
        .sum();
    let rows = blocks
        .iter()
        .map(|b| {
            Ok(AuditRow {
                label: b.label.clone(),
                source: b.source,
                dim: b.dim,
                count_osc: count_osc(m, &b.label, ell)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(DimAudit {
        m,
        ell,
        oscillating,
        from_tl_dims,
        from_blocks,
        blocks: rows,
    })
}

fn binomial_big(n: &BigUint) -> BigUint {
    if *n < BigUint::from(2u32) {
        BigUint::from(0u32)
    } else {
        n * (n - 1u32) / 2u32
    }
}

/// Specialization used for the modular dimension count.
pub fn modular_point(ell: Level) -> ModPrime {
    match ell {
        Level::Infinite => {
            let p = prime_congruent_one(2, 1 << 20);
            ModPrime { q: Fp::new(7, p) }
        }
        Level::Finite(l) => ModPrime::root_of_unity(l, 1 << 20),
    }
}

/// Echelon basis over F_p kept in semi-reduced form with lazy reduction.
struct Span {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Span {
    fn new(p: u64) -> Self {
        Span { p, rows: Vec::new() }
    }

    /// Adds `v` if it is independent of the current rows.
    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let p = self.p;
        for (piv, row) in &self.rows {
            let c = v[*piv] % p;
            if c == 0 {
                continue;
            }
            let f = p - c;
            for (x, y) in v.iter_mut().zip(row) {
                *x += f * y;
            }
            // keep entries below 2^63 with p < 2^21
            if v[*piv] > 1 << 60 {
                v.iter_mut().for_each(|x| *x %= p);
            }
        }
        v.iter_mut().for_each(|x| *x %= p);
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = Fp::new(v[piv] as i64, p).inv().expect("nonzero");
        v.iter_mut()
            .for_each(|x| *x = Fp::new(*x as i64, p).mul(inv).value());
        self.rows.push((piv, v));
        true
    }
}

fn flatten(b: &BlockMatrix<Fp>) -> Vec<u64> {
    b.blocks()
        .iter()
        .flat_map(|(_, m)| m.entries().iter().map(|x| x.value()))
        .collect()
}

/// Dimension of the algebra generated by the `G̃_i`, computed by span closure
/// over F_p. Independence modulo `p` implies independence over the original
/// field, so the result is a lower bound that is exact once it meets Σ dim².
pub fn generated_dimension(m: usize, ell: Level) -> Result<usize> {
    let spec = modular_point(ell);
    let p = spec.q.modulus();
    assert!(p < 1 << 21, "lazy reduction needs a small prime");
    let sq = SquareRep::from_model(cached_model(m, ell, spec)?)?;
    let gens: Vec<&BlockMatrix<Fp>> = (1..m).map(|i| sq.g(i)).collect::<Result<_>>()?;
    let mut span = Span::new(p);
    let id = sq.identity();
    span.insert(flatten(&id));
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in &gens {
            let y = x.mul(g);
            if span.insert(flatten(&y)) {
                queue.push(y);
            }
        }
    }
    Ok(span.rows.len())
}

/// Eigenvalue of `G̃_1` on each summand for two strands, keyed by label.
pub fn two_strand_eigenvalues() -> Result<BTreeMap<Diagram, RationalFunction>> {
    let sq = square_generic(2)?;
    Ok(sq
        .g(1)?
        .blocks()
        .iter()
        .map(|(l, m)| (l.clone(), m.get(0, 0).clone()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const INF: Level = Level::Infinite;

    #[test]
    fn labels() {
        let t = |s, t| Source::Tensor { s, t };
        assert_eq!(block_label(2, INF, t(0, 1)).unwrap(), Diagram::of(&[1, 1]));
        assert_eq!(block_label(2, INF, Source::Sym { s: 1 }).unwrap(), Diagram::of(&[0]));
        assert_eq!(
            block_label(4, Level::Finite(6), Source::Alt { s: 1 }).unwrap(),
            Diagram::of(&[2, 1, 1])
        );
        assert!(matches!(
            block_label(5, Level::Finite(6), Source::Sym { s: 0 }),
            Err(Error::NotInLambda { .. })
        ));
    }

    #[test]
    fn two_strand_eigenvalues_follow_labels() {
        let ev = two_strand_eigenvalues().unwrap();
        let q = RationalFunction::q_pow;
        assert_eq!(ev[&Diagram::of(&[0])], q(-3));
        assert_eq!(ev[&Diagram::of(&[1, 1])], q(-1).neg());
        assert_eq!(ev[&Diagram::of(&[2])], q(1));
    }

    #[test]
    fn three_strand_layout() {
        let a = dim_audit(3, INF).unwrap();
        assert_eq!(a.oscillating, BigUint::from(15u32));
        assert!(a.consistent());
        let dims: Vec<(String, usize)> =
            a.blocks.iter().map(|b| (b.label.to_string(), b.dim)).collect();
        assert_eq!(
            dims,
            vec![
                ("[1]".to_string(), 3),
                ("[1,1,1]".to_string(), 1),
                ("[2,1]".to_string(), 2),
                ("[3]".to_string(), 1)
            ]
        );
        for ell in [6, 7, 8] {
            assert_eq!(dim_audit(2, Level::Finite(ell)).unwrap().from_blocks, BigUint::from(3u32));
        }
    }

    #[test]
    fn trace_of_e() {
        let sq = square_generic(3).unwrap();
        let xinv = sq.x().inv().unwrap();
        assert_eq!(sq.trace2(sq.e(1).unwrap()), xinv);
        assert!(sq.trace2(&sq.identity()).is_one());
    }

    #[test]
    fn square_of_word_is_diagonal_image() {
        let sq = square_generic(3).unwrap();
        let w = [1, -2, 1, 2, 2];
        let lhs = sq.represent_word(&w).unwrap();
        let rho = sq.model().represent_word(&w).unwrap();
        let e: i64 = w.iter().map(|l| l.signum()).sum();
        let rhs = sq.diagonal(&rho).scale(&RationalFunction::q_pow(e));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn relations_hold_small() {
        for ell in [INF, Level::Finite(6), Level::Finite(7)] {
            for m in 2..=3 {
                let r = verify_bmw_relations(m, ell, 3, 11).unwrap();
                assert!(r.values().all(|&v| v), "m={m} ell={ell}: {r:?}");
            }
        }
    }

    #[test]
    fn modular_dimension_small() {
        for ell in [INF, Level::Finite(6)] {
            for m in 2..=4 {
                let a = dim_audit(m, ell).unwrap();
                assert_eq!(
                    BigUint::from(generated_dimension(m, ell).unwrap()),
                    a.from_blocks,
                    "m={m} ell={ell}"
                );
            }
        }
    }

    #[test]
    fn level_too_small() {
        assert!(matches!(square_root(3, 5), Err(Error::LevelTooSmall(_))));
    }
}
