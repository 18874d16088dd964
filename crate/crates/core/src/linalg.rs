//! Dense matrices over an exact field and block-diagonal matrices labelled
//! by diagrams.

use std::fmt;

use crate::coeff::Field;
use crate::diagrams::Diagram;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
    zero: F,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize, zero: &F) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![zero.clone(); rows * cols],
            zero: zero.clone(),
        }
    }

    pub fn identity(n: usize, zero: &F) -> Self {
        let mut m = Self::zeros(n, n, zero);
        let one = zero.one_like();
        for i in 0..n {
            m.data[i * n + i] = one.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, zero: &F, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            data,
            zero: zero.clone(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn zero_elem(&self) -> &F {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn map<G: Field>(&self, zero: &G, f: impl Fn(&F) -> Result<G>) -> Result<Matrix<G>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
            zero: zero.clone(),
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
            ..self.clone_shape()
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect(),
            ..self.clone_shape()
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix {
            data: self
                .data
                .iter()
                .map(|a| if a.is_zero() { a.clone() } else { a.mul(s) })
                .collect(),
            ..self.clone_shape()
        }
    }

    pub fn neg(&self) -> Self {
        Matrix {
            data: self.data.iter().map(|a| a.neg()).collect(),
            ..self.clone_shape()
        }
    }

    fn clone_shape(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: Vec::new(),
            zero: self.zero.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix shapes do not chain");
        let mut out = Self::zeros(self.rows, o.cols, &self.zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn trace(&self) -> F {
        let mut acc = self.zero.clone();
        for i in 0..self.rows.min(self.cols) {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    /// `self ⊗ o` with row index `i * o.rows + k`.
    pub fn kron(&self, o: &Self) -> Self {
        let (r, c) = (self.rows * o.rows, self.cols * o.cols);
        let mut out = Self::zeros(r, c, &self.zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            out.set(i * o.rows + k, j * o.cols + l, a.mul(b));
                        }
                    }
                }
            }
        }
        out
    }

    /// Action of `g ⊗ g` on the symmetric square, basis `e_a e_b` (`a ≤ b`)
    /// in lexicographic order, where `e_a e_b = e_a⊗e_b + e_b⊗e_a` for `a < b`
    /// and `e_a e_a = e_a⊗e_a`.
    pub fn sym_square(&self) -> Self {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        let two = self.zero.from_int_like(2);
        Self::from_fn(pairs.len(), pairs.len(), &self.zero, |row, col| {
            let (c, d) = pairs[row];
            let (a, b) = pairs[col];
            let g = |i, j| self.get(i, j);
            match (a == b, c == d) {
                (false, false) => g(c, a).mul(g(d, b)).add(&g(c, b).mul(g(d, a))),
                (false, true) => two.mul(g(c, a)).mul(g(c, b)),
                (true, false) => g(c, a).mul(g(d, a)),
                (true, true) => g(c, a).mul(g(c, a)),
            }
        })
    }

    /// Action of `g ⊗ g` on the exterior square, basis `e_a∧e_b` (`a < b`).
    pub fn alt_square(&self) -> Self {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        Self::from_fn(pairs.len(), pairs.len(), &self.zero, |row, col| {
            let (c, d) = pairs[row];
            let (a, b) = pairs[col];
            self.get(c, a)
                .mul(self.get(d, b))
                .sub(&self.get(c, b).mul(self.get(d, a)))
        })
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Block-diagonal matrix with one labelled square block per summand.
#[derive(Clone, PartialEq, Debug)]
pub struct BlockMatrix<F: Field> {
    blocks: Vec<(Diagram, Matrix<F>)>,
}

impl<F: Field> BlockMatrix<F> {
    pub fn new(blocks: Vec<(Diagram, Matrix<F>)>) -> Self {
        BlockMatrix { blocks }
    }

    pub fn blocks(&self) -> &[(Diagram, Matrix<F>)] {
        &self.blocks
    }

    pub fn block(&self, label: &Diagram) -> Option<&Matrix<F>> {
        self.blocks.iter().find(|(l, _)| l == label).map(|(_, m)| m)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|(_, m)| m.rows()).collect()
    }

    pub fn identity_like(&self) -> Self {
        self.map_blocks(|m| Matrix::identity(m.rows(), m.zero_elem()))
    }

    fn map_blocks(&self, f: impl Fn(&Matrix<F>) -> Matrix<F>) -> Self {
        BlockMatrix {
            blocks: self.blocks.iter().map(|(l, m)| (l.clone(), f(m))).collect(),
        }
    }

    fn zip_blocks(&self, o: &Self, f: impl Fn(&Matrix<F>, &Matrix<F>) -> Matrix<F>) -> Self {
        assert_eq!(self.blocks.len(), o.blocks.len(), "block structures differ");
        BlockMatrix {
            blocks: self
                .blocks
                .iter()
                .zip(&o.blocks)
                .map(|((l1, a), (l2, b))| {
                    assert_eq!(l1, l2, "block labels differ");
                    (l1.clone(), f(a, b))
                })
                .collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.zip_blocks(o, |a, b| a.mul(b))
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip_blocks(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip_blocks(o, |a, b| a.sub(b))
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map_blocks(|m| m.scale(s))
    }

    pub fn neg(&self) -> Self {
        self.map_blocks(|m| m.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|(_, m)| m.is_zero())
    }

    /// `Σ_k w_k Tr(block_k)`.
    pub fn weighted_trace(&self, weights: &[F]) -> F {
        assert_eq!(weights.len(), self.blocks.len());
        let mut acc = weights[0].zero_like();
        for ((_, m), w) in self.blocks.iter().zip(weights) {
            let t = m.trace();
            if !t.is_zero() {
                acc = acc.add(&w.mul(&t));
            }
        }
        acc
    }

    pub fn map<G: Field>(&self, zero: &G, f: impl Fn(&F) -> Result<G>) -> Result<BlockMatrix<G>> {
        Ok(BlockMatrix {
            blocks: self
                .blocks
                .iter()
                .map(|(l, m)| Ok((l.clone(), m.map(zero, &f)?)))
                .collect::<Result<_>>()?,
        })
    }

    /// Checks that two block matrices share labels and sizes.
    pub fn same_structure(&self, o: &Self) -> Result<()> {
        let a: Vec<_> = self.blocks.iter().map(|(l, m)| (l, m.rows())).collect();
        let b: Vec<_> = o.blocks.iter().map(|(l, m)| (l, m.rows())).collect();
        if a == b {
            Ok(())
        } else {
            Err(Error::Invalid("block structures differ".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Fp, RationalFunction};

    fn fp(rows: &[&[i64]]) -> Matrix<Fp> {
        let z = Fp::zero(101);
        Matrix::from_fn(rows.len(), rows[0].len(), &z, |i, j| Fp::new(rows[i][j], 101))
    }

    #[test]
    fn squares_are_multiplicative() {
        let a = fp(&[&[1, 2, 0], &[3, 4, 5], &[0, 7, 1]]);
        let b = fp(&[&[2, 0, 1], &[1, 1, 0], &[5, 3, 2]]);
        assert_eq!(a.mul(&b).sym_square(), a.sym_square().mul(&b.sym_square()));
        assert_eq!(a.mul(&b).alt_square(), a.alt_square().mul(&b.alt_square()));
        assert_eq!(a.mul(&b).kron(&b.mul(&a)), a.kron(&b).mul(&b.kron(&a)));
        // Tr(g⊗g) = Tr S²g + Tr ∧²g
        let t = a.trace();
        assert_eq!(a.kron(&a).trace(), t.mul(t));
        assert_eq!(a.sym_square().trace().add(a.alt_square().trace()), t.mul(t));
        assert_eq!(a.sym_square().rows(), 6);
        assert_eq!(a.alt_square().rows(), 3);
    }

    #[test]
    fn identity_and_blocks() {
        let z = RationalFunction::zero();
        let i2 = Matrix::identity(2, &z);
        let bm = BlockMatrix::new(vec![(Diagram::of(&[2]), i2.clone())]);
        assert_eq!(bm.mul(&bm), bm);
        let w = vec![RationalFunction::from_int(3)];
        assert_eq!(bm.weighted_trace(&w), RationalFunction::from_int(6));
    }
}
