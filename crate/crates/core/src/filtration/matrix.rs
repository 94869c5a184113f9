//! Dense matrices over the symbol fraction field.

use std::fmt;

use crate::filtration::field::SymFrac;
use crate::ring::{Rat, Ring};
use crate::scalar::TwistedScalar;

#[derive(Clone, PartialEq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SymFrac>,
}

/// Row echelon form from fraction-free elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: ExactMatrix,
    pub pivots: Vec<(usize, usize)>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![SymFrac::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, SymFrac::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> SymFrac) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<SymFrac>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_rat_rows(rows: &[Vec<Rat>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|x| SymFrac::rat(x.clone())).collect())
                .collect(),
        )
    }

    pub fn from_scalar_rows(rows: &[Vec<TwistedScalar>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|x| SymFrac::scalar(x.clone())).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, cols: &[Vec<SymFrac>]) -> Self {
        Self::from_fn(n, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &SymFrac {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: SymFrac) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<SymFrac> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<SymFrac> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<SymFrac>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = SymFrac::zero();
            for k in 0..self.cols {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        })
    }

    pub fn apply(&self, v: &[SymFrac]) -> Vec<SymFrac> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(SymFrac::zero(), |acc, k| {
                    if v[k].is_zero() {
                        acc
                    } else {
                        acc.add(&self.get(i, k).mul(&v[k]))
                    }
                })
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).add(other.get(i, j)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn map(&self, f: impl Fn(&SymFrac) -> SymFrac) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.map(|x| x.mul_rat(r))
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square());
        (0..k).fold(Self::identity(self.rows), |acc, _| acc.mul(self))
    }

    /// Fraction-free (Bareiss) forward elimination. Entries below each
    /// pivot are cleared with `(p·a_ij - a_ik·a_kj)/p_prev`, which is exact
    /// by Sylvester's identity.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prev = SymFrac::one();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let candidate = (row..m.rows)
                .filter(|&i| !m.get(i, col).is_zero())
                .min_by_key(|&i| m.get(i, col).weight());
            let Some(p) = candidate else { continue };
            m.swap_rows(row, p);
            let pivot = m.get(row, col).clone();
            for i in row + 1..m.rows {
                let lead = m.get(i, col).clone();
                for j in col + 1..m.cols {
                    let v = pivot
                        .mul(m.get(i, j))
                        .sub(&lead.mul(m.get(row, j)))
                        .div(&prev);
                    m.set(i, j, v);
                }
                m.set(i, col, SymFrac::zero());
            }
            // rows above the pivot keep their scale; later pivots divide by
            // this one
            prev = pivot;
            pivots.push((row, col));
            row += 1;
        }
        Echelon { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Reduced row echelon form (zero rows dropped) and pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let ech = self.echelon();
        let mut m = ech.matrix;
        let pivots = ech.pivots;
        for &(r, c) in &pivots {
            let inv = m.get(r, c).try_inverse().expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
        }
        for (k, &(r, c)) in pivots.iter().enumerate().rev() {
            for &(r2, _) in &pivots[..k] {
                let factor = m.get(r2, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = m.get(r2, j).sub(&factor.mul(m.get(r, j)));
                    m.set(r2, j, v);
                }
            }
        }
        let rank = pivots.len();
        let reduced = ExactMatrix::from_fn(rank, m.cols, |i, j| m.get(i, j).clone());
        (reduced, pivots.iter().map(|&(_, c)| c).collect())
    }

    /// Basis of the right null space, as column vectors.
    pub fn kernel(&self) -> Vec<Vec<SymFrac>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![SymFrac::zero(); self.cols];
                v[f] = SymFrac::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = r.get(i, f).neg();
                }
                v
            })
            .collect()
    }

    /// Columns spanning the image.
    pub fn image(&self) -> Vec<Vec<SymFrac>> {
        self.columns()
    }

    /// `exp(self)` for a nilpotent matrix.
    pub fn exp_nilpotent(&self) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        let mut term = Self::identity(self.rows);
        for k in 1..=self.rows {
            term = term.mul(self).scale_rat(&Rat::new(1.into(), (k as i64).into()));
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        acc
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rint;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rat_rows(
            &rows.iter().map(|r| r.iter().map(|&x| rint(x)).collect()).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ker = a.kernel();
        assert_eq!(ker.len(), 1);
        assert!(a.apply(&ker[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn symbolic_pivots() {
        let c = SymFrac::scalar(TwistedScalar::c());
        let one = SymFrac::one();
        let a = ExactMatrix::from_rows(vec![
            vec![c.clone(), one.clone()],
            vec![c.mul(&c), c.clone()],
        ]);
        assert_eq!(a.rank(), 1);
        let b = ExactMatrix::from_rows(vec![vec![c.clone(), one.clone()], vec![one, c]]);
        assert_eq!(b.rank(), 2);
    }

    #[test]
    fn exp_of_jordan_block() {
        let n = m(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        let e = n.exp_nilpotent();
        assert_eq!(e.get(2, 0), &SymFrac::rat(Rat::new(1.into(), 2.into())));
    }
}
