//! Subspaces of `K^n` in canonical reduced-row-echelon form.

use std::fmt;

use crate::filtration::field::SymFrac;
use crate::filtration::matrix::ExactMatrix;
use crate::ring::Ring;

/// Rows of `basis` are the RREF basis, so equal subspaces compare equal.
#[derive(Clone, PartialEq)]
pub struct Subspace {
    ambient: usize,
    basis: ExactMatrix,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { ambient: n, basis: ExactMatrix::zeros(0, n) }
    }

    pub fn full(n: usize) -> Self {
        Subspace { ambient: n, basis: ExactMatrix::identity(n) }
    }

    pub fn span(n: usize, vectors: &[Vec<SymFrac>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(n);
        }
        assert!(vectors.iter().all(|v| v.len() == n), "vector length mismatch");
        let m = ExactMatrix::from_rows(vectors.to_vec());
        let (rref, _) = m.rref();
        Subspace { ambient: n, basis: rref }
    }

    /// Span of coordinate vectors `e_i`.
    pub fn coordinate(n: usize, indices: &[usize]) -> Self {
        let vecs: Vec<Vec<SymFrac>> = indices
            .iter()
            .map(|&i| {
                let mut v = vec![SymFrac::zero(); n];
                v[i] = SymFrac::one();
                v
            })
            .collect();
        Self::span(n, &vecs)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn vectors(&self) -> Vec<Vec<SymFrac>> {
        (0..self.basis.rows()).map(|i| self.basis.row(i)).collect()
    }

    pub fn contains(&self, v: &[SymFrac]) -> bool {
        if v.iter().all(|x| x.is_zero()) {
            return true;
        }
        let mut vs = self.vectors();
        vs.push(v.to_vec());
        ExactMatrix::from_rows(vs).rank() == self.dim()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Self {
        let mut vs = self.vectors();
        vs.extend(other.vectors());
        Self::span(self.ambient, &vs)
    }

    pub fn intersect(&self, other: &Subspace) -> Self {
        let n = self.ambient;
        if self.is_zero() || other.is_zero() {
            return Self::zero(n);
        }
        let (a, b) = (self.vectors(), other.vectors());
        // columns u_1..u_r, -w_1..-w_s; kernel vectors give u-combinations
        let mut cols = a.clone();
        cols.extend(b.iter().map(|w| w.iter().map(|x| x.neg()).collect::<Vec<_>>()));
        let m = ExactMatrix::from_columns(n, &cols);
        let vecs: Vec<Vec<SymFrac>> = m
            .kernel()
            .into_iter()
            .map(|k| {
                let mut v = vec![SymFrac::zero(); n];
                for (i, u) in a.iter().enumerate() {
                    if k[i].is_zero() {
                        continue;
                    }
                    for (vj, uj) in v.iter_mut().zip(u) {
                        *vj = vj.add(&k[i].mul(uj));
                    }
                }
                v
            })
            .collect();
        Self::span(n, &vecs)
    }

    /// Image under a square matrix acting on column vectors.
    pub fn image_under(&self, m: &ExactMatrix) -> Self {
        let vs: Vec<Vec<SymFrac>> = self.vectors().iter().map(|v| m.apply(v)).collect();
        Self::span(self.ambient, &vs)
    }

    pub fn conj(&self) -> Self {
        let vs: Vec<Vec<SymFrac>> =
            self.vectors().iter().map(|v| v.iter().map(|x| x.conj()).collect()).collect();
        Self::span(self.ambient, &vs)
    }

    pub fn kernel_of(m: &ExactMatrix) -> Self {
        Self::span(m.cols(), &m.kernel())
    }

    pub fn image_of(m: &ExactMatrix) -> Self {
        Self::span(m.rows(), &m.image())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{:?}", self.vectors())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rint;

    fn v(xs: &[i64]) -> Vec<SymFrac> {
        xs.iter().map(|&x| SymFrac::rat(rint(x))).collect()
    }

    #[test]
    fn canonical_equality() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, &[v(&[1, 2, 1]), v(&[1, 0, -1])]);
        assert_eq!(a, b);
    }

    #[test]
    fn intersection_dimension() {
        let a = Subspace::coordinate(4, &[0, 1, 2]);
        let b = Subspace::span(4, &[v(&[1, 0, 0, 1]), v(&[0, 1, 0, 0]), v(&[0, 0, 0, 1])]);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 2);
        assert!(a.contains_space(&i) && b.contains_space(&i));
        assert_eq!(a.sum(&b).dim(), 4);
    }
}
