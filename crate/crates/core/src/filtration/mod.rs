//! Weight filtrations, relative weight checks, Deligne bigradings and
//! polarization checks over the symbol fraction field.

mod field;
mod json;
mod matrix;
mod subspace;

use std::collections::BTreeMap;

use thiserror::Error;

pub use field::SymFrac;
pub use json::{FiltrationJson, MatrixJson, MhsInput};
pub use matrix::{Echelon, ExactMatrix};
pub use subspace::Subspace;

use crate::report::CheckReport;
use crate::ring::Ring;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FiltrationError {
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("filtration is not nested at index {0}")]
    NotNested(i32),
    #[error("bigrading pieces do not span: offending (p,q) = {0:?}")]
    NotSpanning(Vec<(i32, i32)>),
    #[error("weight filtration failed its own axioms: {0}")]
    AxiomFailure(String),
    #[error("decode error: {0}")]
    Decode(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// Step filtration. Between stored indices the nearest stored step on the
/// "smaller" side applies; outside the stored range the filtration is `0`
/// or the full space.
#[derive(Clone, Debug, PartialEq)]
pub struct Filtration {
    direction: Direction,
    ambient: usize,
    steps: BTreeMap<i32, Subspace>,
}

impl Filtration {
    pub fn new(
        direction: Direction,
        ambient: usize,
        steps: BTreeMap<i32, Subspace>,
    ) -> Result<Self, FiltrationError> {
        for s in steps.values() {
            if s.ambient() != ambient {
                return Err(FiltrationError::DimensionMismatch {
                    expected: ambient,
                    got: s.ambient(),
                });
            }
        }
        let f = Filtration { direction, ambient, steps };
        let keys: Vec<i32> = f.steps.keys().copied().collect();
        for w in keys.windows(2) {
            let (lo, hi) = (&f.steps[&w[0]], &f.steps[&w[1]]);
            let nested = match direction {
                Direction::Increasing => hi.contains_space(lo),
                Direction::Decreasing => lo.contains_space(hi),
            };
            if !nested {
                return Err(FiltrationError::NotNested(w[1]));
            }
        }
        Ok(f)
    }

    /// Increasing filtration from `(index, subspace)` pairs.
    pub fn increasing(
        ambient: usize,
        steps: impl IntoIterator<Item = (i32, Subspace)>,
    ) -> Result<Self, FiltrationError> {
        Self::new(Direction::Increasing, ambient, steps.into_iter().collect())
    }

    pub fn decreasing(
        ambient: usize,
        steps: impl IntoIterator<Item = (i32, Subspace)>,
    ) -> Result<Self, FiltrationError> {
        Self::new(Direction::Decreasing, ambient, steps.into_iter().collect())
    }

    /// `W_{w-1} = 0 ⊂ W_w = V`.
    pub fn pure(ambient: usize, weight: i32) -> Self {
        let steps =
            [(weight - 1, Subspace::zero(ambient)), (weight, Subspace::full(ambient))].into();
        Filtration { direction: Direction::Increasing, ambient, steps }
    }

    /// `F^p` spanned by the first `count(p)` of the given vectors, for the
    /// stored range `lo..=hi`.
    pub fn from_flag(
        ambient: usize,
        vectors: &[Vec<SymFrac>],
        lo: i32,
        hi: i32,
        count: impl Fn(i32) -> usize,
    ) -> Result<Self, FiltrationError> {
        let steps = (lo..=hi).map(|p| (p, Subspace::span(ambient, &vectors[..count(p)])));
        Self::decreasing(ambient, steps)
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn steps(&self) -> &BTreeMap<i32, Subspace> {
        &self.steps
    }

    pub fn min_index(&self) -> Option<i32> {
        self.steps.keys().next().copied()
    }

    pub fn max_index(&self) -> Option<i32> {
        self.steps.keys().next_back().copied()
    }

    pub fn get(&self, i: i32) -> Subspace {
        let n = self.ambient;
        match self.direction {
            Direction::Increasing => match self.steps.range(..=i).next_back() {
                Some((_, s)) if i <= self.max_index().unwrap() => s.clone(),
                Some(_) => Subspace::full(n),
                None => Subspace::zero(n),
            },
            Direction::Decreasing => match self.steps.range(i..).next() {
                Some((_, s)) if i >= self.min_index().unwrap() => s.clone(),
                Some(_) => Subspace::full(n),
                None => Subspace::zero(n),
            },
        }
    }

    pub fn conj(&self) -> Self {
        Filtration {
            direction: self.direction,
            ambient: self.ambient,
            steps: self.steps.iter().map(|(&k, s)| (k, s.conj())).collect(),
        }
    }

    /// `dim Gr_i` for an increasing filtration, `dim F^i/F^{i+1}` otherwise.
    pub fn graded_dim(&self, i: i32) -> usize {
        match self.direction {
            Direction::Increasing => self.get(i).dim() - self.get(i - 1).dim(),
            Direction::Decreasing => self.get(i).dim() - self.get(i + 1).dim(),
        }
    }

    /// Agreement on every index in the union of the stored ranges.
    pub fn same_as(&self, other: &Filtration) -> bool {
        if self.direction != other.direction || self.ambient != other.ambient {
            return false;
        }
        let lo = self.min_index().into_iter().chain(other.min_index()).min();
        let hi = self.max_index().into_iter().chain(other.max_index()).max();
        match (lo, hi) {
            (Some(lo), Some(hi)) => (lo - 1..=hi + 1).all(|i| self.get(i) == other.get(i)),
            _ => true,
        }
    }
}

/// Square nilpotent matrix with its nilpotency index.
#[derive(Clone, Debug, PartialEq)]
pub struct NilpotentOperator {
    matrix: ExactMatrix,
    index: u32,
}

impl NilpotentOperator {
    pub fn new(matrix: ExactMatrix) -> Result<Self, FiltrationError> {
        if !matrix.is_square() {
            return Err(FiltrationError::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        let n = matrix.rows();
        let mut power = ExactMatrix::identity(n);
        for k in 0..=n as u32 {
            if power.is_zero() {
                return Ok(NilpotentOperator { matrix, index: k });
            }
            power = power.mul(&matrix);
        }
        Err(FiltrationError::NotNilpotent)
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn power(&self, k: u32) -> ExactMatrix {
        self.matrix.pow(k)
    }
}

/// The monodromy weight filtration centred at `center`:
/// `M_{w+k} = Σ_{j ≥ max(0,-k)} ker N^{k+j+1} ∩ im N^j`.
pub fn weight_filtration(
    n: &NilpotentOperator,
    center: i32,
) -> Result<Filtration, FiltrationError> {
    let dim = n.dim();
    let nu = n.index() as i32;
    let powers: Vec<ExactMatrix> = (0..=2 * nu as u32 + 1).map(|k| n.power(k)).collect();
    let kernels: Vec<Subspace> = powers.iter().map(Subspace::kernel_of).collect();
    let images: Vec<Subspace> = powers.iter().map(Subspace::image_of).collect();
    let mut steps = BTreeMap::new();
    for k in -nu..nu {
        let mut acc = Subspace::zero(dim);
        for j in (-k).max(0)..nu {
            let kk = (k + j + 1) as usize;
            let piece = kernels[kk.min(kernels.len() - 1)].intersect(&images[j as usize]);
            acc = acc.sum(&piece);
        }
        steps.insert(center + k, acc);
    }
    let m = Filtration::increasing(dim, steps)?;
    let report = relative_weight_check(n, &Filtration::pure(dim, center), &m)?;
    if !report.passed {
        return Err(FiltrationError::AxiomFailure(report.failures.join("; ")));
    }
    Ok(m)
}

fn check_dims(n: &NilpotentOperator, f: &Filtration) -> Result<(), FiltrationError> {
    if f.ambient() != n.dim() {
        return Err(FiltrationError::DimensionMismatch { expected: n.dim(), got: f.ambient() });
    }
    Ok(())
}

/// Dimension of `Gr^M_a Gr^W_k`, returned with the numerator and the
/// subspace being quotiented out.
fn graded_piece(w: &Filtration, m: &Filtration, a: i32, k: i32) -> (Subspace, Subspace) {
    let wk = w.get(k);
    let top = m.get(a).intersect(&wk);
    let bottom = m.get(a - 1).intersect(&wk).sum(&m.get(a).intersect(&w.get(k - 1)));
    (top, bottom)
}

/// Checks `N M_a ⊂ M_{a-2}`, `N W_k ⊂ W_k`, and that
/// `N^ℓ : Gr^M_{k+ℓ} Gr^W_k → Gr^M_{k-ℓ} Gr^W_k` is an isomorphism.
/// Failing pairs are reported as `(k,ℓ)`.
pub fn relative_weight_check(
    n: &NilpotentOperator,
    w: &Filtration,
    m: &Filtration,
) -> Result<CheckReport, FiltrationError> {
    check_dims(n, w)?;
    check_dims(n, m)?;
    let mut report = CheckReport::new("relative weight filtration");
    let dim = n.dim() as i32;
    let (mlo, mhi) = match (m.min_index(), m.max_index()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Ok(report),
    };
    for a in mlo..=mhi + 2 {
        let image = m.get(a).image_under(n.matrix());
        report.require(m.get(a - 2).contains_space(&image), || {
            format!("N(M_{a}) is not contained in M_{}", a - 2)
        });
    }
    let (wlo, whi) = (w.min_index().unwrap_or(0), w.max_index().unwrap_or(0));
    for k in wlo..=whi {
        let image = w.get(k).image_under(n.matrix());
        report.require(w.get(k).contains_space(&image), || format!("N(W_{k}) not inside W_{k}"));
    }
    for k in wlo..=whi {
        for l in 1..=(dim.max(mhi - mlo + 1)) {
            let (src_top, src_bot) = graded_piece(w, m, k + l, k);
            let (dst_top, dst_bot) = graded_piece(w, m, k - l, k);
            let src_dim = src_top.dim() - src_bot.dim();
            let dst_dim = dst_top.dim() - dst_bot.dim();
            let nl = n.power(l as u32);
            let mapped = src_top.image_under(&nl);
            let lands = dst_top.contains_space(&mapped);
            let onto = mapped.sum(&dst_bot).contains_space(&dst_top);
            let preserves_bottom = dst_bot.contains_space(&src_bot.image_under(&nl));
            let ok = src_dim == dst_dim && lands && onto && preserves_bottom;
            report.require(ok, || {
                format!(
                    "(k,l)=({k},{l}): N^{l} not an isomorphism Gr_{}({src_dim}) -> Gr_{}({dst_dim})",
                    k + l,
                    k - l
                )
            });
        }
    }
    Ok(report)
}

/// Failing `(k,ℓ)` pairs parsed back from a report.
pub fn failing_pairs(report: &CheckReport) -> Vec<(i32, i32)> {
    report
        .failures
        .iter()
        .filter_map(|f| {
            let rest = f.strip_prefix("(k,l)=(")?;
            let (pair, _) = rest.split_once(')')?;
            let (k, l) = pair.split_once(',')?;
            Some((k.trim().parse().ok()?, l.trim().parse().ok()?))
        })
        .collect()
}

/// `I^{p,q}` pieces keyed by `(p,q)`; zero pieces are omitted.
#[derive(Clone, Debug, PartialEq)]
pub struct BiGrading {
    ambient: usize,
    pieces: BTreeMap<(i32, i32), Subspace>,
}

impl BiGrading {
    pub fn get(&self, p: i32, q: i32) -> Subspace {
        self.pieces.get(&(p, q)).cloned().unwrap_or_else(|| Subspace::zero(self.ambient))
    }

    pub fn pieces(&self) -> &BTreeMap<(i32, i32), Subspace> {
        &self.pieces
    }

    pub fn dims(&self) -> BTreeMap<(i32, i32), usize> {
        self.pieces.iter().map(|(&k, s)| (k, s.dim())).collect()
    }

    fn sum_where(&self, pred: impl Fn(i32, i32) -> bool) -> Subspace {
        self.pieces
            .iter()
            .filter(|((p, q), _)| pred(*p, *q))
            .fold(Subspace::zero(self.ambient), |acc, (_, s)| acc.sum(s))
    }

    fn dim_where(&self, pred: impl Fn(i32, i32) -> bool) -> usize {
        self.pieces.iter().filter(|((p, q), _)| pred(*p, *q)).map(|(_, s)| s.dim()).sum()
    }

    /// Properties (1)–(3): `⊕_{p≥j} I^{p,•} = F^j`, `⊕_{p+q≤i} I = W_i`, and
    /// `conj I^{b,a} ≡ I^{a,b}` modulo `⊕_{p<a,q<b} I^{p,q}`.
    pub fn check_properties(
        &self,
        f: &Filtration,
        w: &Filtration,
        conj: &dyn Fn(&SymFrac) -> SymFrac,
    ) -> CheckReport {
        let mut report = CheckReport::new("Deligne bigrading");
        let (flo, fhi) = (f.min_index().unwrap_or(0), f.max_index().unwrap_or(0));
        for j in flo - 1..=fhi + 1 {
            let sum = self.sum_where(|p, _| p >= j);
            let direct = self.dim_where(|p, _| p >= j) == sum.dim();
            report.require(direct && sum == f.get(j), || format!("property (1) fails at j={j}"));
        }
        let (wlo, whi) = (w.min_index().unwrap_or(0), w.max_index().unwrap_or(0));
        for i in wlo - 1..=whi + 1 {
            let sum = self.sum_where(|p, q| p + q <= i);
            let direct = self.dim_where(|p, q| p + q <= i) == sum.dim();
            report.require(direct && sum == w.get(i), || format!("property (2) fails at i={i}"));
        }
        let keys: Vec<(i32, i32)> = self.pieces.keys().copied().collect();
        for &(a, b) in &keys {
            let modulus = self.sum_where(|p, q| p < a && q < b);
            let target = self.get(a, b).sum(&modulus);
            let conj_piece = conj_subspace(&self.get(b, a), conj).sum(&modulus);
            report.require(conj_piece == target, || format!("property (3) fails at ({a},{b})"));
        }
        report
    }
}

fn conj_subspace(s: &Subspace, conj: &dyn Fn(&SymFrac) -> SymFrac) -> Subspace {
    let vs: Vec<Vec<SymFrac>> =
        s.vectors().iter().map(|v| v.iter().map(conj).collect()).collect();
    Subspace::span(s.ambient(), &vs)
}

/// Default involution: the symbol-ring conjugation.
pub fn symbol_conj(x: &SymFrac) -> SymFrac {
    x.conj()
}

/// `I^{p,q} = F^p ∩ W_{p+q} ∩ (conj F^q + Σ_{j≥0} conj F^{q-j-1} ∩ W_{p+q-j-2})`.
pub fn deligne_bigrading(
    f: &Filtration,
    w: &Filtration,
    conj: &dyn Fn(&SymFrac) -> SymFrac,
) -> Result<BiGrading, FiltrationError> {
    if f.ambient() != w.ambient() {
        return Err(FiltrationError::DimensionMismatch { expected: f.ambient(), got: w.ambient() });
    }
    let n = f.ambient();
    let conj_f = |p: i32| conj_subspace(&f.get(p), conj);
    let (flo, fhi) = (f.min_index().unwrap_or(0), f.max_index().unwrap_or(0));
    let (wlo, whi) = (w.min_index().unwrap_or(0), w.max_index().unwrap_or(0));
    let mut pieces = BTreeMap::new();
    for p in flo..=fhi {
        for q in flo..=fhi {
            let i = p + q;
            if i < wlo || i > whi {
                continue;
            }
            let mut inner = conj_f(q);
            for j in 0..=(fhi - flo + 1).max(whi - wlo + 1) {
                inner = inner.sum(&conj_f(q - j - 1).intersect(&w.get(i - j - 2)));
            }
            let piece = f.get(p).intersect(&w.get(i)).intersect(&inner);
            if !piece.is_zero() {
                pieces.insert((p, q), piece);
            }
        }
    }
    let grading = BiGrading { ambient: n, pieces };
    let total = grading.dim_where(|_, _| true);
    let span = grading.sum_where(|_, _| true);
    if total != n || span.dim() != n {
        let mut offending = Vec::new();
        for p in flo..=fhi {
            for q in flo..=fhi {
                let expected = f.get(p).intersect(&w.get(p + q)).dim();
                if expected > 0 && grading.get(p, q).is_zero() {
                    offending.push((p, q));
                }
            }
        }
        return Err(FiltrationError::NotSpanning(offending));
    }
    Ok(grading)
}

/// Skew shape of `Q`, infinitesimal isometry `Q(Nx,y)+Q(x,Ny)=0`, and
/// `Q(F^p, F^{weight+1-p}) = 0`.
pub fn polarization_check(
    q: &ExactMatrix,
    n: &NilpotentOperator,
    f: &Filtration,
    weight: i32,
) -> Result<CheckReport, FiltrationError> {
    if !q.is_square() {
        return Err(FiltrationError::NotSquare { rows: q.rows(), cols: q.cols() });
    }
    if q.rows() != n.dim() {
        return Err(FiltrationError::DimensionMismatch { expected: n.dim(), got: q.rows() });
    }
    check_dims(n, f)?;
    let mut report = CheckReport::new("polarization");
    report.require(q.transpose() == q.neg(), || "Q is not antisymmetric".to_string());
    let nm = n.matrix();
    let iso = nm.transpose().mul(q).add(&q.mul(nm));
    report.require(iso.is_zero(), || "Q(Nx,y)+Q(x,Ny) is not identically 0".to_string());
    let (lo, hi) = (f.min_index().unwrap_or(0), f.max_index().unwrap_or(0));
    for p in lo..=hi {
        let other = weight + 1 - p;
        if other < lo || other > hi {
            continue;
        }
        let (a, b) = (f.get(p), f.get(other));
        let ok = a.vectors().iter().all(|x| {
            let qx = q.transpose().apply(x);
            b.vectors().iter().all(|y| {
                qx.iter().zip(y).fold(SymFrac::zero(), |acc, (u, v)| acc.add(&u.mul(v))).is_zero()
            })
        });
        report.require(ok, || format!("Q(F^{p}, F^{other}) != 0"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, rint, Rat};

    fn mat(rows: &[&[Rat]]) -> ExactMatrix {
        ExactMatrix::from_rat_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn jordan(n: usize) -> NilpotentOperator {
        let m = ExactMatrix::from_fn(n, n, |i, j| {
            if i == j + 1 {
                SymFrac::one()
            } else {
                SymFrac::zero()
            }
        });
        NilpotentOperator::new(m).unwrap()
    }

    #[test]
    fn zero_operator_is_pure() {
        let n = NilpotentOperator::new(ExactMatrix::zeros(3, 3)).unwrap();
        let m = weight_filtration(&n, 3).unwrap();
        assert!(m.get(2).is_zero());
        assert_eq!(m.get(3).dim(), 3);
    }

    #[test]
    fn jordan_block_weights() {
        let m = weight_filtration(&jordan(4), 3).unwrap();
        for (w, d) in [(0, 1), (1, 0), (2, 1), (4, 1), (6, 1), (7, 0)] {
            assert_eq!(m.graded_dim(w), d, "weight {w}");
        }
    }

    #[test]
    fn mixed_blocks() {
        // J_3 ⊕ J_1: weights -2,0,2 from the block and 0 from the singleton
        let mut mm = ExactMatrix::zeros(4, 4);
        mm.set(1, 0, SymFrac::one());
        mm.set(2, 1, SymFrac::one());
        let n = NilpotentOperator::new(mm).unwrap();
        let m = weight_filtration(&n, 0).unwrap();
        assert_eq!(m.graded_dim(-2), 1);
        assert_eq!(m.graded_dim(0), 2);
        assert_eq!(m.graded_dim(2), 1);
    }

    #[test]
    fn non_nilpotent_rejected() {
        let e = mat(&[&[rint(1), rint(0)], &[rint(0), rint(0)]]);
        assert_eq!(NilpotentOperator::new(e), Err(FiltrationError::NotNilpotent));
    }

    #[test]
    fn identity_fails_antisymmetry() {
        let n = jordan(4);
        let f = Filtration::pure(4, 0);
        let r = polarization_check(&ExactMatrix::identity(4), &n, &f, 3).unwrap();
        assert!(!r.passed);
        let _ = rat(1, 2);
    }
}
