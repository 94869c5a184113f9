//! Polynomials in `τ = log(x)/(2πi)` with series coefficients.
//!
//! These model multivalued sections near the boundary point. The τ-degree is
//! capped at [`MAX_TAU_DEGREE`].

use std::fmt;

use crate::ring::{rint, Rat};
use crate::scalar::TwistedScalar;
use crate::series::{QSeries, RatSeries, SeriesError, Var};

pub const MAX_TAU_DEGREE: usize = 3;

#[derive(Clone, PartialEq)]
pub struct TauPoly {
    /// `terms[k]` multiplies `τ^k`; always `MAX_TAU_DEGREE + 1` entries.
    terms: Vec<QSeries>,
}

impl TauPoly {
    pub fn zero(var: Var, order: usize) -> Self {
        TauPoly { terms: vec![QSeries::zero(var, order); MAX_TAU_DEGREE + 1] }
    }

    pub fn from_series(s: QSeries) -> Self {
        let mut p = TauPoly::zero(s.var(), s.order());
        p.terms[0] = s;
        p
    }

    pub fn from_rat_series(s: &RatSeries) -> Self {
        Self::from_series(s.to_twisted())
    }

    pub fn constant(c: TwistedScalar, var: Var, order: usize) -> Self {
        Self::from_series(QSeries::monomial(var, 0, c, order))
    }

    pub fn rational(r: Rat, var: Var, order: usize) -> Self {
        Self::constant(TwistedScalar::rational(r), var, order)
    }

    /// `coeff * τ^k`.
    pub fn tau_pow(k: usize, coeff: TwistedScalar, var: Var, order: usize) -> Self {
        assert!(k <= MAX_TAU_DEGREE);
        let mut p = TauPoly::zero(var, order);
        p.terms[k] = QSeries::monomial(var, 0, coeff, order);
        p
    }

    pub fn tau(var: Var, order: usize) -> Self {
        Self::tau_pow(1, TwistedScalar::one(), var, order)
    }

    /// Builds from per-degree coefficients (missing degrees are zero).
    pub fn from_terms(terms: Vec<QSeries>) -> Result<Self, SeriesError> {
        let first = terms.first().expect("at least one τ-coefficient");
        let (var, order) = (first.var(), terms.iter().map(|t| t.order()).min().unwrap());
        let mut p = TauPoly::zero(var, order);
        for (k, t) in terms.into_iter().enumerate() {
            if k > MAX_TAU_DEGREE {
                if !t.is_zero() {
                    return Err(SeriesError::TauDegreeOverflow(k));
                }
                continue;
            }
            p.terms[k] = t.truncate(order);
        }
        Ok(p)
    }

    pub fn var(&self) -> Var {
        self.terms[0].var()
    }

    pub fn order(&self) -> usize {
        self.terms[0].order()
    }

    pub fn term(&self, k: usize) -> &QSeries {
        &self.terms[k]
    }

    pub fn terms(&self) -> &[QSeries] {
        &self.terms
    }

    pub fn degree(&self) -> Option<usize> {
        (0..=MAX_TAU_DEGREE).rev().find(|&k| !self.terms[k].is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn truncate(&self, order: usize) -> Self {
        TauPoly { terms: self.terms.iter().map(|t| t.truncate(order)).collect() }
    }

    fn zip(&self, other: &Self, f: impl Fn(&QSeries, &QSeries) -> QSeries) -> Self {
        TauPoly { terms: self.terms.iter().zip(&other.terms).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> Self {
        TauPoly { terms: self.terms.iter().map(|t| t.neg()).collect() }
    }

    pub fn scale(&self, c: &TwistedScalar) -> Self {
        TauPoly { terms: self.terms.iter().map(|t| t.scale(c)).collect() }
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        TauPoly { terms: self.terms.iter().map(|t| t.scale_rat(r)).collect() }
    }

    pub fn mul_series(&self, s: &QSeries) -> Self {
        TauPoly { terms: self.terms.iter().map(|t| t.mul(s)).collect() }
    }

    /// Product; fails if a nonzero term would exceed the degree cap.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        let order = self.order().min(other.order());
        let mut out = vec![QSeries::zero(self.var(), order); 2 * MAX_TAU_DEGREE + 1];
        for (i, a) in self.terms.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.terms.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        TauPoly::from_terms(out)
    }

    /// `∂_τ`, using `∂_τ τ = 1` and `∂_τ x^d = pihat^-1 d x^d`.
    pub fn dtau(&self) -> Self {
        let inv = TwistedScalar::pihat_pow(-1);
        let mut out = TauPoly::zero(self.var(), self.order());
        for k in 0..=MAX_TAU_DEGREE {
            let mut t = self.terms[k].delta().scale(&inv);
            if k < MAX_TAU_DEGREE {
                t = t.add(&self.terms[k + 1].scale_rat(&rint((k + 1) as i64)));
            }
            out.terms[k] = t;
        }
        out
    }

    /// `δ = x d/dx = pihat · ∂_τ`.
    pub fn delta(&self) -> Self {
        self.dtau().scale(&TwistedScalar::pihat_pow(1))
    }

    /// Substitutes `τ + k` for `τ`.
    pub fn shift(&self, k: i64) -> Self {
        let mut out = TauPoly::zero(self.var(), self.order());
        for (n, t) in self.terms.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            // (τ + k)^n = Σ binom(n, j) k^(n-j) τ^j
            for j in 0..=n {
                let c = rint(binomial(n, j) as i64 * k.pow((n - j) as u32));
                out.terms[j] = out.terms[j].add(&t.scale_rat(&c));
            }
        }
        out
    }

    /// The τ-degree-0, order-0 coefficient (value at the limit point).
    pub fn const_term(&self) -> TwistedScalar {
        self.terms[0].coeff(0)
    }

    /// Value at `x = 0` as a polynomial in τ (τ kept).
    pub fn at_origin(&self) -> Self {
        TauPoly { terms: self.terms.iter().map(|t| t.truncate(1)).collect() }
            .pad_to(self.order())
    }

    fn pad_to(&self, order: usize) -> Self {
        TauPoly {
            terms: self
                .terms
                .iter()
                .map(|t| QSeries::from_fn(t.var(), order, |k| t.coeff(k)))
                .collect(),
        }
    }

    /// Multiplies every coefficient by `var^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        TauPoly { terms: self.terms.iter().map(|t| t.shift_up(k)).collect() }
    }

    /// Composes every series coefficient with `inner` (change of disk
    /// coordinate that leaves τ untouched).
    pub fn compose_series(&self, inner: &QSeries) -> Result<Self, SeriesError> {
        let terms = self
            .terms
            .iter()
            .map(|t| t.with_var_like(inner).compose(inner))
            .collect::<Result<Vec<_>, _>>()?;
        TauPoly::from_terms(terms)
    }

    pub fn conj(&self) -> Self {
        TauPoly { terms: self.terms.iter().map(|t| t.conj()).collect() }
    }

    /// Replaces the variable tag.
    pub fn with_var(&self, var: Var) -> Self {
        TauPoly { terms: self.terms.iter().map(|t| t.clone().with_var(var)).collect() }
    }
}

impl QSeries {
    fn with_var_like(&self, other: &QSeries) -> QSeries {
        self.clone().with_var(other.var())
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

impl fmt::Display for TauPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, t) in self.terms.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "[{t}]")?,
                1 => write!(f, "tau*[{t}]")?,
                _ => write!(f, "tau^{k}*[{t}]")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TauPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    const V: Var = Var::Q;

    #[test]
    fn shift_of_tau_squared() {
        let t2 = TauPoly::tau_pow(2, TwistedScalar::one(), V, 3);
        let want = t2
            .add(&TauPoly::tau(V, 3).scale_rat(&rint(2)))
            .add(&TauPoly::rational(rint(1), V, 3));
        assert_eq!(t2.shift(1), want);
    }

    #[test]
    fn dtau_of_monomial() {
        let qd = TauPoly::from_series(QSeries::monomial(V, 3, TwistedScalar::one(), 5));
        let want = TauPoly::from_series(QSeries::monomial(
            V,
            3,
            TwistedScalar::pihat_pow(-1).mul_rat(&rint(3)),
            5,
        ));
        assert_eq!(qd.dtau(), want);
        assert_eq!(TauPoly::tau(V, 5).dtau(), TauPoly::rational(rint(1), V, 5));
    }

    #[test]
    fn degree_cap_enforced() {
        let t2 = TauPoly::tau_pow(2, TwistedScalar::one(), V, 3);
        assert!(t2.mul(&TauPoly::tau(V, 3)).is_ok());
        assert_eq!(t2.mul(&t2), Err(SeriesError::TauDegreeOverflow(4)));
    }

    #[test]
    fn const_term_reads_limit_value() {
        let p = TauPoly::tau(V, 4)
            .add(&TauPoly::constant(TwistedScalar::c(), V, 4))
            .add(&TauPoly::from_series(QSeries::monomial(V, 1, TwistedScalar::one(), 4)));
        assert_eq!(p.const_term(), TwistedScalar::c());
    }
}
