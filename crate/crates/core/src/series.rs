//! Dense truncated power series over a [`Ring`].
//!
//! A series carries its truncation order explicitly: coefficients are known
//! for exponents `0..order` and nothing is inferred beyond that. Binary
//! operations truncate to the smaller operand order.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{rint, Rat, Ring};
use crate::scalar::{ScalarJson, TwistedScalar};

/// Disk coordinate a series is expanded in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Var {
    #[serde(rename = "s")]
    S,
    #[serde(rename = "q")]
    Q,
    #[serde(rename = "Q")]
    BigQ,
}

impl Var {
    pub fn name(&self) -> &'static str {
        match self {
            Var::S => "s",
            Var::Q => "q",
            Var::BigQ => "Q",
        }
    }

    pub fn parse(s: &str) -> Option<Var> {
        match s {
            "s" => Some(Var::S),
            "q" => Some(Var::Q),
            "Q" => Some(Var::BigQ),
            _ => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("division requires a unit constant term")]
    NonUnitConstant,
    #[error("composition requires the inner series to vanish at 0")]
    NonzeroInnerConstant,
    #[error("reversion requires a(0) = 0")]
    RevertNonzeroConstant,
    #[error("reversion requires a unit linear coefficient")]
    RevertNonUnitSlope,
    #[error("exp requires a zero constant term")]
    ExpNonzeroConstant,
    #[error("log requires constant term 1")]
    LogConstantNotOne,
    #[error("coefficient {index} is not rational: {value}")]
    NotRational { index: usize, value: String },
    #[error("τ-degree {0} exceeds the cap of 3")]
    TauDegreeOverflow(usize),
    #[error("malformed series encoding: {0}")]
    Decode(String),
}

/// Below this order the sequential convolution is always used.
pub const PARALLEL_THRESHOLD: usize = 24;

#[derive(Clone, PartialEq)]
pub struct Series<C> {
    var: Var,
    coeffs: Vec<C>,
}

/// Series over the symbol ring.
pub type QSeries = Series<TwistedScalar>;
/// Series with plain rational coefficients.
pub type RatSeries = Series<Rat>;

impl<C: Ring> Series<C> {
    pub fn zero(var: Var, order: usize) -> Self {
        Series { var, coeffs: vec![C::zero(); order] }
    }

    pub fn one(var: Var, order: usize) -> Self {
        Self::monomial(var, 0, C::one(), order)
    }

    /// `coeff * var^deg`, truncated.
    pub fn monomial(var: Var, deg: usize, coeff: C, order: usize) -> Self {
        let mut s = Self::zero(var, order);
        if deg < order {
            s.coeffs[deg] = coeff;
        }
        s
    }

    /// The coordinate itself.
    pub fn var_series(var: Var, order: usize) -> Self {
        Self::monomial(var, 1, C::one(), order)
    }

    /// Builds from coefficients; `order` is the coefficient count.
    pub fn from_coeffs(var: Var, coeffs: Vec<C>) -> Self {
        Series { var, coeffs }
    }

    pub fn from_fn(var: Var, order: usize, f: impl FnMut(usize) -> C) -> Self {
        Series { var, coeffs: (0..order).map(f).collect() }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient at `k`, zero past the truncation order.
    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn set_coeff(&mut self, k: usize, c: C) {
        if k < self.coeffs.len() {
            self.coeffs[k] = c;
        }
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Series { var: self.var, coeffs: self.coeffs[..n].to_vec() }
    }

    fn check_var(&self, other: &Self) {
        assert_eq!(self.var, other.var, "series in different variables");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_var(other);
        let n = self.order().min(other.order());
        Series {
            var: self.var,
            coeffs: (0..n).map(|k| self.coeffs[k].add(&other.coeffs[k])).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_var(other);
        let n = self.order().min(other.order());
        Series {
            var: self.var,
            coeffs: (0..n).map(|k| self.coeffs[k].sub(&other.coeffs[k])).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.map(|x| x.mul_rat(r))
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        Series { var: self.var, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn map_into<D: Ring>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series { var: self.var, coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Product; dispatches to the parallel kernel for large orders when the
    /// `parallel` feature is on. Both kernels give identical results.
    pub fn mul(&self, other: &Self) -> Self {
        #[cfg(feature = "parallel")]
        {
            if self.order().min(other.order()) >= PARALLEL_THRESHOLD {
                return self.mul_parallel(other);
            }
        }
        self.mul_sequential(other)
    }

    pub fn mul_sequential(&self, other: &Self) -> Self {
        self.check_var(other);
        let n = self.order().min(other.order());
        let coeffs = match integral_pair(&self.coeffs[..n], &other.coeffs[..n]) {
            Some((a, b)) => (0..n).map(|k| C::from_bigint(convolve_int(&a, &b, k))).collect(),
            None => (0..n).map(|k| convolve_at(&self.coeffs, &other.coeffs, k)).collect(),
        };
        Series { var: self.var, coeffs }
    }

    #[cfg(feature = "parallel")]
    pub fn mul_parallel(&self, other: &Self) -> Self {
        use rayon::prelude::*;
        self.check_var(other);
        let n = self.order().min(other.order());
        let coeffs = match integral_pair(&self.coeffs[..n], &other.coeffs[..n]) {
            Some((a, b)) => (0..n)
                .into_par_iter()
                .map(|k| C::from_bigint(convolve_int(&a, &b, k)))
                .collect(),
            None => (0..n)
                .into_par_iter()
                .map(|k| convolve_at(&self.coeffs, &other.coeffs, k))
                .collect(),
        };
        Series { var: self.var, coeffs }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Multiplies by `var^k` (order preserved, top coefficients dropped).
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        Series {
            var: self.var,
            coeffs: (0..n)
                .map(|i| if i >= k { self.coeffs[i - k].clone() } else { C::zero() })
                .collect(),
        }
    }

    /// `δ = var·d/dvar`: multiplies coefficient `d` by `d`.
    pub fn delta(&self) -> Self {
        Series {
            var: self.var,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(d, c)| c.mul_rat(&rint(d as i64)))
                .collect(),
        }
    }

    /// Ordinary derivative; the result has order one less.
    pub fn derivative(&self) -> Self {
        Series {
            var: self.var,
            coeffs: (1..self.order().max(1))
                .map(|d| self.coeffs[d].mul_rat(&rint(d as i64)))
                .collect(),
        }
    }

    /// Multiplicative inverse of a series with unit constant term.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        let inv0 = self.coeffs[0].try_inverse().ok_or(SeriesError::NonUnitConstant)?;
        let mut out: Vec<C> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = C::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc.add_assign_ref(&self.coeffs[j].mul(&out[k - j]));
                }
            }
            out.push(acc.mul(&inv0).neg());
        }
        Ok(Series { var: self.var, coeffs: out })
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&other.inverse()?))
    }

    /// `self ∘ inner`, requiring `inner(0) = 0`. Horner scheme.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if inner.order() > 0 && !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroInnerConstant);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Series::zero(inner.var, n);
        for k in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0].add_assign_ref(&self.coeffs[k]);
        }
        Ok(acc)
    }

    /// Compositional inverse by Lagrange inversion:
    /// `[x^n] b = (1/n) [w^(n-1)] (w/a(w))^n`.
    pub fn revert(&self) -> Result<Self, SeriesError> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::RevertNonzeroConstant);
        }
        if n == 1 {
            return Ok(Series::zero(self.var, 1));
        }
        if self.coeffs[1].try_inverse().is_none() {
            return Err(SeriesError::RevertNonUnitSlope);
        }
        // h = w / a(w), known to order n - 1
        let a_over_w = Series { var: self.var, coeffs: self.coeffs[1..].to_vec() };
        let h = a_over_w.inverse()?;
        let mut out = vec![C::zero(); n];
        let mut power = Series::one(self.var, n - 1);
        for k in 1..n {
            power = power.mul(&h);
            out[k] = power.coeffs[k - 1].mul_rat(&rint(k as i64).recip());
        }
        Ok(Series { var: self.var, coeffs: out })
    }

    /// `exp(self)` for zero constant term, via `n g_n = Σ k f_k g_{n-k}`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        let n = self.order();
        if n > 0 && !self.coeffs[0].is_zero() {
            return Err(SeriesError::ExpNonzeroConstant);
        }
        let mut g: Vec<C> = Vec::with_capacity(n);
        if n > 0 {
            g.push(C::one());
        }
        for m in 1..n {
            let mut acc = C::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc.add_assign_ref(&self.coeffs[k].mul(&g[m - k]).mul_rat(&rint(k as i64)));
                }
            }
            g.push(acc.mul_rat(&rint(m as i64).recip()));
        }
        Ok(Series { var: self.var, coeffs: g })
    }

    /// `log(self)` for constant term 1, as `∫ f'/f`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::LogConstantNotOne);
        }
        // δ log f = δf / f
        let q = self.delta().div(self)?;
        let mut out = vec![C::zero(); n];
        for k in 1..n {
            out[k] = q.coeffs[k].mul_rat(&rint(k as i64).recip());
        }
        Ok(Series { var: self.var, coeffs: out })
    }

    /// `self^r` for rational `r`, constant term 1.
    pub fn pow_rat(&self, r: &Rat) -> Result<Self, SeriesError> {
        self.log()?.scale_rat(r).exp()
    }

    /// Evaluation of a polynomial in δ with rational coefficients (lowest
    /// degree first).
    pub fn apply_delta_poly(&self, poly: &[Rat]) -> Self {
        Series {
            var: self.var,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(d, c)| c.mul_rat(&eval_poly(poly, &rint(d as i64))))
                .collect(),
        }
    }
}

fn integral_pair<C: Ring>(a: &[C], b: &[C]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let a: Vec<BigInt> = a.iter().map(C::as_bigint).collect::<Option<_>>()?;
    let b: Vec<BigInt> = b.iter().map(C::as_bigint).collect::<Option<_>>()?;
    Some((a, b))
}

fn convolve_int(a: &[BigInt], b: &[BigInt], k: usize) -> BigInt {
    let mut acc = BigInt::from(0);
    for i in 0..=k {
        let (x, y) = (&a[i], &b[k - i]);
        if x.sign() != num_bigint::Sign::NoSign && y.sign() != num_bigint::Sign::NoSign {
            acc += x * y;
        }
    }
    acc
}

fn convolve_at<C: Ring>(a: &[C], b: &[C], k: usize) -> C {
    let mut acc = C::zero();
    for i in 0..=k {
        let (x, y) = (&a[i], &b[k - i]);
        if !x.is_zero() && !y.is_zero() {
            acc.add_assign_ref(&x.mul(y));
        }
    }
    acc
}

pub(crate) fn eval_poly(poly: &[Rat], x: &Rat) -> Rat {
    poly.iter().rev().fold(Rat::from_integer(0.into()), |acc, c| acc * x + c)
}

impl RatSeries {
    pub fn to_twisted(&self) -> QSeries {
        self.map_into(|r| TwistedScalar::rational(r.clone()))
    }
}

impl QSeries {
    /// Fails with the first coefficient that still carries a symbol.
    pub fn to_rational(&self) -> Result<RatSeries, SeriesError> {
        let mut out = Vec::with_capacity(self.order());
        for (index, c) in self.coeffs.iter().enumerate() {
            match c.as_rational() {
                Some(r) => out.push(r),
                None => {
                    return Err(SeriesError::NotRational { index, value: c.to_string() })
                }
            }
        }
        Ok(Series { var: self.var, coeffs: out })
    }

    pub fn conj(&self) -> Self {
        self.map(|c| c.conj())
    }
}

impl<C: Ring + fmt::Display> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{}", self.var.name())?,
                _ => write!(f, "({c})*{}^{k}", self.var.name())?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.var.name(), self.order())
    }
}

impl<C: Ring> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{}; {}]{:?}", self.var.name(), self.order(), self.coeffs)
    }
}

/// Wire form: `{"var": "q", "order": N, "coeffs": [[["m,n","num/den"],...],...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub var: Var,
    pub order: usize,
    pub coeffs: Vec<ScalarJson>,
}

impl QSeries {
    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            var: self.var,
            order: self.order(),
            coeffs: self.coeffs.iter().map(|c| c.to_json()).collect(),
        }
    }

    pub fn from_json(raw: &SeriesJson) -> Result<Self, SeriesError> {
        if raw.coeffs.len() != raw.order {
            return Err(SeriesError::Decode(format!(
                "order {} but {} coefficients",
                raw.order,
                raw.coeffs.len()
            )));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                TwistedScalar::from_json(c)
                    .ok_or_else(|| SeriesError::Decode(format!("bad coefficient {i}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Series { var: raw.var, coeffs })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("series encoding is infallible")
    }

    pub fn from_json_str(s: &str) -> Result<Self, SeriesError> {
        let raw: SeriesJson =
            serde_json::from_str(s).map_err(|e| SeriesError::Decode(e.to_string()))?;
        Self::from_json(&raw)
    }
}

/// `Σ_{n<order} f(n) var^n` with rational coefficients.
pub fn rat_series(var: Var, order: usize, f: impl FnMut(usize) -> Rat) -> RatSeries {
    Series::from_fn(var, order, f)
}

/// `1 + var` style helpers used in tests and pipelines.
pub fn one_plus_var(var: Var, order: usize) -> RatSeries {
    Series::one(var, order).add(&Series::var_series(var, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, rint};

    fn rs(c: &[i64], order: usize) -> RatSeries {
        Series::from_fn(Var::Q, order, |k| rint(*c.get(k).unwrap_or(&0)))
    }

    #[test]
    fn difference_of_squares() {
        let a = rs(&[1, 1], 5);
        let b = rs(&[1, -1], 5);
        assert_eq!(a.mul(&b), rs(&[1, 0, -1], 5));
    }

    #[test]
    fn geometric_series() {
        let g = rs(&[1], 6).div(&rs(&[1, -1], 6)).unwrap();
        assert_eq!(g, rs(&[1, 1, 1, 1, 1, 1], 6));
    }

    #[test]
    fn mixed_orders_truncate_to_min() {
        let a = rs(&[1, 2, 3], 7);
        let b = rs(&[1, 1], 4);
        assert_eq!(a.mul(&b).order(), 4);
        assert_eq!(a.add(&b).order(), 4);
    }

    #[test]
    fn precondition_errors_are_distinct() {
        let zero_const = rs(&[0, 1], 4);
        assert_eq!(rs(&[1], 4).div(&zero_const), Err(SeriesError::NonUnitConstant));
        assert_eq!(
            rs(&[1, 1], 4).compose(&rs(&[1, 1], 4)),
            Err(SeriesError::NonzeroInnerConstant)
        );
        assert_eq!(rs(&[1, 1], 4).revert(), Err(SeriesError::RevertNonzeroConstant));
        assert_eq!(rs(&[0, 0, 1], 4).revert(), Err(SeriesError::RevertNonUnitSlope));
        assert_eq!(rs(&[1, 1], 4).exp(), Err(SeriesError::ExpNonzeroConstant));
        assert_eq!(rs(&[2, 1], 4).log(), Err(SeriesError::LogConstantNotOne));
    }

    #[test]
    fn revert_identity_and_catalan() {
        let q = rs(&[0, 1], 8);
        assert_eq!(q.revert().unwrap(), q);
        // q + q^2 reverts to Σ (-1)^(n-1) Cat(n-1) q^n
        let got = rs(&[0, 1, 1], 6).revert().unwrap();
        assert_eq!(got, rs(&[0, 1, -1, 2, -5, 14], 6));
    }

    #[test]
    fn delta_of_monomial() {
        assert_eq!(rs(&[0, 0, 0, 1], 5).delta(), rs(&[0, 0, 0, 3], 5));
    }

    #[test]
    fn exp_log_roundtrip() {
        let onep = one_plus_var(Var::Q, 10);
        assert_eq!(onep.log().unwrap().exp().unwrap(), onep);
    }

    #[test]
    fn cube_root() {
        let x = rs(&[1, 3, 3, 1], 8);
        assert_eq!(x.pow_rat(&rat(1, 3)).unwrap(), rs(&[1, 1], 8));
    }

    #[test]
    fn symbolic_inverse_needs_unit() {
        let p = TwistedScalar::pihat_pow(1);
        let s = QSeries::from_coeffs(Var::Q, vec![p.clone(), TwistedScalar::one()]);
        let inv = s.inverse().unwrap();
        assert_eq!(s.mul(&inv), QSeries::one(Var::Q, 2));
        let bad = QSeries::from_coeffs(Var::Q, vec![TwistedScalar::c(), TwistedScalar::one()]);
        assert_eq!(bad.inverse(), Err(SeriesError::NonUnitConstant));
    }

    #[test]
    fn json_roundtrip_is_bit_exact() {
        let s = QSeries::from_coeffs(
            Var::BigQ,
            vec![
                TwistedScalar::one(),
                TwistedScalar::c().mul_rat(&rat(-7, 3)),
                TwistedScalar::pihat_pow(-2),
            ],
        );
        let text = s.to_json_string();
        let back = QSeries::from_json_str(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_json_string(), text);
        assert!(text.starts_with(r#"{"var":"Q","order":3,"coeffs":[[["0,0","1/1"]]"#));
    }
}
