//! Two-parameter prepotential and its `q1 → 0` limit onto the local
//! `K_P2` geometry.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::instanton::InstantonTable;
use crate::local_p2::{self, DualClass};
use crate::quintic_b;
use crate::report::CheckReport;
use crate::ring::{parse_rat, rat, rat_to_string, rint, Rat, Ring};
use crate::scalar::TwistedScalar;
use crate::series::{QSeries, RatSeries, Series, SeriesError, Var};
use crate::taupoly::{TauPoly, MAX_TAU_DEGREE};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TwoParamError {
    #[error("limit q1 -> 0 diverges: {0}")]
    Divergent(String),
    #[error("class has no compact-support image: {0}")]
    NotCompact(String),
    #[error("table decode error: {0}")]
    Decode(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Truncated series in `q1, q2` with rectangular support `d1 < n1, d2 < n2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series2 {
    n1: usize,
    n2: usize,
    coeffs: Vec<Vec<TwistedScalar>>,
}

impl Series2 {
    pub fn zero(n1: usize, n2: usize) -> Self {
        Series2 { n1, n2, coeffs: vec![vec![TwistedScalar::zero(); n2]; n1] }
    }

    pub fn constant(c: TwistedScalar, n1: usize, n2: usize) -> Self {
        let mut s = Self::zero(n1, n2);
        if n1 > 0 && n2 > 0 {
            s.coeffs[0][0] = c;
        }
        s
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.n1, self.n2)
    }

    pub fn coeff(&self, d1: usize, d2: usize) -> &TwistedScalar {
        &self.coeffs[d1][d2]
    }

    pub fn set(&mut self, d1: usize, d2: usize, c: TwistedScalar) {
        self.coeffs[d1][d2] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c.is_zero())
    }

    pub fn map_indexed(&self, f: impl Fn(usize, usize, &TwistedScalar) -> TwistedScalar) -> Self {
        Series2 {
            n1: self.n1,
            n2: self.n2,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, row)| row.iter().enumerate().map(|(j, c)| f(i, j, c)).collect())
                .collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.orders(), o.orders());
        self.map_indexed(|i, j, c| c.add(&o.coeffs[i][j]))
    }

    pub fn scale(&self, c: &TwistedScalar) -> Self {
        self.map_indexed(|_, _, x| x.mul(c))
    }

    /// `δ_{q_k}`.
    pub fn delta(&self, k: usize) -> Self {
        self.map_indexed(|i, j, c| c.mul_rat(&rint(if k == 1 { i } else { j } as i64)))
    }

    /// The `q1 = 0` slice as a `Q`-series.
    pub fn slice_q1_zero(&self) -> QSeries {
        Series::from_fn(Var::BigQ, self.n2, |j| {
            if self.n1 == 0 {
                TwistedScalar::zero()
            } else {
                self.coeffs[0][j].clone()
            }
        })
    }
}

/// Polynomial in `τ1, τ2` with `Series2` coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TauPoly2 {
    n1: usize,
    n2: usize,
    terms: BTreeMap<(u32, u32), Series2>,
}

impl TauPoly2 {
    pub fn zero(n1: usize, n2: usize) -> Self {
        TauPoly2 { n1, n2, terms: BTreeMap::new() }
    }

    pub fn monomial(a: u32, b: u32, c: TwistedScalar, n1: usize, n2: usize) -> Self {
        let mut p = Self::zero(n1, n2);
        p.add_term(a, b, Series2::constant(c, n1, n2));
        p
    }

    pub fn from_series(s: Series2) -> Self {
        let (n1, n2) = s.orders();
        let mut p = Self::zero(n1, n2);
        p.add_term(0, 0, s);
        p
    }

    fn add_term(&mut self, a: u32, b: u32, s: Series2) {
        let entry = self.terms.entry((a, b)).or_insert_with(|| Series2::zero(s.n1, s.n2));
        *entry = entry.add(&s);
        if entry.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn term(&self, a: u32, b: u32) -> Series2 {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(|| Series2::zero(self.n1, self.n2))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), s) in &o.terms {
            out.add_term(a, b, s.clone());
        }
        out
    }

    pub fn scale(&self, c: &TwistedScalar) -> Self {
        let mut out = Self::zero(self.n1, self.n2);
        for (&(a, b), s) in &self.terms {
            out.add_term(a, b, s.scale(c));
        }
        out
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.scale(&TwistedScalar::rational(r.clone()))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale_rat(&rint(-1)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `∂_{τ_k}` with `∂_{τ_k} q_k^d = pihat^-1 d q_k^d`.
    pub fn d(&self, k: usize) -> Self {
        let inv = TwistedScalar::pihat_pow(-1);
        let mut out = Self::zero(self.n1, self.n2);
        for (&(a, b), s) in &self.terms {
            out.add_term(a, b, s.delta(k).scale(&inv));
            let (e, a2, b2) = if k == 1 { (a, a.wrapping_sub(1), b) } else { (b, a, b.wrapping_sub(1)) };
            if e > 0 {
                out.add_term(a2, b2, s.scale(&TwistedScalar::rational(rint(e as i64))));
            }
        }
        out
    }

    /// `d1 - 3 d2` applied as `∂_{τ1} - 3∂_{τ2}`.
    pub fn d_d2(&self) -> Self {
        self.d(1).sub(&self.d(2).scale_rat(&rint(3)))
    }

    /// Sets `q1 = 0`. Any surviving `τ1`-dependence diverges as
    /// `τ1 → i∞` and is reported. The result is a polynomial in `𝒯 = τ2`.
    pub fn limit_q1_to_0(&self) -> Result<TauPoly, TwoParamError> {
        let mut terms = vec![QSeries::zero(Var::BigQ, self.n2); MAX_TAU_DEGREE + 1];
        for (&(a, b), s) in &self.terms {
            let slice = s.slice_q1_zero();
            if slice.is_zero() {
                continue;
            }
            if a > 0 {
                return Err(TwoParamError::Divergent(format!("τ1^{a} τ2^{b} term survives")));
            }
            if b as usize > MAX_TAU_DEGREE {
                return Err(TwoParamError::Series(SeriesError::TauDegreeOverflow(b as usize)));
            }
            terms[b as usize] = terms[b as usize].add(&slice);
        }
        Ok(TauPoly::from_terms(terms)?)
    }
}

/// `Ñ_{d1,d2}` keyed by degree.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TwoParamTable {
    entries: BTreeMap<(u32, u32), Rat>,
}

/// JSON rows `[d1, d2, "num/den"]`.
pub type TwoParamTableJson = Vec<(u32, u32, String)>;

impl TwoParamTable {
    pub fn new(entries: BTreeMap<(u32, u32), Rat>) -> Self {
        TwoParamTable { entries }
    }

    /// `Ñ_{0,d} = N_d` from a local table, with `extra(d1, d2)` for `d1 ≥ 1`.
    pub fn from_local(
        local: &InstantonTable,
        n1: usize,
        n2: usize,
        extra: impl Fn(u32, u32) -> Rat,
    ) -> Self {
        let mut entries = BTreeMap::new();
        for d2 in 1..n2.min(local.len() + 1) as u32 {
            entries.insert((0, d2), local.gw(d2));
        }
        for d1 in 1..n1 as u32 {
            for d2 in 0..n2 as u32 {
                let v = extra(d1, d2);
                if !v.is_zero() {
                    entries.insert((d1, d2), v);
                }
            }
        }
        TwoParamTable { entries }
    }

    pub fn get(&self, d1: u32, d2: u32) -> Rat {
        self.entries.get(&(d1, d2)).cloned().unwrap_or_else(|| rint(0))
    }

    pub fn entries(&self) -> &BTreeMap<(u32, u32), Rat> {
        &self.entries
    }

    /// `Ñ_{0,d} = N_d` for `1 ≤ d ≤ upto`.
    pub fn local_row_matches(&self, local: &InstantonTable, upto: usize) -> bool {
        (1..=upto.min(local.len()) as u32).all(|d| self.get(0, d) == local.gw(d))
    }

    pub fn to_json(&self) -> TwoParamTableJson {
        self.entries.iter().map(|(&(a, b), v)| (a, b, rat_to_string(v))).collect()
    }

    pub fn from_json(rows: &TwoParamTableJson) -> Result<Self, TwoParamError> {
        let mut entries = BTreeMap::new();
        for (a, b, v) in rows {
            let r = parse_rat(v).ok_or_else(|| TwoParamError::Decode(format!("bad rational {v}")))?;
            entries.insert((*a, *b), r);
        }
        Ok(TwoParamTable { entries })
    }

    pub fn from_json_str(s: &str) -> Result<Self, TwoParamError> {
        let rows: TwoParamTableJson =
            serde_json::from_str(s).map_err(|e| TwoParamError::Decode(e.to_string()))?;
        Self::from_json(&rows)
    }
}

/// `Φ̃ = 3/2τ1³ + 3/2τ1²τ2 + ½τ1τ2² + {17/4τ1 + 3/2τ2 + C} + pihat³ Σ Ñ q1^d1 q2^d2`.
#[derive(Clone, Debug)]
pub struct TwoParamPrepotential {
    pub table: TwoParamTable,
    /// The constant `C`; an independent slot defaulting to `200c`.
    pub constant: TwistedScalar,
    pub n1: usize,
    pub n2: usize,
}

impl TwoParamPrepotential {
    pub fn new(table: TwoParamTable, n1: usize, n2: usize) -> Self {
        TwoParamPrepotential { table, constant: quintic_b::conifold_constant(), n1, n2 }
    }

    pub fn with_constant(mut self, c: TwistedScalar) -> Self {
        self.constant = c;
        self
    }

    pub fn polynomial_part(&self) -> TauPoly2 {
        let (n1, n2) = (self.n1, self.n2);
        let m = |a, b, r: Rat| TauPoly2::monomial(a, b, TwistedScalar::rational(r), n1, n2);
        m(3, 0, rat(3, 2))
            .add(&m(2, 1, rat(3, 2)))
            .add(&m(1, 2, rat(1, 2)))
            .add(&m(1, 0, rat(17, 4)))
            .add(&m(0, 1, rat(3, 2)))
            .add(&TauPoly2::monomial(0, 0, self.constant.clone(), n1, n2))
    }

    pub fn instanton_part(&self) -> TauPoly2 {
        let mut s = Series2::zero(self.n1, self.n2);
        let p3 = TwistedScalar::pihat_pow(3);
        for (&(a, b), v) in self.table.entries() {
            if (a as usize) < self.n1 && (b as usize) < self.n2 {
                s.set(a as usize, b as usize, p3.mul_rat(v));
            }
        }
        TauPoly2::from_series(s)
    }

    pub fn phi(&self) -> TauPoly2 {
        self.polynomial_part().add(&self.instanton_part())
    }

    /// `(∂_{τ1} - 3∂_{τ2}) Φ̃`.
    pub fn finite_period(&self) -> TauPoly2 {
        self.phi().d_d2()
    }

    /// `½τ2² - ¼ + pihat² Σ Ñ (d1 - 3d2) q1^d1 q2^d2`, written out directly.
    pub fn finite_period_closed_form(&self) -> TauPoly2 {
        let (n1, n2) = (self.n1, self.n2);
        let mut s = Series2::zero(n1, n2);
        let p2 = TwistedScalar::pihat_pow(2);
        for (&(a, b), v) in self.table.entries() {
            if (a as usize) < n1 && (b as usize) < n2 {
                s.set(a as usize, b as usize, p2.mul_rat(&(v * rint(a as i64 - 3 * b as i64))));
            }
        }
        TauPoly2::monomial(0, 2, TwistedScalar::rational(rat(1, 2)), n1, n2)
            .add(&TauPoly2::monomial(0, 0, TwistedScalar::rational(rat(-1, 4)), n1, n2))
            .add(&TauPoly2::from_series(s))
    }

    /// `∂_j ∂_k ∂_ℓ Φ̃`, `j, k, ℓ ∈ {1, 2}`.
    pub fn third_derivative(&self, j: usize, k: usize, l: usize) -> TauPoly2 {
        self.phi().d(j).d(k).d(l)
    }
}

/// Class over `(1, J1, J2, [C1], [C2], [pt])`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoParamClass(pub [TauPoly2; 6]);

pub const ONE: usize = 0;
pub const J1: usize = 1;
pub const J2: usize = 2;
pub const C1: usize = 3;
pub const C2: usize = 4;
pub const PT: usize = 5;

impl TwoParamClass {
    pub fn zero(n1: usize, n2: usize) -> Self {
        TwoParamClass(std::array::from_fn(|_| TauPoly2::zero(n1, n2)))
    }

    pub fn basis(i: usize, n1: usize, n2: usize) -> Self {
        let mut c = Self::zero(n1, n2);
        c.0[i] = TauPoly2::monomial(0, 0, TwistedScalar::one(), n1, n2);
        c
    }

    /// `[D2] = J1 - 3J2`.
    pub fn d2(n1: usize, n2: usize) -> Self {
        Self::basis(J1, n1, n2).add(&Self::basis(J2, n1, n2).scale_rat(&rint(-3)))
    }

    pub fn add(&self, o: &Self) -> Self {
        TwoParamClass(std::array::from_fn(|i| self.0[i].add(&o.0[i])))
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        TwoParamClass(std::array::from_fn(|i| self.0[i].scale_rat(r)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(TauPoly2::is_zero)
    }
}

/// `J_j * J_k = Σ_ℓ (∂_j∂_k∂_ℓ Φ̃)[C_ℓ]`.
pub fn quantum_product_2p(pre: &TwoParamPrepotential, j: usize, k: usize) -> TwoParamClass {
    let mut out = TwoParamClass::zero(pre.n1, pre.n2);
    out.0[C1] = pre.third_derivative(j, k, 1);
    out.0[C2] = pre.third_derivative(j, k, 2);
    out
}

/// Bilinear extension for classes with constant (rational) coefficients on
/// the `J`'s: `1` is the unit, `J_j·[C_k] = δ_jk [pt]`, other products of
/// positive-degree classes vanish.
pub fn product(pre: &TwoParamPrepotential, a: &TwoParamClass, b: &TwoParamClass) -> Result<TwoParamClass, TwoParamError> {
    let (n1, n2) = (pre.n1, pre.n2);
    let constant = |p: &TauPoly2| -> Result<TwistedScalar, TwoParamError> {
        if p.is_zero() {
            return Ok(TwistedScalar::zero());
        }
        let t = p.term(0, 0);
        if p.terms.len() == 1 && (0..n1).all(|i| (0..n2).all(|j| (i, j) == (0, 0) || t.coeff(i, j).is_zero())) {
            Ok(t.coeff(0, 0).clone())
        } else {
            Err(TwoParamError::NotCompact("product expects constant coefficients".into()))
        }
    };
    let ca: Vec<TwistedScalar> = a.0.iter().map(constant).collect::<Result<_, _>>()?;
    let cb: Vec<TwistedScalar> = b.0.iter().map(constant).collect::<Result<_, _>>()?;
    let mut out = TwoParamClass::zero(n1, n2);
    let add_scaled = |out: &mut TwoParamClass, cls: &TwoParamClass, c: &TwistedScalar| {
        if !c.is_zero() {
            for i in 0..6 {
                out.0[i] = out.0[i].add(&cls.0[i].scale(c));
            }
        }
    };
    for i in 0..6 {
        for j in 0..6 {
            let c = ca[i].mul(&cb[j]);
            if c.is_zero() {
                continue;
            }
            let term = match (i, j) {
                (ONE, x) | (x, ONE) => TwoParamClass::basis(x, n1, n2),
                (J1 | J2, J1 | J2) => quantum_product_2p(pre, i, j),
                (J1, C1) | (C1, J1) | (J2, C2) | (C2, J2) => TwoParamClass::basis(PT, n1, n2),
                _ => TwoParamClass::zero(n1, n2),
            };
            add_scaled(&mut out, &term, &c);
        }
    }
    Ok(out)
}

/// `q1 → 0` onto the local dual basis: `[pt] ↦ e3^∨`, `[C2] ↦ e2^∨`,
/// `[D2] ↦ e1^∨`. The `[C1]` and unit components must vanish in the
/// limit and the `J`-part must be a multiple of `[D2]`.
pub fn limit_q1_to_0(c: &TwoParamClass) -> Result<DualClass, TwoParamError> {
    let lim: Vec<TauPoly> = c.0.iter().map(TauPoly2::limit_q1_to_0).collect::<Result<_, _>>()?;
    let series = |i: usize, label: &str| -> Result<RatSeries, TwoParamError> {
        let t = &lim[i];
        if (1..=MAX_TAU_DEGREE).any(|k| !t.term(k).is_zero()) {
            return Err(TwoParamError::Divergent(format!("{label} coefficient depends on τ2")));
        }
        Ok(t.term(0).to_rational()?)
    };
    for (i, label) in [(ONE, "unit"), (C1, "[C1]")] {
        if !series(i, label)?.is_zero() {
            return Err(TwoParamError::NotCompact(format!("{label} component survives the limit")));
        }
    }
    let j1 = series(J1, "J1")?;
    let j2 = series(J2, "J2")?;
    if !j2.add(&j1.scale_rat(&rint(3))).is_zero() {
        return Err(TwoParamError::NotCompact("J-part is not a multiple of [D2]".into()));
    }
    Ok(DualClass([series(PT, "[pt]")?, series(C2, "[C2]")?, j1]))
}

/// Report of the two limit statements against a local model.
pub fn limit_check(pre: &TwoParamPrepotential, local: &local_p2::LocalP2) -> Result<CheckReport, TwoParamError> {
    let mut r = CheckReport::new("q1 -> 0 limit");
    let (n1, n2) = (pre.n1, pre.n2);
    r.require(pre.table.local_row_matches(&local.table, n2 - 1), || "Ñ_{0,d} != N_d".to_string());
    let d2 = TwoParamClass::d2(n1, n2);
    let sq = product(pre, &d2, &d2)?;
    let lim = limit_q1_to_0(&sq)?;
    let phi2 = local.phi2.truncate(n2);
    // + 3Φ''[C2] = 0
    r.require(lim.0[1].add(&phi2.scale_rat(&rint(3))).is_zero(), || {
        "lim [D2]*[D2] + 3Φ''[C2] != 0".to_string()
    });
    r.require(lim.0[0].is_zero() && lim.0[2].is_zero(), || "unexpected [pt] or [D2] part".into());
    let e1 = DualClass::basis(0, Var::BigQ, n2);
    let local_sq = local_p2::local_quantum_product(&e1, &e1, &phi2);
    r.require(local_sq == lim, || "limit differs from e1^∨ * e1^∨".to_string());
    let fin = pre.finite_period();
    r.require(fin.sub(&pre.finite_period_closed_form()).is_zero(), || {
        "(∂1 - 3∂2)Φ̃ differs from its closed form".to_string()
    });
    let phi_loc = local_p2::local_prepotential_loc(&local.table, n2);
    let lim_fin = fin.limit_q1_to_0()?;
    r.require(lim_fin.sub(&phi_loc).is_zero(), || "lim (∂1 - 3∂2)Φ̃ != Φ_loc".to_string());
    Ok(r)
}

/// `γ̂1 = γ1 + ½γ3`, `γ̂2 = γ2 - ½γ3` applied to
/// `γ̂1 + τ2 γ̂2 + {(∂1 - 3∂2)Φ̃} γ̂3`, then relabelled `γ_i ↦ γ_{4-i}` to
/// match the local frame's ordering. Compared with the local `e3`.
pub fn basis_change_check(pre: &TwoParamPrepotential, local: &local_p2::LocalP2) -> Result<CheckReport, TwoParamError> {
    let mut r = CheckReport::new("basis change onto the local frame");
    let n2 = pre.n2;
    let t = TauPoly::tau(Var::BigQ, n2);
    let one = TauPoly::rational(rint(1), Var::BigQ, n2);
    let half = TauPoly::rational(rat(1, 2), Var::BigQ, n2);
    let fin = pre.finite_period().limit_q1_to_0()?;
    // coefficients on (γ1, γ2, γ3) in the two-parameter labelling
    let g1 = one.clone();
    let g2 = t.clone();
    let g3 = fin.add(&half).sub(&t.mul(&half)?);
    // relabel to (γ3, γ2, γ1) of the local frame
    let relabelled = [g1, g2, g3];
    let local_e3 = &local.frame().map_err(|e| TwoParamError::Decode(e.to_string()))?[2];
    for (i, label) in ["γ3", "γ2", "γ1"].iter().enumerate() {
        let want = local_e3[i].truncate(n2);
        r.require(relabelled[i].sub(&want).is_zero(), || format!("{label} coefficient differs"));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_p2::LocalP2;

    fn setup(n: usize, extra: impl Fn(u32, u32) -> Rat) -> (TwoParamPrepotential, LocalP2) {
        let local = LocalP2::new(n).unwrap();
        let table = TwoParamTable::from_local(&local.table, 3, n, extra);
        (TwoParamPrepotential::new(table, 3, n), local)
    }

    #[test]
    fn classical_products() {
        let pre = TwoParamPrepotential::new(TwoParamTable::default(), 2, 2);
        let value = |p: &TauPoly2| p.limit_q1_to_0().unwrap().term(0).coeff(0);
        // Φ_111 = 9, Φ_112 = 3, Φ_122 = 1, Φ_222 = 0
        let expect = [((1, 1), (9, 3)), ((1, 2), (3, 1)), ((2, 2), (1, 0))];
        for ((j, k), (c1, c2)) in expect {
            let p = quantum_product_2p(&pre, j, k);
            assert_eq!(value(&p.0[C1]), TwistedScalar::rational(rint(c1)));
            assert_eq!(value(&p.0[C2]), TwistedScalar::rational(rint(c2)));
        }
        let divergent = TauPoly2::monomial(1, 0, TwistedScalar::one(), 2, 2);
        assert!(matches!(divergent.limit_q1_to_0(), Err(TwoParamError::Divergent(_))));
    }

    #[test]
    fn limit_matches_local() {
        let (pre, local) = setup(8, |a, b| rat(a as i64 * 7 - b as i64, 1 + b as i64));
        let r = limit_check(&pre, &local).unwrap();
        assert!(r.passed, "{:?}", r.failures);
        let r = basis_change_check(&pre, &local).unwrap();
        assert!(r.passed, "{:?}", r.failures);
    }

    #[test]
    fn symmetric_products() {
        let (pre, _) = setup(5, |a, b| rat(a as i64 + 2 * b as i64, 3));
        assert_eq!(quantum_product_2p(&pre, 1, 2), quantum_product_2p(&pre, 2, 1));
    }

    #[test]
    fn table_json() {
        let t = TwoParamTable::from_json_str(r#"[[0,1,"3"],[1,2,"-5/2"]]"#).unwrap();
        assert_eq!(t.get(1, 2), rat(-5, 2));
        assert_eq!(TwoParamTable::from_json(&t.to_json()).unwrap(), t);
    }
}
