//! B-model of the mirror quintic: periods, mirror map, Yukawa coupling,
//! instanton numbers, the mixed Hodge basis and its connection.

use thiserror::Error;

use crate::filtration::{ExactMatrix, SymFrac};
use crate::frame::{self, FrameVector, RatMatrix};
use crate::frobenius::HypergeometricOperator;
use crate::instanton::{InstantonTable, TableError};
use crate::report::CheckReport;
use crate::ring::{factorial, rat, rint, Rat, Ring};
use crate::scalar::TwistedScalar;
use crate::series::{QSeries, RatSeries, Series, SeriesError, Var};
use crate::taupoly::TauPoly;

pub const DEFAULT_ORDER: usize = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PipelineError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("order {got} below the minimum {min} for {what}")]
    OrderTooSmall { what: &'static str, min: usize, got: usize },
    #[error("{0}")]
    Check(String),
}

/// Monodromy constants `(a, b, e, f)` of the quintic.
pub fn constants() -> (Rat, Rat, Rat, Rat) {
    (rint(-1), rint(5), rat(11, 2), rat(-25, 6))
}

/// `C = 25 i ζ(3)/π³ = 200 c`.
pub fn conifold_constant() -> TwistedScalar {
    TwistedScalar::c().mul_rat(&rint(200))
}

/// `[N]_γ` on the ordered basis `(γ3, γ2, γ1, γ0)`.
pub fn n_gamma() -> RatMatrix {
    let (a, b, e, f) = constants();
    let z = rint(0);
    vec![
        vec![z.clone(), z.clone(), z.clone(), z.clone()],
        vec![a, z.clone(), z.clone(), z.clone()],
        vec![e.clone(), b, z.clone(), z.clone()],
        vec![f, e, rint(1), z],
    ]
}

/// `[Q]_γ` with `Q(x, y) = xᵀ Q y`.
pub fn q_gamma() -> RatMatrix {
    let m = |v: [i64; 4]| v.iter().map(|&x| rint(x)).collect::<Vec<_>>();
    vec![m([0, 0, 0, 1]), m([0, 0, 1, 0]), m([0, -1, 0, 0]), m([-1, 0, 0, 0])]
}

pub fn operator() -> HypergeometricOperator {
    HypergeometricOperator::quintic()
}

fn check_order(what: &'static str, min: usize, got: usize) -> Result<(), PipelineError> {
    if got < min {
        return Err(PipelineError::OrderTooSmall { what, min, got });
    }
    Ok(())
}

/// `Σ (5n)!/(n!)^5 s^n`, from the closed form.
pub fn holomorphic_period(order: usize) -> RatSeries {
    Series::from_fn(Var::S, order, |n| {
        let num = factorial(5 * n as u64);
        let den = factorial(n as u64).pow(5);
        Rat::new(num, den)
    })
}

/// Frobenius solutions `ϖ_0..ϖ_3` in `τ_s` with their series parts.
#[derive(Clone, Debug)]
pub struct FrobeniusBasis {
    pub series: Vec<RatSeries>,
    pub solutions: Vec<TauPoly>,
}

impl FrobeniusBasis {
    /// Rational matrix `T` with `ϖ_j(τ+1) = Σ_i T_ij ϖ_i(τ)`, checked exactly.
    pub fn monodromy(&self) -> Result<RatMatrix, PipelineError> {
        let r = self.solutions.len();
        let mut t = vec![vec![rint(0); r]; r];
        let mut inv_fact = rint(1);
        for m in 0..r {
            if m > 0 {
                inv_fact /= rint(m as i64);
            }
            for j in m..r {
                t[j - m][j] = inv_fact.clone();
            }
        }
        for j in 0..r {
            let shifted = self.solutions[j].shift(1);
            let expected = (0..r).fold(TauPoly::zero(shifted.var(), shifted.order()), |acc, i| {
                acc.add(&self.solutions[i].scale_rat(&t[i][j]))
            });
            if !shifted.sub(&expected).is_zero() {
                return Err(PipelineError::Check(format!("shift of ϖ_{j} is not unipotent")));
            }
        }
        Ok(t)
    }
}

pub fn frobenius_basis(order: usize) -> Result<FrobeniusBasis, PipelineError> {
    check_order("frobenius_basis", 4, order)?;
    let op = operator();
    Ok(FrobeniusBasis {
        series: op.frobenius_series(Var::S, order),
        solutions: op.frobenius_basis(Var::S, order),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MirrorMap {
    pub q_of_s: RatSeries,
    pub s_of_q: RatSeries,
}

/// `q = exp(2πi ϖ_1/ϖ_0) = s · exp(A_1/A_0)`. The exponent is formed in the
/// symbol ring as `pihat^-1 · (pihat A_1/A_0)`, so the result is rational
/// only if the symbols cancel.
pub fn mirror_map_from(series: &[RatSeries]) -> Result<MirrorMap, PipelineError> {
    let order = series[0].order();
    let ratio = series[1].to_twisted().div(&series[0].to_twisted())?;
    let single_log = ratio.scale(&TwistedScalar::pihat_pow(1));
    let exponent = single_log.scale(&TwistedScalar::pihat_pow(-1));
    let unit = exponent.exp()?.to_rational()?;
    let q_of_s = unit.shift_up(1).truncate(order);
    let s_of_q = q_of_s.revert()?.with_var(Var::Q);
    Ok(MirrorMap { q_of_s, s_of_q })
}

pub fn mirror_map(order: usize) -> Result<MirrorMap, PipelineError> {
    check_order("mirror_map", 2, order)?;
    mirror_map_from(&operator().frobenius_series(Var::S, order))
}

/// `Y(q) = 5 (δ_q log s)^3 / (ϖ_0(s)^2 (1 - 5^5 s))`, as a `q`-series.
pub fn yukawa(order: usize) -> Result<RatSeries, PipelineError> {
    check_order("yukawa", 1, order)?;
    let inner = order + 1;
    let series = operator().frobenius_series(Var::S, inner);
    let mm = mirror_map_from(&series)?;
    yukawa_from(&series[0], &mm.s_of_q, order)
}

fn yukawa_from(a0: &RatSeries, s_of_q: &RatSeries, order: usize) -> Result<RatSeries, PipelineError> {
    let s = s_of_q;
    // s/q has one fewer reliable coefficient than s
    let s_over_q = Series::from_fn(Var::Q, order, |k| s.coeff(k + 1));
    let dlog = s_over_q.log()?.delta().add(&Series::one(Var::Q, order));
    let s_trunc = s.truncate(order);
    let w0 = a0.clone().with_var(Var::Q).compose(&s_trunc)?;
    let disc = Series::one(Var::Q, order).sub(&s_trunc.scale_rat(&rint(3125)));
    let num = dlog.square().mul(&dlog).scale_rat(&rint(5));
    Ok(num.div(&w0.square().mul(&disc))?)
}

/// GW invariants from `Y = 5 + Σ N_d d^3 q^d`, BPS numbers by inversion.
pub fn instanton_numbers_from_yukawa(y: &RatSeries) -> Result<InstantonTable, PipelineError> {
    let gw: Vec<Rat> = (1..y.order())
        .map(|d| y.coeff(d) / rint((d * d * d) as i64))
        .collect();
    Ok(InstantonTable::from_gw(gw)?)
}

pub fn instanton_numbers(upto_d: usize) -> Result<InstantonTable, PipelineError> {
    check_order("instanton_numbers", 1, upto_d)?;
    instanton_numbers_from_yukawa(&yukawa(upto_d + 1)?)
}

/// `Φ_h`, `Φ_h'`, `Φ_h''` as symbol-valued `q`-series of the given order.
#[derive(Clone, Debug)]
pub struct PrepotentialParts {
    pub phi: QSeries,
    pub phi1: QSeries,
    pub phi2: QSeries,
}

pub fn prepotential_parts(table: &InstantonTable, order: usize) -> PrepotentialParts {
    let part = |pihat: i32, power: u32| {
        Series::from_fn(Var::Q, order, |d| {
            if d == 0 || d > table.len() {
                return TwistedScalar::zero();
            }
            let w = rint((d as i64).pow(power));
            TwistedScalar::pihat_pow(pihat).mul_rat(&(table.gw(d as u32) * w))
        })
    };
    PrepotentialParts { phi: part(3, 0), phi1: part(2, 1), phi2: part(1, 2) }
}

/// The basis `e_0..e_3` (returned in that order), each in coordinates
/// over `(γ3, γ2, γ1, γ0)`.
pub fn hodge_basis_from(parts: &PrepotentialParts, order: usize) -> [FrameVector; 4] {
    let var = Var::Q;
    let ser = |s: &QSeries| TauPoly::from_series(s.clone());
    let r = |x: Rat| TauPoly::rational(x, var, order);
    let tau = TauPoly::tau(var, order);
    let tau2 = TauPoly::tau_pow(2, TwistedScalar::one(), var, order);
    let tau3 = TauPoly::tau_pow(3, TwistedScalar::one(), var, order);
    let zero = TauPoly::zero(var, order);
    let one = r(rint(1));
    let mul = |a: &TauPoly, b: &TauPoly| a.mul(b).expect("degree stays within 3");
    let (phi, phi1, phi2) = (ser(&parts.phi), ser(&parts.phi1), ser(&parts.phi2));
    let big_c = TauPoly::constant(conifold_constant(), var, order);

    let e0 = vec![zero.clone(), zero.clone(), zero.clone(), one.clone()];
    let e1 = vec![zero.clone(), zero.clone(), one.clone(), tau.neg()];
    let e2 = vec![
        zero.clone(),
        one.clone(),
        tau.scale_rat(&rint(5)).add(&r(rat(11, 2))).add(&phi2).neg(),
        tau2.scale_rat(&rat(5, 2))
            .add(&r(rat(25, 12)))
            .add(&mul(&tau, &phi2))
            .sub(&phi1),
    ];
    let e3 = vec![
        one,
        tau.clone(),
        tau2.scale_rat(&rat(5, 2))
            .add(&tau.scale_rat(&rat(11, 2)))
            .sub(&r(rat(25, 12)))
            .add(&phi1)
            .neg(),
        tau3.scale_rat(&rat(5, 6))
            .add(&tau.scale_rat(&rat(25, 12)))
            .sub(&big_c)
            .add(&mul(&tau, &phi1))
            .sub(&phi.scale_rat(&rint(2))),
    ];
    [e0, e1, e2, e3]
}

/// Coordinates of `e_0..e_3` over `γ`, from the pipeline at `order`.
pub fn hodge_basis(order: usize) -> Result<[FrameVector; 4], PipelineError> {
    check_order("hodge_basis", 2, order)?;
    let table = instanton_numbers(order - 1)?;
    Ok(hodge_basis_from(&prepotential_parts(&table, order), order))
}

/// `Q(x, y) = xᵀ [Q]_γ y` on frame vectors.
pub fn q_pairing(x: &FrameVector, y: &FrameVector) -> Result<TauPoly, SeriesError> {
    let q = q_gamma();
    let mut acc = TauPoly::zero(x[0].var(), x[0].order());
    for i in 0..4 {
        for j in 0..4 {
            if !q[i][j].is_zero() {
                acc = acc.add(&x[i].mul(&y[j])?.scale_rat(&q[i][j]));
            }
        }
    }
    Ok(acc)
}

/// `γ_k` as a frame vector (coordinate index `3 - k`).
pub fn gamma_vector(k: usize, var: Var, order: usize) -> FrameVector {
    (0..4)
        .map(|i| {
            if i == 3 - k {
                TauPoly::rational(rint(1), var, order)
            } else {
                TauPoly::zero(var, order)
            }
        })
        .collect()
}

/// The unipotent matrix of the limiting period map, entries
/// `(f/2, e, α_0) = (-25/12, 11/2, 200c)`.
pub fn limiting_period_matrix() -> ExactMatrix {
    let (_, _, e, f) = constants();
    let r = |x: Rat| SymFrac::rat(x);
    let half_f = r(f / rint(2));
    let o = SymFrac::zero;
    let one = SymFrac::one;
    ExactMatrix::from_rows(vec![
        vec![one(), o(), o(), o()],
        vec![o(), one(), o(), o()],
        vec![half_f.clone(), r(e), one(), o()],
        vec![SymFrac::scalar(conifold_constant()), half_f, o(), one()],
    ])
}

/// `∂_τ e_3 = e_2`, `∂_τ e_2 = -Y e_1`, `∂_τ e_1 = -e_0`, `∂_τ e_0 = 0`.
pub fn connection_check_with(
    basis: &[FrameVector; 4],
    y: &RatSeries,
) -> CheckReport {
    let mut report = CheckReport::new("quintic connection");
    let [e0, e1, e2, e3] = basis;
    let y = y.to_twisted();
    let expected: [(&str, &FrameVector, FrameVector); 4] = [
        ("e0", e0, frame::zero_like(e0)),
        ("e1", e1, e0.iter().map(|x| x.neg()).collect()),
        ("e2", e2, frame::scale_series(e1, &y.neg())),
        ("e3", e3, e2.clone()),
    ];
    for (label, e, rhs) in expected {
        let diff = frame::sub(&frame::dtau(e), &rhs);
        report.require(frame::is_zero(&diff), || {
            let (i, k, n) = frame::first_nonzero(&diff).unwrap();
            format!("∇{label}: mismatch in γ-coordinate {i}, τ^{k}, q^{n}")
        });
    }
    report
}

pub fn connection_check(order: usize) -> Result<CheckReport, PipelineError> {
    check_order("connection_check", 3, order)?;
    let y = yukawa(order)?;
    let table = instanton_numbers_from_yukawa(&y)?;
    let basis = hodge_basis_from(&prepotential_parts(&table, order), order);
    Ok(connection_check_with(&basis, &y))
}

/// Everything computed once at a fixed order.
#[derive(Clone, Debug)]
pub struct QuinticB {
    pub order: usize,
    pub frobenius: FrobeniusBasis,
    pub mirror: MirrorMap,
    pub yukawa: RatSeries,
    pub table: InstantonTable,
    pub parts: PrepotentialParts,
}

impl QuinticB {
    pub fn new(order: usize) -> Result<Self, PipelineError> {
        check_order("quintic pipeline", 4, order)?;
        let frobenius = frobenius_basis(order + 1)?;
        let mirror = mirror_map_from(&frobenius.series)?;
        let yukawa = yukawa_from(&frobenius.series[0], &mirror.s_of_q, order)?;
        let table = instanton_numbers_from_yukawa(&yukawa)?;
        let parts = prepotential_parts(&table, order);
        let mirror = MirrorMap {
            q_of_s: mirror.q_of_s.truncate(order),
            s_of_q: mirror.s_of_q.truncate(order),
        };
        Ok(QuinticB { order, frobenius, mirror, yukawa, table, parts })
    }

    pub fn hodge_basis(&self) -> [FrameVector; 4] {
        hodge_basis_from(&self.parts, self.order)
    }

    pub fn connection_check(&self) -> CheckReport {
        connection_check_with(&self.hodge_basis(), &self.yukawa)
    }

    pub fn invariance_check(&self) -> CheckReport {
        let e = frame::rat_exp_nilpotent(&n_gamma());
        let [e0, e1, e2, e3] = self.hodge_basis();
        frame::invariance_report(
            "quintic Hodge basis monodromy invariance",
            &[("e0", e0), ("e1", e1), ("e2", e2), ("e3", e3)],
            &e,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn period_coefficients() {
        let p = holomorphic_period(3);
        assert_eq!(p.coeff(1), rint(120));
        assert_eq!(p.coeff(2), rint(113400));
        assert_eq!(p, operator().frobenius_series(Var::S, 3)[0]);
    }

    #[test]
    fn mirror_map_normalized() {
        let mm = mirror_map(10).unwrap();
        assert_eq!(mm.q_of_s.coeff(0), rint(0));
        assert_eq!(mm.q_of_s.coeff(1), rint(1));
        let back = mm.s_of_q.with_var(Var::S).compose(&mm.q_of_s).unwrap();
        assert_eq!(back, Series::var_series(Var::S, 10));
    }

    #[test]
    fn low_degree_instantons() {
        let t = instanton_numbers(3).unwrap();
        let want = [2875i64, 609250, 317206375];
        for (d, n) in want.iter().enumerate() {
            assert_eq!(t.bps(d as u32 + 1), Some(&BigInt::from(*n)));
        }
        assert_eq!(yukawa(2).unwrap().coeff(0), rint(5));
    }

    #[test]
    fn frobenius_monodromy_unipotent() {
        let fb = frobenius_basis(6).unwrap();
        let t = fb.monodromy().unwrap();
        assert_eq!(t[0][3], rat(1, 6));
    }

    #[test]
    fn connection_and_invariance() {
        let qb = QuinticB::new(6).unwrap();
        let r = qb.connection_check();
        assert!(r.passed, "{:?}", r.failures);
        let r = qb.invariance_check();
        assert!(r.passed, "{:?}", r.failures);
    }
}
