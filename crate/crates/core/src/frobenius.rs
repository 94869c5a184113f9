//! Hypergeometric Picard–Fuchs operators and their Frobenius solutions.
//!
//! Operators have the shape `δ^r - k·s·Π_i (aδ + b_i)` with `δ = s d/ds`.
//! The Frobenius method expands `Σ a_n(ε) s^(n+ε)` in `ε`; with
//! `s^ε = exp(2πi ε τ_s)` the coefficient of `ε^j/(2πi)^j` is the
//! solution `ϖ_j = Σ_{k≤j} τ_s^k/k! · pihat^(j-k) A_{j-k}(s)`.

use crate::ring::{rint, Rat, Ring};
use crate::scalar::TwistedScalar;
use crate::series::{RatSeries, Series, Var};
use crate::taupoly::TauPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergeometricOperator {
    pub rank: usize,
    pub scale: i64,
    pub slope: i64,
    pub shifts: Vec<i64>,
}

impl HypergeometricOperator {
    /// `δ^4 - 5s(5δ+1)(5δ+2)(5δ+3)(5δ+4)`, annihilating `Σ (5n)!/(n!)^5 s^n`.
    pub fn quintic() -> Self {
        HypergeometricOperator { rank: 4, scale: 5, slope: 5, shifts: vec![1, 2, 3, 4] }
    }

    /// `δ^2 - 3s(3δ+1)(3δ+2)`, annihilating `Σ (3k)!/(k!)^3 s^k`.
    pub fn local_p2() -> Self {
        HypergeometricOperator { rank: 2, scale: 3, slope: 3, shifts: vec![1, 2] }
    }

    /// Stable textual form, used as a cache key component.
    pub fn describe(&self) -> String {
        let factors: String = self
            .shifts
            .iter()
            .map(|b| format!("({}d+{})", self.slope, b))
            .collect();
        format!("d^{} - {}s{}", self.rank, self.scale, factors)
    }

    /// Polynomials in δ (lowest degree first) multiplying `s^0` and `s^1`.
    pub fn delta_polys(&self) -> [Vec<Rat>; 2] {
        let mut lead = vec![rint(0); self.rank + 1];
        lead[self.rank] = rint(1);
        let mut tail = vec![rint(-self.scale)];
        for b in &self.shifts {
            // multiply by (slope δ + b)
            let mut next = vec![rint(0); tail.len() + 1];
            for (i, c) in tail.iter().enumerate() {
                next[i] += c * rint(*b);
                next[i + 1] += c * rint(self.slope);
            }
            tail = next;
        }
        [lead, tail]
    }

    pub fn apply_rat(&self, f: &RatSeries) -> RatSeries {
        let [lead, tail] = self.delta_polys();
        f.apply_delta_poly(&lead).add(&f.apply_delta_poly(&tail).shift_up(1))
    }

    /// Applies the operator to a multivalued section, `δ = pihat·∂_τ`.
    pub fn apply(&self, f: &TauPoly) -> TauPoly {
        let [lead, tail] = self.delta_polys();
        apply_delta_poly_tau(&lead, f).add(&apply_delta_poly_tau(&tail, f).shift_up(1))
    }

    /// `[ε^j] a_n(ε)` for `j < rank`, `n < order`.
    pub fn frobenius_series(&self, var: Var, order: usize) -> Vec<RatSeries> {
        let r = self.rank;
        let mut cols: Vec<Vec<Rat>> = vec![Vec::with_capacity(order); r];
        let mut a = eps_one(r);
        for n in 0..order {
            for (j, col) in cols.iter_mut().enumerate() {
                col.push(a[j].clone());
            }
            // a_{n+1} = a_n · k Π(a(n+ε)+b) / (n+1+ε)^r
            for b in &self.shifts {
                let lin = vec![rint(self.slope * n as i64 + b), rint(self.slope)];
                a = eps_mul(&a, &lin, r);
            }
            a = a.iter().map(|c| c * rint(self.scale)).collect();
            let inv = eps_inv_linear(&rint(n as i64 + 1), r);
            for _ in 0..r {
                a = eps_mul(&a, &inv, r);
            }
        }
        cols.into_iter().map(|c| Series::from_coeffs(var, c)).collect()
    }

    /// The normalized Frobenius basis `ϖ_0..ϖ_{rank-1}`.
    pub fn frobenius_basis(&self, var: Var, order: usize) -> Vec<TauPoly> {
        let a = self.frobenius_series(var, order);
        (0..self.rank)
            .map(|j| {
                let mut sol = TauPoly::zero(var, order);
                let mut kfact = rint(1);
                for k in 0..=j {
                    if k > 0 {
                        kfact *= rint(k as i64);
                    }
                    let coeff = TwistedScalar::pihat_pow((j - k) as i32).mul_rat(&kfact.recip());
                    let term = TauPoly::from_rat_series(&a[j - k]);
                    let tk = TauPoly::tau_pow(k, coeff, var, order);
                    sol = sol.add(&tk.mul(&term).expect("degree ≤ rank - 1"));
                }
                sol
            })
            .collect()
    }
}

fn apply_delta_poly_tau(poly: &[Rat], f: &TauPoly) -> TauPoly {
    let mut acc = TauPoly::zero(f.var(), f.order());
    for c in poly.iter().rev() {
        acc = acc.delta().add(&f.scale_rat(c));
    }
    acc
}

fn eps_one(r: usize) -> Vec<Rat> {
    let mut v = vec![rint(0); r];
    v[0] = rint(1);
    v
}

fn eps_mul(a: &[Rat], b: &[Rat], r: usize) -> Vec<Rat> {
    let mut out = vec![rint(0); r];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j < r {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `1/(m + ε) = Σ (-1)^k ε^k / m^(k+1)`.
fn eps_inv_linear(m: &Rat, r: usize) -> Vec<Rat> {
    let inv = m.recip();
    let mut out = Vec::with_capacity(r);
    let mut p = inv.clone();
    for _ in 0..r {
        out.push(p.clone());
        p = -&p * &inv;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_period_coefficients() {
        let a = HypergeometricOperator::local_p2().frobenius_series(Var::S, 5);
        let want: Vec<Rat> = [1, 6, 90, 1680, 34650].iter().map(|&x| rint(x)).collect();
        assert_eq!(a[0].coeffs(), want.as_slice());
    }

    #[test]
    fn quintic_leading_solution_is_annihilated() {
        let op = HypergeometricOperator::quintic();
        let a = op.frobenius_series(Var::S, 10);
        assert!(op.apply_rat(&a[0]).is_zero());
    }

    #[test]
    fn delta_polys_shape() {
        let [lead, tail] = HypergeometricOperator::local_p2().delta_polys();
        assert_eq!(lead, vec![rint(0), rint(0), rint(1)]);
        // -3(3δ+1)(3δ+2) = -6 - 27δ - 27δ^2
        assert_eq!(tail, vec![rint(-6), rint(-27), rint(-27)]);
    }
}
