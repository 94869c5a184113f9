//! Vectors of multivalued sections over a fixed multivalued basis `γ`.
//!
//! Matrices act by columns: column `j` holds the image of basis vector `j`.
//! A section with coordinates `f_i(τ)` is single-valued iff
//! `f_i(τ) = Σ_j E_ij f_j(τ+1)` with `E = exp(N)`.

use crate::report::CheckReport;
use crate::ring::{Rat, Ring};
use crate::series::QSeries;
use crate::taupoly::TauPoly;

pub type RatMatrix = Vec<Vec<Rat>>;
pub type FrameVector = Vec<TauPoly>;

pub fn rat_identity(n: usize) -> RatMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect()
}

pub fn rat_mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let (n, m, k) = (a.len(), b[0].len(), b.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(Rat::zero(), |acc, l| acc + &a[i][l] * &b[l][j]))
                .collect()
        })
        .collect()
}

/// `exp(N)` for nilpotent `N`.
pub fn rat_exp_nilpotent(n: &RatMatrix) -> RatMatrix {
    let dim = n.len();
    let mut acc = rat_identity(dim);
    let mut term = rat_identity(dim);
    for k in 1..=dim {
        term = rat_mat_mul(&term, n)
            .into_iter()
            .map(|row| row.into_iter().map(|x| x / Rat::from_integer((k as i64).into())).collect())
            .collect();
        for i in 0..dim {
            for j in 0..dim {
                acc[i][j] = &acc[i][j] + &term[i][j];
            }
        }
    }
    acc
}

/// `Σ_j E_ij v_j(τ+1)` for each `i`.
pub fn transport(v: &FrameVector, e: &RatMatrix) -> FrameVector {
    let shifted: Vec<TauPoly> = v.iter().map(|f| f.shift(1)).collect();
    (0..v.len())
        .map(|i| {
            shifted.iter().enumerate().fold(TauPoly::zero(v[0].var(), v[0].order()), |acc, (j, f)| {
                if e[i][j].is_zero() {
                    acc
                } else {
                    acc.add(&f.scale_rat(&e[i][j]))
                }
            })
        })
        .collect()
}

pub fn is_monodromy_invariant(v: &FrameVector, e: &RatMatrix) -> bool {
    transport(v, e).iter().zip(v).all(|(a, b)| a.sub(b).is_zero())
}

pub fn invariance_report(name: &str, vectors: &[(&str, FrameVector)], e: &RatMatrix) -> CheckReport {
    let mut report = CheckReport::new(name);
    for (label, v) in vectors {
        report.require(is_monodromy_invariant(v, e), || format!("{label} is not single-valued"));
    }
    report
}

pub fn dtau(v: &FrameVector) -> FrameVector {
    v.iter().map(TauPoly::dtau).collect()
}

pub fn sub(a: &FrameVector, b: &FrameVector) -> FrameVector {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn add(a: &FrameVector, b: &FrameVector) -> FrameVector {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn scale_series(v: &FrameVector, s: &QSeries) -> FrameVector {
    v.iter().map(|x| x.mul_series(s)).collect()
}

pub fn zero_like(v: &FrameVector) -> FrameVector {
    v.iter().map(|x| TauPoly::zero(x.var(), x.order())).collect()
}

pub fn is_zero(v: &FrameVector) -> bool {
    v.iter().all(TauPoly::is_zero)
}

/// First nonzero `(component, τ-power, coefficient index)` of a vector.
pub fn first_nonzero(v: &FrameVector) -> Option<(usize, usize, usize)> {
    for (i, f) in v.iter().enumerate() {
        for (k, t) in f.terms().iter().enumerate() {
            if let Some(n) = t.coeffs().iter().position(|c| !c.is_zero()) {
                return Some((i, k, n));
            }
        }
    }
    None
}
