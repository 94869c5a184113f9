//! High-precision constants and numeric evaluation of symbol-ring values.
//!
//! Every constant is produced as an exact rational approximation together
//! with an explicit error bound, so downstream tolerances stay auditable.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::ring::{rint, Rat};
use crate::scalar::TwistedScalar;

pub const MIN_PRECISION: u32 = 15;
pub const MAX_PRECISION: u32 = 2000;
/// Extra digits carried internally beyond the requested precision.
const GUARD_DIGITS: u32 = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("precision {0} outside supported range {MIN_PRECISION}..={MAX_PRECISION}")]
    PrecisionOutOfRange(u32),
}

pub fn check_precision(digits: u32) -> Result<(), EvalError> {
    if (MIN_PRECISION..=MAX_PRECISION).contains(&digits) {
        Ok(())
    } else {
        Err(EvalError::PrecisionOutOfRange(digits))
    }
}

fn ten_pow(digits: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), digits as usize)
}

/// `10^-digits` as a rational.
pub fn epsilon(digits: u32) -> Rat {
    Rat::new(BigInt::one(), ten_pow(digits))
}

/// Rounds to the nearest multiple of `10^-digits`; keeps numerators small.
pub fn round_to(r: &Rat, digits: u32) -> Rat {
    let scale = ten_pow(digits);
    let scaled = r * Rat::from_integer(scale.clone());
    Rat::new(scaled.round().to_integer(), scale)
}

/// Σ (-1)^k / ((2k+1) n^(2k+1)) until the next term drops below `eps`.
fn arctan_inv(n: i64, eps: &Rat) -> Rat {
    let n2 = BigInt::from(n * n);
    let mut power = BigInt::from(n);
    let mut sum = Rat::zero();
    let mut k: i64 = 0;
    loop {
        let term = Rat::new(BigInt::one(), power.clone() * BigInt::from(2 * k + 1));
        if &term < eps {
            break;
        }
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &n2;
        k += 1;
    }
    sum
}

/// π to within `10^-digits` (Machin's formula).
pub fn pi(digits: u32) -> Rat {
    let eps = epsilon(digits + 3);
    let v = rint(16) * arctan_inv(5, &eps) - rint(4) * arctan_inv(239, &eps);
    round_to(&v, digits + 1)
}

/// ζ(3) to within `10^-digits`, from the alternating central-binomial series
/// `5/2 Σ (-1)^(n+1) / (n^3 binom(2n, n))`.
pub fn zeta3(digits: u32) -> Rat {
    let eps = epsilon(digits + 3);
    let mut sum = Rat::zero();
    let mut central = BigInt::from(2); // binom(2n, n) at n = 1
    let mut n: i64 = 1;
    loop {
        let term = Rat::new(BigInt::one(), BigInt::from(n * n * n) * &central);
        if term < eps {
            break;
        }
        if n % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        // binom(2n+2, n+1) = binom(2n, n) (2n+1)(2n+2)/(n+1)^2
        central = central * BigInt::from((2 * n + 1) * (2 * n + 2)) / BigInt::from((n + 1) * (n + 1));
        n += 1;
    }
    round_to(&(sum * Rat::new(5.into(), 2.into())), digits + 1)
}

/// `sqrt(x)` to within `10^-digits` by Newton iteration, `x > 0`.
pub fn sqrt(x: &Rat, digits: u32) -> Rat {
    assert!(x.is_positive());
    let eps = epsilon(digits + 2);
    let mut y = Rat::from_float(x.to_f64().unwrap_or(1.0).sqrt()).unwrap_or_else(Rat::one);
    loop {
        let next = round_to(&((&y + x / &y) / rint(2)), digits + 4);
        let done = (&next - &y).abs() < eps;
        y = next;
        if done {
            break;
        }
    }
    round_to(&y, digits + 1)
}

/// Bernoulli numbers `B_0..=B_n` (with `B_1 = -1/2`).
pub fn bernoulli(n: usize) -> Vec<Rat> {
    let mut b = vec![Rat::zero(); n + 1];
    b[0] = Rat::one();
    for m in 1..=n {
        let mut acc = Rat::zero();
        let mut binom = BigInt::one();
        for k in 0..m {
            acc += Rat::from_integer(binom.clone()) * &b[k];
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b[m] = -acc / Rat::from_integer(BigInt::from(m + 1));
    }
    b
}

/// Hurwitz `ζ(2, a)` for `a > 0` by Euler–Maclaurin with cutoff `cut`
/// and `terms` Bernoulli corrections. Returns (value, remainder bound).
pub fn hurwitz_zeta2(a: &Rat, cut: u32, terms: usize, digits: u32) -> (Rat, Rat) {
    let round = digits + GUARD_DIGITS;
    let mut sum = Rat::zero();
    for k in 0..cut {
        let x = a + rint(k as i64);
        sum += (&x * &x).recip();
    }
    let x = a + rint(cut as i64);
    sum += x.recip() + (rint(2) * &x * &x).recip();
    let b = bernoulli(2 * terms + 2);
    // Σ_j B_{2j} / x^{2j+1}
    let x2 = &x * &x;
    let mut xpow = &x2 * &x;
    for j in 1..=terms {
        sum += &b[2 * j] / &xpow;
        xpow = &xpow * &x2;
    }
    // first omitted term bounds the remainder for this alternating tail
    let j = terms + 1;
    let mut xp = Rat::one();
    for _ in 0..(2 * j + 1) {
        xp *= &x;
    }
    let bound = (&b[2 * j] / xp).abs();
    (round_to(&sum, round), bound)
}

/// `L(χ_{-3}, 2) = (ζ(2,1/3) - ζ(2,2/3)) / 9` with an error bound.
pub fn l_chi_minus3_2(digits: u32) -> (Rat, Rat) {
    let cut = 20 + digits / 2;
    let terms = 10 + digits as usize / 2;
    let (z1, e1) = hurwitz_zeta2(&Rat::new(1.into(), 3.into()), cut, terms, digits);
    let (z2, e2) = hurwitz_zeta2(&Rat::new(2.into(), 3.into()), cut, terms, digits);
    let value = (z1 - z2) / rint(9);
    let bound = (e1 + e2) / rint(9) + epsilon(digits + GUARD_DIGITS - 1);
    (round_to(&value, digits + GUARD_DIGITS), bound)
}

/// Direct partial sum of `Σ χ_{-3}(n)/n^2` over `periods` full periods of
/// the character, with the bound `1/(2(3K-2)^2)` on the tail.
pub fn l_chi_minus3_2_direct(periods: u64) -> (f64, f64) {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for k in (0..periods).rev() {
        let a = (3 * k + 1) as f64;
        let b = (3 * k + 2) as f64;
        // Kahan-compensated
        let y = (1.0 / (a * a) - 1.0 / (b * b)) - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    let kk = periods.max(1) as f64;
    let tail = 1.0 / (2.0 * (3.0 * kk - 2.0).powi(2));
    (sum, tail)
}

/// Complex value of a symbol-ring element, as exact rational parts with an
/// absolute error bound.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    pub re: Rat,
    pub im: Rat,
    /// Bound on `|computed - true|` for each of re and im.
    pub error_bound: Rat,
    pub digits: u32,
}

impl Evaluation {
    pub fn re_f64(&self) -> f64 {
        self.re.to_f64().unwrap_or(f64::NAN)
    }
    pub fn im_f64(&self) -> f64 {
        self.im.to_f64().unwrap_or(f64::NAN)
    }
    pub fn error_f64(&self) -> f64 {
        self.error_bound.to_f64().unwrap_or(f64::INFINITY)
    }
    pub fn abs_f64(&self) -> f64 {
        self.re_f64().hypot(self.im_f64())
    }
}

/// Evaluates `pihat -> 1/(2πi)`, `c -> ζ(3)/(2πi)^3 = iζ(3)/(8π^3)`.
///
/// `pihat^m c^n = ζ(3)^n (2π)^-k i^-k` with `k = m + 3n`. With π and ζ(3)
/// known to relative accuracy `ε`, a monomial is accurate to relative
/// `(|k| + n + 1)·2ε`; the reported bound sums these over all terms.
pub fn ts_eval(a: &TwistedScalar, digits: u32) -> Result<Evaluation, EvalError> {
    check_precision(digits)?;
    let work = digits + GUARD_DIGITS;
    let two_pi = rint(2) * pi(work);
    let z3 = zeta3(work);
    let rel_eps = epsilon(work - 1);
    let mut re = Rat::zero();
    let mut im = Rat::zero();
    let mut bound = Rat::zero();
    for (m, r) in a.terms() {
        let k = m.pihat as i64 + 3 * m.c as i64;
        let mut mag = r.clone();
        for _ in 0..m.c {
            mag *= &z3;
        }
        for _ in 0..k.unsigned_abs() {
            if k > 0 {
                mag /= &two_pi;
            } else {
                mag *= &two_pi;
            }
        }
        let mag = round_to(&mag, work + 2);
        // i^-k
        match (-k).mod_floor(&4) {
            0 => re += &mag,
            1 => im += &mag,
            2 => re -= &mag,
            _ => im -= &mag,
        }
        let weight = rint(2 * (k.unsigned_abs() as i64 + m.c as i64 + 1));
        bound += mag.abs() * weight * &rel_eps + epsilon(work + 1);
    }
    Ok(Evaluation { re, im, error_bound: bound, digits })
}

/// Decimal rendering with `digits` places after the point.
pub fn to_decimal(r: &Rat, digits: u32) -> String {
    let scaled = round_to(r, digits) * Rat::from_integer(ten_pow(digits));
    let n = scaled.to_integer();
    let neg = n.is_negative();
    let s = n.abs().to_string();
    let d = digits as usize;
    let padded = if s.len() <= d { format!("{}{}", "0".repeat(d + 1 - s.len()), s) } else { s };
    let (int, frac) = padded.split_at(padded.len() - d);
    format!("{}{}.{}", if neg { "-" } else { "" }, int, frac)
}
