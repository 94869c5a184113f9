//! Naive reference implementations used as oracles. Everything here is
//! plain `Vec<Rat>` arithmetic written independently of the library kernels.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational as Rat;
use num_traits::{One, Zero};

pub fn r(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn mul(a: &[Rat], b: &[Rat], n: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn inv(a: &[Rat], n: usize) -> Vec<Rat> {
    let a0 = a[0].recip();
    let mut out = vec![Rat::zero(); n];
    out[0] = a0.clone();
    for k in 1..n {
        let mut s = Rat::zero();
        for j in 1..=k.min(a.len() - 1) {
            s += &a[j] * &out[k - j];
        }
        out[k] = -&a0 * s;
    }
    out
}

/// `exp(a)` for `a(0) = 0`, from `e' = a' e`.
pub fn exp(a: &[Rat], n: usize) -> Vec<Rat> {
    assert!(a[0].is_zero());
    let mut out = vec![Rat::zero(); n];
    out[0] = Rat::one();
    for k in 1..n {
        let mut s = Rat::zero();
        for j in 1..=k.min(a.len() - 1) {
            s += &a[j] * r(j as i64) * &out[k - j];
        }
        out[k] = s / r(k as i64);
    }
    out
}

/// `f(g)` by Horner, `g(0) = 0`.
pub fn compose(f: &[Rat], g: &[Rat], n: usize) -> Vec<Rat> {
    assert!(g[0].is_zero());
    let mut out = vec![Rat::zero(); n];
    for c in f.iter().take(n).rev() {
        out = mul(&out, g, n);
        out[0] += c;
    }
    out
}

pub fn delta(a: &[Rat]) -> Vec<Rat> {
    a.iter().enumerate().map(|(k, c)| c * r(k as i64)).collect()
}

/// Solves `q = s · u(s)` for `s(q)` by fixed-point iteration.
pub fn solve_mirror(u: &[Rat], n: usize) -> Vec<Rat> {
    let mut s = vec![Rat::zero(); n];
    if n > 1 {
        s[1] = Rat::one();
    }
    for _ in 0..n {
        let w = inv(&compose(u, &s, n), n);
        let mut next = vec![Rat::zero(); n];
        next[1..n].clone_from_slice(&w[..n - 1]);
        s = next;
    }
    s
}

fn harmonic(n: usize, power: i32) -> Rat {
    (1..=n).fold(Rat::zero(), |acc, k| acc + r(k as i64).pow(power).recip())
}

fn factorial(n: usize) -> Rat {
    (1..=n).fold(Rat::one(), |acc, k| acc * r(k as i64))
}

/// First three Frobenius coefficient series of
/// `Π_{k≤mn}(k+mε) / Π_{j≤n}(j+ε)^m`, read off from the logarithmic
/// derivatives in `ε`.
pub fn frobenius_abc(m: usize, n: usize) -> [Vec<Rat>; 3] {
    let mut a = [Vec::new(), Vec::new(), Vec::new()];
    for k in 0..n {
        let a0 = factorial(m * k) / factorial(k).pow(m as i32);
        let mm = r(m as i64);
        let l1 = &mm * (harmonic(m * k, 1) - harmonic(k, 1));
        let l2 = -(&mm * &mm) * harmonic(m * k, 2) + &mm * harmonic(k, 2);
        a[0].push(a0.clone());
        a[1].push(&a0 * &l1);
        a[2].push(&a0 * (&l1 * &l1 + l2) / r(2));
    }
    a
}

/// BPS numbers from GW invariants, peeling off multicovers degree by degree.
pub fn bps_from_gw(gw: &[Rat]) -> Vec<Rat> {
    let mut n: Vec<Rat> = Vec::new();
    for d in 1..=gw.len() {
        let mut v = gw[d - 1].clone();
        for k in 2..=d {
            if d % k == 0 {
                v -= &n[d / k - 1] / r((k * k * k) as i64);
            }
        }
        n.push(v);
    }
    n
}

/// Quintic GW invariants `N_1..N_{order-1}` via
/// `Y = 5(1 + δ_q² [A2/A0 - ½(A1/A0)²](s(q)))` and `q = s exp(A1/A0)`.
pub fn quintic_gw(order: usize) -> Vec<Rat> {
    let n = order;
    let [a0, a1, a2] = frobenius_abc(5, n);
    let i0 = inv(&a0, n);
    let f1 = mul(&a1, &i0, n);
    let f2 = mul(&a2, &i0, n);
    let s = solve_mirror(&exp(&f1, n), n);
    let half_sq: Vec<Rat> = mul(&f1, &f1, n).iter().map(|c| c / r(2)).collect();
    let g: Vec<Rat> = f2.iter().zip(&half_sq).map(|(x, y)| x - y).collect();
    let gq = compose(&g, &s, n);
    let y = delta(&delta(&gq));
    (1..n).map(|d| &y[d] * r(5) / r((d * d * d) as i64)).collect()
}

/// Local `K_P2` GW invariants via `Φ'' = (1 + δ_s(A1/A0))/π0` at `s(Q)`,
/// `Q = -s exp(B)`.
pub fn local_gw(order: usize) -> Vec<Rat> {
    let n = order;
    let [a0, a1, _] = frobenius_abc(3, n);
    let b: Vec<Rat> = (0..n)
        .map(|k| if k == 0 { Rat::zero() } else { &a0[k] / r(k as i64) })
        .collect();
    // Q = s·(-exp B); solve with u = -exp(B), then flip
    let u: Vec<Rat> = exp(&b, n).iter().map(|c| -c).collect();
    let s = solve_mirror(&u, n);
    let ratio = mul(&a1, &inv(&a0, n), n);
    let mut num = delta(&ratio);
    num[0] += Rat::one();
    let phi2 = compose(&mul(&num, &inv(&a0, n), n), &s, n);
    (1..n).map(|d| -&phi2[d] / r(3 * (d * d * d) as i64)).collect()
}

/// Reduced row echelon form by textbook Gauss–Jordan; returns the matrix
/// and pivot columns.
pub fn gauss_rref(mut m: Vec<Vec<Rat>>) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(row, p);
        let lead = m[row][col].clone();
        for x in m[row].iter_mut() {
            *x /= &lead;
        }
        for i in 0..rows {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..cols {
                    let t = &f * &m[row][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    (m, pivots)
}
