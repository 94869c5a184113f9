//! Fraction field of the symbol ring.

use std::fmt;

use crate::ring::{Rat, Ring};
use crate::scalar::TwistedScalar;

/// `num / den` with `den != 0`. Unit denominators are folded into the
/// numerator eagerly, so rational and Laurent-monomial data stay polynomial.
#[derive(Clone)]
pub struct SymFrac {
    num: TwistedScalar,
    den: TwistedScalar,
}

impl SymFrac {
    pub fn new(num: TwistedScalar, den: TwistedScalar) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut f = SymFrac { num, den };
        f.normalize();
        f
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = TwistedScalar::one();
            return;
        }
        if let Some(inv) = self.den.try_inverse() {
            self.num = self.num.mul(&inv);
            self.den = TwistedScalar::one();
        } else if self.num == self.den {
            self.num = TwistedScalar::one();
            self.den = TwistedScalar::one();
        }
    }

    pub fn scalar(x: TwistedScalar) -> Self {
        SymFrac { num: x, den: TwistedScalar::one() }
    }

    pub fn rat(r: Rat) -> Self {
        Self::scalar(TwistedScalar::rational(r))
    }

    pub fn numer(&self) -> &TwistedScalar {
        &self.num
    }

    pub fn denom(&self) -> &TwistedScalar {
        &self.den
    }

    /// Ring element when the denominator is 1.
    pub fn as_scalar(&self) -> Option<&TwistedScalar> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_rational(&self) -> Option<Rat> {
        self.as_scalar().and_then(|s| s.as_rational())
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero");
        SymFrac::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn conj(&self) -> Self {
        SymFrac::new(self.num.conj(), self.den.conj())
    }

    /// Rough size measure used to prefer simple pivots.
    pub fn weight(&self) -> usize {
        self.num.len() + self.den.len()
    }
}

impl PartialEq for SymFrac {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Ring for SymFrac {
    fn zero() -> Self {
        Self::scalar(TwistedScalar::zero())
    }
    fn one() -> Self {
        Self::scalar(TwistedScalar::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return SymFrac::new(self.num.add(&other.num), self.den.clone());
        }
        SymFrac::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        SymFrac::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn neg(&self) -> Self {
        SymFrac { num: self.num.neg(), den: self.den.clone() }
    }
    fn from_rat(r: Rat) -> Self {
        Self::rat(r)
    }
    fn mul_rat(&self, r: &Rat) -> Self {
        SymFrac::new(self.num.mul_rat(r), self.den.clone())
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(SymFrac::new(self.den.clone(), self.num.clone()))
        }
    }
}

impl From<TwistedScalar> for SymFrac {
    fn from(x: TwistedScalar) -> Self {
        SymFrac::scalar(x)
    }
}

impl fmt::Display for SymFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for SymFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rint;

    #[test]
    fn field_inverse_of_non_unit() {
        let x = SymFrac::scalar(TwistedScalar::one().add(&TwistedScalar::c()));
        let inv = x.try_inverse().unwrap();
        assert_eq!(x.mul(&inv), SymFrac::one());
        assert_eq!(x.div(&x), SymFrac::one());
    }

    #[test]
    fn cross_multiplied_equality() {
        let c = TwistedScalar::c();
        let a = SymFrac::new(c.mul_rat(&rint(2)), c.clone());
        assert_eq!(a, SymFrac::rat(rint(2)));
    }
}
