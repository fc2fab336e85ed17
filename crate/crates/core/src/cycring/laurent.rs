use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{CycNum, Valuation};
use crate::Error;

/// An element `num / h^hexp` of the ring localized at `h`.
///
/// Invariant: `hexp == 0` or `h` does not divide `num`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentCyc {
    num: CycNum,
    hexp: u32,
}

impl LaurentCyc {
    pub fn new(mut num: CycNum, mut hexp: u32) -> Self {
        if num.is_zero() {
            return LaurentCyc { num, hexp: 0 };
        }
        while hexp > 0 && num.divisible_by_h() {
            num = num.div_h_exact().expect("divisibility checked");
            hexp -= 1;
        }
        LaurentCyc { num, hexp }
    }

    pub fn zero(p: u32) -> Self {
        CycNum::zero(p).into()
    }

    pub fn one(p: u32) -> Self {
        CycNum::one(p).into()
    }

    /// `h^k` for any integer `k`.
    pub fn h_pow(p: u32, k: i64) -> Self {
        if k >= 0 {
            CycNum::h(p).pow(k as u64).into()
        } else {
            LaurentCyc {
                num: CycNum::one(p),
                hexp: (-k) as u32,
            }
        }
    }

    pub fn num(&self) -> &CycNum {
        &self.num
    }

    pub fn hexp(&self) -> u32 {
        self.hexp
    }

    pub fn prime(&self) -> u32 {
        self.num.prime()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.hexp == 0 && self.num.is_one()
    }

    /// The element as a ring element, when it has no denominator.
    pub fn to_cyc(&self) -> Option<&CycNum> {
        (self.hexp == 0).then_some(&self.num)
    }

    pub fn into_parts(self) -> (CycNum, u32) {
        (self.num, self.hexp)
    }

    /// Numerator of `self` written over `h^k`; requires `k >= hexp`.
    pub fn num_over(&self, k: u32) -> CycNum {
        assert!(k >= self.hexp, "denominator too small");
        let mut n = self.num.clone();
        for _ in self.hexp..k {
            n = n.mul_h();
        }
        n
    }

    pub fn h_valuation(&self) -> Result<Valuation, Error> {
        Ok(self.num.h_valuation()?.shift(-(self.hexp as i64)))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, Error> {
        let k = self.hexp.max(other.hexp);
        let s = self.num_over(k).checked_add(&other.num_over(k))?;
        Ok(LaurentCyc::new(s, k))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, Error> {
        let n = self.num.checked_mul(&other.num)?;
        Ok(LaurentCyc::new(n, self.hexp + other.hexp))
    }

    pub fn mul_cyc(&self, x: &CycNum) -> Self {
        LaurentCyc::new(&self.num * x, self.hexp)
    }

    pub fn mul_q_pow(&self, k: i64) -> Self {
        LaurentCyc {
            num: self.num.mul_q_pow(k),
            hexp: self.hexp,
        }
    }

    pub fn conj(&self) -> Self {
        // conj(h) = -q^-1 h, so conj(num / h^k) = conj(num) (-q)^k / h^k
        let mut n = self.num.conj().mul_q_pow(self.hexp as i64);
        if self.hexp % 2 == 1 {
            n = -n;
        }
        LaurentCyc {
            num: n,
            hexp: self.hexp,
        }
    }

    pub fn inverse(&self) -> Result<Self, Error> {
        let inv = self.num.inverse()?;
        let (n, k) = inv.into_parts();
        let hk = CycNum::h(self.prime()).pow(self.hexp as u64);
        Ok(LaurentCyc::new(&n * &hk, k))
    }

    pub fn pow(&self, e: u64) -> Self {
        LaurentCyc::new(self.num.pow(e), self.hexp * e as u32)
    }

    /// Integer power, negative exponents through [`LaurentCyc::inverse`].
    pub fn powi(&self, e: i64) -> Result<Self, Error> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inverse()?.pow((-e) as u64))
        }
    }
}

impl From<CycNum> for LaurentCyc {
    fn from(num: CycNum) -> Self {
        LaurentCyc { num, hexp: 0 }
    }
}

impl<'a> Add<&'a LaurentCyc> for &'a LaurentCyc {
    type Output = LaurentCyc;
    fn add(self, rhs: &LaurentCyc) -> LaurentCyc {
        self.checked_add(rhs).expect("cyclotomic context mismatch")
    }
}

impl<'a> Sub<&'a LaurentCyc> for &'a LaurentCyc {
    type Output = LaurentCyc;
    fn sub(self, rhs: &LaurentCyc) -> LaurentCyc {
        self.checked_add(&-rhs).expect("cyclotomic context mismatch")
    }
}

impl<'a> Mul<&'a LaurentCyc> for &'a LaurentCyc {
    type Output = LaurentCyc;
    fn mul(self, rhs: &LaurentCyc) -> LaurentCyc {
        self.checked_mul(rhs).expect("cyclotomic context mismatch")
    }
}

impl Neg for &LaurentCyc {
    type Output = LaurentCyc;
    fn neg(self) -> LaurentCyc {
        LaurentCyc {
            num: -&self.num,
            hexp: self.hexp,
        }
    }
}

impl fmt::Display for LaurentCyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.hexp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / h^{}", self.num, self.hexp)
        }
    }
}

impl fmt::Debug for LaurentCyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentCyc<p={}>({self})", self.prime())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_on_construction() {
        let p = 7;
        let h = CycNum::h(p);
        let x = LaurentCyc::new(&h * &h, 3);
        assert_eq!(x.hexp(), 1);
        assert!(x.num().is_one());
        assert_eq!(x.h_valuation().unwrap(), Valuation::Finite(-1));
    }

    #[test]
    fn inverse_of_p_is_laurent() {
        let p = 5;
        let five = LaurentCyc::from(CycNum::from_int(p, 5));
        let inv = five.inverse().unwrap();
        assert_eq!(inv.h_valuation().unwrap(), Valuation::Finite(-4));
        assert!((&five * &inv).is_one());
    }

    #[test]
    fn conjugation_is_an_involution() {
        let p = 7;
        let x = LaurentCyc::new(CycNum::from_coeffs(p, vec![2, -1, 0, 3]), 2);
        assert_eq!(x.conj().conj(), x);
        let h = LaurentCyc::from(CycNum::h(p));
        assert_eq!(h.inverse().unwrap().conj(), h.conj().inverse().unwrap());
    }

    #[test]
    fn sums_use_common_denominators() {
        let p = 5;
        let a = LaurentCyc::h_pow(p, -2);
        let b = LaurentCyc::h_pow(p, -1);
        let s = &a - &b;
        // 1/h^2 - 1/h = (1 - h)/h^2 = q/h^2
        assert_eq!(s, LaurentCyc::new(CycNum::q_pow(p, 1), 2));
    }
}
