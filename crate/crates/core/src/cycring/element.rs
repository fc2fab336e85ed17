use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{LaurentCyc, Valuation};
use crate::Error;

/// An element of `Z[q]` or `Z[q, i]` modulo the `p`-th cyclotomic polynomial.
///
/// Both parts are stored as the coefficients of `1, q, ..., q^(p-2)`. The
/// representative is always reduced, so structural equality is ring
/// equality. The `i` part is `None` exactly when it vanishes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    p: u32,
    re: Vec<BigInt>,
    im: Option<Vec<BigInt>>,
}

fn reduce(p: u32, coeffs: Vec<BigInt>) -> Vec<BigInt> {
    let p = p as usize;
    let mut full = vec![BigInt::zero(); p];
    for (k, c) in coeffs.into_iter().enumerate() {
        if !c.is_zero() {
            full[k % p] += c;
        }
    }
    let top = full.pop().expect("p >= 2");
    if !top.is_zero() {
        for c in full.iter_mut() {
            *c -= &top;
        }
    }
    full
}

fn cyclic_mul(p: u32, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = p as usize;
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[(i + j) % n] += x * y;
        }
    }
    reduce(p, out)
}

fn all_zero(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn coeff_sum(v: &[BigInt]) -> BigInt {
    v.iter().sum()
}

/// Exact division of a reduced coefficient vector by `h = 1 - q`.
fn div_h_part(p: u32, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let pb = BigInt::from(p);
    let (m, r) = coeff_sum(v).div_rem(&pb);
    if !r.is_zero() {
        return None;
    }
    // v - m * Phi_p has degree p-1 and vanishes at q = 1.
    let mut lifted: Vec<BigInt> = v.iter().map(|c| c - &m).collect();
    lifted.push(-m);
    let mut out = Vec::with_capacity(p as usize - 1);
    let mut acc = BigInt::zero();
    for c in &lifted[..p as usize - 1] {
        acc += c;
        out.push(acc.clone());
    }
    debug_assert!((acc + &lifted[p as usize - 1]).is_zero());
    Some(out)
}

impl CycNum {
    pub fn zero(p: u32) -> Self {
        CycNum {
            p,
            re: vec![BigInt::zero(); p as usize - 1],
            im: None,
        }
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, 1)
    }

    pub fn from_int<T: Into<BigInt>>(p: u32, n: T) -> Self {
        let mut x = Self::zero(p);
        x.re[0] = n.into();
        x
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(p: u32, k: i64) -> Self {
        let e = k.rem_euclid(p as i64) as usize;
        let mut v = vec![BigInt::zero(); p as usize];
        v[e] = BigInt::one();
        CycNum {
            p,
            re: reduce(p, v),
            im: None,
        }
    }

    /// `h = 1 - q`.
    pub fn h(p: u32) -> Self {
        &Self::one(p) - &Self::q_pow(p, 1)
    }

    /// The imaginary unit. Only meaningful when the ring contains `i`.
    pub fn i(p: u32) -> Self {
        CycNum {
            p,
            re: vec![BigInt::zero(); p as usize - 1],
            im: Some(Self::one(p).re),
        }
    }

    /// Builds an element of `Z[q]` from coefficients of `1, q, q^2, ...` of
    /// any length; powers are taken mod `p` and reduced.
    pub fn from_coeffs<T: Into<BigInt>>(p: u32, coeffs: Vec<T>) -> Self {
        let v = coeffs.into_iter().map(Into::into).collect();
        CycNum {
            p,
            re: reduce(p, v),
            im: None,
        }
    }

    pub fn from_parts<T: Into<BigInt>>(p: u32, re: Vec<T>, im: Vec<T>) -> Self {
        let re = reduce(p, re.into_iter().map(Into::into).collect());
        let im = reduce(p, im.into_iter().map(Into::into).collect());
        CycNum {
            p,
            re,
            im: if all_zero(&im) { None } else { Some(im) },
        }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    /// Coefficients of the `Z[q]` part.
    pub fn re(&self) -> &[BigInt] {
        &self.re
    }

    /// Coefficients of the `i` part, all zero when absent.
    pub fn im(&self) -> Vec<BigInt> {
        self.im
            .clone()
            .unwrap_or_else(|| vec![BigInt::zero(); self.p as usize - 1])
    }

    pub fn has_im(&self) -> bool {
        self.im.is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.im.is_none() && all_zero(&self.re)
    }

    pub fn is_one(&self) -> bool {
        self.im.is_none() && self.re[0].is_one() && all_zero(&self.re[1..])
    }

    /// The rational integer this element equals, if it is one.
    pub fn as_integer(&self) -> Option<&BigInt> {
        (self.im.is_none() && all_zero(&self.re[1..])).then(|| &self.re[0])
    }

    /// Value of the `Z[q]` part at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        coeff_sum(&self.re)
    }

    fn check(&self, other: &Self) -> Result<(), Error> {
        if self.p != other.p {
            Err(Error::ContextMismatch {
                left: self.p,
                right: other.p,
            })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let re = self.re.iter().zip(&other.re).map(|(a, b)| a + b).collect();
        let im = match (&self.im, &other.im) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (Some(a), Some(b)) => {
                let s: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                (!all_zero(&s)).then_some(s)
            }
        };
        Ok(CycNum { p: self.p, re, im })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, Error> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let p = self.p;
        let rr = cyclic_mul(p, &self.re, &other.re);
        let (re, im) = match (&self.im, &other.im) {
            (None, None) => (rr, None),
            (Some(s1), None) => (rr, Some(cyclic_mul(p, s1, &other.re))),
            (None, Some(s2)) => (rr, Some(cyclic_mul(p, &self.re, s2))),
            (Some(s1), Some(s2)) => {
                let ss = cyclic_mul(p, s1, s2);
                let re = rr.iter().zip(&ss).map(|(a, b)| a - b).collect();
                let a = cyclic_mul(p, &self.re, s2);
                let b = cyclic_mul(p, s1, &other.re);
                (re, Some(a.iter().zip(&b).map(|(x, y)| x + y).collect()))
            }
        };
        let im = im.filter(|v: &Vec<BigInt>| !all_zero(v));
        Ok(CycNum { p, re, im })
    }

    pub fn scale<T: Into<BigInt>>(&self, k: T) -> Self {
        let k = k.into();
        if k.is_zero() {
            return Self::zero(self.p);
        }
        CycNum {
            p: self.p,
            re: self.re.iter().map(|c| c * &k).collect(),
            im: self.im.as_ref().map(|v| v.iter().map(|c| c * &k).collect()),
        }
    }

    /// Multiplication by `q^k`, a coefficient rotation.
    pub fn mul_q_pow(&self, k: i64) -> Self {
        let p = self.p;
        let shift = k.rem_euclid(p as i64) as usize;
        let rot = |v: &[BigInt]| {
            let mut full = vec![BigInt::zero(); p as usize];
            for (j, c) in v.iter().enumerate() {
                full[(j + shift) % p as usize] = c.clone();
            }
            reduce(p, full)
        };
        CycNum {
            p,
            re: rot(&self.re),
            im: self.im.as_ref().map(|v| rot(v)),
        }
    }

    pub fn mul_i(&self) -> Self {
        let p = self.p;
        let zero = || vec![BigInt::zero(); p as usize - 1];
        let re = match &self.im {
            Some(s) => s.iter().map(|c| -c).collect(),
            None => zero(),
        };
        let im = (!all_zero(&self.re)).then(|| self.re.clone());
        CycNum { p, re, im }
    }

    pub fn mul_h(&self) -> Self {
        self - &self.mul_q_pow(1)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Complex conjugation `q -> q^-1`, `i -> -i`.
    pub fn conj(&self) -> Self {
        let c = self.galois(self.p as i64 - 1);
        match &c.im {
            None => c,
            Some(s) => CycNum {
                p: c.p,
                re: c.re.clone(),
                im: Some(s.iter().map(|x| -x).collect()),
            },
        }
    }

    /// The automorphism `q -> q^k` (`k` prime to `p`), fixing `i`.
    pub fn galois(&self, k: i64) -> Self {
        let p = self.p;
        let k = k.rem_euclid(p as i64) as usize;
        assert!(k != 0, "galois exponent must be prime to p");
        let map = |v: &[BigInt]| {
            let mut full = vec![BigInt::zero(); p as usize];
            for (j, c) in v.iter().enumerate() {
                full[(j * k) % p as usize] += c;
            }
            reduce(p, full)
        };
        CycNum {
            p,
            re: map(&self.re),
            im: self.im.as_ref().map(|v| map(v)),
        }
    }

    /// Whether `h` divides this element in the ring.
    pub fn divisible_by_h(&self) -> bool {
        let pb = BigInt::from(self.p);
        let ok = |v: &[BigInt]| coeff_sum(v).is_multiple_of(&pb);
        ok(&self.re) && self.im.as_deref().map_or(true, ok)
    }

    /// `y` with `h * y = self`.
    pub fn div_h_exact(&self) -> Result<Self, Error> {
        let re = div_h_part(self.p, &self.re).ok_or(Error::NotDivisibleByH)?;
        let im = match &self.im {
            None => None,
            Some(s) => Some(div_h_part(self.p, s).ok_or(Error::NotDivisibleByH)?),
        };
        Ok(CycNum { p: self.p, re, im })
    }

    /// Moves a value of `Z[q] ∪ i Z[q]` into `Z[q]`. The returned flag is
    /// `true` when a factor of `i` was removed.
    pub fn strip_i(&self) -> Result<(bool, Self), Error> {
        match &self.im {
            None => Ok((false, self.clone())),
            Some(s) if all_zero(&self.re) => Ok((
                true,
                CycNum {
                    p: self.p,
                    re: s.clone(),
                    im: None,
                },
            )),
            Some(_) => Err(Error::NoPhase),
        }
    }

    /// The `h`-adic valuation of the `Z[q]`-associate of this element.
    pub fn h_valuation(&self) -> Result<Valuation, Error> {
        if self.is_zero() {
            return Ok(Valuation::Infinite);
        }
        let (_, mut x) = self.strip_i()?;
        let mut v = 0i64;
        while x.divisible_by_h() {
            x = x.div_h_exact()?;
            v += 1;
        }
        Ok(Valuation::Finite(v))
    }

    /// Inverse in `O[1/h]`. Fails unless the norm is `±p^k`.
    pub fn inverse(&self) -> Result<LaurentCyc, Error> {
        let p = self.p;
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        if self.im.is_some() {
            // (r + is)^-1 = (r - is) / (r^2 + s^2)
            let mut bar = self.clone();
            if let Some(s) = bar.im.as_mut() {
                s.iter_mut().for_each(|c| *c = -c.clone());
            }
            let n = self * &bar;
            debug_assert!(!n.has_im());
            return Ok(n.inverse()?.mul_cyc(&bar));
        }
        let mut cofactor = Self::one(p);
        for k in 2..p as i64 {
            cofactor = &cofactor * &self.galois(k);
        }
        let norm = (self * &cofactor)
            .as_integer()
            .cloned()
            .ok_or(Error::NotInvertible)?;
        let pb = BigInt::from(p);
        let sign = norm.signum();
        let mut rest = norm.abs();
        let mut k = 0u32;
        while rest.is_multiple_of(&pb) {
            rest /= &pb;
            k += 1;
        }
        if !rest.is_one() {
            return Err(Error::NotInvertible);
        }
        // p = h^(p-1) * U with U a unit, so 1/p^k = U^-k / h^(k(p-1)).
        let num = cofactor.scale(sign) * unit_of_p_inverse(p).pow(k as u64);
        Ok(LaurentCyc::new(num, k * (p - 1)))
    }
}

/// The inverse of the unit `p / h^(p-1) = prod_k (1 - q^k)/(1 - q)`.
pub(crate) fn unit_of_p_inverse(p: u32) -> CycNum {
    let pi = p as i64;
    let mut acc = CycNum::one(p);
    for k in 1..pi {
        // (1 - q) / (1 - q^k) = sum_{j < k'} q^(k j) with k k' = 1 mod p
        let kinv = (1..pi).find(|t| (k * t) % pi == 1).expect("p prime");
        let mut coeffs = vec![BigInt::zero(); p as usize];
        for j in 0..kinv {
            coeffs[((k * j) % pi) as usize] += 1;
        }
        acc = &acc * &CycNum::from_coeffs(p, coeffs);
    }
    acc
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.checked_add(rhs).expect("cyclotomic context mismatch")
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self.checked_sub(rhs).expect("cyclotomic context mismatch")
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.checked_mul(rhs).expect("cyclotomic context mismatch")
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        &self + &rhs
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: CycNum) -> CycNum {
        &self - &rhs
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: CycNum) -> CycNum {
        &self * &rhs
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            p: self.p,
            re: self.re.iter().map(|c| -c).collect(),
            im: self.im.as_ref().map(|v| v.iter().map(|c| -c).collect()),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

fn fmt_part(v: &[BigInt], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "[")?;
    for (k, c) in v.iter().enumerate() {
        if k > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{c}")?;
    }
    write!(f, "]")
}

impl fmt::Display for CycNum {
    /// Coefficient arrays: `[c0, c1, ...]`, followed by `+ i[...]` when an
    /// `i` part is present.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_part(&self.re, f)?;
        if let Some(s) = &self.im {
            write!(f, " + i")?;
            fmt_part(s, f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum<p={}>({self})", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: u32, k: i64) -> CycNum {
        CycNum::q_pow(p, k)
    }

    #[test]
    fn q_to_the_p_is_one() {
        assert!((&q(5, 2) * &q(5, 3)).is_one());
        assert!(q(7, 14).is_one());
        assert_eq!(q(5, -1), q(5, 4));
    }

    #[test]
    fn cyclotomic_relation_vanishes() {
        let s = (0..5).fold(CycNum::zero(5), |acc, k| &acc + &q(5, k));
        assert!(s.is_zero());
    }

    #[test]
    fn a_squared_by_hand() {
        let a = -q(5, 3);
        assert_eq!(&a * &a, q(5, 1));
    }

    #[test]
    fn valuation_small_cases() {
        let p = 7;
        assert_eq!(CycNum::h(p).h_valuation().unwrap(), Valuation::Finite(1));
        assert_eq!(CycNum::one(p).h_valuation().unwrap(), Valuation::Finite(0));
        assert_eq!(CycNum::zero(p).h_valuation().unwrap(), Valuation::Infinite);
        let x = &CycNum::one(p) - &q(p, 2);
        assert_eq!(x.h_valuation().unwrap(), Valuation::Finite(1));
    }

    #[test]
    fn p_has_valuation_p_minus_one() {
        for p in [5, 7, 11, 13] {
            let v = CycNum::from_int(p, p).h_valuation().unwrap();
            assert_eq!(v, Valuation::Finite(p as i64 - 1));
        }
    }

    #[test]
    fn division_chain_for_five() {
        let mut x = CycNum::from_int(5, 5);
        for _ in 0..4 {
            assert!(x.divisible_by_h());
            x = x.div_h_exact().unwrap();
        }
        assert!(!x.divisible_by_h());
        assert!(CycNum::one(5).div_h_exact().is_err());
        assert!(CycNum::h(5).div_h_exact().unwrap().is_one());
    }

    #[test]
    fn i_arithmetic() {
        let p = 13;
        let i = CycNum::i(p);
        assert_eq!(&i * &i, -CycNum::one(p));
        assert_eq!(CycNum::one(p).mul_i(), i);
        assert_eq!(i.conj(), -&i);
        let x = CycNum::from_parts(p, vec![1, 2], vec![0, 0, 3]);
        assert_eq!(x.mul_i().mul_i(), -&x);
    }

    #[test]
    fn galois_is_multiplicative() {
        let p = 7;
        let x = CycNum::from_coeffs(p, vec![1, -2, 3]);
        let y = CycNum::from_coeffs(p, vec![0, 5, 0, 1]);
        for k in 1..7 {
            assert_eq!((&x * &y).galois(k), &x.galois(k) * &y.galois(k));
        }
    }

    #[test]
    fn inverses_of_units_and_non_units() {
        for p in [5, 7, 11] {
            let u = &CycNum::one(p) + &q(p, 1);
            let inv = u.inverse().unwrap();
            assert_eq!(inv.hexp(), 0);
            assert!(inv.mul_cyc(&u).is_one());
            let h2 = CycNum::h(p).pow(2);
            let inv = h2.inverse().unwrap();
            assert_eq!(inv.hexp(), 2);
            assert!(inv.mul_cyc(&h2).is_one());
            assert!(CycNum::from_int(p, 2).inverse().is_err());
        }
        let p = 13;
        let z = &CycNum::h(p) * &(&CycNum::one(p) + &CycNum::i(p).mul_q_pow(2));
        assert!(z.inverse().is_err() || z.inverse().unwrap().mul_cyc(&z).is_one());
        let w = CycNum::i(p).mul_h();
        assert!(w.inverse().unwrap().mul_cyc(&w).is_one());
    }

    #[test]
    fn unit_of_p_is_a_unit() {
        for p in [5, 7] {
            let u = unit_of_p_inverse(p);
            let hp = CycNum::h(p).pow(p as u64 - 1);
            assert_eq!(&(&hp * &CycNum::from_int(p, 1)) * &CycNum::one(p), hp);
            assert_eq!(&CycNum::from_int(p, p) * &u, hp);
        }
    }

    #[test]
    fn display_lists_coefficients() {
        let x = CycNum::from_coeffs(5, vec![1, 0, -2]);
        assert_eq!(x.to_string(), "[1, 0, -2, 0]");
        let y = CycNum::i(5);
        assert_eq!(y.to_string(), "[0, 0, 0, 0] + i[1, 0, 0, 0]");
    }

    #[test]
    fn mismatched_primes_error() {
        let e = CycNum::one(5).checked_add(&CycNum::one(7));
        assert!(matches!(e, Err(Error::ContextMismatch { left: 5, right: 7 })));
    }
}
