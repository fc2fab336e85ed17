use super::CycNum;
use crate::Error;

/// The prime `p` together with the distinguished constants of the theory.
///
/// `A = -q^((p+1)/2)` is a primitive `2p`-th root of unity with `A^2 = q`.
/// `kappa = i^e A^-3` where `e = 1` exactly when `p = 1 (mod 4)`; with this
/// choice `kappa^2` equals the Gauss-sum ratio `G+ / G-`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeContext {
    p: u32,
    d: u32,
    needs_i: bool,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

impl PrimeContext {
    pub fn new(p: u32) -> Result<Self, Error> {
        if p < 5 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeContext {
            p,
            d: (p - 1) / 2,
            needs_i: p % 4 == 1,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn needs_i(&self) -> bool {
        self.needs_i
    }

    pub fn q(&self) -> CycNum {
        CycNum::q_pow(self.p, 1)
    }

    pub fn h(&self) -> CycNum {
        CycNum::h(self.p)
    }

    pub fn a(&self) -> CycNum {
        self.a_pow(1)
    }

    /// `A^m = (-1)^m q^(m (p+1)/2)`.
    pub fn a_pow(&self, m: i64) -> CycNum {
        let half = (self.p as i64 + 1) / 2;
        let x = CycNum::q_pow(self.p, m.rem_euclid(2 * self.p as i64) * half);
        if m.rem_euclid(2) == 1 {
            -x
        } else {
            x
        }
    }

    /// Multiplicative order of `kappa`.
    pub fn kappa_order(&self) -> u32 {
        if self.needs_i {
            4 * self.p
        } else {
            2 * self.p
        }
    }

    pub fn kappa(&self) -> CycNum {
        self.kappa_pow(1)
    }

    /// `kappa^k` for any integer `k`.
    pub fn kappa_pow(&self, k: i64) -> CycNum {
        let base = self.a_pow(-3 * k);
        if !self.needs_i {
            return base;
        }
        match k.rem_euclid(4) {
            0 => base,
            1 => base.mul_i(),
            2 => -base,
            _ => -base.mul_i(),
        }
    }
}
