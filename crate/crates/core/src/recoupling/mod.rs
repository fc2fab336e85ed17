//! Kauffman-bracket recoupling constants at a `p`-th root of unity.
//!
//! Colors run over `0..=p-2`. A triple is admissible when its sum is even,
//! it satisfies the triangle inequality and its sum is at most `2(p-2)`.
//! Every constant here except the Gauss sums' inverses lies in `Z[q]`; the
//! factorial denominators that appear are products of units `[m]`, `p ∤ m`.

mod identities;
mod omega;

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

pub use identities::{
    fmove_matrix, orthogonality_holds, pentagon_holds, run_orthogonality_suite,
    run_pentagon_suite, SuiteReport,
};
pub use omega::Omega;

use crate::cycring::{CycNum, LaurentCyc, PrimeContext};
use crate::Error;

/// Recoupling data for one prime, with write-once memo tables.
pub struct Theory {
    ctx: PrimeContext,
    fact: Vec<CycNum>,
    fact_inv: Vec<CycNum>,
    tet_memo: RwLock<HashMap<[u32; 6], CycNum>>,
    omega: OnceLock<Omega>,
}

impl std::fmt::Debug for Theory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Theory").field("p", &self.ctx.p()).finish()
    }
}

/// `[n]` as the power sum `sum_{j<n} q^(n-1-2j)`; `[-n] = -[n]`.
pub fn quantum_int(p: u32, n: i64) -> CycNum {
    if n < 0 {
        return -quantum_int(p, -n);
    }
    let mut coeffs = vec![0i64; p as usize];
    for j in 0..n {
        coeffs[(n - 1 - 2 * j).rem_euclid(p as i64) as usize] += 1;
    }
    CycNum::from_coeffs(p, coeffs)
}

/// Inverse of `[m]` for `p ∤ m`: `q^(m-1) sum_{j<t} q^(2mj)` with
/// `t m = 1 (mod p)`.
pub fn quantum_int_inverse(p: u32, m: i64) -> Result<CycNum, Error> {
    let pi = p as i64;
    if m.rem_euclid(pi) == 0 {
        return Err(Error::NotInvertible);
    }
    if m < 0 {
        return Ok(-quantum_int_inverse(p, -m)?);
    }
    let r = m % pi;
    let t = (1..pi).find(|t| (t * r) % pi == 1).expect("p prime");
    let mut coeffs = vec![0i64; p as usize];
    for j in 0..t {
        coeffs[(m - 1 + 2 * m * j).rem_euclid(pi) as usize] += 1;
    }
    Ok(CycNum::from_coeffs(p, coeffs))
}

fn sign(n: u32) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

impl Theory {
    pub fn new(p: u32) -> Result<Self, Error> {
        let ctx = PrimeContext::new(p)?;
        let top = 2 * p as usize + 2;
        let mut fact = vec![CycNum::one(p)];
        for n in 1..=top {
            let next = &fact[n - 1] * &quantum_int(p, n as i64);
            fact.push(next);
        }
        let mut fact_inv = vec![CycNum::one(p)];
        for n in 1..p as usize {
            let next = &fact_inv[n - 1] * &quantum_int_inverse(p, n as i64)?;
            fact_inv.push(next);
        }
        Ok(Theory {
            ctx,
            fact,
            fact_inv,
            tet_memo: RwLock::new(HashMap::new()),
            omega: OnceLock::new(),
        })
    }

    pub fn ctx(&self) -> &PrimeContext {
        &self.ctx
    }

    pub fn p(&self) -> u32 {
        self.ctx.p()
    }

    pub fn max_color(&self) -> u32 {
        self.p() - 2
    }

    /// Even colors `0, 2, ..., p-3`; there are `d` of them.
    pub fn even_colors(&self) -> impl Iterator<Item = u32> + Clone {
        (0..=self.max_color()).step_by(2)
    }

    pub fn check_color(&self, c: u32) -> Result<(), Error> {
        if c > self.max_color() {
            Err(Error::InvalidColor {
                color: c,
                max: self.max_color(),
            })
        } else {
            Ok(())
        }
    }

    pub fn quantum_int(&self, n: i64) -> CycNum {
        quantum_int(self.p(), n)
    }

    /// `[n]!`, zero once `n >= p`.
    pub fn qfact(&self, n: u32) -> CycNum {
        self.fact[n as usize].clone()
    }

    pub fn qfact_inv(&self, n: u32) -> Result<CycNum, Error> {
        self.fact_inv
            .get(n as usize)
            .cloned()
            .ok_or(Error::NotInvertible)
    }

    /// Loop value `(-1)^n [n+1]`.
    pub fn delta(&self, n: u32) -> Result<CycNum, Error> {
        self.check_color(n)?;
        Ok(self.quantum_int(n as i64 + 1).scale(sign(n)))
    }

    pub fn delta_inv(&self, n: u32) -> Result<CycNum, Error> {
        self.check_color(n)?;
        Ok(quantum_int_inverse(self.p(), n as i64 + 1)?.scale(sign(n)))
    }

    pub fn admissible(&self, a: u32, b: u32, c: u32) -> bool {
        let m = self.max_color();
        a <= m
            && b <= m
            && c <= m
            && (a + b + c) % 2 == 0
            && a.abs_diff(b) <= c
            && c <= a + b
            && a + b + c <= 2 * m
    }

    fn check_admissible(&self, a: u32, b: u32, c: u32) -> Result<(), Error> {
        if self.admissible(a, b, c) {
            Ok(())
        } else {
            Err(Error::Inadmissible(a, b, c))
        }
    }

    fn theta_parts(&self, a: u32, b: u32, c: u32) -> Result<(CycNum, CycNum), Error> {
        self.check_admissible(a, b, c)?;
        let m = (a + b - c) / 2;
        let n = (b + c - a) / 2;
        let k = (a + c - b) / 2;
        let s = sign(m + n + k);
        let top = &(&self.qfact(m + n + k + 1) * &self.qfact(m))
            * &(&self.qfact(n) * &self.qfact(k));
        let bottom = &(&self.qfact_inv(b)? * &self.qfact_inv(c)?) * &self.qfact_inv(a)?;
        let top_inv = &(&self.qfact_inv(m + n + k + 1)? * &self.qfact_inv(m)?)
            * &(&self.qfact_inv(n)? * &self.qfact_inv(k)?);
        let bottom_fwd = &(&self.qfact(a) * &self.qfact(b)) * &self.qfact(c);
        Ok(((&top * &bottom).scale(s), (&top_inv * &bottom_fwd).scale(s)))
    }

    /// The theta-net with edges colored `a, b, c`.
    pub fn theta(&self, a: u32, b: u32, c: u32) -> Result<CycNum, Error> {
        Ok(self.theta_parts(a, b, c)?.0)
    }

    /// `theta(a, b, c)^-1`, which is again in `Z[q]`.
    pub fn theta_inv(&self, a: u32, b: u32, c: u32) -> Result<CycNum, Error> {
        Ok(self.theta_parts(a, b, c)?.1)
    }

    /// Tetrahedral network. Opposite edge pairs are `(a, d)`, `(b, e)`,
    /// `(c, f)`; the vertex triads are `(a,b,c)`, `(a,e,f)`, `(d,b,f)`,
    /// `(d,e,c)`. Zero when some triad is inadmissible.
    pub fn tet(&self, a: u32, b: u32, c: u32, d: u32, e: u32, f: u32) -> CycNum {
        let key = [a, b, c, d, e, f];
        if let Some(v) = self.tet_memo.read().expect("tet memo").get(&key) {
            return v.clone();
        }
        let v = self.tet_uncached(a, b, c, d, e, f);
        self.tet_memo
            .write()
            .expect("tet memo")
            .entry(key)
            .or_insert(v)
            .clone()
    }

    fn tet_uncached(&self, a: u32, b: u32, c: u32, d: u32, e: u32, f: u32) -> CycNum {
        let p = self.p();
        let triads = [(a, b, c), (a, e, f), (d, b, f), (d, e, c)];
        if !triads.iter().all(|&(x, y, z)| self.admissible(x, y, z)) {
            return CycNum::zero(p);
        }
        let ai = triads.map(|(x, y, z)| (x + y + z) / 2);
        let bj = [(a + d + b + e) / 2, (a + d + c + f) / 2, (b + e + c + f) / 2];
        let mut inner = CycNum::one(p);
        for &x in &ai {
            for &y in &bj {
                inner = &inner * &self.qfact(y - x);
            }
        }
        let mut edges_inv = CycNum::one(p);
        for x in [a, b, c, d, e, f] {
            edges_inv = &edges_inv * &self.qfact_inv(x).expect("colors are below p");
        }
        let lo = *ai.iter().max().expect("four triads");
        let hi = *bj.iter().min().expect("three sums");
        let mut sum = CycNum::zero(p);
        for s in lo..=hi {
            let num = self.qfact(s + 1);
            if num.is_zero() {
                continue;
            }
            let mut den_inv = CycNum::one(p);
            for &x in &ai {
                den_inv = &den_inv * &self.qfact_inv(s - x).expect("small factorial");
            }
            for &y in &bj {
                den_inv = &den_inv * &self.qfact_inv(y - s).expect("small factorial");
            }
            sum = &sum + &(&num * &den_inv).scale(sign(s));
        }
        &(&inner * &edges_inv) * &sum
    }

    /// F-move coefficient. Legs `l1..l4` in counterclockwise order; the old
    /// internal edge `j` separates `{l1, l2}` from `{l3, l4}`, the new edge
    /// `i` separates `{l2, l3}` from `{l4, l1}`. Zero when either channel is
    /// inadmissible.
    pub fn fmove(&self, l1: u32, l2: u32, l3: u32, l4: u32, j: u32, i: u32) -> CycNum {
        let ok = self.admissible(l1, l2, j)
            && self.admissible(l3, l4, j)
            && self.admissible(l2, l3, i)
            && self.admissible(l4, l1, i);
        if !ok {
            return CycNum::zero(self.p());
        }
        let t = self.tet(l1, l2, j, l3, l4, i);
        let di = self.delta(i).expect("admissible color");
        let t1 = self.theta_inv(l2, l3, i).expect("admissible");
        let t2 = self.theta_inv(l4, l1, i).expect("admissible");
        &(&t * &di) * &(&t1 * &t2)
    }

    /// The F-move coefficient as a checked operation: errors on an
    /// inadmissible configuration.
    pub fn sixj(&self, l1: u32, l2: u32, l3: u32, l4: u32, j: u32, i: u32) -> Result<LaurentCyc, Error> {
        for (x, y, z) in [(l1, l2, j), (l3, l4, j), (l2, l3, i), (l4, l1, i)] {
            self.check_admissible(x, y, z)?;
        }
        Ok(self.fmove(l1, l2, l3, l4, j, i).into())
    }

    /// Ribbon twist coefficient `(-1)^n A^(n^2 + 2n)`.
    pub fn twist_mu(&self, n: u32) -> Result<CycNum, Error> {
        self.twist_mu_pow(n, 1)
    }

    /// `mu_n^s` for `s` in `Z`.
    pub fn twist_mu_pow(&self, n: u32, s: i64) -> Result<CycNum, Error> {
        self.check_color(n)?;
        let e = (n as i64) * (n as i64 + 2) * s;
        let v = self.ctx.a_pow(e);
        Ok(if n % 2 == 1 && s % 2 != 0 { -v } else { v })
    }

    /// Eigenvalue of encircling a strand of color `i`: `-q^(i+1) - q^-(i+1)`.
    pub fn encircle_lambda(&self, i: u32) -> Result<CycNum, Error> {
        self.check_color(i)?;
        let k = i as i64 + 1;
        Ok(-(&CycNum::q_pow(self.p(), k) + &CycNum::q_pow(self.p(), -k)))
    }

    /// Zero-framed Hopf link colored `a, b`: `(-1)^(a+b) [(a+1)(b+1)]`.
    pub fn hopf_value(&self, a: u32, b: u32) -> Result<CycNum, Error> {
        self.check_color(a)?;
        self.check_color(b)?;
        let n = (a as i64 + 1) * (b as i64 + 1);
        Ok(self.quantum_int(n).scale(sign(a + b)))
    }

    /// `hopf_value(n, c) / delta(n)` as a ring element:
    /// `(-1)^c sum_{j=0}^{c} q^((n+1)(c-2j))`.
    pub fn meridian_factor(&self, n: u32, c: u32) -> Result<CycNum, Error> {
        self.check_color(n)?;
        self.check_color(c)?;
        let mut coeffs = vec![0i64; self.p() as usize];
        let (n1, c) = (n as i64 + 1, c as i64);
        for j in 0..=c {
            coeffs[(n1 * (c - 2 * j)).rem_euclid(self.p() as i64) as usize] += 1;
        }
        Ok(CycNum::from_coeffs(self.p(), coeffs).scale(sign(c as u32)))
    }

    /// Surgery data: Gauss sums, `eta` and the coefficients of `omega`.
    pub fn omega(&self) -> &Omega {
        self.omega.get_or_init(|| Omega::solve(self))
    }

    /// Coefficients `c_n` of `omega = sum_n c_n e_n` over even colors.
    pub fn omega_coeffs(&self) -> Vec<(u32, LaurentCyc)> {
        self.omega().coeffs.clone()
    }
}
