use crate::cycring::{phase_ratio, CycNum, LaurentCyc, PrimeContext, Valuation};
use crate::Error;

/// A dense square matrix `kappa^kappa_exp * entries / h^hexp` with
/// `entries` row-major over `Z[q]` (or `Z[q, i]`).
///
/// Invariant: `hexp == 0` or some entry is not divisible by `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMatrix {
    pub p: u32,
    pub dim: usize,
    pub hexp: u32,
    pub kappa_exp: i64,
    entries: Vec<CycNum>,
}

/// A column vector with a common `h`-denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepVector {
    pub hexp: u32,
    pub kappa_exp: i64,
    pub entries: Vec<CycNum>,
}

fn normalize(entries: &mut [CycNum], hexp: &mut u32) {
    while *hexp > 0 && entries.iter().all(CycNum::divisible_by_h) {
        for e in entries.iter_mut() {
            *e = e.div_h_exact().expect("divisibility checked");
        }
        *hexp -= 1;
    }
}

fn dot(p: u32, row: &[CycNum], col: impl Iterator<Item = CycNum>) -> CycNum {
    let mut acc = CycNum::zero(p);
    for (a, b) in row.iter().zip(col) {
        if a.is_zero() || b.is_zero() {
            continue;
        }
        acc = &acc + &(a * &b);
    }
    acc
}

impl RepMatrix {
    pub fn from_entries(p: u32, dim: usize, mut entries: Vec<CycNum>, mut hexp: u32) -> Self {
        assert_eq!(entries.len(), dim * dim, "entry count");
        normalize(&mut entries, &mut hexp);
        RepMatrix {
            p,
            dim,
            hexp,
            kappa_exp: 0,
            entries,
        }
    }

    pub fn identity(p: u32, dim: usize) -> Self {
        let entries = (0..dim * dim)
            .map(|k| {
                if k / dim == k % dim {
                    CycNum::one(p)
                } else {
                    CycNum::zero(p)
                }
            })
            .collect();
        RepMatrix::from_entries(p, dim, entries, 0)
    }

    pub fn diagonal(p: u32, diag: Vec<CycNum>) -> Self {
        let dim = diag.len();
        let mut entries = vec![CycNum::zero(p); dim * dim];
        for (k, d) in diag.into_iter().enumerate() {
            entries[k * dim + k] = d;
        }
        RepMatrix::from_entries(p, dim, entries, 0)
    }

    /// Numerator entry; the matrix entry is `kappa^kappa_exp num / h^hexp`.
    pub fn num(&self, r: usize, c: usize) -> &CycNum {
        &self.entries[r * self.dim + c]
    }

    pub fn nums(&self) -> &[CycNum] {
        &self.entries
    }

    /// Entry with the denominator applied, phase left out.
    pub fn entry(&self, r: usize, c: usize) -> LaurentCyc {
        LaurentCyc::new(self.num(r, c).clone(), self.hexp)
    }

    pub fn column(&self, c: usize) -> Vec<LaurentCyc> {
        (0..self.dim).map(|r| self.entry(r, c)).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == RepMatrix::identity(self.p, self.dim)
    }

    pub fn checked_mul(&self, other: &RepMatrix) -> Result<RepMatrix, Error> {
        if self.p != other.p {
            return Err(Error::ContextMismatch {
                left: self.p,
                right: other.p,
            });
        }
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Vec::with_capacity(n * n);
        for r in 0..n {
            let row = &self.entries[r * n..(r + 1) * n];
            for c in 0..n {
                out.push(dot(self.p, row, (0..n).map(|k| other.num(k, c).clone())));
            }
        }
        let mut m = RepMatrix::from_entries(self.p, n, out, self.hexp + other.hexp);
        m.kappa_exp = self.kappa_exp + other.kappa_exp;
        Ok(m)
    }

    pub fn mul_vec(&self, v: &RepVector) -> RepVector {
        let n = self.dim;
        let mut entries: Vec<CycNum> = (0..n)
            .map(|r| dot(self.p, &self.entries[r * n..(r + 1) * n], v.entries.iter().cloned()))
            .collect();
        let mut hexp = self.hexp + v.hexp;
        normalize(&mut entries, &mut hexp);
        RepVector {
            hexp,
            kappa_exp: self.kappa_exp + v.kappa_exp,
            entries,
        }
    }

    /// Trace without the phase.
    pub fn trace(&self) -> LaurentCyc {
        let s = (0..self.dim).fold(CycNum::zero(self.p), |acc, k| &acc + self.num(k, k));
        LaurentCyc::new(s, self.hexp)
    }

    /// The exponent `k` with `self = kappa^k other` entrywise, phases included.
    pub fn phase_ratio(&self, other: &RepMatrix, ctx: &PrimeContext) -> Option<u32> {
        if self.dim != other.dim || self.hexp != other.hexp {
            return None;
        }
        let pivot = (0..self.entries.len()).find(|&k| !other.entries[k].is_zero())?;
        let x = LaurentCyc::from(self.entries[pivot].clone());
        let y = LaurentCyc::from(other.entries[pivot].clone());
        let k = phase_ratio(ctx, &x, &y)?;
        let factor = ctx.kappa_pow(k as i64);
        let ok = self
            .entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| *a == b * &factor);
        let order = ctx.kappa_order() as i64;
        ok.then(|| (k as i64 + self.kappa_exp - other.kappa_exp).rem_euclid(order) as u32)
    }

    pub fn eq_up_to_phase(&self, other: &RepMatrix, ctx: &PrimeContext) -> bool {
        self.phase_ratio(other, ctx).is_some()
    }

    /// Smallest valuation over all entries, phase ignored.
    pub fn min_valuation(&self) -> Result<Valuation, Error> {
        let mut best = Valuation::Infinite;
        for e in &self.entries {
            best = best.min(e.h_valuation()?);
        }
        Ok(best.shift(-(self.hexp as i64)))
    }
}

impl RepVector {
    pub fn basis(p: u32, dim: usize, k: usize) -> Self {
        let mut entries = vec![CycNum::zero(p); dim];
        entries[k] = CycNum::one(p);
        RepVector {
            hexp: 0,
            kappa_exp: 0,
            entries,
        }
    }

    pub fn entry(&self, k: usize) -> LaurentCyc {
        LaurentCyc::new(self.entries[k].clone(), self.hexp)
    }

    pub fn valuations(&self) -> Result<Vec<Valuation>, Error> {
        self.entries
            .iter()
            .map(|e| Ok(e.h_valuation()?.shift(-(self.hexp as i64))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_behaves() {
        let p = 5;
        let i = RepMatrix::identity(p, 3);
        assert!(i.is_identity());
        let d = RepMatrix::diagonal(p, vec![CycNum::q_pow(p, 1), CycNum::one(p), CycNum::h(p)]);
        assert_eq!(i.checked_mul(&d).unwrap(), d);
        assert_eq!(d.trace(), LaurentCyc::from(CycNum::from_int(p, 2)));
    }

    #[test]
    fn denominators_normalize() {
        let p = 7;
        let h = CycNum::h(p);
        let m = RepMatrix::from_entries(p, 1, vec![&h * &h], 3);
        assert_eq!(m.hexp, 1);
        assert!(m.num(0, 0).is_one());
        assert_eq!(m.min_valuation().unwrap(), Valuation::Finite(-1));
    }

    #[test]
    fn phase_comparison() {
        let p = 5;
        let ctx = PrimeContext::new(p).unwrap();
        let d = RepMatrix::diagonal(p, vec![CycNum::q_pow(p, 1), CycNum::from_int(p, 3)]);
        let k = ctx.kappa_pow(3);
        let e = RepMatrix::from_entries(p, 2, d.nums().iter().map(|x| x * &k).collect(), 0);
        assert_eq!(e.phase_ratio(&d, &ctx), Some(3));
        let mut f = d.clone();
        f.kappa_exp = 2;
        assert_eq!(d.phase_ratio(&f, &ctx), Some(ctx.kappa_order() - 2));
        let g = RepMatrix::diagonal(p, vec![CycNum::q_pow(p, 1), CycNum::from_int(p, 2)]);
        assert_eq!(g.phase_ratio(&d, &ctx), None);
    }

    #[test]
    fn vector_product() {
        let p = 5;
        let d = RepMatrix::diagonal(p, vec![CycNum::q_pow(p, 2), CycNum::one(p)]);
        let v = d.mul_vec(&RepVector::basis(p, 2, 0));
        assert_eq!(v.entries[0], CycNum::q_pow(p, 2));
        assert!(v.entries[1].is_zero());
    }
}
