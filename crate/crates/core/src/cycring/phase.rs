use std::fmt;

use super::{CycNum, LaurentCyc, PrimeContext, Valuation};
use crate::Error;

/// Smallest `k` in `[0, ord(kappa))` with `kappa^-k x` free of `i`,
/// returned together with that quotient.
pub fn strip_phase(ctx: &PrimeContext, x: &CycNum) -> Result<(u32, CycNum), Error> {
    if !x.has_im() {
        return Ok((0, x.clone()));
    }
    (0..ctx.kappa_order())
        .map(|k| (k, &ctx.kappa_pow(-(k as i64)) * x))
        .find(|(_, y)| !y.has_im())
        .ok_or(Error::NoPhase)
}

pub fn strip_phase_laurent(
    ctx: &PrimeContext,
    x: &LaurentCyc,
) -> Result<(u32, LaurentCyc), Error> {
    let (k, y) = strip_phase(ctx, x.num())?;
    Ok((k, LaurentCyc::new(y, x.hexp())))
}

/// The exponent `k` in `[0, ord(kappa))` with `x = kappa^k y`, if any.
pub fn phase_ratio(ctx: &PrimeContext, x: &LaurentCyc, y: &LaurentCyc) -> Option<u32> {
    if x.hexp() != y.hexp() {
        return None;
    }
    (0..ctx.kappa_order()).find(|&k| y.mul_cyc(&ctx.kappa_pow(k as i64)) == *x)
}

/// A value `kappa^kappa_exp * value`, keeping the phase symbolic so that
/// `value` can stay inside `Z[q][1/h]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phased {
    pub kappa_exp: i64,
    pub value: LaurentCyc,
}

impl Phased {
    pub fn new(kappa_exp: i64, value: LaurentCyc) -> Self {
        Phased { kappa_exp, value }
    }

    /// The full value with the phase multiplied in.
    pub fn expand(&self, ctx: &PrimeContext) -> LaurentCyc {
        self.value.mul_cyc(&ctx.kappa_pow(self.kappa_exp))
    }

    /// Rewrites the value as `kappa^k y` with `y` free of `i` and `k`
    /// minimal.
    pub fn stripped(&self, ctx: &PrimeContext) -> Result<Phased, Error> {
        let (k, y) = strip_phase_laurent(ctx, &self.expand(ctx))?;
        Ok(Phased::new(k as i64, y))
    }

    pub fn h_valuation(&self) -> Result<Valuation, Error> {
        self.value.h_valuation()
    }

    /// Equality up to a power of `kappa`.
    pub fn eq_up_to_phase(&self, other: &Phased, ctx: &PrimeContext) -> bool {
        phase_ratio(ctx, &self.expand(ctx), &other.expand(ctx)).is_some()
    }
}

impl fmt::Display for Phased {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "kappa^{} * {}", self.kappa_exp, self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_phase_is_zero() {
        let ctx = PrimeContext::new(5).unwrap();
        let (k, y) = strip_phase(&ctx, &CycNum::one(5)).unwrap();
        assert_eq!(k, 0);
        assert!(y.is_one());
    }

    #[test]
    fn kappa_strips_by_one_when_i_is_present() {
        let ctx = PrimeContext::new(5).unwrap();
        let (k, y) = strip_phase(&ctx, &ctx.kappa()).unwrap();
        assert_eq!(k, 1);
        assert!(y.is_one());
        let (k, y) = strip_phase(&ctx, &(&ctx.kappa_pow(3) * &ctx.h())).unwrap();
        assert_eq!(k, 1);
        assert_eq!(y, &ctx.kappa_pow(2) * &ctx.h());
    }

    #[test]
    fn mixed_elements_have_no_phase() {
        let ctx = PrimeContext::new(13).unwrap();
        let x = &CycNum::one(13) + &CycNum::i(13);
        assert!(strip_phase(&ctx, &x).is_err());
    }

    #[test]
    fn ratio_recovers_exponent() {
        for p in [5, 7] {
            let ctx = PrimeContext::new(p).unwrap();
            let y = LaurentCyc::new(CycNum::from_coeffs(p, vec![3, 1, -2]), 1);
            for k in [0u32, 1, 2, 7, 2 * p - 1] {
                let x = y.mul_cyc(&ctx.kappa_pow(k as i64));
                assert_eq!(phase_ratio(&ctx, &x, &y), Some(k % ctx.kappa_order()));
            }
            let z = y.mul_cyc(&CycNum::from_int(p, 2));
            assert_eq!(phase_ratio(&ctx, &z, &y), None);
        }
    }

    #[test]
    fn phased_expand_and_strip() {
        let ctx = PrimeContext::new(13).unwrap();
        let v = Phased::new(5, LaurentCyc::one(13));
        let s = v.stripped(&ctx).unwrap();
        assert_eq!(s.kappa_exp, 1);
        assert!(s.eq_up_to_phase(&v, &ctx));
        assert_eq!(s.expand(&ctx), v.expand(&ctx));
    }
}
