use crate::cycring::{CycNum, LaurentCyc};

use super::Theory;

/// Surgery normalization over the even colors.
///
/// `G+ = sum Δ_n^2 mu_n`, `G- = sum Δ_n^2 mu_n^-1`, `eta = kappa / G+` and
/// `omega = eta sum Δ_n e_n`. With this `eta`, a `±1`-framed unknot labeled
/// `omega` evaluates to `kappa^±1` and `eta G- = kappa^-1`.
#[derive(Clone, Debug)]
pub struct Omega {
    pub g_plus: CycNum,
    pub g_minus: CycNum,
    /// `sum Δ_n^2`, equal to `G+ G-`.
    pub d_squared: CycNum,
    pub g_plus_inv: LaurentCyc,
    pub g_minus_inv: LaurentCyc,
    pub eta: LaurentCyc,
    pub coeffs: Vec<(u32, LaurentCyc)>,
}

impl Omega {
    pub(super) fn solve(t: &Theory) -> Omega {
        let p = t.p();
        let mut g_plus = CycNum::zero(p);
        let mut g_minus = CycNum::zero(p);
        let mut d_squared = CycNum::zero(p);
        for n in t.even_colors() {
            let d2 = t.delta(n).expect("color").pow(2);
            g_plus = &g_plus + &(&d2 * &t.twist_mu_pow(n, 1).expect("color"));
            g_minus = &g_minus + &(&d2 * &t.twist_mu_pow(n, -1).expect("color"));
            d_squared = &d_squared + &d2;
        }
        let g_plus_inv = g_plus.inverse().expect("Gauss sums are invertible away from h");
        let g_minus_inv = g_minus.inverse().expect("Gauss sums are invertible away from h");
        let eta = g_plus_inv.mul_cyc(&t.ctx().kappa());
        let coeffs = t
            .even_colors()
            .map(|n| (n, eta.mul_cyc(&t.delta(n).expect("color"))))
            .collect();
        Omega {
            g_plus,
            g_minus,
            d_squared,
            g_plus_inv,
            g_minus_inv,
            eta,
            coeffs,
        }
    }
}
