//! Matrices of the generating twists in the even-coloring basis.

use std::collections::HashMap;

use super::{Curve, RepMatrix, Token};
use crate::cycring::CycNum;
use crate::recoupling::Theory;
use crate::tqftspace::{Basis, Coloring};
use crate::Error;

pub(crate) fn build(t: &Theory, basis: &Basis, tok: Token) -> Result<RepMatrix, Error> {
    tok.check(basis.genus)?;
    let i = tok.index as usize - 1;
    match tok.curve {
        Curve::A => meridian(t, basis, i, tok.sign()),
        Curve::B => longitude(t, basis, i, tok.sign()),
        Curve::C => connector(t, basis, i, tok.sign()),
    }
}

/// Twist along the meridian of handle `i`: diagonal, `mu` of the loop color.
fn meridian(t: &Theory, basis: &Basis, i: usize, s: i64) -> Result<RepMatrix, Error> {
    let diag = basis
        .colorings
        .iter()
        .map(|c| t.twist_mu_pow(c.loops[i], s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RepMatrix::diagonal(t.p(), diag))
}

/// Twist along the longitude of handle `i`. Changes the loop color `a` to
/// `x` with the stick color `b` fixed:
/// `G∓^-1 sum_n Δ_n mu_n^∓1 Δ_x θ(a,n,x)^-1 Tet(x,a,n,a,x,b) θ(x,x,b)^-1`.
fn longitude(t: &Theory, basis: &Basis, i: usize, s: i64) -> Result<RepMatrix, Error> {
    let p = t.p();
    let n = basis.len();
    let om = t.omega();
    let g_inv = if s > 0 { &om.g_minus_inv } else { &om.g_plus_inv };
    let mut entries = vec![CycNum::zero(p); n * n];
    for (col, c) in basis.colorings.iter().enumerate() {
        let (a, b) = (c.loops[i], c.sticks[i]);
        for x in t.even_colors() {
            let mut target = c.clone();
            target.loops[i] = x;
            let Some(row) = basis.index_of(&target) else {
                continue;
            };
            let mut sum = CycNum::zero(p);
            for m in t.even_colors() {
                if !t.admissible(a, m, x) || !t.admissible(x, x, b) {
                    continue;
                }
                let tet = t.tet(x, a, m, a, x, b);
                if tet.is_zero() {
                    continue;
                }
                let coeff = &(&t.delta(m)? * &t.twist_mu_pow(m, -s)?)
                    * &(&t.delta(x)? * &t.theta_inv(a, m, x)?);
                sum = &sum + &(&(&coeff * &tet) * &t.theta_inv(x, x, b)?);
            }
            entries[row * n + col] = &sum * g_inv.num();
        }
    }
    Ok(RepMatrix::from_entries(p, n, entries, g_inv.hexp()))
}

/// Twist along the curve `c_i` joining handles `i` and `i+1`.
///
/// The state is moved by three F-moves to a graph in which the curve
/// crosses a single edge `w`, twisted there by `mu_w`, and moved back:
/// forward `t_{i+1} -> y`, `b_i -> z`, `b_{i+1} -> w`; backward
/// `w -> b'_{i+1}`, `z -> b'_i`, `y -> t'_{i+1}` (0-based handle `i`).
fn connector(t: &Theory, basis: &Basis, i: usize, s: i64) -> Result<RepMatrix, Error> {
    let p = t.p();
    let n = basis.len();
    let even: Vec<u32> = t.even_colors().collect();
    let mut entries = vec![CycNum::zero(p); n * n];
    for (col, c) in basis.colorings.iter().enumerate() {
        let (l0, l1) = (c.loops[i], c.loops[i + 1]);
        let (s0, s1) = (c.sticks[i], c.sticks[i + 1]);
        let (t0, t1, t2) = (c.trunk[i], c.trunk[i + 1], c.trunk[i + 2]);
        let mut mid: HashMap<(u32, u32, u32), CycNum> = HashMap::new();
        for &y in &even {
            let f1 = t.fmove(s0, t0, t2, s1, t1, y);
            if f1.is_zero() {
                continue;
            }
            for &z in &even {
                let fa = t.fmove(l0, l0, y, s1, s0, z);
                if fa.is_zero() {
                    continue;
                }
                let fa1 = &f1 * &fa;
                for &w in &even {
                    let fb = t.fmove(l1, l1, l0, z, s1, w);
                    if fb.is_zero() {
                        continue;
                    }
                    let v = &(&fa1 * &fb) * &t.twist_mu_pow(w, s)?;
                    let slot = mid.entry((y, z, w)).or_insert_with(|| CycNum::zero(p));
                    *slot = &*slot + &v;
                }
            }
        }
        let mut out: HashMap<(u32, u32, u32), CycNum> = HashMap::new();
        for (&(y, z, w), v) in &mid {
            if v.is_zero() {
                continue;
            }
            for &b2 in &even {
                let gb = t.fmove(l1, l0, z, l1, w, b2);
                if gb.is_zero() {
                    continue;
                }
                for &b1 in &even {
                    let ga = t.fmove(l0, y, b2, l0, z, b1);
                    if ga.is_zero() {
                        continue;
                    }
                    let g2 = &(v * &gb) * &ga;
                    for &tn in &even {
                        let g1 = t.fmove(t0, t2, b2, b1, y, tn);
                        if g1.is_zero() {
                            continue;
                        }
                        let slot = out.entry((b1, b2, tn)).or_insert_with(|| CycNum::zero(p));
                        *slot = &*slot + &(&g2 * &g1);
                    }
                }
            }
        }
        for ((b1, b2, tn), v) in out {
            if v.is_zero() {
                continue;
            }
            let mut target: Coloring = c.clone();
            target.sticks[i] = b1;
            target.sticks[i + 1] = b2;
            target.trunk[i + 1] = tn;
            let row = basis.index_of(&target).ok_or_else(|| {
                Error::Invariant(format!("connector left the basis at {target}"))
            })?;
            entries[row * n + col] = v;
        }
    }
    Ok(RepMatrix::from_entries(p, n, entries, 0))
}
