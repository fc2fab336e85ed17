use std::collections::HashMap;

use crate::cycring::CycNum;

use super::Theory;

/// Outcome of an exhaustive identity suite.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub instances: usize,
    pub failures: usize,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Matrix of the F-move on a four-holed sphere with legs `l` (counterclockwise):
/// rows indexed by the new channel, columns by the old.
pub fn fmove_matrix(t: &Theory, l: [u32; 4]) -> (Vec<u32>, Vec<u32>, Vec<Vec<CycNum>>) {
    let old: Vec<u32> = (0..=t.max_color())
        .filter(|&j| t.admissible(l[0], l[1], j) && t.admissible(l[2], l[3], j))
        .collect();
    let new: Vec<u32> = (0..=t.max_color())
        .filter(|&i| t.admissible(l[1], l[2], i) && t.admissible(l[3], l[0], i))
        .collect();
    let m = new
        .iter()
        .map(|&i| old.iter().map(|&j| t.fmove(l[0], l[1], l[2], l[3], j, i)).collect())
        .collect();
    (old, new, m)
}

/// The F-move and its rotated counterpart are two-sided inverses.
pub fn orthogonality_holds(t: &Theory, l: [u32; 4]) -> bool {
    let (old, new, f) = fmove_matrix(t, l);
    let (back_old, back_new, g) = fmove_matrix(t, [l[1], l[2], l[3], l[0]]);
    if old.len() != new.len() || back_old != new || back_new != old {
        return false;
    }
    let n = old.len();
    let p = t.p();
    let prod = |a: &Vec<Vec<CycNum>>, b: &Vec<Vec<CycNum>>, r: usize, c: usize| {
        (0..n).fold(CycNum::zero(p), |acc, k| &acc + &(&a[r][k] * &b[k][c]))
    };
    (0..n).all(|r| {
        (0..n).all(|c| {
            let gf = prod(&g, &f, r, c);
            let fg = prod(&f, &g, r, c);
            let want = |x: &CycNum| if r == c { x.is_one() } else { x.is_zero() };
            want(&gf) && want(&fg)
        })
    })
}

/// Composing the five F-moves around the pentagon of five-legged planar
/// trees returns every basis state to itself. Tree `m` has middle leg
/// `x_m`, a cherry `(x_{m+1}, x_{m+2})` on edge `e` and a cherry
/// `(x_{m+3}, x_{m+4})` on edge `f`.
pub fn pentagon_holds(t: &Theory, x: [u32; 5]) -> bool {
    let p = t.p();
    let colors = 0..=t.max_color();
    let leg = |k: usize| x[k % 5];
    let states = |m: usize| -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for e in colors.clone() {
            for f in colors.clone() {
                if t.admissible(leg(m + 1), leg(m + 2), e)
                    && t.admissible(leg(m + 3), leg(m + 4), f)
                    && t.admissible(leg(m), e, f)
                {
                    out.push((e, f));
                }
            }
        }
        out
    };
    for start in states(0) {
        let mut v: HashMap<(u32, u32), CycNum> = HashMap::from([(start, CycNum::one(p))]);
        let mut m = 0;
        for _ in 0..5 {
            let mut next: HashMap<(u32, u32), CycNum> = HashMap::new();
            for (&(e, f), c) in &v {
                for e2 in colors.clone() {
                    let coeff = t.fmove(leg(m + 1), leg(m + 2), f, leg(m), e, e2);
                    if coeff.is_zero() {
                        continue;
                    }
                    let slot = next.entry((f, e2)).or_insert_with(|| CycNum::zero(p));
                    *slot = &*slot + &(c * &coeff);
                }
            }
            v = next;
            m += 2;
        }
        let ok = v
            .iter()
            .all(|(k, c)| if *k == start { c.is_one() } else { c.is_zero() });
        if !ok || !v.contains_key(&start) {
            return false;
        }
    }
    true
}

/// Orthogonality over every even-colored four-holed sphere with a
/// nonempty channel.
pub fn run_orthogonality_suite(t: &Theory) -> SuiteReport {
    let ev: Vec<u32> = t.even_colors().collect();
    let mut r = SuiteReport::default();
    for &a in &ev {
        for &b in &ev {
            for &c in &ev {
                for &d in &ev {
                    let (old, _, _) = fmove_matrix(t, [a, b, c, d]);
                    if old.is_empty() {
                        continue;
                    }
                    r.instances += 1;
                    if !orthogonality_holds(t, [a, b, c, d]) {
                        r.failures += 1;
                    }
                }
            }
        }
    }
    r
}

/// The pentagon over every even-colored five-holed sphere with a nonempty
/// state space.
pub fn run_pentagon_suite(t: &Theory) -> SuiteReport {
    let ev: Vec<u32> = t.even_colors().collect();
    let mut r = SuiteReport::default();
    let n = ev.len();
    for code in 0..n.pow(5) {
        let mut x = [0u32; 5];
        let mut c = code;
        for slot in x.iter_mut() {
            *slot = ev[c % n];
            c /= n;
        }
        let nonempty = ev.iter().any(|&e| {
            t.admissible(x[1], x[2], e)
                && ev
                    .iter()
                    .any(|&f| t.admissible(x[3], x[4], f) && t.admissible(x[0], e, f))
        });
        if !nonempty {
            continue;
        }
        r.instances += 1;
        if !pentagon_holds(t, x) {
            r.failures += 1;
        }
    }
    r
}
