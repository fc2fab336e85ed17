//! The canonical genus-`g` spine and its coloring bases.
//!
//! The spine is a caterpillar: handle `i` (1-based) has a loop edge `a_i`
//! attached by a stick edge `b_i` to a trunk `t_0, ..., t_g` with
//! `t_0 = t_g = 0`. Loop vertices are `(a_i, a_i, b_i)` and trunk vertices
//! are `(t_{i-1}, b_i, t_i)`. The end vertices have degree two, so
//! `t_1 = b_1` and `t_{g-1} = b_g`; what remains is trivalent with `3g - 3`
//! edges for `g >= 2`.
//!
//! External edge order, used for lexicographic sorting:
//! - `g = 1`: `[a_1]`;
//! - `g = 2`: `[a_1, a_2, e]` with `e = b_1 = b_2 = t_1`;
//! - `g >= 3`: `[a_1..a_g, b_1..b_g, t_2..t_{g-2}]`.

use std::collections::HashMap;
use std::fmt;

use crate::recoupling::Theory;

/// Edge colors of the caterpillar spine in internal layout.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    pub loops: Vec<u32>,
    pub sticks: Vec<u32>,
    /// `t_0..=t_g`, both ends zero.
    pub trunk: Vec<u32>,
}

impl Coloring {
    pub fn zero(g: u32) -> Self {
        Coloring {
            loops: vec![0; g as usize],
            sticks: vec![0; g as usize],
            trunk: vec![0; g as usize + 1],
        }
    }

    pub fn genus(&self) -> u32 {
        self.loops.len() as u32
    }

    pub fn is_zero(&self) -> bool {
        self.loops.iter().chain(&self.sticks).chain(&self.trunk).all(|&c| c == 0)
    }

    /// Colors in the external edge order.
    pub fn external(&self) -> Vec<u32> {
        let g = self.genus() as usize;
        match g {
            0 => Vec::new(),
            1 => vec![self.loops[0]],
            2 => vec![self.loops[0], self.loops[1], self.sticks[0]],
            _ => {
                let mut v = self.loops.clone();
                v.extend(&self.sticks);
                v.extend(&self.trunk[2..g - 1]);
                v
            }
        }
    }

    /// Every vertex triple `(x, y, z)` of the spine, end vertices included.
    pub fn vertex_triples(&self) -> Vec<(u32, u32, u32)> {
        let g = self.genus() as usize;
        let mut out = Vec::with_capacity(2 * g);
        for i in 0..g {
            out.push((self.loops[i], self.loops[i], self.sticks[i]));
            out.push((self.trunk[i], self.sticks[i], self.trunk[i + 1]));
        }
        out
    }

    pub fn is_admissible(&self, t: &Theory) -> bool {
        self.trunk.first() == Some(&0)
            && self.trunk.last() == Some(&0)
            && self.vertex_triples().iter().all(|&(a, b, c)| t.admissible(a, b, c))
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ext = self.external();
        write!(f, "(")?;
        for (k, c) in ext.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The canonical spine of a given genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Spine {
    pub genus: u32,
}

impl Spine {
    pub fn new(genus: u32) -> Self {
        Spine { genus }
    }

    /// Number of edges of the trivalent spine.
    pub fn edge_count(&self) -> u32 {
        match self.genus {
            0 => 0,
            1 => 1,
            g => 3 * g - 3,
        }
    }

    /// Edge names in external order.
    pub fn edge_names(&self) -> Vec<String> {
        let g = self.genus;
        let loops = (1..=g).map(|i| format!("a{i}"));
        match g {
            0 => Vec::new(),
            1 => vec!["a1".into()],
            2 => loops.chain(["e".to_string()]).collect(),
            _ => loops
                .chain((1..=g).map(|i| format!("b{i}")))
                .chain((2..=g - 2).map(|i| format!("t{i}")))
                .collect(),
        }
    }
}

fn enumerate(t: &Theory, g: u32, loop_colors: &[u32]) -> Vec<Coloring> {
    let even: Vec<u32> = t.even_colors().collect();
    let mut out = Vec::new();
    let mut cur = Coloring::zero(g);
    fn rec(
        t: &Theory,
        i: usize,
        g: usize,
        even: &[u32],
        loop_colors: &[u32],
        cur: &mut Coloring,
        out: &mut Vec<Coloring>,
    ) {
        if i == g {
            out.push(cur.clone());
            return;
        }
        let next_trunk: Vec<u32> = if i + 1 == g { vec![0] } else { even.to_vec() };
        for &b in even {
            for &tn in &next_trunk {
                if !t.admissible(cur.trunk[i], b, tn) {
                    continue;
                }
                for &a in loop_colors {
                    if !t.admissible(a, a, b) {
                        continue;
                    }
                    cur.loops[i] = a;
                    cur.sticks[i] = b;
                    cur.trunk[i + 1] = tn;
                    rec(t, i + 1, g, even, loop_colors, cur, out);
                }
            }
        }
        cur.loops[i] = 0;
        cur.sticks[i] = 0;
        cur.trunk[i + 1] = 0;
    }
    rec(t, 0, g as usize, &even, loop_colors, &mut cur, &mut out);
    out.sort_by_key(Coloring::external);
    out
}

/// All admissible all-even colorings, zero first, then lexicographic in the
/// external edge order.
pub fn enumerate_even_colorings(t: &Theory, g: u32) -> Vec<Coloring> {
    let even: Vec<u32> = t.even_colors().collect();
    enumerate(t, g, &even)
}

/// Colorings with loop colors in `[0, d-1]` and every other edge even.
pub fn enumerate_small_colorings(t: &Theory, g: u32) -> Vec<Coloring> {
    let small: Vec<u32> = (0..t.ctx().d()).collect();
    enumerate(t, g, &small)
}

/// `dim V_p(Σ_g)` by a transfer matrix over trunk colors.
pub fn verlinde_dim(t: &Theory, g: u32) -> u64 {
    let even: Vec<u32> = t.even_colors().collect();
    let loops_over = |b: u32| even.iter().filter(|&&a| t.admissible(a, a, b)).count() as u64;
    let n = t.max_color() as usize + 1;
    let mut v = vec![0u64; n];
    v[0] = 1;
    for _ in 0..g {
        let mut w = vec![0u64; n];
        for &s in &even {
            if v[s as usize] == 0 {
                continue;
            }
            for &b in &even {
                let nb = loops_over(b);
                for &tn in &even {
                    if t.admissible(s, b, tn) {
                        w[tn as usize] += v[s as usize] * nb;
                    }
                }
            }
        }
        v = w;
    }
    v[0]
}

/// An ordered basis of colorings with index lookup.
#[derive(Clone, Debug)]
pub struct Basis {
    pub genus: u32,
    pub p: u32,
    pub colorings: Vec<Coloring>,
    index: HashMap<Coloring, usize>,
}

impl Basis {
    pub fn even(t: &Theory, g: u32) -> Self {
        let colorings = enumerate_even_colorings(t, g);
        let index = colorings
            .iter()
            .enumerate()
            .map(|(k, c)| (c.clone(), k))
            .collect();
        Basis {
            genus: g,
            p: t.p(),
            colorings,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.colorings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colorings.is_empty()
    }

    pub fn index_of(&self, c: &Coloring) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// A one-line description of the basis order, used as a tag in caches.
    pub fn tag(&self) -> String {
        let items: Vec<String> = self.colorings.iter().map(|c| c.to_string()).collect();
        items.join(" ")
    }
}
