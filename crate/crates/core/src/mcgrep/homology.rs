//! The action of words on `H_1(Σ_g)` and the homology of the closed
//! manifolds they present.
//!
//! Coordinates are `(m_1, l_1, ..., m_g, l_g)` with `m_i · l_i = 1`. A twist
//! acts by `T_γ(x) = x + (γ · x) γ`, so in genus one
//! `T_m = [[1, 1], [0, 1]]` and `T_l = [[1, 0], [-1, 1]]` (columns are images).

use num_bigint::BigInt;
use num_integer::Integer;

use super::{Curve, MCGWord, Token};
use crate::intlin::{cokernel, AbelianGroup};
use crate::Error;

pub type IntMatrix = Vec<Vec<i64>>;

pub(super) fn curve_vector(tok: &Token, g: usize) -> Vec<i64> {
    let mut v = vec![0i64; 2 * g];
    let i = tok.index as usize - 1;
    match tok.curve {
        Curve::A => v[2 * i] = 1,
        Curve::B => v[2 * i + 1] = 1,
        Curve::C => {
            v[2 * i] = 1;
            v[2 * i + 2] = -1;
        }
    }
    v
}

fn omega(x: &[i64], y: &[i64]) -> i64 {
    x.chunks(2)
        .zip(y.chunks(2))
        .map(|(a, b)| a[0] * b[1] - a[1] * b[0])
        .sum()
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|r| (0..n).map(|c| i64::from(r == c)).collect())
        .collect()
}

fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    (0..n)
        .map(|r| (0..n).map(|c| (0..n).map(|k| a[r][k] * b[k][c]).sum()).collect())
        .collect()
}

/// Integral matrix of one twist on `H_1(Σ_g)`.
pub fn twist_action(tok: &Token, g: u32) -> Result<IntMatrix, Error> {
    tok.check(g)?;
    let n = 2 * g as usize;
    let gamma = curve_vector(tok, g as usize);
    let mut m = identity(n);
    for c in 0..n {
        let mut e = vec![0i64; n];
        e[c] = 1;
        let k = omega(&gamma, &e) * tok.sign();
        for r in 0..n {
            m[r][c] += k * gamma[r];
        }
    }
    Ok(m)
}

/// Integral action of a word, as the ordered product of twist matrices.
pub fn symplectic_action(w: &MCGWord, g: u32) -> Result<IntMatrix, Error> {
    let mut m = identity(2 * g as usize);
    for t in w.tokens() {
        m = mul(&m, &twist_action(t, g)?);
    }
    Ok(m)
}

/// Genus-one action as a 2x2 matrix.
pub fn word_to_sl2z(w: &MCGWord) -> Result<[[i64; 2]; 2], Error> {
    let m = symplectic_action(w, 1)?;
    Ok([[m[0][0], m[0][1]], [m[1][0], m[1][1]]])
}

/// `H_1` of `H ∪_f -H`: meridians bound in both copies, so it is presented
/// by the longitude components of the images `f(m_j)`.
pub fn heegaard_homology(w: &MCGWord, g: u32) -> Result<AbelianGroup, Error> {
    let m = symplectic_action(w, g)?;
    let g = g as usize;
    let rel: Vec<Vec<BigInt>> = (0..g)
        .map(|k| (0..g).map(|j| BigInt::from(m[2 * k + 1][2 * j])).collect())
        .collect();
    Ok(cokernel(&rel, g))
}

/// `H_1` of the mapping torus: `Z ⊕ coker(f_* - 1)`.
pub fn mapping_torus_homology(w: &MCGWord, g: u32) -> Result<AbelianGroup, Error> {
    let m = symplectic_action(w, g)?;
    let n = m.len();
    let rel: Vec<Vec<BigInt>> = (0..n)
        .map(|r| (0..n).map(|c| BigInt::from(m[r][c] - i64::from(r == c))).collect())
        .collect();
    let fiber = cokernel(&rel, n);
    Ok(AbelianGroup {
        free_rank: fiber.free_rank + 1,
        torsion: fiber.torsion,
    })
}

/// Negative continued fraction `n/q = c_1 - 1/(c_2 - 1/(...))` with
/// ceilings.
fn negative_continued_fraction(mut n: i64, mut q: i64) -> Vec<i64> {
    let mut out = Vec::new();
    while q != 0 {
        let c = Integer::div_ceil(&n, &q);
        out.push(c);
        (n, q) = (q, c * q - n);
    }
    out
}

/// A genus-one word presenting `L(n, q)`: `S T^{c_1} S ... T^{c_k} S` with
/// `S = a1 b1 a1`, `T = a1` and `[c_1, ..., c_k]` the negative continued
/// fraction of `n/q`.
pub fn lens_word(n: i64, q: i64) -> Result<MCGWord, Error> {
    let ok = if n == 0 {
        q.abs() == 1
    } else {
        n.gcd(&q) == 1
    };
    if !ok {
        return Err(Error::InvalidLens { n, q });
    }
    let s = MCGWord(vec![Token::a(1), Token::b(1), Token::a(1)]);
    let mut w = s.clone();
    for c in negative_continued_fraction(n, q) {
        w = w.concat(&MCGWord::power(Token::a(1), c)).concat(&s);
    }
    Ok(w)
}
