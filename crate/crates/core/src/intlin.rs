//! Exact integer linear algebra: signatures of symmetric forms, Smith
//! normal forms and cokernels.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Inertia of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Inertia by rational congruence diagonalization.
pub fn inertia(m: &[Vec<i64>]) -> Inertia {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut res = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // row_k += row_j, col_k += col_j gives a_kk = 2 a_kj
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            }
        }
        let piv = a[k][k].clone();
        if piv.is_zero() {
            res.zero += 1;
            continue;
        }
        if piv.is_positive() {
            res.positive += 1;
        } else {
            res.negative += 1;
        }
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] / &piv;
            for c in k..n {
                let v = &f * &a[k][c];
                a[r][c] -= v;
            }
        }
        for r in k + 1..n {
            a[r][k] = BigRational::zero();
            a[k][r] = BigRational::zero();
        }
    }
    res
}

/// Signature `#positive - #negative`.
pub fn signature_exact(m: &[Vec<i64>]) -> i64 {
    inertia(m).signature()
}

/// Determinant by fraction-free elimination.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let v = (&a[r][c] * &a[k][k] - &a[r][k] * &a[k][c]) / &prev;
                a[r][c] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Nonzero invariant factors of an integer matrix, in divisibility order.
pub fn smith_invariants(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if !a[r][c].is_zero()
                    && best.map_or(true, |(br, bc)| a[r][c].abs() < a[br][bc].abs())
                {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut done = true;
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let f = a[r][t].div_floor(&a[t][t]);
                for c in t..cols {
                    let v = &f * &a[t][c];
                    a[r][c] -= v;
                }
                if !a[r][t].is_zero() {
                    done = false;
                }
            }
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let f = a[t][c].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &f * &row[t];
                    row[c] -= v;
                }
                if !a[t][c].is_zero() {
                    done = false;
                }
            }
            if done {
                // the pivot must divide the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
                    .find(|&(r, c)| !a[r][c].is_multiple_of(&a[t][t]));
                match bad {
                    Some((r, _)) => {
                        for c in t..cols {
                            let v = a[r][c].clone();
                            a[t][c] += v;
                        }
                        continue;
                    }
                    None => break,
                }
            }
            // move the smallest entry of row t / column t into the pivot
            let mut best = (t, t);
            for r in t..rows {
                if !a[r][t].is_zero() && a[r][t].abs() < a[best.0][best.1].abs() {
                    best = (r, t);
                }
            }
            for c in t..cols {
                if !a[t][c].is_zero() && a[t][c].abs() < a[best.0][best.1].abs() {
                    best = (t, c);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// A finitely generated abelian group `Z^free_rank ⊕ ⊕ Z/t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    pub free_rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// `|H|` when finite, `None` otherwise.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion_order())
    }

    /// Whether tensoring with `Z/p` kills the group.
    pub fn is_zp_trivial(&self, p: u32) -> bool {
        let p = BigInt::from(p);
        self.free_rank == 0 && self.torsion.iter().all(|t| !t.is_multiple_of(&p))
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut torsion = self.torsion.clone();
        torsion.extend(other.torsion.iter().cloned());
        torsion.sort();
        AbelianGroup {
            free_rank: self.free_rank + other.free_rank,
            torsion,
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".into()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Cokernel of `m : Z^cols -> Z^rows`.
pub fn cokernel(m: &[Vec<BigInt>], rows: usize) -> AbelianGroup {
    let inv = smith_invariants(m);
    AbelianGroup {
        free_rank: rows - inv.len(),
        torsion: inv.into_iter().filter(|x| !x.is_one()).collect(),
    }
}

pub fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e8() -> Vec<Vec<i64>> {
        // star with arms 1, 2, 4 around the trivalent vertex 0
        let edges = [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6), (6, 7)];
        let mut m = vec![vec![0i64; 8]; 8];
        for (k, row) in m.iter_mut().enumerate() {
            row[k] = -2;
        }
        for (a, b) in edges {
            m[a][b] = 1;
            m[b][a] = 1;
        }
        m
    }

    #[test]
    fn small_signatures() {
        assert_eq!(signature_exact(&[vec![1]]), 1);
        assert_eq!(signature_exact(&[vec![0]]), 0);
        assert_eq!(signature_exact(&[vec![1, 0], vec![0, -1]]), 0);
        assert_eq!(signature_exact(&[vec![0, 1], vec![1, 0]]), 0);
        let i = inertia(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]]);
        assert_eq!((i.positive, i.negative, i.zero), (1, 1, 1));
    }

    #[test]
    fn e8_form() {
        let m = e8();
        assert_eq!(signature_exact(&m), -8);
        assert_eq!(determinant(&m), BigInt::one());
        let h = cokernel(&to_big(&m), 8);
        assert_eq!(h.order(), Some(BigInt::one()));
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&[vec![2, 1], vec![1, 3]]), BigInt::from(5));
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(determinant(&[vec![1, 2], vec![2, 4]]), BigInt::zero());
    }

    #[test]
    fn smith_forms() {
        let m = to_big(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let inv = smith_invariants(&m);
        assert_eq!(inv, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let g = cokernel(&to_big(&[vec![0, 0]]), 1);
        assert_eq!(g.free_rank, 1);
        let g = cokernel(&to_big(&[vec![5]]), 1);
        assert_eq!(g.to_string(), "Z/5");
        assert!(!g.is_zp_trivial(5));
        assert!(g.is_zp_trivial(7));
    }
}
