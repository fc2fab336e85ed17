//! Surgery on plumbing trees: linking matrices, homology, and the
//! invariant `I_p = kappa^-σ [L(ω) ∪ G]` by leaf contraction.
//!
//! Write `η = kappa / G+`. The bracket factors as `η^V Z` where `Z` is a
//! state sum over even vertex colors with vertex weight
//! `Δ_n^2 mu_n^f prod M(n, c)` over meridians `(v, c)` and edge weight
//! `E(u, v) = hopf(u, v) / (Δ_u Δ_v)`. Both weights lie in `Z[q]`, so the
//! invariant is `kappa^(V - σ) G+^-V Z`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::cycring::{CycNum, LaurentCyc, Phased, Valuation};
use crate::intlin::{cokernel, determinant, inertia, to_big, AbelianGroup};
use crate::recoupling::Theory;
use crate::Error;

/// A forest of framed unknots, adjacent ones forming Hopf links, with
/// optional colored meridians.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PlumbingTree {
    vertices: Vec<(i64, i64)>,
    edges: Vec<(i64, i64)>,
    meridians: Vec<(i64, u32)>,
}

impl PlumbingTree {
    /// Validates that ids are unique, edges join distinct known vertices and
    /// the edge set is acyclic.
    pub fn new(
        vertices: Vec<(i64, i64)>,
        edges: Vec<(i64, i64)>,
        meridians: Vec<(i64, u32)>,
    ) -> Result<Self, Error> {
        let mut ids = HashSet::new();
        for &(id, _) in &vertices {
            if !ids.insert(id) {
                return Err(Error::InvalidTree(format!("duplicate vertex id {id}")));
            }
        }
        let index: HashMap<i64, usize> = vertices.iter().enumerate().map(|(k, v)| (v.0, k)).collect();
        let mut parent: Vec<usize> = (0..vertices.len()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for &(a, b) in &edges {
            let (Some(&ia), Some(&ib)) = (index.get(&a), index.get(&b)) else {
                return Err(Error::InvalidTree(format!("edge ({a},{b}) names an unknown vertex")));
            };
            if ia == ib {
                return Err(Error::InvalidTree(format!("loop edge at vertex {a}")));
            }
            let (ra, rb) = (find(&mut parent, ia), find(&mut parent, ib));
            if ra == rb {
                return Err(Error::InvalidTree(format!("edge ({a},{b}) closes a cycle")));
            }
            parent[ra] = rb;
        }
        for &(v, _) in &meridians {
            if !index.contains_key(&v) {
                return Err(Error::InvalidTree(format!("meridian on unknown vertex {v}")));
            }
        }
        Ok(PlumbingTree {
            vertices,
            edges,
            meridians,
        })
    }

    pub fn empty() -> Self {
        PlumbingTree::default()
    }

    /// Linear chain with the given framings, ids `1..=k`.
    pub fn chain(framings: &[i64]) -> Self {
        let vertices = framings.iter().enumerate().map(|(k, &f)| (k as i64 + 1, f)).collect();
        let edges = (1..framings.len() as i64).map(|k| (k, k + 1)).collect();
        PlumbingTree::new(vertices, edges, Vec::new()).expect("a chain is a tree")
    }

    /// The chain presenting `L(n, q)`: framings `-c_i` with `n/q` the
    /// negative continued fraction `[c_1, ..., c_k]`.
    pub fn lens_chain(n: i64, q: i64) -> Result<Self, Error> {
        if n <= 0 || q <= 0 || n.gcd(&q) != 1 {
            return Err(Error::InvalidLens { n, q });
        }
        let (mut a, mut b) = (n, q);
        let mut fr = Vec::new();
        while b != 0 {
            let c = Integer::div_ceil(&a, &b);
            fr.push(-c);
            (a, b) = (b, c * b - a);
        }
        Ok(PlumbingTree::chain(&fr))
    }

    /// The negative-definite E8 plumbing, all framings `-2`.
    pub fn e8() -> Self {
        let vertices = (1..=8).map(|k| (k, -2)).collect();
        let edges = vec![(1, 2), (1, 3), (3, 4), (1, 5), (5, 6), (6, 7), (7, 8)];
        PlumbingTree::new(vertices, edges, Vec::new()).expect("E8 is a tree")
    }

    pub fn vertices(&self) -> &[(i64, i64)] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(i64, i64)] {
        &self.edges
    }

    pub fn meridians(&self) -> &[(i64, u32)] {
        &self.meridians
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The same link with a different set of meridians.
    pub fn with_meridians(&self, meridians: Vec<(i64, u32)>) -> Result<Self, Error> {
        PlumbingTree::new(self.vertices.clone(), self.edges.clone(), meridians)
    }

    /// Disjoint union; ids of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &PlumbingTree) -> Self {
        let shift = self.vertices.iter().map(|v| v.0).max().unwrap_or(0)
            - other.vertices.iter().map(|v| v.0).min().unwrap_or(0)
            + 1;
        let mut t = self.clone();
        t.vertices.extend(other.vertices.iter().map(|&(i, f)| (i + shift, f)));
        t.edges.extend(other.edges.iter().map(|&(a, b)| (a + shift, b + shift)));
        t.meridians.extend(other.meridians.iter().map(|&(v, c)| (v + shift, c)));
        t
    }

    fn index(&self) -> HashMap<i64, usize> {
        self.vertices.iter().enumerate().map(|(k, v)| (v.0, k)).collect()
    }

    fn neighbors(&self) -> Vec<Vec<usize>> {
        let idx = self.index();
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(a, b) in &self.edges {
            adj[idx[&a]].push(idx[&b]);
            adj[idx[&b]].push(idx[&a]);
        }
        adj
    }

    /// Blows down the leaf `id` when its framing is `±1` and it carries no
    /// meridian: the neighbor's framing drops by the leaf's framing.
    pub fn blow_down_leaf(&self, id: i64) -> Option<Self> {
        let &(_, f) = self.vertices.iter().find(|v| v.0 == id)?;
        if f.abs() != 1 || self.meridians.iter().any(|m| m.0 == id) {
            return None;
        }
        let incident: Vec<&(i64, i64)> = self.edges.iter().filter(|e| e.0 == id || e.1 == id).collect();
        let vertices_without = self.vertices.iter().filter(|v| v.0 != id).copied();
        match incident.as_slice() {
            [] => PlumbingTree::new(vertices_without.collect(), self.edges.clone(), self.meridians.clone()).ok(),
            [&(a, b)] => {
                let nb = if a == id { b } else { a };
                let vertices = vertices_without
                    .map(|(v, fr)| if v == nb { (v, fr - f) } else { (v, fr) })
                    .collect();
                let edges = self.edges.iter().filter(|e| e.0 != id && e.1 != id).copied().collect();
                PlumbingTree::new(vertices, edges, self.meridians.clone()).ok()
            }
            _ => None,
        }
    }
}

impl fmt::Display for PlumbingTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices.iter().map(|(i, fr)| format!("({i},{fr})")).collect();
        let es: Vec<String> = self.edges.iter().map(|(a, b)| format!("({a},{b})")).collect();
        write!(f, "vertices = [{}], edges = [{}]", vs.join(","), es.join(","))?;
        if !self.meridians.is_empty() {
            let ms: Vec<String> = self.meridians.iter().map(|(v, c)| format!("({v},{c})")).collect();
            write!(f, ", meridians = [{}]", ms.join(","))?;
        }
        Ok(())
    }
}

/// Framings on the diagonal, `1` for each edge.
pub fn linking_matrix(t: &PlumbingTree) -> Vec<Vec<i64>> {
    let n = t.vertices.len();
    let idx = t.index();
    let mut m = vec![vec![0i64; n]; n];
    for (k, &(_, f)) in t.vertices.iter().enumerate() {
        m[k][k] = f;
    }
    for &(a, b) in &t.edges {
        let (i, j) = (idx[&a], idx[&b]);
        m[i][j] = 1;
        m[j][i] = 1;
    }
    m
}

pub fn signature_exact(m: &[Vec<i64>]) -> i64 {
    crate::intlin::signature_exact(m)
}

/// Homological data of the surgered manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingData {
    pub matrix: Vec<Vec<i64>>,
    pub signature: i64,
    /// `b_1` of the surgered manifold.
    pub corank: usize,
    pub det: BigInt,
    pub det_mod_p: u32,
    pub h1: AbelianGroup,
}

impl LinkingData {
    /// `|H_1|` when finite, otherwise zero.
    pub fn torsion_or_zero(&self) -> BigInt {
        self.h1.order().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zp_homology_sphere(&self, p: u32) -> bool {
        self.h1.is_zp_trivial(p)
    }
}

pub fn homology_data(m: &[Vec<i64>], p: u32) -> LinkingData {
    let inert = inertia(m);
    let det = determinant(m);
    let det_mod_p = det
        .mod_floor(&BigInt::from(p))
        .to_u32()
        .expect("residue fits");
    LinkingData {
        matrix: m.to_vec(),
        signature: inert.signature(),
        corank: inert.zero,
        det,
        det_mod_p,
        h1: cokernel(&to_big(m), m.len()),
    }
}

/// `[L(ω) ∪ G]` as `kappa^V G+^-V Z`.
pub fn bracket_eval(th: &Theory, t: &PlumbingTree) -> Result<Phased, Error> {
    let p = th.p();
    for &(_, c) in &t.meridians {
        th.check_color(c)?;
    }
    let colors: Vec<u32> = th.even_colors().collect();
    let nc = colors.len();
    let mut edge_w = vec![CycNum::zero(p); nc * nc];
    for (a, &u) in colors.iter().enumerate() {
        for (b, &v) in colors.iter().enumerate() {
            edge_w[a * nc + b] = &th.meridian_factor(u, v)? * &th.delta_inv(v)?;
        }
    }
    let mut merid: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    let idx = t.index();
    for &(v, c) in &t.meridians {
        merid.entry(idx[&v]).or_default().push(c);
    }
    let weight = |k: usize, n: u32| -> Result<CycNum, Error> {
        let d = th.delta(n)?;
        let mut w = &(&d * &d) * &th.twist_mu_pow(n, t.vertices[k].1)?;
        for &c in merid.get(&k).into_iter().flatten() {
            w = &w * &th.meridian_factor(n, c)?;
        }
        Ok(w)
    };
    let adj = t.neighbors();
    let n = t.vertices.len();
    let mut visited = vec![false; n];
    let mut z = CycNum::one(p);
    for root in 0..n {
        if visited[root] {
            continue;
        }
        // iterative post-order over the component
        let mut order = Vec::new();
        let mut parent = vec![usize::MAX; n];
        let mut stack = vec![root];
        visited[root] = true;
        while let Some(x) = stack.pop() {
            order.push(x);
            for &y in &adj[x] {
                if !visited[y] {
                    visited[y] = true;
                    parent[y] = x;
                    stack.push(y);
                }
            }
        }
        let mut table: HashMap<usize, Vec<CycNum>> = HashMap::new();
        for &x in order.iter().rev() {
            let mut f: Vec<CycNum> = colors.iter().map(|&c| weight(x, c)).collect::<Result<_, _>>()?;
            for &y in &adj[x] {
                if parent[y] != x {
                    continue;
                }
                let child = table.remove(&y).expect("children first");
                for (a, fa) in f.iter_mut().enumerate() {
                    if fa.is_zero() {
                        continue;
                    }
                    let mut s = CycNum::zero(p);
                    for (b, cb) in child.iter().enumerate() {
                        s = &s + &(&edge_w[a * nc + b] * cb);
                    }
                    *fa = &*fa * &s;
                }
            }
            table.insert(x, f);
        }
        let f = table.remove(&root).expect("root evaluated");
        let total = f.iter().fold(CycNum::zero(p), |acc, x| &acc + x);
        z = &z * &total;
    }
    let v = n as u64;
    let g_inv = th.omega().g_plus_inv.pow(v);
    Ok(Phased::new(n as i64, g_inv.mul_cyc(&z)))
}

/// The invariant `I_p(M, G)`, phase-stripped, with its `h`-adic valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryInvariant {
    pub value: Phased,
    pub valuation: Valuation,
    pub signature: i64,
}

pub fn invariant_ip(th: &Theory, t: &PlumbingTree) -> Result<SurgeryInvariant, Error> {
    let sigma = signature_exact(&linking_matrix(t));
    let b = bracket_eval(th, t)?;
    let raw = Phased::new(b.kappa_exp - sigma, b.value);
    let value = raw.stripped(th.ctx())?;
    let valuation = value.h_valuation()?;
    Ok(SurgeryInvariant {
        value,
        valuation,
        signature: sigma,
    })
}

/// The invariant with its phase multiplied in, for exact comparisons.
pub fn invariant_value(th: &Theory, t: &PlumbingTree) -> Result<LaurentCyc, Error> {
    Ok(invariant_ip(th, t)?.value.expand(th.ctx()))
}
