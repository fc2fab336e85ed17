//! The quantum representation of the mapping class group on the
//! even-coloring basis, plus its shadow on integral homology.

pub mod cache;
mod generators;
mod homology;
mod matrix;
mod relations;
mod word;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

pub use cache::MatrixCache;
pub use homology::{
    heegaard_homology, lens_word, mapping_torus_homology, symplectic_action, twist_action,
    word_to_sl2z, IntMatrix,
};
pub use matrix::{RepMatrix, RepVector};
pub use relations::{run_relation_suite, RelationFailure};
pub use word::{Curve, MCGWord, Token};

use crate::cycring::{LaurentCyc, Valuation};
use crate::recoupling::Theory;
use crate::tqftspace::Basis;
use crate::Error;

/// `ρ_p` on `V_p(Σ_g)`, with generator matrices computed once and shared.
#[derive(Debug)]
pub struct Representation {
    theory: Arc<Theory>,
    basis: Basis,
    cache: Option<MatrixCache>,
    gens: RwLock<HashMap<Token, Arc<RepMatrix>>>,
}

impl Representation {
    pub fn new(theory: Arc<Theory>, genus: u32) -> Self {
        let basis = Basis::even(&theory, genus);
        Representation {
            theory,
            basis,
            cache: None,
            gens: RwLock::new(HashMap::new()),
        }
    }

    pub fn with_cache(mut self, cache: MatrixCache) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn theory(&self) -> &Theory {
        &self.theory
    }

    pub fn genus(&self) -> u32 {
        self.basis.genus
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Builds a generator matrix directly from recoupling data.
    pub fn derive_twist(&self, tok: Token) -> Result<RepMatrix, Error> {
        generators::build(&self.theory, &self.basis, tok)
    }

    /// The matrix of one generating twist, memoized and optionally cached on
    /// disk.
    pub fn twist_matrix(&self, tok: Token) -> Result<Arc<RepMatrix>, Error> {
        tok.check(self.genus())?;
        if let Some(m) = self.gens.read().expect("generator memo").get(&tok) {
            return Ok(m.clone());
        }
        let tag = self.basis.tag();
        let key = cache::CacheKey {
            p: self.theory.p(),
            genus: self.genus(),
            generator: tok,
            basis_tag: &tag,
        };
        let loaded = self.cache.as_ref().and_then(|c| c.load(&key));
        let m = match loaded {
            Some(m) => m,
            None => {
                let m = self.derive_twist(tok)?;
                if let Some(c) = &self.cache {
                    c.store(&key, &m)?;
                }
                m
            }
        };
        let m = Arc::new(m);
        Ok(self
            .gens
            .write()
            .expect("generator memo")
            .entry(tok)
            .or_insert(m)
            .clone())
    }

    /// `ρ(w)` as the ordered product of generator matrices.
    pub fn rho_word(&self, w: &MCGWord) -> Result<RepMatrix, Error> {
        w.check(self.genus())?;
        let mut acc = RepMatrix::identity(self.theory.p(), self.dim());
        for &t in w.tokens() {
            acc = acc.checked_mul(&*self.twist_matrix(t)?)?;
        }
        Ok(acc)
    }

    /// Column `k` of `ρ(w)`, computed by applying the generators right to
    /// left to a basis vector.
    pub fn column(&self, w: &MCGWord, k: usize) -> Result<RepVector, Error> {
        w.check(self.genus())?;
        let mut v = RepVector::basis(self.theory.p(), self.dim(), k);
        for &t in w.tokens().iter().rev() {
            v = self.twist_matrix(t)?.mul_vec(&v);
        }
        Ok(v)
    }

    pub fn first_column(&self, w: &MCGWord) -> Result<RepVector, Error> {
        self.column(w, 0)
    }

    /// Trace of `ρ(w)`, phase left out.
    pub fn trace_rho(&self, w: &MCGWord) -> Result<LaurentCyc, Error> {
        Ok(self.rho_word(w)?.trace())
    }

    /// Smallest valuation of a generator's entries, used as a sanity check.
    pub fn generator_valuation(&self, tok: Token) -> Result<Valuation, Error> {
        self.twist_matrix(tok)?.min_valuation()
    }

    /// Every generator of this genus, positive powers first.
    pub fn generators(&self) -> Vec<Token> {
        let g = self.genus();
        let mut out: Vec<Token> = (1..=g).map(Token::a).collect();
        out.extend((1..=g).map(Token::b));
        out.extend((1..g).map(Token::c));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycring::CycNum;

    fn rep(p: u32, g: u32) -> Representation {
        Representation::new(Arc::new(Theory::new(p).unwrap()), g)
    }

    #[test]
    fn meridian_twist_genus_one() {
        let r = rep(5, 1);
        let a = r.twist_matrix(Token::a(1)).unwrap();
        assert_eq!(*a.num(0, 0), CycNum::one(5));
        assert_eq!(*a.num(1, 1), CycNum::q_pow(5, 4));
        assert!(a.num(0, 1).is_zero());
    }

    #[test]
    fn inverses() {
        for (p, g) in [(5, 1), (5, 2), (7, 1)] {
            let r = rep(p, g);
            for t in r.generators() {
                let m = r.twist_matrix(t).unwrap().checked_mul(&r.twist_matrix(t.inv()).unwrap()).unwrap();
                assert!(m.is_identity(), "p={p} g={g} {t}");
            }
        }
    }

    #[test]
    fn modular_relations_genus_one() {
        for p in [5, 7, 11] {
            let r = rep(p, 1);
            let ctx = *r.theory().ctx();
            let s = r.rho_word(&"a1 b1 a1".parse().unwrap()).unwrap();
            let t = r.twist_matrix(Token::a(1)).unwrap();
            let st = s.checked_mul(&t).unwrap();
            let st3 = st.checked_mul(&st).unwrap().checked_mul(&st).unwrap();
            let s2 = s.checked_mul(&s).unwrap();
            assert!(st3.eq_up_to_phase(&s2, &ctx), "p={p}");
            let id = RepMatrix::identity(p, r.dim());
            assert!(s2.eq_up_to_phase(&id, &ctx), "p={p}");
        }
    }

    #[test]
    fn identity_word() {
        let r = rep(5, 2);
        let m = r.rho_word(&MCGWord::empty()).unwrap();
        assert!(m.is_identity());
        assert_eq!(r.trace_rho(&MCGWord::empty()).unwrap(), LaurentCyc::from(CycNum::from_int(5, 5)));
        let col = r.first_column(&MCGWord::empty()).unwrap();
        assert_eq!(col, RepVector::basis(5, 5, 0));
    }

    #[test]
    fn column_matches_matrix() {
        let r = rep(5, 2);
        let w: MCGWord = "a1 b1 c1^-1 b2 a2 b1^-1".parse().unwrap();
        let m = r.rho_word(&w).unwrap();
        let v = r.column(&w, 2).unwrap();
        for k in 0..r.dim() {
            assert_eq!(m.entry(k, 2), v.entry(k));
        }
    }

    #[test]
    fn out_of_range_tokens() {
        let r = rep(5, 1);
        assert!(r.twist_matrix(Token::c(1)).is_err());
        assert!(r.rho_word(&"a2".parse().unwrap()).is_err());
    }
}
