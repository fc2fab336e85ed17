//! `j_p` and its bounds.
//!
//! The exact route takes a Heegaard word: `j_p = (d-1) g + min_i v(M_{i,0})`
//! over the first column of `ρ_p(f)`. Surgery presentations and mapping
//! tori give intervals: any invariant with a decoration bounds `j_p` from
//! above, and homology decides the lower bound `0` or `d-1`.

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use crate::cycring::{LaurentCyc, Phased, PrimeContext, Valuation};
use crate::intlin::AbelianGroup;
use crate::mcgrep::{
    heegaard_homology, mapping_torus_homology, MCGWord, MatrixCache, Representation,
};
use crate::recoupling::Theory;
use crate::surgery::{homology_data, invariant_ip, linking_matrix, PlumbingTree};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    HeegaardExact,
    SurgerySandwich,
    MappingTorusUpper,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::HeegaardExact => "heegaard",
            Route::SurgerySandwich => "surgery",
            Route::MappingTorusUpper => "mapping-torus",
        })
    }
}

/// `j_p` as an interval `[lo, hi]`; `hi = None` means no upper bound was
/// found. Exact results have `lo = hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JpResult {
    pub lo: u64,
    pub hi: Option<u64>,
    pub route: Route,
    pub witnesses: Vec<String>,
}

impl JpResult {
    pub fn exact(&self) -> Option<u64> {
        (self.hi == Some(self.lo)).then_some(self.lo)
    }
}

impl fmt::Display for JpResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.exact(), self.hi) {
            (Some(j), _) => write!(f, "jp = {j} (exact, {})", self.route),
            (None, Some(hi)) => write!(f, "jp in [{}, {hi}] ({})", self.lo, self.route),
            (None, None) => write!(f, "jp in [{}, inf] ({})", self.lo, self.route),
        }
    }
}

/// Trace data of a mapping torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingTorusData {
    pub trace: LaurentCyc,
    /// `(d-1) + v(trace)`.
    pub valuation: Valuation,
    pub homology: AbelianGroup,
    pub jp: JpResult,
}

/// Outcome of checking `0 <= c <= j_p/(d-1) <= g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub d_minus_one: u64,
    pub violations: Vec<String>,
    /// Whether `d-1` divides `j_p`; `None` for non-exact results.
    pub divisible: Option<bool>,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn bound_chain_report(
    jp: &JpResult,
    p: u32,
    cut: Option<u64>,
    genus: Option<u64>,
) -> Result<BoundReport, Error> {
    let d1 = PrimeContext::new(p)?.d() as u64 - 1;
    let mut violations = Vec::new();
    if let (Some(c), Some(hi)) = (cut, jp.hi) {
        if c * d1 > hi {
            violations.push(format!("cut {c} exceeds jp/(d-1) <= {hi}/{d1}"));
        }
    }
    if let Some(g) = genus {
        if jp.lo > g * d1 {
            violations.push(format!("jp >= {} exceeds (d-1)*genus = {}", jp.lo, g * d1));
        }
    }
    if let (Some(c), Some(g)) = (cut, genus) {
        if c > g {
            violations.push(format!("cut {c} exceeds genus {g}"));
        }
    }
    Ok(BoundReport {
        d_minus_one: d1,
        violations,
        divisible: jp.exact().map(|j| j % d1 == 0),
    })
}

/// Additivity check for a connected sum of two Heegaard presentations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectedSumCheck {
    pub parts: Vec<u64>,
    pub sum: u64,
    pub holds: bool,
}

/// Shared state for one prime: recoupling tables, one representation per
/// genus, and an optional matrix cache.
#[derive(Debug)]
pub struct Engine {
    theory: Arc<Theory>,
    cache: Option<PathBuf>,
    reps: Mutex<HashMap<u32, Arc<Representation>>>,
}

impl Engine {
    pub fn new(p: u32) -> Result<Self, Error> {
        Ok(Engine {
            theory: Arc::new(Theory::new(p)?),
            cache: None,
            reps: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_cache(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache = Some(dir.into());
        self
    }

    pub fn theory(&self) -> &Theory {
        &self.theory
    }

    pub fn ctx(&self) -> &PrimeContext {
        self.theory.ctx()
    }

    fn d1(&self) -> u64 {
        self.ctx().d() as u64 - 1
    }

    pub fn representation(&self, g: u32) -> Result<Arc<Representation>, Error> {
        if g == 0 {
            return Err(Error::UnsupportedGenus(0));
        }
        let mut reps = self.reps.lock().expect("representation table");
        let rep = reps.entry(g).or_insert_with(|| {
            let r = Representation::new(self.theory.clone(), g);
            Arc::new(match &self.cache {
                Some(dir) => r.with_cache(MatrixCache::new(dir)),
                None => r,
            })
        });
        Ok(rep.clone())
    }

    /// Exact `j_p` of `H ∪_f -H`. Genus `0` with the empty word is `S^3`.
    pub fn jp_heegaard(&self, w: &MCGWord, g: u32) -> Result<JpResult, Error> {
        if g == 0 {
            w.check(0)?;
            return Ok(JpResult {
                lo: 0,
                hi: Some(0),
                route: Route::HeegaardExact,
                witnesses: Vec::new(),
            });
        }
        let rep = self.representation(g)?;
        let col = rep.first_column(w)?;
        let vals = col.valuations()?;
        let best = vals.iter().copied().min().expect("nonempty basis");
        let Valuation::Finite(v) = best else {
            return Err(Error::Invariant("first column vanishes".into()));
        };
        let j = (self.d1() * g as u64) as i64 + v;
        if j < 0 || j as u64 > self.d1() * g as u64 {
            return Err(Error::Invariant(format!(
                "jp = {j} outside [0, (d-1)g = {}]",
                self.d1() * g as u64
            )));
        }
        let witnesses = vals
            .iter()
            .enumerate()
            .filter(|(_, x)| **x == best)
            .map(|(k, _)| rep.basis().colorings[k].to_string())
            .collect();
        Ok(JpResult {
            lo: j as u64,
            hi: Some(j as u64),
            route: Route::HeegaardExact,
            witnesses,
        })
    }

    /// `I_p(H ∪_f -H) = D^g M_{0,0}` with `D = G+ kappa^-1`, phase-stripped.
    pub fn heegaard_invariant(&self, w: &MCGWord, g: u32) -> Result<Phased, Error> {
        if g == 0 {
            w.check(0)?;
            return Ok(Phased::new(0, LaurentCyc::one(self.ctx().p())));
        }
        let rep = self.representation(g)?;
        let col = rep.first_column(w)?;
        let gp = self.theory.omega().g_plus.pow(g as u64);
        let v = col.entry(0).mul_cyc(&gp);
        Phased::new(col.kappa_exp - g as i64, v).stripped(self.ctx())
    }

    /// `I_p` of the mapping torus, `D tr ρ(f)`, phase-stripped.
    pub fn mapping_torus_invariant(&self, w: &MCGWord, g: u32) -> Result<Phased, Error> {
        let rep = self.representation(g)?;
        let m = rep.rho_word(w)?;
        let v = m.trace().mul_cyc(&self.theory.omega().g_plus);
        Phased::new(m.kappa_exp - 1, v).stripped(self.ctx())
    }

    /// Upper bound from the trace and lower bound `d-1` from `b_1 > 0`.
    pub fn mapping_torus_valuation(&self, w: &MCGWord, g: u32) -> Result<MappingTorusData, Error> {
        let rep = self.representation(g)?;
        let trace = rep.trace_rho(w)?;
        let valuation = trace.h_valuation()?.shift(self.d1() as i64);
        let homology = mapping_torus_homology(w, g)?;
        let lo = if homology.is_zp_trivial(self.ctx().p()) { 0 } else { self.d1() };
        // a genus-g bundle has Heegaard genus at most 2g + 1
        let genus_cap = self.d1() * (2 * g as u64 + 1);
        let hi = match valuation {
            Valuation::Finite(v) if v < 0 => {
                return Err(Error::Invariant(format!("negative trace valuation {v}")))
            }
            Valuation::Finite(v) => (v as u64).min(genus_cap),
            Valuation::Infinite => genus_cap,
        };
        if lo > hi {
            return Err(Error::Invariant(format!("bounds crossed: [{lo}, {hi}]")));
        }
        Ok(MappingTorusData {
            trace,
            valuation,
            homology,
            jp: JpResult {
                lo,
                hi: Some(hi),
                route: Route::MappingTorusUpper,
                witnesses: vec!["trace".to_string()],
            },
        })
    }

    /// Probes in order: the tree as given, then one extra meridian per
    /// `(vertex, color)` for colors `1..=p-2`, taking at most `probes` of
    /// the latter.
    pub fn jp_bounds_surgery(&self, t: &PlumbingTree, probes: usize) -> Result<JpResult, Error> {
        let p = self.ctx().p();
        let data = homology_data(&linking_matrix(t), p);
        let lo = if data.is_zp_homology_sphere(p) { 0 } else { self.d1() };
        let mut candidates = vec![(t.clone(), "empty".to_string())];
        'outer: for &(v, _) in t.vertices() {
            for c in 1..=self.theory.max_color() {
                if candidates.len() > probes {
                    break 'outer;
                }
                let mut ms = t.meridians().to_vec();
                ms.push((v, c));
                candidates.push((t.with_meridians(ms)?, format!("meridian({v},{c})")));
            }
        }
        let mut hi: Option<i64> = None;
        let mut witnesses = Vec::new();
        for (tree, name) in candidates {
            let Valuation::Finite(v) = invariant_ip(&self.theory, &tree)?.valuation else {
                continue;
            };
            match hi {
                Some(h) if v > h => {}
                Some(h) if v == h => witnesses.push(name),
                _ => {
                    hi = Some(v);
                    witnesses = vec![name];
                }
            }
        }
        if let Some(h) = hi {
            if h < lo as i64 {
                return Err(Error::Invariant(format!("bounds crossed: [{lo}, {h}]")));
            }
        }
        Ok(JpResult {
            lo,
            hi: hi.map(|h| h as u64),
            route: Route::SurgerySandwich,
            witnesses,
        })
    }

    /// `j_p` of the block sum of Heegaard words, checked against the sum of
    /// the parts. Genus-zero parts are skipped.
    pub fn connected_sum_jp(&self, parts: &[(MCGWord, u32)]) -> Result<ConnectedSumCheck, Error> {
        let mut values = Vec::new();
        let mut word = MCGWord::empty();
        let mut genus = 0;
        for (w, g) in parts {
            values.push(self.jp_heegaard(w, *g)?.lo);
            if *g == 0 {
                continue;
            }
            word = word.concat(&w.block_embed(genus));
            genus += g;
        }
        let sum = self.jp_heegaard(&word, genus)?.lo;
        Ok(ConnectedSumCheck {
            holds: values.iter().sum::<u64>() == sum,
            parts: values,
            sum,
        })
    }

    pub fn heegaard_homology(&self, w: &MCGWord, g: u32) -> Result<AbelianGroup, Error> {
        heegaard_homology(w, g)
    }
}
