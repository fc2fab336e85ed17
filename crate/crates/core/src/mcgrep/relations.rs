//! Braid and commutation relations among the generating twists.
//!
//! Curves meeting once satisfy `xyx = yxy`; disjoint curves commute. Which
//! case applies is read off the intersection form on homology, which is
//! exact for this generating set.

use super::{twist_action, Representation, Token};
use crate::recoupling::SuiteReport;
use crate::Error;

fn intersection(x: &Token, y: &Token, g: u32) -> Result<i64, Error> {
    // T_x(y) - y = (x . y) x, so the shift of the image of y detects x . y.
    let m = twist_action(x, g)?;
    let tx = super::homology::curve_vector(x, g as usize);
    let ty = super::homology::curve_vector(y, g as usize);
    let moved: Vec<i64> = (0..m.len())
        .map(|r| (0..m.len()).map(|c| m[r][c] * ty[c]).sum::<i64>() - ty[r])
        .collect();
    let k = tx.iter().position(|&v| v != 0).expect("curves are nonzero");
    Ok(moved[k] / tx[k])
}

/// A relation that failed, for reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationFailure {
    pub left: Token,
    pub right: Token,
    pub braid: bool,
}

/// Checks every unordered pair of generators, up to a power of `kappa`.
pub fn run_relation_suite(rep: &Representation) -> Result<(SuiteReport, Vec<RelationFailure>), Error> {
    let ctx = *rep.theory().ctx();
    let gens = rep.generators();
    let g = rep.genus();
    let mut report = SuiteReport::default();
    let mut failed = Vec::new();
    for (k, &x) in gens.iter().enumerate() {
        for &y in &gens[k + 1..] {
            let mx = rep.twist_matrix(x)?;
            let my = rep.twist_matrix(y)?;
            let braid = intersection(&x, &y, g)?.abs() == 1;
            let (lhs, rhs) = if braid {
                (
                    mx.checked_mul(&my)?.checked_mul(&mx)?,
                    my.checked_mul(&mx)?.checked_mul(&my)?,
                )
            } else {
                (mx.checked_mul(&my)?, my.checked_mul(&mx)?)
            };
            report.instances += 1;
            if !lhs.eq_up_to_phase(&rhs, &ctx) {
                report.failures += 1;
                failed.push(RelationFailure {
                    left: x,
                    right: y,
                    braid,
                });
            }
        }
    }
    Ok((report, failed))
}
