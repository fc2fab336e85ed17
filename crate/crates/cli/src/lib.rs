//! The `qtop` command line: manifold files in, line-oriented
//! `key = value` reports out.
//!
//! Exit codes: `0` success, `1` usage or input errors, `2` a violated
//! invariant (always a bug, since the checked bounds are theorems).

pub mod grammar;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use qtop_core::invariants::{bound_chain_report, Engine, JpResult};
use qtop_core::mcgrep::{run_relation_suite, MCGWord, Representation};
use qtop_core::recoupling::{run_orthogonality_suite, run_pentagon_suite, Theory};
use qtop_core::surgery::{invariant_ip, invariant_value, PlumbingTree};
use qtop_core::tqftspace::verlinde_dim;
use qtop_core::Phased;

pub use grammar::{parse_manifold, ManifoldDesc};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{0}")]
    Core(#[from] qtop_core::Error),
    #[error("invariant violated: {0}")]
    Violation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(qtop_core::Error::Invariant(_)) | CliError::Violation(_) => 2,
            _ => 1,
        }
    }
}

pub const DEFAULT_CACHE: &str = ".qtop-cache";

#[derive(Debug, Parser)]
#[command(name = "qtop", version, about = "Exact SO(3) quantum invariants and j_p")]
struct Cli {
    /// Matrix cache directory (overrides QTOP_CACHE).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Derive every matrix afresh and write nothing.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// j_p, exact or as an interval.
    Jp {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        input: PathBuf,
        /// Extra meridian probes for surgery presentations.
        #[arg(long, default_value_t = 8)]
        probes: usize,
    },
    /// The phase-stripped invariant and its h-valuation.
    Invariant {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        input: PathBuf,
    },
    /// One column of the representation matrix.
    Rho {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        input: PathBuf,
        /// 1-based column index.
        #[arg(long, default_value_t = 1)]
        column: usize,
    },
    /// Dimension of the space of a closed genus-g surface.
    Dim {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        genus: u32,
    },
    /// Runs the identity suites.
    Selfcheck {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 2)]
        genus: u32,
        #[arg(long, default_value_t = 20)]
        trees: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Samples random words and tabulates j_p.
    Explore {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        genus: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        maxlen: usize,
    },
    /// Checks 0 <= cut <= j_p/(d-1) <= genus.
    CheckBounds {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cut: Option<u64>,
        #[arg(long)]
        genus: Option<u64>,
        #[arg(long, default_value_t = 8)]
        probes: usize,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs `qtop` on `args` (program name first).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 1, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut out = String::new();
    match dispatch(&cli, &mut out) {
        Ok(()) => Outcome { code: 0, stdout: out, stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: out, stderr: format!("error: {e}\n") },
    }
}

fn cache_dir(cli: &Cli) -> Option<PathBuf> {
    if cli.no_cache {
        return None;
    }
    cli.cache
        .clone()
        .or_else(|| std::env::var_os("QTOP_CACHE").map(PathBuf::from))
        .or_else(|| Some(PathBuf::from(DEFAULT_CACHE)))
}

fn engine(cli: &Cli, p: u32) -> Result<Engine, CliError> {
    let e = Engine::new(p)?;
    Ok(match cache_dir(cli) {
        Some(dir) => e.with_cache(dir),
        None => e,
    })
}

fn read_manifold(path: &PathBuf) -> Result<ManifoldDesc, CliError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: shown.clone(),
        msg: e.to_string(),
    })?;
    parse_manifold(&text).map_err(|e| match e {
        CliError::Parse { line, col, msg } => CliError::Parse {
            line,
            col,
            msg: format!("{msg} (in {shown})"),
        },
        other => other,
    })
}

fn dispatch(cli: &Cli, out: &mut String) -> Result<(), CliError> {
    match &cli.cmd {
        Command::Jp { p, input, probes } => {
            let desc = read_manifold(input)?;
            let e = engine(cli, *p)?;
            let jp = jp_of(&e, &desc, *probes, out)?;
            write_jp(out, &jp);
        }
        Command::Invariant { p, input } => {
            let desc = read_manifold(input)?;
            let e = engine(cli, *p)?;
            let v = invariant_of(&e, &desc)?;
            let _ = writeln!(out, "kappa = {}", v.kappa_exp);
            let _ = writeln!(out, "coeffs = {}", v.value.num());
            if v.value.hexp() > 0 {
                let _ = writeln!(out, "h_denominator = {}", v.value.hexp());
            }
            let _ = writeln!(out, "valuation = {}", v.h_valuation()?);
        }
        Command::Rho { p, input, column } => {
            let desc = read_manifold(input)?;
            let (w, g) = match &desc {
                ManifoldDesc::MappingTorus { genus, word } => (word.clone(), *genus),
                ManifoldDesc::Plumbing(_) => {
                    return Err(CliError::Usage("rho needs a word; plumbing has none".into()))
                }
                d => d.heegaard().expect("word-presented kinds"),
            };
            let e = engine(cli, *p)?;
            let rep = e.representation(g)?;
            if *column == 0 || *column > rep.dim() {
                return Err(CliError::Usage(format!("column must be in 1..={}", rep.dim())));
            }
            let col = rep.column(&w, column - 1)?;
            let vals = col.valuations()?;
            let _ = writeln!(out, "dim = {}", rep.dim());
            let _ = writeln!(out, "column = {column}");
            let _ = writeln!(out, "kappa = {}", col.kappa_exp);
            let _ = writeln!(out, "h_denominator = {}", col.hexp);
            for (k, x) in col.entries.iter().enumerate() {
                let _ = writeln!(out, "coloring[{}] = {}", k + 1, rep.basis().colorings[k]);
                let _ = writeln!(out, "entry[{}] = {x}", k + 1);
                let _ = writeln!(out, "valuation[{}] = {}", k + 1, vals[k]);
            }
        }
        Command::Dim { p, genus } => {
            let t = Theory::new(*p)?;
            let _ = writeln!(out, "{}", verlinde_dim(&t, *genus));
        }
        Command::Selfcheck { p, genus, trees, seed } => selfcheck(*p, *genus, *trees, *seed, out)?,
        Command::Explore { p, genus, samples, seed, maxlen } => {
            let e = engine(cli, *p)?;
            explore(&e, *genus, *samples, *seed, *maxlen, out)?;
        }
        Command::CheckBounds { p, input, cut, genus, probes } => {
            let desc = read_manifold(input)?;
            let e = engine(cli, *p)?;
            let jp = jp_of(&e, &desc, *probes, out)?;
            write_jp(out, &jp);
            let genus = genus.or(desc.genus().map(u64::from));
            let report = bound_chain_report(&jp, *p, *cut, genus)?;
            let show = |x: Option<u64>| x.map_or("unknown".to_string(), |v| v.to_string());
            let _ = writeln!(out, "cut = {}", show(*cut));
            let _ = writeln!(out, "genus = {}", show(genus));
            let _ = writeln!(out, "d_minus_one = {}", report.d_minus_one);
            let _ = writeln!(out, "divisible = {}", report.divisible.map_or("unknown".into(), |b| b.to_string()));
            let _ = writeln!(out, "chain = {}", if report.holds() { "holds" } else { "violated" });
            for v in &report.violations {
                let _ = writeln!(out, "violation = {v}");
            }
            if !report.holds() {
                return Err(CliError::Violation(report.violations.join("; ")));
            }
        }
    }
    Ok(())
}

fn write_jp(out: &mut String, jp: &JpResult) {
    let _ = writeln!(out, "{jp}");
    let _ = writeln!(out, "witnesses = {}", jp.witnesses.join(" "));
}

fn jp_of(e: &Engine, desc: &ManifoldDesc, probes: usize, out: &mut String) -> Result<JpResult, CliError> {
    match desc {
        ManifoldDesc::Plumbing(t) => Ok(e.jp_bounds_surgery(t, probes)?),
        ManifoldDesc::MappingTorus { genus, word } => Ok(e.mapping_torus_valuation(word, *genus)?.jp),
        ManifoldDesc::ConnectedSum(parts) => {
            let words: Vec<(MCGWord, u32)> = parts
                .iter()
                .map(|p| p.heegaard().expect("parts are word-presented"))
                .collect();
            let check = e.connected_sum_jp(&words)?;
            let terms: Vec<String> = check.parts.iter().map(u64::to_string).collect();
            let _ = writeln!(out, "parts = {}", terms.join(" + "));
            if !check.holds {
                return Err(CliError::Violation(format!(
                    "additivity fails: {} != {}",
                    terms.join(" + "),
                    check.sum
                )));
            }
            let (w, g) = desc.heegaard().expect("word-presented");
            Ok(e.jp_heegaard(&w, g)?)
        }
        d => {
            let (w, g) = d.heegaard().expect("word-presented kinds");
            Ok(e.jp_heegaard(&w, g)?)
        }
    }
}

fn invariant_of(e: &Engine, desc: &ManifoldDesc) -> Result<Phased, CliError> {
    Ok(match desc {
        ManifoldDesc::Plumbing(t) => invariant_ip(e.theory(), t)?.value,
        ManifoldDesc::MappingTorus { genus, word } => e.mapping_torus_invariant(word, *genus)?,
        d => {
            let (w, g) = d.heegaard().expect("word-presented kinds");
            e.heegaard_invariant(&w, g)?
        }
    })
}

fn random_tree(rng: &mut ChaCha8Rng) -> PlumbingTree {
    let n = rng.gen_range(1..=5);
    let vertices = (1..=n).map(|k| (k as i64, rng.gen_range(-3..=3))).collect();
    let edges = (2..=n).map(|k| (rng.gen_range(1..k) as i64, k as i64)).collect();
    PlumbingTree::new(vertices, edges, Vec::new()).expect("parents precede children")
}

/// Stabilization and leaf blow-down on random trees; returns the failures.
fn kirby_failures(th: &Theory, trees: usize, seed: u64) -> Result<Vec<String>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..trees {
        let t = random_tree(&mut rng);
        let eps = if rng.gen_bool(0.5) { 1 } else { -1 };
        let base = invariant_value(th, &t)?;
        if invariant_value(th, &t.disjoint_union(&PlumbingTree::chain(&[eps])))? != base {
            failures.push(format!("stabilization of {t}"));
        }
        let (u, _) = t.vertices()[rng.gen_range(0..t.len())];
        let leaf = t.len() as i64 + 1;
        let mut vs = t.vertices().to_vec();
        vs.push((leaf, eps));
        let mut es = t.edges().to_vec();
        es.push((u, leaf));
        let up = PlumbingTree::new(vs, es, Vec::new())?;
        let down = up.blow_down_leaf(leaf).expect("leaf with framing +-1");
        if invariant_value(th, &up)? != invariant_value(th, &down)? {
            failures.push(format!("blow-down of {up}"));
        }
    }
    Ok(failures)
}

fn selfcheck(p: u32, genus: u32, trees: usize, seed: u64, out: &mut String) -> Result<(), CliError> {
    let th = Arc::new(Theory::new(p)?);
    let mut ok = true;
    let mut line = |out: &mut String, key: &str, passed: bool, detail: String| {
        ok &= passed;
        let _ = writeln!(out, "{key} = {} ({detail})", if passed { "ok" } else { "FAILED" });
    };
    let pent = run_pentagon_suite(&th);
    line(out, "pentagon", pent.passed(), format!("{} instances", pent.instances));
    let orth = run_orthogonality_suite(&th);
    line(out, "orthogonality", orth.passed(), format!("{} instances", orth.instances));
    for g in 1..=genus {
        let rep = Representation::new(th.clone(), g);
        let (report, failed) = run_relation_suite(&rep)?;
        let detail = if failed.is_empty() {
            format!("{} pairs", report.instances)
        } else {
            let names: Vec<String> = failed.iter().map(|f| format!("{}/{}", f.left, f.right)).collect();
            format!("{} pairs, failing {}", report.instances, names.join(" "))
        };
        line(out, &format!("relations_g{g}"), report.passed(), detail);
    }
    let kirby = kirby_failures(&th, trees, seed)?;
    let detail = if kirby.is_empty() {
        format!("{trees} trees")
    } else {
        kirby.join("; ")
    };
    line(out, "kirby", kirby.is_empty(), detail);
    let _ = writeln!(out, "selfcheck = {}", if ok { "pass" } else { "fail" });
    if ok {
        Ok(())
    } else {
        Err(CliError::Violation("selfcheck failed".into()))
    }
}

/// Random words of uniform length in `1..=maxlen`, each letter uniform among
/// the generators and their inverses.
fn explore(e: &Engine, genus: u32, samples: usize, seed: u64, maxlen: usize, out: &mut String) -> Result<(), CliError> {
    if maxlen == 0 {
        return Err(CliError::Usage("--maxlen must be positive".into()));
    }
    let gens = e.representation(genus)?.generators();
    let d1 = e.ctx().d() as u64 - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hist: BTreeMap<u64, usize> = BTreeMap::new();
    let mut odd = Vec::new();
    for _ in 0..samples {
        let len = rng.gen_range(1..=maxlen);
        let toks = (0..len)
            .map(|_| {
                let t = gens[rng.gen_range(0..gens.len())];
                if rng.gen_bool(0.5) {
                    t.inv()
                } else {
                    t
                }
            })
            .collect();
        let w = MCGWord(toks);
        let j = e.jp_heegaard(&w, genus)?.lo;
        *hist.entry(j).or_default() += 1;
        if j % d1 != 0 {
            odd.push(format!("{j}:\"{w}\""));
        }
    }
    let _ = writeln!(out, "p = {}", e.ctx().p());
    let _ = writeln!(out, "genus = {genus}");
    let _ = writeln!(out, "samples = {samples}");
    let _ = writeln!(out, "seed = {seed}");
    let _ = writeln!(out, "maxlen = {maxlen}");
    for (j, n) in &hist {
        let _ = writeln!(out, "jp[{j}] = {n}{}", if j % d1 == 0 { "" } else { " not divisible by d-1" });
    }
    let _ = writeln!(out, "divisible_by_d_minus_one = {}", odd.is_empty());
    let _ = writeln!(out, "nondivisible = {}", if odd.is_empty() { "none".into() } else { odd.join(" ") });
    Ok(())
}
