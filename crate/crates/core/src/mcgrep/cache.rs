//! On-disk store of generator matrices, one text file per
//! `(p, genus, generator)`.
//!
//! ```text
//! qtop-matrix 1
//! p = 5
//! genus = 1
//! generator = b1
//! basis = (0) (2)
//! kappa = 0
//! hexp = 1
//! dim = 2
//! 0 0 : c0 c1 c2 c3
//! 0 1 : c0 c1 c2 c3 | i c0 c1 c2 c3
//! ...
//! ```
//!
//! Entry lines are row-major and list every entry; the optional `| i` part
//! carries the coefficients of `i`. Rendering is deterministic, so a
//! re-derived matrix reproduces the file byte for byte.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;

use super::{RepMatrix, Token};
use crate::cycring::CycNum;
use crate::Error;

const MAGIC: &str = "qtop-matrix 1";

/// Identity of a cached matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheKey<'a> {
    pub p: u32,
    pub genus: u32,
    pub generator: Token,
    pub basis_tag: &'a str,
}

pub fn file_name(p: u32, genus: u32, tok: Token) -> String {
    format!("p{p}_g{genus}_{}.qmat", tok.slug())
}

fn coeffs(v: &[BigInt]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn render(key: &CacheKey<'_>, m: &RepMatrix) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{MAGIC}");
    let _ = writeln!(s, "p = {}", key.p);
    let _ = writeln!(s, "genus = {}", key.genus);
    let _ = writeln!(s, "generator = {}", key.generator);
    let _ = writeln!(s, "basis = {}", key.basis_tag);
    let _ = writeln!(s, "kappa = {}", m.kappa_exp);
    let _ = writeln!(s, "hexp = {}", m.hexp);
    let _ = writeln!(s, "dim = {}", m.dim);
    for r in 0..m.dim {
        for c in 0..m.dim {
            let x = m.num(r, c);
            let _ = write!(s, "{r} {c} : {}", coeffs(x.re()));
            if x.has_im() {
                let _ = write!(s, " | i {}", coeffs(&x.im()));
            }
            s.push('\n');
        }
    }
    s
}

fn header<'a>(lines: &mut impl Iterator<Item = &'a str>, name: &str) -> Result<&'a str, Error> {
    let line = lines
        .next()
        .ok_or_else(|| Error::Cache(format!("missing `{name}` line")))?;
    line.strip_prefix(name)
        .and_then(|r| r.strip_prefix(" = "))
        .ok_or_else(|| Error::Cache(format!("expected `{name} = ...`, found `{line}`")))
}

fn parse_num<T: std::str::FromStr>(s: &str) -> Result<T, Error> {
    s.trim()
        .parse()
        .map_err(|_| Error::Cache(format!("bad number `{s}`")))
}

fn parse_coeffs(s: &str, p: u32) -> Result<Vec<BigInt>, Error> {
    let v: Vec<BigInt> = s
        .split_whitespace()
        .map(parse_num)
        .collect::<Result<_, _>>()?;
    if v.len() != p as usize - 1 {
        return Err(Error::Cache(format!("expected {} coefficients", p - 1)));
    }
    Ok(v)
}

/// Parses a cache file and checks it against the expected key.
pub fn parse(text: &str, key: &CacheKey<'_>) -> Result<RepMatrix, Error> {
    let mut lines = text.lines();
    if lines.next() != Some(MAGIC) {
        return Err(Error::Cache("bad magic line".into()));
    }
    let p: u32 = parse_num(header(&mut lines, "p")?)?;
    let genus: u32 = parse_num(header(&mut lines, "genus")?)?;
    let gen: Token = header(&mut lines, "generator")?
        .parse()
        .map_err(|_| Error::Cache("bad generator".into()))?;
    let tag = header(&mut lines, "basis")?;
    if p != key.p || genus != key.genus || gen != key.generator || tag != key.basis_tag {
        return Err(Error::Cache("key mismatch".into()));
    }
    let kappa: i64 = parse_num(header(&mut lines, "kappa")?)?;
    let hexp: u32 = parse_num(header(&mut lines, "hexp")?)?;
    let dim: usize = parse_num(header(&mut lines, "dim")?)?;
    let mut entries = Vec::with_capacity(dim * dim);
    for k in 0..dim * dim {
        let line = lines
            .next()
            .ok_or_else(|| Error::Cache("truncated entries".into()))?;
        let (pos, body) = line
            .split_once(" : ")
            .ok_or_else(|| Error::Cache(format!("bad entry line `{line}`")))?;
        if pos != format!("{} {}", k / dim, k % dim) {
            return Err(Error::Cache(format!("entry out of order at `{pos}`")));
        }
        let (re, im) = match body.split_once(" | i ") {
            Some((re, im)) => (re, Some(im)),
            None => (body, None),
        };
        let re = parse_coeffs(re, p)?;
        let x = match im {
            Some(im) => CycNum::from_parts(p, re, parse_coeffs(im, p)?),
            None => CycNum::from_parts(p, re, Vec::new()),
        };
        entries.push(x);
    }
    if lines.next().is_some() {
        return Err(Error::Cache("trailing data".into()));
    }
    let mut m = RepMatrix::from_entries(p, dim, entries, hexp);
    if m.hexp != hexp {
        return Err(Error::Cache("stored matrix is not normalized".into()));
    }
    m.kappa_exp = kappa;
    Ok(m)
}

/// A cache directory. Writes go to a unique temporary file that is then
/// renamed over the target, so concurrent writers never expose a partial
/// file.
#[derive(Clone, Debug)]
pub struct MatrixCache {
    dir: PathBuf,
}

static COUNTER: AtomicU64 = AtomicU64::new(0);

impl MatrixCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        MatrixCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, key: &CacheKey<'_>) -> PathBuf {
        self.dir.join(file_name(key.p, key.genus, key.generator))
    }

    /// The cached matrix, or `None` when absent or unreadable.
    pub fn load(&self, key: &CacheKey<'_>) -> Option<RepMatrix> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        parse(&text, key).ok()
    }

    pub fn store(&self, key: &CacheKey<'_>, m: &RepMatrix) -> Result<(), Error> {
        let io = |e: std::io::Error| Error::Cache(e.to_string());
        fs::create_dir_all(&self.dir).map_err(io)?;
        let target = self.path(key);
        let tmp = self.dir.join(format!(
            ".{}.{}.{}.tmp",
            file_name(key.p, key.genus, key.generator),
            std::process::id(),
            COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let mut f = fs::File::create(&tmp).map_err(io)?;
        f.write_all(render(key, m).as_bytes()).map_err(io)?;
        f.sync_all().map_err(io)?;
        drop(f);
        fs::rename(&tmp, &target).map_err(io)
    }
}
