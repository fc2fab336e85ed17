//! Manifold description files.
//!
//! ```text
//! file   := "manifold" desc
//! desc   := kind "{" [field ("," field)* [","]] "}"
//! kind   := lens | heegaard | plumbing | mapping_torus | connected_sum
//! field  := ident "=" value
//! value  := int | string | "[" [value ("," value)* [","]] "]"
//!         | "(" int ("," int)* ")" | ["manifold"] desc
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

use std::collections::BTreeMap;
use std::fmt;

use qtop_core::mcgrep::{lens_word, MCGWord};
use qtop_core::surgery::PlumbingTree;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ManifoldDesc {
    Lens { n: i64, q: i64 },
    Heegaard { genus: u32, word: MCGWord },
    Plumbing(PlumbingTree),
    MappingTorus { genus: u32, word: MCGWord },
    ConnectedSum(Vec<ManifoldDesc>),
}

impl ManifoldDesc {
    /// Heegaard word and genus, when the description provides one.
    pub fn heegaard(&self) -> Option<(MCGWord, u32)> {
        match self {
            ManifoldDesc::Lens { n, q } => Some((lens_word(*n, *q).ok()?, 1)),
            ManifoldDesc::Heegaard { genus, word } => Some((word.clone(), *genus)),
            ManifoldDesc::ConnectedSum(parts) => {
                let mut word = MCGWord::empty();
                let mut genus = 0;
                for part in parts {
                    let (w, g) = part.heegaard()?;
                    word = word.concat(&w.block_embed(genus));
                    genus += g;
                }
                Some((word, genus))
            }
            _ => None,
        }
    }

    /// Genus of the Heegaard presentation, if any.
    pub fn genus(&self) -> Option<u32> {
        self.heegaard().map(|(_, g)| g)
    }
}

impl fmt::Display for ManifoldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldDesc::Lens { n, q } => write!(f, "lens {{ n = {n}, q = {q} }}"),
            ManifoldDesc::Heegaard { genus, word } => {
                write!(f, "heegaard {{ genus = {genus}, word = \"{word}\" }}")
            }
            ManifoldDesc::Plumbing(t) => write!(f, "plumbing {{ {t} }}"),
            ManifoldDesc::MappingTorus { genus, word } => {
                write!(f, "mapping_torus {{ genus = {genus}, word = \"{word}\" }}")
            }
            ManifoldDesc::ConnectedSum(parts) => {
                let ps: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "connected_sum {{ parts = [{}] }}", ps.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Str(String),
    Punct(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Str(s) => write!(f, "\"{s}\""),
            Tok::Punct(c) => write!(f, "`{c}`"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

fn err(pos: Pos, msg: impl Into<String>) -> CliError {
    CliError::Parse {
        line: pos.line,
        col: pos.col,
        msg: msg.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, CliError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    let bump = |c: char, line: &mut usize, col: &mut usize| {
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c.is_whitespace() {
            chars.next();
            bump(c, &mut line, &mut col);
        } else if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                bump(c, &mut line, &mut col);
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if !(c.is_ascii_alphanumeric() || c == '_') {
                    break;
                }
                s.push(c);
                chars.next();
                bump(c, &mut line, &mut col);
            }
            out.push((Tok::Ident(s), pos));
        } else if c.is_ascii_digit() || c == '-' || c == '+' {
            let mut s = String::new();
            s.push(c);
            chars.next();
            bump(c, &mut line, &mut col);
            while let Some(&c) = chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                s.push(c);
                chars.next();
                bump(c, &mut line, &mut col);
            }
            let n = s
                .parse()
                .map_err(|_| err(pos, format!("invalid integer `{s}`")))?;
            out.push((Tok::Int(n), pos));
        } else if c == '"' {
            chars.next();
            bump(c, &mut line, &mut col);
            let mut s = String::new();
            loop {
                match chars.next() {
                    Some('"') => {
                        bump('"', &mut line, &mut col);
                        break;
                    }
                    Some('\n') | None => return Err(err(pos, "unterminated string")),
                    Some(c) => {
                        s.push(c);
                        bump(c, &mut line, &mut col);
                    }
                }
            }
            out.push((Tok::Str(s), pos));
        } else if "{}[](),=".contains(c) {
            chars.next();
            bump(c, &mut line, &mut col);
            out.push((Tok::Punct(c), pos));
        } else {
            return Err(err(pos, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Value {
    Int(i64),
    Str(String),
    List(Vec<(Value, Pos)>),
    Tuple(Vec<i64>),
    Desc(ManifoldDesc),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Int(_) => "an integer",
            Value::Str(_) => "a string",
            Value::List(_) => "a list",
            Value::Tuple(_) => "a tuple",
            Value::Desc(_) => "a manifold",
        }
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn next(&mut self, what: &str) -> Result<(Tok, Pos), CliError> {
        let t = self
            .toks
            .get(self.at)
            .cloned()
            .ok_or_else(|| err(self.end, format!("unexpected end of input, expected {what}")))?;
        self.at += 1;
        Ok(t)
    }

    fn expect(&mut self, c: char) -> Result<Pos, CliError> {
        match self.next(&format!("`{c}`"))? {
            (Tok::Punct(d), pos) if d == c => Ok(pos),
            (t, pos) => Err(err(pos, format!("expected `{c}`, found {t}"))),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn desc(&mut self) -> Result<ManifoldDesc, CliError> {
        let (kind, kpos) = match self.next("a manifold kind")? {
            (Tok::Ident(k), pos) => (k, pos),
            (t, pos) => return Err(err(pos, format!("expected a manifold kind, found {t}"))),
        };
        self.expect('{')?;
        let mut fields: BTreeMap<String, (Value, Pos)> = BTreeMap::new();
        while !self.eat('}') {
            let (name, npos) = match self.next("a field name or `}`")? {
                (Tok::Ident(n), pos) => (n, pos),
                (t, pos) => return Err(err(pos, format!("expected a field name, found {t}"))),
            };
            self.expect('=')?;
            let vpos = self.pos();
            let v = self.value()?;
            if fields.insert(name.clone(), (v, vpos)).is_some() {
                return Err(err(npos, format!("duplicate field `{name}`")));
            }
            if !self.eat(',') {
                self.expect('}')?;
                break;
            }
        }
        build(&kind, kpos, fields)
    }

    fn value(&mut self) -> Result<Value, CliError> {
        match self.peek() {
            Some(Tok::Int(_)) => match self.next("a value")? {
                (Tok::Int(n), _) => Ok(Value::Int(n)),
                _ => unreachable!(),
            },
            Some(Tok::Str(_)) => match self.next("a value")? {
                (Tok::Str(s), _) => Ok(Value::Str(s)),
                _ => unreachable!(),
            },
            Some(Tok::Punct('[')) => {
                self.at += 1;
                let mut items = Vec::new();
                while !self.eat(']') {
                    let pos = self.pos();
                    items.push((self.value()?, pos));
                    if !self.eat(',') {
                        self.expect(']')?;
                        break;
                    }
                }
                Ok(Value::List(items))
            }
            Some(Tok::Punct('(')) => {
                self.at += 1;
                let mut items = Vec::new();
                loop {
                    match self.next("an integer")? {
                        (Tok::Int(n), _) => items.push(n),
                        (t, pos) => return Err(err(pos, format!("expected an integer, found {t}"))),
                    }
                    if !self.eat(',') {
                        self.expect(')')?;
                        break;
                    }
                }
                Ok(Value::Tuple(items))
            }
            Some(Tok::Ident(k)) => {
                let skip = usize::from(k == "manifold");
                let opens = self.toks.get(self.at + skip + 1).map(|t| &t.0) == Some(&Tok::Punct('{'));
                if !opens && skip == 0 {
                    return Err(err(self.pos(), format!("expected a value, found `{k}`")));
                }
                self.at += skip;
                Ok(Value::Desc(self.desc()?))
            }
            Some(t) => Err(err(self.pos(), format!("expected a value, found {t}"))),
            None => Err(err(self.end, "unexpected end of input, expected a value")),
        }
    }
}

type Fields = BTreeMap<String, (Value, Pos)>;

fn take(fields: &mut Fields, name: &str, at: Pos) -> Result<(Value, Pos), CliError> {
    fields
        .remove(name)
        .ok_or_else(|| err(at, format!("missing field `{name}`")))
}

fn int(fields: &mut Fields, name: &str, at: Pos) -> Result<(i64, Pos), CliError> {
    match take(fields, name, at)? {
        (Value::Int(n), pos) => Ok((n, pos)),
        (v, pos) => Err(err(pos, format!("`{name}` must be an integer, found {}", v.kind()))),
    }
}

fn genus_and_word(fields: &mut Fields, at: Pos) -> Result<(u32, MCGWord), CliError> {
    let (g, gpos) = int(fields, "genus", at)?;
    let genus = u32::try_from(g)
        .ok()
        .filter(|&g| g >= 1)
        .ok_or_else(|| err(gpos, format!("genus must be positive, found {g}")))?;
    let (w, wpos) = match take(fields, "word", at)? {
        (Value::Str(s), pos) => (s, pos),
        (v, pos) => return Err(err(pos, format!("`word` must be a string, found {}", v.kind()))),
    };
    let word: MCGWord = w.parse().map_err(|e: qtop_core::Error| err(wpos, e.to_string()))?;
    word.check(genus).map_err(|e| err(wpos, e.to_string()))?;
    Ok((genus, word))
}

fn tuples(v: (Value, Pos), name: &str, arity: usize) -> Result<Vec<Vec<i64>>, CliError> {
    let items = match v {
        (Value::List(items), _) => items,
        (v, pos) => return Err(err(pos, format!("`{name}` must be a list, found {}", v.kind()))),
    };
    items
        .into_iter()
        .map(|(item, pos)| match item {
            Value::Tuple(t) if t.len() == arity => Ok(t),
            other => Err(err(pos, format!("`{name}` entries must be {arity}-tuples, found {}", other.kind()))),
        })
        .collect()
}

fn build(kind: &str, at: Pos, mut fields: Fields) -> Result<ManifoldDesc, CliError> {
    let desc = match kind {
        "lens" => {
            let (n, _) = int(&mut fields, "n", at)?;
            let (q, _) = int(&mut fields, "q", at)?;
            lens_word(n, q).map_err(|e| err(at, e.to_string()))?;
            ManifoldDesc::Lens { n, q }
        }
        "heegaard" => {
            let (genus, word) = genus_and_word(&mut fields, at)?;
            ManifoldDesc::Heegaard { genus, word }
        }
        "mapping_torus" => {
            let (genus, word) = genus_and_word(&mut fields, at)?;
            ManifoldDesc::MappingTorus { genus, word }
        }
        "plumbing" => {
            let vs = tuples(take(&mut fields, "vertices", at)?, "vertices", 2)?;
            let es = match fields.remove("edges") {
                Some(v) => tuples(v, "edges", 2)?,
                None => Vec::new(),
            };
            let ms = match fields.remove("meridians") {
                Some(v) => tuples(v, "meridians", 2)?,
                None => Vec::new(),
            };
            let ms = ms
                .into_iter()
                .map(|m| {
                    u32::try_from(m[1])
                        .map(|c| (m[0], c))
                        .map_err(|_| err(at, format!("meridian color {} is negative", m[1])))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let tree = PlumbingTree::new(
                vs.into_iter().map(|v| (v[0], v[1])).collect(),
                es.into_iter().map(|e| (e[0], e[1])).collect(),
                ms,
            )
            .map_err(|e| err(at, e.to_string()))?;
            ManifoldDesc::Plumbing(tree)
        }
        "connected_sum" => {
            let parts = match take(&mut fields, "parts", at)? {
                (Value::List(items), _) => items,
                (v, pos) => return Err(err(pos, format!("`parts` must be a list, found {}", v.kind()))),
            };
            let parts = parts
                .into_iter()
                .map(|(v, pos)| match v {
                    Value::Desc(d @ (ManifoldDesc::Lens { .. } | ManifoldDesc::Heegaard { .. })) => Ok(d),
                    Value::Desc(_) => Err(err(pos, "connected_sum parts must be lens or heegaard")),
                    other => Err(err(pos, format!("expected a manifold, found {}", other.kind()))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            if parts.is_empty() {
                return Err(err(at, "connected_sum needs at least one part"));
            }
            ManifoldDesc::ConnectedSum(parts)
        }
        other => return Err(err(at, format!("unknown manifold kind `{other}`"))),
    };
    if let Some((name, (_, pos))) = fields.into_iter().next() {
        return Err(err(pos, format!("unknown field `{name}` for {kind}")));
    }
    Ok(desc)
}

/// Parses one `manifold ...` description.
pub fn parse_manifold(text: &str) -> Result<ManifoldDesc, CliError> {
    let toks = lex(text)?;
    let last_line = text.lines().count().max(1);
    let end = Pos {
        line: last_line,
        col: text.lines().last().map_or(0, |l| l.chars().count()) + 1,
    };
    let mut p = Parser { toks, at: 0, end };
    match p.next("`manifold`")? {
        (Tok::Ident(k), _) if k == "manifold" => {}
        (t, pos) => return Err(err(pos, format!("expected `manifold`, found {t}"))),
    }
    let d = p.desc()?;
    if p.at < p.toks.len() {
        let (t, pos) = &p.toks[p.at];
        return Err(err(*pos, format!("trailing input starting at {t}")));
    }
    Ok(d)
}
