use std::fmt;
use std::str::FromStr;

use crate::Error;

/// Which Dehn twist a token names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Curve {
    /// Meridian of handle `i`: bounds a disk crossing loop edge `a_i`.
    A,
    /// Longitude running once through handle `i`.
    B,
    /// Curve separating handles `i` and `i+1` from the others inside the
    /// handlebody; homologous to `m_i - m_{i+1}`.
    C,
}

/// A generator or its inverse; `index` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Token {
    pub curve: Curve,
    pub index: u32,
    pub inverse: bool,
}

impl Token {
    pub fn new(curve: Curve, index: u32, inverse: bool) -> Self {
        Token {
            curve,
            index,
            inverse,
        }
    }

    pub fn a(i: u32) -> Self {
        Token::new(Curve::A, i, false)
    }

    pub fn b(i: u32) -> Self {
        Token::new(Curve::B, i, false)
    }

    pub fn c(i: u32) -> Self {
        Token::new(Curve::C, i, false)
    }

    pub fn inv(self) -> Self {
        Token {
            inverse: !self.inverse,
            ..self
        }
    }

    pub fn sign(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn check(&self, genus: u32) -> Result<(), Error> {
        let limit = if self.curve == Curve::C {
            genus.saturating_sub(1)
        } else {
            genus
        };
        if self.index == 0 || self.index > limit {
            Err(Error::IndexOutOfRange {
                index: self.index,
                genus,
            })
        } else {
            Ok(())
        }
    }

    /// File-name friendly spelling, such as `b2inv`.
    pub fn slug(&self) -> String {
        let base = format!("{}{}", self.letter(), self.index);
        if self.inverse {
            base + "inv"
        } else {
            base
        }
    }

    fn letter(&self) -> char {
        match self.curve {
            Curve::A => 'a',
            Curve::B => 'b',
            Curve::C => 'c',
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter(), self.index)?;
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

impl FromStr for Token {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidToken(s.to_string());
        let (body, inverse) = match s.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (s.strip_suffix("^1").unwrap_or(s), false),
        };
        let mut chars = body.chars();
        let curve = match chars.next() {
            Some('a') => Curve::A,
            Some('b') => Curve::B,
            Some('c') => Curve::C,
            _ => return Err(bad()),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let index: u32 = digits.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(Token::new(curve, index, inverse))
    }
}

/// A mapping class as a product of twists. The word `t1 t2 ... tk` denotes
/// the composite `t1 ∘ t2 ∘ ... ∘ tk` and is represented by the matrix
/// product `ρ(t1) ρ(t2) ... ρ(tk)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MCGWord(pub Vec<Token>);

impl MCGWord {
    pub fn empty() -> Self {
        MCGWord(Vec::new())
    }

    pub fn tokens(&self) -> &[Token] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn check(&self, genus: u32) -> Result<(), Error> {
        self.0.iter().try_for_each(|t| t.check(genus))
    }

    /// Smallest genus on which every token makes sense.
    pub fn min_genus(&self) -> u32 {
        self.0
            .iter()
            .map(|t| if t.curve == Curve::C { t.index + 1 } else { t.index })
            .max()
            .unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        MCGWord(self.0.iter().rev().map(|t| t.inv()).collect())
    }

    pub fn concat(&self, other: &MCGWord) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        MCGWord(v)
    }

    /// `t^n` with `n` possibly negative.
    pub fn power(t: Token, n: i64) -> Self {
        let tok = if n < 0 { t.inv() } else { t };
        MCGWord(vec![tok; n.unsigned_abs() as usize])
    }

    /// Shifts every handle index by `offset`, moving the word onto handles
    /// `offset + 1, offset + 2, ...` of a larger surface.
    pub fn block_embed(&self, offset: u32) -> Self {
        MCGWord(
            self.0
                .iter()
                .map(|t| Token {
                    index: t.index + offset,
                    ..*t
                })
                .collect(),
        )
    }
}

impl fmt::Display for MCGWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for MCGWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        s.split_whitespace()
            .map(Token::from_str)
            .collect::<Result<Vec<_>, _>>()
            .map(MCGWord)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let w: MCGWord = "a1 b1^-1 c1".parse().unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.0[1], Token::b(1).inv());
        assert_eq!(w.to_string(), "a1 b1^-1 c1");
        assert_eq!(w.min_genus(), 2);
        assert!("a0".parse::<Token>().is_err());
        assert!("d1".parse::<Token>().is_err());
        assert!("a".parse::<Token>().is_err());
        assert!("a1^2".parse::<Token>().is_err());
        assert_eq!("".parse::<MCGWord>().unwrap(), MCGWord::empty());
    }

    #[test]
    fn range_checks() {
        let w: MCGWord = "a2 c1".parse().unwrap();
        assert!(w.check(2).is_ok());
        assert!(w.check(1).is_err());
        assert!(MCGWord(vec![Token::c(2)]).check(2).is_err());
    }

    #[test]
    fn inverse_and_embedding() {
        let w: MCGWord = "a1 b1^-1".parse().unwrap();
        assert_eq!(w.inverse().to_string(), "b1 a1^-1");
        assert_eq!(w.block_embed(2).to_string(), "a3 b3^-1");
        assert!(MCGWord::empty().block_embed(4).is_empty());
        assert_eq!(MCGWord::power(Token::a(1), -2).to_string(), "a1^-1 a1^-1");
        assert_eq!(Token::b(2).inv().slug(), "b2inv");
    }
}
