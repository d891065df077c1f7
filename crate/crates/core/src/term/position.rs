use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// One step into a term: `0` under a λ, `1` into the function, `2` into the argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    Body,
    Fun,
    Arg,
}

impl Dir {
    pub fn digit(self) -> char {
        match self {
            Dir::Body => '0',
            Dir::Fun => '1',
            Dir::Arg => '2',
        }
    }
}

/// A term position, a word over {0, 1, 2}. The empty word prints as `e`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position(Vec<Dir>);

impl Position {
    pub fn root() -> Position {
        Position(Vec::new())
    }

    pub fn from_dirs(dirs: Vec<Dir>) -> Position {
        Position(dirs)
    }

    pub fn dirs(&self) -> &[Dir] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, d: Dir) {
        self.0.push(d);
    }

    pub fn child(&self, d: Dir) -> Position {
        let mut p = self.clone();
        p.0.push(d);
        p
    }

    /// `self` followed by `n` copies of `d`.
    pub fn extend_n(&self, d: Dir, n: usize) -> Position {
        let mut p = self.clone();
        p.0.extend(std::iter::repeat_n(d, n));
        p
    }

    pub fn concat(&self, other: &Position) -> Position {
        let mut p = self.clone();
        p.0.extend_from_slice(&other.0);
        p
    }

    pub fn is_prefix_of(&self, other: &Position) -> bool {
        other.0.starts_with(&self.0)
    }

    /// The rest of `self` after `prefix`, if it is one.
    pub fn strip_prefix(&self, prefix: &Position) -> Option<Position> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|r| Position(r.to_vec()))
    }

    /// `Some(n)` when the position is `1^n`.
    pub fn ones(&self) -> Option<usize> {
        self.0.iter().all(|d| *d == Dir::Fun).then_some(self.0.len())
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        self.0.iter().try_for_each(|d| write!(f, "{}", d.digit()))
    }
}

impl FromStr for Position {
    type Err = Error;

    fn from_str(s: &str) -> Result<Position, Error> {
        let s = s.trim();
        if s == "e" || s == "ε" || s.is_empty() {
            return Ok(Position::root());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(Dir::Body),
                '1' => Ok(Dir::Fun),
                '2' => Ok(Dir::Arg),
                _ => Err(Error::BadPosition(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Position)
    }
}

impl Serialize for Position {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Position {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Position, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
