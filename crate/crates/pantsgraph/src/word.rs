//! Mapping-class words.
//!
//! Grammar: whitespace-separated tokens; a token is a generator name (`t1` ..
//! `t{2g+1}` on a closed surface, `L` or `R` on the punctured torus),
//! optionally followed by `^` and a nonzero decimal exponent. The rightmost
//! token acts first.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::surface::{Model, SurfaceSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Twist(u32),
    L,
    R,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Twist(j) => write!(f, "t{j}"),
            Generator::L => write!(f, "L"),
            Generator::R => write!(f, "R"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MappingClassWord {
    pub surface: SurfaceSpec,
    pub letters: Vec<(Generator, i64)>,
}

impl MappingClassWord {
    pub fn identity(surface: SurfaceSpec) -> Self {
        MappingClassWord { surface, letters: Vec::new() }
    }

    pub fn new(surface: SurfaceSpec, letters: Vec<(Generator, i64)>) -> Result<Self> {
        for &(g, e) in &letters {
            if e == 0 {
                return Err(Error::MalformedWord(format!("zero exponent on {g}")));
            }
            let ok = match (surface.model, g) {
                (Model::Closed { genus }, Generator::Twist(j)) => j >= 1 && j <= 2 * genus + 1,
                (Model::PuncturedTorus, Generator::L | Generator::R) => true,
                _ => false,
            };
            if !ok {
                return Err(Error::MalformedWord(format!("generator {g} is not valid on {surface}")));
            }
        }
        Ok(MappingClassWord { surface, letters })
    }

    pub fn parse(surface: SurfaceSpec, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e
                        .parse()
                        .map_err(|_| Error::MalformedWord(format!("bad exponent in {tok:?}")))?;
                    (n, e)
                }
                None => (tok, 1),
            };
            let g = match name {
                "L" => Generator::L,
                "R" => Generator::R,
                _ => {
                    let idx = name
                        .strip_prefix('t')
                        .and_then(|d| d.parse::<u32>().ok())
                        .filter(|_| name[1..].chars().all(|c| c.is_ascii_digit()))
                        .ok_or_else(|| Error::MalformedWord(format!("unknown generator {name:?}")))?;
                    Generator::Twist(idx)
                }
            };
            letters.push((g, exp));
        }
        MappingClassWord::new(surface, letters)
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letters with exponents expanded to +-1, adjacent inverse pairs
    /// cancelled.
    pub fn expanded(&self) -> Vec<(Generator, i64)> {
        let mut out: Vec<(Generator, i64)> = Vec::new();
        for &(g, e) in &self.letters {
            let s = e.signum();
            for _ in 0..e.unsigned_abs() {
                if out.last() == Some(&(g, -s)) {
                    out.pop();
                } else {
                    out.push((g, s));
                }
            }
        }
        out
    }

    /// Merges adjacent letters on the same generator and drops zero exponents.
    pub fn normalized(&self) -> Self {
        let mut out: Vec<(Generator, i64)> = Vec::new();
        for &(g, e) in &self.letters {
            match out.last_mut() {
                Some((h, f)) if *h == g => {
                    *f += e;
                    if *f == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        MappingClassWord { surface: self.surface, letters: out }
    }

    pub fn inverse(&self) -> Self {
        let letters = self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect();
        MappingClassWord { surface: self.surface, letters }
    }

    /// `self · other`: `other` acts first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.surface.same_as(&other.surface)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(MappingClassWord { surface: self.surface, letters })
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n >= 0 { self.clone() } else { self.inverse() };
        let mut letters = Vec::with_capacity(base.letters.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        MappingClassWord { surface: self.surface, letters }
    }

    /// If the expanded letters of `self` are those of `base` repeated `n >= 2`
    /// times, returns `n`.
    pub fn power_of(&self, base: &Self) -> Option<u32> {
        if self.surface != base.surface {
            return None;
        }
        let a = self.expanded();
        let b = base.expanded();
        if b.is_empty() || a.len() % b.len() != 0 || a.len() == b.len() {
            return None;
        }
        a.chunks(b.len()).all(|c| c == b.as_slice()).then(|| (a.len() / b.len()) as u32)
    }
}

impl fmt::Display for MappingClassWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (g, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for MappingClassWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
