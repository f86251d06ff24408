//! Finite group presentations `< x_1, ..., x_m | r_1, ..., r_n >`.
//!
//! Relators are stored letter by letter with `±1` exponents; exponents in the
//! text form (`x^3`, `y^-2`) are expanded into runs when parsing. Generator
//! identity is the 1-based index, names are display metadata only.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exponent of a single letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn from_i64(value: i64) -> Option<Sign> {
        match value {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_i8(self.as_i8())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = i64::deserialize(deserializer)?;
        Sign::from_i64(value).ok_or_else(|| serde::de::Error::custom(format!("sign must be 1 or -1, got {value}")))
    }
}

/// 1-based index of a generator `x_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorId(usize);

impl GeneratorId {
    /// Panics if `index` is zero.
    pub fn new(index: usize) -> GeneratorId {
        assert!(index >= 1, "generator indices are 1-based");
        GeneratorId(index)
    }

    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "(usize, i8)", try_from = "(usize, i8)")]
pub struct Letter {
    pub gen: GeneratorId,
    pub sign: Sign,
}

impl Letter {
    pub fn new(gen: usize, sign: Sign) -> Letter {
        Letter {
            gen: GeneratorId::new(gen),
            sign,
        }
    }

    pub fn pos(gen: usize) -> Letter {
        Letter::new(gen, Sign::Pos)
    }

    pub fn neg(gen: usize) -> Letter {
        Letter::new(gen, Sign::Neg)
    }

    pub fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            sign: self.sign.flip(),
        }
    }
}

impl From<Letter> for (usize, i8) {
    fn from(letter: Letter) -> Self {
        (letter.gen.index(), letter.sign.as_i8())
    }
}

impl TryFrom<(usize, i8)> for Letter {
    type Error = String;

    fn try_from((gen, sign): (usize, i8)) -> Result<Self, Self::Error> {
        if gen == 0 {
            return Err("generator indices are 1-based".into());
        }
        let sign = Sign::from_i64(sign.into()).ok_or(format!("sign must be 1 or -1, got {sign}"))?;
        Ok(Letter::new(gen, sign))
    }
}

/// A relator word. May be empty, e.g. after trivial reduction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Relator {
    pub letters: Vec<Letter>,
}

impl Relator {
    pub fn new(letters: Vec<Letter>) -> Relator {
        Relator { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Removes adjacent `x x^-1` and `x^-1 x` pairs until none remain.
    /// The first and last letters are never cancelled against each other.
    pub fn trivially_reduced(&self) -> Relator {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &letter in &self.letters {
            match stack.last() {
                Some(&top) if top == letter.inverse() => {
                    stack.pop();
                }
                _ => stack.push(letter),
            }
        }
        Relator { letters: stack }
    }

    pub fn is_trivially_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inverse())
    }

    /// True if `other` is a cyclic rotation of `self`.
    pub fn is_rotation_of(&self, other: &Relator) -> bool {
        if self.len() != other.len() {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        let n = self.len();
        (0..n).any(|shift| (0..n).all(|i| self.letters[(i + shift) % n] == other.letters[i]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("undeclared generator `{name}` at byte {position}")]
    UndeclaredGenerator { name: String, position: usize },
    #[error("duplicate generator `{name}` at byte {position}")]
    DuplicateGenerator { name: String, position: usize },
    #[error("presentation needs at least one generator")]
    NoGenerators,
    #[error("relator {relator} uses generator {index}, but only {count} generators exist")]
    GeneratorOutOfRange { relator: usize, index: usize, count: usize },
    #[error("{given} generator names given for {count} generators")]
    NameCount { given: usize, count: usize },
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
}

/// A finite presentation. Generators are `1..=generator_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generator_count: usize,
    relators: Vec<Relator>,
    generator_names: Option<Vec<String>>,
}

impl Presentation {
    pub fn new(generator_count: usize, relators: Vec<Relator>) -> Result<Presentation, PresentationError> {
        if generator_count == 0 {
            return Err(PresentationError::NoGenerators);
        }
        for (j, relator) in relators.iter().enumerate() {
            for letter in &relator.letters {
                if letter.gen.index() > generator_count {
                    return Err(PresentationError::GeneratorOutOfRange {
                        relator: j + 1,
                        index: letter.gen.index(),
                        count: generator_count,
                    });
                }
            }
        }
        Ok(Presentation {
            generator_count,
            relators,
            generator_names: None,
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Presentation, PresentationError> {
        if names.len() != self.generator_count {
            return Err(PresentationError::NameCount {
                given: names.len(),
                count: self.generator_count,
            });
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !is_valid_name(name) {
                return Err(PresentationError::InvalidName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(PresentationError::DuplicateGenerator {
                    name: name.clone(),
                    position: 0,
                });
            }
        }
        self.generator_names = Some(names);
        Ok(self)
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Relator] {
        &self.relators
    }

    pub fn generator_names(&self) -> Option<&[String]> {
        self.generator_names.as_deref()
    }

    /// Display name of generator `index` (1-based); `x<index>` when unnamed.
    pub fn generator_name(&self, index: usize) -> String {
        match &self.generator_names {
            Some(names) => names[index - 1].clone(),
            None => format!("x{index}"),
        }
    }

    fn display_names(&self) -> Vec<String> {
        (1..=self.generator_count).map(|i| self.generator_name(i)).collect()
    }

    /// `k_i` for each generator, counting both signs across all relators.
    pub fn occurrence_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.generator_count];
        for relator in &self.relators {
            for letter in &relator.letters {
                counts[letter.gen.index() - 1] += 1;
            }
        }
        counts
    }

    /// Total letter count `d`.
    pub fn degree(&self) -> usize {
        self.relators.iter().map(Relator::len).sum()
    }

    pub fn trivially_reduce(&self) -> Presentation {
        Presentation {
            generator_count: self.generator_count,
            relators: self.relators.iter().map(Relator::trivially_reduced).collect(),
            generator_names: self.generator_names.clone(),
        }
    }

    pub fn is_trivially_reduced(&self) -> bool {
        self.relators.iter().all(Relator::is_trivially_reduced)
    }

    /// Problems preventing this presentation from being encoded as a
    /// permutation data set. Empty when encoding is possible.
    pub fn validate_for_encoding(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        for (i, &k) in self.occurrence_counts().iter().enumerate() {
            if k == 0 {
                out.push(Diagnostic::UnusedGenerator {
                    index: i + 1,
                    name: self.generator_name(i + 1),
                });
            }
        }
        for (j, relator) in self.relators.iter().enumerate() {
            if relator.is_empty() {
                out.push(Diagnostic::EmptyRelator { index: j + 1 });
            }
        }
        out
    }

    /// Text form accepted by [`parse_presentation`]. Empty relators render as `1`.
    pub fn render(&self) -> String {
        let names = self.display_names();
        let mut out = String::from("< ");
        out.push_str(&names.join(", "));
        out.push_str(" |");
        for (j, relator) in self.relators.iter().enumerate() {
            out.push_str(if j == 0 { " " } else { ", " });
            if relator.is_empty() {
                out.push('1');
                continue;
            }
            for (pos, letter) in relator.letters.iter().enumerate() {
                if pos > 0 {
                    out.push(' ');
                }
                out.push_str(&names[letter.gen.index() - 1]);
                if letter.sign == Sign::Neg {
                    out.push_str("^-1");
                }
            }
        }
        out.push_str(" >");
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("presentation serializes")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    generators: Vec<String>,
    relators: Vec<Relator>,
}

impl Serialize for Presentation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PresentationJson {
            generators: self.display_names(),
            relators: self.relators.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = PresentationJson::deserialize(deserializer)?;
        Presentation::new(raw.generators.len(), raw.relators)
            .and_then(|p| p.with_names(raw.generators))
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    UnusedGenerator { index: usize, name: String },
    EmptyRelator { index: usize },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::UnusedGenerator { index, name } => {
                write!(f, "generator {name} unused (k_{index} = 0)")
            }
            Diagnostic::EmptyRelator { index } => write!(f, "empty relator {index}"),
        }
    }
}

fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses `< x, y | x y x^-1 y^-1 >`. No reduction is applied.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    Parser::new(text).presentation()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, PresentationError> {
        Err(PresentationError::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<(), PresentationError> {
        match self.peek() {
            Some(found) if found == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(found) => self.error(format!("expected `{c}`, found `{found}`")),
            None => self.error(format!("expected `{c}`, found end of input")),
        }
    }

    fn name(&mut self) -> Result<(usize, &'a str), PresentationError> {
        self.skip_ws();
        let start = self.pos;
        let rest = self.rest();
        match rest.chars().next() {
            Some(c) if c.is_ascii_alphabetic() => {}
            Some(c) => return self.error(format!("expected a generator name, found `{c}`")),
            None => return self.error("expected a generator name, found end of input"),
        }
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        self.pos += len;
        Ok((start, &rest[..len]))
    }

    fn exponent(&mut self) -> Result<i64, PresentationError> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        let negative = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let rest = self.rest();
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            return self.error("expected digits after `^`");
        }
        let value: i64 = match rest[..len].parse() {
            Ok(v) => v,
            Err(_) => return self.error("exponent out of range"),
        };
        self.pos += len;
        Ok(if negative { -value } else { value })
    }

    fn presentation(&mut self) -> Result<Presentation, PresentationError> {
        self.expect('<')?;
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<&'a str, usize> = HashMap::new();
        loop {
            let (at, name) = self.name()?;
            if index.insert(name, names.len() + 1).is_some() {
                return Err(PresentationError::DuplicateGenerator {
                    name: name.to_string(),
                    position: at,
                });
            }
            names.push(name.to_string());
            match self.peek() {
                Some(',') => self.pos += 1,
                _ => break,
            }
        }
        self.expect('|')?;

        let mut relators = Vec::new();
        if self.peek() != Some('>') {
            loop {
                relators.push(self.relator(&index)?);
                match self.peek() {
                    Some(',') => self.pos += 1,
                    _ => break,
                }
            }
        }
        self.expect('>')?;
        if self.peek().is_some() {
            return self.error("unexpected trailing input");
        }
        let count = names.len();
        Presentation::new(count, relators)?.with_names(names)
    }

    fn relator(&mut self, index: &HashMap<&'a str, usize>) -> Result<Relator, PresentationError> {
        if self.peek() == Some('1') {
            self.pos += 1;
            return Ok(Relator::default());
        }
        let mut letters = Vec::new();
        loop {
            let (at, name) = self.name()?;
            let gen = *index.get(name).ok_or_else(|| PresentationError::UndeclaredGenerator {
                name: name.to_string(),
                position: at,
            })?;
            let exp = self.exponent()?;
            let sign = if exp < 0 { Sign::Neg } else { Sign::Pos };
            letters.extend(std::iter::repeat_n(Letter::new(gen, sign), exp.unsigned_abs() as usize));
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() => continue,
                _ => break,
            }
        }
        Ok(Relator::new(letters))
    }
}
