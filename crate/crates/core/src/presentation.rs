//! Finitely presented groups: words over signed generator indices, presentations,
//! and the line-oriented text format used for input files and reports.
//!
//! A letter is a nonzero `i32`: `+g` is generator `g` (1-based) and `-g` its inverse.
//!
//! ```text
//! # binary icosahedral group
//! gens: s t
//! rel: s^3 t^-1 s^-1 t^-1 s^-1
//! rel: t^4 s^-1 t^-1 s^-1
//! ```

use std::collections::HashSet;
use std::fmt;
use std::ops::Mul;

use thiserror::Error;

/// Default cap on the total number of letters produced while expanding exponents.
pub const DEFAULT_LETTER_BUDGET: usize = 10_000_000;

/// A freely reduced word in the generators and their inverses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// A single-letter word.
    pub fn letter(letter: i32) -> Self {
        assert!(letter != 0, "letter 0 is not a generator");
        Word(vec![letter])
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduced(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for x in letters {
            debug_assert!(x != 0);
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&x| -x).collect())
    }

    /// Sum of the exponents of generator `g` (1-based).
    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.0
            .iter()
            .map(|&x| match x.unsigned_abs() as usize == g {
                true => x.signum() as i64,
                false => 0,
            })
            .sum()
    }

    /// Largest generator index referenced, or 0 for the identity.
    pub fn max_generator(&self) -> usize {
        self.0
            .iter()
            .map(|x| x.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn into_letters(self) -> Vec<i32> {
        self.0
    }
}

impl Mul<&Word> for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        Word::reduced(self.0.iter().chain(rhs.0.iter()).copied())
    }
}

impl From<Word> for Vec<i32> {
    fn from(w: Word) -> Vec<i32> {
        w.0
    }
}

/// Returns the unique freely reduced form of `letters`.
pub fn free_reduce(letters: &[i32]) -> Word {
    Word::reduced(letters.iter().copied())
}

/// Strips mutually inverse first/last letter pairs, yielding a conjugate of `w`.
pub fn cyclically_reduce(w: &Word) -> Word {
    let s = w.letters();
    let (mut lo, mut hi) = (0, s.len());
    while hi - lo >= 2 && s[lo] == -s[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    Word(s[lo..hi].to_vec())
}

/// `u v u^-1 v^-1`, freely reduced.
pub fn commutator(u: &Word, v: &Word) -> Word {
    let letters = u
        .letters()
        .iter()
        .chain(v.letters())
        .copied()
        .chain(u.letters().iter().rev().map(|&x| -x))
        .chain(v.letters().iter().rev().map(|&x| -x));
    Word::reduced(letters)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("generator name `{0}` is not an ASCII identifier")]
    InvalidName(String),
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("relator {relator} refers to generator {index}, but only {count} are declared")]
    GeneratorOutOfRange {
        relator: usize,
        index: usize,
        count: usize,
    },
}

/// Generators and relators of a finitely presented group.
///
/// Relators are always freely and cyclically reduced and nonempty; relators that
/// reduce to the identity are dropped on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Presentation {
    pub fn new(
        generator_names: Vec<String>,
        relators: impl IntoIterator<Item = Word>,
    ) -> Result<Self, PresentationError> {
        let mut seen = HashSet::with_capacity(generator_names.len());
        for name in &generator_names {
            if !is_identifier(name) {
                return Err(PresentationError::InvalidName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(PresentationError::DuplicateGenerator(name.clone()));
            }
        }
        let count = generator_names.len();
        let mut kept = Vec::new();
        for (i, r) in relators.into_iter().enumerate() {
            let index = r.max_generator();
            if index > count {
                return Err(PresentationError::GeneratorOutOfRange {
                    relator: i,
                    index,
                    count,
                });
            }
            let r = cyclically_reduce(&r);
            if !r.is_empty() {
                kept.push(r);
            }
        }
        Ok(Presentation {
            generator_names,
            relators: kept,
        })
    }

    /// Presentation with generators named `x1, x2, ...`.
    pub fn with_numbered_generators(
        count: usize,
        relators: impl IntoIterator<Item = Word>,
    ) -> Self {
        let names = (1..=count).map(|i| format!("x{i}")).collect();
        Self::new(names, relators).expect("numbered generator names are valid")
    }

    /// The free group on `count` generators.
    pub fn free(count: usize) -> Self {
        Self::with_numbered_generators(count, [])
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn generator_count(&self) -> usize {
        self.generator_names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Total number of letters over all relators.
    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    /// Renders a word using this presentation's generator names.
    pub fn format_word(&self, w: &Word) -> String {
        let mut terms = Vec::new();
        let s = w.letters();
        let mut i = 0;
        while i < s.len() {
            let x = s[i];
            let mut j = i + 1;
            while j < s.len() && s[j] == x {
                j += 1;
            }
            let name = &self.generator_names[x.unsigned_abs() as usize - 1];
            let exp = (j - i) as i64 * x.signum() as i64;
            terms.push(match exp {
                1 => name.clone(),
                e => format!("{name}^{e}"),
            });
            i = j;
        }
        terms.join(" ")
    }

    /// Text form in the presentation file format.
    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens:")?;
        for name in &self.generator_names {
            write!(f, " {name}")?;
        }
        writeln!(f)?;
        for r in &self.relators {
            writeln!(f, "rel: {}", self.format_word(r))?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: unknown generator `{name}`")]
    UnknownGenerator { line: usize, name: String },
    #[error("line {line}: malformed exponent in `{token}`")]
    MalformedExponent { line: usize, token: String },
    #[error("line {line}: exponent in `{token}` exceeds 2^31-1 in magnitude")]
    ExponentOutOfRange { line: usize, token: String },
    #[error("line {line}: generator `{name}` declared twice")]
    DuplicateGenerator { line: usize, name: String },
    #[error("line {line}: `{name}` is not a valid generator name")]
    InvalidName { line: usize, name: String },
    #[error("line {line}: expected a single `gens:` line before any relator")]
    MisplacedGens { line: usize },
    #[error("missing `gens:` line")]
    MissingGens,
    #[error("line {line}: expected `gens:` or `rel:`")]
    UnrecognizedLine { line: usize },
    #[error("line {line}: expanding exponents exceeds the letter budget of {budget}")]
    LetterBudgetExceeded { line: usize, budget: usize },
}

impl ParseError {
    /// 1-based line number of the offending input, when there is one.
    pub fn line(&self) -> Option<usize> {
        use ParseError::*;
        match self {
            UnknownGenerator { line, .. }
            | MalformedExponent { line, .. }
            | ExponentOutOfRange { line, .. }
            | DuplicateGenerator { line, .. }
            | InvalidName { line, .. }
            | MisplacedGens { line }
            | UnrecognizedLine { line }
            | LetterBudgetExceeded { line, .. } => Some(*line),
            MissingGens => None,
        }
    }
}

/// A parsed presentation plus the lines whose relators reduced to the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedPresentation {
    pub presentation: Presentation,
    pub empty_relator_lines: Vec<usize>,
}

impl ParsedPresentation {
    pub fn has_warnings(&self) -> bool {
        !self.empty_relator_lines.is_empty()
    }
}

pub fn parse_presentation(text: &str) -> Result<ParsedPresentation, ParseError> {
    parse_presentation_with_budget(text, DEFAULT_LETTER_BUDGET)
}

pub fn parse_presentation_with_budget(
    text: &str,
    letter_budget: usize,
) -> Result<ParsedPresentation, ParseError> {
    let mut names: Option<Vec<String>> = None;
    let mut relators = Vec::new();
    let mut empty_relator_lines = Vec::new();
    let mut letters_used = 0usize;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("gens:") {
            if names.is_some() {
                return Err(ParseError::MisplacedGens { line });
            }
            let mut declared: Vec<String> = Vec::new();
            for name in rest.split_whitespace() {
                if !is_identifier(name) {
                    return Err(ParseError::InvalidName {
                        line,
                        name: name.to_string(),
                    });
                }
                if declared.iter().any(|d| d == name) {
                    return Err(ParseError::DuplicateGenerator {
                        line,
                        name: name.to_string(),
                    });
                }
                declared.push(name.to_string());
            }
            names = Some(declared);
        } else if let Some(rest) = content.strip_prefix("rel:") {
            let declared = names.as_ref().ok_or(ParseError::MisplacedGens { line })?;
            let mut letters = Vec::new();
            for token in rest.split_whitespace() {
                let (name, exp) = parse_term(token, line)?;
                let g = declared.iter().position(|d| d == name).ok_or_else(|| {
                    ParseError::UnknownGenerator {
                        line,
                        name: name.to_string(),
                    }
                })? as i32
                    + 1;
                let count = exp.unsigned_abs() as usize;
                letters_used = letters_used.saturating_add(count);
                if letters_used > letter_budget {
                    return Err(ParseError::LetterBudgetExceeded {
                        line,
                        budget: letter_budget,
                    });
                }
                let letter = if exp < 0 { -g } else { g };
                letters.extend(std::iter::repeat_n(letter, count));
            }
            let r = cyclically_reduce(&free_reduce(&letters));
            if r.is_empty() {
                empty_relator_lines.push(line);
            } else {
                relators.push(r);
            }
        } else {
            return Err(ParseError::UnrecognizedLine { line });
        }
    }

    let names = names.ok_or(ParseError::MissingGens)?;
    let presentation = Presentation {
        generator_names: names,
        relators,
    };
    Ok(ParsedPresentation {
        presentation,
        empty_relator_lines,
    })
}

fn parse_term(token: &str, line: usize) -> Result<(&str, i64), ParseError> {
    let (name, exp) = match token.split_once('^') {
        None => (token, 1),
        Some((name, exp)) => {
            let value: i64 = exp.parse().map_err(|_| ParseError::MalformedExponent {
                line,
                token: token.to_string(),
            })?;
            if value.unsigned_abs() > i32::MAX as u64 {
                return Err(ParseError::ExponentOutOfRange {
                    line,
                    token: token.to_string(),
                });
            }
            (name, value)
        }
    };
    if !is_identifier(name) {
        return Err(ParseError::InvalidName {
            line,
            name: name.to_string(),
        });
    }
    Ok((name, exp))
}
