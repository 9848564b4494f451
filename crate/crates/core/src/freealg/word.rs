use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Generators in precedence order: index 0 is the smallest letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    /// `names` are listed smallest first, so `["e1", "e2"]` gives `e1 < e2`.
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            assert!(!names[..i].contains(n), "duplicate generator name {n}");
        }
        assert!(names.len() <= u8::MAX as usize, "too many generators");
        Alphabet { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, letter: u8) -> &str {
        &self.names[letter as usize]
    }

    pub fn letter(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|n| n == name).map(|i| i as u8)
    }

    pub fn letters(&self) -> impl Iterator<Item = u8> {
        0..self.names.len() as u8
    }

    pub fn fmt_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters().iter().map(|&l| self.name(l)).collect::<Vec<_>>().join("*")
    }

    /// Juxtaposed form, `e1e2e1`, for tables and labels.
    pub fn fmt_compact(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters().iter().map(|&l| self.name(l)).collect()
    }
}

/// A monomial of the free algebra. Letters are precedence ranks, so the
/// derived order on `Word` is DEGLEX: length first, then left-to-right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn letter(l: u8) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn concat3(left: &[u8], mid: &[u8], right: &[u8]) -> Word {
        let mut v = Vec::with_capacity(left.len() + mid.len() + right.len());
        v.extend_from_slice(left);
        v.extend_from_slice(mid);
        v.extend_from_slice(right);
        Word(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn prefix(&self, n: usize) -> Word {
        self.slice(0, n)
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        self.slice(start, self.len())
    }

    /// Leftmost position where `pattern` occurs as a subword.
    pub fn find(&self, pattern: &Word) -> Option<usize> {
        if pattern.len() > self.len() {
            return None;
        }
        (0..=self.len() - pattern.len()).find(|&i| self.0[i..].starts_with(&pattern.0))
    }

    pub fn contains(&self, pattern: &Word) -> bool {
        self.find(pattern).is_some()
    }

    pub fn occurs_at(&self, pattern: &Word, pos: usize) -> bool {
        pos + pattern.len() <= self.len() && self.0[pos..].starts_with(&pattern.0)
    }

    pub fn ends_with(&self, pattern: &Word) -> bool {
        self.0.ends_with(&pattern.0)
    }

    pub fn starts_with(&self, pattern: &Word) -> bool {
        self.0.starts_with(&pattern.0)
    }

    pub fn map_letters(&self, f: impl Fn(u8) -> u8) -> Word {
        Word(self.0.iter().map(|&l| f(l)).collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|l| format!("x{l}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// DEGLEX comparison of two words over `alphabet`.
pub fn compare_deglex(u: &Word, v: &Word, alphabet: &Alphabet) -> Ordering {
    debug_assert!(u.letters().iter().chain(v.letters()).all(|&l| (l as usize) < alphabet.len()));
    u.cmp(v)
}
