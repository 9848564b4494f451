//! Anick chains.
//!
//! C₋₁ = {1}, C₀ = the generators, C₁ = the obstructions. An (n+1)-chain is
//! an n-chain `g` followed by a nonempty tail `t` such that, with `v` the
//! last segment of `g` (its tail, or the generator for n = 0), the word
//! `v·t` contains exactly one obstruction occurrence and that occurrence is
//! a suffix. This is the earliest-overlap condition and makes the
//! factorisation into overlapping obstructions unique.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::freealg::{Alphabet, Word};
use crate::groebner::GroebnerBasis;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("obstruction {0} has length 1; drop the generator from the presentation instead")]
    LinearObstruction(String),
    #[error("obstructions are not an antichain: {0} contains {1}")]
    NotAntichain(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub word: Word,
    pub level: i32,
    /// Last segment; `word = parent.word · tail`.
    pub tail: Word,
    /// Index of the (level−1)-chain this one extends.
    pub parent: Option<usize>,
    /// Start position of the obstruction closing each segment, levels 1..=n.
    pub obstruction_starts: Vec<usize>,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// The word with the tail removed.
    pub fn head(&self) -> Word {
        self.word.prefix(self.word.len() - self.tail.len())
    }
}

#[derive(Debug, Clone)]
pub struct ChainSet {
    pub level: i32,
    pub chains: Vec<Chain>,
    pub degree_histogram: BTreeMap<usize, usize>,
    index: HashMap<Word, usize>,
}

impl ChainSet {
    fn new(level: i32, mut chains: Vec<Chain>) -> Self {
        chains.sort_by(|a, b| a.word.cmp(&b.word));
        let mut degree_histogram = BTreeMap::new();
        for c in &chains {
            *degree_histogram.entry(c.word.len()).or_insert(0) += 1;
        }
        let index = chains.iter().enumerate().map(|(i, c)| (c.word.clone(), i)).collect();
        ChainSet { level, chains, degree_histogram, index }
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn get(&self, i: usize) -> &Chain {
        &self.chains[i]
    }

    /// Longest prefix of `w` that is a chain at this level.
    pub fn longest_prefix(&self, w: &Word) -> Option<usize> {
        (0..=w.len()).rev().find_map(|k| self.index.get(&w.prefix(k)).copied())
    }
}

/// Min length, max length and every length present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRange {
    pub min_length: usize,
    pub max_length: usize,
    pub lengths_present: Vec<usize>,
}

pub fn degree_range(cs: &ChainSet) -> Option<DegreeRange> {
    let lengths: Vec<usize> = cs.degree_histogram.keys().copied().collect();
    Some(DegreeRange { min_length: *lengths.first()?, max_length: *lengths.last()?, lengths_present: lengths })
}

/// Chains of every level from −1 to `max_level`.
#[derive(Debug, Clone)]
pub struct Chains {
    obstructions: Vec<Word>,
    levels: Vec<ChainSet>,
}

impl Chains {
    pub fn max_level(&self) -> i32 {
        self.levels.len() as i32 - 2
    }

    pub fn level(&self, n: i32) -> &ChainSet {
        &self.levels[(n + 1) as usize]
    }

    pub fn levels(&self) -> impl Iterator<Item = &ChainSet> {
        self.levels.iter()
    }

    pub fn obstructions(&self) -> &[Word] {
        &self.obstructions
    }

    pub fn counts(&self) -> Vec<(i32, usize)> {
        self.levels.iter().map(|cs| (cs.level, cs.len())).collect()
    }
}

fn count_occurrences(w: &Word, obstructions: &[Word]) -> (usize, bool) {
    let mut count = 0;
    let mut suffix = false;
    for o in obstructions {
        for p in 0..w.len() {
            if w.occurs_at(o, p) {
                count += 1;
                if p + o.len() == w.len() {
                    suffix = true;
                }
            }
        }
    }
    (count, suffix)
}

/// Enumerates chains for an antichain of obstructions over `alphabet_len` letters.
pub fn enumerate_from_obstructions(
    alphabet_len: usize,
    obstructions: &[Word],
    max_level: i32,
) -> Result<Chains, ChainError> {
    for (i, o) in obstructions.iter().enumerate() {
        if o.len() < 2 {
            return Err(ChainError::LinearObstruction(o.to_string()));
        }
        for (j, p) in obstructions.iter().enumerate() {
            if i != j && o.contains(p) {
                return Err(ChainError::NotAntichain(o.to_string(), p.to_string()));
            }
        }
    }
    let mut tails: Vec<Word> = obstructions.iter().flat_map(|o| (1..o.len()).map(move |k| o.suffix_from(k))).collect();
    tails.sort();
    tails.dedup();

    let mut levels = vec![ChainSet::new(
        -1,
        vec![Chain { word: Word::empty(), level: -1, tail: Word::empty(), parent: None, obstruction_starts: vec![] }],
    )];
    if max_level >= 0 {
        let gens = (0..alphabet_len as u8)
            .map(|l| Chain {
                word: Word::letter(l),
                level: 0,
                tail: Word::letter(l),
                parent: Some(0),
                obstruction_starts: vec![],
            })
            .collect();
        levels.push(ChainSet::new(0, gens));
    }
    for level in 1..=max_level {
        let prev = levels.last().unwrap();
        let mut next = Vec::new();
        for (pi, g) in prev.chains.iter().enumerate() {
            for t in &tails {
                let vt = g.tail.concat(t);
                let (count, suffix) = count_occurrences(&vt, obstructions);
                if count == 1 && suffix {
                    let word = g.word.concat(t);
                    let closing = obstructions.iter().find(|o| vt.ends_with(o)).unwrap();
                    let mut starts = g.obstruction_starts.clone();
                    starts.push(word.len() - closing.len());
                    next.push(Chain { word, level, tail: t.clone(), parent: Some(pi), obstruction_starts: starts });
                }
            }
        }
        levels.push(ChainSet::new(level, next));
    }
    Ok(Chains { obstructions: obstructions.to_vec(), levels })
}

pub fn enumerate_chains(gb: &GroebnerBasis, max_level: i32) -> Result<Chains, ChainError> {
    enumerate_from_obstructions(gb.alphabet().len(), &gb.obstructions(), max_level)
}

/// |Cₙ| for n = −1..=max_level.
pub fn chain_counts(gb: &GroebnerBasis, max_level: i32) -> Result<Vec<(i32, usize)>, ChainError> {
    Ok(enumerate_chains(gb, max_level)?.counts())
}

/// Chain generating function versus normal-word series: for the monomial
/// algebra on the obstructions, `H(t) · Σₙ (−1)ⁿ⁺¹ Σ_{c∈Cₙ} t^|c| = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerCheck {
    pub length_cap: usize,
    pub normal_words: Vec<i64>,
    pub chain_series: Vec<i64>,
    pub product: Vec<i64>,
    pub holds: bool,
}

pub fn euler_check(alphabet_len: usize, obstructions: &[Word], length_cap: usize) -> Result<EulerCheck, ChainError> {
    let chains = enumerate_from_obstructions(alphabet_len, obstructions, length_cap as i32 - 1)?;
    let mut chain_series = vec![0i64; length_cap + 1];
    for cs in chains.levels() {
        let sign = if (cs.level + 1) % 2 == 0 { 1 } else { -1 };
        for c in &cs.chains {
            if c.len() <= length_cap {
                chain_series[c.len()] += sign;
            }
        }
    }
    let mut normal = vec![0i64; length_cap + 1];
    for w in crate::freealg::normal_words(obstructions, alphabet_len, length_cap) {
        normal[w.len()] += 1;
    }
    let product: Vec<i64> =
        (0..=length_cap).map(|k| (0..=k).map(|i| normal[i] * chain_series[k - i]).sum()).collect();
    let holds = product.iter().enumerate().all(|(k, &v)| v == i64::from(k == 0));
    Ok(EulerCheck { length_cap, normal_words: normal, chain_series, product, holds })
}

/// Serializable listing of one level.
#[derive(Debug, Clone, Serialize)]
pub struct ChainListing {
    pub level: i32,
    pub count: usize,
    pub chains: Vec<ChainEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainEntry {
    pub word: String,
    pub length: usize,
    pub tail: String,
    pub decomposition: Vec<usize>,
}

pub fn listing(cs: &ChainSet, alphabet: &Alphabet) -> ChainListing {
    ChainListing {
        level: cs.level,
        count: cs.len(),
        chains: cs
            .chains
            .iter()
            .map(|c| ChainEntry {
                word: alphabet.fmt_compact(&c.word),
                length: c.len(),
                tail: alphabet.fmt_compact(&c.tail),
                decomposition: c.obstruction_starts.clone(),
            })
            .collect(),
    }
}
