#![allow(dead_code)]

use std::collections::BTreeSet;

use anick::freealg::{Poly, Presentation, Word};
use anick::groebner::{complete, GroebnerBasis};
use anick::resolution::{ModuleElement, Resolution};
use anick::tlmap::{preset, PresetId};

pub fn tl3() -> Presentation {
    preset(PresetId::Tl(3)).unwrap()
}

pub fn tl3_gb() -> GroebnerBasis {
    complete(&tl3(), 6).unwrap()
}

/// "e1e2e1" -> word over e1 < e2.
pub fn w(s: &str) -> Word {
    let mut letters = Vec::new();
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        assert_eq!(b[i], b'e', "bad word {s}");
        letters.push(b[i + 1] - b'1');
        i += 2;
    }
    Word::new(letters)
}

/// Terms of `c chain ⊗ word` separated by ` + ` / ` - `; coefficient text is
/// `tau` or empty.
pub fn parse_terms(text: &str) -> BTreeSet<(String, String, String)> {
    let text = text.trim();
    if text == "0" {
        return BTreeSet::new();
    }
    text.replace(" - ", " + -")
        .split(" + ")
        .map(|tok| {
            let (neg, body) = match tok.trim().strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, tok.trim()),
            };
            let (coef, rest) = match body.strip_prefix("tau*") {
                Some(r) => ("tau", r),
                None => ("1", body),
            };
            let (chain, word) = rest.split_once(" ⊗ ").unwrap_or((rest, "1"));
            let c = if neg { format!("-{coef}") } else { coef.to_string() };
            (chain.trim().to_string(), word.trim().to_string(), c)
        })
        .collect()
}

/// Builds a module element of level `level` from `parse_terms` text.
pub fn element(res: &Resolution, level: i32, text: &str) -> ModuleElement {
    let field = res.field().clone();
    let tau = field.generator().unwrap();
    let mut e = ModuleElement::zero(&field, level);
    for (chain, word, c) in parse_terms(text) {
        let idx = res.chains().level(level).index_of(&w(&chain)).unwrap_or_else(|| panic!("no chain {chain}"));
        let word = if word == "1" { Word::empty() } else { w(&word) };
        let mut coef = if c.trim_start_matches('-') == "tau" { tau.clone() } else { field.one() };
        if c.starts_with('-') {
            coef = -coef;
        }
        e.add_term(idx, word, &coef);
    }
    e
}

/// Chain levels of every word up to `max_len`, by testing each word against
/// the factorization definition: w = x t1 … tn where each (previous piece)·t
/// contains exactly one obstruction, as a suffix reaching into the previous piece.
pub fn brute_force_chains(alphabet_len: u8, obstructions: &[Vec<u8>], max_len: usize, max_level: usize) -> Vec<Vec<Vec<u8>>> {
    let mut levels = vec![Vec::new(); max_level + 1];
    let mut words: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &words {
            for l in 0..alphabet_len {
                let mut x = w.clone();
                x.push(l);
                for n in chain_levels(&x, obstructions) {
                    if n <= max_level {
                        levels[n].push(x.clone());
                    }
                }
                next.push(x);
            }
        }
        words = next;
    }
    for l in &mut levels {
        l.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        l.dedup();
    }
    levels
}

fn occurrences(w: &[u8], obstructions: &[Vec<u8>]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for o in obstructions {
        if o.len() <= w.len() {
            for s in 0..=w.len() - o.len() {
                if &w[s..s + o.len()] == o.as_slice() {
                    out.push((s, s + o.len()));
                }
            }
        }
    }
    out
}

fn chain_levels(w: &[u8], obstructions: &[Vec<u8>]) -> BTreeSet<usize> {
    let mut found = BTreeSet::new();
    // (start of last piece, end of last piece, level)
    let mut stack = vec![(0usize, 1usize, 0usize)];
    while let Some((a, b, k)) = stack.pop() {
        if b == w.len() {
            found.insert(k);
            continue;
        }
        for c in b + 1..=w.len() {
            let occ = occurrences(&w[a..c], obstructions);
            // the single occurrence ends the word and starts inside the previous piece
            if occ.len() == 1 && occ[0].1 == c - a && occ[0].0 < b - a {
                stack.push((b, c, k + 1));
            }
        }
    }
    found
}

/// Every normal form reachable by arbitrary rewriting from `start`.
pub fn all_normal_forms(gb: &GroebnerBasis, start: &Poly) -> BTreeSet<String> {
    let rules: Vec<(Word, Poly)> = gb
        .elements()
        .iter()
        .map(|g| {
            let lw = g.leading_word().unwrap().clone();
            let mut rep = g.neg();
            rep.add_term(lw.clone(), &g.field().one());
            (lw, rep)
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = BTreeSet::new();
    let mut todo = vec![start.clone()];
    while let Some(p) = todo.pop() {
        if !seen.insert(p.display(gb.alphabet()).to_string()) {
            continue;
        }
        let mut moved = false;
        for (word, c) in p.terms() {
            for (lw, rep) in &rules {
                for pos in 0..word.len() {
                    if word.occurs_at(lw, pos) {
                        moved = true;
                        let mut next = p.clone();
                        next.add_term(word.clone(), &-c);
                        next.add_assign(&rep.sandwich(&word.prefix(pos), &word.suffix_from(pos + lw.len())).scale(c));
                        todo.push(next);
                    }
                }
            }
        }
        if !moved {
            out.insert(p.display(gb.alphabet()).to_string());
        }
    }
    out
}
