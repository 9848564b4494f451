use std::cmp::Ordering;
use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::coeff::{int, Scalar};

fn tl3() -> Presentation {
    Presentation::parse(
        &["e1", "e2"],
        Some("tau"),
        &["e1*e2*e1 - e1", "e2*e1*e2 - e2", "e1*e1 - tau*e1", "e2*e2 - tau*e2"],
    )
    .unwrap()
}

fn w(s: &[u8]) -> Word {
    Word::new(s.to_vec())
}

fn p(pres: &Presentation, text: &str) -> Poly {
    parse_poly(text, &pres.alphabet, &pres.field).unwrap()
}

fn tau_poly(pres: &Presentation, text: &str) -> String {
    p(pres, text).display(&pres.alphabet).to_string()
}

#[test]
fn deglex_examples() {
    let a = Alphabet::new(["e1", "e2"]);
    assert_eq!(compare_deglex(&w(&[0]), &w(&[1]), &a), Ordering::Less);
    assert_eq!(compare_deglex(&w(&[1]), &w(&[0, 0]), &a), Ordering::Less);
    assert_eq!(compare_deglex(&w(&[0, 1, 0]), &w(&[1, 0, 1]), &a), Ordering::Less);
    assert_eq!(compare_deglex(&Word::empty(), &w(&[0]), &a), Ordering::Less);
}

#[test]
fn leading_terms() {
    let t = tl3();
    let r = p(&t, "e1*e2*e1 - e1");
    let (lw, lc) = r.leading_term().unwrap();
    assert_eq!(lw, &w(&[0, 1, 0]));
    assert!(lc.is_one());
    let r = p(&t, "-tau*e1 + e1*e1");
    assert_eq!(r.leading_term().unwrap().0, &w(&[0, 0]));
    let c = p(&t, "3*tau");
    let (lw, lc) = c.leading_term().unwrap();
    assert!(lw.is_empty());
    assert_eq!(lc.to_string(), "3*tau");
    assert_eq!(Poly::zero(&t.field).leading_term(), Err(AlgebraError::ZeroPolynomial));
}

#[test]
fn reduce_examples() {
    let t = tl3();
    let rw = Rewriter::new(&t.field, &t.relations);
    let show = |q: &Poly| q.display(&t.alphabet).to_string();
    assert_eq!(show(&rw.reduce(&p(&t, "e1*e1"))), "tau*e1");
    assert_eq!(show(&rw.reduce(&p(&t, "e1*e2*e1"))), "e1");
    assert_eq!(show(&rw.reduce(&p(&t, "e2*e1*e2*e1"))), "e2*e1");
    assert_eq!(show(&reduce(&p(&t, "e1*e1*e1"), &t.relations)), "tau^2*e1");
}

/// Every maximal rewrite sequence, collecting the set of reachable normal forms.
fn all_normal_forms(rels: &[Poly], start: &Poly, out: &mut BTreeSet<String>, alphabet: &Alphabet) {
    let mut seen = BTreeSet::new();
    explore(rels, start, out, alphabet, &mut seen);
}

fn explore(rels: &[Poly], start: &Poly, out: &mut BTreeSet<String>, alphabet: &Alphabet, seen: &mut BTreeSet<String>) {
    if !seen.insert(start.display(alphabet).to_string()) {
        return;
    }
    let leads: Vec<(Word, Poly)> = rels
        .iter()
        .map(|g| {
            let lw = g.leading_word().unwrap().clone();
            let mut rep = g.neg();
            rep.add_term(lw.clone(), &g.field().one());
            (lw, rep)
        })
        .collect();
    let mut moved = false;
    for (word, c) in start.terms() {
        for (lw, rep) in &leads {
            for pos in 0..word.len() {
                if word.occurs_at(lw, pos) {
                    moved = true;
                    let mut next = start.clone();
                    next.add_term(word.clone(), &-c);
                    next.add_assign(&rep.sandwich(&word.prefix(pos), &word.suffix_from(pos + lw.len())).scale(c));
                    explore(rels, &next, out, alphabet, seen);
                }
            }
        }
    }
    if !moved {
        out.insert(start.display(alphabet).to_string());
    }
}

#[test]
fn exhaustive_rewriting_agrees() {
    let t = tl3();
    let rw = Rewriter::new(&t.field, &t.relations);
    for text in ["e2*e1*e2*e1", "e1*e2*e1*e1", "e1*e1*e2*e1*e2", "e1*e1*e1 + e2*e1*e2*e2"] {
        let mut forms = BTreeSet::new();
        all_normal_forms(&t.relations, &p(&t, text), &mut forms, &t.alphabet);
        assert_eq!(forms.len(), 1, "{text}: {forms:?}");
        assert_eq!(forms.into_iter().next().unwrap(), rw.reduce(&p(&t, text)).display(&t.alphabet).to_string());
    }
}

#[test]
fn multiply_normal_examples() {
    let t = tl3();
    let rw = Rewriter::new(&t.field, &t.relations);
    let m = |a: &str, b: &str| rw.multiply(&p(&t, a), &p(&t, b)).display(&t.alphabet).to_string();
    assert_eq!(m("e1", "e2"), "e1*e2");
    assert_eq!(m("e1*e2", "e1"), "e1");
    assert_eq!(m("e2*e1", "e1"), "tau*e2*e1");
}

#[test]
fn normal_word_examples() {
    let t = tl3();
    let obs: Vec<Word> = t.relations.iter().map(|r| r.leading_word().unwrap().clone()).collect();
    let words = normal_words(&obs, 2, 6);
    let shown: Vec<String> = words.iter().map(|x| t.alphabet.fmt_compact(x)).collect();
    assert_eq!(shown, ["1", "e1", "e2", "e1e2", "e2e1"]);
    assert_eq!(normal_words(&[], 2, 2).len(), 7);
}

#[test]
fn parse_and_display() {
    let t = tl3();
    assert_eq!(tau_poly(&t, "tau*e1*e2 - e1"), "tau*e1*e2 - e1");
    assert_eq!(tau_poly(&t, "(tau^2-1)/(tau-1)*e1"), "(tau + 1)*e1");
    assert_eq!(tau_poly(&t, "-e1^2 + 1/2*e2"), "-e1*e1 + 1/2*e2");
    assert_eq!(tau_poly(&t, "-(tau+1)*e1 - tau"), "(-tau - 1)*e1 - tau");
    assert_eq!(tau_poly(&t, "tau^-1*e1"), "(1/tau)*e1");
    assert_eq!(parse_rational("-3/2").unwrap(), crate::coeff::rat(-3, 2));
    let s = parse_scalar("(tau^2-1)/(tau-1)", &t.field).unwrap();
    assert_eq!(s.to_string(), "tau + 1");
}

#[test]
fn parse_errors_carry_columns() {
    let t = tl3();
    let e = parse_poly("e1 * e3", &t.alphabet, &t.field).unwrap_err();
    assert_eq!(e.column, 6);
    let e = parse_poly("e1 / e2", &t.alphabet, &t.field).unwrap_err();
    assert_eq!(e.column, 6);
    let e = parse_poly("(e1 + e2", &t.alphabet, &t.field).unwrap_err();
    assert_eq!(e.column, 9);
    assert!(parse_poly("e1 $", &t.alphabet, &t.field).is_err());
    assert!(parse_poly("e1 / 0", &t.alphabet, &t.field).is_err());
}

#[test]
fn augmentation_check() {
    let e = Presentation::parse(&["x"], None, &["x*x - 1"]).unwrap_err();
    assert!(matches!(e, AlgebraError::NotAugmented { index: 0, .. }));
    let e = Presentation::parse(&["x", "x"], None, &["x*x"]).unwrap_err();
    assert!(matches!(e, AlgebraError::DuplicateGenerator(_)));
    let e = Presentation::parse(&["x"], None, &["x - x"]).unwrap_err();
    assert!(matches!(e, AlgebraError::ZeroRelation { index: 0 }));
    for r in &tl3().relations {
        assert!(r.constant_term().is_zero());
    }
}

#[test]
fn presentation_file_round_trip() {
    let t = tl3();
    let json = serde_json::to_string(&t.to_file()).unwrap();
    let back: PresentationFile = serde_json::from_str(&json).unwrap();
    assert_eq!(back.into_presentation().unwrap(), t);
}

#[test]
fn specialize_presentation() {
    let t = tl3().specialize(&int(0)).unwrap();
    assert_eq!(t.relations[2].display(&t.alphabet).to_string(), "e1*e1");
    assert!(matches!(t.relations[0].constant_term(), Scalar::Rational(_)));
}

fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..2, 0..=max_len).prop_map(Word::new)
}

fn tl3_normal_poly() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..5, -3i64..=3), 0..5)
}

fn build(t: &Presentation, spec: &[(usize, i64)]) -> Poly {
    let basis = ["1", "e1", "e2", "e1*e2", "e2*e1"];
    let mut out = Poly::zero(&t.field);
    for &(i, c) in spec {
        out.add_assign(&p(t, &format!("{c}*tau*{}", basis[i])));
        out.add_assign(&p(t, &format!("{c}*{}", basis[i])));
    }
    out
}

proptest! {
    #[test]
    fn deglex_compatible_with_concatenation(u in word_strategy(5), v in word_strategy(5),
                                            l in word_strategy(3), r in word_strategy(3)) {
        let a = Alphabet::new(["e1", "e2"]);
        let lhs = compare_deglex(&u, &v, &a);
        let wrapped = compare_deglex(&Word::concat3(l.letters(), u.letters(), r.letters()),
                                     &Word::concat3(l.letters(), v.letters(), r.letters()), &a);
        prop_assert_eq!(lhs, wrapped);
        prop_assert!(Word::empty() <= u);
    }

    #[test]
    fn reduction_is_strategy_independent(x in word_strategy(6)) {
        let t = tl3();
        let start = Poly::word(&t.field, x);
        let mut forms = BTreeSet::new();
        all_normal_forms(&t.relations, &start, &mut forms, &t.alphabet);
        prop_assert_eq!(forms.len(), 1);
    }

    #[test]
    fn multiplication_associative_with_unit(a in tl3_normal_poly(), b in tl3_normal_poly(), c in tl3_normal_poly()) {
        let t = tl3();
        let rw = Rewriter::new(&t.field, &t.relations);
        let (a, b, c) = (build(&t, &a), build(&t, &b), build(&t, &c));
        let left = rw.multiply(&rw.multiply(&a, &b), &c);
        let right = rw.multiply(&a, &rw.multiply(&b, &c));
        prop_assert_eq!(left, right);
        let one = Poly::constant(t.field.one());
        prop_assert_eq!(rw.multiply(&one, &a), a.clone());
        prop_assert_eq!(rw.multiply(&a, &one), a);
    }
}
