use std::sync::Arc;

use pqc_core::bar::{
    augmentation, verify_bar, BarCheck, BarComplex, BarElement, BarGenerator, BarWord,
};
use pqc_core::fingroup::{cyclic, dihedral, klein_four, FiniteGroup};
use pqc_core::freeword::{Letter, Word};
use pqc_core::pqc::{is_pch, HomotopyMode};
use proptest::prelude::*;

fn groups() -> Vec<Arc<FiniteGroup>> {
    vec![
        Arc::new(cyclic(2)),
        Arc::new(cyclic(3)),
        Arc::new(cyclic(4)),
        Arc::new(klein_four()),
        Arc::new(dihedral(3)),
    ]
}

/// Faces straight from the simplicial formulas, on plain `(prefix, tuple)`.
fn oracle_face(g: &FiniteGroup, i: usize, prefix: usize, t: &[usize]) -> (usize, Vec<usize>) {
    let n = t.len();
    if i == 0 {
        (g.op(prefix, t[0]), t[1..].to_vec())
    } else if i == n {
        (prefix, t[..n - 1].to_vec())
    } else {
        let mut out = t.to_vec();
        out[i - 1] = g.op(t[i - 1], t[i]);
        out.remove(i);
        (prefix, out)
    }
}

fn as_pairs(w: &BarWord) -> Vec<(bool, usize, Vec<usize>)> {
    w.letters()
        .iter()
        .map(|l| (l.inverse, l.generator.prefix, l.generator.tuple.clone()))
        .collect()
}

/// Expected letter list before free reduction, reduced by hand.
fn reduce(mut letters: Vec<(bool, usize, Vec<usize>)>) -> Vec<(bool, usize, Vec<usize>)> {
    let mut out: Vec<(bool, usize, Vec<usize>)> = Vec::new();
    for l in letters.drain(..) {
        match out.last() {
            Some(last) if last.0 != l.0 && last.1 == l.1 && last.2 == l.2 => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

#[test]
fn closed_formulas_match_face_oracle() {
    for g in groups() {
        let bar = BarComplex::new(g.clone(), 3);
        for n in 1..=3 {
            for b in bar.generators_at(n) {
                let plus: Vec<_> = (0..=n)
                    .step_by(2)
                    .map(|i| {
                        let (p, t) = oracle_face(&g, i, b.prefix, &b.tuple);
                        (false, p, t)
                    })
                    .collect();
                let minus: Vec<_> = (1..=n)
                    .rev()
                    .filter(|i| i % 2 == 1)
                    .map(|i| {
                        let (p, t) = oracle_face(&g, i, b.prefix, &b.tuple);
                        (false, p, t)
                    })
                    .collect();
                assert_eq!(as_pairs(&bar.d_plus_generator(&b)), reduce(plus));
                assert_eq!(as_pairs(&bar.d_minus_generator(&b)), reduce(minus));
            }
        }
    }
}

#[test]
fn low_degree_formulas() {
    for g in groups() {
        let bar = BarComplex::new(g.clone(), 2);
        for x in g.elements() {
            let b = Word::generator(BarGenerator::base_of(vec![x]));
            assert_eq!(
                bar.d_plus(1, &b).unwrap(),
                BarElement::Word(Word::generator(BarGenerator::new(x, vec![])))
            );
            assert_eq!(
                bar.d_minus(1, &b).unwrap(),
                BarElement::Word(Word::generator(BarGenerator::base_of(vec![])))
            );
            for y in g.elements() {
                let b = Word::generator(BarGenerator::base_of(vec![x, y]));
                let expected = Word::generator(BarGenerator::new(x, vec![y]))
                    + Word::generator(BarGenerator::base_of(vec![x]));
                assert_eq!(bar.d_plus(2, &b).unwrap(), BarElement::Word(expected));
                let expected = Word::generator(BarGenerator::base_of(vec![g.op(x, y)]));
                assert_eq!(bar.d_minus(2, &b).unwrap(), BarElement::Word(expected));
            }
        }
    }
}

#[test]
fn generator_counts() {
    let bar = BarComplex::new(Arc::new(cyclic(3)), 3);
    for n in 0..=3 {
        assert_eq!(bar.generators_at(n).len(), 3usize.pow(n as u32 + 1));
    }
}

#[test]
fn verify_bar_passes_for_suite() {
    for g in groups() {
        let bar = Arc::new(BarComplex::new(g.clone(), 3));
        let report = verify_bar(&bar, &BarCheck::ALL);
        assert!(
            report.all_pass(),
            "{}: {:?}",
            g.name(),
            report.entries.iter().find(|e| !e.passed())
        );
    }
}

#[test]
fn flipped_contraction_is_rejected() {
    let bar = Arc::new(BarComplex::new(Arc::new(cyclic(2)), 2).with_flipped_homotopy());
    let verdict = is_pch(&bar, &bar.contraction(), HomotopyMode::OnGenerators, -1..=1).unwrap();
    assert!(!verdict.is_pass());
}

fn word_strategy(order: usize, degree: usize) -> impl Strategy<Value = BarWord> {
    let letter = (
        0..order,
        prop::collection::vec(0..order, degree),
        any::<bool>(),
    )
        .prop_map(|(p, t, inv)| Letter {
            generator: BarGenerator::new(p, t),
            inverse: inv,
        });
    prop::collection::vec(letter, 0..6).prop_map(Word::reduce)
}

fn group_and_word() -> impl Strategy<Value = (usize, usize, BarWord)> {
    (0usize..5, 0usize..3).prop_flat_map(|(gi, n)| {
        let order = [2, 3, 4, 4, 6][gi];
        (Just(gi), Just(n), word_strategy(order, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn differentials_are_equivariant((gi, n, w) in group_and_word(), a in 0usize..6) {
        let g = groups()[gi].clone();
        let a = a % g.order();
        let bar = BarComplex::new(g, 3);
        if n == 0 {
            prop_assert_eq!(augmentation(&bar.act(a, &w)), augmentation(&w));
        } else {
            let (BarElement::Word(lhs), BarElement::Word(rhs)) = (bar.d_plus(n, &bar.act(a, &w)).unwrap(), bar.d_plus(n, &w).unwrap()) else { unreachable!() };
            prop_assert_eq!(lhs, bar.act(a, &rhs));
        }
    }

    #[test]
    fn closed_and_inductive_agree_on_words((gi, n, w) in group_and_word()) {
        let bar = BarComplex::new(groups()[gi].clone(), 3);
        prop_assert_eq!(bar.d_plus(n, &w).unwrap(), bar.d_plus_inductive(n, &w).unwrap());
        prop_assert_eq!(bar.d_minus(n, &w).unwrap(), bar.d_minus_inductive(n, &w).unwrap());
    }

    #[test]
    fn face_ladder_on_words((gi, n, w) in group_and_word()) {
        let bar = BarComplex::new(groups()[gi].clone(), 3);
        let e = bar.homotopy_e(n as i32, &BarElement::Word(w.clone())).unwrap();
        // ∂⁰e = −id on generators; on words e is additive, so letters flip in place.
        let flipped = Word::reduce(w.letters().iter().map(Letter::flipped));
        prop_assert_eq!(bar.face(0, n + 1, &e).unwrap(), flipped);
        for k in 0..=n {
            if n == 0 {
                break;
            }
            let lhs = bar.face(k + 1, n + 1, &e).unwrap();
            let rhs = bar.homotopy_e(n as i32 - 1, &BarElement::Word(bar.face(k, n, &w).unwrap())).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn render_parse_round_trip((gi, n, w) in group_and_word()) {
        let bar = BarComplex::new(groups()[gi].clone(), 3);
        prop_assume!(n <= 3);
        prop_assert_eq!(bar.parse_word(&bar.render_word(&w)).unwrap(), w);
    }
}
