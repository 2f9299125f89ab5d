use std::collections::BTreeSet;

use natext::extension::{solve_ball, ExtensionProblem, Mode, Verdict};
use natext::groups::SGroup;
use natext::subshift::SubshiftSpec;
use natext::words::{words_equal_bounded, EqualityBudget, TriState, Word};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn dyadic_embedding_is_injective_on_short_words() {
    let sg = SGroup::bs12();
    let words = Word::all_up_to(2, 9);
    let images: BTreeSet<_> = words.iter().map(|w| sg.eta(w)).collect();
    assert_eq!(images.len(), words.len());
}

#[test]
fn bs23_images_respect_word_problem() {
    let sg = SGroup::baumslag_solitar(2, 3);
    let mut rng = StdRng::seed_from_u64(23);
    let mut equal_pairs = 0;
    for _ in 0..400 {
        let u = Word::new((0..rng.gen_range(1..=6)).map(|_| rng.gen_range(0..2)).collect());
        // v is u with one relation applied somewhere, or an unrelated word
        let v = if rng.gen_bool(0.5) {
            let mut l = u.letters().to_vec();
            let at = rng.gen_range(0..=l.len());
            l.splice(at..at, [0, 1, 1]);
            let mut r = u.letters().to_vec();
            r.splice(at..at, [1, 1, 1, 0]);
            equal_pairs += 1;
            assert_eq!(sg.eta(&Word::new(l)), sg.eta(&Word::new(r)));
            continue;
        } else {
            Word::new((0..rng.gen_range(1..=6)).map(|_| rng.gen_range(0..2)).collect())
        };
        let same = sg.eta(&u) == sg.eta(&v);
        match words_equal_bounded(&sg.semigroup, &u, &v, EqualityBudget::default()) {
            TriState::Equal => assert!(same, "{u:?} {v:?}"),
            TriState::NotEqualProven => assert!(!same, "{u:?} {v:?}"),
            TriState::Unknown => {}
        }
    }
    assert!(equal_pairs > 100);
}

#[test]
fn emptiness_persists_to_larger_balls() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..40 {
        let k = rng.gen_range(2..=3usize);
        let ms: Vec<Vec<Vec<bool>>> = (0..2).map(|_| (0..k).map(|_| (0..k).map(|_| rng.gen_bool(0.4)).collect()).collect()).collect();
        let spec = SubshiftSpec::nearest_neighbor((0..k).map(|i| i.to_string()).collect(), &ms).unwrap();
        let sg = SGroup::bs12();
        let mut was_empty = false;
        for r in 1..=3 {
            let rep = solve_ball(&ExtensionProblem::new(&sg, &spec, r).unwrap(), &Mode::AnyColoring).unwrap();
            let empty = matches!(rep.verdict, Verdict::EmptyProven { .. });
            assert!(!was_empty || empty);
            was_empty = empty;
        }
    }
}
