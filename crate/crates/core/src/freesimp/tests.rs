use super::*;
use crate::groupcyc::FreeWord;

#[test]
fn window_columns_match_small_models_below_the_cut() {
    let pair = build_example_bicomplexes(WindowParams::new(2, 3, 3)).unwrap();
    for n in 0..=3 {
        let f = pair.map.f(n);
        for k in 0..2 {
            let h = f.induced_on_homology(k);
            assert_eq!(f.source().betti(k), f.target().betti(k), "column {n}, degree {k}");
            assert_eq!(crate::exactla::rank(&h), f.source().betti(k), "column {n}, degree {k}");
        }
    }
}

#[test]
fn face_witnesses_hold_and_some_face_is_not_strict() {
    let pair = build_example_bicomplexes(WindowParams::new(2, 3, 3)).unwrap();
    let strict = pair.check_face_witnesses().unwrap();
    let total: usize = (1..=3).map(|n| n + 1).sum();
    assert!(strict < total);
}

#[test]
fn tracked_class_separates_at_three_letters() {
    let v = window_verdict(2, 4, 3).unwrap();
    assert!(v.c_fate.survives_to(3));
    assert_eq!(v.d_fate.alive, vec![true, true, false]);
    assert_eq!(v.d_fate.killed_from, Some((3, 0)));
    assert!(v.separates());
}

#[test]
fn two_letters_do_not_separate() {
    let v = window_verdict(2, 4, 2).unwrap();
    assert!(!v.separates());
    assert!(v.d_fate.survives_to(3));
}

#[test]
fn tiny_window_is_diagnosed() {
    let err = build_example_bicomplexes(WindowParams::new(2, 3, 1)).unwrap_err();
    assert!(matches!(err, crate::Error::Precondition(_)));
}

#[test]
fn cyclic_window_is_closed_under_faces() {
    let g = gamma_truncation(2, 3).unwrap();
    let w = CyclicWindow::new(g.rank(3), 3, 2).unwrap();
    let lower = CyclicWindow::new(g.rank(2), 3, 2).unwrap();
    for cells in &w.window.cells {
        for c in cells {
            for i in 0..=3 {
                let image: Vec<FreeWord> = c.iter().map(|x| g.face(3, i, x)).collect();
                assert!(lower.window.class_of(image.len() - 1, &image).is_some());
            }
        }
    }
}

#[test]
fn abelian_pair_commutes_on_the_nose() {
    let pair = build_abelian_pair(WindowParams::new(2, 3, 3)).unwrap();
    assert!(pair.squares_commute());
    assert!(pair.map.is_degreewise_quasi_iso());
    assert!(pair.tot_map().unwrap().is_quasi_iso());
}
