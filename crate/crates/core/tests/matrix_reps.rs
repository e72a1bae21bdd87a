use std::collections::{BTreeMap, BTreeSet};

use adjoint_blocks::classes::{decompositions, enumerate, jordan_type_v, Class};
use adjoint_blocks::matrix_reps::{build_class, hesselink_symbol, index_function, same_orbit};
use adjoint_blocks::Kind;

const MAX_ELL: usize = 6;

#[test]
fn representatives_preserve_the_form() {
    for kind in [Kind::Unipotent, Kind::Nilpotent] {
        for ell in 1..=MAX_ELL {
            for c in decompositions(ell, kind) {
                let s = build_class(&c);
                s.check().unwrap_or_else(|e| panic!("{c}: {e}"));
                assert_eq!(s.jordan_type().unwrap(), jordan_type_v(&c), "{c}");
            }
        }
    }
}

#[test]
fn nilpotent_symbols_match_closed_form() {
    for ell in 1..=MAX_ELL {
        for c in decompositions(ell, Kind::Nilpotent) {
            let Class::Nilp(n) = &c else { unreachable!() };
            let s = hesselink_symbol(&build_class(&c)).unwrap();
            assert_eq!(s, n.symbol(), "{c}");
        }
    }
}

#[test]
fn canonical_forms_preserve_the_orbit() {
    for kind in [Kind::Unipotent, Kind::Nilpotent] {
        for ell in 1..=MAX_ELL {
            for c in decompositions(ell, kind) {
                let a = build_class(&c);
                let b = build_class(&c.canonical());
                assert!(same_orbit(&a, &b).unwrap(), "{c} vs {}", c.canonical());
            }
        }
    }
}

#[test]
fn enumerated_classes_are_pairwise_distinct() {
    for kind in [Kind::Unipotent, Kind::Nilpotent] {
        for ell in 1..=MAX_ELL {
            let classes = enumerate(ell, kind);
            let symbols: BTreeSet<_> = classes.iter().map(|c| hesselink_symbol(&build_class(c)).unwrap()).collect();
            assert_eq!(symbols.len(), classes.len(), "{kind} ell={ell}");
            let all: BTreeSet<_> =
                decompositions(ell, kind).iter().map(|c| hesselink_symbol(&build_class(c)).unwrap()).collect();
            assert_eq!(all, symbols, "{kind} ell={ell}");
        }
    }
}

#[test]
fn class_counts() {
    let expect: BTreeMap<(Kind, usize), usize> = [
        ((Kind::Unipotent, 1), 2),
        ((Kind::Unipotent, 2), 5),
        ((Kind::Unipotent, 3), 9),
        ((Kind::Unipotent, 4), 18),
        ((Kind::Nilpotent, 1), 2),
        ((Kind::Nilpotent, 2), 5),
        ((Kind::Nilpotent, 3), 10),
        ((Kind::Nilpotent, 4), 20),
    ]
    .into();
    for (&(kind, ell), &n) in &expect {
        assert_eq!(enumerate(ell, kind).len(), n, "{kind} ell={ell}");
    }
}

#[test]
fn index_function_bounds() {
    for kind in [Kind::Unipotent, Kind::Nilpotent] {
        for ell in 1..=MAX_ELL {
            for c in enumerate(ell, kind) {
                let s = build_class(&c);
                let t = s.jordan_type().unwrap();
                let top = t.max_size().unwrap();
                let mut prev = 0;
                for m in 0..=top + 1 {
                    let chi = index_function(&s, m).unwrap();
                    assert!(chi >= prev && chi <= m.div_ceil(2), "{c} m={m}");
                    prev = chi;
                }
            }
        }
    }
}

#[test]
fn form_vanishing_detects_all_w_orbits() {
    for ell in 1..=MAX_ELL {
        for c in decompositions(ell, Kind::Nilpotent) {
            let Class::Nilp(n) = &c else { unreachable!() };
            assert_eq!(build_class(&c).b_ev_v_vanishes(), n.symbol().entries.iter().all(|e| e.chi == 0), "{c}");
        }
    }
}

#[test]
fn square_of_nilpotent_has_trivial_index() {
    for ell in 1..=MAX_ELL {
        for c in enumerate(ell, Kind::Nilpotent) {
            let sym = hesselink_symbol(&build_class(&c).squared()).unwrap();
            assert!(sym.entries.iter().all(|e| e.chi == 0), "{c}: {sym}");
        }
    }
}
