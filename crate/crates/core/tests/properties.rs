use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use rigid_covers::arrangement::{
    combinatorial_automorphisms, complete_quadrilateral, dual_hesse, realize_symmetry, Arrangement,
};
use rigid_covers::characters::{character_action, enumerate_characters, r_profile};
use rigid_covers::cyclotomic::{rat, ratio, CycNumber};
use rigid_covers::homology::{smoothness_check, Epimorphism};
use rigid_covers::intersection::{pairing, strict_transform, BlowUp, DivisorClass};
use rigid_covers::symmetry::deck_action_of;
use rigid_covers::{builtin, linalg::modp, Permutation};

fn cyc() -> impl Strategy<Value = CycNumber> {
    (-20i64..20, 1i64..6, -20i64..20, 1i64..6).prop_map(|(a, da, b, db)| CycNumber::new(ratio(a, da), ratio(b, db)))
}

fn phi_rows(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0i64..5, 2), n - 1).prop_map(|mut rows| {
        let last = (0..2).map(|j| -rows.iter().map(|r| r[j]).sum::<i64>()).collect();
        rows.push(last);
        rows
    })
}

fn hesse_auts() -> &'static Vec<Permutation> {
    use std::sync::OnceLock;
    static AUTS: OnceLock<Vec<Permutation>> = OnceLock::new();
    AUTS.get_or_init(|| combinatorial_automorphisms(&dual_hesse()))
}

fn divisor(blown: &Arc<BlowUp>, h: i64, e: &[i64]) -> DivisorClass {
    let mut d = DivisorClass::zero(blown.clone());
    d.h = rat(h);
    for (&p, &c) in blown.points().iter().zip(e) {
        if c != 0 {
            d.e.insert(p, rat(c));
        }
    }
    d
}

proptest! {
    #[test]
    fn field_axioms(x in cyc(), y in cyc(), z in cyc()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        if !y.is_zero() {
            prop_assert_eq!(&(&x / &y) * &y, x.clone());
        }
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(x in cyc(), y in cyc()) {
        prop_assert_eq!(x.conjugate().conjugate(), x.clone());
        prop_assert_eq!((&x + &y).conjugate(), &x.conjugate() + &y.conjugate());
        prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
        prop_assert!((&x * &x.conjugate()).is_real());
        prop_assert_eq!(x.norm(), (&x * &x.conjugate()).a().clone());
    }

    #[test]
    fn textual_form_round_trips(x in cyc()) {
        prop_assert_eq!(x.to_string().parse::<CycNumber>().unwrap(), x);
    }

    #[test]
    fn automorphisms_form_a_group(i in 0usize..432, j in 0usize..432) {
        let auts = hesse_auts();
        let (a, b) = (&auts[i], &auts[j]);
        prop_assert!(auts.binary_search(&a.compose(b)).is_ok());
        prop_assert!(auts.binary_search(&a.inverse()).is_ok());
    }

    #[test]
    fn realizability_composes_on_hesse(i in 0usize..432, j in 0usize..432, a1: bool, a2: bool) {
        let h = dual_hesse();
        let auts = hesse_auts();
        let (p, q) = (&auts[i], &auts[j]);
        if realize_symmetry(&h, p, a1).is_some() && realize_symmetry(&h, q, a2).is_some() {
            prop_assert!(realize_symmetry(&h, &p.compose(q), a1 ^ a2).is_some());
        }
    }

    #[test]
    fn every_hesse_automorphism_is_realized_one_way(i in 0usize..432) {
        let h = dual_hesse();
        let p = &hesse_auts()[i];
        let hol = realize_symmetry(&h, p, false).is_some();
        let anti = realize_symmetry(&h, p, true).is_some();
        prop_assert!(hol ^ anti);
    }

    #[test]
    fn pairing_is_symmetric_and_bilinear(
        a in (-5i64..5, prop::collection::vec(-5i64..5, 12)),
        b in (-5i64..5, prop::collection::vec(-5i64..5, 12)),
        c in (-5i64..5, prop::collection::vec(-5i64..5, 12)),
        s in -4i64..4,
    ) {
        let blown = Arc::new(BlowUp::all_r_ge_3(&dual_hesse()));
        let (x, y, z) = (divisor(&blown, a.0, &a.1), divisor(&blown, b.0, &b.1), divisor(&blown, c.0, &c.1));
        prop_assert_eq!(pairing(&x, &y).unwrap(), pairing(&y, &x).unwrap());
        let lhs = pairing(&x.scale(&rat(s)).add(&y).unwrap(), &z).unwrap();
        let rhs = rat(s) * pairing(&x, &z).unwrap() + pairing(&y, &z).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn characters_of_random_phi(rows in phi_rows(9)) {
        if let Ok(phi) = Epimorphism::validated(5, rows) {
            let a = enumerate_characters(&phi).unwrap();
            prop_assert_eq!(a.len(), 25);
            let distinct: BTreeSet<_> = a.elements.iter().collect();
            prop_assert_eq!(distinct.len(), 25);
            for x in &a.elements {
                prop_assert_eq!(x.iter().sum::<u32>() % 5, 0);
            }
        }
    }

    #[test]
    fn action_respects_profiles_and_composition(i in 0usize..432, j in 0usize..432) {
        let auts = hesse_auts();
        let a = enumerate_characters(&builtin::phi1()).unwrap();
        let (p, q) = (&auts[i], &auts[j]);
        let pa = character_action(p, &a);
        let mut before: Vec<Vec<usize>> = a.elements.iter().map(|x| r_profile(x, 5)).collect();
        let mut after: Vec<Vec<usize>> = pa.elements.iter().map(|x| r_profile(x, 5)).collect();
        before.sort();
        after.sort();
        prop_assert_eq!(before, after);
        prop_assert_eq!(character_action(&p.compose(q), &a), character_action(q, &pa));
    }

    #[test]
    fn smoothness_is_monotone(rows in phi_rows(9), small in prop::collection::vec(any::<bool>(), 12), extra in prop::collection::vec(any::<bool>(), 12)) {
        let h = dual_hesse();
        let Ok(phi) = Epimorphism::validated(5, rows) else { return Ok(()); };
        let triples = h.points_with_multiplicity_at_least(3);
        let s: Vec<usize> = triples.iter().zip(&small).filter(|(_, &b)| b).map(|(&p, _)| p).collect();
        let t: Vec<usize> = triples.iter().zip(small.iter().zip(&extra)).filter(|(_, (&a, &b))| a || b).map(|(&p, _)| p).collect();
        let cs = smoothness_check(&h, &phi, &BlowUp::from_ids(&h, &s).unwrap()).unwrap();
        let ct = smoothness_check(&h, &phi, &BlowUp::from_ids(&h, &t).unwrap()).unwrap();
        for failure in cs.failures() {
            if !t.contains(&failure.point) {
                prop_assert!(ct.failures().any(|f| f.point == failure.point));
            }
        }
    }
}

#[test]
fn eps_image_is_row_sum_everywhere() {
    for (arr, phi) in [
        (dual_hesse(), builtin::phi1()),
        (dual_hesse(), builtin::phi2()),
        (complete_quadrilateral(), builtin::phi3()),
    ] {
        for p in arr.points() {
            let mut sum = vec![0u32; 2];
            for &i in &p.incident {
                for (s, x) in sum.iter_mut().zip(phi.row(i)) {
                    *s = (*s + x) % 5;
                }
            }
            assert_eq!(phi.eps_image(p), sum);
        }
    }
}

#[test]
fn deck_action_is_a_homomorphism_on_preserving_symmetries() {
    let phi = builtin::phi2();
    let s = Permutation::parse_cycles(9, "(2 3)(4 6)(7 8)").unwrap();
    let id = Permutation::identity(9);
    for (p, a) in [(&s, true), (&s, false), (&id, true), (&id, false)] {
        for (q, b) in [(&s, true), (&s, false), (&id, true)] {
            let lhs = modp::mat_mul(
                &deck_action_of(p, a, &phi).unwrap(),
                &deck_action_of(q, b, &phi).unwrap(),
                5,
            );
            assert_eq!(lhs, deck_action_of(&p.compose(q), a ^ b, &phi).unwrap());
        }
    }
}

#[test]
fn pullback_preserves_the_form() {
    let arr: Arrangement = complete_quadrilateral();
    let blown = Arc::new(BlowUp::all_r_ge_3(&arr));
    for i in 0..arr.line_count() {
        let mut pullback = strict_transform(&arr, i, &blown);
        for &p in blown.points() {
            if arr.point(p).contains_line(i) {
                pullback = pullback
                    .add(&DivisorClass::exceptional(blown.clone(), p).unwrap())
                    .unwrap();
            }
        }
        assert_eq!(pairing(&pullback, &pullback).unwrap(), rat(1));
    }
}
