mod common;

use cocycle_core::abelian::{
    abelian_coboundary, check_hexagons, mueger_center, quadratic_form, quinn_cocycle, quinn_pair,
    solve_abelian_coboundary, AbelianCocycle, QuadraticForm,
};
use cocycle_core::arith::lcm;
use cocycle_core::breen::psi;
use cocycle_core::cochain::{are_cohomologous, coboundary, pullback, solve_coboundary, Cochain};
use cocycle_core::group::canonical_doubling;
use cocycle_core::FinAbGroup;
use proptest::prelude::*;
use std::sync::OnceLock;

fn quinn_modulus(g: &FinAbGroup) -> u64 {
    g.invariant_factors().iter().map(|&n| 2 * n * n).fold(1, lcm)
}

fn forms() -> &'static [QuadraticForm] {
    static FORMS: OnceLock<Vec<QuadraticForm>> = OnceLock::new();
    FORMS.get_or_init(|| {
        [&[2u64][..], &[3], &[4], &[2, 2], &[2, 4]]
            .iter()
            .flat_map(|f| {
                let g = FinAbGroup::new(f).unwrap();
                common::all_quadratic_forms(&g, quinn_modulus(&g))
            })
            .collect()
    })
}

#[test]
fn semion_pair_satisfies_the_hexagons() {
    let g = FinAbGroup::cyclic(2).unwrap();
    let w = Cochain::from_sparse(&g, 3, 4, &[(vec![1, 1, 1], 2)]).unwrap();
    let c = Cochain::from_sparse(&g, 2, 4, &[(vec![1, 1], 1)]).unwrap();
    let semion = AbelianCocycle::new(w, c.clone()).unwrap();
    assert!(check_hexagons(&semion));
    assert_eq!(quadratic_form(&semion).unwrap().values(), &[0, 1]);
    assert!(mueger_center(&semion.c).unwrap().len() == 1);
    let naive = AbelianCocycle::new(Cochain::zero(&g, 3, 4).unwrap(), c).unwrap();
    assert!(!check_hexagons(&naive));
}

#[test]
fn quinn_pairs_realize_their_form() {
    for q in forms() {
        let pair = quinn_pair(&q).unwrap();
        assert!(check_hexagons(&pair));
        assert_eq!(quadratic_form(&pair).unwrap(), *q);
        assert!(psi(&pair.omega).unwrap().is_zero());
    }
}

#[test]
fn doubling_kills_quinn_classes_on_the_klein_group() {
    let g = FinAbGroup::new(&[2, 2]).unwrap();
    let (_, p) = canonical_doubling(&g);
    for q in common::all_quadratic_forms(&g, quinn_modulus(&g)) {
        let pulled = pullback(&p, &quinn_cocycle(&q).unwrap()).unwrap();
        let alpha = solve_coboundary(&pulled).unwrap().expect("pullback should be a coboundary");
        assert_eq!(coboundary(&alpha).unwrap(), pulled);
    }
}

#[test]
fn trivial_form_means_trivial_abelian_class() {
    for g in [FinAbGroup::cyclic(2).unwrap(), FinAbGroup::cyclic(4).unwrap()] {
        let n = quinn_modulus(&g);
        let zero = QuadraticForm::new(&g, n, vec![0; g.order()]).unwrap();
        assert!(solve_abelian_coboundary(&quinn_pair(&zero).unwrap()).unwrap().is_some());
        for q in common::all_quadratic_forms(&g, n) {
            let solvable = solve_abelian_coboundary(&quinn_pair(&q).unwrap()).unwrap().is_some();
            assert_eq!(solvable, q.values().iter().all(|&v| v == 0), "{:?}", q.values());
        }
    }
}

proptest! {
    #![proptest_config(common::proptest_config(100))]

    #[test]
    fn abelian_coboundaries_satisfy_the_hexagons_and_kill_psi(gi in 0usize..10, salt in any::<u64>()) {
        let g = &common::small_groups()[gi];
        let mut rng = common::rng(salt);
        let alpha = common::random_cochain(&mut rng, g, 2, 2 * g.exponent());
        let ac = abelian_coboundary(&alpha).unwrap();
        prop_assert!(check_hexagons(&ac));
        prop_assert!(psi(&ac.omega).unwrap().is_zero());
    }

    #[test]
    fn twisting_keeps_the_form_and_the_mueger_center(qi in any::<prop::sample::Index>(), salt in any::<u64>()) {
        let all = forms();
        let q = qi.get(all);
        let pair = quinn_pair(q).unwrap();
        let mut rng = common::rng(salt);
        let alpha = common::random_cochain(&mut rng, pair.group(), 2, pair.modulus());
        let twisted = pair.twist(&alpha).unwrap();
        prop_assert!(check_hexagons(&twisted));
        prop_assert!(psi(&twisted.omega).unwrap().is_zero());
        prop_assert_eq!(&quadratic_form(&twisted).unwrap(), q);
        prop_assert_eq!(mueger_center(&twisted.c).unwrap(), mueger_center(&pair.c).unwrap());
    }

    #[test]
    fn equal_forms_give_cohomologous_quinn_cocycles(qi in any::<prop::sample::Index>(), salt in any::<u64>()) {
        let all = forms();
        let q = qi.get(all);
        let pair = quinn_pair(q).unwrap();
        let mut rng = common::rng(salt);
        let alpha = common::random_cochain(&mut rng, pair.group(), 2, pair.modulus());
        let other = pair.twist(&alpha).unwrap();
        prop_assert_eq!(&quadratic_form(&other).unwrap(), q);
        prop_assert!(are_cohomologous(&other.omega, &quinn_cocycle(q).unwrap()).unwrap().is_some());
    }
}
