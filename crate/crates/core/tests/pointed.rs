mod common;

use cocycle_core::breen::psi;
use cocycle_core::cochain::is_cocycle;
use cocycle_core::pointed::{
    beta_cocycle, central_extension, extension_cocycle, group_profile, invertible_count, is_pointed, lambda_omega,
    ExtensionDatum,
};
use cocycle_core::{Character, FinAbGroup};
use proptest::prelude::*;

fn groups() -> Vec<FinAbGroup> {
    common::small_groups().into_iter().filter(|g| g.order() <= 8).collect()
}

/// `α(x, y)_k = Σ_ij m[k][i][j] x_i y_j` on `A = (Z/n)^r`, `B = (Z/n)^s`.
fn bilinear_datum(n: u64, r: usize, s: usize, m: &[u64]) -> ExtensionDatum {
    let a = FinAbGroup::new(&vec![n; r]).unwrap();
    let b = FinAbGroup::new(&vec![n; s]).unwrap();
    let elems: Vec<_> = a.elements().collect();
    let mut table = Vec::new();
    for x in &elems {
        for y in &elems {
            let exps: Vec<u64> = (0..s)
                .map(|k| {
                    let mut e = 0;
                    for i in 0..r {
                        for j in 0..r {
                            e += m[(k * r + i) * r + j] * x.coords()[i] * y.coords()[j];
                        }
                    }
                    e % n
                })
                .collect();
            table.push(Character::new(&b, &exps).unwrap());
        }
    }
    ExtensionDatum::new(a, b, table).unwrap()
}

fn datum_strategy() -> impl Strategy<Value = ExtensionDatum> {
    (prop::sample::select(vec![(2u64, 2usize, 1usize), (2, 2, 2), (2, 3, 1), (3, 2, 1), (4, 1, 1)]))
        .prop_flat_map(|(n, r, s)| (Just((n, r, s)), prop::collection::vec(0..n, s * r * r)))
        .prop_map(|((n, r, s), m)| bilinear_datum(n, r, s, &m))
}

#[test]
fn quaternion_like_data_are_told_apart_from_dihedral() {
    // α(x, y) = x_0 y_1 gives the dihedral group of order 8
    let d4 = bilinear_datum(2, 2, 1, &[0, 1, 0, 0]);
    let p = group_profile(&central_extension(&d4).unwrap());
    assert_eq!((p.order, p.is_abelian, p.order_histogram.get(&4).copied()), (8, false, Some(2)));
    assert_eq!(p.center_size, 2);
    // α(x, y) = x_0 y_0 + x_0 y_1 + x_1 y_1 gives the quaternion group
    let q8 = bilinear_datum(2, 2, 1, &[1, 1, 0, 1]);
    let p = group_profile(&central_extension(&q8).unwrap());
    assert_eq!((p.order, p.is_abelian, p.order_histogram.get(&4).copied()), (8, false, Some(6)));
}

proptest! {
    #![proptest_config(common::proptest_config(100))]

    #[test]
    fn central_extensions_are_groups_of_the_right_order(d in datum_strategy()) {
        let t = central_extension(&d).unwrap();
        prop_assert_eq!(t.order(), d.a().order() * d.b().order());
        let p = group_profile(&t);
        prop_assert_eq!(p.is_abelian, d.is_symmetric());
    }

    #[test]
    fn extension_cocycle_is_additive_in_the_last_slot(d in datum_strategy(), picks in prop::collection::vec(any::<u32>(), 4)) {
        let w = extension_cocycle(&d).unwrap();
        let g = d.total_group();
        let n = g.order();
        let e = w.modulus();
        let idx: Vec<usize> = picks.iter().map(|&p| p as usize % n).collect();
        let t = g.tables();
        let lhs = w.at(&[idx[0], idx[1], t.add(idx[2], idx[3])]);
        let rhs = (w.at(&[idx[0], idx[1], idx[2]]) + w.at(&[idx[0], idx[1], idx[3]])) % e;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn beta_symmetry_matches_psi_vanishing(gi in 0usize..10, salt in any::<u64>()) {
        let gs = groups();
        let g = &gs[gi % gs.len()];
        let mut rng = common::rng(salt);
        let w = common::random_cocycle(&mut rng, g, g.exponent());
        let n = g.order();
        let mut all_symmetric = true;
        for l in g.elements() {
            let b = beta_cocycle(&w, &l).unwrap();
            prop_assert!(is_cocycle(&b));
            all_symmetric &= (0..n).all(|x| (0..n).all(|y| b.at(&[x, y]) == b.at(&[y, x])));
        }
        prop_assert_eq!(all_symmetric, psi(&w).unwrap().is_zero());
        prop_assert_eq!(all_symmetric, is_pointed(&w).unwrap());
    }

    #[test]
    fn pointedness_data_are_class_invariants(gi in 0usize..10, salt in any::<u64>()) {
        let gs = groups();
        let g = &gs[gi % gs.len()];
        let mut rng = common::rng(salt);
        let w = common::random_cocycle(&mut rng, g, g.exponent());
        let v = common::shift_by_coboundary(&mut rng, &w);
        prop_assert_eq!(is_pointed(&w).unwrap(), is_pointed(&v).unwrap());
        prop_assert_eq!(lambda_omega(&w).unwrap(), lambda_omega(&v).unwrap());
        prop_assert_eq!(invertible_count(&w).unwrap(), invertible_count(&v).unwrap());
    }
}
