mod common;

use cocycle_core::group::canonical_doubling;
use cocycle_core::{Character, FinAbGroup, GroupHom};
use proptest::prelude::*;

fn factor_lists() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(2u64..=6, 1..=3)
}

#[test]
fn element_index_round_trips_up_to_order_256() {
    for f in [&[2u64][..], &[256], &[2, 4, 8], &[3, 5, 7], &[2, 2, 2, 2, 2, 2, 2, 2], &[4, 4, 4, 4], &[6, 6, 6]] {
        let g = FinAbGroup::new(f).unwrap();
        assert!(g.order() <= 256);
        for i in 0..g.order() {
            let x = g.element_from_index(i);
            assert_eq!(g.element_index(&x), i);
            assert_eq!(g.element_from_index(g.element_index(&x)), x);
        }
    }
}

#[test]
fn doubling_kernel_has_order_two_to_the_rank() {
    for g in common::small_groups() {
        let (gamma, p) = canonical_doubling(&g);
        let doubled: Vec<u64> = g.invariant_factors().iter().map(|n| 2 * n).collect();
        assert_eq!(gamma.invariant_factors(), &doubled[..]);
        assert_eq!(p.kernel().len(), 1 << g.rank());
        assert!(p.is_surjective());
    }
}

#[test]
fn character_group_has_the_right_size_and_is_bimultiplicative() {
    for g in common::small_groups() {
        let chars = Character::all(&g);
        assert_eq!(chars.len(), g.order());
        let e = g.exponent();
        for a in &chars {
            for b in &chars {
                let ab = a.mul(b);
                for x in g.elements() {
                    assert_eq!(ab.eval(&x), (a.eval(&x) + b.eval(&x)) % e);
                }
            }
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(a.eval(&g.add(&x, &y)), (a.eval(&x) + a.eval(&y)) % e);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(common::proptest_config(100))]

    #[test]
    fn homomorphisms_respect_addition(
        src in factor_lists(),
        tgt in factor_lists(),
        seeds in prop::collection::vec(any::<u64>(), 9),
    ) {
        let s = FinAbGroup::new(&src).unwrap();
        let t = FinAbGroup::new(&tgt).unwrap();
        prop_assume!(s.order() <= 16);
        // image of generator i: a multiple of an element that kills n_i
        let images: Vec<_> = (0..s.rank())
            .map(|i| {
                let n = s.invariant_factors()[i];
                let coords: Vec<i64> = t
                    .invariant_factors()
                    .iter()
                    .enumerate()
                    .map(|(j, &m)| {
                        let step = m / cocycle_core::arith::gcd(n, m);
                        (seeds[(i * 3 + j) % 9] % m / step * step) as i64
                    })
                    .collect();
                t.element_reduced(&coords)
            })
            .collect();
        let f = GroupHom::new(s.clone(), t.clone(), images).unwrap();
        for x in s.elements() {
            for y in s.elements() {
                let lhs = f.apply(&s.add(&x, &y)).unwrap();
                let rhs = t.add(&f.apply(&x).unwrap(), &f.apply(&y).unwrap());
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn addition_is_an_abelian_group_law(f in factor_lists(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let g = FinAbGroup::new(&f).unwrap();
        let n = g.order() as u64;
        let (x, y, z) = (
            g.element_from_index((a % n) as usize),
            g.element_from_index((b % n) as usize),
            g.element_from_index((c % n) as usize),
        );
        prop_assert_eq!(g.add(&x, &y), g.add(&y, &x));
        prop_assert_eq!(g.add(&g.add(&x, &y), &z), g.add(&x, &g.add(&y, &z)));
        prop_assert_eq!(g.add(&x, &g.neg(&x)), g.identity());
        prop_assert_eq!(g.scale(g.order_of(&x) as i64, &x), g.identity());
    }
}
