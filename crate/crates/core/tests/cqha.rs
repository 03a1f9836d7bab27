mod common;

use cocycle_core::breen::trivialize;
use cocycle_core::cochain::{coboundary, cohomology_group, cyclic_class_cocycle, Budget, Cochain};
use cocycle_core::cqha::{
    build_bosonization, build_group_cqha, twist_by_cochain, verify_antipode, verify_coquasi_axioms,
    verify_pentagon_rows, BosonizationOptions, Check, QlsDatum, VerifyOptions,
};
use cocycle_core::{Character, FinAbGroup, GroupHom};
use proptest::prelude::*;

fn full() -> VerifyOptions {
    VerifyOptions { pentagon: true }
}

/// Data over `Z/4` lifting the nontrivial class on `Z/2`, one per sign of `q = ±i`.
fn z2_class_data() -> Vec<QlsDatum> {
    let w = cyclic_class_cocycle(2, 1, 2).unwrap();
    let t = trivialize(&w, 1, &Budget::default()).unwrap().unwrap();
    [1u64, 3]
        .iter()
        .map(|&e| {
            QlsDatum::new(
                w.clone(),
                t.p.clone(),
                t.alpha.clone(),
                t.gamma.generator(0),
                Character::new(&t.gamma, &[e]).unwrap(),
                4,
            )
            .unwrap()
        })
        .collect()
}

fn sweedler() -> QlsDatum {
    let g = FinAbGroup::cyclic(2).unwrap();
    QlsDatum::new(
        Cochain::zero(&g, 3, 2).unwrap(),
        GroupHom::identity(&g),
        Cochain::zero(&g, 2, 2).unwrap(),
        g.generator(0),
        Character::new(&g, &[1]).unwrap(),
        2,
    )
    .unwrap()
}

#[test]
fn group_algebras_of_all_representatives_pass() {
    for g in common::small_groups() {
        let h = cohomology_group(&g, 3, g.exponent()).unwrap();
        for w in &h.representatives {
            let a = build_group_cqha(w).unwrap();
            let rep = verify_coquasi_axioms(&a, &full()).unwrap();
            assert!(rep.passed(), "{g:?}: {:?}", rep.failures.first());
            assert!(verify_antipode(&a).unwrap().passed(), "{g:?}");
        }
    }
}

#[test]
fn pentagon_rows_cover_the_full_check() {
    let w = cyclic_class_cocycle(4, 1, 4).unwrap();
    let mut a = build_group_cqha(&w).unwrap();
    let whole = verify_coquasi_axioms(&a, &full()).unwrap();
    let mut parts = verify_pentagon_rows(&a, 0..2).unwrap();
    parts.merge(verify_pentagon_rows(&a, 2..4).unwrap());
    assert_eq!(parts.checked.get(&Check::Pentagon), whole.checked.get(&Check::Pentagon));
    // break Ω at one triple: the pentagon now fails somewhere
    let k = (a.dim() + 1) * a.dim() + 1;
    a.omega[k] = a.ring.mul_root(&a.omega[k], 1);
    let mut parts = verify_pentagon_rows(&a, 0..2).unwrap();
    parts.merge(verify_pentagon_rows(&a, 2..4).unwrap());
    assert!(parts.failures_of(Check::Pentagon).count() > 0);
}

#[test]
fn bosonizations_have_hopf_covers_and_correct_grouplike_associators() {
    let mut data = z2_class_data();
    data.push(sweedler());
    for d in &data {
        let b = build_bosonization(d, &BosonizationOptions::default()).unwrap();
        let one = b.hopf.ring.one();
        assert!(b.hopf.omega.iter().zip(&b.hopf.omega_inv).all(|(x, y)| {
            // Ω = ε⊗ε⊗ε: 1 on grouplike-only triples, 0 elsewhere
            *x == *y && (x == &one || b.hopf.ring.is_zero(x))
        }));
        assert!(verify_coquasi_axioms(&b.hopf, &full()).unwrap().passed());
        assert!(verify_antipode(&b.hopf).unwrap().passed());

        let a = &b.quotient;
        let w = d.omega();
        let nl = w.group().order();
        for x in 0..nl {
            for y in 0..nl {
                for z in 0..nl {
                    let want = a.ring.root_of(w.modulus(), w.at(&[x, y, z]) as i64).unwrap();
                    assert_eq!(*a.omega_at(x, y, z), want);
                }
            }
        }
        // π: grouplikes through p, onto the basis of A
        let p = d.p().index_map();
        let ng = d.p().source().order();
        for g in 0..ng {
            assert_eq!(b.pi[g], p[g]);
        }
        let mut hit = vec![false; a.dim()];
        for &i in &b.pi {
            hit[i] = true;
        }
        assert!(hit.iter().all(|&h| h));
    }
}

#[test]
fn datum_validation_rejects_bad_input() {
    let w = cyclic_class_cocycle(2, 1, 2).unwrap();
    let t = trivialize(&w, 1, &Budget::default()).unwrap().unwrap();
    let chi = Character::new(&t.gamma, &[1]).unwrap();
    let g1 = t.gamma.generator(0);
    // α that does not trivialize ω
    let zero = Cochain::zero(&t.gamma, 2, t.alpha.modulus()).unwrap();
    assert!(QlsDatum::new(w.clone(), t.p.clone(), zero, g1.clone(), chi.clone(), 4).is_err());
    // n must be the exact order of q
    assert!(QlsDatum::new(w.clone(), t.p.clone(), t.alpha.clone(), g1.clone(), chi.clone(), 2).is_err());
    assert!(QlsDatum::new(w, t.p, t.alpha, g1, chi, 4).is_ok());
}

proptest! {
    #![proptest_config(common::proptest_config(100))]

    #[test]
    fn twisting_multiplies_omega_by_the_coboundary(gi in 0usize..10, salt in any::<u64>()) {
        let g = &common::small_groups()[gi];
        prop_assume!(g.order() <= 6);
        let mut rng = common::rng(salt);
        let n = g.exponent();
        let w = common::random_cocycle(&mut rng, g, n);
        let alpha = common::random_cochain(&mut rng, g, 2, n);
        let h = build_group_cqha(&w).unwrap();
        let all: Vec<Option<usize>> = (0..g.order()).map(Some).collect();
        let t = twist_by_cochain(&h, &all, &alpha).unwrap();
        let dw = coboundary(&alpha).unwrap();
        for (i, (&a, &b)) in w.table().iter().zip(dw.table()).enumerate() {
            prop_assert_eq!(&t.omega[i], &t.ring.root_of(n, (a + b) as i64).unwrap());
        }
        let quick = VerifyOptions { pentagon: false };
        prop_assert!(verify_coquasi_axioms(&t, &quick).unwrap().passed());
        prop_assert!(verify_antipode(&t).unwrap().passed());
    }
}
