mod common;

use cocycle_core::cochain::{coboundary, Cochain};
use cocycle_core::nichols::{
    default_primes, global_symmetrizer, hilbert_prefix, rank_mod_p, twist_braiding, DiagonalDatum, Realization,
};
use cocycle_core::{Character, FinAbGroup};
use proptest::prelude::*;

fn datum_strategy() -> impl Strategy<Value = DiagonalDatum> {
    (1usize..=3, prop::sample::select(vec![4u64, 6, 12]))
        .prop_flat_map(|(th, m)| (Just((th, m)), prop::collection::vec(0..m, th * th)))
        .prop_map(|((th, m), q)| DiagonalDatum::new(th, m, q).unwrap())
}

#[test]
fn single_generators_are_truncated_polynomial_rings() {
    for k in 2..=8u64 {
        let d = DiagonalDatum::new(1, k, vec![1]).unwrap();
        let hp = hilbert_prefix(&d, 10, &default_primes(k, 3)).unwrap();
        let expect: Vec<usize> = (0..=10).map(|n| usize::from(n < k as usize)).collect();
        assert_eq!(hp.dims, expect);
    }
    // q = 1 gives the symmetric algebra in one variable
    let d = DiagonalDatum::new(1, 4, vec![0]).unwrap();
    assert_eq!(hilbert_prefix(&d, 6, &default_primes(4, 2)).unwrap().dims, vec![1; 7]);
}

#[test]
fn quantum_linear_spaces_match_the_product_formula() {
    // q_ii of order n_i, q_ij q_ji = 1
    let d = DiagonalDatum::new(2, 6, vec![3, 1, 5, 2]).unwrap();
    let hp = hilbert_prefix(&d, 6, &default_primes(6, 3)).unwrap();
    assert_eq!(hp.dims, common::truncated_product(&[2, 3], 6));
    assert!(hp.agreement);
}

/// 2-cocycles on the Klein four-group at modulus 2, one per alternating part
/// (the only part a twist of the braiding sees).
fn klein_two_cocycles() -> Vec<Cochain> {
    let g = FinAbGroup::new(&[2, 2]).unwrap();
    let mut seen = std::collections::BTreeSet::new();
    (0u32..512)
        .map(|bits| {
            Cochain::from_index_fn(&g, 2, 2, |a| {
                if a[0] == 0 || a[1] == 0 {
                    0
                } else {
                    ((bits >> ((a[0] - 1) * 3 + a[1] - 1)) & 1) as i64
                }
            })
            .unwrap()
        })
        .filter(|a| coboundary(a).unwrap().is_zero())
        .filter(|a| {
            let alt: Vec<u64> = (0..16).map(|i| (a.at(&[i / 4, i % 4]) + a.at(&[i % 4, i / 4])) % 2).collect();
            seen.insert(alt)
        })
        .collect()
}

#[test]
fn closed_twists_keep_the_hilbert_series() {
    let gamma = FinAbGroup::new(&[2, 2]).unwrap();
    let alphas = klein_two_cocycles();
    assert!(alphas.len() > 1);
    let primes = default_primes(2, 3);
    let elems: Vec<_> = gamma.elements().collect();
    let chars = Character::all(&gamma);
    for th in 1..=2 {
        let count = (elems.len() * chars.len()).pow(th as u32);
        for code in 0..count {
            let mut c = code;
            let mut g = Vec::new();
            let mut chi = Vec::new();
            for _ in 0..th {
                g.push(elems[c % 4].clone());
                chi.push(chars[(c / 4) % 4].clone());
                c /= 16;
            }
            let r = Realization { gamma: gamma.clone(), g, chi };
            let d = DiagonalDatum::from_realization(2, r).unwrap();
            let base = hilbert_prefix(&d, 6, &primes).unwrap().dims;
            for a in &alphas {
                let t = twist_braiding(&d, a).unwrap();
                assert_eq!(hilbert_prefix(&t, 6, &primes).unwrap().dims, base, "{:?} by {:?}", d.matrix(), a.table());
            }
        }
    }
}

proptest! {
    #![proptest_config(common::proptest_config(100))]

    #[test]
    fn blockwise_ranks_match_the_permutation_sum(d in datum_strategy()) {
        let p = default_primes(d.modulus(), 1)[0];
        let hp = hilbert_prefix(&d, 4, &[p]).unwrap();
        for n in 1..=4usize {
            let dim = d.rank().pow(n as u32);
            let mut oracle = common::permutation_symmetrizer(&d, n, p);
            let mut global = global_symmetrizer(&d, n, p).unwrap();
            prop_assert_eq!(&global, &oracle);
            prop_assert_eq!(rank_mod_p(&mut oracle, dim, dim, p), hp.dims[n]);
            prop_assert_eq!(rank_mod_p(&mut global, dim, dim, p), hp.dims[n]);
        }
    }

    #[test]
    fn prefixes_are_graded_and_bounded(d in datum_strategy()) {
        let hp = hilbert_prefix(&d, 6, &default_primes(d.modulus(), 3)).unwrap();
        prop_assert!(hp.agreement);
        prop_assert_eq!(hp.dims[0], 1);
        prop_assert_eq!(hp.dims[1], d.rank());
        for n in 0..hp.dims.len() {
            prop_assert!(hp.dims[n] <= d.rank().pow(n as u32));
            if hp.dims[n] == 0 {
                prop_assert!(hp.dims[n..].iter().all(|&x| x == 0));
            }
        }
    }
}
