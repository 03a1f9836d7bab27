#![allow(dead_code)]

use cocycle_core::cochain::{coboundary, Cochain};
use cocycle_core::FinAbGroup;
use proptest::test_runner::{Config, RngSeed};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seed for every randomized test; override with `COCYCLE_TEST_SEED`.
pub fn seed() -> u64 {
    std::env::var("COCYCLE_TEST_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x5eed_c0c1)
}

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn proptest_config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed()),
        failure_persistence: None,
        ..Config::default()
    }
}

/// Groups of order at most 8 used by the exhaustive and sampled suites.
pub fn small_groups() -> Vec<FinAbGroup> {
    [&[2u64][..], &[3], &[4], &[5], &[6], &[7], &[8], &[2, 2], &[2, 4], &[2, 2, 2]]
        .iter()
        .map(|f| FinAbGroup::new(f).unwrap())
        .collect()
}

/// A uniformly random normalized cochain.
pub fn random_cochain(rng: &mut impl Rng, g: &FinAbGroup, degree: usize, modulus: u64) -> Cochain {
    Cochain::from_index_fn(g, degree, modulus, |a| {
        if a.contains(&0) {
            0
        } else {
            rng.gen_range(0..modulus) as i64
        }
    })
    .unwrap()
}

/// `ω + δβ` for a random 2-cochain `β`.
pub fn shift_by_coboundary(rng: &mut impl Rng, omega: &Cochain) -> Cochain {
    let beta = random_cochain(rng, omega.group(), omega.degree() - 1, omega.modulus());
    omega.add(&coboundary(&beta).unwrap()).unwrap()
}

/// Every quadratic form `Σ d_i x_i² + Σ_{i<j} f_ij x_i x_j` with exponents
/// in `Z/modulus`, deduplicated by value table.
pub fn all_quadratic_forms(g: &FinAbGroup, modulus: u64) -> Vec<cocycle_core::abelian::QuadraticForm> {
    use cocycle_core::abelian::QuadraticForm;
    let r = g.rank();
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect();
    let slots = r + pairs.len();
    let total = (modulus as usize).pow(slots as u32);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut digits = Vec::with_capacity(slots);
        for _ in 0..slots {
            digits.push((c % modulus as usize) as u64);
            c /= modulus as usize;
        }
        let diag = &digits[..r];
        let mut cross = vec![vec![0u64; r]; r];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            cross[i][j] = digits[r + k];
        }
        if let Ok(q) = QuadraticForm::from_coefficients(g, modulus, diag, &cross) {
            if seen.insert(q.values().to_vec()) {
                out.push(q);
            }
        }
    }
    out
}

/// Coefficients of `∏_i (1 + t + … + t^{n_i − 1})` up to degree `cutoff`.
pub fn truncated_product(heights: &[usize], cutoff: usize) -> Vec<usize> {
    let mut poly = vec![0usize; cutoff + 1];
    poly[0] = 1;
    for &n in heights {
        let mut next = vec![0usize; cutoff + 1];
        for (d, &c) in poly.iter().enumerate() {
            for k in 0..n {
                if d + k <= cutoff {
                    next[d + k] += c;
                }
            }
        }
        poly = next;
    }
    poly
}

/// A random cohomology class at modulus `N`, presented by a random cocycle in it.
pub fn random_cocycle(rng: &mut impl Rng, g: &FinAbGroup, modulus: u64) -> Cochain {
    let h = cocycle_core::cochain::cohomology_group(g, 3, modulus).unwrap();
    let mut w = Cochain::zero(g, 3, modulus).unwrap();
    for (rep, &d) in h.representatives.iter().zip(&h.invariant_factors) {
        w = w.add(&rep.scale(rng.gen_range(0..d) as i64)).unwrap();
    }
    shift_by_coboundary(rng, &w)
}

/// `Σ_{σ ∈ S_n} T_σ` on `V^{⊗n}` over `F_p`, summed permutation by permutation.
/// Moving letter `a` past a later letter `b` costs `q_ab`. Words are base-θ
/// with the first letter most significant; rows index the output word.
pub fn permutation_symmetrizer(d: &cocycle_core::nichols::DiagonalDatum, n: usize, p: u64) -> Vec<u64> {
    use cocycle_core::arith::pow_mod;
    let z = cocycle_core::nichols::root_of_unity(p, d.modulus()).unwrap();
    let th = d.rank();
    let dim = th.pow(n as u32);
    let mut out = vec![0u64; dim * dim];
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        for code in 0..dim {
            let mut w = vec![0usize; n];
            let mut c = code;
            for k in (0..n).rev() {
                w[k] = c % th;
                c /= th;
            }
            // output position k holds input letter perm[k]
            let mut scalar = 1u64;
            for k in 0..n {
                for l in k + 1..n {
                    let (a, b) = (perm[k], perm[l]);
                    if a > b {
                        scalar = scalar * pow_mod(z, d.q(w[b], w[a]), p) % p;
                    }
                }
            }
            let target = perm.iter().fold(0, |acc, &i| acc * th + w[i]);
            let cell = &mut out[target * dim + code];
            *cell = (*cell + scalar) % p;
        }
        // next permutation in lexicographic order
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else { break };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    out
}
