//! Diagonal braidings and graded dimensions of their Nichols algebras.
//!
//! `dim B(V)_n` is the rank of the quantum symmetrizer on `V^{⊗n}`. The
//! symmetrizer preserves the multiset of letters of a word, so it is computed
//! block by block with the recursion
//!
//! ```text
//! S_n(w) = Σ_j (Π_{t>j} q_{w_j w_t}) · S_{n-1}(w without w_j) ⊗ x_{w_j}
//! ```
//!
//! coming from `S_n = (S_{n-1} ⊗ id)(1 + c_{n-1} + c_{n-1}c_{n-2} + … )`.
//! Ranks are taken over prime fields `F_p` with `p ≡ 1 mod N`, where a fixed
//! element of order `N` stands in for `ζ_N`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{factor, is_prime, lcm, pow_mod};
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::group::{Character, FinAbGroup, GroupElement};

/// A realization `q_ij = χ_j(g_i)` over a group `Γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub gamma: FinAbGroup,
    pub g: Vec<GroupElement>,
    pub chi: Vec<Character>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalDatum {
    rank: usize,
    modulus: u64,
    q: Vec<u64>,
    realization: Option<Realization>,
}

impl DiagonalDatum {
    /// `q[i·θ + j]` is the exponent of `q_ij`.
    pub fn new(rank: usize, modulus: u64, q: Vec<u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidInput("modulus must be positive".into()));
        }
        if q.len() != rank * rank {
            return Err(Error::InvalidInput(format!(
                "braiding matrix has {} entries, expected {}",
                q.len(),
                rank * rank
            )));
        }
        let q = q.into_iter().map(|x| x % modulus).collect();
        Ok(DiagonalDatum { rank, modulus, q, realization: None })
    }

    /// Builds the matrix from `q_ij = χ_j(g_i)`, written at modulus `N`.
    /// `N` must be a multiple of the exponent of `Γ`.
    pub fn from_realization(modulus: u64, realization: Realization) -> Result<Self> {
        let Realization { gamma, g, chi } = &realization;
        if g.len() != chi.len() {
            return Err(Error::InvalidInput("need one character per group element".into()));
        }
        if g.iter().any(|x| !gamma.contains(x)) || chi.iter().any(|c| c.group() != gamma) {
            return Err(Error::GroupMismatch);
        }
        let e = gamma.exponent();
        if modulus % e != 0 {
            return Err(Error::ModulusMismatch { left: modulus, right: e });
        }
        let th = g.len();
        let mut q = vec![0; th * th];
        for i in 0..th {
            for j in 0..th {
                q[i * th + j] = chi[j].eval(&g[i]) * (modulus / e) % modulus;
            }
        }
        Ok(DiagonalDatum { rank: th, modulus, q, realization: Some(realization) })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn q(&self, i: usize, j: usize) -> u64 {
        self.q[i * self.rank + j]
    }

    pub fn matrix(&self) -> &[u64] {
        &self.q
    }

    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_ref()
    }

    /// The same braiding written at modulus `N·factor`.
    pub fn lift(&self, factor: u64) -> Self {
        DiagonalDatum {
            rank: self.rank,
            modulus: self.modulus * factor,
            q: self.q.iter().map(|&x| x * factor).collect(),
            realization: self.realization.clone(),
        }
    }

    /// `c_1 c_2 c_1 = c_2 c_1 c_2` on `V^{⊗3}` over `F_p`.
    pub fn braid_relation_holds(&self, prime: u64) -> Result<bool> {
        let z = root_of_unity(prime, self.modulus)?;
        let th = self.rank;
        let s = |i: usize, j: usize| pow_mod(z, self.q(i, j), prime);
        // Apply c at position `pos` to a scaled word.
        let c = |pos: usize, (mut w, k): ([usize; 3], u64)| {
            let k = k * s(w[pos], w[pos + 1]) % prime;
            w.swap(pos, pos + 1);
            (w, k)
        };
        for a in 0..th {
            for b in 0..th {
                for d in 0..th {
                    let w = ([a, b, d], 1);
                    if c(0, c(1, c(0, w))) != c(1, c(0, c(1, w))) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// `q'_ij = q_ij + α(g_i,g_j) − α(g_j,g_i)` with `α` a 2-cochain on the
/// realizing group `Γ`, evaluated at the realization elements. The result is
/// written at modulus `lcm(N, modulus(α))` and carries no realization.
pub fn twist_braiding(d: &DiagonalDatum, alpha: &Cochain) -> Result<DiagonalDatum> {
    let r = d
        .realization()
        .ok_or_else(|| Error::InvalidInput("twisting needs a realization over Γ".into()))?;
    if alpha.degree() != 2 {
        return Err(Error::DegreeOutOfRange(alpha.degree()));
    }
    if alpha.group() != &r.gamma {
        return Err(Error::GroupMismatch);
    }
    let l = lcm(d.modulus, alpha.modulus());
    let (fd, fa) = (l / d.modulus, l / alpha.modulus());
    let th = d.rank;
    let idx: Vec<usize> = r.g.iter().map(|x| r.gamma.element_index(x)).collect();
    let mut q = vec![0; th * th];
    for i in 0..th {
        for j in 0..th {
            let ratio = (alpha.at(&[idx[i], idx[j]]) + alpha.modulus()
                - alpha.at(&[idx[j], idx[i]]))
                % alpha.modulus();
            q[i * th + j] = (d.q(i, j) * fd + ratio * fa) % l;
        }
    }
    DiagonalDatum::new(th, l, q)
}

/// An element of multiplicative order exactly `n` in `F_p`.
pub fn root_of_unity(p: u64, n: u64) -> Result<u64> {
    if !is_prime(p) || (p - 1) % n != 0 {
        return Err(Error::InvalidInput(format!("{p} is not a prime congruent to 1 mod {n}")));
    }
    let primes: Vec<u64> = factor(n).into_iter().map(|(r, _)| r).collect();
    for a in 2..p {
        let z = pow_mod(a, (p - 1) / n, p);
        if primes.iter().all(|&r| pow_mod(z, n / r, p) != 1) {
            return Ok(z);
        }
    }
    Err(Error::InvalidInput(format!("no element of order {n} mod {p}")))
}

/// The first `count` primes `p ≡ 1 mod n` above `2^30`.
pub fn default_primes(n: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let start = (1u64 << 30) / n + 1;
    let mut k = start;
    while out.len() < count {
        let p = k * n + 1;
        if is_prime(p) {
            out.push(p);
        }
        k += 1;
    }
    out
}

/// Size limit on the symmetrizer computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NicholsBudget {
    /// Upper bound on `θ^n`, the dimension of `V^{⊗n}`.
    pub max_words: usize,
}

impl Default for NicholsBudget {
    fn default() -> Self {
        NicholsBudget { max_words: 1 << 20 }
    }
}

/// Rank of an `r × c` matrix over `F_p`, destroying it.
pub fn rank_mod_p(a: &mut [u64], rows: usize, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + col] != 0) else { continue };
        for j in 0..cols {
            a.swap(piv * cols + j, rank * cols + j);
        }
        let inv = pow_mod(a[rank * cols + col], p - 2, p);
        for r in rank + 1..rows {
            let f = a[r * cols + col] * inv % p;
            if f == 0 {
                continue;
            }
            for j in col..cols {
                let s = a[rank * cols + j];
                if s != 0 {
                    let v = &mut a[r * cols + j];
                    *v = (*v + p - f * s % p) % p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Symmetrizer columns for every block of one degree, keyed by letter counts.
/// Each block stores its sorted word list and a column-major matrix.
struct Level {
    blocks: BTreeMap<Vec<usize>, Block>,
}

struct Block {
    words: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
    /// `cols[w]` is the image of word `w` (a vector over `words`).
    cols: Vec<Vec<u64>>,
}

fn words_with_counts(counts: &[usize]) -> Vec<Vec<usize>> {
    let n: usize = counts.iter().sum();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut left = counts.to_vec();
    fn rec(left: &mut [usize], cur: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(i);
                rec(left, cur, n, out);
                cur.pop();
                left[i] += 1;
            }
        }
    }
    rec(&mut left, &mut cur, n, &mut out);
    out
}

fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

struct Symmetrizer<'a> {
    d: &'a DiagonalDatum,
    p: u64,
    /// `s[i][j] = z^{q_ij}`.
    s: Vec<Vec<u64>>,
}

impl<'a> Symmetrizer<'a> {
    fn new(d: &'a DiagonalDatum, p: u64) -> Result<Self> {
        let z = root_of_unity(p, d.modulus)?;
        let th = d.rank;
        let s = (0..th).map(|i| (0..th).map(|j| pow_mod(z, d.q(i, j), p)).collect()).collect();
        Ok(Symmetrizer { d, p, s })
    }

    fn level_one(&self) -> Level {
        let th = self.d.rank;
        let mut blocks = BTreeMap::new();
        for i in 0..th {
            let mut counts = vec![0; th];
            counts[i] = 1;
            let w = vec![i];
            blocks.insert(
                counts,
                Block {
                    words: vec![w.clone()],
                    index: BTreeMap::from([(w, 0)]),
                    cols: vec![vec![1]],
                },
            );
        }
        Level { blocks }
    }

    fn next_level(&self, prev: &Level, n: usize) -> Level {
        let th = self.d.rank;
        let p = self.p;
        let mut blocks = BTreeMap::new();
        for counts in compositions(n, th) {
            let words = words_with_counts(&counts);
            let index: BTreeMap<Vec<usize>, usize> =
                words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
            let mut cols = Vec::with_capacity(words.len());
            for w in &words {
                let mut col = vec![0u64; words.len()];
                for j in 0..n {
                    let letter = w[j];
                    let coeff = w[j + 1..].iter().fold(1u64, |acc, &t| acc * self.s[letter][t] % p);
                    let mut sub = w.clone();
                    sub.remove(j);
                    let mut sub_counts = counts.clone();
                    sub_counts[letter] -= 1;
                    let blk = &prev.blocks[&sub_counts];
                    let src = &blk.cols[blk.index[&sub]];
                    for (k, &v) in src.iter().enumerate() {
                        if v == 0 {
                            continue;
                        }
                        let mut target = blk.words[k].clone();
                        target.push(letter);
                        let t = index[&target];
                        col[t] = (col[t] + coeff * v) % p;
                    }
                }
                cols.push(col);
            }
            blocks.insert(counts, Block { words, index, cols });
        }
        Level { blocks }
    }

    fn level_rank(&self, level: &Level) -> usize {
        level
            .blocks
            .values()
            .map(|b| {
                let m = b.words.len();
                let mut a = vec![0u64; m * m];
                for (c, col) in b.cols.iter().enumerate() {
                    for (r, &v) in col.iter().enumerate() {
                        a[r * m + c] = v;
                    }
                }
                rank_mod_p(&mut a, m, m, self.p)
            })
            .sum()
    }

    /// Ranks in degrees `0..=cutoff`.
    fn ranks(&self, cutoff: usize) -> Vec<usize> {
        let mut out = vec![1];
        if cutoff == 0 {
            return out;
        }
        let mut level = self.level_one();
        out.push(self.d.rank);
        for n in 2..=cutoff {
            level = self.next_level(&level, n);
            out.push(self.level_rank(&level));
        }
        out
    }
}

fn check_budget(d: &DiagonalDatum, n: usize, budget: &NicholsBudget) -> Result<()> {
    let words = (d.rank as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if words > budget.max_words as u128 {
        return Err(Error::BudgetExceeded(format!(
            "V^{{⊗{n}}} has dimension {words} (limit {})",
            budget.max_words
        )));
    }
    Ok(())
}

/// `dim B(V)_n`, the maximum of the symmetrizer ranks over the given primes.
pub fn symmetrizer_rank(d: &DiagonalDatum, n: usize, primes: &[u64]) -> Result<usize> {
    Ok(hilbert_prefix(d, n, primes)?.dims[n])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPrefix {
    pub dims: Vec<usize>,
    pub primes_used: Vec<u64>,
    /// Whether every prime produced the same ranks.
    pub agreement: bool,
    pub per_prime: Vec<Vec<usize>>,
}

pub fn hilbert_prefix(d: &DiagonalDatum, cutoff: usize, primes: &[u64]) -> Result<HilbertPrefix> {
    hilbert_prefix_with(d, cutoff, primes, &NicholsBudget::default())
}

pub fn hilbert_prefix_with(
    d: &DiagonalDatum,
    cutoff: usize,
    primes: &[u64],
    budget: &NicholsBudget,
) -> Result<HilbertPrefix> {
    if primes.is_empty() {
        return Err(Error::InvalidInput("at least one prime is required".into()));
    }
    check_budget(d, cutoff, budget)?;
    let mut per_prime = Vec::with_capacity(primes.len());
    for &p in primes {
        per_prime.push(Symmetrizer::new(d, p)?.ranks(cutoff));
    }
    let dims: Vec<usize> =
        (0..=cutoff).map(|n| per_prime.iter().map(|r| r[n]).max().unwrap_or(0)).collect();
    let agreement = per_prime.iter().all(|r| *r == dims);
    Ok(HilbertPrefix { dims, primes_used: primes.to_vec(), agreement, per_prime })
}

/// The full `θ^n × θ^n` symmetrizer over `F_p` (words in base-θ order,
/// first letter most significant). Used to cross-check the block recursion.
pub fn global_symmetrizer(d: &DiagonalDatum, n: usize, p: u64) -> Result<Vec<u64>> {
    let sym = Symmetrizer::new(d, p)?;
    let th = d.rank;
    let dim = th.pow(n as u32);
    let mut out = vec![0u64; dim * dim];
    if n == 0 {
        return Ok(vec![1]);
    }
    let mut level = sym.level_one();
    for k in 2..=n {
        level = sym.next_level(&level, k);
    }
    let code = |w: &[usize]| w.iter().fold(0, |acc, &x| acc * th + x);
    for b in level.blocks.values() {
        for (c, col) in b.cols.iter().enumerate() {
            for (r, &v) in col.iter().enumerate() {
                out[code(&b.words[r]) * dim + code(&b.words[c])] = v;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_and_primes() {
        let ps = default_primes(12, 3);
        assert_eq!(ps.len(), 3);
        for &p in &ps {
            assert!(p > 1 << 30 && p % 12 == 1);
            let z = root_of_unity(p, 12).unwrap();
            assert_eq!(pow_mod(z, 12, p), 1);
            assert_ne!(pow_mod(z, 6, p), 1);
            assert_ne!(pow_mod(z, 4, p), 1);
        }
    }

    #[test]
    fn exterior_line() {
        let d = DiagonalDatum::new(1, 2, vec![1]).unwrap();
        let h = hilbert_prefix(&d, 3, &default_primes(2, 2)).unwrap();
        assert_eq!(h.dims, vec![1, 1, 0, 0]);
    }

    #[test]
    fn quantum_plane_at_minus_one() {
        let d = DiagonalDatum::new(2, 2, vec![1, 0, 0, 1]).unwrap();
        let h = hilbert_prefix(&d, 4, &default_primes(2, 3)).unwrap();
        assert_eq!(h.dims, vec![1, 2, 1, 0, 0]);
        assert!(h.agreement);
    }

    #[test]
    fn symmetric_algebra() {
        let d = DiagonalDatum::new(2, 1, vec![0, 0, 0, 0]).unwrap();
        let h = hilbert_prefix(&d, 5, &default_primes(1, 1)).unwrap();
        assert_eq!(h.dims, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn braid_relation() {
        let d = DiagonalDatum::new(2, 6, vec![1, 2, 3, 5]).unwrap();
        assert!(d.braid_relation_holds(default_primes(6, 1)[0]).unwrap());
    }
}
