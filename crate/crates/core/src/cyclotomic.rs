//! Exact arithmetic in `Z[ζ_n]`.
//!
//! Elements are integer polynomials in `ζ = ζ_n` reduced modulo the cyclotomic
//! polynomial `Φ_n`, so two elements are equal iff their coefficient vectors
//! are. Only roots of unity are ever inverted.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::gcd;
use crate::error::{Error, Result};

/// An element of `Z[ζ_n]`, coefficients of `1, ζ, …, ζ^{φ(n)-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyc(Vec<i64>);

impl Cyc {
    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycRing {
    order: u64,
    /// Monic `Φ_n`, lowest degree first.
    phi: Vec<i64>,
    powers: Vec<Cyc>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let mut q = vec![0i64; rem.len() - dn];
    for i in (0..q.len()).rev() {
        let c = rem[i + dn];
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// `Φ_n` as a coefficient vector, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = poly_div_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

impl CycRing {
    pub fn new(order: u64) -> Result<Self> {
        if order == 0 || order > 4096 {
            return Err(Error::InvalidInput("cyclotomic order must be in 1..=4096".into()));
        }
        let phi = cyclotomic_polynomial(order);
        let mut ring = CycRing { order, phi, powers: Vec::new() };
        let powers = (0..order)
            .map(|e| {
                let mut v = vec![0i64; e as usize + 1];
                v[e as usize] = 1;
                ring.reduce(v)
            })
            .collect();
        ring.powers = powers;
        Ok(ring)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `φ(n)`, the rank of `Z[ζ_n]` over `Z`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    fn reduce(&self, mut v: Vec<i64>) -> Cyc {
        let d = self.degree();
        while v.len() > d {
            let top = v.pop().unwrap_or(0);
            if top != 0 {
                let base = v.len() - d;
                for (j, &c) in self.phi[..d].iter().enumerate() {
                    v[base + j] -= top * c;
                }
            }
        }
        v.resize(d, 0);
        Cyc(v)
    }

    /// Builds an element from power-basis coefficients (any length).
    pub fn from_coeffs(&self, v: &[i64]) -> Cyc {
        self.reduce(v.to_vec())
    }

    pub fn zero(&self) -> Cyc {
        Cyc(vec![0; self.degree()])
    }

    pub fn one(&self) -> Cyc {
        self.int(1)
    }

    pub fn int(&self, z: i64) -> Cyc {
        let mut v = vec![0; self.degree()];
        v[0] = z;
        Cyc(v)
    }

    /// `ζ_n^e` for any integer `e`.
    pub fn root(&self, e: i64) -> Cyc {
        self.powers[e.rem_euclid(self.order as i64) as usize].clone()
    }

    /// `ζ_m^e` where `m` divides `n`.
    pub fn root_of(&self, m: u64, e: i64) -> Result<Cyc> {
        if m == 0 || self.order % m != 0 {
            return Err(Error::ModulusMismatch { left: m, right: self.order });
        }
        Ok(self.root(e.rem_euclid(m as i64) * (self.order / m) as i64))
    }

    pub fn is_zero(&self, a: &Cyc) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn add_assign(&self, a: &mut Cyc, b: &Cyc) {
        for (x, y) in a.0.iter_mut().zip(&b.0) {
            *x += y;
        }
    }

    pub fn sub(&self, a: &Cyc, b: &Cyc) -> Cyc {
        Cyc(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &Cyc) -> Cyc {
        Cyc(a.0.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        let d = self.degree();
        if d == 1 {
            return Cyc(vec![a.0[0] * b.0[0]]);
        }
        let mut v = vec![0i64; 2 * d - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        self.reduce(v)
    }

    pub fn mul_root(&self, a: &Cyc, e: i64) -> Cyc {
        self.mul(a, &self.root(e))
    }

    pub fn pow(&self, a: &Cyc, mut k: u32) -> Cyc {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// The exponent `e` with `a = ζ_n^e`, if `a` is an `n`-th root of unity.
    pub fn as_root(&self, a: &Cyc) -> Option<u64> {
        self.powers.iter().position(|p| p == a).map(|e| e as u64)
    }

    /// `a = z·ζ^e` for an integer `z ≠ 0`; the smallest such `e` is returned.
    pub fn as_scaled_root(&self, a: &Cyc) -> Option<(i64, u64)> {
        for (e, p) in self.powers.iter().enumerate() {
            let k = p.0.iter().position(|&c| c != 0)?;
            if a.0[k] % p.0[k] != 0 {
                continue;
            }
            let z = a.0[k] / p.0[k];
            if z != 0 && a.0.iter().zip(&p.0).all(|(&x, &y)| x == z * y) {
                return Some((z, e as u64));
            }
        }
        None
    }

    /// Inverse of a root of unity; `None` for anything else.
    pub fn inv_root(&self, a: &Cyc) -> Option<Cyc> {
        self.as_root(a).map(|e| self.root(-(e as i64)))
    }

    /// Inverse of `±ζ^e`.
    pub fn inv_unit(&self, a: &Cyc) -> Option<Cyc> {
        self.inv_root(a).or_else(|| self.inv_root(&self.neg(a)).map(|b| self.neg(&b)))
    }

    /// Gaussian binomial `[j choose k]_q` with `q = ζ_n^e`.
    pub fn q_binomial(&self, j: u32, k: u32, e: i64) -> Cyc {
        if k > j {
            return self.zero();
        }
        // Pascal rule [j,k] = [j-1,k-1] + q^k [j-1,k]
        let mut row = vec![self.one()];
        for jj in 1..=j as usize {
            let mut next = vec![self.zero(); jj + 1];
            for kk in 0..=jj {
                let mut v = self.zero();
                if kk >= 1 {
                    v = self.add(&v, &row[kk - 1]);
                }
                if kk < jj {
                    v = self.add(&v, &self.mul_root(&row[kk], e * kk as i64));
                }
                next[kk] = v;
            }
            row = next;
        }
        row[k as usize].clone()
    }

    /// Ring containing both `Z[ζ_a]` and `Z[ζ_b]`.
    pub fn common_order(a: u64, b: u64) -> u64 {
        a / gcd(a, b) * b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_multiply_and_sum_to_zero() {
        for n in [2u64, 3, 4, 6, 8, 9, 12] {
            let r = CycRing::new(n).unwrap();
            let mut s = r.zero();
            for e in 0..n as i64 {
                s = r.add(&s, &r.root(e));
                for f in 0..n as i64 {
                    assert_eq!(r.mul(&r.root(e), &r.root(f)), r.root(e + f));
                }
            }
            assert!(r.is_zero(&s), "n={n}");
        }
    }

    #[test]
    fn units_and_roots_are_recognized() {
        let r = CycRing::new(12).unwrap();
        assert_eq!(r.as_root(&r.root(7)), Some(7));
        assert_eq!(r.as_root(&r.int(2)), None);
        assert_eq!(r.as_scaled_root(&r.mul(&r.int(-3), &r.root(5))).map(|(z, e)| r.mul(&r.int(z), &r.root(e as i64))), Some(r.mul(&r.int(-3), &r.root(5))));
        let u = r.neg(&r.root(5));
        assert_eq!(r.mul(&u, &r.inv_unit(&u).unwrap()), r.one());
        let two = r.int(2);
        assert!(r.inv_unit(&two).is_none());
    }

    #[test]
    fn q_binomials_at_roots_of_unity() {
        let r = CycRing::new(4).unwrap();
        // q = i: [2,1] = 1 + i, [4,k] = 0 for 0 < k < 4
        assert_eq!(r.q_binomial(2, 1, 1), r.add(&r.one(), &r.root(1)));
        for k in 1..4 {
            assert!(r.is_zero(&r.q_binomial(4, k, 1)));
        }
        let r = CycRing::new(1).unwrap();
        assert_eq!(r.q_binomial(5, 2, 0), r.int(10));
    }
}
