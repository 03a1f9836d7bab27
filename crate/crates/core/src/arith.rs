//! Small integer helpers shared by the modular solvers.

use alloc::vec::Vec;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Prime factorization by trial division, ascending primes.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor(n).len() == 1 && factor(n)[0].1 == 1
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Extended Euclid: returns (g, x, y) with a*x + b*y = g.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd(a as i128 % m as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

/// Reduce a signed value into `0..m`.
pub fn reduce(v: i64, m: u64) -> u64 {
    v.rem_euclid(m as i64) as u64
}

/// Chinese remaindering of `(residue, modulus)` pairs with pairwise coprime moduli.
pub fn crt(parts: &[(u64, u64)]) -> (u64, u64) {
    let mut r: u128 = 0;
    let mut m: u128 = 1;
    for &(ri, mi) in parts {
        let mi = mi as u128;
        // r + m*t == ri (mod mi)
        let inv = inv_mod((m % mi) as u64, mi as u64).expect("moduli must be coprime") as u128;
        let diff = ((ri as u128 % mi) + mi - r % mi) % mi;
        let t = diff * inv % mi;
        r += m * t;
        m *= mi;
        r %= m;
    }
    (r as u64, m as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_small() {
        assert_eq!(factor(1), Vec::<(u64, u32)>::new());
        assert_eq!(factor(12), alloc::vec![(2, 2), (3, 1)]);
        assert_eq!(factor(97), alloc::vec![(97, 1)]);
    }

    #[test]
    fn crt_roundtrip() {
        let (r, m) = crt(&[(1, 4), (2, 9), (3, 5)]);
        assert_eq!(m, 180);
        assert_eq!((r % 4, r % 9, r % 5), (1, 2, 3));
    }

    #[test]
    fn inverse() {
        assert_eq!(inv_mod(3, 8), Some(3));
        assert_eq!(inv_mod(2, 8), None);
    }
}
