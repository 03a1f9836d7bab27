//! Finite-dimensional coquasi-Hopf algebras as explicit structure tables.
//!
//! All scalars live in one exact ring `Z[ζ_L]`. A basis vector is a sparse list
//! of `(index, coefficient)` pairs sorted by index with zero entries dropped,
//! so vector equality is structural.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::arith::lcm;
use crate::cochain::{coboundary, is_cocycle, pullback, Cochain};
use crate::cyclotomic::{Cyc, CycRing};
use crate::error::{Error, Result};
use crate::group::{Character, GroupElement, GroupHom};

pub type Vector = Vec<(usize, Cyc)>;
pub type Tensor2 = Vec<(usize, usize, Cyc)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Antipode {
    pub s: Vec<Vector>,
    pub alpha: Vec<Cyc>,
    pub beta: Vec<Cyc>,
}

/// Structure constants of a coquasi-Hopf algebra on a fixed basis.
///
/// `mul[i*d + j]` is `e_i e_j`, `comul[i]` is `Δ(e_i)`, and `omega[(i*d + j)*d + k]`
/// is `Ω(e_i, e_j, e_k)`; `omega_inv` is the convolution inverse of `Ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoquasiData {
    pub ring: CycRing,
    pub labels: Vec<String>,
    pub unit: usize,
    pub counit: Vec<Cyc>,
    pub mul: Vec<Vector>,
    pub comul: Vec<Tensor2>,
    pub omega: Vec<Cyc>,
    pub omega_inv: Vec<Cyc>,
    pub antipode: Option<Antipode>,
    pub r_form: Option<Vec<Cyc>>,
}

struct Acc<'a, K: Ord> {
    ring: &'a CycRing,
    map: BTreeMap<K, Cyc>,
}

impl<'a, K: Ord> Acc<'a, K> {
    fn new(ring: &'a CycRing) -> Self {
        Acc { ring, map: BTreeMap::new() }
    }

    fn push(&mut self, k: K, c: Cyc) {
        if self.ring.is_zero(&c) {
            return;
        }
        match self.map.get_mut(&k) {
            Some(v) => self.ring.add_assign(v, &c),
            None => {
                self.map.insert(k, c);
            }
        }
    }

    fn finish(self) -> Vec<(K, Cyc)> {
        let ring = self.ring;
        self.map.into_iter().filter(|(_, v)| !ring.is_zero(v)).collect()
    }
}

/// Iterated coproducts `Δ^{(k-1)}(e_i)` for `k = 1..=max_parts`.
struct Coproducts {
    by_parts: Vec<Vec<Vec<(Vec<usize>, Cyc)>>>,
}

impl Coproducts {
    fn new(h: &CoquasiData, max_parts: usize) -> Self {
        let d = h.dim();
        let ring = &h.ring;
        let mut by_parts = vec![(0..d).map(|i| vec![(vec![i], ring.one())]).collect::<Vec<_>>()];
        for _ in 1..max_parts {
            let prev = by_parts.last().expect("nonempty");
            let next = prev
                .iter()
                .map(|terms| {
                    let mut acc = Acc::new(ring);
                    for (t, c) in terms {
                        let (last, head) = t.split_last().expect("nonempty tuple");
                        for (a, b, v) in &h.comul[*last] {
                            let mut key = head.to_vec();
                            key.push(*a);
                            key.push(*b);
                            acc.push(key, ring.mul(c, v));
                        }
                    }
                    acc.finish()
                })
                .collect();
            by_parts.push(next);
        }
        Coproducts { by_parts }
    }

    fn get(&self, i: usize, parts: usize) -> &[(Vec<usize>, Cyc)] {
        &self.by_parts[parts - 1][i]
    }
}

impl CoquasiData {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn product(&self, i: usize, j: usize) -> &Vector {
        &self.mul[i * self.dim() + j]
    }

    pub fn omega_at(&self, i: usize, j: usize, k: usize) -> &Cyc {
        let d = self.dim();
        &self.omega[(i * d + j) * d + k]
    }

    pub fn omega_inv_at(&self, i: usize, j: usize, k: usize) -> &Cyc {
        let d = self.dim();
        &self.omega_inv[(i * d + j) * d + k]
    }

    /// Checks table sizes, index ranges and scalar widths.
    pub fn check_shape(&self) -> Result<()> {
        let d = self.dim();
        let w = self.ring.degree();
        let bad = |what: &str| Err(Error::InvalidInput(format!("malformed {what} table")));
        let scalar_ok = |c: &Cyc| c.coeffs().len() == w;
        let vec_ok = |v: &Vector| v.iter().all(|(i, c)| *i < d && scalar_ok(c));
        if d == 0 || self.unit >= d {
            return bad("unit");
        }
        if self.counit.len() != d || !self.counit.iter().all(scalar_ok) {
            return bad("counit");
        }
        if self.mul.len() != d * d || !self.mul.iter().all(vec_ok) {
            return bad("multiplication");
        }
        if self.comul.len() != d
            || !self.comul.iter().all(|t| t.iter().all(|(a, b, c)| *a < d && *b < d && scalar_ok(c)))
        {
            return bad("comultiplication");
        }
        for (t, name) in [(&self.omega, "Omega"), (&self.omega_inv, "Omega inverse")] {
            if t.len() != d * d * d || !t.iter().all(scalar_ok) {
                return bad(name);
            }
        }
        if let Some(a) = &self.antipode {
            if a.s.len() != d || !a.s.iter().all(vec_ok) {
                return bad("antipode");
            }
            if a.alpha.len() != d || a.beta.len() != d || !a.alpha.iter().chain(&a.beta).all(scalar_ok) {
                return bad("alpha/beta");
            }
        }
        if let Some(r) = &self.r_form {
            if r.len() != d * d || !r.iter().all(scalar_ok) {
                return bad("r-form");
            }
        }
        Ok(())
    }

    /// The same algebra over `Z[ζ_order]`, where the current order divides `order`.
    pub fn extend_scalars(&self, order: u64) -> Result<CoquasiData> {
        let from = self.ring.order();
        if order % from != 0 {
            return Err(Error::ModulusMismatch { left: from, right: order });
        }
        if order == from {
            return Ok(self.clone());
        }
        let ring = CycRing::new(order)?;
        let step = (order / from) as i64;
        let conv = |c: &Cyc| {
            let mut acc = ring.zero();
            for (k, &x) in c.coeffs().iter().enumerate() {
                if x != 0 {
                    acc = ring.add(&acc, &ring.mul(&ring.int(x), &ring.root(k as i64 * step)));
                }
            }
            acc
        };
        let cv = |v: &Vector| v.iter().map(|(i, c)| (*i, conv(c))).collect::<Vector>();
        Ok(CoquasiData {
            labels: self.labels.clone(),
            unit: self.unit,
            counit: self.counit.iter().map(conv).collect(),
            mul: self.mul.iter().map(cv).collect(),
            comul: self.comul.iter().map(|t| t.iter().map(|(a, b, c)| (*a, *b, conv(c))).collect()).collect(),
            omega: self.omega.iter().map(conv).collect(),
            omega_inv: self.omega_inv.iter().map(conv).collect(),
            antipode: self.antipode.as_ref().map(|a| Antipode {
                s: a.s.iter().map(cv).collect(),
                alpha: a.alpha.iter().map(conv).collect(),
                beta: a.beta.iter().map(conv).collect(),
            }),
            r_form: self.r_form.as_ref().map(|r| r.iter().map(conv).collect()),
            ring,
        })
    }

    fn basis(&self, i: usize) -> Vector {
        vec![(i, self.ring.one())]
    }

    fn scale(&self, v: &Vector, c: &Cyc) -> Vector {
        let ring = &self.ring;
        v.iter()
            .map(|(i, x)| (*i, ring.mul(x, c)))
            .filter(|(_, x)| !ring.is_zero(x))
            .collect()
    }

    fn mul_vec(&self, x: &Vector, y: &Vector) -> Vector {
        let ring = &self.ring;
        let mut acc = Acc::new(ring);
        for (i, a) in x {
            for (j, b) in y {
                let ab = ring.mul(a, b);
                for (k, c) in self.product(*i, *j) {
                    acc.push(*k, ring.mul(&ab, c));
                }
            }
        }
        acc.finish()
    }

    fn sum_into(&self, acc: &mut Acc<'_, usize>, v: &Vector, c: &Cyc) {
        for (i, x) in v {
            acc.push(*i, self.ring.mul(x, c));
        }
    }

    fn omega_lin(&self, x: &Vector, y: &Vector, z: &Vector, inverse: bool) -> Cyc {
        let ring = &self.ring;
        let mut acc = ring.zero();
        for (i, a) in x {
            for (j, b) in y {
                let ab = ring.mul(a, b);
                for (k, c) in z {
                    let w = if inverse { self.omega_inv_at(*i, *j, *k) } else { self.omega_at(*i, *j, *k) };
                    if !ring.is_zero(w) {
                        ring.add_assign(&mut acc, &ring.mul(&ab, &ring.mul(c, w)));
                    }
                }
            }
        }
        acc
    }

    fn functional(&self, f: &[Cyc], v: &Vector) -> Cyc {
        let ring = &self.ring;
        let mut acc = ring.zero();
        for (i, c) in v {
            ring.add_assign(&mut acc, &ring.mul(c, &f[*i]));
        }
        acc
    }
}

/// Names of the individual identities checked by the verifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Coassociativity,
    Counit,
    UnitLaw,
    UnitCoalgebra,
    MulCoalgebraMap,
    CounitMultiplicative,
    QuasiAssociativity,
    OmegaNormalization,
    OmegaInverse,
    Pentagon,
    AntipodeAlpha,
    AntipodeBeta,
    AntipodeOmega,
    AntipodeOmegaInverse,
    AntipodeAntiCoalgebra,
    RBraiding,
    RLeft,
    RRight,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Coassociativity => "coassociativity",
            Check::Counit => "counit",
            Check::UnitLaw => "unit law",
            Check::UnitCoalgebra => "unit is a coalgebra map",
            Check::MulCoalgebraMap => "multiplication is a coalgebra map",
            Check::CounitMultiplicative => "counit is multiplicative",
            Check::QuasiAssociativity => "quasi-associativity",
            Check::OmegaNormalization => "Omega normalization",
            Check::OmegaInverse => "Omega convolution inverse",
            Check::Pentagon => "pentagon",
            Check::AntipodeAlpha => "antipode with alpha",
            Check::AntipodeBeta => "antipode with beta",
            Check::AntipodeOmega => "Omega against antipode",
            Check::AntipodeOmegaInverse => "Omega inverse against antipode",
            Check::AntipodeAntiCoalgebra => "antipode is an anti-coalgebra map",
            Check::RBraiding => "r-form commutation",
            Check::RLeft => "r-form on products in the second slot",
            Check::RRight => "r-form on products in the first slot",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub check: Check,
    pub args: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    /// Number of tuples examined per identity.
    pub checked: BTreeMap<Check, usize>,
    pub failures: Vec<Failure>,
    pub pentagon_skipped: bool,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failures_of(&self, check: Check) -> impl Iterator<Item = &Failure> {
        self.failures.iter().filter(move |f| f.check == check)
    }

    pub fn merge(&mut self, other: Report) {
        for (k, v) in other.checked {
            *self.checked.entry(k).or_insert(0) += v;
        }
        self.failures.extend(other.failures);
        self.failures.sort_by(|a, b| (a.check, &a.args).cmp(&(b.check, &b.args)));
        self.pentagon_skipped &= other.pentagon_skipped;
    }

    fn record(&mut self, check: Check, ok: bool, args: &[usize]) {
        *self.checked.entry(check).or_insert(0) += 1;
        if !ok {
            self.failures.push(Failure { check, args: args.to_vec() });
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Run the `d⁴` pentagon check.
    pub pentagon: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { pentagon: true }
    }
}

fn eps3(h: &CoquasiData, i: usize, j: usize, k: usize) -> Cyc {
    let r = &h.ring;
    r.mul(&h.counit[i], &r.mul(&h.counit[j], &h.counit[k]))
}

/// Coalgebra, unit, quasi-associativity and `Ω` checks; the pentagon only if enabled.
pub fn verify_coquasi_axioms(h: &CoquasiData, opts: &VerifyOptions) -> Result<Report> {
    h.check_shape()?;
    let d = h.dim();
    let ring = &h.ring;
    let cop = Coproducts::new(h, 3);
    let mut rep = Report::default();

    for i in 0..d {
        let mut left = Acc::new(ring);
        for (t, c) in cop.get(i, 3) {
            left.push([t[0], t[1], t[2]], c.clone());
        }
        let left = left.finish();
        let mut right = Acc::new(ring);
        for (a, b, c) in &h.comul[i] {
            for (x, y, v) in &h.comul[*b] {
                right.push([*a, *x, *y], ring.mul(c, v));
            }
        }
        rep.record(Check::Coassociativity, left == right.finish(), &[i]);

        let mut l = Acc::new(ring);
        let mut r = Acc::new(ring);
        for (a, b, c) in &h.comul[i] {
            l.push(*b, ring.mul(c, &h.counit[*a]));
            r.push(*a, ring.mul(c, &h.counit[*b]));
        }
        let e = h.basis(i);
        rep.record(Check::Counit, l.finish() == e && r.finish() == e, &[i]);

        rep.record(
            Check::UnitLaw,
            *h.product(h.unit, i) == e && *h.product(i, h.unit) == e,
            &[i],
        );
    }
    let u = h.unit;
    rep.record(
        Check::UnitCoalgebra,
        h.comul[u] == vec![(u, u, ring.one())] && h.counit[u] == ring.one(),
        &[u],
    );

    for i in 0..d {
        for j in 0..d {
            let prod = h.product(i, j);
            let mut lhs = Acc::new(ring);
            for (k, c) in prod {
                for (a, b, v) in &h.comul[*k] {
                    lhs.push((*a, *b), ring.mul(c, v));
                }
            }
            let mut rhs = Acc::new(ring);
            for (i1, i2, a) in &h.comul[i] {
                for (j1, j2, b) in &h.comul[j] {
                    let ab = ring.mul(a, b);
                    let p1 = h.product(*i1, *j1);
                    let p2 = h.product(*i2, *j2);
                    for (x, c1) in p1 {
                        let s = ring.mul(&ab, c1);
                        for (y, c2) in p2 {
                            rhs.push((*x, *y), ring.mul(&s, c2));
                        }
                    }
                }
            }
            rep.record(Check::MulCoalgebraMap, lhs.finish() == rhs.finish(), &[i, j]);
            let eps = h.functional(&h.counit, prod);
            rep.record(
                Check::CounitMultiplicative,
                eps == ring.mul(&h.counit[i], &h.counit[j]),
                &[i, j],
            );
        }
    }

    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                // h1(g1k1)Ω(h2,g2,k2) = Ω(h1,g1,k1)(h2g2)k2
                let mut lhs = Acc::new(ring);
                let mut rhs = Acc::new(ring);
                for (x1, x2, a) in &h.comul[x] {
                    for (y1, y2, b) in &h.comul[y] {
                        let ab = ring.mul(a, b);
                        for (z1, z2, c) in &h.comul[z] {
                            let abc = ring.mul(&ab, c);
                            let w2 = h.omega_at(*x2, *y2, *z2);
                            if !ring.is_zero(w2) {
                                let v = h.mul_vec(&h.basis(*x1), h.product(*y1, *z1));
                                h.sum_into(&mut lhs, &v, &ring.mul(&abc, w2));
                            }
                            let w1 = h.omega_at(*x1, *y1, *z1);
                            if !ring.is_zero(w1) {
                                let v = h.mul_vec(h.product(*x2, *y2), &h.basis(*z2));
                                h.sum_into(&mut rhs, &v, &ring.mul(&abc, w1));
                            }
                        }
                    }
                }
                rep.record(Check::QuasiAssociativity, lhs.finish() == rhs.finish(), &[x, y, z]);

                let mut conv_l = ring.zero();
                let mut conv_r = ring.zero();
                for (x1, x2, a) in &h.comul[x] {
                    for (y1, y2, b) in &h.comul[y] {
                        let ab = ring.mul(a, b);
                        for (z1, z2, c) in &h.comul[z] {
                            let abc = ring.mul(&ab, c);
                            let l = ring.mul(h.omega_at(*x1, *y1, *z1), h.omega_inv_at(*x2, *y2, *z2));
                            let r = ring.mul(h.omega_inv_at(*x1, *y1, *z1), h.omega_at(*x2, *y2, *z2));
                            ring.add_assign(&mut conv_l, &ring.mul(&abc, &l));
                            ring.add_assign(&mut conv_r, &ring.mul(&abc, &r));
                        }
                    }
                }
                let e = eps3(h, x, y, z);
                rep.record(Check::OmegaInverse, conv_l == e && conv_r == e, &[x, y, z]);
            }
        }
    }

    for x in 0..d {
        for y in 0..d {
            let e = ring.mul(&h.counit[x], &h.counit[y]);
            let ok = *h.omega_at(x, u, y) == e && *h.omega_at(u, x, y) == e && *h.omega_at(x, y, u) == e;
            rep.record(Check::OmegaNormalization, ok, &[x, y]);
        }
    }

    if opts.pentagon {
        rep.merge(verify_pentagon_rows(h, 0..d)?);
    } else {
        rep.pentagon_skipped = true;
    }
    Ok(rep)
}

/// Pentagon on all quadruples whose first entry lies in `rows`; lets callers
/// split the `d⁴` loop across workers.
pub fn verify_pentagon_rows(h: &CoquasiData, rows: Range<usize>) -> Result<Report> {
    h.check_shape()?;
    let d = h.dim();
    let ring = &h.ring;
    let cop = Coproducts::new(h, 3);
    let mut rep = Report::default();
    for x in rows.start..rows.end.min(d) {
        for y in 0..d {
            // Ω(x1y1, k1, l1) Ω(x2, y2, k2l2) = Ω(x1,y1,k1) Ω(x2, y2k2, l1) Ω(y3, k3, l2)
            let xy: Vec<(Vector, usize, usize, Cyc)> = h.comul[x]
                .iter()
                .flat_map(|(x1, x2, a)| {
                    h.comul[y].iter().map(move |(y1, y2, b)| (*x1, *x2, *y1, *y2, a, b))
                })
                .map(|(x1, x2, y1, y2, a, b)| (h.product(x1, y1).clone(), x2, y2, ring.mul(a, b)))
                .collect();
            for k in 0..d {
                for l in 0..d {
                    let mut lhs = ring.zero();
                    for (p, x2, y2, ab) in &xy {
                        for (k1, k2, c) in &h.comul[k] {
                            for (l1, l2, e) in &h.comul[l] {
                                let w1 = h.omega_lin(p, &h.basis(*k1), &h.basis(*l1), false);
                                if ring.is_zero(&w1) {
                                    continue;
                                }
                                let w2 = h.omega_lin(&h.basis(*x2), &h.basis(*y2), h.product(*k2, *l2), false);
                                let coef = ring.mul(ab, &ring.mul(c, e));
                                ring.add_assign(&mut lhs, &ring.mul(&coef, &ring.mul(&w1, &w2)));
                            }
                        }
                    }
                    let mut rhs = ring.zero();
                    for (x1, x2, a) in &h.comul[x] {
                        for (ty, b) in cop.get(y, 3) {
                            for (tk, c) in cop.get(k, 3) {
                                let w1 = h.omega_at(*x1, ty[0], tk[0]);
                                if ring.is_zero(w1) {
                                    continue;
                                }
                                for (l1, l2, e) in &h.comul[l] {
                                    let w3 = h.omega_at(ty[2], tk[2], *l2);
                                    if ring.is_zero(w3) {
                                        continue;
                                    }
                                    let w2 = h.omega_lin(&h.basis(*x2), h.product(ty[1], tk[1]), &h.basis(*l1), false);
                                    let coef = ring.mul(&ring.mul(a, b), &ring.mul(c, e));
                                    let w = ring.mul(w1, &ring.mul(&w2, w3));
                                    ring.add_assign(&mut rhs, &ring.mul(&coef, &w));
                                }
                            }
                        }
                    }
                    rep.record(Check::Pentagon, lhs == rhs, &[x, y, k, l]);
                }
            }
        }
    }
    Ok(rep)
}

/// The three antipode identities on every basis element, plus `Δ∘S = (S⊗S)∘Δ^{op}`.
pub fn verify_antipode(h: &CoquasiData) -> Result<Report> {
    h.check_shape()?;
    let a = h
        .antipode
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("no antipode tables".into()))?;
    let d = h.dim();
    let ring = &h.ring;
    let cop = Coproducts::new(h, 5);
    let mut rep = Report::default();
    let one = h.basis(h.unit);
    for i in 0..d {
        // S(h1)α(h2)h3 = α(h)1
        let mut acc = Acc::new(ring);
        for (t, c) in cop.get(i, 3) {
            let f = ring.mul(c, &a.alpha[t[1]]);
            if !ring.is_zero(&f) {
                let v = h.mul_vec(&a.s[t[0]], &h.basis(t[2]));
                h.sum_into(&mut acc, &v, &f);
            }
        }
        rep.record(Check::AntipodeAlpha, acc.finish() == h.scale(&one, &a.alpha[i]), &[i]);

        // h1β(h2)S(h3) = β(h)1
        let mut acc = Acc::new(ring);
        for (t, c) in cop.get(i, 3) {
            let f = ring.mul(c, &a.beta[t[1]]);
            if !ring.is_zero(&f) {
                let v = h.mul_vec(&h.basis(t[0]), &a.s[t[2]]);
                h.sum_into(&mut acc, &v, &f);
            }
        }
        rep.record(Check::AntipodeBeta, acc.finish() == h.scale(&one, &a.beta[i]), &[i]);

        // Ω(h1β(h2), S(h3), α(h4)h5) = ε(h) = Ω⁻¹(S(h1), α(h2)h3β(h4), S(h5))
        let mut s7a = ring.zero();
        let mut s7b = ring.zero();
        for (t, c) in cop.get(i, 5) {
            let fa = ring.mul(c, &ring.mul(&a.beta[t[1]], &a.alpha[t[3]]));
            if !ring.is_zero(&fa) {
                let w = h.omega_lin(&h.basis(t[0]), &a.s[t[2]], &h.basis(t[4]), false);
                ring.add_assign(&mut s7a, &ring.mul(&fa, &w));
            }
            let fb = ring.mul(c, &ring.mul(&a.alpha[t[1]], &a.beta[t[3]]));
            if !ring.is_zero(&fb) {
                let w = h.omega_lin(&a.s[t[0]], &h.basis(t[2]), &a.s[t[4]], true);
                ring.add_assign(&mut s7b, &ring.mul(&fb, &w));
            }
        }
        rep.record(Check::AntipodeOmega, s7a == h.counit[i], &[i]);
        rep.record(Check::AntipodeOmegaInverse, s7b == h.counit[i], &[i]);

        let mut lhs = Acc::new(ring);
        for (k, c) in &a.s[i] {
            for (x, y, v) in &h.comul[*k] {
                lhs.push((*x, *y), ring.mul(c, v));
            }
        }
        let mut rhs = Acc::new(ring);
        for (i1, i2, c) in &h.comul[i] {
            for (x, u) in &a.s[*i2] {
                for (y, v) in &a.s[*i1] {
                    rhs.push((*x, *y), ring.mul(c, &ring.mul(u, v)));
                }
            }
        }
        let eps_ok = h.functional(&h.counit, &a.s[i]) == h.counit[i];
        rep.record(Check::AntipodeAntiCoalgebra, lhs.finish() == rhs.finish() && eps_ok, &[i]);
    }
    Ok(rep)
}

/// The r-form identities on all pairs and triples.
///
/// Second-slot products: `r(x,yz) = Ω(y1,z1,x1) r(x2,z2) Ω⁻¹(y2,x3,z3) r(x4,y3) Ω(x5,y4,z4)`.
/// First-slot products: `r(xy,z) = Ω⁻¹(z1,x1,y1) r(x2,z2) Ω(x3,z3,y2) r(y3,z4) Ω⁻¹(x4,y4,z5)`.
/// On grouplikes these are exactly the two hexagons of an abelian 3-cocycle.
pub fn verify_coquasitriangular(h: &CoquasiData, r: &[Cyc]) -> Result<Report> {
    h.check_shape()?;
    let d = h.dim();
    if r.len() != d * d || r.iter().any(|c| c.coeffs().len() != h.ring.degree()) {
        return Err(Error::InvalidInput("malformed r-form table".into()));
    }
    let ring = &h.ring;
    let cop = Coproducts::new(h, 5);
    let rf = |i: usize, j: usize| &r[i * d + j];
    let r_lin = |x: &Vector, y: usize| {
        let mut acc = ring.zero();
        for (i, c) in x {
            ring.add_assign(&mut acc, &ring.mul(c, rf(*i, y)));
        }
        acc
    };
    let r_lin2 = |x: usize, y: &Vector| {
        let mut acc = ring.zero();
        for (j, c) in y {
            ring.add_assign(&mut acc, &ring.mul(c, rf(x, *j)));
        }
        acc
    };
    let mut rep = Report::default();
    for x in 0..d {
        for y in 0..d {
            // r(x1,y1)x2y2 = y1x1r(y2,x2)
            let mut lhs = Acc::new(ring);
            for (x1, x2, a) in &h.comul[x] {
                for (y1, y2, b) in &h.comul[y] {
                    let f = ring.mul(&ring.mul(a, b), rf(*x1, *y1));
                    if !ring.is_zero(&f) {
                        h.sum_into(&mut lhs, h.product(*x2, *y2), &f);
                    }
                }
            }
            let mut rhs = Acc::new(ring);
            for (x1, x2, a) in &h.comul[x] {
                for (y1, y2, b) in &h.comul[y] {
                    let f = ring.mul(&ring.mul(a, b), rf(*y2, *x2));
                    if !ring.is_zero(&f) {
                        h.sum_into(&mut rhs, h.product(*y1, *x1), &f);
                    }
                }
            }
            rep.record(Check::RBraiding, lhs.finish() == rhs.finish(), &[x, y]);
        }
    }
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let lhs = r_lin2(x, h.product(y, z));
                let mut rhs = ring.zero();
                for (tx, a) in cop.get(x, 5) {
                    for (ty, b) in cop.get(y, 4) {
                        let ab = ring.mul(a, b);
                        let rxy = rf(tx[3], ty[2]);
                        if ring.is_zero(rxy) {
                            continue;
                        }
                        for (tz, c) in cop.get(z, 4) {
                            let w = ring.mul(
                                &ring.mul(h.omega_at(ty[0], tz[0], tx[0]), rf(tx[1], tz[1])),
                                &ring.mul(h.omega_inv_at(ty[1], tx[2], tz[2]), h.omega_at(tx[4], ty[3], tz[3])),
                            );
                            if !ring.is_zero(&w) {
                                let f = ring.mul(&ring.mul(&ab, c), &ring.mul(&w, rxy));
                                ring.add_assign(&mut rhs, &f);
                            }
                        }
                    }
                }
                rep.record(Check::RLeft, lhs == rhs, &[x, y, z]);

                let lhs = r_lin(h.product(x, y), z);
                let mut rhs = ring.zero();
                for (tx, a) in cop.get(x, 4) {
                    for (ty, b) in cop.get(y, 4) {
                        let ab = ring.mul(a, b);
                        for (tz, c) in cop.get(z, 5) {
                            let w = ring.mul(
                                &ring.mul(h.omega_inv_at(tz[0], tx[0], ty[0]), rf(tx[1], tz[1])),
                                &ring.mul(h.omega_at(tx[2], tz[2], ty[1]), rf(ty[2], tz[3])),
                            );
                            if ring.is_zero(&w) {
                                continue;
                            }
                            let w = ring.mul(&w, h.omega_inv_at(tx[3], ty[3], tz[4]));
                            ring.add_assign(&mut rhs, &ring.mul(&ring.mul(&ab, c), &w));
                        }
                    }
                }
                rep.record(Check::RRight, lhs == rhs, &[x, y, z]);
            }
        }
    }
    Ok(rep)
}

fn element_label(g: &GroupElement) -> String {
    let parts: Vec<String> = g.coords().iter().map(|c| format!("{c}")).collect();
    format!("({})", parts.join(","))
}

/// `k^ω Λ`: the group algebra with associator `ω`, `S(g) = g^{-1}`, `α = ε` and
/// `β(g) = ω(g,g^{-1},g)^{-1}`.
pub fn build_group_cqha(omega: &Cochain) -> Result<CoquasiData> {
    if omega.degree() != 3 {
        return Err(Error::DegreeOutOfRange(omega.degree()));
    }
    if !is_cocycle(omega) {
        return Err(Error::NotCocycle);
    }
    let g = omega.group();
    let n = g.order();
    let t = g.tables();
    let modulus = omega.modulus();
    let ring = CycRing::new(modulus)?;
    let root = |e: u64| ring.root(e as i64);
    let mut om = Vec::with_capacity(n * n * n);
    let mut om_inv = Vec::with_capacity(n * n * n);
    for &v in omega.table() {
        om.push(root(v));
        om_inv.push(ring.root(-(v as i64)));
    }
    let mul = (0..n * n).map(|ij| vec![(t.add(ij / n, ij % n), ring.one())]).collect();
    let beta = (0..n).map(|i| ring.root(-(omega.at(&[i, t.neg(i), i]) as i64))).collect();
    Ok(CoquasiData {
        labels: g.elements().map(|e| element_label(&e)).collect(),
        unit: 0,
        counit: vec![ring.one(); n],
        mul,
        comul: (0..n).map(|i| vec![(i, i, ring.one())]).collect(),
        omega: om,
        omega_inv: om_inv,
        antipode: Some(Antipode {
            s: (0..n).map(|i| vec![(t.neg(i), ring.one())]).collect(),
            alpha: vec![ring.one(); n],
            beta,
        }),
        r_form: None,
        ring,
    })
}

/// Puts a 2-cochain on `G` into `r_form` of `k^ω G` (so `r(g,h) = c(g,h)`).
pub fn with_group_r_form(h: &CoquasiData, c: &Cochain) -> Result<CoquasiData> {
    if c.degree() != 2 || c.group().order() != h.dim() {
        return Err(Error::GroupMismatch);
    }
    let order = lcm(h.ring.order(), c.modulus());
    let mut out = h.extend_scalars(order)?;
    let ring = &out.ring;
    let r = c
        .table()
        .iter()
        .map(|&v| ring.root_of(c.modulus(), v as i64))
        .collect::<Result<Vec<_>>>()?;
    out.r_form = Some(r);
    Ok(out)
}

fn table3(h: &CoquasiData, mut f: impl FnMut(usize, usize, usize) -> Cyc) -> Vec<Cyc> {
    let d = h.dim();
    let mut out = Vec::with_capacity(d * d * d);
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                out.push(f(x, y, z));
            }
        }
    }
    out
}

/// Convolution `(f*g)(x,y,z) = f(x1,y1,z1) g(x2,y2,z2)` of functionals on `H⊗H⊗H`.
fn convolve3(h: &CoquasiData, f: &[Cyc], g: &[Cyc]) -> Vec<Cyc> {
    let d = h.dim();
    let ring = &h.ring;
    table3(h, |x, y, z| {
        let mut acc = ring.zero();
        for (x1, x2, a) in &h.comul[x] {
            for (y1, y2, b) in &h.comul[y] {
                for (z1, z2, c) in &h.comul[z] {
                    let fv = &f[(x1 * d + y1) * d + z1];
                    if ring.is_zero(fv) {
                        continue;
                    }
                    let gv = &g[(x2 * d + y2) * d + z2];
                    if ring.is_zero(gv) {
                        continue;
                    }
                    let coef = ring.mul(&ring.mul(a, b), c);
                    ring.add_assign(&mut acc, &ring.mul(&coef, &ring.mul(fv, gv)));
                }
            }
        }
        acc
    })
}

/// Twists by a 2-cochain supported on grouplikes.
///
/// `grouplike[i] = Some(g)` marks basis vector `i` as the grouplike `g` of the
/// cochain's group; the twisting form is `γ(e_i, e_j) = ζ^{α(g_i,g_j)}` on such
/// pairs and zero elsewhere. The result has `m' = γ(x1,y1) m(x2,y2) γ⁻¹(x3,y3)`,
/// associator `Ω·δα`, the same coalgebra and antipode map, and `α, β` transported
/// accordingly. Any r-form is dropped.
pub fn twist_by_cochain(h: &CoquasiData, grouplike: &[Option<usize>], alpha: &Cochain) -> Result<CoquasiData> {
    h.check_shape()?;
    let d = h.dim();
    if alpha.degree() != 2 {
        return Err(Error::DegreeOutOfRange(alpha.degree()));
    }
    if grouplike.len() != d || grouplike.iter().flatten().any(|&g| g >= alpha.group().order()) {
        return Err(Error::InvalidInput("grouplike map does not match the algebra".into()));
    }
    let h = h.extend_scalars(lcm(h.ring.order(), alpha.modulus()))?;
    let ring = &h.ring;
    for (i, g) in grouplike.iter().enumerate() {
        if g.is_some() && (h.comul[i] != vec![(i, i, ring.one())] || h.counit[i] != ring.one()) {
            return Err(Error::InvalidInput(format!("basis vector {} is not grouplike", h.labels[i])));
        }
    }
    let mut gam = vec![ring.zero(); d * d];
    let mut gam_inv = vec![ring.zero(); d * d];
    for i in 0..d {
        for j in 0..d {
            if let (Some(a), Some(b)) = (grouplike[i], grouplike[j]) {
                let v = alpha.at(&[a, b]) as i64;
                gam[i * d + j] = ring.root_of(alpha.modulus(), v)?;
                gam_inv[i * d + j] = ring.root_of(alpha.modulus(), -v)?;
            }
        }
    }
    let g = |i: usize, j: usize| &gam[i * d + j];
    let gi = |i: usize, j: usize| &gam_inv[i * d + j];
    let lin = |t: &[Cyc], x: &Vector, y: &Vector| {
        let mut acc = ring.zero();
        for (i, a) in x {
            for (j, b) in y {
                ring.add_assign(&mut acc, &ring.mul(&ring.mul(a, b), &t[i * d + j]));
            }
        }
        acc
    };

    for x in 0..d {
        for y in 0..d {
            let mut l = ring.zero();
            let mut r = ring.zero();
            for (x1, x2, a) in &h.comul[x] {
                for (y1, y2, b) in &h.comul[y] {
                    let ab = ring.mul(a, b);
                    ring.add_assign(&mut l, &ring.mul(&ab, &ring.mul(g(*x1, *y1), gi(*x2, *y2))));
                    ring.add_assign(&mut r, &ring.mul(&ab, &ring.mul(gi(*x1, *y1), g(*x2, *y2))));
                }
            }
            let e = ring.mul(&h.counit[x], &h.counit[y]);
            if l != e || r != e {
                return Err(Error::InvalidInput("twisting form is not convolution invertible".into()));
            }
        }
    }

    let cop = Coproducts::new(&h, 3);
    let mut mul = Vec::with_capacity(d * d);
    for x in 0..d {
        for y in 0..d {
            let mut acc = Acc::new(ring);
            for (tx, a) in cop.get(x, 3) {
                for (ty, b) in cop.get(y, 3) {
                    let f = ring.mul(g(tx[0], ty[0]), gi(tx[2], ty[2]));
                    if ring.is_zero(&f) {
                        continue;
                    }
                    h.sum_into(&mut acc, h.product(tx[1], ty[1]), &ring.mul(&f, &ring.mul(a, b)));
                }
            }
            mul.push(acc.finish());
        }
    }

    // Ω' = (ε⊗γ) * γ(x, yz) * Ω * γ⁻¹(xy, z) * (γ⁻¹⊗ε)
    // Ω'⁻¹ = (γ⊗ε) * γ(xy, z) * Ω⁻¹ * (ε⊗γ⁻¹) * γ⁻¹(x, yz)
    let outer = |t: &[Cyc], left: bool| {
        table3(&h, |x, y, z| {
            if left {
                ring.mul(&h.counit[x], &t[y * d + z])
            } else {
                ring.mul(&t[x * d + y], &h.counit[z])
            }
        })
    };
    let inner = |t: &[Cyc], left: bool| {
        table3(&h, |x, y, z| {
            if left {
                lin(t, &h.basis(x), h.product(y, z))
            } else {
                lin(t, h.product(x, y), &h.basis(z))
            }
        })
    };
    let mut omega = convolve3(&h, &outer(&gam, true), &inner(&gam, true));
    omega = convolve3(&h, &omega, &h.omega);
    omega = convolve3(&h, &omega, &inner(&gam_inv, false));
    omega = convolve3(&h, &omega, &outer(&gam_inv, false));
    let mut omega_inv = convolve3(&h, &outer(&gam, false), &inner(&gam, false));
    omega_inv = convolve3(&h, &omega_inv, &h.omega_inv);
    omega_inv = convolve3(&h, &omega_inv, &outer(&gam_inv, true));
    omega_inv = convolve3(&h, &omega_inv, &inner(&gam_inv, true));

    let antipode = match &h.antipode {
        None => None,
        Some(a) => {
            let mut alpha_f = Vec::with_capacity(d);
            let mut beta_f = Vec::with_capacity(d);
            for i in 0..d {
                // α'(h) = γ⁻¹(S(h1),h3) α(h2),  β'(h) = γ(h1,S(h3)) β(h2)
                let mut av = ring.zero();
                let mut bv = ring.zero();
                for (t, c) in cop.get(i, 3) {
                    let fa = ring.mul(c, &a.alpha[t[1]]);
                    if !ring.is_zero(&fa) {
                        let w = lin(&gam_inv, &a.s[t[0]], &h.basis(t[2]));
                        ring.add_assign(&mut av, &ring.mul(&fa, &w));
                    }
                    let fb = ring.mul(c, &a.beta[t[1]]);
                    if !ring.is_zero(&fb) {
                        let w = lin(&gam, &h.basis(t[0]), &a.s[t[2]]);
                        ring.add_assign(&mut bv, &ring.mul(&fb, &w));
                    }
                }
                alpha_f.push(av);
                beta_f.push(bv);
            }
            Some(Antipode { s: a.s.clone(), alpha: alpha_f, beta: beta_f })
        }
    };

    Ok(CoquasiData {
        ring: h.ring.clone(),
        labels: h.labels.clone(),
        unit: h.unit,
        counit: h.counit.clone(),
        mul,
        comul: h.comul.clone(),
        omega,
        omega_inv,
        antipode,
        r_form: None,
    })
}

/// Replaces each basis vector `e_i` by `ζ^{c_i} e_i` (exponents in the algebra's ring).
pub fn rescale_basis(h: &CoquasiData, c: &[i64]) -> Result<CoquasiData> {
    h.check_shape()?;
    let d = h.dim();
    if c.len() != d {
        return Err(Error::InvalidInput("one exponent per basis vector expected".into()));
    }
    if c[h.unit].rem_euclid(h.ring.order() as i64) != 0 {
        return Err(Error::InvalidInput("the unit must not be rescaled".into()));
    }
    let ring = &h.ring;
    let sv = |v: &Vector, shift: i64| v.iter().map(|(k, x)| (*k, ring.mul_root(x, shift - c[*k]))).collect::<Vector>();
    let mut out = h.clone();
    for i in 0..d {
        for j in 0..d {
            out.mul[i * d + j] = sv(h.product(i, j), c[i] + c[j]);
        }
        out.comul[i] = h.comul[i].iter().map(|(a, b, x)| (*a, *b, ring.mul_root(x, c[i] - c[*a] - c[*b]))).collect();
        out.counit[i] = ring.mul_root(&h.counit[i], c[i]);
    }
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let idx = (x * d + y) * d + z;
                let s = c[x] + c[y] + c[z];
                out.omega[idx] = ring.mul_root(&h.omega[idx], s);
                out.omega_inv[idx] = ring.mul_root(&h.omega_inv[idx], s);
            }
        }
    }
    if let (Some(a), Some(o)) = (&h.antipode, &mut out.antipode) {
        for i in 0..d {
            o.s[i] = sv(&a.s[i], c[i]);
            o.alpha[i] = ring.mul_root(&a.alpha[i], c[i]);
            o.beta[i] = ring.mul_root(&a.beta[i], c[i]);
        }
    }
    if let (Some(r), Some(o)) = (&h.r_form, &mut out.r_form) {
        for i in 0..d {
            for j in 0..d {
                o[i * d + j] = ring.mul_root(&r[i * d + j], c[i] + c[j]);
            }
        }
    }
    Ok(out)
}

/// Rank-one quantum linear space data over a cover `p: Γ → Λ` trivializing `ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QlsDatum {
    omega: Cochain,
    p: GroupHom,
    alpha: Cochain,
    g1: GroupElement,
    chi1: Character,
    n: u32,
}

impl QlsDatum {
    /// Validates `δα = p*ω`, that `q = χ₁(g₁)` has exact order `n ≥ 2`, and that
    /// `χ₁(a)·α(a,g₁)/α(g₁,a) = 1` on `ker p` (so the quotient is well defined).
    pub fn new(
        omega: Cochain,
        p: GroupHom,
        alpha: Cochain,
        g1: GroupElement,
        chi1: Character,
        n: u32,
    ) -> Result<Self> {
        if omega.degree() != 3 || alpha.degree() != 2 {
            return Err(Error::InvalidInput("need a 3-cocycle and a 2-cochain".into()));
        }
        if p.target() != omega.group() || p.source() != alpha.group() || chi1.group() != p.source() {
            return Err(Error::GroupMismatch);
        }
        if !p.is_surjective() {
            return Err(Error::InvalidInput("p is not surjective".into()));
        }
        if !p.source().contains(&g1) {
            return Err(Error::InvalidInput("g1 is not an element of the cover".into()));
        }
        if !is_cocycle(&omega) {
            return Err(Error::NotCocycle);
        }
        let m = lcm(omega.modulus(), alpha.modulus());
        let pulled = pullback(&p, &omega.lift(m / omega.modulus())?)?;
        if coboundary(&alpha.lift(m / alpha.modulus())?)? != pulled {
            return Err(Error::InvariantViolation("δα differs from p*ω".into()));
        }
        let e = p.source().exponent();
        let q = chi1.eval(&g1);
        let order = e / crate::arith::gcd(q, e);
        if n < 2 || order != n as u64 {
            return Err(Error::InvalidInput(format!("χ₁(g₁) has order {order}, not {n}")));
        }
        let gamma = p.source();
        let gi = gamma.element_index(&g1);
        for a in p.kernel() {
            let ai = gamma.element_index(&a);
            let big = lcm(e, m);
            let x = chi1.eval(&a) * (big / e)
                + (alpha.at(&[ai, gi]) + alpha.modulus() - alpha.at(&[gi, ai])) * (big / alpha.modulus());
            if x % big != 0 {
                return Err(Error::InvalidInput(format!(
                    "kernel element {} acts nontrivially on x",
                    element_label(&a)
                )));
            }
        }
        Ok(QlsDatum { omega, p, alpha, g1, chi1, n })
    }

    pub fn omega(&self) -> &Cochain {
        &self.omega
    }

    pub fn p(&self) -> &GroupHom {
        &self.p
    }

    pub fn alpha(&self) -> &Cochain {
        &self.alpha
    }

    pub fn g1(&self) -> &GroupElement {
        &self.g1
    }

    pub fn chi1(&self) -> &Character {
        &self.chi1
    }

    pub fn height(&self) -> u32 {
        self.n
    }

    fn ring_order(&self) -> u64 {
        lcm(lcm(self.omega.modulus(), self.alpha.modulus()), self.p.source().exponent())
    }
}

/// Everything produced by [`build_bosonization`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bosonization {
    /// The Hopf algebra `B(W)#kΓ` on basis `x^j g` (index `j·|Γ| + g`).
    pub hopf: CoquasiData,
    /// `hopf` twisted by `α` and rebased; its associator is `p*ω` on grouplikes.
    pub twisted: CoquasiData,
    /// `B(V)#k^ω Λ` on basis `x^j # λ` (index `j·|Λ| + λ`).
    pub quotient: CoquasiData,
    /// `id ⊗ p` on basis indices, from `twisted` to `quotient`.
    pub pi: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BosonizationOptions {
    pub pentagon: bool,
    /// Largest `n·|Γ|` accepted.
    pub max_dim: usize,
}

impl Default for BosonizationOptions {
    fn default() -> Self {
        BosonizationOptions { pentagon: true, max_dim: 64 }
    }
}

/// Taft-type Hopf algebra: `g x = χ₁(g) x g`, `Δx = x⊗1 + g₁⊗x`, `x^n = 0`.
fn taft_algebra(d: &QlsDatum, ring: &CycRing) -> CoquasiData {
    let gamma = d.p.source();
    let t = gamma.tables();
    let ng = gamma.order();
    let n = d.n as usize;
    let dim = n * ng;
    let e = gamma.exponent();
    let elems: Vec<GroupElement> = gamma.elements().collect();
    let chi = |g: usize| (d.chi1.eval(&elems[g]) * (ring.order() / e)) as i64;
    let qe = chi(gamma.element_index(&d.g1));
    let g1 = gamma.element_index(&d.g1);
    let g1pow: Vec<usize> = (0..=n).map(|j| gamma.element_index(&gamma.scale(j as i64, &d.g1))).collect();
    let idx = |j: usize, g: usize| j * ng + g;

    let mut mul = Vec::with_capacity(dim * dim);
    for a in 0..dim {
        for b in 0..dim {
            let (i, g) = (a / ng, a % ng);
            let (j, h) = (b / ng, b % ng);
            if i + j >= n {
                mul.push(Vec::new());
            } else {
                mul.push(vec![(idx(i + j, t.add(g, h)), ring.root(chi(g) * j as i64))]);
            }
        }
    }
    let mut comul = Vec::with_capacity(dim);
    for a in 0..dim {
        let (j, g) = (a / ng, a % ng);
        let mut terms: Tensor2 = (0..=j)
            .map(|k| {
                let left = idx(k, t.add(g1pow[j - k], g));
                (left, idx(j - k, g), ring.q_binomial(j as u32, k as u32, qe))
            })
            .filter(|(_, _, c)| !ring.is_zero(c))
            .collect();
        terms.sort_by_key(|x| (x.0, x.1));
        comul.push(terms);
    }
    let counit: Vec<Cyc> = (0..dim).map(|a| if a < ng { ring.one() } else { ring.zero() }).collect();
    let mut omega = vec![ring.zero(); dim * dim * dim];
    for x in 0..ng {
        for y in 0..ng {
            for z in 0..ng {
                omega[(x * dim + y) * dim + z] = ring.one();
            }
        }
    }
    let labels = (0..dim)
        .map(|a| format!("x^{}#{}", a / ng, element_label(&elems[a % ng])))
        .collect();
    let mut h = CoquasiData {
        ring: ring.clone(),
        labels,
        unit: 0,
        counit: counit.clone(),
        mul,
        comul,
        omega: omega.clone(),
        omega_inv: omega,
        antipode: None,
        r_form: None,
    };
    // S(x^j g) = g^{-1} (−g₁^{-1} x)^j
    let step = h.mul_vec(&vec![(t.neg(g1), ring.int(-1))], &h.basis(idx(1, 0)));
    let s = (0..dim)
        .map(|a| {
            let (j, g) = (a / ng, a % ng);
            let mut v = h.basis(t.neg(g));
            for _ in 0..j {
                v = h.mul_vec(&v, &step);
            }
            v
        })
        .collect();
    h.antipode = Some(Antipode { s, alpha: counit.clone(), beta: counit });
    h
}

fn first_failure(rep: &Report, what: &str, h: &CoquasiData) -> Error {
    let f = &rep.failures[0];
    let args: Vec<&str> = f.args.iter().map(|&i| h.labels[i].as_str()).collect();
    Error::InvariantViolation(format!("{what}: {} fails at ({})", f.check.name(), args.join(", ")))
}

/// Rank-one bosonization `B(V)#k^ω Λ` together with the Hopf algebra over `Γ`
/// it is a quotient of. Every structure is verified before returning; a failed
/// axiom is an error.
pub fn build_bosonization(d: &QlsDatum, opts: &BosonizationOptions) -> Result<Bosonization> {
    let gamma = d.p.source().clone();
    let lambda = d.p.target().clone();
    let n = d.n as usize;
    if n.checked_mul(gamma.order()).is_none_or(|x| x > opts.max_dim) {
        return Err(Error::BudgetExceeded(format!(
            "bosonization over a cover of order {} with height {n} exceeds dimension {}",
            gamma.order(),
            opts.max_dim
        )));
    }
    let ring = CycRing::new(d.ring_order())?;
    let hopf = taft_algebra(d, &ring);
    let ng = gamma.order();
    let nl = lambda.order();

    let grouplike: Vec<Option<usize>> = (0..n * ng).map(|a| if a < ng { Some(a) } else { None }).collect();
    let twisted = twist_by_cochain(&hopf, &grouplike, &d.alpha)?;
    let am = d.alpha.modulus();
    let to_ring = |v: u64| (v * (ring.order() / am)) as i64;
    let g1pow: Vec<usize> = (0..n).map(|j| gamma.element_index(&gamma.scale(j as i64, &d.g1))).collect();
    let shifts: Vec<i64> = (0..n * ng).map(|a| to_ring(d.alpha.at(&[g1pow[a / ng], a % ng]))).collect();
    let twisted = rescale_basis(&twisted, &shifts)?;

    let pmap = d.p.index_map();
    let pi: Vec<usize> = (0..n * ng).map(|a| (a / ng) * nl + pmap[a % ng]).collect();
    let quotient = assemble_quotient(d, &ring)?;

    let mut rep = verify_coquasi_axioms(&quotient, &VerifyOptions { pentagon: opts.pentagon })?;
    rep.merge(verify_antipode(&quotient)?);
    if !rep.passed() {
        return Err(first_failure(&rep, "bosonization", &quotient));
    }
    if let Some(msg) = quotient_map_defect(&twisted, &quotient, &pi) {
        return Err(Error::InvariantViolation(msg));
    }
    Ok(Bosonization { hopf, twisted, quotient, pi })
}

/// First place where `π` fails to be a coalgebra map, to intertwine products,
/// or to carry `Ω` of the source to `Ω` of the target.
pub fn quotient_map_defect(b: &CoquasiData, a: &CoquasiData, pi: &[usize]) -> Option<String> {
    let db = b.dim();
    let da = a.dim();
    let ring = &a.ring;
    if pi.len() != db || pi.iter().any(|&i| i >= da) || b.ring != a.ring {
        return Some("quotient map has the wrong shape".into());
    }
    let push = |v: &Vector| {
        let mut acc = Acc::new(ring);
        for (i, c) in v {
            acc.push(pi[*i], c.clone());
        }
        acc.finish()
    };
    for x in 0..db {
        let mut acc = Acc::new(ring);
        for (u, v, c) in &b.comul[x] {
            acc.push((pi[*u], pi[*v]), c.clone());
        }
        let lhs = acc.finish();
        let rhs: Vec<((usize, usize), Cyc)> = a.comul[pi[x]].iter().map(|(u, v, c)| ((*u, *v), c.clone())).collect();
        if lhs != rhs || b.counit[x] != a.counit[pi[x]] {
            return Some(format!("coproduct of {} is not preserved", b.labels[x]));
        }
        for y in 0..db {
            if push(b.product(x, y)) != *a.product(pi[x], pi[y]) {
                return Some(format!("product {}·{} is not preserved", b.labels[x], b.labels[y]));
            }
            for z in 0..db {
                if b.omega_at(x, y, z) != a.omega_at(pi[x], pi[y], pi[z]) {
                    return Some(format!(
                        "Omega({}, {}, {}) is not preserved",
                        b.labels[x], b.labels[y], b.labels[z]
                    ));
                }
            }
        }
    }
    None
}

/// Tables of `B(V)#k^ω Λ` from the smash product formulas with the rank-one
/// R-structure constants transported along the twist.
fn assemble_quotient(d: &QlsDatum, ring: &CycRing) -> Result<CoquasiData> {
    let gamma = d.p.source();
    let lambda = d.p.target();
    let tl = lambda.tables();
    let n = d.n as usize;
    let nl = lambda.order();
    let dim = n * nl;
    let l_ord = ring.order();
    let e = gamma.exponent();
    let om = |a: usize, b: usize, c: usize| (d.omega.at(&[a, b, c]) * (l_ord / d.omega.modulus())) as i64;
    let gam = |a: usize, b: usize| (d.alpha.at(&[a, b]) * (l_ord / d.alpha.modulus())) as i64;
    let gammas: Vec<GroupElement> = gamma.elements().collect();
    let chi = |g: usize| (d.chi1.eval(&gammas[g]) * (l_ord / e)) as i64;

    // section Λ → Γ: the first preimage in index order
    let pmap = d.p.index_map();
    let mut sec = vec![usize::MAX; nl];
    for (g, &l) in pmap.iter().enumerate().rev() {
        sec[l] = g;
    }
    let g1pow: Vec<usize> = (0..=n).map(|j| gamma.element_index(&gamma.scale(j as i64, &d.g1))).collect();
    let ell: Vec<usize> = g1pow.iter().map(|&g| pmap[g]).collect();
    let qe = chi(g1pow[1]);

    // x^i x^j = m_{ij} x^{i+j},  g ▷ x^j = a_j(g) x^j,  Δx^j = Σ c_{jk} x^k ⊗ x^{j-k}
    let m_ij = |i: usize, j: usize| gam(g1pow[i], g1pow[j]);
    let a_j = |j: usize, l: usize| {
        let g = sec[l];
        chi(g) * j as i64 + gam(g, g1pow[j]) - gam(g1pow[j], g)
    };
    let c_jk = |j: usize, k: usize| ring.mul_root(&ring.q_binomial(j as u32, k as u32, qe), -gam(g1pow[k], g1pow[j - k]));

    let idx = |j: usize, l: usize| j * nl + l;
    let mut mul = Vec::with_capacity(dim * dim);
    for x in 0..dim {
        for y in 0..dim {
            let (i, g) = (x / nl, x % nl);
            let (j, h) = (y / nl, y % nl);
            if i + j >= n {
                mul.push(Vec::new());
                continue;
            }
            let (k, l) = (ell[i], ell[j]);
            let w = om(g, l, h) + om(k, l, tl.add(g, h)) - om(k, g, tl.add(l, h)) - om(l, g, h);
            let c = ring.root(w + m_ij(i, j) + a_j(j, g));
            mul.push(vec![(idx(i + j, tl.add(g, h)), c)]);
        }
    }
    let mut comul = Vec::with_capacity(dim);
    for x in 0..dim {
        let (i, g) = (x / nl, x % nl);
        let mut terms: Tensor2 = Vec::new();
        for k in 0..=i {
            let jj = ell[i - k];
            let kk = ell[k];
            let c = ring.mul_root(&c_jk(i, k), -om(kk, jj, g));
            if !ring.is_zero(&c) {
                terms.push((idx(k, tl.add(jj, g)), idx(i - k, g), c));
            }
        }
        terms.sort_by_key(|a| (a.0, a.1));
        comul.push(terms);
    }
    let counit: Vec<Cyc> = (0..dim).map(|x| if x < nl { ring.one() } else { ring.zero() }).collect();
    let mut omega = vec![ring.zero(); dim * dim * dim];
    let mut omega_inv = omega.clone();
    for x in 0..nl {
        for y in 0..nl {
            for z in 0..nl {
                omega[(x * dim + y) * dim + z] = ring.root(om(x, y, z));
                omega_inv[(x * dim + y) * dim + z] = ring.root(-om(x, y, z));
            }
        }
    }
    let beta = (0..dim)
        .map(|x| if x < nl { ring.root(-om(x, tl.neg(x), x)) } else { ring.zero() })
        .collect();
    let lambdas: Vec<GroupElement> = lambda.elements().collect();
    let labels = (0..dim)
        .map(|x| format!("x^{}#{}", x / nl, element_label(&lambdas[x % nl])))
        .collect();
    let mut a = CoquasiData {
        ring: ring.clone(),
        labels,
        unit: 0,
        counit: counit.clone(),
        mul,
        comul,
        omega,
        omega_inv,
        antipode: None,
        r_form: None,
    };
    let s = solve_antipode(&a, &counit, |x| {
        let (j, l) = (x / nl, x % nl);
        idx(j, tl.neg(tl.add(ell[j], l)))
    })?;
    a.antipode = Some(Antipode { s, alpha: counit, beta });
    Ok(a)
}

/// Solves `S(h1)α(h2)h3 = α(h)1` for `S(e_i) = s_i·e_{target(i)}` in index order,
/// assuming earlier basis vectors only ever appear as first tensor factors.
fn solve_antipode(h: &CoquasiData, alpha: &[Cyc], target: impl Fn(usize) -> usize) -> Result<Vec<Vector>> {
    let d = h.dim();
    let ring = &h.ring;
    let cop = Coproducts::new(h, 3);
    let mut s: Vec<Vector> = vec![Vec::new(); d];
    for i in 0..d {
        let mut known = Acc::new(ring);
        let mut unknown = Acc::new(ring);
        let ti = target(i);
        for (t, c) in cop.get(i, 3) {
            let f = ring.mul(c, &alpha[t[1]]);
            if ring.is_zero(&f) {
                continue;
            }
            if t[0] == i {
                h.sum_into(&mut unknown, h.product(ti, t[2]), &f);
            } else if t[0] > i {
                return Err(Error::InvariantViolation("antipode recursion is not triangular".into()));
            } else {
                let v = h.mul_vec(&s[t[0]], &h.basis(t[2]));
                h.sum_into(&mut known, &v, &f);
            }
        }
        let unknown = unknown.finish();
        let known = known.finish();
        let [(k, u)] = unknown.as_slice() else {
            return Err(Error::InvariantViolation(format!("antipode of {} is not monomial", h.labels[i])));
        };
        let inv = ring
            .inv_unit(u)
            .ok_or_else(|| Error::InvariantViolation("antipode pivot is not a unit".into()))?;
        let rhs = if *k == h.unit { alpha[i].clone() } else { ring.zero() };
        let kv = known.iter().find(|(j, _)| j == k).map_or(ring.zero(), |(_, c)| c.clone());
        let si = ring.mul(&ring.sub(&rhs, &kv), &inv);
        s[i] = if ring.is_zero(&si) { Vec::new() } else { vec![(ti, si)] };
    }
    Ok(s)
}

/// Transports the bialgebra part of `b` along a surjection of bases, checking
/// that every choice of preimage gives the same tables. The antipode is not
/// transported.
pub fn push_forward(b: &CoquasiData, pi: &[usize], labels: Vec<String>) -> Result<CoquasiData> {
    let da = labels.len();
    let db = b.dim();
    if pi.len() != db || pi.iter().any(|&x| x >= da) {
        return Err(Error::InvalidInput("index map has the wrong shape".into()));
    }
    let mut fibers: Vec<Vec<usize>> = vec![Vec::new(); da];
    for (x, &a) in pi.iter().enumerate() {
        fibers[a].push(x);
    }
    if fibers.iter().any(|f| f.is_empty()) {
        return Err(Error::InvalidInput("index map is not surjective".into()));
    }
    let ring = &b.ring;
    let push = |v: &Vector| {
        let mut acc = Acc::new(ring);
        for (i, c) in v {
            acc.push(pi[*i], c.clone());
        }
        acc.finish()
    };
    let ill = |what: &str| Err(Error::InvariantViolation(format!("{what} does not descend")));
    let mut mul = Vec::with_capacity(da * da);
    for x in 0..da {
        for y in 0..da {
            let v = push(b.product(fibers[x][0], fibers[y][0]));
            for &u in &fibers[x] {
                for &w in &fibers[y] {
                    if push(b.product(u, w)) != v {
                        return ill("multiplication");
                    }
                }
            }
            mul.push(v);
        }
    }
    let mut comul = Vec::with_capacity(da);
    let mut counit = Vec::with_capacity(da);
    for x in 0..da {
        let image = |u: usize| {
            let mut acc = Acc::new(ring);
            for (p, q, c) in &b.comul[u] {
                acc.push((pi[*p], pi[*q]), c.clone());
            }
            acc.finish()
        };
        let v = image(fibers[x][0]);
        if fibers[x].iter().any(|&u| image(u) != v || b.counit[u] != b.counit[fibers[x][0]]) {
            return ill("comultiplication");
        }
        comul.push(v.into_iter().map(|((p, q), c)| (p, q, c)).collect());
        counit.push(b.counit[fibers[x][0]].clone());
    }
    let mut omega = Vec::with_capacity(da * da * da);
    let mut omega_inv = Vec::with_capacity(da * da * da);
    for x in 0..da {
        for y in 0..da {
            for z in 0..da {
                let (u, v, w) = (fibers[x][0], fibers[y][0], fibers[z][0]);
                for &u2 in &fibers[x] {
                    for &v2 in &fibers[y] {
                        for &w2 in &fibers[z] {
                            if b.omega_at(u2, v2, w2) != b.omega_at(u, v, w)
                                || b.omega_inv_at(u2, v2, w2) != b.omega_inv_at(u, v, w)
                            {
                                return ill("Omega");
                            }
                        }
                    }
                }
                omega.push(b.omega_at(u, v, w).clone());
                omega_inv.push(b.omega_inv_at(u, v, w).clone());
            }
        }
    }
    Ok(CoquasiData {
        ring: ring.clone(),
        labels,
        unit: pi[b.unit],
        counit,
        mul,
        comul,
        omega,
        omega_inv,
        antipode: None,
        r_form: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{cohomology_group, cyclic_class_cocycle};
    use crate::breen::trivialize;
    use crate::cochain::Budget;
    use crate::group::FinAbGroup;

    fn z(n: u64) -> FinAbGroup {
        FinAbGroup::cyclic(n).unwrap()
    }

    #[test]
    fn group_algebra_of_nontrivial_z2_class() {
        let w = cyclic_class_cocycle(2, 1, 2).unwrap();
        let h = build_group_cqha(&w).unwrap();
        let a = h.antipode.as_ref().unwrap();
        assert_eq!(a.beta[1], h.ring.int(-1));
        let rep = verify_coquasi_axioms(&h, &VerifyOptions::default()).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(verify_antipode(&h).unwrap().passed());
    }

    #[test]
    fn dropping_beta_breaks_the_antipode() {
        let w = cyclic_class_cocycle(2, 1, 2).unwrap();
        let mut h = build_group_cqha(&w).unwrap();
        h.antipode.as_mut().unwrap().beta = h.counit.clone();
        let rep = verify_antipode(&h).unwrap();
        // g·1·g⁻¹ = 1 keeps the β identity itself, the Ω identity catches it
        assert!(rep.failures_of(Check::AntipodeOmega).any(|f| f.args == [1]));
    }

    #[test]
    fn mutated_product_fails_quasi_associativity() {
        let h0 = build_group_cqha(&Cochain::zero(&z(4), 3, 4).unwrap()).unwrap();
        let mut h = h0.clone();
        h.mul[6] = vec![(3, h.ring.root(1))]; // e1 e2
        let rep = verify_coquasi_axioms(&h, &VerifyOptions { pentagon: false }).unwrap();
        assert!(rep.failures_of(Check::QuasiAssociativity).any(|f| f.args == [1, 1, 1]));
    }

    #[test]
    fn every_class_on_small_groups_passes() {
        for g in [z(2), z(3), z(4), FinAbGroup::new(&[2, 2]).unwrap()] {
            let n = g.exponent();
            let h3 = cohomology_group(&g, 3, n).unwrap();
            for w in &h3.representatives {
                let h = build_group_cqha(w).unwrap();
                let rep = verify_coquasi_axioms(&h, &VerifyOptions::default()).unwrap();
                assert!(rep.passed(), "{:?}", rep.failures);
                assert!(verify_antipode(&h).unwrap().passed());
            }
        }
    }

    #[test]
    fn twist_changes_omega_by_the_coboundary() {
        let g = z(4);
        let w = cyclic_class_cocycle(4, 1, 4).unwrap();
        let alpha = Cochain::from_index_fn(&g, 2, 4, |a| (a[0] * (a[1] + 1) * (a[0] + a[1])) as i64 % 4 * (a[0] * a[1]).min(1) as i64).unwrap();
        let h = build_group_cqha(&w).unwrap();
        let all: Vec<Option<usize>> = (0..4).map(Some).collect();
        let t = twist_by_cochain(&h, &all, &alpha).unwrap();
        let dw = coboundary(&alpha).unwrap();
        for (i, (&a, &b)) in w.table().iter().zip(dw.table()).enumerate() {
            assert_eq!(t.omega[i], t.ring.root((a + b) as i64));
        }
        assert!(verify_coquasi_axioms(&t, &VerifyOptions::default()).unwrap().passed());
        assert!(verify_antipode(&t).unwrap().passed());
        let back = twist_by_cochain(&t, &all, &alpha.neg()).unwrap();
        assert_eq!(back.omega, h.omega);
        assert_eq!(back.mul, h.mul);
        assert_eq!(back.antipode, h.antipode);
    }

    #[test]
    fn r_form_from_an_abelian_pair() {
        // ω(1,1,1) = 2, c(1,1) = 1 over μ_4 on Z/2
        let g = z(2);
        let w = Cochain::from_sparse(&g, 3, 4, &[(vec![1, 1, 1], 2)]).unwrap();
        let c = Cochain::from_sparse(&g, 2, 4, &[(vec![1, 1], 1)]).unwrap();
        let h = with_group_r_form(&build_group_cqha(&w).unwrap(), &c).unwrap();
        assert!(verify_coquasitriangular(&h, h.r_form.as_ref().unwrap()).unwrap().passed());
        let w0 = Cochain::zero(&g, 3, 4).unwrap();
        let h0 = with_group_r_form(&build_group_cqha(&w0).unwrap(), &c).unwrap();
        let rep = verify_coquasitriangular(&h0, h0.r_form.as_ref().unwrap()).unwrap();
        assert!(rep.failures_of(Check::RLeft).count() > 0);
    }

    fn sweedler_datum() -> QlsDatum {
        let g = z(2);
        let p = GroupHom::identity(&g);
        QlsDatum::new(
            Cochain::zero(&g, 3, 2).unwrap(),
            p,
            Cochain::zero(&g, 2, 2).unwrap(),
            g.generator(0),
            Character::new(&g, &[1]).unwrap(),
            2,
        )
        .unwrap()
    }

    #[test]
    fn sweedler_bosonization() {
        let b = build_bosonization(&sweedler_datum(), &BosonizationOptions::default()).unwrap();
        assert_eq!(b.quotient.dim(), 4);
        assert!(b.quotient.omega.iter().all(|w| *w == b.quotient.ring.one() || b.quotient.ring.is_zero(w)));
    }

    fn semion_cover_datum(sign: u64) -> QlsDatum {
        let w = cyclic_class_cocycle(2, 1, 2).unwrap();
        let t = trivialize(&w, 3, &Budget::default()).unwrap().unwrap();
        let gamma = t.gamma.clone();
        assert_eq!(gamma.invariant_factors(), &[4]);
        QlsDatum::new(w, t.p, t.alpha, gamma.generator(0), Character::new(&gamma, &[sign]).unwrap(), 4).unwrap()
    }

    #[test]
    fn nontrivial_z2_bosonization_matches_push_forward() {
        for sign in [1, 3] {
            let d = semion_cover_datum(sign);
            let b = build_bosonization(&d, &BosonizationOptions::default()).unwrap();
            assert_eq!(b.quotient.dim(), 8);
            let pushed = push_forward(&b.twisted, &b.pi, b.quotient.labels.clone()).unwrap();
            assert_eq!(pushed.mul, b.quotient.mul);
            assert_eq!(pushed.comul, b.quotient.comul);
            assert_eq!(pushed.omega, b.quotient.omega);
        }
    }

    #[test]
    fn cube_root_class_bosonization_pins_the_omega_signs() {
        let w = cyclic_class_cocycle(3, 1, 3).unwrap();
        let t = trivialize(&w, 2, &Budget::default()).unwrap().unwrap();
        let gamma = t.gamma.clone();
        let mut built = 0;
        for g1 in gamma.elements() {
            if t.p.apply(&g1).unwrap() == t.p.target().identity() {
                continue;
            }
            for chi in Character::all(&gamma) {
                let q = chi.eval(&g1);
                let e = gamma.exponent();
                let n = (e / crate::arith::gcd(q, e)) as u32;
                if n < 2 || built > 0 {
                    continue;
                }
                let d = match QlsDatum::new(w.clone(), t.p.clone(), t.alpha.clone(), g1.clone(), chi.clone(), n) {
                    Ok(d) => d,
                    Err(_) => continue,
                };
                let b = build_bosonization(&d, &BosonizationOptions { pentagon: false, max_dim: 81 }).unwrap();
                let pushed = push_forward(&b.twisted, &b.pi, b.quotient.labels.clone()).unwrap();
                assert_eq!(pushed.mul, b.quotient.mul);
                assert_eq!(pushed.comul, b.quotient.comul);
                built += 1;
            }
        }
        assert!(built > 0);
    }
}
