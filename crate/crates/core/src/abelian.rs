//! Abelian 3-cocycles `(ω, c)`, quadratic forms and Quinn's representative.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::cochain::{coboundary, Budget, Cochain};
use crate::error::{Error, Result};
use crate::group::{FinAbGroup, GroupElement};
use crate::zmod::SparseSystem;

/// A 3-cocycle together with a braiding function. The pair is not assumed
/// to satisfy the hexagons; see [`check_hexagons`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianCocycle {
    pub omega: Cochain,
    pub c: Cochain,
}

impl AbelianCocycle {
    pub fn new(omega: Cochain, c: Cochain) -> Result<Self> {
        if omega.degree() != 3 {
            return Err(Error::DegreeOutOfRange(omega.degree()));
        }
        if c.degree() != 2 {
            return Err(Error::DegreeOutOfRange(c.degree()));
        }
        if omega.group() != c.group() {
            return Err(Error::GroupMismatch);
        }
        if omega.modulus() != c.modulus() {
            return Err(Error::ModulusMismatch { left: omega.modulus(), right: c.modulus() });
        }
        Ok(AbelianCocycle { omega, c })
    }

    pub fn group(&self) -> &FinAbGroup {
        self.omega.group()
    }

    pub fn modulus(&self) -> u64 {
        self.omega.modulus()
    }

    pub fn lift(&self, factor: u64) -> Result<Self> {
        Ok(AbelianCocycle { omega: self.omega.lift(factor)?, c: self.c.lift(factor)? })
    }

    /// `(ω + δα, c + α − α^t)`: the same class in `H³_ab`.
    pub fn twist(&self, alpha: &Cochain) -> Result<Self> {
        let d = abelian_coboundary(alpha)?;
        Ok(AbelianCocycle { omega: self.omega.add(&d.omega)?, c: self.c.add(&d.c)? })
    }
}

/// `(δα, α(g,h) − α(h,g))`.
pub fn abelian_coboundary(alpha: &Cochain) -> Result<AbelianCocycle> {
    if alpha.degree() != 2 {
        return Err(Error::DegreeOutOfRange(alpha.degree()));
    }
    let m = alpha.modulus() as i64;
    let c = Cochain::from_index_fn(alpha.group(), 2, alpha.modulus(), |a| {
        alpha.at(&[a[0], a[1]]) as i64 - alpha.at(&[a[1], a[0]]) as i64 + m
    })?;
    AbelianCocycle::new(coboundary(alpha)?, c)
}

/// Triples `(g,h,k)` at which the first or second hexagon fails, tagged 1 or 2.
pub fn hexagon_failures(ac: &AbelianCocycle) -> Vec<(u8, [usize; 3])> {
    let g = ac.group();
    let n = g.order();
    let t = g.tables();
    let m = ac.modulus() as i64;
    let w = |a: usize, b: usize, c: usize| ac.omega.at(&[a, b, c]) as i64;
    let c = |a: usize, b: usize| ac.c.at(&[a, b]) as i64;
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs1 = c(x, t.add(y, z)) - c(x, y) - c(x, z);
                let rhs1 = w(x, y, z) + w(y, z, x) - w(y, x, z);
                if (lhs1 - rhs1).rem_euclid(m) != 0 {
                    out.push((1, [x, y, z]));
                }
                let lhs2 = c(t.add(x, y), z) - c(x, z) - c(y, z);
                let rhs2 = w(x, z, y) - w(x, y, z) - w(z, x, y);
                if (lhs2 - rhs2).rem_euclid(m) != 0 {
                    out.push((2, [x, y, z]));
                }
            }
        }
    }
    out
}

/// Both hexagon identities on every triple.
pub fn check_hexagons(ac: &AbelianCocycle) -> bool {
    hexagon_failures(ac).is_empty()
}

/// A function `q: Λ → μ_N` with `q(−l) = q(l)` and biadditive `b_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    group: FinAbGroup,
    modulus: u64,
    values: Vec<u64>,
}

impl QuadraticForm {
    pub fn new(group: &FinAbGroup, modulus: u64, values: Vec<u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidInput("modulus must be positive".into()));
        }
        if values.len() != group.order() {
            return Err(Error::InvalidInput("one value per element required".into()));
        }
        let q = QuadraticForm {
            group: group.clone(),
            modulus,
            values: values.into_iter().map(|v| v % modulus).collect(),
        };
        q.validate()?;
        Ok(q)
    }

    /// `q(x) = Σ_i d_i x_i² + Σ_{i<j} f_ij x_i x_j` on coordinate
    /// representatives `0 ≤ x_i < n_i`; `cross[i][j]` is read for `i < j`.
    /// Fails unless the result is a quadratic form on `Λ`.
    pub fn from_coefficients(
        group: &FinAbGroup,
        modulus: u64,
        diag: &[u64],
        cross: &[Vec<u64>],
    ) -> Result<Self> {
        let r = group.rank();
        if diag.len() != r || cross.len() != r || cross.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidInput("coefficient shape does not match rank".into()));
        }
        let values = group
            .elements()
            .map(|g| {
                let x = g.coords();
                let mut acc: u128 = 0;
                for i in 0..r {
                    acc += diag[i] as u128 * (x[i] * x[i]) as u128;
                    for j in i + 1..r {
                        acc += cross[i][j] as u128 * (x[i] * x[j]) as u128;
                    }
                }
                (acc % modulus as u128) as u64
            })
            .collect();
        Self::new(group, modulus, values)
    }

    fn validate(&self) -> Result<()> {
        let g = &self.group;
        let n = g.order();
        let t = g.tables();
        let m = self.modulus;
        if self.values[0] != 0 {
            return Err(Error::InvariantViolation("q(0) must be trivial".into()));
        }
        for l in 0..n {
            if self.values[t.neg(l)] != self.values[l] {
                return Err(Error::InvariantViolation(format!("q(−l) ≠ q(l) at element {l}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.b_idx(a, t.add(b, c), &t);
                    let rhs = (self.b_idx(a, b, &t) + self.b_idx(a, c, &t)) % m;
                    if lhs != rhs {
                        return Err(Error::InvariantViolation(format!(
                            "b_q is not additive at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn b_idx(&self, k: usize, l: usize, t: &crate::group::GroupTables) -> u64 {
        let m = self.modulus;
        (self.values[t.add(k, l)] + 2 * m - self.values[k] - self.values[l]) % m
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn value(&self, l: &GroupElement) -> u64 {
        self.values[self.group.element_index(l)]
    }

    /// `b_q(k,l) = q(k+l) − q(k) − q(l)` on element indices.
    pub fn b(&self, k: usize, l: usize) -> u64 {
        self.b_idx(k, l, &self.group.tables())
    }

    /// Exponent of `q_i = q(e_i)`.
    pub fn generator_value(&self, i: usize) -> u64 {
        self.values[self.group.element_index(&self.group.generator(i))]
    }
}

/// `q(l) = c(l,l)`.
pub fn quadratic_form(ac: &AbelianCocycle) -> Result<QuadraticForm> {
    if !check_hexagons(ac) {
        return Err(Error::InvalidInput("pair fails the hexagon identities".into()));
    }
    let n = ac.group().order();
    let values = (0..n).map(|l| ac.c.at(&[l, l])).collect();
    QuadraticForm::new(ac.group(), ac.modulus(), values)
}

/// Quinn's cocycle `h(x,y,z) = Σ_i q_i^{n_i x_i [y_i + z_i ≥ n_i]}`.
pub fn quinn_cocycle(q: &QuadraticForm) -> Result<Cochain> {
    let g = q.group();
    let m = q.modulus();
    let factors = g.invariant_factors().to_vec();
    let e: Vec<u64> = (0..g.rank()).map(|i| q.generator_value(i)).collect();
    for (i, (&ei, &ni)) in e.iter().zip(&factors).enumerate() {
        if (ei * ni % m) * ni % m != 0 {
            return Err(Error::InvalidInput(format!(
                "modulus {m} too small: q_{i} has exponent {ei} with q_{i}^{{n_{i}^2}} ≠ 1"
            )));
        }
    }
    let elems: Vec<GroupElement> = g.elements().collect();
    let h = Cochain::from_index_fn(g, 3, m, |a| {
        let (x, y, z) = (elems[a[0]].coords(), elems[a[1]].coords(), elems[a[2]].coords());
        let mut acc: i64 = 0;
        for i in 0..factors.len() {
            if y[i] + z[i] >= factors[i] {
                acc = (acc + (e[i] * factors[i] % m * x[i] % m) as i64) % m as i64;
            }
        }
        acc
    })?;
    if !crate::cochain::is_cocycle(&h) {
        return Err(Error::InvariantViolation("Quinn cochain is not closed".into()));
    }
    Ok(h)
}

/// The pair `(h, c)` with `c(x,y) = Σ_i d_i x_i y_i + Σ_{i<j} f_ij x_i y_j`
/// on representatives, where `d_i = q(e_i)` and `f_ij = b_q(e_i, e_j)`.
/// Its quadratic form is `q`.
pub fn quinn_pair(q: &QuadraticForm) -> Result<AbelianCocycle> {
    let h = quinn_cocycle(q)?;
    let g = q.group();
    let m = q.modulus();
    let r = g.rank();
    let gens: Vec<usize> = (0..r).map(|i| g.element_index(&g.generator(i))).collect();
    let elems: Vec<GroupElement> = g.elements().collect();
    let c = Cochain::from_index_fn(g, 2, m, |a| {
        let (x, y) = (elems[a[0]].coords(), elems[a[1]].coords());
        let mut acc: u64 = 0;
        for i in 0..r {
            acc = (acc + q.generator_value(i) * (x[i] * y[i] % m)) % m;
            for j in i + 1..r {
                acc = (acc + q.b(gens[i], gens[j]) * (x[i] * y[j] % m)) % m;
            }
        }
        acc as i64
    })?;
    let ac = AbelianCocycle::new(h, c)?;
    if !check_hexagons(&ac) {
        return Err(Error::InvariantViolation("Quinn pair fails the hexagons".into()));
    }
    Ok(ac)
}

/// Solves `δα = ω` and `α(g,h) − α(h,g) = c(g,h)` at modulus `N·lift`.
pub fn solve_abelian_coboundary(ac: &AbelianCocycle) -> Result<Option<Cochain>> {
    solve_abelian_coboundary_with(ac, ac.group().order() as u64, &Budget::default())
}

pub fn solve_abelian_coboundary_with(
    ac: &AbelianCocycle,
    lift: u64,
    budget: &Budget,
) -> Result<Option<Cochain>> {
    if !check_hexagons(ac) {
        return Err(Error::InvalidInput("pair fails the hexagon identities".into()));
    }
    let ac = ac.lift(lift)?;
    let g = ac.group();
    let n = g.order();
    if n > budget.max_solve_order {
        return Err(Error::BudgetExceeded(format!("group of order {n}")));
    }
    if n == 1 {
        return Ok(Some(Cochain::zero(g, 2, ac.modulus())?));
    }
    let t = g.tables();
    let d = n - 1;
    let var = |a: usize, b: usize| (a - 1) * d + (b - 1);
    let mut sys = SparseSystem::new(d * d);
    let push_term = |row: &mut Vec<(usize, i64)>, a: usize, b: usize, s: i64| {
        if a != 0 && b != 0 {
            row.push((var(a, b), s));
        }
    };
    for x in 1..n {
        for y in 1..n {
            for z in 1..n {
                let mut row = Vec::with_capacity(4);
                push_term(&mut row, y, z, 1);
                push_term(&mut row, t.add(x, y), z, -1);
                push_term(&mut row, x, t.add(y, z), 1);
                push_term(&mut row, x, y, -1);
                sys.push(row, ac.omega.at(&[x, y, z]) as i64);
            }
        }
    }
    for x in 1..n {
        for y in 1..n {
            let row = if x == y { vec![] } else { vec![(var(x, y), 1), (var(y, x), -1)] };
            sys.push(row, ac.c.at(&[x, y]) as i64);
        }
    }
    let Some(sol) = sys.solve(ac.modulus()) else { return Ok(None) };
    let alpha = Cochain::from_index_fn(g, 2, ac.modulus(), |a| {
        if a[0] == 0 || a[1] == 0 {
            0
        } else {
            sol[var(a[0], a[1])] as i64
        }
    })?;
    if abelian_coboundary(&alpha)? != ac {
        return Err(Error::InvariantViolation("abelian coboundary failed re-verification".into()));
    }
    Ok(Some(alpha))
}

/// `{g : c(g,h)·c(h,g) = 1 for all h}`.
pub fn mueger_center(c: &Cochain) -> Result<Vec<GroupElement>> {
    if c.degree() != 2 {
        return Err(Error::DegreeOutOfRange(c.degree()));
    }
    let g = c.group();
    let n = g.order();
    let m = c.modulus();
    let members: Vec<usize> = (0..n)
        .filter(|&x| (0..n).all(|y| (c.at(&[x, y]) + c.at(&[y, x])) % m == 0))
        .collect();
    let t = g.tables();
    let mut inside = vec![false; n];
    for &x in &members {
        inside[x] = true;
    }
    for &x in &members {
        for &y in &members {
            if !inside[t.add(x, y)] {
                return Err(Error::InvariantViolation("Müger center is not a subgroup".into()));
            }
        }
    }
    Ok(members.into_iter().map(|i| g.element_from_index(i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FinAbGroup {
        FinAbGroup::cyclic(n).unwrap()
    }

    fn semion() -> AbelianCocycle {
        let w = Cochain::from_sparse(&z(2), 3, 4, &[(vec![1, 1, 1], 2)]).unwrap();
        let c = Cochain::from_sparse(&z(2), 2, 4, &[(vec![1, 1], 1)]).unwrap();
        AbelianCocycle::new(w, c).unwrap()
    }

    #[test]
    fn semion_pair() {
        let s = semion();
        assert!(check_hexagons(&s));
        assert_eq!(quadratic_form(&s).unwrap().values(), &[0, 1]);
        assert!(mueger_center(&s.c).unwrap().len() == 1);
        assert!(solve_abelian_coboundary(&s).unwrap().is_none());
    }

    #[test]
    fn semion_braiding_alone_fails_with_trivial_associator() {
        let s = semion();
        let bad = AbelianCocycle::new(Cochain::zero(&z(2), 3, 4).unwrap(), s.c.clone()).unwrap();
        assert!(!check_hexagons(&bad));
    }

    #[test]
    fn quinn_on_z2() {
        let q = QuadraticForm::new(&z(2), 4, vec![0, 1]).unwrap();
        let h = quinn_cocycle(&q).unwrap();
        assert_eq!(h.at(&[1, 1, 1]), 2);
        assert_eq!(h.table().iter().filter(|&&v| v != 0).count(), 1);
        assert_eq!(quinn_pair(&q).unwrap(), semion());
    }

    #[test]
    fn symmetric_braiding_center() {
        let c = Cochain::from_sparse(&z(2), 2, 2, &[(vec![1, 1], 1)]).unwrap();
        assert_eq!(mueger_center(&c).unwrap().len(), 2);
    }
}
