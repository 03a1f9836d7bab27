//! Normalized cochains on finite abelian groups with values in `μ_N`.
//!
//! A value `ζ_N^a` is stored as its exponent `a ∈ Z/N`. Tables are dense and
//! indexed by `Σ_j idx(g_j)·|G|^{k-1-j}`, the lexicographic order on element
//! indices. The coboundary is the bar differential
//!
//! ```text
//! (δf)(g_1,…,g_{k+1}) = f(g_2,…) + Σ_i (−1)^i f(…,g_i+g_{i+1},…) + (−1)^{k+1} f(g_1,…,g_k)
//! ```
//!
//! whose degree-3 vanishing is exactly the multiplicative identity
//! `ω(g+h,k,l)·ω(g,h,k+l) = ω(g,h,k)·ω(g,h+k,l)·ω(h,k,l)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::lcm;
use crate::breen::TrilinearForm;
use crate::error::{Error, Result};
use crate::group::{FinAbGroup, GroupElement, GroupHom, GroupTables};
use crate::zmod::{local_rings, smith_local, Echelon, LocalRing, Mat, SparseSystem};

/// Size limits for the expensive routines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest group order accepted by `cohomology_group` in degree 3.
    pub max_cohomology_order: usize,
    /// Largest group order on which coboundary equations are solved.
    pub max_solve_order: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_cohomology_order: 16, max_solve_order: 32 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    group: FinAbGroup,
    degree: usize,
    modulus: u64,
    table: Vec<u64>,
}

fn check_degree(k: usize) -> Result<()> {
    if (1..=4).contains(&k) {
        Ok(())
    } else {
        Err(Error::DegreeOutOfRange(k))
    }
}

fn table_len(order: usize, k: usize) -> Result<usize> {
    order
        .checked_pow(k as u32)
        .ok_or_else(|| Error::BudgetExceeded("cochain table too large".into()))
}

/// Splits a table index into element indices.
#[inline]
fn unrank(mut idx: usize, order: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = idx % order;
        idx /= order;
    }
}

#[inline]
fn rank(args: &[usize], order: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * order + a)
}

impl Cochain {
    /// Validates length, range and normalization.
    pub fn new(group: FinAbGroup, degree: usize, modulus: u64, table: Vec<u64>) -> Result<Self> {
        check_degree(degree)?;
        if modulus == 0 {
            return Err(Error::InvalidInput("modulus must be positive".into()));
        }
        let len = table_len(group.order(), degree)?;
        if table.len() != len {
            return Err(Error::InvalidInput(format!(
                "table has {} entries, expected {len}",
                table.len()
            )));
        }
        if table.iter().any(|&x| x >= modulus) {
            return Err(Error::InvalidInput(format!("exponent not reduced mod {modulus}")));
        }
        let c = Cochain { group, degree, modulus, table };
        if !c.is_normalized() {
            return Err(Error::NotNormalized);
        }
        Ok(c)
    }

    pub fn zero(group: &FinAbGroup, degree: usize, modulus: u64) -> Result<Self> {
        check_degree(degree)?;
        if modulus == 0 {
            return Err(Error::InvalidInput("modulus must be positive".into()));
        }
        let len = table_len(group.order(), degree)?;
        Ok(Cochain { group: group.clone(), degree, modulus, table: vec![0; len] })
    }

    /// Tabulates `f` on element indices; the result must be normalized.
    pub fn from_index_fn(
        group: &FinAbGroup,
        degree: usize,
        modulus: u64,
        mut f: impl FnMut(&[usize]) -> i64,
    ) -> Result<Self> {
        let mut c = Self::zero(group, degree, modulus)?;
        let n = group.order();
        let mut args = vec![0usize; degree];
        for idx in 0..c.table.len() {
            unrank(idx, n, &mut args);
            c.table[idx] = f(&args).rem_euclid(modulus as i64) as u64;
        }
        if !c.is_normalized() {
            return Err(Error::NotNormalized);
        }
        Ok(c)
    }

    /// Tabulates `f` on group elements; the result must be normalized.
    pub fn from_fn(
        group: &FinAbGroup,
        degree: usize,
        modulus: u64,
        mut f: impl FnMut(&[GroupElement]) -> i64,
    ) -> Result<Self> {
        let elems: Vec<GroupElement> = group.elements().collect();
        let mut buf: Vec<GroupElement> = Vec::with_capacity(degree);
        Self::from_index_fn(group, degree, modulus, |args| {
            buf.clear();
            buf.extend(args.iter().map(|&i| elems[i].clone()));
            f(&buf)
        })
    }

    /// Normalized sparse construction: unspecified entries are zero.
    pub fn from_sparse(
        group: &FinAbGroup,
        degree: usize,
        modulus: u64,
        entries: &[(Vec<usize>, i64)],
    ) -> Result<Self> {
        let mut c = Self::zero(group, degree, modulus)?;
        let n = group.order();
        for (args, v) in entries {
            if args.len() != degree || args.iter().any(|&a| a >= n) {
                return Err(Error::InvalidInput("sparse entry has bad arguments".into()));
            }
            c.table[rank(args, n)] = v.rem_euclid(modulus as i64) as u64;
        }
        if !c.is_normalized() {
            return Err(Error::NotNormalized);
        }
        Ok(c)
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    #[inline]
    pub fn at(&self, args: &[usize]) -> u64 {
        debug_assert_eq!(args.len(), self.degree);
        self.table[rank(args, self.group.order())]
    }

    pub fn eval(&self, args: &[GroupElement]) -> u64 {
        let idx: Vec<usize> = args.iter().map(|g| self.group.element_index(g)).collect();
        self.at(&idx)
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|&x| x == 0)
    }

    pub fn is_normalized(&self) -> bool {
        let n = self.group.order();
        let mut args = vec![0usize; self.degree];
        self.table.iter().enumerate().all(|(idx, &x)| {
            if x == 0 {
                return true;
            }
            unrank(idx, n, &mut args);
            args.iter().all(|&a| a != 0)
        })
    }

    fn same_shape(&self, other: &Cochain) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch { left: self.modulus, right: other.modulus });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeOutOfRange(other.degree));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.same_shape(other)?;
        let m = self.modulus;
        let table = self.table.iter().zip(&other.table).map(|(&a, &b)| (a + b) % m).collect();
        Ok(Cochain { table, ..self.clone() })
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cochain {
        let m = self.modulus;
        Cochain { table: self.table.iter().map(|&a| (m - a) % m).collect(), ..self.clone() }
    }

    pub fn scale(&self, k: i64) -> Cochain {
        let m = self.modulus as i128;
        Cochain {
            table: self
                .table
                .iter()
                .map(|&a| (a as i128 * k as i128).rem_euclid(m) as u64)
                .collect(),
            ..self.clone()
        }
    }

    /// Reinterprets the values in `μ_{N·factor}` via `ζ_N = ζ_{N·factor}^{factor}`.
    pub fn lift(&self, factor: u64) -> Result<Cochain> {
        if factor == 0 {
            return Err(Error::InvalidInput("lift factor must be positive".into()));
        }
        Ok(Cochain {
            group: self.group.clone(),
            degree: self.degree,
            modulus: self.modulus * factor,
            table: self.table.iter().map(|&a| a * factor).collect(),
        })
    }

    /// Inverse of `lift`: succeeds when every value lies in the smaller `μ_M`.
    pub fn descend(&self, new_modulus: u64) -> Option<Cochain> {
        if new_modulus == 0 || self.modulus % new_modulus != 0 {
            return None;
        }
        let f = self.modulus / new_modulus;
        if self.table.iter().any(|&a| a % f != 0) {
            return None;
        }
        Some(Cochain {
            group: self.group.clone(),
            degree: self.degree,
            modulus: new_modulus,
            table: self.table.iter().map(|&a| a / f).collect(),
        })
    }

    /// Lifts to a common modulus with `other`.
    pub fn common_modulus(&self, other: &Cochain) -> Result<(Cochain, Cochain)> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let l = lcm(self.modulus, other.modulus);
        Ok((self.lift(l / self.modulus)?, other.lift(l / other.modulus)?))
    }
}

/// Evaluates `(δf)` at one tuple of element indices.
fn coboundary_at(f: &Cochain, tabs: &GroupTables, args: &[usize], buf: &mut Vec<usize>) -> i64 {
    let k = f.degree;
    let mut acc: i64 = 0;
    buf.clear();
    buf.extend_from_slice(&args[1..]);
    acc += f.at(buf) as i64;
    for i in 0..k {
        buf.clear();
        buf.extend_from_slice(&args[..i]);
        buf.push(tabs.add(args[i], args[i + 1]));
        buf.extend_from_slice(&args[i + 2..]);
        let v = f.at(buf) as i64;
        if i % 2 == 0 {
            acc -= v;
        } else {
            acc += v;
        }
    }
    buf.clear();
    buf.extend_from_slice(&args[..k]);
    let v = f.at(buf) as i64;
    if k % 2 == 0 {
        acc -= v;
    } else {
        acc += v;
    }
    acc
}

/// The bar coboundary `δf`, of degree `deg f + 1`.
pub fn coboundary(f: &Cochain) -> Result<Cochain> {
    if f.degree > 3 {
        return Err(Error::DegreeOutOfRange(f.degree + 1));
    }
    let tabs = f.group.tables();
    let mut buf = Vec::with_capacity(f.degree);
    Cochain::from_index_fn(&f.group, f.degree + 1, f.modulus, |args| {
        coboundary_at(f, &tabs, args, &mut buf)
    })
}

/// `δf ≡ 0`. Degree-4 cochains are tested pointwise.
pub fn is_cocycle(f: &Cochain) -> bool {
    let n = f.group.order();
    let tabs = f.group.tables();
    let m = f.modulus as i64;
    let mut buf = Vec::with_capacity(f.degree);
    let mut args = vec![0usize; f.degree + 1];
    let total = n.pow(f.degree as u32 + 1);
    (0..total).all(|idx| {
        unrank(idx, n, &mut args);
        args.contains(&0) || coboundary_at(f, &tabs, &args, &mut buf).rem_euclid(m) == 0
    })
}

/// `p*f = f∘(p×…×p)`.
pub fn pullback(p: &GroupHom, f: &Cochain) -> Result<Cochain> {
    if p.target() != &f.group {
        return Err(Error::GroupMismatch);
    }
    let map = p.index_map();
    let mut buf = vec![0usize; f.degree];
    Cochain::from_index_fn(p.source(), f.degree, f.modulus, |args| {
        for (b, &a) in buf.iter_mut().zip(args) {
            *b = map[a];
        }
        f.at(&buf) as i64
    })
}

/// Enumeration of normalized argument tuples (no identity entry), which are
/// the coordinates of the normalized cochain module.
struct NormalCoords {
    order: usize,
    degree: usize,
}

impl NormalCoords {
    fn len(&self) -> usize {
        (self.order - 1).pow(self.degree as u32)
    }

    /// Coordinate of a tuple with all entries nonzero.
    #[inline]
    fn coord(&self, args: &[usize]) -> usize {
        args.iter().fold(0, |acc, &a| acc * (self.order - 1) + (a - 1))
    }

    fn args(&self, mut c: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = c % (self.order - 1) + 1;
            c /= self.order - 1;
        }
    }
}

/// The row of the coboundary matrix `δ_k` at a normalized `(k+1)`-tuple,
/// expressed in normalized `k`-coordinates.
fn coboundary_row(coords: &NormalCoords, tabs: &GroupTables, args: &[usize]) -> Vec<(usize, i64)> {
    let k = coords.degree;
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(k + 2);
    let mut buf: Vec<usize> = Vec::with_capacity(k);
    let push = |buf: &[usize], s: i64, out: &mut Vec<(usize, i64)>| {
        if buf.iter().all(|&a| a != 0) {
            out.push((coords.coord(buf), s));
        }
    };
    buf.extend_from_slice(&args[1..]);
    push(&buf, 1, &mut out);
    for i in 0..k {
        buf.clear();
        buf.extend_from_slice(&args[..i]);
        buf.push(tabs.add(args[i], args[i + 1]));
        buf.extend_from_slice(&args[i + 2..]);
        push(&buf, if i % 2 == 0 { -1 } else { 1 }, &mut out);
    }
    buf.clear();
    buf.extend_from_slice(&args[..k]);
    push(&buf, if k % 2 == 0 { -1 } else { 1 }, &mut out);
    out
}

fn cochain_from_coords(
    group: &FinAbGroup,
    degree: usize,
    modulus: u64,
    x: &[u64],
) -> Cochain {
    let coords = NormalCoords { order: group.order(), degree };
    let mut c = Cochain::zero(group, degree, modulus).expect("valid degree");
    let mut args = vec![0usize; degree];
    for (i, &v) in x.iter().enumerate() {
        coords.args(i, &mut args);
        c.table[rank(&args, group.order())] = v % modulus;
    }
    c
}

/// Finds a normalized 2-cochain `α` with `δα = target` over `Z/N`, where `N`
/// is the modulus of `target`.
pub fn solve_coboundary(target: &Cochain) -> Result<Option<Cochain>> {
    solve_coboundary_with(target, &Budget::default())
}

pub fn solve_coboundary_with(target: &Cochain, budget: &Budget) -> Result<Option<Cochain>> {
    if target.degree != 3 {
        return Err(Error::DegreeOutOfRange(target.degree));
    }
    if !is_cocycle(target) {
        return Err(Error::NotCocycle);
    }
    solve_degree(target, 2, budget)
}

/// Solves `δx = target` for a normalized `x` of degree `deg(target) − 1`.
fn solve_degree(target: &Cochain, k: usize, budget: &Budget) -> Result<Option<Cochain>> {
    let g = &target.group;
    let n = g.order();
    if n > budget.max_solve_order {
        return Err(Error::BudgetExceeded(format!(
            "solving coboundary equations on a group of order {n} (limit {})",
            budget.max_solve_order
        )));
    }
    if n == 1 {
        return Ok(Some(Cochain::zero(g, k, target.modulus)?));
    }
    let tabs = g.tables();
    let coords = NormalCoords { order: n, degree: k };
    let rows = NormalCoords { order: n, degree: k + 1 };
    let mut sys = SparseSystem::new(coords.len());
    let mut args = vec![0usize; k + 1];
    for r in 0..rows.len() {
        rows.args(r, &mut args);
        let row = coboundary_row(&coords, &tabs, &args);
        sys.push(row, target.at(&args) as i64);
    }
    let Some(x) = sys.solve(target.modulus) else { return Ok(None) };
    let alpha = cochain_from_coords(g, k, target.modulus, &x);
    if coboundary(&alpha)? != *target {
        return Err(Error::InvariantViolation("coboundary solution failed re-verification".into()));
    }
    Ok(Some(alpha))
}

/// Tries `solve_coboundary` after lifting `target` by each factor in turn.
/// Returns the factor used together with `α` at modulus `N·factor`.
pub fn solve_coboundary_lifted(
    target: &Cochain,
    factors: &[u64],
    budget: &Budget,
) -> Result<Option<(u64, Cochain)>> {
    for &f in factors {
        if let Some(a) = solve_coboundary_with(&target.lift(f)?, budget)? {
            return Ok(Some((f, a)));
        }
    }
    Ok(None)
}

/// Looks for `α` with `δα = f − g` after lifting both cocycles to
/// `lcm(N_f, N_g)·|G|`. The witness lives at that modulus.
pub fn are_cohomologous(f: &Cochain, g: &Cochain) -> Result<Option<Cochain>> {
    are_cohomologous_with(f, g, f.group.order() as u64, &Budget::default())
}

pub fn are_cohomologous_with(
    f: &Cochain,
    g: &Cochain,
    lift: u64,
    budget: &Budget,
) -> Result<Option<Cochain>> {
    if f.degree != 3 || g.degree != 3 {
        return Err(Error::DegreeOutOfRange(if f.degree != 3 { f.degree } else { g.degree }));
    }
    if !is_cocycle(f) || !is_cocycle(g) {
        return Err(Error::NotCocycle);
    }
    let (a, b) = f.common_modulus(g)?;
    let diff = a.sub(&b)?.lift(lift)?;
    solve_coboundary_with(&diff, budget)
}

/// The degree-3 cocycle `(x,y,z) ↦ T(x,y,z)` of a trilinear form.
pub fn trilinear_cocycle(t: &TrilinearForm) -> Result<Cochain> {
    let g = t.group().clone();
    let elems: Vec<GroupElement> = g.elements().collect();
    Cochain::from_index_fn(&g, 3, t.modulus(), |a| {
        t.eval(&elems[a[0]], &elems[a[1]], &elems[a[2]]) as i64
    })
}

/// The cocycle `ω(a,b,c) = ζ_N^{e·a·⌊(b+c)/n⌋}` on `Z/n`. Requires `N | e·n`.
pub fn cyclic_class_cocycle(n: u64, e: u64, modulus: u64) -> Result<Cochain> {
    if modulus == 0 || (e % modulus) * n % modulus != 0 {
        return Err(Error::InvalidInput(format!(
            "exponent {e} does not define an {n}-th root of unity mod {modulus}"
        )));
    }
    let g = FinAbGroup::cyclic(n)?;
    let n = n as usize;
    Cochain::from_index_fn(&g, 3, modulus, |a| {
        let carry = ((a[1] + a[2]) / n) as i64;
        (e % modulus) as i64 * a[0] as i64 * carry
    })
}

/// `Σ_{k ∈ Z/n} ω(1,k,1)`: a complete invariant of classes on a cyclic group.
pub fn cyclic_class_invariant(omega: &Cochain) -> Result<u64> {
    let f = omega.group.invariant_factors();
    if f.len() != 1 || omega.degree != 3 {
        return Err(Error::InvalidInput("expected a 3-cochain on a cyclic group".into()));
    }
    let n = omega.group.order();
    let m = omega.modulus;
    Ok((0..n).fold(0, |acc, k| (acc + omega.at(&[1, k, 1])) % m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyGroup {
    pub group: FinAbGroup,
    pub degree: usize,
    pub modulus: u64,
    /// Invariant factors `d_1 | d_2 | …`, all greater than one.
    pub invariant_factors: Vec<u64>,
    /// A cocycle of order `d_i` for each factor, generating the group.
    pub representatives: Vec<Cochain>,
}

impl CohomologyGroup {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }
}

/// `H^k(G, Z/N)` for `k ∈ {1,2,3}`.
pub fn cohomology_group(g: &FinAbGroup, k: usize, modulus: u64) -> Result<CohomologyGroup> {
    cohomology_group_with(g, k, modulus, &Budget::default())
}

pub fn cohomology_group_with(
    g: &FinAbGroup,
    k: usize,
    modulus: u64,
    budget: &Budget,
) -> Result<CohomologyGroup> {
    if !(1..=3).contains(&k) {
        return Err(Error::DegreeOutOfRange(k));
    }
    if modulus == 0 {
        return Err(Error::InvalidInput("modulus must be positive".into()));
    }
    let n = g.order();
    let limit = budget.max_cohomology_order;
    let cells_limit = limit.saturating_pow(4);
    if n.checked_pow(k as u32 + 1).is_none_or(|c| c > cells_limit) {
        return Err(Error::BudgetExceeded(format!(
            "degree-{k} cohomology on a group of order {n} (limit: order {limit} in degree 3)"
        )));
    }
    let empty = CohomologyGroup {
        group: g.clone(),
        degree: k,
        modulus,
        invariant_factors: Vec::new(),
        representatives: Vec::new(),
    };
    if n == 1 || modulus == 1 {
        return Ok(empty);
    }
    let tabs = g.tables();
    // p-primary parts: (p^c, representative exponents mod p^e lifted to N)
    let mut primary: Vec<Vec<(u64, Vec<u64>)>> = Vec::new();
    for ring in local_rings(modulus) {
        let mut parts = primary_part(g, &tabs, k, ring);
        let lift = modulus / ring.m;
        for (_, x) in parts.iter_mut() {
            for v in x.iter_mut() {
                *v = *v * lift % modulus;
            }
        }
        parts.sort_by_key(|p| core::cmp::Reverse(p.0));
        primary.push(parts);
    }
    // Largest factors first: d_top = ∏_p (largest p-part), and so on.
    let count = primary.iter().map(|v| v.len()).max().unwrap_or(0);
    let dim = NormalCoords { order: n, degree: k }.len();
    let mut factors = Vec::new();
    let mut reps = Vec::new();
    for i in 0..count {
        let mut d = 1;
        let mut x = vec![0u64; dim];
        for parts in &primary {
            if let Some((q, xp)) = parts.get(i) {
                d *= q;
                for (a, b) in x.iter_mut().zip(xp) {
                    *a = (*a + b) % modulus;
                }
            }
        }
        factors.push(d);
        reps.push(cochain_from_coords(g, k, modulus, &x));
    }
    factors.reverse();
    reps.reverse();
    for r in &reps {
        if !is_cocycle(r) {
            return Err(Error::InvariantViolation("cohomology representative is not closed".into()));
        }
    }
    Ok(CohomologyGroup { invariant_factors: factors, representatives: reps, ..empty })
}

/// `H^k(G, Z/p^e)` as a list of (cyclic order, representative in normalized
/// coordinates mod `p^e`).
fn primary_part(g: &FinAbGroup, tabs: &GroupTables, k: usize, ring: LocalRing) -> Vec<(u64, Vec<u64>)> {
    let n = g.order();
    let m = ring.m;
    let e = ring.e;
    let cols = NormalCoords { order: n, degree: k };
    let dk = NormalCoords { order: n, degree: k + 1 };
    let dim = cols.len();

    // Row space of δ_k, compressed through the echelon form.
    let mut ech = Echelon::new(ring, dim);
    let mut args = vec![0usize; k + 1];
    for r in 0..dk.len() {
        dk.args(r, &mut args);
        ech.insert_sparse(&coboundary_row(&cols, tabs, &args));
    }
    let rows = ech.rows();
    let mut a = Mat::zeros(rows.len(), dim);
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            a.set(i, j, v as u64);
        }
    }
    let snf = smith_local(ring, a, true, true, false);
    let v = snf.v.expect("tracked");
    let v_inv = snf.v_inv.expect("tracked");
    // Kernel coordinates: z_i = p^{e-b_i}·t_i with t_i ∈ Z/p^{b_i}.
    let mut b = vec![e; dim];
    for (i, &a_i) in snf.diag.iter().enumerate() {
        b[i] = a_i.min(e);
    }
    let kernel: Vec<usize> = (0..dim).filter(|&i| b[i] > 0).collect();

    // Image of δ_{k-1} in t-coordinates.
    let mut images: Vec<Vec<u64>> = Vec::new();
    if k >= 2 {
        let lower = NormalCoords { order: n, degree: k - 1 };
        let mut y_cols = vec![vec![0u64; dim]; lower.len()];
        let mut args = vec![0usize; k];
        for r in 0..dim {
            cols.args(r, &mut args);
            for (c, s) in coboundary_row(&lower, tabs, &args) {
                let y = &mut y_cols[c][r];
                *y = (*y as i64 + s).rem_euclid(m as i64) as u64;
            }
        }
        for y in y_cols {
            let z = v_inv.mul_vec(&y, m);
            let t: Vec<u64> = kernel
                .iter()
                .map(|&i| {
                    let s = ring.pow_p(e - b[i]);
                    debug_assert_eq!(z[i] % s, 0, "image not inside the kernel");
                    z[i] / s
                })
                .collect();
            images.push(t);
        }
    }

    // Presentation [diag(p^{b_i}) | T] of the quotient.
    let r = kernel.len();
    let mut pres = Mat::zeros(r, r + images.len());
    for (row, &i) in kernel.iter().enumerate() {
        pres.set(row, row, ring.pow_p(b[i]) % m);
        for (j, t) in images.iter().enumerate() {
            pres.set(row, r + j, t[row] % m);
        }
    }
    let snf2 = smith_local(ring, pres, false, false, true);
    let u_inv = snf2.u_inv.expect("tracked");
    let mut out = Vec::new();
    for (j, &c) in snf2.diag.iter().enumerate() {
        let c = c.min(e);
        if c == 0 {
            continue;
        }
        let t = u_inv.column(j);
        let mut z = vec![0u64; dim];
        for (row, &i) in kernel.iter().enumerate() {
            z[i] = t[row] * ring.pow_p(e - b[i]) % m;
        }
        out.push((ring.pow_p(c), v.mul_vec(&z, m)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FinAbGroup {
        FinAbGroup::cyclic(n).unwrap()
    }

    #[test]
    fn coboundary_of_one_cochain() {
        let g = z(2);
        let f = Cochain::new(g, 1, 2, vec![0, 1]).unwrap();
        let d = coboundary(&f).unwrap();
        assert_eq!(d.at(&[1, 1]), 0);
    }

    #[test]
    fn rejects_unnormalized() {
        assert_eq!(Cochain::new(z(2), 1, 2, vec![1, 0]), Err(Error::NotNormalized));
        assert!(Cochain::new(z(2), 1, 2, vec![0, 2]).is_err());
    }

    #[test]
    fn degree_three_identity_matches_multiplicative_form() {
        // δω(g,h,k,l) = ω(h,k,l) − ω(g+h,k,l) + ω(g,h+k,l) − ω(g,h,k+l) + ω(g,h,k)
        let g = FinAbGroup::new(&[2, 2]).unwrap();
        let mut state = 7u64;
        let w = Cochain::from_index_fn(&g, 3, 5, |a| {
            if a.contains(&0) {
                return 0;
            }
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as i64 % 5
        })
        .unwrap();
        let d = coboundary(&w).unwrap();
        let t = g.tables();
        for idx in 0..256usize {
            let a = [idx >> 6 & 3, idx >> 4 & 3, idx >> 2 & 3, idx & 3];
            let lhs = w.at(&[t.add(a[0], a[1]), a[2], a[3]]) + w.at(&[a[0], a[1], t.add(a[2], a[3])]);
            let rhs = w.at(&[a[0], a[1], a[2]]) + w.at(&[a[0], t.add(a[1], a[2]), a[3]]) + w.at(&[a[1], a[2], a[3]]);
            assert_eq!(d.at(&a), (rhs + 10 - lhs) % 5);
        }
    }

    #[test]
    fn cyclic_generator_example() {
        let w = cyclic_class_cocycle(2, 1, 2).unwrap();
        assert_eq!(w.at(&[1, 1, 1]), 1);
        assert!(is_cocycle(&w));
        assert!(solve_coboundary(&w).unwrap().is_none());
    }

    #[test]
    fn solve_recovers_coboundaries() {
        let g = FinAbGroup::new(&[2, 2]).unwrap();
        let a0 = Cochain::from_index_fn(&g, 2, 4, |a| if a.contains(&0) { 0 } else { (a[0] * 3 + a[1]) as i64 }).unwrap();
        let t = coboundary(&a0).unwrap();
        let a = solve_coboundary(&t).unwrap().unwrap();
        assert_eq!(coboundary(&a).unwrap(), t);
    }

    #[test]
    fn cyclic_cohomology_small() {
        for n in [2u64, 3, 4, 6] {
            let h = cohomology_group(&z(n), 3, n).unwrap();
            assert_eq!(h.invariant_factors, vec![n]);
        }
        let h1 = cohomology_group(&z(4), 1, 6).unwrap();
        assert_eq!(h1.invariant_factors, vec![2]);
    }
}
