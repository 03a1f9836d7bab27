//! Linear algebra over `Z/N`.
//!
//! Everything is done one prime power at a time. Over the local ring `Z/p^e`
//! every nonzero element is a unit times `p^v`, which gives a clean
//! elimination: a row echelon form kept closed under multiplication by
//! annihilating powers of `p` (Howell form) for solving, and a Smith normal
//! form with transforms for computing cohomology. Results for different
//! primes are glued with the Chinese remainder theorem.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{crt, factor, inv_mod};

/// The ring `Z/p^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalRing {
    pub p: u64,
    pub e: u32,
    pub m: u64,
}

impl LocalRing {
    pub fn new(p: u64, e: u32) -> Self {
        let m = p.pow(e);
        assert!(m < (1 << 31), "modulus too large for u32 storage");
        LocalRing { p, e, m }
    }

    /// `p`-adic valuation, with `val(0) = e`.
    #[inline]
    pub fn val(&self, x: u64) -> u32 {
        if x == 0 {
            return self.e;
        }
        let mut v = 0;
        let mut x = x;
        while x % self.p == 0 {
            x /= self.p;
            v += 1;
        }
        v
    }

    #[inline]
    pub fn pow_p(&self, v: u32) -> u64 {
        self.p.pow(v)
    }

    /// A unit `u` with `u·x = p^{val(x)}`. Requires `x != 0`.
    pub fn normalizer(&self, x: u64) -> u64 {
        let v = self.val(x);
        let unit = x / self.pow_p(v);
        inv_mod(unit % self.m, self.m).expect("unit part is invertible")
    }
}

/// Prime-power decomposition of `n`.
pub fn local_rings(n: u64) -> Vec<LocalRing> {
    factor(n).into_iter().map(|(p, e)| LocalRing::new(p, e)).collect()
}

#[inline]
fn axpy(row: &mut [u32], t: u64, pivot: &[u32], m: u64) {
    // row <- row - t * pivot
    if t == 0 {
        return;
    }
    let s = m - t % m;
    for (r, &q) in row.iter_mut().zip(pivot) {
        if q != 0 {
            *r = ((*r as u64 + s * q as u64) % m) as u32;
        }
    }
}

#[inline]
fn scale_row(row: &mut [u32], u: u64, m: u64) {
    for r in row.iter_mut() {
        *r = (*r as u64 * u % m) as u32;
    }
}

/// Incremental row echelon form over `Z/p^e`, closed under the Howell
/// property: for each pivot row `r` with pivot `p^v`, `p^{e-v}·r` lies in the
/// span of the rows with later pivots. Rows are dense.
#[derive(Clone, Debug)]
pub struct Echelon {
    ring: LocalRing,
    ncols: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<Vec<u32>>,
    leads: Vec<usize>,
}

impl Echelon {
    pub fn new(ring: LocalRing, ncols: usize) -> Self {
        Echelon { ring, ncols, pivot_row: vec![None; ncols], rows: Vec::new(), leads: Vec::new() }
    }

    pub fn ring(&self) -> LocalRing {
        self.ring
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Rows in pivot order.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.pivot_row.iter().flatten().map(|&i| self.rows[i].clone()).collect()
    }

    /// Inserts a row given as `(column, coefficient)` pairs.
    pub fn insert_sparse(&mut self, entries: &[(usize, i64)]) {
        let m = self.ring.m;
        let mut row = vec![0u32; self.ncols];
        for &(c, a) in entries {
            row[c] = ((row[c] as i64 + a).rem_euclid(m as i64)) as u32;
        }
        self.insert(row);
    }

    pub fn insert(&mut self, row: Vec<u32>) {
        debug_assert_eq!(row.len(), self.ncols);
        let mut stack = vec![row];
        while let Some(r) = stack.pop() {
            self.insert_one(r, &mut stack);
        }
    }

    fn insert_one(&mut self, mut r: Vec<u32>, stack: &mut Vec<Vec<u32>>) {
        let ring = self.ring;
        let m = ring.m;
        let mut lead: Option<usize> = None;
        for c in 0..self.ncols {
            let x = r[c] as u64;
            if x == 0 {
                continue;
            }
            match self.pivot_row[c] {
                Some(pi) => {
                    let w = ring.val(self.rows[pi][c] as u64);
                    let v = ring.val(x);
                    if lead.is_none() && v < w {
                        // The new row has the smaller valuation: it takes over
                        // the pivot and the old pivot row is re-inserted.
                        scale_row(&mut r, ring.normalizer(x), m);
                        let old = core::mem::take(&mut self.rows[pi]);
                        stack.push(old);
                        lead = Some(c);
                        self.rows[pi] = Vec::new();
                        self.pivot_row[c] = None;
                        self.leads[pi] = usize::MAX;
                    } else {
                        let t = x / ring.pow_p(w);
                        axpy(&mut r, t, &self.rows[pi], m);
                    }
                }
                None => {
                    if lead.is_none() {
                        scale_row(&mut r, ring.normalizer(x), m);
                        lead = Some(c);
                    }
                }
            }
        }
        let Some(c) = lead else { return };
        let v = ring.val(r[c] as u64);
        // Reduce the other rows in column c modulo the new pivot.
        let pv = ring.pow_p(v);
        for (i, other) in self.rows.iter_mut().enumerate() {
            if self.leads[i] == usize::MAX {
                continue;
            }
            let y = other[c] as u64;
            if y >= pv {
                axpy(other, y / pv, &r, m);
            }
        }
        if v > 0 {
            let mut h = r.clone();
            scale_row(&mut h, ring.pow_p(ring.e - v), m);
            if h.iter().any(|&x| x != 0) {
                stack.push(h);
            }
        }
        // Reuse a vacated slot if there is one.
        let slot = match self.leads.iter().position(|&l| l == usize::MAX) {
            Some(s) => {
                self.rows[s] = r;
                self.leads[s] = c;
                s
            }
            None => {
                self.rows.push(r);
                self.leads.push(c);
                self.rows.len() - 1
            }
        };
        self.pivot_row[c] = Some(slot);
    }

    /// Treats the last column as the right-hand side and returns a solution
    /// of the first `ncols - 1` columns, or `None` if inconsistent. Free
    /// variables are set to zero.
    pub fn solve_augmented(&self) -> Option<Vec<u64>> {
        let ring = self.ring;
        let m = ring.m;
        let n = self.ncols - 1;
        if self.pivot_row[n].is_some() {
            return None;
        }
        let mut x = vec![0u64; n];
        for c in (0..n).rev() {
            let Some(pi) = self.pivot_row[c] else { continue };
            let row = &self.rows[pi];
            let mut s = row[n] as u64;
            for j in c + 1..n {
                if row[j] != 0 && x[j] != 0 {
                    s = (s + m - row[j] as u64 * x[j] % m) % m;
                }
            }
            let pv = row[c] as u64;
            if s % pv != 0 {
                // Cannot happen for a Howell-closed system.
                return None;
            }
            x[c] = s / pv;
        }
        Some(x)
    }
}

/// A sparse linear system `A x = b` over `Z/N` given by rows.
#[derive(Clone, Debug, Default)]
pub struct SparseSystem {
    pub ncols: usize,
    pub rows: Vec<(Vec<(usize, i64)>, i64)>,
}

impl SparseSystem {
    pub fn new(ncols: usize) -> Self {
        SparseSystem { ncols, rows: Vec::new() }
    }

    pub fn push(&mut self, entries: Vec<(usize, i64)>, rhs: i64) {
        self.rows.push((entries, rhs));
    }

    /// Checks a candidate solution modulo `n`.
    pub fn check(&self, x: &[u64], n: u64) -> bool {
        self.rows.iter().all(|(row, b)| {
            let lhs = row
                .iter()
                .fold(0i128, |acc, &(c, a)| acc + a as i128 * x[c] as i128);
            (lhs - *b as i128).rem_euclid(n as i128) == 0
        })
    }

    /// Solves modulo `n`; returns one solution with entries in `0..n`.
    pub fn solve(&self, n: u64) -> Option<Vec<u64>> {
        if n == 1 {
            return Some(vec![0; self.ncols]);
        }
        let mut parts: Vec<(LocalRing, Vec<u64>)> = Vec::new();
        for ring in local_rings(n) {
            let mut ech = Echelon::new(ring, self.ncols + 1);
            for (row, b) in &self.rows {
                let mut entries = row.clone();
                entries.push((self.ncols, *b));
                ech.insert_sparse(&entries);
                if ech.has_pivot(self.ncols) {
                    return None;
                }
            }
            parts.push((ring, ech.solve_augmented()?));
        }
        let x: Vec<u64> = (0..self.ncols)
            .map(|j| {
                let residues: Vec<(u64, u64)> =
                    parts.iter().map(|(r, sol)| (sol[j], r.m)).collect();
                crt(&residues).0
            })
            .collect();
        debug_assert!(self.check(&x, n));
        Some(x)
    }
}

/// Dense matrix over `Z/p^e` in row-major storage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut a = Self::zeros(n, n);
        for i in 0..n {
            a.data[i * n + i] = 1;
        }
        a
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul_vec(&self, x: &[u64], m: u64) -> Vec<u64> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(0u64, |acc, (&a, &b)| (acc + a * b % m) % m)
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += t·row[src]
    fn add_row(&mut self, dst: usize, src: usize, t: u64, m: u64) {
        if t % m == 0 {
            return;
        }
        let c = self.cols;
        for j in 0..c {
            let s = self.data[src * c + j];
            if s != 0 {
                let d = &mut self.data[dst * c + j];
                *d = (*d + t * s) % m;
            }
        }
    }

    /// col[dst] += t·col[src]
    fn add_col(&mut self, dst: usize, src: usize, t: u64, m: u64) {
        if t % m == 0 {
            return;
        }
        let c = self.cols;
        for i in 0..self.rows {
            let s = self.data[i * c + src];
            if s != 0 {
                let d = &mut self.data[i * c + dst];
                *d = (*d + t * s) % m;
            }
        }
    }

    fn scale_row(&mut self, i: usize, u: u64, m: u64) {
        let c = self.cols;
        for j in 0..c {
            self.data[i * c + j] = self.data[i * c + j] * u % m;
        }
    }

    fn scale_col(&mut self, j: usize, u: u64, m: u64) {
        let c = self.cols;
        for i in 0..self.rows {
            self.data[i * c + j] = self.data[i * c + j] * u % m;
        }
    }
}

/// Smith normal form `U·A·V = D` over `Z/p^e`.
///
/// `diag[i]` is the valuation of the i-th diagonal entry (`e` for zero).
/// Only the transforms that were requested are tracked.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<u32>,
    pub v: Option<Mat>,
    pub v_inv: Option<Mat>,
    pub u_inv: Option<Mat>,
}

pub fn smith_local(
    ring: LocalRing,
    mut a: Mat,
    track_v: bool,
    track_v_inv: bool,
    track_u_inv: bool,
) -> Smith {
    let m = ring.m;
    let (r, c) = (a.rows, a.cols);
    let mut v = track_v.then(|| Mat::identity(c));
    let mut v_inv = track_v_inv.then(|| Mat::identity(c));
    let mut u_inv = track_u_inv.then(|| Mat::identity(r));
    let mut diag = Vec::new();
    for t in 0..r.min(c) {
        // Entry of least valuation in the trailing block.
        let mut best: Option<(usize, usize, u32)> = None;
        'scan: for i in t..r {
            for j in t..c {
                let x = a.get(i, j);
                if x == 0 {
                    continue;
                }
                let vx = ring.val(x);
                if best.is_none_or(|(_, _, b)| vx < b) {
                    best = Some((i, j, vx));
                    if vx == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((bi, bj, vb)) = best else { break };
        a.swap_rows(t, bi);
        if let Some(ui) = u_inv.as_mut() {
            ui.swap_cols(t, bi);
        }
        a.swap_cols(t, bj);
        if let Some(vm) = v.as_mut() {
            vm.swap_cols(t, bj);
        }
        if let Some(vi) = v_inv.as_mut() {
            vi.swap_rows(t, bj);
        }
        let x = a.get(t, t);
        let u = ring.normalizer(x);
        a.scale_row(t, u, m);
        if let Some(ui) = u_inv.as_mut() {
            // U <- diag(u)·U, so U^{-1} <- U^{-1}·diag(u^{-1})
            ui.scale_col(t, inv_mod(u, m).expect("unit"), m);
        }
        let pv = ring.pow_p(vb);
        for i in t + 1..r {
            let y = a.get(i, t);
            if y == 0 {
                continue;
            }
            let f = y / pv;
            a.add_row(i, t, m - f % m, m);
            if let Some(ui) = u_inv.as_mut() {
                ui.add_col(t, i, f, m);
            }
        }
        for j in t + 1..c {
            let y = a.get(t, j);
            if y == 0 {
                continue;
            }
            let f = y / pv;
            a.add_col(j, t, m - f % m, m);
            if let Some(vm) = v.as_mut() {
                vm.add_col(j, t, m - f % m, m);
            }
            if let Some(vi) = v_inv.as_mut() {
                vi.add_row(t, j, f, m);
            }
        }
        diag.push(vb);
    }
    while diag.len() < r.min(c) {
        diag.push(ring.e);
    }
    Smith { diag, v, v_inv, u_inv }
}
