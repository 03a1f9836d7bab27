//! Finite abelian groups in explicit direct-sum form `Z/n_1 ⊕ ... ⊕ Z/n_m`.
//!
//! Elements are coordinate tuples and are indexed in row-major mixed radix,
//! so the first coordinate is the most significant digit. Cochain tables are
//! laid out with this index.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{gcd, lcm};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    factors: Vec<u64>,
    exponent: u64,
    order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl FinAbGroup {
    /// Builds `⊕ Z/n_i`. Every factor must be at least 2; the empty tuple is
    /// the trivial group.
    pub fn new(factors: &[u64]) -> Result<Self> {
        if let Some(bad) = factors.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidInput(format!("invariant factor {bad} < 2")));
        }
        let mut order: usize = 1;
        for &n in factors {
            order = order
                .checked_mul(n as usize)
                .ok_or_else(|| Error::BudgetExceeded("group order overflows".into()))?;
        }
        let exponent = factors.iter().fold(1, |e, &n| lcm(e, n));
        Ok(FinAbGroup { factors: factors.to_vec(), exponent, order })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(&[n])
    }

    pub fn trivial() -> Self {
        FinAbGroup { factors: Vec::new(), exponent: 1, order: 1 }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// `self ⊕ other`, coordinates of `self` first.
    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut f = self.factors.clone();
        f.extend_from_slice(&other.factors);
        FinAbGroup::new(&f).expect("factors already validated")
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.rank()] }
    }

    /// The i-th standard generator `e_i`.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut coords = vec![0; self.rank()];
        coords[i] = 1;
        GroupElement { coords }
    }

    pub fn element(&self, coords: &[u64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::InvalidInput(format!(
                "element has {} coordinates, group has rank {}",
                coords.len(),
                self.rank()
            )));
        }
        if coords.iter().zip(&self.factors).any(|(&c, &n)| c >= n) {
            return Err(Error::InvalidInput("coordinate out of range".into()));
        }
        Ok(GroupElement { coords: coords.to_vec() })
    }

    /// Reduces arbitrary integer coordinates into the group.
    pub fn element_reduced(&self, coords: &[i64]) -> GroupElement {
        assert_eq!(coords.len(), self.rank());
        GroupElement {
            coords: coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &n)| c.rem_euclid(n as i64) as u64)
                .collect(),
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.coords.len() == self.rank() && g.coords.iter().zip(&self.factors).all(|(&c, &n)| c < n)
    }

    pub fn element_index(&self, g: &GroupElement) -> usize {
        debug_assert!(self.contains(g));
        g.coords
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&c, &n)| acc * n as usize + c as usize)
    }

    pub fn element_from_index(&self, mut idx: usize) -> GroupElement {
        debug_assert!(idx < self.order);
        let mut coords = vec![0; self.rank()];
        for i in (0..self.rank()).rev() {
            let n = self.factors[i] as usize;
            coords[i] = (idx % n) as u64;
            idx /= n;
        }
        GroupElement { coords }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| self.element_from_index(i))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.factors)
                .map(|((&x, &y), &n)| (x + y) % n)
                .collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a.coords.iter().zip(&self.factors).map(|(&x, &n)| (n - x) % n).collect(),
        }
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&self.factors)
                .map(|(&x, &n)| ((x as i128 * k as i128).rem_euclid(n as i128)) as u64)
                .collect(),
        }
    }

    /// Least `k ≥ 1` with `k·g = 0`.
    pub fn order_of(&self, g: &GroupElement) -> u64 {
        g.coords
            .iter()
            .zip(&self.factors)
            .fold(1, |acc, (&c, &n)| lcm(acc, n / gcd(c, n)))
    }

    /// Addition and negation tables on element indices.
    pub fn tables(&self) -> GroupTables {
        let n = self.order;
        let mut add = vec![0u32; n * n];
        let mut neg = vec![0u32; n];
        let elems: Vec<GroupElement> = self.elements().collect();
        for i in 0..n {
            neg[i] = self.element_index(&self.neg(&elems[i])) as u32;
            for j in 0..n {
                add[i * n + j] = self.element_index(&self.add(&elems[i], &elems[j])) as u32;
            }
        }
        GroupTables { order: n, add, neg }
    }
}

/// Precomputed index arithmetic for hot loops.
#[derive(Clone, Debug)]
pub struct GroupTables {
    order: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
}

impl GroupTables {
    #[inline]
    pub fn add(&self, i: usize, j: usize) -> usize {
        self.add[i * self.order + j] as usize
    }

    #[inline]
    pub fn neg(&self, i: usize) -> usize {
        self.neg[i] as usize
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

/// A homomorphism given by the images of the standard generators of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FinAbGroup,
    target: FinAbGroup,
    images: Vec<GroupElement>,
}

impl GroupHom {
    pub fn new(source: FinAbGroup, target: FinAbGroup, images: Vec<GroupElement>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::InvalidInput(format!(
                "{} generator images for a source of rank {}",
                images.len(),
                source.rank()
            )));
        }
        for (j, img) in images.iter().enumerate() {
            if !target.contains(img) {
                return Err(Error::InvalidInput(format!("image {j} not in target")));
            }
            let n = source.invariant_factors()[j];
            if n % target.order_of(img) != 0 {
                return Err(Error::InvalidInput(format!(
                    "image of generator {j} has order not dividing {n}"
                )));
            }
        }
        Ok(GroupHom { source, target, images })
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        let images = (0..g.rank()).map(|i| g.generator(i)).collect();
        GroupHom { source: g.clone(), target: g.clone(), images }
    }

    /// Coordinate-wise reduction `⊕ Z/m_i → ⊕ Z/n_i`; requires `n_i | m_i`.
    pub fn reduction(source: &FinAbGroup, target: &FinAbGroup) -> Result<Self> {
        if source.rank() != target.rank()
            || source
                .invariant_factors()
                .iter()
                .zip(target.invariant_factors())
                .any(|(&m, &n)| m % n != 0)
        {
            return Err(Error::InvalidInput("reduction needs n_i | m_i factor-wise".into()));
        }
        let images = (0..target.rank()).map(|i| target.generator(i)).collect();
        Self::new(source.clone(), target.clone(), images)
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn apply(&self, g: &GroupElement) -> Result<GroupElement> {
        if !self.source.contains(g) {
            return Err(Error::GroupMismatch);
        }
        let mut acc = vec![0i64; self.target.rank()];
        for (c, img) in g.coords.iter().zip(&self.images) {
            for (a, &x) in acc.iter_mut().zip(&img.coords) {
                *a += (*c as i64) * (x as i64);
            }
        }
        Ok(self.target.element_reduced(&acc))
    }

    /// The map on element indices, as a lookup vector.
    pub fn index_map(&self) -> Vec<usize> {
        self.source
            .elements()
            .map(|g| self.target.element_index(&self.apply(&g).expect("source element")))
            .collect()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom> {
        if inner.target != self.source {
            return Err(Error::GroupMismatch);
        }
        let images = inner
            .images
            .iter()
            .map(|g| self.apply(g))
            .collect::<Result<Vec<_>>>()?;
        GroupHom::new(inner.source.clone(), self.target.clone(), images)
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for i in self.index_map() {
            hit[i] = true;
        }
        hit.into_iter().all(|b| b)
    }

    pub fn kernel(&self) -> Vec<GroupElement> {
        let id = self.target.element_index(&self.target.identity());
        self.index_map()
            .into_iter()
            .enumerate()
            .filter(|&(_, t)| t == id)
            .map(|(s, _)| self.source.element_from_index(s))
            .collect()
    }
}

/// `Γ = ⊕ Z/(k·n_i)` with its coordinate-wise reduction onto `Λ`.
pub fn scaling_cover(lambda: &FinAbGroup, k: u64) -> Result<(FinAbGroup, GroupHom)> {
    if k == 0 {
        return Err(Error::InvalidInput("scaling factor must be positive".into()));
    }
    let factors: Vec<u64> = lambda.invariant_factors().iter().map(|&n| n * k).collect();
    let gamma = FinAbGroup::new(&factors)?;
    let p = GroupHom::reduction(&gamma, lambda)?;
    Ok((gamma, p))
}

/// The canonical epimorphism `⊕ Z/2n_i → ⊕ Z/n_i`.
pub fn canonical_doubling(lambda: &FinAbGroup) -> (FinAbGroup, GroupHom) {
    scaling_cover(lambda, 2).expect("doubling of a valid group")
}

/// The coordinate-wise section `λ ↦ λ` of a reduction map.
pub fn coordinate_section(p: &GroupHom, lambda: &GroupElement) -> GroupElement {
    let g = GroupElement { coords: lambda.coords.clone() };
    debug_assert!(p.source().contains(&g));
    g
}

/// A character `g ↦ ζ_e^{Σ c_i g_i e/n_i}` where `e` is the group exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    group: FinAbGroup,
    exponents: Vec<u64>,
}

impl Character {
    pub fn new(group: &FinAbGroup, exponents: &[u64]) -> Result<Self> {
        if exponents.len() != group.rank() {
            return Err(Error::InvalidInput("character exponent count != rank".into()));
        }
        let exponents = exponents
            .iter()
            .zip(group.invariant_factors())
            .map(|(&c, &n)| c % n)
            .collect();
        Ok(Character { group: group.clone(), exponents })
    }

    pub fn trivial(group: &FinAbGroup) -> Self {
        Character { group: group.clone(), exponents: vec![0; group.rank()] }
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    /// Value on `g` as an exponent of `ζ_e`, `e` the exponent of the group.
    pub fn eval(&self, g: &GroupElement) -> u64 {
        let e = self.group.exponent();
        self.exponents
            .iter()
            .zip(&g.coords)
            .zip(self.group.invariant_factors())
            .fold(0, |acc, ((&c, &x), &n)| (acc + c * x % n * (e / n)) % e)
    }

    pub fn mul(&self, other: &Character) -> Character {
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .zip(self.group.invariant_factors())
            .map(|((&a, &b), &n)| (a + b) % n)
            .collect();
        Character { group: self.group.clone(), exponents }
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&c| c == 0)
    }

    /// All characters, indexed like the elements of the group (`Ĝ ≅ G`).
    pub fn all(group: &FinAbGroup) -> Vec<Character> {
        group
            .elements()
            .map(|g| Character { group: group.clone(), exponents: g.coords })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_examples() {
        let g = FinAbGroup::new(&[2, 2, 2]).unwrap();
        assert_eq!(g.element_index(&g.element(&[0, 0, 0]).unwrap()), 0);
        assert_eq!(g.element_index(&g.element(&[1, 0, 1]).unwrap()), 5);
        let h = FinAbGroup::new(&[2, 4]).unwrap();
        assert_eq!(h.element_index(&h.element(&[1, 3]).unwrap()), 7);
    }

    #[test]
    fn rejects_small_factors() {
        assert!(FinAbGroup::new(&[2, 1]).is_err());
        assert!(FinAbGroup::new(&[0]).is_err());
    }

    #[test]
    fn doubling_reduces() {
        let l = FinAbGroup::cyclic(2).unwrap();
        let (g, p) = canonical_doubling(&l);
        assert_eq!(g.invariant_factors(), &[4]);
        assert_eq!(p.apply(&g.element(&[2]).unwrap()).unwrap(), l.element(&[0]).unwrap());
        assert_eq!(p.apply(&g.element(&[3]).unwrap()).unwrap(), l.element(&[1]).unwrap());
        let (g2, _) = canonical_doubling(&FinAbGroup::new(&[2, 4]).unwrap());
        assert_eq!(g2.invariant_factors(), &[4, 8]);
        assert!(p.is_surjective());
        assert_eq!(p.kernel().len(), 2);
    }

    #[test]
    fn orders() {
        let g = FinAbGroup::new(&[2, 4]).unwrap();
        assert_eq!(g.order_of(&g.identity()), 1);
        assert_eq!(g.order_of(&g.element(&[1, 2]).unwrap()), 2);
        assert_eq!(g.order_of(&g.element(&[0, 1]).unwrap()), 4);
    }

    #[test]
    fn hom_rejects_ill_defined_images() {
        let z2 = FinAbGroup::cyclic(2).unwrap();
        let z4 = FinAbGroup::cyclic(4).unwrap();
        // Z/2 -> Z/4 sending 1 to 1 is not well defined.
        assert!(GroupHom::new(z2.clone(), z4.clone(), vec![z4.element(&[1]).unwrap()]).is_err());
        assert!(GroupHom::new(z2, z4.clone(), vec![z4.element(&[2]).unwrap()]).is_ok());
    }

    #[test]
    fn character_pairing() {
        let g = FinAbGroup::new(&[2, 4]).unwrap();
        let chi = Character::new(&g, &[1, 1]).unwrap();
        // e = 4: value on (1,1) is 1*(4/2) + 1*(4/4) = 3
        assert_eq!(chi.eval(&g.element(&[1, 1]).unwrap()), 3);
        assert_eq!(Character::all(&g).len(), 8);
    }
}
