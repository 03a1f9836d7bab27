//! Pointedness of the Yetter–Drinfeld category over `k^ω Λ` and the
//! cocycles `ω_α` attached to central extensions.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::cochain::{is_cocycle, Cochain};
use crate::error::{Error, Result};
use crate::group::{Character, FinAbGroup, GroupElement};

/// `β_l(g,h) = ω(g,l,h) − ω(g,h,l) − ω(l,g,h)`.
pub fn beta_cocycle(omega: &Cochain, l: &GroupElement) -> Result<Cochain> {
    if omega.degree() != 3 {
        return Err(Error::DegreeOutOfRange(omega.degree()));
    }
    if !omega.group().contains(l) {
        return Err(Error::GroupMismatch);
    }
    let li = omega.group().element_index(l);
    let beta = beta_at_index(omega, li)?;
    if !is_cocycle(&beta) {
        return Err(Error::InvariantViolation("β_l is not closed".into()));
    }
    Ok(beta)
}

fn beta_at_index(omega: &Cochain, l: usize) -> Result<Cochain> {
    Cochain::from_index_fn(omega.group(), 2, omega.modulus(), |a| {
        let (g, h) = (a[0], a[1]);
        omega.at(&[g, l, h]) as i64 - omega.at(&[g, h, l]) as i64 - omega.at(&[l, g, h]) as i64
    })
}

fn is_symmetric(beta: &Cochain) -> bool {
    let n = beta.group().order();
    (0..n).all(|g| (g + 1..n).all(|h| beta.at(&[g, h]) == beta.at(&[h, g])))
}

fn require_cocycle(omega: &Cochain) -> Result<()> {
    if omega.degree() != 3 {
        return Err(Error::DegreeOutOfRange(omega.degree()));
    }
    if !is_cocycle(omega) {
        return Err(Error::NotCocycle);
    }
    Ok(())
}

/// `Λ_ω = {l : β_l symmetric}`, checked to be a subgroup.
pub fn lambda_omega(omega: &Cochain) -> Result<Vec<GroupElement>> {
    require_cocycle(omega)?;
    let g = omega.group();
    let n = g.order();
    let mut inside = vec![false; n];
    for l in 0..n {
        inside[l] = is_symmetric(&beta_at_index(omega, l)?);
    }
    let t = g.tables();
    for a in 0..n {
        for b in 0..n {
            if inside[a] && inside[b] && !inside[t.add(a, b)] {
                return Err(Error::InvariantViolation("Λ_ω is not a subgroup".into()));
            }
        }
    }
    Ok((0..n).filter(|&l| inside[l]).map(|l| g.element_from_index(l)).collect())
}

/// Every `β_l` symmetric.
pub fn is_pointed(omega: &Cochain) -> Result<bool> {
    require_cocycle(omega)?;
    let n = omega.group().order();
    for l in 0..n {
        if !is_symmetric(&beta_at_index(omega, l)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `|Λ̂|·|Λ_ω|`, the number of invertible simple objects.
pub fn invertible_count(omega: &Cochain) -> Result<usize> {
    Ok(omega.group().order() * lambda_omega(omega)?.len())
}

/// `β_l(g,h) − β_l(h,g)` as an exponent. For any 3-cochain this equals
/// `−ψ(l,g,h)`, so the ratio `β_l(g,h)/β_l(h,g)` is `ψ(l,g,h)^{-1}`.
pub fn beta_antisymmetry(omega: &Cochain, l: usize, g: usize, h: usize) -> u64 {
    let m = omega.modulus();
    let b = |x: usize, y: usize| {
        (omega.at(&[x, l, y]) + 2 * m - omega.at(&[x, y, l]) - omega.at(&[l, x, y])) % m
    };
    (b(g, h) + m - b(h, g)) % m
}

/// A normalized 2-cocycle `α: A × A → B̂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionDatum {
    a: FinAbGroup,
    b: FinAbGroup,
    alpha: Vec<Character>,
}

impl ExtensionDatum {
    /// `alpha[i·|A| + j] = α(a_i, a_j)`.
    pub fn new(a: FinAbGroup, b: FinAbGroup, alpha: Vec<Character>) -> Result<Self> {
        let n = a.order();
        if alpha.len() != n * n {
            return Err(Error::InvalidInput(format!(
                "α table has {} entries, expected {}",
                alpha.len(),
                n * n
            )));
        }
        if alpha.iter().any(|c| c.group() != &b) {
            return Err(Error::GroupMismatch);
        }
        for i in 0..n {
            if !alpha[i].is_trivial() || !alpha[i * n].is_trivial() {
                return Err(Error::NotNormalized);
            }
        }
        let t = a.tables();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = alpha[x * n + y].mul(&alpha[t.add(x, y) * n + z]);
                    let rhs = alpha[x * n + t.add(y, z)].mul(&alpha[y * n + z]);
                    if lhs != rhs {
                        return Err(Error::InvariantViolation(format!(
                            "α fails the 2-cocycle identity at ({x},{y},{z})"
                        )));
                    }
                }
            }
        }
        Ok(ExtensionDatum { a, b, alpha })
    }

    pub fn a(&self) -> &FinAbGroup {
        &self.a
    }

    pub fn b(&self) -> &FinAbGroup {
        &self.b
    }

    pub fn alpha(&self, x: usize, y: usize) -> &Character {
        &self.alpha[x * self.a.order() + y]
    }

    pub fn table(&self) -> &[Character] {
        &self.alpha
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.a.order();
        (0..n).all(|x| (0..n).all(|y| self.alpha(x, y) == self.alpha(y, x)))
    }

    /// `A ⊕ B` with A-coordinates first.
    pub fn total_group(&self) -> FinAbGroup {
        self.a.direct_sum(&self.b)
    }
}

/// `ω_α((a₁,x₁),(a₂,x₂),(a₃,x₃)) = α(a₁,a₂)(x₃)` on `A ⊕ B`, with values in
/// `μ_e` for `e` the exponent of `B`.
pub fn extension_cocycle(d: &ExtensionDatum) -> Result<Cochain> {
    let total = d.total_group();
    let ra = d.a.rank();
    let elems: Vec<GroupElement> = total.elements().collect();
    let split = |g: &GroupElement| -> (usize, GroupElement) {
        let a = d.a.element(&g.coords()[..ra]).expect("A part");
        let b = d.b.element(&g.coords()[ra..]).expect("B part");
        (d.a.element_index(&a), b)
    };
    let w = Cochain::from_index_fn(&total, 3, d.b.exponent(), |args| {
        let (a1, _) = split(&elems[args[0]]);
        let (a2, _) = split(&elems[args[1]]);
        let (_, x3) = split(&elems[args[2]]);
        d.alpha(a1, a2).eval(&x3) as i64
    })?;
    if !is_cocycle(&w) {
        return Err(Error::InvariantViolation("ω_α is not closed".into()));
    }
    Ok(w)
}

/// A finite group given by its multiplication table on indices `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulTable {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    labels: Vec<(usize, usize)>,
}

impl MulTable {
    /// Validates associativity, a two-sided identity and inverses.
    pub fn new(order: usize, table: Vec<usize>, labels: Vec<(usize, usize)>) -> Result<Self> {
        if table.len() != order * order || labels.len() != order || order == 0 {
            return Err(Error::InvalidInput("multiplication table has the wrong shape".into()));
        }
        if table.iter().any(|&x| x >= order) {
            return Err(Error::InvalidInput("product out of range".into()));
        }
        let mul = |x: usize, y: usize| table[x * order + y];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or_else(|| Error::InvariantViolation("no identity element".into()))?;
        for x in 0..order {
            if !(0..order).any(|y| mul(x, y) == identity && mul(y, x) == identity) {
                return Err(Error::InvariantViolation(format!("element {x} has no inverse")));
            }
            for y in 0..order {
                for z in 0..order {
                    if mul(mul(x, y), z) != mul(x, mul(y, z)) {
                        return Err(Error::InvariantViolation(format!(
                            "not associative at ({x},{y},{z})"
                        )));
                    }
                }
            }
        }
        Ok(MulTable { order, table, identity, labels })
    }

    /// The table of an abelian group, labelled `(0, index)`.
    pub fn from_abelian(g: &FinAbGroup) -> Self {
        let t = g.tables();
        let n = g.order();
        let table = (0..n * n).map(|i| t.add(i / n, i % n)).collect();
        MulTable { order: n, table, identity: 0, labels: (0..n).map(|i| (0, i)).collect() }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[(usize, usize)] {
        &self.labels
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }
}

/// `B̂ ⋊_α A` with `(χ,a)(χ',a') = (χχ'α(a,a'), a+a')`. Element `(χ, a)` has
/// index `χ·|A| + a`, where characters are indexed like elements of `B`.
pub fn central_extension(d: &ExtensionDatum) -> Result<MulTable> {
    let na = d.a.order();
    let chars = Character::all(&d.b);
    let nb = chars.len();
    let char_index = |c: &Character| -> usize {
        let g = d.b.element(c.exponents()).expect("character exponents are coordinates");
        d.b.element_index(&g)
    };
    let ta = d.a.tables();
    let n = na * nb;
    let mut table = vec![0; n * n];
    let mut labels = Vec::with_capacity(n);
    for x in 0..n {
        labels.push((x / na, x % na));
        for y in 0..n {
            let (c1, a1) = (x / na, x % na);
            let (c2, a2) = (y / na, y % na);
            let c = chars[c1].mul(&chars[c2]).mul(d.alpha(a1, a2));
            table[x * n + y] = char_index(&c) * na + ta.add(a1, a2);
        }
    }
    MulTable::new(n, table, labels)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupProfile {
    pub order: usize,
    pub is_abelian: bool,
    pub order_histogram: BTreeMap<usize, usize>,
    pub center_size: usize,
}

pub fn group_profile(t: &MulTable) -> GroupProfile {
    let n = t.order();
    let commutes = |x: usize, y: usize| t.mul(x, y) == t.mul(y, x);
    let is_abelian = (0..n).all(|x| (0..n).all(|y| commutes(x, y)));
    let center_size = (0..n).filter(|&x| (0..n).all(|y| commutes(x, y))).count();
    let mut order_histogram = BTreeMap::new();
    for x in 0..n {
        *order_histogram.entry(t.element_order(x)).or_insert(0) += 1;
    }
    GroupProfile { order: n, is_abelian, order_histogram, center_size }
}
