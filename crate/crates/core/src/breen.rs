//! Breen's map `ψ: H³(Λ, k^×) → Hom(∧³Λ, k^×)` and trivialization by pullback.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::cochain::{is_cocycle, pullback, solve_coboundary_lifted, Budget, Cochain};
use crate::error::{Error, Result};
use crate::group::{scaling_cover, FinAbGroup, GroupElement, GroupHom};

/// A trilinear map `Λ³ → μ_N` given by its values on generator triples.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TrilinearForm {
    group: FinAbGroup,
    modulus: u64,
    coeffs: Vec<u64>,
}

impl TrilinearForm {
    /// `coeffs[(i·m + j)·m + k]` is the exponent on `(e_i, e_j, e_k)`.
    pub fn new(group: &FinAbGroup, modulus: u64, coeffs: Vec<u64>) -> Result<Self> {
        let m = group.rank();
        if modulus == 0 {
            return Err(Error::InvalidInput("modulus must be positive".into()));
        }
        if coeffs.len() != m * m * m {
            return Err(Error::InvalidInput(format!(
                "{} trilinear coefficients for rank {m}",
                coeffs.len()
            )));
        }
        let n = group.invariant_factors();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let c = coeffs[(i * m + j) * m + k] % modulus;
                    // Well defined in each slot: N | c·n_slot.
                    if [n[i], n[j], n[k]].iter().any(|&ni| c * ni % modulus != 0) {
                        return Err(Error::InvalidInput(format!(
                            "coefficient {c} on generators ({i},{j},{k}) is not well defined"
                        )));
                    }
                }
            }
        }
        let coeffs = coeffs.into_iter().map(|c| c % modulus).collect();
        Ok(TrilinearForm { group: group.clone(), modulus, coeffs })
    }

    pub fn zero(group: &FinAbGroup, modulus: u64) -> Self {
        let m = group.rank();
        TrilinearForm { group: group.clone(), modulus, coeffs: vec![0; m * m * m] }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> u64 {
        let m = self.group.rank();
        self.coeffs[(i * m + j) * m + k]
    }

    pub fn eval(&self, x: &GroupElement, y: &GroupElement, z: &GroupElement) -> u64 {
        let m = self.group.rank();
        let (x, y, z) = (x.coords(), y.coords(), z.coords());
        let n = self.modulus as u128;
        let mut acc: u128 = 0;
        for i in 0..m {
            if x[i] == 0 {
                continue;
            }
            for j in 0..m {
                if y[j] == 0 {
                    continue;
                }
                for k in 0..m {
                    let c = self.coeff(i, j, k) as u128;
                    acc = (acc + c * x[i] as u128 % n * y[j] as u128 % n * z[k] as u128) % n;
                }
            }
        }
        acc as u64
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Vanishes whenever two arguments agree (checked on generators, which
    /// suffices by trilinearity).
    pub fn is_alternating(&self) -> bool {
        let m = self.group.rank();
        let n = self.modulus;
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let c = self.coeff(i, j, k);
                    if (i == j || j == k || i == k) && c != 0 {
                        return false;
                    }
                    if (c + self.coeff(j, i, k)) % n != 0 || (c + self.coeff(i, k, j)) % n != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Exponent-wise sum.
    pub fn add(&self, other: &TrilinearForm) -> Result<TrilinearForm> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch { left: self.modulus, right: other.modulus });
        }
        let n = self.modulus;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| (a + b) % n).collect();
        Ok(TrilinearForm { coeffs, ..self.clone() })
    }

    /// `(∧³p)^*T`: the form on the source of `p`.
    pub fn pullback(&self, p: &GroupHom) -> Result<TrilinearForm> {
        if p.target() != &self.group {
            return Err(Error::GroupMismatch);
        }
        let src = p.source();
        let m = src.rank();
        let imgs = p.images();
        let mut coeffs = vec![0; m * m * m];
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    coeffs[(i * m + j) * m + k] = self.eval(&imgs[i], &imgs[j], &imgs[k]);
                }
            }
        }
        Ok(TrilinearForm { group: src.clone(), modulus: self.modulus, coeffs })
    }
}

/// `Σ_{σ∈S₃} sgn(σ)·ω(l_σ(1), l_σ(2), l_σ(3))` at element indices.
pub fn psi_at(omega: &Cochain, a: usize, b: usize, c: usize) -> u64 {
    let n = omega.modulus();
    let even = omega.at(&[a, b, c]) + omega.at(&[b, c, a]) + omega.at(&[c, a, b]);
    let odd = omega.at(&[b, a, c]) + omega.at(&[a, c, b]) + omega.at(&[c, b, a]);
    (even % n + n - odd % n) % n
}

/// Breen's ψ of a 3-cocycle, tabulated on generator triples after checking
/// that the full table is trilinear and alternating.
pub fn psi(omega: &Cochain) -> Result<TrilinearForm> {
    if omega.degree() != 3 {
        return Err(Error::DegreeOutOfRange(omega.degree()));
    }
    if !is_cocycle(omega) {
        return Err(Error::NotCocycle);
    }
    let g = omega.group();
    let m = g.rank();
    let gens: Vec<usize> = (0..m).map(|i| g.element_index(&g.generator(i))).collect();
    let mut coeffs = vec![0; m * m * m];
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                coeffs[(i * m + j) * m + k] = psi_at(omega, gens[i], gens[j], gens[k]);
            }
        }
    }
    let form = TrilinearForm::new(g, omega.modulus(), coeffs).map_err(|_| {
        Error::InvariantViolation("ψ is not well defined on generators".into())
    })?;
    let elems: Vec<GroupElement> = g.elements().collect();
    let ord = g.order();
    for a in 0..ord {
        for b in 0..ord {
            for c in 0..ord {
                if psi_at(omega, a, b, c) != form.eval(&elems[a], &elems[b], &elems[c]) {
                    return Err(Error::InvariantViolation(format!(
                        "ψ is not trilinear at ({a},{b},{c})"
                    )));
                }
            }
        }
    }
    if !form.is_alternating() {
        return Err(Error::InvariantViolation("ψ is not alternating".into()));
    }
    Ok(form)
}

/// `ψ(ω) ≡ 1`.
pub fn is_trivializable(omega: &Cochain) -> Result<bool> {
    Ok(psi(omega)?.is_zero())
}

/// `ψ_Γ(p*ω) = (∧³p)^* ψ_Λ(ω)` on generator triples of the source.
pub fn psi_naturality_check(p: &GroupHom, omega: &Cochain) -> Result<bool> {
    let upstairs = psi(&pullback(p, omega)?)?;
    let downstairs = psi(omega)?.pullback(p)?;
    Ok(upstairs == downstairs)
}

/// How the covering group was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cover {
    /// `k` successive canonical doublings, `⊕ Z/(2^k n_i)`.
    Doubling(u32),
    /// `⊕ Z/(s·n_i)` for a non-power-of-two scale `s`.
    Scaling(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trivialization {
    pub gamma: FinAbGroup,
    pub p: GroupHom,
    /// `δα = p*ω` with `ω` lifted by `lift` (so `α` has modulus `N·lift`).
    pub alpha: Cochain,
    pub lift: u64,
    pub cover: Cover,
}

/// Candidate modulus lifts `1, 2, 4, …` up to and including `order`.
fn lift_schedule(order: u64) -> Vec<u64> {
    let mut out = vec![1];
    let mut f = 2;
    while f < order {
        out.push(f);
        f *= 2;
    }
    if order > 1 && !out.contains(&order) {
        out.push(order);
    }
    out
}

/// Searches for an epimorphism `p: Γ → Λ` and `α` with `δα = p*ω`.
///
/// Refuses immediately when `ψ(ω) ≠ 0`. Otherwise tries `k = 1..=max_doublings`
/// canonical doublings, then the covers scaled by the exponent of `Λ` and its
/// double, with modulus lifts at each step. `None` means nothing was found
/// within budget; it is not a proof of non-trivializability unless `ψ ≠ 0`.
pub fn trivialize(
    omega: &Cochain,
    max_doublings: u32,
    budget: &Budget,
) -> Result<Option<Trivialization>> {
    if max_doublings == 0 {
        return Err(Error::InvalidInput("max_doublings must be at least 1".into()));
    }
    if !is_trivializable(omega)? {
        return Ok(None);
    }
    let lambda = omega.group();
    let mut scales: Vec<(u64, Cover)> =
        (1..=max_doublings).map(|k| (1u64 << k, Cover::Doubling(k))).collect();
    let e = lambda.exponent();
    for s in [e, 2 * e] {
        if !s.is_power_of_two() && !scales.iter().any(|&(t, _)| t == s) {
            scales.push((s, Cover::Scaling(s)));
        }
    }
    for (s, cover) in scales {
        let (gamma, p) = scaling_cover(lambda, s)?;
        if gamma.order() > budget.max_solve_order {
            if matches!(cover, Cover::Doubling(1)) {
                return Err(Error::BudgetExceeded(format!(
                    "doubled group has order {} (limit {})",
                    gamma.order(),
                    budget.max_solve_order
                )));
            }
            continue;
        }
        let pulled = pullback(&p, omega)?;
        let lifts = lift_schedule(gamma.order() as u64);
        if let Some((lift, alpha)) = solve_coboundary_lifted(&pulled, &lifts, budget)? {
            return Ok(Some(Trivialization { gamma, p, alpha, lift, cover }));
        }
    }
    Ok(None)
}
