//! The coefficient module ℤ[π^{k-1}] of the twisted Thom class, for π a
//! finitely generated abelian group, together with the action of π^k,
//! the action of π₁ of the source pulled back along k homomorphisms, and the
//! augmentation.
//!
//! Groups are written additively. A k-tuple `(σ₁, …, σ_k)` sends the basis
//! element `(α₁, …, α_{k-1})` to
//! `sgn(σ₁)^{k-1} · (σ₂ + α₁ − σ₁, …, σ_k + α_{k-1} − σ₁)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// ℤ^free_rank ⊕ ℤ/t₁ ⊕ … ⊕ ℤ/t_r with t₁ | t₂ | … | t_r.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroupSpec {
    free_rank: usize,
    torsion: Vec<i64>,
}

impl AbelianGroupSpec {
    pub fn new(free_rank: usize, torsion: Vec<i64>) -> Result<Self> {
        if let Some(bad) = torsion.iter().find(|&&t| t < 2) {
            return Err(Error::InvalidInput(format!(
                "invariant factor {bad} must be at least 2"
            )));
        }
        if let Some(w) = torsion.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidInput(format!(
                "invariant factors must form a divisibility chain, {} does not divide {}",
                w[0], w[1]
            )));
        }
        Ok(Self { free_rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: i64) -> Result<Self> {
        Self::new(0, vec![order])
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    /// Number of generators: free ones first, then one per invariant factor.
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// All elements of a finite group, in lexicographic order.
    pub fn enumerate(&self) -> Result<Vec<GroupElement>> {
        if !self.is_finite() {
            return Err(Error::InvalidInput("cannot enumerate an infinite group".into()));
        }
        let mut out = vec![Vec::new()];
        for &t in &self.torsion {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<i64>| {
                    (0..t).map(move |r| {
                        let mut v = prefix.clone();
                        v.push(r);
                        v
                    })
                })
                .collect();
        }
        Ok(out
            .into_iter()
            .map(|torsion| GroupElement { free: Vec::new(), torsion })
            .collect())
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            free: vec![0; self.free_rank],
            torsion: vec![0; self.torsion.len()],
        }
    }

    /// Builds an element, reducing torsion residues into `0..t`.
    pub fn element(&self, free: Vec<i64>, torsion: Vec<i64>) -> Result<GroupElement> {
        if free.len() != self.free_rank || torsion.len() != self.torsion.len() {
            return Err(Error::GroupMismatch(format!(
                "element has shape ({}, {}), group has ({}, {})",
                free.len(),
                torsion.len(),
                self.free_rank,
                self.torsion.len()
            )));
        }
        let torsion = torsion
            .iter()
            .zip(&self.torsion)
            .map(|(r, t)| r.rem_euclid(*t))
            .collect();
        Ok(GroupElement { free, torsion })
    }

    /// The i-th generator (free generators first).
    pub fn generator(&self, i: usize) -> Result<GroupElement> {
        let mut g = self.identity();
        if i < self.free_rank {
            g.free[i] = 1;
        } else if i < self.generator_count() {
            g.torsion[i - self.free_rank] = 1;
        } else {
            return Err(Error::IndexOutOfRange {
                index: i,
                lo: 0,
                hi: self.generator_count().saturating_sub(1),
            });
        }
        Ok(g)
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.free.len() == self.free_rank
            && g.torsion.len() == self.torsion.len()
            && g.torsion.iter().zip(&self.torsion).all(|(r, t)| (0..*t).contains(r))
    }

    fn require(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!("{g} is not a normalized element of {self}")))
        }
    }

    /// `a + b`; operands are assumed normalized.
    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.combine(a, b, 1)
    }

    /// `a - b`; operands are assumed normalized.
    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.combine(a, b, -1)
    }

    fn combine(&self, a: &GroupElement, b: &GroupElement, sign: i64) -> Result<GroupElement> {
        let free = a
            .free
            .iter()
            .zip(&b.free)
            .map(|(x, y)| {
                y.checked_mul(sign)
                    .and_then(|v| x.checked_add(v))
                    .ok_or(Error::IntegerOverflow("group element"))
            })
            .collect::<Result<Vec<_>>>()?;
        let torsion = a
            .torsion
            .iter()
            .zip(&b.torsion)
            .zip(&self.torsion)
            .map(|((x, y), t)| (x + sign * y).rem_euclid(*t))
            .collect();
        Ok(GroupElement { free, torsion })
    }

    /// `n · g`.
    pub fn scale(&self, g: &GroupElement, n: i64) -> Result<GroupElement> {
        let free = g
            .free
            .iter()
            .map(|x| x.checked_mul(n).ok_or(Error::IntegerOverflow("group element")))
            .collect::<Result<Vec<_>>>()?;
        let torsion = g
            .torsion
            .iter()
            .zip(&self.torsion)
            .map(|(x, t)| ((*x as i128 * n as i128).rem_euclid(*t as i128)) as i64)
            .collect();
        Ok(GroupElement { free, torsion })
    }
}

impl fmt::Display for AbelianGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    free: Vec<i64>,
    torsion: Vec<i64>,
}

impl GroupElement {
    pub fn free_part(&self) -> &[i64] {
        &self.free
    }

    pub fn torsion_part(&self) -> &[i64] {
        &self.torsion
    }

    fn coordinates(&self) -> impl Iterator<Item = i64> + '_ {
        self.free.iter().chain(&self.torsion).copied()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coordinates().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A homomorphism π → {±1} given by its values on the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientationCharacter {
    group: AbelianGroupSpec,
    signs: Vec<i8>,
}

impl OrientationCharacter {
    pub fn new(group: AbelianGroupSpec, signs: Vec<i8>) -> Result<Self> {
        if signs.len() != group.generator_count() {
            return Err(Error::ArityMismatch {
                expected: group.generator_count(),
                found: signs.len(),
            });
        }
        if let Some(s) = signs.iter().find(|s| **s != 1 && **s != -1) {
            return Err(Error::InvalidInput(format!("orientation sign {s} is not ±1")));
        }
        for (i, t) in group.torsion.iter().enumerate() {
            if t % 2 != 0 && signs[group.free_rank + i] == -1 {
                return Err(Error::InvalidInput(format!(
                    "generator of odd order {t} cannot reverse orientation"
                )));
            }
        }
        Ok(Self { group, signs })
    }

    pub fn trivial(group: AbelianGroupSpec) -> Self {
        let signs = vec![1; group.generator_count()];
        Self { group, signs }
    }

    pub fn group(&self) -> &AbelianGroupSpec {
        &self.group
    }

    pub fn is_trivial(&self) -> bool {
        self.signs.iter().all(|&s| s == 1)
    }

    /// sgn(g) = Π sign_i^{g_i}.
    pub fn sign(&self, g: &GroupElement) -> i64 {
        let odd_reversals = g
            .coordinates()
            .zip(&self.signs)
            .filter(|(c, s)| **s == -1 && c.rem_euclid(2) == 1)
            .count();
        if odd_reversals % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// An element of ℤ[π^{k-1}]: a finite integer combination of (k-1)-tuples.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    group: AbelianGroupSpec,
    k: usize,
    terms: BTreeMap<Vec<GroupElement>, i64>,
}

impl GroupRingElement {
    pub fn zero(group: AbelianGroupSpec, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidInput(format!("k must be at least 2, got {k}")));
        }
        Ok(Self { group, k, terms: BTreeMap::new() })
    }

    /// `coeff · (α₁, …, α_{k-1})`.
    pub fn basis(group: AbelianGroupSpec, tuple: Vec<GroupElement>, coeff: i64) -> Result<Self> {
        let mut x = Self::zero(group, tuple.len() + 1)?;
        x.accumulate(tuple, coeff)?;
        Ok(x)
    }

    pub fn from_terms<I>(group: AbelianGroupSpec, k: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<GroupElement>, i64)>,
    {
        let mut x = Self::zero(group, k)?;
        for (tuple, coeff) in terms {
            x.accumulate(tuple, coeff)?;
        }
        Ok(x)
    }

    fn accumulate(&mut self, tuple: Vec<GroupElement>, coeff: i64) -> Result<()> {
        if tuple.len() != self.k - 1 {
            return Err(Error::ArityMismatch { expected: self.k - 1, found: tuple.len() });
        }
        for g in &tuple {
            self.group.require(g)?;
        }
        if coeff == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(tuple.clone()).or_insert(0);
        *slot = slot
            .checked_add(coeff)
            .ok_or(Error::IntegerOverflow("group ring sum"))?;
        if *slot == 0 {
            self.terms.remove(&tuple);
        }
        Ok(())
    }

    pub fn group(&self) -> &AbelianGroupSpec {
        &self.group
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[GroupElement], i64)> {
        self.terms.iter().map(|(t, c)| (t.as_slice(), *c))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(format!("{} vs {}", self.group, other.group)));
        }
        if self.k != other.k {
            return Err(Error::ArityMismatch { expected: self.k, found: other.k });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.accumulate(t.to_vec(), c)?;
        }
        Ok(out)
    }

    pub fn checked_scale(&self, factor: i64) -> Result<Self> {
        let mut out = Self::zero(self.group.clone(), self.k)?;
        for (t, c) in self.terms() {
            let v = c
                .checked_mul(factor)
                .ok_or(Error::IntegerOverflow("group ring scaling"))?;
            out.accumulate(t.to_vec(), v)?;
        }
        Ok(out)
    }

    /// Augmentation ε: sum of the coefficients.
    pub fn augment(&self) -> Result<i64> {
        self.terms.values().try_fold(0i64, |acc, c| {
            acc.checked_add(*c).ok_or(Error::IntegerOverflow("augmentation"))
        })
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (tuple, c)) in self.terms().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let slots: Vec<String> = tuple.iter().map(|g| g.to_string()).collect();
            write!(f, "{c}·[{}]", slots.join(", "))?;
        }
        Ok(())
    }
}

/// Action of `sigma = (σ₁, …, σ_k) ∈ π^k` on `x ∈ ℤ[π^{k-1}]`.
pub fn act(
    sigma: &[GroupElement],
    x: &GroupRingElement,
    sgn: &OrientationCharacter,
) -> Result<GroupRingElement> {
    if sigma.len() != x.k {
        return Err(Error::ArityMismatch { expected: x.k, found: sigma.len() });
    }
    if sgn.group != x.group {
        return Err(Error::GroupMismatch(format!(
            "orientation character on {} applied to ℤ[{}]",
            sgn.group, x.group
        )));
    }
    for s in sigma {
        x.group.require(s)?;
    }
    let base = &sigma[0];
    let factor = if (x.k - 1).is_multiple_of(2) { 1 } else { sgn.sign(base) };
    let mut out = GroupRingElement::zero(x.group.clone(), x.k)?;
    for (tuple, coeff) in x.terms() {
        let moved = tuple
            .iter()
            .zip(&sigma[1..])
            .map(|(alpha, s)| {
                let shifted = x.group.add(s, alpha)?;
                x.group.sub(&shifted, base)
            })
            .collect::<Result<Vec<_>>>()?;
        let v = coeff
            .checked_mul(factor)
            .ok_or(Error::IntegerOverflow("group action"))?;
        out.accumulate(moved, v)?;
    }
    Ok(out)
}

/// A homomorphism of abelian groups given by the images of the source
/// generators (free generators first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    images: Vec<GroupElement>,
}

impl GroupHom {
    pub fn new(images: Vec<GroupElement>) -> Self {
        Self { images }
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }
}

/// The homomorphisms φ₁, …, φ_k induced on fundamental groups by f₁, …, f_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSystem {
    source: AbelianGroupSpec,
    target: AbelianGroupSpec,
    maps: Vec<GroupHom>,
}

impl HomSystem {
    pub fn new(source: AbelianGroupSpec, target: AbelianGroupSpec, maps: Vec<GroupHom>) -> Result<Self> {
        for (i, hom) in maps.iter().enumerate() {
            if hom.images.len() != source.generator_count() {
                return Err(Error::ArityMismatch {
                    expected: source.generator_count(),
                    found: hom.images.len(),
                });
            }
            for (g, img) in hom.images.iter().enumerate() {
                target.require(img)?;
                if g >= source.free_rank {
                    let order = source.torsion[g - source.free_rank];
                    if target.scale(img, order)? != target.identity() {
                        return Err(Error::GroupMismatch(format!(
                            "map {}: image {img} of a generator of order {order} does not have order dividing {order}",
                            i + 1
                        )));
                    }
                }
            }
        }
        Ok(Self { source, target, maps })
    }

    pub fn source(&self) -> &AbelianGroupSpec {
        &self.source
    }

    pub fn target(&self) -> &AbelianGroupSpec {
        &self.target
    }

    pub fn k(&self) -> usize {
        self.maps.len()
    }

    /// φ_i(γ) for a 0-based map index.
    pub fn apply(&self, map: usize, gamma: &GroupElement) -> Result<GroupElement> {
        self.source.require(gamma)?;
        let hom = self.maps.get(map).ok_or(Error::IndexOutOfRange {
            index: map,
            lo: 0,
            hi: self.maps.len().saturating_sub(1),
        })?;
        gamma
            .coordinates()
            .zip(&hom.images)
            .try_fold(self.target.identity(), |acc, (c, img)| {
                let term = self.target.scale(img, c)?;
                self.target.add(&acc, &term)
            })
    }
}

/// Action of γ ∈ π₁(source) on ℤ[π^{k-1}] through `(φ₁(γ), …, φ_k(γ))`.
pub fn induced_act(
    gamma: &GroupElement,
    homs: &HomSystem,
    x: &GroupRingElement,
    sgn: &OrientationCharacter,
) -> Result<GroupRingElement> {
    if homs.target != x.group {
        return Err(Error::GroupMismatch(format!(
            "homomorphisms land in {}, element lives in ℤ[{}]",
            homs.target, x.group
        )));
    }
    if homs.k() != x.k {
        return Err(Error::ArityMismatch { expected: x.k, found: homs.k() });
    }
    let sigma = (0..homs.k())
        .map(|i| homs.apply(i, gamma))
        .collect::<Result<Vec<_>>>()?;
    act(&sigma, x, sgn)
}
