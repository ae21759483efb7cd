//! Integer exterior algebra Λ*(ℤ^m), the cohomology ring of the m-torus.
//!
//! Basis monomials e^S are indexed by strictly increasing subsets S of
//! `{1..m}`, stored as bitmasks and ordered lexicographically by their index
//! sequences. Elements may mix degrees; every operation acts term-wise and
//! returns canonical form (no zero coefficients).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{determinant_i128, IntegerMatrix};

pub const MAX_RANK: usize = 64;

/// A strictly increasing subset of `{0..rank}` held as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexSet(u64);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    /// Full subset `{0..len}`.
    pub fn full(len: usize) -> Self {
        if len >= 64 {
            IndexSet(u64::MAX)
        } else {
            IndexSet((1u64 << len) - 1)
        }
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Zero-based indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    /// Sign of reordering the concatenation `self ++ other` into increasing
    /// order; `None` when the two sets intersect.
    fn merge_sign(self, other: IndexSet) -> Option<i64> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let inversions: u32 = other
            .indices()
            .map(|t| if t >= 63 { 0 } else { (self.0 >> (t + 1)).count_ones() })
            .sum();
        Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices().cmp(other.indices())
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices().map(|i| i + 1)).finish()
    }
}

/// Iterates all `size`-element subsets of `{0..rank}`.
fn subsets_of_size(rank: usize, size: usize) -> impl Iterator<Item = IndexSet> {
    // Gosper's hack over rank-bit words.
    let limit: u128 = 1u128 << rank;
    let mut next: Option<u128> = if size > rank {
        None
    } else {
        Some((1u128 << size) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        if cur >= limit && size > 0 {
            return None;
        }
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let n = (((r ^ cur) >> 2) / c) | r;
            (n < limit).then_some(n)
        };
        Some(IndexSet(cur as u64))
    })
}

/// An integer cohomology class of the torus T^rank.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExteriorElement {
    rank: usize,
    terms: BTreeMap<IndexSet, i64>,
}

impl ExteriorElement {
    pub fn zero(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidInput("exterior algebra rank must be positive".into()));
        }
        if rank > MAX_RANK {
            return Err(Error::RankTooLarge(rank));
        }
        Ok(Self { rank, terms: BTreeMap::new() })
    }

    /// `1` in degree zero.
    pub fn one(rank: usize) -> Result<Self> {
        Self::monomial(rank, &[], 1)
    }

    /// `coeff · e^{i_1 ... i_p}` for 1-based, strictly increasing indices.
    pub fn monomial(rank: usize, indices: &[usize], coeff: i64) -> Result<Self> {
        let mut x = Self::zero(rank)?;
        let set = x.index_set(indices)?;
        if coeff != 0 {
            x.terms.insert(set, coeff);
        }
        Ok(x)
    }

    /// The fundamental cohomology class e^{1..rank}.
    pub fn top(rank: usize) -> Result<Self> {
        let mut x = Self::zero(rank)?;
        x.terms.insert(IndexSet::full(rank), 1);
        Ok(x)
    }

    /// Builds an element from `(1-based indices, coefficient)` pairs, summing
    /// repeated subsets.
    pub fn from_terms<I, S>(rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, i64)>,
        S: AsRef<[usize]>,
    {
        let mut x = Self::zero(rank)?;
        for (indices, coeff) in terms {
            let set = x.index_set(indices.as_ref())?;
            x.accumulate(set, coeff)?;
        }
        Ok(x)
    }

    fn index_set(&self, indices: &[usize]) -> Result<IndexSet> {
        let mut bits = 0u64;
        let mut last = 0usize;
        for &i in indices {
            if i == 0 || i > self.rank {
                return Err(Error::InvalidInput(format!(
                    "index {i} outside 1..={}",
                    self.rank
                )));
            }
            if i <= last {
                return Err(Error::InvalidInput(format!(
                    "indices must be strictly increasing, got {indices:?}"
                )));
            }
            last = i;
            bits |= 1u64 << (i - 1);
        }
        Ok(IndexSet(bits))
    }

    fn accumulate(&mut self, set: IndexSet, coeff: i64) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(set).or_insert(0);
        *slot = slot
            .checked_add(coeff)
            .ok_or(Error::IntegerOverflow("exterior sum"))?;
        if *slot == 0 {
            self.terms.remove(&set);
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Canonical terms in lexicographic subset order.
    pub fn terms(&self) -> impl Iterator<Item = (IndexSet, i64)> + '_ {
        self.terms.iter().map(|(s, c)| (*s, *c))
    }

    /// Terms with 1-based index lists, for display and serialization.
    pub fn terms_one_based(&self) -> Vec<(Vec<usize>, i64)> {
        self.terms()
            .map(|(s, c)| (s.indices().map(|i| i + 1).collect(), c))
            .collect()
    }

    pub fn coefficient(&self, indices: &[usize]) -> Result<i64> {
        let set = self.index_set(indices)?;
        Ok(self.terms.get(&set).copied().unwrap_or(0))
    }

    /// Degree shared by every term, or `None` for zero and mixed elements.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|s| s.degree());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Coefficient of the top monomial e^{1..rank}; 0 when absent.
    pub fn top_coefficient(&self) -> i64 {
        self.terms
            .get(&IndexSet::full(self.rank))
            .copied()
            .unwrap_or(0)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other.rank)?;
        let mut out = self.clone();
        for (s, c) in other.terms() {
            out.accumulate(s, c)?;
        }
        Ok(out)
    }

    pub fn checked_scale(&self, factor: i64) -> Result<Self> {
        let mut out = Self::zero(self.rank)?;
        for (s, c) in self.terms() {
            let v = c
                .checked_mul(factor)
                .ok_or(Error::IntegerOverflow("exterior scaling"))?;
            out.accumulate(s, v)?;
        }
        Ok(out)
    }

    fn check_rank(&self, other: usize) -> Result<()> {
        if self.rank != other {
            return Err(Error::RankMismatch { expected: self.rank, found: other });
        }
        Ok(())
    }

    /// Cup product `self ∧ other`.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_rank(other.rank)?;
        let mut out = Self::zero(self.rank)?;
        for (s, a) in self.terms() {
            for (t, b) in other.terms() {
                let Some(sign) = s.merge_sign(t) else { continue };
                let v = a
                    .checked_mul(b)
                    .and_then(|v| v.checked_mul(sign))
                    .ok_or(Error::IntegerOverflow("wedge product"))?;
                out.accumulate(IndexSet(s.0 | t.0), v)?;
            }
        }
        Ok(out)
    }

    /// Pullback along the torus map whose first-homology matrix is `matrix`
    /// (`n × m`): sends a class on T^n to a class on T^m. The coefficient of
    /// e^T in the image of e^S is the `S × T` minor of `matrix`.
    pub fn pullback(matrix: &IntegerMatrix, x: &Self) -> Result<Self> {
        if x.rank != matrix.rows() {
            return Err(Error::RankMismatch { expected: matrix.rows(), found: x.rank });
        }
        let target_rank = matrix.cols();
        let mut out = Self::zero(target_rank)?;
        for (s, coeff) in x.terms() {
            let rows: Vec<usize> = s.indices().collect();
            let p = rows.len();
            for t in subsets_of_size(target_rank, p) {
                let minor = if p == 0 {
                    1
                } else {
                    let data = rows
                        .iter()
                        .flat_map(|&r| t.indices().map(move |c| matrix[(r, c)] as i128))
                        .collect();
                    determinant_i128(p, data)?
                };
                if minor == 0 {
                    continue;
                }
                let v = coeff
                    .checked_mul(minor)
                    .ok_or(Error::IntegerOverflow("pullback"))?;
                out.accumulate(t, v)?;
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (s, c)) in self.terms().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let idx: Vec<String> = s.indices().map(|i| (i + 1).to_string()).collect();
            if idx.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}·e^{{{}}}", idx.join(","))?;
            }
        }
        Ok(())
    }
}
