//! Independent oracles shared by the integration tests. Nothing here calls
//! the determinant, pullback or solver code under test.
#![allow(dead_code)]

use std::collections::BTreeMap;

use coincidence_core::exterior::ExteriorElement;
use coincidence_core::solver::AffineTorusMap;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0] as i128;
    }
    let mut total = 0i128;
    for col in 0..n {
        if m[0][col] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != col)
                    .map(|(_, v)| *v)
                    .collect()
            })
            .collect();
        let sign = if col % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][col] as i128 * cofactor_det(&minor);
    }
    total
}

/// All increasing `size`-subsets of `1..=n`.
pub fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            go(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, size, &mut Vec::new(), &mut out);
    out
}

pub fn as_map(x: &ExteriorElement) -> BTreeMap<Vec<usize>, i64> {
    x.terms_one_based().into_iter().collect()
}

/// Pullback by explicit minor expansion: the coefficient of e^T in the image
/// of e^S is det(A[S, T]).
pub fn oracle_pullback(a: &[Vec<i64>], x: &ExteriorElement) -> BTreeMap<Vec<usize>, i64> {
    let cols = a[0].len();
    let mut out: BTreeMap<Vec<usize>, i128> = BTreeMap::new();
    for (s, coeff) in x.terms_one_based() {
        for t in combinations(cols, s.len()) {
            let minor: Vec<Vec<i64>> = s
                .iter()
                .map(|&r| t.iter().map(|&c| a[r - 1][c - 1]).collect())
                .collect();
            *out.entry(t).or_insert(0) += coeff as i128 * cofactor_det(&minor);
        }
    }
    out.into_iter()
        .filter(|(_, v)| *v != 0)
        .map(|(k, v)| (k, i64::try_from(v).unwrap()))
        .collect()
}

pub fn random_rows<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect()
}

/// Mixed-degree element with up to `max_terms` terms.
pub fn random_element<R: Rng>(rng: &mut R, rank: usize, max_terms: usize, bound: i64) -> ExteriorElement {
    let count = rng.gen_range(0..=max_terms);
    let terms: Vec<(Vec<usize>, i64)> = (0..count)
        .map(|_| {
            let idx: Vec<usize> = (1..=rank).filter(|_| rng.gen_bool(0.5)).collect();
            (idx, rng.gen_range(-bound..=bound))
        })
        .collect();
    ExteriorElement::from_terms(rank, terms).unwrap()
}

pub fn random_homogeneous<R: Rng>(
    rng: &mut R,
    rank: usize,
    degree: usize,
    max_terms: usize,
    bound: i64,
) -> ExteriorElement {
    let all = combinations(rank, degree);
    let count = rng.gen_range(0..=max_terms);
    let terms: Vec<(Vec<usize>, i64)> = (0..count)
        .map(|_| (all[rng.gen_range(0..all.len())].clone(), rng.gen_range(-bound..=bound)))
        .collect();
    ExteriorElement::from_terms(rank, terms).unwrap()
}

/// Rows of A₂−A₁, …, A_k−A₁ stacked, built from the raw entries.
pub fn stacked_difference_rows(maps: &[AffineTorusMap]) -> Vec<Vec<i64>> {
    let base = maps[0].matrix().to_rows();
    maps[1..]
        .iter()
        .flat_map(|f| {
            f.matrix()
                .to_rows()
                .into_iter()
                .zip(base.clone())
                .map(|(r, b)| r.iter().zip(&b).map(|(x, y)| x - y).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        })
        .collect()
}
