//! Smith normal form with unimodular certificates.
//!
//! For any integer matrix A the result satisfies `U·A·V = D` where U and V
//! are unimodular and D is diagonal with nonnegative entries
//! `d₁ | d₂ | … | d_r`, followed by zeros.

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SnfResult {
    /// Diagonal entries of D, zeros included.
    pub fn diagonal(&self) -> Vec<i64> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)]).collect()
    }

    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<i64> {
        self.diagonal().into_iter().filter(|&x| x != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

const OVF: Error = Error::IntegerOverflow("smith normal form");

fn swap_rows(m: &mut IntegerMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    let cols = m.cols();
    let data = m.data_mut();
    for c in 0..cols {
        data.swap(a * cols + c, b * cols + c);
    }
}

fn swap_cols(m: &mut IntegerMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for r in 0..m.rows() {
        let tmp = m[(r, a)];
        m[(r, a)] = m[(r, b)];
        m[(r, b)] = tmp;
    }
}

fn negate_row(m: &mut IntegerMatrix, r: usize) -> Result<()> {
    for c in 0..m.cols() {
        m[(r, c)] = m[(r, c)].checked_neg().ok_or(OVF)?;
    }
    Ok(())
}

/// `(g, x, y)` with `a·x + b·y = g = gcd(a, b) ≥ 0`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut x0, mut x1) = (1i128, 0i128);
    let (mut y0, mut y1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (r0, x0, y0) = (-r0, -x0, -y0);
    }
    // |x| ≤ |b|/g and |y| ≤ |a|/g, so these fit whenever a and b do
    (r0 as i64, x0 as i64, y0 as i64)
}

/// Row pair `(p, q)` ← `[[x, y], [s, t]]·(p, q)` with `xt − ys = 1`.
fn rows_mix(m: &mut IntegerMatrix, p: usize, q: usize, [x, y, s, t]: [i64; 4]) -> Result<()> {
    for c in 0..m.cols() {
        let (a, b) = (m[(p, c)] as i128, m[(q, c)] as i128);
        let na = x as i128 * a + y as i128 * b;
        let nb = s as i128 * a + t as i128 * b;
        m[(p, c)] = i64::try_from(na).map_err(|_| OVF)?;
        m[(q, c)] = i64::try_from(nb).map_err(|_| OVF)?;
    }
    Ok(())
}

/// Column pair `(p, q)` ← `(p, q)·[[x, s], [y, t]]`, i.e. the transpose of
/// [`rows_mix`].
fn cols_mix(m: &mut IntegerMatrix, p: usize, q: usize, [x, y, s, t]: [i64; 4]) -> Result<()> {
    for r in 0..m.rows() {
        let (a, b) = (m[(r, p)] as i128, m[(r, q)] as i128);
        let na = x as i128 * a + y as i128 * b;
        let nb = s as i128 * a + t as i128 * b;
        m[(r, p)] = i64::try_from(na).map_err(|_| OVF)?;
        m[(r, q)] = i64::try_from(nb).map_err(|_| OVF)?;
    }
    Ok(())
}

/// Unimodular 2×2 sending `(a, b)` to `(gcd, 0)`.
fn bezout(a: i64, b: i64) -> Result<[i64; 4]> {
    if b % a == 0 {
        return Ok([1, 0, (b / a).checked_neg().ok_or(OVF)?, 1]);
    }
    let (g, x, y) = ext_gcd(a, b);
    Ok([x, y, -(b / g), a / g])
}

pub fn smith_normal_form(a: &IntegerMatrix) -> Result<SnfResult> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(rows)?;
    let mut v = IntegerMatrix::identity(cols)?;

    for t in 0..rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize, u64)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = d[(i, j)].unsigned_abs();
                if x != 0 && best.is_none_or(|(_, _, b)| x < b) {
                    best = Some((i, j, x));
                }
            }
        }
        let Some((pi, pj, _)) = best else {
            break;
        };
        swap_rows(&mut d, t, pi);
        swap_rows(&mut u, t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);

        loop {
            // Each Bézout step replaces the pivot by a proper divisor or
            // clears an entry, so this terminates.
            for i in t + 1..rows {
                if d[(i, t)] != 0 {
                    let m = bezout(d[(t, t)], d[(i, t)])?;
                    rows_mix(&mut d, t, i, m)?;
                    rows_mix(&mut u, t, i, m)?;
                }
            }
            for j in t + 1..cols {
                if d[(t, j)] != 0 {
                    let m = bezout(d[(t, t)], d[(t, j)])?;
                    cols_mix(&mut d, t, j, m)?;
                    cols_mix(&mut v, t, j, m)?;
                }
            }
            if (t + 1..rows).all(|i| d[(i, t)] == 0) {
                break;
            }
        }
        if d[(t, t)] < 0 {
            negate_row(&mut d, t)?;
            negate_row(&mut u, t)?;
        }
    }
    fix_divisibility(&mut u, &mut d, &mut v)?;
    Ok(SnfResult { u, d, v })
}

/// Turns a nonnegative diagonal into a divisibility chain. For a diagonal
/// pair `(a, b)` with `g = gcd(a, b) = a·x + b·y`, the unimodular pair
/// `[[1, 1], [−b·y/g, a·x/g]]` on rows and `[[x, −b/g], [y, a/g]]` on columns
/// sends `diag(a, b)` to `diag(g, ab/g)`.
fn fix_divisibility(u: &mut IntegerMatrix, d: &mut IntegerMatrix, v: &mut IntegerMatrix) -> Result<()> {
    let n = d.rows().min(d.cols());
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (d[(i, i)], d[(j, j)]);
            if b == 0 || (a != 0 && b % a == 0) {
                continue;
            }
            if a == 0 {
                swap_rows(d, i, j);
                swap_rows(u, i, j);
                swap_cols(d, i, j);
                swap_cols(v, i, j);
                continue;
            }
            let (g, x, y) = ext_gcd(a, b);
            let rows_m = [1, 1, -(b / g) * y, (a / g) * x];
            let cols_m = [x, y, -(b / g), a / g];
            rows_mix(d, i, j, rows_m)?;
            rows_mix(u, i, j, rows_m)?;
            cols_mix(d, i, j, cols_m)?;
            cols_mix(v, i, j, cols_m)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn certify(a: &IntegerMatrix) -> SnfResult {
        let r = smith_normal_form(a).unwrap();
        assert_eq!(r.u.checked_mul(a).unwrap().checked_mul(&r.v).unwrap(), r.d);
        assert_eq!(r.u.determinant().unwrap().abs(), 1);
        assert_eq!(r.v.determinant().unwrap().abs(), 1);
        for i in 0..r.d.rows() {
            for j in 0..r.d.cols() {
                if i != j {
                    assert_eq!(r.d[(i, j)], 0);
                }
            }
        }
        let diag = r.diagonal();
        assert!(diag.iter().all(|&x| x >= 0));
        for w in diag.windows(2) {
            if w[0] == 0 {
                assert_eq!(w[1], 0);
            } else {
                assert_eq!(w[1] % w[0], 0, "{diag:?}");
            }
        }
        r
    }

    #[test]
    fn diag_two_three() {
        let a = IntegerMatrix::from_rows(&[[2, 0], [0, 3]]).unwrap();
        assert_eq!(certify(&a).diagonal(), vec![1, 6]);
    }

    #[test]
    fn identity_and_zero() {
        let i = IntegerMatrix::identity(3).unwrap();
        let r = certify(&i);
        assert_eq!(r.d, i);
        let z = IntegerMatrix::zeros(2, 3).unwrap();
        assert!(certify(&z).d.is_zero());
    }

    #[test]
    fn rectangular_and_negative() {
        let a = IntegerMatrix::from_rows(&[[4, -6, 8], [-2, 3, 10]]).unwrap();
        let r = certify(&a);
        assert_eq!(r.diagonal(), vec![1, 28]);
        let b = IntegerMatrix::from_rows(&[[-5]]).unwrap();
        assert_eq!(certify(&b).diagonal(), vec![5]);
        let c = IntegerMatrix::from_rows(&[[2, 4], [6, 8], [10, 12]]).unwrap();
        assert_eq!(certify(&c).diagonal(), vec![2, 4]);
    }
}
