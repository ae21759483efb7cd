//! Exact coincidence sets of affine torus maps.
//!
//! Each map `f_i(x) = A_i·x + b_i (mod 1)` goes from T^m to T^n. With
//! `m = (k-1)n`, the coincidence condition stacks into a square congruence
//! `D·x ≡ c (mod ℤ^m)` with row blocks `D_i = A_i − A₁` and `c_i = b₁ − b_i`.
//! When `det D ≠ 0` the solutions are the |det D| points of `D⁻¹(c + ℤ^m)`
//! mod ℤ^m; they are enumerated through the Smith form `U·D·V = S` as
//! `x = V·y` with `s_j·y_j ≡ (U·c)_j`. Every point carries the local index
//! `sign(det D)`.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::snf::smith_normal_form;
use crate::Execution;

pub type Rational = Ratio<i64>;

const OVF: Error = Error::IntegerOverflow("rational arithmetic");

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    let (num, den) = match s.trim().split_once('/') {
        Some((p, q)) => (
            p.trim().parse::<i64>().map_err(|_| bad())?,
            q.trim().parse::<i64>().map_err(|_| bad())?,
        ),
        None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    if den == 0 {
        return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
    }
    if den == i64::MIN || num == i64::MIN {
        return Err(OVF);
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"p/q"` in lowest terms, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Representative in `[0, 1)`.
pub fn frac(r: &Rational) -> Result<Rational> {
    let floor = r.numer().div_floor(r.denom());
    r.checked_sub(&Rational::from_integer(floor)).ok_or(OVF)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineTorusMap {
    matrix: IntegerMatrix,
    translation: Vec<Rational>,
}

impl AffineTorusMap {
    /// Builds `x ↦ matrix·x + translation`; the translation is reduced mod 1.
    pub fn new(matrix: IntegerMatrix, translation: Vec<Rational>) -> Result<Self> {
        if translation.len() != matrix.rows() {
            return Err(Error::DimensionMismatch(format!(
                "translation has length {}, matrix has {} rows",
                translation.len(),
                matrix.rows()
            )));
        }
        let translation = translation.iter().map(frac).collect::<Result<_>>()?;
        Ok(Self { matrix, translation })
    }

    pub fn linear(matrix: IntegerMatrix) -> Self {
        let translation = vec![Rational::zero(); matrix.rows()];
        Self { matrix, translation }
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn translation(&self) -> &[Rational] {
        &self.translation
    }

    /// Image of `x` reduced to `[0,1)^n`.
    pub fn evaluate(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.matrix.cols() {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, map source has dimension {}",
                x.len(),
                self.matrix.cols()
            )));
        }
        (0..self.matrix.rows())
            .map(|r| {
                let mut acc = self.translation[r];
                for (c, xc) in x.iter().enumerate() {
                    let term = xc
                        .checked_mul(&Rational::from_integer(self.matrix[(r, c)]))
                        .ok_or(OVF)?;
                    acc = acc.checked_add(&term).ok_or(OVF)?;
                }
                frac(&acc)
            })
            .collect()
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoincidencePoint {
    pub coordinates: Vec<Rational>,
    pub local_index: i64,
}

impl fmt::Debug for CoincidencePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.coordinates.iter().map(format_rational).collect();
        write!(f, "({}) index {:+}", coords.join(", "), self.local_index)
    }
}

/// The square congruence `D·x ≡ c` built from k affine maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackedSystem {
    pub difference: IntegerMatrix,
    pub offset: Vec<Rational>,
}

impl StackedSystem {
    pub fn from_maps(maps: &[AffineTorusMap]) -> Result<Self> {
        let (n, m) = check_shapes(maps)?;
        let base = &maps[0];
        let blocks = maps[1..]
            .iter()
            .map(|f| f.matrix.checked_sub(&base.matrix))
            .collect::<Result<Vec<_>>>()?;
        let difference = IntegerMatrix::vstack(&blocks.iter().collect::<Vec<_>>())?;
        let offset = maps[1..]
            .iter()
            .flat_map(|f| (0..n).map(move |r| (r, f)))
            .map(|(r, f)| base.translation[r].checked_sub(&f.translation[r]).ok_or(OVF))
            .collect::<Result<Vec<_>>>()?;
        debug_assert_eq!(difference.rows(), m);
        Ok(Self { difference, offset })
    }

    pub fn determinant(&self) -> Result<i64> {
        self.difference.determinant()
    }
}

/// Returns `(n, m)` after checking every map shares it and `m = (k-1)n`.
fn check_shapes(maps: &[AffineTorusMap]) -> Result<(usize, usize)> {
    if maps.len() < 2 {
        return Err(Error::DimensionMismatch(format!(
            "need at least 2 maps, got {}",
            maps.len()
        )));
    }
    let (n, m) = (maps[0].matrix.rows(), maps[0].matrix.cols());
    if let Some((i, f)) = maps
        .iter()
        .enumerate()
        .find(|(_, f)| f.matrix.rows() != n || f.matrix.cols() != m)
    {
        return Err(Error::DimensionMismatch(format!(
            "map {} is {}x{}, map 1 is {n}x{m}",
            i + 1,
            f.matrix.rows(),
            f.matrix.cols()
        )));
    }
    let k = maps.len();
    if m != (k - 1) * n {
        return Err(Error::DimensionMismatch(format!(
            "source dimension {m} must equal (k-1)n = {}",
            (k - 1) * n
        )));
    }
    Ok((n, m))
}

/// All coincidence points of a transverse system, sorted by coordinates.
pub fn solve_coincidences(maps: &[AffineTorusMap]) -> Result<Vec<CoincidencePoint>> {
    solve_coincidences_with(maps, Execution::default())
}

pub fn solve_coincidences_with(
    maps: &[AffineTorusMap],
    exec: Execution,
) -> Result<Vec<CoincidencePoint>> {
    let system = StackedSystem::from_maps(maps)?;
    let det = system.determinant()?;
    if det == 0 {
        return Err(Error::NonTransverse);
    }
    let snf = smith_normal_form(&system.difference)?;
    let moduli = snf.diagonal();
    let m = moduli.len();

    // U·c, reduced mod 1 per coordinate.
    let rhs = (0..m)
        .map(|r| {
            let mut acc = Rational::zero();
            for (c, oc) in system.offset.iter().enumerate() {
                let term = oc
                    .checked_mul(&Rational::from_integer(snf.u[(r, c)]))
                    .ok_or(OVF)?;
                acc = acc.checked_add(&term).ok_or(OVF)?;
            }
            frac(&acc)
        })
        .collect::<Result<Vec<_>>>()?;

    let count = det.unsigned_abs();
    let local_index = det.signum();
    let point = |flat: u64| -> Result<CoincidencePoint> {
        // Mixed-radix digits of `flat` select the residue in each coordinate.
        let mut rest = flat;
        let y = moduli
            .iter()
            .zip(&rhs)
            .map(|(&s, w)| {
                let t = (rest % s as u64) as i64;
                rest /= s as u64;
                let shifted = w.checked_add(&Rational::from_integer(t)).ok_or(OVF)?;
                shifted.checked_mul(&Rational::new(1, s)).ok_or(OVF)
            })
            .collect::<Result<Vec<_>>>()?;
        let coordinates = (0..m)
            .map(|r| {
                let mut acc = Rational::zero();
                for (c, yc) in y.iter().enumerate() {
                    let term = yc
                        .checked_mul(&Rational::from_integer(snf.v[(r, c)]))
                        .ok_or(OVF)?;
                    acc = acc.checked_add(&term).ok_or(OVF)?;
                }
                frac(&acc)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CoincidencePoint { coordinates, local_index })
    };

    let mut points = enumerate(count, exec, point)?;
    points.sort();
    Ok(points)
}

fn enumerate<F>(count: u64, exec: Execution, point: F) -> Result<Vec<CoincidencePoint>>
where
    F: Fn(u64) -> Result<CoincidencePoint> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..count).into_par_iter().map(point).collect()
        }
        _ => (0..count).map(point).collect(),
    }
}

/// Sum of local indices.
pub fn index_sum(points: &[CoincidencePoint]) -> i64 {
    points.iter().map(|p| p.local_index).sum()
}

/// Checks `f₁(x) = … = f_k(x)` exactly.
pub fn is_coincidence(maps: &[AffineTorusMap], x: &[Rational]) -> Result<bool> {
    let first = maps
        .first()
        .ok_or_else(|| Error::DimensionMismatch("no maps".into()))?
        .evaluate(x)?;
    for f in &maps[1..] {
        if f.evaluate(x)? != first {
            return Ok(false);
        }
    }
    Ok(true)
}

impl CoincidencePoint {
    pub fn is_reduced(&self) -> bool {
        self.coordinates
            .iter()
            .all(|c| !c.is_negative() && *c < Rational::from_integer(1))
    }
}
