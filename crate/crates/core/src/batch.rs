//! Cross-checks of the cohomological torus class against the affine solver.

use crate::error::Result;
use crate::lefschetz::{multi_class_torus, ClassKind, TorusMapModel};
use crate::solver::{index_sum, solve_coincidences_with, AffineTorusMap, StackedSystem};
use crate::Execution;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    /// Cup-product class evaluated on the fundamental class.
    pub class: i64,
    /// Sum of local indices over the solver's coincidence points.
    pub index_sum: i64,
    pub point_count: usize,
    pub determinant: i64,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.class == self.index_sum
    }
}

/// Computes both sides for one transverse system.
pub fn cross_check(maps: &[AffineTorusMap]) -> Result<CrossCheck> {
    cross_check_with(maps, Execution::Sequential)
}

pub fn cross_check_with(maps: &[AffineTorusMap], exec: Execution) -> Result<CrossCheck> {
    let model = TorusMapModel::from_affine(maps)?;
    let class = match multi_class_torus(&model)?.kind {
        ClassKind::Integer(v) => v,
        _ => unreachable!("torus classes are always integers"),
    };
    let determinant = StackedSystem::from_maps(maps)?.determinant()?;
    let points = solve_coincidences_with(maps, exec)?;
    Ok(CrossCheck {
        class,
        index_sum: index_sum(&points),
        point_count: points.len(),
        determinant,
    })
}

/// Runs [`cross_check`] over many systems; results keep the input order.
pub fn cross_check_batch(systems: &[Vec<AffineTorusMap>], exec: Execution) -> Vec<Result<CrossCheck>> {
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            systems.par_iter().map(|s| cross_check(s)).collect()
        }
        _ => systems.iter().map(|s| cross_check(s)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::IntegerMatrix;

    fn row_map(row: &[i64]) -> AffineTorusMap {
        AffineTorusMap::linear(IntegerMatrix::from_rows(&[row]).unwrap())
    }

    #[test]
    fn batch_preserves_order() {
        let systems = vec![
            vec![row_map(&[0, 0]), row_map(&[2, 0]), row_map(&[0, 3])],
            vec![row_map(&[0, 0]), row_map(&[-2, 0]), row_map(&[0, 1])],
            vec![row_map(&[0, 0]), row_map(&[1, 1]), row_map(&[1, 1])],
        ];
        for exec in [Execution::Sequential, Execution::Parallel] {
            let out = cross_check_batch(&systems, exec);
            assert_eq!(out[0].as_ref().unwrap().class, 6);
            assert_eq!(out[1].as_ref().unwrap().index_sum, -2);
            assert!(out[2].is_err());
            assert!(out[..2].iter().all(|r| r.as_ref().unwrap().agrees()));
        }
    }
}
