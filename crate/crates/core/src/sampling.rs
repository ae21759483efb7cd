//! Random affine torus systems for property checks and benchmarks.

use rand::Rng;

use crate::matrix::IntegerMatrix;
use crate::solver::{AffineTorusMap, Rational, StackedSystem};

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntegerMatrix {
    let data = (0..rows * cols).map(|_| rng.gen_range(-bound..=bound)).collect();
    IntegerMatrix::new(rows, cols, data).expect("positive dimensions")
}

/// Entries `p/q` with `1 ≤ q ≤ max_denominator` and `0 ≤ p < q`.
pub fn random_translation<R: Rng + ?Sized>(rng: &mut R, len: usize, max_denominator: i64) -> Vec<Rational> {
    (0..len)
        .map(|_| {
            let q = rng.gen_range(1..=max_denominator);
            Rational::new(rng.gen_range(0..q), q)
        })
        .collect()
}

/// Shape of the random systems: k maps T^{(k-1)n} → T^n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SystemSampler {
    pub n: usize,
    pub k: usize,
    pub entry_bound: i64,
    pub max_denominator: i64,
}

impl SystemSampler {
    pub fn source_dim(&self) -> usize {
        (self.k - 1) * self.n
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<AffineTorusMap> {
        (0..self.k)
            .map(|_| {
                let a = random_matrix(rng, self.n, self.source_dim(), self.entry_bound);
                let b = random_translation(rng, self.n, self.max_denominator);
                AffineTorusMap::new(a, b).expect("matching shapes")
            })
            .collect()
    }

    /// Resamples until the stacked difference matrix is nonsingular.
    pub fn sample_transverse<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<AffineTorusMap> {
        loop {
            let maps = self.sample(rng);
            let det = StackedSystem::from_maps(&maps)
                .and_then(|s| s.determinant())
                .expect("small entries");
            if det != 0 {
                return maps;
            }
        }
    }

    /// Same matrices, fresh translations.
    pub fn retranslate<R: Rng + ?Sized>(&self, rng: &mut R, maps: &[AffineTorusMap]) -> Vec<AffineTorusMap> {
        maps.iter()
            .map(|f| {
                let b = random_translation(rng, self.n, self.max_denominator);
                AffineTorusMap::new(f.matrix().clone(), b).expect("matching shapes")
            })
            .collect()
    }
}
