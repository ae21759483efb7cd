mod common;

use coincidence_core::exterior::ExteriorElement;
use coincidence_core::matrix::IntegerMatrix;
use proptest::prelude::*;
use rand::Rng;

use common::*;

fn matrix(rows: &[Vec<i64>]) -> IntegerMatrix {
    IntegerMatrix::from_rows(rows).unwrap()
}

#[test]
fn graded_commutativity() {
    let mut rng = rng(11);
    for _ in 0..600 {
        let rank = rng.gen_range(1..=6);
        let p = rng.gen_range(0..=rank);
        let q = rng.gen_range(0..=rank);
        let a = random_homogeneous(&mut rng, rank, p, 4, 5);
        let b = random_homogeneous(&mut rng, rank, q, 4, 5);
        let sign = if (p * q) % 2 == 0 { 1 } else { -1 };
        assert_eq!(
            a.wedge(&b).unwrap(),
            b.wedge(&a).unwrap().checked_scale(sign).unwrap(),
            "{a} / {b}"
        );
    }
}

#[test]
fn wedge_is_associative_and_bilinear() {
    let mut rng = rng(12);
    for _ in 0..300 {
        let rank = rng.gen_range(1..=5);
        let a = random_element(&mut rng, rank, 4, 3);
        let b = random_element(&mut rng, rank, 4, 3);
        let c = random_element(&mut rng, rank, 4, 3);
        let ab_c = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let a_bc = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        assert_eq!(ab_c, a_bc);
        let lhs = a.wedge(&b.checked_add(&c).unwrap()).unwrap();
        let rhs = a.wedge(&b).unwrap().checked_add(&a.wedge(&c).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn identity_pullback() {
    let mut rng = rng(13);
    for rank in 1..=6 {
        let id = IntegerMatrix::identity(rank).unwrap();
        for _ in 0..20 {
            let x = random_element(&mut rng, rank, 5, 4);
            assert_eq!(ExteriorElement::pullback(&id, &x).unwrap(), x);
        }
    }
}

#[test]
fn pullback_matches_minor_expansion() {
    let mut rng = rng(14);
    for _ in 0..500 {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=4);
        let a = random_rows(&mut rng, n, m, 3);
        let x = random_element(&mut rng, n, 5, 4);
        let got = ExteriorElement::pullback(&matrix(&a), &x).unwrap();
        assert_eq!(as_map(&got), oracle_pullback(&a, &x));
    }
}

#[test]
fn pullback_functoriality() {
    // 2x2 then 2x3, the shapes named for this law, plus a wider sweep
    let mut rng = rng(15);
    let shapes = [(2usize, 2usize, 3usize), (3, 2, 2), (2, 3, 4), (1, 3, 2)];
    for round in 0..600 {
        let (n, m, p) = shapes[round % shapes.len()];
        let a = random_rows(&mut rng, n, m, 3);
        let b = random_rows(&mut rng, m, p, 3);
        let x = random_element(&mut rng, n, 5, 4);
        let ab = matrix(&a).checked_mul(&matrix(&b)).unwrap();
        let composed = ExteriorElement::pullback(
            &matrix(&b),
            &ExteriorElement::pullback(&matrix(&a), &x).unwrap(),
        )
        .unwrap();
        let direct = ExteriorElement::pullback(&ab, &x).unwrap();
        assert_eq!(composed, direct);
        assert_eq!(as_map(&direct), oracle_pullback(&ab.to_rows(), &x));
    }
}

#[test]
fn top_degree_pullback_is_determinant() {
    let mut rng = rng(16);
    for _ in 0..500 {
        let m = rng.gen_range(1..=5);
        let a = random_rows(&mut rng, m, m, 4);
        let top = ExteriorElement::top(m).unwrap();
        let image = ExteriorElement::pullback(&matrix(&a), &top).unwrap();
        let det = cofactor_det(&a) as i64;
        assert_eq!(image.top_coefficient(), det);
        assert_eq!(image, top.checked_scale(det).unwrap());
        assert_eq!(matrix(&a).determinant().unwrap(), det);
    }
}

proptest! {
    #[test]
    fn canonical_form_has_no_zero_terms(
        rank in 1usize..=6,
        terms in prop::collection::vec((prop::collection::btree_set(1usize..=6, 0..=6), -3i64..=3), 0..8),
    ) {
        let terms: Vec<(Vec<usize>, i64)> = terms
            .into_iter()
            .map(|(s, c)| (s.into_iter().filter(|&i| i <= rank).collect(), c))
            .collect();
        let x = ExteriorElement::from_terms(rank, terms.clone()).unwrap();
        prop_assert!(x.terms().all(|(_, c)| c != 0));
        // equality is term-collection equality regardless of insertion order
        let mut rev = terms;
        rev.reverse();
        prop_assert_eq!(ExteriorElement::from_terms(rank, rev).unwrap(), x);
    }

    #[test]
    fn generator_squares_vanish(rank in 1usize..=8, i in 1usize..=8, c in -5i64..=5) {
        prop_assume!(i <= rank);
        let g = ExteriorElement::monomial(rank, &[i], c).unwrap();
        prop_assert!(g.wedge(&g).unwrap().is_zero());
    }
}
