mod common;

use common::*;
use ncbeil::linalg::{bareiss_rank, cone, eigen_dims};
use ncbeil::scalars::{factor_rational_poly, real_root_count, ConjField, GaussQ};
use ncbeil::{ConjElem, Field, UniPoly};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn conj_elem(c: &[i64; 6]) -> ConjElem {
    let t = ConjField::standard().gen(0);
    let g = |re: i64, im: i64| ConjElem::from_gauss(GaussQ::new(rat(re), rat(im)));
    let num = g(c[0], c[1]).add(&g(c[2], c[3]).mul(&t));
    let den = ConjElem::one().add(&ConjElem::from_int(c[4].abs() + 1).mul(&t.pow(2)));
    num.add(&ConjElem::from_int(c[5]).mul(&t.pow(3))).mul(&den.inv().unwrap())
}

fn poly(c: &[i64]) -> UniPoly {
    UniPoly::from_ints(c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_is_an_involutive_automorphism(a in prop::array::uniform6(-4i64..=4), b in prop::array::uniform6(-4i64..=4)) {
        let (x, y) = (conj_elem(&a), conj_elem(&b));
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
        prop_assert_eq!(x.add(&y).conj(), x.conj().add(&y.conj()));
        prop_assert!(x.mul(&x.conj()).is_real());
    }

    #[test]
    fn factors_remultiply(roots in prop::collection::vec(-5i64..=5, 0..3), quad in prop::collection::vec((1i64..=4, -3i64..=3), 0..3), lc in 1i64..=6) {
        let mut p = poly(&[lc]);
        for r in &roots {
            p = p.mul(&poly(&[-r, 1]));
        }
        for (c, b) in &quad {
            p = p.mul(&poly(&[*c + b * b, 2 * b, 1]));
        }
        let factors = factor_rational_poly(&p).unwrap();
        let mut back = poly(&[1]);
        for (f, m) in &factors {
            prop_assert_eq!(f.lc(), rat(1));
            back = back.mul(&f.pow(*m));
        }
        prop_assert_eq!(back, p.monic());
    }

    #[test]
    fn sturm_counts_distinct_real_roots(roots in prop::collection::btree_set(-6i64..=6, 0..5), c in 1i64..=5) {
        let mut p = poly(&[c, 0, 1]);
        for r in &roots {
            p = p.mul(&poly(&[-r, 1]));
        }
        prop_assert_eq!(real_root_count(&p).unwrap(), roots.len());
        let sq = p.mul(&poly(&[-roots.iter().next().copied().unwrap_or(0), 1]));
        let expected = roots.len() + usize::from(roots.is_empty());
        prop_assert_eq!(real_root_count(&sq).unwrap(), expected);
    }

    #[test]
    fn bareiss_matches_naive(seed in any::<u64>(), rows in 0usize..8, cols in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_degenerate_matrix(&mut rng, rows, cols);
        prop_assert_eq!(bareiss_rank(&m), m.naive_rank());
        prop_assert_eq!(m.rank(), m.naive_rank());
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn random_complexes_square_to_zero(seed in any::<u64>(), len in 1usize..6, lo in -3i32..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dims = random_dims(&mut rng, len, 5);
        let c = random_complex(&mut rng, lo, &dims);
        prop_assert!(squares_to_zero(&c));
        let betti: i64 = c.betti().iter().map(|(k, h)| if k.rem_euclid(2) == 0 { *h as i64 } else { -(*h as i64) }).sum();
        prop_assert_eq!(betti, c.euler_characteristic());
        let dims_d = random_dims(&mut rng, len, 4);
        let d = random_complex(&mut rng, lo + 1, &dims_d);
        let sum = c.direct_sum(&d);
        prop_assert!(squares_to_zero(&sum));
        prop_assert_eq!(sum.euler_characteristic(), c.euler_characteristic() + d.euler_characteristic());
        let shifted = c.shift(1);
        prop_assert_eq!(shifted.euler_characteristic(), -c.euler_characteristic());
    }

    #[test]
    fn cones_of_isomorphisms_are_acyclic(seed in any::<u64>(), len in 1usize..5, s in prop::sample::select(vec![-3i64, -1, 1, 2])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dims = random_dims(&mut rng, len, 4);
        let c = random_complex(&mut rng, 0, &dims);
        prop_assert!(cone(&identity_map(&c)).is_acyclic());
        let k = cone(&scalar_map(&c, s));
        prop_assert!(squares_to_zero(&k));
        prop_assert!(k.is_acyclic());
    }

    #[test]
    fn involution_eigen_dims_add_up(seed in any::<u64>(), len in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dims = random_dims(&mut rng, len, 5);
        let (c, iota, plus) = random_involution_complex(&mut rng, &dims);
        for (k, p, m) in eigen_dims(&c, &iota) {
            let n = dims[k as usize];
            prop_assert_eq!(p + m, n);
            prop_assert_eq!(p, plus[k as usize]);
        }
    }
}
