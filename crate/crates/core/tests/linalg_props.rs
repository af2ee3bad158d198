//! Property tests for the exact linear algebra substrate.

use num_traits::Zero;
use polespec::linalg::{ArithMode, ExactMatrix, Rat, SubspaceBasis};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn matrix_strategy() -> impl Strategy<Value = ExactMatrix> {
    (1usize..6, 1usize..6).prop_flat_map(|(rows, cols)| {
        proptest::collection::vec(-9i64..10, rows * cols).prop_map(move |data| {
            ExactMatrix::from_triplets(
                rows,
                cols,
                data.iter()
                    .enumerate()
                    .map(|(i, &v)| (i / cols, i % cols, rat(v))),
            )
        })
    })
}

proptest! {
    #[test]
    fn rank_equals_transpose_rank(m in matrix_strategy()) {
        let r = m.rank(ArithMode::Rational).unwrap();
        let rt = m.transpose().rank(ArithMode::Rational).unwrap();
        prop_assert_eq!(r, rt);
    }

    #[test]
    fn rank_plus_kernel_dim_is_cols(m in matrix_strategy()) {
        let r = m.rank(ArithMode::Rational).unwrap();
        let k = m.kernel_basis(ArithMode::Rational).unwrap();
        prop_assert_eq!(r + k.dim(), m.cols());
        for i in 0..k.dim() {
            let v = k.dense_vector(i);
            prop_assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn intersection_is_symmetric(
        a in proptest::collection::vec(proptest::collection::vec(-5i64..6, 4), 1..4),
        b in proptest::collection::vec(proptest::collection::vec(-5i64..6, 4), 1..4),
    ) {
        let to_basis = |rows: &Vec<Vec<i64>>| {
            SubspaceBasis::from_spanning(
                4,
                rows.iter().map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(_, &v)| v != 0)
                        .map(|(i, &v)| (i, rat(v)))
                        .collect::<Vec<_>>()
                }),
            )
        };
        let sa = to_basis(&a);
        let sb = to_basis(&b);
        prop_assert_eq!(
            sa.intersection_dim(&sb).unwrap(),
            sb.intersection_dim(&sa).unwrap()
        );
        prop_assert_eq!(sa.intersection_dim(&sa).unwrap(), sa.dim());
    }
}

/// Multi-modular certified rank equals the rational fraction-free rank on
/// 200 random matrices with entries of height up to 10^6.
#[test]
fn modular_rank_matches_rational_on_random_matrices() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    for trial in 0..200 {
        let rows = rng.gen_range(1..8);
        let cols = rng.gen_range(1..8);
        let m = ExactMatrix::from_triplets(
            rows,
            cols,
            (0..rows * cols).filter_map(|i| {
                // roughly half the entries are zero
                if rng.gen_bool(0.5) {
                    return None;
                }
                let v = rng.gen_range(-1_000_000i64..=1_000_000);
                Some((i / cols, i % cols, rat(v)))
            }),
        );
        let rational = m.rank(ArithMode::Rational).unwrap();
        let modular = m.rank(ArithMode::Modular { primes: 3 }).unwrap();
        assert_eq!(rational, modular, "trial {trial}");
    }
}

/// Low-rank products exercise the nontrivial certification path.
#[test]
fn modular_rank_matches_rational_on_structured_matrices() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for trial in 0..50 {
        let (n, r) = (rng.gen_range(3..7), rng.gen_range(1..3));
        // m = u * v with u: n x r, v: r x n has rank at most r.
        let u: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..r).map(|_| rng.gen_range(-50..51)).collect())
            .collect();
        let v: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..n).map(|_| rng.gen_range(-50..51)).collect())
            .collect();
        let m = ExactMatrix::from_triplets(
            n,
            n,
            (0..n).flat_map(|i| {
                let u = &u;
                let v = &v;
                (0..n).map(move |j| {
                    let s: i64 = (0..r).map(|t| u[i][t] * v[t][j]).sum();
                    (i, j, rat(s))
                })
            }),
        );
        let rational = m.rank(ArithMode::Rational).unwrap();
        let modular = m.rank(ArithMode::Modular { primes: 3 }).unwrap();
        assert_eq!(rational, modular, "trial {trial}");
        assert!(rational <= r);
    }
}
