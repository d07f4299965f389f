use proptest::prelude::*;

use tensorcomm::io::{matrix_from_json, matrix_to_json, parse_matrix_market, write_matrix_market};
use tensorcomm::{apply_swap, tcm_by_rule, Complex, ComplexMatrix};

fn integer_matrix(max_dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        prop::collection::vec((-4i32..=4, -4i32..=4), r * c).prop_map(move |v| {
            let data = v.into_iter().map(|(a, b)| Complex::new(a as f64, b as f64)).collect();
            ComplexMatrix::from_vec(r, c, data).unwrap()
        })
    })
}

fn float_matrix(max_dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        prop::collection::vec((-1e6f64..1e6, -1e6f64..1e6), r * c).prop_map(move |v| {
            let data = v.into_iter().map(|(a, b)| Complex::new(a, b)).collect();
            ComplexMatrix::from_vec(r, c, data).unwrap()
        })
    })
}

fn square_integer(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-4i32..=4, -4i32..=4), dim * dim).prop_map(move |v| {
        let data = v.into_iter().map(|(a, b)| Complex::new(a as f64, b as f64)).collect();
        ComplexMatrix::from_vec(dim, dim, data).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_is_associative(a in integer_matrix(3), b in integer_matrix(3), c in integer_matrix(2)) {
        let left = a.kron(&b).unwrap().kron(&c).unwrap();
        let right = a.kron(&b.kron(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn mixed_product(a in square_integer(2), b in square_integer(3), c in square_integer(2), d in square_integer(3)) {
        let left = a.kron(&b).unwrap().matmul(&c.kron(&d).unwrap()).unwrap();
        let right = a.matmul(&c).unwrap().kron(&b.matmul(&d).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn dagger_distributes_over_kron(a in integer_matrix(3), b in integer_matrix(3)) {
        prop_assert_eq!(a.kron(&b).unwrap().dagger(), a.dagger().kron(&b.dagger()).unwrap());
    }

    #[test]
    fn dagger_is_an_involution(a in float_matrix(5)) {
        prop_assert_eq!(a.dagger().dagger(), a);
    }

    #[test]
    fn trace_of_kron(a in square_integer(3), b in square_integer(2)) {
        let t = a.kron(&b).unwrap().trace().unwrap();
        prop_assert_eq!(t, a.trace().unwrap() * b.trace().unwrap());
    }

    #[test]
    fn swap_matches_dense(n in 2usize..7, p in 2usize..7, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let v: Vec<Complex> = (0..n * p)
            .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let dense = tcm_by_rule(n, p).unwrap().materialize().unwrap().matvec(&v).unwrap();
        prop_assert_eq!(apply_swap(n, p, &v).unwrap(), dense);
    }

    #[test]
    fn serialization_round_trips(m in float_matrix(6)) {
        let mm = parse_matrix_market(&write_matrix_market(&m, &[])).unwrap();
        let js = matrix_from_json(&matrix_to_json(&m).unwrap()).unwrap();
        prop_assert!(mm.max_abs_diff(&m).unwrap() <= 1e-15);
        prop_assert!(js.max_abs_diff(&m).unwrap() <= 1e-15);
    }
}
