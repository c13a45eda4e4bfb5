use proptest::prelude::*;

use ivi_core::filtration::{check_weight_filtration, weight_filtration};
use ivi_core::io::{matrix_from_json, matrix_to_json, scalar_from_json, scalar_to_json};
use ivi_core::{Mat, Scalar, Subspace};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, -3i64..=3).prop_map(|(n, d, im)| &Scalar::from_ratio(n, d) + &Scalar::gaussian(0, im))
}

fn vectors(n: usize, max: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    prop::collection::vec(prop::collection::vec(scalar(), n), 0..=max)
}

/// Strictly upper triangular, conjugated by a unipotent lower triangular matrix.
fn nilpotent() -> impl Strategy<Value = Mat> {
    (1usize..=5).prop_flat_map(|n| {
        (prop::collection::vec(-2i64..=2, n * n), prop::collection::vec(-1i64..=1, n * n)).prop_map(move |(u, l)| {
            let mut a = Mat::zeros(n, n);
            let mut p = Mat::identity(n);
            for i in 0..n {
                for j in 0..n {
                    if j > i {
                        a[(i, j)] = Scalar::from_int(u[i * n + j]);
                    } else if j < i {
                        p[(i, j)] = Scalar::from_int(l[i * n + j]);
                    }
                }
            }
            &(&p * &a) * &p.inverse().unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn scalar_text_round_trip(a in scalar()) {
        prop_assert_eq!(scalar_from_json(&scalar_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn matrix_text_round_trip(v in prop::collection::vec(scalar(), 9)) {
        let m = Mat::from_rows(v.chunks(3).map(|r| r.to_vec()).collect()).unwrap();
        prop_assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
    }

    #[test]
    fn dimension_formula(a in vectors(4, 3), b in vectors(4, 3)) {
        let (s, t) = (Subspace::span(4, a), Subspace::span(4, b));
        let sum = s.sum(&t).unwrap();
        let cap = s.intersect(&t).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), s.dim() + t.dim());
        prop_assert!(sum.contains_subspace(&s) && s.contains_subspace(&cap));
        prop_assert_eq!(s.conjugate().conjugate(), s.clone());
        prop_assert_eq!(s.annihilator().dim(), 4 - s.dim());
    }

    #[test]
    fn weight_filtration_is_characterized(n in nilpotent()) {
        let w = weight_filtration(&n).unwrap();
        prop_assert!(check_weight_filtration(&n, &w).is_ok());
        let neg = weight_filtration(&-&n).unwrap();
        prop_assert_eq!(neg, w);
    }
}
