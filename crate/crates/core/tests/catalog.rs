use ivi_core::asymptotic::{verify_ivi, Ivi};
use ivi_core::constructions::{build_bigrading_from_dims, table1_catalog, DimTable};
use ivi_core::search::{greedy_max_abelian, SearchConfig};
use ivi_core::Scalar;

/// On `j22 = j11 = j21 = j20 = 1` every map from the `F^2` pieces into
/// `J^{1,0}` commutes with the others and with `N_1`, giving dimension 4.
#[test]
fn row_four_carries_a_four_dimensional_ivi() {
    let s = build_bigrading_from_dims(
        &DimTable::new(2, &[((2, 2), 1), ((1, 1), 1), ((2, 1), 1), ((2, 0), 1)]).unwrap(),
        Some(&[3, 3, 3]),
    )
    .unwrap();
    let one = Scalar::one;
    let j10 = s.u((2, 1), 0, 1);
    let n1 = s.element(&[(s.u((2, 2), 0, 0), s.u((2, 2), 0, 1), one())]);
    let n2 = s.element(&[(s.u((2, 1), 0, 0), j10, one())]);
    let from22 = s.element(&[(s.u((2, 2), 0, 0), j10, one())]);
    let from20 = s.element(&[(s.u((2, 0), 0, 0), j10, one())]);
    for cone in [vec![n1.clone(), n2.clone()], vec![&n1 + &n2]] {
        let v = Ivi::new(s.orbit(cone).unwrap(), &[n1.clone(), n2.clone(), from22.clone(), from20.clone()]).unwrap();
        assert_eq!(v.dim(), 4);
        let rep = verify_ivi(&v).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }
}

#[test]
fn catalog_witnesses_and_cones() {
    let rows = table1_catalog().unwrap();
    let cones: Vec<Vec<usize>> = rows.iter().map(|r| r.cone_dims_available.clone()).collect();
    assert_eq!(cones, vec![vec![0], vec![1], vec![1, 2, 3], vec![1, 2], vec![1, 2, 3], vec![1, 2, 3]]);
    for r in &rows {
        for v in &r.per_cone {
            assert!(verify_ivi(v).unwrap().passed(), "{}", r.label);
            assert_eq!(v.a, r.witness().a);
        }
    }
}

#[test]
fn search_is_reproducible() {
    let rows = table1_catalog().unwrap();
    let orbit = &rows[2].witness().orbit;
    let cfg = SearchConfig {
        restarts: 16,
        seed: 3,
        max_steps: 8,
    };
    let a = greedy_max_abelian(orbit, &cfg).unwrap();
    let b = greedy_max_abelian(orbit, &cfg).unwrap();
    assert_eq!(a.dims_per_restart, b.dims_per_restart);
    assert_eq!(a.restart, b.restart);
    assert!(a.dim <= 3);
}
