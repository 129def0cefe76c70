use hkt_core::differential::torsion_and_hkt_checks;
use hkt_core::hypercomplex::standard::is_quaternionic_hermitian;
use hkt_core::testkit::{make_fixture, make_quaternionic_hermitian_metric, Family, FixtureSpec};

#[test]
fn averaged_metric_non_hkt_witness() {
    // first seed giving a non-HKT metric at n = 2
    let witness = (0..20u64).find(|&seed| {
        let spec = FixtureSpec::new(2, Family::AveragedRandomMetric, 1, seed);
        let m = make_quaternionic_hermitian_metric(&spec).unwrap();
        assert!(is_quaternionic_hermitian(2, &m.gram));
        !torsion_and_hkt_checks(&m).unwrap().hkt
    });
    assert_eq!(witness, Some(0));
}

#[test]
fn fixtures_replay_byte_for_byte() {
    let specs = [
        FixtureSpec::new(1, Family::FlatPotential, 0, 0),
        FixtureSpec::new(2, Family::PerturbedPotential, 4, 42),
        FixtureSpec::new(2, Family::AveragedRandomMetric, 2, 7),
        FixtureSpec::new(
            2,
            Family::RandomForm {
                degree: 3,
                bidegree: Some((2, 1)),
                primitive: true,
                weight: Some(1),
            },
            1,
            11,
        ),
    ];
    for spec in specs {
        let a = serde_json::to_string(&make_fixture(&spec).unwrap()).unwrap();
        let b = serde_json::to_string(&make_fixture(&spec).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
