use greenring::verify::{run_suite, Suite};
use greenring::Error;

#[test]
fn every_suite_passes_on_the_fixtures() {
    for suite in Suite::ALL {
        let report = run_suite(suite, 24).unwrap_or_else(|e| panic!("{suite}: {e}"));
        assert!(report.cases > 0, "{suite} ran no cases");
    }
}

#[test]
fn max_order_filters_cases() {
    let small = run_suite(Suite::Chartables, 4).unwrap();
    let large = run_suite(Suite::Chartables, 24).unwrap();
    assert!(small.cases < large.cases);
    assert_eq!(run_suite(Suite::Seeds, 1).unwrap().cases, 0);
}

#[test]
fn suite_names_round_trip() {
    for suite in Suite::ALL {
        assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
    }
    assert!(matches!("nope".parse::<Suite>(), Err(Error::Parse { .. })));
}
