use sechh_core::homology::Limits;
use sechh_core::verify::{verify_catalog, Status};

#[test]
fn whole_catalog_verifies() {
    let reports = verify_catalog(&Limits::default()).unwrap();
    for r in &reports {
        assert_ne!(
            r.status,
            Status::Fail,
            "{} {}: {:#?}",
            r.triple,
            r.theorem,
            r.checks
        );
    }
    assert!(reports.iter().filter(|r| r.status == Status::Pass).count() >= 40);
}
