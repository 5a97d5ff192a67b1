use cmlval::modforms::identities::{verify_with_samples, EisensteinIdentity};
use cmlval::numerics::PrecisionContext;

#[test]
fn every_catalogued_identity_holds() {
    let ctx = PrecisionContext::default();
    let mut failures = Vec::new();
    for id in EisensteinIdentity::catalog() {
        let r = verify_with_samples(id, 4, 7, &ctx);
        match r {
            Ok(r) if r < ctx.identity_tolerance => {}
            other => failures.push(format!("{}: {:?}", id, other.map(|f| f.to_f64()))),
        }
    }
    assert!(failures.is_empty(), "{:#?}", failures);
}

