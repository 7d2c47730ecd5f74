#![no_main]

use acwallet_core::audit::AuditClaim;
use acwallet_core::wallet::IndividualScheme;
use acwallet_core::{Secp256k1, ToyGroup};
use libfuzzer_sys::fuzz_target;

fn check<G: IndividualScheme>(text: &str) {
    if let Ok(claim) = AuditClaim::<G>::from_json(text) {
        let json = claim.to_json();
        assert_eq!(AuditClaim::<G>::from_json(&json).unwrap().to_json(), json);
    }
}

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        check::<ToyGroup>(text);
        check::<Secp256k1>(text);
    }
});
