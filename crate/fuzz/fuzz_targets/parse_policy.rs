#![no_main]

use acwallet_core::wallet::{validate_policy, IndividualScheme, Policy};
use acwallet_core::{Secp256k1, ToyGroup};
use libfuzzer_sys::fuzz_target;

fn check<G: IndividualScheme>(text: &str) {
    if let Ok(policy) = Policy::<G>::from_json(text) {
        let _ = validate_policy(&policy);
        let _ = policy.canonical_bytes();
        let json = policy.to_json();
        assert_eq!(Policy::<G>::from_json(&json).unwrap().to_json(), json);
    }
}

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        check::<ToyGroup>(text);
        check::<Secp256k1>(text);
    }
});
