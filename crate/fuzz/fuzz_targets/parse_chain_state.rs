#![no_main]

use acwallet_core::wallet::{Chain, IndividualScheme};
use acwallet_core::{Secp256k1, ToyGroup};
use libfuzzer_sys::fuzz_target;

fn check<G: IndividualScheme>(text: &str) {
    if let Ok(chain) = Chain::<G>::from_json(text) {
        let json = chain.to_json();
        assert_eq!(Chain::<G>::from_json(&json).unwrap().to_json(), json);
    }
}

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = Chain::<ToyGroup>::group_of(text);
        check::<ToyGroup>(text);
        check::<Secp256k1>(text);
    }
});
