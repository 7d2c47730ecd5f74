#![no_main]

use acwallet_core::{Group, Scalar, Secp256k1, ToyGroup};
use libfuzzer_sys::fuzz_target;

fn check<G: Group>(data: &[u8]) {
    if let Ok(s) = Scalar::<G>::from_bytes(data) {
        assert_eq!(s.to_bytes(), data);
    }
}

fuzz_target!(|data: &[u8]| {
    check::<ToyGroup>(data);
    check::<Secp256k1>(data);
});
