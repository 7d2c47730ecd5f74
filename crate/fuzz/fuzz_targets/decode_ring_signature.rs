#![no_main]

use acwallet_core::ars::RingSignature;
use acwallet_core::{Group, Secp256k1, ToyGroup};
use libfuzzer_sys::fuzz_target;

fn check<G: Group>(data: &[u8]) {
    if let Ok(sig) = RingSignature::<G>::from_bytes(data) {
        assert_eq!(sig.to_bytes(), data);
    }
}

fuzz_target!(|data: &[u8]| {
    check::<ToyGroup>(data);
    check::<Secp256k1>(data);
});
