#![no_main]

use acwallet_core::{Element, Group, Secp256k1, ToyGroup};
use libfuzzer_sys::fuzz_target;

fn check<G: Group>(data: &[u8]) -> Option<Element<G>> {
    let e = Element::<G>::from_bytes(data).ok()?;
    assert_eq!(e.to_bytes(), data);
    Some(e)
}

fuzz_target!(|data: &[u8]| {
    check::<ToyGroup>(data);
    // The curve identity has no encoding.
    if let Some(e) = check::<Secp256k1>(data) {
        assert!(!e.is_identity());
    }
});
