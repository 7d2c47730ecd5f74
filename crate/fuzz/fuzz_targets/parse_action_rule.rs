#![no_main]

use acwallet_core::wallet::{ActionRule, Address};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(rule) = text.parse::<ActionRule>() {
            assert_eq!(rule.to_string().parse::<ActionRule>().unwrap(), rule);
        }
        if let Ok(address) = text.parse::<Address>() {
            assert_eq!(address.to_string().parse::<Address>().unwrap(), address);
        }
    }
});
