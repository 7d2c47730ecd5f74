//! Brute-force ElGamal decryption in the toy group.
//!
//! Works on canonical byte encodings with its own modular arithmetic so that
//! it shares no code path with the scheme it checks.

const P: u64 = 2027;
const Q: u64 = 1013;
const G: u64 = 4;

fn residue(bytes: &[u8]) -> Option<u64> {
    let arr: [u8; 2] = bytes.try_into().ok()?;
    let v = u16::from_be_bytes(arr) as u64;
    (1..P).contains(&v).then_some(v)
}

fn pow_mod(base: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    let mut b = base % P;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

/// `x` in `[0, 1013)` with `4^x = target`, found by exhaustive search.
pub fn toy_discrete_log(target: &[u8]) -> Option<u64> {
    let target = residue(target)?;
    let mut acc = 1;
    for x in 0..Q {
        if acc == target {
            return Some(x);
        }
        acc = acc * G % P;
    }
    None
}

/// Recovers the plaintext of `(u, v)` under `opk` by first brute-forcing
/// `osk = log_g opk`, then computing `v * u^-osk`. Returns the encoding of
/// the plaintext.
pub fn toy_elgamal_decrypt(opk: &[u8], u: &[u8], v: &[u8]) -> Option<Vec<u8>> {
    let osk = toy_discrete_log(opk)?;
    let u = residue(u)?;
    let v = residue(v)?;
    let shared = pow_mod(u, osk);
    let plain = v * pow_mod(shared, P - 2) % P;
    Some((plain as u16).to_be_bytes().to_vec())
}
