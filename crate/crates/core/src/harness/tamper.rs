use crate::ars::{Message, Ring, RingSignature};
use crate::group::{Element, Group, Scalar};

/// A modified signature together with the inputs it should be checked
/// against.
#[derive(Debug, Clone)]
pub struct Mutant<G: Group> {
    pub name: String,
    pub opk: Element<G>,
    pub msg: Message,
    pub ring: Ring<G>,
    pub sig: RingSignature<G>,
}

/// Systematic single-point mutations of an honest `(opk, msg, ring, sig)`.
/// None of them should verify.
///
/// The list covers each ciphertext component, each field of each branch,
/// branch permutations, dropped and duplicated branches, and transplanting
/// the signature to a different message, ring order or opener key.
pub fn tamper_mutations<G: Group>(
    opk: &Element<G>,
    msg: &Message,
    ring: &Ring<G>,
    sig: &RingSignature<G>,
) -> Vec<Mutant<G>> {
    let g = Element::<G>::generator();
    let one = Scalar::<G>::one();
    let mut out = Vec::new();
    let mut push =
        |name: String, opk: Element<G>, msg: Message, ring: Ring<G>, sig: RingSignature<G>| {
            out.push(Mutant {
                name,
                opk,
                msg,
                ring,
                sig,
            });
        };

    let mut s = sig.clone();
    s.u = s.u * g;
    push("u*g".into(), *opk, msg.clone(), ring.clone(), s);
    let mut s = sig.clone();
    s.v = s.v * g;
    push("v*g".into(), *opk, msg.clone(), ring.clone(), s);

    for i in 0..sig.branches.len() {
        for field in ["a", "b", "d", "c", "z_r", "z_s"] {
            let mut s = sig.clone();
            let br = &mut s.branches[i];
            match field {
                "a" => br.a = br.a * g,
                "b" => br.b = br.b * g,
                "d" => br.d = br.d * g,
                "c" => br.c = br.c + one,
                "z_r" => br.z_r = br.z_r + one,
                _ => br.z_s = br.z_s + one,
            }
            push(
                format!("branch[{i}].{field}"),
                *opk,
                msg.clone(),
                ring.clone(),
                s,
            );
        }
    }

    let n = sig.branches.len();
    if n >= 2 {
        let mut s = sig.clone();
        s.branches.swap(0, 1);
        push(
            "swap branches 0,1".into(),
            *opk,
            msg.clone(),
            ring.clone(),
            s,
        );
        let mut s = sig.clone();
        s.branches.swap(n - 2, n - 1);
        push(
            "swap last two branches".into(),
            *opk,
            msg.clone(),
            ring.clone(),
            s,
        );
        let mut s = sig.clone();
        s.branches.rotate_left(1);
        push("rotate branches".into(), *opk, msg.clone(), ring.clone(), s);
    }
    let mut s = sig.clone();
    s.branches.pop();
    push(
        "drop last branch".into(),
        *opk,
        msg.clone(),
        ring.clone(),
        s,
    );
    let mut s = sig.clone();
    s.branches.remove(0);
    push(
        "drop first branch".into(),
        *opk,
        msg.clone(),
        ring.clone(),
        s,
    );
    let mut s = sig.clone();
    s.branches.push(sig.branches[0].clone());
    push(
        "duplicate branch".into(),
        *opk,
        msg.clone(),
        ring.clone(),
        s,
    );
    let mut s = sig.clone();
    std::mem::swap(&mut s.u, &mut s.v);
    push("swap u,v".into(), *opk, msg.clone(), ring.clone(), s);

    let mut other = msg.0.clone();
    other.push(0);
    push(
        "message extended".into(),
        *opk,
        Message(other),
        ring.clone(),
        sig.clone(),
    );
    let mut other = msg.0.clone();
    match other.first_mut() {
        Some(b) => *b ^= 1,
        None => other.push(1),
    }
    push(
        "message bit flip".into(),
        *opk,
        Message(other),
        ring.clone(),
        sig.clone(),
    );

    if ring.len() >= 2 {
        let mut members = ring.members().to_vec();
        members.swap(0, 1);
        push(
            "ring reordered".into(),
            *opk,
            msg.clone(),
            Ring::new(members).unwrap(),
            sig.clone(),
        );
        let mut members = ring.members().to_vec();
        members.reverse();
        push(
            "ring reversed".into(),
            *opk,
            msg.clone(),
            Ring::new(members).unwrap(),
            sig.clone(),
        );
    }
    let mut members = ring.members().to_vec();
    let mut fresh = members[0] * g;
    while members.contains(&fresh) {
        fresh = fresh * g;
    }
    members[0] = fresh;
    push(
        "ring member replaced".into(),
        *opk,
        msg.clone(),
        Ring::new(members).unwrap(),
        sig.clone(),
    );

    push(
        "opener key changed".into(),
        *opk * g,
        msg.clone(),
        ring.clone(),
        sig.clone(),
    );
    out
}
