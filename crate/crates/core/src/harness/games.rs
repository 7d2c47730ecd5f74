use rand::{CryptoRng, Rng, RngCore};

use super::oracle::toy_elgamal_decrypt;
use super::{tamper_mutations, DistinguisherStat, Fixture, GameReport};
use crate::ars::{
    judge, open, prove_opening, rsign, rsign_with_nonces, rverify, rverify_metered, Branch,
    Message, OpenerKeyPair, OpeningProof, PublicParams, Ring, RingSignature, SigningNonces,
    UserKeyPair,
};
use crate::group::{Element, Group, GroupId, Scalar};
use crate::meter::CostMeter;

fn random_message<R: RngCore>(rng: &mut R) -> Message {
    let mut m = vec![0u8; 32];
    rng.fill_bytes(&mut m);
    Message(m)
}

fn random_element<G: Group, R: RngCore + CryptoRng>(rng: &mut R) -> Element<G> {
    Element::generator().pow(&Scalar::random(rng))
}

/// Attempt counter for one adversary strategy.
#[derive(Default)]
struct Tally {
    attempts: u64,
    accepted: u64,
}

impl Tally {
    fn record(&mut self, accepted: bool) -> bool {
        self.attempts += 1;
        self.accepted += accepted as u64;
        accepted
    }

    fn line(&self, name: &str) -> String {
        format!(
            "{name}: {} attempts, {} accepted",
            self.attempts, self.accepted
        )
    }
}

/// Unforgeability and framing-resistance against a fixed list of forgers.
///
/// Each trial sets up four honest users and an adversarial opener, grants
/// signing queries on messages other than the target, and then tries random
/// signatures, tampered and spliced query answers, transplants to the target
/// message, ring or opener key, and opening proofs that frame a different
/// member. A trial counts as a win if any attempt is accepted.
pub fn run_full_unforgeability_suite<G: Group, R: RngCore + CryptoRng>(
    pp: &PublicParams<G>,
    trials: u64,
    rng: &mut R,
) -> GameReport {
    let mut report = GameReport::new("unforgeability", G::ID, trials);
    let mut random = Tally::default();
    let mut tamper = Tally::default();
    let mut splice = Tally::default();
    let mut transplant = Tally::default();
    let mut frame = Tally::default();

    for _ in 0..trials {
        let fx = Fixture::new(pp, 4, rng);
        let opk = fx.opener.opk;
        let target = random_message(rng);
        let queried = random_message(rng);
        let mut won = false;

        // Signatures from the signing oracle, on `queried` only.
        let s0 = rsign(pp, &opk, &queried, &fx.ring, &fx.users[0].sk, rng).unwrap();
        let s1 = rsign(pp, &opk, &queried, &fx.ring, &fx.users[1].sk, rng).unwrap();

        let forged = RingSignature {
            u: random_element(rng),
            v: random_element(rng),
            branches: (0..4)
                .map(|_| Branch {
                    a: random_element(rng),
                    b: random_element(rng),
                    d: random_element(rng),
                    c: Scalar::random(rng),
                    z_r: Scalar::random(rng),
                    z_s: Scalar::random(rng),
                })
                .collect(),
        };
        won |= random.record(rverify(pp, &opk, &target, &fx.ring, &forged));
        let proof = OpeningProof {
            pk_identified: fx.users[2].pk,
            a1: random_element(rng),
            a2: random_element(rng),
            c: Scalar::random(rng),
            z: Scalar::random(rng),
        };
        won |= random.record(judge(
            pp,
            &opk,
            &target,
            &fx.ring,
            &forged,
            &fx.users[2].pk,
            &proof,
        ));

        for m in tamper_mutations(&opk, &queried, &fx.ring, &s0) {
            won |= tamper.record(rverify(pp, &m.opk, &m.msg, &m.ring, &m.sig));
        }

        for (uv, other) in [(&s0, &s1), (&s1, &s0)] {
            let mut spliced = uv.clone();
            spliced.branches[2..].clone_from_slice(&other.branches[2..]);
            won |= splice.record(rverify(pp, &opk, &queried, &fx.ring, &spliced));
            let mut mixed = other.clone();
            mixed.u = uv.u;
            mixed.v = uv.v;
            won |= splice.record(rverify(pp, &opk, &queried, &fx.ring, &mixed));
        }

        won |= transplant.record(rverify(pp, &opk, &target, &fx.ring, &s0));
        let other_opener = OpenerKeyPair::generate(pp, rng);
        won |= transplant.record(rverify(pp, &other_opener.opk, &queried, &fx.ring, &s0));
        let mut members = fx.ring.members().to_vec();
        members.rotate_left(1);
        let rotated = Ring::new(members).unwrap();
        won |= transplant.record(rverify(pp, &opk, &queried, &rotated, &s0));
        let mut members = fx.ring.members().to_vec();
        members[3] = UserKeyPair::generate(pp, rng).pk;
        if let Ok(swapped) = Ring::new(members) {
            won |= transplant.record(rverify(pp, &opk, &queried, &swapped, &s0));
        }

        // The adversary controls the opener and tries to pin s0 on user 2.
        let honest = open(pp, &queried, &fx.ring, &s0, &fx.opener.osk, rng).unwrap();
        let victim = fx.users[2].pk;
        let alpha = Scalar::random(rng);
        let framed = prove_opening(
            pp,
            &opk,
            &queried,
            &fx.ring,
            &s0,
            victim,
            &fx.opener.osk,
            &alpha,
            &mut CostMeter::new(),
        );
        won |= frame.record(judge(pp, &opk, &queried, &fx.ring, &s0, &victim, &framed));
        let relabelled = OpeningProof {
            pk_identified: victim,
            ..honest.clone()
        };
        won |= frame.record(judge(
            pp,
            &opk,
            &queried,
            &fx.ring,
            &s0,
            &victim,
            &relabelled,
        ));
        won |= frame.record(judge(
            pp,
            &opk,
            &target,
            &fx.ring,
            &s0,
            &fx.users[0].pk,
            &honest,
        ));

        report.adversary_wins += won as u64;
    }

    report.details = vec![
        random.line("random signature"),
        tamper.line("tampered query answer"),
        splice.line("spliced query answers"),
        transplant.line("transplanted signature"),
        frame.line("framing proof"),
    ];
    report
}

fn hamming<G: Group>(br: &Branch<G>) -> u32 {
    [
        br.a.to_bytes(),
        br.b.to_bytes(),
        br.d.to_bytes(),
        br.c.to_bytes(),
        br.z_r.to_bytes(),
        br.z_s.to_bytes(),
    ]
    .iter()
    .flatten()
    .map(|b| b.count_ones())
    .sum()
}

fn guess_by_order<T: Ord, R: RngCore>(x0: T, x1: T, rng: &mut R) -> usize {
    match x0.cmp(&x1) {
        std::cmp::Ordering::Greater => 0,
        std::cmp::Ordering::Less => 1,
        std::cmp::Ordering::Equal => rng.gen_range(0..2),
    }
}

/// Checks the zero-knowledge simulator on an `n`-member ring: with every
/// challenge share and response chosen first and the commitments derived
/// from them, every branch satisfies its verification equations. Programming
/// the hash to the sum of the shares then completes an accepting signature.
pub fn simulate_transcript<G: Group, R: RngCore + CryptoRng>(
    pp: &PublicParams<G>,
    n: usize,
    rng: &mut R,
) -> bool {
    let g = pp.generator();
    let opk = random_element::<G, _>(rng);
    let (u, v) = (random_element::<G, _>(rng), random_element::<G, _>(rng));
    let ring: Vec<Element<G>> = (0..n).map(|_| random_element(rng)).collect();
    let mut ok = true;
    for pk in &ring {
        let (c, z_r, z_s) = (
            Scalar::random(rng),
            Scalar::random(rng),
            Scalar::random(rng),
        );
        let a = g.pow(&z_r) * u.pow(&-c);
        let b = opk.pow(&z_r) * (v / *pk).pow(&-c);
        let d = g.pow(&z_s) * pk.pow(&-c);
        ok &= g.pow(&z_r) == a * u.pow(&c);
        ok &= opk.pow(&z_r) == b * (v / *pk).pow(&c);
        ok &= g.pow(&z_s) == d * pk.pow(&c);
    }
    ok
}

/// Anonymity against statistical distinguishers.
///
/// Each trial signs with one of two ring members chosen by a hidden bit and
/// lets every distinguisher guess it. Distinguishers without the opener key
/// must stay within three standard deviations of zero advantage; the one
/// holding it must always win. Verification cost traces for the two
/// candidates must coincide, and the zero-knowledge simulator is checked on
/// 100 transcripts.
pub fn run_anonymity_suite<G: Group, R: RngCore + CryptoRng>(
    pp: &PublicParams<G>,
    trials: u64,
    rng: &mut R,
) -> GameReport {
    let mut report = GameReport::new("anonymity", G::ID, trials);
    let names = [
        "byte-pattern",
        "challenge-share",
        "response-share",
        "meter-trace",
        "osk-holder",
    ];
    let mut correct = [0u64; 5];
    let mut trace_mismatches = 0u64;

    for _ in 0..trials {
        let fx = Fixture::new(pp, 4, rng);
        let opk = fx.opener.opk;
        let l0 = rng.gen_range(0..4);
        let l1 = (l0 + rng.gen_range(1..4)) % 4;
        let b = rng.gen_range(0..2usize);
        let signer = [l0, l1][b];
        let msg = random_message(rng);

        let mut sign_meter = CostMeter::new();
        let nonces = SigningNonces::random(4, rng);
        let sig = rsign_with_nonces(
            pp,
            &opk,
            &msg,
            &fx.ring,
            &fx.users[signer].sk,
            &nonces,
            &mut sign_meter,
        )
        .unwrap();
        let mut ref_sign_meter = CostMeter::new();
        let nonces = SigningNonces::random(4, rng);
        let reference = rsign_with_nonces(
            pp,
            &opk,
            &msg,
            &fx.ring,
            &fx.users[l0].sk,
            &nonces,
            &mut ref_sign_meter,
        )
        .unwrap();

        let (br0, br1) = (&sig.branches[l0], &sig.branches[l1]);
        let guesses = [
            guess_by_order(hamming(br0), hamming(br1), rng),
            guess_by_order(br0.c.to_biguint(), br1.c.to_biguint(), rng),
            guess_by_order(br0.z_r.to_biguint(), br1.z_r.to_biguint(), rng),
            {
                let (mut m, mut r) = (CostMeter::new(), CostMeter::new());
                rverify_metered(pp, &opk, &msg, &fx.ring, &sig, &mut m);
                rverify_metered(pp, &opk, &msg, &fx.ring, &reference, &mut r);
                if m != r || sign_meter != ref_sign_meter {
                    trace_mismatches += 1;
                }
                if m == r {
                    0
                } else {
                    1
                }
            },
            match open(pp, &msg, &fx.ring, &sig, &fx.opener.osk, rng) {
                Ok(p) if p.pk_identified == fx.users[l0].pk => 0,
                Ok(p) if p.pk_identified == fx.users[l1].pk => 1,
                _ => 2,
            },
        ];
        // Serialized sign and verify cost traces for every signer index.
        let traces: Vec<String> = fx
            .users
            .iter()
            .map(|u| {
                let (mut s, mut v) = (CostMeter::new(), CostMeter::new());
                let nonces = SigningNonces::random(4, rng);
                let sig =
                    rsign_with_nonces(pp, &opk, &msg, &fx.ring, &u.sk, &nonces, &mut s).unwrap();
                rverify_metered(pp, &opk, &msg, &fx.ring, &sig, &mut v);
                serde_json::to_string(&(s, v)).expect("meters serialize")
            })
            .collect();
        if traces.iter().any(|t| *t != traces[0]) {
            trace_mismatches += 1;
        }
        for (c, guess) in correct.iter_mut().zip(guesses) {
            *c += (guess == b) as u64;
        }
    }

    for (i, name) in names.iter().enumerate() {
        let stat = DistinguisherStat::new(name, *name == "osk-holder", trials, correct[i]);
        if stat.uses_osk {
            if stat.correct != trials {
                report.property_failures += 1;
                report
                    .details
                    .push(format!("{name}: opener misidentified the signer"));
            }
        } else if !stat.within_three_sigma() {
            report.adversary_wins += 1;
            report.details.push(format!(
                "{name}: advantage {:.4} exceeds 3 sigma",
                stat.advantage
            ));
        }
        report.distinguishers.push(stat);
    }

    report
        .details
        .push(format!("cost trace mismatches: {trace_mismatches}"));
    report.property_failures += trace_mismatches;

    let simulator_failures = (0..100)
        .filter(|_| !simulate_transcript(pp, 4, rng))
        .count() as u64;
    report.details.push(format!(
        "simulated transcripts: 100, {simulator_failures} failed"
    ));
    report.property_failures += simulator_failures;
    report
}

/// Ways an adversary may fix the signing randomness.
const NONCE_STRATEGIES: [&str; 4] = ["random", "all-one", "repeated", "zero-encryption-nonce"];

fn chosen_nonces<G: Group, R: RngCore + CryptoRng>(
    strategy: &str,
    n: usize,
    rng: &mut R,
) -> SigningNonces<G> {
    match strategy {
        "all-one" => {
            let one = Scalar::one();
            SigningNonces {
                r: one,
                alpha: one,
                beta: one,
                simulated: vec![(one, one, one); n - 1],
            }
        }
        "repeated" => {
            let s = Scalar::random(rng);
            SigningNonces {
                r: s,
                alpha: s,
                beta: s,
                simulated: vec![(s, s, s); n - 1],
            }
        }
        "zero-encryption-nonce" => SigningNonces {
            r: Scalar::zero(),
            ..SigningNonces::random(n, rng)
        },
        _ => SigningNonces::random(n, rng),
    }
}

/// Traceability: every accepted signature opens to a ring member with a
/// proof the judge accepts.
///
/// Trials cycle over ring sizes 2, 4 and 10, adversarially chosen opener
/// keys and signer-chosen nonces, and add an outsider trying to sign for the
/// ring. In the toy group every opening is compared with brute-force
/// decryption.
pub fn run_traceability_suite<G: Group, R: RngCore + CryptoRng>(
    pp: &PublicParams<G>,
    trials: u64,
    rng: &mut R,
) -> GameReport {
    let mut report = GameReport::new("traceability", G::ID, trials);
    let sizes = [2usize, 4, 10];
    let osk_choices = ["random", "one", "minus-one", "two"];
    let (mut honest_failures, mut oracle_checks, mut oracle_mismatches) = (0u64, 0u64, 0u64);
    let mut outsider = Tally::default();

    for t in 0..trials as usize {
        let n = sizes[t % 3];
        let mut fx = Fixture::new(pp, n, rng);
        let osk = match osk_choices[(t / 3) % 4] {
            "one" => Scalar::one(),
            "minus-one" => -Scalar::one(),
            "two" => Scalar::from_u64(2),
            _ => Scalar::random(rng),
        };
        fx.opener = OpenerKeyPair::from_secret(pp, osk);
        let opk = fx.opener.opk;
        let strategy = NONCE_STRATEGIES[(t / 12) % NONCE_STRATEGIES.len()];
        let signer = rng.gen_range(0..n);
        let msg = random_message(rng);
        let nonces = chosen_nonces::<G, _>(strategy, n, rng);
        let sig = rsign_with_nonces(
            pp,
            &opk,
            &msg,
            &fx.ring,
            &fx.users[signer].sk,
            &nonces,
            &mut CostMeter::new(),
        )
        .unwrap();
        if !rverify(pp, &opk, &msg, &fx.ring, &sig) {
            honest_failures += 1;
            continue;
        }

        let mut won = false;
        match open(pp, &msg, &fx.ring, &sig, &osk, rng) {
            Ok(proof) => {
                let pk = proof.pk_identified;
                won |= pk != fx.users[signer].pk;
                won |= !judge(pp, &opk, &msg, &fx.ring, &sig, &pk, &proof);
                if G::ID == GroupId::Toy {
                    oracle_checks += 1;
                    let expected =
                        toy_elgamal_decrypt(&opk.to_bytes(), &sig.u.to_bytes(), &sig.v.to_bytes());
                    if expected != Some(pk.to_bytes()) {
                        oracle_mismatches += 1;
                    }
                }
            }
            Err(_) => won = true,
        }

        // An outsider signs for a ring where it replaced member 0.
        let stranger = UserKeyPair::generate(pp, rng);
        let mut members = fx.ring.members().to_vec();
        members[0] = stranger.pk;
        if let Ok(fake_ring) = Ring::new(members) {
            let forged = rsign(pp, &opk, &msg, &fake_ring, &stranger.sk, rng).unwrap();
            if outsider.record(rverify(pp, &opk, &msg, &fx.ring, &forged)) {
                let traced = open(pp, &msg, &fx.ring, &forged, &osk, rng)
                    .map(|p| judge(pp, &opk, &msg, &fx.ring, &forged, &p.pk_identified, &p))
                    .unwrap_or(false);
                won |= !traced;
            }
        }
        report.adversary_wins += won as u64;
    }

    report.property_failures += honest_failures + oracle_mismatches;
    report.details = vec![
        format!("ring sizes: {sizes:?}"),
        format!("opener keys: {osk_choices:?}"),
        format!("nonce strategies: {NONCE_STRATEGIES:?}"),
        format!("honest signatures rejected: {honest_failures}"),
        outsider.line("outsider signature"),
    ];
    if G::ID == GroupId::Toy {
        report.details.push(format!(
            "brute-force decryption: {oracle_checks} checked, {oracle_mismatches} disagreed"
        ));
    }
    report
}

/// Tracing soundness: no proof convinces the judge that a signature came
/// from anyone but its signer, even from an adversary holding every secret.
pub fn run_tracing_soundness_suite<G: Group, R: RngCore + CryptoRng>(
    pp: &PublicParams<G>,
    trials: u64,
    rng: &mut R,
) -> GameReport {
    let mut report = GameReport::new("tracing-soundness", G::ID, trials);
    let mut wrong_witness = Tally::default();
    let mut template = Tally::default();
    let mut relabel = Tally::default();
    let mut replay = Tally::default();
    let mut inconsistent = 0u64;
    let g = pp.generator();

    for _ in 0..trials {
        let fx = Fixture::new(pp, 4, rng);
        let (opk, osk) = (fx.opener.opk, fx.opener.osk);
        let signer = rng.gen_range(0..4);
        let msg = random_message(rng);
        let sig = rsign(pp, &opk, &msg, &fx.ring, &fx.users[signer].sk, rng).unwrap();
        let honest = open(pp, &msg, &fx.ring, &sig, &osk, rng).unwrap();
        let again = open(pp, &msg, &fx.ring, &sig, &osk, rng).unwrap();
        let signer_pk = fx.users[signer].pk;
        if honest.pk_identified != signer_pk
            || again.pk_identified != signer_pk
            || !judge(pp, &opk, &msg, &fx.ring, &sig, &signer_pk, &honest)
            || !judge(pp, &opk, &msg, &fx.ring, &sig, &signer_pk, &again)
        {
            inconsistent += 1;
        }

        let mut won = false;
        for other in fx.users.iter().filter(|u| u.pk != fx.users[signer].pk) {
            let pk = other.pk;
            let accepts = |p: &OpeningProof<G>| judge(pp, &opk, &msg, &fx.ring, &sig, &pk, p);
            for witness in [osk, other.sk, Scalar::random(rng)] {
                let alpha = Scalar::random(rng);
                let p = prove_opening(
                    pp,
                    &opk,
                    &msg,
                    &fx.ring,
                    &sig,
                    pk,
                    &witness,
                    &alpha,
                    &mut CostMeter::new(),
                );
                won |= wrong_witness.record(accepts(&p));
            }

            let (c, z) = (Scalar::<G>::random(rng), Scalar::random(rng));
            let a1 = g.pow(&z) * opk.pow(&-c);
            let a2 = sig.u.pow(&z) * (sig.v / pk).pow(&-c);
            won |= template.record(accepts(&OpeningProof {
                pk_identified: pk,
                a1,
                a2,
                c,
                z,
            }));

            won |= relabel.record(accepts(&OpeningProof {
                pk_identified: pk,
                ..honest.clone()
            }));
        }

        let msg2 = random_message(rng);
        let sig2 = rsign(pp, &opk, &msg2, &fx.ring, &fx.users[signer].sk, rng).unwrap();
        won |= replay.record(judge(pp, &opk, &msg2, &fx.ring, &sig2, &signer_pk, &honest));
        report.adversary_wins += won as u64;
    }

    report.property_failures += inconsistent;
    report.details = vec![
        wrong_witness.line("prover run on a false claim"),
        template.line("transcript forgery"),
        relabel.line("relabelled honest proof"),
        replay.line("proof replayed on another message"),
        format!("repeated honest openings disagreeing: {inconsistent}"),
    ];
    report
}
