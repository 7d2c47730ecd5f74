use std::path::{Path, PathBuf};

use acwallet_core::ars::{rsign, PublicParams};
use acwallet_core::ars::{OpenerKeyPair, UserKeyPair};
use acwallet_core::audit::{judge_transaction, open_transaction, AuditClaim};
use acwallet_core::harness::{
    run_anonymity_suite, run_bench, run_full_unforgeability_suite, run_traceability_suite,
    run_tracing_soundness_suite, GameReport,
};
use acwallet_core::wallet::{
    canonical_message, individual_sign, ActionRule, Address, AuthorizationBundle, Chain,
    IndividualKeyPair, IndividualScheme, IndividualVk, Ledger, Policy, PolicyRing, TransactionData,
    TransactionRequest, WalletError,
};
use acwallet_core::{Element, GroupId, Secp256k1, ToyGroup};
use rand::rngs::OsRng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::error::{parse_error, CliError, Result};
use crate::workspace::{read_file, write_atomic, KeyFile, KeyMaterial, Workspace};
use crate::{
    AuditCommand, BenchCommand, Command, HarnessCommand, KeyKind, PolicyCommand, Suite, TxCommand,
    WalletCommand,
};

pub fn execute<G: IndividualScheme>(command: Command, ws: &Workspace) -> Result<i32> {
    match command {
        Command::Init {
            chain_id, force, ..
        } => init::<G>(ws, chain_id, force),
        Command::Keygen { kind, out, .. } => keygen::<G>(kind, &out),
        Command::Policy(cmd) => policy::<G>(cmd),
        Command::Wallet(cmd) => wallet::<G>(cmd, ws),
        Command::Tx(cmd) => tx::<G>(cmd, ws),
        Command::Audit(cmd) => audit::<G>(cmd, ws),
        Command::Harness(HarnessCommand::Run {
            suite,
            group,
            trials,
            seed,
            json,
        }) => harness(suite, group, trials, seed, json),
        Command::Bench(BenchCommand::Run {
            sizes, seed, json, ..
        }) => bench::<G>(&sizes, seed, json),
    }
}

fn init<G: IndividualScheme>(ws: &Workspace, chain_id: u64, force: bool) -> Result<i32> {
    let _lock = ws.lock(true)?;
    if ws.is_initialized() && !force {
        return Err(CliError::new(
            "bad-state",
            format!(
                "{} already exists; pass --force to replace it",
                ws.state_path().display()
            ),
        ));
    }
    ws.save(&Chain::<G>::new(chain_id)?)?;
    println!("{}", ws.state_path().display());
    Ok(0)
}

fn keygen<G: IndividualScheme>(kind: KeyKind, out: &Path) -> Result<i32> {
    let pp = PublicParams::<G>::new()?;
    let key = match kind {
        KeyKind::User => KeyMaterial::User(UserKeyPair::generate(&pp, &mut OsRng)),
        KeyKind::Opener => KeyMaterial::Opener(OpenerKeyPair::generate(&pp, &mut OsRng)),
        KeyKind::Individual => KeyMaterial::Individual(IndividualKeyPair::generate(&mut OsRng)),
    };
    let public = key.public_hex();
    let file = KeyFile { group: G::ID, key };
    write_atomic(out, &to_json(&file))?;
    println!("{public}");
    Ok(0)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("value serializes")
}

/// Key file path or hex encoding.
fn element_arg<G: IndividualScheme>(arg: &str, kind: &'static str) -> Result<Element<G>> {
    let path = Path::new(arg);
    if path.exists() {
        return match KeyFile::<G>::read(path)?.expect(kind, path)? {
            KeyMaterial::User(k) => Ok(k.pk),
            KeyMaterial::Opener(k) => Ok(k.opk),
            KeyMaterial::Individual(_) => unreachable!("kind checked"),
        };
    }
    Element::from_hex(arg).map_err(|e| parse_error(format!("{kind} key `{arg}`"), e))
}

fn vk_arg<G: IndividualScheme>(arg: &str) -> Result<IndividualVk<G>> {
    let path = Path::new(arg);
    if path.exists() {
        return match KeyFile::<G>::read(path)?.expect("individual", path)? {
            KeyMaterial::Individual(k) => Ok(k.vk),
            _ => unreachable!("kind checked"),
        };
    }
    IndividualVk::from_hex(arg).map_err(|e| parse_error(format!("individual key `{arg}`"), e))
}

fn read_policy<G: IndividualScheme>(path: &Path) -> Result<Policy<G>> {
    Policy::from_json(&read_file(path)?).map_err(|e| parse_error(path.display(), e))
}

fn policy<G: IndividualScheme>(cmd: PolicyCommand) -> Result<i32> {
    let path = match &cmd {
        PolicyCommand::AddRing { policy, .. } | PolicyCommand::AddIndividual { policy, .. } => {
            policy.clone()
        }
    };
    let mut policy = if path.exists() {
        read_policy::<G>(&path)?
    } else {
        Policy {
            rings: Vec::new(),
            individuals: Vec::new(),
        }
    };
    match cmd {
        PolicyCommand::AddRing {
            opener, members, ..
        } => {
            let opk = element_arg::<G>(&opener, "opener")?;
            let members = members
                .iter()
                .map(|m| element_arg::<G>(m, "user"))
                .collect::<Result<Vec<_>>>()?;
            policy.rings.push(PolicyRing { opk, members });
        }
        PolicyCommand::AddIndividual { key, .. } => policy.individuals.push(vk_arg::<G>(&key)?),
    }
    acwallet_core::wallet::validate_policy(&policy).map_err(WalletError::from)?;
    write_atomic(&path, &policy.to_json())?;
    println!(
        "{}: {} ring(s), {} individual(s)",
        path.display(),
        policy.rings.len(),
        policy.individuals.len()
    );
    Ok(0)
}

fn address_arg(s: &str) -> Result<Address> {
    s.parse()
        .map_err(|e| parse_error(format!("address `{s}`"), e))
}

fn hex_arg(what: &str, s: &str) -> Result<Vec<u8>> {
    hex::decode(s.strip_prefix("0x").unwrap_or(s)).map_err(|e| parse_error(what, e))
}

fn wallet<G: IndividualScheme>(cmd: WalletCommand, ws: &Workspace) -> Result<i32> {
    match cmd {
        WalletCommand::Deploy { policy, salt, rule } => {
            let policy = read_policy::<G>(&policy)?;
            let salt = hex_arg("salt", &salt)?;
            let rule: ActionRule = rule.parse().map_err(|e| parse_error("rule", e))?;
            let _lock = ws.lock(true)?;
            let mut chain = ws.load::<G>()?;
            let address = chain.deploy_contract_wallet(policy, rule, &salt)?;
            ws.save(&chain)?;
            println!("{address}");
        }
        WalletCommand::Fund { address, amount } => {
            let address = address_arg(&address)?;
            let _lock = ws.lock(true)?;
            let mut chain = ws.load::<G>()?;
            chain.fund(address, amount)?;
            ws.save(&chain)?;
            println!("{}", chain.balance(&address));
        }
        WalletCommand::Show { address } => {
            let address = address_arg(&address)?;
            let _lock = ws.lock(false)?;
            let chain = ws.load::<G>()?;
            let wallet =
                Ledger::wallet(&chain, &address).ok_or(WalletError::UnknownWallet(address))?;
            let mut value = serde_json::to_value(wallet).expect("wallet serializes");
            value["balance"] = chain.balance(&address).into();
            println!("{}", to_json(&value));
        }
    }
    Ok(0)
}

fn read_tx<G: IndividualScheme>(path: &Path) -> Result<TransactionData<G>> {
    TransactionData::from_json(&read_file(path)?).map_err(|e| parse_error(path.display(), e))
}

/// The request from `req` and the signatures collected so far in `bundle`,
/// which must carry the same request.
fn request_and_bundle<G: IndividualScheme>(
    req: &Path,
    bundle: Option<&Path>,
) -> Result<(TransactionRequest, AuthorizationBundle<G>, PathBuf)> {
    let data = read_tx::<G>(req)?;
    let bundle_path = bundle.unwrap_or(req).to_path_buf();
    if bundle_path == req || !bundle_path.exists() {
        let collected = if bundle_path == req {
            data.bundle
        } else {
            AuthorizationBundle::default()
        };
        return Ok((data.request, collected, bundle_path));
    }
    let collected = read_tx::<G>(&bundle_path)?;
    if collected.request != data.request {
        return Err(CliError::new(
            "request-mismatch",
            format!(
                "{} was collected for a different request",
                bundle_path.display()
            ),
        ));
    }
    Ok((data.request, collected.bundle, bundle_path))
}

fn write_tx<G: IndividualScheme>(
    path: &Path,
    request: TransactionRequest,
    bundle: AuthorizationBundle<G>,
) -> Result<()> {
    write_atomic(path, &TransactionData { request, bundle }.to_json())
}

fn policy_of<G: IndividualScheme>(chain: &Chain<G>, address: &Address) -> Result<Policy<G>> {
    Ok(Ledger::wallet(chain, address)
        .ok_or(WalletError::UnknownWallet(*address))?
        .policy
        .clone())
}

fn tx<G: IndividualScheme>(cmd: TxCommand, ws: &Workspace) -> Result<i32> {
    match cmd {
        TxCommand::Build {
            wallet,
            payload,
            out,
        } => {
            let address = address_arg(&wallet)?;
            let payload = hex_arg("payload", &payload)?;
            let _lock = ws.lock(false)?;
            let chain = ws.load::<G>()?;
            let nonce = Ledger::wallet(&chain, &address)
                .ok_or(WalletError::UnknownWallet(address))?
                .nonce;
            let request = TransactionRequest {
                chain_id: chain.chain_id(),
                wallet: address,
                nonce,
                payload,
            };
            let data = TransactionData::<G> {
                request,
                bundle: AuthorizationBundle::default(),
            };
            match out {
                Some(path) => write_atomic(&path, &data.to_json())?,
                None => println!("{}", data.to_json()),
            }
        }
        TxCommand::SignRing {
            req,
            key,
            ring,
            bundle,
        } => {
            let KeyMaterial::User(user) = KeyFile::<G>::read(&key)?.expect("user", &key)? else {
                unreachable!("kind checked")
            };
            let (request, mut collected, out) = request_and_bundle::<G>(&req, bundle.as_deref())?;
            let policy = {
                let _lock = ws.lock(false)?;
                policy_of(&ws.load::<G>()?, &request.wallet)?
            };
            let members = policy.ring(ring).ok_or_else(|| {
                CliError::new("out-of-range", format!("policy has no ring {ring}"))
            })?;
            let pp = PublicParams::<G>::new()?;
            let msg = canonical_message(&request);
            let sig = rsign(
                &pp,
                &policy.rings[ring].opk,
                &msg,
                &members,
                &user.sk,
                &mut OsRng,
            )?;
            collected.set_ring_sig(ring, sig);
            write_tx(&out, request, collected)?;
            println!("{}", out.display());
        }
        TxCommand::SignInd { req, key, bundle } => {
            let KeyMaterial::Individual(ind) =
                KeyFile::<G>::read(&key)?.expect("individual", &key)?
            else {
                unreachable!("kind checked")
            };
            let (request, mut collected, out) = request_and_bundle::<G>(&req, bundle.as_deref())?;
            let policy = {
                let _lock = ws.lock(false)?;
                policy_of(&ws.load::<G>()?, &request.wallet)?
            };
            let index = policy.individual_index(&ind.vk).ok_or_else(|| {
                CliError::new(
                    "scheme",
                    format!("{} is not an individual of this wallet", key.display()),
                )
            })?;
            let sig = individual_sign(&ind.sigk, &canonical_message(&request), &mut OsRng);
            collected.set_ind_sig(index, sig);
            write_tx(&out, request, collected)?;
            println!("{}", out.display());
        }
        TxCommand::Submit { req, bundle } => {
            let (request, collected, _) = request_and_bundle::<G>(&req, bundle.as_deref())?;
            let _lock = ws.lock(true)?;
            let mut chain = ws.load::<G>()?;
            let receipt = chain.submit_transaction(request, collected)?;
            ws.save(&chain)?;
            println!(
                "{}",
                serde_json::to_string(&receipt).expect("receipt serializes")
            );
        }
    }
    Ok(0)
}

fn audit<G: IndividualScheme>(cmd: AuditCommand, ws: &Workspace) -> Result<i32> {
    let _lock = ws.lock(false)?;
    let chain = ws.load::<G>()?;
    match cmd {
        AuditCommand::Open { tx, ring, osk, out } => {
            let KeyMaterial::Opener(opener) = KeyFile::<G>::read(&osk)?.expect("opener", &osk)?
            else {
                unreachable!("kind checked")
            };
            let claim = open_transaction(&chain, tx, ring, &opener.osk, &mut OsRng)?;
            match out {
                Some(path) => write_atomic(&path, &claim.to_json())?,
                None => println!("{}", claim.to_json()),
            }
            Ok(0)
        }
        AuditCommand::Judge { claim } => {
            let claim = AuditClaim::<G>::from_json(&read_file(&claim)?)
                .map_err(|e| parse_error(claim.display(), e))?;
            let ok = judge_transaction(&chain, &claim);
            println!("{}", ok as u8);
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn rng_from(seed: Option<u64>) -> ChaCha20Rng {
    match seed {
        Some(s) => ChaCha20Rng::seed_from_u64(s),
        None => ChaCha20Rng::from_entropy(),
    }
}

/// Group a suite runs on when none is given. The toy challenge space is
/// only q = 1013, so a blind forgery there wins about once per thousand
/// attempts; the forgery games default to the production group.
pub fn default_suite_group(suite: Suite) -> GroupId {
    match suite {
        Suite::Unforgeability | Suite::TracingSoundness => GroupId::Production,
        _ => GroupId::Toy,
    }
}

fn run_suite<G: IndividualScheme>(
    suite: Suite,
    trials: u64,
    rng: &mut ChaCha20Rng,
) -> Result<GameReport> {
    let pp = PublicParams::<G>::new()?;
    Ok(match suite {
        Suite::Unforgeability => run_full_unforgeability_suite(&pp, trials, rng),
        Suite::Anonymity => run_anonymity_suite(&pp, trials, rng),
        Suite::Traceability => run_traceability_suite(&pp, trials, rng),
        Suite::TracingSoundness => run_tracing_soundness_suite(&pp, trials, rng),
        Suite::All => unreachable!("expanded by the caller"),
    })
}

pub fn harness(
    suite: Suite,
    group: Option<GroupId>,
    trials: Option<u64>,
    seed: Option<u64>,
    json: bool,
) -> Result<i32> {
    let mut rng = rng_from(seed);
    let selected: &[Suite] = match suite {
        Suite::All => &[
            Suite::Unforgeability,
            Suite::Anonymity,
            Suite::Traceability,
            Suite::TracingSoundness,
        ],
        _ => std::slice::from_ref(&suite),
    };
    let mut reports: Vec<GameReport> = Vec::new();
    for s in selected {
        let n = trials.unwrap_or(if *s == Suite::Anonymity { 1000 } else { 100 });
        reports.push(match group.unwrap_or_else(|| default_suite_group(*s)) {
            GroupId::Toy => run_suite::<ToyGroup>(*s, n, &mut rng)?,
            GroupId::Production => run_suite::<Secp256k1>(*s, n, &mut rng)?,
        });
    }
    if json {
        match reports.as_slice() {
            [one] => println!("{}", to_json(one)),
            many => println!("{}", to_json(&many)),
        }
    } else {
        for r in &reports {
            println!("{r}");
        }
    }
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.game.as_str())
        .collect();
    if failed.is_empty() {
        Ok(0)
    } else {
        Err(CliError::new("suite-failed", failed.join(",")))
    }
}

fn bench<G: IndividualScheme>(sizes: &[usize], seed: Option<u64>, json: bool) -> Result<i32> {
    let pp = PublicParams::<G>::new()?;
    let report = run_bench(&pp, sizes, &mut rng_from(seed));
    if json {
        println!("{}", to_json(&report));
    } else {
        print!("{report}");
    }
    Ok(0)
}
