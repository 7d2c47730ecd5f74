use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use acwallet_core::ars::{OpenerKeyPair, UserKeyPair};
use acwallet_core::wallet::{Chain, IndividualKeyPair, IndividualScheme};
use acwallet_core::GroupId;
use serde::{Deserialize, Serialize};

use crate::error::{io_error, parse_error, CliError, Result};

pub const HOME_VAR: &str = "ACWALLET_HOME";
const STATE_FILE: &str = "chain.json";
const LOCK_FILE: &str = "chain.json.lock";

pub struct Workspace {
    dir: PathBuf,
}

/// Held for the duration of a command; released on drop.
pub struct StateLock(#[allow(dead_code)] File);

impl Workspace {
    pub fn from_env() -> Self {
        let dir = std::env::var_os(HOME_VAR)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from("."));
        Workspace { dir }
    }

    pub fn state_path(&self) -> PathBuf {
        self.dir.join(STATE_FILE)
    }

    pub fn is_initialized(&self) -> bool {
        self.state_path().exists()
    }

    /// Exclusive lock for mutating commands, shared for readers.
    pub fn lock(&self, exclusive: bool) -> Result<StateLock> {
        fs::create_dir_all(&self.dir).map_err(|e| io_error(&self.dir, e))?;
        let path = self.dir.join(LOCK_FILE);
        let file = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(&path)
            .map_err(|e| io_error(&path, e))?;
        let locked = if exclusive {
            file.lock()
        } else {
            file.lock_shared()
        };
        locked.map_err(|e| io_error(&path, e))?;
        Ok(StateLock(file))
    }

    fn read_state(&self) -> Result<String> {
        let path = self.state_path();
        if !path.exists() {
            return Err(CliError::new(
                "not-initialized",
                format!(
                    "no chain state at {}; run `acwallet init` first",
                    path.display()
                ),
            ));
        }
        read_file(&path)
    }

    pub fn group(&self) -> Result<GroupId> {
        Ok(Chain::<acwallet_core::ToyGroup>::group_of(
            &self.read_state()?,
        )?)
    }

    pub fn load<G: IndividualScheme>(&self) -> Result<Chain<G>> {
        Ok(Chain::from_json(&self.read_state()?)?)
    }

    pub fn save<G: IndividualScheme>(&self, chain: &Chain<G>) -> Result<()> {
        write_atomic(&self.state_path(), &chain.to_json())
    }
}

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| io_error(path, e))
}

/// Writes through a temporary file in the same directory and renames it
/// over `path`.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_error(dir, e))?;
    tmp.write_all(contents.as_bytes())
        .and_then(|_| tmp.write_all(b"\n"))
        .and_then(|_| tmp.as_file().sync_all())
        .map_err(|e| io_error(path, e))?;
    tmp.persist(path).map_err(|e| io_error(path, e.error))?;
    Ok(())
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", bound = "")]
pub enum KeyMaterial<G: IndividualScheme> {
    User(UserKeyPair<G>),
    Opener(OpenerKeyPair<G>),
    Individual(IndividualKeyPair<G>),
}

impl<G: IndividualScheme> KeyMaterial<G> {
    pub fn kind(&self) -> &'static str {
        match self {
            KeyMaterial::User(_) => "user",
            KeyMaterial::Opener(_) => "opener",
            KeyMaterial::Individual(_) => "individual",
        }
    }

    /// Hex encoding of the public half.
    pub fn public_hex(&self) -> String {
        match self {
            KeyMaterial::User(k) => k.pk.to_hex(),
            KeyMaterial::Opener(k) => k.opk.to_hex(),
            KeyMaterial::Individual(k) => k.vk.to_hex(),
        }
    }
}

/// Key file: `{"group": ..., "kind": ..., <public>: hex, <secret>: hex}`.
#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
pub struct KeyFile<G: IndividualScheme> {
    pub group: GroupId,
    #[serde(flatten)]
    pub key: KeyMaterial<G>,
}

impl<G: IndividualScheme> KeyFile<G> {
    pub fn read(path: &Path) -> Result<Self> {
        let text = read_file(path)?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| parse_error(path.display(), e))?;
        let group = value
            .get("group")
            .and_then(|g| g.as_str())
            .unwrap_or_default();
        if group != G::ID.as_str() {
            return Err(CliError::new(
                "group-mismatch",
                format!(
                    "{} holds a `{group}` key, expected `{}`",
                    path.display(),
                    G::ID
                ),
            ));
        }
        serde_json::from_value(value).map_err(|e| parse_error(path.display(), e))
    }

    pub fn expect(self, kind: &'static str, path: &Path) -> Result<KeyMaterial<G>> {
        if self.key.kind() != kind {
            return Err(CliError::new(
                "malformed-input",
                format!(
                    "{} is a {} key, expected a {kind} key",
                    path.display(),
                    self.key.kind()
                ),
            ));
        }
        Ok(self.key)
    }
}
