use std::fs;
use std::path::{Path, PathBuf};

use sylow3::lr;
use sylow3::oracle::{self, ClassProfile};

pub const CACHE_DIR_ENV: &str = "SYLOW3_CACHE_DIR";
const LR_FILE: &str = "lr-coefficients.txt";
const PROFILE_FILE: &str = "profile-k3.json";

pub struct Cache {
    dir: Option<PathBuf>,
    profile_loaded: bool,
}

impl Cache {
    /// `--cache-dir`, then the environment, then `.cache`; `None` disables caching.
    pub fn open(flag: Option<PathBuf>, disabled: bool) -> Self {
        if disabled {
            return Self {
                dir: None,
                profile_loaded: false,
            };
        }
        let dir = flag
            .or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(".cache"));
        lr::set_cache_path(&dir.join(LR_FILE));
        let profile_loaded = load_profile(&dir.join(PROFILE_FILE));
        Self {
            dir: Some(dir),
            profile_loaded,
        }
    }

    /// Writes the `P_27` profile if this run built it.
    pub fn save(&self) {
        let (Some(dir), false) = (&self.dir, self.profile_loaded) else {
            return;
        };
        let Some(profile) = oracle::cached_profile(3) else {
            return;
        };
        let path = dir.join(PROFILE_FILE);
        let written = fs::create_dir_all(dir)
            .map_err(|e| e.to_string())
            .and_then(|_| serde_json::to_vec(profile.as_ref()).map_err(|e| e.to_string()))
            .and_then(|bytes| fs::write(&path, bytes).map_err(|e| e.to_string()));
        if let Err(e) = written {
            eprintln!("warning: could not write {}: {e}", path.display());
        }
    }
}

fn load_profile(path: &Path) -> bool {
    let Ok(bytes) = fs::read(path) else {
        return false;
    };
    let loaded = serde_json::from_slice::<ClassProfile>(&bytes)
        .map_err(|e| e.to_string())
        .and_then(|p| oracle::install_profile(p).map_err(|e| e.to_string()));
    match loaded {
        Ok(()) => true,
        Err(e) => {
            eprintln!("warning: ignoring {}: {e}", path.display());
            false
        }
    }
}

/// Announces the one long oracle step before it starts.
pub fn announce_profile(needs_k3: bool) {
    if needs_k3 && oracle::cached_profile(3).is_none() {
        eprintln!("building the class profile of P_27 (3^13 elements); this takes a few seconds");
    }
}
