use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use super::profile::{profile, SignatureProfile};
use crate::export;
use crate::torus::TorusLink;

type Slot = Arc<OnceLock<Arc<SignatureProfile>>>;

/// Per-process profile memo with get-or-compute semantics: concurrent
/// requests for one link compute it once, requests for different links never
/// wait on each other.
///
/// Optionally backed by a directory of textual profile files (see
/// [`export::write_cache_file`]).
#[derive(Debug, Default)]
pub struct ProfileCache {
    slots: Mutex<HashMap<TorusLink, Slot>>,
    dir: Option<PathBuf>,
}

impl ProfileCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_dir(dir: impl Into<PathBuf>) -> Self {
        ProfileCache { slots: Mutex::default(), dir: Some(dir.into()) }
    }

    /// Reads `TORUS_CACHE_DIR`; falls back to an in-memory cache.
    pub fn from_env() -> Self {
        match std::env::var_os("TORUS_CACHE_DIR") {
            Some(dir) if !dir.is_empty() => Self::with_dir(dir),
            _ => Self::new(),
        }
    }

    /// The process-wide in-memory cache.
    pub fn global() -> &'static ProfileCache {
        static GLOBAL: OnceLock<ProfileCache> = OnceLock::new();
        GLOBAL.get_or_init(ProfileCache::new)
    }

    pub fn get(&self, link: &TorusLink) -> Arc<SignatureProfile> {
        let slot = {
            let mut slots = self.slots.lock().expect("profile cache poisoned");
            slots.entry(*link).or_default().clone()
        };
        slot.get_or_init(|| Arc::new(self.load_or_compute(link))).clone()
    }

    pub fn len(&self) -> usize {
        self.slots.lock().expect("profile cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn load_or_compute(&self, link: &TorusLink) -> SignatureProfile {
        let Some(dir) = &self.dir else {
            return profile(link);
        };
        let path = cache_path(dir, link);
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(stored) = export::read_cache_file(&text) {
                if stored.link() == link {
                    return stored;
                }
            }
        }
        let computed = profile(link);
        // Persisting is best effort; a read-only directory only costs recomputation.
        let _ = persist(dir, &path, &computed);
        computed
    }
}

fn cache_path(dir: &Path, link: &TorusLink) -> PathBuf {
    dir.join(format!("T_{}_{}.profile", link.p(), link.q()))
}

fn persist(dir: &Path, path: &Path, profile: &SignatureProfile) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    let mut f = fs::File::create(&tmp)?;
    f.write_all(export::write_cache_file(profile).as_bytes())?;
    f.sync_all()?;
    fs::rename(tmp, path)
}
