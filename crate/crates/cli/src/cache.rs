//! Keyed result cache with cheap re-verification on every hit.
//!
//! Entries are JSON files named by the hash of their full parameter tuple
//! (including tolerance and the height convention). A hit is only served
//! after an integrity check — a checksum for sieve segments, an exact
//! on-curve re-check for η witnesses — so tampered or corrupt entries are
//! discarded with a warning and recomputed.

use std::path::{Path, PathBuf};

use base64::Engine;
use congruent_core::curve::{EtaResult, EtaStatus, Twist};
use congruent_core::sieve::MobiusSegment;
use sha2::{Digest, Sha256};

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// `--cache-dir` flag, else the `CONGRUENT_CACHE_DIR` environment
    /// variable; `None` disables caching.
    pub fn from_config(flag: Option<PathBuf>) -> Option<Cache> {
        let dir = flag.or_else(|| std::env::var_os("CONGRUENT_CACHE_DIR").map(PathBuf::from))?;
        Some(Cache { dir })
    }

    fn entry_path(&self, key: &str) -> PathBuf {
        let hash = hex::encode(Sha256::digest(key.as_bytes()));
        self.dir.join(format!("{hash}.json"))
    }

    fn read(&self, key: &str) -> Option<serde_json::Value> {
        let text = std::fs::read_to_string(self.entry_path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    fn write(&self, key: &str, value: &serde_json::Value) {
        if std::fs::create_dir_all(&self.dir).is_err() {
            return;
        }
        let _ = std::fs::write(self.entry_path(key), value.to_string());
    }

    fn discard(&self, key: &str, what: &str) {
        eprintln!("warning: discarding corrupt cache entry for {what}; recomputing");
        let _ = std::fs::remove_file(self.entry_path(key));
    }

    pub fn eta_key(d: u64, bound: u64, tol: f64) -> String {
        format!("eta(d={d},bound={bound},tol={tol:e},convention=half-x-height)")
    }

    /// Serve a cached η result if its witness still verifies.
    pub fn load_eta(&self, d: u64, bound: u64, tol: f64) -> Option<EtaResult> {
        let key = Self::eta_key(d, bound, tol);
        let value = self.read(&key)?;
        let result = match EtaResult::from_json(&value) {
            Some(r) if r.d == d && r.search_bound == bound => r,
            _ => {
                self.discard(&key, &format!("eta d={d}"));
                return None;
            }
        };
        let ok = match (result.status, &result.witness) {
            (EtaStatus::Found, Some(w)) => Twist::new(d)
                .map(|tw| tw.contains(w) && !tw.is_torsion(w))
                .unwrap_or(false),
            (EtaStatus::NotFoundBelowBound, None) => true,
            _ => false,
        };
        if !ok {
            self.discard(&key, &format!("eta d={d}"));
            return None;
        }
        Some(result)
    }

    pub fn store_eta(&self, bound: u64, tol: f64, result: &EtaResult) {
        let key = Self::eta_key(result.d, bound, tol);
        self.write(&key, &result.to_json());
    }

    pub fn segment_key(lo: u64, hi: u64) -> String {
        format!("mobius(lo={lo},hi={hi})")
    }

    fn segment_checksum(values: &[i8]) -> String {
        let bytes: Vec<u8> = values.iter().map(|&v| v as u8).collect();
        hex::encode(Sha256::digest(&bytes))
    }

    /// Serve a cached Möbius segment if its checksum still matches.
    pub fn load_segment(&self, lo: u64, hi: u64) -> Option<MobiusSegment> {
        let key = Self::segment_key(lo, hi);
        let value = self.read(&key)?;
        let parse = || -> Option<(MobiusSegment, String)> {
            let b64 = value.get("values")?.as_str()?;
            let checksum = value.get("checksum")?.as_str()?.to_string();
            let bytes = base64::engine::general_purpose::STANDARD.decode(b64).ok()?;
            let seg = MobiusSegment {
                lo: value.get("lo")?.as_u64()?,
                hi: value.get("hi")?.as_u64()?,
                values: bytes.into_iter().map(|b| b as i8).collect(),
            };
            Some((seg, checksum))
        };
        match parse() {
            Some((seg, checksum))
                if seg.lo == lo
                    && seg.hi == hi
                    && seg.values.len() as u64 == hi - lo + 1
                    && Self::segment_checksum(&seg.values) == checksum =>
            {
                Some(seg)
            }
            _ => {
                self.discard(&key, &format!("segment [{lo}, {hi}]"));
                None
            }
        }
    }

    pub fn store_segment(&self, seg: &MobiusSegment) {
        let bytes: Vec<u8> = seg.values.iter().map(|&v| v as u8).collect();
        let value = serde_json::json!({
            "lo": seg.lo,
            "hi": seg.hi,
            "values": base64::engine::general_purpose::STANDARD.encode(&bytes),
            "checksum": Self::segment_checksum(&seg.values),
        });
        self.write(&Self::segment_key(seg.lo, seg.hi), &value);
    }

    #[allow(dead_code)]
    pub fn dir(&self) -> &Path {
        &self.dir
    }
}
