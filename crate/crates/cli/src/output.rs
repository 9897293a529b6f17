//! Report assembly and atomic file output.
//!
//! Every artifact starts with a metadata header (parameters, constants, the
//! height convention, a content hash of the parameter tuple) and a
//! `generated_at` timestamp on its own line, so identical configurations
//! produce byte-identical output except for that single line.

use std::io::Write;
use std::path::Path;

use sha2::{Digest, Sha256};

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub struct Meta {
    entries: Vec<(String, String)>,
}

impl Meta {
    pub fn new(command: &str, params: &[(&str, String)]) -> Meta {
        let canonical = format!(
            "{command}({})",
            params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
        );
        let hash = hex::encode(Sha256::digest(canonical.as_bytes()));
        let mut entries = vec![("command".to_string(), command.to_string())];
        entries.extend(params.iter().map(|(k, v)| (k.to_string(), v.clone())));
        entries.push(("height_convention".into(), "half-x-height".into()));
        entries.push(("content_hash".into(), format!("sha256:{hash}")));
        Meta { entries }
    }

    pub fn push(&mut self, key: &str, value: String) {
        self.entries.push((key.into(), value));
    }

    fn timestamp() -> String {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs().to_string())
            .unwrap_or_else(|_| "0".into())
    }

    /// `# key: value` comment lines, timestamp last.
    pub fn csv_header(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.entries {
            s.push_str(&format!("# {k}: {v}\n"));
        }
        s.push_str(&format!("# generated_at: {}\n", Self::timestamp()));
        s
    }

    /// A single JSON object line, timestamp in its own field.
    pub fn json_line(&self) -> String {
        let mut obj = serde_json::Map::new();
        for (k, v) in &self.entries {
            obj.insert(k.clone(), serde_json::Value::String(v.clone()));
        }
        obj.insert("generated_at".into(), serde_json::Value::String(Self::timestamp()));
        let mut s = serde_json::Value::Object(obj).to_string();
        s.push('\n');
        s
    }
}

/// Assemble a report: metadata header followed by the body.
pub fn render(meta: &Meta, format: Format, body: &str) -> String {
    match format {
        Format::Csv => format!("{}{}", meta.csv_header(), body),
        Format::Json => format!("{}{}", meta.json_line(), body),
    }
}

/// Write atomically: temp file in the destination directory, then rename.
pub fn write_out(path: Option<&Path>, content: &str) -> std::io::Result<()> {
    match path {
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
            Ok(())
        }
        Some(path) => {
            let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
            let mut tmp = match dir {
                Some(d) => {
                    std::fs::create_dir_all(d)?;
                    tempfile::NamedTempFile::new_in(d)?
                }
                None => tempfile::NamedTempFile::new_in(".")?,
            };
            tmp.write_all(content.as_bytes())?;
            tmp.persist(path).map_err(|e| e.error)?;
            Ok(())
        }
    }
}
