use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::RunConfig;
use crate::error::Result;

/// Version tag written at the top of every output.
pub const SCHEMA_VERSION: &str = "qunaught-run/1";

/// One output file.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub extension: &'static str,
    pub content: String,
}

impl Artifact {
    pub fn file_name(&self) -> String {
        format!("{}.{}", self.name, self.extension)
    }
}

/// `#`-prefixed header for CSV and matrix text.
pub(crate) fn text_header(command: &str, cfg: &RunConfig) -> Result<String> {
    Ok(format!(
        "# schema: {SCHEMA_VERSION}\n# command: {command}\n# config: {}\n",
        serde_json::to_string(cfg)?
    ))
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'static str,
    command: &'a str,
    config: &'a RunConfig,
    data: T,
}

pub(crate) fn json_artifact<T: Serialize>(name: &str, command: &str, cfg: &RunConfig, data: T) -> Result<Artifact> {
    let env = Envelope {
        schema: SCHEMA_VERSION,
        command,
        config: cfg,
        data,
    };
    let mut content = serde_json::to_string_pretty(&env)?;
    content.push('\n');
    Ok(Artifact {
        name: name.into(),
        extension: "json",
        content,
    })
}

/// CSV with a header block; cells are written verbatim.
pub(crate) fn csv_artifact(
    name: &str,
    command: &str,
    cfg: &RunConfig,
    columns: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<Artifact> {
    let mut content = text_header(command, cfg)?;
    content.push_str(&columns.join(","));
    content.push('\n');
    for row in rows {
        content.push_str(&row.join(","));
        content.push('\n');
    }
    Ok(Artifact {
        name: name.into(),
        extension: "csv",
        content,
    })
}

/// Writes to `path` when there is one artifact, into the directory `path`
/// when there are several, or to `out` when no path is given.
pub fn write_artifacts(artifacts: &[Artifact], path: Option<&Path>, out: &mut dyn Write) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    match path {
        None => {
            for (i, a) in artifacts.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                out.write_all(a.content.as_bytes())?;
            }
        }
        Some(p) if artifacts.len() == 1 => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(p, &artifacts[0].content)?;
            written.push(p.to_path_buf());
        }
        Some(dir) => {
            fs::create_dir_all(dir)?;
            for a in artifacts {
                let p = dir.join(a.file_name());
                fs::write(&p, &a.content)?;
                written.push(p);
            }
        }
    }
    Ok(written)
}
