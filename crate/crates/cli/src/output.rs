//! Exit codes, artifact staging and number formatting.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

/// Exit codes: 1 internal, 2 bad input, 3 I/O, 4 probe disagreement,
/// 5 a stated value failed to reproduce.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Internal(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    ProbeMismatch(String),
    #[error("{0}")]
    NotReproduced(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Internal(_) => 1,
            CliError::Input(_) => 2,
            CliError::Io(_) => 3,
            CliError::ProbeMismatch(_) => 4,
            CliError::NotReproduced(_) => 5,
        }
    }
}

/// Collects every artifact of a command and writes them only once all of
/// them have been computed.
pub struct Outputs {
    dir: PathBuf,
    formats: Vec<Format>,
    files: Vec<(String, String)>,
}

impl Outputs {
    pub fn new(dir: PathBuf, formats: Vec<Format>) -> Self {
        Self {
            dir,
            formats,
            files: Vec::new(),
        }
    }

    pub fn wants(&self, format: Format) -> bool {
        self.formats.contains(&format)
    }

    pub fn add(&mut self, format: Format, name: impl Into<String>, contents: String) {
        if self.wants(format) {
            self.files.push((name.into(), contents));
        }
    }

    /// Writes to temporary names first and renames at the end, so a failed
    /// write leaves no half-finished set behind.
    pub fn commit(self) -> Result<Vec<PathBuf>, CliError> {
        if self.files.is_empty() {
            return Ok(Vec::new());
        }
        let io = |path: &Path, e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
        fs::create_dir_all(&self.dir).map_err(|e| io(&self.dir, e))?;
        let mut staged = Vec::with_capacity(self.files.len());
        for (name, contents) in &self.files {
            let tmp = self.dir.join(format!(".{name}.partial"));
            if let Err(e) = fs::write(&tmp, contents) {
                for (t, _) in &staged {
                    let _ = fs::remove_file(t);
                }
                let _ = fs::remove_file(&tmp);
                return Err(io(&tmp, e));
            }
            staged.push((tmp, self.dir.join(name)));
        }
        let mut written = Vec::with_capacity(staged.len());
        for (tmp, path) in staged {
            fs::rename(&tmp, &path).map_err(|e| io(&path, e))?;
            written.push(path);
        }
        Ok(written)
    }
}

pub fn report_written(paths: &[PathBuf]) {
    for p in paths {
        println!("wrote {}", p.display());
    }
}

/// Signed value rounded to 12 decimals, e.g. `+1`, `-0.5`; zero prints `0`.
pub fn signed(v: f64) -> String {
    let r = (v * 1e12).round() / 1e12;
    if r == 0.0 {
        "0".to_string()
    } else {
        format!("{r:+}")
    }
}

/// Multiple of `g` with a typographic minus, e.g. `g`, `−2g`, `0.5g`.
pub fn g_multiple(x: f64) -> String {
    let r = (x * 1e9).round() / 1e9;
    if r == 0.0 {
        return "0".to_string();
    }
    let magnitude = match r.abs() {
        1.0 => String::new(),
        m => format!("{m}"),
    };
    let sign = if r < 0.0 { "−" } else { "" };
    format!("{sign}{magnitude}g")
}

/// `π/2`, `3π/4`, `0` for simple rational multiples of π, decimals otherwise.
pub fn angle(theta: f64) -> String {
    let r = theta / PI;
    for den in [1u32, 2, 3, 4, 6, 8, 12] {
        let num = r * den as f64;
        if (num - num.round()).abs() < 1e-12 {
            let num = num.round() as i64;
            return match (num, den) {
                (0, _) => "0".to_string(),
                (1, 1) => "π".to_string(),
                (-1, 1) => "−π".to_string(),
                (n, 1) => format!("{n}π"),
                (1, d) => format!("π/{d}"),
                (-1, d) => format!("−π/{d}"),
                (n, d) => format!("{n}π/{d}"),
            };
        }
    }
    format!("{theta}")
}

/// Lower-case file stem made of `[a-z0-9-]`.
pub fn slug(label: &str) -> String {
    let mut out = String::new();
    for c in label.chars() {
        if c.is_ascii_alphanumeric() {
            out.push(c.to_ascii_lowercase());
        } else if !out.ends_with('-') && !out.is_empty() {
            out.push('-');
        }
    }
    let trimmed = out.trim_end_matches('-');
    if trimmed.is_empty() {
        "field".to_string()
    } else {
        trimmed.to_string()
    }
}

pub fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}
