use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;

/// Anything that should end the run with exit code 2.
#[derive(Debug)]
pub enum InputError {
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    Json {
        path: PathBuf,
        key: String,
        message: String,
    },
    Invalid(String),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            InputError::Json { path, key, message } => {
                write!(f, "{}: at `{key}`: {message}", path.display())
            }
            InputError::Invalid(m) => f.write_str(m),
        }
    }
}

impl From<rkt_core::Error> for InputError {
    fn from(e: rkt_core::Error) -> Self {
        InputError::Invalid(e.to_string())
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let text = fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.to_owned(),
        source,
    })?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| InputError::Json {
        path: path.to_owned(),
        key: e.path().to_string(),
        message: e.inner().to_string(),
    })
}

#[derive(Debug, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub core_version: &'static str,
    pub subcommand: &'static str,
    pub seed: Option<u64>,
    pub threads: usize,
    pub config: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

#[derive(Serialize)]
struct Envelope<'a, R: Serialize> {
    meta: &'a Meta,
    report: &'a R,
}

pub fn write_text(path: Option<&Path>, text: &str) -> Result<(), InputError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| InputError::Io {
            path: p.to_owned(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| InputError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn emit_report<R: Serialize>(
    path: Option<&Path>,
    meta: &Meta,
    report: &R,
) -> Result<(), InputError> {
    write_text(path, &to_json(&Envelope { meta, report }))
}

/// Round-trip float formatting for CSV cells.
pub fn csv_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// `re,im,value` rows in the order given (radius-major for grid output).
pub fn emit_heatmap(path: &Path, rows: &[(rkt_core::DiskPoint, f64)]) -> Result<(), InputError> {
    if rows.is_empty() {
        return Err(InputError::Invalid("heatmap grid is empty".into()));
    }
    let mut s = String::from("re,im,value\n");
    for (p, v) in rows {
        let z = p.value();
        s.push_str(&format!(
            "{},{},{}\n",
            csv_float(z.re),
            csv_float(z.im),
            csv_float(*v)
        ));
    }
    write_text(Some(path), &s)
}
