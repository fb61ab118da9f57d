//! Reading `.bcat` files into one environment.

use std::fs;
use std::path::{Path, PathBuf};

use basecat_dsl::{parse, Document, Environment, LoadError, LoadOptions, ParseError};

/// The corpus shipped with the binary, used when no input is given.
pub const BUNDLED: &[(&str, &str)] = &[
    ("01_categories.bcat", include_str!("../fixtures/01_categories.bcat")),
    ("02_functors.bcat", include_str!("../fixtures/02_functors.bcat")),
    ("03_concrete.bcat", include_str!("../fixtures/03_concrete.bcat")),
    ("04_actions.bcat", include_str!("../fixtures/04_actions.bcat")),
    ("05_families.bcat", include_str!("../fixtures/05_families.bcat")),
    ("06_controls.bcat", include_str!("../fixtures/06_controls.bcat")),
];

/// Errors that stop a command before it produces a report.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    /// 2 for unusable input, 1 for input that does not validate.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::Load(_) | CliError::Failed(_) => 1,
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Parses the files in order into a single document.
pub fn parse_files(paths: &[PathBuf]) -> Result<Document, CliError> {
    let mut doc = Document::default();
    for p in paths {
        let text = read(p)?;
        doc.declarations.extend(parse(&p.display().to_string(), &text)?.declarations);
    }
    Ok(doc)
}

pub fn bundled_document() -> Document {
    let mut doc = Document::default();
    for (name, text) in BUNDLED {
        doc.declarations.extend(parse(name, text).expect("bundled corpus parses").declarations);
    }
    doc
}

/// The `.bcat` files directly inside `dir`, sorted by name.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = fs::read_dir(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|e| e == "bcat"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(usage(format!("no .bcat files in {}", dir.display())));
    }
    Ok(files)
}

/// Loads `inputs`, or the bundled corpus when there are none. Any invalid
/// declaration is an error.
pub fn load(inputs: &[PathBuf], opts: LoadOptions) -> Result<Environment, CliError> {
    let doc = if inputs.is_empty() { bundled_document() } else { parse_files(inputs)? };
    Ok(Environment::from_document(&doc, opts)?)
}
