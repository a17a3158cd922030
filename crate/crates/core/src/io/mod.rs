//! Model files, the bundled corpus, report documents and the command
//! dispatcher behind the `gkm-cm` binary.

mod command;
mod model;
mod report;

use std::path::Path;

pub use command::{run_command, run_on_model, Command, OutputFormat, RunOptions, RunOutput};
pub use model::{
    parse_model_str, to_canonical_json, EdgeDocument, FaceDocument, Model, ModelDocument,
    VertexDocument, SCHEMA_VERSION,
};
pub use report::{
    BettiDocument, ReportDocument, Results, SeriesDocument, ThomFace, VerdictDocument,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema violation at line {line}, column {column}: {message}")]
    Schema {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema violation at {path}: {message}")]
    Value { path: String, message: String },
    #[error("malformed model: {0}")]
    Structure(String),
}

/// Models shipped with the crate, by name.
pub const CORPUS: &[(&str, &str)] = &[
    ("tetrahedron", include_str!("../../corpus/tetrahedron.json")),
    ("s7_t4", include_str!("../../corpus/s7_t4.json")),
    ("cylinder", include_str!("../../corpus/cylinder.json")),
    ("triangle", include_str!("../../corpus/triangle.json")),
    ("interval", include_str!("../../corpus/interval.json")),
    ("s4_t2", include_str!("../../corpus/s4_t2.json")),
    ("sphere2", include_str!("../../corpus/sphere2.json")),
    ("cp2", include_str!("../../corpus/cp2.json")),
    (
        "tetrahedron_missing_facet",
        include_str!("../../corpus/tetrahedron_missing_facet.json"),
    ),
    (
        "tetrahedron_bad_weight",
        include_str!("../../corpus/tetrahedron_bad_weight.json"),
    ),
];

/// Corpus models that are expected to pass every check.
pub const VALID_CORPUS: &[&str] = &[
    "tetrahedron",
    "s7_t4",
    "cylinder",
    "triangle",
    "interval",
    "s4_t2",
    "sphere2",
    "cp2",
];

pub fn corpus_text(name: &str) -> Option<&'static str> {
    CORPUS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
}

pub fn corpus_model(name: &str) -> Result<Model, InputError> {
    let text = corpus_text(name).ok_or_else(|| InputError::Io {
        path: name.into(),
        message: "no such corpus model".into(),
    })?;
    Model::from_document(name, &parse_model_str(text)?)
}

/// Loads a model from disk. A path of the form `corpus/<name>` that does not
/// exist on disk falls back to the bundled model of that name, and the `.json`
/// extension may be omitted.
pub fn load_model(path: &str) -> Result<Model, InputError> {
    let p = Path::new(path);
    let name = p
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or(path)
        .to_string();
    let on_disk = if p.is_file() {
        Some(p.to_path_buf())
    } else {
        let with_ext = p.with_extension("json");
        with_ext.is_file().then_some(with_ext)
    };
    let text = match on_disk {
        Some(file) => std::fs::read_to_string(&file).map_err(|e| InputError::Io {
            path: file.display().to_string(),
            message: e.to_string(),
        })?,
        None => {
            let bundled = path
                .strip_prefix("corpus/")
                .map(|n| n.trim_end_matches(".json"))
                .and_then(corpus_text);
            match bundled {
                Some(text) => text.to_string(),
                None => {
                    return Err(InputError::Io {
                        path: path.into(),
                        message: "file not found".into(),
                    })
                }
            }
        }
    };
    Model::from_document(&name, &parse_model_str(&text)?)
}
