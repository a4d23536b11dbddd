//! Loading diagrams, factorizations and braid words, and the JSON error object.

use std::fs;
use std::io::Read;
use std::path::Path;

use hurwitz_core::{
    BraidWord, CoxeterDiagram, CoxeterSystem, CoxeterWord, DiagramJson, Error, Factorization, Word,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// A failure reported as `{code, message, location}` with its exit status.
#[derive(Debug, Clone, Serialize)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
    pub location: Value,
    #[serde(skip)]
    pub exit: i32,
}

impl CliError {
    pub fn invalid(code: &'static str, message: impl Into<String>, location: Value) -> Self {
        CliError {
            code,
            message: message.into(),
            location,
            exit: 2,
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError {
            code: "internal",
            message: message.into(),
            location: Value::Null,
            exit: 3,
        }
    }

    /// Maps a library error, attaching `location` when the error has none of its own.
    pub fn from_core(e: Error, location: Value) -> Self {
        let message = e.to_string();
        match e {
            Error::Syntax { line, column, .. } => {
                let mut loc = json!({ "line": line, "column": column });
                if let (Some(obj), Value::Object(extra)) = (loc.as_object_mut(), location) {
                    obj.extend(extra);
                }
                CliError::invalid("syntax", message, loc)
            }
            Error::InvalidDiagram(_) => CliError::invalid("invalid_diagram", message, location),
            Error::InvalidInput(_) => CliError::invalid("invalid_input", message, location),
            Error::NotAReflection(_) => CliError::invalid("not_a_reflection", message, location),
            Error::MoveOutOfRange { position, .. } => {
                CliError::invalid("move_out_of_range", message, json!({ "move": position }))
            }
            Error::ProductMismatch => CliError::invalid("product_mismatch", message, location),
            Error::ParityError { .. } => CliError::invalid("parity_error", message, location),
            Error::LengthMismatch(..) => CliError::invalid("length_mismatch", message, location),
            Error::Precondition(_) => CliError::invalid("precondition", message, location),
            Error::DivisionByZero
            | Error::NotConnected(_)
            | Error::CapExceeded(_)
            | Error::Internal(_) => CliError::internal(message),
        }
    }
}

fn file_location(path: &str) -> Value {
    json!({ "file": path })
}

/// Reads a file, or standard input for `-`.
pub fn read_source(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::invalid("io", e.to_string(), file_location(path)))?;
        return Ok(text);
    }
    fs::read_to_string(Path::new(path))
        .map_err(|e| CliError::invalid("io", e.to_string(), file_location(path)))
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, path: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| {
        CliError::invalid(
            "json",
            e.to_string(),
            json!({ "file": path, "line": e.line(), "column": e.column() }),
        )
    })
}

/// A diagram in the text format, or as JSON when the first non-blank character is `{`.
pub fn load_diagram(path: &str) -> Result<CoxeterDiagram, CliError> {
    let text = read_source(path)?;
    if text.trim_start().starts_with('{') {
        let json: DiagramJson = parse_json(&text, path)?;
        CoxeterDiagram::from_json(&json).map_err(|e| CliError::from_core(e, file_location(path)))
    } else {
        CoxeterDiagram::parse(&text).map_err(|e| CliError::from_core(e, file_location(path)))
    }
}

/// `"1 2 3"` or `"1,2,3"`; defaults to `1 … n`.
pub fn coxeter_word(diagram: &CoxeterDiagram, text: Option<&str>) -> Result<CoxeterWord, CliError> {
    let letters: Vec<usize> = match text {
        None => (1..=diagram.rank()).collect(),
        Some(s) => s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>().map_err(|_| {
                    CliError::invalid(
                        "invalid_input",
                        format!("'{t}' is not a generator index"),
                        json!({ "option": "--coxeter" }),
                    )
                })
            })
            .collect::<Result<_, _>>()?,
    };
    diagram
        .coxeter_word(&letters)
        .map_err(|e| CliError::from_core(e, json!({ "option": "--coxeter" })))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FactorizationFile {
    Bare(Vec<Vec<usize>>),
    Object { factors: Vec<Vec<usize>> },
}

/// Factor words from `[[1], [2, 1, 2]]` or `{"factors": [...]}`.
fn load_words(path: &str) -> Result<Vec<Word>, CliError> {
    let text = read_source(path)?;
    let words = match parse_json::<FactorizationFile>(&text, path)? {
        FactorizationFile::Bare(w) | FactorizationFile::Object { factors: w } => w,
    };
    Ok(words.into_iter().map(Word).collect())
}

pub fn load_factorization(sys: &CoxeterSystem, path: &str) -> Result<Factorization, CliError> {
    let words = load_words(path)?;
    for (k, w) in words.iter().enumerate() {
        if let Err(e) = sys.reflection_of_word(w) {
            return Err(CliError::from_core(e, json!({ "file": path, "factor": k })));
        }
    }
    Factorization::from_words(sys, &words).map_err(|e| CliError::from_core(e, file_location(path)))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum BraidFile {
    Bare(Vec<i32>),
    Braid { braid: Vec<i32> },
    Witness { witness: Vec<i32> },
}

/// A braid word from `[1, -2]`, `{"braid": [...]}` or a `connect` output.
pub fn load_braid(path: &str) -> Result<BraidWord, CliError> {
    let text = read_source(path)?;
    let moves = match parse_json::<BraidFile>(&text, path)? {
        BraidFile::Bare(m) | BraidFile::Braid { braid: m } | BraidFile::Witness { witness: m } => m,
    };
    Ok(BraidWord(moves))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coxeter_word_parsing() {
        let d = CoxeterDiagram::type_a(3).unwrap();
        assert_eq!(coxeter_word(&d, None).unwrap().letters(), &[1, 2, 3]);
        assert_eq!(
            coxeter_word(&d, Some("3, 1 2")).unwrap().letters(),
            &[3, 1, 2]
        );
        assert_eq!(
            coxeter_word(&d, Some("1 x")).unwrap_err().code,
            "invalid_input"
        );
        assert_eq!(coxeter_word(&d, Some("1 1 2")).unwrap_err().exit, 2);
    }

    #[test]
    fn error_mapping() {
        let e = CliError::from_core(
            Error::Syntax {
                line: 2,
                column: 5,
                message: "bad".into(),
            },
            file_location("d.txt"),
        );
        assert_eq!((e.code, e.exit), ("syntax", 2));
        assert_eq!(
            e.location,
            json!({ "line": 2, "column": 5, "file": "d.txt" })
        );
        assert_eq!(
            CliError::from_core(Error::Internal("x".into()), Value::Null).exit,
            3
        );
    }
}
