//! Readers for the command-line inputs, with error locations.

use std::path::Path;

use coxlink::chords::{ChordDiagram, OrderedChordSystem};
use coxlink::coxeter::{CoxeterGraph, Ordering};
use coxlink::intpoly::parse_poly;
use coxlink::seifert::SeifertMatrix;
use coxlink::{Error, IntPolynomial};
use serde_json::{json, Value};

/// An error together with where in the input it was found.
#[derive(Debug)]
pub struct Failure {
    pub error: Error,
    pub location: Value,
}

impl Failure {
    pub fn new(error: Error, location: Value) -> Self {
        Failure { error, location }
    }

    pub fn at_argument(error: Error, name: &str) -> Self {
        let location = match &error {
            Error::Parse { position, .. } => json!({"argument": name, "position": position}),
            _ => json!({"argument": name}),
        };
        Failure { error, location }
    }
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { error, location: Value::Null }
    }
}

pub type Outcome<T> = Result<T, Failure>;

pub fn polynomial(text: &str) -> Outcome<IntPolynomial> {
    parse_poly(text).map_err(|e| Failure::at_argument(e, "poly"))
}

fn read(path: &str) -> Outcome<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::new(Error::Domain(format!("cannot read {path}: {e}")), json!({"file": path})))
}

fn json_error(path: &str, e: &serde_json::Error) -> Failure {
    Failure::new(
        Error::Parse { position: e.column(), message: e.to_string() },
        json!({"file": path, "line": e.line(), "column": e.column()}),
    )
}

pub fn graph(path: &str) -> Outcome<CoxeterGraph> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| json_error(path, &e))
}

/// `--order` values: 1-based vertex ids, first reflection first.
pub fn ordering(order: &[usize], n: usize) -> Outcome<Ordering> {
    if order.is_empty() {
        return Ok(Ordering::identity(n));
    }
    let bad =
        || Failure::new(Error::Domain(format!("--order must list each of 1..={n} once")), json!({"argument": "order"}));
    if order.len() != n || order.contains(&0) {
        return Err(bad());
    }
    let seq: Vec<usize> = order.iter().map(|v| v - 1).collect();
    Ordering::from_sequence(&seq).map_err(|_| bad())
}

/// Text held either in the named file or in the argument itself.
fn file_or_literal(arg: &str) -> Outcome<(String, Value)> {
    if Path::new(arg).is_file() {
        Ok((read(arg)?, json!({"file": arg})))
    } else {
        Ok((arg.to_string(), json!({"argument": arg})))
    }
}

fn with_position(e: Error, mut location: Value) -> Failure {
    if let (Error::Parse { position, .. }, Value::Object(map)) = (&e, &mut location) {
        map.insert("position".into(), json!(position));
    }
    Failure::new(e, location)
}

/// A chord diagram as JSON (`{"word": ...}`, extra fields ignored) or in
/// the token form `+1 -2 ...`.
pub fn diagram(arg: &str) -> Outcome<ChordDiagram> {
    let (text, location) = file_or_literal(arg)?;
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(&text).map_err(|e| json_error(arg, &e))?;
        let word = v.get("diagram").unwrap_or(&v).get("word").cloned().unwrap_or(Value::Null);
        return serde_json::from_value(json!({ "word": word }))
            .map_err(|e| Failure::new(Error::Parse { position: 0, message: e.to_string() }, location));
    }
    text.trim().parse().map_err(|e| with_position(e, location))
}

pub enum LinkInput {
    System(OrderedChordSystem),
    Matrix(SeifertMatrix),
}

/// An ordered chord system (JSON or `<word> | order ...`) or a Seifert
/// matrix given as a JSON array of rows.
pub fn link(arg: &str) -> Outcome<LinkInput> {
    let (text, location) = file_or_literal(arg)?;
    let trimmed = text.trim_start();
    let parse_err = |e: serde_json::Error| {
        Failure::new(Error::Parse { position: e.column(), message: e.to_string() }, location.clone())
    };
    if trimmed.starts_with('[') {
        return serde_json::from_str(trimmed).map(LinkInput::Matrix).map_err(parse_err);
    }
    if trimmed.starts_with('{') {
        let v: Value = serde_json::from_str(trimmed).map_err(parse_err)?;
        let v = v.get("system").cloned().unwrap_or(v);
        return serde_json::from_value(v).map(LinkInput::System).map_err(parse_err);
    }
    text.trim().parse().map(LinkInput::System).map_err(|e| with_position(e, location))
}
