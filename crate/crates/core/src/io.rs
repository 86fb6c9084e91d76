//! File formats.
//!
//! * systems: `{"colors", "origin", "horizontal", "vertical"}` JSON, pairs
//!   written sorted and deduplicated;
//! * sequences: a JSON array of colors;
//! * triangles: `{"depth": m, "rows": [[...], ...]}` JSON with rows bottom-up,
//!   or the text staircase with the top row first;
//! * witnesses: a `has_coloring` verdict object.

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::coloring::{
    ColorSequence, PeriodicWitness, ShapeError, TriangleColoring, TriangleFile, WitnessError,
};
use crate::render;
use crate::search::Verdict;
use crate::system::{ColoringSystem, SystemFile, ValidationReport};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    System(#[from] ValidationReport),
    #[error("bad triangle: {0}")]
    Shape(#[from] ShapeError),
    #[error("bad witness: {0}")]
    Witness(#[from] WitnessError),
    #[error("expected a has_coloring verdict, found {0}")]
    NotAWitness(&'static str),
}

pub fn read_to_string(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Read { path: path.display().to_string(), source })
}

pub fn parse_system(text: &str) -> Result<ColoringSystem, FormatError> {
    let file: SystemFile = serde_json::from_str(text)?;
    Ok(file.validate()?)
}

pub fn read_system(path: &Path) -> Result<ColoringSystem, FormatError> {
    parse_system(&read_to_string(path)?)
}

pub fn parse_sequence(text: &str) -> Result<ColorSequence, FormatError> {
    Ok(serde_json::from_str(text)?)
}

pub fn sequence_to_json(seq: &ColorSequence) -> String {
    let mut s = serde_json::to_string(seq).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn parse_triangle(text: &str) -> Result<TriangleColoring, FormatError> {
    let file: TriangleFile = serde_json::from_str(text)?;
    Ok(TriangleColoring::from_file(file)?)
}

pub fn triangle_to_json(tri: &TriangleColoring) -> String {
    let mut s = serde_json::to_string(&tri.to_file()).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn parse_witness(text: &str) -> Result<PeriodicWitness, FormatError> {
    match serde_json::from_str::<Verdict>(text)? {
        Verdict::HasColoring(w) => Ok(w),
        Verdict::Bounded { .. } => Err(FormatError::NotAWitness("bounded")),
        Verdict::Unknown { .. } => Err(FormatError::NotAWitness("unknown")),
    }
}

/// Any of the coloring file forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColoringFile {
    Sequence(ColorSequence),
    Triangle(TriangleColoring),
    Witness(PeriodicWitness),
}

/// Detects the form: a JSON array is a sequence, a JSON object with
/// `"verdict"` a witness and any other object a triangle; anything else is
/// read as a text staircase.
pub fn parse_coloring(text: &str) -> Result<ColoringFile, FormatError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        return parse_sequence(text).map(ColoringFile::Sequence);
    }
    if trimmed.starts_with('{') {
        let value: serde_json::Value = serde_json::from_str(text)?;
        if value.get("verdict").is_some() {
            return parse_witness(text).map(ColoringFile::Witness);
        }
        return parse_triangle(text).map(ColoringFile::Triangle);
    }
    Ok(ColoringFile::Triangle(render::parse_text(text)?))
}

pub fn read_coloring(path: &Path) -> Result<ColoringFile, FormatError> {
    parse_coloring(&read_to_string(path)?)
}
