//! Corpus ingestion and the portable on-disk formats.
//!
//! The canonical annotation format is newline-delimited JSON, one image per
//! line. Dataset-specific converters (ICDAR quad lines, 14-point polygon
//! lines) normalize into it. Raster stacks travel in the binary `EDGT`
//! tensor format (see [`tensor`]), and detection overlays render to SVG
//! (see [`svg`]).

pub mod svg;
pub mod tensor;

use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, Write as _};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::encoder::CurveBoxLabel;
use crate::error::{Error, Result};
use crate::geometry::{Point2, TextPolygon};

/// Rounds to 9 significant digits; applied to every float that enters JSON so
/// serialized corpora stay diff-able and round-trip within test tolerances.
pub fn round_sig9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.8e}").parse().expect("formatted float parses")
}

/// One annotated text instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TextAnnotation {
    pub polygon: TextPolygon,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transcription: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub ignore: bool,
}

/// All annotations of one image.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnotationRecord {
    pub image_id: String,
    /// (height, width) in pixels.
    pub size: (u32, u32),
    pub texts: Vec<TextAnnotation>,
}

impl AnnotationRecord {
    /// Clamps every polygon point into the declared image bounds, preserving
    /// point counts and ordering.
    pub fn clip_to_bounds(&mut self) {
        let (h, w) = self.size;
        for text in &mut self.texts {
            let clipped: Vec<Point2> = text
                .polygon
                .points()
                .iter()
                .map(|p| {
                    Point2::new(p.x.clamp(0.0, w as f64), p.y.clamp(0.0, h as f64))
                })
                .collect();
            if let Ok(poly) = TextPolygon::new(clipped) {
                text.polygon = poly;
            }
        }
    }
}

/// Encoded labels of one image.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelRecord {
    pub image_id: String,
    pub size: (u32, u32),
    pub labels: Vec<CurveBoxLabel>,
}

/// Detected or reconstructed polygons of one image.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonRecord {
    pub image_id: String,
    pub polygons: Vec<TextPolygon>,
}

/// Supported annotation input formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnnotationFormat {
    /// Newline-delimited JSON, one [`AnnotationRecord`] per line.
    CanonicalJson,
    /// One image per file; lines `x1,y1,…,x4,y4,transcription`, where the
    /// transcription `###` marks an ignored instance.
    IcdarQuad,
    /// One image per file; lines of exactly 28 comma-separated integers
    /// (14 polygon points).
    Poly14,
}

impl FromStr for AnnotationFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "canonical-json" => Ok(Self::CanonicalJson),
            "icdar-quad" => Ok(Self::IcdarQuad),
            "poly14" => Ok(Self::Poly14),
            other => Err(Error::InvalidConfig(format!(
                "unknown annotation format {other:?} (expected canonical-json, icdar-quad, or poly14)"
            ))),
        }
    }
}

impl fmt::Display for AnnotationFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::CanonicalJson => "canonical-json",
            Self::IcdarQuad => "icdar-quad",
            Self::Poly14 => "poly14",
        };
        f.write_str(s)
    }
}

/// Parses an annotation file in the declared format. Malformed lines report
/// their 1-based line number; an empty file yields an empty corpus.
pub fn parse_annotations(path: &Path, format: AnnotationFormat) -> Result<Vec<AnnotationRecord>> {
    let file = fs::File::open(path)?;
    let reader = BufReader::new(file);
    match format {
        AnnotationFormat::CanonicalJson => parse_canonical(reader),
        AnnotationFormat::IcdarQuad => {
            let texts = parse_delimited_lines(reader, parse_icdar_line)?;
            Ok(single_record(path, texts))
        }
        AnnotationFormat::Poly14 => {
            let texts = parse_delimited_lines(reader, parse_poly14_line)?;
            Ok(single_record(path, texts))
        }
    }
}

fn parse_canonical(reader: impl BufRead) -> Result<Vec<AnnotationRecord>> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut record: AnnotationRecord =
            serde_json::from_str(&line).map_err(|e| Error::Parse {
                line: idx + 1,
                message: e.to_string(),
            })?;
        record.clip_to_bounds();
        out.push(record);
    }
    Ok(out)
}

fn parse_delimited_lines(
    reader: impl BufRead,
    parse_line: fn(&str) -> Result<TextAnnotation, String>,
) -> Result<Vec<TextAnnotation>> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let text = parse_line(line.trim_start_matches('\u{feff}').trim()).map_err(|message| {
            Error::Parse {
                line: idx + 1,
                message,
            }
        })?;
        out.push(text);
    }
    Ok(out)
}

/// Wraps per-line instances of a single-image dataset file into one record.
/// These formats carry no image dimensions, so a best-effort size is taken
/// from the annotation extent.
fn single_record(path: &Path, texts: Vec<TextAnnotation>) -> Vec<AnnotationRecord> {
    let image_id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "image".to_string());
    let (mut h, mut w) = (0u32, 0u32);
    for t in &texts {
        let (_, max) = t.polygon.bounding_box();
        h = h.max(max.y.ceil() as u32 + 1);
        w = w.max(max.x.ceil() as u32 + 1);
    }
    vec![AnnotationRecord {
        image_id,
        size: (h, w),
        texts,
    }]
}

fn parse_icdar_line(line: &str) -> Result<TextAnnotation, String> {
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() < 9 {
        return Err(format!(
            "expected 8 coordinates and a transcription, got {} fields",
            fields.len()
        ));
    }
    let coords: Vec<f64> = fields[..8]
        .iter()
        .map(|f| {
            f.trim()
                .parse::<f64>()
                .map_err(|_| format!("invalid coordinate {f:?}"))
        })
        .collect::<Result<_, String>>()?;
    // Transcriptions may themselves contain commas.
    let transcription = fields[8..].join(",");
    let ignore = transcription == "###";
    let points: Vec<Point2> = coords
        .chunks_exact(2)
        .map(|c| Point2::new(c[0], c[1]))
        .collect();
    let polygon = TextPolygon::new(points).map_err(|e| e.to_string())?;
    Ok(TextAnnotation {
        polygon,
        transcription: (!ignore && !transcription.is_empty()).then_some(transcription),
        ignore,
    })
}

fn parse_poly14_line(line: &str) -> Result<TextAnnotation, String> {
    let values: Vec<f64> = line
        .split(',')
        .map(|f| {
            f.trim()
                .parse::<f64>()
                .map_err(|_| format!("invalid integer {f:?}"))
        })
        .collect::<Result<_, String>>()?;
    if values.len() != 28 {
        return Err(format!("expected 28 values (14 points), got {}", values.len()));
    }
    let points: Vec<Point2> = values
        .chunks_exact(2)
        .map(|c| Point2::new(c[0], c[1]))
        .collect();
    let polygon = TextPolygon::new(points).map_err(|e| e.to_string())?;
    Ok(TextAnnotation {
        polygon,
        transcription: None,
        ignore: false,
    })
}

/// Serializes one value per line as NDJSON.
pub fn to_ndjson<T: Serialize>(items: &[T]) -> Result<String> {
    let mut out = String::new();
    for item in items {
        out.push_str(
            &serde_json::to_string(item)
                .map_err(|e| Error::InvalidConfig(format!("serialization failed: {e}")))?,
        );
        out.push('\n');
    }
    Ok(out)
}

/// Parses NDJSON produced by [`to_ndjson`].
pub fn from_ndjson<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(line).map_err(|e| Error::Parse {
            line: idx + 1,
            message: e.to_string(),
        })?);
    }
    Ok(out)
}

/// Whole-file atomic write: the content lands in a sibling temp file first
/// and is renamed into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension(format!(
        "{}.tmp",
        path.extension()
            .map(|e| e.to_string_lossy().into_owned())
            .unwrap_or_default()
    ));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Reads NDJSON records of any serde-decodable record type from a file.
pub fn read_ndjson_file<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>> {
    let text = fs::read_to_string(path)?;
    from_ndjson(&text)
}

/// Writes records as NDJSON atomically.
pub fn write_ndjson_file<T: Serialize>(path: &Path, items: &[T]) -> Result<()> {
    write_atomic(path, to_ndjson(items)?.as_bytes())
}
