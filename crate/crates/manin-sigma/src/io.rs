//! File formats for user-supplied triples and worldsheet fields.
//!
//! Triple files are JSON with 1-based indices and only `i < j` entries
//! (antisymmetry is implied, unlisted entries are zero):
//!
//! ```json
//! { "dim": 2,
//!   "c": [[1, 2, 2, 1.0]],
//!   "f": [[1, 2, 1, 1.0]],
//!   "name": "typeB4" }
//! ```
//!
//! Field files carry the grid and per-site values in row-major site order
//! (site `(i1, i2)` at index `i1 * n2 + i2`):
//!
//! ```json
//! { "grid": { "n1": 2, "n2": 2, "h1": 0.1, "h2": 0.1 },
//!   "X": [[0.0, 1.0], ...],
//!   "A": [[[−1.0, 0.0], [0.0, 0.0]], ...] }
//! ```

use serde::Deserialize;
use std::collections::HashSet;
use std::path::Path;

use crate::error::ParseError;
use crate::lie::{ManinTriple, StructureConstants, MAX_TRIPLE_DIM};
use crate::sigma::{FieldConfig, WorldsheetGrid};

#[derive(Deserialize)]
struct TripleFile {
    dim: usize,
    #[serde(default)]
    c: Vec<(i64, i64, i64, f64)>,
    #[serde(default)]
    f: Vec<(i64, i64, i64, f64)>,
    #[serde(default)]
    name: Option<String>,
}

fn convert_block(
    block: &'static str,
    dim: usize,
    raw: &[(i64, i64, i64, f64)],
) -> Result<StructureConstants, ParseError> {
    let mut seen = HashSet::new();
    let mut entries = Vec::with_capacity(raw.len());
    for (pos, &(i, j, k, v)) in raw.iter().enumerate() {
        let ok = i >= 1
            && j >= 1
            && k >= 1
            && (i as usize) <= dim
            && (j as usize) <= dim
            && (k as usize) <= dim
            && i < j;
        if !ok {
            return Err(ParseError::BadIndices {
                block,
                pos: pos + 1,
                i,
                j,
                k,
                dim,
            });
        }
        if !v.is_finite() {
            return Err(ParseError::NonFiniteValue {
                block,
                pos: pos + 1,
            });
        }
        let (iu, ju, ku) = (i as usize, j as usize, k as usize);
        if !seen.insert((iu, ju, ku)) {
            return Err(ParseError::DuplicateEntry {
                block,
                pos: pos + 1,
                i: iu,
                j: ju,
                k: ku,
            });
        }
        entries.push((iu - 1, ju - 1, ku - 1, v));
    }
    StructureConstants::from_entries(dim, &entries).map_err(|_| ParseError::BadDimension {
        dim,
        max: MAX_TRIPLE_DIM,
    })
}

/// Parse a triple from JSON text.
pub fn parse_triple(text: &str) -> Result<ManinTriple, ParseError> {
    let file: TripleFile = serde_json::from_str(text)?;
    if file.dim == 0 || file.dim > MAX_TRIPLE_DIM {
        return Err(ParseError::BadDimension {
            dim: file.dim,
            max: MAX_TRIPLE_DIM,
        });
    }
    let c = convert_block("c", file.dim, &file.c)?;
    let f = convert_block("f", file.dim, &file.f)?;
    ManinTriple::new(c, f, file.name).map_err(|_| ParseError::BadDimension {
        dim: file.dim,
        max: MAX_TRIPLE_DIM,
    })
}

/// Read and parse a triple file.
pub fn read_triple_file(path: &Path) -> Result<ManinTriple, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_triple(&text)
}

#[derive(Deserialize)]
struct GridFile {
    n1: usize,
    n2: usize,
    h1: f64,
    h2: f64,
}

#[derive(Deserialize)]
struct FieldFile {
    grid: GridFile,
    #[serde(rename = "X")]
    x: Vec<Vec<f64>>,
    #[serde(rename = "A")]
    a: Vec<Vec<[f64; 2]>>,
}

/// Parse a field configuration from JSON text.
pub fn parse_fields(text: &str) -> Result<(WorldsheetGrid, FieldConfig), ParseError> {
    let file: FieldFile = serde_json::from_str(text)?;
    let grid = WorldsheetGrid::new(file.grid.n1, file.grid.n2, file.grid.h1, file.grid.h2)
        .map_err(|e| ParseError::BadGrid {
            what: e.to_string(),
        })?;
    let sites = grid.sites();
    if file.x.len() != sites {
        return Err(ParseError::BadShape {
            what: "X (site count)",
            expected: sites,
            got: file.x.len(),
        });
    }
    if file.a.len() != sites {
        return Err(ParseError::BadShape {
            what: "A (site count)",
            expected: sites,
            got: file.a.len(),
        });
    }
    let dim = file.x.first().map(|row| row.len()).unwrap_or(0);
    if dim == 0 || dim > MAX_TRIPLE_DIM {
        return Err(ParseError::BadShape {
            what: "X (components per site)",
            expected: 1,
            got: dim,
        });
    }
    let mut x = Vec::with_capacity(sites * dim);
    for (pos, row) in file.x.iter().enumerate() {
        if row.len() != dim {
            return Err(ParseError::BadShape {
                what: "X row",
                expected: dim,
                got: row.len(),
            });
        }
        let _ = pos;
        x.extend_from_slice(row);
    }
    let mut a = Vec::with_capacity(sites * dim * 2);
    for row in &file.a {
        if row.len() != dim {
            return Err(ParseError::BadShape {
                what: "A row",
                expected: dim,
                got: row.len(),
            });
        }
        for pair in row {
            a.extend_from_slice(pair);
        }
    }
    let fields = FieldConfig::new(&grid, dim, x, a).map_err(|e| ParseError::BadGrid {
        what: e.to_string(),
    })?;
    Ok((grid, fields))
}

/// Read and parse a field file.
pub fn read_fields_file(path: &Path) -> Result<(WorldsheetGrid, FieldConfig), ParseError> {
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_fields(&text)
}

/// Serialize fields into the file format, for harnesses that generate
/// configurations.
pub fn fields_to_json(grid: &WorldsheetGrid, fields: &FieldConfig) -> String {
    let n = fields.dim();
    let x: Vec<Vec<f64>> = (0..grid.sites())
        .map(|s| (0..n).map(|i| fields.x(s, i)).collect())
        .collect();
    let a: Vec<Vec<[f64; 2]>> = (0..grid.sites())
        .map(|s| {
            (0..n)
                .map(|i| [fields.a(s, i, 0), fields.a(s, i, 1)])
                .collect()
        })
        .collect();
    serde_json::json!({
        "grid": { "n1": grid.n1, "n2": grid.n2, "h1": grid.h1, "h2": grid.h2 },
        "X": x,
        "A": a,
    })
    .to_string()
}
