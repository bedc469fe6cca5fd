//! TSPLIB files: keyword/value headers followed by NODE_COORD_SECTION or
//! EDGE_WEIGHT_SECTION. EUC_2D distances round to the nearest integer; GEO
//! uses the standard TSPLIB geographical formula; EXPLICIT matrices must be
//! FULL_MATRIX and are read verbatim.

use crate::tsp::{DistanceMatrix, MatrixError};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum TsplibError {
    #[error("unsupported TYPE `{0}`")]
    UnsupportedType(String),
    #[error("unsupported EDGE_WEIGHT_TYPE `{0}`")]
    UnsupportedWeightType(String),
    #[error("unsupported EDGE_WEIGHT_FORMAT `{0}`")]
    UnsupportedWeightFormat(String),
    #[error("missing DIMENSION")]
    MissingDimension,
    #[error("DIMENSION {0} but section holds {1} entries")]
    DimensionMismatch(usize, usize),
    #[error("malformed line `{0}`")]
    Malformed(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

pub fn parse_tsplib(text: &str) -> Result<DistanceMatrix, TsplibError> {
    let mut dimension: Option<usize> = None;
    let mut weight_type = String::from("EUC_2D");
    let mut weight_format = String::from("FULL_MATRIX");
    let mut coords: Vec<(f64, f64)> = Vec::new();
    let mut weights: Vec<u64> = Vec::new();
    let mut section = "";
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line == "EOF" {
            continue;
        }
        if let Some((key, value)) = line.split_once(':') {
            let key = key.trim();
            let value = value.trim();
            section = "";
            match key {
                "TYPE" => {
                    if value != "TSP" {
                        return Err(TsplibError::UnsupportedType(value.to_string()));
                    }
                }
                "DIMENSION" => {
                    dimension = value.parse().ok();
                    if dimension.is_none() {
                        return Err(TsplibError::Malformed(line.to_string()));
                    }
                }
                "EDGE_WEIGHT_TYPE" => weight_type = value.to_string(),
                "EDGE_WEIGHT_FORMAT" => weight_format = value.to_string(),
                _ => {}
            }
            continue;
        }
        match line {
            "NODE_COORD_SECTION" | "EDGE_WEIGHT_SECTION" | "DISPLAY_DATA_SECTION" => {
                section = match line {
                    "NODE_COORD_SECTION" => "coords",
                    "EDGE_WEIGHT_SECTION" => "weights",
                    _ => "ignored",
                };
            }
            _ => match section {
                "coords" => {
                    let fields: Vec<&str> = line.split_whitespace().collect();
                    let parsed = (fields.len() == 3)
                        .then(|| Some((fields[1].parse().ok()?, fields[2].parse().ok()?)))
                        .flatten();
                    match parsed {
                        Some(xy) => coords.push(xy),
                        None => return Err(TsplibError::Malformed(line.to_string())),
                    }
                }
                "weights" => {
                    for field in line.split_whitespace() {
                        match field.parse() {
                            Ok(w) => weights.push(w),
                            Err(_) => return Err(TsplibError::Malformed(line.to_string())),
                        }
                    }
                }
                "ignored" => {}
                _ => return Err(TsplibError::Malformed(line.to_string())),
            },
        }
    }
    let n = dimension.ok_or(TsplibError::MissingDimension)?;
    match weight_type.as_str() {
        "EUC_2D" => {
            if coords.len() != n {
                return Err(TsplibError::DimensionMismatch(n, coords.len()));
            }
            Ok(matrix_from(n, |i, j| euc_2d(coords[i], coords[j]))?)
        }
        "GEO" => {
            if coords.len() != n {
                return Err(TsplibError::DimensionMismatch(n, coords.len()));
            }
            let radians: Vec<(f64, f64)> = coords
                .iter()
                .map(|&(lat, lon)| (geo_radians(lat), geo_radians(lon)))
                .collect();
            Ok(matrix_from(n, |i, j| geo(radians[i], radians[j]))?)
        }
        "EXPLICIT" => {
            if weight_format != "FULL_MATRIX" {
                return Err(TsplibError::UnsupportedWeightFormat(weight_format));
            }
            if weights.len() != n * n {
                return Err(TsplibError::DimensionMismatch(n, weights.len()));
            }
            Ok(DistanceMatrix::new(n, weights)?)
        }
        other => Err(TsplibError::UnsupportedWeightType(other.to_string())),
    }
}

fn matrix_from(
    n: usize,
    d: impl Fn(usize, usize) -> u64,
) -> Result<DistanceMatrix, MatrixError> {
    let mut entries = vec![0u64; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                entries[i * n + j] = d(i, j);
            }
        }
    }
    DistanceMatrix::new(n, entries)
}

fn euc_2d(a: (f64, f64), b: (f64, f64)) -> u64 {
    let (dx, dy) = (a.0 - b.0, a.1 - b.1);
    (dx * dx + dy * dy).sqrt().round() as u64
}

/// Coordinates are DDD.MM (degrees and minutes); the TSPLIB formula uses
/// PI = 3.141592 exactly.
fn geo_radians(coord: f64) -> f64 {
    const PI: f64 = 3.141592;
    let deg = coord.trunc();
    let min = coord - deg;
    PI * (deg + 5.0 * min / 3.0) / 180.0
}

fn geo((lat_i, lon_i): (f64, f64), (lat_j, lon_j): (f64, f64)) -> u64 {
    const RRR: f64 = 6378.388;
    let q1 = (lon_i - lon_j).cos();
    let q2 = (lat_i - lat_j).cos();
    let q3 = (lat_i + lat_j).cos();
    (RRR * (0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)).acos() + 1.0).trunc() as u64
}

pub fn serialise_tsplib(matrix: &DistanceMatrix) -> String {
    let n = matrix.n();
    let mut out = String::new();
    out.push_str("NAME: serialised\n");
    out.push_str("TYPE: TSP\n");
    out.push_str(&format!("DIMENSION: {n}\n"));
    out.push_str("EDGE_WEIGHT_TYPE: EXPLICIT\n");
    out.push_str("EDGE_WEIGHT_FORMAT: FULL_MATRIX\n");
    out.push_str("EDGE_WEIGHT_SECTION\n");
    for i in 0..n as u32 {
        let row: Vec<String> = (0..n as u32).map(|j| matrix.d(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out.push_str("EOF\n");
    out
}
