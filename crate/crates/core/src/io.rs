// Copyright 2026 The ruchan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! JSON file formats.
//!
//! Complex numbers are `[re, im]` pairs and matrices are lists of rows.
//!
//! ```text
//! channel        {"d_in": n, "d_out": n, "kraus": [matrix, ...]}
//!                {"d_in": n, "d_out": n, "choi": matrix}
//! POVM           {"r": n, "vectors": [[[re, im], ...], ...]}
//! decomposition  {"probs": [...], "unitaries": [matrix, ...]}
//! ```
//!
//! Readers also accept any of these nested under a `"channel"` or
//! `"decomposition"` key, so the output of one command can feed another.
//! Output floats are written with 17 significant digits.

use std::io;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;
use serde_json::{json, Value};

use crate::channel::{ChoiOperator, KrausChannel};
use crate::correction::CorrectionReport;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector};
use crate::povm::RankOnePovm;
use crate::ru::{RuDecomposition, SearchReport};
use crate::tolerance::Tolerances;

type MatrixJson = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelJson {
    d_in: usize,
    d_out: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kraus: Option<Vec<MatrixJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    choi: Option<MatrixJson>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PovmJson {
    r: usize,
    vectors: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct DecompositionJson {
    probs: Vec<f64>,
    unitaries: Vec<MatrixJson>,
}

fn matrix_to_json(m: &CMatrix) -> MatrixJson {
    m.row_iter().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect()
}

fn matrix_from_json(rows: &MatrixJson, what: &str) -> Result<CMatrix> {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, Vec::len);
    if n_rows == 0 || n_cols == 0 || rows.iter().any(|r| r.len() != n_cols) {
        return Err(Error::Parse(format!("{what}: matrix must be a non-empty rectangular list of rows")));
    }
    Ok(CMatrix::from_fn(n_rows, n_cols, |i, j| Complex64::new(rows[i][j][0], rows[i][j][1])))
}

fn vector_to_json(v: &CVector) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

/// Returns `value[key]` if present, else `value` itself.
fn unwrap_key(value: Value, key: &str) -> Value {
    match value {
        Value::Object(mut map) if map.contains_key(key) => map.remove(key).unwrap_or(Value::Null),
        other => other,
    }
}

fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Reads a channel given either by Kraus operators or by its Choi matrix
/// (converted to the canonical Kraus form).
pub fn parse_channel(text: &str, tol: &Tolerances) -> Result<KrausChannel> {
    let value = unwrap_key(parse_value(text)?, "channel");
    let file: ChannelJson = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    match (&file.kraus, &file.choi) {
        (Some(ops), None) => {
            let ops = ops
                .iter()
                .enumerate()
                .map(|(j, m)| matrix_from_json(m, &format!("kraus[{j}]")))
                .collect::<Result<Vec<_>>>()?;
            if ops.iter().any(|k| k.shape() != (file.d_out, file.d_in)) {
                return Err(Error::RepresentationInvalid(format!(
                    "Kraus operators must be {}x{}",
                    file.d_out, file.d_in
                )));
            }
            KrausChannel::with_tolerances(ops, tol)
        }
        (None, Some(choi)) => {
            let mat = matrix_from_json(choi, "choi")?;
            ChoiOperator::new(file.d_in, file.d_out, mat, tol)?.canonical_kraus(tol)
        }
        _ => Err(Error::Parse("channel needs exactly one of \"kraus\" or \"choi\"".into())),
    }
}

pub fn channel_to_json(ch: &KrausChannel) -> Value {
    let file = ChannelJson {
        d_in: ch.d_in(),
        d_out: ch.d_out(),
        kraus: Some(ch.ops().iter().map(matrix_to_json).collect()),
        choi: None,
    };
    serde_json::to_value(file).expect("channel serializes")
}

pub fn choi_to_json(choi: &ChoiOperator) -> Value {
    let file =
        ChannelJson { d_in: choi.d_in(), d_out: choi.d_out(), kraus: None, choi: Some(matrix_to_json(choi.matrix())) };
    serde_json::to_value(file).expect("choi serializes")
}

pub fn parse_povm(text: &str) -> Result<RankOnePovm> {
    let value = unwrap_key(parse_value(text)?, "povm");
    let file: PovmJson = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    let vectors = file
        .vectors
        .iter()
        .map(|v| CVector::from_iterator(v.len(), v.iter().map(|z| Complex64::new(z[0], z[1]))))
        .collect();
    RankOnePovm::new(file.r, vectors)
}

pub fn povm_to_json(p: &RankOnePovm) -> Value {
    let file = PovmJson { r: p.dim(), vectors: p.vectors().iter().map(vector_to_json).collect() };
    serde_json::to_value(file).expect("povm serializes")
}

pub fn parse_decomposition(text: &str, tol: &Tolerances) -> Result<RuDecomposition> {
    let value = unwrap_key(parse_value(text)?, "decomposition");
    let file: DecompositionJson = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    let unitaries = file
        .unitaries
        .iter()
        .enumerate()
        .map(|(i, m)| matrix_from_json(m, &format!("unitaries[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    RuDecomposition::new(file.probs, unitaries, tol)
}

pub fn decomposition_to_json(dec: &RuDecomposition) -> Value {
    let file = DecompositionJson {
        probs: dec.probs().to_vec(),
        unitaries: dec.unitaries().iter().map(matrix_to_json).collect(),
    };
    serde_json::to_value(file).expect("decomposition serializes")
}

pub fn search_report_to_json(report: &SearchReport) -> Value {
    json!({
        "status": report.status,
        "rank": report.rank,
        "k_low": report.cardinality_bound_low,
        "k_high": report.cardinality_bound_high,
        "k": report.decomposition.as_ref().map(RuDecomposition::len),
        "decomposition": report.decomposition.as_ref().map(decomposition_to_json),
        "entropy_bits": report.entropy_bits,
        "residual": report.residual,
        "best_objective": report.best_objective,
        "objective_trace": report.objective_trace,
    })
}

pub fn correction_report_to_json(report: &CorrectionReport) -> Value {
    serde_json::to_value(report).expect("report serializes")
}

/// Compact JSON writer that prints every float with 17 significant digits.
struct FixedDigits;

impl Formatter for FixedDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Serializes `value` deterministically (17 significant digits, newline
/// terminated).
pub fn to_json_string(value: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedDigits);
    value.serialize(&mut ser).expect("in-memory serialization");
    buf.push(b'\n');
    String::from_utf8(buf).expect("JSON is UTF-8")
}
