//! JSON module files and command reports.
//!
//! A module file looks like
//!
//! ```json
//! {
//!   "field_char": 5,
//!   "poset": { "chain": { "length": 3 } },
//!   "dims": { "0": 1, "1": 2, "2": 1 },
//!   "maps": { "0->1": [[1], [0]], "1->2": [[0, 1]] }
//! }
//! ```
//!
//! Other posets: `{"grid": {"m": 3, "n": 2}}`,
//! `{"triangle": {"m": 4, "n": 4, "cutoff": 2}}`,
//! `{"zigzag": {"start": [0, 2], "steps": "RDRD", "window": [[0, 2], [0, 2]]}}`
//! (window as `[[x0, x1], [y0, y1]]`), `{"opposite": {...}}` and
//! `{"custom": {"size": 3, "covers": [[0, 2], [1, 2]]}}`.
//!
//! Matrices are row-major with `dims[dst]` rows and `dims[src]` columns.
//! Entries may be any integers and are reduced mod `p`. Elements missing
//! from `dims` have dimension 0; a map may be omitted only when it is empty.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::decomp::{Certificate, Decomposition};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::module::PersistenceModule;
use crate::poset::{FinitePoset, ShapeDescriptor};
use crate::structure::{Barcode, BlockList, SquareReport};

/// Environment variable overriding the default characteristic.
pub const FIELD_ENV: &str = "PMD_FIELD_CHAR";

/// `PMD_FIELD_CHAR` if set, else the default field.
pub fn field_from_env() -> Result<Field> {
    match std::env::var(FIELD_ENV) {
        Ok(v) => {
            let p: u32 = v
                .trim()
                .parse()
                .map_err(|_| Error::parse(FIELD_ENV, format!("{v:?} is not an integer")))?;
            Field::new(p).map_err(|e| Error::parse(FIELD_ENV, e.to_string()))
        }
        Err(_) => Ok(Field::default()),
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field_char: Option<u64>,
    poset: ShapeDescriptor,
    #[serde(default)]
    dims: BTreeMap<String, usize>,
    #[serde(default)]
    maps: serde_json::Map<String, Value>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
}

fn parse_matrix(key: &str, value: &Value, field: Field, rows: usize, cols: usize) -> Result<Matrix> {
    let location = format!("maps.{key:?}");
    let bad = |msg: String| Error::parse(location.clone(), msg);
    let Value::Array(rs) = value else { return Err(bad("expected an array of rows".into())) };
    if rs.len() != rows {
        return Err(bad(format!("expected {rows} rows, found {}", rs.len())));
    }
    let mut m = Matrix::zeros(field, rows, cols);
    for (r, row) in rs.iter().enumerate() {
        let Value::Array(entries) = row else { return Err(bad(format!("row {r} is not an array"))) };
        if entries.len() != cols {
            return Err(bad(format!("row {r} has {} entries, expected {cols}", entries.len())));
        }
        for (c, v) in entries.iter().enumerate() {
            let x = v.as_i64().ok_or_else(|| bad(format!("entry ({r}, {c}) is not an integer")))?;
            m.set(r, c, field.reduce(x));
        }
    }
    Ok(m)
}

/// Parse and validate a module file.
pub fn parse_module(text: &str) -> Result<PersistenceModule> {
    let file: ModuleFile = serde_json::from_str(text).map_err(json_error)?;
    let field = match file.field_char {
        Some(p) => u32::try_from(p)
            .map_err(|_| Error::NotPrime(p))
            .and_then(Field::new)
            .map_err(|e| Error::parse("field_char", e.to_string()))?,
        None => field_from_env()?,
    };
    let poset = Arc::new(FinitePoset::build(&file.poset).map_err(|e| Error::parse("poset", e.to_string()))?);
    let mut dims = vec![0usize; poset.len()];
    for (k, &d) in &file.dims {
        let x: usize = k
            .parse()
            .ok()
            .filter(|&x| x < poset.len())
            .ok_or_else(|| Error::parse(format!("dims.{k:?}"), format!("not an element id below {}", poset.len())))?;
        dims[x] = d;
    }
    let mut maps: Vec<Option<Matrix>> = vec![None; poset.covers().len()];
    for (key, value) in &file.maps {
        let cover = key
            .split_once("->")
            .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
            .and_then(|(a, b)| poset.cover_index(a, b).map(|c| (a, b, c)));
        let Some((a, b, c)) = cover else {
            return Err(Error::parse(format!("maps.{key:?}"), "not a cover relation of the poset"));
        };
        maps[c] = Some(parse_matrix(key, value, field, dims[b], dims[a])?);
    }
    let maps = poset
        .covers()
        .iter()
        .zip(maps)
        .map(|(&(a, b), m)| match m {
            Some(m) => Ok(m),
            None if dims[a] == 0 || dims[b] == 0 => Ok(Matrix::zeros(field, dims[b], dims[a])),
            None => Err(Error::parse(format!("maps.\"{a}->{b}\""), "missing map between nonzero spaces")),
        })
        .collect::<Result<Vec<_>>>()?;
    PersistenceModule::new(poset, field, dims, maps)
}

/// Serialize a module; [`parse_module`] gives it back entry for entry.
pub fn serialize_module(m: &PersistenceModule) -> String {
    let dims = m.poset().elements().map(|x| (x.to_string(), m.dim(x))).collect();
    let maps = m
        .poset()
        .covers()
        .iter()
        .enumerate()
        .map(|(c, &(a, b))| {
            let mat = m.cover_map(c);
            let rows: Vec<Value> = (0..mat.rows()).map(|r| Value::from(mat.row(r).to_vec())).collect();
            (format!("{a}->{b}"), Value::Array(rows))
        })
        .collect();
    let file = ModuleFile {
        field_char: Some(m.field().p() as u64),
        poset: m.poset().descriptor(),
        dims,
        maps,
    };
    let mut s = serde_json::to_string_pretty(&file).expect("module files serialize");
    s.push('\n');
    s
}

pub fn read_module(path: &std::path::Path) -> Result<PersistenceModule> {
    let text = std::fs::read_to_string(path)?;
    parse_module(&text)
}

pub fn write_module(path: &std::path::Path, m: &PersistenceModule) -> Result<()> {
    std::fs::write(path, serialize_module(m))?;
    Ok(())
}

/// One summand in a decomposition report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandReport {
    pub support: Vec<usize>,
    pub dims: Vec<usize>,
    pub certificate: Certificate,
}

impl SummandReport {
    pub fn all(d: &Decomposition) -> Vec<SummandReport> {
        d.summands
            .iter()
            .map(|s| SummandReport { support: s.support(), dims: s.module.dims().to_vec(), certificate: s.certificate })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Payload {
    Validation { elements: usize, total_dim: usize },
    Decomposition { summands: Vec<SummandReport> },
    Barcode { barcode: Barcode },
    Blocks { blocks: BlockList },
    MiddleExact { middle_exact: bool, short_exact: bool, failing: Vec<SquareReport> },
    None,
}

/// Machine-readable record of one command run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub command: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub result: Payload,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl ReportFile {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }
}
