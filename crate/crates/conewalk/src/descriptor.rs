//! The JSON lattice-descriptor file format.
//!
//! ```json
//! {
//!   "gram": [[0, 1, 1], [1, -2, 0], [1, 0, -2]],
//!   "labels": ["f", "s1", "s2"],
//!   "marking": [3, 1, 1],
//!   "canonical": [0, 0, 0]
//! }
//! ```
//!
//! Integers are emitted as JSON numbers while they fit in 2^53 exactly and as
//! decimal strings beyond that, so no consumer silently loses precision;
//! both forms are accepted on input.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use conewalk_core::enumeration::MarkedLattice;
use conewalk_core::lattice::{LatticeSpace, LatticeVector};
use conewalk_core::surfaces::SurfaceModel;

#[derive(Debug, thiserror::Error)]
pub enum DescriptorError {
    #[error("descriptor is not valid JSON")]
    Json(#[from] serde_json::Error),
    #[error("descriptor must be a JSON object")]
    NotAnObject,
    #[error("descriptor is missing the \"gram\" field")]
    MissingGram,
    #[error("{context}: expected an integer (number or decimal string), got {got}")]
    NotAnInteger { context: String, got: String },
    #[error("{context}: expected an array")]
    NotAnArray { context: String },
    #[error("\"labels\" must be an array of strings")]
    BadLabels,
    #[error("lattice invariant violated")]
    Lattice(#[from] conewalk_core::lattice::LatticeError),
    #[error("marking invariant violated")]
    Marking(#[from] conewalk_core::enumeration::EnumerationError),
    #[error("descriptor has no \"marking\" but this command needs one")]
    MarkingRequired,
    #[error("descriptor has no \"canonical\" class but this command needs one")]
    CanonicalRequired,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeDescriptor {
    pub gram: Vec<Vec<BigInt>>,
    pub labels: Option<Vec<String>>,
    pub marking: Option<Vec<BigInt>>,
    pub canonical: Option<Vec<BigInt>>,
}

impl LatticeDescriptor {
    pub fn from_json(text: &str) -> Result<Self, DescriptorError> {
        let value: Value = serde_json::from_str(text)?;
        let obj = value.as_object().ok_or(DescriptorError::NotAnObject)?;
        let gram_value = obj.get("gram").ok_or(DescriptorError::MissingGram)?;
        let gram_rows = as_array(gram_value, "gram")?;
        let mut gram = Vec::with_capacity(gram_rows.len());
        for (i, row) in gram_rows.iter().enumerate() {
            let cells = as_array(row, &format!("gram[{i}]"))?;
            let mut parsed = Vec::with_capacity(cells.len());
            for (j, cell) in cells.iter().enumerate() {
                parsed.push(parse_int(cell, &format!("gram[{i}][{j}]"))?);
            }
            gram.push(parsed);
        }
        let labels = match obj.get("labels") {
            None | Some(Value::Null) => None,
            Some(Value::Array(items)) => {
                let mut out = Vec::with_capacity(items.len());
                for item in items {
                    out.push(
                        item.as_str()
                            .ok_or(DescriptorError::BadLabels)?
                            .to_string(),
                    );
                }
                Some(out)
            }
            Some(_) => return Err(DescriptorError::BadLabels),
        };
        let marking = parse_optional_vector(obj, "marking")?;
        let canonical = parse_optional_vector(obj, "canonical")?;
        Ok(LatticeDescriptor {
            gram,
            labels,
            marking,
            canonical,
        })
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert(
            "gram".to_string(),
            Value::Array(
                self.gram
                    .iter()
                    .map(|row| Value::Array(row.iter().map(int_to_json).collect()))
                    .collect(),
            ),
        );
        if let Some(labels) = &self.labels {
            obj.insert("labels".to_string(), json!(labels));
        }
        if let Some(marking) = &self.marking {
            obj.insert(
                "marking".to_string(),
                Value::Array(marking.iter().map(int_to_json).collect()),
            );
        }
        if let Some(canonical) = &self.canonical {
            obj.insert(
                "canonical".to_string(),
                Value::Array(canonical.iter().map(int_to_json).collect()),
            );
        }
        Value::Object(obj)
    }

    pub fn from_model(model: &SurfaceModel) -> Self {
        let space = model.lattice.space();
        let n = space.rank();
        let gram = (0..n)
            .map(|i| (0..n).map(|j| space.gram().at(i, j).clone()).collect())
            .collect();
        LatticeDescriptor {
            gram,
            labels: space.labels().map(|l| l.to_vec()),
            marking: Some(model.lattice.marking().coords().to_vec()),
            canonical: Some(model.canonical_class.coords().to_vec()),
        }
    }

    pub fn space(&self) -> Result<LatticeSpace, DescriptorError> {
        let space = LatticeSpace::new(self.gram.clone())?;
        match &self.labels {
            Some(labels) => Ok(space.with_labels(labels.clone())?),
            None => Ok(space),
        }
    }

    pub fn marked(&self) -> Result<MarkedLattice, DescriptorError> {
        let marking = self
            .marking
            .as_ref()
            .ok_or(DescriptorError::MarkingRequired)?;
        let space = self.space()?;
        Ok(MarkedLattice::new(
            space,
            LatticeVector::new(marking.clone()),
        )?)
    }

    pub fn canonical_vector(&self) -> Result<LatticeVector, DescriptorError> {
        self.canonical
            .as_ref()
            .map(|c| LatticeVector::new(c.clone()))
            .ok_or(DescriptorError::CanonicalRequired)
    }
}

fn as_array<'v>(v: &'v Value, context: &str) -> Result<&'v Vec<Value>, DescriptorError> {
    v.as_array().ok_or_else(|| DescriptorError::NotAnArray {
        context: context.to_string(),
    })
}

fn parse_optional_vector(
    obj: &Map<String, Value>,
    key: &str,
) -> Result<Option<Vec<BigInt>>, DescriptorError> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => {
            let items = as_array(v, key)?;
            let mut out = Vec::with_capacity(items.len());
            for (i, item) in items.iter().enumerate() {
                out.push(parse_int(item, &format!("{key}[{i}]"))?);
            }
            Ok(Some(out))
        }
    }
}

/// Accepts JSON integers and decimal strings (for values beyond 2^53).
pub fn parse_int(v: &Value, context: &str) -> Result<BigInt, DescriptorError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                return Ok(BigInt::from(i));
            }
            if let Some(u) = n.as_u64() {
                return Ok(BigInt::from(u));
            }
            Err(DescriptorError::NotAnInteger {
                context: context.to_string(),
                got: n.to_string(),
            })
        }
        Value::String(s) => s.parse::<BigInt>().map_err(|_| DescriptorError::NotAnInteger {
            context: context.to_string(),
            got: format!("\"{s}\""),
        }),
        other => Err(DescriptorError::NotAnInteger {
            context: context.to_string(),
            got: other.to_string(),
        }),
    }
}

/// JSON number when exactly representable in an f64 consumer (|x| <= 2^53),
/// decimal string otherwise.
pub fn int_to_json(v: &BigInt) -> Value {
    const SAFE: i64 = 1 << 53;
    match v.to_i64() {
        Some(i) if (-SAFE..=SAFE).contains(&i) => json!(i),
        _ => json!(v.to_string()),
    }
}
