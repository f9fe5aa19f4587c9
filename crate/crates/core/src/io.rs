//! JSON file format for cell sets.
//!
//! ```json
//! {"spec": {"free_dims": 0, "half_dims": 2, "p": "inf", "radius": 1},
//!  "cells": [[0,0],[1,0]]}
//! ```
//!
//! Cells are written in colexicographic order.

use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use crate::lattice::{
    parse_decimal, CellSet, GridSpec, LatticeError, NormExponent, Point, Rational,
};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON at line {line}, column {column}: {msg}")]
    Syntax {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("field `{field}`: {msg}")]
    Field { field: String, msg: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    free_dims: usize,
    half_dims: usize,
    p: Value,
    radius: Value,
}

#[derive(Serialize, Deserialize)]
struct CellSetJson {
    spec: SpecJson,
    cells: Vec<Vec<i64>>,
}

fn field_err(field: &str, msg: impl Into<String>) -> FormatError {
    FormatError::Field {
        field: field.to_string(),
        msg: msg.into(),
    }
}

fn rational_from_value(field: &str, v: &Value) -> Result<Rational, FormatError> {
    match v {
        Value::Number(n) => parse_decimal(&n.to_string())
            .ok_or_else(|| field_err(field, format!("cannot represent {n} exactly"))),
        Value::String(s) => {
            if let Some((a, b)) = s.split_once('/') {
                let a: i64 = a
                    .trim()
                    .parse()
                    .map_err(|_| field_err(field, "bad numerator"))?;
                let b: i64 = b
                    .trim()
                    .parse()
                    .map_err(|_| field_err(field, "bad denominator"))?;
                if b == 0 {
                    return Err(field_err(field, "zero denominator"));
                }
                Ok(Rational::new(a, b))
            } else {
                parse_decimal(s).ok_or_else(|| field_err(field, format!("not a number: {s:?}")))
            }
        }
        other => Err(field_err(field, format!("expected a number, got {other}"))),
    }
}

fn rational_to_value(q: Rational) -> Value {
    if q.is_integer() {
        Value::Number(Number::from(q.to_integer()))
    } else {
        let f = *q.numer() as f64 / *q.denom() as f64;
        // Exact only for dyadic-friendly values; otherwise fall back to "a/b".
        match parse_decimal(&f.to_string()) {
            Some(back) if back == q => Number::from_f64(f).map(Value::Number).unwrap(),
            _ => Value::String(format!("{}/{}", q.numer(), q.denom())),
        }
    }
}

pub fn parse_spec_value(v: &Value) -> Result<GridSpec, FormatError> {
    let s: SpecJson =
        serde_json::from_value(v.clone()).map_err(|e| field_err("spec", e.to_string()))?;
    let p = match &s.p {
        Value::String(t) if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") => {
            NormExponent::Infinity
        }
        other => NormExponent::Finite(rational_from_value("spec.p", other)?),
    };
    let radius = rational_from_value("spec.radius", &s.radius)?;
    Ok(GridSpec::new(s.free_dims, s.half_dims, p, radius)?)
}

/// Parses the cell-set JSON format.
pub fn cellset_from_json(text: &str) -> Result<CellSet, FormatError> {
    let raw: Value = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    let obj = raw
        .as_object()
        .ok_or_else(|| field_err("<root>", "expected an object"))?;
    let spec = parse_spec_value(
        obj.get("spec")
            .ok_or_else(|| field_err("spec", "missing"))?,
    )?;
    let cells = obj
        .get("cells")
        .ok_or_else(|| field_err("cells", "missing"))?;
    let cells: Vec<Vec<i64>> =
        serde_json::from_value(cells.clone()).map_err(|e| field_err("cells", e.to_string()))?;
    let mut set = CellSet::empty(spec);
    for (i, c) in cells.into_iter().enumerate() {
        set.insert(Point::new(c))
            .map_err(|e| field_err(&format!("cells[{i}]"), e.to_string()))?;
    }
    Ok(set)
}

/// Serializes a cell set; cells come out colexicographically sorted.
pub fn cellset_to_json(set: &CellSet) -> Result<String, FormatError> {
    let spec = set.spec();
    let (p, radius) = match (spec.norm(), spec.radius()) {
        (Some(p), Some(r)) => (p, r),
        _ => return Err(field_err("spec", "custom stencils have no JSON form")),
    };
    let doc = CellSetJson {
        spec: SpecJson {
            free_dims: spec.free_dims(),
            half_dims: spec.half_dims(),
            p: match p {
                NormExponent::Infinity => Value::String("inf".into()),
                NormExponent::Finite(q) => rational_to_value(q),
            },
            radius: rational_to_value(radius),
        },
        cells: set.iter().map(|c| c.coords().to_vec()).collect(),
    };
    Ok(serde_json::to_string(&doc).expect("plain data serializes"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_king_quadrant_file() {
        let text = r#"{"spec":{"free_dims":0,"half_dims":2,"p":"inf","radius":1},
                       "cells":[[1,1],[0,0],[1,0],[0,1],[0,0]]}"#;
        let set = cellset_from_json(text).unwrap();
        assert!(set.spec().is_king_quadrant());
        assert_eq!(set.len(), 4);
    }

    #[test]
    fn output_is_colex_sorted() {
        let set = CellSet::quadrant([(1, 1), (5, 0), (0, 1), (0, 0)]).unwrap();
        let out = cellset_to_json(&set).unwrap();
        assert_eq!(
            out,
            r#"{"spec":{"free_dims":0,"half_dims":2,"p":"inf","radius":1},"cells":[[0,0],[5,0],[0,1],[1,1]]}"#
        );
        assert_eq!(cellset_from_json(&out).unwrap(), set);
    }

    #[test]
    fn rational_exponents_round_trip() {
        let text =
            r#"{"spec":{"free_dims":1,"half_dims":1,"p":1.5,"radius":"5/3"},"cells":[[-2,0]]}"#;
        let set = cellset_from_json(text).unwrap();
        assert_eq!(
            set.spec().norm(),
            Some(NormExponent::Finite(Rational::new(3, 2)))
        );
        assert_eq!(set.spec().radius(), Some(Rational::new(5, 3)));
        let again = cellset_from_json(&cellset_to_json(&set).unwrap()).unwrap();
        assert_eq!(again, set);
    }

    #[test]
    fn errors_name_the_field() {
        let err = cellset_from_json(
            r#"{"spec":{"free_dims":0,"half_dims":2,"p":"inf","radius":1},"cells":[[0,-1]]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("cells[0]"), "{err}");
        let err = cellset_from_json("{\"spec\": ").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 1, .. }), "{err}");
        let err = cellset_from_json(r#"{"cells":[]}"#).unwrap_err();
        assert!(err.to_string().contains("spec"));
    }
}
