//! JSON serialization of coordinate functions.
//!
//! File format (strict: unknown fields, duplicate edges and non-finite
//! values are all rejected):
//!
//! ```json
//! {
//!   "kind": "shear",
//!   "model": "H",
//!   "entries": [
//!     { "edge": ["0/1", "1/0"], "value": 0.25 }
//!   ]
//! }
//! ```

use farey_core::{FareyEdge, Rational};
use serde::{Deserialize, Serialize};

use crate::{CoordError, CoordFn, CoordKind};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoordFile {
    kind: String,
    model: String,
    entries: Vec<CoordEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoordEntry {
    edge: [String; 2],
    value: f64,
}

/// Parses a coordinate function from its JSON representation.
pub fn read_coord_file(json: &str) -> Result<CoordFn<f64>, CoordError> {
    let file: CoordFile = serde_json::from_str(json)?;
    let kind = match file.kind.as_str() {
        "shear" => CoordKind::Shear,
        "diamond" => CoordKind::Diamond,
        other => return Err(CoordError::UnknownKind(other.to_owned())),
    };
    if file.model != "H" {
        return Err(CoordError::UnsupportedModel(file.model));
    }
    let mut entries = Vec::with_capacity(file.entries.len());
    let mut seen = std::collections::BTreeSet::new();
    for item in &file.entries {
        let a: Rational = item.edge[0].parse()?;
        let b: Rational = item.edge[1].parse()?;
        let edge = FareyEdge::new(a, b)?;
        if !seen.insert(edge.clone()) {
            return Err(CoordError::DuplicateEdge(
                edge.a().to_string(),
                edge.b().to_string(),
            ));
        }
        if !item.value.is_finite() {
            return Err(CoordError::NonFiniteValue {
                edge: (item.edge[0].clone(), item.edge[1].clone()),
                value: item.value,
            });
        }
        entries.push((edge, item.value));
    }
    Ok(CoordFn::from_entries(kind, entries))
}

/// Serializes a finite coordinate function as pretty-printed JSON with
/// entries in canonical edge order.
pub fn write_coord_file(f: &CoordFn<f64>) -> Result<String, CoordError> {
    if f.is_lazy() {
        return Err(CoordError::InfiniteSupport);
    }
    let file = CoordFile {
        kind: f.kind().name().to_owned(),
        model: "H".to_owned(),
        entries: f
            .support()
            .map(|(e, v)| CoordEntry {
                edge: [e.a().to_string(), e.b().to_string()],
                value: *v,
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let json = r#"{
            "kind": "diamond",
            "model": "H",
            "entries": [
                { "edge": ["0/1", "1/0"], "value": 1.5 },
                { "edge": ["1/2", "1/1"], "value": -0.25 }
            ]
        }"#;
        let f = read_coord_file(json).unwrap();
        assert_eq!(f.kind(), CoordKind::Diamond);
        assert_eq!(f.support_len(), 2);
        let out = write_coord_file(&f).unwrap();
        let back = read_coord_file(&out).unwrap();
        assert_eq!(back.support_len(), 2);
        for (e, v) in f.support() {
            assert_eq!(back.value(e), *v);
        }
    }

    #[test]
    fn accepts_infinity_alias_and_integer_forms() {
        let json = r#"{"kind":"shear","model":"H","entries":[
            {"edge":["-1/0","-1/1"],"value":2.0}
        ]}"#;
        let f = read_coord_file(json).unwrap();
        let e = FareyEdge::new("-1".parse().unwrap(), Rational::infinity()).unwrap();
        assert_eq!(f.value(&e), 2.0);
    }

    #[test]
    fn rejects_unknown_fields() {
        let json = r#"{"kind":"shear","model":"H","entries":[],"extra":1}"#;
        assert!(matches!(read_coord_file(json), Err(CoordError::Json(_))));
        let json = r#"{"kind":"shear","model":"H","entries":[
            {"edge":["0/1","1/0"],"value":1.0,"note":"x"}
        ]}"#;
        assert!(matches!(read_coord_file(json), Err(CoordError::Json(_))));
    }

    #[test]
    fn rejects_bad_kind_model_duplicates_and_non_edges() {
        let bad_kind = r#"{"kind":"slant","model":"H","entries":[]}"#;
        assert!(matches!(read_coord_file(bad_kind), Err(CoordError::UnknownKind(_))));

        let bad_model = r#"{"kind":"shear","model":"D","entries":[]}"#;
        assert!(matches!(read_coord_file(bad_model), Err(CoordError::UnsupportedModel(_))));

        // Duplicate after canonicalization: same edge listed both ways.
        let dup = r#"{"kind":"shear","model":"H","entries":[
            {"edge":["0/1","1/0"],"value":1.0},
            {"edge":["1/0","0/1"],"value":2.0}
        ]}"#;
        assert!(matches!(read_coord_file(dup), Err(CoordError::DuplicateEdge(_, _))));

        let non_edge = r#"{"kind":"shear","model":"H","entries":[
            {"edge":["0/1","2/3"],"value":1.0}
        ]}"#;
        assert!(matches!(read_coord_file(non_edge), Err(CoordError::Farey(_))));
    }

    #[test]
    fn rejects_non_finite_values() {
        // JSON numbers cannot encode infinity or NaN; overflowing literals
        // are rejected by the parser before the explicit finiteness guard.
        let json = r#"{"kind":"shear","model":"H","entries":[
            {"edge":["0/1","1/0"],"value":1e999}
        ]}"#;
        assert!(read_coord_file(json).is_err());
    }

    #[test]
    fn zero_values_are_dropped_on_read() {
        let json = r#"{"kind":"shear","model":"H","entries":[
            {"edge":["0/1","1/0"],"value":0.0}
        ]}"#;
        let f = read_coord_file(json).unwrap();
        assert_eq!(f.support_len(), 0);
    }
}
