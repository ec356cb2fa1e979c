//! Input files and word arguments: kind detection plus typed parsing.
//!
//! A file's kind is read off its JSON shape: objects are told apart by
//! their distinguishing keys, arrays are braid words (integers) or
//! monodromy tuples (matrices). Kind detection failures and schema
//! mismatches are both syntax-class errors (exit 2).

use std::fs;
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use pervdisk::cube::DoubleCube;
use pervdisk::quiver::PervQuiver;
use pervdisk::sympair::SymDiagram;
use pervdisk::RatMatrix;

/// A standalone arc file. The strand count is not part of the format;
/// commands bind it against the quiver they act on.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcFile {
    pub coords: Vec<i32>,
    pub i: usize,
    pub k: usize,
    #[serde(default)]
    pub detour: Option<usize>,
}

pub enum Payload {
    Quiver(PervQuiver),
    Pair(SymDiagram),
    Cube(DoubleCube),
    Braid(Vec<i32>),
    Arc(ArcFile),
    Matrices(Vec<RatMatrix>),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Quiver(_) => "quiver",
            Payload::Pair(_) => "pair",
            Payload::Cube(_) => "cube",
            Payload::Braid(_) => "braid",
            Payload::Arc(_) => "arc",
            Payload::Matrices(_) => "monodromy tuple",
        }
    }
}

pub fn read_payload(path: &Path) -> Result<Payload, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    payload_from_value(value).map_err(|e| format!("{}: {e}", path.display()))
}

fn payload_from_value(value: Value) -> Result<Payload, String> {
    match &value {
        Value::Array(items) => {
            if items.iter().all(Value::is_i64) {
                let letters = items.iter().map(|v| v.as_i64().unwrap() as i32).collect();
                return Ok(Payload::Braid(letters));
            }
            if !items.is_empty() && items.iter().all(|v| v.get("rows").is_some()) {
                let ms: Vec<RatMatrix> =
                    serde_json::from_value(value).map_err(|e| e.to_string())?;
                return Ok(Payload::Matrices(ms));
            }
            Err("array is neither a braid word nor a list of matrices".into())
        }
        Value::Object(map) => {
            if map.contains_key("psi_dim") {
                return Ok(Payload::Quiver(
                    serde_json::from_value(value).map_err(|e| e.to_string())?,
                ));
            }
            if map.contains_key("e_zero") {
                return Ok(Payload::Pair(
                    serde_json::from_value(value).map_err(|e| e.to_string())?,
                ));
            }
            if map.contains_key("r") && map.contains_key("dims") {
                return Ok(Payload::Cube(
                    serde_json::from_value(value).map_err(|e| e.to_string())?,
                ));
            }
            if map.contains_key("coords") && map.contains_key("i") && map.contains_key("k") {
                return Ok(Payload::Arc(
                    serde_json::from_value(value).map_err(|e| e.to_string())?,
                ));
            }
            Err("object has none of the recognized distinguishing keys \
                 (psi_dim, e_zero, r+dims, coords+i+k)"
                .into())
        }
        _ => Err("top-level JSON must be an object or an array".into()),
    }
}

/// Comma-separated signed generator indices, e.g. `"1,-2,1"`. Empty or
/// all-whitespace means the empty word.
pub fn parse_word_letters(s: &str) -> Result<Vec<i32>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<i32>()
                .map_err(|_| format!("word letter {:?} is not a signed integer", part.trim()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_parsing() {
        assert_eq!(parse_word_letters("").unwrap(), Vec::<i32>::new());
        assert_eq!(parse_word_letters(" 1, -2 ,1").unwrap(), vec![1, -2, 1]);
        assert!(parse_word_letters("1,x").is_err());
    }

    #[test]
    fn arrays_detect_as_words_or_tuples() {
        assert!(matches!(payload_from_value(serde_json::json!([1, -2])), Ok(Payload::Braid(_))));
        assert!(matches!(payload_from_value(serde_json::json!([])), Ok(Payload::Braid(_))));
        let tuple = serde_json::json!([{"rows": 1, "cols": 1, "entries": [["2"]]}]);
        assert!(matches!(payload_from_value(tuple), Ok(Payload::Matrices(_))));
        assert!(payload_from_value(serde_json::json!(["a"])).is_err());
    }

    #[test]
    fn objects_detect_by_keys() {
        let arc = serde_json::json!({"coords": [1], "i": 1, "k": 3, "detour": 2});
        assert!(matches!(payload_from_value(arc), Ok(Payload::Arc(_))));
        assert!(payload_from_value(serde_json::json!({"who": 1})).is_err());
        assert!(payload_from_value(serde_json::json!(17)).is_err());
    }
}
