//! Canonical JSON output. Object keys are emitted in sorted order and
//! scalars as exact `"p/q"` strings, so equal objects serialize to equal
//! bytes and output is stable across runs and platforms.

use serde::Serialize;

use crate::error::{Error, Result};

/// Compact canonical form: sorted keys, no whitespace.
pub fn to_canonical_string<T: Serialize>(value: &T) -> Result<String> {
    // Round-tripping through Value sorts the keys: its object map is
    // ordered by key.
    let v = serde_json::to_value(value).map_err(|e| Error::InvalidInput(e.to_string()))?;
    serde_json::to_string(&v).map_err(|e| Error::InvalidInput(e.to_string()))
}

/// Canonical form with human-friendly indentation. Same key order as the
/// compact form.
pub fn to_canonical_pretty<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::InvalidInput(e.to_string()))?;
    serde_json::to_string_pretty(&v).map_err(|e| Error::InvalidInput(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rat;
    use crate::RatMatrix;

    #[test]
    fn keys_come_out_sorted() {
        #[derive(Serialize)]
        struct Unsorted {
            zeta: u32,
            alpha: u32,
        }
        let s = to_canonical_string(&Unsorted { zeta: 1, alpha: 2 }).unwrap();
        assert_eq!(s, r#"{"alpha":2,"zeta":1}"#);
    }

    #[test]
    fn matrices_serialize_with_exact_entries() {
        let m = RatMatrix::from_fn(1, 2, |_, c| Rat::new(1, (c + 2) as i64));
        let s = to_canonical_string(&m).unwrap();
        assert_eq!(s, r#"{"cols":2,"entries":[["1/2","1/3"]],"rows":1}"#);
        let back: RatMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn pretty_and_compact_agree_on_content() {
        let m = RatMatrix::identity(2);
        let pretty = to_canonical_pretty(&m).unwrap();
        let compact = to_canonical_string(&m).unwrap();
        let a: serde_json::Value = serde_json::from_str(&pretty).unwrap();
        let b: serde_json::Value = serde_json::from_str(&compact).unwrap();
        assert_eq!(a, b);
        assert!(pretty.contains('\n'));
        assert!(!compact.contains('\n'));
    }
}
