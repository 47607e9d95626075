//! JSON interchange for structure constants and sl2-triples.
//!
//! File layout: `{"dim": n, "basis": [names...], "brackets": [{"i", "j",
//! "terms": [{"k", "num", "den"}]}], "triples": {name: {"e": [...], "h":
//! [...], "f": [...]}}}` with 1-based basis indices `i < j`, zero brackets
//! omitted, and rationals as `{"num", "den"}` pairs.

use super::{LieAlgError, LieAlgebraData, Sl2Triple};
use crate::rat::Rat;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: i64,
    pub den: i64,
}

impl RationalJson {
    pub fn to_rat(&self) -> Result<Rat, LieAlgError> {
        if self.den == 0 {
            return Err(LieAlgError::Parse("zero denominator".into()));
        }
        Ok(Rat::new(BigInt::from(self.num), BigInt::from(self.den)))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketTermJson {
    pub k: usize,
    pub num: i64,
    pub den: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<BracketTermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TripleJson {
    pub e: Vec<RationalJson>,
    pub h: Vec<RationalJson>,
    pub f: Vec<RationalJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketJson>,
    #[serde(default)]
    pub triples: BTreeMap<String, TripleJson>,
}

fn vector(raw: &[RationalJson], dim: usize) -> Result<Vec<Rat>, LieAlgError> {
    if raw.len() != dim {
        return Err(LieAlgError::DimensionMismatch { expected: dim, got: raw.len() });
    }
    raw.iter().map(|r| r.to_rat()).collect()
}

pub fn parse_algebra_file(
    text: &str,
) -> Result<(LieAlgebraData, BTreeMap<String, Sl2Triple>), LieAlgError> {
    let file: AlgebraFile =
        serde_json::from_str(text).map_err(|e| LieAlgError::Parse(format!("bad JSON: {e}")))?;
    if file.basis.len() != file.dim {
        return Err(LieAlgError::Parse(format!(
            "dim is {} but {} basis names given",
            file.dim,
            file.basis.len()
        )));
    }
    let mut entries = Vec::new();
    for b in &file.brackets {
        if b.i < 1 || b.j < 1 || b.i > file.dim || b.j > file.dim {
            return Err(LieAlgError::BadBracketIndex { i: b.i, j: b.j });
        }
        let mut terms = Vec::new();
        for t in &b.terms {
            if t.k < 1 || t.k > file.dim {
                return Err(LieAlgError::Parse(format!("bracket term index {} out of range", t.k)));
            }
            terms.push((t.k - 1, RationalJson { num: t.num, den: t.den }.to_rat()?));
        }
        entries.push(((b.i - 1, b.j - 1), terms));
    }
    let alg = LieAlgebraData::new(file.basis, entries)?;
    let mut triples = BTreeMap::new();
    for (name, t) in &file.triples {
        triples.insert(
            name.clone(),
            Sl2Triple {
                e: vector(&t.e, file.dim)?,
                h: vector(&t.h, file.dim)?,
                f: vector(&t.f, file.dim)?,
            },
        );
    }
    Ok((alg, triples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::catalog::catalog;
    use crate::rat::rint;

    #[test]
    fn round_trip_sl2() {
        let text = r#"{
            "dim": 3,
            "basis": ["e", "h", "f"],
            "brackets": [
                {"i": 1, "j": 2, "terms": [{"k": 1, "num": -2, "den": 1}]},
                {"i": 1, "j": 3, "terms": [{"k": 2, "num": 1, "den": 1}]},
                {"i": 2, "j": 3, "terms": [{"k": 3, "num": -2, "den": 1}]}
            ],
            "triples": {
                "principal": {
                    "e": [{"num":1,"den":1},{"num":0,"den":1},{"num":0,"den":1}],
                    "h": [{"num":0,"den":1},{"num":1,"den":1},{"num":0,"den":1}],
                    "f": [{"num":0,"den":1},{"num":0,"den":1},{"num":1,"den":1}]
                }
            }
        }"#;
        let (alg, triples) = parse_algebra_file(text).unwrap();
        assert_eq!(alg, catalog("sl2").unwrap().algebra);
        triples["principal"].validate(&alg).unwrap();
    }

    #[test]
    fn rejects_bad_indices_and_rationals() {
        let bad = r#"{"dim": 2, "basis": ["a","b"],
            "brackets": [{"i": 2, "j": 1, "terms": []}]}"#;
        assert!(parse_algebra_file(bad).is_err());
        let bad_den = r#"{"dim": 1, "basis": ["a"], "brackets": [],
            "triples": {"t": {"e": [{"num":1,"den":0}], "h": [{"num":0,"den":1}], "f": [{"num":0,"den":1}]}}}"#;
        assert!(parse_algebra_file(bad_den).is_err());
        assert_eq!(
            parse_algebra_file(r#"{"dim": 1, "basis": [], "brackets": []}"#).err().map(|e| e.to_string().contains("basis names")),
            Some(true)
        );
    }
}
