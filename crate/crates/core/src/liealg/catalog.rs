//! Built-in algebras with named sl2-triples. The bases below are ad-h
//! eigenbases for every named triple, which is what the polarization
//! builder requires.

use super::{LieAlgError, LieAlgebraData, Sl2Triple};
use crate::rat::{rfrac, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;

pub struct CatalogEntry {
    pub algebra: LieAlgebraData,
    pub triples: BTreeMap<String, Sl2Triple>,
}

pub fn catalog_names() -> &'static [&'static str] {
    &["sl2", "sl3"]
}

pub fn catalog(name: &str) -> Result<CatalogEntry, LieAlgError> {
    match name {
        "sl2" => Ok(sl2()),
        "sl3" => Ok(sl3()),
        other => Err(LieAlgError::UnknownCatalogName(other.to_string())),
    }
}

fn vector(dim: usize, entries: &[(usize, i64)]) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); dim];
    for (i, n) in entries {
        v[*i] = rfrac(*n, 1);
    }
    v
}

fn sl2() -> CatalogEntry {
    // basis (e, h, f): [e,h] = -2e, [e,f] = h, [h,f] = -2f
    let algebra = LieAlgebraData::new(
        vec!["e".into(), "h".into(), "f".into()],
        vec![
            ((0, 1), vec![(0, rfrac(-2, 1))]),
            ((0, 2), vec![(1, rfrac(1, 1))]),
            ((1, 2), vec![(2, rfrac(-2, 1))]),
        ],
    )
    .expect("sl2 table");
    let principal = Sl2Triple {
        e: vector(3, &[(0, 1)]),
        h: vector(3, &[(1, 1)]),
        f: vector(3, &[(2, 1)]),
    };
    let mut triples = BTreeMap::new();
    triples.insert("principal".to_string(), principal);
    CatalogEntry { algebra, triples }
}

fn sl3() -> CatalogEntry {
    // basis order: e1=E12, e2=E23, e3=E13, h1=E11-E22, h2=E22-E33,
    // f1=E21, f2=E32, f3=E31
    let names = ["e1", "e2", "e3", "h1", "h2", "f1", "f2", "f3"];
    let table: &[(&str, &str, &[(&str, i64, i64)])] = &[
        ("e1", "e2", &[("e3", 1, 1)]),
        ("e1", "h1", &[("e1", -2, 1)]),
        ("e1", "h2", &[("e1", 1, 1)]),
        ("e1", "f1", &[("h1", 1, 1)]),
        ("e1", "f3", &[("f2", -1, 1)]),
        ("e2", "h1", &[("e2", 1, 1)]),
        ("e2", "h2", &[("e2", -2, 1)]),
        ("e2", "f2", &[("h2", 1, 1)]),
        ("e2", "f3", &[("f1", 1, 1)]),
        ("e3", "h1", &[("e3", -1, 1)]),
        ("e3", "h2", &[("e3", -1, 1)]),
        ("e3", "f1", &[("e2", -1, 1)]),
        ("e3", "f2", &[("e1", 1, 1)]),
        ("e3", "f3", &[("h1", 1, 1), ("h2", 1, 1)]),
        ("h1", "f1", &[("f1", -2, 1)]),
        ("h1", "f2", &[("f2", 1, 1)]),
        ("h1", "f3", &[("f3", -1, 1)]),
        ("h2", "f1", &[("f1", 1, 1)]),
        ("h2", "f2", &[("f2", -2, 1)]),
        ("h2", "f3", &[("f3", -1, 1)]),
        ("f1", "f2", &[("f3", -1, 1)]),
    ];
    let idx = |n: &str| names.iter().position(|x| *x == n).unwrap();
    let entries = table
        .iter()
        .map(|(a, b, terms)| {
            (
                (idx(a), idx(b)),
                terms.iter().map(|(k, n, d)| (idx(k), rfrac(*n, *d))).collect(),
            )
        })
        .collect();
    let algebra = LieAlgebraData::new(names.iter().map(|s| s.to_string()).collect(), entries)
        .expect("sl3 table");

    // principal: e = E12+E23, h = diag(2,0,-2), f = 2E21+2E32
    let principal = Sl2Triple {
        e: vector(8, &[(0, 1), (1, 1)]),
        h: vector(8, &[(3, 2), (4, 2)]),
        f: vector(8, &[(5, 2), (6, 2)]),
    };
    // minimal: the highest-root triple e = E13, h = diag(1,0,-1), f = E31
    let minimal = Sl2Triple {
        e: vector(8, &[(2, 1)]),
        h: vector(8, &[(3, 1), (4, 1)]),
        f: vector(8, &[(7, 1)]),
    };
    let mut triples = BTreeMap::new();
    triples.insert("principal".to_string(), principal);
    triples.insert("minimal".to_string(), minimal);
    CatalogEntry { algebra, triples }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_dimensions_and_triples() {
        let sl2 = catalog("sl2").unwrap();
        assert_eq!(sl2.algebra.dim, 3);
        assert_eq!(sl2.algebra.basis_names, vec!["e", "h", "f"]);
        let sl3 = catalog("sl3").unwrap();
        assert_eq!(sl3.algebra.dim, 8);
        for triple in sl3.triples.values() {
            triple.validate(&sl3.algebra).unwrap();
        }
        assert!(matches!(catalog("so5"), Err(LieAlgError::UnknownCatalogName(_))));
    }
}
