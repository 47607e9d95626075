//! Exact Lie algebra arithmetic over the rationals: structure constants,
//! Jacobi checking, the normalized invariant form, and the weight-space
//! frame (m, q, chi, Witt and dual bases) attached to an sl2-triple.

use crate::linalg::Mat;
use crate::rat::{rint, Rat};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub mod catalog;
pub mod interchange;
pub mod polarization;

pub use polarization::{AffineSign, Block, PolarizedVar, Polarization};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LieAlgError {
    DimensionMismatch { expected: usize, got: usize },
    BadBracketIndex { i: usize, j: usize },
    JacobiFails { triples: Vec<(usize, usize, usize)> },
    NotSl2Triple(String),
    DegenerateKillingForm,
    PairingVanishes,
    NotAnEigenvector { basis_index: usize },
    NonIntegerWeight { basis_index: usize },
    DegenerateSymplecticForm,
    DualBasisFailure(String),
    WittRelationFails(String),
    UnknownCatalogName(String),
    Parse(String),
}

impl fmt::Display for LieAlgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieAlgError::DimensionMismatch { expected, got } => {
                write!(f, "coefficient vector has length {got}, algebra dimension is {expected}")
            }
            LieAlgError::BadBracketIndex { i, j } => {
                write!(f, "bracket entry ({i},{j}) out of range or not i < j")
            }
            LieAlgError::JacobiFails { triples } => {
                write!(f, "Jacobi identity fails on {} basis triple(s), first {:?}", triples.len(), triples[0])
            }
            LieAlgError::NotSl2Triple(msg) => write!(f, "not an sl2-triple: {msg}"),
            LieAlgError::DegenerateKillingForm => write!(f, "Killing form is degenerate (algebra not semisimple)"),
            LieAlgError::PairingVanishes => write!(f, "kappa(e,f) = 0, cannot normalize the invariant form"),
            LieAlgError::NotAnEigenvector { basis_index } => {
                write!(f, "basis vector #{basis_index} is not an ad-h eigenvector; supply an eigenbasis")
            }
            LieAlgError::NonIntegerWeight { basis_index } => {
                write!(f, "basis vector #{basis_index} has a non-integer ad-h eigenvalue")
            }
            LieAlgError::DegenerateSymplecticForm => {
                write!(f, "chi([.,.]) is degenerate on the weight -1 space")
            }
            LieAlgError::DualBasisFailure(msg) => write!(f, "dual basis construction failed: {msg}"),
            LieAlgError::WittRelationFails(msg) => write!(f, "Witt relations fail: {msg}"),
            LieAlgError::UnknownCatalogName(name) => write!(f, "unknown catalog algebra `{name}`"),
            LieAlgError::Parse(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for LieAlgError {}

/// Finite-dimensional Lie algebra given by structure constants over a
/// fixed basis. Only pairs i < j are stored; the rest follows from
/// antisymmetry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieAlgebraData {
    pub dim: usize,
    pub basis_names: Vec<String>,
    brackets: BTreeMap<(usize, usize), Vec<(usize, Rat)>>,
}

impl LieAlgebraData {
    pub fn new(
        basis_names: Vec<String>,
        entries: Vec<((usize, usize), Vec<(usize, Rat)>)>,
    ) -> Result<Self, LieAlgError> {
        let dim = basis_names.len();
        let mut brackets = BTreeMap::new();
        for ((i, j), terms) in entries {
            if i >= j || j >= dim || terms.iter().any(|(k, _)| *k >= dim) {
                return Err(LieAlgError::BadBracketIndex { i, j });
            }
            let terms: Vec<(usize, Rat)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !terms.is_empty() {
                brackets.insert((i, j), terms);
            }
        }
        Ok(LieAlgebraData { dim, basis_names, brackets })
    }

    /// [b_i, b_j] expanded over the basis, any i, j.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<(usize, Rat)> {
        if i == j {
            return Vec::new();
        }
        if i < j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            self.brackets
                .get(&(j, i))
                .map(|terms| terms.iter().map(|(k, c)| (*k, -c.clone())).collect())
                .unwrap_or_default()
        }
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Result<Vec<Rat>, LieAlgError> {
        if x.len() != self.dim {
            return Err(LieAlgError::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        if y.len() != self.dim {
            return Err(LieAlgError::DimensionMismatch { expected: self.dim, got: y.len() });
        }
        let mut out = vec![Rat::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for (k, c) in self.bracket_basis(i, j) {
                    out[k] += xi * yj * c;
                }
            }
        }
        Ok(out)
    }

    /// Matrix of ad(x) on the basis (columns are ad(x) of basis vectors).
    pub fn ad_matrix(&self, x: &[Rat]) -> Result<Mat, LieAlgError> {
        let mut m = Mat::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let mut ej = vec![Rat::zero(); self.dim];
            ej[j] = Rat::one();
            let col = self.bracket(x, &ej)?;
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    /// Trace of ad(x).
    pub fn trace_ad(&self, x: &[Rat]) -> Result<Rat, LieAlgError> {
        Ok(self.ad_matrix(x)?.trace())
    }

    /// Checks [[b_i,b_j],b_k] + [[b_j,b_k],b_i] + [[b_k,b_i],b_j] = 0 for
    /// all i < j < k and reports every failing triple.
    pub fn check_jacobi(&self) -> Result<(), LieAlgError> {
        let mut failing = Vec::new();
        let unit = |i: usize| {
            let mut v = vec![Rat::zero(); self.dim];
            v[i] = Rat::one();
            v
        };
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let (bi, bj, bk) = (unit(i), unit(j), unit(k));
                    let mut acc = self.bracket(&self.bracket(&bi, &bj).unwrap(), &bk).unwrap();
                    let t2 = self.bracket(&self.bracket(&bj, &bk).unwrap(), &bi).unwrap();
                    let t3 = self.bracket(&self.bracket(&bk, &bi).unwrap(), &bj).unwrap();
                    for idx in 0..self.dim {
                        acc[idx] = acc[idx].clone() + &t2[idx] + &t3[idx];
                    }
                    if acc.iter().any(|v| !v.is_zero()) {
                        failing.push((i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        if failing.is_empty() {
            Ok(())
        } else {
            Err(LieAlgError::JacobiFails { triples: failing })
        }
    }

    /// Killing form Gram matrix kappa(b_i, b_j) = Tr(ad b_i ad b_j).
    pub fn killing_form(&self) -> Result<Mat, LieAlgError> {
        let ads: Vec<Mat> = (0..self.dim)
            .map(|i| {
                let mut v = vec![Rat::zero(); self.dim];
                v[i] = Rat::one();
                self.ad_matrix(&v)
            })
            .collect::<Result<_, _>>()?;
        let mut g = Mat::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in i..self.dim {
                let tr = ads[i].mul(&ads[j]).trace();
                g.set(i, j, tr.clone());
                g.set(j, i, tr);
            }
        }
        Ok(g)
    }

    /// Gram matrix of the invariant form scaled so that (e, f) = 1.
    pub fn invariant_form(&self, e: &[Rat], f: &[Rat]) -> Result<Mat, LieAlgError> {
        let kappa = self.killing_form()?;
        if kappa.inverse().is_none() {
            return Err(LieAlgError::DegenerateKillingForm);
        }
        let ef = pair(&kappa, e, f);
        if ef.is_zero() {
            return Err(LieAlgError::PairingVanishes);
        }
        let mut g = Mat::zeros(self.dim, self.dim);
        let inv = Rat::one() / ef;
        for i in 0..self.dim {
            for j in 0..self.dim {
                g.set(i, j, kappa.get(i, j) * &inv);
            }
        }
        Ok(g)
    }

    pub fn name_of(&self, i: usize) -> &str {
        &self.basis_names[i]
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis_names.iter().position(|n| n == name)
    }
}

/// Evaluate a Gram matrix on two coefficient vectors.
pub fn pair(gram: &Mat, x: &[Rat], y: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if !yj.is_zero() {
                acc += xi * yj * gram.get(i, j);
            }
        }
    }
    acc
}

/// An sl2-triple (e, h, f) as coefficient vectors over the basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sl2Triple {
    pub e: Vec<Rat>,
    pub h: Vec<Rat>,
    pub f: Vec<Rat>,
}

impl Sl2Triple {
    /// Exact check of [h,e] = 2e, [h,f] = -2f, [e,f] = h, and nilpotency
    /// of e (ad(e)^dim = 0).
    pub fn validate(&self, alg: &LieAlgebraData) -> Result<(), LieAlgError> {
        let he = alg.bracket(&self.h, &self.e)?;
        let two_e: Vec<Rat> = self.e.iter().map(|v| v * rint(2)).collect();
        if he != two_e {
            return Err(LieAlgError::NotSl2Triple("[h,e] != 2e".into()));
        }
        let hf = alg.bracket(&self.h, &self.f)?;
        let minus_two_f: Vec<Rat> = self.f.iter().map(|v| v * rint(-2)).collect();
        if hf != minus_two_f {
            return Err(LieAlgError::NotSl2Triple("[h,f] != -2f".into()));
        }
        if alg.bracket(&self.e, &self.f)? != self.h {
            return Err(LieAlgError::NotSl2Triple("[e,f] != h".into()));
        }
        let ad_e = alg.ad_matrix(&self.e)?;
        let mut power = ad_e.clone();
        for _ in 1..alg.dim {
            power = power.mul(&ad_e);
        }
        if !power.is_zero() {
            return Err(LieAlgError::NotSl2Triple("e is not nilpotent".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::{catalog, CatalogEntry};
    use super::*;
    use crate::rat::rfrac;

    fn unit(dim: usize, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); dim];
        v[i] = Rat::one();
        v
    }

    #[test]
    fn sl2_bracket_defining_relations() {
        let CatalogEntry { algebra, triples } = catalog("sl2").unwrap();
        let t = &triples["principal"];
        let he = algebra.bracket(&t.h, &t.e).unwrap();
        let two_e: Vec<Rat> = t.e.iter().map(|v| v * rint(2)).collect();
        assert_eq!(he, two_e);
        t.validate(&algebra).unwrap();
    }

    #[test]
    fn bracket_is_antisymmetric_on_random_vectors() {
        let alg = catalog("sl3").unwrap().algebra;
        let x: Vec<Rat> = (0..8).map(|i| rfrac(i as i64 - 3, 2)).collect();
        let xx = alg.bracket(&x, &x).unwrap();
        assert!(xx.iter().all(|v| v.is_zero()));
        let y: Vec<Rat> = (0..8).map(|i| rint((i * i) as i64 % 5 - 2)).collect();
        let xy = alg.bracket(&x, &y).unwrap();
        let yx = alg.bracket(&y, &x).unwrap();
        for i in 0..8 {
            assert_eq!(xy[i], -yx[i].clone());
        }
    }

    /// Independent oracle: commutators in the defining 3x3 representation.
    #[test]
    fn sl3_bracket_matches_matrix_commutator() {
        let alg = catalog("sl3").unwrap().algebra;
        // defining representation of the catalog basis, row-major 3x3
        let rep: Vec<[i64; 9]> = vec![
            [0, 1, 0, 0, 0, 0, 0, 0, 0],    // e1 = E12
            [0, 0, 0, 0, 0, 1, 0, 0, 0],    // e2 = E23
            [0, 0, 1, 0, 0, 0, 0, 0, 0],    // e3 = E13
            [1, 0, 0, 0, -1, 0, 0, 0, 0],   // h1
            [0, 0, 0, 0, 1, 0, 0, 0, -1],   // h2
            [0, 0, 0, 1, 0, 0, 0, 0, 0],    // f1 = E21
            [0, 0, 0, 0, 0, 0, 0, 1, 0],    // f2 = E32
            [0, 0, 0, 0, 0, 0, 1, 0, 0],    // f3 = E31
        ];
        let to_mat = |v: &[Rat]| -> Vec<Rat> {
            let mut m = vec![Rat::zero(); 9];
            for (b, coeff) in v.iter().enumerate() {
                for (k, entry) in rep[b].iter().enumerate() {
                    if *entry != 0 {
                        m[k] += coeff * rint(*entry);
                    }
                }
            }
            m
        };
        let mat_mul = |a: &[Rat], b: &[Rat]| -> Vec<Rat> {
            let mut out = vec![Rat::zero(); 9];
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        out[3 * i + j] += &a[3 * i + k] * &b[3 * k + j];
                    }
                }
            }
            out
        };
        let xs = vec![
            (0..8).map(|i| rfrac(2 * i as i64 - 5, 3)).collect::<Vec<_>>(),
            (0..8).map(|i| rint([1, 0, -2, 3, 0, 1, -1, 2][i])).collect::<Vec<_>>(),
        ];
        let ys = vec![
            (0..8).map(|i| rint([0, 2, 1, -1, 1, 0, 3, -2][i])).collect::<Vec<_>>(),
            (0..8).map(|i| rfrac(i as i64 + 1, 2)).collect::<Vec<_>>(),
        ];
        for x in &xs {
            for y in &ys {
                let lhs = to_mat(&alg.bracket(x, y).unwrap());
                let (mx, my) = (to_mat(x), to_mat(y));
                let ab = mat_mul(&mx, &my);
                let ba = mat_mul(&my, &mx);
                let rhs: Vec<Rat> = ab.iter().zip(&ba).map(|(a, b)| a - b).collect();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn jacobi_passes_on_catalog_and_detects_corruption() {
        for name in ["sl2", "sl3"] {
            catalog(name).unwrap().algebra.check_jacobi().unwrap();
        }
        // perturb c_{12}^1 of sl2 by +1: Jacobi must fail on triple (1,2,3)
        let bad = LieAlgebraData::new(
            vec!["e".into(), "h".into(), "f".into()],
            vec![
                ((0, 1), vec![(0, rint(-1))]), // perturbed from -2
                ((0, 2), vec![(1, rint(1))]),
                ((1, 2), vec![(2, rint(-2))]),
            ],
        )
        .unwrap();
        match bad.check_jacobi() {
            Err(LieAlgError::JacobiFails { triples }) => assert_eq!(triples, vec![(1, 2, 3)]),
            other => panic!("expected Jacobi failure, got {other:?}"),
        }
    }

    #[test]
    fn invariant_form_sl2_values() {
        let CatalogEntry { algebra, triples } = catalog("sl2").unwrap();
        let t = &triples["principal"];
        let g = algebra.invariant_form(&t.e, &t.f).unwrap();
        // Killing form of sl2 scaled by 1/kappa(e,f) = 1/4: (h,h) = 8/4 = 2
        assert_eq!(pair(&g, &t.h, &t.h), rint(2));
        assert_eq!(pair(&g, &t.e, &t.e), rint(0));
        assert_eq!(pair(&g, &t.e, &t.f), rint(1));
    }

    #[test]
    fn invariant_form_invariance_residuals_sl3() {
        let CatalogEntry { algebra, triples } = catalog("sl3").unwrap();
        let t = &triples["principal"];
        let g = algebra.invariant_form(&t.e, &t.f).unwrap();
        // (x, [y,z]) = ([x,y], z) on all basis triples
        for i in 0..8 {
            for j in 0..8 {
                for k in 0..8 {
                    let (x, y, z) = (unit(8, i), unit(8, j), unit(8, k));
                    let lhs = pair(&g, &x, &algebra.bracket(&y, &z).unwrap());
                    let rhs = pair(&g, &algebra.bracket(&x, &y).unwrap(), &z);
                    assert_eq!(lhs, rhs, "invariance fails at ({i},{j},{k})");
                }
            }
        }
    }

    #[test]
    fn invariant_form_rejects_degenerate_input() {
        // 2-dimensional non-abelian algebra [a,b] = b is not semisimple
        let alg = LieAlgebraData::new(
            vec!["a".into(), "b".into()],
            vec![((0, 1), vec![(1, rint(1))])],
        )
        .unwrap();
        let e = unit(2, 1);
        let f = unit(2, 0);
        assert!(matches!(
            alg.invariant_form(&e, &f),
            Err(LieAlgError::DegenerateKillingForm)
        ));
    }

    #[test]
    fn trace_ad_examples() {
        let CatalogEntry { algebra, triples } = catalog("sl2").unwrap();
        let t = &triples["principal"];
        assert_eq!(algebra.trace_ad(&t.f).unwrap(), rint(0));
        assert_eq!(algebra.trace_ad(&t.h).unwrap(), rint(0));
    }
}
