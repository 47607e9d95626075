//! Weight-space frame attached to a nilpotent element completed to an
//! sl2-triple: the grading g = ⊕ g(i), the subalgebra m = l ⊕ Σ_{i≤-2} g(i)
//! with its character chi, the complement q, a Witt basis of g(-1), and the
//! dual bases pairing ([y_i, x_j], e) = δ_ij.
//!
//! The polarized variable order is the y-block, then the z-block, then the
//! x-block. Construction is deterministic: the Lagrangian in g(-1) comes
//! from greedy symplectic Gram-Schmidt in declared basis order, the y's are
//! the declared basis vectors of weight ≤ -2, and x_{r+1}..x_m solve the
//! duality equations with free coordinates pinned to zero.

use super::{pair, LieAlgError, LieAlgebraData, Sl2Triple};
use crate::linalg::Mat;
use crate::rat::{rint, Rat};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Block {
    Y,
    Z,
    X,
}

/// Sign convention for evaluating m-variables on the affine subspace:
/// `MinusChi` substitutes m_i -> -chi(m_i) (the default), `PlusChi` flips it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum AffineSign {
    #[default]
    MinusChi,
    PlusChi,
}

impl AffineSign {
    pub fn apply(&self, chi_value: &Rat) -> Rat {
        match self {
            AffineSign::MinusChi => -chi_value.clone(),
            AffineSign::PlusChi => chi_value.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolarizedVar {
    pub name: String,
    /// Coefficients over the original algebra basis.
    pub vector: Vec<Rat>,
    pub weight: i64,
    pub block: Block,
    /// Position within its block, 0-based.
    pub block_index: usize,
}

#[derive(Debug, Clone)]
pub struct Polarization {
    pub algebra: LieAlgebraData,
    pub triple: Sl2Triple,
    /// ad-h weight of each original basis vector.
    pub weight_of_basis: Vec<i64>,
    /// weight -> original basis indices.
    pub grading: BTreeMap<i64, Vec<usize>>,
    /// Invariant form Gram matrix with (e, f) = 1.
    pub form: Mat,
    /// Polarized variables: y-block, z-block, x-block.
    pub vars: Vec<PolarizedVar>,
    pub n_y: usize,
    /// Number of Witt pairs; the z-block has 2s entries.
    pub s: usize,
    pub n_x: usize,
    /// dim ker(ad e); x_1..x_r span the centralizer of e.
    pub r: usize,
    /// chi(v) = (e, v) for every polarized variable.
    pub chi: Vec<Rat>,
    /// Polarized indices of the m-basis (y's, then z_1..z_s).
    pub m_vars: Vec<usize>,
    /// Polarized indices of the q-basis (z_{s+1}..z_{2s}, then x's).
    pub q_vars: Vec<usize>,
    /// Columns are the polarized vectors over the original basis.
    pub basis_matrix: Mat,
    pub basis_matrix_inv: Mat,
    /// bracket_table[a][b] = [v_a, v_b] expanded over polarized variables.
    bracket_table: Vec<Vec<Vec<(usize, Rat)>>>,
}

impl Polarization {
    pub fn dim(&self) -> usize {
        self.algebra.dim
    }

    pub fn kazhdan_weight(&self, var: usize) -> i64 {
        self.vars[var].weight + 2
    }

    pub fn is_m_var(&self, var: usize) -> bool {
        match self.vars[var].block {
            Block::Y => true,
            Block::Z => self.vars[var].block_index < self.s,
            Block::X => false,
        }
    }

    /// [v_a, v_b] over the polarized variables.
    pub fn bracket_vars(&self, a: usize, b: usize) -> &[(usize, Rat)] {
        &self.bracket_table[a][b]
    }

    pub fn var_named(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    /// Express an original-basis coefficient vector over the polarized basis.
    pub fn to_polarized_coords(&self, v: &[Rat]) -> Vec<Rat> {
        self.basis_matrix_inv.mul_vec(v)
    }

    pub fn build(algebra: &LieAlgebraData, triple: &Sl2Triple) -> Result<Self, LieAlgError> {
        triple.validate(algebra)?;
        let dim = algebra.dim;
        let ad_h = algebra.ad_matrix(&triple.h)?;

        // weights: the declared basis must already be an ad-h eigenbasis
        let mut weight_of_basis = Vec::with_capacity(dim);
        for b in 0..dim {
            let col: Vec<Rat> = (0..dim).map(|i| ad_h.get(i, b).clone()).collect();
            let lambda = col[b].clone();
            for (i, v) in col.iter().enumerate() {
                let expected = if i == b { lambda.clone() } else { Rat::zero() };
                if *v != expected {
                    return Err(LieAlgError::NotAnEigenvector { basis_index: b });
                }
            }
            if !lambda.is_integer() {
                return Err(LieAlgError::NonIntegerWeight { basis_index: b });
            }
            let w: i64 = lambda
                .to_integer()
                .try_into()
                .map_err(|_| LieAlgError::NonIntegerWeight { basis_index: b })?;
            weight_of_basis.push(w);
        }
        let mut grading: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (b, w) in weight_of_basis.iter().enumerate() {
            grading.entry(*w).or_default().push(b);
        }

        let form = algebra.invariant_form(&triple.e, &triple.f)?;
        let chi_of = |v: &[Rat]| pair(&form, &triple.e, v);

        // Witt basis of g(-1) by symplectic Gram-Schmidt on chi([.,.])
        let minus_one: Vec<Vec<Rat>> = grading
            .get(&-1)
            .map(|idxs| idxs.iter().map(|&b| unit(dim, b)).collect())
            .unwrap_or_default();
        if minus_one.len() % 2 != 0 {
            return Err(LieAlgError::DegenerateSymplecticForm);
        }
        let om = |u: &[Rat], w: &[Rat]| -> Result<Rat, LieAlgError> {
            Ok(chi_of(&algebra.bracket(u, w)?))
        };
        let mut remaining = minus_one;
        let mut z_l: Vec<Vec<Rat>> = Vec::new();
        let mut z_q: Vec<Vec<Rat>> = Vec::new();
        while !remaining.is_empty() {
            let u = remaining.remove(0);
            let pos = remaining
                .iter()
                .position(|w| !om(&u, w).unwrap().is_zero())
                .ok_or(LieAlgError::DegenerateSymplecticForm)?;
            let w0 = remaining.remove(pos);
            let scale = Rat::one() / om(&u, &w0)?;
            let w: Vec<Rat> = w0.iter().map(|c| c * &scale).collect();
            for v in remaining.iter_mut() {
                let a = om(v, &w)?;
                let b = om(&u, v)?;
                for i in 0..dim {
                    v[i] = v[i].clone() - &a * &u[i] - &b * &w[i];
                }
            }
            z_l.push(u);
            z_q.push(w);
        }
        let s = z_l.len();
        // literal Witt relations, not just their chi-components
        for i in 0..s {
            for j in 0..s {
                let ll = algebra.bracket(&z_l[i], &z_l[j])?;
                if ll.iter().any(|v| !v.is_zero()) {
                    return Err(LieAlgError::WittRelationFails(format!("[z_{}, z_{}] != 0", i + 1, j + 1)));
                }
                let qq = algebra.bracket(&z_q[i], &z_q[j])?;
                if qq.iter().any(|v| !v.is_zero()) {
                    return Err(LieAlgError::WittRelationFails(format!(
                        "[z_{}, z_{}] != 0",
                        i + 1 + s,
                        j + 1 + s
                    )));
                }
                let lq = algebra.bracket(&z_l[i], &z_q[j])?;
                let expect: Vec<Rat> = if i == j {
                    triple.f.clone()
                } else {
                    vec![Rat::zero(); dim]
                };
                if lq != expect {
                    return Err(LieAlgError::WittRelationFails(format!(
                        "[z_{}, z_{}] != {} f",
                        i + 1,
                        j + 1 + s,
                        if i == j { "" } else { "0 " }
                    )));
                }
            }
        }

        // x_1..x_r: weight-graded kernel of ad e
        let ad_e = algebra.ad_matrix(&triple.e)?;
        let mut ker_x: Vec<(i64, Vec<Rat>)> = Vec::new();
        for (&w, idxs) in grading.iter() {
            if w < 0 {
                continue;
            }
            let target = grading.get(&(w + 2)).cloned().unwrap_or_default();
            let mut restricted = Mat::zeros(target.len().max(1), idxs.len());
            for (cj, &b) in idxs.iter().enumerate() {
                for (ri, &t) in target.iter().enumerate() {
                    restricted.set(ri, cj, ad_e.get(t, b).clone());
                }
            }
            for null in restricted.nullspace() {
                let mut full = vec![Rat::zero(); dim];
                for (cj, &b) in idxs.iter().enumerate() {
                    full[b] = null[cj].clone();
                }
                ker_x.push((w, full));
            }
        }
        ker_x.sort_by_key(|(w, _)| *w);
        let r = ker_x.len();

        // y's: declared basis vectors of weight <= -2, in basis order
        let y_indices: Vec<usize> = (0..dim).filter(|&b| weight_of_basis[b] <= -2).collect();
        let y_vecs: Vec<Vec<Rat>> = y_indices.iter().map(|&b| unit(dim, b)).collect();

        // x_{r+1}..x_m dual to the y's: ([y_i, x_j], e) = δ_ij, solved per
        // weight block with free coordinates set to zero
        let mut dual_x: Vec<Vec<Rat>> = Vec::with_capacity(y_vecs.len());
        let mut by_weight: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (yi, &b) in y_indices.iter().enumerate() {
            by_weight.entry(weight_of_basis[b]).or_default().push(yi);
        }
        let mut dual_slots: Vec<Option<Vec<Rat>>> = vec![None; y_vecs.len()];
        for (&w, members) in by_weight.iter() {
            let xw = -w - 2;
            let cols = grading.get(&xw).cloned().unwrap_or_default();
            let mut pairing = Mat::zeros(members.len(), cols.len());
            for (ri, &yi) in members.iter().enumerate() {
                for (cj, &b) in cols.iter().enumerate() {
                    let br = algebra.bracket(&y_vecs[yi], &unit(dim, b))?;
                    pairing.set(ri, cj, chi_of(&br));
                }
            }
            for (ri, &yi) in members.iter().enumerate() {
                let mut rhs = vec![Rat::zero(); members.len()];
                rhs[ri] = Rat::one();
                let sol = pairing.solve(&rhs).ok_or_else(|| {
                    LieAlgError::DualBasisFailure(format!("no dual vector at weight {xw}"))
                })?;
                let mut full = vec![Rat::zero(); dim];
                for (cj, &b) in cols.iter().enumerate() {
                    full[b] = sol[cj].clone();
                }
                dual_slots[yi] = Some(full);
            }
        }
        for slot in dual_slots {
            dual_x.push(slot.expect("every y gets a dual"));
        }
        let m_total = r + dual_x.len();

        // assemble the polarized variable list
        let mut vars: Vec<PolarizedVar> = Vec::with_capacity(dim);
        for (k, (&b, vec)) in y_indices.iter().zip(&y_vecs).enumerate() {
            vars.push(PolarizedVar {
                name: format!("y{}", r + 1 + k),
                vector: vec.clone(),
                weight: weight_of_basis[b],
                block: Block::Y,
                block_index: k,
            });
        }
        for (k, vec) in z_l.iter().chain(z_q.iter()).enumerate() {
            vars.push(PolarizedVar {
                name: format!("z{}", k + 1),
                vector: vec.clone(),
                weight: -1,
                block: Block::Z,
                block_index: k,
            });
        }
        for (k, (w, vec)) in ker_x.iter().enumerate() {
            vars.push(PolarizedVar {
                name: format!("x{}", k + 1),
                vector: vec.clone(),
                weight: *w,
                block: Block::X,
                block_index: k,
            });
        }
        for (k, vec) in dual_x.iter().enumerate() {
            let w = weight_vector(&weight_of_basis, vec)
                .ok_or_else(|| LieAlgError::DualBasisFailure("dual not weight-homogeneous".into()))?;
            vars.push(PolarizedVar {
                name: format!("x{}", r + 1 + k),
                vector: vec.clone(),
                weight: w,
                block: Block::X,
                block_index: r + k,
            });
        }
        if vars.len() != dim {
            return Err(LieAlgError::DualBasisFailure(format!(
                "polarized frame has {} vectors, expected {}",
                vars.len(),
                dim
            )));
        }

        let mut basis_matrix = Mat::zeros(dim, dim);
        for (k, v) in vars.iter().enumerate() {
            for i in 0..dim {
                basis_matrix.set(i, k, v.vector[i].clone());
            }
        }
        let basis_matrix_inv = basis_matrix
            .inverse()
            .ok_or_else(|| LieAlgError::DualBasisFailure("polarized frame is not a basis".into()))?;

        let chi: Vec<Rat> = vars.iter().map(|v| chi_of(&v.vector)).collect();
        let n_y = y_indices.len();
        let n_x = m_total;
        let m_vars: Vec<usize> = (0..n_y).chain(n_y..n_y + s).collect();
        let q_vars: Vec<usize> = (n_y + s..n_y + 2 * s).chain(n_y + 2 * s..dim).collect();

        let mut bracket_table = vec![vec![Vec::new(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let br = algebra.bracket(&vars[a].vector, &vars[b].vector)?;
                let coords = basis_matrix_inv.mul_vec(&br);
                bracket_table[a][b] = coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
            }
        }

        let pol = Polarization {
            algebra: algebra.clone(),
            triple: triple.clone(),
            weight_of_basis,
            grading,
            form,
            vars,
            n_y,
            s,
            n_x,
            r,
            chi,
            m_vars,
            q_vars,
            basis_matrix,
            basis_matrix_inv,
            bracket_table,
        };
        pol.validate()?;
        Ok(pol)
    }

    fn validate(&self) -> Result<(), LieAlgError> {
        let dim = self.dim();
        // grading is symmetric and exhaustive
        let total: usize = self.grading.values().map(|v| v.len()).sum();
        if total != dim {
            return Err(LieAlgError::DualBasisFailure("grading does not exhaust g".into()));
        }
        for (&w, idxs) in self.grading.iter() {
            let mirror = self.grading.get(&-w).map_or(0, |v| v.len());
            if idxs.len() != mirror {
                return Err(LieAlgError::DualBasisFailure(format!(
                    "dim g({w}) != dim g({})",
                    -w
                )));
            }
        }
        // duality pairing on the non-kernel block
        for i in 0..self.n_y {
            for j in self.r..self.n_x {
                let y = &self.vars[i];
                let x = &self.vars[self.n_y + 2 * self.s + j];
                let br = self.algebra.bracket(&y.vector, &x.vector)?;
                let v = pair(&self.form, &self.triple.e, &br);
                let expect = if j == self.r + i { Rat::one() } else { Rat::zero() };
                if v != expect {
                    return Err(LieAlgError::DualBasisFailure(format!(
                        "([{}, {}], e) = {} != {}",
                        y.name,
                        x.name,
                        v,
                        expect
                    )));
                }
            }
        }
        // chi vanishes on [m, m]
        for &a in &self.m_vars {
            for &b in &self.m_vars {
                let br = self.algebra.bracket(&self.vars[a].vector, &self.vars[b].vector)?;
                if !pair(&self.form, &self.triple.e, &br).is_zero() {
                    return Err(LieAlgError::DualBasisFailure(format!(
                        "chi([{}, {}]) != 0",
                        self.vars[a].name, self.vars[b].name
                    )));
                }
            }
        }
        // m is a subalgebra: [m, m] stays inside the span of the m-block
        for &a in &self.m_vars {
            for &b in &self.m_vars {
                for (k, _) in self.bracket_vars(a, b) {
                    if !self.is_m_var(*k) {
                        return Err(LieAlgError::DualBasisFailure(
                            "[m, m] leaves the m-block".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

fn unit(dim: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); dim];
    v[i] = Rat::one();
    v
}

/// Common ad-h weight of a vector's support, if homogeneous.
fn weight_vector(weights: &[i64], v: &[Rat]) -> Option<i64> {
    let mut found = None;
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        match found {
            None => found = Some(weights[i]),
            Some(w) if w == weights[i] => {}
            _ => return None,
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::catalog::catalog;
    use crate::rat::rfrac;

    fn pol(name: &str, nilpotent: &str) -> Polarization {
        let entry = catalog(name).unwrap();
        Polarization::build(&entry.algebra, &entry.triples[nilpotent]).unwrap()
    }

    #[test]
    fn sl2_principal_frame() {
        let p = pol("sl2", "principal");
        assert_eq!(p.s, 0);
        assert_eq!(p.r, 1);
        assert_eq!(p.m_vars.len(), 1);
        assert_eq!(p.q_vars.len(), 2);
        // m = span{f}, chi(f) = 1
        let y = &p.vars[p.m_vars[0]];
        assert_eq!(y.vector, vec![rint(0), rint(0), rint(1)]);
        assert_eq!(p.chi[p.m_vars[0]], rint(1));
        // x_1 = e, x_2 = h/2
        assert_eq!(p.vars[p.q_vars[0]].vector, vec![rint(1), rint(0), rint(0)]);
        assert_eq!(p.vars[p.q_vars[1]].vector, vec![rint(0), rfrac(1, 2), rint(0)]);
    }

    #[test]
    fn sl3_principal_frame() {
        let p = pol("sl3", "principal");
        assert_eq!(p.s, 0);
        assert_eq!(p.m_vars.len(), 3);
        assert_eq!(p.q_vars.len(), 5);
        assert!(p.grading.get(&-1).is_none());
        // weights come in mirrored pairs
        assert_eq!(p.grading[&4].len(), 1);
        assert_eq!(p.grading[&-4].len(), 1);
        assert_eq!(p.grading[&2].len(), 2);
    }

    #[test]
    fn sl3_minimal_frame_has_one_witt_pair() {
        let p = pol("sl3", "minimal");
        assert_eq!(p.s, 1);
        assert_eq!(p.r, 4);
        assert_eq!(p.m_vars.len(), 2);
        // z1 in l ⊂ m, z2 in q, [z1, z2] = f
        let z1 = &p.vars[p.n_y].vector;
        let z2 = &p.vars[p.n_y + 1].vector;
        assert_eq!(p.algebra.bracket(z1, z2).unwrap(), p.triple.f);
    }

    #[test]
    fn weights_are_integers_and_sum_matches() {
        for (name, nil) in [("sl2", "principal"), ("sl3", "principal"), ("sl3", "minimal")] {
            let p = pol(name, nil);
            let total: usize = p.grading.values().map(|v| v.len()).sum();
            assert_eq!(total, p.dim());
        }
    }

    #[test]
    fn trace_ad_vanishes_on_m_basis() {
        for (name, nil) in [("sl2", "principal"), ("sl3", "principal"), ("sl3", "minimal")] {
            let p = pol(name, nil);
            for &mv in &p.m_vars {
                assert_eq!(p.algebra.trace_ad(&p.vars[mv].vector).unwrap(), rint(0));
            }
        }
    }

    #[test]
    fn chi_vanishes_outside_weight_minus_two() {
        for (name, nil) in [("sl3", "principal"), ("sl3", "minimal")] {
            let p = pol(name, nil);
            for (k, v) in p.vars.iter().enumerate() {
                if v.weight != -2 && !p.chi[k].is_zero() {
                    panic!("chi({}) = {} at weight {}", v.name, p.chi[k], v.weight);
                }
            }
        }
    }

    #[test]
    fn rejects_non_eigenbasis_input() {
        // sl2 with basis (e, h, e+f): ad h is not diagonal on it
        let alg = catalog("sl2").unwrap().algebra;
        let triple = Sl2Triple {
            e: vec![rint(1), rint(0), rint(0)],
            h: vec![rint(0), rint(1), rint(0)],
            f: vec![rint(0), rint(0), rint(1)],
        };
        let mut names = alg.basis_names.clone();
        names[2] = "g".into();
        let skew = LieAlgebraData::new(
            names,
            vec![
                // basis (e, h, g=e+f): [e,h]=-2e, [e,g]=[e,f]=h, [h,g]=2e-2f=4e-2g
                ((0, 1), vec![(0, rint(-2))]),
                ((0, 2), vec![(1, rint(1))]),
                ((1, 2), vec![(0, rint(4)), (2, rint(-2))]),
            ],
        )
        .unwrap();
        let t2 = Sl2Triple {
            e: triple.e.clone(),
            h: triple.h.clone(),
            // f = g - e in the new basis
            f: vec![rint(-1), rint(0), rint(1)],
        };
        assert!(matches!(
            Polarization::build(&skew, &t2),
            Err(LieAlgError::NotAnEigenvector { .. })
        ));
    }
}
