//! Exact sparse multivariate polynomials over the rationals, with the
//! graded-degree bookkeeping driven by a polarization: every variable v
//! carries degree wt(v) + 2, so a monomial's graded degree is
//! Σ exp_v (wt(v) + 2).

use crate::liealg::{AffineSign, Polarization};
use crate::rat::{rat_from_str, rat_to_string, Rat};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    MixedAmbient { left: usize, right: usize },
    ZeroPolynomial,
    NotInQ(String),
    NotHomogeneous,
    Parse(String),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::MixedAmbient { left, right } => {
                write!(f, "polynomials live over different ambient bases ({left} vs {right} variables)")
            }
            PolyError::ZeroPolynomial => write!(f, "the zero polynomial has no degree"),
            PolyError::NotInQ(name) => write!(f, "polynomial is not in S(q): variable {name} appears"),
            PolyError::NotHomogeneous => write!(f, "polynomial is not homogeneous"),
            PolyError::Parse(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for PolyError {}

/// Exponent vector; zero exponents are stored densely but compare cheaply
/// at the dimensions used here.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn constant(n_vars: usize) -> Self {
        Monomial(vec![0; n_vars])
    }

    pub fn var(n_vars: usize, v: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[v] = 1;
        Monomial(e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn kazhdan_degree(&self, pol: &Polarization) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(v, &e)| e as i64 * pol.kazhdan_weight(v))
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub n_vars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(n_vars: usize) -> Self {
        Poly { n_vars, terms: BTreeMap::new() }
    }

    pub fn constant(n_vars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(n_vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::constant(n_vars), c);
        }
        p
    }

    pub fn one(n_vars: usize) -> Self {
        Poly::constant(n_vars, Rat::one())
    }

    pub fn var(n_vars: usize, v: usize) -> Self {
        let mut p = Poly::zero(n_vars);
        p.terms.insert(Monomial::var(n_vars, v), Rat::one());
        p
    }

    pub fn from_terms(n_vars: usize, terms: Vec<(Monomial, Rat)>) -> Self {
        let mut p = Poly::zero(n_vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    fn check_ambient(&self, other: &Poly) -> Result<(), PolyError> {
        if self.n_vars != other.n_vars {
            return Err(PolyError::MixedAmbient { left: self.n_vars, right: other.n_vars });
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n_vars);
        }
        Poly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ambient(other)?;
        let mut out = Poly::zero(self.n_vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.n_vars);
        for _ in 0..k {
            out = out.mul(self).expect("same ambient");
        }
        out
    }

    /// Formal partial derivative with respect to variable v.
    pub fn partial(&self, v: usize) -> Poly {
        let mut out = Poly::zero(self.n_vars);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[v] = e - 1;
            out.add_term(Monomial(exps), c * crate::rat::rint(e as i64));
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Max graded degree over the monomials; errors on the zero polynomial.
    pub fn kazhdan_degree(&self, pol: &Polarization) -> Result<i64, PolyError> {
        self.terms
            .keys()
            .map(|m| m.kazhdan_degree(pol))
            .max()
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn is_kazhdan_homogeneous(&self, pol: &Polarization) -> bool {
        let mut degs = self.terms.keys().map(|m| m.kazhdan_degree(pol));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Split into graded-homogeneous parts; parts sum back to the input.
    pub fn kazhdan_split(&self, pol: &Polarization) -> BTreeMap<i64, Poly> {
        let mut out: BTreeMap<i64, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = m.kazhdan_degree(pol);
            out.entry(d)
                .or_insert_with(|| Poly::zero(self.n_vars))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// True when only q-variables appear.
    pub fn in_q(&self, pol: &Polarization) -> bool {
        self.terms
            .keys()
            .all(|m| m.0.iter().enumerate().all(|(v, &e)| e == 0 || !pol.is_m_var(v)))
    }

    /// Substitute every m-variable by its affine value sign(chi(m_i)),
    /// landing in S(q).
    pub fn restrict_to_affine(&self, pol: &Polarization, sign: AffineSign) -> Poly {
        let mut out = Poly::zero(self.n_vars);
        'terms: for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.0.clone();
            for v in 0..self.n_vars {
                if exps[v] > 0 && pol.is_m_var(v) {
                    let value = sign.apply(&pol.chi[v]);
                    if value.is_zero() {
                        continue 'terms;
                    }
                    for _ in 0..exps[v] {
                        coeff *= &value;
                    }
                    exps[v] = 0;
                }
            }
            out.add_term(Monomial(exps), coeff);
        }
        out
    }

    /// Substitute each variable by the given polynomial.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly, PolyError> {
        assert_eq!(images.len(), self.n_vars);
        let out_vars = images.first().map_or(self.n_vars, |p| p.n_vars);
        let mut out = Poly::zero(out_vars);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(out_vars, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[v].pow(e))?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Text form `coef * name^k * ...` with `+` separators, highest
    /// monomial first.
    pub fn to_text(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut factors = vec![rat_to_string(c)];
            for (v, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    factors.push(names[v].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", names[v], e));
                }
            }
            parts.push(factors.join(" * "));
        }
        parts.join(" + ")
    }

    /// Machine-readable term list; coefficients as arbitrary-precision
    /// num/den strings.
    pub fn to_term_list(&self, names: &[String]) -> Vec<TermJson> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| TermJson {
                num: c.numer().to_string(),
                den: c.denom().to_string(),
                powers: m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(v, &e)| (names[v].clone(), e))
                    .collect(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub num: String,
    pub den: String,
    pub powers: Vec<(String, u32)>,
}

/// Parse the text form. Each `+`/`-`-separated term is a `*`-separated
/// product of rationals and `name[^k]` factors; names resolve through the
/// supplied lookup.
pub fn parse_poly(
    text: &str,
    n_vars: usize,
    resolve: impl Fn(&str) -> Option<usize>,
) -> Result<Poly, PolyError> {
    let mut out = Poly::zero(n_vars);
    let text = text.trim();
    if text.is_empty() || text == "0" {
        return Ok(out);
    }
    // split into signed terms at top level
    let mut terms: Vec<(i32, String)> = Vec::new();
    let mut current = String::new();
    let mut sign = 1;
    let mut last_was_op = true;
    for ch in text.chars() {
        match ch {
            '+' | '-' if !last_was_op => {
                terms.push((sign, current.trim().to_string()));
                current = String::new();
                sign = if ch == '-' { -1 } else { 1 };
                last_was_op = true;
            }
            '-' if last_was_op => {
                sign = -sign;
                last_was_op = true;
            }
            '+' if last_was_op => last_was_op = true,
            c if c.is_whitespace() => current.push(c),
            c => {
                current.push(c);
                last_was_op = false;
            }
        }
    }
    if !current.trim().is_empty() {
        terms.push((sign, current.trim().to_string()));
    }
    for (sgn, term) in terms {
        if term.is_empty() {
            return Err(PolyError::Parse("empty term".into()));
        }
        let mut coeff = if sgn < 0 { -Rat::one() } else { Rat::one() };
        let mut mono = Monomial::constant(n_vars);
        for factor in term.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(PolyError::Parse(format!("empty factor in `{term}`")));
            }
            if factor.chars().next().unwrap().is_ascii_digit() {
                let r = rat_from_str(factor)
                    .ok_or_else(|| PolyError::Parse(format!("bad rational `{factor}`")))?;
                coeff *= r;
            } else {
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => {
                        let e: u32 = e
                            .trim()
                            .parse()
                            .map_err(|_| PolyError::Parse(format!("bad exponent in `{factor}`")))?;
                        (n.trim(), e)
                    }
                    None => (factor, 1),
                };
                let v = resolve(name)
                    .ok_or_else(|| PolyError::Parse(format!("unknown variable `{name}`")))?;
                mono.0[v] += exp;
            }
        }
        out.add_term(mono, coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::catalog::catalog;
    use crate::rat::{rfrac, rint};

    fn sl2_pol() -> Polarization {
        let entry = catalog("sl2").unwrap();
        Polarization::build(&entry.algebra, &entry.triples["principal"]).unwrap()
    }

    /// sl2 polarized variables: 0 = y2 (= f), 1 = x1 (= e), 2 = x2 (= h/2).
    #[test]
    fn ring_ops() {
        let e = Poly::var(3, 1);
        let h2 = Poly::var(3, 2);
        let sum = e.add(&h2).unwrap();
        let diff = e.sub(&h2).unwrap();
        let prod = sum.mul(&diff).unwrap();
        let expect = e.mul(&e).unwrap().sub(&h2.mul(&h2).unwrap()).unwrap();
        assert_eq!(prod, expect);
        assert_eq!(prod.mul(&Poly::one(3)).unwrap(), prod);
        assert!(e.add(&Poly::var(4, 0)).is_err());
    }

    #[test]
    fn partial_derivative() {
        // d/de (e^2 h) = 2 e h in the polarized coordinates
        let e = Poly::var(3, 1);
        let h = Poly::var(3, 2);
        let p = e.pow(2).mul(&h).unwrap();
        let expect = e.mul(&h).unwrap().scale(&rint(2));
        assert_eq!(p.partial(1), expect);
        assert!(e.partial(0).is_zero());
    }

    #[test]
    fn kazhdan_degrees_sl2() {
        let pol = sl2_pol();
        let e = Poly::var(3, 1);
        let h2 = Poly::var(3, 2);
        assert_eq!(e.kazhdan_degree(&pol).unwrap(), 4);
        assert_eq!(h2.kazhdan_degree(&pol).unwrap(), 2);
        let p = h2.pow(2);
        assert_eq!(p.partial(2).kazhdan_degree(&pol).unwrap(), 4 - 2);
        assert!(Poly::zero(3).kazhdan_degree(&pol).is_err());
    }

    #[test]
    fn z_variable_has_degree_one() {
        let entry = catalog("sl3").unwrap();
        let pol = Polarization::build(&entry.algebra, &entry.triples["minimal"]).unwrap();
        let z_q = pol.n_y + pol.s; // z_{1+s}
        assert_eq!(pol.kazhdan_weight(z_q), 1);
        assert_eq!(Poly::var(8, z_q).kazhdan_degree(&pol).unwrap(), 1);
    }

    #[test]
    fn split_and_homogeneity() {
        let pol = sl2_pol();
        let e = Poly::var(3, 1);
        let h2 = Poly::var(3, 2);
        let p = e.add(&h2).unwrap();
        let split = p.kazhdan_split(&pol);
        assert_eq!(split.len(), 2);
        assert_eq!(split[&4], e);
        assert_eq!(split[&2], h2);
        let mut back = Poly::zero(3);
        for part in split.values() {
            assert!(part.is_kazhdan_homogeneous(&pol));
            back = back.add(part).unwrap();
        }
        assert_eq!(back, p);
        assert!(Poly::zero(3).kazhdan_split(&pol).is_empty());
    }

    #[test]
    fn degree_additivity_on_products() {
        let pol = sl2_pol();
        let p = Poly::var(3, 1).pow(2); // deg 8
        let q = Poly::var(3, 2).pow(3); // deg 6
        let pq = p.mul(&q).unwrap();
        assert_eq!(
            pq.kazhdan_degree(&pol).unwrap(),
            p.kazhdan_degree(&pol).unwrap() + q.kazhdan_degree(&pol).unwrap()
        );
    }

    #[test]
    fn affine_restriction_sl2() {
        let pol = sl2_pol();
        let f = Poly::var(3, 0);
        let e = Poly::var(3, 1);
        // chi(f) = 1, so f evaluates to -1
        assert_eq!(f.restrict_to_affine(&pol, AffineSign::MinusChi), Poly::constant(3, rint(-1)));
        let ef = e.mul(&f).unwrap();
        assert_eq!(ef.restrict_to_affine(&pol, AffineSign::MinusChi), e.scale(&rint(-1)));
        // S(q) elements are untouched
        assert_eq!(e.restrict_to_affine(&pol, AffineSign::MinusChi), e);
        // flipped convention
        assert_eq!(f.restrict_to_affine(&pol, AffineSign::PlusChi), Poly::constant(3, rint(1)));
    }

    #[test]
    fn restriction_is_a_ring_morphism() {
        let pol = sl2_pol();
        let p = Poly::var(3, 0).add(&Poly::var(3, 1)).unwrap();
        let q = Poly::var(3, 2).add(&Poly::constant(3, rfrac(1, 2))).unwrap();
        let lhs = p.mul(&q).unwrap().restrict_to_affine(&pol, AffineSign::MinusChi);
        let rhs = p
            .restrict_to_affine(&pol, AffineSign::MinusChi)
            .mul(&q.restrict_to_affine(&pol, AffineSign::MinusChi))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn text_round_trip() {
        let names: Vec<String> = ["y2", "x1", "x2"].iter().map(|s| s.to_string()).collect();
        let p = Poly::from_terms(
            3,
            vec![
                (Monomial(vec![0, 1, 0]), rint(1)),
                (Monomial(vec![0, 0, 2]), rfrac(-1, 4)),
            ],
        );
        let text = p.to_text(&names);
        let back = parse_poly(&text, 3, |n| names.iter().position(|x| x == n)).unwrap();
        assert_eq!(back, p);
        let parsed = parse_poly("x1 - 1/4 * x2^2", 3, |n| names.iter().position(|x| x == n)).unwrap();
        assert_eq!(parsed, p);
        assert!(parse_poly("q9", 3, |n| names.iter().position(|x| x == n)).is_err());
    }
}
