//! Commutative multivariate polynomials over a field, with parsing from
//! expression strings.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::exactlin::{Echelon, Field, SparseVec};
use crate::expr::{self, ExprRing, ParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable list is empty or repeats a name")]
    BadVariables,
    #[error("{text:?}: {source}")]
    Parse { text: String, source: ParseError },
}

/// Exponent vector of a monomial.
pub type Monomial = Vec<u32>;

pub fn monomial_degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

/// A polynomial as a map from exponent vectors to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<E> {
    pub terms: BTreeMap<Monomial, E>,
}

impl<E> Default for Poly<E> {
    fn default() -> Self {
        Poly { terms: BTreeMap::new() }
    }
}

impl<E> Poly<E> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| monomial_degree(m)).max()
    }

    /// Lowest total degree of a term (the order at the origin), `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| monomial_degree(m)).min()
    }
}

/// `k[x_1, …, x_n]` with named variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing<F: Field> {
    field: F,
    vars: Vec<String>,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: &F, vars: Vec<String>) -> Result<Self, PolyError> {
        let mut sorted = vars.clone();
        sorted.sort();
        sorted.dedup();
        if vars.is_empty() || sorted.len() != vars.len() || vars.iter().any(|v| v.is_empty()) {
            return Err(PolyError::BadVariables);
        }
        Ok(PolyRing {
            field: field.clone(),
            vars,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn zero(&self) -> Poly<F::Elem> {
        Poly::default()
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        let mut p = Poly::default();
        if !self.field.is_zero(&c) {
            p.terms.insert(vec![0; self.nvars()], c);
        }
        p
    }

    pub fn one(&self) -> Poly<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn monomial(&self, m: Monomial, c: F::Elem) -> Poly<F::Elem> {
        debug_assert_eq!(m.len(), self.nvars());
        let mut p = Poly::default();
        if !self.field.is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(&self, i: usize) -> Poly<F::Elem> {
        let mut m = vec![0; self.nvars()];
        m[i] = 1;
        self.monomial(m, self.field.one())
    }

    fn add_term(&self, p: &mut Poly<F::Elem>, m: Monomial, c: F::Elem) {
        let f = &self.field;
        match p.terms.get_mut(&m) {
            Some(v) => {
                *v = f.add(v, &c);
                if f.is_zero(v) {
                    p.terms.remove(&m);
                }
            }
            None => {
                if !f.is_zero(&c) {
                    p.terms.insert(m, c);
                }
            }
        }
    }

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut out = a.clone();
        for (m, c) in &b.terms {
            self.add_term(&mut out, m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly {
            terms: a.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))).collect(),
        }
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, c: &F::Elem, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        if self.field.is_zero(c) {
            return Poly::default();
        }
        Poly {
            terms: a.terms.iter().map(|(m, x)| (m.clone(), self.field.mul(c, x))).collect(),
        }
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let f = &self.field;
        let mut out = Poly::default();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                self.add_term(&mut out, m, f.mul(ca, cb));
            }
        }
        out
    }

    /// `∂p/∂x_i`.
    pub fn derivative(&self, p: &Poly<F::Elem>, i: usize) -> Poly<F::Elem> {
        let f = &self.field;
        let mut out = Poly::default();
        for (m, c) in &p.terms {
            if m[i] == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[i] -= 1;
            self.add_term(&mut out, m2, f.mul(&f.from_i64(m[i] as i64), c));
        }
        out
    }

    pub fn constant_term(&self, p: &Poly<F::Elem>) -> F::Elem {
        p.terms
            .get(&vec![0; self.nvars()])
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn parse(&self, text: &str) -> Result<Poly<F::Elem>, PolyError> {
        let wrap = |source| PolyError::Parse {
            text: text.to_string(),
            source,
        };
        let e = expr::parse(text).map_err(wrap)?;
        expr::eval(self, &e).map_err(wrap)
    }

    /// Terms by increasing degree, each as `c*x^a*y^b`.
    pub fn format(&self, p: &Poly<F::Elem>) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(&Monomial, &F::Elem)> = p.terms.iter().collect();
        terms.sort_by(|a, b| monomial_degree(a.0).cmp(&monomial_degree(b.0)).then_with(|| b.0.cmp(a.0)));
        let mut out = String::new();
        for (m, c) in terms {
            let s = self.field.format(c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(x) => (true, x.to_string()),
                None => (false, s),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.format_monomial(m);
            match (mag.as_str(), mono.is_empty()) {
                (_, true) => out.push_str(&mag),
                ("1", false) => out.push_str(&mono),
                (_, false) => {
                    out.push_str(&mag);
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }

    pub fn format_monomial(&self, m: &[u32]) -> String {
        m.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.vars[i].clone()
                } else {
                    format!("{}^{}", self.vars[i], e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// All monomials of total degree exactly `d`, in lexicographically decreasing order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() == n - 1 {
                prefix.push(d);
                out.push(prefix.clone());
                prefix.pop();
                return;
            }
            for e in (0..=d).rev() {
                prefix.push(e);
                rec(n, d - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(self.nvars(), d, &mut Vec::new(), &mut out);
        out
    }

    /// All monomials of total degree `< n`, by increasing degree.
    pub fn monomials_below(&self, n: u32) -> Vec<Monomial> {
        (0..n).flat_map(|d| self.monomials_of_degree(d)).collect()
    }
}

impl<F: Field> ExprRing for PolyRing<F> {
    type Value = Poly<F::Elem>;

    fn constant(&self, n: &BigInt) -> Result<Self::Value, ParseError> {
        let c = self
            .field
            .from_rational(&BigRational::from_integer(n.clone()))
            .ok_or_else(|| ParseError::Eval(format!("{n} has no image in the field")))?;
        Ok(PolyRing::constant(self, c))
    }

    fn symbol(&self, name: &str) -> Result<Self::Value, ParseError> {
        let i = self
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| ParseError::UnknownSymbol(name.to_string()))?;
        Ok(self.var(i))
    }

    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        PolyRing::add(self, a, b)
    }

    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        PolyRing::sub(self, a, b)
    }

    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        PolyRing::mul(self, a, b)
    }

    fn neg(&self, a: &Self::Value) -> Self::Value {
        PolyRing::neg(self, a)
    }
}

/// `k[x] / (I + m^N)` for an ideal `I` given by generators, as a vector space
/// on the monomials of degree `< N` that are not leading terms of the
/// relation span (leading = lowest degree first).
#[derive(Clone, Debug)]
pub struct TruncatedQuotient<F: Field> {
    order: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    relations: Echelon<F>,
    /// Indices (into `monomials`) of the surviving basis monomials.
    basis: Vec<usize>,
    /// Position of each monomial in `basis`, if it survives.
    basis_pos: Vec<Option<usize>>,
}

impl<F: Field> TruncatedQuotient<F> {
    pub fn new(ring: &PolyRing<F>, generators: &[Poly<F::Elem>], order: u32) -> Self {
        let f = ring.field();
        let monomials = ring.monomials_below(order);
        let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut relations = Echelon::new(f, monomials.len());
        for g in generators {
            let Some(ord) = g.order() else { continue };
            for m in &monomials {
                if monomial_degree(m) + ord >= order {
                    continue;
                }
                let mut v: SparseVec<F::Elem> = g
                    .terms
                    .iter()
                    .filter_map(|(gm, c)| {
                        let prod: Monomial = gm.iter().zip(m).map(|(a, b)| a + b).collect();
                        index.get(&prod).map(|&i| (i, c.clone()))
                    })
                    .collect();
                v.sort_by_key(|(i, _)| *i);
                if !v.is_empty() {
                    relations.insert(v);
                }
            }
        }
        let basis: Vec<usize> = (0..monomials.len()).filter(|&i| !relations.is_pivot(i)).collect();
        let mut basis_pos = vec![None; monomials.len()];
        for (p, &i) in basis.iter().enumerate() {
            basis_pos[i] = Some(p);
        }
        TruncatedQuotient {
            order,
            monomials,
            index,
            relations,
            basis,
            basis_pos,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn field(&self) -> &F {
        self.relations.field()
    }

    /// The basis monomials.
    pub fn basis_monomials(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.basis.iter().map(|&i| &self.monomials[i])
    }

    /// Coordinates (on the basis monomials) of the class of a polynomial.
    pub fn reduce(&self, p: &Poly<F::Elem>) -> SparseVec<F::Elem> {
        let mut v: SparseVec<F::Elem> = p
            .terms
            .iter()
            .filter_map(|(m, c)| self.index.get(m).map(|&i| (i, c.clone())))
            .collect();
        v.sort_by_key(|(i, _)| *i);
        self.relations
            .reduce(v)
            .into_iter()
            .map(|(i, c)| (self.basis_pos[i].expect("normal forms avoid pivots"), c))
            .collect()
    }

    /// Coordinates of the class of a single monomial.
    pub fn reduce_monomial(&self, m: &[u32]) -> SparseVec<F::Elem> {
        match self.index.get(m) {
            None => Vec::new(),
            Some(&i) => {
                let f = self.field();
                self.relations
                    .reduce(vec![(i, f.one())])
                    .into_iter()
                    .map(|(i, c)| (self.basis_pos[i].expect("normal forms avoid pivots"), c))
                    .collect()
            }
        }
    }

    /// Whether every monomial of degree `order − 1` lies in `I + m^order`;
    /// then `m^{order−1} ⊆ I` locally and the quotient is exactly `k[[x]]/I`.
    pub fn absorbs_top_degree(&self) -> bool {
        if self.order == 0 {
            return true;
        }
        self.monomials
            .iter()
            .enumerate()
            .filter(|(_, m)| monomial_degree(m) == self.order - 1)
            .all(|(i, _)| self.basis_pos[i].is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{PrimeField, Rationals};

    fn ring() -> PolyRing<Rationals> {
        PolyRing::new(&Rationals, vec!["x".into(), "y".into()]).unwrap()
    }

    #[test]
    fn parse_and_format() {
        let r = ring();
        let p = r.parse("(x + y)^2 - 2*x*y").unwrap();
        assert_eq!(r.format(&p), "x^2 + y^2");
        assert_eq!(r.format(&r.parse("3 - x*y^2").unwrap()), "3 - x*y^2");
        assert!(matches!(r.parse("x*z"), Err(PolyError::Parse { .. })));
    }

    #[test]
    fn derivatives() {
        let r = ring();
        let p = r.parse("x^3 + x*y^2").unwrap();
        assert_eq!(r.derivative(&p, 0), r.parse("3*x^2 + y^2").unwrap());
        assert_eq!(r.derivative(&p, 1), r.parse("2*x*y").unwrap());
        assert_eq!(p.order(), Some(3));
    }

    #[test]
    fn characteristic_p() {
        let f = PrimeField::new(3).unwrap();
        let r = PolyRing::new(&f, vec!["x".into()]).unwrap();
        let p = r.parse("x^3").unwrap();
        assert!(r.derivative(&p, 0).is_zero());
    }

    #[test]
    fn monomial_counts() {
        let r = ring();
        assert_eq!(r.monomials_of_degree(3).len(), 4);
        assert_eq!(r.monomials_below(4).len(), 10);
        assert_eq!(r.monomials_of_degree(2)[0], vec![2, 0]);
    }

    #[test]
    fn truncated_quotients() {
        let r = ring();
        // k[x,y]/(x^2, y^2) has basis 1, x, y, xy
        let gens = vec![r.parse("x^2").unwrap(), r.parse("y^2").unwrap()];
        let q = TruncatedQuotient::new(&r, &gens, 5);
        assert_eq!(q.dim(), 4);
        assert!(q.absorbs_top_degree());
        assert!(!TruncatedQuotient::new(&r, &gens, 3).absorbs_top_degree());
        // a non-monomial ideal: x^2 ≡ -y^3, and x*y is a basis element
        let q = TruncatedQuotient::new(&r, &[r.parse("x^2 + y^3").unwrap()], 4);
        assert_eq!(q.reduce(&r.parse("x^2").unwrap()), q.reduce(&r.parse("-y^3").unwrap()));
        assert!(q.reduce_monomial(&[5, 0]).is_empty());
    }

    #[test]
    fn bad_variables() {
        assert_eq!(PolyRing::new(&Rationals, vec![]), Err(PolyError::BadVariables));
        assert_eq!(
            PolyRing::new(&Rationals, vec!["x".into(), "x".into()]),
            Err(PolyError::BadVariables)
        );
    }
}
