use super::Potential;
use crate::exactlin::{sparse_collect, Field, SparseVec};
use crate::poly::{monomial_degree, Monomial, Poly, TruncatedQuotient};

/// `k[x] / ((σ) + m^N)`, a finite-dimensional stand-in for `k[[x]]/σ`; or,
/// when built with [`TruncatedLocalRing::ambient`], `k[x]/m^N` standing in for
/// the power series ring itself.
#[derive(Clone, Debug)]
pub struct TruncatedLocalRing<F: Field> {
    potential: Potential<F>,
    quotient: TruncatedQuotient<F>,
    basis: Vec<Monomial>,
    /// `table[i][j]` = coordinates of `b_i b_j`.
    table: Vec<Vec<SparseVec<F::Elem>>>,
}

impl<F: Field> TruncatedLocalRing<F> {
    pub fn new(potential: &Potential<F>, order: u32) -> Self {
        Self::build(potential, order, true)
    }

    /// `k[x]/m^N`, without imposing `σ = 0`.
    pub fn ambient(potential: &Potential<F>, order: u32) -> Self {
        Self::build(potential, order, false)
    }

    fn build(potential: &Potential<F>, order: u32, modulo_sigma: bool) -> Self {
        let gens = if modulo_sigma { vec![potential.sigma().clone()] } else { Vec::new() };
        let quotient = TruncatedQuotient::new(potential.ring(), &gens, order);
        let basis: Vec<Monomial> = quotient.basis_monomials().cloned().collect();
        let table = basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| {
                        let m: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        quotient.reduce_monomial(&m)
                    })
                    .collect()
            })
            .collect();
        TruncatedLocalRing {
            potential: potential.clone(),
            quotient,
            basis,
            table,
        }
    }

    pub fn potential(&self) -> &Potential<F> {
        &self.potential
    }

    pub fn field(&self) -> &F {
        self.potential.ring().field()
    }

    pub fn order(&self) -> u32 {
        self.quotient.order()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// Number of basis monomials of each degree `0..order`.
    pub fn dims_by_degree(&self) -> Vec<usize> {
        let mut out = vec![0; self.order() as usize];
        for m in &self.basis {
            out[monomial_degree(m) as usize] += 1;
        }
        out
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec<F::Elem> {
        &self.table[i][j]
    }

    /// Coordinates of `p · b_t`.
    pub fn mul_poly_basis(&self, p: &Poly<F::Elem>, t: usize) -> SparseVec<F::Elem> {
        let f = self.field();
        let mut terms = Vec::new();
        for (m, c) in &p.terms {
            let prod: Monomial = m.iter().zip(&self.basis[t]).map(|(x, y)| x + y).collect();
            for (i, v) in self.quotient.reduce_monomial(&prod) {
                terms.push((i, f.mul(c, &v)));
            }
        }
        sparse_collect(f, terms)
    }

    /// Product of two elements given by sparse coordinates.
    pub fn mul(&self, x: &[(usize, F::Elem)], y: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let f = self.field();
        let mut terms = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = f.mul(a, b);
                for (k, c) in &self.table[*i][*j] {
                    terms.push((*k, f.mul(&ab, c)));
                }
            }
        }
        sparse_collect(f, terms)
    }

    /// Image of basis element `t` of this ring in a lower truncation.
    pub fn project_basis(&self, t: usize, lower: &TruncatedLocalRing<F>) -> SparseVec<F::Elem> {
        lower.quotient.reduce_monomial(&self.basis[t])
    }

    pub fn label(&self, t: usize) -> String {
        let s = self.potential.ring().format_monomial(&self.basis[t]);
        if s.is_empty() {
            "1".into()
        } else {
            s
        }
    }
}
