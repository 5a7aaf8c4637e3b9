use std::collections::BTreeMap;

use super::monomial::{Monomial, Var};
use super::poly::LaurentPolynomial;
use super::rational::RationalFunction;
use crate::error::Result;

/// A monomial substitution `v ↦ M_v`; unassigned variables are left fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubstitutionMap {
    assignments: BTreeMap<Var, Monomial>,
}

impl SubstitutionMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn assign(mut self, v: Var, image: Monomial) -> Self {
        self.assignments.insert(v, image);
        self
    }

    /// `v ↦ v^{-1}` for each listed variable.
    pub fn inversion<I: IntoIterator<Item = Var>>(vars: I) -> Self {
        vars.into_iter().fold(Self::new(), |s, v| s.assign(v, Monomial::pow_of(v, -1)))
    }

    pub fn get(&self, v: Var) -> Option<&Monomial> {
        self.assignments.get(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, &Monomial)> {
        self.assignments.iter().map(|(&v, m)| (v, m))
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Monomial {
        m.iter().fold(Monomial::one(), |acc, (v, e)| match self.assignments.get(&v) {
            Some(img) => acc.mul(&img.pow(e)),
            None => acc.mul(&Monomial::pow_of(v, e)),
        })
    }

    pub fn apply_poly(&self, p: &LaurentPolynomial) -> LaurentPolynomial {
        p.map_monomials(|m| self.apply_monomial(m))
    }

    /// Image of a rational function. Fails if some factor `1 - M` is sent to
    /// `1 - 1`.
    pub fn apply(&self, f: &RationalFunction) -> Result<RationalFunction> {
        f.map_monomials(|m| self.apply_monomial(m))
    }

    /// The substitution "first `self`, then `next`".
    pub fn then(&self, next: &SubstitutionMap) -> SubstitutionMap {
        let mut assignments: BTreeMap<Var, Monomial> =
            self.assignments.iter().map(|(&v, m)| (v, next.apply_monomial(m))).collect();
        for (&v, m) in &next.assignments {
            assignments.entry(v).or_insert_with(|| m.clone());
        }
        SubstitutionMap { assignments }
    }
}
