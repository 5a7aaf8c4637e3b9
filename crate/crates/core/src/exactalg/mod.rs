//! Exact arithmetic kernel: Laurent monomials and polynomials over the
//! integers, rational functions with geometric denominators, monomial
//! substitution and truncated series expansion in `t = p^{-s}`.

mod monomial;
mod parse;
mod poly;
mod rational;
mod series;
mod subst;

pub use monomial::{Monomial, Var};
pub use poly::LaurentPolynomial;
pub use rational::RationalFunction;
pub use series::{
    all_nonnegative_integers, convolve, evaluate_at_p, integer_series, rational_pow, series_expand, to_integers,
};
pub use subst::SubstitutionMap;
