//! Exact construction and verification of the local subgroup, normal and
//! pro-isomorphic zeta functions of the class-2 nilpotent groups
//!
//! ```text
//! G_n = < x_1..x_n, y_1..y_{n-1} | [x_i, x_n] = y_i, all other commutators trivial >
//! ```
//!
//! Every zeta function is held as a [`RationalFunction`] in `p` and
//! `t = p^{-s}`. Closed forms are built in [`formulas`], their identities are
//! checked exactly in [`verify`], and [`oracle`] supplies independent ground
//! truth by lattice census and by summing over elementary divisor types.

pub mod combinat;
pub mod error;
pub mod exactalg;
pub mod formulas;
pub mod oracle;
pub mod verify;

pub use combinat::{FlagType, Permutation};
pub use error::{Error, Result};
pub use exactalg::{LaurentPolynomial, Monomial, RationalFunction, SubstitutionMap, Var};
pub use formulas::{Abscissa, ZetaKind};
pub use oracle::{HnfBasis, LieRing, TypeVector};
pub use verify::FuneqReport;
