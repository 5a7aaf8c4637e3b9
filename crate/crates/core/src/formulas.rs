//! Closed forms for the local zeta functions of `G_n`.
//!
//! `ζ_p(as - b)` is always stored as the factor `1 / (1 - p^b t^a)`; the
//! complex variable `s` never appears. The `W` rational functions live in
//! abstract variables `X_i`, `Y_i` (and `p`), and [`numerical_data`] maps
//! them to monomials in `p` and `t`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::combinat::{flag_poly, permutations, FlagType};
use crate::error::{Error, Result};
use crate::exactalg::{LaurentPolynomial, Monomial, RationalFunction, SubstitutionMap, Var};

/// Which subgroups a zeta function counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ZetaKind {
    /// All subgroups (`≤`).
    Subgroup,
    /// Normal subgroups (`◁`).
    Normal,
    /// Subgroups with profinite completion isomorphic to that of `G_n` (`∧`).
    Hat,
}

impl ZetaKind {
    pub const ALL: [ZetaKind; 3] = [ZetaKind::Subgroup, ZetaKind::Normal, ZetaKind::Hat];

    pub fn tag(self) -> &'static str {
        match self {
            ZetaKind::Subgroup => "leq",
            ZetaKind::Normal => "normal",
            ZetaKind::Hat => "hat",
        }
    }
}

impl fmt::Display for ZetaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ZetaKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "leq" | "subgroup" | "≤" => Ok(ZetaKind::Subgroup),
            "normal" | "◁" => Ok(ZetaKind::Normal),
            "hat" | "∧" => Ok(ZetaKind::Hat),
            _ => Err(Error::InvalidInput(format!("unknown zeta kind '{s}' (expected leq, normal or hat)"))),
        }
    }
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("n must be at least 2, got {n}")));
    }
    Ok(())
}

/// `ζ_p(a s - b) = 1 / (1 - p^b t^a)`.
pub fn zeta_p(a: i64, b: i64) -> RationalFunction {
    RationalFunction::geometric(Monomial::pt(b, a)).expect("a >= 1 gives a non-unit factor")
}

/// `Π_{v} v/(1 - v)` as a single fraction.
fn underline_product<I: IntoIterator<Item = Var>>(vars: I) -> RationalFunction {
    let vars: Vec<Var> = vars.into_iter().collect();
    let top = Monomial::from_pairs(vars.iter().map(|&v| (v, 1)));
    RationalFunction::new(top.into(), vars.into_iter().map(Monomial::var)).expect("variables are non-unit")
}

/// `b_{m,I}(p^{-1})`.
pub fn flag_poly_at_p_inverse(ft: &FlagType) -> LaurentPolynomial {
    SubstitutionMap::new().assign(Var::Q, Monomial::pow_of(Var::P, -1)).apply_poly(&flag_poly(ft))
}

/// `W^≤_{m,I}(X, Y)` in the variables `X_0..X_{m-1}`, `Y_1..Y_m`.
///
/// The four summands are transcribed literally: in the third sum both
/// products include the index `i = j`, in the fourth only the `X` product
/// does.
pub fn w_term_leq(m: usize, ft: &FlagType) -> Result<RationalFunction> {
    if m == 0 || ft.rank() != m {
        return Err(Error::InvalidInput(format!("flag type {ft} is not over rank {m}")));
    }
    let x = |i: usize| Var::X(i as u16);
    let y = |i: usize| Var::Y(i as u16);
    let set = ft.elements();

    let mut parts = vec![
        underline_product(std::iter::once(x(0)).chain(set.iter().map(|&i| x(i)))),
        underline_product(std::iter::once(y(m)).chain(set.iter().map(|&i| y(i)))),
    ];
    for &j in set {
        parts.push(underline_product(
            set.iter().filter(|&&i| i <= j).map(|&i| y(i)).chain(set.iter().filter(|&&i| i >= j).map(|&i| x(i))),
        ));
    }
    for j in set.iter().copied().chain(std::iter::once(m)) {
        parts.push(underline_product(
            set.iter().filter(|&&i| i < j).map(|&i| y(i)).chain(set.iter().filter(|&&i| i >= j).map(|&i| x(i))),
        ));
    }
    Ok(RationalFunction::sum(&parts))
}

/// `W^≤_m(X, Y, p) = Σ_{I ⊆ [m-1]} b_{m,I}(p^{-1}) W^≤_{m,I}`.
pub fn w_sum_leq(m: usize) -> Result<RationalFunction> {
    let terms: Vec<RationalFunction> = FlagType::all(m)
        .map(|ft| Ok(w_term_leq(m, &ft)?.mul_poly(&flag_poly_at_p_inverse(&ft))))
        .collect::<Result<_>>()?;
    Ok(RationalFunction::sum(&terms))
}

/// The descent expansion `Σ_{w ∈ S_m} p^{-l(w)} Σ_{J ⊇ ν(w)} W^≤_{m,J}`.
pub fn w_sum_leq_via_descents(m: usize) -> Result<RationalFunction> {
    let blocks: Vec<(FlagType, RationalFunction)> = FlagType::all(m)
        .map(|ft| {
            let sup: Vec<RationalFunction> = ft.supersets().map(|j| w_term_leq(m, &j)).collect::<Result<_>>()?;
            Ok((ft, RationalFunction::sum(&sup)))
        })
        .collect::<Result<_>>()?;
    let terms: Vec<RationalFunction> = permutations(m)
        .map(|w| {
            let nu = w.descent_type();
            let block = &blocks.iter().find(|(ft, _)| *ft == nu).expect("all subsets listed").1;
            block.mul_monomial(&Monomial::pow_of(Var::P, -(w.coxeter_length() as i64)))
        })
        .collect();
    Ok(RationalFunction::sum(&terms))
}

/// `W^◁_m(X, p) = Σ_{I ⊆ [m-1]} b_{m,I}(p^{-1}) Π_{i ∈ I} X_i/(1 - X_i)`.
pub fn w_sum_normal(m: usize) -> Result<RationalFunction> {
    if m == 0 {
        return Err(Error::InvalidInput("rank must be positive".into()));
    }
    let terms: Vec<RationalFunction> = FlagType::all(m)
        .map(|ft| {
            underline_product(ft.elements().iter().map(|&i| Var::X(i as u16))).mul_poly(&flag_poly_at_p_inverse(&ft))
        })
        .collect();
    Ok(RationalFunction::sum(&terms))
}

/// Numerical data sending the abstract `X_i`, `Y_i` to monomials in `p`, `t`.
pub fn numerical_data(kind: ZetaKind, n: usize) -> Result<SubstitutionMap> {
    check_n(n)?;
    let n = n as i64;
    match kind {
        ZetaKind::Subgroup => {
            let mut s = SubstitutionMap::new();
            for i in 0..=n - 2 {
                s = s.assign(Var::X(i as u16), Monomial::pt((n + 1 + i) * (n - 1 - i), 2 * (n - 1 - i)));
            }
            for i in 1..=n - 1 {
                s = s.assign(Var::Y(i as u16), Monomial::pt((n + i) * (n - 1 - i), n - i));
            }
            Ok(s)
        }
        ZetaKind::Normal => Ok((1..=n - 2).fold(SubstitutionMap::new(), |s, i| {
            s.assign(Var::X(i as u16), Monomial::pt((n + i) * (n - i - 1), 2 * (n - i) - 1))
        })),
        ZetaKind::Hat => Err(Error::InvalidInput("the pro-isomorphic zeta function has no numerical data".into())),
    }
}

/// The local zeta function `ζ^*_{G_n,p}` as a rational function in `p`, `t`.
pub fn zeta_closed_form(kind: ZetaKind, n: usize) -> Result<RationalFunction> {
    check_n(n)?;
    let ni = n as i64;
    let top = ni * (ni - 1);
    match kind {
        ZetaKind::Subgroup => {
            let mut factors: Vec<RationalFunction> = (1..ni).map(|i| zeta_p(1, i)).collect();
            factors.push(zeta_p(ni, top));
            factors.push(numerical_data(kind, n)?.apply(&w_sum_leq(n - 1)?)?);
            Ok(RationalFunction::product(&factors))
        }
        ZetaKind::Normal => {
            let mut factors: Vec<RationalFunction> = (0..ni).map(|i| zeta_p(1, i)).collect();
            factors.push(zeta_p(2 * ni - 1, top));
            factors.push(numerical_data(kind, n)?.apply(&w_sum_normal(n - 1)?)?);
            Ok(RationalFunction::product(&factors))
        }
        ZetaKind::Hat => {
            let mut factors = vec![zeta_p(ni, top)];
            factors.extend((0..=ni - 2).map(|i| zeta_p(2, ni + 1 + i)));
            Ok(RationalFunction::product(&factors))
        }
    }
}

/// `ζ_p(s) ζ_p(s-1) ζ_p(2s-2) ζ_p(2s-3) / ζ_p(3s-3)`, the Heisenberg factor.
pub fn heisenberg_product() -> RationalFunction {
    let f = RationalFunction::product(&[zeta_p(1, 0), zeta_p(1, 1), zeta_p(2, 2), zeta_p(2, 3)]);
    f.mul_poly(&LaurentPolynomial::one_minus(&Monomial::pt(3, 3)))
}

/// Abscissa of convergence of `ζ^≤_{G_n}`:
/// `max(n, max_{1 ≤ l ≤ n-2} ((n+l)(n-l-1)+1)/(n-l))`.
pub fn abscissa_leq(n: usize) -> Result<BigRational> {
    check_n(n)?;
    let n = n as i64;
    let base = BigRational::from_integer(BigInt::from(n));
    Ok((1..=n - 2)
        .map(|l| BigRational::new(BigInt::from((n + l) * (n - l - 1) + 1), BigInt::from(n - l)))
        .fold(base, |acc, r| if r > acc { r } else { acc }))
}

/// Result of reading an abscissa off a denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Abscissa {
    /// The numerator is `1`, so the value is the abscissa of the Euler product.
    Exact(BigRational),
    /// The numerator may cancel poles; only an upper bound.
    Candidate(BigRational),
}

impl Abscissa {
    pub fn value(&self) -> &BigRational {
        match self {
            Abscissa::Exact(r) | Abscissa::Candidate(r) => r,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Abscissa::Exact(_))
    }
}

/// `max (b + 1)/a` over the denominator factors `1 - p^b t^a`.
pub fn abscissa_from_denominator(f: &RationalFunction) -> Result<Abscissa> {
    let mut best: Option<BigRational> = None;
    for (m, _) in f.denominator() {
        if m.vars().any(|v| v != Var::P && v != Var::T) {
            return Err(Error::UnboundVariable(m.to_string()));
        }
        let (b, a) = (m.exponent(Var::P), m.exponent(Var::T));
        if a < 1 {
            return Err(Error::InvalidInput(format!("factor (1 - {m}) has no positive power of t")));
        }
        let r = BigRational::new(BigInt::from(b + 1), BigInt::from(a));
        if best.as_ref().is_none_or(|x| r > *x) {
            best = Some(r);
        }
    }
    let best = best.ok_or_else(|| Error::InvalidInput("no denominator factors".into()))?;
    if f.numerator() == &LaurentPolynomial::one() {
        Ok(Abscissa::Exact(best))
    } else {
        Ok(Abscissa::Candidate(best))
    }
}
