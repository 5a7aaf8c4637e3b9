//! Exact checks of the combinatorial lemmas, the descent rearrangement and
//! the local functional equations.
//!
//! Index convention: the lemmas and the abstract functional equation are
//! stated for `W` of rank `m`, in the variables `X_0..X_{m-1}`, `Y_1..Y_m`.
//! The zeta function of `G_n` uses rank `m = n - 1`.

use rayon::prelude::*;

use crate::combinat::FlagType;
use crate::error::Result;
use crate::exactalg::{LaurentPolynomial, Monomial, RationalFunction, SubstitutionMap, Var};
use crate::formulas::{check_n, w_sum_leq, w_sum_leq_via_descents, w_term_leq, zeta_closed_form, ZetaKind};

/// Outcome of one functional-equation check
/// `ζ(p^{-1}, t^{-1}) = sign · p^a t^b · ζ(p, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuneqReport {
    pub kind: ZetaKind,
    pub n: usize,
    pub sign: i32,
    pub p_exponent: i64,
    pub t_exponent: i64,
    pub holds: bool,
}

fn binom2(k: i64) -> i64 {
    k * (k - 1) / 2
}

/// Expected `(sign, a, b)` for the functional equation of `ζ^*_{G_n,p}`.
pub fn expected_funeq(kind: ZetaKind, n: usize) -> (i32, i64, i64) {
    let n = n as i64;
    match kind {
        ZetaKind::Subgroup => (-1, binom2(2 * n - 1), 2 * n - 1),
        ZetaKind::Normal => (-1, binom2(2 * n - 1), 3 * n - 1),
        ZetaKind::Hat => (if n % 2 == 0 { 1 } else { -1 }, 5 * binom2(n), 3 * n - 2),
    }
}

/// True iff `inverted` equals `sign · monomial · original`.
fn symmetric_under(inverted: &RationalFunction, original: &RationalFunction, sign: i32, monomial: &Monomial) -> bool {
    let rhs = original.mul_poly(&LaurentPolynomial::term(sign, monomial.clone()));
    inverted.value_eq(&rhs)
}

pub fn check_funeq(kind: ZetaKind, n: usize) -> Result<FuneqReport> {
    check_n(n)?;
    let zeta = zeta_closed_form(kind, n)?;
    let inverted = SubstitutionMap::inversion([Var::P, Var::T]).apply(&zeta)?;
    let (sign, a, b) = expected_funeq(kind, n);
    let holds = symmetric_under(&inverted, &zeta, sign, &Monomial::pt(a, b));
    Ok(FuneqReport { kind, n, sign, p_exponent: a, t_exponent: b, holds })
}

/// `X_i ↦ X_i^{-1}`, `Y_i ↦ Y_i^{-1}` for rank `m`.
fn invert_xy(m: usize) -> SubstitutionMap {
    SubstitutionMap::inversion((0..m).map(|i| Var::X(i as u16)).chain((1..=m).map(|i| Var::Y(i as u16))))
}

fn sign(k: usize) -> i32 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `W_{m,J}(X^{-1}, Y^{-1}) = (-1)^{|J|+1} Σ_{S ⊆ J} W_{m,S}(X, Y)`.
pub fn check_lemma1(m: usize, j: &FlagType) -> Result<bool> {
    let lhs = invert_xy(m).apply(&w_term_leq(m, j)?)?;
    let parts: Vec<RationalFunction> = j.subsets().map(|s| w_term_leq(m, &s)).collect::<Result<_>>()?;
    let rhs = RationalFunction::sum(&parts).scale(sign(j.len() + 1));
    Ok(lhs.value_eq(&rhs))
}

/// `Σ_{J ⊇ I} W_{m,J}(X^{-1}, Y^{-1}) = (-1)^m Σ_{J ⊇ I^c} W_{m,J}(X, Y)`.
pub fn check_lemma2(m: usize, i: &FlagType) -> Result<bool> {
    let inv = invert_xy(m);
    let lhs: Vec<RationalFunction> = i.supersets().map(|j| inv.apply(&w_term_leq(m, &j)?)).collect::<Result<_>>()?;
    let ic = i.complement();
    let rhs: Vec<RationalFunction> = ic.supersets().map(|j| w_term_leq(m, &j)).collect::<Result<_>>()?;
    Ok(RationalFunction::sum(&lhs).value_eq(&RationalFunction::sum(&rhs).scale(sign(m))))
}

/// `W_m(X^{-1}, Y^{-1}, p^{-1}) = (-1)^m p^{C(m,2)} W_m(X, Y, p)`, in the
/// abstract variables.
pub fn check_w_funeq(m: usize) -> Result<bool> {
    let w = w_sum_leq(m)?;
    let inverted = invert_xy(m).then(&SubstitutionMap::inversion([Var::P])).apply(&w)?;
    let unit = Monomial::pow_of(Var::P, binom2(m as i64));
    Ok(symmetric_under(&inverted, &w, sign(m), &unit))
}

/// `W_m` equals its expansion over descent sets of `S_m`.
pub fn check_descent_identity(m: usize) -> Result<bool> {
    Ok(w_sum_leq(m)?.value_eq(&w_sum_leq_via_descents(m)?))
}

/// One row of a lemma sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaCheck {
    pub lemma: u8,
    pub m: usize,
    pub subset: FlagType,
    pub holds: bool,
}

/// Both lemmas for every subset of `[m-1]`, in deterministic order.
pub fn lemma_sweep(m: usize) -> Result<Vec<LemmaCheck>> {
    let subsets: Vec<FlagType> = FlagType::all(m).collect();
    let mut jobs: Vec<(u8, FlagType)> = subsets.iter().map(|s| (1, s.clone())).collect();
    jobs.extend(subsets.into_iter().map(|s| (2, s)));
    jobs.into_par_iter()
        .map(|(lemma, subset)| {
            let holds = if lemma == 1 { check_lemma1(m, &subset)? } else { check_lemma2(m, &subset)? };
            Ok(LemmaCheck { lemma, m, subset, holds })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ft(m: usize, v: &[usize]) -> FlagType {
        FlagType::new(m, v.to_vec()).unwrap()
    }

    #[test]
    fn lemma1_examples() {
        assert!(check_lemma1(1, &FlagType::empty(1)).unwrap());
        assert!(check_lemma1(3, &ft(3, &[1, 2])).unwrap());
        assert!(check_lemma1(4, &ft(4, &[1, 3])).unwrap());
    }

    #[test]
    fn lemma2_examples() {
        assert!(check_lemma2(1, &FlagType::empty(1)).unwrap());
        assert!(check_lemma2(3, &ft(3, &[1])).unwrap());
        assert!(check_lemma2(4, &FlagType::empty(4)).unwrap());
    }

    #[test]
    fn lemma1_fails_with_wrong_sign() {
        // sanity: the check is not vacuous
        let j = ft(3, &[1]);
        let lhs = invert_xy(3).apply(&w_term_leq(3, &j).unwrap()).unwrap();
        let parts: Vec<_> = j.subsets().map(|s| w_term_leq(3, &s).unwrap()).collect();
        assert!(!lhs.value_eq(&RationalFunction::sum(&parts).scale(sign(j.len()))));
    }

    #[test]
    fn abstract_funeq() {
        for m in [1, 2, 4] {
            assert!(check_w_funeq(m).unwrap(), "m={m}");
        }
    }

    #[test]
    fn funeq_examples() {
        let r = check_funeq(ZetaKind::Subgroup, 2).unwrap();
        assert_eq!((r.p_exponent, r.t_exponent, r.sign, r.holds), (3, 3, -1, true));
        let r = check_funeq(ZetaKind::Hat, 2).unwrap();
        assert_eq!((r.p_exponent, r.t_exponent, r.sign, r.holds), (5, 4, 1, true));
        let r = check_funeq(ZetaKind::Normal, 3).unwrap();
        assert_eq!((r.p_exponent, r.t_exponent, r.sign, r.holds), (10, 8, -1, true));
        let r = check_funeq(ZetaKind::Hat, 3).unwrap();
        assert_eq!((r.p_exponent, r.t_exponent, r.sign, r.holds), (15, 7, -1, true));
    }

    #[test]
    fn funeq_detects_wrong_exponent() {
        let zeta = zeta_closed_form(ZetaKind::Subgroup, 3).unwrap();
        let inverted = SubstitutionMap::inversion([Var::P, Var::T]).apply(&zeta).unwrap();
        assert!(symmetric_under(&inverted, &zeta, -1, &Monomial::pt(10, 5)));
        assert!(!symmetric_under(&inverted, &zeta, -1, &Monomial::pt(10, 4)));
        assert!(!symmetric_under(&inverted, &zeta, 1, &Monomial::pt(10, 5)));
    }

    #[test]
    fn sweep_rank_three() {
        let rows = lemma_sweep(3).unwrap();
        assert_eq!(rows.len(), 8);
        assert!(rows.iter().all(|r| r.holds));
    }
}
