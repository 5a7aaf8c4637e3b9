//! Second derivation of `ζ^≤_{G_n,p}`: sum over elementary divisor types
//! of the central sublattice `H_1`.
//!
//! With `z = t`, `x_i = (p t)^{n-1-i}` and `y_i = p^{(n+i)(n-1-i)} t^{n-1-i}`,
//!
//! ```text
//! Z(s) = Σ_I b_{n-1,I}(p^{-1}) Σ_r Π_{j ∈ I_0} y_j^{r_j} Z(I, r)
//! ```
//!
//! and `Z(s)` is the subgroup zeta function with the factors
//! `ζ_p(s-1) … ζ_p(s-n+1)` removed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::types::TypeVector;
use crate::combinat::FlagType;
use crate::error::{Error, Result};
use crate::exactalg::{
    evaluate_at_p, series_expand, to_integers, LaurentPolynomial, Monomial, RationalFunction, SubstitutionMap,
};
use crate::formulas::{check_n, flag_poly_at_p_inverse, numerical_data, w_sum_leq, zeta_p, ZetaKind};

fn x_mono(n: usize, i: usize) -> Monomial {
    let e = (n - 1 - i) as i64;
    Monomial::pt(e, e)
}

fn y_mono(n: usize, i: usize) -> Monomial {
    let (n, i) = (n as i64, i as i64);
    Monomial::pt((n + i) * (n - 1 - i), n - 1 - i)
}

fn check_rank(n: usize, tv: &TypeVector) -> Result<()> {
    check_n(n)?;
    if tv.rank() != n - 1 {
        return Err(Error::InvalidInput(format!("type {tv} is not over rank {}", n - 1)));
    }
    Ok(())
}

/// `t^R / (1 - t)`: the indices `m_3 ≥ R` where `(p^{-m_3} H_1) ∩ Z_p = Z_p`.
fn tail(total: u32) -> RationalFunction {
    RationalFunction::new(Monomial::pt(0, total as i64).into(), [Monomial::pt(0, 1)]).expect("t is non-unit")
}

/// `Z(I, r)` by the closed form
/// `Σ_{j ∈ I_0} Π_{i<j} z^{r_i} Π_{i≥j} x_i^{r_i} (1 - (z/x_j)^{r_j}) / (1 - z/x_j) + z^R/(1-z)`.
pub fn z_ir_closed(n: usize, tv: &TypeVector) -> Result<RationalFunction> {
    check_rank(n, tv)?;
    let entries: Vec<(usize, u32)> = tv.entries().collect();
    let z = Monomial::pt(0, 1);
    let mut parts = vec![tail(tv.r_total())];
    for &(j, rj) in &entries {
        if rj == 0 {
            continue;
        }
        let prefix = entries.iter().fold(Monomial::one(), |acc, &(i, ri)| {
            let base = if i < j { z.clone() } else { x_mono(n, i) };
            acc.mul(&base.pow(ri as i64))
        });
        let w = z.mul(&x_mono(n, j).inv());
        let numerator = LaurentPolynomial::one_minus(&w.pow(rj as i64)).mul_monomial(&prefix);
        parts.push(RationalFunction::new(numerator, [w])?);
    }
    Ok(RationalFunction::sum(&parts))
}

/// `Z(I, r)` by summing `|Z_p : (p^{-m_3} H_1) ∩ Z_p|^{1-s} p^{-m_3 s}` term by
/// term for `m_3 < R`, plus the geometric tail.
pub fn z_ir_direct(n: usize, tv: &TypeVector) -> Result<RationalFunction> {
    check_rank(n, tv)?;
    let exps = tv.divisor_exponents();
    let total = tv.r_total();
    let mut head = LaurentPolynomial::zero();
    for m3 in 0..total {
        let e: i64 = exps.iter().map(|&a| a.saturating_sub(m3) as i64).sum();
        head.add_term(Monomial::pt(e, e + m3 as i64), BigInt::from(1));
    }
    Ok(&RationalFunction::from_poly(head) + &tail(total))
}

/// Coefficients of `t^0..t^K` in `Z(s)`, summed over all types whose
/// contribution can reach degree `K`.
///
/// Every unit of `r_j` contributes `t^{n-1-j}` through `y_j` and `Z(I, r)`
/// is a power series, so types of index exponent above `K` are dropped.
pub fn typesum_coefficients(n: usize, p: u64, k_max: usize) -> Result<Vec<BigInt>> {
    check_n(n)?;
    let m = n - 1;
    let types = TypeVector::all(m, k_max as u32);
    let mut acc = vec![BigRational::zero(); k_max + 1];
    for flag in FlagType::all(m) {
        let b = evaluate_at_p(&flag_poly_at_p_inverse(&flag), p)?;
        for tv in types.iter().filter(|t| t.flag() == &flag) {
            let weight = tv.entries().fold(Monomial::one(), |w, (j, r)| w.mul(&y_mono(n, j).pow(r as i64)));
            let term = z_ir_closed(n, tv)?.mul_monomial(&weight);
            for (a, c) in acc.iter_mut().zip(series_expand(&term, p, k_max)?) {
                *a += &b * c;
            }
        }
    }
    to_integers(&acc).ok_or_else(|| Error::InvalidInput("type sum produced non-integer coefficients".into()))
}

/// The closed form `ζ_p(ns - n(n-1)) W^≤_{n-1}` with numerical data applied.
pub fn closed_form_without_prefactor(n: usize) -> Result<RationalFunction> {
    check_n(n)?;
    let data: SubstitutionMap = numerical_data(ZetaKind::Subgroup, n)?;
    let w = data.apply(&w_sum_leq(n - 1)?)?;
    let ni = n as i64;
    Ok(&zeta_p(ni, ni * (ni - 1)) * &w)
}

/// Series of [`closed_form_without_prefactor`], for comparison with
/// [`typesum_coefficients`].
pub fn closed_form_coefficients(n: usize, p: u64, k_max: usize) -> Result<Vec<BigInt>> {
    let cs = series_expand(&closed_form_without_prefactor(n)?, p, k_max)?;
    to_integers(&cs).ok_or_else(|| Error::InvalidInput("closed form produced non-integer coefficients".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tv(m: usize, set: &[usize], r0: u32, steps: &[u32]) -> TypeVector {
        TypeVector::new(FlagType::new(m, set.to_vec()).unwrap(), r0, steps.to_vec()).unwrap()
    }

    #[test]
    fn trivial_type_is_geometric() {
        for n in 2..=4 {
            let t = tv(n - 1, &[], 0, &[]);
            let expected = RationalFunction::geometric(Monomial::pt(0, 1)).unwrap();
            assert!(z_ir_closed(n, &t).unwrap().value_eq(&expected));
            assert!(z_ir_direct(n, &t).unwrap().value_eq(&expected));
        }
    }

    #[test]
    fn heisenberg_scalar_type() {
        // p t + t/(1 - t)
        let t = tv(1, &[], 1, &[]);
        let expected = &RationalFunction::monomial(Monomial::pt(1, 1)) + &tail(1);
        assert_eq!(z_ir_direct(2, &t).unwrap(), expected);
        assert!(z_ir_closed(2, &t).unwrap().value_eq(&expected));
    }

    #[test]
    fn rank_two_step_type() {
        let t = tv(2, &[1], 0, &[1]);
        assert!(z_ir_closed(3, &t).unwrap().value_eq(&z_ir_direct(3, &t).unwrap()));
    }

    #[test]
    fn two_routes_agree_small() {
        for n in 2..=4 {
            for t in TypeVector::all(n - 1, 3 * (n as u32 - 1)).iter().filter(|t| t.r_total() <= 3) {
                assert!(z_ir_closed(n, t).unwrap().value_eq(&z_ir_direct(n, t).unwrap()), "n={n} {t}");
            }
        }
    }

    #[test]
    fn heisenberg_typesum() {
        assert_eq!(typesum_coefficients(2, 2, 1).unwrap(), vec![BigInt::from(1), BigInt::from(1)]);
        for k in 0..=5 {
            assert_eq!(typesum_coefficients(2, 2, k).unwrap(), closed_form_coefficients(2, 2, k).unwrap());
        }
    }

    #[test]
    fn rejects_wrong_rank() {
        assert!(z_ir_closed(3, &tv(1, &[], 0, &[])).is_err());
    }
}
