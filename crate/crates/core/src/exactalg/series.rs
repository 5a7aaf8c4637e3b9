//! Truncated power-series expansion in `t` at a concrete value of `p`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Var;
use super::rational::RationalFunction;
use crate::error::{Error, Result};

/// Exact value of `p^e` for an integer `p` and any integer `e`.
pub fn rational_pow(p: &BigInt, e: i64) -> BigRational {
    let base = BigRational::from_integer(p.clone());
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), e.unsigned_abs() as usize)
    }
}

/// Coefficients `c_0..=c_K` of `f` as a power series in `t` after setting
/// `p = p_value`.
///
/// Every variable other than `p` and `t` must already be substituted away.
/// A factor `1 - c t^a` with `a < 0` is flipped to positive `t`-degree and a
/// constant factor `1 - c` becomes a scalar. A constant factor with `c = 1`,
/// or a numerator left with negative powers of `t`, is rejected as
/// non-Taylor.
pub fn series_expand(f: &RationalFunction, p_value: u64, k_max: usize) -> Result<Vec<BigRational>> {
    let p = BigInt::from(p_value);
    let mut numerator: BTreeMap<i64, BigRational> = BTreeMap::new();
    for (m, c) in f.numerator().terms() {
        let (a, b) = split_pt(m)?;
        let v = rational_pow(&p, a) * BigRational::from_integer(c.clone());
        *numerator.entry(b).or_insert_with(BigRational::zero) += v;
    }

    let mut factors: Vec<(BigRational, usize)> = Vec::new();
    for (m, mult) in f.denominator() {
        let (a, b) = split_pt(m)?;
        let c = rational_pow(&p, a);
        let (c, b) = match b.signum() {
            1 => (c, b),
            -1 => {
                // 1/(1 - c t^b) = -c^{-1} t^{-b} / (1 - c^{-1} t^{-b})
                let c_inv = c.recip();
                for _ in 0..mult {
                    numerator = numerator.into_iter().map(|(e, v)| (e - b, -(v * &c_inv))).collect();
                }
                (c_inv, -b)
            }
            _ => {
                // constant factor 1/(1 - c)
                if c.is_one() {
                    return Err(Error::NonTaylor(format!("factor (1 - {m}) vanishes at p = {p}")));
                }
                let scale = (BigRational::one() - c).recip();
                for _ in 0..mult {
                    numerator.values_mut().for_each(|v| *v *= &scale);
                }
                continue;
            }
        };
        for _ in 0..mult {
            factors.push((c.clone(), b as usize));
        }
    }

    numerator.retain(|_, v| !v.is_zero());
    if let Some((&e, _)) = numerator.iter().next() {
        if e < 0 {
            return Err(Error::NonTaylor(format!("numerator contains t^{e}")));
        }
    }

    let mut out = vec![BigRational::zero(); k_max + 1];
    for (e, v) in numerator {
        if let Ok(e) = usize::try_from(e) {
            if e <= k_max {
                out[e] += v;
            }
        }
    }
    for (c, a) in factors {
        // multiply by 1/(1 - c t^a) in place
        for i in a..=k_max {
            let add = &out[i - a] * &c;
            out[i] += add;
        }
    }
    Ok(out)
}

fn split_pt(m: &super::Monomial) -> Result<(i64, i64)> {
    if let Some(v) = m.vars().find(|&v| v != Var::P && v != Var::T) {
        return Err(Error::UnboundVariable(v.to_string()));
    }
    Ok((m.exponent(Var::P), m.exponent(Var::T)))
}

/// Value of a polynomial in `p` alone at `p = p_value`.
pub fn evaluate_at_p(poly: &super::LaurentPolynomial, p_value: u64) -> Result<BigRational> {
    let p = BigInt::from(p_value);
    poly.terms()
        .map(|(m, c)| match split_pt(m)? {
            (a, 0) => Ok(rational_pow(&p, a) * BigRational::from_integer(c.clone())),
            _ => Err(Error::UnboundVariable("t".into())),
        })
        .sum()
}

/// Converts a list of exact rationals to integers, if they all are.
pub fn to_integers(cs: &[BigRational]) -> Option<Vec<BigInt>> {
    cs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
}

/// True when every coefficient is a non-negative integer.
pub fn all_nonnegative_integers(cs: &[BigRational]) -> bool {
    cs.iter().all(|c| c.is_integer() && !c.is_negative())
}

/// Truncated product of two coefficient lists.
pub fn convolve(a: &[BigRational], b: &[BigRational], k_max: usize) -> Vec<BigRational> {
    (0..=k_max)
        .map(|k| {
            (0..=k)
                .filter(|&i| i < a.len() && k - i < b.len())
                .fold(BigRational::zero(), |acc, i| acc + &a[i] * &b[k - i])
        })
        .collect()
}

/// Shorthand for tests and callers that know the series is integral.
pub fn integer_series(f: &RationalFunction, p_value: u64, k_max: usize) -> Result<Vec<BigInt>> {
    let cs = series_expand(f, p_value, k_max)?;
    to_integers(&cs).ok_or_else(|| Error::InvalidInput("series has non-integer coefficients".into()))
}
