use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::hnf::{hnf_enumerate, HnfBasis};
use crate::combinat::FlagType;
use crate::error::{Error, Result};
use crate::exactalg::{evaluate_at_p, rational_pow};
use crate::formulas::flag_poly_at_p_inverse;

/// Elementary divisor type `(I, r)` of a sublattice of `Z_p^m`.
///
/// With `I = {i_1 < … < i_l}`, the divisors are `p^{r_0}` repeated `i_1`
/// times, `p^{r_0 + r_{i_1}}` repeated `i_2 - i_1` times, and so on. Here
/// `r_0 ≥ 0` and `r_i ≥ 1` for `i ∈ I`, so every lattice has exactly one type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeVector {
    flag: FlagType,
    r0: u32,
    /// `r_i` for `i ∈ I`, aligned with `flag.elements()`.
    steps: Vec<u32>,
}

impl TypeVector {
    pub fn new(flag: FlagType, r0: u32, steps: Vec<u32>) -> Result<Self> {
        if steps.len() != flag.len() || steps.contains(&0) {
            return Err(Error::InvalidInput(format!(
                "type over {flag} needs one positive step per element, got {steps:?}"
            )));
        }
        Ok(TypeVector { flag, r0, steps })
    }

    /// Reads the type off ascending divisor exponents `a_1 ≤ … ≤ a_m`.
    pub fn from_divisor_exponents(exps: &[u32]) -> Result<Self> {
        let m = exps.len();
        if m == 0 || exps.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidInput(format!("{exps:?} is not a non-empty ascending sequence")));
        }
        let mut set = Vec::new();
        let mut steps = Vec::new();
        for i in 1..m {
            if exps[i] > exps[i - 1] {
                set.push(i);
                steps.push(exps[i] - exps[i - 1]);
            }
        }
        Ok(TypeVector { flag: FlagType::new(m, set)?, r0: exps[0], steps })
    }

    pub fn rank(&self) -> usize {
        self.flag.rank()
    }

    pub fn flag(&self) -> &FlagType {
        &self.flag
    }

    /// `(i, r_i)` over `I_0 = {0} ∪ I` in ascending order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        std::iter::once((0, self.r0)).chain(self.flag.elements().iter().copied().zip(self.steps.iter().copied()))
    }

    pub fn r_total(&self) -> u32 {
        self.entries().map(|(_, r)| r).sum()
    }

    /// Ascending divisor exponents.
    pub fn divisor_exponents(&self) -> Vec<u32> {
        let m = self.rank();
        let mut out = Vec::with_capacity(m);
        let mut level = 0;
        let entries: Vec<(usize, u32)> = self.entries().collect();
        for (k, &(i, r)) in entries.iter().enumerate() {
            level += r;
            let next = entries.get(k + 1).map_or(m, |&(j, _)| j);
            out.extend(std::iter::repeat_n(level, next - i));
        }
        out
    }

    /// `log_p` of the index: `Σ_{i ∈ I_0} r_i (m - i)`.
    pub fn index_exponent(&self) -> u32 {
        let m = self.rank();
        self.entries().map(|(i, r)| r * (m - i) as u32).sum()
    }

    /// Every type over rank `m` whose index is at most `p^max_exponent`.
    pub fn all(m: usize, max_exponent: u32) -> Vec<TypeVector> {
        let mut out = Vec::new();
        for flag in FlagType::all(m) {
            let weights: Vec<u32> = flag.elements().iter().map(|&i| (m - i) as u32).collect();
            let mut steps = vec![1u32; weights.len()];
            'outer: loop {
                let used: u32 = steps.iter().zip(&weights).map(|(r, w)| r * w).sum();
                if used <= max_exponent {
                    for r0 in 0..=(max_exponent - used) / m as u32 {
                        out.push(TypeVector { flag: flag.clone(), r0, steps: steps.clone() });
                    }
                }
                for k in 0..steps.len() {
                    steps[k] += 1;
                    let used: u32 = steps.iter().zip(&weights).map(|(r, w)| r * w).sum();
                    if used <= max_exponent {
                        continue 'outer;
                    }
                    steps[k] = 1;
                }
                break;
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = self.entries().map(|(i, r)| format!("r{i}={r}")).collect();
        write!(f, "(I={}, {})", self.flag, r.join(", "))
    }
}

/// Absolute values of the Smith normal form diagonal of a square integer
/// matrix, ascending.
pub fn smith_diagonal(rows: &[Vec<i64>]) -> Vec<u128> {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let n = a.len();
    let mut diag = Vec::with_capacity(n);
    'pivots: for t in 0..n {
        loop {
            // smallest non-zero entry of the trailing block becomes the pivot
            let pick = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pick else {
                diag.extend(std::iter::repeat_n(0, n - t));
                break 'pivots;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let pivot = a[t][t];
            let mut clean = true;
            for i in t + 1..n {
                let q = a[i][t] / pivot;
                for j in t..n {
                    a[i][j] -= q * a[t][j];
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let q = a[t][j] / pivot;
                for i in t..n {
                    a[i][j] -= q * a[i][t];
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // the pivot has to divide the whole trailing block
            if let Some(i) = (t + 1..n).find(|&i| (t + 1..n).any(|j| a[i][j] % pivot != 0)) {
                for j in t..n {
                    let v = a[i][j];
                    a[t][j] += v;
                }
                continue;
            }
            diag.push(pivot.unsigned_abs());
            break;
        }
    }
    diag.sort_unstable();
    diag
}

fn valuation(mut x: u128, p: u64) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let p = p as u128;
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    (x == 1).then_some(v)
}

/// Elementary divisor type of a sublattice whose index is a power of `p`.
pub fn elementary_divisor_type(b: &HnfBasis, p: u64) -> Result<TypeVector> {
    if p < 2 {
        return Err(Error::InvalidInput(format!("p must be a prime, got {p}")));
    }
    let exps: Vec<u32> = smith_diagonal(b.rows())
        .into_iter()
        .map(|x| valuation(x, p).ok_or_else(|| Error::NotPrimePower { index: b.index().to_string(), p }))
        .collect::<Result<_>>()?;
    TypeVector::from_divisor_exponents(&exps)
}

/// `f(I, r, p) = b_{m,I}(p^{-1}) · p^{Σ_{i ∈ I_0} r_i (m - i) i}`.
pub fn formula_count(tv: &TypeVector, p: u64) -> Result<BigInt> {
    let m = tv.rank() as i64;
    let pb = BigInt::from(p);
    let b = evaluate_at_p(&flag_poly_at_p_inverse(tv.flag()), p)?;
    let e: i64 = tv.entries().map(|(i, r)| r as i64 * (m - i as i64) * i as i64).sum();
    let value = b * rational_pow(&pb, e);
    if !value.is_integer() {
        return Err(Error::InvalidInput(format!("type count for {tv} is not an integer: {value}")));
    }
    Ok(value.to_integer())
}

/// Census histogram of elementary divisor types among sublattices of index `p^k` in `Z^m`.
pub fn type_census(m: usize, p: u64, k: u32) -> Result<BTreeMap<TypeVector, u64>> {
    let mut out = BTreeMap::new();
    for b in hnf_enumerate(m, p, k)? {
        *out.entry(elementary_divisor_type(&b, p)?).or_insert(0) += 1;
    }
    Ok(out)
}

/// `(formula count, census count)` for one type.
pub fn type_count_check(m: usize, tv: &TypeVector, p: u64) -> Result<(BigInt, u64)> {
    if tv.rank() != m {
        return Err(Error::InvalidInput(format!("type {tv} is not over rank {m}")));
    }
    let census = hnf_enumerate(m, p, tv.index_exponent())?
        .map(|b| elementary_divisor_type(&b, p))
        .filter(|t| t.as_ref().is_ok_and(|t| t == tv))
        .count() as u64;
    Ok((formula_count(tv, p)?, census))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::hnf::sublattice_count;

    fn diag(v: &[i64]) -> HnfBasis {
        let d = v.len();
        HnfBasis::new((0..d).map(|i| (0..d).map(|j| if i == j { v[i] } else { 0 }).collect()).collect()).unwrap()
    }

    #[test]
    fn types_of_diagonal_lattices() {
        let t = elementary_divisor_type(&HnfBasis::identity(2), 2).unwrap();
        assert_eq!(t, TypeVector::new(FlagType::empty(2), 0, vec![]).unwrap());
        let t = elementary_divisor_type(&diag(&[1, 2]), 2).unwrap();
        assert_eq!(t, TypeVector::new(FlagType::full(2), 0, vec![1]).unwrap());
        let t = elementary_divisor_type(&diag(&[2, 4, 4]), 2).unwrap();
        assert_eq!(t, TypeVector::new(FlagType::new(3, vec![1]).unwrap(), 1, vec![1]).unwrap());
        assert_eq!(t.divisor_exponents(), vec![1, 2, 2]);
        assert_eq!(t.index_exponent(), 5);
    }

    #[test]
    fn non_prime_power_rejected() {
        assert!(matches!(elementary_divisor_type(&diag(&[1, 6]), 2), Err(Error::NotPrimePower { .. })));
    }

    #[test]
    fn smith_of_non_diagonal() {
        // rows (2,1),(0,2): index 4, divisors (1,4)
        assert_eq!(smith_diagonal(&[vec![2, 1], vec![0, 2]]), vec![1, 4]);
        assert_eq!(smith_diagonal(&[vec![2, 0], vec![0, 2]]), vec![2, 2]);
        assert_eq!(smith_diagonal(&[vec![4, 2, 0], vec![0, 6, 0], vec![0, 0, 2]]), vec![2, 2, 12]);
    }

    #[test]
    fn formula_examples() {
        for p in [2u64, 3, 5] {
            let tv = TypeVector::new(FlagType::full(2), 0, vec![1]).unwrap();
            let (f, c) = type_count_check(2, &tv, p).unwrap();
            assert_eq!(f, BigInt::from(p + 1));
            assert_eq!(c, p + 1);
        }
        for m in 1..=3 {
            for r0 in 0..=2 {
                let tv = TypeVector::new(FlagType::empty(m), r0, vec![]).unwrap();
                let (f, c) = type_count_check(m, &tv, 2).unwrap();
                assert_eq!((f, c), (BigInt::from(1), 1));
            }
        }
        let tv = TypeVector::new(FlagType::new(3, vec![2]).unwrap(), 0, vec![1]).unwrap();
        assert_eq!(tv.divisor_exponents(), vec![0, 0, 1]);
        let (f, c) = type_count_check(3, &tv, 2).unwrap();
        // lattices of index 2 in Z^3: all have divisors (1,1,2)
        assert_eq!((f, c), (BigInt::from(7), 7));
    }

    #[test]
    fn type_enumeration_partitions_lattices() {
        for m in 1..=3 {
            let types = TypeVector::all(m, 3);
            for p in [2u64, 3] {
                for k in 0..=3 {
                    let census = type_census(m, p, k).unwrap();
                    let listed: Vec<&TypeVector> = types.iter().filter(|t| t.index_exponent() == k).collect();
                    assert_eq!(census.len(), listed.len());
                    let total: BigInt = listed.iter().map(|t| formula_count(t, p).unwrap()).sum();
                    assert_eq!(total, BigInt::from(sublattice_count(m, p, k).unwrap()));
                }
            }
        }
    }

    #[test]
    fn round_trip_divisors() {
        for tv in TypeVector::all(3, 4) {
            assert_eq!(TypeVector::from_divisor_exponents(&tv.divisor_exponents()).unwrap(), tv);
        }
    }
}
