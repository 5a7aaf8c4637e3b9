use std::fmt;

use crate::error::{Error, Result};

/// Row-style Hermite normal form of a full-rank sublattice of `Z^d`.
///
/// Row `i` starts at column `i` with a positive pivot, and every entry
/// above a pivot is reduced into `[0, pivot)`. Each finite-index sublattice
/// has exactly one such basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HnfBasis {
    rows: Vec<Vec<i64>>,
}

impl HnfBasis {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let d = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(Error::InvalidInput("basis matrix must be square".into()));
            }
            if row[..i].iter().any(|&x| x != 0) || row[i] <= 0 {
                return Err(Error::InvalidInput(format!("row {i} is not in echelon form")));
            }
        }
        for j in 0..d {
            if (0..j).any(|i| rows[i][j] < 0 || rows[i][j] >= rows[j][j]) {
                return Err(Error::InvalidInput(format!("column {j} is not reduced")));
            }
        }
        Ok(HnfBasis { rows })
    }

    pub fn identity(d: usize) -> Self {
        HnfBasis { rows: (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn index(&self) -> u128 {
        self.rows.iter().enumerate().map(|(i, r)| r[i] as u128).product()
    }

    /// Whether `v` is an integer combination of the rows.
    pub fn contains(&self, v: &[i128]) -> bool {
        assert_eq!(v.len(), self.dim(), "dimension mismatch");
        let mut rest = v.to_vec();
        for (i, row) in self.rows.iter().enumerate() {
            let pivot = row[i] as i128;
            if rest[i] % pivot != 0 {
                return false;
            }
            let c = rest[i] / pivot;
            if c != 0 {
                for j in i..rest.len() {
                    rest[j] -= c * row[j] as i128;
                }
            }
        }
        true
    }
}

impl fmt::Display for HnfBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// All compositions of `k` into `d` non-negative parts, lexicographically.
pub fn compositions(k: u32, d: usize) -> Vec<Vec<u32>> {
    fn go(k: u32, d: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if d == 1 {
            prefix.push(k);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=k {
            prefix.push(e);
            go(k - e, d - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(k, d, &mut Vec::with_capacity(d), &mut out);
    out
}

/// All HNF bases with a fixed diagonal `p^{e_1}, …, p^{e_d}`; the entries
/// above the diagonal run odometer-style.
pub struct CompositionLattices {
    current: Vec<Vec<i64>>,
    /// `(row, col, modulus)` for each free entry, fastest first.
    slots: Vec<(usize, usize, i64)>,
    done: bool,
}

impl CompositionLattices {
    pub fn new(p: u64, exponents: &[u32]) -> Result<Self> {
        let d = exponents.len();
        let mut current = vec![vec![0i64; d]; d];
        let mut slots = Vec::new();
        for (j, &e) in exponents.iter().enumerate() {
            let pivot = i64::try_from(p)
                .ok()
                .and_then(|p| p.checked_pow(e))
                .ok_or_else(|| Error::InvalidInput(format!("{p}^{e} overflows")))?;
            current[j][j] = pivot;
            if pivot > 1 {
                slots.extend((0..j).map(|i| (i, j, pivot)));
            }
        }
        Ok(CompositionLattices { current, slots, done: false })
    }

    /// Number of bases this iterator yields.
    pub fn count_total(&self) -> u128 {
        self.slots.iter().map(|&(_, _, m)| m as u128).product()
    }
}

impl Iterator for CompositionLattices {
    type Item = HnfBasis;

    fn next(&mut self) -> Option<HnfBasis> {
        if self.done {
            return None;
        }
        let out = HnfBasis { rows: self.current.clone() };
        self.done = true;
        for &(i, j, m) in &self.slots {
            self.current[i][j] += 1;
            if self.current[i][j] < m {
                self.done = false;
                break;
            }
            self.current[i][j] = 0;
        }
        Some(out)
    }
}

/// Every sublattice of `Z^d` of index exactly `p^k`, each once.
pub fn hnf_enumerate(d: usize, p: u64, k: u32) -> Result<impl Iterator<Item = HnfBasis>> {
    let parts: Vec<CompositionLattices> =
        compositions(k, d).iter().map(|c| CompositionLattices::new(p, c)).collect::<Result<_>>()?;
    Ok(parts.into_iter().flatten())
}

/// Number of sublattices of index `p^k` in `Z^d`, by counting HNF shapes.
pub fn sublattice_count(d: usize, p: u64, k: u32) -> Result<u128> {
    compositions(k, d).iter().map(|c| CompositionLattices::new(p, c).map(|it| it.count_total())).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{integer_series, LaurentPolynomial, Monomial, RationalFunction};
    use num_bigint::BigInt;
    use std::collections::HashSet;

    #[test]
    fn small_counts() {
        assert_eq!(hnf_enumerate(2, 2, 1).unwrap().count(), 3);
        assert_eq!(hnf_enumerate(3, 2, 1).unwrap().count(), 7);
        assert_eq!(hnf_enumerate(2, 3, 2).unwrap().count(), 13);
        assert_eq!(hnf_enumerate(4, 2, 0).unwrap().collect::<Vec<_>>(), vec![HnfBasis::identity(4)]);
    }

    #[test]
    fn totals_match_abelian_zeta() {
        for d in 1..=5 {
            let zeta =
                RationalFunction::new(LaurentPolynomial::one(), (0..d as i64).map(|i| Monomial::pt(i, 1))).unwrap();
            for p in [2u64, 3] {
                let series = integer_series(&zeta, p, 4).unwrap();
                for k in 0..=4u32 {
                    let total = sublattice_count(d, p, k).unwrap();
                    assert_eq!(BigInt::from(total), series[k as usize], "d={d} p={p} k={k}");
                    if total > 20_000 {
                        continue;
                    }
                    let listed: Vec<HnfBasis> = hnf_enumerate(d, p, k).unwrap().collect();
                    assert_eq!(listed.len() as u128, total);
                    let distinct: HashSet<_> = listed.iter().collect();
                    assert_eq!(distinct.len(), listed.len());
                    for b in &listed {
                        assert_eq!(b.index(), (p as u128).pow(k));
                        assert!(HnfBasis::new(b.rows().to_vec()).is_ok());
                    }
                }
            }
        }
    }

    #[test]
    fn membership() {
        let id = HnfBasis::identity(3);
        assert!(id.contains(&[5, -7, 2]));
        let b = HnfBasis::new(vec![vec![2, 1, 0], vec![0, 3, 0], vec![0, 0, 3]]).unwrap();
        assert!(!b.contains(&[1, 0, 0]));
        assert!(!b.contains(&[2, 0, 0]));
        assert!(b.contains(&[2, 4, 0]));
        assert!(b.contains(&[4, -1, 6]));
        assert!(!b.contains(&[0, 0, 1]));
    }

    #[test]
    fn rejects_unreduced() {
        assert!(HnfBasis::new(vec![vec![1, 2], vec![0, 2]]).is_err());
        assert!(HnfBasis::new(vec![vec![1, 0], vec![1, 2]]).is_err());
    }

    #[test]
    fn compositions_lex() {
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(compositions(3, 3).len(), 10);
    }
}
