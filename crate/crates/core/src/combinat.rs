//! Permutations, descent sets, Coxeter length and flag-counting polynomials.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{LaurentPolynomial, Monomial, Var};

/// An element of the symmetric group `S_m`, stored as its image sequence
/// `(w(1), …, w(m))`.
///
/// Products compose left to right: `(u * v)(i) = v(u(i))`. With this
/// convention `w * w0` complements the images of `w`, so its descent set is
/// the complement of that of `w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m + 1];
        for &x in &images {
            if x == 0 || x > m || seen[x] {
                return Err(Error::InvalidInput(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(m: usize) -> Self {
        Permutation { images: (1..=m).collect() }
    }

    /// The order-reversing permutation, the longest element of `S_m`.
    pub fn longest(m: usize) -> Self {
        Permutation { images: (1..=m).rev().collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `w(i)` for `1 ≤ i ≤ m`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn descent_type(&self) -> FlagType {
        let set = (1..self.degree()).filter(|&i| self.apply(i) > self.apply(i + 1)).collect();
        FlagType { m: self.degree(), set }
    }

    /// Number of inversions.
    pub fn coxeter_length(&self) -> usize {
        let w = &self.images;
        (0..w.len()).map(|i| w[i + 1..].iter().filter(|&&y| y < w[i]).count()).sum()
    }

    /// Advances to the lexicographically next permutation in place.
    fn advance(&mut self) -> bool {
        let w = &mut self.images;
        let Some(i) = (1..w.len()).rev().find(|&i| w[i - 1] < w[i]) else {
            return false;
        };
        let j = (i..w.len()).rev().find(|&j| w[j] > w[i - 1]).expect("pivot exists");
        w.swap(i - 1, j);
        w[i..].reverse();
        true
    }
}

impl Mul for &Permutation {
    type Output = Permutation;
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        Permutation { images: self.images.iter().map(|&x| rhs.apply(x)).collect() }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All permutations of `S_m` in lexicographic order of image sequences.
pub fn permutations(m: usize) -> Permutations {
    Permutations { next: (m >= 1).then(|| Permutation::identity(m)) }
}

pub struct Permutations {
    next: Option<Permutation>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if succ.advance() {
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// A subset `I ⊆ {1, …, m-1}`, the dimension set of a flag in an
/// `m`-dimensional space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagType {
    m: usize,
    set: Vec<usize>,
}

impl FlagType {
    pub fn new(m: usize, mut set: Vec<usize>) -> Result<Self> {
        set.sort_unstable();
        set.dedup();
        if set.iter().any(|&i| i == 0 || i >= m) {
            return Err(Error::InvalidInput(format!("{set:?} is not a subset of [1, {}]", m.saturating_sub(1))));
        }
        Ok(FlagType { m, set })
    }

    pub fn empty(m: usize) -> Self {
        FlagType { m, set: Vec::new() }
    }

    pub fn full(m: usize) -> Self {
        FlagType { m, set: (1..m).collect() }
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn elements(&self) -> &[usize] {
        &self.set
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.set.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &FlagType) -> bool {
        self.set.iter().all(|&i| other.contains(i))
    }

    pub fn complement(&self) -> FlagType {
        FlagType { m: self.m, set: (1..self.m).filter(|&i| !self.contains(i)).collect() }
    }

    fn from_mask(m: usize, mask: u64) -> FlagType {
        FlagType { m, set: (1..m).filter(|&i| mask >> (i - 1) & 1 == 1).collect() }
    }

    /// All `2^{m-1}` subsets of `[m-1]`, ordered by bitmask.
    pub fn all(m: usize) -> impl Iterator<Item = FlagType> {
        let bits = m.saturating_sub(1);
        assert!(bits < 64, "rank too large");
        (0..1u64 << bits).map(move |mask| FlagType::from_mask(m, mask))
    }

    /// All subsets of `self`.
    pub fn subsets(&self) -> impl Iterator<Item = FlagType> + '_ {
        FlagType::all(self.m).filter(move |s| s.is_subset_of(self))
    }

    /// All `J` with `self ⊆ J ⊆ [m-1]`.
    pub fn supersets(&self) -> impl Iterator<Item = FlagType> + '_ {
        FlagType::all(self.m).filter(move |s| self.is_subset_of(s))
    }
}

impl fmt::Display for FlagType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.set.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

fn poly_in_q(coeffs: &[BigInt]) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(
        coeffs.iter().enumerate().map(|(k, c)| (Monomial::pow_of(Var::Q, k as i64), c.clone())),
    )
}

/// Coefficient list of the Gaussian binomial `[a choose b]_q`.
fn gaussian_coeffs(a: usize, b: usize) -> Vec<BigInt> {
    // rows of the q-Pascal triangle: [a,b] = [a-1,b-1] + q^b [a-1,b]
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    for n in 1..=a {
        let mut next: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut c = vec![BigInt::zero(); k * (n - k) + 1];
            if k >= 1 {
                for (i, x) in row[k - 1].iter().enumerate() {
                    c[i] += x;
                }
            }
            if k < n {
                for (i, x) in row[k].iter().enumerate() {
                    c[i + k] += x;
                }
            }
            next.push(c);
        }
        row = next;
    }
    row.swap_remove(b)
}

/// The Gaussian binomial coefficient `[a choose b]` as a polynomial in `q`.
pub fn gaussian_binomial(a: usize, b: usize) -> Result<LaurentPolynomial> {
    if b > a {
        return Err(Error::InvalidInput(format!("gaussian binomial [{a} choose {b}] needs b <= a")));
    }
    Ok(poly_in_q(&gaussian_coeffs(a, b)))
}

/// `b_{m,I}(q)`: the number of flags of type `I` in `F_q^m`, computed as the
/// telescoping product `[m, i_l] [i_l, i_{l-1}] … [i_2, i_1]`.
pub fn flag_poly(ft: &FlagType) -> LaurentPolynomial {
    let mut dims: Vec<usize> = ft.elements().to_vec();
    dims.push(ft.rank());
    dims.windows(2)
        .fold(LaurentPolynomial::one(), |acc, w| &acc * &gaussian_binomial(w[1], w[0]).expect("increasing dimensions"))
}

/// `Σ q^{l(w)}` over `w ∈ S_m` whose descent set lies inside `I`. Equals
/// [`flag_poly`]; kept as an independent cross-check.
pub fn flag_poly_via_descents(ft: &FlagType) -> LaurentPolynomial {
    let mut coeffs: Vec<BigInt> = Vec::new();
    for w in permutations(ft.rank()) {
        if w.descent_type().is_subset_of(ft) {
            let l = w.coxeter_length();
            if coeffs.len() <= l {
                coeffs.resize(l + 1, BigInt::zero());
            }
            coeffs[l] += 1;
        }
    }
    poly_in_q(&coeffs)
}

/// Poincaré polynomial `Σ_{w ∈ S_m} q^{l(w)}`.
pub fn poincare_polynomial(m: usize) -> LaurentPolynomial {
    flag_poly_via_descents(&FlagType::full(m))
}
