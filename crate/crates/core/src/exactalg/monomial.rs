use std::cmp::Ordering;
use std::fmt;

/// A symbolic variable.
///
/// The derived ordering is the fixed global order used for every
/// canonicalization: `p < t < q < z < X0 < X1 < … < Y1 < Y2 < …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// The prime.
    P,
    /// `p^{-s}`.
    T,
    /// Variable of flag-counting polynomials.
    Q,
    Z,
    X(u16),
    Y(u16),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::P => f.write_str("p"),
            Var::T => f.write_str("t"),
            Var::Q => f.write_str("q"),
            Var::Z => f.write_str("z"),
            Var::X(i) => write!(f, "X{i}"),
            Var::Y(i) => write!(f, "Y{i}"),
        }
    }
}

/// A Laurent monomial: a product of variables raised to integer powers.
///
/// Stored as a list of `(variable, exponent)` pairs sorted by variable with
/// no zero exponents, so the empty list is the monomial `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(Var, i64)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: Var) -> Self {
        Monomial::pow_of(v, 1)
    }

    pub fn pow_of(v: Var, e: i64) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial { exps: vec![(v, e)] }
        }
    }

    /// `p^a * t^b`.
    pub fn pt(a: i64, b: i64) -> Self {
        Monomial::from_pairs([(Var::P, a), (Var::T, b)])
    }

    /// Builds a monomial from arbitrary pairs; repeated variables multiply.
    pub fn from_pairs<I: IntoIterator<Item = (Var, i64)>>(pairs: I) -> Self {
        let mut exps: Vec<(Var, i64)> = pairs.into_iter().collect();
        exps.sort_by_key(|&(v, _)| v);
        let mut out: Vec<(Var, i64)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            match out.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => out.push((v, e)),
            }
        }
        out.retain(|&(_, e)| e != 0);
        Monomial { exps: out }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, v: Var) -> i64 {
        self.exps.binary_search_by_key(&v, |&(w, _)| w).map(|i| self.exps[i].1).unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, i64)> + '_ {
        self.exps.iter().copied()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.exps.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { exps: out }
    }

    pub fn inv(&self) -> Monomial {
        Monomial { exps: self.exps.iter().map(|&(v, e)| (v, -e)).collect() }
    }

    pub fn pow(&self, k: i64) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial { exps: self.exps.iter().map(|&(v, e)| (v, e * k)).collect() }
    }

    /// A monomial is canonical when its first non-zero exponent, in the
    /// fixed variable order, is positive. `1` is neither canonical nor
    /// anti-canonical.
    pub fn is_canonical(&self) -> bool {
        self.exps.first().is_some_and(|&(_, e)| e > 0)
    }
}

/// Compares dense exponent vectors lexicographically under the variable order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, e)), None) => return e.cmp(&0),
                (None, Some(&(_, f))) => return 0.cmp(&f),
                (Some(&(v, e)), Some(&(w, f))) => match v.cmp(&w) {
                    Ordering::Less => return e.cmp(&0),
                    Ordering::Greater => return 0.cmp(&f),
                    Ordering::Equal => {
                        if e != f {
                            return e.cmp(&f);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.write_str("1");
        }
        for (k, &(v, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_exponents_vanish() {
        let m = Monomial::pt(2, 1).mul(&Monomial::pt(-2, 0));
        assert_eq!(m, Monomial::var(Var::T));
        assert!(Monomial::pt(0, 0).is_one());
    }

    #[test]
    fn variable_order() {
        assert!(Var::P < Var::T && Var::T < Var::Q && Var::Q < Var::Z);
        assert!(Var::Z < Var::X(0) && Var::X(9) < Var::Y(1));
    }

    #[test]
    fn orientation() {
        assert!(Monomial::pt(1, 1).is_canonical());
        assert!(Monomial::pt(0, 1).is_canonical());
        assert!(!Monomial::pt(-1, 1).is_canonical());
        assert!(Monomial::pt(3, -2).is_canonical());
        assert!(!Monomial::one().is_canonical());
    }

    #[test]
    fn ordering_is_by_exponent_vector() {
        let one = Monomial::one();
        let t = Monomial::var(Var::T);
        let p = Monomial::var(Var::P);
        let pinv = Monomial::pow_of(Var::P, -1);
        assert!(pinv < one && one < t && t < p);
        assert!(Monomial::pt(1, 0) < Monomial::pt(1, 1));
    }

    #[test]
    fn display() {
        assert_eq!(Monomial::pt(3, 2).to_string(), "p^3*t^2");
        assert_eq!(Monomial::pt(-1, 1).to_string(), "p^-1*t");
        assert_eq!(Monomial::one().to_string(), "1");
        let m = Monomial::from_pairs([(Var::Y(2), 1), (Var::X(0), 2)]);
        assert_eq!(m.to_string(), "X0^2*Y2");
    }
}
