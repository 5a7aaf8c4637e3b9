use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::monomial::Monomial;
use super::poly::LaurentPolynomial;
use crate::error::{Error, Result};

/// A rational function `numerator / Π (1 - M_k)^{e_k}`.
///
/// Denominator monomials are always canonical (see
/// [`Monomial::is_canonical`]). No gcd is ever taken: equality of values is
/// decided by [`RationalFunction::value_eq`] through cross-multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    numerator: LaurentPolynomial,
    denominator: BTreeMap<Monomial, u32>,
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self::from_poly(LaurentPolynomial::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPolynomial::one())
    }

    pub fn from_poly(numerator: LaurentPolynomial) -> Self {
        RationalFunction { numerator, denominator: BTreeMap::new() }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::from_poly(LaurentPolynomial::monomial(m))
    }

    /// Builds `numerator / Π (1 - M)` from arbitrary (possibly anti-canonical)
    /// factors, re-orienting each via `(1 - M) = -M (1 - M^{-1})`.
    pub fn new<I>(numerator: LaurentPolynomial, factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Monomial>,
    {
        let mut f = Self::from_poly(numerator);
        for m in factors {
            f.push_factor(m, 1)?;
        }
        Ok(f)
    }

    /// `1 / (1 - m)`.
    pub fn geometric(m: Monomial) -> Result<Self> {
        Self::new(LaurentPolynomial::one(), [m])
    }

    /// `m / (1 - m)`.
    pub fn underline(m: Monomial) -> Result<Self> {
        Self::new(LaurentPolynomial::monomial(m.clone()), [m])
    }

    fn push_factor(&mut self, m: Monomial, mult: u32) -> Result<()> {
        if m.is_one() {
            return Err(Error::ZeroFactor);
        }
        if mult == 0 {
            return Ok(());
        }
        let m = if m.is_canonical() {
            m
        } else {
            // 1/(1-M) = -M^{-1} / (1-M^{-1})
            let inv = m.inv();
            let unit = LaurentPolynomial::term(-1, inv.clone()).pow(mult);
            self.numerator = &self.numerator * &unit;
            inv
        };
        *self.denominator.entry(m).or_insert(0) += mult;
        Ok(())
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.numerator
    }

    /// Canonical denominator monomials with multiplicities, in ascending order.
    pub fn denominator(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.denominator.iter().map(|(m, &e)| (m, e))
    }

    pub fn denominator_len(&self) -> usize {
        self.denominator.values().map(|&e| e as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// `Π (1 - M)^e` over the given multiset.
    fn expand(factors: &BTreeMap<Monomial, u32>) -> LaurentPolynomial {
        factors.iter().fold(LaurentPolynomial::one(), |acc, (m, &e)| &acc * &LaurentPolynomial::one_minus(m).pow(e))
    }

    /// The multiset difference `a \ b`.
    fn difference(a: &BTreeMap<Monomial, u32>, b: &BTreeMap<Monomial, u32>) -> BTreeMap<Monomial, u32> {
        a.iter()
            .filter_map(|(m, &e)| {
                let d = e.saturating_sub(b.get(m).copied().unwrap_or(0));
                (d > 0).then(|| (m.clone(), d))
            })
            .collect()
    }

    /// True iff `self` and `other` are the same rational function.
    pub fn value_eq(&self, other: &RationalFunction) -> bool {
        let lhs = &self.numerator * &Self::expand(&Self::difference(&other.denominator, &self.denominator));
        let rhs = &other.numerator * &Self::expand(&Self::difference(&self.denominator, &other.denominator));
        lhs == rhs
    }

    pub fn scale<C: Into<BigInt>>(&self, c: C) -> Self {
        RationalFunction { numerator: self.numerator.scale(c), denominator: self.denominator.clone() }
    }

    pub fn mul_poly(&self, p: &LaurentPolynomial) -> Self {
        RationalFunction { numerator: &self.numerator * p, denominator: self.denominator.clone() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        RationalFunction { numerator: self.numerator.mul_monomial(m), denominator: self.denominator.clone() }
    }

    /// Applies a monomial map to numerator and factors alike.
    pub(crate) fn map_monomials<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&Monomial) -> Monomial,
    {
        let mut out = Self::from_poly(self.numerator.map_monomials(&mut f));
        for (m, &e) in &self.denominator {
            let image = f(m);
            if image.is_one() {
                return Err(Error::DegenerateSubstitution(m.clone()));
            }
            out.push_factor(image, e)?;
        }
        Ok(out)
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a RationalFunction>>(items: I) -> Self {
        items.into_iter().fold(Self::zero(), |acc, f| &acc + f)
    }

    pub fn product<'a, I: IntoIterator<Item = &'a RationalFunction>>(items: I) -> Self {
        items.into_iter().fold(Self::one(), |acc, f| &acc * f)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;

    /// The denominator is the multiset union at maximum multiplicity.
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let mut denominator = self.denominator.clone();
        for (m, &e) in &rhs.denominator {
            let slot = denominator.entry(m.clone()).or_insert(0);
            *slot = (*slot).max(e);
        }
        let a =
            &self.numerator * &RationalFunction::expand(&RationalFunction::difference(&denominator, &self.denominator));
        let b =
            &rhs.numerator * &RationalFunction::expand(&RationalFunction::difference(&denominator, &rhs.denominator));
        RationalFunction { numerator: a + b, denominator }
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { numerator: -&self.numerator, denominator: self.denominator.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        let mut denominator = self.denominator.clone();
        for (m, &e) in &rhs.denominator {
            *denominator.entry(m.clone()).or_insert(0) += e;
        }
        RationalFunction { numerator: &self.numerator * &rhs.numerator, denominator }
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

impl From<LaurentPolynomial> for RationalFunction {
    fn from(p: LaurentPolynomial) -> Self {
        RationalFunction::from_poly(p)
    }
}

/// Renders as `(N) / ((1 - M1)*(1 - M2)^2)`; see `docs/grammar.md`.
impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.numerator)?;
        if self.denominator.is_empty() {
            return Ok(());
        }
        f.write_str(" / (")?;
        for (k, (m, &e)) in self.denominator.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "(1 - {m})")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Var;
    use proptest::prelude::*;

    fn t() -> Monomial {
        Monomial::var(Var::T)
    }

    fn x(i: u16) -> Monomial {
        Monomial::var(Var::X(i))
    }

    #[test]
    fn geometric_identity() {
        let lhs = &RationalFunction::underline(x(0)).unwrap() + &RationalFunction::one();
        assert!(lhs.value_eq(&RationalFunction::geometric(x(0)).unwrap()));
    }

    #[test]
    fn adding_zero_is_identity() {
        let f = RationalFunction::underline(t()).unwrap();
        assert_eq!(&f + &RationalFunction::zero(), f);
    }

    #[test]
    fn shared_factor_counted_once() {
        let a = RationalFunction::geometric(t()).unwrap();
        let b = RationalFunction::underline(t()).unwrap();
        let s = &a + &b;
        assert_eq!(s.denominator_len(), 1);
        let expected = RationalFunction::new(LaurentPolynomial::one() + LaurentPolynomial::var(Var::T), [t()]).unwrap();
        assert_eq!(s, expected);
    }

    #[test]
    fn product_cancels_under_value_eq() {
        let g = RationalFunction::geometric(t()).unwrap();
        let h = RationalFunction::from_poly(LaurentPolynomial::one_minus(&t()));
        assert!((&g * &h).value_eq(&RationalFunction::one()));
        let f = RationalFunction::underline(x(1)).unwrap();
        assert_eq!(&f * &RationalFunction::one(), f);
    }

    #[test]
    fn product_concatenates_denominators() {
        let a = RationalFunction::geometric(Monomial::pt(1, 1)).unwrap();
        let b = RationalFunction::geometric(Monomial::pt(2, 2)).unwrap();
        let c = &a * &b;
        let den: Vec<_> = c.denominator().map(|(m, e)| (m.clone(), e)).collect();
        assert_eq!(den, vec![(Monomial::pt(1, 1), 1), (Monomial::pt(2, 2), 1)]);
    }

    #[test]
    fn inverse_underline() {
        // underline(Z^{-1}) = -(1 + underline(Z))
        let z = Monomial::var(Var::Z);
        let lhs = RationalFunction::underline(z.inv()).unwrap();
        let rhs = -(&RationalFunction::one() + &RationalFunction::underline(z).unwrap());
        assert!(lhs.value_eq(&rhs));
    }

    #[test]
    fn distinct_geometric_factors_differ() {
        let a = RationalFunction::geometric(t()).unwrap();
        let b = RationalFunction::geometric(Monomial::pt(1, 1)).unwrap();
        assert!(!a.value_eq(&b));
    }

    #[test]
    fn two_variable_identity() {
        // (1 - X0 Y1) / ((1-X0)(1-Y1)) = 1 + X0/(1-X0) + Y1/(1-Y1)
        let y1 = Monomial::var(Var::Y(1));
        let lhs = RationalFunction::new(LaurentPolynomial::one_minus(&x(0).mul(&y1)), [x(0), y1.clone()]).unwrap();
        let rhs = RationalFunction::sum(&[
            RationalFunction::one(),
            RationalFunction::underline(x(0)).unwrap(),
            RationalFunction::underline(y1).unwrap(),
        ]);
        assert!(lhs.value_eq(&rhs));
    }

    #[test]
    fn zero_factor_rejected() {
        assert_eq!(RationalFunction::geometric(Monomial::one()), Err(Error::ZeroFactor));
    }

    #[test]
    fn display_form() {
        let f = RationalFunction::new(
            LaurentPolynomial::one_minus(&Monomial::pt(3, 3)),
            [t(), Monomial::pt(1, 1), Monomial::pt(1, 1)],
        )
        .unwrap();
        assert_eq!(f.to_string(), "(1 - p^3*t^3) / ((1 - t)*(1 - p*t)^2)");
    }

    fn arb_monomial() -> impl Strategy<Value = Monomial> {
        (-2i64..=2, -2i64..=2, -1i64..=1)
            .prop_map(|(a, b, c)| Monomial::from_pairs([(Var::P, a), (Var::T, b), (Var::X(0), c)]))
    }

    fn arb_rat() -> impl Strategy<Value = RationalFunction> {
        (
            prop::collection::vec((-2i64..=2, arb_monomial()), 0..4),
            prop::collection::vec(arb_monomial().prop_filter("non-unit", |m| !m.is_one()), 0..3),
        )
            .prop_map(|(ts, fs)| {
                let num = LaurentPolynomial::from_terms(ts.into_iter().map(|(c, m)| (m, BigInt::from(c))));
                RationalFunction::new(num, fs).unwrap()
            })
    }

    proptest! {
        #[test]
        fn reorientation_preserves_value(m in arb_monomial().prop_filter("non-unit", |m| !m.is_one())) {
            // Compare 1/(1-M) against the explicit unit-moved form, cleared by hand.
            let f = RationalFunction::geometric(m.clone()).unwrap();
            // f * (1 - M) must be 1.
            let back = f.mul_poly(&LaurentPolynomial::one_minus(&m));
            prop_assert!(back.value_eq(&RationalFunction::one()));
            for (den, _) in f.denominator() {
                prop_assert!(den.is_canonical());
            }
        }

        #[test]
        fn value_eq_is_an_equivalence(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert!(a.value_eq(&a));
            prop_assert_eq!(a.value_eq(&b), b.value_eq(&a));
            // a ~ a + b - b, and transitivity through that representative
            let a2 = &(&a + &b) - &b;
            let a3 = &(&a * &c) + &(&a * &(-&c));
            let a3 = &a3 + &a;
            prop_assert!(a.value_eq(&a2));
            prop_assert!(a2.value_eq(&a3));
            prop_assert!(a.value_eq(&a3));
        }

        #[test]
        fn value_eq_respects_operations(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            let a2 = &(&a + &b) - &b;
            prop_assert!((&a + &c).value_eq(&(&a2 + &c)));
            prop_assert!((&a * &c).value_eq(&(&a2 * &c)));
        }
    }
}
