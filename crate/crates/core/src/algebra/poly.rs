//! Sparse multivariate polynomials over the rationals in named formal
//! parameters (the bundle constants `c`).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::expr::{parse_sum, Atom};
use super::rational::Rational;
use crate::error::{Error, Result};

/// A monomial in the parameters: sorted `(name, exponent)` pairs with
/// positive exponents. The empty monomial is the constant `1`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of the alphabetically first parameter where the two differ.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(String, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        Monomial(vec![(name.to_string(), 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(String, u32)] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut merged: BTreeMap<&str, u32> = BTreeMap::new();
        for (n, e) in self.0.iter().chain(&other.0) {
            *merged.entry(n).or_default() += e;
        }
        Monomial(merged.into_iter().map(|(n, e)| (n.to_string(), e)).collect())
    }

    fn from_factors(factors: impl IntoIterator<Item = (String, u32)>) -> Monomial {
        let mut merged: BTreeMap<String, u32> = BTreeMap::new();
        for (n, e) in factors {
            if e > 0 {
                *merged.entry(n).or_default() += e;
            }
        }
        Monomial(merged.into_iter().collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
            loop {
                match (a.peek(), b.peek()) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some((na, ea)), Some((nb, eb))) => match na.cmp(nb) {
                        // `self` carries a parameter `other` lacks entirely.
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {
                            if ea != eb {
                                return ea.cmp(eb);
                            }
                            a.next();
                            b.next();
                        }
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(n, e)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// A polynomial with rational coefficients in named parameters.
///
/// Canonical: no stored zero coefficients, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(r: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), r);
        p
    }

    /// The formal parameter `name`.
    pub fn var(name: &str) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::var(name), Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(r)` when the polynomial has no parameter dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a given monomial (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, r: Rational) {
        if r.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(r);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += r;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> ParamPoly {
        if r.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> ParamPoly {
        let mut acc = ParamPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Every parameter occurring with a nonzero coefficient.
    pub fn params(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(n, _)| n.clone()))
            .collect()
    }

    /// Total degrees of the monomials that occur.
    pub fn degrees(&self) -> BTreeSet<u32> {
        self.terms.keys().map(Monomial::degree).collect()
    }

    /// Substitutes a rational for every parameter.
    pub fn specialize(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (name, e) in &m.0 {
                let x = assignment
                    .get(name)
                    .ok_or_else(|| Error::MissingParameter(name.clone()))?;
                v *= num_traits::pow(x.clone(), *e as usize);
            }
            total += v;
        }
        Ok(total)
    }

    /// Substitutes the given parameters and leaves the others formal.
    pub fn substitute(&self, assignment: &BTreeMap<String, Rational>) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            let mut rest = Vec::new();
            for (name, e) in &m.0 {
                match assignment.get(name) {
                    Some(x) => v *= num_traits::pow(x.clone(), *e as usize),
                    None => rest.push((name.clone(), *e)),
                }
            }
            out.add_term(Monomial(rest), v);
        }
        out
    }
}

impl From<Rational> for ParamPoly {
    fn from(r: Rational) -> Self {
        ParamPoly::constant(r)
    }
}

impl From<i64> for ParamPoly {
    fn from(n: i64) -> Self {
        ParamPoly::constant(Rational::from_integer(n.into()))
    }
}

impl<'a> Add<&'a ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for ParamPoly {
    type Output = ParamPoly;
    fn add(mut self, rhs: ParamPoly) -> ParamPoly {
        self += &rhs;
        self
    }
}

impl<'a> AddAssign<&'a ParamPoly> for ParamPoly {
    fn add_assign(&mut self, rhs: &'a ParamPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<'a> Sub<&'a ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for ParamPoly {
    type Output = ParamPoly;
    fn sub(mut self, rhs: ParamPoly) -> ParamPoly {
        self -= &rhs;
        self
    }
}

impl<'a> SubAssign<&'a ParamPoly> for ParamPoly {
    fn sub_assign(&mut self, rhs: &'a ParamPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<'a> Mul<&'a ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: ParamPoly) -> ParamPoly {
        &self * &rhs
    }
}

impl<'a> MulAssign<&'a ParamPoly> for ParamPoly {
    fn mul_assign(&mut self, rhs: &'a ParamPoly) {
        *self = &*self * rhs;
    }
}

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(mut self) -> ParamPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -self.clone()
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for ParamPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = ParamPoly::zero();
        for summand in parse_sum(s)? {
            let mut factors = Vec::new();
            for (atom, e) in summand.factors {
                match atom {
                    Atom::Name(n) => factors.push((n, e)),
                    Atom::Indexed(n, i) => {
                        return Err(Error::Parse(format!(
                            "indexed symbol `{n}[{i}]` is not a parameter"
                        )))
                    }
                }
            }
            out.add_term(Monomial::from_factors(factors), summand.coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};
    use proptest::prelude::*;

    fn c() -> ParamPoly {
        ParamPoly::var("c")
    }

    #[test]
    fn mul_adds_exponents() {
        assert_eq!((&c() * &c()).to_string(), "c^2");
    }

    #[test]
    fn add_cancels() {
        let a = &c().scale(&int(3)) + &ParamPoly::one();
        let b = c().scale(&int(-3));
        let s = &a + &b;
        assert_eq!(s, ParamPoly::one());
        assert_eq!(s.as_constant(), Some(int(1)));
    }

    #[test]
    fn scalar_multiple() {
        let k = 1;
        let p = ParamPoly::from(2 * k + 1) * c();
        assert_eq!(p.to_string(), "3*c");
    }

    #[test]
    fn specialize_values() {
        let p = c().scale(&int(-21));
        let mut a = BTreeMap::new();
        a.insert("c".to_string(), int(1));
        assert_eq!(p.specialize(&a).unwrap(), int(-21));
        a.insert("c".to_string(), int(0));
        assert_eq!(p.specialize(&a).unwrap(), int(0));
        let q = c().scale(&int(-275));
        a.insert("c".to_string(), int(2));
        assert_eq!(q.specialize(&a).unwrap(), int(-550));
    }

    #[test]
    fn specialize_missing_parameter() {
        let p = &c() * &ParamPoly::var("d");
        let mut a = BTreeMap::new();
        a.insert("c".to_string(), int(1));
        assert!(matches!(p.specialize(&a), Err(Error::MissingParameter(n)) if n == "d"));
        assert_eq!(p.substitute(&a), ParamPoly::var("d"));
    }

    #[test]
    fn display_format() {
        let p: ParamPoly = "3*c^2 - 1".parse().unwrap();
        assert_eq!(p.to_string(), "3*c^2 - 1");
        assert_eq!(c().scale(&int(-21)).to_string(), "-21*c");
        assert_eq!(ParamPoly::zero().to_string(), "0");
        assert_eq!(c().scale(&rat(-1, 2)).to_string(), "-1/2*c");
        let q: ParamPoly = "c2*c1 + c1^2 - c2^2 + 7".parse().unwrap();
        assert_eq!(q.to_string(), "c1^2 + c1*c2 - c2^2 + 7");
    }

    fn arb_poly() -> impl Strategy<Value = ParamPoly> {
        let term = (-5i64..=5, 0u32..3, 0u32..3);
        prop::collection::vec(term, 0..5).prop_map(|ts| {
            let mut p = ParamPoly::zero();
            for (k, a, b) in ts {
                let m = Monomial::from_factors([("a".to_string(), a), ("b".to_string(), b)]);
                p.add_term(m, int(k));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn specialize_is_ring_homomorphism(p in arb_poly(), q in arb_poly(), x in -4i64..4, y in -4i64..4) {
            let mut a = BTreeMap::new();
            a.insert("a".to_string(), int(x));
            a.insert("b".to_string(), int(y));
            let (sp, sq) = (p.specialize(&a).unwrap(), q.specialize(&a).unwrap());
            prop_assert_eq!((&p * &q).specialize(&a).unwrap(), &sp * &sq);
            prop_assert_eq!((&p + &q).specialize(&a).unwrap(), &sp + &sq);
        }

        #[test]
        fn display_parse_round_trip(p in arb_poly()) {
            let s = p.to_string();
            let back: ParamPoly = s.parse().unwrap();
            prop_assert_eq!(back.to_string(), s);
            prop_assert_eq!(back, p);
        }
    }
}
