use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::format_rational;
use crate::Rational;

/// A word in the noncommuting variables `X_1, X_2, …`; the empty word is the unit.
pub type Word = Vec<u32>;

/// Polynomial in noncommuting variables with exact rational coefficients.
///
/// Scalars are central and words concatenate under multiplication. Zero
/// coefficients are dropped, so structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCPolynomial {
    terms: BTreeMap<Word, Rational>,
}

impl NCPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, Vec::new())
    }

    /// The variable `X_i`; indices start at 1.
    pub fn var(i: u32) -> Self {
        assert!(i >= 1, "variable indices start at 1");
        Self::monomial(Rational::one(), vec![i])
    }

    pub fn monomial(c: Rational, word: Word) -> Self {
        let mut p = Self::zero();
        p.add_term(word, c);
        p
    }

    /// Builds a polynomial from `(coefficient, word)` pairs, merging repeated words.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, Word)>) -> Result<Self> {
        let mut p = Self::zero();
        for (c, w) in terms {
            if w.contains(&0) {
                return Err(Error::InvalidArgument("variable indices start at 1".into()));
            }
            p.add_term(w, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, word: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Longest word length.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn variables(&self) -> Vec<u32> {
        let mut vars: Vec<u32> = self.terms.keys().flatten().copied().collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a * c);
        }
        out
    }

    /// Product, failing when the number of raw word products would exceed `cap`.
    pub fn checked_mul(&self, rhs: &Self, cap: usize) -> Result<Self> {
        let raw = self.num_terms().saturating_mul(rhs.num_terms());
        if raw > cap {
            return Err(Error::ExpansionCap { cap, terms: raw });
        }
        let mut out = Self::zero();
        for (w1, a) in &self.terms {
            for (w2, b) in &rhs.terms {
                let mut w = Vec::with_capacity(w1.len() + w2.len());
                w.extend_from_slice(w1);
                w.extend_from_slice(w2);
                out.add_term(w, a * b);
            }
        }
        Ok(out)
    }

    pub fn checked_pow(&self, exp: usize, cap: usize) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.checked_mul(self, cap)?;
        }
        Ok(acc)
    }
}

impl Add for &NCPolynomial {
    type Output = NCPolynomial;

    fn add(self, rhs: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Add for NCPolynomial {
    type Output = NCPolynomial;

    fn add(self, rhs: NCPolynomial) -> NCPolynomial {
        &self + &rhs
    }
}

impl Sub for &NCPolynomial {
    type Output = NCPolynomial;

    fn sub(self, rhs: &NCPolynomial) -> NCPolynomial {
        self + &(-rhs)
    }
}

impl Sub for NCPolynomial {
    type Output = NCPolynomial;

    fn sub(self, rhs: NCPolynomial) -> NCPolynomial {
        &self - &rhs
    }
}

impl Neg for &NCPolynomial {
    type Output = NCPolynomial;

    fn neg(self) -> NCPolynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &NCPolynomial {
    type Output = NCPolynomial;

    fn mul(self, rhs: &NCPolynomial) -> NCPolynomial {
        self.checked_mul(rhs, usize::MAX).expect("uncapped product")
    }
}

impl Mul for NCPolynomial {
    type Output = NCPolynomial;

    fn mul(self, rhs: NCPolynomial) -> NCPolynomial {
        &self * &rhs
    }
}

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", format_rational(c))?;
            for v in w {
                write!(f, "·X{v}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn noncommutative_products() {
        let x = NCPolynomial::var(1);
        let y = NCPolynomial::var(2);
        let xy = &x * &y;
        let yx = &y * &x;
        assert_ne!(xy, yx);
        let anti = &xy + &yx;
        assert_eq!(anti.num_terms(), 2);
        assert!((&xy - &xy).is_zero());
        let shifted = &x + &NCPolynomial::constant(int(3));
        let sq = &shifted * &shifted;
        // X² + 6X + 9, scalars commute
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(sq.terms().find(|(w, _)| w.len() == 1).unwrap().1, &int(6));
        assert_eq!(sq.degree(), 2);
        assert_eq!(anti.variables(), vec![1, 2]);
    }

    #[test]
    fn expansion_cap() {
        let p = &NCPolynomial::var(1) + &NCPolynomial::var(2);
        assert!(p.checked_pow(3, 8).is_ok());
        assert_eq!(p.checked_pow(4, 8), Err(Error::ExpansionCap { cap: 8, terms: 16 }));
        assert!(NCPolynomial::from_terms([(int(1), vec![0])]).is_err());
    }
}
