use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed};
use serde::Serialize;

use super::BasisVector;

/// Coefficient rings for linear combinations of basis vectors.
pub trait Coeff: Clone + Num + Neg<Output = Self> + From<BigInt> + fmt::Display + PartialOrd + Signed {}

impl Coeff for BigInt {}
impl Coeff for BigRational {}

/// A finitely supported combination of basis vectors, zero terms dropped.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<C> {
    terms: BTreeMap<BasisVector, C>,
}

pub type Element = LinComb<BigInt>;
pub type RatElement = LinComb<BigRational>;

impl<C: Coeff> Default for LinComb<C> {
    fn default() -> Self {
        LinComb::zero()
    }
}

impl<C: Coeff> LinComb<C> {
    pub fn zero() -> Self {
        LinComb { terms: BTreeMap::new() }
    }

    pub fn basis(b: BasisVector) -> Self {
        let mut e = Self::zero();
        e.add_term(b, C::one());
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BasisVector, C)>) -> Self {
        let mut e = Self::zero();
        for (b, c) in terms {
            e.add_term(b, c);
        }
        e
    }

    pub fn add_term(&mut self, b: BasisVector, c: C) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(b);
        match slot {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisVector, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: &BasisVector) -> C {
        self.terms.get(b).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(b, x)| (b.clone(), x.clone() * c.clone())))
    }

    pub fn star(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(b, c)| (b.star(), c.clone())))
    }

    /// The common degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|b| b.degree());
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Term<'a> {
            coeff: String,
            basis: &'a BasisVector,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(b, c)| Term {
                coeff: c.to_string(),
                basis: b,
            })
            .collect();
        serde_json::to_value(terms).expect("terms serialize")
    }
}

impl Element {
    pub fn to_rational(&self) -> RatElement {
        RatElement::from_terms(self.terms.iter().map(|(b, c)| (b.clone(), BigRational::from(c.clone()))))
    }
}

impl<C: Coeff> Add for &LinComb<C> {
    type Output = LinComb<C>;
    fn add(self, rhs: &LinComb<C>) -> LinComb<C> {
        let mut out = self.clone();
        for (b, c) in rhs.terms() {
            out.add_term(b.clone(), c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &LinComb<C> {
    type Output = LinComb<C>;
    fn sub(self, rhs: &LinComb<C>) -> LinComb<C> {
        let mut out = self.clone();
        for (b, c) in rhs.terms() {
            out.add_term(b.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coeff> Neg for &LinComb<C> {
    type Output = LinComb<C>;
    fn neg(self) -> LinComb<C> {
        self.scaled(&-C::one())
    }
}

impl<C: Coeff> fmt::Display for LinComb<C> {
    /// `-[a;b;c] + 2[d;e;f]`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (b, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "[{b}]")?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for LinComb<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
