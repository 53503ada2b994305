use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{fmt_scalar, Scalar, Weight};
use crate::space::{Basis, SpaceRef};

/// A finitely supported vector in a Fock space. Zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct Element {
    space: SpaceRef,
    terms: BTreeMap<Basis, Scalar>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.space.same_ambient(&other.space) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl Element {
    pub fn zero(space: &SpaceRef) -> Self {
        Self { space: Arc::clone(space), terms: BTreeMap::new() }
    }

    pub fn basis(space: &SpaceRef, b: Basis) -> Self {
        Self::term(space, b, Scalar::one())
    }

    pub fn term(space: &SpaceRef, b: Basis, c: Scalar) -> Self {
        let mut e = Self::zero(space);
        e.add_term(b, c);
        e
    }

    pub fn vacuum(space: &SpaceRef) -> Self {
        Self::basis(space, space.vacuum())
    }

    pub fn from_terms(space: &SpaceRef, terms: impl IntoIterator<Item = (Basis, Scalar)>) -> Self {
        let mut e = Self::zero(space);
        for (b, c) in terms {
            e.add_term(b, c);
        }
        e
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn terms(&self) -> &BTreeMap<Basis, Scalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Basis, Scalar> {
        self.terms
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

    pub fn coeff(&self, b: &Basis) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest term in the canonical basis order.
    pub fn leading(&self) -> Option<(&Basis, &Scalar)> {
        self.terms.last_key_value()
    }

    pub fn add_term(&mut self, b: Basis, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn check_space(&self, other: &Element) -> Result<()> {
        if Arc::ptr_eq(&self.space, &other.space) || self.space.same_ambient(&other.space) {
            Ok(())
        } else {
            Err(Error::MixedSpace)
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &Element) -> Result<()> {
        self.check_space(other)?;
        if c.is_zero() {
            return Ok(());
        }
        for (b, x) in &other.terms {
            self.add_term(b.clone(), c * x);
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), other)?;
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        let mut out = self.clone();
        out.add_scaled(&-Scalar::one(), other)?;
        Ok(out)
    }

    pub fn scaled(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero(&self.space);
        }
        Element { space: Arc::clone(&self.space), terms: self.terms.iter().map(|(b, x)| (b.clone(), x * c)).collect() }
    }

    /// Re-homes the element in a space with the same ambient (e.g. a different cutoff).
    pub fn in_space(&self, space: &SpaceRef) -> Result<Element> {
        if !self.space.same_ambient(space) {
            return Err(Error::MixedSpace);
        }
        Ok(Element { space: Arc::clone(space), terms: self.terms.clone() })
    }

    /// Weight of a homogeneous element (`None` for zero or mixed weights).
    pub fn homogeneous_weight(&self) -> Option<Weight> {
        let first = self.terms.keys().next()?.weight();
        self.terms.keys().all(|b| b.weight() == first).then_some(first)
    }

    pub fn max_weight(&self) -> Option<Weight> {
        self.terms.keys().map(|b| b.weight()).max()
    }

    pub fn components(&self) -> BTreeMap<Weight, Element> {
        let mut out: BTreeMap<Weight, Element> = BTreeMap::new();
        for (b, c) in &self.terms {
            out.entry(b.weight())
                .or_insert_with(|| Element::zero(&self.space))
                .terms
                .insert(b.clone(), c.clone());
        }
        out
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "({})·{b}", fmt_scalar(c))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::space::{LatticeSpec, Part, Space};

    #[test]
    fn cancellation_drops_terms() {
        let v = Space::algebra(LatticeSpec::new(vec![2]).unwrap(), Weight::from_integer(4));
        let b = v.basis(vec![Part::new(0, 1)], vec![0]);
        let mut e = Element::term(&v, b.clone(), int(3));
        e.add_term(b, int(-3));
        assert!(e.is_zero());
    }

    #[test]
    fn mixed_spaces_rejected() {
        let l = LatticeSpec::new(vec![2]).unwrap();
        let v = Space::algebra(l.clone(), Weight::from_integer(4));
        let m = Space::module(l, crate::space::CosetSpec::from_offsets(&LatticeSpec::new(vec![2]).unwrap(), &[Weight::new(1, 2)]).unwrap(), Weight::from_integer(4)).unwrap();
        let a = Element::vacuum(&v);
        let b = Element::vacuum(&m);
        assert_eq!(a.add(&b), Err(Error::MixedSpace));
    }
}
