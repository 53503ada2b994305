//! Sparse exact row reduction over the canonical basis order.
//!
//! Pivots are the largest term of each row. For weight-filtered (non
//! homogeneous) spans this makes the pivot the top-weight component, which is
//! what the Zhu quotient needs.

use std::collections::BTreeMap;
use std::ops::Bound;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::scalar::{Scalar, Weight};
use crate::space::{Basis, SpaceRef};

pub type Combo = BTreeMap<usize, Scalar>;

fn combo_add_scaled(dst: &mut Combo, c: &Scalar, src: &Combo) {
    for (i, x) in src {
        let e = dst.entry(*i).or_insert_with(Scalar::zero);
        *e += c * x;
        if e.is_zero() {
            dst.remove(i);
        }
    }
}

/// Incremental semi-echelon form, optionally tracking every row as a
/// combination of the inserted inputs.
#[derive(Clone, Debug)]
pub struct Echelon {
    space: SpaceRef,
    rows: Vec<Element>,
    pivot_of: BTreeMap<Basis, usize>,
    track: bool,
    combos: Vec<Combo>,
    kernel: Vec<Combo>,
    inputs: usize,
}

impl Echelon {
    pub fn new(space: &SpaceRef) -> Self {
        Self::build(space, false)
    }

    pub fn tracked(space: &SpaceRef) -> Self {
        Self::build(space, true)
    }

    fn build(space: &SpaceRef, track: bool) -> Self {
        Self {
            space: Arc::clone(space),
            rows: Vec::new(),
            pivot_of: BTreeMap::new(),
            track,
            combos: Vec::new(),
            kernel: Vec::new(),
            inputs: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    /// Input combinations that reduced to zero (tracked mode only).
    pub fn kernel(&self) -> &[Combo] {
        &self.kernel
    }

    pub fn is_pivot(&self, b: &Basis) -> bool {
        self.pivot_of.contains_key(b)
    }

    fn reduce_tracked(&self, mut v: Element, mut combo: Combo) -> (Element, Combo) {
        let mut upper: Option<Basis> = None;
        loop {
            let next = match &upper {
                None => v.terms().last_key_value().map(|(b, c)| (b.clone(), c.clone())),
                Some(u) => v
                    .terms()
                    .range((Bound::Unbounded, Bound::Excluded(u)))
                    .next_back()
                    .map(|(b, c)| (b.clone(), c.clone())),
            };
            let Some((b, c)) = next else { break };
            match self.pivot_of.get(&b) {
                Some(&r) => {
                    let neg = -c;
                    v.add_scaled(&neg, &self.rows[r]).expect("rows share the echelon space");
                    if self.track {
                        combo_add_scaled(&mut combo, &neg, &self.combos[r]);
                    }
                }
                None => upper = Some(b),
            }
        }
        (v, combo)
    }

    /// Fully reduces `v` against the current rows.
    pub fn reduce(&self, v: &Element) -> Result<Element> {
        self.check(v)?;
        Ok(self.reduce_tracked(v.clone(), Combo::new()).0)
    }

    pub fn contains(&self, v: &Element) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// Expresses `v` as a combination of the inserted inputs (tracked mode only).
    pub fn solve(&self, v: &Element) -> Result<Option<Combo>> {
        self.check(v)?;
        let (rest, combo) = self.reduce_tracked(v.clone(), Combo::new());
        if !rest.is_zero() {
            return Ok(None);
        }
        // v - Σ c_r row_r = 0 was built with negated coefficients.
        Ok(Some(combo.into_iter().map(|(i, c)| (i, -c)).collect()))
    }

    fn check(&self, v: &Element) -> Result<()> {
        if self.space.same_ambient(v.space()) {
            Ok(())
        } else {
            Err(Error::MixedSpace)
        }
    }

    /// Inserts a vector; returns whether the rank grew. Zero vectors are dropped
    /// (but still recorded as kernel entries in tracked mode).
    pub fn insert(&mut self, v: &Element) -> Result<bool> {
        self.check(v)?;
        let idx = self.inputs;
        self.inputs += 1;
        let mut start = Combo::new();
        if self.track {
            start.insert(idx, Scalar::one());
        }
        let (mut rest, mut combo) = self.reduce_tracked(v.clone(), start);
        let Some((lead, lc)) = rest.leading().map(|(b, c)| (b.clone(), c.clone())) else {
            if self.track {
                self.kernel.push(combo);
            }
            return Ok(false);
        };
        let inv = Scalar::one() / lc;
        rest = rest.scaled(&inv);
        if self.track {
            combo = combo.into_iter().map(|(i, c)| (i, c * &inv)).collect();
        }
        self.pivot_of.insert(lead, self.rows.len());
        self.rows.push(rest);
        self.combos.push(combo);
        Ok(true)
    }

    pub fn extend<'a>(&mut self, vs: impl IntoIterator<Item = &'a Element>) -> Result<()> {
        for v in vs {
            self.insert(v)?;
        }
        Ok(())
    }

    /// Reduced echelon rows (monic pivots, sorted by pivot) with their input combinations.
    pub fn reduced_rows(&self) -> (Vec<Element>, Vec<Combo>) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by(|&a, &b| self.rows[a].leading().unwrap().0.cmp(self.rows[b].leading().unwrap().0));
        let mut done = Echelon::build(&self.space, self.track);
        let mut out_rows = Vec::with_capacity(order.len());
        let mut out_combos = Vec::with_capacity(order.len());
        for &r in &order {
            let row = &self.rows[r];
            let (lead, _) = row.leading().unwrap();
            let lead = lead.clone();
            // Reduce everything below the pivot against already finished rows.
            let (reduced, combo) = done.reduce_tracked(row.clone(), self.combos[r].clone());
            debug_assert_eq!(reduced.leading().map(|(b, _)| b.clone()), Some(lead.clone()));
            done.pivot_of.insert(lead, done.rows.len());
            done.rows.push(reduced.clone());
            done.combos.push(combo.clone());
            out_rows.push(reduced);
            out_combos.push(combo);
        }
        (out_rows, out_combos)
    }

    pub fn into_row_basis(self, stratum: Option<Weight>) -> RowBasis {
        let (rows, _) = self.reduced_rows();
        RowBasis::from_reduced(&self.space, stratum, rows)
    }
}

/// A span in reduced echelon form. Rows are sorted by pivot, pivots are monic
/// and no row has a nonzero entry at another row's pivot.
#[derive(Clone, Debug, PartialEq)]
pub struct RowBasis {
    space: SpaceRef,
    stratum: Option<Weight>,
    rows: Vec<Element>,
    pivots: BTreeMap<Basis, usize>,
}

impl RowBasis {
    pub fn empty(space: &SpaceRef, stratum: Option<Weight>) -> Self {
        Self { space: Arc::clone(space), stratum, rows: Vec::new(), pivots: BTreeMap::new() }
    }

    fn from_reduced(space: &SpaceRef, stratum: Option<Weight>, rows: Vec<Element>) -> Self {
        let pivots = rows.iter().enumerate().map(|(i, r)| (r.leading().unwrap().0.clone(), i)).collect();
        Self { space: Arc::clone(space), stratum, rows, pivots }
    }

    pub fn space(&self) -> &SpaceRef {
        &self.space
    }

    pub fn stratum(&self) -> Option<Weight> {
        self.stratum
    }

    pub fn rows(&self) -> &[Element] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &Basis> {
        self.pivots.keys()
    }

    pub fn is_pivot(&self, b: &Basis) -> bool {
        self.pivots.contains_key(b)
    }

    fn check_stratum(&self, v: &Element) -> Result<()> {
        if !self.space.same_ambient(v.space()) {
            return Err(Error::MixedSpace);
        }
        if let Some(d) = self.stratum {
            if let Some(found) = v.terms().keys().map(|b| b.weight()).find(|w| *w != d) {
                return Err(Error::StratumMismatch { expected: d, found });
            }
        }
        Ok(())
    }

    /// Coordinates of `v` with respect to the rows, if `v` lies in the span.
    pub fn membership(&self, v: &Element) -> Result<Option<Vec<Scalar>>> {
        self.check_stratum(v)?;
        let coords: Vec<Scalar> = self.rows.iter().map(|r| v.coeff(r.leading().unwrap().0)).collect();
        let mut rest = v.clone();
        for (c, r) in coords.iter().zip(&self.rows) {
            rest.add_scaled(&-c.clone(), r)?;
        }
        Ok(rest.is_zero().then_some(coords))
    }

    pub fn contains(&self, v: &Element) -> Result<bool> {
        Ok(self.membership(v)?.is_some())
    }

    /// Remainder of `v` after eliminating every pivot.
    pub fn reduce(&self, v: &Element) -> Result<Element> {
        if !self.space.same_ambient(v.space()) {
            return Err(Error::MixedSpace);
        }
        let mut rest = v.clone();
        for r in &self.rows {
            let c = rest.coeff(r.leading().unwrap().0);
            if !c.is_zero() {
                rest.add_scaled(&-c, r)?;
            }
        }
        Ok(rest)
    }

    pub fn combine(&self, coords: &[Scalar]) -> Element {
        let mut out = Element::zero(&self.space);
        for (c, r) in coords.iter().zip(&self.rows) {
            out.add_scaled(c, r).expect("same space");
        }
        out
    }

    pub fn to_echelon(&self) -> Echelon {
        let mut e = Echelon::new(&self.space);
        for r in &self.rows {
            e.insert(r).expect("same space");
        }
        e
    }
}

/// Echelon basis of the span of `vectors`, all of which must lie in `stratum`
/// when one is given. All-zero inputs are dropped.
pub fn row_reduce(space: &SpaceRef, stratum: Option<Weight>, vectors: &[Element]) -> Result<RowBasis> {
    let check = RowBasis::empty(space, stratum);
    let mut ech = Echelon::new(space);
    for v in vectors {
        check.check_stratum(v)?;
        ech.insert(v)?;
    }
    Ok(ech.into_row_basis(stratum))
}

/// `dim(ambient) - dim(sub)`, after checking that `sub ⊆ ambient`.
pub fn quotient_dim(ambient: &RowBasis, sub: &RowBasis) -> Result<usize> {
    for (i, r) in sub.rows().iter().enumerate() {
        if !ambient.contains(r)? {
            return Err(Error::NotContained { witness: i });
        }
    }
    Ok(ambient.rank() - sub.rank())
}

/// Basis of the kernel of the linear map sending the `i`-th source vector to
/// `images[i]`, as dense coefficient vectors over the sources.
pub fn kernel(space: &SpaceRef, images: &[Element]) -> Result<Vec<Vec<Scalar>>> {
    let mut ech = Echelon::tracked(space);
    for v in images {
        ech.insert(v)?;
    }
    Ok(ech
        .kernel()
        .iter()
        .map(|c| (0..images.len()).map(|i| c.get(&i).cloned().unwrap_or_else(Scalar::zero)).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::space::{LatticeSpec, Part, Space};

    fn setup() -> (SpaceRef, Vec<Basis>) {
        let v = Space::algebra(LatticeSpec::heisenberg(vec![2]).unwrap(), Weight::from_integer(8));
        let b1 = v.basis(vec![Part::new(0, 2)], vec![0]);
        let b2 = v.basis(vec![Part::new(0, 1), Part::new(0, 1)], vec![0]);
        (v, vec![b1, b2])
    }

    #[test]
    fn empty_span_has_rank_zero() {
        let (v, _) = setup();
        let rb = row_reduce(&v, None, &[]).unwrap();
        assert_eq!(rb.rank(), 0);
    }

    #[test]
    fn dependent_triple_has_rank_two() {
        let (v, b) = setup();
        let e1 = Element::basis(&v, b[0].clone());
        let e2 = Element::basis(&v, b[1].clone());
        let rb = row_reduce(&v, Some(Weight::from_integer(2)), &[e1.clone(), e2.clone(), e1.add(&e2).unwrap()]).unwrap();
        assert_eq!(rb.rank(), 2);
        assert_eq!(rb.membership(&Element::zero(&v)).unwrap(), Some(vec![int(0), int(0)]));
        let coords = rb.membership(&rb.rows()[1]).unwrap().unwrap();
        assert_eq!(coords, vec![int(0), int(1)]);
    }

    #[test]
    fn stratum_mismatch_rejected() {
        let (v, b) = setup();
        let rb = RowBasis::empty(&v, Some(Weight::from_integer(3)));
        assert!(matches!(rb.membership(&Element::basis(&v, b[0].clone())), Err(Error::StratumMismatch { .. })));
    }

    #[test]
    fn containment_failure_has_witness() {
        let (v, b) = setup();
        let amb = row_reduce(&v, None, &[Element::basis(&v, b[0].clone())]).unwrap();
        let sub = row_reduce(&v, None, &[Element::basis(&v, b[1].clone())]).unwrap();
        assert_eq!(quotient_dim(&amb, &sub), Err(Error::NotContained { witness: 0 }));
        assert_eq!(quotient_dim(&amb, &amb), Ok(0));
        assert_eq!(quotient_dim(&amb, &RowBasis::empty(&v, None)), Ok(1));
    }

    #[test]
    fn kernel_of_dependent_images() {
        let (v, b) = setup();
        let e1 = Element::basis(&v, b[0].clone());
        let e2 = Element::basis(&v, b[1].clone());
        let k = kernel(&v, &[e1.clone(), e2.clone(), e1.add(&e2).unwrap().scaled(&int(2))]).unwrap();
        assert_eq!(k, vec![vec![int(-2), int(-2), int(1)]]);
    }

    #[test]
    fn solve_recovers_input_combination() {
        let (v, b) = setup();
        let e1 = Element::basis(&v, b[0].clone());
        let e2 = Element::basis(&v, b[1].clone());
        let mut ech = Echelon::tracked(&v);
        ech.insert(&e1.add(&e2).unwrap()).unwrap();
        ech.insert(&e2).unwrap();
        let target = e1.scaled(&int(3)).add(&e2).unwrap();
        let combo = ech.solve(&target).unwrap().unwrap();
        assert_eq!(combo.get(&0), Some(&int(3)));
        assert_eq!(combo.get(&1), Some(&int(-2)));
    }
}
