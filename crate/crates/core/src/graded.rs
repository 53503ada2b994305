//! Graded subspaces of a Fock space that carry a vertex algebra (or module)
//! structure: the full space, a θ-eigenspace, or a tensor product.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use parking_lot::Mutex;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::fock::{fixed_subspace, stratum_basis, strata, Sign};
use crate::linalg::{row_reduce, RowBasis};
use crate::scalar::Weight;
use crate::space::{Part, Space, SpaceRef};

#[derive(Clone, Debug)]
enum Kind {
    Full,
    Theta(Sign),
    Tensor(Box<Graded>, Box<Graded>),
}

#[derive(Clone, Debug)]
pub struct Graded {
    ambient: SpaceRef,
    kind: Kind,
    cache: Arc<Mutex<BTreeMap<Weight, Arc<Vec<Element>>>>>,
}

impl Graded {
    fn build(ambient: SpaceRef, kind: Kind) -> Self {
        Self { ambient, kind, cache: Arc::default() }
    }

    pub fn full(space: &SpaceRef) -> Self {
        Self::build(Arc::clone(space), Kind::Full)
    }

    /// `V_L^±` inside `V_L`.
    pub fn theta(space: &SpaceRef, sign: Sign) -> Result<Self> {
        if !space.is_algebra() {
            return Err(Error::ThetaOnCoset);
        }
        Ok(Self::build(Arc::clone(space), Kind::Theta(sign)))
    }

    /// `V^1 ⊗ V^2`, realized inside the Fock space of the orthogonal sum of lattices.
    pub fn tensor(a: &Graded, b: &Graded, cutoff: Weight) -> Result<Self> {
        if !a.ambient.is_algebra() || !b.ambient.is_algebra() {
            return Err(Error::InvalidCoset("tensor products are built from algebras".into()));
        }
        let lattice = a.ambient.lattice().concat(b.ambient.lattice())?;
        let ambient = Space::algebra(lattice, cutoff);
        Ok(Self::build(ambient, Kind::Tensor(Box::new(a.with_cutoff(cutoff)), Box::new(b.with_cutoff(cutoff)))))
    }

    pub fn with_cutoff(&self, cutoff: Weight) -> Self {
        let kind = match &self.kind {
            Kind::Tensor(a, b) => Kind::Tensor(Box::new(a.with_cutoff(cutoff)), Box::new(b.with_cutoff(cutoff))),
            k => k.clone(),
        };
        Self::build(self.ambient.with_cutoff(cutoff), kind)
    }

    pub fn ambient(&self) -> &SpaceRef {
        &self.ambient
    }

    pub fn is_algebra(&self) -> bool {
        self.ambient.is_algebra()
    }

    pub fn strata(&self, max: Weight) -> Vec<Weight> {
        strata(&self.ambient, max)
    }

    /// A basis of the stratum of weight `d` (echelon rows for θ-eigenspaces,
    /// products of factor bases for tensor products).
    pub fn stratum_basis(&self, d: Weight) -> Result<Arc<Vec<Element>>> {
        if let Some(hit) = self.cache.lock().get(&d) {
            return Ok(Arc::clone(hit));
        }
        let basis = match &self.kind {
            Kind::Full => stratum_basis(&self.ambient, d).into_iter().map(|b| Element::basis(&self.ambient, b)).collect(),
            Kind::Theta(sign) => fixed_subspace(&self.ambient, *sign, d)?.rows().to_vec(),
            Kind::Tensor(a, b) => {
                let mut out = Vec::new();
                for d1 in a.strata(d) {
                    let d2 = d - d1;
                    if !b.strata(d2).contains(&d2) {
                        continue;
                    }
                    let xa = a.stratum_basis(d1)?;
                    let xb = b.stratum_basis(d2)?;
                    for x in xa.iter() {
                        for y in xb.iter() {
                            out.push(tensor_product(&self.ambient, x, y));
                        }
                    }
                }
                out
            }
        };
        let basis = Arc::new(basis);
        self.cache.lock().insert(d, Arc::clone(&basis));
        Ok(basis)
    }

    pub fn stratum_span(&self, d: Weight) -> Result<RowBasis> {
        row_reduce(&self.ambient, Some(d), &self.stratum_basis(d)?)
    }

    pub fn stratum_dim(&self, d: Weight) -> Result<usize> {
        Ok(match self.kind {
            Kind::Full => self.stratum_basis(d)?.len(),
            _ => self.stratum_span(d)?.rank(),
        })
    }

    /// The factors of a tensor product.
    pub fn factors(&self) -> Option<(&Graded, &Graded)> {
        match &self.kind {
            Kind::Tensor(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

impl fmt::Display for Graded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let norms: Vec<String> = self.ambient.lattice().norms().iter().map(|d| d.to_string()).collect();
        let base = if self.ambient.lattice().is_heisenberg_only() {
            format!("M(1)[{}]", norms.join(","))
        } else if self.ambient.is_algebra() {
            format!("V_L[{}]", norms.join(","))
        } else {
            let ks: Vec<String> = self
                .ambient
                .coset()
                .numerators()
                .iter()
                .zip(self.ambient.lattice().norms())
                .map(|(k, d)| format!("{k}/{d}"))
                .collect();
            format!("V_(L+λ)[{}; λ=({})]", norms.join(","), ks.join(","))
        };
        match &self.kind {
            Kind::Full => write!(f, "{base}"),
            Kind::Theta(Sign::Plus) => write!(f, "{base}^+"),
            Kind::Theta(Sign::Minus) => write!(f, "{base}^-"),
            Kind::Tensor(a, b) => write!(f, "({a})⊗({b})"),
        }
    }
}

/// `x ⊗ y` with `y`'s coordinates shifted past those of `x`.
pub fn tensor_product(big: &SpaceRef, x: &Element, y: &Element) -> Element {
    let shift = x.space().rank();
    let mut out = Element::zero(big);
    for (bx, cx) in x.terms() {
        for (by, cy) in y.terms() {
            let mut parts: Vec<Part> = bx.parts().to_vec();
            parts.extend(by.parts().iter().map(|p| Part::new(p.coord as usize + shift, p.level)));
            let mut point = bx.point().to_vec();
            point.extend_from_slice(by.point());
            out.add_term(big.basis(parts, point), cx * cy);
        }
    }
    out
}
