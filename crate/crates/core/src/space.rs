//! Lattice data, module cosets, and the Fock basis indexing `V_L` and `V_{L+λ}`.
//!
//! The lattice is an orthogonal sum `Zα_1 ⊥ … ⊥ Zα_r` with `(α_i, α_i) = d_i`
//! even. A module `V_{L+λ}` is fixed by numerators `k_i` with
//! `λ = Σ (k_i / d_i) α_i`, `0 <= k_i < d_i`. A lattice point stored as the
//! integer vector `m` stands for `γ = Σ (m_i + k_i/d_i) α_i`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{fmt_weight, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeSpec {
    norms: Vec<i64>,
    heisenberg_only: bool,
}

impl LatticeSpec {
    pub fn new(norms: Vec<i64>) -> Result<Self> {
        Self::build(norms, false)
    }

    /// The Heisenberg Fock space `M(1)` over the same Gram matrix.
    pub fn heisenberg(norms: Vec<i64>) -> Result<Self> {
        Self::build(norms, true)
    }

    fn build(norms: Vec<i64>, heisenberg_only: bool) -> Result<Self> {
        if norms.is_empty() {
            return Err(Error::InvalidLattice("rank must be at least 1".into()));
        }
        if let Some(d) = norms.iter().find(|&&d| d < 2 || d % 2 != 0) {
            return Err(Error::InvalidLattice(format!("norm {d} is not an even integer >= 2")));
        }
        Ok(Self { norms, heisenberg_only })
    }

    pub fn rank(&self) -> usize {
        self.norms.len()
    }

    pub fn norms(&self) -> &[i64] {
        &self.norms
    }

    pub fn norm(&self, i: usize) -> i64 {
        self.norms[i]
    }

    pub fn is_heisenberg_only(&self) -> bool {
        self.heisenberg_only
    }

    /// Orthogonal sum, used for tensor products `V_{L1} ⊗ V_{L2} = V_{L1 ⊥ L2}`.
    pub fn concat(&self, other: &LatticeSpec) -> Result<Self> {
        if self.heisenberg_only != other.heisenberg_only {
            return Err(Error::InvalidLattice("cannot mix M(1) and lattice factors".into()));
        }
        let mut norms = self.norms.clone();
        norms.extend_from_slice(&other.norms);
        Self::build(norms, self.heisenberg_only)
    }
}

/// Numerators `k_i` of the coset offset `λ = Σ (k_i/d_i) α_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetSpec {
    numerators: Vec<i64>,
}

impl CosetSpec {
    pub fn zero(rank: usize) -> Self {
        Self { numerators: vec![0; rank] }
    }

    /// Builds a coset from offsets `o_i` (so `λ = Σ o_i α_i`), reducing mod the lattice.
    pub fn from_offsets(lattice: &LatticeSpec, offsets: &[Weight]) -> Result<Self> {
        if lattice.is_heisenberg_only() {
            return Err(Error::InvalidCoset("M(1) has no lattice cosets".into()));
        }
        if offsets.len() != lattice.rank() {
            return Err(Error::InvalidCoset(format!(
                "expected {} offsets, got {}",
                lattice.rank(),
                offsets.len()
            )));
        }
        let mut numerators = Vec::with_capacity(offsets.len());
        for (o, &d) in offsets.iter().zip(lattice.norms()) {
            let k = *o * Weight::from_integer(d);
            if !k.is_integer() {
                return Err(Error::InvalidCoset(format!(
                    "offset {} is not in the dual lattice (needs denominator dividing {d})",
                    fmt_weight(o)
                )));
            }
            numerators.push(k.to_integer().rem_euclid(d));
        }
        Ok(Self { numerators })
    }

    pub fn numerators(&self) -> &[i64] {
        &self.numerators
    }

    pub fn is_zero(&self) -> bool {
        self.numerators.iter().all(|&k| k == 0)
    }
}

/// An ambient space: `V_L`, `M(1)`, or a module `V_{L+λ}`, truncated at a weight cutoff.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Space {
    lattice: LatticeSpec,
    coset: CosetSpec,
    cutoff: Weight,
}

pub type SpaceRef = Arc<Space>;

impl Space {
    pub fn algebra(lattice: LatticeSpec, cutoff: Weight) -> SpaceRef {
        let coset = CosetSpec::zero(lattice.rank());
        Arc::new(Self { lattice, coset, cutoff })
    }

    pub fn module(lattice: LatticeSpec, coset: CosetSpec, cutoff: Weight) -> Result<SpaceRef> {
        if coset.numerators.len() != lattice.rank() {
            return Err(Error::InvalidCoset("coset rank differs from lattice rank".into()));
        }
        if lattice.is_heisenberg_only() && !coset.is_zero() {
            return Err(Error::InvalidCoset("M(1) has no lattice cosets".into()));
        }
        for (&k, &d) in coset.numerators.iter().zip(lattice.norms()) {
            if !(0..d).contains(&k) {
                return Err(Error::InvalidCoset(format!("numerator {k} outside [0, {d})")));
            }
        }
        Ok(Arc::new(Self { lattice, coset, cutoff }))
    }

    pub fn with_cutoff(&self, cutoff: Weight) -> SpaceRef {
        Arc::new(Self { cutoff, ..self.clone() })
    }

    pub fn lattice(&self) -> &LatticeSpec {
        &self.lattice
    }

    pub fn coset(&self) -> &CosetSpec {
        &self.coset
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn cutoff(&self) -> Weight {
        self.cutoff
    }

    pub fn is_algebra(&self) -> bool {
        self.coset.is_zero()
    }

    /// Same underlying graded space, ignoring the truncation cutoff.
    pub fn same_ambient(&self, other: &Space) -> bool {
        self.lattice == other.lattice && self.coset == other.coset
    }

    /// `d_i m_i + k_i`, so that `γ = Σ (num_i / d_i) α_i`.
    pub fn point_numerator(&self, i: usize, m: i64) -> i64 {
        self.lattice.norms[i] * m + self.coset.numerators[i]
    }

    /// `(β, γ)` for `β = Σ b_i α_i ∈ L` and the point `m` of this space.
    pub fn pairing(&self, beta: &[i64], point: &[i64]) -> i64 {
        beta.iter()
            .zip(point)
            .enumerate()
            .map(|(i, (b, &m))| b * self.point_numerator(i, m))
            .sum()
    }

    /// `(γ, γ)/2`.
    pub fn point_weight(&self, point: &[i64]) -> Weight {
        point
            .iter()
            .enumerate()
            .map(|(i, &m)| {
                let p = self.point_numerator(i, m);
                Weight::new(p * p, 2 * self.lattice.norms[i])
            })
            .sum()
    }

    /// Lowest weight occurring in the space.
    pub fn min_weight(&self) -> Weight {
        self.lattice
            .norms
            .iter()
            .zip(&self.coset.numerators)
            .map(|(&d, &k)| {
                let j = k.min(d - k);
                Weight::new(j * j, 2 * d)
            })
            .sum()
    }

    pub fn basis(&self, mut parts: Vec<Part>, point: Vec<i64>) -> Basis {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let level: i64 = parts.iter().map(|p| p.level as i64).sum();
        let weight = self.point_weight(&point) + Weight::from_integer(level);
        Basis { weight, point, parts }
    }

    pub fn vacuum(&self) -> Basis {
        self.basis(Vec::new(), vec![0; self.rank()])
    }

    pub fn check_weight(&self, w: Weight) -> Result<()> {
        if w > self.cutoff {
            Err(Error::TruncationOverflow { needed: w, cutoff: self.cutoff })
        } else {
            Ok(())
        }
    }
}

/// One Heisenberg creation operator `α_coord(-level)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Part {
    pub level: u32,
    pub coord: u16,
}

impl Part {
    pub fn new(coord: usize, level: u32) -> Self {
        Self { level, coord: coord as u16 }
    }
}

/// Basis vector `α_{i1}(-n_1)⋯α_{ik}(-n_k) e^γ`.
///
/// The derived order is the canonical basis order: weight first, then the
/// lattice point lexicographically, then the parts (stored in decreasing
/// order) compared lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Basis {
    weight: Weight,
    point: Vec<i64>,
    parts: Vec<Part>,
}

impl Basis {
    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn point(&self) -> &[i64] {
        &self.point
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn total_level(&self) -> i64 {
        self.parts.iter().map(|p| p.level as i64).sum()
    }

    pub(crate) fn with_parts(&self, parts: Vec<Part>, level_delta: i64) -> Basis {
        Basis { weight: self.weight + Weight::from_integer(level_delta), point: self.point.clone(), parts }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            write!(f, "a{}(-{})", p.coord + 1, p.level)?;
            first = false;
        }
        if self.point.iter().any(|&m| m != 0) || first {
            if !first {
                write!(f, "·")?;
            }
            if self.point.iter().all(|&m| m == 0) {
                write!(f, "e^0")?;
            } else {
                let coords: Vec<String> = self.point.iter().map(|m| m.to_string()).collect();
                write!(f, "e^[{}]", coords.join(","))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_odd_or_small_norms() {
        assert!(LatticeSpec::new(vec![3]).is_err());
        assert!(LatticeSpec::new(vec![0]).is_err());
        assert!(LatticeSpec::new(vec![]).is_err());
        assert!(LatticeSpec::new(vec![2, 4]).is_ok());
    }

    #[test]
    fn coset_offsets_reduce_mod_lattice() {
        let l = LatticeSpec::new(vec![2, 4]).unwrap();
        let c = CosetSpec::from_offsets(&l, &[Weight::new(3, 2), Weight::new(-1, 4)]).unwrap();
        assert_eq!(c.numerators(), &[1, 3]);
        assert!(CosetSpec::from_offsets(&l, &[Weight::new(1, 3), Weight::from_integer(0)]).is_err());
    }

    #[test]
    fn module_weights() {
        let l = LatticeSpec::new(vec![2]).unwrap();
        let c = CosetSpec::from_offsets(&l, &[Weight::new(1, 2)]).unwrap();
        let m = Space::module(l, c, Weight::from_integer(4)).unwrap();
        assert_eq!(m.min_weight(), Weight::new(1, 4));
        assert_eq!(m.point_weight(&[1]), Weight::new(9, 4));
        assert_eq!(m.point_weight(&[-1]), Weight::new(1, 4));
        assert_eq!(m.pairing(&[1], &[0]), 1);
    }
}
