//! Fock spaces `M(1)`, `V_L` and `V_{L+λ}`: basis enumeration, the Heisenberg
//! and exponential vertex operator modes, and the involution θ.
//!
//! Cocycle factors are identically one. For orthogonal sums of rank-one even
//! lattices every pairing of lattice vectors is even, so no signs arise.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg::{row_reduce, RowBasis};
use crate::scalar::{int, ratio, Scalar, Weight};
use crate::space::{Basis, Part, SpaceRef};

/// Lattice points whose contribution `(γ,γ)/2` is at most `max_weight`.
fn points(space: &SpaceRef, max_weight: Weight) -> Vec<Vec<i64>> {
    let r = space.rank();
    if space.lattice().is_heisenberg_only() {
        return if max_weight >= Weight::zero() { vec![vec![0; r]] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut cur = vec![0i64; r];
    fn rec(space: &SpaceRef, i: usize, budget: Weight, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        let d = space.lattice().norm(i);
        // (d m + k)^2 / (2d) <= budget  =>  |d m + k| <= sqrt(2 d budget)
        let bound = (budget * Weight::from_integer(2 * d)).floor().to_integer();
        let mut s = 0i64;
        while (s + 1) * (s + 1) <= bound {
            s += 1;
        }
        let k = space.coset().numerators()[i];
        let lo = (-s - k).div_euclid(d) - 1;
        let hi = (s - k).div_euclid(d) + 1;
        for m in lo..=hi {
            let p = d * m + k;
            let w = Weight::new(p * p, 2 * d);
            if w <= budget {
                cur[i] = m;
                rec(space, i + 1, budget - w, cur, out);
            }
        }
        cur[i] = 0;
    }
    rec(space, 0, max_weight, &mut cur, &mut out);
    out.sort();
    out
}

/// All multisets of parts with total level exactly `total`, parts bounded by `max_part`.
fn colored_partitions(rank: usize, total: u32, max_part: Option<Part>, prefix: &mut Vec<Part>, out: &mut Vec<Vec<Part>>) {
    if total == 0 {
        out.push(prefix.clone());
        return;
    }
    for level in (1..=total).rev() {
        for coord in 0..rank {
            let p = Part::new(coord, level);
            if max_part.is_some_and(|m| p > m) {
                continue;
            }
            prefix.push(p);
            colored_partitions(rank, total - level, Some(p), prefix, out);
            prefix.pop();
        }
    }
}

/// Basis of the stratum of weight `d`, in canonical order.
pub fn stratum_basis(space: &SpaceRef, d: Weight) -> Vec<Basis> {
    let mut out = Vec::new();
    for pt in points(space, d) {
        let rest = d - space.point_weight(&pt);
        if !rest.is_integer() || rest < Weight::zero() {
            continue;
        }
        let mut parts = Vec::new();
        colored_partitions(space.rank(), rest.to_integer() as u32, None, &mut Vec::new(), &mut parts);
        for p in parts {
            out.push(space.basis(p, pt.clone()));
        }
    }
    out.sort();
    out
}

/// Every stratum of weight at most `max_weight`, keyed by exact weight.
pub fn enumerate_basis(space: &SpaceRef, max_weight: Weight) -> BTreeMap<Weight, Vec<Basis>> {
    let mut out: BTreeMap<Weight, Vec<Basis>> = BTreeMap::new();
    for w in strata(space, max_weight) {
        out.insert(w, stratum_basis(space, w));
    }
    out
}

/// Weights `≤ max_weight` that occur in the space.
pub fn strata(space: &SpaceRef, max_weight: Weight) -> Vec<Weight> {
    let mut ws = std::collections::BTreeSet::new();
    for pt in points(space, max_weight) {
        let mut w = space.point_weight(&pt);
        while w <= max_weight {
            ws.insert(w);
            w += Weight::from_integer(1);
        }
    }
    ws.into_iter().collect()
}

/// `α_i(n)` on a single basis vector; always a single term.
pub(crate) fn heis_basis(space: &SpaceRef, i: usize, n: i64, b: &Basis) -> Option<(Basis, Scalar)> {
    use std::cmp::Ordering::*;
    match n.cmp(&0) {
        Less => {
            let mut parts = b.parts().to_vec();
            let p = Part::new(i, (-n) as u32);
            let pos = parts.iter().position(|q| *q < p).unwrap_or(parts.len());
            parts.insert(pos, p);
            Some((b.with_parts(parts, -n), int(1)))
        }
        Equal => {
            let c = space.point_numerator(i, b.point()[i]);
            (c != 0).then(|| (b.clone(), int(c)))
        }
        Greater => {
            let p = Part::new(i, n as u32);
            let count = b.parts().iter().filter(|q| **q == p).count() as i64;
            if count == 0 {
                return None;
            }
            let mut parts = b.parts().to_vec();
            let pos = parts.iter().position(|q| *q == p).unwrap();
            parts.remove(pos);
            Some((b.with_parts(parts, -n), int(count * n * space.lattice().norm(i))))
        }
    }
}

pub(crate) fn apply_heis(i: usize, n: i64, v: &Element) -> Element {
    let space = v.space();
    let mut out = Element::zero(space);
    for (b, c) in v.terms() {
        if let Some((nb, k)) = heis_basis(space, i, n, b) {
            out.add_term(nb, k * c);
        }
    }
    out
}

/// `β(n) = Σ b_i α_i(n)`.
fn apply_beta(beta: &[i64], n: i64, v: &Element) -> Element {
    let mut out = Element::zero(v.space());
    for (i, &b) in beta.iter().enumerate() {
        if b != 0 {
            out.add_scaled(&int(b), &apply_heis(i, n, v)).expect("same space");
        }
    }
    out
}

/// The Heisenberg mode `α_i(n)` acting on `v`.
pub fn heisenberg_mode(i: usize, n: i64, v: &Element) -> Result<Element> {
    let space = v.space();
    if i >= space.rank() {
        return Err(Error::InvalidLattice(format!("coordinate {i} out of range")));
    }
    if let Some(w) = v.max_weight() {
        space.check_weight(w - Weight::from_integer(n))?;
    }
    Ok(apply_heis(i, n, v))
}

/// Mode `(e^β)_n` of the exponential vertex operator
/// `Y(e^β, z) = E^-(-β, z) E^+(-β, z) e_β z^β`, acting on `v`.
pub fn lattice_mode(beta: &[i64], n: i64, v: &Element) -> Result<Element> {
    let space = v.space();
    if beta.len() != space.rank() {
        return Err(Error::InvalidLattice("lattice vector has wrong rank".into()));
    }
    if space.lattice().is_heisenberg_only() && beta.iter().any(|&b| b != 0) {
        return Err(Error::InvalidLattice("M(1) has no exponential operators".into()));
    }
    let beta_weight: Weight = beta
        .iter()
        .enumerate()
        .map(|(i, &b)| Weight::from_integer(b * b * space.lattice().norm(i)) / Weight::from_integer(2))
        .sum();
    let shift = beta_weight - Weight::from_integer(n + 1);
    if let Some(w) = v.max_weight() {
        space.check_weight(w + shift)?;
    }
    let mut out = Element::zero(space);
    let min = space.min_weight();
    for (b, c) in v.terms() {
        if b.weight() + shift < min {
            continue;
        }
        let s = space.pairing(beta, b.point());
        let point: Vec<i64> = b.point().iter().zip(beta).map(|(m, x)| m + x).collect();
        let shifted = Element::basis(space, space.basis(b.parts().to_vec(), point));
        // E^+ coefficients: t P_t = -Σ_k β(k) P_{t-k}
        let tmax = b.total_level();
        let mut plus: Vec<Element> = vec![shifted];
        for t in 1..=tmax {
            let mut acc = Element::zero(space);
            for k in 1..=t {
                acc.add_scaled(&int(1), &apply_beta(beta, k, &plus[(t - k) as usize]))?;
            }
            plus.push(acc.scaled(&ratio(-1, t)));
        }
        for (t, pt) in plus.iter().enumerate() {
            let u = t as i64 - n - 1 - s;
            if u < 0 || pt.is_zero() {
                continue;
            }
            // E^- coefficients: u S_u = Σ_k β(-k) S_{u-k}
            let mut minus: Vec<Element> = vec![pt.clone()];
            for j in 1..=u {
                let mut acc = Element::zero(space);
                for k in 1..=j {
                    acc.add_scaled(&int(1), &apply_beta(beta, -k, &minus[(j - k) as usize]))?;
                }
                minus.push(acc.scaled(&ratio(1, j)));
            }
            out.add_scaled(c, &minus[u as usize])?;
        }
    }
    Ok(out)
}

/// `θ(α_{i1}(-n_1)⋯α_{ik}(-n_k) e^β) = (-1)^k α_{i1}(-n_1)⋯α_{ik}(-n_k) e^{-β}`.
pub fn theta(v: &Element) -> Result<Element> {
    let space = v.space();
    if !space.is_algebra() {
        return Err(Error::ThetaOnCoset);
    }
    Ok(Element::from_terms(
        space,
        v.terms().iter().map(|(b, c)| {
            let point: Vec<i64> = b.point().iter().map(|m| -m).collect();
            let sign = if b.parts().len() % 2 == 0 { c.clone() } else { -c.clone() };
            (space.basis(b.parts().to_vec(), point), sign)
        }),
    ))
}

/// Sign of a θ-eigenspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// Echelon basis of the `±1` eigenspace of θ in the stratum of weight `d`.
pub fn fixed_subspace(space: &SpaceRef, sign: Sign, d: Weight) -> Result<RowBasis> {
    let mut vs = Vec::new();
    for b in stratum_basis(space, d) {
        let e = Element::basis(space, b);
        let t = theta(&e)?;
        vs.push(match sign {
            Sign::Plus => e.add(&t)?,
            Sign::Minus => e.sub(&t)?,
        });
    }
    row_reduce(space, Some(d), &vs)
}

/// `ω = Σ_i (1/(2 d_i)) α_i(-1)^2 1`.
pub fn conformal_vector(space: &SpaceRef) -> Element {
    let mut out = Element::zero(space);
    for (i, &d) in space.lattice().norms().iter().enumerate() {
        let b = space.basis(vec![Part::new(i, 1), Part::new(i, 1)], vec![0; space.rank()]);
        out.add_term(b, ratio(1, 2 * d));
    }
    out
}

/// The state `α_i(-1) 1`.
pub fn heisenberg_state(space: &SpaceRef, i: usize) -> Element {
    Element::basis(space, space.basis(vec![Part::new(i, 1)], vec![0; space.rank()]))
}

/// The state `e^β`.
pub fn exponential_state(space: &SpaceRef, beta: &[i64]) -> Element {
    Element::basis(space, space.basis(Vec::new(), beta.to_vec()))
}
