//! The mode action `u_n w` for arbitrary states `u`, by structural recursion
//! on `u`, and exact checks of the commutator, iterate and Virasoro relations.
//!
//! A basis state `α_i(-l) u'` is peeled at its largest part and expanded with
//!
//! `(a_{-l} u')_n = Σ_{j≥0} C(l+j-1, j) [a_{-l-j} u'_{n+j} - (-1)^l u'_{n-l-j} a_j]`
//!
//! where `a = α_i(-1)1`, so `a_m = α_i(m)`. A state without parts is `e^β`,
//! handled by [`lattice_mode`]. Both sums are cut off by the weight law: a
//! vector whose weight would fall below the lowest weight of the target space
//! is zero, so no term is ever evaluated to decide that it vanishes.

use std::collections::HashMap;

use num_traits::One;
use parking_lot::RwLock;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::fock::{conformal_vector, heis_basis, lattice_mode};
use crate::par::Exec;
use crate::scalar::{binom, floor, int, ratio, Scalar, Weight};
use crate::space::{Basis, CosetSpec, LatticeSpec, SpaceRef};

type MemoKey = (LatticeSpec, CosetSpec, Basis, i64, Basis);

/// Evaluates modes of states of `V` on vectors of `V` or of a `V`-module.
pub struct ModeEngine {
    memo: Option<RwLock<HashMap<MemoKey, Element>>>,
    exec: Exec,
}

impl Default for ModeEngine {
    fn default() -> Self {
        Self::new()
    }
}

impl ModeEngine {
    pub fn new() -> Self {
        Self { memo: Some(RwLock::new(HashMap::new())), exec: Exec::default() }
    }

    pub fn without_memo() -> Self {
        Self { memo: None, exec: Exec::default() }
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn exec(&self) -> Exec {
        self.exec
    }

    pub fn memo_len(&self) -> usize {
        self.memo.as_ref().map_or(0, |m| m.read().len())
    }

    /// `u_n w`. `u` must live in the lattice algebra underlying `w`'s space.
    pub fn mode_action(&self, u: &Element, n: i64, w: &Element) -> Result<Element> {
        let us = u.space();
        let ws = w.space();
        if !us.is_algebra() || us.lattice() != ws.lattice() {
            return Err(Error::MixedSpace);
        }
        let mut out = Element::zero(ws);
        for (ub, uc) in u.terms() {
            for (wb, wc) in w.terms() {
                let r = self.basis_mode(ws, ub, n, wb)?;
                out.add_scaled(&(uc * wc), &r)?;
            }
        }
        Ok(out)
    }

    /// `u_n w` on basis vectors, memoized.
    pub fn basis_mode(&self, space: &SpaceRef, u: &Basis, n: i64, w: &Basis) -> Result<Element> {
        let target = u.weight() - Weight::from_integer(n + 1) + w.weight();
        if target < space.min_weight() {
            return Ok(Element::zero(space));
        }
        space.check_weight(target)?;
        let key = self.memo.as_ref().map(|_| (space.lattice().clone(), space.coset().clone(), u.clone(), n, w.clone()));
        if let (Some(memo), Some(key)) = (&self.memo, &key) {
            if let Some(hit) = memo.read().get(key) {
                return hit.in_space(space);
            }
        }
        let out = self.basis_mode_uncached(space, u, n, w)?;
        debug_assert!(out.terms().keys().all(|b| b.weight() == target), "weight law violated");
        if let (Some(memo), Some(key)) = (&self.memo, key) {
            memo.write().entry(key).or_insert_with(|| out.clone());
        }
        Ok(out)
    }

    fn basis_mode_uncached(&self, space: &SpaceRef, u: &Basis, n: i64, w: &Basis) -> Result<Element> {
        let Some((&first, rest)) = u.parts().split_first() else {
            return lattice_mode(u.point(), n, &Element::basis(space, w.clone()));
        };
        let level = first.level as i64;
        let i = first.coord as usize;
        let inner = u.with_parts(rest.to_vec(), -level);
        let min = space.min_weight();
        let mut out = Element::zero(space);

        // Σ_j C(l+j-1, j) α_i(-l-j) u'_{n+j} w
        let top = floor(inner.weight() - Weight::from_integer(n + 1) + w.weight() - min);
        for j in 0..=top {
            let v = self.basis_mode(space, &inner, n + j, w)?;
            if v.is_zero() {
                continue;
            }
            let c = binom(level + j - 1, j);
            for (b, x) in v.terms() {
                let (nb, k) = heis_basis(space, i, -level - j, b).expect("creation never vanishes");
                out.add_term(nb, &c * k * x);
            }
        }

        // -(-1)^l Σ_j C(l+j-1, j) u'_{n-l-j} α_i(j) w
        let sign = if level % 2 == 0 { -Scalar::one() } else { Scalar::one() };
        let max_level = w.parts().iter().map(|p| p.level as i64).max().unwrap_or(0);
        for j in 0..=max_level {
            let Some((wb, k)) = heis_basis(space, i, j, w) else { continue };
            let v = self.basis_mode(space, &inner, n - level - j, &wb)?;
            if v.is_zero() {
                continue;
            }
            let c = &sign * binom(level + j - 1, j) * k;
            out.add_scaled(&c, &v)?;
        }
        Ok(out)
    }

    /// `[u_{-k}, v_{-q}] w` against `Σ_{i≥0} C(-k, i) (u_i v)_{-k-q-i} w`.
    pub fn verify_commutator(&self, u: &Element, v: &Element, k: i64, q: i64, w: &Element) -> Result<IdentityReport> {
        let lhs = self
            .mode_action(u, -k, &self.mode_action(v, -q, w)?)?
            .sub(&self.mode_action(v, -q, &self.mode_action(u, -k, w)?)?)?;
        let mut rhs = Element::zero(w.space());
        let mut summands = 0;
        let (Some(wu), Some(wv)) = (u.max_weight(), v.max_weight()) else {
            return Ok(IdentityReport::new(lhs, rhs, 0));
        };
        for i in 0..=floor(wu + wv - Weight::one()).max(-1) {
            let uv = self.mode_action(u, i, v)?;
            if uv.is_zero() {
                continue;
            }
            let t = self.mode_action(&uv, -k - q - i, w)?;
            if !t.is_zero() {
                summands += 1;
                rhs.add_scaled(&binom(-k, i), &t)?;
            }
        }
        Ok(IdentityReport::new(lhs, rhs, summands))
    }

    /// `(u_{-r} v)_{-q} w` against the two-sum expansion in modes of `u` and `v`.
    pub fn verify_iterate(&self, u: &Element, v: &Element, r: i64, q: i64, w: &Element) -> Result<IdentityReport> {
        let uv = self.mode_action(u, -r, v)?;
        let lhs = self.mode_action(&uv, -q, w)?;
        let mut rhs = Element::zero(w.space());
        let mut summands = 0;
        let (Some(wu), Some(wv), Some(ww)) = (u.max_weight(), v.max_weight(), w.max_weight()) else {
            return Ok(IdentityReport::new(lhs, rhs, 0));
        };
        let min = w.space().min_weight();
        let top1 = floor(wv + Weight::from_integer(q - 1) + ww - min);
        for i in 0..=top1.max(-1) {
            let inner = self.mode_action(v, -q + i, w)?;
            if inner.is_zero() {
                continue;
            }
            let t = self.mode_action(u, -r - i, &inner)?;
            if !t.is_zero() {
                summands += 1;
                let c = if i % 2 == 0 { binom(-r, i) } else { -binom(-r, i) };
                rhs.add_scaled(&c, &t)?;
            }
        }
        let top2 = floor(wu - Weight::one() + ww - min);
        for i in 0..=top2.max(-1) {
            let inner = self.mode_action(u, i, w)?;
            if inner.is_zero() {
                continue;
            }
            let t = self.mode_action(v, -r - q - i, &inner)?;
            if !t.is_zero() {
                summands += 1;
                let c = if (i - r).rem_euclid(2) == 0 { -binom(-r, i) } else { binom(-r, i) };
                rhs.add_scaled(&c, &t)?;
            }
        }
        Ok(IdentityReport::new(lhs, rhs, summands))
    }

    /// `L(k) = ω_{k+1}` on `v`.
    pub fn virasoro(&self, algebra: &SpaceRef, k: i64, v: &Element) -> Result<Element> {
        self.mode_action(&conformal_vector(algebra), k + 1, v)
    }

    /// `[L(m), L(n)] v = (m-n) L(m+n) v + δ_{m+n,0} (m^3-m)/12 · c · v` with `c = rank`.
    pub fn virasoro_check(&self, algebra: &SpaceRef, m: i64, n: i64, v: &Element) -> Result<IdentityReport> {
        let lm = |x: &Element| self.virasoro(algebra, m, x);
        let ln = |x: &Element| self.virasoro(algebra, n, x);
        let lhs = lm(&ln(v)?)?.sub(&ln(&lm(v)?)?)?;
        let mut rhs = self.virasoro(algebra, m + n, v)?.scaled(&int(m - n));
        if m + n == 0 {
            let c = ratio((m * m * m - m) * algebra.rank() as i64, 12);
            rhs.add_scaled(&c, v)?;
        }
        Ok(IdentityReport::new(lhs, rhs, 1))
    }
}

/// Outcome of an exact identity check.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub holds: bool,
    pub lhs: Element,
    pub rhs: Element,
    /// Nonzero summands on the expanded side.
    pub summands: usize,
}

impl IdentityReport {
    fn new(lhs: Element, rhs: Element, summands: usize) -> Self {
        Self { holds: lhs == rhs, lhs, rhs, summands }
    }
}

/// Weight `wt(u) - n - 1` of the operator `u_n` for homogeneous `u`.
pub fn operator_weight(u_weight: Weight, n: i64) -> Weight {
    u_weight - Weight::from_integer(n + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{exponential_state, heisenberg_mode, heisenberg_state, stratum_basis};
    use crate::space::{LatticeSpec, Space};

    fn vl() -> SpaceRef {
        Space::algebra(LatticeSpec::new(vec![2]).unwrap(), Weight::from_integer(8))
    }

    #[test]
    fn vacuum_modes_are_identity() {
        let v = vl();
        let eng = ModeEngine::new();
        let one = Element::vacuum(&v);
        let w = exponential_state(&v, &[1]);
        assert_eq!(eng.mode_action(&one, -1, &w).unwrap(), w);
        for n in [-3, -2, 0, 1, 2] {
            assert!(eng.mode_action(&one, n, &w).unwrap().is_zero());
        }
    }

    #[test]
    fn heisenberg_state_modes_match_base_case() {
        let v = vl();
        let eng = ModeEngine::new();
        let a = heisenberg_state(&v, 0);
        for d in 0..=3 {
            for b in stratum_basis(&v, Weight::from_integer(d)) {
                let w = Element::basis(&v, b);
                for n in -3..=4 {
                    assert_eq!(eng.mode_action(&a, n, &w).unwrap(), heisenberg_mode(0, n, &w).unwrap());
                }
            }
        }
    }

    #[test]
    fn conformal_weight_operator() {
        let v = vl();
        let eng = ModeEngine::new();
        for d in 0..=4 {
            for b in stratum_basis(&v, Weight::from_integer(d)) {
                let w = Element::basis(&v, b);
                assert_eq!(eng.virasoro(&v, 0, &w).unwrap(), w.scaled(&int(d)));
            }
        }
        let omega = conformal_vector(&v);
        assert_eq!(eng.mode_action(&omega, 1, &omega).unwrap(), omega.scaled(&int(2)));
    }

    #[test]
    fn memo_is_output_identical() {
        let v = vl();
        let with = ModeEngine::new();
        let without = ModeEngine::without_memo();
        let basis3 = stratum_basis(&v, Weight::from_integer(3));
        let basis2 = stratum_basis(&v, Weight::from_integer(2));
        for u in &basis3 {
            for w in &basis2 {
                let ue = Element::basis(&v, u.clone());
                let we = Element::basis(&v, w.clone());
                for n in -2..=3 {
                    assert_eq!(with.mode_action(&ue, n, &we).unwrap(), without.mode_action(&ue, n, &we).unwrap());
                }
            }
        }
        assert!(with.memo_len() > 0);
    }

    #[test]
    fn commutator_and_iterate_small_cases() {
        let v = vl();
        let eng = ModeEngine::new();
        let a = heisenberg_state(&v, 0);
        let one = Element::vacuum(&v);
        let c = eng.verify_commutator(&a, &a, 1, 1, &one).unwrap();
        assert!(c.holds);
        let it = eng.verify_iterate(&a, &a, 1, 1, &one).unwrap();
        assert!(it.holds);
        let x = exponential_state(&v, &[1]);
        let it = eng.verify_iterate(&one, &x, 1, 2, &one).unwrap();
        assert!(it.holds);
    }

    #[test]
    fn virasoro_central_term() {
        let v = vl();
        let eng = ModeEngine::new();
        let one = Element::vacuum(&v);
        let r = eng.virasoro_check(&v, 2, -2, &one).unwrap();
        assert!(r.holds);
        assert_eq!(r.lhs, one.scaled(&ratio(1, 2)));
        assert!(eng.virasoro_check(&v, 1, -1, &one).unwrap().lhs.is_zero());
    }
}
