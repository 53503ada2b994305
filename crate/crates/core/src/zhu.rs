//! Zhu's algebra `A(V) = V / O(V)` at a weight truncation, its product, and
//! the zero-mode action `o(u) = u_{wt u - 1}` on bottom strata of modules.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::fock::conformal_vector;
use crate::graded::Graded;
use crate::linalg::{row_reduce, Echelon, RowBasis};
use crate::modes::ModeEngine;
use crate::scalar::{binom, Scalar, Weight};

fn weight_of(b: Weight) -> Result<i64> {
    if !b.is_integer() {
        return Err(Error::Config(format!("Zhu products need integral weights, got {b}")));
    }
    Ok(b.to_integer())
}

fn zhu_sum(engine: &ModeEngine, u: &Element, v: &Element, shift: i64) -> Result<Element> {
    let mut out = Element::zero(v.space());
    for (wu, comp) in u.components() {
        let wu = weight_of(wu)?;
        for i in 0..=wu {
            let t = engine.mode_action(&comp, i - shift, v)?;
            out.add_scaled(&binom(wu, i), &t)?;
        }
    }
    Ok(out)
}

/// `u * v = Σ_i C(wt u, i) u_{i-1} v`, extended linearly over homogeneous components of `u`.
pub fn star(engine: &ModeEngine, u: &Element, v: &Element) -> Result<Element> {
    zhu_sum(engine, u, v, 1)
}

/// `u ∘ v = Σ_i C(wt u, i) u_{i-2} v`.
pub fn circ(engine: &ModeEngine, u: &Element, v: &Element) -> Result<Element> {
    zhu_sum(engine, u, v, 2)
}

/// `o(u) w = u_{wt u - 1} w`, summed over homogeneous components of `u`.
pub fn o_action(engine: &ModeEngine, u: &Element, w: &Element) -> Result<Element> {
    let mut out = Element::zero(w.space());
    for (wu, comp) in u.components() {
        let t = engine.mode_action(&comp, weight_of(wu)? - 1, w)?;
        out.add_scaled(&Scalar::one(), &t)?;
    }
    Ok(out)
}

/// `A(V)` truncated at weight `D`: `O(V)` is approximated by the span of all
/// `u ∘ v` with `wt u + wt v + 1 ≤ D`.
#[derive(Clone, Debug)]
pub struct ZhuContext {
    pub space: String,
    pub d: i64,
    pub o_basis: RowBasis,
    pub a_basis: Vec<Element>,
    pub ambient_dim: usize,
    /// The quotient dimension at `D + 1` and `D + 2`; the context is provisional unless all three agree.
    pub neighbours: [usize; 2],
    reducer: Echelon,
}

impl ZhuContext {
    pub fn dim(&self) -> usize {
        self.a_basis.len()
    }

    pub fn provisional(&self) -> bool {
        self.neighbours.iter().any(|&n| n != self.dim())
    }

    /// Coordinates of `v + O(V)` in the representative basis.
    pub fn coords(&self, v: &Element) -> Result<Vec<Scalar>> {
        if v.max_weight().is_some_and(|w| w > Weight::from_integer(self.d)) {
            return Err(Error::Membership(format!("vector of weight above D = {}", self.d)));
        }
        let v = v.in_space(self.o_basis.space())?;
        let combo = self
            .reducer
            .solve(&v)?
            .ok_or_else(|| Error::Membership(format!("vector outside the truncation D = {}", self.d)))?;
        let k = self.a_basis.len();
        let mut out = vec![Scalar::zero(); k];
        for (i, c) in combo {
            if i < k {
                out[i] = c;
            }
        }
        Ok(out)
    }
}

struct Truncation {
    o: RowBasis,
    reps: Vec<Element>,
    ambient: usize,
}

fn truncate(engine: &ModeEngine, algebra: &Graded, d: i64) -> Result<Truncation> {
    let g = algebra.with_cutoff(Weight::from_integer(d));
    let space = g.ambient().clone();
    let strata = g.strata(Weight::from_integer(d));
    let mut work = Vec::new();
    for &a in &strata {
        if a.is_zero() {
            continue;
        }
        for &b in &strata {
            if a + b + Weight::one() > Weight::from_integer(d) {
                continue;
            }
            for u in g.stratum_basis(a)?.iter() {
                for v in g.stratum_basis(b)?.iter() {
                    work.push((u.clone(), v.clone()));
                }
            }
        }
    }
    let products = engine.exec().try_map(&work, |(u, v)| circ(engine, u, v))?;
    let o = row_reduce(&space, None, &products)?;
    let mut ech = o.to_echelon();
    let mut reps = Vec::new();
    let mut ambient = 0;
    for &s in &strata {
        let mut cands: Vec<Element> = g.stratum_basis(s)?.iter().cloned().collect();
        ambient += cands.len();
        cands.sort_by(|a, b| a.leading().map(|x| x.0).cmp(&b.leading().map(|x| x.0)));
        for c in cands {
            if ech.insert(&c)? {
                reps.push(c);
            }
        }
    }
    Ok(Truncation { o, reps, ambient })
}

/// Builds the truncated quotient at `D` and records the dimensions at `D + 1` and `D + 2`.
pub fn build_context(engine: &ModeEngine, algebra: &Graded, d: i64) -> Result<ZhuContext> {
    let t = truncate(engine, algebra, d)?;
    let n1 = truncate(engine, algebra, d + 1)?.reps.len();
    let n2 = truncate(engine, algebra, d + 2)?.reps.len();
    let mut reducer = Echelon::tracked(t.o.space());
    for r in &t.reps {
        reducer.insert(r)?;
    }
    for r in t.o.rows() {
        reducer.insert(r)?;
    }
    Ok(ZhuContext {
        space: algebra.to_string(),
        d,
        o_basis: t.o,
        a_basis: t.reps,
        ambient_dim: t.ambient,
        neighbours: [n1, n2],
        reducer,
    })
}

/// Structure constants `[a_i] * [a_j] = Σ_k c[i][j][k] [a_k]` and the checks run on them.
#[derive(Clone, Debug)]
pub struct ProductTable {
    pub d: i64,
    /// Truncation at which the products were reduced.
    pub product_d: i64,
    pub constants: Vec<Vec<Vec<Scalar>>>,
    pub identity: usize,
    pub omega: Vec<Scalar>,
    pub associative: bool,
    pub unital: bool,
    pub omega_central: bool,
}

impl ProductTable {
    pub fn holds(&self) -> bool {
        self.associative && self.unital && self.omega_central
    }
}

fn mul(c: &[Vec<Vec<Scalar>>], x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let k = x.len();
    let mut out = vec![Scalar::zero(); k];
    for i in 0..k {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..k {
            if y[j].is_zero() {
                continue;
            }
            let s = &x[i] * &y[j];
            for (o, cij) in out.iter_mut().zip(&c[i][j]) {
                *o += &s * cij;
            }
        }
    }
    out
}

fn unit(k: usize, i: usize) -> Vec<Scalar> {
    (0..k).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()
}

/// Multiplies every pair of representatives and checks associativity on all
/// triples, the identity `[1]` and centrality of `[ω]`. Products landing above
/// `D` are reduced in a wider truncation; if its representatives differ from
/// the context's, the table is refused.
pub fn a_product_table(engine: &ModeEngine, algebra: &Graded, ctx: &ZhuContext) -> Result<ProductTable> {
    if ctx.provisional() {
        return Err(Error::NotStabilized(Weight::from_integer(ctx.d)));
    }
    let k = ctx.dim();
    let top = ctx.a_basis.iter().filter_map(|a| a.max_weight()).max().unwrap_or_default();
    let need = (top + top).to_integer().max(ctx.d);
    let mut wide = None;
    for attempt in [need, need + 2] {
        let c = if attempt == ctx.d { ctx.clone() } else { build_context(engine, algebra, attempt)? };
        if c.dim() == k && c.a_basis == ctx.a_basis {
            wide = Some(c);
            break;
        }
    }
    let wide = wide.ok_or_else(|| Error::Membership(format!("representatives change beyond D = {}", ctx.d)))?;
    let space = wide.o_basis.space().clone();
    let reps: Vec<Element> = ctx.a_basis.iter().map(|a| a.in_space(&space)).collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    let flat = engine.exec().try_map(&pairs, |&(i, j)| wide.coords(&star(engine, &reps[i], &reps[j])?))?;
    let mut constants = vec![vec![Vec::new(); k]; k];
    for ((i, j), c) in pairs.into_iter().zip(flat) {
        constants[i][j] = c;
    }

    let one = Element::vacuum(&space);
    let identity = reps.iter().position(|r| *r == one).ok_or_else(|| Error::Membership("1 is not a representative".into()))?;
    let omega = wide.coords(&conformal_vector(&space))?;

    let mut associative = true;
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                let left = mul(&constants, &constants[a][b], &unit(k, c));
                let right = mul(&constants, &unit(k, a), &constants[b][c]);
                associative &= left == right;
            }
        }
    }
    let unital = (0..k).all(|a| constants[identity][a] == unit(k, a) && constants[a][identity] == unit(k, a));
    let omega_central = (0..k).all(|a| mul(&constants, &omega, &unit(k, a)) == mul(&constants, &unit(k, a), &omega));
    Ok(ProductTable { d: ctx.d, product_d: wide.d, constants, identity, omega, associative, unital, omega_central })
}

/// `A(V)` quotient dimension for each truncation in `range`.
pub fn dimension_trend(engine: &ModeEngine, algebra: &Graded, range: std::ops::RangeInclusive<i64>) -> Result<BTreeMap<i64, usize>> {
    range.map(|d| Ok((d, truncate(engine, algebra, d)?.reps.len()))).collect()
}
