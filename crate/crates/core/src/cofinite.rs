//! `C_n` subspaces, quotient tables, the generating set `X` with its
//! parameters `r, N, Q`, `C_1` representatives and the tensor-product `C_2`
//! decomposition.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::graded::{tensor_product, Graded};
use crate::linalg::{quotient_dim, row_reduce, Combo, Echelon, RowBasis};
use crate::modes::ModeEngine;
use crate::pbw::Letter;
use crate::scalar::{Scalar, Weight};
use crate::space::SpaceRef;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRow {
    pub stratum: Weight,
    pub ambient: usize,
    pub subspace: usize,
    pub quotient: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientTable {
    pub space: String,
    pub n: i64,
    pub max: Weight,
    pub rows: Vec<QuotientRow>,
    /// Smallest `N0` with quotient 0 on every stratum in `[N0, max]` and `max - N0 ≥ 3`.
    pub stable_from: Option<Weight>,
}

impl QuotientTable {
    pub fn stabilized(&self) -> bool {
        self.stable_from.is_some()
    }

    pub fn quotient(&self, d: Weight) -> Option<usize> {
        self.rows.iter().find(|r| r.stratum == d).map(|r| r.quotient)
    }

    pub fn quotient_total(&self) -> usize {
        self.rows.iter().map(|r| r.quotient).sum()
    }
}

fn stable_from(rows: &[QuotientRow], max: Weight) -> Option<Weight> {
    let mut n0 = None;
    for r in rows.iter().rev() {
        if r.quotient != 0 {
            break;
        }
        n0 = Some(r.stratum);
    }
    n0.filter(|&n0| max - n0 >= Weight::from_integer(3))
}

fn require_cutoff(g: &Graded, d: Weight) -> Result<()> {
    if g.ambient().cutoff() < d {
        return Err(Error::InsufficientCutoff(format!(
            "stratum {d} needs cutoff ≥ {d}, space has {}",
            g.ambient().cutoff()
        )));
    }
    Ok(())
}

fn same_lattice(algebra: &Graded, target: &Graded) -> Result<()> {
    if !algebra.is_algebra() || algebra.ambient().lattice() != target.ambient().lattice() {
        return Err(Error::MixedSpace);
    }
    Ok(())
}

/// Positive-weight strata of `algebra` paired with target strata so that
/// `wt v + shift + wt w = d`.
fn pairs(algebra: &Graded, target: &Graded, shift: Weight, d: Weight) -> Result<Vec<(Element, Element)>> {
    let mut out = Vec::new();
    let tstrata = target.strata(d);
    for a in algebra.strata(d) {
        if a.is_zero() {
            continue;
        }
        let b = d - a - shift;
        if !tstrata.contains(&b) {
            continue;
        }
        let vs = algebra.stratum_basis(a)?;
        let ws = target.stratum_basis(b)?;
        for v in vs.iter() {
            for w in ws.iter() {
                out.push((v.clone(), w.clone()));
            }
        }
    }
    Ok(out)
}

/// Echelon basis of `C_n` (span of `v_{-n} w`, `v` in `algebra`, `w` in `target`)
/// intersected with the stratum of weight `d`.
pub fn cn_subspace(engine: &ModeEngine, algebra: &Graded, target: &Graded, n: i64, d: Weight) -> Result<RowBasis> {
    if n < 2 {
        return Err(Error::Config(format!("C_n needs n ≥ 2, got {n}")));
    }
    same_lattice(algebra, target)?;
    require_cutoff(target, d)?;
    require_cutoff(algebra, d)?;
    let work = pairs(algebra, target, Weight::from_integer(n - 1), d)?;
    let products = engine.exec().try_map(&work, |(v, w)| engine.mode_action(v, -n, w))?;
    row_reduce(target.ambient(), Some(d), &products)
}

/// Quotient dimensions of `target / C_n` on every stratum up to `max`.
pub fn quotient_table(engine: &ModeEngine, algebra: &Graded, target: &Graded, n: i64, max: Weight) -> Result<QuotientTable> {
    require_cutoff(target, max)?;
    let mut rows = Vec::new();
    for d in target.strata(max) {
        let ambient = target.stratum_span(d)?;
        let sub = cn_subspace(engine, algebra, target, n, d)?;
        let quotient = quotient_dim(&ambient, &sub)?;
        rows.push(QuotientRow { stratum: d, ambient: ambient.rank(), subspace: sub.rank(), quotient });
    }
    let stable_from = stable_from(&rows, max);
    Ok(QuotientTable { space: target.to_string(), n, max, rows, stable_from })
}

/// Greedy complement: walks `candidates` in canonical order (by leading
/// term) and keeps each one that is independent of `sub` and the kept ones.
fn complement_reps(sub: &RowBasis, candidates: &[Element], count: usize) -> Result<Vec<Element>> {
    let mut sorted: Vec<&Element> = candidates.iter().collect();
    sorted.sort_by(|a, b| a.leading().map(|x| x.0).cmp(&b.leading().map(|x| x.0)));
    let mut ech = sub.to_echelon();
    let mut reps = Vec::new();
    for c in sorted {
        if reps.len() == count {
            break;
        }
        if ech.insert(c)? {
            reps.push(c.clone());
        }
    }
    debug_assert_eq!(reps.len(), count);
    Ok(reps)
}

/// The generating set `X` and the derived parameters `r`, `N = r + 1`, `Q = 2N - 2`.
#[derive(Clone, Debug)]
pub struct RewriteParams {
    pub x: Vec<Element>,
    pub x_weights: Vec<i64>,
    pub r: i64,
    pub n: i64,
    pub q: i64,
    pub table: QuotientTable,
}

impl RewriteParams {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn weight(&self, x: usize) -> i64 {
        self.x_weights[x]
    }

    pub fn algebra(&self) -> &SpaceRef {
        self.x[0].space()
    }
}

/// Representatives of `V / C_2(V)` outside `V_0`, one per quotient coordinate,
/// chosen greedily in canonical order. Refuses when the table does not stabilize.
pub fn choose_x(engine: &ModeEngine, algebra: &Graded, max: Weight) -> Result<RewriteParams> {
    let table = quotient_table(engine, algebra, algebra, 2, max)?;
    if !table.stabilized() {
        return Err(Error::NotStabilized(max));
    }
    let mut x = Vec::new();
    let mut x_weights = Vec::new();
    for row in &table.rows {
        if row.quotient == 0 || row.stratum.is_zero() {
            continue;
        }
        let sub = cn_subspace(engine, algebra, algebra, 2, row.stratum)?;
        let reps = complement_reps(&sub, &algebra.stratum_basis(row.stratum)?, row.quotient)?;
        for rep in reps {
            x_weights.push(row.stratum.to_integer());
            x.push(rep);
        }
    }
    if x.is_empty() {
        return Err(Error::Config("C_2 quotient has nothing outside V_0".into()));
    }
    let r = *x_weights.iter().max().unwrap();
    let n = r + 1;
    Ok(RewriteParams { x, x_weights, r, n, q: 2 * n - 2, table })
}

/// Per-stratum data for `C_1(V)`: its dimension, `C_2`'s dimension, and
/// homogeneous representatives of `V / C_1(V)`.
#[derive(Clone, Debug)]
pub struct C1Stratum {
    pub stratum: Weight,
    pub ambient: usize,
    pub c1: usize,
    pub c2: usize,
    pub reps: Vec<Element>,
}

/// `C_1(V) ∩ V_d`, spanned by `u_{-1} v` and `L(-1) u = u_{-2} 1` with `u, v` of positive weight.
pub fn c1_subspace(engine: &ModeEngine, algebra: &Graded, d: Weight) -> Result<RowBasis> {
    require_cutoff(algebra, d)?;
    let mut work = pairs(algebra, algebra, Weight::zero(), d)?;
    work.retain(|(_, w)| w.homogeneous_weight().is_some_and(|b| !b.is_zero()));
    let mut products = engine.exec().try_map(&work, |(u, v)| engine.mode_action(u, -1, v))?;
    let one = Element::vacuum(algebra.ambient());
    let dm1 = d - Weight::from_integer(1);
    if dm1 > Weight::zero() && algebra.strata(dm1).contains(&dm1) {
        for u in algebra.stratum_basis(dm1)?.iter() {
            products.push(engine.mode_action(u, -2, &one)?);
        }
    }
    row_reduce(algebra.ambient(), Some(d), &products)
}

/// Representatives `Y` of `V / C_1(V)` on strata up to `max`, checking `C_2 ⊆ C_1` per stratum.
pub fn c1_reps(engine: &ModeEngine, algebra: &Graded, max: Weight) -> Result<Vec<C1Stratum>> {
    require_cutoff(algebra, max)?;
    let mut out = Vec::new();
    for d in algebra.strata(max) {
        let ambient = algebra.stratum_span(d)?;
        let c1 = c1_subspace(engine, algebra, d)?;
        let c2 = cn_subspace(engine, algebra, algebra, 2, d)?;
        for (i, r) in c2.rows().iter().enumerate() {
            if !c1.contains(r)? {
                return Err(Error::NotContained { witness: i });
            }
        }
        let q = quotient_dim(&ambient, &c1)?;
        let reps = complement_reps(&c1, &algebra.stratum_basis(d)?, q)?;
        out.push(C1Stratum { stratum: d, ambient: ambient.rank(), c1: c1.rank(), c2: c2.rank(), reps });
    }
    Ok(out)
}

/// Words `x^1_{-n_1} ⋯ x^k_{-n_k} 1` with `n_1 > ⋯ > n_k > 0`, evaluated and
/// row-reduced per stratum, so states can be rewritten in terms of them.
pub struct SpanningWords {
    algebra: SpaceRef,
    strata: BTreeMap<Weight, WordStratum>,
}

struct WordStratum {
    words: Vec<Vec<Letter>>,
    echelon: Echelon,
}

impl SpanningWords {
    pub fn build(engine: &ModeEngine, params: &RewriteParams, max: Weight) -> Result<Self> {
        let algebra = params.algebra().with_cutoff(max);
        let x: Vec<Element> = params.x.iter().map(|e| e.in_space(&algebra)).collect::<Result<_>>()?;
        let mut strata: BTreeMap<Weight, WordStratum> = BTreeMap::new();
        let mut stack = vec![(Vec::<Letter>::new(), Element::vacuum(&algebra), Weight::zero())];
        while let Some((word, state, wt)) = stack.pop() {
            let entry = strata
                .entry(wt)
                .or_insert_with(|| WordStratum { words: Vec::new(), echelon: Echelon::tracked(&algebra) });
            entry.echelon.insert(&state)?;
            entry.words.push(word.clone());
            let min_n = word.first().map_or(1, |l| -l.mode + 1);
            for (i, xi) in x.iter().enumerate() {
                let mut n = min_n;
                loop {
                    let nw = wt + Weight::from_integer(params.weight(i) + n - 1);
                    if nw > max {
                        break;
                    }
                    let next = engine.mode_action(xi, -n, &state)?;
                    if !next.is_zero() {
                        let mut w = vec![Letter { x: i, mode: -n }];
                        w.extend_from_slice(&word);
                        stack.push((w, next, nw));
                    }
                    n += 1;
                }
            }
        }
        Ok(Self { algebra, strata })
    }

    pub fn max(&self) -> Weight {
        self.algebra.cutoff()
    }

    pub fn words(&self, d: Weight) -> &[Vec<Letter>] {
        self.strata.get(&d).map_or(&[], |s| &s.words)
    }

    pub fn rank(&self, d: Weight) -> usize {
        self.strata.get(&d).map_or(0, |s| s.echelon.rank())
    }

    /// Writes `v` as a combination of spanning words, one homogeneous component at a time.
    pub fn solve(&self, v: &Element) -> Result<Vec<(Vec<Letter>, Scalar)>> {
        let mut out = Vec::new();
        for (d, comp) in v.components() {
            let stratum = self.strata.get(&d).ok_or(Error::DecompositionNotFound(d))?;
            let comp = comp.in_space(&self.algebra)?;
            let combo: Combo = stratum.echelon.solve(&comp)?.ok_or(Error::DecompositionNotFound(d))?;
            for (i, c) in combo {
                out.push((stratum.words[i].clone(), c));
            }
        }
        Ok(out)
    }

    /// Whether the words span the whole stratum `d` of `algebra`.
    pub fn spans(&self, algebra: &Graded, d: Weight) -> Result<bool> {
        let Some(s) = self.strata.get(&d) else {
            return Ok(algebra.stratum_dim(d)? == 0);
        };
        for b in algebra.stratum_basis(d)?.iter() {
            if !s.echelon.contains(&b.in_space(&self.algebra)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorRow {
    pub stratum: Weight,
    pub ambient: usize,
    pub c2: usize,
    pub quotient: usize,
    /// `Σ_{d1+d2=d} q1(d1) q2(d2)`.
    pub product_bound: usize,
    pub contained: bool,
    pub spans: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorReport {
    pub space: String,
    pub rows: Vec<TensorRow>,
    pub total_quotient: usize,
    pub total_product: usize,
}

impl TensorReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.contained && r.spans && r.quotient <= r.product_bound)
            && self.total_quotient <= self.total_product
    }
}

/// Factor representatives including `1`: the spans `W^i` with `V^i = W^i + C_2(V^i)`.
fn factor_reps(engine: &ModeEngine, g: &Graded, table: &QuotientTable) -> Result<BTreeMap<Weight, Vec<Element>>> {
    let mut out = BTreeMap::new();
    for row in &table.rows {
        let sub = cn_subspace(engine, g, g, 2, row.stratum)?;
        out.insert(row.stratum, complement_reps(&sub, &g.stratum_basis(row.stratum)?, row.quotient)?);
    }
    Ok(out)
}

/// Checks `V¹⊗C_2(V²) + C_2(V¹)⊗V² ⊆ C_2(V¹⊗V²)` and `V¹⊗V² = W¹⊗W² + C_2(V¹⊗V²)`
/// on every stratum up to `max`. Factor tables are computed up to `max + 3`.
pub fn tensor_c2_check(engine: &ModeEngine, v1: &Graded, v2: &Graded, max: Weight) -> Result<TensorReport> {
    let fmax = max + Weight::from_integer(3);
    let (g1, g2) = (v1.with_cutoff(fmax), v2.with_cutoff(fmax));
    let t1 = quotient_table(engine, &g1, &g1, 2, fmax)?;
    let t2 = quotient_table(engine, &g2, &g2, 2, fmax)?;
    for t in [&t1, &t2] {
        if !t.stabilized() {
            return Err(Error::NotStabilized(fmax));
        }
    }
    let w1 = factor_reps(engine, &g1, &t1)?;
    let w2 = factor_reps(engine, &g2, &t2)?;
    let tensor = Graded::tensor(&g1, &g2, max)?;
    let big = Arc::clone(tensor.ambient());
    let mut rows = Vec::new();
    for d in tensor.strata(max) {
        let ambient = tensor.stratum_span(d)?;
        let c2 = cn_subspace(engine, &tensor, &tensor, 2, d)?;
        let mut contained = true;
        let mut spanning = c2.to_echelon();
        let mut product_bound = 0;
        for d1 in g1.strata(d) {
            let d2 = d - d1;
            if !g2.strata(d2).contains(&d2) {
                continue;
            }
            let c21 = cn_subspace(engine, &g1, &g1, 2, d1)?;
            let c22 = cn_subspace(engine, &g2, &g2, 2, d2)?;
            let b1 = g1.stratum_basis(d1)?;
            let b2 = g2.stratum_basis(d2)?;
            for x in c21.rows() {
                for y in b2.iter() {
                    contained &= c2.contains(&tensor_product(&big, x, y))?;
                }
            }
            for x in b1.iter() {
                for y in c22.rows() {
                    contained &= c2.contains(&tensor_product(&big, x, y))?;
                }
            }
            let r1 = &w1[&d1];
            let r2 = &w2[&d2];
            product_bound += r1.len() * r2.len();
            for x in r1 {
                for y in r2 {
                    spanning.insert(&tensor_product(&big, x, y))?;
                }
            }
        }
        let quotient = quotient_dim(&ambient, &c2)?;
        rows.push(TensorRow {
            stratum: d,
            ambient: ambient.rank(),
            c2: c2.rank(),
            quotient,
            product_bound,
            contained,
            spans: spanning.rank() == ambient.rank(),
        });
    }
    let total_quotient = rows.iter().map(|r| r.quotient).sum();
    Ok(TensorReport {
        space: tensor.to_string(),
        rows,
        total_quotient,
        total_product: t1.quotient_total() * t2.quotient_total(),
    })
}
