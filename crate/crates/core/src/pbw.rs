//! Rewriting of mode words `x^1_{m_1} ⋯ x^k_{m_k} w` over the generating set
//! `X` into spanning form, the push-down bound `B`, and lowest weight vectors.
//!
//! A word is in normal form when its modes weakly increase from left to right,
//! stay below `L`, never repeat when negative, and repeat at most `Q - 1`
//! times when nonnegative. Rules, tried in this order on the word with the
//! largest measure:
//!
//! * a suffix whose weight falls below the bottom of the module kills the word;
//! * the leftmost adjacent inversion `x_a y_b` (`a > b`) becomes
//!   `y_b x_a + Σ_i C(a, i) (x_i y)_{a+b-i}`;
//! * a rightmost mode `≥ L` kills the word;
//! * an adjacent pair `x_a y_a` with `a < 0` is traded for `(x_{-1} y)_{2a+1}`
//!   minus the other normally ordered terms of that mode;
//! * a run of `Q` equal modes `m ≥ 0` is traded for `s_{Qm+Q-1}` with
//!   `s = x^1_{-1} ⋯ x^Q_{-1} 1` minus the other normally ordered terms.
//!
//! States such as `x_i y` and `s` are written in spanning words of `V` and
//! their modes expanded back into letters. Each step must lower the measure
//! `(Σ wt x, length, potential, inversions)` lexicographically, where the
//! potential is `S_max - Σ m²` for the largest `Σ m²` allowed by words with
//! every mode `≤ L - 1` and the same mode sum. Every step is checked for
//! weight preservation and measure decrease.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};
use parking_lot::Mutex;
use serde::Serialize;

use crate::cofinite::{c1_reps, RewriteParams, SpanningWords};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::graded::Graded;
use crate::linalg::{kernel, row_reduce, RowBasis};
use crate::modes::ModeEngine;
use crate::scalar::{binom, floor, Scalar, Weight};
use crate::space::SpaceRef;

/// A single mode `x_mode` of a generator `x ∈ X`, referenced by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Letter {
    pub x: usize,
    pub mode: i64,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}({})", self.x, self.mode)
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("bad letter {s:?}, expected e.g. x0(-1)"));
        let body = s.strip_prefix('x').ok_or_else(bad)?;
        let (x, rest) = body.split_once('(').ok_or_else(bad)?;
        let mode = rest.strip_suffix(')').ok_or_else(bad)?;
        Ok(Letter { x: x.parse().map_err(|_| bad())?, mode: mode.parse().map_err(|_| bad())? })
    }
}

/// A word of letters together with its operator weight `Σ (wt x - m - 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModeWord {
    letters: Vec<Letter>,
    weight: i64,
}

impl ModeWord {
    pub fn new(letters: Vec<Letter>, params: &RewriteParams) -> Result<Self> {
        if let Some(l) = letters.iter().find(|l| l.x >= params.len()) {
            return Err(Error::Config(format!("letter {l} refers to a generator outside X (|X| = {})", params.len())));
        }
        let weight = word_weight(&letters, params);
        Ok(Self { letters, weight })
    }

    pub fn parse(s: &str, params: &RewriteParams) -> Result<Self> {
        let letters = s.split_whitespace().map(str::parse).collect::<Result<Vec<Letter>>>()?;
        Self::new(letters, params)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for ModeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.letters.iter().map(Letter::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn word_weight(letters: &[Letter], params: &RewriteParams) -> i64 {
    letters.iter().map(|l| params.weight(l.x) - l.mode - 1).sum()
}

/// A normal-form word with the parameters it was certified against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormCertificate {
    pub r: i64,
    pub n: i64,
    pub q: i64,
    pub l: i64,
    pub word: ModeWord,
}

impl NormalFormCertificate {
    /// Letter-by-letter check of the spanning-form restrictions.
    pub fn check(&self) -> bool {
        is_normal(self.word.letters(), self.l, self.q)
    }
}

pub fn is_normal(letters: &[Letter], l: i64, q: i64) -> bool {
    if letters.iter().any(|x| x.mode >= l) {
        return false;
    }
    for pair in letters.windows(2) {
        let (a, b) = (pair[0].mode, pair[1].mode);
        if a > b || (a == b && a < 0) {
            return false;
        }
    }
    let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
    for x in letters.iter().filter(|x| x.mode >= 0) {
        *counts.entry(x.mode).or_default() += 1;
    }
    counts.values().all(|&c| c < q)
}

/// Lexicographic termination measure of a word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Measure {
    pub degree: i64,
    pub length: usize,
    pub potential: i64,
    pub inversions: usize,
}

fn measure(letters: &[Letter], params: &RewriteParams, l: i64) -> Measure {
    let k = letters.len() as i64;
    let sum: i64 = letters.iter().map(|x| x.mode).sum();
    let squares: i64 = letters.iter().map(|x| x.mode * x.mode).sum();
    let potential = if k == 0 {
        0
    } else {
        let hi = (k - 1) * (l - 1);
        (k - 1) * (l - 1) * (l - 1) + (sum - hi) * (sum - hi) - squares
    };
    let mut inversions = 0;
    for i in 0..letters.len() {
        for j in i + 1..letters.len() {
            if letters[i].mode > letters[j].mode {
                inversions += 1;
            }
        }
    }
    Measure { degree: letters.iter().map(|x| params.weight(x.x)).sum(), length: letters.len(), potential, inversions }
}

/// Result of [`Rewriter::normalize`].
#[derive(Clone, Debug)]
pub struct Normalized {
    pub l: i64,
    pub input: ModeWord,
    pub terms: Vec<(Scalar, NormalFormCertificate)>,
    pub value: Element,
    pub steps: BTreeMap<&'static str, usize>,
}

impl Normalized {
    pub fn total_steps(&self) -> usize {
        self.steps.values().sum()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum StateKey {
    Product(usize, i64, usize),
    Block(Vec<usize>),
}

type Expansion = Arc<Vec<(Vec<Letter>, Scalar)>>;

/// Normalizes mode words for a fixed generating set.
pub struct Rewriter<'a> {
    engine: &'a ModeEngine,
    params: RewriteParams,
    words: SpanningWords,
    x: Vec<Element>,
    states: Mutex<HashMap<StateKey, Expansion>>,
    anchor: bool,
}

struct Target {
    top: Weight,
    min: Weight,
}

impl<'a> Rewriter<'a> {
    /// Spanning words of `V` are prepared up to weight `Q·r`, the heaviest state the rules produce.
    pub fn new(engine: &'a ModeEngine, params: RewriteParams) -> Result<Self> {
        let max = Weight::from_integer((params.q * params.r).max(2 * params.r));
        let words = SpanningWords::build(engine, &params, max)?;
        let algebra = params.algebra().with_cutoff(max);
        let x = params.x.iter().map(|e| e.in_space(&algebra)).collect::<Result<_>>()?;
        Ok(Self { engine, params, words, x, states: Mutex::new(HashMap::new()), anchor: false })
    }

    /// Also evaluates every rule application on the target and compares.
    pub fn anchored(mut self, on: bool) -> Self {
        self.anchor = on;
        self
    }

    pub fn params(&self) -> &RewriteParams {
        &self.params
    }

    pub fn generator(&self, i: usize) -> &Element {
        &self.x[i]
    }

    /// Applies `letters` to `w`, right to left, widening the cutoff as needed.
    pub fn evaluate(&self, letters: &[Letter], w: &Element) -> Result<Element> {
        let top = w.max_weight().unwrap_or_default();
        let mut need = w.space().cutoff();
        let mut acc = 0;
        for l in letters.iter().rev() {
            acc += self.params.weight(l.x) - l.mode - 1;
            need = need.max(top + Weight::from_integer(acc));
        }
        let space = w.space().with_cutoff(need);
        let mut cur = w.in_space(&space)?;
        for l in letters.iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = self.engine.mode_action(&self.x[l.x], l.mode, &cur)?;
        }
        Ok(cur)
    }

    /// Smallest `L ≥ 0` with `x_m w = 0` for every `x ∈ X` and `m ≥ L`.
    pub fn compute_l(&self, w: &Element) -> Result<i64> {
        let Some(top) = w.max_weight() else { return Ok(0) };
        let min = w.space().min_weight();
        let mut l = 0;
        for (i, _) in self.x.iter().enumerate() {
            let bound = floor(Weight::from_integer(self.params.weight(i) - 1) + top - min);
            for m in (l..=bound).rev() {
                if !self.evaluate(&[Letter { x: i, mode: m }], w)?.is_zero() {
                    l = m + 1;
                    break;
                }
            }
        }
        Ok(l)
    }

    fn killed(&self, letters: &[Letter], t: &Target) -> bool {
        let mut acc = Weight::zero();
        for l in letters.iter().rev() {
            acc += Weight::from_integer(self.params.weight(l.x) - l.mode - 1);
            if t.top + acc < t.min {
                return true;
            }
        }
        false
    }

    fn suffix_top(&self, suffix: &[Letter], t: &Target) -> Weight {
        t.top + Weight::from_integer(word_weight(suffix, &self.params))
    }

    fn state(&self, key: StateKey) -> Result<Expansion> {
        if let Some(hit) = self.states.lock().get(&key) {
            return Ok(Arc::clone(hit));
        }
        let v = match &key {
            StateKey::Product(x, i, y) => self.engine.mode_action(&self.x[*x], *i, &self.x[*y])?,
            StateKey::Block(ids) => {
                let mut cur = Element::vacuum(self.x[0].space());
                for &id in ids.iter().rev() {
                    cur = self.engine.mode_action(&self.x[id], -1, &cur)?;
                }
                cur
            }
        };
        let sol = Arc::new(self.words.solve(&v)?);
        self.states.lock().insert(key, Arc::clone(&sol));
        Ok(sol)
    }

    /// `(z^1_{-n_1} ⋯ z^k_{-n_k} 1)_p` as a combination of letter words, exact on
    /// vectors whose weight is at most `top`.
    pub fn expand_state_mode(&self, word: &[Letter], p: i64, top: Weight, min: Weight) -> Vec<(Scalar, Vec<Letter>)> {
        let mut acc: BTreeMap<Vec<Letter>, Scalar> = BTreeMap::new();
        self.expand_into(word, p, top, min, &Scalar::one(), &[], &[], &mut acc);
        acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(w, c)| (c, w)).collect()
    }

    #[allow(clippy::too_many_arguments)]
    fn expand_into(
        &self,
        word: &[Letter],
        p: i64,
        top: Weight,
        min: Weight,
        coeff: &Scalar,
        left: &[Letter],
        right: &[Letter],
        acc: &mut BTreeMap<Vec<Letter>, Scalar>,
    ) {
        let wt = word_weight(word, &self.params);
        if top + Weight::from_integer(wt - p - 1) < min {
            return;
        }
        let Some((&z, rest)) = word.split_first() else {
            if p == -1 {
                let mut w = left.to_vec();
                w.extend_from_slice(right);
                *acc.entry(w).or_insert_with(Scalar::zero) += coeff;
            }
            return;
        };
        let n = -z.mode;
        let wz = self.params.weight(z.x);
        let wrest = word_weight(rest, &self.params);
        // Σ_i C(n+i-1, i) z_{-n-i} (s')_{p+i}
        let mut i = 0;
        while top + Weight::from_integer(wrest - (p + i) - 1) >= min {
            let mut l2 = left.to_vec();
            l2.push(Letter { x: z.x, mode: -n - i });
            self.expand_into(rest, p + i, top, min, &(coeff * binom(n + i - 1, i)), &l2, right, acc);
            i += 1;
        }
        // -(-1)^n Σ_i C(n+i-1, i) (s')_{p-n-i} z_i
        let sign = if n % 2 == 0 { -Scalar::one() } else { Scalar::one() };
        let mut i = 0;
        while top + Weight::from_integer(wz - i - 1) >= min {
            let mut r2 = vec![Letter { x: z.x, mode: i }];
            r2.extend_from_slice(right);
            let top2 = top + Weight::from_integer(wz - i - 1);
            self.expand_into(rest, p - n - i, top2, min, &(coeff * &sign * binom(n + i - 1, i)), left, &r2, acc);
            i += 1;
        }
    }

    /// Letters for `Σ_r c_r (word_r 1)_p` where `state` solves to `Σ_r c_r word_r 1`.
    fn state_mode(&self, key: StateKey, p: i64, top: Weight, min: Weight) -> Result<Vec<(Scalar, Vec<Letter>)>> {
        let sol = self.state(key)?;
        let mut out = Vec::new();
        for (w, c) in sol.iter() {
            for (c2, ls) in self.expand_state_mode(w, p, top, min) {
                out.push((c * c2, ls));
            }
        }
        Ok(out)
    }

    /// Normally ordered words `N(c)` for `s = x^1_{-1} ⋯ x^k_{-1} 1`: letters
    /// with negative mode first in increasing index, then nonnegative ones in
    /// decreasing index. Enumerates every mode tuple with sum `total` except
    /// `skip`, dropping words that vanish on vectors of weight `≤ top`.
    fn ordered_terms(&self, ids: &[usize], total: i64, skip: &[i64], top: Weight, min: Weight) -> Vec<Vec<Letter>> {
        let k = ids.len();
        let mut out = Vec::new();
        for mask in 0..(1u32 << k) {
            let pos: Vec<usize> = (0..k).filter(|j| mask & (1 << j) != 0).collect();
            let neg: Vec<usize> = (0..k).filter(|j| mask & (1 << j) == 0).collect();
            let mut right_modes = Vec::new();
            self.nonneg_modes(ids, &pos, 0, top, min, &mut Vec::new(), &mut right_modes);
            for rm in right_modes {
                let rest = total - rm.iter().sum::<i64>();
                for lm in negative_compositions(neg.len(), rest) {
                    let mut modes = vec![0; k];
                    for (j, m) in neg.iter().zip(&lm) {
                        modes[*j] = *m;
                    }
                    for (j, m) in pos.iter().zip(&rm) {
                        modes[*j] = *m;
                    }
                    if modes == skip {
                        continue;
                    }
                    let mut word: Vec<Letter> = neg.iter().map(|&j| Letter { x: ids[j], mode: modes[j] }).collect();
                    word.extend(pos.iter().rev().map(|&j| Letter { x: ids[j], mode: modes[j] }));
                    out.push(word);
                }
            }
        }
        out
    }

    /// Modes `≥ 0` for the letters `pos` (applied in increasing index order) that keep every
    /// intermediate vector at or above the bottom weight.
    #[allow(clippy::too_many_arguments)]
    fn nonneg_modes(
        &self,
        ids: &[usize],
        pos: &[usize],
        at: usize,
        top: Weight,
        min: Weight,
        cur: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if at == pos.len() {
            out.push(cur.clone());
            return;
        }
        let w = self.params.weight(ids[pos[at]]);
        let mut m = 0;
        while top + Weight::from_integer(w - m - 1) >= min {
            cur.push(m);
            self.nonneg_modes(ids, pos, at + 1, top + Weight::from_integer(w - m - 1), min, cur, out);
            cur.pop();
            m += 1;
        }
    }

    fn rule_commute(&self, letters: &[Letter], i: usize, t: &Target) -> Result<Vec<(Scalar, Vec<Letter>)>> {
        let (x, y) = (letters[i], letters[i + 1]);
        let (prefix, suffix) = (&letters[..i], &letters[i + 2..]);
        let glue = |mid: &[Letter]| -> Vec<Letter> {
            let mut w = prefix.to_vec();
            w.extend_from_slice(mid);
            w.extend_from_slice(suffix);
            w
        };
        let mut out = vec![(Scalar::one(), glue(&[y, x]))];
        let top = self.suffix_top(suffix, t);
        let wsum = self.params.weight(x.x) + self.params.weight(y.x);
        for j in 0..wsum {
            let c = binom(x.mode, j);
            if c.is_zero() {
                continue;
            }
            for (c2, mid) in self.state_mode(StateKey::Product(x.x, j, y.x), x.mode + y.mode - j, top, t.min)? {
                out.push((&c * c2, glue(&mid)));
            }
        }
        Ok(out)
    }

    /// Replaces the block `letters[i..i+k]` of equal modes `m` by `s_{km+k-1} - Σ N(c)`.
    fn rule_block(&self, letters: &[Letter], i: usize, k: usize, t: &Target) -> Result<Vec<(Scalar, Vec<Letter>)>> {
        let block = &letters[i..i + k];
        let (prefix, suffix) = (&letters[..i], &letters[i + k..]);
        let glue = |mid: &[Letter]| -> Vec<Letter> {
            let mut w = prefix.to_vec();
            w.extend_from_slice(mid);
            w.extend_from_slice(suffix);
            w
        };
        let m = block[0].mode;
        let kk = k as i64;
        // Normal ordering puts negative letters in increasing index and
        // nonnegative ones in decreasing index, so the block reads x^1 ⋯ x^k
        // when m < 0 and x^k ⋯ x^1 otherwise.
        let ids: Vec<usize> = if m < 0 {
            block.iter().map(|l| l.x).collect()
        } else {
            block.iter().rev().map(|l| l.x).collect()
        };
        let top = self.suffix_top(suffix, t);
        let mut out = Vec::new();
        for (c, mid) in self.state_mode(StateKey::Block(ids.clone()), kk * m + kk - 1, top, t.min)? {
            out.push((c, glue(&mid)));
        }
        for mid in self.ordered_terms(&ids, kk * m, &vec![m; k], top, t.min) {
            out.push((-Scalar::one(), glue(&mid)));
        }
        Ok(out)
    }

    /// Rewrites `word` applied to `w` into normal form.
    pub fn normalize(&self, word: &ModeWord, w: &Element) -> Result<Normalized> {
        let l = self.compute_l(w)?;
        let t = Target { top: w.max_weight().unwrap_or_default(), min: w.space().min_weight() };
        let q = self.params.q as usize;
        let mut work: BTreeMap<(Measure, Vec<Letter>), Scalar> = BTreeMap::new();
        work.insert((measure(word.letters(), &self.params, l), word.letters().to_vec()), Scalar::one());
        let mut done: BTreeMap<Vec<Letter>, Scalar> = BTreeMap::new();
        let mut steps: BTreeMap<&'static str, usize> = BTreeMap::new();
        while let Some(((meas, letters), c)) = work.pop_last() {
            if c.is_zero() || self.killed(&letters, &t) {
                continue;
            }
            let inversion = letters.windows(2).position(|p| p[0].mode > p[1].mode);
            let (rule, children) = if let Some(i) = inversion {
                ("commute", self.rule_commute(&letters, i, &t)?)
            } else if letters.last().is_some_and(|x| x.mode >= l) {
                continue;
            } else if let Some(i) = letters.windows(2).position(|p| p[0].mode == p[1].mode && p[0].mode < 0) {
                ("pair", self.rule_block(&letters, i, 2, &t)?)
            } else if let Some(i) = repetition_site(&letters, q) {
                ("repetition", self.rule_block(&letters, i, q, &t)?)
            } else {
                *done.entry(letters).or_insert_with(Scalar::zero) += c;
                continue;
            };
            *steps.entry(rule).or_default() += 1;
            let mut sum = self.anchor.then(|| Element::zero(w.space()));
            for (cc, child) in children {
                if word_weight(&child, &self.params) != word.weight() {
                    return Err(Error::RewriteInvariant(format!(
                        "{rule} changed the weight of {} to {}",
                        fmt_letters(&letters),
                        fmt_letters(&child)
                    )));
                }
                let cm = measure(&child, &self.params, l);
                if cm >= meas {
                    return Err(Error::RewriteInvariant(format!(
                        "{rule} did not lower the measure: {} {:?} -> {} {:?}",
                        fmt_letters(&letters),
                        meas,
                        fmt_letters(&child),
                        cm
                    )));
                }
                if let Some(s) = sum.as_mut() {
                    let v = self.evaluate(&child, w)?;
                    *s = s.in_space(v.space())?;
                    s.add_scaled(&cc, &v)?;
                }
                *work.entry((cm, child)).or_insert_with(Scalar::zero) += &c * &cc;
            }
            if let Some(s) = sum {
                if s != self.evaluate(&letters, w)? {
                    return Err(Error::RewriteInvariant(format!("{rule} changed the value of {}", fmt_letters(&letters))));
                }
            }
        }
        let mut value = Element::zero(w.space());
        let mut terms = Vec::new();
        for (letters, c) in done {
            if c.is_zero() {
                continue;
            }
            let v = self.evaluate(&letters, w)?;
            value = value.in_space(if v.space().cutoff() > value.space().cutoff() { v.space() } else { value.space() })?;
            value.add_scaled(&c, &v)?;
            let cert = NormalFormCertificate {
                r: self.params.r,
                n: self.params.n,
                q: self.params.q,
                l,
                word: ModeWord::new(letters, &self.params)?,
            };
            terms.push((c, cert));
        }
        Ok(Normalized { l, input: word.clone(), terms, value, steps })
    }

    /// `B`: the least operator weight of a normal-form word that does not kill `w`.
    /// Words with a negative mode weigh more than their nonnegative tail, so only
    /// words with modes in `[0, L)` are enumerated.
    pub fn lowest_weight_bound(&self, w: &Element) -> Result<BoundReport> {
        if w.is_zero() {
            return Err(Error::Config("B is undefined for the zero vector".into()));
        }
        let l = self.compute_l(w)?;
        let q = self.params.q;
        let mut best = BoundReport { l, b: 0, witness: Vec::new(), words: 1 };
        // (vector, letters left to right, weight, current mode, repeats of it)
        let mut stack = vec![(w.clone(), Vec::<Letter>::new(), 0i64, l - 1, 0i64)];
        while let Some((v, word, wt, mode, reps)) = stack.pop() {
            for m in (0..=mode).rev() {
                let used = if m == mode { reps } else { 0 };
                if used + 1 > q - 1 {
                    continue;
                }
                for i in 0..self.x.len() {
                    let nv = self.evaluate(&[Letter { x: i, mode: m }], &v)?;
                    if nv.is_zero() {
                        continue;
                    }
                    let nwt = wt + self.params.weight(i) - m - 1;
                    let mut nword = vec![Letter { x: i, mode: m }];
                    nword.extend_from_slice(&word);
                    best.words += 1;
                    if nwt < best.b {
                        best.b = nwt;
                        best.witness = nword.clone();
                    }
                    stack.push((nv, nword, nwt, m, used + 1));
                }
            }
        }
        Ok(best)
    }
}

fn repetition_site(letters: &[Letter], q: usize) -> Option<usize> {
    if q == 0 {
        return None;
    }
    let mut i = 0;
    while i < letters.len() {
        let m = letters[i].mode;
        let run = letters[i..].iter().take_while(|l| l.mode == m).count();
        if m >= 0 && run >= q {
            return Some(i);
        }
        i += run;
    }
    None
}

/// All `k`-tuples of integers `≤ -1` summing to `total`.
fn negative_compositions(k: usize, total: i64) -> Vec<Vec<i64>> {
    if k == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let kk = k as i64;
    if total > -kk {
        return out;
    }
    // first entry from -1 down to total + (k - 1)
    let mut first = -1;
    while first >= total + (kk - 1) {
        for mut rest in negative_compositions(k - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
        first -= 1;
    }
    out
}

fn fmt_letters(letters: &[Letter]) -> String {
    letters.iter().map(Letter::to_string).collect::<Vec<_>>().join(" ")
}

/// The bound `B` for a cyclic vector with a word attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub l: i64,
    pub b: i64,
    pub witness: Vec<Letter>,
    pub words: usize,
}

/// `Ω(M)` on one stratum, from the reduced test (modes of `C_1` representatives)
/// and from the full definition (modes of every basis vector of `V`).
#[derive(Clone, Debug)]
pub struct OmegaStratum {
    pub stratum: Weight,
    pub ambient: usize,
    pub reduced: RowBasis,
    pub full: RowBasis,
}

#[derive(Clone, Debug)]
pub struct LwvReport {
    pub module: String,
    pub cutoff: Weight,
    pub y_reps: Vec<Element>,
    pub strata: Vec<OmegaStratum>,
}

impl LwvReport {
    pub fn dim(&self) -> usize {
        self.strata.iter().map(|s| s.reduced.rank()).sum()
    }

    pub fn agree(&self) -> bool {
        self.strata.iter().all(|s| s.reduced == s.full)
    }

    /// `Ω` is exactly the lowest stratum.
    pub fn is_bottom(&self) -> bool {
        self.strata
            .iter()
            .enumerate()
            .all(|(i, s)| if i == 0 { s.reduced.rank() == s.ambient } else { s.reduced.rank() == 0 })
    }
}

/// Negative-weight modes `v_m` (`wt v - m - 1 < 0`) that can act nontrivially on stratum `d`.
fn lowering_modes(vs: &[Element], d: Weight, min: Weight) -> Vec<(usize, i64)> {
    let mut out = Vec::new();
    for (i, v) in vs.iter().enumerate() {
        let Some(a) = v.homogeneous_weight() else { continue };
        let a = a.to_integer();
        let hi = floor(Weight::from_integer(a - 1) + d - min);
        for m in a..=hi {
            out.push((i, m));
        }
    }
    out
}

fn annihilated(engine: &ModeEngine, space: &SpaceRef, basis: &[Element], ops: &[Element], modes: &[(usize, i64)]) -> Result<RowBasis> {
    let stratum = basis.first().and_then(|b| b.homogeneous_weight());
    let mut sources: Vec<Element> = basis.to_vec();
    for &(i, m) in modes {
        if sources.is_empty() {
            break;
        }
        let images = engine.exec().try_map(&sources, |s| engine.mode_action(&ops[i], m, s))?;
        if images.iter().all(Element::is_zero) {
            continue;
        }
        let ker = kernel(space, &images)?;
        sources = ker
            .into_iter()
            .map(|coeffs| {
                let mut v = Element::zero(space);
                for (c, s) in coeffs.iter().zip(&sources) {
                    if !c.is_zero() {
                        v.add_scaled(c, s).expect("same space");
                    }
                }
                v
            })
            .collect();
    }
    row_reduce(space, stratum, &sources)
}

/// Lowest weight vectors of `module` on strata up to `cutoff`, computed with
/// the reduced operator set (`C_1` representatives) and with all of `V`.
pub fn find_omega(engine: &ModeEngine, algebra: &Graded, module: &Graded, cutoff: Weight) -> Result<LwvReport> {
    let algebra = algebra.with_cutoff(cutoff);
    let module = module.with_cutoff(cutoff);
    let space = module.ambient().clone();
    let min = space.min_weight();
    let y: Vec<Element> = c1_reps(engine, &algebra, cutoff)?
        .into_iter()
        .flat_map(|s| s.reps)
        .filter(|r| r.homogeneous_weight() != Some(Weight::zero()))
        .collect();
    let mut all = Vec::new();
    for d in algebra.strata(cutoff) {
        if !d.is_zero() {
            all.extend(algebra.stratum_basis(d)?.iter().cloned());
        }
    }
    let mut strata = Vec::new();
    for d in module.strata(cutoff) {
        let basis = module.stratum_basis(d)?;
        let reduced = annihilated(engine, &space, &basis, &y, &lowering_modes(&y, d, min))?;
        let full = annihilated(engine, &space, &basis, &all, &lowering_modes(&all, d, min))?;
        let reduced = if reduced.rank() == 0 { RowBasis::empty(&space, Some(d)) } else { reduced };
        let full = if full.rank() == 0 { RowBasis::empty(&space, Some(d)) } else { full };
        strata.push(OmegaStratum { stratum: d, ambient: basis.len(), reduced, full });
    }
    Ok(LwvReport { module: module.to_string(), cutoff, y_reps: y, strata })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cofinite::choose_x;
    use crate::fock::{exponential_state, heisenberg_state};
    use crate::space::{CosetSpec, LatticeSpec, Space};

    fn w(n: i64) -> Weight {
        Weight::from_integer(n)
    }

    fn setup(engine: &ModeEngine) -> RewriteParams {
        let v = Graded::full(&Space::algebra(LatticeSpec::new(vec![2]).unwrap(), w(6)));
        choose_x(engine, &v, w(6)).unwrap()
    }

    #[test]
    fn letters_parse_and_print() {
        let l: Letter = "x2(-3)".parse().unwrap();
        assert_eq!(l, Letter { x: 2, mode: -3 });
        assert_eq!(l.to_string(), "x2(-3)");
        assert!("y2(1)".parse::<Letter>().is_err());
    }

    #[test]
    fn compositions() {
        assert_eq!(negative_compositions(2, -3), vec![vec![-1, -2], vec![-2, -1]]);
        assert_eq!(negative_compositions(0, 0), vec![Vec::<i64>::new()]);
        assert!(negative_compositions(2, -1).is_empty());
    }

    #[test]
    fn normal_form_rules() {
        let l = |x, mode| Letter { x, mode };
        assert!(is_normal(&[l(0, -3), l(1, -1), l(0, 0), l(1, 0)], 1, 4));
        assert!(!is_normal(&[l(0, -1), l(1, -1)], 1, 4));
        assert!(!is_normal(&[l(0, 0), l(0, 0)], 1, 2));
        assert!(!is_normal(&[l(0, 1), l(0, 0)], 3, 4));
        assert!(!is_normal(&[l(0, 2)], 2, 4));
    }

    #[test]
    fn vacuum_has_l_zero_and_b_zero() {
        let e = ModeEngine::new();
        let rw = Rewriter::new(&e, setup(&e)).unwrap();
        let v = Space::algebra(LatticeSpec::new(vec![2]).unwrap(), w(6));
        let one = Element::vacuum(&v);
        assert_eq!(rw.compute_l(&one).unwrap(), 0);
        assert_eq!(rw.lowest_weight_bound(&one).unwrap().b, 0);
        let a = heisenberg_state(&v, 0);
        assert!(rw.lowest_weight_bound(&a).unwrap().b <= -1);
    }

    #[test]
    fn l_of_exponential() {
        let e = ModeEngine::new();
        let rw = Rewriter::new(&e, setup(&e)).unwrap();
        let v = Space::algebra(LatticeSpec::new(vec![2]).unwrap(), w(6));
        assert_eq!(rw.compute_l(&exponential_state(&v, &[1])).unwrap(), 2);
    }

    #[test]
    fn repeated_negative_modes_are_rewritten() {
        let e = ModeEngine::new();
        let rw = Rewriter::new(&e, setup(&e)).unwrap().anchored(true);
        let v = Space::algebra(LatticeSpec::new(vec![2]).unwrap(), w(6));
        let word = ModeWord::parse("x0(-1) x0(-1)", rw.params()).unwrap();
        for target in [Element::vacuum(&v), heisenberg_state(&v, 0), exponential_state(&v, &[-1])] {
            let out = rw.normalize(&word, &target).unwrap();
            assert!(out.terms.iter().all(|(_, c)| c.check() && c.word.weight() == word.weight()));
            assert_eq!(out.value, rw.evaluate(word.letters(), &target).unwrap());
        }
    }

    #[test]
    fn normal_words_are_fixed_points() {
        let e = ModeEngine::new();
        let rw = Rewriter::new(&e, setup(&e)).unwrap();
        let v = Space::algebra(LatticeSpec::new(vec![2]).unwrap(), w(6));
        let word = ModeWord::parse("x1(-2) x0(-1)", rw.params()).unwrap();
        let out = rw.normalize(&word, &heisenberg_state(&v, 0)).unwrap();
        assert_eq!(out.terms.len(), 1);
        assert_eq!(out.terms[0].0, Scalar::one());
        assert_eq!(out.terms[0].1.word, word);
        assert_eq!(out.total_steps(), 0);
    }

    #[test]
    fn omega_of_the_half_coset_is_its_bottom() {
        let e = ModeEngine::new();
        let lat = LatticeSpec::new(vec![2]).unwrap();
        let v = Graded::full(&Space::algebra(lat.clone(), w(3)));
        let coset = CosetSpec::from_offsets(&lat, &[Weight::new(1, 2)]).unwrap();
        let m = Graded::full(&Space::module(lat, coset, w(3)).unwrap());
        let rep = find_omega(&e, &v, &m, w(3)).unwrap();
        assert!(rep.agree());
        assert!(rep.is_bottom());
        assert_eq!(rep.strata[0].stratum, Weight::new(1, 4));
        assert_eq!(rep.dim(), 2);
    }
}
