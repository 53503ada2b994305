//! Seeded sampling campaigns for the mode identities and the rewriter.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::fock::{enumerate_basis, stratum_basis};
use crate::modes::ModeEngine;
use crate::pbw::{Letter, ModeWord, Rewriter};
use crate::scalar::{int, Weight};
use crate::space::{Basis, SpaceRef};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub samples: usize,
    pub passed: usize,
    /// Samples where the checked vector was nonzero.
    pub nontrivial: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &str) -> Self {
        Self { name: name.into(), samples: 0, passed: 0, nontrivial: 0, failures: Vec::new() }
    }

    pub fn holds(&self) -> bool {
        self.samples > 0 && self.passed == self.samples
    }

    fn record(&mut self, ok: bool, nonzero: bool, what: impl FnOnce() -> String) {
        self.samples += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failures.push(what());
        }
        if nonzero {
            self.nontrivial += 1;
        }
    }
}

/// A random homogeneous vector: up to three basis vectors of one stratum with
/// small nonzero integer coefficients.
pub fn random_vector(rng: &mut ChaCha8Rng, space: &SpaceRef, strata: &[(Weight, Vec<Basis>)]) -> Element {
    let (_, basis) = strata.choose(rng).expect("at least one stratum");
    let mut v = Element::zero(space);
    for _ in 0..rng.gen_range(1..=3) {
        let b = basis.choose(rng).unwrap().clone();
        let c = loop {
            let c: i64 = rng.gen_range(-3..=3);
            if c != 0 {
                break c;
            }
        };
        v.add_term(b, int(c));
    }
    if v.is_zero() {
        v.add_term(basis[0].clone(), int(1));
    }
    v
}

fn strata_upto(space: &SpaceRef, max: Weight) -> Vec<(Weight, Vec<Basis>)> {
    enumerate_basis(space, max).into_iter().collect()
}

const MAX_TRIES: usize = 10_000;

fn sample_loop<F>(name: &str, samples: usize, mut f: F) -> Result<SuiteResult>
where
    F: FnMut(&mut SuiteResult) -> Result<bool>,
{
    if samples == 0 {
        return Err(Error::Config(format!("suite {name} has no samples")));
    }
    let mut out = SuiteResult::new(name);
    let mut tries = 0;
    while out.samples < samples {
        tries += 1;
        if tries > MAX_TRIES {
            return Err(Error::InsufficientCutoff(format!("suite {name}: too many samples rejected by the cutoff")));
        }
        match f(&mut out) {
            Ok(_) => {}
            Err(Error::TruncationOverflow { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// `[u_{-k}, v_{-q}] = Σ_i C(-k, i) (u_i v)_{-k-q-i}` on random data; samples
/// that would leave the truncation are redrawn.
pub fn commutator_suite(engine: &ModeEngine, space: &SpaceRef, samples: usize, modes: i64, seed: u64) -> Result<SuiteResult> {
    let mut r = rng(seed);
    let states = strata_upto(space, Weight::from_integer(2));
    let targets = strata_upto(space, Weight::from_integer(2));
    sample_loop("commutator", samples, |out| {
        let u = random_vector(&mut r, space, &states);
        let v = random_vector(&mut r, space, &states);
        let w = random_vector(&mut r, space, &targets);
        let k = r.gen_range(-modes..=modes);
        let q = r.gen_range(-modes..=modes);
        let rep = engine.verify_commutator(&u, &v, k, q, &w)?;
        out.record(rep.holds, !rep.lhs.is_zero(), || format!("u={u} v={v} k={k} q={q} w={w}"));
        Ok(rep.holds)
    })
}

/// `(u_{-r} v)_{-q}` against its expansion in modes of `u` and `v`.
pub fn iterate_suite(engine: &ModeEngine, space: &SpaceRef, samples: usize, modes: i64, seed: u64) -> Result<SuiteResult> {
    let mut r = rng(seed);
    let states = strata_upto(space, Weight::from_integer(2));
    sample_loop("iterate", samples, |out| {
        let u = random_vector(&mut r, space, &states);
        let v = random_vector(&mut r, space, &states);
        let w = random_vector(&mut r, space, &states);
        let k = r.gen_range(-modes..=modes);
        let q = r.gen_range(-modes..=modes);
        let rep = engine.verify_iterate(&u, &v, k, q, &w)?;
        out.record(rep.holds, !rep.lhs.is_zero(), || format!("u={u} v={v} r={k} q={q} w={w}"));
        Ok(rep.holds)
    })
}

/// Every `[L(m), L(n)]` with `|m|, |n| ≤ modes` on every basis vector of strata `≤ max`.
pub fn virasoro_suite(engine: &ModeEngine, space: &SpaceRef, max: Weight, modes: i64) -> Result<SuiteResult> {
    let mut out = SuiteResult::new("virasoro");
    let mut work = Vec::new();
    for (_, basis) in strata_upto(space, max) {
        for b in basis {
            for m in -modes..=modes {
                for n in -modes..=modes {
                    work.push((b.clone(), m, n));
                }
            }
        }
    }
    let reps = engine.exec().try_map(&work, |(b, m, n)| {
        engine.virasoro_check(space, *m, *n, &Element::basis(space, b.clone()))
    })?;
    for ((b, m, n), rep) in work.iter().zip(reps) {
        out.record(rep.holds, !rep.lhs.is_zero(), || format!("m={m} n={n} v={b}"));
    }
    Ok(out)
}

/// Weight of `word` applied to vectors of weight `top`, at its highest point.
fn peak_weight(word: &ModeWord, rewriter: &Rewriter<'_>, top: Weight) -> Weight {
    let mut acc = top;
    let mut peak = top;
    for l in word.letters().iter().rev() {
        acc += Weight::from_integer(rewriter.params().weight(l.x) - l.mode - 1);
        peak = peak.max(acc);
    }
    peak
}

/// Random words (length `1..=max_len`, modes in `[-modes, modes]`) normalized
/// against `targets` random vectors each. Words whose evaluation would climb
/// above the cutoff are redrawn. Each sample checks certificates, evaluation
/// equality and (inside the rewriter) weight and measure on every step.
pub fn rewrite_suite(
    rewriter: &Rewriter<'_>,
    space: &SpaceRef,
    words: usize,
    targets: usize,
    max_len: usize,
    modes: i64,
    seed: u64,
) -> Result<SuiteResult> {
    if targets == 0 {
        return Err(Error::Config("rewrite suite needs at least one target per word".into()));
    }
    let mut r = rng(seed);
    let params = rewriter.params().clone();
    let pool = strata_upto(space, Weight::from_integer(3));
    let mut out = SuiteResult::new("rewrite");
    let mut tries = 0;
    while out.samples < words {
        tries += 1;
        if tries > MAX_TRIES {
            return Err(Error::InsufficientCutoff("rewrite suite: too many words rejected by the cutoff".into()));
        }
        if words == 0 {
            return Err(Error::Config("suite rewrite has no samples".into()));
        }
        let len = r.gen_range(1..=max_len);
        let letters: Vec<Letter> =
            (0..len).map(|_| Letter { x: r.gen_range(0..params.len()), mode: r.gen_range(-modes..=modes) }).collect();
        let word = ModeWord::new(letters, &params)?;
        let ts: Vec<Element> = (0..targets).map(|_| random_vector(&mut r, space, &pool)).collect();
        if ts.iter().any(|t| peak_weight(&word, rewriter, t.max_weight().unwrap()) > space.cutoff()) {
            continue;
        }
        let mut ok = true;
        let mut nonzero = false;
        for t in &ts {
            let n = rewriter.normalize(&word, t)?;
            let direct = rewriter.evaluate(word.letters(), t)?;
            ok &= n.value == direct;
            ok &= n.terms.iter().all(|(_, c)| c.check() && c.word.weight() == word.weight());
            nonzero |= !direct.is_zero();
        }
        out.record(ok, nonzero, || format!("{word}"));
    }
    Ok(out)
}

/// Stratum dimensions `≤ max`, as `(weight, dim)`.
pub fn stratum_dims(space: &SpaceRef, max: Weight) -> Vec<(Weight, usize)> {
    crate::fock::strata(space, max).into_iter().map(|d| (d, stratum_basis(space, d).len())).collect()
}
