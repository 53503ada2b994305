//! Scenario configuration and report assembly for the command-line driver.
//!
//! Reports are JSON objects with sorted keys. Every rational is written as a
//! `"p/q"` string (or an integer string), so equal inputs give equal bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cofinite::{c1_reps, choose_x, quotient_table, tensor_c2_check, QuotientTable};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::fock::{conformal_vector, enumerate_basis, stratum_basis, Sign};
use crate::graded::Graded;
use crate::modes::ModeEngine;
use crate::par::Exec;
use crate::pbw::{find_omega, ModeWord, Rewriter};
use crate::scalar::{fmt_scalar, fmt_weight, parse_weight, Weight};
use crate::space::{CosetSpec, LatticeSpec, Space, SpaceRef};
use crate::suites::{commutator_suite, iterate_suite, random_vector, rewrite_suite, rng, virasoro_suite, SuiteResult};
use crate::zhu::{a_product_table, build_context, circ, dimension_trend, o_action, star};

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct VerifyConfig {
    pub commutator: Option<usize>,
    pub iterate: Option<usize>,
    pub virasoro_max: Option<i64>,
    pub rewrite_words: Option<usize>,
    pub rewrite_targets: Option<usize>,
    pub modes: Option<i64>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct ZhuConfig {
    pub d: Option<i64>,
    pub samples: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct RewriteConfig {
    pub word: Option<String>,
    /// Lattice point `β` of the target `e^β` (coset-shifted for modules).
    pub target: Option<Vec<i64>>,
}

/// Scenario read from a TOML file; command-line flags override its fields.
#[derive(Clone, Debug, Default, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    pub lattice: Option<Vec<i64>>,
    pub heisenberg: Option<bool>,
    pub coset: Option<Vec<String>>,
    pub sign: Option<String>,
    pub max_weight: Option<String>,
    pub cn: Option<i64>,
    pub seed: Option<u64>,
    pub tensor: Option<bool>,
    pub zhu: ZhuConfig,
    pub verify: VerifyConfig,
    pub rewrite: RewriteConfig,
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Fields set in `other` replace those in `self`.
    pub fn overridden_by(mut self, other: ScenarioConfig) -> Self {
        macro_rules! take {
            ($($f:ident).+) => {
                if other.$($f).+.is_some() {
                    self.$($f).+ = other.$($f).+;
                }
            };
        }
        take!(lattice);
        take!(heisenberg);
        take!(coset);
        take!(sign);
        take!(max_weight);
        take!(cn);
        take!(seed);
        take!(tensor);
        take!(zhu.d);
        take!(zhu.samples);
        take!(verify.commutator);
        take!(verify.iterate);
        take!(verify.virasoro_max);
        take!(verify.rewrite_words);
        take!(verify.rewrite_targets);
        take!(verify.modes);
        take!(rewrite.word);
        take!(rewrite.target);
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(1)
    }

    pub fn lattice(&self) -> Result<LatticeSpec> {
        let norms = self.lattice.clone().unwrap_or_else(|| vec![2]);
        if self.heisenberg.unwrap_or(false) {
            LatticeSpec::heisenberg(norms)
        } else {
            LatticeSpec::new(norms)
        }
    }

    pub fn coset(&self, lattice: &LatticeSpec) -> Result<CosetSpec> {
        match &self.coset {
            None => Ok(CosetSpec::zero(lattice.rank())),
            Some(offsets) => {
                let ws = offsets
                    .iter()
                    .map(|s| parse_weight(s).ok_or_else(|| Error::Config(format!("bad coset offset {s:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                if ws.len() != lattice.rank() {
                    return Err(Error::Config(format!("{} coset offsets for a rank {} lattice", ws.len(), lattice.rank())));
                }
                CosetSpec::from_offsets(lattice, &ws)
            }
        }
    }

    pub fn sign(&self) -> Result<Option<Sign>> {
        match self.sign.as_deref() {
            None => Ok(None),
            Some("plus" | "+") => Ok(Some(Sign::Plus)),
            Some("minus" | "-") => Ok(Some(Sign::Minus)),
            Some(s) => Err(Error::Config(format!("sign must be plus or minus, got {s:?}"))),
        }
    }

    pub fn max_weight(&self, default: i64) -> Result<Weight> {
        let w = match &self.max_weight {
            None => Weight::from_integer(default),
            Some(s) => parse_weight(s).ok_or_else(|| Error::Config(format!("bad max weight {s:?}")))?,
        };
        if w < Weight::from_integer(0) {
            return Err(Error::Config("max weight must be nonnegative".into()));
        }
        Ok(w)
    }

    fn algebra(&self, cutoff: Weight) -> Result<SpaceRef> {
        Ok(Space::algebra(self.lattice()?, cutoff))
    }

    fn no_sign(&self, command: &str) -> Result<()> {
        match self.sign()? {
            None => Ok(()),
            Some(_) => Err(Error::Config(format!("{command} does not take a θ sign"))),
        }
    }

    fn module(&self, cutoff: Weight) -> Result<SpaceRef> {
        let lattice = self.lattice()?;
        let coset = self.coset(&lattice)?;
        Space::module(lattice, coset, cutoff)
    }

    /// The algebra, restricted to a θ-eigenspace when a sign is set.
    fn graded_algebra(&self, cutoff: Weight) -> Result<Graded> {
        let space = self.algebra(cutoff)?;
        match self.sign()? {
            None => Ok(Graded::full(&space)),
            Some(s) => Graded::theta(&space, s),
        }
    }
}

pub fn is_config_error(e: &Error) -> bool {
    matches!(e, Error::Config(_) | Error::InvalidLattice(_) | Error::InvalidCoset(_) | Error::ThetaOnCoset)
}

/// Output formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Report,
    Csv,
}

/// A finished report: JSON plus a flat table for CSV export.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub table: Vec<Vec<String>>,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Report => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json values serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = String::new();
                for row in &self.table {
                    let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
                    writeln!(s, "{}", cells.join(",")).unwrap();
                }
                s
            }
        }
    }
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

fn envelope(command: &str, config: &ScenarioConfig, results: Value, notes: Vec<String>) -> Value {
    json!({
        "tool": "latvoa",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": serde_json::to_value(config).expect("config serializes"),
        "results": results,
        "notes": notes,
    })
}

fn w(x: Weight) -> Value {
    Value::String(fmt_weight(&x))
}

fn element_json(e: &Element) -> Value {
    Value::Array(
        e.terms()
            .iter()
            .map(|(b, c)| json!({ "basis": b.to_string(), "coeff": fmt_scalar(c) }))
            .collect(),
    )
}

fn table_json(t: &QuotientTable) -> Value {
    json!({
        "space": t.space,
        "n": t.n,
        "max": w(t.max),
        "rows": t.rows.iter().map(|r| json!({
            "stratum": w(r.stratum),
            "ambient": r.ambient,
            "subspace": r.subspace,
            "quotient": r.quotient,
        })).collect::<Vec<_>>(),
        "stabilized": t.stabilized(),
        "stable_from": t.stable_from.map(w),
    })
}

fn suite_json(s: &SuiteResult) -> Value {
    json!({
        "name": s.name,
        "samples": s.samples,
        "passed": s.passed,
        "nontrivial": s.nontrivial,
        "holds": s.holds(),
        "failures": s.failures,
    })
}

/// Stratum dimensions and basis listings.
pub fn cmd_basis(config: &ScenarioConfig) -> Result<Report> {
    let max = config.max_weight(4)?;
    let space = config.module(max)?;
    let graded = match config.sign()? {
        None => Graded::full(&space),
        Some(s) => Graded::theta(&space, s)?,
    };
    let mut strata = Vec::new();
    let mut table = vec![vec!["stratum".to_string(), "dim".to_string()]];
    for d in graded.strata(max) {
        let basis = graded.stratum_basis(d)?;
        table.push(vec![fmt_weight(&d), basis.len().to_string()]);
        strata.push(json!({
            "stratum": w(d),
            "dim": basis.len(),
            "basis": basis.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        }));
    }
    let results = json!({ "space": graded.to_string(), "strata": strata });
    Ok(Report { json: envelope("basis", config, results, Vec::new()), table })
}

/// `C_n` quotient table, generating set `X` with `r, N, Q`, `C_1` data, and
/// optionally the tensor-square `C_2` decomposition.
pub fn cmd_cofinite(engine: &ModeEngine, config: &ScenarioConfig) -> Result<Report> {
    let max = config.max_weight(8)?;
    let n = config.cn.unwrap_or(2);
    let algebra = config.graded_algebra(max)?;
    let lattice = config.lattice()?;
    let on_module = !config.coset(&lattice)?.is_zero();
    let target = if on_module { Graded::full(&config.module(max)?) } else { algebra.clone() };
    let table = quotient_table(engine, &algebra, &target, n, max)?;
    let mut notes = vec!["stabilization means quotient 0 on [N0, max] with max - N0 >= 3; it is evidence, not proof".to_string()];
    let mut results = json!({ "table": table_json(&table) });
    if !table.stabilized() {
        notes.push(format!("{} does not stabilize up to stratum {}", table.space, fmt_weight(&max)));
    }
    if n == 2 && !on_module && table.stabilized() {
        let p = choose_x(engine, &algebra, max)?;
        results["x"] = json!({
            "generators": p.x.iter().zip(&p.x_weights).map(|(x, wt)| json!({ "weight": wt, "vector": element_json(x) })).collect::<Vec<_>>(),
            "r": p.r,
            "N": p.n,
            "Q": p.q,
            "choice": "greedy canonical-order minimal representatives",
        });
    }
    if !on_module {
        let c1 = c1_reps(engine, &algebra, max)?;
        results["c1"] = Value::Array(
            c1.iter()
                .map(|s| json!({ "stratum": w(s.stratum), "ambient": s.ambient, "c1": s.c1, "c2": s.c2, "reps": s.reps.len() }))
                .collect(),
        );
    }
    if config.tensor.unwrap_or(false) {
        let tmax = config.max_weight(5)?.min(Weight::from_integer(5));
        let rep = tensor_c2_check(engine, &algebra, &algebra, tmax)?;
        results["tensor"] = json!({
            "space": rep.space,
            "holds": rep.holds(),
            "total_quotient": rep.total_quotient,
            "total_product": rep.total_product,
            "rows": rep.rows.iter().map(|r| json!({
                "stratum": w(r.stratum),
                "ambient": r.ambient,
                "c2": r.c2,
                "quotient": r.quotient,
                "product_bound": r.product_bound,
                "contained": r.contained,
                "spans": r.spans,
            })).collect::<Vec<_>>(),
        });
    }
    let mut rows = vec![vec!["stratum".into(), "ambient".into(), "subspace".into(), "quotient".into()]];
    for r in &table.rows {
        rows.push(vec![fmt_weight(&r.stratum), r.ambient.to_string(), r.subspace.to_string(), r.quotient.to_string()]);
    }
    Ok(Report { json: envelope("cofinite", config, results, notes), table: rows })
}

/// Compatibility of `o` with `∘` and `*` on bottom strata of every `V_{L+λ}`.
pub fn zhu_module_checks(engine: &ModeEngine, algebra: &SpaceRef, samples: usize, seed: u64) -> Result<Vec<Value>> {
    let lattice = algebra.lattice().clone();
    let mut out = Vec::new();
    let mut r = rng(seed);
    let mut cosets = vec![vec![]];
    for &d in lattice.norms() {
        cosets = cosets.into_iter().flat_map(|c: Vec<i64>| (0..d).map(move |k| [c.clone(), vec![k]].concat())).collect();
    }
    let states: Vec<_> = enumerate_basis(algebra, Weight::from_integer(2)).into_iter().collect();
    for ks in cosets {
        let offs: Vec<Weight> = ks.iter().zip(lattice.norms()).map(|(&k, &d)| Weight::new(k, d)).collect();
        let coset = CosetSpec::from_offsets(&lattice, &offs)?;
        let probe = Space::module(lattice.clone(), coset.clone(), Weight::from_integer(0))?;
        let bottom = probe.min_weight();
        let module = Space::module(lattice.clone(), coset, bottom)?;
        let ws: Vec<Element> = stratum_basis(&module, bottom).into_iter().map(|b| Element::basis(&module, b)).collect();
        let mut ok_circ = true;
        let mut ok_star = true;
        for _ in 0..samples {
            let u = random_vector(&mut r, algebra, &states);
            let v = random_vector(&mut r, algebra, &states);
            let uv_circ = circ(engine, &u, &v)?;
            let uv_star = star(engine, &u, &v)?;
            for x in &ws {
                ok_circ &= o_action(engine, &uv_circ, x)?.is_zero();
                ok_star &= o_action(engine, &uv_star, x)? == o_action(engine, &u, &o_action(engine, &v, x)?)?;
            }
        }
        let omega = conformal_vector(algebra);
        let l0 = ws.iter().all(|x| o_action(engine, &omega, x).map(|y| y == x.scaled(&crate::scalar::weight_to_scalar(bottom))).unwrap_or(false));
        out.push(json!({
            "coset": offs.iter().map(fmt_weight).collect::<Vec<_>>(),
            "bottom": w(bottom),
            "bottom_dim": ws.len(),
            "samples": samples,
            "o_circ_vanishes": ok_circ,
            "o_star_multiplicative": ok_star,
            "o_omega_is_weight": l0,
        }));
    }
    Ok(out)
}

/// Truncated Zhu algebra: dimension trend, context at `D`, product table and module actions.
pub fn cmd_zhu(engine: &ModeEngine, config: &ScenarioConfig) -> Result<Report> {
    let d = config.zhu.d.unwrap_or(6);
    if d < 0 {
        return Err(Error::Config("zhu.d must be nonnegative".into()));
    }
    let algebra = config.graded_algebra(Weight::from_integer(d + 2))?;
    let trend = dimension_trend(engine, &algebra, (d - 2).max(0)..=d + 2)?;
    let ctx = build_context(engine, &algebra, d)?;
    let mut notes = vec!["A(V) is a filtered quotient at cutoff D; stable means D, D+1, D+2 agree".to_string()];
    let mut results = json!({
        "space": ctx.space,
        "trend": trend.iter().map(|(k, v)| json!({ "d": k, "dim": v })).collect::<Vec<_>>(),
        "context": {
            "d": ctx.d,
            "dim": ctx.dim(),
            "o_rank": ctx.o_basis.rank(),
            "ambient": ctx.ambient_dim,
            "neighbours": ctx.neighbours,
            "provisional": ctx.provisional(),
            "reps": ctx.a_basis.iter().map(element_json).collect::<Vec<_>>(),
        },
    });
    if ctx.provisional() {
        notes.push(format!("A(V) dimension not stable at D = {d}; product table withheld"));
    } else {
        let t = a_product_table(engine, &algebra, &ctx)?;
        results["products"] = json!({
            "product_d": t.product_d,
            "associative": t.associative,
            "unital": t.unital,
            "omega_central": t.omega_central,
            "identity": t.identity,
            "omega": t.omega.iter().map(fmt_scalar).collect::<Vec<_>>(),
            "constants": t.constants.iter().map(|row| row.iter().map(|c| c.iter().map(fmt_scalar).collect::<Vec<_>>()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        });
    }
    if config.sign()?.is_none() && !config.lattice()?.is_heisenberg_only() {
        let space = algebra.ambient().clone();
        results["modules"] = Value::Array(zhu_module_checks(engine, &space, config.zhu.samples.unwrap_or(20), config.seed())?);
    }
    let mut rows = vec![vec!["d".to_string(), "dim".to_string()]];
    for (k, v) in &trend {
        rows.push(vec![k.to_string(), v.to_string()]);
    }
    Ok(Report { json: envelope("zhu", config, results, notes), table: rows })
}

fn bottom_generator(module: &SpaceRef) -> Element {
    let b = stratum_basis(module, module.min_weight()).into_iter().next().expect("bottom stratum is nonempty");
    Element::basis(module, b)
}

/// Lowest weight vectors, reduced against full, and the bound `B` for a bottom generator.
pub fn cmd_omega(engine: &ModeEngine, config: &ScenarioConfig) -> Result<Report> {
    config.no_sign("omega")?;
    let cutoff = config.max_weight(4)?;
    let algebra = Graded::full(&config.algebra(cutoff)?);
    let module_space = config.module(cutoff)?;
    let module = Graded::full(&module_space);
    let rep = find_omega(engine, &algebra, &module, cutoff)?;
    let mut notes = Vec::new();
    let mut results = json!({
        "module": rep.module,
        "cutoff": w(rep.cutoff),
        "dim": rep.dim(),
        "nonzero": rep.dim() > 0,
        "reduced_equals_full": rep.agree(),
        "is_bottom_stratum": rep.is_bottom(),
        "y_reps": rep.y_reps.len(),
        "strata": rep.strata.iter().map(|s| json!({
            "stratum": w(s.stratum),
            "ambient": s.ambient,
            "reduced": s.reduced.rank(),
            "full": s.full.rank(),
            "basis": s.reduced.rows().iter().map(element_json).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    let xmax = Weight::from_integer(8);
    match choose_x(engine, &algebra.with_cutoff(xmax), xmax) {
        Ok(params) => {
            let rw = Rewriter::new(engine, params)?;
            let g = bottom_generator(&module_space);
            let b = rw.lowest_weight_bound(&g)?;
            results["bound"] = json!({
                "generator": g.to_string(),
                "L": b.l,
                "B": b.b,
                "witness": b.witness.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                "words": b.words,
            });
        }
        Err(Error::NotStabilized(_)) => notes.push("C_2 table not stabilized; X and B are not computed".into()),
        Err(e) => return Err(e),
    }
    let mut rows = vec![vec!["stratum".into(), "ambient".into(), "omega_reduced".into(), "omega_full".into()]];
    for s in &rep.strata {
        rows.push(vec![fmt_weight(&s.stratum), s.ambient.to_string(), s.reduced.rank().to_string(), s.full.rank().to_string()]);
    }
    Ok(Report { json: envelope("omega", config, results, notes), table: rows })
}

/// Normalizes a user-supplied word against `e^β` in the module.
pub fn cmd_rewrite(engine: &ModeEngine, config: &ScenarioConfig) -> Result<Report> {
    config.no_sign("rewrite")?;
    let cutoff = config.max_weight(6)?;
    let algebra = Graded::full(&config.algebra(cutoff)?);
    let xmax = cutoff.max(Weight::from_integer(6));
    let params = choose_x(engine, &algebra.with_cutoff(xmax), xmax)?;
    let rw = Rewriter::new(engine, params)?;
    let text = config.rewrite.word.clone().ok_or_else(|| Error::Config("rewrite needs a word, e.g. --word \"x0(-1) x1(0)\"".into()))?;
    let word = ModeWord::parse(&text, rw.params())?;
    let module = config.module(cutoff)?;
    let target = match &config.rewrite.target {
        None => bottom_generator(&module),
        Some(beta) => {
            if beta.len() != module.rank() {
                return Err(Error::Config("target point has the wrong rank".into()));
            }
            Element::basis(&module, module.basis(Vec::new(), beta.clone()))
        }
    };
    module.check_weight(target.max_weight().unwrap())?;
    let out = rw.normalize(&word, &target)?;
    let direct = rw.evaluate(word.letters(), &target)?;
    let mut table = vec![vec!["coefficient".to_string(), "word".to_string(), "weight".to_string()]];
    for (c, cert) in &out.terms {
        table.push(vec![fmt_scalar(c), cert.word.to_string(), cert.word.weight().to_string()]);
    }
    let results = json!({
        "generators": rw.params().x.iter().enumerate().map(|(i, x)| json!({ "name": format!("x{i}"), "vector": element_json(x) })).collect::<Vec<_>>(),
        "word": word.to_string(),
        "word_weight": word.weight(),
        "target": target.to_string(),
        "L": out.l,
        "steps": out.steps,
        "terms": out.terms.iter().map(|(c, cert)| json!({
            "coeff": fmt_scalar(c),
            "word": cert.word.to_string(),
            "weight": cert.word.weight(),
            "certified": cert.check(),
        })).collect::<Vec<_>>(),
        "evaluation_equal": out.value == direct,
        "value": element_json(&out.value),
    });
    Ok(Report { json: envelope("rewrite", config, results, Vec::new()), table })
}

/// Identity fuzz suites and the rewriter campaign.
pub fn cmd_verify(engine: &ModeEngine, config: &ScenarioConfig) -> Result<Report> {
    config.no_sign("verify")?;
    let v = &config.verify;
    let seed = config.seed();
    let modes = v.modes.unwrap_or(3);
    let counts = [v.commutator.unwrap_or(50), v.iterate.unwrap_or(50), v.rewrite_words.unwrap_or(20), v.rewrite_targets.unwrap_or(5)];
    if counts.contains(&0) {
        return Err(Error::Config("every suite needs at least one sample".into()));
    }
    let cutoff = config.max_weight(6)?;
    let space = config.algebra(cutoff)?;
    let vmax = v.virasoro_max.unwrap_or(2);
    let vir_space = space.with_cutoff(Weight::from_integer(vmax + 2 * modes).max(cutoff));
    let mut suites = vec![
        commutator_suite(engine, &space, counts[0], modes, seed)?,
        iterate_suite(engine, &space, counts[1], modes, seed.wrapping_add(1))?,
        virasoro_suite(engine, &vir_space, Weight::from_integer(vmax), modes)?,
    ];
    let mut notes = Vec::new();
    match choose_x(engine, &Graded::full(&space.with_cutoff(cutoff.max(Weight::from_integer(6)))), cutoff.max(Weight::from_integer(6))) {
        Ok(params) => {
            let rw = Rewriter::new(engine, params)?;
            suites.push(rewrite_suite(&rw, &space, counts[2], counts[3], 5, modes, seed.wrapping_add(2))?);
        }
        Err(Error::NotStabilized(_)) => notes.push("C_2 table not stabilized; rewrite suite skipped".into()),
        Err(e) => return Err(e),
    }
    let mut table = vec![vec!["suite".to_string(), "samples".into(), "passed".into(), "nontrivial".into()]];
    for s in &suites {
        table.push(vec![s.name.clone(), s.samples.to_string(), s.passed.to_string(), s.nontrivial.to_string()]);
    }
    let results = json!({
        "all_pass": suites.iter().all(SuiteResult::holds),
        "suites": suites.iter().map(suite_json).collect::<Vec<_>>(),
    });
    Ok(Report { json: envelope("verify", config, results, notes), table })
}

/// Runs one command by name.
pub fn run(command: &str, config: &ScenarioConfig, exec: Exec) -> Result<Report> {
    let engine = ModeEngine::new().with_exec(exec);
    match command {
        "basis" => cmd_basis(config),
        "cofinite" => cmd_cofinite(&engine, config),
        "zhu" => cmd_zhu(&engine, config),
        "omega" => cmd_omega(&engine, config),
        "rewrite" => cmd_rewrite(&engine, config),
        "verify" => cmd_verify(&engine, config),
        other => Err(Error::Config(format!("unknown command {other:?}"))),
    }
}

/// `(weight, dim)` pairs of a report produced by [`cmd_basis`].
pub fn basis_dims(report: &Report) -> BTreeMap<String, usize> {
    report.table.iter().skip(1).map(|r| (r[0].clone(), r[1].parse().unwrap())).collect()
}
