//! Seeded audits: colon/annihilator/intersection certification, the
//! (2,0)-scaling check, and the coordinatewise colon formula.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::Serialize;

use crate::cert::{find_s_finite, verify_s_finite, Budget, SFiniteCert};
use crate::ideal::{self, F2Part, FinIdeal, StructuredIdeal};
use crate::module::{Submodule, Subquotient};
use crate::mult_set::MultSet;
use crate::ring::{Element, Ring, Vector};
use crate::sample::{trial_rng, Sampler};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditConfig {
    pub trials: usize,
    pub seed: u64,
    pub budget: Budget,
    /// Evaluate trials on the rayon pool (when built with `parallel`).
    pub parallel: bool,
    /// Over ℤ/n, enumerate every ideal and element instead of sampling.
    pub exhaustive: bool,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            trials: 200,
            seed: 0,
            budget: Budget::default(),
            parallel: true,
            exhaustive: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConditionRow {
    pub condition: String,
    pub trials: usize,
    pub certified: usize,
    pub failed: usize,
    pub inconclusive: usize,
    pub non_unit_s: usize,
    pub max_s_exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Discrepancy {
    pub condition: String,
    pub trial: usize,
    pub input: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AuditReport {
    pub ring: String,
    pub s_gens: Vec<String>,
    pub seed: u64,
    pub mode: String,
    pub trials: usize,
    pub conditions: Vec<ConditionRow>,
    pub discrepancies: Vec<Discrepancy>,
}

const MAX_DISCREPANCIES: usize = 10;

impl AuditReport {
    pub fn all_certified(&self) -> bool {
        self.conditions.iter().all(|r| r.certified == r.trials)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let s = if self.s_gens.is_empty() {
            "1".to_string()
        } else {
            self.s_gens.join(", ")
        };
        let _ = writeln!(
            out,
            "ring `{}`, S generated by `{}`, seed {}, {} ({} trials)\n",
            self.ring, s, self.seed, self.mode, self.trials
        );
        out.push_str("| condition | trials | certified | inconclusive | max s-exponent |\n");
        out.push_str("|---|---|---|---|---|\n");
        for r in &self.conditions {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} |",
                r.condition, r.trials, r.certified, r.inconclusive, r.max_s_exponent
            );
        }
        if !self.discrepancies.is_empty() {
            out.push('\n');
        }
        for d in &self.discrepancies {
            let _ = writeln!(
                out,
                "- {} trial {}: {} ({})",
                d.condition, d.trial, d.input, d.detail
            );
        }
        out
    }
}

#[derive(Clone, Debug)]
enum Outcome {
    Certified { exponent: u32, unit: bool },
    Failed(String),
    Inconclusive(String),
}

struct Instance {
    condition: &'static str,
    input: String,
    outcome: Outcome,
}

fn certify(target: &StructuredIdeal, set: &MultSet, budget: &Budget) -> Outcome {
    match find_s_finite(&Subquotient::submodule(target.to_submodule()), set, budget) {
        Ok(cert) => judge(&cert),
        Err(e) => Outcome::Inconclusive(e.reason),
    }
}

fn judge(cert: &SFiniteCert) -> Outcome {
    let report = verify_s_finite(cert);
    if report.is_valid() {
        Outcome::Certified {
            exponent: cert.s_exponents.iter().sum(),
            unit: cert.s_exponents.iter().all(|&e| e == 0),
        }
    } else {
        let names: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        Outcome::Failed(format!("certificate rejected: {}", names.join(", ")))
    }
}

fn fin(ring: &Ring, gens: Vec<Element>) -> StructuredIdeal {
    FinIdeal::new(ring, gens)
        .expect("sampled elements are ring elements")
        .into()
}

fn chase_trial(
    ring: &Ring,
    set: &MultSet,
    budget: &Budget,
    seed: u64,
    trial: usize,
) -> Vec<Instance> {
    let sampler = Sampler::new(ring);
    let mut rng = trial_rng(seed, trial);
    let i = fin(ring, sampler.gens(&mut rng));
    let a = sampler.element(&mut rng);
    let i2 = fin(ring, sampler.gens(&mut rng));
    vec![
        Instance {
            condition: "colon",
            input: format!("({i} : {a})"),
            outcome: certify(&ideal::colon(&i, &a), set, budget),
        },
        Instance {
            condition: "annihilator",
            input: format!("(0 : {a})"),
            outcome: certify(
                &ideal::annihilator(ring, std::slice::from_ref(&a)),
                set,
                budget,
            ),
        },
        Instance {
            condition: "intersection",
            input: format!("{i} ∩ {i2}"),
            outcome: certify(&ideal::intersect(&i, &i2), set, budget),
        },
    ]
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn chase_exhaustive(ring: &Ring, n: u64, set: &MultSet, budget: &Budget) -> Vec<Vec<Instance>> {
    let ideals: Vec<StructuredIdeal> = divisors(n)
        .into_iter()
        .map(|d| fin(ring, vec![ring.from_int(d)]))
        .collect();
    let elements: Vec<Element> = (0..n).map(|x| ring.from_int(x)).collect();
    let mut out = Vec::new();
    for i in &ideals {
        for a in &elements {
            out.push(vec![Instance {
                condition: "colon",
                input: format!("({i} : {a})"),
                outcome: certify(&ideal::colon(i, a), set, budget),
            }]);
        }
    }
    for a in &elements {
        out.push(vec![Instance {
            condition: "annihilator",
            input: format!("(0 : {a})"),
            outcome: certify(
                &ideal::annihilator(ring, std::slice::from_ref(a)),
                set,
                budget,
            ),
        }]);
    }
    for i in &ideals {
        for j in &ideals {
            out.push(vec![Instance {
                condition: "intersection",
                input: format!("{i} ∩ {j}"),
                outcome: certify(&ideal::intersect(i, j), set, budget),
            }]);
        }
    }
    out
}

fn run_trials<F>(trials: usize, parallel: bool, f: F) -> Vec<Vec<Instance>>
where
    F: Fn(usize) -> Vec<Instance> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return (0..trials).into_par_iter().map(&f).collect();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = parallel;
    (0..trials).map(f).collect()
}

fn tally(
    ring: &Ring,
    set: &MultSet,
    seed: u64,
    mode: &str,
    conditions: &[&str],
    results: Vec<Vec<Instance>>,
) -> AuditReport {
    let mut rows: Vec<ConditionRow> = conditions
        .iter()
        .map(|c| ConditionRow {
            condition: c.to_string(),
            trials: 0,
            certified: 0,
            failed: 0,
            inconclusive: 0,
            non_unit_s: 0,
            max_s_exponent: 0,
        })
        .collect();
    let mut discrepancies = Vec::new();
    let trials = results.len();
    for (t, instances) in results.into_iter().enumerate() {
        for inst in instances {
            let row = rows
                .iter_mut()
                .find(|r| r.condition == inst.condition)
                .expect("known condition");
            row.trials += 1;
            let detail = match inst.outcome {
                Outcome::Certified { exponent, unit } => {
                    row.certified += 1;
                    row.max_s_exponent = row.max_s_exponent.max(exponent);
                    if !unit {
                        row.non_unit_s += 1;
                    }
                    None
                }
                Outcome::Failed(d) => {
                    row.failed += 1;
                    Some(d)
                }
                Outcome::Inconclusive(d) => {
                    row.inconclusive += 1;
                    Some(d)
                }
            };
            if let Some(detail) = detail {
                if discrepancies.len() < MAX_DISCREPANCIES {
                    discrepancies.push(Discrepancy {
                        condition: inst.condition.to_string(),
                        trial: t,
                        input: inst.input,
                        detail,
                    });
                }
            }
        }
    }
    AuditReport {
        ring: ring.to_string(),
        s_gens: set.gens().iter().map(Element::to_string).collect(),
        seed,
        mode: mode.to_string(),
        trials,
        conditions: rows,
        discrepancies,
    }
}

/// Certifies `(I : a)`, `(0 : a)` and `I₁ ∩ I₂` for sampled inputs (or, in
/// exhaustive mode over ℤ/n, for all of them).
pub fn chase_audit(ring: &Ring, set: &MultSet, config: &AuditConfig) -> AuditReport {
    let conditions = ["colon", "annihilator", "intersection"];
    if config.exhaustive {
        if let Some(n) = ring.modulus().and_then(|n| n.to_u64()) {
            let results = chase_exhaustive(ring, n, set, &config.budget);
            return tally(ring, set, config.seed, "exhaustive", &conditions, results);
        }
    }
    let results = run_trials(config.trials, config.parallel, |t| {
        chase_trial(ring, set, &config.budget, config.seed, t)
    });
    tally(ring, set, config.seed, "sampled", &conditions, results)
}

/// A sampled ideal of the idealization: finitely generated, or now and then
/// a descriptor `Split(2k, full)`.
fn noetherian_ideal(sampler: &Sampler, rng: &mut rand_chacha::ChaCha8Rng) -> StructuredIdeal {
    let ring = Ring::IdealizationZF2;
    if rng.gen_ratio(1, 5) {
        let k = rng.gen_range(0..=10);
        StructuredIdeal::split(&ring, BigInt::from(2 * k), F2Part::Full).expect("idealization")
    } else {
        fin(&ring, sampler.gens(rng))
    }
}

fn noetherian_trial(seed: u64, trial: usize) -> Vec<Instance> {
    let ring = Ring::IdealizationZF2;
    let sampler = Sampler::new(&ring);
    let mut rng = trial_rng(seed, trial);
    let i = noetherian_ideal(&sampler, &mut rng);
    let s = Element::pair(2, []);
    let scaled = ideal::scale(&i, &s);
    let outcome = (|| {
        let Some(f) = scaled.as_fin_ideal() else {
            return Outcome::Failed(format!("(2,0)·I = {scaled} is not finitely generated"));
        };
        let shape_ok = f.gens().len() <= 1
            && f.gens()
                .iter()
                .all(|g| g.int_part().is_even() && g.seq_part().is_some_and(|b| b.is_empty()));
        if !shape_ok {
            return Outcome::Failed(format!("(2,0)·I = {f} is not of the form ⟨(2a, 0)⟩"));
        }
        // Spot-check with an explicit member of I.
        let x = member_of(&i, &mut rng);
        if !i.contains(&x) || !scaled.contains(&ring.mul(&s, &x)) {
            return Outcome::Failed(format!("(2,0)·{x} escapes {f}"));
        }
        let cert = SFiniteCert {
            s_gens: vec![s.clone()],
            s: s.clone(),
            s_exponents: vec![1],
            target: Subquotient::submodule(i.to_submodule()),
            j_gens: f.gens().iter().map(|g| vec![g.clone()]).collect(),
        };
        judge(&cert)
    })();
    vec![Instance {
        condition: "s-noetherian",
        input: i.to_string(),
        outcome,
    }]
}

fn member_of(i: &StructuredIdeal, rng: &mut rand_chacha::ChaCha8Rng) -> Element {
    let ring = Ring::IdealizationZF2;
    let sampler = Sampler::new(&ring);
    let m = i.to_submodule();
    let mut x = ring.zero();
    for g in m.gens() {
        x = ring.add(&x, &ring.mul(&sampler.element(rng), &g[0]));
    }
    if !m.is_finitely_generated() {
        x = ring.add(&x, &Element::Pair(BigInt::from(0), sampler.support(rng)));
    }
    x
}

/// `(2,0)·I` is `⟨(2a, 0)⟩` for sampled ideals I of the idealization, and
/// yields a verifying certificate with `s = (2,0)`.
pub fn s_noetherian_sample_check(trials: usize, seed: u64, parallel: bool) -> AuditReport {
    let ring = Ring::IdealizationZF2;
    let set = MultSet::new(&ring, vec![Element::pair(2, [])]).expect("nonzero generator");
    let results = run_trials(trials, parallel, |t| noetherian_trial(seed, t));
    tally(&ring, &set, seed, "sampled", &["s-noetherian"], results)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FormulaRow {
    pub ring: String,
    pub trials: usize,
    pub contained: usize,
    pub equal: usize,
    pub strict: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StrictInstance {
    pub ring: String,
    pub trial: usize,
    pub module: Vec<String>,
    pub m: String,
    pub colon: String,
    pub formula: String,
    /// An element of the formula's ideal `r` with `r·m ∉ N`.
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FormulaAuditReport {
    pub seed: u64,
    pub trials: usize,
    pub rows: Vec<FormulaRow>,
    pub strict_samples: Vec<StrictInstance>,
}

impl FormulaAuditReport {
    pub fn always_contained(&self) -> bool {
        self.rows.iter().all(|r| r.contained == r.trials)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!(
            "coordinatewise colon formula, seed {}, {} trials\n\n",
            self.seed, self.trials
        );
        out.push_str(
            "| ring | trials | colon ⊆ formula | equal | strict |\n|---|---|---|---|---|\n",
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} |",
                r.ring, r.trials, r.contained, r.equal, r.strict
            );
        }
        if !self.strict_samples.is_empty() {
            out.push('\n');
        }
        for s in &self.strict_samples {
            let _ = writeln!(
                out,
                "- {} N = <{}>, m = {}: colon {} vs formula {}, witness r = {}",
                s.ring,
                s.module.join(", "),
                s.m,
                s.colon,
                s.formula,
                s.witness
            );
        }
        out
    }
}

enum FormulaOutcome {
    Equal,
    Strict(StrictInstance),
    NotContained,
}

/// The ring used by trial `trial` of [`formula_audit`].
pub fn formula_ring(trial: usize) -> Ring {
    if trial.is_multiple_of(2) {
        Ring::Integers
    } else {
        Ring::modular(12).expect("valid modulus")
    }
}

/// The pair `(N, m)` examined by trial `trial` of [`formula_audit`].
pub fn formula_input(seed: u64, trial: usize) -> (Submodule, Vector) {
    let ring = formula_ring(trial);
    let mut sampler = Sampler::new(&ring);
    sampler.int_bound = 6;
    let mut rng = trial_rng(seed, trial);
    let rank = rng.gen_range(1..=3);
    let n = Submodule::new(&ring, rank, sampler.vectors(&mut rng, rank))
        .expect("sampled vectors have the rank");
    let m = sampler.vector(&mut rng, rank);
    (n, m)
}

fn formula_trial(ring: &Ring, seed: u64, trial: usize) -> FormulaOutcome {
    let (n, m) = formula_input(seed, trial);
    let colon = ideal::submodule_colon(&n, &m);
    let formula = ideal::componentwise_colon(&n, &m);
    if !colon.is_subset_of(&formula) {
        return FormulaOutcome::NotContained;
    }
    if formula.is_subset_of(&colon) {
        return FormulaOutcome::Equal;
    }
    let witness = formula
        .to_submodule()
        .gens()
        .iter()
        .map(|g| g[0].clone())
        .find(|r| !colon.contains(r))
        .expect("a strictly larger finitely generated ideal has a generator outside");
    FormulaOutcome::Strict(StrictInstance {
        ring: ring.to_string(),
        trial,
        module: n
            .gens()
            .iter()
            .map(|g| crate::cert::vector_to_string(g))
            .collect(),
        m: crate::cert::vector_to_string(&m),
        colon: colon.to_string(),
        formula: formula.to_string(),
        witness: witness.to_string(),
    })
}

/// Compares the direct submodule colon with the coordinatewise formula over
/// ℤ (even trials) and ℤ/12 (odd trials).
pub fn formula_audit(trials: usize, seed: u64) -> FormulaAuditReport {
    let mut rows: Vec<FormulaRow> = (0..2)
        .map(|t| FormulaRow {
            ring: formula_ring(t).to_string(),
            trials: 0,
            contained: 0,
            equal: 0,
            strict: 0,
        })
        .collect();
    let mut strict_samples = Vec::new();
    for t in 0..trials {
        let ring = formula_ring(t);
        let row = &mut rows[t % 2];
        row.trials += 1;
        match formula_trial(&ring, seed, t) {
            FormulaOutcome::Equal => {
                row.contained += 1;
                row.equal += 1;
            }
            FormulaOutcome::Strict(s) => {
                row.contained += 1;
                row.strict += 1;
                if strict_samples.len() < MAX_DISCREPANCIES {
                    strict_samples.push(s);
                }
            }
            FormulaOutcome::NotContained => {}
        }
    }
    FormulaAuditReport {
        seed,
        trials,
        rows,
        strict_samples,
    }
}
