//! The idealization ℤ(+)(ℤ/2)^(ℕ) with S = {(2,0)ⁿ}: S-coherent, yet not
//! c-S-coherent. Every claim is checked against the ideal arithmetic rather
//! than taken from the construction.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::cert::{verify_sfp, Budget, Check};
use crate::engine::{free_scoherent_cert, s_noetherian_sample_check};
use crate::ideal::{self, F2Part, FinIdeal, StructuredIdeal};
use crate::module::Submodule;
use crate::mult_set::MultSet;
use crate::ring::{Element, F2Seq, Ring};
use crate::sample::{trial_rng, Sampler};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("invalid claim: {0}")]
    InvalidClaim(String),
}

fn ring() -> Ring {
    Ring::IdealizationZF2
}

/// `(2, 0)`.
pub fn two_zero() -> Element {
    Element::pair(2, [])
}

pub fn s_set() -> MultSet {
    MultSet::new(&ring(), vec![two_zero()]).expect("(2,0) is nonzero")
}

fn principal(x: Element) -> StructuredIdeal {
    FinIdeal::new(&ring(), vec![x])
        .expect("idealization element")
        .into()
}

fn check(checks: &mut Vec<Check>, name: &str, passed: bool, detail: impl Into<String>) {
    checks.push(Check {
        name: name.to_string(),
        passed,
        detail: detail.into(),
    });
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Classification {
    pub bound: u64,
    #[serde(serialize_with = "display_all")]
    pub ideals: Vec<StructuredIdeal>,
    pub samples: usize,
    pub checks: Vec<Check>,
}

fn display_all<S: serde::Serializer>(ideals: &[StructuredIdeal], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(ideals.iter().map(|i| i.to_string()))
}

impl Classification {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// `⟨0⟩` and `⟨(2m, 0)⟩` for `1 ≤ m ≤ bound`, each checked to lie in
/// `⟨(2,0)⟩`, plus `samples` random ideals inside `⟨(2,0)⟩` checked to have
/// this shape.
pub fn classify_ideals_inside_2_0(bound: u64, samples: usize, seed: u64) -> Classification {
    let r = ring();
    let top = principal(two_zero());
    let mut ideals = vec![StructuredIdeal::Zero(r.clone())];
    ideals.extend((1..=bound).map(|m| principal(Element::pair(2 * m, []))));
    let mut checks = Vec::new();
    for i in &ideals {
        let gens_inside = i
            .to_submodule()
            .gens()
            .iter()
            .all(|g| ideal::member(&top, &g[0]).is_member());
        check(
            &mut checks,
            &format!("inside/{i}"),
            gens_inside && i.is_subset_of(&top),
            "generators are members of <(2; {})>",
        );
    }
    let sampler = Sampler::new(&r);
    let mut misfits = Vec::new();
    for t in 0..samples {
        let mut rng = trial_rng(seed, t);
        let gens: Vec<Element> = sampler
            .gens(&mut rng)
            .iter()
            .map(|x| r.mul(x, &two_zero()))
            .collect();
        let i = principal_list(&gens);
        let g = gens
            .iter()
            .fold(BigInt::zero(), |acc, x| acc.gcd(x.int_part()));
        let expected = if g.is_zero() {
            StructuredIdeal::Zero(r.clone())
        } else {
            principal(Element::Pair(g, F2Seq::new()))
        };
        let same = i.is_subset_of(&expected)
            && expected.is_subset_of(&i)
            && i.to_string() == expected.to_string();
        if !same || !i.is_subset_of(&top) {
            misfits.push(i.to_string());
        }
    }
    check(
        &mut checks,
        "sampled-ideals-classified",
        misfits.is_empty(),
        if misfits.is_empty() {
            format!("{samples} sampled ideals are <0> or <(2m; {{}})>")
        } else {
            misfits.join("; ")
        },
    );
    Classification {
        bound,
        ideals,
        samples,
        checks,
    }
}

fn principal_list(gens: &[Element]) -> StructuredIdeal {
    FinIdeal::new(&ring(), gens.to_vec())
        .expect("idealization elements")
        .into()
}

/// Counterexample to a claimed complete syzygy list for `(2m, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FpRefutation {
    pub generator: String,
    pub claimed: Vec<String>,
    pub support_bound: u64,
    pub witness: String,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub witness_element: Element,
}

impl FpRefutation {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Given genuine relations `r·(2m, 0) = 0`, returns the relation `(0, e_{B+1})`
/// where B bounds every claimed support; it lies outside their span.
pub fn refute_finitely_presented(m: u64, claimed: &[Element]) -> Result<FpRefutation, LabError> {
    if m == 0 {
        return Err(LabError::InvalidClaim("m must be positive".into()));
    }
    let r = ring();
    let g = Element::pair(2 * m, []);
    for c in claimed {
        if !r.contains(c) {
            return Err(LabError::InvalidClaim(format!(
                "{c} is not an element of the idealization"
            )));
        }
        if !r.is_zero(&r.mul(c, &g)) {
            return Err(LabError::InvalidClaim(format!(
                "{c}·{g} = {} is not zero",
                r.mul(c, &g)
            )));
        }
    }
    let bound = claimed
        .iter()
        .filter_map(|c| c.seq_part().and_then(F2Seq::max_index))
        .max()
        .unwrap_or(0);
    let witness = Element::Pair(BigInt::zero(), F2Seq::unit(bound + 1));
    let mut checks = Vec::new();
    let product = r.mul(&witness, &g);
    check(
        &mut checks,
        "witness-is-relation",
        r.is_zero(&product),
        format!("{witness}·{g} = {product}"),
    );
    check(
        &mut checks,
        "witness-nonzero",
        !r.is_zero(&witness),
        witness.to_string(),
    );
    let span = principal_list(claimed);
    check(
        &mut checks,
        "witness-outside-claimed-span",
        !ideal::member(&span, &witness).is_member(),
        format!("{witness} ∉ {span}"),
    );
    let escapes = claimed
        .iter()
        .all(|c| !c.seq_part().is_some_and(|b| b.contains(bound + 1)));
    check(
        &mut checks,
        "support-argument",
        escapes,
        format!("no claimed support reaches index {}", bound + 1),
    );
    let ann = ideal::annihilator(&r, std::slice::from_ref(&g));
    check(
        &mut checks,
        "annihilator-not-finitely-generated",
        !ann.is_finitely_generated(),
        format!("(0 : {g}) = {ann}"),
    );
    Ok(FpRefutation {
        generator: g.to_string(),
        claimed: claimed.iter().map(Element::to_string).collect(),
        support_bound: bound,
        witness: witness.to_string(),
        checks,
        witness_element: witness,
    })
}

/// Random genuine relations on `(2m, 0)`: elements `(0, b)` with supports
/// in `1..=6`.
pub fn random_syzygies(seed: u64, trial: usize) -> Vec<Element> {
    let sampler = Sampler::new(&ring());
    let mut rng = trial_rng(seed, trial);
    let k = rng.gen_range(0..=4);
    (0..k)
        .map(|_| Element::Pair(BigInt::zero(), sampler.support(&mut rng)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Prong {
    /// N is not finitely presented.
    #[serde(rename = "a")]
    NotFinitelyPresented,
    /// sM is not inside N.
    #[serde(rename = "b")]
    ScaledModuleEscapes,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CsfpRefutation {
    pub candidate: String,
    pub exponent: u32,
    pub prong: Prong,
    /// The syzygy list refuted under prong (a); empty for prong (b).
    pub claimed: Vec<String>,
    pub witness: String,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub witness_element: Element,
}

impl CsfpRefutation {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Shows that `N` does not witness `⟨(2,0)⟩` being c-S-finitely presented with
/// `s = (2,0)ⁿ`.
pub fn refute_csfp(candidate: &StructuredIdeal, n: u32) -> Result<CsfpRefutation, LabError> {
    let r = ring();
    let top = principal(two_zero());
    if candidate.ring() != r || !candidate.is_subset_of(&top) {
        return Err(LabError::InvalidClaim(format!(
            "{candidate} is not inside <(2; {{}})>"
        )));
    }
    let mut checks = Vec::new();
    if candidate.is_zero() {
        let s = r.pow(&two_zero(), n);
        let witness = r.mul(&s, &two_zero());
        check(
            &mut checks,
            "witness-in-m",
            ideal::member(&top, &witness).is_member(),
            format!("{witness} ∈ <(2; {{}})>"),
        );
        check(
            &mut checks,
            "witness-nonzero",
            !r.is_zero(&witness),
            witness.to_string(),
        );
        check(
            &mut checks,
            "witness-outside-n",
            !ideal::member(candidate, &witness).is_member(),
            format!("{witness} ∉ {candidate}"),
        );
        return Ok(CsfpRefutation {
            candidate: candidate.to_string(),
            exponent: n,
            prong: Prong::ScaledModuleEscapes,
            claimed: Vec::new(),
            witness: witness.to_string(),
            checks,
            witness_element: witness,
        });
    }
    let gen = candidate
        .as_fin_ideal()
        .filter(|f| f.gens().len() == 1)
        .map(|f| f.gens()[0].clone())
        .filter(|g| g.int_part().is_positive() && g.seq_part().is_some_and(F2Seq::is_empty))
        .ok_or_else(|| {
            LabError::InvalidClaim(format!("{candidate} is not of the form <(2m; {{}})>"))
        })?;
    let m = (gen.int_part() / 2u32)
        .to_u64()
        .ok_or_else(|| LabError::InvalidClaim(format!("{gen} is too large")))?;
    let claimed: Vec<Element> = (1..=u64::from(n))
        .map(|i| Element::Pair(BigInt::zero(), F2Seq::unit(i)))
        .collect();
    let fp = refute_finitely_presented(m, &claimed)?;
    for c in &fp.checks {
        check(
            &mut checks,
            &format!("fp/{}", c.name),
            c.passed,
            c.detail.clone(),
        );
    }
    Ok(CsfpRefutation {
        candidate: candidate.to_string(),
        exponent: n,
        prong: Prong::NotFinitelyPresented,
        claimed: fp.claimed.clone(),
        witness: fp.witness.clone(),
        checks,
        witness_element: fp.witness_element,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DemoStep {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DemoReport {
    pub ring: String,
    pub s_gens: Vec<String>,
    pub passed: bool,
    pub steps: Vec<DemoStep>,
}

impl DemoReport {
    pub fn to_markdown(&self) -> String {
        let mut out = format!(
            "ring `{}`, S generated by `{}`\n\n",
            self.ring,
            self.s_gens.join(", ")
        );
        out.push_str("| step | result | detail |\n|---|---|---|\n");
        for s in &self.steps {
            let _ = writeln!(
                out,
                "| {} | {} | {} |",
                s.name,
                if s.passed { "pass" } else { "FAIL" },
                s.detail.replace('|', "\\|")
            );
        }
        let _ = writeln!(
            out,
            "\noverall: {}",
            if self.passed { "pass" } else { "FAIL" }
        );
        out
    }
}

pub const DEMO_SEED: u64 = 0;
pub const DEMO_BOUND: u64 = 8;
pub const DEMO_MAX_EXPONENT: u32 = 16;
pub const DEMO_NOETHERIAN_TRIALS: usize = 500;

/// Runs every check of the example in a fixed order.
pub fn example_demo() -> DemoReport {
    let r = ring();
    let mut steps = Vec::new();
    let mut step = |name: &str, passed: bool, detail: String| {
        steps.push(DemoStep {
            name: name.to_string(),
            passed,
            detail,
        })
    };

    let ann = ideal::annihilator(&r, &[two_zero()]);
    let expected = StructuredIdeal::split(&r, BigInt::zero(), F2Part::Full).expect("idealization");
    step(
        "annihilator",
        ann == expected && ann.is_subset_of(&expected) && expected.is_subset_of(&ann),
        format!("(0 : (2; {{}})) = {ann}"),
    );

    let top = principal(two_zero());
    let mut bad = Vec::new();
    let mut last = String::new();
    for n in 1..=DEMO_MAX_EXPONENT {
        let scaled = ideal::scale(&top, &r.pow(&two_zero(), n));
        let want = vec![Element::Pair(BigInt::from(1) << (n + 1), F2Seq::new())];
        if scaled.as_fin_ideal().map(|f| f.gens().to_vec()) != Some(want) {
            bad.push(format!("n = {n}: {scaled}"));
        }
        last = scaled.to_string();
    }
    step(
        "powers",
        bad.is_empty(),
        if bad.is_empty() {
            format!("(2; {{}})^n·<(2; {{}})> = <(2^(n+1); {{}})> for n = 1..{DEMO_MAX_EXPONENT}, last {last}")
        } else {
            bad.join("; ")
        },
    );

    let noeth = s_noetherian_sample_check(DEMO_NOETHERIAN_TRIALS, DEMO_SEED, false);
    let row = &noeth.conditions[0];
    step(
        "s-noetherian",
        noeth.all_certified(),
        format!(
            "{}/{} sampled ideals I have (2; {{}})·I = <(2a; {{}})>",
            row.certified, row.trials
        ),
    );

    let classes = classify_ideals_inside_2_0(DEMO_BOUND, 200, DEMO_SEED);
    let names: Vec<String> = classes.ideals.iter().map(|i| i.to_string()).collect();
    step("classification", classes.is_valid(), names.join(", "));

    for m in 1..=3u64 {
        let claimed = random_syzygies(DEMO_SEED, m as usize);
        let name = format!("refute-fp-m{m}");
        match refute_finitely_presented(m, &claimed) {
            Ok(t) => step(
                &name,
                t.is_valid(),
                format!("claimed [{}], witness {}", t.claimed.join(", "), t.witness),
            ),
            Err(e) => step(&name, false, e.to_string()),
        }
    }

    let mut failures = Vec::new();
    let mut count = 0;
    let mut samples = Vec::new();
    for candidate in &classes.ideals {
        for n in 1..=DEMO_MAX_EXPONENT {
            count += 1;
            match refute_csfp(candidate, n) {
                Ok(t) => {
                    let right_prong =
                        (t.prong == Prong::ScaledModuleEscapes) == candidate.is_zero();
                    if !t.is_valid() || !right_prong {
                        failures.push(format!("{candidate}, n = {n}"));
                    }
                    if n == DEMO_MAX_EXPONENT {
                        let prong = if t.prong == Prong::NotFinitelyPresented {
                            "a"
                        } else {
                            "b"
                        };
                        samples.push(format!("{candidate}: prong {prong}, witness {}", t.witness));
                    }
                }
                Err(e) => failures.push(format!("{candidate}, n = {n}: {e}")),
            }
        }
    }
    step(
        "refute-csfp",
        failures.is_empty(),
        if failures.is_empty() {
            format!(
                "{count} refutations; at n = {DEMO_MAX_EXPONENT}: {}",
                samples.join("; ")
            )
        } else {
            failures.join("; ")
        },
    );

    let m = Submodule::new(&r, 1, vec![vec![two_zero()]]).expect("rank one");
    match free_scoherent_cert(&m, &s_set(), &Budget::default()) {
        Ok(cert) => {
            let report = verify_sfp(&cert);
            let kernel = StructuredIdeal::from_submodule(&cert.kernel);
            let ok = report.is_valid()
                && kernel == expected
                && cert.kernel_cert.s == two_zero()
                && cert.kernel_cert.j_gens.iter().all(|g| r.is_zero_vector(g));
            step(
                "sfp-certificate",
                ok,
                format!(
                    "kernel {kernel}, s = {}, J = <0>, verified: {}",
                    cert.kernel_cert.s,
                    report.is_valid()
                ),
            );
        }
        Err(e) => step("sfp-certificate", false, e.to_string()),
    }

    let passed = steps.iter().all(|s| s.passed);
    DemoReport {
        ring: r.to_string(),
        s_gens: vec![two_zero().to_string()],
        passed,
        steps,
    }
}
