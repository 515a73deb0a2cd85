//! Certificates for S-finiteness and the three S-presentation properties,
//! with exact verifiers.
//!
//! Modules are [`Subquotient`]s `(num + rels)/rels ⊆ Rⁿ/rels`. Every check a
//! verifier runs is a decision procedure, so a report is either verified or
//! lists the obligations that failed.

use std::fmt;

use serde::Serialize;

use crate::module::{Matrix, Submodule, Subquotient};
use crate::mult_set::MultSet;
use crate::ring::{Element, Ring, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest total degree tried when searching S.
    pub exponent: u32,
    /// Probes for sampling-based checks.
    pub samples: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            exponent: 32,
            samples: 256,
        }
    }
}

/// `s·target ⊆ ⟨jGens⟩ ⊆ target` with `s = Π sGens^sExponents`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SFiniteCert {
    pub s_gens: Vec<Element>,
    pub s: Element,
    pub s_exponents: Vec<u32>,
    pub target: Subquotient,
    pub j_gens: Vec<Vector>,
}

/// A presentation `R^k → M` by `pres_gens`, its kernel, and an S-finite
/// certificate for that kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SfpCert {
    pub module: Subquotient,
    pub pres_gens: Vec<Vector>,
    pub kernel: Submodule,
    pub kernel_cert: SFiniteCert,
}

/// A finitely presented `N = ⟨n_gens⟩ ⊆ M` with all relations `syzygies`
/// and `s·M ⊆ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsfpCert {
    pub module: Subquotient,
    pub n_gens: Vec<Vector>,
    pub syzygies: Vec<Vector>,
    pub s_gens: Vec<Element>,
    pub s: Element,
    pub s_exponents: Vec<u32>,
}

/// `0 → T₁ → F → M → T₂ → 0` with `F = Rᵃ/⟨source_rels⟩`, `f(e_i) = map`
/// column `i`, and `s·T₁ = s·T₂ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UsfpCert {
    pub module: Subquotient,
    pub source_rels: Vec<Vector>,
    pub map: Matrix,
    pub s_gens: Vec<Element>,
    pub s: Element,
    pub s_exponents: Vec<u32>,
    /// Generators of `ker(Rᵃ → M)`; with `source_rels` they lift `T₁`.
    pub t1: Vec<Vector>,
    /// For each generator `g` of M, coefficients `c` with `s·g ≡ Σ cᵢ f(eᵢ)`.
    pub t2: Vec<Vec<Element>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertKind {
    SFinite,
    Sfp,
    Csfp,
    Usfp,
}

impl fmt::Display for CertKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertKind::SFinite => "s-finite",
            CertKind::Sfp => "sfp",
            CertKind::Csfp => "csfp",
            CertKind::Usfp => "usfp",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub kind: CertKind,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    fn new(kind: CertKind) -> Self {
        VerifyReport {
            kind,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
        passed
    }

    fn absorb(&mut self, prefix: &str, other: VerifyReport) {
        for c in other.checks {
            self.checks.push(Check {
                name: format!("{prefix}/{}", c.name),
                ..c
            });
        }
    }

    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn list(vs: &[Vector]) -> String {
    let items: Vec<String> = vs.iter().map(|v| vector_to_string(v)).collect();
    items.join(", ")
}

pub fn vector_to_string(v: &[Element]) -> String {
    let items: Vec<String> = v.iter().map(Element::to_string).collect();
    format!("[{}]", items.join(", "))
}

fn mult_set(ring: &Ring, gens: &[Element]) -> Option<MultSet> {
    MultSet::degenerate(ring, gens.to_vec()).ok()
}

/// Checks that `s` is the claimed product of generators of S.
fn check_s(
    report: &mut VerifyReport,
    ring: &Ring,
    s_gens: &[Element],
    s: &Element,
    exps: &[u32],
) -> bool {
    let Some(set) = mult_set(ring, s_gens) else {
        return report.check("s-in-S", false, "S generators are not ring elements");
    };
    if exps.len() != s_gens.len() || !ring.contains(s) {
        return report.check(
            "s-in-S",
            false,
            "exponent vector does not match the generators of S",
        );
    }
    let product = set.element(exps);
    report.check(
        "s-in-S",
        &product == s,
        format!("product of generators is {product}, s = {s}"),
    )
}

fn well_formed(
    report: &mut VerifyReport,
    ring: &Ring,
    rank: usize,
    vs: &[Vector],
    what: &str,
) -> bool {
    let ok = vs
        .iter()
        .all(|v| v.len() == rank && v.iter().all(|x| ring.contains(x)));
    report.check(
        &format!("{what}-well-formed"),
        ok,
        format!("{} vectors of rank {rank}", vs.len()),
    )
}

fn span(ring: &Ring, rank: usize, gens: &[Vector]) -> Submodule {
    Submodule::from_parts(ring, rank, gens.to_vec(), vec![])
}

pub fn verify_s_finite(cert: &SFiniteCert) -> VerifyReport {
    let mut report = VerifyReport::new(CertKind::SFinite);
    let t = &cert.target;
    let (ring, n) = (t.ring(), t.ambient_rank());
    check_s(&mut report, ring, &cert.s_gens, &cert.s, &cert.s_exponents);
    if !well_formed(&mut report, ring, n, &cert.j_gens, "j") {
        return report;
    }
    let total = t.total();
    let outside: Vec<Vector> = cert
        .j_gens
        .iter()
        .filter(|g| !total.contains_vector(g))
        .cloned()
        .collect();
    report.check(
        "j-inside-target",
        outside.is_empty(),
        format!("outside target: [{}]", list(&outside)),
    );
    let j = span(ring, n, &cert.j_gens).sum(t.rels());
    let scaled = t.num().scale(&cert.s);
    let missed: Vec<Vector> = scaled
        .gens()
        .iter()
        .filter(|g| !j.contains_vector(g))
        .cloned()
        .collect();
    let dirs_ok = scaled.seq_dirs().iter().all(|u| j.contains_seq_dir(u));
    report.check(
        "s-target-inside-j",
        missed.is_empty() && dirs_ok,
        if dirs_ok {
            format!("s·target generators outside J: [{}]", list(&missed))
        } else {
            "s·target keeps a sequence direction that J misses".to_string()
        },
    );
    report
}

pub fn verify_sfp(cert: &SfpCert) -> VerifyReport {
    let mut report = VerifyReport::new(CertKind::Sfp);
    let m = &cert.module;
    let (ring, n, k) = (m.ring(), m.ambient_rank(), cert.pres_gens.len());
    if !well_formed(&mut report, ring, n, &cert.pres_gens, "presentation") {
        return report;
    }
    report.check(
        "presentation-generates",
        m.generated_by(&cert.pres_gens),
        "generators lie in M and span it",
    );
    if !report.check(
        "kernel-rank",
        cert.kernel.rank() == k,
        format!("kernel rank {} for {k} generators", cert.kernel.rank()),
    ) {
        return report;
    }
    let truth = m.relations_of(&cert.pres_gens);
    report.check(
        "kernel-sound",
        truth.contains(&cert.kernel),
        "described kernel maps to zero",
    );
    report.check(
        "kernel-complete",
        cert.kernel.contains(&truth),
        "every relation lies in the described kernel",
    );
    let target_ok = cert.kernel_cert.target.rels().is_zero()
        && cert.kernel_cert.target.ambient_rank() == k
        && cert.kernel_cert.target.num().same_as(&cert.kernel);
    report.check(
        "kernel-cert-target",
        target_ok,
        "kernel certificate is about the kernel",
    );
    report.absorb("kernel-cert", verify_s_finite(&cert.kernel_cert));
    report
}

pub fn verify_csfp(cert: &CsfpCert) -> VerifyReport {
    let mut report = VerifyReport::new(CertKind::Csfp);
    let m = &cert.module;
    let (ring, n, a) = (m.ring(), m.ambient_rank(), cert.n_gens.len());
    check_s(&mut report, ring, &cert.s_gens, &cert.s, &cert.s_exponents);
    if !well_formed(&mut report, ring, n, &cert.n_gens, "n")
        || !well_formed(&mut report, ring, a, &cert.syzygies, "syzygies")
    {
        return report;
    }
    let total = m.total();
    report.check(
        "n-inside-m",
        cert.n_gens.iter().all(|g| total.contains_vector(g)),
        "N ⊆ M",
    );
    let truth = m.relations_of(&cert.n_gens);
    let claimed = span(ring, a, &cert.syzygies);
    report.check(
        "syzygies-are-relations",
        truth.contains(&claimed),
        "each syzygy maps to zero",
    );
    report.check(
        "syzygies-complete",
        claimed.contains(&truth),
        "syzygies generate all relations among N's generators",
    );
    let n_mod = span(ring, n, &cert.n_gens).sum(m.rels());
    report.check(
        "s-m-inside-n",
        n_mod.contains(&m.num().scale(&cert.s)),
        "s·M ⊆ N",
    );
    report
}

pub fn verify_usfp(cert: &UsfpCert) -> VerifyReport {
    let mut report = VerifyReport::new(CertKind::Usfp);
    let m = &cert.module;
    let (ring, n, a) = (m.ring(), m.ambient_rank(), cert.map.cols);
    check_s(&mut report, ring, &cert.s_gens, &cert.s, &cert.s_exponents);
    if !report.check(
        "map-shape",
        cert.map.rows == n,
        format!("{}×{} map into rank {n}", cert.map.rows, a),
    ) || !well_formed(&mut report, ring, a, &cert.source_rels, "source-relations")
        || !well_formed(&mut report, ring, a, &cert.t1, "t1")
    {
        return report;
    }
    let f_rels = span(ring, a, &cert.source_rels);
    let images: Vec<Vector> = (0..a)
        .map(|i| cert.map.apply(ring, &ring.unit_vector(a, i)))
        .collect();
    let total = m.total();
    let defined = images.iter().all(|v| total.contains_vector(v))
        && m.rels().contains(&f_rels.map(&cert.map));
    report.check(
        "map-well-defined",
        defined,
        "F's generators land in M and its relations in M's relations",
    );
    let kernel = Submodule::full(ring, a).preimage(&cert.map, m.rels());
    let claimed = span(ring, a, &cert.t1).sum(&f_rels);
    report.check(
        "t1-generators",
        kernel.contains(&claimed) && claimed.contains(&kernel),
        "t1 with F's relations spans ker(F → M)",
    );
    report.check(
        "s-t1-zero",
        f_rels.contains(&kernel.scale(&cert.s)),
        "s·T₁ = 0",
    );
    let gens = m.num().gens();
    let mut witnesses_ok = cert.t2.len() == gens.len();
    if witnesses_ok {
        for (g, c) in gens.iter().zip(&cert.t2) {
            if c.len() != a || !c.iter().all(|x| ring.contains(x)) {
                witnesses_ok = false;
                break;
            }
            let diff = ring.vec_add(
                &ring.vec_scale(&cert.s, g),
                &ring.vec_neg(&ring.combine(c, &images, n)),
            );
            if !m.rels().contains_vector(&diff) {
                witnesses_ok = false;
                break;
            }
        }
    }
    report.check(
        "t2-witnesses",
        witnesses_ok,
        "s·g recombined from the image for every generator g of M",
    );
    let image = span(ring, n, &images).sum(m.rels());
    let dirs_ok = m
        .num()
        .scale(&cert.s)
        .seq_dirs()
        .iter()
        .all(|u| image.contains_seq_dir(u));
    report.check("s-t2-zero", witnesses_ok && dirs_ok, "s·T₂ = 0");
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inconclusive {
    pub reason: String,
}

impl fmt::Display for Inconclusive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "inconclusive: {}", self.reason)
    }
}

impl std::error::Error for Inconclusive {}

/// A certificate that `target` is S-finite: `s = 1` for finitely generated
/// targets, otherwise the first `s ∈ S` (by degree) whose multiple of the
/// target is finitely generated modulo its relations.
pub fn find_s_finite(
    target: &Subquotient,
    set: &MultSet,
    budget: &Budget,
) -> Result<SFiniteCert, Inconclusive> {
    assert_eq!(
        target.ring(),
        set.ring(),
        "target and S over different rings"
    );
    let ring = target.ring();
    let n = target.ambient_rank();
    let num = target.num();
    let make = |exps: Vec<u32>, s: Element, j: Vec<Vector>| SFiniteCert {
        s_gens: set.gens().to_vec(),
        s,
        s_exponents: exps,
        target: target.clone(),
        j_gens: j,
    };
    if num.is_finitely_generated() {
        return Ok(make(
            vec![0; set.gens().len()],
            ring.one(),
            num.gens().to_vec(),
        ));
    }
    for (exps, s) in set.elements_up_to(budget.exponent) {
        let scaled = num.scale(&s);
        let j = span(ring, n, scaled.gens()).sum(target.rels());
        if scaled.seq_dirs().iter().all(|u| j.contains_seq_dir(u)) {
            let j = scaled
                .gens()
                .iter()
                .filter(|g| !ring.is_zero_vector(g))
                .cloned()
                .collect();
            return Ok(make(exps, s, j));
        }
    }
    Err(Inconclusive {
        reason: format!(
            "no s of degree ≤ {} makes the target finitely generated",
            budget.exponent
        ),
    })
}
