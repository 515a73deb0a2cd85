//! The `scoh` command line. [`run`] takes argv and output streams and
//! returns the exit code, so tests can drive it without a subprocess.
//!
//! Exit codes: 0 success (including a successful refutation), 1 a failed
//! verification, audit or refutation, 2 a usage or literal error, 3 a budget
//! ran out before an answer.

use std::io::{self, Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use scoherent::cert::{find_s_finite, Budget};
use scoherent::engine::{
    chase_audit, formula_audit, free_scoherent_cert, s_noetherian_sample_check, AuditConfig,
    AuditReport, EngineError, FormulaAuditReport,
};
use scoherent::ideal::{self, Membership, StructuredIdeal};
use scoherent::json::{
    certificate_from_json, certificate_to_json, ideal_to_json, Certificate, JsonError,
};
use scoherent::lab::{self, DemoReport};
use scoherent::module::Subquotient;
use scoherent::mult_set::MultSet;
use scoherent::parse::{parse_element, parse_ideal, parse_ring, ParseError};
use scoherent::ring::{Element, Ring};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "scoh",
    version,
    about = "Ideal arithmetic and S-finiteness certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ideal operations on literals such as `<4, 6>` or `(3; {1,4})`.
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// Find or verify certificates (JSON).
    #[command(subcommand)]
    Cert(CertCmd),
    /// Certify colons, annihilators and intersections on seeded inputs.
    #[command(subcommand)]
    Chase(ChaseCmd),
    /// Check that (2,0)·I is principal for sampled ideals of the idealization.
    #[command(subcommand)]
    Noetherian(NoetherianCmd),
    /// The idealization example, end to end.
    #[command(subcommand)]
    Demo(DemoCmd),
    /// Compare the submodule colon with the coordinatewise formula.
    #[command(subcommand)]
    Formula(FormulaCmd),
    /// Counterexamples to finite presentations over the idealization.
    #[command(subcommand)]
    Refute(RefuteCmd),
    /// Demo, chase audits and formula audit in one report.
    Report {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct RingArg {
    /// `z`, `zmod:N` or `idealization`.
    #[arg(long, default_value = "z")]
    ring: String,
}

#[derive(Subcommand, Debug)]
enum IdealCmd {
    Member {
        #[command(flatten)]
        ring: RingArg,
        ideal: String,
        element: String,
    },
    Colon {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        json: bool,
        ideal: String,
        element: String,
    },
    Intersect {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        json: bool,
        a: String,
        b: String,
    },
    Sum {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        json: bool,
        a: String,
        b: String,
    },
    /// Annihilator of a vector given coordinate by coordinate.
    Ann {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        json: bool,
        #[arg(required = true)]
        coords: Vec<String>,
    },
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[command(flatten)]
    ring: RingArg,
    /// A generator of S; repeat for several. None means S = {1}.
    #[arg(long = "sset")]
    sset: Vec<String>,
    /// Largest total exponent tried when searching S.
    #[arg(long, default_value_t = Budget::default().exponent)]
    budget: u32,
    #[arg(long, default_value_t = Budget::default().samples)]
    samples: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CertKindArg {
    SFinite,
    Sfp,
}

#[derive(Subcommand, Debug)]
enum CertCmd {
    /// Certificate for an ideal: S-finite, or S-finitely presented.
    Find {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value_t = CertKindArg::SFinite)]
        kind: CertKindArg,
        ideal: String,
    },
    /// Verify a certificate file (`-` reads stdin).
    Verify {
        file: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Subcommand, Debug)]
enum ChaseCmd {
    Audit {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Enumerate every ideal and element of ℤ/n instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        /// Run trials on one thread.
        #[arg(long)]
        serial: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
enum NoetherianCmd {
    Check {
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        serial: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
enum DemoCmd {
    Example {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
enum FormulaCmd {
    Audit {
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
enum RefuteCmd {
    /// `<(2m; {})>` has no finite syzygy list; refutes the given one.
    Fp {
        #[arg(long)]
        m: u64,
        /// Claimed relations on (2m; {}), e.g. `(0; {1,3})`.
        claimed: Vec<String>,
    },
    /// A candidate N inside <(2; {})> fails as a c-S witness for s = (2,0)^n.
    Csfp {
        #[arg(long)]
        n: u32,
        candidate: String,
    },
}

/// Failure modes that map to exit codes.
enum Failure {
    Usage(String),
    Failed(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(format!("parse error at {e}"))
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Failed(format!("i/o error: {e}"))
    }
}

fn literal<T>(
    what: &str,
    text: &str,
    f: impl FnOnce(&str) -> Result<T, ParseError>,
) -> Result<T, Failure> {
    f(text).map_err(|e| Failure::Usage(format!("cannot parse {what} {text:?}: {e}")))
}

fn ring_of(arg: &RingArg) -> Result<Ring, Failure> {
    literal("ring", &arg.ring, parse_ring)
}

fn element(ring: &Ring, text: &str) -> Result<Element, Failure> {
    literal("element", text, |t| parse_element(t, ring))
}

fn ideal_lit(ring: &Ring, text: &str) -> Result<StructuredIdeal, Failure> {
    literal("ideal", text, |t| parse_ideal(t, ring))
}

fn mult_set(ring: &Ring, gens: &[String]) -> Result<MultSet, Failure> {
    let gens = gens
        .iter()
        .map(|g| element(ring, g))
        .collect::<Result<Vec<_>, _>>()?;
    MultSet::degenerate(ring, gens).map_err(|e| Failure::Usage(e.to_string()))
}

fn budget(search: &SearchArgs) -> Budget {
    Budget {
        exponent: search.budget,
        samples: search.samples,
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn print_ideal(out: &mut dyn Write, i: &StructuredIdeal, json: bool) -> io::Result<()> {
    if json {
        writeln!(out, "{}", ideal_to_json(i))
    } else {
        writeln!(out, "{i}")
    }
}

fn audit_code(report: &AuditReport) -> i32 {
    let failed: usize = report.conditions.iter().map(|r| r.failed).sum();
    let inconclusive: usize = report.conditions.iter().map(|r| r.inconclusive).sum();
    if failed > 0 {
        EXIT_FAILED
    } else if inconclusive > 0 {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    }
}

fn emit_audit(out: &mut dyn Write, report: &AuditReport, format: Format) -> Result<i32, Failure> {
    match format {
        Format::Json => write_json(out, report)?,
        Format::Md => write!(out, "{}", report.to_markdown())?,
    }
    Ok(audit_code(report))
}

fn ideal_cmd(cmd: IdealCmd, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        IdealCmd::Member {
            ring,
            ideal,
            element: x,
        } => {
            let r = ring_of(&ring)?;
            let (i, x) = (ideal_lit(&r, &ideal)?, element(&r, &x)?);
            match ideal::member(&i, &x) {
                Membership::Witness(sol) => {
                    let coeffs: Vec<String> = sol.coeffs.iter().map(Element::to_string).collect();
                    writeln!(out, "member, coefficients [{}]", coeffs.join(", "))?;
                }
                Membership::Member => writeln!(out, "member")?,
                Membership::NotMember => writeln!(out, "not a member")?,
            }
        }
        IdealCmd::Colon {
            ring,
            json,
            ideal,
            element: x,
        } => {
            let r = ring_of(&ring)?;
            print_ideal(
                out,
                &ideal::colon(&ideal_lit(&r, &ideal)?, &element(&r, &x)?),
                json,
            )?;
        }
        IdealCmd::Intersect { ring, json, a, b } => {
            let r = ring_of(&ring)?;
            print_ideal(
                out,
                &ideal::intersect(&ideal_lit(&r, &a)?, &ideal_lit(&r, &b)?),
                json,
            )?;
        }
        IdealCmd::Sum { ring, json, a, b } => {
            let r = ring_of(&ring)?;
            print_ideal(
                out,
                &ideal::sum(&ideal_lit(&r, &a)?, &ideal_lit(&r, &b)?),
                json,
            )?;
        }
        IdealCmd::Ann { ring, json, coords } => {
            let r = ring_of(&ring)?;
            let x = coords
                .iter()
                .map(|c| element(&r, c))
                .collect::<Result<Vec<_>, _>>()?;
            print_ideal(out, &ideal::annihilator(&r, &x), json)?;
        }
    }
    Ok(EXIT_OK)
}

fn read_input(file: &str) -> Result<String, Failure> {
    let mut text = String::new();
    if file == "-" {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(file)
            .map_err(|e| Failure::Usage(format!("cannot read {file}: {e}")))?;
    }
    Ok(text)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct VerifyJson<'a> {
    kind: String,
    valid: bool,
    checks: &'a [scoherent::cert::Check],
}

fn cert_cmd(cmd: CertCmd, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        CertCmd::Find {
            search,
            kind,
            ideal,
        } => {
            let r = ring_of(&search.ring)?;
            let set = mult_set(&r, &search.sset)?;
            let i = ideal_lit(&r, &ideal)?;
            let cert = match kind {
                CertKindArg::SFinite => find_s_finite(
                    &Subquotient::submodule(i.to_submodule()),
                    &set,
                    &budget(&search),
                )
                .map(Certificate::SFinite)
                .map_err(EngineError::from),
                CertKindArg::Sfp => {
                    if !i.is_finitely_generated() {
                        return Err(Failure::Usage(format!("{i} is not finitely generated")));
                    }
                    free_scoherent_cert(&i.to_submodule(), &set, &budget(&search))
                        .map(Certificate::Sfp)
                }
            };
            match cert {
                Ok(c) => {
                    writeln!(out, "{}", certificate_to_json(&c))?;
                    Ok(EXIT_OK)
                }
                Err(EngineError::Inconclusive(e)) => {
                    writeln!(err, "inconclusive: {}", e.reason)?;
                    Ok(EXIT_INCONCLUSIVE)
                }
                Err(e) => Err(Failure::Failed(e.to_string())),
            }
        }
        CertCmd::Verify { file, format } => {
            let text = read_input(&file)?;
            let cert = certificate_from_json(&text).map_err(|e| match e {
                JsonError::Syntax(_) | JsonError::Literal { .. } | JsonError::Shape(_) => {
                    Failure::Usage(format!("{file}: {e}"))
                }
                JsonError::Module(_) => Failure::Usage(format!("{file}: {e}")),
            })?;
            let report = cert.verify();
            match format {
                Format::Json => write_json(
                    out,
                    &VerifyJson {
                        kind: report.kind.to_string(),
                        valid: report.is_valid(),
                        checks: &report.checks,
                    },
                )?,
                Format::Md => {
                    writeln!(
                        out,
                        "{} certificate: {}\n",
                        report.kind,
                        if report.is_valid() {
                            "verified"
                        } else {
                            "REJECTED"
                        }
                    )?;
                    writeln!(out, "| check | result | detail |\n|---|---|---|")?;
                    for c in &report.checks {
                        writeln!(
                            out,
                            "| {} | {} | {} |",
                            c.name,
                            if c.passed { "pass" } else { "FAIL" },
                            c.detail
                        )?;
                    }
                }
            }
            Ok(if report.is_valid() {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct FullReport {
    seed: u64,
    demo: DemoReport,
    chase: Vec<AuditReport>,
    formula: FormulaAuditReport,
}

fn full_report(seed: u64) -> FullReport {
    let z = Ring::Integers;
    let z_set = MultSet::new(&z, vec![z.from_int(2)]).expect("nonzero");
    let z_cfg = AuditConfig {
        trials: 1000,
        seed,
        ..AuditConfig::default()
    };
    let idz_cfg = AuditConfig {
        trials: 200,
        seed,
        ..AuditConfig::default()
    };
    FullReport {
        seed,
        demo: lab::example_demo(),
        chase: vec![
            chase_audit(&z, &z_set, &z_cfg),
            chase_audit(&Ring::IdealizationZF2, &lab::s_set(), &idz_cfg),
        ],
        formula: formula_audit(500, seed),
    }
}

fn run_command(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Ideal(c) => ideal_cmd(c, out),
        Command::Cert(c) => cert_cmd(c, out, err),
        Command::Chase(ChaseCmd::Audit {
            search,
            trials,
            seed,
            exhaustive,
            serial,
            format,
        }) => {
            let r = ring_of(&search.ring)?;
            let set = mult_set(&r, &search.sset)?;
            let cfg = AuditConfig {
                trials,
                seed,
                budget: budget(&search),
                parallel: !serial,
                exhaustive,
            };
            emit_audit(out, &chase_audit(&r, &set, &cfg), format)
        }
        Command::Noetherian(NoetherianCmd::Check {
            trials,
            seed,
            serial,
            format,
        }) => emit_audit(
            out,
            &s_noetherian_sample_check(trials, seed, !serial),
            format,
        ),
        Command::Demo(DemoCmd::Example { format }) => {
            let report = lab::example_demo();
            match format {
                Format::Json => write_json(out, &report)?,
                Format::Md => write!(out, "{}", report.to_markdown())?,
            }
            Ok(if report.passed { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Formula(FormulaCmd::Audit {
            trials,
            seed,
            format,
        }) => {
            let report = formula_audit(trials, seed);
            match format {
                Format::Json => write_json(out, &report)?,
                Format::Md => write!(out, "{}", report.to_markdown())?,
            }
            Ok(if report.always_contained() {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
        Command::Refute(RefuteCmd::Fp { m, claimed }) => {
            let r = Ring::IdealizationZF2;
            let claimed = claimed
                .iter()
                .map(|c| element(&r, c))
                .collect::<Result<Vec<_>, _>>()?;
            let trace = lab::refute_finitely_presented(m, &claimed)
                .map_err(|e| Failure::Failed(e.to_string()))?;
            write_json(out, &trace)?;
            Ok(if trace.is_valid() {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
        Command::Refute(RefuteCmd::Csfp { n, candidate }) => {
            let c = ideal_lit(&Ring::IdealizationZF2, &candidate)?;
            let trace = lab::refute_csfp(&c, n).map_err(|e| Failure::Failed(e.to_string()))?;
            write_json(out, &trace)?;
            Ok(if trace.is_valid() {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
        Command::Report { format, seed } => {
            let report = full_report(seed);
            match format {
                Format::Json => write_json(out, &report)?,
                Format::Md => {
                    writeln!(out, "# Example\n\n{}", report.demo.to_markdown())?;
                    for c in &report.chase {
                        writeln!(out, "# Chase audit\n\n{}", c.to_markdown())?;
                    }
                    writeln!(out, "# Colon formula\n\n{}", report.formula.to_markdown())?;
                }
            }
            let ok = report.demo.passed
                && report.chase.iter().all(AuditReport::all_certified)
                && report.formula.always_contained();
            Ok(if ok { EXIT_OK } else { EXIT_FAILED })
        }
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match run_command(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Failed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILED
        }
    }
}
