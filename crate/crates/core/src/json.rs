//! JSON forms of certificates and ideals. Field order is fixed by the
//! structs below, so equal values always serialize to equal bytes.
//!
//! Every certificate object starts with `kind`, `ring`, `s`, `sExponents`,
//! `target`, then the kind-specific fields. Elements, vectors and ideals are
//! strings in the text grammar of [`crate::parse`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cert::{
    verify_csfp, verify_s_finite, verify_sfp, verify_usfp, CsfpCert, SFiniteCert, SfpCert,
    UsfpCert, VerifyReport,
};
use crate::ideal::{F2Part, StructuredIdeal};
use crate::linalg::f2::F2Vec;
use crate::module::{Matrix, ModuleError, Submodule, Subquotient};
use crate::parse::{parse_element, parse_ring, parse_vector, ParseError};
use crate::ring::{Element, Ring, Vector};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("in {field}: {source}")]
    Literal {
        field: &'static str,
        source: ParseError,
    },
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("{0}")]
    Shape(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    SFinite(SFiniteCert),
    Sfp(SfpCert),
    Csfp(CsfpCert),
    Usfp(UsfpCert),
}

impl Certificate {
    pub fn verify(&self) -> VerifyReport {
        match self {
            Certificate::SFinite(c) => verify_s_finite(c),
            Certificate::Sfp(c) => verify_sfp(c),
            Certificate::Csfp(c) => verify_csfp(c),
            Certificate::Usfp(c) => verify_usfp(c),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct SubmoduleJson {
    gens: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    seq_dirs: Vec<Vec<u8>>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct ModuleJson {
    rank: usize,
    num: SubmoduleJson,
    rels: SubmoduleJson,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct CertJson {
    kind: String,
    ring: String,
    s: String,
    s_exponents: Vec<u32>,
    target: ModuleJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    j_gens: Option<Vec<String>>,
    s_gens: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pres_gens: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kernel: Option<SubmoduleJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kernel_target: Option<ModuleJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n_gens: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    syzygies: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source_rels: Option<Vec<String>>,
    /// Rows of the map, each a vector literal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    map: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t1: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t2: Option<Vec<String>>,
}

fn strings(vs: &[Vector]) -> Vec<String> {
    vs.iter()
        .map(|v| crate::cert::vector_to_string(v))
        .collect()
}

fn bits(u: &F2Vec) -> Vec<u8> {
    u.iter().map(|&b| u8::from(b)).collect()
}

fn submodule_json(m: &Submodule) -> SubmoduleJson {
    SubmoduleJson {
        gens: strings(m.gens()),
        seq_dirs: m.seq_dirs().iter().map(bits).collect(),
    }
}

fn module_json(m: &Subquotient) -> ModuleJson {
    ModuleJson {
        rank: m.ambient_rank(),
        num: submodule_json(m.num()),
        rels: submodule_json(m.rels()),
    }
}

fn base(
    kind: &str,
    ring: &Ring,
    s: &Element,
    exps: &[u32],
    s_gens: &[Element],
    target: &Subquotient,
) -> CertJson {
    CertJson {
        kind: kind.to_string(),
        ring: ring.to_string(),
        s: s.to_string(),
        s_exponents: exps.to_vec(),
        target: module_json(target),
        j_gens: None,
        s_gens: s_gens.iter().map(Element::to_string).collect(),
        pres_gens: None,
        kernel: None,
        kernel_target: None,
        n_gens: None,
        syzygies: None,
        source_rels: None,
        map: None,
        t1: None,
        t2: None,
    }
}

fn to_wire(cert: &Certificate) -> CertJson {
    match cert {
        Certificate::SFinite(c) => CertJson {
            j_gens: Some(strings(&c.j_gens)),
            ..base(
                "s-finite",
                c.target.ring(),
                &c.s,
                &c.s_exponents,
                &c.s_gens,
                &c.target,
            )
        },
        Certificate::Sfp(c) => {
            let k = &c.kernel_cert;
            CertJson {
                j_gens: Some(strings(&k.j_gens)),
                pres_gens: Some(strings(&c.pres_gens)),
                kernel: Some(submodule_json(&c.kernel)),
                kernel_target: Some(module_json(&k.target)),
                ..base(
                    "sfp",
                    c.module.ring(),
                    &k.s,
                    &k.s_exponents,
                    &k.s_gens,
                    &c.module,
                )
            }
        }
        Certificate::Csfp(c) => CertJson {
            n_gens: Some(strings(&c.n_gens)),
            syzygies: Some(strings(&c.syzygies)),
            ..base(
                "csfp",
                c.module.ring(),
                &c.s,
                &c.s_exponents,
                &c.s_gens,
                &c.module,
            )
        },
        Certificate::Usfp(c) => CertJson {
            source_rels: Some(strings(&c.source_rels)),
            map: Some(strings(&c.map.entries)),
            t1: Some(strings(&c.t1)),
            t2: Some(strings(&c.t2)),
            ..base(
                "usfp",
                c.module.ring(),
                &c.s,
                &c.s_exponents,
                &c.s_gens,
                &c.module,
            )
        },
    }
}

pub fn certificate_to_json(cert: &Certificate) -> String {
    serde_json::to_string_pretty(&to_wire(cert)).expect("certificate serializes")
}

struct Reader {
    ring: Ring,
}

impl Reader {
    fn element(&self, field: &'static str, s: &str) -> Result<Element, JsonError> {
        parse_element(s, &self.ring).map_err(|source| JsonError::Literal { field, source })
    }

    fn vectors(&self, field: &'static str, vs: &[String]) -> Result<Vec<Vector>, JsonError> {
        vs.iter()
            .map(|v| {
                parse_vector(v, &self.ring).map_err(|source| JsonError::Literal { field, source })
            })
            .collect()
    }

    fn submodule(
        &self,
        field: &'static str,
        rank: usize,
        m: &SubmoduleJson,
    ) -> Result<Submodule, JsonError> {
        let gens = self.vectors(field, &m.gens)?;
        let dirs = m
            .seq_dirs
            .iter()
            .map(|u| u.iter().map(|&b| b != 0).collect())
            .collect();
        Ok(Submodule::with_seq_dirs(&self.ring, rank, gens, dirs)?)
    }

    fn module(&self, field: &'static str, m: &ModuleJson) -> Result<Subquotient, JsonError> {
        let num = self.submodule(field, m.rank, &m.num)?;
        let rels = self.submodule(field, m.rank, &m.rels)?;
        Ok(Subquotient::new(num, rels)?)
    }
}

fn required<T>(v: Option<T>, field: &str, kind: &str) -> Result<T, JsonError> {
    v.ok_or_else(|| JsonError::Shape(format!("a {kind} certificate needs the field {field}")))
}

pub fn certificate_from_json(text: &str) -> Result<Certificate, JsonError> {
    let w: CertJson = serde_json::from_str(text)?;
    let ring = parse_ring(&w.ring).map_err(|source| JsonError::Literal {
        field: "ring",
        source,
    })?;
    let rd = Reader { ring };
    let s = rd.element("s", &w.s)?;
    let s_gens = w
        .s_gens
        .iter()
        .map(|g| rd.element("sGens", g))
        .collect::<Result<Vec<_>, _>>()?;
    let target = rd.module("target", &w.target)?;
    let kind = w.kind.as_str();
    match kind {
        "s-finite" => Ok(Certificate::SFinite(SFiniteCert {
            s_gens,
            s,
            s_exponents: w.s_exponents,
            j_gens: rd.vectors("jGens", &required(w.j_gens, "jGens", kind)?)?,
            target,
        })),
        "sfp" => {
            let pres_gens = rd.vectors("presGens", &required(w.pres_gens, "presGens", kind)?)?;
            let kernel = rd.submodule(
                "kernel",
                pres_gens.len(),
                &required(w.kernel, "kernel", kind)?,
            )?;
            let kernel_target = rd.module(
                "kernelTarget",
                &required(w.kernel_target, "kernelTarget", kind)?,
            )?;
            let kernel_cert = SFiniteCert {
                s_gens,
                s,
                s_exponents: w.s_exponents,
                target: kernel_target,
                j_gens: rd.vectors("jGens", &required(w.j_gens, "jGens", kind)?)?,
            };
            Ok(Certificate::Sfp(SfpCert {
                module: target,
                pres_gens,
                kernel,
                kernel_cert,
            }))
        }
        "csfp" => Ok(Certificate::Csfp(CsfpCert {
            module: target,
            n_gens: rd.vectors("nGens", &required(w.n_gens, "nGens", kind)?)?,
            syzygies: rd.vectors("syzygies", &required(w.syzygies, "syzygies", kind)?)?,
            s_gens,
            s,
            s_exponents: w.s_exponents,
        })),
        "usfp" => {
            let rows = rd.vectors("map", &required(w.map, "map", kind)?)?;
            let cols = rows.first().map_or(0, Vec::len);
            if rows.iter().any(|r| r.len() != cols) {
                return Err(JsonError::Shape("map rows have different lengths".into()));
            }
            Ok(Certificate::Usfp(UsfpCert {
                source_rels: rd
                    .vectors("sourceRels", &required(w.source_rels, "sourceRels", kind)?)?,
                map: Matrix::new(rows.len(), cols, rows),
                t1: rd.vectors("t1", &required(w.t1, "t1", kind)?)?,
                t2: rd.vectors("t2", &required(w.t2, "t2", kind)?)?,
                module: target,
                s_gens,
                s,
                s_exponents: w.s_exponents,
            }))
        }
        other => Err(JsonError::Shape(format!(
            "unknown certificate kind {other:?}"
        ))),
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum F2PartJson {
    Full(&'static str),
    Span(Vec<Vec<u64>>),
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SplitJson {
    z_part: String,
    f2_part: F2PartJson,
}

/// Serializes finitely generated ideals as their literal and `Split` as
/// `{"zPart": "...", "f2Part": "full" | [[supports]]}`.
pub struct IdealJson<'a>(pub &'a StructuredIdeal);

impl Serialize for IdealJson<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            StructuredIdeal::Split { z_part, f2_part } => {
                let f2_part = match f2_part {
                    F2Part::Full => F2PartJson::Full("full"),
                    F2Part::SpanOf(vs) => {
                        F2PartJson::Span(vs.iter().map(|v| v.indices().collect()).collect())
                    }
                };
                SplitJson {
                    z_part: z_part.to_string(),
                    f2_part,
                }
                .serialize(s)
            }
            other => s.serialize_str(&other.to_string()),
        }
    }
}

pub fn ideal_to_json(ideal: &StructuredIdeal) -> String {
    serde_json::to_string(&IdealJson(ideal)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::{find_s_finite, Budget};
    use crate::engine::free_scoherent_cert;
    use crate::mult_set::MultSet;

    #[test]
    fn round_trips() {
        let r = Ring::IdealizationZF2;
        let set = MultSet::new(&r, vec![Element::pair(2, [])]).unwrap();
        let m = Submodule::new(&r, 1, vec![vec![Element::pair(2, [])]]).unwrap();
        let sfp = Certificate::Sfp(free_scoherent_cert(&m, &set, &Budget::default()).unwrap());
        let text = certificate_to_json(&sfp);
        assert_eq!(certificate_from_json(&text).unwrap(), sfp);
        let target = Subquotient::submodule(
            Submodule::with_seq_dirs(&r, 1, vec![], vec![vec![true]]).unwrap(),
        );
        let sf = Certificate::SFinite(find_s_finite(&target, &set, &Budget::default()).unwrap());
        let text = certificate_to_json(&sf);
        assert!(text.starts_with("{\n  \"kind\": \"s-finite\",\n  \"ring\": \"idealization\""));
        assert_eq!(certificate_from_json(&text).unwrap(), sf);
    }

    #[test]
    fn split_json() {
        let r = Ring::IdealizationZF2;
        let i = StructuredIdeal::split(&r, 0.into(), F2Part::Full).unwrap();
        assert_eq!(ideal_to_json(&i), r#"{"zPart":"0","f2Part":"full"}"#);
    }

    #[test]
    fn unknown_kind() {
        let text = r#"{"kind":"x","ring":"z","s":"1","sExponents":[],"target":{"rank":1,"num":{"gens":[]},"rels":{"gens":[]}},"sGens":[]}"#;
        assert!(matches!(
            certificate_from_json(text),
            Err(JsonError::Shape(_))
        ));
    }
}
