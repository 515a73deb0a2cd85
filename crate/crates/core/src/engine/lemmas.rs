//! Certificate transformers along short exact sequences and intersections.

use crate::cert::{find_s_finite, Budget, SFiniteCert, SfpCert};
use crate::ideal::{self, StructuredIdeal};
use crate::module::{Submodule, Subquotient};
use crate::mult_set::MultSet;
use crate::ring::{Element, Ring, Vector};

use super::{EngineError, ExtensionData};

fn add_exponents(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn same_s_gens(a: &SFiniteCert, b: &SFiniteCert) -> Result<(), EngineError> {
    if a.s_gens == b.s_gens {
        Ok(())
    } else {
        Err(EngineError::Mismatch(
            "certificates over different multiplicative sets",
        ))
    }
}

fn kernel_cert(
    module: &Subquotient,
    pres: Vec<Vector>,
    base: &SFiniteCert,
    other: &SFiniteCert,
    j: Vec<Vector>,
) -> SfpCert {
    let ring = module.ring();
    let kernel = module.relations_of(&pres);
    let j = j.into_iter().filter(|v| !ring.is_zero_vector(v)).collect();
    SfpCert {
        module: module.clone(),
        pres_gens: pres,
        kernel_cert: SFiniteCert {
            s_gens: base.s_gens.clone(),
            s: ring.mul(&base.s, &other.s),
            s_exponents: add_exponents(&base.s_exponents, &other.s_exponents),
            target: Subquotient::submodule(kernel.clone()),
            j_gens: j,
        },
        kernel,
    }
}

/// M is S-finitely presented when M' and M'' are: present M by the images of
/// M'-generators followed by lifts of M''-generators.
pub fn compose_sfp(
    ext: &ExtensionData,
    cert_sub: &SfpCert,
    cert_quot: &SfpCert,
) -> Result<SfpCert, EngineError> {
    if !cert_sub.module.same_as(ext.sub()) || !cert_quot.module.same_as(ext.quot()) {
        return Err(EngineError::Mismatch(
            "certificates are not about the ends of the sequence",
        ));
    }
    same_s_gens(&cert_sub.kernel_cert, &cert_quot.kernel_cert)?;
    let ring = ext.mid().ring();
    let n = ext.mid().ambient_rank();
    let images: Vec<Vector> = cert_sub
        .pres_gens
        .iter()
        .map(|p| ext.inj().apply(ring, p))
        .collect();
    let lifts: Vec<Vector> = cert_quot.pres_gens.iter().map(|p| ext.lift(p)).collect();
    let (k1, k2) = (images.len(), lifts.len());
    let mut j: Vec<Vector> = cert_sub
        .kernel_cert
        .j_gens
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.extend(ring.zero_vector(k2));
            w
        })
        .collect();
    for c in &cert_quot.kernel_cert.j_gens {
        // Σ c_t l_t maps to zero in M'', so it comes from M'.
        let v = ring.combine(c, &lifts, n);
        let d = ext.mid().express(&images, &v).ok_or(EngineError::Internal(
            "relation lift outside the image of M'",
        ))?;
        let mut w = ring.vec_neg(&d);
        w.extend(c.iter().cloned());
        j.push(w);
    }
    debug_assert!(j.iter().all(|v| v.len() == k1 + k2));
    let mut pres = images;
    pres.extend(lifts);
    Ok(kernel_cert(
        ext.mid(),
        pres,
        &cert_sub.kernel_cert,
        &cert_quot.kernel_cert,
        j,
    ))
}

/// M'' is S-finitely presented when M' is S-finite and M is S-finitely
/// presented: push M's presentation forward and add the M'-relations.
pub fn quotient_sfp(
    ext: &ExtensionData,
    sub_cert: &SFiniteCert,
    cert_mid: &SfpCert,
) -> Result<SfpCert, EngineError> {
    if !sub_cert.target.same_as(ext.sub()) || !cert_mid.module.same_as(ext.mid()) {
        return Err(EngineError::Mismatch(
            "certificates are not about the sequence",
        ));
    }
    same_s_gens(sub_cert, &cert_mid.kernel_cert)?;
    let ring = ext.mid().ring();
    let pres: Vec<Vector> = cert_mid
        .pres_gens
        .iter()
        .map(|p| ext.surj().apply(ring, p))
        .collect();
    let mut j = cert_mid.kernel_cert.j_gens.clone();
    for g in &sub_cert.j_gens {
        let v = ext.inj().apply(ring, g);
        let d = ext
            .mid()
            .express(&cert_mid.pres_gens, &v)
            .ok_or(EngineError::Internal(
                "image of M' not expressible in M's presentation",
            ))?;
        j.push(d);
    }
    Ok(kernel_cert(
        ext.quot(),
        pres,
        &cert_mid.kernel_cert,
        sub_cert,
        j,
    ))
}

/// M' is S-finite when M'' is S-finitely presented and M is S-finite.
pub fn kernel_s_finite(
    ext: &ExtensionData,
    cert_quot: &SfpCert,
    mid_cert: &SFiniteCert,
) -> Result<SFiniteCert, EngineError> {
    if !cert_quot.module.same_as(ext.quot()) || !mid_cert.target.same_as(ext.mid()) {
        return Err(EngineError::Mismatch(
            "certificates are not about the sequence",
        ));
    }
    same_s_gens(&cert_quot.kernel_cert, mid_cert)?;
    let ring = ext.mid().ring();
    let n = ext.mid().ambient_rank();
    let pres = &cert_quot.pres_gens;
    let lifts: Vec<Vector> = pres.iter().map(|p| ext.lift(p)).collect();
    let mut j = Vec::new();
    for g in &mid_cert.j_gens {
        let image = ext.surj().apply(ring, g);
        let a = ext
            .quot()
            .express(pres, &image)
            .ok_or(EngineError::Internal("image not in M''"))?;
        let rest = ring.vec_add(g, &ring.vec_neg(&ring.combine(&a, &lifts, n)));
        j.push(ext.pull_back(&rest));
    }
    for c in &cert_quot.kernel_cert.j_gens {
        j.push(ext.pull_back(&ring.combine(c, &lifts, n)));
    }
    j.retain(|v| !ring.is_zero_vector(v));
    let q = &cert_quot.kernel_cert;
    Ok(SFiniteCert {
        s_gens: mid_cert.s_gens.clone(),
        s: ring.mul(&q.s, &mid_cert.s),
        s_exponents: add_exponents(&q.s_exponents, &mid_cert.s_exponents),
        target: ext.sub().clone(),
        j_gens: j,
    })
}

/// A certificate for a finite intersection, with the factors whose product
/// is its `s`.
#[derive(Clone, Debug)]
pub struct CapComposition {
    pub cert: SFiniteCert,
    pub factors: Vec<Element>,
}

fn ideal_of(cert: &SFiniteCert) -> Result<StructuredIdeal, EngineError> {
    let t = &cert.target;
    if t.ambient_rank() != 1 || !t.rels().is_zero() {
        return Err(EngineError::Mismatch("intersections need ideal targets"));
    }
    Ok(StructuredIdeal::from_submodule(t.num()))
}

fn span_ideal(ring: &Ring, j: &[Vector]) -> StructuredIdeal {
    StructuredIdeal::from_submodule(
        &Submodule::new(ring, 1, j.to_vec()).expect("rank-one generators"),
    )
}

/// `s = s₁·s₂·e` and `J = J₁ ∩ J₂` (or its own certificate when the
/// intersection is not finitely generated, contributing `e`).
pub fn cap_compose(
    certs: &[SFiniteCert],
    set: &MultSet,
    budget: &Budget,
) -> Result<CapComposition, EngineError> {
    let (first, rest) = certs
        .split_first()
        .ok_or(EngineError::Mismatch("no certificates to intersect"))?;
    let ring = first.target.ring().clone();
    let mut target = ideal_of(first)?;
    let mut cert = first.clone();
    let mut factors = vec![first.s.clone()];
    for next in rest {
        same_s_gens(&cert, next)?;
        let next_target = ideal_of(next)?;
        let meet = ideal::intersect(
            &span_ideal(&ring, &cert.j_gens),
            &span_ideal(&ring, &next.j_gens),
        );
        let inner = find_s_finite(&Subquotient::submodule(meet.to_submodule()), set, budget)?;
        target = ideal::intersect(&target, &next_target);
        factors.push(next.s.clone());
        if inner.s != ring.one() {
            factors.push(inner.s.clone());
        }
        let s = ring.mul(&ring.mul(&cert.s, &next.s), &inner.s);
        let exps = add_exponents(
            &add_exponents(&cert.s_exponents, &next.s_exponents),
            &inner.s_exponents,
        );
        cert = SFiniteCert {
            s_gens: cert.s_gens.clone(),
            s,
            s_exponents: exps,
            target: Subquotient::submodule(target.to_submodule()),
            j_gens: inner
                .j_gens
                .into_iter()
                .filter(|v| !ring.is_zero_vector(v))
                .collect(),
        };
    }
    Ok(CapComposition { cert, factors })
}
