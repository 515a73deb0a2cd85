//! S-coherence constructions: finitely generated submodules of free modules,
//! finitely presented modules, and the c-S route.

use crate::cert::{
    find_s_finite, verify_csfp, verify_usfp, Budget, CsfpCert, Inconclusive, SFiniteCert, SfpCert,
    UsfpCert,
};
use crate::ideal::{self, FinIdeal};
use crate::module::{Matrix, Submodule, Subquotient};
use crate::mult_set::MultSet;
use crate::ring::{Element, Vector};

use super::lemmas::{cap_compose, compose_sfp, quotient_sfp};
use super::{EngineError, ExtensionData};

fn trivial_free_cert(set: &MultSet, rank: usize) -> SfpCert {
    let ring = set.ring();
    let module = Subquotient::submodule(Submodule::full(ring, rank));
    let kernel = Submodule::zero(ring, rank);
    SfpCert {
        pres_gens: module.num().gens().to_vec(),
        kernel_cert: SFiniteCert {
            s_gens: set.gens().to_vec(),
            s: ring.one(),
            s_exponents: vec![0; set.gens().len()],
            target: Subquotient::submodule(kernel.clone()),
            j_gens: vec![],
        },
        kernel,
        module,
    }
}

/// `⟨x⟩ ≅ R/(0 : x)`, with `(0 : x)` certified coordinate by coordinate.
fn cyclic_cert(x: &[Element], set: &MultSet, budget: &Budget) -> Result<SfpCert, EngineError> {
    let ring = set.ring();
    let mut certs = Vec::with_capacity(x.len());
    for xi in x {
        let ann = ideal::colon(&ideal::StructuredIdeal::Zero(ring.clone()), xi);
        certs.push(find_s_finite(
            &Subquotient::submodule(ann.to_submodule()),
            set,
            budget,
        )?);
    }
    let cap = cap_compose(&certs, set, budget)?;
    let kernel = cap.cert.target.num().clone();
    Ok(SfpCert {
        module: Subquotient::submodule(Submodule::new(ring, x.len(), vec![x.to_vec()])?),
        pres_gens: vec![x.to_vec()],
        kernel,
        kernel_cert: cap.cert,
    })
}

/// An S-finite presentation of a finitely generated `N ⊆ Rⁿ`, built one
/// generator at a time: `0 → M_k → M_{k+1} → R/(M_k : m_{k+1}) → 0`.
pub fn free_scoherent_cert(
    n: &Submodule,
    set: &MultSet,
    budget: &Budget,
) -> Result<SfpCert, EngineError> {
    if !n.is_finitely_generated() {
        return Err(EngineError::NotFinitelyGenerated);
    }
    let ring = n.ring();
    let rank = n.rank();
    let gens = n.gens();
    let Some((first, rest)) = gens.split_first() else {
        let module = Subquotient::submodule(Submodule::new(ring, rank, vec![])?);
        let kernel = Submodule::zero(ring, 0);
        return Ok(SfpCert {
            module,
            pres_gens: vec![],
            kernel_cert: SFiniteCert {
                s_gens: set.gens().to_vec(),
                s: ring.one(),
                s_exponents: vec![0; set.gens().len()],
                target: Subquotient::submodule(kernel.clone()),
                j_gens: vec![],
            },
            kernel,
        });
    };
    let mut cert = cyclic_cert(first, set, budget)?;
    let mut current = vec![first.clone()];
    for m in rest {
        let mk = Submodule::new(ring, rank, current.clone())?;
        let colon = ideal::submodule_colon(&mk, m).to_submodule();
        let colon_cert = find_s_finite(&Subquotient::submodule(colon.clone()), set, budget)?;
        let full = Submodule::full(ring, 1);
        let ext_c = ExtensionData::of_inclusion(&colon, &full, &full)?;
        let cyclic = quotient_sfp(&ext_c, &colon_cert, &trivial_free_cert(set, 1))?;
        // R/C ≅ M_{k+1}/M_k by 1 ↦ m.
        let step = Submodule::new(ring, rank, vec![m.clone()])?;
        let transported = SfpCert {
            module: Subquotient::new(step.clone(), mk.clone())?,
            pres_gens: cyclic
                .pres_gens
                .iter()
                .map(|p| ring.vec_scale(&p[0], m))
                .collect(),
            kernel: cyclic.kernel,
            kernel_cert: cyclic.kernel_cert,
        };
        current.push(m.clone());
        let next = Submodule::new(ring, rank, current.clone())?;
        let ext = ExtensionData::of_inclusion(&mk, &next, &step)?;
        cert = compose_sfp(&ext, &cert, &transported)?;
    }
    // The module is N itself, with N's generator list.
    cert.module = Subquotient::submodule(n.clone());
    Ok(cert)
}

/// Pull-back data for a submodule `L` of `M = F/K`: `X = K + lifts(L) ⊆ F`
/// and `Y = M/L`.
#[derive(Clone, Debug)]
pub struct PullbackData {
    pub k: Submodule,
    pub l: Submodule,
    pub x: Submodule,
}

impl PullbackData {
    pub fn new(k: &Submodule, l_gens: &[Vector]) -> Result<PullbackData, EngineError> {
        let ring = k.ring();
        let l = Submodule::new(ring, k.rank(), l_gens.to_vec())?;
        let x = k.sum(&l);
        if !x.contains(k) || !l.sum(k).same_as(&x) {
            return Err(EngineError::Internal(
                "pull-back does not contain the relations",
            ));
        }
        Ok(PullbackData { k: k.clone(), l, x })
    }

    /// `L = X/K` as a subquotient of `F/K`.
    pub fn image(&self) -> Subquotient {
        Subquotient::new(self.l.clone(), self.k.clone()).expect("same ambient module")
    }
}

/// An S-finite presentation of a finitely generated submodule `L` of a
/// finitely presented `M = F/K`.
pub fn fp_scoherent_cert(
    k_gens: &[Vector],
    l_gens: &[Vector],
    rank: usize,
    set: &MultSet,
    budget: &Budget,
) -> Result<SfpCert, EngineError> {
    let ring = set.ring();
    let k = Submodule::new(ring, rank, k_gens.to_vec())?;
    if k_gens.is_empty() {
        return free_scoherent_cert(&Submodule::new(ring, rank, l_gens.to_vec())?, set, budget);
    }
    let pb = PullbackData::new(&k, l_gens)?;
    let mut x_gens = k_gens.to_vec();
    x_gens.extend(l_gens.iter().cloned());
    let x = Submodule::new(ring, rank, x_gens)?;
    let x_cert = free_scoherent_cert(&x, set, budget)?;
    let k_cert = find_s_finite(&Subquotient::submodule(k.clone()), set, budget)?;
    let ext = ExtensionData::new(
        Subquotient::submodule(k),
        Subquotient::submodule(x),
        pb.image(),
        Matrix::identity(ring, rank),
        Matrix::identity(ring, rank),
    )?;
    quotient_sfp(&ext, &k_cert, &x_cert)
}

/// The first `s ∈ S` (by degree) for which `s·M` is finitely presented,
/// taking `N = s·M`.
pub fn find_csfp(
    module: &Subquotient,
    set: &MultSet,
    budget: &Budget,
) -> Result<CsfpCert, Inconclusive> {
    let ring = module.ring();
    for (exps, s) in set.elements_up_to(budget.exponent) {
        let scaled = module.num().scale(&s);
        if !scaled.is_finitely_generated() {
            continue;
        }
        let n_gens: Vec<Vector> = scaled
            .gens()
            .iter()
            .filter(|g| !ring.is_zero_vector(g))
            .cloned()
            .collect();
        let rels = module.relations_of(&n_gens);
        if !rels.is_finitely_generated() {
            continue;
        }
        return Ok(CsfpCert {
            module: module.clone(),
            n_gens,
            syzygies: rels.gens().to_vec(),
            s_gens: set.gens().to_vec(),
            s,
            s_exponents: exps,
        });
    }
    Err(Inconclusive {
        reason: format!(
            "no s of degree ≤ {} gives a finitely presented s·M",
            budget.exponent
        ),
    })
}

/// The u-S presentation `N → M` read off a c-S certificate, and the S-finite
/// certificate for the kernel of the presentation `R^k → M` by `pres_gens`.
#[derive(Clone, Debug)]
pub struct ExccsResult {
    pub usfp: UsfpCert,
    pub kernel_cert: SFiniteCert,
}

pub fn exccs_kernel_cert(
    csfp: &CsfpCert,
    pres_gens: &[Vector],
) -> Result<ExccsResult, EngineError> {
    if !verify_csfp(csfp).is_valid() {
        return Err(EngineError::Mismatch("c-S certificate does not verify"));
    }
    let m = &csfp.module;
    if !m.generated_by(pres_gens) {
        return Err(EngineError::Mismatch(
            "presentation does not generate the module",
        ));
    }
    let ring = m.ring();
    let (n, a, k) = (m.ambient_rank(), csfp.n_gens.len(), pres_gens.len());
    let express = |gens: &[Vector], v: &[Element]| {
        m.express(gens, v)
            .ok_or(EngineError::Internal("element outside the expected span"))
    };
    let t2 = m
        .num()
        .gens()
        .iter()
        .map(|g| express(&csfp.n_gens, &ring.vec_scale(&csfp.s, g)))
        .collect::<Result<Vec<_>, _>>()?;
    let usfp = UsfpCert {
        module: m.clone(),
        source_rels: csfp.syzygies.clone(),
        map: Matrix::from_columns(n, &csfp.n_gens),
        s_gens: csfp.s_gens.clone(),
        s: csfp.s.clone(),
        s_exponents: csfp.s_exponents.clone(),
        t1: csfp.syzygies.clone(),
        t2,
    };
    if !verify_usfp(&usfp).is_valid() {
        return Err(EngineError::Internal(
            "derived u-S presentation does not verify",
        ));
    }
    // a_j: N's generators in terms of the presentation; b_t: s·g_t in terms of N.
    let a_rows = csfp
        .n_gens
        .iter()
        .map(|nj| express(pres_gens, nj))
        .collect::<Result<Vec<_>, _>>()?;
    let mut j = Vec::new();
    for (t, g) in pres_gens.iter().enumerate() {
        let b = express(&csfp.n_gens, &ring.vec_scale(&csfp.s, g))?;
        let mut delta = ring.vec_scale(&csfp.s, &ring.unit_vector(k, t));
        delta = ring.vec_add(&delta, &ring.vec_neg(&ring.combine(&b, &a_rows, k)));
        j.push(delta);
    }
    for z in &csfp.syzygies {
        debug_assert_eq!(z.len(), a);
        j.push(ring.combine(z, &a_rows, k));
    }
    j.retain(|v| !ring.is_zero_vector(v));
    let kernel = m.relations_of(pres_gens);
    Ok(ExccsResult {
        usfp,
        kernel_cert: SFiniteCert {
            s_gens: csfp.s_gens.clone(),
            s: csfp.s.clone(),
            s_exponents: csfp.s_exponents.clone(),
            target: Subquotient::submodule(kernel),
            j_gens: j,
        },
    })
}

/// `(I : a)` is S-finite when `J = I + Ra` is c-S-finitely presented: the
/// colon is the last coordinate of the kernel of `R^{n+1} → J`.
pub fn cs_implies_s_derivation(
    i: &FinIdeal,
    a: &Element,
    csfp: &CsfpCert,
) -> Result<SFiniteCert, EngineError> {
    let ring = i.ring();
    let mut pres: Vec<Vector> = i.gens().iter().map(|g| vec![g.clone()]).collect();
    pres.push(vec![a.clone()]);
    let j = Subquotient::submodule(Submodule::new(ring, 1, pres.clone())?);
    if !csfp.module.same_as(&j) {
        return Err(EngineError::Mismatch("c-S certificate is not about I + Ra"));
    }
    let last = pres.len() - 1;
    let kernel = exccs_kernel_cert(csfp, &pres)?.kernel_cert;
    let colon = ideal::colon(&i.clone().into(), a).to_submodule();
    if !kernel.target.num().project(&[last]).same_as(&colon) {
        return Err(EngineError::Internal(
            "projected kernel differs from the colon ideal",
        ));
    }
    Ok(SFiniteCert {
        j_gens: kernel
            .j_gens
            .iter()
            .map(|v| vec![v[last].clone()])
            .filter(|v| !ring.is_zero_vector(v))
            .collect(),
        target: Subquotient::submodule(colon),
        ..kernel
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::{verify_s_finite, verify_sfp};
    use crate::ring::Ring;

    fn z(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Element::Int(x.into())).collect()
    }

    #[test]
    fn independent_generators_have_no_syzygies() {
        let r = Ring::Integers;
        let n = Submodule::new(&r, 2, vec![z(&[2, 0]), z(&[0, 2])]).unwrap();
        let cert = free_scoherent_cert(&n, &MultSet::trivial(&r), &Budget::default()).unwrap();
        assert!(verify_sfp(&cert).is_valid());
        assert!(cert.kernel.is_zero());
        assert_eq!(cert.pres_gens, n.gens());
    }

    #[test]
    fn cyclic_module_over_z_mod_12() {
        let r = Ring::modular(12).unwrap();
        let n = Submodule::new(&r, 1, vec![vec![r.from_int(4)]]).unwrap();
        let cert = free_scoherent_cert(&n, &MultSet::trivial(&r), &Budget::default()).unwrap();
        assert!(verify_sfp(&cert).is_valid());
        assert!(cert
            .kernel
            .same_as(&Submodule::new(&r, 1, vec![vec![r.from_int(3)]]).unwrap()));
    }

    #[test]
    fn two_zero_in_the_idealization() {
        let r = Ring::IdealizationZF2;
        let set = MultSet::new(&r, vec![Element::pair(2, [])]).unwrap();
        let n = Submodule::new(&r, 1, vec![vec![Element::pair(2, [])]]).unwrap();
        let cert = free_scoherent_cert(&n, &set, &Budget::default()).unwrap();
        assert!(verify_sfp(&cert).is_valid());
        assert!(!cert.kernel.is_finitely_generated());
        assert_eq!(cert.kernel_cert.s, Element::pair(2, []));
        assert!(cert.kernel_cert.j_gens.is_empty());
    }

    #[test]
    fn submodule_of_z_mod_four() {
        let r = Ring::Integers;
        let cert = fp_scoherent_cert(
            &[z(&[4])],
            &[z(&[2])],
            1,
            &MultSet::trivial(&r),
            &Budget::default(),
        )
        .unwrap();
        assert!(verify_sfp(&cert).is_valid());
        assert_eq!(cert.kernel_cert.s, r.one());
    }

    #[test]
    fn colon_through_c_s_route() {
        let r = Ring::Integers;
        let i = FinIdeal::new(&r, vec![r.from_int(6)]).unwrap();
        let a = r.from_int(4);
        let j = Subquotient::submodule(Submodule::new(&r, 1, vec![z(&[6]), z(&[4])]).unwrap());
        let csfp = find_csfp(&j, &MultSet::trivial(&r), &Budget::default()).unwrap();
        let cert = cs_implies_s_derivation(&i, &a, &csfp).unwrap();
        assert!(verify_s_finite(&cert).is_valid());
        assert!(cert
            .target
            .num()
            .same_as(&Submodule::new(&r, 1, vec![z(&[3])]).unwrap()));
    }

    #[test]
    fn two_zero_is_not_c_s_finitely_presented_within_budget() {
        let r = Ring::IdealizationZF2;
        let set = MultSet::new(&r, vec![Element::pair(2, [])]).unwrap();
        let m = Subquotient::submodule(
            Submodule::new(&r, 1, vec![vec![Element::pair(2, [])]]).unwrap(),
        );
        assert!(find_csfp(
            &m,
            &set,
            &Budget {
                exponent: 6,
                samples: 1
            }
        )
        .is_err());
    }
}
