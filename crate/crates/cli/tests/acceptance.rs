//! Acceptance criteria 1 to 7. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::Rng;

use common::*;
use scoherent::cert::{find_s_finite, verify_s_finite, verify_sfp, Budget, SFiniteCert, SfpCert};
use scoherent::engine::{
    cap_compose, chase_audit, compose_sfp, formula_audit, formula_input, fp_scoherent_cert,
    free_scoherent_cert, kernel_s_finite, quotient_sfp, s_noetherian_sample_check, AuditConfig,
    ExtensionData,
};
use scoherent::ideal::{self, F2Part, FinIdeal, StructuredIdeal};
use scoherent::json::{certificate_to_json, Certificate};
use scoherent::lab::{self, Prong};
use scoherent::module::{Submodule, Subquotient};
use scoherent::mult_set::MultSet;
use scoherent::parse::parse_element;
use scoherent::ring::{Element, F2Seq, Ring, Vector};
use scoherent::sample::{trial_rng, Sampler};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = scoh::run(
        std::iter::once("scoh").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, out)
}

fn idz() -> Ring {
    Ring::IdealizationZF2
}

/// Every truncated element `(a, b)` with `|a| ≤ 8`, `b ⊆ {1..4}`.
fn truncated() -> Vec<(i128, Vec<u64>)> {
    let mut out = Vec::new();
    for a in -8..=8 {
        for m in 0u32..16 {
            out.push((a, (1..=4).filter(|i| m & (1 << (i - 1)) != 0).collect()));
        }
    }
    out
}

fn pair(a: i128, support: &[u64]) -> Element {
    Element::Pair(
        BigInt::from(a),
        F2Seq::from_indices(support.iter().copied()),
    )
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let r = idz();
    let report = lab::example_demo();
    let failed: Vec<&str> = report
        .steps
        .iter()
        .filter(|s| !s.passed)
        .map(|s| s.name.as_str())
        .collect();
    ensure(report.passed, || format!("demo steps failed: {failed:?}"))?;

    let ann = ideal::annihilator(&r, &[lab::two_zero()]);
    let expected = StructuredIdeal::split(&r, BigInt::from(0), F2Part::Full).unwrap();
    ensure(ann == expected, || format!("annihilator is {ann}"))?;
    for (a, b) in truncated() {
        let kills = pair_mul((a, &b), (2, &[])) == (0, vec![]);
        ensure(ann.contains(&pair(a, &b)) == kills, || {
            format!("annihilator disagrees at ({a}; {b:?})")
        })?;
    }

    let top: StructuredIdeal = FinIdeal::new(&r, vec![lab::two_zero()]).unwrap().into();
    for n in 1..=16 {
        let scaled = ideal::scale(&top, &r.pow(&lab::two_zero(), n));
        let want = vec![Element::Pair(doubled(n), F2Seq::new())];
        ensure(
            scaled.as_fin_ideal().map(|f| f.gens().to_vec()) == Some(want),
            || format!("n = {n}: {scaled}"),
        )?;
    }

    let classes = lab::classify_ideals_inside_2_0(lab::DEMO_BOUND, 200, 0);
    ensure(classes.is_valid() && classes.ideals.len() == 9, || {
        "classification failed".into()
    })?;
    let mut refutations = 0;
    for candidate in &classes.ideals {
        for n in 1..=16 {
            let t =
                lab::refute_csfp(candidate, n).map_err(|e| format!("{candidate}, n = {n}: {e}"))?;
            let w = &t.witness_element;
            let (wa, wb) = (int(w), indices(w.seq_part().unwrap()));
            if candidate.is_zero() {
                ensure(t.prong == Prong::ScaledModuleEscapes, || {
                    format!("{candidate}: wrong prong")
                })?;
                ensure(w.int_part() == &doubled(n) && wb.is_empty(), || {
                    format!("n = {n}: witness {w}")
                })?;
                ensure(wa % 2 == 0 && wa != 0, || {
                    format!("witness {w} is not a nonzero element of <(2; {{}})>")
                })?;
            } else {
                ensure(t.prong == Prong::NotFinitelyPresented, || {
                    format!("{candidate}: wrong prong")
                })?;
                let g = int(&candidate.as_fin_ideal().unwrap().gens()[0]);
                ensure(
                    wa == 0 && pair_mul((0, &wb), (g, &[])) == (0, vec![]),
                    || format!("{w} is not a relation on {g}"),
                )?;
                let claimed: Vec<u128> = t
                    .claimed
                    .iter()
                    .map(|c| mask(&indices(parse_element(c, &r).unwrap().seq_part().unwrap())))
                    .collect();
                ensure(!f2_in_span(&claimed, mask(&wb)), || {
                    format!("{w} lies in the claimed span")
                })?;
                let ann_g = ideal::annihilator(&r, &[pair(g, &[])]);
                ensure(ann_g == expected, || format!("(0 : {g}) = {ann_g}"))?;
            }
            refutations += 1;
        }
    }

    let noeth = s_noetherian_sample_check(500, 0, false);
    ensure(noeth.conditions[0].certified == 500, || {
        format!("noetherian check {:?}", noeth.conditions[0])
    })?;
    let (code, _) = run_cli(&["demo", "example"]);
    ensure(code == 0, || format!("`demo example` exited {code}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{refutations} refutations re-validated, noetherian 500/500, {elapsed:.2?}"
    ))
}

fn criterion_2() -> Outcome {
    let mut cases = [0usize; 4];
    let total = 10_400;
    for t in 0..total {
        let mut rng = trial_rng(2, t);
        let n: u64 = rng.gen_range(2..=30);
        let r = Ring::modular(n).unwrap();
        let sampler = Sampler::new(&r);
        let res = |v: &[Element]| v.iter().map(residue).collect::<Vec<u64>>();
        let fin =
            |gens: Vec<Element>| -> StructuredIdeal { FinIdeal::new(&r, gens).unwrap().into() };
        let kind = t % 4;
        cases[kind] += 1;
        let (got, want, what) = match kind {
            0 => {
                let gens = sampler.gens(&mut rng);
                let a = sampler.element(&mut rng);
                let oracle = zmod_colon(n, &zmod_ideal(n, &res(&gens)), residue(&a));
                (
                    table(n, &ideal::colon(&fin(gens.clone()), &a)),
                    oracle,
                    format!("colon <{gens:?}> : {a}"),
                )
            }
            1 => {
                let (g1, g2) = (sampler.gens(&mut rng), sampler.gens(&mut rng));
                let (o1, o2) = (zmod_ideal(n, &res(&g1)), zmod_ideal(n, &res(&g2)));
                let oracle = o1.iter().zip(&o2).map(|(a, b)| *a && *b).collect();
                (
                    table(n, &ideal::intersect(&fin(g1), &fin(g2))),
                    oracle,
                    "intersection".to_string(),
                )
            }
            2 => {
                let rank = rng.gen_range(1..=3);
                let x = sampler.vector(&mut rng, rank);
                (
                    table(n, &ideal::annihilator(&r, &x)),
                    zmod_annihilator(n, &res(&x)),
                    format!("ann {x:?}"),
                )
            }
            _ => {
                let rank = rng.gen_range(1..=3);
                let gens = sampler.vectors(&mut rng, rank);
                let m = sampler.vector(&mut rng, rank);
                let span = zmod_span(n, &gens.iter().map(|g| res(g)).collect::<Vec<_>>());
                let oracle = zmod_submodule_colon(n, &span, &res(&m));
                let nmod = Submodule::new(&r, rank, gens).unwrap();
                (
                    table(n, &ideal::submodule_colon(&nmod, &m)),
                    oracle,
                    format!("submodule colon in Z/{n}"),
                )
            }
        };
        ensure(got == want, || format!("case {t} (Z/{n}): {what}"))?;
    }
    Ok(format!(
        "{total} cases (colon {}, intersect {}, ann {}, submodule colon {})",
        cases[0], cases[1], cases[2], cases[3]
    ))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let z = Ring::Integers;
    let zs = MultSet::new(&z, vec![z.from_int(2)]).unwrap();
    let zr = chase_audit(
        &z,
        &zs,
        &AuditConfig {
            trials: 1000,
            seed: 0,
            ..AuditConfig::default()
        },
    );
    for row in &zr.conditions {
        ensure(row.trials == 1000 && row.certified == 1000, || {
            format!("Z {}: {row:?}", row.condition)
        })?;
        ensure(row.non_unit_s == 0, || {
            format!("Z {}: s != 1 in {} trials", row.condition, row.non_unit_s)
        })?;
    }
    let ir = chase_audit(
        &idz(),
        &lab::s_set(),
        &AuditConfig {
            trials: 200,
            seed: 0,
            ..AuditConfig::default()
        },
    );
    for row in &ir.conditions {
        ensure(row.trials == 200 && row.certified == 200, || {
            format!("idealization {}: {row:?}", row.condition)
        })?;
    }
    let non_unit: usize = ir.conditions.iter().map(|r| r.non_unit_s).sum();
    ensure(non_unit > 0, || {
        "no idealization certificate needed s != 1".into()
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "Z 3x1000 with s = 1, idealization 3x200 with {non_unit} non-unit s, {elapsed:.2?}"
    ))
}

fn family_ideal(r: &Ring, rng: &mut rand_chacha::ChaCha8Rng) -> StructuredIdeal {
    let sampler = Sampler::new(r);
    let fin: StructuredIdeal = FinIdeal::new(r, sampler.gens(rng)).unwrap().into();
    match rng.gen_range(0..4) {
        0 if r.is_idealization() => {
            StructuredIdeal::split(r, BigInt::from(2 * rng.gen_range(0..5)), F2Part::Full).unwrap()
        }
        1 => ideal::colon(&fin, &sampler.element(rng)),
        _ => fin,
    }
}

fn trivial_sfp(module: Subquotient, set: &MultSet) -> Result<SfpCert, String> {
    let pres = module.num().gens().to_vec();
    let kernel = module.relations_of(&pres);
    let kernel_cert = find_s_finite(
        &Subquotient::submodule(kernel.clone()),
        set,
        &Budget::default(),
    )
    .map_err(|e| e.reason)?;
    Ok(SfpCert {
        module,
        pres_gens: pres,
        kernel,
        kernel_cert,
    })
}

/// Each kernel generator recombines the presentation into the relations.
fn kernel_sound(cert: &SfpCert, r: &Ring) -> bool {
    let k = cert.module.ambient_rank();
    cert.kernel.gens().iter().all(|c| {
        let v = r.combine(c, &cert.pres_gens, k);
        match r {
            Ring::ModularIntegers(n) => {
                let n = n.try_into().unwrap();
                let rels: Vec<Vec<u64>> = cert
                    .module
                    .rels()
                    .gens()
                    .iter()
                    .map(|g| g.iter().map(residue).collect())
                    .collect();
                let span = if rels.is_empty() {
                    [vec![0; k]].into_iter().collect()
                } else {
                    zmod_span(n, &rels)
                };
                span.contains(&v.iter().map(residue).collect::<Vec<_>>())
            }
            _ => {
                let rels: Vec<Vec<i128>> = cert
                    .module
                    .rels()
                    .gens()
                    .iter()
                    .map(|g| g.iter().map(int).collect())
                    .collect();
                int_member(&rels, &v.iter().map(int).collect::<Vec<_>>())
            }
        }
    })
}

fn criterion_4() -> Outcome {
    let budget = Budget::default();

    // Intersections.
    let mut non_unit = 0;
    for t in 0..200 {
        let mut rng = trial_rng(4, t);
        let (r, set) = if t % 2 == 0 {
            (idz(), lab::s_set())
        } else {
            let z = Ring::Integers;
            let s = MultSet::new(&z, vec![z.from_int(2)]).unwrap();
            (z, s)
        };
        let k = rng.gen_range(1..=4);
        let ideals: Vec<StructuredIdeal> = (0..k).map(|_| family_ideal(&r, &mut rng)).collect();
        let certs = ideals
            .iter()
            .map(|i| find_s_finite(&Subquotient::submodule(i.to_submodule()), &set, &budget))
            .collect::<Result<Vec<SFiniteCert>, _>>()
            .map_err(|e| format!("family {t}: {}", e.reason))?;
        let cap = cap_compose(&certs, &set, &budget).map_err(|e| format!("family {t}: {e}"))?;
        let product = cap.factors.iter().fold(r.one(), |acc, f| r.mul(&acc, f));
        ensure(product == cap.cert.s, || {
            format!("family {t}: s = {} but factors give {product}", cap.cert.s)
        })?;
        ensure(verify_s_finite(&cap.cert).is_valid(), || {
            format!("family {t}: intersection certificate rejected")
        })?;
        let meet = ideals[1..]
            .iter()
            .fold(ideals[0].clone(), |acc, i| ideal::intersect(&acc, i));
        let target = StructuredIdeal::from_submodule(cap.cert.target.num());
        ensure(target == meet, || {
            format!("family {t}: target {target} != {meet}")
        })?;
        if cap.cert.s != r.one() {
            non_unit += 1;
        }
    }

    // Short exact sequences 0 → A → B → B/A → 0.
    for t in 0..200 {
        let mut rng = trial_rng(41, t);
        let r = if t % 2 == 0 {
            Ring::Integers
        } else {
            Ring::modular(rng.gen_range(3u64..=12)).unwrap()
        };
        let set = match &r {
            Ring::Integers => MultSet::new(&r, vec![r.from_int(2)]).unwrap(),
            _ => MultSet::trivial(&r),
        };
        let mut sampler = Sampler::new(&r);
        sampler.int_bound = 6;
        let rank = rng.gen_range(1..=2);
        let b_gens = sampler.vectors(&mut rng, rank);
        let a_gens: Vec<Vector> = (0..rng.gen_range(1..=2))
            .map(|_| {
                let coeffs: Vec<Element> = b_gens
                    .iter()
                    .map(|_| r.from_int(rng.gen_range(-3..=3)))
                    .collect();
                r.combine(&coeffs, &b_gens, rank)
            })
            .collect();
        let a = Submodule::new(&r, rank, a_gens).unwrap();
        let b = Submodule::new(&r, rank, b_gens).unwrap();
        let ext =
            ExtensionData::of_inclusion(&a, &b, &b).map_err(|e| format!("sequence {t}: {e}"))?;
        let fail = |what: &str, e: String| format!("sequence {t} over {r}, {what}: {e}");
        let cert_a =
            free_scoherent_cert(&a, &set, &budget).map_err(|e| fail("A", e.to_string()))?;
        let cert_b =
            free_scoherent_cert(&b, &set, &budget).map_err(|e| fail("B", e.to_string()))?;
        let cert_q = trivial_sfp(ext.quot().clone(), &set).map_err(|e| fail("B/A", e))?;

        let mid =
            compose_sfp(&ext, &cert_a, &cert_q).map_err(|e| fail("compose", e.to_string()))?;
        ensure(
            verify_sfp(&mid).is_valid() && mid.module.same_as(ext.mid()),
            || fail("compose", "rejected".into()),
        )?;
        ensure(kernel_sound(&mid, &r), || {
            fail("compose", "kernel generator is not a relation".into())
        })?;

        let sub = find_s_finite(ext.sub(), &set, &budget).map_err(|e| fail("A", e.reason))?;
        let quot =
            quotient_sfp(&ext, &sub, &cert_b).map_err(|e| fail("quotient", e.to_string()))?;
        ensure(
            verify_sfp(&quot).is_valid() && quot.module.same_as(ext.quot()),
            || fail("quotient", "rejected".into()),
        )?;
        ensure(kernel_sound(&quot, &r), || {
            fail("quotient", "kernel generator is not a relation".into())
        })?;

        let mid_fin = find_s_finite(ext.mid(), &set, &budget).map_err(|e| fail("B", e.reason))?;
        let ker =
            kernel_s_finite(&ext, &cert_q, &mid_fin).map_err(|e| fail("kernel", e.to_string()))?;
        ensure(
            verify_s_finite(&ker).is_valid() && ker.target.same_as(ext.sub()),
            || fail("kernel", "rejected".into()),
        )?;
    }

    // Kernels of free presentations against enumeration.
    for t in 0..200 {
        let mut rng = trial_rng(42, t);
        if t % 2 == 0 {
            let n: u64 = rng.gen_range(2..=8);
            let r = Ring::modular(n).unwrap();
            let sampler = Sampler::new(&r);
            let rank = rng.gen_range(1..=2);
            let gens = sampler.vectors(&mut rng, rank);
            let cert = free_scoherent_cert(
                &Submodule::new(&r, rank, gens.clone()).unwrap(),
                &MultSet::trivial(&r),
                &budget,
            )
            .map_err(|e| format!("kernel {t}: {e}"))?;
            let p = cert.pres_gens.len();
            let pres: Vec<Vec<u64>> = cert
                .pres_gens
                .iter()
                .map(|g| g.iter().map(residue).collect())
                .collect();
            let mut oracle = std::collections::HashSet::new();
            for idx in 0..n.pow(p as u32) {
                let c: Vec<u64> = (0..p).map(|i| idx / n.pow(i as u32) % n).collect();
                let v: Vec<u64> = (0..rank)
                    .map(|j| (0..p).map(|i| c[i] * pres[i][j]).sum::<u64>() % n)
                    .collect();
                if v.iter().all(|&x| x == 0) {
                    oracle.insert(c);
                }
            }
            let lib: Vec<Vec<u64>> = cert
                .kernel
                .gens()
                .iter()
                .map(|g| g.iter().map(residue).collect())
                .collect();
            let lib_span = if lib.is_empty() {
                [vec![0; p]].into_iter().collect()
            } else {
                zmod_span(n, &lib)
            };
            ensure(lib_span == oracle, || {
                format!(
                    "kernel {t} over Z/{n}: {} vs {} relations",
                    lib_span.len(),
                    oracle.len()
                )
            })?;
        } else {
            let r = Ring::Integers;
            let mut sampler = Sampler::new(&r);
            sampler.int_bound = 6;
            let rank = rng.gen_range(1..=3);
            let gens = sampler.vectors(&mut rng, rank);
            let set = MultSet::new(&r, vec![r.from_int(2)]).unwrap();
            let cert = free_scoherent_cert(&Submodule::new(&r, rank, gens).unwrap(), &set, &budget)
                .map_err(|e| format!("kernel {t}: {e}"))?;
            let p = cert.pres_gens.len();
            let pres: Vec<Vec<i128>> = cert
                .pres_gens
                .iter()
                .map(|g| g.iter().map(int).collect())
                .collect();
            let kern: Vec<Vec<i128>> = cert
                .kernel
                .gens()
                .iter()
                .map(|g| g.iter().map(int).collect())
                .collect();
            let apply = |c: &[i128]| -> Vec<i128> {
                (0..rank)
                    .map(|j| (0..p).map(|i| c[i] * pres[i][j]).sum())
                    .collect()
            };
            ensure(
                kern.iter().all(|c| apply(c).iter().all(|&x| x == 0)),
                || format!("kernel {t}: unsound generator"),
            )?;
            ensure(
                kern.is_empty() || rational_rank(&kern) == p - rational_rank(&pres),
                || format!("kernel {t}: wrong rank"),
            )?;
            let box_size = 9i128.pow(p as u32);
            for idx in 0..box_size {
                let c: Vec<i128> = (0..p)
                    .map(|i| (idx / 9i128.pow(i as u32)) % 9 - 4)
                    .collect();
                if apply(&c).iter().all(|&x| x == 0) {
                    ensure(int_member(&kern, &c), || {
                        format!("kernel {t}: relation {c:?} missing")
                    })?;
                }
            }
        }
    }

    // Zero K reduces to the free construction.
    for t in 0..200 {
        let mut rng = trial_rng(43, t);
        let (r, set) = match t % 3 {
            0 => (
                Ring::Integers,
                MultSet::new(&Ring::Integers, vec![Element::Int(2.into())]).unwrap(),
            ),
            1 => {
                let r = Ring::modular(rng.gen_range(2u64..=30)).unwrap();
                let s = MultSet::trivial(&r);
                (r, s)
            }
            _ => (idz(), lab::s_set()),
        };
        let sampler = Sampler::new(&r);
        let rank = rng.gen_range(1..=2);
        let l_gens = sampler.vectors(&mut rng, rank);
        let fp = fp_scoherent_cert(&[], &l_gens, rank, &set, &budget)
            .map_err(|e| format!("fp {t}: {e}"))?;
        let free = free_scoherent_cert(&Submodule::new(&r, rank, l_gens).unwrap(), &set, &budget)
            .map_err(|e| format!("free {t}: {e}"))?;
        let (a, b) = (
            certificate_to_json(&Certificate::Sfp(fp.clone())),
            certificate_to_json(&Certificate::Sfp(free.clone())),
        );
        ensure(fp == free && a == b, || {
            format!("case {t} over {r}: certificates differ")
        })?;
    }
    Ok(format!(
        "200 intersections ({non_unit} with s != 1), 200 sequences, 200 kernels, 200 zero-K cases"
    ))
}

fn criterion_5() -> Outcome {
    // N = <(1,2)> in Z^2, m = (1,1): the formula is strictly larger.
    let z = Ring::Integers;
    let n = Submodule::new(&z, 2, vec![vec![z.from_int(1), z.from_int(2)]]).unwrap();
    let m = vec![z.from_int(1), z.from_int(1)];
    let colon = ideal::submodule_colon(&n, &m);
    let formula = ideal::componentwise_colon(&n, &m);
    ensure(
        colon.to_string() == "<0>" && formula.to_string() == "<2>",
        || format!("<(1,2)>: {colon} vs {formula}"),
    )?;
    ensure(rational_rank(&[vec![1, 2], vec![1, 1]]) == 2, || {
        "(1,1) lies in the rational span of (1,2)".into()
    })?;
    ensure(!int_member(&[vec![1, 2]], &[2, 2]), || {
        "2·(1,1) is in <(1,2)>".into()
    })?;

    let report = formula_audit(500, 0);
    let mut strict = [0usize; 2];
    let mut contained = [0usize; 2];
    for t in 0..500 {
        let (n, m) = formula_input(0, t);
        let r = n.ring().clone();
        let rank = n.rank();
        let lib_colon = ideal::submodule_colon(&n, &m);
        let lib_formula = ideal::componentwise_colon(&n, &m);
        let (colon_oracle, formula_oracle): (Vec<bool>, Vec<bool>) = match &r {
            Ring::ModularIntegers(q) => {
                let q: u64 = q.try_into().unwrap();
                let gens: Vec<Vec<u64>> = n
                    .gens()
                    .iter()
                    .map(|g| g.iter().map(residue).collect())
                    .collect();
                let span = if gens.is_empty() {
                    [vec![0; rank]].into_iter().collect()
                } else {
                    zmod_span(q, &gens)
                };
                let mv: Vec<u64> = m.iter().map(residue).collect();
                let colon_o = zmod_submodule_colon(q, &span, &mv);
                let mut formula_o = vec![true; q as usize];
                for i in 0..rank {
                    let comp: Vec<u64> = span.iter().map(|v| v[i]).collect();
                    let col = zmod_colon(q, &zmod_ideal(q, &comp), mv[i]);
                    formula_o.iter_mut().zip(col).for_each(|(a, b)| *a &= b);
                }
                ensure(table(q, &lib_colon) == colon_o, || {
                    format!("trial {t}: colon {lib_colon} disagrees")
                })?;
                ensure(table(q, &lib_formula) == formula_o, || {
                    format!("trial {t}: formula {lib_formula} disagrees")
                })?;
                (colon_o, formula_o)
            }
            _ => {
                let gens: Vec<Vec<i128>> = n
                    .gens()
                    .iter()
                    .map(|g| g.iter().map(int).collect())
                    .collect();
                let mv: Vec<i128> = m.iter().map(int).collect();
                let gcd = |a: i128, b: i128| -> i128 { num_integer::Integer::gcd(&a, &b) };
                let lcm = |a: i128, b: i128| -> i128 {
                    if a == 0 || b == 0 {
                        0
                    } else {
                        num_integer::Integer::lcm(&a, &b)
                    }
                };
                let mut f = 1i128;
                for i in 0..rank {
                    let d = gens.iter().fold(0, |acc, g| gcd(acc, g[i]));
                    let x = mv[i];
                    let term = if x == 0 {
                        1
                    } else if d == 0 {
                        0
                    } else {
                        d / gcd(d, x)
                    };
                    f = lcm(f, term);
                }
                let mut with_m = gens.clone();
                with_m.push(mv.clone());
                let c = if rational_rank(&with_m) > rational_rank(&gens) {
                    0
                } else {
                    (1..)
                        .find(|&k| int_member(&gens, &mv.iter().map(|x| k * x).collect::<Vec<_>>()))
                        .unwrap()
                };
                let lib_c = lib_colon
                    .to_submodule()
                    .gens()
                    .first()
                    .map_or(0, |g| int(&g[0]).abs());
                let lib_f = lib_formula
                    .to_submodule()
                    .gens()
                    .first()
                    .map_or(0, |g| int(&g[0]).abs());
                ensure(lib_c == c, || {
                    format!("trial {t}: colon {lib_colon}, oracle <{c}>")
                })?;
                ensure(lib_f == f, || {
                    format!("trial {t}: formula {lib_formula}, oracle <{f}>")
                })?;
                // Compare as membership over a window that contains both generators.
                let window = 1..=(c.max(f).max(1) * 2);
                let member = |g: i128, x: i128| if g == 0 { x == 0 } else { x % g == 0 };
                (
                    window.clone().map(|x| member(c, x)).collect(),
                    window.map(|x| member(f, x)).collect(),
                )
            }
        };
        let idx = t % 2;
        if colon_oracle
            .iter()
            .zip(&formula_oracle)
            .all(|(c, f)| !c || *f)
        {
            contained[idx] += 1;
        }
        if colon_oracle != formula_oracle {
            strict[idx] += 1;
        }
    }
    for (row, i) in report.rows.iter().zip(0..) {
        ensure(
            row.contained == contained[i] && row.strict == strict[i],
            || {
                format!(
                    "{}: report {row:?} vs oracle {} / {}",
                    row.ring, contained[i], strict[i]
                )
            },
        )?;
        ensure(row.contained == row.trials, || {
            format!("{}: containment failed", row.ring)
        })?;
    }
    let total_strict = strict[0] + strict[1];
    ensure(total_strict > 0, || "no strict instance".into())?;
    Ok(format!(
        "500 pairs, colon inside formula in all, {total_strict} strict ({} over Z, {} over Z/12)",
        strict[0], strict[1]
    ))
}

fn criterion_6() -> Outcome {
    let mut count = 0;
    for m in 1..=3u64 {
        for t in 0..50 {
            let claimed = lab::random_syzygies(6 + m, t);
            let trace = lab::refute_finitely_presented(m, &claimed)
                .map_err(|e| format!("m = {m}, set {t}: {e}"))?;
            ensure(trace.is_valid(), || {
                format!("m = {m}, set {t}: trace checks failed")
            })?;
            let w = &trace.witness_element;
            let wb = indices(w.seq_part().unwrap());
            let g = 2 * m as i128;
            ensure(int(w) == 0 && !wb.is_empty(), || {
                format!("witness {w} is zero or has an integer part")
            })?;
            ensure(pair_mul((int(w), &wb), (g, &[])) == (0, vec![]), || {
                format!("{w} is not a relation on ({g}; {{}})")
            })?;
            let masks: Vec<u128> = claimed
                .iter()
                .map(|c| {
                    assert_eq!(
                        pair_mul((int(c), &indices(c.seq_part().unwrap())), (g, &[])),
                        (0, vec![])
                    );
                    mask(&indices(c.seq_part().unwrap()))
                })
                .collect();
            ensure(!f2_in_span(&masks, mask(&wb)), || {
                format!("m = {m}, set {t}: {w} is in the claimed span")
            })?;
            count += 1;
        }
    }
    let bogus = lab::refute_finitely_presented(1, &[Element::pair(1, [2])]);
    ensure(bogus.is_err(), || {
        "a non-relation claim was accepted".into()
    })?;
    Ok(format!("{count} refutations re-validated, 0 false"))
}

fn criterion_7() -> Outcome {
    let json = |r: &Ring, set: &MultSet, parallel: bool| {
        let cfg = AuditConfig {
            trials: 200,
            seed: 7,
            parallel,
            ..AuditConfig::default()
        };
        serde_json::to_string_pretty(&chase_audit(r, set, &cfg)).unwrap()
    };
    let z = Ring::Integers;
    let zs = MultSet::new(&z, vec![z.from_int(2)]).unwrap();
    for (r, set) in [(idz(), lab::s_set()), (z, zs)] {
        let a = json(&r, &set, true);
        ensure(a == json(&r, &set, true), || {
            format!("{r}: two parallel runs differ")
        })?;
        ensure(a == json(&r, &set, false), || {
            format!("{r}: serial and parallel differ")
        })?;
    }
    let argv = [
        "chase",
        "audit",
        "--ring",
        "idealization",
        "--sset",
        "(2; {})",
        "--trials",
        "100",
        "--seed",
        "3",
    ];
    let (c1, o1) = run_cli(&argv);
    let (c2, o2) = run_cli(&argv);
    let serial: Vec<&str> = argv.iter().copied().chain(["--serial"]).collect();
    let (c3, o3) = run_cli(&serial);
    ensure(c1 == 0 && c2 == 0 && c3 == 0, || {
        "audit command failed".into()
    })?;
    ensure(o1 == o2 && o1 == o3, || {
        "CLI audit output differs between runs".into()
    })?;
    let (_, d1) = run_cli(&["demo", "example"]);
    let (_, d2) = run_cli(&["demo", "example"]);
    ensure(d1 == d2, || "demo output differs between runs".into())?;
    Ok(format!(
        "audit JSON identical across runs and thread modes ({} bytes via CLI)",
        o1.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("demo example", criterion_1),
        ("Z/n oracle equivalence", criterion_2),
        ("chase audit", criterion_3),
        ("lemma suite", criterion_4),
        ("colon formula audit", criterion_5),
        ("refutation soundness", criterion_6),
        ("determinism", criterion_7),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", i + 1),
            Err(detail) => {
                all = false;
                println!("FAIL criterion {} ({name}): {detail}", i + 1);
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
