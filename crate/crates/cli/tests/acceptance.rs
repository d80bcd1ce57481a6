//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

use std::collections::BTreeSet;
use std::panic;
use std::process::ExitCode;
use std::time::Instant;

use lmkit_cli::checks::{run_suite, Suite};
use lmkit_cli::corpus::{default_corpus, find};
use lmkit_core::boolean::{
    boolean_congruences, boolean_from_element, check_permutable, is_boolean, uniformity_report,
};
use lmkit_core::congruence::{
    all_congruences, comparable_pairs, dual_subset_of, is_modal, is_principal, is_semimodal,
    non_principality_witnesses, principal_forms, principal_join_closure, principal_table,
    principal_theta_forms, proper_dense_subsets, theta_from_subset, DEFAULT_MAX_SPACE_SIZE,
};
use lmkit_core::duality::{chain_decomposition, co_dual, round_trip, validate_space, SpaceAxiom};
use lmkit_core::{make_chain, Congruence, Dual, LmAlgebra, Mode, Subset};

type Outcome = Result<String, String>;

fn corpus() -> Vec<(String, LmAlgebra)> {
    default_corpus()
        .into_iter()
        .map(|e| {
            let a = e.algebra.unwrap_or_else(|err| panic!("{}: {err}", e.name));
            (e.name, a)
        })
        .collect()
}

fn duals() -> Vec<(String, Dual)> {
    corpus().into_iter().map(|(n, a)| (n, Dual::new(a))).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn is_bijection(map: &[usize], len: usize) -> bool {
    map.len() == len && map.iter().copied().collect::<BTreeSet<_>>().len() == len
}

fn round_trip_isomorphisms() -> Outcome {
    let mut count = 0;
    for (name, a) in corpus() {
        let rt = round_trip(&a).map_err(|e| format!("{name}: {e}"))?;
        let x = Dual::new(a.clone());
        let co = co_dual(x.space()).map_err(|e| format!("{name}: {e}"))?;
        ensure(co.algebra.len() == a.len(), || {
            format!("{name}: |D(X(A))| = {} vs |A| = {}", co.algebra.len(), a.len())
        })?;
        ensure(is_bijection(&rt.sigma, a.len()), || format!("{name}: sigma"))?;
        ensure(is_bijection(&rt.epsilon, x.space().len()), || format!("{name}: epsilon"))?;
        count += 1;
    }
    Ok(format!("{count} algebras, sigma and epsilon bijective and structure preserving"))
}

fn space_axioms_and_chains() -> Outcome {
    let mut blocks_total = 0;
    let all = duals();
    for (name, d) in &all {
        let x = d.space();
        let r = validate_space(x);
        for ax in [SpaceAxiom::LP3, SpaceAxiom::LP4, SpaceAxiom::LP5, SpaceAxiom::LP8] {
            ensure(!r.violates(ax), || format!("{name}: {ax} fails: {r}"))?;
        }
        ensure(r.lnp6 && r.lnp7 && r.lnp8 && r.equivalence_holds(), || {
            format!("{name}: lnP6={} lnP7={} lnP8={}", r.lnp6, r.lnp7, r.lnp8)
        })?;
        let blocks = chain_decomposition(x).map_err(|e| format!("{name}: {e}"))?;
        let mut covered = Subset::EMPTY;
        for &b in &blocks {
            ensure(covered.is_disjoint(b), || format!("{name}: blocks overlap"))?;
            covered |= b;
            ensure(x.poset().is_chain(b) && b.len() <= x.n() - 1, || {
                format!("{name}: block of size {}", b.len())
            })?;
            let reach = x.poset().up_set(b) | x.poset().down_set(b);
            ensure(reach == b, || format!("{name}: block not maximal"))?;
        }
        ensure(covered == x.carrier(), || format!("{name}: blocks miss points"))?;
        blocks_total += blocks.len();
    }
    Ok(format!("{} spaces, {blocks_total} maximal chains", all.len()))
}

fn correspondence() -> Outcome {
    let mut checked = 0;
    let mut subsets = 0;
    for (name, d) in duals() {
        let x = d.space();
        if x.len() > DEFAULT_MAX_SPACE_SIZE {
            continue;
        }
        let pairs: Vec<(Subset, Congruence)> = Subset::all(x.len())
            .filter(|&y| is_semimodal(x, y))
            .map(|y| (y, theta_from_subset(&d, y).expect("semimodal")))
            .collect();
        for (k, (y1, c1)) in pairs.iter().enumerate() {
            for (y2, c2) in &pairs[k + 1..] {
                ensure(c1 != c2, || format!("{name}: {y1:?} and {y2:?} collide"))?;
            }
            for (y2, c2) in &pairs {
                ensure(y1.is_subset(*y2) == c2.le(c1), || {
                    format!("{name}: order not reversed for {y1:?}, {y2:?}")
                })?;
            }
        }
        let image: BTreeSet<Congruence> = pairs.iter().map(|(_, c)| c.clone()).collect();
        let generated: BTreeSet<Congruence> =
            principal_join_closure(d.algebra(), Mode::Lm).into_iter().collect();
        ensure(image == generated, || {
            format!("{name}: {} from subsets, {} generated", image.len(), generated.len())
        })?;
        checked += 1;
        subsets += pairs.len();
    }
    Ok(format!("{checked} algebras, {subsets} semimodal subsets matched"))
}

fn principal_forms_vs_oracle() -> Outcome {
    let mut forms = 0;
    let mut pairs = 0;
    for (name, d) in duals() {
        for (a, b) in comparable_pairs(d.algebra()) {
            for f in [principal_forms(&d, a, b), principal_theta_forms(&d, a, b)] {
                if let Some(form) = f.mismatch() {
                    return Err(format!(
                        "{name}: form {form} at ({}, {})",
                        d.algebra().name(a),
                        d.algebra().name(b)
                    ));
                }
                forms += f.forms.len();
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs, {forms} form evaluations equal to the oracle"))
}

fn principal_meets() -> Outcome {
    let mut meets = 0;
    for (name, d) in duals() {
        for mode in [Mode::Theta, Mode::Lm] {
            let table = principal_table(d.algebra(), mode);
            let distinct: Vec<&Congruence> = table
                .iter()
                .map(|(_, c)| c)
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            for p in &distinct {
                for q in &distinct {
                    let m = p.meet(q).unwrap();
                    let w = is_principal(&d, &m, &table)
                        .ok_or_else(|| format!("{name}: {mode} meet has no witness"))?;
                    let direct = table
                        .iter()
                        .find(|((a, b), _)| (*a, *b) == (w.a, w.b))
                        .map(|(_, c)| c);
                    ensure(direct == Some(&m), || format!("{name}: witness does not generate meet"))?;
                    meets += 1;
                }
            }
        }
    }
    Ok(format!("{meets} meets, each with a witness pair"))
}

fn boolean_theory() -> Outcome {
    let mut boolean = 0;
    for (name, d) in duals() {
        let a = d.algebra();
        let centre = a.boolean_elements().map_err(|e| e.to_string())?;
        let records = boolean_congruences(&d).map_err(|e| format!("{name}: {e}"))?;
        ensure(records.len() == centre.len(), || {
            format!("{name}: {} records vs |C(A)| = {}", records.len(), centre.len())
        })?;
        let con = all_congruences(&d, Mode::Lm, DEFAULT_MAX_SPACE_SIZE).map_err(|e| e.to_string())?;
        let table = principal_table(a, Mode::Lm);
        let table_theta = principal_table(a, Mode::Theta);
        let from_elements: Vec<(usize, Congruence)> = centre
            .iter()
            .map(|c| (c, boolean_from_element(&d, c, 1).unwrap()))
            .collect();
        let mut booleans = Vec::new();
        for k in 0..con.len() {
            let theta = con.get(k);
            let v = is_boolean(&d, &con, k);
            let y = dual_subset_of(&d, theta);
            let by_element = from_elements.iter().any(|(c, t)| {
                t == theta && a.indices().all(|i| boolean_from_element(&d, *c, i).as_ref() == Ok(t))
            });
            ensure(v.is_boolean() == is_modal(d.space(), y) && v.is_boolean() == by_element, || {
                format!("{name}: criteria disagree on {}", theta.describe(a))
            })?;
            if v.is_boolean() {
                ensure(
                    is_principal(&d, theta, &table).is_some()
                        && is_principal(&d, theta, &table_theta).is_some(),
                    || format!("{name}: Boolean congruence without principal witness"),
                )?;
                booleans.push(theta.clone());
            }
        }
        ensure(booleans.len() == centre.len(), || format!("{name}: |Con_b| != |C(A)|"))?;
        for p in &booleans {
            for q in &booleans {
                ensure(check_permutable(p, q), || format!("{name}: non-permuting pair"))?;
            }
        }
        for r in &records {
            let u = uniformity_report(&d, &r.congruence, r.generator).map_err(|e| e.to_string())?;
            ensure(u.holds(), || format!("{name}: {u:?}"))?;
        }
        boolean += booleans.len();
    }
    Ok(format!("{boolean} Boolean congruences, counts, criteria, permutability and class shape hold"))
}

fn principal_equals_boolean() -> Outcome {
    let mut total = 0;
    for (name, d) in duals() {
        let con = all_congruences(&d, Mode::Lm, DEFAULT_MAX_SPACE_SIZE).map_err(|e| e.to_string())?;
        let principal: BTreeSet<Congruence> = principal_table(d.algebra(), Mode::Lm)
            .into_iter()
            .map(|(_, c)| c)
            .collect();
        let boolean: BTreeSet<Congruence> = (0..con.len())
            .filter(|&k| con.complement(k).is_some())
            .map(|k| con.get(k).clone())
            .collect();
        ensure(principal == boolean, || {
            format!("{name}: {} principal vs {} Boolean", principal.len(), boolean.len())
        })?;
        total += principal.len();
    }
    Ok(format!("{total} congruences, principal set equals Boolean set on every algebra"))
}

fn simplicity_spot_checks() -> Outcome {
    for n in 2..=5 {
        let d = Dual::new(make_chain(n).unwrap());
        let con = all_congruences(&d, Mode::Lm, DEFAULT_MAX_SPACE_SIZE).map_err(|e| e.to_string())?;
        let members: BTreeSet<Congruence> = con.congruences().iter().cloned().collect();
        let expected: BTreeSet<Congruence> =
            [Congruence::identity(n), Congruence::total(n)].into_iter().collect();
        ensure(members == expected, || format!("chain {n}: {} congruences", con.len()))?;
    }
    let d = Dual::new(find("product-3x3").unwrap().algebra.unwrap());
    let modal = Subset::all(d.space().len()).filter(|&y| is_modal(d.space(), y)).count();
    let con = all_congruences(&d, Mode::Lm, DEFAULT_MAX_SPACE_SIZE).map_err(|e| e.to_string())?;
    ensure(modal == 4 && con.len() == 4, || format!("C3xC3: {modal} modal, {} congruences", con.len()))?;
    Ok("chains 2..5 are simple; C3xC3 has 4 congruences from 4 modal subsets".into())
}

fn vacuity() -> Outcome {
    let mut spaces = 0;
    for (name, d) in duals() {
        let w = non_principality_witnesses(&d);
        ensure(w.is_empty(), || format!("{name}: hypothesis satisfied by {} pairs", w.len()))?;
        let dense = proper_dense_subsets(d.space()).map_err(|e| e.to_string())?;
        ensure(dense.is_empty(), || format!("{name}: {} proper dense subsets", dense.len()))?;
        spaces += 1;
    }
    Ok(format!("{spaces} spaces, no proper dense subset and no pair meets the hypothesis"))
}

fn harness_run() -> Outcome {
    let report = run_suite(&default_corpus(), Suite::All, DEFAULT_MAX_SPACE_SIZE);
    ensure(report.passed(), || report.to_text())?;
    let again = run_suite(&default_corpus(), Suite::All, DEFAULT_MAX_SPACE_SIZE);
    ensure(report.without_timing().to_json() == again.without_timing().to_json(), || {
        "report payload is not deterministic".into()
    })?;
    Ok(format!("{} registered theorems, zero failures, deterministic report", report.entries.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("duality round trip", round_trip_isomorphisms),
        ("space axioms and chain decomposition", space_axioms_and_chains),
        ("congruence correspondence", correspondence),
        ("principal forms vs oracle", principal_forms_vs_oracle),
        ("intersections of principal congruences", principal_meets),
        ("Boolean congruences", boolean_theory),
        ("principal equals Boolean", principal_equals_boolean),
        ("simplicity spot checks", simplicity_spot_checks),
        ("vacuity of non-principality hypothesis", vacuity),
        ("regression harness", harness_run),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (label, run)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(run).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match result {
            Ok(detail) => println!("PASS [{}] {label}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {label}: {why}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
