//! Acceptance gate: twelve exact criteria, one PASS/FAIL line each.
//! Runs without the libtest harness so the lines are always printed.

use std::process::{Command, ExitCode};
use std::time::Instant;

use rayon::prelude::*;

use klein_core::catalog::{catalog_get, catalog_list, filiform, heisenberg, sl2, strictly_upper, Payload};
use klein_core::checks::{
    check_bracket_grading, check_central_series_meet, check_nilpotent_order_bound, check_semisimple_order,
    check_witness_chain,
};
use klein_core::jets::{abstract_pair, check_jet_agreement, default_k_max, ActionFamily};
use klein_core::scalar::{add_vectors, int};
use klein_core::search::{enumerate_candidates, SearchConfig};
use klein_core::tower::{check_derived_lower_bound, check_tower, lemma8_pair, normalizer_tower};
use klein_core::{
    classify, effectivity_radical, killing_form, order, validate_algebra, weisfeiler_filtration, KleinPair,
    LieAlgebra, Report, Status, Subspace,
};

type Outcome = Result<String, String>;

fn span(rows: &[&[i64]]) -> Subspace {
    let n = rows[0].len();
    let rows: Vec<_> = rows.iter().map(|r| r.iter().map(|&c| int(c)).collect()).collect();
    Subspace::span_of(&rows, n)
}

fn failures(report: &Report) -> Vec<String> {
    report
        .records
        .iter()
        .filter(|r| r.status == Status::Fail)
        .map(|r| format!("{} ({}): {}", r.check, r.inputs, r.computed))
        .collect()
}

fn klein(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_klein")).args(args).output().expect("run klein");
    (out.status.code().unwrap_or(-1), out.stdout)
}

/// Every pair and transitive action in the catalog, over all listed samples.
fn catalog_pairs() -> Vec<(String, KleinPair)> {
    let mut pairs = Vec::new();
    for info in catalog_list() {
        for params in &info.samples {
            let entry = catalog_get(info.key, params).expect("catalog sample");
            let name = format!("{}{:?}", info.key, params);
            match entry.payload {
                Payload::Pair(p) => pairs.push((name, p)),
                Payload::Action(f) => {
                    if f.is_transitive() {
                        pairs.push((name, abstract_pair(&f).expect("transitive action")));
                    }
                }
                Payload::Algebra(_) => {}
            }
        }
    }
    pairs
}

struct SweepItem {
    pair: KleinPair,
    nilpotent: bool,
}

struct Sweep {
    candidates: usize,
    subalgebras: Vec<SweepItem>,
}

fn sweep_algebras() -> Vec<LieAlgebra> {
    vec![heisenberg(3).unwrap(), filiform(4).unwrap(), filiform(5).unwrap(), strictly_upper(4).unwrap()]
}

fn run_sweep() -> Sweep {
    let mut candidates = 0;
    let mut subalgebras = Vec::new();
    for alg in sweep_algebras() {
        let nilpotent = classify(&alg).is_nilpotent;
        let cfg = SearchConfig::new(alg.clone());
        let stream = enumerate_candidates(&cfg).expect("valid config");
        let all: Vec<Subspace> = stream.collect();
        candidates += all.len();
        let found: Vec<SweepItem> = all
            .into_par_iter()
            .filter(|c| alg.is_subalgebra(c))
            .map(|c| SweepItem { pair: KleinPair::new(alg.clone(), c).unwrap(), nilpotent })
            .collect();
        subalgebras.extend(found);
    }
    Sweep { candidates, subalgebras }
}

fn c1_sl2_borel() -> Outcome {
    let pair = KleinPair::new(sl2(), span(&[&[0, 1, 0], &[0, 0, 1]])).map_err(|e| e.to_string())?;
    let r = order(&pair).map_err(|e| e.to_string())?;
    let f = weisfeiler_filtration(&pair);
    let mut chain = vec![f.ambient().clone()];
    chain.extend(f.terms().iter().cloned());
    let expected = vec![
        span(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        span(&[&[0, 1, 0], &[0, 0, 1]]),
        span(&[&[0, 0, 1]]),
        Subspace::zero(3),
    ];
    if r == 2 && chain == expected {
        Ok("order 2, filtration [sl2, span(H, Y), span(Y), 0]".into())
    } else {
        Err(format!("order {r}, filtration {:?}", chain.iter().map(|s| s.display(pair.algebra().labels()).to_string()).collect::<Vec<_>>()))
    }
}

fn c2_jets() -> Outcome {
    let fams: Vec<(&str, ActionFamily, usize)> = vec![
        ("sl2_line at 0", klein_core::catalog::sl2_line(0), 2),
        ("sl2_line at 1", klein_core::catalog::sl2_line(1), 2),
        ("affine_line", klein_core::catalog::affine_line(0), 1),
        ("translations(2)", klein_core::catalog::translations(2), 0),
    ];
    let mut seen = Vec::new();
    for (name, fam, want) in fams {
        let report = check_jet_agreement(&fam, default_k_max(&fam)).map_err(|e| format!("{name}: {e}"))?;
        let bad = failures(&report);
        if !bad.is_empty() {
            return Err(format!("{name}: {}", bad.join("; ")));
        }
        let r = order(&abstract_pair(&fam).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let jet_rec = report.find("jet-order").ok_or("no jet-order record")?;
        if r != want || jet_rec.computed != format!("r = {want}") {
            return Err(format!("{name}: r = {r}, jet record {:?}, expected {want}", jet_rec.computed));
        }
        seen.push(format!("{name} r={r}"));
    }
    Ok(seen.join(", "))
}

fn c3_bracket_grading(sweep: &Sweep) -> Outcome {
    let catalog = catalog_pairs();
    let from_catalog: Vec<String> =
        catalog.par_iter().flat_map(|(n, p)| failures(&check_bracket_grading(p)).into_par_iter().map(move |f| format!("{n}: {f}"))).collect();
    let from_sweep: Vec<String> =
        sweep.subalgebras.par_iter().flat_map(|s| failures(&check_bracket_grading(&s.pair))).collect();
    let violations = from_catalog.len() + from_sweep.len();
    if violations == 0 {
        Ok(format!(
            "{} catalog pairs, {} sweep subalgebras ({} candidates), 0 violations",
            catalog.len(),
            sweep.subalgebras.len(),
            sweep.candidates
        ))
    } else {
        Err(format!("{violations} violations, first: {}", from_catalog.iter().chain(&from_sweep).next().unwrap()))
    }
}

fn c4_nilpotent_bound(sweep: &Sweep) -> Outcome {
    let results: Vec<Result<bool, String>> = sweep
        .subalgebras
        .par_iter()
        .filter(|s| s.nilpotent && effectivity_radical(&s.pair).is_zero())
        .map(|s| match check_nilpotent_order_bound(&s.pair) {
            Ok(r) => Ok(failures(&r).is_empty()),
            Err(e) => Err(e.to_string()),
        })
        .collect();
    let checked = results.len();
    let violations: Vec<_> = results.into_iter().filter(|r| r != &Ok(true)).collect();
    if checked > 0 && violations.is_empty() {
        Ok(format!("{checked} effective pairs, order <= nil-length + 1 for all"))
    } else {
        Err(format!("{checked} checked, {} violations: {:?}", violations.len(), violations.first()))
    }
}

fn c5_central_meet(sweep: &Sweep) -> Outcome {
    let results: Vec<Result<bool, String>> = sweep
        .subalgebras
        .par_iter()
        .filter(|s| matches!(order(&s.pair), Ok(r) if r >= 1))
        .map(|s| match check_central_series_meet(&s.pair) {
            Ok(r) => Ok(failures(&r).is_empty()),
            Err(e) => Err(e.to_string()),
        })
        .collect();
    let checked = results.len();
    let violations: Vec<_> = results.into_iter().filter(|r| r != &Ok(true)).collect();
    if checked > 0 && violations.is_empty() {
        Ok(format!("{checked} effective pairs with r >= 1, stabilizer meets g_(r-1) in all"))
    } else {
        Err(format!("{checked} checked, {} violations: {:?}", violations.len(), violations.first()))
    }
}

fn c6_radical_agreement(sweep: &Sweep) -> Outcome {
    let disagreements = sweep
        .subalgebras
        .par_iter()
        .filter(|s| &effectivity_radical(&s.pair) != weisfeiler_filtration(&s.pair).terminal())
        .count();
    let effective = sweep.subalgebras.par_iter().filter(|s| effectivity_radical(&s.pair).is_zero()).count();
    let total = sweep.subalgebras.len();
    if disagreements == 0 {
        Ok(format!("{total}/{total} subalgebras agree ({effective} effective, {} not)", total - effective))
    } else {
        Err(format!("{disagreements} of {total} disagree"))
    }
}

fn tower_algebras() -> Vec<LieAlgebra> {
    vec![heisenberg(3).unwrap(), filiform(4).unwrap(), filiform(5).unwrap(), filiform(6).unwrap()]
}

fn c7_lemma8() -> Outcome {
    let mut seen = Vec::new();
    for alg in tower_algebras() {
        let t = lemma8_pair(&alg).map_err(|e| format!("{}: {e}", alg.name()))?;
        let strict = t.terms.windows(2).all(|w| w[0].dim() < w[1].dim() && w[0].is_subspace_of(&w[1]));
        let bad = failures(&check_tower(&alg, &t));
        let n_checks = check_tower(&alg, &t).count(Status::Pass);
        if !strict || !bad.is_empty() || n_checks != 5 {
            return Err(format!("{}: strict {strict}, failures {bad:?}", alg.name()));
        }
        seen.push(format!("{} ({} terms)", alg.name(), t.terms.len()));
    }
    Ok(seen.join(", "))
}

fn c8_derived_bound() -> Outcome {
    let mut effective = 0;
    let mut skipped = 0;
    for alg in tower_algebras() {
        let n = alg.dim();
        let mut seeds: Vec<_> = (0..n).map(|i| alg.basis_vector(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                seeds.push(add_vectors(&alg.basis_vector(i), &alg.basis_vector(j)));
            }
        }
        for seed in seeds {
            let Ok(t) = normalizer_tower(&alg, &seed) else { continue };
            let pair = KleinPair::new(alg.clone(), t.k_sub.clone()).map_err(|e| e.to_string())?;
            if !effectivity_radical(&pair).is_zero() {
                skipped += 1;
                continue;
            }
            let report = check_derived_lower_bound(&alg, &t.k_sub, &t.h_sub).map_err(|e| format!("{}: {e}", alg.name()))?;
            let bad = failures(&report);
            if !bad.is_empty() || report.find("order-bounds-derived-length").is_none() {
                return Err(format!("{}: {bad:?}", alg.name()));
            }
            effective += 1;
        }
    }
    if effective == 0 {
        return Err("no effective tower pair found".into());
    }
    Ok(format!("{effective} effective tower pairs, 0 violations ({skipped} non-effective skipped)"))
}

fn c9_witness() -> Outcome {
    let mut checked = 0;
    for (name, pair) in catalog_pairs() {
        match order(&pair) {
            Ok(r) if r >= 1 => {
                let report = check_witness_chain(&pair).map_err(|e| format!("{name}: {e}"))?;
                let bad = failures(&report);
                if !bad.is_empty() || report.find("witness-terminal-membership").is_none() {
                    return Err(format!("{name}: {bad:?}"));
                }
                checked += 1;
            }
            _ => {}
        }
    }
    if checked == 0 {
        return Err("no effective catalog pair with r >= 1".into());
    }
    Ok(format!("{checked} effective catalog pairs, 0 violations"))
}

fn c10_killing_and_semisimple() -> Outcome {
    let k = killing_form(&sl2());
    let expected = [[0, 0, 4], [0, 8, 0], [4, 0, 0]];
    for (i, row) in expected.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if k[i][j] != int(v) {
                return Err(format!("sl2 K[{i}][{j}] = {}", k[i][j]));
            }
        }
    }
    let kh = killing_form(&heisenberg(3).unwrap());
    if kh.iter().flatten().any(|v| v != &int(0)) {
        return Err("h3 Killing form is nonzero".into());
    }
    let sa2 = catalog_get("sa2_sl2", &[]).map_err(|e| e.to_string())?;
    let Payload::Pair(sa2_pair) = sa2.payload else { return Err("sa2_sl2 is not a pair".into()) };
    let r = order(&sa2_pair).map_err(|e| e.to_string())?;
    let report = check_semisimple_order(&sa2_pair).map_err(|e| e.to_string())?;
    let asserted = report.find("semisimple-stabilizer-order").map(|r| r.status);
    if r != 1 || asserted != Some(Status::Pass) {
        return Err(format!("order(sa2, sl2) = {r}, stabilizer clause {asserted:?}"));
    }
    let (code, out) = klein(&["verify", "prop5", "catalog:sl2_borel"]);
    let text = String::from_utf8_lossy(&out);
    let finding = text.lines().any(|l| l.starts_with("[finding] semisimple-algebra-order") && l.contains("order 2"));
    if code != 0 || !finding {
        return Err(format!("verify prop5 on sl2 Borel: exit {code}, finding {finding}"));
    }
    Ok("sl2 K(H,H)=8, K(X,Y)=4, h3 K=0; order(sa2, sl2)=1; algebra clause emitted as finding, exit 0".into())
}

fn c11_jacobi_rejection() -> Outcome {
    // h3 with the extra bracket [e1,e3] = e2.
    let perturbed = LieAlgebra::from_sparse(
        "h3 perturbed",
        &["e1", "e2", "e3"],
        &[(0, 1, &[(2, 1)]), (0, 2, &[(1, 1)])],
    )
    .map_err(|e| e.to_string())?;
    let v = validate_algebra(&perturbed);
    let named = v.violations.iter().any(|x| x.triple == (0, 1, 2));
    if !v.ok && named {
        Ok("fixture rejected on (e1, e2, e3)".into())
    } else {
        Err(format!(
            "fixture [e1,e2]=e3, [e1,e3]=e2 satisfies Jacobi (ok={}, {} violations); Jacobi sum on (e1,e2,e3) is [e2,-e2] + [e3,e3] = 0",
            v.ok,
            v.violations.len()
        ))
    }
}

fn c11b_jacobi_rejection_corrected() -> Outcome {
    // h3 with the extra bracket [e1,e3] = e1, which breaks Jacobi.
    let perturbed = LieAlgebra::from_sparse(
        "h3 perturbed",
        &["e1", "e2", "e3"],
        &[(0, 1, &[(2, 1)]), (0, 2, &[(0, 1)])],
    )
    .map_err(|e| e.to_string())?;
    let v = validate_algebra(&perturbed);
    if !v.ok && v.violations.iter().any(|x| x.triple == (0, 1, 2)) {
        Ok("[e1,e3]=e1 variant rejected on (e1, e2, e3)".into())
    } else {
        Err(format!("ok={}, violations {:?}", v.ok, v.violations.iter().map(|x| x.triple).collect::<Vec<_>>()))
    }
}

fn c12_search_determinism() -> Outcome {
    let mut outputs = Vec::new();
    for format in ["text", "json"] {
        let run = |w: &str| {
            klein(&[
                "search", "--algebra", "catalog:sl2", "--stab-dim", "1,2", "--grid", "-2..2", "--workers", w, "--format",
                format,
            ])
        };
        let (c1, o1) = run("1");
        let (c8, o8) = run("8");
        if c1 != 0 || c8 != 0 {
            return Err(format!("{format}: exit codes {c1}, {c8}"));
        }
        if o1 != o8 {
            return Err(format!("{format} reports differ between 1 and 8 workers"));
        }
        outputs.push(o1);
    }
    let json: serde_json::Value = serde_json::from_slice(&outputs[1]).map_err(|e| e.to_string())?;
    let max = json["max_order"].as_u64();
    let borel = json["hits"].as_array().into_iter().flatten().any(|h| {
        h["order"].as_u64() == Some(2) && h["stabilizer"].as_str() == Some("span(H, Y)")
    });
    if max == Some(2) && borel {
        Ok("byte-identical text and JSON for 1 and 8 workers; max order 2 with witness span(H, Y)".into())
    } else {
        Err(format!("max order {max:?}, Borel witness {borel}"))
    }
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |label: &str, start: Instant, outcome: Outcome| {
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Ok(d) if secs < 60.0 => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took {secs:.1}s, limit 60s")),
            Err(d) => ("FAIL", d),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("criterion {label:>3}: {tag} [{secs:.2}s] {detail}");
    };

    let t = Instant::now();
    report("1", t, c1_sl2_borel());
    let t = Instant::now();
    report("2", t, c2_jets());

    let t = Instant::now();
    let sweep = run_sweep();
    let sweep_time = t.elapsed();
    let timed = |f: fn(&Sweep) -> Outcome| {
        let t = Instant::now();
        let o = f(&sweep);
        (t.checked_sub(sweep_time).unwrap_or(t), o)
    };
    let (t, o) = timed(c3_bracket_grading);
    report("3", t, o);
    let (t, o) = timed(c4_nilpotent_bound);
    report("4", t, o);
    let (t, o) = timed(c5_central_meet);
    report("5", t, o);
    let (t, o) = timed(c6_radical_agreement);
    report("6", t, o);

    let t = Instant::now();
    report("7", t, c7_lemma8());
    let t = Instant::now();
    report("8", t, c8_derived_bound());
    let t = Instant::now();
    report("9", t, c9_witness());
    let t = Instant::now();
    report("10", t, c10_killing_and_semisimple());
    let t = Instant::now();
    report("11", t, c11_jacobi_rejection());
    let t = Instant::now();
    report("11b", t, c11b_jacobi_rejection_corrected());
    let t = Instant::now();
    report("12", t, c12_search_determinism());

    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criterion line(s) failed");
        ExitCode::FAILURE
    }
}
