//! Acceptance criteria, one printed line each. Exits nonzero if any fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use asg_core::combinatorics::catalan;
use asg_core::lemmas::{det3_expected, det3_weights, distance_witness, theorem_distance};
use asg_core::{GaloisField, LinearCode, Variant, DEFAULT_BUDGET};
use asg_verifier::{run_lemma_checks, run_verify_tables, Status, SuiteParams, VerificationReport};

const WORKERS: usize = 4;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn field(q: u64) -> Arc<GaloisField> {
    Arc::new(GaloisField::from_order(q).expect("prime power"))
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Every check whose name starts with one of `prefixes` must pass, and at least one must exist.
fn require(report: &VerificationReport, prefixes: &[&str]) -> Result<usize, String> {
    let mut seen = 0;
    for c in &report.checks {
        if prefixes.iter().any(|p| c.name.starts_with(p)) {
            seen += 1;
            if c.status != Status::Pass {
                return Err(format!(
                    "{} is {}: computed {}, expected {}",
                    c.name,
                    c.status,
                    c.computed.as_deref().unwrap_or("-"),
                    c.expected
                ));
            }
        }
    }
    ensure(seen > 0, format!("no checks named {prefixes:?}"))?;
    Ok(seen)
}

fn suite(name: &str, ell: Option<Vec<usize>>, q_list: Option<Vec<u32>>) -> Result<VerificationReport, String> {
    let params = SuiteParams { ell, q_list, workers: WORKERS, ..SuiteParams::default() };
    run_lemma_checks(name, &params).map_err(|e| e.to_string())
}

fn dimension() -> Outcome {
    let mut cases = 0;
    for ell in 1..=4usize {
        let qs: &[u64] = if ell <= 3 { &[2, 3, 4, 5] } else { &[2, 3] };
        for &q in qs {
            let code =
                LinearCode::build(ell, field(q), Variant::Symplectic, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let expected = catalan(ell as u64 + 1) as usize;
            ensure(code.dimension() == expected, format!("ell={ell} q={q}: rank {} != {expected}", code.dimension()))?;
            cases += 1;
        }
    }
    Ok(format!("rank = Catalan(l+1) = 2, 5, 14, 42 in {cases} cases"))
}

fn min_distance() -> Outcome {
    let run = run_verify_tables(2, &[2, 3, 4, 5, 7, 8, 9], DEFAULT_BUDGET, WORKERS).map_err(|e| e.to_string())?;
    let expected = [2u64, 15, 44, 95, 287, 440, 639];
    for (row, &d) in run.rows.iter().zip(&expected) {
        ensure(row.d_exhaustive == Some(d), format!("ell=2 q={}: exhaustive {:?} != {d}", row.q, row.d_exhaustive))?;
        let table = run.report.find(&format!("table-d ell=2 q={}", row.q)).ok_or("missing table check")?;
        if row.q <= 3 {
            ensure(
                table.status == Status::Pass && row.discrepancy.is_empty(),
                format!("q={}: printed row should agree", row.q),
            )?;
        } else {
            ensure(
                table.status == Status::Fail && row.discrepancy.contains("table d"),
                format!("q={}: printed d {:?} not flagged", row.q, row.d_table),
            )?;
        }
    }
    let run3 = run_verify_tables(3, &[2, 3], DEFAULT_BUDGET, WORKERS).map_err(|e| e.to_string())?;
    let ds: Vec<Option<u64>> = run3.rows.iter().map(|r| r.d_exhaustive).collect();
    ensure(ds == [Some(16), Some(405)], format!("ell=3 exhaustive {ds:?}"))?;
    require(&run3.report, &["table-d", "d-exhaustive"])?;
    Ok("l=2: 2, 15, 44, 95, 287, 440, 639 (printed rows q>=4 flagged); l=3: 16, 405".into())
}

fn witness() -> Outcome {
    let mut cases = Vec::new();
    for ell in [2usize, 3] {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            cases.push((ell, q));
        }
    }
    cases.extend([(4, 2), (4, 3)]);
    for &(ell, q) in &cases {
        let w = distance_witness(field(q), ell).and_then(|f| f.weight(DEFAULT_BUDGET)).map_err(|e| e.to_string())?;
        let d = theorem_distance(ell as u64, q);
        ensure(w as u128 == d, format!("ell={ell} q={q}: witness weight {w} != {d}"))?;
    }
    Ok(format!("wt(det_12,12 + det_1,2) = q^d - q^(d-1) - q^(d-2) in {} cases", cases.len()))
}

fn full_determinant() -> Outcome {
    let mut seen = Vec::new();
    for q in [2u64, 3] {
        let (det, shifted) = det3_weights(field(q), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let (ed, es) = det3_expected(q);
        ensure(det == ed, format!("q={q}: wt(det) {det} != {ed}"))?;
        ensure(shifted.iter().all(|&w| w == es), format!("q={q}: wt(det + c) {shifted:?} != {es}"))?;
        seen.push(format!("q={q}: {det}, {es}"));
    }
    Ok(seen.join("; "))
}

fn fullrank() -> Outcome {
    let r = suite("fullrank-count", Some(vec![1, 2, 3]), Some(vec![2, 3, 4, 5]))?;
    let n = require(&r, &["fullrank-count"])?;
    Ok(format!("{n} (l, q) counts match the closed formula"))
}

fn duality() -> Outcome {
    let r = suite("duality", None, None)?;
    let n = require(&r, &["dual-distance", "dual-witness"])?;
    for (name, d) in [
        ("dual-distance ell=2 q=2", "4"),
        ("dual-distance ell=2 q=3", "3"),
        ("dual-distance ell=2 q=4", "3"),
        ("dual-distance ell=2 q=5", "3"),
        ("dual-distance ell=3 q=2", "4"),
        ("dual-distance ell=3 q=3", "3"),
    ] {
        let c = r.find(name).ok_or(format!("missing {name}"))?;
        ensure(c.computed.as_deref() == Some(d), format!("{name}: {:?}", c.computed))?;
    }
    Ok(format!("{n} dual distance and witness checks"))
}

fn puncture() -> Outcome {
    let r = suite("puncture", Some(vec![2]), Some(vec![2, 3]))?;
    let r3 = suite("puncture", Some(vec![3]), Some(vec![2]))?;
    let n = require(&r, &["puncture ell="])? + require(&r3, &["puncture ell="])?;
    Ok(format!("{n} punctured affine codes equal the symplectic code"))
}

fn automorphisms() -> Outcome {
    let r = suite("automorphism", Some(vec![2, 3]), Some(vec![2, 3]))?;
    ensure(r.parameters.samples == Some(100), "expected 100 samples per case")?;
    let n = require(&r, &["automorphism-random", "automorphism-swap"])?;
    Ok(format!("{n} checks: 100 random (A, S) preserved per case, a swap fails in each"))
}

fn property_suites() -> Outcome {
    let mut total = 0;
    for (name, q_list, prefixes) in [
        ("hyperbolic", None, &["hyperbolic"][..]),
        ("quadratic-system", None, &["quadratic-system"][..]),
        ("char2-quadratic", None, &["char2-unique-root"][..]),
        ("classifier-l2", Some(vec![2, 3, 4, 5]), &["classifier-l2", "linear-case-l2"][..]),
        ("algebra", None, &["leading-terms", "normal-form", "action-composition", "action-weight-grade"][..]),
        ("duality", Some(vec![2]), &["macwilliams"][..]),
    ] {
        let ell = (name == "duality").then(|| vec![2]);
        let r = suite(name, ell, q_list)?;
        total += require(&r, prefixes)?;
    }
    Ok(format!("{total} lemma-level checks"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("dimension equals Catalan(l+1)", dimension),
        ("exhaustive minimum distance", min_distance),
        ("witness weight", witness),
        ("exact full-determinant weights for l=3", full_determinant),
        ("full-rank symmetric matrix counts", fullrank),
        ("dual distance and dual witnesses", duality),
        ("puncturing the affine Grassmann code", puncture),
        ("automorphisms", automorphisms),
        ("lemma-level property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {}: PASS {name}: {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {msg} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
