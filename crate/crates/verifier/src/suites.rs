//! Named lemma-level check suites.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;
use std::time::Instant;

use asg_core::code::weight;
use asg_core::combinatorics::catalan;
use asg_core::dual::{
    dual_code, dual_low_weight_scan, dual_weight_enumerator, dual_witness_check, macwilliams_transform, DualWitness,
};
use asg_core::lemmas::{
    classify_l2, det3_expected, det3_weights, full_determinant_bound, hyperbolic_tally, linear_case_l2,
    quadratic_system_max_solutions, spread_bound, squares_unique,
};
use asg_core::minors::act_in;
use asg_core::poly::{expand_to_polynomial, Monomial, Polynomial};
use asg_core::symmetric::{count_fullrank_symmetric, doset_pairs, enumerate_symmetric, DEFAULT_BUDGET};
use asg_core::weights::{min_distance_exhaustive, weight_enumerator, SearchOptions};
use asg_core::{GaloisField, LinearCode, Matrix, MinorCombination, MinorPair, Mode, SymMatrix, Variant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, VerifyError};
use crate::report::{Check, Parameters, Source, VerificationReport};

pub const SUITES: [&str; 10] = [
    "hyperbolic",
    "quadratic-system",
    "char2-quadratic",
    "fullrank-count",
    "classifier-l2",
    "specdet3-l3",
    "automorphism",
    "puncture",
    "duality",
    "algebra",
];

/// Suite inputs. `None` selects the suite's default cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    pub ell: Option<Vec<usize>>,
    pub q_list: Option<Vec<u32>>,
    pub budget: u128,
    pub workers: usize,
    pub seed: u64,
    pub samples: Option<usize>,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { ell: None, q_list: None, budget: DEFAULT_BUDGET, workers: 1, seed: 0x5eed, samples: None }
    }
}

/// Default `(ℓ, q)` cases and sample count per suite.
fn default_cases(suite: &str) -> (Vec<(usize, u32)>, usize) {
    let with = |ells: &[usize], qs: &[u32]| -> Vec<(usize, u32)> {
        ells.iter().flat_map(|&l| qs.iter().map(move |&q| (l, q))).collect()
    };
    match suite {
        "hyperbolic" => (with(&[0], &[2, 3, 4, 5, 7, 8, 9]), 0),
        "quadratic-system" => (with(&[3], &[3, 5, 7, 9]), 0),
        "char2-quadratic" => (with(&[0], &[2, 4, 8, 16]), 0),
        "fullrank-count" => (with(&[1, 2, 3], &[2, 3, 4, 5]), 0),
        "classifier-l2" => (with(&[2], &[2, 3, 4, 5]), 0),
        "specdet3-l3" => (with(&[3], &[2, 3]), 10_000),
        "automorphism" => (with(&[2, 3], &[2, 3]), 100),
        "puncture" => (with(&[2, 3], &[2, 3]), 0),
        "duality" => {
            let mut cases = with(&[2], &[2, 3, 4, 5]);
            cases.extend(with(&[3], &[2, 3]));
            (cases, 0)
        }
        "algebra" => (with(&[1, 2, 3, 4], &[2, 3, 4, 5]), 40),
        _ => (Vec::new(), 0),
    }
}

fn resolve(suite: &str, params: &SuiteParams) -> (Vec<(usize, u32)>, usize) {
    let (defaults, samples) = default_cases(suite);
    let ells: Vec<usize> = match &params.ell {
        Some(e) => e.clone(),
        None => defaults.iter().map(|c| c.0).collect::<BTreeSet<_>>().into_iter().collect(),
    };
    let cases = match (&params.ell, &params.q_list) {
        (None, None) => defaults,
        (_, Some(qs)) => ells.iter().flat_map(|&l| qs.iter().map(move |&q| (l, q))).collect(),
        (Some(_), None) => defaults.into_iter().filter(|c| ells.contains(&c.0)).collect(),
    };
    (cases, params.samples.unwrap_or(samples))
}

/// Runs one named suite, or every suite for `"all"`.
pub fn run_lemma_checks(suite: &str, params: &SuiteParams) -> Result<VerificationReport> {
    if suite == "all" {
        let mut all = VerificationReport::new("check all", base_parameters(params, &[], 0));
        for s in SUITES {
            all.extend(run_lemma_checks(s, params)?);
        }
        return Ok(all);
    }
    if !SUITES.contains(&suite) {
        return Err(VerifyError::UnknownSuite(suite.to_string()));
    }
    let started = Instant::now();
    let (cases, samples) = resolve(suite, params);
    let mut report = VerificationReport::new(format!("check {suite}"), base_parameters(params, &cases, samples));
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let ctx = Ctx { budget: params.budget, workers: params.workers.max(1), samples };
    for &(ell, q) in &cases {
        let field = Arc::new(GaloisField::from_order(q as u64)?);
        match suite {
            "hyperbolic" => hyperbolic(&mut report, &field),
            "quadratic-system" => quadratic_system(&mut report, &field, ell, &ctx),
            "char2-quadratic" => char2(&mut report, &field),
            "fullrank-count" => fullrank(&mut report, &field, ell, &ctx),
            "classifier-l2" => classifier(&mut report, field, &ctx),
            "specdet3-l3" => specdet3(&mut report, field, &ctx, &mut rng),
            "automorphism" => automorphism(&mut report, field, ell, &ctx, &mut rng),
            "puncture" => puncture(&mut report, field, ell, &ctx),
            "duality" => duality(&mut report, field, ell, &ctx),
            "algebra" => algebra(&mut report, field, ell, &ctx, &mut rng),
            _ => unreachable!("suite names are validated above"),
        }
    }
    report.elapsed_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}

fn base_parameters(params: &SuiteParams, cases: &[(usize, u32)], samples: usize) -> Parameters {
    let ell: BTreeSet<usize> = cases.iter().map(|c| c.0).filter(|&l| l > 0).collect();
    let mut q_list: Vec<u32> = Vec::new();
    for c in cases {
        if !q_list.contains(&c.1) {
            q_list.push(c.1);
        }
    }
    Parameters {
        ell: ell.into_iter().collect(),
        q_list,
        budget: params.budget,
        workers: params.workers.max(1),
        seed: Some(params.seed),
        samples: (samples > 0).then_some(samples),
    }
}

struct Ctx {
    budget: u128,
    workers: usize,
    samples: usize,
}

impl Ctx {
    fn opts(&self) -> SearchOptions {
        SearchOptions { workers: self.workers, budget: self.budget }
    }
}

fn build(
    report: &mut VerificationReport,
    name: &str,
    anchor: &str,
    field: Arc<GaloisField>,
    ell: usize,
    variant: Variant,
    ctx: &Ctx,
) -> Option<LinearCode> {
    match LinearCode::build(ell, field, variant, ctx.budget) {
        Ok(c) => Some(c),
        Err(e) => {
            report.push(Check::new(name, anchor, Source::Enumeration, "code construction").error(&e));
            None
        }
    }
}

fn hyperbolic(report: &mut VerificationReport, f: &GaloisField) {
    let q = f.order() as u64;
    let anchor = "(T1 + a)(T2 + b) = lambda has 2q-1 solutions over F_q when lambda = 0 and q-1 otherwise";
    report.timed(|| {
        let t = hyperbolic_tally(f);
        Check::new(format!("hyperbolic-zero q={q}"), anchor, Source::Formula, 2 * q - 1)
            .outcome(range(t.zero), t.zero == (2 * q - 1, 2 * q - 1))
            .detail("min..max over all (a, b)")
    });
    report.timed(|| {
        let t = hyperbolic_tally(f);
        Check::new(format!("hyperbolic-nonzero q={q}"), anchor, Source::Formula, q - 1)
            .outcome(range(t.nonzero), t.nonzero == (q - 1, q - 1))
            .detail("min..max over all (a, b) and lambda != 0")
    });
}

fn range((lo, hi): (u64, u64)) -> String {
    if lo == hi {
        lo.to_string()
    } else {
        format!("{lo}..{hi}")
    }
}

fn quadratic_system(report: &mut VerificationReport, f: &GaloisField, max_vars: usize, ctx: &Ctx) {
    let q = f.order();
    let anchor = "T_i^2 = a_i, T_i T_j = b_{i,j} has at most 2 solutions";
    for n in 1..=max_vars.max(1) {
        let name = format!("quadratic-system vars={n} q={q}");
        report.timed(|| {
            let check = Check::new(name, anchor, Source::Bound, "<= 2");
            if f.characteristic() == 2 {
                return check.detail("odd characteristic only").outcome("not applicable", true);
            }
            match quadratic_system_max_solutions(f, n, ctx.budget) {
                Ok(m) => check.outcome(m, m <= 2),
                Err(e) => check.error(&e),
            }
        });
    }
}

fn char2(report: &mut VerificationReport, f: &GaloisField) {
    let q = f.order();
    report.timed(|| {
        let check = Check::new(
            format!("char2-unique-root q={q}"),
            "x^2 = c has a unique solution in GF(2^k)",
            Source::Formula,
            "unique root for every c",
        );
        if f.characteristic() != 2 {
            // Odd characteristic is a control: the statement is expected to fail there.
            let unique = squares_unique(f);
            return check
                .outcome(if unique { "unique" } else { "not unique" }, !unique)
                .detail("control case in odd characteristic");
        }
        let unique = squares_unique(f);
        check.outcome(if unique { "unique root for every c" } else { "some c without a unique root" }, unique)
    });
}

fn fullrank(report: &mut VerificationReport, f: &GaloisField, ell: usize, ctx: &Ctx) {
    let q = f.order();
    report.timed(|| {
        let check = Check::new(
            format!("fullrank-count ell={ell} q={q}"),
            "the number of symmetric n x n matrices of full rank",
            Source::Formula,
            asg_core::symmetric::fullrank_formula(ell, q),
        );
        match count_fullrank_symmetric(ell, f, ctx.budget) {
            Ok((counted, formula)) => check.outcome(counted, counted == formula),
            Err(e) => check.error(&e),
        }
    });
}

fn classifier(report: &mut VerificationReport, field: Arc<GaloisField>, ctx: &Ctx) {
    let q = field.order() as u64;
    let anchor = "then wt(f) >= q^3 - q^2 - q";
    let Some(code) = build(report, &format!("classifier-l2 q={q}"), anchor, field, 2, Variant::Symplectic, ctx) else {
        return;
    };
    let branch = if q.is_multiple_of(2) { "f_{1,2} = 0" } else { "(f_{1,2}/2)^2 - f_{1,1} f_{2,2} + f_0 = 0" };
    report.timed(|| {
        let check = Check::new(
            format!("classifier-l2 q={q}"),
            anchor,
            Source::Bound,
            format!(">= {} when {branch}, >= {} otherwise", q * q * q - q * q, q * q * q - q * q - q),
        );
        match classify_l2(&code) {
            Ok(r) => check.outcome(
                format!(
                    "{} functions, {} violations, min {} / {}",
                    r.functions,
                    r.violations,
                    opt(r.min_weight_high),
                    opt(r.min_weight_low)
                ),
                r.violations == 0 && r.functions == q.pow(4),
            ),
            Err(e) => check.error(&e),
        }
    });
    report.timed(|| {
        let check = Check::new(
            format!("linear-case-l2 q={q}"),
            "if f_{12,12} = 0 then wt(f) >= q^3 - q^2",
            Source::Bound,
            format!(">= {}", q * q * q - q * q),
        );
        match linear_case_l2(&code) {
            Ok((count, min)) => check
                .outcome(format!("{count} functions, min {min}"), min >= q * q * q - q * q && count == q.pow(4) - 1),
            Err(e) => check.error(&e),
        }
    });
}

fn opt(v: Option<u64>) -> String {
    v.map_or("-".into(), |x| x.to_string())
}

fn pair_index(code: &LinearCode, rows: &[usize], cols: &[usize]) -> usize {
    let p = MinorPair::one_based(rows, cols).expect("valid pair");
    code.basis().expect("built code").iter().position(|b| *b == p).expect("doset pair in basis")
}

fn specdet3(report: &mut VerificationReport, field: Arc<GaloisField>, ctx: &Ctx, rng: &mut ChaCha8Rng) {
    let q = field.order() as u64;
    let (det_w, shifted_w) = det3_expected(q);
    report.timed(|| {
        let check = Check::new(
            format!("det3-weight q={q}"),
            "wt(det_{123,123}) = q^6 - q^5 - q^3 + q^2",
            Source::Formula,
            det_w,
        );
        match det3_weights(field.clone(), ctx.budget) {
            Ok((w, _)) => check.outcome(w, w == det_w),
            Err(e) => check.error(&e),
        }
    });
    report.timed(|| {
        let check = Check::new(
            format!("det3-shifted-weight q={q}"),
            "wt(det_{123,123} + c) = q^6 - q^5 + q^2 for c != 0",
            Source::Formula,
            shifted_w,
        );
        match det3_weights(field.clone(), ctx.budget) {
            Ok((_, ws)) => {
                let set: BTreeSet<u64> = ws.iter().copied().collect();
                check.outcome(format!("{set:?}"), set == BTreeSet::from([shifted_w]))
            }
            Err(e) => check.error(&e),
        }
    });

    let Some(code) = build(
        report,
        &format!("full-determinant-bound q={q}"),
        FULL_DET_ANCHOR,
        field.clone(),
        3,
        Variant::Symplectic,
        ctx,
    ) else {
        return;
    };
    full_determinant(report, &code, ctx, rng);
    spread(report, &code, field, ctx, rng);
}

const FULL_DET_ANCHOR: &str = "wt(f) >= q^6 - q^5 - q^4 + q^3";

/// Every `f` with `det_{123,123}` in its support: exhaustive for q = 2, sampled otherwise.
fn full_determinant(report: &mut VerificationReport, code: &LinearCode, ctx: &Ctx, rng: &mut ChaCha8Rng) {
    let q = code.field().order() as u64;
    let k = code.rows();
    let top = pair_index(code, &[1, 2, 3], &[1, 2, 3]);
    let bound = full_determinant_bound(q);
    let exhaustive_total = (q as u128).pow(k as u32 - 1);
    let exhaustive = exhaustive_total <= ctx.samples as u128;
    report.timed(|| {
        let mut check =
            Check::new(format!("full-determinant-bound q={q}"), FULL_DET_ANCHOR, Source::Bound, format!(">= {bound}"));
        let mut min = u64::MAX;
        let mut worst = Vec::new();
        let mut tested = 0u128;
        let mut violations = 0u128;
        let mut visit = |msg: Vec<u32>| {
            let w = weight(&code.encode_message(&msg)) as u64;
            tested += 1;
            if w < bound {
                violations += 1;
            }
            if w < min {
                min = w;
                worst = msg;
            }
        };
        if exhaustive {
            for idx in 0..exhaustive_total {
                let mut x = idx;
                let msg: Vec<u32> = (0..k)
                    .map(|i| {
                        if i == top {
                            1
                        } else {
                            let d = (x % q as u128) as u32;
                            x /= q as u128;
                            d
                        }
                    })
                    .collect();
                visit(msg);
            }
        } else {
            for _ in 0..ctx.samples {
                let msg: Vec<u32> = (0..k)
                    .map(|i| if i == top { rng.gen_range(1..q as u32) } else { rng.gen_range(0..q as u32) })
                    .collect();
                visit(msg);
            }
        }
        let how = if exhaustive { "exhaustive" } else { "random sample" };
        check = check.outcome(format!("min {min} over {tested} functions ({how})"), violations == 0);
        if violations > 0 {
            let f = code.decode(&code.encode_message(&worst)).map(|g| g.to_string().trim_end().replace('\n', "; "));
            check = check.detail(format!(
                "{violations} functions below the bound; minimum attained by {}",
                f.unwrap_or_else(|e| e.to_string())
            ));
        }
        check
    });
}

/// Random `f` whose maximal minors all have size 2, against `q^3 · w_{2,2}`.
fn spread(
    report: &mut VerificationReport,
    code: &LinearCode,
    field: Arc<GaloisField>,
    ctx: &Ctx,
    rng: &mut ChaCha8Rng,
) {
    let q = field.order() as u64;
    let anchor = "wt(f) >= q^{(l^2+l-k^2-k)/2}(w_{k,k})";
    let Some(small) =
        build(report, &format!("spread-bound ell=3 k=2 q={q}"), anchor, field, 2, Variant::Symplectic, ctx)
    else {
        return;
    };
    let name = format!("spread-bound ell=3 k=2 q={q}");
    let w22 = match min_distance_exhaustive(&small, ctx.opts()) {
        Ok(r) => r.d,
        Err(e) => return report.push(Check::new(name, anchor, Source::Bound, "").error(&e)),
    };
    let bound = spread_bound(3, 2, w22, q);
    report.timed(|| {
        let basis = code.basis().expect("built code");
        let size2: Vec<usize> = (0..basis.len()).filter(|&i| basis[i].size() == 2).collect();
        let mut min = u64::MAX;
        let mut tested = 0;
        while tested < ctx.samples {
            let msg: Vec<u32> =
                basis.iter().map(|p| if p.size() <= 2 { rng.gen_range(0..q as u32) } else { 0 }).collect();
            if size2.iter().all(|&i| msg[i] == 0) {
                continue;
            }
            min = min.min(weight(&code.encode_message(&msg)) as u64);
            tested += 1;
        }
        Check::new(name, anchor, Source::Bound, format!(">= {bound}"))
            .outcome(format!("min {min} over {tested} functions"), min >= bound)
            .detail(format!("w_{{2,2}} = {w22} by exhaustive search"))
    });
}

fn random_invertible(rng: &mut ChaCha8Rng, ell: usize, f: &GaloisField) -> Matrix {
    loop {
        let rows: Vec<Vec<u32>> = (0..ell).map(|_| (0..ell).map(|_| rng.gen_range(0..f.order())).collect()).collect();
        let m = Matrix::from_rows(&rows).expect("square");
        if m.det(f) != 0 {
            return m;
        }
    }
}

fn random_symmetric(rng: &mut ChaCha8Rng, ell: usize, f: &GaloisField) -> SymMatrix {
    let upper = (0..ell * (ell + 1) / 2).map(|_| rng.gen_range(0..f.order())).collect();
    SymMatrix::from_upper(ell, upper).expect("triangle length")
}

fn random_combination(rng: &mut ChaCha8Rng, code: &LinearCode) -> MinorCombination {
    let q = code.field().order();
    let terms = doset_pairs(code.ell()).into_iter().map(|p| (p, rng.gen_range(0..q)));
    MinorCombination::from_terms(code.field().clone(), code.ell(), terms).expect("doset terms")
}

fn automorphism(report: &mut VerificationReport, field: Arc<GaloisField>, ell: usize, ctx: &Ctx, rng: &mut ChaCha8Rng) {
    let q = field.order();
    let anchor = "X -> A^T X A and X -> X + M";
    let Some(code) = build(
        report,
        &format!("automorphism-random ell={ell} q={q}"),
        anchor,
        field.clone(),
        ell,
        Variant::Symplectic,
        ctx,
    ) else {
        return;
    };
    let f = &*field;
    report.timed(|| {
        let check = Check::new(
            format!("automorphism-random ell={ell} q={q}"),
            anchor,
            Source::Enumeration,
            format!("{} of {} preserved", ctx.samples, ctx.samples),
        );
        let mut preserved = 0;
        for _ in 0..ctx.samples {
            let a = random_invertible(rng, ell, f);
            let s = random_symmetric(rng, ell, f);
            match code.automorphism_check(&a, &s) {
                Ok(true) => preserved += 1,
                Ok(false) => {}
                Err(e) => return check.error(&e),
            }
        }
        check.outcome(format!("{preserved} of {} preserved", ctx.samples), preserved == ctx.samples)
    });
    report.timed(|| {
        let check = Check::new(
            format!("automorphism-swap ell={ell} q={q}"),
            "a transposition of two coordinates is not an automorphism",
            Source::Enumeration,
            "some swap fails membership",
        );
        let n = code.len();
        for j in 1..n {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(0, j);
            match code.preserved_by_permutation(&perm) {
                Ok(false) => {
                    return check.outcome(format!("swap of columns 0 and {j} fails membership"), true);
                }
                Ok(true) => {}
                Err(e) => return check.error(&e),
            }
        }
        check.outcome("every swap with column 0 preserves the code", false)
    });
}

fn puncture(report: &mut VerificationReport, field: Arc<GaloisField>, ell: usize, ctx: &Ctx) {
    let q = field.order();
    let anchor = "CH is obtained from CA by removing all matrices which are not symmetric";
    let name = format!("puncture ell={ell} q={q}");
    let Some(affine) = build(report, &name, anchor, field.clone(), ell, Variant::AffineGrassmann, ctx) else {
        return;
    };
    let Some(symplectic) = build(report, &name, anchor, field, ell, Variant::Symplectic, ctx) else {
        return;
    };
    report.timed(|| {
        let check = Check::new(name.clone(), anchor, Source::Enumeration, "row space equals the symplectic code");
        match affine.puncture_shorten(&affine.non_symmetric_columns(), Mode::Puncture) {
            Ok(p) => {
                let same = p.same_code_as(&symplectic);
                check.outcome(
                    format!("n {} k {} {}", p.len(), p.dimension(), if same { "equal" } else { "different" }),
                    same,
                )
            }
            Err(e) => check.error(&e),
        }
    });
    report.timed(|| {
        let check = Check::new(
            format!("puncture-empty ell={ell} q={q}"),
            "puncturing at no coordinates",
            Source::Enumeration,
            "identical code",
        );
        match symplectic.puncture_shorten(&[], Mode::Puncture) {
            Ok(p) => {
                let same = p.generator() == symplectic.generator();
                check.outcome(if same { "identical code" } else { "changed" }, same)
            }
            Err(e) => check.error(&e),
        }
    });
}

fn duality(report: &mut VerificationReport, field: Arc<GaloisField>, ell: usize, ctx: &Ctx) {
    let q = field.order();
    let Some(code) = build(
        report,
        &format!("dual-distance ell={ell} q={q}"),
        "d(C^perp)",
        field.clone(),
        ell,
        Variant::Symplectic,
        ctx,
    ) else {
        return;
    };
    let expected = if q == 2 { 4 } else { 3 };
    report.timed(|| {
        let check = Check::new(
            format!("dual-distance ell={ell} q={q}"),
            "d(C^perp) = 3 for q > 2 and 4 for q = 2",
            Source::Formula,
            expected,
        );
        match dual_low_weight_scan(&code, 4, ctx.budget) {
            Ok(s) => {
                let ok = s.min_weight == Some(expected) && s.witness.as_ref().is_some_and(|w| w.is_dual_of(&code));
                check.outcome(s.min_weight.map_or("none up to 4".to_string(), |w| w.to_string()), ok)
            }
            Err(e) => check.error(&e),
        }
    });
    if ell >= 2 {
        report.timed(|| {
            let (witness, anchor) = if q == 2 {
                (DualWitness::even_square(ell), "{0, E_{1,1}, E_{1,2}+E_{2,1}, E_{1,1}+E_{1,2}+E_{2,1}}")
            } else {
                (
                    DualWitness::scalar_line(ell, &field, 2),
                    "c_{I_1} = (-alpha/(alpha-1))c_0 and c_{alpha I_1} = (1/(alpha-1))c_0",
                )
            };
            let check = Check::new(format!("dual-witness ell={ell} q={q}"), anchor, Source::Formula, "parity holds");
            match witness.and_then(|w| dual_witness_check(&code, &w).map(|ok| (ok, w.weight()))) {
                Ok((ok, w)) => {
                    check.outcome(if ok { format!("parity holds, weight {w}") } else { "parity fails".into() }, ok)
                }
                Err(e) => check.error(&e),
            }
        });
    }
    if ell == 2 && q <= 3 {
        report.timed(|| {
            let n = code.len();
            let k = catalan(ell as u64 + 1) as usize;
            let check = Check::new(
                format!("dual-dimension ell={ell} q={q}"),
                "dim C^perp = n - C(l+1)",
                Source::Formula,
                n - k,
            );
            match dual_code(&code) {
                Ok(d) => check.outcome(d.dimension(), d.dimension() == n - k),
                Err(e) => check.error(&e),
            }
        });
    }
    if ell == 2 && q == 2 {
        report.timed(|| macwilliams(&code, ctx));
    }
}

fn macwilliams(code: &LinearCode, ctx: &Ctx) -> Check {
    let check = Check::new(
        "macwilliams ell=2 q=2",
        "MacWilliams identity",
        Source::Enumeration,
        "dual enumerator equals the transform of the primal one",
    );
    let (n, q) = (code.len(), code.field().order());
    let dense = |h: &std::collections::BTreeMap<u64, u128>| -> Vec<u128> {
        (0..=n as u64).map(|w| h.get(&w).copied().unwrap_or(0)).collect()
    };
    let primal = match weight_enumerator(code, ctx.opts()) {
        Ok(r) => r,
        Err(e) => return check.error(&e),
    };
    let dual = match dual_weight_enumerator(code, ctx.opts()) {
        Ok(r) => r,
        Err(e) => return check.error(&e),
    };
    match macwilliams_transform(&dense(&primal.histogram), n, q, primal.k) {
        Ok(t) => {
            let direct = dense(&dual.histogram);
            check.outcome(format!("{direct:?}"), t == direct && dual.k == n - primal.k)
        }
        Err(e) => check.error(&e),
    }
}

fn algebra(report: &mut VerificationReport, field: Arc<GaloisField>, ell: usize, ctx: &Ctx, rng: &mut ChaCha8Rng) {
    let q = field.order();
    let f = &*field;
    // Leading terms depend only on ℓ; the first listed field runs them.
    leading_terms(report, f, ell);
    if ell <= 2 && q <= 5 {
        normal_form(report, f, ell, ctx, rng);
    }
    if ell == 2 && q <= 5 {
        action(report, field.clone(), ctx, rng);
    }
}

fn leading_terms(report: &mut VerificationReport, f: &GaloisField, ell: usize) {
    let name = format!("leading-terms ell={ell}");
    if report.find(&name).is_some() {
        return;
    }
    report.timed(|| {
        let pairs = doset_pairs(ell);
        let check = Check::new(
            name,
            "doset minors have the identity-permutation monomial as leading term",
            Source::Formula,
            format!("{} distinct diagonal leading terms", pairs.len()),
        );
        let mut seen = HashSet::new();
        let mut diagonal = 0;
        for p in &pairs {
            let lt = match expand_to_polynomial(p, ell, f).map(|e| e.normal_form(f)) {
                Ok(nf) => match nf.leading_term() {
                    Ok(m) => m.clone(),
                    Err(e) => return check.error(&e),
                },
                Err(e) => return check.error(&e),
            };
            let diag =
                p.rows().iter().zip(p.cols()).fold(Monomial::one(ell), |m, (&i, &j)| m.mul(&Monomial::var(ell, i, j)));
            diagonal += usize::from(lt == diag);
            seen.insert(lt);
        }
        check.outcome(
            format!("{} distinct, {diagonal} diagonal", seen.len()),
            seen.len() == pairs.len() && diagonal == pairs.len(),
        )
    });
}

fn normal_form(report: &mut VerificationReport, f: &GaloisField, ell: usize, ctx: &Ctx, rng: &mut ChaCha8Rng) {
    let q = f.order();
    report.timed(|| {
        let check = Check::new(
            format!("normal-form ell={ell} q={q}"),
            "reduction modulo I_S is idempotent and preserves function values",
            Source::Enumeration,
            format!("{} of {} random polynomials", ctx.samples, ctx.samples),
        );
        let points = match enumerate_symmetric(ell, f, ctx.budget) {
            Ok(it) => it.collect::<Vec<_>>(),
            Err(e) => return check.error(&e),
        };
        let mut good = 0;
        for _ in 0..ctx.samples {
            let mut p = Polynomial::zero(ell);
            for _ in 0..rng.gen_range(0..6) {
                let exps = (0..ell * ell).map(|_| rng.gen_range(0..2 * q + 1)).collect();
                p.add_term(Monomial::from_exponents(ell, exps).expect("exponent count"), rng.gen_range(0..q), f);
            }
            let nf = p.normal_form(f);
            let same_values = points.iter().all(|m| nf.evaluate(m, f) == p.evaluate(m, f));
            good += usize::from(nf.normal_form(f) == nf && same_values);
        }
        check.outcome(format!("{good} of {} random polynomials", ctx.samples), good == ctx.samples)
    });
}

fn action(report: &mut VerificationReport, field: Arc<GaloisField>, ctx: &Ctx, rng: &mut ChaCha8Rng) {
    let q = field.order();
    let f = &*field;
    let Some(code) =
        build(report, &format!("action ell=2 q={q}"), "X -> A^T X A + S", field.clone(), 2, Variant::Symplectic, ctx)
    else {
        return;
    };
    report.timed(|| {
        let check = Check::new(
            format!("action-composition ell=2 q={q}"),
            "(A2, S2) after (A1, S1) acts as (A2 A1, A1^T S2 A1 + S1)",
            Source::Enumeration,
            format!("{0} of {0}", ctx.samples),
        );
        let mut good = 0;
        for _ in 0..ctx.samples {
            let g = random_combination(rng, &code);
            let (a1, a2) = (random_invertible(rng, 2, f), random_invertible(rng, 2, f));
            let (s1, s2) = (random_symmetric(rng, 2, f), random_symmetric(rng, 2, f));
            let outcome = (|| -> asg_core::Result<bool> {
                let stepwise = act_in(&code, &act_in(&code, &g, &a1, &s1)?, &a2, &s2)?;
                let direct = act_in(&code, &g, &a2.mul(&a1, f)?, &s2.congruence(&a1, &s1, f)?)?;
                Ok(stepwise == direct)
            })();
            match outcome {
                Ok(ok) => good += usize::from(ok),
                Err(e) => return check.error(&e),
            }
        }
        check.outcome(format!("{good} of {}", ctx.samples), good == ctx.samples)
    });
    report.timed(|| {
        let check = Check::new(
            format!("action-weight-grade ell=2 q={q}"),
            "wt(f) is invariant and X -> A^T X A preserves Fl_t",
            Source::Enumeration,
            format!("{0} of {0}", ctx.samples),
        );
        let mut good = 0;
        for _ in 0..ctx.samples {
            let g = random_combination(rng, &code);
            let a = random_invertible(rng, 2, f);
            let s = random_symmetric(rng, 2, f);
            let t = rng.gen_range(0..=2);
            let outcome = (|| -> asg_core::Result<bool> {
                let moved = act_in(&code, &g, &a, &s)?;
                let same_weight = moved.weight(ctx.budget)? == g.weight(ctx.budget)?;
                let graded = g.graded_part(t);
                let linear = act_in(&code, &graded, &a, &SymMatrix::zero(2))?;
                Ok(same_weight && linear.graded_part(t) == linear && linear.is_zero() == graded.is_zero())
            })();
            match outcome {
                Ok(ok) => good += usize::from(ok),
                Err(e) => return check.error(&e),
            }
        }
        check.outcome(format!("{good} of {}", ctx.samples), good == ctx.samples)
    });
}
