//! Acceptance suite: one PASS/FAIL line per criterion. Run with
//! `cargo test -p rans --test acceptance`.
//!
//! Failing criteria are reported but exit 0, so that a workspace test run
//! still reaches the other targets. Set `RANS_ACCEPTANCE_STRICT=1` to exit 1
//! on any failure, and `RANS_ACCEPTANCE_ONLY=3,4` to run a subset.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rans::asymptotics::{
    convergence_report, degree_tail_check, exact_center_degree_weights, exact_coefficients, find_law,
    h_band, resolve_mean_constant, MeanVerdict, Observation, BETA,
};
use rans::census::{census_up_to, column};
use rans::montecarlo::{chi_square_homogeneity, chi_square_uniformity, mean_pairwise_samples};
use rans::series::gf::{self, integer_coeffs};
use rans::series::point::{near_rho, pole_amplitude, to_f64, PointKernel, DEFAULT_PRECISION_BITS};
use rans::tree::SamplingStrategy;
use rans::verify::{self, VerifyOptions};

// Tolerances and budgets.
const ORACLE_MAX_ORDER: usize = 6;
const ORACLE_BUDGET: Duration = Duration::from_secs(5 * 60);
const POLE_EPS: (i64, i64) = (1, 1000);
const POLE_TRUNC: usize = 400;
const POLE_TARGET: f64 = 3.0 / 44.0;
const POLE_BAND: f64 = 0.10;
const H_EPS: (i64, i64) = (1, 10_000);
const MEAN_O1_ORDER: usize = 400;
const MEAN_O1_BAND: f64 = 0.05;
const MEAN_O1_BUDGET: Duration = Duration::from_secs(10 * 60);
const INTRA_RANGE: (usize, usize) = (50, 300);
const INTRA_BAND: (f64, f64) = (0.8, 1.2);
const TAIL_ORDER: usize = 60;
const TAIL_RANGE: (usize, usize) = (10, 40);
const TAIL_BAND: f64 = 0.10;
const MC_ORDERS: [usize; 3] = [1000, 4000, 10_000];
const MC_GRAPHS: usize = 30;
const MC_SEED: u64 = 20_240_601;
const MC_BAND: f64 = 0.15;
const MC_BUDGET: Duration = Duration::from_secs(30 * 60);
const TREES_ORDER: usize = 500;
const TREES_BAND: f64 = 0.03;
const CHI_ORDERS: [usize; 2] = [3, 4];
const CHI_SAMPLES: usize = 100_000;
const CHI_ALPHA: f64 = 0.001;
const CHI_SEED: u64 = 99;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn rel(x: f64, target: f64) -> f64 {
    (x - target).abs() / target
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let report = verify::run(&VerifyOptions {
        max_order: ORACLE_MAX_ORDER,
        trunc: ORACLE_MAX_ORDER,
        cap: ORACLE_MAX_ORDER,
        fault: None,
    })
    .expect("verification runs");
    let elapsed = start.elapsed();
    for r in &report.results {
        println!("      {r}");
    }
    let failed: Vec<_> = report.results.iter().filter(|r| !r.passed()).map(|r| r.name.as_str()).collect();
    let pass = failed.is_empty() && elapsed <= ORACLE_BUDGET;
    outcome(
        pass,
        format!(
            "{} identities at n <= {ORACLE_MAX_ORDER}, failed {failed:?}, {:.1}s (budget {}s)",
            report.results.len(),
            elapsed.as_secs_f64(),
            ORACLE_BUDGET.as_secs()
        ),
    )
}

fn hand_prefixes() -> Outcome {
    // Oracle first: the census must reproduce the hand values before the
    // series are compared with them.
    let table = census_up_to(4, 4).expect("census");
    let t_census = column(&table, |c| c.trees);
    let expected: Vec<(&str, Vec<u64>, Vec<u64>, Vec<BigInt>)> = vec![
        ("T", vec![1, 1, 3, 12, 55], t_census.clone(), integer_coeffs(&gf::series_t(4))),
        (
            "T'",
            vec![1, 6, 36, 220],
            (0..4).map(|n| (n as u64 + 1) * t_census[n + 1]).collect(),
            integer_coeffs(&gf::series_tprime(3)),
        ),
        ("D1", vec![0, 1, 5, 26], column(&table[..4], |c| c.at_distance(1)), integer_coeffs(&gf::series_d(1, 3))),
        ("D2", vec![0, 0, 1, 10], column(&table[..4], |c| c.at_distance(2)), integer_coeffs(&gf::series_d(2, 3))),
    ];
    let delta = gf::series_delta(3).expect("delta");
    let mut rows = expected;
    for (i, hand) in [(1, vec![0, 1, 7, 46]), (2, vec![0, 1, 6, 38]), (3, vec![0, 1, 6, 36])] {
        rows.push((
            ["Delta1", "Delta2", "Delta3"][i - 1],
            hand,
            column(&table[..4], |c| c.delta[i - 1]),
            integer_coeffs(delta.get(i)),
        ));
    }
    let e_census = column(&table[..3], |c| c.equidistant);
    let fedge = gf::series_fedge(2, &big(&e_census)).expect("fedge");
    rows.push(("E", vec![0, 1, 4], e_census, integer_coeffs(&fedge.e)));

    let mut bad = Vec::new();
    for (name, hand, census, series) in &rows {
        if census != hand {
            bad.push(format!("{name}: census {census:?} != {hand:?}"));
        }
        if &big(hand) != series {
            bad.push(format!("{name}: series {series:?} != {hand:?}"));
        }
    }
    let pass = bad.is_empty() && fedge.validated();
    outcome(
        pass,
        if pass {
            format!("{} prefixes confirmed by census and series", rows.len())
        } else {
            bad.join("; ")
        },
    )
}

fn pole_amplitudes() -> Outcome {
    let delta = gf::series_delta(POLE_TRUNC).expect("delta");
    let p = pole_amplitude(POLE_EPS.0, POLE_EPS.1, Some(&delta.delta)).expect("point evaluation");
    let sums = p.partial_sums.unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for i in 0..3 {
        let v = p.closed_form[i];
        let e = rel(v, POLE_TARGET);
        let agree = rel(p.linear_system[i], v) < 1e-12;
        pass &= e <= POLE_BAND && agree;
        parts.push(format!("i={} {:.5} ({:+.1}%)", i + 1, v, 100.0 * (v / POLE_TARGET - 1.0)));
    }
    let z = near_rho(H_EPS.0, H_EPS.1);
    let h = to_f64(&PointKernel::new(&z, DEFAULT_PRECISION_BITS).unwrap().h());
    let (lo, hi) = h_band(H_EPS.0 as f64 / H_EPS.1 as f64);
    println!(
        "      partial sums at N={POLE_TRUNC} (not converged at this eps): {:.5} {:.5} {:.5}",
        sums[0], sums[1], sums[2]
    );
    println!("      H(rho(1-1e-4)) = {h:.5}, band [{lo:.5}, {hi}] {}", if (lo..=hi).contains(&h) { "ok" } else { "outside" });
    outcome(
        pass,
        format!(
            "eps*Delta_i at eps=1e-3 vs 3/44={POLE_TARGET:.5}, band {:.0}%: {}",
            100.0 * POLE_BAND,
            parts.join(", ")
        ),
    )
}

fn mean_from_o1() -> Outcome {
    let start = Instant::now();
    let ex = exact_coefficients(MEAN_O1_ORDER).expect("series");
    let elapsed = start.elapsed();
    let law = find_law("mean-from-o1").unwrap();
    let orders = [50, 100, 200, 300, MEAN_O1_ORDER];
    let obs = ex.observations("mean-from-o1", &orders).unwrap();
    let report = convergence_report(&obs, &law, MEAN_O1_BAND).unwrap();
    let trail: Vec<String> = report.rows.iter().map(|r| format!("{}:{:.4}", r.n, r.ratio)).collect();
    let pass = report.within_band && elapsed <= MEAN_O1_BUDGET;
    outcome(
        pass,
        format!(
            "m(n)/(sqrt(3 pi n)/11) at n={MEAN_O1_ORDER} = {:.4}, band {:.0}%; ratios {}; series {:.1}s",
            report.terminal_ratio,
            100.0 * MEAN_O1_BAND,
            trail.join(" "),
            elapsed.as_secs_f64()
        ),
    )
}

fn intra_trend() -> Outcome {
    let ex = exact_coefficients(INTRA_RANGE.1).expect("series");
    let orders: Vec<usize> = (INTRA_RANGE.0..=INTRA_RANGE.1).step_by(10).collect();
    let obs = ex.observations("intra", &orders).unwrap();
    let band = (INTRA_BAND.1 - INTRA_BAND.0) / 2.0;
    let report = convergence_report(&obs, &find_law("intra").unwrap(), band).unwrap();
    let end = report.terminal_ratio;
    let in_band = (INTRA_BAND.0..=INTRA_BAND.1).contains(&end);
    let derived = convergence_report(&obs, &find_law("intra-derived").unwrap(), band).unwrap();
    outcome(
        report.monotone_toward_one && in_band,
        format!(
            "Intra_n/T_n over n^2/44: {:.3} at n={} to {:.3} at n={}, monotone toward 1: {}, in [{}, {}]: {}; against 3n^2/11: {:.3}",
            report.rows[0].ratio,
            INTRA_RANGE.0,
            end,
            INTRA_RANGE.1,
            report.monotone_toward_one,
            INTRA_BAND.0,
            INTRA_BAND.1,
            in_band,
            derived.terminal_ratio
        ),
    )
}

fn degree_tail() -> Outcome {
    let w = exact_center_degree_weights(TAIL_ORDER);
    let fit = degree_tail_check(&w, TAIL_RANGE.0, TAIL_RANGE.1).expect("tail fit");
    let lo = fit.successive.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
    let hi = fit.successive.iter().map(|s| s.1).fold(0.0, f64::max);
    outcome(
        fit.relative_error <= TAIL_BAND,
        format!(
            "n={TAIL_ORDER}, k in [{}, {}]: fitted ratio {:.4} vs 8/9={BETA:.4} ({:.1}%), endpoint ratio {:.4}, single ratios {lo:.3}..{hi:.3}",
            fit.used.0,
            fit.used.1,
            fit.r_hat,
            100.0 * fit.relative_error,
            fit.endpoint_ratio
        ),
    )
}

fn mean_pairwise() -> Outcome {
    let start = Instant::now();
    let samples: Vec<(usize, Vec<f64>)> = MC_ORDERS
        .iter()
        .map(|&n| (n, mean_pairwise_samples(n, MC_GRAPHS, MC_SEED, SamplingStrategy::CycleLemma).unwrap()))
        .collect();
    let elapsed = start.elapsed();
    let r = resolve_mean_constant(&samples, MC_BAND).expect("resolution");
    for o in &r.per_order {
        println!(
            "      n={} graphs={} mean={:.3} sd={:.3} mean/sqrt(n)={:.4}",
            o.n, o.samples, o.mean, o.std_dev, o.mean_over_sqrt_n
        );
    }
    let cands: Vec<String> = r
        .candidates
        .iter()
        .map(|c| format!("{}={:.4} ({:.0}%)", c.law_id, c.constant, 100.0 * c.relative_error))
        .collect();
    let verdict = match &r.verdict {
        MeanVerdict::Chosen(id) => format!("chose {id}"),
        MeanVerdict::Neither => "matches neither".to_string(),
        MeanVerdict::Ambiguous => "ambiguous".to_string(),
    };
    outcome(
        matches!(r.verdict, MeanVerdict::Chosen(_)) && elapsed <= MC_BUDGET,
        format!(
            "C_hat={:.4}, {verdict}; {}; nearest catalogued {}={:.4} ({:.1}%); {:.0}s",
            r.c_hat,
            cands.join(", "),
            r.nearest.law_id,
            r.nearest.constant,
            100.0 * r.nearest.relative_error,
            elapsed.as_secs_f64()
        ),
    )
}

fn trees_asymptotics() -> Outcome {
    let t = integer_coeffs(&gf::series_t(TREES_ORDER));
    let obs = [Observation::from_big(TREES_ORDER, &t[TREES_ORDER])];
    let report = convergence_report(&obs, &find_law("trees").unwrap(), TREES_BAND).unwrap();
    outcome(
        report.within_band,
        format!(
            "T_n/(c rho^-n n^-3/2) at n={TREES_ORDER} = {:.5}, band [{}, {}]",
            report.terminal_ratio,
            1.0 - TREES_BAND,
            1.0 + TREES_BAND
        ),
    )
}

fn sampler_uniformity() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for n in CHI_ORDERS {
        let mut counts = Vec::new();
        for (name, s) in [("split", SamplingStrategy::RecursiveSplit), ("cycle", SamplingStrategy::CycleLemma)] {
            let r = chi_square_uniformity(n, CHI_SAMPLES, CHI_SEED + n as u64, s, 8).unwrap();
            pass &= r.accepts(CHI_ALPHA);
            parts.push(format!("n={n} {name} p={:.3}", r.p_value));
            counts.push(r.observed);
        }
        let (_, _, p) = chi_square_homogeneity(&counts[0], &counts[1]).unwrap();
        pass &= p > CHI_ALPHA;
        parts.push(format!("n={n} split-vs-cycle p={p:.3}"));
    }
    outcome(pass, format!("{CHI_SAMPLES} samples, alpha={CHI_ALPHA}: {}", parts.join(", ")))
}

fn main() -> ExitCode {
    let only: Option<Vec<usize>> = std::env::var("RANS_ACCEPTANCE_ONLY")
        .ok()
        .map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let criteria: [(usize, &str, fn() -> Outcome); 9] = [
        (1, "oracle equivalence", oracle_equivalence),
        (2, "hand-verified prefixes", hand_prefixes),
        (3, "pole amplitude", pole_amplitudes),
        (4, "mean distance from O1", mean_from_o1),
        (5, "intradistance trend", intra_trend),
        (6, "degree tail", degree_tail),
        (7, "mean pairwise distance", mean_pairwise),
        (8, "tree count asymptotics", trees_asymptotics),
        (9, "sampler uniformity", sampler_uniformity),
    ];
    let mut failures = 0;
    for (id, name, run) in criteria {
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        if !result.pass {
            failures += 1;
        }
        println!(
            "{} [{id}] {name}: {} ({:.1}s)",
            if result.pass { "PASS" } else { "FAIL" },
            result.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {failures} failing criteria");
    let strict = std::env::var("RANS_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if failures == 0 || !strict {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
