use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::BigInt;
use serde::Serialize;

use rans::asymptotics::{
    convergence_report, degree_tail_check, exact_center_degree_weights, exact_coefficients, find_law,
    resolve_mean_constant, ConvergenceReport, MeanResolution, MeanVerdict, TailFit, BETA, MIN_MEAN_SAMPLES,
};
use rans::census::census_up_to;
use rans::graph::{build_rans, GraphExport};
use rans::montecarlo::{mean_pairwise_samples, profile_peak, profile_rows, sample_tree_at};
use rans::report::{write_convergence_csv, write_json, write_profiles_csv};
use rans::series::gf::{integer_coeffs, series_d_all};
use rans::tree::SamplingStrategy;
use rans::verify::{self, Fault, IdentityResult, Verdict, VerifyOptions};

use crate::config::{parse_tolerances, usage, Format, Report, RunConfig, Sink};
use crate::{Common, Orders};

const MC_ORDERS: [usize; 3] = [1000, 4000, 10_000];
const PROFILE_ORDERS: [usize; 5] = [1000, 1100, 1200, 1300, 1400];
const TAIL_RANGE: (usize, usize) = (10, 40);
const ASYMPT_TOLERANCES: [(&str, f64); 5] = [
    ("trees", 0.03),
    ("mean-from-o1", 0.05),
    ("intra", 0.2),
    ("degree-tail", 0.10),
    ("mean-pairwise", 0.15),
];

fn strategy(s: &str) -> anyhow::Result<SamplingStrategy> {
    s.parse().map_err(usage)
}

fn config(command: &'static str, common: &Common, orders: Vec<usize>, samples: usize, trunc: usize, strategy: &str) -> RunConfig {
    RunConfig {
        command,
        orders,
        samples,
        seed: common.seed,
        trunc,
        out: common.out.clone(),
        format: common.format,
        strategy: strategy.to_string(),
        cap: common.cap,
        tolerances: BTreeMap::new(),
        crate_version: env!("CARGO_PKG_VERSION"),
    }
}

fn no_tolerances(common: &Common) -> anyhow::Result<()> {
    parse_tolerances(&common.tolerance, &[])?;
    Ok(())
}

/// Human-readable lines go to stdout unless stdout carries the report.
fn narrator(common: &Common) -> impl Fn(&str) {
    let to_stderr = common.out.is_none();
    move |line: &str| {
        if to_stderr {
            eprintln!("{line}");
        } else {
            println!("{line}");
        }
    }
}

#[derive(Serialize)]
struct SampleRecord {
    order: usize,
    sample: u64,
    tree: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    graph: Option<GraphExport>,
}

pub fn sample(orders: &Orders, samples: usize, strat: &str, graphs: bool, common: &Common) -> anyhow::Result<bool> {
    no_tolerances(common)?;
    let orders = orders.resolve(&[]);
    if orders.is_empty() {
        return Err(usage("sample needs --order or --orders"));
    }
    if graphs && common.format != Format::Json {
        return Err(usage("--graphs needs --format json"));
    }
    let s = strategy(strat)?;
    let cfg = config("sample", common, orders.clone(), samples, 0, strat);
    let mut records = Vec::new();
    for (j, &n) in orders.iter().enumerate() {
        for k in 0..samples as u64 {
            let index = (j * samples) as u64 + k;
            let tree = sample_tree_at(n, common.seed, index, s);
            records.push(SampleRecord {
                order: n,
                sample: index,
                tree: tree.encode(),
                graph: graphs.then(|| build_rans(&tree).export()),
            });
        }
    }
    let sink = Sink::new(common.out.as_deref());
    let mut w = sink.writer()?;
    match common.format {
        Format::Csv => {
            writeln!(w, "order,sample,tree")?;
            for r in &records {
                writeln!(w, "{},{},{}", r.order, r.sample, r.tree)?;
            }
            w.flush()?;
            sink.write_sidecar(&cfg)?;
        }
        Format::Json => write_json(&Report { config: &cfg, body: Samples { samples: records } }, w)?,
    }
    Ok(true)
}

#[derive(Serialize)]
struct Samples {
    samples: Vec<SampleRecord>,
}

pub fn profile(orders: &Orders, samples: usize, strat: &str, common: &Common) -> anyhow::Result<bool> {
    no_tolerances(common)?;
    let orders = orders.resolve(&PROFILE_ORDERS);
    let s = strategy(strat)?;
    let cfg = config("profile", common, orders.clone(), samples, 0, strat);
    let rows = profile_rows(&orders, samples, common.seed, s);
    let peak = profile_peak(&rows);
    let say = narrator(common);
    if let Some(p) = peak {
        say(&format!("profile peak at {p:.3} sqrt(n) over {} rows", rows.len()));
    }
    let sink = Sink::new(common.out.as_deref());
    match common.format {
        Format::Csv => {
            write_profiles_csv(&rows, sink.writer()?)?;
            sink.write_sidecar(&cfg)?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                peak_scaled_distance: Option<f64>,
                rows: &'a [rans::montecarlo::ProfileRow],
            }
            let body = Body {
                peak_scaled_distance: peak,
                rows: &rows,
            };
            write_json(&Report { config: &cfg, body }, sink.writer()?)?;
        }
    }
    Ok(true)
}

pub fn verify(order: usize, trunc: Option<usize>, fault: Option<&str>, common: &Common) -> anyhow::Result<bool> {
    no_tolerances(common)?;
    if order > common.cap {
        return Err(usage(format!("--order {order} exceeds the enumeration cap {}", common.cap)));
    }
    let trunc = trunc.unwrap_or(order);
    if trunc < order {
        return Err(usage("--trunc must be at least --order"));
    }
    let fault: Option<Fault> = fault.map(str::parse).transpose()?;
    let cfg = config("verify", common, vec![order], 0, trunc, "");
    let report = verify::run(&VerifyOptions {
        max_order: order,
        trunc,
        cap: common.cap,
        fault,
    })?;
    for r in &report.results {
        println!("{r}");
    }
    let passed = report.passed();
    let failed = report.results.iter().filter(|r| !r.passed()).count();
    println!(
        "{}: {} identities, {failed} failed",
        if passed { "PASS" } else { "FAIL" },
        report.results.len()
    );
    if let Some(path) = &common.out {
        let sink = Sink::new(Some(path));
        match common.format {
            Format::Csv => {
                let mut w = sink.writer()?;
                writeln!(w, "identity,verdict,order,oracle,series")?;
                for r in &report.results {
                    let (verdict, order, oracle, series) = verdict_fields(r);
                    writeln!(w, "\"{}\",{verdict},{order},{oracle},{series}", r.name)?;
                }
                w.flush()?;
                sink.write_sidecar(&cfg)?;
            }
            Format::Json => write_json(&Report { config: &cfg, body: &report }, sink.writer()?)?,
        }
    }
    Ok(passed)
}

fn verdict_fields(r: &IdentityResult) -> (&'static str, String, String, String) {
    match &r.verdict {
        Verdict::Pass => ("pass", String::new(), String::new(), String::new()),
        Verdict::Warn { .. } => ("warn", String::new(), String::new(), String::new()),
        Verdict::Fail {
            order, oracle, series, ..
        } => ("fail", order.to_string(), oracle.clone(), series.clone()),
    }
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

#[derive(Serialize)]
struct AsymptBody {
    convergence: Vec<ConvergenceReport>,
    degree_tail: Option<TailFit>,
    mean_pairwise: Option<MeanResolution>,
    checks: Vec<Check>,
}

const TABLE_LAWS: [&str; 10] = [
    "trees",
    "trees-derivative",
    "delta-pole",
    "mean-from-o1",
    "intra",
    "intra-derived",
    "inter",
    "inter-derived",
    "fedge",
    "equidistant-derived",
];

/// Ten evenly spaced orders ending at `trunc`.
fn grid(trunc: usize) -> Vec<usize> {
    let step = (trunc / 10).max(1);
    let mut g: Vec<usize> = (1..=trunc).filter(|n| n % step == 0).collect();
    if g.last() != Some(&trunc) {
        g.push(trunc);
    }
    g
}

pub fn asympt(
    trunc: usize,
    orders: &Orders,
    samples: usize,
    strat: &str,
    tail_order: usize,
    common: &Common,
) -> anyhow::Result<bool> {
    if trunc == 0 {
        return Err(usage("--trunc must be positive"));
    }
    if samples != 0 && samples < MIN_MEAN_SAMPLES {
        return Err(usage(format!("--samples must be 0 or at least {MIN_MEAN_SAMPLES}")));
    }
    let tol = parse_tolerances(&common.tolerance, &ASYMPT_TOLERANCES)?;
    let s = strategy(strat)?;
    let mc_orders = orders.resolve(&MC_ORDERS);
    let mut cfg = config("asympt", common, mc_orders.clone(), samples, trunc, strat);
    cfg.tolerances = tol.clone();
    let say = narrator(common);

    let ex = exact_coefficients(trunc)?;
    let orders = grid(trunc);
    let mut convergence = Vec::new();
    for id in TABLE_LAWS {
        let law = find_law(id).expect("catalogued law");
        let band = tol.get(id).copied().unwrap_or(tol["intra"]);
        convergence.push(convergence_report(&ex.observations(id, &orders)?, &law, band)?);
    }
    let mut checks = Vec::new();
    for rep in &convergence {
        say(&format!(
            "{:<20} ratio at n={} {:.4}{}",
            rep.law_id,
            trunc,
            rep.terminal_ratio,
            if rep.monotone_toward_one { ", monotone toward 1" } else { "" }
        ));
        let (name, pass) = match rep.law_id.as_str() {
            "trees" => ("trees", rep.within_band),
            "mean-from-o1" => ("mean-from-o1", rep.within_band),
            "intra" => ("intra", rep.within_band && rep.monotone_toward_one),
            _ => continue,
        };
        checks.push(Check {
            name,
            pass,
            detail: format!("terminal ratio {:.4}, band {}", rep.terminal_ratio, rep.band),
        });
    }

    let weights = exact_center_degree_weights(tail_order);
    let tail = degree_tail_check(&weights, TAIL_RANGE.0, TAIL_RANGE.1.min(tail_order + 2)).ok();
    match &tail {
        Some(t) => {
            say(&format!(
                "degree tail at n={tail_order}: fitted ratio {:.4} vs 8/9 ({:.1}%) over k in [{}, {}]",
                t.r_hat,
                100.0 * t.relative_error,
                t.used.0,
                t.used.1
            ));
            checks.push(Check {
                name: "degree-tail",
                pass: t.relative_error <= tol["degree-tail"],
                detail: format!("r_hat {:.4}, beta {BETA:.4}", t.r_hat),
            });
        }
        None => say(&format!("degree tail at n={tail_order}: not enough degrees in range")),
    }

    let mean_pairwise = if samples == 0 {
        None
    } else {
        let data: Vec<(usize, Vec<f64>)> = mc_orders
            .iter()
            .map(|&n| Ok((n, mean_pairwise_samples(n, samples, common.seed, s)?)))
            .collect::<rans::Result<_>>()?;
        let r = resolve_mean_constant(&data, tol["mean-pairwise"])?;
        let verdict = match &r.verdict {
            MeanVerdict::Chosen(id) => format!("matches {id}"),
            MeanVerdict::Neither => "matches neither stated constant".into(),
            MeanVerdict::Ambiguous => "matches both stated constants".into(),
        };
        for c in &r.candidates {
            say(&format!("  {} = {:.4}, relative error {:.3}", c.law_id, c.constant, c.relative_error));
        }
        say(&format!(
            "mean pairwise C_hat {:.4}: {verdict}; nearest {} ({:.4}, relative error {:.3})",
            r.c_hat, r.nearest.law_id, r.nearest.constant, r.nearest.relative_error
        ));
        checks.push(Check {
            name: "mean-pairwise",
            pass: matches!(r.verdict, MeanVerdict::Chosen(_)),
            detail: verdict,
        });
        Some(r)
    };

    let passed = checks.iter().all(|c| c.pass);
    for c in &checks {
        say(&format!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail));
    }
    let sink = Sink::new(common.out.as_deref());
    match common.format {
        Format::Csv => {
            write_convergence_csv(&convergence, sink.writer()?)?;
            sink.write_sidecar(&cfg)?;
        }
        Format::Json => {
            let body = AsymptBody {
                convergence,
                degree_tail: tail,
                mean_pairwise,
                checks,
            };
            write_json(&Report { config: &cfg, body }, sink.writer()?)?;
        }
    }
    Ok(passed)
}

const SERIES_NAMES: [&str; 13] = [
    "T", "T'", "D1", "D2", "D3", "Delta1", "Delta2", "Delta3", "E", "Intra", "Inter-", "F", "G",
];

pub fn series(trunc: usize, names: &[String], common: &Common) -> anyhow::Result<bool> {
    no_tolerances(common)?;
    let selected: Vec<&str> = if names.is_empty() {
        SERIES_NAMES.to_vec()
    } else {
        names.iter().map(String::as_str).collect()
    };
    if let Some(bad) = selected.iter().find(|n| !SERIES_NAMES.contains(n)) {
        return Err(usage(format!("unknown series {bad:?}; known: {}", SERIES_NAMES.join(", "))));
    }
    let cfg = config("series", common, vec![], 0, trunc, "");
    let ex = exact_coefficients(trunc)?;
    let d = series_d_all(3, trunc);
    let mut table: BTreeMap<&str, Vec<BigInt>> = BTreeMap::new();
    for &name in &selected {
        let v = match name {
            "T" => ex.t.clone(),
            "T'" => ex.tprime.clone(),
            "D1" => integer_coeffs(&d[0]),
            "D2" => integer_coeffs(&d[1]),
            "D3" => integer_coeffs(&d[2]),
            "Delta1" => ex.delta[0].clone(),
            "Delta2" => ex.delta[1].clone(),
            "Delta3" => ex.delta[2].clone(),
            "E" => ex.equidistant.clone(),
            "Intra" => ex.intra.clone(),
            "Inter-" => ex.inter_minus.clone(),
            "F" => ex.fedge.clone(),
            _ => ex.g.clone(),
        };
        table.insert(name, v);
    }
    let sink = Sink::new(common.out.as_deref());
    match common.format {
        Format::Csv => {
            let mut w = sink.writer()?;
            writeln!(w, "series,n,coefficient")?;
            for &name in &selected {
                for (n, c) in table[name].iter().enumerate() {
                    writeln!(w, "\"{name}\",{n},{c}")?;
                }
            }
            w.flush()?;
            sink.write_sidecar(&cfg)?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Body {
                series: BTreeMap<String, Vec<String>>,
            }
            let series = table
                .into_iter()
                .map(|(k, v)| (k.to_string(), v.iter().map(ToString::to_string).collect()))
                .collect();
            write_json(&Report { config: &cfg, body: Body { series } }, sink.writer()?)?;
        }
    }
    Ok(true)
}

pub fn census(order: usize, common: &Common) -> anyhow::Result<bool> {
    no_tolerances(common)?;
    let cfg = config("census", common, vec![order], 0, 0, "");
    let table = census_up_to(order, common.cap)?;
    let violations: usize = table.iter().map(|c| c.violations.len()).sum();
    for c in table.iter().filter(|c| !c.violations.is_empty()) {
        for v in &c.violations {
            eprintln!("order {}: {v}", c.order);
        }
    }
    let sink = Sink::new(common.out.as_deref());
    match common.format {
        Format::Csv => {
            let mut w = sink.writer()?;
            writeln!(
                w,
                "order,trees,d1,d2,d3,delta1,delta2,delta3,equidistant,intra,inter,inter_lower_bound,fedges,grand_total"
            )?;
            for c in &table {
                writeln!(
                    w,
                    "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                    c.order,
                    c.trees,
                    c.at_distance(1),
                    c.at_distance(2),
                    c.at_distance(3),
                    c.delta[0],
                    c.delta[1],
                    c.delta[2],
                    c.equidistant,
                    c.intra,
                    c.inter,
                    c.inter_lower_bound,
                    c.fedges,
                    c.grand_total
                )?;
            }
            w.flush()?;
            sink.write_sidecar(&cfg)?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                census: &'a [rans::census::OrderCensus],
            }
            write_json(&Report { config: &cfg, body: Body { census: &table } }, sink.writer()?)?;
        }
    }
    Ok(violations == 0)
}
