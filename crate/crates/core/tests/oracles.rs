//! Series against independent oracles: closed-form counts, exhaustive
//! census and point evaluation.

use num_bigint::BigInt;

use rans::asymptotics::{exact_center_degree_weights, h_band};
use rans::census::{census, census_up_to, column};
use rans::series::gf::{self, integer_coeffs};
use rans::series::marked_gf::bivariate_degree;
use rans::series::point::{near_rho, pole_amplitude, to_f64, PointKernel, DEFAULT_PRECISION_BITS};
use rans::tree::{closed_form_count, count_trees};
use rans::verify::{self, Verdict, VerifyOptions};

fn big(v: Vec<u64>) -> Vec<BigInt> {
    v.into_iter().map(BigInt::from).collect()
}

#[test]
fn tree_counts_three_ways() {
    let t = integer_coeffs(&gf::series_t(80));
    let iterated = integer_coeffs(&gf::series_t_by_iteration(80));
    assert_eq!(t, iterated);
    for (n, c) in t.iter().enumerate() {
        assert_eq!(c, &BigInt::from(count_trees(n)));
        assert_eq!(count_trees(n), closed_form_count(n));
    }
}

#[test]
fn census_columns_match_series_at_order_five() {
    let table = census_up_to(5, 5).unwrap();
    let d = gf::series_d_all(3, 5);
    for i in 1..=3 {
        assert_eq!(big(column(&table, |c| c.at_distance(i))), integer_coeffs(&d[i - 1]), "D{i}");
    }
    let delta = gf::series_delta(5).unwrap();
    for i in 1..=3 {
        assert_eq!(big(column(&table, |c| c.delta[i - 1])), integer_coeffs(delta.get(i)), "Delta{i}");
    }
    let e = big(column(&table, |c| c.equidistant));
    let all = gf::series_g(5, &e).unwrap();
    assert!(all.fedge.validated());
    assert_eq!(big(column(&table, |c| c.grand_total)), integer_coeffs(&all.g));
    assert_eq!(big(column(&table, |c| c.fedges)), integer_coeffs(&all.fedge.f));
}

#[test]
fn weighted_profile_is_the_first_labeling_sum() {
    for c in census_up_to(6, 6).unwrap() {
        let weighted: u64 = c
            .distance_from_o1
            .iter()
            .enumerate()
            .map(|(i, k)| i as u64 * k)
            .sum();
        assert_eq!(weighted, c.delta[0]);
        assert!(c.violations.is_empty(), "{:?}", c.violations);
    }
}

#[test]
fn center_degrees_partition_the_trees() {
    let dg = bivariate_degree(12, 40);
    for n in 1..=12 {
        let total: BigInt = (0..=40).map(|k| dg.center_degree_count(n, k).unwrap().clone()).sum();
        assert_eq!(total, BigInt::from(count_trees(n)));
    }
    let c = census(5, 5).unwrap();
    for (k, &count) in c.center_degree.iter().enumerate() {
        assert_eq!(dg.center_degree_count(5, k).unwrap(), &BigInt::from(count));
    }
    let w = exact_center_degree_weights(20);
    assert!(w[..3].iter().all(|&x| x == 0.0));
    assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
}

#[test]
fn verify_catches_every_injected_fault() {
    for name in ["T", "D2", "Delta3", "E", "G", "Dg", "T2", "Delta(z,d1,d2,d3)"] {
        let report = verify::run(&VerifyOptions {
            max_order: 4,
            trunc: 4,
            cap: 4,
            fault: Some(format!("{name}@3").parse().unwrap()),
        })
        .unwrap();
        assert!(!report.passed(), "{name}");
        let r = report.get(name).unwrap();
        assert!(matches!(r.verdict, Verdict::Fail { order: 3, .. }), "{name}: {r}");
        let others = report.results.iter().filter(|r| !r.passed()).count();
        assert_eq!(others, 1, "{name}");
    }
}

#[test]
fn point_evaluation_agrees_with_partial_sums_away_from_the_pole() {
    let delta = gf::series_delta(200).unwrap();
    let p = pole_amplitude(1, 5, Some(&delta.delta)).unwrap();
    let sums = p.partial_sums.unwrap();
    for i in 0..3 {
        assert!((p.closed_form[i] - p.linear_system[i]).abs() < 1e-12);
        assert!((p.closed_form[i] - sums[i]).abs() < 1e-9, "{i}: {} vs {}", p.closed_form[i], sums[i]);
    }
}

#[test]
fn h_approaches_one_inside_its_band() {
    for eps in [(1, 100), (1, 1000), (1, 10_000)] {
        let k = PointKernel::new(&near_rho(eps.0, eps.1), DEFAULT_PRECISION_BITS).unwrap();
        let h = to_f64(&k.h());
        let (lo, hi) = h_band(eps.0 as f64 / eps.1 as f64);
        assert!(lo <= h && h <= hi, "eps {eps:?}: {h}");
    }
}

#[test]
fn grand_total_series_follows_the_frontier_model() {
    let table = census_up_to(8, 8).unwrap();
    let e = big(column(&table[..7], |c| c.equidistant));
    let g = integer_coeffs(&gf::series_g(8, &e).unwrap().g);
    assert_eq!(big(column(&table, |c| c.frontier_model_total)), g);
    let truth = big(column(&table, |c| c.grand_total));
    assert_eq!(truth[..7], g[..7]);
    assert_eq!(&g[7] - &truth[7], BigInt::from(12));
    assert_eq!(column(&table, |c| c.frontier_shortcuts)[..8], [0, 0, 0, 0, 0, 0, 0, 12]);
}
