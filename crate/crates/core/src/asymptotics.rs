//! Leading-order coefficient laws `A rho^-n n^alpha` and convergence checks.
//!
//! Amplitudes are kept as `q * sqrt(3)^a * sqrt(pi)^b` with `q` rational;
//! the floating value is only produced when a law is evaluated. Every
//! comparison happens in the log domain, so huge exact coefficients never go
//! through `f64` directly.

use std::f64::consts::{LN_2, PI};
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::census::census_up_to;
use crate::error::{Error, Result};
use crate::series::gf::{self, integer_coeffs};
use crate::series::marked_gf::bivariate_degree;

/// `ln rho` for `rho = 4/27`.
pub fn ln_rho() -> f64 {
    (4.0f64 / 27.0).ln()
}

/// Natural log of a positive big integer.
pub fn ln_big(x: &BigInt) -> f64 {
    match x.sign() {
        Sign::Plus => {}
        Sign::NoSign => return f64::NEG_INFINITY,
        Sign::Minus => return f64::NAN,
    }
    let bits = x.bits();
    let shift = bits.saturating_sub(62);
    let top = (x >> shift).to_f64().expect("62 bits fit in f64");
    top.ln() + shift as f64 * LN_2
}

/// Natural log of a positive big rational.
pub fn ln_rational(x: &BigRational) -> f64 {
    ln_big(x.numer()) - ln_big(x.denom())
}

/// `ratio * sqrt(3)^sqrt3 * sqrt(pi)^sqrt_pi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolicConstant {
    pub numer: i64,
    pub denom: i64,
    pub sqrt3: i32,
    pub sqrt_pi: i32,
}

impl SymbolicConstant {
    pub const fn new(numer: i64, denom: i64, sqrt3: i32, sqrt_pi: i32) -> Self {
        Self {
            numer,
            denom,
            sqrt3,
            sqrt_pi,
        }
    }

    pub fn ln(&self) -> f64 {
        (self.numer as f64 / self.denom as f64).ln()
            + 0.5 * self.sqrt3 as f64 * 3f64.ln()
            + 0.5 * self.sqrt_pi as f64 * PI.ln()
    }

    pub fn value(&self) -> f64 {
        self.ln().exp()
    }
}

impl fmt::Display for SymbolicConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut up = Vec::new();
        let mut down = Vec::new();
        if self.numer != 1 || (self.sqrt3 <= 0 && self.sqrt_pi <= 0) {
            up.push(self.numer.to_string());
        }
        if self.denom != 1 {
            down.push(self.denom.to_string());
        }
        for (name, e) in [("sqrt(3)", self.sqrt3), ("sqrt(pi)", self.sqrt_pi)] {
            let target = if e > 0 { &mut up } else { &mut down };
            for _ in 0..e.abs() {
                target.push(name.to_string());
            }
        }
        write!(f, "{}", up.join("*"))?;
        match down.len() {
            0 => Ok(()),
            1 => write!(f, "/{}", down[0]),
            _ => write!(f, "/({})", down.join("*")),
        }
    }
}

/// What the exact sequence is divided by before the law applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// The raw coefficient.
    Raw,
    /// Divided by `T_n`.
    PerTree,
    /// Divided by `n T_n`.
    PerVertex,
    /// A per-graph mean over the pairs of `C(R)`.
    PairMean,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LawSource {
    /// A constant as stated in the literature the crate follows.
    Stated,
    /// A constant recomputed from the closed forms, for comparison.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticLaw {
    pub id: &'static str,
    pub quantity: &'static str,
    pub amplitude: SymbolicConstant,
    /// Whether the law carries the exponential factor `rho^-n`.
    pub exponential: bool,
    /// `alpha` as a fraction.
    pub alpha: (i32, i32),
    pub normalization: Normalization,
    pub source: LawSource,
    /// Laws sharing a group are mutually exclusive candidates.
    pub exclusive_group: Option<&'static str>,
}

impl AsymptoticLaw {
    pub fn alpha(&self) -> f64 {
        self.alpha.0 as f64 / self.alpha.1 as f64
    }

    /// `ln(A rho^-n n^alpha)`.
    pub fn ln_eval(&self, n: usize) -> f64 {
        let growth = if self.exponential { -(n as f64) * ln_rho() } else { 0.0 };
        self.amplitude.ln() + growth + self.alpha() * (n as f64).ln()
    }

    pub fn eval(&self, n: usize) -> f64 {
        self.ln_eval(n).exp()
    }
}

const fn law(
    id: &'static str,
    quantity: &'static str,
    amplitude: SymbolicConstant,
    exponential: bool,
    alpha: (i32, i32),
    normalization: Normalization,
) -> AsymptoticLaw {
    AsymptoticLaw {
        id,
        quantity,
        amplitude,
        exponential,
        alpha,
        normalization,
        source: LawSource::Stated,
        exclusive_group: None,
    }
}

pub const MEAN_PAIRWISE_GROUP: &str = "mean-pairwise";
/// The exponential-cutoff ratio of the center-degree law.
pub const BETA: f64 = 8.0 / 9.0;

/// The laws as stated.
pub fn law_catalog() -> Vec<AsymptoticLaw> {
    use Normalization::*;
    let mut laws = vec![
        law("trees", "T_n", SymbolicConstant::new(1, 4, 1, -1), true, (-3, 2), Raw),
        law("trees-derivative", "[z^n] T'", SymbolicConstant::new(27, 16, 1, -1), true, (-1, 2), Raw),
        law("delta-pole", "[z^n] Delta_(i)", SymbolicConstant::new(3, 44, 0, 0), true, (0, 1), Raw),
        law("mean-from-o1", "m(n)", SymbolicConstant::new(1, 11, 1, 1), false, (1, 2), PerVertex),
        law("intra", "[z^n] Intra / T_n", SymbolicConstant::new(1, 44, 0, 0), false, (2, 1), PerTree),
        law("inter", "[z^n] Inter / T_n", SymbolicConstant::new(1, 11, 1, 1), false, (5, 2), PerTree),
        law("fedge", "[z^n] F / T_n", SymbolicConstant::new(9, 242, 0, 1), false, (2, 1), PerTree),
        law("mean-pairwise-half", "mean pairwise distance", SymbolicConstant::new(1, 22, 1, 1), false, (1, 2), PairMean),
        law("mean-pairwise-double", "mean pairwise distance", SymbolicConstant::new(2, 11, 1, 1), false, (1, 2), PairMean),
    ];
    for l in laws.iter_mut().filter(|l| l.normalization == PairMean) {
        l.exclusive_group = Some(MEAN_PAIRWISE_GROUP);
    }
    laws
}

/// Constants recomputed from the closed forms where they differ from the
/// stated ones.
pub fn derived_laws() -> Vec<AsymptoticLaw> {
    use Normalization::*;
    let mut laws = vec![
        law("intra-derived", "[z^n] Intra / T_n", SymbolicConstant::new(3, 11, 0, 0), false, (2, 1), PerTree),
        law("inter-derived", "[z^n] Inter / T_n", SymbolicConstant::new(1, 22, 1, 1), false, (5, 2), PerTree),
        law("equidistant-derived", "[z^n] E / T_n", SymbolicConstant::new(5, 11, 0, 0), false, (1, 1), PerTree),
        law("mean-pairwise-derived", "mean pairwise distance", SymbolicConstant::new(1, 11, 1, 1), false, (1, 2), PairMean),
    ];
    for l in &mut laws {
        l.source = LawSource::Derived;
    }
    laws
}

pub fn find_law(id: &str) -> Option<AsymptoticLaw> {
    law_catalog().into_iter().chain(derived_laws()).find(|l| l.id == id)
}

/// One observed value, kept as its logarithm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Observation {
    pub n: usize,
    pub ln_value: f64,
}

impl Observation {
    pub fn from_f64(n: usize, v: f64) -> Self {
        Self { n, ln_value: v.ln() }
    }

    pub fn from_big(n: usize, v: &BigInt) -> Self {
        Self { n, ln_value: ln_big(v) }
    }

    /// `num / den` for big integers.
    pub fn from_ratio(n: usize, num: &BigInt, den: &BigInt) -> Self {
        Self {
            n,
            ln_value: ln_big(num) - ln_big(den),
        }
    }
}

/// Formats `exp(ln)` as a decimal with exponent, without overflow.
pub fn format_from_ln(ln: f64) -> String {
    if !ln.is_finite() {
        return if ln.is_nan() { "nan".into() } else { "0".into() };
    }
    let log10 = ln / std::f64::consts::LN_10;
    let mut exp = log10.floor();
    let mut mantissa = 10f64.powf(log10 - exp);
    if mantissa >= 9.999_999_999_5 {
        mantissa /= 10.0;
        exp += 1.0;
    }
    if (-4.0..15.0).contains(&exp) {
        format!("{:.12}", mantissa * 10f64.powf(exp))
            .trim_end_matches('0')
            .trim_end_matches('.')
            .to_string()
    } else {
        format!("{mantissa:.11}e{exp}")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub ln_observed: f64,
    pub ln_predicted: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub law_id: String,
    pub rows: Vec<ConvergenceRow>,
    pub terminal_ratio: f64,
    /// `|ratio - 1|` never increases along the rows.
    pub monotone_toward_one: bool,
    pub band: f64,
    pub within_band: bool,
    /// Over the last decade of `n` the ratio ends outside the band and has
    /// not moved closer to 1.
    pub non_convergent: bool,
}

/// Compares observations with `law`. `band` is the accepted `|ratio - 1|`.
pub fn convergence_report(observations: &[Observation], law: &AsymptoticLaw, band: f64) -> Result<ConvergenceReport> {
    if observations.is_empty() {
        return Err(Error::EmptyInput);
    }
    let rows: Vec<ConvergenceRow> = observations
        .iter()
        .map(|o| {
            let ln_predicted = law.ln_eval(o.n);
            ConvergenceRow {
                n: o.n,
                ln_observed: o.ln_value,
                ln_predicted,
                ratio: (o.ln_value - ln_predicted).exp(),
            }
        })
        .collect();
    let gap = |r: &ConvergenceRow| (r.ratio - 1.0).abs();
    let last = rows.last().unwrap();
    let terminal_ratio = last.ratio;
    let monotone_toward_one = rows.windows(2).all(|w| gap(&w[1]) <= gap(&w[0]));
    let decade_start = rows.iter().find(|r| r.n * 10 >= last.n).unwrap_or(last);
    let within_band = gap(last) <= band;
    let non_convergent = !within_band && gap(last) >= gap(decade_start);
    Ok(ConvergenceReport {
        law_id: law.id.to_string(),
        terminal_ratio,
        monotone_toward_one,
        band,
        within_band,
        non_convergent,
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CandidateFit {
    pub law_id: String,
    pub constant: f64,
    pub relative_error: f64,
    pub within_band: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "law_id", rename_all = "snake_case")]
pub enum MeanVerdict {
    Chosen(String),
    Neither,
    Ambiguous,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderSummary {
    pub n: usize,
    pub samples: usize,
    pub mean: f64,
    pub std_dev: f64,
    pub mean_over_sqrt_n: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeanResolution {
    /// Least-squares slope of `mean` against `sqrt(n)` through the origin.
    pub c_hat: f64,
    pub band: f64,
    pub candidates: Vec<CandidateFit>,
    pub verdict: MeanVerdict,
    pub per_order: Vec<OrderSummary>,
    /// Closest constant among all catalogued mean-pairwise laws, derived
    /// ones included; informational only.
    pub nearest: CandidateFit,
}

/// Minimum number of graphs per order.
pub const MIN_MEAN_SAMPLES: usize = 30;

/// Fits `mean = C sqrt(n)` to per-graph mean pairwise distances and decides
/// between the two stated constants.
pub fn resolve_mean_constant(samples: &[(usize, Vec<f64>)], band: f64) -> Result<MeanResolution> {
    if samples.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut per_order = Vec::new();
    for (n, values) in samples {
        if values.len() < MIN_MEAN_SAMPLES {
            return Err(Error::InsufficientData(format!(
                "{} samples at order {n}, need at least {MIN_MEAN_SAMPLES}",
                values.len()
            )));
        }
        let x = (*n as f64).sqrt();
        for &m in values {
            sxy += m * x;
            sxx += x * x;
        }
        let k = values.len() as f64;
        let mean = values.iter().sum::<f64>() / k;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0);
        per_order.push(OrderSummary {
            n: *n,
            samples: values.len(),
            mean,
            std_dev: var.sqrt(),
            mean_over_sqrt_n: mean / x,
        });
    }
    let c_hat = sxy / sxx;
    let fit = |l: &AsymptoticLaw| {
        let constant = l.amplitude.value();
        let relative_error = (c_hat - constant).abs() / constant;
        CandidateFit {
            law_id: l.id.to_string(),
            constant,
            relative_error,
            within_band: relative_error <= band,
        }
    };
    let candidates: Vec<CandidateFit> = law_catalog()
        .iter()
        .filter(|l| l.exclusive_group == Some(MEAN_PAIRWISE_GROUP))
        .map(fit)
        .collect();
    let matching: Vec<&CandidateFit> = candidates.iter().filter(|c| c.within_band).collect();
    let verdict = match matching.as_slice() {
        [] => MeanVerdict::Neither,
        [one] => MeanVerdict::Chosen(one.law_id.clone()),
        _ => MeanVerdict::Ambiguous,
    };
    let nearest = law_catalog()
        .iter()
        .chain(derived_laws().iter())
        .filter(|l| l.normalization == Normalization::PairMean)
        .map(fit)
        .min_by(|a, b| a.relative_error.total_cmp(&b.relative_error))
        .expect("catalog has mean laws");
    Ok(MeanResolution {
        c_hat,
        band,
        candidates,
        verdict,
        per_order,
        nearest,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailFit {
    /// Fitted ratio of successive `Pr(k) k^(3/2)`.
    pub r_hat: f64,
    pub requested: (usize, usize),
    pub used: (usize, usize),
    pub shrunk: bool,
    /// `(k, Pr(k+1)(k+1)^(3/2) / (Pr(k) k^(3/2)))` over the used range.
    pub successive: Vec<(usize, f64)>,
    /// Geometric mean of the successive ratios, `(y_b / y_a)^(1/(b-a))`.
    pub endpoint_ratio: f64,
    pub relative_error: f64,
}

/// Fits `Pr(k) k^(3/2) ~ C r^k` over `k in [lo, hi]` by least squares on the
/// logarithm. `weights[k]` may be counts or probabilities. Empty bins shrink
/// the range to the longest run of nonempty bins inside it.
pub fn degree_tail_check(weights: &[f64], lo: usize, hi: usize) -> Result<TailFit> {
    let hi_avail = hi.min(weights.len().saturating_sub(1));
    let mut best = (lo, lo);
    let mut start = None;
    for k in lo..=hi_avail.max(lo) {
        let ok = weights.get(k).is_some_and(|&w| w > 0.0);
        match (ok, start) {
            (true, None) => start = Some(k),
            (false, Some(s)) => {
                if k - s > best.1 - best.0 {
                    best = (s, k);
                }
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        if hi_avail + 1 - s > best.1 - best.0 {
            best = (s, hi_avail + 1);
        }
    }
    let (a, b) = (best.0, best.1.saturating_sub(1));
    if best.1 < best.0 + 3 {
        return Err(Error::InsufficientData(format!(
            "fewer than 3 nonempty bins in [{lo}, {hi}]"
        )));
    }
    let y: Vec<(f64, f64)> = (a..=b)
        .map(|k| (k as f64, weights[k].ln() + 1.5 * (k as f64).ln()))
        .collect();
    let m = y.len() as f64;
    let mx = y.iter().map(|p| p.0).sum::<f64>() / m;
    let my = y.iter().map(|p| p.1).sum::<f64>() / m;
    let slope = y.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / y.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    let r_hat = slope.exp();
    let successive = y.windows(2).map(|w| (w[0].0 as usize, (w[1].1 - w[0].1).exp())).collect();
    let endpoint_ratio = ((y[y.len() - 1].1 - y[0].1) / (m - 1.0)).exp();
    Ok(TailFit {
        r_hat,
        requested: (lo, hi),
        used: (a, b),
        shrunk: (a, b) != (lo, hi),
        successive,
        endpoint_ratio,
        relative_error: (r_hat - BETA).abs() / BETA,
    })
}

/// Center-degree distribution of RANS of order `n` from the exact
/// coefficients of `Dg(z, u)`, as weights indexed by degree.
pub fn exact_center_degree_weights(n: usize) -> Vec<f64> {
    let table = bivariate_degree(n, n + 3);
    let total: BigInt = table.dg[n].iter().sum();
    let ln_total = ln_big(&total);
    table.dg[n]
        .iter()
        .map(|c| if c.is_zero() { 0.0 } else { (ln_big(c) - ln_total).exp() })
        .collect()
}

/// Exact coefficients of the counting series used by the convergence
/// tables.
#[derive(Clone, Debug)]
pub struct ExactCoefficients {
    pub trunc: usize,
    pub t: Vec<BigInt>,
    pub tprime: Vec<BigInt>,
    pub delta: [Vec<BigInt>; 3],
    pub intra: Vec<BigInt>,
    pub inter_minus: Vec<BigInt>,
    pub equidistant: Vec<BigInt>,
    pub fedge: Vec<BigInt>,
    pub g: Vec<BigInt>,
}

/// Largest order used to validate the equidistant series before trusting it.
pub const E_ORACLE_ORDER: usize = 6;

pub fn exact_coefficients(trunc: usize) -> Result<ExactCoefficients> {
    let oracle: Vec<BigInt> = census_up_to(E_ORACLE_ORDER, E_ORACLE_ORDER)?
        .iter()
        .map(|c| BigInt::from(c.equidistant))
        .collect();
    let all = gf::series_g(trunc, &oracle)?;
    if !all.fedge.validated() {
        return Err(Error::InsufficientData(
            "no closed form of the equidistant series matches the census".into(),
        ));
    }
    let [d1, d2, d3] = &all.delta.delta;
    Ok(ExactCoefficients {
        trunc,
        t: integer_coeffs(&gf::series_t(trunc)),
        tprime: integer_coeffs(&gf::series_tprime(trunc)),
        delta: [integer_coeffs(d1), integer_coeffs(d2), integer_coeffs(d3)],
        intra: integer_coeffs(&all.intra.intra_census),
        inter_minus: integer_coeffs(&all.inter.inter_minus),
        equidistant: integer_coeffs(&all.fedge.e),
        fedge: integer_coeffs(&all.fedge.f),
        g: integer_coeffs(&all.g),
    })
}

impl ExactCoefficients {
    fn per_tree(&self, v: &[BigInt], orders: &[usize]) -> Vec<Observation> {
        orders.iter().map(|&n| Observation::from_ratio(n, &v[n], &self.t[n])).collect()
    }

    /// Observations matching a catalogued law id.
    pub fn observations(&self, law_id: &str, orders: &[usize]) -> Result<Vec<Observation>> {
        if let Some(&n) = orders.iter().find(|&&n| n > self.trunc || n == 0) {
            return Err(Error::OutOfRange {
                index: n,
                trunc: self.trunc,
            });
        }
        Ok(match law_id {
            "trees" => orders.iter().map(|&n| Observation::from_big(n, &self.t[n])).collect(),
            "trees-derivative" => orders.iter().map(|&n| Observation::from_big(n, &self.tprime[n])).collect(),
            "delta-pole" => orders.iter().map(|&n| Observation::from_big(n, &self.delta[0][n])).collect(),
            "mean-from-o1" => orders
                .iter()
                .map(|&n| Observation::from_ratio(n, &self.delta[0][n], &(&self.t[n] * BigInt::from(n))))
                .collect(),
            "intra" | "intra-derived" => self.per_tree(&self.intra, orders),
            "inter" | "inter-derived" => self.per_tree(&self.inter_minus, orders),
            "fedge" => self.per_tree(&self.fedge, orders),
            "equidistant-derived" => self.per_tree(&self.equidistant, orders),
            other => return Err(Error::InsufficientData(format!("no exact sequence for law {other}"))),
        })
    }
}

/// The band that `H(rho (1 - eps))` must fall in:
/// `[1 - 1.2 (11/sqrt(3)) sqrt(eps), 1]`.
pub fn h_band(eps: f64) -> (f64, f64) {
    (1.0 - 1.2 * 11.0 / 3f64.sqrt() * eps.sqrt(), 1.0)
}
