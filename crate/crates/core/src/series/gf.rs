//! Univariate generating functions of the distance parameters.
//!
//! Every series counts a quantity summed over all RANS of each order, so
//! every coefficient listed here is a nonnegative integer.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::power::PowerSeries;
use crate::error::{Error, Result};
use crate::tree::TreeCountTable;

pub fn int(k: i64) -> BigRational {
    BigRational::from_integer(k.into())
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Extra orders carried internally to absorb valuation losses.
const SLACK: usize = 2;

/// `T(z) = 1 + z T(z)^3`, solved coefficient by coefficient.
pub fn series_t(trunc: usize) -> PowerSeries {
    let table = TreeCountTable::up_to(trunc);
    PowerSeries::from_coeffs(
        table
            .counts()
            .iter()
            .map(|c| BigRational::from_integer(BigInt::from(c.clone())))
            .collect(),
    )
}

/// `T(z)` by plain functional iteration `X <- 1 + z X^3`, `trunc + 1` times.
pub fn series_t_by_iteration(trunc: usize) -> PowerSeries {
    let one = PowerSeries::one(trunc);
    let mut x = PowerSeries::zero(trunc);
    for _ in 0..=trunc {
        x = &one + &x.pow(3).shift_up(1);
    }
    x
}

/// The series every construction below is assembled from.
#[derive(Clone, Debug)]
pub struct Kernel {
    trunc: usize,
    pub z: PowerSeries,
    pub t: PowerSeries,
    pub t2: PowerSeries,
    pub t3: PowerSeries,
    /// `T'(z)`, closed form `T^3 / (1 - 3 z T^2)`.
    pub tp: PowerSeries,
    /// `z T^2`.
    pub y: PowerSeries,
    /// `1 / (1 - 3 z T^2)`: summing a parameter over every sub-RANS.
    pub pointing: PowerSeries,
}

impl Kernel {
    /// Kernel known up to `z^trunc`.
    pub fn new(trunc: usize) -> Self {
        let t = series_t(trunc);
        let z = PowerSeries::z(trunc);
        let t2 = &t * &t;
        let t3 = &t2 * &t;
        let y = &z * &t2;
        let one = PowerSeries::one(trunc);
        let pointing = (&one - &y.scale_int(3)).inverse().expect("constant term 1");
        let tp = &t3 * &pointing;
        Self {
            trunc,
            z,
            t,
            t2,
            t3,
            tp,
            y,
            pointing,
        }
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn one(&self) -> PowerSeries {
        PowerSeries::one(self.trunc)
    }

    pub fn constant(&self, k: i64) -> PowerSeries {
        PowerSeries::constant(int(k), self.trunc)
    }

    /// `z T^3`, which is also `T - 1`.
    pub fn zt3(&self) -> PowerSeries {
        &self.z * &self.t3
    }

    /// `z T'`.
    pub fn ztp(&self) -> PowerSeries {
        &self.z * &self.tp
    }

    /// Polynomial in `y = z T^2` with integer coefficients.
    fn poly_y(&self, coeffs: &[i64]) -> PowerSeries {
        let mut acc = PowerSeries::zero(self.trunc);
        let mut power = self.one();
        for &c in coeffs {
            acc = &acc + &power.scale_int(c);
            power = &power * &self.y;
        }
        acc
    }
}

/// `T'(z)` by the closed form.
pub fn series_tprime(trunc: usize) -> PowerSeries {
    Kernel::new(trunc).tp
}

/// `T'(z)` as the formal derivative of `T(z)`.
pub fn series_tprime_by_derivative(trunc: usize) -> PowerSeries {
    series_t(trunc + 1).derivative()
}

/// `H(z, T(z)) = 6 z^2 (T - 1) T / (1 - 3z - zT - zT^2 + 2 z^2 T^2)`.
pub fn series_h(trunc: usize) -> PowerSeries {
    h_from(&Kernel::new(trunc))
}

fn h_from(k: &Kernel) -> PowerSeries {
    let z2 = &k.z * &k.z;
    let num = (&z2 * &(&(&k.t - &k.one()) * &k.t)).scale_int(6);
    let den = &(&(&(&k.one() - &k.z.scale_int(3)) - &(&k.z * &k.t)) - &(&k.z * &k.t2))
        + &(&z2 * &k.t2).scale_int(2);
    &num * &den.inverse().expect("constant term 1")
}

/// `D_1 .. D_max`: vertices at distance `i` from `O1`, summed over all RANS.
pub fn series_d_all(max: usize, trunc: usize) -> Vec<PowerSeries> {
    let k = Kernel::new(trunc + SLACK);
    let one = k.one();
    let one_minus_2y = &one - &k.y.scale_int(2);
    let d1 = &k.zt3() * &one_minus_2y.inverse().expect("constant term 1");
    let h = h_from(&k);
    let t4 = &k.t2 * &k.t2;
    let num = &h * &(&one + &(&(&k.z * &k.z) * &t4).scale_int(2));
    let den = (&(&k.z * &k.t) * &one_minus_2y).scale_int(6);
    let d2 = num.div(&den).expect("valuation of H exceeds that of z");
    let mut out = vec![d1.truncate(trunc)];
    let mut cur = d2.truncate(trunc);
    let h = h.truncate(trunc);
    for i in 2..=max {
        if i > 2 {
            cur = &cur * &h;
        }
        out.push(cur.clone());
    }
    out.truncate(max);
    out
}

/// `D_i`, `i >= 1`.
pub fn series_d(i: usize, trunc: usize) -> PowerSeries {
    assert!(i >= 1, "distance index starts at 1");
    series_d_all(i, trunc).pop().unwrap()
}

/// `sum_i i D_i(z)` from the closed form of `D(z, u) = D_1 u + D_2 u^2 / (1 - u H)`:
/// `D_1 + D_2 (2 - H) / (1 - H)^2`.
pub fn total_distance_from_profile(trunc: usize) -> PowerSeries {
    let d = series_d_all(2, trunc);
    let h = series_h(trunc);
    let one = PowerSeries::one(trunc);
    let one_minus_h = &one - &h;
    let inv = (&one_minus_h * &one_minus_h).inverse().expect("constant term 1");
    &d[0] + &(&(&d[1] * &(&one.scale_int(2) - &h)) * &inv)
}

/// `Delta_(1), Delta_(2), Delta_(3)`: sums of the three labelings.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaSeries {
    pub delta: [PowerSeries; 3],
}

impl DeltaSeries {
    pub fn get(&self, i: usize) -> &PowerSeries {
        &self.delta[i - 1]
    }
}

/// Closed forms `z T^3 P_i(z T^2) / Q` with
/// `Q = (1 + 2 z^2 T^4)(1 - 3 z T^2)^2`.
pub fn delta_closed_form(k: &Kernel) -> DeltaSeries {
    let q = &k.poly_y(&[1, 0, 2]) * &k.poly_y(&[1, -3]).pow(2);
    let inv_q = q.inverse().expect("constant term 1");
    let zt3 = k.zt3();
    let make = |p: &[i64]| &(&zt3 * &k.poly_y(p)) * &inv_q;
    DeltaSeries {
        delta: [make(&[1, -2, 1, -6]), make(&[1, -3, 4, -6]), make(&[1, -3, 2])],
    }
}

/// Solves the linear system obtained by differentiating the topological
/// recursion, with `y = z T^2`:
///
/// ```text
/// D1 = zT^3 + 2y D1 + y (zT' + D3)
/// D2 = zT^3 + 2y D1 + y D2
/// D3 = zT^3 + 3y D2
/// ```
pub fn delta_by_system(k: &Kernel) -> Result<DeltaSeries> {
    let one = k.one();
    let zero = PowerSeries::zero(k.trunc());
    let y = &k.y;
    let zt3 = k.zt3();
    let matrix = vec![
        vec![&one - &y.scale_int(2), zero.clone(), -y],
        vec![-&y.scale_int(2), &one - y, zero.clone()],
        vec![zero, -&y.scale_int(3), one],
    ];
    let rhs = vec![&zt3 + &(y * &k.ztp()), zt3.clone(), zt3];
    let [d1, d2, d3]: [PowerSeries; 3] = solve_linear(matrix, rhs)?
        .try_into()
        .expect("three unknowns");
    Ok(DeltaSeries {
        delta: [d1, d2, d3],
    })
}

/// Gaussian elimination over truncated power series. Pivots must have a
/// nonzero constant term.
pub fn solve_linear(mut a: Vec<Vec<PowerSeries>>, mut b: Vec<PowerSeries>) -> Result<Vec<PowerSeries>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].coeffs()[0].is_zero_value())
            .ok_or(Error::NotInvertible("singular system"))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].inverse()?;
        for r in 0..n {
            if r == col || a[r][col].valuation().is_none() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &delta;
            }
            let delta = &factor * &b[col];
            b[r] = &b[r] - &delta;
        }
    }
    Ok((0..n).map(|i| &b[i] * &a[i][i].inverse().expect("pivot")).collect())
}

trait IsZeroValue {
    fn is_zero_value(&self) -> bool;
}

impl IsZeroValue for BigRational {
    fn is_zero_value(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

/// Both derivations of the `Delta_(i)`, checked against each other.
pub fn series_delta(trunc: usize) -> Result<DeltaSeries> {
    let k = Kernel::new(trunc);
    let closed = delta_closed_form(&k);
    let system = delta_by_system(&k)?;
    const NAMES: [&str; 3] = ["Delta_(1)", "Delta_(2)", "Delta_(3)"];
    for i in 0..3 {
        if let Some(n) = closed.delta[i].first_mismatch(&system.delta[i]) {
            return Err(Error::RouteMismatch { name: NAMES[i], n });
        }
    }
    Ok(closed)
}

/// Intradistance series, literal and with the empty RANS removed.
#[derive(Clone, Debug)]
pub struct IntraSeries {
    /// `3T + 3zT^2 Delta_(3) + 3 z^2 T^2 T'`.
    pub delta_literal: PowerSeries,
    /// The same with the constant 3 (the empty RANS) removed.
    pub delta_census: PowerSeries,
    pub intra_literal: PowerSeries,
    pub intra_census: PowerSeries,
}

pub fn series_intra_from(k: &Kernel, delta: &DeltaSeries) -> IntraSeries {
    let corner_legs = &(&k.y * delta.get(3)).scale_int(3)
        + &(&(&k.z * &k.y) * &k.tp).scale_int(3);
    let delta_literal = &k.t.scale_int(3) + &corner_legs;
    let delta_census = &delta_literal - &k.constant(3);
    IntraSeries {
        intra_literal: &delta_literal * &k.pointing,
        intra_census: &delta_census * &k.pointing,
        delta_literal,
        delta_census,
    }
}

pub fn series_intra(trunc: usize) -> Result<IntraSeries> {
    let k = Kernel::new(trunc);
    let delta = series_delta(trunc)?;
    Ok(series_intra_from(&k, &delta))
}

#[derive(Clone, Debug)]
pub struct InterBounds {
    pub gamma_minus: PowerSeries,
    pub gamma_plus: PowerSeries,
    pub inter_minus: PowerSeries,
    pub inter_plus: PowerSeries,
}

pub fn series_inter_bounds_from(k: &Kernel, delta: &DeltaSeries) -> InterBounds {
    let base = (&(&(&k.z * &k.z) * &k.t) * &k.tp).scale_int(6);
    let gamma_minus = &base * delta.get(2);
    let gamma_plus = &base * delta.get(1);
    InterBounds {
        inter_minus: &gamma_minus * &k.pointing,
        inter_plus: &gamma_plus * &k.pointing,
        gamma_minus,
        gamma_plus,
    }
}

pub fn series_inter_bounds(trunc: usize) -> Result<InterBounds> {
    let k = Kernel::new(trunc);
    Ok(series_inter_bounds_from(&k, &series_delta(trunc)?))
}

/// Readings of the printed closed form for the equidistant-vertex series
/// `E(z)`. With `R = T (2 - 4T + 3T^2 - T^3) / ((2T - 3)(3T^2 - 4T + 2))`
/// and `P = 3 z T' / (2 T^2)`:
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EReading {
    /// `P (zT' - R)^2`, the expression as printed with the missing
    /// parenthesis closed after the denominator.
    Printed,
    /// `R` alone.
    InnerFraction,
    /// `P (zT' - R)`, square dropped.
    Unsquared,
    /// `P (zT' - R')` where only the fraction `R'` is squared.
    SquaredFraction,
}

impl EReading {
    pub const ALL: [EReading; 4] = [
        EReading::Printed,
        EReading::InnerFraction,
        EReading::Unsquared,
        EReading::SquaredFraction,
    ];

    pub fn describe(self) -> &'static str {
        match self {
            EReading::Printed => "3zT'/(2T^2) * (zT' - R)^2",
            EReading::InnerFraction => "R = T(2-4T+3T^2-T^3)/((2T-3)(3T^2-4T+2))",
            EReading::Unsquared => "3zT'/(2T^2) * (zT' - R)",
            EReading::SquaredFraction => "3zT'/(2T^2) * (zT' - T(2-4T+3T^2-T^3)/((2T-3)(3T^2-4T+2))^2)",
        }
    }
}

fn e_fraction(k: &Kernel, squared_denominator: bool) -> PowerSeries {
    let t4 = &k.t2 * &k.t2;
    let num = &k.t
        * &(&(&(&k.constant(2) - &k.t.scale_int(4)) + &k.t2.scale_int(3)) - &k.t3);
    let _ = t4;
    let mut den = &(&k.t.scale_int(2) - &k.constant(3))
        * &(&(&k.t2.scale_int(3) - &k.t.scale_int(4)) + &k.constant(2));
    if squared_denominator {
        den = &den * &den;
    }
    &num * &den.inverse().expect("constant term -1")
}

/// `E(z)` under one reading.
pub fn e_candidate(k: &Kernel, reading: EReading) -> PowerSeries {
    let prefactor = || {
        let inv_t2 = k.t2.inverse().expect("constant term 1");
        (&k.ztp() * &inv_t2).scale(&rat(3, 2))
    };
    match reading {
        EReading::InnerFraction => e_fraction(k, false),
        EReading::Printed => {
            let diff = &k.ztp() - &e_fraction(k, false);
            &prefactor() * &(&diff * &diff)
        }
        EReading::Unsquared => &prefactor() * &(&k.ztp() - &e_fraction(k, false)),
        EReading::SquaredFraction => &prefactor() * &(&k.ztp() - &e_fraction(k, true)),
    }
}

/// Outcome of checking one reading of `E(z)` against the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EAttempt {
    pub reading: EReading,
    /// First order at which the reading disagrees with the oracle.
    pub first_mismatch: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ESource {
    ClosedForm(EReading),
    /// No reading matched; `E` is the oracle data itself, truncated to it.
    OracleFallback,
}

#[derive(Clone, Debug)]
pub struct FedgeSeries {
    pub e: PowerSeries,
    pub e_source: ESource,
    pub attempts: Vec<EAttempt>,
    pub phi: PowerSeries,
    pub f: PowerSeries,
}

impl FedgeSeries {
    /// True when a closed form validated; false is the warning state.
    pub fn validated(&self) -> bool {
        matches!(self.e_source, ESource::ClosedForm(_))
    }
}

/// `phi = (3/2)(z^3 T T'^2 - 2 z^2 T T' E + z T E^2)`.
pub fn phi_from(k: &Kernel, e: &PowerSeries) -> PowerSeries {
    let zt = &k.z * &k.t;
    let ztp = k.ztp();
    let a = &(&zt * &ztp) * &ztp;
    let b = (&(&zt * &ztp) * e).scale_int(2);
    let c = &(&zt * e) * e;
    (&(&a - &b) + &c).scale(&rat(3, 2))
}

/// f-edge series. `oracle_e[n]` is the number of equidistant internal
/// vertices summed over all RANS of order `n`, from exhaustive enumeration.
pub fn series_fedge(trunc: usize, oracle_e: &[BigInt]) -> Result<FedgeSeries> {
    if oracle_e.is_empty() {
        return Err(Error::EmptyInput);
    }
    let k = Kernel::new(trunc);
    let oracle = PowerSeries::from_coeffs(
        oracle_e.iter().map(|v| BigRational::from_integer(v.clone())).collect(),
    );
    let mut attempts = Vec::new();
    let mut chosen = None;
    for reading in EReading::ALL {
        let candidate = e_candidate(&k, reading);
        let first_mismatch = candidate.first_mismatch(&oracle);
        if first_mismatch.is_none() && chosen.is_none() {
            chosen = Some((reading, candidate));
        }
        attempts.push(EAttempt {
            reading,
            first_mismatch,
        });
    }
    let (e, e_source) = match chosen {
        Some((reading, e)) => (e, ESource::ClosedForm(reading)),
        None => (oracle.truncate(trunc.min(oracle.trunc())), ESource::OracleFallback),
    };
    let k = if e.trunc() < trunc { Kernel::new(e.trunc()) } else { k };
    let phi = phi_from(&k, &e);
    let f = &phi * &k.pointing;
    Ok(FedgeSeries {
        e,
        e_source,
        attempts,
        phi,
        f,
    })
}

/// All pieces of the total-distance series `G = Intra + Inter^- + F`.
#[derive(Clone, Debug)]
pub struct DistanceSeries {
    pub delta: DeltaSeries,
    pub intra: IntraSeries,
    pub inter: InterBounds,
    pub fedge: FedgeSeries,
    pub g: PowerSeries,
}

pub fn series_g(trunc: usize, oracle_e: &[BigInt]) -> Result<DistanceSeries> {
    let k = Kernel::new(trunc);
    let delta = series_delta(trunc)?;
    let intra = series_intra_from(&k, &delta);
    let inter = series_inter_bounds_from(&k, &delta);
    let fedge = series_fedge(trunc, oracle_e)?;
    let g = &(&intra.intra_census + &inter.inter_minus) + &fedge.f;
    Ok(DistanceSeries {
        delta,
        intra,
        inter,
        fedge,
        g,
    })
}

/// Coefficients of a counting series as integers; panics on fractions.
pub fn integer_coeffs(s: &PowerSeries) -> Vec<BigInt> {
    s.to_integers().expect("counting series has integer coefficients")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    fn prefix(s: &PowerSeries, k: usize) -> Vec<BigInt> {
        integer_coeffs(&s.truncate(k - 1))
    }

    // Equidistant-vertex totals for orders 0..=6, from exhaustive BFS over all
    // trees (see census tests, which recompute them).
    fn oracle_e() -> Vec<BigInt> {
        ints(&[0, 1, 4, 20, 114, 685, 4220])
    }

    #[test]
    fn t_and_derivative() {
        assert_eq!(prefix(&series_t(10), 5), ints(&[1, 1, 3, 12, 55]));
        assert_eq!(series_t(12), series_t_by_iteration(12));
        let t = series_t(10);
        let residual = &(&t - &PowerSeries::one(10)) - &t.pow(3).shift_up(1);
        assert!(residual.valuation().is_none());
        assert_eq!(prefix(&series_tprime(10), 4), ints(&[1, 6, 36, 220]));
        assert_eq!(series_tprime(12).truncate(11), series_tprime_by_derivative(11));
    }

    #[test]
    fn distance_profiles() {
        let d = series_d_all(3, 8);
        assert_eq!(prefix(&d[0], 4), ints(&[0, 1, 5, 26]));
        assert_eq!(prefix(&d[1], 4), ints(&[0, 0, 1, 10]));
        for (i, s) in d.iter().enumerate() {
            assert!(s.valuation().unwrap() >= i + 1);
            assert!(s.is_integral());
        }
        let h = series_h(8);
        assert_eq!(prefix(&h, 5), ints(&[0, 0, 0, 6, 54]));
        assert_eq!(&h * &d[1], d[2]);
        assert_eq!(series_d(1, 8), d[0]);
    }

    #[test]
    fn delta_routes_agree() {
        let delta = series_delta(30).unwrap();
        assert_eq!(prefix(delta.get(1), 4), ints(&[0, 1, 7, 46]));
        assert_eq!(prefix(delta.get(2), 4), ints(&[0, 1, 6, 38]));
        assert_eq!(prefix(delta.get(3), 4), ints(&[0, 1, 6, 36]));
        assert_eq!(total_distance_from_profile(30), delta.get(1).clone());
    }

    #[test]
    fn delta_system_residuals_vanish() {
        let k = Kernel::new(20);
        let d = delta_by_system(&k).unwrap();
        let y = &k.y;
        let zt3 = k.zt3();
        let r1 = &(&(&zt3 + &(y * &(&k.ztp() + d.get(3)))) + &(y * d.get(1)).scale_int(2)) - d.get(1);
        let r2 = &(&(&zt3 + &(y * d.get(1)).scale_int(2)) + &(y * d.get(2))) - d.get(2);
        let r3 = &(&zt3 + &(y * d.get(2)).scale_int(3)) - d.get(3);
        for r in [r1, r2, r3] {
            assert!(r.valuation().is_none());
        }
    }

    #[test]
    fn intra_variants() {
        let intra = series_intra(8).unwrap();
        assert_eq!(intra.delta_literal.coeffs()[0], int(3));
        assert_eq!(intra.delta_census.coeffs()[0], int(0));
        assert_eq!(prefix(&intra.intra_census, 3), ints(&[0, 3, 24]));
        let lit = integer_coeffs(&intra.intra_literal);
        let del = integer_coeffs(&intra.delta_literal);
        for n in 1..=8 {
            assert!(lit[n] >= del[n]);
        }
    }

    #[test]
    fn inter_bounds() {
        let b = series_inter_bounds(12).unwrap();
        assert!(b.gamma_minus.valuation().unwrap() >= 3);
        assert!(b.gamma_plus.valuation().unwrap() >= 3);
        let lo = integer_coeffs(&b.inter_minus);
        let hi = integer_coeffs(&b.inter_plus);
        assert!(lo.iter().zip(&hi).all(|(a, b)| a <= b));
        let k = Kernel::new(12);
        let d = series_delta(12).unwrap();
        let gap = &(&(&(&(&k.z * &k.z) * &k.t) * &k.tp).scale_int(6) * &(d.get(1) - d.get(2))) * &k.pointing;
        assert_eq!(&b.inter_plus - &b.inter_minus, gap);
    }

    #[test]
    fn e_readings_and_fedges() {
        let fe = series_fedge(12, &oracle_e()).unwrap();
        assert_eq!(fe.e_source, ESource::ClosedForm(EReading::InnerFraction));
        assert!(fe.validated());
        let printed = fe.attempts.iter().find(|a| a.reading == EReading::Printed).unwrap();
        assert_eq!(printed.first_mismatch, Some(1));
        assert_eq!(prefix(&fe.e, 3), ints(&[0, 1, 4]));
        assert!(integer_coeffs(&fe.f).iter().all(|c| c >= &BigInt::from(0)));
        // phi in factored form (3/2) z T (zT' - E)^2.
        let k = Kernel::new(12);
        let diff = &k.ztp() - &fe.e;
        let factored = (&(&(&k.z * &k.t) * &diff) * &diff).scale(&rat(3, 2));
        assert_eq!(fe.phi, factored);
        // The printed expression is the f-edge series itself.
        assert_eq!(e_candidate(&k, EReading::Printed), fe.f);
    }

    #[test]
    fn fallback_when_no_reading_matches() {
        let bogus = ints(&[0, 2, 4]);
        let fe = series_fedge(10, &bogus).unwrap();
        assert_eq!(fe.e_source, ESource::OracleFallback);
        assert!(!fe.validated());
        assert_eq!(fe.f.trunc(), 2);
        assert!(fe.attempts.iter().all(|a| a.first_mismatch.is_some()));
        assert!(matches!(series_fedge(10, &[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn total_distance_prefix() {
        let g = series_g(6, &oracle_e()).unwrap();
        assert_eq!(prefix(&g.g, 7), ints(&[0, 3, 24, 180, 1320, 9591, 69300]));
        let sum = &(&g.intra.intra_census + &g.inter.inter_minus) + &g.fedge.f;
        assert_eq!(sum, g.g);
    }
}
