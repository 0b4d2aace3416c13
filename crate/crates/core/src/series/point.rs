//! Evaluation of the rational closed forms at a rational point `z < rho`.
//!
//! `T(z)` is obtained by Newton iteration on `z T^3 - T + 1 = 0` with every
//! iterate rounded to a fixed binary precision, so the only approximation is
//! that rounding; everything downstream is exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gf::{int, rat};
use super::power::PowerSeries;
use crate::error::{Error, Result};

/// Bits kept after the binary point in each Newton iterate.
pub const DEFAULT_PRECISION_BITS: u32 = 256;

/// The dominant singularity `rho = 4/27`.
pub fn rho() -> BigRational {
    rat(4, 27)
}

/// `rho (1 - eps)` for `eps = num / den`.
pub fn near_rho(eps_num: i64, eps_den: i64) -> BigRational {
    rho() * (BigRational::one() - rat(eps_num, eps_den))
}

fn round_to_bits(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = (x * BigRational::from_integer(scale.clone())).round();
    BigRational::new(scaled.to_integer(), scale)
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// The kernel quantities at one point.
#[derive(Clone, Debug)]
pub struct PointKernel {
    pub z: BigRational,
    pub t: BigRational,
    /// `T'(z) = T^3 / (1 - 3 z T^2)`.
    pub tp: BigRational,
    /// `z T^2`.
    pub y: BigRational,
    /// `|z T^3 - T + 1|` after the last iterate.
    pub residual: BigRational,
}

impl PointKernel {
    /// Requires `0 <= z < rho`.
    pub fn new(z: &BigRational, bits: u32) -> Result<Self> {
        if z.is_negative() || z >= &rho() {
            return Err(Error::OutsideDisk);
        }
        let one = BigRational::one();
        let f = |t: &BigRational| z * t * t * t - t + &one;
        let mut t = one.clone();
        let tol = BigRational::new(BigInt::one(), BigInt::one() << (bits - 8));
        for _ in 0..400 {
            let fp = int(3) * z * &t * &t - &one;
            let next = round_to_bits(&(&t - f(&t) / fp), bits);
            let step = (&next - &t).abs();
            t = next;
            if step < tol {
                break;
            }
        }
        let residual = f(&t).abs();
        let y = z * &t * &t;
        let tp = &t * &t * &t / (&one - int(3) * &y);
        Ok(Self {
            z: z.clone(),
            t,
            tp,
            y,
            residual,
        })
    }

    fn zt3(&self) -> BigRational {
        &self.z * &self.t * &self.t * &self.t
    }

    fn poly_y(&self, coeffs: &[i64]) -> BigRational {
        coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, &c| acc * &self.y + int(c))
    }

    /// `1 - z / rho`.
    pub fn distance_to_rho(&self) -> BigRational {
        BigRational::one() - &self.z / rho()
    }

    /// `H(z, T(z))`.
    pub fn h(&self) -> BigRational {
        let (z, t) = (&self.z, &self.t);
        let num = int(6) * z * z * (t - BigRational::one()) * t;
        let den = BigRational::one() - int(3) * z - z * t - z * t * t + int(2) * z * z * t * t;
        num / den
    }

    /// `Delta_(i)` from the closed forms over `Q = (1 + 2y^2)(1 - 3y)^2`.
    pub fn delta_closed(&self) -> [BigRational; 3] {
        let q = self.poly_y(&[1, 0, 2]) * self.poly_y(&[1, -3]) * self.poly_y(&[1, -3]);
        let zt3 = self.zt3();
        [
            &zt3 * self.poly_y(&[1, -2, 1, -6]) / &q,
            &zt3 * self.poly_y(&[1, -3, 4, -6]) / &q,
            &zt3 * self.poly_y(&[1, -3, 2]) / &q,
        ]
    }

    /// `Delta_(i)` by solving the 3x3 linear system at the point.
    pub fn delta_system(&self) -> [BigRational; 3] {
        let y = &self.y;
        let one = BigRational::one();
        let zt3 = self.zt3();
        let b1 = &zt3 + y * &self.z * &self.tp;
        // D3 = zt3 + 3y D2; D2 (1 - y) = zt3 + 2y D1;
        // D1 (1 - 2y) = b1 + y D3.
        // Substituting gives D1 (1 - 2y - 6y^3/(1-y)) = b1 + y zt3 + 3y^2 zt3/(1-y).
        let one_y = &one - y;
        let lhs = &one - int(2) * y - int(6) * y * y * y / &one_y;
        let rhs = &b1 + y * &zt3 + int(3) * y * y * &zt3 / &one_y;
        let d1 = rhs / lhs;
        let d2 = (&zt3 + int(2) * y * &d1) / &one_y;
        let d3 = &zt3 + int(3) * y * &d2;
        [d1, d2, d3]
    }
}

/// `(1 - z/rho) Delta_(i)(z)` at `z = rho (1 - eps)`, three ways.
#[derive(Clone, Debug)]
pub struct PoleAmplitude {
    pub eps: f64,
    pub closed_form: [f64; 3],
    pub linear_system: [f64; 3],
    /// Partial sums of the truncated series, when one was supplied.
    pub partial_sums: Option<[f64; 3]>,
    pub truncation: Option<usize>,
}

pub fn pole_amplitude(
    eps_num: i64,
    eps_den: i64,
    truncated: Option<&[PowerSeries; 3]>,
) -> Result<PoleAmplitude> {
    let z = near_rho(eps_num, eps_den);
    let k = PointKernel::new(&z, DEFAULT_PRECISION_BITS)?;
    let eps = k.distance_to_rho();
    let scale = |v: &[BigRational; 3]| [0, 1, 2].map(|i| to_f64(&(&eps * &v[i])));
    let partial_sums = truncated.map(|s| [0, 1, 2].map(|i| to_f64(&(&eps * s[i].eval_truncated(&z)))));
    Ok(PoleAmplitude {
        eps: to_f64(&eps),
        closed_form: scale(&k.delta_closed()),
        linear_system: scale(&k.delta_system()),
        partial_sums,
        truncation: truncated.map(|s| s[0].trunc()),
    })
}
