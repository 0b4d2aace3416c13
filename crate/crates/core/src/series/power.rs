use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Truncated power series `c[0] + c[1] z + ... + c[N] z^N` with exact
/// rational coefficients. `N` is the truncation order; coefficients beyond
/// it are unknown, never zero.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    /// Zero series known up to `z^trunc`.
    pub fn zero(trunc: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        Self::constant(BigRational::one(), trunc)
    }

    pub fn constant(c: BigRational, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = c;
        s
    }

    /// `c z^k`.
    pub fn monomial(c: BigRational, k: usize, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if k <= trunc {
            s.coeffs[k] = c;
        }
        s
    }

    /// `z`.
    pub fn z(trunc: usize) -> Self {
        Self::monomial(BigRational::one(), 1, trunc)
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Self { coeffs }
    }

    pub fn from_integers<I, T>(values: I) -> Self
    where
        I: IntoIterator<Item = T>,
        BigInt: From<T>,
    {
        Self::from_coeffs(values.into_iter().map(|v| BigRational::from_integer(v.into())).collect())
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&BigRational> {
        self.coeffs.get(n).ok_or(Error::OutOfRange {
            index: n,
            trunc: self.trunc(),
        })
    }

    /// Replaces one coefficient. Used by fault-injection hooks.
    pub fn set_coeff(&mut self, n: usize, value: BigRational) -> Result<()> {
        let trunc = self.trunc();
        let slot = self.coeffs.get_mut(n).ok_or(Error::OutOfRange { index: n, trunc })?;
        *slot = value;
        Ok(())
    }

    /// Index of the first nonzero coefficient, `None` if all known ones vanish.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(trunc + 1);
        Self::from_coeffs(coeffs)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, or `None` if some coefficient is fractional.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(k.into()))
    }

    /// Multiplication by `z^k`. The truncation order is kept.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k.min(self.coeffs.len())];
        coeffs.extend(self.coeffs.iter().take(self.coeffs.len().saturating_sub(k)).cloned());
        Self::from_coeffs(coeffs)
    }

    /// Exact division by `z^k`; the low coefficients must vanish. The result
    /// is known only up to `z^(N-k)`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.trunc() {
            return Err(Error::NotInvertible("valuation exceeds truncation"));
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotInvertible("numerator valuation below denominator valuation"));
        }
        Ok(Self::from_coeffs(self.coeffs[k..].to_vec()))
    }

    /// Formal derivative; known up to `z^(N-1)`.
    pub fn derivative(&self) -> Self {
        if self.trunc() == 0 {
            return Self::zero(0);
        }
        Self::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * BigRational::from_integer((k + 1).into()))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.trunc());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NotInvertible("zero constant term"));
        }
        let n = self.trunc();
        let (ints, denom) = integer_parts(&self.coeffs);
        let lead = &ints[0];
        if lead.abs().is_one() {
            // a = A / d with integer A and A_0 = +-1, so 1/a = d / A and the
            // recurrence for 1/A stays in the integers.
            let mut b: Vec<BigInt> = Vec::with_capacity(n + 1);
            b.push(lead.clone());
            for m in 1..=n {
                let mut acc = BigInt::zero();
                for k in 1..=m {
                    if !ints[k].is_zero() {
                        acc += &ints[k] * &b[m - k];
                    }
                }
                b.push(-acc * lead);
            }
            return Ok(Self::from_coeffs(
                b.into_iter().map(|x| BigRational::new(x * &denom, BigInt::one())).collect(),
            ));
        }
        let inv0 = a0.recip();
        let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
        b.push(inv0.clone());
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &b[m - k];
                }
            }
            b.push(-acc * &inv0);
        }
        Ok(Self::from_coeffs(b))
    }

    /// `self / other`. When `other` has positive valuation `v`, both sides are
    /// divided by `z^v` first and the result is known up to `z^(N-v)`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let v = other
            .valuation()
            .ok_or(Error::NotInvertible("denominator vanishes to truncation"))?;
        let num = self.shift_down(v)?;
        let den = other.shift_down(v)?;
        let trunc = num.trunc().min(den.trunc());
        Ok(&num.truncate(trunc) * &den.truncate(trunc).inverse()?)
    }

    /// Partial sum at a rational point.
    pub fn eval_truncated(&self, z: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * z + c)
    }

    /// First index where two series differ, over their common truncation.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        let n = self.trunc().min(other.trunc());
        (0..=n).find(|&k| self.coeffs[k] != other.coeffs[k])
    }

    /// CSV dump `n,integer` for integral series, `n,numerator,denominator`
    /// otherwise, with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if let Some(ints) = self.to_integers() {
            out.push_str("n,value\n");
            for (n, c) in ints.iter().enumerate() {
                out.push_str(&format!("{n},{c}\n"));
            }
        } else {
            out.push_str("n,numerator,denominator\n");
            for (n, c) in self.coeffs.iter().enumerate() {
                out.push_str(&format!("{n},{},{}\n", c.numer(), c.denom()));
            }
        }
        out
    }
}

/// Writes the coefficients as integers scaled by a common denominator.
fn integer_parts(coeffs: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let denom = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| if c.denom().is_one() { acc } else { acc.lcm(c.denom()) });
    let ints = coeffs
        .iter()
        .map(|c| {
            if denom.is_one() {
                c.numer().clone()
            } else {
                c.numer() * (&denom / c.denom())
            }
        })
        .collect();
    (ints, denom)
}

fn convolve(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

impl<'a> Mul<&'a PowerSeries> for &'a PowerSeries {
    type Output = PowerSeries;

    fn mul(self, rhs: &'a PowerSeries) -> PowerSeries {
        let len = self.coeffs.len().min(rhs.coeffs.len());
        let (a, da) = integer_parts(&self.coeffs[..len]);
        let (b, db) = integer_parts(&rhs.coeffs[..len]);
        let prod = convolve(&a, &b, len);
        let denom = da * db;
        PowerSeries::from_coeffs(
            prod.into_iter()
                .map(|x| BigRational::new(x, denom.clone()))
                .collect(),
        )
    }
}

impl<'a> Add<&'a PowerSeries> for &'a PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: &'a PowerSeries) -> PowerSeries {
        let len = self.coeffs.len().min(rhs.coeffs.len());
        PowerSeries::from_coeffs((0..len).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect())
    }
}

impl<'a> Sub<&'a PowerSeries> for &'a PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: &'a PowerSeries) -> PowerSeries {
        let len = self.coeffs.len().min(rhs.coeffs.len());
        PowerSeries::from_coeffs((0..len).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect())
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;

    fn neg(self) -> PowerSeries {
        PowerSeries::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<PowerSeries> for PowerSeries {
            type Output = PowerSeries;
            fn $m(self, rhs: PowerSeries) -> PowerSeries {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a PowerSeries> for PowerSeries {
            type Output = PowerSeries;
            fn $m(self, rhs: &'a PowerSeries) -> PowerSeries {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<PowerSeries> for &'a PowerSeries {
            type Output = PowerSeries;
            fn $m(self, rhs: PowerSeries) -> PowerSeries {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerSeries[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "; O(z^{})]", self.trunc() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> PowerSeries {
        PowerSeries::from_integers(v.iter().copied())
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_z = ints(&[1, -1, 0, 0, 0]);
        assert_eq!(one_minus_z.inverse().unwrap(), ints(&[1, 1, 1, 1, 1]));
        let two_minus_z = ints(&[2, -1, 0]);
        let inv = two_minus_z.inverse().unwrap();
        assert_eq!(inv.coeffs(), &[q(1, 2), q(1, 4), q(1, 8)]);
    }

    #[test]
    fn division_with_valuation() {
        // (z^2 + z^3) / (z + z^2) = z, known to one order less.
        let num = ints(&[0, 0, 1, 1, 0]);
        let den = ints(&[0, 1, 1, 0, 0]);
        let r = num.div(&den).unwrap();
        assert_eq!(r, ints(&[0, 1, 0, 0]));
        assert!(ints(&[1, 1]).div(&ints(&[0, 1])).is_err());
        assert!(ints(&[1, 1]).inverse().is_ok());
        assert!(ints(&[0, 1]).inverse().is_err());
    }

    #[test]
    fn derivative_and_shift() {
        let s = ints(&[1, 2, 3, 4]);
        assert_eq!(s.derivative(), ints(&[2, 6, 12]));
        assert_eq!(s.shift_up(1), ints(&[0, 1, 2, 3]));
        assert_eq!(s.shift_up(1).shift_down(1).unwrap(), ints(&[1, 2, 3]));
        assert!(matches!(s.coeff(4), Err(Error::OutOfRange { index: 4, trunc: 3 })));
    }

    #[test]
    fn csv_dump() {
        assert_eq!(ints(&[1, 3]).to_csv(), "n,value\n0,1\n1,3\n");
        let half = PowerSeries::from_coeffs(vec![q(1, 2)]);
        assert_eq!(half.to_csv(), "n,numerator,denominator\n0,1,2\n");
    }

    fn arb_series() -> impl Strategy<Value = PowerSeries> {
        prop::collection::vec((-20i64..20, 1i64..5), 6).prop_map(|v| {
            PowerSeries::from_coeffs(v.into_iter().map(|(n, d)| q(n, d)).collect())
        })
    }

    proptest! {
        #[test]
        fn inverse_is_two_sided(mut a in arb_series()) {
            if a.coeffs()[0].is_zero() {
                a.set_coeff(0, q(1, 1)).unwrap();
            }
            let id = &a * &a.inverse().unwrap();
            prop_assert_eq!(id, PowerSeries::one(5));
        }

        #[test]
        fn product_rule(a in arb_series(), b in arb_series()) {
            let lhs = (&a * &b).derivative();
            let rhs = &(&a.derivative() * &b.truncate(4)) + &(&a.truncate(4) * &b.derivative());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn mul_distributes(a in arb_series(), b in arb_series(), c in arb_series()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }
}
