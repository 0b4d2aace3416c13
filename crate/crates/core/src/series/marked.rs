use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::power::PowerSeries;
use crate::error::{Error, Result};

/// Exponent vector of the mark variables.
pub type Monomial = Vec<u32>;

/// Sparse polynomial in the mark variables.
pub type MarkPoly = BTreeMap<Monomial, BigRational>;

/// Truncated series in `z` whose coefficients are polynomials in `marks`
/// mark variables (`u_1..u_d`, or `d_(1), d_(2), d_(3)`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MarkedSeries {
    marks: usize,
    terms: Vec<MarkPoly>,
}

fn add_into(poly: &mut MarkPoly, m: Monomial, c: BigRational) {
    if c.is_zero() {
        return;
    }
    match poly.entry(m) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn poly_mul(a: &MarkPoly, b: &MarkPoly, out: &mut MarkPoly) {
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            add_into(out, m, ca * cb);
        }
    }
}

impl MarkedSeries {
    pub fn zero(marks: usize, trunc: usize) -> Self {
        Self {
            marks,
            terms: vec![MarkPoly::new(); trunc + 1],
        }
    }

    pub fn one(marks: usize, trunc: usize) -> Self {
        Self::monomial(marks, trunc, 0, &vec![0; marks], BigRational::one())
    }

    /// `c z^k u^exps`.
    pub fn monomial(marks: usize, trunc: usize, k: usize, exps: &[u32], c: BigRational) -> Self {
        assert_eq!(exps.len(), marks);
        let mut s = Self::zero(marks, trunc);
        if k <= trunc {
            add_into(&mut s.terms[k], exps.to_vec(), c);
        }
        s
    }

    /// A univariate series seen as a marked series constant in the marks.
    pub fn from_series(s: &PowerSeries, marks: usize) -> Self {
        let mut out = Self::zero(marks, s.trunc());
        for (k, c) in s.coeffs().iter().enumerate() {
            add_into(&mut out.terms[k], vec![0; marks], c.clone());
        }
        out
    }

    pub fn marks(&self) -> usize {
        self.marks
    }

    pub fn trunc(&self) -> usize {
        self.terms.len() - 1
    }

    /// Coefficient polynomial of `z^n`.
    pub fn term(&self, n: usize) -> Result<&MarkPoly> {
        self.terms.get(n).ok_or(Error::OutOfRange {
            index: n,
            trunc: self.trunc(),
        })
    }

    pub fn coeff(&self, n: usize, exps: &[u32]) -> Result<BigRational> {
        if exps.len() != self.marks {
            return Err(Error::MarkArity {
                expected: self.marks,
                got: exps.len(),
            });
        }
        Ok(self.term(n)?.get(exps).cloned().unwrap_or_else(BigRational::zero))
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        let mut terms = self.terms.clone();
        terms.truncate(trunc + 1);
        Self {
            marks: self.marks,
            terms,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.marks, other.marks);
        let len = self.terms.len().min(other.terms.len());
        let terms = (0..len)
            .map(|k| {
                let mut p = self.terms[k].clone();
                for (m, c) in &other.terms[k] {
                    add_into(&mut p, m.clone(), c.clone());
                }
                p
            })
            .collect();
        Self {
            marks: self.marks,
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            marks: self.marks,
            terms: self
                .terms
                .iter()
                .map(|p| p.iter().map(|(m, c)| (m.clone(), -c)).collect())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.marks, other.marks);
        let len = self.terms.len().min(other.terms.len());
        let mut terms = vec![MarkPoly::new(); len];
        for i in 0..len {
            if self.terms[i].is_empty() {
                continue;
            }
            for j in 0..len - i {
                poly_mul(&self.terms[i], &other.terms[j], &mut terms[i + j]);
            }
        }
        Self {
            marks: self.marks,
            terms,
        }
    }

    /// Multiplicative inverse; the `z^0` coefficient must be a nonzero
    /// constant.
    pub fn inverse(&self) -> Result<Self> {
        let zero_exps = vec![0; self.marks];
        let a0 = match self.terms[0].len() {
            1 => self.terms[0].get(&zero_exps).cloned(),
            _ => None,
        }
        .ok_or(Error::NotInvertible("z^0 coefficient is not a nonzero constant"))?;
        let inv0 = a0.recip();
        let mut out = Self::zero(self.marks, self.trunc());
        out.terms[0].insert(zero_exps, inv0.clone());
        for m in 1..=self.trunc() {
            let mut acc = MarkPoly::new();
            for k in 1..=m {
                poly_mul(&self.terms[k], &out.terms[m - k], &mut acc);
            }
            out.terms[m] = acc.into_iter().map(|(e, c)| (e, -c * &inv0)).collect();
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.marks, self.trunc()), |acc, _| acc.mul(self))
    }

    /// Monomial substitution. Old mark `j` becomes the monomial
    /// `images[j]` in `new_marks` variables, and `z` becomes `z * z_image`.
    pub fn substitute(&self, new_marks: usize, images: &[Monomial], z_image: &[u32]) -> Self {
        assert_eq!(images.len(), self.marks);
        assert!(images.iter().all(|m| m.len() == new_marks));
        assert_eq!(z_image.len(), new_marks);
        let mut out = Self::zero(new_marks, self.trunc());
        for (n, poly) in self.terms.iter().enumerate() {
            for (m, c) in poly {
                let mut e: Monomial = z_image.iter().map(|&x| x * n as u32).collect();
                for (j, &k) in m.iter().enumerate() {
                    for (slot, &x) in e.iter_mut().zip(&images[j]) {
                        *slot += k * x;
                    }
                }
                add_into(&mut out.terms[n], e, c.clone());
            }
        }
        out
    }

    /// Multiplication by `z u^exps`.
    pub fn times_z_monomial(&self, exps: &[u32]) -> Self {
        let mono = Self::monomial(self.marks, self.trunc(), 1, exps, BigRational::one());
        self.mul(&mono)
    }

    /// All marks set to 1.
    pub fn at_ones(&self) -> PowerSeries {
        PowerSeries::from_coeffs(
            self.terms
                .iter()
                .map(|p| p.values().fold(BigRational::zero(), |acc, c| acc + c))
                .collect(),
        )
    }

    /// Partial derivative in mark `i`, then all marks set to 1.
    pub fn derivative_at_ones(&self, i: usize) -> PowerSeries {
        PowerSeries::from_coeffs(
            self.terms
                .iter()
                .map(|p| {
                    p.iter().fold(BigRational::zero(), |acc, (m, c)| {
                        acc + c * BigRational::from_integer(BigInt::from(m[i]))
                    })
                })
                .collect(),
        )
    }

    /// Dump lines `n; k1,k2,..; value`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (n, poly) in self.terms.iter().enumerate() {
            for (m, c) in poly {
                let exps: Vec<String> = m.iter().map(|k| k.to_string()).collect();
                let _ = writeln!(out, "{n}; {}; {c}", exps.join(","));
            }
        }
        out
    }
}

/// Solves `X = rhs(X)` for equations in which `[z^n] rhs(X)` only depends on
/// the coefficients of `X` below `n`. Iteration `k` fixes `z^k`; `trunc + 1`
/// iterations starting from zero give the unique solution.
pub fn fixed_point<F>(marks: usize, trunc: usize, rhs: F) -> MarkedSeries
where
    F: Fn(&MarkedSeries) -> MarkedSeries,
{
    let mut x = MarkedSeries::zero(marks, trunc);
    for _ in 0..=trunc {
        x = rhs(&x);
    }
    x
}
