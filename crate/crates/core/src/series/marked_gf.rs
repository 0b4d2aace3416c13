//! Multivariate generating functions: center degree, distance profiles from
//! `O1`, and the joint law of the three labeling sums.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::gf::series_t;
use super::marked::{fixed_point, MarkedSeries, Monomial};
use crate::error::{Error, Result};
use crate::tree::TreeCountTable;

/// Largest `d` accepted by [`marked_td`].
pub const TD_MAX_DEPTH: usize = 3;
/// Largest truncation accepted by [`marked_td`].
pub const TD_MAX_TRUNC: usize = 8;
/// Largest truncation accepted by [`topological_gf`].
pub const TOPOLOGICAL_MAX_TRUNC: usize = 6;

/// Dense table `[n][k]` of integer coefficients of a series in `z` and `u`.
pub type DenseTable = Vec<Vec<BigInt>>;

/// `T(z, u)` (internal vertices adjacent to one corner) and
/// `Dg(z, u) = z u^3 T(z, u)^3` (center degree).
#[derive(Clone, Debug)]
pub struct BivariateDegree {
    pub trunc: usize,
    pub max_u: usize,
    pub t_zu: DenseTable,
    pub dg: DenseTable,
}

fn poly_mul_into(a: &[BigInt], b: &[BigInt], out: &mut [BigInt]) {
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= out.len() {
                break;
            }
            out[i + j] += x * y;
        }
    }
}

/// Solves `T(z,u) = 1 + u z T(z) T(z,u)^2` coefficient by coefficient, keeping
/// powers of `u` up to `max_u`.
pub fn bivariate_degree(trunc: usize, max_u: usize) -> BivariateDegree {
    let width = max_u + 1;
    let counts = TreeCountTable::up_to(trunc);
    let t: Vec<BigInt> = counts.counts().iter().map(|c| BigInt::from(c.clone())).collect();
    let zero_row = || vec![BigInt::zero(); width];
    let mut tzu: DenseTable = Vec::with_capacity(trunc + 1);
    let mut sq: DenseTable = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        let mut row = zero_row();
        if n == 0 {
            row[0] = BigInt::from(1);
        } else {
            // [z^(n-1)] T(z) T(z,u)^2, shifted by one power of u.
            let mut acc = zero_row();
            for a in 0..n {
                let s = &sq[n - 1 - a];
                for k in 0..width {
                    if !s[k].is_zero() {
                        acc[k] += &t[a] * &s[k];
                    }
                }
            }
            for k in 1..width {
                row[k] = std::mem::take(&mut acc[k - 1]);
            }
        }
        tzu.push(row);
        let mut s = zero_row();
        for a in 0..=n {
            poly_mul_into(&tzu[a], &tzu[n - a], &mut s);
        }
        sq.push(s);
    }
    // Dg = z u^3 T(z,u) * T(z,u)^2
    let mut dg: DenseTable = vec![zero_row(); trunc + 1];
    for n in 1..=trunc {
        let mut cube = zero_row();
        for a in 0..n {
            poly_mul_into(&tzu[a], &sq[n - 1 - a], &mut cube);
        }
        for k in 3..width {
            dg[n][k] = std::mem::take(&mut cube[k - 3]);
        }
    }
    BivariateDegree {
        trunc,
        max_u,
        t_zu: tzu,
        dg,
    }
}

impl BivariateDegree {
    pub fn t_zu_series(&self) -> MarkedSeries {
        dense_to_marked(&self.t_zu)
    }

    pub fn dg_series(&self) -> MarkedSeries {
        dense_to_marked(&self.dg)
    }

    /// `[z^n u^k] Dg`: RANS of order `n` whose center has degree `k`.
    pub fn center_degree_count(&self, n: usize, k: usize) -> Result<&BigInt> {
        self.dg
            .get(n)
            .ok_or(Error::OutOfRange {
                index: n,
                trunc: self.trunc,
            })?
            .get(k)
            .ok_or(Error::OutOfRange {
                index: k,
                trunc: self.max_u,
            })
    }
}

fn dense_to_marked(table: &DenseTable) -> MarkedSeries {
    let trunc = table.len() - 1;
    let mut out = MarkedSeries::zero(1, trunc);
    for (n, row) in table.iter().enumerate() {
        for (k, c) in row.iter().enumerate() {
            if !c.is_zero() {
                let m = MarkedSeries::monomial(1, trunc, n, &[k as u32], BigRational::from_integer(c.clone()));
                out = out.add(&m);
            }
        }
    }
    out
}

/// `T_1(z, u_1) = 1 + z u_1 T_1^2 T(z)`, by plain fixed-point iteration.
pub fn t1_fixed_point(trunc: usize) -> MarkedSeries {
    let t = MarkedSeries::from_series(&series_t(trunc), 1);
    let one = MarkedSeries::one(1, trunc);
    fixed_point(1, trunc, |x| one.add(&x.pow(2).mul(&t).times_z_monomial(&[1])))
}

fn unit(marks: usize, j: usize) -> Monomial {
    let mut m = vec![0; marks];
    m[j] = 1;
    m
}

/// `T_d(z, u_1..u_d)`, where `u_j` marks the internal vertices at distance
/// `j` from `O1`:
///
/// ```text
/// T_0 = T(z)
/// T_d = 1 + z u_1 T_d^2 (1 + z u_2 / (1 - z u_2 T_(d-1)(z, u_2..u_d)^2)^3)
/// ```
///
/// The `S1` factor is `1 + z u_2 X^3` with `X = 1/(1 - z u_2 T_(d-1)^2)`; for
/// `d = 1` it collapses to `T(z)`.
pub fn marked_td(d: usize, trunc: usize) -> Result<MarkedSeries> {
    if d > TD_MAX_DEPTH || d == 0 {
        return Err(Error::TruncationCap {
            what: "marked_td depth",
            order: d,
            cap: TD_MAX_DEPTH,
        });
    }
    if trunc > TD_MAX_TRUNC {
        return Err(Error::TruncationCap {
            what: "marked_td",
            order: trunc,
            cap: TD_MAX_TRUNC,
        });
    }
    Ok(td_unchecked(d, trunc))
}

fn td_unchecked(d: usize, trunc: usize) -> MarkedSeries {
    let one = MarkedSeries::one(d, trunc);
    let far = if d == 1 {
        MarkedSeries::from_series(&series_t(trunc), 1)
    } else {
        let inner = td_unchecked(d - 1, trunc);
        let shifted = inner.substitute(d, &(1..d).map(|j| unit(d, j)).collect::<Vec<_>>(), &vec![0; d]);
        let x = one
            .sub(&shifted.pow(2).times_z_monomial(&unit(d, 1)))
            .inverse()
            .expect("constant term 1");
        one.add(&x.pow(3).times_z_monomial(&unit(d, 1)))
    };
    fixed_point(d, trunc, |x| one.add(&x.pow(2).mul(&far).times_z_monomial(&unit(d, 0))))
}

/// `Delta(z, d1, d2, d3)`, the joint law of the three labeling sums:
///
/// ```text
/// Delta(z,d1,d2,d3) = 1 + z d1 d2 d3 Delta(z d1, d2, d3, d1)
///                       * Delta(z, d1, d2 d3, 1) * Delta(z, d1 d2, d3, 1)
/// ```
pub fn topological_gf(trunc: usize) -> Result<MarkedSeries> {
    if trunc > TOPOLOGICAL_MAX_TRUNC {
        return Err(Error::TruncationCap {
            what: "topological_gf",
            order: trunc,
            cap: TOPOLOGICAL_MAX_TRUNC,
        });
    }
    let one = MarkedSeries::one(3, trunc);
    Ok(fixed_point(3, trunc, |x| {
        let s1 = x.substitute(3, &[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]], &[1, 0, 0]);
        let s2 = x.substitute(3, &[vec![1, 0, 0], vec![0, 1, 1], vec![0, 0, 0]], &[0, 0, 0]);
        let s3 = x.substitute(3, &[vec![1, 1, 0], vec![0, 0, 1], vec![0, 0, 0]], &[0, 0, 0]);
        one.add(&s1.mul(&s2).mul(&s3).times_z_monomial(&[1, 1, 1]))
    }))
}
