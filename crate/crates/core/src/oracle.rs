//! Independent computation of `L_i` as the multiplicative sequence of
//! `Q(x) = x / tanh(x)`, for cross-validation of [`crate::lsolver`].
//!
//! The solver does not depend on this module.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::lsolver::{solve_l, GeneratorAssignment, LGenusResult};
use crate::partitions::Partition;
use crate::symfun::monomial_to_elementary;

/// An even power series `Σ_j coeffs[j] x^{2j}` truncated after `x^{2·order}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenSeries {
    pub coeffs: Vec<Rational>,
}

impl EvenSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn mul(&self, other: &EvenSeries) -> EvenSeries {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| (0..=k).map(|j| &self.coeffs[j] * &other.coeffs[k - j]).sum())
            .collect();
        EvenSeries { coeffs }
    }

    /// Exact quotient; the divisor must have a nonzero constant term.
    pub fn div(&self, other: &EvenSeries) -> EvenSeries {
        let n = self.order().min(other.order());
        let lead = other.coeffs[0].recip();
        let mut q: Vec<Rational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                acc -= &other.coeffs[j] * &q[k - j];
            }
            q.push(acc * &lead);
        }
        EvenSeries { coeffs: q }
    }
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `cosh(x) = Σ x^{2j}/(2j)!`
pub fn cosh_series(order: usize) -> EvenSeries {
    EvenSeries {
        coeffs: (0..=order as u64)
            .map(|j| Rational::new(BigInt::one(), factorial(2 * j)))
            .collect(),
    }
}

/// `sinh(x)/x = Σ x^{2j}/(2j+1)!`
pub fn sinhc_series(order: usize) -> EvenSeries {
    EvenSeries {
        coeffs: (0..=order as u64)
            .map(|j| Rational::new(BigInt::one(), factorial(2 * j + 1)))
            .collect(),
    }
}

/// `x / tanh(x) = cosh(x) / (sinh(x)/x)` by exact series division.
pub fn q_series(order: usize) -> Result<EvenSeries> {
    if order < 1 {
        return Err(Error::InvalidArgument("series order must be >= 1".into()));
    }
    Ok(cosh_series(order).div(&sinhc_series(order)))
}

/// Degree-`i` part of the multiplicative sequence of `series`, in terms of
/// Pontryagin classes.
///
/// Expands `∏_{j=1..i} Q(t_j)` in the variables `β_j = t_j^2` up to total
/// degree `i`, reads the coefficient of each monomial symmetric function
/// `m_λ(β)`, and rewrites `Σ_λ a_λ m_λ` in elementary symmetric functions,
/// identifying `e_μ` with `p_μ`.
pub fn multiplicative_sequence(series: &EvenSeries, i: u32) -> Result<LGenusResult> {
    if i == 0 || series.order() < i as usize {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= i <= series order, got i = {i} and order {}",
            series.order()
        )));
    }
    let n = i as usize;

    // Explicit expansion: exponent vector in β_1..β_n -> coefficient.
    let mut poly: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    poly.insert(vec![0; n], Rational::one());
    for var in 0..n {
        let mut next: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (mono, c) in &poly {
            let used: u32 = mono.iter().sum();
            for (e, q) in series.coeffs.iter().enumerate().take(n + 1 - used as usize) {
                if q.is_zero() {
                    continue;
                }
                let mut m = mono.clone();
                m[var] = e as u32;
                *next.entry(m).or_insert_with(Rational::zero) += c * q;
            }
        }
        poly = next;
    }

    // Symmetric: every monomial of degree i carries the coefficient of its
    // sorted exponent vector.
    let mut m_coeffs: BTreeMap<Partition, Rational> = BTreeMap::new();
    for (mono, c) in poly.iter().filter(|(m, _)| m.iter().sum::<u32>() == i) {
        let lambda = Partition::new(mono.iter().copied().filter(|&e| e > 0).collect())?;
        match m_coeffs.get(&lambda) {
            Some(prev) if prev != c => {
                return Err(Error::InvalidArgument(
                    "expansion is not symmetric".into(),
                ))
            }
            Some(_) => {}
            None => {
                m_coeffs.insert(lambda, c.clone());
            }
        }
    }

    let mut coeffs: BTreeMap<Partition, Rational> = crate::partitions::enumerate(i)
        .into_iter()
        .map(|p| (p, Rational::zero()))
        .collect();
    for (lambda, a) in &m_coeffs {
        for (mu, r) in &monomial_to_elementary(lambda).terms {
            *coeffs.get_mut(mu).expect("weight i") += a * r;
        }
    }
    Ok(LGenusResult { i, coeffs })
}

/// `L_i` from the power series alone.
pub fn oracle_l(i: u32) -> Result<LGenusResult> {
    multiplicative_sequence(&q_series(i.max(1) as usize)?, i)
}

/// True iff the series route and the linear-algebra route agree exactly.
pub fn compare(i: u32, assignment: &GeneratorAssignment) -> Result<bool> {
    Ok(oracle_l(i)? == solve_l(i, assignment)?)
}
