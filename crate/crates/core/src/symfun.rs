//! Transitions between the monomial, elementary and power-sum bases of
//! symmetric functions.
//!
//! Pontryagin classes are the elementary symmetric functions of the squared
//! formal roots, while s-numbers evaluate monomial symmetric functions of the
//! same roots. These transitions convert between the two indexings.
//!
//! `e_μ` is expanded in the monomial basis by counting 0-1 matrices with row
//! sums `μ` and column sums `λ`. The resulting matrix is unitriangular once
//! `e_μ` is indexed by the conjugate `μ'` (its leading term is `m_{μ'}`), and
//! canonical order refines dominance, so the inverse comes from a single
//! back-substitution per weight. Both directions are memoized by weight.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::Rational;
use crate::partitions::{enumerate, Partition};

/// A linear combination of `e_μ` (or, depending on context, of `m_λ`) for
/// partitions of a common weight.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ElemExpansion {
    pub weight: u32,
    pub terms: BTreeMap<Partition, Rational>,
}

impl ElemExpansion {
    pub fn coeff(&self, mu: &Partition) -> Rational {
        self.terms.get(mu).cloned().unwrap_or_else(Rational::zero)
    }

    fn add(&mut self, mu: Partition, r: Rational) {
        if r.is_zero() {
            return;
        }
        match self.terms.entry(mu) {
            Entry::Vacant(v) => {
                v.insert(r);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += r;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
}

/// Conjugate (transpose) partition.
pub fn conjugate(p: &Partition) -> Partition {
    let parts = p.parts();
    let largest = parts.first().copied().unwrap_or(0);
    let conj: Vec<u32> = (1..=largest)
        .map(|i| parts.iter().filter(|&&q| q >= i).count() as u32)
        .collect();
    Partition::new(conj).expect("conjugate parts are positive")
}

fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of 0-1 matrices with the given row and column sums.
fn zero_one_matrices(rows: &[u32], cols: &[u32]) -> u128 {
    fn rec(rows: &[u32], cols: Vec<u32>, memo: &mut HashMap<(usize, Vec<u32>), u128>) -> u128 {
        let Some((&r, rest)) = rows.split_first() else {
            return u128::from(cols.iter().all(|&c| c == 0));
        };
        let key = (rows.len(), cols.clone());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        // Group equal column sums; choose how many from each group get a 1.
        let mut groups: Vec<(u32, u32)> = Vec::new();
        for &c in cols.iter().filter(|&&c| c > 0) {
            match groups.last_mut() {
                Some((v, n)) if *v == c => *n += 1,
                _ => groups.push((c, 1)),
            }
        }
        let mut total = 0u128;
        let mut take = vec![0u32; groups.len()];
        fn choose(
            g: usize,
            left: u32,
            groups: &[(u32, u32)],
            take: &mut Vec<u32>,
            rest: &[u32],
            total: &mut u128,
            memo: &mut HashMap<(usize, Vec<u32>), u128>,
        ) {
            if g == groups.len() {
                if left != 0 {
                    return;
                }
                let mut ways = 1u128;
                let mut next = Vec::new();
                for (&(v, n), &t) in groups.iter().zip(take.iter()) {
                    ways = ways.checked_mul(binomial(n, t)).expect("count overflow");
                    next.extend(std::iter::repeat(v - 1).take(t as usize));
                    next.extend(std::iter::repeat(v).take((n - t) as usize));
                }
                next.retain(|&c| c > 0);
                next.sort_unstable_by(|a, b| b.cmp(a));
                let sub = rec(rest, next, memo);
                *total = total
                    .checked_add(ways.checked_mul(sub).expect("count overflow"))
                    .expect("count overflow");
                return;
            }
            let (_, n) = groups[g];
            for t in 0..=n.min(left) {
                take[g] = t;
                choose(g + 1, left - t, groups, take, rest, total, memo);
            }
            take[g] = 0;
        }
        choose(0, r, &groups, &mut take, rest, &mut total, memo);
        memo.insert(key, total);
        total
    }
    let mut cols = cols.to_vec();
    cols.sort_unstable_by(|a, b| b.cmp(a));
    rec(rows, cols, &mut HashMap::new())
}

struct WeightTransition {
    /// `e_μ` in the m-basis, keyed by μ.
    e_to_m: BTreeMap<Partition, BTreeMap<Partition, Rational>>,
    /// `m_λ` in the e-basis, keyed by λ.
    m_to_e: BTreeMap<Partition, ElemExpansion>,
}

impl WeightTransition {
    fn build(n: u32) -> Self {
        let parts = enumerate(n);
        let mut e_to_m = BTreeMap::new();
        for mu in &parts {
            let row: BTreeMap<Partition, Rational> = parts
                .iter()
                .filter_map(|lambda| {
                    let k = zero_one_matrices(mu.parts(), lambda.parts());
                    (k != 0).then(|| (lambda.clone(), Rational::from_integer(BigInt::from(k))))
                })
                .collect();
            e_to_m.insert(mu.clone(), row);
        }

        // Back-substitute from (1,...,1) upwards:
        //   m_ν = e_{ν'} - Σ_{λ < ν} K[ν'][λ] m_λ
        let mut m_to_e: BTreeMap<Partition, ElemExpansion> = BTreeMap::new();
        for nu in parts.iter().rev() {
            let nu_conj = conjugate(nu);
            let row = &e_to_m[&nu_conj];
            debug_assert_eq!(row.get(nu), Some(&Rational::one()));
            let mut exp = ElemExpansion {
                weight: n,
                terms: BTreeMap::new(),
            };
            exp.add(nu_conj, Rational::one());
            for (lambda, k) in row {
                if lambda == nu {
                    continue;
                }
                debug_assert!(lambda > nu, "triangularity violated");
                let lower = &m_to_e[lambda];
                for (mu, r) in &lower.terms {
                    exp.add(mu.clone(), -(k * r));
                }
            }
            m_to_e.insert(nu.clone(), exp);
        }
        WeightTransition { e_to_m, m_to_e }
    }
}

fn transition(n: u32) -> Arc<WeightTransition> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<WeightTransition>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("symfun cache").get(&n) {
        return t.clone();
    }
    // Built outside the lock; a racing builder produces an identical table.
    let built = Arc::new(WeightTransition::build(n));
    cache
        .lock()
        .expect("symfun cache")
        .entry(n)
        .or_insert(built)
        .clone()
}

/// `m_λ` as a combination of `e_μ` with `|μ| = |λ|`.
pub fn monomial_to_elementary(lambda: &Partition) -> ElemExpansion {
    let n = lambda.weight();
    if n == 0 {
        let mut terms = BTreeMap::new();
        terms.insert(Partition::empty(), Rational::one());
        return ElemExpansion { weight: 0, terms };
    }
    transition(n).m_to_e[lambda].clone()
}

/// `e_μ` as a combination of `m_λ`; all coefficients are nonnegative integers.
pub fn elementary_to_monomial(mu: &Partition) -> BTreeMap<Partition, Rational> {
    let n = mu.weight();
    if n == 0 {
        let mut terms = BTreeMap::new();
        terms.insert(Partition::empty(), Rational::one());
        return terms;
    }
    transition(n).e_to_m[mu].clone()
}

/// Power sum `Σ x_i^n` in the elementary basis via Newton's identities:
/// `P_k = Σ_{i<k} (-1)^{i-1} e_i P_{k-i} + (-1)^{k-1} k e_k`.
pub fn power_sum_in_elementary(n: u32) -> ElemExpansion {
    assert!(n >= 1, "power sums start at degree 1");
    let mut sums: Vec<ElemExpansion> = vec![ElemExpansion::default()];
    for k in 1..=n {
        let mut pk = ElemExpansion {
            weight: k,
            terms: BTreeMap::new(),
        };
        for i in 1..k {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            for (mu, r) in &sums[(k - i) as usize].terms {
                pk.add(mu.with_part(i), r * Rational::from_integer(sign.into()));
            }
        }
        let sign: i64 = if k % 2 == 1 { 1 } else { -1 };
        pk.add(Partition::single(k), Rational::from_integer((sign * k as i64).into()));
        sums.push(pk);
    }
    sums.pop().expect("n >= 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, is_integral};
    use rand::{Rng, SeedableRng};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn exp(pairs: &[(&[u32], i64)]) -> BTreeMap<Partition, Rational> {
        pairs.iter().map(|(k, v)| (p(k), int(*v))).collect()
    }

    // Brute-force evaluation in explicit variables: the oracle for every
    // transition below.
    fn eval_elementary(r: u32, xs: &[i64]) -> BigInt {
        fn rec(r: u32, xs: &[i64]) -> BigInt {
            if r == 0 {
                return BigInt::one();
            }
            if xs.len() < r as usize {
                return BigInt::zero();
            }
            BigInt::from(xs[0]) * rec(r - 1, &xs[1..]) + rec(r, &xs[1..])
        }
        rec(r, xs)
    }

    fn eval_e(mu: &Partition, xs: &[i64]) -> BigInt {
        mu.parts().iter().map(|&r| eval_elementary(r, xs)).product()
    }

    /// Sum of x^a over all distinct rearrangements a of λ padded with zeros.
    fn eval_m(lambda: &Partition, xs: &[i64]) -> BigInt {
        fn rec(parts: &mut Vec<u32>, xs: &[i64], i: usize, acc: BigInt, out: &mut BigInt) {
            if i == xs.len() {
                if parts.is_empty() {
                    *out += acc;
                }
                return;
            }
            // x_i gets exponent 0 or one of the distinct remaining parts.
            rec(parts, xs, i + 1, acc.clone(), out);
            let mut tried = Vec::new();
            for j in 0..parts.len() {
                let e = parts[j];
                if tried.contains(&e) {
                    continue;
                }
                tried.push(e);
                parts.remove(j);
                rec(parts, xs, i + 1, &acc * BigInt::from(xs[i]).pow(e), out);
                parts.insert(j, e);
            }
        }
        let mut out = BigInt::zero();
        rec(&mut lambda.parts().to_vec(), xs, 0, BigInt::one(), &mut out);
        out
    }

    #[test]
    fn monomial_to_elementary_examples() {
        assert_eq!(monomial_to_elementary(&p(&[1])).terms, exp(&[(&[1], 1)]));
        assert_eq!(monomial_to_elementary(&p(&[1, 1])).terms, exp(&[(&[2], 1)]));
        assert_eq!(
            monomial_to_elementary(&p(&[2])).terms,
            exp(&[(&[1, 1], 1), (&[2], -2)])
        );
        assert_eq!(
            monomial_to_elementary(&p(&[2, 1])).terms,
            exp(&[(&[2, 1], 1), (&[3], -3)])
        );
    }

    #[test]
    fn elementary_to_monomial_examples() {
        assert_eq!(elementary_to_monomial(&p(&[1])), exp(&[(&[1], 1)]));
        assert_eq!(
            elementary_to_monomial(&p(&[1, 1])),
            exp(&[(&[2], 1), (&[1, 1], 2)])
        );
        assert_eq!(elementary_to_monomial(&p(&[2])), exp(&[(&[1, 1], 1)]));
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sum_in_elementary(1).terms, exp(&[(&[1], 1)]));
        assert_eq!(
            power_sum_in_elementary(2).terms,
            exp(&[(&[1, 1], 1), (&[2], -2)])
        );
        assert_eq!(
            power_sum_in_elementary(3).terms,
            exp(&[(&[1, 1, 1], 1), (&[2, 1], -3), (&[3], 3)])
        );
    }

    #[test]
    fn power_sum_agrees_with_monomial_transition() {
        for n in 1..=10 {
            assert_eq!(
                power_sum_in_elementary(n),
                monomial_to_elementary(&Partition::single(n)),
                "n = {n}"
            );
        }
    }

    #[test]
    fn round_trip_and_integrality() {
        for n in 1..=10 {
            for lambda in enumerate(n) {
                let mut back: BTreeMap<Partition, Rational> = BTreeMap::new();
                for (mu, r) in &monomial_to_elementary(&lambda).terms {
                    assert!(is_integral(r), "{lambda} -> {mu}: {r}");
                    for (nu, k) in elementary_to_monomial(mu) {
                        assert!(is_integral(&k));
                        *back.entry(nu).or_insert_with(Rational::zero) += r * k;
                    }
                }
                back.retain(|_, v| !v.is_zero());
                assert_eq!(back, exp(&[(lambda.parts(), 1)]), "round trip for {lambda}");
            }
        }
    }

    #[test]
    fn explicit_variable_spot_checks() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for n in 1..=7u32 {
            for _ in 0..3 {
                let xs: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
                for lambda in enumerate(n) {
                    let lhs = eval_m(&lambda, &xs);
                    let rhs: Rational = monomial_to_elementary(&lambda)
                        .terms
                        .iter()
                        .map(|(mu, r)| r * Rational::from_integer(eval_e(mu, &xs)))
                        .sum();
                    assert_eq!(Rational::from_integer(lhs), rhs, "m_{lambda} at {xs:?}");

                    let lhs = eval_e(&lambda, &xs);
                    let rhs: Rational = elementary_to_monomial(&lambda)
                        .iter()
                        .map(|(nu, k)| k * Rational::from_integer(eval_m(nu, &xs)))
                        .sum();
                    assert_eq!(Rational::from_integer(lhs), rhs, "e_{lambda} at {xs:?}");
                }
            }
        }
    }

    #[test]
    fn conjugates() {
        assert_eq!(conjugate(&p(&[3, 1])), p(&[2, 1, 1]));
        assert_eq!(conjugate(&p(&[2, 2])), p(&[2, 2]));
        assert_eq!(conjugate(&Partition::empty()), Partition::empty());
    }
}
