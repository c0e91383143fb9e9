//! Real-rootedness and sequence checks, and the subset-sum decomposition of
//! the magic coefficients of the cycle family.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::{big_binom, factorial, Poly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RootCountReport {
    pub squarefree_degree: usize,
    pub distinct_real_roots: usize,
    pub real_rooted: bool,
}

/// Counts distinct real roots with a Sturm chain on the squarefree part.
///
/// Repeated real roots do not break real-rootedness: the verdict compares
/// the distinct-root count against the squarefree degree.
pub fn real_root_report(p: &Poly) -> Result<RootCountReport> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let dp = p.derivative();
    let g = p.gcd(&dp);
    let (sqfree, rem) = p.div_rem(&g)?;
    debug_assert!(rem.is_zero());
    let deg = sqfree.degree().expect("nonzero");

    let mut chain = vec![sqfree.clone(), sqfree.derivative()];
    while let Some(last) = chain.last().filter(|q| !q.is_zero()) {
        let prev = &chain[chain.len() - 2];
        let (_, r) = prev.div_rem(last)?;
        chain.push(-r);
    }
    chain.retain(|q| !q.is_zero());

    let sign_at = |q: &Poly, at_plus_inf: bool| -> i8 {
        let lead = q.leading().expect("nonzero");
        let mut s = if lead.is_positive() { 1 } else { -1 };
        if !at_plus_inf && q.degree().unwrap_or(0) % 2 == 1 {
            s = -s;
        }
        s
    };
    let variations = |plus: bool| {
        chain
            .windows(2)
            .filter(|w| sign_at(&w[0], plus) != sign_at(&w[1], plus))
            .count()
    };
    let roots = variations(false) - variations(true);
    Ok(RootCountReport {
        squarefree_degree: deg,
        distinct_real_roots: roots,
        real_rooted: roots == deg,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceFlags {
    pub nonnegative: bool,
    pub log_concave: bool,
    pub unimodal: bool,
    pub palindromic: bool,
}

pub fn sequence_checks(seq: &[Rational]) -> SequenceFlags {
    let nonnegative = seq.iter().all(|x| !x.is_negative());
    let log_concave = seq.windows(3).all(|w| &w[1] * &w[1] >= &w[0] * &w[2]);
    // no strict rise after a strict fall
    let mut fallen = false;
    let mut unimodal = true;
    for w in seq.windows(2) {
        if w[1] < w[0] {
            fallen = true;
        } else if w[1] > w[0] && fallen {
            unimodal = false;
            break;
        }
    }
    let palindromic = seq.iter().eq(seq.iter().rev());
    SequenceFlags {
        nonnegative,
        log_concave,
        unimodal,
        palindromic,
    }
}

/// The 2 x d matrix attached to summand `i` of the cycle formula:
/// row 1 is `j - i`, row 2 is `d + 1 - j - i`, for `j = 1..=d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BMatrix {
    pub d: usize,
    pub i: usize,
}

impl BMatrix {
    pub fn new(d: usize, i: usize) -> Self {
        assert!(i <= d / 2, "shift index {i} exceeds floor(d/2) for d = {d}");
        BMatrix { d, i }
    }

    /// Entry in row `r` (1 or 2), column `j` (1-based).
    pub fn entry(&self, r: usize, j: usize) -> i64 {
        assert!((1..=self.d).contains(&j), "column {j} out of range");
        let (d, i, j) = (self.d as i64, self.i as i64, j as i64);
        match r {
            1 => j - i,
            2 => d + 1 - j - i,
            _ => panic!("row must be 1 or 2"),
        }
    }
}

fn membership(d: usize, subset: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; d + 1];
    for &j in subset {
        assert!((1..=d).contains(&j), "subset element {j} outside 1..={d}");
        assert!(!inside[j], "subset element {j} repeated");
        inside[j] = true;
    }
    inside
}

/// Integer part of `B_i^I` before the `1/d!` normalisation:
/// `(-1)^i C(d+1, i) prod_{j in I} b_2j prod_{j not in I} b_1j`.
fn b_term_numerator(d: usize, i: usize, inside: &[bool]) -> BigInt {
    let b = BMatrix::new(d, i);
    let mut prod = BigInt::from(big_binom((d + 1) as u64, i as u64));
    for (j, &within) in inside.iter().enumerate().skip(1) {
        let e = b.entry(if within { 2 } else { 1 }, j);
        if e == 0 {
            return BigInt::zero();
        }
        prod *= e;
    }
    if i % 2 == 1 {
        prod = -prod;
    }
    prod
}

/// `B_i^I` including the `1/d!` factor, so that subset sums reproduce the
/// magic coefficients exactly. `subset` holds 1-based column indices.
pub fn cycle_b_term(d: usize, i: usize, subset: &[usize]) -> Rational {
    let inside = membership(d, subset);
    Rational::new(b_term_numerator(d, i, &inside), factorial(d))
}

/// `C_I = sum_{i=0}^{floor(d/2)} B_i^I`, the `i = 0` term included.
pub fn cycle_c(d: usize, subset: &[usize]) -> Rational {
    let inside = membership(d, subset);
    let num = (0..=d / 2).fold(BigInt::zero(), |acc, i| {
        acc + b_term_numerator(d, i, &inside)
    });
    Rational::new(num, factorial(d))
}

/// Visits every `k`-subset of `lo..=hi` in lexicographic order.
fn for_each_subset(lo: usize, hi: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, hi: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        let need = k - cur.len();
        let mut j = start;
        while j + need <= hi + 1 {
            cur.push(j);
            rec(j + 1, hi, k, cur, f);
            cur.pop();
            j += 1;
        }
    }
    rec(lo, hi, k, &mut Vec::with_capacity(k), f);
}

/// `sum_{|I| = i} C_I` over `i`-subsets of `1..=d`.
///
/// A subset `I` marks the columns whose factor contributes `n + 1`, so the
/// sum is literally the coefficient of `n^(d-i) (1+n)^i`; the cycle family is
/// palindromic in the magic basis, so this equals `a_i` as well.
///
/// Subsets are split by their smallest element and summed in parallel.
pub fn cycle_coeff_via_c(d: usize, i: usize, budget: u64) -> Result<Rational> {
    assert!(i <= d, "index {i} exceeds d = {d}");
    let total = big_binom(d as u64, i as u64);
    if total > budget.into() {
        return Err(Error::BudgetExceeded {
            budget,
            expanded: u64::try_from(&total).unwrap_or(u64::MAX),
        });
    }
    if i == 0 {
        return Ok(cycle_c(d, &[]));
    }
    let half = d / 2;
    let num = (1..=d)
        .into_par_iter()
        .map(|first| {
            let mut acc = BigInt::zero();
            let mut inside = vec![false; d + 1];
            for_each_subset(first + 1, d, i - 1, &mut |rest| {
                inside[first] = true;
                for &j in rest {
                    inside[j] = true;
                }
                for shift in 0..=half {
                    acc += b_term_numerator(d, shift, &inside);
                }
                inside.iter_mut().for_each(|x| *x = false);
            });
            acc
        })
        .reduce(BigInt::zero, |a, b| a + b);
    Ok(Rational::new(num, factorial(d)))
}

/// All `|I| = k` subsets of `1..=d`, for callers that want the per-subset
/// values rather than their sum.
pub fn subsets(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_subset(1, d, k, &mut |s| out.push(s.to_vec()));
    out
}

/// `d! * C_I`, the unnormalised form in which single subsets are usually quoted.
pub fn cycle_c_scaled(d: usize, subset: &[usize]) -> BigInt {
    let c = cycle_c(d, subset) * Rational::from_integer(factorial(d));
    debug_assert!(c.is_integer());
    c.to_integer()
}
