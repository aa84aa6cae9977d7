//! Brute-force checks for the test suite.
//!
//! Nothing here touches [`crate::intervals`] or [`crate::cable`]: the grid
//! scan decides every sample point with the JN procedure directly, and the
//! witness check re-enumerates coprime pairs on its own.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::SlopeSet;
use crate::jn::{jn_realizable, JNQuery, JNWitness};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    /// Least realisable sample, if any.
    pub hull_low: Option<BigRational>,
    /// Greatest realisable sample, if any.
    pub hull_high: Option<BigRational>,
    pub tested_points: usize,
    /// `(τ′, expected, got)`, sorted by `τ′`.
    pub mismatches: Vec<(BigRational, bool, bool)>,
}

impl ScanReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Decides `(J; 0; γ; τ, τ′)`, with `J` holding the first slot when
/// `inner_strict` and the last when `last_strict`.
pub fn decide_point(gamma: &BigRational, tau: &BigRational, tau2: &BigRational, inner_strict: bool, last_strict: bool) -> Result<bool> {
    let mut j = BTreeSet::new();
    if inner_strict {
        j.insert(0);
    }
    if last_strict {
        j.insert(1);
    }
    decide_tuple(&[gamma.clone()], &[tau.clone(), tau2.clone()], &j, &BigInt::zero())
}

/// JN-realisability of any tuple, including those left with fewer than three
/// slots and no integral entry.
pub fn decide_tuple(gammas: &[BigRational], taus: &[BigRational], strict: &BTreeSet<usize>, b: &BigInt) -> Result<bool> {
    let q = JNQuery::new(gammas.to_vec(), taus.to_vec(), strict.clone(), b.clone())?;
    match jn_realizable(&q) {
        Err(Error::UnsupportedArity(_)) => Ok(few_slots_rule(&q)),
        other => other.map(|d| d.realizable),
    }
}

// With at most two non-integral slots and nothing integral left, the product
// of the slot maps must be the shift by b; for two maps with rational
// rotation numbers this forces the translation numbers to add up to b, and
// the sum is attained for any choice of strict slots.
fn few_slots_rule(q: &JNQuery) -> bool {
    let t = &q.tuple;
    let sum: BigRational = t.gammas.iter().chain(t.taus.iter()).sum();
    sum == BigRational::from_integer(t.b.clone())
}

/// Samples every `τ′` with denominator at most `max_den` in a window of
/// width six around the core, plus each finite endpoint of `expected` and
/// two probes just beside it, and compares membership with `expected`.
pub fn grid_scan_interval(
    gamma: &BigRational,
    tau: &BigRational,
    inner_strict: bool,
    last_strict: bool,
    max_den: u64,
    expected: Option<&SlopeSet>,
) -> Result<ScanReport> {
    assert!(max_den >= 2, "max_den must be at least 2");
    let centre = -tau.floor();
    let lo = &centre - BigRational::from_integer(4.into());
    let hi = &centre + BigRational::from_integer(2.into());

    let mut points: BTreeSet<BigRational> = BTreeSet::new();
    let lo_i = lo.to_integer();
    for d in 1..=max_den {
        let dd = BigInt::from(d);
        let start = &lo_i * &dd;
        let stop = hi.to_integer() * &dd;
        let mut num = start;
        while num <= stop {
            if num.gcd(&dd).is_one() {
                points.insert(BigRational::new(num.clone(), dd.clone()));
            }
            num += 1;
        }
    }
    if let Some(exp) = expected {
        for span in exp.spans() {
            for b in [&span.lo, &span.hi] {
                if let Some(e) = b.value() {
                    let step = BigRational::new(BigInt::one(), e.denom() * BigInt::from(max_den));
                    points.insert(e - &step);
                    points.insert(e.clone());
                    points.insert(e + &step);
                }
            }
        }
    }

    let mut report = ScanReport { hull_low: None, hull_high: None, tested_points: 0, mismatches: Vec::new() };
    for x in points {
        let got = decide_point(gamma, tau, &x, inner_strict, last_strict)?;
        report.tested_points += 1;
        if got {
            if report.hull_low.is_none() {
                report.hull_low = Some(x.clone());
            }
            report.hull_high = Some(x.clone());
        }
        if let Some(exp) = expected {
            let want = exp.contains_finite(&x);
            if want != got {
                report.mismatches.push((x, want, got));
            }
        }
    }
    Ok(report)
}

/// Every witness for the `b = 1` system `values` (each `(v, strict)` asks for
/// `v < x` or `v ≤ x`), found by trying every coprime `0 < A < N` up to
/// `⌊1/min v⌋` and every placement of `A` and `N − A`.
pub fn all_witnesses(values: &[(BigRational, bool)]) -> Vec<JNWitness> {
    let k = values.len();
    assert!(k >= 3, "need at least three slots");
    assert!(values.iter().all(|(v, _)| v.is_positive() && *v < BigRational::one()), "values must lie in (0,1)");
    let min_v = values.iter().map(|(v, _)| v).min().unwrap();
    let bound = min_v.recip().floor().to_integer();
    let ok = |v: &BigRational, strict: bool, x: &BigRational| if strict { v < x } else { v <= x };
    let mut out = Vec::new();
    let mut n = BigInt::from(2);
    while n <= bound {
        let nn: u64 = n.clone().try_into().unwrap();
        for a in 1..nn {
            if a.gcd(&nn) != 1 {
                continue;
            }
            for i in 0..k {
                for j in 0..k {
                    if i == j {
                        continue;
                    }
                    let mut numerators = vec![1u64; k];
                    numerators[i] = a;
                    numerators[j] = nn - a;
                    let fits = values
                        .iter()
                        .zip(&numerators)
                        .all(|((v, s), &m)| ok(v, *s, &BigRational::new(m.into(), n.clone())));
                    if fits {
                        out.push(JNWitness { a, n: nn, numerators });
                    }
                }
            }
        }
        n += 1;
    }
    out
}

/// With `claimed = Some(w)`, checks that `w` is a genuine witness; with
/// `None`, checks that no witness exists.
pub fn exhaustive_witness_check(values: &[(BigRational, bool)], claimed: Option<&JNWitness>) -> bool {
    let all = all_witnesses(values);
    match claimed {
        None => all.is_empty(),
        Some(w) => all.iter().any(|x| x.n == w.n && x.numerators == w.numerators),
    }
}
