//! JN-realisability of normalised tuples.
//!
//! Dispatch, for a reduced tuple with `k = n + r` slots and `s` integral
//! entries (all outside `J`):
//!
//! - `s > 0`: realisable iff `2 − s ≤ b ≤ k − 2`.
//! - `s = 0`, `k ≥ 3`: `b` must lie in `[1, k − 1]`; the interior `[2, k − 2]`
//!   is always realisable; `b = k − 1` is reflected to `b = 1` by `x ↦ 1 − x`;
//!   `b = 1` is decided by [`witness_search`].
//! - `s = 0`, `k < 3`: not handled here ([`Error::UnsupportedArity`]).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::exact::ExtRational;
use crate::seifert::{check_gammas, check_strict, normalize, reduce_integral, SeifertTuple};
use crate::{Error, Result};

/// One inequality `value < x` (strict) or `value ≤ x` of the `b = 1` system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub value: BigRational,
    pub strict: bool,
}

impl Slot {
    pub fn new(value: BigRational, strict: bool) -> Self {
        Slot { value, strict }
    }

    pub fn complemented(&self) -> Slot {
        Slot { value: BigRational::one() - &self.value, strict: self.strict }
    }

    /// Least numerator `a` with `a/n` satisfying this slot.
    pub(crate) fn min_numerator(&self, n: u64) -> BigInt {
        let scaled = &self.value * BigRational::from_integer(BigInt::from(n));
        if self.strict {
            scaled.floor().to_integer() + 1
        } else {
            scaled.ceil().to_integer()
        }
    }
}

/// Coprime `0 < A < N` and the numerator each slot receives; the numerators
/// are a permutation of `{A, N − A, 1, …, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JNWitness {
    pub a: u64,
    pub n: u64,
    pub numerators: Vec<u64>,
}

impl JNWitness {
    pub fn value(&self, slot: usize) -> BigRational {
        BigRational::new(self.numerators[slot].into(), self.n.into())
    }

    pub fn satisfies(&self, slots: &[Slot]) -> bool {
        slots.len() == self.numerators.len()
            && slots.iter().enumerate().all(|(k, s)| {
                let v = self.value(k);
                if s.strict {
                    s.value < v
                } else {
                    s.value <= v
                }
            })
    }
}

/// A tuple after normalisation and removal of integral strict entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JNQuery {
    pub tuple: SeifertTuple,
    pub s: usize,
    /// Original `τ` index of each reduced entry.
    pub index_map: Vec<usize>,
}

impl JNQuery {
    pub fn new(gammas: Vec<BigRational>, taus: Vec<BigRational>, strict: BTreeSet<usize>, b: BigInt) -> Result<Self> {
        let raw = SeifertTuple::new(gammas, taus, strict, b)?;
        let red = reduce_integral(&raw.normalized());
        Ok(JNQuery { tuple: red.tuple, s: red.s, index_map: red.index_map })
    }

    /// As [`JNQuery::new`], rejecting `∞` among the `τ`.
    pub fn from_slopes(gammas: Vec<BigRational>, taus: &[ExtRational], strict: BTreeSet<usize>, b: BigInt) -> Result<Self> {
        check_gammas(&gammas)?;
        check_strict(&strict, taus.len())?;
        let (shift, fractional) = normalize(taus)?;
        let raw = SeifertTuple { gammas, taus: fractional, strict, b: b + shift };
        let red = reduce_integral(&raw);
        Ok(JNQuery { tuple: red.tuple, s: red.s, index_map: red.index_map })
    }

    pub fn arity(&self) -> usize {
        self.tuple.n() + self.tuple.r()
    }

    /// γ slots (always strict) followed by τ̄ slots (strict on `J`).
    pub fn slots(&self) -> Vec<Slot> {
        let t = &self.tuple;
        let gam = t.gammas.iter().map(|g| Slot::new(g.clone(), true));
        let tau = t.taus.iter().enumerate().map(|(j, v)| Slot::new(v.clone(), t.strict.contains(&j)));
        gam.chain(tau).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Integral entries present: the `2 − s ≤ b ≤ n + r − 2` window.
    IntegralWindow,
    /// `b` outside `[1, n + r − 1]`.
    RangeBound,
    /// `2 ≤ b ≤ n + r − 2`.
    MiddleRange,
    /// `b = 1` witness search, possibly after reflecting `b = n + r − 1`.
    WitnessSearch,
}

impl Rule {
    pub fn tag(self) -> &'static str {
        match self {
            Rule::IntegralWindow => "integral-window",
            Rule::RangeBound => "range-bound",
            Rule::MiddleRange => "middle-range",
            Rule::WitnessSearch => "witness-search",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub realizable: bool,
    pub rule: Rule,
    /// True when the search ran on the values `1 − x`.
    pub complemented: bool,
    pub witness: Option<JNWitness>,
}

impl Decision {
    fn plain(realizable: bool, rule: Rule) -> Self {
        Decision { realizable, rule, complemented: false, witness: None }
    }
}

pub fn jn_realizable(q: &JNQuery) -> Result<Decision> {
    let t = &q.tuple;
    let k = q.arity() as i64;
    let b = &t.b;
    if q.s > 0 {
        let ok = *b >= BigInt::from(2 - q.s as i64) && *b <= BigInt::from(k - 2);
        return Ok(Decision::plain(ok, Rule::IntegralWindow));
    }
    if k < 3 {
        return Err(Error::UnsupportedArity(k as usize));
    }
    if *b < BigInt::one() || *b > BigInt::from(k - 1) {
        return Ok(Decision::plain(false, Rule::RangeBound));
    }
    if *b >= BigInt::from(2) && *b <= BigInt::from(k - 2) {
        return Ok(Decision::plain(true, Rule::MiddleRange));
    }
    let complemented = !b.is_one();
    let mut slots = q.slots();
    if complemented {
        slots = slots.iter().map(Slot::complemented).collect();
    }
    let witness = witness_search(&slots);
    Ok(Decision { realizable: witness.is_some(), rule: Rule::WitnessSearch, complemented, witness })
}

/// Convenience wrapper: builds the query and returns only the flag.
pub fn is_realizable(gammas: &[BigRational], taus: &[BigRational], strict: &BTreeSet<usize>, b: &BigInt) -> Result<bool> {
    let q = JNQuery::new(gammas.to_vec(), taus.to_vec(), strict.clone(), b.clone())?;
    jn_realizable(&q).map(|d| d.realizable)
}

/// Every witness has `N` at most this. For each choice of the two slots that
/// receive `A/N` and `(N − A)/N`, the remaining slots receive `1/N`, so each
/// positive remaining value `v` forces `N ≤ ⌊1/v⌋`. If all remaining values
/// are zero, the pair alone decides and the least denominator of a feasible
/// `A/N` is used.
pub fn search_bound(values: &[Slot]) -> BigInt {
    let k = values.len();
    let mut best = BigInt::one();
    for i in 0..k {
        for j in (i + 1)..k {
            let rest = (0..k).filter(|&x| x != i && x != j).map(|x| &values[x].value).filter(|v| !v.is_zero());
            let from_rest = rest.map(|v| v.recip().floor().to_integer()).min();
            let bound = match from_rest {
                Some(b) => b,
                None => pair_bound(&values[i], &values[j]),
            };
            if bound > best {
                best = bound;
            }
        }
    }
    best
}

fn pair_bound(x: &Slot, y: &Slot) -> BigInt {
    // A/N must lie in ⟨x, 1 − y⟩ and strictly inside (0, 1).
    let lo = x.value.clone();
    let hi = BigRational::one() - &y.value;
    let zero = BigRational::zero();
    let one = BigRational::one();
    let lo_open = x.strict || lo == zero;
    let hi_open = y.strict || hi == one;
    match crate::exact::simplest_between(&lo, lo_open, &hi, hi_open) {
        Some(v) => v.denom().clone(),
        None => BigInt::zero(),
    }
}

/// Searches for the least witness in the order: ascending `N`, ascending
/// `A`, then lexicographic `(i, j)` where slot `i` receives `A` and slot `j`
/// receives `N − A`.
pub fn witness_search(values: &[Slot]) -> Option<JNWitness> {
    let k = values.len();
    assert!(k >= 3, "witness search needs at least three slots");
    let bound = search_bound(values).to_u64().expect("search bound exceeds u64");
    for n in 2..=bound {
        if let Some(w) = witness_at(values, n) {
            return Some(w);
        }
    }
    None
}

/// The least witness with denominator exactly `n`, if any.
pub(crate) fn witness_at(values: &[Slot], n: u64) -> Option<JNWitness> {
    let k = values.len();
    let lo: Vec<u64> = values
        .iter()
        .map(|s| {
            let m = s.min_numerator(n);
            if m <= BigInt::zero() {
                0
            } else {
                m.to_u64().unwrap_or(u64::MAX)
            }
        })
        .collect();
    let needy = lo.iter().filter(|&&m| m > 1).count();
    if needy > 2 {
        return None;
    }
    for a in 1..n {
        if a.gcd(&n) != 1 {
            continue;
        }
        for i in 0..k {
            if lo[i] > a {
                continue;
            }
            for j in 0..k {
                if j == i || lo[j] > n - a {
                    continue;
                }
                let covered = (lo[i] > 1) as usize + (lo[j] > 1) as usize;
                if covered == needy {
                    let mut numerators = vec![1; k];
                    numerators[i] = a;
                    numerators[j] = n - a;
                    return Some(JNWitness { a, n, numerators });
                }
            }
        }
    }
    None
}
