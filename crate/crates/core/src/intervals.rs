//! Relative slope intervals.
//!
//! For a fixed partial tuple `τ_* = (τ₁..τ_{r−1})` and strict set `J`,
//!
//! ```text
//! T(J; τ_*)  = { τ' : (J;       0; γ; τ_*, τ') is JN-realisable }
//! T~(J; τ_*) = { τ' : (J ∪ {r}; 0; γ; τ_*, τ') is JN-realisable }
//! ```
//!
//! `T` always contains the integer core `[m0, m1]` and lies inside
//! `(m0 − 1, m1 + 1)`. When no integral entry survives outside `J`, each of
//! the two unit windows next to the core is either disjoint from `T` or meets
//! it in a half-open interval whose far end is found by maximising the value
//! a `b = 1` witness can hand to the new slot.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cable::CableParams;
use crate::exact::{simplest_between, Arc, Bound, ExtRational, SlopeSet, Span};
use crate::jn::{jn_realizable, JNQuery, Slot};
use crate::seifert::{check_gammas, check_strict, derived_quantities, DerivedQuantities};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeIntervalResult {
    /// Closed, possibly a single point.
    pub t: Arc,
    pub t_strict: SlopeSet,
    pub quantities: DerivedQuantities,
    /// `η`, when the left window meets `T`.
    pub eta: Option<BigRational>,
    /// `ξ`, when the right window meets `T`.
    pub xi: Option<BigRational>,
}

impl RelativeIntervalResult {
    pub fn low(&self) -> &BigRational {
        self.t.low.finite().expect("relative intervals are bounded")
    }

    pub fn high(&self) -> &BigRational {
        self.t.high.finite().expect("relative intervals are bounded")
    }

    pub fn t_set(&self) -> SlopeSet {
        self.t.to_set()
    }

    fn from_bounds(lo: BigRational, hi: BigRational, t_strict: SlopeSet, quantities: DerivedQuantities) -> Self {
        RelativeIntervalResult { t: Arc::closed(lo, hi), t_strict, quantities, eta: None, xi: None }
    }
}

fn big(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

pub fn relative_interval(
    gammas: &[BigRational],
    taus: &[BigRational],
    strict: &BTreeSet<usize>,
) -> Result<RelativeIntervalResult> {
    check_gammas(gammas)?;
    check_strict(strict, taus.len())?;
    let dq = derived_quantities(gammas, taus, strict);
    let size = dq.n + dq.r1 + dq.s0;
    if size < 2 {
        return Err(Error::InsufficientData(size));
    }
    let m0 = big(&dq.m0);
    let m1 = big(&dq.m1);
    if dq.s0 > 0 {
        let t_strict = SlopeSet::open(m0.clone(), m1.clone());
        return Ok(RelativeIntervalResult::from_bounds(m0, m1, t_strict, dq));
    }

    let left = window_extent(Side::Left, gammas, taus, strict, &dq)?;
    let right = window_extent(Side::Right, gammas, taus, strict, &dq)?;
    let eta = left.as_ref().map(|y| &m0 - y);
    let xi = right.as_ref().map(|y| &m1 + y);
    let lo = eta.clone().unwrap_or_else(|| m0.clone());
    let hi = xi.clone().unwrap_or_else(|| m1.clone());

    let mut spans = Vec::new();
    if m0 < m1 {
        spans.push(Span::new(Bound::Open(m0.clone()), Bound::Open(m1.clone())));
    }
    if let Some(e) = &eta {
        spans.push(Span::new(Bound::Open(e.clone()), Bound::Open(m0.clone())));
    }
    if let Some(x) = &xi {
        spans.push(Span::new(Bound::Open(m1.clone()), Bound::Open(x.clone())));
    }
    for m in [&m0, &m1] {
        if strict_contains_integer(gammas, taus, strict, &dq, m)? {
            spans.push(Span::new(Bound::Closed(m.clone()), Bound::Closed(m.clone())));
        }
    }
    let t_strict = SlopeSet::from_parts(spans, false);
    Ok(RelativeIntervalResult { t: Arc::closed(lo, hi), t_strict, quantities: dq, eta, xi })
}

// Whether the integer m lies in T~, i.e. the new slot is strict and integral
// and therefore drops out of the tuple.
fn strict_contains_integer(
    gammas: &[BigRational],
    taus: &[BigRational],
    strict: &BTreeSet<usize>,
    dq: &DerivedQuantities,
    m: &BigRational,
) -> Result<bool> {
    if dq.n + dq.r1 == 2 {
        let total: BigRational = gammas.iter().chain(taus.iter()).sum();
        return Ok(*m == -total);
    }
    let mut all = taus.to_vec();
    all.push(m.clone());
    let mut j = strict.clone();
    j.insert(taus.len());
    let q = JNQuery::new(gammas.to_vec(), all, j, BigInt::zero())?;
    Ok(jn_realizable(&q)?.realizable)
}

/// `η` (left) or `ξ` (right); fails with [`Error::WindowClosed`] when the
/// window next to the core is disjoint from `T`.
pub fn endpoint_search(
    side: Side,
    gammas: &[BigRational],
    taus: &[BigRational],
    strict: &BTreeSet<usize>,
) -> Result<ExtRational> {
    check_gammas(gammas)?;
    check_strict(strict, taus.len())?;
    let dq = derived_quantities(gammas, taus, strict);
    if dq.n + dq.r1 + dq.s0 < 2 {
        return Err(Error::InsufficientData(dq.n + dq.r1 + dq.s0));
    }
    if dq.s0 > 0 {
        return Err(Error::WindowClosed(side.name()));
    }
    match window_extent(side, gammas, taus, strict, &dq)? {
        None => Err(Error::WindowClosed(side.name())),
        Some(y) => Ok(ExtRational::Finite(match side {
            Side::Left => big(&dq.m0) - y,
            Side::Right => big(&dq.m1) + y,
        })),
    }
}

// Fixed slots seen by the b = 1 system inside a window. Integral strict
// entries have already dropped out; with s0 = 0 nothing integral remains.
fn window_slots(side: Side, gammas: &[BigRational], taus: &[BigRational], strict: &BTreeSet<usize>) -> Vec<Slot> {
    let mut slots: Vec<Slot> = gammas.iter().map(|g| Slot::new(g.clone(), true)).collect();
    for (j, t) in taus.iter().enumerate() {
        if t.is_integer() {
            continue;
        }
        slots.push(Slot::new(t - t.floor(), strict.contains(&j)));
    }
    if side == Side::Left {
        slots = slots.iter().map(Slot::complemented).collect();
    }
    slots
}

// Necessary condition for a window to meet T: at most one slot that can
// never take the value 1/N. On the left that is a strict value ≤ 1/2 or a
// non-strict value < 1/2; on the right the mirror image. Non-strict values of
// exactly 1/2 are exempt since the witness A/N = 1/2 serves any number of them.
fn gate_necessary(side: Side, fixed_raw: &[Slot]) -> bool {
    let half = BigRational::new(1.into(), 2.into());
    let count = fixed_raw
        .iter()
        .filter(|s| !s.value.is_zero())
        .filter(|s| {
            let ord = s.value.cmp(&half);
            let ord = if side == Side::Left { ord.reverse() } else { ord };
            ord == std::cmp::Ordering::Greater || (s.strict && ord == std::cmp::Ordering::Equal)
        })
        .count();
    count <= 1
}

// Exact criterion when n + r1 = 2.
fn gate_two_slot(side: Side, gammas: &[BigRational], taus: &[BigRational], strict: &BTreeSet<usize>, m0: &BigRational) -> bool {
    let total: BigRational = gammas.iter().chain(taus.iter()).sum();
    let neg = -total;
    let first = match side {
        Side::Left => neg < *m0,
        Side::Right => neg > *m0,
    };
    let second = gammas.is_empty() && neg == *m0 && !strict.iter().any(|&j| !taus[j].is_integer());
    first || second
}

// Largest value the new slot can receive over all witnesses, or None when no
// witness exists (window closed).
fn window_extent(
    side: Side,
    gammas: &[BigRational],
    taus: &[BigRational],
    strict: &BTreeSet<usize>,
    dq: &DerivedQuantities,
) -> Result<Option<BigRational>> {
    let raw = window_slots(Side::Right, gammas, taus, strict);
    let fixed = window_slots(side, gammas, taus, strict);
    let extent = max_free_value(&fixed);
    if extent.is_some() && !gate_necessary(side, &raw) {
        return Err(Error::Inconsistent(format!("{} window open although the half-count gate fails", side.name())));
    }
    if dq.n + dq.r1 == 2 {
        let gate = gate_two_slot(side, gammas, taus, strict, &big(&dq.m0));
        if gate != extent.is_some() {
            return Err(Error::Inconsistent(format!("{} window: two-slot gate disagrees with search", side.name())));
        }
    }
    Ok(extent)
}

fn floor_recip(v: &BigRational) -> u64 {
    v.recip().floor().to_integer().to_u64().expect("slot value too small")
}

/// Maximum over all `b = 1` witnesses of the value handed to one extra,
/// unconstrained slot appended to `fixed`.
pub(crate) fn max_free_value(fixed: &[Slot]) -> Option<BigRational> {
    let f = fixed.len();
    assert!(f >= 2, "need at least two fixed slots");
    let mut best: Option<BigRational> = None;
    let mut offer = |x: BigRational| {
        if best.as_ref().map_or(true, |b| x > *b) {
            best = Some(x);
        }
    };

    // The new slot takes A/N, fixed slot i takes N − A, the others 1/N.
    for i in 0..f {
        let others: Vec<&Slot> = (0..f).filter(|&x| x != i).map(|x| &fixed[x]).collect();
        let nb = others.iter().map(|s| floor_recip(&s.value)).min().unwrap();
        for n in 2..=nb {
            if others.iter().any(|s| s.min_numerator(n) > BigInt::one()) {
                continue;
            }
            let lo_i = fixed[i].min_numerator(n).max(BigInt::zero()).to_u64().unwrap_or(u64::MAX);
            let amax = (n - 1).min(n.saturating_sub(lo_i));
            if let Some(a) = (1..=amax).rev().find(|a| a.gcd(&n) == 1) {
                offer(BigRational::new(a.into(), n.into()));
            }
        }
    }

    // The new slot takes 1/N; fixed slots i, j take A and N − A.
    if f == 2 {
        let lo = &fixed[0].value;
        let hi = BigRational::one() - &fixed[1].value;
        if let Some(x) = simplest_between(lo, fixed[0].strict, &hi, fixed[1].strict) {
            offer(BigRational::new(BigInt::one(), x.denom().clone()));
        }
    } else {
        for i in 0..f {
            for j in 0..f {
                if i == j {
                    continue;
                }
                let rest: Vec<&Slot> = (0..f).filter(|&x| x != i && x != j).map(|x| &fixed[x]).collect();
                let nb = rest.iter().map(|s| floor_recip(&s.value)).min().unwrap();
                for n in 2..=nb {
                    if rest.iter().any(|s| s.min_numerator(n) > BigInt::one()) {
                        continue;
                    }
                    let lo_i = fixed[i].min_numerator(n).max(BigInt::one()).to_u64().unwrap_or(u64::MAX);
                    let lo_j = fixed[j].min_numerator(n).max(BigInt::one()).to_u64().unwrap_or(u64::MAX);
                    if lo_j > n {
                        continue;
                    }
                    if (lo_i..=(n - lo_j)).any(|a| a.gcd(&n) == 1) {
                        offer(BigRational::new(BigInt::one(), n.into()));
                        break;
                    }
                }
            }
        }
    }
    best
}

/// Which closed form governs `T(C; ∅; τ)` on a cable space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CableBranch {
    /// `τ̄ = 0`: `[−τ − 1, −τ]`.
    Integral,
    /// `γ + τ̄ < 1`: `[−⌊τ⌋ − 1, ξ(τ)]`.
    Below,
    /// `γ + τ̄ = 1`: `{−⌊τ⌋ − 1}`.
    Degenerate,
    /// `γ + τ̄ > 1`: `[η(τ), −⌊τ⌋ − 1]`.
    Above,
}

pub fn cable_branch(params: &CableParams, tau: &BigRational) -> CableBranch {
    let frac = tau - tau.floor();
    if frac.is_zero() {
        return CableBranch::Integral;
    }
    match (params.gamma() + frac).cmp(&BigRational::one()) {
        std::cmp::Ordering::Less => CableBranch::Below,
        std::cmp::Ordering::Equal => CableBranch::Degenerate,
        std::cmp::Ordering::Greater => CableBranch::Above,
    }
}

/// `T(C_{p,q}; J; τ)` and `T~(C_{p,q}; J; τ)` with `J = {1}` when
/// `strict_inner`, else `J = ∅`.
pub fn cable_interval(params: &CableParams, strict_inner: bool, tau: &BigRational) -> Result<RelativeIntervalResult> {
    let gamma = params.gamma();
    let j: BTreeSet<usize> = if strict_inner { [0].into() } else { BTreeSet::new() };
    if strict_inner && tau.is_integer() {
        // The inner map is forced to be the shift by τ, leaving γ + τ' = −τ.
        let x = -tau - &gamma;
        let dq = derived_quantities(&[gamma.clone()], &[tau.clone()], &j);
        let t_strict = SlopeSet::point(&ExtRational::Finite(x.clone()));
        return Ok(RelativeIntervalResult::from_bounds(x.clone(), x, t_strict, dq));
    }
    relative_interval(&[gamma], &[tau.clone()], &j)
}

/// The slope `(b·s + r)/(p − q·b)` at which the special-slope closed forms
/// are stated.
pub fn special_slope(params: &CableParams, b: &BigInt) -> Result<BigRational> {
    let (p, q, r, s) = params.big();
    let den = &p - &q * b;
    if den.is_zero() {
        return Err(Error::OutOfRange("p − q·b vanishes".into()));
    }
    Ok(BigRational::new(b * &s + &r, den))
}

/// Closed forms for `T(C; ∅; τ_b)` (and the `J = {1}` variant when `strict`)
/// at `τ_b = (b·s + r)/(p − q·b)`.
///
/// For `0 ≤ b ≤ p/q`: `[−1 − 1/(p − qb), −1]`; with `strict`,
/// `[−1 − 1/(p − q(b − 1)), −1]` if `τ_b < 1` and `{−(2q + s)/q}` if
/// `τ_b = 1`. For `b > p/q`: `[−1, −1 + 1/(bq − p)]`; the strict variant is
/// not available there.
pub fn special_slope_interval(params: &CableParams, b: &BigInt, strict: bool) -> Result<Arc> {
    let (p, q, _, s) = params.big();
    if b.is_negative() {
        return Err(Error::OutOfRange(format!("b = {b} is negative")));
    }
    let one = BigRational::one();
    if &q * b <= p {
        let den = &p - &q * b;
        if !strict {
            return Ok(Arc::closed(-&one - BigRational::new(BigInt::one(), den), -one));
        }
        let tau = special_slope(params, b)?;
        if tau == one {
            let x = BigRational::new(-(&q * BigInt::from(2) + &s), q.clone());
            return Ok(Arc::closed(x.clone(), x));
        }
        let den1 = &p - &q * (b - 1);
        return Ok(Arc::closed(-&one - BigRational::new(BigInt::one(), den1), -one));
    }
    if strict {
        return Err(Error::OutOfRange("strict special-slope form needs 0 ≤ b ≤ p/q".into()));
    }
    let den = b * &q - &p;
    Ok(Arc::closed(-&one, -&one + BigRational::new(BigInt::one(), den)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Union over `τ ≥ τ₀`.
    Geq,
    /// Union over `τ ≤ τ₀`.
    Leq,
}

/// `⋃_{τ ≥ τ₀} T(C; ∅; τ)` or `⋃_{τ ≤ τ₀} T(C; ∅; τ)` from the piecewise
/// closed forms.
pub fn ray_union(params: &CableParams, direction: Direction, tau0: &BigRational) -> Result<SlopeSet> {
    let fl = tau0.floor();
    let frac = tau0 - &fl;
    let one_minus_gamma = BigRational::one() - params.gamma();
    let at = || cable_interval(params, false, tau0).map(|r| r.t_set());
    Ok(match direction {
        Direction::Geq => {
            if frac.is_zero() {
                ray_down(Bound::Closed(-fl))
            } else {
                let base = ray_down(Bound::Closed(-fl - BigRational::one()));
                if frac < one_minus_gamma {
                    base.union(&at()?)
                } else {
                    base
                }
            }
        }
        Direction::Leq => {
            let base = ray_up(Bound::Closed(-fl - BigRational::one()));
            if frac <= one_minus_gamma {
                base
            } else {
                base.union(&at()?)
            }
        }
    })
}

fn ray_down(hi: Bound) -> SlopeSet {
    SlopeSet::from_span(Span::new(Bound::Unbounded, hi))
}

fn ray_up(lo: Bound) -> SlopeSet {
    SlopeSet::from_span(Span::new(lo, Bound::Unbounded))
}

/// Which relative set is collected over the inner slopes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnionKind {
    /// `T(C; ∅; τ)`.
    Plain,
    /// `T~(C; {1}; τ)`.
    Strict,
}

/// `⋃_{τ ∈ S} T(C; ∅; τ)` (or the strict variant) for the finite part of
/// `S`. Uses only endpoint evaluations: each span is cut at the points where
/// the closed form changes branch, and every open piece in between is
/// resolved from the monotonicity of the endpoint functions.
pub fn union_over(params: &CableParams, taus: &SlopeSet, kind: UnionKind) -> Result<SlopeSet> {
    let mut out = SlopeSet::empty();
    for span in taus.spans() {
        out = out.union(&union_over_span(params, span, kind)?);
    }
    Ok(out)
}

fn union_over_span(params: &CableParams, span: &Span, kind: UnionKind) -> Result<SlopeSet> {
    let one = BigRational::one();
    match (&span.lo, &span.hi) {
        (Bound::Unbounded, Bound::Unbounded) => Ok(SlopeSet::reals()),
        (Bound::Unbounded, hi) => {
            let b = hi.value().unwrap();
            let k = if b.is_integer() && matches!(hi, Bound::Open(_)) { b - &one } else { b.floor() };
            let mut out = ray_leq_integer(params, &k, kind);
            if k < *b {
                out = out.union(&bounded_union(params, &Bound::Closed(k), hi, kind)?);
            }
            Ok(out)
        }
        (lo, Bound::Unbounded) => {
            let a = lo.value().unwrap();
            let k = if a.is_integer() && matches!(lo, Bound::Open(_)) { a + &one } else { a.ceil() };
            let mut out = ray_geq_integer(params, &k, kind);
            if *a < k {
                out = out.union(&bounded_union(params, lo, &Bound::Closed(k), kind)?);
            }
            Ok(out)
        }
        (lo, hi) => bounded_union(params, lo, hi, kind),
    }
}

fn ray_geq_integer(params: &CableParams, k: &BigRational, kind: UnionKind) -> SlopeSet {
    match kind {
        UnionKind::Plain => ray_down(Bound::Closed(-k)),
        UnionKind::Strict => ray_down(Bound::Closed(-k - params.gamma())),
    }
}

fn ray_leq_integer(params: &CableParams, k: &BigRational, kind: UnionKind) -> SlopeSet {
    match kind {
        UnionKind::Plain => ray_up(Bound::Closed(-k - BigRational::one())),
        UnionKind::Strict => ray_up(Bound::Closed(-k - params.gamma())),
    }
}

fn point_set(params: &CableParams, tau: &BigRational, kind: UnionKind) -> Result<SlopeSet> {
    Ok(match kind {
        UnionKind::Plain => cable_interval(params, false, tau)?.t_set(),
        UnionKind::Strict => cable_interval(params, true, tau)?.t_strict,
    })
}

fn bounded_union(params: &CableParams, lo: &Bound, hi: &Bound, kind: UnionKind) -> Result<SlopeSet> {
    let a = lo.value().unwrap().clone();
    let b = hi.value().unwrap().clone();
    if a == b {
        return point_set(params, &a, kind);
    }
    let one_minus_gamma = BigRational::one() - params.gamma();
    let mut cuts = vec![a.clone()];
    let mut k = a.floor();
    while k <= b {
        for c in [k.clone(), &k + &one_minus_gamma] {
            if c > a && c < b {
                cuts.push(c);
            }
        }
        k += BigRational::one();
    }
    cuts.sort();
    cuts.push(b.clone());

    let mut out = SlopeSet::empty();
    if matches!(lo, Bound::Closed(_)) {
        out = out.union(&point_set(params, &a, kind)?);
    }
    if matches!(hi, Bound::Closed(_)) {
        out = out.union(&point_set(params, &b, kind)?);
    }
    for c in &cuts[1..cuts.len() - 1] {
        out = out.union(&point_set(params, c, kind)?);
    }
    for w in cuts.windows(2) {
        out = out.union(&open_piece_union(params, &w[0], &w[1], kind)?);
    }
    Ok(out)
}

// Union over τ in (c, d), where (c, d) contains no integer and no point of
// the form k + 1 − γ.
fn open_piece_union(params: &CableParams, c: &BigRational, d: &BigRational, kind: UnionKind) -> Result<SlopeSet> {
    let one = BigRational::one();
    let gamma = params.gamma();
    let n = c.floor();
    let frac = c - &n;
    let head = -&n - &one;
    if frac < &one - &gamma {
        // T = [−n−1, ξ(τ)] with ξ non-increasing; its supremum sits at τ → c⁺.
        let (x, attained) = if frac.is_zero() {
            (-&n - &gamma, false)
        } else {
            (cable_interval(params, true, c)?.high().clone(), true)
        };
        let hi = if attained && kind == UnionKind::Plain { Bound::Closed(x) } else { Bound::Open(x) };
        let lo = if kind == UnionKind::Plain { Bound::Closed(head) } else { Bound::Open(head) };
        Ok(SlopeSet::from_span(Span::new(lo, hi)))
    } else {
        // T = [η(τ), −n−1] with η non-increasing; its infimum sits at τ → d⁻.
        let (y, attained) = if *d == &n + &one {
            (-&n - &one - &gamma, false)
        } else {
            (cable_interval(params, true, d)?.low().clone(), true)
        };
        let lo = if attained && kind == UnionKind::Plain { Bound::Closed(y) } else { Bound::Open(y) };
        let hi = if kind == UnionKind::Plain { Bound::Closed(head) } else { Bound::Open(head) };
        Ok(SlopeSet::from_span(Span::new(lo, hi)))
    }
}
