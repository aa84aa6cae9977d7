//! Exact arithmetic on ℚ ∪ {∞}, slope sets on the projective rational circle
//! and integer Möbius actions.
//!
//! A [`SlopeSet`] is stored as its affine part (a canonical union of real
//! intervals with rational endpoints) plus a flag recording whether the point
//! ∞ belongs to it. The arc view ([`SlopeSet::arcs`]) glues the two rays at
//! ∞ back together whenever ∞ is a member.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Builds `n/d` from machine integers. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"n"` or `"n/d"` (no decimals, `d != 0`).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Formats a finite rational the same way [`ExtRational`] does.
pub fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A point of ℚ ∪ {∞}. The single point at infinity has the structural
/// encoding `1/0`; finite values are always reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(BigRational),
    Infinity,
}

impl ExtRational {
    pub fn new(n: i64, d: i64) -> Self {
        Self::from_parts(BigInt::from(n), BigInt::from(d))
    }

    /// `n/0` (any `n != 0`) is ∞. Panics on `0/0`.
    pub fn from_parts(n: BigInt, d: BigInt) -> Self {
        if d.is_zero() {
            assert!(!n.is_zero(), "0/0 is not a point of the projective line");
            ExtRational::Infinity
        } else {
            ExtRational::Finite(BigRational::new(n, d))
        }
    }

    pub fn integer(n: i64) -> Self {
        ExtRational::Finite(int(n))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRational::Infinity)
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtRational::Finite(q) => Some(q),
            ExtRational::Infinity => None,
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            ExtRational::Finite(q) => q.numer().clone(),
            ExtRational::Infinity => BigInt::one(),
        }
    }

    /// Non-negative; zero exactly for ∞.
    pub fn denom(&self) -> BigInt {
        match self {
            ExtRational::Finite(q) => q.denom().clone(),
            ExtRational::Infinity => BigInt::zero(),
        }
    }
}

impl From<BigRational> for ExtRational {
    fn from(q: BigRational) -> Self {
        ExtRational::Finite(q)
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(q) => f.write_str(&fmt_rational(q)),
            ExtRational::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" | "-inf" | "∞" | "-∞" | "+∞" => Ok(ExtRational::Infinity),
            t => parse_rational(t).map(ExtRational::Finite),
        }
    }
}

/// One end of a real interval. `Unbounded` is −∞ on the left and +∞ on the
/// right; it never says anything about membership of the point ∞.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    Unbounded,
    Closed(BigRational),
    Open(BigRational),
}

impl Bound {
    pub fn value(&self) -> Option<&BigRational> {
        match self {
            Bound::Unbounded => None,
            Bound::Closed(q) | Bound::Open(q) => Some(q),
        }
    }

    fn flipped(&self) -> Bound {
        match self {
            Bound::Unbounded => Bound::Unbounded,
            Bound::Closed(q) => Bound::Open(q.clone()),
            Bound::Open(q) => Bound::Closed(q.clone()),
        }
    }
}

// Lower bounds: −∞ < [a < (a.
fn cmp_lower(x: &Bound, y: &Bound) -> Ordering {
    match (x, y) {
        (Bound::Unbounded, Bound::Unbounded) => Ordering::Equal,
        (Bound::Unbounded, _) => Ordering::Less,
        (_, Bound::Unbounded) => Ordering::Greater,
        (a, b) => {
            let o = a.value().unwrap().cmp(b.value().unwrap());
            o.then_with(|| rank_lower(a).cmp(&rank_lower(b)))
        }
    }
}

fn rank_lower(b: &Bound) -> u8 {
    matches!(b, Bound::Open(_)) as u8
}

// Upper bounds: a) < a] < +∞.
fn cmp_upper(x: &Bound, y: &Bound) -> Ordering {
    match (x, y) {
        (Bound::Unbounded, Bound::Unbounded) => Ordering::Equal,
        (Bound::Unbounded, _) => Ordering::Greater,
        (_, Bound::Unbounded) => Ordering::Less,
        (a, b) => {
            let o = a.value().unwrap().cmp(b.value().unwrap());
            o.then_with(|| rank_upper(a).cmp(&rank_upper(b)))
        }
    }
}

fn rank_upper(b: &Bound) -> u8 {
    matches!(b, Bound::Closed(_)) as u8
}

/// A real interval `⟨lo, hi⟩`. Only non-empty spans are ever stored in a
/// [`SlopeSet`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Span {
    pub lo: Bound,
    pub hi: Bound,
}

impl Span {
    pub fn new(lo: Bound, hi: Bound) -> Self {
        Span { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Bound::Unbounded, _) | (_, Bound::Unbounded) => false,
            (Bound::Closed(a), Bound::Closed(b)) => a > b,
            (a, b) => a.value().unwrap() >= b.value().unwrap(),
        }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        let lo_ok = match &self.lo {
            Bound::Unbounded => true,
            Bound::Closed(a) => a <= x,
            Bound::Open(a) => a < x,
        };
        let hi_ok = match &self.hi {
            Bound::Unbounded => true,
            Bound::Closed(b) => x <= b,
            Bound::Open(b) => x < b,
        };
        lo_ok && hi_ok
    }

    pub fn is_point(&self) -> bool {
        matches!((&self.lo, &self.hi), (Bound::Closed(a), Bound::Closed(b)) if a == b)
    }

    // Whether `next` (which starts no earlier than self) touches or overlaps self.
    fn joins(&self, next: &Span) -> bool {
        match (&self.hi, &next.lo) {
            (Bound::Unbounded, _) | (_, Bound::Unbounded) => true,
            (Bound::Open(h), Bound::Open(l)) => l < h,
            (h, l) => l.value().unwrap() <= h.value().unwrap(),
        }
    }
}

/// A finite union of arcs on ℚ ∪ {∞} in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SlopeSet {
    spans: Vec<Span>,
    infinity: bool,
}

impl SlopeSet {
    pub fn empty() -> Self {
        SlopeSet::default()
    }

    /// ℝ ∪ {∞}.
    pub fn full() -> Self {
        SlopeSet { spans: vec![Span::new(Bound::Unbounded, Bound::Unbounded)], infinity: true }
    }

    /// ℝ, i.e. the circle minus ∞.
    pub fn reals() -> Self {
        SlopeSet { spans: vec![Span::new(Bound::Unbounded, Bound::Unbounded)], infinity: false }
    }

    pub fn infinity_point() -> Self {
        SlopeSet { spans: Vec::new(), infinity: true }
    }

    pub fn point(x: &ExtRational) -> Self {
        match x {
            ExtRational::Infinity => Self::infinity_point(),
            ExtRational::Finite(q) => Self::from_span(Span::new(Bound::Closed(q.clone()), Bound::Closed(q.clone()))),
        }
    }

    pub fn closed(a: BigRational, b: BigRational) -> Self {
        Self::from_span(Span::new(Bound::Closed(a), Bound::Closed(b)))
    }

    pub fn open(a: BigRational, b: BigRational) -> Self {
        Self::from_span(Span::new(Bound::Open(a), Bound::Open(b)))
    }

    pub fn from_span(span: Span) -> Self {
        Self::from_parts(vec![span], false)
    }

    /// Canonicalises an arbitrary list of (possibly empty, overlapping) spans.
    pub fn from_parts(spans: Vec<Span>, infinity: bool) -> Self {
        let mut spans: Vec<Span> = spans.into_iter().filter(|s| !s.is_empty()).collect();
        spans.sort_by(|x, y| cmp_lower(&x.lo, &y.lo));
        let mut out: Vec<Span> = Vec::with_capacity(spans.len());
        for s in spans {
            match out.last_mut() {
                Some(cur) if cur.joins(&s) => {
                    if cmp_upper(&s.hi, &cur.hi) == Ordering::Greater {
                        cur.hi = s.hi;
                    }
                }
                _ => out.push(s),
            }
        }
        SlopeSet { spans: out, infinity }
    }

    pub fn spans(&self) -> &[Span] {
        &self.spans
    }

    pub fn contains_infinity(&self) -> bool {
        self.infinity
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty() && !self.infinity
    }

    pub fn is_full(&self) -> bool {
        self.infinity && self.covers_reals()
    }

    pub fn covers_reals(&self) -> bool {
        matches!(self.spans.as_slice(), [Span { lo: Bound::Unbounded, hi: Bound::Unbounded }])
    }

    pub fn contains(&self, x: &ExtRational) -> bool {
        match x {
            ExtRational::Infinity => self.infinity,
            ExtRational::Finite(q) => self.contains_finite(q),
        }
    }

    pub fn contains_finite(&self, q: &BigRational) -> bool {
        // Spans are sorted and disjoint; a linear scan is plenty for the sizes seen here.
        self.spans.iter().any(|s| s.contains(q))
    }

    pub fn union(&self, other: &SlopeSet) -> SlopeSet {
        let mut spans = self.spans.clone();
        spans.extend(other.spans.iter().cloned());
        Self::from_parts(spans, self.infinity || other.infinity)
    }

    pub fn complement(&self) -> SlopeSet {
        let mut gaps = Vec::with_capacity(self.spans.len() + 1);
        let mut prev = Bound::Unbounded;
        let mut at_start = true;
        for s in &self.spans {
            if !(at_start && s.lo == Bound::Unbounded) {
                gaps.push(Span::new(prev.clone(), s.lo.flipped()));
            }
            at_start = false;
            prev = s.hi.flipped();
            if s.hi == Bound::Unbounded {
                return Self::from_parts(gaps, !self.infinity);
            }
        }
        gaps.push(Span::new(prev, Bound::Unbounded));
        Self::from_parts(gaps, !self.infinity)
    }

    pub fn intersect(&self, other: &SlopeSet) -> SlopeSet {
        self.complement().union(&other.complement()).complement()
    }

    pub fn difference(&self, other: &SlopeSet) -> SlopeSet {
        self.intersect(&other.complement())
    }

    pub fn is_subset(&self, other: &SlopeSet) -> bool {
        self.difference(other).is_empty()
    }

    /// The same set with ∞ removed.
    pub fn without_infinity(&self) -> SlopeSet {
        SlopeSet { spans: self.spans.clone(), infinity: false }
    }

    pub fn with_infinity(&self, on: bool) -> SlopeSet {
        SlopeSet { spans: self.spans.clone(), infinity: on }
    }

    /// Interior in the circle topology.
    pub fn interior(&self) -> SlopeSet {
        // int(S) = complement(closure(complement(S))); closure of a canonical
        // span list closes each finite end and adds ∞ next to any ray.
        self.complement().closure().complement()
    }

    pub fn closure(&self) -> SlopeSet {
        let mut ray = false;
        let spans = self
            .spans
            .iter()
            .map(|s| {
                let mut close = |b: &Bound| match b {
                    Bound::Unbounded => {
                        ray = true;
                        Bound::Unbounded
                    }
                    Bound::Closed(q) | Bound::Open(q) => Bound::Closed(q.clone()),
                };
                let lo = close(&s.lo);
                let hi = close(&s.hi);
                Span::new(lo, hi)
            })
            .collect();
        Self::from_parts(spans, self.infinity || ray)
    }

    pub fn image(&self, m: &IntMobius) -> SlopeSet {
        let mut out = SlopeSet::empty();
        if self.infinity {
            out = out.union(&SlopeSet::point(&m.apply(&ExtRational::Infinity)));
        }
        for s in &self.spans {
            out = out.union(&m.span_image(s));
        }
        out
    }

    /// Arc view, ordered by affine low endpoint with any arc through ∞ last.
    pub fn arcs(&self) -> Vec<Arc> {
        if self.covers_reals() {
            return vec![Arc {
                low: ExtRational::Infinity,
                high: ExtRational::Infinity,
                low_closed: self.infinity,
                high_closed: self.infinity,
                wraps_infinity: false,
            }];
        }
        let n = self.spans.len();
        let first_ray = n > 0 && self.spans[0].lo == Bound::Unbounded;
        let last_ray = n > 0 && self.spans[n - 1].hi == Bound::Unbounded;
        let glue = self.infinity && first_ray && last_ray;
        let mut arcs = Vec::with_capacity(n + 1);
        for (i, s) in self.spans.iter().enumerate() {
            if glue && (i == 0 || i == n - 1) {
                continue;
            }
            let (low, low_closed) = end_of(&s.lo, self.infinity);
            let (high, high_closed) = end_of(&s.hi, self.infinity);
            arcs.push(Arc { low, high, low_closed, high_closed, wraps_infinity: false });
        }
        if glue {
            let head = &self.spans[0];
            let tail = &self.spans[n - 1];
            let (high, high_closed) = end_of(&head.hi, true);
            let (low, low_closed) = end_of(&tail.lo, true);
            arcs.push(Arc { low, high, low_closed, high_closed, wraps_infinity: true });
        } else if self.infinity && !first_ray && !last_ray {
            arcs.push(Arc {
                low: ExtRational::Infinity,
                high: ExtRational::Infinity,
                low_closed: true,
                high_closed: true,
                wraps_infinity: true,
            });
        }
        arcs
    }

    pub fn from_arcs(arcs: &[Arc]) -> SlopeSet {
        arcs.iter().fold(SlopeSet::empty(), |acc, a| acc.union(&a.to_set()))
    }

    /// Arc strings, the form used in machine-readable output.
    pub fn arc_strings(&self) -> Vec<String> {
        self.arcs().iter().map(|a| a.to_string()).collect()
    }
}

fn end_of(b: &Bound, infinity: bool) -> (ExtRational, bool) {
    match b {
        Bound::Unbounded => (ExtRational::Infinity, infinity),
        Bound::Closed(q) => (ExtRational::Finite(q.clone()), true),
        Bound::Open(q) => (ExtRational::Finite(q.clone()), false),
    }
}

impl fmt::Display for SlopeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        f.write_str(&self.arc_strings().join("∪"))
    }
}

impl FromStr for SlopeSet {
    type Err = Error;

    /// Accepts arcs such as `[a,b]`, `(a,b]`, `[-inf,a]`, points `{a}`, the
    /// empty set `∅`, joined by `∪` or `U`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t, "∅" | "empty" | "{}") {
            return Ok(SlopeSet::empty());
        }
        let mut out = SlopeSet::empty();
        for piece in t.split(['∪', 'U']) {
            out = out.union(&parse_piece(piece.trim())?);
        }
        Ok(out)
    }
}

fn parse_piece(p: &str) -> Result<SlopeSet> {
    let bad = || Error::Parse(format!("malformed arc {p:?}"));
    if let Some(inner) = p.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
        let mut out = SlopeSet::empty();
        for x in inner.split(',') {
            out = out.union(&SlopeSet::point(&x.parse()?));
        }
        return Ok(out);
    }
    let mut chars = p.chars();
    let open = chars.next().ok_or_else(bad)?;
    let close = chars.next_back().ok_or_else(bad)?;
    let lo_closed = match open {
        '[' => true,
        '(' => false,
        _ => return Err(bad()),
    };
    let hi_closed = match close {
        ']' => true,
        ')' => false,
        _ => return Err(bad()),
    };
    let (a, b) = chars.as_str().split_once(',').ok_or_else(bad)?;
    let a: ExtRational = a.parse()?;
    let b: ExtRational = b.parse()?;
    let lo = match &a {
        ExtRational::Infinity => Bound::Unbounded,
        ExtRational::Finite(q) if lo_closed => Bound::Closed(q.clone()),
        ExtRational::Finite(q) => Bound::Open(q.clone()),
    };
    let hi = match &b {
        ExtRational::Infinity => Bound::Unbounded,
        ExtRational::Finite(q) if hi_closed => Bound::Closed(q.clone()),
        ExtRational::Finite(q) => Bound::Open(q.clone()),
    };
    let infinity = (a.is_infinite() && lo_closed) || (b.is_infinite() && hi_closed);
    let span = Span::new(lo, hi);
    if span.is_empty() {
        return Err(Error::Parse(format!("empty or reversed arc {p:?}")));
    }
    Ok(SlopeSet::from_parts(vec![span], infinity))
}

/// One connected piece of a [`SlopeSet`] on the circle.
///
/// A non-wrapping arc with `low = ∞` starts at −∞, one with `high = ∞` ends
/// at +∞; the closed flag at such an end says whether ∞ is a member. The full
/// circle is `low = high = ∞`, both closed, not wrapping. A wrapping arc is
/// `[low, +∞) ∪ {∞} ∪ (−∞, high]`; the lone point ∞ is the degenerate
/// wrapping arc `low = high = ∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub low: ExtRational,
    pub high: ExtRational,
    pub low_closed: bool,
    pub high_closed: bool,
    pub wraps_infinity: bool,
}

impl Arc {
    pub fn closed(a: BigRational, b: BigRational) -> Self {
        Arc {
            low: ExtRational::Finite(a),
            high: ExtRational::Finite(b),
            low_closed: true,
            high_closed: true,
            wraps_infinity: false,
        }
    }

    pub fn is_point(&self) -> bool {
        !self.wraps_infinity && self.low == self.high && !self.low.is_infinite()
    }

    pub fn to_set(&self) -> SlopeSet {
        let bound = |x: &ExtRational, closed: bool| match x {
            ExtRational::Infinity => Bound::Unbounded,
            ExtRational::Finite(q) if closed => Bound::Closed(q.clone()),
            ExtRational::Finite(q) => Bound::Open(q.clone()),
        };
        if self.wraps_infinity {
            if self.low.is_infinite() {
                return SlopeSet::infinity_point();
            }
            let tail = Span::new(bound(&self.low, self.low_closed), Bound::Unbounded);
            let head = Span::new(Bound::Unbounded, bound(&self.high, self.high_closed));
            return SlopeSet::from_parts(vec![head, tail], true);
        }
        let infinity = (self.low.is_infinite() && self.low_closed) || (self.high.is_infinite() && self.high_closed);
        let span = Span::new(bound(&self.low, self.low_closed), bound(&self.high, self.high_closed));
        SlopeSet::from_parts(vec![span], infinity)
    }

    pub fn contains(&self, x: &ExtRational) -> bool {
        self.to_set().contains(x)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lb = |c: bool| if c { '[' } else { '(' };
        let rb = |c: bool| if c { ']' } else { ')' };
        let left = |x: &ExtRational| if x.is_infinite() { "-inf".to_string() } else { x.to_string() };
        if self.wraps_infinity {
            if self.low.is_infinite() {
                return f.write_str("{inf}");
            }
            return write!(
                f,
                "[-inf,{}{}∪{}{},inf]",
                self.high,
                rb(self.high_closed),
                lb(self.low_closed),
                self.low
            );
        }
        if self.is_point() {
            return write!(f, "{{{}}}", self.low);
        }
        write!(f, "{}{},{}{}", lb(self.low_closed), left(&self.low), self.high, rb(self.high_closed))
    }
}

/// `x ↦ (a·x + b) / (c·x + d)` with integer coefficients and non-zero
/// determinant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMobius {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl IntMobius {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        let m = IntMobius { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        IntMobius { a: BigInt::one(), b: BigInt::zero(), c: BigInt::zero(), d: BigInt::one() }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn preserves_orientation(&self) -> bool {
        self.det().is_positive()
    }

    /// The adjugate matrix; as a projective map it is the inverse.
    pub fn inverse(&self) -> Self {
        IntMobius { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &IntMobius) -> Self {
        IntMobius {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    pub fn apply(&self, x: &ExtRational) -> ExtRational {
        let (n, d) = match x {
            ExtRational::Infinity => (BigInt::one(), BigInt::zero()),
            ExtRational::Finite(q) => (q.numer().clone(), q.denom().clone()),
        };
        let num = &self.a * &n + &self.b * &d;
        let den = &self.c * &n + &self.d * &d;
        ExtRational::from_parts(num, den)
    }

    pub fn arc_image(&self, arc: &Arc) -> SlopeSet {
        arc.to_set().image(self)
    }

    pub fn image(&self, set: &SlopeSet) -> SlopeSet {
        set.image(self)
    }

    fn span_image(&self, s: &Span) -> SlopeSet {
        let at = |b: &Bound| match b.value() {
            None => self.apply(&ExtRational::Infinity),
            Some(q) => self.apply(&ExtRational::Finite(q.clone())),
        };
        if s.is_point() {
            return SlopeSet::point(&at(&s.lo));
        }
        let u = at(&s.lo);
        let v = at(&s.hi);
        let mut out = if self.preserves_orientation() { open_arc(&u, &v) } else { open_arc(&v, &u) };
        for b in [&s.lo, &s.hi] {
            if let Bound::Closed(_) = b {
                out = out.union(&SlopeSet::point(&at(b)));
            }
        }
        out
    }
}

/// The open arc swept from `u` to `v` in the positive direction of the
/// circle, excluding both ends.
fn open_arc(u: &ExtRational, v: &ExtRational) -> SlopeSet {
    use ExtRational::{Finite, Infinity};
    match (u, v) {
        (Infinity, Infinity) => SlopeSet::reals(),
        (Finite(x), Finite(y)) if x == y => SlopeSet::from_parts(
            vec![
                Span::new(Bound::Unbounded, Bound::Open(x.clone())),
                Span::new(Bound::Open(x.clone()), Bound::Unbounded),
            ],
            true,
        ),
        (Infinity, Finite(y)) => SlopeSet::from_span(Span::new(Bound::Unbounded, Bound::Open(y.clone()))),
        (Finite(x), Infinity) => SlopeSet::from_span(Span::new(Bound::Open(x.clone()), Bound::Unbounded)),
        (Finite(x), Finite(y)) if x < y => SlopeSet::open(x.clone(), y.clone()),
        (Finite(x), Finite(y)) => SlopeSet::from_parts(
            vec![
                Span::new(Bound::Open(x.clone()), Bound::Unbounded),
                Span::new(Bound::Unbounded, Bound::Open(y.clone())),
            ],
            true,
        ),
    }
}

/// The rational of least denominator in `⟨lo, hi⟩` (ends open where
/// flagged), or `None` if the interval is empty. Linear in that denominator,
/// which is at most `1/(hi − lo) + 1` for a non-degenerate interval.
pub fn simplest_between(lo: &BigRational, lo_open: bool, hi: &BigRational, hi_open: bool) -> Option<BigRational> {
    if lo > hi || (lo == hi && (lo_open || hi_open)) {
        return None;
    }
    let mut n = BigInt::one();
    loop {
        let scaled = lo * BigRational::from_integer(n.clone());
        let a = if lo_open { scaled.floor().to_integer() + 1 } else { scaled.ceil().to_integer() };
        let x = BigRational::new(a, n.clone());
        if if hi_open { x < *hi } else { x <= *hi } {
            return Some(x);
        }
        n += 1;
    }
}

pub fn mobius_apply(m: &IntMobius, x: &ExtRational) -> ExtRational {
    m.apply(x)
}

pub fn mobius_arc_image(m: &IntMobius, a: &Arc) -> SlopeSet {
    m.arc_image(a)
}
