//! Cable spaces `C_{p,q}` and the cabling pipeline.
//!
//! Three bases appear: `ℬ_K` on the companion knot's boundary, `ℬ₁` / `ℬ₂`
//! adapted to the Seifert fibration on the two boundary tori of `C_{p,q}`,
//! and `ℬ_C` on the cabled knot. `f: ℬ_K → ℬ₁` and `g: ℬ₂ → ℬ_C` are integer
//! Möbius maps; in `ℬ₁` and `ℬ₂` the fiber slope is `∞`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::exact::{Arc, ExtRational, IntMobius, SlopeSet};
use crate::intervals::{cable_interval, union_over, UnionKind};
use crate::{Error, Result};

/// `(p, q, r, s)` with `gcd(p, q) = 1`, `ps + qr = 1` and
/// `−q < s < 0 < r ≤ p` (`r = p` only when `p = 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CableParams {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub s: i64,
}

impl CableParams {
    pub fn bezout(p: i64, q: i64) -> Result<Self> {
        bezout(p, q)
    }

    /// `γ = (q + s)/q ∈ (0, 1)`, the exceptional-fiber invariant.
    pub fn gamma(&self) -> BigRational {
        BigRational::new((self.q + self.s).into(), self.q.into())
    }

    pub fn big(&self) -> (BigInt, BigInt, BigInt, BigInt) {
        (self.p.into(), self.q.into(), self.r.into(), self.s.into())
    }

    /// `p/q`, the slope sent to the fiber by `f`.
    pub fn fiber_preimage(&self) -> ExtRational {
        ExtRational::new(self.p, self.q)
    }
}

pub fn bezout(p: i64, q: i64) -> Result<CableParams> {
    if p < 1 || q < 2 {
        return Err(Error::InvalidParams(format!("need p ≥ 1 and q ≥ 2, got p = {p}, q = {q}")));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::InvalidParams(format!("p = {p} and q = {q} are not coprime")));
    }
    let r = if p == 1 { 1 } else { (1..p).find(|r| (q * r).rem_euclid(p) == 1).expect("q is a unit mod p") };
    let s = (1 - q * r) / p;
    debug_assert!(p * s + q * r == 1 && -q < s && s < 0);
    Ok(CableParams { p, q, r, s })
}

/// `f(x) = (s·x + r)/(−q·x + p)`.
pub fn inner_basis_map(params: &CableParams) -> IntMobius {
    let CableParams { p, q, r, s } = *params;
    IntMobius::from_i64(s, r, -q, p).expect("ps + qr = 1")
}

/// `g(x) = pq + 1/(x + 1)`.
pub fn outer_basis_map(params: &CableParams) -> IntMobius {
    let pq = params.p * params.q;
    IntMobius::from_i64(pq, pq + 1, 1, 1).expect("determinant −1")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DetectionMode {
    /// `(∅, ∅)`.
    Weak,
    /// `(∅, {1})`.
    Regular,
    /// `({1}, {1})`.
    Strong,
}

impl DetectionMode {
    pub fn name(self) -> &'static str {
        match self {
            DetectionMode::Weak => "weak",
            DetectionMode::Regular => "regular",
            DetectionMode::Strong => "strong",
        }
    }
}

impl fmt::Display for DetectionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DetectionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weak" => Ok(DetectionMode::Weak),
            "regular" => Ok(DetectionMode::Regular),
            "strong" => Ok(DetectionMode::Strong),
            _ => Err(Error::Parse(format!("unknown detection mode {s:?}"))),
        }
    }
}

/// Whether a computed set is the detected set itself or only a subset of it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exactness {
    Equals,
    Contains,
}

impl Exactness {
    pub fn name(self) -> &'static str {
        match self {
            Exactness::Equals => "equals",
            Exactness::Contains => "contains",
        }
    }
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The fiber slope is detected on the outer torus exactly when it is detected
/// on the inner one, in every mode.
pub fn infinity_rule(_mode: DetectionMode, input_contains_infinity: bool) -> bool {
    input_contains_infinity
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Detected {
    pub set: SlopeSet,
    pub exactness: Exactness,
}

/// Pushes a detected set of the companion (in `ℬ_K`) through `C_{p,q}`.
///
/// `input_is_weak_set` asserts that `input` is also the companion's weakly
/// detected set; together with `input ≠ ℝ ∪ {∞}` it upgrades a regular-mode
/// answer from a subset to the exact set.
pub fn cable_detected_set(
    params: &CableParams,
    input: &SlopeSet,
    mode: DetectionMode,
    input_is_weak_set: bool,
) -> Result<Detected> {
    let fiber = params.fiber_preimage();
    let flag = input.contains(&fiber);
    // p/q goes to the fiber slope, which only the infinity rule may handle.
    let rest = input.difference(&SlopeSet::point(&fiber));
    let inner = rest.image(&inner_basis_map(params)).without_infinity();
    let kind = match mode {
        DetectionMode::Weak | DetectionMode::Regular => UnionKind::Plain,
        DetectionMode::Strong => UnionKind::Strict,
    };
    let outer = union_over(params, &inner, kind)?.with_infinity(infinity_rule(mode, flag));
    let set = outer.image(&outer_basis_map(params));
    let exactness = match mode {
        DetectionMode::Weak => Exactness::Equals,
        DetectionMode::Regular if set.is_full() || (input_is_weak_set && !input.is_full()) => Exactness::Equals,
        _ => Exactness::Contains,
    };
    Ok(Detected { set, exactness })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusDetected {
    pub regular: Arc,
    pub strong: SlopeSet,
}

/// Detected sets of the `(p, q)` torus knot, viewed as the cable of the
/// unknot, whose longitude `0` maps to `f(0) = r/p`.
pub fn torus_knot_detected(p: i64, q: i64) -> Result<TorusDetected> {
    if p < 2 || q < 2 {
        return Err(Error::InvalidParams(format!("torus knot needs p, q ≥ 2, got ({p}, {q})")));
    }
    let params = bezout(p, q)?;
    let tau = BigRational::new(params.r.into(), params.p.into());
    let rel = cable_interval(&params, true, &tau)?;
    let g = outer_basis_map(&params);
    let regular = rel.t_set().image(&g);
    let strong = rel.t_strict.image(&g);
    let arcs = regular.arcs();
    debug_assert_eq!(arcs.len(), 1);
    Ok(TorusDetected { regular: arcs.into_iter().next().expect("one arc"), strong })
}

/// `2g(K′) − 1 = pq − p − q + 2gq` for the `(p, q)` cable `K′` of a genus `g`
/// knot.
pub fn cable_genus_bound(p: i64, q: i64, g: i64) -> ExtRational {
    ExtRational::integer(p * q - p - q + 2 * g * q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> SlopeSet {
        s.parse().unwrap()
    }

    #[test]
    fn bezout_examples() {
        assert_eq!(bezout(2, 3).unwrap(), CableParams { p: 2, q: 3, r: 1, s: -1 });
        assert_eq!(bezout(1, 2).unwrap(), CableParams { p: 1, q: 2, r: 1, s: -1 });
        assert_eq!(bezout(5, 3).unwrap(), CableParams { p: 5, q: 3, r: 2, s: -1 });
        assert!(bezout(2, 4).is_err());
        assert!(bezout(0, 3).is_err());
        assert!(bezout(3, 1).is_err());
    }

    #[test]
    fn basis_maps() {
        let c = bezout(2, 3).unwrap();
        let f = inner_basis_map(&c);
        assert_eq!(f.apply(&ExtRational::new(2, 3)), ExtRational::Infinity);
        assert_eq!(f.apply(&ExtRational::Infinity), ExtRational::new(1, 3));
        assert_eq!(f.apply(&ExtRational::integer(0)), ExtRational::new(1, 2));
        let g = outer_basis_map(&c);
        assert_eq!(g.apply(&ExtRational::integer(-1)), ExtRational::Infinity);
        assert_eq!(g.apply(&ExtRational::Infinity), ExtRational::integer(6));
        assert_eq!(g.apply(&ExtRational::new(-3, 2)), ExtRational::integer(4));
    }

    #[test]
    fn infinity_rule_examples() {
        assert!(infinity_rule(DetectionMode::Weak, true));
        assert!(!infinity_rule(DetectionMode::Regular, false));
        assert!(infinity_rule(DetectionMode::Strong, true));
    }

    #[test]
    fn pipeline_examples() {
        let d = cable_detected_set(&bezout(5, 2).unwrap(), &set("[-inf,1]"), DetectionMode::Regular, true).unwrap();
        assert_eq!(d.set, set("[-inf,7]"));
        assert_eq!(d.exactness, Exactness::Equals);
        let d = cable_detected_set(&bezout(1, 2).unwrap(), &set("[-inf,1]"), DetectionMode::Regular, true).unwrap();
        assert!(d.set.is_full());
        let d = cable_detected_set(&bezout(3, 4).unwrap(), &SlopeSet::full(), DetectionMode::Regular, false).unwrap();
        assert!(d.set.is_full());
        assert_eq!(d.exactness, Exactness::Equals);
    }

    #[test]
    fn torus_examples() {
        let t = torus_knot_detected(2, 3).unwrap();
        assert_eq!(t.regular.to_set(), set("[-inf,1]"));
        assert_eq!(t.strong, set("(-inf,1)"));
        assert_eq!(torus_knot_detected(3, 5).unwrap().regular.to_string(), "[-inf,7]");
        assert_eq!(torus_knot_detected(2, 5).unwrap().regular.to_set(), set("[-inf,3]"));
        assert!(torus_knot_detected(1, 2).is_err());
    }

    #[test]
    fn genus_examples() {
        assert_eq!(cable_genus_bound(5, 2, 1), ExtRational::integer(7));
        assert_eq!(cable_genus_bound(3, 2, 1), ExtRational::integer(5));
        assert_eq!(cable_genus_bound(2, 3, 0), ExtRational::integer(1));
    }
}
