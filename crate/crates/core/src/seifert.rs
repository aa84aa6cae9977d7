//! Slope tuples `(J; b; γ₁..γₙ; τ₁..τ_r)` and their normal form.
//!
//! Indices into `taus` are 0-based throughout the library; the CLI converts
//! from the 1-based convention at its boundary.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{fmt_rational, ExtRational};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertTuple {
    pub gammas: Vec<BigRational>,
    pub taus: Vec<BigRational>,
    /// The strict set `J`, as indices into `taus`.
    pub strict: BTreeSet<usize>,
    pub b: BigInt,
}

impl SeifertTuple {
    pub fn new(gammas: Vec<BigRational>, taus: Vec<BigRational>, strict: BTreeSet<usize>, b: BigInt) -> Result<Self> {
        check_gammas(&gammas)?;
        check_strict(&strict, taus.len())?;
        Ok(SeifertTuple { gammas, taus, strict, b })
    }

    pub fn n(&self) -> usize {
        self.gammas.len()
    }

    pub fn r(&self) -> usize {
        self.taus.len()
    }

    pub fn is_normalized(&self) -> bool {
        self.taus.iter().all(|t| !t.is_negative_or_ge_one())
    }

    /// Moves every integer part into `b`, leaving `τ̄ᵢ ∈ [0,1)`.
    pub fn normalized(&self) -> SeifertTuple {
        let (shift, fractional) = normalize_finite(&self.taus);
        SeifertTuple {
            gammas: self.gammas.clone(),
            taus: fractional,
            strict: self.strict.clone(),
            b: &self.b + shift,
        }
    }
}

trait UnitRange {
    fn is_negative_or_ge_one(&self) -> bool;
}

impl UnitRange for BigRational {
    fn is_negative_or_ge_one(&self) -> bool {
        *self < BigRational::zero() || *self >= BigRational::one()
    }
}

pub(crate) fn check_gammas(gammas: &[BigRational]) -> Result<()> {
    for g in gammas {
        if *g <= BigRational::zero() || *g >= BigRational::one() {
            return Err(Error::GammaOutOfRange(fmt_rational(g)));
        }
    }
    Ok(())
}

pub(crate) fn check_strict(strict: &BTreeSet<usize>, r: usize) -> Result<()> {
    match strict.iter().find(|&&j| j >= r) {
        Some(&j) => Err(Error::IndexOutOfRange(j)),
        None => Ok(()),
    }
}

pub fn floor_int(q: &BigRational) -> BigInt {
    q.floor().to_integer()
}

/// `b = −Σ⌊τᵢ⌋` and `τ̄ᵢ = τᵢ − ⌊τᵢ⌋`. Rejects ∞.
pub fn normalize(taus: &[ExtRational]) -> Result<(BigInt, Vec<BigRational>)> {
    let finite: Vec<BigRational> =
        taus.iter().map(|t| t.finite().cloned().ok_or(Error::InfiniteSlope)).collect::<Result<_>>()?;
    Ok(normalize_finite(&finite))
}

pub fn normalize_finite(taus: &[BigRational]) -> (BigInt, Vec<BigRational>) {
    let mut b = BigInt::zero();
    let mut fractional = Vec::with_capacity(taus.len());
    for t in taus {
        let fl = t.floor();
        b -= fl.to_integer();
        fractional.push(t - fl);
    }
    (b, fractional)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub tuple: SeifertTuple,
    /// Number of integral `τ̄` left; all of them sit outside the new `J`.
    pub s: usize,
    /// `index_map[k]` is the original index of reduced entry `k`.
    pub index_map: Vec<usize>,
}

/// Drops integral entries whose index lies in `J` (their circle maps are
/// forced to be the identity). Input must be normalised.
pub fn reduce_integral(tuple: &SeifertTuple) -> Reduced {
    debug_assert!(tuple.is_normalized());
    let mut taus = Vec::new();
    let mut strict = BTreeSet::new();
    let mut index_map = Vec::new();
    let mut s = 0;
    for (j, t) in tuple.taus.iter().enumerate() {
        let integral = t.is_integer();
        let in_j = tuple.strict.contains(&j);
        if integral && in_j {
            continue;
        }
        if integral {
            s += 1;
        }
        if in_j {
            strict.insert(taus.len());
        }
        index_map.push(j);
        taus.push(t.clone());
    }
    Reduced {
        tuple: SeifertTuple { gammas: tuple.gammas.clone(), taus, strict, b: tuple.b.clone() },
        s,
        index_map,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedQuantities {
    pub n: usize,
    pub r1: usize,
    pub s0: usize,
    pub b0: BigInt,
    pub m0: BigInt,
    pub m1: BigInt,
}

/// Quantities attached to a fixed partial tuple `τ_* = (τ₁..τ_{r−1})` with
/// strict set `J ⊆ indices(τ_*)`.
pub fn derived_quantities(gammas: &[BigRational], taus: &[BigRational], strict: &BTreeSet<usize>) -> DerivedQuantities {
    let n = gammas.len();
    let r1 = taus.iter().filter(|t| !t.is_integer()).count();
    let s0 = taus.iter().enumerate().filter(|(j, t)| t.is_integer() && !strict.contains(j)).count();
    let b0: BigInt = -taus.iter().map(floor_int).sum::<BigInt>();
    let m0 = &b0 - BigInt::from(n + r1 + s0) + 1;
    let m1 = &b0 + BigInt::from(s0) - 1;
    DerivedQuantities { n, r1, s0, b0, m0, m1 }
}
