//! `σ₁ + σ₂` as a Laurent polynomial in `q`, for fast exact searches.
//!
//! Collecting terms by exponent, `σ₁ = Σ a_e q^e` and
//! `σ₂ = (q-1)^{-1} Σ b_e q^e`. For `q > 1`,
//! `σ₁ + σ₂ < 1  ⇔  (q-1)(Σ a_e q^e - 1) + Σ b_e q^e < 0`, and clearing
//! denominators and the lowest power of `q` turns the left side into an
//! integer polynomial whose sign is found by Horner's rule.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{admissible, int, pow_signed, relative_deviation, sigma1_terms, sigma2_terms, ExactRational};
use crate::error::{Error, Result};
use crate::primes::{is_prime, PrimePowers};

pub const DEFAULT_SEARCH_CEILING: u64 = 1_000_000_000;

/// `(r, n, q)` thresholds claimed in the literature for `n = 4r + 1`.
pub const REFERENCE_THRESHOLDS: [(u32, u32, u64); 3] = [(3, 13, 37), (4, 17, 191), (8, 33, 271_919)];

#[derive(Clone, Debug)]
pub struct SigmaExpansion {
    pub r: u32,
    pub n: u32,
    /// `σ₁ = Σ sigma1[e] q^e`, including `q^{r-n}`.
    pub sigma1: BTreeMap<i64, BigRational>,
    /// `σ₂ = (q-1)^{-1} Σ sigma2[e] q^e`.
    pub sigma2: BTreeMap<i64, BigRational>,
    /// Integer coefficients of the sign polynomial, lowest degree first.
    sign_poly: Vec<BigInt>,
}

impl SigmaExpansion {
    pub fn new(r: u32, n: u32) -> Result<Self> {
        if r == 0 || n == 0 {
            return Err(Error::Precondition(format!("r and n must be positive (r = {r}, n = {n})")));
        }
        let mut s1: BTreeMap<i64, BigRational> = BTreeMap::new();
        *s1.entry(r as i64 - n as i64).or_insert_with(BigRational::zero) += BigRational::one();
        for t in sigma1_terms(r, n) {
            *s1.entry(t.exponent).or_insert_with(BigRational::zero) += t.coefficient;
        }
        let mut s2: BTreeMap<i64, BigRational> = BTreeMap::new();
        for t in sigma2_terms(r, n) {
            *s2.entry(t.exponent).or_insert_with(BigRational::zero) += t.coefficient;
        }

        // (q-1)(σ₁ - 1) + Σ b_e q^e
        let mut c: BTreeMap<i64, BigRational> = BTreeMap::new();
        let mut add = |e: i64, v: BigRational| *c.entry(e).or_insert_with(BigRational::zero) += v;
        for (&e, a) in &s1 {
            add(e + 1, a.clone());
            add(e, -a.clone());
        }
        add(1, -BigRational::one());
        add(0, BigRational::one());
        for (&e, b) in &s2 {
            add(e, b.clone());
        }
        let lo = *c.keys().next().expect("non-empty");
        let hi = *c.keys().last().expect("non-empty");
        let den = c.values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let mut poly = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, v) in c {
            let scaled = v * int(den.clone());
            debug_assert!(scaled.is_integer());
            poly[(e - lo) as usize] = scaled.to_integer();
        }
        Ok(SigmaExpansion { r, n, sigma1: s1, sigma2: s2, sign_poly: poly })
    }

    /// Coefficient of `q^{-1}` in `σ₁`, the value `L` with `σ₁ > L/q`.
    pub fn linear_coefficient(&self) -> BigRational {
        self.sigma1.get(&-1).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn sigma1_at(&self, q: u64) -> BigRational {
        self.sigma1.iter().map(|(&e, a)| a * pow_signed(q, e)).sum()
    }

    pub fn sigma2_at(&self, q: u64) -> BigRational {
        let s: BigRational = self.sigma2.iter().map(|(&e, b)| b * pow_signed(q, e)).sum();
        s / int(q - 1)
    }

    /// Exact `σ₁ + σ₂ < 1`, without building rationals.
    pub fn sum_below_one(&self, q: u64) -> bool {
        assert!(q >= 2);
        let qb = BigInt::from(q);
        let v = self.sign_poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * &qb + c);
        v.is_negative()
    }

    /// The full predicate `q > n ≥ 4r+1` and `σ₁ + σ₂ < 1`.
    pub fn admissible(&self, q: u64) -> bool {
        q > self.n as u64 && self.n as u64 > 4 * self.r as u64 && self.sum_below_one(q)
    }
}

/// Result of [`minimal_admissible_prime_power`].
#[derive(Clone, Debug)]
pub struct MinimalPrimePower {
    pub r: u32,
    pub n: u32,
    pub q0: u64,
    /// First candidate examined.
    pub start: u64,
    pub linear_coefficient: ExactRational,
    /// Prime powers tested before `q0` was found.
    pub candidates_tested: u64,
    /// Prime powers in `(q0, 2·q0]` that were checked.
    pub window_checked: u64,
    /// Prime powers in that window which failed (expected empty).
    pub window_failures: Vec<u64>,
}

/// The least prime power `q0 > n` with `admissible(r, n, q0)`, starting the
/// scan at `max(n+1, ⌊L⌋)` and then checking every prime power in
/// `(q0, 2·q0]` as well.
pub fn minimal_admissible_prime_power(r: u32, n: u32, ceiling: u64) -> Result<MinimalPrimePower> {
    if r == 0 || (n as u64) < 4 * r as u64 + 1 {
        return Err(Error::Precondition(format!("need r >= 1 and n >= 4r+1 (r = {r}, n = {n})")));
    }
    let exp = SigmaExpansion::new(r, n)?;
    let l = exp.linear_coefficient();
    let floor_l: u64 = l.floor().to_integer().try_into().unwrap_or(u64::MAX);
    let start = (n as u64 + 1).max(floor_l);
    let mut tested = 0u64;
    let mut q0 = None;
    for q in PrimePowers::from(start) {
        if q > ceiling {
            break;
        }
        tested += 1;
        if exp.admissible(q) {
            q0 = Some(q);
            break;
        }
    }
    let q0 = q0.ok_or(Error::CapExceeded {
        what: "prime-power search ceiling",
        needed: ceiling as u128 + 1,
        cap: ceiling as u128,
    })?;
    // Confirm the winner by direct term-by-term summation.
    debug_assert!(admissible(r, n, q0)?.admissible);

    let mut window_checked = 0;
    let mut window_failures = Vec::new();
    for q in PrimePowers::from(q0 + 1).take_while(|&q| q <= 2 * q0) {
        window_checked += 1;
        if !exp.admissible(q) {
            window_failures.push(q);
        }
    }
    Ok(MinimalPrimePower {
        r,
        n,
        q0,
        start,
        linear_coefficient: l,
        candidates_tested: tested,
        window_checked,
        window_failures,
    })
}

/// One row of the threshold comparison table.
#[derive(Clone, Debug)]
pub struct ThresholdRow {
    pub r: u32,
    pub n: u32,
    pub computed: u64,
    pub reference: u64,
    /// `|computed - reference| / reference`.
    pub deviation: ExactRational,
    pub reference_is_prime: bool,
    pub search: MinimalPrimePower,
}

/// Minimal admissible prime powers for `r ∈ {3, 4, 8}`, `n = 4r + 1`, next
/// to the reference thresholds.
pub fn threshold_table(ceiling: u64) -> Result<Vec<ThresholdRow>> {
    REFERENCE_THRESHOLDS
        .iter()
        .map(|&(r, n, reference)| {
            let search = minimal_admissible_prime_power(r, n, ceiling)?;
            Ok(ThresholdRow {
                r,
                n,
                computed: search.q0,
                reference,
                deviation: relative_deviation(&int(search.q0), &int(reference)),
                reference_is_prime: is_prime(reference),
                search,
            })
        })
        .collect()
}
