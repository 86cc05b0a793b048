//! Exact evaluation of the admissibility sums `σ₁`, `σ₂` and the conditions
//! built on them.
//!
//! Every quantity is an exact rational; decimals only appear when a value is
//! rendered. Brackets `[a/b]` are floor divisions of non-negative integers.

mod large_q;
mod decimal;
mod expansion;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use crate::primes::PrimePowers as PrimePowerIterator;
pub use large_q::{large_q_certificate, Bound, LargeQCertificate, E_ENCLOSURE, E_SQUARED_ENCLOSURE};
pub use decimal::{to_decimal, DECIMAL_DIGITS};
pub use expansion::{
    threshold_table, minimal_admissible_prime_power, ThresholdRow, MinimalPrimePower,
    SigmaExpansion, DEFAULT_SEARCH_CEILING, REFERENCE_THRESHOLDS,
};

pub type ExactRational = BigRational;

/// Ascending stream of prime powers `≥ start`.
pub fn prime_power_iterator(start: u64) -> PrimePowerIterator {
    PrimePowerIterator::from(start)
}

pub(crate) fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

pub(crate) fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `base^k` for any integer `k`.
pub(crate) fn pow_signed(base: u64, k: i64) -> BigRational {
    let b = num_traits::pow(BigInt::from(base), k.unsigned_abs() as usize);
    if k >= 0 {
        BigRational::from_integer(b)
    } else {
        BigRational::new(BigInt::one(), b)
    }
}

fn check_params(r: u32, n: u32, q: u64) -> Result<()> {
    if r == 0 || n == 0 {
        return Err(Error::Precondition(format!("r and n must be positive (r = {r}, n = {n})")));
    }
    if q < 2 {
        return Err(Error::Precondition(format!("q must be at least 2 (q = {q})")));
    }
    Ok(())
}

/// One summand `coefficient · q^exponent` of `σ₁`, indexed by `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sigma1Term {
    pub t: u64,
    /// `[4rt/n]`.
    pub bracket: u64,
    /// `(2t+1)^{r - [4rt/n]}`.
    pub coefficient: BigRational,
    /// `[4rt/n] - t`.
    pub exponent: i64,
}

/// One summand `C_{ρ,t} · q^exponent` of the double sum in `σ₂`
/// (before the factor `1/(q-1)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sigma2Term {
    pub rho: u64,
    pub t: u64,
    pub coefficient: BigRational,
    pub exponent: i64,
}

impl Sigma1Term {
    pub fn value(&self, q: u64) -> BigRational {
        &self.coefficient * pow_signed(q, self.exponent)
    }
}

impl Sigma2Term {
    /// Value including the `1/(q-1)` factor.
    pub fn value(&self, q: u64) -> BigRational {
        &self.coefficient * pow_signed(q, self.exponent) / int(q - 1)
    }
}

/// The `t`-summands of `σ₁` for `⌈n/2r⌉ - 1 ≤ t ≤ ⌊n/2⌋`.
pub fn sigma1_terms(r: u32, n: u32) -> Vec<Sigma1Term> {
    let (r, n) = (r as u64, n as u64);
    let lo = ceil_div(n, 2 * r) - 1;
    (lo..=n / 2)
        .map(|t| {
            let f = 4 * r * t / n;
            Sigma1Term {
                t,
                bracket: f,
                coefficient: pow_signed(2 * t + 1, r as i64 - f as i64),
                exponent: f as i64 - t as i64,
            }
        })
        .collect()
}

/// The `(ρ, t)`-summands of `σ₂`, `ρ` from `2(⌈n/2r⌉ - 1)` to `n - 1` and
/// `0 ≤ t ≤ ⌊(n-ρ)/2⌋`.
pub fn sigma2_terms(r: u32, n: u32) -> Vec<Sigma2Term> {
    let (r, n) = (r as u64, n as u64);
    let lo = 2 * (ceil_div(n, 2 * r) - 1);
    let mut out = Vec::new();
    for rho in lo..n {
        let f1 = 2 * r * rho / n;
        for t in 0..=(n - rho) / 2 {
            let f2 = 2 * r * (rho + 2 * t) / n;
            let c = pow_signed(rho + 1, r as i64 - f1 as i64) * pow_signed(2 * t + 1, r as i64 - f2 as i64);
            out.push(Sigma2Term {
                rho,
                t,
                coefficient: c,
                exponent: f1 as i64 + f2 as i64 - rho as i64 - t as i64,
            });
        }
    }
    out
}

/// `σ₁(r, n, q)`, summed term by term.
pub fn sigma1(r: u32, n: u32, q: u64) -> Result<ExactRational> {
    check_params(r, n, q)?;
    let lead = pow_signed(q, r as i64 - n as i64);
    Ok(sigma1_terms(r, n).iter().fold(lead, |acc, t| acc + t.value(q)))
}

/// `σ₂(r, n, q)`, summed term by term.
pub fn sigma2(r: u32, n: u32, q: u64) -> Result<ExactRational> {
    check_params(r, n, q)?;
    let inner = sigma2_terms(r, n)
        .iter()
        .fold(BigRational::zero(), |acc, t| acc + &t.coefficient * pow_signed(q, t.exponent));
    Ok(inner / int(q - 1))
}

/// `σ₁` for `n = 4r + 1` in closed form:
/// `q^{-3r-1} + q^{-1} Σ_{2≤t≤2r} (2t+1)^{r-t+1}`.
pub fn sigma1_special(r: u32, q: u64) -> Result<ExactRational> {
    check_params(r, 4 * r + 1, q)?;
    let r = r as i64;
    let sum = (2..=2 * r).fold(BigRational::zero(), |acc, t| acc + pow_signed(2 * t as u64 + 1, r - t + 1));
    Ok(pow_signed(q, -3 * r - 1) + sum / int(q))
}

/// `σ₂` for `n = 4r + 1` in closed form, split by parity of `ρ`.
pub fn sigma2_special(r: u32, q: u64) -> Result<ExactRational> {
    check_params(r, 4 * r + 1, q)?;
    let (a, b) = sigma2_special_sums(r);
    Ok((a / int(q) + b / int(q) / int(q)) / int(q - 1))
}

/// The two inner sums of [`sigma2_special`] (coefficients of `q^{-1}` and
/// `q^{-2}` inside the braces).
pub fn sigma2_special_sums(r: u32) -> (ExactRational, ExactRational) {
    let r = r as i64;
    let mut a = BigRational::zero();
    for v in 2..2 * r {
        for t in 0..=2 * r - v {
            a += pow_signed(2 * v as u64 + 2, r - v) * pow_signed(2 * t as u64 + 1, r - t - v);
        }
    }
    let mut b = BigRational::zero();
    for v in 2..=2 * r {
        for t in 0..=2 * r - v {
            b += pow_signed(2 * v as u64 + 1, r - v + 1) * pow_signed(2 * t as u64 + 1, r - t - v + 1);
        }
    }
    (a, b)
}

/// Everything computed by [`admissible`].
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub r: u32,
    pub n: u32,
    pub q: u64,
    pub sigma1: ExactRational,
    pub sigma2: ExactRational,
    pub q_exceeds_n: bool,
    pub n_at_least_4r_plus_1: bool,
    pub sum_below_one: bool,
    pub admissible: bool,
    pub sigma1_terms: Vec<Sigma1Term>,
    pub sigma2_terms: Vec<Sigma2Term>,
}

impl BoundReport {
    pub fn total(&self) -> ExactRational {
        &self.sigma1 + &self.sigma2
    }

    pub fn decimal(x: &ExactRational) -> String {
        to_decimal(x, DECIMAL_DIGITS)
    }
}

/// The exact predicate `q > n ≥ 4r+1` and `σ₁ + σ₂ < 1`, with its
/// ingredients.
pub fn admissible(r: u32, n: u32, q: u64) -> Result<BoundReport> {
    let s1 = sigma1(r, n, q)?;
    let s2 = sigma2(r, n, q)?;
    let sum_below_one = &s1 + &s2 < BigRational::one();
    let q_exceeds_n = q > n as u64;
    let n_ok = n as u64 > 4 * r as u64;
    Ok(BoundReport {
        r,
        n,
        q,
        sigma1: s1,
        sigma2: s2,
        q_exceeds_n,
        n_at_least_4r_plus_1: n_ok,
        sum_below_one,
        admissible: q_exceeds_n && n_ok && sum_below_one,
        sigma1_terms: sigma1_terms(r, n),
        sigma2_terms: sigma2_terms(r, n),
    })
}

/// Outcome of [`general_inequality`].
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralInequality {
    pub r: u32,
    pub q: u64,
    pub lhs: ExactRational,
    pub holds: bool,
    /// Set when `r < 5`, outside the regime the inequality is meant for.
    pub warning: Option<String>,
}

/// `q^{-r} + (r-1)(2r)^{r-1} q^{-1} + (2r)^{2r-2} q^{-1}(q-1)^{-1}
/// + (2r)^{2r} q^{-2}(q-1)^{-1} < 1`, exactly.
pub fn general_inequality(r: u32, q: u64) -> Result<GeneralInequality> {
    check_params(r, 1, q)?;
    let ri = r as i64;
    let two_r = 2 * r as u64;
    let q1 = int(q - 1);
    let lhs = pow_signed(q, -ri)
        + int(r - 1) * pow_signed(two_r, ri - 1) / int(q)
        + pow_signed(two_r, 2 * ri - 2) / int(q) / &q1
        + pow_signed(two_r, 2 * ri) / int(q) / int(q) / &q1;
    let holds = lhs < BigRational::one();
    Ok(GeneralInequality {
        r,
        q,
        holds,
        lhs,
        warning: (r < 5).then(|| format!("r = {r} is below 5; the inequality is only claimed for r >= 5")),
    })
}

/// `|a - b| / b` for positive `b`.
pub fn relative_deviation(a: &ExactRational, b: &ExactRational) -> ExactRational {
    ((a - b) / b).abs()
}
