//! Certified upper bound on `σ₁ + σ₂` for `n ≥ r² + 1` through the
//! majorants in `φ = 1 - 4/r`.
//!
//! Every real quantity (`e`, `e²`, fractional powers of `q`) is replaced by a
//! rational enclosure, and each occurrence uses the side that keeps the
//! final value an upper bound.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{int, pow_signed, ExactRational};
use crate::error::{Error, Result};

/// `(lower, upper)` with `2.718281828 < e < 2.718281829`.
pub const E_ENCLOSURE: ((u64, u64), (u64, u64)) = ((2_718_281_828, 1_000_000_000), (2_718_281_829, 1_000_000_000));
/// `(lower, upper)` with `7.389056098 < e² < 7.389056099`.
pub const E_SQUARED_ENCLOSURE: ((u64, u64), (u64, u64)) =
    ((7_389_056_098, 1_000_000_000), (7_389_056_099, 1_000_000_000));

/// Digits of scaling used when bounding fractional powers by integer roots.
const ROOT_SCALE_DIGITS: usize = 30;

fn ratio((a, b): (u64, u64)) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// A named one-sided bound in the certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct Bound {
    pub name: &'static str,
    /// `true` for an upper bound, `false` for a lower bound.
    pub upper: bool,
    pub value: ExactRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LargeQCertificate {
    pub r: u32,
    pub n: u32,
    pub q: u64,
    /// `q^{r-4} ≥ (4r²)^r`, i.e. `q^φ ≥ 4r²`.
    pub gate: bool,
    /// `q > n`, needed for the term-wise estimates.
    pub q_exceeds_n: bool,
    /// Upper bound on `σ₁`, when the gate passes.
    pub sigma1_bound: Option<ExactRational>,
    /// Upper bound on `σ₂`, when the gate passes.
    pub sigma2_bound: Option<ExactRational>,
    /// Upper bound on `C_r = (r/2)e^{-r} + 2e^{-2r}`.
    pub c_r_upper: ExactRational,
    pub steps: Vec<Bound>,
    pub certified: bool,
}

impl LargeQCertificate {
    pub fn total_bound(&self) -> Option<ExactRational> {
        Some(self.sigma1_bound.as_ref()? + self.sigma2_bound.as_ref()?)
    }
}

/// Enclosure of `q^{num/den}` (`num` may be negative) as `(lower, upper)`.
fn power_enclosure(q: u64, num: i64, den: u64) -> (BigRational, BigRational) {
    let scale = num_traits::pow(BigUint::from(10u32), ROOT_SCALE_DIGITS);
    let base = num_traits::pow(BigUint::from(q), num.unsigned_abs() as usize);
    let radicand = base * num_traits::pow(scale.clone(), den as usize);
    let m = radicand.nth_root(den as u32);
    let s = BigInt::from(scale);
    let lo = BigRational::new(BigInt::from(m.clone()), s.clone());
    let hi = BigRational::new(BigInt::from(m + 1u32), s);
    if num >= 0 {
        (lo, hi)
    } else {
        (hi.recip(), lo.recip())
    }
}

/// Certifies `σ₁ + σ₂ < 1` for `r ≥ 5`, `n ≥ r² + 1` without evaluating
/// the sums.
pub fn large_q_certificate(r: u32, n: u32, q: u64) -> Result<LargeQCertificate> {
    if r < 5 || (n as u64) < (r as u64) * (r as u64) + 1 {
        return Err(Error::Precondition(format!("need r >= 5 and n >= r^2 + 1 (r = {r}, n = {n})")));
    }
    if q < 2 {
        return Err(Error::Precondition(format!("q must be at least 2 (q = {q})")));
    }
    let (e_lo, e_hi) = (ratio(E_ENCLOSURE.0), ratio(E_ENCLOSURE.1));
    let e2_hi = ratio(E_SQUARED_ENCLOSURE.1);
    let ri = r as i64;
    let rr = int(num_traits::pow(BigInt::from(r), r as usize));

    // C_r ≤ (r/2) e_lo^{-r} + 2 e2_lo^{-r}
    let e2_lo = ratio(E_SQUARED_ENCLOSURE.0);
    let c_r_upper = int(r) / int(2u32) / num_traits::pow(e_lo.clone(), r as usize)
        + int(2u32) / num_traits::pow(e2_lo, r as usize);

    let gate = num_traits::pow(BigUint::from(q), r as usize - 4)
        >= num_traits::pow(BigUint::from(4 * r as u64 * r as u64), r as usize);
    let q_exceeds_n = q > n as u64;
    let mut steps = vec![Bound { name: "C_r", upper: true, value: c_r_upper.clone() }];
    if !gate {
        return Ok(LargeQCertificate {
            r,
            n,
            q,
            gate,
            q_exceeds_n,
            sigma1_bound: None,
            sigma2_bound: None,
            c_r_upper,
            steps,
            certified: false,
        });
    }

    // Fractional powers q^{k φ} = q^{k (r-4) / r}; halves use denominator 2r.
    let rd = r as u64;
    let phi = ri - 4;
    let (q_phi_lo, _) = power_enclosure(q, phi, rd);
    let (_, q_neg_phi_hi) = power_enclosure(q, -phi, rd);
    let (_, q_neg_phi_half_r1_hi) = power_enclosure(q, -phi * (ri - 1), 2 * rd);
    let (_, q_neg_phi_r1_hi) = power_enclosure(q, -phi * (ri - 1), rd);
    let (_, q_phi_half_hi) = power_enclosure(q, phi, 2 * rd);
    steps.push(Bound { name: "q^phi", upper: false, value: q_phi_lo });
    steps.push(Bound { name: "q^-phi", upper: true, value: q_neg_phi_hi.clone() });
    steps.push(Bound { name: "q^(-phi(r-1)/2)", upper: true, value: q_neg_phi_half_r1_hi.clone() });
    steps.push(Bound { name: "q^(-phi(r-1))", upper: true, value: q_neg_phi_r1_hi.clone() });
    steps.push(Bound { name: "q^(phi/2)", upper: true, value: q_phi_half_hi.clone() });

    // Denominators 1 - q^{-φ}e² and 1 - q^{-φ}e, bounded below.
    let d2 = BigRational::one() - &q_neg_phi_hi * &e2_hi;
    let d1 = BigRational::one() - &q_neg_phi_hi * &e_hi;
    steps.push(Bound { name: "1 - q^-phi e^2", upper: false, value: d2.clone() });
    steps.push(Bound { name: "1 - q^-phi e", upper: false, value: d1.clone() });
    if d2 <= BigRational::zero() || d1 <= BigRational::zero() {
        return Err(Error::Precondition("gate passed but a geometric ratio is not below 1".into()));
    }

    // Tail of the t-sum, shared by both bounds.
    let tail = &q_neg_phi_half_r1_hi * &rr / &d2;
    steps.push(Bound { name: "t-sum tail", upper: true, value: tail.clone() });
    let s1 = pow_signed(q, -ri) + &tail;
    steps.push(Bound { name: "sigma1", upper: true, value: s1.clone() });

    let rho_sum = &q_neg_phi_r1_hi * &rr / &d1;
    steps.push(Bound { name: "rho-sum", upper: true, value: rho_sum.clone() });
    // (r/e)^r with e bounded below.
    let r_over_e = num_traits::pow(int(r) / &e_lo, r as usize);
    let head = int(r) / int(2u32) * &q_phi_half_hi * r_over_e;
    steps.push(Bound { name: "t-sum head", upper: true, value: head.clone() });
    let s2 = rho_sum * (head + &tail) / int(q - 1);
    steps.push(Bound { name: "sigma2", upper: true, value: s2.clone() });

    let total = &s1 + &s2;
    steps.push(Bound { name: "sigma1 + sigma2", upper: true, value: total.clone() });
    let certified = q_exceeds_n && total < BigRational::one();
    Ok(LargeQCertificate {
        r,
        n,
        q,
        gate,
        q_exceeds_n,
        sigma1_bound: Some(s1),
        sigma2_bound: Some(s2),
        c_r_upper,
        steps,
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bound::admissible;
    use crate::primes::next_prime_power;

    #[test]
    fn enclosures_bracket_known_values() {
        let (lo, hi) = power_enclosure(32, 1, 5);
        assert!(lo <= int(2u32) && int(2u32) <= hi);
        let (lo, hi) = power_enclosure(1000, -1, 3);
        let tenth = BigRational::new(1.into(), 10.into());
        assert!(lo <= tenth && tenth <= hi);
        let (lo, hi) = power_enclosure(2, 1, 2);
        assert!(&hi - &lo < BigRational::new(1.into(), num_traits::pow(BigInt::from(10), 29)));
    }

    #[test]
    fn large_q_is_certified_and_admissible() {
        let q = next_prime_power(10_000_000_000);
        let c = large_q_certificate(5, 26, q).unwrap();
        assert!(c.gate && c.certified, "{c:?}");
        assert!(admissible(5, 26, q).unwrap().admissible);
        assert!(c.c_r_upper <= BigRational::one());
    }

    #[test]
    fn small_q_fails_gate() {
        let c = large_q_certificate(5, 26, 100).unwrap();
        assert!(!c.gate && !c.certified);
        assert!(large_q_certificate(4, 26, 100).is_err());
        assert!(large_q_certificate(5, 25, 100).is_err());
    }
}
