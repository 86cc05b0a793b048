//! The exact sums against an independent 60-digit floating-point evaluation, and the
//! exact rationals against the defining sums.

mod common;

use num_traits::Signed;

use common::*;
use quadzero::bound::{admissible, sigma1, sigma2, SigmaExpansion};
use quadzero::primes::PrimePowers;

fn grid() -> Vec<(u32, u32, u64)> {
    let mut g = Vec::new();
    for r in 1..=8u32 {
        for n in (r..=40).step_by(3) {
            for start in [n as u64 + 1, 1_000, 1_000_003, 10_000_000_000] {
                g.push((r, n, PrimePowers::from(start).next().unwrap()));
            }
        }
    }
    g
}

#[test]
fn floating_agreement_to_thirty_digits() {
    for (r, n, q) in grid() {
        let s1 = sigma1(r, n, q).unwrap();
        let s2 = sigma2(r, n, q).unwrap();
        assert!(sigma1_float(r as i64, n as i64, q).agrees_with(&s1, 30), "sigma1({r}, {n}, {q})");
        assert!(sigma2_float(r as i64, n as i64, q).agrees_with(&s2, 30), "sigma2({r}, {n}, {q})");
    }
}

#[test]
fn exact_sums_match_definitions() {
    for (r, n, q) in grid() {
        assert_eq!(sigma1(r, n, q).unwrap(), sigma1_oracle(r as i64, n as i64, q), "sigma1({r}, {n}, {q})");
        assert_eq!(sigma2(r, n, q).unwrap(), sigma2_oracle(r as i64, n as i64, q), "sigma2({r}, {n}, {q})");
    }
}

#[test]
fn horner_sign_matches_rational_comparison() {
    for r in 1..=6u32 {
        let n = 4 * r + 1;
        let e = SigmaExpansion::new(r, n).unwrap();
        for q in PrimePowers::from(n as u64 + 1).take(40) {
            let total = sigma1_oracle(r as i64, n as i64, q) + sigma2_oracle(r as i64, n as i64, q);
            assert_eq!(e.sum_below_one(q), total < rat(1), "r = {r}, q = {q}");
            assert_eq!(admissible(r, n, q).unwrap().admissible, total < rat(1) && q > n as u64);
        }
    }
}

#[test]
fn sum_decreases_along_prime_powers() {
    for (r, n) in [(3u32, 13u32), (4, 17), (5, 21), (2, 9)] {
        let qs: Vec<u64> = PrimePowers::from(n as u64 + 1).take(60).collect();
        let totals: Vec<_> = qs.iter().map(|&q| sigma1_oracle(r as i64, n as i64, q) + sigma2_oracle(r as i64, n as i64, q)).collect();
        assert!(totals.windows(2).all(|w| w[1] < w[0]), "({r}, {n})");
    }
}

#[test]
fn linear_coefficient_limit() {
    // q·σ₁ tends to L; at q = 10^9 the gap is below 10^-6 for r = 3, n = 13.
    let q = 1_000_000_000u64;
    let l = linear_coefficient_oracle(3, 13);
    let gap = (sigma1(3, 13, q).unwrap() * rat(q as i64) - &l).abs();
    assert!(gap < num_rational::BigRational::new(1.into(), 1_000_000.into()));
    assert_eq!(SigmaExpansion::new(3, 13).unwrap().linear_coefficient(), l);
}
