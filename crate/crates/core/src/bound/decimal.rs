//! Decimal rendering of exact rationals, truncated toward zero.

use num_bigint::{BigUint, Sign};
use num_rational::BigRational;
use num_traits::Zero;

pub const DECIMAL_DIGITS: usize = 30;

fn pow10(k: u32) -> BigUint {
    num_traits::pow(BigUint::from(10u32), k as usize)
}

/// `x` with `digits` significant digits, truncated toward zero. Values in
/// `[1e-6, 1e30)` use positional notation, others `d.ddd…e±k`.
pub fn to_decimal(x: &BigRational, digits: usize) -> String {
    assert!(digits >= 1);
    if x.is_zero() {
        return "0".to_string();
    }
    let negative = x.numer().sign() == Sign::Minus;
    let a = x.numer().magnitude().clone();
    let b = x.denom().magnitude().clone();

    // k = floor(log10(a / b)).
    let mut k = a.to_string().len() as i64 - b.to_string().len() as i64;
    let ge_pow10 = |k: i64| -> bool {
        if k >= 0 {
            a >= &b * pow10(k as u32)
        } else {
            &a * pow10((-k) as u32) >= b
        }
    };
    while !ge_pow10(k) {
        k -= 1;
    }
    while ge_pow10(k + 1) {
        k += 1;
    }

    // m = floor(a / b · 10^{digits-1-k}) has exactly `digits` digits.
    let shift = digits as i64 - 1 - k;
    let m = if shift >= 0 {
        (&a * pow10(shift as u32)) / &b
    } else {
        &a / (&b * pow10((-shift) as u32))
    };
    let s = m.to_string();
    debug_assert_eq!(s.len(), digits);

    let body = if (-6..30).contains(&k) {
        if k < 0 {
            format!("0.{}{}", "0".repeat((-k - 1) as usize), s)
        } else if (k as usize) + 1 >= digits {
            format!("{s}{}", "0".repeat(k as usize + 1 - digits))
        } else {
            let (int_part, frac) = s.split_at(k as usize + 1);
            format!("{int_part}.{frac}")
        }
    } else {
        let (lead, rest) = s.split_at(1);
        if rest.is_empty() {
            format!("{lead}e{k}")
        } else {
            format!("{lead}.{rest}e{k}")
        }
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Inverse of [`to_decimal`] for positional strings.
#[cfg(test)]
pub(crate) fn parse_positional(s: &str) -> Option<BigRational> {
    let (neg, s) = s.strip_prefix('-').map_or((false, s), |t| (true, t));
    let (i, f) = s.split_once('.').unwrap_or((s, ""));
    let digits: num_bigint::BigInt = format!("{i}{f}").parse().ok()?;
    let den = num_bigint::BigInt::from(pow10(f.len() as u32));
    let v = BigRational::new(digits, den);
    Some(if neg { -v } else { v })
}
