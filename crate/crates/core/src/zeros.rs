//! Zero counts of a single form, closed-form and exhaustive.

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::canonical::{canonicalize, FormType};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::form::QuadraticForm;

/// `q^k` as an exact integer.
pub fn qpow(q: u32, k: usize) -> BigUint {
    num_traits::pow(BigUint::from(q), k)
}

/// Exact number of zeros of `Q` in `F^n`, from its rank and type:
/// `q^n` for rank 0, `q^{n-1}` for odd rank and
/// `q^{n-1} ± (q-1) q^{n-1-R/2}` for even rank `R` (split `+`, non-split `-`).
pub fn count_zeros_closed(q: &QuadraticForm) -> BigUint {
    let c = canonicalize(q);
    closed_count(q.field().q(), q.n(), c.rank, c.type_tag)
}

pub(crate) fn closed_count(qq: u32, n: usize, rank: usize, ty: FormType) -> BigUint {
    match ty {
        FormType::Zero => qpow(qq, n),
        FormType::OddRank => qpow(qq, n - 1),
        FormType::EvenSplit | FormType::EvenNonSplit => {
            let main = qpow(qq, n - 1);
            let dev = BigUint::from(qq - 1) * qpow(qq, n - 1 - rank / 2);
            if ty == FormType::EvenSplit {
                main + dev
            } else {
                main - dev
            }
        }
    }
}

/// Calls `visit` on every vector of `F^n` in repr-lexicographic order
/// (last coordinate fastest).
pub fn for_each_vector(f: &Field, n: usize, mut visit: impl FnMut(&[Elem])) {
    let mut x = vec![Elem::ZERO; n];
    loop {
        visit(&x);
        if !advance(&mut x, f.q()) {
            return;
        }
    }
}

/// Steps `x` to its lexicographic successor; `false` after the last vector.
pub(crate) fn advance(x: &mut [Elem], q: u32) -> bool {
    for i in (0..x.len()).rev() {
        if x[i].0 + 1 < q {
            x[i].0 += 1;
            return true;
        }
        x[i] = Elem::ZERO;
    }
    false
}

/// Checks `q^n ≤ cap`, returning `q^n`.
pub fn check_cap(what: &'static str, q: u32, n: usize, cap: u64) -> Result<u64> {
    let total = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > cap as u128 {
        return Err(Error::CapExceeded {
            what,
            needed: total,
            cap: cap as u128,
        });
    }
    Ok(total as u64)
}

/// Parallel sum of `count(x)` over `F^n`, split on the first coordinate so
/// the result does not depend on scheduling.
pub fn par_sum_over_vectors(
    f: &Field,
    n: usize,
    count: impl Fn(&[Elem]) -> u64 + Sync,
) -> u64 {
    if n == 0 {
        return count(&[]);
    }
    (0..f.q())
        .into_par_iter()
        .map(|first| {
            let mut total = 0u64;
            let mut x = vec![Elem(first); n];
            for_each_vector(f, n - 1, |rest| {
                x[1..].copy_from_slice(rest);
                total += count(&x);
            });
            total
        })
        .sum()
}

/// Exhaustive zero count over `F^n`, origin included.
pub fn count_zeros_bruteforce(q: &QuadraticForm, cap: u64) -> Result<u64> {
    check_cap("q^n for zero enumeration", q.field().q(), q.n(), cap)?;
    Ok(par_sum_over_vectors(q.field(), q.n(), |x| q.eval(x).is_zero() as u64))
}

/// `|N - q^{n-1}|` as a big integer, for reporting.
pub fn deviation_from_mean(q: &QuadraticForm) -> BigUint {
    let n = count_zeros_closed(q);
    let mean = if q.n() == 0 { BigUint::one() } else { qpow(q.field().q(), q.n() - 1) };
    if n >= mean {
        n - mean
    } else {
        mean - n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(q: u64, n: usize, terms: &[(usize, usize, u32)]) -> QuadraticForm {
        let f = Field::of_order(q).unwrap();
        let t: Vec<_> = terms.iter().map(|&(i, j, c)| (i, j, Elem(c))).collect();
        QuadraticForm::from_terms(&f, n, &t).unwrap()
    }

    #[test]
    fn closed_examples() {
        let q = form(3, 2, &[(0, 1, 1)]);
        assert_eq!(count_zeros_closed(&q), BigUint::from(5u32));
        assert_eq!(count_zeros_bruteforce(&q, 1000).unwrap(), 5);
        let q = form(3, 2, &[(0, 0, 1)]);
        assert_eq!(count_zeros_closed(&q), BigUint::from(3u32));
        let q = form(3, 2, &[(0, 0, 1), (1, 1, 1)]);
        assert_eq!(count_zeros_closed(&q), BigUint::from(1u32));
        assert_eq!(count_zeros_bruteforce(&q, 1000).unwrap(), 1);
        let z = form(7, 3, &[]);
        assert_eq!(count_zeros_closed(&z), BigUint::from(343u32));
        assert!(deviation_from_mean(&z) > BigUint::from(0u32));
    }

    #[test]
    fn cap_is_enforced() {
        let q = form(5, 9, &[(0, 1, 1)]);
        assert!(matches!(count_zeros_bruteforce(&q, 1_000_000), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn vector_order_is_lexicographic() {
        let f = Field::of_order(3).unwrap();
        let mut seen = Vec::new();
        for_each_vector(&f, 2, |x| seen.push((x[0].0, x[1].0)));
        assert_eq!(seen.len(), 9);
        assert_eq!(seen[1], (0, 1));
        assert_eq!(seen[3], (1, 0));
    }
}
