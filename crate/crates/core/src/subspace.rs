//! Enumeration of the subspaces of `F^n` through reduced row echelon bases.
//!
//! A `d`-dimensional subspace has exactly one basis in reduced row echelon
//! form. They are visited grouped by pivot set (lexicographic), then by the
//! free entries read row by row (repr-lexicographic, last entry fastest).

use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::field::{Elem, Field};
use crate::linalg::subsets;

/// Number of `d`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(q: u64, n: usize, d: usize) -> BigUint {
    if d > n {
        return BigUint::ZERO;
    }
    let qb = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..d {
        num *= num_traits::pow(qb.clone(), n - i) - 1u32;
        den *= num_traits::pow(qb.clone(), i + 1) - 1u32;
    }
    num / den
}

/// `gaussian_binomial` saturated to `u128`.
pub fn gaussian_binomial_u128(q: u64, n: usize, d: usize) -> u128 {
    gaussian_binomial(q, n, d).to_u128().unwrap_or(u128::MAX)
}

/// Calls `visit` with the row-echelon basis of every `d`-dimensional
/// subspace, stopping early on `ControlFlow::Break`.
pub fn for_each_subspace<B>(
    f: &Field,
    n: usize,
    d: usize,
    mut visit: impl FnMut(&[Vec<Elem>]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if d > n {
        return ControlFlow::Continue(());
    }
    if d == 0 {
        return visit(&[]);
    }
    let q = f.q();
    for pivots in subsets(n, d) {
        // Free positions (row, column) in row-major order.
        let free: Vec<(usize, usize)> = (0..d)
            .flat_map(|i| {
                let piv = pivots.clone();
                (piv[i] + 1..n).filter(move |c| !piv.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let mut basis: Vec<Vec<Elem>> = (0..d)
            .map(|i| {
                let mut row = vec![Elem::ZERO; n];
                row[pivots[i]] = Elem::ONE;
                row
            })
            .collect();
        let mut digits = vec![0u32; free.len()];
        'odometer: loop {
            visit(&basis)?;
            let mut k = free.len();
            loop {
                if k == 0 {
                    break 'odometer;
                }
                k -= 1;
                let (i, c) = free[k];
                if digits[k] + 1 < q {
                    digits[k] += 1;
                    basis[i][c] = Elem(digits[k]);
                    break;
                }
                digits[k] = 0;
                basis[i][c] = Elem::ZERO;
            }
        }
    }
    ControlFlow::Continue(())
}

/// All `d`-dimensional subspaces, collected.
pub fn subspaces(f: &Field, n: usize, d: usize) -> Vec<Vec<Vec<Elem>>> {
    let mut out = Vec::new();
    let _ = for_each_subspace::<()>(f, n, d, |b| {
        out.push(b.to_vec());
        ControlFlow::Continue(())
    });
    out
}
