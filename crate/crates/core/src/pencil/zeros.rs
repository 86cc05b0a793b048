//! Common zeros of a pencil: exhaustive and identity-based counts, the
//! two-sided bound from the rank spectrum, and non-singular zeros.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Caps, Pencil, RankSpectrum};
use crate::bound::{pow_signed as pow_rat, ExactRational};
use crate::error::Result;
use crate::field::Elem;
use crate::linalg::Matrix;
use crate::zeros::{advance, check_cap, closed_count, for_each_vector, par_sum_over_vectors, qpow};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    /// Summing closed-form counts over the pencil.
    Identity,
    /// Some non-zero combination vanishes, so `F^n` was enumerated instead.
    BruteForceFallback,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonZeroCount {
    /// Number of common zeros, origin included.
    pub count: BigUint,
    pub method: CountMethod,
}

/// `|N - q^{n-r}| ≤ Σ_{1≤t≤n/2} q^{n-r-t} N_{2t}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Count2Bound {
    /// `q^{n-r}`.
    pub main_term: ExactRational,
    pub bound: ExactRational,
    /// Whether only `u = 0` gives the zero form.
    pub hypothesis_holds: bool,
    pub spectrum: RankSpectrum,
}

impl Count2Bound {
    /// Whether `count` lies in `[main - bound, main + bound]`.
    pub fn admits(&self, count: u64) -> bool {
        let d = BigRational::from_integer(BigInt::from(count)) - &self.main_term;
        let d = if d < BigRational::zero() { -d } else { d };
        d <= self.bound
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularZeroReport {
    /// All common zeros, origin included.
    pub total_zeros: u64,
    /// Non-zero common zeros where the gradients have rank `< r`.
    pub singular: u64,
    pub nonsingular: u64,
    /// Singular zeros keyed by the reduced echelon basis (as reprs) of the
    /// `u` with `Σ u_i ∇Q^(i)(x) = 0`; for a one-dimensional space this is
    /// the normalized `u` of the unique singular form.
    pub by_form: BTreeMap<Vec<Vec<u32>>, u64>,
}

impl Pencil {
    fn is_common_zero(&self, x: &[Elem]) -> bool {
        self.forms.iter().all(|f| f.eval(x).is_zero())
    }

    /// Gradient matrix with rows `M^(i) x`.
    fn gradient_matrix(&self, x: &[Elem]) -> Matrix {
        let rows: Vec<Vec<Elem>> = self.forms.iter().map(|f| f.grad(x)).collect();
        Matrix::from_rows(&rows).expect("rows of equal length")
    }

    /// `x ≠ 0`, every form vanishes at `x`, and the gradients are independent.
    pub fn is_nonsingular_zero(&self, x: &[Elem]) -> bool {
        x.len() == self.n
            && x.iter().any(|c| !c.is_zero())
            && self.is_common_zero(x)
            && self.gradient_matrix(x).rank(&self.field) == self.r()
    }

    /// Exhaustive count of common zeros in `F^n`, origin included.
    pub fn count_common_zeros_bruteforce(&self, cap: u64) -> Result<u64> {
        check_cap("q^n for zero enumeration", self.field.q(), self.n, cap)?;
        Ok(par_sum_over_vectors(&self.field, self.n, |x| self.is_common_zero(x) as u64))
    }

    /// Common zeros from `N = q^{n-r} + Σ_{u≠0} (N(u) - q^{n-1}) / (q^{r-1}(q-1))`.
    pub fn count_common_zeros_exact(&self, cap: u64) -> Result<CommonZeroCount> {
        let spec = self.rank_spectrum(cap)?;
        if spec.zero_combination_count > 0 {
            let n = self.count_common_zeros_bruteforce(cap)?;
            return Ok(CommonZeroCount {
                count: BigUint::from(n),
                method: CountMethod::BruteForceFallback,
            });
        }
        let q = self.field.q();
        let (n, r) = (self.n, self.r());
        // Σ over all u of N(u), with N(0) = q^n.
        let mut total = qpow(q, n);
        for (&(rank, ty), &count) in &spec.by_type {
            total += closed_count(q, n, rank, ty) * BigUint::from(count);
        }
        let numerator = total - qpow(q, n + r - 1);
        let denominator = qpow(q, r - 1) * BigUint::from(q - 1);
        debug_assert!((&numerator % &denominator).is_zero());
        Ok(CommonZeroCount {
            count: numerator / denominator,
            method: CountMethod::Identity,
        })
    }

    pub fn count2_bound(&self, cap: u64) -> Result<Count2Bound> {
        let spectrum = self.rank_spectrum(cap)?;
        let q = self.field.q() as u64;
        let base = self.n as i64 - self.r() as i64;
        let mut bound = BigRational::zero();
        for t in 1..=self.n / 2 {
            let c = spectrum.count(2 * t);
            if c > 0 {
                bound += pow_rat(q, base - t as i64) * BigRational::from_integer(BigInt::from(c));
            }
        }
        Ok(Count2Bound {
            main_term: pow_rat(q, base),
            bound,
            hypothesis_holds: spectrum.zero_combination_count == 0,
            spectrum,
        })
    }

    /// A non-singular common zero: the first in lexicographic order when
    /// `q^n ≤ caps.enumeration`, otherwise from `caps.trials` seeded random
    /// samples.
    pub fn find_nonsingular_zero(&self, caps: &Caps) -> Option<Vec<Elem>> {
        let q = self.field.q();
        if check_cap("", q, self.n, caps.enumeration).is_ok() {
            let mut x = vec![Elem::ZERO; self.n];
            while advance(&mut x, q) {
                if self.is_nonsingular_zero(&x) {
                    return Some(x);
                }
            }
            return None;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(caps.seed);
        let mut x = vec![Elem::ZERO; self.n];
        for _ in 0..caps.trials {
            for c in x.iter_mut() {
                *c = Elem(rng.random_range(0..q));
            }
            if self.is_nonsingular_zero(&x) {
                return Some(x);
            }
        }
        None
    }

    /// Classifies every common zero as singular or not.
    pub fn count_singular_zeros(&self, cap: u64) -> Result<SingularZeroReport> {
        let f = &self.field;
        check_cap("q^n for zero enumeration", f.q(), self.n, cap)?;
        let empty = || SingularZeroReport {
            total_zeros: 0,
            singular: 0,
            nonsingular: 0,
            by_form: BTreeMap::new(),
        };
        let visit = |x: &[Elem], acc: &mut SingularZeroReport| {
            if !self.is_common_zero(x) {
                return;
            }
            acc.total_zeros += 1;
            if x.iter().all(|c| c.is_zero()) {
                return;
            }
            let g = self.gradient_matrix(x);
            if g.rank(f) == self.r() {
                acc.nonsingular += 1;
                return;
            }
            acc.singular += 1;
            let kernel = g.transpose().kernel(f);
            let (red, _) = Matrix::from_rows(&kernel).expect("non-empty kernel").rref(f);
            let key: Vec<Vec<u32>> = red.to_rows().iter().map(|row| row.iter().map(|e| e.0).collect()).collect();
            *acc.by_form.entry(key).or_insert(0) += 1;
        };
        if self.n == 0 {
            let mut acc = empty();
            visit(&[], &mut acc);
            return Ok(acc);
        }
        let merged = (0..f.q())
            .into_par_iter()
            .map(|first| {
                let mut acc = empty();
                let mut x = vec![Elem(first); self.n];
                for_each_vector(f, self.n - 1, |rest| {
                    x[1..].copy_from_slice(rest);
                    visit(&x, &mut acc);
                });
                acc
            })
            .reduce(empty, |mut a, b| {
                a.total_zeros += b.total_zeros;
                a.singular += b.singular;
                a.nonsingular += b.nonsingular;
                for (k, v) in b.by_form {
                    *a.by_form.entry(k).or_insert(0) += v;
                }
                a
            });
        Ok(merged)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::pencil;
    use super::super::DEFAULT_ENUMERATION_CAP as CAP;
    use super::*;

    #[test]
    fn bruteforce_examples() {
        assert_eq!(pencil(3, 2, &[&[(0, 1, 1)]]).count_common_zeros_bruteforce(CAP).unwrap(), 5);
        assert_eq!(pencil(3, 2, &[&[(0, 0, 1)], &[(1, 1, 1)]]).count_common_zeros_bruteforce(CAP).unwrap(), 1);
        assert_eq!(pencil(4, 1, &[&[]]).count_common_zeros_bruteforce(CAP).unwrap(), 4);
    }

    #[test]
    fn exact_matches_bruteforce() {
        let p = pencil(3, 2, &[&[(0, 1, 1)]]);
        let c = p.count_common_zeros_exact(CAP).unwrap();
        assert_eq!(c.count, BigUint::from(5u32));
        assert_eq!(c.method, CountMethod::Identity);
        let p = pencil(5, 4, &[&[(0, 1, 1), (2, 2, 2)], &[(3, 3, 1), (0, 2, 3), (1, 1, 4)]]);
        let c = p.count_common_zeros_exact(CAP).unwrap();
        assert_eq!(c.count, BigUint::from(p.count_common_zeros_bruteforce(CAP).unwrap()));
        // A vanishing combination forces the fallback.
        let p = pencil(3, 2, &[&[(0, 1, 1)], &[(0, 1, 2)]]);
        let c = p.count_common_zeros_exact(CAP).unwrap();
        assert_eq!(c.method, CountMethod::BruteForceFallback);
        assert_eq!(c.count, BigUint::from(5u32));
    }

    #[test]
    fn count2_examples() {
        let p = pencil(3, 2, &[&[(0, 1, 1)]]);
        let b = p.count2_bound(CAP).unwrap();
        assert_eq!(b.bound, BigRational::from_integer(2.into()));
        assert_eq!(b.main_term, BigRational::from_integer(3.into()));
        assert!(b.admits(5) && !b.admits(6));
        // Only odd ranks: the bound is zero and N = q^{n-r}.
        let p = pencil(3, 3, &[&[(0, 0, 1)]]);
        let b = p.count2_bound(CAP).unwrap();
        assert!(b.bound.is_zero());
        assert_eq!(p.count_common_zeros_bruteforce(CAP).unwrap(), 9);
    }

    #[test]
    fn nonsingular_zero_examples() {
        let caps = Caps::default();
        let p = pencil(3, 4, &[&[(0, 1, 1), (2, 3, 1)]]);
        assert!(p.is_nonsingular_zero(&[Elem(1), Elem(0), Elem(1), Elem(0)]));
        let x = p.find_nonsingular_zero(&caps).unwrap();
        assert!(p.is_nonsingular_zero(&x));
        assert!(pencil(2, 1, &[&[(0, 0, 1)]]).find_nonsingular_zero(&caps).is_none());
        let p = pencil(3, 4, &[&[(0, 1, 1)], &[(2, 3, 1)]]);
        assert!(p.is_nonsingular_zero(&[Elem(1), Elem(0), Elem(0), Elem(1)]));
        // Random search path.
        let small = Caps { enumeration: 10, trials: 10_000, ..caps };
        let x = p.find_nonsingular_zero(&small).unwrap();
        assert!(p.is_nonsingular_zero(&x));
        assert_eq!(p.find_nonsingular_zero(&small), Some(x));
    }

    #[test]
    fn singular_zero_examples() {
        let p = pencil(3, 4, &[&[(0, 1, 1), (2, 3, 1)]]);
        let s = p.count_singular_zeros(CAP).unwrap();
        assert_eq!(s.singular, 0);
        assert_eq!(s.nonsingular + s.singular + 1, s.total_zeros);
        let p = pencil(2, 2, &[&[(0, 0, 1)]]);
        let s = p.count_singular_zeros(CAP).unwrap();
        assert_eq!(s.singular, 1);
        assert_eq!(s.by_form, BTreeMap::from([(vec![vec![1]], 1)]));
        let p = pencil(3, 2, &[&[(0, 1, 1)]]);
        let s = p.count_singular_zeros(CAP).unwrap();
        assert_eq!((s.total_zeros, s.nonsingular, s.singular), (5, 4, 0));
    }
}
