//! The minimization condition and the empirical checks that rely on it.
//!
//! A system is minimized when, for every subspace `X ⊆ F^n` of codimension
//! `w` on which `s ≥ 1` linearly independent pencil forms vanish,
//! `w ≥ sn/2r`. Since `s ≤ r`, a violation needs `2w < n`, so only those
//! codimensions are enumerated.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Caps, Pencil, RankSpectrum};
use crate::bound::{ceil_div, pow_signed, sigma1_terms, ExactRational};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::linalg::Matrix;
use crate::subspace::{for_each_subspace, gaussian_binomial_u128};

/// A subspace violating the minimization condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimizationWitness {
    /// Number of independent pencil forms vanishing on the subspace.
    pub s: usize,
    /// Codimension of the subspace.
    pub w: usize,
    /// Reduced echelon basis of the subspace.
    pub basis: Vec<Vec<Elem>>,
    /// Basis of the `u` with `Σ u_i Q^(i)` vanishing on the subspace.
    pub vanishing: Vec<Vec<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimizationReport {
    pub minimized: bool,
    pub witness: Option<MinimizationWitness>,
    /// Subspaces examined.
    pub subspaces_checked: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankCountRow {
    pub rank: usize,
    pub count: u64,
    /// `(q/(R+1))^{[2rR/n]} (R+1)^r`.
    pub bound: ExactRational,
    /// `q ≥ R + 1`, the range in which the bound is claimed.
    pub applicable: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankCountReport {
    pub rows: Vec<RankCountRow>,
    /// `2(⌈n/2r⌉ - 1)`.
    pub rank_floor: usize,
    pub min_rank: Option<usize>,
    pub floor_holds: bool,
    /// Ranks where an applicable bound fails.
    pub offending: Vec<usize>,
    pub passed: bool,
    pub spectrum: RankSpectrum,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroBoundReport {
    /// Exhaustive count of common zeros, origin included.
    pub zeros: u64,
    /// `q^{n-r}`.
    pub main_term: ExactRational,
    /// `q^{n-r}(1 - Σ_{1≤t≤n/2} q^{-t} N_{2t})` from the measured spectrum.
    pub measured_bound: ExactRational,
    /// `q^{n-r}(1 - Σ_t q^{-t} (q/(2t+1))^{[4rt/n]} (2t+1)^r)`.
    pub formula_bound: ExactRational,
    pub measured_holds: bool,
    pub formula_holds: bool,
    /// `q > n ≥ 4r + 1`.
    pub in_hypothesis: bool,
    pub label: &'static str,
    /// `N / q^{n-r}`.
    pub ratio: ExactRational,
}

pub const IN_HYPOTHESIS: &str = "within hypothesis";
pub const OUT_OF_HYPOTHESIS: &str = "out-of-hypothesis observation";

impl Pencil {
    /// Dimension of the space of `u` whose combination vanishes on `basis`,
    /// with a basis of that space.
    fn vanishing_space(&self, basis: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
        let cols: Vec<Vec<Elem>> = self.forms.iter().map(|f| f.pullback(basis).packed().to_vec()).collect();
        let len = cols[0].len();
        if len == 0 {
            // Zero-dimensional subspace: every form vanishes.
            return (0..self.r())
                .map(|i| (0..self.r()).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }).collect())
                .collect();
        }
        Matrix::from_columns(len, &cols).kernel(&self.field)
    }

    /// Exhaustive check of the minimization condition, returning the first
    /// violating subspace (by codimension, then enumeration order).
    pub fn is_minimized(&self, subspace_cap: u64) -> Result<MinimizationReport> {
        let (n, r) = (self.n, self.r());
        let q = self.field.q() as u64;
        let codims: Vec<usize> = (0..=n).filter(|&w| 2 * w < n).collect();
        let total: u128 = codims.iter().map(|&w| gaussian_binomial_u128(q, n, n - w)).sum();
        if total > subspace_cap as u128 {
            return Err(Error::CapExceeded { what: "subspace enumeration", needed: total, cap: subspace_cap as u128 });
        }
        let mut checked = 0u64;
        for w in codims {
            let found = for_each_subspace(&self.field, n, n - w, |basis| {
                checked += 1;
                let vanishing = self.vanishing_space(basis);
                let s = vanishing.len();
                if s >= 1 && 2 * r * w < s * n {
                    ControlFlow::Break(MinimizationWitness { s, w, basis: basis.to_vec(), vanishing })
                } else {
                    ControlFlow::Continue(())
                }
            });
            if let ControlFlow::Break(witness) = found {
                return Ok(MinimizationReport { minimized: false, witness: Some(witness), subspaces_checked: checked });
            }
        }
        Ok(MinimizationReport { minimized: true, witness: None, subspaces_checked: checked })
    }

    fn require_minimized(&self, caps: &Caps) -> Result<()> {
        if !self.is_minimized(caps.subspaces)?.minimized {
            return Err(Error::Precondition("the pencil is not minimized".into()));
        }
        Ok(())
    }

    /// Checks `N(R) ≤ (q/(R+1))^{[2rR/n]} (R+1)^r` for every `R` with
    /// `q ≥ R + 1`, and that every non-zero combination has rank at least
    /// `2(⌈n/2r⌉ - 1)`. The pencil must be minimized.
    pub fn verify_rank_counts(&self, caps: &Caps) -> Result<RankCountReport> {
        self.require_minimized(caps)?;
        let spectrum = self.rank_spectrum(caps.enumeration)?;
        let (n, r) = (self.n as u64, self.r() as u64);
        let q = self.field.q() as u64;
        let mut rows = Vec::new();
        let mut offending = Vec::new();
        for rank in 0..=self.n {
            let rk = rank as u64;
            let e = (2 * r * rk / n) as i64;
            let bound = pow_signed(q, e) / pow_signed(rk + 1, e) * pow_signed(rk + 1, r as i64);
            let count = spectrum.count(rank);
            let applicable = q > rk;
            let holds = BigRational::from_integer(BigInt::from(count)) <= bound;
            if applicable && !holds {
                offending.push(rank);
            }
            rows.push(RankCountRow { rank, count, bound, applicable, holds });
        }
        let rank_floor = 2 * (ceil_div(n, 2 * r) as usize - 1);
        let min_rank = spectrum.min_rank();
        let floor_holds = min_rank.is_none_or(|m| m >= rank_floor);
        Ok(RankCountReport {
            passed: offending.is_empty() && floor_holds,
            rows,
            rank_floor,
            min_rank,
            floor_holds,
            offending,
            spectrum,
        })
    }

    /// Compares the exhaustive zero count with the lower bound
    /// `N ≥ q^{n-r}(1 - …)`, both with the measured spectrum and with the
    /// closed-form majorant. Outside `q > n ≥ 4r + 1` the result is only an
    /// observation. The pencil must be minimized.
    pub fn verify_zero_bound(&self, caps: &Caps) -> Result<ZeroBoundReport> {
        self.require_minimized(caps)?;
        let zeros = self.count_common_zeros_bruteforce(caps.enumeration)?;
        let spectrum = self.rank_spectrum(caps.enumeration)?;
        let (n, r) = (self.n as u32, self.r() as u32);
        let q = self.field.q() as u64;
        let main_term = pow_signed(q, n as i64 - r as i64);

        let mut measured = BigRational::zero();
        for t in 1..=self.n / 2 {
            let c = spectrum.count(2 * t);
            measured += pow_signed(q, -(t as i64)) * BigRational::from_integer(BigInt::from(c));
        }
        let formula: BigRational = sigma1_terms(r, n).iter().map(|t| t.value(q)).sum();
        let measured_bound = &main_term * (BigRational::one() - measured);
        let formula_bound = &main_term * (BigRational::one() - formula);
        let nz = BigRational::from_integer(BigInt::from(zeros));
        let in_hypothesis = q > n as u64 && n > 4 * r;
        Ok(ZeroBoundReport {
            zeros,
            measured_holds: nz >= measured_bound,
            formula_holds: nz >= formula_bound,
            ratio: &nz / &main_term,
            main_term,
            measured_bound,
            formula_bound,
            in_hypothesis,
            label: if in_hypothesis { IN_HYPOTHESIS } else { OUT_OF_HYPOTHESIS },
        })
    }
}
