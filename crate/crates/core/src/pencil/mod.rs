//! Systems `Q^(1), …, Q^(r)` of quadratic forms over one finite field and
//! the pencil of their linear combinations.

mod minimize;
mod zeros;

use std::collections::BTreeMap;

use crate::canonical::{canonicalize, FormType};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::form::QuadraticForm;
use crate::zeros::{check_cap, for_each_vector};

pub use minimize::{ZeroBoundReport, RankCountReport, RankCountRow, MinimizationReport, MinimizationWitness};
pub use zeros::{CommonZeroCount, CountMethod, Count2Bound, SingularZeroReport};

/// Default cap on `q^r` and `q^n` enumerations.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;
/// Default cap on the number of subspaces visited by [`Pencil::is_minimized`].
pub const DEFAULT_SUBSPACE_CAP: u64 = 1_000_000;
/// Default number of random trials for [`Pencil::find_nonsingular_zero`].
pub const DEFAULT_TRIAL_LIMIT: u64 = 1_000_000;

/// Resource limits and the random seed shared by the enumeration routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Bound on `q^r` (pencil enumeration) and `q^n` (vector enumeration).
    pub enumeration: u64,
    pub subspaces: u64,
    pub trials: u64,
    pub seed: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumeration: DEFAULT_ENUMERATION_CAP,
            subspaces: DEFAULT_SUBSPACE_CAP,
            trials: DEFAULT_TRIAL_LIMIT,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    field: Field,
    n: usize,
    forms: Vec<QuadraticForm>,
}

/// Ranks of the non-zero combinations `Σ u_i Q^(i)`, counted as vectors `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankSpectrum {
    pub q: u64,
    pub r: usize,
    pub n: usize,
    /// `R ↦ N(R)`, the number of `u ≠ 0` whose combination has rank `R ≥ 1`.
    pub vector_counts: BTreeMap<usize, u64>,
    /// Number of `u ≠ 0` giving the zero form.
    pub zero_combination_count: u64,
    /// Vector counts refined by form type.
    pub by_type: BTreeMap<(usize, FormType), u64>,
}

impl RankSpectrum {
    /// `N(R)`, zero when absent; `N(0)` is the zero-combination count.
    pub fn count(&self, rank: usize) -> u64 {
        if rank == 0 {
            self.zero_combination_count
        } else {
            self.vector_counts.get(&rank).copied().unwrap_or(0)
        }
    }

    /// Counts of projective points, i.e. `N(R) / (q - 1)`.
    pub fn projective_counts(&self) -> BTreeMap<usize, u64> {
        self.vector_counts.iter().map(|(&r, &c)| (r, c / (self.q - 1))).collect()
    }

    pub fn total(&self) -> u64 {
        self.vector_counts.values().sum::<u64>() + self.zero_combination_count
    }

    /// Smallest rank attained by a non-zero combination.
    pub fn min_rank(&self) -> Option<usize> {
        if self.zero_combination_count > 0 {
            Some(0)
        } else {
            self.vector_counts.keys().next().copied()
        }
    }
}

impl Pencil {
    pub fn new(forms: Vec<QuadraticForm>) -> Result<Self> {
        let first = forms
            .first()
            .ok_or_else(|| Error::Precondition("a pencil needs at least one form".into()))?;
        let field = first.field().clone();
        let n = first.n();
        for f in &forms[1..] {
            if f.field() != &field {
                return Err(Error::FieldMismatch);
            }
            if f.n() != n {
                return Err(Error::LengthMismatch { expected: n, got: f.n() });
            }
        }
        Ok(Pencil { field, n, forms })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[QuadraticForm] {
        &self.forms
    }

    /// `Σ u_i Q^(i)`.
    pub fn combine(&self, u: &[Elem]) -> Result<QuadraticForm> {
        if u.len() != self.r() {
            return Err(Error::LengthMismatch { expected: self.r(), got: u.len() });
        }
        Ok(self.combine_unchecked(u))
    }

    pub(crate) fn combine_unchecked(&self, u: &[Elem]) -> QuadraticForm {
        let f = &self.field;
        let mut out = QuadraticForm::zero(f, self.n);
        for (form, &c) in self.forms.iter().zip(u) {
            if !c.is_zero() {
                out = out.add(&form.scale(c)).expect("same shape");
            }
        }
        out
    }

    /// Calls `visit` on one representative `u` (first non-zero entry 1) of
    /// each projective point of `F^r`, in lexicographic order.
    pub(crate) fn for_each_projective(&self, mut visit: impl FnMut(&[Elem])) {
        let r = self.r();
        let mut u = vec![Elem::ZERO; r];
        for lead in 0..r {
            u.iter_mut().for_each(|x| *x = Elem::ZERO);
            u[lead] = Elem::ONE;
            for_each_vector(&self.field, r - lead - 1, |tail| {
                u[lead + 1..].copy_from_slice(tail);
                visit(&u);
            });
        }
    }

    /// Exact rank spectrum by enumerating projective points of `F^r`.
    pub fn rank_spectrum(&self, cap: u64) -> Result<RankSpectrum> {
        let q = self.field.q();
        check_cap("q^r for pencil enumeration", q, self.r(), cap)?;
        let scale = (q - 1) as u64;
        let mut vector_counts = BTreeMap::new();
        let mut by_type = BTreeMap::new();
        let mut zero_combination_count = 0;
        self.for_each_projective(|u| {
            let c = canonicalize(&self.combine_unchecked(u));
            if c.rank == 0 {
                zero_combination_count += scale;
            } else {
                *vector_counts.entry(c.rank).or_insert(0) += scale;
            }
            *by_type.entry((c.rank, c.type_tag)).or_insert(0) += scale;
        });
        Ok(RankSpectrum {
            q: q as u64,
            r: self.r(),
            n: self.n,
            vector_counts,
            zero_combination_count,
            by_type,
        })
    }

    /// The pencil with forms replaced by `Σ_j g_ij Q^(j)` for each row of `g`.
    pub fn change_pencil_basis(&self, g: &[Vec<Elem>]) -> Result<Pencil> {
        let forms = g.iter().map(|row| self.combine(row)).collect::<Result<Vec<_>>>()?;
        Pencil::new(forms)
    }

    /// Applies `x ↦ T x` to every form.
    pub fn change_of_variables(&self, t: &crate::linalg::Matrix) -> Result<Pencil> {
        let forms = self.forms.iter().map(|f| f.change_of_variables(t)).collect::<Result<Vec<_>>>()?;
        Pencil::new(forms)
    }
}
