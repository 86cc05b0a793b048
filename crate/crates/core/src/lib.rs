//! Computational toolkit for simultaneous zeros of quadratic forms over
//! p-adic fields.
//!
//! * [`field`]: arithmetic in GF(p^e), including characteristic 2;
//! * [`form`], [`canonical`], [`minors`], [`zeros`]: single quadratic forms
//!   over a finite field (rank, canonical shape, zero counts);
//! * [`pencil`]: systems of forms, their rank spectra, zero counts and the
//!   minimization condition;
//! * [`bound`]: exact evaluation of the admissibility bounds `σ₁ + σ₂ < 1`;
//! * [`hensel`]: lifting non-singular zeros from `F_p` to `Z/p^k`.

pub mod bound;
pub mod canonical;
pub mod error;
pub mod field;
pub mod form;
pub mod hensel;
pub mod io;
pub mod linalg;
pub mod minors;
pub mod pencil;
pub mod poly;
pub mod primes;
pub mod selftest;
pub mod subspace;
pub mod zeros;

pub use canonical::{canonicalize, rank, CanonicalForm, FormType, Tail};
pub use error::{Error, Result};
pub use field::{Elem, Field, FieldElement};
pub use form::{ElementaryTransform, QuadraticForm};
pub use linalg::Matrix;
pub use pencil::{Caps, Pencil, RankSpectrum};

