//! Lifting a non-singular common zero modulo `p` to a zero modulo `p^k`.
//!
//! Each step gains one `p`-adic digit: with `F(x) ≡ 0 (mod p^m)`, solve
//! `J y ≡ -F(x)/p^m (mod p)` on a fixed set of `r` columns of the Jacobian
//! and replace `x` by `x + p^m y`. The Jacobian modulo `p` never changes
//! along the lift because `x ≡ x₀ (mod p)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::form::QuadraticForm;
use crate::linalg::{subsets, Matrix};
use crate::pencil::Pencil;
use crate::primes::is_prime;

/// A quadratic form with integer coefficients, keyed by `(i, j)` with `i ≤ j`.
pub type IntegerForm = BTreeMap<(usize, usize), BigInt>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerQuadraticSystem {
    pub p: u64,
    pub n: usize,
    pub forms: Vec<IntegerForm>,
}

/// Coordinates in `[0, p^precision)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicVector {
    pub p: u64,
    pub precision: u32,
    pub coords: Vec<BigInt>,
}

impl PadicVector {
    pub fn modulus(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.p), self.precision as usize)
    }

    /// The same vector at a lower precision.
    pub fn truncate(&self, j: u32) -> PadicVector {
        assert!(j <= self.precision);
        let m = num_traits::pow(BigInt::from(self.p), j as usize);
        PadicVector { p: self.p, precision: j, coords: self.coords.iter().map(|c| c.mod_floor(&m)).collect() }
    }
}

/// Full record of a lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftTrace {
    pub result: PadicVector,
    /// Columns of the invertible `r × r` Jacobian block.
    pub columns: Vec<usize>,
    /// Minimum `p`-adic valuation of the residuals after each step, starting
    /// with `x₀`; `None` when every residual is exactly zero. After step `m`
    /// it is at least `m + 1`.
    pub valuations: Vec<Option<u32>>,
}

/// `p`-adic valuation, `None` for zero.
pub fn valuation(x: &BigInt, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let mut x = x.clone();
    while (&x % &p).is_zero() {
        x /= &p;
        v += 1;
    }
    Some(v)
}

fn min_valuation(values: &[BigInt], p: u64) -> Option<u32> {
    values.iter().filter_map(|v| valuation(v, p)).min()
}

impl IntegerQuadraticSystem {
    /// Builds a system from 0-based `(i, j, a_ij)` terms; `(j, i)` is folded
    /// onto `(i, j)` and repeated keys accumulate.
    pub fn new(p: u64, n: usize, forms: Vec<Vec<(usize, usize, BigInt)>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if forms.is_empty() {
            return Err(Error::Precondition("a system needs at least one form".into()));
        }
        let mut out = Vec::with_capacity(forms.len());
        for terms in forms {
            let mut map = IntegerForm::new();
            for (i, j, a) in terms {
                let (i, j) = if i <= j { (i, j) } else { (j, i) };
                if j >= n {
                    return Err(Error::Invalid(format!("index ({}, {}) out of range for n = {n}", i + 1, j + 1)));
                }
                *map.entry((i, j)).or_insert_with(BigInt::zero) += a;
            }
            map.retain(|_, v| !v.is_zero());
            out.push(map);
        }
        Ok(IntegerQuadraticSystem { p, n, forms: out })
    }

    pub fn r(&self) -> usize {
        self.forms.len()
    }

    fn field(&self) -> Result<Field> {
        Field::prime(self.p)
    }

    fn check_len(&self, x: &[BigInt]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: x.len() });
        }
        Ok(())
    }

    pub fn eval(&self, form: usize, x: &[BigInt]) -> BigInt {
        self.forms[form].iter().map(|(&(i, j), a)| a * &x[i] * &x[j]).sum()
    }

    pub fn residuals(&self, x: &[BigInt]) -> Vec<BigInt> {
        (0..self.r()).map(|k| self.eval(k, x)).collect()
    }

    /// `∇Q(x) = M x` with `M_ii = 2a_ii`.
    pub fn gradient(&self, form: usize, x: &[BigInt]) -> Vec<BigInt> {
        let mut g = vec![BigInt::zero(); self.n];
        for (&(i, j), a) in &self.forms[form] {
            if i == j {
                g[i] += a * &x[i] * 2;
            } else {
                g[i] += a * &x[j];
                g[j] += a * &x[i];
            }
        }
        g
    }

    /// Coefficient-wise reduction modulo `p`.
    pub fn reduce_mod_p(&self) -> Result<Pencil> {
        let f = self.field()?;
        let p = BigInt::from(self.p);
        let forms = self
            .forms
            .iter()
            .map(|m| {
                let terms: Vec<(usize, usize, Elem)> = m
                    .iter()
                    .map(|(&(i, j), a)| (i, j, Elem(a.mod_floor(&p).to_u32().expect("p fits in u32"))))
                    .collect();
                QuadraticForm::from_terms(&f, self.n, &terms)
            })
            .collect::<Result<Vec<_>>>()?;
        Pencil::new(forms)
    }

    fn jacobian_mod_p(&self, x: &[BigInt]) -> Matrix {
        let p = BigInt::from(self.p);
        let rows: Vec<Vec<Elem>> = (0..self.r())
            .map(|k| {
                self.gradient(k, x)
                    .iter()
                    .map(|g| Elem(g.mod_floor(&p).to_u32().expect("p fits in u32")))
                    .collect()
            })
            .collect();
        Matrix::from_rows(&rows).expect("rows of equal length")
    }

    /// Every form vanishes at `x` modulo `p` and the Jacobian has rank `r`
    /// modulo `p`.
    pub fn is_nonsingular_zero(&self, x: &[BigInt]) -> Result<bool> {
        self.check_len(x)?;
        let f = self.field()?;
        let p = BigInt::from(self.p);
        if !self.residuals(x).iter().all(|v| v.mod_floor(&p).is_zero()) {
            return Ok(false);
        }
        Ok(self.jacobian_mod_p(x).rank(&f) == self.r())
    }

    /// Lift `x₀` to a zero modulo `p^k`.
    pub fn hensel_lift(&self, x0: &[BigInt], k: u32) -> Result<PadicVector> {
        Ok(self.hensel_lift_traced(x0, k)?.result)
    }

    pub fn hensel_lift_traced(&self, x0: &[BigInt], k: u32) -> Result<LiftTrace> {
        if k == 0 {
            return Err(Error::Precondition("precision must be at least 1".into()));
        }
        if !self.is_nonsingular_zero(x0)? {
            return Err(Error::Precondition("the starting point is not a non-singular zero modulo p".into()));
        }
        let f = self.field()?;
        let p = BigInt::from(self.p);
        let r = self.r();
        let j0 = self.jacobian_mod_p(x0);
        let columns = subsets(self.n, r)
            .find(|cols| !j0.submatrix(&(0..r).collect::<Vec<_>>(), cols).det(&f).is_zero())
            .expect("rank r guarantees an invertible block");
        let block = j0.submatrix(&(0..r).collect::<Vec<_>>(), &columns);
        let block_inv = block.inverse(&f)?;

        let mut x: Vec<BigInt> = x0.iter().map(|c| c.mod_floor(&p)).collect();
        let mut valuations = vec![min_valuation(&self.residuals(&x), self.p)];
        let mut pm = p.clone();
        for m in 1..k {
            // The block is unchanged modulo p.
            let current = self.jacobian_mod_p(&x).submatrix(&(0..r).collect::<Vec<_>>(), &columns);
            assert_eq!(current, block, "Jacobian block changed modulo p");
            let res = self.residuals(&x);
            let rhs: Vec<Elem> = res
                .iter()
                .map(|v| {
                    debug_assert!((v % &pm).is_zero());
                    let c = (v / &pm).mod_floor(&p);
                    f.neg(Elem(c.to_u32().expect("p fits in u32")))
                })
                .collect();
            let y = block_inv.mul_vec(&f, &rhs)?;
            for (&col, yi) in columns.iter().zip(&y) {
                x[col] += &pm * BigInt::from(yi.0);
            }
            pm *= &p;
            let v = min_valuation(&self.residuals(&x), self.p);
            assert!(v.is_none_or(|v| v > m), "residual not divisible by p^{}", m + 1);
            valuations.push(v);
        }
        let modulus = num_traits::pow(p, k as usize);
        let coords = x.iter().map(|c| c.mod_floor(&modulus)).collect();
        Ok(LiftTrace { result: PadicVector { p: self.p, precision: k, coords }, columns, valuations })
    }
}

/// Whether every form vanishes at `v` modulo `p^precision`.
pub fn is_zero_mod_pk(sys: &IntegerQuadraticSystem, v: &PadicVector) -> bool {
    let m = v.modulus();
    sys.residuals(&v.coords).iter().all(|r| r.mod_floor(&m).is_zero())
}

/// Smallest `p`-adic valuation among the residuals at `v`, `None` when all
/// vanish exactly.
pub fn residual_valuation(sys: &IntegerQuadraticSystem, v: &[BigInt]) -> Option<u32> {
    min_valuation(&sys.residuals(v), sys.p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn x2_minus_2() -> IntegerQuadraticSystem {
        IntegerQuadraticSystem::new(7, 2, vec![vec![(0, 0, 1.into()), (1, 1, (-2).into())]]).unwrap()
    }

    #[test]
    fn reduction() {
        let p = x2_minus_2().reduce_mod_p().unwrap();
        assert_eq!(p.forms()[0].coeff(1, 1), Elem(5));
        let s = IntegerQuadraticSystem::new(3, 2, vec![vec![(0, 1, 6.into()), (1, 1, (-9).into())]]).unwrap();
        assert!(s.reduce_mod_p().unwrap().forms()[0].is_zero());
        assert_eq!(IntegerQuadraticSystem::new(8, 1, vec![vec![]]), Err(Error::NotPrime(8)));
    }

    #[test]
    fn nonsingular_checks() {
        let s = x2_minus_2();
        assert!(s.is_nonsingular_zero(&big(&[3, 1])).unwrap());
        assert!(!s.is_nonsingular_zero(&big(&[0, 0])).unwrap());
        let sq = IntegerQuadraticSystem::new(2, 2, vec![vec![(0, 0, 1.into())]]).unwrap();
        assert!(!sq.is_nonsingular_zero(&big(&[0, 1])).unwrap());
    }

    #[test]
    fn lift_examples() {
        let s = x2_minus_2();
        let v = s.hensel_lift(&big(&[3, 1]), 2).unwrap();
        assert_eq!(v.coords, big(&[10, 1]));
        assert_eq!(s.hensel_lift(&big(&[3, 1]), 1).unwrap().coords, big(&[3, 1]));
        let t = s.hensel_lift_traced(&big(&[3, 1]), 10).unwrap();
        assert!(is_zero_mod_pk(&s, &t.result));
        assert!(residual_valuation(&s, &t.result.coords).is_none_or(|v| v >= 10));
        for j in 1..10 {
            assert_eq!(t.result.truncate(j), s.hensel_lift(&big(&[3, 1]), j).unwrap());
        }
        assert!(s.hensel_lift(&big(&[1, 1]), 3).is_err());
    }
}
