//! Quadratic forms `Q = Σ_{i≤j} a_ij x_i x_j` over a finite field.
//!
//! Indices are 0-based in the API; the JSON schema in [`crate::io`] is
//! 1-based.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::Matrix;

#[derive(Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    field: Field,
    n: usize,
    /// Packed upper triangle, row-major.
    coeffs: Vec<Elem>,
}

impl QuadraticForm {
    pub fn zero(field: &Field, n: usize) -> Self {
        QuadraticForm {
            field: field.clone(),
            n,
            coeffs: vec![Elem::ZERO; n * (n + 1) / 2],
        }
    }

    /// Builds a form from `(i, j, a_ij)` terms; `(j, i)` is folded onto
    /// `(i, j)` and repeated keys accumulate.
    pub fn from_terms(field: &Field, n: usize, terms: &[(usize, usize, Elem)]) -> Result<Self> {
        let mut q = QuadraticForm::zero(field, n);
        for &(i, j, c) in terms {
            let (a, b) = if i <= j { (i, j) } else { (j, i) };
            if b >= n {
                return Err(Error::Invalid(format!("index ({i}, {j}) out of range for n = {n}")));
            }
            if c.0 >= field.q() {
                return Err(Error::Invalid(format!("coefficient {c} out of range")));
            }
            let cur = q.coeff(a, b);
            q.set_coeff(a, b, field.add(cur, c));
        }
        Ok(q)
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        // Row i starts after i rows of lengths n, n-1, ...
        i * self.n - i * i.saturating_sub(1) / 2 + (j - i)
    }

    /// Coefficient of `x_i x_j`, order-insensitive.
    #[inline]
    pub fn coeff(&self, i: usize, j: usize) -> Elem {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        self.coeffs[self.idx(a, b)]
    }

    #[inline]
    pub fn set_coeff(&mut self, i: usize, j: usize, v: Elem) {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        let k = self.idx(a, b);
        self.coeffs[k] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Non-zero terms `(i, j, a_ij)` with `i ≤ j`, row-major.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, Elem)> + '_ {
        (0..self.n)
            .flat_map(move |i| (i..self.n).map(move |j| (i, j)))
            .filter_map(move |(i, j)| {
                let c = self.coeff(i, j);
                (!c.is_zero()).then_some((i, j, c))
            })
    }

    /// Raw packed coefficients (upper triangle, row-major).
    pub fn packed(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn evaluate(&self, x: &[Elem]) -> Result<Elem> {
        self.check_len(x.len())?;
        Ok(self.eval(x))
    }

    /// Evaluation without the length check.
    #[inline]
    pub fn eval(&self, x: &[Elem]) -> Elem {
        let f = &self.field;
        let mut acc = Elem::ZERO;
        let mut k = 0;
        for i in 0..self.n {
            let xi = x[i];
            if xi.is_zero() {
                k += self.n - i;
                continue;
            }
            let mut row = Elem::ZERO;
            for j in i..self.n {
                let c = self.coeffs[k];
                k += 1;
                if !c.is_zero() && !x[j].is_zero() {
                    row = f.add(row, f.mul(c, x[j]));
                }
            }
            acc = f.add(acc, f.mul(xi, row));
        }
        acc
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len == self.n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: self.n,
                got: len,
            })
        }
    }

    /// The polar form `B(x, y) = Q(x+y) - Q(x) - Q(y) = xᵀ M y`.
    pub fn bilinear(&self, x: &[Elem], y: &[Elem]) -> Elem {
        let f = &self.field;
        let mut acc = Elem::ZERO;
        for i in 0..self.n {
            for j in i..self.n {
                let c = self.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                let t = f.add(f.mul(x[i], y[j]), f.mul(x[j], y[i]));
                acc = f.add(acc, f.mul(c, t));
            }
        }
        acc
    }

    /// Associated symmetric matrix: `M_ij = M_ji = a_ij` off the diagonal and
    /// `M_ii = 2 a_ii`, so the diagonal vanishes in characteristic 2.
    pub fn associated_matrix(&self) -> Matrix {
        let f = &self.field;
        let mut m = Matrix::zeros(self.n, self.n);
        for i in 0..self.n {
            let d = self.coeff(i, i);
            m.set(i, i, f.add(d, d));
            for j in i + 1..self.n {
                let c = self.coeff(i, j);
                m.set(i, j, c);
                m.set(j, i, c);
            }
        }
        m
    }

    /// `M x`, the formal gradient of `Q` at `x` in every characteristic.
    pub fn gradient(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        self.check_len(x.len())?;
        Ok(self.grad(x))
    }

    pub(crate) fn grad(&self, x: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut g = vec![Elem::ZERO; self.n];
        for i in 0..self.n {
            for j in i..self.n {
                let c = self.coeff(i, j);
                if c.is_zero() {
                    continue;
                }
                if i == j {
                    let t = f.mul(c, x[i]);
                    g[i] = f.add(g[i], f.add(t, t));
                } else {
                    g[i] = f.add(g[i], f.mul(c, x[j]));
                    g[j] = f.add(g[j], f.mul(c, x[i]));
                }
            }
        }
        g
    }

    /// `y ↦ Q(Σ y_k b_k)` for the given vectors, without an independence check.
    pub(crate) fn pullback(&self, basis: &[Vec<Elem>]) -> QuadraticForm {
        let f = &self.field;
        let d = basis.len();
        let mut out = QuadraticForm::zero(f, d);
        let grads: Vec<Vec<Elem>> = basis.iter().map(|b| self.grad(b)).collect();
        for k in 0..d {
            out.set_coeff(k, k, self.eval(&basis[k]));
            for l in k + 1..d {
                let v = f.sum(basis[l].iter().zip(&grads[k]).map(|(&a, &b)| f.mul(a, b)));
                out.set_coeff(k, l, v);
            }
        }
        out
    }

    /// Restriction to the span of `basis`: the form `y ↦ Q(Σ y_k b_k)`.
    pub fn restrict(&self, basis: &[Vec<Elem>]) -> Result<QuadraticForm> {
        for b in basis {
            self.check_len(b.len())?;
        }
        if !basis.is_empty() {
            let m = Matrix::from_rows(basis)?;
            if m.rank(&self.field) < basis.len() {
                return Err(Error::DependentBasis);
            }
        }
        Ok(self.pullback(basis))
    }

    /// `x ↦ Q(T x)` for invertible `T`.
    pub fn change_of_variables(&self, t: &Matrix) -> Result<QuadraticForm> {
        if t.rows() != self.n || t.cols() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: t.rows(),
            });
        }
        if t.rank(&self.field) < self.n {
            return Err(Error::Singular);
        }
        let cols: Vec<Vec<Elem>> = (0..self.n).map(|j| t.column(j)).collect();
        Ok(self.pullback(&cols))
    }

    pub fn apply(&self, t: ElementaryTransform) -> Result<QuadraticForm> {
        self.change_of_variables(&t.matrix(&self.field, self.n)?)
    }

    pub fn scale(&self, c: Elem) -> QuadraticForm {
        let f = &self.field;
        QuadraticForm {
            field: f.clone(),
            n: self.n,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn add(&self, other: &QuadraticForm) -> Result<QuadraticForm> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        self.check_len(other.n)?;
        let f = &self.field;
        Ok(QuadraticForm {
            field: f.clone(),
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect(),
        })
    }
}

impl fmt::Debug for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[", self.field)?;
        let mut first = true;
        for (i, j, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == j {
                write!(f, "{c}·x{}^2", i + 1)?;
            } else {
                write!(f, "{c}·x{}x{}", i + 1, j + 1)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, "; n={}]", self.n)
    }
}

/// Elementary changes of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementaryTransform {
    /// Interchange `x_i` and `x_j`.
    Swap(usize, usize),
    /// `x_i ↦ λ x_i` with `λ ≠ 0`.
    Scale(usize, Elem),
    /// `x_i ↦ x_i + λ x_j` with `i ≠ j`.
    Transvection(usize, usize, Elem),
}

impl ElementaryTransform {
    pub fn matrix(&self, f: &Field, n: usize) -> Result<Matrix> {
        let mut t = Matrix::identity(n);
        match *self {
            ElementaryTransform::Swap(i, j) => {
                if i >= n || j >= n {
                    return Err(Error::Invalid("swap index out of range".into()));
                }
                t.set(i, i, Elem::ZERO);
                t.set(j, j, Elem::ZERO);
                t.set(i, j, Elem::ONE);
                t.set(j, i, Elem::ONE);
            }
            ElementaryTransform::Scale(i, l) => {
                if i >= n || l.is_zero() {
                    return Err(Error::Invalid("scale needs an in-range index and λ ≠ 0".into()));
                }
                t.set(i, i, l);
            }
            ElementaryTransform::Transvection(i, j, l) => {
                if i >= n || j >= n || i == j {
                    return Err(Error::Invalid("transvection needs distinct in-range indices".into()));
                }
                t.set(i, j, l);
            }
        }
        if let ElementaryTransform::Scale(_, l) | ElementaryTransform::Transvection(_, _, l) = *self {
            if l.0 >= f.q() {
                return Err(Error::Invalid("scalar out of range".into()));
            }
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Field {
        Field::of_order(q).unwrap()
    }

    fn form(f: &Field, n: usize, terms: &[(usize, usize, u32)]) -> QuadraticForm {
        let t: Vec<_> = terms.iter().map(|&(i, j, c)| (i, j, Elem(c))).collect();
        QuadraticForm::from_terms(f, n, &t).unwrap()
    }

    #[test]
    fn evaluation() {
        let f3 = gf(3);
        let q = form(&f3, 2, &[(0, 1, 1)]);
        assert_eq!(q.evaluate(&[Elem(1), Elem(2)]).unwrap(), Elem(2));
        assert_eq!(q.evaluate(&[Elem(0), Elem(0)]).unwrap(), Elem(0));
        assert!(q.evaluate(&[Elem(1)]).is_err());
        let f2 = gf(2);
        let q = form(&f2, 2, &[(0, 0, 1), (0, 1, 1)]);
        assert_eq!(q.evaluate(&[Elem(1), Elem(1)]).unwrap(), Elem(0));
    }

    #[test]
    fn associated_matrices() {
        let m = form(&gf(3), 1, &[(0, 0, 1)]).associated_matrix();
        assert_eq!(m.get(0, 0), Elem(2));
        let m = form(&gf(2), 1, &[(0, 0, 1)]).associated_matrix();
        assert_eq!(m.get(0, 0), Elem(0));
        let m = form(&gf(5), 2, &[(0, 1, 1)]).associated_matrix();
        assert_eq!(m.to_rows(), vec![vec![Elem(0), Elem(1)], vec![Elem(1), Elem(0)]]);
    }

    #[test]
    fn gradients() {
        let q = form(&gf(3), 2, &[(0, 1, 1)]);
        assert_eq!(q.gradient(&[Elem(1), Elem(0)]).unwrap(), vec![Elem(0), Elem(1)]);
        let f2 = gf(2);
        let q = form(&f2, 1, &[(0, 0, 1)]);
        for x in f2.elements() {
            assert_eq!(q.gradient(&[x]).unwrap(), vec![Elem(0)]);
        }
        let q = form(&gf(5), 1, &[(0, 0, 1)]);
        assert_eq!(q.gradient(&[Elem(2)]).unwrap(), vec![Elem(4)]);
    }

    #[test]
    fn changes_of_variables() {
        let f3 = gf(3);
        let q = form(&f3, 2, &[(0, 1, 1)]);
        assert_eq!(q.change_of_variables(&Matrix::identity(2)).unwrap(), q);
        assert_eq!(q.apply(ElementaryTransform::Swap(0, 1)).unwrap(), q);
        let sq = form(&f3, 2, &[(0, 0, 1)]);
        // x1 -> x1 + x2
        let t = sq.apply(ElementaryTransform::Transvection(0, 1, Elem(1))).unwrap();
        assert_eq!(t, form(&f3, 2, &[(0, 0, 1), (0, 1, 2), (1, 1, 1)]));
        let sing = Matrix::zeros(2, 2);
        assert_eq!(q.change_of_variables(&sing), Err(Error::Singular));
    }

    #[test]
    fn restrictions() {
        let f2 = gf(2);
        let q = form(&f2, 3, &[(0, 1, 1), (2, 2, 1)]);
        let std: Vec<Vec<Elem>> = (0..3)
            .map(|i| (0..3).map(|j| if i == j { Elem(1) } else { Elem(0) }).collect())
            .collect();
        assert_eq!(q.restrict(&std).unwrap(), q);
        let r = q.restrict(&[std[0].clone()]).unwrap();
        assert!(r.is_zero() && r.n() == 1);
        let r = q.restrict(&[std[2].clone()]).unwrap();
        assert_eq!(r, form(&f2, 1, &[(0, 0, 1)]));
        assert_eq!(q.restrict(&[std[0].clone(), std[0].clone()]), Err(Error::DependentBasis));
    }

    #[test]
    fn polar_form_matches_matrix() {
        let f = gf(9);
        let q = form(&f, 3, &[(0, 0, 4), (0, 2, 7), (1, 1, 2), (1, 2, 5)]);
        let m = q.associated_matrix();
        let x = vec![Elem(1), Elem(3), Elem(8)];
        let y = vec![Elem(2), Elem(6), Elem(5)];
        let my = m.mul_vec(&f, &y).unwrap();
        let expect = f.sum(x.iter().zip(&my).map(|(&a, &b)| f.mul(a, b)));
        assert_eq!(q.bilinear(&x, &y), expect);
        let xy: Vec<Elem> = x.iter().zip(&y).map(|(&a, &b)| f.add(a, b)).collect();
        let polar = f.sub(f.sub(q.eval(&xy), q.eval(&x)), q.eval(&y));
        assert_eq!(polar, expect);
    }
}
