//! Rank tests through polynomial conditions on the coefficients.
//!
//! * odd characteristic: `rank Q ≤ R` iff every `(R+1)`-minor of `M` vanishes;
//! * characteristic 2, `R` odd: iff every `R`-minor of `M` vanishes;
//! * characteristic 2, `R` even: iff every `m_{I,J}` with `#I = #J = R+1`
//!   vanishes, where `m_{I,J}` is the ordinary minor for `I ≠ J` and the
//!   half-minor (`½·det` of the generic principal submatrix, reduced mod 2)
//!   for `I = J`.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::form::QuadraticForm;
use crate::linalg::{subsets, Matrix};
use crate::poly::{symbolic_det, IntPoly, Monomial};

pub const MAX_HALF_MINOR: usize = 9;

/// Index of the generic coefficient `t_ij` (`i ≤ j < k`).
pub fn t_index(k: usize, i: usize, j: usize) -> u16 {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    (i * k - i * i.saturating_sub(1) / 2 + (j - i)) as u16
}

/// `(i, j)` for a variable index produced by [`t_index`].
pub fn t_pair(k: usize, idx: u16) -> (usize, usize) {
    for i in 0..k {
        for j in i..k {
            if t_index(k, i, j) == idx {
                return (i, j);
            }
        }
    }
    panic!("variable index {idx} out of range for k = {k}")
}

/// The half-minor of odd order `k` as a polynomial over GF(2): a set of
/// monomials in the `t_ij`, each with coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfMinor {
    pub k: usize,
    /// Sorted monomials.
    pub monomials: Vec<Monomial>,
    /// The integer determinant `det U_k` it was derived from.
    pub integer_det: IntPoly,
}

impl HalfMinor {
    /// Value at `t_ij = values(i, j)` in a characteristic-2 field.
    pub fn eval(&self, f: &Field, values: impl Fn(usize, usize) -> Elem) -> Elem {
        let k = self.k;
        let mut table = vec![Elem::ZERO; k * (k + 1) / 2];
        for i in 0..k {
            for j in i..k {
                table[t_index(k, i, j) as usize] = values(i, j);
            }
        }
        let mut acc = Elem::ZERO;
        for m in &self.monomials {
            let mut prod = Elem::ONE;
            for &v in m {
                prod = f.mul(prod, table[v as usize]);
                if prod.is_zero() {
                    break;
                }
            }
            acc = f.add(acc, prod);
        }
        acc
    }

    /// Human-readable rendering with 1-based indices, e.g. `t11*t23^2`.
    pub fn render(&self) -> String {
        let k = self.k;
        self.monomials
            .iter()
            .map(|m| {
                let mut parts: Vec<String> = Vec::new();
                let mut i = 0;
                while i < m.len() {
                    let mut e = 1;
                    while i + e < m.len() && m[i + e] == m[i] {
                        e += 1;
                    }
                    let (a, b) = t_pair(k, m[i]);
                    let base = format!("t{}{}", a + 1, b + 1);
                    parts.push(if e > 1 { format!("{base}^{e}") } else { base });
                    i += e;
                }
                parts.join("*")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn build_half_minor(k: usize) -> HalfMinor {
    let det = symbolic_det(k, |i, j| {
        let v = t_index(k, i, j);
        Some((if i == j { 2 } else { 1 }, v))
    });
    let mut monomials = Vec::new();
    for (m, c) in det.terms() {
        assert!(c % 2 == 0, "odd-order generic determinant must be even");
        if (c / 2) % 2 != 0 {
            monomials.push(m.clone());
        }
    }
    monomials.sort();
    HalfMinor {
        k,
        monomials,
        integer_det: det,
    }
}

/// The memoized half-minor of odd order `k ≤ 9`.
pub fn half_minor_polynomial(k: usize) -> Result<Arc<HalfMinor>> {
    static CACHE: [OnceLock<Arc<HalfMinor>>; 5] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    if k.is_multiple_of(2) || k > MAX_HALF_MINOR {
        return Err(Error::HalfMinorSize(k));
    }
    Ok(CACHE[k / 2].get_or_init(|| Arc::new(build_half_minor(k))).clone())
}

/// Whether `rank(Q) ≤ r`, decided only from minors and half-minors.
pub fn rank_le_via_minors(q: &QuadraticForm, r: usize) -> Result<bool> {
    let n = q.n();
    if r > n {
        return Err(Error::RankOutOfRange { r, n });
    }
    let f = q.field();
    let m = q.associated_matrix();
    let all_minors_vanish = |k: usize, skip_principal: bool| -> bool {
        let sets: Vec<Vec<usize>> = subsets(n, k).collect();
        for i in &sets {
            for j in &sets {
                if skip_principal && i == j {
                    continue;
                }
                if !m.submatrix(i, j).det(f).is_zero() {
                    return false;
                }
            }
        }
        true
    };
    if !f.is_char2() {
        return Ok(r + 1 > n || all_minors_vanish(r + 1, false));
    }
    if r % 2 == 1 {
        return Ok(all_minors_vanish(r, false));
    }
    let k = r + 1;
    if k > n {
        return Ok(true);
    }
    let hm = half_minor_polynomial(k)?;
    let sets: Vec<Vec<usize>> = subsets(n, k).collect();
    for i in &sets {
        for j in &sets {
            let v = if i == j {
                hm.eval(f, |a, b| q.coeff(i[a], i[b]))
            } else {
                m.submatrix(i, j).det(f)
            };
            if !v.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The least `R` with `rank_le_via_minors(Q, R)`.
pub fn rank_via_minors(q: &QuadraticForm) -> usize {
    (0..=q.n())
        .find(|&r| rank_le_via_minors(q, r).expect("r within range"))
        .expect("rank never exceeds n")
}

/// Rank of the associated matrix.
pub fn matrix_rank(q: &QuadraticForm) -> usize {
    q.associated_matrix().rank(q.field())
}

/// Evaluated Rank-Condition forms `m_{I,J}(Q)` for `R` even in
/// characteristic 2, in lexicographic `(I, J)` order.
pub fn rank_condition_values(q: &QuadraticForm, r: usize) -> Result<Vec<Elem>> {
    let f = q.field();
    if !f.is_char2() || r % 2 == 1 {
        return Err(Error::Precondition(
            "rank-condition forms are defined for even R in characteristic 2".into(),
        ));
    }
    let n = q.n();
    let k = r + 1;
    if k > n {
        return Ok(Vec::new());
    }
    let hm = half_minor_polynomial(k)?;
    let m: Matrix = q.associated_matrix();
    let sets: Vec<Vec<usize>> = subsets(n, k).collect();
    let mut out = Vec::with_capacity(sets.len() * sets.len());
    for i in &sets {
        for j in &sets {
            out.push(if i == j {
                hm.eval(f, |a, b| q.coeff(i[a], i[b]))
            } else {
                m.submatrix(i, j).det(f)
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::rank;

    fn form(f: &Field, n: usize, terms: &[(usize, usize, u32)]) -> QuadraticForm {
        let t: Vec<_> = terms.iter().map(|&(i, j, c)| (i, j, Elem(c))).collect();
        QuadraticForm::from_terms(f, n, &t).unwrap()
    }

    #[test]
    fn half_minor_small_orders() {
        assert_eq!(half_minor_polynomial(1).unwrap().render(), "t11");
        let h3 = half_minor_polynomial(3).unwrap();
        let mut got: Vec<&str> = Vec::new();
        let r = h3.render();
        got.extend(r.split(" + "));
        got.sort();
        let mut want = vec!["t11*t23^2", "t12*t13*t23", "t12^2*t33", "t13^2*t22"];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(half_minor_polynomial(2), Err(Error::HalfMinorSize(2)));
        assert_eq!(half_minor_polynomial(11), Err(Error::HalfMinorSize(11)));
    }

    #[test]
    fn half_minor_order_five_is_a_quintic() {
        let h5 = half_minor_polynomial(5).unwrap();
        assert!(h5.monomials.iter().all(|m| m.len() == 5));
        // Surviving monomials are exactly those where det/2 has an odd coefficient.
        let mut odd = 0;
        for (m, c) in h5.integer_det.terms() {
            assert_eq!(c % 2, 0);
            if (c / 2) % 2 != 0 {
                odd += 1;
                assert!(h5.monomials.binary_search(m).is_ok());
            }
        }
        assert_eq!(odd, h5.monomials.len());
    }

    #[test]
    fn rank_tests_examples() {
        let f2 = Field::new(2, 1).unwrap();
        let q = form(&f2, 3, &[(0, 1, 1)]);
        assert!(rank_le_via_minors(&q, 2).unwrap());
        let q = form(&f2, 3, &[(0, 1, 1), (2, 2, 1)]);
        assert!(!rank_le_via_minors(&q, 2).unwrap());
        assert!(rank_le_via_minors(&q, 3).unwrap());
        assert_eq!(rank_le_via_minors(&q, 4), Err(Error::RankOutOfRange { r: 4, n: 3 }));
        let h3 = half_minor_polynomial(3).unwrap();
        assert_eq!(h3.eval(&f2, |a, b| q.coeff(a, b)), Elem::ONE);
    }

    #[test]
    fn agrees_with_canonical_rank_small() {
        for q in [2u64, 3, 4] {
            let f = Field::of_order(q).unwrap();
            // All forms in two variables.
            for a in f.elements() {
                for b in f.elements() {
                    for c in f.elements() {
                        let form = form(&f, 2, &[(0, 0, a.0), (0, 1, b.0), (1, 1, c.0)]);
                        assert_eq!(rank_via_minors(&form), rank(&form), "{form:?}");
                    }
                }
            }
        }
    }
}
