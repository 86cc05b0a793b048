//! Sparse multivariate polynomials with integer coefficients.
//!
//! A monomial is the sorted multiset of its variable indices, so `t_0^2 t_3`
//! is `[0, 0, 3]`. Coefficients are `i64`; every operation checks for
//! overflow.

use std::collections::HashMap;

pub type Monomial = Vec<u16>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntPoly {
    terms: HashMap<Monomial, i64>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn one() -> Self {
        let mut p = IntPoly::zero();
        p.terms.insert(Vec::new(), 1);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u16]) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    /// Adds `c · m` in place.
    pub fn add_term(&mut self, m: Monomial, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m).or_insert(0);
        *entry = entry.checked_add(c).expect("coefficient overflow");
        if *entry == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    /// `self += c · var · other`.
    pub fn add_scaled_var_product(&mut self, other: &IntPoly, c: i64, var: u16) {
        for (m, &k) in &other.terms {
            let mut nm = Vec::with_capacity(m.len() + 1);
            let pos = m.partition_point(|&x| x <= var);
            nm.extend_from_slice(&m[..pos]);
            nm.push(var);
            nm.extend_from_slice(&m[pos..]);
            let entry = self.terms.entry(nm).or_insert(0);
            *entry = entry
                .checked_add(k.checked_mul(c).expect("coefficient overflow"))
                .expect("coefficient overflow");
        }
        self.terms.retain(|_, v| *v != 0);
    }

    /// Total degree of the highest monomial, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Vec::len);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Evaluation at integer points, for testing identities.
    pub fn eval_i128(&self, values: &[i128]) -> i128 {
        self.terms
            .iter()
            .map(|(m, &c)| m.iter().fold(c as i128, |acc, &v| acc * values[v as usize]))
            .sum()
    }

    /// Monomials sorted for stable output.
    pub fn sorted_terms(&self) -> Vec<(Monomial, i64)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, &c)| (m.clone(), c)).collect();
        v.sort();
        v
    }
}

/// Determinant of a `k × k` matrix whose entries are `coeff · t_var`
/// (or zero), by Laplace expansion along rows with the minors memoized on
/// their column sets.
pub fn symbolic_det(k: usize, entry: impl Fn(usize, usize) -> Option<(i64, u16)>) -> IntPoly {
    assert!(k <= 16, "symbolic determinant capped at 16 columns");
    let full = (1usize << k) - 1;
    // memo[mask] = determinant of rows (k - |mask|)..k restricted to columns in mask.
    let mut memo: Vec<Option<IntPoly>> = vec![None; 1 << k];
    memo[0] = Some(IntPoly::one());
    for size in 1..=k {
        let row = k - size;
        for mask in (1..=full).filter(|m| m.count_ones() as usize == size) {
            let mut acc = IntPoly::zero();
            let mut sign = 1i64;
            for col in 0..k {
                if mask >> col & 1 == 0 {
                    continue;
                }
                if let Some((c, var)) = entry(row, col) {
                    let sub = memo[mask & !(1 << col)].as_ref().expect("smaller masks first");
                    if !sub.is_zero() {
                        acc.add_scaled_var_product(sub, sign * c, var);
                    }
                }
                sign = -sign;
            }
            memo[mask] = Some(acc);
        }
        // The previous level is no longer needed.
        for m in (0..=full).filter(|m| m.count_ones() as usize == size - 1) {
            memo[m] = None;
        }
    }
    memo[full].take().expect("full mask computed")
}
