//! Oracles shared by the integration tests. Nothing here calls the code it
//! is used to check: sums are re-derived from their definitions, counts come
//! from plain enumeration, primality from trial division.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use quadzero::{Elem, Field, QuadraticForm};

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `b^k` for any integer `k`.
pub fn power(b: u64, k: i64) -> BigRational {
    let p = num_traits::pow(BigInt::from(b), k.unsigned_abs() as usize);
    if k >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

fn ceil(a: i64, b: i64) -> i64 {
    (a + b - 1) / b
}

/// `σ₁` straight from its defining sum.
pub fn sigma1_oracle(r: i64, n: i64, q: u64) -> BigRational {
    let mut s = power(q, r - n);
    for t in (ceil(n, 2 * r) - 1)..=(n / 2) {
        let f = 4 * r * t / n;
        s += power(q, -t) * power(q, f) / power((2 * t + 1) as u64, f) * power((2 * t + 1) as u64, r);
    }
    s
}

/// `σ₂` straight from its defining double sum.
pub fn sigma2_oracle(r: i64, n: i64, q: u64) -> BigRational {
    let mut s = BigRational::zero();
    for rho in 2 * (ceil(n, 2 * r) - 1)..n {
        for t in 0..=(n - rho) / 2 {
            let a = 2 * r * rho / n;
            let b = 2 * r * (rho + 2 * t) / n;
            let c = power((rho + 1) as u64, r - a) * power((2 * t + 1) as u64, r - b);
            s += c * power(q, -rho - t + a + b);
        }
    }
    s / rat(q as i64 - 1)
}

/// `σ₂ (q-1)` grouped by the power of `q`.
pub fn sigma2_groups(r: i64, n: i64) -> std::collections::BTreeMap<i64, BigRational> {
    let mut m = std::collections::BTreeMap::new();
    for rho in 2 * (ceil(n, 2 * r) - 1)..n {
        for t in 0..=(n - rho) / 2 {
            let a = 2 * r * rho / n;
            let b = 2 * r * (rho + 2 * t) / n;
            let c = power((rho + 1) as u64, r - a) * power((2 * t + 1) as u64, r - b);
            *m.entry(-rho - t + a + b).or_insert_with(BigRational::zero) += c;
        }
    }
    m
}

/// Coefficient of `q^{-1}` in `σ₁`.
pub fn linear_coefficient_oracle(r: i64, n: i64) -> BigRational {
    let mut s = BigRational::zero();
    for t in (ceil(n, 2 * r) - 1)..=(n / 2) {
        let f = 4 * r * t / n;
        if f - t == -1 {
            s += power((2 * t + 1) as u64, r - f);
        }
    }
    if r - n == -1 {
        s += rat(1);
    }
    s
}

pub fn is_prime_td(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn is_prime_power_td(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// Numeric value of a rational as `f64`, for messages only.
pub fn approx(x: &BigRational) -> f64 {
    let s = 1_000_000_000_000i64;
    let scaled = (x * rat(s)).to_integer();
    scaled.to_string().parse::<f64>().unwrap() / s as f64
}

pub fn abs_rel(a: &BigRational, b: &BigRational) -> BigRational {
    ((a - b) / b).abs()
}

pub fn random_form(f: &Field, n: usize, rng: &mut impl Rng) -> QuadraticForm {
    let mut q = QuadraticForm::zero(f, n);
    for i in 0..n {
        for j in i..n {
            q.set_coeff(i, j, Elem(rng.random_range(0..f.q())));
        }
    }
    q
}

/// A form of rank at most `k`: a random form in `k` variables composed
/// with a random linear map `F^n -> F^k`.
pub fn random_low_rank_form(f: &Field, n: usize, k: usize, rng: &mut impl Rng) -> QuadraticForm {
    let inner = random_form(f, k, rng);
    let l: Vec<Vec<u32>> = (0..k).map(|_| (0..n).map(|_| rng.random_range(0..f.q())).collect()).collect();
    let mut out = QuadraticForm::zero(f, n);
    // S(Lx) = Σ_{a≤b} s_ab (L_a·x)(L_b·x); expand into monomials x_i x_j.
    for a in 0..k {
        for b in a..k {
            let s = inner.coeff(a, b);
            if s.is_zero() {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    let c = f.mul(s, f.mul(Elem(l[a][i]), Elem(l[b][j])));
                    let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
                    out.set_coeff(lo, hi, f.add(out.coeff(lo, hi), c));
                }
            }
        }
    }
    out
}

/// Every vector of `F^n`, first coordinate fastest.
pub fn all_vectors(q: u32, n: usize) -> impl Iterator<Item = Vec<Elem>> {
    let total = (q as u64).pow(n as u32);
    (0..total).map(move |mut idx| {
        (0..n)
            .map(|_| {
                let d = (idx % q as u64) as u32;
                idx /= q as u64;
                Elem(d)
            })
            .collect()
    })
}

/// `Q(x)` evaluated monomial by monomial.
pub fn eval(form: &QuadraticForm, x: &[Elem]) -> Elem {
    let f = form.field();
    let n = form.n();
    let mut s = Elem(0);
    for i in 0..n {
        for j in i..n {
            s = f.add(s, f.mul(form.coeff(i, j), f.mul(x[i], x[j])));
        }
    }
    s
}

pub fn count_zeros_oracle(form: &QuadraticForm) -> u64 {
    all_vectors(form.field().q(), form.n()).filter(|x| eval(form, x).is_zero()).count() as u64
}

/// Rank as `n - dim W` where `W = {v : B(v, ·) = 0, Q(v) = 0}`; `W` is a
/// subspace over a perfect field, so its size is a power of `q`.
pub fn rank_oracle(form: &QuadraticForm) -> usize {
    let f = form.field();
    let n = form.n();
    let q = f.q();
    let polar = |x: &[Elem], y: &[Elem]| {
        let s: Vec<Elem> = x.iter().zip(y).map(|(a, b)| f.add(*a, *b)).collect();
        f.sub(f.sub(eval(form, &s), eval(form, x)), eval(form, y))
    };
    let units: Vec<Vec<Elem>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Elem(1) } else { Elem(0) }).collect()).collect();
    let size = all_vectors(q, n)
        .filter(|v| eval(form, v).is_zero() && units.iter().all(|e| polar(v, e).is_zero()))
        .count() as u64;
    let mut dim = 0;
    let mut s = 1u64;
    while s < size {
        s *= q as u64;
        dim += 1;
    }
    assert_eq!(s, size, "singular radical is not a subspace");
    n - dim
}

/// Decimal floating point: `m · 10^e` with `m` truncated to `DIGITS`
/// significant digits after every operation.
#[derive(Clone, Debug)]
pub struct Float {
    m: BigInt,
    e: i64,
}

pub const FLOAT_DIGITS: u32 = 60;

fn digits(m: &BigInt) -> u32 {
    if m.is_zero() {
        0
    } else {
        m.abs().to_string().len() as u32
    }
}

impl Float {
    pub fn int(v: i64) -> Float {
        Float { m: BigInt::from(v), e: 0 }.normalize()
    }

    fn normalize(mut self) -> Float {
        let d = digits(&self.m);
        if d > FLOAT_DIGITS {
            let cut = d - FLOAT_DIGITS;
            self.m /= num_traits::pow(BigInt::from(10), cut as usize);
            self.e += cut as i64;
        }
        self
    }

    pub fn mul(&self, o: &Float) -> Float {
        Float { m: &self.m * &o.m, e: self.e + o.e }.normalize()
    }

    pub fn div(&self, o: &Float) -> Float {
        let shift = FLOAT_DIGITS + digits(&o.m);
        let m = &self.m * num_traits::pow(BigInt::from(10), shift as usize) / &o.m;
        Float { m, e: self.e - o.e - shift as i64 }.normalize()
    }

    pub fn add(&self, o: &Float) -> Float {
        if self.m.is_zero() {
            return o.clone();
        }
        if o.m.is_zero() {
            return self.clone();
        }
        let e = self.e.min(o.e);
        let up = |x: &Float| &x.m * num_traits::pow(BigInt::from(10), (x.e - e) as usize);
        Float { m: up(self) + up(o), e }.normalize()
    }

    pub fn powi(&self, k: i64) -> Float {
        let mut acc = Float::int(1);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(self);
        }
        if k < 0 {
            Float::int(1).div(&acc)
        } else {
            acc
        }
    }

    /// `|self - x| < 10^-digits · |x|`, decided exactly.
    pub fn agrees_with(&self, x: &BigRational, digits: u32) -> bool {
        let me = BigRational::from_integer(self.m.clone()) * power(10, self.e);
        let tol = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits as usize));
        (me - x).abs() < tol * x.abs()
    }
}

pub fn sigma1_float(r: i64, n: i64, q: u64) -> Float {
    let qf = Float::int(q as i64);
    let mut s = qf.powi(r - n);
    for t in (ceil(n, 2 * r) - 1)..=(n / 2) {
        let f = 4 * r * t / n;
        let m = Float::int(2 * t + 1);
        s = s.add(&qf.powi(-t).mul(&qf.div(&m).powi(f)).mul(&m.powi(r)));
    }
    s
}

pub fn sigma2_float(r: i64, n: i64, q: u64) -> Float {
    let qf = Float::int(q as i64);
    let mut s = Float::int(0);
    for rho in 2 * (ceil(n, 2 * r) - 1)..n {
        for t in 0..=(n - rho) / 2 {
            let a = 2 * r * rho / n;
            let b = 2 * r * (rho + 2 * t) / n;
            let c = Float::int(rho + 1).powi(r - a).mul(&Float::int(2 * t + 1).powi(r - b));
            s = s.add(&c.mul(&qf.powi(-rho - t + a + b)));
        }
    }
    s.div(&Float::int(q as i64 - 1))
}

/// Integer system terms: `(i, j, a_ij)` with `i ≤ j`, 0-based.
pub type Terms = Vec<(usize, usize, i64)>;

pub fn eval_int(terms: &Terms, x: &[BigInt]) -> BigInt {
    terms.iter().map(|&(i, j, a)| BigInt::from(a) * &x[i] * &x[j]).sum()
}

pub fn is_positive(x: &BigRational) -> bool {
    x.is_positive()
}
