//! Finite fields GF(p^e) in the power basis of a deterministic modulus.
//!
//! An element is stored as its representation integer `repr ∈ [0, q)`,
//! whose little-endian base-p digits are the coefficients of the element
//! as a polynomial in a root of the modulus. `repr = 0` is zero and
//! `repr = 1` is one, and enumerating `0..q` visits every element once.
//!
//! The modulus is the lexicographically least monic irreducible
//! polynomial of degree `e` (coefficient vector compared from the constant
//! term upward). Fields with `q ≤ 2^16` additionally carry exp/log tables
//! built from the least primitive element; larger fields multiply by
//! polynomial reduction.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::primes::is_prime;

/// Largest supported field cardinality.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;
const LOG_TABLE_LIMIT: u32 = 1 << 16;

/// A raw field element: the representation integer in `[0, q)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct LogTables {
    log: Vec<u32>,
    exp: Vec<u32>,
}

/// Immutable description of GF(p^e).
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    /// Coefficients c_0..c_{e-1} of the monic modulus, constant term first.
    modulus: Vec<u32>,
    tables: Option<LogTables>,
    least_nonsquare: Option<u32>,
    least_trace_one: Option<u32>,
}

/// Cheaply clonable handle to a [`FieldSpec`].
#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.e)
    }
}

fn field_cache() -> &'static Mutex<HashMap<(u32, u32), Field>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Field>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Field {
    /// GF(p^e) with the canonical modulus. Instances are shared per `(p, e)`.
    pub fn new(p: u64, e: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::BadModulus("extension degree must be at least 1".into()));
        }
        let q = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
        if q > MAX_FIELD_SIZE as u128 {
            return Err(Error::FieldTooLarge { p, e });
        }
        let key = (p as u32, e);
        if let Some(f) = field_cache().lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let modulus = least_irreducible(p as u32, e);
        let field = Field::build(p as u32, e, modulus);
        field_cache().lock().unwrap().entry(key).or_insert(field.clone());
        Ok(field)
    }

    /// Prime field GF(p).
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1)
    }

    /// Field of cardinality `q`, which must be a prime power.
    pub fn of_order(q: u64) -> Result<Field> {
        match crate::primes::prime_power_decompose(q) {
            Some((p, e)) => Field::new(p, e),
            None => Err(Error::Invalid(format!("{q} is not a prime power"))),
        }
    }

    /// Builds a field over an arbitrary monic modulus without checking
    /// irreducibility. Only meant for fault-injection tests.
    #[doc(hidden)]
    pub fn with_modulus_unchecked(p: u64, e: u32, modulus: Vec<u32>) -> Result<Field> {
        if modulus.len() != e as usize || modulus.iter().any(|&c| c as u64 >= p) {
            return Err(Error::BadModulus("wrong length or digit out of range".into()));
        }
        Ok(Field::build(p as u32, e, modulus))
    }

    fn build(p: u32, e: u32, modulus: Vec<u32>) -> Field {
        let q = p.pow(e);
        let mut spec = FieldSpec {
            p,
            e,
            q,
            modulus,
            tables: None,
            least_nonsquare: None,
            least_trace_one: None,
        };
        if q <= LOG_TABLE_LIMIT && q > 2 {
            spec.tables = build_tables(&spec);
        }
        let field = Field(Arc::new(spec));
        let nonsq = if p == 2 {
            None
        } else {
            (1..q).find(|&a| !field.is_square(Elem(a)))
        };
        let tr1 = if p == 2 {
            (0..q).find(|&a| field.trace(Elem(a)) == Elem::ONE)
        } else {
            None
        };
        let mut spec = Arc::try_unwrap(field.0).ok().expect("fresh field is uniquely owned");
        spec.least_nonsquare = nonsq;
        spec.least_trace_one = tr1;
        Field(Arc::new(spec))
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }
    #[inline]
    pub fn e(&self) -> u32 {
        self.0.e
    }
    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }
    #[inline]
    pub fn is_char2(&self) -> bool {
        self.0.p == 2
    }

    /// Modulus coefficients, constant term first, leading 1 omitted.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }
    #[inline]
    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Element from a representation integer, if in range.
    pub fn elem(&self, repr: u64) -> Result<Elem> {
        if repr < self.0.q as u64 {
            Ok(Elem(repr as u32))
        } else {
            Err(Error::Invalid(format!("repr {repr} out of range for q = {}", self.0.q)))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// All elements in ascending repr order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.q).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let s = &*self.0;
        if s.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if s.e == 1 {
            let t = a.0 + b.0;
            return Elem(if t >= s.p { t - s.p } else { t });
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            let d = (x % s.p + y % s.p) % s.p;
            out += d * place;
            place *= s.p;
            x /= s.p;
            y /= s.p;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let s = &*self.0;
        if s.p == 2 || a.0 == 0 {
            return a;
        }
        if s.e == 1 {
            return Elem(s.p - a.0);
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            let d = x % s.p;
            out += ((s.p - d) % s.p) * place;
            place *= s.p;
            x /= s.p;
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let s = &*self.0;
        if s.e == 1 {
            return Elem(((a.0 as u64 * b.0 as u64) % s.p as u64) as u32);
        }
        if let Some(t) = &s.tables {
            let l = t.log[a.0 as usize] + t.log[b.0 as usize];
            return Elem(t.exp[l as usize]);
        }
        Elem(poly_mulmod(s, a.0, b.0))
    }

    /// Multiplication by polynomial reduction, bypassing the log tables.
    pub fn mul_by_reduction(&self, a: Elem, b: Elem) -> Elem {
        if self.0.e == 1 {
            return self.mul(a, b);
        }
        Elem(poly_mulmod(&self.0, a.0, b.0))
    }

    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: Elem, mut k: u64) -> Elem {
        if k == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        if let Some(t) = &self.0.tables {
            let order = (self.0.q - 1) as u64;
            let l = (t.log[a.0 as usize] as u64 * (k % order)) % order;
            return Elem(t.exp[l as usize]);
        }
        let (mut base, mut acc) = (a, Elem::ONE);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        if let Some(t) = &self.0.tables {
            let order = self.0.q - 1;
            let l = (order - t.log[a.0 as usize]) % order;
            return Ok(Elem(t.exp[l as usize]));
        }
        Ok(self.pow(a, self.0.q as u64 - 2))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Whether `a` is a square. Always true in characteristic 2.
    pub fn is_square(&self, a: Elem) -> bool {
        if self.is_char2() || a.is_zero() {
            return true;
        }
        self.pow(a, (self.0.q as u64 - 1) / 2) == Elem::ONE
    }

    /// Square root; of the two roots in odd characteristic the one with the
    /// smaller repr is returned.
    pub fn sqrt(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Ok(Elem::ZERO);
        }
        let q = self.0.q as u64;
        if self.is_char2() {
            return Ok(self.pow(a, q / 2));
        }
        if !self.is_square(a) {
            return Err(Error::NonSquare);
        }
        let r = self.tonelli_shanks(a);
        debug_assert_eq!(self.square(r), a);
        let other = self.neg(r);
        Ok(if other < r { other } else { r })
    }

    fn tonelli_shanks(&self, a: Elem) -> Elem {
        let q = self.0.q as u64;
        let mut s = 0;
        let mut odd = q - 1;
        while odd.is_multiple_of(2) {
            odd /= 2;
            s += 1;
        }
        let z = Elem(self.0.least_nonsquare.expect("odd field has a non-square"));
        let mut m = s;
        let mut c = self.pow(z, odd);
        let mut t = self.pow(a, odd);
        let mut r = self.pow(a, odd.div_ceil(2));
        while t != Elem::ONE {
            let mut i = 0;
            let mut t2 = t;
            while t2 != Elem::ONE {
                t2 = self.square(t2);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.square(b);
            }
            m = i;
            c = self.square(b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        r
    }

    /// Absolute trace to the prime subfield: a + a^p + ... + a^{p^{e-1}}.
    pub fn trace(&self, a: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut x = a;
        for _ in 0..self.0.e {
            acc = self.add(acc, x);
            x = self.pow(x, self.0.p as u64);
        }
        acc
    }

    /// Least non-square (odd characteristic only).
    pub fn least_nonsquare(&self) -> Option<Elem> {
        self.0.least_nonsquare.map(Elem)
    }

    /// Least-repr element of absolute trace 1 (characteristic 2 only).
    pub fn least_trace_one(&self) -> Option<Elem> {
        self.0.least_trace_one.map(Elem)
    }

    /// Solves ρ² + ρ = β in characteristic 2, returning the smaller of the
    /// two roots, or `None` when Tr(β) = 1.
    pub fn solve_artin_schreier(&self, beta: Elem) -> Option<Elem> {
        assert!(self.is_char2(), "Artin-Schreier equation needs characteristic 2");
        let e = self.0.e as usize;
        // Columns of the GF(2)-linear map x -> x^2 + x on the bit basis.
        let cols: Vec<u32> = (0..e)
            .map(|i| {
                let b = Elem(1 << i);
                self.add(self.square(b), b).0
            })
            .collect();
        // Row-reduce the augmented system: rows are output bits.
        let mut rows: Vec<(u32, u32)> = (0..e)
            .map(|r| {
                let mut coeffs = 0u32;
                for (c, &col) in cols.iter().enumerate() {
                    if col >> r & 1 == 1 {
                        coeffs |= 1 << c;
                    }
                }
                (coeffs, beta.0 >> r & 1)
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..e {
            let Some(pr) = (row..e).find(|&i| rows[i].0 >> col & 1 == 1) else {
                continue;
            };
            rows.swap(row, pr);
            for i in 0..e {
                if i != row && rows[i].0 >> col & 1 == 1 {
                    rows[i].0 ^= rows[row].0;
                    rows[i].1 ^= rows[row].1;
                }
            }
            pivots.push(col);
            row += 1;
        }
        if rows[row..].iter().any(|r| r.1 == 1) {
            return None;
        }
        let mut x = 0u32;
        for (i, &col) in pivots.iter().enumerate() {
            x |= rows[i].1 << col;
        }
        let root = Elem(x);
        debug_assert_eq!(self.add(self.square(root), root), beta);
        Some(root.min(Elem(x ^ 1)))
    }

    /// Sum of a slice of elements.
    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }

    /// Binds a raw element to this field.
    pub fn element(&self, e: Elem) -> FieldElement {
        FieldElement {
            field: self.clone(),
            repr: e,
        }
    }
}

fn digits(mut x: u32, p: u32, e: usize) -> Vec<u32> {
    let mut d = vec![0; e];
    for slot in d.iter_mut() {
        *slot = x % p;
        x /= p;
    }
    d
}

fn poly_mulmod(s: &FieldSpec, a: u32, b: u32) -> u32 {
    let e = s.e as usize;
    if s.p == 2 {
        let mut prod: u64 = 0;
        for i in 0..e {
            if a >> i & 1 == 1 {
                prod ^= (b as u64) << i;
            }
        }
        let mut full_mod: u64 = 1 << e;
        for (i, &c) in s.modulus.iter().enumerate() {
            full_mod |= (c as u64) << i;
        }
        for k in (e..2 * e).rev() {
            if prod >> k & 1 == 1 {
                prod ^= full_mod << (k - e);
            }
        }
        return prod as u32;
    }
    let p = s.p as u64;
    let da = digits(a, s.p, e);
    let db = digits(b, s.p, e);
    let mut prod = vec![0u64; 2 * e - 1];
    for i in 0..e {
        if da[i] == 0 {
            continue;
        }
        for j in 0..e {
            prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
        }
    }
    for k in (e..2 * e - 1).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for i in 0..e {
            let sub = c * s.modulus[i] as u64 % p;
            prod[k - e + i] = (prod[k - e + i] + p - sub) % p;
        }
    }
    let mut out = 0u32;
    for k in (0..e).rev() {
        out = out * s.p + prod[k] as u32;
    }
    out
}

fn build_tables(s: &FieldSpec) -> Option<LogTables> {
    let q = s.q;
    let order = q - 1;
    // A primitive element shows up early; a corrupted modulus may have none.
    for g in (2..q).take(256) {
        let mut exp = Vec::with_capacity(2 * order as usize);
        let mut x = 1u32;
        let mut ok = true;
        for k in 0..order {
            if k > 0 && x == 1 {
                ok = false;
                break;
            }
            exp.push(x);
            x = poly_mulmod(s, x, g);
        }
        if !ok || x != 1 {
            continue;
        }
        let mut log = vec![0u32; q as usize];
        for (k, &v) in exp.iter().enumerate() {
            log[v as usize] = k as u32;
        }
        // A reducible modulus can revisit elements before closing the cycle.
        if (1..q).any(|v| exp[log[v as usize] as usize] != v) {
            return None;
        }
        let head: Vec<u32> = exp.clone();
        exp.extend(head);
        return Some(LogTables { log, exp });
    }
    None
}

/// Polynomial remainder check: does the monic `divisor` divide monic `poly`?
/// Both are digit vectors constant-first including the leading 1.
fn divides(p: u32, poly: &[u32], divisor: &[u32]) -> bool {
    let mut rem: Vec<u32> = poly.to_vec();
    let dd = divisor.len() - 1;
    for k in (dd..rem.len()).rev() {
        let c = rem[k];
        if c == 0 {
            continue;
        }
        for i in 0..=dd {
            let sub = c * divisor[i] % p;
            rem[k - dd + i] = (rem[k - dd + i] + p - sub) % p;
        }
    }
    rem[..dd].iter().all(|&c| c == 0)
}

/// Whether the monic polynomial with lower coefficients `lower` (constant
/// first) is irreducible over GF(p), by trial division by every monic of
/// degree 1..=deg/2.
pub fn is_irreducible(p: u32, lower: &[u32]) -> bool {
    let e = lower.len();
    let mut poly = lower.to_vec();
    poly.push(1);
    for d in 1..=e / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut div = digits(code as u32, p, d);
            div.push(1);
            if divides(p, &poly, &div) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree `e`, comparing
/// coefficient vectors from the constant term upward.
pub fn least_irreducible(p: u32, e: u32) -> Vec<u32> {
    let e = e as usize;
    let total = (p as u64).pow(e as u32);
    // Code c enumerates vectors so that c_0 is the most significant digit.
    for code in 0..total {
        let mut v = vec![0u32; e];
        let mut x = code;
        for slot in v.iter_mut().rev() {
            *slot = (x % p as u64) as u32;
            x /= p as u64;
        }
        if is_irreducible(p, &v) {
            return v;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// An element bound to its field, with checked binary operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    repr: Elem,
}

impl FieldElement {
    pub fn new(field: &Field, repr: u64) -> Result<Self> {
        Ok(FieldElement {
            repr: field.elem(repr)?,
            field: field.clone(),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn repr(&self) -> Elem {
        self.repr
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.field.element(self.field.add(self.repr, other.repr)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.field.element(self.field.mul(self.repr, other.repr)))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.field.element(self.field.inv(self.repr)?))
    }

    pub fn is_square(&self) -> bool {
        self.field.is_square(self.repr)
    }

    pub fn sqrt(&self) -> Result<Self> {
        Ok(self.field.element(self.field.sqrt(self.repr)?))
    }

    pub fn trace(&self) -> Self {
        self.field.element(self.field.trace(self.repr))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, e: u32) -> Field {
        Field::new(p, e).unwrap()
    }

    #[test]
    fn addition_examples() {
        let f8 = gf(2, 3);
        assert_eq!(f8.add(Elem(3), Elem(5)), Elem(6));
        let f3 = gf(3, 1);
        assert_eq!(f3.add(Elem(2), Elem(2)), Elem(1));
        let f9 = gf(3, 2);
        for a in f9.elements() {
            assert_eq!(f9.add(a, Elem::ZERO), a);
        }
    }

    #[test]
    fn multiplication_examples() {
        let f4 = gf(2, 2);
        assert_eq!(f4.modulus(), &[1, 1]);
        assert_eq!(f4.mul(Elem(2), Elem(2)), Elem(3));
        assert_eq!(gf(5, 1).mul(Elem(3), Elem(4)), Elem(2));
        for a in f4.elements() {
            assert_eq!(f4.mul(a, Elem::ONE), a);
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(gf(5, 1).inv(Elem(2)).unwrap(), Elem(3));
        assert_eq!(gf(2, 2).inv(Elem(2)).unwrap(), Elem(3));
        assert_eq!(gf(7, 1).inv(Elem::ONE).unwrap(), Elem::ONE);
        assert_eq!(gf(7, 1).inv(Elem::ZERO), Err(Error::ZeroInverse));
    }

    #[test]
    fn squares_and_roots() {
        let f7 = gf(7, 1);
        assert!(f7.is_square(Elem(2)));
        assert!(!f7.is_square(Elem(3)));
        assert_eq!(f7.sqrt(Elem(2)).unwrap(), Elem(3));
        assert_eq!(f7.sqrt(Elem(3)), Err(Error::NonSquare));
        assert_eq!(gf(3, 2).sqrt(Elem::ONE).unwrap(), Elem::ONE);
        let f4 = gf(2, 2);
        for a in f4.elements() {
            assert!(f4.is_square(a));
            assert_eq!(f4.sqrt(a).unwrap(), f4.square(a));
        }
    }

    #[test]
    fn trace_examples() {
        assert_eq!(gf(2, 1).trace(Elem::ONE), Elem::ONE);
        assert_eq!(gf(2, 2).trace(Elem(2)), Elem::ONE);
        for e in 1..6 {
            assert_eq!(gf(2, e).trace(Elem::ZERO), Elem::ZERO);
        }
        let f27 = gf(3, 3);
        for a in f27.elements() {
            assert!(f27.trace(a).0 < 3);
        }
    }

    #[test]
    fn enumeration_is_ascending() {
        let v: Vec<u32> = gf(3, 1).elements().map(|e| e.0).collect();
        assert_eq!(v, vec![0, 1, 2]);
        let v: Vec<u32> = gf(2, 2).elements().map(|e| e.0).collect();
        assert_eq!(v, vec![0, 1, 2, 3]);
        assert_eq!(gf(5, 2).elements().count(), 25);
    }

    #[test]
    fn deterministic_modulus() {
        assert_eq!(least_irreducible(2, 3), least_irreducible(2, 3));
        assert_eq!(least_irreducible(3, 2), vec![1, 0]);
        let a = Field::with_modulus_unchecked(2, 4, least_irreducible(2, 4)).unwrap();
        assert_eq!(a, gf(2, 4));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Field::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(Field::new(2, 21), Err(Error::FieldTooLarge { .. })));
        assert!(matches!(Field::new(3, 0), Err(Error::BadModulus(_))));
    }

    #[test]
    fn checked_elements_reject_mismatch() {
        let a = FieldElement::new(&gf(3, 1), 1).unwrap();
        let b = FieldElement::new(&gf(5, 1), 1).unwrap();
        assert_eq!(a.add(&b), Err(Error::FieldMismatch));
        assert_eq!(a.mul(&a).unwrap().repr(), Elem::ONE);
        assert!(FieldElement::new(&gf(3, 1), 3).is_err());
    }

    #[test]
    fn table_and_reduction_agree() {
        for (p, e) in [(2, 4), (3, 3), (5, 2), (2, 8), (7, 2)] {
            let f = gf(p, e);
            for a in f.elements().step_by(3) {
                for b in f.elements().step_by(5) {
                    assert_eq!(f.mul(a, b), f.mul_by_reduction(a, b));
                }
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        let f = gf(2, 20);
        let a = Elem(123_457);
        let ai = f.inv(a).unwrap();
        assert_eq!(f.mul(a, ai), Elem::ONE);
        assert_eq!(f.square(f.sqrt(a).unwrap()), a);
    }

    #[test]
    fn artin_schreier_roots() {
        for e in 1..7 {
            let f = gf(2, e);
            for b in f.elements() {
                let root = f.solve_artin_schreier(b);
                assert_eq!(root.is_some(), f.trace(b) == Elem::ZERO);
                if let Some(r) = root {
                    assert_eq!(f.add(f.square(r), r), b);
                }
            }
        }
    }

    #[test]
    fn square_counts() {
        for (p, e) in [(3, 1), (5, 1), (3, 2), (7, 1), (5, 2)] {
            let f = gf(p, e);
            let nz = f.elements().filter(|&a| !a.is_zero() && f.is_square(a)).count();
            assert_eq!(nz as u32, (f.q() - 1) / 2);
        }
        let f8 = gf(2, 3);
        assert_eq!(f8.elements().filter(|&a| f8.is_square(a)).count(), 8);
    }
}
