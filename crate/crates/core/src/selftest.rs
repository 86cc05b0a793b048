//! A quick end-to-end check of every component on small seeded corpora.
//!
//! `corrupt_modulus` swaps GF(4)'s modulus for the reducible `x² + x`, which
//! the field-dependent checks must detect.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bound::{
    admissible, large_q_certificate, general_inequality, minimal_admissible_prime_power, sigma1, sigma1_special,
    sigma2, sigma2_special, SigmaExpansion, DEFAULT_SEARCH_CEILING,
};
use crate::canonical::{canonicalize, rank};
use crate::field::{Elem, Field};
use crate::form::{ElementaryTransform, QuadraticForm};
use crate::hensel::{is_zero_mod_pk, IntegerQuadraticSystem};
use crate::minors::{half_minor_polynomial, matrix_rank, rank_le_via_minors, rank_via_minors};
use crate::pencil::{Caps, Pencil};
use crate::primes::{is_prime, PrimePowers};
use crate::zeros::{count_zeros_bruteforce, count_zeros_closed};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SelftestOptions {
    pub seed: u64,
    pub corrupt_modulus: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

type Check = fn(&Ctx) -> Result<String, String>;

struct Ctx {
    seed: u64,
    corrupt: bool,
}

impl Ctx {
    fn field(&self, q: u64) -> Field {
        if self.corrupt && q == 4 {
            Field::with_modulus_unchecked(2, 2, vec![0, 1]).expect("digits in range")
        } else {
            Field::of_order(q).expect("supported order")
        }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

/// A form with independently uniform coefficients.
pub fn random_form(f: &Field, n: usize, rng: &mut impl Rng) -> QuadraticForm {
    let mut q = QuadraticForm::zero(f, n);
    for i in 0..n {
        for j in i..n {
            q.set_coeff(i, j, Elem(rng.random_range(0..f.q())));
        }
    }
    q
}

/// A random form of rank at most `k`, built on `k` random linear forms.
pub fn random_low_rank_form(f: &Field, n: usize, k: usize, rng: &mut impl Rng) -> QuadraticForm {
    let small = random_form(f, k, rng);
    // Q(x) = S(Lx) for a random k×n matrix L, given here by its columns.
    let cols: Vec<Vec<Elem>> = (0..n).map(|_| (0..k).map(|_| Elem(rng.random_range(0..f.q()))).collect()).collect();
    small.pullback(&cols)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn check_field_axioms(ctx: &Ctx) -> Result<String, String> {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 16] {
        let f = ctx.field(q);
        for a in f.elements().skip(1) {
            let inv = f.inv(a).map_err(|e| format!("GF({q}): inverse of {} failed: {e}", a.0))?;
            ensure(f.mul(a, inv) == Elem::ONE, || format!("GF({q}): {} has no inverse", a.0))?;
        }
        let squares = f.elements().filter(|&a| f.is_square(a)).count() as u64;
        let want = if q % 2 == 0 { q } else { q.div_ceil(2) };
        ensure(squares == want, || format!("GF({q}): {squares} squares, expected {want}"))?;
    }
    Ok("inverses and square counts for q <= 16".into())
}

fn check_thresholds(_: &Ctx) -> Result<String, String> {
    let m3 = minimal_admissible_prime_power(3, 13, DEFAULT_SEARCH_CEILING).map_err(|e| e.to_string())?;
    let m4 = minimal_admissible_prime_power(4, 17, DEFAULT_SEARCH_CEILING).map_err(|e| e.to_string())?;
    let m8 = minimal_admissible_prime_power(8, 33, DEFAULT_SEARCH_CEILING).map_err(|e| e.to_string())?;
    ensure(m3.q0 == 37 && m4.q0 == 191, || format!("got {} and {}", m3.q0, m4.q0))?;
    let dev = (m8.q0 as f64 - 271_919.0).abs() / 271_919.0;
    ensure(dev <= 0.005 && is_prime(271_919), || format!("r = 8 gave {}", m8.q0))?;
    Ok(format!("37, 191, {}", m8.q0))
}

fn check_headline(_: &Ctx) -> Result<String, String> {
    for r in 5..=10u32 {
        let q = (2 * r as u64).pow(r);
        ensure(admissible(r, 4 * r + 1, q).map_err(|e| e.to_string())?.admissible, || format!("r = {r}"))?;
    }
    for r in 5..=12u32 {
        let q = (2 * r as u64).pow(r);
        ensure(general_inequality(r, q).map_err(|e| e.to_string())?.holds, || format!("general r = {r}"))?;
    }
    Ok("r = 5..10 and 5..12".into())
}

fn check_specializations(_: &Ctx) -> Result<String, String> {
    for r in 1..=10u32 {
        for q in PrimePowers::from(4 * r as u64 + 2).take(5) {
            let ok = sigma1_special(r, q) == sigma1(r, 4 * r + 1, q) && sigma2_special(r, q) == sigma2(r, 4 * r + 1, q);
            ensure(ok, || format!("mismatch at r = {r}, q = {q}"))?;
        }
    }
    Ok("50 grid points".into())
}

fn check_decimals(_: &Ctx) -> Result<String, String> {
    let e = SigmaExpansion::new(3, 13).map_err(|e| e.to_string())?;
    let within = |x: &BigRational, target: f64| {
        let v = x.numer().to_string().parse::<f64>().unwrap() / x.denom().to_string().parse::<f64>().unwrap();
        (v - target).abs() / target <= 0.015
    };
    let a = e.sigma2.get(&-1).cloned().unwrap_or_default();
    let b = e.sigma2.get(&-2).cloned().unwrap_or_default();
    ensure(within(&a, 14.72) && within(&b, 145.68), || "sigma2 constants off".into())?;
    Ok("sigma2 constants within 1.5%".into())
}

fn check_large_q(_: &Ctx) -> Result<String, String> {
    let q = PrimePowers::from(10_000_000_000).next().expect("infinite stream");
    let c = large_q_certificate(5, 26, q).map_err(|e| e.to_string())?;
    ensure(c.certified, || "not certified".into())?;
    ensure(admissible(5, 26, q).map_err(|e| e.to_string())?.admissible, || "exact check failed".into())?;
    Ok(format!("q = {q}"))
}

fn check_zero_counts(ctx: &Ctx) -> Result<String, String> {
    let mut rng = ctx.rng(8);
    let mut n_checked = 0;
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let f = ctx.field(q);
        for _ in 0..15 {
            let k = rng.random_range(1..=4usize);
            let form = random_form(&f, k, &mut rng);
            let closed = count_zeros_closed(&form);
            let brute = count_zeros_bruteforce(&form, 1_000_000).map_err(|e| e.to_string())?;
            ensure(closed == brute.into(), || format!("GF({q}) {form:?}: {closed} vs {brute}"))?;
            n_checked += 1;
        }
    }
    Ok(format!("{n_checked} forms"))
}

fn check_ranks(ctx: &Ctx) -> Result<String, String> {
    let mut rng = ctx.rng(9);
    for q in [2u64, 3, 4, 5, 8, 9] {
        let f = ctx.field(q);
        for _ in 0..25 {
            let n = rng.random_range(1..=5usize);
            let form = if rng.random_bool(0.5) {
                random_low_rank_form(&f, n, rng.random_range(0..=n), &mut rng)
            } else {
                random_form(&f, n, &mut rng)
            };
            let r = rank(&form);
            ensure(rank_via_minors(&form) == r, || format!("GF({q}) {form:?}"))?;
            let mr = matrix_rank(&form);
            let want = if f.is_char2() { 2 * (r / 2) } else { r };
            ensure(mr == want, || format!("GF({q}) matrix rank {mr} vs rank {r}"))?;
            let c = canonicalize(&form);
            let back = form.change_of_variables(&c.transform).map_err(|e| e.to_string())?;
            ensure(back == c.shape(&f, n), || format!("GF({q}) canonical shape mismatch"))?;
        }
    }
    Ok("150 forms".into())
}

fn check_half_minors(ctx: &Ctx) -> Result<String, String> {
    let h3 = half_minor_polynomial(3).map_err(|e| e.to_string())?;
    let mut terms: Vec<&str> = Vec::new();
    let rendered = h3.render();
    terms.extend(rendered.split(" + "));
    terms.sort();
    ensure(terms == ["t11*t23^2", "t12*t13*t23", "t12^2*t33", "t13^2*t22"], || rendered.clone())?;
    let mut rng = ctx.rng(10);
    for q in [2u64, 4, 8] {
        let f = ctx.field(q);
        for _ in 0..5 {
            let n = rng.random_range(3..=4usize);
            let rr = 2 * rng.random_range(0..=(n - 1) / 2);
            let mut form = random_low_rank_form(&f, n, rr + rng.random_range(0..=1), &mut rng);
            let truth = rank_le_via_minors(&form, rr).map_err(|e| e.to_string())?;
            for _ in 0..20 {
                let i = rng.random_range(0..n);
                let j = (i + rng.random_range(1..n)) % n;
                let lam = Elem(rng.random_range(1..f.q()));
                let t = match rng.random_range(0..3) {
                    0 => ElementaryTransform::Swap(i, j),
                    1 => ElementaryTransform::Scale(i, lam),
                    _ => ElementaryTransform::Transvection(i, j, lam),
                };
                form = form.apply(t).map_err(|e| e.to_string())?;
                ensure(rank_le_via_minors(&form, rr).map_err(|e| e.to_string())? == truth, || {
                    format!("GF({q}): rank condition changed under {t:?}")
                })?;
            }
        }
    }
    Ok("k = 3 polynomial and 300 transformations".into())
}

fn check_pencils(ctx: &Ctx) -> Result<String, String> {
    let mut rng = ctx.rng(11);
    let cap = 1_000_000;
    for _ in 0..40 {
        let q = [2u64, 3, 4, 5][rng.random_range(0..4)];
        let f = ctx.field(q);
        let r = rng.random_range(1..=3usize);
        let n = rng.random_range(1..=4usize);
        let p = Pencil::new((0..r).map(|_| random_form(&f, n, &mut rng)).collect()).map_err(|e| e.to_string())?;
        let brute = p.count_common_zeros_bruteforce(cap).map_err(|e| e.to_string())?;
        let exact = p.count_common_zeros_exact(cap).map_err(|e| e.to_string())?;
        ensure(exact.count == brute.into(), || format!("GF({q}) r={r} n={n}: identity {} vs {brute}", exact.count))?;
        let b = p.count2_bound(cap).map_err(|e| e.to_string())?;
        ensure(!b.hypothesis_holds || b.admits(brute), || format!("GF({q}): counting bound violated"))?;
    }
    Ok("40 pencils".into())
}

fn check_minimization(ctx: &Ctx) -> Result<String, String> {
    let f = ctx.field(2);
    let caps = Caps::default();
    let mut minimized = 0;
    let mut total = 0;
    for bits in 0..64u32 {
        let mut form = QuadraticForm::zero(&f, 3);
        let mut k = 0;
        for i in 0..3 {
            for j in i..3 {
                form.set_coeff(i, j, Elem(bits >> k & 1));
                k += 1;
            }
        }
        let p = Pencil::new(vec![form]).map_err(|e| e.to_string())?;
        total += 1;
        if p.is_minimized(caps.subspaces).map_err(|e| e.to_string())?.minimized {
            minimized += 1;
            let rep = p.verify_rank_counts(&caps).map_err(|e| e.to_string())?;
            ensure(rep.passed, || format!("rank-count check failed for {:?}", p.forms()[0]))?;
        }
    }
    Ok(format!("{minimized} of {total} single forms over GF(2), n = 3"))
}

fn check_hensel(ctx: &Ctx) -> Result<String, String> {
    let sys = IntegerQuadraticSystem::new(7, 2, vec![vec![(0, 0, BigInt::one()), (1, 1, BigInt::from(-2))]])
        .map_err(|e| e.to_string())?;
    let v = sys.hensel_lift(&[BigInt::from(3), BigInt::one()], 10).map_err(|e| e.to_string())?;
    ensure(is_zero_mod_pk(&sys, &v), || "x^2 - 2 lift failed".into())?;
    let mut rng = ctx.rng(13);
    let mut lifted = 0;
    while lifted < 10 {
        let p = [3u64, 5, 7][rng.random_range(0..3)];
        let Some((sys, x0)) = planted_system(p, rng.random_range(1..=2), rng.random_range(2..=4), &mut rng) else {
            continue;
        };
        let v = sys.hensel_lift(&x0, 10).map_err(|e| e.to_string())?;
        ensure(is_zero_mod_pk(&sys, &v), || format!("p = {p}: residual not divisible by p^10"))?;
        lifted += 1;
    }
    Ok("x^2 - 2 at p = 7 and 10 planted systems".into())
}

/// A random integer system with a planted non-singular zero modulo `p`,
/// or `None` if the sample turned out singular.
pub fn planted_system(p: u64, r: usize, n: usize, rng: &mut impl Rng) -> Option<(IntegerQuadraticSystem, Vec<BigInt>)> {
    if r > n {
        return None;
    }
    let x0: Vec<i64> = (0..n).map(|_| rng.random_range(0..p as i64)).collect();
    let k = x0.iter().position(|&c| c != 0)?;
    let mut forms = Vec::with_capacity(r);
    for _ in 0..r {
        let mut terms: Vec<(usize, usize, i64)> = Vec::new();
        for i in 0..n {
            for j in i..n {
                terms.push((i, j, rng.random_range(-50..=50)));
            }
        }
        let value: i64 = terms.iter().map(|&(i, j, a)| a * x0[i] * x0[j]).sum();
        // Make the value vanish modulo p by adjusting a_kk: a_kk -= value / x_k^2 (mod p).
        let pk = p as i64;
        let xk2 = (x0[k] * x0[k]).rem_euclid(pk);
        let inv = (1..pk).find(|&c| (c * xk2) % pk == 1)?;
        let delta = (value.rem_euclid(pk) * inv) % pk;
        let slot = terms.iter_mut().find(|t| t.0 == k && t.1 == k).expect("diagonal present");
        slot.2 -= delta;
        forms.push(terms.into_iter().map(|(i, j, a)| (i, j, BigInt::from(a))).collect());
    }
    let sys = IntegerQuadraticSystem::new(p, n, forms).ok()?;
    let x: Vec<BigInt> = x0.into_iter().map(BigInt::from).collect();
    sys.is_nonsingular_zero(&x).ok()?.then_some((sys, x))
}

const CHECKS: [(&str, Check); 12] = [
    ("field-axioms", check_field_axioms),
    ("threshold-search", check_thresholds),
    ("headline-admissibility", check_headline),
    ("special-case-identities", check_specializations),
    ("sigma2-decimals", check_decimals),
    ("large-q-certificate", check_large_q),
    ("zero-counts", check_zero_counts),
    ("rank-oracles", check_ranks),
    ("half-minor-invariance", check_half_minors),
    ("pencil-counting", check_pencils),
    ("minimization-sweep", check_minimization),
    ("hensel-lifting", check_hensel),
];

/// Runs every check, converting panics into failures.
pub fn run(opts: SelftestOptions) -> Vec<CheckResult> {
    let ctx = Ctx { seed: opts.seed, corrupt: opts.corrupt_modulus };
    CHECKS
        .iter()
        .map(|&(name, check)| {
            let start = Instant::now();
            let outcome = catch_unwind(AssertUnwindSafe(|| check(&ctx)));
            let millis = start.elapsed().as_millis();
            let (passed, detail) = match outcome {
                Ok(Ok(d)) => (true, d),
                Ok(Err(d)) => (false, d),
                Err(payload) => {
                    let msg = payload
                        .downcast_ref::<String>()
                        .cloned()
                        .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                        .unwrap_or_else(|| "panic".into());
                    (false, format!("panicked: {msg}"))
                }
            };
            CheckResult { name, passed, detail, millis }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selftest_passes() {
        let results = run(SelftestOptions::default());
        for r in &results {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }

    #[test]
    fn corrupted_modulus_is_caught() {
        let prev = std::panic::take_hook();
        std::panic::set_hook(Box::new(|_| {}));
        let results = run(SelftestOptions { seed: 0, corrupt_modulus: true });
        std::panic::set_hook(prev);
        let axioms = results.iter().find(|r| r.name == "field-axioms").unwrap();
        assert!(!axioms.passed);
    }

    #[test]
    fn low_rank_forms_have_low_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = Field::of_order(5).unwrap();
        for k in 0..4 {
            assert!(rank(&random_low_rank_form(&f, 5, k, &mut rng)) <= k);
        }
    }
}
