//! Deterministic primality and prime-power utilities on `u64`.

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Miller-Rabin with the first twelve prime bases, deterministic below 2^64.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Floor of the k-th root of `n`.
pub fn iroot(n: u64, k: u32) -> u64 {
    if k == 1 || n < 2 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / k as f64) as u64;
    while r > 0 && r.checked_pow(k).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(k).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

/// `Some((p, e))` when `n = p^e` with `p` prime and `e ≥ 1`.
pub fn prime_power_decompose(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    if is_prime(n) {
        return Some((n, 1));
    }
    for k in (2..=63).rev() {
        let r = iroot(n, k);
        if r >= 2 && r.pow(k) == n && is_prime(r) {
            return Some((r, k));
        }
    }
    None
}

pub fn is_prime_power(n: u64) -> bool {
    prime_power_decompose(n).is_some()
}

/// Ascending stream of prime powers `≥ start`.
#[derive(Clone, Debug)]
pub struct PrimePowers {
    next: u64,
}

impl PrimePowers {
    pub fn from(start: u64) -> Self {
        PrimePowers {
            next: start.max(2),
        }
    }
}

impl Iterator for PrimePowers {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            let n = self.next;
            self.next = n.checked_add(1)?;
            if is_prime_power(n) {
                return Some(n);
            }
        }
    }
}

/// Least prime power `≥ n`.
pub fn next_prime_power(n: u64) -> u64 {
    PrimePowers::from(n).next().expect("prime powers are unbounded below 2^64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sieve(limit: usize) -> Vec<bool> {
        let mut is = vec![true; limit + 1];
        is[0] = false;
        is[1] = false;
        for i in 2..=limit {
            if i * i > limit {
                break;
            }
            if is[i] {
                for j in (i * i..=limit).step_by(i) {
                    is[j] = false;
                }
            }
        }
        is
    }

    #[test]
    fn matches_sieve() {
        let s = sieve(100_000);
        for (n, &p) in s.iter().enumerate() {
            assert_eq!(is_prime(n as u64), p, "n = {n}");
        }
    }

    #[test]
    fn large_primes() {
        assert!(is_prime(271_919));
        assert!(is_prime(10_000_000_019));
        assert!(is_prime(18_446_744_073_709_551_557));
        // Strong pseudoprime to bases 2..=37 is not a concern below 2^64,
        // but classic Carmichael numbers must be rejected.
        assert!(!is_prime(561));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn prime_power_streams() {
        let v: Vec<u64> = PrimePowers::from(32).take(3).collect();
        assert_eq!(v, vec![32, 37, 41]);
        let v: Vec<u64> = PrimePowers::from(8).take(5).collect();
        assert_eq!(v, vec![8, 9, 11, 13, 16]);
        assert!(PrimePowers::from(271_900).take_while(|&x| x <= 271_919).any(|x| x == 271_919));
    }

    #[test]
    fn decomposition() {
        assert_eq!(prime_power_decompose(1024), Some((2, 10)));
        assert_eq!(prime_power_decompose(3u64.pow(13)), Some((3, 13)));
        assert_eq!(prime_power_decompose(36), None);
        assert_eq!(prime_power_decompose(1), None);
        assert_eq!(iroot(u64::MAX, 2), 4_294_967_295);
        assert_eq!(iroot(1_000_000, 3), 100);
        assert_eq!(iroot(999_999, 3), 99);
    }
}
