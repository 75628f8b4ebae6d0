//! Small integer utilities shared by every module: primality, factorization,
//! valuations and modular arithmetic on machine words.

use num_integer::Integer;

/// `a * b mod m` without overflow.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `a^e mod m`.
pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
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
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
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

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "cannot factor zero");
    let mut primes = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13] {
        while n.is_multiple_of(p) {
            primes.push(p);
            n /= p;
        }
    }
    factor_into(n, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// The distinct primes dividing `n`.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Exponent of `p` in `n` (`n > 0`).
pub fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n > 0 && p > 1);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// The largest power of `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> u64 {
    p.pow(valuation(n, p))
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(1, |acc, (p, e)| acc * (p - 1) * p.pow(e - 1))
}

/// Möbius function.
pub fn moebius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All positive divisors of `n`, sorted.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let current = ds.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            ds.extend(current.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

/// `Some((p, k))` when `n = p^k` with `k >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let f = factorize(n);
    (f.len() == 1).then(|| f[0])
}

/// Exact integer `k`-th root, if `n` is a perfect `k`-th power.
pub fn exact_root(n: u64, k: u32) -> Option<u64> {
    if k == 1 {
        return Some(n);
    }
    let guess = (n as f64).powf(1.0 / k as f64).round() as u64;
    let lo = guess.saturating_sub(2);
    (lo..=guess + 2).find(|&r| r.checked_pow(k) == Some(n))
}

/// Multiplicative order of `a` modulo `n`, for `gcd(a, n) = 1`.
pub fn multiplicative_order(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let phi = euler_phi(n);
    let mut ord = phi;
    for (p, _) in factorize(phi) {
        while ord.is_multiple_of(p) && pow_mod(a, ord / p, n) == 1 {
            ord /= p;
        }
    }
    ord
}

/// Integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_is_prime(n: u64) -> bool {
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000 {
            assert_eq!(is_prime(n), naive_is_prime(n), "n = {n}");
        }
        assert!(is_prime(2_305_843_009_213_693_951));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn factorization_round_trips() {
        for n in 1..3000u64 {
            let f = factorize(n);
            assert_eq!(f.iter().map(|(p, e)| p.pow(*e)).product::<u64>(), n);
            assert!(f.iter().all(|(p, _)| naive_is_prime(*p)));
        }
        let big = 4_157_776_806_543_360_000u64;
        assert_eq!(
            factorize(big),
            vec![(2, 21), (3, 9), (5, 4), (7, 2), (11, 1), (13, 1), (23, 1)]
        );
    }

    #[test]
    fn small_helpers() {
        assert_eq!(valuation(20160, 2), 6);
        assert_eq!(p_part(20160, 3), 9);
        assert_eq!(euler_phi(36), 12);
        assert_eq!(moebius(30), -1);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(prime_power(243), Some((3, 5)));
        assert_eq!(prime_power(12), None);
        assert_eq!(exact_root(60 * 60 * 60, 3), Some(60));
        assert_eq!(exact_root(61, 2), None);
        assert_eq!(multiplicative_order(2, 7), 3);
        assert_eq!(isqrt(u64::MAX), 4_294_967_295);
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 4), None);
    }
}
