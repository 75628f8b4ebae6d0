//! Dense polynomials over GF(p), lowest degree first, with no trailing zeros.

use crate::numtheory::{inv_mod, mul_mod, prime_divisors};

pub(crate) type Poly = Vec<u64>;

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero polynomial `m`.
pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> Poly {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p).expect("leading coefficient is a unit");
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = mul_mod(*r.last().unwrap(), lead_inv, p);
        for (j, &mj) in m.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - mul_mod(c, mj, p)) % p;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn mul_rem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
    rem(&mul(a, b, p), m, p)
}

/// `base^e mod m` for a small exponent.
pub(crate) fn pow_rem(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Poly {
    let mut result: Poly = vec![1];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_rem(&result, &b, m, p);
        }
        b = mul_rem(&b, &b, m, p);
        e >>= 1;
    }
    result
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Rabin's irreducibility test for a monic polynomial of degree `m >= 1`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    // frob[i] = x^(p^i) mod f
    let mut frob = vec![rem(&x, f, p)];
    for i in 1..=m {
        let next = pow_rem(&frob[i - 1], p, f, p);
        frob.push(next);
    }
    if sub(&frob[m], &x, p) != Vec::<u64>::new() {
        return false;
    }
    prime_divisors(m as u64).into_iter().all(|r| {
        let h = sub(&frob[m / r as usize], &x, p);
        let g = gcd(f, &h, p);
        g.len() == 1
    })
}
