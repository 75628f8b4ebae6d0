use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::poly::{self, Poly};
use super::ExactError;
use crate::numtheory::{is_prime, mul_mod};

/// GF(p^m) realized as GF(p)[x] / (f) for a fixed monic irreducible `f`.
///
/// `choice` selects which irreducible is used: `0` is the lexicographically
/// smallest one (coefficients read as base-p digits, constant term first),
/// `1` the next, and so on.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct FieldCtx {
    p: u64,
    m: usize,
    modulus: Poly,
    choice: usize,
}

fn field_cache() -> &'static Mutex<HashMap<(u64, usize, usize), Arc<FieldCtx>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize, usize), Arc<FieldCtx>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn digits(mut t: u64, p: u64, m: usize) -> Poly {
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        out.push(t % p);
        t /= p;
    }
    out
}

impl FieldCtx {
    pub fn new(p: u64, m: usize) -> Result<Arc<Self>, ExactError> {
        Self::with_choice(p, m, 0)
    }

    pub fn with_choice(p: u64, m: usize, choice: usize) -> Result<Arc<Self>, ExactError> {
        if !is_prime(p) {
            return Err(ExactError::NotPrime(p));
        }
        assert!(m >= 1, "extension degree must be positive");
        let key = (p, m, choice);
        if let Some(ctx) = field_cache().lock().unwrap().get(&key) {
            return Ok(ctx.clone());
        }
        let mut found = 0usize;
        let mut t = 0u64;
        let modulus = loop {
            let mut f = digits(t, p, m);
            f.push(1);
            if poly::is_irreducible(&f, p) {
                if found == choice {
                    break f;
                }
                found += 1;
            }
            t += 1;
        };
        let ctx = Arc::new(FieldCtx { p, m, modulus, choice });
        field_cache().lock().unwrap().insert(key, ctx.clone());
        Ok(ctx)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    /// The defining irreducible polynomial, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn choice(&self) -> usize {
        self.choice
    }

    /// p^m
    pub fn size(&self) -> BigUint {
        BigUint::from(self.p).pow(self.m as u32)
    }

    pub fn zero(self: &Arc<Self>) -> FFElem {
        FFElem { field: self.clone(), coeffs: Vec::new() }
    }

    pub fn one(self: &Arc<Self>) -> FFElem {
        self.from_int(1)
    }

    pub fn from_int(self: &Arc<Self>, v: i64) -> FFElem {
        let r = v.rem_euclid(self.p as i64) as u64;
        FFElem { field: self.clone(), coeffs: poly::trim(vec![r]) }
    }

    /// The element whose coefficient vector is the base-p expansion of `t`.
    pub fn element(self: &Arc<Self>, t: u64) -> FFElem {
        FFElem { field: self.clone(), coeffs: poly::trim(digits(t, self.p, self.m)) }
    }

    /// The class of `x` in GF(p)[x]/(f).
    pub fn generator_poly(self: &Arc<Self>) -> FFElem {
        FFElem { field: self.clone(), coeffs: poly::rem(&[0, 1], &self.modulus, self.p) }
    }
}

/// An element of GF(p^m), stored as a reduced polynomial over GF(p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FFElem {
    field: Arc<FieldCtx>,
    coeffs: Poly,
}

impl FFElem {
    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    fn same_field(&self, other: &FFElem) {
        assert!(self.field == other.field, "finite field elements from different fields");
    }

    pub fn add(&self, other: &FFElem) -> FFElem {
        self.same_field(other);
        let p = self.field.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % p
            })
            .collect();
        FFElem { field: self.field.clone(), coeffs: poly::trim(c) }
    }

    pub fn neg(&self) -> FFElem {
        let p = self.field.p;
        let c = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FFElem { field: self.field.clone(), coeffs: poly::trim(c) }
    }

    pub fn sub(&self, other: &FFElem) -> FFElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FFElem) -> FFElem {
        self.same_field(other);
        let f = &self.field;
        FFElem { field: f.clone(), coeffs: poly::mul_rem(&self.coeffs, &other.coeffs, &f.modulus, f.p) }
    }

    pub fn scale(&self, k: u64) -> FFElem {
        let p = self.field.p;
        let k = k % p;
        let c = self.coeffs.iter().map(|&a| mul_mod(a, k, p)).collect();
        FFElem { field: self.field.clone(), coeffs: poly::trim(c) }
    }

    pub fn pow(&self, e: &BigUint) -> FFElem {
        let mut result = self.field.one();
        for i in (0..e.bits()).rev() {
            result = result.mul(&result);
            if e.bit(i) {
                result = result.mul(self);
            }
        }
        result
    }

    pub fn pow_u64(&self, e: u64) -> FFElem {
        self.pow(&BigUint::from(e))
    }

    pub fn inverse(&self) -> Result<FFElem, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let e = self.field.size() - BigUint::from(2u32);
        Ok(self.pow(&e))
    }

    /// Multiplicative order, given the factorization of p^m - 1 is feasible
    /// (intended for small fields and tests).
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let q1 = u64::try_from(self.field.size() - BigUint::one()).ok()?;
        let mut ord = q1;
        for (r, _) in crate::numtheory::factorize(q1) {
            while ord % r == 0 && self.pow_u64(ord / r).is_one() {
                ord /= r;
            }
        }
        Some(ord)
    }
}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}){:?}", self.field.p, self.field.m, self.coeffs)
    }
}

/// Finds the first element (in base-p enumeration order, starting from the
/// class of `x`) whose power `x^((q-1)/order)` has exact multiplicative order `order`.
pub(crate) fn element_of_order(field: &Arc<FieldCtx>, order: u64) -> FFElem {
    let q1 = field.size() - BigUint::one();
    assert!(
        (&q1 % BigUint::from(order)).is_zero(),
        "order {order} does not divide the multiplicative group order"
    );
    let cofactor = &q1 / BigUint::from(order);
    let primes = crate::numtheory::prime_divisors(order);
    let candidates = std::iter::once(field.generator_poly()).chain((1u64..).map(|t| field.element(t)));
    for x in candidates {
        if x.is_zero() {
            continue;
        }
        let y = x.pow(&cofactor);
        if primes.iter().all(|&r| !y.pow_u64(order / r).is_one()) {
            return y;
        }
    }
    unreachable!("the multiplicative group is cyclic")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_structure() {
        let f = FieldCtx::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let x = f.generator_poly();
        assert_eq!(x.multiplicative_order(), Some(3));
        assert_eq!(x.mul(&x).add(&x).add(&f.one()), f.zero());
    }

    #[test]
    fn inverses_in_gf27() {
        let f = FieldCtx::new(3, 3).unwrap();
        for t in 1..27 {
            let a = f.element(t);
            assert!(a.mul(&a.inverse().unwrap()).is_one());
            assert_eq!(26 % a.multiplicative_order().unwrap(), 0);
        }
    }

    #[test]
    fn alternative_modulus() {
        let f0 = FieldCtx::with_choice(2, 4, 0).unwrap();
        let f1 = FieldCtx::with_choice(2, 4, 1).unwrap();
        assert_ne!(f0.modulus(), f1.modulus());
        assert!(FieldCtx::new(4, 1).is_err());
    }

    #[test]
    fn exact_order_elements() {
        let f = FieldCtx::new(2, 4).unwrap();
        for order in [1u64, 3, 5, 15] {
            assert_eq!(element_of_order(&f, order).multiplicative_order(), Some(order));
        }
    }
}
