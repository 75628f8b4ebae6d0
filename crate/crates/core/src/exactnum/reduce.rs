use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::ff::element_of_order;
use super::{Cyc, ExactError, FFElem, FieldCtx};
use crate::numtheory::{is_prime, multiplicative_order};

/// A ring homomorphism Z[ζ_N] → GF(p^m) for a fixed ambient conductor N.
///
/// With N = p^a·N′ (p ∤ N′), the field has m = ord_{N′}(p) and ζ_N is sent
/// to a fixed element `w` of order N′, so ζ_{p^a} goes to 1. Every value whose
/// conductor divides N is reduced through the same homomorphism.
#[derive(Debug, Clone)]
pub struct IdealReducer {
    p: u64,
    ambient: u32,
    n_prime: u64,
    field: Arc<FieldCtx>,
    powers: Vec<FFElem>,
}

impl IdealReducer {
    pub fn new(p: u64, ambient: u32) -> Result<Self, ExactError> {
        Self::with_choice(p, ambient, 0)
    }

    /// As [`IdealReducer::new`], with the `choice`-th irreducible polynomial.
    pub fn with_choice(p: u64, ambient: u32, choice: usize) -> Result<Self, ExactError> {
        if !is_prime(p) {
            return Err(ExactError::NotPrime(p));
        }
        let mut n_prime = ambient as u64;
        while n_prime.is_multiple_of(p) {
            n_prime /= p;
        }
        let m = multiplicative_order(p % n_prime.max(1), n_prime) as usize;
        let field = FieldCtx::with_choice(p, m.max(1), choice)?;
        let w = element_of_order(&field, n_prime);
        let mut powers = Vec::with_capacity(n_prime as usize);
        let mut cur = field.one();
        for _ in 0..n_prime {
            powers.push(cur.clone());
            cur = cur.mul(&w);
        }
        Ok(IdealReducer { p, ambient, n_prime, field, powers })
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    pub fn reduce(&self, a: &Cyc) -> Result<FFElem, ExactError> {
        let f = a.conductor();
        if !self.ambient.is_multiple_of(f) {
            return Err(ExactError::AmbientMismatch { conductor: f, ambient: self.ambient });
        }
        if !a.is_integral() {
            return Err(ExactError::NonIntegral);
        }
        let step = (self.ambient / f) as u64;
        let pb = BigInt::from(self.p);
        let mut acc = self.field.zero();
        for (i, c) in a.numerators().iter().enumerate() {
            let r = c.mod_floor(&pb).to_u64().unwrap();
            if r == 0 {
                continue;
            }
            let e = (i as u64 * step) % self.n_prime;
            acc = acc.add(&self.powers[e as usize].scale(r));
        }
        Ok(acc)
    }
}

/// Reduces a single cyclotomic integer at its own conductor.
pub fn ideal_reduce(a: &Cyc, p: u64) -> Result<FFElem, ExactError> {
    IdealReducer::new(p, a.conductor())?.reduce(a)
}
