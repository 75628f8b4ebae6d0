use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExactError, Rat};
use crate::numtheory::{inv_mod, prime_divisors};

/// Largest conductor accepted by any constructor or operation.
pub const MAX_CONDUCTOR: u32 = 1 << 20;

/// An exact element of a cyclotomic field, stored as `num / den` over the
/// power basis `1, ζ_N, ..., ζ_N^{φ(N)-1}` at the smallest possible `N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyc {
    n: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

fn cyclotomic_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn exact_div_i128(a: &[i128], b: &[i128]) -> Vec<i128> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0i128; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] / b[db];
        q[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] -= c * bj;
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub(crate) fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    if let Some(p) = cyclotomic_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    // Φ_{mr}(x) = Φ_m(x^r) / Φ_m(x) for a prime r not dividing m, then
    // Φ_n(x) = Φ_rad(n)(x^{n/rad(n)}).
    let primes = prime_divisors(n as u64);
    let mut phi: Vec<i128> = vec![-1, 1];
    let mut m = 1u64;
    for &r in &primes {
        let mut stretched = vec![0i128; (phi.len() - 1) * r as usize + 1];
        for (i, &c) in phi.iter().enumerate() {
            stretched[i * r as usize] = c;
        }
        phi = exact_div_i128(&stretched, &phi);
        m *= r;
    }
    let step = (n as u64 / m) as usize;
    let mut full = vec![0i64; (phi.len() - 1) * step + 1];
    for (i, &c) in phi.iter().enumerate() {
        full[i * step] = i64::try_from(c).expect("cyclotomic coefficient overflow");
    }
    let arc = Arc::new(full);
    cyclotomic_cache().write().unwrap().insert(n, arc.clone());
    arc
}

/// Reduces an integer vector indexed by exponents modulo Φ_n; the result
/// has length φ(n).
fn reduce_mod_phi(n: u32, mut dense: Vec<BigInt>) -> Vec<BigInt> {
    let phi = cyclotomic_poly(n);
    let d = phi.len() - 1;
    let nonzero: Vec<(usize, BigInt)> = phi[..d]
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(j, &c)| (j, BigInt::from(c)))
        .collect();
    for i in (d..dense.len()).rev() {
        if dense[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut dense[i]);
        for (j, pj) in &nonzero {
            dense[i - d + j] -= &c * pj;
        }
    }
    dense.truncate(d);
    dense.resize(d, BigInt::zero());
    dense
}

fn check_conductor(n: u64) -> Result<u32, ExactError> {
    if n == 0 || n > MAX_CONDUCTOR as u64 {
        Err(ExactError::ConductorTooLarge(n))
    } else {
        Ok(n as u32)
    }
}

fn lcm_conductor(a: u32, b: u32) -> Result<u32, ExactError> {
    check_conductor((a as u64).lcm(&(b as u64)))
}

/// ζ_n^k, descended to its minimal conductor.
pub fn cyc_root(n: u64, k: i64) -> Result<Cyc, ExactError> {
    let n = check_conductor(n)?;
    let e = k.rem_euclid(n as i64) as usize;
    let mut dense = vec![BigInt::zero(); n as usize];
    dense[e] = BigInt::one();
    Ok(Cyc::from_dense(n, dense, BigInt::one()))
}

impl Cyc {
    pub fn zero() -> Self {
        Cyc { n: 1, num: vec![BigInt::zero()], den: BigInt::one() }
    }

    pub fn one() -> Self {
        Cyc::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Cyc { n: 1, num: vec![BigInt::from(v)], den: BigInt::one() }
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Cyc { n: 1, num: vec![v], den: BigInt::one() }
    }

    pub fn from_rat(q: &Rat) -> Self {
        Cyc { n: 1, num: vec![q.numer().clone()], den: q.denom().clone() }
    }

    /// Builds `Σ coeffs[i] ζ_n^i` from a dense exponent vector of any length
    /// (indices are taken modulo `n`).
    pub fn from_exponents(n: u64, coeffs: &[Rat]) -> Result<Self, ExactError> {
        let n = check_conductor(n)?;
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut dense = vec![BigInt::zero(); n as usize];
        for (i, c) in coeffs.iter().enumerate() {
            dense[i % n as usize] += c.numer() * (&den / c.denom());
        }
        Ok(Cyc::from_dense(n, dense, den))
    }

    /// Builds `Σ coeffs[i] ζ_n^i` with integer coefficients.
    pub fn from_int_exponents(n: u64, coeffs: &[i64]) -> Result<Self, ExactError> {
        let n = check_conductor(n)?;
        let mut dense = vec![BigInt::zero(); n as usize];
        for (i, c) in coeffs.iter().enumerate() {
            dense[i % n as usize] += *c;
        }
        Ok(Cyc::from_dense(n, dense, BigInt::one()))
    }

    fn from_dense(n: u32, dense: Vec<BigInt>, den: BigInt) -> Self {
        let num = reduce_mod_phi(n, dense);
        let mut c = Cyc { n, num, den };
        c.descend();
        c.normalize();
        c
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            self.num.iter_mut().for_each(|x| *x = -&*x);
        }
        let g = self.num.iter().fold(self.den.clone(), |acc, x| acc.gcd(x));
        if !g.is_one() && !g.is_zero() {
            self.num.iter_mut().for_each(|x| *x = &*x / &g);
            self.den = &self.den / &g;
        }
        if self.num.iter().all(Zero::is_zero) {
            *self = Cyc::zero();
        }
    }

    /// Repeatedly moves to a proper subfield Q(ζ_{n/ℓ}) while the value lies in it.
    fn descend(&mut self) {
        'outer: loop {
            if self.n == 1 {
                return;
            }
            for l in prime_divisors(self.n as u64) {
                if let Some(lower) = self.try_descend(l as u32) {
                    self.num = lower;
                    self.n /= l as u32;
                    continue 'outer;
                }
            }
            return;
        }
    }

    fn try_descend(&self, l: u32) -> Option<Vec<BigInt>> {
        let n = self.n;
        let m = n / l;
        let mut trace = vec![BigInt::zero(); m as usize];
        let degree: u32;
        if m.is_multiple_of(l) {
            degree = l;
            for (k, c) in self.num.iter().enumerate() {
                if !c.is_zero() && (k as u32).is_multiple_of(l) {
                    trace[(k as u32 / l % m) as usize] += c * l;
                }
            }
        } else {
            degree = l - 1;
            let x = if m == 1 { 0 } else { inv_mod(l as u64, m as u64).unwrap() };
            for (k, c) in self.num.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let e = ((k as u64 * x) % m as u64) as usize;
                if (k as u32).is_multiple_of(l) {
                    trace[e] += c * (l - 1);
                } else {
                    trace[e] -= c;
                }
            }
        }
        let trace = reduce_mod_phi(m, trace);
        let mut lifted = vec![BigInt::zero(); n as usize];
        for (i, c) in trace.iter().enumerate() {
            lifted[i * l as usize] = c.clone();
        }
        let lifted = reduce_mod_phi(n, lifted);
        let matches = lifted
            .iter()
            .zip(&self.num)
            .all(|(t, a)| *t == a * degree);
        if !matches {
            return None;
        }
        Some(trace.into_iter().map(|t| t / degree).collect())
    }

    /// Integer coefficients at conductor `target` (a multiple of the conductor),
    /// indexed by exponent, before reduction. The common denominator is `den()`.
    fn embed(&self, target: u32) -> Vec<BigInt> {
        let step = (target / self.n) as usize;
        let mut dense = vec![BigInt::zero(); target as usize];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                dense[i * step] = c.clone();
            }
        }
        dense
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Common denominator of the power-basis coefficients.
    pub fn den(&self) -> &BigInt {
        &self.den
    }

    /// Numerators over the common denominator, length φ(conductor).
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    /// The rational coefficient of ζ_N^i in the power basis.
    pub fn coeff(&self, i: usize) -> Rat {
        Rat::new(self.num[i].clone(), self.den.clone())
    }

    /// Nonzero `(exponent, coefficient)` pairs of the power basis.
    pub fn terms(&self) -> Vec<(usize, Rat)> {
        (0..self.num.len())
            .filter(|&i| !self.num[i].is_zero())
            .map(|i| (i, self.coeff(i)))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.n == 1 && self.num[0].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.n == 1
    }

    /// True when every power-basis coefficient is an integer, i.e. the value
    /// is an algebraic integer.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_rat(&self) -> Result<Rat, ExactError> {
        if self.n == 1 {
            Ok(Rat::new(self.num[0].clone(), self.den.clone()))
        } else {
            Err(ExactError::NotRational(self.n))
        }
    }

    /// The value as a machine integer, if it is one.
    pub fn to_i64(&self) -> Option<i64> {
        if self.n == 1 && self.den.is_one() {
            self.num[0].to_i64()
        } else {
            None
        }
    }

    pub fn checked_add(&self, other: &Cyc) -> Result<Cyc, ExactError> {
        if self.n == 1 && other.n == 1 {
            let q = self.to_rat()? + other.to_rat()?;
            return Ok(Cyc::from_rat(&q));
        }
        let m = lcm_conductor(self.n, other.n)?;
        let a = self.embed(m);
        let b = other.embed(m);
        let dense = a
            .into_iter()
            .zip(b)
            .map(|(x, y)| x * &other.den + y * &self.den)
            .collect();
        Ok(Cyc::from_dense(m, dense, &self.den * &other.den))
    }

    pub fn checked_mul(&self, other: &Cyc) -> Result<Cyc, ExactError> {
        if self.n == 1 && other.n == 1 {
            let q = self.to_rat()? * other.to_rat()?;
            return Ok(Cyc::from_rat(&q));
        }
        let m = lcm_conductor(self.n, other.n)?;
        let sa = (m / self.n) as usize;
        let sb = (m / other.n) as usize;
        let mut dense = vec![BigInt::zero(); m as usize];
        for (i, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.num.iter().enumerate() {
                if !y.is_zero() {
                    dense[(i * sa + j * sb) % m as usize] += x * y;
                }
            }
        }
        Ok(Cyc::from_dense(m, dense, &self.den * &other.den))
    }

    pub fn scale(&self, q: &Rat) -> Cyc {
        if q.is_zero() {
            return Cyc::zero();
        }
        let mut c = Cyc {
            n: self.n,
            num: self.num.iter().map(|x| x * q.numer()).collect(),
            den: &self.den * q.denom(),
        };
        c.normalize();
        c
    }

    /// Applies ζ ↦ ζ^j.
    pub fn galois(&self, j: i64) -> Result<Cyc, ExactError> {
        let n = self.n as i64;
        if n == 1 {
            return Ok(self.clone());
        }
        if j.gcd(&n) != 1 {
            return Err(ExactError::NotCoprime { j, n: self.n });
        }
        let jj = j.rem_euclid(n) as usize;
        let mut dense = vec![BigInt::zero(); self.n as usize];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                dense[(i * jj) % self.n as usize] = c.clone();
            }
        }
        Ok(Cyc::from_dense(self.n, dense, self.den.clone()))
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Cyc {
        self.galois(-1).expect("-1 is a unit modulo every conductor")
    }

    /// `a · conj(a)`.
    pub fn abs2(&self) -> Cyc {
        self * &self.conj()
    }

    /// Multiplicative inverse, via the product of the other Galois conjugates.
    pub fn inverse(&self) -> Result<Cyc, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let n = self.n as i64;
        let mut others = Cyc::one();
        for j in 2..=n {
            if j.gcd(&n) == 1 {
                others = &others * &self.galois(j)?;
            }
        }
        let norm = (self * &others).to_rat().expect("field norm is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Cyc) -> Result<Cyc, ExactError> {
        Ok(self * &other.inverse()?)
    }

    /// `self^e` for `e >= 0`.
    pub fn pow(&self, mut e: u32) -> Cyc {
        let mut result = Cyc::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }
}

impl Default for Cyc {
    fn default() -> Self {
        Cyc::zero()
    }
}

impl From<i64> for Cyc {
    fn from(v: i64) -> Self {
        Cyc::from_int(v)
    }
}

impl From<Rat> for Cyc {
    fn from(q: Rat) -> Self {
        Cyc::from_rat(&q)
    }
}

impl Add for &Cyc {
    type Output = Cyc;
    fn add(self, rhs: &Cyc) -> Cyc {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &Cyc {
    type Output = Cyc;
    fn mul(self, rhs: &Cyc) -> Cyc {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc { n: self.n, num: self.num.iter().map(|x| -x).collect(), den: self.den.clone() }
    }
}

impl Sub for &Cyc {
    type Output = Cyc;
    fn sub(self, rhs: &Cyc) -> Cyc {
        self + &(-rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyc {
            type Output = Cyc;
            fn $m(self, rhs: Cyc) -> Cyc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Mul, mul);
forward_owned!(Sub, sub);

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        -&self
    }
}

impl std::iter::Sum for Cyc {
    fn sum<I: Iterator<Item = Cyc>>(iter: I) -> Cyc {
        iter.fold(Cyc::zero(), |acc, x| &acc + &x)
    }
}

/// GAP-style notation, e.g. `-1/2 + 3*E(5)^2`.
impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            return write!(f, "{}", Rat::new(self.num[0].clone(), self.den.clone()));
        }
        let mut first = true;
        for (i, c) in self.terms() {
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            first = false;
            if i == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "E({})", self.n)?;
            if i > 1 {
                write!(f, "^{i}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc({self})")
    }
}

#[cfg(test)]
/// Dimension of the power basis at conductor `n`.
pub(crate) fn basis_len(n: u32) -> usize {
    crate::numtheory::euler_phi(n as u64) as usize
}
