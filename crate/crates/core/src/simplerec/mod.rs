//! Finite simple groups by order: order formulas, candidate lists, typing of
//! minimal normal subgroups and Sylow data for known socles.

mod lookup;
mod recognize;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::numtheory::{exact_root, is_prime, prime_power};

pub use lookup::{
    extension_sylow_lookup, socle_sylow_lookup, ExtensionFacts, LookupError, SocleData, SylowFacts, SylowTag, SOCLE_DATA,
    SOCLE_DATA_VERSION,
};
pub use recognize::{
    almost_simple_socle, b_c_probe_sizes, is_almost_simple, recognize_minimal_normal, MinimalNormalType,
    RecognitionError, SocleFacts,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Cyclic,
    Alternating,
    /// PSL(n, q), n the dimension.
    Linear,
    /// PSU(n, q), n the dimension.
    Unitary,
    /// PSp(2n, q), n the rank.
    Symplectic,
    /// Ω(2n+1, q) for odd q, n the rank.
    OrthogonalOdd,
    /// PΩ+(2n, q), n the rank.
    OrthogonalPlus,
    /// PΩ-(2n, q), n the rank.
    OrthogonalMinus,
    G2,
    F4,
    E6,
    TwistedE6,
    E7,
    E8,
    TrialityD4,
    Suzuki,
    Ree,
    ReeF4,
    Tits,
    Sporadic,
}

/// A simple group up to isomorphism. For sporadic groups `n` indexes
/// [`SPORADIC`]; for cyclic groups `q` is the prime order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleId {
    pub family: Family,
    pub n: u32,
    pub q: u64,
}

/// Names and order factorizations of the 26 sporadic groups.
pub const SPORADIC: [(&str, &[(u64, u32)]); 26] = [
    ("M11", &[(2, 4), (3, 2), (5, 1), (11, 1)]),
    ("M12", &[(2, 6), (3, 3), (5, 1), (11, 1)]),
    ("M22", &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1)]),
    ("M23", &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1), (23, 1)]),
    ("M24", &[(2, 10), (3, 3), (5, 1), (7, 1), (11, 1), (23, 1)]),
    ("J1", &[(2, 3), (3, 1), (5, 1), (7, 1), (11, 1), (19, 1)]),
    ("J2", &[(2, 7), (3, 3), (5, 2), (7, 1)]),
    ("J3", &[(2, 7), (3, 5), (5, 1), (17, 1), (19, 1)]),
    ("J4", &[(2, 21), (3, 3), (5, 1), (7, 1), (11, 3), (23, 1), (29, 1), (31, 1), (37, 1), (43, 1)]),
    ("HS", &[(2, 9), (3, 2), (5, 3), (7, 1), (11, 1)]),
    ("McL", &[(2, 7), (3, 6), (5, 3), (7, 1), (11, 1)]),
    ("Suz", &[(2, 13), (3, 7), (5, 2), (7, 1), (11, 1), (13, 1)]),
    ("Co3", &[(2, 10), (3, 7), (5, 3), (7, 1), (11, 1), (23, 1)]),
    ("Co2", &[(2, 18), (3, 6), (5, 3), (7, 1), (11, 1), (23, 1)]),
    ("Co1", &[(2, 21), (3, 9), (5, 4), (7, 2), (11, 1), (13, 1), (23, 1)]),
    ("He", &[(2, 10), (3, 3), (5, 2), (7, 3), (17, 1)]),
    ("Fi22", &[(2, 17), (3, 9), (5, 2), (7, 1), (11, 1), (13, 1)]),
    ("Fi23", &[(2, 18), (3, 13), (5, 2), (7, 1), (11, 1), (13, 1), (17, 1), (23, 1)]),
    ("Fi24'", &[(2, 21), (3, 16), (5, 2), (7, 3), (11, 1), (13, 1), (17, 1), (23, 1), (29, 1)]),
    ("HN", &[(2, 14), (3, 6), (5, 6), (7, 1), (11, 1), (19, 1)]),
    ("Ly", &[(2, 8), (3, 7), (5, 6), (7, 1), (11, 1), (31, 1), (37, 1), (67, 1)]),
    ("Th", &[(2, 15), (3, 10), (5, 3), (7, 2), (13, 1), (19, 1), (31, 1)]),
    ("B", &[(2, 41), (3, 13), (5, 6), (7, 2), (11, 1), (13, 1), (17, 1), (19, 1), (23, 1), (31, 1), (47, 1)]),
    (
        "M",
        &[
            (2, 46),
            (3, 20),
            (5, 9),
            (7, 6),
            (11, 2),
            (13, 3),
            (17, 1),
            (19, 1),
            (23, 1),
            (29, 1),
            (31, 1),
            (41, 1),
            (47, 1),
            (59, 1),
            (71, 1),
        ],
    ),
    ("Ru", &[(2, 14), (3, 3), (5, 3), (7, 1), (13, 1), (29, 1)]),
    ("O'N", &[(2, 9), (3, 4), (5, 1), (7, 3), (11, 1), (19, 1), (31, 1)]),
];

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn qpow(q: u64, e: u32) -> BigUint {
    big(q).pow(e)
}

/// Π (q^e ∓ 1) over the listed exponents, taking `+1` where the flag is set.
fn cyclotomic_product(q: u64, factors: &[(u32, bool)]) -> BigUint {
    factors.iter().fold(BigUint::one(), |acc, &(e, plus)| {
        let t = qpow(q, e);
        acc * if plus { t + 1u32 } else { t - 1u32 }
    })
}

fn gcd_big(a: u64, b: &BigUint) -> u64 {
    (b % big(a)).to_u64().map(|r| num_integer::gcd(a, r)).unwrap()
}

impl SimpleId {
    pub const fn new(family: Family, n: u32, q: u64) -> Self {
        SimpleId { family, n, q }
    }

    pub fn alternating(n: u32) -> Self {
        SimpleId::new(Family::Alternating, n, 0).canonical()
    }

    pub fn psl(n: u32, q: u64) -> Self {
        SimpleId::new(Family::Linear, n, q).canonical()
    }

    pub fn sporadic(name: &str) -> Option<Self> {
        SPORADIC.iter().position(|(s, _)| *s == name).map(|i| SimpleId::new(Family::Sporadic, i as u32, 0))
    }

    pub fn is_abelian(&self) -> bool {
        self.family == Family::Cyclic
    }

    /// Characteristic and field size for groups of Lie type.
    pub fn lie_field(&self) -> Option<(u64, u64)> {
        match self.family {
            Family::Cyclic | Family::Alternating | Family::Sporadic | Family::Tits => None,
            _ => prime_power(self.q).map(|(r, _)| (r, self.q)),
        }
    }

    pub fn order(&self) -> BigUint {
        let (n, q) = (self.n, self.q);
        let d = |a: u64, b: &BigUint| big(gcd_big(a, b));
        match self.family {
            Family::Cyclic => big(q),
            Family::Alternating => (3..=n as u64).fold(BigUint::one(), |acc, i| acc * i),
            Family::Linear => {
                let f: Vec<_> = (2..=n).map(|i| (i, false)).collect();
                qpow(q, n * (n - 1) / 2) * cyclotomic_product(q, &f) / big(num_integer::gcd(n as u64, q - 1))
            }
            Family::Unitary => {
                let f: Vec<_> = (2..=n).map(|i| (i, i % 2 == 1)).collect();
                qpow(q, n * (n - 1) / 2) * cyclotomic_product(q, &f) / big(num_integer::gcd(n as u64, q + 1))
            }
            Family::Symplectic | Family::OrthogonalOdd => {
                let f: Vec<_> = (1..=n).map(|i| (2 * i, false)).collect();
                qpow(q, n * n) * cyclotomic_product(q, &f) / big(num_integer::gcd(2, q - 1))
            }
            Family::OrthogonalPlus | Family::OrthogonalMinus => {
                let plus = self.family == Family::OrthogonalMinus;
                let f: Vec<_> = (1..n).map(|i| (2 * i, false)).collect();
                let qn = if plus { qpow(q, n) + 1u32 } else { qpow(q, n) - 1u32 };
                qpow(q, n * (n - 1)) * cyclotomic_product(q, &f) * &qn / d(4, &qn)
            }
            Family::G2 => qpow(q, 6) * cyclotomic_product(q, &[(6, false), (2, false)]),
            Family::F4 => qpow(q, 24) * cyclotomic_product(q, &[(12, false), (8, false), (6, false), (2, false)]),
            Family::E6 => {
                qpow(q, 36)
                    * cyclotomic_product(q, &[(12, false), (9, false), (8, false), (6, false), (5, false), (2, false)])
                    / big(num_integer::gcd(3, q - 1))
            }
            Family::TwistedE6 => {
                qpow(q, 36)
                    * cyclotomic_product(q, &[(12, false), (9, true), (8, false), (6, false), (5, true), (2, false)])
                    / big(num_integer::gcd(3, q + 1))
            }
            Family::E7 => {
                let f = [18, 14, 12, 10, 8, 6, 2].map(|e| (e, false));
                qpow(q, 63) * cyclotomic_product(q, &f) / big(num_integer::gcd(2, q - 1))
            }
            Family::E8 => {
                let f = [30, 24, 20, 18, 14, 12, 8, 2].map(|e| (e, false));
                qpow(q, 120) * cyclotomic_product(q, &f)
            }
            Family::TrialityD4 => {
                qpow(q, 12) * (qpow(q, 8) + qpow(q, 4) + 1u32) * cyclotomic_product(q, &[(6, false), (2, false)])
            }
            Family::Suzuki => qpow(q, 2) * (qpow(q, 2) + 1u32) * (big(q) - 1u32),
            Family::Ree => qpow(q, 3) * (qpow(q, 3) + 1u32) * (big(q) - 1u32),
            Family::ReeF4 => {
                qpow(q, 12) * cyclotomic_product(q, &[(6, true), (4, false), (3, true), (1, false)])
            }
            Family::Tits => big(17_971_200),
            Family::Sporadic => SPORADIC[n as usize].1.iter().fold(BigUint::one(), |acc, &(p, e)| acc * qpow(p, e)),
        }
    }

    /// Maps exceptional isomorphisms to one representative.
    pub fn canonical(self) -> Self {
        use Family::*;
        match (self.family, self.n, self.q) {
            (Linear, 2, 4) | (Linear, 2, 5) => SimpleId::new(Alternating, 5, 0),
            (Linear, 2, 9) => SimpleId::new(Alternating, 6, 0),
            (Linear, 3, 2) => SimpleId::new(Linear, 2, 7),
            (Linear, 4, 2) => SimpleId::new(Alternating, 8, 0),
            (Symplectic, 2, 3) => SimpleId::new(Unitary, 4, 2),
            (Symplectic, 1, q) => SimpleId::new(Linear, 2, q).canonical(),
            (Unitary, 2, q) => SimpleId::new(Linear, 2, q).canonical(),
            (OrthogonalOdd, 2, q) => SimpleId::new(Symplectic, 2, q).canonical(),
            (OrthogonalOdd, 1, q) => SimpleId::new(Linear, 2, q).canonical(),
            (OrthogonalPlus, 3, q) => SimpleId::new(Linear, 4, q).canonical(),
            (OrthogonalMinus, 3, q) => SimpleId::new(Unitary, 4, q).canonical(),
            (Alternating, 3, _) => SimpleId::new(Cyclic, 1, 3),
            _ => self,
        }
    }
}

impl fmt::Display for SimpleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, q) = (self.n, self.q);
        match self.family {
            Family::Cyclic => write!(f, "C{q}"),
            Family::Alternating => write!(f, "A{n}"),
            Family::Linear => write!(f, "PSL({n},{q})"),
            Family::Unitary => write!(f, "PSU({n},{q})"),
            Family::Symplectic => write!(f, "PSp({},{q})", 2 * n),
            Family::OrthogonalOdd => write!(f, "O({},{q})", 2 * n + 1),
            Family::OrthogonalPlus => write!(f, "O+({},{q})", 2 * n),
            Family::OrthogonalMinus => write!(f, "O-({},{q})", 2 * n),
            Family::G2 => write!(f, "G2({q})"),
            Family::F4 => write!(f, "F4({q})"),
            Family::E6 => write!(f, "E6({q})"),
            Family::TwistedE6 => write!(f, "2E6({q})"),
            Family::E7 => write!(f, "E7({q})"),
            Family::E8 => write!(f, "E8({q})"),
            Family::TrialityD4 => write!(f, "3D4({q})"),
            Family::Suzuki => write!(f, "Sz({q})"),
            Family::Ree => write!(f, "2G2({q})"),
            Family::ReeF4 => write!(f, "2F4({q})"),
            Family::Tits => write!(f, "2F4(2)'"),
            Family::Sporadic => write!(f, "{}", SPORADIC[n as usize].0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unrecognized simple group name '{0}'")]
pub struct ParseSimpleIdError(pub String);

impl FromStr for SimpleId {
    type Err = ParseSimpleIdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseSimpleIdError(s.to_string());
        let s = s.trim();
        if let Some(id) = SimpleId::sporadic(s) {
            return Ok(id);
        }
        if s == "2F4(2)'" {
            return Ok(SimpleId::new(Family::Tits, 0, 2));
        }
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| err());
        if let Some(open) = s.find('(') {
            let head = &s[..open];
            let inner = s[open + 1..].strip_suffix(')').ok_or_else(err)?;
            let args: Vec<u64> = inner.split(',').map(num).collect::<Result<_, _>>()?;
            let one = |fam| -> Result<SimpleId, ParseSimpleIdError> {
                match args.as_slice() {
                    [q] => Ok(SimpleId::new(fam, 0, *q)),
                    _ => Err(err()),
                }
            };
            let two = |fam, even: bool, odd: bool| -> Result<SimpleId, ParseSimpleIdError> {
                match args.as_slice() {
                    [d, q] if even && d % 2 == 0 => Ok(SimpleId::new(fam, (*d / 2) as u32, *q)),
                    [d, q] if odd && d % 2 == 1 => Ok(SimpleId::new(fam, (*d / 2) as u32, *q)),
                    _ => Err(err()),
                }
            };
            let id = match head {
                "PSL" | "L" => match args.as_slice() {
                    [n, q] => SimpleId::new(Family::Linear, *n as u32, *q),
                    _ => return Err(err()),
                },
                "PSU" | "U" => match args.as_slice() {
                    [n, q] => SimpleId::new(Family::Unitary, *n as u32, *q),
                    _ => return Err(err()),
                },
                "PSp" | "S" => two(Family::Symplectic, true, false)?,
                "O" => two(Family::OrthogonalOdd, false, true)?,
                "O+" => two(Family::OrthogonalPlus, true, false)?,
                "O-" => two(Family::OrthogonalMinus, true, false)?,
                "G2" => one(Family::G2)?,
                "F4" => one(Family::F4)?,
                "E6" => one(Family::E6)?,
                "2E6" => one(Family::TwistedE6)?,
                "E7" => one(Family::E7)?,
                "E8" => one(Family::E8)?,
                "3D4" => one(Family::TrialityD4)?,
                "Sz" | "2B2" => one(Family::Suzuki)?,
                "2G2" => one(Family::Ree)?,
                "2F4" => one(Family::ReeF4)?,
                _ => return Err(err()),
            };
            if id.lie_field().is_none() {
                return Err(err());
            }
            return Ok(id.canonical());
        }
        if let Some(rest) = s.strip_prefix('A') {
            let n = num(rest)? as u32;
            return if n >= 5 { Ok(SimpleId::alternating(n)) } else { Err(err()) };
        }
        if let Some(rest) = s.strip_prefix('C') {
            let p = num(rest)?;
            return if is_prime(p) { Ok(SimpleId::new(Family::Cyclic, 1, p)) } else { Err(err()) };
        }
        Err(err())
    }
}

fn prime_powers_from(start: u64) -> impl Iterator<Item = u64> {
    (start..).filter(|&q| prime_power(q).is_some())
}

/// Pushes `id` for each rank, starting at `min_rank`, whose order equals `n`,
/// stopping once the order exceeds `n`. Returns false when the minimal rank
/// already exceeds `n`.
fn scan_ranks(
    family: Family,
    q: u64,
    min_rank: u32,
    target: &BigUint,
    allowed: impl Fn(u32) -> bool,
    out: &mut Vec<SimpleId>,
) -> bool {
    let mut rank = min_rank;
    loop {
        let id = SimpleId::new(family, rank, q);
        let order = id.order();
        if &order > target {
            return rank > min_rank;
        }
        if &order == target && allowed(rank) {
            out.push(id.canonical());
        }
        rank += 1;
    }
}

/// All simple groups of order exactly `n`, up to isomorphism.
pub fn simple_order_candidates(n: u64) -> Vec<SimpleId> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    if is_prime(n) {
        out.push(SimpleId::new(Family::Cyclic, 1, n));
        return out;
    }
    let target = big(n);
    let mut m = 5u32;
    loop {
        let order = SimpleId::new(Family::Alternating, m, 0).order();
        if order > target {
            break;
        }
        if order == target {
            out.push(SimpleId::alternating(m));
        }
        m += 1;
    }
    for d in [1u64, 2] {
        if let Some(c) = n.checked_mul(d) {
            let root = (c as f64).cbrt() as u64;
            for q in root.saturating_sub(2).max(4)..=root + 2 {
                if prime_power(q).is_some() && SimpleId::new(Family::Linear, 2, q).order() == target {
                    out.push(SimpleId::psl(2, q));
                }
            }
        }
    }
    type Rule = (Family, u32, fn(u64) -> bool, fn(u32, u64) -> bool);
    let lie: [Rule; 6] = [
        (Family::Linear, 3, |_| true, |_, _| true),
        (Family::Unitary, 3, |_| true, |r, q| !(r == 3 && q == 2)),
        (Family::Symplectic, 2, |_| true, |r, q| !(r == 2 && q == 2)),
        (Family::OrthogonalOdd, 3, |q| q % 2 == 1, |_, _| true),
        (Family::OrthogonalPlus, 4, |_| true, |_, _| true),
        (Family::OrthogonalMinus, 4, |_| true, |_, _| true),
    ];
    for (family, min_rank, q_ok, allowed) in lie {
        for q in prime_powers_from(2) {
            if SimpleId::new(family, min_rank, q).order() > target {
                break;
            }
            if q_ok(q) {
                scan_ranks(family, q, min_rank, &target, |r| allowed(r, q), &mut out);
            }
        }
    }
    let exceptional: [(Family, u64); 7] = [
        (Family::G2, 3),
        (Family::F4, 2),
        (Family::E6, 2),
        (Family::TwistedE6, 2),
        (Family::E7, 2),
        (Family::E8, 2),
        (Family::TrialityD4, 2),
    ];
    for (family, start) in exceptional {
        for q in prime_powers_from(start) {
            let order = SimpleId::new(family, 0, q).order();
            if order > target {
                break;
            }
            if order == target {
                out.push(SimpleId::new(family, 0, q));
            }
        }
    }
    for (family, base) in [(Family::Suzuki, 2u64), (Family::Ree, 3), (Family::ReeF4, 2)] {
        let mut e = 3u32;
        loop {
            let q = base.pow(e);
            let order = SimpleId::new(family, 0, q).order();
            if order > target {
                break;
            }
            if order == target {
                out.push(SimpleId::new(family, 0, q));
            }
            e += 2;
        }
    }
    if SimpleId::new(Family::Tits, 0, 2).order() == target {
        out.push(SimpleId::new(Family::Tits, 0, 2));
    }
    for i in 0..SPORADIC.len() {
        let id = SimpleId::new(Family::Sporadic, i as u32, 0);
        if id.order() == target {
            out.push(id);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Solutions `(S, k)` of `|S|^k = n` with S nonabelian simple.
pub fn simple_power_candidates(n: u64) -> Vec<(Vec<SimpleId>, u32)> {
    let mut out = Vec::new();
    let mut k = 1u32;
    while 60u64.checked_pow(k).is_some_and(|m| m <= n) {
        if let Some(r) = exact_root(n, k) {
            let cands: Vec<_> = simple_order_candidates(r).into_iter().filter(|s| !s.is_abelian()).collect();
            if !cands.is_empty() {
                out.push((cands, k));
            }
        }
        k += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_orders() {
        let cases: [(&str, u64); 12] = [
            ("A5", 60),
            ("PSL(2,7)", 168),
            ("A6", 360),
            ("PSL(2,8)", 504),
            ("M11", 7920),
            ("M12", 95040),
            ("J2", 604_800),
            ("PSL(3,4)", 20160),
            ("PSU(3,3)", 6048),
            ("Sz(8)", 29120),
            ("PSU(4,2)", 25920),
            ("G2(3)", 4_245_696),
        ];
        for (name, order) in cases {
            let id: SimpleId = name.parse().unwrap();
            assert_eq!(id.order(), big(order), "{name}");
            assert_eq!(id.to_string(), name);
        }
        assert_eq!(SimpleId::sporadic("J4").unwrap().order().to_string(), "86775571046077562880");
        assert_eq!(
            SimpleId::sporadic("M").unwrap().order().to_string(),
            "808017424794512875886459904961710757005754368000000000"
        );
        assert_eq!(SimpleId::new(Family::Tits, 0, 2).order(), big(17_971_200));
    }

    #[test]
    fn isomorphisms_are_canonical() {
        assert_eq!("PSL(2,4)".parse::<SimpleId>().unwrap(), SimpleId::alternating(5));
        assert_eq!("PSL(2,9)".parse::<SimpleId>().unwrap(), SimpleId::alternating(6));
        assert_eq!("PSL(3,2)".parse::<SimpleId>().unwrap(), SimpleId::psl(2, 7));
        assert_eq!("PSL(4,2)".parse::<SimpleId>().unwrap(), SimpleId::alternating(8));
        assert_eq!("PSp(4,3)".parse::<SimpleId>().unwrap(), "PSU(4,2)".parse().unwrap());
    }

    #[test]
    fn candidates_by_order() {
        assert_eq!(simple_order_candidates(60), vec![SimpleId::alternating(5)]);
        assert_eq!(simple_order_candidates(168), vec![SimpleId::psl(2, 7)]);
        assert_eq!(simple_order_candidates(20160), vec![SimpleId::alternating(8), SimpleId::psl(3, 4)]);
        assert_eq!(simple_order_candidates(7920), vec![SimpleId::sporadic("M11").unwrap()]);
        assert_eq!(simple_order_candidates(7), vec![SimpleId::new(Family::Cyclic, 1, 7)]);
        assert!(simple_order_candidates(120).is_empty());
        let b3 = SimpleId::new(Family::OrthogonalOdd, 3, 3);
        let c3 = SimpleId::new(Family::Symplectic, 3, 3);
        let n = b3.order().to_u64().unwrap();
        assert_eq!(simple_order_candidates(n), vec![c3, b3]);
    }

    #[test]
    fn at_most_two_candidates_below_a_million() {
        for n in (60..1_000_000u64).step_by(60) {
            let c = simple_order_candidates(n);
            assert!(c.len() <= 1 || n == 20160, "{n}: {c:?}");
        }
    }

    #[test]
    fn power_candidates() {
        assert_eq!(simple_power_candidates(3600), vec![(vec![SimpleId::alternating(5)], 2)]);
        assert!(simple_power_candidates(64).is_empty());
    }
}
