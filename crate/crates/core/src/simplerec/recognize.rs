use serde::Serialize;

use super::{simple_power_candidates, socle_sylow_lookup, Family, SimpleId, SylowFacts};
use crate::numtheory::{prime_divisors, prime_power};
use crate::table::{CharTable, NormalSet};

/// A nonabelian minimal normal subgroup `S^copies` with the known Sylow data
/// of S (primes without data are omitted).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SocleFacts {
    pub simple: SimpleId,
    pub copies: u32,
    pub sylow: Vec<SylowFacts>,
}

impl SocleFacts {
    pub fn sylow_at(&self, p: u64) -> Option<&SylowFacts> {
        self.sylow.iter().find(|f| f.p == p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum MinimalNormalType {
    ElementaryAbelian { p: u64, rank: u32 },
    Nonabelian(SocleFacts),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecognitionError {
    #[error("subgroup of order {0} is not a minimal normal subgroup")]
    NotMinimalNormal(u64),
    #[error("no simple group S and k with |S|^k = {0}")]
    NoSolution(u64),
    #[error("order {order} admits several simple-power types: {options}")]
    Ambiguous { order: u64, options: String },
}

/// Class sizes that single out B_n(q)^k among groups of order |B_n(q)|^k:
/// `k · q^n (q^n ± 1) / 2` with the sign matching `q^n ≡ ±1 (mod 4)`.
pub fn b_c_probe_sizes(n: u32, q: u64, k: u32) -> Vec<u64> {
    let Some(qn) = (q as u128).checked_pow(n) else { return Vec::new() };
    let other = if qn % 4 == 1 { qn + 1 } else { qn - 1 };
    (qn * other / 2).checked_mul(k as u128).and_then(|v| u64::try_from(v).ok()).into_iter().collect()
}

fn has_two_element_class_of_size(t: &CharTable, n: &NormalSet, sizes: &[u64]) -> bool {
    n.classes.iter().any(|c| {
        let o = t.element_order(c);
        o > 1 && o.is_power_of_two() && sizes.contains(&t.class_size(c))
    })
}

fn decide(t: &CharTable, n: &NormalSet, cands: &[SimpleId], k: u32) -> Option<SimpleId> {
    match cands {
        [s] => Some(*s),
        [a, b] => {
            let a8 = SimpleId::alternating(8);
            let l34 = SimpleId::psl(3, 4);
            if (*a, *b) == (a8, l34) {
                let is_a8 = has_two_element_class_of_size(t, n, &[105 * k as u64]);
                return Some(if is_a8 { a8 } else { l34 });
            }
            let (c, bo) = match (a.family, b.family) {
                (Family::Symplectic, Family::OrthogonalOdd) => (*a, *b),
                (Family::OrthogonalOdd, Family::Symplectic) => (*b, *a),
                _ => return None,
            };
            let is_b = has_two_element_class_of_size(t, n, &b_c_probe_sizes(bo.n, bo.q, k));
            Some(if is_b { bo } else { c })
        }
        _ => None,
    }
}

/// Types a minimal normal subgroup from its order and, for the two order
/// coincidences among simple groups, from class sizes inside it.
pub fn recognize_minimal_normal(t: &CharTable, n: &NormalSet) -> Result<MinimalNormalType, RecognitionError> {
    if !t.minimal_normals().contains(n) {
        return Err(RecognitionError::NotMinimalNormal(n.order));
    }
    if let Some((p, rank)) = prime_power(n.order) {
        return Ok(MinimalNormalType::ElementaryAbelian { p, rank });
    }
    let options = simple_power_candidates(n.order);
    let (cands, k) = match options.as_slice() {
        [] => return Err(RecognitionError::NoSolution(n.order)),
        [(c, k)] => (c.clone(), *k),
        many => {
            return Err(RecognitionError::Ambiguous { order: n.order, options: format!("{many:?}") });
        }
    };
    let simple = decide(t, n, &cands, k)
        .ok_or_else(|| RecognitionError::Ambiguous { order: n.order, options: format!("{cands:?}") })?;
    let root = crate::numtheory::exact_root(n.order, k).expect("k-th root exists");
    let sylow = prime_divisors(root).into_iter().filter_map(|p| socle_sylow_lookup(&simple, p).ok()).collect();
    Ok(MinimalNormalType::Nonabelian(SocleFacts { simple, copies: k, sylow }))
}

/// The simple socle and its class set when the table belongs to an almost
/// simple group.
pub fn almost_simple_socle(t: &CharTable) -> Result<Option<(SimpleId, NormalSet)>, RecognitionError> {
    let mins = t.minimal_normals();
    if mins.len() != 1 {
        return Ok(None);
    }
    match recognize_minimal_normal(t, &mins[0])? {
        MinimalNormalType::Nonabelian(f) if f.copies == 1 => Ok(Some((f.simple, mins[0]))),
        _ => Ok(None),
    }
}

pub fn is_almost_simple(t: &CharTable) -> Result<Option<SimpleId>, RecognitionError> {
    Ok(almost_simple_socle(t)?.map(|(s, _)| s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probe_sizes() {
        assert_eq!(b_c_probe_sizes(3, 3, 1), vec![27 * 26 / 2]);
        assert_eq!(b_c_probe_sizes(3, 5, 2), vec![125 * 126]);
    }
}
