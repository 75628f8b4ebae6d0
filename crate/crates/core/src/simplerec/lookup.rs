use std::collections::BTreeSet;
use std::sync::LazyLock;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Family, SimpleId};
use crate::numtheory::{prime_power, valuation};

pub const SOCLE_DATA_VERSION: u32 = 1;

/// The embedded data file, see its header for the schema.
pub const SOCLE_DATA: &str = include_str!("../../data/socle_sylow.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SylowTag {
    Cyclic,
    ElementaryAbelian,
    Dihedral,
    Quaternion,
    Semidihedral,
    WreathCpCp,
    ExtraspecialPlus,
    Other,
}

/// What is known about a Sylow p-subgroup P of a simple group. `None`
/// fields are unknown, never guessed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowFacts {
    pub p: u64,
    /// log_p |P|
    pub log_order: u32,
    pub tag: Option<SylowTag>,
    pub abelian: Option<bool>,
    pub commutator_index_p2: Option<bool>,
    pub center_index_p2: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExtensionFacts {
    pub commutator_index_p2: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LookupError {
    #[error("SOCLE_DATA_MISSING: no Sylow data for {socle} at p = {p}")]
    SocleDataMissing { socle: String, p: u64 },
    #[error("socle data file: {0}")]
    BadData(String),
}

#[derive(Debug, Clone, Deserialize)]
struct SimpleEntry {
    group: String,
    p: u64,
    tag: Option<SylowTag>,
    abelian: Option<bool>,
    commutator_index_p2: Option<bool>,
    center_index_p2: Option<bool>,
}

#[derive(Debug, Clone, Deserialize)]
struct ExtensionEntry {
    socle: String,
    p: u64,
    out_p_part: u64,
    outside_orders: Option<BTreeSet<u64>>,
    commutator_index_p2: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct DataFile {
    schema_version: u32,
    #[serde(default)]
    simple: Vec<SimpleEntry>,
    #[serde(default)]
    extension: Vec<ExtensionEntry>,
}

/// Parsed socle data: the embedded file, or a user-supplied one.
#[derive(Debug, Clone)]
pub struct SocleData {
    simple: Vec<(SimpleId, SimpleEntry)>,
    extension: Vec<(SimpleId, ExtensionEntry)>,
}

static EMBEDDED: LazyLock<SocleData> = LazyLock::new(|| SocleData::parse(SOCLE_DATA).expect("embedded socle data parses"));

fn log_p(n: &BigUint, p: u64) -> u32 {
    let mut n = n.clone();
    let mut k = 0;
    let pb = BigUint::from(p);
    while !n.is_zero() && (&n % &pb).is_zero() {
        n /= &pb;
        k += 1;
    }
    k
}

fn digits(mut n: u64, p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 0 {
        out.push(n % p);
        n /= p;
    }
    out
}

/// Sylow facts for S_n or A_n with p odd, and S_n with p = 2: P is a product
/// of iterated wreath products W_i (of order p^((p^i - 1)/(p - 1))) with
/// multiplicities the base-p digits of n.
fn symmetric_facts(n: u64, p: u64) -> (bool, bool, bool) {
    let d = digits(n, p);
    let comm_log: u64 = d.iter().enumerate().map(|(i, &a)| i as u64 * a).sum();
    let center_log: u64 =
        d.iter().enumerate().skip(1).map(|(i, &a)| a * ((p.pow(i as u32) - 1) / (p - 1) - 1)).sum();
    let abelian = center_log == 0;
    (abelian, comm_log == 2, center_log == 2)
}

fn formula_facts(s: &SimpleId, p: u64, log: u32) -> Option<SylowFacts> {
    let base = SylowFacts { p, log_order: log, tag: None, abelian: None, commutator_index_p2: None, center_index_p2: None };
    match s.family {
        Family::Alternating if p > 2 => {
            let n = s.n as u64;
            let (abelian, comm, center) = symmetric_facts(n, p);
            let tag = if log == 1 {
                SylowTag::Cyclic
            } else if abelian {
                SylowTag::ElementaryAbelian
            } else if (p * p..p * p + p).contains(&n) {
                SylowTag::WreathCpCp
            } else {
                SylowTag::Other
            };
            Some(SylowFacts { tag: Some(tag), abelian: Some(abelian), commutator_index_p2: Some(comm), center_index_p2: Some(center), ..base })
        }
        Family::Alternating => {
            let (tag, abelian, comm, center) = match s.n {
                5 => (SylowTag::ElementaryAbelian, true, true, false),
                6 | 7 => (SylowTag::Dihedral, false, true, true),
                _ => (SylowTag::Other, false, false, false),
            };
            Some(SylowFacts { tag: Some(tag), abelian: Some(abelian), commutator_index_p2: Some(comm), center_index_p2: Some(center), ..base })
        }
        Family::Linear if s.n == 2 => {
            let (r, _) = prime_power(s.q)?;
            let facts = if p == r || p > 2 {
                let tag = if p == r && log > 1 { SylowTag::ElementaryAbelian } else { SylowTag::Cyclic };
                (tag, true, log == 2, false)
            } else if log == 2 {
                (SylowTag::ElementaryAbelian, true, true, false)
            } else {
                (SylowTag::Dihedral, false, true, log == 3)
            };
            Some(SylowFacts {
                tag: Some(facts.0),
                abelian: Some(facts.1),
                commutator_index_p2: Some(facts.2),
                center_index_p2: Some(facts.3),
                ..base
            })
        }
        _ => None,
    }
}

impl SocleData {
    pub fn embedded() -> &'static SocleData {
        &EMBEDDED
    }

    pub fn parse(text: &str) -> Result<SocleData, LookupError> {
        let file: DataFile = toml::from_str(text).map_err(|e| LookupError::BadData(e.to_string()))?;
        if file.schema_version != SOCLE_DATA_VERSION {
            return Err(LookupError::BadData(format!("unsupported schema_version {}", file.schema_version)));
        }
        let id = |name: &str| name.parse::<SimpleId>().map_err(|e| LookupError::BadData(e.to_string()));
        Ok(SocleData {
            simple: file.simple.into_iter().map(|e| Ok((id(&e.group)?, e))).collect::<Result<_, LookupError>>()?,
            extension: file.extension.into_iter().map(|e| Ok((id(&e.socle)?, e))).collect::<Result<_, LookupError>>()?,
        })
    }

    pub fn sylow(&self, s: &SimpleId, p: u64) -> Result<SylowFacts, LookupError> {
        let log = log_p(&s.order(), p);
        if log == 0 {
            return Ok(SylowFacts {
                p,
                log_order: 0,
                tag: Some(SylowTag::Cyclic),
                abelian: Some(true),
                commutator_index_p2: Some(false),
                center_index_p2: Some(false),
            });
        }
        let mut f = formula_facts(s, p, log).unwrap_or(SylowFacts {
            p,
            log_order: log,
            tag: None,
            abelian: None,
            commutator_index_p2: None,
            center_index_p2: None,
        });
        let entry = self.simple.iter().find(|(id, e)| id == s && e.p == p).map(|(_, e)| e);
        if let Some(e) = entry {
            f.tag = e.tag.or(f.tag);
            f.abelian = e.abelian.or(f.abelian);
            f.commutator_index_p2 = e.commutator_index_p2.or(f.commutator_index_p2);
            f.center_index_p2 = e.center_index_p2.or(f.center_index_p2);
        }
        if log <= 2 {
            f.abelian = Some(true);
            if log == 1 {
                f.tag = Some(SylowTag::Cyclic);
            }
        }
        if f.abelian == Some(true) {
            f.commutator_index_p2 = Some(log == 2);
            f.center_index_p2 = Some(false);
        }
        if log == 3 && f.abelian == Some(false) {
            f.commutator_index_p2 = Some(true);
        }
        if s.family == Family::Sporadic && log >= 4 && f.commutator_index_p2.is_none() {
            f.commutator_index_p2 = Some(false);
        }
        let pgl2_odd = s.family == Family::Linear && s.n == 2 && s.q % 2 == 1;
        let center_possible = if p == 2 { pgl2_odd || *s == SimpleId::alternating(7) } else { log == 3 };
        if !center_possible {
            f.center_index_p2 = Some(false);
        }
        if f.abelian.is_none() && f.commutator_index_p2.is_none() {
            return Err(LookupError::SocleDataMissing { socle: s.to_string(), p });
        }
        Ok(f)
    }

    pub fn extension(
        &self,
        s: &SimpleId,
        p: u64,
        out_p_part: u64,
        outside_orders: &BTreeSet<u64>,
    ) -> Result<ExtensionFacts, LookupError> {
        let hit = self.extension.iter().find(|(id, e)| {
            id == s && e.p == p && e.out_p_part == out_p_part && e.outside_orders.as_ref().is_none_or(|o| o == outside_orders)
        });
        if let Some((_, e)) = hit {
            return Ok(ExtensionFacts { commutator_index_p2: e.commutator_index_p2 });
        }
        let missing = || LookupError::SocleDataMissing { socle: format!("{s}.{out_p_part}"), p };
        match s.family {
            Family::Alternating if p == 2 && out_p_part == 2 && s.n != 6 => {
                Ok(ExtensionFacts { commutator_index_p2: symmetric_facts(s.n as u64, 2).1 })
            }
            Family::Linear if s.n == 2 && p == 2 => {
                let (r, f) = prime_power(s.q).ok_or_else(missing)?;
                if r == 2 {
                    let e = valuation(out_p_part, 2);
                    Ok(ExtensionFacts { commutator_index_p2: e == 1 && s.q == 4 })
                } else if f % 2 == 1 && out_p_part == 2 {
                    Ok(ExtensionFacts { commutator_index_p2: true })
                } else {
                    Err(missing())
                }
            }
            _ => Err(missing()),
        }
    }
}

pub fn socle_sylow_lookup(s: &SimpleId, p: u64) -> Result<SylowFacts, LookupError> {
    SocleData::embedded().sylow(s, p)
}

/// Sylow facts for an almost simple group with socle `s`, |G:S|_p =
/// `out_p_part` > 1, and `outside_orders` the element orders outside S.
pub fn extension_sylow_lookup(
    s: &SimpleId,
    p: u64,
    out_p_part: u64,
    outside_orders: &BTreeSet<u64>,
) -> Result<ExtensionFacts, LookupError> {
    SocleData::embedded().extension(s, p, out_p_part, outside_orders)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn facts(name: &str, p: u64) -> SylowFacts {
        socle_sylow_lookup(&name.parse().unwrap(), p).unwrap()
    }

    #[test]
    fn embedded_data_parses() {
        assert!(!SocleData::embedded().simple.is_empty());
        assert!(SocleData::parse("schema_version = 2").is_err());
    }

    #[test]
    fn alternating_formulas() {
        let a7 = facts("A7", 2);
        assert_eq!((a7.tag, a7.commutator_index_p2, a7.center_index_p2), (Some(SylowTag::Dihedral), Some(true), Some(true)));
        let a9 = facts("A9", 3);
        assert_eq!((a9.tag, a9.commutator_index_p2, a9.log_order), (Some(SylowTag::WreathCpCp), Some(true), 4));
        let a12 = facts("A12", 3);
        assert_eq!((a12.tag, a12.commutator_index_p2), (Some(SylowTag::Other), Some(false)));
        for p in [5u64, 7] {
            for a in 0..p {
                let n = p * p + a;
                let f = facts(&format!("A{n}"), p);
                assert_eq!(f.commutator_index_p2, Some(true), "A{n} at {p}");
            }
            let f = facts(&format!("A{}", p * p + p), p);
            assert_eq!(f.commutator_index_p2, Some(false));
        }
    }

    #[test]
    fn psl2_formulas() {
        let l7 = facts("PSL(2,7)", 2);
        assert_eq!((l7.tag, l7.log_order, l7.center_index_p2), (Some(SylowTag::Dihedral), 3, Some(true)));
        let l17 = facts("PSL(2,17)", 2);
        assert_eq!((l17.log_order, l17.commutator_index_p2, l17.center_index_p2), (4, Some(true), Some(false)));
        let l11 = facts("PSL(2,11)", 2);
        assert_eq!((l11.abelian, l11.commutator_index_p2), (Some(true), Some(true)));
        let l8 = facts("PSL(2,8)", 2);
        assert_eq!((l8.tag, l8.commutator_index_p2), (Some(SylowTag::ElementaryAbelian), Some(false)));
    }

    #[test]
    fn sporadic_flags() {
        assert_eq!(facts("M11", 2).commutator_index_p2, Some(true));
        assert_eq!(facts("J3", 3).commutator_index_p2, Some(true));
        assert_eq!(facts("M12", 2).commutator_index_p2, Some(false));
        assert_eq!(facts("M12", 2).center_index_p2, Some(false));
        assert!(socle_sylow_lookup(&"J2".parse().unwrap(), 3).is_err());
    }

    #[test]
    fn unknown_lie_type() {
        let id: SimpleId = "PSU(3,3)".parse().unwrap();
        assert!(matches!(socle_sylow_lookup(&id, 3), Err(LookupError::SocleDataMissing { .. })));
        assert_eq!(socle_sylow_lookup(&id, 7).unwrap().abelian, Some(true));
    }

    #[test]
    fn extensions() {
        let none = BTreeSet::new();
        let ext = |name: &str, d: u64, orders: &BTreeSet<u64>| extension_sylow_lookup(&name.parse().unwrap(), 2, d, orders);
        assert!(ext("A5", 2, &none).unwrap().commutator_index_p2);
        assert!(!ext("A7", 2, &none).unwrap().commutator_index_p2);
        let s6: BTreeSet<u64> = [2, 4, 6].into();
        let m10: BTreeSet<u64> = [4, 8].into();
        assert!(!ext("A6", 2, &s6).unwrap().commutator_index_p2);
        assert!(ext("A6", 2, &m10).unwrap().commutator_index_p2);
        assert!(ext("A6", 4, &none).is_err());
        assert!(ext("PSL(2,7)", 2, &none).unwrap().commutator_index_p2);
        assert!(ext("PSL(2,25)", 2, &none).is_err());
    }
}
