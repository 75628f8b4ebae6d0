use super::{FiniteGroup, Group, OracleError, PermGroup};
use crate::numtheory::{is_prime, p_part, valuation};

/// Oracle facts about a Sylow p-subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct GroundTruth {
    pub p: u64,
    pub sylow_order: u64,
    pub commutator_index: u64,
    pub center_index: u64,
    pub maximal_class: bool,
    pub abelian: bool,
}

impl GroundTruth {
    pub fn commutator_index_is_p2(&self) -> bool {
        self.commutator_index == self.p * self.p
    }

    pub fn center_index_is_p2(&self) -> bool {
        self.center_index == self.p * self.p
    }
}

/// Element indices of a Sylow p-subgroup, grown from a cyclic p-subgroup by
/// adjoining elements of its normalizer whose p-th power already lies inside.
pub fn sylow_elements(g: &Group, p: u64) -> Result<Vec<u32>, OracleError> {
    if !is_prime(p) {
        return Err(OracleError::NotPrime(p));
    }
    let target = p_part(g.order(), p) as usize;
    if target == 1 {
        return Ok(vec![0]);
    }
    let n = g.order() as usize;
    let orders: Vec<u64> = (0..n as u32).map(|x| g.element_order(x)).collect();
    let start = (0..n)
        .filter(|&x| p_part(orders[x], p) == orders[x])
        .max_by_key(|&x| (orders[x], std::cmp::Reverse(x)))
        .unwrap() as u32;
    let mut gens = vec![start];
    let mut members = g.subgroup_closure(&gens);
    let ppow: Vec<u32> = (0..n as u32).map(|x| g.pow(x, p)).collect();
    while members.len() < target {
        let mut inside = vec![false; n];
        members.iter().for_each(|&m| inside[m as usize] = true);
        let ext = (0..n as u32).find(|&x| {
            if inside[x as usize] || !inside[ppow[x as usize] as usize] {
                return false;
            }
            let xi = g.inv(x);
            gens.iter().all(|&h| inside[g.mul(g.mul(xi, h), x) as usize])
        });
        let x = ext.ok_or_else(|| OracleError::Internal("no normalizing extension found".into()))?;
        gens.push(x);
        members = g.subgroup_closure(&gens);
    }
    Ok(members)
}

/// A Sylow p-subgroup, returned as a permutation group on the same points.
pub fn sylow_p(g: &Group, p: u64) -> Result<PermGroup, OracleError> {
    let members = sylow_elements(g, p)?;
    let finite = FiniteGroup::from_elements(members.iter().map(|&m| g.element(m).clone()).collect())?;
    let gens = minimal_generators(&finite);
    PermGroup::new(g.degree(), gens.iter().map(|&x| finite.element(x).clone()).collect())
}

fn minimal_generators(g: &FiniteGroup) -> Vec<u32> {
    let mut gens = Vec::new();
    let mut span = vec![0u32];
    for x in 0..g.order() as u32 {
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = g.closure(&gens);
        }
    }
    gens
}

/// Derived subgroup, center and nilpotency class of a p-group.
pub fn subgroup_invariants(group: &PermGroup, p: u64) -> Result<GroundTruth, OracleError> {
    let g = FiniteGroup::from_perm_group(group)?;
    invariants_of(&g, p)
}

pub fn invariants_of(g: &FiniteGroup, p: u64) -> Result<GroundTruth, OracleError> {
    let order = g.order() as u64;
    if p_part(order, p) != order {
        return Err(OracleError::NotPGroup(p));
    }
    let derived = g.derived_subgroup().len() as u64;
    let center = g.center().len() as u64;
    let abelian = center == order;
    let n = valuation(order, p) as usize;
    let maximal_class = !abelian && g.nilpotency_class() == Some(n - 1);
    Ok(GroundTruth {
        p,
        sylow_order: order,
        commutator_index: order / derived,
        center_index: order / center,
        maximal_class,
        abelian,
    })
}

pub fn ground_truth(g: &Group, p: u64) -> Result<GroundTruth, OracleError> {
    let members = sylow_elements(g, p)?;
    let finite = FiniteGroup::from_elements(members.iter().map(|&m| g.element(m).clone()).collect())?;
    invariants_of(&finite, p)
}
