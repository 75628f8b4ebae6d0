//! p-blocks of ordinary characters via central characters reduced modulo a
//! prime ideal above p.

use std::collections::HashMap;

use serde::Serialize;

use crate::exactnum::{Cyc, FFElem, IdealReducer, Rat};
use crate::numtheory::valuation;
use crate::table::{CharTable, TableError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockPartition {
    pub p: u64,
    /// Character indices of each block, blocks ordered by their first member.
    pub blocks: Vec<Vec<usize>>,
    pub principal_index: usize,
    pub defects: Vec<u32>,
}

impl BlockPartition {
    pub fn principal(&self) -> &[usize] {
        &self.blocks[self.principal_index]
    }

    pub fn block_of(&self, chi: usize) -> usize {
        self.blocks.iter().position(|b| b.contains(&chi)).expect("blocks partition Irr(G)")
    }
}

/// `ω_χ(c) = |c| χ(x_c) / χ(1)` for every class c.
pub fn central_character(t: &CharTable, i: usize) -> Result<Vec<Cyc>, TableError> {
    let degree = Rat::from_integer(t.degree(i).into());
    (0..t.k())
        .map(|c| {
            let w = t.value(i, c).scale(&(Rat::from_integer(t.class_size(c).into()) / &degree));
            if w.is_integral() {
                Ok(w)
            } else {
                Err(TableError::Invalid(vec![format!("central character of χ{i} is not integral on class {c}")]))
            }
        })
        .collect()
}

pub fn block_partition(t: &CharTable, p: u64) -> Result<BlockPartition, TableError> {
    block_partition_with(t, p, 0)
}

/// Block partition using the `choice`-th irreducible polynomial for the
/// residue field; the result does not depend on `choice`.
pub fn block_partition_with(t: &CharTable, p: u64, choice: usize) -> Result<BlockPartition, TableError> {
    let k = t.k();
    let a = valuation(t.group_order(), p);
    if a == 0 {
        return Ok(BlockPartition { p, blocks: (0..k).map(|i| vec![i]).collect(), principal_index: 0, defects: vec![0; k] });
    }
    let reducer = IdealReducer::with_choice(p, t.conductor(), choice)?;
    let mut groups: HashMap<Vec<FFElem>, usize> = HashMap::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..k {
        let key = central_character(t, i)?
            .iter()
            .map(|w| reducer.reduce(w))
            .collect::<Result<Vec<_>, _>>()?;
        let b = *groups.entry(key).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[b].push(i);
    }
    let defects = blocks
        .iter()
        .map(|b| a - b.iter().map(|&i| valuation(t.degree(i), p)).min().unwrap())
        .collect();
    Ok(BlockPartition { p, blocks, principal_index: 0, defects })
}

/// Number of characters of p'-degree in the principal p-block.
pub fn count_height_zero_principal(t: &CharTable, p: u64) -> Result<u64, TableError> {
    let bp = block_partition(t, p)?;
    Ok(bp.principal().iter().filter(|&&i| !t.degree(i).is_multiple_of(p)).count() as u64)
}

/// Whether the Sylow p-subgroups are abelian: true exactly when every
/// character in the principal block has degree prime to p.
pub fn abelian_sylow_test(t: &CharTable, p: u64) -> Result<bool, TableError> {
    let bp = block_partition(t, p)?;
    Ok(bp.principal().iter().all(|&i| !t.degree(i).is_multiple_of(p)))
}
