#![allow(dead_code)]

use std::collections::HashSet;

use rayon::prelude::*;
use sylowtab::corpus::{self, CorpusEntry, CorpusSource};
use sylowtab::io::GroupDocument;
use sylowtab::numtheory::{p_part, prime_divisors};
use sylowtab::oracle::{dixon_table, sylow_elements, FiniteGroup, Group, Perm, DEFAULT_CAP};
use sylowtab::table::CharTable;

/// An enumerated corpus group together with its oracle table.
pub struct Case {
    pub name: String,
    pub group: Group,
    pub table: CharTable,
    pub entry: CorpusEntry,
}

impl Case {
    pub fn primes(&self) -> Vec<u64> {
        if self.entry.primes.is_empty() {
            prime_divisors(self.group.order())
        } else {
            self.entry.primes.clone()
        }
    }
}

pub fn build(doc: &GroupDocument) -> (Group, CharTable) {
    let g = doc.enumerate(DEFAULT_CAP).unwrap_or_else(|e| panic!("{}: {e}", doc.name));
    let t = dixon_table(&g, Some(&doc.name)).unwrap_or_else(|e| panic!("{}: {e}", doc.name));
    (g, t)
}

pub fn table(doc: &GroupDocument) -> CharTable {
    build(doc).1
}

/// Every group entry of the embedded corpus, enumerated and tabulated.
pub fn corpus_cases() -> Vec<Case> {
    corpus::entries()
        .into_par_iter()
        .filter_map(|entry| match &entry.source {
            CorpusSource::Group(doc) => {
                let (group, table) = build(doc);
                Some(Case { name: entry.name.clone(), group, table, entry })
            }
            CorpusSource::Table(_) => None,
        })
        .collect()
}

pub fn sylow(g: &Group, p: u64) -> FiniteGroup {
    let members = sylow_elements(g, p).unwrap();
    FiniteGroup::from_elements(members.iter().map(|&m| g.element(m).clone()).collect()).unwrap()
}

fn log_p(n: usize, p: u64) -> u32 {
    sylowtab::numtheory::valuation(n as u64, p)
}

fn max_class(p_group: &FiniteGroup, p: u64) -> bool {
    let n = log_p(p_group.order(), p) as usize;
    !p_group.is_abelian() && p_group.nilpotency_class() == Some(n - 1)
}

/// |G' ∩ Z(G) ∩ P| ≤ |P'|, checked elementwise on the whole group.
pub fn check_commutator_center(g: &Group, p: u64) -> Result<(), String> {
    let members = sylow_elements(g, p).map_err(|e| e.to_string())?;
    let cls = g.conjugacy_data();
    let central: Vec<u32> = members
        .iter()
        .copied()
        .filter(|&x| x != 0 && cls.classes[cls.class_of[x as usize] as usize].size == 1)
        .collect();
    if central.is_empty() {
        return Ok(());
    }
    let gens: Vec<u32> = g.generators().iter().map(|x| g.index_of(x).unwrap()).collect();
    let mut seeds: Vec<u32> = Vec::new();
    for &a in &gens {
        for &b in &gens {
            let ab = g.mul(a, b);
            let ba = g.mul(b, a);
            seeds.push(g.mul(ab, g.inv(ba)));
        }
    }
    let mut derived = g.subgroup_closure(&seeds);
    loop {
        let fresh: Vec<u32> = seeds
            .iter()
            .flat_map(|&x| gens.iter().map(move |&s| (x, s)))
            .map(|(x, s)| g.mul(g.mul(g.inv(s), x), s))
            .filter(|y| derived.binary_search(y).is_err())
            .collect();
        if fresh.is_empty() {
            break;
        }
        seeds.extend(fresh);
        derived = g.subgroup_closure(&seeds);
    }
    let p_group = sylow(g, p);
    let p_derived: HashSet<Perm> = p_group.derived_subgroup().iter().map(|&x| p_group.element(x).clone()).collect();
    for z in central {
        if derived.binary_search(&z).is_ok() && !p_derived.contains(g.element(z)) {
            return Err(format!("central element {z} of G' outside P'"));
        }
    }
    Ok(())
}

/// |P'| = p exactly when the largest class size in P is p; and
/// |P:Z(P)| ≤ p² forces |P'| ≤ p.
pub fn check_derived_order(pg: &FiniteGroup, p: u64) -> Result<(), String> {
    let order = pg.order();
    let derived = pg.derived_subgroup().len();
    let max_index = (0..order as u32).map(|x| order / pg.centralizer(x).len()).max().unwrap();
    if (derived as u64 == p) != (max_index as u64 == p) {
        return Err(format!("|P'| = {derived}, largest class size {max_index}"));
    }
    let center_index = order / pg.center().len();
    if center_index as u64 <= p * p && derived as u64 > p {
        return Err(format!("|P:Z(P)| = {center_index} but |P'| = {derived}"));
    }
    Ok(())
}

/// A nonabelian P has maximal class exactly when some centralizer has order p².
pub fn check_maximal_class(pg: &FiniteGroup, p: u64) -> Result<(), String> {
    if pg.is_abelian() {
        return Ok(());
    }
    let small = (0..pg.order() as u32).any(|x| pg.centralizer(x).len() as u64 == p * p);
    if small != max_class(pg, p) {
        return Err(format!("centralizer of order p^2: {small}, maximal class: {}", max_class(pg, p)));
    }
    Ok(())
}

/// For |P| = p⁴: |P'| = p iff |P:Z(P)| = p², and |P:P'| = p² iff maximal class.
pub fn check_order_p4(pg: &FiniteGroup, p: u64) -> Result<(), String> {
    if pg.order() as u64 != p.pow(4) {
        return Ok(());
    }
    let derived = pg.derived_subgroup().len() as u64;
    let center_index = (pg.order() / pg.center().len()) as u64;
    if (derived == p) != (center_index == p * p) {
        return Err(format!("|P'| = {derived}, |P:Z(P)| = {center_index}"));
    }
    let comm_index = pg.order() as u64 / derived;
    if (comm_index == p * p) != max_class(pg, p) {
        return Err(format!("|P:P'| = {comm_index}, maximal class {}", max_class(pg, p)));
    }
    Ok(())
}

/// For every N of index p and every x outside N: |C_{N/N'}(x)| = p iff
/// |P:P'| = p², and the centralizer order does not depend on x.
pub fn check_index_p_quotients(pg: &FiniteGroup, p: u64) -> Result<(), String> {
    let comm_index = (pg.order() / pg.derived_subgroup().len()) as u64;
    for n in pg.maximal_subgroups(p) {
        let n_derived = pg.commutator_subgroup(&n, &n);
        let mut sizes = Vec::new();
        for x in (0..pg.order() as u32).filter(|x| n.binary_search(x).is_err()) {
            let fixed = n.iter().filter(|&&y| n_derived.binary_search(&pg.commutator(x, y)).is_ok()).count();
            sizes.push((fixed / n_derived.len()) as u64);
        }
        sizes.sort_unstable();
        sizes.dedup();
        if sizes.len() != 1 {
            return Err(format!("|C_(N/N')(x)| varies with x: {sizes:?}"));
        }
        if (sizes[0] == p) != (comm_index == p * p) {
            return Err(format!("|C_(N/N')(x)| = {}, |P:P'| = {comm_index}", sizes[0]));
        }
    }
    Ok(())
}

/// Whether some p-element x has |C_G(x)|_p ≤ p², from table centralizers.
pub fn has_small_p_centralizer(t: &CharTable, p: u64) -> bool {
    t.p_element_classes(p).into_iter().any(|c| p_part(t.centralizer_order(c).unwrap(), p) <= p * p)
}
