use std::collections::HashSet;

use super::{CharTable, ClassSet, NormalSet, TableError};
use crate::numtheory::{p_part, prime_divisors, prime_power};

/// The three characteristic subgroups attached to a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoreSubgroups {
    /// Largest normal subgroup of order prime to p.
    pub o_pprime: NormalSet,
    /// Largest normal p-subgroup.
    pub o_p: NormalSet,
    /// Smallest normal subgroup of index prime to p.
    pub o_upper_pprime: NormalSet,
}

impl CharTable {
    /// Order of the union of the given classes.
    pub fn set_order(&self, classes: &ClassSet) -> u64 {
        classes.iter().map(|c| self.classes[c].size).sum()
    }

    pub fn normal_set(&self, classes: ClassSet) -> NormalSet {
        NormalSet { order: self.set_order(&classes), classes }
    }

    pub fn trivial_subgroup(&self) -> NormalSet {
        self.normal_set(ClassSet::single(0))
    }

    pub fn whole_group(&self) -> NormalSet {
        NormalSet { order: self.group_order, classes: ClassSet::full(self.k()) }
    }

    pub fn kernel_of(&self, i: usize) -> NormalSet {
        let row = &self.chars[i];
        let classes = (0..self.k()).filter(|&c| row[c] == row[0]).collect();
        self.normal_set(classes)
    }

    /// All normal subgroups, sorted by order and then by class bits.
    pub fn normal_lattice(&self) -> &[NormalSet] {
        self.lattice.get_or_init(|| {
            let mut seen: HashSet<ClassSet> = (0..self.k()).map(|i| self.kernel_of(i).classes).collect();
            let mut members: Vec<ClassSet> = seen.iter().copied().collect();
            let mut frontier = members.clone();
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for a in &frontier {
                    for b in &members {
                        let c = a.intersection(b);
                        if seen.insert(c) {
                            next.push(c);
                        }
                    }
                }
                members.extend(next.iter().copied());
                frontier = next;
            }
            let mut out: Vec<NormalSet> = members.into_iter().map(|c| self.normal_set(c)).collect();
            out.sort();
            out
        })
    }

    pub fn is_normal(&self, classes: &ClassSet) -> bool {
        self.normal_lattice().iter().any(|n| n.classes == *classes)
    }

    /// Rejects class sets that are not members of the lattice.
    pub fn check_normal(&self, n: &NormalSet) -> Result<(), TableError> {
        if self.is_normal(&n.classes) {
            Ok(())
        } else {
            Err(TableError::NotNormal(n.classes))
        }
    }

    /// The smallest normal subgroup containing every class in `classes`.
    pub fn normal_closure(&self, classes: &ClassSet) -> NormalSet {
        *self
            .normal_lattice()
            .iter()
            .find(|n| classes.is_subset(&n.classes))
            .expect("the whole group contains every class")
    }

    pub fn join(&self, a: &NormalSet, b: &NormalSet) -> NormalSet {
        self.normal_closure(&a.classes.union(&b.classes))
    }

    pub fn join_all<'a>(&self, parts: impl IntoIterator<Item = &'a NormalSet>) -> NormalSet {
        let union = parts.into_iter().fold(ClassSet::single(0), |acc, n| acc.union(&n.classes));
        self.normal_closure(&union)
    }

    pub fn meet(&self, a: &NormalSet, b: &NormalSet) -> NormalSet {
        self.normal_set(a.classes.intersection(&b.classes))
    }

    /// Minimal nontrivial normal subgroups.
    pub fn minimal_normals(&self) -> Vec<NormalSet> {
        let lattice = self.normal_lattice();
        lattice
            .iter()
            .filter(|n| n.order > 1)
            .filter(|n| {
                !lattice
                    .iter()
                    .any(|m| m.order > 1 && m.order < n.order && m.is_subgroup_of(n))
            })
            .copied()
            .collect()
    }

    /// Normal subgroups of G that are maximal among those properly inside `n`.
    pub fn maximal_normals_below(&self, n: &NormalSet) -> Vec<NormalSet> {
        let below: Vec<&NormalSet> = self
            .normal_lattice()
            .iter()
            .filter(|m| m.order < n.order && m.is_subgroup_of(n))
            .collect();
        below
            .iter()
            .filter(|m| !below.iter().any(|o| o.order > m.order && m.is_subgroup_of(o)))
            .map(|m| **m)
            .collect()
    }

    /// A nontrivial normal subgroup is perfect when none of its maximal
    /// G-normal subgroups has prime-power index in it.
    pub fn is_perfect_normal(&self, n: &NormalSet) -> bool {
        n.order > 1
            && self
                .maximal_normals_below(n)
                .iter()
                .all(|m| prime_power(n.order / m.order).is_none())
    }

    /// True when no normal subgroup lies strictly between `lower` and `upper`.
    pub fn is_chief_factor(&self, lower: &NormalSet, upper: &NormalSet) -> bool {
        lower.order < upper.order
            && lower.is_subgroup_of(upper)
            && !self.normal_lattice().iter().any(|m| {
                m.order > lower.order && m.order < upper.order && lower.is_subgroup_of(m) && m.is_subgroup_of(upper)
            })
    }

    /// Intersection of the kernels of the linear characters.
    pub fn derived_subgroup(&self) -> NormalSet {
        let classes = (0..self.k())
            .filter(|&i| self.chars[i][0].to_i64() == Some(1))
            .fold(ClassSet::full(self.k()), |acc, i| acc.intersection(&self.kernel_of(i).classes));
        self.normal_set(classes)
    }

    /// Union of the classes of size one.
    pub fn center_classes(&self) -> NormalSet {
        let classes = (0..self.k()).filter(|&c| self.classes[c].size == 1).collect();
        self.normal_set(classes)
    }

    pub fn core_subgroups(&self, p: u64) -> Result<CoreSubgroups, TableError> {
        let lattice = self.normal_lattice();
        let largest = |pred: &dyn Fn(&NormalSet) -> bool, what: &'static str| {
            let cands: Vec<&NormalSet> = lattice.iter().filter(|n| pred(n)).collect();
            let top = **cands.last().expect("the trivial subgroup always qualifies");
            if cands.iter().all(|c| c.is_subgroup_of(&top)) {
                Ok(top)
            } else {
                Err(TableError::AmbiguousLattice(what))
            }
        };
        let o_pprime = largest(&|n| n.order % p != 0, "O_p'")?;
        let o_p = largest(&|n| p_part(n.order, p) == n.order, "O_p")?;
        let n = self.group_order;
        let cands: Vec<&NormalSet> = lattice.iter().filter(|m| !(n / m.order).is_multiple_of(p)).collect();
        let bottom = *cands[0];
        if !cands.iter().all(|c| bottom.is_subgroup_of(c)) {
            return Err(TableError::AmbiguousLattice("O^p'"));
        }
        Ok(CoreSubgroups { o_pprime, o_p, o_upper_pprime: bottom })
    }

    /// A normal subgroup is nilpotent iff, for every prime r, its r-elements
    /// form a normal subgroup of order |N|_r.
    pub fn is_nilpotent_normal(&self, n: &NormalSet) -> bool {
        prime_divisors(n.order).into_iter().all(|r| {
            let classes: ClassSet = n
                .classes
                .iter()
                .filter(|&c| crate::numtheory::p_part(self.classes[c].element_order, r) == self.classes[c].element_order)
                .collect();
            self.set_order(&classes) == p_part(n.order, r) && self.is_normal(&classes)
        })
    }
}
