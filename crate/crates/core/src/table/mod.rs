//! The character-table data model and table-level group invariants.

mod classset;
mod lattice;
mod quotient;

use std::collections::BTreeMap;
use std::sync::OnceLock;

pub use classset::{ClassSet, MAX_CLASSES};
pub use lattice::CoreSubgroups;
pub use quotient::Quotient;

use crate::exactnum::{Cyc, ExactError};
use crate::numtheory::{is_prime, prime_divisors, valuation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("malformed table: {0}")]
    Shape(String),
    #[error("table fails validation: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("class set {0:?} is not a normal subgroup of the table")]
    NotNormal(ClassSet),
    #[error("centralizer order of class {0} is not a positive integer")]
    BadCentralizer(usize),
    #[error("power map of prime {prime} disagrees with element order of class {class}")]
    PowerMapInconsistent { class: usize, prime: u64 },
    #[error("lattice scan found incomparable candidates for {0}")]
    AmbiguousLattice(&'static str),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassData {
    pub size: u64,
    pub element_order: u64,
    pub name: Option<String>,
}

impl ClassData {
    pub fn new(size: u64, element_order: u64) -> Self {
        ClassData { size, element_order, name: None }
    }
}

/// A normal subgroup: the union of the listed classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalSet {
    pub order: u64,
    pub classes: ClassSet,
}

impl NormalSet {
    pub fn contains_class(&self, c: usize) -> bool {
        self.classes.contains(c)
    }

    pub fn is_subgroup_of(&self, other: &NormalSet) -> bool {
        self.classes.is_subset(&other.classes)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

/// An ordinary character table with element orders and power maps.
///
/// Row 0 is the trivial character and column 0 the identity class.
#[derive(Debug, Clone)]
pub struct CharTable {
    name: Option<String>,
    group_order: u64,
    classes: Vec<ClassData>,
    power_maps: BTreeMap<u64, Vec<usize>>,
    chars: Vec<Vec<Cyc>>,
    lattice: OnceLock<Vec<NormalSet>>,
}

impl CharTable {
    /// Assembles a table after checking only its shape; see [`CharTable::validate`].
    pub fn from_parts(
        name: Option<String>,
        group_order: u64,
        classes: Vec<ClassData>,
        power_maps: BTreeMap<u64, Vec<usize>>,
        chars: Vec<Vec<Cyc>>,
    ) -> Result<Self, TableError> {
        let k = classes.len();
        if k == 0 {
            return Err(TableError::Shape("no classes".into()));
        }
        if k > MAX_CLASSES {
            return Err(TableError::Shape(format!("{k} classes exceed the limit of {MAX_CLASSES}")));
        }
        if group_order == 0 {
            return Err(TableError::Shape("group order must be positive".into()));
        }
        if chars.len() != k || chars.iter().any(|row| row.len() != k) {
            return Err(TableError::Shape(format!("character matrix must be {k}x{k}")));
        }
        for (&p, map) in &power_maps {
            if map.len() != k || map.iter().any(|&c| c >= k) {
                return Err(TableError::Shape(format!("power map for {p} must list {k} class indices")));
            }
        }
        Ok(CharTable { name, group_order, classes, power_maps, chars, lattice: OnceLock::new() })
    }

    /// Assembles a table and rejects it unless [`CharTable::validate`] is empty.
    pub fn new(
        name: Option<String>,
        group_order: u64,
        classes: Vec<ClassData>,
        power_maps: BTreeMap<u64, Vec<usize>>,
        chars: Vec<Vec<Cyc>>,
    ) -> Result<Self, TableError> {
        let t = Self::from_parts(name, group_order, classes, power_maps, chars)?;
        let violations = t.validate();
        if violations.is_empty() {
            Ok(t)
        } else {
            Err(TableError::Invalid(violations))
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// Number of classes (and of irreducible characters).
    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[ClassData] {
        &self.classes
    }

    pub fn class_size(&self, c: usize) -> u64 {
        self.classes[c].size
    }

    pub fn element_order(&self, c: usize) -> u64 {
        self.classes[c].element_order
    }

    pub fn power_maps(&self) -> &BTreeMap<u64, Vec<usize>> {
        &self.power_maps
    }

    pub fn power_map(&self, p: u64) -> Option<&[usize]> {
        self.power_maps.get(&p).map(Vec::as_slice)
    }

    pub fn chars(&self) -> &[Vec<Cyc>] {
        &self.chars
    }

    pub fn value(&self, i: usize, c: usize) -> &Cyc {
        &self.chars[i][c]
    }

    /// χ_i(1) as an integer. Panics on tables that were never validated.
    pub fn degree(&self, i: usize) -> u64 {
        self.chars[i][0]
            .to_i64()
            .and_then(|d| u64::try_from(d).ok())
            .expect("character degree is a positive integer")
    }

    pub fn degrees(&self) -> Vec<u64> {
        (0..self.k()).map(|i| self.degree(i)).collect()
    }

    /// The prime divisors of the group order.
    pub fn primes(&self) -> Vec<u64> {
        prime_divisors(self.group_order)
    }

    /// Exponent of `p` in the group order.
    pub fn sylow_exponent(&self, p: u64) -> u32 {
        valuation(self.group_order, p)
    }

    /// Smallest conductor over which every character value is defined.
    pub fn conductor(&self) -> u32 {
        self.chars
            .iter()
            .flatten()
            .fold(1u64, |acc, v| num_integer::lcm(acc, v.conductor() as u64)) as u32
    }

    /// Every structural and orthogonality violation, as readable messages.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let k = self.k();
        let n = self.group_order;
        let size_sum: u64 = self.classes.iter().map(|c| c.size).sum();
        if size_sum != n {
            out.push(format!("class sizes sum to {size_sum}, expected {n}"));
        }
        if self.classes[0].size != 1 || self.classes[0].element_order != 1 {
            out.push("column 0 must be the identity class (size 1, order 1)".into());
        }
        for (c, data) in self.classes.iter().enumerate() {
            if data.size == 0 || !n.is_multiple_of(data.size) {
                out.push(format!("class {c}: size {} does not divide {n}", data.size));
            }
            if data.element_order == 0 || !n.is_multiple_of(data.element_order) {
                out.push(format!("class {c}: element order {} does not divide {n}", data.element_order));
            }
            if c > 0 && data.element_order == 1 {
                out.push(format!("class {c}: only the identity class may have order 1"));
            }
        }
        if self.chars[0].iter().any(|v| *v != Cyc::one()) {
            out.push("row 0 must be the trivial character".into());
        }
        let mut degrees_ok = true;
        for (i, row) in self.chars.iter().enumerate() {
            match row[0].to_i64() {
                Some(d) if d > 0 => {}
                _ => {
                    degrees_ok = false;
                    out.push(format!("character {i}: degree {} is not a positive integer", row[0]));
                }
            }
        }
        let primes = if n > 0 { prime_divisors(n) } else { Vec::new() };
        for &p in &primes {
            match self.power_maps.get(&p) {
                None => out.push(format!("missing power map for prime {p}")),
                Some(map) => {
                    if map[0] != 0 {
                        out.push(format!("power map {p}: identity must map to identity"));
                    }
                    for (c, &img) in map.iter().enumerate() {
                        let o = self.classes[c].element_order;
                        if o == 0 {
                            continue;
                        }
                        let expected = o / num_integer::gcd(o, p);
                        if self.classes[img].element_order != expected {
                            out.push(format!(
                                "power map {p}: class {c} of order {o} maps to class {img} of order {}",
                                self.classes[img].element_order
                            ));
                        }
                    }
                }
            }
        }
        for &p in self.power_maps.keys() {
            if !is_prime(p) || !n.is_multiple_of(p) {
                out.push(format!("power map given for {p}, which is not a prime divisor of {n}"));
            }
        }
        if !out.is_empty() || !degrees_ok {
            return out;
        }
        let conj: Vec<Vec<Cyc>> = self.chars.iter().map(|r| r.iter().map(Cyc::conj).collect()).collect();
        let sizes: Vec<Cyc> = self.classes.iter().map(|c| Cyc::from_int(c.size as i64)).collect();
        let order = Cyc::from_int(n as i64);
        for i in 0..k {
            let weighted: Vec<Cyc> = (0..k).map(|c| &sizes[c] * &self.chars[i][c]).collect();
            for j in i..k {
                let s: Cyc = (0..k).map(|c| &weighted[c] * &conj[j][c]).sum();
                let expected = if i == j { order.clone() } else { Cyc::zero() };
                if s != expected {
                    out.push(format!("row orthogonality fails for characters {i}, {j}: got {s}"));
                }
            }
        }
        for c in 0..k {
            for d in c..k {
                let s: Cyc = (0..k).map(|i| &self.chars[i][c] * &conj[i][d]).sum();
                let expected = if c == d {
                    Cyc::from_int((n / self.classes[c].size.max(1)) as i64)
                } else {
                    Cyc::zero()
                };
                if s != expected {
                    out.push(format!("column orthogonality fails for classes {c}, {d}: got {s}"));
                }
            }
        }
        out
    }

    /// |C_G(x)| for x in class `c`, from the second orthogonality relation.
    pub fn centralizer_order(&self, c: usize) -> Result<u64, TableError> {
        let s: Cyc = self.chars.iter().map(|row| row[c].abs2()).sum();
        s.to_i64()
            .and_then(|v| u64::try_from(v).ok())
            .filter(|&v| v > 0)
            .ok_or(TableError::BadCentralizer(c))
    }

    /// The class of x^n for x in class `c`, via the prime power maps.
    pub fn power_class(&self, c: usize, n: u64) -> usize {
        let o = self.classes[c].element_order;
        let n = n % o;
        if n == 0 {
            return 0;
        }
        let mut cur = c;
        for (r, e) in crate::numtheory::factorize(n) {
            for _ in 0..e {
                cur = self.power_maps.get(&r).map_or(cur, |map| map[cur]);
            }
        }
        cur
    }

    /// Whether elements of class `c` have p-power order, cross-checked
    /// against iteration of the p-power map.
    pub fn is_p_element(&self, c: usize, p: u64) -> Result<bool, TableError> {
        let o = self.classes[c].element_order;
        let mut q = o;
        while q.is_multiple_of(p) {
            q /= p;
        }
        let stored = q == 1;
        let by_map = match self.power_maps.get(&p) {
            None => c == 0,
            Some(map) => {
                let mut cur = c;
                for _ in 0..=self.sylow_exponent(p) {
                    if cur == 0 {
                        break;
                    }
                    cur = map[cur];
                }
                cur == 0
            }
        };
        if stored == by_map {
            Ok(stored)
        } else {
            Err(TableError::PowerMapInconsistent { class: c, prime: p })
        }
    }

    /// `p`-element classes; classes with inconsistent data are treated as non-`p`.
    pub fn p_element_classes(&self, p: u64) -> Vec<usize> {
        (0..self.k()).filter(|&c| self.is_p_element(c, p).unwrap_or(false)).collect()
    }

    /// True iff some class has element order equal to the p-part of |G|.
    pub fn has_cyclic_sylow(&self, p: u64) -> bool {
        let pp = crate::numtheory::p_part(self.group_order, p);
        self.classes.iter().any(|c| c.element_order == pp)
    }
}
