use std::collections::{BTreeMap, VecDeque};

use rustc_hash::FxHashMap;

use super::{OracleError, Perm};
use crate::numtheory::prime_divisors;

/// Default limit on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 2_000_000;

/// A permutation group given by generators.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    cap: usize,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self, OracleError> {
        if degree == 0 {
            return Err(OracleError::InvalidPermutation("degree must be positive".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(OracleError::InvalidPermutation(format!(
                "generator {g:?} has degree {} instead of {degree}",
                g.degree()
            )));
        }
        let generators = if generators.is_empty() { vec![Perm::identity(degree)] } else { generators };
        Ok(PermGroup { degree, generators, cap: DEFAULT_CAP })
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Breadth-first closure under right multiplication by the generators.
    pub fn enumerate(&self) -> Result<Group, OracleError> {
        let id = Perm::identity(self.degree);
        let mut elements = vec![id.clone()];
        let mut index = FxHashMap::default();
        index.insert(id, 0u32);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &self.generators {
                let y = elements[i].then(g);
                if !index.contains_key(&y) {
                    if elements.len() >= self.cap {
                        return Err(OracleError::CapExceeded(self.cap));
                    }
                    index.insert(y.clone(), elements.len() as u32);
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        Ok(Group { degree: self.degree, generators: self.generators.clone(), elements, index })
    }
}

/// A fully enumerated permutation group. Element 0 is the identity.
#[derive(Debug, Clone)]
pub struct Group {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: FxHashMap<Perm, u32>,
}

/// Conjugacy classes, ordered by element order and then class size, with
/// the identity class first.
#[derive(Debug, Clone)]
pub struct ConjugacyData {
    pub class_of: Vec<u32>,
    pub classes: Vec<ConjClass>,
    pub power_maps: BTreeMap<u64, Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct ConjClass {
    pub representative: u32,
    pub size: u64,
    pub element_order: u64,
    pub members: Vec<u32>,
    pub name: String,
}

impl Group {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Perm {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, g: &Perm) -> Option<u32> {
        self.index.get(g).copied()
    }

    fn idx(&self, g: &Perm) -> u32 {
        self.index[g]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.idx(&self.element(a).then(self.element(b)))
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.idx(&self.element(a).inverse())
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        self.idx(&self.element(a).pow(e))
    }

    pub fn element_order(&self, a: u32) -> u64 {
        self.element(a).order()
    }

    /// |C_G(x)| by scanning every element.
    pub fn centralizer_order(&self, a: u32) -> u64 {
        let x = self.element(a);
        self.elements.iter().filter(|g| x.then(g) == g.then(x)).count() as u64
    }

    pub fn conjugacy_data(&self) -> ConjugacyData {
        let n = self.elements.len();
        let gens: Vec<(Perm, Perm)> = self.generators.iter().map(|g| (g.clone(), g.inverse())).collect();
        let mut raw_of = vec![u32::MAX; n];
        let mut raw: Vec<Vec<u32>> = Vec::new();
        for start in 0..n {
            if raw_of[start] != u32::MAX {
                continue;
            }
            let id = raw.len() as u32;
            raw_of[start] = id;
            let mut members = vec![start as u32];
            let mut head = 0;
            while head < members.len() {
                let x = self.element(members[head]).clone();
                head += 1;
                for (g, gi) in &gens {
                    let y = self.idx(&x.conjugate_by(g, gi));
                    if raw_of[y as usize] == u32::MAX {
                        raw_of[y as usize] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            raw.push(members);
        }
        let mut order: Vec<usize> = (0..raw.len()).collect();
        let key = |r: usize| (self.element_order(raw[r][0]), raw[r].len(), raw[r][0]);
        order.sort_by_key(|&r| key(r));
        let mut class_of = vec![0u32; n];
        let mut classes = Vec::with_capacity(raw.len());
        let mut letters: BTreeMap<u64, u8> = BTreeMap::new();
        for (new, &r) in order.iter().enumerate() {
            let members = std::mem::take(&mut raw[r]);
            for &m in &members {
                class_of[m as usize] = new as u32;
            }
            let element_order = self.element_order(members[0]);
            let letter = letters.entry(element_order).or_insert(0);
            let name = format!("{element_order}{}", class_letter(*letter));
            *letter += 1;
            classes.push(ConjClass {
                representative: members[0],
                size: members.len() as u64,
                element_order,
                members,
                name,
            });
        }
        let mut power_maps = BTreeMap::new();
        for p in prime_divisors(self.order()) {
            let map = classes
                .iter()
                .map(|c| class_of[self.pow(c.representative, p) as usize] as usize)
                .collect();
            power_maps.insert(p, map);
        }
        ConjugacyData { class_of, classes, power_maps }
    }

    /// The subgroup generated by the given elements, as sorted indices.
    pub fn subgroup_closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut inside = vec![false; self.elements.len()];
        inside[0] = true;
        let mut members = vec![0u32];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y as usize] {
                    inside[y as usize] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        members
    }
}

fn class_letter(i: u8) -> String {
    let mut s = String::new();
    let mut i = i as usize;
    loop {
        s.insert(0, (b'a' + (i % 26) as u8) as char);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    s
}

impl ConjugacyData {
    pub fn k(&self) -> usize {
        self.classes.len()
    }

    /// The class containing the inverses of class `c`.
    pub fn inverse_class(&self, g: &Group, c: usize) -> usize {
        self.class_of[g.inv(self.classes[c].representative) as usize] as usize
    }
}
