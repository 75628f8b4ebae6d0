use std::collections::{BTreeMap, HashMap};

use super::{CharTable, ClassData, ClassSet, NormalSet, TableError};
use crate::exactnum::Cyc;
use crate::numtheory::{divisors, prime_divisors};

/// The table of G/N together with the map from classes of G to classes of G/N.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub table: CharTable,
    pub class_map: Vec<usize>,
    /// Indices (in the parent table) of the characters that survive.
    pub characters: Vec<usize>,
}

impl Quotient {
    /// The image in G/N of a normal subgroup M of G.
    pub fn image(&self, m: &NormalSet) -> NormalSet {
        let classes: ClassSet = m.classes.iter().map(|c| self.class_map[c]).collect();
        self.table.normal_set(classes)
    }

    /// The full preimage in G of a class set of G/N.
    pub fn preimage(&self, parent: &CharTable, classes: &ClassSet) -> NormalSet {
        let pre: ClassSet = (0..self.class_map.len()).filter(|&c| classes.contains(self.class_map[c])).collect();
        parent.normal_set(pre)
    }
}

impl CharTable {
    pub fn quotient_table(&self, n: &NormalSet) -> Result<CharTable, TableError> {
        Ok(self.quotient(n)?.table)
    }

    pub fn quotient(&self, n: &NormalSet) -> Result<Quotient, TableError> {
        self.check_normal(n)?;
        let k = self.k();
        let characters: Vec<usize> = (0..k).filter(|&i| n.is_subgroup_of(&self.kernel_of(i))).collect();
        let mut groups: HashMap<Vec<&Cyc>, usize> = HashMap::new();
        let mut class_map = Vec::with_capacity(k);
        let mut reps = Vec::new();
        for c in 0..k {
            let key: Vec<&Cyc> = characters.iter().map(|&i| &self.chars[i][c]).collect();
            let next = groups.len();
            let id = *groups.entry(key).or_insert(next);
            if id == next {
                reps.push(c);
            }
            class_map.push(id);
        }
        let order = self.group_order / n.order;
        let mut classes = Vec::with_capacity(reps.len());
        for &c in &reps {
            let s: Cyc = characters.iter().map(|&i| self.chars[i][c].abs2()).sum();
            let cent = s
                .to_i64()
                .and_then(|v| u64::try_from(v).ok())
                .filter(|&v| v > 0 && order.is_multiple_of(v))
                .ok_or(TableError::BadCentralizer(c))?;
            let element_order = divisors(self.classes[c].element_order)
                .into_iter()
                .find(|&d| n.contains_class(self.power_class(c, d)))
                .expect("x^o(x) is the identity");
            let name = self.classes[c].name.clone();
            classes.push(ClassData { size: order / cent, element_order, name });
        }
        let mut power_maps = BTreeMap::new();
        for r in prime_divisors(order) {
            let map = self.power_maps.get(&r).ok_or_else(|| TableError::Shape(format!("missing power map for {r}")))?;
            power_maps.insert(r, reps.iter().map(|&c| class_map[map[c]]).collect());
        }
        let chars = characters
            .iter()
            .map(|&i| reps.iter().map(|&c| self.chars[i][c].clone()).collect())
            .collect();
        let name = self.name.as_ref().map(|s| format!("{s}/N{}", n.order));
        let table = CharTable::from_parts(name, order, classes, power_maps, chars)?;
        Ok(Quotient { table, class_map, characters })
    }
}
