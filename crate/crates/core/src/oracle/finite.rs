use rustc_hash::FxHashMap;

use super::{OracleError, Perm, PermGroup};
use crate::numtheory::valuation;

/// Largest group for which a full multiplication table is built.
pub const MAX_CAYLEY: usize = 4096;

/// A small group with an explicit multiplication table. Element 0 is the identity.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    elements: Vec<Perm>,
    table: Vec<u32>,
    inverse: Vec<u32>,
}

impl FiniteGroup {
    pub fn from_perm_group(g: &PermGroup) -> Result<Self, OracleError> {
        let group = g.clone().with_cap(MAX_CAYLEY).enumerate().map_err(|e| match e {
            OracleError::CapExceeded(_) => OracleError::TooLarge(MAX_CAYLEY),
            other => other,
        })?;
        Self::from_elements(group.elements().to_vec())
    }

    /// Builds the table for a list of permutations closed under products.
    pub fn from_elements(mut elements: Vec<Perm>) -> Result<Self, OracleError> {
        let n = elements.len();
        if n == 0 || n > MAX_CAYLEY {
            return Err(OracleError::TooLarge(MAX_CAYLEY));
        }
        let pos = elements.iter().position(Perm::is_identity).ok_or_else(|| {
            OracleError::InvalidPermutation("element list lacks the identity".into())
        })?;
        elements.swap(0, pos);
        let index: FxHashMap<&Perm, u32> = elements.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
        let mut table = vec![0u32; n * n];
        for (a, x) in elements.iter().enumerate() {
            for (b, y) in elements.iter().enumerate() {
                table[a * n + b] = *index.get(&x.then(y)).ok_or_else(|| {
                    OracleError::InvalidPermutation("element list is not closed".into())
                })?;
            }
        }
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == 0).unwrap() as u32)
            .collect();
        Ok(FiniteGroup { elements, table, inverse })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, a: u32) -> &Perm {
        &self.elements[a as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order() + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        let left = self.mul(self.inv(a), self.inv(b));
        self.mul(left, self.mul(a, b))
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn all(&self) -> Vec<u32> {
        (0..self.order() as u32).collect()
    }

    /// The subgroup generated by `gens`, as sorted indices.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut gens: Vec<u32> = gens.iter().copied().filter(|&g| g != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut members = vec![0u32];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &g in &gens {
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

    /// `[A, B]`, generated by the commutators of elements of A and B.
    pub fn commutator_subgroup(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let gens: Vec<u32> = a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).map(|(x, y)| self.commutator(x, y)).collect();
        self.closure(&gens)
    }

    pub fn derived_subgroup(&self) -> Vec<u32> {
        let all = self.all();
        self.commutator_subgroup(&all, &all)
    }

    pub fn commutes(&self, a: u32, b: u32) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn center(&self) -> Vec<u32> {
        let all = self.all();
        all.iter().copied().filter(|&z| all.iter().all(|&g| self.commutes(z, g))).collect()
    }

    pub fn centralizer(&self, x: u32) -> Vec<u32> {
        self.all().into_iter().filter(|&g| self.commutes(x, g)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.center().len() == self.order()
    }

    /// γ_1 = G, γ_{i+1} = [γ_i, G], down to the first repeated term.
    pub fn lower_central_series(&self) -> Vec<Vec<u32>> {
        let all = self.all();
        let mut series = vec![all.clone()];
        loop {
            let next = self.commutator_subgroup(series.last().unwrap(), &all);
            if next.len() == series.last().unwrap().len() {
                return series;
            }
            series.push(next);
        }
    }

    /// Nilpotency class, or `None` for non-nilpotent groups.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let series = self.lower_central_series();
        (series.last().unwrap().len() == 1).then(|| series.len() - 1)
    }

    /// Φ(P) = P′P^p for a p-group.
    pub fn frattini(&self, p: u64) -> Vec<u32> {
        let mut gens = self.derived_subgroup();
        gens.extend((0..self.order() as u32).map(|x| self.pow(x, p)));
        self.closure(&gens)
    }

    /// All subgroups of index p of a p-group, as kernels of the nonzero
    /// functionals on P/Φ(P).
    pub fn maximal_subgroups(&self, p: u64) -> Vec<Vec<u32>> {
        let phi = self.frattini(p);
        let mut basis: Vec<u32> = Vec::new();
        let mut span = phi.clone();
        for x in 0..self.order() as u32 {
            if span.binary_search(&x).is_err() {
                basis.push(x);
                let mut gens = phi.clone();
                gens.extend(&basis);
                span = self.closure(&gens);
            }
        }
        let d = basis.len();
        let pu = p as usize;
        let mut coords = vec![usize::MAX; self.order()];
        for code in 0..pu.pow(d as u32) {
            let mut digits = Vec::with_capacity(d);
            let mut t = code;
            let mut g = 0u32;
            for &b in &basis {
                digits.push(t % pu);
                g = self.mul(g, self.pow(b, (t % pu) as u64));
                t /= pu;
            }
            for &f in &phi {
                coords[self.mul(g, f) as usize] = code;
            }
        }
        let digit = |code: usize, i: usize| (code / pu.pow(i as u32)) % pu;
        let mut out = Vec::new();
        for functional in 1..pu.pow(d as u32) {
            let lead = (0..d).find(|&i| digit(functional, i) != 0).unwrap();
            if digit(functional, lead) != 1 {
                continue;
            }
            let kernel: Vec<u32> = (0..self.order() as u32)
                .filter(|&x| {
                    let s: usize = (0..d).map(|i| digit(functional, i) * digit(coords[x as usize], i)).sum();
                    s.is_multiple_of(pu)
                })
                .collect();
            out.push(kernel);
        }
        out
    }

    pub fn log_order(&self, p: u64) -> u32 {
        valuation(self.order() as u64, p)
    }
}
